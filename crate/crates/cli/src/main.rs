use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chiralgen::genfun::{self, CoeffMatrix, Method, Params};
use chiralgen::identities::{self, CheckReport, Status, SuiteConfig};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Number, Value};

#[derive(Parser, Debug)]
#[command(name = "chiralgen", version, about = "Coefficient tables of the chiral Potts generating function")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads, 0 for one per core.
    #[arg(long, global = true, env = "CHIRALGEN_THREADS", default_value_t = 0)]
    threads: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coefficients of Q(t) = (1 + t + ... + t^(N-1))^L and the residue table.
    Qpoly {
        #[command(flatten)]
        size: Size,
    },
    /// Coefficient matrix of G(t, u).
    Gcoeffs {
        #[command(flatten)]
        size: Size,
        #[arg(long, value_enum, default_value_t = MethodArg::Closed)]
        method: MethodArg,
    },
    /// Run the identity checks.
    Verify {
        #[command(flatten)]
        size: Size,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        /// Truncation degree for the series checks.
        #[arg(long, default_value_t = 8)]
        trunc: u32,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
}

#[derive(clap::Args, Debug)]
struct Size {
    #[arg(long = "N", value_name = "N")]
    n: usize,
    #[arg(long = "L", value_name = "L")]
    l: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum MethodArg {
    Brute,
    Closed,
    Conjecture,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Suite {
    All,
    Omega,
    Identities,
}

enum Failure {
    Usage(String),
    Verification { output: String, witness: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(p) => p,
        Err(e) => return usage(&e.to_string()),
    };
    let result = pool.install(|| run(&cli.command, cli.format));
    match result {
        Ok(text) => match emit(cli.output.as_deref(), &text) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        Err(Failure::Usage(msg)) => usage(&msg),
        Err(Failure::Verification { output, witness }) => {
            // Report goes to stdout only; no file is written for a failed run.
            if cli.output.is_none() {
                print!("{output}");
            }
            eprintln!("{witness}");
            ExitCode::from(1)
        }
    }
}

fn usage(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn emit(path: Option<&Path>, text: &str) -> std::io::Result<()> {
    match path {
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(text.as_bytes())?;
            tmp.persist(path).map_err(|e| e.error)?;
            Ok(())
        }
    }
}

fn params(size: &Size) -> Result<Params, Failure> {
    Params::new(size.n, size.l).map_err(|e| Failure::Usage(e.to_string()))
}

fn run(command: &Command, format: Format) -> Result<String, Failure> {
    match command {
        Command::Qpoly { size } => Ok(qpoly(params(size)?, format)),
        Command::Gcoeffs { size, method } => gcoeffs(params(size)?, *method, format),
        Command::Verify {
            size,
            seed,
            trials,
            trunc,
            suite,
        } => {
            let cfg = SuiteConfig {
                seed: *seed,
                trials: *trials,
                trunc: *trunc,
            };
            verify(params(size)?, &cfg, *suite, format)
        }
    }
}

fn int(v: &impl ToString) -> Value {
    Value::Number(v.to_string().parse::<Number>().expect("integer literal"))
}

fn int_row<T: ToString>(v: &[T]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

fn csv_row<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn qpoly(p: Params, format: Format) -> String {
    let c = genfun::q_coeffs(p);
    let lam = genfun::lambda_table(p);
    match format {
        Format::Json => json_text(&json!({
            "N": p.n(),
            "L": p.l(),
            "coeffs": int_row(&c),
            "lambda": Value::Array(lam.rows().iter().map(|r| int_row(r)).collect()),
        })),
        Format::Csv => {
            let mut out = format!("# N={}, L={}\n{}\n", p.n(), p.l(), csv_row(&c));
            for row in lam.rows() {
                let _ = writeln!(out, "{}", csv_row(row));
            }
            out
        }
    }
}

fn matrix_output(m: &CoeffMatrix, method: &str, format: Format) -> String {
    let p = m.params();
    match format {
        Format::Json => json_text(&json!({
            "N": p.n(),
            "L": p.l(),
            "method": method,
            "degree": m.degree(),
            "coeffs": Value::Array(m.entries().iter().map(|r| int_row(r)).collect()),
        })),
        Format::Csv => {
            let mut out = format!("# N={}, L={}, method={}\n", p.n(), p.l(), method);
            for row in m.entries() {
                let _ = writeln!(out, "{}", csv_row(row));
            }
            out
        }
    }
}

fn build(p: Params, method: Method) -> Result<CoeffMatrix, Failure> {
    let r = match method {
        Method::Brute => genfun::g_bruteforce(p),
        Method::Closed => genfun::g_closedform(p),
        Method::Conjecture => genfun::g_conjecture(p),
    };
    r.map_err(|e| Failure::Verification {
        output: String::new(),
        witness: format!("{method}: {e}"),
    })
}

fn gcoeffs(p: Params, method: MethodArg, format: Format) -> Result<String, Failure> {
    let single = match method {
        MethodArg::Brute => Some(Method::Brute),
        MethodArg::Closed => Some(Method::Closed),
        MethodArg::Conjecture => Some(Method::Conjecture),
        MethodArg::All => None,
    };
    if let Some(m) = single {
        return Ok(matrix_output(&build(p, m)?, m.name(), format));
    }
    let brute = build(p, Method::Brute)?;
    for m in [Method::Closed, Method::Conjecture] {
        let other = build(p, m)?;
        if let Some(d) = brute.first_difference(&other) {
            return Err(Failure::Verification {
                output: String::new(),
                witness: format!("brute vs {m}: {d}"),
            });
        }
    }
    if let Some((i, j)) = brute.first_asymmetry() {
        return Err(Failure::Verification {
            output: String::new(),
            witness: format!("G[{i}][{j}] != G[{j}][{i}]"),
        });
    }
    Ok(matrix_output(&brute, "all", format))
}

fn in_suite(name: &str, suite: Suite) -> bool {
    let omega = name.starts_with("omega_");
    match suite {
        Suite::All => true,
        Suite::Omega => omega,
        Suite::Identities => !omega,
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn report_output(p: Params, reports: &[CheckReport], format: Format) -> String {
    match format {
        Format::Json => {
            let checks = reports
                .iter()
                .map(|r| {
                    let mut obj = Map::new();
                    obj.insert("name".into(), json!(r.name));
                    let params: Map<String, Value> = r.params.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
                    obj.insert("params".into(), Value::Object(params));
                    obj.insert("status".into(), json!(if r.passed() { "pass" } else { "fail" }));
                    if let Some(w) = r.witness() {
                        obj.insert("witness".into(), json!(w));
                    }
                    obj.insert("trials".into(), json!(r.trials));
                    if let Some(n) = &r.note {
                        obj.insert("note".into(), json!(n));
                    }
                    Value::Object(obj)
                })
                .collect();
            json_text(&json!({ "checks": Value::Array(checks) }))
        }
        Format::Csv => {
            let mut out = format!("# N={}, L={}, method=all\n", p.n(), p.l());
            for r in reports {
                let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    csv_field(&r.name),
                    if r.passed() { "pass" } else { "fail" },
                    csv_field(&params.join(" ")),
                    r.trials,
                    csv_field(r.witness().unwrap_or("")),
                    csv_field(r.note.as_deref().unwrap_or("")),
                );
            }
            out
        }
    }
}

fn verify(p: Params, cfg: &SuiteConfig, suite: Suite, format: Format) -> Result<String, Failure> {
    let reports: Vec<CheckReport> = identities::run_all_filtered(p, cfg, |name| in_suite(name, suite));
    let output = report_output(p, &reports, format);
    let failures: Vec<String> = reports
        .iter()
        .filter_map(|r| match &r.status {
            Status::Pass => None,
            Status::Fail { witness } => Some(format!("{} failed: {witness}", r.name)),
        })
        .collect();
    if failures.is_empty() {
        Ok(output)
    } else {
        Err(Failure::Verification {
            output,
            witness: failures.join("\n"),
        })
    }
}
