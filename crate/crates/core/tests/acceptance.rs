//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use chiralgen::cyclo::CycContext;
use chiralgen::genfun::{g_bruteforce, g_closedform, g_conjecture, g_conjecture_by, lambda_table, SubscriptVariant};
use chiralgen::identities::{self, Sampler};
use chiralgen::{omega, CoeffMatrix, Params};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

type Outcome = Result<String, String>;

fn grid() -> Vec<Params> {
    let mut v: Vec<Params> = (2..=5)
        .flat_map(|n| (2..=8).map(move |l| Params::new(n, l).unwrap()))
        .collect();
    v.push(Params::new(2, 10).unwrap());
    v.push(Params::new(3, 10).unwrap());
    v
}

fn compare(a: &CoeffMatrix, b: &CoeffMatrix) -> Result<(), String> {
    match a.first_difference(b) {
        None => Ok(()),
        Some(d) => Err(format!("{}: {} vs {}: {d}", a.params(), a.method(), b.method())),
    }
}

fn criterion1(brute: &[CoeffMatrix]) -> Outcome {
    let start = Instant::now();
    brute
        .par_iter()
        .map(|b| {
            let p = b.params();
            let closed = g_closedform(p).map_err(|e| format!("{p}: {e}"))?;
            let conj = g_conjecture(p).map_err(|e| format!("{p}: {e}"))?;
            compare(b, &closed)?;
            compare(b, &conj)?;
            for m in [b, &closed, &conj] {
                if let Some((i, j)) = m.first_asymmetry() {
                    return Err(format!("{p}: {} matrix asymmetric at ({i}, {j})", m.method()));
                }
            }
            Ok(())
        })
        .collect::<Result<Vec<()>, String>>()?;
    Ok(format!("{} parameter pairs, closed form and conjecture in {:.1?}", brute.len(), start.elapsed()))
}

fn criterion2() -> Outcome {
    let g = g_bruteforce(Params::new(2, 2).unwrap()).map_err(|e| e.to_string())?;
    if g.entries() != [vec![BigInt::one()]] {
        return Err(format!("N=2, L=2 gave {:?}", g.entries()));
    }
    let p = Params::new(3, 3).unwrap();
    for m in [g_bruteforce(p), g_closedform(p), g_conjecture(p)] {
        let m = m.map_err(|e| e.to_string())?;
        let (g00, g01) = (m.get(0, 0).unwrap(), m.get(0, 1).unwrap());
        if *g00 != BigInt::from(7) || *g01 != BigInt::from(6) {
            return Err(format!("N=3, L=3 {}: G00={g00}, G01={g01}", m.method()));
        }
    }
    Ok("G = [[1]] at N=2, L=2; G00 = 7, G01 = 6 at N=3, L=3".into())
}

fn criterion3() -> Outcome {
    let mut count = 0usize;
    for l in [3usize, 4] {
        let ctx = CycContext::new(2).unwrap();
        for code in 0..1usize << (2 * l) {
            let digits: Vec<usize> = (0..2 * l).map(|i| (code >> i) & 1).collect();
            let (mu, nu) = digits.split_at(l);
            omega::check_v_reduction(&ctx, l, mu, nu).map_err(|e| e.to_string())?;
            count += 1;
        }
    }
    let random: usize = (3..=5usize)
        .flat_map(|n| (3..=7usize).map(move |l| (n, l)))
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&(n, l)| {
            let ctx = CycContext::new(n).unwrap();
            let mut s = Sampler::new(2718, (n * 100 + l) as u64);
            for _ in 0..1000 {
                let mu: Vec<usize> = (0..l).map(|_| s.int_in(0, n as i64 - 1) as usize).collect();
                let nu: Vec<usize> = (0..l).map(|_| s.int_in(0, n as i64 - 1) as usize).collect();
                omega::check_v_reduction(&ctx, l, &mu, &nu).map_err(|e| format!("N={n}, L={l}: {e}"))?;
            }
            Ok(1000)
        })
        .collect::<Result<Vec<usize>, String>>()?
        .into_iter()
        .sum();
    Ok(format!("{count} exhaustive and {random} random cases"))
}

fn criterion4() -> Outcome {
    let limit = Duration::from_secs(30);
    let start = Instant::now();
    for alpha in 1..=4 {
        for m in 1..=3 {
            omega::check_prop1(alpha, m, 8).map_err(|e| format!("alpha={alpha}, M={m}: {e}"))?;
        }
    }
    let t1 = start.elapsed();
    let start = Instant::now();
    for j in 2..=4 {
        for n in 2..=3 {
            omega::check_theorem1(j, n, 6).map_err(|e| format!("j={j}, N={n}: {e}"))?;
        }
    }
    let t2 = start.elapsed();
    if t1 > limit || t2 > limit {
        return Err(format!("too slow: {t1:.1?} and {t2:.1?}"));
    }
    Ok(format!("single-sum identity in {t1:.1?}, chained identity in {t2:.1?}"))
}

fn criterion5() -> Outcome {
    let mut count = 0;
    for k in 1..=5usize {
        for ell in 1..=k.min(4) {
            let mut s = Sampler::new(31, (k * 10 + ell) as u64);
            for trial in 0..200 {
                let w = s.formal_weights(k + 1);
                let a = s.int_in(1, 3);
                let b = a + s.int_in(0, 6);
                identities::check_prop2(w.values(), ell, k, a, b)
                    .map_err(|e| format!("l={ell}, k={k}, a={a}, b={b}, weights={w}, trial={trial}: {e}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} trials including every vanishing gap"))
}

fn criterion6() -> Outcome {
    let mut count = 0;
    for n in 2..=12usize {
        for k in 0..n as i64 {
            let mut s = Sampler::new(61, (n * 100) as u64 + k as u64);
            let mut z_count = 0;
            while z_count < 5 {
                let z = s.rational();
                if z.pow(n as i32) == BigRational::one() {
                    continue;
                }
                identities::check_root_unity_sums(n, k, &z).map_err(|e| format!("N={n}, k={k}, z0={z}: {e}"))?;
                z_count += 1;
                count += 1;
            }
        }
    }
    Ok(format!("{count} (N, k, z) cases with limits"))
}

fn criterion7() -> Outcome {
    let mut count = 0;
    for n in 2..=4usize {
        for l in [2usize, 3, 5] {
            let p = Params::new(n, l).unwrap();
            let ctx = p.context();
            let mut s = Sampler::new(4, (n * 10 + l) as u64);
            for _ in 0..20 {
                let (t0, u0) = identities::sample_point(&mut s, &ctx, true).map_err(|e| e.to_string())?;
                for k in 1..n {
                    identities::check_jk_collapse(p, k, &t0, &u0)
                        .map_err(|e| format!("{p}, k={k}, t0={t0}, u0={u0}: {e}"))?;
                }
                identities::check_jk_total(p, &t0, &u0).map_err(|e| format!("{p}, t0={t0}, u0={u0}: {e}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} points"))
}

fn criterion8(brute: &[CoeffMatrix]) -> Outcome {
    for b in brute {
        identities::check_diagonal_entries(b, &lambda_table(b.params()))
            .map_err(|e| format!("{}: {e}", b.params()))?;
    }
    Ok(format!("{} parameter pairs", brute.len()))
}

fn criterion9(brute: &[CoeffMatrix]) -> Outcome {
    let failing = |v: SubscriptVariant| {
        brute
            .iter()
            .find_map(|b| identities::subscript_variant_witness(b, &lambda_table(b.params()), v))
    };
    match (failing(SubscriptVariant::Plus), failing(SubscriptVariant::Minus)) {
        (Some(w), None) => Ok(format!("surviving variant {}; other fails at {w}", SubscriptVariant::Minus.name())),
        (None, Some(w)) => Ok(format!("surviving variant {}; other fails at {w}", SubscriptVariant::Plus.name())),
        (None, None) => Err("both variants match".into()),
        (Some(a), Some(b)) => Err(format!("neither variant matches: {a}; {b}")),
    }
}

fn criterion10(brute: &[CoeffMatrix]) -> Outcome {
    let mut detected = 0;
    let mut first = None;
    for b in brute {
        let mutated = g_conjecture_by(b.params(), identities::sign_flipped_coeff);
        if let Err(w) = compare(b, &mutated) {
            detected += 1;
            first.get_or_insert(w);
        }
    }
    match first {
        Some(w) => Ok(format!("mutation caught at {detected}/{} pairs, first: {w}", brute.len())),
        None => Err("sign-flipped evaluator passed the coefficient comparison".into()),
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let brute: Result<Vec<CoeffMatrix>, String> = grid()
        .par_iter()
        .map(|&p| g_bruteforce(p).map_err(|e| format!("{p}: {e}")))
        .collect();
    let brute_time = start.elapsed();
    let results: Vec<(usize, Outcome)> = match &brute {
        Ok(brute) => vec![
            (1, criterion1(brute).map(|s| format!("{s}; brute force in {brute_time:.1?}"))),
            (2, criterion2()),
            (3, criterion3()),
            (4, criterion4()),
            (5, criterion5()),
            (6, criterion6()),
            (7, criterion7()),
            (8, criterion8(brute)),
            (9, criterion9(brute)),
            (10, criterion10(brute)),
        ],
        Err(e) => (1..=10).map(|i| (i, Err(format!("brute force failed: {e}")))).collect(),
    };
    let mut ok = true;
    for (i, r) in &results {
        match r {
            Ok(detail) => println!("criterion {i}: pass ({detail})"),
            Err(w) => {
                ok = false;
                println!("criterion {i}: fail ({w})");
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
