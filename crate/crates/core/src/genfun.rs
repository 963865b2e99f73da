//! The generating function G(t, u) and its coefficient matrix.
//!
//! Three independent routes produce the same integer matrix:
//!
//! - [`g_bruteforce`] sums `f_0 f_{N_2} ... f_{N_L}` over every nondecreasing
//!   chain `0 <= N_2 <= ... <= N_L <= N`, subtracts `L f_0^L` and divides
//!   by `(1 - t^N)(1 - u^N)`;
//! - [`g_closedform`] evaluates the single sum over the nontrivial roots
//!   `w^r`, rewritten so that every division is exact in the polynomial ring;
//! - [`g_conjecture`] fills the matrix entry by entry from the Lambda tables.
//!
//! With `W = (1 - t^N)(1 - u^N)`, `A_r = (1 - t w^r)(1 - u w^-r)` and
//! `f_r = W / A_r`, the closed form uses
//! `(f_r^L - f_0^L) / (A_0 - A_r) = g_r * sum_j f_0^(L-1-j) f_r^j` and
//! `f_0^L / A_r = f_0^(L-1) g_r` with the polynomial `g_r = W / (A_0 A_r)`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::bipoly::{BiPoly, BiPolyError};
use crate::cyclo::{CycContext, CycNum, CycloError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenFunError {
    #[error("invalid parameters: N = {n}, L = {l} (need N >= 2 and L >= 2)")]
    InvalidParams { n: usize, l: usize },
    #[error("residues out of range: Q = {q}, P = {p} (need Q <= P < N)")]
    InvalidResidues { q: usize, p: usize },
    #[error(transparent)]
    Division(#[from] BiPolyError),
    #[error(transparent)]
    Field(#[from] CycloError),
    #[error("coefficient of t^{ell} u^{k} is not a rational integer: {value}")]
    NotInteger { ell: usize, k: usize, value: String },
    #[error("coefficient of t^{ell} u^{k} is not divisible by N: {value}")]
    NotDivisibleByN { ell: usize, k: usize, value: String },
    #[error("nonzero coefficient at t^{ell} u^{k} outside the degree bound {degree}")]
    OutsideDegreeBound { ell: usize, k: usize, degree: usize },
    #[error(
        "diagonal forms disagree at P = {p}, l = {ell}, m = {m}: shifted {shifted}, reflected {reflected}, general {general}"
    )]
    InconsistentDiagonalForms {
        p: usize,
        ell: usize,
        m: usize,
        shifted: BigInt,
        reflected: BigInt,
        general: BigInt,
    },
}

/// The pair `(N, L)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Params {
    n: usize,
    l: usize,
}

impl Params {
    pub fn new(n: usize, l: usize) -> Result<Self, GenFunError> {
        if n < 2 || l < 2 {
            return Err(GenFunError::InvalidParams { n, l });
        }
        Ok(Params { n, l })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l(&self) -> usize {
        self.l
    }

    /// Degree bound `(N - 1) L - N` of G in each variable.
    pub fn degree(&self) -> usize {
        (self.n - 1) * self.l - self.n
    }

    /// Degree `L (N - 1)` of Q(t).
    pub fn q_degree(&self) -> usize {
        (self.n - 1) * self.l
    }

    pub fn context(&self) -> Arc<CycContext> {
        CycContext::new(self.n).expect("N >= 2 is checked at construction")
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={}, L={}", self.n, self.l)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Brute,
    Closed,
    Conjecture,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Brute, Method::Closed, Method::Conjecture];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Closed => "closed",
            Method::Conjecture => "conjecture",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "brute" => Ok(Method::Brute),
            "closed" => Ok(Method::Closed),
            "conjecture" => Ok(Method::Conjecture),
            other => Err(format!("unknown method `{other}`")),
        }
    }
}

/// Coefficients `c_0 .. c_{L(N-1)}` of `Q(t) = (1 + t + ... + t^(N-1))^L`.
pub fn q_coeffs(p: Params) -> Vec<BigInt> {
    let mut c = vec![BigInt::one()];
    for _ in 0..p.l {
        let mut next = vec![BigInt::zero(); c.len() + p.n - 1];
        // Running window sum of width N.
        let mut window = BigInt::zero();
        for (m, slot) in next.iter_mut().enumerate() {
            if let Some(v) = c.get(m) {
                window += v;
            }
            if m >= p.n {
                window -= &c[m - p.n];
            }
            *slot = window.clone();
        }
        c = next;
    }
    c
}

/// Residue-class slices `Lambda^P_n = c_{nN+P}` of the Q(t) coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaTable {
    n: usize,
    rows: Vec<Vec<BigInt>>,
}

impl LambdaTable {
    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn row(&self, residue: usize) -> &[BigInt] {
        &self.rows[residue]
    }

    /// `m_P`, the largest index in row `P`.
    pub fn m(&self, residue: usize) -> usize {
        self.rows[residue].len() - 1
    }

    /// `Lambda^P_n`; zero for indices past the end of the row or negative.
    pub fn get(&self, residue: usize, index: i64) -> BigInt {
        if index < 0 {
            return BigInt::zero();
        }
        self.rows[residue]
            .get(index as usize)
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }
}

pub fn lambda_table(p: Params) -> LambdaTable {
    let c = q_coeffs(p);
    let rows = (0..p.n)
        .map(|residue| c.iter().skip(residue).step_by(p.n).cloned().collect())
        .collect();
    LambdaTable { n: p.n, rows }
}

/// `f_a = sum_{mu, nu < N} t^mu u^nu w^{a (mu - nu)}`, equal to
/// `(1 - t^N)(1 - u^N) / ((1 - t w^a)(1 - u w^-a))`.
pub fn f_poly(ctx: &Arc<CycContext>, a: i64) -> BiPoly {
    let n = ctx.order();
    BiPoly::from_fn(ctx, n, n, |mu, nu| {
        CycNum::root_power(ctx, a * (mu as i64 - nu as i64))
    })
}

/// `W = (1 - t^N)(1 - u^N)`.
pub fn w_poly(ctx: &Arc<CycContext>) -> BiPoly {
    let n = ctx.order();
    let one = CycNum::one(ctx);
    BiPoly::from_terms(
        ctx,
        &[
            (0, 0, one.clone()),
            (n, 0, -&one),
            (0, n, -&one),
            (n, n, one.clone()),
        ],
    )
}

/// `A_r = (1 - t w^r)(1 - u w^-r)`.
pub fn a_poly(ctx: &Arc<CycContext>, r: i64) -> BiPoly {
    let one = CycNum::one(ctx);
    BiPoly::from_terms(
        ctx,
        &[
            (0, 0, one.clone()),
            (1, 0, -CycNum::root_power(ctx, r)),
            (0, 1, -CycNum::root_power(ctx, -r)),
            (1, 1, one),
        ],
    )
}

/// Sum of `f_{c_1} ... f_{c_len}` over nondecreasing chains `c` with
/// `c_1 = first` and entries at most `top`. Walks the chains in
/// lexicographic order, reusing prefix products.
fn chain_sum(f: &[BiPoly], first: usize, len: usize, top: usize) -> BiPoly {
    let mut chain = vec![first; len];
    let mut prefix: Vec<BiPoly> = Vec::with_capacity(len);
    prefix.push(f[first].clone());
    for k in 1..len {
        let next = &prefix[k - 1] * &f[chain[k]];
        prefix.push(next);
    }
    let mut total = prefix[len - 1].clone();
    loop {
        let Some(k) = (1..len).rev().find(|&k| chain[k] < top) else {
            break;
        };
        let v = chain[k] + 1;
        for slot in &mut chain[k..] {
            *slot = v;
        }
        for i in k..len {
            prefix[i] = &prefix[i - 1] * &f[chain[i]];
        }
        total = total + &prefix[len - 1];
    }
    total
}

/// G(t, u) from the chain sum over `0 <= N_2 <= ... <= N_L <= N`.
pub fn g_poly_bruteforce(p: Params) -> Result<BiPoly, GenFunError> {
    let ctx = p.context();
    let n = p.n;
    // f_N = f_0, so index N maps back to 0.
    let f: Vec<BiPoly> = (0..=n).map(|a| f_poly(&ctx, (a % n) as i64)).collect();
    let partial: Vec<BiPoly> = (0..=n)
        .into_par_iter()
        .map(|first| chain_sum(&f, first, p.l - 1, n))
        .collect();
    let chains = partial
        .iter()
        .fold(BiPoly::zero(&ctx), |acc, s| acc + s);
    let f0_pow = f[0].pow(p.l as u32);
    let scaled = f0_pow.scale(&CycNum::from_int(&ctx, p.l as i64));
    let numerator = &f[0] * &chains - scaled;
    Ok(numerator.exact_div(&w_poly(&ctx))?)
}

/// G(t, u) from the root-of-unity closed form.
pub fn g_poly_closedform(p: Params) -> Result<BiPoly, GenFunError> {
    let ctx = p.context();
    let n = p.n as i64;
    let w = w_poly(&ctx);
    let a0 = a_poly(&ctx, 0);
    let f0 = f_poly(&ctx, 0);
    let mut f0_pows = vec![BiPoly::one(&ctx)];
    for j in 1..p.l {
        let next = &f0_pows[j - 1] * &f0;
        f0_pows.push(next);
    }
    let l_scalar = CycNum::from_int(&ctx, p.l as i64);

    let terms: Vec<Result<BiPoly, GenFunError>> = (1..n)
        .into_par_iter()
        .map(|r| {
            let fr = f_poly(&ctx, r);
            let gr = w.exact_div(&(&a0 * &a_poly(&ctx, r)))?;
            // Horner: sum_{j<L} f_0^(L-1-j) f_r^j
            let mut geo = BiPoly::one(&ctx);
            for j in 1..p.l {
                geo = &geo * &fr + &f0_pows[j];
            }
            let bracket = geo - f0_pows[p.l - 1].scale(&l_scalar);
            let prefactor = BiPoly::from_terms(
                &ctx,
                &[
                    (1, 0, CycNum::root_power(&ctx, r)),
                    (0, 1, -CycNum::root_power(&ctx, -r)),
                ],
            );
            Ok(prefactor * gr * bracket)
        })
        .collect();
    let mut sum = BiPoly::zero(&ctx);
    for t in terms {
        sum = sum + t?;
    }

    let one = CycNum::one(&ctx);
    let tn_minus_un = BiPoly::from_terms(&ctx, &[(p.n, 0, one.clone()), (0, p.n, -one)]);
    let quotient = sum.exact_div(&tn_minus_un)?;
    divide_by_n(&quotient, p.n)
}

/// Divides every coefficient by `n`, requiring each to be an integer multiple.
fn divide_by_n(poly: &BiPoly, n: usize) -> Result<BiPoly, GenFunError> {
    let ctx = poly.context();
    let big_n = BigInt::from(n);
    let (rows, cols) = poly.shape();
    let mut out = BiPoly::with_shape(ctx, rows, cols);
    let mut terms = Vec::new();
    for (i, j, c) in poly.terms() {
        let v = c.as_integer().ok_or_else(|| GenFunError::NotInteger {
            ell: i,
            k: j,
            value: c.to_string(),
        })?;
        let (q, r) = v.div_rem(&big_n);
        if !r.is_zero() {
            return Err(GenFunError::NotDivisibleByN {
                ell: i,
                k: j,
                value: v.to_string(),
            });
        }
        terms.push((i, j, CycNum::from_bigint(ctx, q)));
    }
    if !terms.is_empty() {
        out = out + BiPoly::from_terms(ctx, &terms);
    }
    Ok(out)
}

/// Square integer grid of G coefficients, `entries[ell][k]` multiplying `t^ell u^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffMatrix {
    params: Params,
    method: Method,
    entries: Vec<Vec<BigInt>>,
}

impl CoeffMatrix {
    pub fn new(params: Params, method: Method, entries: Vec<Vec<BigInt>>) -> Self {
        CoeffMatrix {
            params,
            method,
            entries,
        }
    }

    /// Reads the grid off a polynomial, requiring integer coefficients
    /// inside the degree bound and nothing outside it.
    pub fn from_poly(params: Params, method: Method, g: &BiPoly) -> Result<Self, GenFunError> {
        let degree = params.degree();
        let size = degree + 1;
        let mut entries = vec![vec![BigInt::zero(); size]; size];
        for (i, j, c) in g.terms() {
            if i > degree || j > degree {
                return Err(GenFunError::OutsideDegreeBound {
                    ell: i,
                    k: j,
                    degree,
                });
            }
            entries[i][j] = c.as_integer().ok_or_else(|| GenFunError::NotInteger {
                ell: i,
                k: j,
                value: c.to_string(),
            })?;
        }
        Ok(CoeffMatrix {
            params,
            method,
            entries,
        })
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn degree(&self) -> usize {
        self.params.degree()
    }

    pub fn entries(&self) -> &[Vec<BigInt>] {
        &self.entries
    }

    pub fn get(&self, ell: usize, k: usize) -> Option<&BigInt> {
        self.entries.get(ell).and_then(|row| row.get(k))
    }

    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    pub fn first_asymmetry(&self) -> Option<(usize, usize)> {
        let size = self.entries.len();
        (0..size)
            .flat_map(|i| (i + 1..size).map(move |j| (i, j)))
            .find(|&(i, j)| self.entries[i][j] != self.entries[j][i])
    }

    /// First entry, in row-major order, where the two matrices differ.
    pub fn first_difference(&self, other: &CoeffMatrix) -> Option<MatrixMismatch> {
        let size = self.entries.len().max(other.entries.len());
        let zero = BigInt::zero();
        for ell in 0..size {
            for k in 0..size {
                let a = self.get(ell, k).unwrap_or(&zero);
                let b = other.get(ell, k).unwrap_or(&zero);
                if a != b {
                    return Some(MatrixMismatch {
                        ell,
                        k,
                        left: a.clone(),
                        right: b.clone(),
                    });
                }
            }
        }
        None
    }

    /// True when any entry is negative.
    pub fn has_negative_entry(&self) -> bool {
        self.entries.iter().flatten().any(|v| v.sign() == num_bigint::Sign::Minus)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixMismatch {
    pub ell: usize,
    pub k: usize,
    pub left: BigInt,
    pub right: BigInt,
}

impl fmt::Display for MatrixMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G[{}][{}]: {} vs {}", self.ell, self.k, self.left, self.right)
    }
}

pub fn g_bruteforce(p: Params) -> Result<CoeffMatrix, GenFunError> {
    CoeffMatrix::from_poly(p, Method::Brute, &g_poly_bruteforce(p)?)
}

pub fn g_closedform(p: Params) -> Result<CoeffMatrix, GenFunError> {
    CoeffMatrix::from_poly(p, Method::Closed, &g_poly_closedform(p)?)
}

/// Conjectured coefficient `G_{ell N + Q, j N + P}` for `P >= Q`, ignoring the
/// degree bound.
pub fn conjectured_coeff(lam: &LambdaTable, ell: usize, q: usize, j: usize, p: usize) -> BigInt {
    let (ell, j) = (ell as i64, j as i64);
    let mut sum = BigInt::zero();
    for n in 0..=j {
        let first = lam.get(q, n) * lam.get(p, ell + 1 + j - n) * BigInt::from(j - n + 1);
        let second = lam.get(q, ell + 1 + j - n) * lam.get(p, n) * BigInt::from(n - ell);
        sum += first - second;
    }
    sum
}

/// Single conjectured coefficient with the degree-bound convention: indices
/// outside the grid give zero.
pub fn g_coeff(p: Params, ell: usize, q: usize, j: usize, pr: usize) -> Result<BigInt, GenFunError> {
    if q > pr || pr >= p.n {
        return Err(GenFunError::InvalidResidues { q, p: pr });
    }
    let degree = p.degree();
    if ell * p.n + q > degree || j * p.n + pr > degree {
        return Ok(BigInt::zero());
    }
    Ok(conjectured_coeff(&lambda_table(p), ell, q, j, pr))
}

/// Fills the matrix from an entry formula `formula(lam, ell, Q, j, P)`
/// evaluated with `P >= Q`; the other half is read by symmetry.
pub fn g_conjecture_by<F>(p: Params, formula: F) -> CoeffMatrix
where
    F: Fn(&LambdaTable, usize, usize, usize, usize) -> BigInt,
{
    let lam = lambda_table(p);
    let size = p.degree() + 1;
    let n = p.n;
    let entries = (0..size)
        .map(|row| {
            (0..size)
                .map(|col| {
                    let (ell, q) = (row / n, row % n);
                    let (j, pr) = (col / n, col % n);
                    if pr >= q {
                        formula(&lam, ell, q, j, pr)
                    } else {
                        formula(&lam, j, pr, ell, q)
                    }
                })
                .collect()
        })
        .collect();
    CoeffMatrix::new(p, Method::Conjecture, entries)
}

/// The conjectured matrix, after cross-checking the two diagonal-residue
/// forms against the general formula.
pub fn g_conjecture(p: Params) -> Result<CoeffMatrix, GenFunError> {
    check_diagonal_forms(p)?;
    Ok(g_conjecture_by(p, conjectured_coeff))
}

/// `G_{ell N + P, m N + P}` as the shifted sum over `max(0, m - ell) <= s <= m`.
pub fn diagonal_coeff_shifted(lam: &LambdaTable, p: usize, ell: usize, m: usize) -> BigInt {
    let (ell, m) = (ell as i64, m as i64);
    let mut sum = BigInt::zero();
    for s in (m - ell).max(0)..=m {
        sum += BigInt::from(ell - m + 2 * s + 1) * lam.get(p, ell + 1 + s) * lam.get(p, m - s);
    }
    sum
}

/// `G_{ell N + P, m N + P}` as the reflected sum over `0 <= s <= min(m, ell)`.
pub fn diagonal_coeff_reflected(lam: &LambdaTable, p: usize, ell: usize, m: usize) -> BigInt {
    let (ell, m) = (ell as i64, m as i64);
    let mut sum = BigInt::zero();
    for s in 0..=m.min(ell) {
        sum += BigInt::from(ell + m - 2 * s + 1) * lam.get(p, ell + m + 1 - s) * lam.get(p, s);
    }
    sum
}

/// Checks that both diagonal forms agree with each other and with the
/// general formula for every `0 <= ell, m <= m_P - 1`.
pub fn check_diagonal_forms(p: Params) -> Result<(), GenFunError> {
    let lam = lambda_table(p);
    for residue in 0..p.n {
        let top = lam.m(residue);
        for ell in 0..top {
            for m in 0..top {
                let shifted = diagonal_coeff_shifted(&lam, residue, ell, m);
                let reflected = diagonal_coeff_reflected(&lam, residue, ell, m);
                let general = conjectured_coeff(&lam, ell, residue, m, residue);
                if shifted != reflected || shifted != general {
                    return Err(GenFunError::InconsistentDiagonalForms {
                        p: residue,
                        ell,
                        m,
                        shifted,
                        reflected,
                        general,
                    });
                }
            }
        }
    }
    Ok(())
}

/// Which sign the running index takes in the first Lambda subscript of the
/// off-diagonal (`P > Q`) formula: `ell + m + 1 + r` or `ell + m + 1 - r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SubscriptVariant {
    Plus,
    Minus,
}

impl SubscriptVariant {
    pub fn name(&self) -> &'static str {
        match self {
            SubscriptVariant::Plus => "l+m+1+r",
            SubscriptVariant::Minus => "l+m+1-r",
        }
    }
}

/// Off-diagonal coefficient `G_{ell N + Q, m N + P}` (`P > Q`) as a sum over
/// `0 <= r <= min(m, ell)`.
pub fn off_diagonal_coeff(
    lam: &LambdaTable,
    ell: usize,
    q: usize,
    m: usize,
    p: usize,
    variant: SubscriptVariant,
) -> BigInt {
    let (ell, m) = (ell as i64, m as i64);
    let mut sum = BigInt::zero();
    for r in 0..=m.min(ell) {
        let first_index = match variant {
            SubscriptVariant::Plus => ell + m + 1 + r,
            SubscriptVariant::Minus => ell + m + 1 - r,
        };
        sum += BigInt::from(ell - r) * lam.get(q, first_index) * lam.get(p, r);
        sum += BigInt::from(m + 1 - r) * lam.get(q, r) * lam.get(p, m + ell + 1 - r);
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn params(n: usize, l: usize) -> Params {
        Params::new(n, l).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(Params::new(1, 3).is_err());
        assert!(Params::new(3, 1).is_err());
        assert_eq!(params(3, 3).degree(), 3);
        assert_eq!(params(2, 2).degree(), 0);
    }

    #[test]
    fn q_coeff_examples() {
        assert_eq!(q_coeffs(params(2, 2)), ints(&[1, 2, 1]));
        assert_eq!(q_coeffs(params(3, 3)), ints(&[1, 3, 6, 7, 6, 3, 1]));
        assert_eq!(q_coeffs(params(2, 4)), ints(&[1, 4, 6, 4, 1]));
    }

    #[test]
    fn q_coeffs_match_bipoly_expansion() {
        for (n, l) in [(3, 3), (4, 5), (5, 4)] {
            let p = params(n, l);
            let ctx = p.context();
            let geo = BiPoly::from_fn(&ctx, n, 1, |_, _| CycNum::one(&ctx));
            let q = geo.pow(l as u32);
            let c = q_coeffs(p);
            assert_eq!(c.len(), p.q_degree() + 1);
            for (m, cm) in c.iter().enumerate() {
                assert_eq!(q.coeff(m, 0).as_integer().as_ref(), Some(cm));
            }
        }
    }

    #[test]
    fn q_coeffs_are_palindromic() {
        for n in 2..=6 {
            for l in 2..=9 {
                let c = q_coeffs(params(n, l));
                let rev: Vec<_> = c.iter().rev().cloned().collect();
                assert_eq!(c, rev);
            }
        }
    }

    #[test]
    fn lambda_table_examples() {
        let lam = lambda_table(params(3, 3));
        assert_eq!(lam.rows(), &[ints(&[1, 7, 1]), ints(&[3, 6]), ints(&[6, 3])]);
        let lam = lambda_table(params(2, 4));
        assert_eq!(lam.rows(), &[ints(&[1, 6, 1]), ints(&[4, 4])]);
        let lam = lambda_table(params(2, 2));
        assert_eq!(lam.rows(), &[ints(&[1, 1]), ints(&[2])]);
        assert_eq!(lam.get(1, 1), BigInt::zero());
        assert_eq!(lam.get(0, -1), BigInt::zero());
    }

    #[test]
    fn lambda_row_lengths_follow_floor_formula() {
        for n in 2..=6 {
            for l in 2..=9 {
                let p = params(n, l);
                let lam = lambda_table(p);
                for residue in 0..n {
                    let m = ((n - 1) * l - residue) / n;
                    assert_eq!(lam.m(residue), m, "N={n} L={l} P={residue}");
                }
            }
        }
    }

    #[test]
    fn f_poly_examples() {
        let ctx = CycContext::new(2).unwrap();
        let one = BiPoly::one(&ctx);
        let (t, u) = (BiPoly::t(&ctx), BiPoly::u(&ctx));
        assert_eq!(f_poly(&ctx, 0), (&one + &t) * (&one + &u));
        assert_eq!(f_poly(&ctx, 1), (&one - &t) * (&one - &u));
        for n in 2..=6 {
            let ctx = CycContext::new(n).unwrap();
            assert_eq!(f_poly(&ctx, n as i64), f_poly(&ctx, 0));
        }
    }

    #[test]
    fn f_poly_times_a_is_w() {
        for n in 2..=7 {
            let ctx = CycContext::new(n).unwrap();
            for a in 0..=n as i64 {
                assert_eq!(f_poly(&ctx, a) * a_poly(&ctx, a), w_poly(&ctx), "N={n} a={a}");
            }
        }
    }

    #[test]
    fn bruteforce_small_examples() {
        let g = g_bruteforce(params(2, 2)).unwrap();
        assert_eq!(g.entries(), &[ints(&[1])]);

        let g = g_bruteforce(params(2, 4)).unwrap();
        assert_eq!(g.degree(), 2);
        assert_eq!(g.get(0, 0), Some(&BigInt::from(6)));
        assert!(g.is_symmetric());

        let g = g_bruteforce(params(3, 3)).unwrap();
        assert_eq!(g.entries().len(), 4);
        assert_eq!(g.get(0, 0), Some(&BigInt::from(7)));
        assert_eq!(g.get(0, 1), Some(&BigInt::from(6)));
        assert_eq!(g.get(0, 2), Some(&BigInt::from(3)));
    }

    #[test]
    fn closedform_matches_bruteforce_on_small_cases() {
        assert_eq!(g_closedform(params(2, 2)).unwrap().entries(), &[ints(&[1])]);
        for (n, l) in [(2, 3), (2, 5), (3, 3), (3, 4), (4, 3)] {
            let p = params(n, l);
            let brute = g_bruteforce(p).unwrap();
            let closed = g_closedform(p).unwrap();
            assert_eq!(brute.first_difference(&closed), None, "{p}");
        }
    }

    /// Evaluates the closed form with genuine divisions by `A_0 - A_r` and
    /// `A_r` at a rational point, to confirm the polynomial rewriting.
    fn closed_form_raw_at(p: Params, t0: &BigRational, u0: &BigRational) -> CycNum {
        let ctx = p.context();
        let n = p.n as i64;
        let l = p.l as i64;
        let t = CycNum::from_rational(&ctx, t0);
        let u = CycNum::from_rational(&ctx, u0);
        let one = CycNum::one(&ctx);
        let a = |r: i64| {
            (&one - &(&t * &CycNum::root_power(&ctx, r))) * (&one - &(&u * &CycNum::root_power(&ctx, -r)))
        };
        let w = (&one - &t.pow(n).unwrap()) * (&one - &u.pow(n).unwrap());
        let f = |r: i64| w.checked_div(&a(r)).unwrap();
        let f0l = f(0).pow(l).unwrap();
        let mut sum = CycNum::zero(&ctx);
        for r in 1..n {
            let pre = &t * &CycNum::root_power(&ctx, r) - &u * &CycNum::root_power(&ctx, -r);
            let first = (f(r).pow(l).unwrap() - &f0l).checked_div(&(a(0) - a(r))).unwrap();
            let second = (f0l.scale_int(&BigInt::from(l))).checked_div(&a(r)).unwrap();
            sum += &(pre * (first - second));
        }
        let denom = CycNum::from_int(&ctx, n) * (t.pow(n).unwrap() - u.pow(n).unwrap());
        sum.checked_div(&denom).unwrap()
    }

    #[test]
    fn polynomial_rewriting_matches_rational_form() {
        let pts = [(2, 7, 1, 3), (-3, 5, 4, 9), (5, 2, -1, 6)];
        for (n, l) in [(2, 2), (2, 3), (3, 2), (3, 3), (3, 4)] {
            let p = params(n, l);
            let g = g_poly_closedform(p).unwrap();
            for &(a, b, c, d) in &pts {
                let t0 = BigRational::new(a.into(), b.into());
                let u0 = BigRational::new(c.into(), d.into());
                assert_eq!(g.eval(&t0, &u0), closed_form_raw_at(p, &t0, &u0), "{p}");
            }
        }
    }

    #[test]
    fn conjecture_examples() {
        let g = g_conjecture(params(2, 2)).unwrap();
        assert_eq!(g.entries(), &[ints(&[1])]);
        let g = g_conjecture(params(3, 3)).unwrap();
        assert_eq!(g.get(0, 1), Some(&BigInt::from(6)));
        assert_eq!(g.get(0, 0), Some(&BigInt::from(7)));
    }

    #[test]
    fn single_coefficient_examples() {
        assert_eq!(g_coeff(params(2, 4), 0, 0, 0, 0).unwrap(), BigInt::from(6));
        assert_eq!(g_coeff(params(2, 2), 0, 0, 0, 1).unwrap(), BigInt::zero());
        assert_eq!(g_coeff(params(3, 3), 0, 0, 0, 2).unwrap(), BigInt::from(3));
        assert!(g_coeff(params(3, 3), 0, 2, 0, 1).is_err());
        assert!(g_coeff(params(3, 3), 0, 0, 0, 3).is_err());
    }

    #[test]
    fn out_of_range_lambda_reads_are_zero() {
        let lam = lambda_table(params(2, 2));
        // Lambda^1 has a single entry; the read of index 1 contributes nothing.
        assert_eq!(conjectured_coeff(&lam, 0, 0, 0, 1), BigInt::zero());
        assert_eq!(conjectured_coeff(&lam, 0, 0, 0, 0), BigInt::one());
        assert_eq!(lam.get(1, 5), BigInt::zero());
    }

    #[test]
    fn diagonal_forms_agree() {
        for n in 2..=5 {
            for l in 2..=8 {
                check_diagonal_forms(params(n, l)).unwrap();
            }
        }
    }
}
