//! Truncated series and MacMahon's Omega operator.
//!
//! A [`MultiSeries`] is a power series in a fixed list of auxiliary
//! variables, truncated at total degree `D`. A [`LaurentSeries`] adds one
//! distinguished variable `lambda` whose exponent may be negative; every
//! `1/lambda` is paired with auxiliary degree, so the lambda window stays
//! finite once the auxiliary degree is truncated.
//!
//! `omega_ge` keeps the nonnegative lambda powers and sets `lambda = 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::cyclo::{CycContext, CycNum};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OmegaError {
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("variable sets differ")]
    VarSetMismatch,
    #[error("geometric series in {0} does not converge as a truncated series")]
    NonConvergentShape(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("series differ at {exponents}: left {left}, right {right}")]
    SeriesMismatch {
        exponents: String,
        left: BigRational,
        right: BigRational,
    },
    #[error("cross term survives the Omega operator: {0}")]
    CrossTermNonzero(String),
    #[error("chain sum differs from its reduction at mu = {mu:?}, nu = {nu:?}: {left} vs {right}")]
    ReductionMismatch {
        mu: Vec<usize>,
        nu: Vec<usize>,
        left: String,
        right: String,
    },
}

/// Ordered auxiliary variable names and the total-degree cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarSet {
    names: Vec<String>,
    trunc: u32,
}

impl VarSet {
    pub fn new<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        trunc: u32,
    ) -> Result<Arc<Self>, OmegaError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(OmegaError::DuplicateVariable(n.clone()));
            }
        }
        Ok(Arc::new(VarSet { names, trunc }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Human-readable monomial, e.g. `x^2*y1`.
    pub fn format_monomial(&self, exps: &[u32]) -> String {
        let parts: Vec<String> = exps
            .iter()
            .zip(&self.names)
            .filter(|(e, _)| **e > 0)
            .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

fn degree(exps: &[u32]) -> u32 {
    exps.iter().sum()
}

fn add_exps(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Truncated multivariate power series with rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiSeries {
    vars: Arc<VarSet>,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl MultiSeries {
    pub fn zero(vars: &Arc<VarSet>) -> Self {
        MultiSeries {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &Arc<VarSet>) -> Self {
        Self::constant(vars, BigRational::one())
    }

    pub fn constant(vars: &Arc<VarSet>, c: BigRational) -> Self {
        Self::monomial(vars, &vec![0; vars.len()], c)
    }

    /// `c * prod vars^exps`, or zero if its degree exceeds the truncation.
    pub fn monomial(vars: &Arc<VarSet>, exps: &[u32], c: BigRational) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent tuple has the wrong length");
        let mut s = Self::zero(vars);
        if degree(exps) <= vars.trunc && !Zero::is_zero(&c) {
            s.terms.insert(exps.to_vec(), c);
        }
        s
    }

    pub fn var(vars: &Arc<VarSet>, idx: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[idx] = 1;
        Self::monomial(vars, &e, BigRational::one())
    }

    /// Product of variables given as `(index, power)` pairs.
    pub fn product_of(vars: &Arc<VarSet>, factors: &[(usize, u32)]) -> Self {
        Self::monomial(vars, &exps_from(vars, factors), BigRational::one())
    }

    /// `1 / (1 - m)` for a monomial `m` of positive degree.
    pub fn geometric(vars: &Arc<VarSet>, exps: &[u32]) -> Result<Self, OmegaError> {
        if degree(exps) == 0 {
            return Err(OmegaError::NonConvergentShape(vars.format_monomial(exps)));
        }
        let mut s = Self::zero(vars);
        let mut cur = vec![0; vars.len()];
        while degree(&cur) <= vars.trunc {
            s.terms.insert(cur.clone(), BigRational::one());
            cur = add_exps(&cur, exps);
        }
        Ok(s)
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn coeff(&self, exps: &[u32]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigRational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_vars(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars,
            "series over different variable sets"
        );
    }

    fn accumulate(&mut self, exps: Vec<u32>, c: BigRational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                if !Zero::is_zero(&c) {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if Zero::is_zero(o.get()) {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_vars(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(&self.vars);
        if Zero::is_zero(c) {
            return out;
        }
        out.terms = self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect();
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_vars(other);
        let trunc = self.vars.trunc;
        let mut out = Self::zero(&self.vars);
        for (ea, ca) in &self.terms {
            let da = degree(ea);
            for (eb, cb) in &other.terms {
                if da + degree(eb) > trunc {
                    continue;
                }
                out.accumulate(add_exps(ea, eb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse, available when the constant term is nonzero.
    pub fn inv(&self) -> Option<Self> {
        let zero_exp = vec![0; self.vars.len()];
        let c0 = self.terms.get(&zero_exp)?.clone();
        let c0_inv = c0.recip();
        // self = c0 (1 + r) with r of positive order
        let r = self.scale(&c0_inv).sub(&Self::one(&self.vars));
        let minus_r = r.neg();
        let mut sum = Self::one(&self.vars);
        let mut power = Self::one(&self.vars);
        for _ in 0..self.vars.trunc {
            power = power.mul(&minus_r);
            if power.is_zero() {
                break;
            }
            sum = sum.add(&power);
        }
        Some(sum.scale(&c0_inv))
    }

    /// First exponent tuple, in lexicographic order, where the two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<(Vec<u32>, BigRational, BigRational)> {
        let diff = self.sub(other);
        let (e, _) = diff.terms.iter().next()?;
        Some((e.clone(), self.coeff(e), other.coeff(e)))
    }

    fn mismatch(&self, other: &Self) -> Result<(), OmegaError> {
        match self.first_difference(other) {
            None => Ok(()),
            Some((e, left, right)) => Err(OmegaError::SeriesMismatch {
                exponents: self.vars.format_monomial(&e),
                left,
                right,
            }),
        }
    }
}

impl fmt::Debug for MultiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for MultiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| format!("{}*{}", c, self.vars.format_monomial(e)))
            .collect();
        write!(f, "{} + O(deg {})", parts.join(" + "), self.vars.trunc + 1)
    }
}

impl Scalar for MultiSeries {
    fn zero_like(&self) -> Self {
        Self::zero(&self.vars)
    }
    fn one_like(&self) -> Self {
        Self::one(&self.vars)
    }
    fn from_int_like(&self, v: i64) -> Self {
        Self::constant(&self.vars, BigRational::from_integer(v.into()))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn try_inv(&self) -> Option<Self> {
        self.inv()
    }
}

fn exps_from(vars: &VarSet, factors: &[(usize, u32)]) -> Vec<u32> {
    let mut e = vec![0; vars.len()];
    for &(i, p) in factors {
        e[i] += p;
    }
    e
}

/// Series in `lambda` (any integer exponent) with [`MultiSeries`] coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    vars: Arc<VarSet>,
    terms: BTreeMap<i64, MultiSeries>,
}

impl LaurentSeries {
    pub fn zero(vars: &Arc<VarSet>) -> Self {
        LaurentSeries {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &Arc<VarSet>) -> Self {
        Self::from_series(MultiSeries::one(vars))
    }

    /// Embeds a lambda-free series.
    pub fn from_series(s: MultiSeries) -> Self {
        let mut out = Self::zero(&s.vars);
        if !s.is_zero() {
            out.terms.insert(0, s);
        }
        out
    }

    /// `c * vars^exps * lambda^lambda_exp`.
    pub fn monomial(vars: &Arc<VarSet>, exps: &[u32], lambda_exp: i64, c: BigRational) -> Self {
        Self::from_series(MultiSeries::monomial(vars, exps, c)).shift(lambda_exp)
    }

    /// `sum_{k >= 0} (m lambda^a)^k` for the monomial `m = vars^exps`.
    pub fn geom(vars: &Arc<VarSet>, exps: &[u32], lambda_exp: i64) -> Result<Self, OmegaError> {
        if degree(exps) == 0 {
            let mut shape = vars.format_monomial(exps);
            if lambda_exp != 0 {
                shape = format!("{shape}*lambda^{lambda_exp}");
            }
            return Err(OmegaError::NonConvergentShape(shape));
        }
        Ok(Self::geom_finite(vars, exps, lambda_exp, u32::MAX))
    }

    /// `sum_{k=0}^{count-1} (m lambda^a)^k`, i.e. `(1 - (m lambda^a)^count) / (1 - m lambda^a)`.
    pub fn geom_finite(vars: &Arc<VarSet>, exps: &[u32], lambda_exp: i64, count: u32) -> Self {
        let mut out = Self::zero(vars);
        let mut cur = vec![0; vars.len()];
        let mut k: u32 = 0;
        while k < count && degree(&cur) <= vars.trunc {
            out.add_term(k as i64 * lambda_exp, MultiSeries::monomial(vars, &cur, BigRational::one()));
            cur = add_exps(&cur, exps);
            k += 1;
        }
        out
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    /// Coefficient of `lambda^k`.
    pub fn coeff(&self, k: i64) -> MultiSeries {
        self.terms
            .get(&k)
            .cloned()
            .unwrap_or_else(|| MultiSeries::zero(&self.vars))
    }

    pub fn lambda_range(&self) -> Option<(i64, i64)> {
        Some((*self.terms.keys().next()?, *self.terms.keys().next_back()?))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, k: i64, s: MultiSeries) {
        if s.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&k) {
            Some(old) => old.add(&s),
            None => s,
        };
        if !merged.is_zero() {
            self.terms.insert(k, merged);
        }
    }

    /// Multiplies by `lambda^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, s)| (e + k, s.clone())).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, s) in &other.terms {
            out.add_term(*k, s.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, s) in &other.terms {
            out.add_term(*k, s.neg());
        }
        out
    }

    pub fn scale(&self, c: &MultiSeries) -> Self {
        let mut out = Self::zero(&self.vars);
        for (k, s) in &self.terms {
            out.add_term(*k, s.mul(c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.vars);
        for (ka, sa) in &self.terms {
            for (kb, sb) in &other.terms {
                out.add_term(ka + kb, sa.mul(sb));
            }
        }
        out
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (k, s) in &self.terms {
            m.entry(&format!("lambda^{k}"), s);
        }
        m.finish()
    }
}

/// Keeps the nonnegative powers of lambda and sets `lambda = 1`.
pub fn omega_ge(s: &LaurentSeries) -> MultiSeries {
    s.terms
        .range(0..)
        .fold(MultiSeries::zero(&s.vars), |acc, (_, c)| acc.add(c))
}

/// Replaces the variable `idx` by `vars^exps * lambda^lambda_exp`.
pub fn substitute(s: &MultiSeries, idx: usize, exps: &[u32], lambda_exp: i64) -> LaurentSeries {
    let vars = s.vars();
    let mut out = LaurentSeries::zero(vars);
    for (e, c) in s.terms() {
        let k = e[idx];
        let mut new_e = e.to_vec();
        new_e[idx] = 0;
        for (slot, add) in new_e.iter_mut().zip(exps) {
            *slot += add * k;
        }
        out.add_term(
            k as i64 * lambda_exp,
            MultiSeries::monomial(vars, &new_e, c.clone()),
        );
    }
    out
}

/// `h_0 .. h_m` of the given values; `unit` supplies the ring's one.
pub fn h_complete_all<S: Scalar>(m: usize, values: &[S], unit: &S) -> Vec<S> {
    let mut h = vec![unit.zero_like(); m + 1];
    h[0] = unit.one_like();
    for v in values {
        for d in 1..=m {
            let step = v.mul_ref(&h[d - 1]);
            h[d] = h[d].add_ref(&step);
        }
    }
    h
}

/// Complete homogeneous symmetric function `h_m` of the given values.
pub fn h_complete<S: Scalar>(m: usize, values: &[S], unit: &S) -> S {
    h_complete_all(m, values, unit).pop().expect("nonempty")
}

fn x_sum_identity_rhs(
    vars: &Arc<VarSet>,
    x: usize,
    s: &[MultiSeries],
    split: usize,
    offset: u32,
) -> MultiSeries {
    // sum_{m < split} S_m + sum_{m >= split} S_m x^(m - split), scaled by x^offset
    let mut bracket = MultiSeries::zero(vars);
    for (m, sm) in s.iter().enumerate() {
        let term = if m < split {
            sm.clone()
        } else {
            sm.mul(&MultiSeries::product_of(vars, &[(x, (m - split) as u32)]))
        };
        bracket = bracket.add(&term);
    }
    bracket.mul(&MultiSeries::product_of(vars, &[(x, offset)]))
}

/// Left side of the positive-power identity:
/// `Omega[lambda^alpha / ((1 - x lambda) prod (1 - y_i / lambda))]`.
pub fn prop1_lhs(vars: &Arc<VarSet>, alpha: i64) -> Result<MultiSeries, OmegaError> {
    let x = 0;
    let mut prod = LaurentSeries::geom(vars, &exps_from(vars, &[(x, 1)]), 1)?.shift(alpha);
    for i in 1..vars.len() {
        prod = prod.mul(&LaurentSeries::geom(vars, &exps_from(vars, &[(i, 1)]), -1)?);
    }
    Ok(omega_ge(&prod))
}

/// Right side, in the form with only nonnegative powers of `x`:
/// `(1/(1-x)) [sum_{m<alpha} S_m + sum_{m>=alpha} S_m x^(m-alpha)]`.
pub fn prop1_rhs(vars: &Arc<VarSet>, alpha: usize) -> Result<MultiSeries, OmegaError> {
    let ys: Vec<MultiSeries> = (1..vars.len()).map(|i| MultiSeries::var(vars, i)).collect();
    let s = h_complete_all(vars.trunc() as usize, &ys, &MultiSeries::one(vars));
    let bracket = x_sum_identity_rhs(vars, 0, &s, alpha, 0);
    Ok(bracket.mul(&MultiSeries::geometric(vars, &exps_from(vars, &[(0, 1)]))?))
}

/// Variables `x, y1..yM` truncated at `d`.
pub fn prop1_vars(m: usize, d: u32) -> Arc<VarSet> {
    let names = std::iter::once("x".to_string()).chain((1..=m).map(|i| format!("y{i}")));
    VarSet::new(names, d).expect("names are distinct")
}

/// Verifies the positive-power identity for `alpha > 0` and `M` negative factors.
pub fn check_prop1(alpha: usize, m: usize, d: u32) -> Result<(), OmegaError> {
    if alpha == 0 {
        return Err(OmegaError::Precondition("alpha must be positive".into()));
    }
    let vars = prop1_vars(m, d);
    prop1_lhs(&vars, alpha as i64)?.mismatch(&prop1_rhs(&vars, alpha)?)
}

/// Variables `e2 .. ej, x` used by the nested-elimination identity; `x`
/// stands for `e_{j+1} / lambda_{j+1}` and is kept formal.
pub fn theorem1_vars(j: usize, d: u32) -> Arc<VarSet> {
    let names = (2..=j)
        .map(|i| format!("e{i}"))
        .chain(std::iter::once("x".to_string()));
    VarSet::new(names, d).expect("names are distinct")
}

/// Eliminates `lambda_2, ..., lambda_j` in that order from the product of
/// finite factors `sum_{k<=N} (lambda_{i-1} e_i / lambda_i)^k`, with the last
/// ratio `e_{j+1}/lambda_{j+1}` written as the formal variable `x`.
pub fn theorem1_lhs(vars: &Arc<VarSet>, n: usize) -> MultiSeries {
    let x = vars.len() - 1;
    let count = n as u32 + 1;
    let x_exps = exps_from(vars, &[(x, 1)]);
    // Stage 1: sum_{k<=N} x^k with x = e2 / lambda_2.
    let mut t = omega_ge(&LaurentSeries::geom_finite(vars, &x_exps, 0, count));
    for stage in 0..x {
        let e_idx = stage;
        let lifted = substitute(&t, x, &exps_from(vars, &[(e_idx, 1)]), -1);
        let factor = LaurentSeries::geom_finite(vars, &x_exps, 1, count);
        t = omega_ge(&lifted.mul(&factor));
    }
    t
}

/// Closed form `1/((1-x) R(x)) - x^(N+1)/(1-x) [sum_{m<=N} S_m + sum_{m>N} S_m x^(m-N-1)]`
/// with `y_m = e_j e_{j-1} ... e_{j-m+1}`.
pub fn theorem1_rhs(vars: &Arc<VarSet>, n: usize) -> Result<MultiSeries, OmegaError> {
    let x = vars.len() - 1;
    let j = x + 1;
    let ys: Vec<MultiSeries> = (1..j)
        .map(|m| {
            let factors: Vec<(usize, u32)> = (0..m).map(|i| (j - i - 2, 1)).collect();
            MultiSeries::product_of(vars, &factors)
        })
        .collect();
    let one = MultiSeries::one(vars);
    let s = h_complete_all(vars.trunc() as usize, &ys, &one);
    let inv_one_minus_x = MultiSeries::geometric(vars, &exps_from(vars, &[(x, 1)]))?;
    let mut r_at_x = one.clone();
    for y in &ys {
        let yx = y.mul(&MultiSeries::var(vars, x));
        r_at_x = r_at_x.mul(&one.sub(&yx));
    }
    let first = inv_one_minus_x.mul(&r_at_x.inv().expect("unit constant term"));
    let second = x_sum_identity_rhs(vars, x, &s, n + 1, n as u32 + 1).mul(&inv_one_minus_x);
    Ok(first.sub(&second))
}

/// `Omega[(y/lambda)^(N+1) (1 - (lambda x)^(N+1)) / ((1 - y/lambda)(1 - lambda x))]`,
/// which has no surviving terms.
pub fn theorem1_cross_term(n: usize, d: u32) -> MultiSeries {
    let vars = VarSet::new(["y", "x"], d).expect("distinct");
    let count = n as u32 + 1;
    let lead = LaurentSeries::monomial(&vars, &[count, 0], -(count as i64), BigRational::one());
    let tail = LaurentSeries::geom(&vars, &[1, 0], -1).expect("positive degree");
    let finite = LaurentSeries::geom_finite(&vars, &[0, 1], 1, count);
    omega_ge(&lead.mul(&tail).mul(&finite))
}

/// Verifies the nested-elimination closed form for `T_j`.
pub fn check_theorem1(j: usize, n: usize, d: u32) -> Result<(), OmegaError> {
    if j < 2 {
        return Err(OmegaError::Precondition("j must be at least 2".into()));
    }
    let cross = theorem1_cross_term(n, d);
    if !cross.is_zero() {
        return Err(OmegaError::CrossTermNonzero(cross.to_string()));
    }
    let vars = theorem1_vars(j, d);
    theorem1_lhs(&vars, n).mismatch(&theorem1_rhs(&vars, n)?)
}

/// Exponents `e_i = mu_i - nu_i mod N` for `i = 2..L`, from slices indexed `1..L`.
fn eps_exponents(n: usize, mu: &[usize], nu: &[usize]) -> Vec<usize> {
    mu.iter()
        .zip(nu)
        .skip(1)
        .map(|(m, v)| (m + n - v % n) % n)
        .collect()
}

fn cyc_from_histogram(ctx: &Arc<CycContext>, hist: &[i64]) -> CycNum {
    hist.iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .fold(CycNum::zero(ctx), |acc, (k, c)| {
            acc + CycNum::root_power(ctx, k as i64).scale_int(&BigInt::from(*c))
        })
}

/// `sum over 0 <= N_2 <= ... <= N_L <= top` of `e_2^{N_2} ... e_L^{N_L}`,
/// with `e_i = w^{mu_i - nu_i}`.
pub fn v_direct(ctx: &Arc<CycContext>, top: usize, mu: &[usize], nu: &[usize]) -> CycNum {
    let n = ctx.order();
    let eps = eps_exponents(n, mu, nu);
    let len = eps.len();
    let mut hist = vec![0i64; n];
    let mut chain = vec![0usize; len];
    loop {
        let e: usize = chain.iter().zip(&eps).map(|(c, e)| c * e).sum();
        hist[e % n] += 1;
        let Some(k) = (0..len).rev().find(|&k| chain[k] < top) else {
            break;
        };
        let v = chain[k] + 1;
        for slot in &mut chain[k..] {
            *slot = v;
        }
    }
    cyc_from_histogram(ctx, &hist)
}

/// The reduced form `sum_{l<=N} e_L^l + sum_{m=1}^N S_m sum_{l=0}^{N-m} e_L^{m+l}`
/// with `S_m = h_m(y_1 .. y_{L-2})`, `y_m = e_{L-1} e_{L-2} ... e_{L-m}`.
pub fn v_reduced(ctx: &Arc<CycContext>, mu: &[usize], nu: &[usize]) -> CycNum {
    let n = ctx.order();
    let eps = eps_exponents(n, mu, nu);
    let l = eps.len() + 1;
    let e = |i: usize| eps[i - 2];
    let ys: Vec<CycNum> = (1..=l.saturating_sub(2))
        .map(|m| {
            let exp: usize = (0..m).map(|i| e(l - 1 - i)).sum();
            CycNum::root_power(ctx, exp as i64)
        })
        .collect();
    let one = CycNum::one(ctx);
    let s = h_complete_all(n, &ys, &one);
    let el = e(l) as i64;
    let power = |k: usize| CycNum::root_power(ctx, el * k as i64);
    let mut total = (0..=n).fold(CycNum::zero(ctx), |acc, k| acc + power(k));
    for (m, sm) in s.iter().enumerate().skip(1) {
        let inner = (0..=n - m).fold(CycNum::zero(ctx), |acc, k| acc + power(m + k));
        total += &(sm * &inner);
    }
    total
}

/// Compares the chain sum with its reduction for one `(mu, nu)` pair.
pub fn check_v_reduction(
    ctx: &Arc<CycContext>,
    l: usize,
    mu: &[usize],
    nu: &[usize],
) -> Result<(), OmegaError> {
    let n = ctx.order();
    if mu.len() != l || nu.len() != l || l < 2 {
        return Err(OmegaError::Precondition(format!(
            "need L >= 2 and {l} entries in each of mu, nu"
        )));
    }
    if mu.iter().chain(nu).any(|&v| v >= n) {
        return Err(OmegaError::Precondition(format!("entries must lie in 0..{n}")));
    }
    let left = v_direct(ctx, n, mu, nu);
    let right = v_reduced(ctx, mu, nu);
    if left != right {
        return Err(OmegaError::ReductionMismatch {
            mu: mu.to_vec(),
            nu: nu.to_vec(),
            left: left.to_string(),
            right: right.to_string(),
        });
    }
    Ok(())
}
