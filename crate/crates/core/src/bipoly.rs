//! Dense bivariate polynomials in `t` and `u` with coefficients in Q(w).
//!
//! Storage is a rectangular row-major grid, `coeff[i][j]` being the
//! coefficient of `t^i u^j`. Grids are allowed to carry zero padding;
//! equality is mathematical and ignores it.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::cyclo::{CycContext, CycNum, CycloError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BiPolyError {
    #[error("polynomials live over different fields (N = {left} vs N = {right})")]
    ContextMismatch { left: usize, right: usize },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("inexact division: remainder term t^{t_exp} u^{u_exp} survives")]
    NotDivisible { t_exp: usize, u_exp: usize },
}

impl From<CycloError> for BiPolyError {
    fn from(e: CycloError) -> Self {
        match e {
            CycloError::ContextMismatch { left, right } => BiPolyError::ContextMismatch { left, right },
            _ => BiPolyError::DivisionByZero,
        }
    }
}

#[derive(Clone)]
pub struct BiPoly {
    ctx: Arc<CycContext>,
    rows: usize,
    cols: usize,
    data: Vec<CycNum>,
}

impl BiPoly {
    pub fn zero(ctx: &Arc<CycContext>) -> Self {
        BiPoly {
            ctx: Arc::clone(ctx),
            rows: 0,
            cols: 0,
            data: Vec::new(),
        }
    }

    pub fn constant(c: CycNum) -> Self {
        BiPoly {
            ctx: Arc::clone(c.context()),
            rows: 1,
            cols: 1,
            data: vec![c],
        }
    }

    pub fn one(ctx: &Arc<CycContext>) -> Self {
        Self::constant(CycNum::one(ctx))
    }

    /// `c t^i u^j`.
    pub fn monomial(i: usize, j: usize, c: CycNum) -> Self {
        let ctx = Arc::clone(c.context());
        let mut p = Self::with_shape(&ctx, i + 1, j + 1);
        p.data[i * (j + 1) + j] = c;
        p
    }

    /// A zero grid with room for `t^(rows-1) u^(cols-1)`.
    pub fn with_shape(ctx: &Arc<CycContext>, rows: usize, cols: usize) -> Self {
        BiPoly {
            ctx: Arc::clone(ctx),
            rows,
            cols,
            data: vec![CycNum::zero(ctx); rows * cols],
        }
    }

    pub fn from_fn(
        ctx: &Arc<CycContext>,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> CycNum,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        BiPoly {
            ctx: Arc::clone(ctx),
            rows,
            cols,
            data,
        }
    }

    /// Integer grid, `grid[i][j]` multiplying `t^i u^j`.
    pub fn from_int_grid(ctx: &Arc<CycContext>, grid: &[&[i64]]) -> Self {
        let rows = grid.len();
        let cols = grid.iter().map(|r| r.len()).max().unwrap_or(0);
        Self::from_fn(ctx, rows, cols, |i, j| {
            CycNum::from_int(ctx, grid[i].get(j).copied().unwrap_or(0))
        })
    }

    /// Sum of `c t^i u^j` terms; repeated exponents accumulate.
    pub fn from_terms(ctx: &Arc<CycContext>, terms: &[(usize, usize, CycNum)]) -> Self {
        let rows = terms.iter().map(|t| t.0 + 1).max().unwrap_or(0);
        let cols = terms.iter().map(|t| t.1 + 1).max().unwrap_or(0);
        let mut p = Self::with_shape(ctx, rows, cols);
        for (i, j, c) in terms {
            p.data[i * cols + j] += c;
        }
        p
    }

    pub fn t(ctx: &Arc<CycContext>) -> Self {
        Self::monomial(1, 0, CycNum::one(ctx))
    }

    pub fn u(ctx: &Arc<CycContext>) -> Self {
        Self::monomial(0, 1, CycNum::one(ctx))
    }

    pub fn context(&self) -> &Arc<CycContext> {
        &self.ctx
    }

    /// Allocated grid shape `(rows, cols)`, padding included.
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Coefficient of `t^i u^j`; zero outside the grid.
    pub fn coeff(&self, i: usize, j: usize) -> CycNum {
        self.get(i, j).cloned().unwrap_or_else(|| CycNum::zero(&self.ctx))
    }

    fn get(&self, i: usize, j: usize) -> Option<&CycNum> {
        if i < self.rows && j < self.cols {
            Some(&self.data[i * self.cols + j])
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CycNum::is_zero)
    }

    /// Tight degree in `t`, `None` for the zero polynomial.
    pub fn deg_t(&self) -> Option<usize> {
        (0..self.rows)
            .rev()
            .find(|&i| (0..self.cols).any(|j| !self.data[i * self.cols + j].is_zero()))
    }

    /// Tight degree in `u`, `None` for the zero polynomial.
    pub fn deg_u(&self) -> Option<usize> {
        (0..self.cols)
            .rev()
            .find(|&j| (0..self.rows).any(|i| !self.data[i * self.cols + j].is_zero()))
    }

    /// Copy with the grid shrunk to the tight degree bounds.
    pub fn trimmed(&self) -> Self {
        match (self.deg_t(), self.deg_u()) {
            (Some(dt), Some(du)) => self.reshaped(dt + 1, du + 1),
            _ => BiPoly::zero(&self.ctx),
        }
    }

    /// Copy with the given grid shape, dropping anything outside it.
    pub fn reshaped(&self, rows: usize, cols: usize) -> Self {
        Self::from_fn(&self.ctx, rows, cols, |i, j| self.coeff(i, j))
    }

    /// Nonzero terms in ascending `(i, j)` order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &CycNum)> {
        let cols = self.cols;
        self.data
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (k / cols, k % cols, c))
    }

    fn check_ctx(&self, other: &Self) -> Result<(), BiPolyError> {
        if self.ctx.order() == other.ctx.order() {
            Ok(())
        } else {
            Err(BiPolyError::ContextMismatch {
                left: self.ctx.order(),
                right: other.ctx.order(),
            })
        }
    }

    fn zip_with(&self, other: &Self, negate: bool) -> Self {
        let rows = self.rows.max(other.rows);
        let cols = self.cols.max(other.cols);
        let mut out = self.reshaped(rows, cols);
        for (i, j, c) in other.terms() {
            let slot = &mut out.data[i * cols + j];
            if negate {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
        out
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, BiPolyError> {
        self.check_ctx(other)?;
        Ok(self.zip_with(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, BiPolyError> {
        self.check_ctx(other)?;
        Ok(self.zip_with(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, BiPolyError> {
        self.check_ctx(other)?;
        if self.rows == 0 || self.cols == 0 || other.rows == 0 || other.cols == 0 {
            return Ok(BiPoly::zero(&self.ctx));
        }
        if let Some(p) = self.mul_integral(other) {
            return Ok(p);
        }
        Ok(self.mul_general(other))
    }

    fn mul_general(&self, other: &Self) -> Self {
        let rows = self.rows + other.rows - 1;
        let cols = self.cols + other.cols - 1;
        let mut out = Self::with_shape(&self.ctx, rows, cols);
        let rhs: Vec<_> = other.terms().collect();
        for (i, j, a) in self.terms() {
            for &(k, l, b) in &rhs {
                out.data[(i + k) * cols + j + l] += &(a * b);
            }
        }
        out
    }

    /// Integer view of the grid: per cell `phi` numerators, and the largest
    /// magnitude. `None` if any coefficient is non-integral or too large.
    fn small_integer_view(&self) -> Option<(Vec<i64>, u128)> {
        let phi = self.ctx.phi();
        let mut out = Vec::with_capacity(self.data.len() * phi);
        let mut max = 0u128;
        for c in &self.data {
            if !c.is_integral() {
                return None;
            }
            for n in c.numerators() {
                let v = n.to_i64()?;
                max = max.max(v.unsigned_abs() as u128);
                out.push(v);
            }
        }
        Some((out, max))
    }

    /// Exact product through an `i128` accumulator, used when both operands
    /// lie in Z[w] and the accumulated magnitudes provably fit.
    fn mul_integral(&self, other: &Self) -> Option<Self> {
        let phi = self.ctx.phi();
        let (a, max_a) = self.small_integer_view()?;
        let (b, max_b) = other.small_integer_view()?;
        let overlap = (self.rows.min(other.rows) * self.cols.min(other.cols) * phi) as u128;
        let bound = max_a.checked_mul(max_b)?.checked_mul(overlap.max(1))?;
        if bound >= (1u128 << 120) {
            return None;
        }
        let rows = self.rows + other.rows - 1;
        let cols = self.cols + other.cols - 1;
        let width = 2 * phi - 1;
        let mut acc = vec![0i128; rows * cols * width];

        let nonzero = |v: &[i64], r: usize, c: usize| -> Vec<(usize, usize, usize)> {
            (0..r * c)
                .filter(|&k| v[k * phi..(k + 1) * phi].iter().any(|&x| x != 0))
                .map(|k| (k / c, k % c, k * phi))
                .collect()
        };
        let a_cells = nonzero(&a, self.rows, self.cols);
        let b_cells = nonzero(&b, other.rows, other.cols);
        for &(i, j, oa) in &a_cells {
            let av = &a[oa..oa + phi];
            for &(k, l, ob) in &b_cells {
                let bv = &b[ob..ob + phi];
                let base = ((i + k) * cols + j + l) * width;
                let cell = &mut acc[base..base + width];
                for (x, &ax) in av.iter().enumerate() {
                    if ax == 0 {
                        continue;
                    }
                    let ax = ax as i128;
                    for (y, &by) in bv.iter().enumerate() {
                        cell[x + y] += ax * by as i128;
                    }
                }
            }
        }

        let modulus: Vec<i128> = self
            .ctx
            .modulus()
            .iter()
            .map(|m| m.to_i128())
            .collect::<Option<_>>()?;
        let data = acc
            .chunks_mut(width)
            .map(|cell| match reduce_i128(cell, &modulus, phi) {
                Some(()) => {
                    let num: Vec<BigInt> = cell[..phi].iter().map(|&v| BigInt::from(v)).collect();
                    CycNum::from_int_coeffs(&self.ctx, &num)
                }
                None => {
                    let mut raw: Vec<BigInt> = cell.iter().map(|&v| BigInt::from(v)).collect();
                    self.ctx.reduce_in_place(&mut raw);
                    CycNum::from_int_coeffs(&self.ctx, &raw)
                }
            })
            .collect();
        Some(BiPoly {
            ctx: Arc::clone(&self.ctx),
            rows,
            cols,
            data,
        })
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &CycNum) -> Self {
        BiPoly {
            ctx: Arc::clone(&self.ctx),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn scale_rational(&self, c: &BigRational) -> Self {
        BiPoly {
            ctx: Arc::clone(&self.ctx),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.scale(c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = BiPoly::one(&self.ctx);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `p / d`.
    ///
    /// Long division with respect to the lexicographic order `t > u`: each
    /// leading term of the running remainder must be a multiple of the
    /// leading term of `d`, and the final remainder must vanish. Any
    /// violation means `d` does not divide `p`.
    pub fn exact_div(&self, d: &Self) -> Result<Self, BiPolyError> {
        self.check_ctx(d)?;
        let d = d.trimmed();
        let (Some(lt), Some(_)) = (d.deg_t(), d.deg_u()) else {
            return Err(BiPolyError::DivisionByZero);
        };
        let lu = (0..d.cols)
            .rev()
            .find(|&j| !d.data[lt * d.cols + j].is_zero())
            .expect("leading row is nonzero");
        let lead = &d.data[lt * d.cols + lu];
        let lead_inv = if lead.is_one() { None } else { Some(lead.inv()?) };
        let d_terms: Vec<_> = d.terms().collect();

        let mut rem = self.clone();
        if rem.is_zero() {
            return Ok(BiPoly::zero(&self.ctx));
        }
        let qrows = rem.rows.saturating_sub(lt);
        let qcols = rem.cols.saturating_sub(lu);
        let mut quot = Self::with_shape(&self.ctx, qrows, qcols);
        let cols = rem.cols;
        for i in (0..rem.rows).rev() {
            for j in (0..cols).rev() {
                if rem.data[i * cols + j].is_zero() {
                    continue;
                }
                if i < lt || j < lu {
                    return Err(BiPolyError::NotDivisible { t_exp: i, u_exp: j });
                }
                let c = match &lead_inv {
                    None => rem.data[i * cols + j].clone(),
                    Some(inv) => &rem.data[i * cols + j] * inv,
                };
                let (qi, qj) = (i - lt, j - lu);
                for &(a, b, dc) in &d_terms {
                    let slot = &mut rem.data[(qi + a) * cols + qj + b];
                    if dc.is_one() {
                        *slot -= &c;
                    } else {
                        *slot -= &(&c * dc);
                    }
                }
                debug_assert!(rem.data[i * cols + j].is_zero());
                quot.data[qi * qcols + qj] = c;
            }
        }
        Ok(quot)
    }

    /// Substitutes `t -> t w^rt`, `u -> u w^ru`.
    pub fn twist(&self, rt: i64, ru: i64) -> Self {
        let n = self.ctx.order() as i64;
        let (rt, ru) = (rt.rem_euclid(n), ru.rem_euclid(n));
        let cols = self.cols;
        BiPoly {
            ctx: Arc::clone(&self.ctx),
            rows: self.rows,
            cols,
            data: self
                .data
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    let (i, j) = ((k / cols) as i64, (k % cols) as i64);
                    c.mul_root_power((i * rt + j * ru) % n)
                })
                .collect(),
        }
    }

    /// Exact value at rational `(t0, u0)`.
    pub fn eval(&self, t0: &BigRational, u0: &BigRational) -> CycNum {
        let mut acc = CycNum::zero(&self.ctx);
        for i in (0..self.rows).rev() {
            let mut row = CycNum::zero(&self.ctx);
            for j in (0..self.cols).rev() {
                row = row.scale(u0);
                row += &self.data[i * self.cols + j];
            }
            acc = acc.scale(t0);
            acc += &row;
        }
        acc
    }

    /// Exact value at points of Q(w).
    pub fn eval_at(&self, t0: &CycNum, u0: &CycNum) -> CycNum {
        let mut acc = CycNum::zero(&self.ctx);
        for i in (0..self.rows).rev() {
            let mut row = CycNum::zero(&self.ctx);
            for j in (0..self.cols).rev() {
                row = &row * u0;
                row += &self.data[i * self.cols + j];
            }
            acc = &acc * t0;
            acc += &row;
        }
        acc
    }
}

/// Reduces an `i128` coefficient cell modulo the monic modulus in place,
/// reporting overflow as `None`.
fn reduce_i128(cell: &mut [i128], modulus: &[i128], phi: usize) -> Option<()> {
    for k in (phi..cell.len()).rev() {
        let c = cell[k];
        if c == 0 {
            continue;
        }
        cell[k] = 0;
        for (i, &m) in modulus[..phi].iter().enumerate() {
            if m != 0 {
                let slot = &mut cell[k - phi + i];
                *slot = slot.checked_sub(c.checked_mul(m)?)?;
            }
        }
    }
    Some(())
}

impl PartialEq for BiPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.ctx.order() != other.ctx.order() {
            return false;
        }
        let rows = self.rows.max(other.rows);
        let cols = self.cols.max(other.cols);
        (0..rows).all(|i| {
            (0..cols).all(|j| match (self.get(i, j), other.get(i, j)) {
                (Some(a), Some(b)) => a == b,
                (Some(a), None) | (None, Some(a)) => a.is_zero(),
                (None, None) => true,
            })
        })
    }
}

impl Eq for BiPoly {}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly[N={}](", self.ctx.order())?;
        let mut first = true;
        for (i, j, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})*t^{i}*u^{j}")?;
        }
        if first {
            f.write_str("0")?;
        }
        f.write_str(")")
    }
}

macro_rules! forward_binop {
    ($Trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $Trait<&'a BiPoly> for &'a BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: &'a BiPoly) -> BiPoly {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $Trait<BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: BiPoly) -> BiPoly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $Trait<&'a BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: &'a BiPoly) -> BiPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            ctx: Arc::clone(&self.ctx),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: usize) -> Arc<CycContext> {
        CycContext::new(n).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn int(c: &Arc<CycContext>, v: i64) -> CycNum {
        CycNum::from_int(c, v)
    }

    #[test]
    fn ring_examples() {
        let c = ctx(3);
        let p = BiPoly::one(&c) + BiPoly::t(&c);
        let q = BiPoly::one(&c) + BiPoly::u(&c);
        assert_eq!(&p * &q, BiPoly::from_int_grid(&c, &[&[1, 1], &[1, 1]]));
        assert!((&p * &BiPoly::zero(&c)).is_zero());

        // (1 - t)(1 + t + ... + t^(N-1)) = 1 - t^N
        for n in 2..=7 {
            let c = ctx(n);
            let geo = BiPoly::from_fn(&c, n, 1, |_, _| int(&c, 1));
            let prod = (BiPoly::one(&c) - BiPoly::t(&c)) * geo;
            let expect = BiPoly::one(&c) - BiPoly::monomial(n, 0, int(&c, 1));
            assert_eq!(prod, expect);
        }
    }

    #[test]
    fn general_and_integral_products_agree() {
        let c = ctx(5);
        let w = CycNum::root_power(&c, 1);
        let p = BiPoly::from_terms(&c, &[(0, 0, int(&c, 3)), (1, 2, w.clone()), (2, 1, int(&c, -7))]);
        let q = BiPoly::from_terms(&c, &[(0, 1, w.pow(3).unwrap()), (3, 0, int(&c, 2))]);
        assert_eq!(p.mul_general(&q), p.mul_integral(&q).unwrap());
        let half = p.scale_rational(&rat(1, 2));
        assert!(half.mul_integral(&q).is_none());
        assert_eq!(half.checked_mul(&q).unwrap(), (&p * &q).scale_rational(&rat(1, 2)));
    }

    #[test]
    fn integral_product_falls_back_on_huge_coefficients() {
        let c = ctx(3);
        let big = CycNum::from_bigint(&c, BigInt::from(1u64 << 62) * BigInt::from(1u64 << 62));
        let p = BiPoly::constant(big.clone());
        assert!(p.mul_integral(&p).is_none());
        assert_eq!((&p * &p).coeff(0, 0), &big * &big);
    }

    #[test]
    fn exact_div_examples() {
        let c = ctx(2);
        let one = BiPoly::one(&c);
        let t = BiPoly::t(&c);
        let u = BiPoly::u(&c);
        let q = (&one - &t.pow(2)).exact_div(&(&one - &t)).unwrap();
        assert_eq!(q, &one + &t);

        let w = (&one - &t.pow(2)) * (&one - &u.pow(2));
        let q = w.exact_div(&((&one - &t) * (&one - &u))).unwrap();
        assert_eq!(q, (&one + &t) * (&one + &u));

        // f0 f1 / W = 1 at N = 2
        let f0f1 = (&one + &t) * (&one + &u) * (&one - &t) * (&one - &u);
        assert_eq!(f0f1.exact_div(&w).unwrap(), one);
    }

    #[test]
    fn exact_div_detects_remainders() {
        let c = ctx(3);
        let one = BiPoly::one(&c);
        let t = BiPoly::t(&c);
        let u = BiPoly::u(&c);
        let err = (&one + &t).exact_div(&(&one - &t)).unwrap_err();
        assert!(matches!(err, BiPolyError::NotDivisible { .. }));
        let err = (&t + &u).exact_div(&t).unwrap_err();
        assert_eq!(err, BiPolyError::NotDivisible { t_exp: 0, u_exp: 1 });
        assert_eq!(one.exact_div(&BiPoly::zero(&c)).unwrap_err(), BiPolyError::DivisionByZero);
    }

    #[test]
    fn exact_div_with_nonunit_leading_coefficient() {
        let c = ctx(5);
        let w = CycNum::root_power(&c, 2);
        let a = BiPoly::from_terms(&c, &[(0, 0, int(&c, 1)), (1, 1, w.clone()), (0, 2, int(&c, 3))]);
        let b = BiPoly::from_terms(&c, &[(2, 0, int(&c, 2) + w), (0, 1, int(&c, -1))]);
        assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn twist_examples() {
        let c2 = ctx(2);
        let p = BiPoly::one(&c2) + BiPoly::t(&c2);
        assert_eq!(p.twist(1, 0), BiPoly::one(&c2) - BiPoly::t(&c2));

        let c3 = ctx(3);
        let p = BiPoly::one(&c3) + BiPoly::t(&c3) + BiPoly::u(&c3);
        let expect = BiPoly::from_terms(
            &c3,
            &[
                (0, 0, int(&c3, 1)),
                (1, 0, CycNum::root_power(&c3, 1)),
                (0, 1, CycNum::root_power(&c3, 2)),
            ],
        );
        assert_eq!(p.twist(1, 2), expect);
        let q = p.twist(2, 1);
        assert_eq!(q.twist(1, 2), p);
    }

    #[test]
    fn eval_examples() {
        let c = ctx(3);
        let p = BiPoly::one(&c) + BiPoly::t(&c) + BiPoly::u(&c);
        assert_eq!(p.eval(&rat(2, 1), &rat(3, 1)), int(&c, 6));
        let sq = (BiPoly::one(&c) + BiPoly::t(&c)).pow(2);
        assert_eq!(sq.eval(&rat(2, 1), &rat(0, 1)), int(&c, 9));

        let c2 = ctx(2);
        let f1 = (BiPoly::one(&c2) - BiPoly::t(&c2)) * (BiPoly::one(&c2) - BiPoly::u(&c2));
        assert_eq!(
            f1.eval(&rat(1, 2), &rat(1, 3)),
            CycNum::from_rational(&c2, &rat(1, 3))
        );
        let at = f1.eval_at(
            &CycNum::from_rational(&c2, &rat(1, 2)),
            &CycNum::from_rational(&c2, &rat(1, 3)),
        );
        assert_eq!(at, CycNum::from_rational(&c2, &rat(1, 3)));
    }

    #[test]
    fn coeff_examples() {
        let c = ctx(4);
        let p = BiPoly::from_int_grid(&c, &[&[1], &[2], &[1]]);
        assert_eq!(p.coeff(1, 0), int(&c, 2));
        assert!(p.coeff(7, 0).is_zero());
        let tu = BiPoly::t(&c) * BiPoly::u(&c);
        assert_eq!(tu.coeff(1, 1), int(&c, 1));
    }

    #[test]
    fn degrees_and_padding() {
        let c = ctx(3);
        let p = BiPoly::from_int_grid(&c, &[&[1, 0, 0], &[0, 2, 0], &[0, 0, 0]]);
        assert_eq!(p.deg_t(), Some(1));
        assert_eq!(p.deg_u(), Some(1));
        assert_eq!(p.trimmed().shape(), (2, 2));
        assert_eq!(p, p.trimmed());
        assert_eq!(BiPoly::zero(&c).deg_t(), None);
        assert_eq!(BiPoly::zero(&c), BiPoly::with_shape(&c, 3, 2));
    }
}
