//! Exact arithmetic in the cyclotomic field Q(w), w = exp(2 pi i / N).
//!
//! Elements are stored reduced modulo the N-th cyclotomic polynomial, so
//! every value has exactly one representation: `phi(N)` integer numerators
//! over a single positive common denominator. Zero tests, equality and
//! rational-value detection are therefore plain comparisons.

mod upoly;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::scalar::Scalar;
use upoly::RatPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("cyclotomic order must be at least 2, got {0}")]
    InvalidOrder(usize),
    #[error("elements live in different fields (N = {left} vs N = {right})")]
    ContextMismatch { left: usize, right: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("x^{n} - 1 is not divisible by Phi_{divisor}")]
    InexactCyclotomicDivision { n: usize, divisor: usize },
}

/// Divisors of `n` in ascending order.
pub fn divisors(n: usize) -> Vec<usize> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn int_poly_to_rat(p: &[BigInt]) -> RatPoly {
    p.iter().cloned().map(BigRational::from_integer).collect()
}

/// The n-th cyclotomic polynomial, lowest degree first.
///
/// Built from `x^n - 1` by exact division by `Phi_d` for every proper divisor
/// `d`; a nonzero remainder at any step is reported as an error.
pub fn cyclotomic_poly(n: usize) -> Result<Vec<BigInt>, CycloError> {
    if n == 0 {
        return Err(CycloError::InvalidOrder(0));
    }
    let divs = divisors(n);
    let mut table: Vec<(usize, Vec<BigInt>)> = Vec::with_capacity(divs.len());
    for &m in &divs {
        let mut cur = vec![BigRational::zero(); m + 1];
        cur[0] = -BigRational::one();
        cur[m] = BigRational::one();
        for (d, phi_d) in &table {
            if m % d != 0 {
                continue;
            }
            let (q, r) = upoly::divrem(&cur, &int_poly_to_rat(phi_d));
            if upoly::degree(&r).is_some() {
                return Err(CycloError::InexactCyclotomicDivision { n: m, divisor: *d });
            }
            cur = q;
        }
        let ints = cur
            .iter()
            .map(|c| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(CycloError::InexactCyclotomicDivision { n: m, divisor: 1 })
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        table.push((m, ints));
    }
    Ok(table.pop().map(|(_, p)| p).unwrap_or_default())
}

/// Euler's totient.
pub fn totient(n: usize) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

/// The field Q(w) for one fixed order N.
#[derive(Debug)]
pub struct CycContext {
    order: usize,
    phi: usize,
    modulus: Vec<BigInt>,
    root_powers: Vec<Vec<BigInt>>,
}

impl CycContext {
    pub fn new(order: usize) -> Result<Arc<Self>, CycloError> {
        if order < 2 {
            return Err(CycloError::InvalidOrder(order));
        }
        let modulus = cyclotomic_poly(order)?;
        let phi = modulus.len() - 1;
        debug_assert_eq!(phi, totient(order));

        let mut root_powers = Vec::with_capacity(order);
        let mut cur = vec![BigInt::zero(); phi];
        cur[0] = BigInt::one();
        for _ in 0..order {
            root_powers.push(cur.clone());
            shift_reduce(&mut cur, &modulus);
        }
        Ok(Arc::new(CycContext {
            order,
            phi,
            modulus,
            root_powers,
        }))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn phi(&self) -> usize {
        self.phi
    }

    /// Coefficients of Phi_N, lowest degree first; monic of degree `phi`.
    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    /// Canonical integer coefficients of w^k.
    pub(crate) fn root_power_coeffs(&self, k: i64) -> &[BigInt] {
        &self.root_powers[k.rem_euclid(self.order as i64) as usize]
    }

    /// Reduces a coefficient vector of any length modulo Phi_N in place and
    /// truncates it to length `phi`.
    pub(crate) fn reduce_in_place(&self, raw: &mut Vec<BigInt>) {
        let phi = self.phi;
        if raw.len() > phi {
            for k in (phi..raw.len()).rev() {
                if raw[k].is_zero() {
                    continue;
                }
                let c = std::mem::take(&mut raw[k]);
                for (i, m) in self.modulus[..phi].iter().enumerate() {
                    if !m.is_zero() {
                        raw[k - phi + i] -= &c * m;
                    }
                }
            }
        }
        raw.resize(phi, BigInt::zero());
    }
}

/// Multiplies by x and reduces modulo the monic `modulus`.
fn shift_reduce(v: &mut [BigInt], modulus: &[BigInt]) {
    let phi = v.len();
    let top = std::mem::take(&mut v[phi - 1]);
    for i in (1..phi).rev() {
        v[i] = std::mem::take(&mut v[i - 1]);
    }
    if !top.is_zero() {
        for (i, m) in modulus[..phi].iter().enumerate() {
            if !m.is_zero() {
                v[i] -= &top * m;
            }
        }
    }
}

pub fn make_context(order: usize) -> Result<Arc<CycContext>, CycloError> {
    CycContext::new(order)
}

/// An element of Q(w) in canonical reduced form.
#[derive(Clone)]
pub struct CycNum {
    ctx: Arc<CycContext>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNum {
    pub fn zero(ctx: &Arc<CycContext>) -> Self {
        CycNum {
            ctx: Arc::clone(ctx),
            num: vec![BigInt::zero(); ctx.phi],
            den: BigInt::one(),
        }
    }

    pub fn one(ctx: &Arc<CycContext>) -> Self {
        Self::from_int(ctx, 1)
    }

    pub fn from_int(ctx: &Arc<CycContext>, v: i64) -> Self {
        Self::from_bigint(ctx, BigInt::from(v))
    }

    pub fn from_bigint(ctx: &Arc<CycContext>, v: BigInt) -> Self {
        let mut out = Self::zero(ctx);
        out.num[0] = v;
        out
    }

    pub fn from_rational(ctx: &Arc<CycContext>, v: &BigRational) -> Self {
        let mut out = Self::zero(ctx);
        out.num[0] = v.numer().clone();
        out.den = v.denom().clone();
        out.normalize();
        out
    }

    /// Builds `sum coeffs[i] w^i` for a coefficient list of any length.
    pub fn from_rational_coeffs(ctx: &Arc<CycContext>, coeffs: &[BigRational]) -> Self {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut raw: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        ctx.reduce_in_place(&mut raw);
        let mut out = CycNum {
            ctx: Arc::clone(ctx),
            num: raw,
            den,
        };
        out.normalize();
        out
    }

    /// Builds an element with integer coefficients `sum coeffs[i] w^i`.
    pub fn from_int_coeffs(ctx: &Arc<CycContext>, coeffs: &[BigInt]) -> Self {
        let mut raw = coeffs.to_vec();
        ctx.reduce_in_place(&mut raw);
        CycNum {
            ctx: Arc::clone(ctx),
            num: raw,
            den: BigInt::one(),
        }
    }

    /// w^k for any integer k.
    pub fn root_power(ctx: &Arc<CycContext>, k: i64) -> Self {
        CycNum {
            ctx: Arc::clone(ctx),
            num: ctx.root_power_coeffs(k).to_vec(),
            den: BigInt::one(),
        }
    }

    pub(crate) fn from_parts(ctx: &Arc<CycContext>, num: Vec<BigInt>, den: BigInt) -> Self {
        debug_assert_eq!(num.len(), ctx.phi);
        let mut out = CycNum {
            ctx: Arc::clone(ctx),
            num,
            den,
        };
        out.normalize();
        out
    }

    pub fn context(&self) -> &Arc<CycContext> {
        &self.ctx
    }

    pub fn order(&self) -> usize {
        self.ctx.order
    }

    /// Rational coefficients with respect to the basis 1, w, ..., w^(phi-1).
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|n| BigRational::new(n.clone(), self.den.clone()))
            .collect()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// True when every coefficient is an integer (the element lies in Z[w]).
    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// The rational value, or `None` when the element is not in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// The integer value, or `None` when the element is not in Z.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.den.is_one() && self.num[1..].iter().all(Zero::is_zero) {
            Some(self.num[0].clone())
        } else {
            None
        }
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        if self.den.is_one() {
            return;
        }
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                return;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    fn check_ctx(&self, other: &Self) -> Result<(), CycloError> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx.order == other.ctx.order {
            Ok(())
        } else {
            Err(CycloError::ContextMismatch {
                left: self.ctx.order,
                right: other.ctx.order,
            })
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, CycloError> {
        self.check_ctx(rhs)?;
        Ok(self.add_unchecked(rhs, false))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, CycloError> {
        self.check_ctx(rhs)?;
        Ok(self.add_unchecked(rhs, true))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, CycloError> {
        self.check_ctx(rhs)?;
        Ok(self.mul_unchecked(rhs))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, CycloError> {
        self.check_ctx(rhs)?;
        Ok(self.mul_unchecked(&rhs.inv()?))
    }

    fn add_unchecked(&self, rhs: &Self, negate: bool) -> Self {
        let combine = |a: &BigInt, b: &BigInt| if negate { a - b } else { a + b };
        if self.den == rhs.den {
            let num = self.num.iter().zip(&rhs.num).map(|(a, b)| combine(a, b)).collect();
            return CycNum::from_parts(&self.ctx, num, self.den.clone());
        }
        let num = self
            .num
            .iter()
            .zip(&rhs.num)
            .map(|(a, b)| combine(&(a * &rhs.den), &(b * &self.den)))
            .collect();
        CycNum::from_parts(&self.ctx, num, &self.den * &rhs.den)
    }

    fn mul_unchecked(&self, rhs: &Self) -> Self {
        let phi = self.ctx.phi;
        let mut raw = vec![BigInt::zero(); 2 * phi - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        self.ctx.reduce_in_place(&mut raw);
        CycNum::from_parts(&self.ctx, raw, &self.den * &rhs.den)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Phi_N.
    pub fn inv(&self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(CycNum::from_rational(&self.ctx, &r.recip()));
        }
        let a = self.coeffs();
        let m = int_poly_to_rat(&self.ctx.modulus);
        // Phi_N is irreducible, so every nonzero element is invertible.
        let s = upoly::inverse_mod(&a, &m).ok_or(CycloError::DivisionByZero)?;
        Ok(CycNum::from_rational_coeffs(&self.ctx, &s))
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self, CycloError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = CycNum::one(&self.ctx);
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_unchecked(&sq);
            }
            exp >>= 1;
            if exp > 0 {
                sq = sq.mul_unchecked(&sq);
            }
        }
        Ok(acc)
    }

    /// Multiplies by w^k; cheaper than a general product.
    pub fn mul_root_power(&self, k: i64) -> Self {
        let shifts = k.rem_euclid(self.ctx.order as i64) as usize;
        let mut num = self.num.clone();
        for _ in 0..shifts {
            shift_reduce(&mut num, &self.ctx.modulus);
        }
        CycNum {
            ctx: Arc::clone(&self.ctx),
            num,
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let num = self.num.iter().map(|x| x * c.numer()).collect();
        CycNum::from_parts(&self.ctx, num, &self.den * c.denom())
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        let num = self.num.iter().map(|x| x * c).collect();
        CycNum::from_parts(&self.ctx, num, self.den.clone())
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.order == other.ctx.order && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycNum {}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum[N={}]({})", self.ctx.order, self)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if wrote {
                f.write_str(if neg { " - " } else { " + " })?;
            } else if neg {
                f.write_str("-")?;
            }
            let mag = BigRational::new(c.abs(), self.den.clone());
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        f.write_str("w")?;
                    } else {
                        write!(f, "w^{i}")?;
                    }
                }
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn expect_same(a: &CycNum, b: &CycNum) {
    if let Err(e) = a.check_ctx(b) {
        panic!("{e}");
    }
}

macro_rules! forward_binop {
    ($Trait:ident, $method:ident, $body:expr) => {
        impl<'a> $Trait<&'a CycNum> for &'a CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &'a CycNum) -> CycNum {
                expect_same(self, rhs);
                $body(self, rhs)
            }
        }
        impl $Trait<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $Trait<&'a CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &'a CycNum) -> CycNum {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &CycNum, b: &CycNum| a.add_unchecked(b, false));
forward_binop!(Sub, sub, |a: &CycNum, b: &CycNum| a.add_unchecked(b, true));
forward_binop!(Mul, mul, |a: &CycNum, b: &CycNum| a.mul_unchecked(b));

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        expect_same(self, rhs);
        if self.den.is_one() && rhs.den.is_one() {
            for (a, b) in self.num.iter_mut().zip(&rhs.num) {
                *a += b;
            }
        } else {
            *self = self.add_unchecked(rhs, false);
        }
    }
}

impl SubAssign<&CycNum> for CycNum {
    fn sub_assign(&mut self, rhs: &CycNum) {
        expect_same(self, rhs);
        if self.den.is_one() && rhs.den.is_one() {
            for (a, b) in self.num.iter_mut().zip(&rhs.num) {
                *a -= b;
            }
        } else {
            *self = self.add_unchecked(rhs, true);
        }
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            ctx: Arc::clone(&self.ctx),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl Scalar for CycNum {
    fn zero_like(&self) -> Self {
        CycNum::zero(&self.ctx)
    }
    fn one_like(&self) -> Self {
        CycNum::one(&self.ctx)
    }
    fn from_int_like(&self, v: i64) -> Self {
        CycNum::from_int(&self.ctx, v)
    }
    fn is_zero(&self) -> bool {
        CycNum::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn try_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn ctx(n: usize) -> Arc<CycContext> {
        CycContext::new(n).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rejects_small_orders() {
        assert_eq!(CycContext::new(1).unwrap_err(), CycloError::InvalidOrder(1));
        assert_eq!(CycContext::new(0).unwrap_err(), CycloError::InvalidOrder(0));
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(ctx(2).modulus(), ints(&[1, 1]).as_slice());
        assert_eq!(ctx(3).modulus(), ints(&[1, 1, 1]).as_slice());
        assert_eq!(ctx(4).modulus(), ints(&[1, 0, 1]).as_slice());
        assert_eq!(ctx(6).modulus(), ints(&[1, -1, 1]).as_slice());
        assert_eq!(ctx(12).modulus(), ints(&[1, 0, -1, 0, 1]).as_slice());
        assert_eq!(cyclotomic_poly(1).unwrap(), ints(&[-1, 1]));
    }

    #[test]
    fn phi_6_by_independent_division() {
        // (x^6 - 1) / ((x - 1)(x + 1)(x^2 + x + 1)) computed here by hand-rolled long division.
        let denom = upoly::mul(
            &upoly::mul(&int_poly_to_rat(&ints(&[-1, 1])), &int_poly_to_rat(&ints(&[1, 1]))),
            &int_poly_to_rat(&ints(&[1, 1, 1])),
        );
        let (q, r) = upoly::divrem(&int_poly_to_rat(&ints(&[-1, 0, 0, 0, 0, 0, 1])), &denom);
        assert!(r.is_empty());
        assert_eq!(q, int_poly_to_rat(&ints(&[1, -1, 1])));
    }

    #[test]
    fn degree_is_totient_and_monic() {
        for n in 2..=30 {
            let c = ctx(n);
            assert_eq!(c.phi(), totient(n), "N={n}");
            assert_eq!(c.modulus().len(), c.phi() + 1);
            assert!(c.modulus().last().unwrap().is_one());
        }
    }

    #[test]
    fn product_of_cyclotomics_is_x_n_minus_one() {
        for n in 1..=24 {
            let mut prod = vec![BigRational::one()];
            for d in divisors(n) {
                prod = upoly::mul(&prod, &int_poly_to_rat(&cyclotomic_poly(d).unwrap()));
            }
            let mut expect = vec![BigRational::zero(); n + 1];
            expect[0] = -BigRational::one();
            expect[n] = BigRational::one();
            assert_eq!(prod, expect, "N={n}");
        }
    }

    #[test]
    fn root_power_examples() {
        let c4 = ctx(4);
        let w = CycNum::root_power(&c4, 1);
        assert_eq!(w.numerators(), ints(&[0, 1]).as_slice());
        assert_eq!(&w * &w, CycNum::from_int(&c4, -1));

        let c3 = ctx(3);
        assert_eq!(CycNum::root_power(&c3, 2).numerators(), ints(&[-1, -1]).as_slice());

        let c2 = ctx(2);
        assert_eq!(CycNum::root_power(&c2, 5), CycNum::from_int(&c2, -1));
        assert_eq!(CycNum::root_power(&c2, -3), CycNum::from_int(&c2, -1));
        assert!(CycNum::root_power(&c3, 0).is_one());
    }

    #[test]
    fn field_operation_examples() {
        let c3 = ctx(3);
        let s = CycNum::one(&c3) + CycNum::root_power(&c3, 1) + CycNum::root_power(&c3, 2);
        assert!(s.is_zero());

        let c5 = ctx(5);
        let p = CycNum::root_power(&c5, 2) * CycNum::root_power(&c5, 4);
        assert_eq!(p, CycNum::root_power(&c5, 1));
    }

    #[test]
    fn inverse_examples() {
        let c4 = ctx(4);
        let w = CycNum::root_power(&c4, 1);
        assert_eq!(w.inv().unwrap(), -&w);
        assert_eq!(w.inv().unwrap(), CycNum::root_power(&c4, 3));

        let c3 = ctx(3);
        let a = CycNum::one(&c3) + CycNum::root_power(&c3, 1);
        let inv = a.inv().unwrap();
        assert!((&a * &inv).is_one());
        // 1 + w = -w^2, so the inverse is -w = -w^{-2}
        assert_eq!(inv, -CycNum::root_power(&c3, 1));

        for n in 2..=12 {
            let c = ctx(n);
            assert!(CycNum::one(&c).inv().unwrap().is_one());
            assert_eq!(CycNum::zero(&c).inv().unwrap_err(), CycloError::DivisionByZero);
        }
    }

    #[test]
    fn rational_detection() {
        let c3 = ctx(3);
        assert_eq!(CycNum::from_int(&c3, 7).as_rational(), Some(rat(7, 1)));
        assert_eq!(CycNum::root_power(&c3, 1).as_rational(), None);
        let c2 = ctx(2);
        let v = CycNum::from_int(&c2, 3) + CycNum::root_power(&c2, 1) + CycNum::root_power(&c2, 3);
        assert_eq!(v.as_integer(), Some(BigInt::from(1)));
        let half = CycNum::from_rational(&c3, &rat(-3, 6));
        assert_eq!(half.as_rational(), Some(rat(-1, 2)));
        assert_eq!(half.as_integer(), None);
    }

    #[test]
    fn context_mismatch_is_reported() {
        let a = CycNum::one(&ctx(3));
        let b = CycNum::one(&ctx(4));
        assert_eq!(
            a.checked_add(&b).unwrap_err(),
            CycloError::ContextMismatch { left: 3, right: 4 }
        );
        assert!(a.checked_mul(&b).is_err());
        // Separately constructed contexts of the same order are compatible.
        assert!(a.checked_mul(&CycNum::one(&ctx(3))).is_ok());
    }

    #[test]
    fn roots_sum_to_zero_and_pair_to_one() {
        for n in 2..=24 {
            let c = ctx(n);
            let mut s = CycNum::zero(&c);
            for k in 0..n as i64 {
                s += &CycNum::root_power(&c, k);
                let prod = CycNum::root_power(&c, k) * CycNum::root_power(&c, n as i64 - k);
                assert!(prod.is_one(), "N={n} k={k}");
            }
            assert!(s.is_zero(), "N={n}");
        }
    }

    #[test]
    fn mul_root_power_matches_general_product() {
        let c = ctx(12);
        let a = CycNum::from_rational_coeffs(&c, &[rat(1, 2), rat(-3, 1), rat(0, 1), rat(5, 7)]);
        for k in -13..13 {
            assert_eq!(a.mul_root_power(k), &a * &CycNum::root_power(&c, k));
        }
    }

    #[test]
    fn pow_with_negative_exponent() {
        let c = ctx(5);
        let a = CycNum::from_int(&c, 2) + CycNum::root_power(&c, 1);
        let p = a.pow(3).unwrap();
        assert_eq!(p, &(&a * &a) * &a);
        assert!((a.pow(-3).unwrap() * p).is_one());
    }

    #[test]
    fn display_is_readable() {
        let c = ctx(5);
        let a = CycNum::from_rational_coeffs(&c, &[rat(1, 2), rat(-1, 1), rat(0, 1), rat(3, 1)]);
        assert_eq!(a.to_string(), "1/2 - w + 3*w^3");
        assert_eq!(CycNum::zero(&c).to_string(), "0");
    }
}
