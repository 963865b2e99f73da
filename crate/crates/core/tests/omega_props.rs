use std::sync::Arc;

use chiralgen::cyclo::{CycContext, CycNum};
use chiralgen::identities::Sampler;
use chiralgen::omega::{self, LaurentSeries, MultiSeries, VarSet};
use num_rational::BigRational;
use num_traits::One;

#[test]
fn prop1_sweep() {
    for alpha in 1..=4 {
        for m in 1..=3 {
            omega::check_prop1(alpha, m, 8).unwrap();
        }
    }
}

#[test]
fn theorem1_sweep() {
    for j in 2..=4 {
        for n in 2..=3 {
            omega::check_theorem1(j, n, 6).unwrap();
        }
    }
}

/// Chain sum `sum_{0 <= a_1 <= ... <= a_k} x_1^a_1 ... x_k^a_k` truncated by
/// brute enumeration, compared with the operator applied to a product of
/// geometric series with one shift variable per inequality.
#[test]
fn chained_inequalities_match_enumeration() {
    let d = 6u32;
    let vars = VarSet::new(["x", "y", "z"], d).unwrap();
    // a <= b <= c with weights x^a y^b z^c: eliminate b - a >= 0, then c - b >= 0.
    let mut oracle = MultiSeries::zero(&vars);
    for a in 0..=d {
        for b in a..=d {
            for c in b..=d {
                if a + b + c <= d {
                    oracle = oracle.add(&MultiSeries::monomial(&vars, &[a, b, c], BigRational::one()));
                }
            }
        }
    }
    // sum over a, b >= 0 of x^a y^b lambda^{b - a}, then Omega
    let s = LaurentSeries::geom(&vars, &[1, 0, 0], -1)
        .unwrap()
        .mul(&LaurentSeries::geom(&vars, &[0, 1, 0], 1).unwrap());
    let ab = omega::omega_ge(&s);
    let abc = omega::omega_ge(
        &omega::substitute(&ab, 1, &[0, 1, 0], -1).mul(&LaurentSeries::geom(&vars, &[0, 0, 1], 1).unwrap()),
    );
    assert_eq!(ab.coeff(&[1, 1, 0]), BigRational::one());
    assert_eq!(ab.coeff(&[2, 1, 0]), BigRational::from_integer(0.into()));
    assert_eq!(abc, oracle);
}

fn exhaustive(n: usize, l: usize) {
    let ctx = CycContext::new(n).unwrap();
    let total = n.pow(2 * l as u32);
    for code in 0..total {
        let mut c = code;
        let mut digits = Vec::with_capacity(2 * l);
        for _ in 0..2 * l {
            digits.push(c % n);
            c /= n;
        }
        let (mu, nu) = digits.split_at(l);
        omega::check_v_reduction(&ctx, l, mu, nu).unwrap();
    }
}

#[test]
fn v_reduction_exhaustive_small() {
    exhaustive(2, 3);
    exhaustive(2, 4);
    exhaustive(3, 3);
}

#[test]
fn v_reduction_random() {
    for n in 3..=5 {
        let ctx: Arc<CycContext> = CycContext::new(n).unwrap();
        for l in 3..=7 {
            let mut s = Sampler::new(11, (n * 16 + l) as u64);
            for _ in 0..200 {
                let mu: Vec<usize> = (0..l).map(|_| s.int_in(0, n as i64 - 1) as usize).collect();
                let nu: Vec<usize> = (0..l).map(|_| s.int_in(0, n as i64 - 1) as usize).collect();
                omega::check_v_reduction(&ctx, l, &mu, &nu).unwrap();
            }
        }
    }
}

#[test]
fn v_direct_with_trivial_phases_counts_chains() {
    // all e_i = 1: the chain count is C(top + L - 1, L - 1)
    let ctx = CycContext::new(3).unwrap();
    let zeros = vec![0usize; 4];
    assert_eq!(omega::v_direct(&ctx, 3, &zeros, &zeros), CycNum::from_int(&ctx, 20));
}
