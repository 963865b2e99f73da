use chiralgen::cyclo::{CycContext, CycNum};
use chiralgen::BiPoly;
use num_rational::BigRational;
use proptest::prelude::*;

fn grid(ctx: &std::sync::Arc<CycContext>, v: &[Vec<i64>]) -> BiPoly {
    let cols = v[0].len();
    BiPoly::from_fn(ctx, v.len(), cols, |i, j| CycNum::from_int(ctx, v[i][j]))
}

fn small_grid() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..4, 1usize..4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

fn nonzero_grid() -> impl Strategy<Value = Vec<Vec<i64>>> {
    small_grid().prop_filter("nonzero", |g| g.iter().flatten().any(|&x| x != 0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn exact_division_undoes_multiplication(n in 2usize..7, a in small_grid(), b in nonzero_grid()) {
        let ctx = CycContext::new(n).unwrap();
        let (a, b) = (grid(&ctx, &a), grid(&ctx, &b));
        let prod = &a * &b;
        prop_assert_eq!(prod.exact_div(&b).unwrap(), a);
    }

    #[test]
    fn evaluation_is_a_ring_map(
        n in 2usize..7,
        a in small_grid(),
        b in small_grid(),
        tn in -20i64..20, td in 1i64..20, un in -20i64..20, ud in 1i64..20,
    ) {
        let ctx = CycContext::new(n).unwrap();
        let (a, b) = (grid(&ctx, &a), grid(&ctx, &b));
        let t0 = BigRational::new(tn.into(), td.into());
        let u0 = BigRational::new(un.into(), ud.into());
        prop_assert_eq!((&a * &b).eval(&t0, &u0), &a.eval(&t0, &u0) * &b.eval(&t0, &u0));
        prop_assert_eq!((&a + &b).eval(&t0, &u0), &a.eval(&t0, &u0) + &b.eval(&t0, &u0));
    }

    #[test]
    fn twists_compose(n in 2usize..9, a in small_grid(), r1 in -10i64..10, s1 in -10i64..10, r2 in -10i64..10, s2 in -10i64..10) {
        let ctx = CycContext::new(n).unwrap();
        let a = grid(&ctx, &a);
        prop_assert_eq!(a.twist(r1, s1).twist(r2, s2), a.twist(r1 + r2, s1 + s2));
        prop_assert_eq!(a.twist(n as i64, -(n as i64)), a);
    }
}

#[test]
fn division_with_remainder_is_rejected() {
    let ctx = CycContext::new(3).unwrap();
    let t = BiPoly::t(&ctx);
    let one = BiPoly::one(&ctx);
    let num = &t + &one;
    assert!(num.exact_div(&t).is_err());
}

#[test]
fn twisted_products_of_linear_factors() {
    // prod_r (1 - t w^r) = 1 - t^N
    for n in 2..=8 {
        let ctx = CycContext::new(n).unwrap();
        let one = BiPoly::one(&ctx);
        let base = &one - &BiPoly::t(&ctx);
        let prod = (0..n as i64).fold(one.clone(), |acc, r| &acc * &base.twist(r, 0));
        let expected = &one - &BiPoly::t(&ctx).pow(n as u32);
        assert_eq!(prod, expected);
    }
}
