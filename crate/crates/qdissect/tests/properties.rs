//! Randomized and parameterized law checks for the series algebra, the
//! generators, and the evaluator.

use proptest::prelude::*;

use qdissect::eval::eval_expr;
use qdissect::expr::Expr;
use qdissect::parser::parse_expr;
use qdissect::registry::registry;
use qdissect::ring::{Exact, Mod};
use qdissect::series::Series;
use qdissect::{eta, oracle, theta};

fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (-9i64..=9).prop_map(Expr::Int),
        Just(Expr::Q),
        (1usize..=36).prop_map(Expr::Eta),
        (1usize..=12).prop_map(Expr::Alpha),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a - b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a / b),
            (inner.clone(), -6i64..=6).prop_map(|(a, e)| a.pow(e)),
            (inner, 1usize..=5, 0usize..=4).prop_map(|(a, m, r)| a.dissect(m, r % m)),
        ]
    })
}

fn exact_series(coeffs: Vec<i64>) -> Series<Exact> {
    let coeffs = coeffs.into_iter().map(Into::into).collect();
    Series::from_coeffs(Exact, coeffs)
}

fn any_series() -> impl Strategy<Value = Series<Exact>> {
    prop::collection::vec(-50i64..=50, 1..=60).prop_map(exact_series)
}

fn unit_series() -> impl Strategy<Value = Series<Exact>> {
    (any_series(), prop::bool::ANY).prop_map(|(mut s, negative)| {
        let unit = if negative { -1i64 } else { 1 };
        let mut coeffs: Vec<num_bigint::BigInt> = s.coeffs().to_vec();
        coeffs[0] = unit.into();
        s = Series::from_coeffs(Exact, coeffs);
        s
    })
}

proptest! {
    #[test]
    fn printer_is_a_section_of_the_parser(e in arb_expr()) {
        let text = e.to_string();
        let reparsed = parse_expr(&text).unwrap();
        prop_assert_eq!(reparsed, e, "printed as `{}`", text);
    }

    #[test]
    fn inverse_contract(s in unit_series()) {
        let inv = s.inverse().unwrap();
        let product = s.mul(&inv).unwrap();
        let one = Series::one(Exact, s.order());
        prop_assert!(product.equal_upto(&one, s.order()).unwrap().is_equal());
    }

    #[test]
    fn dissection_round_trip(s in any_series(), m in 1usize..=6) {
        // sum_r q^r * dissect(s, m, r)(q^m) recovers s up to order - (m-1)
        prop_assume!(s.order() + 1 >= m); // every residue class must exist
        let mut total = Series::zero(Exact, s.order() + m);
        for r in 0..m {
            let part = s.dissect(m, r).unwrap().substitute(m).unwrap().shift(r);
            total = total.add(&part).unwrap();
        }
        let upto = s.order() - (m - 1);
        prop_assert!(total.equal_upto(&s, upto).unwrap().is_equal());
    }

    #[test]
    fn substitution_dissection_adjunction(s in any_series(), k in 1usize..=5) {
        let back = s.substitute(k).unwrap().dissect(k, 0).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn mul_commutes(a in any_series(), b in any_series()) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }

    #[test]
    fn mul_associates(a in any_series(), b in any_series(), c in any_series()) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn reduction_is_a_ring_homomorphism(
        a in any_series(),
        b in any_series(),
        m in prop::sample::select(vec![2u64, 3, 5, 6]),
        shift in 0usize..5,
        scale in 1usize..4,
    ) {
        let ra = a.reduce_mod(m).unwrap();
        let rb = b.reduce_mod(m).unwrap();

        let added = a.add(&b).unwrap().reduce_mod(m).unwrap();
        prop_assert_eq!(added, ra.add(&rb).unwrap());

        let multiplied = a.mul(&b).unwrap().reduce_mod(m).unwrap();
        prop_assert_eq!(multiplied, ra.mul(&rb).unwrap());

        let shifted = a.shift(shift).reduce_mod(m).unwrap();
        prop_assert_eq!(shifted, ra.shift(shift));

        let substituted = a.substitute(scale).unwrap().reduce_mod(m).unwrap();
        prop_assert_eq!(substituted, ra.substitute(scale).unwrap());

        let dissected = a.dissect(scale, scale - 1);
        if let Ok(d) = dissected {
            prop_assert_eq!(d.reduce_mod(m).unwrap(), ra.dissect(scale, scale - 1).unwrap());
        }
    }

    #[test]
    fn divide_undoes_mul(a in any_series(), d in unit_series()) {
        let product = a.mul(&d).unwrap();
        let back = product.divide(&d).unwrap();
        let upto = a.order().min(d.order());
        prop_assert!(back.equal_upto(&a.truncate(upto).unwrap(), upto).unwrap().is_equal());
    }
}

#[test]
fn frobenius_cubes_mod_three() {
    // f_k^3 == f_{3k} (mod 3) for k <= 12 at order 300
    let order = 300;
    for k in 1..=12 {
        let cube = eta::eta(&Exact, k, order).pow(3).unwrap();
        let target = eta::eta(&Exact, 3 * k, order);
        let difference = cube.sub(&target).unwrap().reduce_mod(3).unwrap();
        assert!(difference.is_zero(), "f_{k}^3 - f_{} != 0 mod 3", 3 * k);
    }
}

#[test]
fn frobenius_fifth_powers_mod_five() {
    let order = 300;
    for k in 1..=12 {
        let fifth = eta::eta(&Exact, k, order).pow(5).unwrap();
        let target = eta::eta(&Exact, 5 * k, order);
        let difference = fifth.sub(&target).unwrap().reduce_mod(5).unwrap();
        assert!(difference.is_zero(), "f_{k}^5 - f_{} != 0 mod 5", 5 * k);
    }
}

#[test]
fn eta_matches_finite_product_to_order_300() {
    // independent oracle: multiply out (1 - q^{mn}) term by term
    let order = 300;
    for scale in 1..=12usize {
        let mut coeffs = vec![0i64; order + 1];
        coeffs[0] = 1;
        let mut n = 1;
        while scale * n <= order {
            for i in (scale * n..=order).rev() {
                coeffs[i] -= coeffs[i - scale * n];
            }
            n += 1;
        }
        let series = eta::eta(&Exact, scale, order);
        let direct: Vec<i64> = series
            .coeffs()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect();
        assert_eq!(direct, coeffs, "f_{scale}");
    }
}

#[test]
fn evaluator_is_ring_natural_on_the_registry() {
    // reduce_mod(eval(e, Exact)) == eval(e, Mod 3) for every registry side
    let order = 60;
    let m3 = Mod::new(3).unwrap();
    for entry in registry() {
        for (side, expr) in [("lhs", &entry.lhs), ("rhs", &entry.rhs)] {
            let exact = eval_expr(expr, &Exact, order).unwrap();
            let modular = eval_expr(expr, &m3, order).unwrap();
            assert_eq!(
                exact.reduce_mod(3).unwrap(),
                modular,
                "{} {side} is not ring-natural",
                entry.id
            );
        }
    }
}

#[test]
fn alpha_cross_checks_against_eta_forms() {
    // alpha is generated by lattice enumeration; these identities connect
    // it to the eta engine, so they are genuine cross-checks.
    let order = 200;
    let alpha1 = theta::alpha(&Exact, 1, order);
    let rhs = eval_expr(
        &parse_expr("f2^6*f3/(f1^3*f6^2) + 3*q*f6^6*f1/(f3^3*f2^2)").unwrap(),
        &Exact,
        order,
    )
    .unwrap();
    assert!(alpha1.equal_upto(&rhs, order).unwrap().is_equal());

    let alpha4 = theta::alpha(&Exact, 4, order);
    let rhs = eval_expr(
        &parse_expr("alpha(q) - 6*q*f4^2*f12^2/(f2*f6)").unwrap(),
        &Exact,
        order,
    )
    .unwrap();
    assert!(alpha4.equal_upto(&rhs, order).unwrap().is_equal());
}

#[test]
fn family_k1_composes_from_the_registry_chain() {
    // eq3.7/3.8 gives the b(9n+6) series the closed form
    // X = (f1/f4)*(f3^2*f12^2/f6^2) mod 3 (its RHS is X with the exact
    // dissections eq3.1/eq3.2 substituted), and eq3.10 gives the b(81n+51)
    // series -X. Composing the two entries therefore yields
    // b(81n+51) == -b(9n+6) (mod 3), exactly the k = 1 internal family.
    let order = 80;
    let m3 = Mod::new(3).unwrap();
    let find = |id: &str| registry().iter().find(|e| e.id == id).unwrap();

    let closed = eval_expr(
        &parse_expr("f1/f4*(f3^2*f12^2/f6^2)").unwrap(),
        &m3,
        order,
    )
    .unwrap();
    let rhs_78 = eval_expr(&find("eq3.7/3.8").rhs, &m3, order).unwrap();
    assert_eq!(closed, rhs_78, "closed form vs dissected form of eq3.7/3.8");

    let rhs_310 = eval_expr(&find("eq3.10").rhs, &m3, order).unwrap();
    assert_eq!(rhs_310, closed.negate(), "eq3.10 RHS is -X");

    // the dissected sides then compose to the family statement itself
    let lhs_78 = eval_expr(&find("eq3.7/3.8").lhs, &m3, order).unwrap();
    let lhs_310 = eval_expr(&find("eq3.10").lhs, &m3, order).unwrap();
    assert_eq!(lhs_310, lhs_78.negate(), "b(81n+51) == -b(9n+6) series");

    // which is what the family checker reports over the same range
    let report = qdissect::congruence::verify_family_19(
        1,
        order,
        qdissect::congruence::DEFAULT_ORDER_CAP,
    )
    .unwrap();
    assert!(report.passed());
}

#[test]
fn linb_convolution_factorization_to_200() {
    let max = 200;
    let b = oracle::counts(oracle::Family::LinB, max);
    let distinct_odd = oracle::counts(oracle::Family::DistinctOddOnly, max);
    let two_color = oracle::counts(oracle::Family::TwoColorMult4, max);
    for n in 0..=max {
        let mut convolution = num_bigint::BigUint::from(0u32);
        for s in 0..=n {
            convolution += &distinct_odd[s] * &two_color[n - s];
        }
        assert_eq!(b[n], convolution, "b({n})");
    }
}
