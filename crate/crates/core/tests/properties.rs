//! Cross-module invariants: classification against discriminant signs,
//! closed-form determinants against independent exact routes, forms against
//! the per-family coefficient formulas, and the enumeration engine against
//! the naive box oracle.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use wrlat::poly::{
    self, IntPolynomial, RootKind, classify, detect_symmetric_quartic,
    synthesize_symmetric_quartic,
};
use wrlat::svp::{self, CoordinateVector};
use wrlat::sweep::{SweepSpec, run_sweep};
use wrlat::{ConstructionFamily, ExactGram, criteria, gram_entries_for_family};

fn int(v: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Test-side determinant: fraction-free Bareiss elimination on the doubled
/// integer entries, in i128. Shares nothing with the library's LDL^T or
/// cofactor routes.
fn det_bareiss_twice(n: usize, entries: &[BigRational]) -> BigRational {
    let mut m: Vec<i128> = entries
        .iter()
        .map(|e| {
            let doubled = e * BigRational::from_integer(BigInt::from(2));
            assert!(doubled.is_integer());
            i128::try_from(doubled.to_integer()).expect("fits i128 at test scale")
        })
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k * n + k] == 0 {
            let Some(swap) = ((k + 1)..n).find(|&r| m[r * n + k] != 0) else {
                return int(0);
            };
            for c in 0..n {
                m.swap(k * n + c, swap * n + c);
            }
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                m[i * n + j] =
                    (m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j]) / prev;
            }
            m[i * n + k] = 0;
        }
        prev = m[k * n + k];
    }
    // det(2G) / 2^n
    BigRational::new(
        BigInt::from(sign * m[(n - 1) * n + (n - 1)]),
        BigInt::from(2i128.pow(n as u32)),
    )
}

/// The per-family quadratic-form formula straight from the coefficients,
/// evaluated in i128, independent of the Gram matrix.
fn family_form(family: ConstructionFamily, a: i64, b: i64, x: &[i64]) -> BigRational {
    let a = a as i128;
    let b = b as i128;
    let x: Vec<i128> = x.iter().map(|&v| v as i128).collect();
    match family {
        ConstructionFamily::F2R => {
            let d = x[0] - x[1];
            int(a * a * (x[0] * x[0] + x[1] * x[1]) - 2 * b * d * d)
        }
        ConstructionFamily::F2C => {
            let s = x[0] + x[1];
            let d = x[0] - x[1];
            BigRational::new(
                BigInt::from(a * a * s * s + (4 * b - a * a) * d * d),
                BigInt::from(4),
            )
        }
        ConstructionFamily::F3R => {
            let sq = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
            let cross = x[0] * x[1] + x[0] * x[2] + x[1] * x[2];
            int((a * a - 2 * b) * sq + 2 * b * cross)
        }
        ConstructionFamily::F4S => {
            let sq: i128 = x.iter().map(|v| v * v).sum();
            int((a * a - 2 * b) * sq + 4 * b * (x[0] * x[2] + x[1] * x[3]))
        }
    }
}

#[test]
fn det_closed_form_matches_bareiss_up_to_200() {
    for family in ConstructionFamily::ALL {
        let n = family.dimension();
        for a in -200i64..=200 {
            if a == 0 {
                continue;
            }
            for b in -200i64..=200 {
                let entries = gram_entries_for_family(family, a, b);
                assert_eq!(
                    wrlat::det_closed_form(family, a, b),
                    det_bareiss_twice(n, &entries),
                    "family {family} a={a} b={b}"
                );
            }
        }
    }
}

#[test]
fn form_value_matches_family_formula_in_the_small_box() {
    // identity in (a, b, x); no family validity required, but the Gram must be
    // positive definite for ExactGram to exist, so evaluate raw entries too
    for family in [ConstructionFamily::F2R, ConstructionFamily::F2C] {
        for a in [-8i64, -3, 1, 2, 7] {
            for b in -8i64..=8 {
                let entries = gram_entries_for_family(family, a, b);
                for x0 in -3i64..=3 {
                    for x1 in -3i64..=3 {
                        let expect = family_form(family, a, b, &[x0, x1]);
                        let via_entries = raw_form(&entries, 2, &[x0, x1]);
                        assert_eq!(via_entries, expect, "{family} a={a} b={b}");
                    }
                }
            }
        }
    }
    for a in [-5i64, 2, 6] {
        for b in -6i64..=6 {
            let entries = gram_entries_for_family(ConstructionFamily::F3R, a, b);
            for x0 in -3i64..=3 {
                for x1 in -3i64..=3 {
                    for x2 in -3i64..=3 {
                        let x = [x0, x1, x2];
                        assert_eq!(
                            raw_form(&entries, 3, &x),
                            family_form(ConstructionFamily::F3R, a, b, &x)
                        );
                    }
                }
            }
            let entries = gram_entries_for_family(ConstructionFamily::F4S, a, b);
            for x0 in -3i64..=3 {
                for x1 in -3i64..=3 {
                    for x2 in -3i64..=3 {
                        for x3 in -3i64..=3 {
                            let x = [x0, x1, x2, x3];
                            let expect = family_form(ConstructionFamily::F4S, a, b, &x);
                            assert!(expect.is_integer());
                            assert_eq!(raw_form(&entries, 4, &x), expect);
                        }
                    }
                }
            }
        }
    }
}

/// x^T M x from raw rational entries; independent of ExactGram's i128 path.
fn raw_form(entries: &[BigRational], n: usize, x: &[i64]) -> BigRational {
    let mut acc = BigRational::from_integer(BigInt::from(0));
    for i in 0..n {
        for j in 0..n {
            acc += &entries[i * n + j]
                * BigRational::from_integer(BigInt::from(x[i]))
                * BigRational::from_integer(BigInt::from(x[j]));
        }
    }
    acc
}

#[test]
fn f2c_form_values_are_integers_despite_half_integer_entries() {
    for a in [-7i64, -1, 3, 5] {
        for b in -7i64..=7 {
            for x0 in -3i64..=3 {
                for x1 in -3i64..=3 {
                    assert!(
                        family_form(ConstructionFamily::F2C, a, b, &[x0, x1]).is_integer()
                    );
                }
            }
        }
    }
}

#[test]
fn partitioned_sweep_equals_full_sweep() {
    let full = run_sweep(&SweepSpec::f3r((-4, 4), (-4, 4), (-3, 3))).unwrap();
    let left = run_sweep(&SweepSpec::f3r((-4, -1), (-4, 4), (-3, 3))).unwrap();
    let right = run_sweep(&SweepSpec::f3r((1, 4), (-4, 4), (-3, 3))).unwrap();
    let merged: Vec<_> = left.records.iter().chain(right.records.iter()).collect();
    assert_eq!(full.records.len(), merged.len());
    for (a, b) in full.records.iter().zip(merged) {
        assert_eq!(a, b);
    }
    assert_eq!(
        full.mismatches.len(),
        left.mismatches.len() + right.mismatches.len()
    );
}

// --- strategies for valid family instances -----------------------------------

fn f2r_poly() -> impl Strategy<Value = IntPolynomial> {
    ((-15i64..=15), (-15i64..=15))
        .prop_filter("a nonzero, two distinct real roots", |(a, b)| {
            *a != 0 && a * a - 4 * b > 0
        })
        .prop_map(|(a, b)| IntPolynomial::quadratic(a, b).unwrap())
}

fn f2c_poly() -> impl Strategy<Value = IntPolynomial> {
    ((-15i64..=15), (-15i64..=15))
        .prop_filter("a nonzero, complex pair", |(a, b)| {
            *a != 0 && a * a - 4 * b < 0
        })
        .prop_map(|(a, b)| IntPolynomial::quadratic(a, b).unwrap())
}

fn f3r_poly() -> impl Strategy<Value = IntPolynomial> {
    ((-12i64..=12), (-12i64..=12), (-8i64..=8))
        .prop_filter("a nonzero, three distinct real roots", |(a, b, c)| {
            *a != 0
                && poly::discriminant_cubic(&IntPolynomial::cubic(*a, *b, *c).unwrap())
                    .unwrap()
                    > 0
        })
        .prop_map(|(a, b, c)| IntPolynomial::cubic(a, b, c).unwrap())
}

fn f4s_poly() -> impl Strategy<Value = IntPolynomial> {
    ((-10i64..=10), (-6i64..=6), (1i64..=4))
        .prop_filter_map("valid symmetric quartic", |(a, p, g)| {
            synthesize_symmetric_quartic(a, p, g).ok()
        })
}

fn any_family_poly() -> impl Strategy<Value = IntPolynomial> {
    prop_oneof![f2r_poly(), f2c_poly(), f3r_poly(), f4s_poly()]
}

proptest! {
    #[test]
    fn quadratic_kind_tracks_discriminant(a in -100i64..=100, b in -100i64..=100) {
        let p = IntPolynomial::quadratic(a, b).unwrap();
        let disc = poly::discriminant_quadratic(&p).unwrap();
        let kind = classify(&p).kind;
        prop_assert_eq!(kind == RootKind::TwoDistinctReal, disc > 0);
        prop_assert_eq!(kind == RootKind::ComplexConjugatePair, disc < 0);
    }

    #[test]
    fn cubic_kind_tracks_discriminant(a in -60i64..=60, b in -60i64..=60, c in -60i64..=60) {
        let p = IntPolynomial::cubic(a, b, c).unwrap();
        let disc = poly::discriminant_cubic(&p).unwrap();
        prop_assert_eq!(classify(&p).kind == RootKind::ThreeDistinctReal, disc > 0);
    }

    #[test]
    fn synthesize_round_trips(a in -30i64..=30, p in -30i64..=30, g in 1i64..=9) {
        if let Ok(poly) = synthesize_symmetric_quartic(a, p, g) {
            let got = detect_symmetric_quartic(&poly).unwrap();
            prop_assert_eq!(got, Some(BigRational::from_integer(BigInt::from(g))));
            prop_assert_eq!(classify(&poly).kind, RootKind::FourDistinctRealSymmetric);
        }
    }

    #[test]
    fn roots_residuals_bounded_for_arbitrary_tails(
        tail in proptest::collection::vec(-100i64..=100, 2..=4)
    ) {
        // no family restriction: repeated and complex roots included
        let p = IntPolynomial::new(tail).unwrap();
        let roots = poly::roots_numeric(&p);
        prop_assert_eq!(roots.len(), p.degree());
        for r in &roots {
            let mut acc = num_complex::Complex64::new(1.0, 0.0);
            for &c in p.tail() {
                acc = acc * r + c as f64;
            }
            prop_assert!(acc.norm() <= 1e-7, "|f({r})| = {} for {}", acc.norm(), p);
        }
        let sum: num_complex::Complex64 = roots.iter().sum();
        prop_assert!((sum.re + p.a() as f64).abs() <= 1e-8, "{}", p);
        prop_assert!(sum.im.abs() <= 1e-8);
    }

    #[test]
    fn numeric_roots_satisfy_the_polynomial(p in any_family_poly()) {
        let roots = poly::roots_numeric(&p);
        prop_assert_eq!(roots.len(), p.degree());
        for r in &roots {
            let mut acc = num_complex::Complex64::new(1.0, 0.0);
            for &c in p.tail() {
                acc = acc * r + c as f64;
            }
            prop_assert!(acc.norm() <= 1e-7, "|f({r})| = {}", acc.norm());
        }
        let sum: num_complex::Complex64 = roots.iter().sum();
        prop_assert!((sum.re + p.a() as f64).abs() <= 1e-8);
        let prod: num_complex::Complex64 = roots.iter().product();
        let last = *p.tail().last().unwrap() as f64;
        let expect = if p.degree() % 2 == 0 { last } else { -last };
        prop_assert!((prod.re - expect).abs() <= 1e-8);
    }

    #[test]
    fn gram_matches_float_generator_product(p in any_family_poly()) {
        let inst = wrlat::build(&p).unwrap();
        prop_assert!(inst.gram_float_deviation() <= 1e-8);
        prop_assert_eq!(&inst.det_closed_form, inst.gram.det_exact());
    }

    #[test]
    fn engine_agrees_with_naive_box(p in any_family_poly()) {
        let inst = wrlat::build(&p).unwrap();
        let engine = svp::shortest_vectors(&inst.gram);
        let oracle = svp::naive_shortest_vectors(&inst.gram, 2);
        prop_assert_eq!(&engine.lambda, &oracle.lambda);
        prop_assert_eq!(&engine.minimal_vectors, &oracle.minimal_vectors);

        // the minimum layer is closed under negation and of even size, and
        // every listed vector attains the minimum exactly
        prop_assert_eq!(engine.kissing % 2, 0);
        for v in &engine.minimal_vectors {
            prop_assert!(engine.minimal_vectors.contains(&v.negated()));
            prop_assert_eq!(&svp::form_value(&inst.gram, v).unwrap(), &engine.lambda);
        }
        // lambda never exceeds the smallest diagonal entry
        prop_assert!(engine.lambda <= inst.gram.min_diagonal());
    }

    #[test]
    fn lambda_equals_the_candidate_table_minimum(p in any_family_poly()) {
        let inst = wrlat::build(&p).unwrap();
        let m = svp::shortest_vectors(&inst.gram);
        let (a, b) = (p.a() as i128, p.b() as i128);
        let a2 = a * a;
        let candidates: Vec<i128> = match inst.family {
            ConstructionFamily::F2R | ConstructionFamily::F4S => {
                vec![a2 - 2 * b, 2 * a2, 2 * a2 - 8 * b]
            }
            ConstructionFamily::F2C => vec![b, a2, 4 * b - a2],
            ConstructionFamily::F3R => vec![
                a2 - 2 * b,
                2 * a2 - 2 * b,
                2 * a2 - 6 * b,
                3 * a2,
                3 * a2 - 8 * b,
            ],
        };
        let table_min = candidates.into_iter().min().unwrap();
        prop_assert_eq!(&m.lambda, &int(table_min));
    }

    #[test]
    fn dimension_two_well_rounded_kissing_is_4_or_6(p in prop_oneof![f2r_poly(), f2c_poly()]) {
        let inst = wrlat::build(&p).unwrap();
        let m = svp::shortest_vectors(&inst.gram);
        if m.well_rounded {
            prop_assert!(m.kissing == 4 || m.kissing == 6, "kissing {}", m.kissing);
        }
    }

    #[test]
    fn predicted_minimum_and_density_match_the_engine(p in any_family_poly()) {
        let inst = wrlat::build(&p).unwrap();
        let verdict = criteria::wr_predicate(inst.family, p.a(), p.b()).unwrap();
        let m = svp::shortest_vectors(&inst.gram);
        if let Some(predicted) = verdict.predicted_minimum {
            prop_assert!(verdict.well_rounded);
            prop_assert_eq!(&m.lambda, &int(predicted));
            let closed = criteria::density_closed_form(inst.family, p.a(), p.b()).unwrap();
            let engine = svp::center_density_sq(&inst.gram, &m);
            prop_assert_eq!(closed, engine.value);
        }
        // criterion and engine agree on well-roundedness everywhere
        prop_assert_eq!(verdict.well_rounded, m.well_rounded);
    }

    #[test]
    fn optimality_matches_kissing_structure(p in any_family_poly()) {
        let inst = wrlat::build(&p).unwrap();
        let verdict = criteria::wr_predicate(inst.family, p.a(), p.b()).unwrap();
        let m = svp::shortest_vectors(&inst.gram);
        match inst.family {
            ConstructionFamily::F2R | ConstructionFamily::F2C => {
                prop_assert_eq!(verdict.optimal_density, m.kissing == 6);
            }
            ConstructionFamily::F3R => {
                if verdict.optimal_density {
                    prop_assert!(m.kissing > 6);
                    let d = svp::center_density_sq(&inst.gram, &m);
                    prop_assert_eq!(
                        d.value,
                        BigRational::new(BigInt::from(1), BigInt::from(32))
                    );
                }
            }
            ConstructionFamily::F4S => {
                prop_assert!(!verdict.optimal_density);
                if verdict.enlarged_kissing {
                    prop_assert_eq!(m.kissing, 12);
                }
                prop_assert!(m.kissing != 24);
            }
        }
    }

    #[test]
    fn scaling_covariance(p in any_family_poly(), k in 2i64..=4) {
        let inst = wrlat::build(&p).unwrap();
        let n = inst.gram.dim();
        let ksq = BigRational::from_integer(BigInt::from(k * k));
        let scaled_entries: Vec<BigRational> =
            inst.gram.entries().iter().map(|e| e * &ksq).collect();
        let scaled = ExactGram::new(n, scaled_entries).unwrap();

        let base = svp::shortest_vectors(&inst.gram);
        let big = svp::shortest_vectors(&scaled);
        prop_assert_eq!(&big.lambda, &(&base.lambda * &ksq));
        prop_assert_eq!(big.kissing, base.kissing);
        prop_assert_eq!(big.well_rounded, base.well_rounded);
        prop_assert_eq!(&big.minimal_vectors, &base.minimal_vectors);

        let d_base = svp::center_density_sq(&inst.gram, &base);
        let d_big = svp::center_density_sq(&scaled, &big);
        prop_assert_eq!(d_base.value, d_big.value);
    }

    #[test]
    fn form_value_agrees_with_family_formula(p in any_family_poly(), x in proptest::collection::vec(-3i64..=3, 4)) {
        let inst = wrlat::build(&p).unwrap();
        let coords: Vec<i64> = x[..inst.gram.dim()].to_vec();
        let via_gram = svp::form_value(&inst.gram, &CoordinateVector(coords.clone())).unwrap();
        prop_assert_eq!(via_gram, family_form(inst.family, p.a(), p.b(), &coords));
    }
}
