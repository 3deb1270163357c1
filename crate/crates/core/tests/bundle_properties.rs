use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::sync::OnceLock;

use proptest::prelude::*;

use tricubic::algebra::SquareClass;
use tricubic::bundle::{
    brauer_class, build_bundle, chord_point, epsilon_group, evaluate_all_places, parameter, projective_mpoly,
    singular_locus, splitting_class, splitting_class_with_order, BrauerClassCB, BundleData, FibreData, Parameter,
    Symbol,
};
use tricubic::local::{hilbert, Invariant, Place};
use tricubic::surface::DepressedSurface;
use tricubic::Error;

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn qr(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn u50() -> BundleData {
    build_bundle(&DepressedSurface::from_ints(21, 0, 50), &q(2)).unwrap()
}

/// A smooth surface with `r` a root of `f1 = x^3 + a x + d`.
fn bundle_for(a: i64, r: i64) -> Option<BundleData> {
    let s = DepressedSurface::from_a_d(a, q(-(r * r * r + a * r)));
    s.is_smooth().then(|| build_bundle(&s, &q(r)).unwrap())
}

fn fibres(b: &BundleData) -> Vec<FibreData> {
    singular_locus(b).unwrap().iter().map(|p| splitting_class(b, p).unwrap()).collect()
}

/// Integral points in a small box together with the chords through pairs of them.
fn u50_pool(b: &BundleData) -> Vec<[BigRational; 4]> {
    let g = projective_mpoly(b.surface());
    let mut seeds = Vec::new();
    for x1 in -6..=6 {
        for x2 in -6..=6 {
            for x3 in -6..=6 {
                let x = [q(1), q(x1), q(x2), q(x3)];
                if g.eval(&x).is_zero() {
                    seeds.push(x);
                }
            }
        }
    }
    let mut pool = seeds.clone();
    for p in &seeds {
        for r in &seeds {
            if p != r {
                pool.extend(chord_point(b, p, r));
            }
        }
    }
    pool
}

fn fixture() -> &'static (BundleData, BrauerClassCB, Vec<[BigRational; 4]>) {
    static CELL: OnceLock<(BundleData, BrauerClassCB, Vec<[BigRational; 4]>)> = OnceLock::new();
    CELL.get_or_init(|| {
        let b = u50();
        let fs = fibres(&b);
        let class = brauer_class(&b, &fs, &epsilon_group(&fs).generators[0]).unwrap();
        let pool = u50_pool(&b);
        (b, class, pool)
    })
}

#[test]
fn locus_degrees_sum_to_five() {
    let mut seen = 0;
    for a in -30..=30 {
        for r in -5..=5 {
            let Some(b) = bundle_for(a, r) else { continue };
            let pts = singular_locus(&b).unwrap();
            assert_eq!(pts.iter().map(|p| p.degree()).sum::<usize>(), 5, "a={a} r={r}");
            let labels: Vec<String> = pts.iter().map(|p| p.label()).collect();
            assert!(labels.contains(&"(t)".to_string()), "a={a} r={r}: {labels:?}");
            assert!(labels.contains(&"(s + t)".to_string()), "a={a} r={r}: {labels:?}");
            assert_eq!(labels.contains(&"(s)".to_string()), a == 0, "a={a} r={r}: {labels:?}");
            seen += 1;
        }
    }
    assert!(seen > 500);
}

#[test]
fn kernel_generators_recheck() {
    for a in -12..=12 {
        for r in -3..=3 {
            let Some(b) = bundle_for(a, r) else { continue };
            let fs = fibres(&b);
            let eps = epsilon_group(&fs);
            for v in &eps.generators {
                let product = fs
                    .iter()
                    .zip(v)
                    .filter(|(_, &e)| e == 1)
                    .fold(SquareClass::one(), |acc, (f, _)| acc.mul(&f.norm_class));
                assert!(product.is_trivial(), "a={a} r={r} ε={v:?}");
                match brauer_class(&b, &fs, v) {
                    Ok(class) => assert!(class.symbols.iter().all(|s| !s.a.is_trivial())),
                    Err(Error::Unsupported(_)) => {
                        assert!(fs.iter().zip(v).any(|(f, &e)| e == 1 && f.point.degree() > 1))
                    }
                    Err(e) => panic!("a={a} r={r}: {e}"),
                }
            }
            for t in &eps.trivial_directions {
                let i = t.iter().position(|&e| e == 1).unwrap();
                assert!(fs[i].norm_class.is_trivial());
            }
        }
    }
}

#[test]
fn diagonalisation_path_independence() {
    let orders = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for a in -8..=8 {
        for r in -3..=3 {
            let Some(b) = bundle_for(a, r) else { continue };
            for p in singular_locus(&b).unwrap() {
                let base = splitting_class(&b, &p).unwrap();
                for order in orders {
                    let other = splitting_class_with_order(&b, &p, order).unwrap();
                    assert_eq!(other.norm_class, base.norm_class);
                    let ratio = &other.a_p * &base.a_p.inverse().unwrap();
                    if let Some(square) = ratio.is_square() {
                        assert!(square, "a={a} r={r} point {p} order {order:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn u50_real_points_lie_over_minus_two_to_zero() {
    let b = u50();
    for x in u50_pool(&b) {
        if let Ok(Parameter::Finite(l)) = parameter(&b, &x) {
            assert!(l >= q(-2) && l <= q(0), "{x:?} has λ = {l}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn slot_square_invariance(
        lambda_n in -500i64..500, lambda_d in 1i64..50, k_n in 1i64..40, k_d in 1i64..40,
        a in prop::sample::select(vec![-6i64, -1, 2, 3, 5, -87, 58]),
        p in prop::sample::select(vec![0i64, 2, 3, 5, 7, 29]),
    ) {
        let sym = Symbol { point: "(2s + t)".into(), tau: Some(q(-2)), a: tricubic::algebra::square_class(&q(a)).unwrap() };
        let lambda = qr(lambda_n, lambda_d);
        prop_assume!(lambda != q(-2));
        let v = if p == 0 { Place::Real } else { Place::finite(p).unwrap() };
        let k2 = qr(k_n * k_n, k_d * k_d);
        let moved = Parameter::Finite(q(-2) + (&lambda + q(2)) * &k2);
        let base = sym.evaluate(&Parameter::Finite(lambda.clone()), &v).unwrap();
        prop_assert_eq!(sym.evaluate(&moved, &v).unwrap(), base);
        let slot = &lambda + q(2);
        prop_assert_eq!(hilbert(&slot, &(q(a) * &k2), &v).unwrap(), base);
    }

    #[test]
    fn product_formula_at_chord_points(i in 0usize..10_000, j in 0usize..10_000) {
        let (b, class, pool) = fixture();
        let (x, y) = (&pool[i % pool.len()], &pool[j % pool.len()]);
        prop_assume!(x != y);
        let Some(z) = chord_point(b, x, y) else { return Ok(()) };
        let Ok(invs) = evaluate_all_places(class, &z) else { return Ok(()) };
        let total: Invariant = invs.iter().map(|(_, inv)| *inv).sum();
        prop_assert_eq!(total, Invariant::Zero, "{:?}: {:?}", z, invs);
        // the real invariant is 1/2 throughout the real locus
        prop_assert_eq!(invs[0].clone(), (Place::Real, Invariant::Half));
    }
}
