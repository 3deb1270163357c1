//! `U50: x1^3 + x2^3 + x3^3 + 21(x1 + x2 + x3) = 50` and the real invariant of its
//! conic-bundle Brauer class.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use super::TheoremReport;
use crate::algebra::poly::rat;
use crate::algebra::{square_class, Rat};
use crate::bundle::{
    brauer_class, build_bundle, epsilon_group, evaluate_class, parameter, singular_locus, splitting_class,
    weak_approx_scan, BundleData, FibreData, ScanVerdict,
};
use crate::error::Result;
use crate::local::{hilbert, Invariant, Place};
use crate::surface::DepressedSurface;

/// The two real points used for the evaluation, as `(x1, x2, x3, x0)`.
pub const REFERENCE_POINTS: [[i64; 4]; 2] = [[-2, 2, 2, 1], [1, -1, 2, 1]];

const EXPECTED_LOCUS: [&str; 4] = ["(t)", "(s + t)", "(2s + t)", "(16s^2 - 10st + 7t^2)"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct U50Fixture {
    pub a: i64,
    pub n: i64,
    pub r: i64,
    /// The line is `x1 + x2 = 0, x3 + c x0 = 0`; the correct value is `c = -r`.
    pub line_c: i64,
}

impl Default for U50Fixture {
    fn default() -> Self {
        U50Fixture { a: 21, n: 50, r: 2, line_c: -2 }
    }
}

/// `(x1, x2, x3, x0)` to the bundle frame `[x0 : x1 : x2 : x3]`, where the line is
/// `x2 + x3 = 0, x1 = r x0`.
fn to_bundle_frame(p: &[Rat; 4]) -> [Rat; 4] {
    [p[3].clone(), p[2].clone(), p[0].clone(), p[1].clone()]
}

fn original_form(a: i64, n: i64, p: &[Rat; 4]) -> Rat {
    let (x1, x2, x3, x0) = (&p[0], &p[1], &p[2], &p[3]);
    x1 * x1 * x1 + x2 * x2 * x2 + x3 * x3 * x3 + rat(a) * (x1 + x2 + x3) * x0 * x0 - rat(n) * x0 * x0 * x0
}

/// The explicit function `(2 + x3/x1) x3/x1` in the original coordinates.
fn explicit_alpha_slot(p: &[Rat; 4]) -> Option<Rat> {
    if p[0].is_zero() {
        return None;
    }
    let x = &p[2] / &p[0];
    Some((rat(2) + &x) * x)
}

pub fn reproduce_u50() -> TheoremReport {
    reproduce_u50_with(&U50Fixture::default())
}

pub fn reproduce_u50_with(fx: &U50Fixture) -> TheoremReport {
    let mut report = TheoremReport::new("u50_weak_approximation");
    report.input("a", fx.a);
    report.input("n", fx.n);
    report.input("r", fx.r);
    report.input("line", format!("x1 + x2 = 0, x3 + ({})x0 = 0", fx.line_c));
    match run(fx, &mut report) {
        Ok(Some(reason)) => report.inapplicable(reason),
        Ok(None) => report.conclude(),
        Err(e) => {
            report.check("pipeline", false, e.to_string());
            report.conclude()
        }
    }
}

fn run(fx: &U50Fixture, report: &mut TheoremReport) -> Result<Option<String>> {
    let s = DepressedSurface::from_ints(fx.a, 0, fx.n);
    let r = rat(fx.r);
    if !s.resolvents().f1.eval(&r).is_zero() {
        return Ok(Some(format!("{} is not a root of f1 = {}", fx.r, s.resolvents().f1)));
    }
    let line_points: Vec<[Rat; 4]> = (-2..=2).map(|v| [rat(v), rat(-v), rat(-fx.line_c), rat(1)]).collect();
    let bad: Vec<Rat> = line_points.iter().map(|p| original_form(fx.a, fx.n, p)).filter(|v| !v.is_zero()).collect();
    if !report.check("on_surface", bad.is_empty(), format!("line residuals {bad:?}")) {
        return Ok(None);
    }
    let reference_points: Vec<[Rat; 4]> = REFERENCE_POINTS.iter().map(|p| p.map(rat)).collect();
    let off: Vec<Rat> =
        reference_points.iter().map(|p| original_form(fx.a, fx.n, p)).filter(|v| !v.is_zero()).collect();
    if !report.check("reference_points_on_surface", off.is_empty(), format!("residuals {off:?}")) {
        return Ok(None);
    }

    let bundle = build_bundle(&s, &r)?;
    report.attach("bundle", &bundle);
    let locus = singular_locus(&bundle)?;
    let labels: Vec<String> = locus.iter().map(|p| p.label()).collect();
    if !report.check("singular_locus", labels == EXPECTED_LOCUS, labels.join(", ")) {
        return Ok(None);
    }

    let fibres: Vec<FibreData> = locus.iter().map(|p| splitting_class(&bundle, p)).collect::<Result<_>>()?;
    report.attach("fibres", &fibres);
    let rational: Vec<Option<BigInt>> =
        fibres[..3].iter().map(|f| f.a_p_class.as_ref().map(|c| c.representative())).collect();
    let want = [-6, 1, -6].map(|v| Some(BigInt::from(v)));
    let quad_norm_trivial = fibres[3].norm_class.is_trivial();
    if !report.check(
        "splitting_classes",
        rational == want && quad_norm_trivial,
        format!("rational classes {rational:?}, quadratic norm class {}", fibres[3].norm_class),
    ) {
        return Ok(None);
    }
    if fibres[3].split == Some(false) {
        report.notes.push(format!(
            "the fibre over {} is not split over its residue field: a_p = {} (norm class {})",
            fibres[3].point, fibres[3].a_p, fibres[3].norm_class
        ));
    }

    let eps = epsilon_group(&fibres);
    report.attach("epsilon", &eps);
    if !report.check("epsilon", eps.generators == vec![vec![1, 0, 1, 0]], format!("{:?}", eps.generators)) {
        return Ok(None);
    }

    let class = brauer_class(&bundle, &fibres, &eps.generators[0])?;
    report.attach("class", &class);
    let minus_six = square_class(&rat(-6))?;
    let taus: BTreeSet<Rat> = class.symbols.iter().filter_map(|s| s.tau.clone()).collect();
    let matches_alpha = class.symbols.len() == 2
        && class.symbols.iter().all(|s| s.a == minus_six)
        && taus == BTreeSet::from([rat(0), rat(-2)]);
    if !report.check("class", matches_alpha, "Σ (λ - τ, -6) over τ ∈ {0, -2} = (λ(λ + 2), -6)") {
        return Ok(None);
    }

    real_place_checks(&bundle, &class, &reference_points, report)?;
    Ok(None)
}

fn real_place_checks(
    bundle: &BundleData,
    class: &crate::bundle::BrauerClassCB,
    reference_points: &[[Rat; 4]],
    report: &mut TheoremReport,
) -> Result<()> {
    let framed: Vec<[Rat; 4]> = reference_points.iter().map(to_bundle_frame).collect();
    let mut ours = Vec::new();
    let mut theirs = Vec::new();
    let mut detail = Vec::new();
    for (p, x) in reference_points.iter().zip(&framed) {
        let lambda = parameter(bundle, x)?;
        let inv = evaluate_class(class, x, &Place::Real)?;
        let slot = explicit_alpha_slot(p);
        let explicit_inv = match &slot {
            Some(q) if !q.is_zero() => Some(hilbert(q, &rat(-6), &Place::Real)?),
            _ => None,
        };
        detail.push(format!(
            "[{}]: λ = {lambda}, inv = {inv}; explicit slot {} gives {}",
            p.iter().map(ToString::to_string).collect::<Vec<_>>().join(":"),
            slot.as_ref().map_or("undefined".to_string(), ToString::to_string),
            explicit_inv.map_or("undefined".to_string(), |i| i.to_string()),
        ));
        ours.push(Some(inv));
        theirs.push(explicit_inv);
    }
    report.check("parameter_cross_check", ours == theirs, detail.join("; "));

    let scan = weak_approx_scan(class, &Place::Real, &framed)?;
    report.attach("real_scan", &scan);
    let attained: Vec<String> = scan.attained.iter().map(Invariant::to_string).collect();
    report.check(
        "real_invariants",
        scan.attained == BTreeSet::from([Invariant::Zero, Invariant::Half])
            && scan.verdict == ScanVerdict::FailsWeakApproximation,
        format!("attained {{{}}}, verdict {:?}", attained.join(", "), scan.verdict),
    );
    Ok(())
}
