//! Brauer classes `Σ ε_p (λ - τ_p, a_p)` of the conic bundle and their local invariants.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::fibre::FibreData;
use super::{projective_mpoly, BundleData, ClosedPoint};
use crate::algebra::integer::{factorize, SquareClass};
use crate::algebra::poly::int_to_rat;
use crate::algebra::Rat;
use crate::error::{Error, Result};
use crate::local::{hilbert, Invariant, Place};
use crate::serde_util;

const NAMES: [&str; 4] = ["x0", "x1", "x2", "x3"];

/// Value of the base parameter `λ = t/s` at a point of the surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parameter {
    Finite(Rat),
    Infinity,
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parameter::Finite(q) => write!(f, "{q}"),
            Parameter::Infinity => f.write_str("infinity"),
        }
    }
}

impl Serialize for Parameter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The quaternion symbol `(λ - τ, a)`, or `(1/λ, a)` at the point at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Symbol {
    pub point: String,
    #[serde(serialize_with = "serde_util::opt_rat")]
    pub tau: Option<Rat>,
    pub a: SquareClass,
}

impl Symbol {
    /// The first slot at a parameter value, or a refusal.
    pub fn slot(&self, lambda: &Parameter) -> Result<Rat> {
        let value = match (&self.tau, lambda) {
            (Some(tau), Parameter::Finite(l)) => l - tau,
            (None, Parameter::Finite(l)) if !l.is_zero() => l.recip(),
            (None, Parameter::Finite(_)) => Rat::zero(),
            (Some(_), Parameter::Infinity) => {
                return Err(Error::Refused(format!("parameter is infinite for symbol at {}", self.point)))
            }
            (None, Parameter::Infinity) => Rat::zero(),
        };
        if value.is_zero() {
            return Err(Error::Refused(format!("first slot of the symbol at {} vanishes", self.point)));
        }
        Ok(value)
    }

    pub fn evaluate(&self, lambda: &Parameter, v: &Place) -> Result<Invariant> {
        hilbert(&self.slot(lambda)?, &int_to_rat(&self.a.representative()), v)
    }
}

/// How `λ` is read off a point: `ℓ1/ℓ2`, falling back to `-C2/C1` on the line `ℓ1 = ℓ2 = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParameterConvention {
    pub numerator: String,
    pub denominator: String,
    pub fallback_numerator: String,
    pub fallback_denominator: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BrauerClassCB {
    pub points: Vec<ClosedPoint>,
    pub epsilon: Vec<u8>,
    pub symbols: Vec<Symbol>,
    pub convention: ParameterConvention,
    #[serde(skip)]
    bundle: BundleData,
}

impl BrauerClassCB {
    pub fn bundle(&self) -> &BundleData {
        &self.bundle
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Finite places where some symbol may ramify at `lambda`, together with the real place.
    pub fn support_places(&self, lambda: &Parameter) -> Result<Vec<Place>> {
        let mut primes: BTreeSet<BigInt> = BTreeSet::from([BigInt::from(2)]);
        for sym in &self.symbols {
            let slot = sym.slot(lambda)?;
            for n in [slot.numer().clone(), slot.denom().clone(), sym.a.representative()] {
                primes.extend(factorize(&n).into_iter().map(|(p, _)| p));
            }
        }
        Ok(std::iter::once(Place::Real).chain(primes.into_iter().map(Place::Finite)).collect())
    }
}

/// Assemble `A_ε` from the splitting data. `epsilon` must lie in the kernel of the norm map.
pub fn brauer_class(bundle: &BundleData, fibres: &[FibreData], epsilon: &[u8]) -> Result<BrauerClassCB> {
    if epsilon.len() != fibres.len() || epsilon.iter().any(|&e| e > 1) {
        return Err(Error::invalid(format!("ε must be a 0/1 vector of length {}", fibres.len())));
    }
    let product = fibres
        .iter()
        .zip(epsilon)
        .filter(|(_, &e)| e == 1)
        .fold(SquareClass::one(), |acc, (f, _)| acc.mul(&f.norm_class));
    if !product.is_trivial() {
        return Err(Error::invalid(format!("ε is not in the kernel: product of norm classes is {product}")));
    }
    let mut symbols = Vec::new();
    for (f, _) in fibres.iter().zip(epsilon).filter(|(_, &e)| e == 1) {
        if f.point.degree() > 1 {
            return Err(Error::Unsupported(format!(
                "corestriction from the degree {} point {} cannot be evaluated",
                f.point.degree(),
                f.point
            )));
        }
        let a = f.a_p_class.clone().ok_or_else(|| Error::inconsistent("rational fibre without a square class"))?;
        if a.is_trivial() {
            continue;
        }
        symbols.push(Symbol { point: f.point.label(), tau: f.point.tau(), a });
    }
    let convention = ParameterConvention {
        numerator: bundle.l1().display_with(&NAMES),
        denominator: bundle.l2().display_with(&NAMES),
        fallback_numerator: (-bundle.c2()).display_with(&NAMES),
        fallback_denominator: bundle.c1().display_with(&NAMES),
    };
    Ok(BrauerClassCB {
        points: fibres.iter().map(|f| f.point.clone()).collect(),
        epsilon: epsilon.to_vec(),
        symbols,
        convention,
        bundle: bundle.clone(),
    })
}

fn check_on_surface(bundle: &BundleData, x: &[Rat; 4]) -> Result<()> {
    if x.iter().all(Zero::is_zero) {
        return Err(Error::invalid("the zero vector is not a projective point"));
    }
    let value = projective_mpoly(bundle.surface()).eval(x);
    if !value.is_zero() {
        return Err(Error::invalid(format!(
            "point [{}] is off the surface (G = {value})",
            x.iter().map(ToString::to_string).collect::<Vec<_>>().join(" : ")
        )));
    }
    Ok(())
}

/// `λ` at a point `[x0 : x1 : x2 : x3]` of the surface.
pub fn parameter(bundle: &BundleData, x: &[Rat; 4]) -> Result<Parameter> {
    check_on_surface(bundle, x)?;
    let ratio_of = |num: Rat, den: Rat| {
        if den.is_zero() {
            Parameter::Infinity
        } else {
            Parameter::Finite(num / den)
        }
    };
    let (l1, l2) = (bundle.l1().eval(x), bundle.l2().eval(x));
    if !l1.is_zero() || !l2.is_zero() {
        return Ok(ratio_of(l1, l2));
    }
    let (c1, c2) = (bundle.c1().eval(x), bundle.c2().eval(x));
    if c1.is_zero() && c2.is_zero() {
        return Err(Error::Refused("ℓ1, ℓ2, C1 and C2 all vanish; λ is undefined".into()));
    }
    Ok(ratio_of(-c2, c1))
}

/// `inv_v A_ε(x)` at a rational point.
pub fn evaluate_class(class: &BrauerClassCB, x: &[Rat; 4], v: &Place) -> Result<Invariant> {
    let lambda = parameter(&class.bundle, x)?;
    class.symbols.iter().map(|s| s.evaluate(&lambda, v)).sum()
}

/// Invariants at every place where the class can ramify at `x`.
pub fn evaluate_all_places(class: &BrauerClassCB, x: &[Rat; 4]) -> Result<Vec<(Place, Invariant)>> {
    let lambda = parameter(&class.bundle, x)?;
    class
        .support_places(&lambda)?
        .into_iter()
        .map(|v| {
            let inv = class.symbols.iter().map(|s| s.evaluate(&lambda, &v)).sum::<Result<Invariant>>()?;
            Ok((v, inv))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanVerdict {
    FailsWeakApproximation,
    NoFailureDetected,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleOutcome {
    #[serde(serialize_with = "serde_util::rat_vec")]
    pub point: Vec<Rat>,
    pub parameter: Option<Parameter>,
    pub invariant: Option<Invariant>,
    pub refusal: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanResult {
    pub place: Place,
    pub attained: BTreeSet<Invariant>,
    pub per_sample: Vec<SampleOutcome>,
    pub verdict: ScanVerdict,
}

/// Evaluate the class at each sample; two distinct invariants at one place show that
/// the surface fails weak approximation there.
pub fn weak_approx_scan(class: &BrauerClassCB, v: &Place, samples: &[[Rat; 4]]) -> Result<ScanResult> {
    for x in samples {
        check_on_surface(&class.bundle, x)?;
    }
    let per_sample: Vec<SampleOutcome> = samples
        .iter()
        .map(|x| {
            let lambda = parameter(&class.bundle, x);
            let value = evaluate_class(class, x, v);
            let refusal = value.as_ref().err().map(ToString::to_string);
            SampleOutcome { point: x.to_vec(), parameter: lambda.ok(), invariant: value.ok(), refusal }
        })
        .collect();
    let attained: BTreeSet<Invariant> = per_sample.iter().filter_map(|s| s.invariant).collect();
    let evaluated = per_sample.iter().filter(|s| s.invariant.is_some()).count();
    let verdict = if attained.len() >= 2 {
        ScanVerdict::FailsWeakApproximation
    } else if class.is_empty() && evaluated > 0 {
        ScanVerdict::NoFailureDetected
    } else if evaluated < 2 {
        ScanVerdict::Inconclusive
    } else {
        ScanVerdict::NoFailureDetected
    };
    Ok(ScanResult { place: v.clone(), attained, per_sample, verdict })
}

/// Third intersection of the chord through two rational points of the surface.
pub fn chord_point(bundle: &BundleData, p: &[Rat; 4], q: &[Rat; 4]) -> Option<[Rat; 4]> {
    let g = projective_mpoly(bundle.surface());
    let along = |u: Rat| -> Vec<Rat> { p.iter().zip(q).map(|(a, b)| a + &u * b).collect() };
    let (plus, minus) = (g.eval(&along(Rat::one())), g.eval(&along(-Rat::one())));
    // G(p + u q) = A u + B u^2 when p and q lie on the surface
    let two = Rat::from_integer(2.into());
    let (a, b) = ((&plus - &minus) / &two, (&plus + &minus) / &two);
    if b.is_zero() {
        return None;
    }
    let point = along(-a / b);
    if point.iter().all(Zero::is_zero) {
        return None;
    }
    Some(std::array::from_fn(|i| point[i].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::{rat, ratio};
    use crate::bundle::tests::u50;
    use crate::bundle::{epsilon_group, singular_locus, splitting_class};

    fn u50_class() -> BrauerClassCB {
        let b = u50();
        let fibres: Vec<FibreData> =
            singular_locus(&b).unwrap().iter().map(|p| splitting_class(&b, p).unwrap()).collect();
        let eps = epsilon_group(&fibres);
        brauer_class(&b, &fibres, &eps.generators[0]).unwrap()
    }

    fn pt(v: [i64; 4]) -> [Rat; 4] {
        v.map(rat)
    }

    #[test]
    fn u50_symbols() {
        let class = u50_class();
        let got: Vec<(Option<Rat>, BigInt)> =
            class.symbols.iter().map(|s| (s.tau.clone(), s.a.representative())).collect();
        assert_eq!(got, vec![(Some(rat(0)), BigInt::from(-6)), (Some(rat(-2)), BigInt::from(-6))]);
        assert_eq!(class.convention.numerator, "x2 + x3");
        assert_eq!(class.convention.denominator, "-2*x0 + x1");
    }

    #[test]
    fn empty_and_unsupported() {
        let b = u50();
        let fibres: Vec<FibreData> =
            singular_locus(&b).unwrap().iter().map(|p| splitting_class(&b, p).unwrap()).collect();
        let empty = brauer_class(&b, &fibres, &[0, 0, 0, 0]).unwrap();
        assert!(empty.is_empty());
        let scan = weak_approx_scan(&empty, &Place::Real, &[pt([1, 2, 2, -2])]).unwrap();
        assert_eq!(scan.attained, BTreeSet::from([Invariant::Zero]));
        assert_eq!(scan.verdict, ScanVerdict::NoFailureDetected);
        assert!(matches!(brauer_class(&b, &fibres, &[0, 0, 0, 1]), Err(Error::Unsupported(_))));
        assert!(matches!(brauer_class(&b, &fibres, &[1, 0, 0, 0]), Err(Error::InvalidInput(_))));
        // a split fibre contributes nothing
        assert!(brauer_class(&b, &fibres, &[0, 1, 0, 0]).unwrap().is_empty());
    }

    #[test]
    fn parameter_rules() {
        let b = u50();
        // on L: generic (1, 2, v, -v) gives λ = -11/(v^2 + 7)
        assert_eq!(parameter(&b, &pt([1, 2, 2, -2])).unwrap(), Parameter::Finite(rat(-1)));
        assert_eq!(parameter(&b, &pt([1, 2, 1, -1])).unwrap(), Parameter::Finite(ratio(-11, 8)));
        assert!(matches!(parameter(&b, &pt([1, 2, 2, 2])), Err(Error::InvalidInput(_))));
        // scaling the projective point does not change λ
        let x: [Rat; 4] = pt([1, 2, 1, -1]).map(|c| c * ratio(-3, 7));
        assert_eq!(parameter(&b, &x).unwrap(), Parameter::Finite(ratio(-11, 8)));
    }

    #[test]
    fn u50_real_scan() {
        let class = u50_class();
        let samples = [pt([1, 2, 2, -2]), pt([1, 2, 1, -1])];
        let scan = weak_approx_scan(&class, &Place::Real, &samples).unwrap();
        assert_eq!(scan.attained, BTreeSet::from([Invariant::Half]));
        assert_eq!(scan.verdict, ScanVerdict::NoFailureDetected);
        let single = weak_approx_scan(&class, &Place::Real, &samples[..1]).unwrap();
        assert_eq!(single.verdict, ScanVerdict::Inconclusive);
        assert!(weak_approx_scan(&class, &Place::Real, &[pt([1, 2, 2, 2])]).is_err());
    }

    #[test]
    fn refusals_name_the_symbol() {
        let class = u50_class();
        let sym = &class.symbols[0];
        let err = sym.evaluate(&Parameter::Finite(rat(0)), &Place::Real).unwrap_err();
        assert!(err.to_string().contains("(t)"), "{err}");
        assert!(matches!(sym.evaluate(&Parameter::Infinity, &Place::Real), Err(Error::Refused(_))));
    }

    #[test]
    fn product_formula_on_rational_points() {
        let class = u50_class();
        let b = class.bundle().clone();
        let mut points: Vec<[Rat; 4]> = (1..8).map(|v| [rat(1), rat(2), ratio(v, 3), ratio(-v, 3)]).collect();
        let g = projective_mpoly(b.surface());
        let box_ = -6i64..=6;
        for x1 in box_.clone() {
            for x2 in box_.clone() {
                for x3 in box_.clone() {
                    let x = pt([1, x1, x2, x3]);
                    if g.eval(&x).is_zero() {
                        points.push(x);
                    }
                }
            }
        }
        let seeds = points.clone();
        for p in &seeds {
            for q in &seeds {
                if p != q {
                    points.extend(chord_point(&b, p, q));
                }
            }
        }
        let mut checked = 0;
        for x in &points {
            let Ok(invs) = evaluate_all_places(&class, x) else { continue };
            let total: Invariant = invs.iter().map(|(_, i)| *i).sum();
            assert_eq!(total, Invariant::Zero, "{x:?}: {invs:?}");
            checked += 1;
        }
        assert!(checked >= 20, "only {checked} points evaluated");
    }
}
