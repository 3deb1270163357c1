//! The full pipeline for one input `(f, n)`.

use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::local::{certify_adeles, AdelicCertificate, LocalStatus, Solubility};
use crate::surface::{
    brauer_u, brauer_x, classify_galois, discriminant_triple, normalize, rational_point_from_f1_root, reduces_to_cubes,
    BrauerValue, BrauerVerdict, CubicInput, DiscriminantTriple, GaloisClassification, RationalPoint,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AnalyzeVerdict {
    /// Trivial Brauer group on the affine surface and integral points everywhere locally.
    NoObstruction,
    /// An integral point is known explicitly.
    IntegralPointKnown {
        point: Vec<String>,
    },
    /// Some completion has no integral point.
    LocallyInsoluble {
        place: String,
        modulus: Option<String>,
    },
    /// `3 a1 = a2^2`: a twist of the sum of three cubes, decided by external results.
    SumOfCubesExternal,
    Inconclusive {
        reason: String,
    },
}

impl AnalyzeVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            AnalyzeVerdict::NoObstruction => "NoObstruction",
            AnalyzeVerdict::IntegralPointKnown { .. } => "IntegralPointKnown",
            AnalyzeVerdict::LocallyInsoluble { .. } => "LocallyInsoluble",
            AnalyzeVerdict::SumOfCubesExternal => "SumOfCubesExternal",
            AnalyzeVerdict::Inconclusive { .. } => "Inconclusive",
        }
    }
}

impl fmt::Display for AnalyzeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalyzeReport {
    pub input: CubicInput,
    pub sum_of_cubes: bool,
    #[serde(serialize_with = "crate::serde_util::int")]
    pub depressed_a: num_bigint::BigInt,
    #[serde(serialize_with = "crate::serde_util::rat")]
    pub depressed_n: crate::algebra::Rat,
    pub smooth: bool,
    pub discriminants: DiscriminantTriple,
    pub classification: Option<GaloisClassification>,
    pub brauer_x: Option<BrauerVerdict>,
    pub brauer_u: Option<BrauerVerdict>,
    pub rational_point: Option<RationalPoint>,
    pub adelic: Option<AdelicCertificate>,
    pub verdict: AnalyzeVerdict,
    pub notes: Vec<String>,
}

fn insoluble_verdict(adelic: &AdelicCertificate) -> Option<AnalyzeVerdict> {
    let witness = adelic.insoluble_witness()?;
    let modulus = match &witness.status {
        LocalStatus::Insoluble { modulus, .. } => Some(modulus.to_string()),
        _ => None,
    };
    Some(AnalyzeVerdict::LocallyInsoluble { place: witness.place.to_string(), modulus })
}

/// Routing, normalisation, smoothness, classification, Brauer verdicts, local certificates.
pub fn analyze(input: &CubicInput, depth: u32) -> Result<AnalyzeReport> {
    let s = normalize(input)?;
    let smooth = s.is_smooth();
    let mut report = AnalyzeReport {
        input: input.clone(),
        sum_of_cubes: reduces_to_cubes(input),
        depressed_a: s.a().clone(),
        depressed_n: s.n().clone(),
        smooth,
        discriminants: discriminant_triple(&s),
        classification: None,
        brauer_x: None,
        brauer_u: None,
        rational_point: None,
        adelic: None,
        verdict: AnalyzeVerdict::Inconclusive { reason: String::new() },
        notes: Vec::new(),
    };
    if report.sum_of_cubes {
        report.notes.push("3 a1 - a2^2 = 0: sum-of-three-cubes case, handled by external results".into());
        report.verdict = AnalyzeVerdict::SumOfCubesExternal;
        if smooth {
            let adelic = certify_adeles(input, depth)?;
            if let Some(v) = insoluble_verdict(&adelic) {
                report.verdict = v;
            }
            report.adelic = Some(adelic);
        } else {
            report.notes.push("the twisted sum of cubes equals 0: the projective closure is a cone".into());
        }
        return Ok(report);
    }
    if !smooth {
        report.verdict = AnalyzeVerdict::Inconclusive { reason: "the projective closure is singular".into() };
        return Ok(report);
    }
    let adelic = certify_adeles(input, depth)?;

    report.classification = Some(classify_galois(&s)?);
    report.brauer_x = Some(brauer_x(&s)?);
    let bu = brauer_u(&s)?;
    report.rational_point = rational_point_from_f1_root(&s);

    report.verdict = if let Some(v) = insoluble_verdict(&adelic) {
        v
    } else if let Some(point) = report.rational_point.as_ref().filter(|p| p.integral) {
        report.notes.push("the point comes from a rational root of f1; it is integral on the original model".into());
        let coords = point.original.as_ref().unwrap_or(&point.depressed);
        AnalyzeVerdict::IntegralPointKnown { point: coords.iter().map(ToString::to_string).collect() }
    } else if bu.value == BrauerValue::TrivialBrQ && adelic.verdict == Solubility::Soluble {
        AnalyzeVerdict::NoObstruction
    } else if let BrauerValue::Unknown(reason) = &bu.value {
        AnalyzeVerdict::Inconclusive { reason: reason.clone() }
    } else if adelic.verdict != Solubility::Soluble {
        AnalyzeVerdict::Inconclusive { reason: format!("{} local places undecided", adelic.unknown_count()) }
    } else {
        AnalyzeVerdict::Inconclusive { reason: "Brauer group of U is not known to be trivial".into() }
    };
    if report.rational_point.as_ref().is_some_and(|p| !p.integral) {
        report.notes.push("f1 has a rational root, but the resulting point is not integral".into());
    }
    report.brauer_u = Some(bu);
    report.adelic = Some(adelic);
    Ok(report)
}
