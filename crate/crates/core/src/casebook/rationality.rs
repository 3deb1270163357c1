//! Minimality and non-rationality when the lines form orbits `[3, 3, 3, 18]`.

use serde::Serialize;

use super::Verdict;
use crate::error::Result;
use crate::surface::{classify_galois, DepressedSurface, GaloisLabel};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalityReport {
    pub label: String,
    pub orbit_type: Option<Vec<u32>>,
    pub minimal: bool,
    pub non_rational: bool,
    pub justification: Vec<String>,
    pub verdict: Verdict,
}

pub fn rationality_report(s: &DepressedSurface) -> Result<RationalityReport> {
    let g = classify_galois(s)?;
    let label = g.label.to_string();
    if g.label != GaloisLabel::S3xS3 {
        return Ok(RationalityReport {
            label: label.clone(),
            orbit_type: g.orbit_type,
            minimal: false,
            non_rational: false,
            justification: Vec::new(),
            verdict: Verdict::Inapplicable { reason: format!("Galois label {label} is not S3xS3") },
        });
    }
    Ok(RationalityReport {
        label,
        orbit_type: g.orbit_type,
        minimal: true,
        non_rational: true,
        justification: vec![
            "each orbit of size 3 is a coplanar triangle, so it is not a set of pairwise skew lines".into(),
            "an orbit of size 18 > 6 cannot consist of pairwise skew lines".into(),
            "no Galois-stable set of pairwise skew lines can be contracted, so X is minimal".into(),
            "a minimal cubic surface of Picard rank 1 is not rational".into(),
        ],
        verdict: Verdict::Reproduced,
    })
}
