//! The conic-bundle report for `u^3 + a u + b` summed to `n`.

use num_bigint::BigInt;
use serde::Serialize;

use crate::algebra::Rat;
use crate::bundle::{
    brauer_class, build_bundle, epsilon_group, singular_locus, splitting_class, BrauerClassCB, BundleData, ClosedPoint,
    EpsilonGroup, FibreData,
};
use crate::error::{Error, Result};
use crate::surface::DepressedSurface;

#[derive(Clone, Debug, Serialize)]
pub struct BundleReport {
    #[serde(serialize_with = "crate::serde_util::rat")]
    pub root: Rat,
    pub bundle: BundleData,
    pub singular_locus: Vec<ClosedPoint>,
    pub fibres: Vec<FibreData>,
    pub epsilon: EpsilonGroup,
    /// One class per generator of ε; classes outside the supported cases carry the refusal.
    pub classes: Vec<std::result::Result<BrauerClassCB, String>>,
}

impl BundleReport {
    pub fn verdict(&self) -> String {
        format!("Generators({})", self.epsilon.generators.len())
    }
}

/// Project away from the line given by `root` (default: the smallest rational root of f1).
pub fn bundle_report(a: &BigInt, b: &BigInt, n: &BigInt, root: Option<&Rat>) -> Result<BundleReport> {
    let s = DepressedSurface::new(a.clone(), Rat::from_integer(b.clone()), Rat::from_integer(n.clone()));
    s.require_smooth()?;
    let root = match root {
        Some(r) => r.clone(),
        None => s
            .f1_roots()
            .first()
            .cloned()
            .ok_or_else(|| Error::InvalidInput(format!("f1 = {} has no rational root", s.resolvents().f1)))?,
    };
    let bundle = build_bundle(&s, &root)?;
    let singular_locus = singular_locus(&bundle)?;
    let fibres: Vec<FibreData> = singular_locus.iter().map(|p| splitting_class(&bundle, p)).collect::<Result<_>>()?;
    let epsilon = epsilon_group(&fibres);
    let classes =
        epsilon.generators.iter().map(|v| brauer_class(&bundle, &fibres, v).map_err(|e| e.to_string())).collect();
    Ok(BundleReport { root, bundle, singular_locus, fibres, epsilon, classes })
}
