//! Galois classification of the 27 lines and the resulting Brauer group verdicts.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;

use super::{build_resolvents, discriminant_triple, DepressedSurface};
use crate::algebra::cubic::rational_roots_q;
use crate::error::{Error, Result};

/// Finite abelian group given by its invariant factors; the empty list is the trivial group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteAbelianGroup(pub Vec<u32>);

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        FiniteAbelianGroup(Vec::new())
    }

    pub fn cyclic(n: u32) -> Self {
        FiniteAbelianGroup(vec![n])
    }

    pub fn elementary(p: u32, rank: usize) -> Self {
        FiniteAbelianGroup(vec![p; rank])
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    pub fn order(&self) -> u64 {
        self.0.iter().map(|&n| n as u64).product()
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let all_equal = self.0.windows(2).all(|w| w[0] == w[1]);
        if all_equal && self.0.len() > 1 {
            write!(f, "(Z/{})^{}", self.0[0], self.0.len())
        } else {
            let parts: Vec<String> = self.0.iter().map(|n| format!("Z/{n}")).collect();
            f.write_str(&parts.join(" x "))
        }
    }
}

impl Serialize for FiniteAbelianGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Galois group labels appearing in the classification table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GroupLabel {
    C1,
    C2,
    C3,
    C2xC2,
    S3,
    C6,
    C3xC3,
    C2xS3,
    C3sdS3,
    C3xS3,
    S3xS3,
}

impl GroupLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            GroupLabel::C1 => "C1",
            GroupLabel::C2 => "C2",
            GroupLabel::C3 => "C3",
            GroupLabel::C2xC2 => "C2^2",
            GroupLabel::S3 => "S3",
            GroupLabel::C6 => "C6",
            GroupLabel::C3xC3 => "C3^2",
            GroupLabel::C2xS3 => "C2xS3",
            GroupLabel::C3sdS3 => "C3:S3",
            GroupLabel::C3xS3 => "C3xS3",
            GroupLabel::S3xS3 => "S3xS3",
        }
    }
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GroupLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '×' => 'x',
                '⋊' => ':',
                '²' => '2',
                other => other,
            })
            .collect::<String>()
            .replace("^", "");
        Ok(match norm.as_str() {
            "C1" => GroupLabel::C1,
            "C2" => GroupLabel::C2,
            "C3" => GroupLabel::C3,
            "C22" | "C2xC2" => GroupLabel::C2xC2,
            "S3" => GroupLabel::S3,
            "C6" => GroupLabel::C6,
            "C32" | "C3xC3" => GroupLabel::C3xC3,
            "C2xS3" => GroupLabel::C2xS3,
            "C3:S3" | "C3sdS3" => GroupLabel::C3sdS3,
            "C3xS3" => GroupLabel::C3xS3,
            "S3xS3" | "S32" => GroupLabel::S3xS3,
            _ => return Err(Error::invalid(format!("unknown group label {s:?}"))),
        })
    }
}

/// One entry of the table: group, orbit type as `(size, multiplicity)` pairs, H^1 invariant factors.
type Row = (GroupLabel, &'static [(u32, u32)], &'static [u32]);

/// Galois types of the 27 lines with `H^1(Q, Pic)`. Rows keep their original order,
/// duplicated keys included.
pub const H1_TABLE: &[Row] = &[
    (GroupLabel::C1, &[(1, 27)], &[]),
    (GroupLabel::C2, &[(1, 15), (2, 6)], &[]),
    (GroupLabel::C2, &[(1, 3), (2, 12)], &[2, 2]),
    (GroupLabel::C2, &[(1, 3), (2, 12)], &[]),
    (GroupLabel::C3, &[(1, 9), (3, 6)], &[]),
    (GroupLabel::C3, &[(3, 9)], &[]),
    (GroupLabel::C3, &[(3, 9)], &[3, 3]),
    (GroupLabel::C2xC2, &[(1, 3), (2, 6), (4, 3)], &[2]),
    (GroupLabel::S3, &[(3, 3), (6, 3)], &[2, 2]),
    (GroupLabel::S3, &[(1, 9), (3, 6)], &[]),
    (GroupLabel::C6, &[(1, 3), (2, 3), (6, 3)], &[]),
    (GroupLabel::C6, &[(3, 5), (6, 2)], &[]),
    (GroupLabel::S3, &[(1, 3), (2, 3), (6, 3)], &[]),
    (GroupLabel::S3, &[(3, 3), (6, 3)], &[]),
    (GroupLabel::S3, &[(3, 3), (6, 3)], &[3]),
    (GroupLabel::C3xC3, &[(3, 3), (9, 2)], &[3]),
    (GroupLabel::C2xS3, &[(3, 3), (6, 1), (12, 1)], &[2]),
    (GroupLabel::C2xS3, &[(1, 3), (2, 3), (6, 3)], &[]),
    (GroupLabel::C3sdS3, &[(3, 3), (18, 1)], &[]),
    (GroupLabel::C3xS3, &[(3, 3), (9, 2)], &[3]),
    (GroupLabel::C3xS3, &[(3, 3), (18, 1)], &[]),
    (GroupLabel::S3xS3, &[(3, 3), (18, 1)], &[]),
];

fn expand_orbits(spec: &[(u32, u32)]) -> Vec<u32> {
    let mut v: Vec<u32> = spec.iter().flat_map(|&(size, mult)| std::iter::repeat_n(size, mult as usize)).collect();
    v.sort_unstable();
    v
}

/// `H^1(Q, Pic)` for a (group, orbit multiset) key. Absent and ambiguous keys are errors.
pub fn h1_lookup(group: GroupLabel, orbit_type: &[u32]) -> Result<FiniteAbelianGroup> {
    let mut key = orbit_type.to_vec();
    key.sort_unstable();
    if key.iter().sum::<u32>() != 27 {
        return Err(Error::Lookup(format!("orbit type {key:?} does not partition the 27 lines")));
    }
    let mut candidates: Vec<FiniteAbelianGroup> = H1_TABLE
        .iter()
        .filter(|(g, orbits, _)| *g == group && expand_orbits(orbits) == key)
        .map(|(_, _, h1)| FiniteAbelianGroup(h1.to_vec()))
        .collect();
    candidates.sort();
    candidates.dedup();
    match candidates.len() {
        0 => Err(Error::Lookup(format!("({group}, {key:?}) is not in the table"))),
        1 => Ok(candidates.remove(0)),
        _ => {
            let list: Vec<String> = candidates.iter().map(ToString::to_string).collect();
            Err(Error::Lookup(format!("({group}, {key:?}) is ambiguous: candidates {}", list.join(", "))))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InconclusiveReason {
    F1Reducible,
    F2Reducible,
    Delta1Square,
    Delta2Square,
    Delta3Square,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "reasons")]
pub enum GaloisLabel {
    S3xS3,
    C2xS3F1Reducible,
    SumOfCubes,
    Inconclusive(Vec<InconclusiveReason>),
}

impl fmt::Display for GaloisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GaloisLabel::S3xS3 => f.write_str("S3xS3"),
            GaloisLabel::C2xS3F1Reducible => f.write_str("C2xS3 (f1 reducible)"),
            GaloisLabel::SumOfCubes => f.write_str("sum of cubes (a = 0)"),
            GaloisLabel::Inconclusive(r) => write!(f, "inconclusive {r:?}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaloisClassification {
    pub f1_irreducible: bool,
    pub f2_irreducible: bool,
    pub delta1_square: bool,
    pub delta2_square: bool,
    pub delta3_square: bool,
    pub label: GaloisLabel,
    pub orbit_type: Option<Vec<u32>>,
    pub h1: Option<FiniteAbelianGroup>,
}

pub const S3XS3_ORBITS: [u32; 4] = [3, 3, 3, 18];
pub const C2XS3_ORBITS: [u32; 9] = [1, 1, 1, 2, 2, 2, 6, 6, 6];

pub fn classify_galois(s: &DepressedSurface) -> Result<GaloisClassification> {
    s.require_smooth()?;
    let r = build_resolvents(s);
    let t = discriminant_triple(s);
    let f1_irreducible = rational_roots_q(&r.f1).is_empty();
    let f2_irreducible = rational_roots_q(&r.f2).is_empty();
    let mut squares = Vec::new();
    if t.delta1_square {
        squares.push(InconclusiveReason::Delta1Square);
    }
    if t.delta2_square {
        squares.push(InconclusiveReason::Delta2Square);
    }
    if t.delta3_square {
        squares.push(InconclusiveReason::Delta3Square);
    }
    let (label, orbit_type) = if s.a().is_zero() {
        (GaloisLabel::SumOfCubes, None)
    } else if f2_irreducible && squares.is_empty() {
        if f1_irreducible {
            (GaloisLabel::S3xS3, Some(S3XS3_ORBITS.to_vec()))
        } else {
            (GaloisLabel::C2xS3F1Reducible, Some(C2XS3_ORBITS.to_vec()))
        }
    } else {
        let mut reasons = Vec::new();
        if !f1_irreducible {
            reasons.push(InconclusiveReason::F1Reducible);
        }
        if !f2_irreducible {
            reasons.push(InconclusiveReason::F2Reducible);
        }
        reasons.extend(squares);
        (GaloisLabel::Inconclusive(reasons), None)
    };
    let h1 = match (&label, &orbit_type) {
        (GaloisLabel::S3xS3, Some(o)) => Some(h1_lookup(GroupLabel::S3xS3, o)?),
        (GaloisLabel::C2xS3F1Reducible, Some(o)) => Some(h1_lookup(GroupLabel::C2xS3, o)?),
        _ => None,
    };
    Ok(GaloisClassification {
        f1_irreducible,
        f2_irreducible,
        delta1_square: t.delta1_square,
        delta2_square: t.delta2_square,
        delta3_square: t.delta3_square,
        label,
        orbit_type,
        h1,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BrauerTarget {
    X,
    U,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "reason")]
pub enum BrauerValue {
    TrivialBrQ,
    ZmodThreeAlgebraic,
    Unknown(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BrauerVerdict {
    pub target: BrauerTarget,
    pub value: BrauerValue,
    pub justification: Vec<String>,
}

/// Brauer group of the smooth projective surface modulo constants.
pub fn brauer_x(s: &DepressedSurface) -> Result<BrauerVerdict> {
    let g = classify_galois(s)?;
    let (value, justification) = match &g.label {
        GaloisLabel::S3xS3 => {
            (BrauerValue::TrivialBrQ, vec!["Galois group S3xS3 with orbit type [3^3,18]: H^1(Q, Pic) = 0".to_string()])
        }
        GaloisLabel::C2xS3F1Reducible => {
            (BrauerValue::TrivialBrQ, vec!["Galois group C2xS3 with f1 reducible: H^1(Q, Pic) = 0".to_string()])
        }
        GaloisLabel::SumOfCubes if g.f1_irreducible => (
            BrauerValue::ZmodThreeAlgebraic,
            vec!["a = 0 and f1 irreducible: Br X / Br Q = Z/3 (external result; no class constructed)".to_string()],
        ),
        GaloisLabel::SumOfCubes => (
            BrauerValue::Unknown("a = 0 with f1 reducible".to_string()),
            vec!["sum-of-cubes case outside the Z/3 criterion".to_string()],
        ),
        GaloisLabel::Inconclusive(reasons) => (
            BrauerValue::Unknown(format!("n in the exceptional set: {reasons:?}")),
            vec!["classification inconclusive; no Brauer claim made".to_string()],
        ),
    };
    Ok(BrauerVerdict { target: BrauerTarget::X, value, justification })
}

/// Brauer group of the affine surface: equal to that of `X` when `Δ1` is not a square.
pub fn brauer_u(s: &DepressedSurface) -> Result<BrauerVerdict> {
    let x = brauer_x(s)?;
    let t = discriminant_triple(s);
    if t.delta1_square {
        return Ok(BrauerVerdict {
            target: BrauerTarget::U,
            value: BrauerValue::Unknown(
                "Delta1 is a square; the isomorphism Br X -> Br U is not established".to_string(),
            ),
            justification: vec![format!("Delta1 = {} is a square", t.delta1)],
        });
    }
    let mut justification = x.justification;
    justification
        .push(format!("Delta1 = {} is not a square and X is smooth, so Br X -> Br U is an isomorphism", t.delta1));
    Ok(BrauerVerdict { target: BrauerTarget::U, value: x.value, justification })
}
