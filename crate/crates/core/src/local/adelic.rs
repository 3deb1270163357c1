//! Local certificates at single places and their assembly into an adelic certificate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use super::hensel::{search, LiftablePoint, SearchOutcome};
use super::Place;
use crate::algebra::integer::{factorize, integer_sqrt};
use crate::algebra::is_prime;
use crate::error::{Error, Result};
use crate::surface::{discriminant_factors, discriminant_triple, normalize, CubicInput, DepressedSurface};

/// Weil certificates are issued from this prime on.
pub const WEIL_THRESHOLD: u32 = 11;
/// Primes that are always searched explicitly.
pub const SMALL_PRIMES: [u32; 4] = [2, 3, 5, 7];
pub const DEFAULT_DEPTH: u32 = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum LocalStatus {
    ExplicitPoint(LiftablePoint),
    WeilBound {
        /// Lower bound for smooth F_p-points off the hyperplane at infinity.
        #[serde(serialize_with = "crate::serde_util::int")]
        lower_bound: BigInt,
    },
    RealTrivial,
    /// No solution modulo `p^exponent`.
    Insoluble {
        exponent: u32,
        #[serde(serialize_with = "crate::serde_util::int")]
        modulus: BigInt,
    },
    Unknown {
        depth: u32,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalCertificate {
    pub place: Place,
    pub status: LocalStatus,
}

impl LocalCertificate {
    pub fn is_soluble(&self) -> bool {
        matches!(self.status, LocalStatus::ExplicitPoint(_) | LocalStatus::WeilBound { .. } | LocalStatus::RealTrivial)
    }

    pub fn is_insoluble(&self) -> bool {
        matches!(self.status, LocalStatus::Insoluble { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self.status, LocalStatus::Unknown { .. })
    }
}

/// Smooth reduction mod `p` of the integral depressed model. Primes 2 and 3 never count.
pub fn good_reduction(s: &DepressedSurface, p: &BigInt) -> bool {
    if p <= &BigInt::from(3u32) {
        return false;
    }
    let delta2 = discriminant_triple(s).delta2;
    !delta2.numer().is_multiple_of(p)
}

/// `p^2 - 8p - floor(2 sqrt p)`: the smallest integer at least `p^2 - 8p - 2 sqrt p`
/// (`2 sqrt p` is irrational for prime `p`).
pub fn weil_lower_bound(p: &BigInt) -> BigInt {
    let (root, _) = integer_sqrt(&(p * 4u32)).expect("nonnegative");
    p * p - p * 8u32 - root
}

/// A smooth cubic surface over F_p has at least `p^2 + 1 - 7p` points, and its section
/// at infinity (a plane cubic curve) at most `p + 1 + 2 sqrt p`. Every remaining point is
/// smooth and lifts.
pub fn weil_certificate(s: &DepressedSurface, p: &BigInt) -> Result<LocalCertificate> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    if p < &BigInt::from(WEIL_THRESHOLD) {
        return Err(Error::Refused(format!("Weil certificates need p >= {WEIL_THRESHOLD}, got {p}")));
    }
    if !good_reduction(s, p) {
        return Err(Error::Refused(format!("bad reduction at {p}")));
    }
    Ok(LocalCertificate {
        place: Place::Finite(p.clone()),
        status: LocalStatus::WeilBound { lower_bound: weil_lower_bound(p) },
    })
}

/// A certificate for `U(Z_p)`: the Weil argument at good `p >= 11`, otherwise a residue
/// search. Insolubility is only reported from an exhausted residue level.
pub fn certify_zp(input: &CubicInput, p: &BigInt, depth: u32) -> Result<LocalCertificate> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    if depth == 0 {
        return Err(Error::invalid("depth must be at least 1"));
    }
    let s = normalize(input)?;
    if p >= &BigInt::from(WEIL_THRESHOLD) && good_reduction(&s, p) {
        return weil_certificate(&s, p);
    }
    Ok(search_certificate(input, p, depth))
}

fn search_certificate(input: &CubicInput, p: &BigInt, depth: u32) -> LocalCertificate {
    let status = match search(input, p, depth) {
        SearchOutcome::Found(pt) => LocalStatus::ExplicitPoint(pt),
        SearchOutcome::NoSolutions { level } => LocalStatus::Insoluble { exponent: level, modulus: p.pow(level) },
        SearchOutcome::GaveUp { level } => LocalStatus::Unknown { depth: level },
    };
    LocalCertificate { place: Place::Finite(p.clone()), status }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Solubility {
    Soluble,
    Insoluble,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdelicCertificate {
    /// The real place first, then primes in increasing order.
    pub certificates: Vec<LocalCertificate>,
    /// Primes dividing the discriminant of the depressed model.
    #[serde(serialize_with = "crate::serde_util::int_vec")]
    pub bad_primes: Vec<BigInt>,
    pub weil_statement: String,
    pub verdict: Solubility,
}

impl AdelicCertificate {
    pub fn places(&self) -> Vec<&Place> {
        self.certificates.iter().map(|c| &c.place).collect()
    }

    pub fn unknown_count(&self) -> usize {
        self.certificates.iter().filter(|c| c.is_unknown()).count()
    }

    pub fn insoluble_witness(&self) -> Option<&LocalCertificate> {
        self.certificates.iter().find(|c| c.is_insoluble())
    }
}

/// Primes dividing `Δ2 = -243 P Q`.
pub fn bad_primes(s: &DepressedSurface) -> Vec<BigInt> {
    let (p, q) = discriminant_factors(s);
    let mut primes: Vec<BigInt> = [p, q]
        .iter()
        .flat_map(|x| factorize(&(x.numer().abs())))
        .map(|(prime, _)| prime)
        .chain(std::iter::once(BigInt::from(3u32)))
        .collect();
    primes.sort();
    primes.dedup();
    primes
}

/// Local solubility at every place of the original integral model.
pub fn certify_adeles(input: &CubicInput, depth: u32) -> Result<AdelicCertificate> {
    if depth == 0 {
        return Err(Error::invalid("depth must be at least 1"));
    }
    let s = normalize(input)?;
    s.require_smooth()?;
    let bad = bad_primes(&s);
    let mut primes: Vec<BigInt> = SMALL_PRIMES.iter().map(|&p| BigInt::from(p)).chain(bad.iter().cloned()).collect();
    primes.sort();
    primes.dedup();

    let finite: Vec<LocalCertificate> = primes.par_iter().map(|p| search_certificate(input, p, depth)).collect();
    let mut certificates = vec![LocalCertificate { place: Place::Real, status: LocalStatus::RealTrivial }];
    certificates.extend(finite);

    let verdict = if certificates.iter().any(LocalCertificate::is_insoluble) {
        Solubility::Insoluble
    } else if certificates.iter().all(LocalCertificate::is_soluble) {
        Solubility::Soluble
    } else {
        Solubility::Unknown
    };
    let weil_statement = format!(
        "every prime p >= {WEIL_THRESHOLD} of good reduction has at least p^2 - 8p - floor(2 sqrt p) > 0 \
         smooth F_p-points off x0 = 0, each of which lifts to Z_p"
    );
    Ok(AdelicCertificate { certificates, bad_primes: bad, weil_statement, verdict })
}

/// Recheck a certificate against the input. Unknown certificates claim nothing and pass.
pub fn revalidate(input: &CubicInput, cert: &LocalCertificate) -> bool {
    match (&cert.place, &cert.status) {
        (Place::Real, LocalStatus::RealTrivial) => true,
        (Place::Finite(p), LocalStatus::ExplicitPoint(pt)) => &pt.p == p && pt.revalidate(input),
        (Place::Finite(p), LocalStatus::WeilBound { lower_bound }) => {
            p >= &BigInt::from(WEIL_THRESHOLD)
                && normalize(input).is_ok_and(|s| good_reduction(&s, p))
                && lower_bound == &weil_lower_bound(p)
                && lower_bound.is_positive()
        }
        (Place::Finite(p), LocalStatus::Insoluble { exponent, modulus }) => {
            modulus == &p.pow(*exponent) && no_solutions_mod(input, modulus) == Some(true)
        }
        (_, LocalStatus::Unknown { .. }) => true,
        _ => false,
    }
}

/// Direct check over all residues mod `m` for small `m`.
fn no_solutions_mod(input: &CubicInput, m: &BigInt) -> Option<bool> {
    let q = m.to_u64().filter(|&q| q <= 3000)?;
    let mut present = vec![false; q as usize];
    for u in 0..q {
        present[input.f(&BigInt::from(u)).mod_floor(m).to_usize().unwrap()] = true;
    }
    let values: Vec<u64> = (0..q).filter(|&v| present[v as usize]).collect();
    let n = input.n.mod_floor(m).to_u64().unwrap();
    let hit = values.iter().any(|&v1| values.iter().any(|&v2| present[((n + 2 * q - v1 - v2) % q) as usize]));
    Some(!hit)
}
