//! Real and p-adic analysis: Hilbert symbols, point counts over F_p, Hensel lifting and
//! adelic solubility certificates for the original integral model.

pub mod adelic;
pub mod count;
pub(crate) mod fp;
pub mod hensel;
pub mod symbols;

use std::fmt;
use std::iter::Sum;
use std::ops::Add;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::algebra::is_prime;
use crate::error::{Error, Result};

pub use adelic::{
    bad_primes, certify_adeles, certify_zp, good_reduction, revalidate, weil_certificate, weil_lower_bound,
    AdelicCertificate, LocalCertificate, LocalStatus, Solubility, DEFAULT_DEPTH,
};
pub use count::{fermat_count, fp_count_affine, fp_count_projective, DEFAULT_COUNT_CAP};
pub use hensel::{find_liftable_point, LiftablePoint};
pub use symbols::{hilbert, legendre};

/// A place of Q.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Real,
    Finite(BigInt),
}

impl Place {
    pub fn finite(p: impl Into<BigInt>) -> Result<Place> {
        let p = p.into();
        if !is_prime(&p) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        Ok(Place::Finite(p))
    }

    pub fn prime(&self) -> Option<&BigInt> {
        match self {
            Place::Real => None,
            Place::Finite(p) => Some(p),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "real"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Place::Real => s.serialize_str("real"),
            Place::Finite(p) => crate::serde_util::int(p, s),
        }
    }
}

/// A local invariant of a quaternion algebra, an element of `{0, 1/2}` in Q/Z.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Invariant {
    #[default]
    Zero,
    Half,
}

impl Invariant {
    /// `Zero` for the Hilbert symbol value `+1`, `Half` for `-1`.
    pub fn from_sign(positive: bool) -> Self {
        if positive {
            Invariant::Zero
        } else {
            Invariant::Half
        }
    }

    pub fn is_zero(self) -> bool {
        self == Invariant::Zero
    }
}

impl Add for Invariant {
    type Output = Invariant;
    fn add(self, other: Invariant) -> Invariant {
        Invariant::from_sign(self == other)
    }
}

impl Sum for Invariant {
    fn sum<I: Iterator<Item = Invariant>>(iter: I) -> Invariant {
        iter.fold(Invariant::Zero, Add::add)
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Invariant::Zero => "0",
            Invariant::Half => "1/2",
        })
    }
}

impl Serialize for Invariant {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
