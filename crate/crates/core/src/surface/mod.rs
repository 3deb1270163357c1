//! The surfaces `f(u1) + f(u2) + f(u3) = n`, their depressed models, resolvent cubics,
//! discriminants and smoothness.

pub mod exceptional;
pub mod galois;
pub mod resolvent;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::cubic::rational_roots_q;
use crate::algebra::integer::is_square_rat;
use crate::algebra::poly::{int_to_rat, rat, Poly, Rat};
use crate::error::{Error, Result};

pub use exceptional::{exceptional_set, ExceptionalSet};
pub use galois::{
    brauer_u, brauer_x, classify_galois, h1_lookup, BrauerTarget, BrauerValue, BrauerVerdict, FiniteAbelianGroup,
    GaloisClassification, GaloisLabel, GroupLabel, InconclusiveReason,
};
pub use resolvent::{
    rational_point_from_f1_root, verify_resolvent_identity, verify_resolvent_identity_at_root, RationalPoint,
};

/// `f(u) = u^3 + a2 u^2 + a1 u + a0` together with the right-hand side `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CubicInput {
    #[serde(serialize_with = "crate::serde_util::int")]
    pub a2: BigInt,
    #[serde(serialize_with = "crate::serde_util::int")]
    pub a1: BigInt,
    #[serde(serialize_with = "crate::serde_util::int")]
    pub a0: BigInt,
    #[serde(serialize_with = "crate::serde_util::int")]
    pub n: BigInt,
}

impl CubicInput {
    pub fn new(a2: impl Into<BigInt>, a1: impl Into<BigInt>, a0: impl Into<BigInt>, n: impl Into<BigInt>) -> Self {
        CubicInput { a2: a2.into(), a1: a1.into(), a0: a0.into(), n: n.into() }
    }

    /// `u(u+1)(u+2)` summed three times equal to `6m`.
    pub fn tetrahedral(m: impl Into<BigInt>) -> Self {
        CubicInput::new(3, 2, 0, m.into() * 6)
    }

    /// `u1^3 + u2^3 + u3^3 = n`.
    pub fn sum_of_cubes(n: impl Into<BigInt>) -> Self {
        CubicInput::new(0, 0, 0, n)
    }

    pub fn cubic(&self) -> Poly {
        Poly::from_bigints(&[self.a0.clone(), self.a1.clone(), self.a2.clone(), BigInt::one()])
    }

    pub fn f(&self, u: &BigInt) -> BigInt {
        ((u + &self.a2) * u + &self.a1) * u + &self.a0
    }

    /// `f(u1) + f(u2) + f(u3) - n`.
    pub fn residual(&self, u: &[BigInt; 3]) -> BigInt {
        u.iter().map(|x| self.f(x)).sum::<BigInt>() - &self.n
    }

    pub fn f_prime(&self, u: &BigInt) -> BigInt {
        BigInt::from(3) * u * u + BigInt::from(2) * &self.a2 * u + &self.a1
    }
}

impl fmt::Display for CubicInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f(u) = {}, n = {}", self.cubic().display_in("u"), self.n)
    }
}

/// Record of the change of variables `v = scale * u + shift` from the original model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Substitution {
    pub input: CubicInput,
    #[serde(serialize_with = "crate::serde_util::int")]
    pub scale: BigInt,
    #[serde(serialize_with = "crate::serde_util::int")]
    pub shift: BigInt,
}

impl Substitution {
    /// Original coordinate for a depressed coordinate.
    pub fn pull_back(&self, v: &Rat) -> Rat {
        (v - int_to_rat(&self.shift)) / int_to_rat(&self.scale)
    }

    pub fn push_forward(&self, u: &Rat) -> Rat {
        u * int_to_rat(&self.scale) + int_to_rat(&self.shift)
    }
}

/// `sum (u_i^3 + a u_i + b) = n`, with `d = 3b - n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepressedSurface {
    #[serde(serialize_with = "crate::serde_util::int")]
    a: BigInt,
    #[serde(serialize_with = "crate::serde_util::rat")]
    b: Rat,
    #[serde(serialize_with = "crate::serde_util::rat")]
    n: Rat,
    #[serde(serialize_with = "crate::serde_util::rat")]
    d: Rat,
    provenance: Option<Substitution>,
}

impl DepressedSurface {
    pub fn new(a: impl Into<BigInt>, b: Rat, n: Rat) -> Self {
        let d = rat(3) * &b - &n;
        DepressedSurface { a: a.into(), b, n, d, provenance: None }
    }

    pub fn from_ints(a: i64, b: i64, n: i64) -> Self {
        DepressedSurface::new(a, rat(b), rat(n))
    }

    /// The model with `b = 0` and the given `d`.
    pub fn from_a_d(a: impl Into<BigInt>, d: Rat) -> Self {
        DepressedSurface::new(a, Rat::zero(), -d)
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn a_rat(&self) -> Rat {
        int_to_rat(&self.a)
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    pub fn n(&self) -> &Rat {
        &self.n
    }

    pub fn d(&self) -> &Rat {
        &self.d
    }

    pub fn provenance(&self) -> Option<&Substitution> {
        self.provenance.as_ref()
    }

    /// `(k^2 a, k^3 d)` with `b = 0`.
    pub fn rescaled(&self, k: i64) -> DepressedSurface {
        let k = BigInt::from(k);
        DepressedSurface::from_a_d(&k * &k * &self.a, &self.d * int_to_rat(&(&k * &k * &k)))
    }

    /// Affine residual `sum(u_i^3 + a u_i) + d`.
    pub fn residual(&self, u: &[Rat; 3]) -> Rat {
        let a = self.a_rat();
        u.iter().map(|x| x * x * x + &a * x).sum::<Rat>() + &self.d
    }

    /// Projective form `x1^3 + x2^3 + x3^3 + a (x1 + x2 + x3) x0^2 + d x0^3` at `(x0, x1, x2, x3)`.
    pub fn projective_form(&self, x: &[Rat; 4]) -> Rat {
        let a = self.a_rat();
        let x0 = &x[0];
        x[1..].iter().map(|t| t * t * t).sum::<Rat>() + a * (&x[1] + &x[2] + &x[3]) * x0 * x0 + &self.d * x0 * x0 * x0
    }

    pub fn resolvents(&self) -> ResolventPair {
        build_resolvents(self)
    }

    pub fn discriminants(&self) -> DiscriminantTriple {
        discriminant_triple(self)
    }

    pub fn is_smooth(&self) -> bool {
        is_smooth(self)
    }

    pub fn require_smooth(&self) -> Result<()> {
        if self.is_smooth() {
            Ok(())
        } else {
            Err(Error::Singular(format!("a = {}, d = {}", self.a, self.d)))
        }
    }

    /// Integer roots of `f1` (rational roots of a monic cubic with rational `d`).
    pub fn f1_roots(&self) -> Vec<Rat> {
        rational_roots_q(&self.resolvents().f1)
    }
}

impl fmt::Display for DepressedSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a = {}, b = {}, n = {}, d = {}", self.a, self.b, self.n, self.d)
    }
}

/// Canonical normalisation `v = 3u + a2`, giving `a = 9a1 - 3a2^2` and `b = 0`.
pub fn normalize(input: &CubicInput) -> Result<DepressedSurface> {
    normalize_with_scale(input, 3)
}

/// Normalise by `v = k u + k a2 / 3`; `k = 3` always works, `k = 1` needs `3 | a2`.
pub fn normalize_with_scale(input: &CubicInput, k: u32) -> Result<DepressedSurface> {
    let scale = BigInt::from(k);
    let shift_num = &scale * &input.a2;
    if !(&shift_num % 3u32).is_zero() {
        return Err(Error::invalid(format!("scale {k} does not clear the quadratic term for a2 = {}", input.a2)));
    }
    let shift = shift_num / 3;
    // k^3 f((v - shift)/k) = v^3 + A v + C
    let sub = Poly::new(vec![-int_to_rat(&shift) / int_to_rat(&scale), int_to_rat(&scale).recip()]);
    let image = input.cubic().compose(&sub).scale(&int_to_rat(&(&scale * &scale * &scale)));
    if !image.is_monic() || image.degree() != Some(3) || !image.coeff(2).is_zero() || !image.has_integer_coeffs() {
        return Err(Error::inconsistent(format!("normalisation produced {image}")));
    }
    let a = image.coeff(1).to_integer();
    let c = image.coeff(0).to_integer();
    if k == 3 {
        // closed forms for the canonical substitution
        let (a2, a1, a0) = (&input.a2, &input.a1, &input.a0);
        let a_closed = BigInt::from(9) * a1 - BigInt::from(3) * a2 * a2;
        let c_closed = BigInt::from(2) * a2 * a2 * a2 - BigInt::from(9) * a1 * a2 + BigInt::from(27) * a0;
        if a != a_closed || c != c_closed {
            return Err(Error::inconsistent("normalisation identity failed"));
        }
    }
    let n_dep = &scale * &scale * &scale * &input.n - BigInt::from(3) * &c;
    let mut s = DepressedSurface::new(a, Rat::zero(), int_to_rat(&n_dep));
    s.provenance = Some(Substitution { input: input.clone(), scale, shift });
    Ok(s)
}

/// `3 a1 - a2^2 = 0`: the surface is a twist of the sum of three cubes.
pub fn reduces_to_cubes(input: &CubicInput) -> bool {
    (BigInt::from(3) * &input.a1 - &input.a2 * &input.a2).is_zero()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolventPair {
    pub f1: Poly,
    pub f2: Poly,
}

/// `f1 = x^3 + a x + d`, `f2 = x^3 - 12a x^2 + 36a^2 x + 27d^2 + 4a^3`.
pub fn build_resolvents(s: &DepressedSurface) -> ResolventPair {
    let a = s.a_rat();
    let d = s.d.clone();
    let f1 = Poly::new(vec![d.clone(), a.clone(), Rat::zero(), Rat::one()]);
    let f2 = Poly::new(vec![rat(27) * &d * &d + rat(4) * &a * &a * &a, rat(36) * &a * &a, rat(-12) * &a, Rat::one()]);
    ResolventPair { f1, f2 }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscriminantTriple {
    #[serde(serialize_with = "crate::serde_util::rat")]
    pub delta1: Rat,
    #[serde(serialize_with = "crate::serde_util::rat")]
    pub delta2: Rat,
    #[serde(serialize_with = "crate::serde_util::rat")]
    pub delta3: Rat,
    pub delta1_square: bool,
    pub delta2_square: bool,
    pub delta3_square: bool,
}

impl DiscriminantTriple {
    pub fn any_square(&self) -> bool {
        self.delta1_square || self.delta2_square || self.delta3_square
    }
}

/// The two factors `P = 4a^3 + 27d^2` and `Q = 4a^3 + 3d^2`.
pub fn discriminant_factors(s: &DepressedSurface) -> (Rat, Rat) {
    let a = s.a_rat();
    let a3 = rat(4) * &a * &a * &a;
    let d2 = &s.d * &s.d;
    (&a3 + rat(27) * &d2, a3 + rat(3) * d2)
}

/// `Δ1 = -P`, `Δ2 = -243 P Q`, `Δ3 = Δ2 / Δ1` (zero when `Δ1 = 0`). Zero counts as a square.
pub fn discriminant_triple(s: &DepressedSurface) -> DiscriminantTriple {
    let (p, q) = discriminant_factors(s);
    let delta1 = -p.clone();
    let delta2 = rat(-243) * &p * &q;
    let delta3 = if delta1.is_zero() { Rat::zero() } else { &delta2 / &delta1 };
    DiscriminantTriple {
        delta1_square: is_square_rat(&delta1),
        delta2_square: is_square_rat(&delta2),
        delta3_square: is_square_rat(&delta3),
        delta1,
        delta2,
        delta3,
    }
}

/// Smooth iff `Δ2 != 0`.
///
/// A singular point has `x0 != 0` and `3 x_i^2 = -a` for all `i`, so `x_i = ε_i k` with
/// `a = -3k^2`; the equation then forces `d = 2 m k^3` with `m = Σ ε_i ∈ {±1, ±3}`,
/// which is `P = 0` (`m = ±1`) or `Q = 0` (`m = ±3`).
pub fn is_smooth(s: &DepressedSurface) -> bool {
    !discriminant_triple(s).delta2.is_zero()
}

/// An affine singular point of a singular depressed surface.
pub fn singular_point(s: &DepressedSurface) -> Option<[Rat; 3]> {
    if is_smooth(s) {
        return None;
    }
    let a = s.a_rat();
    if a.is_zero() {
        // Δ2 = -243 * 27 d^2 * 3 d^2 vanishes only for d = 0: the cone vertex
        return Some([Rat::zero(), Rat::zero(), Rat::zero()]);
    }
    let k2 = -&a / rat(3);
    if k2.is_negative() || !is_square_rat(&k2) {
        return None;
    }
    let k = crate::algebra::etale::sqrt_rat(&k2);
    let m = &s.d / (rat(2) * &k * &k * &k);
    let eps: [i64; 3] = match m {
        m if m == rat(3) => [1, 1, 1],
        m if m == rat(1) => [1, 1, -1],
        m if m == rat(-1) => [1, -1, -1],
        m if m == rat(-3) => [-1, -1, -1],
        _ => return None,
    };
    Some(eps.map(|e| rat(e) * &k))
}
