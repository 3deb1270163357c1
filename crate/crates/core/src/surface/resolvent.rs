//! The resolvent identity over `l = Q[x]/(f1)` and rational points from roots of `f1`.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{build_resolvents, discriminant_triple, DepressedSurface};
use crate::algebra::cubic::rational_roots_q;
use crate::algebra::etale::EtaleElement;
use crate::algebra::poly::{rat, Poly, Rat};
use crate::error::{Error, Result};

/// Polynomials in `y` with coefficients in an étale algebra, ascending.
#[derive(Clone, Debug)]
struct LPoly(Vec<EtaleElement>);

impl LPoly {
    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(EtaleElement::is_zero) {
            self.0.pop();
        }
        self
    }

    fn constant(c: EtaleElement) -> Self {
        LPoly(vec![c]).trim()
    }

    fn add(&self, other: &LPoly, zero: &EtaleElement) -> LPoly {
        let n = self.0.len().max(other.0.len());
        LPoly(
            (0..n)
                .map(|i| {
                    let x = self.0.get(i).unwrap_or(zero);
                    let y = other.0.get(i).unwrap_or(zero);
                    x + y
                })
                .collect(),
        )
        .trim()
    }

    fn mul(&self, other: &LPoly, zero: &EtaleElement) -> LPoly {
        if self.0.is_empty() || other.0.is_empty() {
            return LPoly(Vec::new());
        }
        let mut out = vec![zero.clone(); self.0.len() + other.0.len() - 1];
        for (i, x) in self.0.iter().enumerate() {
            for (j, y) in other.0.iter().enumerate() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
        LPoly(out).trim()
    }

    /// Remainder modulo a polynomial whose leading coefficient is a unit.
    fn rem(&self, g: &LPoly) -> Result<LPoly> {
        let dg = g.0.len() - 1;
        let lead_inv = g.0[dg].inverse()?;
        let mut r = self.0.clone();
        while r.len() > dg {
            let k = r.len() - 1 - dg;
            let c = r.last().unwrap() * &lead_inv;
            for (i, gc) in g.0.iter().enumerate() {
                r[k + i] = &r[k + i] - &(&c * gc);
            }
            r.pop();
        }
        Ok(LPoly(r).trim())
    }

    /// `p(self)` for a polynomial `p` over Q.
    fn compose_into(p: &Poly, arg: &LPoly, zero: &EtaleElement) -> LPoly {
        p.coeffs().iter().rev().fold(LPoly(Vec::new()), |acc, c| {
            acc.mul(arg, zero).add(&LPoly::constant(zero.from_rational(c.clone())), zero)
        })
    }
}

/// `ξ(y) = -(a y^2 + (3r^2 - a) y - (4a + 3r^2))` and
/// `g1(y) = a y^3 + 3r^2 y^2 - 3r^2 y + (4a + 3r^2)` with coefficients in the algebra of `r`.
fn xi_and_g1(a: &Rat, r: &EtaleElement) -> (LPoly, LPoly) {
    let c = |q: Rat| r.from_rational(q);
    let r2_3 = &(r * r) * &c(rat(3));
    let four_a = c(rat(4) * a);
    let xi = LPoly(vec![&four_a + &r2_3, &c(a.clone()) - &r2_3, c(-a.clone())]).trim();
    let g1 = LPoly(vec![&four_a + &r2_3, -&r2_3, r2_3.clone(), c(a.clone())]).trim();
    (xi, g1)
}

fn identity_holds(s: &DepressedSurface, r: &EtaleElement) -> Result<bool> {
    let zero = r.from_rational(Rat::zero());
    let (xi, g1) = xi_and_g1(&s.a_rat(), r);
    let f2 = build_resolvents(s).f2;
    let value = LPoly::compose_into(&f2, &xi, &zero);
    Ok(value.rem(&g1)?.0.is_empty())
}

/// Check `f2(ξ(y)) ≡ 0 mod g1(y)` in `l[y]` with `l = Q[x]/(f1)` and `r` the class of `x`.
pub fn verify_resolvent_identity(s: &DepressedSurface) -> Result<bool> {
    let t = discriminant_triple(s);
    if t.delta1.is_zero() {
        return Err(Error::invalid("f1 is not separable"));
    }
    let f1 = build_resolvents(s).f1;
    let r = EtaleElement::generator(&f1)?;
    identity_holds(s, &r)
}

/// The same identity over Q for a rational root `r` of `f1`.
pub fn verify_resolvent_identity_at_root(s: &DepressedSurface, r: &Rat) -> Result<bool> {
    let f1 = build_resolvents(s).f1;
    if !f1.eval(r).is_zero() {
        return Err(Error::invalid(format!("{r} is not a root of f1")));
    }
    let r = EtaleElement::constant(&Poly::x(), r.clone())?;
    identity_holds(s, &r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalPoint {
    #[serde(serialize_with = "crate::serde_util::rat")]
    pub root: Rat,
    #[serde(serialize_with = "crate::serde_util::rat_vec")]
    pub depressed: Vec<Rat>,
    #[serde(serialize_with = "crate::serde_util::opt_rat_vec")]
    pub original: Option<Vec<Rat>>,
    /// The point has integer coordinates on the original model (or on the depressed
    /// model when there is no original).
    pub integral: bool,
}

/// A rational point built from a rational root `r` of `f1`.
///
/// The surface contains the line `(r, s, -s)`; when `b = 0` it also contains
/// `(r, s0, s0)` for each root `s0` of `u^3 + a u`. Among these candidates the integral
/// pull-back of least height is returned; otherwise `(r, 0, 0)` with `integral = false`.
pub fn rational_point_from_f1_root(s: &DepressedSurface) -> Option<RationalPoint> {
    let r = s.f1_roots().into_iter().next()?;
    let mut candidates: Vec<[Rat; 3]> = Vec::new();
    if s.b().is_zero() {
        let inner = Poly::new(vec![Rat::zero(), s.a_rat(), Rat::zero(), Rat::one()]);
        for s0 in rational_roots_q(&inner) {
            candidates.push([r.clone(), s0.clone(), s0]);
        }
    }
    if let Some(sub) = s.provenance() {
        // (r, shift, -shift) pulls back to ((r - shift)/scale, 0, -2 shift/scale)
        let shift = crate::algebra::poly::int_to_rat(&sub.shift);
        candidates.push([r.clone(), shift.clone(), -shift]);
    }
    candidates.push([r.clone(), Rat::zero(), Rat::zero()]);

    let pull =
        |p: &[Rat; 3]| -> Option<Vec<Rat>> { s.provenance().map(|sub| p.iter().map(|v| sub.pull_back(v)).collect()) };
    let is_integral = |p: &[Rat; 3]| match pull(p) {
        Some(orig) => orig.iter().all(Rat::is_integer),
        None => p.iter().all(Rat::is_integer) && s.b().is_integer() && s.n().is_integer(),
    };
    for p in &candidates {
        debug_assert!(s.residual(p).is_zero());
    }
    // smallest integral pull-back, measured by the sum of absolute coordinates
    let height = |p: &[Rat; 3]| -> Rat { pull(p).unwrap_or_else(|| p.to_vec()).iter().map(|x| x.abs()).sum() };
    let chosen = candidates
        .iter()
        .filter(|p| is_integral(p))
        .min_by_key(|p| height(p))
        .unwrap_or_else(|| candidates.last().unwrap());
    Some(RationalPoint {
        root: r.clone(),
        depressed: chosen.to_vec(),
        original: pull(chosen),
        integral: is_integral(chosen),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::ratio;
    use crate::surface::{normalize, normalize_with_scale, CubicInput};
    use proptest::prelude::*;

    #[test]
    fn identity_examples() {
        assert!(verify_resolvent_identity(&DepressedSurface::from_ints(19, 8, 5)).unwrap());
        let u50 = DepressedSurface::from_ints(21, 0, 50);
        assert!(verify_resolvent_identity(&u50).unwrap());
        assert!(verify_resolvent_identity_at_root(&u50, &rat(2)).unwrap());
        assert!(verify_resolvent_identity_at_root(&u50, &rat(3)).is_err());
        assert!(verify_resolvent_identity(&DepressedSurface::from_a_d(-3, rat(2))).is_err());
    }

    #[test]
    fn identity_fails_for_f1() {
        // the identity is specific to f2: f1(ξ) is not divisible by g1
        let s = DepressedSurface::from_ints(19, 8, 5);
        let f1 = build_resolvents(&s).f1;
        let r = EtaleElement::generator(&f1).unwrap();
        let zero = r.from_rational(Rat::zero());
        let (xi, g1) = xi_and_g1(&s.a_rat(), &r);
        let v = LPoly::compose_into(&f1, &xi, &zero);
        assert!(!v.rem(&g1).unwrap().0.is_empty());
    }

    #[test]
    fn points_from_roots() {
        let u50 = DepressedSurface::from_ints(21, 0, 50);
        let p = rational_point_from_f1_root(&u50).unwrap();
        assert_eq!(p.depressed, vec![rat(2), rat(0), rat(0)]);
        assert!(p.integral);
        assert!(rational_point_from_f1_root(&DepressedSurface::from_ints(19, 8, 5)).is_none());
    }

    #[test]
    fn tetrahedral_points() {
        // shifted frame: f1 = x^3 - x - 6m, root r gives (r - 1, 0, 0)
        for m in [0i64, 1, 4, 10, 20, 35] {
            let s = normalize_with_scale(&CubicInput::tetrahedral(m), 1).unwrap();
            let p = rational_point_from_f1_root(&s).unwrap();
            let r = p.root.clone();
            assert_eq!(p.original.as_ref().unwrap(), &vec![&r - rat(1), rat(0), rat(0)], "m = {m}");
            assert!(p.integral);
        }
        // canonical frame: roots are 3 times larger, pull-back still integral
        let s = normalize(&CubicInput::tetrahedral(1)).unwrap();
        let p = rational_point_from_f1_root(&s).unwrap();
        assert!(p.integral);
        let input = CubicInput::tetrahedral(1);
        let orig: Vec<num_bigint::BigInt> = p.original.unwrap().iter().map(|x| x.to_integer()).collect();
        assert!(input.residual(&[orig[0].clone(), orig[1].clone(), orig[2].clone()]).is_zero());
    }

    #[test]
    fn non_integral_model_is_flagged() {
        // b = 1/2, n = 5/2: f1 = x^3 - 1 has the root 1 but the model is not integral
        let s = DepressedSurface::new(0, ratio(1, 2), ratio(5, 2));
        let p = rational_point_from_f1_root(&s).unwrap();
        assert_eq!(p.depressed, vec![rat(1), rat(0), rat(0)]);
        assert!(p.original.is_none());
        assert!(!p.integral);
    }

    #[test]
    fn no_roots_when_three_does_not_divide_a2() {
        // r must be 0 mod 3, and then f1(r) is 6 a2^3 mod 9, never 0
        for a2 in [1i64, 2, 4, -1] {
            for a1 in -4i64..5 {
                for n in -20i64..21 {
                    let s = normalize(&CubicInput::new(a2, a1, 0, n)).unwrap();
                    assert!(s.f1_roots().is_empty(), "{a2} {a1} {n}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn identity_random(a in -300i64..300, d in -300i64..300) {
            let s = DepressedSurface::from_a_d(a, rat(d));
            prop_assume!(!discriminant_triple(&s).delta1.is_zero());
            prop_assert!(verify_resolvent_identity(&s).unwrap());
        }
    }
}
