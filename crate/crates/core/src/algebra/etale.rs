//! Étale algebras `Q[x]/(m)` of degree at most 3.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::Serialize;

use super::cubic::rational_roots_q;
use super::integer::is_square_rat;
use super::poly::{rat, resultant, Poly, Rat};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EtaleElement {
    modulus: Poly,
    value: Poly,
}

impl EtaleElement {
    /// Reduce `value` modulo `modulus`; the modulus must be monic, squarefree, of degree 1..=3.
    pub fn new(modulus: Poly, value: Poly) -> Result<Self> {
        check_modulus(&modulus)?;
        let value = value.rem(&modulus)?;
        Ok(EtaleElement { modulus, value })
    }

    pub fn constant(modulus: &Poly, c: Rat) -> Result<Self> {
        Self::new(modulus.clone(), Poly::constant(c))
    }

    /// The class of `x`.
    pub fn generator(modulus: &Poly) -> Result<Self> {
        Self::new(modulus.clone(), Poly::x())
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn value(&self) -> &Poly {
        &self.value
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// The rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<Rat> {
        self.value.is_constant().then(|| self.value.coeff(0))
    }

    fn lift(&self, v: Poly) -> Self {
        EtaleElement { modulus: self.modulus.clone(), value: v.rem(&self.modulus).expect("nonzero modulus") }
    }

    pub fn from_rational(&self, c: Rat) -> Self {
        self.lift(Poly::constant(c))
    }

    /// Evaluate a polynomial with rational coefficients at this element.
    pub fn apply(&self, p: &Poly) -> Self {
        p.coeffs()
            .iter()
            .rev()
            .fold(self.from_rational(Rat::zero()), |acc, c| &(&acc * self) + &self.from_rational(c.clone()))
    }

    pub fn inverse(&self) -> Result<Self> {
        let (g, s, _) = self.value.ext_gcd(&self.modulus);
        if g.is_zero() || !g.is_constant() {
            return Err(Error::NotInvertible);
        }
        Ok(self.lift(s))
    }

    /// `N(h(θ)) = Res(m, h)` for monic `m`.
    pub fn norm(&self) -> Rat {
        if self.value.is_zero() {
            return Rat::zero();
        }
        resultant(&self.modulus, &self.value).expect("nonzero operands")
    }

    pub fn trace(&self) -> Rat {
        // trace of multiplication by the element on the power basis
        let n = self.degree();
        let x = EtaleElement::generator(&self.modulus).expect("valid modulus");
        let mut basis = self.from_rational(Rat::one());
        let mut tr = Rat::zero();
        for i in 0..n {
            tr += (&basis * self).value.coeff(i);
            basis = &basis * &x;
        }
        tr
    }

    /// Square test, implemented for algebras of degree at most 2.
    pub fn is_square(&self) -> Option<bool> {
        match self.degree() {
            1 => Some(is_square_rat(&self.value.coeff(0))),
            2 => Some(self.is_square_deg2()),
            _ => None,
        }
    }

    fn is_square_deg2(&self) -> bool {
        let roots = rational_roots_q(&self.modulus);
        if !roots.is_empty() {
            // split algebra Q x Q
            return roots.iter().all(|r| is_square_rat(&self.value.eval(r)));
        }
        // θ = (-p + √D)/2 for m = x^2 + p x + q, D = p^2 - 4q
        let p = self.modulus.coeff(1);
        let q = self.modulus.coeff(0);
        let disc = &p * &p - rat(4) * &q;
        let (c0, c1) = (self.value.coeff(0), self.value.coeff(1));
        let half = Rat::new(1.into(), 2.into());
        let u = &c0 - &c1 * &p * &half;
        let v = &c1 * &half;
        if v.is_zero() {
            return is_square_rat(&u) || (!u.is_zero() && is_square_rat(&(&u / &disc)));
        }
        let norm = &u * &u - &disc * &v * &v;
        if !is_square_rat(&norm) {
            return false;
        }
        let c = sqrt_rat(&norm);
        [&u + &c, &u - &c].iter().any(|w| {
            let w = w * &half;
            !w.is_zero() && is_square_rat(&w)
        })
    }
}

/// Square root of a rational known to be a square.
pub(crate) fn sqrt_rat(q: &Rat) -> Rat {
    let n = super::integer::integer_sqrt(q.numer()).expect("square").0;
    let d = super::integer::integer_sqrt(q.denom()).expect("square").0;
    Rat::new(n, d)
}

fn check_modulus(m: &Poly) -> Result<()> {
    match m.degree() {
        Some(1..=3) => {}
        _ => return Err(Error::invalid(format!("étale modulus {m} must have degree 1..=3"))),
    }
    if !m.is_monic() {
        return Err(Error::invalid(format!("étale modulus {m} is not monic")));
    }
    if !m.is_squarefree() {
        return Err(Error::invalid(format!("étale modulus {m} is not squarefree")));
    }
    Ok(())
}

fn same_modulus(a: &EtaleElement, b: &EtaleElement) {
    assert_eq!(a.modulus, b.modulus, "étale elements from different algebras");
}

impl Add for &EtaleElement {
    type Output = EtaleElement;
    fn add(self, rhs: &EtaleElement) -> EtaleElement {
        same_modulus(self, rhs);
        self.lift(&self.value + &rhs.value)
    }
}

impl Sub for &EtaleElement {
    type Output = EtaleElement;
    fn sub(self, rhs: &EtaleElement) -> EtaleElement {
        same_modulus(self, rhs);
        self.lift(&self.value - &rhs.value)
    }
}

impl Mul for &EtaleElement {
    type Output = EtaleElement;
    fn mul(self, rhs: &EtaleElement) -> EtaleElement {
        same_modulus(self, rhs);
        self.lift(&self.value * &rhs.value)
    }
}

impl Neg for &EtaleElement {
    type Output = EtaleElement;
    fn neg(self) -> EtaleElement {
        self.lift(-&self.value)
    }
}

impl fmt::Display for EtaleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod ({})", self.value.display_in("θ"), self.modulus.display_in("θ"))
    }
}
