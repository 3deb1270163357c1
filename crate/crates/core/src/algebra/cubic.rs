//! Discriminants, rational roots and factorisation of low-degree polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::integer::{divisors, integer_sqrt};
use super::poly::{int_to_rat, rat, Poly, Rat};
use crate::error::{Error, Result};

/// Discriminant of a cubic `c3 x^3 + c2 x^2 + c1 x + c0`.
pub fn cubic_discriminant(f: &Poly) -> Result<Rat> {
    if f.degree() != Some(3) {
        return Err(Error::invalid(format!("cubic_discriminant: {f} is not a cubic")));
    }
    let (a, b, c, d) = (f.coeff(3), f.coeff(2), f.coeff(1), f.coeff(0));
    Ok(&b * &b * &c * &c - rat(4) * &a * &c * &c * &c - rat(4) * &b * &b * &b * &d - rat(27) * &a * &a * &d * &d
        + rat(18) * &a * &b * &c * &d)
}

/// Distinct integer roots of a monic integer polynomial, ascending.
pub fn rational_roots(f: &Poly) -> Result<Vec<BigInt>> {
    if !f.is_monic() || !f.has_integer_coeffs() {
        return Err(Error::invalid(format!("rational_roots expects a monic integer polynomial, got {f}")));
    }
    let coeffs: Vec<BigInt> = f.coeffs().iter().map(|c| c.numer().clone()).collect();
    Ok(integer_roots(&coeffs))
}

/// Integer roots of a monic polynomial given by ascending integer coefficients.
pub fn integer_roots(coeffs: &[BigInt]) -> Vec<BigInt> {
    let mut c = coeffs.to_vec();
    let mut roots = Vec::new();
    // strip x factors
    let zeros = c.iter().take_while(|x| x.is_zero()).count();
    if zeros > 0 && zeros < c.len() {
        roots.push(BigInt::zero());
        c.drain(..zeros);
    }
    match c.len().saturating_sub(1) {
        0 => {}
        1 => roots.push(-&c[0]),
        2 => roots.extend(quadratic_roots(&c[1], &c[0])),
        3 => roots.extend(cubic_roots_bisect(&c[2], &c[1], &c[0])),
        _ => roots.extend(roots_by_divisors(&c)),
    }
    roots.sort();
    roots.dedup();
    roots
}

fn eval_int(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn quadratic_roots(p: &BigInt, q: &BigInt) -> Vec<BigInt> {
    let disc = p * p - BigInt::from(4) * q;
    if disc.is_negative() {
        return Vec::new();
    }
    let (s, exact) = integer_sqrt(&disc).expect("nonnegative");
    if !exact {
        return Vec::new();
    }
    // p and s have the same parity since s^2 = p^2 - 4q
    vec![(-p - &s) / 2, (-p + &s) / 2]
}

/// Roots of a monic nonconstant-term polynomial via divisors of the constant term.
pub(crate) fn roots_by_divisors(coeffs: &[BigInt]) -> Vec<BigInt> {
    let c0 = &coeffs[0];
    if c0.is_zero() {
        return integer_roots(coeffs);
    }
    divisors(c0).into_iter().flat_map(|d| [-d.clone(), d]).filter(|x| eval_int(coeffs, x).is_zero()).collect()
}

/// Integer roots of `x^3 + p x^2 + q x + r` by bisection on the monotone pieces.
fn cubic_roots_bisect(p: &BigInt, q: &BigInt, r: &BigInt) -> Vec<BigInt> {
    let coeffs = [r.clone(), q.clone(), p.clone(), BigInt::one()];
    let f = |x: &BigInt| eval_int(&coeffs, x);
    // every real root lies in (-bound, bound)
    let bound = BigInt::one() + p.abs().max(q.abs()).max(r.abs());
    let disc = p * p - BigInt::from(3) * q;
    let mut pieces: Vec<(BigInt, BigInt, bool)> = Vec::new();
    if disc <= BigInt::zero() {
        pieces.push((-&bound, bound.clone(), true));
    } else {
        let (s, exact) = integer_sqrt(&disc).expect("positive");
        let s_ceil = if exact { s.clone() } else { &s + 1 };
        // critical points (-p -+ sqrt(disc)) / 3
        let lo_floor = (-p - &s_ceil).div_floor(&BigInt::from(3));
        let lo_ceil = -((p + &s).div_floor(&BigInt::from(3)));
        let hi_floor = (-p + &s).div_floor(&BigInt::from(3));
        let hi_ceil = -((p - &s_ceil).div_floor(&BigInt::from(3)));
        pieces.push((-&bound, lo_floor, true));
        pieces.push((lo_ceil, hi_floor, false));
        pieces.push((hi_ceil, bound.clone(), true));
    }
    let mut out = Vec::new();
    for (lo, hi, increasing) in pieces {
        if lo > hi {
            continue;
        }
        if let Some(x) = bisect_root(&f, lo, hi, increasing) {
            out.push(x);
        }
    }
    out
}

fn bisect_root(f: &impl Fn(&BigInt) -> BigInt, mut lo: BigInt, mut hi: BigInt, increasing: bool) -> Option<BigInt> {
    let sign = |x: &BigInt| if increasing { f(x) } else { -f(x) };
    // smallest x in [lo, hi] with sign(x) >= 0
    if sign(&hi).is_negative() {
        return None;
    }
    while lo < hi {
        let mid = (&lo + &hi).div_floor(&BigInt::from(2));
        if sign(&mid).is_negative() {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    f(&lo).is_zero().then_some(lo)
}

/// Distinct rational roots of a nonzero polynomial over Q, ascending.
pub fn rational_roots_q(f: &Poly) -> Vec<Rat> {
    let Some(deg) = f.degree() else {
        return Vec::new();
    };
    if deg == 0 {
        return Vec::new();
    }
    // clear denominators
    let lcm = f.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f.coeffs().iter().map(|c| (c * int_to_rat(&lcm)).to_integer()).collect();
    // substitute x = y / lc to get a monic integer polynomial in y
    let lc = ints[deg].clone();
    let mut monic = Vec::with_capacity(deg + 1);
    let mut lc_pow = BigInt::one();
    for i in (0..deg).rev() {
        monic.push(&ints[i] * &lc_pow);
        lc_pow *= &lc;
    }
    monic.reverse();
    monic.push(BigInt::one());
    let mut roots: Vec<Rat> = integer_roots(&monic).into_iter().map(|y| Rat::new(y, lc.clone())).collect();
    roots.sort();
    roots.dedup();
    roots
}

/// `f = unit * product of factors`, factors monic, with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    #[serde(serialize_with = "crate::serde_util::rat")]
    pub unit: Rat,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> Poly {
        self.factors.iter().fold(Poly::constant(self.unit.clone()), |acc, (p, e)| &acc * &p.pow(*e))
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Factor a cubic over Q.
pub fn factor_cubic(f: &Poly) -> Result<Factorization> {
    if f.degree() != Some(3) {
        return Err(Error::invalid(format!("factor_cubic: {f} is not a cubic")));
    }
    factor_small(f)
}

/// Factor over Q any nonzero polynomial whose part without rational roots has degree <= 3.
/// Such a part is irreducible since it has no linear factor.
pub fn factor_small(f: &Poly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::invalid("factorisation of the zero polynomial"));
    }
    let unit = f.leading();
    let mut rest = f.monic();
    let mut factors = Vec::new();
    for root in rational_roots_q(&rest) {
        let lin = Poly::linear_root(&root);
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&lin)?;
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        factors.push((lin, e));
    }
    match rest.degree() {
        Some(0) => {}
        Some(2) | Some(3) => factors.push((rest, 1)),
        Some(d) => return Err(Error::Unsupported(format!("factor of degree {d} without rational roots: {rest}"))),
        None => unreachable!(),
    }
    factors.sort_by(|(a, _), (b, _)| poly_order(a, b));
    let out = Factorization { unit, factors };
    if out.expand() != *f {
        return Err(Error::inconsistent("factorisation does not multiply back"));
    }
    Ok(out)
}

/// Ordering by degree, then ascending-power coefficients.
pub fn poly_order(a: &Poly, b: &Poly) -> std::cmp::Ordering {
    a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::ratio;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(cubic_discriminant(&Poly::from_ints(&[-6, -1, 0, 1])).unwrap(), rat(-968));
        assert_eq!(cubic_discriminant(&Poly::from_ints(&[0, 0, 0, 1])).unwrap(), rat(0));
        assert_eq!(cubic_discriminant(&Poly::from_ints(&[968, 36, 12, 1])).unwrap(), rat(-3888 * 242 * 26));
        assert!(cubic_discriminant(&Poly::from_ints(&[1, 1])).is_err());
    }

    #[test]
    fn rational_roots_examples() {
        assert_eq!(rational_roots(&Poly::from_ints(&[-50, 21, 0, 1])).unwrap(), ints(&[2]));
        assert_eq!(rational_roots(&Poly::from_ints(&[0, -1, 0, 1])).unwrap(), ints(&[-1, 0, 1]));
        assert!(rational_roots(&Poly::from_ints(&[19, 19, 0, 1])).unwrap().is_empty());
        assert!(rational_roots(&Poly::from_ints(&[1, 0, 2])).is_err());
    }

    #[test]
    fn repeated_and_quartic_roots() {
        // (x-2)^2 (x+3) = x^3 - x^2 - 8x + 12
        assert_eq!(rational_roots(&Poly::from_ints(&[12, -8, -1, 1])).unwrap(), ints(&[-3, 2]));
        // (x-1)(x+1)(x-5)(x^2+1)
        let f = &(&Poly::from_ints(&[-1, 0, 1]) * &Poly::from_ints(&[-5, 1])) * &Poly::from_ints(&[1, 0, 1]);
        assert_eq!(rational_roots(&f).unwrap(), ints(&[-1, 1, 5]));
    }

    #[test]
    fn factor_cubic_examples() {
        let f = Poly::from_ints(&[32, -4, 4, 7]);
        let fac = factor_cubic(&f).unwrap();
        assert_eq!(fac.unit, rat(7));
        assert_eq!(
            fac.factors,
            vec![(Poly::from_ints(&[2, 1]), 1), (Poly::new(vec![ratio(16, 7), ratio(-10, 7), rat(1)]), 1)]
        );
        let g = factor_cubic(&Poly::from_ints(&[0, -1, 0, 1])).unwrap();
        assert_eq!(g.factors.len(), 3);
        assert!(factor_cubic(&Poly::from_ints(&[19, 19, 0, 1])).unwrap().is_irreducible());
    }

    #[test]
    fn rational_roots_non_monic() {
        // (2x - 3)(3x + 1)
        let f = Poly::from_ints(&[-3, -7, 6]);
        assert_eq!(rational_roots_q(&f), vec![ratio(-1, 3), ratio(3, 2)]);
    }

    proptest! {
        #[test]
        fn bisection_agrees_with_divisor_search(p in -300i64..300, q in -3000i64..3000, r in -30000i64..30000) {
            prop_assume!(r != 0);
            let c = ints(&[r, q, p, 1]);
            let mut by_div = roots_by_divisors(&c);
            by_div.sort();
            by_div.dedup();
            prop_assert_eq!(integer_roots(&c), by_div);
        }

        #[test]
        fn bisection_finds_planted_roots(x in -200i64..200, y in -200i64..200, z in -200i64..200) {
            // (t - x)(t - y)(t - z)
            let p = -(x + y + z);
            let q = x * y + y * z + z * x;
            let r = -x * y * z;
            let mut want = ints(&[x, y, z]);
            want.sort();
            want.dedup();
            prop_assert_eq!(integer_roots(&ints(&[r, q, p, 1])), want);
        }

        #[test]
        fn factor_cubic_multiplies_back(c in prop::collection::vec(-50i64..50, 3), lead in 1i64..6) {
            let f = Poly::from_ints(&[c[0], c[1], c[2], lead]);
            let fac = factor_cubic(&f).unwrap();
            prop_assert_eq!(fac.expand(), f);
            for (g, _) in &fac.factors {
                if g.degree() == Some(2) {
                    let disc = g.coeff(1) * g.coeff(1) - rat(4) * g.coeff(0);
                    prop_assert!(!crate::algebra::integer::is_square_rat(&disc));
                }
                if g.degree() == Some(3) {
                    prop_assert!(rational_roots_q(g).is_empty());
                }
            }
        }

        #[test]
        fn depressed_shift_preserves_discriminant(p in -40i64..40, q in -400i64..400, r in -400i64..400) {
            let f = Poly::from_ints(&[r, q, p, 1]);
            let shifted = f.compose(&Poly::new(vec![ratio(-p, 3), rat(1)]));
            prop_assert!(shifted.coeff(2).is_zero());
            prop_assert_eq!(cubic_discriminant(&f).unwrap(), cubic_discriminant(&shifted).unwrap());
        }

        #[test]
        fn discriminant_scaling(a in -100i64..100, c in -100i64..100, k in 1i64..20) {
            let f = Poly::from_ints(&[c, a, 0, 1]);
            let g = Poly::from_ints(&[k * k * k * c, k * k * a, 0, 1]);
            let k6 = rat(k.pow(6));
            prop_assert_eq!(cubic_discriminant(&g).unwrap(), k6 * cubic_discriminant(&f).unwrap());
        }
    }
}
