//! Legendre and Hilbert symbols.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Invariant, Place};
use crate::algebra::integer::valuation;
use crate::algebra::{is_prime, Rat};
use crate::error::{Error, Result};

/// The Legendre symbol `(a/p)` by Euler's criterion.
pub fn legendre(a: &BigInt, p: &BigInt) -> Result<i8> {
    if p <= &BigInt::from(2u32) || !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not an odd prime")));
    }
    Ok(legendre_unchecked(a, p))
}

pub(crate) fn legendre_unchecked(a: &BigInt, p: &BigInt) -> i8 {
    let r = a.mod_floor(p);
    if r.is_zero() {
        return 0;
    }
    let e: BigInt = (p - 1u32) >> 1;
    if r.modpow(&e, p).is_one() {
        1
    } else {
        -1
    }
}

/// `x = p^v u` with `p ∤ u`.
fn split(x: &BigInt, p: &BigInt) -> (u32, BigInt) {
    let v = valuation(x, p);
    (v, x / p.pow(v))
}

/// A rational times the square of its denominator: same square class, integral.
fn integral_rep(q: &Rat) -> BigInt {
    q.numer() * q.denom()
}

/// The local invariant of the quaternion algebra `(a, b)` at `v`: zero iff
/// `z^2 = a x^2 + b y^2` has a nontrivial solution over the completion.
pub fn hilbert(a: &Rat, b: &Rat, v: &Place) -> Result<Invariant> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::invalid("Hilbert symbol slots must be nonzero"));
    }
    let (a, b) = (integral_rep(a), integral_rep(b));
    Ok(match v {
        Place::Real => Invariant::from_sign(a.is_positive() || b.is_positive()),
        Place::Finite(p) => Invariant::from_sign(hilbert_sign(&a, &b, p)),
    })
}

/// True iff `(a, b)_p = +1`, for nonzero integers.
fn hilbert_sign(a: &BigInt, b: &BigInt, p: &BigInt) -> bool {
    let (alpha, u) = split(a, p);
    let (beta, w) = split(b, p);
    if p == &BigInt::from(2u32) {
        let eps = |x: &BigInt| x.mod_floor(&BigInt::from(4u32)) == BigInt::from(3u32);
        let omega = |x: &BigInt| {
            let r = x.mod_floor(&BigInt::from(8u32));
            r == BigInt::from(3u32) || r == BigInt::from(5u32)
        };
        let odd = (eps(&u) && eps(&w)) ^ (alpha % 2 == 1 && omega(&w)) ^ (beta % 2 == 1 && omega(&u));
        return !odd;
    }
    let half: BigInt = (p - 1u32) >> 1;
    let mut sign = !(alpha % 2 == 1 && beta % 2 == 1 && half.is_odd());
    if beta % 2 == 1 && legendre_unchecked(&u, p) == -1 {
        sign = !sign;
    }
    if alpha % 2 == 1 && legendre_unchecked(&w, p) == -1 {
        sign = !sign;
    }
    sign
}
