//! Roots of small-degree polynomials over F_p.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Primes up to this bound are handled by evaluating at every residue.
const EXHAUSTIVE_BOUND: u64 = 1000;

/// Dense polynomial over F_p, ascending, no trailing zeros.
type FpPoly = Vec<BigInt>;

fn trim(mut f: FpPoly) -> FpPoly {
    while f.last().is_some_and(Zero::is_zero) {
        f.pop();
    }
    f
}

fn reduce(f: &[BigInt], p: &BigInt) -> FpPoly {
    trim(f.iter().map(|c| c.mod_floor(p)).collect())
}

fn inv(x: &BigInt, p: &BigInt) -> BigInt {
    x.modpow(&(p - 2u32), p)
}

fn mul(f: &[BigInt], g: &[BigInt], p: &BigInt) -> FpPoly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); f.len() + g.len() - 1];
    for (i, x) in f.iter().enumerate() {
        for (j, y) in g.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    reduce(&out, p)
}

fn rem(f: &[BigInt], g: &[BigInt], p: &BigInt) -> FpPoly {
    let mut r = reduce(f, p);
    let dg = g.len() - 1;
    let lead = inv(&g[dg], p);
    while r.len() > dg {
        let k = r.len() - 1 - dg;
        let c = (r.last().unwrap() * &lead).mod_floor(p);
        for (i, gc) in g.iter().enumerate() {
            r[k + i] = (&r[k + i] - &c * gc).mod_floor(p);
        }
        r = trim(r);
    }
    r
}

fn gcd(f: &[BigInt], g: &[BigInt], p: &BigInt) -> FpPoly {
    let (mut a, mut b) = (reduce(f, p), reduce(g, p));
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = std::mem::replace(&mut b, r);
    }
    monic(a, p)
}

fn monic(f: FpPoly, p: &BigInt) -> FpPoly {
    match f.last() {
        Some(l) => {
            let l = inv(l, p);
            f.iter().map(|c| (c * &l).mod_floor(p)).collect()
        }
        None => f,
    }
}

/// `base^e mod (m, p)`.
fn pow_mod(base: &[BigInt], e: &BigInt, m: &[BigInt], p: &BigInt) -> FpPoly {
    let mut result = vec![BigInt::one()];
    let mut b = rem(base, m, p);
    for i in 0..e.bits() {
        if e.bit(i) {
            result = rem(&mul(&result, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
    }
    result
}

fn sub(f: &[BigInt], g: &[BigInt], p: &BigInt) -> FpPoly {
    let n = f.len().max(g.len());
    let out: Vec<BigInt> =
        (0..n).map(|i| f.get(i).cloned().unwrap_or_default() - g.get(i).cloned().unwrap_or_default()).collect();
    reduce(&out, p)
}

/// Split a monic squarefree product of distinct linear factors, collecting its roots.
fn split_linear(h: FpPoly, p: &BigInt, out: &mut Vec<BigInt>) {
    match h.len() {
        0 | 1 => {}
        2 => out.push((-&h[0]).mod_floor(p)),
        _ => {
            let half: BigInt = (p - 1u32) >> 1;
            let mut c = BigInt::zero();
            loop {
                let t = pow_mod(&[c.clone(), BigInt::one()], &half, &h, p);
                let g = gcd(&h, &sub(&t, &[BigInt::one()], p), p);
                if g.len() > 1 && g.len() < h.len() {
                    let rest = div_exact(&h, &g, p);
                    split_linear(g, p, out);
                    split_linear(rest, p, out);
                    return;
                }
                c += 1u32;
            }
        }
    }
}

fn div_exact(f: &[BigInt], g: &[BigInt], p: &BigInt) -> FpPoly {
    let mut r = reduce(f, p);
    let dg = g.len() - 1;
    let lead = inv(&g[dg], p);
    let mut q = vec![BigInt::zero(); r.len() - dg];
    while r.len() > dg {
        let k = r.len() - 1 - dg;
        let c = (r.last().unwrap() * &lead).mod_floor(p);
        for (i, gc) in g.iter().enumerate() {
            r[k + i] = (&r[k + i] - &c * gc).mod_floor(p);
        }
        q[k] = c;
        r = trim(r);
    }
    trim(q)
}

/// Distinct roots in `[0, p)` of `f` (integer coefficients, ascending) modulo the prime `p`,
/// sorted. The zero polynomial has every residue as a root; callers avoid it.
pub(crate) fn roots_mod_p(f: &[BigInt], p: &BigInt) -> Vec<BigInt> {
    let f = reduce(f, p);
    if f.is_empty() {
        return num_iter(p).collect();
    }
    if p <= &BigInt::from(EXHAUSTIVE_BOUND) {
        return num_iter(p).filter(|x| eval(&f, x, p).is_zero()).collect();
    }
    // gcd with x^p - x keeps exactly the split part
    let xp = pow_mod(&[BigInt::zero(), BigInt::one()], p, &f, p);
    let h = gcd(&f, &sub(&xp, &[BigInt::zero(), BigInt::one()], p), p);
    let mut out = Vec::new();
    split_linear(h, p, &mut out);
    out.sort();
    out
}

fn num_iter(p: &BigInt) -> impl Iterator<Item = BigInt> + '_ {
    std::iter::successors(Some(BigInt::zero()), |x| Some(x + 1u32)).take_while(move |x| x < p)
}

pub(crate) fn eval(f: &[BigInt], x: &BigInt, p: &BigInt) -> BigInt {
    f.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(p))
}
