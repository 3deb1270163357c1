//! Integer primitives: square roots, primality, factorisation and square classes.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default trial-division bound used before switching to Pollard rho.
pub const DEFAULT_TRIAL_BOUND: u64 = 100_000;

/// `(floor(sqrt(z)), z is a perfect square)`.
pub fn integer_sqrt(z: &BigInt) -> Result<(BigInt, bool)> {
    if z.is_negative() {
        return Err(Error::invalid(format!("integer_sqrt of negative value {z}")));
    }
    let root = z.sqrt();
    let exact = &root * &root == *z;
    Ok((root, exact))
}

/// True iff `z` is the square of an integer (negative values are not).
pub fn is_square_int(z: &BigInt) -> bool {
    !z.is_negative() && integer_sqrt(z).map(|(_, e)| e).unwrap_or(false)
}

/// True iff `q` is the square of a rational. Zero counts as a square.
pub fn is_square_rat(q: &BigRational) -> bool {
    // reduced fraction with positive denominator: square iff both parts are
    is_square_int(q.numer()) && is_square_int(q.denom())
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    debug_assert!(!n.is_zero());
    let mut m = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// p-adic valuation of a nonzero rational.
pub fn valuation_rat(q: &BigRational, p: &BigInt) -> i64 {
    valuation(q.numer(), p) as i64 - valuation(q.denom(), p) as i64
}

const SMALL_PRIMES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Miller-Rabin with the first 13 prime bases, which is deterministic below 3.3e24.
/// Above that bound the answer is correct with overwhelming probability.
pub fn is_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    for &p in &SMALL_PRIMES {
        let p = BigInt::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let n_minus_one = n - &one;
    let mut d = n_minus_one.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &SMALL_PRIMES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorisation of `|n|`, sorted by prime. `n` must be nonzero.
pub fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    factorize_with(n, DEFAULT_TRIAL_BOUND)
}

/// Trial division up to `trial_bound`, then primality test / Pollard rho on the cofactor.
pub fn factorize_with(n: &BigInt, trial_bound: u64) -> Vec<(BigInt, u32)> {
    assert!(!n.is_zero(), "factorize(0)");
    let mut m = n.abs();
    let mut out: Vec<(BigInt, u32)> = Vec::new();

    let push = |p: BigInt, e: u32, out: &mut Vec<(BigInt, u32)>| {
        if let Some(slot) = out.iter_mut().find(|(q, _)| *q == p) {
            slot.1 += e;
        } else {
            out.push((p, e));
        }
    };

    for p in [2u64, 3] {
        let pb = BigInt::from(p);
        let mut e = 0;
        while (&m % &pb).is_zero() {
            m /= &pb;
            e += 1;
        }
        if e > 0 {
            push(pb, e, &mut out);
        }
    }
    let mut d: u64 = 5;
    let mut step = 2;
    while d <= trial_bound {
        let db = BigInt::from(d);
        if &db * &db > m {
            break;
        }
        let mut e = 0;
        while (&m % &db).is_zero() {
            m /= &db;
            e += 1;
        }
        if e > 0 {
            push(db, e, &mut out);
        }
        d += step;
        step = 6 - step;
    }

    let mut stack = vec![(m, 1u32)];
    while let Some((c, mult)) = stack.pop() {
        if c.is_one() {
            continue;
        }
        if is_prime(&c) {
            push(c, mult, &mut out);
            continue;
        }
        let (root, exact) = integer_sqrt(&c).expect("positive");
        if exact {
            stack.push((root, mult * 2));
            continue;
        }
        let f = pollard_brent(&c);
        let g = &c / &f;
        stack.push((f, mult));
        stack.push((g, mult));
    }
    out.sort();
    out
}

/// A nontrivial factor of an odd composite `n` that is not a perfect square.
fn pollard_brent(n: &BigInt) -> BigInt {
    let one = BigInt::one();
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut y = BigInt::from(2);
        let mut r: u64 = 1;
        let mut q = BigInt::one();
        let mut g = BigInt::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        let m = 128u64;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    q = (&q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if g != *n {
            return g;
        }
        c += 1;
    }
}

/// All positive divisors of `|n|`, ascending.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in factorize(n) {
        let current = divs.clone();
        let mut pk = BigInt::one();
        for _ in 0..e {
            pk *= &p;
            divs.extend(current.iter().map(|d| d * &pk));
        }
    }
    divs.sort();
    divs
}

/// An element of Q*/(Q*)^2 represented by its squarefree integer, plus the zero class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SquareClass {
    Zero,
    Class(BigInt),
}

impl SquareClass {
    pub fn zero() -> Self {
        SquareClass::Zero
    }

    pub fn one() -> Self {
        SquareClass::Class(BigInt::one())
    }

    pub fn representative(&self) -> BigInt {
        match self {
            SquareClass::Zero => BigInt::zero(),
            SquareClass::Class(s) => s.clone(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, SquareClass::Class(s) if s.is_one())
    }

    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        match (self, other) {
            (SquareClass::Class(a), SquareClass::Class(b)) => {
                let g = a.gcd(b);
                SquareClass::Class((a / &g) * (b / &g))
            }
            _ => SquareClass::Zero,
        }
    }

    /// Sign and primes of the squarefree representative: the F2-vector of the class.
    pub fn support(&self) -> (bool, Vec<BigInt>) {
        match self {
            SquareClass::Zero => (false, Vec::new()),
            SquareClass::Class(s) => {
                if s.abs().is_one() {
                    return (s.is_negative(), Vec::new());
                }
                let primes = factorize(s).into_iter().map(|(p, _)| p).collect();
                (s.is_negative(), primes)
            }
        }
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.representative())
    }
}

impl Serialize for SquareClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rep = self.representative();
        match rep.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&rep.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for SquareClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let n: BigInt = match &v {
            serde_json::Value::Number(n) => n.to_string().parse().map_err(serde::de::Error::custom)?,
            serde_json::Value::String(s) => s.parse().map_err(serde::de::Error::custom)?,
            _ => return Err(serde::de::Error::custom("square class must be an integer")),
        };
        Ok(if n.is_zero() { SquareClass::Zero } else { SquareClass::Class(n) })
    }
}

/// Squarefree part of `q`: the integer `s` with `q/s` a rational square.
pub fn square_class(q: &BigRational) -> Result<SquareClass> {
    if q.is_zero() {
        return Err(Error::invalid("square_class(0): use SquareClass::zero() for the zero class"));
    }
    let m = q.numer() * q.denom();
    Ok(SquareClass::Class(squarefree_part(&m)))
}

/// Signed squarefree part of a nonzero integer.
pub fn squarefree_part(m: &BigInt) -> BigInt {
    let mut s: BigInt = factorize(m).into_iter().filter(|(_, e)| e % 2 == 1).map(|(p, _)| p).product();
    if m.is_negative() {
        s = -s;
    }
    s
}
