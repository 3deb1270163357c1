//! Effective enumeration of the integers `n` where the classification gives no answer.
//!
//! With `d = 3b - n`, `P = 4a^3 + 27d^2` and `Q = 4a^3 + 3d^2`:
//! * `Δ1 = -P` is a square only if `27 d^2 <= -4a^3`;
//! * `Δ2 = -243 P Q` is a square only if `Q <= 0 <= P`, i.e. `-4a^3/27 <= d^2 <= -4a^3/3`;
//! * `Δ3 = 243 Q` is a square only if `3 | a` and `w^2 - d^2 = 36 (a/3)^3` for some integer `w`;
//! * `X` is singular iff `P = 0` or `Q = 0`.
//!
//! Reducibility of `f2` has no effective bound, so it is searched in a window only.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{discriminant_triple, DepressedSurface};
use crate::algebra::cubic::integer_roots;
use crate::algebra::integer::{divisors, integer_sqrt, is_square_int};
use crate::algebra::poly::int_to_rat;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionalSet {
    #[serde(serialize_with = "crate::serde_util::int")]
    pub a: BigInt,
    #[serde(serialize_with = "crate::serde_util::int")]
    pub b: BigInt,
    #[serde(serialize_with = "crate::serde_util::int_vec")]
    pub singular_n: Vec<BigInt>,
    #[serde(serialize_with = "crate::serde_util::int_vec")]
    pub delta1_square_n: Vec<BigInt>,
    #[serde(serialize_with = "crate::serde_util::int_vec")]
    pub delta2_square_n: Vec<BigInt>,
    #[serde(serialize_with = "crate::serde_util::int_vec")]
    pub delta3_square_n: Vec<BigInt>,
    #[serde(serialize_with = "crate::serde_util::int_vec")]
    pub f2_reducible_n: Vec<BigInt>,
    /// Never true: reducibility of `f2` has no effective bound.
    pub f2_complete: bool,
    /// The f2 list contains every `n` with `|n| <= search_bound` and every `n` admitting a
    /// root `|x| <= search_bound`.
    pub f2_window_complete: bool,
    #[serde(serialize_with = "crate::serde_util::int")]
    pub search_bound: BigInt,
}

impl ExceptionalSet {
    /// Union of all lists, sorted.
    pub fn all(&self) -> Vec<BigInt> {
        let mut v: Vec<BigInt> = [
            &self.singular_n,
            &self.delta1_square_n,
            &self.delta2_square_n,
            &self.delta3_square_n,
            &self.f2_reducible_n,
        ]
        .into_iter()
        .flatten()
        .cloned()
        .collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn contains(&self, n: &BigInt) -> bool {
        self.all().binary_search(n).is_ok()
    }
}

pub fn exceptional_set(a: &BigInt, b: &BigInt, bound: &BigInt) -> Result<ExceptionalSet> {
    exceptional_set_with_window(a, b, bound, 1)
}

/// As [`exceptional_set`], with every derived enumeration window multiplied by `window`.
/// Larger windows brute-force the provably complete lists and must not change them.
pub fn exceptional_set_with_window(a: &BigInt, b: &BigInt, bound: &BigInt, window: u32) -> Result<ExceptionalSet> {
    if a.is_zero() {
        return Err(Error::invalid("exceptional_set requires a != 0 (a = 0 is the sum-of-cubes case)"));
    }
    if bound.is_negative() {
        return Err(Error::invalid("search bound must be nonnegative"));
    }
    if window == 0 {
        return Err(Error::invalid("window factor must be positive"));
    }
    let w = BigInt::from(window);
    let a3 = a * a * a;
    let minus_4a3 = -BigInt::from(4) * &a3;
    let to_n = |d: &BigInt| BigInt::from(3) * b - d;
    let p_of = |d: &BigInt| BigInt::from(4) * &a3 + BigInt::from(27) * d * d;
    let q_of = |d: &BigInt| BigInt::from(4) * &a3 + BigInt::from(3) * d * d;

    // singular: P = 0 or Q = 0
    let mut singular = Vec::new();
    for k in [27u32, 3] {
        if minus_4a3.is_positive() && (&minus_4a3 % k).is_zero() {
            let (d, exact) = integer_sqrt(&(&minus_4a3 / k))?;
            if exact {
                singular.push(to_n(&d));
                singular.push(to_n(&-d));
            }
        }
    }
    if window > 1 && minus_4a3.is_positive() {
        let top = &w * integer_sqrt(&minus_4a3)?.0;
        let mut d = -top.clone();
        while d <= top {
            if (p_of(&d) * q_of(&d)).is_zero() {
                singular.push(to_n(&d));
            }
            d += 1;
        }
    }

    // Δ1 = -P >= 0 needs 27 d^2 <= -4a^3
    let mut delta1 = Vec::new();
    if !minus_4a3.is_negative() {
        let top = &w * integer_sqrt(&(&minus_4a3 / 27))?.0;
        let mut d = -top.clone();
        while d <= top {
            if is_square_int(&-p_of(&d)) {
                delta1.push(to_n(&d));
            }
            d += 1;
        }
    }

    // Δ2 >= 0 needs Q <= 0 <= P
    let mut delta2 = Vec::new();
    if minus_4a3.is_positive() {
        let top = &w * integer_sqrt(&(&minus_4a3 / 3))?.0;
        let mut d = if window > 1 { -top.clone() } else { BigInt::zero() };
        while d <= top {
            let v = BigInt::from(-243) * p_of(&d) * q_of(&d);
            if is_square_int(&v) {
                delta2.push(to_n(&d));
                if window == 1 && !d.is_zero() {
                    delta2.push(to_n(&-d.clone()));
                }
            }
            d += 1;
        }
    }

    // Δ3 = 243 Q, or 0 when P = 0
    let mut delta3: Vec<BigInt> = Vec::new();
    let (a3_quot, a3_rem) = a.div_rem(&BigInt::from(3));
    if a3_rem.is_zero() {
        let big_n = BigInt::from(36) * &a3_quot * &a3_quot * &a3_quot;
        if window == 1 {
            // (w - d)(w + d) = N with both factors of equal parity
            for e in divisors(&big_n) {
                for e in [e.clone(), -e] {
                    let f = &big_n / &e;
                    if (&f - &e).is_even() {
                        let d = (&f - &e) / 2;
                        delta3.push(to_n(&d));
                    }
                }
            }
        } else {
            let top = &w * (big_n.abs() / 2u32 + 1u32);
            let mut d = -top.clone();
            while d <= top {
                if is_square_int(&(BigInt::from(243) * q_of(&d))) {
                    delta3.push(to_n(&d));
                }
                d += 1;
            }
        }
    }
    // P = 0 makes Δ3 = 0
    for n in &singular {
        let d = BigInt::from(3) * b - n;
        if p_of(&d).is_zero() {
            delta3.push(n.clone());
        }
    }

    // f2(x) = x^3 - 12a x^2 + 36a^2 x + 27d^2 + 4a^3, searched in both directions
    let mut f2_red = Vec::new();
    let mut n = -bound.clone();
    while &n <= bound {
        let d = BigInt::from(3) * b - &n;
        let coeffs = [
            BigInt::from(27) * &d * &d + BigInt::from(4) * &a3,
            BigInt::from(36) * a * a,
            BigInt::from(-12) * a,
            BigInt::from(1),
        ];
        if !integer_roots(&coeffs).is_empty() {
            f2_red.push(n.clone());
        }
        n += 1;
    }
    // a root x gives 27 d^2 = -x (x - 6a)^2 - 4a^3
    let six_a = BigInt::from(6) * a;
    let mut x = -bound.clone();
    while &x <= bound {
        let rhs = -&x * (&x - &six_a) * (&x - &six_a) - BigInt::from(4) * &a3;
        if !rhs.is_negative() && (&rhs % 27u32).is_zero() {
            let (d, exact) = integer_sqrt(&(rhs / 27))?;
            if exact {
                f2_red.push(to_n(&d));
                f2_red.push(to_n(&-d));
            }
        }
        x += 1;
    }

    let finish = |mut v: Vec<BigInt>| {
        v.sort();
        v.dedup();
        v
    };
    let out = ExceptionalSet {
        a: a.clone(),
        b: b.clone(),
        singular_n: finish(singular),
        delta1_square_n: finish(delta1),
        delta2_square_n: finish(delta2),
        delta3_square_n: finish(delta3),
        f2_reducible_n: finish(f2_red),
        f2_complete: false,
        f2_window_complete: true,
        search_bound: bound.clone(),
    };
    out.self_check()?;
    Ok(out)
}

impl ExceptionalSet {
    /// Re-derive each listed membership from the discriminant triple.
    fn self_check(&self) -> Result<()> {
        let surface = |n: &BigInt| DepressedSurface::new(self.a.clone(), int_to_rat(&self.b), int_to_rat(n));
        for n in &self.singular_n {
            if surface(n).is_smooth() {
                return Err(Error::inconsistent(format!("n = {n} listed singular but smooth")));
            }
        }
        type SquareFlag = fn(&super::DiscriminantTriple) -> bool;
        let checks: [(&Vec<BigInt>, SquareFlag); 3] = [
            (&self.delta1_square_n, |t| t.delta1_square),
            (&self.delta2_square_n, |t| t.delta2_square),
            (&self.delta3_square_n, |t| t.delta3_square),
        ];
        for (list, test) in checks {
            for n in list {
                if !test(&discriminant_triple(&surface(n))) {
                    return Err(Error::inconsistent(format!("n = {n} listed but not a square")));
                }
            }
        }
        Ok(())
    }
}
