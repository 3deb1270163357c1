//! Search for residues that lift to Z_p-points.
//!
//! A residue `x` lifts when `v_p(G(x)) > 2 min_i v_p(∂G/∂u_i (x))`: Newton iteration then
//! converges p-adically to a root congruent to `x`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::fp::roots_mod_p;
use crate::algebra::integer::valuation;
use crate::algebra::is_prime;
use crate::error::{Error, Result};
use crate::surface::CubicInput;

/// Above this prime only a bounded number of `(u1, u2)` pairs is tried at level one.
const EXHAUSTIVE_PRIME: u64 = 1000;
const PAIR_BUDGET: usize = 4096;
/// Largest solution set carried from one level to the next.
const LIFT_BUDGET: usize = 200_000;
/// Largest number of candidate lifts examined when moving up one level.
const LIFT_WORK: u64 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftablePoint {
    #[serde(serialize_with = "crate::serde_util::int")]
    pub p: BigInt,
    /// The point is a residue modulo `p^level`.
    pub level: u32,
    #[serde(serialize_with = "crate::serde_util::int_vec")]
    pub point: Vec<BigInt>,
    /// `v_p(G(point))`, absent when `G(point) = 0` exactly.
    pub value_valuation: Option<u32>,
    pub partial_valuation: u32,
}

impl LiftablePoint {
    /// Recompute valuations at `point` and test the Newton criterion.
    fn evaluate(input: &CubicInput, p: &BigInt, level: u32, point: [BigInt; 3]) -> Option<LiftablePoint> {
        let partial =
            point.iter().map(|u| input.f_prime(u)).filter(|d| !d.is_zero()).map(|d| valuation(&d, p)).min()?;
        let value = input.residual(&point);
        let value_valuation = (!value.is_zero()).then(|| valuation(&value, p));
        if value_valuation.is_some_and(|v| v <= 2 * partial) {
            return None;
        }
        Some(LiftablePoint { p: p.clone(), level, point: point.to_vec(), value_valuation, partial_valuation: partial })
    }

    /// True iff the stored data is a residue mod `p^level` on the surface mod `p^level`
    /// whose valuations are as claimed and satisfy the criterion.
    pub fn revalidate(&self, input: &CubicInput) -> bool {
        let modulus = self.p.pow(self.level);
        let Ok(point) = <[BigInt; 3]>::try_from(self.point.clone()) else {
            return false;
        };
        point.iter().all(|u| u.sign() != num_bigint::Sign::Minus && u < &modulus)
            && input.residual(&point).mod_floor(&modulus).is_zero()
            && LiftablePoint::evaluate(input, &self.p, self.level, point).as_ref() == Some(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum SearchOutcome {
    Found(LiftablePoint),
    /// No solution at all modulo `p^level`; the residue search at that level was complete.
    NoSolutions {
        level: u32,
    },
    /// Nothing found up to `level`, and no insolubility proof.
    GaveUp {
        level: u32,
    },
}

/// Solutions mod p in lexicographic order. The flag is false when the search was truncated.
fn level_one(input: &CubicInput, p: &BigInt) -> (Vec<[BigInt; 3]>, bool) {
    let small = p.to_u64().filter(|&q| q <= EXHAUSTIVE_PRIME);
    let buckets: Vec<Vec<BigInt>> = match small {
        Some(q) => {
            let mut b = vec![Vec::new(); q as usize];
            for u in 0..q {
                let u = BigInt::from(u);
                b[input.f(&u).mod_floor(p).to_usize().unwrap()].push(u);
            }
            b
        }
        None => Vec::new(),
    };
    let roots_for = |target: &BigInt| -> Vec<BigInt> {
        if small.is_some() {
            buckets[target.mod_floor(p).to_usize().unwrap()].clone()
        } else {
            let c = [&input.a0 - target, input.a1.clone(), input.a2.clone(), BigInt::from(1)];
            roots_mod_p(&c, p)
        }
    };
    let limit = if small.is_some() { usize::MAX } else { PAIR_BUDGET };
    let mut out = Vec::new();
    let mut pairs = 0usize;
    let mut u1 = BigInt::zero();
    while &u1 < p {
        let f1 = input.f(&u1);
        let mut u2 = BigInt::zero();
        while &u2 < p {
            if pairs == limit {
                return (out, false);
            }
            pairs += 1;
            let target = &input.n - &f1 - input.f(&u2);
            for u3 in roots_for(&target) {
                out.push([u1.clone(), u2.clone(), u3]);
            }
            if small.is_none() && !out.is_empty() {
                // a large prime: stop at the first row with solutions
                return (out, false);
            }
            u2 += 1u32;
        }
        u1 += 1u32;
    }
    (out, true)
}

pub(crate) fn search(input: &CubicInput, p: &BigInt, depth: u32) -> SearchOutcome {
    let (mut solutions, mut complete) = level_one(input, p);
    let mut level = 1;
    loop {
        if solutions.is_empty() && complete {
            return SearchOutcome::NoSolutions { level };
        }
        for x in &solutions {
            if let Some(pt) = LiftablePoint::evaluate(input, p, level, x.clone()) {
                return SearchOutcome::Found(pt);
            }
        }
        let q = p.to_u64().unwrap_or(u64::MAX);
        let work = q.saturating_pow(3).saturating_mul(solutions.len() as u64);
        if level == depth || !complete || work > LIFT_WORK {
            return SearchOutcome::GaveUp { level };
        }
        let step = p.pow(level);
        level += 1;
        let modulus = &step * p;
        let mut next = Vec::new();
        'lift: for x in &solutions {
            for t in 0..q * q * q {
                let digits = [t / (q * q), t / q % q, t % q];
                let y: [BigInt; 3] = std::array::from_fn(|i| &x[i] + &step * digits[i]);
                if input.residual(&y).mod_floor(&modulus).is_zero() {
                    next.push(y);
                    if next.len() > LIFT_BUDGET {
                        complete = false;
                        break 'lift;
                    }
                }
            }
        }
        next.sort();
        solutions = next;
    }
}

/// The lexicographically first residue, mod `p` then `p^2` and so on up to `p^depth`, that
/// passes the Newton criterion.
pub fn find_liftable_point(input: &CubicInput, p: &BigInt, depth: u32) -> Result<Option<LiftablePoint>> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    if depth == 0 {
        return Err(Error::invalid("depth must be at least 1"));
    }
    Ok(match search(input, p, depth) {
        SearchOutcome::Found(pt) => Some(pt),
        _ => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn pt(v: [i64; 3]) -> [BigInt; 3] {
        v.map(BigInt::from)
    }

    #[test]
    fn tetrahedral_fixture_points() {
        // m = 2 mod 5: the residue (1, 1, 0) is smooth with first partial 11
        let t = CubicInput::tetrahedral(2);
        assert_eq!(t.f_prime(&big(1)), big(11));
        let fixture = LiftablePoint::evaluate(&t, &big(5), 1, pt([1, 1, 0])).unwrap();
        assert_eq!(fixture.partial_valuation, 0);
        let found = find_liftable_point(&t, &big(5), 4).unwrap().unwrap();
        assert!(found.revalidate(&t));
        assert_eq!(found.point, pt([0, 1, 1]).to_vec());

        // m = 3 mod 7: the residue (3, 0, 0)
        let t = CubicInput::tetrahedral(3);
        assert!(LiftablePoint::evaluate(&t, &big(7), 1, pt([3, 0, 0])).is_some());
        let found = find_liftable_point(&t, &big(7), 4).unwrap().unwrap();
        assert!(found.revalidate(&t));
    }

    #[test]
    fn rejects_composite() {
        assert!(find_liftable_point(&CubicInput::sum_of_cubes(4), &big(9), 2).is_err());
        assert!(find_liftable_point(&CubicInput::sum_of_cubes(4), &big(3), 0).is_err());
    }

    #[test]
    fn cubes_at_three() {
        // every residue is singular mod 3; n = 4 has no solution mod 9
        let c = CubicInput::sum_of_cubes(4);
        assert_eq!(search(&c, &big(3), 4), SearchOutcome::NoSolutions { level: 2 });
        // n = 6: every residue mod 3 fails the criterion, so depth 1 proves nothing
        let c = CubicInput::sum_of_cubes(6);
        assert_eq!(search(&c, &big(3), 1), SearchOutcome::GaveUp { level: 1 });
        let found = find_liftable_point(&c, &big(3), 4).unwrap().unwrap();
        assert!(found.level >= 2);
        assert!(found.revalidate(&c));
    }

    #[test]
    fn large_prime_search() {
        let t = CubicInput::tetrahedral(7);
        let p = big(1_000_003);
        let found = find_liftable_point(&t, &p, 4).unwrap().unwrap();
        assert_eq!(found.level, 1);
        assert!(found.revalidate(&t));
    }

    #[test]
    fn tampered_points_fail_revalidation() {
        let t = CubicInput::tetrahedral(2);
        let mut found = find_liftable_point(&t, &big(5), 4).unwrap().unwrap();
        found.partial_valuation += 1;
        assert!(!found.revalidate(&t));
        let mut found = find_liftable_point(&t, &big(5), 4).unwrap().unwrap();
        found.point[0] += 5;
        assert!(!found.revalidate(&t));
    }
}
