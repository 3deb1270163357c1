//! Exhaustive point counts over F_p for the original model and its curve at infinity.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::algebra::is_prime;
use crate::error::{Error, Result};
use crate::surface::CubicInput;

pub const DEFAULT_COUNT_CAP: u64 = 1000;

fn small_prime(p: &BigInt, cap: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    match p.to_u64() {
        Some(q) if q <= cap => Ok(q),
        _ => Err(Error::Refused(format!("p = {p} exceeds the exhaustive count cap {cap}"))),
    }
}

/// Number of `(v1, v2, v3)` with `v1 + v2 + v3 = target` when each `vi` is drawn with
/// multiplicity `hist[vi]`.
fn triple_sums(hist: &[u64], target: u64) -> u64 {
    let p = hist.len() as u64;
    let mut total = 0;
    for (v1, &h1) in hist.iter().enumerate().filter(|(_, h)| **h > 0) {
        for (v2, &h2) in hist.iter().enumerate().filter(|(_, h)| **h > 0) {
            let v3 = (target + 2 * p - v1 as u64 - v2 as u64) % p;
            total += h1 * h2 * hist[v3 as usize];
        }
    }
    total
}

fn histogram(p: u64, value: impl Fn(u64) -> u64) -> Vec<u64> {
    let mut hist = vec![0u64; p as usize];
    for u in 0..p {
        hist[value(u) as usize] += 1;
    }
    hist
}

/// `#{u ∈ F_p^3 : f(u1) + f(u2) + f(u3) = n}`.
pub fn fp_count_affine(input: &CubicInput, p: &BigInt, cap: u64) -> Result<u64> {
    let q = small_prime(p, cap)?;
    let m = |x: &BigInt| x.mod_floor(p).to_u64().unwrap();
    let (a2, a1, a0) = (m(&input.a2), m(&input.a1), m(&input.a0));
    let hist = histogram(q, |u| (((u + a2) * u % q + a1) * u + a0) % q);
    Ok(triple_sums(&hist, m(&input.n)))
}

/// Points of the Fermat cubic curve `x^3 + y^3 + z^3 = 0` in `P^2(F_p)`.
pub fn fermat_count(p: &BigInt, cap: u64) -> Result<u64> {
    let q = small_prime(p, cap)?;
    let hist = histogram(q, |u| u * u % q * u % q);
    // the affine cone minus the origin, divided by the scalars
    Ok((triple_sums(&hist, 0) - 1) / (q - 1))
}

/// Points of the projective closure: the affine count plus the curve at infinity.
pub fn fp_count_projective(input: &CubicInput, p: &BigInt, cap: u64) -> Result<u64> {
    Ok(fp_count_affine(input, p, cap)? + fermat_count(p, cap)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(input: &CubicInput, p: i64) -> u64 {
        let mut count = 0;
        for x in 0..p {
            for y in 0..p {
                for z in 0..p {
                    let u = [BigInt::from(x), BigInt::from(y), BigInt::from(z)];
                    if input.residual(&u).mod_floor(&BigInt::from(p)) == BigInt::from(0) {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    #[test]
    fn count_examples() {
        let t = CubicInput::tetrahedral(1);
        let c = fp_count_affine(&t, &BigInt::from(5), DEFAULT_COUNT_CAP).unwrap();
        assert_eq!(c, brute(&t, 5));
        assert!(c >= 1);
        assert!(t.residual(&[1.into(), 0.into(), 0.into()]) == BigInt::from(0));
        let cubes = CubicInput::sum_of_cubes(0);
        assert_eq!(fp_count_affine(&cubes, &BigInt::from(2), DEFAULT_COUNT_CAP).unwrap(), 4);
    }

    #[test]
    fn count_matches_brute_force() {
        for (input, p) in [
            (CubicInput::new(1, -4, 7, 3), 7),
            (CubicInput::new(0, 21, 0, 50), 11),
            (CubicInput::new(-5, 2, 2, -9), 13),
            (CubicInput::tetrahedral(17), 3),
        ] {
            assert_eq!(fp_count_affine(&input, &BigInt::from(p), 100).unwrap(), brute(&input, p));
        }
    }

    #[test]
    fn fermat_matches_brute_force() {
        for p in [2i64, 3, 5, 7, 11, 13, 31] {
            let mut cone = 0u64;
            for x in 0..p {
                for y in 0..p {
                    for z in 0..p {
                        if (x * x * x + y * y * y + z * z * z) % p == 0 {
                            cone += 1;
                        }
                    }
                }
            }
            let expect = (cone - 1) / (p as u64 - 1);
            assert_eq!(fermat_count(&BigInt::from(p), 100).unwrap(), expect, "p = {p}");
        }
        // p = 2 mod 3: cubing is a bijection, so the curve is a line with p + 1 points
        assert_eq!(fermat_count(&BigInt::from(17), 100).unwrap(), 18);
    }

    #[test]
    fn refusals() {
        let t = CubicInput::tetrahedral(1);
        assert!(matches!(fp_count_affine(&t, &BigInt::from(1009), 1000), Err(Error::Refused(_))));
        assert!(matches!(fp_count_affine(&t, &BigInt::from(9), 1000), Err(Error::InvalidInput(_))));
    }
}
