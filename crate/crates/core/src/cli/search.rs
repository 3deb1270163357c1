//! Exhaustive search for integral points in a box.

use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::surface::CubicInput;

/// Largest accepted half-width of the search box.
pub const MAX_BOX: i64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub bound: i64,
    /// Solutions up to permutation, each written with `u1 >= u2 >= u3`, in lexicographic order.
    #[serde(serialize_with = "crate::serde_util::int_points")]
    pub points: Vec<Vec<BigInt>>,
}

/// All `|ui| <= bound` with `f(u1) + f(u2) + f(u3) = n`, up to permutation. For each pair
/// `u1 >= u2` the third coordinate is read off a table of values of `f`.
pub fn search_box(input: &CubicInput, bound: i64) -> Result<SearchResult> {
    if !(0..=MAX_BOX).contains(&bound) {
        return Err(Error::invalid(format!("box must lie in 0..={MAX_BOX}")));
    }
    let values: Vec<(i64, BigInt)> = (-bound..=bound).map(|u| (u, input.f(&BigInt::from(u)))).collect();
    let mut table: HashMap<&BigInt, Vec<i64>> = HashMap::new();
    for (u, v) in &values {
        table.entry(v).or_default().push(*u);
    }
    let mut points: Vec<Vec<BigInt>> = values
        .par_iter()
        .flat_map_iter(|(u1, f1)| {
            let table = &table;
            let values = &values;
            values.iter().filter(move |(u2, _)| u2 <= u1).flat_map(move |(u2, f2)| {
                let rest = &input.n - f1 - f2;
                table
                    .get(&rest)
                    .into_iter()
                    .flatten()
                    .filter(move |&&u3| u3 <= *u2)
                    .map(move |&u3| vec![BigInt::from(*u1), BigInt::from(*u2), BigInt::from(u3)])
            })
        })
        .collect();
    points.sort();
    Ok(SearchResult { bound, points })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tetrahedral_one() {
        let r = search_box(&CubicInput::tetrahedral(1), 5).unwrap();
        assert!(r.points.contains(&vec![BigInt::from(1), BigInt::from(0), BigInt::from(0)]));
        for p in &r.points {
            assert_eq!(
                CubicInput::tetrahedral(1).residual(&[p[0].clone(), p[1].clone(), p[2].clone()]),
                BigInt::from(0)
            );
        }
    }

    #[test]
    fn matches_naive_enumeration() {
        for input in [CubicInput::sum_of_cubes(3), CubicInput::new(1, -2, 3, 17), CubicInput::tetrahedral(4)] {
            let fast = search_box(&input, 8).unwrap().points;
            let mut naive = Vec::new();
            for a in -8i64..=8 {
                for b in -8..=a {
                    for c in -8..=b {
                        let p = [BigInt::from(a), BigInt::from(b), BigInt::from(c)];
                        if input.residual(&p) == BigInt::from(0) {
                            naive.push(p.to_vec());
                        }
                    }
                }
            }
            naive.sort();
            assert_eq!(fast, naive);
        }
        assert!(search_box(&CubicInput::sum_of_cubes(3), -1).is_err());
    }
}
