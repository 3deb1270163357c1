//! The group of admissible ε-vectors: kernels over GF(2) of the norm classes.

use num_bigint::BigInt;
use serde::Serialize;

use super::fibre::FibreData;
use super::ClosedPoint;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpsilonGroup {
    /// Singular points in canonical order; ε-vectors are indexed by this list.
    pub points: Vec<ClosedPoint>,
    /// Reduced-echelon kernel basis supported on points with nontrivial norm class.
    pub generators: Vec<Vec<u8>>,
    /// Unit vectors at points whose norm class is already trivial.
    pub trivial_directions: Vec<Vec<u8>>,
}

/// Coordinates of a square class over GF(2): the sign, then each listed prime.
fn exponent_vector(fibre: &FibreData, primes: &[BigInt]) -> Vec<u8> {
    let (negative, support) = fibre.norm_class.support();
    std::iter::once(negative as u8).chain(primes.iter().map(|p| support.contains(p) as u8)).collect()
}

/// Null space over GF(2) of the matrix with the given columns, in reduced echelon form.
fn kernel(columns: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let ncols = columns.len();
    let nrows = columns.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<u8>> = (0..nrows).map(|i| columns.iter().map(|c| c[i]).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| rows[i][c] == 1) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..nrows {
            if i != r && rows[i][c] == 1 {
                let pivot_row = rows[r].clone();
                rows[i].iter_mut().zip(&pivot_row).for_each(|(x, y)| *x ^= y);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0u8; ncols];
            v[free] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = rows[row][free];
            }
            v
        })
        .collect()
}

pub fn epsilon_group(fibres: &[FibreData]) -> EpsilonGroup {
    let n = fibres.len();
    let nontrivial: Vec<usize> = (0..n).filter(|&i| !fibres[i].norm_class.is_trivial()).collect();
    let mut primes: Vec<BigInt> = nontrivial.iter().flat_map(|&i| fibres[i].norm_class.support().1).collect();
    primes.sort();
    primes.dedup();
    let columns: Vec<Vec<u8>> = nontrivial.iter().map(|&i| exponent_vector(&fibres[i], &primes)).collect();
    let generators = kernel(&columns)
        .into_iter()
        .map(|k| {
            let mut v = vec![0u8; n];
            for (j, &i) in nontrivial.iter().enumerate() {
                v[i] = k[j];
            }
            v
        })
        .collect();
    let trivial_directions = (0..n)
        .filter(|i| !nontrivial.contains(i))
        .map(|i| {
            let mut v = vec![0u8; n];
            v[i] = 1;
            v
        })
        .collect();
    EpsilonGroup { points: fibres.iter().map(|f| f.point.clone()).collect(), generators, trivial_directions }
}
