//! Splitting classes of singular fibres.

use num_traits::{One, Zero};
use serde::Serialize;

use super::{BundleData, ClosedPoint};
use crate::algebra::integer::SquareClass;
use crate::algebra::mpoly::MPoly;
use crate::algebra::{square_class, EtaleElement, Rat};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FibreData {
    pub point: ClosedPoint,
    /// The fibre splits over `k(p)(√a_p)`.
    pub a_p: EtaleElement,
    /// Square class of `a_p` when the residue field is Q.
    pub a_p_class: Option<SquareClass>,
    /// Square class of `N_{k(p)/Q}(a_p)`.
    pub norm_class: SquareClass,
    /// Whether `a_p` is a square in `k(p)`, when decidable.
    pub split: Option<bool>,
}

fn eval_form(p: &MPoly, s: &EtaleElement, t: &EtaleElement) -> EtaleElement {
    let mut acc = s.from_rational(Rat::zero());
    for (e, c) in p.terms() {
        let mut term = s.from_rational(c.clone());
        for _ in 0..e[0] {
            term = &term * s;
        }
        for _ in 0..e[1] {
            term = &term * t;
        }
        acc = &acc + &term;
    }
    acc
}

/// Diagonal entries of a symmetric matrix over a field after symmetric elimination,
/// processing variables in the given order.
#[allow(clippy::needless_range_loop)] // row and column operations on a symmetric matrix
fn diagonalize(mut m: Vec<Vec<EtaleElement>>, order: [usize; 3]) -> Result<Vec<EtaleElement>> {
    m = order.iter().map(|&i| order.iter().map(|&j| m[i][j].clone()).collect()).collect();
    let n = m.len();
    let mut diag = Vec::new();
    for i in 0..n {
        if m[i][i].is_zero() {
            if let Some(j) = (i + 1..n).find(|&j| !m[j][j].is_zero()) {
                m.swap(i, j);
                for row in m.iter_mut() {
                    row.swap(i, j);
                }
            } else if let Some(j) = (i + 1..n).find(|&j| !m[i][j].is_zero()) {
                // x_i -> x_i + x_j makes the pivot 2 m[i][j]
                for k in 0..n {
                    m[i][k] = &m[i][k] + &m[j][k];
                }
                for k in 0..n {
                    m[k][i] = &m[k][i] + &m[k][j];
                }
            }
        }
        let pivot = m[i][i].clone();
        if pivot.is_zero() {
            diag.push(pivot);
            continue;
        }
        let inv = pivot.inverse()?;
        for j in i + 1..n {
            let factor = &m[j][i] * &inv;
            for k in i..n {
                m[j][k] = &m[j][k] - &(&factor * &m[i][k]);
            }
        }
        for j in i + 1..n {
            m[i][j] = pivot.from_rational(Rat::zero());
        }
        diag.push(pivot);
    }
    Ok(diag)
}

/// The splitting class of the fibre over `point`, eliminating in the order `x0, W, V`.
pub fn splitting_class(bundle: &BundleData, point: &ClosedPoint) -> Result<FibreData> {
    splitting_class_with_order(bundle, point, [0, 1, 2])
}

/// As [`splitting_class`] with a chosen elimination order.
pub fn splitting_class_with_order(bundle: &BundleData, point: &ClosedPoint, order: [usize; 3]) -> Result<FibreData> {
    let modulus = point.modulus();
    let (s, t) = match point {
        ClosedPoint::Infinity => {
            (EtaleElement::constant(&modulus, Rat::zero())?, EtaleElement::constant(&modulus, Rat::one())?)
        }
        ClosedPoint::Finite(_) => (EtaleElement::constant(&modulus, Rat::one())?, EtaleElement::generator(&modulus)?),
    };
    let m: Vec<Vec<EtaleElement>> =
        bundle.t_matrix().iter().map(|row| row.iter().map(|e| eval_form(e, &s, &t)).collect()).collect();
    let diag = diagonalize(m, order)?;
    let nonzero: Vec<&EtaleElement> = diag.iter().filter(|d| !d.is_zero()).collect();
    if nonzero.len() != 2 {
        return Err(Error::inconsistent(format!("fibre over {point} has rank {} instead of 2", nonzero.len())));
    }
    let a_p = -&(nonzero[0] * nonzero[1]);
    let norm_class = square_class(&a_p.norm())?;
    let a_p_class = match a_p.as_rational() {
        Some(q) if point.degree() == 1 => Some(square_class(&q)?),
        _ => None,
    };
    let split = a_p.is_square();
    Ok(FibreData { point: point.clone(), a_p, a_p_class, norm_class, split })
}
