//! Conic bundle structure on the projective surface when `f1` has a rational root `r`.
//!
//! The surface contains the line `L: ℓ1 = x2 + x3 = 0, ℓ2 = x1 - r x0 = 0` and its equation
//! splits as `G = ℓ1 C1 + ℓ2 C2`. The plane `s ℓ1 = t ℓ2`, parametrised by
//! `x0 = X, x1 = r X + s W, x2 = V, x3 = t W - V`, meets the surface in `L` (`W = 0`) plus a
//! conic whose Gram matrix in `(X, W, V)` is `T(s, t)`. The affine parameter of the base
//! is `λ = t/s = ℓ1/ℓ2`.

pub mod class;
pub mod epsilon;
pub mod fibre;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::algebra::cubic::{factor_small, poly_order};
use crate::algebra::mpoly::MPoly;
use crate::algebra::poly::{int_to_rat, rat, ratio};
use crate::algebra::{Poly, Rat};
use crate::error::{Error, Result};
use crate::surface::DepressedSurface;

pub use class::{
    brauer_class, chord_point, evaluate_all_places, evaluate_class, parameter, weak_approx_scan, BrauerClassCB,
    Parameter, ParameterConvention, SampleOutcome, ScanResult, ScanVerdict, Symbol,
};
pub use epsilon::{epsilon_group, EpsilonGroup};
pub use fibre::{splitting_class, splitting_class_with_order, FibreData};

const X0: usize = 0;
const X1: usize = 1;
const X2: usize = 2;
const X3: usize = 3;

fn x(i: usize) -> MPoly {
    MPoly::var(4, i)
}

/// Symmetric Gram matrix of a quadratic form in `n` variables.
fn gram(q: &MPoly) -> Vec<Vec<Rat>> {
    let n = q.nvars();
    let mut g = vec![vec![Rat::zero(); n]; n];
    for (e, c) in q.terms() {
        let vars: Vec<usize> = (0..n).flat_map(|i| std::iter::repeat_n(i, e[i] as usize)).collect();
        match vars[..] {
            [i, j] if i == j => g[i][i] = c.clone(),
            [i, j] => {
                g[i][j] = c * ratio(1, 2);
                g[j][i] = c * ratio(1, 2);
            }
            _ => {}
        }
    }
    g
}

/// The projective form `x1^3 + x2^3 + x3^3 + a (x1 + x2 + x3) x0^2 + d x0^3`.
pub fn projective_mpoly(s: &DepressedSurface) -> MPoly {
    let cubes = &(&x(X1).pow(3) + &x(X2).pow(3)) + &x(X3).pow(3);
    let lin = &(&x(X1) + &x(X2)) + &x(X3);
    let x0sq = x(X0).pow(2);
    &(&cubes + &(&lin * &x0sq).scale(&s.a_rat())) + &x(X0).pow(3).scale(s.d())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleData {
    surface: DepressedSurface,
    r: Rat,
    l1: MPoly,
    l2: MPoly,
    c1: MPoly,
    c2: MPoly,
    /// Entries are forms in `(s, t)`.
    t_matrix: Vec<Vec<MPoly>>,
    delta: MPoly,
}

impl BundleData {
    pub fn surface(&self) -> &DepressedSurface {
        &self.surface
    }

    pub fn r(&self) -> &Rat {
        &self.r
    }

    pub fn l1(&self) -> &MPoly {
        &self.l1
    }

    pub fn l2(&self) -> &MPoly {
        &self.l2
    }

    pub fn c1(&self) -> &MPoly {
        &self.c1
    }

    pub fn c2(&self) -> &MPoly {
        &self.c2
    }

    pub fn c1_gram(&self) -> Vec<Vec<Rat>> {
        gram(&self.c1)
    }

    pub fn c2_gram(&self) -> Vec<Vec<Rat>> {
        gram(&self.c2)
    }

    /// `T(s, t)`, forms in the two variables `(s, t)`.
    pub fn t_matrix(&self) -> &[Vec<MPoly>] {
        &self.t_matrix
    }

    /// `T` at a rational point `[s : t]`.
    pub fn t_at(&self, s: &Rat, t: &Rat) -> Vec<Vec<Rat>> {
        let pt = [s.clone(), t.clone()];
        self.t_matrix.iter().map(|row| row.iter().map(|e| e.eval(&pt)).collect()).collect()
    }

    /// `Δ(s, t) = det T`.
    pub fn delta(&self) -> &MPoly {
        &self.delta
    }

    /// `Δ(1, λ)`.
    pub fn delta_chart(&self) -> Poly {
        self.delta.specialize(0, &Rat::one()).to_univariate(1).expect("binary form")
    }
}

fn det3(m: &[Vec<MPoly>]) -> MPoly {
    let minor = |i: usize, j: usize, k: usize, l: usize| &(&m[i][k] * &m[j][l]) - &(&m[i][l] * &m[j][k]);
    let a = &m[0][0] * &minor(1, 2, 1, 2);
    let b = &m[0][1] * &minor(1, 2, 0, 2);
    let c = &m[0][2] * &minor(1, 2, 0, 1);
    &(&a - &b) + &c
}

/// Build the conic bundle attached to the rational root `r` of `f1`, verifying the
/// decomposition `G = ℓ1 C1 + ℓ2 C2` and the residual conic of the pencil symbolically.
pub fn build_bundle(s: &DepressedSurface, r: &Rat) -> Result<BundleData> {
    let f1 = s.resolvents().f1;
    if !f1.eval(r).is_zero() {
        return Err(Error::invalid(format!("{r} is not a root of f1 = {f1}")));
    }
    s.require_smooth()?;
    let a = s.a_rat();
    let l1 = &x(X2) + &x(X3);
    let l2 = &x(X1) - &x(X0).scale(r);
    let c1 = &(&(&x(X2).pow(2) - &(&x(X2) * &x(X3))) + &x(X3).pow(2)) + &x(X0).pow(2).scale(&a);
    let c2 = &(&x(X1).pow(2) + &(&x(X0) * &x(X1)).scale(r)) + &x(X0).pow(2).scale(&(r * r + &a));
    let g = projective_mpoly(s);
    if &(&l1 * &c1) + &(&l2 * &c2) != g {
        return Err(Error::inconsistent("G != l1 C1 + l2 C2"));
    }

    // T(s, t) for the conic in (X, W, V)
    let two = |i: usize| MPoly::var(2, i);
    let k2 = |q: Rat| MPoly::constant(2, q);
    let (sv, tv) = (two(0), two(1));
    let entry_a = &sv.scale(&(rat(3) * r * r)) + &(&sv + &tv).scale(&a);
    let entry_b = sv.pow(2).scale(&(rat(3) * r * ratio(1, 2)));
    let entry_e = &sv.pow(3) + &tv.pow(3);
    let entry_f = tv.pow(2).scale(&ratio(-3, 2));
    let entry_v = tv.scale(&rat(3));
    let zero = MPoly::zero(2);
    let t_matrix = vec![
        vec![entry_a, entry_b.clone(), zero.clone()],
        vec![entry_b, entry_e, entry_f.clone()],
        vec![zero, entry_f, entry_v],
    ];

    // substitute the plane into G: G = W * (v^T T v) with v = (X, W, V)
    let five = |i: usize| MPoly::var(5, i);
    let (xx, w, v, s5, t5) = (five(0), five(1), five(2), five(3), five(4));
    let images = [xx.clone(), &xx.scale(r) + &(&s5 * &w), v.clone(), &(&t5 * &w) - &v];
    let restricted = g.subst(&images);
    let residual = restricted.div_var(1)?;
    let coords = [xx, w, v];
    let lift = |e: &MPoly| e.subst(&[s5.clone(), t5.clone()]);
    let mut conic = MPoly::zero(5);
    for i in 0..3 {
        for j in 0..3 {
            conic = &conic + &(&(&coords[i] * &coords[j]) * &lift(&t_matrix[i][j]));
        }
    }
    if conic != residual {
        return Err(Error::inconsistent("residual conic does not match T(s, t)"));
    }

    let delta = det3(&t_matrix);
    // closed form (3/4) t (s + t) (a t^3 + 3 r^2 s t^2 - 3 r^2 s^2 t + (4a + 3 r^2) s^3)
    let r2 = rat(3) * r * r;
    let cubic = &(&(&tv.pow(3).scale(&a) + &(&sv * &tv.pow(2)).scale(&r2)) - &(&sv.pow(2) * &tv).scale(&r2))
        + &sv.pow(3).scale(&(rat(4) * &a + &r2));
    let closed = &(&(&tv * &(&sv + &tv)) * &cubic) * &k2(ratio(3, 4));
    if delta != closed {
        return Err(Error::inconsistent("det T differs from the closed form"));
    }
    if delta.degree() != Some(5) {
        return Err(Error::inconsistent("det T is not a quintic"));
    }
    Ok(BundleData { surface: s.clone(), r: r.clone(), l1, l2, c1, c2, t_matrix, delta })
}

/// A closed point of the base `P^1` with coordinates `[s : t]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ClosedPoint {
    /// `s = 0`.
    Infinity,
    /// Zero of a monic irreducible polynomial in `λ = t/s`.
    Finite(Poly),
}

impl ClosedPoint {
    pub fn degree(&self) -> usize {
        match self {
            ClosedPoint::Infinity => 1,
            ClosedPoint::Finite(p) => p.degree().unwrap_or(0),
        }
    }

    /// Defining polynomial of the residue field; the reciprocal chart `μ = s/t` at infinity.
    pub fn modulus(&self) -> Poly {
        match self {
            ClosedPoint::Infinity => Poly::x(),
            ClosedPoint::Finite(p) => p.clone(),
        }
    }

    /// `τ` for a finite rational point.
    pub fn tau(&self) -> Option<Rat> {
        match self {
            ClosedPoint::Finite(p) if p.degree() == Some(1) => Some(-p.coeff(0)),
            _ => None,
        }
    }

    /// Primitive integral binary form, ascending in `t`: `(t)`, `(s + t)`, `(16s^2 - 10st + 7t^2)`.
    pub fn label(&self) -> String {
        let p = match self {
            ClosedPoint::Infinity => return "(s)".to_string(),
            ClosedPoint::Finite(p) => p,
        };
        let deg = p.degree().unwrap_or(0);
        let lcm = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * int_to_rat(&lcm)).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let mut out = String::new();
        for (k, c) in ints.iter().enumerate() {
            let c = c / &g;
            if c.is_zero() {
                continue;
            }
            let mono = format!("{}{}", power("s", deg - k), power("t", k));
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            if !c.abs().is_one() {
                out.push_str(&c.abs().to_string());
            }
            out.push_str(&mono);
        }
        format!("({out})")
    }

    fn order_key(&self) -> (u8, Option<&Poly>) {
        match self {
            ClosedPoint::Infinity => (0, None),
            ClosedPoint::Finite(p) => (1, Some(p)),
        }
    }
}

fn power(v: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{k}"),
    }
}

impl PartialOrd for ClosedPoint {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Infinity first, then monic polynomials by degree and coefficients.
impl Ord for ClosedPoint {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let (ka, pa) = self.order_key();
        let (kb, pb) = other.order_key();
        ka.cmp(&kb).then_with(|| match (pa, pb) {
            (Some(a), Some(b)) => poly_order(a, b),
            _ => std::cmp::Ordering::Equal,
        })
    }
}

impl fmt::Display for ClosedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl Serialize for ClosedPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Closed points with singular fibres, canonically ordered.
pub fn singular_locus(bundle: &BundleData) -> Result<Vec<ClosedPoint>> {
    let chart = bundle.delta_chart();
    let deg = chart.degree().ok_or_else(|| Error::inconsistent("Δ vanishes identically"))?;
    let mut points = Vec::new();
    match 5 - deg {
        0 => {}
        1 => points.push(ClosedPoint::Infinity),
        _ => return Err(Error::inconsistent("repeated singular fibre at infinity")),
    }
    for (factor, mult) in factor_small(&chart)?.factors {
        if mult != 1 {
            return Err(Error::inconsistent(format!("repeated factor {factor} in Δ")));
        }
        points.push(ClosedPoint::Finite(factor));
    }
    points.sort();
    if points.iter().map(ClosedPoint::degree).sum::<usize>() != 5 {
        return Err(Error::inconsistent("singular fibre degrees do not sum to 5"));
    }
    Ok(points)
}

impl Serialize for BundleData {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let vars4 = ["x0", "x1", "x2", "x3"];
        let vars2 = ["s", "t"];
        let t: Vec<Vec<String>> =
            self.t_matrix.iter().map(|row| row.iter().map(|e| e.display_with(&vars2)).collect()).collect();
        let mut st = s.serialize_struct("BundleData", 9)?;
        st.serialize_field("r", &self.r.to_string())?;
        st.serialize_field("l1", &self.l1.display_with(&vars4))?;
        st.serialize_field("l2", &self.l2.display_with(&vars4))?;
        st.serialize_field("c1", &self.c1.display_with(&vars4))?;
        st.serialize_field("c2", &self.c2.display_with(&vars4))?;
        st.serialize_field("c1_gram", &stringify(&self.c1_gram()))?;
        st.serialize_field("c2_gram", &stringify(&self.c2_gram()))?;
        st.serialize_field("t_matrix", &t)?;
        st.serialize_field("delta", &self.delta.display_with(&vars2))?;
        st.end()
    }
}

fn stringify(m: &[Vec<Rat>]) -> Vec<Vec<String>> {
    m.iter().map(|row| row.iter().map(ToString::to_string).collect()).collect()
}
