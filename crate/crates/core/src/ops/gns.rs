//! The rational Lie algebra acting on the total Chow model: the wedge
//! square of the extended Mukai-type lattice `V + U`, where `V` is spanned
//! by the surface divisors together with the half-diagonal divisor class,
//! and `U` is a hyperbolic plane with isotropic generators `e` and `f`.
//!
//! The bracket is the standard one on a wedge square of a quadratic space:
//! `[a^b, c^d] = (a,d) b^c - (a,c) b^d - (b,d) a^c + (b,c) a^d`.

use std::collections::BTreeMap;
use std::fmt;

use super::{op_e_alpha, op_e_delta, op_f_alpha, op_f_delta, op_h, op_h_alpha_beta, op_h_alpha_delta, OpExpr};
use crate::taut::{Ring, SurfaceClass};
use crate::{q1, qi, Rat};
use num::Zero;

/// Basis vector of the lattice `V + U`: the isotropic `E`, a divisor basis
/// element, the half-diagonal divisor, and the isotropic `F` dual to `E`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum MukaiBasis {
    E,
    Div(usize),
    Delta,
    F,
}

impl fmt::Display for MukaiBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MukaiBasis::E => write!(f, "e"),
            MukaiBasis::Div(i) => write!(f, "a{}", i + 1),
            MukaiBasis::Delta => write!(f, "d"),
            MukaiBasis::F => write!(f, "f"),
        }
    }
}

/// Pairing on `V + U` at a fixed number of points `n`: the divisor lattice
/// pairing on `V`, `(d, d) = 2 - 2n`, `(e, f) = 1`, everything else zero.
pub fn mukai_pairing(ring: &Ring, n: i64, a: MukaiBasis, b: MukaiBasis) -> Rat {
    use MukaiBasis::*;
    match (a, b) {
        (E, F) | (F, E) => q1(),
        (Div(i), Div(j)) => ring.lattice.pair(i, j).clone(),
        (Delta, Delta) => qi(2 - 2 * n),
        _ => crate::q0(),
    }
}

/// An element of the wedge square, stored on canonically ordered pairs
/// `a < b` of basis vectors.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GnsElement {
    terms: BTreeMap<(MukaiBasis, MukaiBasis), Rat>,
}

impl GnsElement {
    pub fn zero() -> Self {
        GnsElement::default()
    }

    /// The wedge `a ^ b`, normalized so the smaller basis vector comes
    /// first; `a ^ a = 0`.
    pub fn wedge(a: MukaiBasis, b: MukaiBasis) -> Self {
        let mut out = GnsElement::zero();
        out.add_wedge(a, b, q1());
        out
    }

    pub fn add_wedge(&mut self, a: MukaiBasis, b: MukaiBasis, c: Rat) {
        use std::cmp::Ordering::*;
        let (key, c) = match a.cmp(&b) {
            Less => ((a, b), c),
            Greater => ((b, a), -c),
            Equal => return,
        };
        let entry = self.terms.entry(key).or_insert_with(crate::q0);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(MukaiBasis, MukaiBasis), &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &GnsElement) -> GnsElement {
        let mut out = self.clone();
        for (&(a, b), c) in &other.terms {
            out.add_wedge(a, b, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &GnsElement) -> GnsElement {
        let mut out = self.clone();
        for (&(a, b), c) in &other.terms {
            out.add_wedge(a, b, -c.clone());
        }
        out
    }

    pub fn scale(&self, r: &Rat) -> GnsElement {
        let mut out = GnsElement::zero();
        for (&(a, b), c) in &self.terms {
            out.add_wedge(a, b, c.clone() * r.clone());
        }
        out
    }
}

impl fmt::Display for GnsElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((a, b), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*{}^{}", c, a, b)?;
        }
        Ok(())
    }
}

/// The Lie bracket on the wedge square, with the pairing taken at `n` points.
pub fn gns_bracket(ring: &Ring, n: i64, x: &GnsElement, y: &GnsElement) -> GnsElement {
    let mut out = GnsElement::zero();
    for (&(a, b), ca) in x.terms() {
        for (&(c, d), cb) in y.terms() {
            let coeff = ca.clone() * cb.clone();
            let p = |u, v| mukai_pairing(ring, n, u, v);
            // [a^b, c^d] = (a,d) b^c - (a,c) b^d - (b,d) a^c + (b,c) a^d
            out.add_wedge(b, c, coeff.clone() * p(a, d));
            out.add_wedge(b, d, -coeff.clone() * p(a, c));
            out.add_wedge(a, c, -coeff.clone() * p(b, d));
            out.add_wedge(a, d, coeff * p(b, c));
        }
    }
    out
}

/// Divisor basis class `a_i` as an arity-1 surface class.
fn div_class(i: usize) -> SurfaceClass {
    SurfaceClass::divisor(i, 0, 1)
}

/// The operator attached to a single wedge of basis vectors.
fn act_wedge(ring: &Ring, n: i64, a: MukaiBasis, b: MukaiBasis) -> OpExpr {
    use MukaiBasis::*;
    match (a, b) {
        (E, Div(i)) => op_e_alpha(ring, &div_class(i), n),
        (E, Delta) => op_e_delta(ring, n),
        (Div(i), F) => op_f_alpha(ring, &div_class(i), n),
        (Delta, F) => op_f_delta(ring, n),
        (E, F) => op_h(ring, n),
        (Div(i), Div(j)) => op_h_alpha_beta(ring, &div_class(i), &div_class(j), n),
        (Div(i), Delta) => op_h_alpha_delta(ring, &div_class(i), n),
        _ => unreachable!("non-canonical wedge ({}, {})", a, b),
    }
}

/// The representation: the operator on the weight-`n` model attached to an
/// element of the wedge algebra.
pub fn op_act(ring: &Ring, n: i64, x: &GnsElement) -> OpExpr {
    let mut terms = Vec::new();
    for (&(a, b), c) in x.terms() {
        terms.push(act_wedge(ring, n, a, b).scaled(c.clone()));
    }
    OpExpr::sum(terms)
}

/// All canonical wedge generators for the current divisor rank.
pub fn gns_generators(ring: &Ring) -> Vec<GnsElement> {
    use MukaiBasis::*;
    let rho = ring.rank();
    let mut out = Vec::new();
    for i in 0..rho {
        out.push(GnsElement::wedge(E, Div(i)));
    }
    out.push(GnsElement::wedge(E, Delta));
    for i in 0..rho {
        out.push(GnsElement::wedge(Div(i), F));
    }
    out.push(GnsElement::wedge(Delta, F));
    out.push(GnsElement::wedge(E, F));
    for i in 0..rho {
        for j in i + 1..rho {
            out.push(GnsElement::wedge(Div(i), Div(j)));
        }
    }
    for i in 0..rho {
        out.push(GnsElement::wedge(Div(i), Delta));
    }
    out
}
