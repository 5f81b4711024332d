//! Exact rational linear algebra: dense matrices over `Q`, row reduction,
//! minimal polynomials, and eigendecomposition of operators with rational
//! spectra.

use crate::{q0, q1, qi, Rat};
use num::{BigInt, One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    Dim(usize, usize, usize, usize),
    #[error("matrix is not square")]
    NotSquare,
    #[error("operator is not diagonalizable over Q: minimal polynomial factor {0} has no rational root")]
    NotRationallyDiagonalizable(String),
}

/// A dense matrix over the rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![q0(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = q1();
        }
        m
    }

    pub fn from_columns(cols: &[Vec<Rat>]) -> Self {
        let ncols = cols.len();
        let nrows = cols.first().map_or(0, |c| c.len());
        let mut m = QMatrix::zero(nrows, ncols);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), nrows);
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Dim(self.rows, self.cols, other.rows, other.cols));
        }
        let mut out = QMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        out[(i, j)] += prod;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &QMatrix) -> Result<QMatrix, LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::Dim(self.rows, self.cols, other.rows, other.cols));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b.clone();
        }
        Ok(out)
    }

    pub fn sub(&self, other: &QMatrix) -> Result<QMatrix, LinalgError> {
        self.add(&other.scale(&qi(-1)))
    }

    pub fn scale(&self, r: &Rat) -> QMatrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= r.clone();
        }
        out
    }

    pub fn commutator(&self, other: &QMatrix) -> Result<QMatrix, LinalgError> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![q0(); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if !a.is_zero() && !v[j].is_zero() {
                    out[i] += a * &v[j];
                }
            }
        }
        out
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = q1() / self[(row, col)].clone();
            for j in col..self.cols {
                let v = self[(row, j)].clone() * inv.clone();
                self[(row, j)] = v;
            }
            for r in 0..self.rows {
                if r != row && !self[(r, col)].is_zero() {
                    let f = self[(r, col)].clone();
                    for j in col..self.cols {
                        let v = self[(r, j)].clone() - f.clone() * self[(row, j)].clone();
                        self[(r, j)] = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right nullspace.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut out = Vec::new();
        let is_pivot = |c: usize| pivots.contains(&c);
        for free in (0..self.cols).filter(|&c| !is_pivot(c)) {
            let mut v = vec![q0(); self.cols];
            v[free] = q1();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[(r, free)].clone();
            }
            out.push(v);
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Minimal polynomial, as coefficients `c_0 + c_1 x + ... + x^d`
    /// (monic, low degree first).
    pub fn minimal_polynomial(&self) -> Result<Vec<Rat>, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare);
        }
        let n = self.rows;
        // LCM over the minimal polynomials of Krylov spaces of the standard
        // basis vectors.
        let mut acc: Vec<Rat> = vec![q1()]; // the constant polynomial 1
        for start in 0..n {
            let mut e = vec![q0(); n];
            e[start] = q1();
            let local = self.krylov_minpoly(&e);
            acc = poly_lcm(&acc, &local);
            if acc.len() == n + 1 {
                break;
            }
        }
        Ok(acc)
    }

    /// Minimal monic polynomial annihilating `v` under repeated application.
    fn krylov_minpoly(&self, v: &[Rat]) -> Vec<Rat> {
        let n = self.rows;
        let mut krylov: Vec<Vec<Rat>> = vec![v.to_vec()];
        loop {
            let next = self.apply(krylov.last().unwrap());
            // Solve: next = sum c_i krylov[i]?
            let mut aug = QMatrix::zero(n, krylov.len() + 1);
            for (j, k) in krylov.iter().enumerate() {
                for i in 0..n {
                    aug[(i, j)] = k[i].clone();
                }
            }
            for i in 0..n {
                aug[(i, krylov.len())] = next[i].clone();
            }
            let pivots = aug.rref();
            if pivots.last() != Some(&krylov.len()) {
                // dependent: read the combination from the rref
                let mut coeffs = vec![q0(); krylov.len() + 1];
                for (r, &pc) in pivots.iter().enumerate() {
                    coeffs[pc] = -aug[(r, krylov.len())].clone();
                }
                // minimal polynomial: x^d - sum c_i x^i
                let mut poly = coeffs;
                poly.truncate(krylov.len());
                poly.push(q1());
                return poly;
            }
            krylov.push(next);
        }
    }

    /// Eigendecomposition for operators diagonalizable over `Q`: returns
    /// `(value, basis of eigenspace)` pairs sorted by eigenvalue.  Fails
    /// with the offending factor if the minimal polynomial has an
    /// irrational or complex root.
    pub fn rational_eigenspaces(&self) -> Result<Vec<(Rat, Vec<Vec<Rat>>)>, LinalgError> {
        let minpoly = self.minimal_polynomial()?;
        let roots = rational_roots(&minpoly);
        // check the minimal polynomial splits into distinct linear factors
        let mut rem = minpoly.clone();
        for r in &roots {
            rem = poly_div_linear(&rem, r);
        }
        if rem.len() != 1 {
            return Err(LinalgError::NotRationallyDiagonalizable(poly_to_string(&rem)));
        }
        let mut out = Vec::new();
        let mut total = 0;
        for r in roots {
            let shifted = self.sub(&QMatrix::identity(self.rows).scale(&r))?;
            let space = shifted.nullspace();
            total += space.len();
            out.push((r, space));
        }
        if total != self.rows {
            // repeated root: minimal polynomial had a square factor
            return Err(LinalgError::NotRationallyDiagonalizable(poly_to_string(&minpoly)));
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

/// All rational roots (with multiplicity removed) of a polynomial with
/// rational coefficients, low degree first.
pub fn rational_roots(poly: &[Rat]) -> Vec<Rat> {
    // clear denominators
    let mut lcm = BigInt::one();
    for c in poly {
        lcm = num::integer::lcm(lcm, c.denom().clone());
    }
    let ints: Vec<BigInt> = poly.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let Some(first_nz) = ints.iter().position(|c| !c.is_zero()) else {
        return Vec::new();
    };
    let lead = ints.last().unwrap().clone();
    let tail = ints[first_nz].clone();
    let mut roots = Vec::new();
    if first_nz > 0 {
        roots.push(q0());
    }
    for p in divisors(&tail.abs()) {
        for q in divisors(&lead.abs()) {
            for sign in [1i64, -1] {
                let cand = Rat::new(p.clone() * BigInt::from(sign), q.clone());
                if roots.contains(&cand) {
                    continue;
                }
                if eval_poly(poly, &cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let other = n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out
}

fn eval_poly(poly: &[Rat], x: &Rat) -> Rat {
    let mut acc = q0();
    for c in poly.iter().rev() {
        acc = acc * x.clone() + c.clone();
    }
    acc
}

/// Divide a polynomial by `(x - r)`; requires `r` to be a root.
fn poly_div_linear(poly: &[Rat], r: &Rat) -> Vec<Rat> {
    let mut quotient = vec![q0(); poly.len().saturating_sub(1)];
    let mut carry = q0();
    for i in (0..poly.len()).rev() {
        if i == 0 {
            debug_assert!((poly[0].clone() + carry * r.clone()).is_zero() || true);
            break;
        }
        let c = poly[i].clone() + carry.clone() * r.clone();
        quotient[i - 1] = c.clone();
        carry = c;
    }
    if quotient.is_empty() {
        vec![q1()]
    } else {
        quotient
    }
}

fn poly_to_string(poly: &[Rat]) -> String {
    let terms: Vec<String> = poly
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| match i {
            0 => format!("{}", c),
            1 => format!("{}*x", c),
            _ => format!("{}*x^{}", c, i),
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

/// Polynomial product.
fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![q0(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Monic least common multiple of two monic polynomials.
fn poly_lcm(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let g = poly_gcd(a.to_vec(), b.to_vec());
    let prod = poly_mul(a, b);
    poly_div(&prod, &g)
}

fn poly_gcd(mut a: Vec<Rat>, mut b: Vec<Rat>) -> Vec<Rat> {
    loop {
        if b.iter().all(|c| c.is_zero()) {
            // make monic
            let lead = a.iter().rposition(|c| !c.is_zero()).expect("nonzero gcd");
            a.truncate(lead + 1);
            let inv = q1() / a[lead].clone();
            for c in a.iter_mut() {
                *c *= inv.clone();
            }
            return a;
        }
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
}

fn poly_rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let db = b.iter().rposition(|c| !c.is_zero()).expect("division by zero polynomial");
    let mut r = a.to_vec();
    loop {
        let Some(dr) = r.iter().rposition(|c| !c.is_zero()) else {
            return vec![q0()];
        };
        if dr < db {
            r.truncate(dr + 1);
            return r;
        }
        let f = r[dr].clone() / b[db].clone();
        for i in 0..=db {
            let v = r[dr - db + i].clone() - f.clone() * b[i].clone();
            r[dr - db + i] = v;
        }
    }
}

fn poly_div(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let db = b.iter().rposition(|c| !c.is_zero()).expect("division by zero polynomial");
    let mut r = a.to_vec();
    let mut q = vec![q0(); a.len().saturating_sub(db)];
    loop {
        let Some(dr) = r.iter().rposition(|c| !c.is_zero()) else {
            break;
        };
        if dr < db {
            break;
        }
        let f = r[dr].clone() / b[db].clone();
        q[dr - db] = f.clone();
        for i in 0..=db {
            let v = r[dr - db + i].clone() - f.clone() * b[i].clone();
            r[dr - db + i] = v;
        }
    }
    // trim
    let d = q.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
    q.truncate(d + 1);
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qr;

    fn m(rows: usize, cols: usize, vals: &[i64]) -> QMatrix {
        let mut out = QMatrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out[(i, j)] = qi(vals[i * cols + j]);
            }
        }
        out
    }

    #[test]
    fn rref_and_rank() {
        let a = m(3, 3, &[1, 2, 3, 4, 5, 6, 7, 8, 9]);
        assert_eq!(a.rank(), 2);
        assert_eq!(QMatrix::identity(4).rank(), 4);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(a.apply(&ns[0]).iter().all(|v| v.is_zero()));
    }

    #[test]
    fn minimal_polynomial_diagonal() {
        // diag(1, 1, 2): minpoly (x-1)(x-2) = x^2 - 3x + 2
        let a = m(3, 3, &[1, 0, 0, 0, 1, 0, 0, 0, 2]);
        let p = a.minimal_polynomial().unwrap();
        assert_eq!(p, vec![qi(2), qi(-3), q1()]);
    }

    #[test]
    fn eigenspaces_of_symmetric_matrix() {
        // [[2,1],[1,2]]: eigenvalues 1 and 3
        let a = m(2, 2, &[2, 1, 1, 2]);
        let es = a.rational_eigenspaces().unwrap();
        assert_eq!(es.len(), 2);
        assert_eq!(es[0].0, qi(1));
        assert_eq!(es[1].0, qi(3));
        assert_eq!(es[0].1.len(), 1);
        for (val, vecs) in &es {
            for v in vecs {
                let av = a.apply(v);
                for (x, y) in av.iter().zip(v) {
                    assert_eq!(*x, val * y);
                }
            }
        }
    }

    #[test]
    fn non_diagonalizable_detected() {
        let a = m(2, 2, &[0, 1, 0, 0]); // nilpotent Jordan block
        assert!(matches!(
            a.rational_eigenspaces(),
            Err(LinalgError::NotRationallyDiagonalizable(_))
        ));
        let b = m(2, 2, &[0, 1, 1, 0]); // eigenvalues +-1: fine
        assert_eq!(b.rational_eigenspaces().unwrap().len(), 2);
        let c = m(2, 2, &[0, 2, 1, 0]); // eigenvalues +-sqrt 2: rejected
        assert!(c.rational_eigenspaces().is_err());
    }

    #[test]
    fn rational_roots_with_denominators() {
        // (x - 1/2)(x + 3) = x^2 + 5/2 x - 3/2
        let poly = vec![qr(-3, 2), qr(5, 2), q1()];
        assert_eq!(rational_roots(&poly), vec![qi(-3), qr(1, 2)]);
    }

    #[test]
    fn commutator_of_commuting_matrices_vanishes() {
        let a = m(2, 2, &[1, 2, 0, 1]);
        let b = m(2, 2, &[1, 5, 0, 1]);
        assert!(a.commutator(&b).unwrap().is_zero());
    }
}
