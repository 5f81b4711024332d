//! Canonical-form arithmetic for the tautological subring of the Chow rings
//! of powers of a K3 surface.
//!
//! Classes are rational combinations of canonical monomials on `S^k`: a set
//! of disjoint diagonal factors `D(i,j)` together with a label (`1`, a
//! divisor basis class, or the point class `c`) on every unmatched index.
//! Multiplication rewrites arbitrary products back into this basis using the
//! point-class identities of the surface:
//!
//! * two labels on one index: `c*c = 0`, `a*c = 0`, `a*b = (a,b) c`;
//! * a diagonal against a label: `D*c_i = c_i c_j`,
//!   `D*a_i = a_i c_j + a_j c_i`;
//! * chains of diagonals: the small diagonal on three factors expands into
//!   pair diagonals and point classes, and iterating gives the closed form
//!   on any number of factors;
//! * a repeated diagonal: `D(i,j)^2 = 24 c_i c_j` (self-intersection via the
//!   top Chern class of the tangent bundle).

mod text;

pub use text::parse_class;

use crate::{q0, q1, qi, Rat};
use num::Zero;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TautError {
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("index map is not injective")]
    NonInjective,
    #[error("index {0} out of range for arity {1}")]
    IndexRange(usize, usize),
    #[error("divisor basis index {0} out of range for rank {1}")]
    DivisorRange(usize, usize),
    #[error("blocks do not partition the index set")]
    BadBlocks,
    #[error("gram matrix is not symmetric")]
    AsymmetricGram,
    #[error("class is not homogeneous")]
    Inhomogeneous,
    #[error("parse error: {0}")]
    Parse(String),
}

/// The divisor lattice of the surface: a symmetric rational gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorLattice {
    gram: Vec<Vec<Rat>>,
}

impl DivisorLattice {
    pub fn new(gram: Vec<Vec<Rat>>) -> Result<Self, TautError> {
        let rank = gram.len();
        for row in &gram {
            if row.len() != rank {
                return Err(TautError::AsymmetricGram);
            }
        }
        for i in 0..rank {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(TautError::AsymmetricGram);
                }
            }
        }
        Ok(DivisorLattice { gram })
    }

    /// Rank-one lattice with self-intersection `2d` (a degree-`d`
    /// polarization). The default model uses `polarized(1)`.
    pub fn polarized(d: i64) -> Self {
        DivisorLattice { gram: vec![vec![qi(2 * d)]] }
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn pair(&self, i: usize, j: usize) -> &Rat {
        &self.gram[i][j]
    }
}

/// Label carried by an unmatched index of a monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    /// The fundamental class (codimension 0); the absence of a label.
    One,
    /// A divisor basis class (codimension 1).
    Div(usize),
    /// The distinguished point class `c` (codimension 2).
    Point,
}

impl Label {
    pub fn codim(self) -> usize {
        match self {
            Label::One => 0,
            Label::Div(_) => 1,
            Label::Point => 2,
        }
    }
}

/// A canonical monomial on `S^k`: disjoint diagonal pairs plus labels on the
/// unmatched indices. Matched indices always carry `Label::One`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pairs: Vec<(usize, usize)>,
    labels: Vec<Label>,
}

impl Monomial {
    /// The identity monomial on `S^k`.
    pub fn one(arity: usize) -> Self {
        Monomial { pairs: Vec::new(), labels: vec![Label::One; arity] }
    }

    pub fn arity(&self) -> usize {
        self.labels.len()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn codim(&self) -> usize {
        2 * self.pairs.len() + self.labels.iter().map(|l| l.codim()).sum::<usize>()
    }

    fn partner(&self, i: usize) -> Option<usize> {
        for &(a, b) in &self.pairs {
            if a == i {
                return Some(b);
            }
            if b == i {
                return Some(a);
            }
        }
        None
    }

    pub fn with_label(&self, i: usize, l: Label) -> Monomial {
        let mut m = self.clone();
        m.labels[i] = l;
        m
    }

    fn without_pair(&self, i: usize, j: usize) -> Monomial {
        let mut m = self.clone();
        m.pairs.retain(|&(a, b)| (a, b) != (i.min(j), i.max(j)));
        m
    }

    pub fn with_pair(&self, i: usize, j: usize) -> Monomial {
        let mut m = self.clone();
        m.pairs.push((i.min(j), i.max(j)));
        m.pairs.sort_unstable();
        m
    }

    /// Apply an index permutation (`i -> map[i]`).
    pub fn permuted(&self, map: &[usize]) -> Monomial {
        self.relabel(map, self.arity())
    }

    /// Relabel indices by `map` (old index `i` becomes `map[i]`) into a
    /// monomial of arity `new_arity`. `map` must be injective.
    fn relabel(&self, map: &[usize], new_arity: usize) -> Monomial {
        let mut m = Monomial::one(new_arity);
        for &(a, b) in &self.pairs {
            m = m.with_pair(map[a], map[b]);
        }
        for (i, &l) in self.labels.iter().enumerate() {
            m.labels[map[i]] = l;
        }
        m
    }
}

/// A finite rational combination of canonical monomials on a fixed `S^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceClass {
    arity: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl SurfaceClass {
    pub fn zero(arity: usize) -> Self {
        SurfaceClass { arity, terms: BTreeMap::new() }
    }

    /// The fundamental class of `S^k`.
    pub fn one(arity: usize) -> Self {
        SurfaceClass::monomial(Monomial::one(arity))
    }

    pub fn monomial(m: Monomial) -> Self {
        let arity = m.arity();
        let mut terms = BTreeMap::new();
        terms.insert(m, q1());
        SurfaceClass { arity, terms }
    }

    /// Rational multiple of the empty monomial on `S^0`.
    pub fn scalar(r: Rat) -> Self {
        SurfaceClass::one(0).scale(&r)
    }

    /// The point class `c` on index `i` of `S^k`.
    pub fn point(i: usize, arity: usize) -> Self {
        SurfaceClass::monomial(Monomial::one(arity).with_label(i, Label::Point))
    }

    /// The `b`-th divisor basis class on index `i` of `S^k`.
    pub fn divisor(b: usize, i: usize, arity: usize) -> Self {
        SurfaceClass::monomial(Monomial::one(arity).with_label(i, Label::Div(b)))
    }

    /// The diagonal `D(i,j)` on `S^k`.
    pub fn delta(i: usize, j: usize, arity: usize) -> Self {
        SurfaceClass::monomial(Monomial::one(arity).with_pair(i, j))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(q0)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        debug_assert_eq!(m.arity(), self.arity);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(q0);
        *entry += c;
        if entry.is_zero() {
            // re-borrow to remove; find the key again
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &SurfaceClass) -> SurfaceClass {
        debug_assert_eq!(self.arity, other.arity);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SurfaceClass) -> SurfaceClass {
        self.add(&other.scale(&qi(-1)))
    }

    pub fn scale(&self, r: &Rat) -> SurfaceClass {
        if r.is_zero() {
            return SurfaceClass::zero(self.arity);
        }
        let mut out = SurfaceClass::zero(self.arity);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c * r);
        }
        out
    }

    /// Codimension if homogeneous, error otherwise.
    pub fn codim(&self) -> Result<Option<usize>, TautError> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d = m.codim();
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return Err(TautError::Inhomogeneous),
                _ => {}
            }
        }
        Ok(deg)
    }
}

/// Fault-injection switches. All default to off; each identity suite has a
/// designated switch that breaks exactly the rule it verifies, so the test
/// harness can prove the suites are not vacuous.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Faults {
    /// S1: flip the sign of the second term in `D*a_i = a_i c_j + a_j c_i`.
    pub bv4_sign_flip: bool,
    /// S2: annihilation contraction coefficient `-k` becomes `-(k+1)`.
    pub heis_coeff_shift: bool,
    /// S3: drop the alternating sign in the diagonal decomposition.
    pub diag_sign_drop: bool,
    /// S4: projector kernel `pi_0 = Delta - c_1 - c_2` loses the `-c_2`.
    pub proj_pi0_broken: bool,
    /// S5: LQW coefficient `s(lambda)+n^2-2` becomes `s(lambda)+n^2`.
    pub lqw_coeff_broken: bool,
    /// S6: the Lefschetz-dual generator loses its `1/n^2` weights.
    pub llv_f_broken: bool,
    /// S7: the bar operation uses `c_i + c_bullet` instead of `c_i - c_bullet`.
    pub bar_sign_flip: bool,
    /// S8: the shifted grading operator becomes `h + (n-1) Id`.
    pub htilde_shift_broken: bool,
    /// S9: the tangent Chern multiplication term `4 G_k(c)` becomes `3 G_k(c)`.
    pub chern_coeff_broken: bool,
    /// S10: codimension of a basis vector is reported one too high.
    pub tables_codim_shift: bool,
}

impl Faults {
    pub fn by_name(name: &str) -> Option<Faults> {
        let mut f = Faults::default();
        match name {
            "bv4-sign" => f.bv4_sign_flip = true,
            "heis-coeff" => f.heis_coeff_shift = true,
            "diag-sign" => f.diag_sign_drop = true,
            "proj-pi0" => f.proj_pi0_broken = true,
            "lqw-coeff" => f.lqw_coeff_broken = true,
            "llv-f" => f.llv_f_broken = true,
            "bar-sign" => f.bar_sign_flip = true,
            "htilde-shift" => f.htilde_shift_broken = true,
            "chern-coeff" => f.chern_coeff_broken = true,
            "tables-codim" => f.tables_codim_shift = true,
            _ => return None,
        }
        Some(f)
    }

    pub const NAMES: [&'static str; 10] = [
        "bv4-sign",
        "heis-coeff",
        "diag-sign",
        "proj-pi0",
        "lqw-coeff",
        "llv-f",
        "bar-sign",
        "htilde-shift",
        "chern-coeff",
        "tables-codim",
    ];
}

/// Rewrite context: the divisor lattice plus fault switches. All ring
/// operations are methods on this type; values are immutable and the context
/// is freely shareable across threads.
#[derive(Debug, Clone)]
pub struct Ring {
    pub lattice: DivisorLattice,
    pub faults: Faults,
}

impl Ring {
    pub fn new(lattice: DivisorLattice) -> Self {
        Ring { lattice, faults: Faults::default() }
    }

    pub fn with_faults(lattice: DivisorLattice, faults: Faults) -> Self {
        Ring { lattice, faults }
    }

    /// Default model: rank-one lattice of a degree-2 polarization.
    pub fn default_model() -> Self {
        Ring::new(DivisorLattice::polarized(1))
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    // ----- multiplication -------------------------------------------------

    /// Canonical product of two classes of equal arity.
    pub fn mul(&self, a: &SurfaceClass, b: &SurfaceClass) -> Result<SurfaceClass, TautError> {
        if a.arity != b.arity {
            return Err(TautError::ArityMismatch(a.arity, b.arity));
        }
        let mut out = SurfaceClass::zero(a.arity);
        for (m1, c1) in &a.terms {
            for (m2, c2) in &b.terms {
                let prod = self.mul_monomials(m1, m2, None);
                out = out.add(&prod.scale(&(c1 * c2)));
            }
        }
        Ok(out)
    }

    /// Product of two monomials, inserting the factors of `m2` into `m1`.
    /// `order` optionally permutes the insertion sequence (used by the
    /// confluence randomization tests); `None` uses the natural order.
    pub fn mul_monomials(
        &self,
        m1: &Monomial,
        m2: &Monomial,
        order: Option<&[usize]>,
    ) -> SurfaceClass {
        debug_assert_eq!(m1.arity(), m2.arity());
        // Factor list of m2: diagonals then labels.
        let mut factors: Vec<Factor> = Vec::new();
        for &(i, j) in &m2.pairs {
            factors.push(Factor::Delta(i, j));
        }
        for (i, &l) in m2.labels.iter().enumerate() {
            if l != Label::One {
                factors.push(Factor::Lab(i, l));
            }
        }
        let seq: Vec<usize> = match order {
            Some(o) => o.to_vec(),
            None => (0..factors.len()).collect(),
        };
        let mut acc = SurfaceClass::monomial(m1.clone());
        for &fi in &seq {
            acc = match factors[fi] {
                Factor::Delta(i, j) => self.insert_delta_class(&acc, i, j),
                Factor::Lab(i, l) => self.insert_label_class(&acc, i, l),
            };
        }
        acc
    }

    fn insert_delta_class(&self, a: &SurfaceClass, i: usize, j: usize) -> SurfaceClass {
        let mut out = SurfaceClass::zero(a.arity);
        for (m, c) in &a.terms {
            out = out.add(&self.insert_delta(m, i, j).scale(c));
        }
        out
    }

    fn insert_label_class(&self, a: &SurfaceClass, i: usize, l: Label) -> SurfaceClass {
        let mut out = SurfaceClass::zero(a.arity);
        for (m, c) in &a.terms {
            out = out.add(&self.insert_label(m, i, l).scale(c));
        }
        out
    }

    /// `m * D(i,j)`, recursively re-canonicalized.
    fn insert_delta(&self, m: &Monomial, i: usize, j: usize) -> SurfaceClass {
        debug_assert_ne!(i, j);
        if m.labels[i] != Label::One {
            return self.delta_against_label(m, i, j);
        }
        if m.labels[j] != Label::One {
            return self.delta_against_label(m, j, i);
        }
        if m.partner(i) == Some(j) {
            // Repeated diagonal: D^2 = 24 c_i c_j.
            let m2 = m
                .without_pair(i, j)
                .with_label(i, Label::Point)
                .with_label(j, Label::Point);
            return SurfaceClass::monomial(m2).scale(&qi(24));
        }
        if let Some(k) = m.partner(i) {
            return self.triple_diagonal(&m.without_pair(i, k), i, j, k);
        }
        if let Some(k) = m.partner(j) {
            return self.triple_diagonal(&m.without_pair(j, k), j, i, k);
        }
        SurfaceClass::monomial(m.with_pair(i, j))
    }

    /// `D(i,j) * L_i * rest`, with `L = m.labels[i]` nontrivial.
    fn delta_against_label(&self, m: &Monomial, i: usize, j: usize) -> SurfaceClass {
        let l = m.labels[i];
        let m0 = m.with_label(i, Label::One);
        match l {
            Label::One => unreachable!(),
            Label::Point => {
                // D * c_i = c_i c_j
                let t = self.insert_label_class(&self.insert_label(&m0, i, Label::Point), j, Label::Point);
                t
            }
            Label::Div(b) => {
                // D * a_i = a_i c_j + a_j c_i  (fault: minus on the second term)
                let t1 = self.insert_label_class(&self.insert_label(&m0, i, Label::Div(b)), j, Label::Point);
                let t2 = self.insert_label_class(&self.insert_label(&m0, j, Label::Div(b)), i, Label::Point);
                if self.faults.bv4_sign_flip {
                    t1.sub(&t2)
                } else {
                    t1.add(&t2)
                }
            }
        }
    }

    /// Expand `D(i,j)` into a monomial already containing `D(i,k)` (the pair
    /// has been removed from `m0`): the small diagonal on `{i,j,k}` expands
    /// into pair diagonals and point classes.
    fn triple_diagonal(&self, m0: &Monomial, i: usize, j: usize, k: usize) -> SurfaceClass {
        let mut out = SurfaceClass::zero(m0.arity());
        let pos = [(i, j, k), (i, k, j), (j, k, i)];
        for &(a, b, c) in &pos {
            let t = self.insert_label_class(&self.insert_delta(m0, a, b), c, Label::Point);
            out = out.add(&t);
        }
        let neg = [(i, j), (i, k), (j, k)];
        for &(a, b) in &neg {
            let t = self.insert_label_class(&self.insert_label(m0, a, Label::Point), b, Label::Point);
            out = out.sub(&t);
        }
        out
    }

    /// `m * L_i`, recursively re-canonicalized.
    fn insert_label(&self, m: &Monomial, i: usize, l: Label) -> SurfaceClass {
        if l == Label::One {
            return SurfaceClass::monomial(m.clone());
        }
        if let Some(k) = m.partner(i) {
            return self.delta_against_label(
                &m.without_pair(i, k).with_label(i, l),
                i,
                k,
            );
        }
        match (m.labels[i], l) {
            (_, Label::One) => unreachable!(),
            (Label::One, _) => SurfaceClass::monomial(m.with_label(i, l)),
            (Label::Point, _) | (_, Label::Point) => SurfaceClass::zero(m.arity()),
            (Label::Div(a), Label::Div(b)) => {
                let g = self.lattice.pair(a, b).clone();
                SurfaceClass::monomial(m.with_label(i, Label::Point)).scale(&g)
            }
        }
    }

    // ----- functoriality --------------------------------------------------

    /// Pull back along the projection that keeps the indices `inj[0..k]` of
    /// `S^m`: index `i` of `a` becomes index `inj[i]`.
    pub fn pullback(
        &self,
        a: &SurfaceClass,
        inj: &[usize],
        new_arity: usize,
    ) -> Result<SurfaceClass, TautError> {
        if inj.len() != a.arity {
            return Err(TautError::ArityMismatch(inj.len(), a.arity));
        }
        let mut seen = vec![false; new_arity];
        for &t in inj {
            if t >= new_arity {
                return Err(TautError::IndexRange(t, new_arity));
            }
            if seen[t] {
                return Err(TautError::NonInjective);
            }
            seen[t] = true;
        }
        let mut out = SurfaceClass::zero(new_arity);
        for (m, c) in &a.terms {
            out.add_term(m.relabel(inj, new_arity), c.clone());
        }
        Ok(out)
    }

    /// Push forward by forgetting the indices in `forget` (integrating them
    /// out). Point labels integrate to 1; fundamental or divisor labels kill
    /// the term; a matched index deletes its pair, freeing the partner.
    pub fn pushforward(&self, a: &SurfaceClass, forget: &[usize]) -> Result<SurfaceClass, TautError> {
        let mut drop = vec![false; a.arity];
        for &f in forget {
            if f >= a.arity {
                return Err(TautError::IndexRange(f, a.arity));
            }
            drop[f] = true;
        }
        let kept: Vec<usize> = (0..a.arity).filter(|&i| !drop[i]).collect();
        let new_arity = kept.len();
        let mut reindex = vec![usize::MAX; a.arity];
        for (new, &old) in kept.iter().enumerate() {
            reindex[old] = new;
        }
        let mut out = SurfaceClass::zero(new_arity);
        'terms: for (m, c) in &a.terms {
            let mut m = m.clone();
            for f in (0..a.arity).filter(|&i| drop[i]) {
                if let Some(p) = m.partner(f) {
                    m = m.without_pair(f, p);
                    continue;
                }
                match m.labels[f] {
                    Label::Point => {
                        m.labels[f] = Label::One;
                    }
                    Label::One | Label::Div(_) => continue 'terms,
                }
            }
            // All dropped indices are now bare; relabel survivors.
            let mut out_m = Monomial::one(new_arity);
            let mut ok = true;
            for &(x, y) in m.pairs() {
                if drop[x] || drop[y] {
                    ok = false;
                    break;
                }
                out_m = out_m.with_pair(reindex[x], reindex[y]);
            }
            if !ok {
                continue;
            }
            for (i, &l) in m.labels().iter().enumerate() {
                if !drop[i] {
                    out_m.labels[reindex[i]] = l;
                }
            }
            out.add_term(out_m, c.clone());
        }
        Ok(out)
    }

    /// Integral over all factors: the coefficient of the all-point monomial.
    pub fn integrate_all(&self, a: &SurfaceClass) -> Rat {
        let top = Monomial {
            pairs: Vec::new(),
            labels: vec![Label::Point; a.arity],
        };
        a.coeff(&top)
    }

    /// Intersection pairing of two classes on `S` itself.
    pub fn pairing(&self, a: &SurfaceClass, b: &SurfaceClass) -> Result<Rat, TautError> {
        Ok(self.integrate_all(&self.mul(a, b)?))
    }

    /// Swap the first `p` indices with the last `q` as blocks.
    pub fn transpose(&self, a: &SurfaceClass, p: usize, q: usize) -> Result<SurfaceClass, TautError> {
        if p + q != a.arity {
            return Err(TautError::ArityMismatch(p + q, a.arity));
        }
        let map: Vec<usize> = (0..p).map(|i| q + i).chain((0..q).map(|i| i)).collect();
        self.permute(a, &map)
    }

    /// Apply an index permutation (`i -> map[i]`).
    pub fn permute(&self, a: &SurfaceClass, map: &[usize]) -> Result<SurfaceClass, TautError> {
        self.pullback(a, map, a.arity)
    }

    /// Average over all permutations preserving the given blocks of
    /// interchangeable indices.
    pub fn symmetrize(&self, a: &SurfaceClass, blocks: &[Vec<usize>]) -> Result<SurfaceClass, TautError> {
        let mut seen = vec![false; a.arity];
        for b in blocks {
            for &i in b {
                if i >= a.arity {
                    return Err(TautError::IndexRange(i, a.arity));
                }
                if seen[i] {
                    return Err(TautError::BadBlocks);
                }
                seen[i] = true;
            }
        }
        if !seen.iter().all(|&s| s) {
            return Err(TautError::BadBlocks);
        }
        let perms = block_permutations(blocks, a.arity);
        let count = qi(perms.len() as i64);
        let mut out = SurfaceClass::zero(a.arity);
        for p in &perms {
            out = out.add(&self.permute(a, p)?);
        }
        Ok(out.scale(&(q1() / count)))
    }

    // ----- enumeration ----------------------------------------------------

    /// Complete deterministic enumeration of canonical monomials of arity `k`.
    pub fn canonical_basis(&self, k: usize) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = Vec::new();
        for matching in matchings(k) {
            let mut free: Vec<usize> = (0..k).collect();
            for &(a, b) in &matching {
                free.retain(|&i| i != a && i != b);
            }
            let mut label_options: Vec<Label> = vec![Label::One, Label::Point];
            for b in 0..self.rank() {
                label_options.push(Label::Div(b));
            }
            let mut assignments = vec![Vec::new()];
            for _ in 0..free.len() {
                let mut next = Vec::new();
                for asg in &assignments {
                    for &l in &label_options {
                        let mut a2: Vec<Label> = asg.clone();
                        a2.push(l);
                        next.push(a2);
                    }
                }
                assignments = next;
            }
            for asg in assignments {
                let mut m = Monomial::one(k);
                for &(a, b) in &matching {
                    m = m.with_pair(a, b);
                }
                for (slot, &i) in free.iter().enumerate() {
                    m.labels[i] = asg[slot];
                }
                out.push(m);
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

enum Factor {
    Delta(usize, usize),
    Lab(usize, Label),
}

/// All partial matchings (sets of disjoint unordered pairs) of `{0..k}`.
fn matchings(k: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(avail: &[usize]) -> Vec<Vec<(usize, usize)>> {
        let mut out = Vec::new();
        if avail.is_empty() {
            out.push(Vec::new());
            return out;
        }
        let first = avail[0];
        let rest: Vec<usize> = avail[1..].to_vec();
        // first unmatched
        for m in go(&rest) {
            out.push(m);
        }
        // first matched with each later index
        for (pos, &other) in rest.iter().enumerate() {
            let mut rest2 = rest.clone();
            rest2.remove(pos);
            for mut m in go(&rest2) {
                m.push((first, other));
                m.sort_unstable();
                out.push(m);
            }
        }
        out
    }
    go(&(0..k).collect::<Vec<_>>())
}

/// All permutations of `0..arity` that move indices only within the given
/// blocks.
pub(crate) fn block_permutations(blocks: &[Vec<usize>], arity: usize) -> Vec<Vec<usize>> {
    let mut perms: Vec<Vec<usize>> = vec![(0..arity).collect()];
    for block in blocks {
        let mut next = Vec::new();
        for base in &perms {
            for p in permutations(block.len()) {
                let mut v = base.clone();
                for (slot, &src) in p.iter().enumerate() {
                    v[block[slot]] = base[block[src]];
                }
                next.push(v);
            }
        }
        perms = next;
    }
    perms
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::format_class(self, f)
    }
}

#[cfg(test)]
mod tests;
