//! The Fock-space model of the tautological rings of the Hilbert schemes.
//!
//! A vector of weight `n` is a rational combination of `q_{l_1}...q_{l_t}(G) v`
//! where `l_1 >= ... >= l_t` is a partition of `n`, `G` is a class on `S^t`
//! symmetric under permutations of equal parts, and `v` is the vacuum.  Each
//! part of the partition owns one surface index of `G` (the "Nakajima"
//! indices, stored first).
//!
//! The working type is the *slotted* vector: the same data with `m` extra
//! open surface indices appended after the Nakajima indices.  Creation and
//! annihilation operators each open one new slot (the surface factor of the
//! `Hilb x S`-valued correspondence), and composite operators later contract
//! those slots against an external class.  A plain vector is the `m = 0` case.

use crate::taut::{block_permutations, Monomial, Ring, SurfaceClass, TautError};
use crate::{q0, q1, qi, Rat};
use num::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// An ordinary partition: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<i64>);

impl Partition {
    pub fn new(mut parts: Vec<i64>) -> Self {
        assert!(parts.iter().all(|&p| p > 0));
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    pub fn size(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of squares of the parts.
    pub fn sum_sq(&self) -> i64 {
        self.0.iter().map(|p| p * p).sum()
    }

    /// `z(lambda) = |Aut(lambda)| * prod(lambda_i)`.
    pub fn z(&self) -> Rat {
        let mut z = q1();
        for &p in &self.0 {
            z *= qi(p);
        }
        z * self.aut()
    }

    /// `|Aut(lambda)| = prod_i m_i!` over multiplicities.
    pub fn aut(&self) -> Rat {
        let mut aut = q1();
        let mut run = 1u64;
        for w in self.0.windows(2) {
            if w[0] == w[1] {
                run += 1;
                aut *= qi(run as i64);
            } else {
                run = 1;
            }
        }
        aut
    }

    /// Multiplicity of the part `p`.
    pub fn mult(&self, p: i64) -> usize {
        self.0.iter().filter(|&&x| x == p).count()
    }

    /// Runs of equal parts, as index blocks into `parts()`.
    pub fn runs(&self) -> Vec<Vec<usize>> {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, &p) in self.0.iter().enumerate() {
            match blocks.last_mut() {
                Some(b) if self.0[b[0]] == p => b.push(i),
                _ => blocks.push(vec![i]),
            }
        }
        blocks
    }

    /// All partitions of `n`.
    pub fn all(n: i64) -> Vec<Partition> {
        fn go(n: i64, max: i64) -> Vec<Vec<i64>> {
            if n == 0 {
                return vec![Vec::new()];
            }
            let mut out = Vec::new();
            for first in (1..=n.min(max)).rev() {
                for mut rest in go(n - first, first) {
                    rest.insert(0, first);
                    out.push(rest);
                }
            }
            out
        }
        assert!(n >= 0);
        go(n, n).into_iter().map(Partition).collect()
    }

    /// All partitions of every size from 0 through `n`.
    pub fn all_up_to(n: i64) -> Vec<Partition> {
        (0..=n.max(0)).flat_map(Partition::all).collect()
    }

    fn insert_part(&self, p: i64) -> (Partition, usize) {
        let pos = self.0.iter().position(|&x| x < p).unwrap_or(self.0.len());
        let mut parts = self.0.clone();
        parts.insert(pos, p);
        (Partition(parts), pos)
    }

    fn remove_part_at(&self, pos: usize) -> Partition {
        let mut parts = self.0.clone();
        parts.remove(pos);
        Partition(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, ")")
    }
}

/// A weight-`n` vector with `slots` open surface indices.  For each
/// partition term, the attached class lives on `S^(len + slots)`: Nakajima
/// indices `0..len` first (index `i` owned by part `i`), then slot indices.
/// Classes are stored symmetrized over the Nakajima indices of equal parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlottedVector {
    n: i64,
    slots: usize,
    terms: BTreeMap<Partition, SurfaceClass>,
}

/// A plain Fock vector: no open slots.
pub type FockVector = SlottedVector;

impl SlottedVector {
    pub fn zero(n: i64, slots: usize) -> Self {
        SlottedVector { n, slots, terms: BTreeMap::new() }
    }

    /// The vacuum vector (weight 0).
    pub fn vacuum() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Partition::empty(), SurfaceClass::scalar(q1()));
        SlottedVector { n: 0, slots: 0, terms }
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &SurfaceClass)> {
        self.terms.iter()
    }

    pub fn coeff_class(&self, p: &Partition) -> Option<&SurfaceClass> {
        self.terms.get(p)
    }

    pub fn add_term(&mut self, p: Partition, c: SurfaceClass) {
        debug_assert_eq!(c.arity(), p.len() + self.slots);
        debug_assert_eq!(p.size(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&p) {
            None => {
                self.terms.insert(p, c);
            }
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(p, s);
                }
            }
        }
    }

    pub fn add(&self, other: &SlottedVector) -> SlottedVector {
        assert_eq!(self.n, other.n);
        assert_eq!(self.slots, other.slots);
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SlottedVector) -> SlottedVector {
        self.add(&other.scale(&qi(-1)))
    }

    pub fn scale(&self, r: &Rat) -> SlottedVector {
        if r.is_zero() {
            return SlottedVector::zero(self.n, self.slots);
        }
        let mut out = SlottedVector::zero(self.n, self.slots);
        for (p, c) in &self.terms {
            out.terms.insert(p.clone(), c.scale(r));
        }
        out
    }
}

/// The blocks of interchangeable Nakajima indices for a partition, padded
/// with singleton blocks for `slots` trailing slot indices.
fn sym_blocks(p: &Partition, slots: usize) -> Vec<Vec<usize>> {
    let mut blocks = p.runs();
    for s in 0..slots {
        blocks.push(vec![p.len() + s]);
    }
    blocks
}

impl Ring {
    /// Re-symmetrize a class over the equal-part Nakajima indices.
    fn resym(&self, p: &Partition, slots: usize, c: &SurfaceClass) -> SurfaceClass {
        self.symmetrize(c, &sym_blocks(p, slots)).expect("block partition")
    }

    /// Apply a creation operator `q_k` (`k > 0`): adds the part `k` and ties
    /// its Nakajima index to a newly appended open slot by the diagonal.
    pub fn apply_create(&self, k: i64, v: &SlottedVector) -> SlottedVector {
        assert!(k > 0);
        let mut out = SlottedVector::zero(v.n + k, v.slots + 1);
        for (p, c) in &v.terms {
            let (p2, pos) = p.insert_part(k);
            let old_arity = p.len() + v.slots;
            // old index i goes to i if i < pos (Nakajima before the new
            // part), else i+1 (later Nakajima indices and all slots shift).
            let map: Vec<usize> = (0..old_arity)
                .map(|i| if i < pos { i } else { i + 1 })
                .collect();
            let up = self.pullback(c, &map, old_arity + 2).expect("pullback");
            let tied = self
                .mul(&up, &SurfaceClass::delta(pos, old_arity + 1, old_arity + 2))
                .expect("mul");
            let sym = self.resym(&p2, v.slots + 1, &tied);
            out.add_term(p2, sym);
        }
        out
    }

    /// Apply an annihilation operator `q_{-k}` (`k > 0`): removes a part `k`
    /// with coefficient `-k` per copy, moving that part's Nakajima index to
    /// a newly appended open slot.
    pub fn apply_annihilate(&self, k: i64, v: &SlottedVector) -> SlottedVector {
        assert!(k > 0);
        let mut out = SlottedVector::zero(v.n - k, v.slots + 1);
        let coeff = if self.faults.heis_coeff_shift { qi(-(k + 1)) } else { qi(-k) };
        for (p, c) in &v.terms {
            let m = p.mult(k);
            if m == 0 {
                continue;
            }
            // By symmetry all copies contribute equally; contract the first.
            let pos = p.parts().iter().position(|&x| x == k).unwrap();
            let p2 = p.remove_part_at(pos);
            let old_arity = p.len() + v.slots;
            // Nakajima index pos moves to the end (new slot); indices after
            // it shift down by one; slots keep their relative order.
            let map: Vec<usize> = (0..old_arity)
                .map(|i| {
                    if i == pos {
                        old_arity - 1
                    } else if i < pos {
                        i
                    } else {
                        i - 1
                    }
                })
                .collect();
            let moved = self.pullback(c, &map, old_arity).expect("pullback");
            out.add_term(p2, moved.scale(&(coeff.clone() * qi(m as i64))));
        }
        out
    }

    /// Contract the first `consumed` slots of `v` against a class on
    /// `S^(consumed + kept)`.  Class index `i < consumed` meets slot
    /// `perm[i]`; the remaining `kept` class indices become fresh open slots
    /// appended to the survivors.  Slots of `v` beyond the consumed ones are
    /// preserved.
    pub fn contract_slots(
        &self,
        v: &SlottedVector,
        class: &SurfaceClass,
        perm: &[usize],
        kept: usize,
    ) -> Result<SlottedVector, TautError> {
        let consumed = perm.len();
        if class.arity() != consumed + kept {
            return Err(TautError::ArityMismatch(class.arity(), consumed + kept));
        }
        if consumed > v.slots {
            return Err(TautError::ArityMismatch(consumed, v.slots));
        }
        let surviving = v.slots - consumed;
        let mut out = SlottedVector::zero(v.n, surviving + kept);
        let consumed_set: Vec<usize> = perm.to_vec();
        for (p, c) in &v.terms {
            let nak = p.len();
            let big = nak + v.slots + kept;
            // Embed the term class: Nakajima indices and surviving slots
            // stay in order at the front, consumed slots keep their ambient
            // positions, kept class indices append at the end.
            let mut slot_names: Vec<usize> = Vec::with_capacity(v.slots);
            let mut next = nak;
            // surviving slots (in their original relative order) first
            let mut consumed_pos = vec![usize::MAX; consumed];
            let mut tail = nak + surviving + kept;
            for s in 0..v.slots {
                if let Some(ci) = consumed_set.iter().position(|&x| x == s) {
                    slot_names.push(tail);
                    consumed_pos[ci] = tail;
                    tail += 1;
                } else {
                    slot_names.push(next);
                    next += 1;
                }
            }
            let mut term_map: Vec<usize> = (0..nak).collect();
            term_map.extend(slot_names.iter().copied());
            let term_up = self.pullback(c, &term_map, big)?;
            // Embed the contraction class: index i < consumed meets the
            // ambient position of slot perm[i]; kept indices follow the
            // surviving slots.
            let mut class_map: Vec<usize> = Vec::with_capacity(consumed + kept);
            for i in 0..consumed {
                class_map.push(consumed_pos[i]);
            }
            for j in 0..kept {
                class_map.push(nak + surviving + j);
            }
            let class_up = self.pullback(class, &class_map, big)?;
            let prod = self.mul(&term_up, &class_up)?;
            let forget: Vec<usize> = (nak + surviving + kept..big).collect();
            let down = self.pushforward(&prod, &forget)?;
            let sym = self.resym(p, surviving + kept, &down);
            out.add_term(p.clone(), sym);
        }
        Ok(out)
    }

    /// Coordinates of a slot-free vector in the canonical Fock basis at
    /// weight `n`.
    pub fn basis_expand(&self, v: &FockVector, n: i64) -> Result<Vec<Rat>, TautError> {
        assert_eq!(v.slots, 0);
        assert_eq!(v.n, n);
        let basis = self.fock_basis(n);
        let mut index: BTreeMap<(Partition, Monomial), usize> = BTreeMap::new();
        for (i, (p, m)) in basis.iter().enumerate() {
            index.insert((p.clone(), m.clone()), i);
        }
        let mut coords = vec![q0(); basis.len()];
        for (p, c) in &v.terms {
            let blocks = sym_blocks(p, 0);
            for (m, coeff) in c.terms() {
                let rep = orbit_rep(m, &blocks);
                let i = *index.get(&(p.clone(), rep)).expect("basis covers all monomials");
                coords[i] += coeff.clone();
            }
        }
        Ok(coords)
    }

    /// The canonical Fock basis at weight `n`: pairs of a partition and an
    /// orbit representative monomial under permutations of equal parts.
    pub fn fock_basis(&self, n: i64) -> Vec<(Partition, Monomial)> {
        let mut out = Vec::new();
        for p in Partition::all(n) {
            let blocks = sym_blocks(&p, 0);
            let mut reps: Vec<Monomial> = self
                .canonical_basis(p.len())
                .into_iter()
                .filter(|m| orbit_rep(m, &blocks) == *m)
                .collect();
            reps.sort();
            for m in reps {
                out.push((p.clone(), m));
            }
        }
        out
    }

    /// The basis vector for a pair from `fock_basis`.
    pub fn basis_vector(&self, p: &Partition, m: &Monomial) -> FockVector {
        let mut v = SlottedVector::zero(p.size(), 0);
        let sym = self.resym(p, 0, &SurfaceClass::monomial(m.clone()));
        v.add_term(p.clone(), sym);
        v
    }

    /// Codimension of a basis vector: `|lambda| - l(lambda) + codim(Gamma)`.
    pub fn codim_of(&self, p: &Partition, m: &Monomial) -> usize {
        let base = (p.size() as usize) - p.len() + m.codim();
        if self.faults.tables_codim_shift {
            base + 1
        } else {
            base
        }
    }
}

/// Lexicographically smallest monomial in the orbit of `m` under the block
/// permutations.
fn orbit_rep(m: &Monomial, blocks: &[Vec<usize>]) -> Monomial {
    let arity = m.arity();
    let mut best: Option<Monomial> = None;
    for perm in block_permutations(blocks, arity) {
        let img = m.permuted(&perm);
        best = match best {
            None => Some(img),
            Some(b) if img < b => Some(img),
            b => b,
        };
    }
    best.unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::taut::parse_class;

    fn ring() -> Ring {
        Ring::default_model()
    }

    #[test]
    fn partition_stats() {
        let p = Partition::new(vec![2, 1, 1]);
        assert_eq!(p.size(), 4);
        assert_eq!(p.len(), 3);
        assert_eq!(p.sum_sq(), 6);
        assert_eq!(p.aut(), qi(2));
        assert_eq!(p.z(), qi(4));
        assert_eq!(Partition::all(4).len(), 5);
        assert_eq!(Partition::all(0), vec![Partition::empty()]);
    }

    #[test]
    fn vacuum_contraction_sign() {
        // q_{-k}(c) q_k(1) v = -k v  (pairing (c, 1) = 1)
        let r = ring();
        for k in 1..=3 {
            let v = SlottedVector::vacuum();
            let up = r.apply_create(k, &v);
            let down = r.apply_annihilate(k, &up);
            // contract the two slots: c on the annihilation slot, 1 on the
            // creation slot; slot order is (creation, annihilation)
            let class = parse_class("c_2", 2).unwrap();
            let closed = r.contract_slots(&down, &class, &[0, 1], 0).unwrap();
            let expected = SlottedVector::vacuum().scale(&qi(-k));
            assert_eq!(closed, expected, "k = {}", k);
        }
    }

    #[test]
    fn creations_commute() {
        let r = ring();
        let v = SlottedVector::vacuum();
        let a = r.apply_create(2, &r.apply_create(1, &v));
        let b = r.apply_create(1, &r.apply_create(2, &v));
        // reconcile slot order: a's slots are (from q_1, from q_2), b's are
        // (from q_2, from q_1); contract both with the same labels matched
        // to the same creation
        let g = parse_class("a1_1*c_2", 2).unwrap();
        let ca = r.contract_slots(&a, &g, &[0, 1], 0).unwrap();
        let cb = r.contract_slots(&b, &g, &[1, 0], 0).unwrap();
        assert_eq!(ca, cb);
    }

    #[test]
    fn equal_parts_symmetrized() {
        let r = ring();
        let v = SlottedVector::vacuum();
        let up = r.apply_create(1, &r.apply_create(1, &v));
        let g = parse_class("a1_1*c_2", 2).unwrap();
        let w = r.contract_slots(&up, &g, &[0, 1], 0).unwrap();
        let (p, c) = w.terms().next().unwrap();
        assert_eq!(p, &Partition::new(vec![1, 1]));
        assert_eq!(c, &parse_class("1/2*a1_1*c_2 + 1/2*c_1*a1_2", 2).unwrap());
    }

    #[test]
    fn basis_sizes() {
        let r = ring();
        assert_eq!(r.fock_basis(0).len(), 1);
        assert_eq!(r.fock_basis(1).len(), 3);
        assert_eq!(r.fock_basis(2).len(), 10);
        assert_eq!(r.fock_basis(3).len(), 26);
        assert_eq!(r.fock_basis(4).len(), 66);
    }

    #[test]
    fn expansion_is_dual_to_basis_vectors() {
        let r = ring();
        for n in 0..=3 {
            let basis = r.fock_basis(n);
            for (i, (p, m)) in basis.iter().enumerate() {
                let v = r.basis_vector(p, m);
                let coords = r.basis_expand(&v, n).unwrap();
                for (j, c) in coords.iter().enumerate() {
                    assert_eq!(*c, if i == j { q1() } else { q0() }, "n={} i={} j={}", n, i, j);
                }
            }
        }
    }

    #[test]
    fn heisenberg_on_states() {
        // [q_1(a), q_{-1}(b)] acting on a weight-2 state equals (a,b) Id.
        let r = ring();
        let v = SlottedVector::vacuum();
        let state = {
            let up = r.apply_create(2, &v);
            let g = parse_class("a1_1", 1).unwrap();
            r.contract_slots(&up, &g, &[0], 0).unwrap()
        };
        let apply = |ops: &[i64], state: &SlottedVector| {
            let mut s = state.clone();
            for &k in ops.iter().rev() {
                s = if k > 0 { r.apply_create(k, &s) } else { r.apply_annihilate(-k, &s) };
            }
            s
        };
        // class: a on the q_1 slot, a on the q_{-1} slot
        let g2 = parse_class("a1_1*a1_2", 2).unwrap();
        // q_1 q_{-1}: q_{-1} applied first -> its slot is first
        let fwd = r.contract_slots(&apply(&[1, -1], &state), &g2, &[1, 0], 0).unwrap();
        let bwd = r.contract_slots(&apply(&[-1, 1], &state), &g2, &[0, 1], 0).unwrap();
        let comm = fwd.sub(&bwd);
        // (a, a) = 2 in the default model
        assert_eq!(comm, state.scale(&qi(2)));
    }

    #[test]
    fn codims() {
        let r = ring();
        let mut by_codim = vec![0usize; 5];
        for (p, m) in r.fock_basis(2) {
            by_codim[r.codim_of(&p, &m)] += 1;
        }
        // A^*(Hilb_2): 1, 2, 4, 2, 1
        assert_eq!(by_codim, vec![1, 2, 4, 2, 1]);
    }
}
