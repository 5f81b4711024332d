//! Operator calculus on the Fock model: formal operator expressions built
//! from normally ordered Nakajima words with attached surface classes, and
//! named constructors for every operator of the theory (grading operators,
//! Virasoro, the partition-sum family, multiplication by universal classes,
//! the wedge-algebra generators, and the Chow--Kuenneth projectors).
//!
//! Every constructor takes an explicit truncation bound: an infinite sum is
//! enumerated over the terms whose total annihilation weight is at most the
//! bound, which is safe because heavier annihilation words kill every vector
//! of smaller weight.

pub mod gns;

use crate::fock::{Partition, SlottedVector};
use crate::linalg::{LinalgError, QMatrix};
use crate::taut::{Ring, SurfaceClass, TautError};
use crate::{factorial, q1, qi, qr, Rat};
use num::Zero;

/// A formal operator expression, evaluable on slotted vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OpExpr {
    Zero,
    /// A Nakajima word `q_{i_1} ... q_{i_t}` contracted against a class on
    /// `S^(t + kept)`: class index `i < t` belongs to the `i`-th listed
    /// operator, and the trailing `kept` class indices stay open as new
    /// slots of the output (appended after any pre-existing slots).
    Word {
        indices: Vec<i64>,
        class: SurfaceClass,
        kept: usize,
    },
    Scaled(Rat, Box<OpExpr>),
    Sum(Vec<OpExpr>),
    /// Operator product: the last element is applied first.
    Compose(Vec<OpExpr>),
    /// Apply each factor (last first), where every factor must open exactly
    /// one slot; then contract those slots against `class`, whose index `i`
    /// meets the slot opened by the `i`-th listed factor.
    Closed {
        factors: Vec<OpExpr>,
        class: SurfaceClass,
    },
}

impl OpExpr {
    pub fn identity() -> OpExpr {
        OpExpr::Word { indices: Vec::new(), class: SurfaceClass::one(0), kept: 0 }
    }

    pub fn scaled(self, r: Rat) -> OpExpr {
        if r.is_zero() {
            return OpExpr::Zero;
        }
        if r == q1() {
            return self;
        }
        match self {
            OpExpr::Zero => OpExpr::Zero,
            OpExpr::Scaled(s, inner) => OpExpr::Scaled(s * r, inner),
            other => OpExpr::Scaled(r, Box::new(other)),
        }
    }

    pub fn sum(terms: Vec<OpExpr>) -> OpExpr {
        let terms: Vec<OpExpr> = terms.into_iter().filter(|t| !matches!(t, OpExpr::Zero)).collect();
        match terms.len() {
            0 => OpExpr::Zero,
            1 => terms.into_iter().next().unwrap(),
            _ => OpExpr::Sum(terms),
        }
    }

    pub fn compose(factors: Vec<OpExpr>) -> OpExpr {
        if factors.iter().any(|f| matches!(f, OpExpr::Zero)) {
            return OpExpr::Zero;
        }
        match factors.len() {
            0 => OpExpr::identity(),
            1 => factors.into_iter().next().unwrap(),
            _ => OpExpr::Compose(factors),
        }
    }

    /// Net weight (creation minus annihilation); `None` if indeterminate.
    pub fn net_weight(&self) -> Option<i64> {
        match self {
            OpExpr::Zero => None,
            OpExpr::Word { indices, .. } => Some(indices.iter().sum()),
            OpExpr::Scaled(_, inner) => inner.net_weight(),
            OpExpr::Sum(terms) => terms.iter().find_map(|t| t.net_weight()),
            OpExpr::Compose(factors) | OpExpr::Closed { factors, .. } => {
                let mut total = 0;
                for f in factors {
                    total += f.net_weight()?;
                }
                Some(total)
            }
        }
    }

    /// Number of slots the expression opens; `None` if indeterminate.
    pub fn slots_opened(&self) -> Option<usize> {
        match self {
            OpExpr::Zero => None,
            OpExpr::Word { kept, .. } => Some(*kept),
            OpExpr::Scaled(_, inner) => inner.slots_opened(),
            OpExpr::Sum(terms) => terms.iter().find_map(|t| t.slots_opened()),
            OpExpr::Compose(factors) => {
                let mut total = 0;
                for f in factors {
                    total += f.slots_opened()?;
                }
                Some(total)
            }
            OpExpr::Closed { .. } => Some(0),
        }
    }
}

/// A normally ordered word: indices sorted weakly descending (stable), with
/// the class indices permuted along.
pub fn normal_word(ring: &Ring, indices: &[i64], class: &SurfaceClass, kept: usize) -> OpExpr {
    let t = indices.len();
    let mut order: Vec<usize> = (0..t).collect();
    order.sort_by_key(|&i| -indices[i]);
    let sorted: Vec<i64> = order.iter().map(|&i| indices[i]).collect();
    // class index `order[j]` moves to position j
    let mut map: Vec<usize> = vec![0; t + kept];
    for (j, &i) in order.iter().enumerate() {
        map[i] = j;
    }
    for e in 0..kept {
        map[t + e] = t + e;
    }
    let permuted = ring.permute(class, &map).expect("permute");
    OpExpr::Word { indices: sorted, class: permuted, kept }
}

/// Formal transpose of a word: reverse and negate the indices, reverse the
/// class index order, with sign `(-1)^(i_1 + ... + i_t)`.
pub fn transpose_word(ring: &Ring, indices: &[i64], class: &SurfaceClass, kept: usize) -> OpExpr {
    let t = indices.len();
    let rev: Vec<i64> = indices.iter().rev().map(|&i| -i).collect();
    let mut map: Vec<usize> = (0..t).rev().collect();
    for e in 0..kept {
        map.push(t + e);
    }
    let permuted = ring.permute(class, &map).expect("permute");
    let sign = if indices.iter().sum::<i64>() % 2 == 0 { q1() } else { qi(-1) };
    OpExpr::Word { indices: rev, class: permuted, kept }.scaled(sign)
}

/// Evaluate an operator expression on a slotted vector.
pub fn apply(ring: &Ring, op: &OpExpr, v: &SlottedVector) -> SlottedVector {
    match op {
        OpExpr::Zero => SlottedVector::zero(v.n(), v.slots()),
        OpExpr::Word { indices, class, kept } => {
            let base = v.slots();
            let t = indices.len();
            let mut w = v.clone();
            for &m in indices.iter().rev() {
                w = if m > 0 {
                    ring.apply_create(m, &w)
                } else {
                    ring.apply_annihilate(-m, &w)
                };
            }
            // class index i belongs to the i-th listed q, whose slot was
            // opened (t-1-i) steps after the base.
            let perm: Vec<usize> = (0..t).map(|i| base + t - 1 - i).collect();
            ring.contract_slots(&w, class, &perm, *kept).expect("contract")
        }
        OpExpr::Scaled(r, inner) => apply(ring, inner, v).scale(r),
        OpExpr::Sum(terms) => {
            let mut acc: Option<SlottedVector> = None;
            for t in terms {
                let w = apply(ring, t, v);
                acc = Some(match acc {
                    None => w,
                    Some(a) => a.add(&w),
                });
            }
            acc.unwrap_or_else(|| SlottedVector::zero(v.n(), v.slots()))
        }
        OpExpr::Compose(factors) => {
            let mut w = v.clone();
            for f in factors.iter().rev() {
                w = apply(ring, f, &w);
            }
            w
        }
        OpExpr::Closed { factors, class } => {
            if factors.iter().any(|f| matches!(f, OpExpr::Zero)) {
                return SlottedVector::zero(v.n() + op.net_weight().unwrap_or(0), v.slots());
            }
            let base = v.slots();
            let t = factors.len();
            let mut w = v.clone();
            for f in factors.iter().rev() {
                debug_assert_eq!(f.slots_opened().unwrap_or(1), 1);
                w = apply(ring, f, &w);
            }
            let perm: Vec<usize> = (0..t).map(|i| base + t - 1 - i).collect();
            ring.contract_slots(&w, class, &perm, 0).expect("contract")
        }
    }
}

/// Matrix of an operator on the Fock basis: columns are the images of the
/// weight-`n` basis vectors expanded in the target basis.
pub fn matrix_of(ring: &Ring, op: &OpExpr, n: i64) -> Result<QMatrix, TautError> {
    let n_target = n + op.net_weight().unwrap_or(0);
    let source = ring.fock_basis(n);
    let target_dim = if n_target >= 0 { ring.fock_basis(n_target).len() } else { 0 };
    if n_target < 0 {
        return Ok(QMatrix::zero(0, source.len()));
    }
    let mut cols = Vec::with_capacity(source.len());
    for (p, m) in &source {
        let v = ring.basis_vector(p, m);
        let w = apply(ring, op, &v);
        if w.is_zero() {
            cols.push(vec![crate::q0(); target_dim]);
        } else {
            debug_assert_eq!(w.n(), n_target);
            cols.push(ring.basis_expand(&w, n_target)?);
        }
    }
    Ok(QMatrix::from_columns(&cols))
}

/// The unit `1_n = q_1(1)^n v / n!`.
pub fn unit_vector(ring: &Ring, n: i64) -> SlottedVector {
    let mut v = SlottedVector::vacuum();
    for _ in 0..n {
        let up = ring.apply_create(1, &v);
        v = ring
            .contract_slots(&up, &SurfaceClass::one(1), &[0], 0)
            .expect("contract");
    }
    v.scale(&(q1() / factorial(n as u64)))
}

// ----- class helpers --------------------------------------------------------

/// The small diagonal on the listed indices of `S^arity` (the class `1` if
/// fewer than two indices are listed).
pub fn small_diagonal(ring: &Ring, indices: &[usize], arity: usize) -> SurfaceClass {
    let mut acc = SurfaceClass::one(arity);
    for w in indices.windows(2) {
        acc = ring
            .mul(&acc, &SurfaceClass::delta(w[0], w[1], arity))
            .expect("mul");
    }
    acc
}

/// Pull an arity-1 class onto index `i` of `S^arity`.
pub fn on_index(ring: &Ring, a: &SurfaceClass, i: usize, arity: usize) -> SurfaceClass {
    ring.pullback(a, &[i], arity).expect("pullback")
}

/// The pushforward of an arity-1 class along the diagonal: `a_1 * D(1,2)`.
pub fn diagonal_push(ring: &Ring, a: &SurfaceClass) -> SurfaceClass {
    ring.mul(&on_index(ring, a, 0, 2), &SurfaceClass::delta(0, 1, 2))
        .expect("mul")
}

/// The bar operation over the first `k` indices of `phi`:
/// `sum_i int_dot phi(..dot at i..) (c_i - c_dot)`, with any trailing
/// indices of `phi` untouched.
pub fn bar(ring: &Ring, phi: &SurfaceClass, k: usize) -> SurfaceClass {
    let arity = phi.arity();
    let mut out = SurfaceClass::zero(arity);
    let sign = if ring.faults.bar_sign_flip { q1() } else { qi(-1) };
    for i in 0..k {
        // index i moves to the fresh last slot (the "dot"), others fixed
        let mut map: Vec<usize> = (0..arity).collect();
        map[i] = arity;
        let moved = ring.pullback(phi, &map, arity + 1).expect("pullback");
        let weight = SurfaceClass::point(i, arity + 1)
            .add(&SurfaceClass::point(arity, arity + 1).scale(&sign));
        let prod = ring.mul(&moved, &weight).expect("mul");
        out = out.add(&ring.pushforward(&prod, &[arity]).expect("pushforward"));
    }
    out
}

/// The double-bar operation over the first `k` indices of `phi`, with the
/// weight `(alpha_i beta_dot - alpha_dot beta_i)`.
pub fn double_bar(
    ring: &Ring,
    phi: &SurfaceClass,
    k: usize,
    alpha: &SurfaceClass,
    beta: &SurfaceClass,
) -> SurfaceClass {
    let arity = phi.arity();
    let mut out = SurfaceClass::zero(arity);
    for i in 0..k {
        let mut map: Vec<usize> = (0..arity).collect();
        map[i] = arity;
        let moved = ring.pullback(phi, &map, arity + 1).expect("pullback");
        let a_i = on_index(ring, alpha, i, arity + 1);
        let a_dot = on_index(ring, alpha, arity, arity + 1);
        let b_i = on_index(ring, beta, i, arity + 1);
        let b_dot = on_index(ring, beta, arity, arity + 1);
        let weight = ring
            .mul(&a_i, &b_dot)
            .expect("mul")
            .sub(&ring.mul(&a_dot, &b_i).expect("mul"));
        let prod = ring.mul(&moved, &weight).expect("mul");
        out = out.add(&ring.pushforward(&prod, &[arity]).expect("pushforward"));
    }
    out
}

// ----- signed partition enumeration ----------------------------------------

/// All multisets of nonzero integers with the given length and sum, whose
/// total annihilation weight (absolute sum of negative parts) is at most
/// `max_annih`. Returned sorted weakly descending.
pub fn signed_partitions(sum: i64, len: usize, max_annih: i64) -> Vec<Vec<i64>> {
    fn go(
        sum: i64,
        len: usize,
        max_part: i64,
        neg_budget: i64,
        out: &mut Vec<Vec<i64>>,
        acc: &mut Vec<i64>,
    ) {
        if len == 0 {
            if sum == 0 {
                out.push(acc.clone());
            }
            return;
        }
        let l = (len - 1) as i64;
        for part in (-neg_budget..=max_part).rev() {
            if part == 0 {
                continue;
            }
            let budget = if part < 0 { neg_budget + part } else { neg_budget };
            let rem = sum - part;
            // remaining parts are nonzero and <= part: their sum is at most
            // part*l and at least -budget.
            if rem > part * l || rem < -budget {
                continue;
            }
            acc.push(part);
            go(rem, len - 1, part, budget, out, acc);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    let mut acc = Vec::new();
    go(sum, len, sum + max_annih.max(0), max_annih.max(0), &mut out, &mut acc);
    out
}

/// `prod_i m_i!` over the multiplicities of a signed multiset (sorted).
pub fn multiset_factorial(parts: &[i64]) -> Rat {
    let mut f = q1();
    let mut run = 1u64;
    for w in parts.windows(2) {
        if w[0] == w[1] {
            run += 1;
            f *= qi(run as i64);
        } else {
            run = 1;
        }
    }
    f
}

/// Sum of squares of a signed multiset.
pub fn multiset_sum_sq(parts: &[i64]) -> i64 {
    parts.iter().map(|p| p * p).sum()
}

// ----- named operators ------------------------------------------------------

/// The grading operator `h = sum_{k>0} (1/k) q_k q_{-k}(c_2 - c_1)`.
pub fn op_h(_ring: &Ring, trunc: i64) -> OpExpr {
    let mut terms = Vec::new();
    for k in 1..=trunc.max(0) {
        let class = SurfaceClass::point(1, 2).sub(&SurfaceClass::point(0, 2));
        terms.push(
            OpExpr::Word { indices: vec![k, -k], class, kept: 0 }.scaled(qr(1, k)),
        );
    }
    OpExpr::sum(terms)
}

/// The shifted grading operator `h + n Id`, which acts on a homogeneous
/// class of codimension `i` in the `2s`-th summand by `i - s`.
pub fn op_h_tilde(ring: &Ring, n: i64) -> OpExpr {
    let shift = if ring.faults.htilde_shift_broken { n - 1 } else { n };
    OpExpr::sum(vec![op_h(ring, n), OpExpr::identity().scaled(qi(shift))])
}

/// `h_{alpha beta} = sum_{k>0} (1/k) q_k q_{-k}(alpha_2 beta_1 - alpha_1 beta_2)`.
pub fn op_h_alpha_beta(
    ring: &Ring,
    alpha: &SurfaceClass,
    beta: &SurfaceClass,
    trunc: i64,
) -> OpExpr {
    let a1 = on_index(ring, alpha, 0, 2);
    let a2 = on_index(ring, alpha, 1, 2);
    let b1 = on_index(ring, beta, 0, 2);
    let b2 = on_index(ring, beta, 1, 2);
    let class = ring
        .mul(&a2, &b1)
        .expect("mul")
        .sub(&ring.mul(&a1, &b2).expect("mul"));
    let mut terms = Vec::new();
    for k in 1..=trunc.max(0) {
        terms.push(OpExpr::Word { indices: vec![k, -k], class: class.clone(), kept: 0 }.scaled(qr(1, k)));
    }
    OpExpr::sum(terms)
}

/// `h_{alpha delta} = -1/2 sum_{i+j+k=0} (1/k) :q_i q_j q_k(D(1,2)(alpha_1 + alpha_3)):`.
pub fn op_h_alpha_delta(ring: &Ring, alpha: &SurfaceClass, trunc: i64) -> OpExpr {
    let base = ring
        .mul(
            &SurfaceClass::delta(0, 1, 3),
            &on_index(ring, alpha, 0, 3).add(&on_index(ring, alpha, 2, 3)),
        )
        .expect("mul");
    let mut terms = Vec::new();
    for (i, j, k) in zero_sum_triples(trunc) {
        terms.push(normal_word(ring, &[i, j, k], &base, 0).scaled(qr(-1, 2 * k)));
    }
    OpExpr::sum(terms)
}

/// The dual form `sum_{k != 0} (1/k) :L_k q_{-k}(alpha_1 + alpha_2):`, built
/// as genuine operator compositions (the Virasoro factor applied adjacent to
/// the Nakajima factor in normal order).
pub fn op_h_alpha_delta_dual(ring: &Ring, alpha: &SurfaceClass, trunc: i64) -> OpExpr {
    let one = SurfaceClass::one(1);
    let pairs = [(alpha.clone(), one.clone()), (one, alpha.clone())];
    let mut terms = Vec::new();
    for k in 1..=trunc.max(0) {
        for (x, y) in &pairs {
            let lk = op_l(ring, k, x, trunc + k);
            let qk = OpExpr::Word { indices: vec![-k], class: y.clone(), kept: 0 };
            terms.push(OpExpr::compose(vec![lk, qk]).scaled(qr(1, k)));
            let lmk = op_l(ring, -k, x, trunc);
            let qpk = OpExpr::Word { indices: vec![k], class: y.clone(), kept: 0 };
            terms.push(OpExpr::compose(vec![qpk, lmk]).scaled(qr(-1, k)));
        }
    }
    OpExpr::sum(terms)
}

/// Ordered triples of nonzero integers summing to zero with annihilation
/// weight at most `trunc` (hence creation weight at most `trunc` too).
fn zero_sum_triples(trunc: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    let t = trunc.max(0);
    for i in -t..=t {
        for j in -t..=t {
            let k = -i - j;
            if i == 0 || j == 0 || k == 0 {
                continue;
            }
            let annih: i64 = [i, j, k].iter().filter(|&&x| x < 0).map(|&x| -x).sum();
            if annih > t {
                continue;
            }
            out.push((i, j, k));
        }
    }
    out
}

/// Cup product by a divisor: `e_alpha = -sum_{k>0} q_k q_{-k}(D_* alpha)`.
pub fn op_e_alpha(ring: &Ring, alpha: &SurfaceClass, trunc: i64) -> OpExpr {
    let class = diagonal_push(ring, alpha);
    let mut terms = Vec::new();
    for k in 1..=trunc.max(0) {
        terms.push(OpExpr::Word { indices: vec![k, -k], class: class.clone(), kept: 0 }.scaled(qi(-1)));
    }
    OpExpr::sum(terms)
}

/// Cup product by the half-diagonal divisor:
/// `e_delta = -1/6 sum_{i+j+k=0} :q_i q_j q_k(D(1,2,3)):`.
pub fn op_e_delta(ring: &Ring, trunc: i64) -> OpExpr {
    let class = small_diagonal(ring, &[0, 1, 2], 3);
    let mut terms = Vec::new();
    for (i, j, k) in zero_sum_triples(trunc) {
        terms.push(normal_word(ring, &[i, j, k], &class, 0).scaled(qr(-1, 6)));
    }
    OpExpr::sum(terms)
}

/// `f~_alpha = -sum_{k>0} (1/k^2) q_k q_{-k}(alpha_1 + alpha_2)`.
pub fn op_f_alpha(ring: &Ring, alpha: &SurfaceClass, trunc: i64) -> OpExpr {
    let class = on_index(ring, alpha, 0, 2).add(&on_index(ring, alpha, 1, 2));
    let mut terms = Vec::new();
    for k in 1..=trunc.max(0) {
        let w = if ring.faults.llv_f_broken { q1() } else { qr(1, k * k) };
        terms.push(OpExpr::Word { indices: vec![k, -k], class: class.clone(), kept: 0 }.scaled(-w));
    }
    OpExpr::sum(terms)
}

/// `f~_delta = -1/6 sum_{i+j+k=0} :q_i q_j q_k((1/k^2)D(1,2) + (1/j^2)D(1,3)
/// + (1/i^2)D(2,3) + (2/jk)c_1 + (2/ik)c_2 + (2/ij)c_3):`.
pub fn op_f_delta(ring: &Ring, trunc: i64) -> OpExpr {
    let mut terms = Vec::new();
    for (i, j, k) in zero_sum_triples(trunc) {
        let class = SurfaceClass::delta(0, 1, 3)
            .scale(&qr(1, k * k))
            .add(&SurfaceClass::delta(0, 2, 3).scale(&qr(1, j * j)))
            .add(&SurfaceClass::delta(1, 2, 3).scale(&qr(1, i * i)))
            .add(&SurfaceClass::point(0, 3).scale(&qr(2, j * k)))
            .add(&SurfaceClass::point(1, 3).scale(&qr(2, i * k)))
            .add(&SurfaceClass::point(2, 3).scale(&qr(2, i * j)));
        terms.push(normal_word(ring, &[i, j, k], &class, 0).scaled(qr(-1, 6)));
    }
    OpExpr::sum(terms)
}

/// Virasoro operator contracted with a class:
/// `L_k(g) = 1/2 sum_{i+j=k} :q_i q_j(D(1,2) g_1):`.
pub fn op_l(ring: &Ring, k: i64, g: &SurfaceClass, trunc: i64) -> OpExpr {
    let class = ring
        .mul(&SurfaceClass::delta(0, 1, 2), &on_index(ring, g, 0, 2))
        .expect("mul");
    let mut terms = Vec::new();
    for (i, j) in sum_pairs(k, trunc) {
        terms.push(normal_word(ring, &[i, j], &class, 0).scaled(qr(1, 2)));
    }
    OpExpr::sum(terms)
}

/// Slotted Virasoro: `L_k = 1/2 sum_{i+j=k} :q_i q_j|_D:` with one open
/// slot tied to the diagonal.
pub fn op_l_slotted(ring: &Ring, k: i64, trunc: i64) -> OpExpr {
    let class = small_diagonal(ring, &[0, 1, 2], 3);
    let mut terms = Vec::new();
    for (i, j) in sum_pairs(k, trunc) {
        terms.push(normal_word(ring, &[i, j], &class, 1).scaled(qr(1, 2)));
    }
    OpExpr::sum(terms)
}

/// Ordered pairs of nonzero integers summing to `k` with annihilation
/// weight at most `trunc`.
fn sum_pairs(k: i64, trunc: i64) -> Vec<(i64, i64)> {
    let t = trunc.max(0);
    let mut out = Vec::new();
    for i in -t..=k + t {
        let j = k - i;
        if i == 0 || j == 0 {
            continue;
        }
        let annih: i64 = [i, j].iter().filter(|&&x| x < 0).map(|&x| -x).sum();
        if annih > t {
            continue;
        }
        out.push((i, j));
    }
    out
}

fn lqw_second_coeff(ring: &Ring, s: i64, m: i64) -> Rat {
    let shift = if ring.faults.lqw_coeff_broken { 0 } else { -2 };
    qi(s + m * m + shift)
}

/// The partition-sum operator contracted with a class:
/// `J_m^d(g) = d! ( -sum_{|p|=m, l=d+1} (1/p!) q_p(D(1..d+1) g_1)
///               + sum_{|p|=m, l=d-1} (s(p)+m^2-2)/p! q_p(D(1..d-1) g_1 c_1) )`,
/// the second sum taken only for `d >= 2`.
pub fn op_j(ring: &Ring, m: i64, d: i64, g: &SurfaceClass, trunc: i64) -> OpExpr {
    assert!(d >= 0);
    let mut terms = Vec::new();
    let l1 = (d + 1) as usize;
    let class1 = ring
        .mul(&small_diagonal(ring, &(0..l1).collect::<Vec<_>>(), l1), &on_index(ring, g, 0, l1))
        .expect("mul");
    for parts in signed_partitions(m, l1, trunc) {
        let coeff = qi(-1) / multiset_factorial(&parts);
        terms.push(OpExpr::Word { indices: parts, class: class1.clone(), kept: 0 }.scaled(coeff));
    }
    if d >= 2 {
        let l2 = (d - 1) as usize;
        let gc = ring.mul(g, &SurfaceClass::point(0, 1)).expect("mul");
        let class2 = ring
            .mul(&small_diagonal(ring, &(0..l2).collect::<Vec<_>>(), l2), &on_index(ring, &gc, 0, l2))
            .expect("mul");
        for parts in signed_partitions(m, l2, trunc) {
            let coeff = lqw_second_coeff(ring, multiset_sum_sq(&parts), m) / multiset_factorial(&parts);
            terms.push(OpExpr::Word { indices: parts, class: class2.clone(), kept: 0 }.scaled(coeff));
        }
    }
    OpExpr::sum(terms).scaled(factorial(d as u64))
}

/// Slotted version of `op_j`: one open slot tied into the small diagonals
/// (and carrying the point class in the second sum).
pub fn op_j_slotted(ring: &Ring, m: i64, d: i64, trunc: i64) -> OpExpr {
    assert!(d >= 0);
    let mut terms = Vec::new();
    let l1 = (d + 1) as usize;
    let class1 = small_diagonal(ring, &(0..=l1).collect::<Vec<_>>(), l1 + 1);
    for parts in signed_partitions(m, l1, trunc) {
        let coeff = qi(-1) / multiset_factorial(&parts);
        terms.push(OpExpr::Word { indices: parts, class: class1.clone(), kept: 1 }.scaled(coeff));
    }
    if d >= 2 {
        let l2 = (d - 1) as usize;
        let diag = small_diagonal(ring, &(0..=l2).collect::<Vec<_>>(), l2 + 1);
        let class2 = ring
            .mul(&diag, &SurfaceClass::point(l2, l2 + 1))
            .expect("mul");
        for parts in signed_partitions(m, l2, trunc) {
            let coeff = lqw_second_coeff(ring, multiset_sum_sq(&parts), m) / multiset_factorial(&parts);
            terms.push(OpExpr::Word { indices: parts, class: class2.clone(), kept: 1 }.scaled(coeff));
        }
    }
    OpExpr::sum(terms).scaled(factorial(d as u64))
}

/// Multiplication by a one-factor universal class:
/// `G_d(g) = J_0^{d-1}(g)/(d-1)! - 2 J_0^{d-3}(g c)/(d-3)!` with
/// `G_0 = G_1 = 0`.
pub fn op_g(ring: &Ring, d: i64, g: &SurfaceClass, trunc: i64) -> OpExpr {
    if d <= 1 {
        return OpExpr::Zero;
    }
    let mut terms = vec![op_j(ring, 0, d - 1, g, trunc).scaled(q1() / factorial((d - 1) as u64))];
    if d >= 3 {
        let gc = ring.mul(g, &SurfaceClass::point(0, 1)).expect("mul");
        terms.push(op_j(ring, 0, d - 3, &gc, trunc).scaled(qi(-2) / factorial((d - 3) as u64)));
    }
    OpExpr::sum(terms)
}

/// Slotted version of `op_g` (one open slot).
pub fn op_g_slotted(ring: &Ring, d: i64, trunc: i64) -> OpExpr {
    if d <= 1 {
        return OpExpr::Zero;
    }
    let mut terms = vec![op_j_slotted(ring, 0, d - 1, trunc).scaled(q1() / factorial((d - 1) as u64))];
    if d >= 3 {
        // multiply the slot by the point class
        let inner = op_j_slotted(ring, 0, d - 3, trunc);
        terms.push(mul_slot_class(ring, inner, &SurfaceClass::point(0, 1)).scaled(qi(-2) / factorial((d - 3) as u64)));
    }
    OpExpr::sum(terms)
}

/// Multiply the (single) open slot class of every word in the expression by
/// an arity-1 class.
pub fn mul_slot_class(ring: &Ring, op: OpExpr, extra: &SurfaceClass) -> OpExpr {
    match op {
        OpExpr::Zero => OpExpr::Zero,
        OpExpr::Word { indices, class, kept } => {
            assert_eq!(kept, 1);
            let t = indices.len();
            let lifted = on_index(ring, extra, t, t + 1);
            let class = ring.mul(&class, &lifted).expect("mul");
            OpExpr::Word { indices, class, kept }
        }
        OpExpr::Scaled(r, inner) => mul_slot_class(ring, *inner, extra).scaled(r),
        OpExpr::Sum(terms) => OpExpr::sum(
            terms.into_iter().map(|t| mul_slot_class(ring, t, extra)).collect(),
        ),
        other => panic!("mul_slot_class: unsupported node {:?}", other),
    }
}

/// Tie the open slot of every word to a second fresh slot by the diagonal
/// (the pushforward along the diagonal of a one-slot correspondence).
pub fn diagonal_spread(ring: &Ring, op: OpExpr) -> OpExpr {
    match op {
        OpExpr::Zero => OpExpr::Zero,
        OpExpr::Word { indices, class, kept } => {
            assert_eq!(kept, 1);
            let t = indices.len();
            let lifted = ring.pullback(&class, &(0..t + 1).collect::<Vec<_>>(), t + 2).expect("pullback");
            let class = ring
                .mul(&lifted, &SurfaceClass::delta(t, t + 1, t + 2))
                .expect("mul");
            OpExpr::Word { indices, class, kept: 2 }
        }
        OpExpr::Scaled(r, inner) => diagonal_spread(ring, *inner).scaled(r),
        OpExpr::Sum(terms) => OpExpr::sum(
            terms.into_iter().map(|t| diagonal_spread(ring, t)).collect(),
        ),
        other => panic!("diagonal_spread: unsupported node {:?}", other),
    }
}

/// The operator of multiplication by the universal class attached to
/// `(d_1, ..., d_t)` and a class on `S^t`: the slotted `G`'s composed (the
/// last applied first) and contracted against the class, whose `i`-th index
/// meets the `i`-th factor.
pub fn op_mult_universal(ring: &Ring, ds: &[i64], class: &SurfaceClass, trunc: i64) -> OpExpr {
    assert_eq!(ds.len(), class.arity());
    let factors: Vec<OpExpr> = ds.iter().map(|&d| op_g_slotted(ring, d, trunc)).collect();
    if factors.iter().any(|f| matches!(f, OpExpr::Zero)) {
        return OpExpr::Zero;
    }
    OpExpr::Closed { factors, class: class.clone() }
}

/// The universal class itself, as a vector: the multiplication operator
/// applied to the unit.
pub fn universal_class(ring: &Ring, ds: &[i64], class: &SurfaceClass, n: i64) -> SlottedVector {
    let op = op_mult_universal(ring, ds, class, n);
    apply(ring, &op, &unit_vector(ring, n))
}

/// Multiplication by the `k`-th Chern character of the tangent bundle:
/// `2 G_{k+2}(1) + 4 G_k(c) + sum_{i+j=k+2} (-1)^{j+1} G_i G_j(D)
/// + 2 sum_{i+j=k} (-1)^{j+1} G_i(c) G_j(c)`.
pub fn op_mult_chern(ring: &Ring, k: i64, trunc: i64) -> OpExpr {
    assert!(k >= 0);
    let one = SurfaceClass::one(1);
    let c = SurfaceClass::point(0, 1);
    // the single-factor terms come from ch + ch', which kills the odd part
    let mut terms = Vec::new();
    if k % 2 == 0 {
        terms.push(op_g(ring, k + 2, &one, trunc).scaled(qi(2)));
        let four = if ring.faults.chern_coeff_broken { qi(3) } else { qi(4) };
        terms.push(op_g(ring, k, &c, trunc).scaled(four));
    }
    let delta = SurfaceClass::delta(0, 1, 2);
    for i in 0..=k + 2 {
        let j = k + 2 - i;
        if i <= 1 || j <= 1 {
            continue;
        }
        let sign = if (j + 1) % 2 == 0 { q1() } else { qi(-1) };
        terms.push(op_mult_universal(ring, &[i, j], &delta, trunc).scaled(sign));
    }
    for i in 0..=k {
        let j = k - i;
        if i <= 1 || j <= 1 {
            continue;
        }
        let sign = if (j + 1) % 2 == 0 { qi(2) } else { qi(-2) };
        terms.push(
            OpExpr::compose(vec![op_g(ring, i, &c, trunc), op_g(ring, j, &c, trunc)]).scaled(sign),
        );
    }
    OpExpr::sum(terms)
}

// ----- diagonal decomposition and projectors --------------------------------

/// One symmetric block `q_p q_{-p}(pi)` for an ordinary partition `p` and a
/// two-index kernel, as (indices, class under construction).
fn kernel_block(
    ring: &Ring,
    p: &Partition,
    kernel: &SurfaceClass,
    total_arity: usize,
    pos_base: usize,
) -> (Vec<i64>, SurfaceClass) {
    // positive indices occupy pos_base..pos_base+l, negative the next l
    let l = p.len();
    let mut indices = Vec::with_capacity(2 * l);
    for &part in p.parts() {
        indices.push(part);
    }
    for &part in p.parts() {
        indices.push(-part);
    }
    let mut class = SurfaceClass::one(total_arity);
    for a in 0..l {
        let up = ring
            .pullback(kernel, &[pos_base + a, pos_base + l + a], total_arity)
            .expect("pullback");
        class = ring.mul(&class, &up).expect("mul");
    }
    (indices, class)
}

/// The diagonal, decomposed into Nakajima operators:
/// `sum_{p of n} (-1)^{l(p)} / z(p) q_p q_{-p}(D)`.
pub fn op_diagonal(ring: &Ring, n: i64) -> OpExpr {
    let delta = SurfaceClass::delta(0, 1, 2);
    let mut terms = Vec::new();
    for p in Partition::all(n) {
        let l = p.len();
        let (indices, class) = kernel_block(ring, &p, &delta, 2 * l, 0);
        let sign = if ring.faults.diag_sign_drop || l % 2 == 0 { q1() } else { qi(-1) };
        terms.push(normal_word(ring, &indices, &class, 0).scaled(sign / p.z()));
    }
    OpExpr::sum(terms)
}

/// The transposed rank-one kernels of the grading eigenprojectors on the
/// surface itself.
fn transposed_kernels(ring: &Ring) -> [SurfaceClass; 3] {
    let c1 = SurfaceClass::point(0, 2);
    let c2 = SurfaceClass::point(1, 2);
    let delta = SurfaceClass::delta(0, 1, 2);
    // pi_{-1} = c_1, pi_0 = D - c_1 - c_2, pi_1 = c_2; transposing swaps the
    // two surface factors.
    let pi0 = if ring.faults.proj_pi0_broken {
        delta.sub(&c1)
    } else {
        delta.sub(&c1).sub(&c2)
    };
    let t_pi_m1 = c2.clone();
    let t_pi0 = ring.transpose(&pi0, 1, 1).expect("transpose");
    let t_pi1 = c1;
    [t_pi_m1, t_pi0, t_pi1]
}

/// The Chow--Kuenneth projector `P_i` on the weight-`n` model.
pub fn op_projector(ring: &Ring, i: i64, n: i64) -> OpExpr {
    if i < -n || i > n {
        return OpExpr::Zero;
    }
    let kernels = transposed_kernels(ring);
    let mut terms = Vec::new();
    for la in Partition::all_up_to(n) {
        for mu in Partition::all_up_to(n - la.size()) {
            let nu_size = n - la.size() - mu.size();
            for nu in Partition::all(nu_size) {
                if -(la.len() as i64) + (nu.len() as i64) != i {
                    continue;
                }
                let total_l = la.len() + mu.len() + nu.len();
                let total_arity = 2 * total_l;
                let mut indices = Vec::new();
                let mut class = SurfaceClass::one(total_arity);
                let mut base = 0;
                for (p, kern) in [(&la, &kernels[0]), (&mu, &kernels[1]), (&nu, &kernels[2])] {
                    let (idx, cl) = kernel_block(ring, p, kern, total_arity, base);
                    indices.extend(idx);
                    class = ring.mul(&class, &cl).expect("mul");
                    base += 2 * p.len();
                }
                let sign = if total_l % 2 == 0 { q1() } else { qi(-1) };
                let coeff = sign / (la.z() * mu.z() * nu.z());
                terms.push(normal_word(ring, &indices, &class, 0).scaled(coeff));
            }
        }
    }
    OpExpr::sum(terms)
}

// ----- weight decomposition -------------------------------------------------

/// Joint rational eigenspace decomposition of a family of commuting
/// operators given as matrices: returns `(eigenvalue tuple, basis vectors)`
/// blocks. Fails with a structured error if any operator is not
/// diagonalizable over the rationals, or if the matrices do not commute.
pub fn weight_decomposition(
    mats: &[QMatrix],
) -> Result<Vec<(Vec<Rat>, Vec<Vec<Rat>>)>, LinalgError> {
    for a in mats {
        for b in mats {
            if !a.commutator(b)?.is_zero() {
                return Err(LinalgError::NotRationallyDiagonalizable(
                    "the operators do not commute".into(),
                ));
            }
        }
    }
    let dim = mats.first().map_or(0, |m| m.cols());
    let id_basis: Vec<Vec<Rat>> = (0..dim)
        .map(|i| {
            let mut v = vec![crate::q0(); dim];
            v[i] = q1();
            v
        })
        .collect();
    let mut blocks: Vec<(Vec<Rat>, Vec<Vec<Rat>>)> = vec![(Vec::new(), id_basis)];
    for m in mats {
        let mut next = Vec::new();
        for (vals, basis) in blocks {
            // restrict m to the span of `basis`
            let b = QMatrix::from_columns(&basis);
            let mb_cols: Vec<Vec<Rat>> = basis.iter().map(|v| m.apply(v)).collect();
            let mb = QMatrix::from_columns(&mb_cols);
            // solve b * r = mb  (columns of r = coordinates of images)
            let r = solve_columns(&b, &mb)?;
            for (val, sub) in r.rational_eigenspaces()? {
                let mut vecs = Vec::new();
                for coords in sub {
                    vecs.push(b.apply(&coords));
                }
                let mut vals2 = vals.clone();
                vals2.push(val);
                next.push((vals2, vecs));
            }
        }
        blocks = next;
    }
    Ok(blocks)
}

/// Solve `B X = C` column-wise where the columns of `C` lie in the span of
/// the (independent) columns of `B`.
fn solve_columns(b: &QMatrix, c: &QMatrix) -> Result<QMatrix, LinalgError> {
    let rows = b.rows();
    let bn = b.cols();
    let cn = c.cols();
    let mut aug = QMatrix::zero(rows, bn + cn);
    for i in 0..rows {
        for j in 0..bn {
            aug[(i, j)] = b[(i, j)].clone();
        }
        for j in 0..cn {
            aug[(i, bn + j)] = c[(i, j)].clone();
        }
    }
    let pivots = aug.rref();
    let mut out = QMatrix::zero(bn, cn);
    for (r, &pc) in pivots.iter().enumerate() {
        if pc >= bn {
            return Err(LinalgError::Dim(rows, bn, rows, cn));
        }
        for j in 0..cn {
            out[(pc, j)] = aug[(r, bn + j)].clone();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
