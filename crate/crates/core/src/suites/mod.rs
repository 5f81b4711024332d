//! Identity suites: batteries of exact checks that exercise the ring, the
//! Fock model, and every named operator, with structured reporting.
//!
//! Each suite aggregates related identities; a check either passes, fails
//! with a witness describing the first discrepancy, or is skipped when its
//! natural bound exceeds the configured limits. All comparisons are exact
//! rational equalities.

use std::time::Instant;

use serde::Serialize;

use crate::fock::SlottedVector;
use crate::linalg::QMatrix;
use crate::ops::gns::{gns_bracket, gns_generators, op_act};
use crate::ops::{
    self, apply, bar, diagonal_spread, double_bar, matrix_of, mul_slot_class, multiset_factorial,
    multiset_sum_sq, normal_word, op_diagonal, op_g, op_h, op_h_alpha_beta,
    op_h_alpha_delta, op_h_tilde, op_j, op_j_slotted, op_l, op_l_slotted, op_mult_chern,
    op_mult_universal, op_projector, signed_partitions, small_diagonal, unit_vector, OpExpr,
};
use crate::taut::{DivisorLattice, Faults, Monomial, Ring, SurfaceClass};
use crate::{factorial, q0, q1, qi, qr, Rat};
use num::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The available suites, in execution order, with one-line descriptions.
pub const SUITES: [(&str, &str); 10] = [
    ("ring", "surface ring rewrite rules, diagonal reductions, confluence"),
    ("heisenberg", "commutation relations of the creation/annihilation operators"),
    ("diagonal", "decomposition of the identity into Nakajima words"),
    ("projectors", "orthogonal projector system and its grading"),
    ("lqw", "partition-sum operator brackets and the G/J round-trip"),
    ("llv", "wedge-algebra representation is a Lie homomorphism"),
    ("commutators", "grading commutators, bar calculus, proof-internal identities"),
    ("derivations", "multiplication operators conjugate correctly; Leibniz rule"),
    ("chern", "eigenvalues of divisor and Chern classes; summand criterion"),
    ("tables", "dimension tables of the bigraded decomposition"),
];

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub n_max: i64,
    pub gram: Vec<Vec<Rat>>,
    /// Suites to run (by name); empty means all.
    pub suites: Vec<String>,
    pub faults: Faults,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            n_max: 3,
            gram: vec![vec![qi(2)]],
            suites: Vec::new(),
            faults: Faults::default(),
            seed: 0,
        }
    }
}

/// The default pairing matrix for a given divisor rank: (2) in rank one, a
/// hyperbolic plane in rank two, hyperbolic planes plus (2)'s in general.
pub fn default_gram(rho: usize) -> Vec<Vec<Rat>> {
    let mut gram = vec![vec![q0(); rho]; rho];
    let pairs = rho / 2;
    for p in 0..pairs {
        gram[2 * p][2 * p + 1] = q1();
        gram[2 * p + 1][2 * p] = q1();
    }
    if rho % 2 == 1 {
        gram[rho - 1][rho - 1] = qi(2);
    }
    gram
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub eq_anchor: String,
    pub params: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub millis: u128,
}

#[derive(Debug, Clone, Serialize, Default)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        let mut p = 0;
        let mut f = 0;
        let mut s = 0;
        for c in &self.checks {
            match c.status {
                Status::Pass => p += 1,
                Status::Fail => f += 1,
                Status::Skipped => s += 1,
            }
        }
        (p, f, s)
    }
}

/// Catalogue of checked identities: internal equation anchor, the
/// constructor or identity it exercises, and the truncation or bound rule.
/// Every anchor that appears in a report is registered here; a drift test
/// keeps the two in sync.
pub const CATALOGUE: [(&str, &str, &str); 42] = [
    ("eq:surface-relations", "products of divisor and point classes on one surface factor", "exact"),
    ("eq:diagonal-pair", "pair-diagonal rewrite rules, including the self-intersection", "exact"),
    ("eq:small-diagonal", "small diagonal versus pair diagonals and points", "k up to 5"),
    ("eq:point-factor", "a point factor splits off an integral", "trailing arity up to 1"),
    ("eq:divisor-factor", "a divisor factor splits off two integrals", "trailing arity up to 1"),
    ("eq:diagonal-factor", "a class meets a small diagonal", "k up to 4, trailing arity up to 1"),
    ("eq:canonical-form", "rewrite order independence (confluence)", "100 seeded orders"),
    ("eq:heisenberg", "commutator of creation/annihilation operators", "indices up to 4, n up to 4"),
    ("eq:diagonal-dec", "op_diagonal: the identity as a sum over partitions", "partitions of n (exact)"),
    ("eq:projector", "op_projector: orthogonality, completeness, grading", "partition triples of size n (exact)"),
    ("eq:partition-sum", "op_j at levels 0 and 1 versus Nakajima and Virasoro", "annihilation weight at most n"),
    ("eq:bracket-q", "bracket of a Nakajima operator with op_j at weight 0", "d up to 3, |m| up to 2"),
    ("eq:bracket-l", "bracket of a Virasoro operator with op_j at weight 0", "d up to 3, |m| up to 2"),
    ("eq:forward-inverse", "op_j at weight 0 versus op_g (round trip)", "d up to 4"),
    ("eq:wedge-action", "op_act: the wedge-algebra representation", "all generator pairs"),
    ("eq:raise-delta", "op_e_delta equals op_g at degree 3 on the unit class", "n = 2, 3"),
    ("eq:grade-vs-g", "grading operator against a one-factor multiplication", "d up to 4"),
    ("eq:grade-divisor-vs-g", "divisor grading against a one-factor multiplication", "d up to 4"),
    ("eq:grade-delta-vs-g", "delta grading against a one-factor multiplication", "d up to 4"),
    ("eq:bar-word", "grading commutator with a Nakajima word (bar calculus)", "word length up to 3"),
    ("eq:double-bar-word", "divisor grading commutator with a Nakajima word", "word length up to 3"),
    ("eq:bar-closed", "closed form of bar on a diagonal times a class", "k up to 3"),
    ("eq:double-bar-closed", "closed form of double bar on a diagonal times a class", "k up to 3"),
    ("eq:resum-first", "resummation of the main partition sum", "d up to 2, n up to 2"),
    ("eq:resum-first-corr", "resummation of the correction sum", "d up to 3, n up to 2"),
    ("eq:resum-virasoro", "Virasoro resummation of the main sum", "d up to 2, n up to 2"),
    ("eq:resum-virasoro-corr", "Virasoro resummation of the correction sum", "d up to 4, n up to 2"),
    ("eq:cross-terms", "cross terms collapse to a plain partition sum", "d = 3, n up to 2"),
    ("eq:spread-relations", "relations between the two spread classes", "k = 3, 4"),
    ("eq:spread-closed", "closed forms of the two spread classes", "k = 3, 4"),
    ("eq:unit-annihilation", "grading operators annihilate or scale the unit", "n up to 5"),
    ("eq:mult-conjugate", "shifted grading conjugates a multiplication operator", "t up to 2, d up to 4"),
    ("eq:mult-conjugate-divisor", "divisor grading conjugates a multiplication operator", "t up to 2, d up to 4"),
    ("eq:mult-conjugate-delta", "delta grading against a two-factor diagonal class", "factors (2,2), (2,3)"),
    ("eq:leibniz", "the gradings are derivations on universal classes", "three product pairs"),
    ("eq:divisor-eigen", "divisor-type universal class has shifted eigenvalue 1", "n up to 3"),
    ("eq:point-eigen", "exceptional-type universal class has shifted eigenvalue 1", "n up to 3"),
    ("eq:chern-eigen", "op_mult_chern classes have shifted eigenvalue k", "k up to 3"),
    ("eq:chern-delta", "delta grading commutes with op_mult_chern", "k up to 3"),
    ("eq:summand", "the five generating classes satisfy the summand criterion", "exact"),
    ("eq:tables", "structure of the bigraded dimension table", "n up to 3"),
    ("eq:tables-vs-projector", "table blocks match projector ranks", "n up to 2"),
];

/// The catalogue rendered as the text artifact kept in the repository.
pub fn catalogue_text() -> String {
    let mut out = String::from("anchor\tsubject\tbounds\n");
    for (anchor, subject, bounds) in CATALOGUE {
        out.push_str(&format!("{anchor}\t{subject}\t{bounds}\n"));
    }
    out
}

struct Cx {
    ring: Ring,
    cfg: SuiteConfig,
    checks: Vec<CheckResult>,
}

impl Cx {
    fn run<F>(&mut self, id: &str, anchor: &str, params: String, f: F)
    where
        F: FnOnce(&Ring) -> Result<(), String>,
    {
        let start = Instant::now();
        let outcome = f(&self.ring);
        let millis = start.elapsed().as_millis();
        self.checks.push(match outcome {
            Ok(()) => CheckResult {
                id: id.into(),
                eq_anchor: anchor.into(),
                params,
                status: Status::Pass,
                witness: None,
                millis,
            },
            Err(w) => CheckResult {
                id: id.into(),
                eq_anchor: anchor.into(),
                params,
                status: Status::Fail,
                witness: Some(w),
                millis,
            },
        });
    }

    fn skip(&mut self, id: &str, anchor: &str, params: String) {
        self.checks.push(CheckResult {
            id: id.into(),
            eq_anchor: anchor.into(),
            params,
            status: Status::Skipped,
            witness: None,
            millis: 0,
        });
    }
}

/// Run the selected suites and aggregate a deterministic report.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report, crate::taut::TautError> {
    let lattice = DivisorLattice::new(cfg.gram.clone())?;
    let ring = Ring::with_faults(lattice, cfg.faults.clone());
    let mut cx = Cx { ring, cfg: cfg.clone(), checks: Vec::new() };
    let selected: Vec<&str> = if cfg.suites.is_empty() {
        SUITES.iter().map(|(n, _)| *n).collect()
    } else {
        SUITES
            .iter()
            .map(|(n, _)| *n)
            .filter(|n| cfg.suites.iter().any(|s| s == n))
            .collect()
    };
    for name in selected {
        match name {
            "ring" => suite_ring(&mut cx),
            "heisenberg" => suite_heisenberg(&mut cx),
            "diagonal" => suite_diagonal(&mut cx),
            "projectors" => suite_projectors(&mut cx),
            "lqw" => suite_lqw(&mut cx),
            "llv" => suite_llv(&mut cx),
            "commutators" => suite_commutators(&mut cx),
            "derivations" => suite_derivations(&mut cx),
            "chern" => suite_chern(&mut cx),
            "tables" => suite_tables(&mut cx),
            _ => unreachable!(),
        }
    }
    let mut checks = cx.checks;
    checks.sort_by(|a, b| (&a.id, &a.params).cmp(&(&b.id, &b.params)));
    Ok(Report { checks })
}

// ----- helpers --------------------------------------------------------------

fn class_eq(a: &SurfaceClass, b: &SurfaceClass, what: &str) -> Result<(), String> {
    if a == b {
        Ok(())
    } else {
        Err(format!("{what}: lhs = {a}, rhs = {b}"))
    }
}

fn matrix_eq(ring: &Ring, n: i64, a: &QMatrix, b: &QMatrix, what: &str) -> Result<(), String> {
    if a == b {
        return Ok(());
    }
    let basis = ring.fock_basis(n);
    for i in 0..a.rows().min(b.rows()) {
        for j in 0..a.cols().min(b.cols()) {
            if a[(i, j)] != b[(i, j)] {
                let label = basis
                    .get(j)
                    .map(|(p, m)| format!("q_{} [{}]", p, SurfaceClass::monomial(m.clone())))
                    .unwrap_or_else(|| format!("column {j}"));
                return Err(format!(
                    "{what}: on basis vector {label}, entry ({i},{j}): lhs = {}, rhs = {}",
                    a[(i, j)],
                    b[(i, j)]
                ));
            }
        }
    }
    Err(format!("{what}: shape mismatch {}x{} vs {}x{}", a.rows(), a.cols(), b.rows(), b.cols()))
}

fn vector_eq(a: &SlottedVector, b: &SlottedVector, what: &str) -> Result<(), String> {
    if a.sub(b).is_zero() {
        Ok(())
    } else {
        let diff = a.sub(b);
        let (p, c) = diff.terms().next().expect("nonzero");
        Err(format!("{what}: differ at q_{p}: {c}"))
    }
}

fn commutator_matrix(
    ring: &Ring,
    a: &OpExpr,
    b: &OpExpr,
    n: i64,
) -> Result<QMatrix, String> {
    // [A, B] where B may shift the weight; A must preserve it (net 0).
    let shift = b.net_weight().unwrap_or(0);
    let a_hi = matrix_of(ring, a, n + shift).map_err(|e| e.to_string())?;
    let a_lo = matrix_of(ring, a, n).map_err(|e| e.to_string())?;
    let b_m = matrix_of(ring, b, n).map_err(|e| e.to_string())?;
    let left = a_hi.mul(&b_m).map_err(|e| e.to_string())?;
    let right = b_m.mul(&a_lo).map_err(|e| e.to_string())?;
    left.sub(&right).map_err(|e| e.to_string())
}

fn lattice_divisors(ring: &Ring) -> Vec<SurfaceClass> {
    (0..ring.rank()).map(|b| SurfaceClass::divisor(b, 0, 1)).collect()
}

fn c1() -> SurfaceClass {
    SurfaceClass::point(0, 1)
}

/// The class of a pushforward along the diagonal of an arity-1 class.
fn delta_push(ring: &Ring, g: &SurfaceClass) -> SurfaceClass {
    ops::diagonal_push(ring, g)
}

/// `int_dot gamma_dot extra_dot` for an arity-1 gamma: a scalar.
fn integral_with(ring: &Ring, g: &SurfaceClass, extra: &SurfaceClass) -> Rat {
    ring.integrate_all(&ring.mul(g, extra).expect("mul"))
}

// ----- S1: ring -------------------------------------------------------------

fn suite_ring(cx: &mut Cx) {
    cx.run("s01-ring-surface", "eq:surface-relations", "rho and gram from config".into(), |r| {
        let c = c1();
        let cc = r.mul(&c, &c).map_err(|e| e.to_string())?;
        if !cc.is_zero() {
            return Err(format!("c*c = {cc}, expected 0"));
        }
        for (i, a) in lattice_divisors(r).iter().enumerate() {
            let ac = r.mul(a, &c).map_err(|e| e.to_string())?;
            if !ac.is_zero() {
                return Err(format!("a{}*c = {ac}, expected 0", i + 1));
            }
            for (j, b) in lattice_divisors(r).iter().enumerate() {
                let ab = r.mul(a, b).map_err(|e| e.to_string())?;
                let expect = c.scale(r.lattice.pair(i, j));
                class_eq(&ab, &expect, &format!("a{}*a{}", i + 1, j + 1))?;
            }
        }
        Ok(())
    });

    cx.run("s01-ring-diagonal-pair", "eq:diagonal-pair", "arity 2".into(), |r| {
        let d = SurfaceClass::delta(0, 1, 2);
        let c_1 = SurfaceClass::point(0, 2);
        let c_2 = SurfaceClass::point(1, 2);
        let cc = r.mul(&c_1, &c_2).map_err(|e| e.to_string())?;
        class_eq(&r.mul(&d, &c_1).map_err(|e| e.to_string())?, &cc, "D*c_1")?;
        class_eq(&r.mul(&d, &c_2).map_err(|e| e.to_string())?, &cc, "D*c_2")?;
        let dd = r.mul(&d, &d).map_err(|e| e.to_string())?;
        class_eq(&dd, &cc.scale(&qi(24)), "D*D")?;
        for (b, _) in lattice_divisors(r).iter().enumerate() {
            let a_1 = SurfaceClass::divisor(b, 0, 2);
            let a_2 = SurfaceClass::divisor(b, 1, 2);
            let expect = r
                .mul(&a_1, &c_2)
                .map_err(|e| e.to_string())?
                .add(&r.mul(&a_2, &c_1).map_err(|e| e.to_string())?);
            class_eq(&r.mul(&d, &a_1).map_err(|e| e.to_string())?, &expect, "D*a_1")?;
            class_eq(&r.mul(&d, &a_2).map_err(|e| e.to_string())?, &expect, "D*a_2")?;
        }
        Ok(())
    });

    cx.run("s01-ring-small-diagonal", "eq:small-diagonal", "k up to 5".into(), |r| {
        for k in 3..=5usize {
            let lhs = small_diagonal(r, &(0..k).collect::<Vec<_>>(), k);
            // sum of pair diagonals times points, minus (k-2) times the
            // point products
            let mut rhs = SurfaceClass::zero(k);
            for i in 0..k {
                for j in i + 1..k {
                    let mut m = Monomial::one(k).with_pair(i, j);
                    for l in 0..k {
                        if l != i && l != j {
                            m = m.with_label(l, crate::taut::Label::Point);
                        }
                    }
                    rhs.add_term(m, q1());
                }
            }
            for i in 0..k {
                let mut m = Monomial::one(k);
                for l in 0..k {
                    if l != i {
                        m = m.with_label(l, crate::taut::Label::Point);
                    }
                }
                rhs.add_term(m, qi(-(k as i64 - 2)));
            }
            class_eq(&lhs, &rhs, &format!("small diagonal k={k}"))?;
        }
        Ok(())
    });

    cx.run("s01-ring-point-factor", "eq:point-factor", "gamma over basis, l up to 1".into(), |r| {
        // gamma_1 c_1 = c_1 int_dot gamma_dot c_dot, with l trailing indices
        for l in 0..=1usize {
            for gm in r.canonical_basis(1 + l) {
                let g = SurfaceClass::monomial(gm);
                let lhs = r.mul(&g, &SurfaceClass::point(0, 1 + l)).map_err(|e| e.to_string())?;
                let gc = r
                    .mul(&g, &SurfaceClass::point(0, 1 + l))
                    .map_err(|e| e.to_string())?;
                let pushed = r.pushforward(&gc, &[0]).map_err(|e| e.to_string())?;
                let lifted = r
                    .pullback(&pushed, &(1..=l).collect::<Vec<_>>(), 1 + l)
                    .map_err(|e| e.to_string())?;
                let rhs = r
                    .mul(&SurfaceClass::point(0, 1 + l), &lifted)
                    .map_err(|e| e.to_string())?;
                class_eq(&lhs, &rhs, &format!("gamma*c with l={l}"))?;
            }
        }
        Ok(())
    });

    cx.run("s01-ring-divisor-factor", "eq:divisor-factor", "gamma over basis, l up to 1".into(), |r| {
        // gamma_1 a_1 = c_1 int gamma a + a_1 int gamma c
        for l in 0..=1usize {
            for b in 0..r.rank() {
                for gm in r.canonical_basis(1 + l) {
                    let g = SurfaceClass::monomial(gm);
                    let a = SurfaceClass::divisor(b, 0, 1 + l);
                    let lhs = r.mul(&g, &a).map_err(|e| e.to_string())?;
                    let mut rhs = SurfaceClass::zero(1 + l);
                    for (w, target) in [
                        (a.clone(), SurfaceClass::point(0, 1 + l)),
                        (SurfaceClass::point(0, 1 + l), a.clone()),
                    ] {
                        let gw = r.mul(&g, &w).map_err(|e| e.to_string())?;
                        let pushed = r.pushforward(&gw, &[0]).map_err(|e| e.to_string())?;
                        let lifted = r
                            .pullback(&pushed, &(1..=l).collect::<Vec<_>>(), 1 + l)
                            .map_err(|e| e.to_string())?;
                        rhs = rhs.add(&r.mul(&target, &lifted).map_err(|e| e.to_string())?);
                    }
                    class_eq(&lhs, &rhs, &format!("gamma*a{} with l={l}", b + 1))?;
                }
            }
        }
        Ok(())
    });

    cx.run("s01-ring-diagonal-factor", "eq:diagonal-factor", "k up to 4, l up to 1".into(), |r| {
        // gamma_1 D(1..k) = sum_i gamma_i prod c_j
        //   + (D(1..k) - sum_i prod c_j) int c gamma - (k-1) c_1..c_k int gamma
        for l in 0..=1usize {
            for k in 2..=4usize {
                let arity = k + l;
                let diag = small_diagonal(r, &(0..k).collect::<Vec<_>>(), arity);
                for gm in r.canonical_basis(1 + l) {
                    let g1 = SurfaceClass::monomial(gm.clone());
                    // place gamma's first index at a chosen spot, trailing at k..
                    let place = |at: usize| -> SurfaceClass {
                        let mut map = vec![at];
                        map.extend(k..arity);
                        r.pullback(&g1, &map, arity).expect("pullback")
                    };
                    let lhs = r.mul(&place(0), &diag).map_err(|e| e.to_string())?;
                    let prod_c_except = |skip: usize| -> SurfaceClass {
                        let mut m = Monomial::one(arity);
                        for j in 0..k {
                            if j != skip {
                                m = m.with_label(j, crate::taut::Label::Point);
                            }
                        }
                        SurfaceClass::monomial(m)
                    };
                    let mut rhs = SurfaceClass::zero(arity);
                    for i in 0..k {
                        rhs = rhs.add(&r.mul(&place(i), &prod_c_except(i)).map_err(|e| e.to_string())?);
                    }
                    let int_cg = r
                        .pushforward(
                            &r.mul(&g1, &SurfaceClass::point(0, 1 + l)).map_err(|e| e.to_string())?,
                            &[0],
                        )
                        .map_err(|e| e.to_string())?;
                    let int_g = r.pushforward(&g1, &[0]).map_err(|e| e.to_string())?;
                    let lift = |scalar_class: &SurfaceClass| -> SurfaceClass {
                        r.pullback(scalar_class, &(k..arity).collect::<Vec<_>>(), arity)
                            .expect("pullback")
                    };
                    let mut middle = diag.clone();
                    for i in 0..k {
                        middle = middle.sub(&prod_c_except(i));
                    }
                    rhs = rhs.add(&r.mul(&middle, &lift(&int_cg)).map_err(|e| e.to_string())?);
                    let mut all_c = Monomial::one(arity);
                    for j in 0..k {
                        all_c = all_c.with_label(j, crate::taut::Label::Point);
                    }
                    rhs = rhs.add(
                        &r.mul(&SurfaceClass::monomial(all_c), &lift(&int_g))
                            .map_err(|e| e.to_string())?
                            .scale(&qi(-(k as i64 - 1))),
                    );
                    class_eq(&lhs, &rhs, &format!("gamma*D k={k} l={l}"))?;
                }
            }
        }
        Ok(())
    });

    let seed = cx.cfg.seed;
    cx.run("s01-ring-confluence", "eq:canonical-form", format!("100 orders, seed={seed}"), |r| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // a product whose reduction exercises chains, squares, and labels
        let k = 4usize;
        let factors: Vec<SurfaceClass> = vec![
            SurfaceClass::delta(0, 1, k),
            SurfaceClass::delta(1, 2, k),
            SurfaceClass::delta(2, 3, k),
            SurfaceClass::divisor(0, 0, k),
        ];
        let reference = factors
            .iter()
            .try_fold(SurfaceClass::one(k), |acc, f| r.mul(&acc, f))
            .map_err(|e| e.to_string())?;
        for trial in 0..100 {
            let mut order: Vec<usize> = (0..factors.len()).collect();
            order.shuffle(&mut rng);
            let shuffled = order
                .iter()
                .try_fold(SurfaceClass::one(k), |acc, &i| r.mul(&acc, &factors[i]))
                .map_err(|e| e.to_string())?;
            class_eq(&shuffled, &reference, &format!("trial {trial} order {order:?}"))?;
        }
        Ok(())
    });
}

// ----- S2: Heisenberg -------------------------------------------------------

fn suite_heisenberg(cx: &mut Cx) {
    for n in 0..=4i64 {
        let params = format!("n={n}, |k|,|l| up to 4, classes over basis(1)");
        if n > cx.cfg.n_max {
            cx.skip("s02-heisenberg-bracket", "eq:heisenberg", params);
            continue;
        }
        cx.run("s02-heisenberg-bracket", "eq:heisenberg", params, |r| {
            let classes: Vec<SurfaceClass> =
                r.canonical_basis(1).into_iter().map(SurfaceClass::monomial).collect();
            let word = |k: i64, x: &SurfaceClass| OpExpr::Word {
                indices: vec![k],
                class: x.clone(),
                kept: 0,
            };
            // all single-operator labels: index and class position
            let singles: Vec<(i64, usize)> = (-4i64..=4)
                .filter(|&k| k != 0)
                .flat_map(|k| (0..classes.len()).map(move |c| (k, c)))
                .collect();
            let basis = r.fock_basis(n);
            for (p, m) in &basis {
                let v = r.basis_vector(p, m);
                // first applications are shared across all bracket pairs
                let firsts: Vec<SlottedVector> =
                    singles.iter().map(|&(k, c)| apply(r, &word(k, &classes[c]), &v)).collect();
                // antisymmetry lets us check each unordered pair once
                for (i, &(k, cx_)) in singles.iter().enumerate() {
                    for (j, &(l, cy)) in singles.iter().enumerate().skip(i) {
                        if n + k + l < 0 {
                            continue;
                        }
                        let (x, y) = (&classes[cx_], &classes[cy]);
                        let ab = apply(r, &word(k, x), &firsts[j]);
                        let ba = apply(r, &word(l, y), &firsts[i]);
                        let mut expect = SlottedVector::zero(n + k + l, 0);
                        if k + l == 0 {
                            let pair = r.pairing(x, y).map_err(|e| e.to_string())?;
                            expect = v.scale(&(qi(k) * pair));
                        }
                        vector_eq(
                            &ab.sub(&ba),
                            &expect,
                            &format!(
                                "[q_{k}({x}), q_{l}({y})] on q_{p} [{}]",
                                SurfaceClass::monomial(m.clone())
                            ),
                        )?;
                    }
                }
            }
            Ok(())
        });
    }
}

// ----- S3: diagonal decomposition -------------------------------------------

fn suite_diagonal(cx: &mut Cx) {
    for n in 0..=4i64 {
        let params = format!("n={n}");
        if n > cx.cfg.n_max {
            cx.skip("s03-diagonal-identity", "eq:diagonal-dec", params);
            continue;
        }
        cx.run("s03-diagonal-identity", "eq:diagonal-dec", params, |r| {
            let op = op_diagonal(r, n);
            for (p, m) in &r.fock_basis(n) {
                let v = r.basis_vector(p, m);
                let w = apply(r, &op, &v);
                vector_eq(
                    &w,
                    &v,
                    &format!("on q_{p} [{}]", SurfaceClass::monomial(m.clone())),
                )?;
            }
            Ok(())
        });
    }
}

// ----- S4: projectors -------------------------------------------------------

fn suite_projectors(cx: &mut Cx) {
    for n in 1..=3i64 {
        let params = format!("n={n}");
        if n > cx.cfg.n_max {
            cx.skip("s04-projector-system", "eq:projector", params);
            continue;
        }
        cx.run("s04-projector-system", "eq:projector", params, |r| {
            let dim = r.fock_basis(n).len();
            let mats: Vec<(i64, QMatrix)> = (-n..=n)
                .map(|i| Ok((i, matrix_of(r, &op_projector(r, i, n), n).map_err(|e| e.to_string())?)))
                .collect::<Result<_, String>>()?;
            let mut total = QMatrix::zero(dim, dim);
            for (_, m) in &mats {
                total = total.add(m).map_err(|e| e.to_string())?;
            }
            matrix_eq(r, n, &total, &QMatrix::identity(dim), "sum of projectors")?;
            for (i, mi) in &mats {
                for (j, mj) in &mats {
                    let prod = mi.mul(mj).map_err(|e| e.to_string())?;
                    let expect = if i == j { mi.clone() } else { QMatrix::zero(dim, dim) };
                    matrix_eq(r, n, &prod, &expect, &format!("P_{i} P_{j}"))?;
                }
            }
            let h = matrix_of(r, &op_h(r, n), n).map_err(|e| e.to_string())?;
            for (i, mi) in &mats {
                let hp = h.mul(mi).map_err(|e| e.to_string())?;
                matrix_eq(r, n, &hp, &mi.scale(&qi(*i)), &format!("h P_{i}"))?;
            }
            for i in [n + 1, -(n + 1), n + 3] {
                if !matches!(op_projector(r, i, n), OpExpr::Zero) {
                    return Err(format!("P_{i} should vanish for |i| > n"));
                }
            }
            Ok(())
        });
    }
}

// ----- S5: partition-sum operators ------------------------------------------

fn suite_lqw(cx: &mut Cx) {
    // base cases: J at levels 0 and 1
    for n in 0..=3i64 {
        let params = format!("n={n}, |m| up to 2");
        if n > cx.cfg.n_max {
            cx.skip("s05-lqw-base", "eq:partition-sum", params);
            continue;
        }
        cx.run("s05-lqw-base", "eq:partition-sum", params, |r| {
            let one = SurfaceClass::one(1);
            for g in [one.clone(), c1()] {
                for m in -2i64..=2 {
                    if n + m < 0 {
                        continue;
                    }
                    if m != 0 {
                        let j0 = matrix_of(r, &op_j(r, m, 0, &g, n), n).map_err(|e| e.to_string())?;
                        let q = matrix_of(
                            r,
                            &OpExpr::Word { indices: vec![m], class: g.clone(), kept: 0 },
                            n,
                        )
                        .map_err(|e| e.to_string())?;
                        matrix_eq(r, n, &j0, &q.scale(&qi(-1)), &format!("J_{m}^0 vs -q_{m}"))?;
                    }
                    let j1 = matrix_of(r, &op_j(r, m, 1, &g, n), n).map_err(|e| e.to_string())?;
                    let l = matrix_of(r, &op_l(r, m, &g, n), n).map_err(|e| e.to_string())?;
                    matrix_eq(r, n, &j1, &l.scale(&qi(-1)), &format!("J_{m}^1 vs -L_{m}"))?;
                }
            }
            Ok(())
        });
    }

    // bracket with a Nakajima operator, as slotted operators contracted
    // against every basis class of arity 2
    for n in 0..=3i64 {
        let params = format!("n={n}, d up to 3, |m| up to 2");
        if n > cx.cfg.n_max {
            cx.skip("s05-lqw-bracket-q", "eq:bracket-q", params.clone());
            cx.skip("s05-lqw-bracket-l", "eq:bracket-l", params);
            continue;
        }
        cx.run("s05-lqw-bracket-q", "eq:bracket-q", params.clone(), |r| {
            lqw_bracket_check(r, n, false)
        });
        cx.run("s05-lqw-bracket-l", "eq:bracket-l", params, |r| {
            lqw_bracket_check(r, n, true)
        });
    }

    for n in 0..=3i64 {
        let params = format!("n={n}, d up to 4");
        if n > cx.cfg.n_max {
            cx.skip("s05-lqw-roundtrip", "eq:forward-inverse", params);
            continue;
        }
        cx.run("s05-lqw-roundtrip", "eq:forward-inverse", params, |r| {
            for d in 0..=4i64 {
                for gm in r.canonical_basis(1) {
                    let g = SurfaceClass::monomial(gm);
                    let lhs = matrix_of(r, &op_j(r, 0, d, &g, n), n).map_err(|e| e.to_string())?;
                    let gc = r.mul(&g, &c1()).map_err(|e| e.to_string())?;
                    let mut rhs = matrix_of(r, &op_g(r, d + 1, &g, n), n).map_err(|e| e.to_string())?;
                    if d >= 1 {
                        let extra = matrix_of(r, &op_g(r, d - 1, &gc, n), n).map_err(|e| e.to_string())?;
                        rhs = rhs.add(&extra.scale(&qi(2))).map_err(|e| e.to_string())?;
                    }
                    matrix_eq(r, n, &lhs, &rhs.scale(&factorial(d as u64)), &format!("d={d}"))?;
                }
            }
            Ok(())
        });
    }
}

/// Check `[q_m, J_0^d]` (or `[L_m, J_0^d]` when `virasoro` is set) against
/// the diagonal pushforward formulas, contracting the two open slots with
/// every canonical class of arity 2.
fn lqw_bracket_check(r: &Ring, n: i64, virasoro: bool) -> Result<(), String> {
    let trunc = n + 2;
    for d in 1..=3i64 {
        for m in (-2i64..=2).filter(|&m| m != 0) {
            if n + m < 0 {
                continue;
            }
            let left: OpExpr = if virasoro {
                op_l_slotted(r, m, trunc)
            } else {
                OpExpr::Word { indices: vec![m], class: SurfaceClass::delta(0, 1, 2), kept: 1 }
            };
            let j = op_j_slotted(r, 0, d, trunc);
            // rhs: d*m*D_*(J_m^{d-1 or d}) plus the c-correction for Virasoro
            let mut rhs_op = diagonal_spread(
                r,
                op_j_slotted(r, m, if virasoro { d } else { d - 1 }, trunc),
            )
            .scaled(qi(d * m));
            if virasoro && d >= 2 {
                let corr = diagonal_spread(r, mul_slot_class(r, op_j_slotted(r, m, d - 2, trunc), &c1()))
                    .scaled(qi(2 * d * (d - 1) * m * (m * m - 1)));
                rhs_op = OpExpr::sum(vec![rhs_op, corr]);
            }
            for (p, mon) in &r.fock_basis(n) {
                let v = r.basis_vector(p, mon);
                // left factor's slot must be the first class index
                let ab = apply(r, &left, &apply(r, &j, &v));
                let ba = apply(r, &j, &apply(r, &left, &v));
                let rhs = apply(r, &rhs_op, &v);
                for gm in r.canonical_basis(2) {
                    let g = SurfaceClass::monomial(gm.clone());
                    // in ab, slots are (J, left) = (0, 1); in ba, (left, J) = (0, 1)
                    let lhs_c = r
                        .contract_slots(&ab, &g, &[1, 0], 0)
                        .map_err(|e| e.to_string())?
                        .sub(&r.contract_slots(&ba, &g, &[0, 1], 0).map_err(|e| e.to_string())?);
                    let rhs_c = r.contract_slots(&rhs, &g, &[0, 1], 0).map_err(|e| e.to_string())?;
                    vector_eq(
                        &lhs_c,
                        &rhs_c,
                        &format!(
                            "d={d} m={m} virasoro={virasoro} on q_{p}, contracted with {}",
                            SurfaceClass::monomial(gm)
                        ),
                    )?;
                }
            }
        }
    }
    Ok(())
}

// ----- S6: Lie algebra representation ---------------------------------------

fn suite_llv(cx: &mut Cx) {
    for n in 1..=3i64 {
        let params = format!("n={n}, rho={}", cx.cfg.gram.len());
        if n > cx.cfg.n_max {
            cx.skip("s06-llv-homomorphism", "eq:wedge-action", params);
            continue;
        }
        cx.run("s06-llv-homomorphism", "eq:wedge-action", params, |r| {
            let gens = gns_generators(r);
            let mats: Vec<QMatrix> = gens
                .iter()
                .map(|g| matrix_of(r, &op_act(r, n, g), n).map_err(|e| e.to_string()))
                .collect::<Result<_, _>>()?;
            for (i, x) in gens.iter().enumerate() {
                for (j, y) in gens.iter().enumerate() {
                    let bracket = gns_bracket(r, n, x, y);
                    let lhs = matrix_of(r, &op_act(r, n, &bracket), n).map_err(|e| e.to_string())?;
                    let rhs = mats[i].commutator(&mats[j]).map_err(|e| e.to_string())?;
                    matrix_eq(r, n, &lhs, &rhs, &format!("[{x}, {y}]"))?;
                }
            }
            Ok(())
        });
    }

    for n in 2..=3i64 {
        let params = format!("n={n}");
        if n > cx.cfg.n_max {
            cx.skip("s06-llv-e-delta", "eq:raise-delta", params);
            continue;
        }
        cx.run("s06-llv-e-delta", "eq:raise-delta", params, |r| {
            let lhs = matrix_of(r, &ops::op_e_delta(r, n), n).map_err(|e| e.to_string())?;
            let rhs = matrix_of(r, &op_g(r, 3, &SurfaceClass::one(1), n), n).map_err(|e| e.to_string())?;
            matrix_eq(r, n, &lhs, &rhs, "e_delta vs G_3(1)")
        });
    }
}

mod commutators;
mod mult;

use commutators::suite_commutators;
use mult::{suite_chern, suite_derivations, suite_tables};
pub use mult::dimension_table;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suites_pass_small() {
        // weight 1 keeps this fast; the acceptance tests cover larger weights
        let cfg = SuiteConfig { n_max: 1, ..Default::default() };
        let report = run_suite(&cfg).unwrap();
        for c in &report.checks {
            println!(
                "{:<34} {:28} {:?} {}ms {}",
                c.id,
                c.params,
                c.status,
                c.millis,
                c.witness.clone().unwrap_or_default()
            );
        }
        assert!(report.all_passed());
    }
}
