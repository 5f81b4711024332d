use super::gns::*;
use super::*;
use crate::taut::Ring;
use crate::{q0, q1, qi, qr};

fn ring() -> Ring {
    Ring::default_model()
}

fn alpha() -> SurfaceClass {
    SurfaceClass::divisor(0, 0, 1)
}

fn point() -> SurfaceClass {
    SurfaceClass::point(0, 1)
}

fn one1() -> SurfaceClass {
    SurfaceClass::one(1)
}

fn q_word(indices: &[i64], class: SurfaceClass) -> OpExpr {
    OpExpr::Word { indices: indices.to_vec(), class, kept: 0 }
}

#[test]
fn h_is_diagonal_at_one_point() {
    let r = ring();
    let h = op_h(&r, 1);
    let m = matrix_of(&r, &h, 1).unwrap();
    // basis classes 1, a, c have codimension 0, 1, 2; eigenvalue codim - 1
    let basis = r.fock_basis(1);
    assert_eq!(basis.len(), 3);
    for (i, (p, mon)) in basis.iter().enumerate() {
        let codim = r.codim_of(p, mon) as i64;
        for j in 0..3 {
            let expect = if i == j { qi(codim - 1) } else { q0() };
            assert_eq!(m[(j, i)], expect);
        }
    }
}

#[test]
fn h_on_unit_is_minus_n() {
    let r = ring();
    for n in 0..=4 {
        let u = unit_vector(&r, n);
        let hu = apply(&r, &op_h(&r, n), &u);
        assert_eq!(hu, u.scale(&qi(-n)), "n = {n}");
        let htu = apply(&r, &op_h_tilde(&r, n), &u);
        assert!(htu.is_zero(), "n = {n}");
    }
}

#[test]
fn degree_zero_word_is_zero() {
    // q_0 never appears: the partition enumeration skips zero parts
    assert!(signed_partitions(0, 1, 3).is_empty());
    let r = ring();
    assert_eq!(op_j(&r, 0, 0, &one1(), 3), OpExpr::Zero);
}

#[test]
fn signed_partition_enumeration() {
    assert_eq!(
        signed_partitions(0, 2, 3),
        vec![vec![3, -3], vec![2, -2], vec![1, -1]]
    );
    assert_eq!(
        signed_partitions(1, 2, 3),
        vec![vec![4, -3], vec![3, -2], vec![2, -1]]
    );
    // sum 2, length 2: (1,1) plus the mixed pairs
    assert_eq!(
        signed_partitions(2, 2, 2),
        vec![vec![4, -2], vec![3, -1], vec![1, 1]]
    );
    assert_eq!(multiset_factorial(&[2, 2, -1, -1, -1]), qi(12));
    assert_eq!(multiset_sum_sq(&[2, 2, -1]), 9);
}

#[test]
fn j_at_level_zero_is_minus_nakajima() {
    let r = ring();
    for g in [one1(), alpha(), point()] {
        for m in [-2i64, -1, 1, 2] {
            for n in 0..=2 {
                if n + m < 0 {
                    continue;
                }
                let j = matrix_of(&r, &op_j(&r, m, 0, &g, n), n).unwrap();
                let q = matrix_of(&r, &q_word(&[m], g.clone()), n).unwrap();
                assert!(j.add(&q).unwrap().is_zero(), "m={m} n={n}");
            }
        }
    }
}

#[test]
fn j_at_level_one_is_minus_virasoro() {
    let r = ring();
    for g in [one1(), point()] {
        for m in [-1i64, 0, 1, 2] {
            for n in 0..=3 {
                if n + m < 0 {
                    continue;
                }
                let j = matrix_of(&r, &op_j(&r, m, 1, &g, n), n).unwrap();
                let l = matrix_of(&r, &op_l(&r, m, &g, n), n).unwrap();
                assert!(j.add(&l).unwrap().is_zero(), "m={m} n={n}");
            }
        }
    }
}

#[test]
fn g_two_is_minus_virasoro_zero() {
    let r = ring();
    for g in [one1(), alpha(), point()] {
        for n in 0..=3 {
            let gm = matrix_of(&r, &op_g(&r, 2, &g, n), n).unwrap();
            let l0 = matrix_of(&r, &op_l(&r, 0, &g, n), n).unwrap();
            assert!(gm.add(&l0).unwrap().is_zero(), "n={n}");
        }
    }
}

#[test]
fn g_and_j_determine_each_other() {
    let r = ring();
    for n in 0..=2 {
        for d in 0..=4i64 {
            for g in [one1(), alpha(), point()] {
                let lhs = matrix_of(&r, &op_j(&r, 0, d, &g, n), n).unwrap();
                let gc = r.mul(&g, &point()).unwrap();
                let mut rhs = matrix_of(&r, &op_g(&r, d + 1, &g, n), n).unwrap();
                if d >= 1 {
                    let extra = matrix_of(&r, &op_g(&r, d - 1, &gc, n), n).unwrap();
                    rhs = rhs.add(&extra.scale(&qi(2))).unwrap();
                }
                let rhs = rhs.scale(&factorial(d as u64));
                assert_eq!(lhs, rhs, "n={n} d={d}");
            }
        }
    }
}

#[test]
fn slotted_g_contracts_to_g() {
    let r = ring();
    for d in 2..=4i64 {
        for g in [one1(), alpha(), point()] {
            for n in 0..=2 {
                let closed = OpExpr::Closed {
                    factors: vec![op_g_slotted(&r, d, n)],
                    class: g.clone(),
                };
                let a = matrix_of(&r, &closed, n).unwrap();
                let b = matrix_of(&r, &op_g(&r, d, &g, n), n).unwrap();
                assert_eq!(a, b, "d={d} n={n}");
            }
        }
    }
}

#[test]
fn e_delta_is_g_three_of_one() {
    let r = ring();
    for n in 2..=3 {
        let e = matrix_of(&r, &op_e_delta(&r, n), n).unwrap();
        let g3 = matrix_of(&r, &op_g(&r, 3, &one1(), n), n).unwrap();
        assert_eq!(e, g3, "n={n}");
    }
}

#[test]
fn h_alpha_delta_forms_agree() {
    let r = ring();
    for n in 0..=2 {
        let a = matrix_of(&r, &op_h_alpha_delta(&r, &alpha(), n), n).unwrap();
        let b = matrix_of(&r, &op_h_alpha_delta_dual(&r, &alpha(), n), n).unwrap();
        assert_eq!(a, b, "n={n}");
    }
}

#[test]
fn transpose_word_examples() {
    let r = ring();
    let t = transpose_word(&r, &[2], &one1(), 0);
    assert_eq!(t, q_word(&[-2], one1()));
    let t = transpose_word(&r, &[3], &alpha(), 0);
    assert_eq!(t, q_word(&[-3], alpha()).scaled(qi(-1)));
    let delta = SurfaceClass::delta(0, 1, 2);
    let t = transpose_word(&r, &[1, 1], &delta, 0);
    assert_eq!(t, q_word(&[-1, -1], delta));
}

#[test]
fn diagonal_decomposition_is_identity_small() {
    let r = ring();
    for n in 0..=2 {
        let d = matrix_of(&r, &op_diagonal(&r, n), n).unwrap();
        let dim = r.fock_basis(n).len();
        assert_eq!(d, QMatrix::identity(dim), "n={n}");
    }
}

#[test]
fn projectors_resolve_identity_small() {
    let r = ring();
    for n in 1..=2i64 {
        let dim = r.fock_basis(n).len();
        let mats: Vec<QMatrix> = (-n..=n)
            .map(|i| matrix_of(&r, &op_projector(&r, i, n), n).unwrap())
            .collect();
        let mut total = QMatrix::zero(dim, dim);
        for m in &mats {
            total = total.add(m).unwrap();
        }
        assert_eq!(total, QMatrix::identity(dim), "n={n}");
        for (a, ma) in mats.iter().enumerate() {
            for (b, mb) in mats.iter().enumerate() {
                let prod = ma.mul(mb).unwrap();
                if a == b {
                    assert_eq!(prod, *ma, "n={n} idempotent {a}");
                } else {
                    assert!(prod.is_zero(), "n={n} orthogonal {a},{b}");
                }
            }
        }
    }
}

#[test]
fn chern_multiplication_is_selfcommuting() {
    let r = ring();
    let n = 2;
    let c0 = matrix_of(&r, &op_mult_chern(&r, 0, n), n).unwrap();
    let c1 = matrix_of(&r, &op_mult_chern(&r, 1, n), n).unwrap();
    assert!(c0.commutator(&c1).unwrap().is_zero());
}

#[test]
fn gns_bracket_hyperbolic() {
    use MukaiBasis::*;
    let r = ring();
    let n = 3;
    let ed = GnsElement::wedge(E, Delta);
    let df = GnsElement::wedge(Delta, F);
    let got = gns_bracket(&r, n, &ed, &df);
    // [e^d, d^f] = (d,d) e^f = (2-2n) e^f
    assert_eq!(got, GnsElement::wedge(E, F).scale(&qi(2 - 2 * n)));
    let ea = GnsElement::wedge(E, Div(0));
    let af = GnsElement::wedge(Div(0), F);
    // [e^a, a^f] = (a,a) e^f
    assert_eq!(gns_bracket(&r, n, &ea, &af), GnsElement::wedge(E, F).scale(&qi(2)));
    // antisymmetry
    let x = ed.add(&ea.scale(&qr(1, 2)));
    let y = df.sub(&af);
    assert_eq!(gns_bracket(&r, n, &x, &y), gns_bracket(&r, n, &y, &x).scale(&qi(-1)));
}

#[test]
fn weight_decomposition_splits_jointly() {
    use crate::linalg::QMatrix;
    let mut a = QMatrix::zero(3, 3);
    a[(0, 0)] = q1();
    a[(1, 1)] = q1();
    a[(2, 2)] = qi(2);
    let mut b = QMatrix::zero(3, 3);
    b[(0, 0)] = qi(5);
    b[(1, 1)] = qi(7);
    b[(2, 2)] = qi(7);
    let blocks = weight_decomposition(&[a, b]).unwrap();
    assert_eq!(blocks.len(), 3);
    let dims: Vec<usize> = blocks.iter().map(|(_, v)| v.len()).collect();
    assert_eq!(dims, vec![1, 1, 1]);
}

#[test]
fn bar_closed_form_small() {
    let r = ring();
    // bar over one index: 1 -> -1, c -> c, divisors -> 0
    assert_eq!(bar(&r, &one1(), 1), one1().scale(&qi(-1)));
    assert_eq!(bar(&r, &point(), 1), point());
    assert!(bar(&r, &alpha(), 1).is_zero());
    // the diagonal has vanishing bar
    let delta = SurfaceClass::delta(0, 1, 2);
    assert!(bar(&r, &delta, 2).is_zero());
}

#[test]
fn unit_vector_is_symmetric_monomial() {
    let r = ring();
    let u = unit_vector(&r, 3);
    let coords = r.basis_expand(&u, 3).unwrap();
    let basis = r.fock_basis(3);
    let mut found = 0;
    for (i, (p, m)) in basis.iter().enumerate() {
        if p.parts() == [1, 1, 1] && m.codim() == 0 {
            assert_eq!(coords[i], qr(1, 6), "unit coordinate");
            found += 1;
        } else {
            assert_eq!(coords[i], q0());
        }
    }
    assert_eq!(found, 1);
}
