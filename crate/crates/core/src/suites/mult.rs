//! Derivation, eigenvalue, and table suites: conjugation of multiplication
//! operators by the grading operators, the Leibniz rule, eigenvalues of
//! divisor and Chern classes, and the bigraded dimension tables.

use std::collections::BTreeMap;

use super::*;

/// A representative list of multi-point classes for two-factor universal
/// classes.
fn two_point_classes(r: &Ring) -> Vec<SurfaceClass> {
    let delta = SurfaceClass::delta(0, 1, 2);
    let delta_c = r.mul(&delta, &SurfaceClass::point(0, 2)).expect("mul");
    let mut out = vec![
        SurfaceClass::one(2),
        SurfaceClass::point(0, 2),
        delta,
        delta_c,
    ];
    for b in 0..r.rank() {
        out.push(SurfaceClass::divisor(b, 0, 2));
    }
    out
}

fn mult_configs(r: &Ring) -> Vec<(Vec<i64>, SurfaceClass)> {
    let mut out = Vec::new();
    for d in 2..=4i64 {
        for gm in r.canonical_basis(1) {
            out.push((vec![d], SurfaceClass::monomial(gm)));
        }
    }
    for ds in [vec![2, 2], vec![2, 3]] {
        for cls in two_point_classes(r) {
            out.push((ds.clone(), cls));
        }
    }
    out
}

pub(super) fn suite_derivations(cx: &mut Cx) {
    for n in 0..=5i64 {
        let params = format!("n={n}");
        if n > cx.cfg.n_max {
            cx.skip("s08-unit-annihilation", "eq:unit-annihilation", params);
            continue;
        }
        cx.run("s08-unit-annihilation", "eq:unit-annihilation", params, |r| {
            let u = unit_vector(r, n);
            let hu = apply(r, &op_h(r, n), &u);
            vector_eq(&hu, &u.scale(&qi(-n)), "grading on the unit")?;
            for alpha in lattice_divisors(r) {
                for beta in lattice_divisors(r) {
                    let w = apply(r, &op_h_alpha_beta(r, &alpha, &beta, n), &u);
                    vector_eq(&w, &SlottedVector::zero(n, 0), "divisor grading on the unit")?;
                }
                let w = apply(r, &op_h_alpha_delta(r, &alpha, n), &u);
                vector_eq(&w, &SlottedVector::zero(n, 0), "delta grading on the unit")?;
            }
            Ok(())
        });
    }

    for n in 1..=3i64 {
        let params = format!("n={n}, t up to 2, d up to 4");
        if n > cx.cfg.n_max {
            cx.skip("s08-mult-conjugate", "eq:mult-conjugate", params.clone());
            cx.skip("s08-mult-conjugate-divisor", "eq:mult-conjugate-divisor", params.clone());
            cx.skip("s08-leibniz", "eq:leibniz", params);
            continue;
        }
        cx.run("s08-mult-conjugate", "eq:mult-conjugate", params.clone(), |r| {
            let ht = op_h_tilde(r, n);
            for (ds, cls) in mult_configs(r) {
                let m = op_mult_universal(r, &ds, &cls, n);
                let lhs = commutator_matrix(r, &ht, &m, n)?;
                let shift: i64 = ds.iter().map(|d| d - 1).sum();
                let moved = cls.scale(&qi(shift)).add(&bar(r, &cls, cls.arity()));
                let rhs = matrix_of(r, &op_mult_universal(r, &ds, &moved, n), n)
                    .map_err(|e| e.to_string())?;
                matrix_eq(r, n, &lhs, &rhs, &format!("ds={ds:?} class={cls}"))?;
            }
            Ok(())
        });
        cx.run("s08-mult-conjugate-divisor", "eq:mult-conjugate-divisor", params.clone(), |r| {
            for alpha in lattice_divisors(r) {
                for beta in lattice_divisors(r) {
                    let hab = op_h_alpha_beta(r, &alpha, &beta, n);
                    for (ds, cls) in mult_configs(r) {
                        let m = op_mult_universal(r, &ds, &cls, n);
                        let lhs = commutator_matrix(r, &hab, &m, n)?;
                        let moved = double_bar(r, &cls, cls.arity(), &alpha, &beta);
                        let rhs = matrix_of(r, &op_mult_universal(r, &ds, &moved, n), n)
                            .map_err(|e| e.to_string())?;
                        matrix_eq(r, n, &lhs, &rhs, &format!("ds={ds:?} class={cls}"))?;
                    }
                }
            }
            Ok(())
        });
        cx.run("s08-leibniz", "eq:leibniz", params, |r| {
            let u = unit_vector(r, n);
            let pairs: Vec<((Vec<i64>, SurfaceClass), (Vec<i64>, SurfaceClass))> = vec![
                (
                    (vec![2], SurfaceClass::divisor(0, 0, 1)),
                    (vec![2], SurfaceClass::point(0, 1)),
                ),
                ((vec![2], SurfaceClass::divisor(0, 0, 1)), (vec![3], SurfaceClass::one(1))),
                (
                    (vec![2, 2], SurfaceClass::delta(0, 1, 2)),
                    (vec![2], SurfaceClass::divisor(0, 0, 1)),
                ),
            ];
            let mut gradings: Vec<(String, OpExpr)> =
                vec![("shifted grading".into(), op_h_tilde(r, n))];
            for (bi, alpha) in lattice_divisors(r).iter().enumerate() {
                gradings.push((
                    format!("divisor grading a{}", bi + 1),
                    op_h_alpha_beta(r, alpha, alpha, n),
                ));
                gradings.push((
                    format!("delta grading a{}", bi + 1),
                    op_h_alpha_delta(r, alpha, n),
                ));
            }
            for ((dx, cx_), (dy, cy)) in &pairs {
                let mx = op_mult_universal(r, dx, cx_, n);
                let my = op_mult_universal(r, dy, cy, n);
                let yu = apply(r, &my, &u);
                let xu = apply(r, &mx, &u);
                let xyu = apply(r, &mx, &yu);
                for (label, h) in &gradings {
                    let lhs = apply(r, h, &xyu);
                    let rhs = apply(r, &my, &apply(r, h, &xu))
                        .add(&apply(r, &mx, &apply(r, h, &yu)));
                    vector_eq(&lhs, &rhs, &format!("{label} on ds={dx:?} x ds={dy:?}"))?;
                }
            }
            Ok(())
        });
    }

    for n in 1..=3i64 {
        let params = format!("n={n}, factors (2,2) and (2,3)");
        if n > cx.cfg.n_max {
            cx.skip("s08-mult-conjugate-delta", "eq:mult-conjugate-delta", params);
            continue;
        }
        cx.run("s08-mult-conjugate-delta", "eq:mult-conjugate-delta", params, |r| {
            let delta3 = SurfaceClass::delta(1, 2, 3);
            for alpha in lattice_divisors(r) {
                let had = op_h_alpha_delta(r, &alpha, n);
                let a_first3 = {
                    let a = r.pullback(&alpha, &[0], 3).map_err(|e| e.to_string())?;
                    r.mul(&a, &delta3).map_err(|e| e.to_string())?
                };
                let one_da3 = {
                    let a = r.pullback(&alpha, &[1], 3).map_err(|e| e.to_string())?;
                    r.mul(&a, &delta3).map_err(|e| e.to_string())?
                };
                for (i, j) in [(2i64, 2i64), (2, 3)] {
                    let m = op_mult_universal(r, &[i, j], &SurfaceClass::delta(0, 1, 2), n);
                    let lhs = commutator_matrix(r, &had, &m, n)?;
                    let dim = r.fock_basis(n).len();
                    let mut rhs = QMatrix::zero(dim, dim);
                    let add = |op: OpExpr, sign: i64, rhs: &mut QMatrix| -> Result<(), String> {
                        let mat = matrix_of(r, &op, n).map_err(|e| e.to_string())?;
                        *rhs = rhs.add(&mat.scale(&qi(sign))).map_err(|e| e.to_string())?;
                        Ok(())
                    };
                    for (a, b) in [(i - 1, j), (i, j - 1)] {
                        add(op_mult_universal(r, &[2, a, b], &a_first3, n), -1, &mut rhs)?;
                        add(op_mult_universal(r, &[2, a, b], &one_da3, n), -1, &mut rhs)?;
                    }
                    let alpha_both = r
                        .pullback(&alpha, &[0], 2)
                        .map_err(|e| e.to_string())?
                        .add(&r.pullback(&alpha, &[1], 2).map_err(|e| e.to_string())?);
                    for (a, b) in [(i + 1, j), (i, j + 1)] {
                        add(op_mult_universal(r, &[a, b], &alpha_both, n), -1, &mut rhs)?;
                    }
                    let ac = r
                        .mul(
                            &r.pullback(&alpha, &[0], 2).map_err(|e| e.to_string())?,
                            &SurfaceClass::point(1, 2),
                        )
                        .map_err(|e| e.to_string())?;
                    let ca = r
                        .mul(
                            &r.pullback(&alpha, &[1], 2).map_err(|e| e.to_string())?,
                            &SurfaceClass::point(0, 2),
                        )
                        .map_err(|e| e.to_string())?;
                    add(op_mult_universal(r, &[i - 1, j], &ac, n), 2, &mut rhs)?;
                    add(op_mult_universal(r, &[i, j - 1], &ca, n), 2, &mut rhs)?;
                    matrix_eq(r, n, &lhs, &rhs, &format!("factors ({i},{j})"))?;
                }
            }
            Ok(())
        });
    }
}

pub(super) fn suite_chern(cx: &mut Cx) {
    for n in 1..=3i64 {
        let params = format!("n={n}");
        if n > cx.cfg.n_max {
            cx.skip("s09-divisor-eigen", "eq:divisor-eigen", params.clone());
            cx.skip("s09-point-eigen", "eq:point-eigen", params.clone());
            cx.skip("s09-chern-eigen", "eq:chern-eigen", params.clone());
            cx.skip("s09-chern-delta-commutes", "eq:chern-delta", params);
            continue;
        }
        cx.run("s09-divisor-eigen", "eq:divisor-eigen", params.clone(), |r| {
            let ht = op_h_tilde(r, n);
            for b in 0..r.rank() {
                let v = ops::universal_class(r, &[2], &SurfaceClass::divisor(b, 0, 1), n);
                vector_eq(&apply(r, &ht, &v), &v, &format!("divisor class a{}", b + 1))?;
            }
            Ok(())
        });
        cx.run("s09-point-eigen", "eq:point-eigen", params.clone(), |r| {
            let ht = op_h_tilde(r, n);
            let v = ops::universal_class(r, &[3], &SurfaceClass::one(1), n);
            vector_eq(&apply(r, &ht, &v), &v, "exceptional-type class")
        });
        cx.run("s09-chern-eigen", "eq:chern-eigen", params.clone(), |r| {
            let ht = op_h_tilde(r, n);
            let u = unit_vector(r, n);
            for k in 0..=3i64 {
                let ch = apply(r, &op_mult_chern(r, k, n), &u);
                let hv = apply(r, &ht, &ch);
                vector_eq(&hv, &ch.scale(&qi(k)), &format!("k={k}"))?;
            }
            Ok(())
        });
        cx.run("s09-chern-delta-commutes", "eq:chern-delta", params, |r| {
            let dim = r.fock_basis(n).len();
            for alpha in lattice_divisors(r) {
                let had = op_h_alpha_delta(r, &alpha, n);
                for k in 0..=3i64 {
                    let lhs = commutator_matrix(r, &had, &op_mult_chern(r, k, n), n)?;
                    matrix_eq(r, n, &lhs, &QMatrix::zero(dim, dim), &format!("k={k}"))?;
                }
            }
            Ok(())
        });
    }

    cx.run("s09-summand", "eq:summand", "the five generating classes".into(), |r| {
        let mut gammas: Vec<(String, SurfaceClass)> = vec![
            ("1".into(), SurfaceClass::one(1)),
            ("c".into(), c1()),
            ("diagonal of 1".into(), delta_push(r, &SurfaceClass::one(1))),
            ("diagonal of c".into(), delta_push(r, &c1())),
        ];
        for b in 0..r.rank() {
            gammas.push((format!("a{}", b + 1), SurfaceClass::divisor(b, 0, 1)));
        }
        for (name, g) in gammas {
            let t = g.arity();
            let deg = g
                .codim()
                .map_err(|e| e.to_string())?
                .ok_or_else(|| format!("{name}: mixed degree"))?;
            let lhs = bar(r, &g, t);
            let rhs = g.scale(&qi(deg as i64 - t as i64));
            class_eq(&lhs, &rhs, &name)?;
        }
        Ok(())
    });
}

/// The bigraded dimension table at a given number of points: for each
/// basis vector, the codimension `i` and the defect `s` = `i` minus its
/// eigenvalue under the shifted grading operator; entries count basis
/// vectors per `(i, s)` cell.
pub fn dimension_table(ring: &Ring, n: i64) -> Result<BTreeMap<(usize, i64), usize>, String> {
    let ht = op_h_tilde(ring, n);
    let mut table = BTreeMap::new();
    for (p, m) in ring.fock_basis(n) {
        let v = ring.basis_vector(&p, &m);
        let hv = apply(ring, &ht, &v);
        // every basis vector is an eigenvector of the shifted grading
        let coords_v = ring.basis_expand(&v, n).map_err(|e| e.to_string())?;
        let coords_hv = ring.basis_expand(&hv, n).map_err(|e| e.to_string())?;
        let k = coords_v
            .iter()
            .position(|c| !c.is_zero())
            .ok_or_else(|| "zero basis vector".to_string())?;
        let eig = &coords_hv[k] / &coords_v[k];
        for (a, b) in coords_v.iter().zip(coords_hv.iter()) {
            if *b != a * &eig {
                return Err(format!(
                    "q_{p} [{}] is not an eigenvector of the shifted grading",
                    SurfaceClass::monomial(m.clone())
                ));
            }
        }
        if !eig.is_integer() {
            return Err(format!("non-integral eigenvalue {eig}"));
        }
        let i = ring.codim_of(&p, &m);
        let eig_i: i64 = eig.to_integer().try_into().map_err(|_| "overflow".to_string())?;
        let s = i as i64 - eig_i;
        *table.entry((i, s)).or_insert(0) += 1;
    }
    Ok(table)
}

pub(super) fn suite_tables(cx: &mut Cx) {
    for n in 1..=3i64 {
        let params = format!("n={n}");
        if n > cx.cfg.n_max {
            cx.skip("s10-tables-structure", "eq:tables", params);
            continue;
        }
        cx.run("s10-tables-structure", "eq:tables", params, |r| {
            let table = dimension_table(r, n)?;
            let dim = r.fock_basis(n).len();
            let total: usize = table.values().sum();
            if total != dim {
                return Err(format!("total {total} != dimension {dim}"));
            }
            if table.get(&(0, 0)) != Some(&1) {
                return Err("the fundamental cell (0, 0) is not one-dimensional".into());
            }
            let max_i = table.keys().map(|&(i, _)| i).max().unwrap_or(0);
            if max_i != 2 * n as usize {
                return Err(format!("top codimension {max_i} != {}", 2 * n));
            }
            for (&(i, s), _) in &table {
                let eig = i as i64 - s;
                if eig < 0 || eig > 2 * n {
                    return Err(format!(
                        "cell ({i}, {s}): shifted eigenvalue {eig} out of range"
                    ));
                }
            }
            Ok(())
        });
    }

    for n in 1..=2i64 {
        let params = format!("n={n}");
        if n > cx.cfg.n_max {
            cx.skip("s10-tables-projector-ranks", "eq:tables-vs-projector", params);
            continue;
        }
        cx.run("s10-tables-projector-ranks", "eq:tables-vs-projector", params, |r| {
            let table = dimension_table(r, n)?;
            for e in -n..=n {
                let rank = matrix_of(r, &op_projector(r, e, n), n)
                    .map_err(|x| x.to_string())?
                    .rank();
                let cells: usize = table
                    .iter()
                    .filter(|(&(i, s), _)| i as i64 - s - n == e)
                    .map(|(_, &c)| c)
                    .sum();
                if rank != cells {
                    return Err(format!(
                        "projector block {e}: rank {rank} vs table count {cells}"
                    ));
                }
            }
            Ok(())
        });
    }
}
