//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line. All comparisons are exact rational equalities.

use k3fock::ops::{apply, matrix_of, op_e_delta, op_g, op_h, op_h_alpha_beta, op_h_alpha_delta, unit_vector};
use k3fock::suites::{default_gram, run_suite, Report, Status, SuiteConfig};
use k3fock::taut::{DivisorLattice, Faults, Ring, SurfaceClass};
use k3fock::qi;

fn verdict(name: &str, result: Result<(), String>) {
    match result {
        Ok(()) => println!("[PASS] {name}"),
        Err(e) => {
            println!("[FAIL] {name}: {e}");
            panic!("{name} failed: {e}");
        }
    }
}

fn require_all_passed(report: &Report) -> Result<(), String> {
    let mut failures = Vec::new();
    for c in &report.checks {
        if c.status == Status::Fail {
            failures.push(format!(
                "{} ({}): {}",
                c.id,
                c.params,
                c.witness.as_deref().unwrap_or("no witness")
            ));
        }
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(failures.join("; "))
    }
}

fn run(suite: &str, n_max: i64, gram: Vec<Vec<k3fock::Rat>>) -> Result<(), String> {
    let cfg = SuiteConfig {
        n_max,
        gram,
        suites: vec![suite.to_string()],
        ..SuiteConfig::default()
    };
    let report = run_suite(&cfg).map_err(|e| e.to_string())?;
    require_all_passed(&report)
}

fn rank1() -> Vec<Vec<k3fock::Rat>> {
    vec![vec![qi(2)]]
}

#[test]
fn criterion_01_heisenberg() {
    verdict("criterion 1: Heisenberg relations, |k|,|l| <= 4, n <= 4, lattice ranks 1 and 2", {
        run("heisenberg", 4, rank1()).and_then(|()| run("heisenberg", 4, default_gram(2)))
    });
}

#[test]
fn criterion_02_diagonal() {
    verdict("criterion 2: diagonal decomposition sums to the identity, n <= 4", {
        run("diagonal", 4, rank1())
    });
}

#[test]
fn criterion_03_projectors() {
    verdict("criterion 3: projector orthogonality, completeness, grading, n <= 3", {
        run("projectors", 3, rank1())
    });
}

#[test]
fn criterion_04_unit_annihilation() {
    verdict("criterion 4: gradings annihilate or scale the unit, n <= 5", {
        (|| {
            let ring = Ring::new(DivisorLattice::new(rank1()).map_err(|e| e.to_string())?);
            let alpha = SurfaceClass::divisor(0, 0, 1);
            for n in 0..=5i64 {
                let u = unit_vector(&ring, n);
                let hu = apply(&ring, &op_h(&ring, n), &u);
                if hu != u.scale(&qi(-n)) {
                    return Err(format!("h(unit) != -n * unit at n = {n}"));
                }
                let habu = apply(&ring, &op_h_alpha_beta(&ring, &alpha, &alpha, n), &u);
                if !habu.is_zero() {
                    return Err(format!("divisor grading does not kill the unit at n = {n}"));
                }
                let hadu = apply(&ring, &op_h_alpha_delta(&ring, &alpha, n), &u);
                if !hadu.is_zero() {
                    return Err(format!("delta grading does not kill the unit at n = {n}"));
                }
            }
            Ok(())
        })()
    });
}

#[test]
fn criterion_05_lqw() {
    verdict("criterion 5: partition-sum operator brackets (d <= 3, |m| <= 2) and round trip, n <= 3", {
        run("lqw", 3, rank1())
    });
}

#[test]
fn criterion_06_llv() {
    verdict("criterion 6: wedge-algebra representation on all generator pairs, n <= 3, ranks 1 and 2", {
        run("llv", 3, rank1()).and_then(|()| run("llv", 3, default_gram(2)))
    });
}

#[test]
fn criterion_07_ring() {
    verdict("criterion 7: surface ring relations (k <= 4), iterated diagonals (k <= 5), confluence", {
        run("ring", 3, rank1())
    });
}

#[test]
fn criterion_08_commutators() {
    verdict("criterion 8: grading commutators (d <= 4, n <= 3), bar calculus, proof-internal identities", {
        run("commutators", 3, rank1())
    });
}

#[test]
fn criterion_09_derivations() {
    verdict("criterion 9: multiplication operators conjugate correctly; Leibniz rule, n <= 3", {
        run("derivations", 3, rank1())
    });
}

#[test]
fn criterion_10_chern() {
    verdict("criterion 10: divisor/point/Chern eigenvalues, the delta grading commutes, summand criterion", {
        run("chern", 3, rank1())
    });
}

#[test]
fn criterion_11_e_delta() {
    verdict("criterion 11: the delta raising operator equals the degree-3 partition sum at n = 2, 3", {
        (|| {
            let ring = Ring::new(DivisorLattice::new(rank1()).map_err(|e| e.to_string())?);
            let one = SurfaceClass::one(1);
            for n in 2..=3i64 {
                let lhs = matrix_of(&ring, &op_e_delta(&ring, n + 3), n).map_err(|e| e.to_string())?;
                let rhs = matrix_of(&ring, &op_g(&ring, 3, &one, n + 3), n).map_err(|e| e.to_string())?;
                if lhs != rhs {
                    return Err(format!("matrices differ at n = {n}"));
                }
            }
            Ok(())
        })()
    });
}

#[test]
fn criterion_12_fault_injection() {
    verdict("criterion 12: every suite fails with a witness under its designated defect", {
        (|| {
            let pairs = [
                ("bv4-sign", "ring"),
                ("heis-coeff", "heisenberg"),
                ("diag-sign", "diagonal"),
                ("proj-pi0", "projectors"),
                ("lqw-coeff", "lqw"),
                ("llv-f", "llv"),
                ("bar-sign", "commutators"),
                ("htilde-shift", "derivations"),
                ("chern-coeff", "chern"),
                ("tables-codim", "tables"),
            ];
            for (fault, suite) in pairs {
                let cfg = SuiteConfig {
                    n_max: 2,
                    suites: vec![suite.to_string()],
                    faults: Faults::by_name(fault).ok_or(format!("unknown fault {fault}"))?,
                    ..SuiteConfig::default()
                };
                let report = run_suite(&cfg).map_err(|e| e.to_string())?;
                let hit = report
                    .checks
                    .iter()
                    .any(|c| c.status == Status::Fail && c.witness.is_some());
                if !hit {
                    return Err(format!("defect {fault} goes undetected by suite {suite}"));
                }
            }
            Ok(())
        })()
    });
}
