//! Named verification checks over the embedded golden data: published-table
//! reproduction, worked examples, constructive families, exhaustive identity
//! suites, and the group-theoretic exclusions. Used by the CLI `verify`
//! subcommand; exit status is success iff every check passes.

use crate::actions::{spherical_vector, GeneratingVector};
use crate::contfrac::{convergents, dual_shift_identities, hj_expand, riemenschneider_dual};
use crate::fibres::{bound_check, classify_minus_one_fibres, exclusion_suite, minimal_model_invariants};
use crate::golden::{GoldenExample, FIBRE_COUNTS, FIBRE_TABLE, PSL27_EXAMPLE, SINGULARITY_TABLE, Z2_NODES_EXAMPLE};
use crate::groups::{cyclic, psl2, Group};
use crate::quotient::{theorem_a_construct, verify_theorem_a_postconditions, StandardIsotrivialFibration};
use crate::rational::{rat, rat_int, Rat};
use crate::singularities::{appendix_b_table, b_invariant, h_invariant, CyclicQuotientSingularity};
use num::Integer;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("unknown check {0:?}; available: appendix-b, appendix-a, examples, theorem-a, identities, groups")]
    UnknownCheck(String),
}

pub const CHECK_NAMES: &[&str] = &[
    "appendix-b",
    "appendix-a",
    "examples",
    "theorem-a",
    "identities",
    "groups",
];

/// Outcome of one named check; empty failure list means pass.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: &'static str,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs all checks, or the single named one, in deterministic order.
pub fn run_checks(only: Option<&str>) -> Result<Vec<CheckReport>, VerifyError> {
    if let Some(name) = only {
        if !CHECK_NAMES.contains(&name) {
            return Err(VerifyError::UnknownCheck(name.to_string()));
        }
    }
    let mut out = Vec::new();
    for &name in CHECK_NAMES {
        if only.is_some_and(|o| o != name) {
            continue;
        }
        let failures = match name {
            "appendix-b" => check_singularity_table(),
            "appendix-a" => check_fibre_table(),
            "examples" => check_examples(),
            "theorem-a" => check_constructions(),
            "identities" => check_identities(),
            "groups" => check_groups(),
            _ => unreachable!(),
        };
        out.push(CheckReport { name, failures });
    }
    Ok(out)
}

fn check_singularity_table() -> Vec<String> {
    let mut fails = Vec::new();
    for row in SINGULARITY_TABLE {
        let x = match CyclicQuotientSingularity::new(row.n, row.q) {
            Ok(x) => x,
            Err(e) => {
                fails.push(format!("({}, {}): {e}", row.n, row.q));
                continue;
            }
        };
        if x.expansion().terms() != row.expansion {
            fails.push(format!(
                "({}, {}): expansion {:?} != {:?}",
                row.n,
                row.q,
                x.expansion().terms(),
                row.expansion
            ));
        }
        if x.q_prime() != row.q_prime {
            fails.push(format!(
                "({}, {}): q' {} != {}",
                row.n,
                row.q,
                x.q_prime(),
                row.q_prime
            ));
        }
        if b_invariant(&x) != rat(row.b.0, row.b.1) {
            fails.push(format!("({}, {}): B mismatch", row.n, row.q));
        }
        if h_invariant(&x) != rat(row.h.0, row.h.1) {
            fails.push(format!("({}, {}): h mismatch", row.n, row.q));
        }
    }
    // The full table over 2 <= n <= 9 has sum phi(n) = 27 rows.
    let count = appendix_b_table(9).len();
    if count != 27 {
        fails.push(format!("row count for n <= 9 is {count}, expected 27"));
    }
    fails
}

fn check_fibre_table() -> Vec<String> {
    let mut fails = Vec::new();
    for &(genus, expected) in FIBRE_COUNTS {
        let rows = match classify_minus_one_fibres(genus) {
            Ok(r) => r,
            Err(e) => {
                fails.push(format!("genus {genus}: {e}"));
                continue;
            }
        };
        if rows.len() != expected {
            fails.push(format!(
                "genus {genus}: {} types, expected {expected}",
                rows.len()
            ));
        }
        let golden: Vec<_> = FIBRE_TABLE.iter().filter(|g| g.genus == genus).collect();
        if golden.len() != rows.len() {
            fails.push(format!("genus {genus}: golden table size mismatch"));
        }
        for g in golden {
            let Some(row) = rows.iter().find(|r| r.fractions == g.fractions) else {
                fails.push(format!("genus {genus}: type {:?} missing", g.fractions));
                continue;
            };
            if row.order != g.order
                || row.c != g.c
                || row.delta != rat(g.delta.0, g.delta.1)
                || row.label != g.label
            {
                fails.push(format!(
                    "genus {genus}: type {:?} row mismatch: {:?}",
                    g.fractions, row
                ));
            }
        }
    }
    fails
}

fn psl27_fibration() -> StandardIsotrivialFibration {
    let g: Group = Arc::new(psl2(7).expect("7 is prime"));
    let v = spherical_vector(g.clone(), &[2, 3, 7]).expect("(0|2,3,7) vector");
    StandardIsotrivialFibration::new(g, v.clone(), v).expect("valid fibration")
}

fn z2_nodes_fibration() -> StandardIsotrivialFibration {
    let g: Group = Arc::new(cyclic(2));
    let v1 = GeneratingVector::new(g.clone(), 0, vec![1; 6], vec![]);
    let v2 = GeneratingVector::new(g.clone(), 1, vec![1, 1], vec![0, 0]);
    StandardIsotrivialFibration::new(g, v1, v2).expect("valid fibration")
}

fn check_one_example(f: &StandardIsotrivialFibration, g: &GoldenExample) -> Vec<String> {
    let mut fails = Vec::new();
    match f.invariants() {
        Ok(inv) => {
            let got = (inv.k2, inv.e, inv.q, inv.pg, inv.chi);
            let want = (g.k2, g.e, g.q, g.pg, g.chi);
            if got != want {
                fails.push(format!("{}: invariants {got:?} != {want:?}", g.name));
            }
        }
        Err(e) => fails.push(format!("{}: {e}", g.name)),
    }
    match minimal_model_invariants(f) {
        Ok(mm) => {
            if (mm.k2_hat, mm.e_hat) != (g.k2_hat, g.e_hat) {
                fails.push(format!(
                    "{}: minimal model ({}, {}) != ({}, {})",
                    g.name, mm.k2_hat, mm.e_hat, g.k2_hat, g.e_hat
                ));
            }
        }
        Err(e) => fails.push(format!("{}: {e}", g.name)),
    }
    if let Err(e) = bound_check(f) {
        fails.push(format!("{}: bound check: {e}", g.name));
    }
    fails
}

fn check_examples() -> Vec<String> {
    let mut fails = Vec::new();
    let f = psl27_fibration();
    fails.extend(check_one_example(&f, &PSL27_EXAMPLE));
    match f.fibres_of(2) {
        Ok(fibres) => {
            let types: Vec<Vec<Rat>> = fibres
                .iter()
                .map(|fb| fb.strings().iter().map(|s| s.fraction()).collect())
                .collect();
            let want = vec![
                vec![rat(1, 2); 4],
                vec![rat(1, 3), rat(2, 3)],
                vec![rat(1, 7), rat(2, 7), rat(4, 7)],
            ];
            if types != want {
                fails.push(format!("psl2-7: fibre types {types:?}"));
            }
            let minus: Vec<bool> = fibres.iter().map(|fb| fb.is_minus_one_fibre()).collect();
            if minus != [false, false, true] {
                fails.push(format!("psl2-7: (-1)-fibre flags {minus:?}"));
            }
            if let Some(last) = fibres.last() {
                match last.contract() {
                    Ok(r) if r.c == 2 => {}
                    Ok(r) => fails.push(format!("psl2-7: c = {} on the (-1)-fibre", r.c)),
                    Err(e) => fails.push(format!("psl2-7: {e}")),
                }
            }
        }
        Err(e) => fails.push(format!("psl2-7: {e}")),
    }
    let f = z2_nodes_fibration();
    fails.extend(check_one_example(&f, &Z2_NODES_EXAMPLE));
    match f.fibres_of(2) {
        Ok(fibres) => {
            if fibres.len() != 2 {
                fails.push(format!("z2-12-nodes: {} fibres", fibres.len()));
            }
            for fb in &fibres {
                match fb.delta() {
                    Ok(d) if d == rat_int(6) => {}
                    Ok(d) => fails.push(format!("z2-12-nodes: delta {d}")),
                    Err(e) => fails.push(format!("z2-12-nodes: {e}")),
                }
            }
        }
        Err(e) => fails.push(format!("z2-12-nodes: {e}")),
    }
    // A free action gives a quasi-bundle with K^2 = 8 chi.
    let g: Group = Arc::new(cyclic(2));
    let v = GeneratingVector::new(g.clone(), 1, vec![], vec![1, 0]);
    match StandardIsotrivialFibration::new(g, v.clone(), v) {
        Ok(f) => match bound_check(&f) {
            Ok(rep) if rep.quasi_bundle && rep.equality => {}
            Ok(rep) => fails.push(format!("quasi-bundle: {rep:?}")),
            Err(e) => fails.push(format!("quasi-bundle: {e}")),
        },
        Err(e) => fails.push(format!("quasi-bundle: {e}")),
    }
    fails
}

fn check_constructions() -> Vec<String> {
    let mut fails = Vec::new();
    // Family {1/n, (n-1)/n} with base parameter 1: p_g = 0, q = 1, K^2 = -n^2,
    // and the relative minimal model is a quasi-bundle value K^2 = 0.
    for n in 2..=6i64 {
        let fr = [rat(1, n), rat(n - 1, n)];
        let outcome = theorem_a_construct(&fr, 1)
            .and_then(|f| verify_theorem_a_postconditions(&f, &fr, 1).map(|()| f));
        let f = match outcome {
            Ok(f) => f,
            Err(e) => {
                fails.push(format!("family 1, n={n}: {e}"));
                continue;
            }
        };
        match f.invariants() {
            Ok(inv) if (inv.pg, inv.q, inv.k2) == (0, 1, -n * n) => {}
            Ok(inv) => fails.push(format!("family 1, n={n}: invariants {inv:?}")),
            Err(e) => fails.push(format!("family 1, n={n}: {e}")),
        }
        match minimal_model_invariants(&f) {
            Ok(mm) if mm.k2_hat == 0 => {}
            Ok(mm) => fails.push(format!("family 1, n={n}: hat K^2 = {}", mm.k2_hat)),
            Err(e) => fails.push(format!("family 1, n={n}: {e}")),
        }
    }
    // Family {1/n x n} with base parameter 1: closed-form invariants on both
    // sides of the contraction, and delta = (n^2 - 1)/3 on every fibre.
    for n in 3..=6i64 {
        let fr: Vec<Rat> = vec![rat(1, n); n as usize];
        let outcome = theorem_a_construct(&fr, 1)
            .and_then(|f| verify_theorem_a_postconditions(&f, &fr, 1).map(|()| f));
        let f = match outcome {
            Ok(f) => f,
            Err(e) => {
                fails.push(format!("family 2, n={n}: {e}"));
                continue;
            }
        };
        match f.invariants() {
            Ok(inv)
                if (inv.k2, inv.e, inv.chi)
                    == (
                        n * n * n - 4 * n * n + 2 * n,
                        n * n * n - 2 * n * n + 2 * n,
                        n * (n - 1) * (n - 2) / 6,
                    ) => {}
            Ok(inv) => fails.push(format!("family 2, n={n}: invariants {inv:?}")),
            Err(e) => fails.push(format!("family 2, n={n}: {e}")),
        }
        match minimal_model_invariants(&f) {
            Ok(mm) => {
                if (mm.k2_hat, mm.e_hat) != (n * (n - 1) * (n - 3), n * (n - 1) * (n - 1)) {
                    fails.push(format!(
                        "family 2, n={n}: minimal model ({}, {})",
                        mm.k2_hat, mm.e_hat
                    ));
                }
                let want = rat(n * n - 1, 3);
                if mm.deltas.iter().any(|d| *d != want) {
                    fails.push(format!("family 2, n={n}: delta list {:?}", mm.deltas));
                }
            }
            Err(e) => fails.push(format!("family 2, n={n}: {e}")),
        }
        if let Err(e) = bound_check(&f) {
            fails.push(format!("family 2, n={n}: bound check: {e}"));
        }
    }
    fails
}

fn check_identities() -> Vec<String> {
    let mut fails = Vec::new();
    for n in 2..=60u64 {
        for q in 1..n {
            if n.gcd(&q) != 1 {
                continue;
            }
            let e = match hj_expand(n, q) {
                Ok(e) => e,
                Err(err) => {
                    fails.push(format!("({n}, {q}): {err}"));
                    continue;
                }
            };
            // Determinant and gap identities of consecutive convergents.
            let cs = convergents(&e);
            if *cs.last().unwrap() != (n, q) {
                fails.push(format!("({n}, {q}): convergents do not end at (n, q)"));
            }
            let (mut np, mut qp) = (1i64, 0i64);
            for &(ns, qs) in &cs {
                if np * qs as i64 - ns as i64 * qp != 1 {
                    fails.push(format!("({n}, {q}): convergent determinant != 1"));
                }
                (np, qp) = (ns as i64, qs as i64);
            }
            for w in cs.windows(2) {
                let ((n0, q0), (n1, q1)) = (w[0], w[1]);
                if q0 > 0
                    && rat(n0 as i64, q0 as i64) - rat(n1 as i64, q1 as i64)
                        != rat(1, (q0 * q1) as i64)
                {
                    fails.push(format!("({n}, {q}): decreasing gap in n_s/q_s"));
                }
                if rat(q1 as i64, n1 as i64) - rat(q0 as i64, n0 as i64)
                    != rat(1, (n0 * n1) as i64)
                {
                    fails.push(format!("({n}, {q}): increasing gap in q_s/n_s"));
                }
            }
            // Riemenschneider involution and the B-duality sum.
            if n != 2 * q {
                match riemenschneider_dual(n, q) {
                    Ok((dual, blocks)) => {
                        if dual.terms() != hj_expand(n, n - q).unwrap().terms() {
                            fails.push(format!("({n}, {q}): dual expansion mismatch"));
                        }
                        let rhs: i64 =
                            blocks.k.iter().map(|&k| 3 * (k as i64 + 1)).sum::<i64>()
                                + blocks.l.iter().map(|&l| 3 * (l as i64 + 1)).sum::<i64>();
                        let x = CyclicQuotientSingularity::new(n, q).unwrap();
                        let y = CyclicQuotientSingularity::new(n, n - q).unwrap();
                        if b_invariant(&x) + b_invariant(&y) != rat_int(rhs) {
                            fails.push(format!("({n}, {q}): B-duality sum mismatch"));
                        }
                    }
                    Err(err) => fails.push(format!("({n}, {q}): {err}")),
                }
            }
            // Shifted duality patterns (the function asserts all four
            // evaluation identities internally).
            if q >= 2 {
                if let Err(err) = dual_shift_identities(n, q) {
                    fails.push(format!("({n}, {q}): {err}"));
                }
            }
            // B-monotonicity along convergents and B >= 3.
            let x = CyclicQuotientSingularity::new(n, q).unwrap();
            let bs: Vec<Rat> = cs
                .iter()
                .map(|&(ns, qs)| b_invariant(&CyclicQuotientSingularity::new(ns, qs).unwrap()))
                .collect();
            for s in 1..bs.len() {
                if bs[s].clone() - bs[s - 1].clone() <= rat_int(1) {
                    fails.push(format!("({n}, {q}): B gap <= 1 at step {s}"));
                }
            }
            let b = b_invariant(&x);
            if b < rat_int(3) || (b == rat_int(3)) != ((n, q) == (2, 1)) {
                fails.push(format!("({n}, {q}): B >= 3 bound violated"));
            }
        }
    }
    fails
}

fn check_groups() -> Vec<String> {
    match exclusion_suite() {
        Ok(rep) => {
            let mut fails = Vec::new();
            if (rep.g24_order3_classes, rep.g24_order3_class_size) != (1, 2) {
                fails.push("order-3 class data of the order-24 group".into());
            }
            if (rep.g32_9_aut_order, rep.g32_9_vectors, rep.g32_9_orbits) != (64, 64, 1) {
                fails.push("automorphism/vector counts of the order-32 group".into());
            }
            if rep.g32_9_derived_order != 4 {
                fails.push("derived subgroup order of the order-32 group".into());
            }
            fails
        }
        Err(e) => vec![format!("exclusion suite: {e}")],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_checks_pass() {
        let reports = run_checks(None).unwrap();
        assert_eq!(reports.len(), CHECK_NAMES.len());
        for r in &reports {
            assert!(r.passed(), "{}: {:?}", r.name, r.failures);
        }
    }

    #[test]
    fn only_filter() {
        let reports = run_checks(Some("groups")).unwrap();
        assert_eq!(reports.len(), 1);
        assert_eq!(reports[0].name, "groups");
        assert!(matches!(
            run_checks(Some("nonsense")),
            Err(VerifyError::UnknownCheck(_))
        ));
    }
}
