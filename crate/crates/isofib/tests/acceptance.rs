//! Acceptance suite: one test (and one printed pass/fail line) per criterion.

use isofib::actions::{spherical_vector, GeneratingVector};
use isofib::fibres::{bound_check, exclusion_suite, minimal_model_invariants};
use isofib::groups::{abelian, cyclic, psl2, registry, Group};
use isofib::quotient::StandardIsotrivialFibration;
use isofib::rational::rat;
use isofib::singularities::{CyclicQuotientSingularity, SingularLocus};
use isofib::verify::run_checks;
use num::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

fn report(criterion: u32, name: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("PASS criterion {criterion}: {name}");
    } else {
        println!("FAIL criterion {criterion}: {name}");
        for f in failures {
            println!("  - {f}");
        }
        panic!("criterion {criterion} failed");
    }
}

fn named_check(criterion: u32, name: &str, check: &str) {
    let reports = run_checks(Some(check)).expect("known check");
    report(criterion, name, &reports[0].failures);
}

#[test]
fn criterion_1_singularity_table() {
    named_check(1, "published singularity table reproduced exactly", "appendix-b");
}

#[test]
fn criterion_2_fibre_classification() {
    named_check(2, "3/6/17 (-1)-fibre types with exact c and delta", "appendix-a");
}

#[test]
fn criterion_3_psl27_example() {
    let mut failures = Vec::new();
    let g: Group = Arc::new(psl2(7).unwrap());
    let v = spherical_vector(g.clone(), &[2, 3, 7]).unwrap();
    let f = StandardIsotrivialFibration::new(g, v.clone(), v).unwrap();
    let mut expected = SingularLocus::new();
    for (n, q, m) in [(2, 1, 4), (3, 1, 1), (3, 2, 1), (7, 1, 1), (7, 2, 1), (7, 4, 1)] {
        expected.add(CyclicQuotientSingularity::new(n, q).unwrap(), m);
    }
    if f.singular_locus() != &expected {
        failures.push(format!("Sing(T) = {}", f.singular_locus()));
    }
    let inv = f.invariants().unwrap();
    if (inv.k2, inv.e, inv.q, inv.chi) != (-6, 18, 0, 1) {
        failures.push(format!("invariants {inv:?}"));
    }
    let fibres = f.fibres_of(2).unwrap();
    let types: Vec<Vec<_>> = fibres
        .iter()
        .map(|fb| fb.strings().iter().map(|s| s.fraction()).collect())
        .collect();
    let want = vec![
        vec![rat(1, 2); 4],
        vec![rat(1, 3), rat(2, 3)],
        vec![rat(1, 7), rat(2, 7), rat(4, 7)],
    ];
    if types != want {
        failures.push(format!("fibre types {types:?}"));
    }
    let flags: Vec<bool> = fibres.iter().map(|fb| fb.is_minus_one_fibre()).collect();
    if flags != [false, false, true] {
        failures.push(format!("(-1) flags {flags:?}"));
    }
    match fibres[2].contract() {
        Ok(r) if r.c == 2 => {}
        Ok(r) => failures.push(format!("c = {}", r.c)),
        Err(e) => failures.push(e.to_string()),
    }
    match minimal_model_invariants(&f) {
        Ok(mm) if mm.k2_hat == -4 => {}
        Ok(mm) => failures.push(format!("hat K^2 = {}", mm.k2_hat)),
        Err(e) => failures.push(e.to_string()),
    }
    report(3, "PSL(2,7) worked example", &failures);
}

#[test]
fn criterion_4_constructed_families() {
    named_check(4, "both constructed cyclic families", "theorem-a");
}

#[test]
fn criterion_5_group_exclusions() {
    let mut failures = Vec::new();
    match exclusion_suite() {
        Ok(rep) => {
            if (rep.g24_order3_classes, rep.g24_order3_class_size) != (1, 2) {
                failures.push(format!("order-24 group: {rep:?}"));
            }
            if !rep.g16_6_conjugate_fifth {
                failures.push("order-16 group passes condition (*)".into());
            }
            if rep.g32_11_candidates == 0 || rep.g96_64_candidates == 0 {
                failures.push("candidate construction came back empty".into());
            }
            if (rep.g32_9_aut_order, rep.g32_9_vectors, rep.g32_9_orbits, rep.g32_9_derived_order)
                != (64, 64, 1, 4)
            {
                failures.push(format!("order-32 group: {rep:?}"));
            }
        }
        Err(e) => failures.push(e.to_string()),
    }
    report(5, "group exclusion suite with exact counts", &failures);
}

/// Small groups usable for randomized vectors; every order divides 96.
fn group_pool(max_order: usize) -> Vec<Group> {
    let mut pool: Vec<Group> = Vec::new();
    for n in 2..=12 {
        pool.push(Arc::new(cyclic(n)));
    }
    for orders in [
        vec![2, 2],
        vec![2, 4],
        vec![2, 6],
        vec![3, 3],
        vec![2, 2, 2],
        vec![4, 4],
        vec![2, 8],
    ] {
        pool.push(Arc::new(abelian(&orders)));
    }
    pool.push(Arc::new(registry(16, 6).unwrap()));
    pool.push(Arc::new(registry(24, 8).unwrap()));
    pool.push(Arc::new(registry(32, 9).unwrap()));
    pool.push(Arc::new(psl2(5).unwrap()));
    pool.retain(|g| g.order() <= max_order);
    pool
}

/// Random valid generating vector: random entries with the last branch entry
/// chosen to close the long relation, retried until validation passes.
fn random_vector(rng: &mut ChaCha8Rng, group: &Group) -> Option<GeneratingVector> {
    for _ in 0..400 {
        let genus = rng.gen_range(0..=1usize);
        let r = if genus == 0 {
            rng.gen_range(3..=6usize)
        } else {
            rng.gen_range(0..=4usize)
        };
        let mut branch: Vec<usize> = (0..r.saturating_sub(1))
            .map(|_| rng.gen_range(1..group.order()))
            .collect();
        let handles: Vec<usize> = (0..2 * genus)
            .map(|_| rng.gen_range(0..group.order()))
            .collect();
        if r > 0 {
            let mut prod = group.identity();
            for &x in &branch {
                prod = group.mul(prod, x);
            }
            let gp = genus;
            let mut comm = group.identity();
            for i in 0..gp {
                let (a, b) = (handles[i], handles[i + gp]);
                let c = group.mul(group.mul(a, b), group.mul(group.inv(a), group.inv(b)));
                comm = group.mul(comm, c);
            }
            let last = group.mul(group.inv(prod), group.inv(comm));
            if last == group.identity() {
                continue;
            }
            branch.push(last);
        }
        let v = GeneratingVector::new(group.clone(), genus, branch, handles);
        if v.validate().is_ok() {
            return Some(v);
        }
    }
    None
}

#[test]
fn criterion_6_fixed_point_oracles() {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x15061906);
    let pool = group_pool(96);
    let mut checked = 0usize;
    'outer: while checked < 100 {
        for group in &pool {
            let Some(v) = random_vector(&mut rng, group) else {
                continue;
            };
            for h in 1..group.order() {
                let m = group.element_order(h);
                let mut sum = 0;
                for q in 1..m.max(2) {
                    if q.gcd(&m) != 1 {
                        continue;
                    }
                    let closed = v.fix_count_rot(h, q).unwrap();
                    let model = v.model_fix_count_rot(h, q).unwrap();
                    if closed != model {
                        failures.push(format!(
                            "{}: h={h} q={q}: closed {closed} != model {model}",
                            group.name()
                        ));
                    }
                    sum += closed;
                }
                let total = v.fix_count(h).unwrap();
                if total != v.model_fix_count(h).unwrap() || total != sum {
                    failures.push(format!("{}: h={h}: totals disagree", group.name()));
                }
            }
            checked += 1;
            if checked >= 100 || !failures.is_empty() {
                break 'outer;
            }
        }
    }
    if checked < 100 {
        failures.push(format!("only {checked} vectors checked"));
    }
    report(
        6,
        "closed-form fixed-point counts match the orbit model on 100 random vectors",
        &failures,
    );
}

#[test]
fn criterion_7_identity_suites() {
    named_check(7, "exhaustive continued-fraction identity suites", "identities");
}

#[test]
fn criterion_8_structural_invariants() {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x05021926);
    let pool = group_pool(100);
    let mut checked = 0usize;
    'outer: while checked < 50 {
        for group in &pool {
            let (Some(v1), Some(v2)) = (
                random_vector(&mut rng, group),
                random_vector(&mut rng, group),
            ) else {
                continue;
            };
            let f = match StandardIsotrivialFibration::new(group.clone(), v1.clone(), v2.clone())
            {
                Ok(f) => f,
                Err(e) => {
                    failures.push(format!("{}: {e}", group.name()));
                    continue;
                }
            };
            let detail = || {
                format!(
                    "{}: v1 g={} b={:?} h={:?}; v2 g={} b={:?} h={:?}",
                    group.name(),
                    v1.quotient_genus,
                    v1.branch,
                    v1.handles,
                    v2.quotient_genus,
                    v2.branch,
                    v2.handles
                )
            };
            // invariants() enforces Noether and the K^2 = 8 chi - (1/3) sum B
            // identity; integrality_checks() the integer sums and even nodes;
            // the fibre constructors integral Y^2 on both sides; bound_check
            // the minimal-model inequalities and equality characterizations.
            if let Err(e) = f.invariants() {
                failures.push(format!("{}: {e}", detail()));
            }
            if let Err(e) = f.integrality_checks() {
                failures.push(format!("{}: {e}", detail()));
            }
            for projection in [1, 2] {
                if let Err(e) = f.fibres_of(projection) {
                    failures.push(format!("{}: projection {projection}: {e}", group.name()));
                }
            }
            if let Err(e) = bound_check(&f) {
                failures.push(format!("{}: {e}", group.name()));
            }
            checked += 1;
            if checked >= 50 || !failures.is_empty() {
                break 'outer;
            }
        }
    }
    if checked < 50 {
        failures.push(format!("only {checked} fibrations checked"));
    }
    report(
        8,
        "structural invariants on 50 random fibrations",
        &failures,
    );
}
