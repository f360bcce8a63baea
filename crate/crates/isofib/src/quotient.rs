//! Standard isotrivial fibrations T = (C1 x C2)/G for a diagonal action given
//! by two generating vectors: singular locus, surface invariants of the
//! minimal desingularization S, integrality checks, and the cyclic-group
//! constructor realizing any fraction set summing to 1.

use crate::actions::{ActionError, GeneratingVector, MarkedPoint};
use crate::contfrac::inverse_residue;
use crate::fibres::ReducibleFibre;
use crate::groups::{cyclic, Group};
use crate::rational::{as_integer, rat, rat_int, Rat};
use crate::singularities::{
    b_invariant, e_invariant, h_invariant, CyclicQuotientSingularity, SingularLocus,
};
use num::Integer;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum QuotientError {
    #[error("invalid generating vector: {0}")]
    Action(#[from] ActionError),
    #[error("fractions must sum to 1 (got {0})")]
    FractionSum(String),
    #[error("invalid fraction {0}: need 0 < q/n < 1 in lowest terms")]
    BadFraction(String),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

/// One G-orbit of singular points of T, remembered with the branch indices of
/// its marked points on both factors (for fibre bookkeeping).
#[derive(Debug, Clone)]
pub struct SingularOrbit {
    pub branch1: usize,
    pub branch2: usize,
    pub sing: CyclicQuotientSingularity,
}

/// Numerical invariants of the minimal desingularization S.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceInvariants {
    pub k2: i64,
    pub e: i64,
    pub q: usize,
    pub pg: i64,
    pub chi: i64,
}

/// The quotient T = (C1 x C2)/G with its singular locus, presented by two
/// generating vectors over the same group.
pub struct StandardIsotrivialFibration {
    pub group: Group,
    pub v1: GeneratingVector,
    pub v2: GeneratingVector,
    g1: usize,
    g2: usize,
    sing: SingularLocus,
    orbits: Vec<SingularOrbit>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

/// Rotation exponent of u at the marked point p, as an exponent modulo the
/// order d of u: u = stab_gen^e acts locally as the d-th root of unity to the
/// power e / (m_i / d).
fn rotation_exponent(v: &GeneratingVector, p: &MarkedPoint, u: usize, d: usize) -> usize {
    let g = &v.group;
    let m = g.element_order(p.stab_gen);
    let mut x = p.stab_gen;
    for e in 1..=m {
        if x == u {
            assert_eq!(e % (m / d), 0, "rotation exponent not aligned with order");
            return (e / (m / d)) % d;
        }
        x = g.mul(x, p.stab_gen);
    }
    panic!("element not in the stabilizer");
}

fn mod_inverse(a: usize, d: usize) -> usize {
    inverse_residue(d as u64, (a % d) as u64).expect("unit mod d") as usize
}

impl StandardIsotrivialFibration {
    pub fn new(
        group: Group,
        v1: GeneratingVector,
        v2: GeneratingVector,
    ) -> Result<Self, QuotientError> {
        v1.validate()?;
        v2.validate()?;
        let g1 = v1.covering_genus()?;
        let g2 = v2.covering_genus()?;
        let (sing, orbits) = Self::compute_singular_locus(&group, &v1, &v2);
        Ok(StandardIsotrivialFibration {
            group,
            v1,
            v2,
            g1,
            g2,
            sing,
            orbits,
        })
    }

    fn compute_singular_locus(
        group: &Group,
        v1: &GeneratingVector,
        v2: &GeneratingVector,
    ) -> (SingularLocus, Vec<SingularOrbit>) {
        let m1 = v1.fixed_point_model();
        let m2 = v2.fixed_point_model();
        // element -> point index, per branch index.
        let lookup = |model: &[MarkedPoint], branch_count: usize| {
            let mut by_elem = vec![vec![usize::MAX; group.order()]; branch_count];
            for (idx, p) in model.iter().enumerate() {
                for &e in &p.coset {
                    by_elem[p.branch_index][e] = idx;
                }
            }
            by_elem
        };
        let look1 = lookup(&m1, v1.branch.len());
        let look2 = lookup(&m2, v2.branch.len());
        let (n1, n2) = (m1.len(), m2.len());
        let mut uf = UnionFind::new(n1 * n2);
        for &t in group.generators() {
            for (i, p) in m1.iter().enumerate() {
                let ti = look1[p.branch_index][group.mul(t, p.rep)];
                for (j, q) in m2.iter().enumerate() {
                    let tj = look2[q.branch_index][group.mul(t, q.rep)];
                    uf.union(i * n2 + j, ti * n2 + tj);
                }
            }
        }
        let mut reps: Vec<usize> = Vec::new();
        let mut seen = std::collections::HashMap::new();
        for idx in 0..n1 * n2 {
            let root = uf.find(idx);
            seen.entry(root).or_insert_with(|| reps.push(idx));
        }
        let mut locus = SingularLocus::new();
        let mut orbits = Vec::new();
        for idx in reps {
            let (p1, p2) = (&m1[idx / n2], &m2[idx % n2]);
            // K = Stab(p1) /\ Stab(p2).
            let k: Vec<usize> = p1
                .stabilizer
                .iter()
                .filter(|x| p2.stabilizer.binary_search(x).is_ok())
                .copied()
                .collect();
            let d = k.len();
            if d <= 1 {
                continue;
            }
            let u = *k
                .iter()
                .find(|&&x| group.element_order(x) == d)
                .expect("intersection of cyclic groups is cyclic");
            let a = rotation_exponent(v1, p1, u, d);
            let b = rotation_exponent(v2, p2, u, d);
            let q = (mod_inverse(a, d) * b) % d;
            let sing = CyclicQuotientSingularity::new(d as u64, q as u64)
                .expect("rotation exponents are units");
            locus.add(sing.clone(), 1);
            orbits.push(SingularOrbit {
                branch1: p1.branch_index,
                branch2: p2.branch_index,
                sing,
            });
        }
        (locus, orbits)
    }

    pub fn g1(&self) -> usize {
        self.g1
    }

    pub fn g2(&self) -> usize {
        self.g2
    }

    pub fn singular_locus(&self) -> &SingularLocus {
        &self.sing
    }

    pub fn singular_orbits(&self) -> &[SingularOrbit] {
        &self.orbits
    }

    /// K^2, e from the quotient formulas, q from the base genera, chi from
    /// Noether; cross-checked against K^2 = 8 chi - (1/3) sum B_x.
    pub fn invariants(&self) -> Result<SurfaceInvariants, QuotientError> {
        let gg = rat_int((self.g1 as i64 - 1) * (self.g2 as i64 - 1))
            / rat_int(self.group.order() as i64);
        let k2 = rat_int(8) * gg.clone() + self.sing.sum_over_points(h_invariant);
        let e = rat_int(4) * gg + self.sing.sum_over_points(e_invariant);
        let k2 = as_integer(&k2)
            .ok_or_else(|| QuotientError::Inconsistent("K^2 not integral".into()))?;
        let e = as_integer(&e)
            .ok_or_else(|| QuotientError::Inconsistent("e not integral".into()))?;
        if (k2 + e) % 12 != 0 {
            return Err(QuotientError::Inconsistent(
                "K^2 + e not divisible by 12".into(),
            ));
        }
        let chi = (k2 + e) / 12;
        let b_sum = self.sing.sum_over_points(b_invariant);
        if rat_int(k2) != rat_int(8 * chi) - b_sum / rat_int(3) {
            return Err(QuotientError::Inconsistent(
                "K^2 = 8 chi - (1/3) sum B fails".into(),
            ));
        }
        let q = self.v1.quotient_genus + self.v2.quotient_genus;
        let pg = chi - 1 + q as i64;
        if pg < 0 {
            return Err(QuotientError::Inconsistent("negative p_g".into()));
        }
        Ok(SurfaceInvariants {
            k2,
            e,
            q,
            pg,
            chi,
        })
    }

    /// Integer sums, parity of the node count when every singularity is an
    /// ordinary double point, and integral (1/3) sum B.
    pub fn integrality_checks(&self) -> Result<IntegralityReport, QuotientError> {
        let sum_q = self.sing.sum_over_points(|x| x.fraction());
        let sum_qp = self
            .sing
            .sum_over_points(|x| rat(x.q_prime() as i64, x.n() as i64));
        let sum_q = as_integer(&sum_q)
            .ok_or_else(|| QuotientError::Inconsistent("sum q_i/n_i not integral".into()))?;
        let sum_qp = as_integer(&sum_qp)
            .ok_or_else(|| QuotientError::Inconsistent("sum q_i'/n_i not integral".into()))?;
        let nodes = self
            .sing
            .iter()
            .filter(|(x, _)| x.n() == 2)
            .map(|(_, m)| m)
            .sum::<u64>();
        // Parity holds only when the singular locus consists entirely of
        // nodes; mixed loci can carry an odd number of them.
        let all_nodes = self.sing.iter().all(|(x, _)| x.n() == 2);
        if all_nodes && nodes % 2 != 0 {
            return Err(QuotientError::Inconsistent("odd node count".into()));
        }
        let b_third = self.sing.sum_over_points(b_invariant) / rat_int(3);
        let b_third = as_integer(&b_third)
            .ok_or_else(|| QuotientError::Inconsistent("(1/3) sum B not integral".into()))?;
        Ok(IntegralityReport {
            sum_q,
            sum_q_prime: sum_qp,
            nodes,
            b_third,
        })
    }

    /// Reducible fibres of the chosen natural projection (2 = fibres over
    /// C2/G with central components C1/H), one per branch point with a
    /// nonempty string set.
    pub fn fibres_of(&self, projection: u8) -> Result<Vec<ReducibleFibre>, QuotientError> {
        assert!(projection == 1 || projection == 2);
        let (base_vec, other_vec, context_genus) = if projection == 2 {
            (&self.v2, &self.v1, self.g1)
        } else {
            (&self.v1, &self.v2, self.g2)
        };
        let mut fibres = Vec::new();
        for (j, &gj) in base_vec.branch.iter().enumerate() {
            let strings: Vec<CyclicQuotientSingularity> = self
                .orbits
                .iter()
                .filter(|o| {
                    (if projection == 2 { o.branch2 } else { o.branch1 }) == j
                })
                .map(|o| o.sing.clone())
                .collect();
            if strings.is_empty() {
                continue;
            }
            let h = base_vec.group.cyclic_subgroup(gj);
            let central_genus = other_vec.subquotient_genus(&h)?;
            let fibre = ReducibleFibre::new(
                strings,
                central_genus,
                h.len() as u64,
                context_genus,
                projection,
                j,
            )
            .map_err(|e| QuotientError::Inconsistent(e.to_string()))?;
            fibres.push(fibre);
        }
        Ok(fibres)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralityReport {
    pub sum_q: i64,
    pub sum_q_prime: i64,
    pub nodes: u64,
    pub b_third: i64,
}

/// Theorem A constructor: for fractions q_i/n_i in lowest terms summing to 1
/// and a base genus parameter q >= 0, builds G = Z_n (n = lcm n_i),
/// V1 = (0 | n_1..n_r) with g_i = xi^{q_i n / n_i}, V2 = (q | n,...,n) with
/// all branch entries xi.
pub fn theorem_a_construct(
    fractions: &[Rat],
    q_param: usize,
) -> Result<StandardIsotrivialFibration, QuotientError> {
    if fractions.is_empty() {
        return Err(QuotientError::FractionSum("0".into()));
    }
    let mut n: u64 = 1;
    for f in fractions {
        use num::ToPrimitive;
        let (num_i, den_i) = (f.numer().to_i64(), f.denom().to_i64());
        let (Some(num_i), Some(den_i)) = (num_i, den_i) else {
            return Err(QuotientError::BadFraction(f.to_string()));
        };
        if num_i <= 0 || den_i <= num_i {
            return Err(QuotientError::BadFraction(f.to_string()));
        }
        n = n.lcm(&(den_i as u64));
    }
    let sum: Rat = fractions.iter().cloned().sum();
    if sum != rat_int(1) {
        return Err(QuotientError::FractionSum(crate::rational::fmt_frac(&sum)));
    }
    let group: Group = Arc::new(cyclic(n as usize));
    use num::ToPrimitive;
    let branch1: Vec<usize> = fractions
        .iter()
        .map(|f| {
            let qi = f.numer().to_u64().unwrap();
            let ni = f.denom().to_u64().unwrap();
            ((qi * (n / ni)) % n) as usize
        })
        .collect();
    let v1 = GeneratingVector::new(group.clone(), 0, branch1, vec![]);
    let v2 = GeneratingVector::new(
        group.clone(),
        q_param,
        vec![1; n as usize],
        vec![0; 2 * q_param],
    );
    StandardIsotrivialFibration::new(group, v1, v2)
}

/// Asserts the constructor's postconditions: Sing(T) = n copies of each
/// 1/n_i(1, q_i), all n reducible fibres of the second projection are
/// (-1)-fibres of the full fraction type, and q(S) equals the parameter.
pub fn verify_theorem_a_postconditions(
    f: &StandardIsotrivialFibration,
    fractions: &[Rat],
    q_param: usize,
) -> Result<(), QuotientError> {
    use num::ToPrimitive;
    let n = f.group.order() as u64;
    let mut expected = SingularLocus::new();
    for fr in fractions {
        let (qi, ni) = (
            fr.numer().to_u64().unwrap(),
            fr.denom().to_u64().unwrap(),
        );
        expected.add(
            CyclicQuotientSingularity::new(ni, qi).expect("valid fraction"),
            n,
        );
    }
    if f.singular_locus() != &expected {
        return Err(QuotientError::Inconsistent(format!(
            "Sing(T) = {} but expected {}",
            f.singular_locus(),
            expected
        )));
    }
    let fibres = f.fibres_of(2)?;
    if fibres.len() != n as usize {
        return Err(QuotientError::Inconsistent(format!(
            "expected {n} reducible fibres, found {}",
            fibres.len()
        )));
    }
    let mut want: Vec<Rat> = fractions.to_vec();
    want.sort();
    for fibre in &fibres {
        if !fibre.is_minus_one_fibre() {
            return Err(QuotientError::Inconsistent(
                "constructed fibre is not a (-1)-fibre".into(),
            ));
        }
        let mut got: Vec<Rat> = fibre.strings().iter().map(|s| s.fraction()).collect();
        got.sort();
        if got != want {
            return Err(QuotientError::Inconsistent(
                "constructed fibre has the wrong type".into(),
            ));
        }
    }
    let inv = f.invariants()?;
    if inv.q != q_param {
        return Err(QuotientError::Inconsistent(format!(
            "q(S) = {} but expected {q_param}",
            inv.q
        )));
    }
    Ok(())
}
