//! Group actions on Riemann surfaces encoded as generating vectors:
//! validation, Riemann-Hurwitz genus, closed-form fixed-point counts, and a
//! combinatorial fixed-point model serving as brute-force oracle.

use crate::groups::{FiniteGroup, Group};
use crate::rational::{rat, rat_int, Rat};
use num::Integer;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ActionError {
    #[error("element index {0} is not in the group")]
    BadElement(usize),
    #[error("branch element at position {0} is the identity")]
    IdentityBranchElement(usize),
    #[error("product of branch elements and handle commutators is not the identity")]
    ProductNotIdentity,
    #[error("the vector does not generate the group")]
    NotGenerating,
    #[error("abelian rule violated: need r=0 or r>=2, and m1=m2 when r=2")]
    AbelianRule,
    #[error("Riemann-Hurwitz gives a non-integral or negative genus")]
    BadGenus,
    #[error("fixed-point count requires a nonidentity element")]
    IdentityElement,
    #[error("rotation exponent {q} is not a unit mod the element order {m}")]
    BadRotation { q: usize, m: usize },
    #[error("subgroup restriction gives a non-integral quotient genus")]
    BadSubquotientGenus,
}

/// A generating vector of type (g' | m1,...,mr): branch elements g1..gr and
/// handle elements h1..h_{2g'} with g1...gr * prod [h_i, h_{i+g'}] = 1.
#[derive(Debug, Clone)]
pub struct GeneratingVector {
    pub group: Group,
    pub quotient_genus: usize,
    pub branch: Vec<usize>,
    pub handles: Vec<usize>,
}

/// A point of the covering curve with nontrivial stabilizer: the coset
/// sigma<g_i> over branch index i, with distinguished stabilizer generator
/// sigma g_i sigma^-1 (declared rotation exponent 1).
#[derive(Debug, Clone)]
pub struct MarkedPoint {
    pub branch_index: usize,
    /// Canonical (minimal) coset representative.
    pub rep: usize,
    /// Sorted coset elements.
    pub coset: Vec<usize>,
    /// Distinguished stabilizer generator rep * g_i * rep^-1.
    pub stab_gen: usize,
    /// Sorted stabilizer sigma <g_i> sigma^-1.
    pub stabilizer: Vec<usize>,
}

impl GeneratingVector {
    pub fn new(
        group: Group,
        quotient_genus: usize,
        branch: Vec<usize>,
        handles: Vec<usize>,
    ) -> Self {
        GeneratingVector {
            group,
            quotient_genus,
            branch,
            handles,
        }
    }

    /// Branch orders m_i.
    pub fn signature(&self) -> Vec<usize> {
        self.branch
            .iter()
            .map(|&g| self.group.element_order(g))
            .collect()
    }

    /// Checks the defining conditions; for abelian groups additionally the
    /// r=0-or-r>=2 rule with m1=m2 when r=2.
    pub fn validate(&self) -> Result<(), ActionError> {
        let g = &self.group;
        if self.handles.len() != 2 * self.quotient_genus {
            return Err(ActionError::ProductNotIdentity);
        }
        for &x in self.branch.iter().chain(&self.handles) {
            if x >= g.order() {
                return Err(ActionError::BadElement(x));
            }
        }
        for (i, &x) in self.branch.iter().enumerate() {
            if x == g.identity() {
                return Err(ActionError::IdentityBranchElement(i));
            }
        }
        let abelian = g.elements().all(|a| g.centralizer(a).len() == g.order());
        if abelian {
            let r = self.branch.len();
            if r == 1 {
                return Err(ActionError::AbelianRule);
            }
            if r == 2 && g.element_order(self.branch[0]) != g.element_order(self.branch[1]) {
                return Err(ActionError::AbelianRule);
            }
        }
        let mut prod = g.identity();
        for &x in &self.branch {
            prod = g.mul(prod, x);
        }
        let gp = self.quotient_genus;
        for i in 0..gp {
            let (a, b) = (self.handles[i], self.handles[i + gp]);
            let comm = g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b)));
            prod = g.mul(prod, comm);
        }
        if prod != g.identity() {
            return Err(ActionError::ProductNotIdentity);
        }
        let all: Vec<usize> = self.branch.iter().chain(&self.handles).copied().collect();
        if !g.is_generating(&all) {
            return Err(ActionError::NotGenerating);
        }
        Ok(())
    }

    /// Genus of the covering curve from Riemann-Hurwitz:
    /// 2g - 2 = |G| (2g' - 2 + sum(1 - 1/m_i)).
    pub fn covering_genus(&self) -> Result<usize, ActionError> {
        let g = &self.group;
        let mut rhs = rat_int(2 * self.quotient_genus as i64 - 2);
        for m in self.signature() {
            rhs += rat_int(1) - rat(1, m as i64);
        }
        let two_g_minus_2 = rat_int(g.order() as i64) * rhs;
        let genus = (two_g_minus_2 + rat_int(2)) / rat_int(2);
        match crate::rational::as_integer(&genus) {
            Some(v) if v >= 0 => Ok(v as usize),
            _ => Err(ActionError::BadGenus),
        }
    }

    /// One marked point per left coset of <g_i>, per branch index.
    pub fn fixed_point_model(&self) -> Vec<MarkedPoint> {
        let g = &self.group;
        let mut points = Vec::new();
        for (i, &gi) in self.branch.iter().enumerate() {
            let sub = g.cyclic_subgroup(gi);
            for coset in g.left_cosets(&sub) {
                let rep = coset[0];
                let stab_gen = g.conj(rep, gi);
                let mut stabilizer: Vec<usize> =
                    sub.iter().map(|&x| g.conj(rep, x)).collect();
                stabilizer.sort_unstable();
                points.push(MarkedPoint {
                    branch_index: i,
                    rep,
                    coset,
                    stab_gen,
                    stabilizer,
                });
            }
        }
        points
    }

    fn check_h(&self, h: usize) -> Result<usize, ActionError> {
        if h == self.group.identity() {
            return Err(ActionError::IdentityElement);
        }
        if h >= self.group.order() {
            return Err(ActionError::BadElement(h));
        }
        Ok(self.group.element_order(h))
    }

    /// |Fix_C(h)| = |N_G(H)| * sum over branch indices i with m | m_i and
    /// H conjugate to <g_i^{m_i/m}> of 1/m_i, where H = <h>, m = |h|.
    pub fn fix_count(&self, h: usize) -> Result<u64, ActionError> {
        let m = self.check_h(h)?;
        let g = &self.group;
        let sub_h = g.cyclic_subgroup(h);
        let norm = g.normalizer(&sub_h).len();
        let mut total = rat(0, 1);
        for &gi in &self.branch {
            let mi = g.element_order(gi);
            if mi % m != 0 {
                continue;
            }
            let power = g.pow(gi, (mi / m) as i64);
            let sub_i = g.cyclic_subgroup(power);
            if g.subgroups_conjugate(&sub_i, &sub_h) {
                total += rat(1, mi as i64);
            }
        }
        let count = rat_int(norm as i64) * total;
        crate::rational::as_integer(&count)
            .map(|v| v as u64)
            .ok_or(ActionError::BadGenus)
    }

    /// |Fix_{C,q}(h)| = |C_G(h)| * sum over i with m | m_i and
    /// h conjugate to g_i^{m_i q / m} of 1/m_i.
    pub fn fix_count_rot(&self, h: usize, q: usize) -> Result<u64, ActionError> {
        let m = self.check_h(h)?;
        if q == 0 || q >= m || q.gcd(&m) != 1 {
            return Err(ActionError::BadRotation { q, m });
        }
        let g = &self.group;
        let cent = g.centralizer(h).len();
        let mut total = rat(0, 1);
        for &gi in &self.branch {
            let mi = g.element_order(gi);
            if mi % m != 0 {
                continue;
            }
            let power = g.pow(gi, ((mi / m) * q) as i64);
            if g.are_conjugate(h, power) {
                total += rat(1, mi as i64);
            }
        }
        let count = rat_int(cent as i64) * total;
        crate::rational::as_integer(&count)
            .map(|v| v as u64)
            .ok_or(ActionError::BadGenus)
    }

    /// Oracle count from the fixed-point model: marked points x whose
    /// stabilizer contains h with rotation exponent q at x, i.e.
    /// h = stab_gen^{(m_i/m) q}.
    pub fn model_fix_count_rot(&self, h: usize, q: usize) -> Result<u64, ActionError> {
        let m = self.check_h(h)?;
        if q.gcd(&m) != 1 {
            return Err(ActionError::BadRotation { q, m });
        }
        let g = &self.group;
        let count = self
            .fixed_point_model()
            .iter()
            .filter(|p| {
                let mi = g.element_order(p.stab_gen);
                mi % m == 0 && g.pow(p.stab_gen, ((mi / m) * q) as i64) == h
            })
            .count();
        Ok(count as u64)
    }

    /// Oracle count of marked points fixed by h (h in the stabilizer).
    pub fn model_fix_count(&self, h: usize) -> Result<u64, ActionError> {
        self.check_h(h)?;
        let count = self
            .fixed_point_model()
            .iter()
            .filter(|p| p.stabilizer.binary_search(&h).is_ok())
            .count();
        Ok(count as u64)
    }

    /// Genus of C/H for a subgroup H (element list), by Riemann-Hurwitz for
    /// the restricted action: 2 g(C) - 2 = |H| (2 g(C/H) - 2) + sum over
    /// marked points of (|Stab(x) /\ H| - 1).
    pub fn subquotient_genus(&self, h_subgroup: &[usize]) -> Result<usize, ActionError> {
        let g_c = self.covering_genus()? as i64;
        let mut ram = 0i64;
        for p in self.fixed_point_model() {
            let common = p
                .stabilizer
                .iter()
                .filter(|x| h_subgroup.binary_search(x).is_ok())
                .count() as i64;
            ram += common - 1;
        }
        let h = h_subgroup.len() as i64;
        let num = 2 * g_c - 2 - ram;
        if num % (2 * h) != 0 {
            return Err(ActionError::BadSubquotientGenus);
        }
        let genus = num / (2 * h) + 1;
        if genus < 0 {
            return Err(ActionError::BadSubquotientGenus);
        }
        Ok(genus as usize)
    }
}

/// Brute-force search for a spherical generating vector (0 | m1, m2, m3):
/// elements of the given orders with g1 g2 g3 = 1 generating the group.
pub fn spherical_vector(group: Group, orders: &[usize]) -> Option<GeneratingVector> {
    assert_eq!(orders.len(), 3, "only triangle signatures are searched");
    for a in group.elements() {
        if group.element_order(a) != orders[0] {
            continue;
        }
        for b in group.elements() {
            if group.element_order(b) != orders[1] {
                continue;
            }
            let c = group.inv(group.mul(a, b));
            if group.element_order(c) == orders[2] && group.is_generating(&[a, b]) {
                return Some(GeneratingVector::new(group.clone(), 0, vec![a, b, c], vec![]));
            }
        }
    }
    None
}

/// Sum of 1 - 1/m_i over the signature, as an exact rational.
pub fn signature_excess(group: &FiniteGroup, branch: &[usize]) -> Rat {
    branch
        .iter()
        .map(|&g| rat_int(1) - rat(1, group.element_order(g) as i64))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{abelian, cyclic, psl2};
    use std::sync::Arc;

    /// The standard (0|2,3,7) vector of PSL(2,7), found by search.
    pub fn psl27_vector() -> GeneratingVector {
        let g = Arc::new(psl2(7).unwrap());
        spherical_vector(g, &[2, 3, 7]).expect("PSL(2,7) is (0|2,3,7)-generated")
    }

    #[test]
    fn validate_cases() {
        let v = psl27_vector();
        assert_eq!(v.validate(), Ok(()));
        let c4 = Arc::new(cyclic(4));
        let bad = GeneratingVector::new(c4.clone(), 0, vec![1, 1], vec![]);
        assert_eq!(bad.validate(), Err(ActionError::ProductNotIdentity));
        let g26 = Arc::new(abelian(&[2, 6]));
        let one_branch = GeneratingVector::new(g26.clone(), 1, vec![1], vec![0, 0]);
        assert_eq!(one_branch.validate(), Err(ActionError::AbelianRule));
    }

    #[test]
    fn genus_cases() {
        let v = psl27_vector();
        assert_eq!(v.covering_genus().unwrap(), 3);
        let g = Arc::new(cyclic(5));
        let free = GeneratingVector::new(g.clone(), 1, vec![], vec![1, 0]);
        assert_eq!(free.covering_genus().unwrap(), 1);
        // Z_n with (1 | n,...,n) n times: 2g - 2 = n^2 - n.
        for n in 2..=6usize {
            let g = Arc::new(cyclic(n));
            let v = GeneratingVector::new(g.clone(), 1, vec![1; n], vec![0, 0]);
            assert_eq!(v.validate(), Ok(()));
            assert_eq!(2 * v.covering_genus().unwrap() - 2, n * n - n);
        }
    }

    #[test]
    fn fix_count_examples() {
        let v = psl27_vector();
        let g = &v.group;
        let h7 = g.elements().find(|&x| g.element_order(x) == 7).unwrap();
        assert_eq!(v.fix_count(h7).unwrap(), 3);
        // Model sizes: 84 + 56 + 24 = 164 marked points.
        assert_eq!(v.fixed_point_model().len(), 164);
        // Identity rejected.
        assert_eq!(v.fix_count(0), Err(ActionError::IdentityElement));
    }

    #[test]
    fn theorem_a_fix_counts() {
        // V2 = (1 | n,...,n) over Z_n: |Fix_{C2,q}(xi^{t_i})| = n iff q = q_i.
        // With all branch entries xi, t_i = 1: count n iff q = 1.
        for n in [3usize, 4, 6] {
            let g = Arc::new(cyclic(n));
            let v = GeneratingVector::new(g.clone(), 1, vec![1; n], vec![0, 0]);
            for q in 1..n {
                if num::Integer::gcd(&q, &n) != 1 {
                    continue;
                }
                let expected = if q == 1 { n as u64 } else { 0 };
                assert_eq!(v.fix_count_rot(1, q).unwrap(), expected);
                assert_eq!(v.model_fix_count_rot(1, q).unwrap(), expected);
            }
        }
    }

    #[test]
    fn oracle_agreement_small() {
        let g = Arc::new(cyclic(2));
        let v = GeneratingVector::new(g.clone(), 0, vec![1; 6], vec![]);
        assert_eq!(v.validate(), Ok(()));
        assert_eq!(v.covering_genus().unwrap(), 2);
        assert_eq!(v.fixed_point_model().len(), 6);
        assert_eq!(v.fix_count(1).unwrap(), 6);
        assert_eq!(v.model_fix_count(1).unwrap(), 6);
        assert_eq!(v.fix_count_rot(1, 1).unwrap(), 6);
    }

    #[test]
    fn oracle_agreement_psl27() {
        let v = psl27_vector();
        let g = &v.group;
        for h in 1..g.order() {
            let m = g.element_order(h);
            let mut sum = 0;
            for q in 1..=m.max(2) - 1 {
                if num::Integer::gcd(&q, &m) != 1 {
                    continue;
                }
                let closed = v.fix_count_rot(h, q).unwrap();
                let model = v.model_fix_count_rot(h, q).unwrap();
                assert_eq!(closed, model, "h={h} q={q}");
                sum += closed;
            }
            assert_eq!(sum, v.fix_count(h).unwrap(), "rotation partition h={h}");
            assert_eq!(v.fix_count(h).unwrap(), v.model_fix_count(h).unwrap());
            // Conjugation covariance.
            let conj = g.conj(5 % g.order(), h);
            assert_eq!(v.fix_count(h).unwrap(), v.fix_count(conj).unwrap());
        }
    }

    #[test]
    fn subquotient_genus_cases() {
        let v = psl27_vector();
        let g = &v.group;
        let h7 = g.elements().find(|&x| g.element_order(x) == 7).unwrap();
        assert_eq!(v.subquotient_genus(&g.cyclic_subgroup(h7)).unwrap(), 0);
        let h2 = g.elements().find(|&x| g.element_order(x) == 2).unwrap();
        assert_eq!(v.subquotient_genus(&g.cyclic_subgroup(h2)).unwrap(), 1);
        // Trivial subgroup gives g(C); whole group gives the quotient genus.
        assert_eq!(v.subquotient_genus(&[0]).unwrap(), 3);
        let all: Vec<usize> = g.elements().collect();
        assert_eq!(v.subquotient_genus(&all).unwrap(), v.quotient_genus);
    }
}
