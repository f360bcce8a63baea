//! Cyclic quotient singularities 1/n(1,q) with their resolution invariants
//! ell, h, e, B and the full singularity table.

use crate::contfrac::{hj_expand, inverse_residue, ContFracError, HJExpansion};
use crate::rational::{rat, rat_int, Rat};

/// The singularity 1/n(1,q): the plane quotient by (x,y) -> (zx, z^q y),
/// z a primitive n-th root of unity. Stored with its given q (not
/// canonicalized to min(q,q')); use is_isomorphic for unordered comparison.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicQuotientSingularity {
    n: u64,
    q: u64,
}

impl CyclicQuotientSingularity {
    pub fn new(n: u64, q: u64) -> Result<Self, ContFracError> {
        // hj_expand performs exactly the range/coprimality validation we need.
        hj_expand(n, q)?;
        Ok(CyclicQuotientSingularity { n, q })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// The inverse weight q' with q q' = 1 mod n.
    pub fn q_prime(&self) -> u64 {
        inverse_residue(self.n, self.q).expect("validated on construction")
    }

    pub fn expansion(&self) -> HJExpansion {
        hj_expand(self.n, self.q).expect("validated on construction")
    }

    /// The fraction q/n.
    pub fn fraction(&self) -> Rat {
        rat(self.q as i64, self.n as i64)
    }

    /// Same singularity up to isomorphism: equal n and q in {q, q'}.
    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.n == other.n && (other.q == self.q || other.q == self.q_prime())
    }
}

impl std::fmt::Display for CyclicQuotientSingularity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "1/{}(1,{})", self.n, self.q)
    }
}

/// Length k of the resolution string of x.
pub fn ell(x: &CyclicQuotientSingularity) -> u64 {
    x.expansion().len() as u64
}

/// h = 2 - (2 + q + q')/n - sum(b_i - 2); zero exactly for the A-type points q = n-1.
pub fn h_invariant(x: &CyclicQuotientSingularity) -> Rat {
    let e = x.expansion();
    let correction: i64 = e.terms().iter().map(|&b| b as i64 - 2).sum();
    rat_int(2) - rat((2 + x.q() + x.q_prime()) as i64, x.n() as i64) - rat_int(correction)
}

/// e = k + 1 - 1/n.
pub fn e_invariant(x: &CyclicQuotientSingularity) -> Rat {
    rat_int(ell(x) as i64 + 1) - rat(1, x.n() as i64)
}

/// B = 2e - h = (q + q')/n + sum b_i.
pub fn b_invariant(x: &CyclicQuotientSingularity) -> Rat {
    let direct = rat((x.q() + x.q_prime()) as i64, x.n() as i64)
        + rat_int(x.expansion().terms().iter().map(|&b| b as i64).sum());
    debug_assert_eq!(
        direct,
        rat_int(2) * e_invariant(x) - h_invariant(x),
        "the two B formulas must agree"
    );
    direct
}

/// A finite multiset of cyclic quotient singularities.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SingularLocus {
    entries: Vec<(CyclicQuotientSingularity, u64)>,
}

impl SingularLocus {
    pub fn new() -> Self {
        SingularLocus::default()
    }

    pub fn add(&mut self, x: CyclicQuotientSingularity, mult: u64) {
        assert!(mult >= 1);
        if let Some(e) = self.entries.iter_mut().find(|(y, _)| *y == x) {
            e.1 += mult;
            return;
        }
        self.entries.push((x, mult));
        // Display order: by n, then canonical min(q,q'), then q.
        self.entries.sort_by_key(|(y, _)| (y.n(), y.q().min(y.q_prime()), y.q()));
    }

    /// (singularity, multiplicity) pairs in display order.
    pub fn iter(&self) -> impl Iterator<Item = &(CyclicQuotientSingularity, u64)> {
        self.entries.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total number of singular points counted with multiplicity.
    pub fn total_points(&self) -> u64 {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    /// Sum of f over all points, with multiplicity.
    pub fn sum_over_points(&self, f: impl Fn(&CyclicQuotientSingularity) -> Rat) -> Rat {
        self.entries
            .iter()
            .map(|(x, m)| rat_int(*m as i64) * f(x))
            .sum()
    }

    /// Equality as multisets up to isomorphism of each singularity.
    pub fn is_isomorphic(&self, other: &Self) -> bool {
        let canon = |l: &SingularLocus| {
            let mut v: Vec<(u64, u64, u64)> = l
                .entries
                .iter()
                .map(|(x, m)| (x.n(), x.q().min(x.q_prime()), *m))
                .collect();
            v.sort();
            v
        };
        canon(self) == canon(other)
    }
}

impl std::fmt::Display for SingularLocus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "smooth");
        }
        for (i, (x, m)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *m > 1 {
                write!(f, "{m} x {x}")?;
            } else {
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

/// One row of the singularity table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub n: u64,
    pub q: u64,
    pub expansion: HJExpansion,
    pub q_prime: u64,
    pub b: Rat,
    pub h: Rat,
}

/// All rows (n, q, expansion, q', B, h) for coprime pairs with 2 <= n <= n_max.
pub fn appendix_b_table(n_max: u64) -> Vec<TableRow> {
    assert!(n_max >= 2);
    let mut rows = Vec::new();
    for n in 2..=n_max {
        for q in 1..n {
            let x = match CyclicQuotientSingularity::new(n, q) {
                Ok(x) => x,
                Err(_) => continue,
            };
            rows.push(TableRow {
                n,
                q,
                expansion: x.expansion(),
                q_prime: x.q_prime(),
                b: b_invariant(&x),
                h: h_invariant(&x),
            });
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contfrac::convergents;
    use crate::contfrac::riemenschneider_dual;
    use num::Integer;

    fn cqs(n: u64, q: u64) -> CyclicQuotientSingularity {
        CyclicQuotientSingularity::new(n, q).unwrap()
    }

    #[test]
    fn ell_examples() {
        assert_eq!(ell(&cqs(7, 3)), 3);
        assert_eq!(ell(&cqs(9, 8)), 8);
        for n in 2..=9 {
            assert_eq!(ell(&cqs(n, 1)), 1);
        }
    }

    #[test]
    fn h_examples() {
        assert_eq!(h_invariant(&cqs(7, 3)), rat(-3, 7));
        assert_eq!(h_invariant(&cqs(2, 1)), rat(0, 1));
        assert_eq!(h_invariant(&cqs(12, 7)), rat(-4, 3));
    }

    #[test]
    fn e_examples() {
        assert_eq!(e_invariant(&cqs(2, 1)), rat(3, 2));
        assert_eq!(e_invariant(&cqs(7, 3)), rat(27, 7));
        assert_eq!(e_invariant(&cqs(3, 1)), rat(5, 3));
    }

    #[test]
    fn b_examples() {
        assert_eq!(b_invariant(&cqs(2, 1)), rat(3, 1));
        assert_eq!(b_invariant(&cqs(7, 3)), rat(57, 7));
        assert_eq!(b_invariant(&cqs(13, 5)), rat(9, 1));
    }

    #[test]
    fn q_prime_symmetry_and_b_floor() {
        for n in 2..=100u64 {
            for q in 1..n {
                if n.gcd(&q) != 1 {
                    continue;
                }
                let x = cqs(n, q);
                let y = cqs(n, x.q_prime());
                assert_eq!(ell(&x), ell(&y));
                assert_eq!(h_invariant(&x), h_invariant(&y));
                assert_eq!(e_invariant(&x), e_invariant(&y));
                assert_eq!(b_invariant(&x), b_invariant(&y));
                // h = 0 exactly for the A-type points q = n-1.
                assert_eq!(h_invariant(&x) == rat(0, 1), q == n - 1);
                // B >= 3 with equality only at (2,1).
                let b = b_invariant(&x);
                assert!(b >= rat(3, 1));
                assert_eq!(b == rat(3, 1), (n, q) == (2, 1));
            }
        }
    }

    #[test]
    fn is_isomorphic_examples() {
        assert!(cqs(7, 3).is_isomorphic(&cqs(7, 5)));
        assert!(!cqs(7, 3).is_isomorphic(&cqs(7, 2)));
        assert!(cqs(11, 4).is_isomorphic(&cqs(11, 4)));
        assert!(!cqs(7, 3).is_isomorphic(&cqs(14, 3)));
    }

    #[test]
    fn b_monotone_along_convergents() {
        // B(q_s/n_s) - B(q_t/n_t) >= s - t for s >= t, equality iff s = t,
        // and the floor bound B >= c + 2/c when b1 >= c.
        for n in 2..=60u64 {
            for q in 1..n {
                if n.gcd(&q) != 1 {
                    continue;
                }
                let e = hj_expand(n, q).unwrap();
                let bs: Vec<Rat> = convergents(&e)
                    .iter()
                    .map(|&(ns, qs)| b_invariant(&cqs(ns, qs)))
                    .collect();
                for s in 0..bs.len() {
                    for t in 0..=s {
                        let gap = bs[s].clone() - bs[t].clone();
                        assert!(gap >= rat_int((s - t) as i64));
                        assert_eq!(gap == rat_int((s - t) as i64), s == t);
                    }
                }
                let c = e.terms()[0];
                let bound = rat_int(c as i64) + rat(2, c as i64);
                assert!(bs.last().unwrap() >= &bound);
                assert_eq!(
                    bs.last().unwrap() == &bound,
                    q == 1 && n == c
                );
            }
        }
    }

    #[test]
    fn duality_sum() {
        // B(q/n) + B((n-q)/n) = 3 sum(k_i + 1) + 3 sum(l_j + 1).
        for n in 2..=60u64 {
            for q in 1..n {
                if n.gcd(&q) != 1 || n == 2 * q {
                    continue;
                }
                let (_, blocks) = riemenschneider_dual(n, q).unwrap();
                let rhs: i64 = blocks.k.iter().map(|&k| 3 * (k as i64 + 1)).sum::<i64>()
                    + blocks.l.iter().map(|&l| 3 * (l as i64 + 1)).sum::<i64>();
                assert_eq!(
                    b_invariant(&cqs(n, q)) + b_invariant(&cqs(n, n - q)),
                    rat_int(rhs)
                );
            }
        }
    }

    #[test]
    fn shifted_duality_sums() {
        // With blocks from n/(n-q') and a = (qq'-1)/n:
        //   B((n-q')/n) + B((a+q')/(n+q)) = 1 - (1+q^2)/(n(n+q)) + 3 sum(k+1) + 3 sum(l+1)
        //   B((n-q')/n) + B(a/q)          = -(1+q^2+n^2)/(nq)    + 3 sum(k+1) + 3 sum(l+1)
        for n in 3..=60u64 {
            for q in 2..n {
                if n.gcd(&q) != 1 {
                    continue;
                }
                let qp = inverse_residue(n, q).unwrap();
                let a = (q * qp - 1) / n;
                let (_, blocks) = riemenschneider_dual(n, n - qp).unwrap();
                let block_sum: i64 = blocks.k.iter().map(|&k| 3 * (k as i64 + 1)).sum::<i64>()
                    + blocks.l.iter().map(|&l| 3 * (l as i64 + 1)).sum::<i64>();
                let left0 = b_invariant(&cqs(n, n - qp));
                let lhs1 = left0.clone() + b_invariant(&cqs(n + q, a + qp));
                let rhs1 = rat_int(1)
                    - rat((1 + q * q) as i64, (n * (n + q)) as i64)
                    + rat_int(block_sum);
                assert_eq!(lhs1, rhs1, "first shifted sum at ({n},{q})");
                if q >= 2 && a >= 1 && a < q && q.gcd(&a) == 1 {
                    let lhs2 = left0 + b_invariant(&cqs(q, a));
                    let rhs2 = -rat((1 + q * q + n * n) as i64, (n * q) as i64)
                        + rat_int(block_sum);
                    assert_eq!(lhs2, rhs2, "second shifted sum at ({n},{q})");
                }
            }
        }
    }

    #[test]
    fn table_examples() {
        let rows = appendix_b_table(14);
        let find = |n, q| rows.iter().find(|r| r.n == n && r.q == q).unwrap();
        let r = find(10, 3);
        assert_eq!(r.expansion.terms(), &[4, 2, 2]);
        assert_eq!((r.q_prime, r.b.clone(), r.h.clone()), (7, rat(9, 1), rat(-6, 5)));
        let r = find(14, 9);
        assert_eq!(r.expansion.terms(), &[2, 3, 2, 2, 2]);
        assert_eq!((r.q_prime, r.b.clone(), r.h.clone()), (11, rat(87, 7), rat(-4, 7)));
        let r = find(8, 3);
        assert_eq!(r.expansion.terms(), &[3, 3]);
        assert_eq!((r.q_prime, r.b.clone(), r.h.clone()), (3, rat(27, 4), rat(-1, 1)));
        // Row count for n <= 9 is the totient sum 27.
        assert_eq!(appendix_b_table(9).len(), 27);
    }

    #[test]
    fn locus_display_and_sums() {
        let mut l = SingularLocus::new();
        l.add(cqs(7, 4), 1);
        l.add(cqs(2, 1), 4);
        l.add(cqs(3, 1), 1);
        l.add(cqs(2, 1), 2);
        assert_eq!(l.to_string(), "6 x 1/2(1,1) + 1/3(1,1) + 1/7(1,4)");
        assert_eq!(l.total_points(), 8);
        assert_eq!(
            l.sum_over_points(|x| x.fraction()),
            rat(6, 2) + rat(1, 3) + rat(4, 7)
        );
        assert_eq!(SingularLocus::new().to_string(), "smooth");
    }

    #[test]
    fn locus_isomorphism() {
        let mut a = SingularLocus::new();
        a.add(cqs(7, 3), 2);
        let mut b = SingularLocus::new();
        b.add(cqs(7, 5), 2);
        assert!(a.is_isomorphic(&b));
        let mut c = SingularLocus::new();
        c.add(cqs(7, 2), 2);
        assert!(!a.is_isomorphic(&c));
    }
}
