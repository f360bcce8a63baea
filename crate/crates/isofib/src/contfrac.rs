//! Hirzebruch-Jung (descending) continued fractions n/q = [b1,...,bk] and the
//! Riemenschneider duality between the expansions of n/q and n/(n-q).

use crate::rational::{rat, Rat};
use num::Integer;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ContFracError {
    #[error("q must satisfy 1 <= q <= n-1 (got n={n}, q={q})")]
    QOutOfRange { n: u64, q: u64 },
    #[error("n and q must be coprime (got n={n}, q={q})")]
    NotCoprime { n: u64, q: u64 },
    #[error("q/n = 1/2 is self-dual and excluded from the duality operations")]
    SelfDual,
    #[error("q must be at least 2 (q=1 gives a=0 and an undefined q/a)")]
    UnitWeight,
}

/// A descending continued-fraction expansion [b1,...,bk], every term >= 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HJExpansion(Vec<u64>);

impl HJExpansion {
    pub fn new(terms: Vec<u64>) -> Self {
        assert!(!terms.is_empty(), "expansion must be nonempty");
        assert!(terms.iter().all(|&b| b >= 2), "every term must be >= 2");
        HJExpansion(terms)
    }

    pub fn terms(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false // nonempty by construction
    }

    pub fn reversed(&self) -> Self {
        HJExpansion(self.0.iter().rev().copied().collect())
    }
}

impl std::fmt::Display for HJExpansion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "]")
    }
}

fn check_pair(n: u64, q: u64) -> Result<(), ContFracError> {
    if q == 0 || q >= n {
        return Err(ContFracError::QOutOfRange { n, q });
    }
    if n.gcd(&q) != 1 {
        return Err(ContFracError::NotCoprime { n, q });
    }
    Ok(())
}

/// The unique all->=2 expansion of n/q, by the ceiling recursion b = ceil(n/q).
pub fn hj_expand(n: u64, q: u64) -> Result<HJExpansion, ContFracError> {
    check_pair(n, q)?;
    let (mut n, mut q) = (n, q);
    let mut terms = Vec::new();
    while q > 0 {
        let b = n.div_ceil(q);
        terms.push(b);
        let r = b * q - n;
        (n, q) = (q, r);
    }
    Ok(HJExpansion::new(terms))
}

/// Exact value of the descending continued fraction b1 - 1/(b2 - 1/(...)).
pub fn hj_eval(e: &HJExpansion) -> Rat {
    let mut x = rat(0, 1);
    for &b in e.terms().iter().rev() {
        // x holds the value of the tail; the next level is b - 1/x.
        x = if x == rat(0, 1) {
            rat(b as i64, 1)
        } else {
            rat(b as i64, 1) - x.recip()
        };
    }
    x
}

/// Convergents (n_s, q_s) of the expansion, by the standard recursion with
/// seeds n_{-1}=0, n_0=1, q_{-1}=-1, q_0=0; the last pair is (n, q).
pub fn convergents(e: &HJExpansion) -> Vec<(u64, u64)> {
    let (mut n_prev, mut n_cur) = (0i64, 1i64);
    let (mut q_prev, mut q_cur) = (-1i64, 0i64);
    let mut out = Vec::with_capacity(e.len());
    for &b in e.terms() {
        let n_next = b as i64 * n_cur - n_prev;
        let q_next = b as i64 * q_cur - q_prev;
        (n_prev, n_cur) = (n_cur, n_next);
        (q_prev, q_cur) = (q_cur, q_next);
        out.push((n_cur as u64, q_cur as u64));
    }
    out
}

/// The unique q' in [1, n-1] with q q' = 1 mod n.
pub fn inverse_residue(n: u64, q: u64) -> Result<u64, ContFracError> {
    check_pair(n, q)?;
    if n == 1 {
        return Err(ContFracError::QOutOfRange { n, q });
    }
    let e = (q as i64).extended_gcd(&(n as i64));
    Ok(e.x.rem_euclid(n as i64) as u64)
}

/// Block data (k_1..k_t, l_1..l_{t-1}) of the Riemenschneider duality pattern:
/// one side of the dual pair reads [(2)^{k1}, l1+3, (2)^{k2}, ..., l_{t-1}+3, (2)^{kt}]
/// and the other [k1+2, (2)^{l1}, k2+3, ..., k_{t-1}+3, (2)^{l_{t-1}}, kt+2].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualBlocks {
    pub k: Vec<u64>,
    pub l: Vec<u64>,
}

impl DualBlocks {
    /// Parses the run pattern [(2)^{k1}, l1+3, ...]; requires a term >= 3.
    fn parse(e: &HJExpansion) -> Option<DualBlocks> {
        if e.terms().iter().all(|&b| b == 2) {
            return None;
        }
        let mut k = vec![0u64];
        let mut l = Vec::new();
        for &b in e.terms() {
            if b == 2 {
                *k.last_mut().unwrap() += 1;
            } else {
                l.push(b - 3);
                k.push(0);
            }
        }
        Some(DualBlocks { k, l })
    }

    /// Builds the companion pattern [k1+2, (2)^{l1}, k2+3, ..., kt+2].
    fn companion(&self) -> HJExpansion {
        let t = self.k.len();
        assert!(t >= 2, "companion pattern needs at least two k-blocks");
        let mut terms = Vec::new();
        for (i, &ki) in self.k.iter().enumerate() {
            let base = if i == 0 || i == t - 1 { 2 } else { 3 };
            terms.push(ki + base);
            if i < t - 1 {
                terms.extend(std::iter::repeat(2).take(self.l[i] as usize));
            }
        }
        HJExpansion::new(terms)
    }
}

/// Dual expansion hj_expand(n, n-q) together with the shared block data of the
/// pair. Blocks are parsed from whichever of n/q, n/(n-q) contains a term >= 3
/// (an all-2s side arises only for q = n-1 or q = 1, never both).
pub fn riemenschneider_dual(
    n: u64,
    q: u64,
) -> Result<(HJExpansion, DualBlocks), ContFracError> {
    check_pair(n, q)?;
    if n == 2 * q {
        return Err(ContFracError::SelfDual);
    }
    let e = hj_expand(n, q)?;
    let dual = hj_expand(n, n - q)?;
    let blocks = match DualBlocks::parse(&e) {
        Some(b) => {
            debug_assert_eq!(b.companion(), dual);
            b
        }
        None => {
            let b = DualBlocks::parse(&dual).expect("both sides of a dual pair all 2s");
            debug_assert_eq!(b.companion(), e);
            b
        }
    };
    Ok((dual, blocks))
}

/// Shifted duality data for q >= 2: with q' the inverse residue and
/// a = (q q' - 1)/n, returns ((n+q)/(a+q'), q/a, a), asserting that the block
/// pattern of n/(n-q') with the final term bumped from kt+2 to kt+3 evaluates
/// to (n+q)/(a+q'), that dropping that final term evaluates to q/a, and that
/// the reversed bumped pattern evaluates to (n+q)/q.
pub fn dual_shift_identities(n: u64, q: u64) -> Result<(Rat, Rat, u64), ContFracError> {
    check_pair(n, q)?;
    if q == 1 {
        return Err(ContFracError::UnitWeight);
    }
    let qp = inverse_residue(n, q)?;
    let a = (q * qp - 1) / n;
    // q >= 2 forces q' >= 2, so n/(n-q') is never the all-2s expansion [2,...].
    let base = hj_expand(n, n - qp)?;
    let blocks = DualBlocks::parse(&base).expect("n/(n-q') has a term >= 3 when q >= 2");
    let mut bumped = blocks.companion().terms().to_vec();
    *bumped.last_mut().unwrap() += 1;
    let bumped = HJExpansion::new(bumped);
    let frac1 = rat((n + q) as i64, (a + qp) as i64);
    assert_eq!(hj_eval(&bumped), frac1, "shifted duality pattern mismatch");
    let dropped = HJExpansion::new(bumped.terms()[..bumped.len() - 1].to_vec());
    let frac2 = rat(q as i64, a as i64);
    assert_eq!(hj_eval(&dropped), frac2, "truncated shifted pattern mismatch");
    assert_eq!(
        hj_eval(&bumped.reversed()),
        rat((n + q) as i64, q as i64),
        "reversed shifted pattern mismatch"
    );
    Ok((frac1, frac2, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn expand_examples() {
        assert_eq!(hj_expand(7, 3).unwrap().terms(), &[3, 2, 2]);
        assert_eq!(hj_expand(2, 1).unwrap().terms(), &[2]);
        assert_eq!(hj_expand(13, 5).unwrap().terms(), &[3, 3, 2]);
    }

    #[test]
    fn expand_rejects_bad_input() {
        assert_eq!(
            hj_expand(4, 2),
            Err(ContFracError::NotCoprime { n: 4, q: 2 })
        );
        assert_eq!(
            hj_expand(4, 4),
            Err(ContFracError::QOutOfRange { n: 4, q: 4 })
        );
        assert_eq!(
            hj_expand(4, 0),
            Err(ContFracError::QOutOfRange { n: 4, q: 0 })
        );
    }

    #[test]
    fn eval_examples() {
        assert_eq!(hj_eval(&HJExpansion::new(vec![3, 2, 2])), rat(7, 3));
        assert_eq!(hj_eval(&HJExpansion::new(vec![9])), rat(9, 1));
        // [2,...,2] with m terms evaluates to (m+1)/m.
        for m in 1..=10 {
            let e = HJExpansion::new(vec![2; m]);
            assert_eq!(hj_eval(&e), rat(m as i64 + 1, m as i64));
        }
    }

    #[test]
    fn round_trip_exhaustive() {
        for n in 2..=200u64 {
            for q in 1..n {
                if n.gcd(&q) != 1 {
                    continue;
                }
                let e = hj_expand(n, q).unwrap();
                assert_eq!(hj_eval(&e), rat(n as i64, q as i64));
            }
        }
    }

    #[test]
    fn convergent_examples_and_determinant() {
        let e = HJExpansion::new(vec![3, 2, 2]);
        assert_eq!(convergents(&e), vec![(3, 1), (5, 2), (7, 3)]);
        assert_eq!(convergents(&HJExpansion::new(vec![2])), vec![(2, 1)]);
        for n in 2..=60u64 {
            for q in 1..n {
                if n.gcd(&q) != 1 {
                    continue;
                }
                let e = hj_expand(n, q).unwrap();
                let cs = convergents(&e);
                assert_eq!(*cs.last().unwrap(), (n, q));
                let (mut np, mut qp) = (1i64, 0i64);
                for &(ns, qs) in &cs {
                    assert_eq!(np * qs as i64 - ns as i64 * qp, 1);
                    (np, qp) = (ns as i64, qs as i64);
                }
            }
        }
    }

    #[test]
    fn convergent_gaps() {
        // n_{s-1}/q_{s-1} - n_s/q_s = 1/(q_{s-1} q_s) and
        // q_s/n_s - q_{s-1}/n_{s-1} = 1/(n_s n_{s-1}).
        for n in 2..=60u64 {
            for q in 1..n {
                if n.gcd(&q) != 1 {
                    continue;
                }
                let cs = convergents(&hj_expand(n, q).unwrap());
                for w in cs.windows(2) {
                    let ((n0, q0), (n1, q1)) = (w[0], w[1]);
                    if q0 > 0 {
                        assert_eq!(
                            rat(n0 as i64, q0 as i64) - rat(n1 as i64, q1 as i64),
                            rat(1, (q0 * q1) as i64)
                        );
                    }
                    assert_eq!(
                        rat(q1 as i64, n1 as i64) - rat(q0 as i64, n0 as i64),
                        rat(1, (n0 * n1) as i64)
                    );
                }
            }
        }
    }

    #[test]
    fn inverse_residue_examples_and_reversal() {
        assert_eq!(inverse_residue(7, 3).unwrap(), 5);
        assert_eq!(inverse_residue(13, 4).unwrap(), 10);
        for n in 3..=12u64 {
            assert_eq!(inverse_residue(n, 1).unwrap(), 1);
        }
        for n in 2..=200u64 {
            for q in 1..n {
                if n.gcd(&q) != 1 {
                    continue;
                }
                let qp = inverse_residue(n, q).unwrap();
                assert_eq!((q * qp) % n, 1);
                assert_eq!(
                    hj_expand(n, qp).unwrap(),
                    hj_expand(n, q).unwrap().reversed()
                );
            }
        }
    }

    #[test]
    fn dual_examples() {
        // 7/3 = [3,2,2] has dual 7/4 = [2,4] (blocks k=(0,2), l=(0)).
        let (d, b) = riemenschneider_dual(7, 3).unwrap();
        assert_eq!(d.terms(), &[2, 4]);
        assert_eq!((b.k, b.l), (vec![0, 2], vec![0]));
        let (d, _) = riemenschneider_dual(5, 2).unwrap();
        assert_eq!(d.terms(), &[2, 3]);
        for n in 3..=9u64 {
            let (d, b) = riemenschneider_dual(n, 1).unwrap();
            assert_eq!(d.terms(), vec![2; n as usize - 1].as_slice());
            assert_eq!(b.k, vec![0, 0]);
            assert_eq!(b.l, vec![n - 3]);
        }
        assert_eq!(riemenschneider_dual(2, 1), Err(ContFracError::SelfDual));
        assert_eq!(riemenschneider_dual(4, 2), Err(ContFracError::NotCoprime { n: 4, q: 2 }));
    }

    #[test]
    fn dual_involution_and_blocks() {
        for n in 2..=60u64 {
            for q in 1..n {
                if n.gcd(&q) != 1 || n == 2 * q {
                    continue;
                }
                let (dual, blocks) = riemenschneider_dual(n, q).unwrap();
                assert_eq!(dual, hj_expand(n, n - q).unwrap());
                let (ddual, _) = riemenschneider_dual(n, n - q).unwrap();
                assert_eq!(ddual, hj_expand(n, q).unwrap());
                assert_eq!(blocks.k.len(), blocks.l.len() + 1);
                // Block counts determine the total string lengths of the pair.
                let total: u64 = blocks.k.iter().sum::<u64>()
                    + blocks.l.iter().sum::<u64>()
                    + 2 * blocks.k.len() as u64
                    - 1;
                assert_eq!(total, (dual.len() + ddual.len()) as u64);
            }
        }
    }

    #[test]
    fn dual_shift_examples() {
        let (f1, f2, a) = dual_shift_identities(5, 2).unwrap();
        assert_eq!((f1, f2, a), (rat(7, 4), rat(2, 1), 1));
        let (f1, f2, a) = dual_shift_identities(7, 3).unwrap();
        assert_eq!((f1, f2, a), (rat(10, 7), rat(3, 2), 2));
        let (f1, f2, a) = dual_shift_identities(3, 2).unwrap();
        assert_eq!((f1, f2, a), (rat(5, 3), rat(2, 1), 1));
        assert_eq!(dual_shift_identities(5, 1), Err(ContFracError::UnitWeight));
    }

    #[test]
    fn dual_shift_exhaustive() {
        // The asserts inside dual_shift_identities check the shifted patterns.
        for n in 3..=60u64 {
            for q in 2..n {
                if n.gcd(&q) != 1 {
                    continue;
                }
                let qp = inverse_residue(n, q).unwrap();
                let a = (q * qp - 1) / n;
                let (f1, f2, a2) = dual_shift_identities(n, q).unwrap();
                assert_eq!(a2, a);
                assert_eq!(f1, rat((n + q) as i64, (a + qp) as i64));
                assert_eq!(f2, rat(q as i64, a as i64));
            }
        }
    }
}
