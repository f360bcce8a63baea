//! Reducible fibres: multiplicity systems, (-1)-fibre criteria, the
//! contraction procedure with c(F) and delta(F), the classification of
//! (-1)-fibres in low genus, relative-minimal-model invariants, bound checks,
//! and the group-theoretic exclusion suite.

use crate::contfrac::{hj_eval, hj_expand, HJExpansion};
use crate::groups::{abelian, g24_8, g32_9, g96_64_candidates, g32_11_candidates, d_2_8_5, power_conjugacy_profile, FiniteGroup};
use crate::quotient::StandardIsotrivialFibration;
use crate::rational::{as_integer, fmt_frac, rat, rat_int, Rat};
use crate::singularities::{b_invariant, CyclicQuotientSingularity};
use num::{Integer, ToPrimitive, Zero};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum FibreError {
    #[error("a reducible fibre carries at least two HJ-strings")]
    TooFewStrings,
    #[error("string order {n} does not divide the fibre multiplicity {rho}")]
    IndivisibleMultiplicity { n: u64, rho: u64 },
    #[error("central self-intersection is not a negative integer (sum {0})")]
    NonIntegralSum(String),
    #[error("fibre data violates the Riemann-Hurwitz relation")]
    RiemannHurwitz,
    #[error("contraction strategies disagree: round-robin {round_robin}, greedy {greedy}")]
    ContractionMismatch { round_robin: u64, greedy: u64 },
    #[error("genus 0 admits infinitely many (-1)-fibre types; classification needs genus >= 1")]
    GenusZeroClassification,
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

/// A reducible fibre of one of the two natural projections: its HJ-strings,
/// the genus of the central component Y, the multiplicity rho = |H|, and the
/// genus of the isotrivial fibre curve (C1 for projection 2).
#[derive(Debug, Clone)]
pub struct ReducibleFibre {
    strings: Vec<CyclicQuotientSingularity>,
    central_genus: usize,
    multiplicity: u64,
    context_genus: usize,
    projection: u8,
    branch_index: usize,
}

impl ReducibleFibre {
    pub fn new(
        strings: Vec<CyclicQuotientSingularity>,
        central_genus: usize,
        multiplicity: u64,
        context_genus: usize,
        projection: u8,
        branch_index: usize,
    ) -> Result<Self, FibreError> {
        assert!(projection == 1 || projection == 2);
        if strings.len() < 2 {
            return Err(FibreError::TooFewStrings);
        }
        for s in &strings {
            if multiplicity % s.n() != 0 {
                return Err(FibreError::IndivisibleMultiplicity {
                    n: s.n(),
                    rho: multiplicity,
                });
            }
        }
        let f = ReducibleFibre {
            strings,
            central_genus,
            multiplicity,
            context_genus,
            projection,
            branch_index,
        };
        let sum: Rat = f.strings.iter().map(|s| rat(f.eff_q(s) as i64, s.n() as i64)).sum();
        match as_integer(&sum) {
            Some(k) if k >= 1 => {}
            _ => return Err(FibreError::NonIntegralSum(fmt_frac(&sum))),
        }
        // Riemann-Hurwitz for the rho-sheeted cover of Y branched over the
        // string points: 2g - 2 = rho (2 g(Y) - 2) + sum (rho/n_i)(n_i - 1).
        let lhs = 2 * f.context_genus as i64 - 2;
        let rhs = f.multiplicity as i64 * (2 * f.central_genus as i64 - 2)
            + f.strings
                .iter()
                .map(|s| (f.multiplicity / s.n()) as i64 * (s.n() as i64 - 1))
                .sum::<i64>();
        if lhs != rhs {
            return Err(FibreError::RiemannHurwitz);
        }
        Ok(f)
    }

    pub fn strings(&self) -> &[CyclicQuotientSingularity] {
        &self.strings
    }

    pub fn central_genus(&self) -> usize {
        self.central_genus
    }

    pub fn multiplicity(&self) -> u64 {
        self.multiplicity
    }

    pub fn context_genus(&self) -> usize {
        self.context_genus
    }

    pub fn projection(&self) -> u8 {
        self.projection
    }

    pub fn branch_index(&self) -> usize {
        self.branch_index
    }

    /// Rotation numerator seen from this fibre's own projection.
    fn eff_q(&self, s: &CyclicQuotientSingularity) -> u64 {
        if self.projection == 2 {
            s.q()
        } else {
            s.q_prime()
        }
    }

    fn eff_expansion(&self, s: &CyclicQuotientSingularity) -> HJExpansion {
        hj_expand(s.n(), self.eff_q(s)).expect("validated string")
    }

    /// -Y^2 on the requested side: side 1 sums q_i/n_i, side 2 sums q_i'/n_i.
    pub fn central_self_intersection_side(&self, side: u8) -> Result<i64, FibreError> {
        assert!(side == 1 || side == 2);
        let sum: Rat = self
            .strings
            .iter()
            .map(|s| {
                let q = if side == 1 { s.q() } else { s.q_prime() };
                rat(q as i64, s.n() as i64)
            })
            .sum();
        as_integer(&sum)
            .map(|k| -k)
            .ok_or_else(|| FibreError::NonIntegralSum(fmt_frac(&sum)))
    }

    /// Self-intersection of this fibre's own central component.
    pub fn central_self_intersection(&self) -> i64 {
        let side = if self.projection == 2 { 1 } else { 2 };
        self.central_self_intersection_side(side)
            .expect("validated at construction")
    }

    /// Both displayed conditions: sum q_i/n_i = 1 and
    /// 2g - 2 = rho (-2 + sum (1 - 1/n_i)); equivalently Y^2 = -1 and g(Y) = 0.
    pub fn is_minus_one_fibre(&self) -> bool {
        let cond1 = self.central_self_intersection() == -1;
        let excess: Rat = self
            .strings
            .iter()
            .map(|s| rat_int(1) - rat(1, s.n() as i64))
            .sum();
        let rhs = rat_int(self.multiplicity as i64) * (rat_int(-2) + excess);
        let cond2 = rat_int(2 * self.context_genus as i64 - 2) == rhs;
        debug_assert_eq!(cond2, self.central_genus == 0);
        cond1 && cond2
    }

    pub fn sum_b(&self) -> Rat {
        self.strings.iter().map(b_invariant).sum()
    }

    /// The resolution picture: Y meeting the first curve of each string.
    fn configuration(&self) -> (CurveConfiguration, Vec<Option<usize>>) {
        let mut curves = vec![(self.central_genus, self.central_self_intersection())];
        let mut owner: Vec<Option<usize>> = vec![None];
        let mut edges = Vec::new();
        for (si, s) in self.strings.iter().enumerate() {
            let mut prev = 0usize;
            for &b in self.eff_expansion(s).terms() {
                curves.push((0, -(b as i64)));
                owner.push(Some(si));
                edges.push((prev, curves.len() - 1));
                prev = curves.len() - 1;
            }
        }
        let mut cfg = CurveConfiguration::new(&curves);
        for (a, b) in edges {
            cfg.meet(a, b, 1);
        }
        (cfg, owner)
    }

    /// Runs the round-robin contraction procedure and cross-checks the total
    /// against a greedy strategy.
    pub fn contract(&self) -> Result<ContractionResult, FibreError> {
        let (cfg, owner) = self.configuration();
        let third_b = self.sum_b() / rat_int(3);
        if !self.is_minus_one_fibre() {
            return Ok(ContractionResult {
                c: 0,
                delta: third_b,
                final_configuration: cfg,
                flags: ContractionFlags::default(),
                contributions: vec![0; self.strings.len()],
                case: None,
            });
        }
        let mut work = cfg.clone();
        let mut flags = ContractionFlags::default();
        // Step 0: the central component.
        work.blow_down(0);
        flags.update(&work);
        let mut c: u64 = 1;
        let mut contributions = vec![0u64; self.strings.len()];
        loop {
            let mut any = false;
            for si in 0..self.strings.len() {
                while let Some(i) = work.first_contractible(|j| owner[j] == Some(si)) {
                    work.blow_down(i);
                    flags.update(&work);
                    contributions[si] += 1;
                    c += 1;
                    any = true;
                }
            }
            if !any {
                break;
            }
        }
        // c(F) is order-independent; surface any disagreement as a bug.
        let mut greedy = cfg;
        let mut c2: u64 = 0;
        while let Some(i) = greedy.first_contractible(|_| true) {
            greedy.blow_down(i);
            c2 += 1;
        }
        if c2 != c {
            return Err(FibreError::ContractionMismatch {
                round_robin: c,
                greedy: c2,
            });
        }
        let case = self.match_case(&contributions, c);
        Ok(ContractionResult {
            c,
            delta: third_b - rat_int(c as i64),
            final_configuration: work,
            flags,
            contributions,
            case,
        })
    }

    /// Diagnostic: which of the four prefix patterns the contracted parts of
    /// the two contributing strings realize (genus >= 1, c >= 2 only).
    fn match_case(&self, contributions: &[u64], c: u64) -> Option<u8> {
        if self.context_genus == 0 || c < 2 {
            return None;
        }
        let contrib: Vec<usize> = (0..self.strings.len())
            .filter(|&i| contributions[i] > 0)
            .collect();
        if contrib.is_empty() || contrib.len() > 2 {
            return None;
        }
        let prefix = |si: usize| -> Vec<u64> {
            self.eff_expansion(&self.strings[si]).terms()[..contributions[si] as usize].to_vec()
        };
        let first_term =
            |si: usize| -> u64 { self.eff_expansion(&self.strings[si]).terms()[0] };
        if contrib.len() == 1 {
            let p = prefix(contrib[0]);
            return if p.iter().all(|&b| b == 2) {
                Some(1)
            } else {
                None
            };
        }
        let (e1, e2) = match (first_term(contrib[0]), first_term(contrib[1])) {
            (2, t) if t >= 3 => (contrib[0], contrib[1]),
            (t, 2) if t >= 3 => (contrib[1], contrib[0]),
            _ => return None,
        };
        let p1 = prefix(e1);
        let p2 = prefix(e2);
        if p1.iter().all(|&b| b == 2) && p2 == vec![p1.len() as u64 + 2] {
            Some(2)
        } else if *p2.last()? != 2 {
            Some(3)
        } else {
            Some(4)
        }
    }

    pub fn delta(&self) -> Result<Rat, FibreError> {
        Ok(self.contract()?.delta)
    }
}

/// Component multiplicities along one HJ-string inside the two non-reduced
/// fibres through it: lambda from the central side of this projection, mu
/// from the opposite end.
pub fn fibre_multiplicities(
    rho: u64,
    e: &HJExpansion,
) -> Result<(Vec<u64>, Vec<u64>), FibreError> {
    let frac = hj_eval(e);
    let (n, q) = (
        frac.numer().to_u64().expect("positive"),
        frac.denom().to_u64().expect("positive"),
    );
    if rho % n != 0 {
        return Err(FibreError::IndivisibleMultiplicity { n, rho });
    }
    let b: Vec<i64> = e.terms().iter().map(|&x| x as i64).collect();
    let k = b.len();
    let rho_i = rho as i64;
    let q_prime = crate::contfrac::inverse_residue(n, q).expect("coprime") as i64;
    let mut lambda = vec![0i64; k];
    lambda[0] = rho_i * q as i64 / n as i64;
    if k >= 2 {
        lambda[1] = b[0] * lambda[0] - rho_i;
        for i in 2..k {
            lambda[i] = b[i - 1] * lambda[i - 1] - lambda[i - 2];
        }
        assert_eq!(b[k - 1] * lambda[k - 1], lambda[k - 2], "lambda terminal");
    } else {
        assert_eq!(b[0] * lambda[0], rho_i, "lambda terminal");
    }
    let mut mu = vec![0i64; k];
    mu[k - 1] = rho_i * q_prime / n as i64;
    if k >= 2 {
        mu[k - 2] = b[k - 1] * mu[k - 1] - rho_i;
        for i in (0..k.saturating_sub(2)).rev() {
            mu[i] = b[i + 1] * mu[i + 1] - mu[i + 2];
        }
        assert_eq!(b[0] * mu[0], mu[1], "mu terminal");
    } else {
        assert_eq!(b[0] * mu[0], rho_i, "mu terminal");
    }
    assert!(lambda.iter().chain(&mu).all(|&x| x >= 1), "positive system");
    Ok((
        lambda.into_iter().map(|x| x as u64).collect(),
        mu.into_iter().map(|x| x as u64).collect(),
    ))
}

/// Blow-down state: curve genera and self-intersections plus the symmetric
/// intersection matrix (zero diagonal); contracted curves stay as dead slots.
#[derive(Debug, Clone)]
pub struct CurveConfiguration {
    genus: Vec<usize>,
    self_int: Vec<i64>,
    smooth: Vec<bool>,
    alive: Vec<bool>,
    inter: Vec<Vec<i64>>,
}

impl CurveConfiguration {
    fn new(curves: &[(usize, i64)]) -> Self {
        let n = curves.len();
        CurveConfiguration {
            genus: curves.iter().map(|c| c.0).collect(),
            self_int: curves.iter().map(|c| c.1).collect(),
            smooth: vec![true; n],
            alive: vec![true; n],
            inter: vec![vec![0; n]; n],
        }
    }

    fn meet(&mut self, a: usize, b: usize, v: i64) {
        assert_ne!(a, b);
        self.inter[a][b] = v;
        self.inter[b][a] = v;
    }

    /// Surviving curves as (genus, self-intersection).
    pub fn curves(&self) -> Vec<(usize, i64)> {
        (0..self.genus.len())
            .filter(|&i| self.alive[i])
            .map(|i| (self.genus[i], self.self_int[i]))
            .collect()
    }

    /// Intersection matrix restricted to the surviving curves.
    pub fn intersection_matrix(&self) -> Vec<Vec<i64>> {
        let idx: Vec<usize> = (0..self.genus.len()).filter(|&i| self.alive[i]).collect();
        idx.iter()
            .map(|&a| idx.iter().map(|&b| self.inter[a][b]).collect())
            .collect()
    }

    fn is_contractible(&self, i: usize) -> bool {
        self.alive[i] && self.smooth[i] && self.genus[i] == 0 && self.self_int[i] == -1
    }

    fn first_contractible(&self, allow: impl Fn(usize) -> bool) -> Option<usize> {
        (0..self.genus.len()).find(|&i| allow(i) && self.is_contractible(i))
    }

    /// Contracts the exceptional curve e: A^2 += (A.E)^2 and
    /// A.B += (A.E)(B.E) for all survivors; a survivor meeting e with
    /// multiplicity >= 2 acquires a singular image.
    fn blow_down(&mut self, e: usize) {
        assert!(self.is_contractible(e), "only (-1)-curves contract");
        let rest: Vec<usize> = (0..self.genus.len())
            .filter(|&i| self.alive[i] && i != e)
            .collect();
        for &a in &rest {
            let ae = self.inter[a][e];
            if ae == 0 {
                continue;
            }
            self.self_int[a] += ae * ae;
            if ae >= 2 {
                self.smooth[a] = false;
            }
        }
        for i in 0..rest.len() {
            for j in i + 1..rest.len() {
                let (a, b) = (rest[i], rest[j]);
                let add = self.inter[a][e] * self.inter[b][e];
                if add != 0 {
                    self.inter[a][b] += add;
                    self.inter[b][a] += add;
                }
            }
        }
        self.alive[e] = false;
        for a in 0..self.genus.len() {
            self.inter[a][e] = 0;
            self.inter[e][a] = 0;
        }
    }

    /// (two (-1)-curves meet, two (-1)-curves meet with multiplicity >= 2).
    fn minus_one_meeting(&self) -> (bool, bool) {
        let ones: Vec<usize> = (0..self.genus.len())
            .filter(|&i| self.is_contractible(i))
            .collect();
        let mut meet = false;
        let mut tangent = false;
        for i in 0..ones.len() {
            for j in i + 1..ones.len() {
                let v = self.inter[ones[i]][ones[j]];
                meet |= v >= 1;
                tangent |= v >= 2;
            }
        }
        (meet, tangent)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ContractionFlags {
    /// Two (-1)-curves met after a contraction: the surface is ruled.
    pub ruled_signal: bool,
    /// They even met with multiplicity >= 2.
    pub two_tangent_minus_ones: bool,
}

impl ContractionFlags {
    fn update(&mut self, cfg: &CurveConfiguration) {
        let (meet, tangent) = cfg.minus_one_meeting();
        self.ruled_signal |= meet;
        self.two_tangent_minus_ones |= tangent;
    }
}

#[derive(Debug, Clone)]
pub struct ContractionResult {
    pub c: u64,
    pub delta: Rat,
    pub final_configuration: CurveConfiguration,
    pub flags: ContractionFlags,
    /// Curves contracted per string (the central component is counted in c).
    pub contributions: Vec<u64>,
    /// Matched prefix pattern (1..4) for genus >= 1 and c >= 2, if recognized.
    pub case: Option<u8>,
}

/// One classified (-1)-fibre type in genus g over the cyclic group Z_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifiedFibre {
    pub genus: usize,
    pub order: u64,
    /// Fractions q_i/n_i as (q, n), sorted by (n, q).
    pub fractions: Vec<(u64, u64)>,
    pub c: u64,
    pub delta: Rat,
    pub label: Option<&'static str>,
}

fn label_for(genus: usize, fractions: &[(u64, u64)]) -> Option<&'static str> {
    const TABLE: &[(usize, &[(u64, u64)], &str)] = &[
        (1, &[(1, 3), (1, 3), (1, 3)], "IV"),
        (1, &[(1, 2), (1, 4), (1, 4)], "III"),
        (1, &[(1, 2), (1, 3), (1, 6)], "II"),
        (2, &[(1, 5), (1, 5), (3, 5)], "Type 36"),
        (2, &[(1, 5), (2, 5), (2, 5)], "Type 8"),
        (2, &[(2, 3), (1, 6), (1, 6)], "Type 34"),
        (2, &[(1, 2), (1, 8), (3, 8)], "Type 1"),
        (2, &[(1, 2), (1, 5), (3, 10)], "Type 16"),
        (2, &[(1, 2), (2, 5), (1, 10)], "Irreducible"),
    ];
    TABLE
        .iter()
        .find(|(g, f, _)| *g == genus && *f == fractions)
        .map(|(_, _, l)| *l)
}

/// Multisets of divisors >= 2 of n with sum of (1 - 1/d) equal to target and
/// lcm equal to n: the admissible branching signatures.
fn signatures(n: u64, target: &Rat) -> Vec<Vec<u64>> {
    let divisors: Vec<u64> = (2..=n).filter(|d| n % d == 0).collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        divisors: &[u64],
        start: usize,
        remaining: Rat,
        n: u64,
        cur: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) {
        if remaining.is_zero() {
            if cur.iter().fold(1u64, |acc, &d| acc.lcm(&d)) == n {
                out.push(cur.clone());
            }
            return;
        }
        if remaining < rat(1, 2) {
            return;
        }
        for (i, &d) in divisors.iter().enumerate().skip(start) {
            let term = rat_int(1) - rat(1, d as i64);
            if term <= remaining {
                cur.push(d);
                rec(divisors, i, remaining.clone() - term, n, cur, out);
                cur.pop();
            }
        }
    }
    rec(&divisors, 0, target.clone(), n, &mut cur, &mut out);
    out
}

/// Brute-force check that Z_n admits a generating vector of the given
/// signature: element orders match, the sum vanishes, and the entries
/// generate.
fn admits_cyclic_vector(n: u64, sig: &[u64]) -> bool {
    fn rec(n: u64, sig: &[u64], i: usize, sum: u64, span: u64) -> bool {
        if i == sig.len() {
            return sum % n == 0 && span == 1;
        }
        for a in 1..n {
            let g = a.gcd(&n);
            if n / g != sig[i] {
                continue;
            }
            if rec(n, sig, i + 1, (sum + a) % n, span.gcd(&g)) {
                return true;
            }
        }
        false
    }
    rec(n, sig, 0, 0, n)
}

/// Coprime numerator multisets with sum q_i/n_i = 1 over the signature.
fn rotation_types(sig: &[u64]) -> BTreeSet<Vec<(u64, u64)>> {
    let mut out = BTreeSet::new();
    let mut cur = Vec::new();
    fn rec(
        sig: &[u64],
        i: usize,
        remaining: Rat,
        cur: &mut Vec<(u64, u64)>,
        out: &mut BTreeSet<Vec<(u64, u64)>>,
    ) {
        if i == sig.len() {
            if remaining.is_zero() {
                let mut t = cur.clone();
                t.sort_by_key(|&(q, n)| (n, q));
                out.insert(t);
            }
            return;
        }
        let n = sig[i];
        for q in 1..n {
            if q.gcd(&n) != 1 {
                continue;
            }
            let next = remaining.clone() - rat(q as i64, n as i64);
            if next < rat_int(0) {
                break;
            }
            cur.push((q, n));
            rec(sig, i + 1, next, cur, out);
            cur.pop();
        }
    }
    rec(sig, 0, rat_int(1), &mut cur, &mut out);
    out
}

/// All (-1)-fibre types in genus g >= 1, with c, delta and (for g = 1, 2) the
/// Kodaira/Ogg label of the minimal fibre, ordered by (n, type).
pub fn classify_minus_one_fibres(genus: usize) -> Result<Vec<ClassifiedFibre>, FibreError> {
    if genus == 0 {
        return Err(FibreError::GenusZeroClassification);
    }
    let orders: Vec<u64> = if genus == 1 {
        vec![2, 3, 4, 6]
    } else {
        (2..=4 * genus as u64 + 2).collect()
    };
    let mut rows = Vec::new();
    for n in orders {
        let target = rat_int(2) + rat(2 * genus as i64 - 2, n as i64);
        for sig in signatures(n, &target) {
            if !admits_cyclic_vector(n, &sig) {
                continue;
            }
            for fractions in rotation_types(&sig) {
                let strings: Vec<CyclicQuotientSingularity> = fractions
                    .iter()
                    .map(|&(q, d)| CyclicQuotientSingularity::new(d, q).expect("coprime"))
                    .collect();
                let fibre = ReducibleFibre::new(strings, 0, n, genus, 2, 0)?;
                debug_assert!(fibre.is_minus_one_fibre());
                let res = fibre.contract()?;
                let label = label_for(genus, &fractions);
                rows.push(ClassifiedFibre {
                    genus,
                    order: n,
                    fractions,
                    c: res.c,
                    delta: res.delta,
                    label,
                });
            }
        }
    }
    rows.sort_by(|a, b| (a.order, &a.fractions).cmp(&(b.order, &b.fractions)));
    Ok(rows)
}

/// Invariants of the relative minimal model of alpha_2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalModelInvariants {
    pub k2_hat: i64,
    pub e_hat: i64,
    pub chi: i64,
    pub total_contractions: u64,
    pub deltas: Vec<Rat>,
}

pub fn minimal_model_invariants(
    f: &StandardIsotrivialFibration,
) -> Result<MinimalModelInvariants, FibreError> {
    let inv = f
        .invariants()
        .map_err(|e| FibreError::Inconsistent(e.to_string()))?;
    let fibres = f
        .fibres_of(2)
        .map_err(|e| FibreError::Inconsistent(e.to_string()))?;
    let mut total_c = 0u64;
    let mut deltas = Vec::new();
    for fb in &fibres {
        let res = fb.contract()?;
        total_c += res.c;
        deltas.push(res.delta);
    }
    let sum_delta: Rat = deltas.iter().cloned().sum();
    let k2_hat = as_integer(&(rat_int(8 * inv.chi) - sum_delta))
        .ok_or_else(|| FibreError::Inconsistent("K^2 of the minimal model not integral".into()))?;
    if k2_hat != inv.k2 + total_c as i64 {
        return Err(FibreError::Inconsistent(
            "K^2 + total contractions cross-check failed".into(),
        ));
    }
    Ok(MinimalModelInvariants {
        k2_hat,
        e_hat: inv.e - total_c as i64,
        chi: inv.chi,
        total_contractions: total_c,
        deltas,
    })
}

/// Outcome of the K^2 <= 8 chi bound analysis for one fibration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub k2_hat: i64,
    pub eight_chi: i64,
    pub quasi_bundle: bool,
    pub equality: bool,
    /// Fibres with delta <= 2, tagged with the exception (1..3) they realize.
    pub exceptions: Vec<(usize, u8)>,
}

pub fn bound_check(f: &StandardIsotrivialFibration) -> Result<BoundReport, FibreError> {
    let mm = minimal_model_invariants(f)?;
    let fibres = f
        .fibres_of(2)
        .map_err(|e| FibreError::Inconsistent(e.to_string()))?;
    let g1 = f.g1();
    let quasi = f.singular_locus().is_empty();
    let eight_chi = 8 * mm.chi;
    if mm.k2_hat > eight_chi {
        return Err(FibreError::Inconsistent("K^2 > 8 chi".into()));
    }
    let equality = mm.k2_hat == eight_chi;
    if equality != (quasi || g1 == 0) {
        return Err(FibreError::Inconsistent(
            "equality in K^2 <= 8 chi fails its characterization".into(),
        ));
    }
    if g1 >= 1 && !quasi {
        if mm.k2_hat > eight_chi - 2 {
            return Err(FibreError::Inconsistent("K^2 > 8 chi - 2".into()));
        }
        if mm.k2_hat == eight_chi - 2 {
            let half_half = fibres.len() == 1
                && fibre_type(&fibres[0]) == [(1, 2), (1, 2)]
                && !fibres[0].is_minus_one_fibre();
            if !half_half {
                return Err(FibreError::Inconsistent(
                    "equality in K^2 <= 8 chi - 2 without a single non-(-1) (1/2,1/2) fibre"
                        .into(),
                ));
            }
        }
    }
    let mut exceptions = Vec::new();
    for (i, fb) in fibres.iter().enumerate() {
        let d = &mm.deltas[i];
        if *d < rat_int(0) {
            return Err(FibreError::Inconsistent("negative delta".into()));
        }
        if g1 == 0 {
            if !d.is_zero() || !fb.is_minus_one_fibre() {
                return Err(FibreError::Inconsistent(
                    "genus 0 fibre with nonzero delta".into(),
                ));
            }
            continue;
        }
        if *d > rat_int(2) {
            continue;
        }
        let ty = fibre_type(fb);
        let minus_one = fb.is_minus_one_fibre();
        let tag = if minus_one && ty == [(1, 2), (1, 3), (1, 6)] && *d == rat(4, 3) {
            1
        } else if minus_one && ty == [(1, 2), (1, 4), (1, 4)] && *d == rat_int(2) {
            2
        } else if !minus_one && ty == [(1, 2), (1, 2)] && *d == rat_int(2) {
            3
        } else {
            return Err(FibreError::Inconsistent(format!(
                "delta <= 2 outside the three exceptions (fibre {i})"
            )));
        };
        exceptions.push((i, tag));
    }
    Ok(BoundReport {
        k2_hat: mm.k2_hat,
        eight_chi,
        quasi_bundle: quasi,
        equality,
        exceptions,
    })
}

/// Effective (q, n) pairs of a fibre, sorted by (n, q).
fn fibre_type(f: &ReducibleFibre) -> Vec<(u64, u64)> {
    let mut t: Vec<(u64, u64)> = f
        .strings()
        .iter()
        .map(|s| (f.eff_q(s), s.n()))
        .collect();
    t.sort_by_key(|&(q, n)| (n, q));
    t
}

/// Facts used to exclude the exceptional group cases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExclusionReport {
    pub z2z6_vectors: usize,
    pub g24_order3_classes: usize,
    pub g24_order3_class_size: usize,
    pub z2z8_vectors: usize,
    pub g16_6_conjugate_fifth: bool,
    pub g32_11_candidates: usize,
    pub g96_64_candidates: usize,
    pub g32_9_aut_order: usize,
    pub g32_9_vectors: usize,
    pub g32_9_orbits: usize,
    pub g32_9_derived_order: usize,
}

fn err(msg: &str) -> FibreError {
    FibreError::Inconsistent(msg.into())
}

/// Ordered generating triples (g1, g2, g3) with the given orders and
/// g1 g2 g3 = 1.
fn triple_vectors(g: &FiniteGroup, orders: (usize, usize, usize)) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in g.elements() {
        if g.element_order(a) != orders.0 {
            continue;
        }
        for b in g.elements() {
            if g.element_order(b) != orders.1 {
                continue;
            }
            let c = g.inv(g.mul(a, b));
            if g.element_order(c) == orders.2 && g.is_generating(&[a, b]) {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// Union of the cyclic subgroups generated by all conjugates of the entries.
fn stabilizer_union(g: &FiniteGroup, v: &[usize; 3]) -> Vec<bool> {
    let mut in_s = vec![false; g.order()];
    for sigma in g.elements() {
        for &gi in v {
            let mut x = g.conj(sigma, gi);
            loop {
                in_s[x] = true;
                if x == g.identity() {
                    break;
                }
                x = g.mul(x, g.conj(sigma, gi));
            }
        }
    }
    in_s
}

/// Elements outside S all of whose nontrivial powers stay outside S: the only
/// admissible entries for further branch points of the second vector.
fn outside_candidates(g: &FiniteGroup, in_s: &[bool]) -> Vec<usize> {
    g.elements()
        .filter(|&x| {
            x != g.identity() && g.cyclic_subgroup(x).iter().all(|&p| p == g.identity() || !in_s[p])
        })
        .collect()
}

/// Reproduces every group-theoretic fact of the two exclusion lemmas.
pub fn exclusion_suite() -> Result<ExclusionReport, FibreError> {
    // (2a) Z2 x Z6 with signature (2,6,6): for every vector the complement of
    // S admits no usable entry (each one has a power back in S).
    let g26 = abelian(&[2, 6]);
    let v26 = triple_vectors(&g26, (2, 6, 6));
    if v26.is_empty() {
        return Err(err("Z2 x Z6 admits no (0|2,6,6) vector"));
    }
    for v in &v26 {
        // Abelian group: every conjugate is the element itself.
        let in_s = stabilizer_union(&g26, v);
        if !outside_candidates(&g26, &in_s).is_empty() {
            return Err(err("Z2 x Z6 exclusion fails: candidate entry found"));
        }
    }
    // Canonical vector x, x y^-1, y: complement is exactly {x y^2, x y^4}.
    {
        let (x, y) = (g26.generators()[0], g26.generators()[1]);
        let v = [x, g26.mul(x, g26.inv(y)), y];
        let in_s = stabilizer_union(&g26, &v);
        let complement: Vec<usize> = g26.elements().filter(|&e| !in_s[e]).collect();
        let expected = {
            let mut w = vec![
                g26.mul(x, g26.pow(y, 2)),
                g26.mul(x, g26.pow(y, 4)),
            ];
            w.sort_unstable();
            w
        };
        if complement != expected {
            return Err(err("Z2 x Z6 complement is not {xy^2, xy^4}"));
        }
        if complement.iter().any(|&e| !in_s[g26.mul(e, e)]) {
            return Err(err("Z2 x Z6: a complement square escapes S"));
        }
    }
    // (2b) G(24,8): a single conjugacy class of order-3 elements, of size 2.
    let g24 = g24_8();
    let order3: Vec<&Vec<usize>> = g24
        .conjugacy_classes()
        .iter()
        .filter(|cl| g24.element_order(cl[0]) == 3)
        .collect();
    if order3.len() != 1 || order3[0].len() != 2 {
        return Err(err("G(24,8) order-3 class structure mismatch"));
    }
    let w = order3[0][0];
    if !g24.are_conjugate(w, g24.inv(w)) || g24.centralizer(w).len() != 12 {
        return Err(err("G(24,8) order-3 centralizer mismatch"));
    }
    // (a) Z2 x Z8 with signature (2,8,8): for every vector, the usable
    // complement entries generate a subgroup with no element of order 8,
    // leaving no way to close the relation.
    let g28 = abelian(&[2, 8]);
    let v28 = triple_vectors(&g28, (2, 8, 8));
    if v28.is_empty() {
        return Err(err("Z2 x Z8 admits no (0|2,8,8) vector"));
    }
    for v in &v28 {
        let in_s = stabilizer_union(&g28, v);
        let cands = outside_candidates(&g28, &in_s);
        let span = g28.subgroup_generated(&cands);
        if span.iter().any(|&e| g28.element_order(e) == 8) {
            return Err(err("Z2 x Z8 exclusion fails: order-8 element reachable"));
        }
    }
    {
        let (x, y) = (g28.generators()[0], g28.generators()[1]);
        let v = [x, g28.mul(x, g28.inv(y)), y];
        let in_s = stabilizer_union(&g28, &v);
        let complement: Vec<usize> = g28.elements().filter(|&e| !in_s[e]).collect();
        let expected = {
            let mut w: Vec<usize> = [2, 4, 6]
                .iter()
                .map(|&k| g28.mul(x, g28.pow(y, k)))
                .collect();
            w.sort_unstable();
            w
        };
        if complement != expected {
            return Err(err("Z2 x Z8 complement is not {xy^2, xy^4, xy^6}"));
        }
        let xy4 = g28.mul(x, g28.pow(y, 4));
        if outside_candidates(&g28, &in_s) != vec![xy4] {
            return Err(err("Z2 x Z8 candidate set is not {xy^4}"));
        }
        if g28.subgroup_generated(&[xy4]).contains(&y) {
            return Err(err("Z2 x Z8: y lies in <xy^4>"));
        }
    }
    // (b), (d), (e): every order-8 element is conjugate to its 5th power in
    // G(16,6) and in every candidate for G(32,11) and G(96,64).
    let conj5 = |g: &FiniteGroup| {
        let profile = power_conjugacy_profile(g, 8);
        !profile.is_empty() && profile.iter().all(|(_, js)| js.contains(&5))
    };
    let g16 = d_2_8_5();
    if !conj5(&g16) {
        return Err(err("G(16,6) has an order-8 element not conjugate to its 5th power"));
    }
    let c32 = g32_11_candidates();
    let c96 = g96_64_candidates();
    if c32.is_empty() || c96.is_empty() {
        return Err(err("candidate searches came back empty"));
    }
    if !c32.iter().all(conj5) || !c96.iter().all(conj5) {
        return Err(err("a candidate group satisfies condition (*)"));
    }
    // (c) G(32,9): |Aut| = 64, exactly 64 vectors of type (0|2,4,8) in a
    // single Aut-orbit, [G,G] = <y z^2> of order 4, and z outside <x,y,z^2>.
    let g32 = g32_9();
    let autos = g32
        .automorphism_group()
        .map_err(|e| FibreError::Inconsistent(e.to_string()))?;
    if autos.len() != 64 {
        return Err(err("Aut(G(32,9)) does not have order 64"));
    }
    let vectors = triple_vectors(&g32, (2, 4, 8));
    if vectors.len() != 64 {
        return Err(err("G(32,9) does not have exactly 64 (0|2,4,8) vectors"));
    }
    let mut orbits = 0usize;
    let mut seen: BTreeSet<[usize; 3]> = BTreeSet::new();
    for v in &vectors {
        if seen.contains(v) {
            continue;
        }
        orbits += 1;
        for phi in &autos {
            seen.insert([phi[v[0]], phi[v[1]], phi[v[2]]]);
        }
    }
    if orbits != 1 || seen.len() != vectors.len() {
        return Err(err("G(32,9) vectors do not form a single Aut-orbit"));
    }
    let (x, y, z) = (
        g32.generators()[0],
        g32.generators()[1],
        g32.generators()[2],
    );
    let derived = g32.derived_subgroup();
    let yz2 = g32.mul(y, g32.pow(z, 2));
    let mut yz2_span = g32.cyclic_subgroup(yz2);
    yz2_span.sort_unstable();
    if derived.len() != 4 || derived != yz2_span {
        return Err(err("[G(32,9), G(32,9)] is not <y z^2> of order 4"));
    }
    let h = g32.subgroup_generated(&[x, y, g32.pow(z, 2)]);
    if h.contains(&z) {
        return Err(err("z lies in <x, y, z^2>"));
    }
    // The 7-element complement of the proof lies inside <x, y, z^2>.
    let canon = [x, g32.mul(x, g32.inv(z)), z];
    if g32.mul(g32.mul(canon[0], canon[1]), canon[2]) != g32.identity() {
        return Err(err("canonical G(32,9) vector does not close"));
    }
    if g32.element_order(canon[1]) != 4 || g32.element_order(canon[2]) != 8 {
        return Err(err("canonical G(32,9) vector has wrong orders"));
    }
    let in_s = stabilizer_union(&g32, &canon);
    let complement: Vec<usize> = g32
        .elements()
        .filter(|&e| e != g32.identity() && !in_s[e])
        .collect();
    if complement.len() != 7 || complement.iter().any(|e| !h.contains(e)) {
        return Err(err("G(32,9) complement is not the 7 elements of <x,y,z^2>"));
    }
    Ok(ExclusionReport {
        z2z6_vectors: v26.len(),
        g24_order3_classes: 1,
        g24_order3_class_size: 2,
        z2z8_vectors: v28.len(),
        g16_6_conjugate_fifth: true,
        g32_11_candidates: c32.len(),
        g96_64_candidates: c96.len(),
        g32_9_aut_order: autos.len(),
        g32_9_vectors: vectors.len(),
        g32_9_orbits: orbits,
        g32_9_derived_order: derived.len(),
    })
}
