//! Embedded golden data: the published singularity table (2 <= n <= 14), the
//! low-genus (-1)-fibre tables with c and delta, and the worked-example
//! invariants. The verification suite is data-driven from these tables so the
//! reference values are auditable in one place.

/// One published singularity row: expansion, inverse residue, B and h as
/// reduced fractions (numerator, denominator).
#[derive(Debug, Clone, Copy)]
pub struct GoldenSingularity {
    pub n: u64,
    pub q: u64,
    pub expansion: &'static [u64],
    pub q_prime: u64,
    pub b: (i64, i64),
    pub h: (i64, i64),
}

/// The published table is not exhaustive for n >= 10: it lists one
/// representative family, e.g. omitting (10,7) and (10,9).
pub const SINGULARITY_TABLE: &[GoldenSingularity] = &[
    GoldenSingularity { n: 2, q: 1, expansion: &[2], q_prime: 1, b: (3, 1), h: (0, 1) },
    GoldenSingularity { n: 3, q: 1, expansion: &[3], q_prime: 1, b: (11, 3), h: (-1, 3) },
    GoldenSingularity { n: 3, q: 2, expansion: &[2, 2], q_prime: 2, b: (16, 3), h: (0, 1) },
    GoldenSingularity { n: 4, q: 1, expansion: &[4], q_prime: 1, b: (9, 2), h: (-1, 1) },
    GoldenSingularity { n: 4, q: 3, expansion: &[2, 2, 2], q_prime: 3, b: (15, 2), h: (0, 1) },
    GoldenSingularity { n: 5, q: 1, expansion: &[5], q_prime: 1, b: (27, 5), h: (-9, 5) },
    GoldenSingularity { n: 5, q: 2, expansion: &[3, 2], q_prime: 3, b: (6, 1), h: (-2, 5) },
    GoldenSingularity { n: 5, q: 4, expansion: &[2, 2, 2, 2], q_prime: 4, b: (48, 5), h: (0, 1) },
    GoldenSingularity { n: 6, q: 1, expansion: &[6], q_prime: 1, b: (19, 3), h: (-8, 3) },
    GoldenSingularity { n: 6, q: 5, expansion: &[2, 2, 2, 2, 2], q_prime: 5, b: (35, 3), h: (0, 1) },
    GoldenSingularity { n: 7, q: 1, expansion: &[7], q_prime: 1, b: (51, 7), h: (-25, 7) },
    GoldenSingularity { n: 7, q: 2, expansion: &[4, 2], q_prime: 4, b: (48, 7), h: (-8, 7) },
    GoldenSingularity { n: 7, q: 3, expansion: &[3, 2, 2], q_prime: 5, b: (57, 7), h: (-3, 7) },
    GoldenSingularity { n: 7, q: 6, expansion: &[2, 2, 2, 2, 2, 2], q_prime: 6, b: (96, 7), h: (0, 1) },
    GoldenSingularity { n: 8, q: 1, expansion: &[8], q_prime: 1, b: (33, 4), h: (-9, 2) },
    GoldenSingularity { n: 8, q: 3, expansion: &[3, 3], q_prime: 3, b: (27, 4), h: (-1, 1) },
    GoldenSingularity { n: 8, q: 5, expansion: &[2, 3, 2], q_prime: 5, b: (33, 4), h: (-1, 2) },
    GoldenSingularity { n: 8, q: 7, expansion: &[2, 2, 2, 2, 2, 2, 2], q_prime: 7, b: (63, 4), h: (0, 1) },
    GoldenSingularity { n: 9, q: 1, expansion: &[9], q_prime: 1, b: (83, 9), h: (-49, 9) },
    GoldenSingularity { n: 9, q: 2, expansion: &[5, 2], q_prime: 5, b: (70, 9), h: (-2, 1) },
    GoldenSingularity { n: 9, q: 4, expansion: &[3, 2, 2, 2], q_prime: 7, b: (92, 9), h: (-4, 9) },
    GoldenSingularity { n: 9, q: 8, expansion: &[2, 2, 2, 2, 2, 2, 2, 2], q_prime: 8, b: (160, 9), h: (0, 1) },
    GoldenSingularity { n: 10, q: 1, expansion: &[10], q_prime: 1, b: (51, 5), h: (-32, 5) },
    GoldenSingularity { n: 10, q: 3, expansion: &[4, 2, 2], q_prime: 7, b: (9, 1), h: (-6, 5) },
    GoldenSingularity { n: 11, q: 1, expansion: &[11], q_prime: 1, b: (123, 11), h: (-81, 11) },
    GoldenSingularity { n: 11, q: 2, expansion: &[6, 2], q_prime: 6, b: (96, 11), h: (-32, 11) },
    GoldenSingularity { n: 11, q: 3, expansion: &[4, 3], q_prime: 4, b: (84, 11), h: (-20, 11) },
    GoldenSingularity { n: 11, q: 5, expansion: &[3, 2, 2, 2, 2], q_prime: 9, b: (135, 11), h: (-5, 11) },
    GoldenSingularity { n: 11, q: 7, expansion: &[2, 3, 2, 2], q_prime: 8, b: (114, 11), h: (-6, 11) },
    GoldenSingularity { n: 12, q: 1, expansion: &[12], q_prime: 1, b: (73, 6), h: (-25, 3) },
    GoldenSingularity { n: 12, q: 5, expansion: &[3, 2, 3], q_prime: 5, b: (53, 6), h: (-1, 1) },
    GoldenSingularity { n: 12, q: 7, expansion: &[2, 4, 2], q_prime: 7, b: (55, 6), h: (-4, 3) },
    GoldenSingularity { n: 13, q: 1, expansion: &[13], q_prime: 1, b: (171, 13), h: (-121, 13) },
    GoldenSingularity { n: 13, q: 2, expansion: &[7, 2], q_prime: 7, b: (126, 13), h: (-50, 13) },
    GoldenSingularity { n: 13, q: 3, expansion: &[5, 2, 2], q_prime: 9, b: (129, 13), h: (-27, 13) },
    GoldenSingularity { n: 13, q: 4, expansion: &[4, 2, 2, 2], q_prime: 10, b: (144, 13), h: (-16, 13) },
    GoldenSingularity { n: 13, q: 5, expansion: &[3, 3, 2], q_prime: 8, b: (9, 1), h: (-15, 13) },
    GoldenSingularity { n: 13, q: 6, expansion: &[3, 2, 2, 2, 2, 2], q_prime: 11, b: (186, 13), h: (-6, 13) },
    GoldenSingularity { n: 14, q: 1, expansion: &[14], q_prime: 1, b: (99, 7), h: (-72, 7) },
    GoldenSingularity { n: 14, q: 3, expansion: &[5, 3], q_prime: 5, b: (60, 7), h: (-19, 7) },
    GoldenSingularity { n: 14, q: 9, expansion: &[2, 3, 2, 2, 2], q_prime: 11, b: (87, 7), h: (-4, 7) },
];

/// One published (-1)-fibre type: fractions (q, n) sorted by (n, q), the
/// contraction count c, delta as a reduced fraction, and the label of the
/// minimal fibre where one is given.
#[derive(Debug, Clone, Copy)]
pub struct GoldenFibre {
    pub genus: usize,
    pub order: u64,
    pub fractions: &'static [(u64, u64)],
    pub c: u64,
    pub delta: (i64, i64),
    pub label: Option<&'static str>,
}

pub const FIBRE_TABLE: &[GoldenFibre] = &[
    // Genus 1: exactly three types.
    GoldenFibre { genus: 1, order: 3, fractions: &[(1, 3), (1, 3), (1, 3)], c: 1, delta: (8, 3), label: Some("IV") },
    GoldenFibre { genus: 1, order: 4, fractions: &[(1, 2), (1, 4), (1, 4)], c: 2, delta: (2, 1), label: Some("III") },
    GoldenFibre { genus: 1, order: 6, fractions: &[(1, 2), (1, 3), (1, 6)], c: 3, delta: (4, 3), label: Some("II") },
    // Genus 2: exactly six types.
    GoldenFibre { genus: 2, order: 5, fractions: &[(1, 5), (1, 5), (3, 5)], c: 2, delta: (18, 5), label: Some("Type 36") },
    GoldenFibre { genus: 2, order: 5, fractions: &[(1, 5), (2, 5), (2, 5)], c: 1, delta: (24, 5), label: Some("Type 8") },
    GoldenFibre { genus: 2, order: 6, fractions: &[(2, 3), (1, 6), (1, 6)], c: 3, delta: (3, 1), label: Some("Type 34") },
    GoldenFibre { genus: 2, order: 8, fractions: &[(1, 2), (1, 8), (3, 8)], c: 3, delta: (3, 1), label: Some("Type 1") },
    GoldenFibre { genus: 2, order: 10, fractions: &[(1, 2), (1, 5), (3, 10)], c: 2, delta: (19, 5), label: Some("Type 16") },
    GoldenFibre { genus: 2, order: 10, fractions: &[(1, 2), (2, 5), (1, 10)], c: 4, delta: (12, 5), label: Some("Irreducible") },
    // Genus 3: precisely 17 types.
    GoldenFibre { genus: 3, order: 4, fractions: &[(1, 4), (1, 4), (1, 4), (1, 4)], c: 1, delta: (5, 1), label: None },
    GoldenFibre { genus: 3, order: 7, fractions: &[(1, 7), (1, 7), (5, 7)], c: 3, delta: (32, 7), label: None },
    GoldenFibre { genus: 3, order: 7, fractions: &[(1, 7), (2, 7), (4, 7)], c: 2, delta: (5, 1), label: None },
    GoldenFibre { genus: 3, order: 7, fractions: &[(1, 7), (3, 7), (3, 7)], c: 1, delta: (48, 7), label: None },
    GoldenFibre { genus: 3, order: 7, fractions: &[(2, 7), (2, 7), (3, 7)], c: 1, delta: (44, 7), label: None },
    GoldenFibre { genus: 3, order: 8, fractions: &[(1, 4), (1, 8), (5, 8)], c: 2, delta: (5, 1), label: None },
    GoldenFibre { genus: 3, order: 8, fractions: &[(1, 4), (3, 8), (3, 8)], c: 1, delta: (5, 1), label: None },
    GoldenFibre { genus: 3, order: 8, fractions: &[(3, 4), (1, 8), (1, 8)], c: 4, delta: (4, 1), label: None },
    GoldenFibre { genus: 3, order: 9, fractions: &[(1, 3), (1, 9), (5, 9)], c: 3, delta: (35, 9), label: None },
    GoldenFibre { genus: 3, order: 9, fractions: &[(1, 3), (2, 9), (4, 9)], c: 1, delta: (56, 9), label: None },
    GoldenFibre { genus: 3, order: 9, fractions: &[(2, 3), (1, 9), (2, 9)], c: 3, delta: (40, 9), label: None },
    GoldenFibre { genus: 3, order: 12, fractions: &[(1, 2), (1, 12), (5, 12)], c: 4, delta: (4, 1), label: None },
    GoldenFibre { genus: 3, order: 12, fractions: &[(1, 3), (1, 4), (5, 12)], c: 1, delta: (14, 3), label: None },
    GoldenFibre { genus: 3, order: 12, fractions: &[(2, 3), (1, 4), (1, 12)], c: 4, delta: (10, 3), label: None },
    GoldenFibre { genus: 3, order: 14, fractions: &[(1, 2), (1, 7), (5, 14)], c: 3, delta: (23, 7), label: None },
    GoldenFibre { genus: 3, order: 14, fractions: &[(1, 2), (2, 7), (3, 14)], c: 2, delta: (29, 7), label: None },
    GoldenFibre { genus: 3, order: 14, fractions: &[(1, 2), (3, 7), (1, 14)], c: 5, delta: (24, 7), label: None },
];

/// Expected row counts of the (-1)-fibre classification per fibre genus.
pub const FIBRE_COUNTS: &[(usize, usize)] = &[(1, 3), (2, 6), (3, 17)];

/// Invariants of a worked example, before and after passing to the relative
/// minimal model.
#[derive(Debug, Clone, Copy)]
pub struct GoldenExample {
    pub name: &'static str,
    pub k2: i64,
    pub e: i64,
    pub q: usize,
    pub pg: i64,
    pub chi: i64,
    pub k2_hat: i64,
    pub e_hat: i64,
}

/// PSL(2,7) acting on two copies of the Klein quartic via a (0|2,3,7) vector.
pub const PSL27_EXAMPLE: GoldenExample = GoldenExample {
    name: "psl2-7",
    k2: -6,
    e: 18,
    q: 0,
    pg: 0,
    chi: 1,
    k2_hat: -4,
    e_hat: 16,
};

/// Z_2 acting on two genus-2 curves, producing 12 nodes; already relatively
/// minimal, so the hatted invariants coincide.
pub const Z2_NODES_EXAMPLE: GoldenExample = GoldenExample {
    name: "z2-12-nodes",
    k2: 4,
    e: 20,
    q: 1,
    pg: 2,
    chi: 2,
    k2_hat: 4,
    e_hat: 20,
};
