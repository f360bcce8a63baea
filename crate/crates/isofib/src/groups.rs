//! A small finite-group engine: element tables, conjugacy, normalizers,
//! centralizers, subgroup generation, cosets, derived subgroups, bounded
//! automorphism groups, and constructors for cyclic, abelian, permutation,
//! semidirect-product and presented groups plus a registry of named groups.

use std::collections::HashMap;
use std::sync::Arc;
use thiserror::Error;

/// Hard cap on materialized group order.
pub const MAX_ORDER: usize = 10_000;
/// Orders up to this get a full multiplication table and eager axiom checks.
const TABLE_LIMIT: usize = 2_000;
/// Default bound for automorphism-group computation.
pub const AUT_BOUND: usize = 64;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum GroupError {
    #[error("group order exceeds the cap of {MAX_ORDER} elements")]
    TooLarge,
    #[error("invalid permutation generator: {0}")]
    BadPermutation(String),
    #[error("unsupported presentation: {0}")]
    BadPresentation(String),
    #[error("automorphism computation is limited to order <= {AUT_BOUND} (group has {0})")]
    AutBoundExceeded(usize),
    #[error("unknown registry entry G({0},{1})")]
    UnknownRegistryEntry(usize, usize),
    #[error("invalid group specification: {0}")]
    BadSpec(String),
}

/// A permutation of {0..degree-1}, stored as the image vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<u16>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u16).collect())
    }

    pub fn compose(&self, other: &Perm) -> Perm {
        // (self * other)(x) = self(other(x)): apply other first.
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        Perm(inv)
    }

    pub fn is_valid(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        self.0.iter().all(|&x| {
            let ok = (x as usize) < seen.len() && !seen[x as usize];
            if ok {
                seen[x as usize] = true;
            }
            ok
        })
    }
}

enum Backend {
    /// Flattened order x order multiplication table.
    Table(Vec<u16>),
    /// Permutation images with an index lookup, for orders above TABLE_LIMIT.
    Perms(Vec<Perm>, HashMap<Perm, usize>),
}

/// A finite group materialized as an indexed element set; index 0 is the identity.
pub struct FiniteGroup {
    name: String,
    order: usize,
    backend: Backend,
    inv: Vec<u32>,
    order_of: Vec<usize>,
    gens: Vec<usize>,
    gen_names: Vec<String>,
    classes: std::sync::OnceLock<(Vec<Vec<usize>>, Vec<usize>)>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

impl FiniteGroup {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.backend {
            Backend::Table(t) => t[a * self.order + b] as usize,
            Backend::Perms(ps, idx) => idx[&ps[a].compose(&ps[b])],
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        // g x g^-1
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.order_of[a]
    }

    pub fn pow(&self, a: usize, e: i64) -> usize {
        let m = self.order_of[a] as i64;
        let mut e = e.rem_euclid(m);
        let mut acc = 0;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn generator_names(&self) -> &[String] {
        &self.gen_names
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order
    }

    fn classes_data(&self) -> &(Vec<Vec<usize>>, Vec<usize>) {
        self.classes.get_or_init(|| {
            let mut class_of = vec![usize::MAX; self.order];
            let mut classes = Vec::new();
            for x in 0..self.order {
                if class_of[x] != usize::MAX {
                    continue;
                }
                let id = classes.len();
                let mut cls = Vec::new();
                for g in 0..self.order {
                    let y = self.conj(g, x);
                    if class_of[y] == usize::MAX {
                        class_of[y] = id;
                        cls.push(y);
                    }
                }
                cls.sort_unstable();
                classes.push(cls);
            }
            (classes, class_of)
        })
    }

    /// Conjugacy classes as sorted element lists; deterministic order by
    /// minimal element index.
    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        &self.classes_data().0
    }

    pub fn class_of(&self, x: usize) -> &[usize] {
        let (classes, class_of) = self.classes_data();
        &classes[class_of[x]]
    }

    pub fn are_conjugate(&self, x: usize, y: usize) -> bool {
        let (_, class_of) = self.classes_data();
        class_of[x] == class_of[y]
    }

    /// Closure of the given elements under multiplication and inverse.
    pub fn subgroup_generated(&self, elements: &[usize]) -> Vec<usize> {
        let mut in_sub = vec![false; self.order];
        in_sub[0] = true;
        let mut frontier = vec![0usize];
        let mut members = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in elements {
                for y in [self.mul(x, g), self.mul(x, self.inv(g))] {
                    if !in_sub[y] {
                        in_sub[y] = true;
                        frontier.push(y);
                        members.push(y);
                    }
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// Cyclic subgroup generated by one element.
    pub fn cyclic_subgroup(&self, g: usize) -> Vec<usize> {
        let mut members = vec![0usize];
        let mut x = g;
        while x != 0 {
            members.push(x);
            x = self.mul(x, g);
        }
        members.sort_unstable();
        members
    }

    pub fn is_generating(&self, elements: &[usize]) -> bool {
        self.subgroup_generated(elements).len() == self.order
    }

    /// N_G(H) = { g : gHg^-1 = H } for a subgroup given as a sorted element list.
    pub fn normalizer(&self, h: &[usize]) -> Vec<usize> {
        (0..self.order)
            .filter(|&g| {
                let mut img: Vec<usize> = h.iter().map(|&x| self.conj(g, x)).collect();
                img.sort_unstable();
                img == h
            })
            .collect()
    }

    /// C_G(h) = { g : gh = hg }.
    pub fn centralizer(&self, h: usize) -> Vec<usize> {
        (0..self.order)
            .filter(|&g| self.mul(g, h) == self.mul(h, g))
            .collect()
    }

    /// Subgroup generated by all commutators.
    pub fn derived_subgroup(&self) -> Vec<usize> {
        let mut comms = Vec::new();
        for a in 0..self.order {
            for b in 0..self.order {
                comms.push(self.mul(
                    self.mul(a, b),
                    self.mul(self.inv(a), self.inv(b)),
                ));
            }
        }
        comms.sort_unstable();
        comms.dedup();
        self.subgroup_generated(&comms)
    }

    /// Left cosets of a subgroup, each sorted, listed by minimal representative.
    pub fn left_cosets(&self, h: &[usize]) -> Vec<Vec<usize>> {
        assert!(self.order % h.len() == 0, "not a subgroup");
        let mut seen = vec![false; self.order];
        let mut cosets = Vec::new();
        for g in 0..self.order {
            if seen[g] {
                continue;
            }
            let mut coset: Vec<usize> = h.iter().map(|&x| self.mul(g, x)).collect();
            coset.sort_unstable();
            for &y in &coset {
                assert!(!seen[y], "coset overlap: not a subgroup");
                seen[y] = true;
            }
            cosets.push(coset);
        }
        cosets
    }

    /// Whether the subgroups generated by a and b are conjugate in G.
    pub fn subgroups_conjugate(&self, a: &[usize], b: &[usize]) -> bool {
        if a.len() != b.len() {
            return false;
        }
        (0..self.order).any(|g| {
            let mut img: Vec<usize> = a.iter().map(|&x| self.conj(g, x)).collect();
            img.sort_unstable();
            img == b
        })
    }

    /// All automorphisms as element permutations; brute force over images of
    /// the stored generating set, bounded by AUT_BOUND.
    pub fn automorphism_group(&self) -> Result<Vec<Vec<usize>>, GroupError> {
        if self.order > AUT_BOUND {
            return Err(GroupError::AutBoundExceeded(self.order));
        }
        // Word DAG: each element as parent * generator, found by BFS.
        let gens = self.gens.clone();
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.order];
        let mut bfs_order = vec![0usize];
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut head = 0;
        while head < bfs_order.len() {
            let x = bfs_order[head];
            head += 1;
            for (gi, &g) in gens.iter().enumerate() {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((x, gi));
                    bfs_order.push(y);
                }
            }
        }
        assert!(bfs_order.len() == self.order, "generators do not generate");

        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| {
                (0..self.order)
                    .filter(|&x| self.order_of[x] == self.order_of[g])
                    .collect()
            })
            .collect();
        let mut autos = Vec::new();
        let mut images = vec![0usize; gens.len()];
        self.search_autos(&gens, &candidates, &parent, &bfs_order, &mut images, 0, &mut autos);
        Ok(autos)
    }

    #[allow(clippy::too_many_arguments)]
    fn search_autos(
        &self,
        gens: &[usize],
        candidates: &[Vec<usize>],
        parent: &[Option<(usize, usize)>],
        bfs_order: &[usize],
        images: &mut Vec<usize>,
        depth: usize,
        autos: &mut Vec<Vec<usize>>,
    ) {
        if depth < gens.len() {
            let cands = candidates[depth].clone();
            for c in cands {
                images[depth] = c;
                self.search_autos(gens, candidates, parent, bfs_order, images, depth + 1, autos);
            }
            return;
        }
        // Extend generator images along the word DAG.
        let mut phi = vec![usize::MAX; self.order];
        phi[0] = 0;
        for &x in bfs_order.iter().skip(1) {
            let (p, gi) = parent[x].unwrap();
            phi[x] = self.mul(phi[p], images[gi]);
        }
        // Homomorphism check on generator columns suffices given the DAG extension.
        for x in 0..self.order {
            for (gi, &g) in gens.iter().enumerate() {
                if phi[self.mul(x, g)] != self.mul(phi[x], images[gi]) {
                    return;
                }
            }
        }
        // Bijectivity.
        let mut seen = vec![false; self.order];
        for &y in &phi {
            if seen[y] {
                return;
            }
            seen[y] = true;
        }
        autos.push(phi);
    }
}

fn orders_from_table(order: usize, mul: impl Fn(usize, usize) -> usize) -> Vec<usize> {
    (0..order)
        .map(|a| {
            let mut k = 1;
            let mut x = a;
            while x != 0 {
                x = mul(x, a);
                k += 1;
            }
            k
        })
        .collect()
}

fn inverses_from_table(order: usize, mul: impl Fn(usize, usize) -> usize) -> Vec<u32> {
    let mut inv = vec![u32::MAX; order];
    for a in 0..order {
        for b in 0..order {
            if mul(a, b) == 0 {
                inv[a] = b as u32;
                break;
            }
        }
        assert!(inv[a] != u32::MAX, "element without inverse");
    }
    inv
}

/// Verifies the group axioms on a table backend: identity, inverses, and
/// associativity by Light's test (a(gc) = (ag)c for generators g), which is
/// sufficient when the generators generate.
fn verify_table_axioms(order: usize, table: &[u16], gens: &[usize]) {
    assert!(order <= TABLE_LIMIT);
    let mul = |a: usize, b: usize| table[a * order + b] as usize;
    for a in 0..order {
        assert_eq!(mul(0, a), a, "identity fails on the left");
        assert_eq!(mul(a, 0), a, "identity fails on the right");
        assert!(table[a * order..(a + 1) * order]
            .iter()
            .all(|&x| (x as usize) < order));
    }
    for &g in gens {
        for a in 0..order {
            let ag = mul(a, g);
            for c in 0..order {
                assert_eq!(mul(ag, c), mul(a, mul(g, c)), "associativity fails");
            }
        }
    }
}

fn build_from_table(
    name: String,
    order: usize,
    table: Vec<u16>,
    gens: Vec<usize>,
    gen_names: Vec<String>,
) -> FiniteGroup {
    verify_table_axioms(order, &table, &gens);
    let mul = |a: usize, b: usize| table[a * order + b] as usize;
    let inv = inverses_from_table(order, mul);
    let order_of = orders_from_table(order, mul);
    let g = FiniteGroup {
        name,
        order,
        backend: Backend::Table(table),
        inv,
        order_of,
        gens,
        gen_names,
        classes: std::sync::OnceLock::new(),
    };
    assert!(g.is_generating(&g.gens.clone()) || g.order == 1);
    // Eager class computation for table-backed groups.
    g.classes_data();
    g
}

/// The cyclic group Z_n with generator x (the class of 1).
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1 && n <= TABLE_LIMIT);
    let mut table = vec![0u16; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = ((a + b) % n) as u16;
        }
    }
    let (gens, gen_names) = if n == 1 {
        (vec![], vec![])
    } else {
        (vec![1], vec!["x".to_string()])
    };
    build_from_table(format!("Z{n}"), n, table, gens, gen_names)
}

const GEN_LETTERS: [&str; 8] = ["x", "y", "z", "w", "u", "v", "s", "t"];

/// Direct product of cyclic groups of the given orders, mixed-radix indexed.
pub fn abelian(orders: &[usize]) -> FiniteGroup {
    assert!(!orders.is_empty() && orders.iter().all(|&o| o >= 2));
    let n: usize = orders.iter().product();
    assert!(n <= TABLE_LIMIT);
    let decode = |mut i: usize| -> Vec<usize> {
        let mut v = vec![0; orders.len()];
        for (j, &o) in orders.iter().enumerate().rev() {
            v[j] = i % o;
            i /= o;
        }
        v
    };
    let encode = |v: &[usize]| -> usize {
        v.iter()
            .zip(orders)
            .fold(0, |acc, (&d, &o)| acc * o + d)
    };
    let mut table = vec![0u16; n * n];
    for a in 0..n {
        let va = decode(a);
        for b in 0..n {
            let vb = decode(b);
            let s: Vec<usize> = va
                .iter()
                .zip(&vb)
                .zip(orders)
                .map(|((&x, &y), &o)| (x + y) % o)
                .collect();
            table[a * n + b] = encode(&s) as u16;
        }
    }
    let mut gens = Vec::new();
    for j in 0..orders.len() {
        let mut v = vec![0; orders.len()];
        v[j] = 1;
        gens.push(encode(&v));
    }
    let gen_names = (0..orders.len())
        .map(|j| GEN_LETTERS[j % GEN_LETTERS.len()].to_string())
        .collect();
    let name = format!(
        "Z{}",
        orders
            .iter()
            .map(|o| o.to_string())
            .collect::<Vec<_>>()
            .join("xZ")
    );
    build_from_table(name, n, table, gens, gen_names)
}

/// Group generated by explicit permutations, enumerated by BFS closure.
pub fn from_permutations(
    degree: usize,
    gen_perms: &[Perm],
    name: &str,
) -> Result<FiniteGroup, GroupError> {
    for p in gen_perms {
        if p.0.len() != degree || !p.is_valid() {
            return Err(GroupError::BadPermutation(format!("{:?}", p.0)));
        }
    }
    let id = Perm::identity(degree);
    let mut index: HashMap<Perm, usize> = HashMap::new();
    index.insert(id.clone(), 0);
    let mut elems = vec![id];
    let mut head = 0;
    while head < elems.len() {
        let x = elems[head].clone();
        head += 1;
        for g in gen_perms {
            let y = x.compose(g);
            if !index.contains_key(&y) {
                if elems.len() >= MAX_ORDER {
                    return Err(GroupError::TooLarge);
                }
                index.insert(y.clone(), elems.len());
                elems.push(y);
            }
        }
    }
    let order = elems.len();
    let gens: Vec<usize> = gen_perms.iter().map(|p| index[p]).collect();
    let gen_names: Vec<String> = (0..gens.len())
        .map(|i| {
            // a, b, c, ... for permutation generators.
            char::from(b'a' + (i % 26) as u8).to_string()
        })
        .collect();
    if order <= TABLE_LIMIT {
        let mut table = vec![0u16; order * order];
        for a in 0..order {
            for b in 0..order {
                table[a * order + b] = index[&elems[a].compose(&elems[b])] as u16;
            }
        }
        Ok(build_from_table(name.to_string(), order, table, gens, gen_names))
    } else {
        let mul = |a: usize, b: usize| index[&elems[a].compose(&elems[b])];
        let inv = inverses_from_table(order, mul);
        let order_of = orders_from_table(order, mul);
        Ok(FiniteGroup {
            name: name.to_string(),
            order,
            backend: Backend::Perms(elems, index),
            inv,
            order_of,
            gens,
            gen_names,
            classes: std::sync::OnceLock::new(),
        })
    }
}

/// PSL(2, F_p) acting on the projective line {0..p-1, infinity=p} via
/// z -> z+1 (generator a) and z -> -1/z (generator b).
pub fn psl2(p: usize) -> Result<FiniteGroup, GroupError> {
    let is_prime = p >= 2 && (2..p).all(|d| d * d > p || p % d != 0);
    if !is_prime {
        return Err(GroupError::BadSpec(format!("psl2 parameter {p} is not prime")));
    }
    let degree = p + 1;
    let inf = p;
    let inv_mod = |x: usize| -> usize {
        (1..p).find(|&y| (x * y) % p == 1).expect("unit inverse")
    };
    let translate = Perm(
        (0..degree)
            .map(|z| if z == inf { inf as u16 } else { ((z + 1) % p) as u16 })
            .collect(),
    );
    let invert = Perm(
        (0..degree)
            .map(|z| {
                if z == inf {
                    0u16
                } else if z == 0 {
                    inf as u16
                } else {
                    ((p - inv_mod(z)) % p) as u16
                }
            })
            .collect(),
    );
    let g = from_permutations(degree, &[translate, invert], &format!("PSL(2,{p})"))?;
    Ok(g)
}

/// Semidirect product N x| H for an action phi: H -> Aut(N), given as
/// `act(h, n) = phi_h(n)`. Elements are pairs indexed as n * |H| + h with
/// (n1,h1)(n2,h2) = (n1 phi_{h1}(n2), h1 h2).
pub fn semidirect_product(
    n_grp: &FiniteGroup,
    h_grp: &FiniteGroup,
    act: &dyn Fn(usize, usize) -> usize,
    name: &str,
) -> Result<FiniteGroup, GroupError> {
    let (no, ho) = (n_grp.order(), h_grp.order());
    let order = no * ho;
    if order > TABLE_LIMIT {
        return Err(GroupError::TooLarge);
    }
    // Validate that act is an action by automorphisms.
    for h in 0..ho {
        for a in 0..no {
            for b in 0..no {
                if act(h, n_grp.mul(a, b)) != n_grp.mul(act(h, a), act(h, b)) {
                    return Err(GroupError::BadPresentation(
                        "action is not by homomorphisms".into(),
                    ));
                }
            }
        }
        let mut seen = vec![false; no];
        for a in 0..no {
            let y = act(h, a);
            if seen[y] {
                return Err(GroupError::BadPresentation("action is not bijective".into()));
            }
            seen[y] = true;
        }
    }
    for h1 in 0..ho {
        for h2 in 0..ho {
            let h12 = h_grp.mul(h1, h2);
            for a in 0..no {
                if act(h12, a) != act(h1, act(h2, a)) {
                    return Err(GroupError::BadPresentation(
                        "action is not a homomorphism H -> Aut(N)".into(),
                    ));
                }
            }
        }
    }
    let enc = |n: usize, h: usize| n * ho + h;
    let mut table = vec![0u16; order * order];
    for n1 in 0..no {
        for h1 in 0..ho {
            for n2 in 0..no {
                for h2 in 0..ho {
                    let n = n_grp.mul(n1, act(h1, n2));
                    let h = h_grp.mul(h1, h2);
                    table[enc(n1, h1) * order + enc(n2, h2)] = enc(n, h) as u16;
                }
            }
        }
    }
    // Generators: H's generators (as (0,h)) followed by N's (as (n,0)).
    let mut gens = Vec::new();
    let mut gen_names = Vec::new();
    for (i, &g) in h_grp.generators().iter().enumerate() {
        gens.push(enc(0, g));
        gen_names.push(h_grp.generator_names()[i].clone());
    }
    for (i, &g) in n_grp.generators().iter().enumerate() {
        gens.push(enc(g, 0));
        gen_names.push(format!("{}'", n_grp.generator_names()[i]));
    }
    Ok(build_from_table(name.to_string(), order, table, gens, gen_names))
}

/// A polycyclic-style presentation: generators with orders, and conjugation
/// rules g_i g_j g_i^-1 = word (i < j, word over generators > i). Pairs
/// without a rule commute.
#[derive(Debug, Clone)]
pub struct Presentation {
    /// (name, order) per generator.
    pub gens: Vec<(String, usize)>,
    /// (i, j, word) meaning g_i g_j g_i^-1 = product of (generator, exponent).
    pub conj: Vec<(usize, usize, Vec<(usize, i64)>)>,
}

/// Builds the group of a semidirect-shaped presentation by iterated semidirect
/// products Z_{n_1} |x (Z_{n_2} |x (...)). Rejects presentations whose
/// conjugation data does not define a valid automorphism of the tail at each
/// level (the regularity condition).
pub fn from_presentation_regular(p: &Presentation, name: &str) -> Result<FiniteGroup, GroupError> {
    let m = p.gens.len();
    if m == 0 {
        return Err(GroupError::BadPresentation("no generators".into()));
    }
    for (i, j, w) in &p.conj {
        if *i >= *j || *j >= m || w.iter().any(|&(g, _)| g <= *i || g >= m) {
            return Err(GroupError::BadPresentation(
                "conjugation rules must send later generators to words in later generators".into(),
            ));
        }
    }
    let order: usize = p.gens.iter().map(|&(_, o)| o).product();
    if order > TABLE_LIMIT {
        return Err(GroupError::TooLarge);
    }
    // Build tail-first. `tail` covers generators i+1..m; gen_index[j] is the
    // element index of generator j inside the current tail.
    let last = m - 1;
    let mut tail = cyclic(p.gens[last].1);
    let mut gen_index: Vec<usize> = vec![0; m];
    gen_index[last] = if p.gens[last].1 == 1 { 0 } else { 1 };
    for i in (0..last).rev() {
        let ni = p.gens[i].1;
        // Image of each tail generator j under conjugation by g_i.
        let mut images: Vec<usize> = Vec::new();
        for j in (i + 1)..m {
            let word = p
                .conj
                .iter()
                .find(|(a, b, _)| *a == i && *b == j)
                .map(|(_, _, w)| w.clone())
                .unwrap_or_else(|| vec![(j, 1)]);
            let mut img = tail.identity();
            for (g, e) in word {
                img = tail.mul(img, tail.pow(gen_index[g], e));
            }
            images.push(img);
        }
        // Extend to an automorphism of the tail via BFS words over its
        // distinguished generators g_{i+1}..g_m.
        let tgens: Vec<usize> = ((i + 1)..m).map(|j| gen_index[j]).collect();
        let phi = extend_to_automorphism(&tail, &tgens, &images)?;
        // Conjugation by g_i^{n_i} must be the identity.
        let mut power = (0..tail.order()).collect::<Vec<_>>();
        for _ in 0..ni {
            power = power.iter().map(|&x| phi[x]).collect();
        }
        if power.iter().enumerate().any(|(x, &y)| x != y) {
            return Err(GroupError::BadPresentation(format!(
                "conjugation by {} does not have order dividing {}",
                p.gens[i].0, ni
            )));
        }
        let head = cyclic(ni);
        // act(h, n) = phi^h(n).
        let tail_order = tail.order();
        let mut act_table = vec![0usize; ni * tail_order];
        for n in 0..tail_order {
            act_table[n] = n;
        }
        for h in 1..ni {
            for n in 0..tail_order {
                act_table[h * tail_order + n] = phi[act_table[(h - 1) * tail_order + n]];
            }
        }
        let act = move |h: usize, n: usize| act_table[h * tail_order + n];
        let combined = semidirect_product(&tail, &head, &act, name)?;
        // Element (n, h) has index n * ni + h in the new group.
        for j in (i + 1)..m {
            gen_index[j] *= ni;
        }
        gen_index[i] = if ni == 1 { 0 } else { 1 };
        tail = combined;
    }
    // Verify orders and relations in the finished group.
    for (j, &(_, o)) in p.gens.iter().enumerate() {
        if tail.element_order(gen_index[j]) != o {
            return Err(GroupError::BadPresentation(format!(
                "generator {} does not have order {}",
                p.gens[j].0, o
            )));
        }
    }
    for (i, j, w) in &p.conj {
        let lhs = tail.conj(gen_index[*i], gen_index[*j]);
        let mut rhs = tail.identity();
        for &(g, e) in w {
            rhs = tail.mul(rhs, tail.pow(gen_index[g], e));
        }
        if lhs != rhs {
            return Err(GroupError::BadPresentation(
                "conjugation relation fails in the constructed group".into(),
            ));
        }
    }
    let gens = gen_index.clone();
    let gen_names = p.gens.iter().map(|(n, _)| n.clone()).collect();
    let mut g = tail;
    g.name = name.to_string();
    g.gens = gens;
    g.gen_names = gen_names;
    if !g.is_generating(&g.gens.clone()) {
        return Err(GroupError::BadPresentation("generators do not generate".into()));
    }
    Ok(g)
}

/// Extends generator images to a map on the whole group and verifies it is an
/// automorphism; errors otherwise.
fn extend_to_automorphism(
    g: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Result<Vec<usize>, GroupError> {
    let n = g.order();
    let mut phi = vec![usize::MAX; n];
    phi[0] = 0;
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (k, &gen) in gens.iter().enumerate() {
            let y = g.mul(x, gen);
            if phi[y] == usize::MAX {
                phi[y] = g.mul(phi[x], images[k]);
                queue.push(y);
            }
        }
    }
    if phi.iter().any(|&y| y == usize::MAX) {
        return Err(GroupError::BadPresentation(
            "tail generators do not generate the tail".into(),
        ));
    }
    for x in 0..n {
        for (k, &gen) in gens.iter().enumerate() {
            if phi[g.mul(x, gen)] != g.mul(phi[x], images[k]) {
                return Err(GroupError::BadPresentation(
                    "conjugation data is not an automorphism".into(),
                ));
            }
        }
    }
    let mut seen = vec![false; n];
    for &y in &phi {
        if seen[y] {
            return Err(GroupError::BadPresentation(
                "conjugation data is not injective".into(),
            ));
        }
        seen[y] = true;
    }
    Ok(phi)
}

/// Per order-m element: the units j (mod m) with g conjugate to g^j.
pub fn power_conjugacy_profile(g: &FiniteGroup, m: usize) -> Vec<(usize, Vec<usize>)> {
    use num::Integer;
    g.elements()
        .filter(|&x| g.element_order(x) == m)
        .map(|x| {
            let js = (1..m)
                .filter(|&j| j.gcd(&m) == 1 && g.are_conjugate(x, g.pow(x, j as i64)))
                .collect();
            (x, js)
        })
        .collect()
}

// ---- Registry of the named groups ----

/// D_{2,8,5} = <x, y | x^2 = y^8 = 1, x y x^-1 = y^5>, the GAP group G(16,6).
pub fn d_2_8_5() -> FiniteGroup {
    from_presentation_regular(
        &Presentation {
            gens: vec![("x".into(), 2), ("y".into(), 8)],
            conj: vec![(0, 1, vec![(1, 5)])],
        },
        "G(16,6)",
    )
    .expect("valid presentation")
}

/// G(24,8) = <x,y,z,w | x^2=y^2=z^2=w^3=1, y,z,w pairwise commute,
/// x y x^-1 = y, x z x^-1 = z y, x w x^-1 = w^-1>.
pub fn g24_8() -> FiniteGroup {
    from_presentation_regular(
        &Presentation {
            gens: vec![
                ("x".into(), 2),
                ("y".into(), 2),
                ("z".into(), 2),
                ("w".into(), 3),
            ],
            conj: vec![
                (0, 1, vec![(1, 1)]),
                (0, 2, vec![(2, 1), (1, 1)]),
                (0, 3, vec![(3, -1)]),
            ],
        },
        "G(24,8)",
    )
    .expect("valid presentation")
}

/// G(32,9) = <x,y,z | x^2=y^2=z^8=1, [x,y]=[y,z]=1, x z x^-1 = y z^3>.
pub fn g32_9() -> FiniteGroup {
    from_presentation_regular(
        &Presentation {
            gens: vec![("x".into(), 2), ("y".into(), 2), ("z".into(), 8)],
            conj: vec![(0, 2, vec![(1, 1), (2, 3)])],
        },
        "G(32,9)",
    )
    .expect("valid presentation")
}

/// Generating-vector existence check used by the registry searches: is there a
/// spherical vector (0 | m1, m2, m3), i.e. elements of the given orders with
/// g1 g2 g3 = 1 generating G?
fn admits_spherical_triple(g: &FiniteGroup, m1: usize, m2: usize, m3: usize) -> bool {
    for a in g.elements() {
        if g.element_order(a) != m1 {
            continue;
        }
        for b in g.elements() {
            if g.element_order(b) != m2 {
                continue;
            }
            let c = g.inv(g.mul(a, b));
            if g.element_order(c) == m3 && g.is_generating(&[a, b]) {
                return true;
            }
        }
    }
    false
}

/// All semidirect products Z2 |x D_{2,8,5} (over involutive automorphisms of
/// D_{2,8,5}, identity included) that admit a generating vector of type
/// (0|2,4,8) — the candidates for G(32,11).
pub fn g32_11_candidates() -> Vec<FiniteGroup> {
    let d = d_2_8_5();
    let h = cyclic(2);
    let autos = d.automorphism_group().expect("order 16 within bound");
    let mut out = Vec::new();
    for phi in &autos {
        let involutive = (0..d.order()).all(|x| phi[phi[x]] == x);
        if !involutive {
            continue;
        }
        let phi = phi.clone();
        let act = move |hh: usize, n: usize| if hh == 0 { n } else { phi[n] };
        let Ok(g) = semidirect_product(&d, &h, &act, "Z2:D_{2,8,5}") else {
            continue;
        };
        if g.order() == 32 && admits_spherical_triple(&g, 2, 4, 8) {
            out.push(g);
        }
    }
    out
}

/// All semidirect products S3 |x (Z4)^2 (over action homomorphisms
/// S3 -> Aut((Z4)^2)) that admit a generating vector of type (0|2,3,8) —
/// the candidates for G(96,64).
pub fn g96_64_candidates() -> Vec<FiniteGroup> {
    let n = abelian(&[4, 4]);
    let s3 = from_presentation_regular(
        &Presentation {
            gens: vec![("s".into(), 2), ("r".into(), 3)],
            conj: vec![(0, 1, vec![(1, -1)])],
        },
        "S3",
    )
    .expect("valid presentation");
    let autos = n.automorphism_group().expect("order 16 within bound");
    // Express every S3 element as a word in the generators (s=0, r=1) by BFS.
    let mut words: Vec<Option<Vec<usize>>> = vec![None; s3.order()];
    words[0] = Some(vec![]);
    let mut queue = vec![0usize];
    while let Some(x) = queue.pop() {
        for (gi, &g) in s3.generators().iter().enumerate() {
            let y = s3.mul(g, x);
            if words[y].is_none() {
                let mut w = vec![gi];
                w.extend(words[x].as_ref().unwrap());
                words[y] = Some(w);
                queue.push(y);
            }
        }
    }
    let words: Vec<Vec<usize>> = words.into_iter().map(Option::unwrap).collect();
    let mut out = Vec::new();
    for a in &autos {
        // a = phi(s): must be involutive.
        if (0..n.order()).any(|x| a[a[x]] != x) {
            continue;
        }
        for b in &autos {
            // b = phi(r): order dividing 3 and a b a = b^-1.
            if (0..n.order()).any(|x| b[b[b[x]]] != x) {
                continue;
            }
            let compatible = (0..n.order()).all(|x| a[b[a[x]]] == b[b[x]]);
            if !compatible {
                continue;
            }
            let act = |h: usize, x: usize| {
                let mut y = x;
                for &w in words[h].iter().rev() {
                    y = if w == 0 { a[y] } else { b[y] };
                }
                y
            };
            let Ok(g) = semidirect_product(&n, &s3, &act, "S3:(Z4)^2") else {
                continue;
            };
            if g.order() == 96 && admits_spherical_triple(&g, 2, 3, 8) {
                out.push(g);
            }
        }
    }
    out
}

/// Named groups by GAP-style label (order, index).
pub fn registry(order: usize, label: usize) -> Result<FiniteGroup, GroupError> {
    match (order, label) {
        (16, 6) => Ok(d_2_8_5()),
        (24, 8) => Ok(g24_8()),
        (32, 9) => Ok(g32_9()),
        (32, 11) => g32_11_candidates()
            .into_iter()
            .next()
            .ok_or(GroupError::UnknownRegistryEntry(order, label)),
        (96, 64) => g96_64_candidates()
            .into_iter()
            .next()
            .ok_or(GroupError::UnknownRegistryEntry(order, label)),
        _ => Err(GroupError::UnknownRegistryEntry(order, label)),
    }
}

/// Shared handle used by actions/quotient.
pub type Group = Arc<FiniteGroup>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_basics() {
        let g = cyclic(6);
        assert_eq!(g.order(), 6);
        assert_eq!(g.element_order(2), 3);
        let g = cyclic(12);
        assert_eq!(
            g.elements().filter(|&x| g.element_order(x) == 12).count(),
            4
        );
        assert_eq!(cyclic(1).order(), 1);
    }

    #[test]
    fn abelian_basics() {
        assert_eq!(abelian(&[2, 6]).order(), 12);
        assert_eq!(abelian(&[2, 8]).order(), 16);
        let g = abelian(&[2]);
        assert_eq!(g.order(), 2);
        assert!(g.conjugacy_classes().iter().all(|c| c.len() == 1));
    }

    #[test]
    fn permutation_groups() {
        let s3 = from_permutations(
            3,
            &[Perm(vec![1, 0, 2]), Perm(vec![1, 2, 0])],
            "S3",
        )
        .unwrap();
        assert_eq!(s3.order(), 6);
        let g = psl2(7).unwrap();
        assert_eq!(g.order(), 168);
        assert_eq!(g.conjugacy_classes().len(), 6);
        assert_eq!(g.derived_subgroup().len(), 168);
    }

    #[test]
    fn class_sizes_balance() {
        for g in [cyclic(12), d_2_8_5(), g24_8(), g32_9()] {
            for x in g.elements() {
                assert_eq!(g.class_of(x).len() * g.centralizer(x).len(), g.order());
                // Conjugation preserves element order.
                for &y in g.class_of(x) {
                    assert_eq!(g.element_order(y), g.element_order(x));
                }
            }
        }
    }

    #[test]
    fn registry_orders() {
        assert_eq!(d_2_8_5().order(), 16);
        assert_eq!(g24_8().order(), 24);
        assert_eq!(g32_9().order(), 32);
        assert_eq!(registry(16, 6).unwrap().order(), 16);
        assert!(registry(5, 1).is_err());
    }

    #[test]
    fn g24_8_order3_classes() {
        let g = g24_8();
        let classes: Vec<_> = g
            .conjugacy_classes()
            .iter()
            .filter(|c| g.element_order(c[0]) == 3)
            .collect();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].len(), 2);
        let w = classes[0][0];
        assert_eq!(g.centralizer(w).len(), 12);
        let mut expect = vec![w, g.inv(w)];
        expect.sort_unstable();
        assert_eq!(classes[0], &expect);
    }

    #[test]
    fn d_2_8_5_power_conjugacy() {
        let g = d_2_8_5();
        let profile = power_conjugacy_profile(&g, 8);
        assert!(!profile.is_empty());
        for (_, js) in &profile {
            assert!(js.contains(&5));
        }
        // Abelian control case: conjugate only to itself.
        let c8 = cyclic(8);
        for (_, js) in power_conjugacy_profile(&c8, 8) {
            assert_eq!(js, vec![1]);
        }
    }

    #[test]
    fn g32_9_structure() {
        let g = g32_9();
        let derived = g.derived_subgroup();
        assert_eq!(derived.len(), 4);
        // [G,G] = <y z^2>.
        let y = g.gens[1];
        let z = g.gens[2];
        let yz2 = g.mul(y, g.pow(z, 2));
        assert_eq!(g.cyclic_subgroup(yz2), derived);
        // Condition (*): an order-8 element not conjugate to g^3, g^5, g^7.
        let profile = power_conjugacy_profile(&g, 8);
        assert!(profile.iter().any(|(_, js)| js == &vec![1]));
        assert_eq!(g.automorphism_group().unwrap().len(), 64);
    }

    #[test]
    fn subgroups_and_cosets() {
        let g = cyclic(12);
        assert_eq!(g.subgroup_generated(&[4, 6]), g.subgroup_generated(&[2]));
        assert_eq!(g.subgroup_generated(&[0]), vec![0]);
        let c6 = cyclic(6);
        let h = c6.subgroup_generated(&[2]);
        assert_eq!(c6.left_cosets(&h).len(), 2);
        assert_eq!(c6.left_cosets(&(0..6).collect::<Vec<_>>()).len(), 1);
        assert_eq!(c6.left_cosets(&[0]).len(), 6);
    }

    #[test]
    fn normalizer_centralizer() {
        let g = abelian(&[2, 6]);
        for x in g.elements() {
            assert_eq!(g.centralizer(x).len(), g.order());
        }
        let h = g.subgroup_generated(&[g.gens[1]]);
        assert_eq!(g.normalizer(&h).len(), g.order());
        // PSL(2,7): normalizer of a 7-Sylow has order 21.
        let p = psl2(7).unwrap();
        let seven = p.elements().find(|&x| p.element_order(x) == 7).unwrap();
        let h = p.cyclic_subgroup(seven);
        assert_eq!(p.normalizer(&h).len(), 21);
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(cyclic(8).automorphism_group().unwrap().len(), 4);
        assert_eq!(abelian(&[2, 2]).automorphism_group().unwrap().len(), 6);
        assert!(psl2(7).unwrap().automorphism_group().is_err());
    }

    #[test]
    fn registry_candidates() {
        let c32 = g32_11_candidates();
        assert!(!c32.is_empty());
        for g in &c32 {
            assert_eq!(g.order(), 32);
        }
        let c96 = g96_64_candidates();
        assert!(!c96.is_empty());
        for g in &c96 {
            assert_eq!(g.order(), 96);
        }
    }

    #[test]
    fn bad_presentations_rejected() {
        // x of order 2 acting on y of order 3 by y -> y (fine) vs an
        // inconsistent rule y -> y^1 with claimed order mismatch.
        let p = Presentation {
            gens: vec![("x".into(), 2), ("y".into(), 4)],
            conj: vec![(0, 1, vec![(1, 2)])], // y -> y^2 is not injective
        };
        assert!(from_presentation_regular(&p, "bad").is_err());
    }
}
