//! Seeded random instance generators shared by the self-test suites and
//! the property tests.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::exactla::Rational;
use crate::families::{FlowNetwork, Limits, Matroid, Poset, SimpleGraph, SimplicialComplex};
use crate::multiaffine::MultiAffinePoly;
use crate::polytope::{catalog, Polytope01};

/// A random set of `2..=20` distinct points in `{0,1}^n`, `n` in `2..=6`.
pub fn polytope<R: Rng>(rng: &mut R) -> Polytope01 {
    let n = rng.gen_range(2..=6);
    let total = 1usize << n;
    let m = rng.gen_range(2..=total.min(20));
    let mut all: Vec<u32> = (0..total as u32).collect();
    all.shuffle(rng);
    let pts = all[..m]
        .iter()
        .map(|&x| (0..n).map(|i| (x >> i & 1) as u8).collect())
        .collect();
    Polytope01::new(n, pts).expect("distinct points")
}

fn random_mask<R: Rng>(rng: &mut R, n: usize) -> Vec<u8> {
    (0..n).map(|_| rng.gen_range(0..=1)).collect()
}

fn shuffle_and_flip<R: Rng>(rng: &mut R, p: &Polytope01) -> Polytope01 {
    let n = p.ambient_dim();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    p.permute_coordinates(&perm).xor(&random_mask(rng, n))
}

/// A product of simplices of total dimension at most 8, with coordinates
/// shuffled and flipped. Returns the polytope and the factor dimensions.
pub fn simplex_product<R: Rng>(rng: &mut R) -> (Polytope01, Vec<usize>) {
    let mut dims = Vec::new();
    let mut budget = rng.gen_range(1..=8);
    while budget > 0 {
        let d = rng.gen_range(1..=budget.min(4));
        dims.push(d);
        budget -= d;
    }
    let mut p = catalog::point(0);
    for &d in &dims {
        p = p.product(&catalog::simplex(d));
    }
    (shuffle_and_flip(rng, &p), dims)
}

/// A pyramid over a product of at least two simplices: the apex has more
/// neighbours than the dimension, so the result is never simple.
pub fn non_simple<R: Rng>(rng: &mut R) -> Polytope01 {
    let factors = rng.gen_range(2..=3);
    let mut p = catalog::point(0);
    for _ in 0..factors {
        p = p.product(&catalog::simplex(rng.gen_range(1..=2)));
    }
    shuffle_and_flip(rng, &p.pyramid())
}

/// A random poset on `1..=7` elements.
pub fn poset<R: Rng>(rng: &mut R) -> Poset {
    let n = rng.gen_range(1..=7);
    let density: f64 = rng.gen_range(0.05..0.6);
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((labels[i], labels[j]));
            }
        }
    }
    Poset::from_relation(n, &pairs).expect("relation respects a linear order")
}

/// A random simple graph on `lo..=hi` vertices.
pub fn graph<R: Rng>(rng: &mut R, lo: usize, hi: usize) -> SimpleGraph {
    let n = rng.gen_range(lo..=hi);
    let density: f64 = rng.gen_range(0.1..0.7);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(density) {
                edges.push((a, b));
            }
        }
    }
    SimpleGraph::new(n, edges).expect("simple by construction")
}

/// A random complex on `1..=7` elements in which every element is a vertex.
pub fn complex<R: Rng>(rng: &mut R) -> SimplicialComplex {
    let n = rng.gen_range(1..=7);
    let count = rng.gen_range(1..=5);
    let mut sets: Vec<u64> = (0..count)
        .map(|_| rng.gen_range(1..1u64 << n))
        .collect();
    let covered = sets.iter().fold(0, |acc, &s| acc | s);
    sets.extend((0..n).filter(|&i| covered >> i & 1 == 0).map(|i| 1u64 << i));
    SimplicialComplex::generated_by(n, &sets).expect("generated complex")
}

/// A random pure complex: `1..=6` distinct facets of a common size.
pub fn pure_complex<R: Rng>(rng: &mut R) -> SimplicialComplex {
    let n = rng.gen_range(2..=7);
    let d = rng.gen_range(1..n);
    let mut pool: Vec<u64> = (0..1u64 << n).filter(|s| s.count_ones() as usize == d).collect();
    pool.shuffle(rng);
    let count = rng.gen_range(1..=pool.len().min(6));
    SimplicialComplex::new(n, pool[..count].to_vec()).expect("equal-size sets form an antichain")
}

/// The cycle matroid of a random graph with at most 8 edges.
pub fn graphic_matroid<R: Rng>(rng: &mut R) -> (SimpleGraph, Matroid) {
    loop {
        let g = graph(rng, 2, 6);
        if g.edges().is_empty() {
            continue;
        }
        let mut edges = g.edges().to_vec();
        edges.shuffle(rng);
        edges.truncate(8);
        let g = SimpleGraph::new(g.num_vertices(), edges).expect("subgraph");
        let m = Matroid::graphic(&g, &Limits::default()).expect("small graph");
        return (g, m);
    }
}

/// A random acyclic network on `2..=8` nodes with source 1 and sink `n`.
pub fn dag<R: Rng>(rng: &mut R) -> FlowNetwork {
    let n = rng.gen_range(2..=8);
    let density: f64 = rng.gen_range(0.15..0.6);
    let mut arcs = std::collections::BTreeSet::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(density) {
                arcs.insert((a, b));
            }
        }
    }
    for v in 1..n {
        if !arcs.iter().any(|&(_, b)| b == v) {
            arcs.insert((rng.gen_range(0..v), v));
        }
    }
    for v in 0..n - 1 {
        if !arcs.iter().any(|&(a, _)| a == v) {
            arcs.insert((v, rng.gen_range(v + 1..n)));
        }
    }
    FlowNetwork::new(n, arcs.into_iter().collect()).expect("every node lies between source and sink")
}

fn coefficient<R: Rng>(rng: &mut R) -> Rational {
    let num = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
    Rational::new(num, rng.gen_range(1..=2))
}

/// A random multi-affine polynomial in the variables `vars` (out of `n`),
/// with coefficients from `±{1,2,3}/{1,2}`.
pub fn multiaffine_on<R: Rng>(rng: &mut R, n: usize, vars: &[usize]) -> MultiAffinePoly {
    let k = vars.len();
    let count = rng.gen_range(1..=(1usize << k).min(6));
    let mut subsets: Vec<u32> = (0..1u32 << k).collect();
    subsets.shuffle(rng);
    let terms = subsets[..count].iter().map(|&s| {
        let mut alpha = vec![0u8; n];
        for (j, &v) in vars.iter().enumerate() {
            alpha[v] = (s >> j & 1) as u8;
        }
        (alpha, coefficient(rng))
    });
    MultiAffinePoly::new(n, terms.collect::<Vec<_>>()).expect("distinct supports, nonzero coefficients")
}

/// A product of 2 or 3 random factors on disjoint variable sets, `n ≤ max_n`.
/// Returns the expanded product and the variable set of each factor.
pub fn multiaffine_product<R: Rng>(
    rng: &mut R,
    max_n: usize,
) -> (MultiAffinePoly, Vec<MultiAffinePoly>, Vec<Vec<usize>>) {
    let parts = rng.gen_range(2..=3);
    let n = rng.gen_range(parts..=max_n.max(parts));
    let mut vars: Vec<usize> = (0..n).collect();
    vars.shuffle(rng);
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); parts];
    for (i, &v) in vars.iter().enumerate() {
        let g = if i < parts { i } else { rng.gen_range(0..parts) };
        groups[g].push(v);
    }
    for g in &mut groups {
        g.sort_unstable();
    }
    let factors: Vec<MultiAffinePoly> = groups.iter().map(|g| multiaffine_on(rng, n, g)).collect();
    let mut f = MultiAffinePoly::constant(n, Rational::one()).expect("one");
    for g in &factors {
        f = f.mul_disjoint(g).expect("disjoint variables");
    }
    (f, factors, groups)
}
