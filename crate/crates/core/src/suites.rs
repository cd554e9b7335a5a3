//! Seeded self-test suites: each runs a batch of random and curated
//! instances through the pipeline and checks the results against theorems
//! and independent combinatorial criteria.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::factor::{
    deformation_report, factorize, flip_normalize, verify_minkowski_sum, Factorization,
};
use crate::families::{FlowNetwork, Limits, Poset, SimpleGraph, SimplicialComplex};
use crate::multiaffine::{expand_product, factor_multiaffine, splits_over_some_bipartition};
use crate::polytope::{catalog, Polytope01};
use crate::random;

#[derive(Debug, Clone, serde::Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub instances: usize,
    pub failures: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
    #[serde(skip)]
    pub time_limit: Option<Duration>,
}

impl SuiteResult {
    pub fn within_time(&self) -> bool {
        self.time_limit.map_or(true, |t| self.elapsed <= t)
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.within_time()
    }

    /// One line: `PASS name (instances, seconds)` or `FAIL ...` with the
    /// first failure.
    pub fn summary(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut s = format!(
            "{status} {}: {} instances, {} failures, {:.2}s",
            self.name,
            self.instances,
            self.failures.len(),
            self.elapsed.as_secs_f64()
        );
        if let Some(t) = self.time_limit {
            s.push_str(&format!(" (limit {}s)", t.as_secs()));
        }
        if let Some(f) = self.failures.first() {
            s.push_str(&format!("; first failure: {f}"));
        }
        s
    }
}

fn run<F>(name: &str, limit: Option<Duration>, body: F) -> SuiteResult
where
    F: FnOnce() -> (usize, Vec<String>),
{
    let start = Instant::now();
    let (instances, failures) = body();
    SuiteResult {
        name: name.to_string(),
        instances,
        failures,
        elapsed: start.elapsed(),
        time_limit: limit,
    }
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Curated polytopes followed by 200 random ones.
pub fn polytope_corpus(seed: u64) -> Vec<(String, Polytope01)> {
    let mut out = vec![
        ("segment".to_string(), catalog::segment()),
        ("square".to_string(), catalog::square()),
    ];
    for d in 1..=4 {
        out.push((format!("cube{d}"), catalog::cube(d)));
    }
    for d in 1..=5 {
        out.push((format!("simplex{d}"), catalog::simplex(d)));
    }
    for d in 2..=5 {
        out.push((format!("standard-simplex{d}"), catalog::standard_simplex(d)));
    }
    out.push(("birkhoff2".to_string(), catalog::birkhoff(2)));
    out.push(("birkhoff3".to_string(), catalog::birkhoff(3)));
    for d in 2..=4 {
        out.push((format!("cross-like{d}"), catalog::cross_like(d)));
    }
    let mut r = rng(seed, 1);
    for i in 0..200 {
        out.push((format!("random#{i}"), random::polytope(&mut r)));
    }
    out
}

fn describe(name: &str, p: &Polytope01) -> String {
    format!("{name} {p:?}")
}

/// Kernel dimension of the cycle equations equals the number of edge
/// classes, and every class indicator solves them.
pub fn cube_theorem(corpus: &[(String, Polytope01)]) -> SuiteResult {
    run("cube theorem", Some(Duration::from_secs(120)), || {
        let failures: Vec<String> = corpus
            .par_iter()
            .filter_map(|(name, p)| match p.face_structure() {
                Err(e) => Some(format!("{}: {e}", describe(name, p))),
                Ok(fs) => {
                    let r = deformation_report(p, &fs);
                    (!r.cube_verified()).then(|| format!("{}: {r:?}", describe(name, p)))
                }
            })
            .collect();
        (corpus.len(), failures)
    })
}

fn check_factorization(p: &Polytope01) -> Result<(), String> {
    let f: Factorization = factorize(p).map_err(|e| e.to_string())?;
    let (normalized, mask) = flip_normalize(p);
    if normalized.xor(&mask) != *p {
        return Err("flip normalization is not an involution".into());
    }
    for s in &f.summands {
        if s.vertices().iter().any(|v| v.iter().any(|&b| b > 1)) {
            return Err("summand leaves the cube".into());
        }
    }
    let mut seen = BTreeSet::new();
    for b in &f.blocks {
        for &i in b {
            if !seen.insert(i) {
                return Err(format!("coordinate {i} in two blocks"));
            }
        }
    }
    if !verify_minkowski_sum(&normalized, &f.summands) {
        return Err("Minkowski sum of summands differs from the polytope".into());
    }
    let count: usize = f.factors.iter().map(Polytope01::num_vertices).product();
    if count != p.num_vertices() {
        return Err("vertex count is not the product of factor sizes".into());
    }
    let prod: BTreeSet<Vec<u8>> = f.product_points().into_iter().collect();
    let orig: BTreeSet<Vec<u8>> = p.vertices().iter().cloned().collect();
    if prod != orig {
        return Err("product of factors differs from the polytope".into());
    }
    for (i, factor) in f.factors.iter().enumerate() {
        let k = factorize(factor).map_err(|e| e.to_string())?.k();
        if k != 1 {
            return Err(format!("factor {i} refactors with k = {k}"));
        }
    }
    Ok(())
}

/// Reconstructed summands are 0/1 with disjoint supports, sum to the
/// normalized polytope, their projections multiply back to the input, and
/// each factor is indecomposable.
pub fn factorization_soundness(corpus: &[(String, Polytope01)]) -> SuiteResult {
    run("factorization soundness", None, || {
        let failures: Vec<String> = corpus
            .par_iter()
            .filter_map(|(name, p)| {
                check_factorization(p)
                    .err()
                    .map(|e| format!("{}: {e}", describe(name, p)))
            })
            .collect();
        (corpus.len(), failures)
    })
}

/// Exact known answers for named polytopes.
pub fn known_answers() -> SuiteResult {
    run("known answers", None, || {
        let l = Limits::default();
        let mut cases: Vec<(String, Polytope01, usize)> = vec![
            ("square".into(), catalog::square(), 2),
            ("birkhoff3".into(), catalog::birkhoff(3), 1),
        ];
        for d in 1..=5 {
            cases.push((format!("cube{d}"), catalog::cube(d), d));
            cases.push((format!("simplex{d}"), catalog::simplex(d), 1));
        }
        for d in 2..=5 {
            cases.push((format!("standard-simplex{d}"), catalog::standard_simplex(d), 1));
        }
        cases.push((
            "double diamond flow".into(),
            FlowNetwork::double_diamond().flow_polytope(&l).expect("flow"),
            2,
        ));
        let u23 = crate::families::Matroid::uniform(2, 3);
        cases.push(("U(2,3) bases".into(), u23.base_polytope().expect("bases"), 1));
        let u12 = crate::families::Matroid::uniform(1, 2);
        let sum = u12.direct_sum(&u12).expect("direct sum");
        cases.push(("U(1,2)+U(1,2) bases".into(), sum.base_polytope().expect("bases"), 2));

        let mut failures = Vec::new();
        for (name, p, expected) in &cases {
            match factorize(p) {
                Ok(f) if f.k() == *expected => {
                    if name.starts_with("cube")
                        && !f.factors.iter().all(|x| x.num_vertices() == 2)
                    {
                        failures.push(format!("{name}: factors are not segments"));
                    }
                }
                Ok(f) => failures.push(format!("{name}: k = {}, expected {expected}", f.k())),
                Err(e) => failures.push(format!("{name}: {e}")),
            }
        }
        (cases.len(), failures)
    })
}

/// Geometric factor count of a family member; points count as zero factors.
fn geometric_k(p: Result<Polytope01, crate::families::FamilyError>) -> Result<usize, String> {
    let p = p.map_err(|e| e.to_string())?;
    factorize(&p).map(|f| f.k()).map_err(|e| e.to_string())
}

struct Tally {
    instances: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, label: &str, text: &str, k: Result<usize, String>, connected: bool, count: usize, literal: bool) {
        self.instances += 1;
        match k {
            Err(e) => self.failures.push(format!("{label}: {e} on {text:?}")),
            Ok(k) => {
                if k != count {
                    self.failures
                        .push(format!("{label}: k = {k} but criterion predicts {count} on {text:?}"));
                }
                if literal && (k == 1) != connected {
                    self.failures.push(format!(
                        "{label}: indecomposable = {} but criterion says {connected} on {text:?}",
                        k == 1
                    ));
                }
            }
        }
    }
}

/// Random family members: the geometric factor count must match the
/// combinatorial prediction on every instance.
pub fn oracle_agreement(seed: u64) -> SuiteResult {
    run("oracle agreement", Some(Duration::from_secs(600)), || {
        // Matching polytopes of 8-vertex graphs live on up to 28 edges.
        let l = Limits {
            max_ground: 28,
            ..Limits::default()
        };
        let mut t = Tally {
            instances: 0,
            failures: Vec::new(),
        };

        let mut r = rng(seed, 2);
        let posets: Vec<Poset> = (0..100).map(|_| random::poset(&mut r)).collect();
        let results: Vec<_> = posets
            .par_iter()
            .map(|p| {
                let g = p.comparability_graph();
                (
                    p.to_text(),
                    geometric_k(p.order_polytope(&l)),
                    geometric_k(p.chain_polytope(&l)),
                    g.is_connected(),
                    g.components().len(),
                )
            })
            .collect();
        for (text, ko, kc, conn, count) in results {
            t.check("order", &text, ko, conn, count, true);
            t.check("chain", &text, kc, conn, count, true);
        }

        let graphs: Vec<SimpleGraph> = (0..100).map(|_| random::graph(&mut r, 1, 8)).collect();
        let results: Vec<_> = graphs
            .par_iter()
            .map(|g| {
                let co = g.complement();
                let h = g.without_isolated();
                let matching = (!h.edges().is_empty()).then(|| {
                    (
                        geometric_k(h.matching_polytope(&l)),
                        h.is_connected(),
                        h.components().len(),
                    )
                });
                (
                    g.to_text(),
                    geometric_k(g.stable_set_polytope(&l)),
                    (g.is_connected(), g.components().len()),
                    geometric_k(g.clique_polytope(&l)),
                    (co.is_connected(), co.components().len()),
                    matching,
                )
            })
            .collect();
        for (text, ks, (gc, gn), kq, (cc, cn), matching) in results {
            t.check("stable", &text, ks, gc, gn, true);
            t.check("clique", &text, kq, cc, cn, true);
            if let Some((km, mc, mn)) = matching {
                t.check("matching", &text, km, mc, mn, true);
            }
        }

        let complexes: Vec<SimplicialComplex> = (0..50).map(|_| random::complex(&mut r)).collect();
        let results: Vec<_> = complexes
            .par_iter()
            .map(|c| {
                (
                    c.to_text(),
                    geometric_k(c.antiblocking_polytope(&l)),
                    c.exclusion_graph().is_connected(),
                    c.vertex_exclusion_components().len(),
                )
            })
            .collect();
        for (text, k, conn, count) in results {
            t.check("antiblocking", &text, k, conn, count, true);
        }

        let pure: Vec<SimplicialComplex> = (0..50).map(|_| random::pure_complex(&mut r)).collect();
        let results: Vec<_> = pure
            .par_iter()
            .map(|c| {
                let link = c.delete_cone_points().expect("link");
                let k_link = geometric_k(link.antiblocking_polytope(&l));
                (
                    c.to_text(),
                    geometric_k(c.pure_face_polytope()),
                    k_link.clone().map(|k| k == 1),
                    k_link.map(|k| k.max(1)).unwrap_or(0),
                )
            })
            .collect();
        for (text, k, link_indecomposable, _) in results {
            t.instances += 1;
            match (k, link_indecomposable) {
                (Ok(k), Ok(li)) => {
                    // Both sides are points exactly when there is one facet.
                    if (k == 1) != li {
                        t.failures.push(format!(
                            "purefaces: facet polytope k = {k}, cone-free complex indecomposable = {li} on {text:?}"
                        ));
                    }
                }
                (Err(e), _) | (_, Err(e)) => t.failures.push(format!("purefaces: {e} on {text:?}")),
            }
        }

        let matroids: Vec<_> = (0..50).map(|_| random::graphic_matroid(&mut r)).collect();
        let results: Vec<_> = matroids
            .par_iter()
            .map(|(g, m)| {
                (
                    g.to_text(),
                    geometric_k(m.base_polytope()),
                    geometric_k(m.independence_polytope(&l)),
                    m.is_connected(),
                    m.coloops().is_empty(),
                    m.delete_loops_and_coloops().connected_components().len(),
                    m.delete_loops().connected_components().len(),
                )
            })
            .collect();
        for (text, kb, ki, conn, no_coloops, nb, ni) in results {
            t.check("matroid bases", &text, kb, conn, nb, no_coloops);
            t.check("matroid independent sets", &text, ki, conn, ni, true);
        }

        let dags: Vec<FlowNetwork> = (0..50).map(|_| random::dag(&mut r)).collect();
        let results: Vec<_> = dags
            .par_iter()
            .map(|d| {
                (
                    d.to_text(),
                    geometric_k(d.flow_polytope(&l)),
                    d.is_separator_free(),
                    d.proper_piece_count(),
                    !d.has_forced_piece(),
                )
            })
            .collect();
        for (text, k, free, count, literal) in results {
            t.check("flow", &text, k, free, count, literal);
        }
        (t.instances, t.failures)
    })
}

/// Products of simplices are simple and factor into simplices; pyramids
/// over non-simplices are not simple.
pub fn simple_polytopes(seed: u64) -> SuiteResult {
    run("simple polytopes", None, || {
        let mut r = rng(seed, 3);
        let products: Vec<_> = (0..30).map(|_| random::simplex_product(&mut r)).collect();
        let pyramids: Vec<_> = (0..30).map(|_| random::non_simple(&mut r)).collect();
        let mut failures: Vec<String> = products
            .par_iter()
            .filter_map(|(p, dims)| {
                if !p.is_simple() {
                    return Some(format!("product of simplices {dims:?} not simple: {p:?}"));
                }
                let f = match factorize(p) {
                    Ok(f) => f,
                    Err(e) => return Some(e.to_string()),
                };
                let mut got: Vec<usize> = f.factors.iter().map(|x| x.num_vertices() - 1).collect();
                got.sort_unstable();
                let mut want = dims.clone();
                want.sort_unstable();
                if f.factors.iter().any(|x| x.num_vertices() != x.dimension() + 1) || got != want {
                    return Some(format!("factors of {dims:?} are {got:?}"));
                }
                None
            })
            .collect();
        failures.extend(
            pyramids
                .par_iter()
                .filter(|p| p.is_simple())
                .map(|p| format!("pyramid reported simple: {p:?}"))
                .collect::<Vec<_>>(),
        );
        (products.len() + pyramids.len(), failures)
    })
}

/// Random products of multi-affine polynomials on disjoint variables.
pub fn multiaffine(seed: u64) -> SuiteResult {
    run("multi-affine factorization", None, || {
        let mut r = rng(seed, 4);
        let cases: Vec<_> = (0..100)
            .map(|i| random::multiaffine_product(&mut r, if i % 2 == 0 { 5 } else { 8 }))
            .collect();
        let failures: Vec<String> = cases
            .par_iter()
            .filter_map(|(f, _, groups)| {
                let out = match factor_multiaffine(f) {
                    Ok(out) => out,
                    Err(e) => return Some(format!("{f}: {e}")),
                };
                match expand_product(&out.factors, &out.content, &out.unit) {
                    Ok(back) if &back == f => {}
                    _ => return Some(format!("{f}: expansion differs")),
                }
                for b in &out.blocks {
                    if !groups.iter().any(|g| b.iter().all(|v| g.contains(v))) {
                        return Some(format!("{f}: block {b:?} crosses {groups:?}"));
                    }
                }
                if f.num_vars() <= 5 {
                    if let Some(g) = out.factors.iter().find(|g| splits_over_some_bipartition(g)) {
                        return Some(format!("{f}: factor {g} splits further"));
                    }
                }
                None
            })
            .collect();
        (cases.len(), failures)
    })
}

/// Runs every library-level suite with `seed`.
pub fn run_all(seed: u64) -> Vec<SuiteResult> {
    let corpus = polytope_corpus(seed);
    vec![
        cube_theorem(&corpus),
        factorization_soundness(&corpus),
        known_answers(),
        oracle_agreement(seed),
        simple_polytopes(seed),
        multiaffine(seed),
    ]
}
