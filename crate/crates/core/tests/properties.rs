use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polyfactor::exactla::{lp_feasible, Feasibility, Matrix, Rational};
use polyfactor::factor::{edge_classes, edge_classes_of, factorize, flip_normalize};
use polyfactor::families::{Limits, Poset, SimplicialComplex};
use polyfactor::multiaffine::{expand_product, factor_multiaffine, splits_over_some_bipartition};
use polyfactor::polytope::{FaceKind, Polytope01};
use polyfactor::random;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn subset_of(r: &mut ChaCha8Rng, m: usize) -> Vec<usize> {
    let mut s: Vec<usize> = (0..m).filter(|_| r.gen_bool(0.3)).collect();
    if s.is_empty() {
        s.push(r.gen_range(0..m));
    }
    s
}

fn mask_vertex(n: usize, mask: u64) -> Vec<u8> {
    (0..n).map(|i| (mask >> i & 1) as u8).collect()
}

fn sorted_blocks(p: &Polytope01) -> Vec<Vec<usize>> {
    factorize(p).unwrap().blocks
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn adjacency_is_symmetric_and_degrees_reach_the_dimension(seed in any::<u64>()) {
        let p = random::polytope(&mut rng(seed));
        let m = p.num_vertices();
        let mut degree = vec![0; m];
        for u in 0..m {
            for v in u + 1..m {
                let a = p.adjacent(u, v);
                prop_assert_eq!(a, p.adjacent(v, u));
                if a {
                    degree[u] += 1;
                    degree[v] += 1;
                }
            }
        }
        let d = p.dimension();
        prop_assert!(degree.iter().all(|&k| k >= d));
    }

    #[test]
    fn smallest_face_is_extensive_idempotent_and_monotone(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random::polytope(&mut r);
        let s = subset_of(&mut r, p.num_vertices());
        let mut t: BTreeSet<usize> = subset_of(&mut r, p.num_vertices()).into_iter().collect();
        t.extend(&s);
        let t: Vec<usize> = t.into_iter().collect();
        let fs = p.smallest_face(&s);
        prop_assert!(s.iter().all(|i| fs.contains(i)));
        prop_assert_eq!(p.smallest_face(&fs), fs.clone());
        let ft = p.smallest_face(&t);
        prop_assert!(fs.iter().all(|i| ft.contains(i)));
        prop_assert!(p.is_face(&fs));
    }

    #[test]
    fn two_faces_are_closed_faces_with_graph_edges(seed in any::<u64>()) {
        let p = random::polytope(&mut rng(seed));
        let fs = p.face_structure().unwrap();
        for f in &fs.two_faces {
            let mut s = f.vertices.clone();
            s.sort_unstable();
            prop_assert_eq!(p.smallest_face(&s), s.clone());
            for (a, b) in f.cycle_edges() {
                prop_assert!(fs.edge_id(a, b).is_some());
            }
            if f.kind == FaceKind::Parallelogram {
                let v = &f.vertices;
                for i in 0..p.ambient_dim() {
                    prop_assert_eq!(
                        p.vertex(v[0])[i] + p.vertex(v[2])[i],
                        p.vertex(v[1])[i] + p.vertex(v[3])[i]
                    );
                }
            }
        }
    }

    #[test]
    fn class_shortcut_matches_full_enumeration(seed in any::<u64>()) {
        let p = random::polytope(&mut rng(seed));
        prop_assert_eq!(edge_classes(&p).unwrap(), edge_classes_of(&p.face_structure().unwrap()));
    }

    #[test]
    fn flips_and_line_order_do_not_change_the_factorization(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random::polytope(&mut r);
        let mask: Vec<u8> = (0..p.ambient_dim()).map(|_| r.gen_range(0..=1)).collect();
        let flipped = p.xor(&mask);
        prop_assert_eq!(flipped.xor(&mask), p.clone());
        let (normalized, m) = flip_normalize(&p);
        prop_assert_eq!(normalized.xor(&m), p.clone());
        prop_assert_eq!(sorted_blocks(&flipped), sorted_blocks(&p));

        let mut lines: Vec<&str> = Vec::new();
        let text = p.to_vtx();
        lines.extend(text.lines().skip(1));
        lines.reverse();
        let reordered = format!("{}\n{}\n", text.lines().next().unwrap(), lines.join("\n"));
        prop_assert_eq!(Polytope01::parse(&reordered).unwrap(), p);
    }

    #[test]
    fn coordinate_permutations_permute_blocks(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random::polytope(&mut r);
        let n = p.ambient_dim();
        let mut perm: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut r);
        let q = p.permute_coordinates(&perm);
        // Coordinate i of q is coordinate perm[i] of p.
        let mut mapped: Vec<Vec<usize>> = sorted_blocks(&q)
            .into_iter()
            .map(|b| {
                let mut b: Vec<usize> = b.into_iter().map(|i| perm[i]).collect();
                b.sort_unstable();
                b
            })
            .collect();
        mapped.sort();
        prop_assert_eq!(mapped, sorted_blocks(&p));
    }

    #[test]
    fn factor_counts_add_under_products(a in any::<u64>(), b in any::<u64>()) {
        let p = random::polytope(&mut rng(a));
        let q = random::polytope(&mut rng(b));
        let k = |x: &Polytope01| factorize(x).unwrap().k();
        prop_assert_eq!(k(&p.product(&q)), k(&p) + k(&q));
    }

    #[test]
    fn feasibility_answers_carry_valid_certificates(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (rows, cols) = (r.gen_range(1..5), r.gen_range(1..4));
        let mut a = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                a.set(i, j, Rational::from_int(r.gen_range(-3..=3)));
            }
        }
        let b: Vec<Rational> = (0..rows).map(|_| Rational::from_int(r.gen_range(-3..=3))).collect();
        let strict: BTreeSet<usize> = (0..rows).filter(|_| r.gen_bool(0.3)).collect();
        match lp_feasible(&a, &b, &strict).unwrap() {
            Feasibility::Feasible(x) => {
                prop_assert!(polyfactor::exactla::satisfies(&a, &b, &strict, &x));
            }
            Feasibility::Infeasible(cert) => prop_assert!(cert.verify(&a, &b, &strict)),
        }
        prop_assert_eq!(a.rank() + a.kernel_basis().len(), cols);
    }
}

/// Filters whose difference induces a connected comparability graph.
fn connected_difference(p: &Poset, small: u64, big: u64) -> bool {
    let diff: Vec<usize> = (0..p.len()).filter(|&i| (big & !small) >> i & 1 == 1).collect();
    if diff.is_empty() {
        return false;
    }
    let mut seen = vec![diff[0]];
    let mut stack = vec![diff[0]];
    while let Some(a) = stack.pop() {
        for &b in &diff {
            if !seen.contains(&b) && (p.less(a, b) || p.less(b, a)) {
                seen.push(b);
                stack.push(b);
            }
        }
    }
    seen.len() == diff.len()
}

proptest! {
    #![proptest_config(config(32))]

    #[test]
    fn nested_filters_with_connected_differences_span_triangles(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random::poset(&mut r);
        prop_assume!(p.comparability_graph().is_connected());
        let l = Limits::default();
        let op = p.order_polytope(&l).unwrap();
        let filters = p.filters(&l).unwrap();
        let n = p.len();
        let mut checked = 0;
        for &f1 in &filters {
            for &f2 in &filters {
                if f1 & f2 != f1 || f1 == f2 || !connected_difference(&p, f1, f2) {
                    continue;
                }
                for &f3 in &filters {
                    if f2 & f3 != f2 || f2 == f3 {
                        continue;
                    }
                    if !connected_difference(&p, f2, f3) || !connected_difference(&p, f1, f3) {
                        continue;
                    }
                    let mut s: Vec<usize> = [f1, f2, f3]
                        .iter()
                        .map(|&f| op.index_of(&mask_vertex(n, f)).unwrap())
                        .collect();
                    s.sort_unstable();
                    prop_assert_eq!(op.smallest_face(&s), s);
                    checked += 1;
                    if checked > 20 {
                        return Ok(());
                    }
                }
            }
        }
    }

    #[test]
    fn minimal_nonfaces_give_triangles(seed in any::<u64>()) {
        let c: SimplicialComplex = random::complex(&mut rng(seed));
        let l = Limits::default();
        let pd = c.antiblocking_polytope(&l).unwrap();
        for nf in c.minimal_nonfaces(&l).unwrap() {
            let elems: Vec<usize> = (0..64).filter(|&i| nf >> i & 1 == 1).collect();
            for (x, &i) in elems.iter().enumerate() {
                for &j in &elems[x + 1..] {
                    let sets = [nf & !(1 << i) & !(1 << j), nf & !(1 << i), nf & !(1 << j)];
                    let mut s: Vec<usize> = sets
                        .iter()
                        .map(|&m| pd.index_of(&c.indicator(m)).unwrap())
                        .collect();
                    s.sort_unstable();
                    prop_assert_eq!(pd.smallest_face(&s), s);
                }
            }
        }
    }

    #[test]
    fn chain_polytope_is_the_stable_set_polytope_of_the_comparability_graph(seed in any::<u64>()) {
        let p = random::poset(&mut rng(seed));
        let l = Limits::default();
        prop_assert_eq!(
            p.chain_polytope(&l).unwrap(),
            p.comparability_graph().stable_set_polytope(&l).unwrap()
        );
    }

    #[test]
    fn facet_polytope_of_the_independence_complex_is_the_base_polytope(seed in any::<u64>()) {
        let (_, m) = random::graphic_matroid(&mut rng(seed));
        prop_assert_eq!(
            m.independence_complex().pure_face_polytope().unwrap(),
            m.base_polytope().unwrap()
        );
    }

    #[test]
    fn simple_polytopes_factor_into_simplices(seed in any::<u64>()) {
        let (p, _) = random::simplex_product(&mut rng(seed));
        prop_assert!(p.is_simple());
        for f in factorize(&p).unwrap().factors {
            prop_assert_eq!(f.num_vertices(), f.dimension() + 1);
        }
    }

    #[test]
    fn indecomposable_newton_polytope_means_no_variable_split(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=6);
        let vars: Vec<usize> = (0..n).collect();
        let f = random::multiaffine_on(&mut r, n, &vars);
        let (content, reduced) = f.monomial_content();
        let k = factorize(&reduced.newton_polytope()).unwrap().k();
        if content.iter().all(|&c| c == 0) && k == 1 {
            prop_assert!(!splits_over_some_bipartition(&f));
        }
        let out = factor_multiaffine(&f).unwrap();
        prop_assert_eq!(expand_product(&out.factors, &out.content, &out.unit).unwrap(), f);
        // A Newton split that does not lift leaves a decomposable Newton
        // polytope behind, and the result says so.
        let newton_k: Vec<usize> = out
            .factors
            .iter()
            .map(|g| factorize(&g.newton_polytope()).unwrap().k())
            .collect();
        prop_assert_eq!(out.coarsened, newton_k.iter().any(|&k| k > 1));
    }
}
