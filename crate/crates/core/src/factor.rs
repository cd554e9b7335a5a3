//! Edge equivalence classes, the deformation-cube certificate, summand
//! reconstruction along graph paths, and the Cartesian factorization of a
//! 0/1-polytope into indecomposable factors.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;

use crate::exactla::{solve_standard, IntegerEchelon, Matrix, Rational, StandardOutcome};
use crate::polytope::{confirm_two_face, two_face_candidate, FaceKind, FaceStructure, Polytope01, PolytopeError, TwoFace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FactorError {
    #[error("a single point is not a proper polytope")]
    Improper,
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

fn inconsistent<T>(msg: impl Into<String>) -> Result<T, FactorError> {
    Err(FactorError::Inconsistent(msg.into()))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
}

/// Partition of the edge set (by edge id) into equivalence classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeClassPartition {
    /// Each class sorted; classes ordered by their smallest edge.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl EdgeClassPartition {
    pub fn k(&self) -> usize {
        self.classes.len()
    }

    pub fn indicator(&self, class: usize) -> Vec<bool> {
        self.class_of.iter().map(|&c| c == class).collect()
    }
}

/// The edge pairs a 2-face forces into one class: all sides of a triangle,
/// opposite sides of a parallelogram.
fn forced_unions(fs: &FaceStructure, face: &TwoFace) -> [(usize, usize); 2] {
    let id = |a: usize, b: usize| fs.edge_id(a, b).expect("2-face edge is a graph edge");
    let v = &face.vertices;
    match face.kind {
        FaceKind::Triangle => [(id(v[0], v[1]), id(v[1], v[2])), (id(v[1], v[2]), id(v[2], v[0]))],
        FaceKind::Parallelogram => [(id(v[0], v[1]), id(v[3], v[2])), (id(v[1], v[2]), id(v[0], v[3]))],
    }
}

fn partition_from(mut uf: UnionFind) -> EdgeClassPartition {
    let m = uf.parent.len();
    // Roots are the smallest member, so first-seen order is canonical.
    let mut class_of = vec![usize::MAX; m];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut root_class = vec![usize::MAX; m];
    for e in 0..m {
        let r = uf.find(e);
        if root_class[r] == usize::MAX {
            root_class[r] = classes.len();
            classes.push(Vec::new());
        }
        class_of[e] = root_class[r];
        classes[root_class[r]].push(e);
    }
    EdgeClassPartition { classes, class_of }
}

/// Classes from a fully enumerated set of 2-faces.
pub fn edge_classes_of(fs: &FaceStructure) -> EdgeClassPartition {
    let mut uf = UnionFind::new(fs.edges.len());
    for face in &fs.two_faces {
        for (e, f) in forced_unions(fs, face) {
            uf.union(e, f);
        }
    }
    partition_from(uf)
}

/// Classes from the graph alone. Candidate 2-faces whose forced unions
/// already hold are skipped without the face test; the partition is the
/// same as with full enumeration.
pub fn edge_classes_from_skeleton(p: &Polytope01, fs: &FaceStructure) -> Result<EdgeClassPartition, FactorError> {
    let mut uf = UnionFind::new(fs.edges.len());
    for b in 0..p.num_vertices() {
        let nb = &fs.neighbors[b];
        for (i, &a) in nb.iter().enumerate() {
            for &c in &nb[i + 1..] {
                let Some(face) = two_face_candidate(p, &fs.neighbors, a, b, c) else {
                    continue;
                };
                let pairs = forced_unions(fs, &face);
                if pairs.iter().all(|&(e, f)| uf.find(e) == uf.find(f)) {
                    continue;
                }
                if confirm_two_face(p, &face)? {
                    for (e, f) in pairs {
                        uf.union(e, f);
                    }
                }
            }
        }
    }
    Ok(partition_from(uf))
}

pub fn edge_classes(p: &Polytope01) -> Result<EdgeClassPartition, FactorError> {
    edge_classes_from_skeleton(p, &p.skeleton())
}

/// One scalar equation per coordinate and 2-face, over edge-indexed columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleSystem {
    pub num_edges: usize,
    /// Rows with entries in {-1, 0, 1}. All-zero rows are omitted.
    pub rows: Vec<Vec<i64>>,
}

impl CycleSystem {
    pub fn matrix(&self) -> Matrix {
        Matrix::from_i64_rows(self.num_edges, &self.rows)
    }

    pub fn rank(&self) -> usize {
        let mut ech = IntegerEchelon::new(self.num_edges);
        for row in &self.rows {
            ech.insert(row.iter().map(|&x| BigInt::from(x)).collect());
            if ech.rank() == self.num_edges {
                break;
            }
        }
        ech.rank()
    }

    pub fn kernel_dim(&self) -> usize {
        self.num_edges - self.rank()
    }

    /// Whether `λ = 1_S` satisfies every cycle equation.
    pub fn annihilates_indicator(&self, indicator: &[bool]) -> bool {
        self.rows.iter().all(|row| {
            row.iter()
                .zip(indicator)
                .filter(|(_, &on)| on)
                .map(|(x, _)| x)
                .sum::<i64>()
                == 0
        })
    }
}

pub fn cycle_system_of(p: &Polytope01, fs: &FaceStructure) -> CycleSystem {
    let n = p.ambient_dim();
    let m = fs.edges.len();
    let mut rows = Vec::new();
    for face in &fs.two_faces {
        let mut block = vec![vec![0i64; m]; n];
        for (a, b) in face.cycle_edges() {
            let e = fs.edge_id(a, b).expect("2-face edge is a graph edge");
            for (i, row) in block.iter_mut().enumerate() {
                row[e] = p.vertex(b)[i] as i64 - p.vertex(a)[i] as i64;
            }
        }
        rows.extend(block.into_iter().filter(|r| r.iter().any(|&x| x != 0)));
    }
    CycleSystem { num_edges: m, rows }
}

pub fn cycle_system(p: &Polytope01) -> Result<CycleSystem, FactorError> {
    let fs = p.face_structure()?;
    Ok(cycle_system_of(p, &fs))
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct DeformationReport {
    pub num_edges: usize,
    pub num_triangles: usize,
    pub num_parallelograms: usize,
    pub k: usize,
    pub kernel_dim: usize,
    pub class_indicators_in_kernel: bool,
    pub class_indicators_independent: bool,
}

impl DeformationReport {
    pub fn cube_verified(&self) -> bool {
        self.class_indicators_in_kernel
            && self.class_indicators_independent
            && self.kernel_dim == self.k
    }
}

pub fn deformation_report(p: &Polytope01, fs: &FaceStructure) -> DeformationReport {
    let classes = edge_classes_of(fs);
    let system = cycle_system_of(p, fs);
    let in_kernel = (0..classes.k()).all(|c| system.annihilates_indicator(&classes.indicator(c)));
    let mut ech = IntegerEchelon::new(fs.edges.len());
    let independent = (0..classes.k()).all(|c| {
        ech.insert(
            classes
                .indicator(c)
                .into_iter()
                .map(|b| BigInt::from(b as i64))
                .collect(),
        )
    });
    DeformationReport {
        num_edges: fs.edges.len(),
        num_triangles: fs.num_triangles(),
        num_parallelograms: fs.num_parallelograms(),
        k: classes.k(),
        kernel_dim: system.kernel_dim(),
        class_indicators_in_kernel: in_kernel,
        class_indicators_independent: independent,
    }
}

/// Checks that the solution space of the cycle equations is spanned by the
/// class indicators: each indicator is a solution, they are independent, and
/// the kernel dimension equals the number of classes.
pub fn verify_deformation_cube(p: &Polytope01) -> Result<DeformationReport, FactorError> {
    let fs = p.face_structure()?;
    let report = deformation_report(p, &fs);
    if !report.cube_verified() {
        return inconsistent(format!("deformation cube check failed: {report:?}"));
    }
    Ok(report)
}

/// XOR-flips coordinates so that the lexicographically smallest vertex
/// becomes the origin. Returns the flipped polytope and the mask.
pub fn flip_normalize(p: &Polytope01) -> (Polytope01, Vec<u8>) {
    let mask = p.vertex(0).to_vec();
    (p.xor(&mask), mask)
}

/// Reconstructs the summand whose edge-deformation vector is `1_S`, by
/// walking the graph breadth-first from the origin. `p` must contain 0.
pub fn summand_from_class(
    p: &Polytope01,
    fs: &FaceStructure,
    class: &[usize],
) -> Result<Polytope01, FactorError> {
    let n = p.ambient_dim();
    let root = p
        .index_of(&vec![0u8; n])
        .ok_or_else(|| FactorError::Inconsistent("polytope is not flip-normalized".into()))?;
    let in_class: HashSet<usize> = class.iter().copied().collect();
    let step = |from: usize, to: usize, q: &[i64]| -> Vec<i64> {
        let e = fs.edge_id(from, to).expect("graph edge");
        if in_class.contains(&e) {
            q.iter()
                .zip(p.vertex(to).iter().zip(p.vertex(from)))
                .map(|(x, (&b, &a))| x + b as i64 - a as i64)
                .collect()
        } else {
            q.to_vec()
        }
    };
    let mut q: Vec<Option<Vec<i64>>> = vec![None; p.num_vertices()];
    q[root] = Some(vec![0; n]);
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        let qu = q[u].clone().unwrap();
        for &w in &fs.neighbors[u] {
            if q[w].is_none() {
                q[w] = Some(step(u, w, &qu));
                queue.push_back(w);
            }
        }
    }
    let q: Vec<Vec<i64>> = q
        .into_iter()
        .map(|x| x.ok_or_else(|| FactorError::Inconsistent("graph is disconnected".into())))
        .collect::<Result<_, _>>()?;
    for e in &fs.edges {
        if step(e.u, e.v, &q[e.u]) != q[e.v] {
            return inconsistent(format!("path dependence on edge ({}, {})", e.u, e.v));
        }
    }
    let mut pts = BTreeSet::new();
    for v in q {
        if v.iter().any(|&x| x != 0 && x != 1) {
            return inconsistent(format!("summand vertex {v:?} is not a 0/1 point"));
        }
        pts.insert(v.into_iter().map(|x| x as u8).collect::<Vec<u8>>());
    }
    Ok(Polytope01::new(n, pts.into_iter().collect())?)
}

/// The unique decomposition of a 0/1-polytope into a product of proper
/// indecomposable 0/1-polytopes on disjoint coordinate blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub n: usize,
    /// Coordinates constant over the polytope, with their value.
    pub fixed: Vec<(usize, u8)>,
    /// Disjoint coordinate blocks, each sorted, ordered by smallest coordinate.
    pub blocks: Vec<Vec<usize>>,
    /// Projection of the polytope onto each block, in original coordinates.
    pub factors: Vec<Polytope01>,
    /// Minkowski summands of the flip-normalized polytope, aligned with `blocks`.
    pub summands: Vec<Polytope01>,
    pub flip_mask: Vec<u8>,
}

impl Factorization {
    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    /// All points obtained by combining one vertex from each factor with the
    /// fixed coordinates pinned.
    pub fn product_points(&self) -> Vec<Vec<u8>> {
        let mut base = vec![0u8; self.n];
        for &(i, v) in &self.fixed {
            base[i] = v;
        }
        let mut acc = vec![base];
        for (block, factor) in self.blocks.iter().zip(&self.factors) {
            let mut next = Vec::with_capacity(acc.len() * factor.num_vertices());
            for partial in &acc {
                for fv in factor.vertices() {
                    let mut x = partial.clone();
                    for (&c, &b) in block.iter().zip(fv) {
                        x[c] = b;
                    }
                    next.push(x);
                }
            }
            acc = next;
        }
        acc
    }
}

pub fn factorize(p: &Polytope01) -> Result<Factorization, FactorError> {
    let n = p.ambient_dim();
    let (normalized, mask) = flip_normalize(p);
    let fixed = p.constant_coordinates();
    if p.num_vertices() == 1 {
        return Ok(Factorization {
            n,
            fixed,
            blocks: Vec::new(),
            factors: Vec::new(),
            summands: Vec::new(),
            flip_mask: mask,
        });
    }
    let fs = normalized.skeleton();
    let classes = edge_classes_from_skeleton(&normalized, &fs)?;
    let mut parts: Vec<(Vec<usize>, Polytope01)> = Vec::with_capacity(classes.k());
    let mut covered = vec![false; n];
    for class in &classes.classes {
        let summand = summand_from_class(&normalized, &fs, class)?;
        if summand.num_vertices() < 2 {
            return inconsistent("edge class produced a point summand");
        }
        let support: Vec<usize> = (0..n)
            .filter(|&i| summand.vertices().iter().any(|v| v[i] == 1))
            .collect();
        for &i in &support {
            if covered[i] {
                return inconsistent(format!("summand supports overlap at coordinate {i}"));
            }
            covered[i] = true;
        }
        parts.push((support, summand));
    }
    let fixed_set: HashSet<usize> = fixed.iter().map(|&(i, _)| i).collect();
    for (i, &c) in covered.iter().enumerate() {
        if c == fixed_set.contains(&i) {
            return inconsistent(format!(
                "coordinate {i} is neither fixed nor in exactly one block"
            ));
        }
    }
    parts.sort_by(|a, b| a.0.cmp(&b.0));
    let (blocks, summands): (Vec<_>, Vec<_>) = parts.into_iter().unzip();
    let factors: Vec<Polytope01> = blocks.iter().map(|b| p.project(b)).collect();
    let f = Factorization {
        n,
        fixed,
        blocks,
        factors,
        summands,
        flip_mask: mask,
    };
    check_product(p, &f)?;
    Ok(f)
}

fn check_product(p: &Polytope01, f: &Factorization) -> Result<(), FactorError> {
    let count: usize = f.factors.iter().map(Polytope01::num_vertices).product();
    if count != p.num_vertices() {
        return inconsistent(format!(
            "vertex count {} differs from product of factor sizes {count}",
            p.num_vertices()
        ));
    }
    let prod: HashSet<Vec<u8>> = f.product_points().into_iter().collect();
    let orig: HashSet<Vec<u8>> = p.vertices().iter().cloned().collect();
    if prod != orig {
        return inconsistent("factor product differs from the vertex set");
    }
    Ok(())
}

/// True iff there is exactly one edge class. Points are rejected as improper.
pub fn is_indecomposable(p: &Polytope01) -> Result<bool, FactorError> {
    if p.num_vertices() == 1 {
        return Err(FactorError::Improper);
    }
    Ok(edge_classes(p)?.k() == 1)
}

/// Brute-force check that `normalized` equals the Minkowski sum of
/// `summands`: the extreme points of all pairwise sums must be exactly the
/// vertices of `normalized`.
pub fn verify_minkowski_sum(normalized: &Polytope01, summands: &[Polytope01]) -> bool {
    let n = normalized.ambient_dim();
    if summands.iter().any(|s| s.ambient_dim() != n) {
        return false;
    }
    let zero = vec![0u8; n];
    if summands.iter().any(|s| s.index_of(&zero).is_none()) {
        return false;
    }
    let mut sums: BTreeSet<Vec<i64>> = BTreeSet::from([vec![0i64; n]]);
    for s in summands {
        let mut next = BTreeSet::new();
        for x in &sums {
            for v in s.vertices() {
                next.insert(x.iter().zip(v).map(|(a, &b)| a + b as i64).collect::<Vec<i64>>());
            }
        }
        sums = next;
    }
    let pts: Vec<Vec<i64>> = sums.into_iter().collect();
    let extreme: BTreeSet<Vec<i64>> = (0..pts.len())
        .filter(|&i| !in_hull_of_others(&pts, i))
        .map(|i| pts[i].clone())
        .collect();
    let target: BTreeSet<Vec<i64>> = normalized
        .vertices()
        .iter()
        .map(|v| v.iter().map(|&b| b as i64).collect())
        .collect();
    extreme == target
}

fn in_hull_of_others(pts: &[Vec<i64>], i: usize) -> bool {
    let others: Vec<&Vec<i64>> = pts
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, p)| p)
        .collect();
    if others.is_empty() {
        return false;
    }
    let n = pts[i].len();
    let mut a = Matrix::zeros(n + 1, others.len());
    for (j, p) in others.iter().enumerate() {
        for (r, &x) in p.iter().enumerate() {
            a.set(r, j, Rational::from_int(x));
        }
        a.set(n, j, Rational::one());
    }
    let mut b: Vec<Rational> = pts[i].iter().map(|&x| Rational::from_int(x)).collect();
    b.push(Rational::one());
    let c = vec![Rational::zero(); others.len()];
    matches!(
        solve_standard(&c, &a, &b),
        Ok(StandardOutcome::Optimal { .. })
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::catalog::*;

    fn poly(text: &str) -> Polytope01 {
        Polytope01::parse(text).unwrap()
    }

    #[test]
    fn class_counts() {
        assert_eq!(edge_classes(&triangle()).unwrap().k(), 1);
        assert_eq!(edge_classes(&square()).unwrap().k(), 2);
        assert_eq!(edge_classes(&cube(3)).unwrap().k(), 3);
    }

    #[test]
    fn square_classes_pair_opposite_sides() {
        let sq = square();
        let fs = sq.face_structure().unwrap();
        let classes = edge_classes_of(&fs);
        for class in &classes.classes {
            assert_eq!(class.len(), 2);
            let dirs: HashSet<Vec<i64>> = class
                .iter()
                .map(|&e| {
                    let ed = fs.edges[e];
                    (0..2)
                        .map(|i| sq.vertex(ed.v)[i] as i64 - sq.vertex(ed.u)[i] as i64)
                        .collect()
                })
                .collect();
            assert_eq!(dirs.len(), 1);
        }
    }

    #[test]
    fn cycle_system_kernels() {
        let sq = cycle_system(&square()).unwrap();
        assert_eq!(sq.num_edges, 4);
        assert_eq!(sq.kernel_dim(), 2);
        let tri = cycle_system(&triangle()).unwrap();
        assert_eq!(tri.kernel_dim(), 1);
        let seg = cycle_system(&segment()).unwrap();
        assert!(seg.rows.is_empty());
        assert_eq!(seg.kernel_dim(), 1);
    }

    #[test]
    fn cycle_system_matches_rational_kernel() {
        let cs = cycle_system(&cube(3)).unwrap();
        assert_eq!(cs.matrix().kernel_basis().len(), cs.kernel_dim());
        assert_eq!(cs.kernel_dim(), 3);
    }

    #[test]
    fn deformation_cube_examples() {
        let r = verify_deformation_cube(&square()).unwrap();
        assert_eq!((r.k, r.kernel_dim), (2, 2));
        let r = verify_deformation_cube(&triangle()).unwrap();
        assert_eq!((r.k, r.kernel_dim), (1, 1));
        let r = verify_deformation_cube(&birkhoff(3)).unwrap();
        assert_eq!((r.k, r.kernel_dim), (1, 1));
    }

    #[test]
    fn flip_examples() {
        let (p, mask) = flip_normalize(&square());
        assert_eq!(mask, vec![0, 0]);
        assert_eq!(p, square());
        let (p, mask) = flip_normalize(&poly("2 2\n10\n11"));
        assert_eq!(mask, vec![1, 0]);
        assert_eq!(p, poly("2 2\n00\n01"));
        let (p, mask) = flip_normalize(&birkhoff(2));
        assert_eq!(mask, vec![0, 1, 1, 0]);
        assert_eq!(p, poly("4 2\n0000\n1111"));
    }

    #[test]
    fn flip_is_an_involution() {
        let p = birkhoff(3);
        let (q, mask) = flip_normalize(&p);
        assert_eq!(q.xor(&mask), p);
    }

    #[test]
    fn summand_examples() {
        let sq = square();
        let fs = sq.face_structure().unwrap();
        let classes = edge_classes_of(&fs);
        let mut summands: Vec<Polytope01> = classes
            .classes
            .iter()
            .map(|c| summand_from_class(&sq, &fs, c).unwrap())
            .collect();
        summands.sort_by_key(|s| s.vertices().to_vec());
        assert_eq!(summands[0], poly("2 2\n00\n01"));
        assert_eq!(summands[1], poly("2 2\n00\n10"));

        let t = triangle();
        let fs = t.face_structure().unwrap();
        let all: Vec<usize> = (0..fs.edges.len()).collect();
        assert_eq!(summand_from_class(&t, &fs, &all).unwrap(), t);
    }

    #[test]
    fn factorize_examples() {
        let f = factorize(&square()).unwrap();
        assert_eq!(f.blocks, vec![vec![0], vec![1]]);
        assert!(f.factors.iter().all(|x| *x == segment()));
        let f = factorize(&triangle()).unwrap();
        assert_eq!(f.blocks, vec![vec![0, 1]]);
        // Stable sets of the graph with edge {1,2} and isolated vertex 3.
        let stab = poly("3 6\n000\n100\n010\n001\n101\n011");
        let f = factorize(&stab).unwrap();
        assert_eq!(f.blocks, vec![vec![0, 1], vec![2]]);
        assert_eq!(f.factors[0], triangle());
        assert_eq!(f.factors[1], segment());
    }

    #[test]
    fn point_factorizes_to_nothing() {
        let p = poly("3 1\n101");
        let f = factorize(&p).unwrap();
        assert_eq!(f.k(), 0);
        assert_eq!(f.fixed, vec![(0, 1), (1, 0), (2, 1)]);
        assert_eq!(is_indecomposable(&p), Err(FactorError::Improper));
    }

    #[test]
    fn indecomposable_examples() {
        assert!(is_indecomposable(&segment()).unwrap());
        assert!(!is_indecomposable(&square()).unwrap());
        assert!(is_indecomposable(&birkhoff(3)).unwrap());
    }

    #[test]
    fn minkowski_examples() {
        let segs = [poly("2 2\n00\n01"), poly("2 2\n00\n10")];
        assert!(verify_minkowski_sum(&square(), &segs));
        assert!(verify_minkowski_sum(&triangle(), &[triangle()]));
        let axes: Vec<Polytope01> = (0..3)
            .map(|i| {
                let mut e = vec![0u8; 3];
                e[i] = 1;
                Polytope01::new(3, vec![vec![0; 3], e]).unwrap()
            })
            .collect();
        assert!(verify_minkowski_sum(&cube(3), &axes));
        assert!(!verify_minkowski_sum(&triangle(), &segs));
    }

    #[test]
    fn fixed_coordinates_keep_original_values() {
        let p = poly("3 2\n110\n111");
        let f = factorize(&p).unwrap();
        assert_eq!(f.fixed, vec![(0, 1), (1, 1)]);
        assert_eq!(f.blocks, vec![vec![2]]);
    }
}
