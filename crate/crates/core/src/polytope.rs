//! 0/1-polytopes given by their vertex sets, and the face queries the
//! factorization needs: dimension, graph, smallest faces and 2-faces.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;

use crate::exactla::{solve_standard, Matrix, Rational, StandardOutcome};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolytopeError {
    #[error("line {line}: malformed line: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("line {line}: expected {expected} coordinates, found {found}")]
    WrongWidth {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: duplicate vertex {vertex}")]
    DuplicateVertex { line: usize, vertex: String },
    #[error("polytope has no vertices")]
    NoVertices,
    #[error("header declares {declared} vertices but {found} were given")]
    CountMismatch { declared: usize, found: usize },
    #[error("found a 2-face with {0} vertices; input is not a 0/1 point set")]
    InvalidTwoFace(usize),
}

/// Convex hull of a nonempty set of distinct 0/1 points. Every point is a
/// vertex. Vertices are kept in lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polytope01 {
    n: usize,
    vertices: Vec<Vec<u8>>,
    /// Vertices packed into `words()` little-endian 64-bit words each.
    bits: Vec<u64>,
    /// Vertex indices sorted by packed row, for exact lookups.
    by_bits: Vec<usize>,
}

impl fmt::Debug for Polytope01 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices.iter().map(|v| bitstring(v)).collect();
        write!(f, "Polytope01(n={}, [{}])", self.n, vs.join(", "))
    }
}

pub fn bitstring(v: &[u8]) -> String {
    v.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect()
}

/// An edge between two vertex indices, stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "edge endpoints must differ");
        Edge {
            u: a.min(b),
            v: a.max(b),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FaceKind {
    Triangle,
    Parallelogram,
}

/// A 2-dimensional face. Parallelograms are stored in cyclic order
/// `a, b, c, d` with `a + c = b + d`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwoFace {
    pub kind: FaceKind,
    pub vertices: Vec<usize>,
}

impl TwoFace {
    /// Edges of the face in cyclic order.
    pub fn cycle_edges(&self) -> Vec<(usize, usize)> {
        let k = self.vertices.len();
        (0..k)
            .map(|i| (self.vertices[i], self.vertices[(i + 1) % k]))
            .collect()
    }

    fn canonical(kind: FaceKind, mut cycle: Vec<usize>) -> Self {
        let k = cycle.len();
        let start = (0..k).min_by_key(|&i| cycle[i]).unwrap();
        cycle.rotate_left(start);
        if cycle[k - 1] < cycle[1] {
            cycle[1..].reverse();
        }
        TwoFace {
            kind,
            vertices: cycle,
        }
    }
}

impl Polytope01 {
    /// Validates and canonicalizes a vertex list.
    pub fn new(n: usize, vertices: Vec<Vec<u8>>) -> Result<Self, PolytopeError> {
        if vertices.is_empty() {
            return Err(PolytopeError::NoVertices);
        }
        let mut seen = HashSet::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if v.len() != n {
                return Err(PolytopeError::WrongWidth {
                    line: i + 1,
                    expected: n,
                    found: v.len(),
                });
            }
            if let Some(pos) = v.iter().position(|&b| b > 1) {
                return Err(PolytopeError::MalformedLine {
                    line: i + 1,
                    reason: format!("coordinate {} is not 0 or 1", pos + 1),
                });
            }
            if !seen.insert(v.clone()) {
                return Err(PolytopeError::DuplicateVertex {
                    line: i + 1,
                    vertex: bitstring(v),
                });
            }
        }
        let mut vertices = vertices;
        vertices.sort();
        let words = n.div_ceil(64).max(1);
        let mut bits = vec![0u64; words * vertices.len()];
        for (j, v) in vertices.iter().enumerate() {
            for (i, &b) in v.iter().enumerate() {
                bits[j * words + i / 64] |= (b as u64) << (i % 64);
            }
        }
        let mut by_bits: Vec<usize> = (0..vertices.len()).collect();
        by_bits.sort_by(|&x, &y| bits[x * words..(x + 1) * words].cmp(&bits[y * words..(y + 1) * words]));
        Ok(Polytope01 {
            n,
            vertices,
            bits,
            by_bits,
        })
    }

    /// Builds a polytope from points, silently dropping duplicates.
    pub fn from_points(n: usize, points: impl IntoIterator<Item = Vec<u8>>) -> Result<Self, PolytopeError> {
        let set: BTreeSet<Vec<u8>> = points.into_iter().collect();
        Polytope01::new(n, set.into_iter().collect())
    }

    /// Parses the `.vtx` format: a header `n m`, then `m` lines of `n` bits.
    pub fn parse(text: &str) -> Result<Self, PolytopeError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
        let (hline, header) = lines
            .find(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
            .ok_or(PolytopeError::NoVertices)?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let parse_num = |s: &str| -> Result<usize, PolytopeError> {
            s.parse().map_err(|_| PolytopeError::MalformedLine {
                line: hline,
                reason: format!("expected a count, found `{s}`"),
            })
        };
        if fields.len() != 2 {
            return Err(PolytopeError::MalformedLine {
                line: hline,
                reason: "header must be `n m`".into(),
            });
        }
        let n = parse_num(fields[0])?;
        let m = parse_num(fields[1])?;
        if m == 0 {
            return Err(PolytopeError::NoVertices);
        }
        let mut vertices = Vec::with_capacity(m);
        let mut seen = HashSet::new();
        for (lineno, line) in lines {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut v = Vec::with_capacity(n);
            for ch in line.chars() {
                match ch {
                    '0' => v.push(0),
                    '1' => v.push(1),
                    _ => {
                        return Err(PolytopeError::MalformedLine {
                            line: lineno,
                            reason: format!("unexpected character `{ch}`"),
                        })
                    }
                }
            }
            if v.len() != n {
                return Err(PolytopeError::WrongWidth {
                    line: lineno,
                    expected: n,
                    found: v.len(),
                });
            }
            if !seen.insert(v.clone()) {
                return Err(PolytopeError::DuplicateVertex {
                    line: lineno,
                    vertex: line.to_string(),
                });
            }
            vertices.push(v);
        }
        if vertices.is_empty() {
            return Err(PolytopeError::NoVertices);
        }
        if vertices.len() != m {
            return Err(PolytopeError::CountMismatch {
                declared: m,
                found: vertices.len(),
            });
        }
        Polytope01::new(n, vertices)
    }

    /// Renders the canonical `.vtx` text.
    pub fn to_vtx(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.vertices.len());
        for v in &self.vertices {
            s.push_str(&bitstring(v));
            s.push('\n');
        }
        s
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Vec<u8>] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, i: usize) -> &[u8] {
        &self.vertices[i]
    }

    pub fn index_of(&self, v: &[u8]) -> Option<usize> {
        self.vertices.binary_search_by(|x| x.as_slice().cmp(v)).ok()
    }

    fn words(&self) -> usize {
        self.bits.len() / self.vertices.len()
    }

    fn row(&self, u: usize) -> &[u64] {
        let w = self.words();
        &self.bits[u * w..(u + 1) * w]
    }

    fn index_of_bits(&self, row: &[u64]) -> Option<usize> {
        self.by_bits
            .binary_search_by(|&u| self.row(u).cmp(row))
            .ok()
            .map(|k| self.by_bits[k])
    }

    /// Coordinates where some vertex of `s` differs from `s[0]`.
    fn varying_bits(&self, s: &[usize]) -> Vec<u64> {
        let base = self.row(s[0]);
        let mut varying = vec![0u64; base.len()];
        for &j in s {
            for ((x, a), b) in varying.iter_mut().zip(self.row(j)).zip(base) {
                *x |= a ^ b;
            }
        }
        varying
    }

    /// Coordinates on which every vertex agrees, with their common value.
    pub fn constant_coordinates(&self) -> Vec<(usize, u8)> {
        let first = &self.vertices[0];
        (0..self.n)
            .filter(|&i| self.vertices.iter().all(|v| v[i] == first[i]))
            .map(|i| (i, first[i]))
            .collect()
    }

    /// Coordinate projection onto `coords` (in the given order).
    pub fn project(&self, coords: &[usize]) -> Polytope01 {
        let pts = self
            .vertices
            .iter()
            .map(|v| coords.iter().map(|&c| v[c]).collect::<Vec<u8>>());
        Polytope01::from_points(coords.len(), pts).expect("projection of a valid polytope")
    }

    /// Applies `x_i ↦ x_i XOR mask_i` to every vertex.
    pub fn xor(&self, mask: &[u8]) -> Polytope01 {
        assert_eq!(mask.len(), self.n);
        let pts = self
            .vertices
            .iter()
            .map(|v| v.iter().zip(mask).map(|(a, b)| a ^ b).collect());
        Polytope01::new(self.n, pts.collect()).expect("xor is a bijection of the cube")
    }

    /// Cartesian product; coordinates of `other` follow those of `self`.
    pub fn product(&self, other: &Polytope01) -> Polytope01 {
        let mut pts = Vec::with_capacity(self.num_vertices() * other.num_vertices());
        for a in &self.vertices {
            for b in &other.vertices {
                pts.push([a.as_slice(), b.as_slice()].concat());
            }
        }
        Polytope01::new(self.n + other.n, pts).expect("product of distinct points")
    }

    /// Coordinate `i` of the result is coordinate `perm[i]` of `self`.
    pub fn permute_coordinates(&self, perm: &[usize]) -> Polytope01 {
        assert_eq!(perm.len(), self.n);
        let pts = self
            .vertices
            .iter()
            .map(|v| perm.iter().map(|&j| v[j]).collect())
            .collect();
        Polytope01::new(self.n, pts).expect("coordinate permutation is a bijection")
    }

    /// Pyramid with apex `e_{n+1}` over a copy of `self` at height 0.
    pub fn pyramid(&self) -> Polytope01 {
        let mut pts: Vec<Vec<u8>> = self
            .vertices
            .iter()
            .map(|v| [v.as_slice(), &[0]].concat())
            .collect();
        let mut apex = vec![0u8; self.n + 1];
        apex[self.n] = 1;
        pts.push(apex);
        Polytope01::new(self.n + 1, pts).expect("apex is a new point")
    }

    /// Rank of the difference set `{v - v_0}`.
    pub fn dimension(&self) -> usize {
        if self.vertices.len() == 1 {
            return 0;
        }
        let v0 = &self.vertices[0];
        let rows: Vec<Vec<i64>> = self.vertices[1..]
            .iter()
            .map(|v| v.iter().zip(v0).map(|(&a, &b)| a as i64 - b as i64).collect())
            .collect();
        Matrix::from_i64_rows(self.n, &rows).rank()
    }

    /// Vertices lying in the smallest subcube containing `s`: those agreeing
    /// with `s` on every coordinate where `s` is constant. Every convex
    /// representation of a point of `conv(S)` uses only these.
    fn subcube_candidates(&self, s: &[usize]) -> Vec<usize> {
        let varying = self.varying_bits(s);
        let base = self.row(s[0]);
        (0..self.vertices.len())
            .filter(|&u| {
                self.row(u)
                    .iter()
                    .zip(base)
                    .zip(&varying)
                    .all(|((a, b), m)| (a ^ b) & !m == 0)
            })
            .collect()
    }

    /// Maximizes `Σ_{u ∈ targets} λ_u` over the representations of
    /// `|S| · barycenter(S)` by the vertices in `cols`, using only the
    /// coordinates where `S` varies. Returns the optimum and the weights.
    fn max_weight_on(&self, cols: &[usize], s: &[usize], targets: &[bool]) -> (Rational, Vec<Rational>) {
        let first = &self.vertices[s[0]];
        let free: Vec<usize> = (0..self.n)
            .filter(|&i| s.iter().any(|&j| self.vertices[j][i] != first[i]))
            .collect();
        let mut a = Matrix::zeros(free.len() + 1, cols.len());
        for (j, &u) in cols.iter().enumerate() {
            for (r, &i) in free.iter().enumerate() {
                if self.vertices[u][i] == 1 {
                    a.set(r, j, Rational::one());
                }
            }
            a.set(free.len(), j, Rational::one());
        }
        let mut b: Vec<Rational> = free
            .iter()
            .map(|&i| Rational::from_int(s.iter().map(|&j| self.vertices[j][i] as i64).sum()))
            .collect();
        b.push(Rational::from_int(s.len() as i64));
        let c: Vec<Rational> = cols
            .iter()
            .map(|&u| if targets[u] { Rational::one() } else { Rational::zero() })
            .collect();
        match solve_standard(&c, &a, &b) {
            Ok(StandardOutcome::Optimal { value, point, .. }) => (value, point),
            other => panic!("barycenter program must be feasible and bounded, got {other:?}"),
        }
    }

    /// Whether `conv(S)` is a face, i.e. the barycenter of `S` admits no
    /// representation putting weight on a vertex outside `S`.
    pub fn is_face(&self, s: &[usize]) -> bool {
        assert!(!s.is_empty());
        let cols = self.subcube_candidates(s);
        let mut targets = vec![false; self.vertices.len()];
        for &u in &cols {
            targets[u] = true;
        }
        for &i in s {
            targets[i] = false;
        }
        if !cols.iter().any(|&u| targets[u]) {
            return true;
        }
        if let [v, w] = *s {
            // u and v + w - u share the midpoint of v and w.
            let diff: Vec<u64> = self.row(v).iter().zip(self.row(w)).map(|(a, b)| a ^ b).collect();
            let blocked = cols.iter().filter(|&&u| targets[u]).any(|&u| {
                let twin: Vec<u64> = self.row(u).iter().zip(&diff).map(|(a, d)| a ^ d).collect();
                self.index_of_bits(&twin).is_some()
            });
            if blocked {
                return false;
            }
        }
        self.max_weight_on(&cols, s, &targets).0.is_zero()
    }

    /// Vertex set of the smallest face containing `s`, in increasing order.
    pub fn smallest_face(&self, s: &[usize]) -> Vec<usize> {
        assert!(!s.is_empty(), "smallest_face needs a nonempty vertex set");
        let cols = self.subcube_candidates(s);
        let mut known = vec![true; self.vertices.len()];
        for &u in &cols {
            known[u] = false;
        }
        for &i in s {
            known[i] = true;
        }
        loop {
            let targets: Vec<bool> = known.iter().map(|k| !k).collect();
            if !targets.iter().any(|&t| t) {
                break;
            }
            let (value, point) = self.max_weight_on(&cols, s, &targets);
            if value.is_zero() {
                break;
            }
            for (&u, w) in cols.iter().zip(&point) {
                if w.is_positive() {
                    known[u] = true;
                }
            }
        }
        let inside: BTreeSet<usize> = cols.into_iter().collect();
        (0..known.len()).filter(|&i| known[i] && inside.contains(&i)).collect()
    }

    /// Whether `conv{v, w}` is an edge.
    pub fn adjacent(&self, v: usize, w: usize) -> bool {
        assert_ne!(v, w);
        self.is_face(&[v.min(w), v.max(w)])
    }

    /// All edges, in lexicographic order of `(u, v)`.
    pub fn graph(&self) -> Vec<Edge> {
        let m = self.vertices.len();
        let pairs: Vec<(usize, usize)> = (0..m)
            .flat_map(|u| (u + 1..m).map(move |v| (u, v)))
            .collect();
        pairs
            .par_iter()
            .filter(|&&(u, v)| self.is_face(&[u, v]))
            .map(|&(u, v)| Edge { u, v })
            .collect()
    }

    pub fn face_structure(&self) -> Result<FaceStructure, PolytopeError> {
        FaceStructure::compute(self)
    }

    /// Edges and neighbour lists without the 2-faces.
    pub fn skeleton(&self) -> FaceStructure {
        FaceStructure::skeleton(self)
    }

    pub fn two_faces(&self) -> Result<Vec<TwoFace>, PolytopeError> {
        Ok(self.face_structure()?.two_faces)
    }

    /// Every vertex has graph degree equal to the dimension.
    pub fn is_simple(&self) -> bool {
        let d = self.dimension();
        let mut degree = vec![0usize; self.vertices.len()];
        for e in self.graph() {
            degree[e.u] += 1;
            degree[e.v] += 1;
        }
        degree.iter().all(|&k| k == d)
    }
}

/// Graph and 2-faces of a polytope, computed once and shared by the
/// factorization pipeline.
#[derive(Clone, Debug)]
pub struct FaceStructure {
    pub edges: Vec<Edge>,
    pub neighbors: Vec<Vec<usize>>,
    pub edge_index: HashMap<Edge, usize>,
    pub two_faces: Vec<TwoFace>,
}

impl FaceStructure {
    pub fn compute(p: &Polytope01) -> Result<Self, PolytopeError> {
        let mut fs = FaceStructure::skeleton(p);
        fs.two_faces = discover_two_faces(p, &fs.neighbors)?;
        Ok(fs)
    }

    /// Graph only; `two_faces` is left empty.
    pub fn skeleton(p: &Polytope01) -> Self {
        let edges = p.graph();
        let mut neighbors = vec![Vec::new(); p.num_vertices()];
        for e in &edges {
            neighbors[e.u].push(e.v);
            neighbors[e.v].push(e.u);
        }
        for nb in neighbors.iter_mut() {
            nb.sort_unstable();
        }
        let edge_index = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        FaceStructure {
            edges,
            neighbors,
            edge_index,
            two_faces: Vec::new(),
        }
    }

    pub fn edge_id(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_index.get(&Edge::new(a, b)).copied()
    }

    pub fn num_triangles(&self) -> usize {
        self.two_faces
            .iter()
            .filter(|f| f.kind == FaceKind::Triangle)
            .count()
    }

    pub fn num_parallelograms(&self) -> usize {
        self.two_faces.len() - self.num_triangles()
    }
}

/// Seeds at every angle `a - b - c` of the graph. The fourth point
/// `d = a + c - b` completes a parallelogram when it is a vertex and the four
/// points form a face; otherwise the triple may be a triangle.
fn discover_two_faces(p: &Polytope01, neighbors: &[Vec<usize>]) -> Result<Vec<TwoFace>, PolytopeError> {
    let per_vertex: Vec<Result<Vec<TwoFace>, PolytopeError>> = (0..p.num_vertices())
        .into_par_iter()
        .map(|b| {
            let mut found = Vec::new();
            let nb = &neighbors[b];
            for (i, &a) in nb.iter().enumerate() {
                for &c in &nb[i + 1..] {
                    if let Some(face) = two_face_candidate(p, neighbors, a, b, c) {
                        if confirm_two_face(p, &face)? {
                            found.push(face);
                        }
                    }
                }
            }
            Ok(found)
        })
        .collect();
    let mut all = BTreeSet::new();
    for faces in per_vertex {
        all.extend(faces?);
    }
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(all.len());
    for f in all {
        let mut key = f.vertices.clone();
        key.sort_unstable();
        if seen.insert(key) {
            out.push(f);
        }
    }
    out.sort_by(|x, y| {
        let mut kx = x.vertices.clone();
        let mut ky = y.vertices.clone();
        kx.sort_unstable();
        ky.sort_unstable();
        kx.cmp(&ky)
    });
    Ok(out)
}

/// The only 2-face that can have angle `a - b - c`, before the face test.
/// Offered only from its smallest-index corner so that each face is tested
/// once.
pub(crate) fn two_face_candidate(
    p: &Polytope01,
    neighbors: &[Vec<usize>],
    a: usize,
    b: usize,
    c: usize,
) -> Option<TwoFace> {
    let (ra, rb, rc) = (p.row(a), p.row(b), p.row(c));
    // a + c - b leaves the cube exactly where a = c != b.
    let inside = (0..ra.len()).all(|k| !(ra[k] ^ rc[k]) & (ra[k] ^ rb[k]) == 0);
    let adjacent = |x: usize, y: usize| neighbors[x].binary_search(&y).is_ok();
    if inside {
        let fourth: Vec<u64> = (0..ra.len())
            .map(|k| (ra[k] & rc[k]) | ((ra[k] ^ rc[k]) & !rb[k]))
            .collect();
        if let Some(d) = p.index_of_bits(&fourth) {
            // conv{a, b, c} contains the midpoint of b and d, so it cannot be
            // a triangle face; only the parallelogram remains.
            if b > a.min(c).min(d) || !adjacent(a, d) || !adjacent(c, d) {
                return None;
            }
            return Some(TwoFace::canonical(FaceKind::Parallelogram, vec![a, b, c, d]));
        }
    }
    if b > a.min(c) || !adjacent(a, c) {
        return None;
    }
    Some(TwoFace::canonical(FaceKind::Triangle, vec![a, b, c]))
}

/// Runs the face test on a candidate from [`two_face_candidate`].
pub(crate) fn confirm_two_face(p: &Polytope01, face: &TwoFace) -> Result<bool, PolytopeError> {
    let mut s = face.vertices.clone();
    s.sort_unstable();
    if !p.is_face(&s) {
        return Ok(false);
    }
    check_two_face(p, face)?;
    Ok(true)
}

fn check_two_face(p: &Polytope01, f: &TwoFace) -> Result<(), PolytopeError> {
    match (f.kind, f.vertices.len()) {
        (FaceKind::Triangle, 3) => Ok(()),
        (FaceKind::Parallelogram, 4) => {
            let v = &f.vertices;
            let ok = (0..p.n).all(|i| {
                p.vertex(v[0])[i] + p.vertex(v[2])[i] == p.vertex(v[1])[i] + p.vertex(v[3])[i]
            });
            if ok {
                Ok(())
            } else {
                Err(PolytopeError::InvalidTwoFace(4))
            }
        }
        (_, k) => Err(PolytopeError::InvalidTwoFace(k)),
    }
}

/// Small named polytopes used by examples and tests.
pub mod catalog {
    use super::Polytope01;

    fn from_bits(n: usize, rows: &[&str]) -> Polytope01 {
        let pts = rows
            .iter()
            .map(|r| r.bytes().map(|b| b - b'0').collect::<Vec<u8>>())
            .collect();
        Polytope01::new(n, pts).expect("catalog polytope")
    }

    pub fn point(n: usize) -> Polytope01 {
        Polytope01::new(n, vec![vec![0; n]]).unwrap()
    }

    pub fn segment() -> Polytope01 {
        from_bits(1, &["0", "1"])
    }

    pub fn square() -> Polytope01 {
        from_bits(2, &["00", "01", "10", "11"])
    }

    pub fn triangle() -> Polytope01 {
        from_bits(2, &["00", "10", "01"])
    }

    /// `[0,1]^d`.
    pub fn cube(d: usize) -> Polytope01 {
        let pts = (0..1u32 << d)
            .map(|m| (0..d).map(|i| ((m >> (d - 1 - i)) & 1) as u8).collect())
            .collect();
        Polytope01::new(d, pts).unwrap()
    }

    /// `conv{0, e_1, ..., e_d}`.
    pub fn simplex(d: usize) -> Polytope01 {
        let mut pts = vec![vec![0u8; d]];
        for i in 0..d {
            let mut v = vec![0u8; d];
            v[i] = 1;
            pts.push(v);
        }
        Polytope01::new(d, pts).unwrap()
    }

    /// `conv{e_1, ..., e_d}`.
    pub fn standard_simplex(d: usize) -> Polytope01 {
        let pts = (0..d)
            .map(|i| {
                let mut v = vec![0u8; d];
                v[i] = 1;
                v
            })
            .collect();
        Polytope01::new(d, pts).unwrap()
    }

    /// `conv{e_i, 1 - e_i}`, a cross-polytope-like 0/1 set.
    pub fn cross_like(d: usize) -> Polytope01 {
        let mut pts = Vec::new();
        for i in 0..d {
            let mut v = vec![0u8; d];
            v[i] = 1;
            pts.push(v.clone());
            pts.push(v.iter().map(|b| 1 - b).collect());
        }
        Polytope01::from_points(d, pts).unwrap()
    }

    /// Birkhoff polytope: permutation matrices of order `k`, row-major.
    pub fn birkhoff(k: usize) -> Polytope01 {
        let mut pts = Vec::new();
        let mut perm: Vec<usize> = (0..k).collect();
        permutations(&mut perm, 0, &mut |p| {
            let mut v = vec![0u8; k * k];
            for (i, &j) in p.iter().enumerate() {
                v[i * k + j] = 1;
            }
            pts.push(v);
        });
        Polytope01::new(k * k, pts).unwrap()
    }

    fn permutations(p: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize])) {
        if i == p.len() {
            f(p);
            return;
        }
        for j in i..p.len() {
            p.swap(i, j);
            permutations(p, i + 1, f);
            p.swap(i, j);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::catalog::*;
    use super::*;

    fn idx(p: &Polytope01, bits: &str) -> usize {
        let v: Vec<u8> = bits.bytes().map(|b| b - b'0').collect();
        p.index_of(&v).unwrap()
    }

    #[test]
    fn parse_examples() {
        let t = Polytope01::parse("2 3\n00\n10\n01").unwrap();
        assert_eq!(t, triangle());
        let s = Polytope01::parse("1 2\n0\n1").unwrap();
        assert_eq!(s, segment());
        assert!(matches!(
            Polytope01::parse("2 2\n00\n00"),
            Err(PolytopeError::DuplicateVertex { line: 3, .. })
        ));
    }

    #[test]
    fn parse_errors_are_distinct() {
        assert!(matches!(
            Polytope01::parse("2 1\n0x"),
            Err(PolytopeError::MalformedLine { line: 2, .. })
        ));
        assert!(matches!(
            Polytope01::parse("2 1\n010"),
            Err(PolytopeError::WrongWidth { line: 2, expected: 2, found: 3 })
        ));
        assert!(matches!(Polytope01::parse("2 0\n"), Err(PolytopeError::NoVertices)));
        assert!(matches!(Polytope01::parse(""), Err(PolytopeError::NoVertices)));
        assert!(matches!(
            Polytope01::parse("two 1\n00"),
            Err(PolytopeError::MalformedLine { line: 1, .. })
        ));
    }

    #[test]
    fn vtx_round_trip_is_canonical() {
        let p = Polytope01::parse("2 3\n01\n10\n00\n").unwrap();
        assert_eq!(p.to_vtx(), "2 3\n00\n01\n10\n");
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(point(3).dimension(), 0);
        let sq = Polytope01::parse("3 4\n000\n100\n010\n110").unwrap();
        assert_eq!(sq.dimension(), 2);
        assert_eq!(birkhoff(3).dimension(), 4);
    }

    #[test]
    fn adjacency_examples() {
        let sq = square();
        assert!(sq.adjacent(idx(&sq, "00"), idx(&sq, "01")));
        assert!(!sq.adjacent(idx(&sq, "00"), idx(&sq, "11")));
        let t = triangle();
        for (u, v) in [(0, 1), (0, 2), (1, 2)] {
            assert!(t.adjacent(u, v));
        }
    }

    #[test]
    fn midpoint_outside_other_hull_does_not_imply_edge() {
        // The segment 000-111 meets conv{100,010,001} at (1/3,1/3,1/3) but the
        // midpoint (1/2,1/2,1/2) lies outside that triangle.
        let p = Polytope01::parse("3 5\n000\n111\n100\n010\n001").unwrap();
        assert!(!p.adjacent(idx(&p, "000"), idx(&p, "111")));
    }

    #[test]
    fn graph_edge_counts() {
        assert_eq!(segment().graph().len(), 1);
        assert_eq!(square().graph().len(), 4);
        assert_eq!(cube(3).graph().len(), 12);
        assert!(point(2).graph().is_empty());
    }

    #[test]
    fn smallest_face_examples() {
        let sq = square();
        assert_eq!(sq.smallest_face(&[2]), vec![2]);
        let diag = [idx(&sq, "00"), idx(&sq, "11")];
        assert_eq!(sq.smallest_face(&diag), vec![0, 1, 2, 3]);
        let t = triangle();
        assert_eq!(t.smallest_face(&[0, 2]), vec![0, 2]);
    }

    #[test]
    fn two_face_examples() {
        let f = square().two_faces().unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].kind, FaceKind::Parallelogram);
        let f = triangle().two_faces().unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].kind, FaceKind::Triangle);
        let f = cube(3).two_faces().unwrap();
        assert_eq!(f.len(), 6);
        assert!(f.iter().all(|x| x.kind == FaceKind::Parallelogram));
        assert!(segment().two_faces().unwrap().is_empty());
        assert!(point(1).two_faces().unwrap().is_empty());
    }

    #[test]
    fn simple_examples() {
        assert!(cube(3).is_simple());
        assert!(triangle().is_simple());
        let p = Polytope01::parse("3 5\n000\n100\n010\n001\n110").unwrap();
        assert!(!p.is_simple());
    }

    #[test]
    fn parallelogram_storage_satisfies_diagonal_identity() {
        for f in cube(3).two_faces().unwrap() {
            let v = &f.vertices;
            let p = cube(3);
            for i in 0..3 {
                assert_eq!(
                    p.vertex(v[0])[i] + p.vertex(v[2])[i],
                    p.vertex(v[1])[i] + p.vertex(v[3])[i]
                );
            }
        }
    }
}
