use super::{
    components, content_lines, element, invalid, parse_fields, parse_header, polytope_from_masks,
    FamilyError, Limits,
};
use crate::polytope::Polytope01;

/// Simple undirected graph on `0..n`. Edges are stored as `(u, v)` with
/// `u < v`, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, FamilyError> {
        if n > 63 {
            return Err(FamilyError::CapExceeded {
                what: "ground set",
                limit: 63,
            });
        }
        let mut norm = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a >= n || b >= n {
                return invalid(format!("edge ({}, {}) is outside 1..={n}", a + 1, b + 1));
            }
            if a == b {
                return invalid(format!("loop at vertex {}", a + 1));
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return invalid(format!("duplicate edge ({}, {})", w[0].0 + 1, w[0].1 + 1));
        }
        Ok(SimpleGraph { n, edges: norm })
    }

    /// Parses `n` followed by one edge `u v` per line (1-based).
    pub fn parse(text: &str) -> Result<Self, FamilyError> {
        let (hline, header) = parse_header(text, 1, "n")?;
        let n = header[0];
        let mut edges = Vec::new();
        for (line, l) in content_lines(text).filter(|(i, _)| *i > hline) {
            let f = parse_fields(line, l)?;
            if f.len() != 2 {
                return Err(FamilyError::Parse {
                    line,
                    reason: "expected an edge `u v`".into(),
                });
            }
            let (a, b) = (element(line, f[0], n)?, element(line, f[1], n)?);
            if a == b {
                return Err(FamilyError::Parse {
                    line,
                    reason: format!("loop at vertex {}", a + 1),
                });
            }
            edges.push((a, b));
        }
        SimpleGraph::new(n, edges)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for &(a, b) in &self.edges {
            s.push_str(&format!("{} {}\n", a + 1, b + 1));
        }
        s
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        SimpleGraph::new(n, edges).expect("complete graph is simple")
    }

    pub fn path(n: usize) -> Self {
        SimpleGraph::new(n, (1..n).map(|i| (i - 1, i)).collect()).expect("path is simple")
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((0, n - 1));
        SimpleGraph::new(n, edges).expect("cycle is simple")
    }

    pub fn complement(&self) -> SimpleGraph {
        let adj = self.adjacency();
        let edges = (0..self.n)
            .flat_map(|a| (a + 1..self.n).map(move |b| (a, b)))
            .filter(|&(a, b)| adj[a] >> b & 1 == 0)
            .collect();
        SimpleGraph::new(self.n, edges).expect("complement is simple")
    }

    /// Graph on the edges of `self`, two edges adjacent iff they share an endpoint.
    pub fn line_graph(&self) -> Result<SimpleGraph, FamilyError> {
        let m = self.edges.len();
        let mut edges = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let (a, b) = self.edges[i];
                let (c, d) = self.edges[j];
                if a == c || a == d || b == c || b == d {
                    edges.push((i, j));
                }
            }
        }
        SimpleGraph::new(m, edges)
    }

    /// Removes isolated vertices, renumbering the rest in order.
    pub fn without_isolated(&self) -> SimpleGraph {
        let mut keep = vec![false; self.n];
        for &(a, b) in &self.edges {
            keep[a] = true;
            keep[b] = true;
        }
        let mut idx = vec![usize::MAX; self.n];
        let mut k = 0;
        for v in 0..self.n {
            if keep[v] {
                idx[v] = k;
                k += 1;
            }
        }
        let edges = self.edges.iter().map(|&(a, b)| (idx[a], idx[b])).collect();
        SimpleGraph::new(k, edges).expect("subgraph is simple")
    }

    fn adjacency(&self) -> Vec<u64> {
        let mut adj = vec![0u64; self.n];
        for &(a, b) in &self.edges {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        adj
    }

    /// All stable sets as bit masks.
    pub fn stable_sets(&self, limits: &Limits) -> Result<Vec<u64>, FamilyError> {
        limits.check_ground(self.n)?;
        let adj = self.adjacency();
        let mut out = Vec::new();
        let mut stack = vec![(0usize, 0u64)];
        while let Some((v, set)) = stack.pop() {
            if v == self.n {
                out.push(set);
                limits.check_vertices(out.len())?;
                continue;
            }
            stack.push((v + 1, set));
            if adj[v] & set == 0 {
                stack.push((v + 1, set | 1 << v));
            }
        }
        Ok(out)
    }

    pub fn stable_set_polytope(&self, limits: &Limits) -> Result<Polytope01, FamilyError> {
        polytope_from_masks(self.n, &self.stable_sets(limits)?)
    }

    pub fn clique_polytope(&self, limits: &Limits) -> Result<Polytope01, FamilyError> {
        self.complement().stable_set_polytope(limits)
    }

    pub(crate) fn check_matching_input(&self) -> Result<(), FamilyError> {
        if self.edges.is_empty() {
            return invalid("matching polytope needs at least one edge");
        }
        let mut touched = vec![false; self.n];
        for &(a, b) in &self.edges {
            touched[a] = true;
            touched[b] = true;
        }
        if let Some(v) = touched.iter().position(|&t| !t) {
            return invalid(format!("vertex {} is isolated", v + 1));
        }
        Ok(())
    }

    /// Matchings as indicator vectors indexed by the sorted edge list.
    pub fn matching_polytope(&self, limits: &Limits) -> Result<Polytope01, FamilyError> {
        self.check_matching_input()?;
        limits.check_ground(self.edges.len())?;
        self.line_graph()?.stable_set_polytope(limits)
    }

    /// `conv(e_i + e_j : ij ∈ E)` for a connected graph with at least one edge.
    pub fn edge_polytope(&self) -> Result<Polytope01, FamilyError> {
        if self.edges.is_empty() {
            return invalid("edge polytope needs at least one edge");
        }
        if !self.is_connected() {
            return invalid("edge polytope needs a connected graph");
        }
        let masks: Vec<u64> = self.edges.iter().map(|&(a, b)| 1 << a | 1 << b).collect();
        polytope_from_masks(self.n, &masks)
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        components(self.n, self.edges.iter().copied())
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l() -> Limits {
        Limits::default()
    }

    #[test]
    fn stable_and_clique_examples() {
        let edge = SimpleGraph::parse("2\n1 2\n").unwrap();
        assert_eq!(edge.stable_set_polytope(&l()).unwrap().num_vertices(), 3);
        let empty = SimpleGraph::parse("2\n").unwrap();
        assert_eq!(empty.stable_set_polytope(&l()).unwrap().num_vertices(), 4);
        let cli = empty.clique_polytope(&l()).unwrap();
        assert_eq!(cli.num_vertices(), 3);
    }

    #[test]
    fn matching_examples() {
        let p2 = SimpleGraph::path(3).matching_polytope(&l()).unwrap();
        assert_eq!(p2.ambient_dim(), 2);
        assert_eq!(p2.num_vertices(), 3);
        let two = SimpleGraph::parse("4\n1 2\n3 4\n").unwrap();
        assert_eq!(two.matching_polytope(&l()).unwrap().num_vertices(), 4);
        let tri = SimpleGraph::complete(3).matching_polytope(&l()).unwrap();
        assert_eq!(tri.num_vertices(), 4);
        assert!(SimpleGraph::parse("3\n1 2\n").unwrap().matching_polytope(&l()).is_err());
    }

    #[test]
    fn edge_polytope_examples() {
        let single = SimpleGraph::path(2).edge_polytope().unwrap();
        assert_eq!(single.vertices(), &[vec![1, 1]]);
        assert_eq!(SimpleGraph::path(3).edge_polytope().unwrap().num_vertices(), 2);
        let tri = SimpleGraph::complete(3).edge_polytope().unwrap();
        assert_eq!(tri.vertices(), &[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
        assert!(SimpleGraph::parse("4\n1 2\n3 4\n").unwrap().edge_polytope().is_err());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert!(matches!(
            SimpleGraph::parse("3\n1 2\n2 2\n"),
            Err(FamilyError::Parse { line: 3, .. })
        ));
        assert!(matches!(
            SimpleGraph::parse("3\n1 x\n"),
            Err(FamilyError::Parse { line: 2, .. })
        ));
        assert!(SimpleGraph::parse("3\n1 2\n2 1\n").is_err());
    }

    #[test]
    fn complement_and_connectivity() {
        let g = SimpleGraph::path(4);
        assert!(g.is_connected());
        assert!(g.complement().is_connected());
        assert!(!SimpleGraph::complete(3).complement().is_connected());
        assert_eq!(SimpleGraph::parse("5\n1 2\n4 5\n").unwrap().components().len(), 3);
    }
}
