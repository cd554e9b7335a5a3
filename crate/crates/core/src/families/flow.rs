use std::collections::BTreeSet;

use super::{content_lines, element, invalid, parse_fields, parse_header, FamilyError, Limits};
use crate::polytope::Polytope01;

/// An acyclic digraph on nodes `0..n` with source `0` and sink `n - 1`.
/// Arcs keep their input order, which fixes the coordinate order of the
/// flow polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    n: usize,
    arcs: Vec<(usize, usize)>,
    /// Nodes in a topological order.
    order: Vec<usize>,
}

impl FlowNetwork {
    /// Requires acyclicity, node 0 as the only source, node `n - 1` as the
    /// only sink, and no repeated arcs.
    pub fn new(n: usize, arcs: Vec<(usize, usize)>) -> Result<Self, FamilyError> {
        if n < 2 {
            return invalid("a flow network needs at least two nodes");
        }
        let mut seen = BTreeSet::new();
        for &(a, b) in &arcs {
            if a >= n || b >= n {
                return invalid(format!("arc ({}, {}) is outside 1..={n}", a + 1, b + 1));
            }
            if a == b {
                return invalid(format!("loop at node {}", a + 1));
            }
            if !seen.insert((a, b)) {
                return invalid(format!("repeated arc ({}, {})", a + 1, b + 1));
            }
        }
        let mut indeg = vec![0usize; n];
        let mut outdeg = vec![0usize; n];
        for &(a, b) in &arcs {
            outdeg[a] += 1;
            indeg[b] += 1;
        }
        let (s, t) = (0, n - 1);
        if indeg[s] > 0 {
            return invalid("the source (node 1) has incoming arcs");
        }
        if outdeg[t] > 0 {
            return invalid(format!("the sink (node {n}) has outgoing arcs"));
        }
        for v in 0..n {
            if v != s && indeg[v] == 0 {
                return invalid(format!("node {} is a second source", v + 1));
            }
            if v != t && outdeg[v] == 0 {
                return invalid(format!("node {} is a second sink", v + 1));
            }
        }
        let mut ready: BTreeSet<usize> = BTreeSet::from([s]);
        let mut order = Vec::with_capacity(n);
        let mut deg = indeg;
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for &(a, b) in &arcs {
                if a == v {
                    deg[b] -= 1;
                    if deg[b] == 0 {
                        ready.insert(b);
                    }
                }
            }
        }
        if order.len() != n {
            return invalid("the network has a directed cycle");
        }
        Ok(FlowNetwork { n, arcs, order })
    }

    /// Parses `n` followed by one arc `u v` per line; the source is node 1
    /// and the sink is node `n`.
    pub fn parse(text: &str) -> Result<Self, FamilyError> {
        let (hline, header) = parse_header(text, 1, "n")?;
        let n = header[0];
        let mut arcs = Vec::new();
        for (line, l) in content_lines(text).filter(|(i, _)| *i > hline) {
            let f = parse_fields(line, l)?;
            if f.len() != 2 {
                return Err(FamilyError::Parse {
                    line,
                    reason: "expected an arc `u v`".into(),
                });
            }
            let (a, b) = (element(line, f[0], n)?, element(line, f[1], n)?);
            if a == b || arcs.contains(&(a, b)) {
                return Err(FamilyError::Parse {
                    line,
                    reason: format!("arc ({}, {}) is a loop or repeated", a + 1, b + 1),
                });
            }
            arcs.push((a, b));
        }
        FlowNetwork::new(n, arcs)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for &(a, b) in &self.arcs {
            s.push_str(&format!("{} {}\n", a + 1, b + 1));
        }
        s
    }

    pub fn num_nodes(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// `s → a → t` and `s → b → t`.
    pub fn diamond() -> Self {
        FlowNetwork::new(4, vec![(0, 1), (0, 2), (1, 3), (2, 3)]).expect("diamond")
    }

    /// Two diamonds glued at a middle node.
    pub fn double_diamond() -> Self {
        let arcs = vec![(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 6), (5, 6)];
        FlowNetwork::new(7, arcs).expect("double diamond")
    }

    fn out_arcs(&self) -> Vec<Vec<(usize, usize)>> {
        let mut out = vec![Vec::new(); self.n];
        for (i, &(a, b)) in self.arcs.iter().enumerate() {
            out[a].push((i, b));
        }
        out
    }

    /// Arc indicator vectors of all directed source-sink paths.
    pub fn paths(&self, limits: &Limits) -> Result<Vec<Vec<u8>>, FamilyError> {
        let out = self.out_arcs();
        let t = self.n - 1;
        let mut result = Vec::new();
        let mut current = vec![0u8; self.arcs.len()];
        // Iterative DFS over (node, next out-arc to try), with the arcs in use.
        let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
        let mut used: Vec<usize> = Vec::new();
        while let Some(top) = stack.len().checked_sub(1) {
            let (v, next) = stack[top];
            if v != t && next < out[v].len() {
                let (a, w) = out[v][next];
                stack[top].1 += 1;
                current[a] = 1;
                used.push(a);
                stack.push((w, 0));
                continue;
            }
            if v == t {
                result.push(current.clone());
                limits.check_vertices(result.len())?;
            }
            stack.pop();
            if let Some(a) = used.pop() {
                current[a] = 0;
            }
        }
        Ok(result)
    }

    pub fn flow_polytope(&self, limits: &Limits) -> Result<Polytope01, FamilyError> {
        Ok(Polytope01::from_points(self.arcs.len(), self.paths(limits)?)?)
    }

    fn reaches_sink_avoiding(&self, removed: usize) -> bool {
        let out = self.out_arcs();
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(_, w) in &out[v] {
                if w != removed && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen[self.n - 1]
    }

    /// Internal nodes whose removal disconnects the sink from the source,
    /// in topological order.
    pub fn separators(&self) -> Vec<usize> {
        self.order
            .iter()
            .copied()
            .filter(|&r| r != 0 && r != self.n - 1 && !self.reaches_sink_avoiding(r))
            .collect()
    }

    pub fn is_separator_free(&self) -> bool {
        self.separators().is_empty()
    }

    fn count_paths(&self, from: usize, to: usize) -> u64 {
        let mut count = vec![0u64; self.n];
        count[to] = 1;
        for &v in self.order.iter().rev() {
            if v == to {
                continue;
            }
            count[v] = self
                .arcs
                .iter()
                .filter(|&&(a, _)| a == v)
                .fold(0u64, |acc, &(_, b)| acc.saturating_add(count[b]));
        }
        count[from]
    }

    /// Separators cut the network into a series of pieces. A piece
    /// contributes a proper factor iff it carries at least two paths.
    pub fn proper_piece_count(&self) -> usize {
        let mut cuts = vec![0];
        cuts.extend(self.separators());
        cuts.push(self.n - 1);
        cuts.windows(2)
            .filter(|w| self.count_paths(w[0], w[1]) >= 2)
            .count()
    }

    /// True iff some piece between consecutive separators carries a single
    /// path, i.e. a chain of arcs used by every source-sink path.
    pub fn has_forced_piece(&self) -> bool {
        let mut cuts = vec![0];
        cuts.extend(self.separators());
        cuts.push(self.n - 1);
        cuts.windows(2).any(|w| self.count_paths(w[0], w[1]) == 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flow_polytope_examples() {
        let l = Limits::default();
        let arc = FlowNetwork::parse("2\n1 2\n").unwrap();
        assert_eq!(arc.flow_polytope(&l).unwrap().num_vertices(), 1);
        let d = FlowNetwork::diamond().flow_polytope(&l).unwrap();
        assert_eq!((d.ambient_dim(), d.num_vertices()), (4, 2));
        let dd = FlowNetwork::double_diamond().flow_polytope(&l).unwrap();
        assert_eq!(dd.num_vertices(), 4);
    }

    #[test]
    fn separators() {
        assert!(FlowNetwork::diamond().is_separator_free());
        let dd = FlowNetwork::double_diamond();
        assert_eq!(dd.separators(), vec![3]);
        assert_eq!(dd.proper_piece_count(), 2);
        // A bridge arc in front of a diamond is a separator but adds no factor.
        let tail = FlowNetwork::parse("5\n1 2\n2 3\n2 4\n3 5\n4 5\n").unwrap();
        assert_eq!(tail.separators(), vec![1]);
        assert!(tail.has_forced_piece());
        assert_eq!(tail.proper_piece_count(), 1);
    }

    #[test]
    fn validation() {
        assert!(FlowNetwork::parse("3\n1 2\n2 1\n2 3\n").is_err());
        assert!(FlowNetwork::parse("3\n1 3\n").is_err());
        assert!(FlowNetwork::parse("3\n1 2\n1 3\n3 2\n").is_err());
        assert!(matches!(
            FlowNetwork::parse("3\n1 2\n2 9\n"),
            Err(FamilyError::Parse { line: 3, .. })
        ));
    }
}
