use std::fmt;

use super::{
    content_lines, element, invalid, parse_fields, parse_header, polytope_from_masks, FamilyError,
    Limits, SimpleGraph,
};
use crate::polytope::Polytope01;

/// A finite poset on `0..n` given by its cover relations.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    covers: Vec<(usize, usize)>,
    /// `above[a]` has bit `b` set iff `a < b` strictly.
    above: Vec<u64>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poset(n={}, covers={:?})", self.n, self.covers)
    }
}

impl Poset {
    /// Validates that the covers form an acyclic, transitively reduced relation.
    pub fn new(n: usize, covers: Vec<(usize, usize)>) -> Result<Self, FamilyError> {
        if n > 63 {
            return Err(FamilyError::CapExceeded {
                what: "ground set",
                limit: 63,
            });
        }
        let mut covers = covers;
        for &(a, b) in &covers {
            if a >= n || b >= n {
                return invalid(format!("cover ({}, {}) is outside 1..={n}", a + 1, b + 1));
            }
            if a == b {
                return invalid(format!("element {} covers itself", a + 1));
            }
        }
        covers.sort_unstable();
        if let Some(w) = covers.windows(2).find(|w| w[0] == w[1]) {
            return invalid(format!("duplicate cover ({}, {})", w[0].0 + 1, w[0].1 + 1));
        }
        let order = topological_order(n, &covers)
            .ok_or_else(|| FamilyError::Invalid("cover relation has a cycle".into()))?;
        let mut up = vec![0u64; n];
        for &(a, b) in &covers {
            up[a] |= 1 << b;
        }
        let mut above = vec![0u64; n];
        for &a in order.iter().rev() {
            let mut acc = up[a];
            for b in 0..n {
                if up[a] >> b & 1 == 1 {
                    acc |= above[b];
                }
            }
            above[a] = acc;
        }
        for &(a, b) in &covers {
            let via_other = (0..n).any(|c| c != b && up[a] >> c & 1 == 1 && above[c] >> b & 1 == 1);
            if via_other {
                return invalid(format!(
                    "cover ({}, {}) is implied by other covers",
                    a + 1,
                    b + 1
                ));
            }
        }
        Ok(Poset { n, covers, above })
    }

    /// Builds the poset generated by an arbitrary acyclic relation, keeping
    /// only its cover pairs.
    pub fn from_relation(n: usize, pairs: &[(usize, usize)]) -> Result<Self, FamilyError> {
        let mut less = vec![0u64; n];
        for &(a, b) in pairs {
            less[a] |= 1 << b;
        }
        let order = topological_order(n, pairs)
            .ok_or_else(|| FamilyError::Invalid("relation has a cycle".into()))?;
        let mut above = vec![0u64; n];
        for &a in order.iter().rev() {
            let mut acc = less[a];
            for b in 0..n {
                if less[a] >> b & 1 == 1 {
                    acc |= above[b];
                }
            }
            above[a] = acc;
        }
        let mut covers = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if above[a] >> b & 1 == 1
                    && !(0..n).any(|c| above[a] >> c & 1 == 1 && above[c] >> b & 1 == 1)
                {
                    covers.push((a, b));
                }
            }
        }
        Poset::new(n, covers)
    }

    /// Parses `n` followed by one cover `a b` (meaning a is covered by b) per line.
    pub fn parse(text: &str) -> Result<Self, FamilyError> {
        let (hline, header) = parse_header(text, 1, "n")?;
        let n = header[0];
        let mut covers = Vec::new();
        for (line, l) in content_lines(text).filter(|(i, _)| *i > hline) {
            let f = parse_fields(line, l)?;
            if f.len() != 2 {
                return Err(FamilyError::Parse {
                    line,
                    reason: "expected a cover pair `a b`".into(),
                });
            }
            covers.push((element(line, f[0], n)?, element(line, f[1], n)?));
        }
        Poset::new(n, covers)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for &(a, b) in &self.covers {
            s.push_str(&format!("{} {}\n", a + 1, b + 1));
        }
        s
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// `a < b` strictly.
    pub fn less(&self, a: usize, b: usize) -> bool {
        self.above[a] >> b & 1 == 1
    }

    pub fn chain(n: usize) -> Self {
        Poset::new(n, (1..n).map(|i| (i - 1, i)).collect()).expect("chain is a poset")
    }

    pub fn antichain(n: usize) -> Self {
        Poset::new(n, Vec::new()).expect("antichain is a poset")
    }

    /// Up-closed subsets as bit masks, in no particular order.
    pub fn filters(&self, limits: &Limits) -> Result<Vec<u64>, FamilyError> {
        limits.check_ground(self.n)?;
        let order = topological_order(self.n, &self.covers).expect("validated acyclic");
        // Decide larger elements first so the upward closure is already known.
        let mut out = Vec::new();
        let mut stack = vec![(0usize, 0u64)];
        while let Some((depth, set)) = stack.pop() {
            if depth == self.n {
                out.push(set);
                limits.check_vertices(out.len())?;
                continue;
            }
            let a = order[self.n - 1 - depth];
            stack.push((depth + 1, set));
            if self.above[a] & !set == 0 {
                stack.push((depth + 1, set | 1 << a));
            }
        }
        Ok(out)
    }

    pub fn antichains(&self, limits: &Limits) -> Result<Vec<u64>, FamilyError> {
        self.comparability_graph().stable_sets(limits)
    }

    /// Convex hull of the filter indicators.
    pub fn order_polytope(&self, limits: &Limits) -> Result<Polytope01, FamilyError> {
        polytope_from_masks(self.n, &self.filters(limits)?)
    }

    /// Convex hull of the antichain indicators.
    pub fn chain_polytope(&self, limits: &Limits) -> Result<Polytope01, FamilyError> {
        polytope_from_masks(self.n, &self.antichains(limits)?)
    }

    pub fn comparability_graph(&self) -> SimpleGraph {
        let mut edges = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if self.less(a, b) {
                    edges.push((a, b));
                }
            }
        }
        SimpleGraph::new(self.n, edges).expect("comparabilities form a simple graph")
    }

    /// Connectivity of the comparability graph.
    pub fn is_connected(&self) -> bool {
        self.comparability_graph().is_connected()
    }
}

/// Kahn's algorithm; `None` if the relation has a cycle. Ties go to the
/// smallest index.
fn topological_order(n: usize, pairs: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    let mut out = vec![Vec::new(); n];
    for &(a, b) in pairs {
        indeg[b] += 1;
        out[a].push(b);
    }
    let mut ready: std::collections::BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop_first() {
        order.push(v);
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.insert(w);
            }
        }
    }
    (order.len() == n).then_some(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verts(p: &Polytope01) -> Vec<String> {
        p.vertices().iter().map(|v| crate::polytope::bitstring(v)).collect()
    }

    #[test]
    fn order_polytope_examples() {
        let l = Limits::default();
        assert_eq!(verts(&Poset::chain(2).order_polytope(&l).unwrap()), ["00", "01", "11"]);
        assert_eq!(Poset::antichain(2).order_polytope(&l).unwrap().num_vertices(), 4);
        assert_eq!(verts(&Poset::antichain(1).order_polytope(&l).unwrap()), ["0", "1"]);
    }

    #[test]
    fn chain_polytope_examples() {
        let l = Limits::default();
        assert_eq!(verts(&Poset::chain(2).chain_polytope(&l).unwrap()), ["00", "01", "10"]);
        assert_eq!(Poset::antichain(2).chain_polytope(&l).unwrap().num_vertices(), 4);
        assert_eq!(
            verts(&Poset::chain(3).chain_polytope(&l).unwrap()),
            ["000", "001", "010", "100"]
        );
    }

    #[test]
    fn rejects_cycles_and_redundant_covers() {
        assert!(Poset::parse("2\n1 2\n2 1\n").is_err());
        assert!(Poset::parse("3\n1 2\n2 3\n1 3\n").is_err());
        assert!(matches!(
            Poset::parse("2\n1 3\n"),
            Err(FamilyError::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn from_relation_reduces() {
        let p = Poset::from_relation(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
        assert!(p.less(0, 2));
    }

    #[test]
    fn connectivity() {
        assert!(!Poset::antichain(2).is_connected());
        assert!(Poset::chain(3).is_connected());
        let v = Poset::parse("3\n1 3\n2 3\n").unwrap();
        assert!(v.is_connected());
    }

    #[test]
    fn text_round_trip() {
        let p = Poset::parse("4\n1 2\n1 3\n3 4\n").unwrap();
        assert_eq!(Poset::parse(&p.to_text()).unwrap(), p);
    }
}
