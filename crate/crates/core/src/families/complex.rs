use std::collections::BTreeSet;

use super::{
    components, element, invalid, mask_to_vertex, parse_fields, polytope_from_masks, set_label,
    FamilyError, Limits, SimpleGraph,
};
use crate::polytope::Polytope01;

/// A simplicial complex on `0..n`, stored by its facets as bit masks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: usize,
    /// Inclusion-maximal members, sorted. `[0]` for the complex `{∅}`.
    facets: Vec<u64>,
}

impl SimplicialComplex {
    /// Validates that no facet contains another. The empty set is absorbed
    /// by any nonempty facet.
    pub fn new(n: usize, facets: Vec<u64>) -> Result<Self, FamilyError> {
        if n > 63 {
            return Err(FamilyError::CapExceeded {
                what: "ground set",
                limit: 63,
            });
        }
        let mut fs: Vec<u64> = facets.into_iter().filter(|&f| f != 0).collect();
        for &f in &fs {
            if f >> n != 0 {
                return invalid(format!("facet {} uses an element outside 1..={n}", set_label(f)));
            }
        }
        fs.sort_unstable();
        if let Some(w) = fs.windows(2).find(|w| w[0] == w[1]) {
            return invalid(format!("duplicate facet {}", set_label(w[0])));
        }
        for &a in &fs {
            for &b in &fs {
                if a != b && a & !b == 0 {
                    return invalid(format!(
                        "facet {} is contained in facet {}",
                        set_label(a),
                        set_label(b)
                    ));
                }
            }
        }
        if fs.is_empty() {
            fs.push(0);
        }
        Ok(SimplicialComplex { n, facets: fs })
    }

    /// The complex generated by arbitrary sets: keeps only maximal ones.
    pub fn generated_by(n: usize, sets: &[u64]) -> Result<Self, FamilyError> {
        let uniq: BTreeSet<u64> = sets.iter().copied().collect();
        let maximal = uniq
            .iter()
            .copied()
            .filter(|&a| !uniq.iter().any(|&b| a != b && a & !b == 0))
            .collect();
        SimplicialComplex::new(n, maximal)
    }

    /// Parses `n` followed by one facet per line as space-separated 1-based
    /// indices. A blank line is the empty facet.
    pub fn parse(text: &str) -> Result<Self, FamilyError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.starts_with('#'));
        let (hline, header) = loop {
            match lines.next() {
                Some((_, "")) => continue,
                Some(x) => break x,
                None => {
                    return Err(FamilyError::Parse {
                        line: 1,
                        reason: "missing header `n`".into(),
                    })
                }
            }
        };
        let h = parse_fields(hline, header)?;
        if h.len() != 1 {
            return Err(FamilyError::Parse {
                line: hline,
                reason: "header must be `n`".into(),
            });
        }
        let n = h[0];
        if n > 63 {
            return Err(FamilyError::CapExceeded {
                what: "ground set",
                limit: 63,
            });
        }
        let mut facets = Vec::new();
        for (line, l) in lines {
            let mut mask = 0u64;
            for i in parse_fields(line, l)? {
                let e = element(line, i, n)?;
                if mask >> e & 1 == 1 {
                    return Err(FamilyError::Parse {
                        line,
                        reason: format!("element {i} repeated"),
                    });
                }
                mask |= 1 << e;
            }
            facets.push((line, mask));
        }
        let nonempty: Vec<(usize, u64)> = facets.iter().copied().filter(|&(_, m)| m != 0).collect();
        for (i, &(la, a)) in nonempty.iter().enumerate() {
            for &(lb, b) in &nonempty[..i] {
                if a & !b == 0 || b & !a == 0 {
                    return Err(FamilyError::Parse {
                        line: la,
                        reason: format!("facet overlaps the facet on line {lb} by inclusion"),
                    });
                }
            }
        }
        SimplicialComplex::new(n, nonempty.into_iter().map(|(_, m)| m).collect())
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for &f in &self.facets {
            let items: Vec<String> = (0..self.n)
                .filter(|&i| f >> i & 1 == 1)
                .map(|i| (i + 1).to_string())
                .collect();
            s.push_str(&items.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[u64] {
        &self.facets
    }

    pub fn full_simplex(n: usize) -> Self {
        SimplicialComplex::new(n, vec![(1u64 << n) - 1]).expect("simplex is a complex")
    }

    pub(crate) fn check_limits(&self, limits: &Limits) -> Result<(), FamilyError> {
        limits.check_ground(self.n)
    }

    pub fn contains(&self, set: u64) -> bool {
        self.facets.iter().any(|&f| set & !f == 0)
    }

    /// Every member set, as bit masks.
    pub fn members(&self, limits: &Limits) -> Result<Vec<u64>, FamilyError> {
        self.check_limits(limits)?;
        let mut out = Vec::new();
        let mut stack = vec![(0usize, 0u64)];
        while let Some((i, set)) = stack.pop() {
            if i == self.n {
                out.push(set);
                limits.check_vertices(out.len())?;
                continue;
            }
            stack.push((i + 1, set));
            if self.contains(set | 1 << i) {
                stack.push((i + 1, set | 1 << i));
            }
        }
        Ok(out)
    }

    pub fn antiblocking_polytope(&self, limits: &Limits) -> Result<Polytope01, FamilyError> {
        polytope_from_masks(self.n, &self.members(limits)?)
    }

    /// Inclusion-minimal non-members, ordered by size then by mask.
    pub fn minimal_nonfaces(&self, limits: &Limits) -> Result<Vec<u64>, FamilyError> {
        // Every minimal nonface is a member plus one element.
        let mut found = BTreeSet::new();
        for a in self.members(limits)? {
            for i in 0..self.n {
                let cand = a | 1 << i;
                if cand == a || self.contains(cand) {
                    continue;
                }
                let minimal = (0..self.n)
                    .filter(|&j| cand >> j & 1 == 1)
                    .all(|j| self.contains(cand & !(1 << j)));
                if minimal {
                    found.insert((cand.count_ones(), cand));
                }
            }
        }
        Ok(found.into_iter().map(|(_, m)| m).collect())
    }

    /// Edges between elements that lie in a common minimal nonface.
    pub fn exclusion_graph(&self) -> SimpleGraph {
        let nonfaces = self
            .minimal_nonfaces(&Limits {
                max_ground: 63,
                max_vertices: usize::MAX,
                max_group: 0,
            })
            .expect("uncapped");
        let mut edges = BTreeSet::new();
        for nf in nonfaces {
            let elems: Vec<usize> = (0..self.n).filter(|&i| nf >> i & 1 == 1).collect();
            for (x, &a) in elems.iter().enumerate() {
                for &b in &elems[x + 1..] {
                    edges.insert((a, b));
                }
            }
        }
        SimpleGraph::new(self.n, edges.into_iter().collect()).expect("exclusion graph is simple")
    }

    /// Elements `i` with `{i}` a member.
    pub fn vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.contains(1 << i)).collect()
    }

    /// Components of the exclusion graph restricted to the vertices of the
    /// complex, in original indices.
    pub fn vertex_exclusion_components(&self) -> Vec<Vec<usize>> {
        let verts = self.vertices();
        let mut idx = vec![usize::MAX; self.n];
        for (k, &v) in verts.iter().enumerate() {
            idx[v] = k;
        }
        let g = self.exclusion_graph();
        let edges = g
            .edges()
            .iter()
            .filter(|&&(a, b)| idx[a] != usize::MAX && idx[b] != usize::MAX)
            .map(|&(a, b)| (idx[a], idx[b]));
        components(verts.len(), edges)
            .into_iter()
            .map(|c| c.into_iter().map(|k| verts[k]).collect())
            .collect()
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].count_ones() == w[1].count_ones())
    }

    /// Convex hull of the facet indicators of a pure complex.
    pub fn pure_face_polytope(&self) -> Result<Polytope01, FamilyError> {
        if !self.is_pure() {
            return invalid("complex is not pure");
        }
        polytope_from_masks(self.n, &self.facets)
    }

    /// Elements lying in every facet.
    pub fn cone_points(&self) -> Vec<usize> {
        let common = self.facets.iter().fold(u64::MAX, |acc, &f| acc & f);
        (0..self.n).filter(|&i| common >> i & 1 == 1).collect()
    }

    /// The link of the cone points: every facet loses them, and the
    /// remaining elements are renumbered in order.
    pub fn delete_cone_points(&self) -> Result<SimplicialComplex, FamilyError> {
        let cone = self.cone_points();
        let keep: Vec<usize> = (0..self.n).filter(|i| !cone.contains(i)).collect();
        let facets: Vec<u64> = self
            .facets
            .iter()
            .map(|&f| {
                keep.iter()
                    .enumerate()
                    .filter(|&(_, &i)| f >> i & 1 == 1)
                    .fold(0u64, |m, (k, _)| m | 1 << k)
            })
            .collect();
        SimplicialComplex::generated_by(keep.len(), &facets)
    }

    /// Indicator vector of a set.
    pub fn indicator(&self, set: u64) -> Vec<u8> {
        mask_to_vertex(set, self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l() -> Limits {
        Limits::default()
    }

    #[test]
    fn antiblocking_examples() {
        let point = SimplicialComplex::parse("3\n").unwrap();
        assert_eq!(point.antiblocking_polytope(&l()).unwrap().num_vertices(), 1);
        let cube = SimplicialComplex::full_simplex(3).antiblocking_polytope(&l()).unwrap();
        assert_eq!(cube.num_vertices(), 8);
        let tri = SimplicialComplex::parse("2\n1\n2\n").unwrap();
        assert_eq!(tri.antiblocking_polytope(&l()).unwrap().num_vertices(), 3);
    }

    #[test]
    fn minimal_nonface_examples() {
        assert!(SimplicialComplex::full_simplex(4).minimal_nonfaces(&l()).unwrap().is_empty());
        let edge = SimplicialComplex::parse("2\n1\n2\n").unwrap();
        assert_eq!(edge.minimal_nonfaces(&l()).unwrap(), vec![0b11]);
        let u23 = SimplicialComplex::parse("3\n1 2\n1 3\n2 3\n").unwrap();
        assert_eq!(u23.minimal_nonfaces(&l()).unwrap(), vec![0b111]);
    }

    #[test]
    fn exclusion_graph_examples() {
        assert!(SimplicialComplex::full_simplex(3).exclusion_graph().edges().is_empty());
        let edge = SimplicialComplex::parse("2\n1\n2\n").unwrap();
        assert_eq!(edge.exclusion_graph().edges(), &[(0, 1)]);
        let u23 = SimplicialComplex::parse("3\n1 2\n1 3\n2 3\n").unwrap();
        assert_eq!(u23.exclusion_graph(), SimpleGraph::complete(3));
    }

    #[test]
    fn pure_faces() {
        let pts = SimplicialComplex::parse("2\n1\n2\n").unwrap();
        assert_eq!(pts.pure_face_polytope().unwrap().vertices(), &[vec![0, 1], vec![1, 0]]);
        let mixed = SimplicialComplex::parse("3\n1 2\n3\n").unwrap();
        assert!(mixed.pure_face_polytope().is_err());
    }

    #[test]
    fn graph_as_complex_gives_edge_polytope() {
        let g = SimpleGraph::cycle(5);
        let facets: Vec<u64> = g.edges().iter().map(|&(a, b)| 1 << a | 1 << b).collect();
        let c = SimplicialComplex::new(5, facets).unwrap();
        assert_eq!(c.pure_face_polytope().unwrap(), g.edge_polytope().unwrap());
    }

    #[test]
    fn parse_rejects_nested_facets() {
        assert!(matches!(
            SimplicialComplex::parse("3\n1 2\n1\n"),
            Err(FamilyError::Parse { line: 3, .. })
        ));
        assert!(SimplicialComplex::parse("3\n1 4\n").is_err());
        let c = SimplicialComplex::parse("3\n1 2\n3\n").unwrap();
        assert_eq!(SimplicialComplex::parse(&c.to_text()).unwrap(), c);
    }

    #[test]
    fn cone_points_are_removed() {
        let c = SimplicialComplex::parse("4\n1 2 4\n1 3 4\n").unwrap();
        assert_eq!(c.cone_points(), vec![0, 3]);
        let link = c.delete_cone_points().unwrap();
        assert_eq!(link.ground_size(), 2);
        assert_eq!(link.facets(), &[0b01, 0b10]);
    }
}
