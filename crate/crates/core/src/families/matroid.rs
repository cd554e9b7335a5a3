use std::collections::HashSet;

use super::{
    components, content_lines, element, invalid, parse_fields, parse_header, polytope_from_masks,
    set_label, FamilyError, Limits, SimpleGraph, SimplicialComplex,
};
use crate::polytope::Polytope01;

/// A matroid on `0..n` given by its bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matroid {
    n: usize,
    rank: usize,
    bases: Vec<u64>,
}

impl Matroid {
    /// Checks equal cardinality and the basis exchange axiom exhaustively.
    pub fn new(n: usize, bases: Vec<u64>) -> Result<Self, FamilyError> {
        if n > 63 {
            return Err(FamilyError::CapExceeded {
                what: "ground set",
                limit: 63,
            });
        }
        let mut bases = bases;
        bases.sort_unstable();
        bases.dedup();
        let Some(&first) = bases.first() else {
            return invalid("a matroid needs at least one basis");
        };
        let rank = first.count_ones() as usize;
        if let Some(&b) = bases.iter().find(|b| b.count_ones() as usize != rank) {
            return invalid(format!("basis {} does not have size {rank}", set_label(b)));
        }
        if let Some(&b) = bases.iter().find(|&&b| b >> n != 0) {
            return invalid(format!("basis {} uses an element outside 1..={n}", set_label(b)));
        }
        let set: HashSet<u64> = bases.iter().copied().collect();
        for &b1 in &bases {
            for &b2 in &bases {
                let only1 = b1 & !b2;
                let only2 = b2 & !b1;
                for x in (0..n).filter(|&x| only1 >> x & 1 == 1) {
                    let ok = (0..n)
                        .filter(|&y| only2 >> y & 1 == 1)
                        .any(|y| set.contains(&(b1 & !(1 << x) | 1 << y)));
                    if !ok {
                        return invalid(format!(
                            "basis exchange fails for {} and {} at element {}",
                            set_label(b1),
                            set_label(b2),
                            x + 1
                        ));
                    }
                }
            }
        }
        Ok(Matroid { n, rank, bases })
    }

    /// Parses `n r` followed by one basis per line (1-based indices).
    pub fn parse(text: &str) -> Result<Self, FamilyError> {
        let (hline, header) = parse_header(text, 2, "n r")?;
        let (n, r) = (header[0], header[1]);
        if n > 63 {
            return Err(FamilyError::CapExceeded {
                what: "ground set",
                limit: 63,
            });
        }
        let mut bases = Vec::new();
        let mut seen = HashSet::new();
        for (line, l) in content_lines(text).filter(|(i, _)| *i > hline) {
            let mut mask = 0u64;
            for i in parse_fields(line, l)? {
                mask |= 1 << element(line, i, n)?;
            }
            if mask.count_ones() as usize != r {
                return Err(FamilyError::Parse {
                    line,
                    reason: format!("basis must have exactly {r} distinct elements"),
                });
            }
            if !seen.insert(mask) {
                return Err(FamilyError::Parse {
                    line,
                    reason: "duplicate basis".into(),
                });
            }
            bases.push(mask);
        }
        if bases.is_empty() && r == 0 {
            bases.push(0);
        }
        Matroid::new(n, bases)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.rank);
        for &b in &self.bases {
            let items: Vec<String> = (0..self.n)
                .filter(|&i| b >> i & 1 == 1)
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

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> &[u64] {
        &self.bases
    }

    /// `U_{r,n}`: every `r`-subset is a basis.
    pub fn uniform(r: usize, n: usize) -> Self {
        assert!(r <= n && n <= 20, "uniform matroid out of range");
        let bases = (0u64..1 << n).filter(|b| b.count_ones() as usize == r).collect();
        Matroid::new(n, bases).expect("uniform matroid")
    }

    /// Cycle matroid of a graph: bases are the spanning forests, indexed by
    /// the sorted edge list.
    pub fn graphic(g: &SimpleGraph, limits: &Limits) -> Result<Self, FamilyError> {
        let m = g.edges().len();
        limits.check_ground(m)?;
        let r = g.num_vertices() - g.components().len();
        let mut bases = Vec::new();
        for mask in 0u64..1 << m {
            if mask.count_ones() as usize != r {
                continue;
            }
            let mut parent: Vec<usize> = (0..g.num_vertices()).collect();
            let find = |p: &mut Vec<usize>, mut x: usize| {
                while p[x] != x {
                    p[x] = p[p[x]];
                    x = p[x];
                }
                x
            };
            let acyclic = (0..m).filter(|&e| mask >> e & 1 == 1).all(|e| {
                let (a, b) = g.edges()[e];
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
                ra != rb
            });
            if acyclic {
                bases.push(mask);
                limits.check_vertices(bases.len())?;
            }
        }
        Matroid::new(m, bases)
    }

    /// Elements of `other` are shifted past those of `self`.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid, FamilyError> {
        let mut bases = Vec::with_capacity(self.bases.len() * other.bases.len());
        for &a in &self.bases {
            for &b in &other.bases {
                bases.push(a | b << self.n);
            }
        }
        Matroid::new(self.n + other.n, bases)
    }

    pub(crate) fn check_limits(&self, limits: &Limits) -> Result<(), FamilyError> {
        limits.check_ground(self.n)
    }

    pub fn independence_complex(&self) -> SimplicialComplex {
        SimplicialComplex::new(self.n, self.bases.clone()).expect("bases form an antichain")
    }

    /// Minimal dependent sets.
    pub fn circuits(&self, limits: &Limits) -> Result<Vec<u64>, FamilyError> {
        self.independence_complex().minimal_nonfaces(limits)
    }

    /// Elements in no basis.
    pub fn loops(&self) -> Vec<usize> {
        let union = self.bases.iter().fold(0, |acc, &b| acc | b);
        (0..self.n).filter(|&i| union >> i & 1 == 0).collect()
    }

    /// Elements in every basis.
    pub fn coloops(&self) -> Vec<usize> {
        let common = self.bases.iter().fold(u64::MAX, |acc, &b| acc & b);
        (0..self.n).filter(|&i| common >> i & 1 == 1).collect()
    }

    /// Connected components: two elements are joined when a circuit
    /// contains both.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let g = self.independence_complex().exclusion_graph();
        components(self.n, g.edges().iter().copied())
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    fn remove_elements(&self, drop: &[usize]) -> Matroid {
        let keep: Vec<usize> = (0..self.n).filter(|i| !drop.contains(i)).collect();
        let bases = self
            .bases
            .iter()
            .map(|&b| {
                keep.iter()
                    .enumerate()
                    .filter(|&(_, &i)| b >> i & 1 == 1)
                    .fold(0u64, |m, (k, _)| m | 1 << k)
            })
            .collect();
        Matroid::new(keep.len(), bases).expect("minor of a matroid")
    }

    pub fn delete_loops(&self) -> Matroid {
        self.remove_elements(&self.loops())
    }

    /// Deletes loops and contracts coloops.
    pub fn delete_loops_and_coloops(&self) -> Matroid {
        let mut drop = self.loops();
        drop.extend(self.coloops());
        self.remove_elements(&drop)
    }

    pub fn base_polytope(&self) -> Result<Polytope01, FamilyError> {
        polytope_from_masks(self.n, &self.bases)
    }

    pub fn independence_polytope(&self, limits: &Limits) -> Result<Polytope01, FamilyError> {
        self.independence_complex().antiblocking_polytope(limits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_polytope_examples() {
        let u12 = Matroid::uniform(1, 2);
        assert_eq!(u12.base_polytope().unwrap().vertices(), &[vec![0, 1], vec![1, 0]]);
        let sum = u12.direct_sum(&u12).unwrap();
        let p = sum.base_polytope().unwrap();
        assert_eq!(
            p.vertices(),
            &[vec![0, 1, 0, 1], vec![0, 1, 1, 0], vec![1, 0, 0, 1], vec![1, 0, 1, 0]]
        );
        let u23 = Matroid::uniform(2, 3).base_polytope().unwrap();
        assert_eq!(u23.vertices(), &[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
    }

    #[test]
    fn exchange_axiom_is_checked() {
        // {1,2} and {3,4} alone violate exchange.
        assert!(Matroid::parse("4 2\n1 2\n3 4\n").is_err());
        assert!(Matroid::parse("3 2\n1 2\n3\n").is_err());
        assert!(Matroid::parse("3 1\n1\n2\n3\n").is_ok());
    }

    #[test]
    fn connectivity_via_circuits() {
        assert!(Matroid::uniform(2, 3).is_connected());
        assert_eq!(
            Matroid::uniform(2, 3).circuits(&Limits::default()).unwrap(),
            vec![0b111]
        );
        let u12 = Matroid::uniform(1, 2);
        assert!(!u12.direct_sum(&u12).unwrap().is_connected());
    }

    #[test]
    fn graphic_matroid_of_triangle_is_u23() {
        let m = Matroid::graphic(&SimpleGraph::complete(3), &Limits::default()).unwrap();
        assert_eq!(m, Matroid::uniform(2, 3));
    }

    #[test]
    fn loops_and_coloops() {
        let pendant = SimpleGraph::parse("4\n1 2\n2 3\n1 3\n3 4\n").unwrap();
        let m = Matroid::graphic(&pendant, &Limits::default()).unwrap();
        assert_eq!(m.coloops(), vec![3]);
        assert!(m.loops().is_empty());
        assert!(!m.is_connected());
        assert!(m.delete_loops_and_coloops().is_connected());
    }

    #[test]
    fn text_round_trip() {
        let m = Matroid::uniform(2, 4);
        assert_eq!(Matroid::parse(&m.to_text()).unwrap(), m);
    }
}
