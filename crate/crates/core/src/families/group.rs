use std::collections::{BTreeSet, VecDeque};

use super::{content_lines, invalid, parse_fields, parse_header, FamilyError, Limits};
use crate::polytope::Polytope01;

/// A permutation group of degree `n`, stored as its full element list in
/// one-line notation (0-based images), sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGroup {
    n: usize,
    elements: Vec<Vec<usize>>,
}

impl PermGroup {
    /// Closes the generators under composition. Fails once the group would
    /// exceed `limits.max_group` elements.
    pub fn generated_by(n: usize, gens: &[Vec<usize>], limits: &Limits) -> Result<Self, FamilyError> {
        for (i, g) in gens.iter().enumerate() {
            check_permutation(n, g).map_err(|reason| {
                FamilyError::Invalid(format!("generator {}: {reason}", i + 1))
            })?;
        }
        let identity: Vec<usize> = (0..n).collect();
        let mut seen = BTreeSet::from([identity.clone()]);
        let mut queue = VecDeque::from([identity]);
        while let Some(g) = queue.pop_front() {
            for h in gens {
                let gh: Vec<usize> = h.iter().map(|&x| g[x]).collect();
                if seen.insert(gh.clone()) {
                    if seen.len() > limits.max_group {
                        return Err(FamilyError::CapExceeded {
                            what: "group order",
                            limit: limits.max_group,
                        });
                    }
                    queue.push_back(gh);
                }
            }
        }
        Ok(PermGroup {
            n,
            elements: seen.into_iter().collect(),
        })
    }

    /// Parses `n k` followed by `k` generators, each a line of `n` images (1-based).
    pub fn parse(text: &str, limits: &Limits) -> Result<Self, FamilyError> {
        let (hline, header) = parse_header(text, 2, "n k")?;
        let (n, k) = (header[0], header[1]);
        let mut gens = Vec::with_capacity(k);
        for (line, l) in content_lines(text).filter(|(i, _)| *i > hline) {
            let images = parse_fields(line, l)?;
            let g: Vec<usize> = images.iter().map(|&x| x.wrapping_sub(1)).collect();
            check_permutation(n, &g).map_err(|reason| FamilyError::Parse { line, reason })?;
            gens.push(g);
        }
        if gens.len() != k {
            return invalid(format!("header declares {k} generators but {} were given", gens.len()));
        }
        PermGroup::generated_by(n, &gens, limits)
    }

    pub fn symmetric(n: usize, limits: &Limits) -> Result<Self, FamilyError> {
        let mut gens = Vec::new();
        if n >= 2 {
            let mut swap: Vec<usize> = (0..n).collect();
            swap.swap(0, 1);
            let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            gens.push(swap);
            gens.push(cycle);
        }
        PermGroup::generated_by(n, &gens, limits)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Vec<usize>] {
        &self.elements
    }

    /// Permutation matrices `M[i][σ(i)] = 1`, flattened row by row into `n²` coordinates.
    pub fn permutation_polytope(&self) -> Result<Polytope01, FamilyError> {
        let n = self.n;
        let points = self.elements.iter().map(|sigma| {
            let mut v = vec![0u8; n * n];
            for (i, &j) in sigma.iter().enumerate() {
                v[i * n + j] = 1;
            }
            v
        });
        Ok(Polytope01::from_points(n * n, points)?)
    }
}

fn check_permutation(n: usize, g: &[usize]) -> Result<(), String> {
    if g.len() != n {
        return Err(format!("expected {n} images, found {}", g.len()));
    }
    let mut hit = vec![false; n];
    for &x in g {
        if x >= n {
            return Err(format!("image {} is outside 1..={n}", x.wrapping_add(1)));
        }
        if hit[x] {
            return Err(format!("image {} repeats", x + 1));
        }
        hit[x] = true;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_examples() {
        let l = Limits::default();
        let b2 = PermGroup::parse("2 1\n2 1\n", &l).unwrap().permutation_polytope().unwrap();
        assert_eq!(b2.vertices(), &[vec![0, 1, 1, 0], vec![1, 0, 0, 1]]);
        let s3 = PermGroup::parse("3 2\n2 1 3\n2 3 1\n", &l).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.permutation_polytope().unwrap().ambient_dim(), 9);
        let klein = PermGroup::parse("4 2\n2 1 3 4\n1 2 4 3\n", &l).unwrap();
        assert_eq!(klein.order(), 4);
    }

    #[test]
    fn caps_and_validation() {
        let tiny = Limits {
            max_group: 5,
            ..Limits::default()
        };
        assert!(matches!(
            PermGroup::symmetric(3, &tiny),
            Err(FamilyError::CapExceeded { .. })
        ));
        assert_eq!(PermGroup::symmetric(4, &Limits::default()).unwrap().order(), 24);
        assert!(matches!(
            PermGroup::parse("3 1\n1 1 2\n", &Limits::default()),
            Err(FamilyError::Parse { line: 2, .. })
        ));
        assert!(PermGroup::parse("3 2\n1 2 3\n", &Limits::default()).is_err());
    }
}
