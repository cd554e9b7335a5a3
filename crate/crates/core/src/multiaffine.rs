//! Multi-affine polynomials with rational coefficients, and their
//! factorization into factors on disjoint sets of variables.
//!
//! The Newton polytope of a product on disjoint variables is the Cartesian
//! product of the factors' Newton polytopes, so the variable blocks of any
//! such split are unions of the blocks of [`factorize`] applied to the
//! Newton polytope. Coefficients decide which of those unions actually lift.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::exactla::Rational;
use crate::factor::{factorize, FactorError};
use crate::polytope::{bitstring, Polytope01};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("line {line}: exponent {digit} in `{support}` is not multi-affine")]
    NotMultiAffine {
        line: usize,
        support: String,
        digit: char,
    },
    #[error("exponent vector {0} has an entry above one")]
    ExponentAboveOne(String),
    #[error("the polynomial has no nonzero terms")]
    Zero,
    #[error("header declares {declared} terms but {found} were given")]
    CountMismatch { declared: usize, found: usize },
    #[error("factors share variable x{0}")]
    OverlappingVariables(usize),
    #[error("expected {expected} variables, found {found}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Factor(#[from] FactorError),
}

/// A polynomial of degree at most one in each of `n` variables. Terms are
/// keyed by 0/1 exponent vectors; no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiAffinePoly {
    n: usize,
    terms: BTreeMap<Vec<u8>, Rational>,
}

impl fmt::Debug for MultiAffinePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiAffinePoly({self})")
    }
}

impl fmt::Display for MultiAffinePoly {
    /// Human-readable form such as `1 + 3/2*x1*x3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (alpha, c) in &self.terms {
            let vars: Vec<String> = alpha
                .iter()
                .enumerate()
                .filter(|(_, &e)| e == 1)
                .map(|(i, _)| format!("x{}", i + 1))
                .collect();
            let (neg, mag) = if c.is_negative() { (true, -c.clone()) } else { (false, c.clone()) };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (vars.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{}", vars.join("*"))?,
                (false, false) => write!(f, "{mag}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

impl MultiAffinePoly {
    /// Sums like terms and drops zeros.
    pub fn new(
        n: usize,
        terms: impl IntoIterator<Item = (Vec<u8>, Rational)>,
    ) -> Result<Self, PolyError> {
        let mut map: BTreeMap<Vec<u8>, Rational> = BTreeMap::new();
        for (alpha, c) in terms {
            if alpha.len() != n {
                return Err(PolyError::WidthMismatch {
                    expected: n,
                    found: alpha.len(),
                });
            }
            if alpha.iter().any(|&e| e > 1) {
                return Err(PolyError::ExponentAboveOne(format!("{alpha:?}")));
            }
            *map.entry(alpha).or_default() += &c;
        }
        map.retain(|_, c| !c.is_zero());
        if map.is_empty() {
            return Err(PolyError::Zero);
        }
        Ok(MultiAffinePoly { n, terms: map })
    }

    pub fn constant(n: usize, c: Rational) -> Result<Self, PolyError> {
        MultiAffinePoly::new(n, [(vec![0; n], c)])
    }

    /// Parses the header `n t` and `t` lines of `p/q bitstring`. Digits above
    /// one in a support are reported as [`PolyError::NotMultiAffine`].
    pub fn parse(text: &str) -> Result<Self, PolyError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(PolyError::Parse {
            line: 1,
            reason: "missing header `n t`".into(),
        })?;
        let h: Vec<usize> = header
            .split_whitespace()
            .map(|f| f.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| PolyError::Parse {
                line: hline,
                reason: "header must be `n t`".into(),
            })?;
        if h.len() != 2 {
            return Err(PolyError::Parse {
                line: hline,
                reason: "header must be `n t`".into(),
            });
        }
        let (n, t) = (h[0], h[1]);
        let mut terms = BTreeMap::new();
        for (line, l) in lines {
            let fields: Vec<&str> = l.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(PolyError::Parse {
                    line,
                    reason: "expected `p/q bitstring`".into(),
                });
            }
            let c: Rational = fields[0].parse().map_err(|_| PolyError::Parse {
                line,
                reason: format!("bad coefficient `{}`", fields[0]),
            })?;
            if c.is_zero() {
                return Err(PolyError::Parse {
                    line,
                    reason: "zero coefficient".into(),
                });
            }
            let support = fields[1];
            let mut alpha = Vec::with_capacity(n);
            for ch in support.chars() {
                match ch {
                    '0' => alpha.push(0),
                    '1' => alpha.push(1),
                    '2'..='9' => {
                        return Err(PolyError::NotMultiAffine {
                            line,
                            support: support.to_string(),
                            digit: ch,
                        })
                    }
                    _ => {
                        return Err(PolyError::Parse {
                            line,
                            reason: format!("unexpected character `{ch}` in support"),
                        })
                    }
                }
            }
            if alpha.len() != n {
                return Err(PolyError::Parse {
                    line,
                    reason: format!("support must have {n} digits, found {}", alpha.len()),
                });
            }
            if terms.insert(alpha, c).is_some() {
                return Err(PolyError::Parse {
                    line,
                    reason: format!("support `{support}` repeated"),
                });
            }
        }
        if terms.len() != t {
            return Err(PolyError::CountMismatch {
                declared: t,
                found: terms.len(),
            });
        }
        MultiAffinePoly::new(n, terms)
    }

    /// Canonical file rendering; coefficients always as `p/q`.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.terms.len());
        for (alpha, c) in &self.terms {
            s.push_str(&format!("{} {}\n", c.to_pq(), bitstring(alpha)));
        }
        s
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u8>, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, alpha: &[u8]) -> Rational {
        self.terms.get(alpha).cloned().unwrap_or_default()
    }

    /// Variables occurring in some term.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&i| self.terms.keys().any(|a| a[i] == 1))
            .collect()
    }

    pub fn newton_polytope(&self) -> Polytope01 {
        Polytope01::new(self.n, self.terms.keys().cloned().collect())
            .expect("supports are distinct 0/1 vectors")
    }

    /// The largest monomial dividing every term, and the quotient.
    pub fn monomial_content(&self) -> (Vec<u8>, MultiAffinePoly) {
        let m: Vec<u8> = (0..self.n)
            .map(|i| self.terms.keys().map(|a| a[i]).min().unwrap_or(0))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(a, c)| (a.iter().zip(&m).map(|(x, y)| x - y).collect(), c.clone()))
            .collect();
        (m, MultiAffinePoly { n: self.n, terms })
    }

    /// Product of two polynomials; fails if they share a variable.
    pub fn mul_disjoint(&self, other: &MultiAffinePoly) -> Result<MultiAffinePoly, PolyError> {
        if self.n != other.n {
            return Err(PolyError::WidthMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let mine = self.variables();
        if let Some(&v) = other.variables().iter().find(|v| mine.contains(v)) {
            return Err(PolyError::OverlappingVariables(v + 1));
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let ab = a.iter().zip(b).map(|(x, y)| x + y).collect();
                terms.push((ab, c * d));
            }
        }
        MultiAffinePoly::new(self.n, terms)
    }
}

/// `f = unit · x^content · ∏ factors`, with factors on pairwise disjoint
/// variable sets, each scaled so its lexicographically least term has
/// coefficient 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyFactorization {
    pub n: usize,
    pub content: Vec<u8>,
    pub unit: Rational,
    pub factors: Vec<MultiAffinePoly>,
    /// Variable set of each factor.
    pub blocks: Vec<Vec<usize>>,
    /// Blocks of the Newton polytope factorization of `f / x^content`.
    pub newton_blocks: Vec<Vec<usize>>,
    /// True when some Newton blocks had to be merged because the split did
    /// not lift to the coefficients.
    pub coarsened: bool,
}

/// Multiplies out a factorization.
pub fn expand_product(
    factors: &[MultiAffinePoly],
    content: &[u8],
    unit: &Rational,
) -> Result<MultiAffinePoly, PolyError> {
    let n = content.len();
    let mut acc = MultiAffinePoly::new(n, [(content.to_vec(), unit.clone())])?;
    for f in factors {
        acc = acc.mul_disjoint(f)?;
    }
    Ok(acc)
}

/// Writes `f` as `c · g(x_S) · h(x_rest)` if possible, with `g` and `h`
/// normalized at the lexicographically least support `base`. Returns the
/// coefficient maps of `g` on `S` and `h` on the rest.
fn try_split(f: &MultiAffinePoly, s: &[bool]) -> Option<(MultiAffinePoly, MultiAffinePoly)> {
    let base = f.terms.keys().next().expect("nonzero polynomial").clone();
    let c0 = f.terms[&base].clone();
    let part = |alpha: &[u8], inside: bool| -> Vec<u8> {
        alpha
            .iter()
            .zip(s)
            .map(|(&a, &si)| if si == inside { a } else { 0 })
            .collect()
    };
    let glue = |alpha: &[u8], inside: bool| -> Vec<u8> {
        alpha
            .iter()
            .zip(&base)
            .zip(s)
            .map(|((&a, &b), &si)| if si == inside { a } else { b })
            .collect()
    };
    let mut g = BTreeMap::new();
    let mut h = BTreeMap::new();
    for alpha in f.terms.keys() {
        g.entry(part(alpha, true))
            .or_insert_with(|| f.coefficient(&glue(alpha, true)) / &c0);
        h.entry(part(alpha, false))
            .or_insert_with(|| f.coefficient(&glue(alpha, false)) / &c0);
    }
    if g.values().any(Rational::is_zero) || h.values().any(Rational::is_zero) {
        return None;
    }
    if g.len() * h.len() != f.terms.len() {
        return None;
    }
    for (alpha, c) in &f.terms {
        if *c != &c0 * &g[&part(alpha, true)] * &h[&part(alpha, false)] {
            return None;
        }
    }
    let g = MultiAffinePoly { n: f.n, terms: g };
    let h = MultiAffinePoly { n: f.n, terms: h };
    Some((g, h))
}

/// Splits `f` into factors on disjoint variable sets, as finely as the
/// coefficients allow. The result is verified by re-expansion.
pub fn factor_multiaffine(f: &MultiAffinePoly) -> Result<PolyFactorization, PolyError> {
    let n = f.n;
    let (content, reduced) = f.monomial_content();
    let newton = factorize(&reduced.newton_polytope())?;
    let newton_blocks = newton.blocks.clone();

    let mut factors = Vec::new();
    let mut blocks = Vec::new();
    let unit = reduced.terms.values().next().expect("nonzero").clone();
    let inv = unit.recip();
    let mut rest = MultiAffinePoly {
        n,
        terms: reduced.terms.iter().map(|(a, c)| (a.clone(), c * &inv)).collect(),
    };
    let mut remaining: Vec<Vec<usize>> = newton_blocks.clone();
    while !remaining.is_empty() {
        let (group, g, h) = smallest_lifting_group(&rest, &remaining);
        let vars: Vec<usize> = group.iter().flat_map(|&i| remaining[i].clone()).collect();
        let mut vars = vars;
        vars.sort_unstable();
        blocks.push(vars);
        factors.push(g);
        remaining = remaining
            .into_iter()
            .enumerate()
            .filter(|(i, _)| !group.contains(i))
            .map(|(_, b)| b)
            .collect();
        rest = h;
    }
    // What is left is the constant 1 after normalization.
    if rest.terms.len() != 1 || !rest.terms.values().next().expect("nonzero").is_one() {
        return Err(PolyError::Inconsistent("residual factor is not the unit".into()));
    }
    let coarsened = blocks.len() != newton_blocks.len();
    let out = PolyFactorization {
        n,
        content,
        unit,
        factors,
        blocks,
        newton_blocks,
        coarsened,
    };
    let back = expand_product(&out.factors, &out.content, &out.unit)?;
    if &back != f {
        return Err(PolyError::Inconsistent(
            "expanded factorization differs from the input".into(),
        ));
    }
    Ok(out)
}

/// Finds the smallest set of blocks containing block 0 along which `f`
/// splits. The whole set always qualifies.
fn smallest_lifting_group(
    f: &MultiAffinePoly,
    blocks: &[Vec<usize>],
) -> (Vec<usize>, MultiAffinePoly, MultiAffinePoly) {
    let k = blocks.len();
    let others = k - 1;
    let mut candidates: Vec<u64> = (0..1u64 << others).collect();
    candidates.sort_by_key(|m| (m.count_ones(), *m));
    for extra in candidates {
        let group: Vec<usize> = std::iter::once(0)
            .chain((0..others).filter(|&j| extra >> j & 1 == 1).map(|j| j + 1))
            .collect();
        let mut s = vec![false; f.n];
        for &i in &group {
            for &v in &blocks[i] {
                s[v] = true;
            }
        }
        if let Some((g, h)) = try_split(f, &s) {
            return (group, g, h);
        }
    }
    unreachable!("the full block set always splits off")
}

/// Exhaustive test: does `f` factor as `c · g · h` with `g`, `h` on a
/// bipartition of its variables into two nonempty parts? Decided by the
/// rank of the coefficient matrix indexed by the two halves of each support.
pub fn splits_over_some_bipartition(f: &MultiAffinePoly) -> bool {
    use crate::exactla::Matrix;
    let vars = f.variables();
    let k = vars.len();
    if k < 2 {
        return false;
    }
    for mask in 1u64..(1 << (k - 1)) {
        // Variable vars[k-1] always sits on the right side.
        let left: BTreeSet<usize> = (0..k - 1).filter(|&j| mask >> j & 1 == 1).map(|j| vars[j]).collect();
        let key = |alpha: &[u8], side: bool| -> Vec<u8> {
            vars.iter()
                .filter(|v| left.contains(v) == side)
                .map(|&v| alpha[v])
                .collect()
        };
        let rows: BTreeSet<Vec<u8>> = f.terms.keys().map(|a| key(a, true)).collect();
        let cols: BTreeSet<Vec<u8>> = f.terms.keys().map(|a| key(a, false)).collect();
        let rows: Vec<_> = rows.into_iter().collect();
        let cols: Vec<_> = cols.into_iter().collect();
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (alpha, c) in &f.terms {
            let r = rows.binary_search(&key(alpha, true)).expect("row key");
            let col = cols.binary_search(&key(alpha, false)).expect("col key");
            m.set(r, col, c.clone());
        }
        if m.rank() == 1 {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(text: &str) -> MultiAffinePoly {
        MultiAffinePoly::parse(text).unwrap()
    }

    #[test]
    fn newton_examples() {
        assert_eq!(poly("2 4\n1 00\n1 10\n1 01\n1 11\n").newton_polytope().num_vertices(), 4);
        assert_eq!(poly("2 1\n1 11\n").newton_polytope().vertices(), &[vec![1, 1]]);
        assert_eq!(poly("2 3\n1 00\n1 10\n1 01\n").newton_polytope().num_vertices(), 3);
    }

    #[test]
    fn content_examples() {
        let (m, g) = poly("3 2\n1 110\n1 101\n").monomial_content();
        assert_eq!(m, vec![1, 0, 0]);
        assert_eq!(g, poly("3 2\n1 010\n1 001\n"));
        let f = poly("1 2\n1 0\n1 1\n");
        assert_eq!(f.monomial_content(), (vec![0], f.clone()));
        let (m, g) = poly("3 1\n1 111\n").monomial_content();
        assert_eq!(m, vec![1, 1, 1]);
        assert_eq!(g, poly("3 1\n1 000\n"));
    }

    #[test]
    fn factor_examples() {
        let f = factor_multiaffine(&poly("2 4\n1 00\n1 10\n1 01\n1 11\n")).unwrap();
        assert_eq!(f.factors, vec![poly("2 2\n1 00\n1 10\n"), poly("2 2\n1 00\n1 01\n")]);
        assert!(f.unit.is_one());

        let f = factor_multiaffine(&poly("3 2\n1 110\n1 101\n")).unwrap();
        assert_eq!(f.content, vec![1, 0, 0]);
        assert_eq!(f.factors, vec![poly("3 2\n1 010\n1 001\n")]);

        let f = factor_multiaffine(&poly("4 4\n1 1010\n1 1001\n1 0110\n1 0101\n")).unwrap();
        assert_eq!(f.blocks, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(f.factors[0], poly("4 2\n1 1000\n1 0100\n"));
        assert_eq!(f.factors[1], poly("4 2\n1 0010\n1 0001\n"));
    }

    #[test]
    fn newton_split_that_does_not_lift_is_coarsened() {
        let f = poly("2 4\n1 00\n1 10\n1 01\n2 11\n");
        let out = factor_multiaffine(&f).unwrap();
        assert_eq!(out.newton_blocks.len(), 2);
        assert_eq!(out.factors.len(), 1);
        assert!(out.coarsened);
        assert!(!splits_over_some_bipartition(&f));
    }

    #[test]
    fn scalar_and_monomial_inputs() {
        let f = factor_multiaffine(&poly("3 1\n-3/2 101\n")).unwrap();
        assert!(f.factors.is_empty());
        assert_eq!(f.unit, Rational::new(-3, 2));
        assert_eq!(f.content, vec![1, 0, 1]);
    }

    #[test]
    fn expand_examples() {
        let a = poly("2 2\n1 00\n1 10\n");
        let b = poly("2 2\n1 00\n1 01\n");
        assert_eq!(
            expand_product(&[a.clone(), b], &[0, 0], &Rational::one()).unwrap(),
            poly("2 4\n1 00\n1 10\n1 01\n1 11\n")
        );
        let c = poly("3 2\n1 010\n1 001\n");
        assert_eq!(
            expand_product(&[c], &[1, 0, 0], &Rational::one()).unwrap(),
            poly("3 2\n1 110\n1 101\n")
        );
        let d = poly("1 1\n2 1\n");
        assert_eq!(
            expand_product(&[d], &[0], &Rational::new(3, 2)).unwrap(),
            poly("1 1\n3 1\n")
        );
        assert!(matches!(
            expand_product(&[a.clone(), a], &[0, 0], &Rational::one()),
            Err(PolyError::OverlappingVariables(1))
        ));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            MultiAffinePoly::parse("2 1\n1 20\n"),
            Err(PolyError::NotMultiAffine { line: 2, .. })
        ));
        assert!(matches!(
            MultiAffinePoly::parse("2 2\n1 10\n1 10\n"),
            Err(PolyError::Parse { line: 3, .. })
        ));
        assert!(matches!(
            MultiAffinePoly::parse("2 2\n1 10\n"),
            Err(PolyError::CountMismatch { .. })
        ));
        assert!(MultiAffinePoly::parse("2 1\n0 10\n").is_err());
    }

    #[test]
    fn display_and_text() {
        let f = poly("3 3\n-1 000\n3/2 101\n1 010\n");
        assert_eq!(f.to_string(), "-1 + x2 + 3/2*x1*x3");
        assert_eq!(MultiAffinePoly::parse(&f.to_text()).unwrap(), f);
        assert!(f.to_text().contains("-1/1 000"));
    }
}
