//! Combinatorial families of 0/1-polytopes and the connectivity criteria
//! that predict their indecomposability.
//!
//! Every constructor enumerates vertices exhaustively and stops with
//! [`FamilyError::CapExceeded`] once a [`Limits`] bound is hit.

mod complex;
mod flow;
mod graph;
mod group;
mod matroid;
mod poset;

pub use complex::SimplicialComplex;
pub use flow::FlowNetwork;
pub use graph::SimpleGraph;
pub use group::PermGroup;
pub use matroid::Matroid;
pub use poset::Poset;

use crate::polytope::{Polytope01, PolytopeError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("{what} exceeds the cap of {limit}")]
    CapExceeded { what: &'static str, limit: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T, FamilyError> {
    Err(FamilyError::Invalid(msg.into()))
}

/// Guardrails for exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_ground: usize,
    pub max_vertices: usize,
    pub max_group: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_ground: 20,
            max_vertices: 100_000,
            max_group: 10_080,
        }
    }
}

impl Limits {
    pub(crate) fn check_ground(&self, n: usize) -> Result<(), FamilyError> {
        // Subsets are stored as u64 masks.
        let limit = self.max_ground.min(63);
        if n > limit {
            return Err(FamilyError::CapExceeded {
                what: "ground set",
                limit,
            });
        }
        Ok(())
    }

    pub(crate) fn check_vertices(&self, count: usize) -> Result<(), FamilyError> {
        if count > self.max_vertices {
            return Err(FamilyError::CapExceeded {
                what: "vertex count",
                limit: self.max_vertices,
            });
        }
        Ok(())
    }
}

/// The family names understood by [`build`] and [`oracle`].
pub const FAMILY_NAMES: [&str; 12] = [
    "order",
    "chain",
    "stable",
    "clique",
    "matching",
    "edgepoly",
    "antiblocking",
    "purefaces",
    "matroid-bases",
    "matroid-indep",
    "flow",
    "group",
];

/// Parses `text` in the input format of `family` and builds its polytope.
pub fn build(family: &str, text: &str, limits: &Limits) -> Result<Polytope01, FamilyError> {
    match family {
        "order" => Poset::parse(text)?.order_polytope(limits),
        "chain" => Poset::parse(text)?.chain_polytope(limits),
        "stable" => SimpleGraph::parse(text)?.stable_set_polytope(limits),
        "clique" => SimpleGraph::parse(text)?.clique_polytope(limits),
        "matching" => SimpleGraph::parse(text)?.matching_polytope(limits),
        "edgepoly" => SimpleGraph::parse(text)?.edge_polytope(),
        "antiblocking" => SimplicialComplex::parse(text)?.antiblocking_polytope(limits),
        "purefaces" => SimplicialComplex::parse(text)?.pure_face_polytope(),
        "matroid-bases" => Matroid::parse(text)?.base_polytope(),
        "matroid-indep" => Matroid::parse(text)?.independence_polytope(limits),
        "flow" => FlowNetwork::parse(text)?.flow_polytope(limits),
        "group" => PermGroup::parse(text, limits)?.permutation_polytope(),
        other => invalid(format!("unknown family `{other}`")),
    }
}

/// What a combinatorial criterion predicts about a family member.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct OraclePrediction {
    /// Name of the criterion that was evaluated.
    pub criterion: &'static str,
    /// Literal verdict of the criterion.
    pub connected: bool,
    /// Predicted number of proper factors.
    pub factor_count: usize,
}

/// Evaluates the combinatorial criterion for `family` on `text`.
pub fn oracle(family: &str, text: &str, limits: &Limits) -> Result<OraclePrediction, FamilyError> {
    let pred = |criterion, connected, factor_count| OraclePrediction {
        criterion,
        connected,
        factor_count,
    };
    Ok(match family {
        "order" | "chain" => {
            let p = Poset::parse(text)?;
            let g = p.comparability_graph();
            pred("comparability graph connected", g.is_connected(), g.components().len())
        }
        "stable" => {
            let g = SimpleGraph::parse(text)?;
            pred("graph connected", g.is_connected(), g.components().len())
        }
        "clique" => {
            let g = SimpleGraph::parse(text)?.complement();
            pred("complement connected", g.is_connected(), g.components().len())
        }
        "matching" => {
            let g = SimpleGraph::parse(text)?;
            g.check_matching_input()?;
            pred("graph connected", g.is_connected(), g.components().len())
        }
        "antiblocking" => {
            let c = SimplicialComplex::parse(text)?;
            c.check_limits(limits)?;
            pred(
                "exclusion graph connected",
                c.exclusion_graph().is_connected(),
                c.vertex_exclusion_components().len(),
            )
        }
        "purefaces" => {
            let c = SimplicialComplex::parse(text)?;
            c.check_limits(limits)?;
            let link = c.delete_cone_points()?;
            let count = link.vertex_exclusion_components().len();
            pred("exclusion graph connected after deleting cone points", count == 1, count)
        }
        "matroid-bases" | "matroid-indep" => {
            let m = Matroid::parse(text)?;
            m.check_limits(limits)?;
            let connected = m.is_connected();
            let count = if family == "matroid-bases" {
                m.delete_loops_and_coloops().connected_components().len()
            } else {
                m.delete_loops().connected_components().len()
            };
            pred("matroid connected", connected, count)
        }
        "flow" => {
            let d = FlowNetwork::parse(text)?;
            pred(
                "no s-t separator of size 1",
                d.is_separator_free(),
                d.proper_piece_count(),
            )
        }
        "edgepoly" | "group" => {
            return invalid(format!("family `{family}` has no combinatorial criterion"))
        }
        other => return invalid(format!("unknown family `{other}`")),
    })
}

/// Connected components of the graph on `0..n` with the given edges, each
/// sorted, ordered by smallest element.
pub(crate) fn components(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for (a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Renders a mask as a 1-based set such as `{1,3}`.
pub(crate) fn set_label(mask: u64) -> String {
    let items: Vec<String> = (0..64)
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", items.join(","))
}

pub(crate) fn mask_to_vertex(mask: u64, n: usize) -> Vec<u8> {
    (0..n).map(|i| ((mask >> i) & 1) as u8).collect()
}

pub(crate) fn polytope_from_masks(n: usize, masks: &[u64]) -> Result<Polytope01, FamilyError> {
    Ok(Polytope01::from_points(
        n,
        masks.iter().map(|&m| mask_to_vertex(m, n)),
    )?)
}

/// Non-empty, comment-free lines with their 1-based numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn parse_fields(line: usize, text: &str) -> Result<Vec<usize>, FamilyError> {
    text.split_whitespace()
        .map(|f| {
            f.parse::<usize>().map_err(|_| FamilyError::Parse {
                line,
                reason: format!("expected a non-negative integer, found `{f}`"),
            })
        })
        .collect()
}

/// Converts a 1-based index to 0-based, checking it lies in `1..=n`.
pub(crate) fn element(line: usize, i: usize, n: usize) -> Result<usize, FamilyError> {
    if i == 0 || i > n {
        return Err(FamilyError::Parse {
            line,
            reason: format!("index {i} is outside 1..={n}"),
        });
    }
    Ok(i - 1)
}

pub(crate) fn parse_header(
    text: &str,
    expected: usize,
    shape: &str,
) -> Result<(usize, Vec<usize>), FamilyError> {
    let (line, header) = content_lines(text).next().ok_or(FamilyError::Parse {
        line: 1,
        reason: format!("missing header `{shape}`"),
    })?;
    let fields = parse_fields(line, header)?;
    if fields.len() != expected {
        return Err(FamilyError::Parse {
            line,
            reason: format!("header must be `{shape}`"),
        });
    }
    Ok((line, fields))
}
