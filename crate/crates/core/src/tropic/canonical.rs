use std::fmt;

use serde::Serialize;

use super::curve::{Length, TropicalCurve};
use super::graph::DualGraph;
use crate::blowup::ComponentLabel;

/// Deterministic encoding of a metric tree with legs; equal codes mean
/// isomorphic trees.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CanonicalCode(String);

impl CanonicalCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn encode<L: Length>(
    t: &TropicalCurve<L>,
    adj: &[Vec<(usize, L)>],
    v: usize,
    parent: Option<usize>,
    labeled: bool,
) -> String {
    let mut children: Vec<String> = adj[v]
        .iter()
        .filter(|(w, _)| Some(*w) != parent)
        .map(|(w, len)| format!("e{len}{}", encode(t, adj, *w, Some(v), labeled)))
        .collect();
    children.extend(
        t.legs()
            .iter()
            .filter(|l| l.v == v)
            .map(|l| format!("l{}", l.len)),
    );
    children.sort();
    let mark = if labeled && t.labels()[v] == Some(ComponentLabel::CStar) {
        "*"
    } else {
        ""
    };
    format!("({mark}{})", children.concat())
}

/// AHU-style code rooted at the unique degree-3 vertex. Trees without such
/// a vertex are rooted at whichever vertex gives the smallest code, which is
/// still an isomorphism invariant. In labeled mode the `CStar` vertex is
/// marked.
pub fn canonical_code<L: Length>(t: &TropicalCurve<L>, labeled: bool) -> CanonicalCode {
    let adj = t.adjacency();
    let branch = t.branch_vertices();
    let roots = if branch.len() == 1 {
        branch
    } else {
        (0..t.num_vertices()).collect()
    };
    let code = roots
        .into_iter()
        .map(|root| encode(t, &adj, root, None, labeled))
        .min()
        .unwrap_or_default();
    CanonicalCode(code)
}

/// Unlabeled metric isomorphism, legs distinct from edges.
pub fn is_isomorphic<L: Length>(t: &TropicalCurve<L>, t2: &TropicalCurve<L>) -> bool {
    canonical_code(t, false) == canonical_code(t2, false)
}

/// Unlabeled isomorphism of the underlying trees.
pub fn graph_isomorphic(g: &DualGraph, g2: &DualGraph) -> bool {
    canonical_code(&g.to_unit_metric(), false) == canonical_code(&g2.to_unit_metric(), false)
}
