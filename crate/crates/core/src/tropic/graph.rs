use std::collections::{BTreeMap, BTreeSet};

use super::curve::{Edge, TropicalCurve};
use crate::blowup::{dstar_incidence, ComponentLabel};
use crate::error::{Error, Result};
use crate::euclid::EuclideanSequence;

/// Incidence graph of the components of `D_*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    vertices: Vec<ComponentLabel>,
    edges: BTreeSet<(ComponentLabel, ComponentLabel)>,
}

impl DualGraph {
    /// Builds and validates the graph: a tree whose only degree-3 vertex is
    /// `EStar`, with three leaves among which `CStar` and `A(1,1)`.
    pub fn new(
        vertices: Vec<ComponentLabel>,
        edges: impl IntoIterator<Item = (ComponentLabel, ComponentLabel)>,
    ) -> Result<Self> {
        let edges = edges
            .into_iter()
            .map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
            .collect();
        let g = Self { vertices, edges };
        g.validate()?;
        Ok(g)
    }

    pub fn vertices(&self) -> &[ComponentLabel] {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<(ComponentLabel, ComponentLabel)> {
        &self.edges
    }

    pub fn neighbours(&self) -> BTreeMap<ComponentLabel, Vec<ComponentLabel>> {
        let mut adj: BTreeMap<_, Vec<_>> = self.vertices.iter().map(|&v| (v, Vec::new())).collect();
        for &(a, b) in &self.edges {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        adj
    }

    pub fn degree(&self, v: ComponentLabel) -> usize {
        self.edges
            .iter()
            .filter(|(a, b)| *a == v || *b == v)
            .count()
    }

    /// The same tree with every edge of length 1 and no legs.
    pub fn to_unit_metric(&self) -> TropicalCurve<u64> {
        let id = |l: &ComponentLabel| {
            self.vertices
                .iter()
                .position(|v| v == l)
                .expect("validated edge")
        };
        let edges = self
            .edges
            .iter()
            .map(|(a, b)| Edge {
                u: id(a),
                v: id(b),
                len: 1,
            })
            .collect();
        TropicalCurve::new(
            self.vertices.iter().copied().map(Some).collect(),
            edges,
            Vec::new(),
        )
        .expect("a valid dual graph is a tree")
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InternalConsistency(format!("dual graph: {msg}")));
        let distinct: BTreeSet<_> = self.vertices.iter().collect();
        if distinct.len() != self.vertices.len() {
            return bad("repeated vertex".into());
        }
        if let Some((a, b)) = self
            .edges
            .iter()
            .find(|(a, b)| a == b || !distinct.contains(a) || !distinct.contains(b))
        {
            return bad(format!("bad edge {a}-{b}"));
        }
        if self.edges.len() + 1 != self.vertices.len() {
            return bad(format!(
                "{} edges on {} vertices",
                self.edges.len(),
                self.vertices.len()
            ));
        }
        let adj = self.neighbours();
        let mut seen = BTreeSet::new();
        let mut stack = vec![self.vertices[0]];
        while let Some(v) = stack.pop() {
            if seen.insert(v) {
                stack.extend(adj[&v].iter().copied());
            }
        }
        if seen.len() != self.vertices.len() {
            return bad("not connected".into());
        }
        let branch: Vec<_> = adj
            .iter()
            .filter(|(_, n)| n.len() >= 3)
            .map(|(v, _)| *v)
            .collect();
        if branch != [ComponentLabel::EStar] || adj[&ComponentLabel::EStar].len() != 3 {
            return bad("EStar is not the unique vertex of degree 3".into());
        }
        let leaves: Vec<_> = adj
            .iter()
            .filter(|(_, n)| n.len() == 1)
            .map(|(v, _)| *v)
            .collect();
        if leaves.len() != 3
            || !leaves.contains(&ComponentLabel::CStar)
            || !leaves.contains(&ComponentLabel::a(1, 1))
        {
            return bad(format!("unexpected leaves {leaves:?}"));
        }
        Ok(())
    }
}

/// Dual graph of `D_*` for the sequence.
pub fn dual_graph(s: &EuclideanSequence) -> Result<DualGraph> {
    let inc = dstar_incidence(s);
    DualGraph::new(inc.components, inc.incident_pairs)
}
