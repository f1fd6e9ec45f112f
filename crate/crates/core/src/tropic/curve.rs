use std::collections::BTreeSet;
use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_traits::Num;
use serde::{Deserialize, Serialize};

use super::graph::{dual_graph, DualGraph};
use crate::blowup::ComponentLabel;
use crate::error::{Error, Result};
use crate::euclid::EuclideanSequence;

/// Edge and leg lengths: exact, totally ordered numbers.
pub trait Length: Clone + Debug + Display + Ord + Hash + Num + Send + Sync {}

impl<L: Clone + Debug + Display + Ord + Hash + Num + Send + Sync> Length for L {}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge<L> {
    pub u: usize,
    pub v: usize,
    pub len: L,
}

/// Half-edge attached to the single vertex `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Leg<L> {
    pub v: usize,
    pub len: L,
}

/// A metric tree with legs. Vertices are indices `0..vertices.len()`,
/// optionally labelled by the `D_*` component they come from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropicalCurve<L> {
    labels: Vec<Option<ComponentLabel>>,
    edges: Vec<Edge<L>>,
    legs: Vec<Leg<L>>,
}

impl<L: Length> TropicalCurve<L> {
    /// Normalizes edges to `u < v`, sorts edges and legs, and checks that the
    /// result is a tree with positive lengths and at most one leg.
    pub fn new(
        labels: Vec<Option<ComponentLabel>>,
        edges: Vec<Edge<L>>,
        legs: Vec<Leg<L>>,
    ) -> Result<Self> {
        let mut edges: Vec<_> = edges
            .into_iter()
            .map(|e| {
                if e.u <= e.v {
                    e
                } else {
                    Edge {
                        u: e.v,
                        v: e.u,
                        len: e.len,
                    }
                }
            })
            .collect();
        edges.sort();
        let mut legs = legs;
        legs.sort();
        let t = Self {
            labels,
            edges,
            legs,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn labels(&self) -> &[Option<ComponentLabel>] {
        &self.labels
    }

    pub fn edges(&self) -> &[Edge<L>] {
        &self.edges
    }

    pub fn legs(&self) -> &[Leg<L>] {
        &self.legs
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn vertex_of(&self, label: ComponentLabel) -> Option<usize> {
        self.labels.iter().position(|l| *l == Some(label))
    }

    /// Degree counting both edges and legs.
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.u == v || e.v == v).count()
            + self.legs.iter().filter(|l| l.v == v).count()
    }

    /// Neighbours of each vertex with the connecting edge length.
    pub fn adjacency(&self) -> Vec<Vec<(usize, L)>> {
        let mut adj = vec![Vec::new(); self.labels.len()];
        for e in &self.edges {
            adj[e.u].push((e.v, e.len.clone()));
            adj[e.v].push((e.u, e.len.clone()));
        }
        adj
    }

    /// Sum of all edge and leg lengths.
    pub fn total_length(&self) -> L {
        self.edges
            .iter()
            .map(|e| e.len.clone())
            .chain(self.legs.iter().map(|l| l.len.clone()))
            .fold(L::zero(), |a, b| a + b)
    }

    /// Vertices of degree 3 (legs included).
    pub fn branch_vertices(&self) -> Vec<usize> {
        (0..self.labels.len())
            .filter(|&v| self.degree(v) == 3)
            .collect()
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InternalConsistency(format!("tropical curve: {msg}")));
        let n = self.labels.len();
        if n == 0 {
            return bad("no vertices".into());
        }
        let named: Vec<_> = self.labels.iter().flatten().collect();
        if named.iter().collect::<BTreeSet<_>>().len() != named.len() {
            return bad("repeated label".into());
        }
        for e in &self.edges {
            if e.u == e.v || e.v >= n {
                return bad(format!("bad edge {}-{}", e.u, e.v));
            }
        }
        if self.legs.iter().any(|l| l.v >= n) {
            return bad("leg at unknown vertex".into());
        }
        let zero = L::zero();
        if self.edges.iter().any(|e| e.len <= zero) || self.legs.iter().any(|l| l.len <= zero) {
            return bad("non-positive length".into());
        }
        if self.legs.len() > 1 {
            return bad(format!("{} legs", self.legs.len()));
        }
        if self.edges.len() + 1 != n {
            return bad(format!("{} edges on {n} vertices", self.edges.len()));
        }
        let adj = self.adjacency();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            if !std::mem::replace(&mut seen[v], true) {
                stack.extend(adj[v].iter().map(|(w, _)| *w));
            }
        }
        if seen.contains(&false) {
            return bad("not connected".into());
        }
        Ok(())
    }

    /// The structural facts every contact tropical curve satisfies: a unique
    /// degree-3 vertex, and `CStar`, `A(1,1)` leaves without legs.
    pub fn check_contact_shape(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InternalConsistency(format!("tropical curve: {msg}")));
        if self.branch_vertices().len() != 1 || (0..self.num_vertices()).any(|v| self.degree(v) > 3)
        {
            return bad("no unique vertex of degree 3");
        }
        for label in [ComponentLabel::CStar, ComponentLabel::a(1, 1)] {
            match self.vertex_of(label) {
                Some(v) if self.degree(v) == 1 && self.legs.iter().all(|l| l.v != v) => {}
                _ => return bad("CStar and A(1,1) must be leaves without legs"),
            }
        }
        Ok(())
    }
}

/// Vertices kept in the tropical curve, in label order.
fn kept_labels(s: &EuclideanSequence) -> Vec<Option<ComponentLabel>> {
    let mut labels = vec![Some(ComponentLabel::CStar), Some(ComponentLabel::EStar)];
    labels.extend((1..=s.r()).map(|j| Some(ComponentLabel::a(j, 1))));
    labels
}

fn is_kept(label: ComponentLabel) -> bool {
    !matches!(label, ComponentLabel::A(idx) if idx.i > 1)
}

/// Suppresses every `A(j,i)` with `i > 1` from a unit-length dual graph,
/// summing lengths along suppressed chains; a chain dying out in a
/// suppressed leaf becomes a leg.
pub fn contract_to_tropical(g: &DualGraph, s: &EuclideanSequence) -> Result<TropicalCurve<u64>> {
    let labels = kept_labels(s);
    let id = |l: ComponentLabel| {
        labels
            .iter()
            .position(|x| *x == Some(l))
            .ok_or_else(|| Error::InternalConsistency(format!("graph vertex {l} not in sequence")))
    };
    let adj = g.neighbours();
    let mut edges = Vec::new();
    let mut legs = Vec::new();
    for &start in adj.keys().filter(|l| is_kept(**l)) {
        for &first in &adj[&start] {
            let (mut prev, mut cur, mut len) = (start, first, 1u64);
            loop {
                if is_kept(cur) {
                    if start < cur {
                        edges.push(Edge {
                            u: id(start)?,
                            v: id(cur)?,
                            len,
                        });
                    }
                    break;
                }
                let onward: Vec<_> = adj[&cur].iter().filter(|&&w| w != prev).copied().collect();
                match onward.as_slice() {
                    [] => {
                        legs.push(Leg { v: id(start)?, len });
                        break;
                    }
                    [w] => {
                        (prev, cur, len) = (cur, *w, len + 1);
                    }
                    _ => {
                        return Err(Error::InternalConsistency(format!(
                            "suppressed vertex {cur} has degree > 2"
                        )))
                    }
                }
            }
        }
    }
    if adj.len() as u64 != 2 + s.total_steps() {
        return Err(Error::InternalConsistency(
            "graph does not match the sequence".into(),
        ));
    }
    let t = TropicalCurve::new(labels, edges, legs)?;
    t.check_contact_shape()?;
    Ok(t)
}

/// The contact tropical curve written down directly from the quotients.
pub fn tropical_closed_form(s: &EuclideanSequence) -> Result<TropicalCurve<u64>> {
    let r = s.r();
    // vertex ids: CStar = 0, EStar = 1, A(j,1) = j + 1
    let a = |j: usize| j + 1;
    let mut edges = vec![
        Edge { u: 0, v: 1, len: 1 },
        Edge {
            u: 1,
            v: a(r),
            len: 1,
        },
    ];
    if r >= 2 {
        edges.push(Edge {
            u: 1,
            v: a(r - 1),
            len: s.k(r),
        });
    }
    for j in 2..r {
        edges.push(Edge {
            u: a(j + 1),
            v: a(j - 1),
            len: s.k(j),
        });
    }
    let mut legs = Vec::new();
    if r == 1 {
        legs.push(Leg {
            v: 1,
            len: s.k(1) - 1,
        });
    } else if s.k(1) > 1 {
        legs.push(Leg {
            v: a(2),
            len: s.k(1) - 1,
        });
    }
    TropicalCurve::new(kept_labels(s), edges, legs)
}

/// `Γ` for the sequence, by contraction, cross-checked against the closed form.
pub fn tropical_curve(s: &EuclideanSequence) -> Result<TropicalCurve<u64>> {
    let contracted = contract_to_tropical(&dual_graph(s)?, s)?;
    let closed = tropical_closed_form(s)?;
    if contracted != closed {
        return Err(Error::InternalConsistency(format!(
            "contraction and closed form disagree for ({},{})",
            s.m(),
            s.n()
        )));
    }
    Ok(contracted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euclid::{euclidean_sequence, ContactType};

    fn seq(m: u64, n: u64) -> EuclideanSequence {
        euclidean_sequence(ContactType::new(m, n).unwrap()).unwrap()
    }

    type Described = (Vec<(String, String, u64)>, Vec<(String, u64)>);

    /// Edges as `(label, label, len)` with labels rendered, plus legs.
    fn described(t: &TropicalCurve<u64>) -> Described {
        let name = |v: usize| t.labels()[v].unwrap().to_string();
        let mut edges: Vec<_> = t
            .edges()
            .iter()
            .map(|e| (name(e.u), name(e.v), e.len))
            .collect();
        edges.sort();
        (edges, t.legs().iter().map(|l| (name(l.v), l.len)).collect())
    }

    fn e(u: &str, v: &str, len: u64) -> (String, String, u64) {
        (u.to_string(), v.to_string(), len)
    }

    #[test]
    fn five_eight() {
        let (mut want, legs) = (
            vec![
                e("CStar", "EStar", 1),
                e("EStar", "A(4,1)", 1),
                e("A(2,1)", "A(4,1)", 1),
                e("EStar", "A(3,1)", 2),
                e("A(1,1)", "A(3,1)", 1),
            ],
            vec![],
        );
        want.sort();
        assert_eq!(
            described(&tropical_curve(&seq(5, 8)).unwrap()),
            (want, legs)
        );
    }

    #[test]
    fn three_seven_has_a_leg() {
        let (edges, legs) = described(&tropical_curve(&seq(3, 7)).unwrap());
        let mut want = vec![
            e("CStar", "EStar", 1),
            e("EStar", "A(2,1)", 1),
            e("EStar", "A(1,1)", 3),
        ];
        want.sort();
        assert_eq!(edges, want);
        assert_eq!(legs, vec![("A(2,1)".to_string(), 1)]);
    }

    #[test]
    fn one_n_and_fibonacci() {
        for n in 2..10 {
            let (edges, legs) = described(&tropical_curve(&seq(1, n)).unwrap());
            assert_eq!(edges.len(), 2);
            assert_eq!(legs, vec![("EStar".to_string(), n - 1)]);
        }
        let t = tropical_curve(&seq(13, 21)).unwrap();
        let (edges, legs) = described(&t);
        assert!(legs.is_empty());
        assert!(edges.contains(&e("EStar", "A(5,1)", 2)));
        assert!(edges.contains(&e("EStar", "A(6,1)", 1)));
        assert_eq!(edges.iter().filter(|x| x.2 == 1).count(), 6);
    }

    #[test]
    fn grid_agreement_and_shape() {
        for n in 2..=80 {
            for m in 1..n {
                let s = seq(m, n);
                let t = tropical_curve(&s).unwrap();
                assert_eq!(t.num_vertices(), s.r() + 2);
                assert_eq!(t.total_length(), 1 + s.total_steps());
            }
        }
    }

    #[test]
    fn rejects_two_legs_and_zero_lengths() {
        let labels = vec![None, None];
        let edge = vec![Edge {
            u: 0,
            v: 1,
            len: 1u64,
        }];
        let legs = vec![Leg { v: 0, len: 1 }, Leg { v: 1, len: 1 }];
        assert!(TropicalCurve::new(labels.clone(), edge, legs).is_err());
        assert!(TropicalCurve::new(
            labels,
            vec![Edge {
                u: 0,
                v: 1,
                len: 0u64
            }],
            vec![]
        )
        .is_err());
    }
}
