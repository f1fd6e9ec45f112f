//! The dual graph of `D_*`, its contraction to the contact tropical curve,
//! canonical codes and isomorphism tests, and text export.

mod canonical;
mod curve;
mod export;
mod graph;

pub use canonical::{canonical_code, graph_isomorphic, is_isomorphic, CanonicalCode};
pub use curve::{
    contract_to_tropical, tropical_closed_form, tropical_curve, Edge, Leg, Length, TropicalCurve,
};
pub use export::{Exportable, Format};
pub use graph::{dual_graph, DualGraph};

/// Contact tropical curves carry integer lengths.
pub type Tropical = TropicalCurve<u64>;
