//! Exact computations on unibranch plane curve singularities: contact types,
//! euclidean sequences, resolution chains, tropical dual graphs and the
//! bounds derived from them.

pub mod blowup;
pub mod error;
pub mod euclid;
pub mod hypertangency;
pub mod invariants;
pub mod localgeom;
pub mod polyalgebra;
pub mod scalar;
pub mod tropic;

pub use error::{Error, ErrorKind, Result};
pub use scalar::Scalar;

use num_rational::{BigRational, Rational64};

pub type Rat = BigRational;
pub type Poly = polyalgebra::BivarPoly<Rat>;
pub type UniPoly = polyalgebra::UniPoly<Rat>;
pub type Germ = polyalgebra::PlaneCurveGerm<Rat>;

pub type Poly64 = polyalgebra::BivarPoly<Rational64>;
pub type Germ64 = polyalgebra::PlaneCurveGerm<Rational64>;
pub type Tropical = tropic::Tropical;
