//! Exact polynomial algebra: sparse bivariate polynomials, dense univariate
//! polynomials, resultants, gcds, the text parser and plane curve germs.

mod bivar;
mod elimination;
mod germ;
mod parse;
mod univar;

pub use bivar::{BivarPoly, Monomial};
pub use elimination::{gcd, resultant_in_y};
pub use germ::PlaneCurveGerm;
pub use parse::{parse_poly, ParseError};
pub use univar::UniPoly;
