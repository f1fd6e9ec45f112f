use std::fmt;

use super::bivar::BivarPoly;
use super::parse::parse_poly;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Affine equation of a projective plane curve, studied as a germ at the
/// origin, together with the degree of the projective curve it comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurveGerm<T> {
    poly: BivarPoly<T>,
    projective_degree: u32,
}

impl<T: Scalar> PlaneCurveGerm<T> {
    /// Checks that the curve passes through the origin and that the stated
    /// degree is at least the total degree of the equation.
    pub fn new(poly: BivarPoly<T>, projective_degree: u32) -> Result<Self> {
        let total = match poly.total_degree() {
            None => return Err(Error::InvalidGerm("polynomial is identically zero".into())),
            Some(d) => d,
        };
        if !poly.constant_term().is_zero() {
            return Err(Error::InvalidGerm(
                "nonzero constant term: the curve misses the origin".into(),
            ));
        }
        if projective_degree == 0 || projective_degree < total {
            return Err(Error::InvalidGerm(format!(
                "projective degree {projective_degree} is below the total degree {total}"
            )));
        }
        Ok(Self {
            poly,
            projective_degree,
        })
    }

    /// Germ whose projective degree is the total degree of `poly`.
    pub fn from_poly(poly: BivarPoly<T>) -> Result<Self> {
        let d = poly.total_degree().unwrap_or(0);
        Self::new(poly, d)
    }

    /// Parses the `"<polynomial>:<projective degree>"` curve syntax.
    pub fn parse(text: &str) -> Result<Self> {
        let (poly_text, deg_text) = text.rsplit_once(':').ok_or_else(|| {
            Error::InvalidFormat(format!(
                "curve '{text}' must look like \"<polynomial>:<degree>\""
            ))
        })?;
        let degree: u32 = deg_text.trim().parse().map_err(|_| {
            Error::InvalidFormat(format!("'{}' is not a projective degree", deg_text.trim()))
        })?;
        Self::new(parse_poly(poly_text)?, degree)
    }

    pub fn poly(&self) -> &BivarPoly<T> {
        &self.poly
    }

    pub fn projective_degree(&self) -> u32 {
        self.projective_degree
    }
}

impl<T: Scalar> fmt::Display for PlaneCurveGerm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.poly, self.projective_degree)
    }
}

#[cfg(test)]
mod tests {
    use crate::Germ;

    #[test]
    fn parses_curve_syntax() {
        let g = Germ::parse("y-x^2-y^3:3").unwrap();
        assert_eq!(g.projective_degree(), 3);
        assert_eq!(g.to_string(), "y - x^2 - y^3:3");
    }

    #[test]
    fn rejects_bad_germs() {
        assert_eq!(Germ::parse("y - 1:2").unwrap_err().code(), "INVALID_GERM");
        assert_eq!(Germ::parse("y^3 - x:2").unwrap_err().code(), "INVALID_GERM");
        assert_eq!(Germ::parse("0:2").unwrap_err().code(), "INVALID_GERM");
        assert_eq!(Germ::parse("y - x^2").unwrap_err().code(), "INVALID_FORMAT");
        assert_eq!(
            Germ::parse("y - x^2:two").unwrap_err().code(),
            "INVALID_FORMAT"
        );
        assert_eq!(
            Germ::parse("y - z:2").unwrap_err().code(),
            "UNKNOWN_VARIABLE"
        );
    }
}
