//! Pairwise analysis of two germs at the origin: hypertangency via the
//! Bézout count, and measurement (never assumption) of the mirror theorem
//! and the tangent-intersection bound.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::euclid::{equivalent, euclidean_sequence, ContactType};
use crate::invariants::inverse_bound;
use crate::localgeom::{contact_type, intersection_multiplicity, Contact};
use crate::polyalgebra::PlaneCurveGerm;
use crate::scalar::Scalar;
use crate::tropic::{is_isomorphic, tropical_curve};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypertangencyReport {
    pub type_b: ContactType,
    pub type_c: ContactType,
    pub i_q: Contact,
    pub bezout_total: u64,
    pub hypertangent: bool,
    /// `m n' = m' n`.
    pub mirror_holds: bool,
    pub tropical_iso: bool,
    /// The lower bound for tangent pairs of equivalent type, when it applies
    /// (`i_q > m m'`).
    pub inverse_bound: Option<u64>,
    pub inverse_bound_ok: Option<bool>,
}

impl HypertangencyReport {
    /// Every way the report contradicts a theorem it measures.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.hypertangent && !self.mirror_holds {
            out.push(format!(
                "hypertangent pair with types {} and {} but m n' != m' n",
                self.type_b, self.type_c
            ));
        }
        if self.mirror_holds != self.tropical_iso {
            out.push(format!(
                "fraction equality ({}) disagrees with tropical isomorphism ({})",
                self.mirror_holds, self.tropical_iso
            ));
        }
        if let (Some(false), Some(bound)) = (self.inverse_bound_ok, self.inverse_bound) {
            out.push(format!(
                "tangent intersection {} is below the bound {bound}",
                self.i_q
            ));
        }
        out
    }

    fn check(self) -> Result<Self> {
        match self.violations().first() {
            Some(v) => Err(Error::TheoremViolation(v.clone())),
            None => Ok(self),
        }
    }
}

/// Analyzes two germs unibranch at the origin with projective degrees at
/// least 2 and no common component.
pub fn analyze_pair<T: Scalar>(
    b: &PlaneCurveGerm<T>,
    c: &PlaneCurveGerm<T>,
) -> Result<HypertangencyReport> {
    for g in [b, c] {
        if g.projective_degree() < 2 {
            return Err(Error::DegreeTooSmall {
                degree: u64::from(g.projective_degree()),
                required: 2,
            });
        }
    }
    let type_b = contact_type(b)?;
    let type_c = contact_type(c)?;
    let i_q = intersection_multiplicity(b, c)?;
    let i = i_q.finite().ok_or(Error::CommonComponent)?;
    let bezout_total = u64::from(b.projective_degree()) * u64::from(c.projective_degree());
    if i > bezout_total {
        return Err(Error::InternalConsistency(format!(
            "local intersection {i} exceeds the Bézout number {bezout_total}"
        )));
    }
    let mirror_holds = u128::from(type_b.m()) * u128::from(type_c.n())
        == u128::from(type_c.m()) * u128::from(type_b.n());
    let tropical_iso = is_isomorphic(
        &tropical_curve(&euclidean_sequence(type_b)?)?,
        &tropical_curve(&euclidean_sequence(type_c)?)?,
    );
    let (inverse_bound, inverse_bound_ok) =
        if equivalent(type_b, type_c)? && i > type_b.m() * type_c.m() {
            let bound = inverse_bound(type_b, type_c)?;
            (Some(bound), Some(i >= bound))
        } else {
            (None, None)
        };
    HypertangencyReport {
        type_b,
        type_c,
        i_q,
        bezout_total,
        hypertangent: i == bezout_total,
        mirror_holds,
        tropical_iso,
        inverse_bound,
        inverse_bound_ok,
    }
    .check()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MirrorConditions {
    pub tropical_isomorphic: bool,
    pub fractions_equal: bool,
    pub quotients_equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MirrorCertificate {
    pub hypothesis_satisfied: bool,
    pub conditions: MirrorConditions,
    /// When the pair is hypertangent and both gcds agree the types must be
    /// equal; `Some(true)` records that they are.
    pub types_equal: Option<bool>,
    pub summary: String,
}

/// The three equivalent conditions evaluated for the report's types, and
/// the consequence for equal gcds. Contradictions are defects.
pub fn mirror_certificate(report: &HypertangencyReport) -> Result<MirrorCertificate> {
    let (tb, tc) = (report.type_b, report.type_c);
    let conditions = MirrorConditions {
        tropical_isomorphic: report.tropical_iso,
        fractions_equal: report.mirror_holds,
        quotients_equal: euclidean_sequence(tb)?.ks() == euclidean_sequence(tc)?.ks(),
    };
    if !report.hypertangent {
        return Ok(MirrorCertificate {
            hypothesis_satisfied: false,
            conditions,
            types_equal: None,
            summary: "hypothesis not satisfied; no constraint".into(),
        });
    }
    let all =
        conditions.tropical_isomorphic && conditions.fractions_equal && conditions.quotients_equal;
    if !all {
        return Err(Error::TheoremViolation(format!(
            "hypertangent pair {tb}, {tc} fails the mirror conditions {conditions:?}"
        )));
    }
    let types_equal = (tb.gcd() == tc.gcd()).then_some(tb == tc);
    if types_equal == Some(false) {
        return Err(Error::TheoremViolation(format!(
            "hypertangent pair with equal gcds has different types {tb} and {tc}"
        )));
    }
    let summary = match types_equal {
        Some(_) => format!("all three conditions hold; equal gcds force equal types {tb} = {tc}"),
        None => format!("all three conditions hold for {tb} and {tc}"),
    };
    Ok(MirrorCertificate {
        hypothesis_satisfied: true,
        conditions,
        types_equal,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Germ;

    fn germ(s: &str) -> Germ {
        Germ::parse(s).unwrap()
    }

    #[test]
    fn conic_and_cubic() {
        let report = analyze_pair(&germ("y - x^2:2"), &germ("y - x^2 - y^3:3")).unwrap();
        assert_eq!(report.i_q, Contact::Finite(6));
        assert_eq!(report.bezout_total, 6);
        assert!(report.hypertangent && report.mirror_holds && report.tropical_iso);
        assert_eq!(report.type_b, ContactType::new(1, 2).unwrap());
        assert_eq!(report.type_c, report.type_b);
        let cert = mirror_certificate(&report).unwrap();
        assert_eq!(cert.types_equal, Some(true));
    }

    #[test]
    fn not_hypertangent() {
        let report = analyze_pair(&germ("y - x^2:2"), &germ("y - x^2 - x^5:5")).unwrap();
        assert_eq!(report.i_q, Contact::Finite(5));
        assert!(!report.hypertangent);
        let report = analyze_pair(&germ("y - x^2:2"), &germ("y + x^2:2")).unwrap();
        assert_eq!(report.i_q, Contact::Finite(2));
        assert!(!report.hypertangent);
        let cert = mirror_certificate(&report).unwrap();
        assert!(!cert.hypothesis_satisfied);
        assert_eq!(cert.summary, "hypothesis not satisfied; no constraint");
    }

    #[test]
    fn symmetric() {
        let (b, c) = (germ("y^2 - x^3:3"), germ("y^2 - x^3 - x^4:4"));
        let bc = analyze_pair(&b, &c).unwrap();
        let cb = analyze_pair(&c, &b).unwrap();
        assert_eq!((bc.type_b, bc.type_c), (cb.type_c, cb.type_b));
        assert_eq!(
            (bc.i_q, bc.hypertangent, bc.inverse_bound_ok),
            (cb.i_q, cb.hypertangent, cb.inverse_bound_ok)
        );
    }

    #[test]
    fn errors() {
        assert_eq!(
            analyze_pair(&germ("y:1"), &germ("y - x^2:2"))
                .unwrap_err()
                .code(),
            "DEGREE_TOO_SMALL"
        );
        assert_eq!(
            analyze_pair(&germ("y - x^2:2"), &germ("(y - x^2)*(1 + x):3"))
                .unwrap_err()
                .code(),
            "COMMON_COMPONENT"
        );
    }

    #[test]
    fn fabricated_violation_is_a_defect() {
        let report = HypertangencyReport {
            type_b: ContactType::new(1, 2).unwrap(),
            type_c: ContactType::new(2, 3).unwrap(),
            i_q: Contact::Finite(6),
            bezout_total: 6,
            hypertangent: true,
            mirror_holds: false,
            tropical_iso: false,
            inverse_bound: None,
            inverse_bound_ok: None,
        };
        assert_eq!(report.violations().len(), 1);
        assert_eq!(
            mirror_certificate(&report).unwrap_err().code(),
            "THEOREM_VIOLATION"
        );
    }
}
