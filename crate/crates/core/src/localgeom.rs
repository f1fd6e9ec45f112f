//! Local invariants of a germ at the origin: multiplicity, tangent cone and
//! tangent line, contact order with a line, contact type, the unibranch test
//! and local intersection multiplicities.

use std::fmt;

use serde::Serialize;

use crate::blowup::{strict_transform, Chart, ChartTransform};
use crate::error::{Error, Result};
use crate::euclid::ContactType;
use crate::polyalgebra::{gcd, resultant_in_y, BivarPoly, PlaneCurveGerm, UniPoly};
use crate::scalar::Scalar;

/// Cap on the shear parameter tried by [`intersection_multiplicity`].
pub const SHEAR_CAP: u32 = 64;

/// Blow-up walks longer than this are treated as runaway recursion.
pub const MAX_BLOWUPS: usize = 10_000;

/// A line `a x + b y = 0` through the origin, scaled so that its first
/// nonzero coefficient is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm<T> {
    a: T,
    b: T,
}

impl<T: Scalar> LinearForm<T> {
    /// Panics if both coefficients vanish.
    pub fn new(a: T, b: T) -> Self {
        if !a.is_zero() {
            let b = b / a.clone();
            Self { a: T::one(), b }
        } else {
            assert!(!b.is_zero(), "a linear form needs a nonzero coefficient");
            Self {
                a: T::zero(),
                b: T::one(),
            }
        }
    }

    /// The line `x = 0`.
    pub fn x() -> Self {
        Self::new(T::one(), T::zero())
    }

    /// The line `y = 0`.
    pub fn y() -> Self {
        Self::new(T::zero(), T::one())
    }

    pub fn a(&self) -> &T {
        &self.a
    }

    pub fn b(&self) -> &T {
        &self.b
    }

    pub fn to_poly(&self) -> BivarPoly<T> {
        &BivarPoly::term(self.a.clone(), 1, 0) + &BivarPoly::term(self.b.clone(), 0, 1)
    }
}

impl<T: Scalar> fmt::Display for LinearForm<T> {
    /// Printed with the `y` coefficient scaled to 1 when there is one.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.to_poly())
        } else {
            write!(
                f,
                "{}",
                self.to_poly().scalar_mul(&(T::one() / self.b.clone()))
            )
        }
    }
}

/// Order of contact: a finite order of vanishing, or infinite when the two
/// objects share a component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(untagged)]
pub enum Contact {
    Finite(u64),
    #[serde(serialize_with = "serialize_infinite")]
    Infinite,
}

fn serialize_infinite<S: serde::Serializer>(s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str("INFINITE")
}

impl Contact {
    pub fn finite(&self) -> Option<u64> {
        match self {
            Contact::Finite(v) => Some(*v),
            Contact::Infinite => None,
        }
    }
}

impl fmt::Display for Contact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Contact::Finite(v) => write!(f, "{v}"),
            Contact::Infinite => write!(f, "INFINITE"),
        }
    }
}

/// `cone = scale · (a x + b y)^m` with `(a, b)` normalized as in [`LinearForm`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PurePower<T> {
    pub line: LinearForm<T>,
    pub scale: T,
    pub m: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentData<T> {
    /// Lowest-degree homogeneous part.
    pub cone: BivarPoly<T>,
    pub pure_power: Option<PurePower<T>>,
}

/// Multiplicity of a polynomial at the origin.
pub fn poly_multiplicity<T: Scalar>(f: &BivarPoly<T>) -> Result<u32> {
    match f.order() {
        None => Err(Error::InvalidGerm("polynomial is identically zero".into())),
        Some(0) => Err(Error::NotThroughOrigin),
        Some(m) => Ok(m),
    }
}

pub fn multiplicity<T: Scalar>(f: &PlaneCurveGerm<T>) -> Result<u32> {
    poly_multiplicity(f.poly())
}

/// Tangent cone of `f` at the origin, and its expression as a power of a
/// single linear form when it is one.
pub fn tangent_data<T: Scalar>(f: &BivarPoly<T>) -> Result<TangentData<T>> {
    let m = poly_multiplicity(f)?;
    let cone = f.homogeneous_part(m);
    // coefficient of x^{m-j} y^j
    let c = |j: u32| cone.coeff(m - j, j);
    let line = if c(m).is_zero() {
        LinearForm::x()
    } else {
        // c_m (y - t x)^m has c_{m-1} = -m t c_m.
        let t = -(c(m - 1) / (c(m) * T::from_int(m as i64)));
        LinearForm::new(-t, T::one())
    };
    let power = line.to_poly().pow(m);
    // the normalized form has unit coefficient on x (or on y when a = 0)
    let scale = if line.a.is_zero() { c(m) } else { c(0) };
    let pure_power = (!scale.is_zero() && power.scalar_mul(&scale) == cone).then_some(PurePower {
        line,
        scale,
        m,
    });
    Ok(TangentData { cone, pure_power })
}

/// The tangent line of a germ whose tangent cone is a power of one line.
pub fn tangent_line_of_poly<T: Scalar>(f: &BivarPoly<T>) -> Result<LinearForm<T>> {
    tangent_data(f)?
        .pure_power
        .map(|p| p.line)
        .ok_or(Error::NotPurePower)
}

pub fn tangent_line<T: Scalar>(f: &PlaneCurveGerm<T>) -> Result<LinearForm<T>> {
    tangent_line_of_poly(f.poly())
}

/// Order at `t = 0` of `f` restricted to the line, parametrized as
/// `(b t, -a t)`.
pub fn line_contact_order_of_poly<T: Scalar>(f: &BivarPoly<T>, line: &LinearForm<T>) -> Contact {
    let along = f.substitute(
        &BivarPoly::term(line.b.clone(), 1, 0),
        &BivarPoly::term(-line.a.clone(), 1, 0),
    );
    match along.order() {
        None => Contact::Infinite,
        Some(k) => Contact::Finite(u64::from(k)),
    }
}

pub fn line_contact_order<T: Scalar>(f: &PlaneCurveGerm<T>, line: &LinearForm<T>) -> Contact {
    line_contact_order_of_poly(f.poly(), line)
}

/// `(m, n)` of a unibranch germ: its multiplicity and the contact order of
/// its tangent line.
pub fn contact_type<T: Scalar>(f: &PlaneCurveGerm<T>) -> Result<ContactType> {
    if !is_unibranch(f)? {
        return Err(Error::NotUnibranch { stage: 0 });
    }
    contact_type_of_poly(f.poly())
}

/// Contact type without the unibranch check (the walk in `blowup` already
/// verifies every stage).
pub(crate) fn contact_type_of_poly<T: Scalar>(f: &BivarPoly<T>) -> Result<ContactType> {
    let m = poly_multiplicity(f)?;
    let line = tangent_line_of_poly(f)?;
    let n = line_contact_order_of_poly(f, &line)
        .finite()
        .ok_or(Error::InfiniteContact)?;
    if n <= u64::from(m) {
        return Err(Error::InternalConsistency(format!(
            "tangent contact {n} does not exceed multiplicity {m}"
        )));
    }
    ContactType::new(u64::from(m), n)
}

/// Fails with `NON_REDUCED` when `gcd(f, f_x, f_y)` vanishes at the origin.
pub fn ensure_reduced<T: Scalar>(f: &BivarPoly<T>) -> Result<()> {
    let h = gcd(f, &gcd(&f.partial_x(), &f.partial_y()));
    if h.constant_term().is_zero() {
        return Err(Error::NonReduced);
    }
    Ok(())
}

/// Direction of the chart that contains the point of the exceptional fiber
/// corresponding to `line`, recentered at that point.
pub(crate) fn chart_toward<T: Scalar>(line: &LinearForm<T>) -> ChartTransform<T> {
    if line.b.is_zero() {
        ChartTransform::new(Chart::XOverY, T::zero())
    } else {
        ChartTransform::new(Chart::YOverX, -(line.a.clone() / line.b.clone()))
    }
}

/// Walks the blow-up sequence over the origin: the germ is unibranch iff
/// every stage has a single point over the origin and the walk reaches a
/// smooth point.
pub fn is_unibranch<T: Scalar>(f: &PlaneCurveGerm<T>) -> Result<bool> {
    ensure_reduced(f.poly())?;
    let mut p = f.poly().clone();
    for _ in 0..MAX_BLOWUPS {
        if poly_multiplicity(&p)? == 1 {
            return Ok(true);
        }
        let line = match tangent_data(&p)?.pure_power {
            Some(pp) => pp.line,
            None => return Ok(false),
        };
        p = strict_transform(&p, &chart_toward(&line))?;
    }
    Err(Error::RecursionLimit { depth: MAX_BLOWUPS })
}

/// Local intersection number at the origin.
///
/// Removes the common factor of `f` and `g` (a unit locally unless it passes
/// through the origin, in which case the answer is infinite), then applies a
/// shear `x ← x + λ y` for the first `λ = 0, 1, 2, …` that makes both leading
/// `y`-coefficients nonzero at `x = 0` and leaves the origin as the only
/// common point on `x = 0`. The answer is the order at `x = 0` of `Res_y`.
pub fn intersection_multiplicity<T: Scalar>(
    f: &PlaneCurveGerm<T>,
    g: &PlaneCurveGerm<T>,
) -> Result<Contact> {
    intersection_multiplicity_of_polys(f.poly(), g.poly())
}

pub fn intersection_multiplicity_of_polys<T: Scalar>(
    f: &BivarPoly<T>,
    g: &BivarPoly<T>,
) -> Result<Contact> {
    if f.is_zero() || g.is_zero() {
        return Ok(Contact::Infinite);
    }
    if !f.constant_term().is_zero() || !g.constant_term().is_zero() {
        return Ok(Contact::Finite(0));
    }
    let h = gcd(f, g);
    if h.constant_term().is_zero() {
        return Ok(Contact::Infinite);
    }
    let f = f.exact_div(&h).expect("gcd divides f");
    let g = g.exact_div(&h).expect("gcd divides g");
    for lambda in 0..SHEAR_CAP {
        let sx = &BivarPoly::x() + &BivarPoly::term(T::from_int(i64::from(lambda)), 0, 1);
        let fs = f.substitute(&sx, &BivarPoly::y());
        let gs = g.substitute(&sx, &BivarPoly::y());
        if !admissible_shear(&fs, &gs) {
            continue;
        }
        let res = resultant_in_y(&fs, &gs)?;
        return match res.order() {
            Some(k) => Ok(Contact::Finite(k as u64)),
            None => Err(Error::InternalConsistency(
                "resultant of coprime polynomials vanished".into(),
            )),
        };
    }
    Err(Error::ShearExhausted { cap: SHEAR_CAP })
}

fn admissible_shear<T: Scalar>(f: &BivarPoly<T>, g: &BivarPoly<T>) -> bool {
    let (fc, gc) = (f.y_coefficients(), g.y_coefficients());
    if fc.len() < 2 || gc.len() < 2 {
        return false;
    }
    let lc_ok = |cs: &[UniPoly<T>]| !cs[cs.len() - 1].coeff(0).is_zero();
    if !lc_ok(&fc) || !lc_ok(&gc) {
        return false;
    }
    // f(0, y) and g(0, y) as polynomials in y
    let on_axis = |cs: &[UniPoly<T>]| UniPoly::new(cs.iter().map(|c| c.coeff(0)).collect());
    let common = on_axis(&fc).gcd(&on_axis(&gc));
    let d = common.degree().unwrap_or(0);
    common == UniPoly::monomial(T::one(), d)
}

/// Intersection number by the blow-up recursion
/// `I(f, g) = m_f m_g + Σ I(f', g')` over the common points above the origin.
///
/// Independent of [`intersection_multiplicity`]; used as its oracle. Every
/// common infinitely near point must be rational.
pub fn intersection_multiplicity_blowup<T: Scalar>(
    f: &BivarPoly<T>,
    g: &BivarPoly<T>,
) -> Result<u64> {
    blowup_recursion(f, g, 0)
}

fn blowup_recursion<T: Scalar>(f: &BivarPoly<T>, g: &BivarPoly<T>, depth: usize) -> Result<u64> {
    if !f.constant_term().is_zero() || !g.constant_term().is_zero() {
        return Ok(0);
    }
    if depth > MAX_BLOWUPS {
        return Err(Error::RecursionLimit { depth: MAX_BLOWUPS });
    }
    let mf = poly_multiplicity(f)?;
    let mg = poly_multiplicity(g)?;
    let (cf, cg) = (f.homogeneous_part(mf), g.homogeneous_part(mg));
    let slope_poly =
        |cone: &BivarPoly<T>, m: u32| UniPoly::new((0..=m).map(|j| cone.coeff(m - j, j)).collect());
    let common = slope_poly(&cf, mf)
        .gcd(&slope_poly(&cg, mg))
        .squarefree_part();
    let roots = common.rational_roots();
    if roots.len() < common.degree().unwrap_or(0) {
        return Err(Error::IrrationalInfinitelyNearPoint);
    }
    let mut total = u64::from(mf) * u64::from(mg);
    for t in roots {
        let chart = ChartTransform::new(Chart::YOverX, t);
        total += blowup_recursion(
            &strict_transform(f, &chart)?,
            &strict_transform(g, &chart)?,
            depth + 1,
        )?;
    }
    // the direction x = 0 lies only in the other chart
    if cf.coeff(0, mf).is_zero() && cg.coeff(0, mg).is_zero() {
        let chart = ChartTransform::new(Chart::XOverY, T::zero());
        total += blowup_recursion(
            &strict_transform(f, &chart)?,
            &strict_transform(g, &chart)?,
            depth + 1,
        )?;
    }
    Ok(total)
}
