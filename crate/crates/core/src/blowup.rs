//! Blow-ups in affine charts, the resolution chain of a unibranch point with
//! every observed type checked against the euclidean prediction, and the
//! incidence data of the normal-crossings divisor `D_*`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::euclid::{euclidean_sequence, predicted_types, EuclideanSequence, StepIndex};
use crate::localgeom::{
    chart_toward, contact_type, line_contact_order_of_poly, poly_multiplicity, tangent_data,
    tangent_line, Contact, LinearForm,
};
use crate::polyalgebra::{BivarPoly, PlaneCurveGerm};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Chart {
    /// `y ← y x`; the exceptional divisor is `x = 0`.
    #[serde(rename = "Y_OVER_X")]
    YOverX,
    /// `x ← x y`; the exceptional divisor is `y = 0`.
    #[serde(rename = "X_OVER_Y")]
    XOverY,
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Chart::YOverX => "Y_OVER_X",
            Chart::XOverY => "X_OVER_Y",
        })
    }
}

/// One blow-up at the origin followed by recentering at the point of the
/// exceptional fiber with chart coordinate `translation`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartTransform<T> {
    pub chart: Chart,
    pub translation: T,
}

impl<T: Scalar> ChartTransform<T> {
    pub fn new(chart: Chart, translation: T) -> Self {
        Self { chart, translation }
    }

    /// The exceptional divisor in the new coordinates.
    pub fn exceptional_line(&self) -> LinearForm<T> {
        match self.chart {
            Chart::YOverX => LinearForm::x(),
            Chart::XOverY => LinearForm::y(),
        }
    }

    /// Proper transform of a line through the old origin, if it passes
    /// through the new one.
    pub fn line_transform(&self, line: &LinearForm<T>) -> Option<LinearForm<T>> {
        let (a, b, t) = (line.a().clone(), line.b().clone(), self.translation.clone());
        match self.chart {
            // a x + b (y + t) x = x (a + b t + b y)
            Chart::YOverX => (a + b * t).is_zero().then(LinearForm::y),
            // a (x + t) y + b y = y (a x + a t + b)
            Chart::XOverY => (a * t + b).is_zero().then(LinearForm::x),
        }
    }
}

/// Strict transform of `f` under `chart`: substitute, divide by the
/// multiplicity-th power of the exceptional equation, recenter.
pub fn strict_transform<T: Scalar>(
    f: &BivarPoly<T>,
    chart: &ChartTransform<T>,
) -> Result<BivarPoly<T>> {
    let m = poly_multiplicity(f)?;
    let shifted = |var: BivarPoly<T>| &var + &BivarPoly::constant(chart.translation.clone());
    match chart.chart {
        Chart::YOverX => {
            let y = &shifted(BivarPoly::y()) * &BivarPoly::x();
            f.substitute(&BivarPoly::x(), &y).divide_by_monomial(m, 0)
        }
        Chart::XOverY => {
            let x = &shifted(BivarPoly::x()) * &BivarPoly::y();
            f.substitute(&x, &BivarPoly::y()).divide_by_monomial(0, m)
        }
    }
    .map_err(|e| Error::InternalConsistency(format!("strict transform: {e}")))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionStep<T> {
    pub index: StepIndex,
    pub observed_mult: u64,
    pub predicted_mult: u64,
    pub observed_contact: u64,
    pub predicted_contact: u64,
    /// The blow-up leaving this point; `None` on the terminal step, whose
    /// extra blow-up is only tracked combinatorially.
    pub transform: Option<ChartTransform<T>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TerminalPoint {
    pub mult: u64,
    pub transverse_to_exceptional: bool,
    pub transverse_to_reference: bool,
    /// `c > 1`: the chain stops at a `c`-fold point and does not fully
    /// desingularize the branch.
    pub partial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionChain<T> {
    pub sequence: EuclideanSequence,
    pub steps: Vec<ResolutionStep<T>>,
    pub terminal: TerminalPoint,
    /// `Σ mult (mult - 1) / 2` over the steps.
    pub delta_contribution: u64,
}

impl<T: Scalar> ResolutionChain<T> {
    /// `{"m","n","steps":[{"j","i","mult","contact","chart","shift"}], "terminal", …}`
    /// with shifts as exact rational strings.
    pub fn to_json(&self) -> Value {
        let steps: Vec<Value> = self
            .steps
            .iter()
            .map(|s| {
                let (chart, shift) = match &s.transform {
                    Some(t) => (json!(t.chart.to_string()), json!(t.translation.to_string())),
                    None => (Value::Null, Value::Null),
                };
                json!({
                    "j": s.index.j,
                    "i": s.index.i,
                    "mult": s.observed_mult,
                    "contact": s.observed_contact,
                    "predicted_mult": s.predicted_mult,
                    "predicted_contact": s.predicted_contact,
                    "chart": chart,
                    "shift": shift,
                })
            })
            .collect();
        json!({
            "m": self.sequence.m(),
            "n": self.sequence.n(),
            "steps": steps,
            "terminal": self.terminal,
            "partial": self.terminal.partial,
            "delta_contribution": self.delta_contribution,
        })
    }
}

fn contact_value<T: Scalar>(f: &BivarPoly<T>, line: &LinearForm<T>) -> Result<u64> {
    match line_contact_order_of_poly(f, line) {
        Contact::Finite(v) => Ok(v),
        Contact::Infinite => Err(Error::InfiniteContact),
    }
}

/// Runs the resolution chain of a unibranch `(m, n)`-point, comparing each
/// observed `(multiplicity, contact)` with the predicted type.
///
/// The contact is measured against the tracked divisor: the proper transform
/// of the current level's first exceptional divisor, replaced by the newest
/// exceptional divisor at each level change. The first level tracks the
/// tangent line.
pub fn resolve_unibranch<T: Scalar>(f: &PlaneCurveGerm<T>) -> Result<ResolutionChain<T>> {
    let ty = contact_type(f)?;
    let seq = euclidean_sequence(ty)?;
    let predictions = predicted_types(&seq);
    let mut p = f.poly().clone();
    let mut reference = tangent_line(f)?;
    let mut exceptional: Option<LinearForm<T>> = None;
    let mut steps = Vec::with_capacity(predictions.len());
    let mut terminal = None;

    for (pos, pred) in predictions.iter().enumerate() {
        let obs_m = u64::from(poly_multiplicity(&p)?);
        let obs_n = contact_value(&p, &reference)?;
        let mismatch = || Error::PredictionMismatch {
            j: pred.index.j,
            i: pred.index.i,
            obs_m,
            obs_n,
            pred_m: pred.mult,
            pred_n: pred.contact,
        };
        if (obs_m, obs_n) != (pred.mult, pred.contact) {
            return Err(mismatch());
        }
        if pred.terminal {
            let exc = exceptional.as_ref().ok_or_else(|| {
                Error::InternalConsistency("terminal step before any blow-up".into())
            })?;
            let point = TerminalPoint {
                mult: obs_m,
                transverse_to_exceptional: contact_value(&p, exc)? == obs_m,
                transverse_to_reference: obs_n == obs_m,
                partial: seq.c() > 1,
            };
            if point.mult != seq.c()
                || !point.transverse_to_exceptional
                || !point.transverse_to_reference
            {
                return Err(Error::InternalConsistency(format!(
                    "terminal point at {} is not a transverse {}-fold point",
                    pred.index,
                    seq.c()
                )));
            }
            terminal = Some(point);
            steps.push(ResolutionStep {
                index: pred.index,
                observed_mult: obs_m,
                predicted_mult: pred.mult,
                observed_contact: obs_n,
                predicted_contact: pred.contact,
                transform: None,
            });
            break;
        }
        let line = tangent_data(&p)?
            .pure_power
            .ok_or(Error::NotUnibranch { stage: pos })?
            .line;
        let chart = chart_toward(&line);
        p = strict_transform(&p, &chart)?;
        let next = predictions[pos + 1].index;
        let new_exceptional = chart.exceptional_line();
        reference = if next.j == pred.index.j {
            chart.line_transform(&reference).ok_or_else(|| {
                Error::InternalConsistency(format!(
                    "tracked divisor left the curve after step {}",
                    pred.index
                ))
            })?
        } else {
            new_exceptional.clone()
        };
        exceptional = Some(new_exceptional);
        steps.push(ResolutionStep {
            index: pred.index,
            observed_mult: obs_m,
            predicted_mult: pred.mult,
            observed_contact: obs_n,
            predicted_contact: pred.contact,
            transform: Some(chart),
        });
    }

    let terminal =
        terminal.ok_or_else(|| Error::InternalConsistency("chain has no terminal step".into()))?;
    let delta_contribution = steps
        .iter()
        .map(|s| s.observed_mult * (s.observed_mult - 1) / 2)
        .sum();
    Ok(ResolutionChain {
        sequence: seq,
        steps,
        terminal,
        delta_contribution,
    })
}

/// Component of `D_*`: the strict transform of the curve, the last
/// exceptional divisor, or the strict transform `A(j,i)` of `E^i_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComponentLabel {
    CStar,
    EStar,
    A(StepIndex),
}

impl ComponentLabel {
    pub const fn a(j: usize, i: usize) -> Self {
        ComponentLabel::A(StepIndex::new(j, i))
    }
}

impl fmt::Display for ComponentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentLabel::CStar => f.write_str("CStar"),
            ComponentLabel::EStar => f.write_str("EStar"),
            ComponentLabel::A(idx) => write!(f, "A({},{})", idx.j, idx.i),
        }
    }
}

impl std::str::FromStr for ComponentLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "CStar" => Ok(ComponentLabel::CStar),
            "EStar" => Ok(ComponentLabel::EStar),
            _ => {
                let bad = || Error::Json(format!("unknown component label '{s}'"));
                let inner = s
                    .strip_prefix("A(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(bad)?;
                let (j, i) = inner.split_once(',').ok_or_else(bad)?;
                Ok(ComponentLabel::a(
                    j.trim().parse().map_err(|_| bad())?,
                    i.trim().parse().map_err(|_| bad())?,
                ))
            }
        }
    }
}

impl Serialize for ComponentLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ComponentLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Components of `D_*` and which pairs of them meet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DstarIncidence {
    pub components: Vec<ComponentLabel>,
    /// Each pair stored with the smaller label first.
    pub incident_pairs: BTreeSet<(ComponentLabel, ComponentLabel)>,
}

fn pair(a: ComponentLabel, b: ComponentLabel) -> (ComponentLabel, ComponentLabel) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Incidences of `D_*`, determined by the euclidean sequence alone.
pub fn dstar_incidence(s: &EuclideanSequence) -> DstarIncidence {
    let r = s.r();
    let last = StepIndex::new(r, s.k(r) as usize);
    let first_of_last = StepIndex::new(r, 1);
    let mut components = vec![ComponentLabel::CStar, ComponentLabel::EStar];
    components.extend(s.steps().map(ComponentLabel::A));
    let mut incident_pairs = BTreeSet::new();
    incident_pairs.insert(pair(ComponentLabel::CStar, ComponentLabel::EStar));
    incident_pairs.insert(pair(
        ComponentLabel::EStar,
        ComponentLabel::A(first_of_last),
    ));
    incident_pairs.insert(pair(ComponentLabel::EStar, ComponentLabel::A(last)));
    for idx in s.steps() {
        if idx == last || idx == first_of_last {
            continue;
        }
        let partner = if idx.i != 1 {
            s.next(idx)
        } else {
            s.next(StepIndex::new(idx.j + 1, 1))
        };
        let partner = partner.expect("every non-final component has a later neighbour");
        incident_pairs.insert(pair(ComponentLabel::A(idx), ComponentLabel::A(partner)));
    }
    DstarIncidence {
        components,
        incident_pairs,
    }
}
