//! Grid verification: every per-pair property on all `(m, n)` with
//! `1 <= m < n <= N`, plus the properties relating pairs of cells.

use std::collections::BTreeMap;
use std::fmt::Write;

use rayon::prelude::*;
use serde_json::{json, Value};
use unibranch::euclid::{euclidean_sequence, key_identity, ContactType, EuclideanSequence};
use unibranch::invariants::{codim_bound, delta_bound, summation_identities};
use unibranch::tropic::{canonical_code, dual_graph, tropical_curve, CanonicalCode};
use unibranch::{Error, Result};

const PROPERTIES: [&str; 8] = [
    "summation_identities",
    "delta_formula",
    "sequence_roundtrip",
    "dual_graph",
    "tropical_curve",
    "codim_decomposition",
    "equivalence_iff_isomorphic",
    "key_identity",
];

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Failure {
    pub property: &'static str,
    pub cell: String,
    pub message: String,
}

pub struct SweepResult {
    pub max_n: u64,
    pub cells: usize,
    pub checks: BTreeMap<&'static str, u64>,
    pub failures: Vec<Failure>,
}

impl SweepResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "sweep over 1 <= m < n <= {} ({} cells)\n",
            self.max_n, self.cells
        );
        for name in PROPERTIES {
            let failed = self.failures.iter().filter(|f| f.property == name).count();
            let status = if failed == 0 {
                "ok".to_string()
            } else {
                format!("FAILED ({failed})")
            };
            let _ = writeln!(
                out,
                "{name}: {status}, {} checks",
                self.checks.get(name).copied().unwrap_or(0)
            );
        }
        for f in &self.failures {
            let _ = writeln!(out, "failure {} at {}: {}", f.property, f.cell, f.message);
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "max_n": self.max_n,
            "cells": self.cells,
            "passed": self.passed(),
            "properties": PROPERTIES.iter().map(|name| json!({
                "name": name,
                "checks": self.checks.get(name).copied().unwrap_or(0),
                "failures": self.failures.iter().filter(|f| f.property == *name)
                    .map(|f| json!({"cell": f.cell, "message": f.message})).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

struct Cell {
    t: ContactType,
    seq: EuclideanSequence,
    code: Option<CanonicalCode>,
    failures: Vec<Failure>,
}

fn check_cell(t: ContactType) -> Result<Cell> {
    let seq = euclidean_sequence(t)?;
    let mut failures = Vec::new();
    let mut fail = |property: &'static str, message: String| {
        failures.push(Failure {
            property,
            cell: t.to_string(),
            message,
        });
    };
    if let Err(e) = summation_identities(&seq) {
        fail("summation_identities", e.to_string());
    }
    if let Err(e) = delta_bound(t) {
        fail("delta_formula", e.to_string());
    }
    match EuclideanSequence::from_quotients(seq.ks(), seq.c()) {
        Ok(back) if back == seq => {}
        Ok(back) => fail("sequence_roundtrip", format!("rebuilt {back}")),
        Err(e) => fail("sequence_roundtrip", e.to_string()),
    }
    match dual_graph(&seq) {
        Ok(g) if g.vertices().len() as u64 == 2 + seq.total_steps() => {}
        Ok(g) => fail("dual_graph", format!("{} vertices", g.vertices().len())),
        Err(e) => fail("dual_graph", e.to_string()),
    }
    let code = match tropical_curve(&seq) {
        Ok(g) => {
            if g.num_vertices() != seq.r() + 2 || g.total_length() != 1 + seq.total_steps() {
                fail(
                    "tropical_curve",
                    format!(
                        "{} vertices, total length {}",
                        g.num_vertices(),
                        g.total_length()
                    ),
                );
            }
            Some(canonical_code(&g, false))
        }
        Err(e) => {
            fail("tropical_curve", e.to_string());
            None
        }
    };
    if let Err(e) = codim_bound(t, t.n()) {
        fail("codim_decomposition", e.to_string());
    }
    Ok(Cell {
        t,
        seq,
        code,
        failures,
    })
}

/// Reduced fraction `m / n`.
fn fraction(t: ContactType) -> (u64, u64) {
    (t.m() / t.gcd(), t.n() / t.gcd())
}

fn key_failures(cells: &[Cell], i: usize) -> (u64, Vec<Failure>) {
    let (s, mut count, mut failures) = (&cells[i].seq, 0, Vec::new());
    for other in cells {
        let s2 = &other.seq;
        for h in 1..=s.r().min(s2.r()) {
            if h > 1 && s.k(h - 1) != s2.k(h - 1) {
                break;
            }
            count += 1;
            if let Err(e) = key_identity(s, s2, h) {
                failures.push(Failure {
                    property: "key_identity",
                    cell: format!("{} / {} h={h}", cells[i].t, other.t),
                    message: e.to_string(),
                });
            }
        }
    }
    (count, failures)
}

pub fn sweep(max_n: u64) -> Result<SweepResult> {
    if max_n < 2 {
        return Err(Error::InvalidFormat("--max-n must be at least 2".into()));
    }
    let types: Vec<ContactType> = (2..=max_n)
        .flat_map(|n| (1..n).map(move |m| ContactType::new(m, n)))
        .collect::<Result<_>>()?;
    let cells: Vec<Cell> = types
        .par_iter()
        .map(|&t| check_cell(t))
        .collect::<Result<_>>()?;
    let mut failures: Vec<Failure> = cells
        .iter()
        .flat_map(|c| c.failures.iter().cloned())
        .collect();
    let mut checks: BTreeMap<&'static str, u64> = PROPERTIES[..6]
        .iter()
        .map(|p| (*p, cells.len() as u64))
        .collect();

    // equivalent pairs have equal codes and vice versa: the two partitions
    // of the grid coincide
    let mut by_code: BTreeMap<&CanonicalCode, Vec<ContactType>> = BTreeMap::new();
    let mut by_fraction: BTreeMap<(u64, u64), Vec<ContactType>> = BTreeMap::new();
    for c in &cells {
        if let Some(code) = &c.code {
            by_code.entry(code).or_default().push(c.t);
        }
        by_fraction.entry(fraction(c.t)).or_default().push(c.t);
    }
    for (code, members) in &by_code {
        if members
            .iter()
            .any(|&t| by_fraction[&fraction(t)] != *members)
        {
            failures.push(Failure {
                property: "equivalence_iff_isomorphic",
                cell: members.first().map(ToString::to_string).unwrap_or_default(),
                message: format!(
                    "code {code} is shared by {members:?}, not exactly one equivalence class"
                ),
            });
        }
    }
    checks.insert(
        "equivalence_iff_isomorphic",
        (cells.len() * cells.len()) as u64,
    );

    let keyed: Vec<(u64, Vec<Failure>)> = (0..cells.len())
        .into_par_iter()
        .map(|i| key_failures(&cells, i))
        .collect();
    checks.insert("key_identity", keyed.iter().map(|(n, _)| n).sum());
    failures.extend(keyed.into_iter().flat_map(|(_, f)| f));
    failures.sort();
    Ok(SweepResult {
        max_n,
        cells: cells.len(),
        checks,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep_passes() {
        let r = sweep(25).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.cells, 24 * 25 / 2);
    }

    #[test]
    fn output_is_deterministic() {
        assert_eq!(sweep(12).unwrap().to_text(), sweep(12).unwrap().to_text());
    }
}
