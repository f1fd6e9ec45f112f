use std::fmt::Write;
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::curve::{Edge, Leg, Length, TropicalCurve};
use super::graph::DualGraph;
use crate::blowup::ComponentLabel;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Dot,
    Json,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(Format::Dot),
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => Err(Error::InvalidFormat(format!(
                "unknown output format '{s}' (expected json, dot or text)"
            ))),
        }
    }
}

pub trait Exportable {
    fn export(&self, format: Format) -> String;
}

#[derive(Serialize, Deserialize)]
struct VertexRecord {
    id: usize,
    label: Option<ComponentLabel>,
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "L: Serialize + DeserializeOwned")]
struct CurveRecord<L> {
    vertices: Vec<VertexRecord>,
    edges: Vec<Edge<L>>,
    legs: Vec<Leg<L>>,
}

fn node_name(label: Option<ComponentLabel>, id: usize) -> String {
    label.map_or_else(|| format!("v{id}"), |l| l.to_string())
}

impl<L: Length + Serialize + DeserializeOwned> TropicalCurve<L> {
    /// Parses the JSON produced by `export(Format::Json)`; vertex ids must be
    /// `0..n` in order.
    pub fn from_json(text: &str) -> Result<Self> {
        let rec: CurveRecord<L> =
            serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        if rec.vertices.iter().enumerate().any(|(i, v)| v.id != i) {
            return Err(Error::Json(
                "vertex ids must be 0, 1, 2, ... in order".into(),
            ));
        }
        let labels = rec.vertices.into_iter().map(|v| v.label).collect();
        TropicalCurve::new(labels, rec.edges, rec.legs).map_err(|e| Error::Json(e.to_string()))
    }
}

impl<L: Length + Serialize + DeserializeOwned> Exportable for TropicalCurve<L> {
    fn export(&self, format: Format) -> String {
        let name = |v: usize| node_name(self.labels()[v], v);
        match format {
            Format::Json => {
                let rec = CurveRecord {
                    vertices: self
                        .labels()
                        .iter()
                        .enumerate()
                        .map(|(id, label)| VertexRecord { id, label: *label })
                        .collect(),
                    edges: self.edges().to_vec(),
                    legs: self.legs().to_vec(),
                };
                serde_json::to_string_pretty(&rec).expect("curve records serialize")
            }
            Format::Dot => {
                let mut out = String::from("graph tropical {\n");
                for (v, label) in self.labels().iter().enumerate() {
                    let _ = writeln!(out, "  v{v} [label=\"{}\"];", node_name(*label, v));
                }
                for e in self.edges() {
                    let _ = writeln!(out, "  v{} -- v{} [label=\"{}\"];", e.u, e.v, e.len);
                }
                for (i, l) in self.legs().iter().enumerate() {
                    let _ = writeln!(out, "  leg{i} [shape=point, label=\"\"];");
                    let _ = writeln!(
                        out,
                        "  v{} -- leg{i} [label=\"{}\", style=dashed];",
                        l.v, l.len
                    );
                }
                out.push_str("}\n");
                out
            }
            Format::Text => {
                let mut out = String::new();
                for e in self.edges() {
                    let _ = writeln!(out, "edge {} -- {} length {}", name(e.u), name(e.v), e.len);
                }
                for l in self.legs() {
                    let _ = writeln!(out, "leg at {} length {}", name(l.v), l.len);
                }
                out
            }
        }
    }
}

impl Exportable for DualGraph {
    fn export(&self, format: Format) -> String {
        let id = |l: &ComponentLabel| {
            self.vertices()
                .iter()
                .position(|v| v == l)
                .expect("validated edge")
        };
        match format {
            Format::Json => {
                let value = serde_json::json!({
                    "vertices": self.vertices().iter().enumerate()
                        .map(|(id, l)| serde_json::json!({"id": id, "label": l}))
                        .collect::<Vec<_>>(),
                    "edges": self.edges().iter()
                        .map(|(a, b)| serde_json::json!({"u": id(a), "v": id(b)}))
                        .collect::<Vec<_>>(),
                });
                serde_json::to_string_pretty(&value).expect("graph serializes")
            }
            Format::Dot => {
                let mut out = String::from("graph dual {\n");
                for (v, label) in self.vertices().iter().enumerate() {
                    let _ = writeln!(out, "  v{v} [label=\"{label}\"];");
                }
                for (a, b) in self.edges() {
                    let _ = writeln!(out, "  v{} -- v{};", id(a), id(b));
                }
                out.push_str("}\n");
                out
            }
            Format::Text => {
                let mut out = String::new();
                for (a, b) in self.edges() {
                    let _ = writeln!(out, "{a} -- {b}");
                }
                out
            }
        }
    }
}
