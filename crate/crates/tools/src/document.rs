//! JSON graph documents.
//!
//! ```json
//! {
//!   "vertices": ["a", "b", "c"],
//!   "edges": [["a", "b"], ["b", "c"]],
//!   "inputs": ["a"],
//!   "outputs": ["c"],
//!   "angles": {"a": "1/4", "b": 0.3},
//!   "flow": {"a": "b", "b": "c"},
//!   "layers": {"a": 2, "b": 1, "c": 0}
//! }
//! ```
//!
//! Angles given as strings are multiples of π (`"1/4"` is π/4, `"-1"` is
//! -π); numbers are radians. A `gflow` field maps each non-output to a list
//! of correctors instead of `flow`. `layers` is optional and derived from the
//! witness when absent.

use indexmap::IndexMap;
use mbqc_core::flow::{Flow, Gflow, Witness};
use mbqc_core::graph::{OpenGraph, Vertex, VertexSet};
use mbqc_core::sim::{Angle, MeasurementPattern};
use serde::{Deserialize, Serialize};

use crate::ToolError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
    #[serde(default)]
    pub inputs: Vec<String>,
    #[serde(default)]
    pub outputs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angles: Option<IndexMap<String, AngleText>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flow: Option<IndexMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gflow: Option<IndexMap<String, Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layers: Option<IndexMap<String, usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AngleText {
    PiMultiple(String),
    Radians(f64),
}

impl AngleText {
    fn parse(&self) -> Result<Angle, String> {
        match self {
            AngleText::Radians(r) if r.is_finite() => Ok(Angle::Radians(*r)),
            AngleText::Radians(r) => Err(format!("angle {r} is not finite")),
            AngleText::PiMultiple(s) => {
                let (num, den) = s.split_once('/').unwrap_or((s, "1"));
                let num: i64 = num.trim().parse().map_err(|_| format!("bad angle numerator in {s:?}"))?;
                let den: u64 = den.trim().parse().map_err(|_| format!("bad angle denominator in {s:?}"))?;
                Angle::pi_fraction(num, den).map_err(|e| e.to_string())
            }
        }
    }

    fn from_angle(a: Angle) -> Self {
        match a {
            Angle::PiFraction { num, den: 1 } => AngleText::PiMultiple(num.to_string()),
            Angle::PiFraction { num, den } => AngleText::PiMultiple(format!("{num}/{den}")),
            Angle::Radians(r) => AngleText::Radians(r),
        }
    }
}

/// A parsed document. The witness is structurally valid but not verified.
#[derive(Clone, Debug, PartialEq)]
pub struct Parsed {
    pub graph: OpenGraph,
    pub pattern: Option<MeasurementPattern>,
    pub witness: Option<Witness>,
}

fn field(path: impl Into<String>, message: impl ToString) -> ToolError {
    ToolError::Field {
        path: path.into(),
        message: message.to_string(),
    }
}

fn lookup(og: &OpenGraph, path: &str, name: &str) -> Result<Vertex, ToolError> {
    og.vertex(name).map_err(|_| field(path, format!("unknown vertex `{name}`")))
}

pub fn parse_document(text: &str) -> Result<Parsed, ToolError> {
    let doc: GraphDocument = serde_json::from_str(text).map_err(ToolError::Syntax)?;
    doc.resolve()
}

impl GraphDocument {
    pub fn resolve(&self) -> Result<Parsed, ToolError> {
        let mut og = OpenGraph::new(self.vertices.iter().cloned()).map_err(|e| field("vertices", e))?;
        for (k, (a, b)) in self.edges.iter().enumerate() {
            let path = format!("edges[{k}]");
            let (u, v) = (lookup(&og, &path, a)?, lookup(&og, &path, b)?);
            og.add_edge(u, v).map_err(|e| field(&path, e))?;
        }
        for (k, name) in self.inputs.iter().enumerate() {
            let v = lookup(&og, &format!("inputs[{k}]"), name)?;
            og.set_input(v, true).map_err(|e| field("inputs", e))?;
        }
        for (k, name) in self.outputs.iter().enumerate() {
            let v = lookup(&og, &format!("outputs[{k}]"), name)?;
            og.set_output(v, true).map_err(|e| field("outputs", e))?;
        }

        let pattern = match &self.angles {
            None => None,
            Some(map) => {
                let mut angles = Vec::new();
                for (name, text) in map {
                    let path = format!("angles.{name}");
                    let v = lookup(&og, &path, name)?;
                    if og.is_output(v) {
                        return Err(field(path, format!("`{name}` is an output and is not measured")));
                    }
                    angles.push((v, text.parse().map_err(|e| field(&path, e))?));
                }
                Some(MeasurementPattern::new(og.clone(), angles).map_err(|e| field("angles", e))?)
            }
        };

        let layers = match &self.layers {
            None => None,
            Some(map) => {
                let mut layer = vec![None; og.vertex_count()];
                for (name, &l) in map {
                    layer[lookup(&og, &format!("layers.{name}"), name)?.0] = Some(l);
                }
                let missing: Vec<_> = og.vertices().filter(|v| layer[v.0].is_none()).collect();
                if !missing.is_empty() {
                    return Err(field("layers", format!("no layer for {}", og.format_list(missing))));
                }
                Some(layer.into_iter().map(Option::unwrap).collect::<Vec<_>>())
            }
        };

        let m = og.vertex_count();
        let witness = match (&self.flow, &self.gflow) {
            (Some(_), Some(_)) => return Err(field("flow", "give either `flow` or `gflow`, not both")),
            (Some(map), None) => {
                let mut pairs = Vec::new();
                for (i, c) in map {
                    let path = format!("flow.{i}");
                    pairs.push((lookup(&og, &path, i)?, lookup(&og, &path, c)?));
                }
                let fl = match layers {
                    Some(l) => Flow::new(m, pairs, l),
                    None => Flow::with_derived_layers(&og, pairs),
                };
                Some(Witness::Flow(fl.map_err(|e| field("flow", e))?))
            }
            (None, Some(map)) => {
                let mut entries = Vec::new();
                for (i, cs) in map {
                    let path = format!("gflow.{i}");
                    let mut k = VertexSet::new(m);
                    for c in cs {
                        k.insert(lookup(&og, &path, c)?);
                    }
                    entries.push((lookup(&og, &path, i)?, k));
                }
                let gf = match layers {
                    Some(l) => Gflow::new(m, entries, l),
                    None => Gflow::with_derived_layers(&og, entries),
                };
                Some(Witness::Gflow(gf.map_err(|e| field("gflow", e))?))
            }
            (None, None) => {
                if layers.is_some() {
                    return Err(field("layers", "layers need a `flow` or `gflow` witness"));
                }
                None
            }
        };
        Ok(Parsed {
            graph: og,
            pattern,
            witness,
        })
    }

    /// Canonical document: everything listed in vertex order.
    pub fn from_parts(og: &OpenGraph, pattern: Option<&MeasurementPattern>, witness: Option<&Witness>) -> Self {
        let name = |v: Vertex| og.name(v).to_string();
        let names = |s: &VertexSet| s.iter().map(name).collect::<Vec<_>>();
        let angles = pattern.map(|p| {
            og.non_outputs()
                .iter()
                .filter_map(|v| p.angle(v).map(|a| (name(v), AngleText::from_angle(a))))
                .collect()
        });
        let (flow, gflow) = match witness {
            None => (None, None),
            Some(Witness::Flow(f)) => (
                Some(f.pairs().into_iter().map(|(i, c)| (name(i), name(c))).collect()),
                None,
            ),
            Some(Witness::Gflow(g)) => (
                None,
                Some(g.entries().into_iter().map(|(i, k)| (name(i), names(k))).collect()),
            ),
        };
        let layers = witness.map(|w| og.vertices().map(|v| (name(v), w.layers()[v.0])).collect());
        GraphDocument {
            vertices: og.names().to_vec(),
            edges: og.edges().into_iter().map(|(u, v)| (name(u), name(v))).collect(),
            inputs: names(og.inputs()),
            outputs: names(og.outputs()),
            angles,
            flow,
            gflow,
            layers,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialise")
    }
}

pub fn emit_document(og: &OpenGraph, pattern: Option<&MeasurementPattern>, witness: Option<&Witness>) -> String {
    GraphDocument::from_parts(og, pattern, witness).to_json()
}
