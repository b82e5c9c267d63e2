//! JSON file formats for instances and solutions.
//!
//! Instance files are written with one arc per line in canonical order, so a
//! given instance always serializes to the same bytes.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::allocation::Allocation;
use crate::error::{Result, WspError};
use crate::graph::{DirectedGraph, Minutes, VertexId};
use crate::instance::{Release, ResourceId, WspInstance};

pub const INSTANCE_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    version: u32,
    vertex_count: usize,
    ignition: VertexId,
    horizon_min: Minutes,
    delay_min: Minutes,
    schedule: Vec<Release>,
    arcs: Vec<(VertexId, VertexId, Minutes)>,
    #[serde(default)]
    meta: Value,
}

pub fn instance_to_string(inst: &WspInstance) -> String {
    let num = |x: f64| serde_json::to_string(&x).expect("finite number");
    let mut s = String::new();
    s.push_str("{\n");
    let _ = writeln!(s, "  \"version\": {INSTANCE_FORMAT_VERSION},");
    let _ = writeln!(s, "  \"vertex_count\": {},", inst.vertex_count());
    let _ = writeln!(s, "  \"ignition\": {},", inst.ignition());
    let _ = writeln!(s, "  \"horizon_min\": {},", num(inst.horizon()));
    let _ = writeln!(s, "  \"delay_min\": {},", num(inst.delay()));
    let _ = writeln!(s, "  \"schedule\": {},", serde_json::to_string(inst.schedule()).unwrap());
    s.push_str("  \"arcs\": [");
    for (i, a) in inst.graph().arcs().iter().enumerate() {
        s.push_str(if i == 0 { "\n" } else { ",\n" });
        let _ = write!(s, "    [{},{},{}]", a.tail, a.head, num(a.time));
    }
    s.push_str(if inst.graph().arc_count() == 0 { "],\n" } else { "\n  ],\n" });
    let _ = writeln!(s, "  \"meta\": {}", serde_json::to_string(&inst.meta).unwrap());
    s.push_str("}\n");
    s
}

pub fn instance_from_str(text: &str) -> Result<WspInstance> {
    let file: InstanceFile = serde_json::from_str(text)?;
    if file.version != INSTANCE_FORMAT_VERSION {
        return Err(WspError::structural(format!(
            "unsupported instance format version {} (expected {INSTANCE_FORMAT_VERSION})",
            file.version
        )));
    }
    let graph = DirectedGraph::new(file.vertex_count, file.arcs)?;
    WspInstance::new(graph, file.ignition, file.horizon_min, file.delay_min, file.schedule, file.meta)
}

pub fn read_instance(path: impl AsRef<Path>) -> Result<WspInstance> {
    instance_from_str(&fs::read_to_string(path)?)
}

pub fn write_instance(path: impl AsRef<Path>, inst: &WspInstance) -> Result<()> {
    fs::write(path, instance_to_string(inst))?;
    Ok(())
}

/// Short content hash of the canonical serialization.
pub fn instance_id(inst: &WspInstance) -> String {
    let digest = Sha256::digest(instance_to_string(inst).as_bytes());
    digest.iter().take(8).fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionFile {
    pub instance_id: String,
    pub assignments: Vec<(ResourceId, VertexId)>,
    pub objective: usize,
}

impl SolutionFile {
    pub fn new(inst: &WspInstance, alloc: &Allocation, objective: usize) -> Self {
        SolutionFile { instance_id: instance_id(inst), assignments: alloc.assignments().to_vec(), objective }
    }

    pub fn allocation(&self) -> Allocation {
        Allocation::from_pairs(self.assignments.iter().copied())
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        fs::write(path, text)?;
        Ok(())
    }
}
