//! The WSP model: arrival variables `a_v`, burn indicators `y_v` and
//! release-indexed allocation variables `r_{i,v}`.
//!
//! ```text
//! min  Σ y_v
//! s.t. a_s = 0
//!      a_v - a_u - Δ Σ_i r_{i,u} <= t_uv         for every arc uv
//!      Σ_v r_{i,v} <= |R_i|                      for every release i
//!      Σ_i r_{i,v} <= 1                          for every vertex v
//!      a_v - t_i r_{i,v} >= 0                    for every release i, vertex v
//!      y_v + a_v / H >= 1                        for every vertex v
//!      0 <= a_v <= H + Δ + max t_uv;  y, r binary
//! ```

use super::{padded, Assignment, LinearModel, ObjectiveSense, Sense, VarKind};
use crate::allocation::Allocation;
use crate::error::{Result, WspError};
use crate::feasibility::check_feasibility;
use crate::fire::compute_arrival_times;
use crate::graph::VertexId;
use crate::instance::WspInstance;

/// Variable naming for a given instance size.
#[derive(Debug, Clone, Copy)]
pub struct WspNames {
    vertices: usize,
    levels: usize,
}

impl WspNames {
    pub fn new(instance: &WspInstance) -> Self {
        WspNames { vertices: instance.vertex_count(), levels: instance.schedule().len() }
    }

    fn v(&self, v: VertexId) -> String {
        padded(v, self.vertices.saturating_sub(1))
    }

    pub fn a(&self, v: VertexId) -> String {
        format!("a_{}", self.v(v))
    }

    pub fn y(&self, v: VertexId) -> String {
        format!("y_{}", self.v(v))
    }

    pub fn r(&self, level: usize, v: VertexId) -> String {
        format!("r_{}_{}", padded(level, self.levels.saturating_sub(1)), self.v(v))
    }
}

/// Upper bound placed on arrival variables.
pub fn arrival_upper_bound(instance: &WspInstance) -> f64 {
    instance.horizon() + instance.delay() + instance.graph().max_arc_time()
}

pub fn build_wsp_model(instance: &WspInstance) -> Result<LinearModel> {
    let h = instance.horizon();
    if !(h > 0.0) {
        return Err(WspError::domain("horizon must be positive"));
    }
    let n = instance.vertex_count();
    let names = WspNames::new(instance);
    let levels = instance.schedule().len();
    let ub = arrival_upper_bound(instance);
    let mut m = LinearModel::new("wsp", ObjectiveSense::Minimize);
    m.notes.insert("arrival_upper_bound".into(), format!("{ub}"));
    m.notes.insert("horizon".into(), format!("{h}"));
    m.notes.insert("delay".into(), format!("{}", instance.delay()));

    let a: Vec<usize> = (0..n).map(|v| m.add_variable(names.a(v), VarKind::Continuous, 0.0, ub)).collect::<Result<_>>()?;
    let y: Vec<usize> = (0..n).map(|v| m.add_variable(names.y(v), VarKind::Binary, 0.0, 1.0)).collect::<Result<_>>()?;
    let mut r = vec![Vec::with_capacity(n); levels];
    for (i, row) in r.iter_mut().enumerate() {
        for v in 0..n {
            row.push(m.add_variable(names.r(i, v), VarKind::Binary, 0.0, 1.0)?);
        }
    }

    m.set_objective(y.iter().map(|&id| (id, 1.0)))?;
    m.add_constraint("source", [(a[instance.ignition()], 1.0)], Sense::Eq, 0.0)?;
    let delay = instance.delay();
    for arc in instance.graph().arcs() {
        let (u, v) = (arc.tail, arc.head);
        let terms = [(a[v], 1.0), (a[u], -1.0)]
            .into_iter()
            .chain(r.iter().map(|row| (row[u], -delay)));
        m.add_constraint(format!("spread_{}_{}", names.v(u), names.v(v)), terms, Sense::Le, arc.time)?;
    }
    for (i, release) in instance.schedule().iter().enumerate() {
        m.add_constraint(
            format!("capacity_{}", padded(i, levels - 1)),
            r[i].iter().map(|&id| (id, 1.0)),
            Sense::Le,
            release.count as f64,
        )?;
    }
    if levels > 0 {
        for v in 0..n {
            m.add_constraint(format!("unique_{}", names.v(v)), r.iter().map(|row| (row[v], 1.0)), Sense::Le, 1.0)?;
        }
    }
    for (i, release) in instance.schedule().iter().enumerate() {
        for v in 0..n {
            m.add_constraint(
                format!("release_{}_{}", padded(i, levels - 1), names.v(v)),
                [(a[v], 1.0), (r[i][v], -release.time)],
                Sense::Ge,
                0.0,
            )?;
        }
    }
    for v in 0..n {
        m.add_constraint(format!("burned_{}", names.v(v)), [(y[v], 1.0), (a[v], 1.0 / h)], Sense::Ge, 1.0)?;
    }
    Ok(m)
}

/// Variable values induced by an allocation, without checking feasibility:
/// `r` from the assignments, `a` the arrival times capped at the arrival
/// bound, `y_v = [a_v < H]`.
pub fn allocation_values(instance: &WspInstance, alloc: &Allocation) -> Result<Assignment> {
    let names = WspNames::new(instance);
    let arrival = compute_arrival_times(instance, alloc)?.arrival;
    let ub = arrival_upper_bound(instance);
    let mut out = Assignment::new();
    for (v, &t) in arrival.iter().enumerate() {
        let a = t.min(ub);
        out.set(names.a(v), a);
        out.set(names.y(v), if a < instance.horizon() { 1.0 } else { 0.0 });
        for i in 0..instance.schedule().len() {
            out.set(names.r(i, v), 0.0);
        }
    }
    for &(res, v) in alloc.assignments() {
        let level = instance
            .level_of(res)
            .ok_or_else(|| WspError::structural(format!("unknown resource {res}")))?;
        out.set(names.r(level, v), 1.0);
    }
    Ok(out)
}

/// Variable values of a feasible allocation; infeasible ones are refused.
pub fn allocation_to_assignment(instance: &WspInstance, alloc: &Allocation) -> Result<Assignment> {
    let violations = check_feasibility(instance, alloc);
    if !violations.is_empty() {
        let list: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return Err(WspError::domain(format!("allocation is infeasible: {}", list.join("; "))));
    }
    allocation_values(instance, alloc)
}
