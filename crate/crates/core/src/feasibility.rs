//! Allocation feasibility.
//!
//! A resource released at `t_i` may protect vertex `v` only if the fire has
//! not reached `v` before `t_i`. Arrival times are those of the complete
//! allocation being checked; ties (`a_v == t_i`) are protectable.

use std::fmt;

use serde::Serialize;

use crate::allocation::Allocation;
use crate::fire::arrival_for_mask;
use crate::graph::{Minutes, VertexId};
use crate::instance::{ResourceId, WspInstance};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    InvalidVertex { resource: ResourceId, vertex: VertexId },
    UnknownResource { resource: ResourceId },
    DuplicateResource { resource: ResourceId },
    DuplicateVertex { vertex: VertexId },
    BurnedBeforeRelease { resource: ResourceId, vertex: VertexId, release: Minutes, arrival: Minutes },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::InvalidVertex { resource, vertex } => {
                write!(f, "resource {resource} assigned to nonexistent vertex {vertex}")
            }
            Violation::UnknownResource { resource } => write!(f, "resource {resource} is not in the schedule"),
            Violation::DuplicateResource { resource } => write!(f, "resource {resource} assigned more than once"),
            Violation::DuplicateVertex { vertex } => write!(f, "vertex {vertex} protected more than once"),
            Violation::BurnedBeforeRelease { resource, vertex, release, arrival } => write!(
                f,
                "resource {resource} (released at {release} min) cannot protect vertex {vertex}, burning at {arrival} min"
            ),
        }
    }
}

/// Returns every violation; an empty list means the allocation is feasible.
pub fn check_feasibility(instance: &WspInstance, alloc: &Allocation) -> Vec<Violation> {
    let n = instance.vertex_count();
    let mut violations = Vec::new();
    let (dup_r, dup_v) = alloc.duplicates();
    violations.extend(dup_r.into_iter().map(|resource| Violation::DuplicateResource { resource }));
    violations.extend(dup_v.into_iter().map(|vertex| Violation::DuplicateVertex { vertex }));
    for &(resource, vertex) in alloc.assignments() {
        if vertex >= n {
            violations.push(Violation::InvalidVertex { resource, vertex });
        }
        if instance.level_of(resource).is_none() {
            violations.push(Violation::UnknownResource { resource });
        }
    }
    if !violations.is_empty() {
        return violations;
    }

    let outcome = arrival_for_mask(instance, &alloc.protected_mask(n));
    for &(resource, vertex) in alloc.assignments() {
        let release = instance.release_time(resource).expect("checked above");
        let arrival = outcome.arrival[vertex];
        if arrival < release {
            violations.push(Violation::BurnedBeforeRelease { resource, vertex, release, arrival });
        }
    }
    violations
}

pub fn is_feasible(instance: &WspInstance, alloc: &Allocation) -> bool {
    check_feasibility(instance, alloc).is_empty()
}
