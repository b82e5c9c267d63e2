use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::graph::VertexId;
use crate::instance::ResourceId;

/// Assignment of resources to protected vertices.
///
/// Construction does not enforce injectivity; `duplicates` and the
/// feasibility checker report violations instead, so malformed solutions
/// read from disk can still be diagnosed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Allocation {
    assignments: Vec<(ResourceId, VertexId)>,
}

impl Allocation {
    /// The empty allocation.
    pub fn empty() -> Self {
        Allocation::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (ResourceId, VertexId)>) -> Self {
        let mut assignments: Vec<_> = pairs.into_iter().collect();
        assignments.sort_unstable();
        Allocation { assignments }
    }

    pub fn assignments(&self) -> &[(ResourceId, VertexId)] {
        &self.assignments
    }

    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn assign(&mut self, resource: ResourceId, vertex: VertexId) {
        let pos = self.assignments.partition_point(|p| *p < (resource, vertex));
        self.assignments.insert(pos, (resource, vertex));
    }

    pub fn protected_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.assignments.iter().map(|&(_, v)| v)
    }

    /// Indicator vector of protected vertices; ids must be `< vertex_count`.
    pub fn protected_mask(&self, vertex_count: usize) -> Vec<bool> {
        let mut mask = vec![false; vertex_count];
        for v in self.protected_vertices() {
            mask[v] = true;
        }
        mask
    }

    pub fn vertex_of(&self, resource: ResourceId) -> Option<VertexId> {
        self.assignments.iter().find(|p| p.0 == resource).map(|p| p.1)
    }

    /// Resources and vertices that appear more than once.
    pub fn duplicates(&self) -> (Vec<ResourceId>, Vec<VertexId>) {
        let mut seen_r = HashSet::new();
        let mut seen_v = HashSet::new();
        let mut dup_r = Vec::new();
        let mut dup_v = Vec::new();
        for &(r, v) in &self.assignments {
            if !seen_r.insert(r) && !dup_r.contains(&r) {
                dup_r.push(r);
            }
            if !seen_v.insert(v) && !dup_v.contains(&v) {
                dup_v.push(v);
            }
        }
        (dup_r, dup_v)
    }

    /// `self ⊆ other` as assignment sets.
    pub fn is_subset_of(&self, other: &Allocation) -> bool {
        self.assignments.iter().all(|p| other.assignments.binary_search(p).is_ok())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicates_are_reported_not_rejected() {
        let a = Allocation::from_pairs([(0, 3), (1, 3), (1, 4)]);
        let (r, v) = a.duplicates();
        assert_eq!(r, vec![1]);
        assert_eq!(v, vec![3]);
    }

    #[test]
    fn subset_relation() {
        let small = Allocation::from_pairs([(0, 3)]);
        let mut big = small.clone();
        big.assign(2, 5);
        assert!(small.is_subset_of(&big));
        assert!(!big.is_subset_of(&small));
        assert!(Allocation::empty().is_subset_of(&small));
    }
}
