//! Labeled simple graphs on at most 64 vertices with bit-matrix adjacency.
//!
//! Vertices are labeled `0..n-1` and each adjacency row is a single `u64`,
//! so neighborhood algebra is constant-time word arithmetic.

use crate::error::{GraphError, MAX_VERTICES};

/// A set of vertices of an ambient graph, stored as a bitset over `0..n-1`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    /// All vertices `0..n`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < 64);
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1 << v)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersect(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Ascending iteration over members.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

/// A labeled simple graph: symmetric adjacency, no loops, `n <= 64`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices. `n = 0` is representable.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::CapacityExceeded(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(GraphError::SameVertex(u));
            }
            g.adj[u] |= 1 << v;
            g.adj[v] |= 1 << u;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n).expect("capacity");
        let full = VertexSet::full(n).bits();
        for v in 0..n {
            g.adj[v] = full & !(1 << v);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges).expect("capacity")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges).expect("capacity")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|row| row.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges in lexicographic `(u, v)` order with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            let upper = self.adj[u] >> (u + 1) << (u + 1);
            for v in VertexSet::from_bits(upper).iter() {
                out.push((u, v));
            }
        }
        out
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { v, n: self.n })
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub(crate) fn row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    /// N_G(v), the open neighborhood.
    pub fn open_neighborhood(&self, v: usize) -> Result<VertexSet, GraphError> {
        self.check_vertex(v)?;
        Ok(VertexSet(self.adj[v]))
    }

    /// N_G[v] = N_G(v) ∪ {v}.
    pub fn closed_neighborhood(&self, v: usize) -> Result<VertexSet, GraphError> {
        self.check_vertex(v)?;
        Ok(VertexSet(self.adj[v] | 1 << v))
    }

    /// N_G(u, v) = N_G(u) ∩ N_G(v).
    pub fn common_neighborhood(&self, u: usize, v: usize) -> Result<VertexSet, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SameVertex(u));
        }
        Ok(VertexSet(self.adj[u] & self.adj[v]))
    }

    /// Subgraph induced on `s`, relabeled `0..|s|-1` in ascending order of
    /// the original labels.
    pub fn induced_subgraph(&self, s: VertexSet) -> Graph {
        let s = s.intersect(self.vertices());
        let members: Vec<usize> = s.iter().collect();
        let mut g = Graph::empty(members.len()).expect("subset of a valid graph");
        for (i, &u) in members.iter().enumerate() {
            let row = self.adj[u] & s.bits();
            for (j, &v) in members.iter().enumerate() {
                if row >> v & 1 == 1 {
                    g.adj[i] |= 1 << j;
                }
            }
        }
        g
    }

    /// G - v, relabeled by ascending original label.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(v)?;
        Ok(self.induced_subgraph(self.vertices().without(v)))
    }

    /// Glue a new vertex (label `n`) adjacent to exactly `nbhd`.
    pub fn add_vertex(&self, nbhd: VertexSet) -> Result<Graph, GraphError> {
        if self.n + 1 > MAX_VERTICES {
            return Err(GraphError::CapacityExceeded(self.n + 1));
        }
        if !nbhd.is_subset_of(self.vertices()) {
            let v = nbhd.difference(self.vertices()).min().unwrap();
            return Err(GraphError::VertexOutOfRange { v, n: self.n });
        }
        let mut g = Graph {
            n: self.n + 1,
            adj: self.adj.clone(),
        };
        g.adj.push(nbhd.bits());
        for u in nbhd.iter() {
            g.adj[u] |= 1 << self.n;
        }
        Ok(g)
    }

    pub fn add_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SameVertex(u));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::EdgeExists { u, v });
        }
        let mut g = self.clone();
        g.adj[u] |= 1 << v;
        g.adj[v] |= 1 << u;
        Ok(g)
    }

    pub fn remove_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SameVertex(u));
        }
        if !self.has_edge(u, v) {
            return Err(GraphError::NoSuchEdge { u, v });
        }
        let mut g = self.clone();
        g.adj[u] &= !(1u64 << v);
        g.adj[v] &= !(1u64 << u);
        Ok(g)
    }

    /// Least-index vertex adjacent to all others, if any. The 1-vertex graph
    /// is a cone; the empty graph is not.
    pub fn is_cone(&self) -> Option<usize> {
        if self.n == 0 {
            return None;
        }
        let rest = VertexSet::full(self.n);
        (0..self.n).find(|&v| self.adj[v] == rest.without(v).bits())
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * (self.n.saturating_sub(1)) / 2
    }

    /// Connectivity; graphs on 0 or 1 vertices count as connected.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = 1u64;
        loop {
            let mut next = seen;
            for v in VertexSet::from_bits(seen).iter() {
                next |= self.adj[v];
            }
            if next == seen {
                break;
            }
            seen = next;
        }
        seen == self.vertices().bits()
    }

    pub fn component_count(&self) -> usize {
        let mut remaining = self.vertices();
        let mut count = 0;
        while let Some(start) = remaining.min() {
            count += 1;
            let mut seen = 1u64 << start;
            loop {
                let mut next = seen;
                for v in VertexSet::from_bits(seen).iter() {
                    next |= self.adj[v];
                }
                if next == seen {
                    break;
                }
                seen = next;
            }
            remaining = remaining.difference(VertexSet::from_bits(seen));
        }
        count
    }

    /// Apply a relabeling: vertex `v` of `self` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n).expect("same size");
        for u in 0..self.n {
            for v in VertexSet::from_bits(self.adj[u]).iter() {
                g.adj[perm[u]] |= 1 << perm[v];
            }
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn open_neighborhood_examples() {
        assert_eq!(
            Graph::complete(3).open_neighborhood(0).unwrap(),
            VertexSet::from_iter([1, 2])
        );
        assert_eq!(
            Graph::path(3).open_neighborhood(0).unwrap(),
            VertexSet::singleton(1)
        );
        assert_eq!(
            Graph::cycle(5).open_neighborhood(2).unwrap(),
            VertexSet::from_iter([1, 3])
        );
        assert_eq!(
            Graph::path(3).open_neighborhood(7),
            Err(GraphError::VertexOutOfRange { v: 7, n: 3 })
        );
    }

    #[test]
    fn common_neighborhood_examples() {
        assert_eq!(
            Graph::cycle(4).common_neighborhood(0, 2).unwrap(),
            VertexSet::from_iter([1, 3])
        );
        assert_eq!(
            Graph::cycle(5).common_neighborhood(0, 2).unwrap(),
            VertexSet::singleton(1)
        );
        assert_eq!(
            Graph::path(3).common_neighborhood(0, 1).unwrap(),
            VertexSet::EMPTY
        );
        assert_eq!(
            Graph::path(3).common_neighborhood(1, 1),
            Err(GraphError::SameVertex(1))
        );
    }

    #[test]
    fn neighborhood_symmetry() {
        let g = Graph::from_edges(6, &[(0, 3), (1, 4), (2, 3), (3, 4), (4, 5)]).unwrap();
        for u in 0..g.n() {
            for v in 0..g.n() {
                assert_eq!(
                    g.open_neighborhood(u).unwrap().contains(v),
                    g.open_neighborhood(v).unwrap().contains(u)
                );
            }
        }
    }

    #[test]
    fn induced_subgraph_examples() {
        let k3 = Graph::complete(4).induced_subgraph(VertexSet::from_iter([0, 1, 2]));
        assert_eq!(k3, Graph::complete(3));
        let p3 = Graph::cycle(5).induced_subgraph(VertexSet::from_iter([0, 1, 2]));
        assert_eq!(p3, Graph::path(3));
        let none = Graph::cycle(5).induced_subgraph(VertexSet::EMPTY);
        assert_eq!(none.n(), 0);
        let g = Graph::from_edges(5, &[(0, 2), (2, 4), (1, 3)]).unwrap();
        assert_eq!(g.induced_subgraph(g.vertices()), g);
    }

    #[test]
    fn induced_subgraph_relabels_ascending() {
        // C5 on {1, 3, 4}: edges 34 survive, relabeled to (1, 2).
        let g = Graph::cycle(5).induced_subgraph(VertexSet::from_iter([1, 3, 4]));
        assert_eq!(g, Graph::from_edges(3, &[(1, 2)]).unwrap());
    }

    #[test]
    fn delete_vertex_examples() {
        assert_eq!(Graph::complete(3).delete_vertex(0).unwrap(), Graph::complete(2));
        assert_eq!(Graph::cycle(4).delete_vertex(0).unwrap(), Graph::path(3));
        assert_eq!(Graph::complete(1).delete_vertex(0).unwrap().n(), 0);
        assert!(Graph::complete(1).delete_vertex(1).is_err());
    }

    #[test]
    fn is_cone_examples() {
        assert_eq!(Graph::complete(1).is_cone(), Some(0));
        // wheel W5: C5 plus universal hub 5
        let mut edges: Vec<_> = (0..5).map(|v| (v, (v + 1) % 5)).collect();
        edges.extend((0..5).map(|v| (v, 5)));
        let w5 = Graph::from_edges(6, &edges).unwrap();
        assert_eq!(w5.is_cone(), Some(5));
        assert_eq!(Graph::cycle(4).is_cone(), None);
        assert_eq!(Graph::empty(0).unwrap().is_cone(), None);
    }

    #[test]
    fn connectivity() {
        assert!(Graph::path(6).is_connected());
        assert!(!Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap().is_connected());
        assert_eq!(Graph::from_edges(5, &[(0, 1)]).unwrap().component_count(), 4);
        assert!(Graph::empty(1).unwrap().is_connected());
    }

    #[test]
    fn capacity_bound() {
        assert!(Graph::empty(64).is_ok());
        assert_eq!(Graph::empty(65), Err(GraphError::CapacityExceeded(65)));
        assert!(Graph::complete(64).add_vertex(VertexSet::singleton(0)).is_err());
    }

    #[test]
    fn glue_vertex() {
        let g = Graph::path(3).add_vertex(VertexSet::from_iter([0, 2])).unwrap();
        assert_eq!(g, Graph::cycle(4));
        assert!(Graph::path(3).add_vertex(VertexSet::singleton(3)).is_err());
    }

    #[test]
    fn edge_listing_is_lexicographic() {
        let g = Graph::from_edges(4, &[(2, 3), (0, 3), (0, 1)]).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (0, 3), (2, 3)]);
    }
}
