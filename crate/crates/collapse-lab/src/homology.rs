//! Reduced integer homology of clique complexes via Smith normal form.

use crate::complex::{boundary_matrix, clique_complex, CliqueComplex};
use crate::error::GraphError;
use crate::graph::Graph;
use crate::snf::invariant_factors;
use serde::Serialize;

/// Reduced Betti numbers and torsion coefficients of Δ(G).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyProfile {
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<u128>>,
}

impl HomologyProfile {
    pub fn is_trivial(&self) -> bool {
        self.betti.iter().all(|&b| b == 0) && self.torsion.iter().all(|t| t.is_empty())
    }

    /// Reduced Euler characteristic Σ (-1)^d b̃_d.
    pub fn reduced_euler(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

pub fn homology(g: &Graph) -> Result<HomologyProfile, GraphError> {
    let c = clique_complex(g)?;
    Ok(homology_of_complex(g, &c))
}

fn homology_of_complex(g: &Graph, c: &CliqueComplex) -> HomologyProfile {
    let top = c.top_dim();
    // rank and invariant factors of each boundary map
    let mut ranks = vec![0usize; top + 2];
    let mut torsion: Vec<Vec<u128>> = vec![Vec::new(); top + 1];
    for d in 1..=top {
        let factors = invariant_factors(&boundary_matrix(c, d).expect("in range"));
        ranks[d] = factors.len();
        torsion[d - 1] = factors
            .into_iter()
            .filter(|f| *f > 1.into())
            .map(|f| u128::try_from(f).expect("torsion coefficient exceeds u128"))
            .collect();
    }
    let mut betti = vec![0usize; top + 1];
    betti[0] = g.component_count() - 1;
    debug_assert_eq!(betti[0], c.face_count(0) - ranks[1] - 1);
    for d in 1..=top {
        betti[d] = c.face_count(d) - ranks[d] - ranks[d + 1];
    }
    let profile = HomologyProfile { betti, torsion };
    debug_assert_eq!(profile.reduced_euler(), c.reduced_euler());
    profile
}

pub fn is_trivial_homology(g: &Graph) -> Result<bool, GraphError> {
    if g.n() == 0 {
        return Err(GraphError::EmptyGraph);
    }
    if !g.is_connected() {
        return Ok(false);
    }
    // cheap screen: acyclic complexes have vanishing reduced Euler
    // characteristic
    let c = clique_complex(g)?;
    if c.reduced_euler() != 0 {
        return Ok(false);
    }
    Ok(homology_of_complex(g, &c).is_trivial())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexSet;

    #[test]
    fn hexagon_is_a_circle() {
        let h = homology(&Graph::cycle(6)).unwrap();
        assert_eq!(h.betti, vec![0, 1]);
        assert!(h.torsion.iter().all(|t| t.is_empty()));
        assert!(!is_trivial_homology(&Graph::cycle(6)).unwrap());
    }

    #[test]
    fn simplex_is_acyclic() {
        let h = homology(&Graph::complete(4)).unwrap();
        assert!(h.is_trivial());
        assert!(is_trivial_homology(&Graph::complete(4)).unwrap());
    }

    #[test]
    fn octahedron_is_a_sphere() {
        let mut g = Graph::complete(6);
        for (u, v) in [(0, 1), (2, 3), (4, 5)] {
            g = g.remove_edge(u, v).unwrap();
        }
        let h = homology(&g).unwrap();
        assert_eq!(h.betti, vec![0, 0, 1]);
        assert!(h.torsion.iter().all(|t| t.is_empty()));
    }

    #[test]
    fn trees_are_acyclic() {
        for g in [
            Graph::path(7),
            Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap(),
        ] {
            assert!(is_trivial_homology(&g).unwrap());
        }
        assert!(!is_trivial_homology(&Graph::cycle(5)).unwrap());
    }

    #[test]
    fn disjoint_union_counts_components() {
        let g = Graph::from_edges(5, &[(0, 1), (2, 3), (3, 4)]).unwrap();
        let h = homology(&g).unwrap();
        assert_eq!(h.betti[0], 1);
        assert!(!is_trivial_homology(&g).unwrap());
    }

    #[test]
    fn connected_chordal_graphs_up_to_7_are_acyclic() {
        // chordal graphs built by simplicial-vertex addition: repeatedly glue
        // a vertex whose neighborhood is a clique
        let mut seed = 0x452821e638d01377u64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for _ in 0..60 {
            let n = 2 + (next() % 6) as usize; // 2..=7
            let mut g = Graph::complete(1);
            while g.n() < n {
                // pick a random nonempty clique as the new neighborhood
                let cliques: Vec<VertexSet> = (1u64..(1 << g.n()))
                    .map(VertexSet::from_bits)
                    .filter(|&s| g.induced_subgraph(s).is_complete())
                    .collect();
                let s = cliques[(next() % cliques.len() as u64) as usize];
                g = g.add_vertex(s).unwrap();
            }
            assert!(g.is_connected());
            assert!(is_trivial_homology(&g).unwrap(), "chordal graph {:?}", g.edges());
        }
    }

    #[test]
    fn homology_is_isomorphism_invariant() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)])
            .unwrap();
        let perm = [3, 5, 0, 1, 4, 2];
        assert_eq!(homology(&g).unwrap(), homology(&g.relabel(&perm)).unwrap());
    }

    #[test]
    fn empty_graph_is_rejected() {
        assert!(homology(&Graph::empty(0).unwrap()).is_err());
        assert!(is_trivial_homology(&Graph::empty(0).unwrap()).is_err());
    }
}
