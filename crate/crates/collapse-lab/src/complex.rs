//! The clique (flag) complex of a graph and its simplicial boundary
//! matrices.

use crate::error::GraphError;
use crate::graph::{Graph, VertexSet};
use crate::snf::IntMatrix;
use std::collections::HashMap;

/// All faces of Δ(G), grouped by dimension. A d-face is a strictly
/// ascending tuple of d+1 vertices spanning a complete subgraph; faces
/// within each dimension are lexicographically sorted.
#[derive(Clone, Debug)]
pub struct CliqueComplex {
    faces_by_dim: Vec<Vec<Vec<u8>>>,
}

impl CliqueComplex {
    pub fn top_dim(&self) -> usize {
        self.faces_by_dim.len() - 1
    }

    pub fn faces(&self, dim: usize) -> &[Vec<u8>] {
        &self.faces_by_dim[dim]
    }

    pub fn face_count(&self, dim: usize) -> usize {
        self.faces_by_dim.get(dim).map_or(0, |f| f.len())
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces_by_dim.iter().map(|f| f.len()).collect()
    }

    /// Reduced Euler characteristic Σ (-1)^d f_d − 1.
    pub fn reduced_euler(&self) -> i64 {
        let mut chi = -1i64;
        for (d, faces) in self.faces_by_dim.iter().enumerate() {
            if d % 2 == 0 {
                chi += faces.len() as i64;
            } else {
                chi -= faces.len() as i64;
            }
        }
        chi
    }
}

pub fn clique_complex(g: &Graph) -> Result<CliqueComplex, GraphError> {
    if g.n() == 0 {
        return Err(GraphError::EmptyGraph);
    }
    let mut faces_by_dim: Vec<Vec<Vec<u8>>> = Vec::new();
    // (tuple, common neighbors above the last vertex)
    let mut frontier: Vec<(Vec<u8>, u64)> = (0..g.n())
        .map(|v| {
            let ext = g.row(v) & !((1u64 << v) | ((1u64 << v) - 1));
            (vec![v as u8], ext)
        })
        .collect();
    while !frontier.is_empty() {
        faces_by_dim.push(frontier.iter().map(|(f, _)| f.clone()).collect());
        let mut next = Vec::new();
        for (face, ext) in &frontier {
            for v in VertexSet::from_bits(*ext).iter() {
                let mut f = face.clone();
                f.push(v as u8);
                let above = !((1u64 << v) | ((1u64 << v) - 1));
                next.push((f, ext & g.row(v) & above));
            }
        }
        frontier = next;
    }
    Ok(CliqueComplex { faces_by_dim })
}

/// Signed incidence matrix ∂_d: rows indexed by (d−1)-faces, columns by
/// d-faces; deleting the i-th vertex of a column face contributes (−1)^i
/// in the row of the resulting face.
pub fn boundary_matrix(c: &CliqueComplex, d: usize) -> Result<IntMatrix, GraphError> {
    if d == 0 || d > c.top_dim() {
        return Err(GraphError::VertexOutOfRange {
            v: d,
            n: c.top_dim() + 1,
        });
    }
    let rows = &c.faces_by_dim[d - 1];
    let cols = &c.faces_by_dim[d];
    let index: HashMap<&[u8], usize> = rows
        .iter()
        .enumerate()
        .map(|(i, f)| (f.as_slice(), i))
        .collect();
    let mut m = IntMatrix::zero(rows.len(), cols.len());
    for (j, face) in cols.iter().enumerate() {
        for i in 0..face.len() {
            let mut sub = face.clone();
            sub.remove(i);
            let r = index[sub.as_slice()];
            m.set(r, j, if i % 2 == 0 { 1 } else { -1 });
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::snf::rank;

    fn octahedron() -> Graph {
        // K_{2,2,2}: complement of a perfect matching on 6 vertices
        let mut g = Graph::complete(6);
        for (u, v) in [(0, 1), (2, 3), (4, 5)] {
            g = g.remove_edge(u, v).unwrap();
        }
        g
    }

    #[test]
    fn c4_is_triangle_free() {
        let c = clique_complex(&Graph::cycle(4)).unwrap();
        assert_eq!(c.f_vector(), vec![4, 4]);
    }

    #[test]
    fn k3_has_one_triangle() {
        let c = clique_complex(&Graph::complete(3)).unwrap();
        assert_eq!(c.f_vector(), vec![3, 3, 1]);
        assert_eq!(c.faces(2), &[vec![0, 1, 2]]);
    }

    #[test]
    fn octahedron_face_counts_match_brute_force() {
        let g = octahedron();
        let c = clique_complex(&g).unwrap();
        assert_eq!(c.f_vector(), vec![6, 12, 8]);
        // brute-force clique enumeration over all vertex subsets
        for dim in 0..3 {
            let mut count = 0;
            for mask in 1u64..(1 << 6) {
                let s = VertexSet::from_bits(mask);
                if s.len() == dim + 1 && g.induced_subgraph(s).is_complete() {
                    count += 1;
                }
            }
            assert_eq!(c.face_count(dim), count);
        }
    }

    #[test]
    fn faces_are_sorted_and_closed() {
        let g = octahedron();
        let c = clique_complex(&g).unwrap();
        for dim in 0..=c.top_dim() {
            let faces = c.faces(dim);
            for w in faces.windows(2) {
                assert!(w[0] < w[1], "faces must be lex sorted and distinct");
            }
            // closure: every facet of a face is a face
            if dim > 0 {
                for f in faces {
                    for i in 0..f.len() {
                        let mut sub = f.clone();
                        sub.remove(i);
                        assert!(c.faces(dim - 1).binary_search(&sub).is_ok());
                    }
                }
            }
        }
    }

    #[test]
    fn triangle_boundary_rank() {
        let c = clique_complex(&Graph::complete(3)).unwrap();
        let d1 = boundary_matrix(&c, 1).unwrap();
        assert_eq!((d1.rows(), d1.cols()), (3, 3));
        assert_eq!(rank(&d1), 2);
    }

    #[test]
    fn c4_boundary_rank() {
        let c = clique_complex(&Graph::cycle(4)).unwrap();
        let d1 = boundary_matrix(&c, 1).unwrap();
        assert_eq!(rank(&d1), 3);
    }

    #[test]
    fn boundary_squared_is_zero() {
        let mut seed = 0xb7e151628aed2a6bu64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for _ in 0..30 {
            let n = 3 + (next() % 6) as usize; // 3..=8
            let mut g = Graph::empty(n).unwrap();
            for u in 0..n {
                for v in u + 1..n {
                    if next() % 3 > 0 {
                        g = g.add_edge(u, v).unwrap();
                    }
                }
            }
            let c = clique_complex(&g).unwrap();
            for d in 1..c.top_dim() {
                let a = boundary_matrix(&c, d).unwrap();
                let b = boundary_matrix(&c, d + 1).unwrap();
                assert!(a.multiply(&b).is_zero());
            }
        }
    }

    #[test]
    fn dimension_out_of_range() {
        let c = clique_complex(&Graph::cycle(4)).unwrap();
        assert!(boundary_matrix(&c, 0).is_err());
        assert!(boundary_matrix(&c, 2).is_err());
        assert!(clique_complex(&Graph::empty(0).unwrap()).is_err());
    }
}
