//! Isomorphism-invariant canonical forms and automorphism counting.
//!
//! The canonical form is the graph6 encoding of the relabeling that
//! maximizes the packed upper-triangle adjacency string. The search places
//! vertices position by position, branching only on ties of the next
//! adjacency block and skipping twin vertices (vertices whose transposition
//! is an automorphism).

use crate::graph::Graph;
use crate::io;

/// Canonical graph6 bytes of a graph; identical for isomorphic graphs,
/// distinct for non-isomorphic ones. The 0-vertex graph maps to the empty
/// byte string (graph6 has no encoding for it).
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.0
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("graph6 is ASCII")
    }
}

impl std::fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    if g.n() == 0 {
        return CanonicalForm(Vec::new());
    }
    let canon = canonical_graph(g);
    CanonicalForm(io::emit_graph6(&canon).expect("nonempty graph"))
}

/// The canonically relabeled copy of `g`.
pub fn canonical_graph(g: &Graph) -> Graph {
    let placed = CanonSearch::run(g);
    // vertex placed[i] gets label i
    let mut perm = vec![0usize; g.n()];
    for (i, &v) in placed.iter().enumerate() {
        perm[v] = i;
    }
    g.relabel(&perm)
}

struct CanonSearch<'a> {
    g: &'a Graph,
    n: usize,
    best: Option<(Vec<u64>, Vec<usize>)>,
}

impl<'a> CanonSearch<'a> {
    fn run(g: &Graph) -> Vec<usize> {
        let mut s = CanonSearch {
            g,
            n: g.n(),
            best: None,
        };
        s.descend(&mut Vec::with_capacity(s.n), &mut Vec::with_capacity(s.n));
        s.best.expect("at least one leaf").1
    }

    /// `blocks[j-1]` is the adjacency pattern of the vertex at position `j`
    /// against positions `0..j`, packed big-endian.
    fn descend(&mut self, placed: &mut Vec<usize>, blocks: &mut Vec<u64>) {
        let j = placed.len();
        if j == self.n {
            let better = match &self.best {
                None => true,
                Some((best_blocks, _)) => blocks[..] > best_blocks[..],
            };
            if better {
                self.best = Some((blocks.clone(), placed.clone()));
            }
            return;
        }
        let used: u64 = placed.iter().map(|&v| 1u64 << v).sum();
        let mut max_block = 0u64;
        let mut candidates: Vec<usize> = Vec::new();
        for u in 0..self.n {
            if used >> u & 1 == 1 {
                continue;
            }
            let mut block = 0u64;
            for (i, &p) in placed.iter().enumerate() {
                block |= ((self.g.row(p) >> u & 1) as u64) << (j - 1 - i);
            }
            if block > max_block || candidates.is_empty() {
                max_block = block;
                candidates.clear();
                candidates.push(u);
            } else if block == max_block {
                candidates.push(u);
            }
        }
        // prune when the extended prefix is lexicographically below the best
        if j > 0 {
            if let Some((best_blocks, _)) = &self.best {
                blocks.push(max_block);
                let worse = blocks[..] < best_blocks[..j];
                blocks.pop();
                if worse {
                    return;
                }
            }
        }
        // twin pruning: a transposition of twins is an automorphism
        let mut kept: Vec<usize> = Vec::with_capacity(candidates.len());
        'cand: for &u in &candidates {
            for &w in &kept {
                let mask = !((1u64 << u) | (1u64 << w));
                if self.g.row(u) & mask == self.g.row(w) & mask {
                    continue 'cand;
                }
            }
            kept.push(u);
        }
        for u in kept {
            placed.push(u);
            if j > 0 {
                blocks.push(max_block);
            }
            self.descend(placed, blocks);
            placed.pop();
            if j > 0 {
                blocks.pop();
            }
        }
    }
}

/// Order of the automorphism group: the number of adjacency-preserving
/// permutations of the vertices.
pub fn automorphism_count(g: &Graph) -> u64 {
    let n = g.n();
    if n <= 1 {
        return 1;
    }
    let degrees: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn assign(
        g: &Graph,
        degrees: &[usize],
        image: &mut [usize],
        used: &mut [bool],
        v: usize,
        count: &mut u64,
    ) {
        let n = g.n();
        if v == n {
            *count += 1;
            return;
        }
        for t in 0..n {
            if used[t] || degrees[t] != degrees[v] {
                continue;
            }
            let ok = (0..v).all(|w| g.has_edge(v, w) == g.has_edge(t, image[w]));
            if ok {
                image[v] = t;
                used[t] = true;
                assign(g, degrees, image, used, v + 1, count);
                used[t] = false;
            }
        }
        image[v] = usize::MAX;
    }
    let mut count = 0;
    assign(g, &degrees, &mut image, &mut used, 0, &mut count);
    count
}
