//! Contractibility predicates: greedy and exact membership tests for the
//! strong vertex class (vertex deletions only), the strong class (vertex and
//! edge deletions), k-dismantlability, the axiom checker, and the move-script
//! verifier.
//!
//! Exact predicates backtrack over all candidate deletions with results
//! memoized on canonical form; the greedy variants commit to the first
//! candidate found, which is exactly what the published pseudocode does.
//! Neighborhood contractibility everywhere below is tested in the decidable
//! deletion-only fragment 𝕀_S.

use crate::canon::{canonical_form, CanonicalForm};
use crate::error::MAX_VERTICES;
use crate::graph::{Graph, VertexSet};
use crate::homology::is_trivial_homology;
use crate::moves::{Move, MoveScript, ReductionWitness, WitnessStep};
use dashmap::DashMap;
use std::collections::{HashMap, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScriptError {
    #[error("move {index} ({mv}) is illegal: {detail} (contractibility tested in the decidable fragment 𝕀_S)")]
    IllegalMove {
        index: usize,
        mv: String,
        detail: String,
    },
    #[error("move {index} ({mv}) has a dangling reference: {detail}")]
    DanglingReference {
        index: usize,
        mv: String,
        detail: String,
    },
    #[error("move {index} would exceed the {MAX_VERTICES}-vertex capacity")]
    Capacity { index: usize },
    #[error("precondition violated: {0} (contractibility tested in the decidable fragment 𝕀_S)")]
    Precondition(String),
}

/// Verdict of the axiom check: every non-universal vertex must admit a
/// non-neighbor with contractible common neighborhood.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub holds: bool,
    pub failing_vertex: Option<usize>,
    pub checked_pairs: usize,
}

/// Shared decision engine. Exact verdicts are memoized on canonical form in
/// concurrent maps (last-writer-wins is safe: equal keys always map to equal
/// values), so one kernel can serve many worker threads.
#[derive(Default)]
pub struct Kernel {
    memo_disabled: bool,
    svic_cache: DashMap<CanonicalForm, bool>,
    sic_cache: DashMap<CanonicalForm, bool>,
    kdism_cache: DashMap<(CanonicalForm, u32), bool>,
}

impl Kernel {
    pub fn new() -> Self {
        Kernel::default()
    }

    /// A kernel that recomputes every verdict, for validating that
    /// memoization never changes an answer.
    pub fn without_memo() -> Self {
        Kernel {
            memo_disabled: true,
            ..Kernel::default()
        }
    }

    /// Exact strong-vertex contractibility: some order of deletions of
    /// vertices with strong-vertex-contractible neighborhoods reaches K1.
    pub fn svic(&self, g: &Graph) -> bool {
        let n = g.n();
        if n == 0 {
            return false;
        }
        if n == 1 || g.is_cone().is_some() {
            return true;
        }
        if !g.is_connected() {
            // vertex deletion never merges components, so K1 is unreachable
            return false;
        }
        let key = (!self.memo_disabled).then(|| canonical_form(g));
        if let Some(k) = &key {
            if let Some(v) = self.svic_cache.get(k) {
                return *v;
            }
        }
        let verdict = (0..n).any(|v| {
            self.svic(&g.induced_subgraph(g.open_neighborhood(v).unwrap()))
                && self.svic(&g.delete_vertex(v).unwrap())
        });
        if let Some(k) = key {
            self.svic_cache.insert(k, verdict);
        }
        verdict
    }

    /// Exact strong contractibility: some sequence of deletions of
    /// contractible vertices and contractible edges reaches K1. Terminates
    /// because (vertex count, edge count) strictly decreases.
    pub fn sic(&self, g: &Graph) -> bool {
        let n = g.n();
        if n == 0 {
            return false;
        }
        if n == 1 || g.is_cone().is_some() {
            return true;
        }
        if !g.is_connected() {
            return false;
        }
        let key = (!self.memo_disabled).then(|| canonical_form(g));
        if let Some(k) = &key {
            if let Some(v) = self.sic_cache.get(k) {
                return *v;
            }
        }
        let verdict = (0..n).any(|v| {
            self.sic(&g.induced_subgraph(g.open_neighborhood(v).unwrap()))
                && self.sic(&g.delete_vertex(v).unwrap())
        }) || g.edges().into_iter().any(|(u, v)| {
            self.sic(&g.induced_subgraph(g.common_neighborhood(u, v).unwrap()))
                && self.sic(&g.remove_edge(u, v).unwrap())
        });
        if let Some(k) = key {
            self.sic_cache.insert(k, verdict);
        }
        verdict
    }

    /// svic with a reduction witness (in the labels of `g`) on success.
    pub fn svic_exact(&self, g: &Graph) -> (bool, Option<ReductionWitness>) {
        if !self.svic(g) {
            return (false, None);
        }
        let mut steps = Vec::new();
        let mut cur = g.clone();
        let mut orig: Vec<usize> = (0..g.n()).collect();
        while cur.n() > 1 {
            let v = (0..cur.n())
                .find(|&v| {
                    self.svic(&cur.induced_subgraph(cur.open_neighborhood(v).unwrap()))
                        && self.svic(&cur.delete_vertex(v).unwrap())
                })
                .expect("a member admits a safe deletion");
            steps.push(WitnessStep::Vertex { v: orig[v] });
            cur = cur.delete_vertex(v).unwrap();
            orig.remove(v);
        }
        (true, Some(ReductionWitness { steps }))
    }

    /// sic with a reduction witness on success; edge deletions may be
    /// interleaved with vertex deletions.
    pub fn sic_exact(&self, g: &Graph) -> (bool, Option<ReductionWitness>) {
        if !self.sic(g) {
            return (false, None);
        }
        let mut steps = Vec::new();
        let mut cur = g.clone();
        let mut orig: Vec<usize> = (0..g.n()).collect();
        while cur.n() > 1 {
            if let Some(v) = (0..cur.n()).find(|&v| {
                self.sic(&cur.induced_subgraph(cur.open_neighborhood(v).unwrap()))
                    && self.sic(&cur.delete_vertex(v).unwrap())
            }) {
                steps.push(WitnessStep::Vertex { v: orig[v] });
                cur = cur.delete_vertex(v).unwrap();
                orig.remove(v);
                continue;
            }
            let (u, v) = cur
                .edges()
                .into_iter()
                .find(|&(u, v)| {
                    self.sic(&cur.induced_subgraph(cur.common_neighborhood(u, v).unwrap()))
                        && self.sic(&cur.remove_edge(u, v).unwrap())
                })
                .expect("a member admits a safe deletion");
            steps.push(WitnessStep::Edge {
                u: orig[u],
                v: orig[v],
            });
            cur = cur.remove_edge(u, v).unwrap();
        }
        (true, Some(ReductionWitness { steps }))
    }

    /// k-dismantlability by exhaustive backtracking; level 0 delegates to the
    /// order-free greedy. Candidates are tried ascending by degree then index
    /// (a heuristic; correctness comes from trying all of them).
    pub fn k_dismantlable(&self, g: &Graph, k: u32) -> bool {
        let n = g.n();
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        if !g.is_connected() {
            return false;
        }
        if k == 0 {
            return dismantlable0(g).0;
        }
        let key = (!self.memo_disabled).then(|| (canonical_form(g), k));
        if let Some(key) = &key {
            if let Some(v) = self.kdism_cache.get(key) {
                return *v;
            }
        }
        let mut candidates: Vec<usize> = (0..n).collect();
        candidates.sort_by_key(|&v| (g.degree(v), v));
        let verdict = candidates.into_iter().any(|v| {
            self.k_dismantlable(&g.induced_subgraph(g.open_neighborhood(v).unwrap()), k - 1)
                && self.k_dismantlable(&g.delete_vertex(v).unwrap(), k)
        });
        if let Some(key) = key {
            self.kdism_cache.insert(key, verdict);
        }
        verdict
    }

    /// Least k such that the graph is k-dismantlable; absent exactly when the
    /// graph is not strong vertex contractible (the equivalence bounds the
    /// search by n).
    pub fn min_dismantle_level(&self, g: &Graph) -> Option<u32> {
        if !self.svic(g) {
            return None;
        }
        (0..=g.n() as u32).find(|&k| self.k_dismantlable(g, k))
    }

    /// Axiom check: every non-universal vertex v must have some non-neighbor
    /// u with contractible common neighborhood N(v, u). The faithful mode
    /// scans all non-neighbors of each v; `strict_pseudocode` reproduces the
    /// published scan, which only pairs each non-universal vertex with
    /// later-indexed non-universal vertices.
    pub fn check_axiom(&self, g: &Graph, strict_pseudocode: bool) -> AxiomReport {
        let n = g.n();
        let mut checked_pairs = 0;
        let fail = |v, checked_pairs| AxiomReport {
            holds: false,
            failing_vertex: Some(v),
            checked_pairs,
        };
        let vnc: Vec<usize> = (0..n).filter(|&v| g.degree(v) + 1 < n).collect();
        if strict_pseudocode {
            for i in 0..vnc.len().saturating_sub(1) {
                let v = vnc[i];
                let mut can_add_edge = false;
                for &u in &vnc[i + 1..] {
                    if !g.has_edge(v, u) {
                        checked_pairs += 1;
                        if self.sic(&g.induced_subgraph(g.common_neighborhood(v, u).unwrap())) {
                            can_add_edge = true;
                        }
                    }
                }
                if !can_add_edge {
                    return fail(v, checked_pairs);
                }
            }
        } else {
            for &v in &vnc {
                let mut found = false;
                for u in 0..n {
                    if u != v && !g.has_edge(v, u) {
                        checked_pairs += 1;
                        if self.sic(&g.induced_subgraph(g.common_neighborhood(v, u).unwrap())) {
                            found = true;
                            break;
                        }
                    }
                }
                if !found {
                    return fail(v, checked_pairs);
                }
            }
        }
        AxiomReport {
            holds: true,
            failing_vertex: None,
            checked_pairs,
        }
    }

    /// Replay a script, checking each move's legality. Vertex deletions
    /// relabel the survivors in ascending order and gluings append label n,
    /// so later moves must reference the relabeled state.
    pub fn verify_script(&self, s: &MoveScript) -> Result<Graph, ScriptError> {
        let mut g = s.initial.clone();
        for (index, mv) in s.moves.iter().enumerate() {
            let dangling = |detail: String| ScriptError::DanglingReference {
                index,
                mv: mv.to_string(),
                detail,
            };
            let illegal = |detail: String| ScriptError::IllegalMove {
                index,
                mv: mv.to_string(),
                detail,
            };
            let check_pair = |u: usize, v: usize| -> Result<(), ScriptError> {
                if u == v {
                    return Err(dangling(format!("endpoints must be distinct, got {u} twice")));
                }
                for w in [u, v] {
                    if w >= g.n() {
                        return Err(dangling(format!(
                            "vertex {w} out of range for a graph on {} vertices",
                            g.n()
                        )));
                    }
                }
                Ok(())
            };
            g = match *mv {
                Move::DeleteVertex(v) => {
                    if v >= g.n() {
                        return Err(dangling(format!(
                            "vertex {v} out of range for a graph on {} vertices",
                            g.n()
                        )));
                    }
                    let nbhd = g.open_neighborhood(v).unwrap();
                    if !self.sic(&g.induced_subgraph(nbhd)) {
                        return Err(illegal(format!(
                            "neighborhood {} of vertex {v} is not contractible",
                            fmt_set(nbhd)
                        )));
                    }
                    g.delete_vertex(v).unwrap()
                }
                Move::GlueVertex(s) => {
                    if s.is_empty() {
                        return Err(illegal("gluing neighborhood is empty".to_string()));
                    }
                    if !s.is_subset_of(g.vertices()) {
                        return Err(dangling(format!(
                            "neighborhood {} is not a subset of the vertex set",
                            fmt_set(s)
                        )));
                    }
                    if g.n() + 1 > MAX_VERTICES {
                        return Err(ScriptError::Capacity { index });
                    }
                    if !self.sic(&g.induced_subgraph(s)) {
                        return Err(illegal(format!(
                            "gluing neighborhood {} is not contractible",
                            fmt_set(s)
                        )));
                    }
                    g.add_vertex(s).unwrap()
                }
                Move::DeleteEdge(u, v) => {
                    check_pair(u, v)?;
                    if !g.has_edge(u, v) {
                        return Err(dangling(format!("no edge between {u} and {v}")));
                    }
                    let common = g.common_neighborhood(u, v).unwrap();
                    if !self.sic(&g.induced_subgraph(common)) {
                        return Err(illegal(format!(
                            "common neighborhood {} of edge ({u}, {v}) is not contractible",
                            fmt_set(common)
                        )));
                    }
                    g.remove_edge(u, v).unwrap()
                }
                Move::GlueEdge(u, v) => {
                    check_pair(u, v)?;
                    if g.has_edge(u, v) {
                        return Err(dangling(format!("edge between {u} and {v} already present")));
                    }
                    let common = g.common_neighborhood(u, v).unwrap();
                    if !self.sic(&g.induced_subgraph(common)) {
                        return Err(illegal(format!(
                            "common neighborhood {} of pair ({u}, {v}) is not contractible",
                            fmt_set(common)
                        )));
                    }
                    g.add_edge(u, v).unwrap()
                }
            };
        }
        Ok(g)
    }

    /// Factor a single edge move into a vertex gluing followed by a vertex
    /// deletion with the same outcome up to isomorphism: the glued vertex
    /// takes over u's role, with the edge to v removed or added.
    pub fn factor_edge_move(
        &self,
        g: &Graph,
        u: usize,
        v: usize,
        delete: bool,
    ) -> Result<MoveScript, ScriptError> {
        self.check_edge_move(g, u, v, delete)?;
        if g.n() + 1 > MAX_VERTICES {
            return Err(ScriptError::Capacity { index: 0 });
        }
        let closed = g.closed_neighborhood(u).unwrap();
        let nbhd = if delete {
            closed.without(v)
        } else {
            closed.with(v)
        };
        Ok(MoveScript {
            initial: g.clone(),
            moves: vec![Move::GlueVertex(nbhd), Move::DeleteVertex(u)],
        })
    }

    fn check_edge_move(
        &self,
        g: &Graph,
        u: usize,
        v: usize,
        delete: bool,
    ) -> Result<(), ScriptError> {
        if u == v || u >= g.n() || v >= g.n() {
            return Err(ScriptError::Precondition(format!(
                "({u}, {v}) is not a vertex pair of a graph on {} vertices",
                g.n()
            )));
        }
        if delete != g.has_edge(u, v) {
            return Err(ScriptError::Precondition(if delete {
                format!("no edge between {u} and {v}")
            } else {
                format!("edge between {u} and {v} already present")
            }));
        }
        let common = g.common_neighborhood(u, v).unwrap();
        if !self.sic(&g.induced_subgraph(common)) {
            return Err(ScriptError::Precondition(format!(
                "common neighborhood {} of ({u}, {v}) is not contractible",
                fmt_set(common)
            )));
        }
        Ok(())
    }

    /// Vertices whose deletion looks safe locally but is not: the open
    /// neighborhood is strong vertex contractible while the deleted graph is
    /// not. Empty means greedy deletion from this graph cannot get stuck on
    /// the first step.
    pub fn order_sensitivity(&self, g: &Graph) -> Result<Vec<usize>, ScriptError> {
        if !self.svic(g) {
            return Err(ScriptError::Precondition(
                "graph is not strong vertex contractible".to_string(),
            ));
        }
        Ok((0..g.n())
            .filter(|&v| {
                self.svic(&g.induced_subgraph(g.open_neighborhood(v).unwrap()))
                    && !self.svic(&g.delete_vertex(v).unwrap())
            })
            .collect())
    }

    /// The two vertex gluings realizing the deletion of a contractible edge
    /// {u, v}: a clone of u without the edge to v (new vertex glued to
    /// N[u] \ {v}), and the variant on the other side that also omits the
    /// edges into the common neighborhood (glued to N[u] \ ({v} ∪ N(u, v))).
    pub fn order_matters_construct(
        &self,
        g: &Graph,
        u: usize,
        v: usize,
    ) -> Result<[Graph; 2], ScriptError> {
        self.check_edge_move(g, u, v, true)?;
        if g.n() + 1 > MAX_VERTICES {
            return Err(ScriptError::Capacity { index: 0 });
        }
        let common = g.common_neighborhood(u, v).unwrap();
        let side_v = g.closed_neighborhood(v).unwrap().without(u);
        let side_u = g
            .closed_neighborhood(u)
            .unwrap()
            .without(v)
            .difference(common);
        Ok([
            g.add_vertex(side_v).unwrap(),
            g.add_vertex(side_u).unwrap(),
        ])
    }

    /// Bounded breadth-first search for a reduction to K1 over vertex
    /// deletions, edge deletions, and at most `max_edge_glues` edge gluings,
    /// deduplicated on canonical form. `None` is budget exhaustion or a
    /// fast negative (nontrivial homology), never a proof of non-membership.
    pub fn bounded_i_search(
        &self,
        g: &Graph,
        max_edge_glues: usize,
        max_states: usize,
    ) -> Option<MoveScript> {
        if g.n() == 0 || !g.is_connected() {
            return None;
        }
        // every move preserves homology, so a nontrivial start is hopeless
        if !is_trivial_homology(g).expect("nonempty") {
            return None;
        }
        struct Node {
            graph: Graph,
            glues: usize,
            parent: usize,
            mv: Option<Move>,
        }
        let mut nodes = vec![Node {
            graph: g.clone(),
            glues: 0,
            parent: 0,
            mv: None,
        }];
        let mut seen: HashMap<CanonicalForm, usize> =
            HashMap::from([(canonical_form(g), 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(idx) = queue.pop_front() {
            if nodes[idx].graph.n() == 1 {
                let mut moves = Vec::new();
                let mut i = idx;
                while let Some(mv) = nodes[i].mv.clone() {
                    moves.push(mv);
                    i = nodes[i].parent;
                }
                moves.reverse();
                return Some(MoveScript {
                    initial: g.clone(),
                    moves,
                });
            }
            let cur = nodes[idx].graph.clone();
            let glues = nodes[idx].glues;
            let mut successors: Vec<(Graph, Move, usize)> = Vec::new();
            for v in 0..cur.n() {
                if self.sic(&cur.induced_subgraph(cur.open_neighborhood(v).unwrap())) {
                    successors.push((cur.delete_vertex(v).unwrap(), Move::DeleteVertex(v), glues));
                }
            }
            for (u, v) in cur.edges() {
                if self.sic(&cur.induced_subgraph(cur.common_neighborhood(u, v).unwrap())) {
                    successors.push((cur.remove_edge(u, v).unwrap(), Move::DeleteEdge(u, v), glues));
                }
            }
            if glues < max_edge_glues {
                for u in 0..cur.n() {
                    for v in u + 1..cur.n() {
                        if !cur.has_edge(u, v)
                            && self
                                .sic(&cur.induced_subgraph(cur.common_neighborhood(u, v).unwrap()))
                        {
                            successors.push((
                                cur.add_edge(u, v).unwrap(),
                                Move::GlueEdge(u, v),
                                glues + 1,
                            ));
                        }
                    }
                }
            }
            for (h, mv, h_glues) in successors {
                if !h.is_connected() {
                    continue;
                }
                let key = canonical_form(&h);
                // revisit a known state only with spare gluing budget
                if seen.get(&key).is_some_and(|&b| b <= h_glues) {
                    continue;
                }
                if nodes.len() >= max_states {
                    continue;
                }
                seen.insert(key, h_glues);
                nodes.push(Node {
                    graph: h,
                    glues: h_glues,
                    parent: idx,
                    mv: Some(mv),
                });
                queue.push_back(nodes.len() - 1);
            }
        }
        None
    }
}

/// Greedy strong-vertex test (the published recursion): commit to the first
/// vertex whose open neighborhood passes greedily, delete it, repeat.
pub fn svic_greedy(g: &Graph) -> bool {
    svic_greedy_rec(g, &mut HashMap::new())
}

fn svic_greedy_rec(g: &Graph, memo: &mut HashMap<Graph, bool>) -> bool {
    let n = g.n();
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    if let Some(&r) = memo.get(g) {
        return r;
    }
    let mut verdict = false;
    for v in 0..n {
        if svic_greedy_rec(&g.induced_subgraph(g.open_neighborhood(v).unwrap()), memo) {
            verdict = svic_greedy_rec(&g.delete_vertex(v).unwrap(), memo);
            break;
        }
    }
    memo.insert(g.clone(), verdict);
    verdict
}

/// Greedy strong test (the published recursion): prefer the first vertex
/// whose neighborhood passes greedily; otherwise delete the first edge in
/// lexicographic order whose common neighborhood passes; fail if neither
/// exists.
pub fn sic_greedy(g: &Graph) -> bool {
    sic_greedy_rec(g, &mut HashMap::new())
}

fn sic_greedy_rec(g: &Graph, memo: &mut HashMap<Graph, bool>) -> bool {
    let n = g.n();
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    if let Some(&r) = memo.get(g) {
        return r;
    }
    let mut verdict = None;
    for v in 0..n {
        if sic_greedy_rec(&g.induced_subgraph(g.open_neighborhood(v).unwrap()), memo) {
            verdict = Some(sic_greedy_rec(&g.delete_vertex(v).unwrap(), memo));
            break;
        }
    }
    if verdict.is_none() {
        for (u, v) in g.edges() {
            if sic_greedy_rec(&g.induced_subgraph(g.common_neighborhood(u, v).unwrap()), memo) {
                verdict = Some(sic_greedy_rec(&g.remove_edge(u, v).unwrap(), memo));
                break;
            }
        }
    }
    let verdict = verdict.unwrap_or(false);
    memo.insert(g.clone(), verdict);
    verdict
}

/// 0-dismantlability: greedily delete any vertex whose open neighborhood is
/// a cone. The order does not matter for this class, so greedy is exact.
pub fn dismantlable0(g: &Graph) -> (bool, Option<ReductionWitness>) {
    if g.n() == 0 {
        return (false, None);
    }
    let mut steps = Vec::new();
    let mut cur = g.clone();
    let mut orig: Vec<usize> = (0..g.n()).collect();
    while cur.n() > 1 {
        let candidate = (0..cur.n()).find(|&v| {
            cur.induced_subgraph(cur.open_neighborhood(v).unwrap())
                .is_cone()
                .is_some()
        });
        let Some(v) = candidate else {
            return (false, None);
        };
        steps.push(WitnessStep::Vertex { v: orig[v] });
        cur = cur.delete_vertex(v).unwrap();
        orig.remove(v);
    }
    (true, Some(ReductionWitness { steps }))
}

fn fmt_set(s: VertexSet) -> String {
    let items: Vec<String> = s.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}
