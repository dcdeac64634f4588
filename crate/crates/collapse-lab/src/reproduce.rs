//! One-shot reproduction experiments: each function runs a scaled experiment,
//! reports expected vs. observed values, and says whether they match. The
//! `reproduce` subcommand and the acceptance test suite both drive these.

use crate::canon::{automorphism_count, canonical_form};
use crate::contract::{dismantlable0, sic_greedy, svic_greedy, Kernel};
use crate::enumerate::{
    enumerate_connected, run_census, CensusSource, CensusSpec, Filter,
};
use crate::error::FormatError;
use crate::graph::{Graph, VertexSet};
use crate::homology::{homology, is_trivial_homology, HomologyProfile};
use crate::io::parse_graph6;
use crate::moves::{Move, MoveScript};
use rayon::prelude::*;

pub struct CriterionReport {
    pub id: &'static str,
    pub pass: bool,
    pub lines: Vec<String>,
}

impl CriterionReport {
    fn new(id: &'static str) -> Self {
        CriterionReport {
            id,
            pass: true,
            lines: Vec::new(),
        }
    }

    fn check<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, expected: T, observed: T) {
        let ok = expected == observed;
        self.pass &= ok;
        self.lines.push(format!(
            "{}: expected {:?}, observed {:?}{}",
            what,
            expected,
            observed,
            if ok { "" } else { "  MISMATCH" }
        ));
    }

    fn note(&mut self, line: String) {
        self.lines.push(line);
    }
}

fn quiet_census(source: CensusSource, filters: Vec<Filter>, strict: bool, workers: usize) -> crate::enumerate::CensusResult {
    run_census(CensusSpec {
        source,
        filters,
        workers,
        strict_pseudocode: strict,
        quiet: true,
    })
    .expect("internal census cannot fail")
}

/// Connected-class counts for n = 1..8 from the augmentation generator.
pub fn a1(workers: usize) -> CriterionReport {
    let _ = workers;
    let mut report = CriterionReport::new("A1");
    for (n, expected) in [1usize, 1, 2, 6, 21, 112, 853, 11117].into_iter().enumerate() {
        let n = n + 1;
        let observed = enumerate_connected(n).unwrap().len();
        report.check(&format!("connected classes on {n} vertices"), expected, observed);
    }
    report
}

/// Class coincidence: trivial homology, greedy and exact strong-vertex, and
/// greedy and exact strong contractibility agree on every connected graph
/// with at most `max_n` vertices.
pub fn a2(max_n: usize, workers: usize) -> CriterionReport {
    let mut report = CriterionReport::new("A2");
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .unwrap();
    let kernel = Kernel::new();
    for n in 1..=max_n {
        let reps = enumerate_connected(n).unwrap();
        let total = reps.len();
        let discrepancies = pool.install(|| {
            reps.par_iter()
                .filter(|g| {
                    let acyclic = is_trivial_homology(g).unwrap();
                    [svic_greedy(g), kernel.svic(g), sic_greedy(g), kernel.sic(g)]
                        .into_iter()
                        .any(|v| v != acyclic)
                })
                .count()
        });
        report.check(
            &format!("class discrepancies among {total} graphs on {n} vertices"),
            0,
            discrepancies,
        );
    }
    report
}

/// Axiom counterexamples among members of the strong class: none through 7
/// vertices, 2 on 8 vertices, 133 on 9. Strict-pseudocode counts are
/// recorded alongside; a divergence there is logged, not failed.
pub fn a3(workers: usize) -> CriterionReport {
    let mut report = CriterionReport::new("A3");
    for (n, expected) in [(4, 0), (5, 0), (6, 0), (7, 0), (8, 2), (9, 133)] {
        let faithful = quiet_census(
            CensusSource::Generate { n },
            vec![Filter::Sic, Filter::AxiomFails],
            false,
            workers,
        );
        report.check(
            &format!("axiom violators in the strong class on {n} vertices"),
            expected,
            faithful.matched.len(),
        );
        let strict = quiet_census(
            CensusSource::Generate { n },
            vec![Filter::Sic, Filter::AxiomFails],
            true,
            workers,
        );
        report.note(format!(
            "strict-pseudocode violator count on {n} vertices: {}{}",
            strict.matched.len(),
            if strict.matched.len() == faithful.matched.len() {
                ""
            } else {
                "  (diverges from the faithful mode; logged, not failed)"
            }
        ));
    }
    report
}

/// Minimal strong-vertex-contractible graphs that are not 0-dismantlable:
/// none through 7 vertices; on 8 vertices the set is nonempty with minimum
/// edge count 17, contains an 18-edge member, and is entirely 1-dismantlable.
pub fn a4(workers: usize) -> CriterionReport {
    let mut report = CriterionReport::new("A4");
    for n in 4..=7 {
        let result = quiet_census(
            CensusSource::Generate { n },
            vec![Filter::Svic, Filter::NotDismantlable0],
            false,
            workers,
        );
        report.check(
            &format!("svic-but-not-0-dismantlable graphs on {n} vertices"),
            0,
            result.matched.len(),
        );
    }
    let result = quiet_census(
        CensusSource::Generate { n: 8 },
        vec![Filter::Svic, Filter::NotDismantlable0],
        false,
        workers,
    );
    report.check("8-vertex family is nonempty", true, !result.matched.is_empty());
    let edge_counts: Vec<usize> = result.matched.iter().map(|(_, r)| r.m).collect();
    report.check(
        "minimum edge count",
        Some(17),
        edge_counts.iter().copied().min(),
    );
    report.check(
        "an 18-edge member exists",
        true,
        edge_counts.contains(&18),
    );
    let kernel = Kernel::new();
    let all_level_one = result.matched.iter().all(|(g6, _)| {
        kernel.k_dismantlable(&parse_graph6(g6.as_bytes()).unwrap(), 1)
    });
    report.check("every member is 1-dismantlable", true, all_level_one);
    report
}

fn normalized(profile: &HomologyProfile) -> (Vec<usize>, Vec<Vec<u128>>) {
    let mut betti = profile.betti.clone();
    while betti.last() == Some(&0) {
        betti.pop();
    }
    let mut torsion = profile.torsion.clone();
    while torsion.last().is_some_and(Vec::is_empty) {
        torsion.pop();
    }
    (betti, torsion)
}

struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        self.0
    }

    fn below(&mut self, bound: usize) -> usize {
        (self.next() % bound as u64) as usize
    }
}

fn random_connected_graph(n: usize, rng: &mut XorShift) -> Graph {
    loop {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let edges: Vec<_> = pairs
            .into_iter()
            .filter(|_| rng.next() & 1 == 1)
            .collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        if g.is_connected() {
            return g;
        }
    }
}

/// Every legal move applicable to `g`, including a sampled handful of vertex
/// gluings (their full space is exponential).
fn legal_moves(kernel: &Kernel, g: &Graph, rng: &mut XorShift) -> Vec<Move> {
    let mut out = Vec::new();
    let n = g.n();
    if n > 1 {
        for v in 0..n {
            if kernel.sic(&g.induced_subgraph(g.open_neighborhood(v).unwrap())) {
                out.push(Move::DeleteVertex(v));
            }
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            if kernel.sic(&g.induced_subgraph(g.common_neighborhood(u, v).unwrap())) {
                out.push(if g.has_edge(u, v) {
                    Move::DeleteEdge(u, v)
                } else {
                    Move::GlueEdge(u, v)
                });
            }
        }
    }
    if n < 10 {
        for _ in 0..4 {
            let bits = rng.next() & VertexSet::full(n).bits();
            let s = VertexSet::from_bits(bits);
            if !s.is_empty() && kernel.sic(&g.induced_subgraph(s)) {
                out.push(Move::GlueVertex(s));
            }
        }
    }
    out
}

fn apply_move(g: &Graph, mv: &Move) -> Graph {
    match *mv {
        Move::DeleteVertex(v) => g.delete_vertex(v).unwrap(),
        Move::GlueVertex(s) => g.add_vertex(s).unwrap(),
        Move::DeleteEdge(u, v) => g.remove_edge(u, v).unwrap(),
        Move::GlueEdge(u, v) => g.add_edge(u, v).unwrap(),
    }
}

/// Property suite with no census: the containment chain, the dismantling
/// equivalence, homology invariance of random legal scripts, witness
/// replays, edge-move factorization, and worker determinism.
pub fn a5(workers: usize) -> CriterionReport {
    let mut report = CriterionReport::new("A5");
    let kernel = Kernel::new();

    // (i) containment chain and (ii) the dismantling-level equivalence
    let mut chain_violations = 0usize;
    let mut equivalence_violations = 0usize;
    let mut total = 0usize;
    for n in 1..=7 {
        for g in enumerate_connected(n).unwrap() {
            total += 1;
            let d0 = dismantlable0(&g).0;
            let svic = kernel.svic(&g);
            let sic = kernel.sic(&g);
            let acyclic = is_trivial_homology(&g).unwrap();
            if (d0 && !svic) || (svic && !sic) || (sic && !acyclic) {
                chain_violations += 1;
            }
            if svic != kernel.min_dismantle_level(&g).is_some() {
                equivalence_violations += 1;
            }
        }
    }
    report.check(
        &format!("containment-chain violations over {total} graphs (n <= 7)"),
        0,
        chain_violations,
    );
    report.check(
        "dismantling-level equivalence violations (n <= 7)",
        0,
        equivalence_violations,
    );

    // (iii) homology invariance of random legal scripts, plus the verifier
    // accepting every script it is fed
    let mut rng = XorShift(0x9e3779b97f4a7c15);
    let mut homology_violations = 0;
    for _ in 0..1000 {
        let g = random_connected_graph(2 + rng.below(7), &mut rng);
        let mut cur = g.clone();
        let mut moves = Vec::new();
        for _ in 0..rng.below(8) {
            let candidates = legal_moves(&kernel, &cur, &mut rng);
            if candidates.is_empty() {
                break;
            }
            let mv = candidates[rng.below(candidates.len())].clone();
            cur = apply_move(&cur, &mv);
            moves.push(mv);
        }
        let script = MoveScript {
            initial: g.clone(),
            moves,
        };
        let replay_ok = kernel.verify_script(&script).as_ref() == Ok(&cur);
        if !replay_ok
            || normalized(&homology(&g).unwrap()) != normalized(&homology(&cur).unwrap())
        {
            homology_violations += 1;
        }
    }
    report.check("homology changes across 1000 random legal scripts", 0, homology_violations);

    // (iv) witnesses replay to K1
    let mut witness_failures = 0;
    for n in 1..=6 {
        for g in enumerate_connected(n).unwrap() {
            for witness in [kernel.svic_exact(&g).1, kernel.sic_exact(&g).1]
                .into_iter()
                .flatten()
            {
                let script = witness.to_script(&g);
                if kernel.verify_script(&script).map(|h| h.n()) != Ok(1) {
                    witness_failures += 1;
                }
            }
        }
    }
    report.check("witness replays not ending at K1 (n <= 6)", 0, witness_failures);

    // (v) factorized edge moves agree with direct edge moves
    let mut factor_mismatches = 0;
    let mut factored_moves = 0;
    for n in 2..=6 {
        for g in enumerate_connected(n).unwrap() {
            for u in 0..n {
                for v in u + 1..n {
                    if !kernel.sic(&g.induced_subgraph(g.common_neighborhood(u, v).unwrap())) {
                        continue;
                    }
                    factored_moves += 1;
                    let delete = g.has_edge(u, v);
                    let script = kernel.factor_edge_move(&g, u, v, delete).unwrap();
                    let factored = kernel.verify_script(&script).unwrap();
                    let direct = if delete {
                        g.remove_edge(u, v).unwrap()
                    } else {
                        g.add_edge(u, v).unwrap()
                    };
                    if canonical_form(&factored) != canonical_form(&direct) {
                        factor_mismatches += 1;
                    }
                }
            }
        }
    }
    report.check(
        &format!("factorization mismatches over {factored_moves} legal edge moves (n <= 6)"),
        0,
        factor_mismatches,
    );

    // (vi) worker-count determinism at n = 7
    let serial = serde_json::to_string(&quiet_census(
        CensusSource::Generate { n: 7 },
        vec![Filter::TrivialHomology, Filter::Sic],
        false,
        1,
    ))
    .unwrap();
    let parallel = serde_json::to_string(&quiet_census(
        CensusSource::Generate { n: 7 },
        vec![Filter::TrivialHomology, Filter::Sic],
        false,
        workers.max(4),
    ))
    .unwrap();
    report.check("worker-count determinism at n = 7", true, serial == parallel);
    report
}

/// The 11-vertex hunt over an external graph6 stream: acyclic graphs outside
/// the strong vertex class exist, the sparsest has 30 edges and automorphism
/// count 4, and the two order-sensitive 12-vertex graphs built from it have
/// 35 edges, are non-isomorphic, and expose order-sensitive vertices.
pub fn a6(
    stream: Box<dyn Iterator<Item = Result<Graph, FormatError>> + Send>,
    workers: usize,
) -> Result<CriterionReport, FormatError> {
    let mut report = CriterionReport::new("A6");
    let result = run_census(CensusSpec {
        source: CensusSource::Stream(stream),
        filters: vec![Filter::TrivialHomology, Filter::NotSvic],
        workers,
        strict_pseudocode: false,
        quiet: false,
    })?;
    report.check("acyclic-but-not-svic graphs found", true, !result.matched.is_empty());
    let min_edges = result.matched.iter().map(|(_, r)| r.m).min();
    report.check("minimum edge count", Some(30), min_edges);
    let sparsest: Vec<&String> = result
        .matched
        .iter()
        .filter(|(_, r)| Some(r.m) == min_edges)
        .map(|(g6, _)| g6)
        .collect();
    report.note(format!("graphs at the minimum edge count: {}", sparsest.len()));
    let Some(g6) = sparsest.first() else {
        report.pass = false;
        return Ok(report);
    };
    let g30 = parse_graph6(g6.as_bytes()).unwrap();
    report.check("automorphism count of the sparsest graph", 4u64, automorphism_count(&g30));
    let kernel = Kernel::new();
    let edge = g30
        .edges()
        .into_iter()
        .find(|&(u, v)| kernel.sic(&g30.induced_subgraph(g30.common_neighborhood(u, v).unwrap())));
    report.check("a contractible edge exists", true, edge.is_some());
    if let Some((u, v)) = edge {
        let [a, b] = kernel.order_matters_construct(&g30, u, v).unwrap();
        report.check("constructed orders", (12usize, 12usize), (a.n(), b.n()));
        report.check("constructed sizes", (35usize, 35usize), (a.edge_count(), b.edge_count()));
        report.check(
            "constructions are non-isomorphic",
            true,
            canonical_form(&a) != canonical_form(&b),
        );
        for (name, g) in [("first", &a), ("second", &b)] {
            report.check(&format!("{name} construction is svic"), true, kernel.svic(g));
            let sensitive = kernel.order_sensitivity(g).unwrap();
            report.check(
                &format!("{name} construction has order-sensitive vertices"),
                true,
                !sensitive.is_empty(),
            );
        }
    }
    Ok(report)
}
