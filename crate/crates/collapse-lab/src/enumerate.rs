//! Isomorph-free enumeration of connected graphs and census pipelines:
//! ordered filters, parallel classification, and persistent results.

use crate::canon::{canonical_form, CanonicalForm};
use crate::contract::{dismantlable0, sic_greedy, svic_greedy, Kernel};
use crate::error::{FormatError, GraphError};
use crate::graph::{Graph, VertexSet};
use crate::homology::{homology, is_trivial_homology};
use crate::io::parse_graph6;
use crate::moves::ReductionWitness;
use dashmap::DashSet;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::io::{BufRead, Write};
use std::path::Path;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};

/// One representative per isomorphism class of connected graphs on n
/// vertices, sorted by canonical form. Built by augmentation: every
/// connected graph arises from a connected graph one vertex smaller by
/// gluing the new vertex onto a nonempty neighborhood (delete any
/// non-cut vertex to see this), so extending the (n-1)-level
/// representatives with all nonempty neighborhoods and deduplicating on
/// canonical form is exhaustive.
pub fn enumerate_connected(n: usize) -> Result<Vec<Graph>, GraphError> {
    if !(1..=10).contains(&n) {
        return Err(GraphError::GenerationRange(n));
    }
    let mut level = vec![canonical_form(&Graph::complete(1))];
    for m in 2..=n {
        let next: DashSet<CanonicalForm> = DashSet::new();
        level.par_iter().for_each(|form| {
            let parent = parse_graph6(form.as_bytes()).expect("canonical forms round-trip");
            for bits in 1..(1u64 << (m - 1)) {
                let child = parent.add_vertex(VertexSet::from_bits(bits)).unwrap();
                next.insert(canonical_form(&child));
            }
        });
        level = next.into_iter().collect();
        level.sort();
    }
    Ok(level
        .iter()
        .map(|form| parse_graph6(form.as_bytes()).unwrap())
        .collect())
}

/// Parse newline-separated graph6 records in stream order; a malformed
/// record yields an error naming its line. Blank lines are skipped.
pub fn ingest_graph6_stream<R: BufRead>(
    reader: R,
) -> impl Iterator<Item = Result<Graph, FormatError>> {
    reader
        .lines()
        .enumerate()
        .filter_map(|(i, line)| match line {
            Err(e) => Some(Err(FormatError::Io(e))),
            Ok(text) if text.trim().is_empty() => None,
            Ok(text) => Some(parse_graph6(text.trim().as_bytes()).map_err(|e| {
                FormatError::Stream {
                    source: Box::new(e),
                    line: i + 1,
                }
            })),
        })
}

/// Census filter predicates, named as on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Filter {
    TrivialHomology,
    NontrivialHomology,
    Dismantlable0,
    NotDismantlable0,
    Svic,
    NotSvic,
    Sic,
    NotSic,
    AxiomHolds,
    AxiomFails,
}

impl Filter {
    pub fn name(self) -> &'static str {
        match self {
            Filter::TrivialHomology => "trivial-homology",
            Filter::NontrivialHomology => "nontrivial-homology",
            Filter::Dismantlable0 => "dismantlable0",
            Filter::NotDismantlable0 => "not-dismantlable0",
            Filter::Svic => "svic",
            Filter::NotSvic => "not-svic",
            Filter::Sic => "sic",
            Filter::NotSic => "not-sic",
            Filter::AxiomHolds => "axiom-holds",
            Filter::AxiomFails => "axiom-fails",
        }
    }

    /// Cost rank for the hard-coded cheap-first screening order:
    /// homology screens, then greedy dismantling, then the exact searches,
    /// then the axiom scan.
    fn cost(self) -> u8 {
        match self {
            Filter::TrivialHomology | Filter::NontrivialHomology => 0,
            Filter::Dismantlable0 | Filter::NotDismantlable0 => 1,
            Filter::Svic | Filter::NotSvic => 2,
            Filter::Sic | Filter::NotSic => 3,
            Filter::AxiomHolds | Filter::AxiomFails => 4,
        }
    }

    fn eval(self, kernel: &Kernel, g: &Graph, strict_pseudocode: bool) -> bool {
        match self {
            Filter::TrivialHomology => is_trivial_homology(g).expect("nonempty"),
            Filter::NontrivialHomology => !is_trivial_homology(g).expect("nonempty"),
            Filter::Dismantlable0 => dismantlable0(g).0,
            Filter::NotDismantlable0 => !dismantlable0(g).0,
            Filter::Svic => kernel.svic(g),
            Filter::NotSvic => !kernel.svic(g),
            Filter::Sic => kernel.sic(g),
            Filter::NotSic => !kernel.sic(g),
            Filter::AxiomHolds => kernel.check_axiom(g, strict_pseudocode).holds,
            Filter::AxiomFails => !kernel.check_axiom(g, strict_pseudocode).holds,
        }
    }
}

impl FromStr for Filter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "trivial-homology" => Ok(Filter::TrivialHomology),
            "nontrivial-homology" => Ok(Filter::NontrivialHomology),
            "dismantlable0" => Ok(Filter::Dismantlable0),
            "not-dismantlable0" => Ok(Filter::NotDismantlable0),
            "svic" | "svic_exact" => Ok(Filter::Svic),
            "not-svic" => Ok(Filter::NotSvic),
            "sic" | "sic_exact" => Ok(Filter::Sic),
            "not-sic" => Ok(Filter::NotSic),
            "axiom-holds" => Ok(Filter::AxiomHolds),
            "axiom-fails" => Ok(Filter::AxiomFails),
            other => Err(format!(
                "unknown filter `{other}` (expected one of: trivial-homology, \
                 nontrivial-homology, dismantlable0, not-dismantlable0, svic, \
                 not-svic, sic, not-sic, axiom-holds, axiom-fails)"
            )),
        }
    }
}

/// Full classification of one graph, as emitted by `classify` and stored
/// for every census match.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationRecord {
    pub canonical_g6: String,
    pub n: usize,
    pub m: usize,
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<u128>>,
    pub svic_greedy: bool,
    pub svic_exact: bool,
    pub sic_greedy: bool,
    pub sic_exact: bool,
    pub dismantlable0: bool,
    pub min_dismantle_level: Option<u32>,
    pub axiom_holds: Option<bool>,
    pub order_sensitive_vertices: Vec<usize>,
    pub witness: Option<ReductionWitness>,
}

/// Classify a nonempty graph. The axiom verdict is only meaningful for
/// members of the strong class, so it is null otherwise; the witness is the
/// vertex-only order when one exists, else the vertex/edge order.
pub fn classify(
    kernel: &Kernel,
    g: &Graph,
    strict_pseudocode: bool,
) -> Result<ClassificationRecord, GraphError> {
    if g.n() == 0 {
        return Err(GraphError::EmptyGraph);
    }
    let profile = homology(g)?;
    let (svic_exact, svic_witness) = kernel.svic_exact(g);
    let (sic_exact, sic_witness) = kernel.sic_exact(g);
    Ok(ClassificationRecord {
        canonical_g6: canonical_form(g).to_string(),
        n: g.n(),
        m: g.edge_count(),
        betti: profile.betti,
        torsion: profile.torsion,
        svic_greedy: svic_greedy(g),
        svic_exact,
        sic_greedy: sic_greedy(g),
        sic_exact,
        dismantlable0: dismantlable0(g).0,
        min_dismantle_level: kernel.min_dismantle_level(g),
        axiom_holds: sic_exact.then(|| kernel.check_axiom(g, strict_pseudocode).holds),
        order_sensitive_vertices: if svic_exact {
            kernel.order_sensitivity(g).expect("member")
        } else {
            Vec::new()
        },
        witness: svic_witness.or(sic_witness),
    })
}

pub enum CensusSource {
    /// Internal augmentation generator for connected graphs on n vertices.
    Generate { n: usize },
    /// Externally supplied graphs (e.g. an ingested graph6 stream).
    Stream(Box<dyn Iterator<Item = Result<Graph, FormatError>> + Send>),
}

pub struct CensusSpec {
    pub source: CensusSource,
    /// Conjunctive filters; evaluation is re-ordered cheap-first, which can
    /// only change runtime, never the matched set.
    pub filters: Vec<Filter>,
    /// 0 means the default parallelism degree.
    pub workers: usize,
    pub strict_pseudocode: bool,
    pub quiet: bool,
}

#[derive(Debug, PartialEq, Eq, Serialize)]
pub struct CensusResult {
    pub total_scanned: usize,
    /// Cumulative pass counts per filter, in cheap-first evaluation order.
    pub filter_counts: Vec<(String, usize)>,
    /// Matched classifications keyed by canonical graph6, deduplicated and
    /// sorted by canonical bytes.
    pub matched: Vec<(String, ClassificationRecord)>,
}

const BATCH: usize = 1024;
const PROGRESS_EVERY: usize = 100_000;

/// Run a census: scan the source in batches through a worker pool, apply
/// the filters cheap-first, and fully classify the survivors. The result is
/// deterministic across worker counts and input orders.
pub fn run_census(spec: CensusSpec) -> Result<CensusResult, FormatError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.workers)
        .build()
        .expect("worker pool");
    let mut filters = spec.filters.clone();
    filters.sort_by_key(|f| f.cost());

    let graphs: Box<dyn Iterator<Item = Result<Graph, FormatError>> + Send> = match spec.source {
        CensusSource::Generate { n } => {
            let reps =
                enumerate_connected(n).map_err(|e| FormatError::EdgeList {
                    line: 0,
                    msg: e.to_string(),
                })?;
            Box::new(reps.into_iter().map(Ok))
        }
        CensusSource::Stream(it) => it,
    };

    let kernel = Kernel::new();
    let mut total_scanned = 0usize;
    let pass_counts: Vec<AtomicUsize> = filters.iter().map(|_| AtomicUsize::new(0)).collect();
    let mut matched: BTreeMap<String, ClassificationRecord> = BTreeMap::new();
    let mut next_progress = PROGRESS_EVERY;

    let mut iter = graphs.peekable();
    while iter.peek().is_some() {
        let mut batch = Vec::with_capacity(BATCH);
        for item in iter.by_ref().take(BATCH) {
            batch.push(item?);
        }
        total_scanned += batch.len();
        let hits: Vec<ClassificationRecord> = pool.install(|| {
            batch
                .par_iter()
                .filter_map(|g| {
                    for (f, count) in filters.iter().zip(&pass_counts) {
                        if !f.eval(&kernel, g, spec.strict_pseudocode) {
                            return None;
                        }
                        count.fetch_add(1, Ordering::Relaxed);
                    }
                    Some(classify(&kernel, g, spec.strict_pseudocode).expect("nonempty"))
                })
                .collect()
        });
        for record in hits {
            matched.entry(record.canonical_g6.clone()).or_insert(record);
        }
        if !spec.quiet && total_scanned >= next_progress {
            eprintln!("scanned {total_scanned} graphs, {} matched", matched.len());
            next_progress += PROGRESS_EVERY;
        }
    }

    Ok(CensusResult {
        total_scanned,
        filter_counts: filters
            .iter()
            .zip(&pass_counts)
            .map(|(f, c)| (f.name().to_string(), c.load(Ordering::Relaxed)))
            .collect(),
        matched: matched.into_iter().collect(),
    })
}

/// Persist a census: `<prefix>.jsonl` gets one classification per line and
/// `<prefix>.g6` the bare canonical graph6 of each match. Both files are
/// appended to, so runs can accumulate.
pub fn write_outputs(result: &CensusResult, prefix: &Path) -> std::io::Result<()> {
    let open = |ext: &str| {
        std::fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(prefix.with_extension(ext))
    };
    let mut jsonl = open("jsonl")?;
    let mut g6 = open("g6")?;
    for (canonical, record) in &result.matched {
        serde_json::to_writer(&mut jsonl, record)?;
        jsonl.write_all(b"\n")?;
        writeln!(g6, "{canonical}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    /// Unlabeled connected graph count by brute force: enumerate all labeled
    /// graphs and deduplicate by trying every permutation.
    fn brute_force_connected_classes(n: usize) -> Vec<Graph> {
        fn permutations(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            permutations(n - 1)
                .into_iter()
                .flat_map(|p| {
                    (0..n).map(move |i| {
                        let mut q = p.clone();
                        q.insert(i, n - 1);
                        q
                    })
                })
                .collect()
        }
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let perms = permutations(n);
        let mut reps: Vec<Graph> = Vec::new();
        for mask in 0u64..1 << pairs.len() {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            if g.is_connected() && !perms.iter().any(|p| reps.contains(&g.relabel(p))) {
                reps.push(g);
            }
        }
        reps
    }

    #[test]
    fn generator_counts_match_brute_force() {
        for (n, expected) in [(1, 1), (2, 1), (3, 2), (4, 6), (5, 21)] {
            let reps = enumerate_connected(n).unwrap();
            assert_eq!(reps.len(), expected);
            assert_eq!(brute_force_connected_classes(n).len(), expected);
        }
        assert_eq!(enumerate_connected(6).unwrap().len(), 112);
    }

    #[test]
    fn generator_output_is_connected_sorted_and_duplicate_free() {
        let reps = enumerate_connected(6).unwrap();
        let forms: Vec<CanonicalForm> = reps.iter().map(canonical_form).collect();
        assert!(forms.windows(2).all(|w| w[0] < w[1]));
        assert!(reps.iter().all(Graph::is_connected));
    }

    #[test]
    fn generator_range() {
        assert!(enumerate_connected(0).is_err());
        assert!(enumerate_connected(11).is_err());
    }

    #[test]
    fn stream_ingestion() {
        let graphs: Vec<_> = ingest_graph6_stream(Cursor::new("@\nA_\nD?{\n"))
            .collect::<Result<_, _>>()
            .unwrap();
        assert_eq!(graphs.len(), 3);
        assert_eq!(graphs[0].n(), 1);
        assert!(ingest_graph6_stream(Cursor::new("")).next().is_none());
        let err = ingest_graph6_stream(Cursor::new("\x01bad\n"))
            .next()
            .unwrap()
            .unwrap_err();
        assert!(err.to_string().contains("line 1"), "{err}");
    }

    #[test]
    fn census_homology_filter_matches_brute_force() {
        let result = run_census(CensusSpec {
            source: CensusSource::Generate { n: 5 },
            filters: vec![Filter::TrivialHomology],
            workers: 2,
            strict_pseudocode: false,
            quiet: true,
        })
        .unwrap();
        let oracle = brute_force_connected_classes(5)
            .iter()
            .filter(|g| is_trivial_homology(g).unwrap())
            .count();
        assert_eq!(result.total_scanned, 21);
        assert_eq!(result.matched.len(), oracle);
        assert_eq!(result.filter_counts, vec![("trivial-homology".to_string(), oracle)]);
    }

    #[test]
    fn census_is_deterministic_across_workers_and_filter_order() {
        let run = |workers, filters| {
            serde_json::to_string(
                &run_census(CensusSpec {
                    source: CensusSource::Generate { n: 6 },
                    filters,
                    workers,
                    strict_pseudocode: false,
                    quiet: true,
                })
                .unwrap(),
            )
            .unwrap()
        };
        let base = run(1, vec![Filter::TrivialHomology, Filter::Dismantlable0]);
        assert_eq!(base, run(4, vec![Filter::TrivialHomology, Filter::Dismantlable0]));
        // permuted filters are re-sorted cheap-first, so even the counts agree
        assert_eq!(base, run(3, vec![Filter::Dismantlable0, Filter::TrivialHomology]));
    }

    #[test]
    fn matched_records_are_reproducible_from_their_canonical_form() {
        let result = run_census(CensusSpec {
            source: CensusSource::Generate { n: 5 },
            filters: vec![Filter::TrivialHomology],
            workers: 1,
            strict_pseudocode: false,
            quiet: true,
        })
        .unwrap();
        assert!(!result.matched.is_empty());
        let kernel = Kernel::new();
        for (canonical, record) in &result.matched {
            let g = parse_graph6(canonical.as_bytes()).unwrap();
            assert_eq!(&classify(&kernel, &g, false).unwrap(), record);
        }
    }

    #[test]
    fn filter_names_round_trip() {
        for f in [
            Filter::TrivialHomology,
            Filter::NontrivialHomology,
            Filter::Dismantlable0,
            Filter::NotDismantlable0,
            Filter::Svic,
            Filter::NotSvic,
            Filter::Sic,
            Filter::NotSic,
            Filter::AxiomHolds,
            Filter::AxiomFails,
        ] {
            assert_eq!(f.name().parse::<Filter>().unwrap(), f);
        }
        assert!("bogus".parse::<Filter>().is_err());
    }

    #[test]
    fn outputs_are_written_and_appended() {
        let dir = tempfile::tempdir().unwrap();
        let prefix = dir.path().join("census");
        let result = run_census(CensusSpec {
            source: CensusSource::Generate { n: 4 },
            filters: vec![Filter::TrivialHomology],
            workers: 1,
            strict_pseudocode: false,
            quiet: true,
        })
        .unwrap();
        write_outputs(&result, &prefix).unwrap();
        write_outputs(&result, &prefix).unwrap();
        let g6 = std::fs::read_to_string(prefix.with_extension("g6")).unwrap();
        assert_eq!(g6.lines().count(), 2 * result.matched.len());
        let jsonl = std::fs::read_to_string(prefix.with_extension("jsonl")).unwrap();
        for line in jsonl.lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            assert!(v.get("canonical_g6").is_some());
        }
    }
}
