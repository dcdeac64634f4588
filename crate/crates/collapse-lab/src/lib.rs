//! Decision engine and exhaustive-search harness for the hierarchy of
//! graph contractibility classes (strong vertex contractible, strong
//! contractible, k-dismantlable) and clique-complex homology.

pub mod canon;
pub mod complex;
pub mod contract;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod homology;
pub mod io;
pub mod moves;
pub mod reproduce;
pub mod snf;

pub use canon::{automorphism_count, canonical_form, CanonicalForm};
pub use contract::{dismantlable0, sic_greedy, svic_greedy, AxiomReport, Kernel, ScriptError};
pub use enumerate::{
    classify, enumerate_connected, ingest_graph6_stream, run_census, write_outputs,
    CensusResult, CensusSource, CensusSpec, ClassificationRecord, Filter,
};
pub use error::{FormatError, GraphError, MAX_VERTICES};
pub use graph::{Graph, VertexSet};
pub use homology::{homology, is_trivial_homology, HomologyProfile};
pub use moves::{parse_script, Move, MoveScript, ReductionWitness, WitnessStep};
