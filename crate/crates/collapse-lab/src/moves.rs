//! Move scripts: checkable certificates of contractible-transformation
//! sequences, plus their text format.
//!
//! Script files carry an edge-list graph block followed by one move per
//! line: `DV v` | `GV v1 v2 ... vk` | `DE u v` | `GE u v`.

use crate::error::FormatError;
use crate::graph::{Graph, VertexSet};
use crate::io;
use serde::Serialize;

/// One contractible transformation. Vertex and edge references are labels
/// in the graph state produced by the preceding moves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    DeleteVertex(usize),
    GlueVertex(VertexSet),
    DeleteEdge(usize, usize),
    GlueEdge(usize, usize),
}

impl std::fmt::Display for Move {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Move::DeleteVertex(v) => write!(f, "DV {v}"),
            Move::GlueVertex(s) => {
                write!(f, "GV")?;
                for v in s.iter() {
                    write!(f, " {v}")?;
                }
                Ok(())
            }
            Move::DeleteEdge(u, v) => write!(f, "DE {u} {v}"),
            Move::GlueEdge(u, v) => write!(f, "GE {u} {v}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveScript {
    pub initial: Graph,
    pub moves: Vec<Move>,
}

impl MoveScript {
    pub fn glue_count(&self) -> usize {
        self.moves
            .iter()
            .filter(|m| matches!(m, Move::GlueVertex(_) | Move::GlueEdge(..)))
            .count()
    }

    pub fn to_text(&self) -> Result<String, FormatError> {
        let mut out = io::emit_edge_list(&self.initial)?;
        for m in &self.moves {
            out.push_str(&format!("{m}\n"));
        }
        Ok(out)
    }
}

pub fn parse_script(text: &str) -> Result<MoveScript, FormatError> {
    let (initial, consumed) = io::parse_edge_list_prefix(text)?;
    let mut moves = Vec::new();
    for (i, line) in text.lines().enumerate().skip(consumed) {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: &str| FormatError::EdgeList {
            line: i + 1,
            msg: msg.to_string(),
        };
        let mut it = line.split_whitespace();
        let op = it.next().unwrap();
        let args: Vec<usize> = it
            .map(|t| t.parse().map_err(|_| err("expected a vertex label")))
            .collect::<Result<_, _>>()?;
        let mv = match (op, args.as_slice()) {
            ("DV", [v]) => Move::DeleteVertex(*v),
            ("GV", vs) if !vs.is_empty() => {
                if vs.iter().any(|&v| v >= 64) {
                    return Err(err("GV label out of capacity"));
                }
                Move::GlueVertex(vs.iter().copied().collect())
            }
            ("DE", [u, v]) => Move::DeleteEdge(*u, *v),
            ("GE", [u, v]) => Move::GlueEdge(*u, *v),
            _ => return Err(err("expected `DV v`, `GV v1 ... vk`, `DE u v`, or `GE u v`")),
        };
        moves.push(mv);
    }
    Ok(MoveScript { initial, moves })
}

/// One step of a reduction witness, in the original labels of the graph
/// the witness was produced for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessStep {
    Vertex { v: usize },
    Edge { u: usize, v: usize },
}

/// A deletion order taking a graph to K1, replayable through the script
/// verifier.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct ReductionWitness {
    pub steps: Vec<WitnessStep>,
}

impl ReductionWitness {
    /// Convert original-label steps into a replayable script (deletions
    /// relabel the survivors, so each step is translated to the labels of
    /// the current state).
    pub fn to_script(&self, initial: &Graph) -> MoveScript {
        let mut alive: Vec<usize> = (0..initial.n()).collect();
        let mut moves = Vec::with_capacity(self.steps.len());
        for step in &self.steps {
            match *step {
                WitnessStep::Vertex { v } => {
                    let pos = alive.iter().position(|&o| o == v).expect("witness refers to a live vertex");
                    alive.remove(pos);
                    moves.push(Move::DeleteVertex(pos));
                }
                WitnessStep::Edge { u, v } => {
                    let pu = alive.iter().position(|&o| o == u).expect("witness refers to a live vertex");
                    let pv = alive.iter().position(|&o| o == v).expect("witness refers to a live vertex");
                    moves.push(Move::DeleteEdge(pu, pv));
                }
            }
        }
        MoveScript {
            initial: initial.clone(),
            moves,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn script_text_round_trip() {
        let script = MoveScript {
            initial: Graph::cycle(5),
            moves: vec![
                Move::GlueEdge(0, 2),
                Move::DeleteVertex(1),
                Move::GlueVertex(VertexSet::from_iter([0, 1])),
                Move::DeleteEdge(0, 2),
            ],
        };
        let text = script.to_text().unwrap();
        assert_eq!(parse_script(&text).unwrap(), script);
    }

    #[test]
    fn parse_rejects_malformed_moves() {
        let text = "2 1\n0 1\nDV\n";
        assert!(parse_script(text).is_err());
        let text = "2 1\n0 1\nGV\n";
        assert!(parse_script(text).is_err());
        let text = "2 1\n0 1\nXX 0 1\n";
        assert!(parse_script(text).is_err());
    }

    #[test]
    fn witness_translation_tracks_relabeling() {
        // delete original vertices 0 then 2 from P3: after deleting 0,
        // original 2 sits at position 1
        let w = ReductionWitness {
            steps: vec![WitnessStep::Vertex { v: 0 }, WitnessStep::Vertex { v: 2 }],
        };
        let script = w.to_script(&Graph::path(3));
        assert_eq!(
            script.moves,
            vec![Move::DeleteVertex(0), Move::DeleteVertex(1)]
        );
    }
}
