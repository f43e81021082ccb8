//! Arrow relations `C -> (B)^A_r` over finite hypergraphs of copies.
//!
//! Vertices are A-copies, edges are the A-copies inside each B-copy. An
//! r-coloring of the vertices *defeats* the instance when no edge is
//! monochromatic; the relation holds iff no coloring defeats it.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::colorings::{ColorAssignment, ColoringError};
use crate::forms::FormError;
use crate::gf2::Gf2Error;

mod cnf;
mod copies;
mod decide;
mod degree;
mod exhaustive;
mod hypergraph;
mod sat;
mod tuples;
mod vector;

pub use cnf::{encode_cnf, CnfFormula, VarMeaning};
pub use copies::{
    enumerate_copies, scan_b_copies, ArrowInstance, CopyNotion, CopySet, CopySpec, Pattern,
    ScanSummary,
};
pub use decide::{arrow_decide, Method};
pub use degree::{ramsey_degree_bounds, DegreeBounds, Truncation, TruncationDegree};
pub use exhaustive::{exhaustive_search, ExhaustiveOutcome};
pub use hypergraph::{check_coloring, CheckOutcome, Hypergraph};
pub use sat::{sat_solve, SatOutcome};
pub use tuples::{enumerate_space_tuples, tuple_arrow_check, tuple_instance, SpaceTuple};
pub use vector::{
    dim1_construct, flat_instance, pram_construct, pram_instance, vector_ramsey_search,
    Dim1Construction, FlatVariant, PramConstruction, SearchOutcome,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RamseyError {
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error("{what}: {needed} exceeds budget {limit}")]
    Budget {
        what: &'static str,
        needed: String,
        limit: u64,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("B-copy {0} contains no A-copy")]
    NotEmbedded(usize),
    #[error("coloring has {got} labels for {expected} copies")]
    PartialColoring { got: usize, expected: usize },
    #[error("space provides {available} radical dimensions, construction needs {needed}")]
    Truncation { needed: usize, available: usize },
    #[error("no n up to {0} satisfies the arrow relation")]
    NotFound(usize),
}

/// Resource limits. Exceeding one yields `Unknown` or a budget error,
/// never a wrong verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Candidate subspaces scanned during copy enumeration.
    pub max_copies: u64,
    /// Colorings visited by the exhaustive method.
    pub max_colorings: u64,
    /// Decisions taken by the SAT solver.
    pub max_decisions: u64,
    /// Variables in an encoded formula.
    pub max_variables: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_copies: 5_000_000,
            max_colorings: 1 << 26,
            max_decisions: 2_000_000,
            max_variables: 4_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Unknown(String),
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ArrowStats {
    pub a_copies: usize,
    pub b_copies: usize,
    pub colorings_examined: u64,
    pub sat_decisions: u64,
    pub method: String,
    /// Wall-clock milliseconds; the only nondeterministic field.
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArrowResult {
    pub verdict: Verdict,
    /// A coloring with no monochromatic edge, present iff the verdict is `Fails`.
    pub witness: Option<ColorAssignment>,
    pub stats: ArrowStats,
}
