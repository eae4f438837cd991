//! Exact MaxCut oracles and the closed-form evaluators for the gadget
//! algebra.
//!
//! Two independent routes compute optima:
//!
//! * [`maxcut_bruteforce`] expands a model to the vertex level and walks all
//!   2-colorings with a Gray code;
//! * [`maxcut_twin_exact`] maximizes the quadratic cut objective directly
//!   over integer block counts by variable elimination on the twin graph.
//!
//! They must agree wherever both run. Everything downstream (lemma suites,
//! acceptance checks) leans on that cross-validation.

mod brute;
mod classify;
mod formulas;
pub mod suites;
mod twin;

pub use brute::{maxcut_bruteforce, maxcut_bruteforce_fixed, BRUTE_FORCE_VERTEX_LIMIT};
pub use classify::{classify_partition, AlternationReport, RowVerdict};
pub use formulas::{
    cut_brb_minus_rbr, eval_cut_brb, eval_cut_rbr, eval_edge_cases, eval_f_bound, eval_switch_alter,
    EdgeCaseValues, FormulaError,
};
pub use twin::{enumerate_optima, maxcut_twin_exact, ELIMINATION_WIDTH_LIMIT};

use crate::model::{BlockAssignment, BlockId};
use num_rational::Ratio;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("instance too large for brute force: {vertices} expanded vertices (limit {limit})")]
    TooLarge { vertices: u64, limit: u64 },
    #[error("elimination width {width} exceeds limit {limit}")]
    WidthExceeded { width: usize, limit: usize },
    #[error("fixed assignment refers to unknown block {0:?}")]
    UnknownBlock(BlockId),
    #[error("fixed rCount {r} exceeds multiplicity {m} for {id:?}")]
    FixedOutOfRange { id: BlockId, r: u32, m: u32 },
    #[error("optimum enumeration exceeded cap of {0}")]
    EnumerationCapExceeded(u64),
    #[error("model error: {0}")]
    Model(#[from] crate::model::ModelError),
}

/// An exact optimum: its value, one witness assignment, and the number of
/// optimal assignments when the solver enumerated them.
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub value: i64,
    pub assignment: BlockAssignment,
    pub optima_count: u64,
}

/// Red/blue counts for one family of external intervals.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FamilyCount {
    pub r: u32,
    pub b: u32,
}

impl FamilyCount {
    pub fn new(r: u32, b: u32) -> Self {
        FamilyCount { r, b }
    }

    /// `Delta = r - b`.
    pub fn delta(&self) -> i64 {
        i64::from(self.r) - i64::from(self.b)
    }

    pub fn total(&self) -> u32 {
        self.r + self.b
    }
}

/// The four external families around a 3-block: family 1 meets only the left
/// block, family 2 spans all three, family 3 meets only the right block,
/// family 4 meets the left and central blocks.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OverlapProfile {
    pub families: [FamilyCount; 4],
}

impl OverlapProfile {
    pub fn new(families: [FamilyCount; 4]) -> Self {
        OverlapProfile { families }
    }

    pub fn from_deltas(deltas: [i64; 4]) -> Self {
        let fam = deltas.map(|d| {
            if d >= 0 {
                FamilyCount::new(d as u32, 0)
            } else {
                FamilyCount::new(0, (-d) as u32)
            }
        });
        OverlapProfile { families: fam }
    }

    pub fn delta(&self, family: usize) -> i64 {
        self.families[family - 1].delta()
    }

    pub fn rb(&self, family: usize) -> FamilyCount {
        self.families[family - 1]
    }
}

pub type Rational = Ratio<i64>;
