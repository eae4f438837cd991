//! MaxCut on interval models of interval count two.
//!
//! The crate builds the interval-model gadgets used to encode a cubic graph
//! into an interval graph with just two interval lengths, provides two
//! independent exact MaxCut oracles to verify the gadget algebra at desk
//! scale, and compiles the full reduction: zones, buffers, the switching
//! procedure, the cut budget, and the decision inverse.
//!
//! Modules:
//!
//! * [`model`] - exact-rational interval geometry, twin-quotient graphs, cut
//!   evaluation, validation, serialization;
//! * [`gadgets`] - builders for the 3-block, vertex, edge, link/stretch,
//!   switch and inverter gadgets, plus stretch compression;
//! * [`solver`] - brute-force and block-count exact oracles, closed-form
//!   evaluators, the alternation classifier, and the lemma suites;
//! * [`reduction`] - the cubic-graph-to-interval-model compiler with its
//!   schedule validator, cut budget, and good partitions;
//! * [`render`] - deterministic text and SVG diagrams of models.

pub mod coord;
pub mod gadgets;
pub mod model;
pub mod render;
pub mod solver;

pub mod reduction;

pub use coord::Coord;
pub use model::{
    build_twin_graph, cut_value, interval_count, validate_model, Block, BlockAssignment, BlockId,
    Color, IntervalModel, LengthClass, TwinGraph, ValidationMode,
};
