//! Interval models over blocks of twin intervals.
//!
//! A `Block` is a maximal family of identical intervals: every member spans
//! the same `[left, left + length]` segment, so the members are pairwise
//! adjacent and interchangeable. All cut arithmetic in this crate is done on
//! the twin-quotient graph extracted from a model; the vertex-level expansion
//! exists only inside the brute-force oracle.
//!
//! Intersection is closed-interval intersection: a single shared point makes
//! two blocks adjacent. The gadget layouts rely on this for the link
//! intervals that meet a block exactly at its endpoint.

use crate::coord::{fmt_ratio, int, on_eighth_grid, parse_ratio, Coord};
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

pub type BlockId = String;

/// One of the two cut classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    R,
    B,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::R => Color::B,
            Color::B => Color::R,
        }
    }

    /// Full-block assignment count for a block of this color.
    pub fn r_count(self, multiplicity: u32) -> u32 {
        match self {
            Color::R => multiplicity,
            Color::B => 0,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Color::R => write!(f, "R"),
            Color::B => write!(f, "B"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LengthClass {
    /// Length exactly 1.
    Short,
    /// Length exactly `alpha` (the model-level long length).
    Long,
}

impl fmt::Display for LengthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LengthClass::Short => write!(f, "short"),
            LengthClass::Long => write!(f, "long"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub id: BlockId,
    pub left: Coord,
    pub length: LengthClass,
    pub multiplicity: u32,
    /// Provenance, e.g. which gadget produced the block and its role there.
    pub tag: String,
}

impl Block {
    pub fn new(
        id: impl Into<BlockId>,
        left: Coord,
        length: LengthClass,
        multiplicity: u32,
        tag: impl Into<String>,
    ) -> Self {
        Block { id: id.into(), left, length, multiplicity, tag: tag.into() }
    }

    pub fn short(id: impl Into<BlockId>, left: Coord, multiplicity: u32, tag: impl Into<String>) -> Self {
        Block::new(id, left, LengthClass::Short, multiplicity, tag)
    }

    pub fn long(id: impl Into<BlockId>, left: Coord, multiplicity: u32, tag: impl Into<String>) -> Self {
        Block::new(id, left, LengthClass::Long, multiplicity, tag)
    }

    pub fn len(&self, alpha: &Coord) -> Coord {
        match self.length {
            LengthClass::Short => int(1),
            LengthClass::Long => *alpha,
        }
    }

    pub fn right(&self, alpha: &Coord) -> Coord {
        self.left + self.len(alpha)
    }
}

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("duplicate block id {0:?}")]
    DuplicateId(BlockId),
    #[error("block {0:?} has multiplicity 0")]
    ZeroMultiplicity(BlockId),
    #[error("block id {0:?} contains whitespace")]
    BadId(BlockId),
    #[error("alpha must be positive, got {0}")]
    BadAlpha(String),
    #[error("assignment error: {0}")]
    Assignment(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// An ordered family of blocks plus the long-interval length `alpha`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalModel {
    blocks: Vec<Block>,
    alpha: Coord,
}

impl IntervalModel {
    /// Builds a model, sorting blocks by `(left, id)` and checking the block
    /// invariants.
    pub fn new(mut blocks: Vec<Block>, alpha: Coord) -> Result<Self, ModelError> {
        if alpha <= Coord::zero() {
            return Err(ModelError::BadAlpha(fmt_ratio(&alpha)));
        }
        let mut seen = BTreeSet::new();
        for b in &blocks {
            if b.id.chars().any(char::is_whitespace) || b.id.is_empty() {
                return Err(ModelError::BadId(b.id.clone()));
            }
            if !seen.insert(b.id.clone()) {
                return Err(ModelError::DuplicateId(b.id.clone()));
            }
            if b.multiplicity == 0 {
                return Err(ModelError::ZeroMultiplicity(b.id.clone()));
            }
        }
        blocks.sort_by(|a, b| a.left.cmp(&b.left).then_with(|| a.id.cmp(&b.id)));
        Ok(IntervalModel { blocks, alpha })
    }

    pub fn alpha(&self) -> &Coord {
        &self.alpha
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, id: &str) -> Option<&Block> {
        self.blocks.iter().find(|b| b.id == id)
    }

    /// Total number of intervals (sum of multiplicities).
    pub fn interval_total(&self) -> u64 {
        self.blocks.iter().map(|b| u64::from(b.multiplicity)).sum()
    }

    /// Merges another model fragment into this one. Ids must stay unique.
    pub fn merge(self, other: IntervalModel) -> Result<Self, ModelError> {
        let mut blocks = self.blocks;
        blocks.extend(other.blocks);
        IntervalModel::new(blocks, self.alpha)
    }

    /// Translates every block by `delta`.
    pub fn translate(&self, delta: Coord) -> IntervalModel {
        let blocks = self
            .blocks
            .iter()
            .map(|b| Block { left: b.left + delta, ..b.clone() })
            .collect();
        IntervalModel { blocks, alpha: self.alpha }
    }

    /// Line-oriented text form; deterministic and bit-exact under round-trip.
    pub fn to_text(&self) -> String {
        let mut out = format!("alpha {}\n", fmt_ratio(&self.alpha));
        for b in &self.blocks {
            out.push_str(&format!(
                "{} {} {} {} {}\n",
                b.id,
                fmt_ratio(&b.left),
                b.length,
                b.multiplicity,
                b.tag
            ));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, ModelError> {
        let mut alpha = None;
        let mut blocks = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let l = raw.trim_end_matches('\r');
            if l.trim().is_empty() || l.starts_with('#') {
                continue;
            }
            if let Some(rest) = l.strip_prefix("alpha ") {
                if alpha.is_some() {
                    return Err(ModelError::Parse { line, msg: "duplicate alpha header".into() });
                }
                alpha = Some(parse_ratio(rest.trim()).map_err(|msg| ModelError::Parse { line, msg })?);
                continue;
            }
            let mut it = l.splitn(5, ' ');
            let id = it.next().filter(|s| !s.is_empty()).ok_or_else(|| ModelError::Parse {
                line,
                msg: "missing block id".into(),
            })?;
            let left = it
                .next()
                .ok_or_else(|| ModelError::Parse { line, msg: "missing left coordinate".into() })
                .and_then(|s| parse_ratio(s).map_err(|msg| ModelError::Parse { line, msg }))?;
            let length = match it.next() {
                Some("short") => LengthClass::Short,
                Some("long") => LengthClass::Long,
                other => {
                    return Err(ModelError::Parse {
                        line,
                        msg: format!("bad length class {other:?}"),
                    })
                }
            };
            let mult: u32 = it
                .next()
                .ok_or_else(|| ModelError::Parse { line, msg: "missing multiplicity".into() })?
                .parse()
                .map_err(|e| ModelError::Parse { line, msg: format!("bad multiplicity: {e}") })?;
            let tag = it.next().unwrap_or("").to_string();
            blocks.push(Block::new(id, left, length, mult, tag));
        }
        let alpha = alpha.ok_or_else(|| ModelError::Parse { line: 0, msg: "missing alpha header".into() })?;
        IntervalModel::new(blocks, alpha)
    }
}

/// The twin-quotient graph of a model: one node per block, an edge whenever
/// the closed spans intersect. Within-block cliques stay implicit in the
/// multiplicities.
#[derive(Debug, Clone)]
pub struct TwinGraph {
    nodes: Vec<(BlockId, u32)>,
    edges: Vec<(usize, usize)>,
    by_id: BTreeMap<BlockId, usize>,
}

impl TwinGraph {
    pub fn new(nodes: Vec<(BlockId, u32)>, mut edge_ids: Vec<(BlockId, BlockId)>) -> Result<Self, ModelError> {
        let mut by_id = BTreeMap::new();
        for (i, (id, _)) in nodes.iter().enumerate() {
            if by_id.insert(id.clone(), i).is_some() {
                return Err(ModelError::DuplicateId(id.clone()));
            }
        }
        edge_ids.sort();
        edge_ids.dedup();
        let mut edges = Vec::with_capacity(edge_ids.len());
        for (a, b) in edge_ids {
            let ia = *by_id.get(&a).ok_or_else(|| ModelError::Assignment(format!("unknown node {a:?}")))?;
            let ib = *by_id.get(&b).ok_or_else(|| ModelError::Assignment(format!("unknown node {b:?}")))?;
            if ia == ib {
                continue; // self-loops are implicit cliques
            }
            edges.push((ia.min(ib), ia.max(ib)));
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(TwinGraph { nodes, edges, by_id })
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[(BlockId, u32)] {
        &self.nodes
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.by_id.get(id).copied()
    }

    pub fn id_of(&self, idx: usize) -> &BlockId {
        &self.nodes[idx].0
    }

    pub fn multiplicity(&self, idx: usize) -> u32 {
        self.nodes[idx].1
    }

    /// Expanded (vertex-level) size of the graph.
    pub fn expanded_size(&self) -> u64 {
        self.nodes.iter().map(|(_, m)| u64::from(*m)).sum()
    }

    pub fn edge_id_set(&self) -> BTreeSet<(BlockId, BlockId)> {
        self.edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (self.nodes[a].0.clone(), self.nodes[b].0.clone());
                if x <= y {
                    (x, y)
                } else {
                    (y, x)
                }
            })
            .collect()
    }

    pub fn node_set(&self) -> BTreeMap<BlockId, u32> {
        self.nodes.iter().cloned().collect()
    }

    /// Labeled equality: same ids with the same multiplicities and the same
    /// edge set.
    pub fn same_labeled_graph(&self, other: &TwinGraph) -> bool {
        self.node_set() == other.node_set() && self.edge_id_set() == other.edge_id_set()
    }

    pub fn neighbors(&self, idx: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &(a, b) in &self.edges {
            if a == idx {
                out.push(b);
            } else if b == idx {
                out.push(a);
            }
        }
        out
    }

    /// Induced subgraph on the given ids.
    pub fn induced(&self, ids: &BTreeSet<BlockId>) -> TwinGraph {
        let nodes: Vec<_> = self.nodes.iter().filter(|(id, _)| ids.contains(id)).cloned().collect();
        let edge_ids: Vec<_> = self
            .edges
            .iter()
            .filter(|&&(a, b)| ids.contains(&self.nodes[a].0) && ids.contains(&self.nodes[b].0))
            .map(|&(a, b)| (self.nodes[a].0.clone(), self.nodes[b].0.clone()))
            .collect();
        TwinGraph::new(nodes, edge_ids).expect("induced subgraph of a valid graph")
    }
}

/// Builds the twin graph by a left-to-right sweep over the sorted blocks.
pub fn build_twin_graph(model: &IntervalModel) -> Result<TwinGraph, ModelError> {
    let alpha = *model.alpha();
    let blocks = model.blocks();
    let nodes: Vec<_> = blocks.iter().map(|b| (b.id.clone(), b.multiplicity)).collect();
    let mut edges: Vec<(BlockId, BlockId)> = Vec::new();
    // Active list of (right, index); blocks are sorted by left.
    let mut active: Vec<(Coord, usize)> = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        active.retain(|(right, _)| *right >= b.left);
        for &(_, j) in &active {
            edges.push((blocks[j].id.clone(), b.id.clone()));
        }
        active.push((b.right(&alpha), i));
    }
    TwinGraph::new(nodes, edges)
}

/// The set of distinct interval lengths used by the model.
pub fn interval_count(model: &IntervalModel) -> BTreeSet<Coord> {
    model.blocks().iter().map(|b| b.len(model.alpha())).collect()
}

/// Per-block count of intervals assigned to class R.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BlockAssignment {
    r_count: BTreeMap<BlockId, u32>,
}

impl BlockAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (BlockId, u32)>) -> Self {
        BlockAssignment { r_count: pairs.into_iter().collect() }
    }

    pub fn set(&mut self, id: impl Into<BlockId>, r: u32) {
        self.r_count.insert(id.into(), r);
    }

    pub fn get(&self, id: &str) -> Option<u32> {
        self.r_count.get(id).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BlockId, u32)> {
        self.r_count.iter().map(|(k, v)| (k, *v))
    }

    pub fn len(&self) -> usize {
        self.r_count.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r_count.is_empty()
    }

    /// `y_b -> m_b - y_b` for every block of `graph`.
    pub fn complement(&self, graph: &TwinGraph) -> Result<BlockAssignment, ModelError> {
        let mut out = BlockAssignment::new();
        for (id, y) in self.iter() {
            let idx = graph
                .index_of(id)
                .ok_or_else(|| ModelError::Assignment(format!("unknown block {id:?}")))?;
            let m = graph.multiplicity(idx);
            if y > m {
                return Err(ModelError::Assignment(format!("rCount {y} > multiplicity {m} for {id:?}")));
            }
            out.set(id.clone(), m - y);
        }
        Ok(out)
    }
}

/// Exact cut value of an assignment on the twin graph:
/// within-block terms `y(m-y)` plus, per edge, `y_a(m_b-y_b) + (m_a-y_a)y_b`.
pub fn cut_value(graph: &TwinGraph, assignment: &BlockAssignment) -> Result<i64, ModelError> {
    let mut y = vec![0i64; graph.node_count()];
    let mut m = vec![0i64; graph.node_count()];
    for (i, (id, mult)) in graph.nodes().iter().enumerate() {
        let r = assignment
            .get(id)
            .ok_or_else(|| ModelError::Assignment(format!("assignment misses block {id:?}")))?;
        if r > *mult {
            return Err(ModelError::Assignment(format!(
                "rCount {r} > multiplicity {mult} for {id:?}"
            )));
        }
        y[i] = i64::from(r);
        m[i] = i64::from(*mult);
    }
    let mut total = 0i64;
    for i in 0..graph.node_count() {
        total += y[i] * (m[i] - y[i]);
    }
    for &(a, b) in graph.edges() {
        total += y[a] * (m[b] - y[b]) + (m[a] - y[a]) * y[b];
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidationMode {
    /// Full check: lengths must be exactly {1, alpha}.
    Strict,
    /// Gadget-in-isolation check: stub longs are exempt from the length-set
    /// requirement, structure and spacing still apply.
    Harness,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A length outside {1, alpha} (strict mode only).
    LengthOutsideSet { id: BlockId, length: String },
    /// A coordinate off the eighth-integer grid.
    OffGrid { id: BlockId, left: String },
    /// Node sets differ between realized and intended graphs.
    NodeMismatch { detail: String },
    /// An edge present in the realized graph but not intended.
    UnintendedEdge { a: BlockId, b: BlockId },
    /// An intended edge missing from the realized graph.
    MissingEdge { a: BlockId, b: BlockId },
    /// Two long-interval endpoints of the same type closer than 3.
    SameTypeEndsTooClose { a: BlockId, b: BlockId, distance: String },
    /// A right end faced by a left end across a gap smaller than the minimum.
    FacingGapTooSmall { a: BlockId, b: BlockId, gap: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LengthOutsideSet { id, length } => {
                write!(f, "block {id} has length {length} outside {{1, alpha}}")
            }
            Violation::OffGrid { id, left } => write!(f, "block {id} left {left} off the eighth grid"),
            Violation::NodeMismatch { detail } => write!(f, "node mismatch: {detail}"),
            Violation::UnintendedEdge { a, b } => write!(f, "unintended edge ({a}, {b})"),
            Violation::MissingEdge { a, b } => write!(f, "missing intended edge ({a}, {b})"),
            Violation::SameTypeEndsTooClose { a, b, distance } => {
                write!(f, "long ends of {a} and {b} (same type) only {distance} apart")
            }
            Violation::FacingGapTooSmall { a, b, gap } => {
                write!(f, "facing long ends of {a} and {b} leave a gap of only {gap}")
            }
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            writeln!(f, "ok")
        } else {
            for v in &self.violations {
                writeln!(f, "violation: {v}")?;
            }
            Ok(())
        }
    }
}

/// Minimum distance between two long-interval endpoints of the same type.
pub const MIN_SAME_TYPE_END_DISTANCE: (i64, i64) = (3, 1);
/// Minimum gap between a long right end and a long left end facing it from
/// the right. Facing ends that actually overlap (parallel chain traffic) are
/// unconstrained.
pub const MIN_FACING_GAP: (i64, i64) = (2, 1);

/// Checks a model against its intended twin graph.
///
/// (a) strict mode: every length is 1 or alpha and every coordinate sits on
///     the eighth grid; (b) the realized twin graph equals the intended one
///     as a labeled multigraph; (c) long-interval endpoint spacing: same-type
///     ends at least 3 apart, facing ends either overlapping or separated by
///     at least 2.
pub fn validate_model(
    model: &IntervalModel,
    intended: &TwinGraph,
    mode: ValidationMode,
) -> ValidationReport {
    let mut report = ValidationReport::default();
    let alpha = *model.alpha();

    if mode == ValidationMode::Strict {
        for b in model.blocks() {
            if !on_eighth_grid(&b.left) {
                report.violations.push(Violation::OffGrid { id: b.id.clone(), left: fmt_ratio(&b.left) });
            }
        }
        // With LengthClass the set of lengths is automatically inside
        // {1, alpha}; what can go wrong is alpha colliding with 1.
        if alpha == int(1) {
            for b in model.blocks() {
                if b.length == LengthClass::Long {
                    report.violations.push(Violation::LengthOutsideSet {
                        id: b.id.clone(),
                        length: fmt_ratio(&alpha),
                    });
                    break;
                }
            }
        }
    }

    let realized = match build_twin_graph(model) {
        Ok(g) => g,
        Err(e) => {
            report.violations.push(Violation::NodeMismatch { detail: e.to_string() });
            return report;
        }
    };
    if realized.node_set() != intended.node_set() {
        let r = realized.node_set();
        let i = intended.node_set();
        let only_r: Vec<_> = r.iter().filter(|(k, v)| i.get(*k) != Some(v)).map(|(k, _)| k.clone()).collect();
        let only_i: Vec<_> = i.iter().filter(|(k, v)| r.get(*k) != Some(v)).map(|(k, _)| k.clone()).collect();
        report.violations.push(Violation::NodeMismatch {
            detail: format!("realized-only/changed: {only_r:?}; intended-only/changed: {only_i:?}"),
        });
    }
    let re = realized.edge_id_set();
    let ie = intended.edge_id_set();
    for (a, b) in re.difference(&ie) {
        report.violations.push(Violation::UnintendedEdge { a: a.clone(), b: b.clone() });
    }
    for (a, b) in ie.difference(&re) {
        report.violations.push(Violation::MissingEdge { a: a.clone(), b: b.clone() });
    }

    report.violations.extend(long_end_spacing_violations(model, Coord::new(MIN_FACING_GAP.0, MIN_FACING_GAP.1)));
    report
}

/// Endpoint-spacing check over all long blocks, parameterized by the minimum
/// facing gap (the schedule validator tightens it).
pub fn long_end_spacing_violations(model: &IntervalModel, min_gap: Coord) -> Vec<Violation> {
    let alpha = *model.alpha();
    let min_same = Coord::new(MIN_SAME_TYPE_END_DISTANCE.0, MIN_SAME_TYPE_END_DISTANCE.1);
    let longs: Vec<&Block> = model.blocks().iter().filter(|b| b.length == LengthClass::Long).collect();
    let mut out = Vec::new();
    for (i, a) in longs.iter().enumerate() {
        for b in longs.iter().skip(i + 1) {
            let (al, ar) = (a.left, a.right(&alpha));
            let (bl, br) = (b.left, b.right(&alpha));
            let dl = if al >= bl { al - bl } else { bl - al };
            let dr = if ar >= br { ar - br } else { br - ar };
            if dl < min_same {
                out.push(Violation::SameTypeEndsTooClose {
                    a: a.id.clone(),
                    b: b.id.clone(),
                    distance: fmt_ratio(&dl),
                });
            }
            if dr < min_same {
                out.push(Violation::SameTypeEndsTooClose {
                    a: a.id.clone(),
                    b: b.id.clone(),
                    distance: fmt_ratio(&dr),
                });
            }
            // Facing pairs: a's right end vs b's left end and vice versa.
            for (r_end, l_end) in [(ar, bl), (br, al)] {
                let gap = l_end - r_end;
                if gap > Coord::zero() && gap < min_gap {
                    out.push(Violation::FacingGapTooSmall {
                        a: a.id.clone(),
                        b: b.id.clone(),
                        gap: fmt_ratio(&gap),
                    });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coord::rat;

    fn three_block_x1() -> IntervalModel {
        IntervalModel::new(
            vec![
                Block::short("B1", int(0), 1, "3b"),
                Block::short("B2", int(1), 2, "3b"),
                Block::short("B3", int(2), 1, "3b"),
            ],
            int(100),
        )
        .unwrap()
    }

    #[test]
    fn three_block_adjacency_is_a_path() {
        let g = build_twin_graph(&three_block_x1()).unwrap();
        let edges = g.edge_id_set();
        assert_eq!(edges.len(), 2);
        assert!(edges.contains(&("B1".into(), "B2".into())));
        assert!(edges.contains(&("B2".into(), "B3".into())));
    }

    #[test]
    fn disjoint_blocks_have_no_edge() {
        let m = IntervalModel::new(
            vec![Block::short("a", int(0), 1, ""), Block::short("b", int(2), 1, "")],
            int(10),
        )
        .unwrap();
        assert!(build_twin_graph(&m).unwrap().edges().is_empty());
    }

    #[test]
    fn point_touch_counts_as_edge() {
        let m = IntervalModel::new(
            vec![Block::short("a", int(0), 1, ""), Block::short("b", int(1), 1, "")],
            int(10),
        )
        .unwrap();
        assert_eq!(build_twin_graph(&m).unwrap().edges().len(), 1);
    }

    #[test]
    fn interval_count_examples() {
        let m = three_block_x1();
        assert_eq!(interval_count(&m), [int(1)].into_iter().collect());
        let empty = IntervalModel::new(vec![], int(209)).unwrap();
        assert!(interval_count(&empty).is_empty());
        let with_long = IntervalModel::new(
            vec![Block::short("s", int(0), 1, ""), Block::long("l", int(0), 1, "")],
            int(209),
        )
        .unwrap();
        assert_eq!(interval_count(&with_long), [int(1), int(209)].into_iter().collect());
    }

    #[test]
    fn cut_value_rbr_is_four_x_squared() {
        let m = three_block_x1();
        let g = build_twin_graph(&m).unwrap();
        let rbr = BlockAssignment::from_pairs([("B1".into(), 1), ("B2".into(), 0), ("B3".into(), 1)]);
        assert_eq!(cut_value(&g, &rbr).unwrap(), 4);
        let ones = BlockAssignment::from_pairs([("B1".into(), 1), ("B2".into(), 1), ("B3".into(), 1)]);
        assert_eq!(cut_value(&g, &ones).unwrap(), 3);
        let mono = BlockAssignment::from_pairs([("B1".into(), 1), ("B2".into(), 2), ("B3".into(), 1)]);
        assert_eq!(cut_value(&g, &mono).unwrap(), 0);
    }

    #[test]
    fn cut_value_is_complement_symmetric() {
        let m = three_block_x1();
        let g = build_twin_graph(&m).unwrap();
        let a = BlockAssignment::from_pairs([("B1".into(), 1), ("B2".into(), 1), ("B3".into(), 0)]);
        let c = a.complement(&g).unwrap();
        assert_eq!(cut_value(&g, &a).unwrap(), cut_value(&g, &c).unwrap());
    }

    #[test]
    fn cut_value_rejects_out_of_range() {
        let m = three_block_x1();
        let g = build_twin_graph(&m).unwrap();
        let bad = BlockAssignment::from_pairs([("B1".into(), 2), ("B2".into(), 0), ("B3".into(), 0)]);
        assert!(cut_value(&g, &bad).is_err());
    }

    #[test]
    fn twin_graph_is_translation_invariant() {
        let m = three_block_x1();
        let g0 = build_twin_graph(&m).unwrap();
        let g1 = build_twin_graph(&m.translate(rat(17, 2))).unwrap();
        assert!(g0.same_labeled_graph(&g1));
    }

    #[test]
    fn validate_flags_unintended_edge() {
        // B3 shifted left so it overlaps B1.
        let shifted = IntervalModel::new(
            vec![
                Block::short("B1", int(0), 1, ""),
                Block::short("B2", int(1), 2, ""),
                Block::short("B3", rat(1, 2), 1, ""),
            ],
            int(100),
        )
        .unwrap();
        let intended = build_twin_graph(&three_block_x1()).unwrap();
        let report = validate_model(&shifted, &intended, ValidationMode::Strict);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::UnintendedEdge { a, b } if a == "B1" && b == "B3")));
    }

    #[test]
    fn serialization_round_trips() {
        let m = IntervalModel::new(
            vec![
                Block::short("B1", int(0), 1, "role B1 of 3-block #4"),
                Block::long("L", rat(-7, 2), 1, ""),
                Block::short("B2", rat(45, 8), 3, "x"),
            ],
            int(209),
        )
        .unwrap();
        let text = m.to_text();
        let back = IntervalModel::from_text(&text).unwrap();
        assert_eq!(m, back);
        assert_eq!(text, back.to_text());
    }

    #[test]
    fn spacing_flags_close_same_type_ends() {
        let m = IntervalModel::new(
            vec![Block::long("a", int(0), 1, ""), Block::long("b", int(1), 1, "")],
            int(50),
        )
        .unwrap();
        let v = long_end_spacing_violations(&m, rat(2, 1));
        assert!(v.iter().any(|x| matches!(x, Violation::SameTypeEndsTooClose { .. })));
    }
}
