//! Gadget builders.
//!
//! Every builder returns a placed [`GadgetInstance`]: the model fragment, the
//! intended twin graph (frozen explicitly, so a geometry bug shows up as a
//! mismatch), the typed long-interval ports, and the block rows used by the
//! partition classifier.
//!
//! Layout conventions on the integer grid: a 3-block occupies `[p, p+3]`,
//! link intervals occupy `[p+3, p+4]`, so chained 3-blocks sit at pitch 4.
//! The switch gadget's top row uses eighth-integer offsets.

mod compress;
pub(crate) mod layout;

pub use compress::{compress_placement, CompressCase, CompressError, CompressPlacement};

use crate::coord::{fmt_ratio, int, rat, Coord};
use crate::model::{
    build_twin_graph, Block, BlockId, IntervalModel, ModelError, TwinGraph, ValidationMode,
    ValidationReport,
};
use num_traits::Zero;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GadgetError {
    #[error("gadget size parameter must be positive")]
    ZeroSize,
    #[error("switch parameters must satisfy x/2 < x' < x, got x={x}, x'={x_prime}")]
    BadSwitchParams { x: u32, x_prime: u32 },
    #[error("stretch gadget supports 1..=10 3-blocks, got {0}")]
    BadStretchLength(usize),
    #[error("port index {index} outside 1..={len}")]
    PortIndexOutOfRange { index: usize, len: usize },
    #[error("port offset {offset} invalid for {kind:?} (arrivals sit in B1, leaves in B3)")]
    BadPortOffset { kind: PortKind, offset: String },
    #[error("ports too close: {a} and {b} are {distance} apart (same-type minimum 3, facing minimum 2)")]
    PortSpacing { a: String, b: String, distance: String },
    #[error("model error: {0}")]
    Model(#[from] ModelError),
}

/// Block-size parameters shared by the builders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GadgetParams {
    /// Vertex/link/stretch/switch bottom block size.
    pub x: u32,
    /// Switch top-row half-size; a switch needs `x/2 < x_prime < x`.
    pub x_prime: u32,
    /// Edge-gadget block size.
    pub k: u32,
}

impl GadgetParams {
    pub fn new(x: u32, x_prime: u32, k: u32) -> Result<Self, GadgetError> {
        if x == 0 || x_prime == 0 || k == 0 {
            return Err(GadgetError::ZeroSize);
        }
        if !(2 * x_prime > x && x_prime < x) {
            return Err(GadgetError::BadSwitchParams { x, x_prime });
        }
        Ok(GadgetParams { x, x_prime, k })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PortKind {
    /// The long interval's right end lands here.
    ArriveIn,
    /// The long interval's left end starts here.
    LeaveFrom,
}

impl fmt::Display for PortKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PortKind::ArriveIn => write!(f, "arrive"),
            PortKind::LeaveFrom => write!(f, "leave"),
        }
    }
}

/// Color contract of a port relative to the incoming chain color.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpectedColor {
    SameAsChain,
    Inverted,
}

impl fmt::Display for ExpectedColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpectedColor::SameAsChain => write!(f, "same"),
            ExpectedColor::Inverted => write!(f, "inverted"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Port {
    /// Stable label inside the gadget ("L1", "out2", ...).
    pub label: String,
    pub kind: PortKind,
    /// Nominal endpoint; the concrete long end may sit elsewhere inside the
    /// port block when a chain needs it.
    pub anchor: Coord,
    pub block: BlockId,
    pub expected_color: ExpectedColor,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GadgetKind {
    ThreeBlock,
    Vertex,
    Edge,
    Link,
    Stretch(usize),
    Switch,
    Inverter,
}

impl fmt::Display for GadgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GadgetKind::ThreeBlock => write!(f, "3block"),
            GadgetKind::Vertex => write!(f, "vertex"),
            GadgetKind::Edge => write!(f, "edge"),
            GadgetKind::Link => write!(f, "link"),
            GadgetKind::Stretch(m) => write!(f, "stretch{m}"),
            GadgetKind::Switch => write!(f, "switch"),
            GadgetKind::Inverter => write!(f, "inverter"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GadgetInstance {
    pub kind: GadgetKind,
    /// Model fragment; its alpha is a placeholder sized for harness stubs.
    pub model: IntervalModel,
    /// Frozen intended adjacency over the fragment blocks.
    pub intended: TwinGraph,
    pub ports: Vec<Port>,
    /// Left-to-right block sequences for alternation classification; the
    /// switch gadget has two rows, everything else one.
    pub rows: Vec<Vec<BlockId>>,
    pub footprint: (Coord, Coord),
}

impl GadgetInstance {
    pub fn width(&self) -> Coord {
        self.footprint.1 - self.footprint.0
    }

    pub fn port(&self, label: &str) -> Option<&Port> {
        self.ports.iter().find(|p| p.label == label)
    }

    /// Renames every block id (and the port references) with a prefix, so
    /// instances can be merged into one model.
    pub fn prefixed(mut self, prefix: &str) -> Self {
        let rename = |id: &BlockId| -> BlockId { format!("{prefix}.{id}") };
        let blocks: Vec<Block> = self
            .model
            .blocks()
            .iter()
            .map(|b| Block { id: rename(&b.id), ..b.clone() })
            .collect();
        let alpha = *self.model.alpha();
        self.model = IntervalModel::new(blocks, alpha).expect("renaming preserves validity");
        let nodes = self.intended.nodes().iter().map(|(id, m)| (rename(id), *m)).collect();
        let edges = self
            .intended
            .edge_id_set()
            .into_iter()
            .map(|(a, b)| (rename(&a), rename(&b)))
            .collect();
        self.intended = TwinGraph::new(nodes, edges).expect("renaming preserves validity");
        for p in &mut self.ports {
            p.block = rename(&p.block);
        }
        for row in &mut self.rows {
            for id in row.iter_mut() {
                *id = rename(id);
            }
        }
        self
    }

    /// Serializes the port table sidecar: `portKind blockId anchor expectedColor`.
    pub fn ports_to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.ports {
            out.push_str(&format!(
                "{} {} {} {}\n",
                p.kind,
                p.block,
                fmt_ratio(&p.anchor),
                p.expected_color
            ));
        }
        out
    }

    pub fn ports_from_text(text: &str) -> Result<Vec<Port>, ModelError> {
        let mut out = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = l.split(' ').collect();
            if parts.len() != 4 {
                return Err(ModelError::Parse { line, msg: format!("expected 4 fields, got {}", parts.len()) });
            }
            let kind = match parts[0] {
                "arrive" => PortKind::ArriveIn,
                "leave" => PortKind::LeaveFrom,
                other => return Err(ModelError::Parse { line, msg: format!("bad port kind {other:?}") }),
            };
            let anchor = crate::coord::parse_ratio(parts[2]).map_err(|msg| ModelError::Parse { line, msg })?;
            let expected_color = match parts[3] {
                "same" => ExpectedColor::SameAsChain,
                "inverted" => ExpectedColor::Inverted,
                other => return Err(ModelError::Parse { line, msg: format!("bad color {other:?}") }),
            };
            out.push(Port {
                label: format!("p{}", out.len() + 1),
                kind,
                anchor,
                block: parts[1].to_string(),
                expected_color,
            });
        }
        Ok(out)
    }

    /// The fragment plus one stub long interval per port, with the stub
    /// adjacency added to the intended graph. This is the object the lemma
    /// statements are about.
    pub fn with_stub_longs(&self) -> StubbedGadget {
        let width = self.width();
        let stub_len = width + int(8);
        let blocks: Vec<Block> = self.model.blocks().to_vec();
        let mut all = blocks.clone();
        let mut stub_ids = Vec::new();
        let mut edges = self.intended.edge_id_set().into_iter().collect::<Vec<_>>();
        let mut spans: Vec<(BlockId, Coord, Coord)> = Vec::new();
        for p in &self.ports {
            let id = format!("stub.{}", p.label);
            let attach = port_attach_point(&self.model, p).expect("builder ports resolve");
            let (lo, hi) = match p.kind {
                PortKind::ArriveIn => (attach - stub_len, attach),
                PortKind::LeaveFrom => (attach, attach + stub_len),
            };
            all.push(Block::long(id.clone(), lo, 1, format!("stub for port {}", p.label)));
            // Port semantics give the stub-to-fragment adjacency directly:
            // an arriving stub meets every block starting at or before its
            // endpoint, a leaving stub every block ending at or after it.
            for b in &blocks {
                let hit = match p.kind {
                    PortKind::ArriveIn => b.left <= attach,
                    PortKind::LeaveFrom => b.right(self.model.alpha()) >= attach,
                };
                if hit {
                    edges.push((id.clone(), b.id.clone()));
                }
            }
            for (other, olo, ohi) in &spans {
                if lo <= *ohi && *olo <= hi {
                    edges.push((id.clone(), other.clone()));
                }
            }
            spans.push((id.clone(), lo, hi));
            stub_ids.push((p.label.clone(), id));
        }
        let model = IntervalModel::new(all, stub_len).expect("stubbed fragment is valid");
        let mut nodes: Vec<(BlockId, u32)> = self.intended.nodes().to_vec();
        nodes.extend(model.blocks().iter().filter(|b| b.id.starts_with("stub.")).map(|b| (b.id.clone(), 1)));
        let intended = TwinGraph::new(nodes, edges).expect("stub graph is valid");
        StubbedGadget { model, intended, stub_ids }
    }

    /// Validates the fragment (with stubs attached) against its own intended
    /// graph.
    pub fn validate_in_isolation(&self) -> ValidationReport {
        let stubbed = self.with_stub_longs();
        crate::model::validate_model(&stubbed.model, &stubbed.intended, ValidationMode::Harness)
    }
}

pub struct StubbedGadget {
    pub model: IntervalModel,
    pub intended: TwinGraph,
    /// `(port label, stub block id)` pairs in port order.
    pub stub_ids: Vec<(String, BlockId)>,
}

impl StubbedGadget {
    pub fn stub_id(&self, label: &str) -> &BlockId {
        &self.stub_ids.iter().find(|(l, _)| l == label).expect("known port label").1
    }
}

/// Placeholder alpha for fragments that never see a real long interval.
fn fragment_alpha(width: Coord) -> Coord {
    width + int(8)
}

fn three_block_blocks(prefix: &str, anchor: Coord, size: u32, tag: &str) -> Vec<Block> {
    vec![
        Block::short(format!("{prefix}b1"), anchor, size, format!("{tag} B1")),
        Block::short(format!("{prefix}b2"), anchor + int(1), 2 * size, format!("{tag} B2")),
        Block::short(format!("{prefix}b3"), anchor + int(2), size, format!("{tag} B3")),
    ]
}

fn path_edges(ids: &[BlockId]) -> Vec<(BlockId, BlockId)> {
    ids.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect()
}

/// A bare 3-block: multiplicities `(size, 2*size, size)` on `[a, a+3]`.
pub fn make_three_block(anchor: Coord, size: u32) -> Result<GadgetInstance, GadgetError> {
    if size == 0 {
        return Err(GadgetError::ZeroSize);
    }
    let blocks = three_block_blocks("", anchor, size, "3-block");
    let ids: Vec<BlockId> = blocks.iter().map(|b| b.id.clone()).collect();
    let nodes = blocks.iter().map(|b| (b.id.clone(), b.multiplicity)).collect();
    let intended = TwinGraph::new(nodes, path_edges(&ids))?;
    let width = int(3);
    Ok(GadgetInstance {
        kind: GadgetKind::ThreeBlock,
        model: IntervalModel::new(blocks, fragment_alpha(width))?,
        intended,
        ports: vec![],
        rows: vec![ids],
        footprint: (anchor, anchor + width),
    })
}

/// Chain of `m` 3-blocks at pitch 4, connected by multiplicity-1 link
/// intervals, with ports given as `(kind, 3-block index, offset)` triples.
/// Arrivals must land in a B1 (offset in `[0, 1)`), leaves in a B3
/// (offset in `(2, 3]`).
pub fn make_stretch_gadget(
    anchor: Coord,
    m: usize,
    x: u32,
    port_spec: &[(PortKind, usize, Coord)],
) -> Result<GadgetInstance, GadgetError> {
    if x == 0 {
        return Err(GadgetError::ZeroSize);
    }
    if !(1..=10).contains(&m) {
        return Err(GadgetError::BadStretchLength(m));
    }
    let mut blocks = Vec::new();
    let mut row = Vec::new();
    for i in 1..=m {
        let start = anchor + int(4 * (i as i64 - 1));
        let tb = three_block_blocks(&format!("t{i}."), start, x, &format!("3-block #{i}"));
        row.extend(tb.iter().map(|b| b.id.clone()));
        blocks.extend(tb);
        if i < m {
            let id = format!("l{}{}", i, i + 1);
            blocks.push(Block::short(id.clone(), start + int(3), 1, format!("link {i}-{}", i + 1)));
            row.push(id);
        }
    }
    let mut edges = Vec::new();
    for i in 1..=m {
        edges.push((format!("t{i}.b1"), format!("t{i}.b2")));
        edges.push((format!("t{i}.b2"), format!("t{i}.b3")));
        if i < m {
            edges.push((format!("t{i}.b3"), format!("l{}{}", i, i + 1)));
            edges.push((format!("l{}{}", i, i + 1), format!("t{}.b1", i + 1)));
        }
    }
    let mut ports = Vec::new();
    let mut counters = (0usize, 0usize);
    for &(kind, index, offset) in port_spec {
        if !(1..=m).contains(&index) {
            return Err(GadgetError::PortIndexOutOfRange { index, len: m });
        }
        let start = anchor + int(4 * (index as i64 - 1));
        let (block, label) = match kind {
            PortKind::ArriveIn => {
                if offset < Coord::zero() || offset >= int(1) {
                    return Err(GadgetError::BadPortOffset { kind, offset: fmt_ratio(&offset) });
                }
                counters.0 += 1;
                (format!("t{index}.b1"), format!("in{}", counters.0))
            }
            PortKind::LeaveFrom => {
                if offset <= int(2) || offset > int(3) {
                    return Err(GadgetError::BadPortOffset { kind, offset: fmt_ratio(&offset) });
                }
                counters.1 += 1;
                (format!("t{index}.b3"), format!("out{}", counters.1))
            }
        };
        ports.push(Port {
            label,
            kind,
            anchor: start + offset,
            block,
            expected_color: ExpectedColor::SameAsChain,
        });
    }
    check_port_spacing(&ports)?;
    let width = int(4 * m as i64 - 1);
    let nodes = blocks.iter().map(|b| (b.id.clone(), b.multiplicity)).collect();
    Ok(GadgetInstance {
        kind: if m == 3 && is_default_link_ports(port_spec) { GadgetKind::Link } else { GadgetKind::Stretch(m) },
        model: IntervalModel::new(blocks, fragment_alpha(width))?,
        intended: TwinGraph::new(nodes, edges)?,
        ports,
        rows: vec![row],
        footprint: (anchor, anchor + width),
    })
}

fn is_default_link_ports(spec: &[(PortKind, usize, Coord)]) -> bool {
    spec == default_link_ports()
}

fn default_link_ports() -> [(PortKind, usize, Coord); 6] {
    [
        (PortKind::ArriveIn, 1, int(0)),
        (PortKind::ArriveIn, 2, int(0)),
        (PortKind::ArriveIn, 3, int(0)),
        (PortKind::LeaveFrom, 1, int(3)),
        (PortKind::LeaveFrom, 2, int(3)),
        (PortKind::LeaveFrom, 3, int(3)),
    ]
}

/// Spacing inside one gadget: ends of the same type at least 3 apart; a
/// facing (arrive, leave) pair either overlapping traffic or at least 2
/// apart.
fn check_port_spacing(ports: &[Port]) -> Result<(), GadgetError> {
    for (i, a) in ports.iter().enumerate() {
        for b in ports.iter().skip(i + 1) {
            let d = if a.anchor >= b.anchor { a.anchor - b.anchor } else { b.anchor - a.anchor };
            let violation = if a.kind == b.kind {
                d < int(3)
            } else {
                let (arr, lv) = if a.kind == PortKind::ArriveIn { (a, b) } else { (b, a) };
                let gap = lv.anchor - arr.anchor;
                gap > Coord::zero() && gap < int(2)
            };
            if violation {
                return Err(GadgetError::PortSpacing {
                    a: a.label.clone(),
                    b: b.label.clone(),
                    distance: fmt_ratio(&d),
                });
            }
        }
    }
    Ok(())
}

/// The link gadget: a 3-stretch with three chains passing straight through.
pub fn make_link_gadget(anchor: Coord, x: u32) -> Result<GadgetInstance, GadgetError> {
    make_stretch_gadget(anchor, 3, x, &default_link_ports())
}

/// The vertex gadget: three 3-blocks, two links, and one leaving long per
/// incident edge of the represented cubic-graph vertex.
pub fn make_vertex_gadget(anchor: Coord, x: u32) -> Result<GadgetInstance, GadgetError> {
    let mut g = make_stretch_gadget(anchor, 3, x, &[])?;
    g.kind = GadgetKind::Vertex;
    for i in 1..=3u32 {
        g.ports.push(Port {
            label: format!("out{i}"),
            kind: PortKind::LeaveFrom,
            anchor: anchor + int(4 * i64::from(i) - 1),
            block: format!("t{i}.b3"),
            expected_color: ExpectedColor::SameAsChain,
        });
    }
    check_port_spacing(&g.ports)?;
    Ok(g)
}

/// The edge gadget: two 3-blocks of size `k` joined by a link, with two
/// arriving longs (left port in B1 of the first 3-block, right port in the
/// central block of the second).
pub fn make_edge_gadget(anchor: Coord, k: u32) -> Result<GadgetInstance, GadgetError> {
    if k == 0 {
        return Err(GadgetError::ZeroSize);
    }
    let mut blocks = three_block_blocks("t1.", anchor, k, "edge 3-block #1");
    blocks.push(Block::short("l12", anchor + int(3), 1, "edge link"));
    blocks.extend(three_block_blocks("t2.", anchor + int(4), k, "edge 3-block #2"));
    let row: Vec<BlockId> = blocks.iter().map(|b| b.id.clone()).collect();
    let edges = vec![
        ("t1.b1".to_string(), "t1.b2".to_string()),
        ("t1.b2".to_string(), "t1.b3".to_string()),
        ("t1.b3".to_string(), "l12".to_string()),
        ("l12".to_string(), "t2.b1".to_string()),
        ("t2.b1".to_string(), "t2.b2".to_string()),
        ("t2.b2".to_string(), "t2.b3".to_string()),
    ];
    let ports = vec![
        Port {
            label: "in1".into(),
            kind: PortKind::ArriveIn,
            anchor,
            block: "t1.b1".into(),
            expected_color: ExpectedColor::SameAsChain,
        },
        Port {
            label: "in2".into(),
            kind: PortKind::ArriveIn,
            anchor: anchor + int(5),
            block: "t2.b2".into(),
            expected_color: ExpectedColor::SameAsChain,
        },
    ];
    check_port_spacing(&ports)?;
    let nodes = blocks.iter().map(|b| (b.id.clone(), b.multiplicity)).collect();
    let width = int(7);
    Ok(GadgetInstance {
        kind: GadgetKind::Edge,
        model: IntervalModel::new(blocks, fragment_alpha(width))?,
        intended: TwinGraph::new(nodes, edges)?,
        ports,
        rows: vec![row],
        footprint: (anchor, anchor + width),
    })
}

/// Bottom-row span pairs `(i, j)` with `top_i` meeting `bot_j`; the signed
/// sum over this set with parity `(-1)^{i+j+1}` reproduces the cross-row
/// term `2(y1-y2)(z4-z5) - 2(y3-y4)(z5-z6)` of the switch-gadget algebra.
pub const SWITCH_OVERLAP_SET: [(usize, usize); 8] =
    [(1, 4), (1, 5), (2, 4), (2, 5), (3, 5), (3, 6), (4, 5), (4, 6)];

/// Top-row offsets relative to the switch anchor (eighth-integer grid).
pub fn switch_top_offsets() -> [Coord; 4] {
    [rat(13, 4), rat(15, 4), rat(9, 2), rat(39, 8)]
}

/// The switch gadget: 9 bottom blocks on the unit grid with multiplicities
/// `(x, 2x, ..., 2x, x)` and 4 top blocks of multiplicity `2x'` forming a
/// path that straddles bottoms 4-6. Incoming `L1` (bottom) and `R1` (top)
/// exit as `R2` (bottom, same color as `L1`) and `L2` (top, inverted
/// relative to `R1`).
pub fn make_switch_gadget(anchor: Coord, x: u32, x_prime: u32) -> Result<GadgetInstance, GadgetError> {
    if x == 0 || x_prime == 0 {
        return Err(GadgetError::ZeroSize);
    }
    if !(2 * x_prime > x && x_prime < x) {
        return Err(GadgetError::BadSwitchParams { x, x_prime });
    }
    let mut blocks = Vec::new();
    let mut bottom_row = Vec::new();
    for j in 1..=9usize {
        let mult = if j == 1 || j == 9 { x } else { 2 * x };
        let id = format!("bot{j}");
        blocks.push(Block::short(id.clone(), anchor + int(j as i64 - 1), mult, format!("switch bottom #{j}")));
        bottom_row.push(id);
    }
    let mut top_row = Vec::new();
    for (i, off) in switch_top_offsets().iter().enumerate() {
        let id = format!("top{}", i + 1);
        blocks.push(Block::short(id.clone(), anchor + *off, 2 * x_prime, format!("switch top #{}", i + 1)));
        top_row.push(id);
    }
    let mut edges = path_edges(&bottom_row);
    edges.extend(path_edges(&top_row));
    for (i, j) in SWITCH_OVERLAP_SET {
        edges.push((format!("top{i}"), format!("bot{j}")));
    }
    let ports = vec![
        Port {
            label: "L1".into(),
            kind: PortKind::ArriveIn,
            anchor,
            block: "bot1".into(),
            expected_color: ExpectedColor::SameAsChain,
        },
        Port {
            label: "R1".into(),
            kind: PortKind::ArriveIn,
            anchor: anchor + rat(7, 2),
            block: "top1".into(),
            expected_color: ExpectedColor::SameAsChain,
        },
        Port {
            label: "L2".into(),
            kind: PortKind::LeaveFrom,
            anchor: anchor + rat(11, 2),
            block: "top4".into(),
            expected_color: ExpectedColor::Inverted,
        },
        Port {
            label: "R2".into(),
            kind: PortKind::LeaveFrom,
            anchor: anchor + int(9),
            block: "bot9".into(),
            expected_color: ExpectedColor::SameAsChain,
        },
    ];
    check_port_spacing(&ports)?;
    let nodes = blocks.iter().map(|b| (b.id.clone(), b.multiplicity)).collect();
    let width = int(9);
    Ok(GadgetInstance {
        kind: GadgetKind::Switch,
        model: IntervalModel::new(blocks, fragment_alpha(width))?,
        intended: TwinGraph::new(nodes, edges)?,
        ports: ports,
        rows: vec![bottom_row, top_row],
        footprint: (anchor, anchor + width),
    })
}

/// The inverter ("addition" of a switch): a single 3-block whose outgoing
/// long leaves from the right edge of the central block, flipping the color
/// contract. A long leaving from an outer block would keep the chain color
/// under the alternating optimum, so the central-block exit is what makes
/// this gadget invert.
pub fn make_inverter(anchor: Coord, x: u32) -> Result<GadgetInstance, GadgetError> {
    if x == 0 {
        return Err(GadgetError::ZeroSize);
    }
    let mut g = make_three_block(anchor, x)?;
    g.kind = GadgetKind::Inverter;
    g.ports = vec![
        Port {
            label: "in".into(),
            kind: PortKind::ArriveIn,
            anchor,
            block: "b1".into(),
            expected_color: ExpectedColor::SameAsChain,
        },
        Port {
            label: "out".into(),
            kind: PortKind::LeaveFrom,
            anchor: anchor + int(2),
            block: "b2".into(),
            expected_color: ExpectedColor::Inverted,
        },
    ];
    check_port_spacing(&g.ports)?;
    Ok(g)
}

/// Leftmost block containing the point: where a long with this left end
/// leaves from.
pub fn leave_block_at(model: &IntervalModel, point: Coord) -> Option<BlockId> {
    model
        .blocks()
        .iter()
        .filter(|b| b.length == crate::model::LengthClass::Short)
        .filter(|b| b.left <= point && b.right(model.alpha()) >= point)
        .min_by(|a, b| a.left.cmp(&b.left).then_with(|| a.id.cmp(&b.id)))
        .map(|b| b.id.clone())
}

/// Rightmost block containing the point: where a long with this right end
/// arrives in.
pub fn arrive_block_at(model: &IntervalModel, point: Coord) -> Option<BlockId> {
    model
        .blocks()
        .iter()
        .filter(|b| b.length == crate::model::LengthClass::Short)
        .filter(|b| b.left <= point && b.right(model.alpha()) >= point)
        .max_by(|a, b| a.left.cmp(&b.left).then_with(|| a.id.cmp(&b.id)))
        .map(|b| b.id.clone())
}

/// The concrete endpoint for a long interval using a port. Anchors are
/// nominal: when the anchor coincides with a neighboring block's edge (the
/// switch's L2 anchor sits on top3's right end), the endpoint slides by
/// eighths into the port block so the arrive/leave rules resolve to the
/// declared block.
pub fn port_attach_point(model: &IntervalModel, port: &Port) -> Result<Coord, String> {
    let step = rat(1, 8);
    let mut p = port.anchor;
    for _ in 0..=8 {
        let resolved = match port.kind {
            PortKind::ArriveIn => arrive_block_at(model, p),
            PortKind::LeaveFrom => leave_block_at(model, p),
        };
        if resolved.as_deref() == Some(port.block.as_str()) {
            return Ok(p);
        }
        match port.kind {
            PortKind::ArriveIn => p -= step,
            PortKind::LeaveFrom => p += step,
        }
    }
    Err(format!(
        "no attach point near {} resolves to {:?} for port {}",
        fmt_ratio(&port.anchor),
        port.block,
        port.label
    ))
}

/// Sanity check used by tests and the schedule validator: each port must
/// admit an attach point inside its declared block.
pub fn ports_resolve(instance: &GadgetInstance) -> Result<(), String> {
    for p in &instance.ports {
        port_attach_point(&instance.model, p)?;
    }
    Ok(())
}

/// Expanded interval count of a gadget fragment (excluding stubs).
pub fn interval_count_of(instance: &GadgetInstance) -> u64 {
    instance.model.interval_total()
}

/// Collects the fragment ids (handy for induced-subgraph accounting in the
/// suites).
pub fn fragment_ids(instance: &GadgetInstance) -> BTreeSet<BlockId> {
    instance.model.blocks().iter().map(|b| b.id.clone()).collect()
}

/// Builds the twin graph of a stubbed gadget and checks it in one step;
/// used all over the tests.
pub fn realized_graph(stubbed: &StubbedGadget) -> TwinGraph {
    build_twin_graph(&stubbed.model).expect("stubbed model is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coord::{int, rat};

    #[test]
    fn three_block_counts_and_footprint() {
        let g = make_three_block(int(0), 1).unwrap();
        assert_eq!(interval_count_of(&g), 4);
        assert_eq!(g.width(), int(3));
        let g = make_three_block(int(4), 3).unwrap();
        assert_eq!(g.footprint, (int(4), int(7)));
        let mults: Vec<u32> = g.intended.nodes().iter().map(|(_, m)| *m).collect();
        assert_eq!(mults, vec![3, 6, 3]);
        assert!(make_three_block(int(0), 0).is_err());
    }

    #[test]
    fn three_block_validates_in_isolation() {
        let g = make_three_block(int(0), 2).unwrap();
        let report = g.validate_in_isolation();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn vertex_gadget_shape() {
        let g = make_vertex_gadget(int(0), 1).unwrap();
        assert_eq!(interval_count_of(&g), 14);
        assert_eq!(g.width(), int(11));
        let anchors: Vec<Coord> = g.ports.iter().map(|p| p.anchor).collect();
        assert_eq!(anchors, vec![int(3), int(7), int(11)]);
        let g2 = make_vertex_gadget(int(0), 2).unwrap();
        assert_eq!(interval_count_of(&g2), 26);
        assert!(g.validate_in_isolation().passed());
        ports_resolve(&g).unwrap();
    }

    #[test]
    fn vertex_link_adjacency_is_frozen() {
        let g = make_vertex_gadget(int(0), 1).unwrap();
        let edges = g.intended.edge_id_set();
        let l12: Vec<_> = edges.iter().filter(|(a, b)| a == "l12" || b == "l12").collect();
        assert_eq!(l12.len(), 2); // exactly t1.b3 and t2.b1
    }

    #[test]
    fn edge_gadget_shape() {
        let g = make_edge_gadget(int(0), 1).unwrap();
        assert_eq!(interval_count_of(&g), 9);
        assert_eq!(g.width(), int(7));
        let g = make_edge_gadget(int(10), 2).unwrap();
        assert_eq!(g.footprint, (int(10), int(17)));
        let p1 = g.port("in1").unwrap();
        let p2 = g.port("in2").unwrap();
        assert_eq!(g.model.block(&p1.block).unwrap().multiplicity, 2);
        assert_eq!(g.model.block(&p2.block).unwrap().multiplicity, 4);
        assert!(g.validate_in_isolation().passed());
        ports_resolve(&g).unwrap();
    }

    #[test]
    fn link_gadget_shape() {
        let g = make_link_gadget(int(0), 1).unwrap();
        assert_eq!(interval_count_of(&g), 14);
        let ins: Vec<Coord> =
            g.ports.iter().filter(|p| p.kind == PortKind::ArriveIn).map(|p| p.anchor).collect();
        let outs: Vec<Coord> =
            g.ports.iter().filter(|p| p.kind == PortKind::LeaveFrom).map(|p| p.anchor).collect();
        assert_eq!(ins, vec![int(0), int(4), int(8)]);
        assert_eq!(outs, vec![int(3), int(7), int(11)]);
        assert!(g.validate_in_isolation().passed());
    }

    #[test]
    fn stretch_footprints() {
        let g = make_stretch_gadget(int(0), 10, 1, &[]).unwrap();
        assert_eq!(g.width(), int(39));
        let link = make_link_gadget(int(0), 2).unwrap();
        let stretch = make_stretch_gadget(int(0), 3, 2, &default_link_ports()).unwrap();
        assert_eq!(link.footprint, stretch.footprint);
        assert_eq!(interval_count_of(&link), interval_count_of(&stretch));
    }

    #[test]
    fn stretch_rejects_close_ports() {
        let spec = [(PortKind::LeaveFrom, 1, int(3)), (PortKind::LeaveFrom, 2, int(3))];
        // leaves at 3 and 7 are fine
        assert!(make_stretch_gadget(int(0), 3, 1, &spec).is_ok());
        // two leaves 2 apart violate the same-type rule: offsets 3 and 4-3=1
        // on consecutive blocks is representable only via offsets in range,
        // so emulate with indexes 1 and 2 and offsets 3 and 2.25 -> anchors 3, 6.25 ok;
        // instead use same block twice at distance 0.
        let spec = [(PortKind::LeaveFrom, 1, int(3)), (PortKind::LeaveFrom, 1, rat(23, 8))];
        assert!(matches!(
            make_stretch_gadget(int(0), 3, 1, &spec),
            Err(GadgetError::PortSpacing { .. })
        ));
    }

    #[test]
    fn switch_shape_and_ports() {
        let g = make_switch_gadget(int(0), 3, 2).unwrap();
        assert_eq!(interval_count_of(&g), 64);
        assert_eq!(g.width(), int(9));
        let anchors: Vec<Coord> = g.ports.iter().map(|p| p.anchor).collect();
        assert_eq!(anchors, vec![int(0), rat(7, 2), rat(11, 2), int(9)]);
        assert!(g.validate_in_isolation().passed(), "{}", g.validate_in_isolation());
        assert!(make_switch_gadget(int(0), 2, 2).is_err());
        assert!(make_switch_gadget(int(0), 2, 1).is_err());
    }

    #[test]
    fn switch_top_row_is_a_path_overlapping_per_set() {
        let g = make_switch_gadget(int(0), 3, 2).unwrap();
        let realized = build_twin_graph(&g.model).unwrap();
        assert!(realized.same_labeled_graph(&g.intended));
        // non-consecutive tops must be disjoint
        let edges = realized.edge_id_set();
        assert!(!edges.contains(&("top1".into(), "top3".into())));
        assert!(!edges.contains(&("top2".into(), "top4".into())));
        assert!(!edges.contains(&("top1".into(), "top4".into())));
    }

    #[test]
    fn switch_arrive_points_resolve_to_top_blocks() {
        let g = make_switch_gadget(int(0), 3, 2).unwrap();
        // 3.5 is inside bot4 as well, but top1 starts later and wins the
        // rightmost rule.
        assert_eq!(arrive_block_at(&g.model, rat(7, 2)).unwrap(), "top1");
        // 5.5 is the right edge of top3, so a long leaving exactly there
        // would leave from top3, not top4; the concrete exits sit strictly
        // inside top4.
        assert_eq!(leave_block_at(&g.model, rat(11, 2)).unwrap(), "top3");
        assert_eq!(leave_block_at(&g.model, rat(45, 8)).unwrap(), "top4");
    }

    #[test]
    fn inverter_shape() {
        let g = make_inverter(rat(5, 2), 1).unwrap();
        assert_eq!(interval_count_of(&g), 4);
        let anchors: Vec<Coord> = g.ports.iter().map(|p| p.anchor).collect();
        assert_eq!(anchors, vec![rat(5, 2), rat(9, 2)]);
        assert_eq!(g.port("out").unwrap().block, "b2");
        assert!(g.validate_in_isolation().passed());
        ports_resolve(&g).unwrap();
    }

    #[test]
    fn inverter_chain_composes_to_identity() {
        let a = make_inverter(int(0), 1).unwrap();
        let b = make_inverter(int(10), 1).unwrap();
        let flip = |c: ExpectedColor, port: &Port| match (c, port.expected_color) {
            (ExpectedColor::SameAsChain, ExpectedColor::SameAsChain) => ExpectedColor::SameAsChain,
            (ExpectedColor::SameAsChain, ExpectedColor::Inverted) => ExpectedColor::Inverted,
            (ExpectedColor::Inverted, ExpectedColor::SameAsChain) => ExpectedColor::Inverted,
            (ExpectedColor::Inverted, ExpectedColor::Inverted) => ExpectedColor::SameAsChain,
        };
        let after_a = flip(ExpectedColor::SameAsChain, a.port("out").unwrap());
        let after_b = flip(after_a, b.port("out").unwrap());
        assert_eq!(after_b, ExpectedColor::SameAsChain);
    }

    #[test]
    fn prefixing_keeps_structure() {
        let g = make_vertex_gadget(int(0), 1).unwrap().prefixed("z0.v");
        assert!(g.model.block("z0.v.t1.b1").is_some());
        assert_eq!(g.port("out1").unwrap().block, "z0.v.t1.b3");
        assert!(g.validate_in_isolation().passed());
    }

    #[test]
    fn port_sidecar_round_trip() {
        let g = make_switch_gadget(int(0), 3, 2).unwrap();
        let text = g.ports_to_text();
        let back = GadgetInstance::ports_from_text(&text).unwrap();
        assert_eq!(back.len(), 4);
        assert_eq!(back[1].anchor, rat(7, 2));
        assert_eq!(back[2].expected_color, ExpectedColor::Inverted);
    }
}
