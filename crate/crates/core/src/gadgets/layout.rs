//! Event-driven layout of stretch gadgets.
//!
//! The reduction needs stretches whose ports sit at prescribed coordinates
//! (often fractional), which forces compressed 3-blocks. A compressed
//! 3-block of width `w` in `(2, 3]` is laid out as
//!
//! ```text
//!   B1 = [s, s+1]   B2 = [s+w-2, s+w-1]   B3 = [s+w-1, s+w]
//! ```
//!
//! so `w = 3` degenerates to the canonical unit grid. Consecutive 3-blocks
//! are separated by a gap in `(0, 1]` and joined by a unit link interval
//! placed so it touches exactly the B3 on its left and the B1 on its right.
//!
//! All arithmetic runs in eighths of a unit, which keeps every produced
//! coordinate on the eighth grid.

use super::{ExpectedColor, GadgetError, GadgetInstance, GadgetKind, Port, PortKind};
use crate::coord::{fmt_ratio, rat, Coord};
use crate::model::{Block, BlockId, IntervalModel, TwinGraph};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LayoutError {
    #[error("coordinate {0} is off the eighth grid")]
    OffGrid(String),
    #[error("cannot fit a block run across {distance} between {from} and {to}")]
    Unfittable { distance: String, from: String, to: String },
    #[error("events too close: {0}")]
    EventsTooClose(String),
    #[error("port {label} at {pos} does not resolve to its block: {detail}")]
    PortResolution { label: String, pos: String, detail: String },
    #[error("footprint [{lo}, {hi}] cannot host the events")]
    BadFootprint { lo: String, hi: String },
    #[error("gadget error: {0}")]
    Gadget(#[from] GadgetError),
}

#[derive(Debug, Clone)]
pub struct LayoutEvent {
    pub pos: Coord,
    pub kind: PortKind,
    /// Becomes the port label of the produced instance.
    pub label: String,
}

impl LayoutEvent {
    pub fn arrive(pos: Coord, label: impl Into<String>) -> Self {
        LayoutEvent { pos, kind: PortKind::ArriveIn, label: label.into() }
    }
    pub fn leave(pos: Coord, label: impl Into<String>) -> Self {
        LayoutEvent { pos, kind: PortKind::LeaveFrom, label: label.into() }
    }
}

const W_MIN: i64 = 17; // 2 + 1/8 in eighths
const W_MAX: i64 = 24; // 3
const PITCH_MIN: i64 = 18; // 2 + 1/4
const PITCH_MAX: i64 = 32; // 4

fn to_e8(c: &Coord) -> Result<i64, LayoutError> {
    if !crate::coord::on_eighth_grid(c) {
        return Err(LayoutError::OffGrid(fmt_ratio(c)));
    }
    Ok((c * 8).to_integer())
}

fn from_e8(v: i64) -> Coord {
    rat(v, 8)
}

/// One 3-block of the run: start and width in eighths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunBlock {
    pub start: i64,
    pub width: i64,
    /// Width pinned by an event; must not be shrunk afterwards.
    pub fixed: bool,
}

/// Splits `total` into parts within per-part `[floor, cap]` bounds.
fn distribute(total: i64, bounds: &[(i64, i64)]) -> Option<Vec<i64>> {
    let lo: i64 = bounds.iter().map(|b| b.0).sum();
    let hi: i64 = bounds.iter().map(|b| b.1).sum();
    if total < lo || total > hi {
        return None;
    }
    let mut parts: Vec<i64> = bounds.iter().map(|b| b.0).collect();
    let mut rem = total - lo;
    for (i, b) in bounds.iter().enumerate() {
        let add = rem.min(b.1 - b.0);
        parts[i] += add;
        rem -= add;
        if rem == 0 {
            break;
        }
    }
    Some(parts)
}

/// Pitches from the block starting the segment (with the given width bounds)
/// to a target start, trying the smallest number of intermediate fillers.
fn fill_segment(from_start: i64, from_w: (i64, i64), to_start: i64) -> Option<Vec<i64>> {
    let d = to_start - from_start;
    if d <= 0 {
        return None;
    }
    for t in 0..=12usize {
        let n = t + 1;
        let mut bounds = Vec::with_capacity(n);
        // First pitch leaves the `from` block with a gap in (1/8, 1].
        bounds.push((from_w.0 + 1, from_w.1 + 8));
        for _ in 1..n {
            bounds.push((PITCH_MIN, PITCH_MAX));
        }
        if let Some(p) = distribute(d, &bounds) {
            return Some(p);
        }
    }
    None
}

fn width_bounds(b: &RunBlock) -> (i64, i64) {
    if b.fixed {
        (b.width, b.width)
    } else {
        (W_MIN, W_MAX)
    }
}

fn push_fill(blocks: &mut Vec<RunBlock>, pitches: &[i64]) {
    let mut cur = blocks.last().unwrap().start;
    for &p in pitches.iter().take(pitches.len() - 1) {
        cur += p;
        blocks.push(RunBlock { start: cur, width: W_MAX, fixed: false });
    }
}

/// Lays out a run of 3-blocks hosting the given events inside the footprint.
/// The first block starts at `lo`; the last block ends at `hi`.
pub fn solve_run(lo: Coord, hi: Coord, events: &[LayoutEvent]) -> Result<Vec<RunBlock>, LayoutError> {
    let lo8 = to_e8(&lo)?;
    let hi8 = to_e8(&hi)?;
    if hi8 - lo8 < W_MIN {
        return Err(LayoutError::BadFootprint { lo: fmt_ratio(&lo), hi: fmt_ratio(&hi) });
    }
    let mut evs: Vec<(i64, &LayoutEvent)> = Vec::new();
    for e in events {
        evs.push((to_e8(&e.pos)?, e));
    }
    evs.sort_by_key(|(p, e)| (*p, e.kind == PortKind::LeaveFrom));

    let unfit = |from: i64, to: i64| LayoutError::Unfittable {
        distance: fmt_ratio(&from_e8(to - from)),
        from: fmt_ratio(&from_e8(from)),
        to: fmt_ratio(&from_e8(to)),
    };

    let mut blocks: Vec<RunBlock> = Vec::new();
    let mut i = 0;
    while i < evs.len() {
        let (p, e) = evs[i];
        match e.kind {
            PortKind::ArriveIn => {
                // Fillers up to the arrival, which pins a block start.
                if blocks.is_empty() {
                    if p > lo8 {
                        blocks.push(RunBlock { start: lo8, width: W_MAX, fixed: false });
                        let f = fill_segment(lo8, (W_MIN, W_MAX), p).ok_or(unfit(lo8, p))?;
                        push_fill(&mut blocks, &f);
                    } else if p < lo8 {
                        return Err(LayoutError::BadFootprint { lo: fmt_ratio(&lo), hi: fmt_ratio(&hi) });
                    }
                } else {
                    let last = *blocks.last().unwrap();
                    let f = fill_segment(last.start, width_bounds(&last), p).ok_or(unfit(last.start, p))?;
                    push_fill(&mut blocks, &f);
                }
                // Merge a following leave landing in this block's B3.
                if i + 1 < evs.len()
                    && evs[i + 1].1.kind == PortKind::LeaveFrom
                    && evs[i + 1].0 - p > 2 * 8
                    && evs[i + 1].0 - p <= 3 * 8
                {
                    blocks.push(RunBlock { start: p, width: evs[i + 1].0 - p, fixed: true });
                    i += 2;
                } else {
                    blocks.push(RunBlock { start: p, width: W_MAX, fixed: false });
                    i += 1;
                }
            }
            PortKind::LeaveFrom => {
                // Unmerged leave: some block must end exactly at p.
                if blocks.is_empty() {
                    if p - lo8 >= W_MIN && p - lo8 <= W_MAX {
                        blocks.push(RunBlock { start: lo8, width: p - lo8, fixed: true });
                        i += 1;
                        continue;
                    }
                    blocks.push(RunBlock { start: lo8, width: W_MAX, fixed: false });
                }
                let last = *blocks.last().unwrap();
                if last.start + W_MIN <= p && p <= last.start + last.width && !last.fixed {
                    // Shrink the last placed block to end at the leave.
                    let b = blocks.last_mut().unwrap();
                    b.width = p - b.start;
                    b.fixed = true;
                    i += 1;
                    continue;
                }
                let mut placed = false;
                for w in (W_MIN..=W_MAX).rev() {
                    let target = p - w;
                    if let Some(f) = fill_segment(last.start, width_bounds(&last), target) {
                        push_fill(&mut blocks, &f);
                        blocks.push(RunBlock { start: target, width: w, fixed: true });
                        placed = true;
                        break;
                    }
                }
                if !placed {
                    return Err(unfit(last.start, p));
                }
                i += 1;
            }
        }
    }
    if blocks.is_empty() {
        let w = (hi8 - lo8).min(W_MAX);
        blocks.push(RunBlock { start: lo8, width: w, fixed: true });
    }

    // Trailing fillers until a block ends exactly at hi.
    let last = *blocks.last().unwrap();
    if last.start + last.width < hi8 {
        let mut placed = false;
        for w in (W_MIN..=W_MAX).rev() {
            let target = hi8 - w;
            if target == last.start && !last.fixed && w >= W_MIN {
                let b = blocks.last_mut().unwrap();
                b.width = w;
                b.fixed = true;
                placed = true;
                break;
            }
            if let Some(f) = fill_segment(last.start, width_bounds(&last), target) {
                push_fill(&mut blocks, &f);
                blocks.push(RunBlock { start: target, width: w, fixed: true });
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(unfit(last.start, hi8));
        }
    } else if last.start + last.width > hi8 {
        let b = blocks.last_mut().unwrap();
        if b.fixed || hi8 - b.start < W_MIN {
            return Err(LayoutError::BadFootprint { lo: fmt_ratio(&lo), hi: fmt_ratio(&hi) });
        }
        b.width = hi8 - b.start;
        b.fixed = true;
    }

    // Width pass: every block keeps a gap in (0, 1] to its successor.
    for k in 0..blocks.len() {
        if k + 1 < blocks.len() {
            let pitch = blocks[k + 1].start - blocks[k].start;
            if !blocks[k].fixed {
                blocks[k].width = W_MAX.min(pitch - 1);
            }
            let gap = pitch - blocks[k].width;
            if gap <= 0 || gap > 8 || blocks[k].width < W_MIN {
                return Err(LayoutError::EventsTooClose(format!(
                    "blocks at {} and {} leave gap {}",
                    fmt_ratio(&from_e8(blocks[k].start)),
                    fmt_ratio(&from_e8(blocks[k + 1].start)),
                    fmt_ratio(&from_e8(gap))
                )));
            }
        }
    }
    Ok(blocks)
}

/// Builds a stretch-gadget instance from a solved run: blocks, links, the
/// intended path graph, and one port per event.
pub fn build_run_instance(
    lo: Coord,
    hi: Coord,
    x: u32,
    events: &[LayoutEvent],
) -> Result<GadgetInstance, LayoutError> {
    let run = solve_run(lo, hi, events)?;
    let m = run.len();
    let mut blocks = Vec::new();
    let mut row: Vec<BlockId> = Vec::new();
    let mut edges: Vec<(BlockId, BlockId)> = Vec::new();
    for (i, rb) in run.iter().enumerate() {
        let s = from_e8(rb.start);
        let w = from_e8(rb.width);
        let n = i + 1;
        let b1 = format!("t{n}.b1");
        let b2 = format!("t{n}.b2");
        let b3 = format!("t{n}.b3");
        blocks.push(Block::short(b1.clone(), s, x, format!("3-block #{n} B1")));
        blocks.push(Block::short(b2.clone(), s + w - rat(2, 1), 2 * x, format!("3-block #{n} B2")));
        blocks.push(Block::short(b3.clone(), s + w - rat(1, 1), x, format!("3-block #{n} B3")));
        edges.push((b1.clone(), b2.clone()));
        edges.push((b2.clone(), b3.clone()));
        row.extend([b1, b2, b3.clone()]);
        if i + 1 < m {
            let next = run[i + 1];
            let link_left = (rb.start + rb.width).min(next.start + next.width - 3 * 8 - 1);
            let lid = format!("l{}_{}", n, n + 1);
            blocks.push(Block::short(lid.clone(), from_e8(link_left), 1, format!("link {n}-{}", n + 1)));
            edges.push((b3.clone(), lid.clone()));
            edges.push((lid.clone(), format!("t{}.b1", n + 1)));
            row.push(lid);
        }
    }
    let nodes = blocks.iter().map(|b| (b.id.clone(), b.multiplicity)).collect();
    let model = IntervalModel::new(blocks, hi - lo + rat(8, 1)).map_err(GadgetError::from)?;
    let intended = TwinGraph::new(nodes, edges).map_err(GadgetError::from)?;

    let mut ports = Vec::new();
    for e in events {
        let p8 = to_e8(&e.pos)?;
        let idx = match e.kind {
            // Arrivals resolve to the rightmost block containing the point,
            // leaves to the leftmost.
            PortKind::ArriveIn => run
                .iter()
                .enumerate()
                .filter(|(_, rb)| p8 >= rb.start && p8 <= rb.start + rb.width)
                .map(|(i, _)| i)
                .max(),
            PortKind::LeaveFrom => run
                .iter()
                .enumerate()
                .filter(|(_, rb)| p8 >= rb.start && p8 <= rb.start + rb.width)
                .map(|(i, _)| i)
                .min(),
        }
        .ok_or_else(|| LayoutError::PortResolution {
            label: e.label.clone(),
            pos: fmt_ratio(&e.pos),
            detail: "no block contains the event".into(),
        })?;
        let block = match e.kind {
            PortKind::ArriveIn => format!("t{}.b1", idx + 1),
            PortKind::LeaveFrom => format!("t{}.b3", idx + 1),
        };
        ports.push(Port {
            label: e.label.clone(),
            kind: e.kind,
            anchor: e.pos,
            block,
            expected_color: ExpectedColor::SameAsChain,
        });
    }
    let instance = GadgetInstance {
        kind: GadgetKind::Stretch(m),
        model,
        intended,
        ports,
        rows: vec![row],
        footprint: (lo, hi),
    };
    // The arrive/leave rules must resolve each port to its declared block.
    super::ports_resolve(&instance).map_err(|detail| LayoutError::PortResolution {
        label: "?".into(),
        pos: "?".into(),
        detail,
    })?;
    Ok(instance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coord::{half, int};

    #[test]
    fn canonical_three_chain_run() {
        // Same shape as the link gadget: arrivals at 0,4,8, leaves at 3,7,11.
        let events = vec![
            LayoutEvent::arrive(int(0), "a1"),
            LayoutEvent::leave(int(3), "l1"),
            LayoutEvent::arrive(int(4), "a2"),
            LayoutEvent::leave(int(7), "l2"),
            LayoutEvent::arrive(int(8), "a3"),
            LayoutEvent::leave(int(11), "l3"),
        ];
        let run = solve_run(int(0), int(11), &events).unwrap();
        assert_eq!(run.len(), 3);
        assert_eq!(run[0], RunBlock { start: 0, width: 24, fixed: true });
        assert_eq!(run[1].start, 32);
        assert_eq!(run[2].start, 64);
    }

    #[test]
    fn pull_stretch_shape() {
        // The template's resident pull: footprint [4, 32], one chain pulled
        // back to leave at 6.5, the others passing at standard slots.
        let events = vec![
            LayoutEvent::leave(half(13), "pull"),
            LayoutEvent::arrive(int(21), "a0"),
            LayoutEvent::leave(int(24), "l0"),
            LayoutEvent::arrive(int(25), "a1"),
            LayoutEvent::leave(int(28), "l1"),
            LayoutEvent::arrive(int(29), "a2"),
            LayoutEvent::leave(int(32), "l2"),
        ];
        let inst = build_run_instance(int(4), int(32), 2, &events).unwrap();
        assert!(inst.validate_in_isolation().passed(), "{}", inst.validate_in_isolation());
        assert_eq!(inst.footprint, (int(4), int(32)));
        // pulled leave lands in the first block's B3
        assert_eq!(inst.port("pull").unwrap().block, "t1.b3");
    }

    #[test]
    fn compressed_regroup_shape() {
        // Three chains hopping 2.5 each inside [7.5, 16.5].
        let events = vec![
            LayoutEvent::arrive(half(15), "a1"),
            LayoutEvent::leave(int(10), "l1"),
            LayoutEvent::arrive(half(21), "a2"),
            LayoutEvent::leave(int(13), "l2"),
            LayoutEvent::arrive(half(27), "a3"),
            LayoutEvent::leave(half(33), "l3"),
        ];
        let inst = build_run_instance(half(15), half(33), 1, &events).unwrap();
        assert!(inst.validate_in_isolation().passed(), "{}", inst.validate_in_isolation());
        assert!(matches!(inst.kind, GadgetKind::Stretch(3)));
    }

    #[test]
    fn short_hop_leave_shrinks_block() {
        // Arrive at 0, leave at 4.5: too far for one block, too close for a
        // full-width second one.
        let events = vec![LayoutEvent::arrive(int(0), "a"), LayoutEvent::leave(half(9), "l")];
        let inst = build_run_instance(int(0), half(9), 1, &events).unwrap();
        assert!(inst.validate_in_isolation().passed(), "{}", inst.validate_in_isolation());
        assert_eq!(inst.port("l").unwrap().block, "t2.b3");
    }

    #[test]
    fn off_grid_events_are_rejected() {
        let events = vec![LayoutEvent::arrive(crate::coord::rat(1, 3), "bad")];
        assert!(matches!(solve_run(int(0), int(3), &events), Err(LayoutError::OffGrid(_))));
    }

    #[test]
    fn vault_run_uses_at_most_ten_blocks() {
        let events = vec![LayoutEvent::arrive(int(18), "in"), LayoutEvent::leave(int(56), "out")];
        let inst = build_run_instance(int(18), int(56), 1, &events).unwrap();
        assert!(matches!(inst.kind, GadgetKind::Stretch(m) if m <= 10));
        assert!(inst.validate_in_isolation().passed());
    }
}
