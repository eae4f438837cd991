//! Alternation classification of gadget partitions.
//!
//! A row of blocks is *alternating* when every block is monochrome and
//! consecutive blocks take different classes. It is *almost alternating
//! except `(block, c)`* when exactly one block deviates: `c` of its intervals
//! share the class of its (equal-colored) neighbors while every other
//! consecutive pair alternates cleanly. Anything else is *other*. The switch
//! gadget's two rows are classified separately.

use super::SolverError;
use crate::gadgets::GadgetInstance;
use crate::model::{BlockAssignment, BlockId, Color};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowVerdict {
    Alternating,
    AlmostAlternating { block: BlockId, deviation: u32 },
    Other,
}

impl RowVerdict {
    pub fn is_alternating(&self) -> bool {
        matches!(self, RowVerdict::Alternating)
    }

    /// Alternating, or almost with the deviation confined to `allowed`
    /// blocks and bounded by `max_dev`.
    pub fn within(&self, allowed: &[&str], max_dev: u32) -> bool {
        match self {
            RowVerdict::Alternating => true,
            RowVerdict::AlmostAlternating { block, deviation } => {
                *deviation <= max_dev && allowed.iter().any(|a| block.ends_with(a) || block == a)
            }
            RowVerdict::Other => false,
        }
    }
}

impl fmt::Display for RowVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowVerdict::Alternating => write!(f, "alternating"),
            RowVerdict::AlmostAlternating { block, deviation } => {
                write!(f, "almost-alternating({block},{deviation})")
            }
            RowVerdict::Other => write!(f, "other"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct AlternationReport {
    /// One verdict per row of the gadget.
    pub verdicts: Vec<RowVerdict>,
    /// Majority class per block; `None` on an exact tie.
    pub monochrome: BTreeMap<BlockId, Option<Color>>,
}

impl AlternationReport {
    pub fn all_within(&self, allowed: &[&str], max_dev: u32) -> bool {
        self.verdicts.iter().all(|v| v.within(allowed, max_dev))
    }
}

struct RowEntry {
    id: BlockId,
    y: u32,
    m: u32,
}

impl RowEntry {
    fn majority(&self) -> Option<Color> {
        use std::cmp::Ordering::*;
        match (2 * self.y).cmp(&self.m) {
            Greater => Some(Color::R),
            Less => Some(Color::B),
            Equal => None,
        }
    }

    fn mono_color(&self) -> Option<Color> {
        if self.y == self.m {
            Some(Color::R)
        } else if self.y == 0 {
            Some(Color::B)
        } else {
            None
        }
    }

    fn count_of(&self, color: Color) -> u32 {
        match color {
            Color::R => self.y,
            Color::B => self.m - self.y,
        }
    }
}

fn classify_row(entries: &[RowEntry]) -> RowVerdict {
    let deviants: Vec<usize> =
        (0..entries.len()).filter(|&i| entries[i].mono_color().is_none()).collect();
    match deviants.len() {
        0 => {
            let alternating = entries
                .windows(2)
                .all(|w| w[0].mono_color().unwrap() != w[1].mono_color().unwrap());
            if alternating {
                RowVerdict::Alternating
            } else {
                RowVerdict::Other
            }
        }
        1 => {
            let i = deviants[0];
            // Every pair not touching the deviant must alternate.
            for (j, w) in entries.windows(2).enumerate() {
                if j == i || j + 1 == i {
                    continue;
                }
                if w[0].mono_color() == w[1].mono_color() {
                    return RowVerdict::Other;
                }
            }
            let neighbor_color = match neighbor_color(entries, i) {
                Some(c) => c,
                None => return RowVerdict::Other,
            };
            RowVerdict::AlmostAlternating {
                block: entries[i].id.clone(),
                deviation: entries[i].count_of(neighbor_color),
            }
        }
        _ => RowVerdict::Other,
    }
}

/// The common color of the deviant's monochrome neighbors, if they agree.
fn neighbor_color(entries: &[RowEntry], i: usize) -> Option<Color> {
    let left = i.checked_sub(1).map(|j| entries[j].mono_color());
    let right = entries.get(i + 1).map(|e| e.mono_color());
    match (left, right) {
        (Some(Some(a)), Some(Some(b))) if a == b => Some(a),
        (Some(Some(a)), None) => Some(a),
        (None, Some(Some(b))) => Some(b),
        _ => None,
    }
}

/// Classifies an assignment against the gadget's rows.
pub fn classify_partition(
    instance: &GadgetInstance,
    assignment: &BlockAssignment,
) -> Result<AlternationReport, SolverError> {
    let mut verdicts = Vec::new();
    let mut monochrome = BTreeMap::new();
    for row in &instance.rows {
        let mut entries = Vec::new();
        for id in row {
            let m = instance
                .model
                .block(id)
                .ok_or_else(|| SolverError::UnknownBlock(id.clone()))?
                .multiplicity;
            let y = assignment
                .get(id)
                .ok_or_else(|| SolverError::UnknownBlock(id.clone()))?;
            entries.push(RowEntry { id: id.clone(), y, m });
        }
        for e in &entries {
            monochrome.insert(e.id.clone(), e.majority());
        }
        verdicts.push(classify_row(&entries));
    }
    Ok(AlternationReport { verdicts, monochrome })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coord::int;
    use crate::gadgets::make_three_block;

    fn assign(y1: u32, y2: u32, y3: u32) -> BlockAssignment {
        BlockAssignment::from_pairs([("b1".into(), y1), ("b2".into(), y2), ("b3".into(), y3)])
    }

    #[test]
    fn rbr_is_alternating() {
        let g = make_three_block(int(0), 2).unwrap();
        let r = classify_partition(&g, &assign(2, 0, 2)).unwrap();
        assert_eq!(r.verdicts, vec![RowVerdict::Alternating]);
        assert_eq!(r.monochrome["b2"], Some(Color::B));
    }

    #[test]
    fn one_flipped_interval_in_b2_is_almost() {
        let g = make_three_block(int(0), 2).unwrap();
        let r = classify_partition(&g, &assign(2, 1, 2)).unwrap();
        assert_eq!(
            r.verdicts,
            vec![RowVerdict::AlmostAlternating { block: "b2".into(), deviation: 1 }]
        );
    }

    #[test]
    fn outer_blocks_matching_center_is_other() {
        let g = make_three_block(int(0), 2).unwrap();
        let r = classify_partition(&g, &assign(0, 0, 0)).unwrap();
        assert_eq!(r.verdicts, vec![RowVerdict::Other]);
    }

    #[test]
    fn two_deviant_blocks_is_other() {
        let g = make_three_block(int(0), 2).unwrap();
        let r = classify_partition(&g, &assign(1, 1, 2)).unwrap();
        assert_eq!(r.verdicts, vec![RowVerdict::Other]);
    }
}
