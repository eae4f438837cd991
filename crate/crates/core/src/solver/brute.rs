//! Vertex-level brute-force oracle.
//!
//! Expands every block into `multiplicity` clique vertices, connects blocks
//! by complete bipartite bundles, and walks all 2-colorings of the free
//! vertices with a Gray code so each step flips a single vertex. With no
//! fixed colors, vertex 0 is pinned to one class; the cut value is invariant
//! under complementation, so nothing is lost.

use super::{SolveResult, SolverError};
use crate::model::{build_twin_graph, BlockAssignment, IntervalModel};

pub const BRUTE_FORCE_VERTEX_LIMIT: u64 = 26;

/// Exact MaxCut of the model's intersection graph by exhaustive enumeration.
pub fn maxcut_bruteforce(model: &IntervalModel) -> Result<SolveResult, SolverError> {
    maxcut_bruteforce_fixed(model, &BlockAssignment::new())
}

/// Brute force with some blocks pinned to an exact R-count. Pinned blocks
/// contribute `r` red vertices; the rest enumerate freely.
pub fn maxcut_bruteforce_fixed(
    model: &IntervalModel,
    fixed: &BlockAssignment,
) -> Result<SolveResult, SolverError> {
    let graph = build_twin_graph(model)?;
    let n_vertices = graph.expanded_size();
    if n_vertices > BRUTE_FORCE_VERTEX_LIMIT {
        return Err(SolverError::TooLarge { vertices: n_vertices, limit: BRUTE_FORCE_VERTEX_LIMIT });
    }
    for (id, r) in fixed.iter() {
        let idx = graph.index_of(id).ok_or_else(|| SolverError::UnknownBlock(id.clone()))?;
        let m = graph.multiplicity(idx);
        if r > m {
            return Err(SolverError::FixedOutOfRange { id: id.clone(), r, m: m });
        }
    }

    // Expansion: vertex -> owning block, plus adjacency bitmasks.
    let mut owner = Vec::with_capacity(n_vertices as usize);
    let mut block_vertices: Vec<Vec<usize>> = vec![Vec::new(); graph.node_count()];
    for (bi, (_, mult)) in graph.nodes().iter().enumerate() {
        for _ in 0..*mult {
            block_vertices[bi].push(owner.len());
            owner.push(bi);
        }
    }
    let nv = owner.len();
    let mut adj = vec![0u32; nv];
    for (bi, verts) in block_vertices.iter().enumerate() {
        for (i, &u) in verts.iter().enumerate() {
            for &v in verts.iter().skip(i + 1) {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
        let _ = bi;
    }
    for &(a, b) in graph.edges() {
        for &u in &block_vertices[a] {
            for &v in &block_vertices[b] {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
    }

    // Initial coloring: pinned blocks get their first r vertices red; free
    // vertices start blue.
    let mut red_mask = 0u32;
    let mut free: Vec<usize> = Vec::new();
    for (bi, (id, _)) in graph.nodes().iter().enumerate() {
        if let Some(r) = fixed.get(id) {
            for &v in block_vertices[bi].iter().take(r as usize) {
                red_mask |= 1 << v;
            }
        } else {
            free.extend(&block_vertices[bi]);
        }
    }
    let all_mask: u32 = if nv == 32 { u32::MAX } else { (1u32 << nv) - 1 };

    let cut_of = |red: u32| -> i64 {
        let mut c = 0i64;
        let blue = all_mask & !red;
        let mut rm = red;
        while rm != 0 {
            let v = rm.trailing_zeros() as usize;
            rm &= rm - 1;
            c += i64::from((adj[v] & blue).count_ones());
        }
        c
    };

    // With no pins, fix the first free vertex to break complement symmetry.
    let enum_bits: Vec<usize> =
        if fixed.is_empty() && !free.is_empty() { free[1..].to_vec() } else { free.clone() };

    let mut cur = cut_of(red_mask);
    let mut best = cur;
    let mut best_mask = red_mask;
    let mut optima: u64 = 1;

    let steps: u64 = if enum_bits.len() >= 64 { u64::MAX } else { (1u64 << enum_bits.len()) - 1 };
    let mut gray_state = 0u64;
    for i in 1..=steps {
        let flip_pos = i.trailing_zeros() as usize; // Gray code: flip one bit per step
        gray_state ^= 1 << flip_pos;
        let v = enum_bits[flip_pos];
        let bit = 1u32 << v;
        let was_red = red_mask & bit != 0;
        // Removing v from its class and re-adding to the other changes the
        // cut by (same-class neighbors) - (other-class neighbors), measured
        // before the flip and excluding v itself.
        let reds = red_mask & !bit;
        let blues = (all_mask & !red_mask) & !bit;
        let to_red = i64::from((adj[v] & blues).count_ones()) - i64::from((adj[v] & reds).count_ones());
        cur += if was_red { -to_red } else { to_red };
        red_mask ^= bit;
        if cur > best {
            best = cur;
            best_mask = red_mask;
            optima = 1;
        } else if cur == best {
            optima += 1;
        }
    }
    let _ = gray_state;

    // Fold the witness back to block counts.
    let mut assignment = BlockAssignment::new();
    for (bi, (id, _)) in graph.nodes().iter().enumerate() {
        let r = block_vertices[bi].iter().filter(|&&v| best_mask & (1 << v) != 0).count() as u32;
        assignment.set(id.clone(), r);
    }
    Ok(SolveResult { value: best, assignment, optima_count: optima })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coord::int;
    use crate::model::{cut_value, Block, IntervalModel};

    fn three_block(x: u32) -> IntervalModel {
        IntervalModel::new(
            vec![
                Block::short("B1", int(0), x, ""),
                Block::short("B2", int(1), 2 * x, ""),
                Block::short("B3", int(2), x, ""),
            ],
            int(100),
        )
        .unwrap()
    }

    #[test]
    fn bare_three_block_x1_optimum_is_four() {
        let r = maxcut_bruteforce(&three_block(1)).unwrap();
        assert_eq!(r.value, 4);
    }

    #[test]
    fn single_clique_maxcut_is_balanced_split() {
        let m = IntervalModel::new(vec![Block::short("K", int(0), 4, "")], int(10)).unwrap();
        let r = maxcut_bruteforce(&m).unwrap();
        assert_eq!(r.value, 4); // floor(16/4)
        assert_eq!(r.assignment.get("K"), Some(2));
    }

    #[test]
    fn witness_value_matches_cut_value() {
        let m = three_block(2);
        let r = maxcut_bruteforce(&m).unwrap();
        let g = build_twin_graph(&m).unwrap();
        assert_eq!(cut_value(&g, &r.assignment).unwrap(), r.value);
    }

    #[test]
    fn refuses_oversized_instances() {
        let m = IntervalModel::new(vec![Block::short("K", int(0), 27, "")], int(10)).unwrap();
        assert!(matches!(maxcut_bruteforce(&m), Err(SolverError::TooLarge { .. })));
    }

    #[test]
    fn fixed_counts_are_respected() {
        let m = three_block(1);
        let fixed = BlockAssignment::from_pairs([("B1".into(), 1), ("B3".into(), 1)]);
        let r = maxcut_bruteforce_fixed(&m, &fixed).unwrap();
        assert_eq!(r.assignment.get("B1"), Some(1));
        assert_eq!(r.assignment.get("B3"), Some(1));
        assert_eq!(r.value, 4); // B2 goes fully blue
    }
}
