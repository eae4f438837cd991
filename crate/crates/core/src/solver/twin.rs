//! Exact block-count solver by variable elimination.
//!
//! The cut objective over a twin graph is a sum of unary terms `y(m-y)` and
//! pairwise terms `y_a(m_b-y_b) + (m_a-y_a)y_b`. Fixed blocks fold into the
//! unary terms and a constant, so the solver maximizes over the free blocks
//! only. Elimination follows a greedy min-degree order; an elimination
//! cluster wider than [`ELIMINATION_WIDTH_LIMIT`] free variables is refused
//! rather than attempted.

use super::{SolveResult, SolverError};
use crate::model::{BlockAssignment, TwinGraph};
use std::collections::BTreeSet;

/// Maximum number of neighbors a variable may have at elimination time.
pub const ELIMINATION_WIDTH_LIMIT: usize = 8;

const DEFAULT_COUNT_CAP: u64 = 100_000;

struct Factor {
    vars: Vec<usize>, // sorted free-var indices
    table: Vec<i64>,  // row-major, first var slowest
}

struct Elimination {
    var: usize,
    scope: Vec<usize>, // remaining vars of the cluster, sorted
    table: Vec<i64>,   // cluster table over scope + var (var fastest axis)
    var_domain: usize,
}

struct Problem {
    free: Vec<usize>,          // graph indices of free blocks
    domain: Vec<usize>,        // m + 1 per free var
    mult: Vec<i64>,            // multiplicity per free var
    constant: i64,
    records: Vec<Elimination>, // in elimination order
    value: i64,
}

fn table_size(vars: &[usize], domain: &[usize]) -> usize {
    vars.iter().map(|&v| domain[v]).product()
}

fn index_of(vals: &[usize], vars: &[usize], domain: &[usize]) -> usize {
    let mut idx = 0;
    for (pos, &v) in vars.iter().enumerate() {
        idx = idx * domain[v] + vals[pos];
    }
    idx
}

fn prepare(graph: &TwinGraph, fixed: &BlockAssignment) -> Result<Problem, SolverError> {
    let n = graph.node_count();
    let mut fixed_val: Vec<Option<i64>> = vec![None; n];
    for (id, r) in fixed.iter() {
        let idx = graph.index_of(id).ok_or_else(|| SolverError::UnknownBlock(id.clone()))?;
        let m = graph.multiplicity(idx);
        if r > m {
            return Err(SolverError::FixedOutOfRange { id: id.clone(), r, m });
        }
        fixed_val[idx] = Some(i64::from(r));
    }

    let free: Vec<usize> = (0..n).filter(|&i| fixed_val[i].is_none()).collect();
    let var_of: Vec<Option<usize>> = {
        let mut v = vec![None; n];
        for (k, &i) in free.iter().enumerate() {
            v[i] = Some(k);
        }
        v
    };
    let domain: Vec<usize> = free.iter().map(|&i| graph.multiplicity(i) as usize + 1).collect();
    let mult: Vec<i64> = free.iter().map(|&i| i64::from(graph.multiplicity(i))).collect();

    let mut constant = 0i64;
    let mut unary: Vec<Vec<i64>> = domain.iter().map(|&d| vec![0i64; d]).collect();
    for (k, &i) in free.iter().enumerate() {
        let m = mult[k];
        for y in 0..domain[k] {
            unary[k][y] += (y as i64) * (m - y as i64);
        }
        let _ = i;
    }
    for i in 0..n {
        if let Some(y) = fixed_val[i] {
            let m = i64::from(graph.multiplicity(i));
            constant += y * (m - y);
        }
    }

    let mut pair_factors: Vec<Factor> = Vec::new();
    for &(a, b) in graph.edges() {
        let (ma, mb) = (i64::from(graph.multiplicity(a)), i64::from(graph.multiplicity(b)));
        match (fixed_val[a], fixed_val[b]) {
            (Some(ya), Some(yb)) => constant += ya * (mb - yb) + (ma - ya) * yb,
            (Some(ya), None) => {
                let k = var_of[b].unwrap();
                for yb in 0..domain[k] {
                    unary[k][yb] += ya * (mb - yb as i64) + (ma - ya) * yb as i64;
                }
            }
            (None, Some(yb)) => {
                let k = var_of[a].unwrap();
                for ya in 0..domain[k] {
                    unary[k][ya] += (ya as i64) * (mb - yb) + (ma - ya as i64) * yb;
                }
            }
            (None, None) => {
                let (ka, kb) = (var_of[a].unwrap(), var_of[b].unwrap());
                let (lo, hi) = (ka.min(kb), ka.max(kb));
                let mut table = vec![0i64; domain[lo] * domain[hi]];
                for ylo in 0..domain[lo] {
                    for yhi in 0..domain[hi] {
                        let (ya, yb) = if lo == ka { (ylo as i64, yhi as i64) } else { (yhi as i64, ylo as i64) };
                        table[ylo * domain[hi] + yhi] = ya * (mb - yb) + (ma - ya) * yb;
                    }
                }
                pair_factors.push(Factor { vars: vec![lo, hi], table });
            }
        }
    }

    let mut pool: Vec<Factor> = Vec::new();
    for (k, t) in unary.into_iter().enumerate() {
        pool.push(Factor { vars: vec![k], table: t });
    }
    pool.extend(pair_factors);

    // Greedy min-degree order on the free interaction graph.
    let nf = free.len();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); nf];
    for f in &pool {
        if f.vars.len() == 2 {
            adj[f.vars[0]].insert(f.vars[1]);
            adj[f.vars[1]].insert(f.vars[0]);
        }
    }
    let mut remaining: BTreeSet<usize> = (0..nf).collect();
    let mut order = Vec::with_capacity(nf);
    while let Some(&v) = remaining.iter().min_by_key(|&&v| adj[v].len()) {
        order.push(v);
        remaining.remove(&v);
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        for &u in &nbrs {
            adj[u].remove(&v);
        }
        for i in 0..nbrs.len() {
            for j in i + 1..nbrs.len() {
                adj[nbrs[i]].insert(nbrs[j]);
                adj[nbrs[j]].insert(nbrs[i]);
            }
        }
    }

    // Eliminate.
    let mut records = Vec::with_capacity(nf);
    let mut value = constant;
    for &v in &order {
        let (touching, rest): (Vec<Factor>, Vec<Factor>) = pool.drain(..).partition(|f| f.vars.contains(&v));
        pool = rest;
        let mut scope: BTreeSet<usize> = BTreeSet::new();
        for f in &touching {
            scope.extend(f.vars.iter().copied());
        }
        scope.remove(&v);
        if scope.len() > ELIMINATION_WIDTH_LIMIT {
            return Err(SolverError::WidthExceeded { width: scope.len(), limit: ELIMINATION_WIDTH_LIMIT });
        }
        let scope: Vec<usize> = scope.into_iter().collect();
        let scope_size = table_size(&scope, &domain);
        let dv = domain[v];
        // Cluster table over scope x var; var is the fastest axis.
        let mut cluster = vec![0i64; scope_size * dv];
        let mut vals = vec![0usize; scope.len()];
        for si in 0..scope_size {
            // decode scope index
            let mut rem = si;
            for pos in (0..scope.len()).rev() {
                let d = domain[scope[pos]];
                vals[pos] = rem % d;
                rem /= d;
            }
            for yv in 0..dv {
                let mut sum = 0i64;
                for f in &touching {
                    let mut fvals = Vec::with_capacity(f.vars.len());
                    for &fv in &f.vars {
                        if fv == v {
                            fvals.push(yv);
                        } else {
                            let pos = scope.binary_search(&fv).unwrap();
                            fvals.push(vals[pos]);
                        }
                    }
                    sum += f.table[index_of(&fvals, &f.vars, &domain)];
                }
                cluster[si * dv + yv] = sum;
            }
        }
        // Max out the variable.
        let mut msg = vec![i64::MIN; scope_size];
        for si in 0..scope_size {
            msg[si] = (0..dv).map(|yv| cluster[si * dv + yv]).max().unwrap();
        }
        if scope.is_empty() {
            value += msg[0];
        } else {
            pool.push(Factor { vars: scope.clone(), table: msg });
        }
        records.push(Elimination { var: v, scope, table: cluster, var_domain: dv });
    }
    debug_assert!(pool.is_empty());

    Ok(Problem { free, domain, mult, constant, records, value })
}

fn optimal_choices(p: &Problem, rec: &Elimination, partial: &[Option<usize>]) -> Vec<usize> {
    let vals: Vec<usize> = rec.scope.iter().map(|&s| partial[s].expect("scope assigned")).collect();
    let si = index_of(&vals, &rec.scope, &p.domain);
    let slice = &rec.table[si * rec.var_domain..(si + 1) * rec.var_domain];
    let best = *slice.iter().max().unwrap();
    slice.iter().enumerate().filter(|(_, &v)| v == best).map(|(y, _)| y).collect()
}

fn walk_optima(
    p: &Problem,
    depth: usize,
    partial: &mut Vec<Option<usize>>,
    cap: u64,
    count: &mut u64,
    capped: &mut bool,
    mut emit: Option<&mut Vec<Vec<usize>>>,
) {
    if depth == 0 {
        *count += 1;
        if let Some(out) = emit.as_mut() {
            out.push(partial.iter().map(|v| v.unwrap()).collect());
        }
        return;
    }
    let rec = &p.records[depth - 1];
    for y in optimal_choices(p, rec, partial) {
        if *count >= cap {
            *capped = true;
            return;
        }
        partial[rec.var] = Some(y);
        walk_optima(p, depth - 1, partial, cap, count, capped, emit.as_deref_mut());
        partial[rec.var] = None;
    }
}

fn to_assignment(graph: &TwinGraph, fixed: &BlockAssignment, p: &Problem, vals: &[usize]) -> BlockAssignment {
    let mut out = BlockAssignment::new();
    for (id, r) in fixed.iter() {
        out.set(id.clone(), r);
    }
    for (k, &gi) in p.free.iter().enumerate() {
        out.set(graph.id_of(gi).clone(), vals[k] as u32);
    }
    out
}

/// Exact maximum of the cut objective with `fixed` blocks pinned.
pub fn maxcut_twin_exact(graph: &TwinGraph, fixed: &BlockAssignment) -> Result<SolveResult, SolverError> {
    let p = prepare(graph, fixed)?;
    let mut partial = vec![None; p.free.len()];
    let mut count = 0u64;
    let mut capped = false;
    let mut first: Vec<Vec<usize>> = Vec::new();
    // One witness: walk with cap 1.
    walk_optima(&p, p.records.len(), &mut partial, 1, &mut count, &mut capped, Some(&mut first));
    let witness = first
        .first()
        .map(|vals| to_assignment(graph, fixed, &p, vals))
        .unwrap_or_else(|| to_assignment(graph, fixed, &p, &[]));
    // Count (saturating at the cap).
    let mut partial = vec![None; p.free.len()];
    let mut count = 0u64;
    let mut capped = false;
    walk_optima(&p, p.records.len(), &mut partial, DEFAULT_COUNT_CAP, &mut count, &mut capped, None);
    let _ = p.constant;
    let _ = &p.mult;
    Ok(SolveResult { value: p.value, assignment: witness, optima_count: count })
}

/// All optimal assignments, failing if there are more than `cap`.
pub fn enumerate_optima(
    graph: &TwinGraph,
    fixed: &BlockAssignment,
    cap: u64,
) -> Result<Vec<BlockAssignment>, SolverError> {
    let p = prepare(graph, fixed)?;
    let mut partial = vec![None; p.free.len()];
    let mut count = 0u64;
    let mut capped = false;
    let mut all = Vec::new();
    walk_optima(&p, p.records.len(), &mut partial, cap, &mut count, &mut capped, Some(&mut all));
    if capped {
        return Err(SolverError::EnumerationCapExceeded(cap));
    }
    Ok(all.iter().map(|vals| to_assignment(graph, fixed, &p, vals)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coord::int;
    use crate::model::{build_twin_graph, cut_value, Block, IntervalModel};
    use crate::solver::maxcut_bruteforce_fixed;

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
    fn bare_three_block_x10_is_400() {
        let g = build_twin_graph(&three_block(10)).unwrap();
        let r = maxcut_twin_exact(&g, &BlockAssignment::new()).unwrap();
        assert_eq!(r.value, 400);
        assert_eq!(cut_value(&g, &r.assignment).unwrap(), 400);
    }

    #[test]
    fn agrees_with_brute_force_on_small_instances() {
        for x in 1..=2 {
            let m = three_block(x);
            let g = build_twin_graph(&m).unwrap();
            let t = maxcut_twin_exact(&g, &BlockAssignment::new()).unwrap();
            let b = maxcut_bruteforce_fixed(&m, &BlockAssignment::new()).unwrap();
            assert_eq!(t.value, b.value);
        }
    }

    #[test]
    fn respects_fixed_blocks() {
        let g = build_twin_graph(&three_block(3)).unwrap();
        let fixed = BlockAssignment::from_pairs([("B2".into(), 6)]);
        let r = maxcut_twin_exact(&g, &fixed).unwrap();
        // B2 all red forces B1, B3 all blue: cut = 3*6 + 6*3 = 36.
        assert_eq!(r.value, 36);
        assert_eq!(r.assignment.get("B1"), Some(0));
        assert_eq!(r.assignment.get("B3"), Some(0));
    }

    #[test]
    fn value_is_invariant_under_complementing_fixed() {
        let g = build_twin_graph(&three_block(4)).unwrap();
        let fixed = BlockAssignment::from_pairs([("B1".into(), 3)]);
        let comp = BlockAssignment::from_pairs([("B1".into(), 1)]);
        let a = maxcut_twin_exact(&g, &fixed).unwrap();
        let b = maxcut_twin_exact(&g, &comp).unwrap();
        assert_eq!(a.value, b.value);
    }

    #[test]
    fn enumerates_both_alternating_optima() {
        let g = build_twin_graph(&three_block(2)).unwrap();
        let all = enumerate_optima(&g, &BlockAssignment::new(), 100).unwrap();
        // RBR and BRB are the only optima of the bare 3-block.
        assert_eq!(all.len(), 2);
        for a in &all {
            assert_eq!(cut_value(&g, a).unwrap(), 16);
        }
    }

    #[test]
    fn refuses_wide_interaction_graphs() {
        // A clique on 10 free blocks exceeds the width limit.
        let blocks: Vec<Block> =
            (0..10).map(|i| Block::short(format!("c{i}"), int(0), 1, "")).collect();
        let m = IntervalModel::new(blocks, int(10)).unwrap();
        let g = build_twin_graph(&m).unwrap();
        assert!(matches!(
            maxcut_twin_exact(&g, &BlockAssignment::new()),
            Err(SolverError::WidthExceeded { .. })
        ));
    }
}
