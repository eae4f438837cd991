//! Lemma verification suites.
//!
//! Each suite instantiates a gadget with its external long intervals (fixed
//! colors where the lemma fixes them), enumerates *all* optima with the twin
//! solver, and checks the lemma's conclusion on every one of them. Results
//! come back as machine-parseable report lines
//! `lemma params expected observed verdict`.

use super::{
    classify_partition, enumerate_optima, eval_cut_rbr, eval_edge_cases, eval_f_bound,
    maxcut_twin_exact, FamilyCount, OverlapProfile, Rational, RowVerdict, SolverError,
};
use crate::coord::{half, int, Coord};
use crate::gadgets::{
    compress_placement, make_edge_gadget, make_stretch_gadget, make_switch_gadget,
    make_three_block, make_vertex_gadget, CompressCase, CompressError, GadgetError,
    GadgetInstance, PortKind,
};
use crate::model::{
    build_twin_graph, cut_value, Block, BlockAssignment, BlockId, Color, IntervalModel,
    ModelError, TwinGraph,
};
use num_rational::Ratio;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("x = {x} is not above the stability threshold {threshold} for this grid")]
    BelowThreshold { x: u32, threshold: String },
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("compress error: {0}")]
    Compress(#[from] CompressError),
}

#[derive(Debug, Clone)]
pub struct ReportLine {
    pub lemma: String,
    pub params: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

impl ReportLine {
    fn new(lemma: &str, params: String, expected: String, observed: String, pass: bool) -> Self {
        ReportLine { lemma: lemma.into(), params, expected, observed, pass }
    }
}

impl fmt::Display for ReportLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {} {}",
            self.lemma,
            self.params,
            self.expected,
            self.observed,
            if self.pass { "pass" } else { "FAIL" }
        )
    }
}

pub fn all_pass(lines: &[ReportLine]) -> bool {
    lines.iter().all(|l| l.pass)
}

const OPTIMA_CAP: u64 = 50_000;

fn induced_cut(graph: &TwinGraph, y: &BlockAssignment, ids: &BTreeSet<BlockId>) -> i64 {
    let sub = graph.induced(ids);
    let restricted = BlockAssignment::from_pairs(
        y.iter().filter(|(id, _)| ids.contains(*id)).map(|(id, v)| (id.clone(), v)),
    );
    cut_value(&sub, &restricted).expect("restricted assignment covers the induced graph")
}

/// Appends a fixed family of long intervals covering `[cover_from, ...]`.
fn push_family(
    blocks: &mut Vec<Block>,
    fixed: &mut BlockAssignment,
    id: &str,
    left: Coord,
    fam: FamilyCount,
) {
    if fam.total() == 0 {
        return;
    }
    blocks.push(Block::long(id, left, fam.total(), "overlap family"));
    fixed.set(id, fam.r);
}

fn color_of(y: u32, m: u32) -> Option<Color> {
    if y == m {
        Some(Color::R)
    } else if y == 0 {
        Some(Color::B)
    } else {
        None
    }
}

fn ceil_half(v: i64) -> u32 {
    (v.abs() as u32).div_ceil(2)
}

// ---------------------------------------------------------------------------
// 3-block stability
// ---------------------------------------------------------------------------

/// Stability threshold from the completing-the-square argument:
/// `x > (Delta2+Delta4)^2/4 + Delta3^2/4`.
pub fn three_block_threshold(profile: &OverlapProfile) -> Rational {
    let s = profile.delta(2) + profile.delta(4);
    let d3 = profile.delta(3);
    Ratio::new(s * s, 4) + Ratio::new(d3 * d3, 4)
}

/// Builds the 3-block harness model: a bare 3-block of size `x` plus the
/// four external families (family 1 on B1 only, family 2 across all three,
/// family 3 on B3 only, family 4 on B1 and B2).
fn three_block_harness(
    x: u32,
    profile: &OverlapProfile,
) -> Result<(GadgetInstance, IntervalModel, BlockAssignment, BTreeSet<BlockId>), SuiteError> {
    let gadget = make_three_block(int(0), x)?;
    let mut blocks = gadget.model.blocks().to_vec();
    let mut fixed = BlockAssignment::new();
    let mut fam_ids = BTreeSet::new();
    let specs = [
        ("fam1", int(-1), false),
        ("fam2", int(-2), true),
        ("fam3", int(3), false),
        ("fam4", int(0), false),
    ];
    for (i, (id, left, long)) in specs.into_iter().enumerate() {
        let fam = profile.families[i];
        if fam.total() == 0 {
            continue;
        }
        if long {
            blocks.push(Block::long(id, left, fam.total(), "overlap family"));
        } else {
            blocks.push(Block::short(id, left, fam.total(), "external family"));
        }
        fixed.set(id, fam.r);
        fam_ids.insert(id.to_string());
    }
    let model = IntervalModel::new(blocks, *gadget.model.alpha())?;
    Ok((gadget, model, fixed, fam_ids))
}

/// Lemma: for x large enough every optimum of the 3-block with external
/// families is almost alternating except `(B2, |Delta2+Delta4|/2)` and the
/// optimum exceeds `cut_RBR` by at most `(Delta2+Delta4)^2 / 4`.
pub fn suite_three_block(xs: &[u32], delta_bound: i64) -> Result<Vec<ReportLine>, SuiteError> {
    let b = delta_bound;
    let worst = OverlapProfile::from_deltas([0, -b, -b, b]);
    let threshold = three_block_threshold(&worst);
    for &x in xs {
        if Ratio::from_integer(i64::from(x)) <= threshold {
            return Err(SuiteError::BelowThreshold { x, threshold: threshold.to_string() });
        }
    }
    let mut lines = Vec::new();
    let range: Vec<i64> = (-b..=b).collect();
    for &x in xs {
        for &d1 in &range {
            for &d2 in &range {
                for &d3 in &range {
                    for &d4 in &range {
                        if d1 + d3 - d4 > 0 {
                            continue; // outside the RBR normalization
                        }
                        let profile = OverlapProfile::from_deltas([d1, d2, d3, d4]);
                        lines.push(check_three_block_point(x, &profile)?);
                    }
                }
            }
        }
    }
    Ok(lines)
}

fn check_three_block_point(x: u32, profile: &OverlapProfile) -> Result<ReportLine, SuiteError> {
    let (gadget, model, fixed, fam_ids) = three_block_harness(x, profile)?;
    let graph = build_twin_graph(&model)?;
    let solved = maxcut_twin_exact(&graph, &fixed)?;
    let optima = enumerate_optima(&graph, &fixed, OPTIMA_CAP)?;
    let fam_const = induced_cut(&graph, &solved.assignment, &fam_ids);
    let measured = solved.value - fam_const;

    let rbr = eval_cut_rbr(i64::from(x), profile);
    let f_bound = eval_f_bound(profile).expect("normalization checked by caller");
    let s = profile.delta(2) + profile.delta(4);
    let gap = Ratio::from_integer(measured - rbr);
    let bound_ok = gap <= f_bound;
    let equality_due = s % 2 == 0 && -s / 2 >= 0 && -s / 2 <= 2 * i64::from(x);
    let equality_ok = !equality_due || gap == f_bound;

    let max_dev = ceil_half(s);
    let mut class_ok = true;
    let mut worst_dev = 0u32;
    for opt in &optima {
        let report = classify_partition(&gadget, opt)?;
        if !report.all_within(&["b2"], max_dev) {
            class_ok = false;
        }
        if let RowVerdict::AlmostAlternating { deviation, .. } = &report.verdicts[0] {
            worst_dev = worst_dev.max(*deviation);
        }
    }
    let pass = bound_ok && equality_ok && class_ok;
    Ok(ReportLine::new(
        "3block",
        format!("x={x},d={:?}", [profile.delta(1), profile.delta(2), profile.delta(3), profile.delta(4)]),
        format!("f<={f_bound};dev<=({max_dev},b2);eq={equality_due}"),
        format!("f={gap};dev={worst_dev};optima={}", optima.len()),
        pass,
    ))
}

// ---------------------------------------------------------------------------
// Vertex gadget
// ---------------------------------------------------------------------------

/// Lemma: outer blocks of all three 3-blocks share one class, central blocks
/// take the other except for at most `|r-b|/2 + 1` intervals, and the links
/// and the three leaving longs take the central class.
pub fn suite_vertex(xs: &[u32], rbs: &[(u32, u32)]) -> Result<Vec<ReportLine>, SuiteError> {
    let mut lines = Vec::new();
    for &x in xs {
        for &(r, b) in rbs {
            lines.push(check_vertex_point(x, r, b)?);
        }
    }
    Ok(lines)
}

fn check_vertex_point(x: u32, r: u32, b: u32) -> Result<ReportLine, SuiteError> {
    let gadget = make_vertex_gadget(int(0), x)?;
    let stubbed = gadget.with_stub_longs();
    let mut blocks = stubbed.model.blocks().to_vec();
    let mut fixed = BlockAssignment::new();
    push_family(&mut blocks, &mut fixed, "fam", int(-1), FamilyCount::new(r, b));
    let model = IntervalModel::new(blocks, *stubbed.model.alpha())?;
    let graph = build_twin_graph(&model)?;
    let optima = enumerate_optima(&graph, &fixed, OPTIMA_CAP)?;

    let delta = i64::from(r) - i64::from(b);
    let tight = ceil_half(delta);
    let loose = tight + 1;
    let outers = ["t1.b1", "t1.b3", "t2.b1", "t2.b3", "t3.b1", "t3.b3"];
    let centrals = ["t1.b2", "t2.b2", "t3.b2"];
    let mut structure_ok = true;
    let mut worst_dev = 0u32;
    for opt in &optima {
        let outer_colors: Vec<Option<Color>> =
            outers.iter().map(|id| color_of(opt.get(id).unwrap(), x)).collect();
        let Some(outer) = outer_colors[0].filter(|_| outer_colors.iter().all(|c| *c == outer_colors[0]))
        else {
            structure_ok = false;
            continue;
        };
        for id in centrals {
            let y = opt.get(id).unwrap();
            let dev = match outer {
                Color::R => y,
                Color::B => 2 * x - y,
            };
            worst_dev = worst_dev.max(dev);
        }
        for id in ["l12", "l23"] {
            if color_of(opt.get(id).unwrap(), 1) != Some(outer.flip()) {
                structure_ok = false;
            }
        }
        for (_, stub) in &stubbed.stub_ids {
            if color_of(opt.get(stub).unwrap(), 1) != Some(outer.flip()) {
                structure_ok = false;
            }
        }
    }
    let pass = structure_ok && worst_dev <= loose;
    Ok(ReportLine::new(
        "vertex",
        format!("x={x},r={r},b={b}"),
        format!("outer-mono;links-longs-central;dev<={tight}or{loose}"),
        format!("dev={worst_dev};optima={}", optima.len()),
        pass,
    ))
}

// ---------------------------------------------------------------------------
// Edge gadget
// ---------------------------------------------------------------------------

/// Lemma: with equal arriving colors the edge gadget cut stays at most
/// `8k^2+6k+1`; with opposite colors it reaches at least
/// `8k^2+7k+2 - (r-b)^2/2 - |r-b|`, strictly more than the same-color case.
pub fn suite_edge(ks: &[u32], rbs: &[(u32, u32)]) -> Result<Vec<ReportLine>, SuiteError> {
    let mut lines = Vec::new();
    for &k in ks {
        for &(r, b) in rbs {
            lines.push(check_edge_point(k, r, b)?);
        }
    }
    Ok(lines)
}

fn edge_conditioned_measures(
    k: u32,
    r: u32,
    b: u32,
    left_color: Color,
    right_color: Color,
) -> Result<(i64, i64, usize), SuiteError> {
    let gadget = make_edge_gadget(int(0), k)?;
    let stubbed = gadget.with_stub_longs();
    let mut blocks = stubbed.model.blocks().to_vec();
    let mut fixed = BlockAssignment::new();
    push_family(&mut blocks, &mut fixed, "fam", int(-1), FamilyCount::new(r, b));
    fixed.set(stubbed.stub_id("in1").clone(), left_color.r_count(1));
    fixed.set(stubbed.stub_id("in2").clone(), right_color.r_count(1));
    let model = IntervalModel::new(blocks, *stubbed.model.alpha())?;
    let graph = build_twin_graph(&model)?;
    let optima = enumerate_optima(&graph, &fixed, OPTIMA_CAP)?;
    let mut keep: BTreeSet<BlockId> =
        gadget.model.blocks().iter().map(|bl| bl.id.clone()).collect();
    keep.insert(stubbed.stub_id("in1").clone());
    keep.insert(stubbed.stub_id("in2").clone());
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for opt in &optima {
        let m = induced_cut(&graph, opt, &keep);
        lo = lo.min(m);
        hi = hi.max(m);
    }
    Ok((lo, hi, optima.len()))
}

fn check_edge_point(k: u32, r: u32, b: u32) -> Result<ReportLine, SuiteError> {
    let bounds = eval_edge_cases(i64::from(k), r, b);
    let (_, same_max, n_same) = edge_conditioned_measures(k, r, b, Color::B, Color::B)?;
    let (diff_min, _, n_diff) = edge_conditioned_measures(k, r, b, Color::R, Color::B)?;
    let same_ok = same_max <= bounds.same_color_max;
    let diff_ok = Ratio::from_integer(diff_min) >= bounds.diff_color_min;
    let sep_ok = diff_min > same_max;
    Ok(ReportLine::new(
        "edge",
        format!("k={k},r={r},b={b}"),
        format!("same<={};diff>={};diff>same", bounds.same_color_max, bounds.diff_color_min),
        format!("same={same_max};diff={diff_min};optima={}", n_same + n_diff),
        same_ok && diff_ok && sep_ok,
    ))
}

// ---------------------------------------------------------------------------
// Link / stretch gadgets
// ---------------------------------------------------------------------------

/// Lemma: with the three arriving longs fixed blue, every optimum colors all
/// 3-blocks the same way (outer blocks opposite the arrivals, centrals with
/// them, up to `|r-b|/2` per central block) and the leaving longs take the
/// central class.
pub fn suite_link(specs: &[(usize, u32)], rbs: &[(u32, u32)]) -> Result<Vec<ReportLine>, SuiteError> {
    let mut lines = Vec::new();
    for &(m, x) in specs {
        for &(r, b) in rbs {
            lines.push(check_link_point(m, x, r, b)?);
        }
    }
    Ok(lines)
}

fn check_link_point(m: usize, x: u32, r: u32, b: u32) -> Result<ReportLine, SuiteError> {
    let mut spec: Vec<(PortKind, usize, Coord)> = Vec::new();
    for i in 0..3.min(m) {
        spec.push((PortKind::ArriveIn, i + 1, int(0)));
        spec.push((PortKind::LeaveFrom, m - i, int(3)));
    }
    let gadget = make_stretch_gadget(int(0), m, x, &spec)?;
    let stubbed = gadget.with_stub_longs();
    let mut blocks = stubbed.model.blocks().to_vec();
    let mut fixed = BlockAssignment::new();
    push_family(&mut blocks, &mut fixed, "fam", int(-1), FamilyCount::new(r, b));
    // Arriving longs fixed blue.
    for (label, stub) in &stubbed.stub_ids {
        if label.starts_with("in") {
            fixed.set(stub.clone(), 0);
        }
    }
    let model = IntervalModel::new(blocks, *stubbed.model.alpha())?;
    let graph = build_twin_graph(&model)?;
    let optima = enumerate_optima(&graph, &fixed, OPTIMA_CAP)?;

    let max_dev = ceil_half(i64::from(r) - i64::from(b));
    let mut ok = true;
    let mut worst_dev = 0u32;
    for opt in &optima {
        for i in 1..=m {
            for id in [format!("t{i}.b1"), format!("t{i}.b3")] {
                if color_of(opt.get(&id).unwrap(), x) != Some(Color::R) {
                    ok = false;
                }
            }
            let dev = opt.get(&format!("t{i}.b2")).unwrap(); // red intervals inside a blue block
            worst_dev = worst_dev.max(dev);
        }
        for (label, stub) in &stubbed.stub_ids {
            if label.starts_with("out") && color_of(opt.get(stub).unwrap(), 1) != Some(Color::B) {
                ok = false;
            }
        }
    }
    let pass = ok && worst_dev <= max_dev;
    Ok(ReportLine::new(
        "link",
        format!("m={m},x={x},r={r},b={b}"),
        format!("aligned;outgoing-blue;dev<={max_dev}"),
        format!("dev={worst_dev};optima={}", optima.len()),
        pass,
    ))
}

// ---------------------------------------------------------------------------
// Switch gadget
// ---------------------------------------------------------------------------

/// Lemmas: every optimum of the switch gadget has alternating rows (up to
/// the allowed top1/top4 deviation under overlap imbalance), the top exit
/// inverts the top entry color, and the bottom exit preserves the bottom
/// entry color.
pub fn suite_switch(params: &[(u32, u32)], rbs: &[(u32, u32)]) -> Result<Vec<ReportLine>, SuiteError> {
    let mut lines = Vec::new();
    for &(x, xp) in params {
        for &(r, b) in rbs {
            for (cl, cr) in
                [(Color::R, Color::R), (Color::R, Color::B), (Color::B, Color::R), (Color::B, Color::B)]
            {
                lines.push(check_switch_point(x, xp, r, b, cl, cr)?);
            }
        }
    }
    Ok(lines)
}

fn check_switch_point(
    x: u32,
    xp: u32,
    r: u32,
    b: u32,
    c_l: Color,
    c_r: Color,
) -> Result<ReportLine, SuiteError> {
    let gadget = make_switch_gadget(int(0), x, xp)?;
    let stubbed = gadget.with_stub_longs();
    let mut blocks = stubbed.model.blocks().to_vec();
    let mut fixed = BlockAssignment::new();
    push_family(&mut blocks, &mut fixed, "fam", int(-1), FamilyCount::new(r, b));
    fixed.set(stubbed.stub_id("L1").clone(), c_l.r_count(1));
    fixed.set(stubbed.stub_id("R1").clone(), c_r.r_count(1));
    let model = IntervalModel::new(blocks, *stubbed.model.alpha())?;
    let graph = build_twin_graph(&model)?;
    let optima = enumerate_optima(&graph, &fixed, OPTIMA_CAP)?;

    let delta = i64::from(r) - i64::from(b);
    let max_dev = ceil_half(delta);
    let expect_forced_dev = delta != 0 && delta % 2 == 0;
    let mut rows_ok = true;
    let mut colors_ok = true;
    let mut forced_ok = true;
    let mut worst_dev = 0u32;
    for opt in &optima {
        let report = classify_partition(&gadget, opt)?;
        // bottom row strictly alternating, top row deviating at most in
        // top1/top4
        if !report.verdicts[0].is_alternating() {
            rows_ok = false;
        }
        if !report.verdicts[1].within(&["top1", "top4"], max_dev) {
            rows_ok = false;
        }
        let mut deviants = 0;
        for id in ["top1", "top4"] {
            let y = opt.get(id).unwrap();
            if color_of(y, 2 * xp).is_none() {
                deviants += 1;
                let dev = y.min(2 * xp - y);
                worst_dev = worst_dev.max(dev);
            }
        }
        if expect_forced_dev && deviants != 1 {
            forced_ok = false;
        }
        let l2 = color_of(opt.get(stubbed.stub_id("L2")).unwrap(), 1).unwrap();
        let r2 = color_of(opt.get(stubbed.stub_id("R2")).unwrap(), 1).unwrap();
        if l2 == c_r || r2 != c_l {
            colors_ok = false;
        }
    }
    let pass = rows_ok && colors_ok && forced_ok && worst_dev <= max_dev;
    Ok(ReportLine::new(
        "switch",
        format!("x={x},x'={xp},r={r},b={b},cl={c_l},cr={c_r}"),
        format!("rows-alt;L2!={c_r};R2={c_l};dev<=({max_dev},top1|top4)"),
        format!("dev={worst_dev};optima={}", optima.len()),
        pass,
    ))
}

// ---------------------------------------------------------------------------
// Stretch compression
// ---------------------------------------------------------------------------

/// Lemma: every end-to-end distance above 2 is realizable on a stretch
/// gadget; the suite sweeps half-integer distances and rebuilds the geometry
/// for every case whose admissible interval contains them.
pub fn suite_compress(max_distance: Coord) -> Result<Vec<ReportLine>, SuiteError> {
    let mut lines = Vec::new();
    let mut d = half(5);
    while d <= max_distance {
        let mut covered = false;
        for (case_no, case) in [
            (1u8, CompressCase::SameKind),
            (2, CompressCase::ArriveThenLeave),
            (3, CompressCase::LeaveThenArrive),
        ] {
            match compress_placement(d, case) {
                Ok(p) => {
                    covered = true;
                    let (lo, hi) = case.interval(p.j);
                    let in_interval = d > int(lo) && d <= int(hi);
                    let exact = p.realized_distance() == d;
                    let valid = p.instance.validate_in_isolation().passed();
                    lines.push(ReportLine::new(
                        "compress",
                        format!("d={d},case={case_no}"),
                        format!("j-in-({lo},{hi}];exact;valid"),
                        format!("j={};d={};valid={valid}", p.j, p.realized_distance()),
                        in_interval && exact && valid,
                    ));
                }
                Err(CompressError::NoPlacement { .. }) => {}
                Err(e) => return Err(e.into()),
            }
        }
        lines.push(ReportLine::new(
            "compress",
            format!("d={d},coverage"),
            "some-case-applies".into(),
            format!("covered={covered}"),
            covered,
        ));
        d += half(1);
    }
    Ok(lines)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_block_zero_profile_is_tight() {
        let line = check_three_block_point(6, &OverlapProfile::default()).unwrap();
        assert!(line.pass, "{line}");
        // alternating optimum: f = 0, two optima (RBR and BRB)
        assert!(line.observed.contains("f=0"));
    }

    #[test]
    fn three_block_refuses_small_x() {
        assert!(matches!(
            suite_three_block(&[4], 9),
            Err(SuiteError::BelowThreshold { .. })
        ));
    }

    #[test]
    fn three_block_even_deviation_case() {
        // Delta2 = -2: optimum deviates by one interval in B2 and gains 1.
        let p = OverlapProfile::from_deltas([0, -2, 0, 0]);
        let line = check_three_block_point(6, &p).unwrap();
        assert!(line.pass, "{line}");
        assert!(line.observed.contains("f=1;dev=1"), "{line}");
    }

    #[test]
    fn edge_small_case_matches_formulas() {
        let line = check_edge_point(1, 0, 0).unwrap();
        assert!(line.pass, "{line}");
        assert!(line.observed.contains("same=15;diff=17"), "{line}");
    }

    #[test]
    fn vertex_small_case() {
        let line = check_vertex_point(7, 0, 0).unwrap();
        assert!(line.pass, "{line}");
    }

    #[test]
    fn link_small_case() {
        let line = check_link_point(3, 9, 1, 0).unwrap();
        assert!(line.pass, "{line}");
    }

    #[test]
    fn switch_small_case() {
        let line = check_switch_point(3, 2, 0, 0, Color::R, Color::R).unwrap();
        assert!(line.pass, "{line}");
    }

    #[test]
    fn switch_alternating_cut_matches_formula() {
        // Pins every block to an alternating pattern and compares the bare
        // cut against 12x'^2 + 28x^2 + 16xx'. This ties the frozen top-row
        // geometry to the algebra: a wrong overlap set would change the
        // cross-row term.
        for (x, xp) in [(3u32, 2u32), (5, 3), (7, 4)] {
            let sw = make_switch_gadget(int(0), x, xp).unwrap();
            let graph = build_twin_graph(&sw.model).unwrap();
            let expected = super::super::eval_switch_alter(i64::from(x), i64::from(xp)).unwrap();
            for (bot0, top0) in [
                (Color::R, Color::R),
                (Color::R, Color::B),
                (Color::B, Color::R),
                (Color::B, Color::B),
            ] {
                let mut a = BlockAssignment::new();
                for j in 1..=9u32 {
                    let m = if j == 1 || j == 9 { x } else { 2 * x };
                    let c = if j % 2 == 1 { bot0 } else { bot0.flip() };
                    a.set(format!("bot{j}"), c.r_count(m));
                }
                for i in 1..=4u32 {
                    let c = if i % 2 == 1 { top0 } else { top0.flip() };
                    a.set(format!("top{i}"), c.r_count(2 * xp));
                }
                assert_eq!(cut_value(&graph, &a).unwrap(), expected, "x={x} x'={xp}");
            }
        }
    }

    #[test]
    fn compress_sweep_short() {
        let lines = suite_compress(int(10)).unwrap();
        assert!(all_pass(&lines), "{:#?}", lines.iter().filter(|l| !l.pass).collect::<Vec<_>>());
    }
}
