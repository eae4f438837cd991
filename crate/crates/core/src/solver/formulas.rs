//! Closed-form evaluators for the gadget cut algebra.
//!
//! These are literal transcriptions; where the surrounding analysis produces
//! half-integers (odd `r - b`), values are returned as exact rationals.

use super::{OverlapProfile, Rational};
use num_rational::Ratio;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormulaError {
    #[error("RBR normalization violated: Delta1 + Delta3 - Delta4 = {0} > 0; swap to the BRB form first")]
    NormalizationViolated(i64),
    #[error("switch parameters must satisfy x/2 < x' < x, got x={x}, x'={x_prime}")]
    BadSwitchParams { x: i64, x_prime: i64 },
}

/// Alternating cut value of a 3-block in the R-B-R orientation with the four
/// external families of the overlap profile.
pub fn eval_cut_rbr(x: i64, profile: &OverlapProfile) -> i64 {
    let [f1, f2, _f3, f4] = profile.families;
    let f3 = profile.families[2];
    4 * x * x
        + 2 * i64::from(f2.r + f2.b) * x
        + i64::from(f1.b + f3.b) * x
        + i64::from(2 * f4.r + f4.b) * x
}

/// The B-R-B orientation of [`eval_cut_rbr`].
pub fn eval_cut_brb(x: i64, profile: &OverlapProfile) -> i64 {
    let [f1, f2, _f3, f4] = profile.families;
    let f3 = profile.families[2];
    4 * x * x
        + 2 * i64::from(f2.r + f2.b) * x
        + i64::from(f1.r + f3.r) * x
        + i64::from(f4.r + 2 * f4.b) * x
}

/// `cut_BRB - cut_RBR = (Delta1 + Delta3 - Delta4) x`.
pub fn cut_brb_minus_rbr(x: i64, profile: &OverlapProfile) -> i64 {
    (profile.delta(1) + profile.delta(3) - profile.delta(4)) * x
}

/// Real-relaxation ceiling on `optimum - cut_RBR`: a quarter of
/// `(Delta2 + Delta4)^2`. Requires the RBR normalization.
pub fn eval_f_bound(profile: &OverlapProfile) -> Result<Rational, FormulaError> {
    let norm = profile.delta(1) + profile.delta(3) - profile.delta(4);
    if norm > 0 {
        return Err(FormulaError::NormalizationViolated(norm));
    }
    let s = profile.delta(2) + profile.delta(4);
    Ok(Ratio::new(s * s, 4))
}

/// The two bounds of the edge-gadget separation plus the four internal case
/// values from its analysis, with `Delta = |r - b| / 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeCaseValues {
    pub same_color_max: i64,
    pub diff_color_min: Rational,
    pub case_values: [Rational; 4],
}

pub fn eval_edge_cases(k: i64, r: u32, b: u32) -> EdgeCaseValues {
    let rb = i64::from(r) - i64::from(b);
    let abs_rb = rb.abs();
    let delta = Ratio::new(abs_rb, 2);
    let base6 = Ratio::from_integer(8 * k * k + 6 * k);
    let base7 = Ratio::from_integer(8 * k * k + 7 * k);
    let one = Ratio::from_integer(1);
    let two = Ratio::from_integer(2);
    EdgeCaseValues {
        same_color_max: 8 * k * k + 6 * k + 1,
        diff_color_min: base7 + two - Ratio::new(rb * rb, 2) - Ratio::from_integer(abs_rb),
        case_values: [
            base6 - delta * delta - two * delta + one,
            base6,
            base6 - delta * delta,
            base7 - two * delta * delta - two * delta + two,
        ],
    }
}

/// Alternating cut of the switch gadget: `12x'^2 + 28x^2 + 16xx'`.
pub fn eval_switch_alter(x: i64, x_prime: i64) -> Result<i64, FormulaError> {
    if !(2 * x_prime > x && x_prime < x) {
        return Err(FormulaError::BadSwitchParams { x, x_prime });
    }
    Ok(12 * x_prime * x_prime + 28 * x * x + 16 * x * x_prime)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::FamilyCount;

    #[test]
    fn rbr_at_zero_profile_is_4x2() {
        let p = OverlapProfile::default();
        assert_eq!(eval_cut_rbr(5, &p), 100);
        assert_eq!(eval_cut_brb(5, &p), 100);
    }

    #[test]
    fn brb_minus_rbr_matches_difference_formula() {
        let p = OverlapProfile::new([
            FamilyCount::new(1, 0),
            FamilyCount::default(),
            FamilyCount::default(),
            FamilyCount::default(),
        ]);
        assert_eq!(eval_cut_brb(5, &p) - eval_cut_rbr(5, &p), 5);
        assert_eq!(cut_brb_minus_rbr(5, &p), 5);
    }

    #[test]
    fn rbr_with_family_four() {
        let p = OverlapProfile::new([
            FamilyCount::default(),
            FamilyCount::default(),
            FamilyCount::default(),
            FamilyCount::new(2, 0),
        ]);
        assert_eq!(eval_cut_rbr(3, &p), 48);
    }

    #[test]
    fn f_bound_values() {
        assert_eq!(eval_f_bound(&OverlapProfile::default()).unwrap(), Ratio::from_integer(0));
        let p = OverlapProfile::from_deltas([0, -2, 0, 0]);
        assert_eq!(eval_f_bound(&p).unwrap(), Ratio::from_integer(1));
        // Delta2=1, Delta4=-2 with Delta1=Delta3=-1 keeps the normalization.
        let p = OverlapProfile::from_deltas([-1, 1, -1, -2]);
        assert_eq!(eval_f_bound(&p).unwrap(), Ratio::new(1, 4));
        // Violated normalization is an error.
        let p = OverlapProfile::from_deltas([1, 0, 1, 0]);
        assert!(eval_f_bound(&p).is_err());
    }

    #[test]
    fn edge_case_bounds() {
        let e = eval_edge_cases(3, 1, 1);
        assert_eq!(e.same_color_max, 91);
        assert_eq!(e.diff_color_min, Ratio::from_integer(95));
        let e = eval_edge_cases(1, 0, 0);
        assert_eq!(e.same_color_max, 15);
        assert_eq!(e.diff_color_min, Ratio::from_integer(17));
        let e = eval_edge_cases(5, 2, 0);
        assert_eq!(e.diff_color_min, Ratio::from_integer(233));
    }

    #[test]
    fn switch_alter_values() {
        assert_eq!(eval_switch_alter(3, 2).unwrap(), 396);
        assert_eq!(eval_switch_alter(5, 3).unwrap(), 1048);
        assert!(eval_switch_alter(2, 1).is_err());
        assert!(eval_switch_alter(4, 4).is_err());
    }
}
