//! Exact rational coordinates.
//!
//! All geometry in this crate is done over `Ratio<i64>`. Layouts produced by
//! the builders only ever use denominators dividing 8: integer anchors for the
//! block grid, halves for buffer anchors, and eighths for the switch-gadget
//! top row.

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

pub type Coord = Ratio<i64>;

/// Shorthand for an exact coordinate, e.g. `rat(7, 2)` for 3.5.
pub fn rat(num: i64, den: i64) -> Coord {
    Ratio::new(num, den)
}

pub fn int(v: i64) -> Coord {
    Ratio::from_integer(v)
}

pub fn half(num: i64) -> Coord {
    Ratio::new(num, 2)
}

pub fn zero() -> Coord {
    Ratio::zero()
}

pub fn one() -> Coord {
    Ratio::one()
}

/// True when the coordinate lies on the eighth-integer grid.
pub fn on_eighth_grid(c: &Coord) -> bool {
    8 % *c.denom() == 0
}

/// Canonical `num/den` form used by the model text format. The denominator is
/// always printed, so `3` serializes as `3/1` and round-trips bit-exactly.
pub fn fmt_ratio(c: &Coord) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

/// Parses the canonical `num/den` form.
pub fn parse_ratio(s: &str) -> Result<Coord, String> {
    let (num, den) = s
        .split_once('/')
        .ok_or_else(|| format!("expected num/den, got {s:?}"))?;
    let num = i64::from_str(num).map_err(|e| format!("bad numerator {num:?}: {e}"))?;
    let den = i64::from_str(den).map_err(|e| format!("bad denominator {den:?}: {e}"))?;
    if den == 0 {
        return Err("zero denominator".into());
    }
    Ok(Ratio::new(num, den))
}

/// Absolute value helper, since call sites read better than `.abs()` chains
/// on references.
pub fn abs(c: &Coord) -> Coord {
    c.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_round_trip_is_canonical() {
        for c in [rat(7, 2), int(-3), rat(45, 8), rat(6, 4)] {
            let s = fmt_ratio(&c);
            assert_eq!(parse_ratio(&s).unwrap(), c);
        }
        // 6/4 reduces, so the canonical form is 3/2.
        assert_eq!(fmt_ratio(&rat(6, 4)), "3/2");
    }

    #[test]
    fn eighth_grid() {
        assert!(on_eighth_grid(&rat(45, 8)));
        assert!(on_eighth_grid(&rat(7, 2)));
        assert!(!on_eighth_grid(&rat(1, 3)));
    }
}
