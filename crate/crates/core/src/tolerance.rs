//! Comparison tolerances shared by every checker.

/// Relative headroom granted to the right-hand side of an inequality.
pub const REL_SLACK: f64 = 1e-9;
/// Absolute headroom, which also decides the degenerate `rhs = 0` case.
pub const ABS_SLACK: f64 = 1e-12;

/// `lhs <= rhs` under the global slack rule.
#[inline]
pub fn within_slack(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs * (1.0 + REL_SLACK) + ABS_SLACK
}
