//! Coefficient multisets exactly as they appear in the published closed forms
//! for k = 1..5, kept verbatim (including their sign slips) for regression.

use num_rational::BigRational;

use super::ring::rat;

/// (num, den, π power) per bracket term, in printed order.
const PRINTED: [&[(i64, i64, u32)]; 5] = [
    &[(1, 1, 0)],
    &[(1, 1, 1), (4, 1, 0)],
    &[(7, 4, 2), (6, 1, 0), (6, 1, 1), (-6, 1, 0)],
    &[
        (-5, 2, 3),
        (-12, 1, 1),
        (-14, 1, 2),
        (-24, 1, 0),
        (8, 1, 0),
        (12, 1, 1),
    ],
    &[
        (61, 16, 4),
        (35, 1, 2),
        (30, 1, 0),
        (25, 1, 3),
        (60, 1, 1),
        (20, 1, 1),
        (-35, 1, 2),
        (-40, 1, 0),
        (10, 1, 0),
    ],
];

/// Printed bracket denominators 2^{3k−1} k! apply to every row.
pub fn printed_coefficients(k: usize) -> Option<Vec<(BigRational, u32)>> {
    let row = PRINTED.get(k.checked_sub(1)?)?;
    Some(row.iter().map(|&(n, d, j)| (rat(n, d), j)).collect())
}

/// Sorted copy, for multiset comparison.
pub fn sorted(mut v: Vec<(BigRational, u32)>) -> Vec<(BigRational, u32)> {
    v.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
    v
}
