//! Fundamental discriminants of imaginary quadratic fields.

use crate::error::{Error, Result};

/// The discriminant of an imaginary quadratic field: a negative integer
/// congruent to 1 mod 4 and squarefree, or congruent to 0 mod 4 with
/// squarefree quarter congruent to 2 or 3 mod 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FundamentalDiscriminant(i64);

impl FundamentalDiscriminant {
    pub fn new(d: i64) -> Result<Self> {
        if is_fundamental(d) {
            Ok(FundamentalDiscriminant(d))
        } else {
            Err(Error::Domain(format!(
                "{d} is not a negative fundamental discriminant"
            )))
        }
    }

    pub fn get(self) -> i64 {
        self.0
    }

    pub fn abs(self) -> u64 {
        self.0.unsigned_abs()
    }
}

impl std::fmt::Display for FundamentalDiscriminant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// True iff `d` is the discriminant of an imaginary quadratic field.
pub fn is_fundamental(d: i64) -> bool {
    if d > -3 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d.unsigned_abs()),
        0 => {
            let q = d / 4;
            matches!(q.rem_euclid(4), 2 | 3) && is_squarefree(q.unsigned_abs())
        }
        _ => false,
    }
}

/// Order of the group of roots of unity in the field of discriminant `d`:
/// 6 for the Eisenstein field, 4 for the Gaussian field, 2 otherwise.
pub fn roots_of_unity(d: FundamentalDiscriminant) -> u32 {
    match d.get() {
        -3 => 6,
        -4 => 4,
        _ => 2,
    }
}

fn is_squarefree(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

/// All fundamental discriminants `d` with `d_min <= d <= d_max`, ordered by
/// ascending absolute value.
pub fn fundamental_in_range(d_min: i64, d_max: i64) -> Vec<FundamentalDiscriminant> {
    let mut out = Vec::new();
    if d_min > d_max {
        return out;
    }
    let hi = d_max.min(-3);
    let mut d = hi;
    while d >= d_min {
        if is_fundamental(d) {
            out.push(FundamentalDiscriminant(d));
        }
        d -= 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_and_eisenstein_are_fundamental() {
        assert!(is_fundamental(-3));
        assert!(is_fundamental(-4));
    }

    #[test]
    fn non_fundamental_rejections() {
        assert!(!is_fundamental(-1));
        assert!(!is_fundamental(-2));
        assert!(!is_fundamental(-12), "-12/4 = -3 = 1 mod 4");
        assert!(!is_fundamental(-9), "not squarefree");
        assert!(!is_fundamental(-18), "2 mod 4");
        assert!(!is_fundamental(-25));
        assert!(!is_fundamental(-100), "-100/4 = -25 not squarefree");
        assert!(!is_fundamental(3), "positive");
    }

    #[test]
    fn fundamental_list_to_100_matches_published_table() {
        // Negated fundamental discriminants up to 100 (OEIS A003657 prefix).
        let expected: Vec<i64> = vec![
            3, 4, 7, 8, 11, 15, 19, 20, 23, 24, 31, 35, 39, 40, 43, 47, 51, 52, 55, 56, 59, 67, 68,
            71, 79, 83, 84, 87, 88, 91, 95,
        ];
        let got: Vec<i64> = fundamental_in_range(-100, -3)
            .iter()
            .map(|d| -d.get())
            .collect();
        assert_eq!(got, expected);
        assert_eq!(got.len(), 31);
    }

    #[test]
    fn roots_of_unity_rule() {
        let w = |d| roots_of_unity(FundamentalDiscriminant::new(d).unwrap());
        assert_eq!(w(-3), 6);
        assert_eq!(w(-4), 4);
        assert_eq!(w(-7), 2);
        assert_eq!(w(-84), 2);
    }

    #[test]
    fn empty_interval_has_no_fundamentals() {
        assert!(fundamental_in_range(-10, -9).is_empty());
        assert!(fundamental_in_range(-3, -10).is_empty(), "inverted range");
    }
}
