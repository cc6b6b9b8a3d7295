//! Class numbers of imaginary quadratic fields by two independent routes:
//! reduced-form counting and the Dirichlet character-sum formula.

use num_integer::Integer;

use crate::arith::disc::{roots_of_unity, FundamentalDiscriminant};
use crate::arith::kronecker::kronecker;
use crate::error::{Error, Result};

/// Class number by counting reduced primitive binary quadratic forms
/// `(a, b, c)` with `b^2 - 4ac = d`, `|b| <= a <= c`, `b >= 0` whenever
/// `|b| = a` or `a = c`, and `gcd(a, b, c) = 1`.
pub fn class_number(d: FundamentalDiscriminant) -> u64 {
    let disc = d.get();
    let mut count = 0u64;
    // Reduced forms satisfy 3a^2 <= |d|.
    let a_max = ((d.abs() as f64 / 3.0).sqrt() as i64) + 1;
    for a in 1..=a_max {
        for b in -a..=a {
            if (b - disc).rem_euclid(2) != 0 {
                continue;
            }
            let numerator = b * b - disc;
            if numerator % (4 * a) != 0 {
                continue;
            }
            let c = numerator / (4 * a);
            if c < a {
                continue;
            }
            if b < 0 && (-b == a || a == c) {
                continue;
            }
            if a.gcd(&b).gcd(&c) != 1 {
                continue;
            }
            count += 1;
        }
    }
    count
}

/// Class number by the Dirichlet formula
/// `h = w / (2|d|) * | sum_{a=1}^{|d|-1} chi_d(a) * a |`.
///
/// Fails if the character sum does not produce an integer, which would mean
/// the input is not a fundamental discriminant.
pub fn class_number_dirichlet(d: FundamentalDiscriminant) -> Result<u64> {
    let m = d.abs();
    let sum: i128 = (1..m)
        .map(|a| kronecker(d.get(), a) as i128 * a as i128)
        .sum();
    let numerator = roots_of_unity(d) as i128 * sum.abs();
    let denominator = 2 * m as i128;
    if numerator % denominator != 0 {
        return Err(Error::Inconsistent(format!(
            "Dirichlet class number formula gave {numerator}/{denominator} for d = {d}"
        )));
    }
    let h = (numerator / denominator) as u64;
    if h == 0 {
        return Err(Error::Inconsistent(format!(
            "Dirichlet class number formula gave 0 for d = {d}"
        )));
    }
    Ok(h)
}
