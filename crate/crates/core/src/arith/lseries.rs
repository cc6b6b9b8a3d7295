//! Evaluation of L(2, chi_d) by direct summation with a rigorous tail bound.

use crate::arith::disc::FundamentalDiscriminant;
use crate::arith::kronecker::kronecker;
use crate::error::{Error, Result};

/// Hard ceiling on the number of series terms a single evaluation may use.
pub const MAX_TERMS: u64 = 2_000_000_000;

/// Precompute a character table when the modulus is at most this size;
/// larger moduli evaluate the symbol term by term.
const CHI_TABLE_LIMIT: u64 = 16_777_216;

/// Rigorous bound on the truncation error after `n_terms` terms: partial
/// character sums are bounded by the period, and Abel summation turns that
/// into `2|d| / N^2`.
pub fn abel_tail_bound(d_abs: u64, n_terms: u64) -> f64 {
    2.0 * d_abs as f64 / (n_terms as f64 * n_terms as f64)
}

/// L(2, chi_d) = sum chi_d(n) / n^2, truncated so the Abel tail bound is at
/// most `tol`. Returns the partial sum and the tail bound actually achieved.
///
/// The sum runs from the smallest terms upward, so the float rounding error
/// stays far below the truncation bound.
pub fn dirichlet_l2(d: FundamentalDiscriminant, tol: f64) -> Result<(f64, f64)> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Domain(format!("tolerance {tol} must be positive")));
    }
    let m = d.abs();
    let n_terms = ((2.0 * m as f64 / tol).sqrt().ceil() as u64).max(2);
    if n_terms > MAX_TERMS {
        return Err(Error::Budget(format!(
            "L(2, chi_{}) at tolerance {tol:e} needs {n_terms} terms (budget {MAX_TERMS})",
            d.get()
        )));
    }
    let table: Option<Vec<i8>> = if m <= CHI_TABLE_LIMIT {
        Some(chi_table(d.get(), m))
    } else {
        None
    };
    let chi = |n: u64| -> i32 {
        match &table {
            Some(t) => t[(n % m) as usize] as i32,
            None => kronecker(d.get(), n),
        }
    };
    let mut sum = 0.0f64;
    for n in (1..=n_terms).rev() {
        let c = chi(n);
        if c != 0 {
            sum += c as f64 / (n as f64 * n as f64);
        }
    }
    let bound = abel_tail_bound(m, n_terms);
    if sum.is_nan() || sum <= 0.0 {
        // L(2, chi) >= 1 - (pi^2/6 - 1) > 0.35, so this cannot happen for a
        // genuine fundamental discriminant.
        return Err(Error::Inconsistent(format!(
            "nonpositive partial sum {sum} for L(2, chi_{})",
            d.get()
        )));
    }
    Ok((sum, bound))
}

/// One period of chi_d, filled through complete multiplicativity over a
/// smallest-prime-factor sieve; only primes hit the symbol routine.
fn chi_table(d: i64, m: u64) -> Vec<i8> {
    let m = m as usize;
    let mut spf = vec![0u32; m];
    let mut i = 2usize;
    while i < m {
        if spf[i] == 0 {
            for j in (i..m).step_by(i) {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
            }
        }
        i += 1;
    }
    let mut chi = vec![0i8; m];
    if m > 1 {
        chi[1] = 1;
    }
    for n in 2..m {
        let p = spf[n] as usize;
        chi[n] = if n == p {
            kronecker(d, n as u64) as i8
        } else {
            chi[p] * chi[n / p]
        };
    }
    chi
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd(d: i64) -> FundamentalDiscriminant {
        FundamentalDiscriminant::new(d).unwrap()
    }

    #[test]
    fn sieved_table_matches_direct_symbols() {
        for d in [-3i64, -4, -84, -163, -5003] {
            let m = d.unsigned_abs();
            let table = chi_table(d, m);
            for n in 0..m {
                assert_eq!(table[n as usize] as i32, kronecker(d, n), "chi_{d}({n})");
            }
        }
    }

    /// Catalan's constant by its defining alternating series, with the
    /// alternating-series tail bound. Independent of the kronecker/Abel
    /// machinery used by the implementation.
    fn catalan_oracle(k_terms: u64) -> (f64, f64) {
        let mut sum = 0.0f64;
        for k in (0..k_terms).rev() {
            let term = 1.0 / ((2 * k + 1) as f64).powi(2);
            if k % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        let bound = 1.0 / ((2 * k_terms + 1) as f64).powi(2);
        (sum, bound)
    }

    #[test]
    fn gaussian_l2_is_catalans_constant() {
        let (value, err) = dirichlet_l2(fd(-4), 1e-10).unwrap();
        let (oracle, oracle_err) = catalan_oracle(400_000);
        assert!(err <= 1e-10);
        assert!(
            (value - oracle).abs() <= err + oracle_err,
            "value {value} vs oracle {oracle}"
        );
        // Literature value of Catalan's constant.
        assert!((value - 0.915_965_594_177_219).abs() < 2e-10);
    }

    #[test]
    fn tail_bound_formula() {
        assert_eq!(abel_tail_bound(100, 1_000_000), 2e-10);
    }

    #[test]
    fn self_consistency_across_tolerances() {
        for d in [-3i64, -7, -23, -84, -163] {
            let t = 1e-6;
            let (v1, e1) = dirichlet_l2(fd(d), t).unwrap();
            let (v2, e2) = dirichlet_l2(fd(d), t / 100.0).unwrap();
            assert!(e1 <= t && e2 <= t / 100.0);
            assert!((v1 - v2).abs() <= t, "L(2) self-consistency at d = {d}");
        }
    }

    #[test]
    fn budget_is_enforced() {
        let err = dirichlet_l2(fd(-84), 1e-18).unwrap_err();
        assert!(matches!(err, Error::Budget(_)));
    }

    #[test]
    fn positivity() {
        for d in [-3i64, -4, -8, -20, -55, -95] {
            let (value, _) = dirichlet_l2(fd(d), 1e-8).unwrap();
            assert!(value > 0.35, "L(2, chi_{d}) = {value}");
        }
    }
}
