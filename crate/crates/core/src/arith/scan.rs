//! Covolume filter over imaginary quadratic fields: Borel's lower bound per
//! discriminant, the Brauer-Siegel inequality, the crude `2^20 * pi^4`
//! cutoff, and the scan that assembles them into an ordered report.

use std::f64::consts::PI;

use serde::Serialize;

use crate::arith::class_number::class_number;
use crate::arith::disc::{fundamental_in_range, roots_of_unity, FundamentalDiscriminant};
use crate::arith::lseries::dirichlet_l2;
use crate::constants::{CRUDE_DISC_BOUND, CRUDE_DISC_BOUND_FLOOR, VOLUME_UPPER_BOUND};
use crate::error::{Error, Result};

/// zeta(2) = pi^2 / 6, the rational-field factor of the Dedekind zeta value.
pub const ZETA_2: f64 = PI * PI / 6.0;

/// The sixteen discriminants whose Bianchi groups are known, from published
/// orbifold pictures, to be commensurable with a reflection group.
pub const HATCHER_DISCRIMINANTS: [i64; 16] = [
    -3, -4, -7, -8, -11, -15, -19, -20, -24, -39, -40, -52, -55, -56, -68, -84,
];

/// Everything the scan computes for a single field.
#[derive(Debug, Clone, Serialize)]
pub struct FieldRecord {
    /// Fundamental discriminant (negative).
    pub d: i64,
    /// Class number.
    pub h: u64,
    /// Order of the group of roots of unity.
    pub w: u32,
    /// L(2, chi_d).
    #[serde(rename = "L2")]
    pub l2: f64,
    /// Rigorous truncation bound on `l2`.
    #[serde(rename = "L2_err")]
    pub l2_error: f64,
    /// Dedekind zeta at 2: zeta(2) * L(2, chi_d).
    #[serde(rename = "zeta_k2")]
    pub zeta2: f64,
    /// Borel's lower bound on the minimal covolume in the commensurability
    /// class of the Bianchi group of this field.
    pub borel_lower: f64,
    /// Whether the Borel bound clears the cutoff.
    pub passes_exact: bool,
    /// Whether the crude bound sqrt(|d|)/16 clears the cutoff.
    pub passes_crude: bool,
}

/// Scan parameters; `d_min <= d <= d_max < 0` is the discriminant window.
#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub d_min: i64,
    pub d_max: i64,
    /// Covolume cutoff the Borel bound is compared against.
    pub cutoff: f64,
    /// Tail-bound tolerance for the L-series evaluations.
    pub tol: f64,
    /// Worker threads; 1 runs strictly serially. Output is identical either
    /// way, records are computed independently per discriminant.
    pub threads: usize,
    /// Records are produced (and handed to the progress sink) in chunks of
    /// this many fundamental discriminants.
    pub chunk_size: usize,
    /// Skip discriminants with |d| at or below this value (checkpoint
    /// resume).
    pub resume_after: Option<u64>,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            d_min: -100_000,
            d_max: -3,
            cutoff: VOLUME_UPPER_BOUND,
            tol: 1e-6,
            threads: 1,
            chunk_size: 1024,
            resume_after: None,
        }
    }
}

/// Scan output: records ordered by ascending |d| plus summary counters.
#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub cutoff: f64,
    pub crude_bound: f64,
    pub d_min: i64,
    pub d_max: i64,
    pub n_scanned: u64,
    pub n_passing: u64,
    pub records: Vec<FieldRecord>,
}

/// Borel's covolume lower bound `|d|^{3/2} zeta_k(2) / (16 pi^2 h)`.
pub fn borel_lower_bound(d_abs: u64, h: u64, zeta2: f64) -> f64 {
    (d_abs as f64).powf(1.5) * zeta2 / (16.0 * PI * PI * h as f64)
}

/// The Brauer-Siegel inequality `|d| zeta_k(2) >= h (2 pi)^2 / (2w)`.
pub fn brauer_siegel_holds(rec: &FieldRecord) -> bool {
    let lhs = rec.d.unsigned_abs() as f64 * rec.zeta2;
    let rhs = rec.h as f64 * (2.0 * PI) * (2.0 * PI) / (2.0 * rec.w as f64);
    lhs >= rhs
}

/// The crude discriminant cutoff `2^20 * pi^4`: `sqrt(|d|)/16 <= 64 pi^2`
/// exactly when `|d| <= 2^20 pi^4`.
pub fn crude_cutoff() -> f64 {
    CRUDE_DISC_BOUND
}

/// Whether `sqrt(|d|)/16 <= cutoff`. At the default cutoff this is decided
/// by exact integer comparison against floor(2^20 pi^4), so no boundary
/// discriminant is misclassified by floating point.
pub fn crude_passes(d_abs: u64, cutoff: f64) -> bool {
    if cutoff == VOLUME_UPPER_BOUND {
        d_abs <= CRUDE_DISC_BOUND_FLOOR
    } else {
        (d_abs as f64).sqrt() / 16.0 <= cutoff
    }
}

/// Compute the full record for one discriminant.
pub fn field_record(d: FundamentalDiscriminant, cutoff: f64, tol: f64) -> Result<FieldRecord> {
    let (l2, l2_error) = dirichlet_l2(d, tol)?;
    let zeta2 = ZETA_2 * l2;
    let h = class_number(d);
    let borel_lower = borel_lower_bound(d.abs(), h, zeta2);
    Ok(FieldRecord {
        d: d.get(),
        h,
        w: roots_of_unity(d),
        l2,
        l2_error,
        zeta2,
        borel_lower,
        passes_exact: borel_lower <= cutoff,
        passes_crude: crude_passes(d.abs(), cutoff),
    })
}

/// Run the scan, emitting nothing until it completes.
pub fn scan(config: &ScanConfig) -> Result<ScanReport> {
    scan_with_progress(config, |_, _| Ok(()))
}

/// Run the scan, invoking `progress(last_completed_abs_d, chunk)` after each
/// chunk of records is finished, in ascending |d| order. The sink is where
/// checkpointing and incremental output hook in.
pub fn scan_with_progress<F>(config: &ScanConfig, mut progress: F) -> Result<ScanReport>
where
    F: FnMut(u64, &[FieldRecord]) -> Result<()>,
{
    if config.d_min > config.d_max || config.d_max >= 0 {
        return Err(Error::Domain(format!(
            "scan range [{}, {}] must satisfy d_min <= d_max < 0",
            config.d_min, config.d_max
        )));
    }
    if config.cutoff.is_nan() || config.cutoff <= 0.0 {
        return Err(Error::Domain("cutoff must be positive".into()));
    }
    let mut candidates = fundamental_in_range(config.d_min, config.d_max);
    if let Some(resume) = config.resume_after {
        candidates.retain(|d| d.abs() > resume);
    }
    let chunk_size = config.chunk_size.max(1);
    let threads = config.threads.max(1);

    let mut records: Vec<FieldRecord> = Vec::with_capacity(candidates.len());
    for chunk in candidates.chunks(chunk_size) {
        let mut results: Vec<Option<Result<FieldRecord>>> =
            (0..chunk.len()).map(|_| None).collect();
        if threads == 1 || chunk.len() == 1 {
            for (slot, d) in results.iter_mut().zip(chunk) {
                *slot = Some(field_record(*d, config.cutoff, config.tol));
            }
        } else {
            // Contiguous split; each worker owns a disjoint slice of slots,
            // so the assembled order never depends on scheduling.
            let per = chunk.len().div_ceil(threads);
            std::thread::scope(|scope| {
                for (slots, ds) in results.chunks_mut(per).zip(chunk.chunks(per)) {
                    scope.spawn(move || {
                        for (slot, d) in slots.iter_mut().zip(ds) {
                            *slot = Some(field_record(*d, config.cutoff, config.tol));
                        }
                    });
                }
            });
        }
        let start = records.len();
        for slot in results {
            records.push(slot.expect("chunk slot filled")?);
        }
        let done = records.last().map(|r| r.d.unsigned_abs()).unwrap_or(0);
        progress(done, &records[start..])?;
    }

    let n_passing = records.iter().filter(|r| r.passes_exact).count() as u64;
    Ok(ScanReport {
        cutoff: config.cutoff,
        crude_bound: CRUDE_DISC_BOUND,
        d_min: config.d_min,
        d_max: config.d_max,
        n_scanned: records.len() as u64,
        n_passing,
        records,
    })
}

/// True iff all sixteen known reflective Bianchi discriminants appear in the
/// report and pass the exact Borel filter.
pub fn hatcher_check(report: &ScanReport) -> bool {
    HATCHER_DISCRIMINANTS
        .iter()
        .all(|&d| report.records.iter().any(|r| r.d == d && r.passes_exact))
}

/// Bit-exact CSV header for scan reports.
pub const CSV_HEADER: &str = "d,h,w,L2,L2_err,zeta_k2,borel_lower,passes_exact,passes_crude";

/// One CSV row; floats carry 12 significant digits.
pub fn csv_row(rec: &FieldRecord) -> String {
    format!(
        "{},{},{},{:.11e},{:.11e},{:.11e},{:.11e},{},{}",
        rec.d,
        rec.h,
        rec.w,
        rec.l2,
        rec.l2_error,
        rec.zeta2,
        rec.borel_lower,
        rec.passes_exact,
        rec.passes_crude
    )
}

/// Whole report as CSV (header plus one row per record).
pub fn report_to_csv(report: &ScanReport) -> String {
    let mut out = String::with_capacity(64 * (report.records.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for rec in &report.records {
        out.push_str(&csv_row(rec));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd(d: i64) -> FundamentalDiscriminant {
        FundamentalDiscriminant::new(d).unwrap()
    }

    fn small_scan(d_min: i64, d_max: i64) -> ScanReport {
        let config = ScanConfig {
            d_min,
            d_max,
            tol: 1e-8,
            ..ScanConfig::default()
        };
        scan(&config).unwrap()
    }

    #[test]
    fn eisenstein_borel_bound() {
        // The smallest-covolume cusped arithmetic candidate: d = -3, h = 1.
        let rec = field_record(fd(-3), VOLUME_UPPER_BOUND, 1e-10).unwrap();
        assert_eq!(rec.h, 1);
        assert_eq!(rec.w, 6);
        // zeta_k(2) = zeta(2) L(2, chi_-3); the bound is 3^{3/2} zeta_k(2) / (16 pi^2).
        let expected = 27f64.sqrt() * rec.zeta2 / (16.0 * PI * PI);
        assert!((rec.borel_lower - expected).abs() < 1e-15);
        assert!((rec.borel_lower - 0.0423).abs() < 2e-4);
        assert!(rec.passes_exact && rec.passes_crude);
    }

    #[test]
    fn placeholder_reduction() {
        // With h = 1 and zeta2 = 1 the formula reduces to |d|^{3/2}/(16 pi^2).
        let b = borel_lower_bound(49, 1, 1.0);
        assert!((b - 343.0 / (16.0 * PI * PI)).abs() < 1e-12);
    }

    #[test]
    fn largest_hatcher_discriminant_passes_comfortably() {
        let rec = field_record(fd(-84), VOLUME_UPPER_BOUND, 1e-10).unwrap();
        assert_eq!(rec.h, 4);
        assert!(rec.passes_exact);
        assert!(
            VOLUME_UPPER_BOUND / rec.borel_lower > 100.0,
            "margin is only {}",
            VOLUME_UPPER_BOUND / rec.borel_lower
        );
    }

    #[test]
    fn brauer_siegel_small_fields() {
        let r3 = field_record(fd(-3), VOLUME_UPPER_BOUND, 1e-10).unwrap();
        let r4 = field_record(fd(-4), VOLUME_UPPER_BOUND, 1e-10).unwrap();
        assert!(brauer_siegel_holds(&r3));
        assert!(brauer_siegel_holds(&r4));
        // d = -3: 3 * 1.28519 vs (2 pi)^2 / 12.
        assert!((r3.zeta2 - 1.28519).abs() < 1e-4);
    }

    #[test]
    fn crude_cutoff_boundary() {
        assert!(crude_passes(84, VOLUME_UPPER_BOUND));
        assert!(crude_passes(CRUDE_DISC_BOUND_FLOOR, VOLUME_UPPER_BOUND));
        assert!(!crude_passes(
            CRUDE_DISC_BOUND_FLOOR + 1,
            VOLUME_UPPER_BOUND
        ));
        // Generic cutoff falls back to direct evaluation.
        assert!(crude_passes(255, 1.0));
        assert!(!crude_passes(257, 1.0));
    }

    #[test]
    fn scan_to_100_matches_fundamental_count() {
        let report = small_scan(-100, -3);
        assert_eq!(report.n_scanned, 31);
        assert_eq!(report.n_passing, 31, "every small field passes 64 pi^2");
        let ds: Vec<i64> = report.records.iter().map(|r| r.d).collect();
        let mut sorted = ds.clone();
        sorted.sort_by_key(|d| d.unsigned_abs());
        assert_eq!(ds, sorted, "records ordered by |d|");
        assert!(ds.windows(2).all(|w| w[0] != w[1]), "strict ordering");
    }

    #[test]
    fn scan_empty_interval() {
        let report = small_scan(-10, -9);
        assert_eq!(report.n_scanned, 0);
        assert!(report.records.is_empty());
        assert_eq!(
            report_to_csv(&report),
            format!("{CSV_HEADER}\n"),
            "header-only CSV"
        );
    }

    #[test]
    fn scan_rejects_bad_ranges() {
        let inverted = ScanConfig {
            d_min: -3,
            d_max: -10,
            ..ScanConfig::default()
        };
        assert!(scan(&inverted).is_err());
        let nonnegative = ScanConfig {
            d_min: -10,
            d_max: 5,
            ..ScanConfig::default()
        };
        assert!(scan(&nonnegative).is_err());
    }

    #[test]
    fn hatcher_list_all_present_and_passing() {
        let report = small_scan(-84, -3);
        assert!(hatcher_check(&report));
        // Dropping the largest one fails the check.
        let mut truncated = report.clone();
        truncated.records.retain(|r| r.d != -84);
        assert!(!hatcher_check(&truncated));
        // An absurd cutoff fails it too.
        let strict = scan(&ScanConfig {
            d_min: -84,
            d_max: -3,
            cutoff: 0.01,
            tol: 1e-8,
            ..ScanConfig::default()
        })
        .unwrap();
        assert!(!hatcher_check(&strict));
    }

    #[test]
    fn record_formula_invariants() {
        let report = small_scan(-300, -3);
        for rec in &report.records {
            let zeta2 = ZETA_2 * rec.l2;
            assert!((rec.zeta2 / zeta2 - 1.0).abs() < 1e-12);
            let borel = borel_lower_bound(rec.d.unsigned_abs(), rec.h, rec.zeta2);
            assert!((rec.borel_lower / borel - 1.0).abs() < 1e-12);
            assert!(rec.l2_error <= 1e-8);
            assert!(brauer_siegel_holds(rec), "Brauer-Siegel at d = {}", rec.d);
            if rec.w == 2 {
                // Combining Borel with Brauer-Siegel at w = 2 dominates the
                // crude bound.
                let crude = (rec.d.unsigned_abs() as f64).sqrt() / 16.0;
                assert!(
                    rec.borel_lower >= crude * (1.0 - 1e-9),
                    "crude domination at d = {}",
                    rec.d
                );
                if rec.passes_exact {
                    assert!(rec.passes_crude);
                }
            }
        }
    }

    #[test]
    fn parallel_and_resume_match_serial() {
        let serial = small_scan(-400, -3);
        let parallel = scan(&ScanConfig {
            d_min: -400,
            d_max: -3,
            tol: 1e-8,
            threads: 4,
            chunk_size: 17,
            ..ScanConfig::default()
        })
        .unwrap();
        assert_eq!(report_to_csv(&serial), report_to_csv(&parallel));

        // Split at |d| = 200 and resume; concatenated records must agree.
        let first = scan(&ScanConfig {
            d_min: -200,
            d_max: -3,
            tol: 1e-8,
            ..ScanConfig::default()
        })
        .unwrap();
        let second = scan(&ScanConfig {
            d_min: -400,
            d_max: -3,
            tol: 1e-8,
            resume_after: Some(200),
            ..ScanConfig::default()
        })
        .unwrap();
        let mut stitched: Vec<String> = first.records.iter().map(csv_row).collect();
        stitched.extend(second.records.iter().map(csv_row));
        let full: Vec<String> = serial.records.iter().map(csv_row).collect();
        assert_eq!(stitched, full);
    }

    #[test]
    fn progress_sink_sees_ascending_chunks() {
        let mut seen: Vec<u64> = Vec::new();
        let config = ScanConfig {
            d_min: -100,
            d_max: -3,
            tol: 1e-8,
            chunk_size: 7,
            ..ScanConfig::default()
        };
        let report = scan_with_progress(&config, |done, chunk| {
            assert!(!chunk.is_empty());
            seen.push(done);
            Ok(())
        })
        .unwrap();
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(seen.last().copied(), Some(95));
        assert_eq!(report.n_scanned, 31);
    }

    #[test]
    fn csv_shape() {
        let report = small_scan(-8, -3);
        let csv = report_to_csv(&report);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        let first = lines.next().unwrap();
        assert!(first.starts_with("-3,1,6,"));
        assert_eq!(first.split(',').count(), 9);
    }
}
