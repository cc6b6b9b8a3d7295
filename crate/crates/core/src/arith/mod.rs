//! Computational number theory for the discriminant scan: fundamental
//! discriminants, the Kronecker character, class numbers by two routes,
//! L(2, chi_d) with rigorous tails, and the Borel covolume filter.

mod class_number;
mod disc;
mod kronecker;
mod lseries;
mod scan;

pub use class_number::{class_number, class_number_dirichlet};
pub use disc::{fundamental_in_range, is_fundamental, roots_of_unity, FundamentalDiscriminant};
pub use kronecker::kronecker;
pub use lseries::{abel_tail_bound, dirichlet_l2, MAX_TERMS};
pub use scan::{
    borel_lower_bound, brauer_siegel_holds, crude_cutoff, crude_passes, csv_row, field_record,
    hatcher_check, report_to_csv, scan, scan_with_progress, FieldRecord, ScanConfig, ScanReport,
    CSV_HEADER, HATCHER_DISCRIMINANTS, ZETA_2,
};
