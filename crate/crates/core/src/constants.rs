//! Named constants entering the volume bound chain and the discriminant scan.

use std::f64::consts::PI;

/// Area of the unit 2-sphere.
pub const SPHERE2_VOLUME: f64 = 4.0 * PI;

/// Volume of the unit 3-sphere.
pub const SPHERE3_VOLUME: f64 = 2.0 * PI * PI;

/// Spectral gap lower bound for congruence arithmetic hyperbolic
/// 3-orbifolds (Vigneras; the Ramanujan conjecture would raise it to 1).
pub const LAMBDA1_CONGRUENCE_LOWER: f64 = 0.75;

/// Every finite subgroup of O(3) embeds in a reflection group with at most
/// this index.
pub const REFLECTION_INDEX_BOUND: u64 = 4;

/// The volume upper bound 64*pi^2 for the quotient orbifold of a maximal
/// Kleinian group containing an arithmetic maximal reflection group.
pub const VOLUME_UPPER_BOUND: f64 = 64.0 * PI * PI;

/// The crude discriminant cutoff 2^20 * pi^4 implied by the volume bound:
/// sqrt(|d|)/16 <= 64*pi^2 exactly when |d| <= 2^20 * pi^4.
pub const CRUDE_DISC_BOUND: f64 = 1_048_576.0 * PI * PI * PI * PI;

/// floor(2^20 * pi^4), used for exact integer comparison against |d|.
/// 2^20 * pi^4 = 102140835.048...; the fractional part is far above the
/// f64 rounding error of the constant, so the floor is unambiguous.
pub const CRUDE_DISC_BOUND_FLOOR: u64 = 102_140_835;
