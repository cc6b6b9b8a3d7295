//! Spherical 2-orbifolds in Conway notation and their reflection supergroups.
//!
//! A finite subgroup of O(3) acts on the round sphere; the quotient is a
//! spherical 2-orbifold described by a symbol built from cone orders, a
//! mirror `*` with corner orders, and a cross-cap. Only ten families of
//! symbols occur:
//!
//! ```text
//! (), (*), (p,p), (p,q,r), (*p,p), (*p,q,r), (p*), (2*m), (3*2), (nx)
//! ```
//!
//! where `(p,q,r)` is subject to `1/p + 1/q + 1/r > 1`. Every such group
//! embeds in a reflection group with index at most 4, and this module
//! computes that supergroup together with the chain of 2-fold covers that
//! realizes the index.
//!
//! The cross-cap family is written `nx` here (`1x` is the projective plane,
//! the quotient by the central inversion); this flat spelling replaces the
//! circled notation sometimes seen for the non-orientable family, which has
//! no single ASCII rendering.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};

/// Exact rational used for orbifold Euler characteristics.
pub type Rational = Ratio<i64>;

/// A spherical 2-orbifold symbol: cone points, optional mirror boundary with
/// corner reflectors, optional cross-cap.
///
/// Values are validated on construction: only the ten spherical families
/// listed in the module docs are representable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SphericalSignature {
    cone_orders: Vec<u32>,
    mirror: bool,
    corner_orders: Vec<u32>,
    crosscap: bool,
}

/// Which family of the spherical case list a signature belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignatureClass {
    /// `()` — the trivial group.
    Trivial,
    /// `(*)`, `(*p,p)`, `(*p,q,r)` — generated by reflections.
    Mirror,
    /// `(p,p)` — cyclic rotation group.
    CyclicCones,
    /// `(p,q,r)` — dihedral/tetrahedral/octahedral/icosahedral rotations.
    TriangleCones,
    /// `(p*)` — cone point with mirror, no corners.
    ConeMirror,
    /// `(2*m)` — cone of order 2, corner of order m.
    ConeMirrorCorner,
    /// `(3*2)` — cone of order 3, corner of order 2.
    PyritohedralLike,
    /// `(nx)` — cross-cap family, `1x` being the projective plane.
    Crosscap,
}

/// Group-theoretic data derived from a signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbifoldGroupInfo {
    /// Order of the corresponding finite subgroup of O(3).
    pub order: u64,
    /// Orbifold Euler characteristic, exact.
    pub chi: Rational,
    /// True iff the group is generated by reflections (mirror present, no
    /// cone points, no cross-cap).
    pub reflection_generated: bool,
}

/// A reflection supergroup together with the cover chain realizing the index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupergroupResult {
    /// The reflection-generated signature containing the input group.
    pub supergroup: SphericalSignature,
    /// Index of the input group in the supergroup; always 1, 2 or 4.
    pub index: u64,
    /// Successive quotients `(signature, covering degree)`: the input
    /// orbifold covers the first entry with the stated degree, that entry
    /// covers the next, and the last entry is the supergroup. Empty when
    /// the index is 1.
    pub chain: Vec<(SphericalSignature, u64)>,
}

impl SphericalSignature {
    /// Validating constructor. `cone_orders` and `corner_orders` must each
    /// be ≥ 2; the combination must be one of the ten spherical families.
    pub fn new(
        cone_orders: Vec<u32>,
        mirror: bool,
        corner_orders: Vec<u32>,
        crosscap: bool,
    ) -> Result<Self> {
        let sig = SphericalSignature {
            cone_orders,
            mirror,
            corner_orders,
            crosscap,
        };
        sig.validate()?;
        Ok(sig)
    }

    /// The trivial signature `()` (sphere, trivial group).
    pub fn trivial() -> Self {
        SphericalSignature {
            cone_orders: Vec::new(),
            mirror: false,
            corner_orders: Vec::new(),
            crosscap: false,
        }
    }

    /// The projective plane `1x` (quotient by the central inversion).
    pub fn projective_plane() -> Self {
        SphericalSignature {
            cone_orders: Vec::new(),
            mirror: false,
            corner_orders: Vec::new(),
            crosscap: true,
        }
    }

    fn mirror_with_corners(corners: Vec<u32>) -> Self {
        SphericalSignature {
            cone_orders: Vec::new(),
            mirror: true,
            corner_orders: corners,
            crosscap: false,
        }
    }

    pub fn cone_orders(&self) -> &[u32] {
        &self.cone_orders
    }

    pub fn mirror(&self) -> bool {
        self.mirror
    }

    pub fn corner_orders(&self) -> &[u32] {
        &self.corner_orders
    }

    pub fn crosscap(&self) -> bool {
        self.crosscap
    }

    /// Classify into one of the ten accepted families.
    pub fn class(&self) -> SignatureClass {
        debug_assert!(self.validate().is_ok());
        if self.crosscap {
            return SignatureClass::Crosscap;
        }
        if self.mirror {
            return match (self.cone_orders.len(), self.corner_orders.len()) {
                (0, _) => SignatureClass::Mirror,
                (1, 0) => SignatureClass::ConeMirror,
                (1, 1) if self.cone_orders[0] == 2 => SignatureClass::ConeMirrorCorner,
                (1, 1) => SignatureClass::PyritohedralLike,
                _ => unreachable!("validated signature"),
            };
        }
        match self.cone_orders.len() {
            0 => SignatureClass::Trivial,
            2 => SignatureClass::CyclicCones,
            3 => SignatureClass::TriangleCones,
            _ => unreachable!("validated signature"),
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSignature(msg));
        if self.crosscap && self.mirror {
            return bad("cross-cap and mirror may not be combined".into());
        }
        if !self.mirror && !self.corner_orders.is_empty() {
            return bad("corner orders require a mirror".into());
        }
        for &p in self.cone_orders.iter().chain(&self.corner_orders) {
            if p < 2 {
                return bad(format!("order {p} is below 2"));
            }
        }
        if self.crosscap {
            // (nx): at most one cone order; n = 1 is stored as no cone.
            return match self.cone_orders.len() {
                0 | 1 => Ok(()),
                _ => bad("cross-cap symbols carry at most one cone order".into()),
            };
        }
        if self.mirror {
            return match (self.cone_orders.as_slice(), self.corner_orders.as_slice()) {
                // (*), (*p,p), (*p,q,r)
                ([], []) => Ok(()),
                ([], [p, q]) if p == q => Ok(()),
                ([], [_, _]) => bad("corner orders (p,q) with p != q are not spherical".into()),
                ([], [p, q, r]) => check_triangle(*p, *q, *r),
                ([], _) => bad("a mirror carries 0, 2 equal, or 3 corner orders".into()),
                // (p*)
                ([_], []) => Ok(()),
                // (2*m), (3*2)
                ([2], [_]) => Ok(()),
                ([3], [2]) => Ok(()),
                ([_], [_]) => {
                    bad("cone+corner symbols other than (2*m) and (3*2) are not spherical".into())
                }
                _ => bad("too many cone orders before the mirror".into()),
            };
        }
        match self.cone_orders.as_slice() {
            [] => Ok(()),
            [p] => bad(format!("single cone point ({p}) is not a global quotient")),
            [p, q] if p == q => Ok(()),
            [_, _] => bad("cone orders (p,q) with p != q are not spherical".into()),
            [p, q, r] => check_triangle(*p, *q, *r),
            _ => bad("more than three cone orders is never spherical".into()),
        }
    }
}

fn check_triangle(p: u32, q: u32, r: u32) -> Result<()> {
    // 1/p + 1/q + 1/r > 1, in exact arithmetic: qr + pr + pq > pqr.
    let (p, q, r) = (p as u64, q as u64, r as u64);
    if q * r + p * r + p * q > p * q * r {
        Ok(())
    } else {
        Err(Error::InvalidSignature(format!(
            "({p},{q},{r}) fails 1/p + 1/q + 1/r > 1 (not spherical)"
        )))
    }
}

/// Orbifold Euler characteristic, exact.
///
/// `chi = chi_underlying - sum(1 - 1/p) - 1/2 * sum(1 - 1/q)` with the
/// underlying space contributing 2 (sphere), 1 (disk, mirror present) or
/// 1 (projective plane, cross-cap present).
pub fn euler_characteristic(sig: &SphericalSignature) -> Rational {
    let underlying = if sig.mirror() || sig.crosscap() { 1 } else { 2 };
    let mut chi = Rational::from_integer(underlying);
    for &p in sig.cone_orders() {
        chi -= Rational::ONE - Ratio::new(1, p as i64);
    }
    for &q in sig.corner_orders() {
        chi -= (Rational::ONE - Ratio::new(1, q as i64)) / 2;
    }
    chi
}

/// Group order and flags for a signature; the quotient of the 2-sphere by a
/// group of order N has orbifold Euler characteristic 2/N.
pub fn group_order(sig: &SphericalSignature) -> Result<OrbifoldGroupInfo> {
    let chi = euler_characteristic(sig);
    if chi <= Rational::ZERO {
        return Err(Error::Inconsistent(format!(
            "chi = {chi} is not positive for {sig}"
        )));
    }
    let order = Rational::from_integer(2) / chi;
    if !order.is_integer() {
        return Err(Error::Inconsistent(format!(
            "2/chi = {order} is not an integer for {sig}"
        )));
    }
    let reflection_generated = sig.mirror() && sig.cone_orders().is_empty() && !sig.crosscap();
    Ok(OrbifoldGroupInfo {
        order: order.to_integer() as u64,
        chi,
        reflection_generated,
    })
}

/// The reflection supergroup of index ≤ 4 containing the signature's group,
/// with the chain of 2-fold covers realizing the index.
///
/// Mirror-generated signatures are their own supergroup. The trivial group
/// sits in a single reflection `(*)` with index 2. Every other family
/// 2-fold covers a mirror signature, except the cross-cap family which
/// needs two steps: `(nx) -> (2n*) -> (*2n,2,2)`, index 4.
pub fn reflection_supergroup(sig: &SphericalSignature) -> SupergroupResult {
    let two_step = |s: SphericalSignature| SupergroupResult {
        supergroup: s.clone(),
        index: 2,
        chain: vec![(s, 2)],
    };
    match sig.class() {
        SignatureClass::Mirror => SupergroupResult {
            supergroup: sig.clone(),
            index: 1,
            chain: Vec::new(),
        },
        SignatureClass::Trivial => two_step(SphericalSignature::mirror_with_corners(Vec::new())),
        SignatureClass::CyclicCones | SignatureClass::TriangleCones => two_step(
            SphericalSignature::mirror_with_corners(sig.cone_orders().to_vec()),
        ),
        SignatureClass::ConeMirror => {
            let p = sig.cone_orders()[0];
            two_step(SphericalSignature::mirror_with_corners(vec![p, 2, 2]))
        }
        SignatureClass::ConeMirrorCorner => {
            let m = sig.corner_orders()[0];
            two_step(SphericalSignature::mirror_with_corners(vec![2 * m, 2, 2]))
        }
        SignatureClass::PyritohedralLike => {
            two_step(SphericalSignature::mirror_with_corners(vec![4, 3, 2]))
        }
        SignatureClass::Crosscap => {
            let n = sig.cone_orders().first().copied().unwrap_or(1);
            let middle = SphericalSignature {
                cone_orders: vec![2 * n],
                mirror: true,
                corner_orders: Vec::new(),
                crosscap: false,
            };
            let top = SphericalSignature::mirror_with_corners(vec![2 * n, 2, 2]);
            SupergroupResult {
                supergroup: top.clone(),
                index: 4,
                chain: vec![(middle, 2), (top, 2)],
            }
        }
    }
}

/// Consistency check for a supergroup result: the chain degrees multiply to
/// the index, the orders satisfy `|G'| = index * |G|`, every chain edge
/// scales the Euler characteristic by exactly its covering degree, and the
/// supergroup is reflection generated.
pub fn verify_cover(result: &SupergroupResult, sig: &SphericalSignature) -> bool {
    let (Ok(sub), Ok(sup)) = (group_order(sig), group_order(&result.supergroup)) else {
        return false;
    };
    if !sup.reflection_generated || ![1, 2, 4].contains(&result.index) {
        return false;
    }
    if sup.order != result.index * sub.order || sup.order % sub.order != 0 {
        return false;
    }
    let degree_product: u64 = result.chain.iter().map(|(_, d)| d).product();
    if degree_product != result.index {
        return false;
    }
    // chi multiplies by the covering degree along every edge of the chain.
    let mut prev = euler_characteristic(sig);
    for (quotient, degree) in &result.chain {
        let next = euler_characteristic(quotient);
        if prev != next * Rational::from_integer(*degree as i64) {
            return false;
        }
        prev = next;
    }
    if let Some((last, _)) = result.chain.last() {
        if *last != result.supergroup {
            return false;
        }
    } else if result.supergroup != *sig {
        return false;
    }
    true
}

/// Every signature of the spherical case list with all orders at most
/// `max_order`, one representative per symbol (triangle orders are listed
/// in their conventional spelling, largest variable order last).
pub fn enumerate_spherical(max_order: u32) -> Vec<SphericalSignature> {
    let mut out = Vec::new();
    let sig = |cones: Vec<u32>, mirror: bool, corners: Vec<u32>, crosscap: bool| {
        SphericalSignature::new(cones, mirror, corners, crosscap).expect("listed case")
    };
    out.push(SphericalSignature::trivial());
    out.push(sig(vec![], true, vec![], false));
    out.push(SphericalSignature::projective_plane());
    for p in 2..=max_order {
        out.push(sig(vec![p, p], false, vec![], false));
        out.push(sig(vec![], true, vec![p, p], false));
        out.push(sig(vec![2, 2, p], false, vec![], false));
        out.push(sig(vec![], true, vec![2, 2, p], false));
        out.push(sig(vec![p], true, vec![], false));
        out.push(sig(vec![2], true, vec![p], false));
        out.push(sig(vec![p], false, vec![], true));
    }
    for orders in [[2, 3, 3], [2, 3, 4], [2, 3, 5]] {
        if orders.iter().all(|&p| p <= max_order) {
            out.push(sig(orders.to_vec(), false, vec![], false));
            out.push(sig(vec![], true, orders.to_vec(), false));
        }
    }
    if max_order >= 3 {
        out.push(sig(vec![3], true, vec![2], false));
    }
    out
}

/// Parse a symbol string: cone orders, optional `*`, corner orders, optional
/// trailing `x`. Single digits stand for themselves; multi-digit orders are
/// wrapped in parentheses, e.g. `"(12)"`. The empty string is the trivial
/// signature, and `"1x"` (or bare `"x"`) is the projective plane.
pub fn parse_signature(text: &str) -> Result<SphericalSignature> {
    let mut cones = Vec::new();
    let mut corners = Vec::new();
    let mut mirror = false;
    let mut crosscap = false;
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '0'..='9' => {
                let v = c.to_digit(10).unwrap();
                push_order(v, mirror, &mut cones, &mut corners)?;
            }
            '(' => {
                let mut digits = String::new();
                loop {
                    match chars.next() {
                        Some(')') => break,
                        Some(d @ '0'..='9') => digits.push(d),
                        Some(other) => {
                            return Err(Error::Parse(format!(
                                "unexpected '{other}' inside parentheses in \"{text}\""
                            )))
                        }
                        None => {
                            return Err(Error::Parse(format!("unclosed parenthesis in \"{text}\"")))
                        }
                    }
                }
                if digits.is_empty() {
                    return Err(Error::Parse(format!("empty parentheses in \"{text}\"")));
                }
                let v: u32 = digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("order {digits} out of range")))?;
                push_order(v, mirror, &mut cones, &mut corners)?;
            }
            '*' => {
                if mirror {
                    return Err(Error::Parse(format!("repeated '*' in \"{text}\"")));
                }
                mirror = true;
            }
            'x' => {
                if chars.peek().is_some() {
                    return Err(Error::Parse(format!(
                        "'x' must be the final character in \"{text}\""
                    )));
                }
                crosscap = true;
            }
            other => {
                return Err(Error::Parse(format!(
                    "unexpected character '{other}' in \"{text}\""
                )))
            }
        }
    }
    // 1x is the projective plane: an order-1 "cone" is no cone point at all.
    if crosscap && cones == [1] {
        cones.clear();
    }
    SphericalSignature::new(cones, mirror, corners, crosscap)
}

fn push_order(v: u32, mirror: bool, cones: &mut Vec<u32>, corners: &mut Vec<u32>) -> Result<()> {
    // Order 1 is only meaningful in the cross-cap special case, handled by
    // the caller after the full string is read; orders below 1 never are.
    if v == 0 {
        return Err(Error::Parse("order 0 is not allowed".into()));
    }
    if mirror {
        corners.push(v);
    } else {
        cones.push(v);
    }
    Ok(())
}

impl fmt::Display for SphericalSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let write_order = |f: &mut fmt::Formatter<'_>, v: u32| {
            if v < 10 {
                write!(f, "{v}")
            } else {
                write!(f, "({v})")
            }
        };
        if self.crosscap && self.cone_orders.is_empty() {
            return write!(f, "1x");
        }
        for &p in &self.cone_orders {
            write_order(f, p)?;
        }
        if self.mirror {
            write!(f, "*")?;
        }
        for &q in &self.corner_orders {
            write_order(f, q)?;
        }
        if self.crosscap {
            write!(f, "x")?;
        }
        Ok(())
    }
}

impl FromStr for SphericalSignature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_signature(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(text: &str) -> SphericalSignature {
        parse_signature(text).unwrap()
    }

    fn rat(n: i64, d: i64) -> Rational {
        Ratio::new(n, d)
    }

    #[test]
    fn parse_mirror_triangle() {
        let s = sig("*235");
        assert!(s.mirror());
        assert!(s.cone_orders().is_empty());
        assert_eq!(s.corner_orders(), &[2, 3, 5]);
        assert!(!s.crosscap());
    }

    #[test]
    fn parse_trivial_and_crosscap() {
        assert_eq!(sig(""), SphericalSignature::trivial());
        assert_eq!(sig("1x"), SphericalSignature::projective_plane());
        assert_eq!(sig("x"), SphericalSignature::projective_plane());
        let s = sig("2x");
        assert!(s.crosscap());
        assert_eq!(s.cone_orders(), &[2]);
    }

    #[test]
    fn parse_multidigit() {
        let s = sig("(12)(12)");
        assert_eq!(s.cone_orders(), &[12, 12]);
        assert_eq!(s.to_string(), "(12)(12)");
    }

    #[test]
    fn parse_rejects_euclidean_and_hyperbolic() {
        // chi = 0
        assert!(parse_signature("*236").is_err());
        assert!(parse_signature("*244").is_err());
        assert!(parse_signature("236").is_err());
        // chi < 0
        assert!(parse_signature("*237").is_err());
        assert!(parse_signature("245").is_err());
    }

    #[test]
    fn parse_rejects_bad_orbifolds_and_garbage() {
        assert!(parse_signature("5").is_err(), "teardrop");
        assert!(parse_signature("23").is_err(), "spindle");
        assert!(parse_signature("*5").is_err(), "single corner");
        assert!(parse_signature("*23").is_err(), "unequal corners");
        assert!(parse_signature("2*3x").is_err(), "mirror with cross-cap");
        assert!(parse_signature("22*").is_err(), "two cones before mirror");
        assert!(parse_signature("4*2").is_err(), "not (2*m) or (3*2)");
        assert!(parse_signature("(2").is_err());
        assert!(parse_signature("()").is_err());
        assert!(parse_signature("2x2").is_err(), "x not final");
        assert!(parse_signature("a").is_err());
        assert!(parse_signature("1").is_err());
        assert!(parse_signature("0x").is_err());
        assert!(parse_signature("2222").is_err());
    }

    #[test]
    fn display_round_trips_through_parse() {
        for s in enumerate_spherical(50) {
            let text = s.to_string();
            assert_eq!(parse_signature(&text).unwrap(), s, "round trip of {text}");
        }
    }

    #[test]
    fn euler_characteristic_examples() {
        assert_eq!(euler_characteristic(&sig("*235")), rat(1, 60));
        assert_eq!(
            euler_characteristic(&SphericalSignature::trivial()),
            rat(2, 1)
        );
        assert_eq!(euler_characteristic(&sig("2x")), rat(1, 2));
        assert_eq!(euler_characteristic(&sig("235")), rat(1, 30));
        assert_eq!(euler_characteristic(&sig("3*2")), rat(1, 12));
        assert_eq!(euler_characteristic(&sig("1x")), rat(1, 1));
    }

    #[test]
    fn group_orders_match_point_group_table() {
        // Orders of the finite subgroups of O(3), by crystallographic family
        // (n = 5 for the n-parametrized families).
        let table = [
            ("", 1),       // trivial
            ("*", 2),      // Cs
            ("55", 5),     // C5
            ("225", 10),   // D5
            ("233", 12),   // T
            ("234", 24),   // O
            ("235", 60),   // I
            ("*55", 10),   // C5v
            ("*225", 20),  // D5h
            ("*233", 24),  // Td
            ("*234", 48),  // Oh
            ("*235", 120), // Ih
            ("5*", 10),    // C5h
            ("2*5", 20),   // D5d
            ("3*2", 24),   // Th
            ("5x", 10),    // S10
            ("1x", 2),     // Ci
        ];
        for (text, order) in table {
            let info = group_order(&sig(text)).unwrap();
            assert_eq!(info.order, order, "order of {text}");
        }
    }

    #[test]
    fn reflection_generated_flag() {
        assert!(group_order(&sig("*")).unwrap().reflection_generated);
        assert!(group_order(&sig("*235")).unwrap().reflection_generated);
        assert!(!group_order(&sig("235")).unwrap().reflection_generated);
        assert!(!group_order(&sig("3*2")).unwrap().reflection_generated);
        assert!(!group_order(&sig("1x")).unwrap().reflection_generated);
    }

    #[test]
    fn supergroups_follow_the_case_table() {
        let expect = [
            ("", "*", 2),
            ("55", "*55", 2),
            ("235", "*235", 2),
            ("5*", "*522", 2),
            ("2*5", "*(10)22", 2),
            ("3*2", "*432", 2),
            ("*234", "*234", 1),
            ("1x", "*222", 4),
            ("3x", "*622", 4),
        ];
        for (input, sup, index) in expect {
            let result = reflection_supergroup(&sig(input));
            assert_eq!(result.supergroup, sig(sup), "supergroup of {input}");
            assert_eq!(result.index, index, "index of {input}");
        }
        // The cross-cap chain passes through the cone+mirror family.
        let result = reflection_supergroup(&sig("3x"));
        assert_eq!(result.chain.len(), 2);
        assert_eq!(result.chain[0], (sig("6*"), 2));
        assert_eq!(result.chain[1], (sig("*622"), 2));
    }

    #[test]
    fn verify_cover_accepts_table_and_rejects_corruption() {
        let s = sig("235");
        let mut result = reflection_supergroup(&s);
        assert!(verify_cover(&result, &s));
        result.index = 3;
        assert!(!verify_cover(&result, &s), "corrupted index must fail");

        let m = sig("*235");
        let identity = reflection_supergroup(&m);
        assert_eq!(identity.index, 1);
        assert!(verify_cover(&identity, &m));
    }

    #[test]
    fn exhaustive_enumeration_up_to_50() {
        let all = enumerate_spherical(50);
        assert!(all.len() > 300);
        for s in &all {
            let info = group_order(s).unwrap_or_else(|e| panic!("{s}: {e}"));
            assert!(info.order >= 1);
            let result = reflection_supergroup(s);
            assert!(
                matches!(result.index, 1 | 2 | 4),
                "index {} for {s}",
                result.index
            );
            assert_eq!(
                result.index == 4,
                s.crosscap(),
                "index 4 exactly on cross-cap cases ({s})"
            );
            assert!(verify_cover(&result, s), "cover arithmetic for {s}");
            let sup = group_order(&result.supergroup).unwrap();
            assert_eq!(sup.order % info.order, 0, "divisibility for {s}");
        }
    }
}
