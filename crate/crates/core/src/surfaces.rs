//! Closed-form invariants of the three equivariant Seifert-surface families
//! in `S³` and of the prime-power quotient family: topological type, boundary
//! rotation data, quotient orbifold signatures, and the Riemann–Hurwitz
//! genus computation used to cross-check them.
//!
//! Conventions. `S³ ⊂ ℂ²` is split by the Clifford torus `T = {|z| = |z′|}`
//! into solid tori `H` (`|z| ≥ |z′|`) and `H′`. The plain surface is built
//! from `p` meridian disks of `H` and `q` of `H′` by direction-preserving
//! surgery at the `pq` boundary crossings on `T`; the plus/minus surfaces
//! replace the `q` disks by an annulus with core `∂_o` and differ by the
//! direction given to the `H`-disk boundaries. The acting isometry rotates
//! the two complex coordinates by `2π/p, 2π/q` (plain) or `2π/p, 2π/(pq)`
//! (plus/minus).

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::numtheory::{gcd, is_prime, lcm, solve_congruence, Rational};

/// Which of the three surgered surfaces a [`SurfaceSpec`] selects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Variant {
    /// Disk–disk surgery; the acting map has order `lcm(p, q)`.
    Plain,
    /// Disk–annulus surgery keeping all boundary directions; order `p·q`.
    Plus,
    /// Disk–annulus surgery with the disk directions reversed; order `p·q`.
    Minus,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Plain => write!(f, "plain"),
            Variant::Plus => write!(f, "plus"),
            Variant::Minus => write!(f, "minus"),
        }
    }
}

/// Construction parameters `(p, q, variant)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SurfaceSpec {
    p: u32,
    q: u32,
    variant: Variant,
}

/// Errors from surface-invariant computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    /// Parameters outside the construction's range (`p, q ≥ 1`; the minus
    /// variant needs `p ≥ 2`, since `p = 1` zeroes the reversed slope and
    /// leaves the rotation congruence ill-posed).
    DegenerateSpec(String),
    /// Operation defined for the plain variant only.
    UnsupportedVariant(Variant),
}

impl fmt::Display for SurfaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceError::DegenerateSpec(msg) => write!(f, "degenerate spec: {msg}"),
            SurfaceError::UnsupportedVariant(v) => {
                write!(f, "operation not defined for the {v} variant")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for SurfaceError {}

impl SurfaceSpec {
    pub fn new(p: u32, q: u32, variant: Variant) -> Result<SurfaceSpec, SurfaceError> {
        if p == 0 || q == 0 {
            return Err(SurfaceError::DegenerateSpec(alloc::format!(
                "p and q must be positive, got ({p}, {q})"
            )));
        }
        if variant == Variant::Minus && p == 1 {
            return Err(SurfaceError::DegenerateSpec(String::from(
                "minus variant requires p >= 2",
            )));
        }
        Ok(SurfaceSpec { p, q, variant })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Order of the acting isometry restricted to the surface.
    pub fn acting_order(&self) -> u64 {
        match self.variant {
            Variant::Plain => lcm(self.p as u64, self.q as u64),
            Variant::Plus | Variant::Minus => self.p as u64 * self.q as u64,
        }
    }

    /// Component count `d` of the torus-link part of the boundary:
    /// `(p;q)`, `(p+1;q)` or `(p−1;q)` by variant.
    pub fn link_components(&self) -> u32 {
        let q = self.q as u64;
        let a = match self.variant {
            Variant::Plain => self.p as u64,
            Variant::Plus => self.p as u64 + 1,
            Variant::Minus => self.p as u64 - 1,
        };
        gcd(a, q) as u32
    }

    /// Numerator of the boundary slope before dividing by `d`: `p`, `p+1`
    /// or `1−p` (signed; negative exactly for the minus variant).
    fn slope_numerator(&self) -> i64 {
        match self.variant {
            Variant::Plain => self.p as i64,
            Variant::Plus => self.p as i64 + 1,
            Variant::Minus => 1 - self.p as i64,
        }
    }

    pub fn top_type(&self) -> TopologicalType {
        let (p, q) = (self.p as i64, self.q as i64);
        let d = self.link_components() as i64;
        let (genus2, euler_char, has_core) = match self.variant {
            // χ = p + q − pq, boundary = d
            Variant::Plain => (p * q - p - q - d + 2, p + q - p * q, false),
            // χ = p − pq, boundary = d + 1
            Variant::Plus | Variant::Minus => (p * q - p - d + 1, p - p * q, true),
        };
        debug_assert!(genus2 >= 0 && genus2 % 2 == 0, "genus formula out of range");
        let a = self.slope_numerator();
        TopologicalType {
            genus: (genus2 / 2) as u64,
            d: d as u32,
            knot_type: ((a.unsigned_abs() / d as u64) as u32, (q / d) as u32),
            negative_slope: a < 0,
            has_core_boundary: has_core,
            euler_char,
        }
    }

    /// Orbit structure and exact rotation angles induced on the boundary.
    ///
    /// Plain: the map fixes each link component setwise and rotates it by
    /// `1/[p;q]` of a turn. Plus/minus: the map permutes the `d` link
    /// components cyclically, its `d`-th power rotates each by `ds/(pq)` of
    /// a turn where `s` inverts `(1±p)/d` modulo `pq/d`, and the annulus
    /// core is rotated by `−1/(pq)`.
    pub fn boundary_action(&self) -> RotationData {
        let (p, q) = (self.p as u64, self.q as u64);
        let d = self.link_components() as u64;
        match self.variant {
            Variant::Plain => {
                let order = lcm(p, q);
                let orbit = OrbitRotation {
                    orbit_length: 1,
                    component_count: 1,
                    acting_power: 1,
                    rotation: Rational::new(1, order as i64),
                };
                RotationData {
                    acting_order: order,
                    orbits: alloc::vec![orbit; d as usize],
                    core_rotation: None,
                }
            }
            Variant::Plus | Variant::Minus => {
                let pq = p * q;
                let s = solve_congruence(self.slope_numerator() / d as i64, pq / d)
                    .expect("slope numerator is invertible modulo pq/d for valid specs");
                RotationData {
                    acting_order: pq,
                    orbits: alloc::vec![OrbitRotation {
                        orbit_length: d as u32,
                        component_count: d as u32,
                        acting_power: d as u32,
                        rotation: Rational::new((d * s) as i64, pq as i64),
                    }],
                    core_rotation: Some(Rational::new(-1, pq as i64)),
                }
            }
        }
    }

    /// Signature of the quotient orbifold of the capped closed surface.
    pub fn orbifold_type(&self) -> OrbifoldSignature {
        let (p, q) = (self.p as u64, self.q as u64);
        let d = self.link_components() as u64;
        let indices = match self.variant {
            Variant::Plain => {
                let mut v = alloc::vec![lcm(p, q); d as usize];
                v.push(p / d);
                v.push(q / d);
                v
            }
            Variant::Plus | Variant::Minus => alloc::vec![p * q, p * q / d, q],
        };
        OrbifoldSignature::new(0, indices)
    }

    /// Quotient of the bordered plain surface: a sphere with `d` disks
    /// removed and the leftover singular points of indices `p/d`, `q/d`.
    pub fn bordered_quotient(&self) -> Result<BorderedQuotient, SurfaceError> {
        if self.variant != Variant::Plain {
            return Err(SurfaceError::UnsupportedVariant(self.variant));
        }
        let d = self.link_components() as u64;
        let mut indices: Vec<u64> = [self.p as u64 / d, self.q as u64 / d]
            .into_iter()
            .filter(|&n| n > 1)
            .collect();
        indices.sort_unstable_by(|a, b| b.cmp(a));
        Ok(BorderedQuotient {
            disk_count: d as u32,
            singular_indices: indices,
        })
    }
}

impl fmt::Display for SurfaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.variant {
            Variant::Plain => write!(f, "S({},{})", self.p, self.q),
            Variant::Plus => write!(f, "S+({},{})", self.p, self.q),
            Variant::Minus => write!(f, "S-({},{})", self.p, self.q),
        }
    }
}

/// Genus, boundary-link structure and knot type of a bordered surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TopologicalType {
    pub genus: u64,
    /// Number of torus-link boundary components.
    pub d: u32,
    /// Common torus-knot type `(|a|, b)` of the link components.
    pub knot_type: (u32, u32),
    /// The slope of the components is negative (minus variant); the knot
    /// type above records absolute values, so the mirror ambiguity is kept
    /// explicit rather than dropped.
    pub negative_slope: bool,
    /// An extra annulus-core boundary circle `∂_o` is present (plus/minus).
    pub has_core_boundary: bool,
    pub euler_char: i64,
}

impl TopologicalType {
    pub fn boundary_count(&self) -> u32 {
        self.d + self.has_core_boundary as u32
    }

    /// Torus-knot components are unknotted iff either slope entry is `±1`.
    pub fn unknotted(&self) -> bool {
        self.knot_type.0 == 1 || self.knot_type.1 == 1
    }
}

/// One orbit of boundary components under the acting map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct OrbitRotation {
    pub orbit_length: u32,
    pub component_count: u32,
    /// Power of the acting map that fixes each component of the orbit.
    pub acting_power: u32,
    /// Rotation induced by that power on each component, in turns.
    pub rotation: Rational,
}

/// Orbit structure of the acting map on the boundary circles.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RotationData {
    pub acting_order: u64,
    pub orbits: Vec<OrbitRotation>,
    /// Rotation induced on the annulus core `∂_o`, in turns (plus/minus).
    pub core_rotation: Option<Rational>,
}

impl RotationData {
    pub fn total_components(&self) -> u32 {
        self.orbits.iter().map(|o| o.component_count).sum()
    }
}

/// Quotient description returned by [`SurfaceSpec::bordered_quotient`].
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BorderedQuotient {
    pub disk_count: u32,
    pub singular_indices: Vec<u64>,
}

/// An orbifold signature `(ḡ : n₁, …, n_l)`: base genus plus the multiset
/// of singular-point indices.
///
/// Always stored normalized (indices sorted descending, entries equal to
/// `1` removed), so `==` is equality of types.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct OrbifoldSignature {
    base_genus: u32,
    indices: Vec<u64>,
}

impl OrbifoldSignature {
    /// Normalizing constructor. Indices must be positive; `1`s are dropped.
    pub fn new(base_genus: u32, indices: impl IntoIterator<Item = u64>) -> OrbifoldSignature {
        let mut indices: Vec<u64> = indices.into_iter().inspect(|&n| assert!(n > 0)).collect();
        indices.retain(|&n| n > 1);
        indices.sort_unstable_by(|a, b| b.cmp(a));
        OrbifoldSignature {
            base_genus,
            indices,
        }
    }

    pub fn base_genus(&self) -> u32 {
        self.base_genus
    }

    pub fn indices(&self) -> &[u64] {
        &self.indices
    }

    pub fn is_free(&self) -> bool {
        self.indices.is_empty()
    }

    /// Multiplicity of `index` in the signature. The multiplicity of the
    /// full order counts the fixed points of the acting map.
    pub fn multiplicity(&self, index: u64) -> usize {
        self.indices.iter().filter(|&&n| n == index).count()
    }

    /// Same singular indices over a base surface with `extra` more handles.
    pub fn with_base_genus(&self, base_genus: u32) -> OrbifoldSignature {
        OrbifoldSignature {
            base_genus,
            indices: self.indices.clone(),
        }
    }
}

impl fmt::Display for OrbifoldSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:", self.base_genus)?;
        for (i, n) in self.indices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, ")")
    }
}

/// Signature parse failure (expected the form `(g:a,b,c,...)`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureParseError(pub String);

impl fmt::Display for SignatureParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid signature {:?}: expected \"(g:a,b,c,...)\"", self.0)
    }
}

#[cfg(feature = "std")]
impl std::error::Error for SignatureParseError {}

impl FromStr for OrbifoldSignature {
    type Err = SignatureParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || SignatureParseError(String::from(s));
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(err)?;
        let (g, rest) = inner.split_once(':').ok_or_else(err)?;
        let base_genus: u32 = g.trim().parse().map_err(|_| err())?;
        let mut indices = Vec::new();
        for part in rest.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let n: u64 = part.parse().map_err(|_| err())?;
            if n == 0 {
                return Err(err());
            }
            indices.push(n);
        }
        Ok(OrbifoldSignature::new(base_genus, indices))
    }
}

/// Riemann–Hurwitz failure modes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RhError {
    /// Some index does not divide the covering order.
    IndexMismatch { index: u64, order: u64 },
    /// The formula solves to a genus that is not a nonnegative integer;
    /// the exact rational value is reported, never rounded.
    NonIntegralGenus { genus: Rational },
}

impl fmt::Display for RhError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RhError::IndexMismatch { index, order } => {
                write!(f, "index {index} does not divide the order {order}")
            }
            RhError::NonIntegralGenus { genus } => {
                write!(f, "Riemann-Hurwitz genus {genus} is not a nonnegative integer")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for RhError {}

/// Genus of the degree-`order` cyclic cover with the given quotient
/// signature, from `2−2g = order·(2−2ḡ−Σ(1−1/nᵢ))` in exact rational
/// arithmetic.
pub fn rh_genus(order: u64, sig: &OrbifoldSignature) -> Result<u64, RhError> {
    for &n in sig.indices() {
        if !order.is_multiple_of(n) {
            return Err(RhError::IndexMismatch { index: n, order });
        }
    }
    let mut defect = Rational::from(2 - 2 * sig.base_genus() as i64);
    for &n in sig.indices() {
        defect = defect - (Rational::ONE - Rational::new(1, n as i64));
    }
    // g = (2 − order·defect) / 2
    let two_minus_2g = Rational::from(order as i64) * defect;
    let genus = (Rational::from(2i64) - two_minus_2g) * Rational::new(1, 2);
    if !genus.is_integer() || genus.numer() < 0 {
        return Err(RhError::NonIntegralGenus { genus });
    }
    Ok(genus.numer() as u64)
}

/// The requested prime-power family member does not exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InvalidFamily {
    pub p: u64,
    pub k: u32,
}

impl fmt::Display for InvalidFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "no family member for p={}, k={}: need p prime and k >= 3", self.p, self.k)
    }
}

#[cfg(feature = "std")]
impl std::error::Error for InvalidFamily {}

/// One member of the prime-power family realizing every minimal embedding
/// dimension `2k` (for `p = 2`) and `2k+1` (for odd primes `p`).
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FamilyRecord {
    pub p: u64,
    pub k: u32,
    /// Order of the acting map, `p^k`.
    pub order: u64,
    pub signature: OrbifoldSignature,
    pub genus: u64,
    /// Smallest sphere dimension realized by the iterated-join construction.
    pub embed_dim: u32,
    /// Exact minimal equivariant embedding dimension (equals `embed_dim`).
    pub dgf: u32,
}

/// Invariants of the order-`p^k` family member: quotient signature
/// `(0 : p^k ×p, p^{k−r} ×(p−1) for 1 ≤ r < k−1, p)`, its genus
/// `(k−1)(p−1)p^k/2 − p^{k−1} + 1`, and the exact embedding dimension.
pub fn fstar_family(p: u64, k: u32) -> Result<FamilyRecord, InvalidFamily> {
    if k < 3 || !is_prime(p) {
        return Err(InvalidFamily { p, k });
    }
    let order = p.pow(k);
    let mut indices = alloc::vec![order; p as usize];
    for r in 1..(k - 1) {
        let idx = p.pow(k - r);
        for _ in 0..(p - 1) {
            indices.push(idx);
        }
    }
    indices.push(p);
    let signature = OrbifoldSignature::new(0, indices);
    let genus = (k as u64 - 1) * (p - 1) * order / 2 - p.pow(k - 1) + 1;
    debug_assert_eq!(rh_genus(order, &signature), Ok(genus));
    let embed_dim = if p == 2 { 2 * k } else { 2 * k + 1 };
    Ok(FamilyRecord {
        p,
        k,
        order,
        signature,
        genus,
        embed_dim,
        dgf: embed_dim,
    })
}

/// Signature of the family member as a bare index multiset, for matching
/// arbitrary data against the family (any base genus).
pub fn fstar_indices(p: u64, k: u32) -> Option<Vec<u64>> {
    fstar_family(p, k).ok().map(|r| r.signature.indices().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(p: u32, q: u32, v: Variant) -> SurfaceSpec {
        SurfaceSpec::new(p, q, v).unwrap()
    }

    fn sig(s: &str) -> OrbifoldSignature {
        s.parse().unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(SurfaceSpec::new(0, 3, Variant::Plain).is_err());
        assert!(SurfaceSpec::new(3, 0, Variant::Plus).is_err());
        assert!(SurfaceSpec::new(1, 1, Variant::Minus).is_err());
        assert!(SurfaceSpec::new(1, 3, Variant::Plus).is_ok());
    }

    #[test]
    fn top_type_examples() {
        let t = spec(3, 4, Variant::Plain).top_type();
        assert_eq!((t.genus, t.d, t.knot_type), (3, 1, (3, 4)));
        assert!(!t.has_core_boundary && !t.negative_slope);
        assert_eq!(t.euler_char, 3 + 4 - 12);

        let t = spec(1, 3, Variant::Plus).top_type();
        assert_eq!((t.genus, t.d, t.knot_type), (1, 1, (2, 3)));
        assert!(t.has_core_boundary);

        let t = spec(4, 3, Variant::Minus).top_type();
        assert_eq!((t.d, t.knot_type, t.negative_slope), (3, (1, 1), true));
        assert_eq!(t.boundary_count(), 4);

        let t = spec(2, 2, Variant::Minus).top_type();
        assert_eq!((t.genus, t.d, t.knot_type), (1, 1, (1, 2)));
    }

    #[test]
    fn euler_characteristic_consistency() {
        for p in 1..=12 {
            for q in 1..=12 {
                for v in [Variant::Plain, Variant::Plus, Variant::Minus] {
                    let Ok(s) = SurfaceSpec::new(p, q, v) else { continue };
                    let t = s.top_type();
                    assert_eq!(
                        t.euler_char,
                        2 - 2 * t.genus as i64 - t.boundary_count() as i64,
                        "{s}"
                    );
                    let g = gcd(t.knot_type.0 as u64, t.knot_type.1 as u64);
                    assert_eq!(g, 1, "knot type of {s} not coprime");
                }
            }
        }
    }

    #[test]
    fn boundary_action_examples() {
        let r = spec(2, 3, Variant::Plain).boundary_action();
        assert_eq!(r.acting_order, 6);
        assert_eq!(r.orbits.len(), 1);
        assert_eq!(r.orbits[0].rotation, Rational::new(1, 6));
        assert_eq!(r.core_rotation, None);

        // (3,4) plus: d = 4, s = 1, fourth power rotates by 4/12 = 1/3 turn
        let r = spec(3, 4, Variant::Plus).boundary_action();
        assert_eq!(r.acting_order, 12);
        assert_eq!(r.orbits.len(), 1);
        let o = &r.orbits[0];
        assert_eq!((o.orbit_length, o.component_count, o.acting_power), (4, 4, 4));
        assert_eq!(o.rotation, Rational::new(1, 3));
        assert_eq!(r.core_rotation, Some(Rational::new(-1, 12)));

        // (1,3) plus: 2s = 1 mod 3 gives s = 2
        let r = spec(1, 3, Variant::Plus).boundary_action();
        assert_eq!(r.orbits[0].rotation, Rational::new(2, 3));

        // (4,3) minus: d = 3, -s = 1 mod 4 gives s = 3, rotation 9/12
        let r = spec(4, 3, Variant::Minus).boundary_action();
        assert_eq!(r.orbits[0].rotation, Rational::new(3, 4));
    }

    #[test]
    fn boundary_action_invariants() {
        for p in 1..=12 {
            for q in 1..=12 {
                for v in [Variant::Plain, Variant::Plus, Variant::Minus] {
                    let Ok(s) = SurfaceSpec::new(p, q, v) else { continue };
                    let r = s.boundary_action();
                    assert_eq!(r.total_components(), s.top_type().d, "{s}");
                    for o in &r.orbits {
                        // applying the rotation order/power times closes up
                        let times = (r.acting_order / o.acting_power as u64) as i64;
                        let total = o.rotation * Rational::from(times);
                        assert!(total.is_integer(), "{s}: {total} not integral");
                        assert_eq!(o.orbit_length, o.component_count);
                    }
                }
            }
        }
    }

    #[test]
    fn orbifold_examples() {
        assert_eq!(spec(2, 3, Variant::Plain).orbifold_type(), sig("(0:6,3,2)"));
        assert_eq!(spec(2, 2, Variant::Minus).orbifold_type(), sig("(0:4,4,2)"));
        assert_eq!(spec(4, 6, Variant::Plain).orbifold_type(), sig("(0:12,12,2,3)"));
    }

    #[test]
    fn bordered_quotient_examples() {
        let b = spec(2, 8, Variant::Plain).bordered_quotient().unwrap();
        assert_eq!((b.disk_count, b.singular_indices.as_slice()), (2, &[4][..]));
        let b = spec(3, 4, Variant::Plain).bordered_quotient().unwrap();
        assert_eq!((b.disk_count, b.singular_indices.as_slice()), (1, &[4, 3][..]));
        let b = spec(2, 2, Variant::Plain).bordered_quotient().unwrap();
        assert_eq!((b.disk_count, b.singular_indices.as_slice()), (2, &[][..]));
        assert!(spec(2, 2, Variant::Plus).bordered_quotient().is_err());
    }

    #[test]
    fn rh_examples() {
        assert_eq!(rh_genus(12, &sig("(0:12,4,3)")), Ok(3));
        assert_eq!(rh_genus(8, &sig("(0:8,8,4,2)")), Ok(5));
        // free case: g = n(gbar - 1) + 1
        for n in 1..=10 {
            for gbar in 1..=4u32 {
                let s = OrbifoldSignature::new(gbar, []);
                assert_eq!(rh_genus(n, &s), Ok(n * (gbar as u64 - 1) + 1));
            }
        }
        assert_eq!(
            rh_genus(12, &sig("(0:5,3)")),
            Err(RhError::IndexMismatch { index: 5, order: 12 })
        );
        // order 4 over (0:2): defect 1/2, genus -1/4... not integral
        assert!(matches!(
            rh_genus(4, &sig("(0:2)")),
            Err(RhError::NonIntegralGenus { .. })
        ));
    }

    #[test]
    fn capped_genus_matches_orbifold_genus() {
        // capping boundary circles to points does not change the genus, so
        // the closed-surface genus must solve Riemann-Hurwitz for the
        // quotient signature at the acting order
        for p in 1..=12 {
            for q in 1..=12 {
                for v in [Variant::Plain, Variant::Plus, Variant::Minus] {
                    let Ok(s) = SurfaceSpec::new(p, q, v) else { continue };
                    let got = rh_genus(s.acting_order(), &s.orbifold_type()).unwrap();
                    assert_eq!(got, s.top_type().genus, "{s}");
                }
            }
        }
    }

    #[test]
    fn fstar_examples() {
        let r = fstar_family(2, 3).unwrap();
        assert_eq!(r.signature, sig("(0:8,8,4,2)"));
        assert_eq!((r.genus, r.order, r.dgf), (5, 8, 6));

        let r = fstar_family(3, 3).unwrap();
        assert_eq!(r.signature, sig("(0:27,27,27,9,9,3)"));
        assert_eq!((r.genus, r.dgf), (46, 7));

        let r = fstar_family(2, 4).unwrap();
        assert_eq!(r.signature, sig("(0:16,16,8,4,2)"));
        assert_eq!(r.dgf, 8);

        assert!(fstar_family(2, 2).is_err());
        assert!(fstar_family(4, 3).is_err());
    }

    #[test]
    fn fstar_genus_solves_rh() {
        for p in [2u64, 3, 5] {
            for k in 3..=5 {
                let r = fstar_family(p, k).unwrap();
                assert_eq!(rh_genus(r.order, &r.signature), Ok(r.genus));
                assert_eq!(r.order, p.pow(k));
            }
        }
    }

    #[test]
    fn fstar_realizes_k_distinct_exponents() {
        // the nested-fixed-set rule needs k distinct positive p-exponents
        for p in [2u64, 3, 5] {
            for k in 3..=5u32 {
                let r = fstar_family(p, k).unwrap();
                let mut exps: Vec<u32> = r
                    .signature
                    .indices()
                    .iter()
                    .map(|&n| {
                        let mut e = 0;
                        let mut m = n;
                        while m % p == 0 {
                            m /= p;
                            e += 1;
                        }
                        e
                    })
                    .filter(|&e| e > 0)
                    .collect();
                exps.sort_unstable();
                exps.dedup();
                assert_eq!(exps.len(), k as usize);
            }
        }
    }

    #[test]
    fn signature_parse_and_normalize() {
        let s = sig("( 0 : 3, 1, 12 ,4 )");
        assert_eq!(s.indices(), &[12, 4, 3]);
        assert_eq!(alloc::format!("{s}"), "(0:12,4,3)");
        assert_eq!(sig("(2:)"), OrbifoldSignature::new(2, []));
        assert!("(0:3,0)".parse::<OrbifoldSignature>().is_err());
        assert!("0:3".parse::<OrbifoldSignature>().is_err());
        assert_eq!(sig("(0:2,3)").multiplicity(2), 1);
        assert_eq!(sig("(0:8,8,4)").multiplicity(8), 2);
    }
}
