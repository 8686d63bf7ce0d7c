//! Bound engine for the minimal equivariant embedding dimension `D_g(f)` of
//! a periodic map, and for its topological-category variant `D̂_g(f)`.
//!
//! A map is described by a [`MapDatum`]: surface genus, order, and quotient
//! orbifold signature, validated against Riemann–Hurwitz on construction.
//! Lower bounds come from fixed-point/tangent-space rules reading only the
//! order and the signature; upper bounds come from the catalogue of
//! surgered-surface models (encoded as [`table_rows`]), the prime-power
//! family, and the free case. Exact values are returned only where a lower
//! and an upper bound meet.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::numtheory::{factorize, gcd, Rational};
use crate::surfaces::{fstar_family, OrbifoldSignature, Variant};

/// A periodic map datum `(genus, order, quotient signature)`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct MapDatum {
    genus: u64,
    order: u64,
    signature: OrbifoldSignature,
    free: bool,
}

/// Errors from the bound engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    /// The datum fails Riemann–Hurwitz; carries the exact rational defect
    /// `(2−2g) − n(2−2ḡ−Σ(1−1/nᵢ))` when it is defined.
    InvalidDatum {
        reason: String,
        defect: Option<Rational>,
    },
    /// Outside the range in which exact values are determined.
    OutOfRange(String),
    /// No model in the catalogue gives an upper bound for the datum.
    NotCovered(String),
    /// Internal assertion: the lower and upper bounds disagree.
    Inconsistent { lower: u32, upper: u32 },
}

impl fmt::Display for ClassifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassifyError::InvalidDatum { reason, defect } => {
                write!(f, "invalid datum: {reason}")?;
                if let Some(d) = defect {
                    write!(f, " (Riemann-Hurwitz defect {d})")?;
                }
                Ok(())
            }
            ClassifyError::OutOfRange(msg) => write!(f, "out of determined range: {msg}"),
            ClassifyError::NotCovered(msg) => write!(f, "not covered by any model: {msg}"),
            ClassifyError::Inconsistent { lower, upper } => {
                write!(f, "inconsistent bounds: lower {lower}, upper {upper}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ClassifyError {}

impl MapDatum {
    /// Validates divisibility of all indices and the exact Riemann–Hurwitz
    /// identity before accepting the datum.
    pub fn new(
        genus: u64,
        order: u64,
        signature: OrbifoldSignature,
    ) -> Result<MapDatum, ClassifyError> {
        if order == 0 {
            return Err(ClassifyError::InvalidDatum {
                reason: String::from("order must be positive"),
                defect: None,
            });
        }
        for &n in signature.indices() {
            if !order.is_multiple_of(n) {
                return Err(ClassifyError::InvalidDatum {
                    reason: alloc::format!("index {n} does not divide the order {order}"),
                    defect: None,
                });
            }
        }
        let mut branch = Rational::from(2 - 2 * signature.base_genus() as i64);
        for &n in signature.indices() {
            branch = branch - (Rational::ONE - Rational::new(1, n as i64));
        }
        let defect =
            Rational::from(2 - 2 * genus as i64) - Rational::from(order as i64) * branch;
        if !defect.is_zero() {
            return Err(ClassifyError::InvalidDatum {
                reason: alloc::format!(
                    "genus {genus} does not solve Riemann-Hurwitz for order {order} and type {signature}"
                ),
                defect: Some(defect),
            });
        }
        let free = signature.is_free();
        Ok(MapDatum {
            genus,
            order,
            signature,
            free,
        })
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn signature(&self) -> &OrbifoldSignature {
        &self.signature
    }

    /// Every orbit has full length; no singular points in the quotient.
    pub fn is_free(&self) -> bool {
        self.free
    }

    /// Fixed points of the map itself: one per index equal to the order.
    pub fn fixed_points(&self) -> usize {
        self.signature.multiplicity(self.order)
    }

    /// The same action after equivariant surgery along `t` free orbits:
    /// genus grows by `order·t`, the base genus by `t`, indices unchanged.
    pub fn enlarge(&self, t: u32) -> MapDatum {
        let sig = self
            .signature
            .with_base_genus(self.signature.base_genus() + t);
        MapDatum::new(self.genus + self.order * t as u64, self.order, sig)
            .expect("free-orbit surgery preserves Riemann-Hurwitz")
    }
}

impl fmt::Display for MapDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "genus {} order {} type {}",
            self.genus, self.order, self.signature
        )
    }
}

/// Whether a bound is a lower bound, an upper bound, or an exact value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum BoundKind {
    LowerBound,
    UpperBound,
    Exact,
}

/// A dimension bound with rule-level provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BoundResult {
    pub value: u32,
    pub kind: BoundKind,
    /// One tag per rule or model that produced the value.
    pub provenance: Vec<String>,
}

/// Outcome of the nested-fixed-set rule for one prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SeqBound {
    /// Number of distinct positive `p`-exponents among the indices.
    pub k: u32,
    /// `2k`, upgraded to `2k+1` when the map has at least 3 fixed points;
    /// `0` when no index is divisible by `p`.
    pub bound: u32,
}

fn p_exponent(mut n: u64, p: u64) -> u32 {
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

/// Nested-fixed-set rule: indices of the form `p^r·(part coprime to p)`
/// with `k` distinct exponents `r > 0` force a strictly increasing chain of
/// `k` fixed-point homology spheres of even codimension, hence dimension at
/// least `2k`; a first set bigger than two points upgrades this to `2k+1`.
pub fn seq_bound(sig: &OrbifoldSignature, n: u64, p: u64) -> SeqBound {
    let mut exps: Vec<u32> = sig
        .indices()
        .iter()
        .map(|&idx| p_exponent(idx, p))
        .filter(|&e| e > 0)
        .collect();
    exps.sort_unstable();
    exps.dedup();
    let k = exps.len() as u32;
    let bound = if k == 0 {
        0
    } else if sig.multiplicity(n) >= 3 {
        2 * k + 1
    } else {
        2 * k
    };
    SeqBound { k, bound }
}

/// Largest lower bound for `D_g(f)` obtainable from the fixed-point rules.
///
/// All rules read only the order and the signature, so the bound is
/// untouched by equivariant surgery along free orbits.
pub fn lower_bound(datum: &MapDatum) -> BoundResult {
    let n = datum.order();
    let sig = datum.signature();
    let mut candidates: Vec<(u32, String)> = Vec::new();
    candidates.push(if datum.genus() == 0 {
        (2, String::from("baseline"))
    } else {
        (3, String::from("baseline"))
    });

    // rules for quotients with exactly three singular points, one of full
    // index: (gbar : n, a, b) with a, b > 1
    let idx = sig.indices();
    if idx.len() == 3 && idx[0] == n && n > 1 {
        let (a, b) = (idx[1], idx[2]);
        candidates.push((4, String::from("three-singular-points")));
        if gcd(a, b) == 1 {
            candidates.push((6, String::from("coprime-indices")));
        }
        if a == n && n > 2 * b {
            candidates.push((6, String::from("two-full-points")));
        }
        if a == n && b == n {
            candidates.push((5, String::from("three-full-points")));
        }
        let split = factorize(a).iter().any(|&(l, e)| e > p_exponent(b, l))
            && factorize(b).iter().any(|&(l, e)| e > p_exponent(a, l));
        if split {
            candidates.push((6, String::from("prime-power-split")));
        }
    }

    for (p, _) in factorize(n) {
        let s = seq_bound(sig, n, p);
        if s.k > 0 {
            candidates.push((s.bound, alloc::format!("nested-fixed-sets:p={p},k={}", s.k)));
        }
    }

    let best = candidates.iter().map(|(v, _)| *v).max().unwrap();
    BoundResult {
        value: best,
        kind: BoundKind::LowerBound,
        provenance: candidates
            .into_iter()
            .filter(|(v, _)| *v == best)
            .map(|(_, tag)| tag)
            .collect(),
    }
}

/// One catalogue row instantiated at a parameter value.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TableRowInstance {
    /// 1-based line number in the catalogue.
    pub line: u32,
    pub h: u64,
    pub genus: u64,
    pub order: u64,
    pub signature: OrbifoldSignature,
    /// Surface model `(p, q, variant)` realizing the row.
    pub model: (u32, u32, Variant),
    /// Upper bound for `D_g(f)` realized by capping the model.
    pub bound: u32,
}

/// Instantiates catalogue line `line` (1–15) at parameter `h`.
///
/// Lines 1–7 are parametric families; lines 8–15 are single rows defined
/// only at `h = 0`. Returns `None` where the row is undefined or its model
/// degenerates.
pub fn table_row(line: u32, h: u64) -> Option<TableRowInstance> {
    use Variant::{Minus, Plain, Plus};
    let fixed = |line, g, n, idx: &[u64], model| {
        (h == 0).then(|| (line, g, n, idx.to_vec(), model, 6))
    };
    let (line, genus, order, indices, model, bound) = match line {
        1 => (1, h, 4 * h + 2, alloc::vec![4 * h + 2, 2 * h + 1, 2], (2, (2 * h + 1) as u32, Plain), 6),
        2 if h >= 1 => (2, h, 4 * h, alloc::vec![4 * h, 4 * h, 2], ((2 * h) as u32, 2, Minus), 6),
        3 => (3, 3 * h, 9 * h + 3, alloc::vec![9 * h + 3, 3 * h + 1, 3], (3, (3 * h + 1) as u32, Plain), 6),
        4 => (4, 3 * h + 1, 9 * h + 6, alloc::vec![9 * h + 6, 3 * h + 2, 3], (3, (3 * h + 2) as u32, Plain), 6),
        5 if h >= 1 => (5, 3 * h, 9 * h, alloc::vec![9 * h, 9 * h, 3], ((3 * h) as u32, 3, Plus), 6),
        6 => (6, 3 * h + 1, 9 * h + 3, alloc::vec![9 * h + 3, 9 * h + 3, 3], ((3 * h + 1) as u32, 3, Plus), 6),
        7 => (7, 3 * h + 2, 9 * h + 6, alloc::vec![9 * h + 6, 9 * h + 6, 3], ((3 * h + 2) as u32, 3, Minus), 6),
        8 => fixed(8, 6, 20, &[20, 5, 4], (4, 5, Plain))?,
        9 => fixed(9, 9, 28, &[28, 7, 4], (4, 7, Plain))?,
        10 => fixed(10, 10, 30, &[30, 6, 5], (5, 6, Plain))?,
        11 => fixed(11, 12, 36, &[36, 9, 4], (4, 9, Plain))?,
        12 => fixed(12, 4, 12, &[12, 6, 4], (3, 4, Minus))?,
        13 => {
            let (l, g, n, i, m, _) = fixed(13, 1, 3, &[3, 3, 3], (3, 3, Plain))?;
            (l, g, n, i, m, 5)
        }
        14 => {
            let (l, g, n, i, m, _) = fixed(14, 1, 4, &[4, 4, 2], (2, 4, Plain))?;
            (l, g, n, i, m, 4)
        }
        15 => {
            let (l, g, n, i, m, _) = fixed(15, 2, 6, &[6, 6, 3], (2, 6, Plain))?;
            (l, g, n, i, m, 4)
        }
        _ => return None,
    };
    Some(TableRowInstance {
        line,
        h,
        genus,
        order,
        signature: OrbifoldSignature::new(0, indices),
        model,
        bound,
    })
}

/// All catalogue rows with parameter up to `h_max` inclusive.
pub fn table_rows(h_max: u64) -> Vec<TableRowInstance> {
    let mut rows = Vec::new();
    for line in 1..=15 {
        for h in 0..=h_max {
            if let Some(r) = table_row(line, h) {
                rows.push(r);
            }
        }
    }
    rows
}

/// Catalogue rows matching a datum exactly (genus, order and signature).
pub fn match_table(datum: &MapDatum) -> Vec<TableRowInstance> {
    let mut out = Vec::new();
    let matches = |row: &TableRowInstance| {
        row.genus == datum.genus()
            && row.order == datum.order()
            && &row.signature == datum.signature()
    };
    for line in 1..=7u32 {
        for h in 0.. {
            let Some(row) = table_row(line, h) else {
                if h > 0 {
                    break;
                }
                continue;
            };
            if row.order > datum.order() {
                break;
            }
            if matches(&row) {
                out.push(row);
            }
        }
    }
    for line in 8..=15u32 {
        if let Some(row) = table_row(line, 0) {
            if matches(&row) {
                out.push(row);
            }
        }
    }
    out
}

fn prime_power(n: u64) -> Option<(u64, u32)> {
    let f = factorize(n);
    (f.len() == 1).then(|| f[0])
}

/// Detects prime-power family data by order and index multiset, for any
/// base genus (free-orbit surgery keeps the indices).
pub fn match_family(datum: &MapDatum) -> Option<(u64, u32)> {
    let (p, k) = prime_power(datum.order())?;
    if k < 3 {
        return None;
    }
    let family = fstar_family(p, k).ok()?;
    (family.signature.indices() == datum.signature().indices()).then_some((p, k))
}

/// Least upper bound for `D_g(f)` realized by a construction in the
/// catalogue: the free case, the surgered-surface models, the prime-power
/// family, and the genus-2 order-6 map embedding equivariantly in `S³`.
pub fn upper_bound(datum: &MapDatum) -> Result<BoundResult, ClassifyError> {
    let mut candidates: Vec<(u32, String)> = Vec::new();
    if datum.is_free() {
        candidates.push((3, String::from("free-action")));
    }
    for row in match_table(datum) {
        candidates.push((row.bound, alloc::format!("table:line-{}:h={}", row.line, row.h)));
    }
    if let Some((p, k)) = match_family(datum) {
        let v = if p == 2 { 2 * k } else { 2 * k + 1 };
        candidates.push((v, alloc::format!("family:p={p},k={k}")));
    }
    if datum.genus() == 2
        && datum.order() == 6
        && datum.signature() == &OrbifoldSignature::new(0, [2, 2, 3, 3])
    {
        candidates.push((3, String::from("genus2-order6")));
    }
    let Some(best) = candidates.iter().map(|(v, _)| *v).min() else {
        return Err(ClassifyError::NotCovered(alloc::format!("{datum}")));
    };
    Ok(BoundResult {
        value: best,
        kind: BoundKind::UpperBound,
        provenance: candidates
            .into_iter()
            .filter(|(v, _)| *v == best)
            .map(|(_, tag)| tag)
            .collect(),
    })
}

/// Exact minimal embedding dimension where the theory determines it:
/// order at least `3g` on positive genus (with the torus and genus-2
/// exceptions), the order-2 torus case, and the prime-power families.
pub fn dgf(datum: &MapDatum) -> Result<BoundResult, ClassifyError> {
    if let Some((p, k)) = match_family(datum) {
        let value = if p == 2 { 2 * k } else { 2 * k + 1 };
        return exact_checked(datum, value, alloc::vec![alloc::format!("family:p={p},k={k}")]);
    }
    if datum.genus() == 1 && datum.order() == 2 {
        let mut provenance = alloc::vec![String::from("torus-order-2")];
        provenance.extend(lower_bound(datum).provenance);
        return Ok(BoundResult {
            value: 3,
            kind: BoundKind::Exact,
            provenance,
        });
    }
    if datum.genus() == 0 {
        return Err(ClassifyError::OutOfRange(String::from(
            "exact values are stated for positive genus",
        )));
    }
    if datum.order() < 3 * datum.genus() {
        return Err(ClassifyError::OutOfRange(alloc::format!(
            "order {} is below 3·genus = {}",
            datum.order(),
            3 * datum.genus()
        )));
    }
    let lower = lower_bound(datum);
    let upper = upper_bound(datum)?;
    if lower.value != upper.value {
        return Err(ClassifyError::Inconsistent {
            lower: lower.value,
            upper: upper.value,
        });
    }
    let mut provenance = lower.provenance;
    provenance.extend(upper.provenance);
    Ok(BoundResult {
        value: lower.value,
        kind: BoundKind::Exact,
        provenance,
    })
}

fn exact_checked(
    datum: &MapDatum,
    value: u32,
    mut provenance: Vec<String>,
) -> Result<BoundResult, ClassifyError> {
    let lower = lower_bound(datum);
    let upper = upper_bound(datum)?;
    if lower.value != value || upper.value != value {
        return Err(ClassifyError::Inconsistent {
            lower: lower.value,
            upper: upper.value,
        });
    }
    provenance.extend(lower.provenance);
    Ok(BoundResult {
        value,
        kind: BoundKind::Exact,
        provenance,
    })
}

/// Interval for the non-smooth minimal embedding dimension `D̂_g(f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DhatInterval {
    pub lower: u32,
    pub upper: u32,
    pub provenance: Vec<String>,
}

/// What is known about `D̂_g(f)`.
///
/// The nested-fixed-set rule survives non-smooth embeddings, so family data
/// keep their exact value. For catalogue rows with `D = 6` the bordered
/// model has at most two boundary components except on line 12, and coning
/// those from the two poles of an `S⁴ ⊃ S³` gives `D̂ ≤ 4`; line 12 has
/// three boundary components and only the trivial interval `[3, 6]`.
/// Elsewhere only `3 ≤ D̂ ≤ D` is reported, never a guess.
pub fn dhat_bounds(datum: &MapDatum) -> Result<DhatInterval, ClassifyError> {
    if let Some((p, k)) = match_family(datum) {
        let v = if p == 2 { 2 * k } else { 2 * k + 1 };
        return Ok(DhatInterval {
            lower: v,
            upper: v,
            provenance: alloc::vec![alloc::format!("family-rigid:p={p},k={k}")],
        });
    }
    let table = match_table(datum);
    if table.iter().any(|r| r.bound == 6) {
        return Ok(if table.iter().any(|r| r.line == 12) {
            DhatInterval {
                lower: 3,
                upper: 6,
                provenance: alloc::vec![String::from("line-12-open")],
            }
        } else {
            DhatInterval {
                lower: 3,
                upper: 4,
                provenance: alloc::vec![String::from("poles-join")],
            }
        });
    }
    if datum.genus() == 0 {
        return Ok(DhatInterval {
            lower: 2,
            upper: 2,
            provenance: alloc::vec![String::from("baseline")],
        });
    }
    match dgf(datum) {
        Ok(exact) => Ok(DhatInterval {
            lower: 3,
            upper: exact.value,
            provenance: exact.provenance,
        }),
        Err(_) if datum.is_free() => Ok(DhatInterval {
            lower: 3,
            upper: 3,
            provenance: alloc::vec![String::from("free-action")],
        }),
        Err(e) => Err(e),
    }
}
