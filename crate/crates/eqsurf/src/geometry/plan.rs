//! Embedding plans: which join of spheres receives the capped surface, and
//! which cap recipe closes each boundary component.
//!
//! Smooth plans follow the cap constructions: a pole cone over the annulus
//! core, an equator annulus plus lower hemisphere when the torus-link part
//! is connected, and offset disk caps (a `t = 1/2` join offset of the
//! projection annulus, plus the sub-disk it bounds) when every component is
//! unknotted. Plain surfaces with unknotted boundary drop to `S⁵`, and to
//! `S⁴` when `(p;q) = 2`. Independently, any spec with at most two boundary
//! circles gets a topological plan into `S⁴` by coning from the poles; the
//! cones over knotted components are not smooth, so those plans carry
//! `smooth: false`.

use eqsurf_core::numtheory::Rational;
use eqsurf_core::surfaces::{SurfaceSpec, Variant};
use serde::Serialize;
use thiserror::Error;

use super::BoundaryCurves;

/// Cap recipes used by the plans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CapKind {
    /// Geodesic cone from the north pole of the cap sphere over `∂_o`.
    PoleCone,
    /// Join annulus from the component to the equator circle, closed by the
    /// lower hemisphere.
    EquatorAnnulus,
    /// Offset disk cap: half-join lift of the projection annulus onto a
    /// core circle, closed by a sub-disk of the anchor cone.
    OffsetDisk,
    /// Plain cone from a pole of the `S⁰` factor (topological plans only).
    PoleJoin,
}

/// Which boundary circle a cap closes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryId {
    Link(u32),
    Core,
}

/// Anchor data for a cap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AnchorData {
    None,
    /// North or south pole of the cap factor (`+1`/`−1` on `S⁰`).
    Pole { north: bool },
    /// `index`-th of `count` evenly spaced anchor points on the equator
    /// circle (or on `S¹`/`S⁰` for the reduced plain plans).
    EquatorPoint { index: u32, count: u32 },
}

/// One planned cap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CapPlan {
    pub boundary: BoundaryId,
    pub kind: CapKind,
    pub anchor: AnchorData,
}

/// Which core circle of `S³` the offset-cap projection annulus lands on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProjectionFlavor {
    /// Components wind once around the `z′`-angle: project onto the core
    /// of `H′` (the circle `z = 0`).
    HPrimeCore,
    /// Components wind once around the `z`-angle: project onto the core of
    /// `H` (the circle `z′ = 0`).
    HCore,
}

/// A join-construction recipe with ambient dimension.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmbeddingPlan {
    pub spec: SurfaceSpec,
    /// Dimension of the target sphere: `Σ factors + (#factors − 1)`.
    pub ambient_dim: u32,
    /// Sphere dimensions joined; the first factor is always the `S³`
    /// containing the bordered surface.
    pub join_factors: Vec<u32>,
    pub caps: Vec<CapPlan>,
    /// Rotation (in turns) of the cap factor under the acting map.
    pub cap_rotation: Rational,
    /// Projection flavor for offset caps, where applicable.
    pub projection: Option<ProjectionFlavor>,
    /// Whether the planned embedding is smooth (after the smoothing step
    /// along the attaching circles, where the action is free).
    pub smooth: bool,
    pub provenance: String,
}

impl EmbeddingPlan {
    /// Number of ambient coordinates, `ambient_dim + 1`.
    pub fn coords(&self) -> usize {
        self.ambient_dim as usize + 1
    }

    /// Width of the cap coordinate block.
    pub fn cap_block(&self) -> usize {
        self.join_factors[1] as usize + 1
    }
}

/// The cap constructions do not apply: the torus-link part is disconnected
/// and its components are knotted.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("no embedding plan: {0}")]
pub struct NoPlan(pub String);

fn plan_base(factors: Vec<u32>) -> (u32, Vec<u32>) {
    let dim = factors.iter().sum::<u32>() + factors.len() as u32 - 1;
    (dim, factors)
}

/// The smooth equivariant embedding plan for a spec.
pub fn embedding_plan(spec: SurfaceSpec) -> Result<EmbeddingPlan, NoPlan> {
    let t = spec.top_type();
    let curves = BoundaryCurves::new(spec);
    let d = t.d;
    let projection = if t.unknotted() {
        Some(if curves.c.unsigned_abs() == 1 {
            ProjectionFlavor::HPrimeCore
        } else {
            ProjectionFlavor::HCore
        })
    } else {
        None
    };
    let offset_caps = |count: u32| -> Vec<CapPlan> {
        (0..count)
            .map(|l| CapPlan {
                boundary: BoundaryId::Link(l),
                kind: CapKind::OffsetDisk,
                anchor: AnchorData::EquatorPoint { index: l, count },
            })
            .collect()
    };
    match spec.variant() {
        Variant::Plain => {
            if t.unknotted() {
                let (ambient_dim, join_factors) =
                    plan_base(if d == 2 { vec![3, 0] } else { vec![3, 1] });
                Ok(EmbeddingPlan {
                    spec,
                    ambient_dim,
                    join_factors,
                    caps: offset_caps(d),
                    cap_rotation: Rational::ZERO, // identity on the anchors
                    projection,
                    smooth: true,
                    provenance: if d == 2 {
                        String::from("offset-caps+gcd2-reduction+smoothing")
                    } else {
                        String::from("offset-caps+unknotted-reduction+smoothing")
                    },
                })
            } else if d == 1 {
                let (ambient_dim, join_factors) = plan_base(vec![3, 2]);
                Ok(EmbeddingPlan {
                    spec,
                    ambient_dim,
                    join_factors,
                    caps: vec![CapPlan {
                        boundary: BoundaryId::Link(0),
                        kind: CapKind::EquatorAnnulus,
                        anchor: AnchorData::None,
                    }],
                    cap_rotation: curves.link_shift(),
                    projection: None,
                    smooth: true,
                    provenance: String::from("equator-annulus-cap+smoothing"),
                })
            } else {
                Err(NoPlan(format!(
                    "boundary of {spec} has {d} knotted components"
                )))
            }
        }
        Variant::Plus | Variant::Minus => {
            let mut caps = vec![CapPlan {
                boundary: BoundaryId::Core,
                kind: CapKind::PoleCone,
                anchor: AnchorData::Pole { north: true },
            }];
            let (cap_rotation, provenance) = if d == 1 {
                caps.push(CapPlan {
                    boundary: BoundaryId::Link(0),
                    kind: CapKind::EquatorAnnulus,
                    anchor: AnchorData::None,
                });
                (
                    curves.link_shift(),
                    String::from("pole-cone+equator-annulus-cap+smoothing"),
                )
            } else if t.unknotted() {
                caps.extend(offset_caps(d));
                (
                    Rational::new(1, d as i64),
                    String::from("pole-cone+offset-caps+smoothing"),
                )
            } else {
                return Err(NoPlan(format!(
                    "torus-link part of {spec} has {d} knotted components"
                )));
            };
            let (ambient_dim, join_factors) = plan_base(vec![3, 2]);
            Ok(EmbeddingPlan {
                spec,
                ambient_dim,
                join_factors,
                caps,
                cap_rotation,
                projection: if d > 1 { projection } else { None },
                smooth: true,
                provenance,
            })
        }
    }
}

/// The merely-topological plan into `S⁴` available whenever the surface has
/// at most two boundary circles: cone each from its own pole of the `S⁰`
/// join factor. Not smooth when a coned component is knotted.
pub fn topological_plan(spec: SurfaceSpec) -> Option<EmbeddingPlan> {
    let t = spec.top_type();
    if t.boundary_count() > 2 {
        return None;
    }
    let mut caps = Vec::new();
    if t.has_core_boundary {
        caps.push(CapPlan {
            boundary: BoundaryId::Core,
            kind: CapKind::PoleJoin,
            anchor: AnchorData::Pole { north: true },
        });
    }
    for l in 0..t.d {
        caps.push(CapPlan {
            boundary: BoundaryId::Link(l),
            kind: CapKind::PoleJoin,
            anchor: AnchorData::Pole {
                north: !t.has_core_boundary && l == 0,
            },
        });
    }
    let (ambient_dim, join_factors) = plan_base(vec![3, 0]);
    Some(EmbeddingPlan {
        spec,
        ambient_dim,
        join_factors,
        caps,
        cap_rotation: Rational::ZERO,
        projection: None,
        smooth: false,
        provenance: String::from("pole-join-topological"),
    })
}

/// Plan-level metadata for the prime-power families: the iterated join
/// factors and the rotation order carried by each factor. These are
/// dimension records only; the family surfaces are not sampled.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyEmbedding {
    pub order: u64,
    pub ambient_dim: u32,
    pub join_factors: Vec<u32>,
    /// Order of the rotation acting on each join factor (1 = identity).
    pub factor_rotation_orders: Vec<u64>,
}

/// Iterated-join plan for the order-`p^k` family member with an exact
/// minimal dimension: `S³ * S¹ * … * S¹` with a final identity factor,
/// reaching `S^{2k+1}`, or `S^{2k}` for `p = 2` where the identity `S¹`
/// collapses to `S⁰`.
pub fn family_embedding(p: u64, k: u32) -> Option<FamilyEmbedding> {
    if k < 3 || !eqsurf_core::numtheory::is_prime(p) {
        return None;
    }
    let order = p.pow(k);
    let mut join_factors = vec![3u32];
    let mut orders = vec![order];
    for r in 2..k {
        join_factors.push(1);
        orders.push(p.pow(r));
    }
    join_factors.push(if p == 2 { 0 } else { 1 });
    orders.push(1);
    let ambient_dim = join_factors.iter().sum::<u32>() + join_factors.len() as u32 - 1;
    Some(FamilyEmbedding {
        order,
        ambient_dim,
        join_factors,
        factor_rotation_orders: orders,
    })
}

/// Iterated-join plan for the odd-dimension family: every `S¹` factor
/// carries a nontrivial rotation, reaching `S^{2k+1}` for `k > 1`.
pub fn odd_family_embedding(p: u64, k: u32) -> Option<FamilyEmbedding> {
    if k < 2 || !eqsurf_core::numtheory::is_prime(p) {
        return None;
    }
    let order = p.pow(k);
    let mut join_factors = vec![3u32];
    let mut orders = vec![order];
    for r in 1..k {
        join_factors.push(1);
        orders.push(p.pow(r));
    }
    let ambient_dim = join_factors.iter().sum::<u32>() + join_factors.len() as u32 - 1;
    Some(FamilyEmbedding {
        order,
        ambient_dim,
        join_factors,
        factor_rotation_orders: orders,
    })
}
