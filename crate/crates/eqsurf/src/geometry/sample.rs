//! Sampling of planned embeddings into point clouds, with the exact
//! parameter-level action recorded so equivariance can be checked sample
//! against sample.
//!
//! Every patch is a map `[0,1]² → ℝ^m` (curves use only the second
//! parameter). The acting map permutes patches and translates the angular
//! parameter by exact rationals with denominators dividing `pq`, so the
//! angular sample count is rounded up to a multiple of `pq`; the action
//! then maps grid points to grid points and the recorded permutation is
//! exact.

use core::f64::consts::PI;
use std::fmt;

use eqsurf_core::numtheory::Rational;
use eqsurf_core::surfaces::Variant;
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use super::plan::{BoundaryId, CapKind, EmbeddingPlan, ProjectionFlavor};
use super::{join_point, BoundaryCurves, ComponentId, PointC2};

/// Identity of a sampled patch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PatchId {
    /// Meridian disk `D_j` of the handlebody `H`.
    DiskH(u32),
    /// Meridian disk `D′_k` of `H′` (plain variant).
    DiskHPrime(u32),
    /// The annulus face `A′` (plus/minus variants).
    AnnulusFace,
    /// Ruled surgery strip at one crossing.
    Band(u32),
    /// Torus-link boundary component `K_l` (1-dimensional).
    LinkCurve(u32),
    /// The annulus core `∂_o` (1-dimensional).
    CoreCurve,
    /// Cone from the cap-sphere north pole over `∂_o`.
    PoleCone,
    /// Join annulus from the link component to the equator circle.
    JoinAnnulus,
    /// Lower hemisphere closing the join annulus.
    Hemisphere,
    /// Offset cap, lifted projection annulus part, for cap slot `l`.
    CapLift(u32),
    /// Offset cap, inner sub-disk part, for cap slot `l`.
    CapDisk(u32),
    /// Topological pole cone for plan cap slot `i`.
    PoleJoinCone(u32),
}

impl fmt::Display for PatchId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatchId::DiskH(j) => write!(f, "diskH:{j}"),
            PatchId::DiskHPrime(k) => write!(f, "diskH':{k}"),
            PatchId::AnnulusFace => write!(f, "annulus"),
            PatchId::Band(u) => write!(f, "band:{u}"),
            PatchId::LinkCurve(l) => write!(f, "link:{l}"),
            PatchId::CoreCurve => write!(f, "core"),
            PatchId::PoleCone => write!(f, "cap:pole-cone"),
            PatchId::JoinAnnulus => write!(f, "cap:join-annulus"),
            PatchId::Hemisphere => write!(f, "cap:hemisphere"),
            PatchId::CapLift(l) => write!(f, "cap:lift:{l}"),
            PatchId::CapDisk(l) => write!(f, "cap:disk:{l}"),
            PatchId::PoleJoinCone(i) => write!(f, "cap:pole-join:{i}"),
        }
    }
}

/// Grid layout of one patch inside a [`PointCloud`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PatchGrid {
    pub id: PatchId,
    /// Number of samples in the `u` direction (1 for curves).
    pub nu: usize,
    /// Number of samples in the `v` direction.
    pub nv: usize,
    /// `v` wraps around (angular direction sampled without the duplicate
    /// endpoint); open patches sample both endpoints.
    pub v_periodic: bool,
    /// Offset of this patch's first sample in the cloud.
    pub base: usize,
    /// The patch lies in the `S³` coordinate block (exportable to `ℝ³`).
    pub stage3: bool,
}

impl PatchGrid {
    fn params(&self, ui: usize, vi: usize) -> (f64, f64) {
        let u = if self.nu > 1 {
            ui as f64 / (self.nu - 1) as f64
        } else {
            0.0
        };
        let v = if self.v_periodic {
            vi as f64 / self.nv as f64
        } else if self.nv > 1 {
            vi as f64 / (self.nv - 1) as f64
        } else {
            0.0
        };
        (u, v)
    }

    pub fn index(&self, ui: usize, vi: usize) -> usize {
        self.base + ui * self.nv + vi
    }
}

/// One sampled point.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    /// Index into [`PointCloud::patches`].
    pub patch: usize,
    pub u: f64,
    pub v: f64,
    pub point: Vec<f64>,
}

/// Rotation in one coordinate plane, angle as an exact fraction of a turn.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlaneRotation {
    pub i: usize,
    pub j: usize,
    pub turns: Rational,
}

/// A block rotation of the ambient sphere.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SphereAction {
    pub dim: usize,
    pub planes: Vec<PlaneRotation>,
}

impl SphereAction {
    pub fn apply(&self, point: &[f64]) -> Vec<f64> {
        let mut out = point.to_vec();
        for pl in &self.planes {
            let ang = 2.0 * PI * pl.turns.fract_mod1().as_f64();
            let (c, s) = (ang.cos(), ang.sin());
            let (x, y) = (out[pl.i], out[pl.j]);
            out[pl.i] = c * x - s * y;
            out[pl.j] = s * x + c * y;
        }
        out
    }

    /// Deliberately wrong action (first rotation off by a quarter turn),
    /// for negative-control tests.
    pub fn perturbed(&self) -> SphereAction {
        let mut planes = self.planes.clone();
        planes[0].turns = planes[0].turns + Rational::new(1, 4);
        SphereAction {
            dim: self.dim,
            planes,
        }
    }
}

/// A sampled embedding: points, patch layout, the ambient action, and the
/// parameter-level permutation of samples induced by the acting map.
#[derive(Debug, Clone)]
pub struct PointCloud {
    /// Dimension of the ambient sphere.
    pub ambient_dim: u32,
    /// Number of coordinates (`ambient_dim + 1`).
    pub coords: usize,
    pub patches: Vec<PatchGrid>,
    pub samples: Vec<Sample>,
    pub action: Option<SphereAction>,
    /// `image[i]` is the sample at the acting map's image parameter.
    pub image: Option<Vec<usize>>,
}

/// The cloud does not carry the recorded action/permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("point cloud has no recorded action")]
pub struct MissingAction;

impl PointCloud {
    pub fn patch_id(&self, sample: &Sample) -> PatchId {
        self.patches[sample.patch].id
    }

    /// Largest deviation of any sample from unit norm.
    pub fn max_norm_defect(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| (s.point.iter().map(|x| x * x).sum::<f64>().sqrt() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Largest distance between the action-image of a sample and the sample
/// recorded at the image parameter; zero means exact equivariance on the
/// sample set.
pub fn equivariance_residual(cloud: &PointCloud) -> Result<f64, MissingAction> {
    equivariance_residual_with(cloud, cloud.action.as_ref().ok_or(MissingAction)?)
}

/// Residual against an explicitly supplied ambient action (used for the
/// negative control).
pub fn equivariance_residual_with(
    cloud: &PointCloud,
    action: &SphereAction,
) -> Result<f64, MissingAction> {
    let image = cloud.image.as_ref().ok_or(MissingAction)?;
    let mut worst = 0.0f64;
    for (i, s) in cloud.samples.iter().enumerate() {
        let moved = action.apply(&s.point);
        let target = &cloud.samples[image[i]].point;
        worst = worst.max(dist(&moved, target));
    }
    Ok(worst)
}

/// Sample-scale injectivity report: the smallest distance between samples
/// on distinct patches, ignoring seam coincidences (distance below `1e-9`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeparationReport {
    pub floor: f64,
    pub coincident_pairs: usize,
    pub samples_used: usize,
}

/// Reported, never asserted against a universal constant: the patchwork
/// keeps full faces under the surgery bands, so nearby cross-patch samples
/// are expected. Subsamples to at most `budget` points.
pub fn separation_floor(cloud: &PointCloud, budget: usize) -> SeparationReport {
    let n = cloud.samples.len();
    let stride = n.div_ceil(budget.max(2));
    let picked: Vec<&Sample> = cloud.samples.iter().step_by(stride.max(1)).collect();
    let mut floor = f64::INFINITY;
    let mut coincident = 0usize;
    for (i, a) in picked.iter().enumerate() {
        for b in picked.iter().skip(i + 1) {
            if a.patch == b.patch {
                continue;
            }
            let d = dist(&a.point, &b.point);
            if d < 1e-9 {
                coincident += 1;
            } else if d < floor {
                floor = d;
            }
        }
    }
    SeparationReport {
        floor: if floor.is_finite() { floor } else { 0.0 },
        coincident_pairs: coincident,
        samples_used: picked.len(),
    }
}

struct Sampler {
    plan: EmbeddingPlan,
    curves: BoundaryCurves,
    p: u32,
    q: u32,
    d: u32,
    variant: Variant,
    coords: usize,
    res: usize,
    nv: usize,
}

fn unit(angle: f64) -> Complex64 {
    Complex64::from_polar(1.0, angle)
}

impl Sampler {
    fn new(plan: &EmbeddingPlan, resolution: u32) -> Sampler {
        let spec = plan.spec;
        let curves = BoundaryCurves::new(spec);
        let (p, q) = (spec.p(), spec.q());
        let pq = (p * q) as usize;
        let res = resolution.max(1) as usize;
        let nv = pq * res.div_ceil(pq);
        Sampler {
            plan: plan.clone(),
            curves,
            p,
            q,
            d: curves.link_count(),
            variant: spec.variant(),
            coords: plan.coords(),
            res,
            nv,
        }
    }

    fn patch_list(&self) -> Vec<PatchGrid> {
        let (p, q) = (self.p, self.q);
        let pq = (p * q) as usize;
        let mut ids: Vec<(PatchId, bool)> = Vec::new();
        for j in 0..p {
            ids.push((PatchId::DiskH(j), true));
        }
        match self.variant {
            Variant::Plain => {
                for k in 0..q {
                    ids.push((PatchId::DiskHPrime(k), true));
                }
            }
            _ => ids.push((PatchId::AnnulusFace, true)),
        }
        for u in 0..pq {
            ids.push((PatchId::Band(u as u32), true));
        }
        for l in 0..self.d {
            ids.push((PatchId::LinkCurve(l), true));
        }
        if self.variant != Variant::Plain {
            ids.push((PatchId::CoreCurve, true));
        }
        for (slot, cap) in self.plan.caps.iter().enumerate() {
            match cap.kind {
                CapKind::PoleCone => ids.push((PatchId::PoleCone, false)),
                CapKind::EquatorAnnulus => {
                    ids.push((PatchId::JoinAnnulus, false));
                    ids.push((PatchId::Hemisphere, false));
                }
                CapKind::OffsetDisk => {
                    let l = match cap.boundary {
                        BoundaryId::Link(l) => l,
                        BoundaryId::Core => unreachable!("offset caps close link components"),
                    };
                    ids.push((PatchId::CapLift(l), false));
                    ids.push((PatchId::CapDisk(l), false));
                }
                CapKind::PoleJoin => ids.push((PatchId::PoleJoinCone(slot as u32), false)),
            }
        }
        let mut out = Vec::with_capacity(ids.len());
        let mut base = 0usize;
        for (id, stage3) in ids {
            let (nu, nv, v_periodic) = match id {
                PatchId::LinkCurve(_) | PatchId::CoreCurve => (1, self.nv, true),
                PatchId::Band(_) => (self.res + 1, self.res + 1, false),
                _ => (self.res + 1, self.nv, true),
            };
            out.push(PatchGrid {
                id,
                nu,
                nv,
                v_periodic,
                base,
                stage3,
            });
            base += nu * nv;
        }
        out
    }

    fn embed4(&self, pt: PointC2) -> Vec<f64> {
        let mut out = vec![0.0; self.coords];
        out[..4].copy_from_slice(&pt.to_r4());
        out
    }

    fn link_point(&self, l: u32, v: f64) -> PointC2 {
        self.curves
            .point(ComponentId::Link(l), 2.0 * PI * v)
            .expect("component index is in range")
    }

    fn core_point(&self, v: f64) -> PointC2 {
        self.curves
            .point(ComponentId::Core, 2.0 * PI * v)
            .expect("core exists for plus/minus")
    }

    /// Projection annulus for the offset caps, slot-local phases included:
    /// `r = 0` lies on the chosen core circle, `r = 1` on the component.
    fn projection_annulus(&self, l: u32, r: f64, v: f64) -> PointC2 {
        let theta = 2.0 * PI * v;
        let (boff, aoff) = {
            // same phase offsets as the component parameterization
            let (a, b) = self.curves.bezout;
            let d = self.d as i64;
            (
                Rational::new(b * l as i64, d).fract_mod1().as_f64(),
                Rational::new(a * l as i64, d).fract_mod1().as_f64(),
            )
        };
        let zc = unit(self.curves.e as f64 * theta + 2.0 * PI * boff);
        let zpc = unit(self.curves.c as f64 * theta + 2.0 * PI * aoff);
        let (near, far) = ((PI * r / 4.0).sin(), (PI * r / 4.0).cos());
        match self.plan.projection.expect("offset caps carry a flavor") {
            ProjectionFlavor::HPrimeCore => PointC2::new(zc.scale(near), zpc.scale(far)),
            ProjectionFlavor::HCore => PointC2::new(zc.scale(far), zpc.scale(near)),
        }
    }

    fn cap_anchor(&self, index: u32, count: u32) -> Vec<f64> {
        let width = self.plan.cap_block();
        let mut out = vec![0.0; width];
        match width {
            1 => out[0] = if index == 0 { 1.0 } else { -1.0 },
            _ => {
                let ang = 2.0 * PI * index as f64 / count as f64;
                out[0] = ang.cos();
                out[1] = ang.sin();
            }
        }
        out
    }

    fn north(&self) -> Vec<f64> {
        let width = self.plan.cap_block();
        let mut out = vec![0.0; width];
        out[width - 1] = 1.0;
        out
    }

    /// Rotation used to push the slot-0 offset cap to slot `l` (±  only).
    fn push_rotation(&self, l: u32) -> Vec<PlaneRotation> {
        let (rz, rzp) = self.curves.acting_rotation();
        let li = Rational::from(l as i64);
        let mut planes = vec![
            PlaneRotation { i: 0, j: 1, turns: rz * li },
            PlaneRotation { i: 2, j: 3, turns: rzp * li },
        ];
        if self.plan.cap_block() >= 2 {
            planes.push(PlaneRotation {
                i: 4,
                j: 5,
                turns: Rational::new(l as i64, self.d as i64),
            });
        }
        planes
    }

    fn eval(&self, id: PatchId, u: f64, v: f64) -> Vec<f64> {
        let (p, q) = (self.p as f64, self.q as f64);
        let root2 = 0.5f64.sqrt();
        match id {
            PatchId::DiskH(j) => {
                let r = root2 + u * (1.0 - root2);
                let z = unit(2.0 * PI * j as f64 / p).scale(r);
                let zp = unit(2.0 * PI * v).scale((1.0 - r * r).max(0.0).sqrt());
                self.embed4(PointC2::new(z, zp))
            }
            PatchId::DiskHPrime(k) => {
                let r = root2 + u * (1.0 - root2);
                let z = unit(2.0 * PI * v).scale((1.0 - r * r).max(0.0).sqrt());
                let zp = unit(2.0 * PI * k as f64 / q).scale(r);
                self.embed4(PointC2::new(z, zp))
            }
            PatchId::AnnulusFace => {
                let r = (1.0 - u) * root2;
                let z = unit(2.0 * PI * q * v).scale(r);
                let zp = unit(2.0 * PI * v).scale((1.0 - r * r).max(0.0).sqrt());
                self.embed4(PointC2::new(z, zp))
            }
            PatchId::Band(idx) => self.embed4(self.band_point(idx, u, v)),
            PatchId::LinkCurve(l) => self.embed4(self.link_point(l, v)),
            PatchId::CoreCurve => self.embed4(self.core_point(v)),
            PatchId::PoleCone => {
                join_point(&self.core_point(v).to_r4(), &self.north(), u)
            }
            PatchId::JoinAnnulus => {
                let e = [ (2.0 * PI * v).cos(), (2.0 * PI * v).sin(), 0.0 ];
                join_point(&self.link_point(0, v).to_r4(), &e, u)
            }
            PatchId::Hemisphere => {
                let (cu, su) = ((PI * u / 2.0).cos(), (PI * u / 2.0).sin());
                let mut out = vec![0.0; self.coords];
                out[4] = (2.0 * PI * v).cos() * cu;
                out[5] = (2.0 * PI * v).sin() * cu;
                out[6] = -su;
                out
            }
            PatchId::CapLift(l) => self.offset_cap(l, false, u, v),
            PatchId::CapDisk(l) => self.offset_cap(l, true, u, v),
            PatchId::PoleJoinCone(slot) => {
                let cap = &self.plan.caps[slot as usize];
                let x = match cap.boundary {
                    BoundaryId::Core => self.core_point(v),
                    BoundaryId::Link(l) => self.link_point(l, v),
                };
                let north = matches!(
                    cap.anchor,
                    super::plan::AnchorData::Pole { north: true }
                );
                join_point(&x.to_r4(), &[if north { 1.0 } else { -1.0 }], u)
            }
        }
    }

    fn offset_cap(&self, l: u32, inner_disk: bool, u: f64, v: f64) -> Vec<f64> {
        let plain = self.variant == Variant::Plain;
        // plain components are individually invariant: build each cap over
        // its own component with its own anchor. Plus/minus caps are the
        // images of the slot-0 cap under powers of the acting block map.
        let slot = if plain { l } else { 0 };
        let (r, t) = if inner_disk {
            (0.0, (1.0 + u) / 2.0)
        } else {
            (u, (1.0 - u) / 2.0)
        };
        let surf = self.projection_annulus(slot, r, v);
        let anchor = self.cap_anchor(if plain { l } else { 0 }, self.d);
        let mut point = join_point(&surf.to_r4(), &anchor, t);
        if !plain && l > 0 {
            let act = SphereAction {
                dim: self.coords,
                planes: self.push_rotation(l),
            };
            point = act.apply(&point);
        }
        point
    }

    fn band_point(&self, idx: u32, u: f64, v: f64) -> PointC2 {
        let (pf, qf) = (self.p as f64, self.q as f64);
        let root2 = 0.5f64.sqrt();
        let s = 2.0 * v - 1.0;
        let (a, b) = match self.variant {
            Variant::Plain => {
                let (j, k) = (idx / self.q, idx % self.q);
                let (xj, yk) = (2.0 * PI * j as f64 / pf, 2.0 * PI * k as f64 / qf);
                let wv = PI / (2.0 * qf);
                let wh = PI / (2.0 * pf);
                (
                    PointC2::new(unit(xj).scale(root2), unit(yk + wv * s).scale(root2)),
                    PointC2::new(unit(xj + wh * s).scale(root2), unit(yk).scale(root2)),
                )
            }
            Variant::Plus | Variant::Minus => {
                let pq = pf * qf;
                let j = idx % self.p;
                let yc = 2.0 * PI * idx as f64 / pq;
                let wv = PI / (2.0 * qf);
                let wr = PI / (2.0 * pq);
                let th = yc + wr * s;
                (
                    PointC2::new(
                        unit(2.0 * PI * j as f64 / pf).scale(root2),
                        unit(yc + wv * s).scale(root2),
                    ),
                    PointC2::new(unit(qf * th).scale(root2), unit(th).scale(root2)),
                )
            }
        };
        let mix = |x: f64, y: f64| (1.0 - u) * x + u * y;
        let raw = PointC2::new(
            Complex64::new(mix(a.z.re, b.z.re), mix(a.z.im, b.z.im)),
            Complex64::new(mix(a.zp.re, b.zp.re), mix(a.zp.im, b.zp.im)),
        );
        let norm = (raw.z.norm_sqr() + raw.zp.norm_sqr()).sqrt();
        PointC2::new(raw.z.unscale(norm), raw.zp.unscale(norm))
    }

    /// Action-image of a patch: target patch and exact `v` shift in turns.
    fn patch_image(&self, id: PatchId) -> (PatchId, Rational) {
        let (p, q) = (self.p, self.q);
        let pq = (p * q) as i64;
        let plain = self.variant == Variant::Plain;
        match id {
            PatchId::DiskH(j) => (
                PatchId::DiskH((j + 1) % p),
                if plain {
                    Rational::new(1, q as i64)
                } else {
                    Rational::new(1, pq)
                },
            ),
            PatchId::DiskHPrime(k) => {
                (PatchId::DiskHPrime((k + 1) % q), Rational::new(1, p as i64))
            }
            PatchId::AnnulusFace => (PatchId::AnnulusFace, Rational::new(1, pq)),
            PatchId::Band(idx) => {
                let next = if plain {
                    let (j, k) = (idx / q, idx % q);
                    ((j + 1) % p) * q + (k + 1) % q
                } else {
                    (idx + 1) % (p * q)
                };
                (PatchId::Band(next), Rational::ZERO)
            }
            PatchId::LinkCurve(l) => (
                PatchId::LinkCurve(self.step_component(l)),
                self.curves.link_shift(),
            ),
            PatchId::CoreCurve => (PatchId::CoreCurve, self.curves.core_shift()),
            PatchId::PoleCone => (PatchId::PoleCone, self.curves.core_shift()),
            PatchId::JoinAnnulus => (PatchId::JoinAnnulus, self.plan.cap_rotation),
            PatchId::Hemisphere => (PatchId::Hemisphere, self.plan.cap_rotation),
            PatchId::CapLift(l) => {
                let (next, shift) = self.offset_cap_image(l);
                (PatchId::CapLift(next), shift)
            }
            PatchId::CapDisk(l) => {
                let (next, shift) = self.offset_cap_image(l);
                (PatchId::CapDisk(next), shift)
            }
            PatchId::PoleJoinCone(slot) => {
                let shift = match self.plan.caps[slot as usize].boundary {
                    BoundaryId::Core => self.curves.core_shift(),
                    BoundaryId::Link(_) => self.curves.link_shift(),
                };
                (PatchId::PoleJoinCone(slot), shift)
            }
        }
    }

    fn step_component(&self, l: u32) -> u32 {
        let step = self.curves.link_step();
        ((l as i64 + step).rem_euclid(self.d as i64)) as u32
    }

    /// Wrap shift of the offset caps: the `d`-th power of the acting map
    /// translates the projection-annulus parameter by an exact rational
    /// depending on the projection flavor.
    fn offset_wrap_shift(&self) -> Rational {
        let (p, q, d) = (self.p as i64, self.q as i64, self.d as i64);
        match (self.variant, self.plan.projection.unwrap()) {
            (Variant::Plain, ProjectionFlavor::HPrimeCore) => Rational::new(1, q),
            (Variant::Plain, ProjectionFlavor::HCore) => Rational::new(1, p),
            (_, ProjectionFlavor::HPrimeCore) => {
                Rational::new(self.curves.c * d, p * q).fract_mod1()
            }
            (_, ProjectionFlavor::HCore) => Rational::new(d, p).fract_mod1(),
        }
    }

    fn offset_cap_image(&self, l: u32) -> (u32, Rational) {
        if self.variant == Variant::Plain {
            (l, self.offset_wrap_shift())
        } else if l + 1 < self.d {
            (l + 1, Rational::ZERO)
        } else {
            (0, self.offset_wrap_shift())
        }
    }

    fn ambient_action(&self) -> SphereAction {
        let (rz, rzp) = self.curves.acting_rotation();
        let mut planes = vec![
            PlaneRotation { i: 0, j: 1, turns: rz },
            PlaneRotation { i: 2, j: 3, turns: rzp },
        ];
        if self.plan.cap_block() >= 2 {
            planes.push(PlaneRotation {
                i: 4,
                j: 5,
                turns: self.plan.cap_rotation,
            });
        }
        SphereAction {
            dim: self.coords,
            planes,
        }
    }
}

/// Samples every patch of a planned embedding on (at least) a
/// `resolution × resolution` grid and records the exact action.
pub fn sample_embedding(plan: &EmbeddingPlan, resolution: u32) -> PointCloud {
    let sampler = Sampler::new(plan, resolution);
    let patches = sampler.patch_list();
    let total: usize = patches.iter().map(|p| p.nu * p.nv).sum();
    let mut samples = Vec::with_capacity(total);
    for (pi, patch) in patches.iter().enumerate() {
        for ui in 0..patch.nu {
            for vi in 0..patch.nv {
                let (u, v) = patch.params(ui, vi);
                samples.push(Sample {
                    patch: pi,
                    u,
                    v,
                    point: sampler.eval(patch.id, u, v),
                });
            }
        }
    }

    let slot_of = |id: PatchId| -> usize {
        patches
            .iter()
            .position(|p| p.id == id)
            .expect("patch images stay within the patch list")
    };
    let mut image = Vec::with_capacity(total);
    for patch in &patches {
        let (target_id, shift) = sampler.patch_image(patch.id);
        let target = &patches[slot_of(target_id)];
        debug_assert_eq!((target.nu, target.nv), (patch.nu, patch.nv));
        let steps = if patch.v_periodic {
            let num = shift.numer() * patch.nv as i64;
            debug_assert_eq!(num % shift.denom(), 0, "shift not grid-exact");
            (num / shift.denom()).rem_euclid(patch.nv as i64) as usize
        } else {
            debug_assert!(shift.is_zero());
            0
        };
        for ui in 0..patch.nu {
            for vi in 0..patch.nv {
                let tvi = if patch.v_periodic {
                    (vi + steps) % patch.nv
                } else {
                    vi
                };
                image.push(target.index(ui, tvi));
            }
        }
    }

    PointCloud {
        ambient_dim: plan.ambient_dim,
        coords: sampler.coords,
        patches,
        samples,
        action: Some(sampler.ambient_action()),
        image: Some(image),
    }
}

/// Largest distance at any shared parameter between a cap patch edge and
/// the boundary curve (or companion cap patch) it must meet.
pub fn cap_seam_defect(plan: &EmbeddingPlan, resolution: u32) -> f64 {
    let sampler = Sampler::new(plan, resolution);
    let nv = sampler.nv;
    let mut worst = 0.0f64;
    let mut check = |a: Vec<f64>, b: Vec<f64>| {
        worst = worst.max(dist(&a, &b));
    };
    for (slot, cap) in plan.caps.iter().enumerate() {
        for vi in 0..nv {
            let v = vi as f64 / nv as f64;
            match cap.kind {
                CapKind::PoleCone => check(
                    sampler.eval(PatchId::PoleCone, 0.0, v),
                    sampler.eval(PatchId::CoreCurve, 0.0, v),
                ),
                CapKind::EquatorAnnulus => {
                    check(
                        sampler.eval(PatchId::JoinAnnulus, 0.0, v),
                        sampler.eval(PatchId::LinkCurve(0), 0.0, v),
                    );
                    check(
                        sampler.eval(PatchId::JoinAnnulus, 1.0, v),
                        sampler.eval(PatchId::Hemisphere, 0.0, v),
                    );
                }
                CapKind::OffsetDisk => {
                    let l = match cap.boundary {
                        BoundaryId::Link(l) => l,
                        BoundaryId::Core => unreachable!(),
                    };
                    // the lift lands on a component with an exact offset
                    let (m, off) = sampler.cap_attachment(l);
                    let vv = v + off.as_f64();
                    check(
                        sampler.eval(PatchId::CapLift(l), 1.0, v),
                        sampler.eval(PatchId::LinkCurve(m), 0.0, vv),
                    );
                    check(
                        sampler.eval(PatchId::CapLift(l), 0.0, v),
                        sampler.eval(PatchId::CapDisk(l), 0.0, v),
                    );
                }
                CapKind::PoleJoin => {
                    let curve = match cap.boundary {
                        BoundaryId::Core => PatchId::CoreCurve,
                        BoundaryId::Link(l) => PatchId::LinkCurve(l),
                    };
                    check(
                        sampler.eval(PatchId::PoleJoinCone(slot as u32), 0.0, v),
                        sampler.eval(curve, 0.0, v),
                    );
                }
            }
        }
    }
    worst
}

impl Sampler {
    /// Which component the slot-`l` offset cap attaches to, and the exact
    /// parameter offset of the attachment.
    fn cap_attachment(&self, l: u32) -> (u32, Rational) {
        if self.variant == Variant::Plain {
            (l, Rational::ZERO)
        } else {
            let step = self.curves.link_step();
            let m = ((step * l as i64).rem_euclid(self.d as i64)) as u32;
            (m, (self.curves.link_shift() * Rational::from(l as i64)).fract_mod1())
        }
    }
}
