//! Numeric realization of the equivariant surfaces: evaluation of the
//! explicit parameterizations in `ℂ² = ℝ⁴`, the join-of-spheres
//! construction, embedding plans with their cap recipes, sampling, and
//! numeric verification of equivariance and rotation numbers.
//!
//! Tolerance policy: `1e-12` for single algebraic identities (norms, join
//! identities), `1e-9` for composed pipelines (residuals over sampled
//! clouds, rotation measurements).

mod plan;
mod sample;

pub use plan::{
    embedding_plan, family_embedding, odd_family_embedding, topological_plan, AnchorData,
    BoundaryId, CapKind, CapPlan, EmbeddingPlan, FamilyEmbedding, NoPlan,
};
pub use sample::{
    cap_seam_defect, equivariance_residual, equivariance_residual_with, sample_embedding,
    separation_floor, MissingAction, PatchGrid, PatchId, PlaneRotation, PointCloud, Sample,
    SeparationReport, SphereAction,
};

use core::f64::consts::PI;
use eqsurf_core::numtheory::{ext_gcd, Rational};
use eqsurf_core::surfaces::{SurfaceSpec, Variant};
use num_complex::Complex64;
use thiserror::Error;

/// A point of `ℂ²`; on-sphere points satisfy `|z|² + |z′|² = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointC2 {
    pub z: Complex64,
    pub zp: Complex64,
}

impl PointC2 {
    pub fn new(z: Complex64, zp: Complex64) -> PointC2 {
        PointC2 { z, zp }
    }

    /// Deviation of `|z|² + |z′|²` from `1`.
    pub fn sphere_defect(&self) -> f64 {
        (self.z.norm_sqr() + self.zp.norm_sqr() - 1.0).abs()
    }

    pub fn to_r4(&self) -> [f64; 4] {
        [self.z.re, self.z.im, self.zp.re, self.zp.im]
    }

    pub fn dist(&self, other: &PointC2) -> f64 {
        ((self.z - other.z).norm_sqr() + (self.zp - other.zp).norm_sqr()).sqrt()
    }
}

fn unit(angle: f64) -> Complex64 {
    Complex64::from_polar(1.0, angle)
}

/// The coordinatewise rotation `(z, z′) ↦ (e^{2πi/a} z, e^{2πi/b} z′)`.
pub fn tau_apply(a: u32, b: u32, pt: PointC2) -> PointC2 {
    tau_power(a, b, 1, pt)
}

/// `k`-th power of the rotation, applied as a single rotation.
pub fn tau_power(a: u32, b: u32, k: i64, pt: PointC2) -> PointC2 {
    let fa = Rational::new(k, a as i64).fract_mod1().as_f64();
    let fb = Rational::new(k, b as i64).fract_mod1().as_f64();
    PointC2 {
        z: pt.z * unit(2.0 * PI * fa),
        zp: pt.zp * unit(2.0 * PI * fb),
    }
}

/// The projection point `(−1, 0)` has no stereographic image.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("stereographic projection is singular at (-1, 0)")]
pub struct PoleSingularity;

/// Stereographic projection `(u+vi, x+yi) ↦ (v, x, y)/(1+u)` used for the
/// `ℝ³` visualization exports.
pub fn stereographic(pt: &PointC2) -> Result<[f64; 3], PoleSingularity> {
    let denom = 1.0 + pt.z.re;
    if denom.abs() < 1e-12 {
        return Err(PoleSingularity);
    }
    Ok([pt.z.im / denom, pt.zp.re / denom, pt.zp.im / denom])
}

/// Geodesic join `[x, y]_t = x cos(πt/2) + y sin(πt/2)` of points living in
/// orthogonal coordinate blocks; maps `t = 0` to `x` and `t = 1` to `y`.
///
/// The blocks are concatenated, so for unit `x`, `y` the result is a unit
/// vector of `ℝ^{|x|+|y|}`.
pub fn join_point(x: &[f64], y: &[f64], t: f64) -> Vec<f64> {
    let (ct, st) = ((PI * t / 2.0).cos(), (PI * t / 2.0).sin());
    x.iter()
        .map(|&v| v * ct)
        .chain(y.iter().map(|&v| v * st))
        .collect()
}

/// A boundary component: one of the torus-link components, or the annulus
/// core `∂_o` of the plus/minus variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentId {
    Link(u32),
    Core,
}

/// The requested boundary component does not exist for the spec.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("invalid component {0:?} for this spec")]
pub struct InvalidComponent(pub ComponentId);

/// Exact parameterization data for the boundary circles of a spec.
///
/// The `d` link components are the geodesics
/// `K_l(θ) = (√2/2·e^{i(eθ + 2πbl/d)}, √2/2·e^{i(cθ + 2πal/d)})` where
/// `e = q/d`, `c` is the (signed) slope numerator over `d`, and `(a, b)`
/// is the Bézout pair with `a·q − b·(slope) = d` fixed by the extended
/// Euclid algorithm. The acting map sends `K_l(θ)` to
/// `K_{l+step}(θ + 2π·shift)` with the exact rational `shift` below.
#[derive(Debug, Clone, Copy)]
pub struct BoundaryCurves {
    spec: SurfaceSpec,
    d: u32,
    /// Windings of each component: `e` around the `z`-angle, `c` (signed)
    /// around the `z′`-angle.
    pub e: i64,
    pub c: i64,
    pub bezout: (i64, i64),
}

impl BoundaryCurves {
    pub fn new(spec: SurfaceSpec) -> BoundaryCurves {
        let t = spec.top_type();
        let d = t.d;
        let q = spec.q() as i64;
        let slope = match spec.variant() {
            Variant::Plain => spec.p() as i64,
            Variant::Plus => spec.p() as i64 + 1,
            Variant::Minus => 1 - spec.p() as i64,
        };
        let (g, a, mb) = ext_gcd(q, slope);
        debug_assert_eq!(g, d as i64);
        let b = -mb; // a·q − b·slope = d
        debug_assert_eq!(a * q - b * slope, d as i64);
        BoundaryCurves {
            spec,
            d,
            e: q / d as i64,
            c: slope / d as i64,
            bezout: (a, b),
        }
    }

    pub fn spec(&self) -> SurfaceSpec {
        self.spec
    }

    pub fn link_count(&self) -> u32 {
        self.d
    }

    pub fn has_core(&self) -> bool {
        self.spec.variant() != Variant::Plain
    }

    /// Phase offsets (in turns) of component `l`: the `z`-angle offset
    /// `b·l/d` and the `z′`-angle offset `a·l/d`.
    fn offsets(&self, l: u32) -> (Rational, Rational) {
        let (a, b) = self.bezout;
        let d = self.d as i64;
        (
            Rational::new(b * l as i64, d).fract_mod1(),
            Rational::new(a * l as i64, d).fract_mod1(),
        )
    }

    /// Point of the component at parameter `θ` (radians).
    pub fn point(&self, comp: ComponentId, theta: f64) -> Result<PointC2, InvalidComponent> {
        match comp {
            ComponentId::Core => {
                if !self.has_core() {
                    return Err(InvalidComponent(comp));
                }
                Ok(PointC2::new(Complex64::new(0.0, 0.0), unit(-theta)))
            }
            ComponentId::Link(l) => {
                if l >= self.d {
                    return Err(InvalidComponent(comp));
                }
                let (boff, aoff) = self.offsets(l);
                let r = 0.5f64.sqrt();
                Ok(PointC2::new(
                    unit(self.e as f64 * theta + 2.0 * PI * boff.as_f64()).scale(r),
                    unit(self.c as f64 * theta + 2.0 * PI * aoff.as_f64()).scale(r),
                ))
            }
        }
    }

    /// The acting map sends component `l` to `l + link_step` (mod `d`).
    pub fn link_step(&self) -> i64 {
        match self.spec.variant() {
            Variant::Plain => 0,
            Variant::Plus => -1,
            Variant::Minus => 1,
        }
    }

    /// Parameter shift (in turns) the acting map induces on the link
    /// parameterizations: `d/(pq)` for plain, `(aq − b)/(pq)` for ±.
    pub fn link_shift(&self) -> Rational {
        let pq = self.spec.p() as i64 * self.spec.q() as i64;
        let (a, b) = self.bezout;
        match self.spec.variant() {
            Variant::Plain => Rational::new(self.d as i64, pq).fract_mod1(),
            Variant::Plus | Variant::Minus => {
                Rational::new(a * self.spec.q() as i64 - b, pq).fract_mod1()
            }
        }
    }

    /// Parameter shift of the core `∂_o` under the acting map, in turns.
    pub fn core_shift(&self) -> Rational {
        let pq = self.spec.p() as i64 * self.spec.q() as i64;
        Rational::new(-1, pq)
    }

    /// Power of the acting map that fixes each link component.
    pub fn fixing_power(&self) -> u32 {
        match self.spec.variant() {
            Variant::Plain => 1,
            Variant::Plus | Variant::Minus => self.d,
        }
    }

    /// The acting map on `ℂ²` for this spec (rotation turns per coordinate).
    pub fn acting_rotation(&self) -> (Rational, Rational) {
        let p = self.spec.p() as i64;
        let q = self.spec.q() as i64;
        match self.spec.variant() {
            Variant::Plain => (Rational::new(1, p), Rational::new(1, q)),
            Variant::Plus | Variant::Minus => (Rational::new(1, p), Rational::new(1, p * q)),
        }
    }

    /// Applies the `k`-th power of the acting map to a point.
    pub fn apply(&self, k: i64, pt: PointC2) -> PointC2 {
        let (rz, rzp) = self.acting_rotation();
        let fz = (rz * Rational::from(k)).fract_mod1().as_f64();
        let fzp = (rzp * Rational::from(k)).fract_mod1().as_f64();
        PointC2 {
            z: pt.z * unit(2.0 * PI * fz),
            zp: pt.zp * unit(2.0 * PI * fzp),
        }
    }
}

/// The geodesic parameterization of one boundary component.
pub fn boundary_param(
    spec: SurfaceSpec,
    comp: ComponentId,
    theta: f64,
) -> Result<PointC2, InvalidComponent> {
    BoundaryCurves::new(spec).point(comp, theta)
}

/// Numerically measures the rotation the appropriate power of the acting
/// isometry induces on a boundary component, as a (signed) fraction of a
/// full turn: the `d`-th power on the link components of ±, the map itself
/// elsewhere. Link values are normalized into `[0, 1)`, the core value into
/// `(−1, 0]`, matching the exact rotation data conventions.
pub fn rotation_estimate(spec: SurfaceSpec, comp: ComponentId) -> Result<f64, InvalidComponent> {
    let curves = BoundaryCurves::new(spec);
    let power = match comp {
        ComponentId::Link(_) => curves.fixing_power() as i64,
        ComponentId::Core => 1,
    };
    let windings = match comp {
        ComponentId::Link(_) => (curves.e, curves.c),
        ComponentId::Core => (0, -1),
    };
    let theta0 = 0.79; // arbitrary, off any symmetry axis
    let image = curves.apply(power, curves.point(comp, theta0)?);

    // coarse scan for the parameter of the image point, then one refinement
    // step through whichever coordinate has nonzero winding
    let m = 8192;
    let mut best = (f64::INFINITY, 0.0);
    for i in 0..m {
        let th = i as f64 / m as f64 * 2.0 * PI;
        let d = curves.point(comp, th)?.dist(&image);
        if d < best.0 {
            best = (d, th);
        }
    }
    let coarse = best.1;
    let at = curves.point(comp, coarse)?;
    let (w, have, want) = if windings.0 != 0 {
        (windings.0, at.z, image.z)
    } else {
        (windings.1, at.zp, image.zp)
    };
    let delta = (want * have.conj()).arg() / w as f64;
    let theta_star = coarse + delta;
    debug_assert!(curves.point(comp, theta_star)?.dist(&image) < 1e-9);

    let raw = (theta_star - theta0) / (2.0 * PI);
    let frac = raw - raw.floor(); // [0, 1)
    Ok(match comp {
        ComponentId::Link(_) => frac,
        ComponentId::Core => {
            if frac == 0.0 {
                0.0
            } else {
                frac - 1.0
            }
        }
    })
}
