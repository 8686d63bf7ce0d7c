//! Combinatorial oracle for the closed-form surface invariants.
//!
//! The surgered disk systems are modeled as a ribbon complex: one vertex per
//! surgery band at the `p·q` crossings on the Clifford torus, directed
//! strand segments between consecutive crossings along each source curve,
//! and the original disk/annulus pieces as faces. Direction-preserving
//! surgery assigns every strand a unique successor, so boundary components
//! fall out as successor cycles, the Euler characteristic as
//! `Σχ(face) − #bands`, and homology classes on the torus as winding sums.
//! None of this shares a code path with the closed-form lemmas in
//! [`crate::surfaces`], which is the point.
//!
//! Strand winding contributions are reported in the basis used for knot
//! types: the first entry counts turns in the `z′`-angle direction (the
//! `H`-disk boundary direction), the second counts turns in the `z`-angle
//! direction, so a torus link component of type `(a, b)` traces to class
//! `(a, b)`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::numtheory::Rational;
use crate::surfaces::{SurfaceSpec, Variant};

/// The two mirror-image surgery conventions. [`Convention::Standard`] keeps
/// the directions the boundary parameterizations induce; [`Convention::Mirror`]
/// reverses the `H`-disk boundary directions first. Oracle comparisons
/// always use the standard convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    Standard,
    Mirror,
}

/// Source curve of a strand segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrandLabel {
    /// Arc of an `H`-disk boundary `∂D_j`.
    DiskBoundary { j: u32 },
    /// Arc of an `H′`-disk boundary `∂D′_k` (plain variant only).
    DiskPrimeBoundary { k: u32 },
    /// Arc of the annulus rim `∂₁` on the torus (plus/minus variants).
    AnnulusRim { u: u32 },
}

/// A directed strand between two consecutive crossings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strand {
    pub label: StrandLabel,
    /// Index of the strand this one continues into after its band.
    pub successor: usize,
    /// Winding contribution in turns, `(z′-direction, z-direction)`.
    pub delta: (Rational, Rational),
}

/// A face of the complex, before surgery.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaceKind {
    DiskH(u32),
    DiskHPrime(u32),
    Annulus,
}

impl FaceKind {
    fn euler_char(&self) -> i64 {
        match self {
            FaceKind::Annulus => 0,
            _ => 1,
        }
    }
}

/// The ribbon-graph model of a surgered disk system.
#[derive(Debug, Clone)]
pub struct SurgeryComplex {
    spec: SurfaceSpec,
    convention: Convention,
    /// Effective direction of the `∂D_j` arcs after applying the variant's
    /// reversal and the convention's.
    reversed: bool,
    pub faces: Vec<FaceKind>,
    pub strands: Vec<Strand>,
}

/// The successor structure is not a permutation, or a traced cycle fails to
/// close up to an integral homology class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MalformedComplex(pub String);

impl fmt::Display for MalformedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "malformed surgery complex: {}", self.0)
    }
}

#[cfg(feature = "std")]
impl std::error::Error for MalformedComplex {}

/// Kind of a boundary cycle in a [`TraceResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleKind {
    /// A component of the surgered torus link.
    TorusLink,
    /// The annulus core `∂_o` (plus/minus variants); carries no strands and
    /// no class on the torus.
    Core,
}

/// One boundary component recovered by tracing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryCycle {
    pub kind: CycleKind,
    pub strand_count: usize,
    /// Homology class on the torus, `(z′-turns, z-turns)`.
    pub homology_class: Option<(i64, i64)>,
    /// Strand indices along the cycle, in successor order.
    pub strands: Vec<usize>,
}

/// Euler characteristic and boundary structure of the traced surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceResult {
    pub euler_char: i64,
    pub boundary_cycles: Vec<BoundaryCycle>,
    pub component_count: usize,
}

impl TraceResult {
    /// Genus from `χ = 2 − 2g − #boundary`.
    pub fn genus(&self) -> u64 {
        let twice = 2 - self.euler_char - self.component_count as i64;
        debug_assert!(twice >= 0 && twice % 2 == 0);
        (twice / 2) as u64
    }

    pub fn link_cycles(&self) -> impl Iterator<Item = &BoundaryCycle> {
        self.boundary_cycles
            .iter()
            .filter(|c| c.kind == CycleKind::TorusLink)
    }
}

/// Builds the surgered complex for a spec under the standard convention.
pub fn build_complex(spec: SurfaceSpec) -> SurgeryComplex {
    SurgeryComplex::new(spec, Convention::Standard)
}

impl SurgeryComplex {
    pub fn new(spec: SurfaceSpec, convention: Convention) -> SurgeryComplex {
        let reversed = (spec.variant() == Variant::Minus) ^ (convention == Convention::Mirror);
        let (p, q) = (spec.p() as usize, spec.q() as usize);
        let pq = p * q;
        let mut faces: Vec<FaceKind> = (0..p as u32).map(FaceKind::DiskH).collect();
        let mut strands = Vec::with_capacity(2 * pq);
        match spec.variant() {
            Variant::Plain => {
                faces.extend((0..q as u32).map(FaceKind::DiskHPrime));
                // strand 0..pq: vertical arcs of ∂D_j between crossings
                // (j,k) -> (j,k±1); strand pq..2pq: horizontal arcs of
                // ∂D'_k between crossings (j,k) -> (j+1,k)
                let v_idx = |j: usize, k: usize| j * q + k;
                let h_idx = |j: usize, k: usize| pq + j * q + k;
                let dv = Rational::new(if reversed { -1 } else { 1 }, q as i64);
                for j in 0..p {
                    for k in 0..q {
                        // in-vertical at a crossing continues into the
                        // outgoing horizontal arc there
                        let end_k = if reversed { (k + q - 1) % q } else { (k + 1) % q };
                        strands.push(Strand {
                            label: StrandLabel::DiskBoundary { j: j as u32 },
                            successor: h_idx(j, end_k),
                            delta: (dv, Rational::ZERO),
                        });
                    }
                }
                for j in 0..p {
                    for k in 0..q {
                        // in-horizontal at crossing (j+1,k) continues into
                        // the vertical arc leaving that crossing
                        strands.push(Strand {
                            label: StrandLabel::DiskPrimeBoundary { k: k as u32 },
                            successor: v_idx((j + 1) % p, k),
                            delta: (Rational::ZERO, Rational::new(1, p as i64)),
                        });
                    }
                }
            }
            Variant::Plus | Variant::Minus => {
                faces.push(FaceKind::Annulus);
                // crossings are indexed by their position along the rim:
                // crossing u sits on disk j = u mod p at height slot
                // t = (u - j)/p; the vertical arc with index u starts there
                let v_of = |u: usize| u; // vertical strand at crossing u
                let a_of = |u: usize| pq + u; // rim arc from crossing u to u+1
                let crossing = |j: usize, t: usize| (j + p * (t % q)) % pq;
                let dv = Rational::new(if reversed { -1 } else { 1 }, q as i64);
                for u in 0..pq {
                    let j = u % p;
                    let t = (u - j) / p;
                    let end_t = if reversed { (t + q - 1) % q } else { (t + 1) % q };
                    strands.push(Strand {
                        label: StrandLabel::DiskBoundary { j: j as u32 },
                        successor: a_of(crossing(j, end_t)),
                        delta: (dv, Rational::ZERO),
                    });
                }
                for u in 0..pq {
                    strands.push(Strand {
                        label: StrandLabel::AnnulusRim { u: u as u32 },
                        successor: v_of((u + 1) % pq),
                        delta: (Rational::new(1, pq as i64), Rational::new(1, p as i64)),
                    });
                }
            }
        }
        SurgeryComplex {
            spec,
            convention,
            reversed,
            faces,
            strands,
        }
    }

    pub fn spec(&self) -> SurfaceSpec {
        self.spec
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    /// Whether the `∂D_j` directions ended up reversed (minus variant xor
    /// mirror convention).
    pub fn reversed_disks(&self) -> bool {
        self.reversed
    }

    /// One band per crossing.
    pub fn vertex_count(&self) -> usize {
        self.spec.p() as usize * self.spec.q() as usize
    }

    pub fn euler_char(&self) -> i64 {
        self.faces.iter().map(FaceKind::euler_char).sum::<i64>() - self.vertex_count() as i64
    }

    fn check_permutation(&self) -> Result<(), MalformedComplex> {
        let n = self.strands.len();
        let mut indeg = alloc::vec![0u32; n];
        for s in &self.strands {
            if s.successor >= n {
                return Err(MalformedComplex(alloc::format!(
                    "successor {} out of range ({n} strands)",
                    s.successor
                )));
            }
            indeg[s.successor] += 1;
        }
        if let Some(i) = indeg.iter().position(|&d| d != 1) {
            return Err(MalformedComplex(alloc::format!(
                "strand {i} has in-degree {}",
                indeg[i]
            )));
        }
        Ok(())
    }

    /// Traces boundary cycles and assembles the surface invariants.
    pub fn trace(&self) -> Result<TraceResult, MalformedComplex> {
        self.check_permutation()?;
        let n = self.strands.len();
        let mut seen = alloc::vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut winding = (Rational::ZERO, Rational::ZERO);
            let mut cur = start;
            loop {
                if seen[cur] {
                    // hit a previously consumed strand without closing
                    return Err(MalformedComplex(String::from(
                        "successor walk re-entered a consumed cycle",
                    )));
                }
                seen[cur] = true;
                cycle.push(cur);
                let s = &self.strands[cur];
                winding.0 = winding.0 + s.delta.0;
                winding.1 = winding.1 + s.delta.1;
                cur = s.successor;
                if cur == start {
                    break;
                }
            }
            if !winding.0.is_integer() || !winding.1.is_integer() {
                return Err(MalformedComplex(alloc::format!(
                    "cycle winding ({}, {}) is not integral",
                    winding.0, winding.1
                )));
            }
            cycles.push(BoundaryCycle {
                kind: CycleKind::TorusLink,
                strand_count: cycle.len(),
                homology_class: Some((winding.0.numer(), winding.1.numer())),
                strands: cycle,
            });
        }
        if self.spec.variant() != Variant::Plain {
            cycles.push(BoundaryCycle {
                kind: CycleKind::Core,
                strand_count: 0,
                homology_class: None,
                strands: Vec::new(),
            });
        }
        let component_count = cycles.len();
        Ok(TraceResult {
            euler_char: self.euler_char(),
            boundary_cycles: cycles,
            component_count,
        })
    }

    /// Image of a strand under the deck rotation of the construction.
    ///
    /// The plain rotation shifts the crossing grid by `(j, k) ↦ (j+1, k+1)`;
    /// the plus/minus rotation advances each crossing one step along the
    /// annulus rim.
    fn strand_image(&self, idx: usize) -> usize {
        let (p, q) = (self.spec.p() as usize, self.spec.q() as usize);
        let pq = p * q;
        match self.spec.variant() {
            Variant::Plain => {
                let (family, off) = (idx / pq, idx % pq);
                let (j, k) = (off / q, off % q);
                family * pq + ((j + 1) % p) * q + (k + 1) % q
            }
            Variant::Plus | Variant::Minus => {
                let (family, off) = (idx / pq, idx % pq);
                family * pq + (off + 1) % pq
            }
        }
    }

    /// Orbits of the boundary cycles under the deck rotation.
    ///
    /// Returns the traced result together with the orbit partition, each
    /// orbit listing indices into `boundary_cycles`.
    pub fn orbit_check(&self) -> Result<(TraceResult, Vec<Vec<usize>>), MalformedComplex> {
        let result = self.trace()?;
        let n_cycles = result.boundary_cycles.len();
        // which cycle owns each strand
        let mut owner = alloc::vec![usize::MAX; self.strands.len()];
        for (ci, c) in result.boundary_cycles.iter().enumerate() {
            for &s in &c.strands {
                owner[s] = ci;
            }
        }
        let image = |ci: usize| -> usize {
            let c = &result.boundary_cycles[ci];
            match c.kind {
                CycleKind::Core => ci,
                CycleKind::TorusLink => owner[self.strand_image(c.strands[0])],
            }
        };
        let mut orbit_of = alloc::vec![usize::MAX; n_cycles];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for start in 0..n_cycles {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut orbit = Vec::new();
            let mut cur = start;
            while orbit_of[cur] == usize::MAX {
                orbit_of[cur] = id;
                orbit.push(cur);
                cur = image(cur);
            }
            if cur != start {
                return Err(MalformedComplex(String::from(
                    "deck rotation does not permute boundary cycles",
                )));
            }
            orbits.push(orbit);
        }
        Ok((result, orbits))
    }
}
