//! File formats: plain-text point clouds and OBJ-style meshes of the
//! stereographically projected `S³` stage.

use std::io::{self, Write};

use crate::geometry::{stereographic, PointC2, PointCloud};
use num_complex::Complex64;

/// Writes one row per sample: `patch_id u v x₁ … x_m`.
pub fn write_pointcloud<W: Write>(cloud: &PointCloud, mut w: W) -> io::Result<()> {
    for s in &cloud.samples {
        write!(w, "{} {} {}", cloud.patch_id(s), s.u, s.v)?;
        for x in &s.point {
            write!(w, " {x}")?;
        }
        writeln!(w)?;
    }
    Ok(())
}

/// Mesh of the `S³`-stage patches (faces, bands) under stereographic
/// projection, as OBJ vertex/face text. Quads touching the projection pole
/// are dropped; returns the number of dropped vertices.
pub fn write_obj<W: Write>(cloud: &PointCloud, mut w: W) -> io::Result<usize> {
    let mut index_of: Vec<Option<usize>> = vec![None; cloud.samples.len()];
    let mut emitted = 0usize;
    let mut dropped = 0usize;
    for patch in cloud.patches.iter().filter(|p| p.stage3 && p.nu > 1) {
        for ui in 0..patch.nu {
            for vi in 0..patch.nv {
                let si = patch.index(ui, vi);
                let pt = &cloud.samples[si].point;
                let c2 = PointC2::new(
                    Complex64::new(pt[0], pt[1]),
                    Complex64::new(pt[2], pt[3]),
                );
                match stereographic(&c2) {
                    Ok([x, y, z]) => {
                        emitted += 1;
                        index_of[si] = Some(emitted);
                        writeln!(w, "v {x} {y} {z}")?;
                    }
                    Err(_) => dropped += 1,
                }
            }
        }
    }
    for patch in cloud.patches.iter().filter(|p| p.stage3 && p.nu > 1) {
        let vmax = if patch.v_periodic {
            patch.nv
        } else {
            patch.nv - 1
        };
        for ui in 0..patch.nu - 1 {
            for vi in 0..vmax {
                let vj = (vi + 1) % patch.nv;
                let quad = [
                    index_of[patch.index(ui, vi)],
                    index_of[patch.index(ui, vj)],
                    index_of[patch.index(ui + 1, vj)],
                    index_of[patch.index(ui + 1, vi)],
                ];
                if let [Some(a), Some(b), Some(c), Some(d)] = quad {
                    writeln!(w, "f {a} {b} {c} {d}")?;
                }
            }
        }
    }
    Ok(dropped)
}
