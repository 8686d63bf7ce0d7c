//! Machine-readable reports behind the CLI: one typed output block per
//! command, wrapped with the echoed inputs, provenance tags and the tool
//! version. Serialization is deterministic for identical inputs.

use serde::Serialize;
use serde_json::{json, Value};

use crate::export;
use crate::geometry::{
    self, cap_seam_defect, embedding_plan, equivariance_residual, rotation_estimate,
    sample_embedding, separation_floor, topological_plan, ComponentId, EmbeddingPlan,
    FamilyEmbedding, SeparationReport,
};
use eqsurf_core::classification::{
    dgf, dhat_bounds, lower_bound, upper_bound, BoundResult, ClassifyError, DhatInterval, MapDatum,
};
use eqsurf_core::surfaces::{
    fstar_family, rh_genus, BorderedQuotient, FamilyRecord, OrbifoldSignature, RotationData,
    SurfaceError, SurfaceSpec, TopologicalType, Variant,
};
use eqsurf_core::tracer::{Convention, CycleKind, SurgeryComplex};

pub const TOOL: &str = "eqsurf";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Failure modes of a command, mapped to exit codes by the binary.
#[derive(Debug)]
pub enum CliError {
    /// Malformed arguments (exit 2).
    Parse(String),
    /// Domain rejection: degenerate spec or invalid datum (exit 3).
    Domain { kind: &'static str, detail: Value },
    /// No embedding plan applies (exit 4).
    NoPlan(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain { .. } => 3,
            CliError::NoPlan(_) => 4,
        }
    }

    /// The machine-readable error object printed to stderr.
    pub fn to_json(&self) -> Value {
        match self {
            CliError::Parse(msg) => json!({"error": {"kind": "parse", "message": msg}}),
            CliError::Domain { kind, detail } => json!({"error": {"kind": kind, "detail": detail}}),
            CliError::NoPlan(msg) => json!({"error": {"kind": "no_plan", "message": msg}}),
        }
    }
}

impl From<SurfaceError> for CliError {
    fn from(e: SurfaceError) -> CliError {
        CliError::Domain {
            kind: "degenerate_spec",
            detail: json!({"message": e.to_string()}),
        }
    }
}

/// The envelope every command prints on stdout.
#[derive(Debug, Serialize)]
pub struct Report<T: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub inputs: Value,
    pub outputs: T,
    pub provenance: Vec<String>,
}

impl<T: Serialize> Report<T> {
    pub fn to_json_line(&self) -> String {
        let mut s = serde_json::to_string(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

#[derive(Debug, Serialize)]
pub struct OracleCheck {
    pub genus: u64,
    pub component_count: usize,
    pub link_classes: Vec<(i64, i64)>,
    pub orbit_lengths: Vec<usize>,
    pub matches: bool,
}

#[derive(Debug, Serialize)]
pub struct SurfaceOutputs {
    pub spec: SurfaceSpec,
    pub acting_order: u64,
    pub top_type: TopologicalType,
    pub boundary_count: u32,
    pub orbifold: String,
    pub orbifold_signature: OrbifoldSignature,
    pub boundary_action: RotationData,
    pub bordered_quotient: Option<BorderedQuotient>,
    pub oracle: OracleCheck,
}

fn parse_variant(s: &str) -> Result<Variant, CliError> {
    match s {
        "plain" => Ok(Variant::Plain),
        "plus" => Ok(Variant::Plus),
        "minus" => Ok(Variant::Minus),
        other => Err(CliError::Parse(format!(
            "unknown variant {other:?}: expected plain, plus or minus"
        ))),
    }
}

fn make_spec(p: u32, q: u32, variant: &str) -> Result<SurfaceSpec, CliError> {
    Ok(SurfaceSpec::new(p, q, parse_variant(variant)?)?)
}

/// Runs the tracer oracle against the closed forms for one spec.
fn oracle_check(spec: SurfaceSpec, top: &TopologicalType, rot: &RotationData) -> OracleCheck {
    let complex = eqsurf_core::tracer::build_complex(spec);
    let (result, orbits) = complex.orbit_check().expect("built complexes are well-formed");
    let link_classes: Vec<(i64, i64)> = result
        .link_cycles()
        .map(|c| c.homology_class.expect("link cycles carry a class"))
        .collect();
    let mut orbit_lengths: Vec<usize> = orbits
        .iter()
        .filter(|o| result.boundary_cycles[o[0]].kind == CycleKind::TorusLink)
        .map(|o| o.len())
        .collect();
    orbit_lengths.sort_unstable();
    let expected_class = (
        if top.negative_slope {
            -(top.knot_type.0 as i64)
        } else {
            top.knot_type.0 as i64
        },
        top.knot_type.1 as i64,
    );
    let mut expected_orbits: Vec<usize> =
        rot.orbits.iter().map(|o| o.orbit_length as usize).collect();
    expected_orbits.sort_unstable();
    let matches = result.genus() == top.genus
        && result.component_count as u32 == top.boundary_count()
        && link_classes.iter().all(|&c| c == expected_class)
        && orbit_lengths == expected_orbits;
    OracleCheck {
        genus: result.genus(),
        component_count: result.component_count,
        link_classes,
        orbit_lengths,
        matches,
    }
}

pub fn surface_report(p: u32, q: u32, variant: &str) -> Result<Report<SurfaceOutputs>, CliError> {
    let spec = make_spec(p, q, variant)?;
    let top = spec.top_type();
    let rot = spec.boundary_action();
    let sig = spec.orbifold_type();
    let oracle = oracle_check(spec, &top, &rot);
    Ok(Report {
        tool: TOOL,
        version: VERSION,
        command: "surface",
        inputs: json!({"p": p, "q": q, "variant": variant}),
        outputs: SurfaceOutputs {
            spec,
            acting_order: spec.acting_order(),
            top_type: top,
            boundary_count: top.boundary_count(),
            orbifold: sig.to_string(),
            orbifold_signature: sig,
            boundary_action: rot,
            bordered_quotient: spec.bordered_quotient().ok(),
            oracle,
        },
        provenance: vec![
            String::from("top-type-closed-form"),
            String::from("rotation-closed-form"),
            String::from("orbifold-closed-form"),
            String::from("surgery-tracer-oracle"),
        ],
    })
}

#[derive(Debug, Serialize)]
pub struct BoundOrError {
    pub result: Option<BoundResult>,
    pub error: Option<String>,
}

impl BoundOrError {
    fn of(r: Result<BoundResult, ClassifyError>) -> BoundOrError {
        match r {
            Ok(b) => BoundOrError {
                result: Some(b),
                error: None,
            },
            Err(e) => BoundOrError {
                result: None,
                error: Some(e.to_string()),
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ClassifyOutputs {
    pub datum: MapDatum,
    pub free: bool,
    pub fixed_points: usize,
    pub riemann_hurwitz_ok: bool,
    pub lower: BoundResult,
    pub upper: BoundOrError,
    pub dgf: BoundOrError,
    pub dhat: Option<DhatInterval>,
    pub dhat_error: Option<String>,
}

pub fn classify_report(
    genus: u64,
    order: u64,
    signature: &str,
) -> Result<Report<ClassifyOutputs>, CliError> {
    let sig: OrbifoldSignature = signature
        .parse()
        .map_err(|e: eqsurf_core::surfaces::SignatureParseError| CliError::Parse(e.to_string()))?;
    let datum = MapDatum::new(genus, order, sig).map_err(|e| {
        let detail = match &e {
            ClassifyError::InvalidDatum { reason, defect } => json!({
                "message": reason,
                "riemann_hurwitz_defect": defect.map(|d| d.to_string()),
            }),
            other => json!({"message": other.to_string()}),
        };
        CliError::Domain {
            kind: "invalid_datum",
            detail,
        }
    })?;
    let lower = lower_bound(&datum);
    let upper = BoundOrError::of(upper_bound(&datum));
    let exact = BoundOrError::of(dgf(&datum));
    let (dhat, dhat_error) = match dhat_bounds(&datum) {
        Ok(i) => (Some(i), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let mut provenance: Vec<String> = lower.provenance.clone();
    for b in [&upper, &exact] {
        if let Some(r) = &b.result {
            provenance.extend(r.provenance.iter().cloned());
        }
    }
    if let Some(i) = &dhat {
        provenance.extend(i.provenance.iter().cloned());
    }
    provenance.sort();
    provenance.dedup();
    Ok(Report {
        tool: TOOL,
        version: VERSION,
        command: "classify",
        inputs: json!({"genus": genus, "order": order, "signature": signature}),
        outputs: ClassifyOutputs {
            free: datum.is_free(),
            fixed_points: datum.fixed_points(),
            riemann_hurwitz_ok: true,
            lower,
            upper,
            dgf: exact,
            dhat,
            dhat_error,
            datum,
        },
        provenance,
    })
}

#[derive(Debug, Serialize)]
pub struct RotationCheck {
    pub component: String,
    pub exact_turns: String,
    pub measured_turns: f64,
    pub circular_error: f64,
}

#[derive(Debug, Serialize)]
pub struct RealizeFiles {
    pub pointcloud: String,
    pub mesh: String,
    pub mesh_vertices_dropped: usize,
}

#[derive(Debug, Serialize)]
pub struct RealizeOutputs {
    pub plan: EmbeddingPlan,
    pub topological_plan: Option<EmbeddingPlan>,
    pub resolution: u32,
    pub samples: usize,
    pub max_norm_defect: f64,
    pub equivariance_residual: f64,
    pub cap_seam_defect: f64,
    pub separation: SeparationReport,
    pub rotation_checks: Vec<RotationCheck>,
    pub files: Option<RealizeFiles>,
}

fn circular_error(measured: f64, exact: f64) -> f64 {
    [-1.0f64, 0.0, 1.0]
        .iter()
        .map(|k| (measured - exact + k).abs())
        .fold(f64::INFINITY, f64::min)
}

pub fn realize_report(
    p: u32,
    q: u32,
    variant: &str,
    resolution: u32,
    out_dir: Option<&std::path::Path>,
) -> Result<Report<RealizeOutputs>, CliError> {
    let spec = make_spec(p, q, variant)?;
    if p as u64 * q as u64 > 1024 {
        return Err(CliError::Parse(String::from(
            "realization supports p*q <= 1024; larger grids exhaust memory",
        )));
    }
    let plan = embedding_plan(spec).map_err(|e| CliError::NoPlan(e.to_string()))?;
    let cloud = sample_embedding(&plan, resolution);
    let residual = equivariance_residual(&cloud).expect("sampled clouds carry their action");
    let seams = cap_seam_defect(&plan, resolution);
    let separation = separation_floor(&cloud, 12_000);

    let rot = spec.boundary_action();
    let mut rotation_checks = Vec::new();
    let est = rotation_estimate(spec, ComponentId::Link(0)).expect("component 0 exists");
    rotation_checks.push(RotationCheck {
        component: String::from("link:0"),
        exact_turns: rot.orbits[0].rotation.to_string(),
        measured_turns: est,
        circular_error: circular_error(est, rot.orbits[0].rotation.as_f64()),
    });
    if let Some(core) = rot.core_rotation {
        let est = rotation_estimate(spec, ComponentId::Core).expect("core exists");
        rotation_checks.push(RotationCheck {
            component: String::from("core"),
            exact_turns: core.to_string(),
            measured_turns: est,
            circular_error: circular_error(est, core.as_f64()),
        });
    }

    let files = match out_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(|e| CliError::Parse(e.to_string()))?;
            let cloud_path = dir.join("cloud.txt");
            let mesh_path = dir.join("surface_s3.obj");
            let mut f = std::io::BufWriter::new(
                std::fs::File::create(&cloud_path).map_err(|e| CliError::Parse(e.to_string()))?,
            );
            export::write_pointcloud(&cloud, &mut f).map_err(|e| CliError::Parse(e.to_string()))?;
            let mut f = std::io::BufWriter::new(
                std::fs::File::create(&mesh_path).map_err(|e| CliError::Parse(e.to_string()))?,
            );
            let dropped =
                export::write_obj(&cloud, &mut f).map_err(|e| CliError::Parse(e.to_string()))?;
            Some(RealizeFiles {
                pointcloud: cloud_path.display().to_string(),
                mesh: mesh_path.display().to_string(),
                mesh_vertices_dropped: dropped,
            })
        }
        None => None,
    };

    let provenance = vec![plan.provenance.clone()];
    Ok(Report {
        tool: TOOL,
        version: VERSION,
        command: "realize",
        inputs: json!({
            "p": p, "q": q, "variant": variant,
            "resolution": resolution,
            "out": out_dir.map(|d| d.display().to_string()),
        }),
        outputs: RealizeOutputs {
            topological_plan: topological_plan(spec),
            plan,
            resolution,
            samples: cloud.samples.len(),
            max_norm_defect: cloud.max_norm_defect(),
            equivariance_residual: residual,
            cap_seam_defect: seams,
            separation,
            rotation_checks,
            files,
        },
        provenance,
    })
}

#[derive(Debug, Serialize)]
pub struct FamilyOutputs {
    pub record: FamilyRecord,
    pub genus_check: u64,
    pub embedding: FamilyEmbedding,
    pub dgf: BoundResult,
    pub dhat: DhatInterval,
}

pub fn family_report(p: u64, k: u32) -> Result<Report<FamilyOutputs>, CliError> {
    let record = fstar_family(p, k).map_err(|e| CliError::Domain {
        kind: "invalid_family",
        detail: json!({"message": e.to_string()}),
    })?;
    let embedding = geometry::family_embedding(p, k).expect("record exists, so does the plan");
    let genus_check = rh_genus(record.order, &record.signature).expect("family signatures divide");
    let datum = MapDatum::new(record.genus, record.order, record.signature.clone())
        .expect("family records satisfy Riemann-Hurwitz");
    let exact = dgf(&datum).expect("family data have exact values");
    let dhat = dhat_bounds(&datum).expect("family data have rigid intervals");
    let mut provenance = exact.provenance.clone();
    provenance.extend(dhat.provenance.iter().cloned());
    provenance.sort();
    provenance.dedup();
    Ok(Report {
        tool: TOOL,
        version: VERSION,
        command: "family",
        inputs: json!({"p": p, "k": k}),
        outputs: FamilyOutputs {
            record,
            genus_check,
            embedding,
            dgf: exact,
            dhat,
        },
        provenance,
    })
}

#[derive(Debug, Serialize)]
pub struct CycleOut {
    pub kind: String,
    pub strand_count: usize,
    pub homology_class: Option<(i64, i64)>,
}

#[derive(Debug, Serialize)]
pub struct TraceOutputs {
    pub spec: SurfaceSpec,
    pub convention: String,
    pub vertices: usize,
    pub faces: usize,
    pub euler_char: i64,
    pub genus: u64,
    pub component_count: usize,
    pub cycles: Vec<CycleOut>,
    pub orbit_lengths: Vec<usize>,
}

pub fn trace_report(
    p: u32,
    q: u32,
    variant: &str,
    mirror: bool,
) -> Result<Report<TraceOutputs>, CliError> {
    let spec = make_spec(p, q, variant)?;
    let convention = if mirror {
        Convention::Mirror
    } else {
        Convention::Standard
    };
    let complex = SurgeryComplex::new(spec, convention);
    let (result, orbits) = complex.orbit_check().expect("built complexes are well-formed");
    let cycles = result
        .boundary_cycles
        .iter()
        .map(|c| CycleOut {
            kind: match c.kind {
                CycleKind::TorusLink => String::from("torus-link"),
                CycleKind::Core => String::from("core"),
            },
            strand_count: c.strand_count,
            homology_class: c.homology_class,
        })
        .collect();
    let mut orbit_lengths: Vec<usize> = orbits.iter().map(|o| o.len()).collect();
    orbit_lengths.sort_unstable();
    Ok(Report {
        tool: TOOL,
        version: VERSION,
        command: "trace",
        inputs: json!({"p": p, "q": q, "variant": variant, "mirror": mirror}),
        outputs: TraceOutputs {
            spec,
            convention: if mirror { "mirror" } else { "standard" }.to_string(),
            vertices: complex.vertex_count(),
            faces: complex.faces.len(),
            euler_char: result.euler_char,
            genus: result.genus(),
            component_count: result.component_count,
            cycles,
            orbit_lengths,
        },
        provenance: vec![String::from("surgery-tracer-oracle")],
    })
}
