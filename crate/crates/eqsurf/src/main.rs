use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use eqsurf::report::{self, CliError, Report};

/// Invariants, embedding-dimension bounds and numeric realizations for
/// cyclic group actions on closed orientable surfaces.
#[derive(Parser)]
#[command(name = "eqsurf", version, about)]
struct Cli {
    /// Suppress the human-readable summary on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form invariants of one surgered surface, cross-checked
    /// against the combinatorial tracer.
    Surface {
        p: u32,
        q: u32,
        /// plain, plus or minus
        variant: String,
    },
    /// Embedding-dimension bounds for a periodic map datum.
    Classify {
        genus: u64,
        order: u64,
        /// Quotient orbifold signature, e.g. "(0:6,6,3)"
        signature: String,
    },
    /// Sample a planned embedding, verify it numerically, export files.
    Realize {
        p: u32,
        q: u32,
        /// plain, plus or minus
        variant: String,
        /// Grid resolution per patch direction.
        #[arg(long, default_value_t = 32, value_parser = clap::value_parser!(u32).range(1..=512))]
        resolution: u32,
        /// Output directory for the point cloud and mesh (omit to skip files).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Prime-power family member: signature, genus, exact dimension.
    Family { p: u64, k: u32 },
    /// Ribbon-graph trace of the surgered disk system.
    Trace {
        p: u32,
        q: u32,
        /// plain, plus or minus
        variant: String,
        /// Use the mirror surgery convention.
        #[arg(long)]
        mirror: bool,
    },
}

fn emit<T: Serialize>(report: &Report<T>, quiet: bool, summary: String) {
    print!("{}", report.to_json_line());
    if !quiet {
        eprintln!("{summary}");
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Surface { p, q, variant } => {
            let r = report::surface_report(*p, *q, variant)?;
            let o = &r.outputs;
            let summary = format!(
                "{}: genus {}, {} boundary component(s), knot type ({},{}){}, orbifold {}, oracle {}",
                o.spec,
                o.top_type.genus,
                o.boundary_count,
                o.top_type.knot_type.0,
                o.top_type.knot_type.1,
                if o.top_type.negative_slope { " (negative slope)" } else { "" },
                o.orbifold,
                if o.oracle.matches { "match" } else { "MISMATCH" },
            );
            emit(&r, cli.quiet, summary);
        }
        Command::Classify {
            genus,
            order,
            signature,
        } => {
            let r = report::classify_report(*genus, *order, signature)?;
            let o = &r.outputs;
            let exact = match &o.dgf.result {
                Some(b) => format!("D = {}", b.value),
                None => format!("D in [{}, {}]", o.lower.value,
                    o.upper.result.as_ref().map_or(String::from("?"), |b| b.value.to_string())),
            };
            let dhat = match &o.dhat {
                Some(i) if i.lower == i.upper => format!("D^ = {}", i.lower),
                Some(i) => format!("D^ in [{}, {}]", i.lower, i.upper),
                None => String::from("D^ undetermined"),
            };
            emit(&r, cli.quiet, format!("genus {genus}, order {order}, {signature}: {exact}; {dhat}"));
        }
        Command::Realize {
            p,
            q,
            variant,
            resolution,
            out,
        } => {
            let r = report::realize_report(*p, *q, variant, *resolution, out.as_deref())?;
            let o = &r.outputs;
            let summary = format!(
                "ambient S^{}, {} samples, norm defect {:.2e}, equivariance residual {:.2e}, seams {:.2e}",
                o.plan.ambient_dim, o.samples, o.max_norm_defect, o.equivariance_residual, o.cap_seam_defect,
            );
            emit(&r, cli.quiet, summary);
        }
        Command::Family { p, k } => {
            let r = report::family_report(*p, *k)?;
            let o = &r.outputs;
            let summary = format!(
                "order {}: genus {}, signature {}, D = D^ = {}, ambient S^{}",
                o.record.order, o.record.genus, o.record.signature, o.dgf.value, o.embedding.ambient_dim,
            );
            emit(&r, cli.quiet, summary);
        }
        Command::Trace {
            p,
            q,
            variant,
            mirror,
        } => {
            let r = report::trace_report(*p, *q, variant, *mirror)?;
            let o = &r.outputs;
            let summary = format!(
                "{} ({}): chi = {}, genus {}, {} boundary cycle(s)",
                o.spec, o.convention, o.euler_char, o.genus, o.component_count,
            );
            emit(&r, cli.quiet, summary);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
