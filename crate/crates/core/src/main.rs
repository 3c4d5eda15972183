use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use sdg_core::assembly::Method;
use sdg_core::bench::{
    convergence_study, emit, emit_sweep_csv, robustness_sweep, CaseSpec, Format, ManufacturedCase, MeshFamily,
};
use sdg_core::mesh::write_mesh;

#[derive(Parser)]
#[command(name = "stokes-sdg", version, about = "Staggered DG Stokes solver on polygonal meshes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convergence study over dyadic refinement levels.
    Run {
        #[arg(long)]
        case: ManufacturedCase,
        /// tri, trap, poly or file:<path>
        #[arg(long)]
        mesh: MeshFamily,
        #[arg(long, default_value = "sdg1")]
        method: Method,
        #[arg(long, default_value_t = 1.0)]
        nu: f64,
        /// Number of levels.
        #[arg(long, default_value_t = 5)]
        levels: usize,
        /// Subdivisions of the coarsest level; each further level doubles it.
        #[arg(long, default_value_t = 2)]
        start: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "csv")]
        format: Format,
        /// Relative displacement of interior nodes (tri only).
        #[arg(long, default_value_t = 0.0)]
        jitter: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Both methods at several viscosities on one mesh.
    Sweep {
        #[arg(long)]
        case: ManufacturedCase,
        #[arg(long)]
        mesh: MeshFamily,
        #[arg(long, default_value_t = 16)]
        level: usize,
        #[arg(long, value_delimiter = ',', default_value = "1e2,1e1,1,1e-1,1e-2,1e-3,1e-4,1e-5,1e-6")]
        nu_list: Vec<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write a generated mesh in the line-delimited JSON format.
    Mesh {
        #[arg(long)]
        family: MeshFamily,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> Result<(), Box<dyn std::error::Error>> {
    match cli.command {
        Command::Run {
            case,
            mesh,
            method,
            nu,
            levels,
            start,
            out,
            format,
            jitter,
            seed,
        } => {
            let family = match mesh {
                MeshFamily::Triangular { .. } => MeshFamily::Triangular { jitter, seed },
                other if jitter != 0.0 => {
                    return Err(format!("--jitter applies to tri meshes, not {}", other.name()).into())
                }
                other => other,
            };
            let levels = match family {
                MeshFamily::File(_) => vec![start],
                _ => CaseSpec::dyadic(start, levels),
            };
            let spec = CaseSpec {
                case,
                method,
                family,
                levels,
                nus: vec![nu],
            };
            let records = convergence_study(&spec)?;
            std::fs::write(out, emit(&records, format))?;
        }
        Command::Sweep {
            case,
            mesh,
            level,
            nu_list,
            out,
        } => {
            let records = robustness_sweep(&case, &mesh, level, &nu_list)?;
            std::fs::write(out, emit_sweep_csv(&records))?;
        }
        Command::Mesh { family, n, out } => {
            std::fs::write(out, write_mesh(&family.primal(n)?))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
