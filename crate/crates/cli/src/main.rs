mod commands;

use clap::{Args, Parser, Subcommand};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "jkres", version, about = "Exact Jeffrey-Kirwan residues, Laplace transforms and wall jumps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical form of the expression.
    Normalize(Common),
    /// Generating and torsion parts of the expression.
    Split(Common),
    /// Residue coordinates over the nbc basis (polynomials in h with --exp-sign).
    JkResidue(Common),
    /// The nbc basis of the arrangement.
    NbcBasis(Common),
    /// Iterated residues of the nbc basis against itself.
    DualCheck(Common),
    /// Wall residue, on --wall or on every wall.
    WallResidue(Common),
    /// Differential operators D_b with phi = sum_b D_b(d/dz) phi_b.
    Separate(Common),
    /// Piecewise polynomial inverse Laplace transform for --delta-witness.
    InverseLaplace(Common),
    /// Compares jumps with transforms of wall residues.
    JumpCheck(Common),
    /// Smoothness class of the inverse Laplace transform.
    Smoothness(Common),
    /// Stratified Fourier transform for --gamma-witness and --delta-witness.
    Fourier(Common),
    /// Chambers in V and V*.
    Chambers(Common),
    /// SVG of the chamber fan (rank 2), labelled with inverse Laplace pieces.
    Plot(Common),
    /// Randomized self-test; the seed comes from JKRES_SEED.
    Selftest(SelftestArgs),
}

#[derive(Args, Clone, Default)]
pub struct Common {
    /// JSON problem file.
    pub file: std::path::PathBuf,
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
    /// Point of the dual chamber delta, e.g. 2,1.
    #[arg(long, allow_hyphen_values = true)]
    pub delta_witness: Option<String>,
    /// Point of the dual chamber on the wall (defaults to the projection of delta).
    #[arg(long, allow_hyphen_values = true)]
    pub delta0_witness: Option<String>,
    /// Point of the primal chamber gamma.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma_witness: Option<String>,
    /// Comma separated input indices (0-based) spanning a wall.
    #[arg(long)]
    pub wall: Option<String>,
    /// Evaluation point.
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
    /// Sign s for the residue of exp(s <h,z>) phi.
    #[arg(long, allow_hyphen_values = true)]
    pub exp_sign: Option<i32>,
    /// Output file (plot).
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Args)]
pub struct SelftestArgs {
    #[arg(long)]
    pub json: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let res = match cli.command {
        Command::Selftest(a) => commands::selftest(a.json),
        Command::Normalize(c) => commands::run("normalize", &c),
        Command::Split(c) => commands::run("split", &c),
        Command::JkResidue(c) => commands::run("jk-residue", &c),
        Command::NbcBasis(c) => commands::run("nbc-basis", &c),
        Command::DualCheck(c) => commands::run("dual-check", &c),
        Command::WallResidue(c) => commands::run("wall-residue", &c),
        Command::Separate(c) => commands::run("separate", &c),
        Command::InverseLaplace(c) => commands::run("inverse-laplace", &c),
        Command::JumpCheck(c) => commands::run("jump-check", &c),
        Command::Smoothness(c) => commands::run("smoothness", &c),
        Command::Fourier(c) => commands::run("fourier", &c),
        Command::Chambers(c) => commands::run("chambers", &c),
        Command::Plot(c) => commands::run("plot", &c),
    };
    match res {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
