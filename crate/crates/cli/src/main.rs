//! `toric-aut`: JSON in, JSON out.
//!
//! Every command prints one envelope on stdout, either
//! `{"ok":true,"result":...}` or `{"ok":false,"error":{"code":...,"message":...}}`.
//! Exit status is 0 on success, 1 when the input is well-formed but the
//! operation is refused (for example, asking a torus for roots), and 2 for
//! usage or parse errors.

mod commands;
mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use toric_aut::ToricError;

#[derive(Parser, Debug)]
#[command(name = "toric-aut", version, about = "Cones, Demazure roots, replicas and toric surface towers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Where the JSON payload comes from.
#[derive(Args, Debug, Clone)]
pub struct Payload {
    /// Inline JSON (starting with `{` or `[`), a file path, or `-` for stdin.
    pub payload: Option<String>,
    /// Read the payload from FILE, or from stdin when FILE is `-`.
    #[arg(long, value_name = "FILE")]
    pub input: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dual cone of {"ambient_rank", "rays"}.
    Dual(Payload),
    /// Extremal rays, lineality, facet normals and equations of a cone.
    Rays(Payload),
    /// Hilbert basis of the monoid C ∩ Z^n.
    Hilbert(Payload),
    /// Membership of {"cone", "point"} in C ∩ Z^n, with a decomposition.
    Member(Payload),
    /// Generators of the weight monoid σ^∨ ∩ M.
    WeightMonoid(Payload),
    /// Generators of σ^∨ ∩ ρ^⊥ ∩ M for the ray chosen by --ray.
    Invariants {
        #[command(flatten)]
        payload: Payload,
        #[arg(long, default_value_t = 0)]
        ray: usize,
    },
    /// Demazure roots with ∞-norm at most --bound.
    Roots {
        #[command(flatten)]
        payload: Payload,
        #[arg(long, default_value_t = 2)]
        bound: u32,
    },
    /// The least root of the ray chosen by --ray.
    FindRoot {
        #[command(flatten)]
        payload: Payload,
        #[arg(long, default_value_t = 0)]
        ray: usize,
    },
    /// Whether the variety is a torus.
    IsTorus(Payload),
    /// A family of n linearly independent roots on one ray.
    Family {
        #[command(flatten)]
        payload: Payload,
        #[arg(long, default_value_t = 0)]
        ray: usize,
    },
    /// Replicas exp(f∂) of root subgroups.
    #[command(subcommand)]
    Replica(ReplicaCommand),
    /// Connectedness and span data behind the dense open orbit.
    DuCert {
        #[command(flatten)]
        payload: Payload,
        #[arg(long, default_value_t = 0)]
        ray: usize,
    },
    /// Decide whether two cones are equivalent under GL_n(Z).
    Iso {
        /// First cone: inline JSON, path, or `-`.
        first: String,
        /// Second cone: inline JSON, path, or `-`.
        second: String,
    },
    /// Lattice invariants of a cone.
    Fingerprint(Payload),
    /// The fan of X_k, obtained from P^2 by k rounds of corner blow-ups.
    Tower {
        #[arg(long)]
        steps: usize,
        #[arg(long, value_enum)]
        report: Option<Report>,
        /// Also write an SVG drawing of the fan to this path.
        #[arg(long, value_name = "FILE")]
        svg: Option<String>,
    },
    /// Self-intersection numbers of the invariant curves of a fan.
    Selfint(Payload),
    /// Picard rank of a smooth complete fan.
    Picard(Payload),
    /// Lattice automorphisms of a fan.
    FanAut(Payload),
}

#[derive(Subcommand, Debug)]
enum ReplicaCommand {
    /// Apply {"cone", "root", "f", "g"}: the image of g under exp(f∂).
    Apply(Payload),
    /// Whether {"cone", "first", "second"} commute.
    Commute(Payload),
    /// Conjugate {"cone", "root", "f", "t"} by the torus element t.
    Conjugate(Payload),
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Report {
    Selfint,
    Picard,
    Aut,
}

/// Why a command did not produce a result.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Parse(String),
    Io(String),
    Domain(ToricError),
}

impl From<ToricError> for Failure {
    fn from(e: ToricError) -> Self {
        Failure::Domain(e)
    }
}

impl Failure {
    fn code(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "USAGE",
            Failure::Parse(_) => "PARSE_ERROR",
            Failure::Io(_) => "IO_ERROR",
            Failure::Domain(e) => e.code(),
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Parse(m) | Failure::Io(m) => m.clone(),
            Failure::Domain(e) => e.to_string(),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            Failure::Domain(_) => 1,
            _ => 2,
        }
    }
}

fn emit(value: &Value) {
    let mut out = std::io::stdout().lock();
    let _ = serde_json::to_writer(&mut out, value);
    let _ = writeln!(out);
}

fn fail(f: &Failure) -> ExitCode {
    emit(&json!({"ok": false, "error": {"code": f.code(), "message": f.message()}}));
    ExitCode::from(f.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&Failure::Usage(e.render().to_string().trim().to_string())),
    };
    match run(cli.command) {
        Ok(result) => {
            emit(&json!({"ok": true, "result": result}));
            ExitCode::SUCCESS
        }
        Err(f) => fail(&f),
    }
}

fn run(command: Command) -> Result<Value, Failure> {
    use commands::*;
    match command {
        Command::Dual(p) => dual(&input::cone(&p)?),
        Command::Rays(p) => rays(&input::cone(&p)?),
        Command::Hilbert(p) => hilbert(&input::cone(&p)?),
        Command::Member(p) => member(input::parse(&p)?),
        Command::WeightMonoid(p) => weight_monoid(&input::cone(&p)?),
        Command::Invariants { payload, ray } => invariants(&input::cone(&payload)?, ray),
        Command::Roots { payload, bound } => roots(&input::cone(&payload)?, bound),
        Command::FindRoot { payload, ray } => find_root(&input::cone(&payload)?, ray),
        Command::IsTorus(p) => is_torus(&input::cone(&p)?),
        Command::Family { payload, ray } => family(&input::cone(&payload)?, ray),
        Command::Replica(ReplicaCommand::Apply(p)) => replica_apply(input::parse(&p)?),
        Command::Replica(ReplicaCommand::Commute(p)) => replica_commute(input::parse(&p)?),
        Command::Replica(ReplicaCommand::Conjugate(p)) => replica_conjugate(input::parse(&p)?),
        Command::DuCert { payload, ray } => du_cert(&input::cone(&payload)?, ray),
        Command::Iso { first, second } => iso(&input::cone_from(&first)?, &input::cone_from(&second)?),
        Command::Fingerprint(p) => fingerprint(&input::cone(&p)?),
        Command::Tower { steps, report, svg } => tower(steps, input::tower_cap()?, report, svg.as_deref()),
        Command::Selfint(p) => selfint(&input::fan(&p)?),
        Command::Picard(p) => picard(&input::fan(&p)?),
        Command::FanAut(p) => fan_aut(&input::fan(&p)?),
    }
}
