mod commands;
mod pretty;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "skein", version, about = "Stated SL_n skein calculus from the command line")]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

/// A closed input: a JSON file (`-` for stdin), or a braid closure.
#[derive(Args, Clone, Debug)]
pub struct ClosedInput {
    /// Diagram or expression JSON; `-` reads stdin.
    #[arg(long, short)]
    pub input: Option<String>,
    /// Braid word such as `1,-2,1`, closed up instead of reading a file.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "input")]
    pub braid: Option<String>,
    /// Strand count for `--braid` (default: one more than the largest generator).
    #[arg(long, requires = "braid")]
    pub strands: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a closed diagram or expression to a Laurent polynomial in v.
    Eval {
        #[command(flatten)]
        src: ClosedInput,
        #[arg(long)]
        n: Option<usize>,
        /// stated or based
        #[arg(long, default_value = "stated")]
        mode: String,
        /// generic, or root:<k> to reduce modulo the k-th cyclotomic polynomial
        #[arg(long, default_value = "generic")]
        spec: String,
    },
    /// The scalars c_i, t, a and [n] of rank n.
    Constants {
        #[arg(long)]
        n: usize,
    },
    /// Quantum matrices.
    #[command(subcommand)]
    Oq(OqCmd),
    /// The R-matrix and its checks.
    #[command(subcommand)]
    Rmatrix(RCmd),
    /// Apply a sign-twisting map to an expression.
    Signmap {
        /// phi_eps, psi or phi_spin
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        eps_order: Option<u32>,
        /// ε = ζ^power for a primitive root ζ of order --eps-order.
        #[arg(long, default_value_t = 1)]
        eps_power: i64,
        #[arg(long, short)]
        input: Option<String>,
    },
    /// Cut a polygon along an arc and lift the expression to the two pieces.
    Split {
        /// `a-b` or `a-b:x,y,…` (arc from ideal point a to b, crossing the listed arcs)
        #[arg(long, conflicts_with = "add_point", required_unless_present = "add_point")]
        arc: Option<String>,
        /// Open ideal point p into a new edge instead of cutting.
        #[arg(long)]
        add_point: Option<usize>,
        /// For a bigon, also print the result read in O_q(SL_n) ⊗ O_q(SL_n).
        #[arg(long, requires = "arc")]
        read_oq: bool,
        #[arg(long, short)]
        input: Option<String>,
    },
    /// Run the acceptance suite.
    Verify {
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, default_value = "1,2,4")]
        eps_orders: String,
        /// Overridden by SKEIN_SEED.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include wall-clock times (output is then no longer reproducible).
        #[arg(long)]
        timings: bool,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Subcommand)]
enum OqCmd {
    /// Straighten a word or combination, e.g. `u[2,1]*u[1,1] - q`.
    NormalForm {
        #[arg(long)]
        n: usize,
        expr: String,
    },
    Det {
        #[arg(long)]
        n: usize,
    },
    /// Coproduct, counit and antipode.
    Hopf {
        #[arg(long)]
        n: usize,
        expr: String,
    },
    /// Equality in O_q(SL_n).
    Equal {
        #[arg(long)]
        n: usize,
        x: String,
        y: String,
    },
}

#[derive(Subcommand)]
enum RCmd {
    Build {
        #[arg(long)]
        n: usize,
    },
    Ybe {
        #[arg(long)]
        n: usize,
    },
    Hecke {
        #[arg(long)]
        n: usize,
    },
    /// The boundary coefficient tables a, b at a root of unity.
    Coeffs {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        eps_order: u32,
    },
    /// Evaluate a closed link by contracting R-matrices along a Morse presentation.
    Statesum {
        #[arg(long)]
        n: usize,
        /// Morse JSON (`{"slices": […]}`) or `-` for stdin.
        #[arg(long, short)]
        input: Option<String>,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "input")]
        braid: Option<String>,
        #[arg(long, requires = "braid")]
        strands: Option<usize>,
    },
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
    match commands::dispatch(cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("skein: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
