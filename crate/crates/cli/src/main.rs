use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use coxtrees::cli::{run, Command, Format, RunConfig, Status};
use coxtrees::elements::DEFAULT_BUDGET;

/// Exact Coxeter group computations and checkers.
///
/// Coxeter matrices are read as text (rank on the first line, then rows of
/// positive integers or `inf`; `#` starts a comment) or as JSON
/// `{"generators": [...], "matrix": [[1, 3, "inf"], ...]}`. The raag command
/// reads an edge list (`v name` declares a vertex, `a b` adds an edge) or a
/// DOT `graph { a -- b; }`. The orbifold command reads
/// `{"genus": g, "cone_points": [m1, ...]}`.
///
/// Exit status: 0 pass, 1 invariant violation, 2 bad input, 3 budget or
/// integer overflow.
#[derive(Parser, Debug)]
#[command(name = "coxtrees", version)]
struct Args {
    /// classify, ball, davis, walls, trees, verify, raag or orbifold
    command: Command,
    #[arg(long, short)]
    input: PathBuf,
    /// Ball radius (word length); for raag, the radius of the injectivity check
    #[arg(long, short, default_value_t = 8)]
    radius: usize,
    /// Odd prime for the congruence subgroup; chosen automatically if absent
    #[arg(long, short)]
    prime: Option<u32>,
    /// Maximum number of group elements enumerated
    #[arg(long, env = "COXTREES_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// json, dot or text
    #[arg(long, short, default_value = "json")]
    format: Format,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(Status::Input.code() as u8);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    let cfg = RunConfig {
        command: args.command,
        input: args.input,
        radius: args.radius,
        prime: args.prime,
        budget: args.budget,
        seed: args.seed,
        format: args.format,
    };
    let outcome = run(&cfg);
    let mut stdout = std::io::stdout().lock();
    if outcome.status == Status::Input || outcome.status == Status::Budget {
        for d in &outcome.diagnostics {
            eprintln!("error: {d}");
        }
    } else {
        let _ = stdout.write_all(outcome.output.as_bytes());
        for d in &outcome.diagnostics {
            eprintln!("violation: {d}");
        }
    }
    ExitCode::from(outcome.status.code() as u8)
}
