use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use horocalc_cli::{report::exit, run, Command, Options, Var};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Cmd {
    /// Check the fan axioms and lattice conditions.
    Validate,
    /// Full invariant report.
    Invariants,
    /// Q-Gorenstein / locally factorial / smooth ladder.
    Smooth,
    /// Orbit poset with dimensions.
    Orbits,
    /// Compare the closed-form lattice sum with a direct count.
    Oracle,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VarArg {
    Uv,
    Q,
    #[value(name = "L")]
    L,
}

/// Invariants of horospherical embeddings from colored-fan data.
#[derive(Debug, Parser)]
#[command(name = "horocalc", version)]
struct Args {
    command: Cmd,
    /// Input document (JSON); `-` reads stdin.
    file: String,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
    /// Variable used to print E-functions.
    #[arg(long, value_enum, default_value = "q")]
    var: VarArg,
    /// Exponent bound for `oracle` (default: ten times the largest weight).
    #[arg(long)]
    bound: Option<i64>,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::INVALID_INPUT as u8 } else { 0 });
        }
    };
    let text = if args.file == "-" {
        let mut s = String::new();
        if let Err(e) = std::io::stdin().read_to_string(&mut s) {
            eprintln!("error: cannot read stdin: {e}");
            return ExitCode::from(exit::INVALID_INPUT as u8);
        }
        s
    } else {
        match std::fs::read_to_string(&args.file) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", args.file);
                return ExitCode::from(exit::INVALID_INPUT as u8);
            }
        }
    };
    let command = match args.command {
        Cmd::Validate => Command::Validate,
        Cmd::Invariants => Command::Invariants,
        Cmd::Smooth => Command::Smooth,
        Cmd::Orbits => Command::Orbits,
        Cmd::Oracle => Command::Oracle,
    };
    let opts = Options {
        json: args.json,
        var: match args.var {
            VarArg::Uv => Var::Uv,
            VarArg::Q => Var::Q,
            VarArg::L => Var::L,
        },
        bound: args.bound,
    };
    let out = run(command, &text, &opts);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}
