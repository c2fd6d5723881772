//! `axial`: build, export and verify axial algebras of type J(alpha, beta).
//!
//! Exit status is 0 on success, 1 when a verification finds violations and 2 on
//! usage, specialization or I/O errors.

mod commands;
mod params;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use axial_core::par::Exec;
use clap::{Parser, Subcommand};
use num_rational::BigRational;

use commands::Failure;
use params::{parse_rational, Bindings};
use report::Format;

#[derive(Parser, Debug)]
#[command(name = "axial", version, about = "Exact models of 2- and 3-generated axial algebras of type J(alpha, beta)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Value of alpha as n/d.
    #[arg(long, global = true, value_parser = parse_rational, allow_hyphen_values = true)]
    alpha: Option<BigRational>,
    /// Value of beta as n/d.
    #[arg(long, global = true, value_parser = parse_rational, allow_hyphen_values = true)]
    beta: Option<BigRational>,
    /// Value of x = (a, b).
    #[arg(long, global = true, value_parser = parse_rational, allow_hyphen_values = true)]
    x: Option<BigRational>,
    /// Value of y = (a, c), or the coefficient of b in a for two generators.
    #[arg(long, global = true, value_parser = parse_rational, allow_hyphen_values = true)]
    y: Option<BigRational>,
    /// Value of z = (b, c).
    #[arg(long, global = true, value_parser = parse_rational, allow_hyphen_values = true)]
    z: Option<BigRational>,
    /// Value of p = (a, [b]c).
    #[arg(long, global = true, value_parser = parse_rational, allow_hyphen_values = true)]
    p: Option<BigRational>,
    /// Impose y = x in the two-generated model.
    #[arg(long, global = true)]
    star: bool,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest closure step to compute.
    #[arg(long, global = true, default_value_t = 6)]
    max_n: usize,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Form values of the nine words of the 3-generated model.
    Gram,
    /// Products of the nine words.
    Multtable,
    /// Eigenbases of ad_a, ad_b, ad_c in the 3-generated model.
    Eigen,
    /// The 2-dimensional algebras and their constraints on the law.
    Classify2,
    /// Route agreement, fusion law and Frobenius form of the 2-generated model.
    Verify2,
    /// Fusion law, commutativity and Frobenius form of the 3-generated model.
    Verify3,
    /// Dimensions of the iterated spans of conjugates.
    Closure,
    /// Epsilon values and the rank of the form at the given parameters.
    Specialize,
}

impl Command {
    fn tabular(self) -> bool {
        matches!(self, Command::Gram | Command::Multtable)
    }
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    let b = Bindings {
        alpha: cli.alpha.clone(),
        beta: cli.beta.clone(),
        x: cli.x.clone(),
        y: cli.y.clone(),
        z: cli.z.clone(),
        p: cli.p.clone(),
        star: cli.star,
    };
    b.validate().map_err(Failure::Usage)?;
    if matches!(cli.format, Format::Csv | Format::Latex) && !cli.command.tabular() {
        return Err(Failure::Usage(format!("{:?} output is only available for gram and multtable", cli.format).to_lowercase()));
    }
    log::info!("bindings {:?}", b.list());
    let exec = Exec::default();
    let report = match cli.command {
        Command::Gram => commands::gram(&b, exec),
        Command::Multtable => commands::multtable(&b, exec),
        Command::Eigen => commands::eigen(&b, exec),
        Command::Classify2 => commands::classify2(&b),
        Command::Verify2 => commands::verify2(&b),
        Command::Verify3 => commands::verify3(&b, exec),
        Command::Closure => commands::closure(&b, cli.max_n),
        Command::Specialize => commands::specialize(&b, exec),
    }?;
    let text = report.render(cli.format).map_err(Failure::Usage)?;
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(report.passed())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("AXIAL_LOG", "warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) | Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
