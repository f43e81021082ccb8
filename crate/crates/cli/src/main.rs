use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;

use gf2ramsey::forms::SpaceSpec;
use gf2ramsey::gf2::Subspace;
use gf2ramsey::ramsey::{FlatVariant, Method};
use gf2ramsey_cli::{
    parse_space, run, CliError, CommandSpec, NamedColoring, PatternSpec, RunConfig, Section3Check,
};

/// Ramsey-type arrow checks over finite spaces with a symmetric bilinear form over GF(2).
#[derive(Parser)]
#[command(name = "gf2ramsey", version)]
struct Cli {
    /// JSON run configuration; a subcommand given on the line replaces its command.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// exhaustive, sat, or auto
    #[arg(long, global = true, value_parser = serde_str::<Method>)]
    method: Option<Method>,
    #[arg(long, global = true)]
    budget_copies: Option<u64>,
    #[arg(long, global = true)]
    budget_colorings: Option<u64>,
    #[arg(long, global = true)]
    budget_decisions: Option<u64>,
    #[arg(long, global = true)]
    budget_variables: Option<u64>,
    /// Worker threads; 1 runs sequentially.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Directory for report.json, report.csv and artifacts.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Cmd>,
}

#[derive(Args)]
struct InstanceArgs {
    /// symplectic:k, bounded:k,m, or JSON
    #[arg(long, value_parser = space_arg)]
    space: SpaceSpec,
    /// Host subspace as JSON; defaults to the whole space.
    #[arg(long, value_parser = serde_json_arg::<Subspace>)]
    c: Option<Subspace>,
    /// dim,rad (isometric), dim,rad,meet (ambient orbit), or JSON
    #[arg(long, value_parser = pattern_arg)]
    pattern_a: PatternSpec,
    #[arg(long, value_parser = pattern_arg)]
    pattern_b: PatternSpec,
    #[arg(long, default_value_t = 2)]
    colors: u32,
}

#[derive(Subcommand)]
enum Cmd {
    /// Radicals, named isometries and the red/white/blue coloring.
    VerifySection2 {
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// Constructions over spaces with a radical.
    VerifySection3 {
        /// lemma, independence, pram, or dim1
        #[arg(value_parser = serde_str::<Section3Check>)]
        which: Section3Check,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        colors: u32,
        #[arg(long)]
        a0_dim: Option<usize>,
        #[arg(long)]
        b0_dim: Option<usize>,
    },
    /// Decide whether every coloring of A-copies has a monochromatic B-copy.
    Arrow {
        #[command(flatten)]
        inst: InstanceArgs,
        /// rwb, independence, or projection_family
        #[arg(long, value_parser = serde_str::<NamedColoring>)]
        hint: Option<NamedColoring>,
    },
    /// Bounds on the Ramsey degree over several truncations.
    Degree {
        /// Repeatable.
        #[arg(long = "space", value_parser = space_arg, required = true)]
        spaces: Vec<SpaceSpec>,
        #[arg(long, value_parser = pattern_arg)]
        pattern_a: PatternSpec,
        #[arg(long, value_parser = pattern_arg)]
        pattern_b: PatternSpec,
        #[arg(long, default_value_t = 2)]
        colors: u32,
        #[arg(long, value_parser = serde_str::<NamedColoring>)]
        hint: Option<NamedColoring>,
    },
    /// Arrow check on tuples of flats.
    Tuples {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        colors: u32,
    },
    /// Least n such that GF(2)^n arrows the given flat dimensions.
    Vector {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        colors: u32,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        /// linear, proper_affine, or any_affine
        #[arg(long, value_parser = serde_str::<FlatVariant>, default_value = "linear")]
        variant: FlatVariant,
    },
    /// Write the instance as DIMACS CNF plus a variable manifest.
    ExportCnf {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long, default_value_t = 1)]
        threshold: u32,
    },
}

fn serde_str<T: DeserializeOwned>(s: &str) -> Result<T, String> {
    serde_json::from_value(serde_json::Value::String(s.replace('-', "_")))
        .map_err(|e| e.to_string())
}

fn serde_json_arg<T: DeserializeOwned>(s: &str) -> Result<T, String> {
    serde_json::from_str(s).map_err(|e| e.to_string())
}

fn space_arg(s: &str) -> Result<SpaceSpec, String> {
    parse_space(s).map_err(|e| e.to_string())
}

fn pattern_arg(s: &str) -> Result<PatternSpec, String> {
    PatternSpec::parse(s).map_err(|e| e.to_string())
}

impl Cmd {
    fn into_spec(self) -> CommandSpec {
        match self {
            Cmd::VerifySection2 { k } => CommandSpec::VerifySection2 { k },
            Cmd::VerifySection3 {
                which,
                k,
                m,
                colors,
                a0_dim,
                b0_dim,
            } => CommandSpec::VerifySection3 {
                which,
                k,
                m,
                colors,
                a0_dim,
                b0_dim,
            },
            Cmd::Arrow { inst, hint } => CommandSpec::Arrow {
                space: inst.space,
                c: inst.c,
                pattern_a: inst.pattern_a,
                pattern_b: inst.pattern_b,
                colors: inst.colors,
                hint,
            },
            Cmd::Degree {
                spaces,
                pattern_a,
                pattern_b,
                colors,
                hint,
            } => CommandSpec::Degree {
                spaces,
                pattern_a,
                pattern_b,
                colors,
                hint,
            },
            Cmd::Tuples { m, t, k, n, colors } => CommandSpec::Tuples { m, t, k, n, colors },
            Cmd::Vector {
                t,
                k,
                colors,
                max_n,
                variant,
            } => CommandSpec::Vector {
                t,
                k,
                colors,
                max_n,
                variant,
            },
            Cmd::ExportCnf { inst, threshold } => CommandSpec::ExportCnf {
                space: inst.space,
                c: inst.c,
                pattern_a: inst.pattern_a,
                pattern_b: inst.pattern_b,
                colors: inst.colors,
                threshold,
            },
        }
    }
}

fn build_config(cli: Cli) -> Result<(RunConfig, Option<PathBuf>), CliError> {
    let mut config = match (&cli.config, cli.command) {
        (Some(path), cmd) => {
            let text = std::fs::read_to_string(path)?;
            let mut c = RunConfig::from_json(&text, &path.display().to_string())?;
            if let Some(cmd) = cmd {
                c.command = cmd.into_spec();
            }
            c
        }
        (None, Some(cmd)) => RunConfig::new(cmd.into_spec()),
        (None, None) => return Err(CliError::Config("no subcommand and no --config".into())),
    };
    if let Some(m) = cli.method {
        config.method = m;
    }
    let b = &mut config.budget;
    b.max_copies = cli.budget_copies.unwrap_or(b.max_copies);
    b.max_colorings = cli.budget_colorings.unwrap_or(b.max_colorings);
    b.max_decisions = cli.budget_decisions.unwrap_or(b.max_decisions);
    b.max_variables = cli.budget_variables.unwrap_or(b.max_variables);
    if cli.threads.is_some() {
        config.threads = cli.threads;
    }
    Ok((config, cli.out))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let result = build_config(cli).and_then(|(config, out)| run(&config, out.as_deref()));
    match result {
        Ok(report) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            );
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
