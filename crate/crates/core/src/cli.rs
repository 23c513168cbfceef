//! Command-line entry point.
//!
//! Exit codes: 0 on success, 2 on usage errors, 1 on domain errors. Errors
//! are reported on the diagnostic stream as `error: <Name>: <message>`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::dynamics::{
    compare_states, exact_evolution, phase_report, product_form, Couplings, Family,
};
use crate::error::Error;
use crate::hilbert::Ket;
use crate::io::{read_scenario_file, render_scheme, OutputFormat, SchemeDocument};
use crate::realization::{cell_to_basis, diagonal_cells, HypercubeRealization};
use crate::render::format_value;
use crate::scenarios::{by_name, custom, describe, NAMES};
use crate::hilbert::Shape;

#[derive(Debug, Parser)]
#[command(name = "weakscheme", version, about = "Weak-value schemes of pre- and post-selected systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Built-in scenarios.
    Scenario {
        #[command(subcommand)]
        action: ScenarioAction,
    },
    /// Compute and render the tensor of a built-in scenario.
    Run {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(NAMES))]
        name: String,
        /// Interaction phase for hardy-gamma.
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<f64>,
        #[arg(long, default_value = "text")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the tensor of states read from scenario files.
    Tensor {
        /// Scenario file; its `post` state is used unless --post is given.
        #[arg(long)]
        pre: PathBuf,
        /// Scenario file supplying the post-selection (its `post`, else its `pre`).
        #[arg(long)]
        post: Option<PathBuf>,
        #[arg(long, default_value = "text")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time evolution of the multiwise-interaction systems.
    Evolve {
        /// psit1 | E111 | Hamm2 | GHZ2 | PsiGHZ11 | exact
        #[arg(long)]
        family: String,
        /// System evolved exactly when --family is `exact`.
        #[arg(long, default_value = "psit1")]
        system: String,
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        eps2: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        phi: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        time: f64,
        /// Also report fidelity between exact evolution and the product form.
        #[arg(long)]
        compare: bool,
    },
    /// Hypercube cell <-> basis table.
    Realize {
        #[arg(long)]
        levels: usize,
        #[arg(long)]
        axes: usize,
    },
}

#[derive(Debug, Subcommand)]
enum ScenarioAction {
    List,
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Domain(e.into())
    }
}

/// Runs the CLI with `argv` (including the program name).
pub fn cli_main<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "usage error: {msg}");
            2
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {}: {e}", e.name());
            1
        }
    }
}

fn emit(doc: &SchemeDocument, format: OutputFormat, path: Option<PathBuf>, out: &mut dyn Write) -> Result<(), Failure> {
    let rendered = render_scheme(doc, format)?;
    match path {
        Some(path) => {
            std::fs::write(&path, rendered)?;
            writeln!(out, "wrote {}", path.display())?;
        }
        None => out.write_all(rendered.as_bytes())?,
    }
    Ok(())
}

fn execute(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Scenario {
            action: ScenarioAction::List,
        } => {
            for name in NAMES {
                writeln!(out, "{name:<16} {}", describe(name))?;
            }
        }
        Command::Run {
            name,
            gamma,
            format,
            out: path,
        } => {
            if name == "hardy-gamma" && gamma.is_none() {
                return Err(Failure::Usage("--gamma is required for hardy-gamma".into()));
            }
            let scenario = by_name(&name, gamma)?;
            emit(&SchemeDocument::from_scenario(&scenario)?, format, path, out)?;
        }
        Command::Tensor {
            pre,
            post,
            format,
            out: path,
        } => {
            let mut scenario = read_scenario_file(&pre)?;
            if let Some(post_path) = post {
                let other = read_scenario_file(&post_path)?;
                let post_state = other.post.unwrap_or(other.pre);
                scenario = custom(scenario.pre, Some(post_state), Some(scenario.axis_labels))?;
            }
            emit(&SchemeDocument::from_scenario(&scenario)?, format, path, out)?;
        }
        Command::Evolve {
            family,
            system,
            eps,
            eps2,
            phi,
            time,
            compare,
        } => {
            let params = Couplings { eps, eps2, phi };
            let (is_exact, family) = if family == "exact" {
                (true, system.parse::<Family>().map_err(|e| Failure::Usage(e.to_string()))?)
            } else {
                (false, family.parse::<Family>().map_err(|e| Failure::Usage(e.to_string()))?)
            };
            let evolve_at = |t: f64| {
                if is_exact {
                    exact_evolution(family, &params, t)
                } else {
                    product_form(family, &params, t)
                }
            };
            let state = evolve_at(time).map_err(|e| match e {
                Error::MissingParam { .. } => Failure::Usage(e.to_string()),
                other => Failure::Domain(other),
            })?;
            let initial = evolve_at(0.0)?;
            let source = if is_exact { "exact evolution" } else { "product form" };
            writeln!(out, "family: {family} ({source}), t = {time}")?;
            let shown: Vec<String> = [("eps", eps), ("eps2", eps2), ("phi", phi)]
                .iter()
                .filter_map(|(n, v)| v.map(|v| format!("{n} = {v}")))
                .collect();
            writeln!(out, "couplings: {}", shown.join(", "))?;
            writeln!(out, "amplitudes:")?;
            write_amplitudes(&state, out)?;
            writeln!(out, "phase report vs t = 0:")?;
            for (label, phase) in phase_report(&state, &initial)? {
                writeln!(out, "  {label}  {phase:+.6}")?;
            }
            if compare {
                let exact = exact_evolution(family, &params, time)?;
                let written = product_form(family, &params, time)?;
                let cmp = compare_states(&exact, &written)?;
                writeln!(out, "exact vs product form:")?;
                writeln!(out, "  fidelity: {:.6}", cmp.fidelity)?;
                writeln!(out, "  max component diff: {:.6}", cmp.max_component_diff)?;
            }
        }
        Command::Realize { levels, axes } => {
            let shape = Shape::new(vec![levels; axes])?;
            writeln!(
                out,
                "hypercube: {levels} levels per axis, {axes} axes, {} cells",
                shape.total()
            )?;
            writeln!(out, "cell  basis")?;
            for cell in 0..shape.total() {
                let label = cell_to_basis(&HypercubeRealization {
                    arity: levels,
                    axes,
                    cell,
                })?;
                writeln!(out, "{cell:>4}  {label}")?;
            }
            let diagonal: Vec<String> = diagonal_cells(&shape)?.iter().map(|l| l.to_string()).collect();
            writeln!(out, "diagonal cells: {}", diagonal.join(" "))?;
        }
    }
    Ok(())
}

fn write_amplitudes(state: &Ket, out: &mut dyn Write) -> std::io::Result<()> {
    for (k, a) in state.amps().iter().enumerate() {
        if a.norm() > 1e-12 {
            let label = state.shape().label(k).expect("in range");
            let im = if a.im.abs() < 5e-5 { 0.0 } else { a.im };
            writeln!(out, "  {label}  {:>7} {im:+.4}i", format_value(a.re))?;
        }
    }
    Ok(())
}
