//! The command-line toolchain: validate, render, report, genadder, compile,
//! simulate, and stdlib export over QIS-XML documents.
//!
//! Exit codes: 0 on success, 1 when validation finds errors, 2 on usage or
//! I/O problems. The builtin gate/circuit libraries are loaded into every
//! command's resolver unless `--no-stdlib` is given.
//!
//! Note on indexing: XML documents address qubits 1-based, but `simulate`
//! prints 0-based memory indexes (`0 = 0`, `1 = 1`, …) so its output lines
//! up with the classic simulator transcripts.

use crate::genadder::generate_adder;
use crate::model::Reference;
use crate::qcl::compile_qcl;
use crate::render::{render_circuit_svg, render_gate_svg, report_html, report_validation_html};
use crate::sim::{run_program, RunMode, RunOptions, RunOutcome};
use crate::stdlib;
use crate::validate::{report_text, validate, Severity, ValidateOptions};
use crate::xml::{write_document, Document, DocumentSet};
use clap::{Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "qisxml",
    version,
    propagate_version = true,
    about = "QIS-XML toolchain: validate, render, report, generate, compile and simulate quantum circuit documents"
)]
struct Cli {
    /// Do not preload the builtin gate/circuit libraries.
    #[arg(long, global = true)]
    no_stdlib: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check documents and print a findings report.
    Validate {
        /// QIS-XML documents to load.
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Report format.
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        /// Also require numeric transformations to be unitary.
        #[arg(long)]
        strict_unitary: bool,
        /// Keep warnings out of the report (errors still fail the command).
        #[arg(long)]
        no_warnings: bool,
    },
    /// Draw a circuit or gate as SVG.
    Render {
        /// QIS-XML documents to load.
        files: Vec<PathBuf>,
        /// Id of the circuit to draw.
        #[arg(long, conflicts_with = "gate")]
        circuit: Option<String>,
        /// Id of the gate to draw.
        #[arg(long)]
        gate: Option<String>,
        /// Output file (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write the HTML gate-catalog report for the loaded documents.
    Report {
        /// QIS-XML documents to load.
        files: Vec<PathBuf>,
        /// Output file.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Generate a ripple-carry adder circuit library.
    Genadder {
        /// Adder width in bits; must be positive.
        bits: i64,
        /// Output file (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Translate a program to QCL-dialect source.
    Compile {
        /// QIS-XML documents to load.
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Id of the program to compile.
        #[arg(long)]
        program: String,
        /// Target language.
        #[arg(long, default_value = "qcl")]
        target: String,
        /// Output file.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run a program on the state-vector simulator.
    Simulate {
        /// QIS-XML documents to load.
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Id of the program to run.
        #[arg(long)]
        program: String,
        /// Random seed for sampled measurements.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Report a sampled outcome or the full distribution.
        #[arg(long, value_enum, default_value_t = ModeArg::Sample)]
        mode: ModeArg,
    },
    /// Builtin library utilities.
    Stdlib {
        #[command(subcommand)]
        action: StdlibAction,
    },
}

#[derive(Subcommand)]
enum StdlibAction {
    /// Write the builtin gate and circuit libraries as XML files.
    Export {
        /// Directory to write gates.xml and circuits.xml into.
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Html,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Sample,
    Distribution,
}

/// Parses `args` (including the program name) and runs one subcommand,
/// returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(error) => {
            let _ = error.print();
            return error.exit_code();
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("{message}");
            2
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::Validate {
            files,
            format,
            strict_unitary,
            no_warnings,
        } => {
            let set = load_set(&files, cli.no_stdlib)?;
            let options = if strict_unitary {
                ValidateOptions::strict()
            } else {
                ValidateOptions::default()
            };
            let findings = validate(&set, &options);
            let has_errors = findings.iter().any(|f| f.severity == Severity::Error);
            let shown: Vec<_> = findings
                .into_iter()
                .filter(|f| !no_warnings || f.severity == Severity::Error)
                .collect();
            let report = match format {
                ReportFormat::Text => report_text(&set, &shown),
                ReportFormat::Html => report_validation_html(&set, &shown),
            };
            print!("{report}");
            Ok(if has_errors { 1 } else { 0 })
        }
        Command::Render {
            files,
            circuit,
            gate,
            output,
        } => {
            let set = load_set(&files, cli.no_stdlib)?;
            let svg = match (circuit, gate) {
                (Some(id), None) => {
                    let circuit = set
                        .resolve_circuit(&Reference::new(&id))
                        .map_err(|e| e.to_string())?;
                    render_circuit_svg(circuit, &set).map_err(|e| e.to_string())?
                }
                (None, Some(id)) => {
                    let gate = set
                        .resolve_gate(&Reference::new(&id))
                        .map_err(|e| e.to_string())?;
                    render_gate_svg(gate)
                }
                _ => return Err("exactly one of --circuit or --gate is required".to_string()),
            };
            emit(output.as_deref(), &svg)?;
            Ok(0)
        }
        Command::Report { files, output } => {
            let set = load_set(&files, cli.no_stdlib)?;
            let html = report_html(&set);
            emit(Some(&output), &html)?;
            Ok(0)
        }
        Command::Genadder { bits, output } => {
            if bits <= 0 {
                eprintln!("Number of bits must be positive");
                return Ok(2);
            }
            let library = generate_adder(bits).map_err(|e| e.to_string())?;
            let xml = write_document(&Document::Circuits(library));
            emit(output.as_deref(), &xml)?;
            Ok(0)
        }
        Command::Compile {
            files,
            program,
            target,
            output,
        } => {
            if target != "qcl" {
                return Err(format!("unsupported target `{target}`; the only target is `qcl`"));
            }
            let set = load_set(&files, cli.no_stdlib)?;
            let findings = validate(&set, &ValidateOptions::default());
            if findings.iter().any(|f| f.severity == Severity::Error) {
                eprint!("{}", report_text(&set, &findings));
                return Ok(1);
            }
            let program = set.find_program(&program).map_err(|e| e.to_string())?;
            let source = compile_qcl(program, &set).map_err(|e| e.to_string())?;
            emit(Some(&output), &source)?;
            Ok(0)
        }
        Command::Simulate {
            files,
            program,
            seed,
            mode,
        } => {
            let set = load_set(&files, cli.no_stdlib)?;
            let program = set.find_program(&program).map_err(|e| e.to_string())?;
            let options = RunOptions {
                seed,
                mode: match mode {
                    ModeArg::Sample => RunMode::Sample,
                    ModeArg::Distribution => RunMode::Distribution,
                },
            };
            match run_program(program, &set, &options) {
                Ok(RunOutcome::Sample(record)) => {
                    for (qubit, bit) in &record.bits {
                        println!("{} = {}", qubit - 1, bit);
                    }
                    Ok(0)
                }
                Ok(RunOutcome::Distribution(distribution)) => {
                    let indexes: Vec<String> = distribution
                        .targets
                        .iter()
                        .map(|t| (t - 1).to_string())
                        .collect();
                    println!(
                        "# distribution over memory qubits (0-based): {}",
                        indexes.join(",")
                    );
                    let width = distribution.targets.len();
                    for (pattern, probability) in &distribution.outcomes {
                        println!("{pattern:0width$b} {probability:.6}");
                    }
                    Ok(0)
                }
                Err(crate::sim::SimError::ValidationFailed { errors }) => {
                    eprint!("{}", report_text(&set, &errors));
                    Ok(1)
                }
                Err(other) => Err(other.to_string()),
            }
        }
        Command::Stdlib { action } => {
            let StdlibAction::Export { output } = action;
            fs::create_dir_all(&output)
                .map_err(|e| format!("{}: {e}", output.display()))?;
            let gates = write_document(&Document::Gates(stdlib::builtin_gates().clone()));
            let circuits = write_document(&Document::Circuits(stdlib::builtin_circuits().clone()));
            for (name, text) in [("gates.xml", gates), ("circuits.xml", circuits)] {
                let path = output.join(name);
                fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))?;
                println!("wrote {}", path.display());
            }
            Ok(0)
        }
    }
}

fn load_set(files: &[PathBuf], no_stdlib: bool) -> Result<DocumentSet, String> {
    let mut set = if no_stdlib {
        DocumentSet::new()
    } else {
        DocumentSet::with_stdlib()
    };
    for file in files {
        set.add_file(file)
            .map_err(|e| format!("{}: {e}", file.display()))?;
    }
    Ok(set)
}

/// Writes `text` to the given path, or to stdout when no path is given.
fn emit(output: Option<&Path>, text: &str) -> Result<(), String> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
