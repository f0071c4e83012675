//! `trate` command-line front end.
//!
//! Exit codes: 0 success, 1 validation failure, 2 parse or usage error,
//! 3 numerical failure.

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use tropical_rating::document::{parse_matrix, parse_problem};
use tropical_rating::lca_solver::{differentiate, solve_single};
use tropical_rating::multicriteria::{
    ahp_solve, geometric_mean_vector, lca_solve, principal_eigenvector, wgm_solve, SolveOptions,
};
use tropical_rating::pairwise::{RECIPROCITY_TOLERANCE, TIE_TOLERANCE};
use tropical_rating::report::{
    classical_report, compare, lca_reports, render_csv, render_text, single_lca_reports,
    single_vector_report, InputEcho, ReportDocument,
};
use tropical_rating::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "trate",
    version,
    about = "Rate alternatives from pairwise comparison matrices by log-Chebyshev approximation, AHP and weighted geometric means"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check structure and reciprocity of a problem file.
    Validate {
        /// Problem file, or `-` for standard input.
        file: PathBuf,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Rate the alternatives of a multicriteria problem.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = SolveMethod::All)]
        method: SolveMethod,
        /// Count the worst differentiating LCA solution as a separate opinion
        /// in the comparison's plurality line.
        #[arg(long)]
        count_worst: bool,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Rate the items of a single comparison matrix.
    Single {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = SingleMethod::Lca)]
        method: SingleMethod,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Relative tolerance on a_ij * a_ji = 1.
    #[arg(long, default_value_t = RECIPROCITY_TOLERANCE)]
    reciprocity_tol: f64,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Relative tolerance below which ratings are ranked as equivalent.
    #[arg(long, default_value_t = TIE_TOLERANCE)]
    tie_tol: f64,
    /// Decimal places in text and CSV output.
    #[arg(long, default_value_t = 4)]
    precision: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolveMethod {
    Lca,
    Ahp,
    Wgm,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SingleMethod {
    Lca,
    Eig,
    Gmean,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = if err.is_validation_error() {
            EXIT_VALIDATION
        } else if err.is_parse_error() {
            EXIT_USAGE
        } else {
            EXIT_NUMERICAL
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    let result = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        std::fs::read_to_string(path)
    };
    result.map_err(|e| Failure {
        code: EXIT_USAGE,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

fn check_output(output: &OutputArgs) -> Result<(), Failure> {
    if !(output.tie_tol.is_finite() && output.tie_tol >= 0.0) {
        return Err(Failure {
            code: EXIT_USAGE,
            message: format!("--tie-tol must be a nonnegative number, got {}", output.tie_tol),
        });
    }
    Ok(())
}

fn render(doc: &ReportDocument, output: &OutputArgs) -> String {
    match output.format {
        Format::Text => render_text(doc, output.precision),
        Format::Json => doc.to_json(),
        Format::Csv => render_csv(doc, output.precision),
    }
}

fn validate(text: &str, tol: f64) -> Result<String, Failure> {
    let problem = parse_problem(text, tol)?;
    let m = problem.criterion_count();
    let n = problem.alternative_count();
    let mut out = format!(
        "ok: criteria {m}x{m} and {m} alternative matrices {n}x{n} are reciprocal (tolerance {tol:e})\n"
    );
    let consistency = |consistent: bool| if consistent { "consistent" } else { "inconsistent" };
    out.push_str(&format!(
        "  criteria: {}\n",
        consistency(problem.criteria().is_consistent(1e-9))
    ));
    for (label, a) in problem.criterion_labels().iter().zip(problem.alternatives()) {
        out.push_str(&format!(
            "  alternatives[{label}]: {}\n",
            consistency(a.is_consistent(1e-9))
        ));
    }
    Ok(out)
}

fn solve(
    text: &str,
    method: SolveMethod,
    count_worst: bool,
    input: &InputArgs,
    output: &OutputArgs,
) -> Result<String, Failure> {
    check_output(output)?;
    let problem = parse_problem(text, input.reciprocity_tol)?;
    let opts = SolveOptions {
        tie_tol: output.tie_tol,
    };
    let mut methods = Vec::new();
    if matches!(method, SolveMethod::Lca | SolveMethod::All) {
        methods.extend(lca_reports(&problem, &lca_solve(&problem, &opts)?));
    }
    if matches!(method, SolveMethod::Ahp | SolveMethod::All) {
        methods.push(classical_report(&problem, &ahp_solve(&problem, &opts)?));
    }
    if matches!(method, SolveMethod::Wgm | SolveMethod::All) {
        methods.push(classical_report(&problem, &wgm_solve(&problem, &opts)?));
    }
    let mut doc = ReportDocument::new(InputEcho::from_problem(&problem), methods);
    if method == SolveMethod::All {
        doc.comparison = Some(compare(&doc.methods, problem.alternative_labels(), count_worst)?);
    }
    Ok(render(&doc, output))
}

fn single(
    text: &str,
    method: SingleMethod,
    input: &InputArgs,
    output: &OutputArgs,
) -> Result<String, Failure> {
    check_output(output)?;
    let (matrix, labels) = parse_matrix(text, input.reciprocity_tol)?;
    let methods = match method {
        SingleMethod::Lca => {
            let g = solve_single(matrix.as_tropical())?;
            single_lca_reports(&labels, g.lambda(), &differentiate(&g), output.tie_tol)
        }
        SingleMethod::Eig => {
            let (v, ev) = principal_eigenvector(matrix.as_tropical())?;
            vec![single_vector_report("eig", &labels, &v, Some(ev), output.tie_tol)]
        }
        SingleMethod::Gmean => {
            let v = geometric_mean_vector(matrix.as_tropical())?;
            vec![single_vector_report("gmean", &labels, &v, None, output.tie_tol)]
        }
    };
    let doc = ReportDocument::new(InputEcho::from_matrix(&matrix, &labels), methods);
    Ok(render(&doc, output))
}

fn execute(command: Command) -> Result<String, Failure> {
    match command {
        Command::Validate { file, input } => validate(&read_input(&file)?, input.reciprocity_tol),
        Command::Solve {
            file,
            method,
            count_worst,
            input,
            output,
        } => solve(&read_input(&file)?, method, count_worst, &input, &output),
        Command::Single {
            file,
            method,
            input,
            output,
        } => single(&read_input(&file)?, method, &input, &output),
    }
}

/// Runs the CLI with the given arguments (including the program name) and
/// returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command) {
        Ok(text) => match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(err, "error: cannot write output: {e}");
                EXIT_USAGE
            }
        },
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}
