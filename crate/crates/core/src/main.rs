use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gpascal::fractal::{fast_gbinom_fractal, fractal_entry};
use gpascal::io::{to_csv, to_pbm, MatrixDocument};
use gpascal::special::{phi_coordinates, q_umbral_inverse, zero_overlay_matrix};
use gpascal::verify::{run_suite, SUITES};
use gpascal::zero::carryless_convolve;
use gpascal::{CSequence, Error, ExactRational, GPSpec, TriangularMatrix};

#[derive(Parser)]
#[command(name = "gpascal", version, about = "Exact generalized Pascal matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a matrix document (JSON by default)
    Gen {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Print the entry (N, M) of a matrix
    Eval {
        #[command(flatten)]
        matrix: MatrixArgs,
        n: usize,
        m: usize,
    },
    /// Run a verification suite and print its JSON report
    Verify {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
        #[arg(long, default_value_t = 16)]
        size: usize,
    },
    /// Print the special-system coordinates {q: beta} of a matrix
    Decompose {
        #[command(flatten)]
        matrix: MatrixArgs,
        /// Largest modulus; defaults to size - 1
        #[arg(long = "max-q")]
        max_q: Option<u64>,
        /// Read the matrix from a JSON document instead
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Carryless convolution of two fractal series given by their first q
    /// coefficients (comma-separated, leading 1)
    Convolve {
        #[arg(long)]
        q: u64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        a: Vec<ExactRational>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        b: Vec<ExactRational>,
        /// Truncation degree
        #[arg(long, default_value_t = 15)]
        degree: usize,
    },
    /// Write a matrix to a file or stdout in the chosen format
    Export {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long, value_enum)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pbm,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Pascal,
    Ones,
    Phiq,
    Fractal,
    Qumbral,
    QumbralInverse,
    ZeroOverlay,
    Tmatrix,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Pascal => "pascal",
            Kind::Ones => "ones",
            Kind::Phiq => "phiq",
            Kind::Fractal => "fractal",
            Kind::Qumbral => "qumbral",
            Kind::QumbralInverse => "qumbral-inverse",
            Kind::ZeroOverlay => "zero-overlay",
            Kind::Tmatrix => "tmatrix",
        }
    }
}

#[derive(Args)]
struct MatrixArgs {
    #[arg(long, value_enum, default_value_t = Kind::Pascal)]
    kind: Kind,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<ExactRational>,
    #[arg(long, default_value_t = 16)]
    size: usize,
}

struct Built {
    matrix: TriangularMatrix,
    q: Option<i64>,
    phi: Option<ExactRational>,
}

impl MatrixArgs {
    fn modulus(&self) -> Result<u64, Error> {
        match self.q {
            Some(q) if q >= 2 => Ok(q as u64),
            Some(q) => Err(Error::InvalidParameter(format!("--q {q} must be at least 2"))),
            None => Err(Error::InvalidParameter(format!("--kind {} needs --q", self.kind.name()))),
        }
    }

    fn check(&self) -> Result<(), Error> {
        if self.size == 0 {
            return Err(Error::InvalidParameter("--size must be at least 1".into()));
        }
        let takes_phi = matches!(self.kind, Kind::Phiq | Kind::Fractal);
        if self.phi.is_some() && !takes_phi {
            return Err(Error::InvalidParameter(format!("--kind {} takes no --phi", self.kind.name())));
        }
        if self.q.is_some() && matches!(self.kind, Kind::Pascal | Kind::Ones) {
            return Err(Error::InvalidParameter(format!("--kind {} takes no --q", self.kind.name())));
        }
        if self.kind == Kind::Phiq && self.phi.is_none() {
            return Err(Error::InvalidParameter("--kind phiq needs --phi".into()));
        }
        Ok(())
    }

    /// Symbolic form for the kinds that have one.
    fn spec(&self) -> Result<Option<GPSpec>, Error> {
        self.check()?;
        Ok(Some(match self.kind {
            Kind::Pascal => GPSpec::pascal(),
            Kind::Ones => GPSpec::FromC(Arc::new(CSequence::geometric())),
            Kind::Phiq => GPSpec::PhiQ {
                phi: self.phi.clone().expect("checked"),
                q: self.modulus()?,
            },
            Kind::Fractal => {
                let q = self.modulus()?;
                let phi = self.phi.clone().unwrap_or_else(|| ExactRational::from(q));
                GPSpec::Fractal { phi, q }
            }
            Kind::Qumbral => GPSpec::QUmbral(ExactRational::from(self.umbral_q()?)),
            Kind::Tmatrix => GPSpec::TMatrix(self.modulus()?),
            Kind::QumbralInverse | Kind::ZeroOverlay => return Ok(None),
        }))
    }

    fn umbral_q(&self) -> Result<i64, Error> {
        self.q
            .ok_or_else(|| Error::InvalidParameter(format!("--kind {} needs --q", self.kind.name())))
    }

    fn build(&self) -> Result<Built, Error> {
        let matrix = match self.spec()? {
            Some(spec) => spec.build(self.size)?,
            None => match self.kind {
                Kind::QumbralInverse => q_umbral_inverse(&ExactRational::from(self.umbral_q()?), self.size),
                _ => zero_overlay_matrix(self.modulus()?, self.size)?,
            },
        };
        let phi = match self.kind {
            Kind::Fractal => Some(self.phi.clone().unwrap_or_else(|| ExactRational::from(self.q.unwrap_or(0)))),
            _ => self.phi.clone(),
        };
        Ok(Built { matrix, q: self.q, phi })
    }

    fn document(&self) -> Result<MatrixDocument, Error> {
        let built = self.build()?;
        Ok(MatrixDocument::new(self.kind.name(), built.q, built.phi, &built.matrix))
    }
}

fn render(format: Format, matrix: &MatrixArgs) -> Result<String, Error> {
    Ok(match format {
        Format::Json => {
            let mut s = matrix.document()?.to_json();
            s.push('\n');
            s
        }
        Format::Csv => to_csv(&matrix.build()?.matrix),
        Format::Pbm => to_pbm(&matrix.build()?.matrix),
    })
}

enum Failure {
    Config(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Config(e.to_string())
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mut out = std::io::stdout().lock();
    let mut emit = |text: &str| out.write_all(text.as_bytes()).map_err(|e| Failure::Config(e.to_string()));
    match cli.command {
        Command::Gen { matrix, format } => emit(&render(format, &matrix)?),
        Command::Eval { matrix, n, m } => {
            matrix.check()?;
            let value = match matrix.kind {
                Kind::Fractal => {
                    let q = matrix.modulus()?;
                    match &matrix.phi {
                        None if m <= n => fast_gbinom_fractal(q, n as u64, m as u64),
                        None => ExactRational::zero(),
                        Some(phi) => fractal_entry(phi, q, n as u64, m as u64),
                    }
                }
                _ => match matrix.spec()? {
                    Some(spec) => spec.eval(n, m)?,
                    None => {
                        let size = n.max(m) + 1;
                        let wide = MatrixArgs { size, ..matrix };
                        wide.build()?.matrix.get(n, m)
                    }
                },
            };
            emit(&format!("{value}\n"))
        }
        Command::Verify { suite, size } => {
            let report = run_suite(&suite, size)?;
            emit(&format!("{}\n", report.to_json()))?;
            if report.pass {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
        Command::Decompose { matrix, max_q, input } => {
            let a = match input {
                Some(path) => {
                    let text = fs::read_to_string(&path)
                        .map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
                    MatrixDocument::from_json(&text)?.to_matrix()?
                }
                None => matrix.build()?.matrix,
            };
            let max_q = max_q.unwrap_or(a.size().saturating_sub(1) as u64);
            let coords = phi_coordinates(&a, max_q)?;
            emit(&format!("{}\n", coords.to_json()))
        }
        Command::Convolve { q, a, b, degree } => {
            if q < 2 {
                return Err(Failure::Config(format!("--q {q} must be at least 2")));
            }
            let extend = |base: &[ExactRational]| -> Result<Vec<ExactRational>, Failure> {
                if base.len() != q as usize {
                    return Err(Failure::Config(format!(
                        "expected {q} base coefficients, got {}",
                        base.len()
                    )));
                }
                Ok(gpascal::zero::fractal_extend(base, q, degree + 1))
            };
            let result = carryless_convolve(&extend(&a)?, &extend(&b)?, q, degree)?;
            let cells: Vec<String> = result.iter().map(ToString::to_string).collect();
            emit(&format!("{}\n", serde_json::to_string(&cells).expect("strings serialize")))
        }
        Command::Export { matrix, format, output } => {
            let text = render(format, &matrix)?;
            match output {
                Some(path) => fs::write(&path, text)
                    .map_err(|e| Failure::Config(format!("{}: {e}", path.display()))),
                None => emit(&text),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
