//! Command-line surface: one binary, subcommand per operation, JSON and
//! CSV on the file boundary.
//!
//! Exit codes: 0 when the checked property holds (or the command is a pure
//! generator), 1 when it fails, 2 on usage or parse errors.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gallery;
use crate::io;
use crate::matrix::{ComplexMatrix, Tolerance};
use crate::numrange;
use crate::qec;
use crate::subspace::{self, OrthProjection, Subspace};

#[derive(Parser, Debug)]
#[command(
    name = "isoclinic",
    version,
    about = "Canonical angles, isoclinic subspaces, and Knill-Laflamme checks for dense complex matrices"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Config {
    /// Comparison tolerance, scaled by max(1, norm) of the tested object.
    #[arg(long, global = true, default_value = "1e-9")]
    pub tol: f64,
    /// Seed for randomized probes.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format; reports default to json, the surface to csv.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Canonical angles between the column spans of two matrix files.
    Angles { left: PathBuf, right: PathBuf },
    /// Pairwise isoclinic check of two or more subspaces; exit 0 iff the
    /// family is isoclinic.
    Isoclinic {
        #[arg(num_args = 2.., required = true)]
        files: Vec<PathBuf>,
    },
    /// Knill-Laflamme check of a code against an error model; exit 0 iff
    /// correctable.
    Klcheck {
        code: PathBuf,
        #[arg(num_args = 1.., required = true)]
        errors: Vec<PathBuf>,
    },
    /// Extract the isoclinic family of a correctable code into a directory.
    Extract {
        code: PathBuf,
        #[arg(num_args = 1.., required = true)]
        errors: Vec<PathBuf>,
        #[arg(long)]
        outdir: PathBuf,
    },
    /// Check two isoclinic projections against the model {P1/√2, P2/√2};
    /// exit 0 iff both ranges are correctable.
    Converse { proj1: PathBuf, proj2: PathBuf },
    /// Rank-k numerical range interval of a Hermitian matrix.
    Numrange {
        matrix: PathBuf,
        #[arg(short, long)]
        k: usize,
    },
    /// Rank-k projection witnessing a prescribed compression scalar.
    Witness {
        proj: PathBuf,
        #[arg(short, long)]
        k: usize,
        #[arg(long)]
        lambda: f64,
    },
    /// Worked-example generators.
    Gallery {
        #[command(subcommand)]
        what: GalleryCommand,
    },
}

#[derive(Subcommand, Debug)]
pub enum GalleryCommand {
    /// Two-qubit bit-flip model and the two parity codes.
    Bitflip {
        #[arg(long)]
        p: f64,
        /// Directory for model.json, code_c1.json, code_c2.json; the model
        /// goes to --out/stdout when omitted.
        #[arg(long)]
        outdir: Option<PathBuf>,
    },
    /// Rotated bit-flip model.
    Rotate {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        phi: f64,
        #[arg(long)]
        outdir: Option<PathBuf>,
    },
    /// θ(p, φ) surface as CSV (or JSON with --format json).
    Surface {
        /// Steps per axis; shorthand for equal --p-steps and --phi-steps.
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        p_steps: Option<usize>,
        #[arg(long)]
        phi_steps: Option<usize>,
    },
    /// The printed graph pair, its bases, and the equation check report.
    Wong {
        #[arg(long)]
        outdir: Option<PathBuf>,
    },
}

/// Report envelope: every JSON report carries the tolerance it was
/// evaluated at.
#[derive(Serialize)]
struct WithTol<T: Serialize> {
    tol: f64,
    #[serde(flatten)]
    report: T,
}

pub fn run(cli: Cli) -> Result<i32> {
    let tol = Tolerance::new(cli.config.tol)?;
    if cli.config.tol <= 0.0 {
        return Err(Error::domain("tolerance must be positive"));
    }
    let ctx = Context {
        tol,
        config: &cli.config,
    };
    match &cli.command {
        Command::Angles { left, right } => ctx.angles(left, right),
        Command::Isoclinic { files } => ctx.isoclinic(files),
        Command::Klcheck { code, errors } => ctx.klcheck(code, errors),
        Command::Extract {
            code,
            errors,
            outdir,
        } => ctx.extract(code, errors, outdir),
        Command::Converse { proj1, proj2 } => ctx.converse(proj1, proj2),
        Command::Numrange { matrix, k } => ctx.numrange(matrix, *k),
        Command::Witness { proj, k, lambda } => ctx.witness(proj, *k, *lambda),
        Command::Gallery { what } => ctx.gallery(what),
    }
}

struct Context<'a> {
    tol: Tolerance,
    config: &'a Config,
}

impl Context<'_> {
    fn emit(&self, text: &str) -> Result<()> {
        match &self.config.out {
            Some(path) => fs::write(path, text)?,
            None => print!("{text}"),
        }
        Ok(())
    }

    fn emit_report<T: Serialize>(&self, report: T) -> Result<()> {
        let wrapped = WithTol {
            tol: self.tol.abs_eps(),
            report,
        };
        self.emit(&io::to_json_string(&wrapped)?)
    }

    fn load_subspace(&self, path: &Path) -> Result<Subspace> {
        let raw = io::read_matrix(path)?;
        Subspace::from_columns(&raw, self.tol)
            .map_err(|e| Error::domain(format!("{}: {e}", path.display())))
    }

    fn load_projection(&self, path: &Path) -> Result<OrthProjection> {
        let raw = io::read_matrix(path)?;
        OrthProjection::new(raw, self.tol)
            .map_err(|e| Error::domain(format!("{}: {e}", path.display())))
    }

    fn angles(&self, left: &Path, right: &Path) -> Result<i32> {
        let v = self.load_subspace(left)?;
        let w = self.load_subspace(right)?;
        let report = subspace::canonical_angles(&v, &w)?;
        self.emit_report(report)?;
        Ok(0)
    }

    fn isoclinic(&self, files: &[PathBuf]) -> Result<i32> {
        let subspaces: Vec<Subspace> = files
            .iter()
            .map(|f| self.load_subspace(f))
            .collect::<Result<_>>()?;
        let report = subspace::family_isoclinic_check(&subspaces, self.tol)?;
        let verdict = report.family_isoclinic;
        self.emit_report(report)?;
        Ok(if verdict { 0 } else { 1 })
    }

    fn klcheck(&self, code: &Path, errors: &[PathBuf]) -> Result<i32> {
        let code = self.load_subspace(code)?;
        let model = io::read_operators(errors, self.tol)?;
        let report = qec::kl_check(&code, &model, self.tol)?;
        let verdict = report.correctable;
        self.emit_report(report)?;
        Ok(if verdict { 0 } else { 1 })
    }

    fn extract(&self, code: &Path, errors: &[PathBuf], outdir: &Path) -> Result<i32> {
        let code = self.load_subspace(code)?;
        let model = io::read_operators(errors, self.tol)?;
        let result = qec::extract_isoclinic_family(&code, &model, self.tol)?;
        let manifest = io::write_extraction(outdir, &result, self.tol.abs_eps())?;
        self.emit(&io::to_json_string(&manifest)?)?;
        Ok(0)
    }

    fn converse(&self, proj1: &Path, proj2: &Path) -> Result<i32> {
        let p1 = self.load_projection(proj1)?;
        let p2 = self.load_projection(proj2)?;
        let (first, second) = qec::converse_check(&p1, &p2, self.tol)?;
        let verdict = first.correctable && second.correctable;
        #[derive(Serialize)]
        struct Paired {
            code1: qec::KLReport,
            code2: qec::KLReport,
        }
        self.emit_report(Paired {
            code1: first,
            code2: second,
        })?;
        Ok(if verdict { 0 } else { 1 })
    }

    fn numrange(&self, matrix: &Path, k: usize) -> Result<i32> {
        let a = io::read_matrix(matrix)?;
        let interval = numrange::hermitian_rank_k_range(&a, k, self.tol)?;
        self.emit_report(interval)?;
        Ok(0)
    }

    fn witness(&self, proj: &Path, k: usize, lambda: f64) -> Result<i32> {
        let p = self.load_projection(proj)?;
        let witness = numrange::projection_witness(&p, k, lambda, self.tol)?;
        self.emit(&io::to_json_string(witness.matrix())?)?;
        Ok(0)
    }

    fn gallery(&self, what: &GalleryCommand) -> Result<i32> {
        match what {
            GalleryCommand::Bitflip { p, outdir } => {
                let model = gallery::bitflip_model(*p)?;
                match outdir {
                    Some(dir) => {
                        fs::create_dir_all(dir)?;
                        io::write_model(&dir.join("model.json"), &model)?;
                        io::write_matrix(
                            &dir.join("code_c1.json"),
                            gallery::even_parity_code().basis(),
                        )?;
                        io::write_matrix(
                            &dir.join("code_c2.json"),
                            gallery::odd_parity_code().basis(),
                        )?;
                    }
                    None => {
                        #[derive(Serialize)]
                        struct ModelOut {
                            operators: Vec<ComplexMatrix>,
                        }
                        self.emit(&io::to_json_string(&ModelOut {
                            operators: model.operators().to_vec(),
                        })?)?;
                    }
                }
                Ok(0)
            }
            GalleryCommand::Rotate { p, phi, outdir } => {
                let rotated = qec::rotate_model(&gallery::bitflip_model(*p)?, *phi)?;
                match outdir {
                    Some(dir) => {
                        fs::create_dir_all(dir)?;
                        io::write_model(&dir.join("model.json"), &rotated)?;
                    }
                    None => {
                        #[derive(Serialize)]
                        struct ModelOut {
                            operators: Vec<ComplexMatrix>,
                        }
                        self.emit(&io::to_json_string(&ModelOut {
                            operators: rotated.operators().to_vec(),
                        })?)?;
                    }
                }
                Ok(0)
            }
            GalleryCommand::Surface {
                steps,
                p_steps,
                phi_steps,
            } => {
                let p_steps = p_steps.or(*steps).unwrap_or(50);
                let phi_steps = phi_steps.or(*steps).unwrap_or(50);
                let grid = gallery::theta_surface(p_steps, phi_steps)?;
                match self.config.format.unwrap_or(Format::Csv) {
                    Format::Csv => self.emit(&gallery::surface_to_csv(&grid))?,
                    Format::Json => self.emit(&io::to_json_string(&grid)?)?,
                }
                Ok(0)
            }
            GalleryCommand::Wong { outdir } => {
                let (a, b) = gallery::wong_printed_pair();
                let report = gallery::wong_equation_check(&a, &b, self.tol);
                if let Some(dir) = outdir {
                    fs::create_dir_all(dir)?;
                    io::write_matrix(&dir.join("a.json"), a.matrix())?;
                    io::write_matrix(&dir.join("b.json"), b.matrix())?;
                    io::write_matrix(
                        &dir.join("basis_a.json"),
                        gallery::graph_subspace(&a).basis(),
                    )?;
                    io::write_matrix(
                        &dir.join("basis_b.json"),
                        gallery::graph_subspace(&b).basis(),
                    )?;
                    fs::write(
                        dir.join("report.json"),
                        io::to_json_string(&WithTol {
                            tol: self.tol.abs_eps(),
                            report: &report,
                        })?,
                    )?;
                } else {
                    self.emit_report(&report)?;
                }
                Ok(if report.holds { 0 } else { 1 })
            }
        }
    }
}

/// Maps an error to the exit-code contract: parse, shape, and domain
/// failures are usage errors (2); violated preconditions and degeneracies
/// mean the checked property fails (1).
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Precondition(_) | Error::Degenerate(_) => 1,
        _ => 2,
    }
}
