//! `minsurf`: validate Weierstrass data, analyze ends and curvature, write
//! catalog data and meshes.
//!
//! Exit status is 0 on success, 1 when the datum is rejected on mathematical
//! grounds and 2 for usage, I/O or parse errors.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use minsurf::catalog;
use minsurf::mesh::{build_mesh, export_obj, sample_domain, Projection};
use minsurf::weierstrass::{DatumFile, WeierstrassData};
use minsurf::{Error, Tolerances};

#[derive(Parser)]
#[command(name = "minsurf", version, about = "Complete minimal surfaces of finite total curvature from Weierstrass data")]
struct Cli {
    /// Scale every numerical tolerance by this factor.
    #[arg(long, global = true, default_value_t = 1.0, value_name = "FACTOR")]
    tol: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the null condition, real residues and end orders.
    Verify { input: PathBuf },
    /// Full analysis: curvature, inequalities and every end.
    Analyze {
        input: PathBuf,
        /// Write the structured report here.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// List built-in surfaces, or write one in the input format.
    Catalog {
        name: Option<String>,
        /// Parameter m of the generalized Jorge–Meeks family.
        #[arg(long)]
        param: Option<u32>,
        /// Output file (stdout when absent).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Triangulate the surface and export OBJ.
    Mesh {
        input: PathBuf,
        /// Output OBJ (defaults to the input with extension .obj).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Inner radius of the end annuli.
        #[arg(long, default_value_t = 0.05)]
        rmin: f64,
        /// Outer radius of the end annuli.
        #[arg(long, default_value_t = 0.5)]
        rmax: f64,
        /// Angular samples per ring.
        #[arg(long, default_value_t = 48)]
        res: usize,
        /// Three 1-based coordinate axes, e.g. 1,2,3.
        #[arg(long, value_delimiter = ',')]
        project: Option<Vec<usize>>,
    },
}

/// Failure carrying its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn rejected(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::Io(_) | Error::Parameter(_) => Self::usage(e.to_string()),
            _ => Self::rejected(e.to_string()),
        }
    }
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        eprintln!("error: --tol must be a positive finite factor, got {}", cli.tol);
        return ExitCode::from(2);
    }
    let tol = Tolerances::default().scaled(cli.tol);
    let outcome = match cli.command {
        Command::Verify { input } => verify(&input, tol),
        Command::Analyze { input, json } => analyze(&input, json.as_deref(), tol),
        Command::Catalog { name, param, output } => catalog_cmd(name.as_deref(), param, output.as_deref()),
        Command::Mesh {
            input,
            output,
            rmin,
            rmax,
            res,
            project,
        } => mesh(&input, output, rmin, rmax, res, project, tol),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// Read and build a datum. Anything wrong with the file itself, including a
/// structurally inconsistent datum, is a usage error.
fn load(path: &Path, tol: Tolerances) -> Result<(Vec<u8>, WeierstrassData), Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| Failure::usage(format!("{} is not UTF-8 text", path.display())))?;
    let file = DatumFile::parse(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let mut data = file
        .to_datum(tol)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    if data.label.is_empty() {
        data.label = path.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
    }
    Ok((bytes, data))
}

fn verify(input: &Path, tol: Tolerances) -> CliResult {
    let (_, data) = load(input, tol)?;
    let v = data.validate()?;
    eprintln!("null defect: {:e}", v.null.defect);
    for (power, size) in &v.null.offending {
        eprintln!("  coefficient of z^{power}: {size:e}");
    }
    eprintln!("worst |Im residue|: {:e}", v.residues.worst_imag);
    for (p, mu) in &v.orders {
        eprintln!("end {p}: metric order {mu}");
    }
    if v.is_valid() {
        eprintln!("{}: valid", data.label);
        Ok(())
    } else {
        Err(Failure::rejected(format!("{}: rejected: {}", data.label, v.problems.join("; "))))
    }
}

fn analyze(input: &Path, json: Option<&Path>, tol: Tolerances) -> CliResult {
    let (bytes, data) = load(input, tol)?;
    let validation = data.validate()?;
    if !validation.is_valid() {
        return Err(Failure::rejected(format!(
            "{}: refusing to analyze an invalid datum: {}",
            data.label,
            validation.problems.join("; ")
        )));
    }
    let report = report::AnalysisReport::build(&data, &bytes, validation)?;
    print!("{}", report.summary());
    if let Some(path) = json {
        let text = serde_json::to_string_pretty(&report).expect("report serializes");
        fs::write(path, text + "\n").map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn catalog_cmd(name: Option<&str>, param: Option<u32>, output: Option<&Path>) -> CliResult {
    let Some(name) = name else {
        for n in catalog::NAMES {
            println!("{n}");
        }
        return Ok(());
    };
    if param.is_some() && name != "generalized-jorge-meeks" {
        return Err(Failure::usage(format!("--param applies only to generalized-jorge-meeks, not {name}")));
    }
    let entry = catalog::by_name(name, param)?;
    let text = DatumFile::from_datum(&entry.data).to_json() + "\n";
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn mesh(
    input: &Path,
    output: Option<PathBuf>,
    rmin: f64,
    rmax: f64,
    res: usize,
    project: Option<Vec<usize>>,
    tol: Tolerances,
) -> CliResult {
    let (_, data) = load(input, tol)?;
    let validation = data.validate()?;
    if !validation.is_valid() {
        return Err(Failure::rejected(format!(
            "{}: refusing to mesh an invalid datum: {}",
            data.label,
            validation.problems.join("; ")
        )));
    }
    let projection = match project {
        Some(axes) => {
            if axes.len() != 3 || axes.contains(&0) {
                return Err(Failure::usage("--project takes three 1-based axes, e.g. 1,2,3"));
            }
            let p = Projection::Axes([axes[0] - 1, axes[1] - 1, axes[2] - 1]);
            p.validate(data.n())?;
            Some(p)
        }
        None => None,
    };
    let tri = sample_domain(&data, rmin, rmax, res)?;
    for w in &tri.warnings {
        log::warn!("{w}");
    }
    let surface = build_mesh(&data, &tri, projection)?;
    let path = output.unwrap_or_else(|| input.with_extension("obj"));
    let sidecar = export_obj(&surface, &path)?;
    eprintln!(
        "wrote {} ({} vertices, {} faces)",
        path.display(),
        surface.vertices.len(),
        surface.faces.len()
    );
    if let Some(side) = sidecar {
        eprintln!("wrote {}", side.display());
    }
    Ok(())
}
