mod output;
mod support;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use secant_caustic::analysis::analyze;
use secant_caustic::caustic::DEFAULT_RESOLUTION;
use secant_caustic::oracle::{brute_secant_cloud, default_tol_par, hausdorff_points, oracle_bound, MIN_SAMPLES};
use secant_caustic::rosette::{hedgehog_point, verify_rosette_theorem, RosetteReport};
use secant_caustic::{CurveSpec, Error, PlanarCurve, TrigSeries, Vec2};
use sha2::{Digest, Sha256};

use output::{Layer, PALETTE};

#[derive(Parser)]
#[command(name = "secant-caustic", version, about = "Secant caustics of closed planar curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Trace every branch of the secant caustic and check the counting theorems.
    Analyze {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
        resolution: usize,
        /// Report JSON path; printed to standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory for one CSV file per branch.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Closed-form branches of a rosette's secant caustic.
    Rosette {
        /// Curve file of kind `support_fourier`.
        #[arg(required_unless_present = "support", conflicts_with = "support")]
        input: Option<PathBuf>,
        /// Support function as "a0, c·cos(kθ/n), ...".
        #[arg(long, requires = "n")]
        support: Option<String>,
        #[arg(long)]
        n: Option<u32>,
        /// Print every clause and fail when one does not hold.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value_t = 1024)]
        resolution: usize,
    },
    /// Brute-force secant caustic from all sample pairs.
    Oracle {
        input: PathBuf,
        #[arg(long = "n-samples", default_value_t = 2048)]
        n_samples: usize,
        /// Parallelism tolerance; defaults to 4π/N.
        #[arg(long)]
        tol_par: Option<f64>,
        /// Compare against the traced caustic and fail above the bound.
        #[arg(long)]
        compare: bool,
        /// Cloud CSV path.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
        resolution: usize,
    },
}

enum Failure {
    Input(String),
    NonGeneric(String),
    Checks(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Checks(_) => 1,
            Failure::Input(_) => 2,
            Failure::NonGeneric(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::NonGeneric(m) | Failure::Checks(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonRegular { .. } | Error::InvalidInput(_) => Failure::Input(e.to_string()),
            Error::NotARosette { .. } | Error::DegenerateExtremum { .. } | Error::NonUnique { .. } | Error::BasePointInflexion => {
                Failure::NonGeneric(e.to_string())
            }
            _ => Failure::Checks(e.to_string()),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::Input(format!("{}: {e}", path.display()))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    output::write_atomic(path, bytes).map_err(|e| Failure::Checks(format!("cannot write {}: {e}", path.display())))
}

fn hash_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

fn load_curve(path: &Path) -> Result<(CurveSpec, PlanarCurve, String), Failure> {
    let bytes = std::fs::read(path).map_err(|e| io_failure(path, e))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| Failure::Input(format!("{}: not UTF-8", path.display())))?;
    let spec = CurveSpec::from_json(&text)?;
    let curve = spec.build()?;
    Ok((spec, curve, hash_hex(&bytes)))
}

fn curve_layer(curve: &PlanarCurve) -> Layer {
    let pts = curve.sample(2048).into_iter().map(|p| p.position).collect();
    Layer { points: pts, closed: true, color: "#000000", width: 0.002 }
}

fn cmd_analyze(input: &Path, resolution: usize, out: Option<&Path>, csv: Option<&Path>, svg: Option<&Path>) -> Result<(), Failure> {
    let (_, curve, hash) = load_curve(input)?;
    if resolution < 8 {
        return Err(Failure::Input("--resolution must be at least 8".into()));
    }
    let an = analyze(&curve, resolution)?;
    let mut report = an.report()?;
    report.tool_version = env!("CARGO_PKG_VERSION").to_string();
    report.input_hash = Some(hash);
    let json = output::to_json(&report).map_err(|e| Failure::Checks(e.to_string()))?;
    if let Some(dir) = csv {
        std::fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))?;
        for b in &an.branches {
            let bytes = output::branch_csv(b).map_err(|e| Failure::Checks(e.to_string()))?;
            write_file(&dir.join(format!("branch_{:03}.csv", b.id)), &bytes)?;
        }
    }
    if let Some(path) = svg {
        let mut layers = vec![curve_layer(an.curve())];
        for (i, b) in an.branches.iter().enumerate() {
            layers.push(Layer { points: b.polyline(), closed: false, color: PALETTE[i % PALETTE.len()], width: 0.003 });
        }
        let cusps: Vec<Vec2> = an.branches.iter().flat_map(|b| b.cusps.iter().map(|c| c.point)).collect();
        write_file(path, output::svg(&layers, &cusps).as_bytes())?;
    }
    match out {
        Some(path) => {
            write_file(path, &json)?;
            for b in &report.branches {
                println!(
                    "branch {}: cusps {} inflexions {} rotation {} origin passes {} length {:.12}",
                    b.id, b.cusps, b.inflexions, b.rotation_number, b.origin_passes, b.length
                );
            }
        }
        None => print!("{}", String::from_utf8_lossy(&json)),
    }
    let failed: Vec<&str> = report.checks.iter().filter(|c| !c.pass && !c.warning).map(|c| c.name.as_str()).collect();
    for c in report.checks.iter().filter(|c| !c.pass && c.warning) {
        eprintln!("warning: {} ({})", c.name, c.detail);
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Checks(format!("failed checks: {}", failed.join(", "))))
    }
}

fn rosette_svg(p: &TrigSeries, report: &RosetteReport) -> String {
    let period = p.period();
    let m = 4096;
    let sample = |q: &TrigSeries| (0..m).map(|i| hedgehog_point(q, period * i as f64 / m as f64)).collect::<Vec<_>>();
    let mut layers = vec![Layer { points: sample(p), closed: true, color: "#000000", width: 0.002 }];
    let forms = secant_caustic::rosette::branch_forms(p).unwrap_or_default();
    let mut cusps = Vec::new();
    for (i, f) in forms.iter().enumerate() {
        layers.push(Layer { points: sample(&f.support), closed: true, color: PALETTE[i % PALETTE.len()], width: 0.003 });
        cusps.extend(f.zeros.iter().map(|&z| hedgehog_point(&f.support, z)));
    }
    debug_assert_eq!(forms.len(), report.branches.len());
    output::svg(&layers, &cusps)
}

fn cmd_rosette(
    input: Option<&Path>,
    support_text: Option<&str>,
    n: Option<u32>,
    verify: bool,
    out: Option<&Path>,
    svg: Option<&Path>,
    resolution: usize,
) -> Result<(), Failure> {
    let (p, hash) = match (input, support_text) {
        (Some(path), _) => {
            let (spec, _, hash) = load_curve(path)?;
            match spec {
                CurveSpec::SupportFourier { n, a0, cos, sin } => (TrigSeries::from_terms(n, a0, &cos, &sin), hash),
                _ => return Err(Failure::Input("rosette input must be of kind support_fourier".into())),
            }
        }
        (None, Some(text)) => {
            let n = n.ok_or_else(|| Failure::Input("--support requires --n".into()))?;
            let p = support::parse_support(text, n).map_err(Failure::Input)?;
            (p, hash_hex(format!("{text}|n={n}").as_bytes()))
        }
        (None, None) => return Err(Failure::Input("give an input file or --support".into())),
    };
    let report = verify_rosette_theorem(&p, resolution)?;
    let mut value = serde_json::to_value(&report).map_err(|e| Failure::Checks(e.to_string()))?;
    if let Some(obj) = value.as_object_mut() {
        obj.insert("tool_version".into(), env!("CARGO_PKG_VERSION").into());
        obj.insert("input_hash".into(), hash.into());
    }
    let json = output::to_json(&value).map_err(|e| Failure::Checks(e.to_string()))?;
    if let Some(path) = svg {
        write_file(path, rosette_svg(&p, &report).as_bytes())?;
    }
    match out {
        Some(path) => write_file(path, &json)?,
        None if !verify => print!("{}", String::from_utf8_lossy(&json)),
        None => {}
    }
    if verify {
        for c in &report.clauses {
            println!("{} {} (residual {:e}) {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.residual, c.detail);
        }
        println!("branches {} total cusps {}", report.branches.len(), report.total_cusps);
        if !report.pass {
            return Err(Failure::Checks("rosette clauses failed".into()));
        }
    }
    Ok(())
}

fn cmd_oracle(
    input: &Path,
    n_samples: usize,
    tol_par: Option<f64>,
    compare: bool,
    out: Option<&Path>,
    resolution: usize,
) -> Result<(), Failure> {
    if n_samples < MIN_SAMPLES {
        return Err(Failure::Input(format!("--n-samples must be at least {MIN_SAMPLES}")));
    }
    let (_, curve, _) = load_curve(input)?;
    let tol = tol_par.unwrap_or_else(|| default_tol_par(n_samples));
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Failure::Input("--tol-par must be positive".into()));
    }
    let cloud = brute_secant_cloud(&curve, n_samples, tol)?;
    if let Some(path) = out {
        let bytes = output::cloud_csv(&cloud).map_err(|e| Failure::Checks(e.to_string()))?;
        write_file(path, &bytes)?;
    }
    let mut summary = serde_json::json!({
        "n_samples": n_samples,
        "tol_par": tol,
        "points": cloud.len(),
    });
    let mut result = Ok(());
    if compare {
        let an = analyze(&curve, resolution)?;
        let diameter = an.curve().diameter();
        let d = hausdorff_points(&an.pooled_points(), &cloud.points)?;
        let bound = oracle_bound(diameter, n_samples);
        let pass = d < bound;
        summary["hausdorff"] = d.into();
        summary["relative"] = (d / diameter).into();
        summary["bound"] = bound.into();
        summary["pass"] = pass.into();
        if !pass {
            result = Err(Failure::Checks(format!("Hausdorff distance {d:e} exceeds bound {bound:e}")));
        }
    }
    print!("{}", String::from_utf8_lossy(&output::to_json(&summary).map_err(|e| Failure::Checks(e.to_string()))?));
    result
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze { input, resolution, out, csv, svg } => {
            cmd_analyze(input, *resolution, out.as_deref(), csv.as_deref(), svg.as_deref())
        }
        Command::Rosette { input, support, n, verify, out, svg, resolution } => {
            cmd_rosette(input.as_deref(), support.as_deref(), *n, *verify, out.as_deref(), svg.as_deref(), *resolution)
        }
        Command::Oracle { input, n_samples, tol_par, compare, out, resolution } => {
            cmd_oracle(input, *n_samples, *tol_par, *compare, out.as_deref(), *resolution)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
