//! Command-line surface for the univalence toolkit.
//!
//! Every command prints a JSON run report to stdout (human-oriented notes
//! go to stderr). Exit codes: 0 certified / success, 10 heuristically
//! certified, 20 not certified (or failing demo); 2 parse errors, 3 domain
//! errors, 4 I/O errors.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use num_complex::Complex64;

use univalence_cli::plot;
use univalence_cli::report::{Provenance, ProvenancedValue, ResultEntry, RunReport};
use univalence::{
    certify_linear_disk, certify_perturbation, check_nww, closed_form_k,
    enclosing_disk_parameter, estimate_k, make_grid, pairwise_scan, parse_complex_list,
    parse_fn_spec, suite, taylor_sum_criterion, zeta, zeta_criterion, AnalyticFn, CertStatus,
    Certificate, Disk, GridScheme, KEstimate, ParseError,
};

const EXIT_CERTIFIED: u8 = 0;
const EXIT_HEURISTIC: u8 = 10;
const EXIT_NOT_CERTIFIED: u8 = 20;
const EXIT_PARSE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Parser)]
#[command(
    name = "univalence",
    version,
    about = "Injectivity certification for analytic functions on disks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate the injectivity constant K(f, D) on a disk
    K {
        /// Function spec: poly:<c0>,<c1>,... | linear:<c>[,<d>] |
        /// builtin:halfplane | builtin:halfplane2
        #[arg(long = "fn")]
        function: String,
        #[arg(long, default_value_t = 0.995)]
        radius: f64,
        #[arg(long, default_value_t = 48)]
        rings: usize,
        #[arg(long, default_value_t = 48)]
        spokes: usize,
        #[arg(long, default_value_t = 60)]
        refine: usize,
    },
    /// Certify f against a reference g: sup |f' - g'| <= K(g, D)
    Certify {
        #[arg(long = "fn")]
        function: String,
        /// Reference function spec (asserted injective when --k is given)
        #[arg(long = "ref")]
        reference: String,
        #[arg(long, default_value_t = 0.995)]
        radius: f64,
        /// Use this K(g, D) instead of deriving one
        #[arg(long)]
        k: Option<f64>,
        /// Oracle scan resolution
        #[arg(long, default_value_t = 48)]
        oracle_rings: usize,
        #[arg(long, default_value_t = 48)]
        oracle_spokes: usize,
    },
    /// Check Re f' > 0 on a sampled disk and derive the enclosing disk
    Nww {
        #[arg(long = "fn")]
        function: String,
        #[arg(long, default_value_t = 0.995)]
        radius: f64,
        #[arg(long, default_value_t = 24)]
        rings: usize,
        #[arg(long, default_value_t = 48)]
        spokes: usize,
    },
    /// Coefficient criteria for power series (sum and zeta tail bounds)
    Taylor {
        /// Perturbed coefficients: inline list or @file
        #[arg(long)]
        a: String,
        /// Reference coefficients: inline list or @file
        #[arg(long)]
        b: String,
        /// K of the reference function on the unit disk
        #[arg(long)]
        k: f64,
        /// Exponent for the per-coefficient tail bound
        #[arg(long)]
        p: Option<f64>,
    },
    /// Render the domain grid and its image as a two-panel SVG
    Plot {
        #[arg(long = "fn")]
        function: String,
        #[arg(long, default_value_t = 0.995)]
        radius: f64,
        #[arg(long, default_value_t = 8)]
        rings: usize,
        #[arg(long, default_value_t = 16)]
        spokes: usize,
        /// Samples per curve
        #[arg(long, default_value_t = 160)]
        samples: usize,
        #[arg(long, default_value_t = 960)]
        width: u32,
        #[arg(long, default_value_t = 480)]
        height: u32,
        /// Output path for the SVG
        #[arg(long)]
        out: std::path::PathBuf,
    },
    /// Run the built-in validation suite and print a pass/fail table
    Demo,
}

fn millis(start: Instant) -> f64 {
    start.elapsed().as_micros() as f64 / 1000.0
}

fn parse_spec_or_exit(label: &str, spec: &str) -> Result<AnalyticFn, u8> {
    parse_fn_spec(spec).map_err(|e| {
        eprintln!("error: invalid {label} spec `{spec}`: {e}");
        EXIT_PARSE
    })
}

fn disk_or_exit(radius: f64) -> Result<Disk, u8> {
    Disk::try_new(radius).map_err(|_| {
        eprintln!("error: radius must lie in (0, 1], got {radius}");
        EXIT_DOMAIN
    })
}

/// Inline list or @file of complex literals separated by commas or
/// newlines.
fn parse_coeff_arg(label: &str, arg: &str) -> Result<Vec<Complex64>, u8> {
    let (text, from_file) = match arg.strip_prefix('@') {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(contents) => (contents, true),
            Err(e) => {
                eprintln!("error: cannot read coefficient file `{path}`: {e}");
                return Err(EXIT_IO);
            }
        },
        None => (arg.to_string(), false),
    };
    let mut coeffs = Vec::new();
    let mut offset = 0;
    for segment in text.split([',', '\n', '\r']) {
        if !segment.trim().is_empty() {
            let parsed = parse_complex_list(segment.trim(), offset).map_err(|e: ParseError| {
                let source = if from_file { "file" } else { "list" };
                eprintln!("error: invalid --{label} coefficient {source}: {e}");
                EXIT_PARSE
            })?;
            coeffs.extend(parsed);
        }
        offset += segment.len() + 1;
    }
    if coeffs.is_empty() {
        eprintln!("error: --{label} holds no coefficients");
        return Err(EXIT_PARSE);
    }
    Ok(coeffs)
}

fn domain_error(e: univalence::Error) -> u8 {
    eprintln!("error: {e}");
    EXIT_DOMAIN
}

fn status_exit(status: CertStatus) -> u8 {
    match status {
        CertStatus::Certified => EXIT_CERTIFIED,
        CertStatus::HeuristicCertified => EXIT_HEURISTIC,
        CertStatus::NotCertified => EXIT_NOT_CERTIFIED,
    }
}

fn worst_exit(certs: &[&Certificate]) -> u8 {
    certs
        .iter()
        .map(|c| status_exit(c.status))
        .max()
        .unwrap_or(EXIT_CERTIFIED)
}

fn emit(report: &RunReport) {
    println!("{}", report.to_json());
}

fn cmd_k(function: &str, radius: f64, rings: usize, spokes: usize, refine: usize) -> Result<u8, u8> {
    let f = parse_spec_or_exit("function", function)?;
    let disk = disk_or_exit(radius)?;
    let mut report = RunReport::new("k");
    report.input("fn", function);
    report.input("radius", radius);
    report.input("rings", rings as u64);
    report.input("spokes", spokes as u64);
    report.input("refine", refine as u64);

    let start = Instant::now();
    let grid_est = estimate_k(&f, disk, rings, spokes, refine).map_err(domain_error)?;
    report.timing("estimate", millis(start));

    let closed = closed_form_k(&f, disk);
    let disagreement = closed
        .map(|cf| (cf - grid_est.value).abs() > 1e-4)
        .unwrap_or(false);
    if disagreement {
        report.warnings.push(format!(
            "grid estimate {} disagrees with closed form {} by more than 1e-4",
            grid_est.value,
            closed.unwrap()
        ));
    }
    let headline = match KEstimate::from_closed_form(&f, disk) {
        Some(exact) => ProvenancedValue::new(exact.value, Provenance::ClosedForm),
        None => ProvenancedValue::new(grid_est.value, Provenance::Sampled),
    };
    report.results.push(ResultEntry::KEstimate {
        headline,
        grid: grid_est,
        closed_form: closed.map(|v| ProvenancedValue::new(v, Provenance::ClosedForm)),
        disagreement,
    });
    emit(&report);
    Ok(EXIT_CERTIFIED)
}

fn cmd_certify(
    function: &str,
    reference: &str,
    radius: f64,
    k: Option<f64>,
    oracle_rings: usize,
    oracle_spokes: usize,
) -> Result<u8, u8> {
    let f = parse_spec_or_exit("function", function)?;
    let g = parse_spec_or_exit("reference", reference)?;
    let disk = disk_or_exit(radius)?;
    let mut report = RunReport::new("certify");
    report.input("fn", function);
    report.input("ref", reference);
    report.input("radius", radius);
    if let Some(k) = k {
        report.input("k", k);
    }

    let start = Instant::now();
    let cert = certify_perturbation(&f, &g, disk, k).map_err(domain_error)?;
    report.timing("certify", millis(start));

    let start = Instant::now();
    let scan = pairwise_scan(&f, disk, oracle_rings, oracle_spokes).map_err(domain_error)?;
    report.timing("oracle", millis(start));

    if cert.status != CertStatus::NotCertified && scan.found {
        report.warnings.push(
            "certificate and oracle disagree: collision found under a nonnegative margin"
                .to_string(),
        );
    }
    let exit = status_exit(cert.status);
    report.results.push(ResultEntry::Certificate { certificate: cert });
    report.results.push(ResultEntry::Collision { report: scan });
    emit(&report);
    Ok(exit)
}

fn cmd_nww(function: &str, radius: f64, rings: usize, spokes: usize) -> Result<u8, u8> {
    let f = parse_spec_or_exit("function", function)?;
    let disk = disk_or_exit(radius)?;
    if rings < 1 || spokes < 1 {
        eprintln!("error: grid needs rings >= 1 and spokes >= 1");
        return Err(EXIT_DOMAIN);
    }
    let mut report = RunReport::new("nww");
    report.input("fn", function);
    report.input("radius", radius);
    report.input("rings", rings as u64);
    report.input("spokes", spokes as u64);

    let grid = make_grid(disk, GridScheme::Polar { rings, spokes });
    let start = Instant::now();
    let cert = check_nww(&f, disk, &grid).map_err(domain_error)?;
    report.timing("positivity", millis(start));
    let exit = status_exit(cert.status);
    let passed = cert.status != CertStatus::NotCertified;
    report.results.push(ResultEntry::Certificate { certificate: cert });

    if passed {
        let start = Instant::now();
        let c = enclosing_disk_parameter(&f, disk, &grid).map_err(domain_error)?;
        let disk_cert = certify_linear_disk(&f, disk, c).map_err(domain_error)?;
        report.timing("enclosing_disk", millis(start));
        report.results.push(ResultEntry::EnclosingDisk {
            c: ProvenancedValue::new(c, Provenance::Sampled),
        });
        report
            .results
            .push(ResultEntry::Certificate { certificate: disk_cert });
    }
    emit(&report);
    Ok(exit)
}

fn cmd_taylor(a: &str, b: &str, k: f64, p: Option<f64>) -> Result<u8, u8> {
    let coeffs_a = parse_coeff_arg("a", a)?;
    let coeffs_b = parse_coeff_arg("b", b)?;
    let mut report = RunReport::new("taylor");
    report.input("a", a);
    report.input("b", b);
    report.input("k", k);
    if let Some(p) = p {
        report.input("p", p);
    }

    let start = Instant::now();
    let sum_cert = taylor_sum_criterion(&coeffs_a, &coeffs_b, k).map_err(domain_error)?;
    report.timing("sum_criterion", millis(start));
    let mut certs = vec![sum_cert];

    if let Some(p) = p {
        let start = Instant::now();
        let zp = zeta(p).map_err(domain_error)?;
        let tail_cert = zeta_criterion(&coeffs_a, &coeffs_b, k, p).map_err(domain_error)?;
        report.timing("tail_criterion", millis(start));
        report.results.push(ResultEntry::Zeta {
            p,
            value: ProvenancedValue::new(zp, Provenance::ClosedForm),
        });
        certs.push(tail_cert);
    }
    let exit = worst_exit(&certs.iter().collect::<Vec<_>>());
    for certificate in certs {
        report.results.push(ResultEntry::Certificate { certificate });
    }
    emit(&report);
    Ok(exit)
}

#[allow(clippy::too_many_arguments)]
fn cmd_plot(
    function: &str,
    radius: f64,
    rings: usize,
    spokes: usize,
    samples: usize,
    width: u32,
    height: u32,
    out: &std::path::Path,
) -> Result<u8, u8> {
    let f = parse_spec_or_exit("function", function)?;
    let disk = disk_or_exit(radius)?;
    let spec = plot::PlotSpec {
        rings,
        spokes,
        samples,
        width,
        height,
    };
    if let Err(msg) = spec.validate() {
        eprintln!("error: {msg}");
        return Err(EXIT_DOMAIN);
    }
    let mut report = RunReport::new("plot");
    report.input("fn", function);
    report.input("radius", radius);
    report.input("out", out.display().to_string());

    let start = Instant::now();
    let svg = plot::render(&f, disk, &spec).map_err(domain_error)?;
    report.timing("render", millis(start));
    std::fs::write(out, svg).map_err(|e| {
        eprintln!("error: cannot write `{}`: {e}", out.display());
        EXIT_IO
    })?;

    // A quick collision scan accompanies the picture: visible grid overlap
    // in the image panel should coincide with a reported collision.
    let start = Instant::now();
    let scan = pairwise_scan(&f, disk, 32, 32).map_err(domain_error)?;
    report.timing("oracle", millis(start));

    report.results.push(ResultEntry::Plot {
        path: out.display().to_string(),
        rings,
        spokes,
        width,
        height,
    });
    report.results.push(ResultEntry::Collision { report: scan });
    emit(&report);
    Ok(EXIT_CERTIFIED)
}

fn cmd_demo() -> Result<u8, u8> {
    let mut report = RunReport::new("demo");
    let start = Instant::now();
    let rows = suite::run_all();
    report.timing("suite", millis(start));
    let all_passed = rows.iter().all(|r| r.passed);
    for row in &rows {
        report.timing(&format!("suite.{}", row.name), row.millis as f64);
    }
    eprintln!("{:-<78}", "");
    for row in &rows {
        eprintln!(
            "{:<5} {:<28} {:>8} ms  {}",
            if row.passed { "PASS" } else { "FAIL" },
            row.name,
            row.millis,
            row.detail
        );
    }
    eprintln!("{:-<78}", "");
    report.results.push(ResultEntry::Demo { all_passed, rows });
    emit(&report);
    Ok(if all_passed { EXIT_CERTIFIED } else { EXIT_NOT_CERTIFIED })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::K {
            function,
            radius,
            rings,
            spokes,
            refine,
        } => cmd_k(function, *radius, *rings, *spokes, *refine),
        Command::Certify {
            function,
            reference,
            radius,
            k,
            oracle_rings,
            oracle_spokes,
        } => cmd_certify(function, reference, *radius, *k, *oracle_rings, *oracle_spokes),
        Command::Nww {
            function,
            radius,
            rings,
            spokes,
        } => cmd_nww(function, *radius, *rings, *spokes),
        Command::Taylor { a, b, k, p } => cmd_taylor(a, b, *k, *p),
        Command::Plot {
            function,
            radius,
            rings,
            spokes,
            samples,
            width,
            height,
            out,
        } => cmd_plot(function, *radius, *rings, *spokes, *samples, *width, *height, out),
        Command::Demo => cmd_demo(),
    };
    ExitCode::from(outcome.unwrap_or_else(|code| code))
}
