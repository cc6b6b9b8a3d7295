//! Command-line front end: orbifold classification, mesh spectra, the
//! volume bound chain, and the discriminant scan, with machine-readable
//! output and stable exit codes.
//!
//! Exit codes: 0 success (and any requested check passed); 1 a check ran
//! and failed; 2 usage or validation error; 3 computational failure
//! (eigensolver non-convergence, series budget, I/O).

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{error::ErrorKind, Args, Parser, Subcommand, ValueEnum};

use maxrefl_core::arith::{hatcher_check, scan, ScanConfig, ScanReport, HATCHER_DISCRIMINANTS};
use maxrefl_core::constants::{
    LAMBDA1_CONGRUENCE_LOWER, REFLECTION_INDEX_BOUND, SPHERE3_VOLUME, VOLUME_UPPER_BOUND,
};
use maxrefl_core::error::Error;
use maxrefl_core::inequality::volume_bound_chain;
use maxrefl_core::mesh::{build_icosphere, TriangleMesh};
use maxrefl_core::orbifold::{
    euler_characteristic, group_order, parse_signature, reflection_supergroup, SignatureClass,
};
use maxrefl_core::spectrum::spectrum_record;

mod scan_io;

#[derive(Parser)]
#[command(
    name = "maxrefl",
    version,
    about = "Volume bounds and discriminant scans for arithmetic Kleinian maximal reflection groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a spherical orbifold symbol and show its reflection
    /// supergroup with the covering chain
    Orbifold(OrbifoldArgs),
    /// Low Laplace-Beltrami spectrum of an icosphere or an imported mesh,
    /// with the sphere-saturation slack
    Spectrum(SpectrumArgs),
    /// Evaluate the volume bound chain (defaults reproduce 64*pi^2)
    Chain(ChainArgs),
    /// Scan fundamental discriminants against the covolume cutoff
    Scan(ScanArgs),
    /// Scan [-84, -3] and check the sixteen known reflective Bianchi
    /// discriminants against the cutoff
    VerifyHatcher(VerifyHatcherArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Args)]
struct OrbifoldArgs {
    /// Symbol text, e.g. "*235", "3x", "2*3", "(12)(12)"
    #[arg(long)]
    symbol: String,
    /// table or json
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Icosphere subdivision depth
    #[arg(long, default_value_t = 5)]
    depth: u32,
    /// Read the mesh from this file instead of building an icosphere
    #[arg(long, conflicts_with = "depth")]
    mesh_in: Option<PathBuf>,
    /// Export the mesh that was analyzed
    #[arg(long)]
    mesh_out: Option<PathBuf>,
    /// Number of eigenvalues (constant mode included)
    #[arg(long, default_value_t = 6)]
    k: usize,
    /// Eigensolver residual tolerance
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// table or json
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ChainArgs {
    /// Spectral gap lower bound
    #[arg(long, default_value_t = LAMBDA1_CONGRUENCE_LOWER)]
    lambda_min: f64,
    /// Volume of the unit 3-sphere fed into the chain
    #[arg(long, default_value_t = SPHERE3_VOLUME)]
    vc_sphere3: f64,
    /// Reflection supergroup index bound
    #[arg(long, default_value_t = REFLECTION_INDEX_BOUND)]
    index_bound: u64,
    /// table or json
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct ScanArgs {
    /// Most negative discriminant to scan
    #[arg(long, default_value_t = -100_000)]
    min_disc: i64,
    /// Least negative discriminant to scan
    #[arg(long, default_value_t = -3)]
    max_disc: i64,
    /// Covolume cutoff (default 64*pi^2)
    #[arg(long, default_value_t = VOLUME_UPPER_BOUND)]
    cutoff: f64,
    /// L-series tail tolerance
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Worker threads
    #[arg(long, default_value_t = 1)]
    parallel: usize,
    /// csv, json or table
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write the report here instead of stdout (required for checkpointed
    /// runs, see MAXREFL_CHECKPOINT_DIR)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyHatcherArgs {
    /// L-series tail tolerance
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Covolume cutoff (default 64*pi^2)
    #[arg(long, default_value_t = VOLUME_UPPER_BOUND)]
    cutoff: f64,
    /// table or json
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                std::process::exit(0);
            }
            let _ = e.print();
            std::process::exit(2);
        }
    };
    let outcome = match cli.command {
        Command::Orbifold(args) => cmd_orbifold(args),
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Chain(args) => cmd_chain(args),
        Command::Scan(args) => cmd_scan(args),
        Command::VerifyHatcher(args) => cmd_verify_hatcher(args),
    };
    let code = match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    };
    std::process::exit(code);
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::InvalidSignature(_) | Error::Domain(_) | Error::Mesh(_) => 2,
        Error::CheckFailed(_) => 1,
        Error::NoConvergence(_) | Error::Budget(_) | Error::Inconsistent(_) | Error::Io(_) => 3,
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, Error> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Inconsistent(format!("serialization: {e}")))?;
    s.push('\n');
    Ok(s)
}

#[derive(serde::Serialize)]
struct OrbifoldReport {
    symbol: String,
    class: String,
    chi: String,
    order: u64,
    reflection_generated: bool,
    supergroup: String,
    index: u64,
    chain: Vec<ChainStep>,
}

#[derive(serde::Serialize)]
struct ChainStep {
    symbol: String,
    degree: u64,
}

fn class_label(class: SignatureClass) -> &'static str {
    match class {
        SignatureClass::Trivial => "trivial",
        SignatureClass::Mirror => "reflection (mirror with corners)",
        SignatureClass::CyclicCones => "cyclic rotations (p,p)",
        SignatureClass::TriangleCones => "triangle rotations (p,q,r)",
        SignatureClass::ConeMirror => "cone over mirror (p*)",
        SignatureClass::ConeMirrorCorner => "cone with corner (2*m)",
        SignatureClass::PyritohedralLike => "cone with corner (3*2)",
        SignatureClass::Crosscap => "cross-cap family (nx)",
    }
}

fn cmd_orbifold(args: OrbifoldArgs) -> Result<i32, Error> {
    let sig = parse_signature(&args.symbol)?;
    let info = group_order(&sig)?;
    let result = reflection_supergroup(&sig);
    let report = OrbifoldReport {
        symbol: sig.to_string(),
        class: class_label(sig.class()).to_string(),
        chi: euler_characteristic(&sig).to_string(),
        order: info.order,
        reflection_generated: info.reflection_generated,
        supergroup: result.supergroup.to_string(),
        index: result.index,
        chain: result
            .chain
            .iter()
            .map(|(s, d)| ChainStep {
                symbol: s.to_string(),
                degree: *d,
            })
            .collect(),
    };
    let text = match args.format {
        Format::Json => to_json(&report)?,
        Format::Csv => {
            return Err(Error::Domain(
                "csv is not available for orbifold reports; use table or json".into(),
            ))
        }
        Format::Table => {
            let mut chain_text = report.symbol.clone();
            for step in &report.chain {
                chain_text.push_str(&format!(" -({}:1)-> {}", step.degree, step.symbol));
            }
            format!(
                "symbol:                {}\n\
                 class:                 {}\n\
                 euler characteristic:  {}\n\
                 group order:           {}\n\
                 reflection generated:  {}\n\
                 supergroup:            {}\n\
                 index:                 {}\n\
                 cover chain:           {}\n",
                report.symbol,
                report.class,
                report.chi,
                report.order,
                report.reflection_generated,
                report.supergroup,
                report.index,
                chain_text
            )
        }
    };
    emit(&text, args.out.as_ref())?;
    Ok(0)
}

fn cmd_spectrum(args: SpectrumArgs) -> Result<i32, Error> {
    let (mesh, depth) = match &args.mesh_in {
        Some(path) => {
            let file = fs::File::open(path)?;
            (
                TriangleMesh::read_text(std::io::BufReader::new(file))?,
                None,
            )
        }
        None => (build_icosphere(args.depth)?, Some(args.depth)),
    };
    if let Some(path) = &args.mesh_out {
        let mut buf = Vec::new();
        mesh.write_text(&mut buf)?;
        fs::write(path, buf)?;
    }
    let record = spectrum_record(&mesh, depth, args.k, args.tol)?;
    let text = match args.format {
        Format::Json => to_json(&record)?,
        Format::Csv => {
            return Err(Error::Domain(
                "csv is not available for spectral reports; use table or json".into(),
            ))
        }
        Format::Table => {
            let eigen_list = record
                .eigenvalues
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(", ");
            format!(
                "depth:          {}\n\
                 n_vertices:     {}\n\
                 area:           {}\n\
                 lambda1:        {}\n\
                 multiplicity1:  {}\n\
                 slack:          {}\n\
                 eigenvalues:    {}\n",
                record
                    .depth
                    .map(|d| d.to_string())
                    .unwrap_or_else(|| "imported".to_string()),
                record.n_vertices,
                record.area,
                record.lambda1,
                record.multiplicity1,
                record.slack,
                eigen_list
            )
        }
    };
    emit(&text, args.out.as_ref())?;
    Ok(0)
}

fn cmd_chain(args: ChainArgs) -> Result<i32, Error> {
    let chain = volume_bound_chain(args.lambda_min, args.vc_sphere3, args.index_bound)?;
    let text = match args.format {
        Format::Json => to_json(&chain)?,
        Format::Csv => {
            return Err(Error::Domain(
                "csv is not available for the bound chain; use table or json".into(),
            ))
        }
        Format::Table => format!(
            "lambda_min:   {}\n\
             vc_sphere3:   {}\n\
             index_bound:  {}\n\
             vc_bound:     {}\n\
             vol_bound:    {}\n",
            chain.lambda_min, chain.vc_sphere3, chain.index_bound, chain.vc_bound, chain.vol_bound
        ),
    };
    emit(&text, args.out.as_ref())?;
    Ok(0)
}

fn scan_table(report: &ScanReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "range: [{}, {}]  cutoff: {}  crude bound: {}\nscanned: {}  passing: {}\n",
        report.d_min,
        report.d_max,
        report.cutoff,
        report.crude_bound,
        report.n_scanned,
        report.n_passing
    ));
    out.push_str(&format!(
        "{:>9} {:>6} {:>2} {:>17} {:>12} {:>17} {:>17} {:>6} {:>6}\n",
        "d", "h", "w", "L2", "L2_err", "zeta_k2", "borel_lower", "exact", "crude"
    ));
    for r in &report.records {
        out.push_str(&format!(
            "{:>9} {:>6} {:>2} {:>17.10e} {:>12.3e} {:>17.10e} {:>17.10e} {:>6} {:>6}\n",
            r.d, r.h, r.w, r.l2, r.l2_error, r.zeta2, r.borel_lower, r.passes_exact, r.passes_crude
        ));
    }
    out
}

fn cmd_scan(args: ScanArgs) -> Result<i32, Error> {
    let mut config = ScanConfig {
        d_min: args.min_disc,
        d_max: args.max_disc,
        cutoff: args.cutoff,
        tol: args.tol,
        threads: args.parallel,
        ..ScanConfig::default()
    };
    // Checkpointed incremental mode: CSV to a file with the checkpoint
    // directory set in the environment.
    if let Some(ckpt) = scan_io::checkpoint_setup(&args.out, args.format == Format::Csv)? {
        return scan_io::run_checkpointed(&mut config, ckpt);
    }
    let report = scan(&config)?;
    let text = match args.format {
        Format::Csv => maxrefl_core::arith::report_to_csv(&report),
        Format::Json => to_json(&report)?,
        Format::Table => scan_table(&report),
    };
    emit(&text, args.out.as_ref())?;
    Ok(0)
}

#[derive(serde::Serialize)]
struct HatcherReport {
    cutoff: f64,
    tol: f64,
    all_passing: bool,
    entries: Vec<HatcherEntry>,
}

#[derive(serde::Serialize)]
struct HatcherEntry {
    d: i64,
    h: u64,
    borel_lower: f64,
    passes_exact: bool,
}

fn cmd_verify_hatcher(args: VerifyHatcherArgs) -> Result<i32, Error> {
    let config = ScanConfig {
        d_min: -84,
        d_max: -3,
        cutoff: args.cutoff,
        tol: args.tol,
        ..ScanConfig::default()
    };
    let report = scan(&config)?;
    let ok = hatcher_check(&report);
    let entries: Vec<HatcherEntry> = HATCHER_DISCRIMINANTS
        .iter()
        .map(|&d| match report.records.iter().find(|r| r.d == d) {
            Some(r) => HatcherEntry {
                d,
                h: r.h,
                borel_lower: r.borel_lower,
                passes_exact: r.passes_exact,
            },
            // Unreachable for the fixed [-84, -3] window, but keep the row
            // visible rather than panicking.
            None => HatcherEntry {
                d,
                h: 0,
                borel_lower: f64::NAN,
                passes_exact: false,
            },
        })
        .collect();
    let hatcher = HatcherReport {
        cutoff: args.cutoff,
        tol: args.tol,
        all_passing: ok,
        entries,
    };
    let text = match args.format {
        Format::Json => to_json(&hatcher)?,
        Format::Csv => {
            return Err(Error::Domain(
                "csv is not available for the Hatcher check; use table or json".into(),
            ))
        }
        Format::Table => {
            let mut t = format!(
                "cutoff: {}  tol: {:e}\n{:>9} {:>6} {:>17} {:>7}\n",
                hatcher.cutoff, hatcher.tol, "d", "h", "borel_lower", "status"
            );
            for e in &hatcher.entries {
                t.push_str(&format!(
                    "{:>9} {:>6} {:>17.10e} {:>7}\n",
                    e.d,
                    e.h,
                    e.borel_lower,
                    if e.passes_exact { "PASS" } else { "FAIL" }
                ));
            }
            t.push_str(&format!(
                "hatcher check: {} ({}/16 passing)\n",
                if hatcher.all_passing { "PASS" } else { "FAIL" },
                hatcher.entries.iter().filter(|e| e.passes_exact).count()
            ));
            t
        }
    };
    emit(&text, args.out.as_ref())?;
    Ok(if ok { 0 } else { 1 })
}
