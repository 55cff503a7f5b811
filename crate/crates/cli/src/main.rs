//! `geoextract`: proper colorings and residual covers of geometric
//! instances, with exact bounds for small ones.
//!
//! Exit codes: 0 success, 2 unreadable or malformed input (including class
//! mismatches), 3 size cap exceeded, 4 algorithm invariant violated,
//! 5 target point below the required depth.

mod render;
mod report;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use geoextract_core::axis2d::RayTypeProfile;
use geoextract_core::document::{parse_coloring, parse_instance, write_instance};
use geoextract_core::extraction::{
    exact_chromatic_capped, exact_extraction_number_capped, exact_min_cover_with, extract,
    CoverMethod, DEFAULT_CHROMATIC_CAP, DEFAULT_COVER_CAP,
};
use geoextract_core::generators::{generate, GeneratorKind, GeneratorSpec};
use geoextract_core::octants::{color_octants_detailed, DEFAULT_OCTANT_CAP};
use geoextract_core::oracle::{
    check_cover, check_proper_capped, CoverVerdict, Verdict as OracleVerdict, DEFAULT_ORACLE_CAP,
};
use geoextract_core::{color_instance, Coloring, Error, IndexSet, Instance, ObjectClass};

use report::{instance_digest, Payload, ProjectionFailure, Report, Timings, Verdict};

#[derive(Parser)]
#[command(name = "geoextract", version, about = "Colorings and residual covers of geometric hypergraphs")]
struct Cli {
    /// Write the result to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest instance the exponential searches accept.
    #[arg(long, global = true)]
    size_cap: Option<usize>,
    /// Seed for `gen --kind random`.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Proper coloring of the induced hypergraph.
    Color {
        input: PathBuf,
        /// Fail unless the instance has this class.
        #[arg(long)]
        class: Option<ObjectClass>,
    },
    /// Cover left after removing the heaviest color class.
    Extract {
        input: PathBuf,
        /// Coloring document to use instead of computing one.
        #[arg(long)]
        coloring: Option<PathBuf>,
    },
    /// Check a coloring for properness or an index set for coverage.
    Verify {
        input: PathBuf,
        #[arg(long, required_unless_present = "cover", conflicts_with = "cover")]
        coloring: Option<PathBuf>,
        /// Comma-separated object indices.
        #[arg(long, value_delimiter = ',')]
        cover: Option<Vec<usize>>,
    },
    /// Exact minimum cover, extraction number and chromatic number.
    Bounds { input: PathBuf },
    /// Generate an instance document.
    Gen {
        #[arg(long)]
        kind: GeneratorKind,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        class: Option<ObjectClass>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// SVG figure of an instance.
    Render {
        input: PathBuf,
        #[arg(long)]
        coloring: Option<PathBuf>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: io::Error },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Read { .. } => 2,
            CliError::Write { .. } => 1,
            CliError::Core(e) => match e {
                Error::SizeCap { .. } => 3,
                Error::AlgorithmInvariant { .. } | Error::NoFourColoring { .. } | Error::ImproperColoring { .. } => 4,
                Error::DepthPrecondition { .. } | Error::Uncoverable { .. } => 5,
                _ => 2,
            },
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes through a temporary file in the target directory so a failed run
/// never leaves a partial file behind.
fn write_atomic(path: &Path, contents: &str) -> CliResult<()> {
    let err = |source| CliError::Write {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(err)?;
    tmp.write_all(contents.as_bytes()).map_err(err)?;
    tmp.persist(path).map_err(|e| err(e.error))?;
    Ok(())
}

fn emit(out: Option<&Path>, contents: &str) -> CliResult<()> {
    match out {
        Some(path) => write_atomic(path, contents),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(contents.as_bytes())
                .map_err(|source| CliError::Write {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}

fn report_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1000.0
}

struct Loaded {
    instance: Instance,
    parse_ms: f64,
}

fn load(path: &Path) -> CliResult<Loaded> {
    let start = Instant::now();
    let instance = parse_instance(&read(path)?)?;
    Ok(Loaded {
        instance,
        parse_ms: ms(start),
    })
}

fn load_coloring(path: &Path) -> CliResult<Coloring> {
    Ok(parse_coloring(&read(path)?)?)
}

fn finish(command: &str, loaded: &Loaded, payload: Payload, start: Instant) -> Report {
    Report {
        command: command.to_string(),
        instance_digest: instance_digest(&loaded.instance),
        payload,
        timings: Timings {
            parse_ms: loaded.parse_ms,
            compute_ms: ms(start),
        },
    }
}

/// Checks a computed coloring against the oracle when the instance is small
/// enough; a monochromatic hyperedge is an invariant violation.
fn verify_computed(instance: &Instance, coloring: &Coloring) -> CliResult<Option<bool>> {
    if instance.len() > DEFAULT_ORACLE_CAP {
        return Ok(None);
    }
    match check_proper_capped(instance, coloring, DEFAULT_ORACLE_CAP)? {
        OracleVerdict::Proper => Ok(Some(true)),
        OracleVerdict::Monochromatic { edge, color, witness } => Err(Error::AlgorithmInvariant {
            message: format!("objects {edge:?} all received color {color}"),
            witness: Some(witness),
        }
        .into()),
    }
}

fn describe(instance: &Instance) -> CliResult<(String, Option<u32>)> {
    Ok(match instance.class() {
        ObjectClass::Intervals => ("key-interval chain".into(), Some(2)),
        ObjectClass::Segments => ("per-line interval coloring".into(), Some(4)),
        ObjectClass::Rays => {
            let kind = RayTypeProfile::of(&instance.rays()?).kind();
            let guarantee = if kind >= 2 { Some(kind as u32) } else { None };
            (format!("rays of type {kind}"), guarantee)
        }
        ObjectClass::Octants => ("octant projection".into(), Some(4)),
    })
}

fn cmd_color(cli: &Cli, input: &Path, class: Option<ObjectClass>) -> CliResult<String> {
    let loaded = load(input)?;
    let inst = &loaded.instance;
    if let Some(expected) = class {
        if expected != inst.class() {
            return Err(Error::ClassMismatch {
                expected,
                found: inst.class(),
            }
            .into());
        }
    }
    let start = Instant::now();
    let mut projection_failure = None;
    let coloring = if inst.class() == ObjectClass::Octants {
        let detailed = color_octants_detailed(inst, cli.size_cap.unwrap_or(DEFAULT_OCTANT_CAP))?;
        if let Some((edge, witness)) = detailed.projection_failure {
            eprintln!(
                "note: the projected coloring left octants {edge:?} monochromatic at {witness}; \
                 nondominated octants were recolored against their own hyperedges"
            );
            projection_failure = Some(ProjectionFailure { edge, witness });
        }
        detailed.coloring
    } else {
        color_instance(inst, cli.size_cap)?
    };
    let verified = verify_computed(inst, &coloring)?;
    let (colorer, guarantee) = describe(inst)?;
    if guarantee.is_none() {
        eprintln!("note: extraction number for single-orientation rays is not claimed");
    }
    let payload = Payload::Coloring {
        colors_used: coloring.used(),
        coloring,
        colorer,
        guarantee,
        verified,
        projection_failure,
    };
    Ok(report_json(&finish("color", &loaded, payload, start)))
}

fn cmd_extract(cli: &Cli, input: &Path, coloring: Option<&Path>) -> CliResult<String> {
    let loaded = load(input)?;
    let supplied = coloring.map(load_coloring).transpose()?;
    let start = Instant::now();
    let inst = &loaded.instance;
    let (coloring, source) = match supplied {
        Some(c) => (c, "supplied"),
        None => (color_instance(inst, cli.size_cap)?, "computed"),
    };
    let e = extract(inst, &coloring)?;
    let payload = Payload::Extraction {
        sol: e.sol.into_iter().collect(),
        extracted: e.extracted.into_iter().collect(),
        color: e.color,
        kappa: e.kappa,
        extracted_weight: e.extracted_weight,
        total_weight: e.total_weight,
        ratio: e.ratio,
        coloring_source: source.into(),
    };
    Ok(report_json(&finish("extract", &loaded, payload, start)))
}

fn cmd_verify(cli: &Cli, input: &Path, coloring: Option<&Path>, cover: Option<&[usize]>) -> CliResult<String> {
    let loaded = load(input)?;
    let coloring = coloring.map(load_coloring).transpose()?;
    let start = Instant::now();
    let inst = &loaded.instance;
    let verdict = match (coloring, cover) {
        (Some(c), _) => match check_proper_capped(inst, &c, cli.size_cap.unwrap_or(DEFAULT_ORACLE_CAP))? {
            OracleVerdict::Proper => Verdict::Proper,
            OracleVerdict::Monochromatic { edge, color, witness } => Verdict::Monochromatic { edge, color, witness },
        },
        (None, Some(indices)) => {
            let set: IndexSet = indices.iter().copied().collect();
            match check_cover(inst, &set)? {
                CoverVerdict::Covered => Verdict::Covered,
                CoverVerdict::Uncovered { index, point } => Verdict::Uncovered { index, point },
            }
        }
        (None, None) => unreachable!("clap requires --coloring or --cover"),
    };
    Ok(report_json(&finish("verify", &loaded, Payload::Verdict(verdict), start)))
}

fn cmd_bounds(cli: &Cli, input: &Path) -> CliResult<String> {
    let loaded = load(input)?;
    let start = Instant::now();
    let inst = &loaded.instance;
    let cover_cap = cli.size_cap.unwrap_or(DEFAULT_COVER_CAP);
    let (cover, weight) = exact_min_cover_with(inst, cover_cap, CoverMethod::Auto)?;
    let extraction_number = match exact_extraction_number_capped(inst, cover_cap) {
        Ok(a) => Some(a),
        Err(Error::Unbounded) => None,
        Err(e) => return Err(e.into()),
    };
    let chromatic_cap = cli.size_cap.unwrap_or(DEFAULT_CHROMATIC_CAP);
    let chromatic = if inst.len() <= chromatic_cap {
        Some(exact_chromatic_capped(inst, chromatic_cap)?)
    } else {
        None
    };
    let payload = Payload::Bounds {
        min_cover: cover.into_iter().collect(),
        min_cover_weight: weight,
        total_weight: inst.total(),
        extraction_number,
        chromatic,
    };
    Ok(report_json(&finish("bounds", &loaded, payload, start)))
}

/// Returns the instance document and, when it goes to a file, a report.
fn cmd_gen(cli: &Cli, spec: GeneratorSpec) -> CliResult<(String, Option<String>)> {
    let start = Instant::now();
    let inst = generate(&spec)?;
    let mut doc = write_instance(&inst);
    doc.push('\n');
    let loaded = Loaded {
        parse_ms: 0.0,
        instance: inst,
    };
    let report = cli.out.as_ref().map(|_| {
        let payload = Payload::Generated {
            generator: spec,
            objects: loaded.instance.len(),
            points: loaded.instance.points().len(),
        };
        report_json(&finish("gen", &loaded, payload, start))
    });
    Ok((doc, report))
}

fn cmd_render(cli: &Cli, input: &Path, coloring: Option<&Path>) -> CliResult<(String, Option<String>)> {
    let loaded = load(input)?;
    let supplied = coloring.map(load_coloring).transpose()?;
    let start = Instant::now();
    let inst = &loaded.instance;
    let coloring = match supplied {
        Some(c) => {
            c.check_total(inst)?;
            c
        }
        None => color_instance(inst, cli.size_cap)?,
    };
    let svg = render::render_svg(inst, &coloring)?;
    let report = cli.out.as_ref().map(|_| {
        let payload = Payload::Rendered {
            objects: inst.len(),
            targets: inst.points().len(),
        };
        report_json(&finish("render", &loaded, payload, start))
    });
    Ok((svg, report))
}

fn run(cli: &Cli) -> CliResult<()> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Color { input, class } => emit(out, &cmd_color(cli, input, *class)?),
        Command::Extract { input, coloring } => emit(out, &cmd_extract(cli, input, coloring.as_deref())?),
        Command::Verify { input, coloring, cover } => {
            emit(out, &cmd_verify(cli, input, coloring.as_deref(), cover.as_deref())?)
        }
        Command::Bounds { input } => emit(out, &cmd_bounds(cli, input)?),
        Command::Gen { kind, k, class, n } => {
            let spec = GeneratorSpec {
                kind: *kind,
                k: *k,
                seed: cli.seed,
                class: *class,
                n: *n,
            };
            let (doc, report) = cmd_gen(cli, spec)?;
            emit(out, &doc)?;
            match report {
                Some(r) => emit(None, &r),
                None => Ok(()),
            }
        }
        Command::Render { input, coloring } => {
            let (svg, report) = cmd_render(cli, input, coloring.as_deref())?;
            emit(out, &svg)?;
            match report {
                Some(r) => emit(None, &r),
                None => Ok(()),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
