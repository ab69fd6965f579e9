use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use polyslice::enumerate::{
    gap_certificate, partition_oracle, vss_by_sweep, CertificateOutcome, DirectionGenerator,
    OracleCaps, VSSReport, DEFAULT_MAX_BOUND, DEFAULT_SUBSET_BUDGET,
};
use polyslice::polytope::{
    cross_polytope, cube3, cyclic, hypercube, icosahedron_rational, octahedron, simplex,
    stack_times, tetrahedron, CyclicSpec,
};
use polyslice::poset::build_slicing_poset;
use polyslice::slicer::{classify_direction, sweep};
use polyslice::theory::golden_table;
use polyslice::verify::{run_suite, Suite};
use polyslice::{Error, Parallelism, RVector, Rational, VPolytope};

#[derive(Parser)]
#[command(
    name = "polyslice",
    version,
    about = "Exact vertex counts of hyperplane slices of polytopes"
)]
struct Cli {
    /// Worker threads; 1 runs everything on the calling thread.
    #[arg(long, global = true, env = "POLYSLICE_JOBS", default_value_t = 1,
          value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a polytope from a named family.
    Family {
        #[arg(long, value_enum)]
        name: Family,
        #[arg(long)]
        dim: Option<usize>,
        /// Number of vertices (cyclic polytopes).
        #[arg(long)]
        n: Option<usize>,
        /// Comma-separated moment-curve parameters (cyclic polytopes).
        #[arg(long)]
        params: Option<String>,
        /// Stack a pyramid on every facet this many times (3-polytopes).
        #[arg(long, default_value_t = 0)]
        stack: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify the vertices against u.x = t and count slice vertices.
    Cv {
        #[arg(long)]
        polytope: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        direction: String,
        #[arg(long, allow_hyphen_values = true)]
        offset: String,
    },
    /// Slice counts at and between every vertex level along u.
    Sweep {
        #[arg(long)]
        polytope: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        direction: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the slicing poset along u.
    Poset {
        #[arg(long)]
        polytope: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        direction: String,
        #[arg(long, value_enum, default_value_t = PosetFormat::Json)]
        format: PosetFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Vertex slice sequence with witnesses.
    Vss {
        #[arg(long)]
        polytope: PathBuf,
        #[arg(long, value_enum, default_value_t = Generator::Subsets)]
        generator: Generator,
        /// Grid bound; omitted means grow until the realized set stabilizes.
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_MAX_BOUND)]
        max_bound: usize,
        #[arg(long, default_value_t = DEFAULT_SUBSET_BUDGET)]
        budget: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write witnesses as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Gaps of a saved report, optionally replaying its witnesses.
    Gaps {
        #[arg(long)]
        report: PathBuf,
        #[arg(long)]
        polytope: Option<PathBuf>,
    },
    /// Exhaustive partition enumeration (small polytopes only).
    Oracle {
        #[arg(long)]
        polytope: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify that r is a gap via k-connectivity and face sizes.
    Certify {
        #[arg(long)]
        polytope: PathBuf,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reference hypercube row: nu and gaps.
    Table {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        json: bool,
    },
    /// Run the acceptance suite.
    Verify {
        #[arg(value_parser = Suite::from_str)]
        suite: Suite,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Hypercube,
    Simplex,
    Cross,
    Cyclic,
    Tetrahedron,
    Cube,
    Octahedron,
    Icosahedron,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PosetFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Generator {
    Subsets,
    Grid,
    Facets,
    Oracle,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(e) => Failure::Usage(e.to_string()),
            e => Failure::Domain(e.to_string()),
        }
    }
}

type Run = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let par = Parallelism::new(cli.jobs as usize);
    match run(cli.cmd, par) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("polyslice: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("polyslice: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cmd: Cmd, par: Parallelism) -> Run {
    match cmd {
        Cmd::Family {
            name,
            dim,
            n,
            params,
            stack,
            out,
        } => {
            let p = family(name, dim, n, params.as_deref())?;
            let p = if stack > 0 {
                stack_times(&p, stack)?
            } else {
                p
            };
            emit(&p, out.as_deref())
        }
        Cmd::Cv {
            polytope,
            direction,
            offset,
        } => {
            let p = load_polytope(&polytope)?;
            let u = parse_vector(&direction, p.dim())?;
            let t = parse_rational(&offset)?;
            let part = classify_direction(&p, &u, &t)?;
            let mut v = serde_json::to_value(&part).map_err(json_err)?;
            v["cv"] = json!(part.cv());
            v["meets"] = json!(part.meets());
            emit(&v, None)
        }
        Cmd::Sweep {
            polytope,
            direction,
            out,
        } => {
            let p = load_polytope(&polytope)?;
            let u = parse_vector(&direction, p.dim())?;
            emit(&sweep(&p, &u)?, out.as_deref())
        }
        Cmd::Poset {
            polytope,
            direction,
            format,
            out,
        } => {
            let p = load_polytope(&polytope)?;
            let u = parse_vector(&direction, p.dim())?;
            let poset = build_slicing_poset(&p, &u)?;
            if format == PosetFormat::Dot {
                return write_text(&poset.to_dot(), out.as_deref());
            }
            let v = json!({
                "polytope": p.name(),
                "hash": p.content_hash(),
                "direction": poset.direction,
                "elements": poset.elements(),
                "covers": poset.covers(),
                "width": poset.width()?,
            });
            emit(&v, out.as_deref())
        }
        Cmd::Vss {
            polytope,
            generator,
            bound,
            max_bound,
            budget,
            out,
            csv,
        } => {
            let p = load_polytope(&polytope)?;
            let report = match generator {
                Generator::Oracle => partition_oracle(&p, OracleCaps::default(), par)?.report,
                Generator::Subsets => vss_by_sweep(
                    &p,
                    &DirectionGenerator::SubsetNormals {
                        budget,
                        pairs: true,
                    },
                    par,
                )?,
                Generator::Grid => vss_by_sweep(
                    &p,
                    &DirectionGenerator::PositiveGrid { bound, max_bound },
                    par,
                )?,
                Generator::Facets => vss_by_sweep(&p, &DirectionGenerator::FacetNormals, par)?,
            };
            if let Some(path) = csv {
                write_csv(&report, &path)?;
            }
            emit(&report, out.as_deref())
        }
        Cmd::Gaps { report, polytope } => {
            let text = read(&report)?;
            let r: VSSReport = serde_json::from_str(&text)
                .map_err(|e| Failure::Domain(format!("{}: {e}", report.display())))?;
            if let Some(path) = polytope {
                r.replay(&load_polytope(&path)?)?;
            }
            let gaps = polyslice::enumerate::gaps(&r);
            println!(
                "nu={} gaps {}{}",
                r.nu,
                fmt_set(&gaps),
                if r.exhaustive {
                    ""
                } else {
                    " (not exhaustive)"
                }
            );
            Ok(())
        }
        Cmd::Oracle { polytope, out } => {
            let p = load_polytope(&polytope)?;
            let res = partition_oracle(&p, OracleCaps::default(), par)?;
            let v = json!({ "partitions": res.partitions, "report": res.report });
            emit(&v, out.as_deref())
        }
        Cmd::Certify {
            polytope,
            r,
            k,
            out,
        } => {
            let p = load_polytope(&polytope)?;
            let outcome = gap_certificate(&p, r, k)?;
            emit(&outcome, out.as_deref())?;
            match outcome {
                CertificateOutcome::Certified(_) => Ok(()),
                CertificateOutcome::Refused { reason } => {
                    Err(Failure::Domain(format!("refused: {reason}")))
                }
            }
        }
        Cmd::Table { dim, json } => {
            let row = golden_table(dim)?;
            if json {
                return emit(&row, None);
            }
            println!("d={} nu={} gaps {}", row.dim, row.nu, fmt_set(&row.gaps));
            Ok(())
        }
        Cmd::Verify { suite } => {
            let reports = run_suite(suite, par, |r| {
                println!("{r}");
                let _ = io::stdout().flush();
            });
            let failed: Vec<usize> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
            if failed.is_empty() {
                println!("all {} criteria passed", reports.len());
                Ok(())
            } else {
                Err(Failure::Domain(format!("failed criteria: {failed:?}")))
            }
        }
    }
}

fn family(
    name: Family,
    dim: Option<usize>,
    n: Option<usize>,
    params: Option<&str>,
) -> Result<VPolytope, Failure> {
    let need_dim = || dim.ok_or_else(|| Failure::Usage("--dim is required for this family".into()));
    let p = match name {
        Family::Hypercube => hypercube(need_dim()?)?,
        Family::Simplex => simplex(need_dim()?)?,
        Family::Cross => cross_polytope(need_dim()?)?,
        Family::Cyclic => {
            let d = need_dim()?;
            let spec = match (params, n) {
                (Some(s), _) => CyclicSpec::with_params(d, parse_list(s)?)?,
                (None, Some(n)) => CyclicSpec::new(d, n)?,
                (None, None) => return Err(Failure::Usage("cyclic needs --n or --params".into())),
            };
            cyclic(&spec)?
        }
        Family::Tetrahedron => tetrahedron()?,
        Family::Cube => cube3()?,
        Family::Octahedron => octahedron()?,
        Family::Icosahedron => icosahedron_rational()?,
    };
    Ok(p)
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_polytope(path: &Path) -> Result<VPolytope, Failure> {
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

fn parse_rational(s: &str) -> Result<Rational, Failure> {
    Rational::from_str(s.trim()).map_err(|e| Failure::Usage(e.to_string()))
}

fn parse_list(s: &str) -> Result<Vec<Rational>, Failure> {
    s.split(',').map(parse_rational).collect()
}

fn parse_vector(s: &str, dim: usize) -> Result<RVector, Failure> {
    let v = RVector::new(parse_list(s)?);
    if v.dim() != dim {
        return Err(Failure::Usage(format!(
            "direction has {} entries, polytope dimension is {dim}",
            v.dim()
        )));
    }
    Ok(v)
}

fn json_err(e: serde_json::Error) -> Failure {
    Failure::Domain(e.to_string())
}

/// Pretty JSON with sorted keys: going through `Value` sorts every map.
fn render<T: Serialize>(x: &T) -> Result<String, Failure> {
    let v = serde_json::to_value(x).map_err(json_err)?;
    let mut s = serde_json::to_string_pretty(&v).map_err(json_err)?;
    s.push('\n');
    Ok(s)
}

fn emit<T: Serialize>(x: &T, out: Option<&Path>) -> Run {
    write_text(&render(x)?, out)
}

fn write_text(s: &str, out: Option<&Path>) -> Run {
    match out {
        Some(path) => {
            fs::write(path, s).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{s}");
            Ok(())
        }
    }
}

fn write_csv(report: &VSSReport, path: &Path) -> Run {
    let io_err = |e: csv::Error| Failure::Usage(format!("{}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(io_err)?;
    w.write_record(["count", "direction", "offset"])
        .map_err(io_err)?;
    for (c, dir, off) in report.witness_rows() {
        w.write_record([c.to_string(), dir, off]).map_err(io_err)?;
    }
    w.flush()
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn fmt_set(s: &BTreeSet<usize>) -> String {
    let items: Vec<String> = s.iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(","))
}
