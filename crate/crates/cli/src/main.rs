use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use multlab::bounds::{compare_report, BoundParams, IncidenceFn, NesterenkoParams, Selection};
use multlab::experiment::{
    apply_seed_override, rows_to_csv, run_experiment, run_instance, ExperimentConfig, Replay, Row,
};
use multlab::io::{poly_argument, polytope_to_json, read_cycle, read_field, read_levels, read_points, read_polytope};
use multlab::multiplicity::{certified_vanishing, multiplicity, multiplicity_sum, multiplicity_via_series, Cutoff, MultiplicityResult, Status};
use multlab::polytope::{bk_count, mixed_volume, quermassintegral};
use multlab::rational::{format_rational, parse_rational};
use multlab::witness::{degf_eval, witness_family, witness_set};
use multlab::{Error, LatticePolytope, Mode, RationalPoint};
use serde_json::json;

#[derive(Parser)]
#[command(name = "multlab", version, about = "Multiplicities along trajectories of polynomial vector fields, and bounds for them")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Multiplicity of a polynomial along the trajectory through a point.
    Mult(MultArgs),
    /// Evaluate and compare multiplicity bounds.
    Bounds(BoundsArgs),
    /// Convex hulls, volumes, mixed volumes, quermassintegrals, root counts.
    #[command(subcommand)]
    Polytope(PolytopeCmd),
    /// Witness sets and cycle degree functions.
    #[command(subcommand)]
    Witness(WitnessCmd),
    /// Seeded randomized soundness experiment.
    Experiment(ExperimentArgs),
}

#[derive(Args)]
struct MultArgs {
    /// Vector-field JSON file.
    #[arg(long)]
    field: PathBuf,
    /// Polynomial text, or `@path` to read it from a file.
    #[arg(long)]
    poly: String,
    /// Point such as "1/2,0".
    #[arg(long, conflicts_with = "points", required_unless_present = "points")]
    point: Option<String>,
    /// JSON file with a list of points; reports the sum.
    #[arg(long)]
    points: Option<PathBuf>,
    /// `auto` or a nonnegative integer.
    #[arg(long, default_value = "auto")]
    cutoff: String,
    /// Use the trajectory-series oracle carried to this degree.
    #[arg(long, conflicts_with_all = ["points", "certify"])]
    series: Option<usize>,
    /// Decide identical vanishing on the trajectory.
    #[arg(long, conflicts_with = "points")]
    certify: bool,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: u64,
    #[arg(long)]
    delta: u64,
    #[arg(long, default_value = "affine")]
    mode: String,
    /// Polytope file for Δ(P).
    #[arg(long, requires = "field_polytope")]
    poly_polytope: Option<PathBuf>,
    /// Polytope file for Δ(V).
    #[arg(long, requires = "poly_polytope")]
    field_polytope: Option<PathBuf>,
    /// Accept affine polytopes outside the nonnegative orthant (results are marked unverified).
    #[arg(long)]
    waiver: bool,
    /// all, degree, gr, polytope, nesterenko or multipoint.
    #[arg(long, default_value = "all")]
    which: String,
    /// Incidence counts a_0,…,a_{n−1} for the several-points bound.
    #[arg(long, value_delimiter = ',')]
    incidence: Option<Vec<u64>>,
    /// Trajectory constant C for the parametrized estimate.
    #[arg(long, requires = "kappa")]
    nesterenko_c: Option<String>,
    #[arg(long, requires = "nesterenko_c")]
    kappa: Option<usize>,
    /// Constant table entries `j=value` for a_j.
    #[arg(long = "a", value_name = "J=VALUE")]
    a_entries: Vec<String>,
}

#[derive(Subcommand)]
enum PolytopeCmd {
    /// Vertices, dimension and volume.
    Hull { file: PathBuf },
    Volume { file: PathBuf },
    /// Mixed volume of n polytopes.
    MixedVolume { files: Vec<PathBuf> },
    /// Q_j(Δ).
    Quermass {
        file: PathBuf,
        #[arg(long)]
        j: usize,
    },
    /// n!·V(Δ_1,…,Δ_n).
    BkCount { files: Vec<PathBuf> },
}

#[derive(Subcommand)]
enum WitnessCmd {
    /// Witness subset of a point set for degree ≤ D.
    Set {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        degree: u32,
    },
    /// Union of witness sets over level sets.
    Family {
        #[arg(long)]
        levels: PathBuf,
    },
    /// degf of a cycle at a point.
    Degf {
        #[arg(long)]
        cycle: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        point: String,
    },
}

#[derive(Args)]
struct ExperimentArgs {
    /// JSON config; flags given explicitly override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    max_degree: Option<u32>,
    #[arg(long)]
    max_field_degree: Option<u32>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    coeff_range: Option<i64>,
    #[arg(long)]
    cutoff: Option<u64>,
    #[arg(long)]
    series_order: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    target_orders: Option<Vec<u64>>,
    /// Re-run one serialized instance.
    #[arg(long, conflicts_with = "config")]
    replay: Option<PathBuf>,
    /// Directory receiving one replay file per violating instance.
    #[arg(long)]
    violations_dir: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_format() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Domain(e)
        }
    }
}

type CmdResult = Result<u8, Failure>;

const INCONCLUSIVE: u8 = 3;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn emit_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json value"));
}

fn result_row(r: &MultiplicityResult) -> [String; 5] {
    let (status, order, cutoff, cert) = match &r.status {
        Status::Finite(k) => ("finite", k.to_string(), String::new(), String::new()),
        Status::CertifiedInfinite { cutoff_used, certificate } => {
            ("certified_infinite", String::new(), cutoff_used.to_string(), certificate.clone())
        }
        Status::Inconclusive { cutoff_used } => ("inconclusive", String::new(), cutoff_used.to_string(), String::new()),
    };
    let witness = r.witness.as_ref().map(|(_, v)| format_rational(v)).unwrap_or_default();
    [status.into(), order, witness, cutoff, cert]
}

fn cmd_mult(a: &MultArgs, format: Format) -> CmdResult {
    let v = read_field(&read(&a.field)?)?;
    let p = poly_argument(&a.poly, v.n(), v.mode())
        .map_err(|e| Failure::Usage(format!("cannot read polynomial file: {e}")))??;
    let cutoff: Cutoff = a.cutoff.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;

    if let Some(path) = &a.points {
        let points = read_points(&read(path)?)?;
        let s = multiplicity_sum(&v, &p, &points, cutoff)?;
        match format {
            Format::Json => emit_json(&s.to_json()),
            Format::Csv => {
                println!("index,point,status,order,witness_value,cutoff,certificate");
                for (i, (pt, r)) in points.iter().zip(&s.per_point).enumerate() {
                    println!("{i},\"{pt}\",{}", result_row(r).join(","));
                }
            }
            Format::Table => {
                for (pt, r) in points.iter().zip(&s.per_point) {
                    println!("{pt}: {r}");
                }
                println!("sum: {}{}", s.sum, if s.valid { "" } else { " (invalid: not every point is finite)" });
            }
        }
        return Ok(if s.per_point.iter().any(MultiplicityResult::is_inconclusive) { INCONCLUSIVE } else { 0 });
    }

    let at = RationalPoint::parse(a.point.as_deref().expect("clap requires --point"))
        .map_err(|e| Failure::Usage(format!("bad --point: {e}")))?;
    if a.certify {
        let c = certified_vanishing(&v, &p, &at)?;
        match format {
            Format::Json => emit_json(&c.to_json()),
            Format::Csv => {
                println!("vanishes,bound,certificate");
                println!("{},{},{}", c.vanishes, c.bound, c.certificate);
            }
            Format::Table => match &c.witness {
                None => println!("vanishes identically: chain is zero through {} ({})", c.bound, c.certificate),
                Some((r, val)) => println!("does not vanish: (V^{r}P)(p) = {}", format_rational(val)),
            },
        }
        return Ok(0);
    }
    let r = match a.series {
        Some(order) => multiplicity_via_series(&v, &p, &at, order)?,
        None => multiplicity(&v, &p, &at, cutoff)?,
    };
    match format {
        Format::Json => emit_json(&r.to_json()),
        Format::Csv => {
            println!("status,order,witness_value,cutoff,certificate");
            println!("{}", result_row(&r).join(","));
        }
        Format::Table => println!("multiplicity at {at}: {r}"),
    }
    Ok(if r.is_inconclusive() { INCONCLUSIVE } else { 0 })
}

fn cmd_bounds(a: &BoundsArgs, format: Format) -> CmdResult {
    let mode: Mode = a.mode.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
    let which: Selection = a.which.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
    let mut params = BoundParams::degrees(a.n, a.d, a.delta);
    params.mode = mode;
    params.waiver = a.waiver;
    params.incidence = a.incidence.clone();
    if let (Some(pp), Some(fp)) = (&a.poly_polytope, &a.field_polytope) {
        params.poly_polytope = Some(read_polytope(&read(pp)?)?);
        params.field_polytope = Some(read_polytope(&read(fp)?)?);
    }
    if let (Some(c), Some(kappa)) = (&a.nesterenko_c, a.kappa) {
        let c = parse_rational(c).map_err(|e| Failure::Usage(format!("bad --nesterenko-c: {e}")))?;
        let mut table = BTreeMap::new();
        for entry in &a.a_entries {
            let (j, v) = entry
                .split_once('=')
                .and_then(|(j, v)| Some((j.trim().parse::<usize>().ok()?, v.trim().parse::<u64>().ok()?)))
                .ok_or_else(|| Failure::Usage(format!("bad --a entry {entry:?}, expected J=VALUE")))?;
            table.insert(j, IncidenceFn::Constant(v));
        }
        params.nesterenko = Some(NesterenkoParams::new(c, kappa, table)?);
    }
    let report = compare_report(&params, which)?;
    match format {
        Format::Json => emit_json(&report.to_json()),
        Format::Csv => print!("{}", report.to_csv()),
        Format::Table => print!("{}", report.to_table()),
    }
    Ok(0)
}

fn polytope_json(p: &LatticePolytope) -> serde_json::Value {
    json!({
        "dim": p.dim(),
        "vertices": polytope_to_json(p)["points"],
        "volume": format_rational(&p.volume()),
    })
}

fn read_polytopes(files: &[PathBuf]) -> Result<Vec<LatticePolytope>, Failure> {
    files.iter().map(|f| Ok(read_polytope(&read(f)?)?)).collect()
}

fn print_value(name: &str, value: &str, format: Format) {
    match format {
        Format::Json => emit_json(&json!({ name: value })),
        Format::Csv => println!("{name}\n{value}"),
        Format::Table => println!("{name}: {value}"),
    }
}

fn cmd_polytope(c: &PolytopeCmd, format: Format) -> CmdResult {
    match c {
        PolytopeCmd::Hull { file } => {
            let p = read_polytope(&read(file)?)?;
            match format {
                Format::Json => emit_json(&polytope_json(&p)),
                Format::Csv => {
                    println!("vertex");
                    for v in p.vertices() {
                        println!("\"{}\"", v.iter().map(i64::to_string).collect::<Vec<_>>().join(","));
                    }
                }
                Format::Table => {
                    println!("dimension: {}", p.dim());
                    println!("volume: {}", format_rational(&p.volume()));
                    println!("vertices:");
                    for v in p.vertices() {
                        println!("  {v:?}");
                    }
                }
            }
        }
        PolytopeCmd::Volume { file } => {
            let p = read_polytope(&read(file)?)?;
            print_value("volume", &format_rational(&p.volume()), format);
        }
        PolytopeCmd::MixedVolume { files } => {
            let ps = read_polytopes(files)?;
            print_value("mixed_volume", &format_rational(&mixed_volume(&ps)?), format);
        }
        PolytopeCmd::Quermass { file, j } => {
            let p = read_polytope(&read(file)?)?;
            print_value("quermassintegral", &format_rational(&quermassintegral(&p, *j)?), format);
        }
        PolytopeCmd::BkCount { files } => {
            let ps = read_polytopes(files)?;
            print_value("bk_count", &bk_count(&ps)?.to_string(), format);
        }
    }
    Ok(0)
}

fn print_points(points: &[RationalPoint], format: Format) {
    match format {
        Format::Json => emit_json(&serde_json::to_value(points).expect("points")),
        Format::Csv => {
            println!("point");
            for p in points {
                println!("\"{p}\"");
            }
        }
        Format::Table => {
            println!("{} witness point(s)", points.len());
            for p in points {
                println!("  {p}");
            }
        }
    }
}

fn cmd_witness(c: &WitnessCmd, format: Format) -> CmdResult {
    match c {
        WitnessCmd::Set { points, n, degree } => {
            let pts = read_points(&read(points)?)?;
            print_points(&witness_set(&pts, *n, *degree)?, format);
        }
        WitnessCmd::Family { levels } => {
            let l = read_levels(&read(levels)?)?;
            print_points(&witness_family(&l.levels, l.n, l.degree_bound)?, format);
            if format == Format::Table {
                println!("note: the comparison is certified on the supplied points only");
            }
        }
        WitnessCmd::Degf { cycle, n, point } => {
            let c = read_cycle(&read(cycle)?, *n)?;
            let at = RationalPoint::parse(point).map_err(|e| Failure::Usage(format!("bad --point: {e}")))?;
            print_value("degf", &degf_eval(&c, &at)?.to_string(), format);
        }
    }
    Ok(0)
}

fn print_rows(rows: &[Row], format: Format) {
    match format {
        Format::Json => emit_json(&serde_json::to_value(rows).expect("rows")),
        _ => print!("{}", rows_to_csv(rows)),
    }
}

fn cmd_experiment(a: &ExperimentArgs, format: Format) -> CmdResult {
    if let Some(path) = &a.replay {
        let replay: Replay = serde_json::from_str(&read(path)?).map_err(|e| Failure::Usage(format!("replay file: {e}")))?;
        let row = run_instance(&replay.config, &replay.instance)?;
        let pass = row.pass;
        print_rows(&[row], format);
        return Ok(if pass { 0 } else { 2 });
    }
    let mut config = match &a.config {
        Some(path) => serde_json::from_str(&read(path)?).map_err(|e| Failure::Usage(format!("config file: {e}")))?,
        None => ExperimentConfig::default(),
    };
    apply_seed_override(&mut config).map_err(|e| Failure::Usage(e.to_string()))?;
    macro_rules! set {
        ($($f:ident),*) => { $(if let Some(x) = &a.$f { config.$f = x.clone(); })* };
    }
    set!(n, max_degree, max_field_degree, trials, seed, coeff_range, cutoff, series_order, target_orders);
    config.validate().map_err(|e| Failure::Usage(e.to_string()))?;

    let report = run_experiment(&config)?;
    print_rows(&report.rows, format);
    if report.passed() {
        eprintln!("{} trial(s), all pass", report.rows.len());
        return Ok(0);
    }
    for v in &report.violations {
        let text = serde_json::to_string_pretty(v).expect("replay");
        match &a.violations_dir {
            Some(dir) => {
                let path = dir.join(format!("violation-{}.json", v.instance.trial));
                fs::create_dir_all(dir)
                    .and_then(|_| fs::write(&path, &text))
                    .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
                eprintln!("violation in trial {} written to {}", v.instance.trial, path.display());
            }
            None => eprintln!("violation in trial {}:\n{text}", v.instance.trial),
        }
    }
    Ok(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Mult(a) => cmd_mult(a, cli.format),
        Command::Bounds(a) => cmd_bounds(a, cli.format),
        Command::Polytope(c) => cmd_polytope(c, cli.format),
        Command::Witness(c) => cmd_witness(c, cli.format),
        Command::Experiment(a) => cmd_experiment(a, cli.format),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
