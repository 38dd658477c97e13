mod report;

use clap::{Parser, Subcommand};
use lzd_core::buildings::{image_vertices, CaseTag};
use lzd_core::criterion::{census, check_distinction, default_t_values, preservation_check};
use lzd_core::green::{elliptic_classes, green_match, green_value};
use lzd_core::localdata::{admissible_d, regular_orbits, LocalSetup, Ramification, TameParameter};
use lzd_core::oracle::cache::TableCache;
use lzd_core::oracle::enumerate_gl;
use lzd_core::oracle::suites::{run_suite, SuiteReport, Tables, SUITES};
use lzd_core::{Error, Result, RootOfUnity};
use report::{emit_error, exit_code, ratio, root, CertificateJson, Cyclo, Emitter, Format, Status, Table};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

/// Distinction of tame supercuspidal parameters for inner forms of GL_n,
/// with brute-force finite group oracles.
#[derive(Parser, Debug)]
#[command(name = "lzd", version)]
struct Cli {
    /// Leave out the `timing` object so identical runs are byte-identical.
    #[arg(long, global = true)]
    no_timing: bool,

    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    /// Character table cache. Without it tables are rebuilt every run.
    #[arg(long, global = true, env = "LZD_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verdict for one parameter.
    Check {
        #[arg(long)]
        q: u64,
        /// `nr` or `tr`.
        #[arg(long)]
        ram: Ramification,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        /// Exponent of the residual character.
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        /// `χ(ϖ_K) = exp(2πi t)`, as a rational such as `0` or `1/2`.
        #[arg(long, value_parser = parse_root)]
        t: RootOfUnity,
    },
    /// Distinguished orbits for every `d` (default: all divisors of `n`).
    Census {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        ram: Ramification,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: Vec<u32>,
        /// Values of `t` to try (default: 0 and 1/2).
        #[arg(long, value_parser = parse_root)]
        t: Vec<RootOfUnity>,
    },
    /// Vertices of the image of the chamber.
    Buildings {
        /// `nr-odd`, `tr-odd`, `nr-even` or `tr-even`.
        #[arg(long)]
        case: CaseTag,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=MAX_BUILDING_M as i64))]
        m: u32,
    },
    /// Run an oracle suite, or `all`.
    Oracle { suite: String },
    /// Verdicts at `d > 1` against `d = 1` for every regular parameter.
    Preservation {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        ram: Ramification,
    },
    /// Match character formula values with rows of the GL_f(F_q) table.
    GreenVerify {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 2)]
        f: u32,
    },
}

const MAX_BUILDING_M: u32 = 10;

fn parse_root(s: &str) -> std::result::Result<RootOfUnity, String> {
    RootOfUnity::parse(s).ok_or_else(|| format!("{s:?} is not a rational number"))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let rendered = e.render().to_string();
            let first = rendered.lines().next().unwrap_or_default();
            emit_error("INVALID_ARGUMENT", first.trim_start_matches("error: ").to_string());
            let _ = e.print();
            return ExitCode::from(2);
        }
    };
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let out = Emitter::new(cli.format, !cli.no_timing, argv);
    let cache = cli.cache_dir.map(TableCache::new);
    match run(cli.command, &out, cache.as_ref()) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Mismatch) => ExitCode::from(1),
        // A closed stdout (`lzd ... | head`) is not worth a report.
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            emit_error(e.reason(), e.to_string());
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}

fn run(cmd: Command, out: &Emitter, cache: Option<&TableCache>) -> Result<Status> {
    match cmd {
        Command::Check { q, ram, n, d, a, t } => run_check(out, LocalSetup::new(q, ram, n, d), a, t),
        Command::Census { q, ram, n, d, t } => run_census(out, q, ram, n, d, t),
        Command::Buildings { case, m } => run_buildings(out, case, m as usize),
        Command::Oracle { suite } => run_oracle(out, &suite, cache),
        Command::Preservation { q, n, ram } => run_preservation(out, q, n, ram),
        Command::GreenVerify { q, f } => run_green(out, q, f, cache),
    }
}

#[derive(Serialize)]
struct SetupInputs {
    q: u64,
    ram: String,
    n: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    d: Option<u32>,
}

impl SetupInputs {
    fn new(q: u64, ram: Ramification, n: u32, d: Option<u32>) -> SetupInputs {
        SetupInputs { q, ram: ram_str(ram).into(), n, d }
    }
}

fn ram_str(ram: Ramification) -> &'static str {
    match ram {
        Ramification::Unramified => "nr",
        Ramification::TotallyRamified => "tr",
    }
}

fn run_check(out: &Emitter, setup: LocalSetup, a: i64, t: RootOfUnity) -> Result<Status> {
    #[derive(Serialize)]
    struct Inputs {
        #[serde(flatten)]
        setup: SetupInputs,
        a: i64,
        t: String,
    }
    #[derive(Serialize)]
    struct Body {
        distinguished: bool,
        multiplicity: u8,
        case: &'static str,
        certificate: CertificateJson,
        /// Reduced exponent and its Galois orbit.
        exponent: u64,
        orbit: Vec<u64>,
    }
    let p = TameParameter::new(setup, a, t);
    let v = check_distinction(&p)?;
    let certificate = CertificateJson::from(&v.certificate);
    let mut table =
        Table::new(vec!["q", "ram", "n", "d", "a", "t", "case", "distinguished", "multiplicity", "certificate"]);
    table.push(vec![
        setup.q.to_string(),
        ram_str(setup.ram).into(),
        setup.n.to_string(),
        setup.d.to_string(),
        p.a.to_string(),
        root(t),
        v.case.as_str().into(),
        v.distinguished.to_string(),
        v.multiplicity.to_string(),
        certificate.summary(),
    ]);
    let body = Body {
        distinguished: v.distinguished,
        multiplicity: v.multiplicity,
        case: v.case.as_str(),
        certificate,
        exponent: p.a,
        orbit: p.orbit(),
    };
    let inputs = Inputs { setup: SetupInputs::new(setup.q, setup.ram, setup.n, Some(setup.d)), a, t: root(t) };
    out.emit("check", inputs, body, table, None)?;
    Ok(Status::Ok)
}

fn run_census(out: &Emitter, q: u64, ram: Ramification, n: u32, ds: Vec<u32>, ts: Vec<RootOfUnity>) -> Result<Status> {
    #[derive(Serialize)]
    struct Inputs {
        #[serde(flatten)]
        setup: SetupInputs,
        d: Vec<u32>,
        t: Vec<String>,
    }
    #[derive(Serialize)]
    struct Hit {
        a: u64,
        t: String,
    }
    #[derive(Serialize)]
    struct Row {
        d: u32,
        case: &'static str,
        orbits: usize,
        parameters: usize,
        distinguished_orbits: usize,
        distinguished: Vec<Hit>,
    }
    #[derive(Serialize)]
    struct Body {
        rows: Vec<Row>,
        distinguished_orbits: usize,
    }
    let ds = if ds.is_empty() { admissible_d(n) } else { ds };
    let ts = if ts.is_empty() { default_t_values() } else { ts };
    let rows = census(q, ram, n, &ds, &ts)?;
    let mut table = Table::new(vec!["d", "case", "orbits", "parameters", "distinguished_orbits", "a", "t"]);
    let mut body = Body { rows: Vec::new(), distinguished_orbits: 0 };
    for r in rows {
        let mut orbits: Vec<u64> = r.distinguished.iter().map(|&(a, _)| a).collect();
        orbits.dedup();
        body.distinguished_orbits += orbits.len();
        let head = vec![
            r.setup.d.to_string(),
            r.case.as_str().to_string(),
            r.orbits.to_string(),
            r.parameters.to_string(),
            orbits.len().to_string(),
        ];
        if r.distinguished.is_empty() {
            table.push([head.clone(), vec![String::new(), String::new()]].concat());
        }
        for &(a, t) in &r.distinguished {
            table.push([head.clone(), vec![a.to_string(), root(t)]].concat());
        }
        body.rows.push(Row {
            d: r.setup.d,
            case: r.case.as_str(),
            orbits: r.orbits,
            parameters: r.parameters,
            distinguished_orbits: orbits.len(),
            distinguished: r.distinguished.iter().map(|&(a, t)| Hit { a, t: root(t) }).collect(),
        });
    }
    let inputs = Inputs { setup: SetupInputs::new(q, ram, n, None), d: ds, t: ts.iter().map(|&t| root(t)).collect() };
    out.emit("census", inputs, body, table, None)?;
    Ok(Status::Ok)
}

fn run_buildings(out: &Emitter, case: CaseTag, m: usize) -> Result<Status> {
    #[derive(Serialize)]
    struct Inputs {
        case: &'static str,
        m: usize,
    }
    #[derive(Serialize)]
    struct Body {
        dim: usize,
        count: usize,
        expected: usize,
        vertices: Vec<Vec<String>>,
    }
    let vertices: Vec<Vec<String>> =
        image_vertices(case, m).iter().map(|v| v.coords().iter().map(|&c| ratio(c)).collect()).collect();
    let expected = case.expected_vertex_count(m);
    let mut table = Table::new(vec!["case", "m", "vertex"]);
    for v in &vertices {
        table.push(vec![case.as_str().into(), m.to_string(), v.join(" ")]);
    }
    let status = Status::from_pass(vertices.len() == expected);
    if status == Status::Mismatch {
        eprintln!("lzd: {} vertices found, {expected} expected", vertices.len());
    }
    let body = Body { dim: case.image_dim(m), count: vertices.len(), expected, vertices };
    out.emit("buildings", Inputs { case: case.as_str(), m }, body, table, None)?;
    Ok(status)
}

fn run_oracle(out: &Emitter, suite: &str, cache: Option<&TableCache>) -> Result<Status> {
    #[derive(Serialize)]
    struct Inputs<'a> {
        suite: &'a str,
    }
    #[derive(Serialize)]
    struct Check {
        label: String,
        expected: String,
        observed: String,
        pass: bool,
    }
    #[derive(Serialize)]
    struct Suite {
        name: String,
        pass: bool,
        multiplicities: usize,
        checks: Vec<Check>,
    }
    #[derive(Serialize)]
    struct Body {
        pass: bool,
        suites: Vec<Suite>,
    }
    let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite] };
    if let Some(bad) = names.iter().find(|n| !SUITES.contains(n)) {
        return Err(Error::InvalidSetup(format!("unknown suite {bad:?}, expected one of {SUITES:?} or \"all\"")));
    }
    let reports: Vec<SuiteReport> = names.iter().map(|n| run_suite(n, cache)).collect::<Result<_>>()?;
    let hits = reports.iter().map(|r| r.cache_hits).sum();
    let mut table = Table::new(vec!["suite", "label", "expected", "observed", "pass"]);
    for r in &reports {
        for c in &r.checks {
            table.push(vec![
                r.name.clone(),
                c.label.clone(),
                c.expected.clone(),
                c.observed.clone(),
                c.pass.to_string(),
            ]);
            if !c.pass {
                eprintln!("lzd: {}: {} expected {} observed {}", r.name, c.label, c.expected, c.observed);
            }
        }
    }
    let pass = reports.iter().all(SuiteReport::pass);
    let suites = reports
        .into_iter()
        .map(|r| Suite {
            pass: r.pass(),
            multiplicities: r.multiplicities.len(),
            checks: r
                .checks
                .into_iter()
                .map(|c| Check { label: c.label, expected: c.expected, observed: c.observed, pass: c.pass })
                .collect(),
            name: r.name,
        })
        .collect();
    out.emit("oracle", Inputs { suite }, Body { pass, suites }, table, cache.map(|_| hits))?;
    Ok(Status::from_pass(pass))
}

fn run_preservation(out: &Emitter, q: u64, n: u32, ram: Ramification) -> Result<Status> {
    #[derive(Serialize)]
    struct Mismatch {
        a: u64,
        t: String,
        d: u32,
        at_d: bool,
        at_1: bool,
    }
    #[derive(Serialize)]
    struct Body {
        d: Vec<u32>,
        orbits: usize,
        mismatches: Vec<Mismatch>,
    }
    let found = preservation_check(q, n, ram)?;
    let setup = LocalSetup::new(q, ram, n, 1);
    let mut table = Table::new(vec!["a", "t", "d", "at_d", "at_1"]);
    for m in &found {
        table.push(vec![m.a.to_string(), root(m.t), m.d.to_string(), m.at_d.to_string(), m.at_1.to_string()]);
    }
    let status = Status::from_pass(found.is_empty());
    let body = Body {
        d: admissible_d(n),
        orbits: regular_orbits(setup.q_k(), n).len(),
        mismatches: found
            .into_iter()
            .map(|m| Mismatch { a: m.a, t: root(m.t), d: m.d, at_d: m.at_d, at_1: m.at_1 })
            .collect(),
    };
    out.emit("preservation", SetupInputs::new(q, ram, n, None), body, table, None)?;
    Ok(status)
}

fn run_green(out: &Emitter, q: u64, f: u32, cache: Option<&TableCache>) -> Result<Status> {
    #[derive(Serialize)]
    struct Inputs {
        q: u64,
        f: u32,
    }
    #[derive(Serialize)]
    struct Value {
        class: usize,
        exponent: u64,
        value: Cyclo,
    }
    #[derive(Serialize)]
    struct Match {
        orbit: Vec<u64>,
        row: usize,
        degree: String,
        values: Vec<Value>,
    }
    #[derive(Serialize)]
    struct Body {
        order: u64,
        classes: usize,
        elliptic_classes: usize,
        matches: Vec<Match>,
    }
    let g = enumerate_gl(f as usize, q)?;
    let mut tables = Tables::new(cache);
    let table = tables.get(&g)?;
    let elliptic = elliptic_classes(&g, &table)?;
    let matched = green_match(&g, &table)?;
    let mut csv = Table::new(vec!["orbit", "row", "degree"]);
    let mut matches = Vec::new();
    for (label, row) in matched {
        let degree = table.degrees()[row].to_string();
        let values = elliptic
            .iter()
            .map(|c| {
                Ok(Value {
                    class: c.class,
                    exponent: c.eigen_exponent,
                    value: Cyclo::from(&green_value(&label, c.eigen_exponent)?),
                })
            })
            .collect::<Result<_>>()?;
        let orbit: Vec<String> = label.orbit.iter().map(u64::to_string).collect();
        csv.push(vec![orbit.join(" "), row.to_string(), degree.clone()]);
        matches.push(Match { orbit: label.orbit.clone(), row, degree, values });
    }
    let body = Body { order: g.order() as u64, classes: table.len(), elliptic_classes: elliptic.len(), matches };
    out.emit("green-verify", Inputs { q, f }, body, csv, cache.map(|_| tables.hits()))?;
    Ok(Status::Ok)
}
