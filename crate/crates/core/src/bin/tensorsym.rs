use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use tensorsym::combinat::gen_bell;
use tensorsym::cyclic::{
    cyclic_invariant_dim, dft2, round_trip_error, translation_invariant_dim, verify_diagonalization, GridImage,
};
use tensorsym::graph::parse_graph6;
use tensorsym::invariant_ring::{
    sweep, sweep_graphs, write_summary_csv, Arithmetic, CapPolicy, GeneratorOptions, SweepResult,
};
use tensorsym::layers::{EquivariantMap, LayerWeights};
use tensorsym::permgroup::{
    burnside_count, cyclic_generators, orbit_count_on_tuples, translation_generators, young_generators,
    TypedNodeSet,
};
use tensorsym::tensor_basis::{build_full_basis, equivariant_basis, serialize_basis};
use tensorsym::zero_sum::{
    davenport_constant, decompose_invariant_monomial, sequence_from_json, DavenportCertificate,
};
use tensorsym::{selftest, Budget, Error, VERSION};

const EXIT_VALIDATION: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_COUNTEREXAMPLE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "tensorsym", version, about = "Invariant and equivariant layers for typed permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
struct Common {
    /// Run this subcommand's reduced-scale property suite instead.
    #[arg(long)]
    selftest: bool,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimensions of typed invariant layers (generalized Bell numbers).
    Dims {
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        k: Option<usize>,
        /// Output order for equivariant maps (total order k + d).
        #[arg(long, default_value_t = 0)]
        d: usize,
        /// Type sizes, comma separated.
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        /// Cross-check against orbit counting and Burnside (needs --sizes).
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Write the indicator basis as a JSON Lines file.
    Basis {
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 0)]
        d: usize,
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Apply an order-1 equivariant layer to a JSON vector.
    LayerApply {
        #[arg(long)]
        weights: Option<PathBuf>,
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Invariant dimensions for the cyclic group C_n or the translation group C_d x C_d.
    CyclicDims {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Two-dimensional DFT of an image (CSV rows or JSON list of rows).
    Dft {
        #[arg(long)]
        input: Option<PathBuf>,
        /// Check translation diagonalization on random images instead.
        #[arg(long)]
        check_diag: bool,
        #[arg(long, default_value_t = 4)]
        d: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Exhaustive Davenport constant search over Z_d x Z_d.
    Davenport {
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, default_value_t = 2_000_000_000)]
        node_budget: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Factor a zero-sum monomial (JSON list of [a, b]) into small zero-sum factors.
    Decompose {
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        monomial: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Generator-degree reports for the conjectured bounds.
    Conjectures {
        #[arg(long)]
        nmax: Option<usize>,
        /// graph6 file, one graph per line.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// full, 2n, or a degree.
        #[arg(long, default_value = "2n")]
        cap: String,
        #[arg(long, value_enum, default_value_t = ArithmeticArg::Exact)]
        arithmetic: ArithmeticArg,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// CSV summary path (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-graph JSON reports path.
        #[arg(long)]
        json: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, Serialize)]
#[serde(rename_all = "lowercase")]
enum ArithmeticArg {
    Exact,
    Modular,
}

enum Failure {
    Lib(Error),
    Counterexample(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Lib(e.into())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Lib(e.into())
    }
}

type CmdResult = Result<(), Failure>;

fn need<T>(v: Option<T>, flag: &str) -> Result<T, Error> {
    v.ok_or_else(|| Error::Invalid {
        param: flag.into(),
        msg: "required".into(),
    })
}

fn existing(path: &Path, flag: &str) -> Result<(), Error> {
    if path.is_file() {
        Ok(())
    } else {
        Err(Error::Invalid {
            param: flag.into(),
            msg: format!("{} is not a readable file", path.display()),
        })
    }
}

fn header(subcommand: &str, config: &serde_json::Value) -> String {
    format!("# tensorsym {VERSION} {subcommand} {config}")
}

fn emit(format: Format, subcommand: &str, config: serde_json::Value, result: serde_json::Value, text: &[String]) {
    match format {
        Format::Json => {
            let doc = json!({ "version": VERSION, "subcommand": subcommand, "config": config, "result": result });
            println!("{}", serde_json::to_string_pretty(&doc).expect("json value"));
        }
        Format::Text => {
            println!("{}", header(subcommand, &config));
            for line in text {
                println!("{line}");
            }
        }
    }
}

fn run_selftest(suite: &str, common: &Common) -> CmdResult {
    let report = selftest::run(suite, common.seed)?;
    match common.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        Format::Text => {
            for c in &report.checks {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                println!("{mark} {suite} {} {}", c.name, c.detail);
            }
        }
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Error::Arithmetic(format!("selftest {suite} failed")).into())
    }
}

fn cmd_dims(m: Option<u64>, k: Option<usize>, d: usize, sizes: Option<Vec<usize>>, oracle: bool, c: &Common) -> CmdResult {
    let k = need(k, "--k")?;
    let m = match (m, &sizes) {
        (Some(m), Some(s)) if s.len() as u64 != m => {
            return Err(Error::Invalid {
                param: "--m".into(),
                msg: format!("{m} types but --sizes lists {}", s.len()),
            }
            .into())
        }
        (Some(m), _) => m,
        (None, Some(s)) => s.len() as u64,
        (None, None) => return Err(need::<()>(None, "--m").unwrap_err().into()),
    };
    let order = k + d;
    let formula = gen_bell(m, order);
    let config = json!({ "m": m, "k": k, "d": d, "sizes": sizes, "oracle": oracle });
    let mut text = vec![format!("m={m} k={k} d={d} dim={formula}")];
    let mut result = json!({ "dim": formula.to_string() });
    if oracle {
        let sizes = need(sizes, "--sizes")?;
        let t = TypedNodeSet::new(sizes)?;
        let budget = Budget::from_env();
        let spec = young_generators(&t);
        let orbits = orbit_count_on_tuples(&spec, order, &budget)?;
        let burnside = burnside_count(&spec, order, budget.group)?;
        text.push(format!("formula {formula}, oracle {orbits}, burnside {burnside}"));
        result = json!({
            "dim": formula.to_string(),
            "orbit_count": orbits,
            "burnside": burnside.to_string(),
            "generators": spec.generators(),
        });
        if formula != orbits.into() || formula != burnside {
            emit(c.format, "dims", config, result, &text);
            return Err(Error::Arithmetic("formula and oracle disagree".into()).into());
        }
    }
    emit(c.format, "dims", config, result, &text);
    Ok(())
}

fn cmd_basis(k: Option<usize>, d: usize, sizes: Option<Vec<usize>>, out: Option<PathBuf>, c: &Common) -> CmdResult {
    let k = need(k, "--k")?;
    let sizes = need(sizes, "--sizes")?;
    let out = need(out, "--out")?;
    let t = TypedNodeSet::new(sizes.clone())?;
    let budget = Budget::from_env();
    let (basis, input_axes) = if d == 0 {
        (build_full_basis(k, &t, &budget)?, None)
    } else {
        (equivariant_basis(k, d, &t, &budget)?, Some(k))
    };
    let mut w = BufWriter::new(File::create(&out)?);
    serialize_basis(&mut w, &t, k + d, input_axes, &basis)?;
    w.flush()?;
    let config = json!({ "k": k, "d": d, "sizes": sizes, "out": out });
    let text = vec![format!("{} records written to {}", basis.len(), out.display())];
    emit(c.format, "basis", config, json!({ "records": basis.len() }), &text);
    Ok(())
}

fn cmd_layer_apply(weights: Option<PathBuf>, input: Option<PathBuf>, c: &Common) -> CmdResult {
    let weights = need(weights, "--weights")?;
    let input = need(input, "--input")?;
    existing(&weights, "--weights")?;
    existing(&input, "--input")?;
    let lw: LayerWeights = serde_json::from_reader(BufReader::new(File::open(&weights)?))?;
    let layer = EquivariantMap::try_from(lw)?;
    let x: Vec<f64> = serde_json::from_reader(BufReader::new(File::open(&input)?))?;
    let y = layer.forward(&x)?;
    let config = json!({ "weights": weights, "input": input });
    let text = vec![serde_json::to_string(&y)?];
    emit(c.format, "layer-apply", config, json!({ "output": y }), &text);
    Ok(())
}

fn cmd_cyclic_dims(n: Option<usize>, d: Option<usize>, k: Option<usize>, oracle: bool, c: &Common) -> CmdResult {
    let k = need(k, "--k")?;
    let budget = Budget::from_env();
    let (label, formula, spec) = match (n, d) {
        (Some(n), None) => (format!("C_{n}"), cyclic_invariant_dim(n, k)?, cyclic_generators(n)?),
        (None, Some(d)) => (format!("C_{d} x C_{d}"), translation_invariant_dim(d, k)?, translation_generators(d)?),
        _ => {
            return Err(Error::Invalid {
                param: "--n/--d".into(),
                msg: "give exactly one of --n (cyclic) or --d (translation)".into(),
            }
            .into())
        }
    };
    let config = json!({ "n": n, "d": d, "k": k, "oracle": oracle });
    let mut text = vec![format!("group={label} k={k} dim={formula}")];
    let mut result = json!({ "group": label, "dim": formula.to_string() });
    if oracle {
        let orbits = orbit_count_on_tuples(&spec, k, &budget)?;
        text.push(format!("formula {formula}, oracle {orbits}"));
        result["orbit_count"] = json!(orbits);
        if formula != orbits as u128 {
            emit(c.format, "cyclic-dims", config, result, &text);
            return Err(Error::Arithmetic("formula and oracle disagree".into()).into());
        }
    }
    emit(c.format, "cyclic-dims", config, result, &text);
    Ok(())
}

fn read_image(path: &Path) -> Result<GridImage, Error> {
    existing(path, "--input")?;
    let text = std::fs::read_to_string(path)?;
    if text.trim_start().starts_with('[') {
        let rows: Vec<Vec<f64>> = serde_json::from_str(&text)?;
        GridImage::from_rows(&rows)
    } else {
        GridImage::from_csv(&text)
    }
}

fn cmd_dft(input: Option<PathBuf>, check_diag: bool, d: usize, trials: usize, c: &Common) -> CmdResult {
    if check_diag {
        if d == 0 {
            return Err(Error::Invalid {
                param: "--d".into(),
                msg: "must be positive".into(),
            }
            .into());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
        let dev = verify_diagonalization(d, trials, &mut rng);
        let config = json!({ "check_diag": true, "d": d, "trials": trials, "seed": c.seed });
        let text = vec![format!("d={d} trials={trials} max_deviation={dev:e}")];
        emit(c.format, "dft", config, json!({ "max_deviation": dev }), &text);
        return Ok(());
    }
    let input = need(input, "--input")?;
    let x = read_image(&input)?;
    let z = dft2(&x);
    let rt = round_trip_error(&x);
    let config = json!({ "input": input });
    let spectral = z.to_json();
    let text = vec![serde_json::to_string(&spectral)?, format!("round_trip_error={rt:e}")];
    emit(c.format, "dft", config, json!({ "spectral": spectral, "round_trip_error": rt }), &text);
    Ok(())
}

fn davenport_text(cert: &DavenportCertificate) -> String {
    match cert.davenport_constant {
        Some(dc) => format!("D={dc}, zero-sum-free witness length {}", cert.witness.degree()),
        None => format!(
            "D not certified: lengths <= {} checked, longest zero-sum-free found {}",
            cert.checked_up_to_length, cert.max_zero_sum_free_length
        ),
    }
}

fn cmd_davenport(d: Option<usize>, node_budget: u64, c: &Common) -> CmdResult {
    let d = need(d, "--d")?;
    let cert = davenport_constant(d, node_budget)?;
    let config = json!({ "d": d, "node_budget": node_budget });
    let text = vec![
        davenport_text(&cert),
        format!("witness {}", serde_json::to_string(&cert.witness)?),
    ];
    emit(c.format, "davenport", config, serde_json::to_value(&cert)?, &text);
    if cert.complete {
        Ok(())
    } else {
        Err(Error::Budget {
            what: "davenport search nodes".into(),
            requested: cert.nodes_visited as u128,
            budget: node_budget as u128,
            hint: " (raise --node-budget)".into(),
        }
        .into())
    }
}

fn cmd_decompose(d: Option<usize>, monomial: Option<PathBuf>, c: &Common) -> CmdResult {
    let d = need(d, "--d")?;
    let path = need(monomial, "--monomial")?;
    existing(&path, "--monomial")?;
    let s = sequence_from_json(d, &std::fs::read_to_string(&path)?)?;
    let factors = decompose_invariant_monomial(&s)?;
    let config = json!({ "d": d, "monomial": path });
    let mut text = vec![format!("degree {} -> {} factors", s.degree(), factors.len())];
    for f in &factors {
        text.push(serde_json::to_string(f)?);
    }
    let result = json!({
        "degree": s.degree(),
        "max_factor_degree": factors.iter().map(|f| f.degree()).max().unwrap_or(0),
        "factors": factors,
    });
    emit(c.format, "decompose", config, result, &text);
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_conjectures(
    nmax: Option<usize>,
    input: Option<PathBuf>,
    cap: &str,
    arithmetic: ArithmeticArg,
    jobs: usize,
    out: Option<PathBuf>,
    json_out: Option<PathBuf>,
    c: &Common,
) -> CmdResult {
    let policy: CapPolicy = cap.parse()?;
    let opts = GeneratorOptions {
        arithmetic: match arithmetic {
            ArithmeticArg::Exact => Arithmetic::Exact,
            ArithmeticArg::Modular => Arithmetic::Modular,
        },
        ..Default::default()
    };
    let result: SweepResult = match (nmax, &input) {
        (Some(n), None) => sweep(n, policy, &opts, jobs)?,
        (None, Some(path)) => {
            existing(path, "--in")?;
            let text = std::fs::read_to_string(path)?;
            let mut graphs = Vec::new();
            for (i, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with(">>") {
                    continue;
                }
                let g = parse_graph6(line).map_err(|e| Error::Parse {
                    line: i + 1,
                    msg: e.to_string(),
                })?;
                graphs.push((line.to_string(), g));
            }
            sweep_graphs(graphs, policy, &opts, jobs)?
        }
        _ => {
            return Err(Error::Invalid {
                param: "--nmax/--in".into(),
                msg: "give exactly one of --nmax or --in".into(),
            }
            .into())
        }
    };
    let config = json!({
        "nmax": nmax,
        "in": input,
        "cap": policy.to_string(),
        "arithmetic": arithmetic,
        "jobs": jobs,
    });
    if let Some(path) = &json_out {
        let doc = json!({ "version": VERSION, "config": config, "reports": result.reports, "summary": result.summary });
        let mut w = BufWriter::new(File::create(path)?);
        serde_json::to_writer_pretty(&mut w, &doc)?;
        writeln!(w)?;
        w.flush()?;
    }
    match &out {
        Some(path) => write_summary_csv(&result.reports, BufWriter::new(File::create(path)?))?,
        None if c.format == Format::Text => {
            println!("{}", header("conjectures", &config));
            write_summary_csv(&result.reports, io::stdout().lock())?;
        }
        None => {}
    }
    if c.format == Format::Json {
        let doc = json!({ "version": VERSION, "subcommand": "conjectures", "config": config, "result": result });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        for row in &result.summary {
            eprintln!(
                "n={} graphs={} A: true={} false={} capped={} B: true={} false={} capped={}",
                row.n, row.graphs, row.a.holds, row.a.fails, row.a.capped, row.b.holds, row.b.fails, row.b.capped
            );
        }
    }
    let bad: Vec<&str> = result.counterexamples().map(|r| r.graph6.as_str()).collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::Counterexample(bad.join(", ")))
    }
}

fn dispatch(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Dims { common, .. } if common.selftest => run_selftest("dims", &common),
        Command::Basis { common, .. } if common.selftest => run_selftest("basis", &common),
        Command::LayerApply { common, .. } if common.selftest => run_selftest("layer-apply", &common),
        Command::CyclicDims { common, .. } if common.selftest => run_selftest("cyclic-dims", &common),
        Command::Dft { common, .. } if common.selftest => run_selftest("dft", &common),
        Command::Davenport { common, .. } if common.selftest => run_selftest("davenport", &common),
        Command::Decompose { common, .. } if common.selftest => run_selftest("decompose", &common),
        Command::Conjectures { common, .. } if common.selftest => run_selftest("conjectures", &common),
        Command::Dims { m, k, d, sizes, oracle, common } => cmd_dims(m, k, d, sizes, oracle, &common),
        Command::Basis { k, d, sizes, out, common } => cmd_basis(k, d, sizes, out, &common),
        Command::LayerApply { weights, input, common } => cmd_layer_apply(weights, input, &common),
        Command::CyclicDims { n, d, k, oracle, common } => cmd_cyclic_dims(n, d, k, oracle, &common),
        Command::Dft { input, check_diag, d, trials, common } => cmd_dft(input, check_diag, d, trials, &common),
        Command::Davenport { d, node_budget, common } => cmd_davenport(d, node_budget, &common),
        Command::Decompose { d, monomial, common } => cmd_decompose(d, monomial, &common),
        Command::Conjectures { nmax, input, cap, arithmetic, jobs, out, json, common } => {
            cmd_conjectures(nmax, input, &cap, arithmetic, jobs, out, json, &common)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Counterexample(ids)) => {
            eprintln!("counterexample: {ids}");
            ExitCode::from(EXIT_COUNTEREXAMPLE)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_budget() { EXIT_BUDGET } else { EXIT_VALIDATION })
        }
    }
}
