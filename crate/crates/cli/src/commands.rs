use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use catcode::codes::presets::{build_preset, PRESETS};
use catcode::codes::CodeError;
use catcode::inference::{run_trials, Decoder, EnsembleOutput, InferenceError, NoiseModel};
use catcode::metrics::{
    amkl_coefficient, collision_number, hamming_stats, mutual_information, mutual_information_all,
    CollisionMode, MetricsError, MetricsReport, MiPair,
};
use catcode::{theoretical_min_collision, Codebook, GaussInt};
use serde::Serialize;

use crate::args::{
    DecodeArgs, EncodeArgs, EncodeMode, GenArgs, MetricsArgs, NoiseArg, SchemeArg, SimulateArgs,
};
use crate::CliError;

fn code_err(e: CodeError) -> CliError {
    CliError::Param(e.to_string())
}

fn metrics_err(e: MetricsError) -> CliError {
    match e {
        MetricsError::CapExceeded { .. } => CliError::Cap(e.to_string()),
        MetricsError::BadWeights(_) | MetricsError::ShapeMismatch(_) => CliError::Data(e.to_string()),
        _ => CliError::Param(e.to_string()),
    }
}

fn inference_err(e: InferenceError) -> CliError {
    match e {
        InferenceError::BadNoise(_) | InferenceError::BadArguments(_) => {
            CliError::Param(e.to_string())
        }
        _ => CliError::Data(e.to_string()),
    }
}

/// Write failures on stdout; a closed pipe ends the process quietly.
fn io_err(e: io::Error) -> CliError {
    if e.kind() == io::ErrorKind::BrokenPipe {
        std::process::exit(0);
    }
    CliError::Data(e.to_string())
}

fn read_text(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Data(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn load_codebook(path: &Path) -> Result<Codebook, CliError> {
    let text = read_text(path)?;
    Codebook::from_json(&text).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn open_output(path: Option<&PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(fs::File::create(p).map_err(|e| {
            CliError::Data(format!("{}: {e}", p.display()))
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json<T: Serialize>(value: &T, path: Option<&PathBuf>) -> Result<(), CliError> {
    let mut out = open_output(path)?;
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    writeln!(out, "{text}")
        .and_then(|()| out.flush())
        .map_err(io_err)
}

/// Reads decimal IDs, one per line; blank lines are skipped.
fn read_ids(text: &str, n_classes: u64) -> Result<Vec<u64>, CliError> {
    let mut ids = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let id: u64 = t
            .parse()
            .map_err(|_| CliError::Data(format!("line {}: '{t}' is not a decimal ID", i + 1)))?;
        if id >= n_classes {
            return Err(CliError::Data(format!(
                "line {}: ID {id} out of range for {n_classes} classes",
                i + 1
            )));
        }
        ids.push(id);
    }
    Ok(ids)
}

fn need<T>(value: Option<T>, flag: &str, scheme: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Param(format!("--{flag} is required for the {scheme} scheme")))
}

fn int_moduli(raw: &[String]) -> Result<Vec<u64>, CliError> {
    raw.iter()
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| CliError::Param(format!("'{s}' is not an integer modulus")))
        })
        .collect()
}

fn gauss_moduli(raw: &[String]) -> Result<Vec<GaussInt>, CliError> {
    raw.iter()
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|e| CliError::Param(format!("'{s}': {e}")))
        })
        .collect()
}

/// Smallest `k` whose `k` smallest moduli already cover `n` classes.
fn covering_k(n: u64, sizes: &[u64]) -> u32 {
    let sizes: Vec<u32> = sizes.iter().map(|&s| s.min(u32::MAX as u64) as u32).collect();
    theoretical_min_collision(n, &sizes).map_or(sizes.len() as u32, |b| b + 1)
}

fn frequency_order(path: &Path, n: u64) -> Result<Vec<u64>, CliError> {
    let listed = read_ids(&read_text(path)?, n)?;
    let mut seen = vec![false; n as usize];
    for &id in &listed {
        if std::mem::replace(&mut seen[id as usize], true) {
            return Err(CliError::Data(format!("ID {id} listed twice in the frequency file")));
        }
    }
    let mut order = listed;
    order.extend((0..n).filter(|&id| !seen[id as usize]));
    Ok(order)
}

fn build(a: &GenArgs) -> Result<Codebook, CliError> {
    if let Some(name) = &a.preset {
        let mut cb = build_preset(name, a.seed, a.n).map_err(code_err)?;
        if let (Some(path), catcode::Scheme::Coo) = (&a.frequency, cb.scheme()) {
            let bits = cb.total_bits();
            let order = frequency_order(path, cb.n_classes())?;
            cb = Codebook::coo(cb.n_classes(), bits, Some(order)).map_err(code_err)?;
        }
        return Ok(cb);
    }
    let scheme = a.scheme.expect("clap requires --scheme without --preset");
    let name = format!("{scheme:?}").to_lowercase();
    let n = need(a.n, "n", &name)?;
    let k = a.k;
    let cb = match scheme {
        SchemeArg::Polynomial => {
            let k = k.unwrap_or(2);
            match (a.p, &a.points) {
                (Some(p), Some(points)) => Codebook::polynomial(n, k, p, points.clone()),
                (Some(p), None) => {
                    let r = need(a.r, "r", &name)?;
                    Codebook::polynomial(n, k, p, (0..r as u64).collect())
                }
                (None, points) => {
                    let r = match points {
                        Some(pts) => pts.len(),
                        None => need(a.r, "r", &name)?,
                    };
                    let auto = Codebook::polynomial_auto(n, k, r, a.epsilon).map_err(code_err)?;
                    match points {
                        Some(pts) => {
                            let p = auto.site_sizes()[0] as u64;
                            Codebook::polynomial(n, k, p, pts.clone())
                        }
                        None => Ok(auto),
                    }
                }
            }
        }
        SchemeArg::Remainder => match &a.moduli {
            Some(raw) => {
                let moduli = int_moduli(raw)?;
                let k = k.unwrap_or_else(|| covering_k(n, &moduli));
                Codebook::remainder(n, k, moduli)
            }
            None => Codebook::remainder_auto(n, k.unwrap_or(2), need(a.r, "r", &name)?, a.epsilon),
        },
        SchemeArg::Gauss => match &a.moduli {
            Some(raw) => {
                let moduli = gauss_moduli(raw)?;
                match k {
                    Some(k) => Codebook::gauss(n, k, moduli),
                    None => (1..=moduli.len() as u32)
                        .map(|k| Codebook::gauss(n, k, moduli.clone()))
                        .find(|r| !matches!(r, Err(CodeError::ModulusTooSmall(_))))
                        .unwrap_or_else(|| Codebook::gauss(n, moduli.len() as u32, moduli)),
                }
            }
            None => Codebook::gauss_auto(n, k.unwrap_or(2), need(a.r, "r", &name)?, a.epsilon),
        },
        SchemeArg::Coo => {
            let bits = need(a.bits, "bits", &name)?;
            let order = a
                .frequency
                .as_deref()
                .map(|p| frequency_order(p, n))
                .transpose()?;
            Codebook::coo(n, bits, order)
        }
        SchemeArg::Rmp => {
            let m = need(a.m, "m", &name)?;
            let kept = need(a.kept, "kept", &name)?;
            Codebook::rmp(n, m, kept, a.seed)
        }
        SchemeArg::Ecoc => {
            let bits = need(a.bits, "bits", &name)?;
            let bits = u32::try_from(bits)
                .map_err(|_| CliError::Param(format!("{bits} bits is too many")))?;
            if a.random {
                Codebook::ecoc_random(n, bits, a.seed)
            } else {
                Codebook::ecoc(n, bits)
            }
        }
    };
    cb.map_err(code_err)
}

pub fn gen(a: GenArgs) -> Result<(), CliError> {
    let cb = build(&a)?.with_anti(a.anti);
    let bound = theoretical_min_collision(cb.n_classes(), cb.site_sizes())
        .map_or("none".to_string(), |b| b.to_string());
    let summary = format!(
        "scheme={} n_classes={} site_sizes={:?} min_collision_bound={} total_bits={}",
        cb.scheme().name(),
        cb.n_classes(),
        cb.site_sizes(),
        bound,
        cb.total_bits()
    );
    let json = cb.to_json();
    match &a.out {
        Some(path) => {
            fs::write(path, json + "\n")
                .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
            println!("{summary}");
        }
        None => {
            println!("{json}");
            eprintln!("{summary}");
        }
    }
    Ok(())
}

pub fn encode(a: EncodeArgs) -> Result<(), CliError> {
    let cb = load_codebook(&a.codebook)?;
    let anti = a.anti || cb.anti();
    let cb = cb.with_anti(anti);
    let mode = if a.anti { EncodeMode::Rhot } else { a.mode };
    let ids = read_ids(&read_text(&a.input)?, cb.n_classes())?;
    let mut out = open_output(a.output.as_ref())?;
    for id in ids {
        match mode {
            EncodeMode::Sites => {
                let sites = cb.encode(id).map_err(|e| CliError::Data(e.to_string()))?;
                write!(out, "{id}").map_err(io_err)?;
                for v in sites.values() {
                    write!(out, ",{v}").map_err(io_err)?;
                }
                writeln!(out).map_err(io_err)?;
            }
            EncodeMode::Rhot => {
                let v = cb.to_rhot(id).map_err(|e| CliError::Data(e.to_string()))?;
                writeln!(out, "{id},{}", v.bit_string()).map_err(io_err)?;
            }
        }
    }
    out.flush().map_err(io_err)
}

pub fn decode(a: DecodeArgs) -> Result<(), CliError> {
    let cb = load_codebook(&a.codebook)?;
    let text = read_text(&a.input)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| CliError::Data(format!("{}: {e}", a.input.display())))?;
    let items = match value {
        serde_json::Value::Array(items) => items,
        single => vec![single],
    };
    if !(a.floor >= 0.0 && a.floor < 1.0) {
        return Err(CliError::Param(format!("floor {} outside [0, 1)", a.floor)));
    }
    let decoder = Decoder::with_floor(&cb, a.floor);
    let mut out = open_output(a.output.as_ref())?;
    for (i, item) in items.into_iter().enumerate() {
        let ensemble: EnsembleOutput = serde_json::from_value(item)
            .map_err(|e| CliError::Data(format!("entry {}: {e}", i + 1)))?;
        let id = decoder
            .decode(&ensemble)
            .map_err(|e| CliError::Data(format!("entry {}: {e}", i + 1)))?;
        writeln!(out, "{id}").map_err(io_err)?;
    }
    out.flush().map_err(io_err)
}

pub fn metrics(a: MetricsArgs) -> Result<(), CliError> {
    let cb = load_codebook(&a.codebook)?;
    let mut report = MetricsReport::default();
    if a.collision || a.verify_minimal || a.sampled.is_some() {
        let mode = match a.sampled {
            Some(samples) if !a.verify_minimal => CollisionMode::Sampled {
                samples,
                seed: a.seed,
            },
            Some(_) => {
                return Err(CliError::Param(
                    "--verify-minimal needs the exhaustive scan; drop --sampled".into(),
                ))
            }
            None => CollisionMode::Exhaustive { cap: a.cap },
        };
        let rep = collision_number(&cb, mode).map_err(metrics_err)?;
        if a.verify_minimal && !rep.is_minimal() {
            write_json(&rep, a.output.as_ref())?;
            return Err(CliError::NotMinimal(format!(
                "collision number {} differs from the lower bound {:?}",
                rep.max_collisions, rep.theoretical_bound
            )));
        }
        report.collision = Some(rep);
    }
    for pair in a.mi.chunks(2) {
        let (i, j) = (pair[0], pair[1]);
        let mi = mutual_information(&cb, i, j, a.mi_cap).map_err(metrics_err)?;
        report.mi_pairs.push(MiPair { i, j, mi });
    }
    if a.mi_all {
        report
            .mi_pairs
            .extend(mutual_information_all(&cb, a.mi_cap).map_err(metrics_err)?);
    }
    if a.amkl {
        let weights = match &a.weights {
            Some(path) => Some(parse_weights(&read_text(path)?)?),
            None => None,
        };
        report.amkl = Some(amkl_coefficient(&cb, weights.as_deref()).map_err(metrics_err)?);
    }
    if let Some(samples) = a.hamming {
        report.hamming = Some(hamming_stats(&cb, samples, a.seed).map_err(metrics_err)?);
    }
    write_json(&report, a.output.as_ref())
}

fn parse_weights(text: &str) -> Result<Vec<f64>, CliError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            l.trim()
                .parse()
                .map_err(|_| CliError::Data(format!("weights line {}: '{}'", i + 1, l.trim())))
        })
        .collect()
}

#[derive(Serialize)]
struct SimulationRow {
    codebook: String,
    scheme: &'static str,
    n_classes: u64,
    n_sites: usize,
    accuracy: f64,
    ci95: [f64; 2],
    trials: u64,
    seed: u64,
}

#[derive(Serialize)]
struct Comparison {
    noise: NoiseModel,
    rows: Vec<SimulationRow>,
}

pub fn simulate(a: SimulateArgs) -> Result<(), CliError> {
    let noise = match a.noise {
        NoiseArg::Delta => NoiseModel::Delta,
        NoiseArg::Symmetric => NoiseModel::Symmetric { eta: a.eta },
        NoiseArg::Dirichlet => NoiseModel::Dirichlet { alpha: a.alpha },
    };
    noise.validate().map_err(inference_err)?;
    let mut books = Vec::new();
    for path in &a.codebook {
        books.push((path.display().to_string(), load_codebook(path)?));
    }
    for name in &a.preset {
        books.push((name.clone(), build_preset(name, a.seed, None).map_err(code_err)?));
    }
    if books.is_empty() {
        return Err(CliError::Param("give at least one --codebook or --preset".into()));
    }
    let mut rows = Vec::new();
    for (label, cb) in &books {
        let rep = run_trials(cb, noise, a.trials, a.seed).map_err(inference_err)?;
        rows.push((label.clone(), cb, rep));
    }
    if rows.len() == 1 {
        let (_, _, rep) = &rows[0];
        return write_json(rep, a.output.as_ref());
    }
    let table = Comparison {
        noise,
        rows: rows
            .into_iter()
            .map(|(codebook, cb, rep)| SimulationRow {
                codebook,
                scheme: cb.scheme().name(),
                n_classes: cb.n_classes(),
                n_sites: cb.n_sites(),
                accuracy: rep.accuracy,
                ci95: rep.ci95,
                trials: rep.trials,
                seed: rep.seed,
            })
            .collect(),
    };
    write_json(&table, a.output.as_ref())
}

pub fn presets() -> Result<(), CliError> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for p in PRESETS {
        writeln!(out, "{:<18} N={:<6} {}", p.name, p.n_classes, p.description)
            .map_err(io_err)?;
    }
    Ok(())
}
