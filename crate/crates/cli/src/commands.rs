use std::fs::File;
use std::io::{self, BufWriter, Read};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use anyhow::Context;
use sha1_assp::perf::{
    crack, hashes_per_second, reproduce_table1, table1_delimited, Alphabet, CrackOptions, CrackReport, Engine,
    KeyspaceSpec, CRACK_LIMIT,
};
use sha1_assp::sha1::{digest_fast, preprocess};
use sha1_assp::sim::SimMessageJob;
use sha1_assp::vectors::{check_vectors, parse_vectors, BUNDLED_VECTORS};
use sha1_assp::{BitMessage, Digest, Sha1};

use crate::{config, Cli, CliError, Command};

pub fn run(cli: Cli) -> Result<(), CliError> {
    let machine = cli.machine;
    let cfg = cli.config.as_deref();
    match cli.command {
        Command::Hash {
            files,
            bits,
            vectors,
            bundled,
        } => {
            if bundled {
                return check_vector_text(BUNDLED_VECTORS, "bundled", machine);
            }
            if let Some(path) = vectors {
                let text = std::fs::read_to_string(&path)
                    .with_context(|| format!("cannot read {}", path.display()))?;
                return check_vector_text(&text, &path.display().to_string(), machine);
            }
            hash(&files, bits)
        }
        Command::Simulate { input, bits, trace } => simulate(input.as_deref(), bits, trace.as_deref(), machine),
        Command::ReproduceTable {
            tolerance,
            export,
            delimiter,
        } => reproduce_table(tolerance, export.as_deref(), delimiter, machine),
        Command::Crack {
            target,
            alphabet,
            length,
            workers,
            engine,
            ni,
            ts_ns,
        } => {
            let hardware = config::resolve(cfg, ni, ts_ns)?;
            let target: Digest = target.parse().map_err(|e| CliError::Usage(format!("--target: {e}")))?;
            let alphabet = Alphabet::parse(&alphabet).map_err(|e| CliError::Usage(e.to_string()))?;
            let spec = KeyspaceSpec::new(alphabet, length);
            match spec.size() {
                Some(n) if n <= CRACK_LIMIT as u128 => {}
                size => {
                    return Err(CliError::Usage(format!(
                        "keyspace of {} candidates exceeds the limit of {CRACK_LIMIT}",
                        size.map_or_else(|| "more than 2^128".to_string(), |n| n.to_string())
                    )))
                }
            }
            let engine: Engine = engine.parse().map_err(|e: sha1_assp::Error| CliError::Usage(e.to_string()))?;
            let mut opts = CrackOptions {
                engine,
                hardware,
                ..CrackOptions::default()
            };
            if let Some(w) = workers {
                if w == 0 {
                    return Err(CliError::Usage("--workers must be at least 1".into()));
                }
                opts.workers = w;
            }
            run_crack(&target, &spec, &opts, machine)
        }
        Command::Bench { seconds, ni, ts_ns } => {
            let hardware = config::resolve(cfg, ni, ts_ns)?;
            if !(seconds.is_finite() && seconds > 0.0) {
                return Err(CliError::Usage("--seconds must be positive".into()));
            }
            bench(seconds, hardware.ni, hardware.ts_ns, machine)
        }
    }
}

fn read_input(path: Option<&Path>) -> io::Result<Vec<u8>> {
    let mut buf = Vec::new();
    match path {
        None => io::stdin().read_to_end(&mut buf)?,
        Some(p) if p == Path::new("-") => io::stdin().read_to_end(&mut buf)?,
        Some(p) => File::open(p)?.read_to_end(&mut buf)?,
    };
    Ok(buf)
}

fn display_name(path: Option<&Path>) -> String {
    path.map_or_else(|| "-".to_string(), |p| p.display().to_string())
}

fn load_message(path: Option<&Path>, bits: Option<u64>) -> Result<BitMessage, String> {
    let name = display_name(path);
    let bytes = read_input(path).map_err(|e| format!("{name}: {e}"))?;
    let m = match bits {
        Some(n) => BitMessage::from_bits(bytes, n),
        None => BitMessage::from_bytes(bytes),
    };
    m.map_err(|e| format!("{name}: {e}"))
}

fn hash(files: &[PathBuf], bits: Option<u64>) -> Result<(), CliError> {
    let inputs: Vec<Option<&Path>> = if files.is_empty() {
        vec![None]
    } else {
        files.iter().map(|p| Some(p.as_path())).collect()
    };
    let mut failed = false;
    for input in inputs {
        match load_message(input, bits) {
            Ok(m) => {
                let d = match bits {
                    None => Sha1::digest(m.as_bytes()),
                    Some(_) => digest_fast(&m),
                };
                println!("{d}  {}", display_name(input));
            }
            Err(e) => {
                eprintln!("sha1-assp: {e}");
                failed = true;
            }
        }
    }
    if failed {
        Err(CliError::Failure(String::new()))
    } else {
        Ok(())
    }
}

fn check_vector_text(text: &str, source: &str, machine: bool) -> Result<(), CliError> {
    let vectors = parse_vectors(text).map_err(|e| CliError::Failure(format!("{source}: {e}")))?;
    let outcomes = check_vectors(&vectors);
    let passed = outcomes.iter().filter(|o| o.pass()).count();
    for o in &outcomes {
        let status = if o.pass() { "pass" } else { "fail" };
        if machine {
            println!("{} {status} {} {}", o.line, o.expected, o.actual);
        } else {
            println!("{:4} {:4}  {}  {}", o.line, status.to_uppercase(), o.actual, o.label);
        }
    }
    let pct = if outcomes.is_empty() {
        100.0
    } else {
        100.0 * passed as f64 / outcomes.len() as f64
    };
    if !machine {
        println!("{passed}/{} vectors agree ({pct:.1}%)", outcomes.len());
    }
    if passed == outcomes.len() {
        Ok(())
    } else {
        Err(CliError::Failure(format!("{} vector(s) disagree", outcomes.len() - passed)))
    }
}

fn simulate(input: Option<&Path>, bits: Option<u64>, trace: Option<&Path>, machine: bool) -> Result<(), CliError> {
    let m = load_message(input, bits).map_err(CliError::Failure)?;
    let padded = preprocess(&m);
    let blocks = padded.block_count();
    let mut job = SimMessageJob::new(padded);
    if let Some(path) = trace {
        let file = File::create(path).with_context(|| format!("cannot create trace {}", path.display()))?;
        job.emit_trace(BufWriter::new(file))
            .with_context(|| format!("writing trace {}", path.display()))?;
    }
    let (d, cycles) = job.run_to_completion().context("simulation failed")?;
    if machine {
        println!("{d} {blocks} {cycles}");
    } else {
        println!("digest  {d}");
        println!("blocks  {blocks}");
        println!("cycles  {cycles}");
        if let Some(path) = trace {
            println!("trace   {} ({cycles} records)", path.display());
        }
    }
    Ok(())
}

fn reproduce_table(tolerance: f64, export: Option<&Path>, delimiter: char, machine: bool) -> Result<(), CliError> {
    if !(tolerance.is_finite() && tolerance >= 0.0) {
        return Err(CliError::Usage("--tolerance must be a non-negative number".into()));
    }
    let checks = reproduce_table1(tolerance);
    if !machine {
        println!(
            "{:>3} {:>7} {:>9} {:>10} {:>10} {:>8} {:>8} {:>8}  result",
            "NI", "Ts(ns)", "Rs pub", "Rs eq.", "delta", "PR", "PLUT", "occ."
        );
    }
    for c in &checks {
        let r = c.record;
        if machine {
            println!("{} {:.3} {:.3} {:.6} {:.6}", r.ni, r.ts_ns, r.rs_gbps, c.rs_computed, c.rs_delta);
        } else {
            println!(
                "{:>3} {:>7.3} {:>9.3} {:>10.6} {:>+10.6} {:>8.3} {:>8.3} {:>8}  {}",
                r.ni,
                r.ts_ns,
                r.rs_gbps,
                c.rs_computed,
                c.rs_delta,
                c.pr_computed,
                c.plut_computed,
                if c.occupancy_pass { "ok" } else { "off" },
                if c.rs_pass { "PASS" } else { "FAIL" }
            );
        }
    }
    if let Some(path) = export {
        std::fs::write(path, table1_delimited(delimiter)).with_context(|| format!("cannot write {}", path.display()))?;
    }
    let passed = checks.iter().filter(|c| c.rs_pass).count();
    if !machine {
        println!("{passed}/{} rows within ±{tolerance} Gbps", checks.len());
    }
    if passed == checks.len() {
        Ok(())
    } else {
        Err(CliError::Failure(format!(
            "{} row(s) outside tolerance",
            checks.len() - passed
        )))
    }
}

fn run_crack(target: &Digest, spec: &KeyspaceSpec, opts: &CrackOptions, machine: bool) -> Result<(), CliError> {
    let result = crack(target, spec, opts).context("crack failed")?;
    let report = CrackReport::new(target, spec, &result);
    if machine {
        println!("{}", report.to_line());
        return Ok(());
    }
    println!("target     {target}");
    println!(
        "keyspace   {} candidates (alphabet {:?}, length {})",
        spec.size().unwrap_or(0),
        report.alphabet,
        spec.length
    );
    match &result.found {
        Some(f) => println!("found      {f}"),
        None => println!("found      not found"),
    }
    println!("tested     {}", result.candidates_tested);
    println!("workers    {} ({:?} engine)", opts.workers, opts.engine);
    println!("wall time  {:.3} ms", report.wall_time_ms);
    match report.predicted_ms {
        Some(ms) => println!(
            "predicted  {ms:.3} ms worst case on {} instances @ {} ns",
            opts.hardware.ni, opts.hardware.ts_ns
        ),
        None => println!("predicted  n/a (candidates exceed one block)"),
    }
    Ok(())
}

fn measure(seconds: f64, mut hash_one: impl FnMut(u64) -> Digest) -> f64 {
    let budget = Duration::from_secs_f64(seconds);
    let start = Instant::now();
    let mut count = 0u64;
    let mut sink = 0u32;
    while start.elapsed() < budget {
        for _ in 0..64 {
            sink ^= hash_one(count).ha;
            count += 1;
        }
    }
    std::hint::black_box(sink);
    count as f64 / start.elapsed().as_secs_f64()
}

fn bench(seconds: f64, ni: u32, ts_ns: f64, machine: bool) -> Result<(), CliError> {
    let core = measure(seconds, |i| Sha1::digest(&i.to_be_bytes()));
    let sim = measure(seconds, |i| {
        sha1_assp::sim::simulate(&BitMessage::from_bytes(i.to_be_bytes()).expect("8 bytes")).0
    });
    let model = hashes_per_second(ni, ts_ns, 1).context("hardware model")?;
    if machine {
        println!("core measured {core:.1}");
        println!("simulator measured {sim:.1}");
        println!("model predicted {model:.1} {ni} {ts_ns}");
    } else {
        println!("software, this machine (one thread, 8-byte messages):");
        println!("  core       {core:>16.0} hashes/s");
        println!("  simulator  {sim:>16.0} hashes/s");
        println!("modeled silicon, {ni} instances @ {ts_ns} ns:");
        println!("  predicted  {model:>16.0} hashes/s");
        println!("The modeled figure describes hardware that is not present; it is not comparable to the software rates.");
    }
    Ok(())
}
