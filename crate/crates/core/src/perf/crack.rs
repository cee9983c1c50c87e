use std::sync::atomic::{AtomicU64, Ordering};
use std::thread;
use std::time::{Duration, Instant};

use serde::Serialize;

use super::{predict_crack_time, HardwareModel, KeyspaceSpec, MAX_SINGLE_BLOCK_BYTES};
use crate::error::{Error, Result};
use crate::sha1::{digest_single_block, BitMessage, Digest, Sha1};
use crate::sim::simulate;

/// Largest keyspace [`crack`] will enumerate.
pub const CRACK_LIMIT: u64 = 1_000_000_000;

/// Hash engine used per candidate.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    /// Software SHA-1.
    #[default]
    Core,
    /// The cycle-accurate datapath model; 80 ticks per block.
    Simulator,
}

impl std::str::FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "core" | "fast" => Ok(Engine::Core),
            "sim" | "simulator" => Ok(Engine::Simulator),
            other => Err(Error::Domain(format!("unknown engine {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CrackOptions {
    pub workers: usize,
    pub engine: Engine,
    /// Device used for `predicted_time`.
    pub hardware: HardwareModel,
}

impl Default for CrackOptions {
    fn default() -> Self {
        CrackOptions {
            workers: thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
            engine: Engine::Core,
            hardware: HardwareModel::default(),
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct CrackResult {
    /// Lexicographically smallest candidate hashing to the target.
    pub found: Option<String>,
    pub candidates_tested: u64,
    pub wall_time: Duration,
    /// Worst-case time on the modeled device; `None` when candidates span
    /// more than one block.
    pub predicted_time: Option<Duration>,
}

/// Single-line serialized form of a crack run.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct CrackReport {
    pub target: Digest,
    pub alphabet: String,
    pub length: u32,
    pub found: Option<String>,
    pub candidates_tested: u64,
    pub wall_time_ms: f64,
    pub predicted_ms: Option<f64>,
}

impl CrackReport {
    pub fn new(target: &Digest, spec: &KeyspaceSpec, result: &CrackResult) -> Self {
        CrackReport {
            target: *target,
            alphabet: spec.alphabet.as_string(),
            length: spec.length,
            found: result.found.clone(),
            candidates_tested: result.candidates_tested,
            wall_time_ms: result.wall_time.as_secs_f64() * 1e3,
            predicted_ms: result.predicted_time.map(|d| d.as_secs_f64() * 1e3),
        }
    }

    /// One JSON object, no trailing newline.
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

struct WorkerOutcome {
    found: Option<u64>,
    tested: u64,
}

/// Exhaustive search of `spec` for a preimage of `target`.
///
/// The ranked keyspace is cut into contiguous ranges, one per worker. A
/// worker stops at its first match or once it passes the lowest match index
/// published by any worker, so the reported candidate is the global
/// lexicographic minimum regardless of worker count.
pub fn crack(target: &Digest, spec: &KeyspaceSpec, opts: &CrackOptions) -> Result<CrackResult> {
    if opts.workers == 0 {
        return Err(Error::Domain("at least one worker is required".into()));
    }
    let size = spec.size().unwrap_or(u128::MAX);
    if size > CRACK_LIMIT as u128 {
        return Err(Error::KeyspaceTooLarge {
            size,
            limit: CRACK_LIMIT as u128,
        });
    }
    let size = size as u64;
    let predicted_time = predict_crack_time(spec, opts.hardware.ni, opts.hardware.ts_ns).ok();
    let start = Instant::now();

    let workers = (opts.workers as u64).min(size.max(1));
    let best = AtomicU64::new(u64::MAX);
    let outcomes: Vec<WorkerOutcome> = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|i| {
                let lo = size * i / workers;
                let hi = size * (i + 1) / workers;
                let best = &best;
                scope.spawn(move || search_range(target, spec, opts.engine, lo, hi, best))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });

    let found = outcomes.iter().filter_map(|o| o.found).min();
    let candidates_tested = outcomes.iter().map(|o| o.tested).sum();
    Ok(CrackResult {
        found: found.and_then(|i| spec.candidate(i as u128)),
        candidates_tested,
        wall_time: start.elapsed(),
        predicted_time,
    })
}

fn search_range(
    target: &Digest,
    spec: &KeyspaceSpec,
    engine: Engine,
    lo: u64,
    hi: u64,
    best: &AtomicU64,
) -> WorkerOutcome {
    let mut tested = 0;
    if lo >= hi {
        return WorkerOutcome { found: None, tested };
    }
    let radix = spec.alphabet.len();
    let single_block = spec.max_candidate_bytes() <= MAX_SINGLE_BLOCK_BYTES;
    let mut digits = spec.digits(lo as u128);
    let mut buf = Vec::with_capacity(spec.max_candidate_bytes());

    for index in lo..hi {
        if index > best.load(Ordering::Relaxed) {
            break;
        }
        buf.clear();
        for &d in &digits {
            buf.extend_from_slice(spec.alphabet.encoded(d));
        }
        let h = match engine {
            Engine::Core if single_block => digest_single_block(&buf),
            Engine::Core => Sha1::digest(&buf),
            Engine::Simulator => simulate(&BitMessage::from_bytes(buf.as_slice()).expect("short candidate")).0,
        };
        tested += 1;
        if h == *target {
            best.fetch_min(index, Ordering::Relaxed);
            return WorkerOutcome {
                found: Some(index),
                tested,
            };
        }
        // Odometer increment, last position fastest.
        for slot in digits.iter_mut().rev() {
            *slot += 1;
            if *slot < radix {
                break;
            }
            *slot = 0;
        }
    }
    WorkerOutcome { found: None, tested }
}
