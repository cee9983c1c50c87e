//! Python bindings for the SHA-1 core, the datapath simulator and the
//! performance model.

use std::sync::Mutex;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use sha1_assp::perf::{self, Alphabet, CrackOptions, CrackReport, Engine, HardwareModel, KeyspaceSpec};
use sha1_assp::sha1::{self as core_sha1, digest_fast};
use sha1_assp::sim::{self as simmod, ClockTraceRecord, SimMessageJob};
use sha1_assp::{BitMessage, Error};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::TickAfterDone | Error::NotRunnable | Error::Io(_) => PyRuntimeError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn message(data: &[u8], bit_len: Option<u64>) -> PyResult<BitMessage> {
    match bit_len {
        Some(n) => BitMessage::from_bits(data.to_vec(), n),
        None => BitMessage::from_bytes(data.to_vec()),
    }
    .map_err(py_err)
}

#[pyclass(frozen, eq, hash, skip_from_py_object, module = "sha1_assp_py")]
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Digest {
    inner: sha1_assp::Digest,
}

#[pymethods]
impl Digest {
    #[staticmethod]
    fn from_hex(s: &str) -> PyResult<Self> {
        Ok(Digest {
            inner: s.parse().map_err(py_err)?,
        })
    }

    #[getter]
    fn hex(&self) -> String {
        self.inner.to_hex()
    }

    #[getter]
    fn words(&self) -> [u32; 5] {
        self.inner.words()
    }

    fn to_bytes(&self) -> Vec<u8> {
        self.inner.to_bytes().to_vec()
    }

    fn __str__(&self) -> String {
        self.inner.to_hex()
    }

    fn __repr__(&self) -> String {
        format!("Digest('{}')", self.inner)
    }
}

impl From<sha1_assp::Digest> for Digest {
    fn from(inner: sha1_assp::Digest) -> Self {
        Digest { inner }
    }
}

/// Incremental hasher; `digest()` does not consume the state.
#[pyclass(skip_from_py_object, module = "sha1_assp_py")]
#[derive(Clone, Default)]
pub struct Sha1 {
    inner: sha1_assp::Sha1,
}

#[pymethods]
impl Sha1 {
    #[new]
    #[pyo3(signature = (data = None))]
    fn new(data: Option<&[u8]>) -> Self {
        let mut h = Sha1::default();
        if let Some(d) = data {
            h.inner.update(d);
        }
        h
    }

    fn update(&mut self, data: &[u8]) {
        self.inner.update(data);
    }

    fn digest(&self) -> Digest {
        self.inner.clone().finalize().into()
    }

    fn hexdigest(&self) -> String {
        self.inner.clone().finalize().to_hex()
    }

    fn copy(&self) -> Self {
        self.clone()
    }
}

/// SHA-1 of `data`, optionally truncated to its first `bit_len` bits.
#[pyfunction]
#[pyo3(signature = (data, bit_len = None))]
fn sha1(data: &[u8], bit_len: Option<u64>) -> PyResult<Digest> {
    Ok(digest_fast(&message(data, bit_len)?).into())
}

/// Equation-level SHA-1, also returning the number of rounds executed.
#[pyfunction]
#[pyo3(signature = (data, bit_len = None))]
fn sha1_reference(data: &[u8], bit_len: Option<u64>) -> PyResult<(Digest, u64)> {
    let (d, rounds) = core_sha1::digest_with_rounds(&message(data, bit_len)?);
    Ok((d.into(), rounds))
}

#[pyfunction]
fn padding_len(k: u64) -> u32 {
    core_sha1::padding_len(k)
}

/// Padded message as a list of blocks of sixteen words.
#[pyfunction]
#[pyo3(signature = (data, bit_len = None))]
fn preprocess(data: &[u8], bit_len: Option<u64>) -> PyResult<Vec<[u32; 16]>> {
    Ok(core_sha1::preprocess(&message(data, bit_len)?)
        .blocks
        .iter()
        .map(|b| b.words)
        .collect())
}

#[pyclass(frozen, get_all, skip_from_py_object, module = "sha1_assp_py")]
#[derive(Clone, Copy)]
pub struct TraceRecord {
    cycle: u64,
    j: u64,
    n: u8,
    a: u32,
    b: u32,
    c: u32,
    d: u32,
    e: u32,
    w: u32,
    f: u32,
    k: u32,
    gv: u8,
}

#[pymethods]
impl TraceRecord {
    fn __str__(&self) -> String {
        ClockTraceRecord::from(*self).to_string()
    }
}

impl From<ClockTraceRecord> for TraceRecord {
    fn from(r: ClockTraceRecord) -> Self {
        TraceRecord {
            cycle: r.cycle,
            j: r.j,
            n: r.n,
            a: r.a,
            b: r.b,
            c: r.c,
            d: r.d,
            e: r.e,
            w: r.w,
            f: r.f,
            k: r.k,
            gv: r.gv,
        }
    }
}

impl From<TraceRecord> for ClockTraceRecord {
    fn from(r: TraceRecord) -> Self {
        ClockTraceRecord {
            cycle: r.cycle,
            j: r.j,
            n: r.n,
            a: r.a,
            b: r.b,
            c: r.c,
            d: r.d,
            e: r.e,
            w: r.w,
            f: r.f,
            k: r.k,
            gv: r.gv,
        }
    }
}

/// A message loaded into one simulated core, clocked from Python.
#[pyclass(module = "sha1_assp_py")]
pub struct Simulator {
    job: Mutex<SimMessageJob>,
}

#[pymethods]
impl Simulator {
    #[new]
    #[pyo3(signature = (data, bit_len = None, trace_path = None))]
    fn new(data: &[u8], bit_len: Option<u64>, trace_path: Option<&str>) -> PyResult<Self> {
        let mut job = SimMessageJob::from_message(&message(data, bit_len)?);
        if let Some(path) = trace_path {
            let file = std::fs::File::create(path).map_err(|e| py_err(e.into()))?;
            job.emit_trace(std::io::BufWriter::new(file)).map_err(py_err)?;
        }
        Ok(Simulator { job: Mutex::new(job) })
    }

    fn tick(&self) -> PyResult<TraceRecord> {
        let mut job = self.job.lock().expect("simulator lock");
        job.tick().map(Into::into).map_err(py_err)
    }

    /// Runs to the end; returns (digest, cycles).
    fn run(&self) -> PyResult<(Digest, u64)> {
        let mut job = self.job.lock().expect("simulator lock");
        job.run_to_completion()
            .map(|(d, c)| (d.into(), c))
            .map_err(py_err)
    }

    #[getter]
    fn done(&self) -> bool {
        self.job.lock().expect("simulator lock").is_done()
    }

    #[getter]
    fn cycles(&self) -> u64 {
        self.job.lock().expect("simulator lock").cycles()
    }

    #[getter]
    fn blocks(&self) -> u64 {
        self.job.lock().expect("simulator lock").padded().block_count()
    }

    /// RA..RE.
    #[getter]
    fn registers(&self) -> [u32; 5] {
        self.job.lock().expect("simulator lock").state().registers()
    }

    /// HA..HE.
    #[getter]
    fn accumulators(&self) -> Digest {
        self.job.lock().expect("simulator lock").state().accumulators().into()
    }
}

/// Hashes on a fresh simulated core; returns (digest, cycles).
#[pyfunction]
#[pyo3(signature = (data, bit_len = None))]
fn simulate(data: &[u8], bit_len: Option<u64>) -> PyResult<(Digest, u64)> {
    let (d, c) = simmod::simulate(&message(data, bit_len)?);
    Ok((d.into(), c))
}

#[pyfunction]
fn throughput_gbps(ni: u32, ts_ns: f64) -> PyResult<f64> {
    perf::throughput_gbps(ni, ts_ns).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (ni, ts_ns, blocks_per_candidate = 1))]
fn hashes_per_second(ni: u32, ts_ns: f64, blocks_per_candidate: u32) -> PyResult<f64> {
    perf::hashes_per_second(ni, ts_ns, blocks_per_candidate).map_err(py_err)
}

/// Worst-case seconds to exhaust the keyspace on the modeled device.
#[pyfunction]
#[pyo3(signature = (alphabet, length, ni = 48, ts_ns = 10.909))]
fn predict_crack_time(alphabet: &str, length: u32, ni: u32, ts_ns: f64) -> PyResult<f64> {
    let spec = KeyspaceSpec::new(Alphabet::parse(alphabet).map_err(py_err)?, length);
    perf::predict_crack_time(&spec, ni, ts_ns)
        .map(|d| d.as_secs_f64())
        .map_err(py_err)
}

#[pyclass(frozen, get_all, skip_from_py_object, module = "sha1_assp_py")]
#[derive(Clone, Copy)]
pub struct SynthesisRecord {
    ni: u32,
    nr: u32,
    pr: f64,
    nlut: u32,
    plut: f64,
    ts_ns: f64,
    rs_gbps: f64,
}

#[pyfunction]
fn table1() -> Vec<SynthesisRecord> {
    perf::TABLE1
        .iter()
        .map(|r| SynthesisRecord {
            ni: r.ni,
            nr: r.nr,
            pr: r.pr,
            nlut: r.nlut,
            plut: r.plut,
            ts_ns: r.ts_ns,
            rs_gbps: r.rs_gbps,
        })
        .collect()
}

#[pyclass(frozen, get_all, module = "sha1_assp_py")]
pub struct CrackResult {
    found: Option<String>,
    candidates_tested: u64,
    wall_time_ms: f64,
    predicted_ms: Option<f64>,
    report: String,
}

#[pyfunction]
#[pyo3(signature = (target, alphabet, length, workers = None, engine = "core", ni = 48, ts_ns = 10.909))]
fn crack(
    py: Python<'_>,
    target: &str,
    alphabet: &str,
    length: u32,
    workers: Option<usize>,
    engine: &str,
    ni: u32,
    ts_ns: f64,
) -> PyResult<CrackResult> {
    let target: sha1_assp::Digest = target.parse().map_err(py_err)?;
    let spec = KeyspaceSpec::new(Alphabet::parse(alphabet).map_err(py_err)?, length);
    let engine: Engine = engine.parse().map_err(py_err)?;
    let mut opts = CrackOptions {
        engine,
        hardware: HardwareModel { ni, ts_ns },
        ..CrackOptions::default()
    };
    if let Some(w) = workers {
        opts.workers = w;
    }
    let result = py
        .detach(|| perf::crack(&target, &spec, &opts))
        .map_err(py_err)?;
    let report = CrackReport::new(&target, &spec, &result);
    Ok(CrackResult {
        found: result.found,
        candidates_tested: result.candidates_tested,
        wall_time_ms: report.wall_time_ms,
        predicted_ms: report.predicted_ms,
        report: report.to_line(),
    })
}

#[pymodule]
fn sha1_assp_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Digest>()?;
    m.add_class::<Sha1>()?;
    m.add_class::<TraceRecord>()?;
    m.add_class::<Simulator>()?;
    m.add_class::<SynthesisRecord>()?;
    m.add_class::<CrackResult>()?;
    m.add_function(wrap_pyfunction!(sha1, m)?)?;
    m.add_function(wrap_pyfunction!(sha1_reference, m)?)?;
    m.add_function(wrap_pyfunction!(padding_len, m)?)?;
    m.add_function(wrap_pyfunction!(preprocess, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(throughput_gbps, m)?)?;
    m.add_function(wrap_pyfunction!(hashes_per_second, m)?)?;
    m.add_function(wrap_pyfunction!(predict_crack_time, m)?)?;
    m.add_function(wrap_pyfunction!(table1, m)?)?;
    m.add_function(wrap_pyfunction!(crack, m)?)?;
    m.add("TRACE_HEADER", simmod::header_line())?;
    Ok(())
}
