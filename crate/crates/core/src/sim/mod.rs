//! Cycle-accurate model of the iterative-looping SHA-1 datapath.
//!
//! One call to [`SimMessageJob::tick`] is one clock. Within a tick the
//! combinational logic settles in dependency order:
//!
//! 1. GV decodes the 7-bit round counter CN into the stage selector.
//! 2. GW drives `w(n)` through the W-MUX: the block word `u_j[n]` for
//!    `n < 16`, otherwise the schedule register RW(n). In the same tick the
//!    SW(n+3) unit latches `sw[n+3]` into its register, so every schedule
//!    value is ready three cycles before the W-MUX needs it.
//! 3. GF-MUX picks the round function, GK the round constant.
//! 4. S1 (`Z = w + E`) and S2 (`V = f + k`) run in parallel, then S3 and S4
//!    fold in `lr(A, 5)`.
//! 5. RA..RE latch, CN advances. When CN rolls over the HA..HE accumulators
//!    absorb RA..RE, CJ advances and RA..RE reload from the accumulators.
//!
//! Block splitting (the DM module) happens up front in
//! [`preprocess`](crate::sha1::preprocess); the job consumes [`Block`]s.

mod trace;

pub use trace::{header_line, read_trace, ClockTraceRecord, TRACE_FIELDS, TRACE_FORMAT_VERSION};

use std::fmt;
use std::io::Write;

use crate::error::{Error, Result};
use crate::sha1::{f_stage, leftrotate, preprocess, BitMessage, Block, Digest, PaddedMessage, INITIAL_DIGEST, ROUND_CONSTANTS};
use trace::TraceSink;

/// Number of SWk schedule registers, k = 16..=79.
pub const RW_SLOTS: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Phase {
    #[default]
    Idle,
    Hashing,
    /// The previous tick closed a block and more blocks follow.
    BlockDone,
    MessageDone,
}

/// Every register of the datapath at a clock edge.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DatapathState {
    pub ra: u32,
    pub rb: u32,
    pub rc: u32,
    pub rd: u32,
    pub re: u32,
    /// RWk for k = 16..=79, stored at slot k - 16.
    pub rw: [u32; RW_SLOTS],
    /// Schedule registers written in the current block.
    pub rw_written: u8,
    /// Round counter driving the next tick, 0..=79.
    pub cn: u8,
    /// Block counter, 0..L.
    pub cj: u64,
    pub acc_ha: u32,
    pub acc_hb: u32,
    pub acc_hc: u32,
    pub acc_hd: u32,
    pub acc_he: u32,
    pub phase: Phase,
}

impl Default for DatapathState {
    fn default() -> Self {
        DatapathState {
            ra: 0,
            rb: 0,
            rc: 0,
            rd: 0,
            re: 0,
            rw: [0; RW_SLOTS],
            rw_written: 0,
            cn: 0,
            cj: 0,
            acc_ha: 0,
            acc_hb: 0,
            acc_hc: 0,
            acc_hd: 0,
            acc_he: 0,
            phase: Phase::Idle,
        }
    }
}

impl DatapathState {
    /// The CO module: HA..HE concatenated.
    pub fn accumulators(&self) -> Digest {
        Digest::from_words([self.acc_ha, self.acc_hb, self.acc_hc, self.acc_hd, self.acc_he])
    }

    pub fn registers(&self) -> [u32; 5] {
        [self.ra, self.rb, self.rc, self.rd, self.re]
    }

    fn load_registers_from_accumulators(&mut self) {
        self.ra = self.acc_ha;
        self.rb = self.acc_hb;
        self.rc = self.acc_hc;
        self.rd = self.acc_hd;
        self.re = self.acc_he;
    }

    fn set_accumulators(&mut self, h: Digest) {
        self.acc_ha = h.ha;
        self.acc_hb = h.hb;
        self.acc_hc = h.hc;
        self.acc_hd = h.hd;
        self.acc_he = h.he;
    }
}

/// A message loaded into one simulated SHA-1 core.
pub struct SimMessageJob {
    padded: PaddedMessage,
    state: DatapathState,
    cycle: u64,
    trace: Option<TraceSink>,
}

impl fmt::Debug for SimMessageJob {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimMessageJob")
            .field("blocks", &self.padded.block_count())
            .field("cycle", &self.cycle)
            .field("state", &self.state)
            .field("tracing", &self.trace.is_some())
            .finish()
    }
}

/// Loads a padded message: accumulators take the initial hash values
/// (the h0 signal), registers take the accumulators, counters clear.
pub fn reset_for_message(padded: PaddedMessage) -> SimMessageJob {
    let mut state = DatapathState::default();
    state.set_accumulators(INITIAL_DIGEST);
    state.load_registers_from_accumulators();
    state.phase = Phase::Hashing;
    SimMessageJob {
        padded,
        state,
        cycle: 0,
        trace: None,
    }
}

impl SimMessageJob {
    pub fn new(padded: PaddedMessage) -> Self {
        reset_for_message(padded)
    }

    pub fn from_message(m: &BitMessage) -> Self {
        reset_for_message(preprocess(m))
    }

    pub fn state(&self) -> &DatapathState {
        &self.state
    }

    pub fn padded(&self) -> &PaddedMessage {
        &self.padded
    }

    /// Ticks executed so far.
    pub fn cycles(&self) -> u64 {
        self.cycle
    }

    pub fn is_done(&self) -> bool {
        self.state.phase == Phase::MessageDone
    }

    /// Writes the trace header to `sink` and appends one record per
    /// subsequent tick.
    pub fn emit_trace<W: Write + Send + 'static>(&mut self, sink: W) -> Result<()> {
        self.trace = Some(TraceSink::open(Box::new(sink))?);
        Ok(())
    }

    /// Advances one clock.
    ///
    /// The datapath state advances before the trace record is written, so a
    /// sink failure leaves the job consistent but the record unlogged.
    pub fn tick(&mut self) -> Result<ClockTraceRecord> {
        match self.state.phase {
            Phase::MessageDone => return Err(Error::TickAfterDone),
            Phase::Idle => return Err(Error::NotRunnable),
            Phase::Hashing | Phase::BlockDone => {}
        }
        let n = self.state.cn as usize;
        let j = self.state.cj;
        assert!(n < 80, "CN out of range: {n}");
        assert!(j < self.padded.block_count(), "CJ out of range: {j}");
        let block: &Block = &self.padded.blocks[j as usize];
        let st = &mut self.state;

        let gv = n / 20;

        let read_w = |rw: &[u32; RW_SLOTS], i: usize| if i < 16 { block.words[i] } else { rw[i - 16] };
        let w = read_w(&st.rw, n);
        if (13..=76).contains(&n) {
            let k = n + 3;
            st.rw[k - 16] = leftrotate(w ^ read_w(&st.rw, k - 8) ^ read_w(&st.rw, k - 14) ^ read_w(&st.rw, k - 16), 1);
            st.rw_written += 1;
            assert!(st.rw_written as usize <= RW_SLOTS, "RW bank overfilled");
        }

        let f = f_stage(gv, st.rb, st.rc, st.rd);
        let k = ROUND_CONSTANTS[gv];
        let s1 = w.wrapping_add(st.re);
        let s2 = f.wrapping_add(k);
        let s3 = s2.wrapping_add(s1);
        let s4 = s3.wrapping_add(leftrotate(st.ra, 5));

        st.re = st.rd;
        st.rd = st.rc;
        st.rc = leftrotate(st.rb, 30);
        st.rb = st.ra;
        st.ra = s4;

        let record = ClockTraceRecord {
            cycle: self.cycle,
            j,
            n: n as u8,
            a: st.ra,
            b: st.rb,
            c: st.rc,
            d: st.rd,
            e: st.re,
            w,
            f,
            k,
            gv: gv as u8,
        };
        self.cycle += 1;

        if n == 79 {
            let acc = st.accumulators().words();
            let regs = st.registers();
            let mut sum = [0u32; 5];
            for i in 0..5 {
                sum[i] = acc[i].wrapping_add(regs[i]);
            }
            st.set_accumulators(Digest::from_words(sum));
            if j + 1 == self.padded.block_count() {
                st.phase = Phase::MessageDone;
            } else {
                st.cj += 1;
                st.cn = 0;
                st.rw_written = 0;
                st.load_registers_from_accumulators();
                st.phase = Phase::BlockDone;
            }
        } else {
            st.cn += 1;
            st.phase = Phase::Hashing;
        }

        if let Some(sink) = self.trace.as_mut() {
            sink.record(&record)?;
            if self.state.phase == Phase::MessageDone {
                sink.flush()?;
            }
        }
        Ok(record)
    }

    /// Clocks until the message completes. Returns the CO output and the
    /// number of cycles this job has consumed.
    pub fn run_to_completion(&mut self) -> Result<(Digest, u64)> {
        if self.is_done() {
            return Err(Error::TickAfterDone);
        }
        while !self.is_done() {
            self.tick()?;
        }
        Ok((self.state.accumulators(), self.cycle))
    }
}

/// Hashes `m` on a fresh simulated core.
pub fn simulate(m: &BitMessage) -> (Digest, u64) {
    SimMessageJob::from_message(m)
        .run_to_completion()
        .expect("fresh job without a trace sink cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sha1::{digest, k_select};

    fn job(s: &str) -> SimMessageJob {
        SimMessageJob::from_message(&BitMessage::from_bytes(s.as_bytes()).unwrap())
    }

    #[test]
    fn reset_loads_initial_hash() {
        let j = job("anything");
        let st = j.state();
        assert_eq!(st.acc_ha, 0x67452301);
        assert_eq!(st.ra, 0x67452301);
        assert_eq!(st.re, 0xC3D2E1F0);
        assert_eq!(st.cn, 0);
        assert_eq!(st.cj, 0);
        assert_eq!(st.phase, Phase::Hashing);
        assert_eq!(j.cycles(), 0);
        assert_eq!(job("anything").state(), st);
    }

    #[test]
    fn first_tick_on_abc() {
        let mut j = job("abc");
        let r = j.tick().unwrap();
        assert_eq!((r.cycle, r.n, r.gv), (0, 0, 0));
        assert_eq!(r.k, 0x5A827999);
        assert_eq!(r.w, 0x61626380);
        assert_eq!(r.a, 0x0116FC33);
    }

    #[test]
    fn selector_changes_at_tick_20() {
        let mut j = job("abc");
        for _ in 0..20 {
            assert_eq!(j.tick().unwrap().gv, 0);
        }
        let r = j.tick().unwrap();
        assert_eq!((r.cycle, r.n, r.gv), (20, 20, 1));
    }

    #[test]
    fn tick_after_done_errors() {
        let mut j = job("abc");
        for _ in 0..80 {
            j.tick().unwrap();
        }
        assert!(j.is_done());
        assert!(matches!(j.tick(), Err(Error::TickAfterDone)));
        assert!(matches!(j.run_to_completion(), Err(Error::TickAfterDone)));
    }

    #[test]
    fn idle_state_is_not_runnable() {
        let mut j = job("abc");
        j.state.phase = Phase::Idle;
        assert!(matches!(j.tick(), Err(Error::NotRunnable)));
    }

    #[test]
    fn run_examples() {
        let (d, cycles) = job("abc").run_to_completion().unwrap();
        assert_eq!(d.to_hex(), "a9993e364706816aba3e25717850c26c9cd0d89d");
        assert_eq!(cycles, 80);

        let (d, cycles) = job("").run_to_completion().unwrap();
        assert_eq!(d.to_hex(), "da39a3ee5e6b4b0d3255bfef95601890afd80709");
        assert_eq!(cycles, 80);

        // 1024 bits: 1024 mod 512 = 0 < 448, so P = 448, Z = 1536, L = 3.
        let m = BitMessage::from_bytes(vec![0x5Au8; 128]).unwrap();
        let (d, cycles) = simulate(&m);
        assert_eq!(cycles, 240);
        assert_eq!(d, digest(&m));
    }

    #[test]
    fn block_boundary_reloads_registers() {
        let m = BitMessage::from_bytes(vec![1u8; 64]).unwrap();
        let mut j = SimMessageJob::from_message(&m);
        for _ in 0..80 {
            j.tick().unwrap();
        }
        let st = j.state();
        assert_eq!(st.phase, Phase::BlockDone);
        assert_eq!(st.cj, 1);
        assert_eq!(st.cn, 0);
        assert_eq!(st.registers(), st.accumulators().words());
        assert_eq!(st.rw_written, 0);
    }

    #[test]
    fn schedule_bank_fills_exactly() {
        let mut j = job("abc");
        for _ in 0..80 {
            j.tick().unwrap();
        }
        assert_eq!(j.state().rw_written as usize, RW_SLOTS);
    }

    #[test]
    fn trace_records_every_tick() {
        use std::sync::{Arc, Mutex};

        #[derive(Clone, Default)]
        struct Shared(Arc<Mutex<Vec<u8>>>);
        impl Write for Shared {
            fn write(&mut self, buf: &[u8]) -> std::io::Result<usize> {
                self.0.lock().unwrap().extend_from_slice(buf);
                Ok(buf.len())
            }
            fn flush(&mut self) -> std::io::Result<()> {
                Ok(())
            }
        }

        let buf = Shared::default();
        let mut j = job("abc");
        j.emit_trace(buf.clone()).unwrap();
        j.run_to_completion().unwrap();
        let text = String::from_utf8(buf.0.lock().unwrap().clone()).unwrap();
        assert!(text.starts_with("# sha1-assp-trace v1"));
        let records = read_trace(text.as_bytes()).unwrap();
        assert_eq!(records.len(), 80);
        assert!(records.windows(2).all(|p| p[0].cycle < p[1].cycle));
        assert_eq!(records[40].k, 0x8F1BBCDC);
        for r in &records {
            assert_eq!(r.k, k_select(r.n as usize).unwrap());
        }
    }

    #[test]
    fn trace_sink_failure_surfaces() {
        struct Broken;
        impl Write for Broken {
            fn write(&mut self, _: &[u8]) -> std::io::Result<usize> {
                Err(std::io::Error::other("disk full"))
            }
            fn flush(&mut self) -> std::io::Result<()> {
                Ok(())
            }
        }
        let mut j = job("abc");
        assert!(matches!(j.emit_trace(Broken), Err(Error::Io(_))));
    }
}
