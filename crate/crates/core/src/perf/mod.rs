//! Throughput and brute-force timing of a device holding NI parallel cores.
//!
//! Each core consumes one 512-bit block every 80 clocks, so a device with
//! NI cores at period T_s moves `512 * NI / (80 * T_s)` bits per unit time.
//! With T_s in nanoseconds that ratio is directly in Gbps.

mod crack;
mod table;

pub use crack::{crack, CrackOptions, CrackReport, CrackResult, Engine, CRACK_LIMIT};
pub use table::{
    reproduce_table1, table1, table1_delimited, RowCheck, SynthesisRecord, DEVICE_LUTS, DEVICE_REGISTERS,
    OCCUPANCY_TOLERANCE_POINTS, RS_TOLERANCE_GBPS, TABLE1,
};

use std::time::Duration;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sha1::{BLOCK_BITS, ROUNDS_PER_BLOCK};

/// Longest candidate (in bytes) that pads into one block.
pub const MAX_SINGLE_BLOCK_BYTES: usize = 55;
/// Keyspaces beyond this are rejected by the timing model.
pub const PREDICTION_LIMIT: u128 = 1 << 63;

/// Instance count and clock period of the modeled device.
#[derive(Clone, Copy, PartialEq, Debug, Serialize)]
pub struct HardwareModel {
    pub ni: u32,
    pub ts_ns: f64,
}

impl Default for HardwareModel {
    /// The 48-instance configuration.
    fn default() -> Self {
        HardwareModel { ni: 48, ts_ns: 10.909 }
    }
}

fn check_domain(ni: u32, ts_ns: f64) -> Result<()> {
    if ni == 0 {
        return Err(Error::Domain("instance count must be at least 1".into()));
    }
    if !(ts_ns.is_finite() && ts_ns > 0.0) {
        return Err(Error::Domain(format!("clock period must be positive, got {ts_ns}")));
    }
    Ok(())
}

/// Device throughput in Gbps.
pub fn throughput_gbps(ni: u32, ts_ns: f64) -> Result<f64> {
    check_domain(ni, ts_ns)?;
    Ok(BLOCK_BITS as f64 * ni as f64 / (ROUNDS_PER_BLOCK as f64 * ts_ns))
}

/// Candidates per second when each candidate costs `blocks_per_candidate` blocks.
pub fn hashes_per_second(ni: u32, ts_ns: f64, blocks_per_candidate: u32) -> Result<f64> {
    check_domain(ni, ts_ns)?;
    if blocks_per_candidate == 0 {
        return Err(Error::Domain("blocks per candidate must be at least 1".into()));
    }
    let seconds_per_hash = ROUNDS_PER_BLOCK as f64 * blocks_per_candidate as f64 * ts_ns * 1e-9;
    Ok(ni as f64 / seconds_per_hash)
}

/// An ordered set of distinct symbols, each encoded as UTF-8.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Alphabet {
    symbols: Vec<char>,
    encoded: Vec<Vec<u8>>,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        for (i, c) in symbols.iter().enumerate() {
            if symbols[..i].contains(c) {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol {c:?}")));
            }
        }
        let encoded = symbols.iter().map(|c| c.to_string().into_bytes()).collect();
        Ok(Alphabet { symbols, encoded })
    }

    /// A named preset (`numeric`, `lower`, `upper`, `alpha`, `alnum`, `hex`)
    /// or, otherwise, the literal characters of `spec`. A `chars:` prefix
    /// forces the literal reading.
    pub fn parse(spec: &str) -> Result<Self> {
        const DIGITS: &str = "0123456789";
        const LOWER: &str = "abcdefghijklmnopqrstuvwxyz";
        const UPPER: &str = "ABCDEFGHIJKLMNOPQRSTUVWXYZ";
        if let Some(literal) = spec.strip_prefix("chars:") {
            return Alphabet::new(literal.chars());
        }
        let chars: String = match spec {
            "numeric" | "digits" => DIGITS.into(),
            "lower" => LOWER.into(),
            "upper" => UPPER.into(),
            "alpha" => [LOWER, UPPER].concat(),
            "alnum" => [DIGITS, LOWER, UPPER].concat(),
            "hex" => "0123456789abcdef".into(),
            other => other.into(),
        };
        Alphabet::new(chars.chars())
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn encoded(&self, i: usize) -> &[u8] {
        &self.encoded[i]
    }

    pub fn max_symbol_bytes(&self) -> usize {
        self.encoded.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn as_string(&self) -> String {
        self.symbols.iter().collect()
    }
}

/// Fixed-length passwords over an alphabet, ranked lexicographically with
/// the first position most significant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KeyspaceSpec {
    pub alphabet: Alphabet,
    pub length: u32,
}

impl KeyspaceSpec {
    pub fn new(alphabet: Alphabet, length: u32) -> Self {
        KeyspaceSpec { alphabet, length }
    }

    /// `|alphabet|^length`, `None` on u128 overflow. Length 0 is the empty
    /// keyspace.
    pub fn size(&self) -> Option<u128> {
        if self.length == 0 {
            return Some(0);
        }
        (self.alphabet.len() as u128).checked_pow(self.length)
    }

    /// Longest encoded candidate in bytes.
    pub fn max_candidate_bytes(&self) -> usize {
        self.alphabet.max_symbol_bytes() * self.length as usize
    }

    /// The candidate at lexicographic rank `index`.
    pub fn candidate(&self, index: u128) -> Option<String> {
        if index >= self.size()? {
            return None;
        }
        let digits = self.digits(index);
        Some(digits.iter().map(|&d| self.alphabet.symbols[d]).collect())
    }

    pub(crate) fn digits(&self, mut index: u128) -> Vec<usize> {
        let radix = self.alphabet.len() as u128;
        let mut digits = vec![0usize; self.length as usize];
        for slot in digits.iter_mut().rev() {
            *slot = (index % radix) as usize;
            index /= radix;
        }
        digits
    }
}

/// Worst-case time for a device to exhaust `spec`, one block per candidate.
pub fn predict_crack_time(spec: &KeyspaceSpec, ni: u32, ts_ns: f64) -> Result<Duration> {
    let rate = hashes_per_second(ni, ts_ns, 1)?;
    let size = spec.size().unwrap_or(u128::MAX);
    if size > PREDICTION_LIMIT {
        return Err(Error::KeyspaceTooLarge {
            size,
            limit: PREDICTION_LIMIT,
        });
    }
    let bytes = spec.max_candidate_bytes();
    if bytes > MAX_SINGLE_BLOCK_BYTES {
        return Err(Error::CandidateTooLong { bytes });
    }
    Ok(Duration::from_secs_f64(size as f64 / rate))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn numeric(len: u32) -> KeyspaceSpec {
        KeyspaceSpec::new(Alphabet::parse("numeric").unwrap(), len)
    }

    #[test]
    fn throughput_examples() {
        assert!((throughput_gbps(1, 9.932).unwrap() - 0.644).abs() <= 0.001);
        assert!((throughput_gbps(48, 10.909).unwrap() - 28.160).abs() <= 0.001);
        let one = throughput_gbps(7, 9.5).unwrap();
        assert_eq!(throughput_gbps(14, 9.5).unwrap(), 2.0 * one);
    }

    #[test]
    fn throughput_domain_errors() {
        assert!(matches!(throughput_gbps(0, 10.0), Err(Error::Domain(_))));
        assert!(matches!(throughput_gbps(1, 0.0), Err(Error::Domain(_))));
        assert!(matches!(throughput_gbps(1, -3.0), Err(Error::Domain(_))));
        assert!(matches!(throughput_gbps(1, f64::NAN), Err(Error::Domain(_))));
        assert!(matches!(hashes_per_second(1, 10.0, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn hash_rate_examples() {
        // 48 / (80 * 10.909e-9) = 5.5000458...e7
        let r = hashes_per_second(48, 10.909, 1).unwrap();
        assert!((r - 5.500_045_8e7).abs() < 10.0, "{r}");
        let r = hashes_per_second(1, 10.0, 1).unwrap();
        assert!((r - 1.25e6).abs() < 1e-6);
        assert_eq!(
            hashes_per_second(5, 9.0, 2).unwrap(),
            hashes_per_second(5, 9.0, 1).unwrap() / 2.0
        );
    }

    #[test]
    fn crack_time_examples() {
        let t = predict_crack_time(&numeric(6), 48, 10.909).unwrap();
        // 10^6 * 80 * 10.909 ns / 48 = 18.181666 ms
        assert!((t.as_secs_f64() * 1e3 - 18.181_666).abs() < 1e-3);
        let alnum = KeyspaceSpec::new(Alphabet::parse("alnum").unwrap(), 6);
        let t = predict_crack_time(&alnum, 48, 10.909).unwrap();
        // 62^6 * 80 * 10.909 ns / 48 / 60 = 17.2118 min
        assert!((t.as_secs_f64() / 60.0 - 17.2118).abs() < 1e-3);
        assert_eq!(predict_crack_time(&numeric(0), 48, 10.909).unwrap(), Duration::ZERO);
    }

    #[test]
    fn crack_time_guards() {
        assert!(matches!(
            predict_crack_time(&numeric(19), 48, 10.909),
            Err(Error::KeyspaceTooLarge { .. })
        ));
        let one = KeyspaceSpec::new(Alphabet::parse("a").unwrap(), 56);
        assert!(matches!(
            predict_crack_time(&one, 48, 10.909),
            Err(Error::CandidateTooLong { bytes: 56 })
        ));
        let one = KeyspaceSpec::new(Alphabet::parse("a").unwrap(), 55);
        assert!(predict_crack_time(&one, 48, 10.909).is_ok());
    }

    #[test]
    fn alphabet_parsing() {
        assert_eq!(Alphabet::parse("alnum").unwrap().len(), 62);
        assert_eq!(Alphabet::parse("numeric").unwrap().as_string(), "0123456789");
        assert_eq!(Alphabet::parse("xyz").unwrap().as_string(), "xyz");
        assert_eq!(Alphabet::parse("chars:lower").unwrap().as_string(), "lower");
        assert!(matches!(Alphabet::parse(""), Err(Error::InvalidAlphabet(_))));
        assert!(matches!(Alphabet::parse("aba"), Err(Error::InvalidAlphabet(_))));
    }

    #[test]
    fn candidates_rank_lexicographically() {
        let ks = numeric(4);
        assert_eq!(ks.size(), Some(10_000));
        assert_eq!(ks.candidate(0).as_deref(), Some("0000"));
        assert_eq!(ks.candidate(42).as_deref(), Some("0042"));
        assert_eq!(ks.candidate(9999).as_deref(), Some("9999"));
        assert_eq!(ks.candidate(10_000), None);
    }

    proptest! {
        #[test]
        fn prediction_monotone(
            radix in 1usize..40, len in 1u32..7,
            ni in 1u32..64, ts in 1.0f64..20.0,
            dn in 1u32..8, dt in 0.0f64..5.0, dl in 0u32..3,
        ) {
            let sym: Vec<char> = (0..radix as u32).map(|i| char::from_u32(0x30 + i).unwrap()).collect();
            let base = KeyspaceSpec::new(Alphabet::new(sym.clone()).unwrap(), len);
            let bigger = KeyspaceSpec::new(Alphabet::new(sym).unwrap(), len + dl);
            let t = predict_crack_time(&base, ni, ts).unwrap();
            prop_assert!(predict_crack_time(&bigger, ni, ts).unwrap() >= t);
            prop_assert!(predict_crack_time(&base, ni, ts + dt).unwrap() >= t);
            prop_assert!(predict_crack_time(&base, ni + dn, ts).unwrap() <= t);
        }
    }
}
