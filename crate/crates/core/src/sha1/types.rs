use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Block size in bits.
pub const BLOCK_BITS: u32 = 512;
/// Width of the trailing length field in bits.
pub const LENGTH_FIELD_BITS: u32 = 64;

/// A message of arbitrary bit length.
///
/// Bits are stored MSB-first within each byte. Bits of the final byte past
/// `bit_len` are kept at zero so that equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMessage {
    bytes: Vec<u8>,
    bit_len: u64,
}

impl BitMessage {
    /// A byte-aligned message.
    pub fn from_bytes(bytes: impl Into<Vec<u8>>) -> Result<Self> {
        let bytes = bytes.into();
        let bit_len = (bytes.len() as u64)
            .checked_mul(8)
            .ok_or(Error::LengthOverflow)?;
        Ok(BitMessage { bytes, bit_len })
    }

    /// The first `bit_len` bits of `bytes`. Extra whole bytes are dropped and
    /// the unused low-order bits of the last byte are cleared.
    pub fn from_bits(bytes: impl Into<Vec<u8>>, bit_len: u64) -> Result<Self> {
        let mut bytes = bytes.into();
        let available = (bytes.len() as u64)
            .checked_mul(8)
            .ok_or(Error::LengthOverflow)?;
        if bit_len > available {
            return Err(Error::BitLengthTooLong { bit_len, available });
        }
        bytes.truncate(bit_len.div_ceil(8) as usize);
        let rem = (bit_len % 8) as u32;
        if rem != 0 {
            if let Some(last) = bytes.last_mut() {
                *last &= 0xFFu8 << (8 - rem);
            }
        }
        Ok(BitMessage { bytes, bit_len })
    }

    pub fn empty() -> Self {
        BitMessage {
            bytes: Vec::new(),
            bit_len: 0,
        }
    }

    pub fn bit_len(&self) -> u64 {
        self.bit_len
    }

    /// Backing bytes; the last one is partial when `bit_len % 8 != 0`.
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn is_byte_aligned(&self) -> bool {
        self.bit_len % 8 == 0
    }

    pub fn bit(&self, index: u64) -> Option<bool> {
        if index >= self.bit_len {
            return None;
        }
        let byte = self.bytes[(index / 8) as usize];
        Some(byte & (0x80 >> (index % 8)) != 0)
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.bit_len).map(move |i| self.bit(i).unwrap_or(false))
    }
}

impl fmt::Debug for BitMessage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMessage({} bits: ", self.bit_len)?;
        for b in &self.bytes {
            write!(f, "{b:02x}")?;
        }
        write!(f, ")")
    }
}

/// One 512-bit block as sixteen big-endian 32-bit words.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Block {
    pub words: [u32; 16],
}

impl Block {
    pub fn from_bytes(bytes: &[u8; 64]) -> Self {
        let mut words = [0u32; 16];
        for (word, chunk) in words.iter_mut().zip(bytes.chunks_exact(4)) {
            *word = u32::from_be_bytes([chunk[0], chunk[1], chunk[2], chunk[3]]);
        }
        Block { words }
    }

    pub fn to_bytes(&self) -> [u8; 64] {
        let mut out = [0u8; 64];
        for (chunk, word) in out.chunks_exact_mut(4).zip(self.words.iter()) {
            chunk.copy_from_slice(&word.to_be_bytes());
        }
        out
    }
}

/// A message after padding and length insertion, split into blocks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PaddedMessage {
    pub blocks: Vec<Block>,
    /// Original message length in bits.
    pub message_bits: u64,
    /// Number of padding bits (the leading one plus zeros), in `1..=512`.
    pub padding_bits: u32,
}

impl PaddedMessage {
    /// Total padded length in bits; a multiple of 512.
    pub fn total_bits(&self) -> u128 {
        self.message_bits as u128 + self.padding_bits as u128 + LENGTH_FIELD_BITS as u128
    }

    pub fn block_count(&self) -> u64 {
        self.blocks.len() as u64
    }
}

/// A 160-bit SHA-1 hash code.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Digest {
    pub ha: u32,
    pub hb: u32,
    pub hc: u32,
    pub hd: u32,
    pub he: u32,
}

impl Digest {
    pub const fn from_words(w: [u32; 5]) -> Self {
        Digest {
            ha: w[0],
            hb: w[1],
            hc: w[2],
            hd: w[3],
            he: w[4],
        }
    }

    pub const fn words(&self) -> [u32; 5] {
        [self.ha, self.hb, self.hc, self.hd, self.he]
    }

    pub fn to_bytes(&self) -> [u8; 20] {
        let mut out = [0u8; 20];
        for (chunk, word) in out.chunks_exact_mut(4).zip(self.words()) {
            chunk.copy_from_slice(&word.to_be_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8; 20]) -> Self {
        let mut w = [0u32; 5];
        for (word, chunk) in w.iter_mut().zip(bytes.chunks_exact(4)) {
            *word = u32::from_be_bytes([chunk[0], chunk[1], chunk[2], chunk[3]]);
        }
        Digest::from_words(w)
    }

    /// Lowercase, 40 characters.
    pub fn to_hex(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for w in self.words() {
            write!(f, "{w:08x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digest({self})")
    }
}

impl FromStr for Digest {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.len() != 40 || !s.bytes().all(|c| c.is_ascii_hexdigit()) {
            return Err(Error::InvalidDigest(format!(
                "expected 40 hex characters, got {s:?}"
            )));
        }
        let mut w = [0u32; 5];
        for (i, word) in w.iter_mut().enumerate() {
            // All characters are ASCII hex digits, so slicing and parsing cannot fail.
            *word = u32::from_str_radix(&s[i * 8..i * 8 + 8], 16)
                .map_err(|e| Error::InvalidDigest(e.to_string()))?;
        }
        Ok(Digest::from_words(w))
    }
}

impl Serialize for Digest {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for Digest {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Working variables A..E before round `n` executes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RoundState {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
    pub e: u32,
    /// Index of the next round to execute; 80 once the block is finished.
    pub n: u8,
}

impl RoundState {
    /// Working variables at instant n = -1, loaded from the running hash.
    pub fn seed(h: &Digest) -> Self {
        RoundState {
            a: h.ha,
            b: h.hb,
            c: h.hc,
            d: h.hd,
            e: h.he,
            n: 0,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.n < 80
    }
}
