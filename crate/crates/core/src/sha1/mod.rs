//! Equation-level SHA-1.
//!
//! The free functions here mirror the algorithm step by step: padding,
//! length insertion, block split, word schedule, the round functions and
//! constants, the round update, and the per-block hash update. They are the
//! oracle for the datapath simulator. [`Sha1`] is the byte-oriented streaming
//! hasher used where speed matters.

mod stream;
mod types;

pub use stream::Sha1;
pub(crate) use stream::digest_single_block;
pub use types::{BitMessage, Block, Digest, PaddedMessage, RoundState, BLOCK_BITS, LENGTH_FIELD_BITS};

use crate::error::{Error, Result};

pub const ROUNDS_PER_BLOCK: usize = 80;

pub const INITIAL_DIGEST: Digest =
    Digest::from_words([0x67452301, 0xEFCDAB89, 0x98BADCFE, 0x10325476, 0xC3D2E1F0]);

pub const ROUND_CONSTANTS: [u32; 4] = [0x5A827999, 0x6ED9EBA1, 0x8F1BBCDC, 0xCA62C1D6];

/// Number of padding bits for a `k`-bit message, in `1..=512`.
pub fn padding_len(k: u64) -> u32 {
    let r = (k % BLOCK_BITS as u64) as u32;
    if r < 448 {
        448 - r
    } else {
        512 - r + 448
    }
}

/// Appends the padding and the 64-bit big-endian length, then splits into blocks.
pub fn preprocess(m: &BitMessage) -> PaddedMessage {
    let k = m.bit_len();
    let p = padding_len(k);
    let total_bits = k as u128 + p as u128 + LENGTH_FIELD_BITS as u128;
    debug_assert_eq!(total_bits % BLOCK_BITS as u128, 0);

    let total_bytes = (total_bits / 8) as usize;
    let mut z = vec![0u8; total_bytes];
    z[..m.as_bytes().len()].copy_from_slice(m.as_bytes());
    // Leading padding bit sits right after the last message bit.
    z[(k / 8) as usize] |= 0x80 >> (k % 8);
    z[total_bytes - 8..].copy_from_slice(&k.to_be_bytes());

    let blocks = z
        .chunks_exact(64)
        .map(|chunk| Block::from_bytes(chunk.try_into().expect("64-byte chunk")))
        .collect();
    PaddedMessage {
        blocks,
        message_bits: k,
        padding_bits: p,
    }
}

pub fn initial_digest() -> Digest {
    INITIAL_DIGEST
}

/// Circular left rotation. `s` is taken modulo 32.
#[inline(always)]
pub fn leftrotate(r: u32, s: u32) -> u32 {
    r.rotate_left(s)
}

fn check_round(n: usize) -> Result<()> {
    if n < ROUNDS_PER_BLOCK {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange {
            what: "round",
            index: n,
            max: ROUNDS_PER_BLOCK - 1,
        })
    }
}

/// Round-function selector: 0 for rounds 0..=19, 1, 2, 3 for the following stages.
#[inline(always)]
pub fn stage(n: usize) -> usize {
    n / 20
}

#[inline(always)]
pub(crate) fn f_stage(stage: usize, b: u32, c: u32, d: u32) -> u32 {
    match stage {
        0 => (b & c) | (!b & d),
        2 => (b & c) | (b & d) | (c & d),
        _ => b ^ c ^ d,
    }
}

/// The nonlinear round function for round `n`.
pub fn f_select(n: usize, b: u32, c: u32, d: u32) -> Result<u32> {
    check_round(n)?;
    Ok(f_stage(stage(n), b, c, d))
}

/// The additive round constant for round `n`.
pub fn k_select(n: usize) -> Result<u32> {
    check_round(n)?;
    Ok(ROUND_CONSTANTS[stage(n)])
}

/// Schedule word `n` of `block`, given the words already produced for `0..n`.
///
/// Rounds 16..=79 use the rotate-XOR recurrence over earlier schedule words,
/// so `prior` must hold at least `n` entries for those rounds.
pub fn schedule_word(n: usize, block: &Block, prior: &[u32]) -> Result<u32> {
    check_round(n)?;
    if n < 16 {
        return Ok(block.words[n]);
    }
    if prior.len() < n {
        return Err(Error::MissingHistory {
            index: n,
            needed: n,
            got: prior.len(),
        });
    }
    Ok(leftrotate(
        prior[n - 3] ^ prior[n - 8] ^ prior[n - 14] ^ prior[n - 16],
        1,
    ))
}

/// The full 80-word schedule for one block.
pub fn expand_schedule(block: &Block) -> [u32; 80] {
    let mut w = [0u32; 80];
    w[..16].copy_from_slice(&block.words);
    for n in 16..80 {
        w[n] = leftrotate(w[n - 3] ^ w[n - 8] ^ w[n - 14] ^ w[n - 16], 1);
    }
    w
}

/// One round: shifts B..E down the chain and computes the new A.
///
/// # Panics
///
/// If `s.n >= 80`; the state has already run all rounds of its block.
pub fn round_update(s: RoundState, w: u32) -> RoundState {
    assert!(s.is_valid(), "round_update past round 79");
    let n = s.n as usize;
    let z = w.wrapping_add(s.e);
    let v = f_stage(stage(n), s.b, s.c, s.d).wrapping_add(ROUND_CONSTANTS[stage(n)]);
    RoundState {
        a: v.wrapping_add(z).wrapping_add(leftrotate(s.a, 5)),
        b: s.a,
        c: leftrotate(s.b, 30),
        d: s.c,
        e: s.d,
        n: s.n + 1,
    }
}

fn compress_counted(h: &Digest, block: &Block, rounds: &mut u64) -> Digest {
    let mut w = [0u32; 80];
    let mut s = RoundState::seed(h);
    for n in 0..ROUNDS_PER_BLOCK {
        w[n] = schedule_word(n, block, &w[..n]).expect("round index in range");
        s = round_update(s, w[n]);
        *rounds += 1;
    }
    Digest {
        ha: h.ha.wrapping_add(s.a),
        hb: h.hb.wrapping_add(s.b),
        hc: h.hc.wrapping_add(s.c),
        hd: h.hd.wrapping_add(s.d),
        he: h.he.wrapping_add(s.e),
    }
}

/// Runs the 80 rounds of one block and adds the result into `h`.
pub fn compress_block(h: &Digest, block: &Block) -> Digest {
    let mut rounds = 0;
    compress_counted(h, block, &mut rounds)
}

/// SHA-1 of a bit-granular message through the equation-level path.
pub fn digest(m: &BitMessage) -> Digest {
    digest_with_rounds(m).0
}

/// Like [`digest`], also returning how many round updates were executed.
pub fn digest_with_rounds(m: &BitMessage) -> (Digest, u64) {
    let padded = preprocess(m);
    let mut rounds = 0;
    let h = padded
        .blocks
        .iter()
        .fold(INITIAL_DIGEST, |h, b| compress_counted(&h, b, &mut rounds));
    (h, rounds)
}

/// SHA-1 of a byte string through the streaming fast path.
pub fn digest_bytes(data: &[u8]) -> Digest {
    let mut h = Sha1::new();
    h.update(data);
    h.finalize()
}

/// SHA-1 of a bit message through the streaming fast path.
pub fn digest_fast(m: &BitMessage) -> Digest {
    let bytes = m.as_bytes();
    let rem = (m.bit_len() % 8) as u8;
    let mut h = Sha1::new();
    if rem == 0 {
        h.update(bytes);
        h.finalize()
    } else {
        let (last, head) = bytes.split_last().expect("partial byte present");
        h.update(head);
        h.finalize_bits(*last, rem)
    }
}

/// Number of 512-bit blocks after padding a `k`-bit message.
pub fn block_count(k: u64) -> u128 {
    (k as u128 + padding_len(k) as u128 + LENGTH_FIELD_BITS as u128) / BLOCK_BITS as u128
}
