use super::types::Digest;
use super::{f_stage, INITIAL_DIGEST, ROUND_CONSTANTS};

/// Incremental SHA-1 over byte input.
///
/// At most one block of unconsumed input is buffered. The instance is `Send`
/// and may move between threads between calls.
#[derive(Clone)]
pub struct Sha1 {
    state: [u32; 5],
    buf: [u8; 64],
    buf_len: usize,
    len_bytes: u64,
}

impl Default for Sha1 {
    fn default() -> Self {
        Self::new()
    }
}

impl Sha1 {
    pub fn new() -> Self {
        Sha1 {
            state: INITIAL_DIGEST.words(),
            buf: [0; 64],
            buf_len: 0,
            len_bytes: 0,
        }
    }

    /// # Panics
    ///
    /// If the total input exceeds 2^61 - 1 bytes, the largest length the
    /// 64-bit bit-count field can describe.
    pub fn update(&mut self, mut data: &[u8]) {
        self.len_bytes = self
            .len_bytes
            .checked_add(data.len() as u64)
            .filter(|&n| n < 1 << 61)
            .expect("SHA-1 input exceeds 2^64 - 1 bits");

        if self.buf_len > 0 {
            let take = (64 - self.buf_len).min(data.len());
            self.buf[self.buf_len..self.buf_len + take].copy_from_slice(&data[..take]);
            self.buf_len += take;
            data = &data[take..];
            if self.buf_len < 64 {
                return;
            }
            compress(&mut self.state, &self.buf);
            self.buf_len = 0;
        }

        let mut chunks = data.chunks_exact(64);
        for chunk in &mut chunks {
            compress(&mut self.state, chunk.try_into().expect("64-byte chunk"));
        }
        let rest = chunks.remainder();
        self.buf[..rest.len()].copy_from_slice(rest);
        self.buf_len = rest.len();
    }

    pub fn finalize(self) -> Digest {
        let bits = self.len_bytes * 8;
        self.finish(0x80, bits)
    }

    /// Finalizes a message whose last `nbits` (1..=7) bits are the
    /// high-order bits of `last`.
    ///
    /// # Panics
    ///
    /// If `nbits` is not in `1..=7`.
    pub fn finalize_bits(self, last: u8, nbits: u8) -> Digest {
        assert!((1..8).contains(&nbits), "nbits must be in 1..=7");
        let mask = 0xFFu8 << (8 - nbits);
        let bits = self.len_bytes * 8 + nbits as u64;
        self.finish((last & mask) | (0x80 >> nbits), bits)
    }

    pub fn digest(data: &[u8]) -> Digest {
        let mut h = Sha1::new();
        h.update(data);
        h.finalize()
    }

    fn finish(mut self, marker: u8, bit_len: u64) -> Digest {
        self.buf[self.buf_len] = marker;
        self.buf_len += 1;
        if self.buf_len > 56 {
            self.buf[self.buf_len..].fill(0);
            compress(&mut self.state, &self.buf);
            self.buf_len = 0;
        }
        self.buf[self.buf_len..56].fill(0);
        self.buf[56..].copy_from_slice(&bit_len.to_be_bytes());
        compress(&mut self.state, &self.buf);
        Digest::from_words(self.state)
    }
}

/// Digest of a message of at most 55 bytes: exactly one block.
pub(crate) fn digest_single_block(data: &[u8]) -> Digest {
    debug_assert!(data.len() <= 55);
    let mut block = [0u8; 64];
    block[..data.len()].copy_from_slice(data);
    block[data.len()] = 0x80;
    block[56..].copy_from_slice(&(data.len() as u64 * 8).to_be_bytes());
    let mut state = INITIAL_DIGEST.words();
    compress(&mut state, &block);
    Digest::from_words(state)
}

/// Block compression with a 16-word rolling schedule.
fn compress(state: &mut [u32; 5], block: &[u8; 64]) {
    let mut w = [0u32; 16];
    for (word, chunk) in w.iter_mut().zip(block.chunks_exact(4)) {
        *word = u32::from_be_bytes([chunk[0], chunk[1], chunk[2], chunk[3]]);
    }
    let [mut a, mut b, mut c, mut d, mut e] = *state;
    for n in 0..80 {
        let wn = if n < 16 {
            w[n]
        } else {
            let x = (w[(n + 13) & 15] ^ w[(n + 8) & 15] ^ w[(n + 2) & 15] ^ w[n & 15]).rotate_left(1);
            w[n & 15] = x;
            x
        };
        let stage = n / 20;
        let t = a
            .rotate_left(5)
            .wrapping_add(f_stage(stage, b, c, d))
            .wrapping_add(e)
            .wrapping_add(ROUND_CONSTANTS[stage])
            .wrapping_add(wn);
        e = d;
        d = c;
        c = b.rotate_left(30);
        b = a;
        a = t;
    }
    state[0] = state[0].wrapping_add(a);
    state[1] = state[1].wrapping_add(b);
    state[2] = state[2].wrapping_add(c);
    state[3] = state[3].wrapping_add(d);
    state[4] = state[4].wrapping_add(e);
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn million_a() {
        let mut h = Sha1::new();
        let chunk = [b'a'; 1000];
        for _ in 0..1000 {
            h.update(&chunk);
        }
        assert_eq!(
            h.finalize().to_hex(),
            "34aa973cd4c4daa4f61eeb2bdbad27316534016f"
        );
    }

    #[test]
    fn bit_vectors() {
        // Frozen from an independent bit-level model.
        assert_eq!(
            Sha1::new().finalize_bits(0x98, 5).to_hex(),
            "29826b003b906e660eff4027ce98af3531ac75ba"
        );
        assert_eq!(
            Sha1::new().finalize_bits(0x80, 1).to_hex(),
            "59c4526aa2cc59f9a5f56b5579ba7108e7ccb61a"
        );
        let mut h = Sha1::new();
        h.update(b"ab");
        // 0x63 with only the top 7 bits kept.
        assert_eq!(
            h.finalize_bits(0x63, 7).to_hex(),
            "dc4e4b58b2fbbc533f20ba2c07a8901966e50369"
        );
    }

    #[test]
    fn single_block_shortcut() {
        for len in 0..=55 {
            let data: Vec<u8> = (0..len as u8).collect();
            assert_eq!(digest_single_block(&data), Sha1::digest(&data));
        }
    }

    proptest! {
        #[test]
        fn chunking_is_irrelevant(data in proptest::collection::vec(any::<u8>(), 0..600), cuts in proptest::collection::vec(any::<usize>(), 0..6)) {
            let mut points: Vec<usize> = cuts.iter().map(|c| c % (data.len() + 1)).collect();
            points.sort_unstable();
            let mut h = Sha1::new();
            let mut start = 0;
            for p in points {
                h.update(&data[start..p]);
                start = p;
            }
            h.update(&data[start..]);
            prop_assert_eq!(h.finalize(), Sha1::digest(&data));
        }
    }
}
