//! Naive bit-vector SHA-1, written independently of the library for
//! differential testing. Messages are `Vec<bool>`, arithmetic goes through u64.

#![allow(dead_code)]

pub fn bits_of(bytes: &[u8], bit_len: usize) -> Vec<bool> {
    (0..bit_len).map(|i| (bytes[i / 8] >> (7 - i % 8)) & 1 == 1).collect()
}

fn word(bits: &[bool]) -> u32 {
    bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64) as u32
}

fn rotl(x: u32, s: u32) -> u32 {
    let x = x as u64;
    (((x << s) | (x >> (32 - s))) & 0xFFFF_FFFF) as u32
}

fn add(xs: &[u32]) -> u32 {
    (xs.iter().map(|&x| x as u64).sum::<u64>() % (1u64 << 32)) as u32
}

/// Appends the one bit, zeros until length = 448 mod 512, then the 64-bit length.
pub fn pad(msg: &[bool]) -> Vec<bool> {
    let mut z = msg.to_vec();
    z.push(true);
    while z.len() % 512 != 448 {
        z.push(false);
    }
    let len = msg.len() as u64;
    for i in (0..64).rev() {
        z.push((len >> i) & 1 == 1);
    }
    z
}

pub fn block_words(padded: &[bool]) -> Vec<[u32; 16]> {
    padded
        .chunks(512)
        .map(|blk| {
            let mut w = [0u32; 16];
            for (i, chunk) in blk.chunks(32).enumerate() {
                w[i] = word(chunk);
            }
            w
        })
        .collect()
}

pub fn sha1_bits(msg: &[bool]) -> [u32; 5] {
    let mut h: [u32; 5] = [0x67452301, 0xEFCDAB89, 0x98BADCFE, 0x10325476, 0xC3D2E1F0];
    for blk in block_words(&pad(msg)) {
        let mut w: Vec<u32> = blk.to_vec();
        for t in 16..80 {
            w.push(rotl(w[t - 3] ^ w[t - 8] ^ w[t - 14] ^ w[t - 16], 1));
        }
        let (mut a, mut b, mut c, mut d, mut e) = (h[0], h[1], h[2], h[3], h[4]);
        for (t, &wt) in w.iter().enumerate() {
            let (f, k) = if t < 20 {
                ((b & c) | (!b & d), 0x5A827999)
            } else if t < 40 {
                (b ^ c ^ d, 0x6ED9EBA1)
            } else if t < 60 {
                ((b & c) | (b & d) | (c & d), 0x8F1BBCDC)
            } else {
                (b ^ c ^ d, 0xCA62C1D6)
            };
            let tmp = add(&[rotl(a, 5), f, e, k, wt]);
            e = d;
            d = c;
            c = rotl(b, 30);
            b = a;
            a = tmp;
        }
        h = [add(&[h[0], a]), add(&[h[1], b]), add(&[h[2], c]), add(&[h[3], d]), add(&[h[4], e])];
    }
    h
}

pub fn hex(h: [u32; 5]) -> String {
    h.iter().map(|w| format!("{w:08x}")).collect()
}

/// Random message: returns (bytes, bit_len) with unused trailing bits random.
pub fn random_message<R: rand::Rng>(rng: &mut R, bit_len: usize) -> (Vec<u8>, usize) {
    let mut bytes = vec![0u8; bit_len.div_ceil(8)];
    rng.fill(bytes.as_mut_slice());
    (bytes, bit_len)
}

use sha1_assp::sha1::{f_select, k_select};
use sha1_assp::sim::{ClockTraceRecord, Phase, SimMessageJob};
use sha1_assp::{BitMessage, Digest};

/// Clocks a message through the simulator and checks every record against
/// the round-update, selector, schedule-register and accumulator laws.
/// Block words come from the naive padding, not the library.
pub fn check_trace_laws(bytes: &[u8], bit_len: usize) -> Result<usize, String> {
    let blocks = block_words(&pad(&bits_of(bytes, bit_len)));
    let m = BitMessage::from_bits(bytes.to_vec(), bit_len as u64).map_err(|e| e.to_string())?;
    let mut job = SimMessageJob::from_message(&m);
    let mut pre_block = job.state().accumulators();
    let mut prev: Option<ClockTraceRecord> = None;
    let mut block_records: Vec<ClockTraceRecord> = Vec::new();
    let mut checked = 0;
    let mut last_cycle: Option<u64> = None;

    while !job.is_done() {
        let r = job.tick().map_err(|e| e.to_string())?;
        let n = r.n as usize;
        let ctx = |what: &str| format!("cycle {} block {} round {n}: {what}", r.cycle, r.j);

        if let Some(c) = last_cycle {
            if r.cycle != c + 1 {
                return Err(ctx("cycle not strictly increasing by one"));
            }
        }
        last_cycle = Some(r.cycle);

        // Registers feeding this round: previous record, or the reloaded hash at n = 0.
        let (pa, pb, pc, pd, pe) = match (n, prev) {
            (0, _) => (pre_block.ha, pre_block.hb, pre_block.hc, pre_block.hd, pre_block.he),
            (_, Some(p)) if p.n as usize == n - 1 && p.j == r.j => (p.a, p.b, p.c, p.d, p.e),
            _ => return Err(ctx("missing predecessor record")),
        };

        if r.gv as usize != n / 20 {
            return Err(ctx("gv != floor(n/20)"));
        }
        if r.k != k_select(n).unwrap() {
            return Err(ctx("k law"));
        }
        if r.f != f_select(n, pb, pc, pd).unwrap() {
            return Err(ctx("f law"));
        }
        let expected_w = if n < 16 {
            blocks[r.j as usize][n]
        } else {
            let w = |i: usize| block_records[i].w;
            rotl(w(n - 3) ^ w(n - 8) ^ w(n - 14) ^ w(n - 16), 1)
        };
        if r.w != expected_w {
            return Err(ctx("schedule-register law"));
        }
        if r.b != pa || r.c != rotl(pb, 30) || r.d != pc || r.e != pd {
            return Err(ctx("shift-chain law"));
        }
        if r.a != add(&[r.f, r.k, r.w, pe, rotl(pa, 5)]) {
            return Err(ctx("A(n) law"));
        }

        block_records.push(r);
        checked += 1;

        if n == 79 {
            let st = job.state();
            let expect = Digest::from_words([
                add(&[pre_block.ha, r.a]),
                add(&[pre_block.hb, r.b]),
                add(&[pre_block.hc, r.c]),
                add(&[pre_block.hd, r.d]),
                add(&[pre_block.he, r.e]),
            ]);
            if st.accumulators() != expect {
                return Err(ctx("accumulator law"));
            }
            if st.phase != Phase::MessageDone && st.registers() != expect.words() {
                return Err(ctx("registers not reloaded from accumulators"));
            }
            pre_block = expect;
            block_records.clear();
            prev = None;
        } else {
            prev = Some(r);
        }
    }
    if checked != 80 * blocks.len() {
        return Err(format!("{checked} records for {} blocks", blocks.len()));
    }
    Ok(checked)
}
