//! Line-oriented test-vector files.
//!
//! Each non-comment line is `<message> <40-hex digest>`. The message is a
//! quoted ASCII string (optionally repeated with `*N`), a run of hex bytes,
//! or hex bytes truncated to a bit length with `hex:bits`. `#` starts a
//! comment outside of quotes.

use crate::error::{Error, Result};
use crate::sha1::{digest, BitMessage, Digest};

/// The vectors shipped with the crate.
pub const BUNDLED_VECTORS: &str = include_str!("../data/fips_vectors.txt");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TestVector {
    pub line: usize,
    /// Message field as written.
    pub label: String,
    pub message: BitMessage,
    pub expected: Digest,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorOutcome {
    pub line: usize,
    pub label: String,
    pub expected: Digest,
    pub actual: Digest,
}

impl VectorOutcome {
    pub fn pass(&self) -> bool {
        self.expected == self.actual
    }
}

pub fn parse_vectors(text: &str) -> Result<Vec<TestVector>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |msg: String| Error::Vector { line, msg };
        let body = strip_comment(raw).trim();
        if body.is_empty() {
            continue;
        }
        let (msg_field, digest_field) = body
            .rsplit_once(char::is_whitespace)
            .ok_or_else(|| err("expected `<message> <digest>`".into()))?;
        let expected: Digest = digest_field.parse().map_err(|e: Error| err(e.to_string()))?;
        let label = msg_field.trim().to_string();
        let message = parse_message(&label).map_err(err)?;
        out.push(TestVector {
            line,
            label,
            message,
            expected,
        });
    }
    Ok(out)
}

pub fn check_vectors(vectors: &[TestVector]) -> Vec<VectorOutcome> {
    vectors
        .iter()
        .map(|v| VectorOutcome {
            line: v.line,
            label: v.label.clone(),
            expected: v.expected,
            actual: digest(&v.message),
        })
        .collect()
}

fn strip_comment(line: &str) -> &str {
    let mut in_quotes = false;
    let mut escaped = false;
    for (i, c) in line.char_indices() {
        match c {
            _ if escaped => escaped = false,
            '\\' if in_quotes => escaped = true,
            '"' => in_quotes = !in_quotes,
            '#' if !in_quotes => return &line[..i],
            _ => {}
        }
    }
    line
}

/// Parses the message field of a vector line.
pub fn parse_message(field: &str) -> std::result::Result<BitMessage, String> {
    if let Some(rest) = field.strip_prefix('"') {
        let mut text = Vec::new();
        let mut chars = rest.char_indices();
        let mut close = None;
        while let Some((i, c)) = chars.next() {
            match c {
                '\\' => match chars.next() {
                    Some((_, e @ ('"' | '\\'))) => text.push(e as u8),
                    other => return Err(format!("bad escape {:?}", other.map(|x| x.1))),
                },
                '"' => {
                    close = Some(i);
                    break;
                }
                c if c.is_ascii() => text.push(c as u8),
                c => return Err(format!("non-ASCII character {c:?} in quoted message")),
            }
        }
        let close = close.ok_or("unterminated quoted message")?;
        let suffix = rest[close + 1..].trim();
        let bytes = if suffix.is_empty() {
            text
        } else {
            let count: usize = suffix
                .strip_prefix('*')
                .and_then(|n| n.trim().parse().ok())
                .ok_or_else(|| format!("unexpected {suffix:?} after quoted message"))?;
            text.repeat(count)
        };
        return BitMessage::from_bytes(bytes).map_err(|e| e.to_string());
    }

    let (hex, bits) = match field.split_once(':') {
        Some((h, b)) => (h, Some(b.parse::<u64>().map_err(|_| format!("bad bit length {b:?}"))?)),
        None => (field, None),
    };
    let bytes = decode_hex(hex)?;
    match bits {
        Some(n) => BitMessage::from_bits(bytes, n).map_err(|e| e.to_string()),
        None => BitMessage::from_bytes(bytes).map_err(|e| e.to_string()),
    }
}

fn decode_hex(s: &str) -> std::result::Result<Vec<u8>, String> {
    if s.len() % 2 != 0 {
        return Err(format!("odd-length hex {s:?}"));
    }
    (0..s.len())
        .step_by(2)
        .map(|i| {
            s.get(i..i + 2)
                .and_then(|p| u8::from_str_radix(p, 16).ok())
                .ok_or_else(|| format!("bad hex {s:?}"))
        })
        .collect()
}
