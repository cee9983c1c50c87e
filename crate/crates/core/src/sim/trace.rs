use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use crate::error::{Error, Result};

pub const TRACE_FORMAT_VERSION: u32 = 1;
pub const TRACE_FIELDS: [&str; 12] = ["cycle", "j", "n", "a", "b", "c", "d", "e", "w", "f", "k", "gv"];

/// Wire values observed during one clock tick.
///
/// `a..e` are the register contents latched at the end of the tick, i.e.
/// A(n)..E(n). `w`, `f` and `k` are the W-MUX, GF-MUX and GK outputs that fed
/// the adders during the tick.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ClockTraceRecord {
    pub cycle: u64,
    pub j: u64,
    pub n: u8,
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
    pub e: u32,
    pub w: u32,
    pub f: u32,
    pub k: u32,
    pub gv: u8,
}

/// Header line opening every trace file.
pub fn header_line() -> String {
    format!("# sha1-assp-trace v{TRACE_FORMAT_VERSION} {}", TRACE_FIELDS.join(" "))
}

impl fmt::Display for ClockTraceRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {:08x} {:08x} {:08x} {:08x} {:08x} {:08x} {:08x} {:08x} {}",
            self.cycle, self.j, self.n, self.a, self.b, self.c, self.d, self.e, self.w, self.f, self.k, self.gv
        )
    }
}

impl FromStr for ClockTraceRecord {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != TRACE_FIELDS.len() {
            return Err(Error::Trace(format!(
                "expected {} fields, got {}",
                TRACE_FIELDS.len(),
                fields.len()
            )));
        }
        let dec = |i: usize| -> Result<u64> {
            fields[i]
                .parse()
                .map_err(|_| Error::Trace(format!("{}: bad integer {:?}", TRACE_FIELDS[i], fields[i])))
        };
        let hex = |i: usize| -> Result<u32> {
            if fields[i].len() != 8 {
                return Err(Error::Trace(format!("{}: expected 8 hex digits", TRACE_FIELDS[i])));
            }
            u32::from_str_radix(fields[i], 16)
                .map_err(|_| Error::Trace(format!("{}: bad hex {:?}", TRACE_FIELDS[i], fields[i])))
        };
        let small = |i: usize, max: u64| -> Result<u8> {
            let v = dec(i)?;
            if v > max {
                return Err(Error::Trace(format!("{} = {v} exceeds {max}", TRACE_FIELDS[i])));
            }
            Ok(v as u8)
        };
        Ok(ClockTraceRecord {
            cycle: dec(0)?,
            j: dec(1)?,
            n: small(2, 79)?,
            a: hex(3)?,
            b: hex(4)?,
            c: hex(5)?,
            d: hex(6)?,
            e: hex(7)?,
            w: hex(8)?,
            f: hex(9)?,
            k: hex(10)?,
            gv: small(11, 3)?,
        })
    }
}

/// Reads a trace, skipping `#` comment lines and blank lines.
pub fn read_trace<R: BufRead>(reader: R) -> Result<Vec<ClockTraceRecord>> {
    let mut out = Vec::new();
    for line in reader.lines() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        out.push(t.parse()?);
    }
    Ok(out)
}

pub(crate) struct TraceSink {
    out: Box<dyn Write + Send>,
}

impl TraceSink {
    pub(crate) fn open(mut out: Box<dyn Write + Send>) -> Result<Self> {
        writeln!(out, "{}", header_line())?;
        Ok(TraceSink { out })
    }

    pub(crate) fn record(&mut self, r: &ClockTraceRecord) -> Result<()> {
        writeln!(self.out, "{r}")?;
        Ok(())
    }

    pub(crate) fn flush(&mut self) -> Result<()> {
        self.out.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_line_round_trips() {
        let r = ClockTraceRecord {
            cycle: 20,
            j: 0,
            n: 20,
            a: 0x0116FC33,
            b: 1,
            c: 2,
            d: 3,
            e: 0xFFFFFFFF,
            w: 0x61626380,
            f: 0,
            k: 0x6ED9EBA1,
            gv: 1,
        };
        let line = r.to_string();
        assert_eq!(
            line,
            "20 0 20 0116fc33 00000001 00000002 00000003 ffffffff 61626380 00000000 6ed9eba1 1"
        );
        assert_eq!(line.parse::<ClockTraceRecord>().unwrap(), r);
    }

    #[test]
    fn malformed_lines_rejected() {
        assert!("1 2 3".parse::<ClockTraceRecord>().is_err());
        assert!("0 0 80 00000000 00000000 00000000 00000000 00000000 00000000 00000000 00000000 0"
            .parse::<ClockTraceRecord>()
            .is_err());
        assert!("0 0 0 0000000 00000000 00000000 00000000 00000000 00000000 00000000 00000000 0"
            .parse::<ClockTraceRecord>()
            .is_err());
        assert!("0 0 0 00000000 00000000 00000000 00000000 00000000 00000000 00000000 00000000 4"
            .parse::<ClockTraceRecord>()
            .is_err());
    }

    #[test]
    fn header_names_fields() {
        assert_eq!(header_line(), "# sha1-assp-trace v1 cycle j n a b c d e w f k gv");
    }
}
