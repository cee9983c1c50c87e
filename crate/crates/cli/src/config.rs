use std::path::Path;

use sha1_assp::perf::HardwareModel;

use crate::CliError;

/// Parses flat `key=value` text. Recognized keys: `ni`, `ts_ns`.
pub fn parse(text: &str) -> Result<HardwareModel, String> {
    let mut hw = HardwareModel::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected key=value", i + 1))?;
        let value = value.trim();
        match key.trim() {
            "ni" => hw.ni = value.parse().map_err(|_| format!("line {}: bad ni {value:?}", i + 1))?,
            "ts_ns" => hw.ts_ns = value.parse().map_err(|_| format!("line {}: bad ts_ns {value:?}", i + 1))?,
            other => return Err(format!("line {}: unknown key {other:?}", i + 1)),
        }
    }
    Ok(hw)
}

/// Defaults, overridden by the config file, overridden by flags.
pub fn resolve(path: Option<&Path>, ni: Option<u32>, ts_ns: Option<f64>) -> Result<HardwareModel, CliError> {
    let mut hw = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", p.display())))?;
            parse(&text).map_err(|e| CliError::Usage(format!("config {}: {e}", p.display())))?
        }
        None => HardwareModel::default(),
    };
    if let Some(ni) = ni {
        hw.ni = ni;
    }
    if let Some(ts) = ts_ns {
        hw.ts_ns = ts;
    }
    if hw.ni == 0 || !(hw.ts_ns.is_finite() && hw.ts_ns > 0.0) {
        return Err(CliError::Usage(format!(
            "ni must be >= 1 and ts_ns > 0 (got ni={}, ts_ns={})",
            hw.ni, hw.ts_ns
        )));
    }
    Ok(hw)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_keys() {
        let hw = parse("# device\nni = 8\nts_ns=9.965\n").unwrap();
        assert_eq!(hw.ni, 8);
        assert_eq!(hw.ts_ns, 9.965);
        assert_eq!(parse("").unwrap(), HardwareModel::default());
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(parse("ni").is_err());
        assert!(parse("ni=x").is_err());
        assert!(parse("clock=3").is_err());
    }

    #[test]
    fn flags_win() {
        let hw = resolve(None, Some(4), None).unwrap();
        assert_eq!((hw.ni, hw.ts_ns), (4, 10.909));
        assert!(matches!(resolve(None, Some(0), None), Err(CliError::Usage(_))));
    }
}
