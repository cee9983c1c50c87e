use serde::Serialize;

use super::throughput_gbps;

/// Flip-flops available on the xc6vlx240t.
pub const DEVICE_REGISTERS: u32 = 301_440;
/// Slice LUTs available on the xc6vlx240t.
pub const DEVICE_LUTS: u32 = 150_720;

/// One row of the published synthesis results.
#[derive(Clone, Copy, PartialEq, Debug, Serialize)]
pub struct SynthesisRecord {
    pub ni: u32,
    pub nr: u32,
    pub pr: f64,
    pub nlut: u32,
    pub plut: f64,
    pub ts_ns: f64,
    pub rs_gbps: f64,
}

const fn row(ni: u32, nr: u32, pr: f64, nlut: u32, plut: f64, ts_ns: f64, rs_gbps: f64) -> SynthesisRecord {
    SynthesisRecord {
        ni,
        nr,
        pr,
        nlut,
        plut,
        ts_ns,
        rs_gbps,
    }
}

// Published with decimal commas ("9,932") and grouping dots ("2.154").
pub const TABLE1: [SynthesisRecord; 6] = [
    row(1, 2_154, 0.71, 2_605, 1.72, 9.932, 0.644),
    row(4, 8_575, 2.84, 10_388, 6.89, 9.961, 2.570),
    row(8, 17_136, 5.68, 20_662, 13.71, 9.965, 5.138),
    row(16, 34_255, 11.36, 43_263, 28.70, 9.994, 10.246),
    row(32, 68_498, 22.72, 86_873, 57.64, 9.994, 18.296),
    row(48, 102_733, 34.08, 129_902, 86.19, 10.909, 28.160),
];

pub fn table1() -> Vec<SynthesisRecord> {
    TABLE1.to_vec()
}

impl SynthesisRecord {
    pub fn pr_computed(&self) -> f64 {
        100.0 * self.nr as f64 / DEVICE_REGISTERS as f64
    }

    pub fn plut_computed(&self) -> f64 {
        100.0 * self.nlut as f64 / DEVICE_LUTS as f64
    }

    pub fn rs_computed(&self) -> f64 {
        throughput_gbps(self.ni, self.ts_ns).expect("table rows are in domain")
    }
}

/// Recomputed values for one row next to the published ones.
#[derive(Clone, Copy, PartialEq, Debug, Serialize)]
pub struct RowCheck {
    pub record: SynthesisRecord,
    pub rs_computed: f64,
    pub rs_delta: f64,
    pub pr_computed: f64,
    pub plut_computed: f64,
    pub rs_pass: bool,
    pub occupancy_pass: bool,
}

impl RowCheck {
    pub fn pass(&self) -> bool {
        self.rs_pass && self.occupancy_pass
    }
}

/// Default tolerance on throughput, in Gbps.
pub const RS_TOLERANCE_GBPS: f64 = 0.001;
/// Tolerance on recomputed utilization percentages, in percentage points.
pub const OCCUPANCY_TOLERANCE_POINTS: f64 = 0.05;

// Published figures carry three decimals; absorb binary rounding of the delta.
const FLOAT_SLACK: f64 = 1e-9;

/// Checks every row: throughput recomputed from NI and T_s, utilization
/// recomputed from the device totals.
pub fn reproduce_table1(rs_tolerance: f64) -> Vec<RowCheck> {
    TABLE1
        .iter()
        .map(|r| {
            let rs_computed = r.rs_computed();
            let rs_delta = rs_computed - r.rs_gbps;
            let pr_computed = r.pr_computed();
            let plut_computed = r.plut_computed();
            RowCheck {
                record: *r,
                rs_computed,
                rs_delta,
                pr_computed,
                plut_computed,
                rs_pass: rs_delta.abs() <= rs_tolerance + FLOAT_SLACK,
                occupancy_pass: (pr_computed - r.pr).abs() <= OCCUPANCY_TOLERANCE_POINTS
                    && (plut_computed - r.plut).abs() <= OCCUPANCY_TOLERANCE_POINTS,
            }
        })
        .collect()
}

/// The table as delimiter-separated text with a header row.
pub fn table1_delimited(delim: char) -> String {
    let mut out = ["ni", "nr", "pr", "nlut", "plut", "ts_ns", "rs_gbps"].join(&delim.to_string());
    out.push('\n');
    for r in TABLE1 {
        let fields = [
            r.ni.to_string(),
            r.nr.to_string(),
            format!("{:.2}", r.pr),
            r.nlut.to_string(),
            format!("{:.2}", r.plut),
            format!("{:.3}", r.ts_ns),
            format!("{:.3}", r.rs_gbps),
        ];
        out.push_str(&fields.join(&delim.to_string()));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn published_rows() {
        let t = table1();
        assert_eq!(t.len(), 6);
        assert!(t.windows(2).all(|w| w[0].ni < w[1].ni));
        let r8 = t.iter().find(|r| r.ni == 8).unwrap();
        assert_eq!(r8.nlut, 20662);
        assert_eq!(r8.ts_ns, 9.965);
        assert_eq!(r8.rs_gbps, 5.138);
        let r32 = t.iter().find(|r| r.ni == 32).unwrap();
        assert_eq!(r32.nr, 68498);
        assert_eq!(r32.rs_gbps, 18.296);
    }

    #[test]
    fn occupancy_consistent_with_device_totals() {
        for r in TABLE1 {
            assert!((r.pr_computed() - r.pr).abs() <= 0.01, "PR row {}", r.ni);
            assert!((r.plut_computed() - r.plut).abs() <= 0.01, "PLUT row {}", r.ni);
        }
    }

    #[test]
    fn row_32_disagrees_with_its_own_clock_period() {
        // 512 * 32 / (80 * 9.994) = 20.492, not the published 18.296.
        let checks = reproduce_table1(RS_TOLERANCE_GBPS);
        let failing: Vec<u32> = checks.iter().filter(|c| !c.rs_pass).map(|c| c.record.ni).collect();
        assert_eq!(failing, vec![32]);
        let c32 = checks.iter().find(|c| c.record.ni == 32).unwrap();
        assert!((c32.rs_computed - 20.492).abs() < 0.001);
    }

    #[test]
    fn zero_tolerance_reports_deltas() {
        let checks = reproduce_table1(0.0);
        assert!(checks.iter().any(|c| !c.rs_pass));
        assert!(checks.iter().all(|c| c.rs_delta.is_finite()));
    }

    #[test]
    fn delimited_export() {
        let csv = table1_delimited(',');
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("ni,nr,pr,nlut,plut,ts_ns,rs_gbps"));
        assert_eq!(lines.next(), Some("1,2154,0.71,2605,1.72,9.932,0.644"));
        assert_eq!(csv.lines().count(), 7);
        assert!(table1_delimited('\t').starts_with("ni\tnr"));
    }
}
