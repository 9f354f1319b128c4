use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportParams {
    pub n: usize,
    pub k: usize,
    pub seed: Option<u64>,
    pub trials: Option<u64>,
    pub density: Option<f64>,
    pub tol: f64,
    /// Largest order for which certificate search runs.
    pub cap: usize,
    pub in_theorem_range: bool,
    /// Whether range checks were overridden.
    pub forced: bool,
    pub source: Option<String>,
}

/// Tallies over the examined graphs.
///
/// Every examined graph lands in exactly one of `vacuous`, `factor_found`,
/// `extremal_matches`, `violations`, `ambiguous`, `separated` and
/// `unreferenced`; see [`Counters::consistent`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counters {
    pub examined: u64,
    /// Graphs meeting the theorem's hypothesis: everything but `vacuous`
    /// and `unreferenced`.
    pub hypothesis_satisfied: u64,
    pub vacuous: u64,
    pub factor_found: u64,
    pub extremal_matches: u64,
    pub violations: u64,
    pub ambiguous: u64,
    /// Family members certified strictly below `G_{n,k}`.
    pub separated: u64,
    /// Graphs for which `G_{n,k}` does not exist (`n < 3k`).
    pub unreferenced: u64,
    pub oracle_checks: u64,
    pub oracle_disagreements: u64,
    pub deficiency_evaluations: u64,
    pub parity_failures: u64,
    pub formula1_checks: u64,
    pub formula1_failures: u64,
    pub hsf_checks: u64,
    pub hsf_failures: u64,
    pub malformed_lines: u64,
    pub errors: u64,
}

impl Counters {
    pub fn consistent(&self) -> bool {
        let classified = self.vacuous
            + self.factor_found
            + self.extremal_matches
            + self.violations
            + self.ambiguous
            + self.separated
            + self.unreferenced
            + self.errors;
        classified == self.examined
            && self.hypothesis_satisfied
                == self.factor_found
                    + self.extremal_matches
                    + self.violations
                    + self.ambiguous
                    + self.separated
    }
}

/// A graph singled out by a campaign, with the reason.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub graph6: String,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum ReportVerdict {
    Pass,
    Fail,
}

/// Outcome of one campaign. `failures` decide the verdict; `observations`
/// are informational (for example, theorem violations below its range).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub campaign: String,
    pub params: ReportParams,
    pub counters: Counters,
    pub metrics: BTreeMap<String, f64>,
    pub failures: Vec<Record>,
    pub observations: Vec<Record>,
    /// Unparseable input lines as `line N: error`.
    pub malformed: Vec<String>,
    pub verdict: ReportVerdict,
    /// Wall-clock seconds; only filled in on request so reports stay
    /// reproducible.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub runtime_seconds: Option<f64>,
}

impl VerificationReport {
    pub(crate) fn new(campaign: &str, params: ReportParams) -> Self {
        VerificationReport {
            campaign: campaign.to_string(),
            params,
            counters: Counters::default(),
            metrics: BTreeMap::new(),
            failures: Vec::new(),
            observations: Vec::new(),
            malformed: Vec::new(),
            verdict: ReportVerdict::Pass,
            runtime_seconds: None,
        }
    }

    /// Sets the verdict from the failure list.
    pub(crate) fn finish(&mut self) {
        self.verdict = if self.failures.is_empty() {
            ReportVerdict::Pass
        } else {
            ReportVerdict::Fail
        };
    }

    pub fn passed(&self) -> bool {
        self.verdict == ReportVerdict::Pass
    }

    /// Canonical JSON: sorted keys, floats at 12 significant digits.
    pub fn to_json(&self) -> String {
        canonical_json(&serde_json::to_value(self).expect("report serializes"))
    }

    /// Human-readable summary.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let p = &self.params;
        let _ = writeln!(out, "campaign  {}", self.campaign);
        let _ = writeln!(out, "n={} k={} tol={:e} cap={}", p.n, p.k, p.tol, p.cap);
        if let Some(seed) = p.seed {
            let _ = writeln!(out, "seed={seed} trials={}", p.trials.unwrap_or(0));
        }
        if let Some(d) = p.density {
            let _ = writeln!(out, "density={}", format_float(d));
        }
        if let Some(s) = &p.source {
            let _ = writeln!(out, "source={s}");
        }
        let counters = serde_json::to_value(&self.counters).expect("counters serialize");
        if let Value::Object(map) = counters {
            for (name, value) in map.iter().filter(|(_, v)| v.as_u64() != Some(0)) {
                let _ = writeln!(out, "  {name:<24}{value}");
            }
        }
        for (name, value) in &self.metrics {
            let _ = writeln!(out, "  {name:<24}{}", format_float(*value));
        }
        for r in &self.failures {
            let _ = writeln!(out, "FAILURE {} {}", r.graph6, r.detail);
        }
        for r in &self.observations {
            let _ = writeln!(out, "note    {} {}", r.graph6, r.detail);
        }
        for m in &self.malformed {
            let _ = writeln!(out, "malformed {m}");
        }
        if let Some(t) = self.runtime_seconds {
            let _ = writeln!(out, "runtime {t:.3}s");
        }
        let _ = writeln!(
            out,
            "verdict   {}",
            if self.passed() { "PASS" } else { "FAIL" }
        );
        out
    }
}

/// Twelve significant digits, fixed notation for moderate magnitudes and
/// exponent notation otherwise. Non-finite values become `null`.
pub fn format_float(x: f64) -> String {
    if !x.is_finite() {
        return "null".to_string();
    }
    if x == 0.0 {
        return "0.0".to_string();
    }
    let sci = format!("{x:.11e}");
    let exp: i32 = sci[sci.find('e').expect("exponent") + 1..]
        .parse()
        .expect("integer exponent");
    if (-5..=11).contains(&exp) {
        let s = format!("{:.*}", (11 - exp) as usize, x);
        if s.contains('.') {
            s
        } else {
            s + ".0"
        }
    } else {
        sci
    }
}

/// Pretty-printed JSON with object keys sorted and floats through
/// [`format_float`]. Ends with a newline.
pub fn canonical_json(value: &Value) -> String {
    fn write(out: &mut String, v: &Value, indent: usize) {
        let pad = |out: &mut String, level: usize| out.extend(std::iter::repeat_n(' ', 2 * level));
        match v {
            Value::Null => out.push_str("null"),
            Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Value::Number(num) => match (num.as_i64(), num.as_u64(), num.as_f64()) {
                (Some(i), _, _) if !num.is_f64() => out.push_str(&i.to_string()),
                (_, Some(u), _) if !num.is_f64() => out.push_str(&u.to_string()),
                (_, _, Some(f)) => out.push_str(&format_float(f)),
                _ => out.push_str("null"),
            },
            Value::String(s) => out.push_str(&serde_json::to_string(s).expect("string serializes")),
            Value::Array(items) if items.is_empty() => out.push_str("[]"),
            Value::Array(items) => {
                out.push_str("[\n");
                for (i, item) in items.iter().enumerate() {
                    pad(out, indent + 1);
                    write(out, item, indent + 1);
                    out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
                }
                pad(out, indent);
                out.push(']');
            }
            Value::Object(map) if map.is_empty() => out.push_str("{}"),
            Value::Object(map) => {
                let mut keys: Vec<&String> = map.keys().collect();
                keys.sort();
                out.push_str("{\n");
                for (i, key) in keys.iter().enumerate() {
                    pad(out, indent + 1);
                    out.push_str(&serde_json::to_string(key).expect("key serializes"));
                    out.push_str(": ");
                    write(out, &map[*key], indent + 1);
                    out.push_str(if i + 1 < keys.len() { ",\n" } else { "\n" });
                }
                pad(out, indent);
                out.push('}');
            }
        }
    }
    let mut out = String::new();
    write(&mut out, value, 0);
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format() {
        assert_eq!(format_float(3.0), "3.00000000000");
        assert_eq!(format_float(46.96123456789012), "46.9612345679");
        assert_eq!(format_float(1e-9), "1.00000000000e-9");
        assert_eq!(format_float(-0.25), "-0.250000000000");
        assert_eq!(format_float(0.0), "0.0");
        assert_eq!(format_float(f64::NAN), "null");
        assert_eq!(format_float(9.9999999999999), "10.0000000000");
    }

    #[test]
    fn json_is_sorted_and_stable() {
        let v = serde_json::json!({"b": 1, "a": [1.5, {"z": null, "y": "q\""}], "c": {}});
        let s = canonical_json(&v);
        assert_eq!(
            s,
            "{\n  \"a\": [\n    1.50000000000,\n    {\n      \"y\": \"q\\\"\",\n      \"z\": null\n    }\n  ],\n  \"b\": 1,\n  \"c\": {}\n}\n"
        );
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["b"], 1);
    }
}
