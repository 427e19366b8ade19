//! Experiment reports: `report.json` and `series.csv`.

use std::fs;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, ExperimentKind};
use crate::error::Result;

pub const SCHEMA_VERSION: u32 = 1;
pub const SERIES_HEADER: [&str; 4] = ["experiment", "n", "stat_name", "value"];

/// JSON has no infinities or NaN; those are written as the strings
/// `"inf"`, `"-inf"` and `"NaN"`.
mod float_repr {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else if v.is_nan() {
            s.serialize_str("NaN")
        } else if *v > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(v),
            Repr::Text(t) => match t.as_str() {
                "NaN" => Ok(f64::NAN),
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                other => Err(D::Error::custom(format!("not a number: {other}"))),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub n: usize,
    pub stat_name: String,
    #[serde(with = "float_repr")]
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stat {
    pub name: String,
    #[serde(with = "float_repr")]
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Comparison {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">=")]
    AtLeast,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub status: Status,
    #[serde(with = "float_repr")]
    pub observed: f64,
    pub comparison: Comparison,
    #[serde(with = "float_repr")]
    pub threshold: f64,
}

impl Verdict {
    pub fn at_most(name: impl Into<String>, observed: f64, threshold: f64) -> Self {
        Self::check(name, observed, Comparison::AtMost, threshold)
    }

    pub fn at_least(name: impl Into<String>, observed: f64, threshold: f64) -> Self {
        Self::check(name, observed, Comparison::AtLeast, threshold)
    }

    fn check(name: impl Into<String>, observed: f64, comparison: Comparison, threshold: f64) -> Self {
        let ok = match comparison {
            Comparison::AtMost => observed <= threshold,
            Comparison::AtLeast => observed >= threshold,
        };
        Self {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            observed,
            comparison,
            threshold,
        }
    }

    pub fn inconclusive(name: impl Into<String>, comparison: Comparison, threshold: f64) -> Self {
        Self {
            name: name.into(),
            status: Status::Inconclusive,
            observed: f64::NAN,
            comparison,
            threshold,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub phase: String,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub experiment: ExperimentKind,
    pub config: ExperimentConfig,
    pub rows: Vec<Row>,
    pub summary: Vec<Stat>,
    pub verdicts: Vec<Verdict>,
    pub notes: Vec<String>,
    pub timings: Vec<Timing>,
}

impl Report {
    pub fn new(config: ExperimentConfig) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            experiment: config.experiment,
            config,
            rows: Vec::new(),
            summary: Vec::new(),
            verdicts: Vec::new(),
            notes: Vec::new(),
            timings: Vec::new(),
        }
    }

    pub fn row(&mut self, n: usize, stat_name: &str, value: f64) {
        self.rows.push(Row {
            n,
            stat_name: stat_name.to_string(),
            value,
        });
    }

    pub fn stat(&mut self, name: &str, value: f64) {
        self.summary.push(Stat {
            name: name.to_string(),
            value,
        });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn verdict(&mut self, v: Verdict) {
        self.verdicts.push(v);
    }

    /// Records the wall-clock time elapsed since `start` under `phase`.
    pub fn add_timing(&mut self, phase: &str, start: Instant) {
        self.timings.push(Timing {
            phase: phase.to_string(),
            seconds: start.elapsed().as_secs_f64(),
        });
    }

    /// First row for `(n, stat_name)`.
    pub fn value(&self, n: usize, stat_name: &str) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.n == n && r.stat_name == stat_name)
            .map(|r| r.value)
    }

    /// All `(n, value)` pairs for `stat_name`, in row order.
    pub fn series(&self, stat_name: &str) -> Vec<(usize, f64)> {
        self.rows
            .iter()
            .filter(|r| r.stat_name == stat_name)
            .map(|r| (r.n, r.value))
            .collect()
    }

    pub fn summary_value(&self, name: &str) -> Option<f64> {
        self.summary.iter().find(|s| s.name == name).map(|s| s.value)
    }

    pub fn find_verdict(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(Verdict::passed)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// `series.csv` contents. Values use the shortest round-trip form.
    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(SERIES_HEADER)?;
        let exp = self.experiment.as_str();
        for r in &self.rows {
            w.write_record([exp, &r.n.to_string(), &r.stat_name, &format!("{:?}", r.value)])?;
        }
        w.into_inner()
            .map_err(|e| crate::error::Error::Io(e.to_string()))
    }

    /// Writes `report.json` and `series.csv` into `dir`, creating it.
    pub fn write_to_dir(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("report.json"), self.to_json()?)?;
        fs::write(dir.join("series.csv"), self.to_csv()?)?;
        Ok(())
    }
}
