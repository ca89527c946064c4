use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub measured: f64,
    pub tolerance: f64,
}

impl Check {
    /// Passes when `measured <= tolerance`; NaN fails.
    pub fn at_most(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        let status = if measured <= tolerance { Status::Pass } else { Status::Fail };
        Check { name: name.into(), status, measured, tolerance }
    }
}

/// A CSV table; in JSON it becomes a list of objects keyed by column.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Serialize for Table {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let objects: Vec<BTreeMap<&str, &Value>> = self
            .rows
            .iter()
            .map(|row| self.columns.iter().copied().zip(row).collect())
            .collect();
        objects.serialize(ser)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: &'static str,
    pub inputs: BTreeMap<String, Value>,
    pub outputs: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
    /// Reported on stderr only, so stdout stays byte-identical across runs.
    #[serde(skip)]
    pub wall_time_ms: u128,
}

impl RunReport {
    pub fn new(command: &'static str) -> Self {
        RunReport {
            command,
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
            checks: Vec::new(),
            table: None,
            wall_time_ms: 0,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_owned(), value.into());
        self
    }

    pub fn output(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.outputs.insert(key.to_owned(), value.into());
        self
    }

    pub fn check(&mut self, check: Check) -> &mut Self {
        self.checks.push(check);
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is always serializable")
    }

    /// Plain-text rendering: `key: value` lines, one line per check, then
    /// the table as CSV under `#`-prefixed metadata.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let prefix = if self.table.is_some() { "# " } else { "" };
        let _ = writeln!(out, "{prefix}command: {}", self.command);
        for (k, v) in self.inputs.iter().chain(&self.outputs) {
            let _ = writeln!(out, "{prefix}{k}: {}", format_value(v));
        }
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            let _ = writeln!(
                out,
                "{prefix}{tag} {} measured={} tolerance={}",
                c.name,
                format_float(c.measured),
                format_float(c.tolerance)
            );
        }
        if let Some(table) = &self.table {
            let _ = writeln!(out, "{}", table.columns.join(","));
            for row in &table.rows {
                let cells: Vec<String> = row.iter().map(format_value).collect();
                let _ = writeln!(out, "{}", cells.join(","));
            }
        }
        out
    }
}

/// Seventeen significant digits.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

fn format_value(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => format_float(n.as_f64().unwrap_or(f64::NAN)),
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let inner: Vec<String> = items.iter().map(format_value).collect();
            format!("[{}]", inner.join(", "))
        }
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// A float as a JSON value; non-finite values become strings since JSON has
/// no representation for them.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or_else(|| Value::String(x.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_have_seventeen_digits() {
        assert_eq!(format_float(0.75), "7.5000000000000000e-1");
        assert_eq!(format_float(1.0 / 3.0), "3.3333333333333331e-1");
        assert_eq!(format_float(f64::INFINITY), "inf");
    }

    #[test]
    fn nan_fails_checks() {
        assert_eq!(Check::at_most("x", f64::NAN, 1.0).status, Status::Fail);
        assert_eq!(Check::at_most("x", 1.0, 1.0).status, Status::Pass);
    }

    #[test]
    fn table_renders_as_csv_and_objects() {
        let mut r = RunReport::new("demo");
        r.input("alpha", "1/4");
        r.table = Some(Table {
            columns: vec!["v", "regime"],
            rows: vec![vec![num(0.5), "disordered".into()]],
        });
        let text = r.to_text();
        assert!(text.starts_with("# command: demo\n# alpha: 1/4\n"));
        assert!(text.ends_with("v,regime\n5.0000000000000000e-1,disordered\n"));
        let json: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["table"][0]["regime"], "disordered");
        assert!(json.get("wall_time_ms").is_none());
    }
}
