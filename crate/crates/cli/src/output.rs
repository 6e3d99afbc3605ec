use std::fmt::Write;

use romik_core::congruence::{CheckReport, Param};
use serde_json::{Map, Value};

use crate::{CliError, Format};

/// A value table: integer index columns followed by one decimal value.
pub struct Table {
    pub name: &'static str,
    pub index_names: &'static [&'static str],
    pub value_name: &'static str,
    pub rows: Vec<(Vec<usize>, String)>,
}

impl Table {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.rows.iter().fold(String::new(), |mut s, (idx, v)| {
                for i in idx {
                    let _ = write!(s, "{i},");
                }
                let _ = writeln!(s, "{v}");
                s
            }),
            Format::Text => self.rows.iter().fold(String::new(), |mut s, (idx, v)| {
                let args: Vec<String> = idx.iter().map(ToString::to_string).collect();
                let _ = writeln!(s, "{}({}) = {v}", self.name, args.join(","));
                s
            }),
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|(idx, v)| {
                        let mut obj = Map::new();
                        for (name, i) in self.index_names.iter().zip(idx) {
                            obj.insert((*name).into(), Value::from(*i));
                        }
                        // Decimal strings: never a float, never truncated.
                        obj.insert(self.value_name.into(), Value::from(v.as_str()));
                        Value::Object(obj)
                    })
                    .collect();
                let mut s = serde_json::to_string_pretty(&rows).expect("plain JSON");
                s.push('\n');
                s
            }
        }
    }
}

pub fn render_reports(reports: &[CheckReport], format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(reports).expect("plain JSON");
            s.push('\n');
            Ok(s)
        }
        Format::Text => Ok(reports.iter().fold(String::new(), |mut s, r| {
            let params: Vec<String> = r
                .params
                .iter()
                .map(|(k, v)| match v {
                    Param::Int(i) => format!("{k}={i}"),
                    Param::Text(t) => format!("{k}={t}"),
                })
                .collect();
            let _ = write!(s, "{} [{}] {}", r.check_id, params.join(" "), r.status);
            let ext = |e: &romik_core::congruence::Extent| {
                format!(
                    "start={} period={}",
                    e.start.map_or("-".into(), |x| x.to_string()),
                    e.period.map_or("-".into(), |x| x.to_string())
                )
            };
            let _ = write!(s, "; claimed {}; observed {}", ext(&r.claimed), ext(&r.observed));
            if let Some(w) = &r.witness {
                let _ = write!(s, "; witness n={}: {}", w.index, w.detail);
            }
            s.push('\n');
            s
        })),
        Format::Csv => Err(CliError("csv is only available for value tables".into())),
    }
}
