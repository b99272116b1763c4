//! Machine-readable records shared by every command.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Deserializer, Serialize};

use crate::special::Route;

/// How a value was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Series,
    Integral,
    Closed,
    Simulation,
    Quadrature,
}

impl From<Route> for Provenance {
    fn from(r: Route) -> Self {
        match r {
            Route::Series => Provenance::Series,
            Route::Integral => Provenance::Integral,
            Route::Closed => Provenance::Closed,
        }
    }
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::Series => "series",
            Provenance::Integral => "integral",
            Provenance::Closed => "closed",
            Provenance::Simulation => "simulation",
            Provenance::Quadrature => "quadrature",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "series" => Provenance::Series,
            "integral" => Provenance::Integral,
            "closed" => Provenance::Closed,
            "simulation" => Provenance::Simulation,
            "quadrature" => Provenance::Quadrature,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    /// `eval`, `dist` or `simulate`.
    pub command: String,
    /// Function or quantity, e.g. `gml`, `pmf`, `mean`.
    pub target: String,
    pub params: BTreeMap<String, f64>,
    pub provenance: Provenance,
    pub std_err: Option<f64>,
    /// Independent value the record can be compared with, when one exists.
    pub reference: Option<f64>,
    /// Set when `y` is not finite.
    pub divergent: bool,
    pub rng: Option<String>,
}

/// One output point. `x` is the abscissa of the command (`t`, `k`, `u` or the function argument).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub x: f64,
    #[serde(deserialize_with = "number_or_nan")]
    pub y: f64,
    pub meta: Meta,
}

/// JSON has no infinities; they are written as `null` and read back as NaN.
fn number_or_nan<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
}

impl OutputRecord {
    pub fn new(command: &str, target: &str, x: f64, y: f64, provenance: Provenance) -> Self {
        OutputRecord {
            x,
            y,
            meta: Meta {
                command: command.into(),
                target: target.into(),
                params: BTreeMap::new(),
                provenance,
                std_err: None,
                reference: None,
                divergent: !y.is_finite(),
                rng: None,
            },
        }
    }

    pub fn param(mut self, name: &str, value: f64) -> Self {
        self.meta.params.insert(name.into(), value);
        self
    }

    pub fn std_err(mut self, se: f64) -> Self {
        self.meta.std_err = Some(se);
        self
    }

    pub fn reference(mut self, r: f64) -> Self {
        self.meta.reference = Some(r);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// Flat CSV row: `params` becomes `name=value` pairs joined by `;`.
#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    x: f64,
    y: f64,
    command: String,
    target: String,
    params: String,
    provenance: String,
    std_err: Option<f64>,
    reference: Option<f64>,
    divergent: bool,
    rng: Option<String>,
}

impl From<&OutputRecord> for CsvRow {
    fn from(r: &OutputRecord) -> Self {
        let params = r.meta.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";");
        CsvRow {
            x: r.x,
            y: r.y,
            command: r.meta.command.clone(),
            target: r.meta.target.clone(),
            params,
            provenance: r.meta.provenance.as_str().into(),
            std_err: r.meta.std_err,
            reference: r.meta.reference,
            divergent: r.meta.divergent,
            rng: r.meta.rng.clone(),
        }
    }
}

impl TryFrom<CsvRow> for OutputRecord {
    type Error = String;

    fn try_from(r: CsvRow) -> Result<Self, String> {
        let mut params = BTreeMap::new();
        for pair in r.params.split(';').filter(|p| !p.is_empty()) {
            let (k, v) = pair.split_once('=').ok_or_else(|| format!("bad parameter '{pair}'"))?;
            params.insert(k.to_string(), v.parse::<f64>().map_err(|e| format!("bad parameter '{pair}': {e}"))?);
        }
        let provenance = Provenance::parse(&r.provenance).ok_or_else(|| format!("unknown provenance '{}'", r.provenance))?;
        Ok(OutputRecord {
            x: r.x,
            y: r.y,
            meta: Meta {
                command: r.command,
                target: r.target,
                params,
                provenance,
                std_err: r.std_err,
                reference: r.reference,
                divergent: r.divergent,
                rng: r.rng,
            },
        })
    }
}

/// Write records as a JSON array or as CSV with a header row.
pub fn write_records<W: Write>(records: &[OutputRecord], format: Format, w: W) -> std::io::Result<()> {
    match format {
        Format::Json => {
            let mut w = w;
            serde_json::to_writer_pretty(&mut w, records)?;
            w.write_all(b"\n")
        }
        Format::Csv => {
            let mut wr = csv::Writer::from_writer(w);
            for r in records {
                wr.serialize(CsvRow::from(r))?;
            }
            if records.is_empty() {
                wr.write_record(["x", "y", "command", "target", "params", "provenance", "std_err", "reference", "divergent", "rng"])?;
            }
            wr.flush()
        }
    }
}

/// Parse output of [`write_records`].
pub fn read_records(text: &str, format: Format) -> Result<Vec<OutputRecord>, String> {
    match format {
        Format::Json => serde_json::from_str(text).map_err(|e| e.to_string()),
        Format::Csv => {
            let mut rd = csv::Reader::from_reader(text.as_bytes());
            rd.deserialize::<CsvRow>()
                .map(|row| row.map_err(|e| e.to_string()).and_then(OutputRecord::try_from))
                .collect()
        }
    }
}
