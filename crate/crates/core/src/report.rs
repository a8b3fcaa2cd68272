//! CSV and JSON encodings of experiment records.
//!
//! CSV files start with a `# schema=1` comment line followed by a header row.
//! Floats are written in shortest round-trip form, so parsing a file and
//! writing it again reproduces it byte for byte.
//!
//! Discrepancy columns: `kind, p, t, x, y, x_floor, y_floor, poly, a, terms,
//! sum_abs_dev, bound_value, ratio, nontrivial, skipped_primes`. Absent
//! optional values are empty; `skipped_primes` is `;`-separated.
//!
//! Zero-set columns: `poly, x, y, x_floor, y_floor, count, points`, with
//! points written as `u:v` pairs joined by `;`.
//!
//! Single-result commands use the flat records [`CountRecord`],
//! [`VisibleRecord`], [`IrreducibilityRecord`] and [`BadLevelRecord`]; their
//! columns are the struct fields in order.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::experiments::{DiscrepancyRecord, SweepKind, ZeroSetReport};

pub const SCHEMA_VERSION: u32 = 1;

const SCHEMA_LINE: &str = "# schema=1";

pub const DISCREPANCY_COLUMNS: [&str; 15] = [
    "kind",
    "p",
    "t",
    "x",
    "y",
    "x_floor",
    "y_floor",
    "poly",
    "a",
    "terms",
    "sum_abs_dev",
    "bound_value",
    "ratio",
    "nontrivial",
    "skipped_primes",
];

pub const ZERO_SET_COLUMNS: [&str; 7] = ["poly", "x", "y", "x_floor", "y_floor", "count", "points"];

pub const COUNT_COLUMNS: [&str; 8] = ["poly", "p", "a", "x", "y", "x_floor", "y_floor", "count"];

pub const VISIBLE_COLUMNS: [&str; 10] = [
    "poly", "p", "a", "x", "y", "x_floor", "y_floor", "direct", "mobius", "expected",
];

pub const IRREDUCIBILITY_COLUMNS: [&str; 6] = [
    "poly",
    "p",
    "irreducible_over_base",
    "absolutely_irreducible",
    "witness_extension_degree",
    "witness_factor_degree",
];

pub const BAD_LEVEL_COLUMNS: [&str; 4] = ["poly", "p", "count", "values"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountRecord {
    pub poly: String,
    pub p: u64,
    pub a: u64,
    pub x: f64,
    pub y: f64,
    pub x_floor: u64,
    pub y_floor: u64,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VisibleRecord {
    pub poly: String,
    pub p: u64,
    pub a: u64,
    pub x: f64,
    pub y: f64,
    pub x_floor: u64,
    pub y_floor: u64,
    pub direct: u64,
    pub mobius: u64,
    pub expected: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IrreducibilityRecord {
    pub poly: String,
    pub p: u64,
    pub irreducible_over_base: bool,
    pub absolutely_irreducible: bool,
    pub witness_extension_degree: Option<u32>,
    pub witness_factor_degree: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BadLevelRecord {
    pub poly: String,
    pub p: u64,
    pub values: Vec<u64>,
}

/// What a CSV file holds, decided from its header row.
#[derive(Debug, Clone, PartialEq)]
pub enum CsvContents {
    Discrepancy(Vec<DiscrepancyRecord>),
    ZeroSets(Vec<ZeroSetReport>),
    Counts(Vec<CountRecord>),
    Visible(Vec<VisibleRecord>),
    Irreducibility(Vec<IrreducibilityRecord>),
    BadLevels(Vec<BadLevelRecord>),
}

impl CsvContents {
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        match self {
            CsvContents::Discrepancy(r) => write_discrepancy_csv(w, r),
            CsvContents::ZeroSets(r) => write_zero_set_csv(w, r),
            CsvContents::Counts(r) => write_flat_csv(w, &COUNT_COLUMNS, r),
            CsvContents::Visible(r) => write_flat_csv(w, &VISIBLE_COLUMNS, r),
            CsvContents::Irreducibility(r) => write_flat_csv(w, &IRREDUCIBILITY_COLUMNS, r),
            CsvContents::BadLevels(r) => write_bad_level_csv(w, r),
        }
    }

    /// `{"schema": 1, "records": [...]}`.
    pub fn to_json(&self) -> Result<String> {
        match self {
            CsvContents::Discrepancy(r) => to_json(r),
            CsvContents::ZeroSets(r) => to_json(r),
            CsvContents::Counts(r) => to_json(r),
            CsvContents::Visible(r) => to_json(r),
            CsvContents::Irreducibility(r) => to_json(r),
            CsvContents::BadLevels(r) => to_json(r),
        }
    }
}

pub fn write_flat_csv<W: Write, T: Serialize>(w: W, columns: &[&str], records: &[T]) -> Result<()> {
    let mut out = writer(w, columns)?;
    for r in records {
        out.serialize(r).map_err(csv_err)?;
    }
    out.flush().map_err(io_err)
}

pub fn write_bad_level_csv<W: Write>(w: W, records: &[BadLevelRecord]) -> Result<()> {
    let mut out = writer(w, &BAD_LEVEL_COLUMNS)?;
    for r in records {
        out.write_record([
            r.poly.clone(),
            r.p.to_string(),
            r.values.len().to_string(),
            join(&r.values),
        ])
        .map_err(csv_err)?;
    }
    out.flush().map_err(io_err)
}

fn read_flat<T: serde::de::DeserializeOwned>(rd: &mut csv::Reader<&[u8]>) -> Result<Vec<T>> {
    rd.deserialize().map(|r| r.map_err(csv_err)).collect()
}

fn fmt_opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

fn csv_err(e: csv::Error) -> Error {
    Error::Format(e.to_string())
}

fn io_err(e: std::io::Error) -> Error {
    Error::Format(e.to_string())
}

fn writer<W: Write>(mut w: W, header: &[&str]) -> Result<csv::Writer<W>> {
    writeln!(w, "{SCHEMA_LINE}").map_err(io_err)?;
    let mut out = csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w);
    out.write_record(header).map_err(csv_err)?;
    Ok(out)
}

pub fn write_discrepancy_csv<W: Write>(w: W, records: &[DiscrepancyRecord]) -> Result<()> {
    let mut out = writer(w, &DISCREPANCY_COLUMNS)?;
    for r in records {
        out.write_record([
            r.kind.as_str().to_string(),
            fmt_opt(r.p),
            fmt_opt(r.t),
            r.x.to_string(),
            r.y.to_string(),
            r.x_floor.to_string(),
            r.y_floor.to_string(),
            r.poly.clone(),
            fmt_opt(r.a),
            r.terms.to_string(),
            r.sum_abs_dev.to_string(),
            r.bound_value.to_string(),
            r.ratio.to_string(),
            r.nontrivial.to_string(),
            join(&r.skipped_primes),
        ])
        .map_err(csv_err)?;
    }
    out.flush().map_err(io_err)
}

pub fn write_zero_set_csv<W: Write>(w: W, reports: &[ZeroSetReport]) -> Result<()> {
    let mut out = writer(w, &ZERO_SET_COLUMNS)?;
    for r in reports {
        out.write_record([
            r.poly.clone(),
            r.x.to_string(),
            r.y.to_string(),
            (r.x.floor() as u64).to_string(),
            (r.y.floor() as u64).to_string(),
            r.points.len().to_string(),
            join(r.points.iter().map(|(u, v)| format!("{u}:{v}"))),
        ])
        .map_err(csv_err)?;
    }
    out.flush().map_err(io_err)
}

fn parse<T: std::str::FromStr>(field: &str, column: &str, row: usize) -> Result<T> {
    field
        .parse()
        .map_err(|_| Error::Format(format!("row {row}: bad {column} value {field:?}")))
}

fn parse_opt<T: std::str::FromStr>(field: &str, column: &str, row: usize) -> Result<Option<T>> {
    if field.is_empty() {
        Ok(None)
    } else {
        parse(field, column, row).map(Some)
    }
}

fn parse_list<T: std::str::FromStr>(field: &str, column: &str, row: usize) -> Result<Vec<T>> {
    if field.is_empty() {
        return Ok(Vec::new());
    }
    field.split(';').map(|s| parse(s, column, row)).collect()
}

/// Reads a CSV written by [`write_discrepancy_csv`] or [`write_zero_set_csv`].
pub fn read_csv<R: Read>(r: R) -> Result<CsvContents> {
    let mut text = String::new();
    let mut r = r;
    r.read_to_string(&mut text).map_err(io_err)?;
    let mut schema = None;
    for line in text.lines().take_while(|l| l.starts_with('#')) {
        if let Some(v) = line.trim_start_matches('#').trim().strip_prefix("schema=") {
            schema = Some(v.trim().to_string());
        }
    }
    match schema.as_deref() {
        Some("1") => {}
        Some(v) => return Err(Error::Format(format!("unsupported schema version {v}"))),
        None => return Err(Error::Format("missing schema comment".into())),
    }
    let mut rd = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let header: Vec<String> = rd
        .headers()
        .map_err(csv_err)?
        .iter()
        .map(str::to_string)
        .collect();
    if header == DISCREPANCY_COLUMNS {
        let mut out = Vec::new();
        for (i, rec) in rd.records().enumerate() {
            let rec = rec.map_err(csv_err)?;
            let row = i + 1;
            let f = |k: usize| &rec[k];
            out.push(DiscrepancyRecord {
                kind: SweepKind::parse(f(0))?,
                p: parse_opt(f(1), "p", row)?,
                t: parse_opt(f(2), "t", row)?,
                x: parse(f(3), "x", row)?,
                y: parse(f(4), "y", row)?,
                x_floor: parse(f(5), "x_floor", row)?,
                y_floor: parse(f(6), "y_floor", row)?,
                poly: f(7).to_string(),
                a: parse_opt(f(8), "a", row)?,
                terms: parse(f(9), "terms", row)?,
                sum_abs_dev: parse(f(10), "sum_abs_dev", row)?,
                bound_value: parse(f(11), "bound_value", row)?,
                ratio: parse(f(12), "ratio", row)?,
                nontrivial: parse(f(13), "nontrivial", row)?,
                skipped_primes: parse_list(f(14), "skipped_primes", row)?,
            });
        }
        Ok(CsvContents::Discrepancy(out))
    } else if header == ZERO_SET_COLUMNS {
        let mut out = Vec::new();
        for (i, rec) in rd.records().enumerate() {
            let rec = rec.map_err(csv_err)?;
            let row = i + 1;
            let points = if rec[6].is_empty() {
                Vec::new()
            } else {
                rec[6]
                    .split(';')
                    .map(|pt| {
                        let (u, v) = pt
                            .split_once(':')
                            .ok_or_else(|| Error::Format(format!("row {row}: bad point {pt:?}")))?;
                        Ok((parse(u, "points", row)?, parse(v, "points", row)?))
                    })
                    .collect::<Result<Vec<_>>>()?
            };
            let count: usize = parse(&rec[5], "count", row)?;
            if count != points.len() {
                return Err(Error::Format(format!(
                    "row {row}: count {count} but {} points",
                    points.len()
                )));
            }
            out.push(ZeroSetReport {
                poly: rec[0].to_string(),
                x: parse(&rec[1], "x", row)?,
                y: parse(&rec[2], "y", row)?,
                points,
            });
        }
        Ok(CsvContents::ZeroSets(out))
    } else if header == COUNT_COLUMNS {
        read_flat(&mut rd).map(CsvContents::Counts)
    } else if header == VISIBLE_COLUMNS {
        read_flat(&mut rd).map(CsvContents::Visible)
    } else if header == IRREDUCIBILITY_COLUMNS {
        read_flat(&mut rd).map(CsvContents::Irreducibility)
    } else if header == BAD_LEVEL_COLUMNS {
        let mut out = Vec::new();
        for (i, rec) in rd.records().enumerate() {
            let rec = rec.map_err(csv_err)?;
            let row = i + 1;
            let values: Vec<u64> = parse_list(&rec[3], "values", row)?;
            let count: usize = parse(&rec[2], "count", row)?;
            if count != values.len() {
                return Err(Error::Format(format!(
                    "row {row}: count {count} but {} values",
                    values.len()
                )));
            }
            out.push(BadLevelRecord {
                poly: rec[0].to_string(),
                p: parse(&rec[1], "p", row)?,
                values,
            });
        }
        Ok(CsvContents::BadLevels(out))
    } else {
        Err(Error::Format(format!("unrecognized CSV header {header:?}")))
    }
}

#[derive(Serialize, Deserialize)]
struct Envelope<T> {
    schema: u32,
    records: Vec<T>,
}

pub fn discrepancy_json(records: &[DiscrepancyRecord]) -> Result<String> {
    to_json(records)
}

pub fn zero_set_json(reports: &[ZeroSetReport]) -> Result<String> {
    to_json(reports)
}

fn to_json<T: Serialize + Clone>(records: &[T]) -> Result<String> {
    let env = Envelope {
        schema: SCHEMA_VERSION,
        records: records.to_vec(),
    };
    serde_json::to_string_pretty(&env).map_err(|e| Error::Format(e.to_string()))
}

pub fn discrepancy_from_json(s: &str) -> Result<Vec<DiscrepancyRecord>> {
    let env: Envelope<DiscrepancyRecord> =
        serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))?;
    if env.schema != SCHEMA_VERSION {
        return Err(Error::Format(format!(
            "unsupported schema version {}",
            env.schema
        )));
    }
    Ok(env.records)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Vec<DiscrepancyRecord> {
        vec![
            DiscrepancyRecord {
                kind: SweepKind::LevelAverage,
                p: Some(101),
                t: None,
                x: 101.0,
                y: 50.5,
                x_floor: 101,
                y_floor: 50,
                poly: "V^2 - U^3 - U - 1".into(),
                a: None,
                terms: 101,
                sum_abs_dev: 1_234.567_890_123_456_7,
                bound_value: 0.1 + 0.2,
                ratio: 1.0 / 3.0,
                nontrivial: true,
                skipped_primes: vec![],
            },
            DiscrepancyRecord {
                kind: SweepKind::PrimeAverage,
                p: None,
                t: Some(200.0),
                x: 100.0,
                y: 100.0,
                x_floor: 100,
                y_floor: 100,
                poly: "U*V + 3, odd".into(),
                a: Some(0),
                terms: 19,
                sum_abs_dev: 1e-300,
                bound_value: 1e300,
                ratio: 5e-324,
                nontrivial: false,
                skipped_primes: vec![101, 103],
            },
        ]
    }

    #[test]
    fn discrepancy_csv_round_trip() {
        let recs = sample();
        let mut buf = Vec::new();
        write_discrepancy_csv(&mut buf, &recs).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("# schema=1\nkind,p,t,x,y,x_floor,y_floor,poly,a,terms,"));
        let back = read_csv(buf.as_slice()).unwrap();
        assert_eq!(back, CsvContents::Discrepancy(recs.clone()));
        let mut again = Vec::new();
        write_discrepancy_csv(&mut again, &recs).unwrap();
        assert_eq!(buf, again);
    }

    #[test]
    fn zero_set_csv_round_trip() {
        let reps = vec![
            ZeroSetReport {
                poly: "V^2 - U^3".into(),
                x: 100.0,
                y: 1000.0,
                points: vec![(1, 1), (4, 8)],
            },
            ZeroSetReport {
                poly: "U*V".into(),
                x: 2.5,
                y: 3.0,
                points: vec![],
            },
        ];
        let mut buf = Vec::new();
        write_zero_set_csv(&mut buf, &reps).unwrap();
        assert_eq!(
            read_csv(buf.as_slice()).unwrap(),
            CsvContents::ZeroSets(reps)
        );
    }

    #[test]
    fn flat_records_round_trip() {
        let all = [
            CsvContents::Counts(vec![CountRecord {
                poly: "U*V".into(),
                p: 5,
                a: 1,
                x: 5.0,
                y: 4.5,
                x_floor: 5,
                y_floor: 4,
                count: 4,
            }]),
            CsvContents::Visible(vec![VisibleRecord {
                poly: "U*V".into(),
                p: 5,
                a: 1,
                x: 5.0,
                y: 5.0,
                x_floor: 5,
                y_floor: 5,
                direct: 3,
                mobius: 3,
                expected: 30.0 / (std::f64::consts::PI * std::f64::consts::PI),
            }]),
            CsvContents::Irreducibility(vec![
                IrreducibilityRecord {
                    poly: "U^2 + V^2".into(),
                    p: 7,
                    irreducible_over_base: true,
                    absolutely_irreducible: false,
                    witness_extension_degree: Some(2),
                    witness_factor_degree: Some(1),
                },
                IrreducibilityRecord {
                    poly: "V - U".into(),
                    p: 7,
                    irreducible_over_base: true,
                    absolutely_irreducible: true,
                    witness_extension_degree: None,
                    witness_factor_degree: None,
                },
            ]),
            CsvContents::BadLevels(vec![
                BadLevelRecord {
                    poly: "U*V".into(),
                    p: 5,
                    values: vec![0],
                },
                BadLevelRecord {
                    poly: "V - U^2".into(),
                    p: 5,
                    values: vec![],
                },
            ]),
        ];
        for c in all {
            let mut buf = Vec::new();
            c.write_csv(&mut buf).unwrap();
            assert!(buf.starts_with(b"# schema=1\n"));
            assert_eq!(read_csv(buf.as_slice()).unwrap(), c);
            let mut again = Vec::new();
            read_csv(buf.as_slice())
                .unwrap()
                .write_csv(&mut again)
                .unwrap();
            assert_eq!(buf, again);
        }
    }

    #[test]
    fn json_round_trip() {
        let recs = sample();
        let s = discrepancy_json(&recs).unwrap();
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["records"][0]["kind"], "level_average");
        assert_eq!(discrepancy_from_json(&s).unwrap(), recs);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(read_csv("kind,p\n".as_bytes()).is_err());
        assert!(read_csv("# schema=2\nkind\n".as_bytes()).is_err());
        assert!(read_csv("# schema=1\nfoo,bar\n1,2\n".as_bytes()).is_err());
    }
}
