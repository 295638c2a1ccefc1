use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::experiments::config::Method;
use crate::experiments::harness::{MethodOutcome, RepetitionOutcome};

/// Aggregates of one method over the successful repetitions.
#[derive(Clone, Debug, PartialEq)]
pub struct MethodRow {
    pub method: Method,
    /// Repetitions whose selected set contains the true support.
    pub covered: usize,
    pub repetitions: usize,
    /// Mean final RSS.
    pub ao: f64,
    pub mean_iterations: f64,
    /// Repetitions dropped because generation or fitting failed.
    pub exclusions: usize,
}

impl MethodRow {
    /// Coverage rate `covered / repetitions` (NaN when nothing was kept).
    pub fn cr(&self) -> f64 {
        self.covered as f64 / self.repetitions as f64
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MethodTable {
    pub rows: Vec<MethodRow>,
}

impl MethodTable {
    /// A table with zero kept repetitions for each method.
    pub fn empty(methods: &[Method]) -> Self {
        MethodTable {
            rows: methods
                .iter()
                .map(|&method| MethodRow {
                    method,
                    covered: 0,
                    repetitions: 0,
                    ao: f64::NAN,
                    mean_iterations: f64::NAN,
                    exclusions: 0,
                })
                .collect(),
        }
    }

    pub fn with_exclusions(mut self, exclusions: usize) -> Self {
        for r in &mut self.rows {
            r.exclusions = exclusions;
        }
        self
    }

    pub fn get(&self, method: Method) -> Option<&MethodRow> {
        self.rows.iter().find(|r| r.method == method)
    }

    /// Writes the aggregate CSV: method, cr, ao, mean_iterations,
    /// repetitions, exclusions.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "method",
            "cr",
            "ao",
            "mean_iterations",
            "repetitions",
            "exclusions",
        ])
        .map_err(csv_error)?;
        for r in &self.rows {
            w.write_record([
                r.method.name().to_string(),
                r.cr().to_string(),
                r.ao.to_string(),
                r.mean_iterations.to_string(),
                r.repetitions.to_string(),
                r.exclusions.to_string(),
            ])
            .map_err(csv_error)?;
        }
        w.flush().map_err(|e| csv_error(e.into()))
    }
}

/// Per-method CR, AO and mean iteration count. Methods appear in the order
/// of the first repetition; every repetition must report the same methods.
pub fn aggregate(results: &[RepetitionOutcome], true_support: &[usize]) -> Result<MethodTable> {
    let first = results
        .first()
        .ok_or_else(|| Error::invalid("results", "no repetitions to aggregate"))?;
    let mut rows = Vec::with_capacity(first.outcomes.len());
    for o in &first.outcomes {
        let mut covered = 0;
        let mut rss_sum = 0.0;
        let mut iter_sum = 0usize;
        for rep in results {
            let mo = rep.get(o.method).ok_or_else(|| {
                Error::invalid(
                    "results",
                    format!("repetition {} has no {} outcome", rep.rep, o.method),
                )
            })?;
            covered += usize::from(mo.covers(true_support));
            rss_sum += mo.rss;
            iter_sum += mo.iterations;
        }
        let k = results.len() as f64;
        rows.push(MethodRow {
            method: o.method,
            covered,
            repetitions: results.len(),
            ao: rss_sum / k,
            mean_iterations: iter_sum as f64 / k,
            exclusions: 0,
        });
    }
    Ok(MethodTable { rows })
}

/// Writes per-repetition records: rep, method, covered, rss, iterations,
/// selected_indices (1-based, `;`-joined). Floats use the shortest
/// representation that parses back to the same value.
pub fn write_records<W: Write>(
    out: W,
    records: &[RepetitionOutcome],
    true_support: &[usize],
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "rep",
        "method",
        "covered",
        "rss",
        "iterations",
        "selected_indices",
    ])
    .map_err(csv_error)?;
    for rec in records {
        for o in &rec.outcomes {
            let selected = o
                .selected
                .iter()
                .map(|j| (j + 1).to_string())
                .collect::<Vec<_>>()
                .join(";");
            w.write_record([
                rec.rep.to_string(),
                o.method.name().to_string(),
                u8::from(o.covers(true_support)).to_string(),
                o.rss.to_string(),
                o.iterations.to_string(),
                selected,
            ])
            .map_err(csv_error)?;
        }
    }
    w.flush().map_err(|e| csv_error(e.into()))
}

/// Reads a record file written by [`write_records`], grouping rows by
/// repetition in file order.
pub fn read_records<R: Read>(input: R) -> Result<Vec<RepetitionOutcome>> {
    let mut reader = csv::Reader::from_reader(input);
    let mut out: Vec<RepetitionOutcome> = Vec::new();
    for (k, row) in reader.records().enumerate() {
        let row = row.map_err(csv_error)?;
        let line = row.position().map_or(k as u64 + 2, |p| p.line());
        let bad = |what: &str| Error::Parse {
            path: "<records>".into(),
            line,
            reason: format!("bad {what}"),
        };
        if row.len() != 6 {
            return Err(bad("field count"));
        }
        let rep: usize = row[0].parse().map_err(|_| bad("rep"))?;
        let method: Method = row[1].parse().map_err(|_| bad("method"))?;
        let rss: f64 = row[3].parse().map_err(|_| bad("rss"))?;
        let iterations: usize = row[4].parse().map_err(|_| bad("iterations"))?;
        let selected = if row[5].is_empty() {
            Vec::new()
        } else {
            row[5]
                .split(';')
                .map(|s| match s.parse::<usize>() {
                    Ok(j) if j >= 1 => Ok(j - 1),
                    _ => Err(bad("selected_indices")),
                })
                .collect::<Result<Vec<_>>>()?
        };
        let outcome = MethodOutcome {
            method,
            selected,
            rss,
            iterations,
        };
        match out.last_mut() {
            Some(last) if last.rep == rep => last.outcomes.push(outcome),
            _ => out.push(RepetitionOutcome {
                rep,
                outcomes: vec![outcome],
            }),
        }
    }
    Ok(out)
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line());
    Error::Parse {
        path: "<csv>".into(),
        line,
        reason: e.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn outcome(method: Method, selected: &[usize], rss: f64, iterations: usize) -> MethodOutcome {
        MethodOutcome {
            method,
            selected: selected.to_vec(),
            rss,
            iterations,
        }
    }

    #[test]
    fn half_coverage() {
        let results = vec![
            RepetitionOutcome {
                rep: 0,
                outcomes: vec![outcome(Method::Sis, &[0, 1, 4], 2.0, 0)],
            },
            RepetitionOutcome {
                rep: 1,
                outcomes: vec![outcome(Method::Sis, &[0, 3, 4], 2.0, 0)],
            },
        ];
        let t = aggregate(&results, &[0, 1]).unwrap();
        let row = t.get(Method::Sis).unwrap();
        assert_eq!((row.covered, row.repetitions), (1, 2));
        assert_eq!(row.cr(), 0.5);
        assert_eq!(row.ao, 2.0);
    }

    #[test]
    fn empty_results_rejected() {
        assert!(aggregate(&[], &[0]).is_err());
    }

    #[test]
    fn records_round_trip() {
        let results = vec![
            RepetitionOutcome {
                rep: 0,
                outcomes: vec![
                    outcome(Method::Fs, &[0, 2], 0.1 + 0.2, 2),
                    outcome(Method::FossFs, &[], 1.0 / 3.0, 5),
                ],
            },
            RepetitionOutcome {
                rep: 3,
                outcomes: vec![
                    outcome(Method::Fs, &[1, 2], 7e-300, 2),
                    outcome(Method::FossFs, &[1, 9], 12.5, 1),
                ],
            },
        ];
        let mut buf = Vec::new();
        write_records(&mut buf, &results, &[2]).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(
            text.contains("0,FS,1,0.30000000000000004,2,1;3\n"),
            "{text}"
        );
        let back = read_records(buf.as_slice()).unwrap();
        assert_eq!(back, results);
        assert_eq!(
            aggregate(&back, &[2]).unwrap(),
            aggregate(&results, &[2]).unwrap()
        );
    }
}
