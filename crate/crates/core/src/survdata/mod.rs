//! Right-censored survival data: records, CSV I/O, Kaplan–Meier, simulation.

mod km;
mod simulate;

pub use km::{kaplan_meier, write_km_csv, KmCurve};
pub use simulate::{inverse_cumulative_hazard, simulate, simulate_from};

use std::io::{Read, Write};

use serde::Serialize;

use crate::error::{Error, Result};

/// One observed time `min(event, censoring)` with its event indicator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurvivalRecord {
    pub time: f64,
    /// `true` when the event was observed, `false` when censored.
    pub event: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SurvivalDataset {
    records: Vec<SurvivalRecord>,
    n_events: usize,
}

impl SurvivalDataset {
    pub fn new(records: Vec<SurvivalRecord>) -> Result<Self> {
        if records.is_empty() {
            return Err(Error::EmptyDataset);
        }
        for (i, r) in records.iter().enumerate() {
            if !r.time.is_finite() {
                return Err(Error::NonNumericTime {
                    row: i + 1,
                    value: r.time.to_string(),
                });
            }
            if r.time <= 0.0 {
                return Err(Error::NonPositiveTimeAtRow { row: i + 1, value: r.time });
            }
        }
        let n_events = records.iter().filter(|r| r.event).count();
        Ok(Self { records, n_events })
    }

    pub fn from_columns(times: &[f64], events: &[bool]) -> Result<Self> {
        assert_eq!(times.len(), events.len(), "column lengths differ");
        Self::new(
            times
                .iter()
                .zip(events)
                .map(|(&time, &event)| SurvivalRecord { time, event })
                .collect(),
        )
    }

    pub fn records(&self) -> &[SurvivalRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn n_events(&self) -> usize {
        self.n_events
    }

    pub fn total_time(&self) -> f64 {
        self.records.iter().map(|r| r.time).sum()
    }

    /// Records sorted by time, events ahead of censorings at ties.
    pub fn sorted(&self) -> Vec<SurvivalRecord> {
        let mut out = self.records.clone();
        out.sort_by(|a, b| a.time.total_cmp(&b.time).then(b.event.cmp(&a.event)));
        out
    }

    pub fn concat(&self, other: &SurvivalDataset) -> SurvivalDataset {
        let mut records = self.records.clone();
        records.extend_from_slice(&other.records);
        SurvivalDataset {
            n_events: self.n_events + other.n_events,
            records,
        }
    }
}

/// Reads a `time,status` CSV (status 1 = event, 0 = censored). Extra columns are ignored.
pub fn load_csv<R: Read>(source: R) -> Result<SurvivalDataset> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(source);
    let headers = reader.headers()?.clone();
    let col = |name: &'static str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or(Error::MissingColumn(name))
    };
    let (time_col, status_col) = (col("time")?, col("status")?);
    let mut records = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let row = row?;
        let line = i + 1;
        let raw_time = row.get(time_col).unwrap_or("");
        let time: f64 = raw_time
            .parse()
            .ok()
            .filter(|t: &f64| t.is_finite())
            .ok_or_else(|| Error::NonNumericTime {
                row: line,
                value: raw_time.to_string(),
            })?;
        if time <= 0.0 {
            return Err(Error::NonPositiveTimeAtRow { row: line, value: time });
        }
        let event = match row.get(status_col).unwrap_or("") {
            "1" => true,
            "0" => false,
            other => {
                return Err(Error::InvalidStatus {
                    row: line,
                    value: other.to_string(),
                })
            }
        };
        records.push(SurvivalRecord { time, event });
    }
    SurvivalDataset::new(records)
}

pub fn write_csv<W: Write>(data: &SurvivalDataset, sink: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["time", "status"])?;
    for r in data.records() {
        w.write_record([r.time.to_string(), u8::from(r.event).to_string()])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn loads_minimal_csv() {
        let d = load_csv("time,status\n1.0,1\n2.0,0\n".as_bytes()).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.n_events(), 1);
        assert_eq!(d.records()[1], SurvivalRecord { time: 2.0, event: false });
    }

    #[test]
    fn extra_columns_and_order() {
        let d = load_csv("id,status,time\na,0,3.5\nb,1,0.5\n".as_bytes()).unwrap();
        assert_eq!(d.records()[0].time, 3.5);
        assert!(d.records()[1].event);
    }

    #[test]
    fn load_errors() {
        assert_eq!(
            load_csv("time,status\n-1,1\n".as_bytes()).unwrap_err(),
            Error::NonPositiveTimeAtRow { row: 1, value: -1.0 }
        );
        assert_eq!(
            load_csv("time,event\n1,1\n".as_bytes()).unwrap_err(),
            Error::MissingColumn("status")
        );
        assert!(matches!(
            load_csv("time,status\n1,1\nabc,0\n".as_bytes()).unwrap_err(),
            Error::NonNumericTime { row: 2, .. }
        ));
        assert!(matches!(
            load_csv("time,status\n1,2\n".as_bytes()).unwrap_err(),
            Error::InvalidStatus { row: 1, .. }
        ));
        assert!(matches!(
            load_csv("time,status\ninf,1\n".as_bytes()).unwrap_err(),
            Error::NonNumericTime { .. }
        ));
        assert_eq!(load_csv("time,status\n".as_bytes()).unwrap_err(), Error::EmptyDataset);
    }

    #[test]
    fn rotterdam_counts() {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/rotterdam.csv");
        let d = load_csv(std::fs::File::open(path).unwrap()).unwrap();
        assert_eq!(d.len(), 2982);
        assert_eq!(d.n_events(), 1272);
        assert_eq!(d.len() - d.n_events(), 1710);
    }

    proptest! {
        #[test]
        fn csv_round_trip(rows in proptest::collection::vec((1e-9f64..1e6, any::<bool>()), 1..50)) {
            let records: Vec<_> = rows.iter().map(|&(time, event)| SurvivalRecord { time, event }).collect();
            let d = SurvivalDataset::new(records).unwrap();
            let mut buf = Vec::new();
            write_csv(&d, &mut buf).unwrap();
            let back = load_csv(buf.as_slice()).unwrap();
            prop_assert_eq!(back, d);
        }
    }
}
