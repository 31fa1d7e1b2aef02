//! CSV encodings for sweeps, MAC summaries and timelines.
//!
//! Reals are written in scientific notation with 10 significant digits so
//! output is byte-identical across runs and machines.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::mac::{EventTimeline, MacConfig, MacSummary};
use crate::montecarlo::{BerPoint, SweepResult};
use crate::phy::Scheme;

pub const SWEEP_HEADER: [&str; 8] = [
    "snr_db",
    "scheme",
    "trials",
    "bits_sent",
    "bit_errors",
    "ber",
    "ci_low",
    "ci_high",
];

pub const MAC_SUMMARY_HEADER: [&str; 7] = [
    "group_size",
    "sounding_ms",
    "txop_ms",
    "coordinated_ms",
    "sequential_ms",
    "gain",
    "mean_link_ber",
];

pub const TIMELINE_HEADER: [&str; 4] = ["start_ms", "duration_ms", "kind", "ap_ids"];

/// Scientific notation with 10 significant digits.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.9e}")
}

fn writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io {
            path: "<csv>".into(),
            source: io,
        },
        other => Error::Csv {
            row: 0,
            message: format!("{other:?}"),
        },
    }
}

pub fn write_sweep_csv<W: Write>(result: &SweepResult, w: W) -> Result<()> {
    let mut out = writer(w);
    out.write_record(SWEEP_HEADER).map_err(csv_err)?;
    for p in &result.points {
        out.write_record([
            fmt_real(p.snr_db),
            p.scheme.to_string(),
            p.trials.to_string(),
            p.bits_sent.to_string(),
            p.bit_errors.to_string(),
            fmt_real(p.ber),
            fmt_real(p.ci_low),
            fmt_real(p.ci_high),
        ])
        .map_err(csv_err)?;
    }
    out.flush().map_err(|e| Error::io("<csv>", e))
}

/// Reads a sweep CSV. Row numbers in errors count the header as row 1.
pub fn read_sweep_csv<R: Read>(r: R) -> Result<Vec<BerPoint>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(r);
    let header = rdr.headers().map_err(|e| Error::Csv {
        row: 1,
        message: e.to_string(),
    })?;
    if header.iter().ne(SWEEP_HEADER.iter().copied()) {
        return Err(Error::Csv {
            row: 1,
            message: format!("header must be `{}`", SWEEP_HEADER.join(",")),
        });
    }
    let mut points = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let row = i + 2;
        let rec = rec.map_err(|e| Error::Csv {
            row,
            message: e.to_string(),
        })?;
        let field = |j: usize| rec.get(j).unwrap_or("");
        let bad = |j: usize, e: &dyn std::fmt::Display| Error::Csv {
            row,
            message: format!("column `{}`: {e}", SWEEP_HEADER[j]),
        };
        let real = |j: usize| field(j).parse::<f64>().map_err(|e| bad(j, &e));
        let int = |j: usize| field(j).parse::<u64>().map_err(|e| bad(j, &e));
        let p = BerPoint {
            snr_db: real(0)?,
            scheme: field(1).parse::<Scheme>().map_err(|e| bad(1, &e))?,
            trials: int(2)?,
            bits_sent: int(3)?,
            bit_errors: int(4)?,
            ber: real(5)?,
            ci_low: real(6)?,
            ci_high: real(7)?,
        };
        if p.bit_errors > p.bits_sent || !(0.0..=1.0).contains(&p.ber) {
            return Err(Error::Csv {
                row,
                message: "bit counts or ber out of range".into(),
            });
        }
        points.push(p);
    }
    Ok(points)
}

pub fn write_mac_summary_csv<W: Write>(
    config: &MacConfig,
    summary: &MacSummary,
    w: W,
) -> Result<()> {
    let mut out = writer(w);
    out.write_record(MAC_SUMMARY_HEADER).map_err(csv_err)?;
    let a = &summary.airtime;
    out.write_record([
        summary.group.len().to_string(),
        fmt_real(config.sounding_ms),
        fmt_real(config.txop_ms),
        fmt_real(a.coordinated_ms),
        fmt_real(a.sequential_ms),
        fmt_real(a.gain),
        fmt_real(summary.mean_link_ber),
    ])
    .map_err(csv_err)?;
    out.flush().map_err(|e| Error::io("<csv>", e))
}

pub fn write_timeline_csv<W: Write>(timeline: &EventTimeline, w: W) -> Result<()> {
    let mut out = writer(w);
    out.write_record(TIMELINE_HEADER).map_err(csv_err)?;
    for e in &timeline.events {
        let ids = e
            .ap_ids
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(";");
        out.write_record([
            fmt_real(e.start_ms),
            fmt_real(e.duration_ms),
            e.kind.to_string(),
            ids,
        ])
        .map_err(csv_err)?;
    }
    out.flush().map_err(|e| Error::io("<csv>", e))
}
