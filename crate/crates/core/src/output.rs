//! Trajectory serialization.

use std::io::{self, Write};

use serde::Serialize;

use crate::config::RunConfig;
use crate::integrator::{Sample, Summary, Trajectory};

pub const CSV_HEADER: &str = "tau,x0,x1,x2,x3,u0,u1,u2,u3,a0,a1,a2,a3,first_integral,pirani,residual_norm";

/// One output row, in column order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Record {
    pub tau: f64,
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
    pub u0: f64,
    pub u1: f64,
    pub u2: f64,
    pub u3: f64,
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub first_integral: f64,
    pub pirani: f64,
    pub residual_norm: f64,
}

impl From<&Sample> for Record {
    fn from(s: &Sample) -> Self {
        let (x, u, a, d) = (s.state.x, s.state.u, s.state.a, s.diagnostics);
        Record {
            tau: s.tau,
            x0: x[0],
            x1: x[1],
            x2: x[2],
            x3: x[3],
            u0: u[0],
            u1: u[1],
            u2: u[2],
            u3: u[3],
            a0: a[0],
            a1: a[1],
            a2: a[2],
            a3: a[3],
            first_integral: d.first_integral,
            pirani: d.pirani,
            residual_norm: d.residual_norm,
        }
    }
}

impl Record {
    pub fn values(&self) -> [f64; 16] {
        [
            self.tau,
            self.x0,
            self.x1,
            self.x2,
            self.x3,
            self.u0,
            self.u1,
            self.u2,
            self.u3,
            self.a0,
            self.a1,
            self.a2,
            self.a3,
            self.first_integral,
            self.pirani,
            self.residual_norm,
        ]
    }
}

/// Header row followed by one row per sample; floats in shortest round-trip form.
pub fn write_csv<W: Write + ?Sized>(w: &mut W, tr: &Trajectory) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for s in &tr.samples {
        let row: Vec<String> = Record::from(s).values().iter().map(|v| format!("{v}")).collect();
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct Metadata<'a> {
    version: &'static str,
    signature: [i8; 4],
    orientation: i8,
    config: &'a RunConfig,
    summary: &'a Summary,
}

#[derive(Serialize)]
struct Document<'a> {
    metadata: Metadata<'a>,
    samples: Vec<Record>,
}

/// Metadata header and the sample records as one JSON document.
pub fn write_json<W: Write + ?Sized>(w: &mut W, tr: &Trajectory, cfg: &RunConfig, summary: &Summary) -> io::Result<()> {
    let doc = Document {
        metadata: Metadata {
            version: env!("CARGO_PKG_VERSION"),
            signature: cfg.signature,
            orientation: cfg.orientation,
            config: cfg,
            summary,
        },
        samples: tr.samples.iter().map(Record::from).collect(),
    };
    serde_json::to_writer_pretty(&mut *w, &doc)?;
    writeln!(w)
}
