//! Rendering of reports as text, CSV or JSON.
//!
//! JSON goes through `serde_json::Value`, whose maps are sorted, so key order
//! is stable. Enumeration emits one JSON object per line.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::Context;
use clap::ValueEnum;
use george_core::conjectures::ConjectureReport;
use george_core::factorization::Factorization;
use george_core::oracle::{SearchResult, SweepReport};
use george_core::statistics::StatisticsReport;
use george_core::{Cost, Element};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub struct Sink {
    format: Format,
    out: Box<dyn Write>,
    header_written: bool,
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl Sink {
    pub fn open(format: Format, path: Option<&Path>) -> anyhow::Result<Self> {
        let out: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(
                File::create(p).with_context(|| format!("creating {}", p.display()))?,
            )),
            None => Box::new(BufWriter::new(io::stdout())),
        };
        Ok(Sink {
            format,
            out,
            header_written: false,
        })
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.out.flush()
    }

    fn json(&mut self, value: impl Serialize) -> anyhow::Result<()> {
        let value = serde_json::to_value(value)?;
        writeln!(self.out, "{}", serde_json::to_string_pretty(&value)?)?;
        Ok(())
    }

    fn csv<R: IntoIterator<Item = Vec<String>>>(
        &mut self,
        header: &[&str],
        rows: R,
    ) -> anyhow::Result<()> {
        let mut w = csv::Writer::from_writer(&mut self.out);
        w.write_record(header)?;
        for row in rows {
            w.write_record(row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn stats(&mut self, w: &Element, s: &StatisticsReport) -> anyhow::Result<()> {
        match self.format {
            Format::Json => self.json(json!({ "element": w, "statistics": s })),
            Format::Csv => self.csv(
                &[
                    "window",
                    "tvd",
                    "length",
                    "neg",
                    "bl_A",
                    "bl_B",
                    "bl_D",
                    "bl_C_aff",
                    "bl_B_aff",
                    "cost_formula",
                    "conjectured",
                ],
                [vec![
                    w.to_string(),
                    s.tvd.to_string(),
                    s.length.to_string(),
                    opt(s.neg),
                    opt(s.bl_a),
                    opt(s.bl_b),
                    opt(s.bl_d),
                    opt(s.bl_c_aff),
                    opt(s.bl_b_aff),
                    opt(s.cost_formula),
                    s.conjectured.to_string(),
                ]],
            ),
            Format::Text => {
                let o = &mut self.out;
                writeln!(o, "element       {w} in {}", w.descriptor())?;
                writeln!(o, "tvd           {}", s.tvd)?;
                writeln!(o, "length        {}", s.length)?;
                let optional = [
                    ("neg", s.neg),
                    ("bl_A", s.bl_a),
                    ("bl_B", s.bl_b),
                    ("bl_D", s.bl_d),
                    ("bl_C_aff", s.bl_c_aff),
                    ("bl_B_aff", s.bl_b_aff),
                ];
                for (name, value) in optional {
                    if let Some(v) = value {
                        writeln!(o, "{name:<14}{v}")?;
                    }
                }
                if let Some(c) = s.cost_formula {
                    let tag = if s.conjectured { " (conjectured)" } else { "" };
                    writeln!(o, "cost_formula  {c}{tag}")?;
                }
                Ok(())
            }
        }
    }

    pub fn factorization(
        &mut self,
        w: &Element,
        f: &Factorization,
        method: &str,
        formula: Option<Cost>,
    ) -> anyhow::Result<()> {
        match self.format {
            Format::Json => self.json(json!({
                "element": w,
                "method": method,
                "factorization": f.record(true),
                "formula": formula,
            })),
            Format::Csv => self.csv(
                &["index", "i", "j", "cost"],
                f.factors.iter().enumerate().map(|(k, t)| {
                    vec![
                        (k + 1).to_string(),
                        t.i().to_string(),
                        t.j().to_string(),
                        t.cost().to_string(),
                    ]
                }),
            ),
            Format::Text => {
                let factors: Vec<String> = f.factors.iter().map(ToString::to_string).collect();
                let o = &mut self.out;
                writeln!(
                    o,
                    "{w} = {}",
                    if factors.is_empty() {
                        "id".into()
                    } else {
                        factors.join(" ")
                    }
                )?;
                writeln!(o, "factors       {}", f.len())?;
                writeln!(o, "total_cost    {}", f.total_cost)?;
                writeln!(o, "method        {method}")?;
                Ok(())
            }
        }
    }

    pub fn search(&mut self, r: &SearchResult) -> anyhow::Result<()> {
        let weights: Vec<Cost> = r.witness.factors.iter().map(|t| r.weight.of(t)).collect();
        match self.format {
            Format::Json => {
                let factors: Vec<Value> = r
                    .witness
                    .factors
                    .iter()
                    .zip(&weights)
                    .map(|(t, wt)| json!({ "i": t.i(), "j": t.j(), "weight": wt }))
                    .collect();
                self.json(json!({
                    "element": r.target,
                    "weight": r.weight,
                    "optimum": r.optimum,
                    "witness": factors,
                    "expanded_nodes": r.expanded_nodes,
                    "budget_used": r.budget_used,
                }))
            }
            Format::Csv => self.csv(
                &["index", "i", "j", "weight"],
                r.witness
                    .factors
                    .iter()
                    .zip(&weights)
                    .enumerate()
                    .map(|(k, (t, wt))| {
                        vec![
                            (k + 1).to_string(),
                            t.i().to_string(),
                            t.j().to_string(),
                            wt.to_string(),
                        ]
                    }),
            ),
            Format::Text => {
                let factors: Vec<String> =
                    r.witness.factors.iter().map(ToString::to_string).collect();
                let o = &mut self.out;
                writeln!(
                    o,
                    "{} = {}",
                    r.target,
                    if factors.is_empty() {
                        "id".into()
                    } else {
                        factors.join(" ")
                    }
                )?;
                writeln!(o, "optimum       {}", r.optimum)?;
                writeln!(o, "expanded      {}", r.expanded_nodes)?;
                writeln!(o, "budget        {}", r.budget_used)?;
                Ok(())
            }
        }
    }

    pub fn sweep(&mut self, r: &SweepReport) -> anyhow::Result<()> {
        match self.format {
            Format::Json => self.json(r),
            Format::Csv => self.csv(
                &["window", "tvd", "formula", "oracle", "agree", "expanded"],
                r.rows.iter().map(|row| {
                    vec![
                        row.window.clone(),
                        row.tvd.to_string(),
                        row.formula.to_string(),
                        row.oracle.to_string(),
                        row.agree.to_string(),
                        row.expanded.to_string(),
                    ]
                }),
            ),
            Format::Text => {
                let o = &mut self.out;
                for row in r.rows.iter().filter(|row| !row.agree) {
                    writeln!(
                        o,
                        "MISMATCH {} formula {} oracle {}",
                        row.window, row.formula, row.oracle
                    )?;
                }
                writeln!(
                    o,
                    "{}_{}: {}/{} agree, max deviation {}, {} nodes expanded",
                    r.family, r.n, r.agreed, r.tested, r.max_deviation, r.expanded_nodes
                )?;
                Ok(())
            }
        }
    }

    pub fn conjecture(&mut self, r: &ConjectureReport) -> anyhow::Result<()> {
        match self.format {
            Format::Json => self.json(r),
            Format::Csv => self.csv(
                &["window", "expected", "observed", "note"],
                r.counterexamples
                    .iter()
                    .map(|c| {
                        vec![
                            c.element.to_string(),
                            c.expected.clone(),
                            c.observed.to_string(),
                            c.note.clone(),
                        ]
                    })
                    .chain(r.inconclusive.iter().map(|i| {
                        vec![
                            i.element.to_string(),
                            String::new(),
                            String::new(),
                            i.reason.clone(),
                        ]
                    })),
            ),
            Format::Text => {
                let o = &mut self.out;
                writeln!(
                    o,
                    "{} on {}_{} up to length {}",
                    r.conjecture_id, r.family, r.n, r.length_bound
                )?;
                writeln!(o, "tested        {}", r.tested)?;
                writeln!(o, "agree         {}", r.agree)?;
                writeln!(o, "counterexamples {}", r.counterexamples.len())?;
                writeln!(o, "inconclusive  {}", r.inconclusive.len())?;
                writeln!(o, "max_gap       {}", r.max_gap)?;
                for c in &r.counterexamples {
                    writeln!(
                        o,
                        "  {}: expected {}, observed {} ({})",
                        c.element, c.expected, c.observed, c.note
                    )?;
                }
                for i in &r.inconclusive {
                    writeln!(o, "  {}: open ({})", i.element, i.reason)?;
                }
                for f in &r.form_cases {
                    let cost = opt(f.cost);
                    writeln!(
                        o,
                        "  form i={} k={} {}: tvd {} cost {}",
                        f.i, f.k, f.element, f.tvd, cost
                    )?;
                }
                Ok(())
            }
        }
    }

    pub fn enumerated(&mut self, w: &Element, length: usize) -> anyhow::Result<()> {
        match self.format {
            Format::Json => {
                let line = json!({ "element": w, "length": length });
                writeln!(self.out, "{line}")?;
            }
            Format::Csv => {
                let mut csv = csv::WriterBuilder::new().from_writer(&mut self.out);
                if !self.header_written {
                    csv.write_record(["window", "length"])?;
                    self.header_written = true;
                }
                csv.write_record([w.to_string(), length.to_string()])?;
                csv.flush()?;
            }
            Format::Text => writeln!(self.out, "{w}\t{length}")?,
        }
        Ok(())
    }
}
