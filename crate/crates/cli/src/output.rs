//! Rendering of command results as JSON or CSV text.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use anyhow::Context;
use netrepo_core::clustering::NodeLabeling;
use netrepo_core::layout::Point;
use netrepo_core::stats::{Distribution, GraphStats, NodeStatsTable};
use netrepo_core::NodeId;
use serde::Serialize;

/// Destination for a command's output: a file or stdout.
pub struct Output(Box<dyn Write>);

impl Output {
    pub fn open(path: Option<&Path>) -> anyhow::Result<Self> {
        Ok(Output(match path {
            Some(p) => Box::new(File::create(p).with_context(|| format!("cannot create {}", p.display()))?),
            None => Box::new(io::stdout().lock()),
        }))
    }

    pub fn write(mut self, text: String) -> anyhow::Result<()> {
        self.0.write_all(text.as_bytes())?;
        self.0.flush()?;
        Ok(())
    }
}

/// Pretty JSON with a trailing newline.
pub fn json<T: Serialize + ?Sized>(value: &T) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn cell(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn stats_csv(s: &GraphStats) -> String {
    let mut header: Vec<&str> = GraphStats::FIELDS.to_vec();
    header.push("max_clique_method");
    let mut row: Vec<String> = GraphStats::FIELDS
        .iter()
        .map(|f| cell(s.get(f).flatten()))
        .collect();
    row.push(s.max_clique_method.clone());
    format!("{}\n{}\n", header.join(","), row.join(","))
}

pub fn node_table_csv(t: &NodeStatsTable) -> String {
    let mut out = format!("node,{}\n", NodeStatsTable::COLUMNS.join(","));
    for v in 0..t.len() {
        let row: Vec<String> = NodeStatsTable::COLUMNS
            .iter()
            .map(|c| cell(t.value(c, v)))
            .collect();
        let _ = writeln!(out, "{v},{}", row.join(","));
    }
    out
}

pub fn distribution_csv(d: &Distribution) -> String {
    let mut out = String::from("value,count,pdf,cdf,ccdf\n");
    for i in 0..d.values.len() {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            d.values[i], d.counts[i], d.pdf[i], d.cdf[i], d.ccdf[i]
        );
    }
    out
}

pub fn node_map_csv(map: &[NodeId]) -> String {
    let mut out = String::from("node,original\n");
    for (local, original) in map.iter().enumerate() {
        let _ = writeln!(out, "{local},{original}");
    }
    out
}

pub fn labeling(l: &NodeLabeling, csv: bool) -> anyhow::Result<String> {
    if !csv {
        return json(l);
    }
    let mut out = String::from("node,label\n");
    for (v, label) in l.labels.iter().enumerate() {
        let _ = writeln!(out, "{v},{label}");
    }
    Ok(out)
}

pub fn positions_csv(pos: &[Point]) -> String {
    let mut out = String::from("node,x,y\n");
    for (v, p) in pos.iter().enumerate() {
        let _ = writeln!(out, "{v},{},{}", p.x, p.y);
    }
    out
}
