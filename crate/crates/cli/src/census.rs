//! `census`: classify every graph of a graph6 file into a table.
//!
//! Rows keep input order whatever `--jobs` is. A summary follows the rows:
//! a last JSON object, or `#`-prefixed lines after the CSV table. Empty
//! input produces no output at all.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use serde::Serialize;

use omnitonal::amoeba::{amoeba_verdict, AmoebaOptions};
use omnitonal::graph6::parse_graph6_lines;
use omnitonal::spectra::tonal_report;
use omnitonal::{Graph, Jobs};

use crate::{emit, read_input, Failure};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args)]
pub struct CensusArgs {
    /// graph6 file, one graph per line (stdin when omitted).
    input: Option<PathBuf>,
    /// Output file (stdout when omitted).
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Skip malformed lines with a warning instead of aborting.
    #[arg(long)]
    lenient: bool,
    /// Also test copy connectivity for n = v+1 ..= v+K, v the number of
    /// non-isolated vertices.
    #[arg(long, value_name = "K")]
    amoeba_window: Option<usize>,
    /// Add per-row and total timings (makes output run-dependent).
    #[arg(long)]
    timing: bool,
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Serialize)]
struct CensusRow {
    graph6: String,
    n: usize,
    e: usize,
    balanceable: bool,
    omnitonal: bool,
    bipartite: bool,
    /// Bit r-1 set iff the graph is r-tonal.
    r_tonal: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    amoeba: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<f64>,
}

#[derive(Serialize)]
struct Summary {
    rows: usize,
    skipped: usize,
    balanceable: usize,
    omnitonal: usize,
    bipartite: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    amoeba_connected: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<f64>,
}

fn amoeba_cell(g: &Graph, window: usize) -> String {
    if g.e() == 0 {
        return "n/a".into();
    }
    let core = g.strip_isolated();
    let m = core.n();
    match amoeba_verdict(&core, m + 1, m + window, &AmoebaOptions { jobs: Jobs::SEQUENTIAL, ..Default::default() }) {
        Ok(v) => v.verdict,
        Err(e) if e.is_budget() => "skipped: node budget".into(),
        Err(e) => format!("error: {e}"),
    }
}

fn classify(g: &Graph, args: &CensusArgs) -> CensusRow {
    let start = Instant::now();
    let report = tonal_report(g);
    let amoeba = args.amoeba_window.filter(|&k| k > 0).map(|k| amoeba_cell(g, k));
    CensusRow {
        r_tonal: report.r_tonal_mask(),
        graph6: report.graph6,
        n: report.n,
        e: report.e,
        balanceable: report.balanceable,
        omnitonal: report.omnitonal,
        bipartite: report.bipartite,
        amoeba,
        timing_ms: args.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
    }
}

fn write_csv(rows: &[CensusRow], summary: &Summary, out: &mut dyn Write) -> Result<(), Failure> {
    let csv_err = |e: csv::Error| Failure::Input(e.to_string());
    {
        let mut w = csv::Writer::from_writer(&mut *out);
        let mut header = vec!["graph6", "n", "e", "balanceable", "omnitonal", "bipartite", "r_tonal"];
        let amoeba = rows.first().is_some_and(|r| r.amoeba.is_some());
        let timing = rows.first().is_some_and(|r| r.timing_ms.is_some());
        if amoeba {
            header.push("amoeba");
        }
        if timing {
            header.push("timing_ms");
        }
        w.write_record(&header).map_err(csv_err)?;
        for r in rows {
            let mut rec = vec![
                r.graph6.clone(),
                r.n.to_string(),
                r.e.to_string(),
                r.balanceable.to_string(),
                r.omnitonal.to_string(),
                r.bipartite.to_string(),
                r.r_tonal.to_string(),
            ];
            rec.extend(r.amoeba.clone());
            rec.extend(r.timing_ms.map(|t| format!("{t:.3}")));
            w.write_record(&rec).map_err(csv_err)?;
        }
        w.flush()?;
    }
    writeln!(out, "# rows={} skipped={}", summary.rows, summary.skipped)?;
    writeln!(
        out,
        "# balanceable={} omnitonal={} bipartite={}",
        summary.balanceable, summary.omnitonal, summary.bipartite
    )?;
    if let Some(a) = summary.amoeba_connected {
        writeln!(out, "# amoeba_connected={a}")?;
    }
    if let Some(t) = summary.elapsed_ms {
        writeln!(out, "# elapsed_ms={t:.3}")?;
    }
    Ok(())
}

pub fn run(args: CensusArgs, stdout: &mut dyn Write, started: Instant) -> Result<(), Failure> {
    let text = read_input(args.input.as_ref())?;
    let mut graphs = Vec::new();
    let mut skipped = 0;
    for (line, parsed) in parse_graph6_lines(&text) {
        match parsed {
            Ok(g) => graphs.push(g),
            Err(e) if args.lenient => {
                eprintln!("warning: line {line}: {e}; skipped");
                skipped += 1;
            }
            Err(e) => return Err(Failure::Input(format!("line {line}: {e}"))),
        }
    }
    let rows = omnitonal::par::map(&graphs, Jobs(args.jobs), |g| classify(g, &args));

    let mut file;
    let out: &mut dyn Write = match &args.output {
        Some(p) => {
            file = io::BufWriter::new(File::create(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?);
            &mut file
        }
        None => stdout,
    };
    if rows.is_empty() && skipped == 0 {
        return Ok(());
    }
    let summary = Summary {
        rows: rows.len(),
        skipped,
        balanceable: rows.iter().filter(|r| r.balanceable).count(),
        omnitonal: rows.iter().filter(|r| r.omnitonal).count(),
        bipartite: rows.iter().filter(|r| r.bipartite).count(),
        amoeba_connected: args
            .amoeba_window
            .filter(|&k| k > 0)
            .map(|_| rows.iter().filter(|r| r.amoeba.as_deref().is_some_and(|v| v.starts_with("amoeba on"))).count()),
        elapsed_ms: args.timing.then(|| started.elapsed().as_secs_f64() * 1e3),
    };
    match args.format {
        Format::Json => {
            for r in &rows {
                emit(out, "omnitonal.census/1", r)?;
            }
            emit(out, "omnitonal.census-summary/1", &summary)?;
        }
        Format::Csv => write_csv(&rows, &summary, out)?,
    }
    out.flush()?;
    Ok(())
}
