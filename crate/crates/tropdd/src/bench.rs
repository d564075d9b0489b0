//! Benchmark harness: run the pipeline with both extremality filters on
//! seeded random instances and record counts and wall times as CSV.
//!
//! Instances run sequentially and each timed run is single-threaded, so the
//! two times of a record are comparable. Records keep the specification
//! order. A record whose two filter paths disagree on the canonical result
//! set is flagged `FAILED` instead of aborting the batch.

use std::time::Instant;

use crate::dd::{compute_extreme_with, ComputeOptions, ExtremalityFilter};
use crate::error::{Error, Result};
use crate::gen::{random_system, RandParams};
use crate::system::IneqSystem;

/// One labelled instance of a benchmark batch.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchSpec {
    pub label: String,
    pub params: RandParams,
}

/// Measurements for one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub label: String,
    pub d: usize,
    pub n: usize,
    /// Number of extreme rays of the final result.
    pub final_count: usize,
    /// Mean generator-set size over the intermediate steps (base case and
    /// every step but the last); equals `final_count` when n = 0.
    pub inter_mean: f64,
    /// Wall time of the hypergraph-filter run, seconds.
    pub t_hypergraph_s: f64,
    /// Wall time of the residuation-filter run, seconds.
    pub t_residuation_s: f64,
    /// False when the two runs disagreed on the canonical set.
    pub ok: bool,
}

/// Parse a benchmark specification: one instance per line,
/// `label d n seed [density]`, with `#` comments and blank lines ignored.
pub fn parse_bench_spec(text: &str) -> Result<Vec<BenchSpec>> {
    let mut specs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        if !(4..=5).contains(&toks.len()) {
            return Err(Error::parse(
                line,
                format!("expected `label d n seed [density]`, found {} token(s)", toks.len()),
            ));
        }
        let num = |tok: &str, what: &str| -> Result<usize> {
            tok.parse()
                .map_err(|_| Error::parse(line, format!("bad {what} `{tok}`")))
        };
        let mut params = RandParams::new(
            num(toks[1], "dimension")?,
            num(toks[2], "row count")?,
            toks[3]
                .parse()
                .map_err(|_| Error::parse(line, format!("bad seed `{}`", toks[3])))?,
        );
        if let Some(tok) = toks.get(4) {
            params.density = tok
                .parse()
                .map_err(|_| Error::parse(line, format!("bad density `{tok}`")))?;
        }
        specs.push(BenchSpec {
            label: toks[0].to_string(),
            params,
        });
    }
    Ok(specs)
}

/// Time both filter paths on one system and compare their results.
pub fn bench_system(label: &str, sys: &IneqSystem) -> Result<BenchRecord> {
    let timed = |filter: ExtremalityFilter| {
        let opts = ComputeOptions {
            filter,
            ..ComputeOptions::default()
        };
        let start = Instant::now();
        let out = compute_extreme_with(sys, opts);
        (start.elapsed().as_secs_f64(), out)
    };
    let (t_hyp, hyp) = timed(ExtremalityFilter::Hypergraph);
    let (t_res, res) = timed(ExtremalityFilter::Residuation);
    let (g_hyp, stats) = hyp?;
    let (g_res, _) = res?;

    let counts = &stats.step_generator_counts;
    let inter = &counts[..counts.len().max(2) - 1];
    let inter_mean = inter.iter().sum::<usize>() as f64 / inter.len() as f64;

    Ok(BenchRecord {
        label: label.to_string(),
        d: sys.dim(),
        n: sys.row_count(),
        final_count: g_hyp.len(),
        inter_mean,
        t_hypergraph_s: t_hyp,
        t_residuation_s: t_res,
        ok: g_hyp == g_res,
    })
}

/// Run a batch sequentially; records keep the specification order.
pub fn run_bench(specs: &[BenchSpec]) -> Result<Vec<BenchRecord>> {
    specs
        .iter()
        .map(|s| bench_system(&s.label, &random_system(&s.params)?))
        .collect()
}

/// Render records as CSV (header row; RFC-4180 quoting via the csv crate).
pub fn to_csv(records: &[BenchRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io_err = |e: csv::Error| Error::Internal(format!("csv: {e}"));
    w.write_record([
        "label",
        "d",
        "n",
        "final",
        "inter_mean",
        "t_hypergraph_s",
        "t_residuation_s",
        "status",
    ])
    .map_err(io_err)?;
    for r in records {
        w.write_record([
            r.label.as_str(),
            &r.d.to_string(),
            &r.n.to_string(),
            &r.final_count.to_string(),
            &format!("{:.3}", r.inter_mean),
            &format!("{:.6}", r.t_hypergraph_s),
            &format!("{:.6}", r.t_residuation_s),
            if r.ok { "ok" } else { "FAILED" },
        ])
        .map_err(io_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Internal(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(format!("csv: {e}")))
}
