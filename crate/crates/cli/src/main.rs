//! `cliffqp`: runs the verification checks and reports the outcome of each
//! (check, rank, ring) configuration.

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use cliffqp_core::checks::{self, Budget, CheckId, RingTag};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug)]
enum Selection {
    All,
    One(CheckId),
}

fn parse_selection(s: &str) -> Result<Selection, String> {
    if s == "all" {
        return Ok(Selection::All);
    }
    s.parse().map(Selection::One).map_err(|_| {
        let names: Vec<&str> = CheckId::ALL.iter().map(|c| c.name()).collect();
        format!("unknown check {s:?}; expected one of: {}, all", names.join(", "))
    })
}

fn parse_ring(s: &str) -> Result<RingTag, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = RingTag::ALL.iter().map(|r| r.name()).collect();
        format!("unknown ring {s:?}; expected one of: {}", names.join(", "))
    })
}

#[derive(Parser, Debug)]
#[command(name = "cliffqp", version, about = "Verify constructions on split Clifford algebras of hyperbolic forms")]
struct Args {
    /// Check to run, or `all`.
    #[arg(value_parser = parse_selection)]
    check: Selection,
    /// Rank n of the hyperbolic space (default: a per-check list).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=12))]
    n: Option<u32>,
    /// Coefficient ring (default: gf2, gf3, gf4, q).
    #[arg(long, value_parser = parse_ring)]
    ring: Option<RingTag>,
    /// Random samples per sampled identity.
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Emit one JSON document instead of text.
    #[arg(long)]
    json: bool,
    /// Report elapsed times as 0, making output byte-identical across runs.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Serialize)]
struct Report {
    check: &'static str,
    n: usize,
    ring: &'static str,
    status: &'static str,
    details: Vec<String>,
    elapsed_ms: u64,
    seed: u64,
}

#[derive(Serialize, Default)]
struct Summary {
    passed: usize,
    failed: usize,
    skipped: usize,
}

#[derive(Serialize)]
struct Document<'a> {
    reports: &'a [Report],
    summary: &'a Summary,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let selected: Vec<CheckId> = match args.check {
        Selection::All => CheckId::ALL.to_vec(),
        Selection::One(c) => vec![c],
    };
    let rings: Vec<RingTag> = match args.ring {
        Some(r) => vec![r],
        None => RingTag::DEFAULT.to_vec(),
    };
    let mut configs = Vec::new();
    for &check in &selected {
        let ranks = match args.n {
            Some(n) => vec![n as usize],
            None => check.default_ranks(),
        };
        for &n in &ranks {
            for &ring in &rings {
                configs.push((check, n, ring));
            }
        }
    }
    configs.sort();
    let budget = Budget::new(args.trials);
    let reports: Vec<Report> = configs
        .par_iter()
        .map(|&(check, n, ring)| {
            let start = Instant::now();
            let verdict = checks::run(check, n, ring, budget, args.seed);
            let elapsed_ms = if args.no_timing { 0 } else { start.elapsed().as_millis() as u64 };
            Report {
                check: check.name(),
                n,
                ring: ring.name(),
                status: verdict.status().label(),
                details: verdict.details(),
                elapsed_ms,
                seed: args.seed,
            }
        })
        .collect();

    let mut summary = Summary::default();
    let mut broken = false;
    for r in &reports {
        match r.status {
            "pass" => summary.passed += 1,
            "skipped" => summary.skipped += 1,
            _ => {
                summary.failed += 1;
                broken = true;
            }
        }
    }

    if args.json {
        let doc = Document { reports: &reports, summary: &summary };
        println!("{}", serde_json::to_string_pretty(&doc).expect("reports serialize"));
    } else {
        for r in &reports {
            let timing = if args.no_timing { String::new() } else { format!(" ({} ms)", r.elapsed_ms) };
            println!("{:<7} {} n={} ring={}{timing}", r.status.to_uppercase(), r.check, r.n, r.ring);
            for line in &r.details {
                println!("        {line}");
            }
        }
        println!(
            "{} passed, {} failed, {} skipped (seed {})",
            summary.passed, summary.failed, summary.skipped, args.seed
        );
    }
    if broken {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

