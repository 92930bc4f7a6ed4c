//! `verkit`: compute, cache and export data about `Ver_{p^n}`.

mod cache;
mod doc;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use verkit_core::catalog::{build_with, BuildOptions};
use verkit_core::charring::SymChar;
use verkit_core::grring::{fold_projectives, FusionRing};
use verkit_core::tilting::{invariant_dims, series_fn, tilting_char};
use verkit_core::{Prime, SimpleLabel, Ver};

use crate::cache::Cache;
use crate::doc::{
    simple_labels, BlocksDoc, Ext1Doc, FusionDoc, FusionTableDoc, MatrixDoc, Num, OutputDocument, Payload, ReportDoc,
    SeriesDoc, TiltingDoc,
};

#[derive(Parser, Debug)]
#[command(name = "verkit", version, about = "Cartan matrices, fusion rules and invariants of Ver_{p^n}")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// The prime p.
    #[arg(short = 'p', global = true)]
    p: Option<u64>,

    /// The level n.
    #[arg(short = 'n', global = true)]
    n: Option<u32>,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[arg(long, env = "VERKIT_CACHE_DIR", global = true)]
    cache_dir: Option<PathBuf>,

    /// Neither read nor write the cache.
    #[arg(long, global = true)]
    no_cache: bool,

    /// Sample count for the fusion cross-check.
    #[arg(long, default_value_t = 40, global = true)]
    samples: usize,

    #[arg(long, default_value_t = 0, global = true)]
    rng_seed: u64,

    /// Re-read the JSON form of the output and require exact equality.
    #[arg(long, global = true)]
    check_roundtrip: bool,

    /// Allow fusion commands for p = 2.
    #[arg(long, global = true)]
    experimental_p2: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Everything: correspondence, Cartan matrix, blocks, dimensions, checks.
    Report,
    /// Product of two simples.
    Fuse {
        #[arg(short = 'a')]
        a: u64,
        #[arg(short = 'b')]
        b: u64,
    },
    /// Full fusion table, folded.
    Table {
        #[arg(long)]
        even_only: bool,
    },
    /// Cartan matrix indexed by simple labels.
    Cartan {
        #[arg(long)]
        even_only: bool,
        #[arg(long, value_enum, default_value_t = Order::Label)]
        order: Order,
    },
    /// Decomposition matrix (tilting rows, Weyl columns).
    Decomp,
    /// Blocks with levels, members and Cartan determinants.
    Blocks,
    /// Pairs of simples with nonzero Ext^1.
    Ext1,
    /// Invariant dimensions of V^{2m} next to the generating-function series.
    Invariants {
        #[arg(short = 'M', default_value_t = 12)]
        max: usize,
    },
    /// Character of the tilting module T_m.
    Tilting {
        #[arg(short = 'm')]
        m: u64,
    },
    /// Run every consistency check; exit 1 on any failure.
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Order {
    /// Ascending simple label.
    Label,
    /// Largest blocks first, ascending labels within a block.
    Block,
}

enum Failure {
    Usage(String),
    Io(String),
}

impl From<verkit_core::Error> for Failure {
    fn from(e: verkit_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Outcome {
    payload: Payload,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) | Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Failure> {
    let outcome = dispatch(cli)?;
    let doc = OutputDocument::new(outcome.payload);
    let rendered = match cli.format {
        Format::Json => json(&doc)?,
        Format::Text => render::text(&doc.payload),
        Format::Csv => render::csv(&doc.payload)
            .ok_or_else(|| Failure::Usage("csv output is only available for matrix commands".into()))?,
    };
    match &cli.output {
        Some(path) => std::fs::write(path, rendered.as_bytes()).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(rendered.as_bytes()).and_then(|_| out.flush()).map_err(|e| Failure::Io(e.to_string()))?;
        }
    }
    if cli.check_roundtrip && !roundtrip_holds(&doc)? {
        eprintln!("error: JSON round trip changed the document");
        return Ok(ExitCode::from(1));
    }
    Ok(if outcome.ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn json(doc: &OutputDocument) -> Result<String, Failure> {
    serde_json::to_string_pretty(doc).map(|s| s + "\n").map_err(|e| Failure::Io(e.to_string()))
}

fn roundtrip_holds(doc: &OutputDocument) -> Result<bool, Failure> {
    let first = json(doc)?;
    let back: OutputDocument = serde_json::from_str(&first).map_err(|e| Failure::Io(e.to_string()))?;
    Ok(back == *doc && json(&back)? == first)
}

fn prime(cli: &Cli) -> Result<Prime, Failure> {
    let p = cli.p.ok_or_else(|| Failure::Usage("missing -p <prime>".into()))?;
    Ok(Prime::new(p)?)
}

fn ver(cli: &Cli) -> Result<Ver, Failure> {
    let p = prime(cli)?;
    let n = cli.n.ok_or_else(|| Failure::Usage("missing -n <level>".into()))?;
    Ok(Ver::from_prime(p, n)?)
}

/// The report for `(p, n)`, from the cache when possible.
fn report(cli: &Cli) -> Result<ReportDoc, Failure> {
    let v = ver(cli)?;
    let (p, n) = (v.p.get(), v.n);
    let cache = if cli.no_cache { None } else { Cache::locate(cli.cache_dir.as_deref()) };
    if let Some(doc) = cache.as_ref().and_then(|c| c.load(p, n, cli.samples, cli.rng_seed)) {
        return Ok(doc);
    }
    let opts = BuildOptions { samples: cli.samples, seed: cli.rng_seed, ..BuildOptions::default() };
    let data = build_with(v, &opts)?;
    let doc = ReportDoc::from_data(&data, cli.samples, cli.rng_seed);
    if let Some(c) = &cache {
        if let Err(e) = c.store(&doc) {
            eprintln!("warning: cache write to {} failed: {e}", c.path(p, n).display());
        }
    }
    Ok(doc)
}

fn ring(cli: &Cli) -> Result<std::sync::Arc<FusionRing>, Failure> {
    let v = ver(cli)?;
    if !v.p.is_odd() && cli.experimental_p2 {
        return Ok(FusionRing::new_experimental(v));
    }
    FusionRing::new(v).map_err(|e| Failure::Usage(format!("{e} (see --experimental-p2)")))
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    let done = |payload| Ok(Outcome { payload, ok: true });
    match &cli.command {
        Command::Report => {
            let r = report(cli)?;
            let ok = r.verification.all_passed;
            Ok(Outcome { payload: Payload::Report(Box::new(r)), ok })
        }
        Command::Verify => {
            let r = report(cli)?;
            let ok = r.verification.all_passed;
            Ok(Outcome { payload: Payload::Verification(r.verification), ok })
        }
        Command::Cartan { even_only, order } => done(Payload::Matrix(cartan(&report(cli)?, *even_only, *order))),
        Command::Decomp => done(Payload::Matrix(report(cli)?.decomposition)),
        Command::Blocks => {
            let r = report(cli)?;
            done(Payload::Blocks(BlocksDoc { p: r.p, n: r.n, blocks: r.blocks }))
        }
        Command::Ext1 => {
            let r = report(cli)?;
            let pairs = r
                .ext1
                .ok_or_else(|| Failure::Usage(format!("ext1 is not supported for p = {}", r.p)))?;
            done(Payload::Ext1(Ext1Doc { p: r.p, n: r.n, pairs }))
        }
        Command::Fuse { a, b } => {
            let r = ring(cli)?;
            let v = r.ver();
            let prod = r.fuse(SimpleLabel(*a), SimpleLabel(*b))?;
            let folded = fold_projectives(&r, &prod)?;
            done(Payload::Fusion(FusionDoc::new(v.p.get(), v.n, *a, *b, &prod, &folded)))
        }
        Command::Table { even_only } => {
            let r = ring(cli)?;
            let v = r.ver();
            let labels: Vec<u64> = v.simples().map(|s| s.0).filter(|i| !even_only || i % 2 == 0).collect();
            let mut cells = Vec::with_capacity(labels.len());
            for &a in &labels {
                let mut row = Vec::with_capacity(labels.len());
                for &b in &labels {
                    let prod = r.fuse(SimpleLabel(a), SimpleLabel(b))?;
                    row.push(fold_projectives(&r, &prod)?.to_string());
                }
                cells.push(row);
            }
            done(Payload::FusionTable(FusionTableDoc { p: v.p.get(), n: v.n, labels, cells }))
        }
        Command::Invariants { max } => {
            let v = ver(cli)?;
            let a: Vec<Num> = invariant_dims(v, *max).into_iter().map(Num).collect();
            let b: Vec<Num> = series_fn(v, *max).into_iter().map(Num).collect();
            let equal = a == b;
            let doc = SeriesDoc { p: v.p.get(), n: v.n, max: *max, invariant_dims: a, series_fn: b, equal };
            Ok(Outcome { payload: Payload::Series(doc), ok: equal })
        }
        Command::Tilting { m } => done(Payload::Tilting(tilting(prime(cli)?, *m))),
    }
}

fn cartan(r: &ReportDoc, even_only: bool, order: Order) -> MatrixDoc {
    let mut labels: Vec<u64> = r.simples.iter().copied().filter(|i| !even_only || i % 2 == 0).collect();
    if order == Order::Block {
        let block_of = |i: u64| r.blocks.iter().position(|b| b.simples.contains(&i)).expect("every simple has a block");
        // larger blocks first, then by smallest member
        let key = |i: u64| {
            let b = &r.blocks[block_of(i)];
            (std::cmp::Reverse(b.size), b.simples[0], i)
        };
        labels.sort_by_key(|&i| key(i));
    }
    let rows = labels
        .iter()
        .map(|&i| labels.iter().map(|&j| r.cartan.rows[i as usize][j as usize].clone()).collect())
        .collect();
    MatrixDoc {
        name: "cartan".into(),
        p: r.p,
        n: r.n,
        row_labels: simple_labels(labels.iter().copied()),
        col_labels: simple_labels(labels.iter().copied()),
        rows,
    }
}

fn tilting(p: Prime, m: u64) -> TiltingDoc {
    let ch: std::sync::Arc<SymChar> = tilting_char(p, m);
    let weyl = ch.weyl_expand().into_iter().rev().map(|(j, c)| (j, Num(c))).collect();
    let character = ch.iter().filter(|(w, _)| *w >= 0).rev().map(|(w, c)| (w, Num(c.clone()))).collect();
    TiltingDoc { p: p.get(), m, dim: Num(ch.dim_at_one()), weyl, character }
}
