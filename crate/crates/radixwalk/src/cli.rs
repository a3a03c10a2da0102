//! Command-line harness: load, update-stream generation, streaming and
//! batched ingestion, walk applications, the round-based benchmark loop
//! and the verification suite.
//!
//! Metrics are emitted as line-delimited `key value` records so runs can
//! be diffed. Identical argv and seeds produce byte-identical artifacts
//! (wall-time fields excepted). The env var `BINGO_SEED` overrides any
//! `--seed` flag. Exit codes: 0 ok, 1 usage, 2 runtime failure.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::batch::{apply_batch, BatchStats};
use crate::error::{Error, Result};
use crate::graph::DynGraph;
use crate::radix::{BiasMode, GroupThresholds};
use crate::verify::{scratch_equivalence, tv_distance};
use crate::walks::{deepwalk_walks, node2vec_walks, ppr_walks, Walk};
use crate::workload::{generate_update_stream, parse_stream, write_stream, UpdateMode};

#[derive(Parser)]
#[command(name = "radixwalk", version, about = "Dynamic-graph random-walk engine")]
pub struct Cli {
    /// Cap internal parallelism (default: available hardware threads).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Insertion,
    Deletion,
    Mixed,
}

impl From<ModeArg> for UpdateMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Insertion => UpdateMode::Insertion,
            ModeArg::Deletion => UpdateMode::Deletion,
            ModeArg::Mixed => UpdateMode::Mixed,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ApplyMode {
    Streaming,
    Batched,
}

#[derive(Clone, Copy, ValueEnum)]
enum App {
    Deepwalk,
    Node2vec,
    Ppr,
}

#[derive(clap::Args, Clone, Copy)]
struct GraphOpts {
    /// Mirror every edge on both endpoints.
    #[arg(long)]
    undirected: bool,
    /// Interpret biases as positive reals (λ-scaled) instead of integers.
    #[arg(long)]
    float_bias: bool,
}

impl GraphOpts {
    fn mode(&self) -> BiasMode {
        if self.float_bias { BiasMode::Float } else { BiasMode::Integer }
    }

    fn load(&self, path: &Path) -> Result<DynGraph> {
        let reader = BufReader::new(File::open(path)?);
        DynGraph::load_edge_list(reader, self.mode(), !self.undirected, GroupThresholds::default())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Load an edge list and report structure metrics.
    Load {
        edges: PathBuf,
        #[command(flatten)]
        opts: GraphOpts,
    },
    /// Split an edge list into a base set and an update stream.
    GenUpdates {
        edges: PathBuf,
        #[arg(long)]
        batchsize: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Mixed)]
        mode: ModeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Stream output path; the base set goes to "<output>.base".
        #[arg(short, long)]
        output: PathBuf,
        #[command(flatten)]
        opts: GraphOpts,
    },
    /// Apply an update stream to a graph, streaming or batched.
    Update {
        graph: PathBuf,
        stream: PathBuf,
        #[arg(long, value_enum, default_value_t = ApplyMode::Streaming)]
        mode: ApplyMode,
        /// Updates per batch in batched mode.
        #[arg(long, default_value_t = 10_000)]
        batch: usize,
        #[command(flatten)]
        opts: GraphOpts,
    },
    /// Run a walk application over a loaded graph.
    Walk {
        graph: PathBuf,
        #[arg(long, value_enum)]
        app: App,
        #[arg(long, default_value_t = 80)]
        length: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 2.0)]
        q: f64,
        /// PPR stop probability per step.
        #[arg(long, default_value_t = 0.0125)]
        term: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        walkers_per_vertex: usize,
        /// Walks output path (stdout when absent); PPR visit counts go to
        /// "<output>.counts".
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        opts: GraphOpts,
    },
    /// Ten rounds of batched updates plus a walk pass, with metrics.
    Bench {
        edges: PathBuf,
        #[arg(long)]
        batchsize: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Mixed)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = App::Deepwalk)]
        app: App,
        #[arg(long, default_value_t = 80)]
        length: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Metrics output path (stdout when absent).
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        opts: GraphOpts,
    },
    /// Scratch-equivalence and statistical checks over a graph.
    Verify {
        graph: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        opts: GraphOpts,
    },
}

fn effective_seed(flag: u64) -> Result<u64> {
    match std::env::var("BINGO_SEED") {
        Ok(v) => v
            .parse()
            .map_err(|_| Error::Config(format!("BINGO_SEED must be a 64-bit integer, got {v:?}"))),
        Err(_) => Ok(flag),
    }
}

fn read_edge_list(path: &Path) -> Result<Vec<(u32, u32, f64)>> {
    use std::io::BufRead;
    let mut edges = Vec::new();
    for (line_no, line) in BufReader::new(File::open(path)?).lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |message: String| Error::Parse { line: line_no + 1, message };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let (src, dst, bias) = match fields.as_slice() {
            [s, d] => (s, d, "1"),
            [s, d, b] => (s, d, *b),
            _ => return Err(bad(format!("expected \"src dst [bias]\", got {line:?}"))),
        };
        edges.push((
            src.parse().map_err(|_| bad(format!("bad src {src:?}")))?,
            dst.parse().map_err(|_| bad(format!("bad dst {dst:?}")))?,
            bias.parse().map_err(|_| bad(format!("bad bias {bias:?}")))?,
        ));
    }
    Ok(edges)
}

fn graph_summary<W: Write>(mut w: W, g: &DynGraph) -> Result<()> {
    let live: usize = (0..g.vertex_count() as u32).map(|u| g.degree(u)).sum();
    let slots = g.total_memory_slots();
    writeln!(w, "vertices {}", g.vertex_count())?;
    writeln!(w, "adjacency_entries {live}")?;
    writeln!(w, "memory_slots {slots}")?;
    writeln!(w, "memory_bytes_estimate {}", slots * 4)?;
    Ok(())
}

fn run_walks(
    g: &DynGraph,
    app: App,
    length: usize,
    p: f64,
    q: f64,
    term: f64,
    seed: u64,
    walkers_per_vertex: usize,
) -> Result<(Vec<Walk>, Option<Vec<u64>>)> {
    let mut starts = Vec::new();
    for _ in 0..walkers_per_vertex {
        starts.extend(g.vertices());
    }
    Ok(match app {
        App::Deepwalk => (deepwalk_walks(g, &starts, length, seed)?, None),
        App::Node2vec => (node2vec_walks(g, &starts, length, p, q, seed)?, None),
        App::Ppr => {
            let (walks, visits) = ppr_walks(g, &starts, term, seed)?;
            (walks, Some(visits))
        }
    })
}

fn write_walks<W: Write>(mut w: W, walks: &[Walk]) -> Result<()> {
    for walk in walks {
        let mut line = String::new();
        for (i, v) in walk.vertices.iter().enumerate() {
            if i > 0 {
                line.push(' ');
            }
            line.push_str(&v.to_string());
        }
        writeln!(w, "{line}")?;
    }
    Ok(())
}

fn write_visit_counts<W: Write>(mut w: W, visits: &[u64]) -> Result<()> {
    for (v, &count) in visits.iter().enumerate() {
        if count > 0 {
            writeln!(w, "{v} {count}")?;
        }
    }
    Ok(())
}

/// Parses argv and runs the selected subcommand. `Err` means a runtime
/// failure; argv errors are handled by the caller via clap.
pub fn run(cli: Cli) -> Result<()> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Error::Config("--threads must be at least 1".into()));
        }
        // Ignore the error when a global pool already exists (tests).
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let stdout = std::io::stdout();
    match cli.command {
        Command::Load { edges, opts } => {
            let g = opts.load(&edges)?;
            graph_summary(stdout.lock(), &g)?;
        }
        Command::GenUpdates { edges, batchsize, mode, seed, output, opts: _ } => {
            let seed = effective_seed(seed)?;
            let all = read_edge_list(&edges)?;
            let (base, stream) =
                generate_update_stream(&all, batchsize, mode.into(), seed, all.len() as u64)?;
            let mut base_out = BufWriter::new(File::create(output.with_extension(
                match output.extension() {
                    Some(e) => format!("{}.base", e.to_string_lossy()),
                    None => "base".to_string(),
                },
            ))?);
            for (s, d, b) in &base {
                writeln!(base_out, "{s} {d} {b}")?;
            }
            base_out.flush()?;
            let mut out = BufWriter::new(File::create(&output)?);
            write_stream(&mut out, &stream)?;
            out.flush()?;
            let mut w = stdout.lock();
            writeln!(w, "base_edges {}", base.len())?;
            writeln!(w, "stream_updates {}", stream.len())?;
        }
        Command::Update { graph, stream, mode, batch, opts } => {
            let mut g = opts.load(&graph)?;
            let updates = parse_stream(BufReader::new(File::open(&stream)?))?;
            let total = updates.len();
            let started = Instant::now();
            let mut stats = BatchStats::default();
            match mode {
                ApplyMode::Streaming => {
                    for u in &updates {
                        g.apply_update(u)?;
                    }
                }
                ApplyMode::Batched => {
                    if batch == 0 {
                        return Err(Error::Config("--batch must be at least 1".into()));
                    }
                    for chunk in updates.chunks(batch) {
                        stats.merge(&apply_batch(&mut g, chunk)?);
                    }
                }
            }
            let elapsed = started.elapsed();
            let mut w = stdout.lock();
            writeln!(w, "updates {total}")?;
            writeln!(w, "elapsed_us {}", elapsed.as_micros())?;
            writeln!(w, "updates_per_s {:.0}", total as f64 / elapsed.as_secs_f64())?;
            if matches!(mode, ApplyMode::Batched) {
                write!(w, "{}", stats.render())?;
            }
            graph_summary(w, &g)?;
        }
        Command::Walk {
            graph, app, length, p, q, term, seed, walkers_per_vertex, output, opts,
        } => {
            let seed = effective_seed(seed)?;
            let g = opts.load(&graph)?;
            let (walks, visits) = run_walks(&g, app, length, p, q, term, seed, walkers_per_vertex)?;
            match &output {
                Some(path) => {
                    let mut out = BufWriter::new(File::create(path)?);
                    write_walks(&mut out, &walks)?;
                    out.flush()?;
                    if let Some(visits) = &visits {
                        let counts_path = path.with_extension(match path.extension() {
                            Some(e) => format!("{}.counts", e.to_string_lossy()),
                            None => "counts".to_string(),
                        });
                        let mut out = BufWriter::new(File::create(counts_path)?);
                        write_visit_counts(&mut out, visits)?;
                        out.flush()?;
                    }
                    let mut w = stdout.lock();
                    writeln!(w, "walks {}", walks.len())?;
                }
                None => {
                    let mut w = stdout.lock();
                    write_walks(&mut w, &walks)?;
                    if let Some(visits) = &visits {
                        writeln!(w, "# visit counts")?;
                        write_visit_counts(&mut w, visits)?;
                    }
                }
            }
        }
        Command::Bench { edges, batchsize, mode, app, length, seed, output, opts } => {
            let seed = effective_seed(seed)?;
            let all = read_edge_list(&edges)?;
            let (base, stream) =
                generate_update_stream(&all, batchsize, mode.into(), seed, all.len() as u64)?;
            let mut g = DynGraph::from_edges(
                &base,
                opts.mode(),
                !opts.undirected,
                GroupThresholds::default(),
            )?;
            let mut sink: Box<dyn Write> = match &output {
                Some(path) => Box::new(BufWriter::new(File::create(path)?)),
                None => Box::new(stdout.lock()),
            };
            writeln!(sink, "rounds 10")?;
            writeln!(sink, "batchsize {batchsize}")?;
            writeln!(sink, "base_edges {}", base.len())?;
            for (round, chunk) in stream.chunks(batchsize).enumerate() {
                let stats = apply_batch(&mut g, chunk)?;
                let walk_started = Instant::now();
                let (walks, _) =
                    run_walks(&g, app, length, 0.5, 2.0, 1.0 / 80.0, seed ^ round as u64, 1)?;
                let walk_elapsed = walk_started.elapsed();
                let slots = g.total_memory_slots();
                writeln!(sink, "round {round}")?;
                writeln!(sink, "round_updates {}", chunk.len())?;
                writeln!(sink, "round_update_elapsed_us {}", stats.elapsed.as_micros())?;
                writeln!(
                    sink,
                    "round_updates_per_s {:.0}",
                    chunk.len() as f64 / stats.elapsed.as_secs_f64()
                )?;
                writeln!(sink, "round_walks {}", walks.len())?;
                writeln!(sink, "round_walk_elapsed_us {}", walk_elapsed.as_micros())?;
                writeln!(sink, "round_memory_slots {slots}")?;
                writeln!(sink, "round_memory_bytes_estimate {}", slots * 4)?;
                for line in stats.render().lines() {
                    writeln!(sink, "round_{line}")?;
                }
            }
            sink.flush()?;
        }
        Command::Verify { graph, samples, seed, opts } => {
            let seed = effective_seed(seed)?;
            let g = opts.load(&graph)?;
            let vertices: Vec<u32> = (0..g.vertex_count() as u32).collect();
            let report = scratch_equivalence(&g, &vertices);
            let mut w = stdout.lock();
            write!(w, "{}", report.render())?;

            // Statistical spot check on the highest-degree vertices.
            use rand::SeedableRng;
            let mut ranked: Vec<u32> = g.vertices().collect();
            ranked.sort_by_key(|&u| std::cmp::Reverse(g.degree(u)));
            ranked.truncate(10);
            let mut worst_tv = 0.0f64;
            for &u in &ranked {
                let sampler = g.sampler(u)?;
                let exact = sampler.exact_distribution()?;
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ u as u64);
                let mut counts = vec![0u64; sampler.degree()];
                for _ in 0..samples {
                    counts[sampler.sample_neighbor(&mut rng)?] += 1;
                }
                let empirical: Vec<f64> =
                    counts.iter().map(|&c| c as f64 / samples as f64).collect();
                worst_tv = worst_tv.max(tv_distance(&exact, &empirical)?);
            }
            writeln!(w, "sampled_vertices {}", ranked.len())?;
            writeln!(w, "samples_per_vertex {samples}")?;
            writeln!(w, "worst_tv {worst_tv:.6}")?;
            let tv_bound = 0.005 * (1_000_000.0 / samples as f64).sqrt();
            if !report.is_clean() {
                return Err(Error::Verification(format!(
                    "{} scratch-equivalence violations",
                    report.violations.len()
                )));
            }
            if !ranked.is_empty() && worst_tv > tv_bound {
                return Err(Error::Verification(format!(
                    "worst empirical TV {worst_tv:.6} above bound {tv_bound:.6}"
                )));
            }
            writeln!(w, "result ok")?;
        }
    }
    Ok(())
}
