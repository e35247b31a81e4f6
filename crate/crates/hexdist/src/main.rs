use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use hexdist::cache::Cache;
use hexdist::orchestrator::Searcher;
use hexdist::points_file::{read_points, write_points};
use hexdist::svg::{render_svg_with_hull, Hull, RenderOptions};
use hexdist::table::{emit_table, TableFormat};
use hexdist_core::lattice::{distance_set, multiplicity_array};
use hexdist_core::search::{Comparison, Method, SearchReport};

/// Large few-distance sets on the triangular lattice.
#[derive(Parser, Debug)]
#[command(name = "hexdist", version)]
struct Cli {
    /// Directory holding cached results.
    #[arg(long, global = true, default_value = ".hexdist-cache")]
    cache_dir: PathBuf,
    /// Neither read nor write the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Worker threads for the clique search.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    threads: u64,
    /// Seed each clique search with the cached result for m - 1.
    #[arg(long, global = true)]
    seed_lower_bounds: bool,
    /// Exit with status 2 when any result is not proven optimal.
    #[arg(long, global = true)]
    require_optimal: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SolveMethod {
    Clique,
    Hexagon,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PickMethod {
    Clique,
    Hexagon,
    /// Whichever method gives the larger set.
    Best,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Construct a set with at most m distances.
    Solve {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
        #[arg(long, value_enum, default_value = "clique")]
        method: SolveMethod,
        /// Time limit per m, in seconds.
        #[arg(long)]
        budget: Option<f64>,
        /// Also write the construction as a point list.
        #[arg(long)]
        points_out: Option<PathBuf>,
    },
    /// Compare both methods over a range of m.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..))]
        from: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..))]
        to: u64,
        #[arg(long, default_value = "csv")]
        format: TableFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        budget: Option<f64>,
    },
    /// Draw a construction as SVG.
    Render {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
        #[arg(long, value_enum, default_value = "best")]
        method: PickMethod,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 40.0)]
        scale: f64,
        #[arg(long, default_value_t = 6.0)]
        radius: f64,
        /// Skip the outline of the hexagon a trimmed set was cut from.
        #[arg(long)]
        no_hull: bool,
        #[arg(long)]
        budget: Option<f64>,
    },
    /// Print the multiplicity array of a construction.
    Multiplicity {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
        #[arg(long, value_enum, default_value = "best")]
        method: PickMethod,
        #[arg(long)]
        budget: Option<f64>,
    },
    /// Count the distances of a point list.
    Verify {
        #[arg(long)]
        points: PathBuf,
    },
}

/// A usage error; reported with exit status 1.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn parse_budget(budget: Option<f64>) -> anyhow::Result<Option<Duration>> {
    match budget {
        None => Ok(None),
        Some(s) if s.is_finite() && s > 0.0 => Ok(Some(Duration::from_secs_f64(s))),
        Some(s) => Err(usage(format!(
            "--budget must be a positive number of seconds, got {s}"
        ))),
    }
}

fn searcher(cli: &Cli, budget: Option<f64>) -> anyhow::Result<Searcher> {
    let mut s = Searcher::new()
        .threads(cli.threads as usize)
        .seed_lower_bounds(cli.seed_lower_bounds)
        .budget(parse_budget(budget)?);
    if !cli.no_cache {
        s = s.with_cache(Cache::open(&cli.cache_dir)?);
    }
    Ok(s)
}

fn warn_ignored(s: &Searcher) {
    for e in s.ignored_entries() {
        eprintln!("warning: ignoring cache entry: {e}");
    }
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn summary(r: &SearchReport) -> String {
    let mut s = format!(
        "m={} method={} size={}, optimal={} elapsed={:.3}s\n  distances: {}\n",
        r.m,
        r.method,
        r.size,
        r.optimal,
        r.elapsed.as_secs_f64(),
        join(r.menu.to_vec())
    );
    if let Some(h) = r.hexagon {
        s.push_str(&format!("  from: {}, {} points removed", h.spec, h.removed));
        if h.overshoot {
            s.push_str(" (trimming overshot)");
        }
        s.push('\n');
    }
    s
}

fn pick(s: &mut Searcher, m: usize, method: PickMethod) -> anyhow::Result<SearchReport> {
    if m < 3 && method != PickMethod::Clique {
        bail!(usage("the hexagon method needs m >= 3"));
    }
    Ok(match method {
        PickMethod::Clique => s.solve(m, Method::SmallestMenuClique)?,
        PickMethod::Hexagon => s.solve(m, Method::Hexagon)?,
        PickMethod::Best => s.compare(m)?.best().clone(),
    })
}

fn write_out(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Runs the command; the flag says whether every result was proven optimal.
fn run(cli: &Cli) -> anyhow::Result<bool> {
    match &cli.command {
        Command::Solve {
            m,
            method,
            budget,
            points_out,
        } => {
            let m = *m as usize;
            if m < 3 && *method != SolveMethod::Clique {
                bail!(usage("the hexagon method needs m >= 3"));
            }
            let mut s = searcher(cli, *budget)?;
            let reports = match method {
                SolveMethod::Clique => vec![s.solve(m, Method::SmallestMenuClique)?],
                SolveMethod::Hexagon => vec![s.solve(m, Method::Hexagon)?],
                SolveMethod::Both => {
                    let c = s.compare(m)?;
                    let winner = c.winner();
                    print!("{}{}", summary(&c.clique), summary(&c.hexagon));
                    println!("winner: {winner}{}", if c.star() { " *" } else { "" });
                    vec![c.best().clone(), c.clique.clone(), c.hexagon.clone()]
                }
            };
            warn_ignored(&s);
            if *method != SolveMethod::Both {
                print!("{}", summary(&reports[0]));
            }
            if let Some(path) = points_out {
                let r = &reports[0];
                let header = format!("m={} method={} size={}", r.m, r.method, r.size);
                write_points(path, &r.construction, Some(&header))?;
            }
            Ok(reports.iter().all(|r| r.optimal))
        }
        Command::Table {
            from,
            to,
            format,
            out,
            budget,
        } => {
            if from > to {
                bail!(usage(format!("--from {from} is larger than --to {to}")));
            }
            let mut s = searcher(cli, *budget)?;
            let rows: Vec<Comparison> = s.table(*from as usize, *to as usize)?;
            warn_ignored(&s);
            let text = emit_table(&rows, *format)?;
            match out {
                Some(path) => write_out(path, &text)?,
                None => print!("{text}"),
            }
            Ok(rows.iter().all(Comparison::optimal))
        }
        Command::Render {
            m,
            method,
            out,
            scale,
            radius,
            no_hull,
            budget,
        } => {
            let opts = RenderOptions {
                scale: *scale,
                point_radius: *radius,
                show_removed_hull: !no_hull,
            };
            if !(opts.scale > 0.0 && opts.point_radius > 0.0) {
                bail!(usage("--scale and --radius must be positive"));
            }
            let mut s = searcher(cli, *budget)?;
            let r = pick(&mut s, *m as usize, *method)?;
            warn_ignored(&s);
            let hull = r
                .hexagon
                .filter(|h| h.removed > 0)
                .and_then(|h| Hull::around(&r.construction, h.spec));
            write_out(
                out,
                &render_svg_with_hull(&r.construction, hull.as_ref(), &opts),
            )?;
            println!("wrote {} ({} points)", out.display(), r.size);
            Ok(r.optimal)
        }
        Command::Multiplicity { m, method, budget } => {
            let mut s = searcher(cli, *budget)?;
            let r = pick(&mut s, *m as usize, *method)?;
            warn_ignored(&s);
            println!("m={} method={} size={}", r.m, r.method, r.size);
            println!("distances:      {}", join(r.menu.to_vec()));
            println!("multiplicities: {}", join(&r.multiplicities.counts));
            Ok(r.optimal)
        }
        Command::Verify { points } => {
            let c = read_points(points)?;
            let menu = distance_set(&c)?;
            let counts = multiplicity_array(&c, &menu)?;
            println!("{} points, {} distances", c.len(), menu.len());
            println!("distances:      {}", join(menu.to_vec()));
            println!("multiplicities: {}", join(&counts.counts));
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) if cli.require_optimal => {
            eprintln!("error: result not proven optimal within the budget");
            ExitCode::from(2)
        }
        Ok(false) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
