mod bench;
mod render;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use fold1d::oracle::{dfs_foldable_counted, minimum_forcing_size, BUDGET_ENV};
use fold1d::pattern::{parse_pattern, serialize_pattern, ParsedPattern};
use fold1d::{
    build_crimp_forest, export_forest, folded_state, forcing_set, is_flat_foldable, is_forcing, reconstruct_mv,
    CreaseId, ExportFormat, FoldDecision, FoldOp, MvPattern, OracleBudget,
};

use bench::Shape;

/// Flat-foldability, crimp forests and minimum forcing sets for 1D crease patterns.
///
/// Input files hold a `positions:` line and an `mv:` line (or the JSON
/// mirror `{"positions":[...],"mv":"..."}`); `-` reads standard input.
/// Exit status is 0 for an affirmative answer, 1 for a negative one and 2
/// for bad usage or input.
#[derive(Parser, Debug)]
#[command(name = "fold1d", version)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide flat-foldability and print a folding sequence or the stuck crimp.
    Check { file: PathBuf },
    /// Compute a minimum forcing set.
    Force {
        file: PathBuf,
        /// Confirm with the brute-force oracle that the set forces and is minimum.
        #[arg(long)]
        verify: bool,
        /// Most free creases the oracle may enumerate.
        #[arg(long, env = BUDGET_ENV)]
        budget: Option<usize>,
    },
    /// Export the crimp forest.
    Forest {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ForestFormat::Dot)]
        format: ForestFormat,
    },
    /// Complete a pattern whose forcing-set creases are labeled and the rest are `?`.
    Reconstruct { file: PathBuf },
    /// Check with the oracle whether the given creases force the assignment.
    Verify {
        file: PathBuf,
        /// Comma-separated crease numbers, e.g. `1,8,9`.
        #[arg(long, value_delimiter = ',')]
        set: Vec<CreaseId>,
        #[arg(long, env = BUDGET_ENV)]
        budget: Option<usize>,
    },
    /// Generate a foldable pattern.
    #[command(alias = "generate")]
    Gen {
        #[arg(long)]
        creases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Shape::Random)]
        shape: Shape,
    },
    /// Draw the crease pattern, or its folded state with `--folded`.
    Render {
        file: PathBuf,
        #[arg(long)]
        folded: bool,
        #[arg(long, value_enum, default_value_t = RenderFormat::Ascii)]
        format: RenderFormat,
    },
    /// Brute-force answers.
    Oracle {
        #[command(subcommand)]
        query: OracleQuery,
    },
    /// Time the linear pipeline on growing inputs.
    Bench {
        #[arg(long, default_value_t = 1_000_000)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = Shape::Nested)]
        shape: Shape,
    },
}

#[derive(Subcommand, Debug)]
enum OracleQuery {
    /// Foldability by exhaustive search.
    Check {
        file: PathBuf,
        #[arg(long, env = BUDGET_ENV)]
        budget: Option<usize>,
    },
    /// Whether a crease set (default: the computed forcing set) forces the assignment.
    Force {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        set: Option<Vec<CreaseId>>,
        #[arg(long, env = BUDGET_ENV)]
        budget: Option<usize>,
    },
    /// Minimum forcing set size by subset search.
    Min {
        file: PathBuf,
        #[arg(long, env = BUDGET_ENV)]
        budget: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ForestFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RenderFormat {
    Ascii,
    Svg,
}

enum Verdict {
    Yes,
    No,
}

fn read_input(file: &PathBuf) -> anyhow::Result<ParsedPattern> {
    let text = if file.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
        s
    } else {
        std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?
    };
    parse_pattern(&text).with_context(|| format!("parsing {}", file.display()))
}

fn read_full(file: &PathBuf) -> anyhow::Result<MvPattern> {
    match read_input(file)? {
        ParsedPattern::Full(p) => Ok(p),
        ParsedPattern::Partial(_) => bail!("{}: every crease needs an M or V label", file.display()),
    }
}

fn budget(max_free: Option<usize>) -> OracleBudget {
    let mut b = OracleBudget::default();
    if let Some(n) = max_free {
        b.max_free_creases = n;
    }
    b
}

fn creases(cs: &[CreaseId]) -> String {
    let v: Vec<String> = cs.iter().map(|c| format!("c{c}")).collect();
    format!("{{{}}}", v.join(", "))
}

fn millis(t: Instant) -> f64 {
    (t.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

fn print_json(v: serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(&v).expect("json values serialize"));
}

fn describe(op: &FoldOp) -> String {
    match op {
        FoldOp::Monocrimp { creases: [a, b] } => format!("monocrimp c{a} c{b}"),
        FoldOp::EndFold { crease, side } => format!("end fold at c{crease} ({side:?} end)").to_lowercase(),
    }
}

fn check(file: &PathBuf, json: bool) -> anyhow::Result<Verdict> {
    let p = read_full(file)?;
    let t = Instant::now();
    let decision = is_flat_foldable(&p);
    let ms = millis(t);
    if json {
        print_json(json!({ "command": "check", "creases": p.num_creases(), "result": decision, "millis": ms }));
    } else {
        match &decision {
            FoldDecision::Foldable { witness } => {
                println!("foldable");
                for (i, op) in witness.iter().enumerate() {
                    println!("{:>4}. {}", i + 1, describe(op));
                }
            }
            FoldDecision::Unfoldable { certificate } => println!("not foldable: {certificate}"),
        }
    }
    Ok(if decision.is_foldable() { Verdict::Yes } else { Verdict::No })
}

fn force(file: &PathBuf, verify: bool, max_free: Option<usize>, json: bool) -> anyhow::Result<Verdict> {
    let p = read_full(file)?;
    let t = Instant::now();
    let f = match forcing_set(&p) {
        Ok(f) => f,
        Err(fold1d::FoldError::Unfoldable(stuck)) => {
            if json {
                print_json(json!({ "command": "force", "foldable": false, "certificate": stuck }));
            } else {
                println!("not foldable: {stuck}");
            }
            return Ok(Verdict::No);
        }
        Err(e) => return Err(e.into()),
    };
    let ms = millis(t);
    let mut verdict = Verdict::Yes;
    let mut report = json!({ "command": "force", "foldable": true, "forcing_set": f.to_json(), "millis": ms });
    if verify {
        let b = budget(max_free);
        let forcing = is_forcing(&p, &f.creases, &b)?;
        let min = minimum_forcing_size(&p, &b)?;
        let ok = forcing.forcing && min.size == f.len();
        if !ok {
            verdict = Verdict::No;
        }
        report["verify"] = json!({ "ok": ok, "is_forcing": forcing, "minimum": min });
    }
    if json {
        print_json(report);
    } else {
        println!("F = {}", creases(&f.creases));
        println!("|F| = {} (m = {} monocrimps, e = {} end creases)", f.len(), f.m, f.e);
        if let Some(v) = report.get("verify") {
            let min = &v["minimum"]["size"];
            let forcing = v["is_forcing"]["forcing"].as_bool() == Some(true);
            if v["ok"].as_bool() == Some(true) {
                println!("verified: forcing, and no forcing set is smaller than {min}");
            } else {
                println!("verification FAILED: forcing = {forcing}, oracle minimum = {min}");
            }
        }
    }
    Ok(verdict)
}

fn forest(file: &PathBuf, format: ForestFormat) -> anyhow::Result<Verdict> {
    let p = read_full(file)?;
    let f = build_crimp_forest(&p)?;
    let out = match format {
        ForestFormat::Dot => export_forest(&f, ExportFormat::Dot),
        ForestFormat::Json => export_forest(&f, ExportFormat::Json) + "\n",
    };
    print!("{out}");
    Ok(Verdict::Yes)
}

fn reconstruct(file: &PathBuf, json: bool) -> anyhow::Result<Verdict> {
    let doc = read_input(file)?;
    let mv = reconstruct_mv(doc.pattern(), &doc.partial())?;
    let p = MvPattern::new(doc.pattern().clone(), mv)?;
    if json {
        println!("{}", p.to_json());
    } else {
        print!("{}", serialize_pattern(&p));
    }
    Ok(Verdict::Yes)
}

fn verify(p: &MvPattern, set: &[CreaseId], max_free: Option<usize>, json: bool) -> anyhow::Result<Verdict> {
    if let Some(&bad) = set.iter().find(|&&c| c == 0 || c > p.num_creases()) {
        bail!("crease c{bad} is out of range 1..={}", p.num_creases());
    }
    let v = is_forcing(p, set, &budget(max_free))?;
    if json {
        print_json(json!({ "command": "verify", "set": set, "verdict": v }));
    } else if v.forcing {
        println!("{} forces {} ({} of {} completions fold)", creases(set), p.mv, v.foldable, v.completions);
    } else {
        match &v.rival {
            Some(r) => println!("{} does not force {}: {r} also folds", creases(set), p.mv),
            None => println!("{} does not force {}: it is not foldable", creases(set), p.mv),
        }
    }
    Ok(if v.forcing { Verdict::Yes } else { Verdict::No })
}

fn gen(n: usize, seed: u64, shape: Shape, json: bool) -> anyhow::Result<Verdict> {
    let p = shape.pattern(n, seed)?;
    if json {
        println!("{}", p.to_json());
    } else {
        print!("{}", serialize_pattern(&p));
    }
    Ok(Verdict::Yes)
}

fn render(file: &PathBuf, folded: bool, format: RenderFormat) -> anyhow::Result<Verdict> {
    let doc = read_input(file)?;
    let labels = doc.partial();
    let out = if folded {
        let Some(p) = doc.into_full() else { bail!("--folded needs every crease labeled") };
        let s = folded_state(&p)?;
        match format {
            RenderFormat::Ascii => render::folded_ascii(&s),
            RenderFormat::Svg => render::folded_svg(&s, &labels),
        }
    } else {
        match format {
            RenderFormat::Ascii => render::ruler_ascii(doc.pattern(), &labels),
            RenderFormat::Svg => render::ruler_svg(doc.pattern(), &labels),
        }
    };
    print!("{out}");
    Ok(Verdict::Yes)
}

fn oracle(query: &OracleQuery, json: bool) -> anyhow::Result<Verdict> {
    match query {
        OracleQuery::Check { file, budget: b } => {
            let p = read_full(file)?;
            let (ok, states) = dfs_foldable_counted(&p, &budget(*b))?;
            if json {
                print_json(json!({ "command": "oracle check", "foldable": ok, "states": states }));
            } else {
                println!("{} ({states} states)", if ok { "foldable" } else { "not foldable" });
            }
            Ok(if ok { Verdict::Yes } else { Verdict::No })
        }
        OracleQuery::Force { file, set, budget: b } => {
            let p = read_full(file)?;
            let set = match set {
                Some(s) => s.clone(),
                None => forcing_set(&p)?.creases,
            };
            verify(&p, &set, *b, json)
        }
        OracleQuery::Min { file, budget: b } => {
            let p = read_full(file)?;
            let m = minimum_forcing_size(&p, &budget(*b))?;
            if json {
                print_json(json!({ "command": "oracle min", "result": m }));
            } else {
                println!("minimum forcing set size {} (first found: {})", m.size, creases(&m.witness));
                println!("{} foldable assignments on this crease pattern", m.foldable);
            }
            Ok(Verdict::Yes)
        }
    }
}

fn bench(max_n: usize, shape: Shape, json: bool) -> anyhow::Result<Verdict> {
    let rows = bench::run(max_n, shape)?;
    let linear = bench::linear(&rows);
    if json {
        print_json(json!({ "command": "bench", "shape": shape, "rows": rows, "linear": linear }));
    } else {
        println!("{:>10} {:>14} {:>10} {:>10} {:>8} {:>10}", "creases", "comparisons", "crimps", "|F|", "ratio", "ms");
        for r in &rows {
            let ratio = r.ratio.map_or("-".to_string(), |x| format!("{x:.2}"));
            println!(
                "{:>10} {:>14} {:>10} {:>10} {:>8} {:>10.3}",
                r.creases, r.comparisons, r.crimps, r.forcing_set, ratio, r.millis
            );
        }
        if !linear {
            println!("comparisons grew more than {}x on a doubling", bench::MAX_DOUBLING_RATIO);
        }
    }
    Ok(if linear { Verdict::Yes } else { Verdict::No })
}

fn run(cli: &Cli) -> anyhow::Result<Verdict> {
    let json = cli.json;
    match &cli.command {
        Command::Check { file } => check(file, json),
        Command::Force { file, verify, budget } => force(file, *verify, *budget, json),
        Command::Forest { file, format } => forest(file, *format),
        Command::Reconstruct { file } => reconstruct(file, json),
        Command::Verify { file, set, budget } => verify(&read_full(file)?, set, *budget, json),
        Command::Gen { creases, seed, shape } => gen(*creases, *seed, *shape, json),
        Command::Render { file, folded, format } => render(file, *folded, *format),
        Command::Oracle { query } => oracle(query, json),
        Command::Bench { max_n, shape } => bench(*max_n, *shape, json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Verdict::Yes) => ExitCode::SUCCESS,
        Ok(Verdict::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
