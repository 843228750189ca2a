//! `trailtrap`: solve, census, trees, strategies, hardness constructions and
//! interactive play.

mod input;
mod play;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use trailtrap::census::{enumerate_connected, read_census_graph6, run_census, CensusTable};
use trailtrap::hardness::{build_pendant_graph, build_reduction_graph, check_reduction_equivalence, replace_edge_with_gadget};
use trailtrap::io::format_edge_list;
use trailtrap::strategy::{
    copycat_strategy, grid_p1_strategy, k3q_p1_strategy, prism_p2_strategy, random_playouts, verify_strategy, Verdict,
};
use trailtrap::tree::{analyze_tree, solve_tree_explained};
use trailtrap::{find_involution_no_fixed_edges, Graph, Involution, SolveError, Solver, SolverConfig};

use input::GraphInput;

#[derive(Debug, Parser)]
#[command(name = "trailtrap", version, about = "Trail Trap solver and toolkit")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Give up after this many search nodes (exit status 2).
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,
    /// Worker threads.
    #[arg(long, global = true, value_name = "K", default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide who wins from the empty position.
    Solve {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Solve every connected graph on n vertices.
    Census {
        #[arg(long)]
        n: usize,
        /// Read the graphs from a graph6 file instead of enumerating them.
        #[arg(long, value_name = "FILE")]
        graph6_file: Option<PathBuf>,
        /// List the P1-win graphs in canonical graph6.
        #[arg(long)]
        emit_p1_list: bool,
    },
    /// Solve a tree with the center screen.
    Tree {
        #[command(flatten)]
        input: GraphInput,
        /// Show the screened openings and P2's refutations.
        #[arg(long)]
        explain: bool,
    },
    /// Check a strategy against every adversary line.
    Verify {
        #[arg(long, value_enum)]
        strategy: StrategyKind,
        /// copycat: a family such as grid:3,3. grid, prism: n. k3q: q.
        #[arg(long)]
        params: String,
        /// copycat: the involution as a comma-separated permutation.
        #[arg(long)]
        map: Option<String>,
        /// k3q: number of random games (the full tree is large).
        #[arg(long, default_value_t = 10_000)]
        games: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// k3q: search every adversary line instead of sampling.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Build one of the hardness constructions.
    Gadget {
        #[arg(long = "type", value_enum)]
        kind: GadgetKind,
        /// Host graph as an edge list.
        #[arg(long, value_name = "FILE")]
        host: PathBuf,
        /// edge: the host edge to replace, as u,v.
        #[arg(long, value_name = "U,V")]
        edge: Option<String>,
        /// pendant, reduction: the host vertex w.
        #[arg(long, value_name = "W")]
        vertex: Option<usize>,
        /// Write the edge list here instead of stdout.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// reduction: also decide both sides and compare.
        #[arg(long)]
        check: bool,
    },
    /// Play against the engine, moves typed as `u v`.
    Play {
        #[command(flatten)]
        input: GraphInput,
        /// The side you play.
        #[arg(long, value_enum, default_value_t = Side::P1)]
        human: Side,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StrategyKind {
    Copycat,
    Grid,
    Prism,
    K3q,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GadgetKind {
    Edge,
    Pendant,
    Reduction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Side {
    P1,
    P2,
}

/// A budget ran out somewhere below.
#[derive(Debug)]
struct BudgetHit;

impl std::fmt::Display for BudgetHit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("budget exceeded")
    }
}

impl std::error::Error for BudgetHit {}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if over_budget(&e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn over_budget(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        c.is::<BudgetHit>() || matches!(c.downcast_ref::<SolveError>(), Some(SolveError::BudgetExceeded { .. }))
    })
}

fn config(cli: &Cli) -> SolverConfig {
    SolverConfig { node_budget: cli.budget, jobs: cli.jobs as usize, ..SolverConfig::default() }
}

#[derive(Serialize)]
struct Meta {
    nodes: u64,
    millis: u128,
    budget: Option<u64>,
}

fn emit<T: Serialize>(key: &str, value: T, meta: Meta) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(&json!({ key: value, "meta": meta }))?);
    Ok(())
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Solve { input } => solve(cli, &input.load()?),
        Command::Census { n, graph6_file, emit_p1_list } => census(cli, *n, graph6_file.as_ref(), *emit_p1_list),
        Command::Tree { input, explain } => tree(cli, &input.load()?, *explain),
        Command::Verify { strategy, params, map, games, seed, exhaustive } => {
            verify(cli, *strategy, params, map.as_deref(), *games, *seed, *exhaustive)
        }
        Command::Gadget { kind, host, edge, vertex, out, check } => {
            gadget(cli, *kind, host, edge.as_deref(), *vertex, out.as_ref(), *check)
        }
        Command::Play { input, human } => {
            let g = input.load()?;
            let stdin = std::io::stdin();
            play::session(&g, Solver::new(config(cli)), *human, &mut stdin.lock(), &mut std::io::stdout())
        }
    }
}

fn solve(cli: &Cli, g: &Graph) -> Result<()> {
    let sol = Solver::new(config(cli)).solve(g)?;
    let meta = Meta { nodes: sol.stats.nodes, millis: sol.stats.millis, budget: cli.budget };
    if cli.json {
        let witness = sol.outcome.witness_first_move.map(|m| m.to_string());
        let v = json!({ "winner": sol.outcome.winner, "witness": witness, "meta": meta });
        println!("{}", serde_json::to_string_pretty(&v)?);
        return Ok(());
    }
    println!("winner: {}", sol.outcome.winner);
    if let Some(m) = sol.outcome.witness_first_move {
        println!("winning first move: {m}");
    }
    println!("nodes: {}  time: {} ms", meta.nodes, meta.millis);
    Ok(())
}

fn census(cli: &Cli, n: usize, file: Option<&PathBuf>, emit_p1: bool) -> Result<()> {
    let graphs = match file {
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?;
            read_census_graph6(&text, n)?
        }
        None => enumerate_connected(n)?,
    };
    let report = run_census(&graphs, cli.jobs as usize, config(cli))?;
    let meta = Meta { nodes: report.total_nodes, millis: report.millis, budget: cli.budget };
    if cli.json {
        let mut counts = json!({
            "n": report.n,
            "connected": report.total_connected,
            "p2_win": report.p2_win,
            "p1_win": report.p1_win(),
        });
        if emit_p1 {
            counts["p1_win_list"] = json!(report.p1_win_list);
        }
        return emit("counts", counts, meta);
    }
    print!("{}", CensusTable(std::slice::from_ref(&report)));
    println!("{} / {} P2-win", report.p2_win, report.total_connected);
    if emit_p1 {
        for s in &report.p1_win_list {
            println!("{s}");
        }
    }
    Ok(())
}

fn tree(cli: &Cli, t: &Graph, explain: bool) -> Result<()> {
    let start = std::time::Instant::now();
    let analysis = analyze_tree(t)?;
    let ex = solve_tree_explained(t, &analysis)?;
    let meta = Meta { nodes: 0, millis: start.elapsed().as_millis(), budget: cli.budget };
    if cli.json {
        let mut report = json!({ "winner": ex.outcome.winner, "analysis": analysis });
        if explain {
            report["explanation"] = json!({
                "screened_openings": ex.screened_openings.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                "refutations": ex.refutations.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect::<Vec<_>>(),
                "witness": ex.outcome.witness_first_move.map(|m| m.to_string()),
            });
        }
        return emit("report", report, meta);
    }
    println!("winner: {}", ex.outcome.winner);
    if explain {
        println!("centers: {:?}  radius: {}  diameter: {}", analysis.centers, analysis.radius, analysis.diameter);
        match analysis.failed {
            Some(c) => println!("fails necessary condition: {c:?}"),
            None => println!("necessary conditions met"),
        }
        for m in &ex.screened_openings {
            match ex.refutations.iter().find(|(a, _)| a == m) {
                Some((_, r)) => println!("opening {m}: refuted by {r}"),
                None => println!("opening {m}: wins"),
            }
        }
    }
    Ok(())
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',').map(|t| t.trim().parse::<usize>().with_context(|| format!("bad number {t:?}"))).collect()
}

fn param(s: &str) -> Result<usize> {
    s.trim().parse().with_context(|| format!("bad parameter {s:?}"))
}

fn verify(
    cli: &Cli,
    kind: StrategyKind,
    params: &str,
    map: Option<&str>,
    games: u64,
    seed: u64,
    exhaustive: bool,
) -> Result<()> {
    use trailtrap::graph::{complete_bipartite, grid, prism};
    let start = std::time::Instant::now();
    let verdict = match kind {
        StrategyKind::Copycat => {
            let g = input::family(params)?;
            let phi = match map {
                Some(m) => Involution::new(&g, parse_list(m)?)?,
                None => find_involution_no_fixed_edges(&g).ok_or_else(|| anyhow!("no involution without fixed edges"))?,
            };
            verify_strategy(&g, &copycat_strategy(&g, phi)?)?
        }
        StrategyKind::Grid => {
            let n = param(params)?;
            let s = grid_p1_strategy(n)?;
            verify_strategy(&grid(2, n)?, &s)?
        }
        StrategyKind::Prism => {
            let n = param(params)?;
            let s = prism_p2_strategy(n)?;
            verify_strategy(&prism(n)?, s.as_ref())?
        }
        StrategyKind::K3q => {
            let q = param(params)?;
            let g = complete_bipartite(3, q)?;
            let s = k3q_p1_strategy(q)?;
            if exhaustive {
                verify_strategy(&g, &s)?
            } else {
                let r = random_playouts(&g, &s, games, seed)?;
                let meta = Meta { nodes: r.games, millis: start.elapsed().as_millis(), budget: cli.budget };
                if cli.json {
                    return emit("report", &r, meta);
                }
                println!("won {} of {} random games", r.wins, r.games);
                if let Some(c) = &r.first_loss {
                    println!("first loss: {}", c.transcript);
                    bail!("strategy lost a game");
                }
                return Ok(());
            }
        }
    };
    let nodes = match &verdict {
        Verdict::Verified(s) => s.decisions,
        Verdict::Counterexample(_) => 0,
    };
    let meta = Meta { nodes, millis: start.elapsed().as_millis(), budget: cli.budget };
    if cli.json {
        emit("report", &verdict, meta)?;
    } else {
        match &verdict {
            Verdict::Verified(s) => println!(
                "verified: {} games, {} decisions, longest game {} moves",
                s.playouts, s.decisions, s.longest_game
            ),
            Verdict::Counterexample(c) => println!("counterexample: {}", c.transcript),
        }
    }
    if !verdict.is_verified() {
        bail!("strategy has a counterexample");
    }
    Ok(())
}

fn gadget(
    cli: &Cli,
    kind: GadgetKind,
    host: &PathBuf,
    edge: Option<&str>,
    vertex: Option<usize>,
    out: Option<&PathBuf>,
    check: bool,
) -> Result<()> {
    let h = input::read_edge_list(host)?;
    let need_vertex = || vertex.ok_or_else(|| anyhow!("--vertex is required for this construction"));
    let (graph, mut report) = match kind {
        GadgetKind::Edge => {
            let e = parse_list(edge.ok_or_else(|| anyhow!("--edge is required for --type edge"))?)?;
            if e.len() != 2 {
                bail!("--edge needs two vertices");
            }
            let rep = replace_edge_with_gadget(&h, (e[0], e[1]))?;
            let r = json!({ "vertices": rep.result.n(), "edges": rep.result.m(), "anchors": rep.anchors });
            (rep.result, r)
        }
        GadgetKind::Pendant => {
            let p = build_pendant_graph(&h, need_vertex()?)?;
            let r = json!({ "vertices": p.graph.n(), "edges": p.graph.m(), "anchors": { "u": p.u, "w": p.w } });
            (p.graph, r)
        }
        GadgetKind::Reduction => {
            let w = need_vertex()?;
            let r = build_reduction_graph(&h, w)?;
            let rep = json!({
                "vertices": r.graph.n(),
                "edges": r.graph.m(),
                "anchors": { "u": r.u, "w": r.w, "c": r.c },
                "path": r.path,
                "opening_trail": r.opening_trail(),
            });
            (r.graph, rep)
        }
    };
    let text = format_edge_list(&graph);
    match out {
        Some(p) => fs::write(p, &text).with_context(|| format!("cannot write {}", p.display()))?,
        None if !cli.json => print!("{text}"),
        None => report["edge_list"] = json!(text),
    }
    let mut nodes = 0;
    let start = std::time::Instant::now();
    let mut exceeded = false;
    if check {
        if !matches!(kind, GadgetKind::Reduction) {
            bail!("--check only applies to --type reduction");
        }
        let budget = cli.budget.unwrap_or(50_000_000);
        let r = check_reduction_equivalence(&h, vertex.expect("checked above"), budget)?;
        nodes = r.solver_nodes;
        exceeded = r.budget_exceeded;
        report["check"] = json!(r);
    }
    let meta = Meta { nodes, millis: start.elapsed().as_millis(), budget: cli.budget };
    if cli.json {
        emit("report", &report, meta)?;
    } else {
        eprintln!("{}", serde_json::to_string_pretty(&report)?);
    }
    if exceeded {
        return Err(BudgetHit.into());
    }
    Ok(())
}
