// SPDX-License-Identifier: Apache-2.0

//! `schreier`: generate graphs, orient, colour and decorate them, and compute
//! local statistics. Every run prints a JSON report; the exit code is 0 when
//! all checks in the run pass, 1 when a check fails and 2 on errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use schreier_core::coloring::{
    almost_proper_color, budgeted_color, incidence_report, konig_color, purple_eliminate_with, verify_proper,
    BipartiteGraph, EdgeColoring, PurpleOptions,
};
use schreier_core::generate::{generate, GraphKind, GraphSpec, TreeShape};
use schreier_core::labeling::{sparse_labeling, verify_sparse};
use schreier_core::local::{
    generator_shift_check, involution_invariance_check, neighborhood_distribution, tv_distance, Marks,
};
use schreier_core::orientation::{
    canonical_random_orientation, canonical_random_orientation_bounded, empirical_orientation_law,
    eulerian_orientation, root_invariance_test, tree_orientation_law, Orientation, OrientationLaw, TreeWindow,
};
use schreier_core::rng::WorkBudget;
use schreier_core::schreier::{schreier_decorate, SchreierDecoration};
use schreier_core::MultiGraph;

#[derive(Parser)]
#[command(name = "schreier", version, about = "Balanced orientations, edge colourings and Schreier decorations")]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random graph as an edge list.
    Gen(GenArgs),
    /// Orient an even-degree graph.
    Orient(OrientArgs),
    /// Decorate a 2d-regular graph as a Schreier graph.
    Decorate(DecorateArgs),
    /// Edge-colour a bipartite graph, or check a colouring.
    Color(ColorArgs),
    /// Neighbourhood statistics and invariance checks.
    Stats(StatsArgs),
    /// Exact and sampled orientation laws of a tree window.
    OrientationLaw(LawArgs),
    /// Sparse vertex labelling.
    Labeling(LabelingArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    ConfReg,
    BipReg,
    Tree,
    ChordCycle,
}

#[derive(clap::Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    deg: Option<usize>,
    /// Vertex count (per side for bip-reg).
    #[arg(long)]
    n: Option<usize>,
    /// Half-degrees by depth, e.g. `2,1,1` (tree).
    #[arg(long, value_delimiter = ',')]
    halves: Vec<usize>,
    /// Internal vertex cap for a random tree.
    #[arg(long)]
    internal: Option<usize>,
    #[arg(long)]
    max_half_degree: Option<usize>,
    #[arg(long)]
    cycle_len: Option<usize>,
    #[arg(long)]
    chord_gap: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrientMode {
    Euler,
    Canonical,
}

#[derive(clap::Args)]
struct OrientArgs {
    graph: PathBuf,
    #[arg(long, value_enum, default_value = "euler")]
    mode: OrientMode,
    /// Treat degree-1 vertices as unconstrained boundary (canonical mode).
    #[arg(long)]
    window: bool,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(clap::Args)]
struct DecorateArgs {
    graph: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    /// Decoration JSON.
    #[arg(long)]
    out: PathBuf,
    /// Also write the generator permutations.
    #[arg(long)]
    permutations: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ColorMode {
    Konig,
    Budgeted,
    AlmostProper,
    Purple,
}

#[derive(clap::Args)]
struct ColorArgs {
    graph: PathBuf,
    #[arg(long, value_enum, default_value = "konig")]
    mode: ColorMode,
    /// Main palette size for budgeted mode (default: maximum degree - 1).
    #[arg(long)]
    d: Option<u32>,
    /// Radius for purple mode.
    #[arg(long)]
    r: Option<usize>,
    /// Radii r_2,...,r_d for almost-proper mode.
    #[arg(long, value_delimiter = ',')]
    schedule: Vec<usize>,
    /// Component size up to which purple mode colours components directly.
    #[arg(long)]
    finite_threshold: Option<usize>,
    /// Check this colouring file instead of computing one.
    #[arg(long, conflicts_with = "out")]
    verify: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the density report JSON here as well.
    #[arg(long)]
    density: Option<PathBuf>,
}

#[derive(clap::Args)]
struct StatsArgs {
    graph: PathBuf,
    #[arg(long)]
    radius: usize,
    /// Sample this many roots instead of enumerating all of them.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Decoration JSON; its marks enter the ball codes.
    #[arg(long)]
    decoration: Option<PathBuf>,
    /// Generator colour for the shift check (needs --decoration).
    #[arg(long, requires = "decoration")]
    shift_check: Option<u32>,
    /// Run the root-swap check over darts.
    #[arg(long)]
    involution: bool,
    /// With --samples, also compare against the exact distribution.
    #[arg(long)]
    compare_exact: bool,
    /// Write the distribution dump here.
    #[arg(long)]
    dump: Option<PathBuf>,
}

#[derive(clap::Args)]
struct LawArgs {
    window: PathBuf,
    #[arg(long)]
    root: usize,
    /// Second root for the root-invariance comparison.
    #[arg(long)]
    root2: Option<usize>,
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    #[arg(long)]
    seed: Option<u64>,
    /// TV threshold counted as a pass.
    #[arg(long, default_value_t = 0.02)]
    tolerance: f64,
    /// Write the laws as JSON here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct LabelingArgs {
    graph: PathBuf,
    #[arg(long)]
    radius: usize,
    #[arg(long)]
    out: PathBuf,
}

/// A finished run: its report and whether every check passed.
struct Outcome {
    report: Value,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    let (report, code) = match run(&cli.command) {
        Ok(o) => {
            let mut report = o.report;
            report["command"] = json!(name);
            report["ok"] = json!(o.ok);
            (report, if o.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            (json!({ "command": name, "ok": false, "error": format!("{e:#}") }), 2)
        }
    };
    let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    match &cli.report {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("error: cannot write report {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Gen(_) => "gen",
        Command::Orient(_) => "orient",
        Command::Decorate(_) => "decorate",
        Command::Color(_) => "color",
        Command::Stats(_) => "stats",
        Command::OrientationLaw(_) => "orientation-law",
        Command::Labeling(_) => "labeling",
    }
}

fn run(c: &Command) -> Result<Outcome> {
    let budget = WorkBudget::from_env();
    match c {
        Command::Gen(a) => cmd_gen(a),
        Command::Orient(a) => cmd_orient(a, budget),
        Command::Decorate(a) => cmd_decorate(a),
        Command::Color(a) => cmd_color(a, budget),
        Command::Stats(a) => cmd_stats(a, budget),
        Command::OrientationLaw(a) => cmd_orientation_law(a, budget),
        Command::Labeling(a) => cmd_labeling(a),
    }
}

/// Inputs must be readable files and outputs must have an existing parent
/// directory, checked before any work starts.
fn check_paths(inputs: &[&Path], outputs: &[&Path]) -> Result<()> {
    for p in inputs {
        if !p.is_file() {
            bail!("input file {} does not exist", p.display());
        }
    }
    for p in outputs {
        let parent = p.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
        if !parent.is_dir() {
            bail!("output directory {} does not exist", parent.display());
        }
    }
    Ok(())
}

fn need_seed(seed: Option<u64>, what: &str) -> Result<u64> {
    seed.with_context(|| format!("{what} is randomized and needs --seed"))
}

fn need<T>(x: Option<T>, flag: &str) -> Result<T> {
    x.with_context(|| format!("missing --{flag}"))
}

fn read_graph(path: &Path) -> Result<MultiGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    MultiGraph::parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn cmd_gen(a: &GenArgs) -> Result<Outcome> {
    check_paths(&[], &[&a.out])?;
    let seed = need_seed(a.seed, "gen")?;
    let kind = match a.kind {
        Kind::ConfReg => GraphKind::ConfigurationRegular {
            degree: need(a.deg, "deg")?,
            n: need(a.n, "n")?,
        },
        Kind::BipReg => GraphKind::BipartiteRegular {
            d: need(a.deg, "deg")?,
            n_per_side: need(a.n, "n")?,
        },
        Kind::Tree => {
            if !a.halves.is_empty() {
                GraphKind::EvenTreeWindow(TreeShape::Spherical(a.halves.clone()))
            } else {
                GraphKind::EvenTreeWindow(TreeShape::Random {
                    internal: need(a.internal, "internal")?,
                    max_half_degree: need(a.max_half_degree, "max-half-degree")?,
                })
            }
        }
        Kind::ChordCycle => GraphKind::SparseChordCycle {
            cycle_len: need(a.cycle_len, "cycle-len")?,
            chord_gap: need(a.chord_gap, "chord-gap")?,
        },
    };
    let spec = GraphSpec::new(kind, seed);
    let g = generate(&spec)?;
    write(&a.out, &g.to_edge_list())?;
    Ok(Outcome {
        report: json!({
            "seed": seed,
            "spec": spec,
            "vertices": g.vertex_count(),
            "edges": g.edge_count(),
            "max_degree": g.max_degree(),
        }),
        ok: true,
    })
}

fn cmd_orient(a: &OrientArgs, budget: WorkBudget) -> Result<Outcome> {
    check_paths(&[&a.graph], &[&a.out])?;
    let g = read_graph(&a.graph)?;
    let boundary: Vec<bool> = (0..g.vertex_count()).map(|v| a.window && g.degree(v) <= 1).collect();
    let (o, seed) = match a.mode {
        OrientMode::Euler => (eulerian_orientation(&g)?, None),
        OrientMode::Canonical => {
            let seed = need_seed(a.seed, "canonical orientation")?;
            let o = if a.window {
                canonical_random_orientation_bounded(&g, &boundary, seed, budget)?
            } else {
                canonical_random_orientation(&g, seed, budget)?
            };
            (o, Some(seed))
        }
    };
    write(&a.out, &o.to_text(&g))?;
    let degrees = o.degrees(&g);
    let unbalanced: Vec<usize> = (0..g.vertex_count())
        .filter(|&v| !boundary[v] && degrees[v].0 != degrees[v].1)
        .collect();
    Ok(Outcome {
        report: json!({
            "mode": match a.mode { OrientMode::Euler => "euler", OrientMode::Canonical => "canonical" },
            "seed": seed,
            "vertices": g.vertex_count(),
            "edges": g.edge_count(),
            "boundary_vertices": boundary.iter().filter(|&&b| b).count(),
            "balanced": unbalanced.is_empty(),
            "unbalanced_vertices": unbalanced,
        }),
        ok: unbalanced.is_empty(),
    })
}

fn cmd_decorate(a: &DecorateArgs) -> Result<Outcome> {
    let mut outs = vec![a.out.as_path()];
    outs.extend(a.permutations.as_deref());
    check_paths(&[&a.graph], &outs)?;
    let seed = need_seed(a.seed, "decorate")?;
    let g = read_graph(&a.graph)?;
    let s = schreier_decorate(&g, seed)?;
    write(&a.out, &(s.to_json() + "\n"))?;
    if let Some(p) = &a.permutations {
        write(p, &s.to_permutation_text()?)?;
    }
    let verdict = s.verify();
    Ok(Outcome {
        report: json!({
            "seed": seed,
            "vertices": g.vertex_count(),
            "edges": g.edge_count(),
            "d": s.d(),
            "verified": verdict.is_ok(),
            "violation": verdict.err().map(|v| v.to_string()),
        }),
        ok: verdict.is_ok(),
    })
}

fn cmd_color(a: &ColorArgs, budget: WorkBudget) -> Result<Outcome> {
    let mut ins = vec![a.graph.as_path()];
    ins.extend(a.verify.as_deref());
    let outs: Vec<&Path> = a.out.iter().chain(a.density.iter()).map(PathBuf::as_path).collect();
    check_paths(&ins, &outs)?;
    let g = read_graph(&a.graph)?;
    if let Some(path) = &a.verify {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let c = EdgeColoring::parse(g.edge_count(), &text, None)?;
        let verdict = verify_proper(&g, &c);
        return Ok(Outcome {
            report: json!({
                "mode": "verify",
                "edges": g.edge_count(),
                "colored_edges": c.colors.iter().flatten().count(),
                "proper": verdict.is_ok(),
                "conflict": verdict.err(),
                "conflict_text": verdict.err().map(|v| v.to_string()),
            }),
            ok: verdict.is_ok(),
        });
    }
    let out = a.out.as_deref().context("missing --out (or --verify)")?;
    let b = BipartiteGraph::from_graph(g)?;
    let g = b.graph();
    let (c, mode, details, mut ok) = match a.mode {
        ColorMode::Konig => (konig_color(&b)?, "konig", Value::Null, true),
        ColorMode::Budgeted => {
            let d = match a.d {
                Some(d) => d,
                None => g.max_degree().saturating_sub(1).max(1) as u32,
            };
            (budgeted_color(&b, d)?, "budgeted", json!({ "d": d }), true)
        }
        ColorMode::Purple => {
            let r = need(a.r, "r")?;
            let mut opts = PurpleOptions::new(r);
            opts.budget = budget;
            if let Some(t) = a.finite_threshold {
                opts.finite_threshold = t;
            }
            let (c, rep) = purple_eliminate_with(&b, &opts)?;
            let ok = rep.postconditions_ok && rep.density <= rep.bound;
            (c, "purple", serde_json::to_value(&rep)?, ok)
        }
        ColorMode::AlmostProper => {
            let (c, rep) = almost_proper_color(&b, &a.schedule, budget)?;
            (c, "almost-proper", serde_json::to_value(&rep)?, true)
        }
    };
    let verdict = verify_proper(g, &c);
    ok &= verdict.is_ok() && c.is_total();
    write(out, &c.to_text())?;
    let last = c.palette;
    let incidence = incidence_report(g, &c, last);
    ok &= incidence.bound_ok;
    let density = json!({
        "palette": c.palette,
        "class_sizes": c.class_sizes(),
        "density_last_color": if g.vertex_count() == 0 { 0.0 } else { c.count(last) as f64 / g.vertex_count() as f64 },
        "stage_reports": details.get("stage_reports").cloned().unwrap_or(json!([])),
    });
    if let Some(p) = &a.density {
        write(p, &(serde_json::to_string_pretty(&density)? + "\n"))?;
    }
    Ok(Outcome {
        report: json!({
            "mode": mode,
            "vertices": g.vertex_count(),
            "edges": g.edge_count(),
            "max_degree": g.max_degree(),
            "proper": verdict.is_ok(),
            "conflict": verdict.err(),
            "density": density,
            "incidence": incidence,
            "details": details,
        }),
        ok,
    })
}

fn cmd_stats(a: &StatsArgs, budget: WorkBudget) -> Result<Outcome> {
    let mut ins = vec![a.graph.as_path()];
    ins.extend(a.decoration.as_deref());
    let outs: Vec<&Path> = a.dump.iter().map(PathBuf::as_path).collect();
    check_paths(&ins, &outs)?;
    let g = read_graph(&a.graph)?;
    let deco = match &a.decoration {
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            let s = SchreierDecoration::from_json(&text)?;
            if s.graph().edge_list() != g.edge_list() || s.graph().vertex_count() != g.vertex_count() {
                bail!("decoration {} does not match graph {}", p.display(), a.graph.display());
            }
            Some(s)
        }
        None => None,
    };
    let marks = match &deco {
        Some(s) => Marks {
            orientation: Some(s.orientation()),
            colors: Some(s.colors()),
        },
        None => Marks::NONE,
    };
    let sample = match a.samples {
        Some(n) => Some((n, need_seed(a.seed, "sampled statistics")?)),
        None => None,
    };
    let dist = neighborhood_distribution(&g, a.radius, marks, sample, budget)?;
    if let Some(p) = &a.dump {
        write(p, &dist.dump())?;
    }
    let mut report = json!({
        "radius": a.radius,
        "seed": sample.map(|s| s.1),
        "samples": dist.sample_count,
        "vertices": g.vertex_count(),
        "decorated": deco.is_some(),
        "distinct_codes": dist.support(),
        "top": dist.top(5),
    });
    let mut ok = true;
    if a.compare_exact && sample.is_some() {
        let exact = neighborhood_distribution(&g, a.radius, marks, None, budget)?;
        report["tv_exact_vs_sampled"] = json!(tv_distance(&exact, &dist)?);
    }
    if let (Some(color), Some(s)) = (a.shift_check, &deco) {
        let tv = generator_shift_check(s, color, a.radius, budget)?;
        report["shift_check"] = json!({ "color": color, "tv": tv });
        ok &= tv == 0.0;
    }
    if a.involution {
        let (tv, rep) = involution_invariance_check(&g, a.radius, sample, budget)?;
        let regular = g.regular_degree().is_ok();
        report["involution"] = json!({ "tv": tv, "regular": regular, "report": rep });
        // only exact runs on regular graphs are required to vanish
        if regular && sample.is_none() {
            ok &= tv == 0.0;
        }
    }
    Ok(Outcome { report, ok })
}

fn law_json(g: &MultiGraph, law: &OrientationLaw) -> Value {
    law.outcomes
        .iter()
        .map(|(o, &p)| json!({ "heads": heads(g, o), "mass": p }))
        .collect()
}

/// Head vertex of every edge, in edge order.
fn heads(g: &MultiGraph, o: &Orientation) -> Vec<usize> {
    (0..g.edge_count()).map(|e| o.head(g, e)).collect()
}

fn cmd_orientation_law(a: &LawArgs, budget: WorkBudget) -> Result<Outcome> {
    let outs: Vec<&Path> = a.out.iter().map(PathBuf::as_path).collect();
    check_paths(&[&a.window], &outs)?;
    let seed = need_seed(a.seed, "orientation-law")?;
    let w = TreeWindow::from_tree(read_graph(&a.window)?)?;
    let oracle = tree_orientation_law(&w, budget)?;
    let empirical = empirical_orientation_law(&w, a.root, a.samples, seed)?;
    let g = w.tree();
    let mass_sum = oracle.total_mass();
    let mut ok = (mass_sum - 1.0).abs() <= 1e-12;
    let mut report = json!({
        "seed": seed,
        "samples": a.samples,
        "root": a.root,
        "outcomes": oracle.outcomes.len(),
        "oracle_mass_sum": mass_sum,
        "tolerance": a.tolerance,
    });
    let root2 = a.root2.unwrap_or(a.root);
    let inv = root_invariance_test(&w, a.root, root2, a.samples, seed, budget)?;
    report["tv_oracle"] = json!(inv.tv1_oracle);
    ok &= inv.tv1_oracle < a.tolerance;
    if a.root2.is_some() {
        report["root2"] = json!(root2);
        report["tv_roots"] = json!(inv.tv12);
        ok &= inv.tv12 < a.tolerance;
    }
    if let Some(p) = &a.out {
        let laws = json!({ "oracle": law_json(g, &oracle), "empirical": law_json(g, &empirical) });
        write(p, &(serde_json::to_string_pretty(&laws)? + "\n"))?;
    }
    Ok(Outcome { report, ok })
}

fn cmd_labeling(a: &LabelingArgs) -> Result<Outcome> {
    check_paths(&[&a.graph], &[&a.out])?;
    let g = read_graph(&a.graph)?;
    let l = sparse_labeling(&g, a.radius);
    let text: String = l.labels.iter().map(|x| format!("{x}\n")).collect();
    write(&a.out, &text)?;
    let verdict = verify_sparse(&g, &l);
    Ok(Outcome {
        report: json!({
            "radius": a.radius,
            "vertices": g.vertex_count(),
            "labels": l.k,
            "max_degree": g.max_degree(),
            "verified": verdict.is_ok(),
            "clash": verdict.err(),
        }),
        ok: verdict.is_ok(),
    })
}
