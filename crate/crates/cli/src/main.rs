use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use towerlab::automorphism::{automorphism_group_with_cap, completeness_of, AutGroupFile, Completeness};
use towerlab::boxed::{boxed_tower, build_boxed, build_wall, BoxTree, BoxedReport, ClassPattern, IsoAssignment, Wall};
use towerlab::catalog::{catalog_list, survey, survey_table};
use towerlab::graph::{graph_automorphisms, ColoredGraph};
use towerlab::normtower::{aut_equals_normalizer_check, normalizer_tower};
use towerlab::perm::{Perm, PermGroup};
use towerlab::tower::TowerReport;
use towerlab::{construct_named, limits, run_tower, Budget, Error, Fingerprint, FiniteGroup, GroupFile, Ordinal};

#[derive(Parser)]
#[command(name = "towerlab", version, about = "Automorphism and normalizer towers of small groups")]
struct Cli {
    /// Print machine-readable JSON
    #[arg(long, global = true)]
    json: bool,
    /// Write the report to a file instead of standard output
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order, center, fingerprint and completeness of a group
    Group { spec: String },
    /// The automorphism group of a group
    Aut { spec: String },
    /// The automorphism tower of a group
    Tower {
        spec: String,
        #[arg(long, default_value_t = 16)]
        max_stages: usize,
        #[arg(long, default_value_t = 4)]
        max_limits: usize,
    },
    /// Normalizer tower of a subgroup inside an ambient group
    Normtower {
        #[arg(long)]
        ambient: String,
        /// Comma-separated generator indices
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        sub: Vec<usize>,
    },
    /// Compare the automorphism tower with the normalizer tower in the terminal group
    FactCheck {
        spec: String,
        #[arg(long, default_value_t = 16)]
        max_stages: usize,
    },
    /// Automorphism group of a colored graph file
    GraphAut { file: PathBuf },
    /// Build the boxed construction
    Boxed(BoxArgs),
    /// Normalizer tower height of the boxed construction
    BoxedHeight(BoxArgs),
    /// Boxed construction with wall rows appended
    Wall {
        #[command(flatten)]
        boxed: BoxArgs,
        /// Class of the wall units; a class beyond the pattern's gets a fresh unit
        #[arg(long, default_value_t = 0)]
        wall_class: usize,
        #[arg(long, default_value_t = 2)]
        rows: usize,
    },
    /// Tower survey over the catalog
    Survey {
        #[arg(long, default_value_t = 15)]
        max_order: usize,
        #[arg(long, default_value_t = 16)]
        max_stages: usize,
        #[arg(long, default_value_t = 4)]
        max_limits: usize,
    },
}

#[derive(Args)]
struct BoxArgs {
    #[arg(long)]
    depth: usize,
    /// all-one, per-slot, per-level or upto:<β>
    #[arg(long, default_value = "all-one")]
    classes: String,
}

struct Output {
    json: String,
    text: String,
}

fn output<T: Serialize>(value: &T, text: String) -> Output {
    Output {
        json: serde_json::to_string_pretty(value).expect("reports serialize") + "\n",
        text,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cap = match aut_cap() {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("towerlab: {msg}");
            return ExitCode::from(2);
        }
    };
    let result = dispatch(&cli.command, cap).and_then(|out| {
        let body = if cli.json { out.json } else { out.text };
        match &cli.out {
            Some(path) => fs::write(path, body).map_err(|e| format!("{}: {e}", path.display())),
            None => {
                print!("{body}");
                Ok(())
            }
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("towerlab: {msg}");
            ExitCode::from(1)
        }
    }
}

fn aut_cap() -> std::result::Result<usize, String> {
    match std::env::var("TOWERLAB_MAX_ORDER") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("TOWERLAB_MAX_ORDER must be a positive integer, got `{v}`")),
        Err(_) => Ok(limits::MAX_AUT_BASE_ORDER),
    }
}

fn load_group(spec: &str) -> Result<FiniteGroup, String> {
    match spec.strip_prefix("file:") {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
            let file: GroupFile = serde_json::from_str(&text).map_err(|e| format!("{path}: {e}"))?;
            FiniteGroup::from_file(file).map_err(|e| format!("{path}: {e}"))
        }
        None => construct_named(spec).map_err(err),
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn dispatch(cmd: &Command, cap: usize) -> Result<Output, String> {
    match cmd {
        Command::Group { spec } => group(spec, cap),
        Command::Aut { spec } => aut(spec, cap),
        Command::Tower {
            spec,
            max_stages,
            max_limits,
        } => tower(
            spec,
            Budget {
                max_stages: *max_stages,
                max_limits: *max_limits,
                aut_cap: cap,
            },
        ),
        Command::Normtower { ambient, sub } => normtower(ambient, sub),
        Command::FactCheck { spec, max_stages } => {
            let g = load_group(spec)?;
            let budget = Budget {
                max_stages: *max_stages,
                aut_cap: cap,
                ..Budget::default()
            };
            let r = aut_equals_normalizer_check(&g, budget).map_err(err)?;
            let text = format!(
                "terminal order: {}\naut tower:        {}\nnormalizer tower: {}\n{}\n",
                r.terminal_order,
                join(&r.aut_stage_orders),
                join(&r.normalizer_stage_orders),
                match r.first_discrepancy {
                    None => "passed".to_string(),
                    Some(k) => format!("failed at stage {k}"),
                }
            );
            Ok(output(&r, text))
        }
        Command::GraphAut { file } => graph_aut(file),
        Command::Boxed(args) => {
            let (tree, assign) = boxed_input(args, 0)?;
            let b = build_boxed(&tree, &assign).map_err(err)?;
            let r = BoxedReport::new(&b, None);
            Ok(output(&r, boxed_text(&r)))
        }
        Command::BoxedHeight(args) => {
            let (tree, assign) = boxed_input(args, 0)?;
            let b = build_boxed(&tree, &assign).map_err(err)?;
            let t = boxed_tower(&b);
            let r = BoxedReport::new(&b, Some(&t));
            Ok(output(&r, format!("{}\n", t.height)))
        }
        Command::Wall {
            boxed,
            wall_class,
            rows,
        } => wall(boxed, *wall_class, *rows),
        Command::Survey {
            max_order,
            max_stages,
            max_limits,
        } => {
            let entries = catalog_list(*max_order).map_err(err)?;
            let budget = Budget {
                max_stages: *max_stages,
                max_limits: *max_limits,
                aut_cap: cap,
            };
            let rows = survey(&entries, budget);
            Ok(output(&rows, survey_table(&rows)))
        }
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" -> ")
}

#[derive(Serialize)]
struct GroupReport {
    spec: String,
    order: usize,
    center_order: usize,
    center: Vec<usize>,
    fingerprint: Fingerprint,
    completeness: Completeness,
}

fn group(spec: &str, cap: usize) -> Result<Output, String> {
    let g = load_group(spec)?;
    let a = automorphism_group_with_cap(&g, cap).map_err(err)?;
    let c = completeness_of(&a);
    let center = g.center();
    let fp = g.fingerprint();
    let r = GroupReport {
        spec: spec.to_string(),
        order: g.order(),
        center_order: center.order(),
        center: center.members().to_vec(),
        fingerprint: fp.clone(),
        completeness: c.clone(),
    };
    let text = format!(
        "group {spec}\norder: {}\ncenter order: {}\nabelian: {}\nclass sizes: {:?}\n|Aut|: {}  |Inn|: {}  |Out|: {}\ncomplete: {}\n",
        r.order, r.center_order, fp.abelian, fp.class_sizes, c.aut_order, c.inner_order, c.outer_index, c.complete
    );
    Ok(output(&r, text))
}

#[derive(Serialize)]
struct AutReport {
    spec: String,
    base_order: usize,
    completeness: Completeness,
    aut: AutGroupFile,
}

fn aut(spec: &str, cap: usize) -> Result<Output, String> {
    let g = load_group(spec)?;
    let a = automorphism_group_with_cap(&g, cap).map_err(err)?;
    let c = completeness_of(&a);
    let text = format!(
        "Aut({spec})\nbase order: {}\norder: {}\ninner: {}  outer index: {}\ncenter of Aut: {}\n",
        g.order(),
        a.order(),
        c.inner_order,
        c.outer_index,
        a.group.center().order()
    );
    let r = AutReport {
        spec: spec.to_string(),
        base_order: g.order(),
        completeness: c,
        aut: a.to_file(),
    };
    Ok(output(&r, text))
}

#[derive(Serialize)]
struct TowerOutput {
    spec: String,
    #[serde(flatten)]
    report: TowerReport,
}

fn tower(spec: &str, budget: Budget) -> Result<Output, String> {
    let g = load_group(spec)?;
    let run = run_tower(&g, budget);
    let report = run.report();
    let mut text = format!("tower of {spec}\n");
    for b in &report.blocks {
        text.push_str(&format!("from {}: orders {}\n", b.start, join(&b.stage_orders)));
        text.push_str(&format!("  centers {}\n", join(&b.center_orders)));
        if let (Some(p), Some(c)) = (&b.period, b.colimit_order) {
            let limit = Ordinal::new(b.start.limit_part + 1, 0);
            text.push_str(&format!("  period ({}, {}), stage {limit} has order {c}\n", p.start, p.end));
        }
    }
    match (report.termination, &report.status) {
        (Some(t), _) => text.push_str(&format!("terminates at {t}\n")),
        (None, Some(s)) => text.push_str(&format!(
            "{}{}\n",
            serde_json::to_value(s).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
            report.error.as_deref().map(|e| format!(": {e}")).unwrap_or_default()
        )),
        (None, None) => {}
    }
    Ok(output(
        &TowerOutput {
            spec: spec.to_string(),
            report,
        },
        text,
    ))
}

fn normtower(ambient: &str, sub: &[usize]) -> Result<Output, String> {
    let h = load_group(ambient)?;
    if let Some(&x) = sub.iter().find(|&&x| x >= h.order()) {
        return Err(format!("generator {x} is not an element of a group of order {}", h.order()));
    }
    let start = h.subgroup_generated(sub);
    let t = normalizer_tower(&h, &start).map_err(err)?;
    let r = t.report();
    let text = format!(
        "ambient order: {}\nstage orders: {}\nheight: {}\n",
        r.ambient_order,
        join(&r.stage_orders),
        r.height
    );
    Ok(output(&r, text))
}

#[derive(Serialize)]
struct GraphAutReport {
    vertices: usize,
    edges: usize,
    order: usize,
    rigid: bool,
    orbits: Vec<Vec<usize>>,
    generators: Vec<Vec<usize>>,
}

fn graph_aut(file: &PathBuf) -> Result<Output, String> {
    let text = fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    let g = ColoredGraph::from_json(&text).map_err(|e| format!("{}: {e}", file.display()))?;
    let autos = graph_automorphisms(&g).map_err(err)?;
    let n = g.vertex_count();
    let mut group = PermGroup::trivial(n);
    let mut generators = Vec::new();
    for a in &autos {
        if group.add_generator(Perm::from_images(a)) {
            generators.push(a.clone());
        }
    }
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        if !orbits.iter().any(|o| o.contains(&v)) {
            orbits.push(group.orbit(v));
        }
    }
    let r = GraphAutReport {
        vertices: n,
        edges: g.edges().len(),
        order: autos.len(),
        rigid: autos.len() == 1,
        orbits,
        generators,
    };
    let text = format!(
        "vertices: {}  edges: {}\nautomorphisms: {}\nrigid: {}\norbits: {:?}\n",
        r.vertices, r.edges, r.order, r.rigid, r.orbits
    );
    Ok(output(&r, text))
}

fn boxed_input(args: &BoxArgs, min_classes: usize) -> Result<(BoxTree, IsoAssignment), String> {
    let tree = BoxTree::new(args.depth).map_err(err)?;
    let pattern = ClassPattern::parse(&args.classes).map_err(err)?;
    let assign = IsoAssignment::from_pattern(&tree, pattern, min_classes).map_err(err)?;
    Ok((tree, assign))
}

fn boxed_text(r: &BoxedReport) -> String {
    let mut s = format!(
        "layout: {}\nslots: {}  vertices: {}\nambient order: {}\nW order: {}\n",
        r.layout, r.slot_count, r.vertices, r.ambient_order, r.w_order
    );
    if let (Some(orders), Some(h)) = (&r.stage_orders, r.height) {
        s.push_str(&format!("stage orders: {}\nheight: {h}\n", join(orders)));
    }
    s
}

#[derive(Serialize)]
struct WallOutput {
    #[serde(flatten)]
    report: BoxedReport,
    height_without_wall: usize,
}

fn wall(args: &BoxArgs, wall_class: usize, rows: usize) -> Result<Output, String> {
    let (tree, assign) = boxed_input(args, wall_class + 1)?;
    let wall = Wall {
        rows,
        ..Wall::standard(wall_class)
    };
    let walled = build_wall(&tree, &assign, wall).map_err(err)?;
    let t = boxed_tower(&walled);
    let plain = boxed_tower(&build_boxed(&tree, &assign).map_err(err)?);
    let report = BoxedReport::new(&walled, Some(&t));
    let text = format!("{}height without wall: {}\n", boxed_text(&report), plain.height);
    Ok(output(
        &WallOutput {
            report,
            height_without_wall: plain.height,
        },
        text,
    ))
}
