//! `hexglue`: enumerate and classify convex gluings of regular hexagons.
//!
//! Exit codes: 0 success, 1 no such object (e.g. a polygon with no grid
//! placement), 2 bad input or I/O failure, 3 table mismatch, 4 some entry
//! could not be realized.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use hexglue::catalog::{
    check_row, classify_with_realization, expected_types, format_types, tabulate, CatalogEntry, ClassifyOptions,
};
use hexglue::enumerate::{enumerate_stage, BatchItem, GluingBatch, Stage};
use hexglue::flat::{default_geodesic_bound, find_seam, polygon_on_grid, polygon_to_gluing};
use hexglue::geometry::{triangulate, GeodesicSegment};
use hexglue::io::{batch_to_jsonl, gluing_to_json, gluings_from_jsonl, PolygonInput};
use hexglue::realize::{RealizeOptions, Realization};
use hexglue::skeleton::{ApexVariant, ShapeType};
use hexglue::svg::net_svg;
use hexglue::HexComplex;

#[derive(Parser)]
#[command(name = "hexglue", version, about = "Convex surfaces glued from regular hexagons")]
struct Cli {
    /// Worker threads (default: all cores). Never changes the output.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct RealizeFlags {
    /// Refinement of each unit triangle in exported meshes.
    #[arg(long, default_value_t = 3)]
    subdiv: usize,
    /// Solver tolerance on edge lengths.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Largest residual and convexity violation of an accepted realization.
    #[arg(long, default_value_t = 1e-6)]
    accept_tol: f64,
    #[arg(long, default_value_t = 32)]
    restarts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Longest geodesic searched, in unit lengths (default 3n).
    #[arg(long)]
    geodesic_bound: Option<i64>,
    /// Coplanarity tolerance for merging hull facets, in radians.
    #[arg(long, default_value_t = 1e-4)]
    merge_tol: f64,
}

impl RealizeFlags {
    fn options(&self) -> ClassifyOptions {
        ClassifyOptions {
            realize: RealizeOptions {
                subdivision: self.subdiv.max(1),
                tolerance: self.tol,
                acceptance: self.accept_tol,
                restarts: self.restarts,
                seed: self.seed,
                geodesic_bound: self.geodesic_bound.map(|l| l * l),
                ..RealizeOptions::default()
            },
            merge_tolerance: self.merge_tol,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate gluings of n hexagons and print their number.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// trees, zipped or full
        #[arg(long, default_value = "full")]
        stage: Stage,
        /// Write the batch as JSON Lines.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Reproduce the table of gluing counts and shape types.
    Table {
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        /// Do not compare against the built-in reference values.
        #[arg(long)]
        no_check: bool,
        /// Write every catalog entry as JSON Lines.
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[command(flatten)]
        flags: RealizeFlags,
    },
    /// Classify gluings read from a JSON Lines file.
    Classify {
        #[arg(long, short)]
        input: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[command(flatten)]
        flags: RealizeFlags,
    },
    /// Place a polygon on the grid and build its doubly covered gluing.
    Polygon {
        /// Angles in units of π/3, counterclockwise, e.g. 1,2,2,1.
        #[arg(long, value_delimiter = ',')]
        angles: Vec<u8>,
        /// Squared side lengths; side i ends at vertex i.
        #[arg(long, value_delimiter = ',')]
        sides: Vec<i64>,
        /// JSON file with "angles" and "squared_sides" instead of flags.
        #[arg(long, short)]
        input: Option<PathBuf>,
        /// Print the grid placement instead of the gluing.
        #[arg(long)]
        check_grid: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Realize non-flat gluings as convex polyhedra.
    Realize {
        #[arg(long, short)]
        input: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Mesh files are written as PREFIX<i>.obj.
        #[arg(long)]
        obj: Option<PathBuf>,
        /// Nets are written as PREFIX<i>.svg.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[command(flatten)]
        flags: RealizeFlags,
    },
    /// Draw nets with crease lines.
    Net {
        #[arg(long, short)]
        input: PathBuf,
        /// Output file; with several gluings, PREFIX<i>.svg.
        #[arg(long)]
        svg: PathBuf,
        #[command(flatten)]
        flags: RealizeFlags,
    },
}

enum Failure {
    Absent(String),
    Input(anyhow::Error),
    Mismatch(Vec<String>),
    Unresolved(Vec<String>),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match cli.command {
        Command::Enumerate { n, stage, output } => cmd_enumerate(n, stage, output.as_deref()),
        Command::Table { max_n, no_check, catalog, flags } => cmd_table(max_n, !no_check, catalog.as_deref(), &flags),
        Command::Classify { input, output, flags } => cmd_classify(&input, output.as_deref(), &flags),
        Command::Polygon { angles, sides, input, check_grid, output } => {
            cmd_polygon(angles, sides, input.as_deref(), check_grid, output.as_deref())
        }
        Command::Realize { input, output, obj, svg, flags } => {
            cmd_realize(&input, output.as_deref(), obj.as_deref(), svg.as_deref(), &flags)
        }
        Command::Net { input, svg, flags } => cmd_net(&input, &svg, &flags),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Absent(msg)) => {
            println!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Mismatch(lines)) => {
            for l in lines {
                eprintln!("mismatch: {l}");
            }
            ExitCode::from(3)
        }
        Err(Failure::Unresolved(lines)) => {
            for l in lines {
                eprintln!("unresolved: {l}");
            }
            ExitCode::from(4)
        }
    }
}

fn write_output(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes()).context("writing to stdout")?;
            Ok(())
        }
    }
}

fn read_gluings(path: &Path) -> anyhow::Result<Vec<HexComplex>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    gluings_from_jsonl(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Enumerates a batch, going through `HEXGLUE_CACHE_DIR` when it is set.
fn load_batch(n: usize, stage: Stage) -> anyhow::Result<GluingBatch> {
    let Some(dir) = std::env::var_os("HEXGLUE_CACHE_DIR") else {
        return Ok(enumerate_stage(n, stage));
    };
    let path = PathBuf::from(dir).join(format!("n{n}-{stage}.jsonl"));
    if let Ok(text) = fs::read_to_string(&path) {
        if let Ok(complexes) = gluings_from_jsonl(&text) {
            let mut items: Vec<BatchItem> = complexes
                .into_iter()
                .map(|c| BatchItem { code: c.canonical_code(), complex: c })
                .collect();
            items.sort_by(|a, b| a.code.cmp(&b.code));
            return Ok(GluingBatch { n, stage, items });
        }
    }
    let batch = enumerate_stage(n, stage);
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    }
    fs::write(&path, batch_to_jsonl(&batch)).with_context(|| format!("writing {}", path.display()))?;
    Ok(batch)
}

fn cmd_enumerate(n: usize, stage: Stage, output: Option<&Path>) -> CmdResult {
    if n == 0 {
        return Err(anyhow!("need at least one hexagon").into());
    }
    let batch = load_batch(n, stage)?;
    if let Some(p) = output {
        write_output(Some(p), &batch_to_jsonl(&batch))?;
    }
    println!("{}", batch.len());
    Ok(())
}

fn entry_line(e: &CatalogEntry) -> String {
    serde_json::to_string(e).expect("catalog entries serialize")
}

/// Flags outcomes that would bear on the open questions.
fn report_notable(e: &CatalogEntry) {
    if let ShapeType::Open(k) = e.shape {
        eprintln!("NOTE: n = {} gluing {} realizes the open graph open{k}", e.n, e.canonical_code);
    }
    if e.realization.as_ref().and_then(|r| r.apex) == Some(ApexVariant::Base) {
        eprintln!("NOTE: n = {} gluing {} is a square pyramid with curvature 2π/3 at the apex", e.n, e.canonical_code);
    }
}

fn cmd_table(max_n: usize, check: bool, catalog: Option<&Path>, flags: &RealizeFlags) -> CmdResult {
    if max_n == 0 {
        return Err(anyhow!("--max-n must be at least 1").into());
    }
    let opts = flags.options();
    let mut lines = String::new();
    let mut mismatches = Vec::new();
    println!("{:>3}  {:>8}  {:>8}  types of non-flat shapes", "n", "gluings", "non-flat");
    for n in 1..=max_n {
        let batch = load_batch(n, Stage::Full)?;
        let entries: Vec<CatalogEntry> =
            batch.items.par_iter().map(|i| classify_with_realization(&i.complex, &opts).0).collect();
        for e in &entries {
            lines.push_str(&entry_line(e));
            lines.push('\n');
            report_notable(e);
        }
        let row = tabulate(n, &entries);
        println!("{:>3}  {:>8}  {:>8}  {}", n, row.gluings, row.non_flat, format_types(&row.types));
        if check {
            for m in check_row(&row) {
                if m.is_count() {
                    mismatches.push(m.to_string());
                } else {
                    let want = expected_types(n).map(|t| format_types(&t)).unwrap_or_default();
                    eprintln!("note: {m} (reference types: {want})");
                }
            }
        }
    }
    if let Some(p) = catalog {
        write_output(Some(p), &lines)?;
    }
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(Failure::Mismatch(mismatches))
    }
}

fn cmd_classify(input: &Path, output: Option<&Path>, flags: &RealizeFlags) -> CmdResult {
    let complexes = read_gluings(input)?;
    let opts = flags.options();
    let entries: Vec<CatalogEntry> = complexes.par_iter().map(|c| classify_with_realization(c, &opts).0).collect();
    let mut text = String::new();
    for e in &entries {
        report_notable(e);
        text.push_str(&entry_line(e));
        text.push('\n');
    }
    write_output(output, &text)?;
    Ok(())
}

fn cmd_polygon(
    angles: Vec<u8>,
    sides: Vec<i64>,
    input: Option<&Path>,
    check_grid: bool,
    output: Option<&Path>,
) -> CmdResult {
    let (angles, sides) = match input {
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            let input: PolygonInput = serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))?;
            (input.angles, input.squared_sides)
        }
        None => (angles, sides),
    };
    let placed = polygon_on_grid(&angles, &sides).map_err(|e| Failure::Input(e.into()))?;
    let Some(polygon) = placed else {
        return Err(Failure::Absent("none".into()));
    };
    let text = if check_grid {
        let value = serde_json::json!({
            "vertices": polygon.vertices.iter().map(|v| [v.a, v.b]).collect::<Vec<_>>(),
            "angles": polygon.angles,
            "hexagons": polygon.hexagons(),
        });
        value.to_string()
    } else {
        let c = polygon_to_gluing(&polygon).map_err(|e| Failure::Input(e.into()))?;
        gluing_to_json(&c)
    };
    write_output(output, &format!("{text}\n"))?;
    Ok(())
}

/// Crease lines: the seam of a flat gluing, or the skeleton edges of a
/// realized one.
fn creases(c: &HexComplex, entry: &CatalogEntry, realization: Option<&Realization>, opts: &ClassifyOptions) -> Vec<GeodesicSegment> {
    if entry.flat {
        let bound = opts.realize.geodesic_bound.unwrap_or_else(|| default_geodesic_bound(c.hexagon_count()));
        return find_seam(&triangulate(c), bound).map(|s| s.sides).unwrap_or_default();
    }
    match (realization, &entry.realization) {
        (Some(r), Some(summary)) => r
            .triangulation
            .edges
            .iter()
            .zip(&r.triangulation.pairs)
            .filter(|(_, &(a, b))| summary.skeleton.edges.contains(&(a.min(b), a.max(b))))
            .map(|(g, _)| g.clone())
            .collect(),
        _ => Vec::new(),
    }
}

fn indexed(prefix: &Path, i: usize, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(format!("{i}.{ext}"));
    PathBuf::from(s)
}

fn cmd_realize(
    input: &Path,
    output: Option<&Path>,
    obj: Option<&Path>,
    svg: Option<&Path>,
    flags: &RealizeFlags,
) -> CmdResult {
    let complexes = read_gluings(input)?;
    let opts = flags.options();
    let results: Vec<(CatalogEntry, Option<Realization>)> =
        complexes.par_iter().map(|c| classify_with_realization(c, &opts)).collect();
    let mut text = String::new();
    let mut unresolved = Vec::new();
    for (i, (entry, r)) in results.iter().enumerate() {
        if entry.flat {
            eprintln!("entry {i}: flat, skipped");
            continue;
        }
        report_notable(entry);
        text.push_str(&entry_line(entry));
        text.push('\n');
        if entry.shape == ShapeType::Unresolved {
            unresolved.push(format!("entry {i} ({}): {}", entry.canonical_code, entry.note.clone().unwrap_or_default()));
        }
        if let (Some(prefix), Some(r)) = (obj, r) {
            let p = indexed(prefix, i, "obj");
            fs::write(&p, r.to_obj()).with_context(|| format!("writing {}", p.display()))?;
        }
        if let Some(prefix) = svg {
            let p = indexed(prefix, i, "svg");
            let image = net_svg(&complexes[i], &creases(&complexes[i], entry, r.as_ref(), &opts));
            fs::write(&p, image).with_context(|| format!("writing {}", p.display()))?;
        }
    }
    write_output(output, &text)?;
    if unresolved.is_empty() {
        Ok(())
    } else {
        Err(Failure::Unresolved(unresolved))
    }
}

fn cmd_net(input: &Path, svg: &Path, flags: &RealizeFlags) -> CmdResult {
    let complexes = read_gluings(input)?;
    let opts = flags.options();
    let images: Vec<String> = complexes
        .par_iter()
        .map(|c| {
            let (entry, r) = classify_with_realization(c, &opts);
            net_svg(c, &creases(c, &entry, r.as_ref(), &opts))
        })
        .collect();
    if images.len() == 1 {
        write_output(Some(svg), &images[0])?;
    } else {
        for (i, image) in images.iter().enumerate() {
            let p = indexed(svg, i, "svg");
            fs::write(&p, image).with_context(|| format!("writing {}", p.display()))?;
        }
    }
    Ok(())
}
