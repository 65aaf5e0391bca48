//! The `tilepump` command-line interface: argument parsing, file loading,
//! dispatch into the core library, and the text reports.
//!
//! Exit codes follow one contract everywhere: 0 when the queried property
//! holds or the operation succeeds, 1 for a negative verdict (unstable, no
//! repetition, a condition violated, certification miss), 2 for usage or
//! input errors. Diagnostics go to stderr; results go to stdout.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Signed;
use tilepump_core::curves::{
    find_violation_detailed, gen_noninteger_example, validate_curve_system, CurveError,
    ViolationKind, ViolationMode, ViolationWitness,
};
use tilepump_core::pump::{certify_producible_small, find_repetitions, pump, PumpError};
use tilepump_core::lattice::{find_nonconflicting_component, shape_walk};
use tilepump_core::tile::{binding_graph, enumerate_producible, min_cut_weight};
use tilepump_core::{Assembly, RPoint, RVector, Shape, TileSystem, Vector};

use crate::formats::{
    self, build_curve_system, parse_rational, serialize_assembly, serialize_curves,
    serialize_shape, CurveFile, CurveUse, SystemSpec,
};
use crate::svg;

#[derive(Parser)]
#[command(
    name = "tilepump",
    version,
    about = "Two-handed tile assembly at temperature τ: stability, producibility, \
             pumping of repetitious assemblies, and exact curve-translation checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate all producible assemblies of at most --max-size tiles
    Enumerate {
        /// Tile-system file
        #[arg(long)]
        system: PathBuf,
        /// Largest assembly size to close under stable unions
        #[arg(long = "max-size")]
        max_size: usize,
        /// Also write each assembly to this directory
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report whether an assembly is τ-stable, with its binding-graph min cut
    Stable {
        /// Tile-system file
        #[arg(long)]
        system: PathBuf,
        /// Assembly file
        #[arg(long)]
        assembly: PathBuf,
    },
    /// List vectors under which the assembly consistently overlaps itself
    Repetitions {
        /// Assembly file
        #[arg(long)]
        assembly: PathBuf,
    },
    /// Grow a repetitious assembly by whole periods, one per iteration
    Pump {
        /// Tile-system file
        #[arg(long)]
        system: PathBuf,
        /// Assembly file (must be repetitious under --vec)
        #[arg(long)]
        assembly: PathBuf,
        /// Repetition vector as dx,dy
        #[arg(long, allow_hyphen_values = true)]
        vec: String,
        /// Number of pump iterations
        #[arg(long)]
        iters: usize,
        /// Check each iterate of at most this size against exhaustive enumeration
        #[arg(long = "certify-bound")]
        certify_bound: Option<usize>,
        /// Also write each iterate to this directory
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Find the component of (S+2v)\(S+v) that avoids S entirely
    ShapeComponent {
        /// Shape file
        #[arg(long)]
        shape: PathBuf,
        /// Translation vector as dx,dy
        #[arg(long, allow_hyphen_values = true)]
        vec: String,
    },
    /// Trace the anchor-jumping walk that locates that component
    ShapeWalk {
        /// Shape file
        #[arg(long)]
        shape: PathBuf,
        /// Translation vector as dx,dy
        #[arg(long, allow_hyphen_values = true)]
        vec: String,
    },
    /// Exact checks on systems of polygonal chains
    Curves {
        #[command(subcommand)]
        command: CurvesCommand,
    },
    /// Render a shape, assembly, tile-system, or curve file as SVG
    Render {
        /// Input file; format detected from its first line
        #[arg(long = "in")]
        input: PathBuf,
        /// Output SVG path
        #[arg(long)]
        svg: PathBuf,
        /// Tile-system file, for glue-strength ticks on assembly renders
        #[arg(long)]
        system: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CurvesCommand {
    /// Validate the endpoint and the two disjointness conditions
    Check {
        /// Curve file with a system block
        #[arg(long)]
        file: PathBuf,
    },
    /// Exhibit a point where a disjointness condition fails (integer multipliers)
    Violate {
        /// Curve file with a system block
        #[arg(long)]
        file: PathBuf,
        /// Witness search strategy
        #[arg(long, value_enum, default_value_t = ModeArg::Direct)]
        mode: ModeArg,
    },
    /// Emit a chain from (0,0) to (x,0) disjoint from its own unit shift
    Example {
        /// Non-integer rational with |x| > 1, as num/den
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Sawtooth amplitude, a small positive rational
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    /// Scan every chain pair and every chain against its own translate
    Direct,
    /// Splice chains down to one and map the forced intersection back
    Reduce,
}

/// A fatal problem: `message` goes to stderr, `code` becomes the exit code.
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn fault(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

type CmdResult = Result<i32, Failure>;

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I: IntoIterator<Item = String>>(args: I) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    0
                }
                _ => {
                    eprint!("{e}");
                    2
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("{}", f.message);
            f.code
        }
    }
}

fn dispatch(cmd: Command) -> CmdResult {
    match cmd {
        Command::Enumerate {
            system,
            max_size,
            out,
        } => cmd_enumerate(&system, max_size, out.as_deref()),
        Command::Stable { system, assembly } => cmd_stable(&system, &assembly),
        Command::Repetitions { assembly } => cmd_repetitions(&assembly),
        Command::Pump {
            system,
            assembly,
            vec,
            iters,
            certify_bound,
            out,
        } => cmd_pump(&system, &assembly, &vec, iters, certify_bound, out.as_deref()),
        Command::ShapeComponent { shape, vec } => cmd_shape_component(&shape, &vec),
        Command::ShapeWalk { shape, vec } => cmd_shape_walk(&shape, &vec),
        Command::Curves { command } => match command {
            CurvesCommand::Check { file } => cmd_curves_check(&file),
            CurvesCommand::Violate { file, mode } => cmd_curves_violate(&file, mode),
            CurvesCommand::Example { x, eps } => cmd_curves_example(&x, &eps),
        },
        Command::Render { input, svg, system } => cmd_render(&input, &svg, system.as_deref()),
    }
}

// -- file loading -----------------------------------------------------------

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn file_label(path: &Path) -> String {
    path.display().to_string()
}

fn load_system(path: &Path) -> Result<TileSystem, Failure> {
    let text = read_file(path)?;
    formats::parse_tile_system(&file_label(path), &text).map_err(|e| usage(e.to_string()))
}

fn load_assembly(path: &Path) -> Result<Assembly, Failure> {
    let text = read_file(path)?;
    formats::parse_assembly(&file_label(path), &text).map_err(|e| usage(e.to_string()))
}

fn load_shape(path: &Path) -> Result<Shape, Failure> {
    let text = read_file(path)?;
    formats::parse_shape(&file_label(path), &text).map_err(|e| usage(e.to_string()))
}

fn load_curves(path: &Path) -> Result<CurveFile, Failure> {
    let text = read_file(path)?;
    formats::parse_curves(&file_label(path), &text).map_err(|e| usage(e.to_string()))
}

fn parse_vec_flag(s: &str) -> Result<Vector, Failure> {
    let parsed = s
        .split_once(',')
        .and_then(|(dx, dy)| Some(Vector::new(dx.trim().parse().ok()?, dy.trim().parse().ok()?)));
    match parsed {
        Some(v) if !v.is_zero() => Ok(v),
        Some(_) => Err(usage("--vec must be nonzero")),
        None => Err(usage(format!("invalid --vec `{s}`: expected dx,dy"))),
    }
}

fn write_out(path: &Path, content: &str) -> Result<(), Failure> {
    fs::write(path, content).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

// -- tile-model commands ----------------------------------------------------

fn cmd_enumerate(system: &Path, max_size: usize, out: Option<&Path>) -> CmdResult {
    let sys = load_system(system)?;
    let found =
        enumerate_producible(&sys, max_size).map_err(|e| usage(format!("enumerate: {e}")))?;
    if let Some(dir) = out {
        fs::create_dir_all(dir)
            .map_err(|e| usage(format!("cannot create {}: {e}", dir.display())))?;
    }
    for (i, a) in found.iter().enumerate() {
        println!("# assembly {i} ({} tiles)", a.len());
        print!("{}", serialize_assembly(a));
        println!();
        if let Some(dir) = out {
            write_out(&dir.join(format!("assembly_{i:04}.txt")), &serialize_assembly(a))?;
        }
    }
    println!("count {}", found.len());
    Ok(0)
}

fn cmd_stable(system: &Path, assembly: &Path) -> CmdResult {
    let sys = load_system(system)?;
    let a = load_assembly(assembly)?;
    let graph = binding_graph(&a, &sys).map_err(|e| usage(e.to_string()))?;
    let tau = sys.temperature();
    match min_cut_weight(&graph) {
        None => {
            println!("stable: single tile, τ={tau}");
            Ok(0)
        }
        Some(cut) if cut >= u64::from(tau) => {
            println!("stable: min cut {cut} >= τ={tau}");
            Ok(0)
        }
        Some(cut) => {
            println!("unstable: min cut {cut} < τ={tau}");
            Ok(1)
        }
    }
}

fn cmd_repetitions(assembly: &Path) -> CmdResult {
    let a = load_assembly(assembly)?;
    let reps = find_repetitions(&a);
    if reps.is_empty() {
        println!("none");
        return Ok(1);
    }
    for r in &reps {
        println!("v {} overlap {}", r.v, r.overlap.len());
    }
    Ok(0)
}

fn cmd_pump(
    system: &Path,
    assembly: &Path,
    vec: &str,
    iters: usize,
    certify_bound: Option<usize>,
    out: Option<&Path>,
) -> CmdResult {
    let sys = load_system(system)?;
    let a = load_assembly(assembly)?;
    let v = parse_vec_flag(vec)?;
    let trace = match pump(&a, v, iters, &sys) {
        Ok(t) => t,
        Err(e @ (PumpError::NotRepetition(_) | PumpError::NoOverlap)) => {
            println!("not pumpable: {e}");
            return Ok(1);
        }
        Err(PumpError::Tile(e)) => return Err(usage(e.to_string())),
        Err(e) => return Err(fault(e.to_string())),
    };
    println!("start: size {}, v {}", trace.start.len(), trace.v);
    for (i, step) in trace.steps.iter().enumerate() {
        println!(
            "iter {}: size {}, v {}, |C1| {}, stable",
            i + 1,
            step.assembly.len(),
            trace.v,
            step.added.len()
        );
    }
    if let Some(dir) = out {
        fs::create_dir_all(dir)
            .map_err(|e| usage(format!("cannot create {}: {e}", dir.display())))?;
        write_out(&dir.join("iterate_000.txt"), &serialize_assembly(&trace.start))?;
        for (i, step) in trace.steps.iter().enumerate() {
            write_out(
                &dir.join(format!("iterate_{:03}.txt", i + 1)),
                &serialize_assembly(&step.assembly),
            )?;
        }
    }
    let mut code = 0;
    if let Some(bound) = certify_bound {
        let mut iterates = vec![(0usize, &trace.start)];
        iterates.extend(trace.steps.iter().enumerate().map(|(i, s)| (i + 1, &s.assembly)));
        for (i, a) in iterates {
            if a.len() > bound {
                println!("certify iterate {i}: skipped (size {} > bound {bound})", a.len());
                continue;
            }
            match certify_producible_small(a, &sys, bound) {
                Ok(true) => {
                    println!("certify iterate {i}: producible (size {}, bound {bound})", a.len())
                }
                Ok(false) => {
                    println!(
                        "certify iterate {i}: NOT FOUND among producibles up to size {bound}"
                    );
                    code = 1;
                }
                Err(e) => return Err(fault(format!("certify iterate {i}: {e}"))),
            }
        }
    }
    Ok(code)
}

// -- shape commands ---------------------------------------------------------

fn cmd_shape_component(shape: &Path, vec: &str) -> CmdResult {
    let s = load_shape(shape)?;
    let v = parse_vec_flag(vec)?;
    let c = find_nonconflicting_component(&s, v).map_err(|e| fault(e.to_string()))?;
    print!("{}", serialize_shape(&c));
    Ok(0)
}

fn cmd_shape_walk(shape: &Path, vec: &str) -> CmdResult {
    let s = load_shape(shape)?;
    let v = parse_vec_flag(vec)?;
    let trace = shape_walk(&s, v).map_err(|e| fault(e.to_string()))?;
    for (i, step) in trace.steps.iter().enumerate() {
        println!(
            "step {}: anchor {} {}, exit-multiplier {}, component size {}",
            i + 1,
            step.anchor.x,
            step.anchor.y,
            step.exit_multiplier,
            step.component.len()
        );
    }
    println!("final component:");
    print!("{}", serialize_shape(&trace.final_component));
    Ok(0)
}

// -- curve commands ---------------------------------------------------------

fn fmt_rpoint(p: &RPoint) -> String {
    format!(
        "{},{}",
        formats::format_rational(&p.x),
        formats::format_rational(&p.y)
    )
}

fn witness_line(w: &ViolationWitness) -> String {
    match w.kind {
        ViolationKind::SelfTranslation => format!(
            "self-translation chain {} shift {} at {}",
            w.chain_i,
            w.shift,
            fmt_rpoint(&w.point)
        ),
        ViolationKind::Pairwise => format!(
            "pairwise chain {} vs chain {} at {}",
            w.chain_i,
            w.chain_j,
            fmt_rpoint(&w.point)
        ),
        ViolationKind::Endpoint => format!(
            "endpoint chain {}: actual {}",
            w.chain_i,
            fmt_rpoint(&w.point)
        ),
    }
}

fn cmd_curves_check(file: &Path) -> CmdResult {
    let f = load_curves(file)?;
    let sys = build_curve_system(&f).map_err(usage)?;
    let report = validate_curve_system(&sys);
    let sections: [(&str, &[ViolationWitness]); 3] = [
        ("condition 1 (endpoints)", &report.endpoint_failures),
        ("condition 2 (self-translation)", &report.self_overlap_failures),
        ("condition 3 (pairwise)", &report.pairwise_failures),
    ];
    for (title, failures) in sections {
        if failures.is_empty() {
            println!("{title}: ok");
        } else {
            println!("{title}: {} failure(s)", failures.len());
            for w in failures {
                println!("  {}", witness_line(w));
            }
        }
    }
    Ok(if report.all_hold() { 0 } else { 1 })
}

fn cmd_curves_violate(file: &Path, mode: ModeArg) -> CmdResult {
    let f = load_curves(file)?;
    let sys = build_curve_system(&f).map_err(usage)?;
    let core_mode = match mode {
        ModeArg::Direct => ViolationMode::Direct,
        ModeArg::Reduce => ViolationMode::Reduce,
    };
    match find_violation_detailed(&sys, core_mode) {
        Ok((w, stats)) => {
            println!("violation: {}", witness_line(&w));
            if mode == ModeArg::Reduce {
                println!(
                    "reductions {}, fallback {}",
                    stats.reductions,
                    if stats.used_fallback { "yes" } else { "no" }
                );
            }
            Ok(0)
        }
        Err(CurveError::Precondition(m)) => {
            println!("not applicable: {m}");
            Ok(1)
        }
        Err(e) => Err(fault(e.to_string())),
    }
}

fn cmd_curves_example(x: &str, eps: &str) -> CmdResult {
    let x = parse_rational(x)
        .ok_or_else(|| usage(format!("invalid --x `{x}`: expected num/den or an integer")))?;
    let eps = parse_rational(eps)
        .ok_or_else(|| usage(format!("invalid --eps `{eps}`: expected num/den or an integer")))?;
    let chain = gen_noninteger_example(&x, &eps).map_err(|e| usage(e.to_string()))?;
    let base = chain.start().clone();
    let file = CurveFile {
        curves: vec![("phi".to_string(), chain)],
        system: Some(SystemSpec {
            uses: vec![CurveUse {
                name: "phi".to_string(),
                base,
                mult: x.abs(),
            }],
            v: RVector::from_ints(if x.is_negative() { -1 } else { 1 }, 0),
        }),
    };
    print!("{}", serialize_curves(&file));
    Ok(0)
}

// -- rendering --------------------------------------------------------------

fn cmd_render(input: &Path, svg_path: &Path, system: Option<&Path>) -> CmdResult {
    let text = read_file(input)?;
    let label = file_label(input);
    let first_keyword = text
        .lines()
        .filter_map(|raw| {
            let stripped = raw.split('#').next().unwrap_or("").trim();
            stripped.split_whitespace().next()
        })
        .next();
    let rendered = match first_keyword {
        Some("cell") => {
            let s = formats::parse_shape(&label, &text).map_err(|e| usage(e.to_string()))?;
            svg::render_shape(&s)
        }
        Some("place") => {
            let a = formats::parse_assembly(&label, &text).map_err(|e| usage(e.to_string()))?;
            let sys = system.map(load_system).transpose()?;
            svg::render_assembly(&a, sys.as_ref())
        }
        Some("temperature" | "glue" | "strength" | "tile") => {
            let sys =
                formats::parse_tile_system(&label, &text).map_err(|e| usage(e.to_string()))?;
            svg::render_tile_gallery(&sys)
        }
        Some("curve" | "system") => {
            let f = formats::parse_curves(&label, &text).map_err(|e| usage(e.to_string()))?;
            svg::render_curves(&f)
        }
        _ => {
            return Err(usage(format!(
                "{label}: unrecognized input format (expected a shape, assembly, tile-system, or curve file)"
            )))
        }
    };
    write_out(svg_path, &rendered)?;
    println!("wrote {}", svg_path.display());
    Ok(0)
}
