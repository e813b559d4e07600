//! Command-line driver: validates front files, dumps differentials,
//! enumerates augmentations, and computes fiber homology, monodromy, and
//! obstruction reports.
//!
//! Exit codes: 0 success (and "exists" queries that succeed), 1 validation
//! failure, 2 no augmentation, 3 usage error, 4 cap exceeded. All output is
//! byte-deterministic for fixed inputs and flags.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cellular_dga::builders::{self, graph};
use cellular_dga::dga::{Dga, Poly};
use cellular_dga::front::{self, Front};
use cellular_dga::gf2::BitMatrix;
use cellular_dga::monodromy::{self, LoopFile};
use cellular_dga::search::SearchProblem;

/// Largest augmentation list the index-based verbs will enumerate.
const INDEX_CAP: usize = 4096;

#[derive(Parser)]
#[command(name = "cdga", version, about = "Cellular differential algebras of front complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a front file against the format and the geometric rules.
    Validate { file: PathBuf },
    /// Build the differential algebra; optionally print every differential.
    Dga {
        file: PathBuf,
        /// Print one line per generator: "d name = word + word + ...".
        #[arg(long)]
        print: bool,
    },
    /// Query the augmentations of a front.
    Augs {
        file: PathBuf,
        /// Grading divisor: generators must have degree 0 mod rho.
        #[arg(long)]
        rho: u32,
        /// Report only whether an augmentation exists.
        #[arg(long)]
        exists: bool,
        /// Print the number of augmentations.
        #[arg(long)]
        count: bool,
        /// Print every augmentation with its index.
        #[arg(long)]
        list: bool,
        /// Enumerate by exhaustive evaluation instead of the staged search.
        #[arg(long)]
        brute_force: bool,
        /// Refuse to list more than this many augmentations.
        #[arg(long, default_value_t = INDEX_CAP)]
        cap: usize,
    },
    /// Fiber homology of one augmentation at one 0-cell.
    Homology {
        file: PathBuf,
        #[arg(long)]
        rho: u32,
        /// Index into the canonical augmentation list.
        #[arg(long)]
        aug: usize,
        /// 0-cell id.
        #[arg(long)]
        vertex: String,
    },
    /// Continuation and homology monodromy of every loop in a loop file.
    Monodromy {
        file: PathBuf,
        #[arg(long)]
        rho: u32,
        /// Index into the canonical augmentation list.
        #[arg(long)]
        aug: usize,
        #[arg(long = "loop")]
        loop_file: PathBuf,
    },
    /// Generating-family obstruction report over all augmentations.
    Obstruct {
        file: PathBuf,
        #[arg(long)]
        rho: u32,
        #[arg(long)]
        loops: PathBuf,
        /// Emit the report as JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Write a built-in front complex (and optionally its loop file).
    Gen {
        #[command(subcommand)]
        what: GenWhat,
    },
}

#[derive(Subcommand)]
enum GenWhat {
    /// Legendrian surface of a trivalent graph ("trigraph/1" file).
    Tz {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Conormal torus of the unknot.
    Conormal {
        #[command(flatten)]
        out: OutArgs,
    },
    /// Maslov-zero torus over the square with one crossing arc.
    Torus {
        #[command(flatten)]
        out: OutArgs,
    },
    /// Flying-saucer sphere.
    Saucer {
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args)]
struct OutArgs {
    #[arg(short, long)]
    output: PathBuf,
    /// Also write the canonical loop file for the complex.
    #[arg(long)]
    loops_out: Option<PathBuf>,
}

enum Failure {
    Invalid(String),
    NoAugmentation,
    Usage(String),
    Cap(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::NoAugmentation => 2,
            Failure::Usage(_) => 3,
            Failure::Cap(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Usage(m) | Failure::Cap(m) => m,
            Failure::NoAugmentation => "no augmentation",
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn load_front(path: &Path) -> Result<Front, Failure> {
    let front = front::load(&read(path)?).map_err(|e| Failure::Invalid(e.to_string()))?;
    let violations = front::validate(&front);
    if violations.is_empty() {
        Ok(front)
    } else {
        Err(Failure::Invalid(violations.join("\n")))
    }
}

fn load_dga(path: &Path) -> Result<Dga, Failure> {
    Dga::new(load_front(path)?).map_err(Failure::Invalid)
}

fn load_loops(path: &Path, front: &Front) -> Result<LoopFile, Failure> {
    let value: serde_json::Value =
        serde_json::from_str(&read(path)?).map_err(|e| Failure::Invalid(e.to_string()))?;
    monodromy::loops_from_value(front, &value).map_err(Failure::Invalid)
}

/// The augmentation at one index of the canonical enumeration.
fn augmentation_at(dga: &Dga, rho: u32, index: usize) -> Result<Vec<bool>, Failure> {
    let list = SearchProblem::new(dga, rho)
        .list(INDEX_CAP)
        .map_err(|e| Failure::Cap(format!("too many augmentations to index: {e}")))?;
    if list.is_empty() {
        return Err(Failure::NoAugmentation);
    }
    list.get(index).cloned().ok_or_else(|| {
        Failure::Usage(format!("augmentation index {index} out of range ({} found)", list.len()))
    })
}

fn poly_string(dga: &Dga, p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let words: Vec<String> = p
        .terms()
        .map(|w| {
            if w.is_empty() {
                "1".into()
            } else {
                w.iter().map(|&g| dga.gen_name(g)).collect::<Vec<_>>().join(" ")
            }
        })
        .collect();
    words.join(" + ")
}

/// Sparse rendering of an augmentation: the generators sent to 1.
fn aug_label(dga: &Dga, eps: &[bool]) -> String {
    let ones: Vec<String> =
        (0..dga.num_gens()).filter(|&g| eps[g]).map(|g| dga.gen_name(g as u32)).collect();
    if ones.is_empty() {
        "-".into()
    } else {
        ones.join(" ")
    }
}

fn matrix_label(m: &BitMatrix) -> String {
    if m.rows() == 0 {
        "[]".into()
    } else {
        format!("[{}]", m.row_strings().join("|"))
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Validate { file } => {
            load_front(&file)?;
            println!("ok");
            Ok(0)
        }
        Command::Dga { file, print } => {
            let dga = load_dga(&file)?;
            let count = |d: u8| dga.gens().filter(|(_, info)| info.dim == d).count();
            println!(
                "generators: {} (a: {}, b: {}, c: {})",
                dga.num_gens(),
                count(0),
                count(1),
                count(2)
            );
            if print {
                for (g, _) in dga.gens() {
                    println!("d {} = {}", dga.gen_name(g), poly_string(&dga, dga.differential(g)));
                }
            }
            Ok(0)
        }
        Command::Augs { file, rho, exists, count, list, brute_force, cap } => {
            if usize::from(exists) + usize::from(count) + usize::from(list) != 1 {
                return Err(Failure::Usage(
                    "pass exactly one of --exists, --count, --list".into(),
                ));
            }
            let dga = load_dga(&file)?;
            let prob = SearchProblem::new(&dga, rho);
            let brute = || prob.brute_force().map_err(|e| Failure::Cap(e.to_string()));
            if exists {
                let found =
                    if brute_force { !brute()?.is_empty() } else { prob.exists() };
                println!("{}", if found { "yes" } else { "no" });
                return Ok(if found { 0 } else { 2 });
            }
            if count {
                if brute_force {
                    println!("{}", brute()?.len());
                } else {
                    println!("{}", prob.count());
                }
                return Ok(0);
            }
            let sols = if brute_force {
                let sols = brute()?;
                if sols.len() > cap {
                    return Err(Failure::Cap(format!(
                        "{} augmentations exceed the cap of {cap}",
                        sols.len()
                    )));
                }
                sols
            } else {
                prob.list(cap).map_err(|e| Failure::Cap(e.to_string()))?
            };
            for (i, eps) in sols.iter().enumerate() {
                println!("{i}: {}", aug_label(&dga, eps));
            }
            Ok(0)
        }
        Command::Homology { file, rho, aug, vertex } => {
            let dga = load_dga(&file)?;
            let v = dga
                .front
                .vertex_index(&vertex)
                .ok_or_else(|| Failure::Usage(format!("no 0-cell named {vertex:?}")))?;
            let eps = augmentation_at(&dga, rho, aug)?;
            let (dims, total) = monodromy::fiber_homology(&dga, &eps, v);
            println!("vertex: {vertex}");
            for (degree, dim) in dims.iter().filter(|(_, &dim)| dim > 0) {
                println!("degree {degree}: {dim}");
            }
            println!("total: {total}");
            Ok(0)
        }
        Command::Monodromy { file, rho, aug, loop_file } => {
            let dga = load_dga(&file)?;
            let loops = load_loops(&loop_file, &dga.front)?;
            let eps = augmentation_at(&dga, rho, aug)?;
            let mut any_invalid = false;
            for word in &loops.loops {
                match monodromy::continuation(&dga, &eps, &loops.basepoint, word) {
                    Ok(phi) => {
                        let (_, d) = monodromy::fiber_complex(&dga, &eps, loops.basepoint.vertex);
                        let h = monodromy::induced_on_homology(&phi, &d);
                        let trivial = h == BitMatrix::identity(h.rows());
                        println!(
                            "{}: fiber={} homology={} trivial={}",
                            word.name,
                            matrix_label(&phi),
                            matrix_label(&h),
                            if trivial { "yes" } else { "no" }
                        );
                    }
                    Err(e) => {
                        println!("{}: invalid ({e})", word.name);
                        any_invalid = true;
                    }
                }
            }
            Ok(if any_invalid { 1 } else { 0 })
        }
        Command::Obstruct { file, rho, loops, json } => {
            let dga = load_dga(&file)?;
            let loop_file = load_loops(&loops, &dga.front)?;
            let report =
                monodromy::obstruction_report(&dga, rho, &loop_file).map_err(Failure::Cap)?;
            if json {
                let text = serde_json::to_string_pretty(&monodromy::report_to_value(&report))
                    .expect("report serialization cannot fail");
                println!("{text}");
                return Ok(0);
            }
            println!("basepoint: {} (rho {})", report.basepoint, report.rho);
            println!("augmentations: {}", report.augmentation_count);
            println!(
                "obstructs linear at infinity: {}",
                if report.obstructs_linear_at_infinity { "yes" } else { "no" }
            );
            println!(
                "obstructs trivial bundle: {}",
                if report.obstructs_trivial_bundle { "yes" } else { "no" }
            );
            if report.loop_names.is_empty() {
                println!("loops: none");
            } else {
                println!("loops: {}", report.loop_names.join(" "));
            }
            for row in &report.rows {
                let dims: Vec<String> = row
                    .fiber_dims
                    .iter()
                    .filter(|(_, &n)| n > 0)
                    .map(|(deg, n)| format!("{deg}:{n}"))
                    .collect();
                let verdicts: Vec<String> = report
                    .loop_names
                    .iter()
                    .zip(&row.loop_trivial)
                    .map(|(name, t)| {
                        let v = match t {
                            Some(true) => "trivial",
                            Some(false) => "nontrivial",
                            None => "invalid",
                        };
                        format!("{name}={v}")
                    })
                    .collect();
                let mut line = format!(
                    "aug {}: fiber total {} ({})",
                    row.index,
                    row.fiber_total,
                    dims.join(" ")
                );
                if !verdicts.is_empty() {
                    line.push_str(&format!("; {}", verdicts.join(" ")));
                }
                println!("{line}");
            }
            println!("note: {}", report.coverage_note);
            Ok(0)
        }
        Command::Gen { what } => {
            let (front, loops, out) = match what {
                GenWhat::Tz { graph: gpath, out } => {
                    let g = graph::graph_from_json(&read(&gpath)?)
                        .map_err(Failure::Invalid)?;
                    let front = builders::tz_complex(&g).map_err(Failure::Invalid)?;
                    let loops = builders::tz_loops(&front);
                    (front, loops, out)
                }
                GenWhat::Conormal { out } => {
                    let front = builders::conormal_unknot();
                    let loops = builders::conormal_loops(&front);
                    (front, loops, out)
                }
                GenWhat::Torus { out } => {
                    let front = builders::torus_curve();
                    let loops = builders::torus_loops(&front);
                    (front, loops, out)
                }
                GenWhat::Saucer { out } => {
                    let front = builders::flying_saucer();
                    let loops = builders::saucer_loops(&front);
                    (front, loops, out)
                }
            };
            write(&out.output, &front::save(&front))?;
            if let Some(path) = &out.loops_out {
                let mut text =
                    serde_json::to_string_pretty(&monodromy::loops_to_value(&front, &loops))
                        .expect("loop serialization cannot fail");
                text.push('\n');
                write(path, &text)?;
            }
            Ok(0)
        }
    }
}
