//! Command-line interface: `decide`, `rigid`, `construct`, `verify`,
//! and `roots` over JSON instance files.
//!
//! On success exactly one JSON document is printed to stdout; on failure
//! nothing is printed to stdout and the process exit code distinguishes
//! invalid input (1), internal errors (2), and exceeded resource caps (3).

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

use clap::{Parser, Subcommand, ValueEnum};

use crate::api;
use crate::decide::{is_rigid, Caps};
use crate::error::{Error, Result};
use crate::io::{decision_json, parse_instance, parse_solution, to_canonical_string, ModeHint};
use crate::rep::{construct_rigid, verify_solution, TieBreak};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeFlag {
    Auto,
    General,
    Nilpotent,
    Generic,
}

impl From<ModeFlag> for ModeHint {
    fn from(m: ModeFlag) -> Self {
        match m {
            ModeFlag::Auto => ModeHint::Auto,
            ModeFlag::General => ModeHint::General,
            ModeFlag::Nilpotent => ModeHint::Nilpotent,
            ModeFlag::Generic => ModeHint::Generic,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "adsp",
    version,
    about = "Additive Deligne-Simpson problem: decide, construct, and verify \
             irreducible zero-sum solutions with prescribed conjugacy classes"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether an irreducible solution exists, with a certificate
    Decide {
        /// Instance files (JSON); several files produce a JSON array
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Decision routine; `auto` picks per instance (a `mode` field in
        /// the instance file is honored unless this flag overrides it)
        #[arg(long, value_enum, default_value_t = ModeFlag::Auto)]
        mode: ModeFlag,
        /// Cap on lattice points enumerated by the decision procedure
        #[arg(long)]
        box_cap: Option<u64>,
        /// Cap on states explored by the genericity check
        #[arg(long)]
        generic_cap: Option<u64>,
        /// Worker threads when deciding several files
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Report whether the instance has exactly one irreducible solution
    Rigid {
        file: PathBuf,
        /// Cap on lattice points enumerated by the decision procedure
        #[arg(long)]
        box_cap: Option<u64>,
    },
    /// Construct the unique irreducible solution of a rigid instance
    Construct {
        file: PathBuf,
        /// Also write the solution to this path
        #[arg(long)]
        out: Option<PathBuf>,
        /// Cap on lattice points enumerated by the decision procedure
        #[arg(long)]
        box_cap: Option<u64>,
    },
    /// Check a candidate solution: class membership, zero sum, irreducibility
    Verify { file: PathBuf, solution: PathBuf },
    /// Introspect the instance: dimension vector, weight, root data
    Roots {
        file: PathBuf,
        /// Cap on lattice points enumerated by the root search
        #[arg(long)]
        box_cap: Option<u64>,
    },
}

fn caps_with(box_cap: Option<u64>, generic_cap: Option<u64>) -> Caps {
    let mut caps = Caps::default();
    if let Some(b) = box_cap {
        caps.box_cap = b;
    }
    if let Some(g) = generic_cap {
        caps.generic_states = g;
    }
    caps
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<(crate::class::ClassTuple, Option<ModeHint>)> {
    let text = read_file(path)?;
    parse_instance(&text).map_err(|e| e.in_context(path.display()))
}

/// The flag wins when it says anything other than `auto`; otherwise a
/// `mode` hint stored in the instance file applies.
fn effective_mode(flag: ModeFlag, hint: Option<ModeHint>) -> ModeHint {
    match flag {
        ModeFlag::Auto => hint.unwrap_or(ModeHint::Auto),
        other => other.into(),
    }
}

fn decide_one(path: &Path, flag: ModeFlag, caps: &Caps) -> Result<String> {
    let (tuple, hint) = load_instance(path)?;
    let mode = effective_mode(flag, hint);
    let (inst, decision) =
        api::decide_tuple(&tuple, mode, caps).map_err(|e| e.in_context(path.display()))?;
    let doc = decision_json(&inst.quiver, &inst.alpha, &inst.lambda, &decision);
    Ok(to_canonical_string(&doc))
}

fn decide_files(files: &[PathBuf], flag: ModeFlag, caps: &Caps, jobs: usize) -> Result<String> {
    let jobs = jobs.max(1).min(files.len());
    let mut results: Vec<Option<Result<String>>> = Vec::new();
    results.resize_with(files.len(), || None);
    if jobs <= 1 {
        for (slot, file) in results.iter_mut().zip(files) {
            *slot = Some(decide_one(file, flag, caps));
        }
    } else {
        let next = AtomicUsize::new(0);
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..jobs)
                .map(|_| {
                    scope.spawn(|| {
                        let mut done = Vec::new();
                        loop {
                            let idx = next.fetch_add(1, Ordering::Relaxed);
                            if idx >= files.len() {
                                break;
                            }
                            done.push((idx, decide_one(&files[idx], flag, caps)));
                        }
                        done
                    })
                })
                .collect();
            for handle in handles {
                for (idx, r) in handle.join().expect("decide worker panicked") {
                    results[idx] = Some(r);
                }
            }
        });
    }
    // deterministic: the first failing file (in argument order) decides the
    // exit, and nothing is printed in that case
    let mut docs = Vec::with_capacity(files.len());
    for slot in results {
        docs.push(slot.expect("every file was decided")?);
    }
    Ok(if docs.len() == 1 {
        docs.into_iter().next().expect("one document")
    } else {
        format!("[{}]", docs.join(","))
    })
}

fn dispatch(cli: Cli) -> Result<String> {
    match cli.cmd {
        Cmd::Decide {
            files,
            mode,
            box_cap,
            generic_cap,
            jobs,
        } => {
            let caps = caps_with(box_cap, generic_cap);
            decide_files(&files, mode, &caps, jobs)
        }
        Cmd::Rigid { file, box_cap } => {
            let caps = caps_with(box_cap, None);
            let (tuple, _) = load_instance(&file)?;
            let inst = api::instance_of(&tuple)?;
            let rigid = is_rigid(&inst.quiver, &inst.alpha, &inst.lambda, &caps)?;
            Ok(to_canonical_string(&rigid))
        }
        Cmd::Construct { file, out, box_cap } => {
            let caps = caps_with(box_cap, None);
            let (tuple, _) = load_instance(&file)?;
            let sol = construct_rigid(&tuple, &caps, TieBreak::default())?;
            let text = to_canonical_string(&sol);
            if let Some(path) = out {
                std::fs::write(&path, format!("{text}\n"))
                    .map_err(|e| Error::invalid(format!("cannot write {}: {e}", path.display())))?;
            }
            Ok(text)
        }
        Cmd::Verify { file, solution } => {
            let (tuple, _) = load_instance(&file)?;
            let sol_text = read_file(&solution)?;
            let sol = parse_solution(&sol_text).map_err(|e| e.in_context(solution.display()))?;
            let report = verify_solution(&tuple, &sol)?;
            Ok(to_canonical_string(&report))
        }
        Cmd::Roots { file, box_cap } => {
            let caps = caps_with(box_cap, None);
            let (tuple, _) = load_instance(&file)?;
            let doc = api::roots_summary(&tuple, caps.box_cap)?;
            Ok(to_canonical_string(&doc))
        }
    }
}

/// Parse arguments from the environment, run the selected command, and
/// return the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version requests print to stdout and succeed; real
            // usage errors go to stderr and count as invalid input
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(doc) => {
            println!("{doc}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
