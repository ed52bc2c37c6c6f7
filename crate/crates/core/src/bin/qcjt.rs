//! Command-line front end: module construction, Jordan-type scans,
//! constancy verdicts, homological operators, rank-property reports, and
//! the verification harness.
//!
//! Exit codes: 0 for success or a positive verdict, 1 for a negative
//! verdict (non-constant type, failed verification, refused
//! classification), 2 for usage or validation errors.

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use qcjt::algebra::AlgebraParams;
use qcjt::error::{Error, Result};
use qcjt::field::{make_field, FieldElem};
use qcjt::homology::{ar_translate, betti_sequence, complexity_estimate, syzygy};
use qcjt::jordan::{check_constant, generic_rank_profile, jordan_type_at, minor_polys, scan_types,
    CjtMethod};
use qcjt::module::{sample_module_point, ModuleRep};
use qcjt::rank_property::{check_rp, classify_syzygy_of_k, rp_descent_step, DescentStep,
    SyzygyClass};
use qcjt::verify::{default_grid, run_all, GridPoint};

#[derive(Parser)]
#[command(
    name = "qcjt",
    about = "Exact arithmetic for modules over quantum complete intersections",
    long_about = "Modules over k<x_1..x_c>/(x_i^n, x_i x_j - q x_j x_i) with exact \
finite-field arithmetic: Jordan types along quantum lines, constancy verdicts, \
syzygies, Betti numbers, translates, and rank-property classification.\n\n\
Module files are JSON; pass - to read from standard input.  Field elements are \
packed encodings sum c_i p^i of polynomial coefficients, so for e = 1 they are \
plain residues mod p."
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Construct a module and print its JSON
    New {
        #[arg(long, default_value_t = 7)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        e: u32,
        #[arg(long, default_value_t = 3)]
        n: u64,
        #[arg(long, default_value_t = 2)]
        c: usize,
        /// Commutation parameter; defaults to the smallest valid choice
        #[arg(long)]
        q: Option<u64>,
        /// One of: k, free, radical-quotient, sample
        #[arg(long)]
        kind: String,
        /// Rank of the free module
        #[arg(long, default_value_t = 1)]
        rank: usize,
        /// Radical quotient r^s / r^t: lower power
        #[arg(long, default_value_t = 0)]
        s: usize,
        /// Radical quotient r^s / r^t: upper power (default: Loewy length)
        #[arg(long)]
        t: Option<usize>,
        /// Dimension of a sampled module (c = 2 only)
        #[arg(long, default_value_t = 4)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file (default: stdout)
        #[arg(long)]
        out: Option<String>,
    },
    /// Jordan type at one point of the quantum projective line
    Jtype {
        module: String,
        /// Point coordinates, comma-separated field encodings
        #[arg(long, value_delimiter = ',', required = true)]
        lambda: Vec<u64>,
    },
    /// Jordan types at every point over an extension field
    Scan {
        module: String,
        /// Extension degree over the prime field
        #[arg(long, default_value_t = 1)]
        ext: u32,
    },
    /// Constant-Jordan-type verdict
    Cjt {
        module: String,
        /// One of: auto, exhaustive, extension, symbolic
        #[arg(long, default_value = "auto")]
        method: String,
        /// Largest extension degree for the extension method
        #[arg(long, default_value_t = 3)]
        ext: u32,
    },
    /// Minors of a power of the generic operator
    Minors {
        module: String,
        #[arg(long, default_value_t = 1)]
        power: u32,
        /// Minor size (default: the generic rank of that power)
        #[arg(long)]
        size: Option<usize>,
        /// How many polynomials to print
        #[arg(long, default_value_t = 16)]
        limit: usize,
    },
    /// Generic rank profile of the powers of the generic operator
    Grank { module: String },
    /// Syzygy or cosyzygy, as module JSON
    Syzygy {
        module: String,
        /// Positive for syzygies, negative for cosyzygies
        #[arg(long, default_value_t = 1)]
        index: i64,
        #[arg(long)]
        out: Option<String>,
    },
    /// Betti numbers of the minimal resolution
    Betti {
        module: String,
        /// Largest index; prints max + 1 numbers
        #[arg(long, default_value_t = 8)]
        max: usize,
    },
    /// Auslander-Reiten translate, as module JSON
    Tau {
        module: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Rank-property report on both axes (two-generator algebras)
    Rp { module: String },
    /// Decide whether the module is a syzygy of the trivial module
    Classify {
        module: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the verification suite over a configuration grid
    Verify {
        /// Only "full" is defined
        #[arg(long, default_value = "full")]
        suite: String,
        /// Grid as "p,e_max,n,c;p,e_max,n,c;…" (default: release grid)
        #[arg(long)]
        grid: Option<String>,
    },
}

fn read_module(path: &str) -> Result<ModuleRep> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        std::fs::read_to_string(path)?
    };
    let m = ModuleRep::from_json_str(&text)?;
    m.validate()?;
    Ok(m)
}

fn write_out(out: &Option<String>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, format!("{content}\n"))?,
        None => println!("{content}"),
    }
    Ok(())
}

fn parse_grid(spec: &str) -> Result<Vec<GridPoint>> {
    let mut grid = Vec::new();
    for part in spec.split(';') {
        let nums: Vec<u64> = part
            .split(',')
            .map(|x| x.trim().parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Unsupported(format!("bad grid entry {part:?}: {e}")))?;
        if nums.len() != 4 {
            return Err(Error::Unsupported(format!(
                "grid entry {part:?} needs p,e_max,n,c"
            )));
        }
        grid.push(GridPoint {
            p: nums[0],
            e_max: nums[1] as u32,
            n: nums[2],
            c: nums[3] as usize,
        });
    }
    Ok(grid)
}

fn type_json(jt: &qcjt::module::JordanType) -> serde_json::Value {
    json!({ "mults": jt.mults, "compact": jt.compact() })
}

fn run() -> Result<u8> {
    let cli = Cli::parse();
    match cli.command {
        Cmd::New { p, e, n, c, q, kind, rank, s, t, d, seed, out } => {
            let mut field = make_field(p, e, n)?;
            if let Some(qv) = q {
                field = field.with_q(FieldElem(qv))?;
            }
            let alg = AlgebraParams::new(field, c)?;
            let m = match kind.as_str() {
                "k" => ModuleRep::simple(&alg),
                "free" => ModuleRep::free(&alg, rank),
                "radical-quotient" => {
                    let t = t.unwrap_or_else(|| alg.loewy_length());
                    alg.radical_quotient_module(s, t)?
                }
                "sample" => sample_module_point(&alg, d, seed)?,
                other => {
                    return Err(Error::Unsupported(format!(
                        "unknown kind {other:?}; use k, free, radical-quotient, or sample"
                    )))
                }
            };
            write_out(&out, &m.to_json_string())?;
            Ok(0)
        }
        Cmd::Jtype { module, lambda } => {
            let m = read_module(&module)?;
            let lambda: Vec<FieldElem> = lambda.into_iter().map(FieldElem).collect();
            println!("{}", jordan_type_at(&m, &lambda)?);
            Ok(0)
        }
        Cmd::Scan { module, ext } => {
            let m = read_module(&module)?;
            let rep = scan_types(&m, ext)?;
            println!("field {}  points {}  classes {}", rep.field, rep.points, rep.classes.len());
            for class in &rep.classes {
                let coords: Vec<u64> = class.witness.iter().map(|x| x.0).collect();
                println!("{}  count {}  witness {:?}", class.jordan_type, class.count, coords);
            }
            Ok(0)
        }
        Cmd::Cjt { module, method, ext } => {
            let m = read_module(&module)?;
            let verdict = match method.as_str() {
                "exhaustive" => check_constant(&m, CjtMethod::Exhaustive)?,
                "extension" => check_constant(&m, CjtMethod::Extension { e_max: ext })?,
                "symbolic" => check_constant(&m, CjtMethod::Symbolic)?,
                "auto" => {
                    if m.alg.c == 2 {
                        match check_constant(&m, CjtMethod::Symbolic) {
                            Err(Error::MethodUnavailable(_)) => {
                                check_constant(&m, CjtMethod::Extension { e_max: ext })?
                            }
                            other => other?,
                        }
                    } else {
                        check_constant(&m, CjtMethod::Extension { e_max: ext })?
                    }
                }
                other => {
                    return Err(Error::Unsupported(format!(
                        "unknown method {other:?}; use auto, exhaustive, extension, or symbolic"
                    )))
                }
            };
            let witness = verdict.witness.as_ref().map(|w| {
                json!({
                    "field": w.field,
                    "lambda_a": w.lambda_a.iter().map(|x| x.0).collect::<Vec<_>>(),
                    "type_a": type_json(&w.type_a),
                    "lambda_b": w.lambda_b.iter().map(|x| x.0).collect::<Vec<_>>(),
                    "type_b": type_json(&w.type_b),
                })
            });
            let report = json!({
                "constant": verdict.constant,
                "jordan_type": verdict.jordan_type.as_ref().map(type_json),
                "witness": witness,
                "certified_over": verdict.certified_over,
                "method": verdict.method,
            });
            println!("{report}");
            Ok(if verdict.constant { 0 } else { 1 })
        }
        Cmd::Minors { module, power, size, limit } => {
            let m = read_module(&module)?;
            let size = match size {
                Some(g) => g,
                None => {
                    let (profile, _) = generic_rank_profile(&m)?;
                    *profile.get(power as usize - 1).ok_or_else(|| {
                        Error::BadRange(format!("power {power} outside 1..={}", profile.len()))
                    })?
                }
            };
            let polys = minor_polys(&m, power, size)?;
            let nonzero: Vec<_> = polys.iter().filter(|p| !p.is_zero()).collect();
            println!(
                "power {power}  size {size}  count {}  nonzero {}",
                polys.len(),
                nonzero.len()
            );
            for poly in nonzero.iter().take(limit) {
                println!("{poly}");
            }
            if nonzero.len() > limit {
                println!("… {} more", nonzero.len() - limit);
            }
            Ok(0)
        }
        Cmd::Grank { module } => {
            let m = read_module(&module)?;
            let (profile, field) = generic_rank_profile(&m)?;
            println!("field {field}  profile {profile:?}");
            Ok(0)
        }
        Cmd::Syzygy { module, index, out } => {
            let m = read_module(&module)?;
            write_out(&out, &syzygy(&m, index)?.to_json_string())?;
            Ok(0)
        }
        Cmd::Betti { module, max } => {
            let m = read_module(&module)?;
            let betti = betti_sequence(&m, max + 1)?;
            let rendered: Vec<String> = betti.iter().map(|b| b.to_string()).collect();
            println!("{}", rendered.join(" "));
            if betti.len() >= 6 {
                let est = complexity_estimate(&betti)?;
                println!(
                    "complexity {}{}",
                    est.complexity,
                    if est.exact { "" } else { " (estimated)" }
                );
            }
            Ok(0)
        }
        Cmd::Tau { module, out } => {
            let m = read_module(&module)?;
            write_out(&out, &ar_translate(&m)?.to_json_string())?;
            Ok(0)
        }
        Cmd::Rp { module } => {
            let m = read_module(&module)?;
            let report = check_rp(&m)?;
            println!(
                "{}",
                json!({
                    "stable_length": report.stable_length,
                    "rpx": report.rpx,
                    "rpy": report.rpy,
                    "rp": report.rp,
                    "beta0": report.beta0,
                    "beta_minus1": report.beta_minus1,
                })
            );
            Ok(if report.rp { 0 } else { 1 })
        }
        Cmd::Classify { module, seed } => {
            let m = read_module(&module)?;
            let verdict = classify_syzygy_of_k(&m, seed)?;
            if let SyzygyClass::SyzygyOfK { index } = verdict {
                if index >= 1 {
                    let mut cur = m;
                    loop {
                        let report = check_rp(&cur)?;
                        let (next, step) = rp_descent_step(&cur)?;
                        let branch = match &step {
                            DescentStep::IsomorphicToK => "next is k",
                            DescentStep::SatisfiesRp(_) => "rank property kept",
                            DescentStep::Violation(_) => "violation",
                        };
                        println!(
                            "dim {}  stable [{}]  b0 {}  b-1 {}  {branch}",
                            cur.d, report.stable_length, report.beta0, report.beta_minus1
                        );
                        if !matches!(step, DescentStep::SatisfiesRp(_)) {
                            break;
                        }
                        cur = next;
                    }
                }
                println!("SyzygyOfK({index})");
                Ok(0)
            } else {
                match verdict {
                    SyzygyClass::NotSyzygyOfK { reason } => println!("NotSyzygyOfK({reason})"),
                    SyzygyClass::NotCertified { reason } => println!("NotCertified({reason})"),
                    SyzygyClass::SyzygyOfK { .. } => unreachable!(),
                }
                Ok(1)
            }
        }
        Cmd::Verify { suite, grid } => {
            if suite != "full" {
                return Err(Error::Unsupported(format!("unknown suite {suite:?}")));
            }
            let grid = match grid {
                Some(spec) => parse_grid(&spec)?,
                None => default_grid(),
            };
            let outcomes = run_all(&grid);
            let mut all_pass = true;
            for out in &outcomes {
                let status = if out.pass { "PASS" } else { "FAIL" };
                println!("{status} {}: {}", out.name, out.detail);
                all_pass &= out.pass;
            }
            println!(
                "{} of {} checks passed",
                outcomes.iter().filter(|o| o.pass).count(),
                outcomes.len()
            );
            Ok(if all_pass { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
