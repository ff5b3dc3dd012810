//! Command-line surface over the lattice/transfer-system core: lattice and
//! class listings, transfer-system counting and closure, losslessness checks,
//! lifting reports, the metacyclic-Frobenius tools, the fixed verification
//! table, and the SL₂ conjecture harness.

mod dot;
mod json;
mod spec;

use clap::{Parser, Subcommand};
use normlift_core::{
    build_frame_bounded, build_group_bounded, cat_closure, conjecture_check,
    enumerate_cat_transfer_systems, enumerate_g_transfer_systems, enumerate_subgroups, g_closure,
    grid_iso, is_lossless, is_universally_lossless, lift_report, lossless_criteria,
    mcf_lift_violation, mcf_structure, Group, Relation, SubgroupLattice,
};
use serde_json::json;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(name = "normlift", version, about = "Transfer systems on subgroup lattices")]
struct Cli {
    /// Worker pool size; outputs are identical for any value.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the subgroup lattice of a group.
    Lattice {
        spec: String,
        /// Emit a DOT diagram (gray Hasse edges, classes share a color).
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        /// Emit the lattice as JSON.
        #[arg(long)]
        json: bool,
    },
    /// List conjugacy classes of subgroups.
    Classes { spec: String },
    /// Count transfer systems on a poset file or on a group's lattice.
    CountTs {
        /// Poset JSON file carrying the relation.
        #[arg(long, value_name = "FILE")]
        poset: Option<PathBuf>,
        /// Group spec whose lattice (or class poset) carries the relation.
        #[arg(long, value_name = "SPEC")]
        group: Option<String>,
        /// Count categorical transfer systems (default).
        #[arg(long, conflicts_with = "equivariant")]
        categorical: bool,
        /// Count group transfer systems on the full subgroup lattice.
        #[arg(long)]
        equivariant: bool,
    },
    /// Decide losslessness; exits 0 (lossless) or 1 (lossy), with a JSON verdict.
    CheckLossless { spec: String },
    /// Count categorical transfer systems on the class poset and how many lift.
    LiftReport {
        spec: String,
        /// Emit per-system verdicts as JSON instead of the summary table.
        #[arg(long)]
        json: bool,
    },
    /// Detect metacyclic Frobenius structure and print the divisor-grid labels.
    Mcf { spec: String },
    /// Test a class-poset transfer system against the one-implication criterion.
    McfLift {
        spec: String,
        /// Transfer-system JSON with carrier "poset".
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
    },
    /// Close a set of arrows into the least transfer system containing them.
    Closure {
        spec: String,
        /// Transfer-system JSON naming the seed arrows.
        #[arg(long, value_name = "FILE")]
        arrows: PathBuf,
        /// Emit the closed system as a DOT overlay instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Recompute the fixed verification table; exits 0 iff every row checks out.
    ReproducePaper,
    /// Property-based check of the split-decomposition round trip for SL2(p).
    Sl2Conjecture {
        #[arg(long, default_value_t = 13)]
        p: u64,
        /// Number of seeded random samples on top of the fixed extremes.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also run the closure of every single arrow orbit.
        #[arg(long)]
        exhaustive_singles: bool,
    },
}

enum CmdError {
    Usage(String),
    Domain(String),
}

impl From<normlift_core::Error> for CmdError {
    fn from(e: normlift_core::Error) -> Self {
        CmdError::Domain(e.to_string())
    }
}

type CmdResult = Result<i32, CmdError>;

/// Size bound for group construction, overridable by NORMLIFT_MAX_GROUP_ORDER.
fn max_order() -> usize {
    std::env::var("NORMLIFT_MAX_GROUP_ORDER")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(normlift_core::group::DEFAULT_MAX_ORDER)
}

fn build(spec_str: &str) -> Result<(Group, SubgroupLattice), CmdError> {
    let spec = spec::parse_spec(spec_str).map_err(CmdError::Usage)?;
    let g = build_group_bounded(&spec, max_order())?;
    let l = enumerate_subgroups(&g)?;
    Ok((g, l))
}

fn read_transfer(path: &Path) -> Result<json::TransferFile, CmdError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CmdError::Usage(format!("cannot read `{}`: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CmdError::Domain(format!("bad transfer file `{}`: {e}", path.display())))
}

fn cmd_lattice(spec_str: &str, dot: bool, as_json: bool) -> CmdResult {
    let (_, l) = build(spec_str)?;
    if dot {
        print!("{}", dot::lattice_dot(spec_str, &l));
    } else if as_json {
        let file = json::lattice_file(spec_str, &l);
        println!("{}", serde_json::to_string_pretty(&file).unwrap());
    } else {
        println!(
            "subgroups: {}, classes: {}, group order: {}",
            l.len(),
            l.class_count(),
            l.group_order()
        );
        for i in 0..l.len() {
            println!(
                "{i}: order {}, class {}, normalizer {}",
                l.subgroup(i).len(),
                l.class_of(i),
                l.normalizer_of(i)
            );
        }
    }
    Ok(0)
}

fn cmd_classes(spec_str: &str) -> CmdResult {
    let (_, l) = build(spec_str)?;
    let cp = l.quotient_poset();
    for c in 0..cp.len() {
        let info = cp.class(c);
        println!(
            "{c}: order {}, size {}, rep {}",
            info.order, info.size, info.rep
        );
    }
    println!("{} classes", cp.len());
    Ok(0)
}

fn cmd_count_ts(
    poset: Option<&Path>,
    group: Option<&str>,
    equivariant: bool,
) -> CmdResult {
    let count = match (poset, group) {
        (Some(path), None) => {
            if equivariant {
                return Err(CmdError::Usage(
                    "--equivariant needs --group; a bare poset has no conjugation action".into(),
                ));
            }
            let text = std::fs::read_to_string(path)
                .map_err(|e| CmdError::Usage(format!("cannot read `{}`: {e}", path.display())))?;
            let file: json::PosetFile = serde_json::from_str(&text)
                .map_err(|e| CmdError::Domain(format!("bad poset file: {e}")))?;
            let p = json::poset_from_file(&file).map_err(CmdError::Domain)?;
            enumerate_cat_transfer_systems(&p)?.len()
        }
        (None, Some(spec_str)) => {
            let (_, l) = build(spec_str)?;
            if equivariant {
                enumerate_g_transfer_systems(&l)?.len()
            } else {
                enumerate_cat_transfer_systems(&l.quotient_poset().poset())?.len()
            }
        }
        _ => {
            return Err(CmdError::Usage(
                "exactly one of --poset and --group is required".into(),
            ))
        }
    };
    println!("{count}");
    Ok(0)
}

fn cmd_check_lossless(spec_str: &str) -> CmdResult {
    let (g, l) = build(spec_str)?;
    let verdict = is_lossless(&g, &l);
    let criteria = lossless_criteria(&g, &l);
    let universal = is_universally_lossless(&g, &l).ok();
    let out = json!({
        "group": spec_str,
        "lossless": verdict.lossless,
        "witness": verdict.witness.map(|(h, k, c)| json!({
            "overgroup": h,
            "subgroup": k,
            "conjugator": c,
        })),
        "universally_lossless": universal,
        "criteria": {
            "solvable_t_group": criteria.solvable_t_group,
            "cyclic_normal_prime_index": criteria.cyclic_normal_prime_index,
            "derived_subgroup_prime_order": criteria.derived_subgroup_prime_order,
            "rank_two_elementary_coprime_complement": criteria.rank_two_elementary_coprime_complement,
        },
    });
    println!("{}", serde_json::to_string_pretty(&out).unwrap());
    Ok(if verdict.lossless { 0 } else { 1 })
}

fn cmd_lift_report(spec_str: &str, as_json: bool) -> CmdResult {
    let (_, l) = build(spec_str)?;
    let cp = l.quotient_poset();
    let report = lift_report(&l)?;
    if as_json {
        let out = json!({
            "group": spec_str,
            "poset_size": cp.len(),
            "total": report.total_cat,
            "liftable": report.liftable,
            "verdicts": report.verdicts,
            "witnesses": report.witnesses,
        });
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        println!("poset_size, total, liftable");
        println!("{}, {}, {}", cp.len(), report.total_cat, report.liftable);
    }
    Ok(0)
}

fn cmd_mcf(spec_str: &str) -> CmdResult {
    let (g, l) = build(spec_str)?;
    let st = mcf_structure(&g, &l).ok_or(normlift_core::Error::NotMcf)?;
    let cp = l.quotient_poset();
    let coords = grid_iso(&l, &cp, &st)?;
    println!(
        "kernel: subgroup {} (order {}), complement: subgroup {} (order {})",
        st.kernel, st.n, st.complement, st.t
    );
    println!("grid: divisors of {} x divisors of {}", st.n, st.t);
    for (c, &(a, b)) in coords.iter().enumerate() {
        println!("class {c}: ({a}, {b})");
    }
    Ok(0)
}

fn cmd_mcf_lift(spec_str: &str, input: &Path) -> CmdResult {
    let (g, l) = build(spec_str)?;
    let st = mcf_structure(&g, &l).ok_or(normlift_core::Error::NotMcf)?;
    let cp = l.quotient_poset();
    let file = read_transfer(input)?;
    if file.carrier != "poset" {
        return Err(CmdError::Domain(
            "mcf-lift expects a transfer system on the class poset (carrier \"poset\")".into(),
        ));
    }
    let mut rc = Relation::reflexive(cp.len());
    for &(i, j) in &file.arrows {
        if i >= cp.len() || j >= cp.len() || !cp.leq(i, j) {
            return Err(normlift_core::Error::InvalidArrow { from: i, to: j }.into());
        }
        rc.add(i, j);
    }
    match mcf_lift_violation(&l, &cp, &st, &rc)? {
        None => {
            println!("liftable");
            Ok(0)
        }
        Some((ck, ch)) => {
            let cb = cp.pi(normlift_core::base(&l, &st, cp.class(ck).rep));
            println!("not liftable: [{ck}] -> [{ch}] forces the missing [{cb}] -> [{ch}]");
            Ok(1)
        }
    }
}

fn cmd_closure(spec_str: &str, arrows_path: &Path, dot: bool) -> CmdResult {
    let (_, l) = build(spec_str)?;
    let file = read_transfer(arrows_path)?;
    match file.carrier.as_str() {
        "subgroups" => {
            let closed = g_closure(&l, &file.arrows)?;
            if dot {
                print!("{}", dot::transfer_dot(spec_str, &l, &closed));
            } else {
                let out = json::transfer_file("subgroups", Some(spec_str), &closed);
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            }
        }
        "poset" => {
            let p = l.quotient_poset().poset();
            let closed = cat_closure(&p, &file.arrows)?;
            if dot {
                print!("{}", dot::poset_transfer_dot(spec_str, &p, &closed));
            } else {
                let out = json::transfer_file("poset", Some(spec_str), &closed);
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            }
        }
        other => {
            return Err(CmdError::Domain(format!(
                "unknown carrier `{other}` (expected \"subgroups\" or \"poset\")"
            )))
        }
    }
    Ok(0)
}

fn cmd_sl2_conjecture(p: u64, samples: usize, seed: u64, singles: bool) -> CmdResult {
    let frame = build_frame_bounded(p, max_order())?;
    let report = conjecture_check(&frame, samples, seed, singles);
    let failures: Vec<_> = report
        .failures
        .iter()
        .map(|f| {
            json!({
                "seed_arrows": f.seed_arrows,
                "violation": f.violation.as_ref().map(|v| format!("{v:?}")),
                "first_diff": f.first_diff,
            })
        })
        .collect();
    let out = json!({
        "p": report.p,
        "eps": frame.eps,
        "samples": report.samples,
        "passes": report.passes,
        "conjecture_holds": report.failures.is_empty(),
        "failures": failures,
    });
    println!("{}", serde_json::to_string_pretty(&out).unwrap());
    Ok(0)
}

// --- reproduce-paper -------------------------------------------------------

fn print_row(name: &str, got: &str, expected: &str, all_ok: &mut bool) {
    let ok = got == expected;
    if !ok {
        *all_ok = false;
    }
    println!(
        "{name:<44} {got:>12} {}",
        if ok { "OK" } else { "FAIL" }
    );
}

fn counts_row(name: &str, spec_str: &str, expected: &str, all_ok: &mut bool) {
    let got = build(spec_str)
        .map_err(|_| ())
        .and_then(|(_, l)| lift_report(&l).map_err(|_| ()))
        .map(|r| format!("{}/{}", r.total_cat, r.liftable))
        .unwrap_or_else(|_| "error".into());
    print_row(name, &got, expected, all_ok);
}

fn direct_row(name: &str, spec_str: &str, expected: &str, all_ok: &mut bool) {
    let got = build(spec_str)
        .map_err(|_| ())
        .and_then(|(_, l)| enumerate_g_transfer_systems(&l).map_err(|_| ()))
        .map(|systems| systems.len().to_string())
        .unwrap_or_else(|_| "error".into());
    print_row(name, &got, expected, all_ok);
}

fn lossless_row(name: &str, spec_str: &str, expected: bool, all_ok: &mut bool) {
    let got = build(spec_str)
        .map(|(g, l)| is_lossless(&g, &l).lossless.to_string())
        .unwrap_or_else(|_| "error".into());
    print_row(name, &got, &expected.to_string(), all_ok);
}

fn cmd_reproduce_paper() -> CmdResult {
    let mut ok = true;
    counts_row("S3 categorical/liftable", "S3", "10/9", &mut ok);
    direct_row("S3 direct G-enumeration", "S3", "9", &mut ok);
    counts_row("D9 categorical/liftable", "D9", "68/56", &mut ok);
    direct_row("D9 direct G-enumeration", "D9", "56", &mut ok);
    counts_row("AGL1(5) categorical/liftable", "AGL1(5)", "68/59", &mut ok);
    direct_row("AGL1(5) direct G-enumeration", "AGL1(5)", "59", &mut ok);
    counts_row("AGL1(7) categorical/liftable", "AGL1(7)", "450/400", &mut ok);
    direct_row("AGL1(7) direct G-enumeration", "AGL1(7)", "400", &mut ok);
    lossless_row("C9 lossless", "C9", true, &mut ok);
    lossless_row("D9 lossless", "D9", true, &mut ok);
    lossless_row("Q8 lossless", "Q8", true, &mut ok);
    lossless_row("SD4 lossless", "SD4", true, &mut ok);
    lossless_row("MM4 lossless", "MM4", true, &mut ok);
    lossless_row("Dic3 lossless", "Dic3", true, &mut ok);
    lossless_row("C2xA4 lossless", "prod(C2,A4)", false, &mut ok);
    lossless_row(
        "order-81 Jordan block lossless",
        "vsd(3,3,3,[[1,1,0],[0,1,1],[0,0,1]])",
        false,
        &mut ok,
    );
    lossless_row("SL2(3) lossless", "SL2(3)", true, &mut ok);
    lossless_row("SL2(5) lossless", "SL2(5)", true, &mut ok);
    lossless_row("SL2(7) lossless", "SL2(7)", false, &mut ok);
    println!("{}", if ok { "all rows OK" } else { "FAILURES present" });
    Ok(if ok { 0 } else { 1 })
}

fn dispatch(cli: Cli) -> CmdResult {
    // Sequential implementation: the flag is accepted for interface
    // compatibility and results never depend on it.
    let _ = cli.threads;
    match cli.command {
        Command::Lattice { spec, dot, json } => cmd_lattice(&spec, dot, json),
        Command::Classes { spec } => cmd_classes(&spec),
        Command::CountTs {
            poset,
            group,
            categorical: _,
            equivariant,
        } => cmd_count_ts(poset.as_deref(), group.as_deref(), equivariant),
        Command::CheckLossless { spec } => cmd_check_lossless(&spec),
        Command::LiftReport { spec, json } => cmd_lift_report(&spec, json),
        Command::Mcf { spec } => cmd_mcf(&spec),
        Command::McfLift { spec, input } => cmd_mcf_lift(&spec, &input),
        Command::Closure { spec, arrows, dot } => cmd_closure(&spec, &arrows, dot),
        Command::ReproducePaper => cmd_reproduce_paper(),
        Command::Sl2Conjecture {
            p,
            samples,
            seed,
            exhaustive_singles,
        } => cmd_sl2_conjecture(p, samples, seed, exhaustive_singles),
    }
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help/--version arrive as "errors" but are successful output.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(CmdError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            2
        }
        Err(CmdError::Domain(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    }
}
