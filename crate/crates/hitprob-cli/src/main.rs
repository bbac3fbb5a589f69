//! `hitprob` — admissible bases of cohit modules, weight strata, Kameko
//! maps, invariants, dimension tables, and fixture verification.
//!
//! Exit codes: 0 on success or match, 1 on a verification mismatch,
//! 2 on usage errors.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hitprob::cache::Cache;
use hitprob::fixture::{parse_fixture, verify_fixture};
use hitprob::invariants::{invariant_polynomials, invariant_space, InvariantGroup};
use hitprob::kameko::{kameko_iso_predicate, kameko_matrix};
use hitprob::monomial::{mu, mu_decomposition, WeightVector};
use hitprob::report::{
    cohit_report, cohit_report_from_strata, invariants_report, to_json, KamekoReport,
};
use hitprob::solver::{
    cohit_basis, cohit_by_weight, kameko_kernel_candidates, omega_presentation, wood_vanishing,
    SolverOptions,
};
use hitprob::tables::{
    binomial, check_sum_induction, group_orders, table_mkr, table_mm, InductionOutcome, TableCell,
};

#[derive(Parser)]
#[command(name = "hitprob", version, about)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct CommonOpts {
    /// Disable the Singer and Wood shortcuts; raw elimination only.
    #[arg(long)]
    no_filters: bool,
    /// Permit jobs estimated to run for minutes or longer.
    #[arg(long)]
    allow_long: bool,
    /// Ignore HITPROB_CACHE for this invocation.
    #[arg(long)]
    no_cache: bool,
}

impl CommonOpts {
    fn solver(&self) -> SolverOptions {
        if self.no_filters {
            SolverOptions::raw()
        } else {
            SolverOptions::default()
        }
    }

    fn cache(&self) -> Cache {
        if self.no_cache {
            Cache::disabled()
        } else {
            Cache::from_env()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// The arithmetic function mu(n) and the spike decomposition of n.
    Mu { n: u64 },
    /// Admissible-monomial basis of QP_n over H variables.
    Cohit {
        #[arg(long = "vars")]
        vars: usize,
        #[arg(long = "degree")]
        degree: u64,
        /// Compute and report stratum by stratum.
        #[arg(long)]
        by_weight: bool,
        /// Include the monomials themselves, not only dimensions.
        #[arg(long)]
        emit_monomials: bool,
        /// Restrict Kameko-kernel strata to candidates lifted from the
        /// lower degree and check the basis against them.
        #[arg(long)]
        kameko_shortcut: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// The Kameko down map out of degree N = 2m + H.
    Kameko {
        #[arg(long = "vars")]
        vars: usize,
        #[arg(long = "degree")]
        degree: u64,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Sigma_h or GL_h invariants of a weight stratum.
    Invariants {
        #[arg(long = "vars")]
        vars: usize,
        #[arg(long = "degree")]
        degree: u64,
        #[arg(long = "weight")]
        weight: String,
        #[arg(long, value_enum, default_value_t = GroupArg::Sym)]
        group: GroupArg,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Dimension tables and closed-form cross-checks.
    Tables {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Largest variable count for the mm/mkr suites.
        #[arg(long, default_value_t = 6)]
        max_vars: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Verify a fixture file against a fresh computation.
    Verify {
        path: String,
        #[command(flatten)]
        common: CommonOpts,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    Sym,
    Gl,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Mm,
    Mkr,
    Induction,
    Orders,
}

const LONG_JOB_COLUMNS: u128 = 50_000;

fn guard_long(columns: u128, allow_long: bool) -> anyhow::Result<()> {
    if columns > LONG_JOB_COLUMNS && !allow_long {
        anyhow::bail!(
            "this job spans {columns} columns and may run for minutes or longer; \
             pass --allow-long to proceed"
        );
    }
    Ok(())
}

fn full_columns(h: usize, n: u64) -> u128 {
    binomial(n + h as u64 - 1, h as u64 - 1)
}

fn render_table(cells: &[TableCell], format: Format) -> String {
    match format {
        Format::Json => to_json(&cells),
        Format::Csv => {
            let mut s = String::from("h,n,formula,computed,match\n");
            for c in cells {
                let _ = writeln!(s, "{},{},{},{},{}", c.h, c.n, c.formula, c.computed, c.matches);
            }
            s
        }
        Format::Text => {
            let mut s = String::from("  h   n     formula    computed  match\n");
            for c in cells {
                let _ = writeln!(
                    s,
                    "{:>3} {:>3} {:>11} {:>11}  {}",
                    c.h,
                    c.n,
                    c.formula,
                    c.computed,
                    if c.matches { "ok" } else { "MISMATCH" }
                );
            }
            s
        }
    }
}

fn run() -> anyhow::Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Mu { n } => {
            let m = mu(n);
            match cli.format {
                Format::Json => {
                    let decomposition = if n > 0 {
                        Some(mu_decomposition(n, m)?)
                    } else {
                        None
                    };
                    #[derive(serde::Serialize)]
                    struct MuReport {
                        n: u64,
                        mu: u64,
                        #[serde(skip_serializing_if = "Option::is_none")]
                        spike_exponents: Option<Vec<u32>>,
                    }
                    print!(
                        "{}",
                        to_json(&MuReport { n, mu: m, spike_exponents: decomposition })
                    );
                }
                Format::Csv => {
                    println!("n,mu");
                    println!("{n},{m}");
                }
                Format::Text => {
                    println!("mu({n}) = {m}");
                    if n > 0 {
                        let ds = mu_decomposition(n, m)?;
                        let parts: Vec<String> =
                            ds.iter().map(|d| format!("(2^{d} - 1)")).collect();
                        println!("{n} = {}", parts.join(" + "));
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Cohit { vars, degree, by_weight, emit_monomials, kameko_shortcut, common } => {
            let opts = common.solver();
            let cache = common.cache();
            guard_long(full_columns(vars, degree), common.allow_long)?;
            let key = format!(
                "cohit-h{vars}-n{degree}{}{}{}",
                if by_weight { "-byweight" } else { "" },
                if emit_monomials { "-monomials" } else { "" },
                if common.no_filters { "-nofilters" } else { "" }
            );
            let payload = if let Some(hit) = cache.get(&key) {
                hit
            } else {
                let report = if by_weight {
                    let strata = cohit_by_weight(vars, degree, &opts)?;
                    cohit_report_from_strata(vars, degree, &strata, emit_monomials)
                } else {
                    let basis = cohit_basis(vars, degree, &opts)?;
                    cohit_report(&basis, emit_monomials)
                };
                let payload = to_json(&report);
                cache.put(&key, &payload)?;
                payload
            };
            if kameko_shortcut {
                let report: serde_json::Value = serde_json::from_str(&payload)?;
                check_kameko_shortcut(vars, degree, &report, &opts)?;
            }
            match cli.format {
                Format::Json => print!("{payload}"),
                Format::Csv => {
                    let report: serde_json::Value = serde_json::from_str(&payload)?;
                    println!("h,n,omega,dim");
                    println!("{vars},{degree},total,{}", report["dim"]);
                    for s in report["strata"].as_array().into_iter().flatten() {
                        println!(
                            "{vars},{degree},\"{}\",{}",
                            s["omega"].as_str().unwrap_or(""),
                            s["dim"]
                        );
                    }
                }
                Format::Text => {
                    let report: serde_json::Value = serde_json::from_str(&payload)?;
                    println!(
                        "QP_{degree} over {vars} variables: dimension {}",
                        report["dim"]
                    );
                    if wood_vanishing(vars, degree) {
                        println!("(vanishes: mu({degree}) > {vars})");
                    }
                    for s in report["strata"].as_array().into_iter().flatten() {
                        println!("  omega ({}): {}", s["omega"].as_str().unwrap_or(""), s["dim"]);
                        if let Some(ms) = s["monomials"].as_array() {
                            for m in ms {
                                println!("    {}", m.as_str().unwrap_or(""));
                            }
                        }
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Kameko { vars, degree, common } => {
            let opts = common.solver();
            if degree < vars as u64 || !(degree - vars as u64).is_multiple_of(2) {
                anyhow::bail!("degree must have the form 2m + {vars}");
            }
            let m = (degree - vars as u64) / 2;
            guard_long(full_columns(vars, degree), common.allow_long)?;
            let map = kameko_matrix(vars, m, &opts)?;
            let report = KamekoReport {
                h: vars,
                source_degree: degree,
                target_degree: m,
                iso_predicate: kameko_iso_predicate(vars, degree)?,
                source_dim: map.upper().dim(),
                target_dim: map.lower().dim(),
                rank: map.rank(),
                kernel_dim: map.kernel_dim(),
                surjective: map.is_surjective(),
            };
            match cli.format {
                Format::Json => print!("{}", to_json(&report)),
                Format::Csv => {
                    println!("h,source_degree,target_degree,source_dim,target_dim,rank,kernel_dim,iso");
                    println!(
                        "{vars},{degree},{m},{},{},{},{},{}",
                        report.source_dim,
                        report.target_dim,
                        report.rank,
                        report.kernel_dim,
                        report.iso_predicate
                    );
                }
                Format::Text => {
                    println!(
                        "down map QP_{degree} -> QP_{m} over {vars} variables: \
                         dim {} -> dim {}, rank {}, kernel {}",
                        report.source_dim, report.target_dim, report.rank, report.kernel_dim
                    );
                    println!(
                        "iso criterion mu({degree}) = {vars}: {}",
                        if report.iso_predicate { "holds" } else { "fails" }
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Invariants { vars, degree, weight, group, common } => {
            let opts = common.solver();
            let omega: WeightVector = weight.parse()?;
            let group = match group {
                GroupArg::Sym => InvariantGroup::Symmetric,
                GroupArg::Gl => InvariantGroup::GeneralLinear,
            };
            guard_long(
                hitprob::solver::stratum_universe_size(vars, degree, &omega),
                common.allow_long,
            )?;
            let p = omega_presentation(vars, degree, &omega, &opts)?;
            let vectors = invariant_space(&p, group)?;
            let polys = invariant_polynomials(&p, &vectors);
            let report = invariants_report(vars, degree, &omega, group, &polys);
            match cli.format {
                Format::Json => print!("{}", to_json(&report)),
                Format::Csv => {
                    println!("h,n,omega,group,stratum_dim,invariant_dim");
                    println!("{vars},{degree},\"{omega}\",{},{},{}", report.group, p.dim(), report.dim);
                }
                Format::Text => {
                    println!(
                        "stratum ({vars}, {degree}, ({omega})): dim {}, {} invariants: {}",
                        p.dim(),
                        report.group,
                        report.dim
                    );
                    for (i, f) in report.invariants.iter().enumerate() {
                        println!("  invariant {}: {} monomials", i + 1, f.len());
                        for m in f {
                            println!("    {m}");
                        }
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Tables { suite, max_vars, common } => {
            let opts = common.solver();
            match suite {
                Suite::Mm => {
                    let cells = table_mm(max_vars, &opts)?;
                    print!("{}", render_table(&cells, cli.format));
                    let all = cells.iter().all(|c| c.matches);
                    Ok(if all { ExitCode::SUCCESS } else { ExitCode::FAILURE })
                }
                Suite::Mkr => {
                    guard_long(full_columns(max_vars, 10), common.allow_long)?;
                    let cells = table_mkr(max_vars, &opts)?;
                    print!("{}", render_table(&cells, cli.format));
                    let all = cells.iter().all(|c| c.matches);
                    Ok(if all { ExitCode::SUCCESS } else { ExitCode::FAILURE })
                }
                Suite::Induction => {
                    let mut ok = true;
                    for (h, r, s) in [(3usize, 1u64, 2u32), (3, 1, 3), (4, 1, 3)] {
                        match check_sum_induction(h, r, s, &opts)? {
                            InductionOutcome::Checked { n, lhs, rhs, holds } => {
                                println!(
                                    "h={h} r={r} s={s}: dim QP_{n} = {lhs}, (2^{h}-1)*dim = {rhs} \
                                     => {}",
                                    if holds { "ok" } else { "MISMATCH" }
                                );
                                ok &= holds;
                            }
                            InductionOutcome::Inapplicable { reason } => {
                                println!("h={h} r={r} s={s}: inapplicable ({reason})");
                            }
                        }
                    }
                    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
                }
                Suite::Orders => {
                    match cli.format {
                        Format::Csv => {
                            println!("h,q,gl,borel,unipotent_borel,gl_over_unipotent");
                            for h in 1..=max_vars {
                                let g = group_orders(h, 2)?;
                                println!(
                                    "{h},2,{},{},{},{}",
                                    g.gl, g.borel, g.unipotent_borel, g.gl_over_unipotent
                                );
                            }
                        }
                        _ => {
                            for h in 1..=max_vars {
                                let g = group_orders(h, 2)?;
                                println!(
                                    "h={h} q=2: |GL| = {}, |B| = {}, |B*| = {}, |GL/B*| = {}",
                                    g.gl, g.borel, g.unipotent_borel, g.gl_over_unipotent
                                );
                            }
                        }
                    }
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
        Command::Verify { path, common } => {
            let opts = common.solver();
            let text = std::fs::read_to_string(&path)?;
            let fixture = parse_fixture(&text)?;
            if let Some(w) = &fixture.omega {
                let block = hitprob::solver::stratum_universe_size(fixture.h, fixture.n, w);
                guard_long(block, common.allow_long)?;
            } else {
                guard_long(full_columns(fixture.h, fixture.n), common.allow_long)?;
            }
            let report = verify_fixture(&fixture, &opts)?;
            println!("{}", report.detail);
            for m in report.missing.iter().take(10) {
                println!("  missing:    {m}");
            }
            for m in report.unexpected.iter().take(10) {
                println!("  unexpected: {m}");
            }
            Ok(if report.matched { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn check_kameko_shortcut(
    vars: usize,
    degree: u64,
    report: &serde_json::Value,
    opts: &SolverOptions,
) -> anyhow::Result<()> {
    for s in report["strata"].as_array().into_iter().flatten() {
        let omega: WeightVector = s["omega"].as_str().unwrap_or("").parse()?;
        let head = omega.entries().first().copied().unwrap_or(0) as u64;
        if !(degree - head).is_multiple_of(2) {
            continue;
        }
        let candidates = kameko_kernel_candidates(vars, degree, &omega, opts)?;
        if let Some(ms) = s["monomials"].as_array() {
            for m in ms {
                let mono: hitprob::monomial::Monomial = m.as_str().unwrap_or("").parse()?;
                if !candidates.contains(&mono) {
                    anyhow::bail!(
                        "kameko shortcut check failed: admissible {mono} is not of the \
                         lifted form for omega ({omega})"
                    );
                }
            }
            println!(
                "kameko shortcut: omega ({omega}): {} admissible within {} candidates",
                ms.len(),
                candidates.len()
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    // die quietly when the output pipe closes, like other unix tools
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
