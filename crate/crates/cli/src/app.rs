use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fglattice::equivalence::tuples_equivalent;
use fglattice::fundamental::{build_lattice, enumerate, is_member, leq, SubgroupMatrix};
use fglattice::oracle::{all_subgroups, DEFAULT_ORDER_BOUND};
use fglattice::poset::are_isomorphic;
use fglattice::theorems::{self, HarnessConfig, TheoremId, TheoremReport};
use fglattice::GroupSignature;

use crate::json::{millis, FindingDoc, LatticeDoc, ReportDoc, SubgroupsDoc};
use crate::text::{parse_matrix, parse_signature};
use crate::{dot, exit, CliError};

#[derive(Debug, Parser)]
#[command(
    name = "fglattice",
    version,
    about = "Subgroup lattices of finite abelian groups via fundamental group lattices"
)]
pub struct Cli {
    /// Largest group order handed to the subgroup oracle.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_BOUND)]
    pub order_bound: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the elements of the fundamental lattice.
    Enumerate {
        #[arg(long, value_parser = sig_arg)]
        sig: GroupSignature,
        #[arg(long)]
        json: bool,
    },
    /// Export the Hasse diagram.
    Hasse {
        #[arg(long, value_parser = sig_arg)]
        sig: GroupSignature,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
    },
    /// Decide whether a matrix belongs to the lattice.
    Member {
        #[arg(long, value_parser = sig_arg)]
        sig: GroupSignature,
        #[arg(long)]
        matrix: String,
    },
    /// Decide `left <= right` for two members.
    Leq {
        #[arg(long, value_parser = sig_arg)]
        sig: GroupSignature,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Decide whether two groups have isomorphic subgroup lattices.
    Iso {
        #[arg(long, value_parser = sig_arg)]
        left: GroupSignature,
        #[arg(long, value_parser = sig_arg)]
        right: GroupSignature,
        /// Also build both lattices and compare them directly.
        #[arg(long)]
        oracle: bool,
    },
    /// Enumerate subgroups by closure.
    OracleSubgroups {
        #[arg(long, value_parser = sig_arg)]
        sig: GroupSignature,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification sweep.
    Verify(VerifyArgs),
    /// Search for isomorphic power lattices with different exponent gcds.
    Explore {
        #[arg(long)]
        max_order: u64,
        #[arg(long)]
        max_exp: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub theorem: Theorem,
    #[arg(long)]
    pub max_order: u64,
    /// Power for theorem-2.
    #[arg(long, default_value_t = 2)]
    pub power: u64,
    /// Largest exponent for theorem-3.
    #[arg(long, default_value_t = 4)]
    pub max_exp: u64,
    /// Largest lattice built for brute-force cross-checks.
    #[arg(long, default_value_t = HarnessConfig::default().lattice_size_cap)]
    pub lattice_cap: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Dot,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    #[value(name = "theorem-a")]
    A,
    #[value(name = "theorem-b")]
    B,
    #[value(name = "theorem-1")]
    One,
    #[value(name = "theorem-2")]
    Two,
    #[value(name = "theorem-3")]
    Three,
}

impl From<Theorem> for TheoremId {
    fn from(t: Theorem) -> Self {
        match t {
            Theorem::A => TheoremId::A,
            Theorem::B => TheoremId::B,
            Theorem::One => TheoremId::One,
            Theorem::Two => TheoremId::Two,
            Theorem::Three => TheoremId::Three,
        }
    }
}

fn sig_arg(s: &str) -> Result<GroupSignature, String> {
    parse_signature(s).map_err(|e| e.to_string())
}

fn verdict(out: &mut dyn Write, v: bool) -> Result<i32, CliError> {
    writeln!(out, "{v}")?;
    Ok(if v { exit::OK } else { exit::FALSE })
}

fn member_matrix(sig: &GroupSignature, text: &str) -> Result<SubgroupMatrix, CliError> {
    Ok(SubgroupMatrix::member_of(sig, &parse_matrix(text)?)?)
}

fn write_report(
    out: &mut dyn Write,
    err: &mut dyn Write,
    r: &TheoremReport,
    json: bool,
) -> Result<(), CliError> {
    let elapsed = r.elapsed.map(millis).unwrap_or(0.0);
    if json {
        writeln!(out, "{}", serde_json::to_string(&ReportDoc::from(r))?)?;
        writeln!(err, "elapsed: {elapsed:.1} ms")?;
        return Ok(());
    }
    writeln!(out, "theorem: {}", r.theorem.name())?;
    writeln!(out, "max order: {}", r.max_order)?;
    writeln!(out, "cases: {}", r.cases)?;
    writeln!(out, "oracle checked: {}", r.oracle_checked)?;
    writeln!(out, "counterexamples: {}", r.counterexamples.len())?;
    for c in &r.counterexamples {
        writeln!(
            out,
            "  ({}) {:?} vs ({}) {:?}: {}",
            c.left, c.left_exponents, c.right, c.right_exponents, c.note
        )?;
    }
    writeln!(out, "elapsed: {elapsed:.1} ms")?;
    writeln!(out, "{}", if r.pass() { "PASS" } else { "FAIL" })?;
    Ok(())
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let bound = cli.order_bound;
    match cli.command {
        Command::Enumerate { sig, json } => {
            if json {
                let doc = LatticeDoc::from_lattice(&build_lattice(&sig)?);
                writeln!(out, "{}", serde_json::to_string(&doc)?)?;
            } else {
                for e in enumerate(&sig)? {
                    writeln!(out, "{}\t{}\t{}", e.id, e.matrix, e.subgroup_order)?;
                }
            }
        }
        Command::Hasse { sig, format } => {
            let fl = build_lattice(&sig)?;
            match format {
                GraphFormat::Dot => write!(out, "{}", dot::render(&fl))?,
                GraphFormat::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&LatticeDoc::from_lattice(&fl))?
                )?,
            }
        }
        Command::Member { sig, matrix } => {
            return verdict(out, is_member(&sig, &parse_matrix(&matrix)?)?);
        }
        Command::Leq { sig, left, right } => {
            let (a, b) = (member_matrix(&sig, &left)?, member_matrix(&sig, &right)?);
            return verdict(out, leq(&sig, &a, &b)?);
        }
        Command::Iso {
            left,
            right,
            oracle,
        } => {
            let report = tuples_equivalent(&left, &right);
            if oracle {
                for s in [&left, &right] {
                    let order = s.order_u64().unwrap_or(u64::MAX);
                    if order > bound {
                        return Err(fglattice::Error::ResourceLimit { order, bound }.into());
                    }
                }
                let (a, b) = (build_lattice(&left)?, build_lattice(&right)?);
                let brute = are_isomorphic(&a.lattice, &b.lattice);
                writeln!(
                    err,
                    "brute force: {brute} ({} vs {} elements)",
                    a.elements.len(),
                    b.elements.len()
                )?;
                if brute != report.verdict {
                    return Err(CliError::Disagreement(format!(
                        "({left}) vs ({right}): criterion {}, lattices {brute}",
                        report.verdict
                    )));
                }
            }
            if let Some(pairing) = &report.pairing {
                for p in pairing {
                    writeln!(
                        err,
                        "pair {} <-> {} (exponent {})",
                        p.left, p.right, p.exponent
                    )?;
                }
            }
            return verdict(out, report.verdict);
        }
        Command::OracleSubgroups { sig, json } => {
            let subs = all_subgroups(&sig, bound)?;
            if json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&SubgroupsDoc::new(&sig, &subs))?
                )?;
            } else {
                for (i, s) in subs.iter().enumerate() {
                    let elems: Vec<String> = s
                        .elements()
                        .iter()
                        .map(|e| {
                            format!(
                                "({})",
                                e.coords
                                    .iter()
                                    .map(u64::to_string)
                                    .collect::<Vec<_>>()
                                    .join(",")
                            )
                        })
                        .collect();
                    writeln!(out, "{i}\t{}\t{}", s.len(), elems.join(" "))?;
                }
            }
        }
        Command::Verify(v) => {
            let config = HarnessConfig {
                oracle_order_bound: bound,
                lattice_size_cap: v.lattice_cap,
            };
            let start = Instant::now();
            let mut report = match TheoremId::from(v.theorem) {
                TheoremId::A => theorems::verify_theorem_a(v.max_order, config)?,
                TheoremId::B => theorems::verify_theorem_b(v.max_order, config)?,
                TheoremId::One => theorems::verify_theorem_1(v.max_order, config)?,
                TheoremId::Two => theorems::verify_theorem_2(v.max_order, v.power, config)?,
                TheoremId::Three => theorems::verify_theorem_3(v.max_order, v.max_exp, config)?,
            };
            report.elapsed = Some(start.elapsed());
            write_report(out, err, &report, v.json)?;
            return Ok(if report.pass() { exit::OK } else { exit::FALSE });
        }
        Command::Explore {
            max_order,
            max_exp,
            json,
        } => {
            let findings = theorems::explore_open_problem(max_order, max_exp)?;
            if json {
                let docs: Vec<FindingDoc> = findings.iter().map(Into::into).collect();
                writeln!(out, "{}", serde_json::to_string(&docs)?)?;
            } else {
                for f in &findings {
                    let powers = |p: &[GroupSignature]| {
                        p.iter()
                            .map(|s| format!("({s})"))
                            .collect::<Vec<_>>()
                            .join(" ")
                    };
                    writeln!(
                        out,
                        "({}) {:?} vs ({}) {:?}: {} | {}",
                        f.left,
                        f.left_exponents,
                        f.right,
                        f.right_exponents,
                        powers(&f.left_powers),
                        powers(&f.right_powers)
                    )?;
                }
                writeln!(err, "{} findings", findings.len())?;
            }
        }
    }
    Ok(exit::OK)
}

/// Parses `args` (program name first) and runs one subcommand, returning
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                exit::USAGE
            } else {
                exit::OK
            };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
