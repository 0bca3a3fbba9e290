//! `uninorm`: build, check and audit uninorm constructions from the shell.
//!
//! Exit codes: 0 when the property holds, 1 when it is violated (a witness is
//! printed), 2 on input or usage errors.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use uninorm_core::constructions::{required_carrier, ConstructionError};
use uninorm_core::gen::{self, component_cases, enumerate_lattices, random_lattice, GenConfig};
use uninorm_core::io::{emit_dot, emit_lattice, emit_table, parse_lattice, parse_table};
use uninorm_core::ops::Argument;
use uninorm_core::verifier::{iff_audit, VerificationReport};
use uninorm_core::{
    canonical_op, check_preconditions, check_uninorm, construct, CanonicalKind, Carrier, ConstructionSpec, ElementId,
    FiniteBoundedLattice, MethodId, OpTable, Role,
};

type L = Arc<FiniteBoundedLattice>;

#[derive(Parser)]
#[command(name = "uninorm", version, about = "Uninorm constructions on finite bounded lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a lattice file and print its size and bounds.
    Check(LatticeArg),
    /// Print I_e and the pair regions D(e), D(e)', E(e), E(e)'.
    Regions(PointArg),
    /// Build a construction and write its table.
    Construct(ConstructArgs),
    /// Check the uninorm axioms on a table file.
    Verify {
        #[command(flatten)]
        point: PointArg,
        #[arg(long)]
        table: PathBuf,
    },
    /// Evaluate the side conditions of a method.
    Conditions(MethodArgs),
    /// Compare the iff conditions with the verifier over enumerated components.
    Audit {
        #[command(flatten)]
        point: PointArg,
        #[arg(long)]
        method: MethodId,
        /// Most operators enumerated per component.
        #[arg(long, default_value_t = 64)]
        cap: usize,
    },
    /// Emit lattices.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Emit the Hasse diagram in DOT.
    Dot(LatticeArg),
}

#[derive(Args)]
struct LatticeArg {
    /// Lattice file, or `builtin:<name>` (L1, L2, M2, N5, chainK, probe_P, ...).
    #[arg(long)]
    lattice: String,
}

#[derive(Args)]
struct PointArg {
    #[command(flatten)]
    lattice: LatticeArg,
    /// Label of the neutral element.
    #[arg(long)]
    e: String,
}

#[derive(Args)]
struct MethodArgs {
    #[command(flatten)]
    point: PointArg,
    #[arg(long)]
    method: MethodId,
    /// t-norm on [0,e]: min|max|drastic|file:<path>
    #[arg(long, default_value = "min")]
    tnorm: String,
    /// t-conorm on [e,1]
    #[arg(long, default_value = "max")]
    tconorm: String,
    /// t-subnorm (on L, or L minus [e,1] for UF)
    #[arg(long, default_value = "min")]
    subnorm: String,
    /// t-subconorm (on L, or L minus [0,e] for UR)
    #[arg(long, default_value = "max")]
    subconorm: String,
    /// Chain for iterative methods, comma separated labels.
    #[arg(long, value_delimiter = ',')]
    chain: Vec<String>,
    /// Operators for the chain blocks after the first; one value is reused for every block.
    #[arg(long, value_delimiter = ',')]
    blocks: Vec<String>,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(flatten)]
    method: MethodArgs,
    /// Skip component classification and condition checks.
    #[arg(long)]
    force: bool,
    /// Write the table here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenCommand {
    /// A random lattice.
    Random {
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Every lattice of the given size, up to isomorphism.
    Enumerate {
        #[arg(long)]
        size: usize,
        /// Write one file per lattice into this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// A built-in lattice.
    Builtin {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// The outcome of a command that completed: did the checked property hold?
type Verdict = bool;

fn load_lattice(arg: &LatticeArg) -> Result<L> {
    let l = match arg.lattice.strip_prefix("builtin:") {
        Some(name) => gen::builtin(name)?,
        None => {
            let text = fs::read_to_string(&arg.lattice).with_context(|| format!("reading {}", arg.lattice))?;
            parse_lattice(&text).with_context(|| format!("parsing {}", arg.lattice))?
        }
    };
    Ok(Arc::new(l))
}

fn element(l: &FiniteBoundedLattice, label: &str) -> Result<ElementId> {
    l.id(label).ok_or_else(|| anyhow!("unknown label `{label}`"))
}

fn load_point(p: &PointArg) -> Result<(L, ElementId)> {
    let l = load_lattice(&p.lattice)?;
    let e = element(&l, &p.e)?;
    Ok((l, e))
}

fn load_table(path: &Path, l: &L) -> Result<OpTable> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_table(&text, l).with_context(|| format!("parsing {}", path.display()))
}

/// Resolves `min|max|drastic|file:<path>` on `carrier`. `norm_like` selects
/// the drastic t-norm rather than the drastic t-conorm.
fn operator(spec: &str, carrier: Carrier, norm_like: bool) -> Result<OpTable> {
    let l = carrier.lattice().clone();
    if let Some(path) = spec.strip_prefix("file:") {
        let op = load_table(Path::new(path), &l)?;
        if op.carrier() != &carrier {
            bail!("{path}: table is on {{{}}}, expected {{{}}}", op.carrier().labels().join(", "), carrier.labels().join(", "));
        }
        return Ok(op);
    }
    let kind = match spec {
        "min" => CanonicalKind::MeetSubnorm,
        "max" => CanonicalKind::JoinSubconorm,
        "drastic" if norm_like => CanonicalKind::DrasticTnorm,
        "drastic" => CanonicalKind::DrasticTconorm,
        other => bail!("unknown operator `{other}` (expected min, max, drastic or file:<path>)"),
    };
    Ok(canonical_op(kind, carrier)?)
}

fn build_spec(a: &MethodArgs) -> Result<ConstructionSpec> {
    let (l, e) = load_point(&a.point)?;
    let m = a.method;
    let mut spec = ConstructionSpec::new(l.clone(), e, m);
    for &role in m.roles() {
        let Some(carrier) = required_carrier(m, role, &l, e) else { continue };
        let (text, norm_like) = match role {
            Role::TNorm => (&a.tnorm, true),
            Role::TConorm => (&a.tconorm, false),
            Role::SubNorm => (&a.subnorm, true),
            Role::SubConorm => (&a.subconorm, false),
            Role::ChainOps => continue,
        };
        let op = operator(text, carrier, norm_like).with_context(|| format!("{role}"))?;
        spec = match role {
            Role::TNorm => spec.tnorm(op),
            Role::TConorm => spec.tconorm(op),
            Role::SubNorm => spec.subnorm(op),
            _ => spec.subconorm(op),
        };
    }
    if m.is_iterative() {
        if a.chain.is_empty() {
            bail!("{m} needs --chain");
        }
        let mut chain = a.chain.iter().map(|s| element(&l, s)).collect::<Result<Vec<_>>>()?;
        let ascending = matches!(m, MethodId::IterS | MethodId::IterJoin);
        if chain.len() >= 2 && l.lt(chain[0], chain[1]) != ascending {
            chain.reverse();
        }
        if m == MethodId::IterS || m == MethodId::IterT {
            let default = if ascending { "max" } else { "min" };
            let blocks = chain.len().saturating_sub(2);
            let mut ops = Vec::with_capacity(blocks);
            for i in 0..blocks {
                let text = match a.blocks.len() {
                    0 => default,
                    1 => a.blocks[0].as_str(),
                    n if n == blocks => a.blocks[i].as_str(),
                    n => bail!("{n} block operators given for {blocks} blocks"),
                };
                let (lo, hi) = if ascending { (chain[i + 1], chain[i + 2]) } else { (chain[i + 2], chain[i + 1]) };
                if !l.leq(lo, hi) {
                    bail!("chain is not a chain at `{}`, `{}`", l.label(chain[i + 1]), l.label(chain[i + 2]));
                }
                ops.push(operator(text, Carrier::interval(l.clone(), lo, hi), !ascending)?);
            }
            spec = spec.chain_ops(ops);
        }
        spec = spec.chain(chain);
    }
    Ok(spec)
}

fn list(l: &FiniteBoundedLattice, xs: impl IntoIterator<Item = ElementId>) -> String {
    let v: Vec<_> = xs.into_iter().map(|x| l.label(x)).collect();
    format!("{{{}}}", v.join(", "))
}

fn pairs<'a>(l: &FiniteBoundedLattice, ps: impl IntoIterator<Item = &'a (ElementId, ElementId)>) -> String {
    let v: Vec<_> = ps.into_iter().map(|&(x, y)| format!("({}, {})", l.label(x), l.label(y))).collect();
    format!("{{{}}}", v.join(", "))
}

fn report_text(l: &FiniteBoundedLattice, r: &VerificationReport) -> String {
    let s = |x| l.label(x);
    let mut out = String::new();
    match r.commutative {
        None => writeln!(out, "commutative: yes"),
        Some((x, y)) => writeln!(out, "commutative: no, U({}, {}) != U({}, {})", s(x), s(y), s(y), s(x)),
    }
    .unwrap();
    match r.associative {
        None => writeln!(out, "associative: yes"),
        Some(w) => writeln!(
            out,
            "associative: no, witness ({}, {}, {}): U({}, U({}, {})) = {} but U(U({}, {}), {}) = {}",
            s(w.x),
            s(w.y),
            s(w.z),
            s(w.x),
            s(w.y),
            s(w.z),
            s(w.left),
            s(w.x),
            s(w.y),
            s(w.z),
            s(w.right)
        ),
    }
    .unwrap();
    match r.monotone {
        None => writeln!(out, "monotone: yes"),
        Some(w) => {
            let (a, b) = match w.argument {
                Argument::First => (format!("U({}, {})", s(w.x), s(w.z)), format!("U({}, {})", s(w.y), s(w.z))),
                Argument::Second => (format!("U({}, {})", s(w.z), s(w.x)), format!("U({}, {})", s(w.z), s(w.y))),
            };
            writeln!(out, "monotone: no, {} <= {} but {a} = {} is not below {b} = {}", s(w.x), s(w.y), s(w.lower), s(w.upper))
        }
    }
    .unwrap();
    match r.neutral {
        None => writeln!(out, "neutral {}: yes", s(r.e)),
        Some(x) => writeln!(out, "neutral {}: no, fails at {}", s(r.e), s(x)),
    }
    .unwrap();
    out.push_str(if r.is_uninorm() { "uninorm\n" } else { "not a uninorm\n" });
    out
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<Verdict> {
    match cli.command {
        Command::Check(arg) => {
            let l = load_lattice(&arg)?;
            println!(
                "{} elements, bottom {}, top {}, {} covers",
                l.len(),
                l.label(l.bottom()),
                l.label(l.top()),
                l.covers().len()
            );
            Ok(true)
        }
        Command::Regions(p) => {
            let (l, e) = load_point(&p)?;
            let r = l.regions(e);
            println!("I_e = {}", list(&l, r.incomparable.iter().copied()));
            println!("D(e) = {}", pairs(&l, &r.d));
            println!("D(e)' = {}", pairs(&l, &r.d_prime));
            println!("E(e) = {}", pairs(&l, &r.e_set));
            println!("E(e)' = {}", pairs(&l, &r.e_prime));
            Ok(true)
        }
        Command::Construct(a) => {
            let spec = build_spec(&a.method)?.force(a.force);
            match construct(&spec) {
                Ok(op) => {
                    write_or_print(a.out.as_deref(), &emit_table(&op))?;
                    Ok(true)
                }
                Err(ConstructionError::PreconditionViolated(r)) => {
                    println!("{} conditions fail: {}", r.method, r.summary());
                    println!("rerun with --force to build the table anyway");
                    Ok(false)
                }
                Err(err) => Err(err.into()),
            }
        }
        Command::Verify { point, table } => {
            let (l, e) = load_point(&point)?;
            let op = load_table(&table, &l)?;
            if !op.carrier().contains(e) {
                bail!("`{}` is not in the table's carrier", l.label(e));
            }
            let r = check_uninorm(&op, e);
            print!("{}", report_text(&l, &r));
            Ok(r.is_uninorm())
        }
        Command::Conditions(a) => {
            let spec = build_spec(&a)?;
            let r = check_preconditions(&spec)?;
            let l = &spec.lattice;
            for c in &r.entries {
                let status = match c.witness {
                    None => "holds".to_string(),
                    Some((x, y)) => format!("fails at ({}, {})", l.label(x), l.label(y)),
                };
                println!("{} ({}): {} -- {status}", c.id, c.required_as, c.id.describe());
            }
            if r.entries.is_empty() {
                println!("{} has no side conditions", r.method);
            }
            Ok(r.all_hold())
        }
        Command::Audit { point, method, cap } => {
            let (l, e) = load_point(&point)?;
            let audit = iff_audit(method, &l, e, component_cases(method, &l, e, cap));
            for c in &audit.cases {
                let conds = if c.conditions_hold {
                    "conditions hold".to_string()
                } else {
                    let ids: Vec<_> = c.failed_conditions.iter().map(|c| c.to_string()).collect();
                    format!("{} fail", ids.join(", "))
                };
                let verdict = if c.is_uninorm { "uninorm" } else { "not a uninorm" };
                let flag = if c.agrees() { "" } else { "  <-- disagreement" };
                println!("{}: {conds}; {verdict}{flag}", c.summary);
            }
            for err in &audit.errors {
                eprintln!("rejected: {err}");
            }
            if audit.skipped > 0 {
                println!("{} component cases skipped (hypothesis fails)", audit.skipped);
            }
            let n = audit.cases.len();
            if audit.iff_respected() {
                println!("iff respected over {n} component cases");
            } else {
                println!("iff violated in {} of {n} component cases", audit.violations().count());
            }
            Ok(audit.iff_respected())
        }
        Command::Gen(g) => {
            match g {
                GenCommand::Random { size, seed, out } => {
                    let l = random_lattice(GenConfig::new(size, seed))?;
                    write_or_print(out.as_deref(), &emit_lattice(&l))?;
                }
                GenCommand::Builtin { name, out } => {
                    write_or_print(out.as_deref(), &emit_lattice(&gen::builtin(&name)?))?;
                }
                GenCommand::Enumerate { size, out_dir } => {
                    let all = enumerate_lattices(size)?;
                    match out_dir {
                        Some(dir) => {
                            fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
                            for (k, l) in all.iter().enumerate() {
                                let p = dir.join(format!("lattice{size}_{k:03}.lat"));
                                write_or_print(Some(&p), &emit_lattice(l))?;
                            }
                            println!("{} lattices written to {}", all.len(), dir.display());
                        }
                        None => {
                            for (k, l) in all.iter().enumerate() {
                                if k > 0 {
                                    println!();
                                }
                                println!("# lattice {k}");
                                print!("{}", emit_lattice(l));
                            }
                        }
                    }
                }
            }
            Ok(true)
        }
        Command::Dot(arg) => {
            let l = load_lattice(&arg)?;
            print!("{}", emit_dot(&l));
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(if err.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
