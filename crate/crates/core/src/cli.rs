//! Command-line front end. [`run`] is pure apart from reading the files
//! named in its arguments, so it can be driven directly from tests.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};

use crate::axioms::{axiom_check, theorem3_report, AxiomError, AxiomKind, FunctionTable};
use crate::bench::{cost_model, render_cost_table, run_bench};
use crate::capacity::{Capacity, SugenoForm};
use crate::lattice::{Lattice, LatticeError, LatticeSpec};
use crate::recognizer::{recognize, Method, RecognizeError, RecognizeOptions};
use crate::relations::{relation_check, relation_region, LVector, RelationKind, Violation};
use crate::suite::{run_suite, Outcome, Scope, SuiteConfig};

/// Exit code for a verdict that holds.
pub const EXIT_HOLDS: i32 = 0;
/// Exit code for a verdict that fails; a witness is printed.
pub const EXIT_FAILS: i32 = 1;
/// Exit code for usage and input errors.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "lattice-sugeno", version, about = "Sugeno integrals and comonotonicity on finite lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct LatticeArg {
    /// chain:<k>, boolean:<m>, prod:<spec>x<spec>, file:<path>, builtin:N5 or builtin:M3
    #[arg(long)]
    lattice: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a lattice, check its laws and report its structure.
    LatticeValidate {
        #[command(flatten)]
        lattice: LatticeArg,
    },
    /// Decide the vector relations between x and y.
    Relations {
        #[command(flatten)]
        lattice: LatticeArg,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        kind: Option<RelationKind>,
    },
    /// List every y related to x.
    Region {
        #[command(flatten)]
        lattice: LatticeArg,
        #[arg(long)]
        x: String,
        #[arg(long)]
        kind: Option<RelationKind>,
    },
    /// Evaluate the Sugeno integral of a capacity file at x.
    Sugeno {
        #[command(flatten)]
        lattice: LatticeArg,
        #[arg(long)]
        capacity: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        form: Option<SugenoForm>,
    },
    /// Check the axioms of a function table.
    Axioms {
        #[command(flatten)]
        lattice: LatticeArg,
        #[arg(long)]
        table: PathBuf,
        /// Check a single axiom instead of the full report.
        #[arg(long)]
        kind: Option<AxiomKind>,
    },
    /// Decide whether a function table is a Sugeno integral.
    Recognize {
        #[command(flatten)]
        lattice: LatticeArg,
        #[arg(long)]
        table: PathBuf,
        #[arg(long, default_value = "boolean")]
        method: Method,
        /// Accept non-distributive lattices (direct comparison, sup-of-meets form).
        #[arg(long)]
        allow_nondistributive: bool,
    },
    /// Run exhaustive verification suites.
    TheoremSuite {
        scope: Scope,
        #[command(flatten)]
        lattice: LatticeArg,
        #[arg(long, default_value_t = 2)]
        arity: usize,
        /// Sample aggregation functions from this seed instead of enumerating them.
        #[arg(long)]
        seed: Option<u64>,
        /// Cap on enumerated vector pairs, or the sample size with --seed.
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Print the pair-count cost table.
    Bench {
        #[command(flatten)]
        lattice: LatticeArg,
        #[arg(long, default_value_t = 2)]
        arity: usize,
        /// Measure on this table instead of the default join integral.
        #[arg(long)]
        table: Option<PathBuf>,
    },
}

/// Failure of a command that is not a verdict.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<(i32, String), UsageError>;

/// Parses `argv` (including the program name) and runs the command.
/// Returns the exit code and the text to print.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (EXIT_HOLDS, e.to_string()),
                _ => {
                    let first = e.to_string().lines().next().unwrap_or("usage error").to_string();
                    (EXIT_USAGE, format!("{first}\n"))
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(result) => result,
        Err(UsageError(msg)) => (EXIT_USAGE, format!("error: {msg}\n")),
    }
}

fn load_lattice(arg: &LatticeArg) -> Result<Arc<Lattice>, UsageError> {
    Ok(Arc::new(LatticeSpec::parse(&arg.lattice)?.build()?))
}

fn read(path: &Path) -> Result<String, UsageError> {
    std::fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn load_table(l: &Arc<Lattice>, path: &Path) -> Result<FunctionTable, UsageError> {
    let text = read(path)?;
    FunctionTable::parse_file(l.clone(), &text)
        .map(|(_, f)| f)
        .map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn verdict_code(holds: bool) -> i32 {
    if holds {
        EXIT_HOLDS
    } else {
        EXIT_FAILS
    }
}

fn dispatch(command: Command) -> CmdResult {
    match command {
        Command::LatticeValidate { lattice } => lattice_validate(&lattice),
        Command::Relations { lattice, x, y, kind } => relations(&lattice, &x, &y, kind),
        Command::Region { lattice, x, kind } => region(&lattice, &x, kind),
        Command::Sugeno { lattice, capacity, x, form } => sugeno(&lattice, &capacity, &x, form),
        Command::Axioms { lattice, table, kind } => axioms(&lattice, &table, kind),
        Command::Recognize { lattice, table, method, allow_nondistributive } => {
            let l = load_lattice(&lattice)?;
            let f = load_table(&l, &table)?;
            let result = match recognize(&f, RecognizeOptions { method, allow_nondistributive }) {
                Ok(r) => r,
                Err(RecognizeError::NotAggregation(w)) => {
                    return Ok((EXIT_FAILS, format!("not_sugeno\nnot an aggregation function: {w}\n")));
                }
                Err(e) => return Err(e.into()),
            };
            Ok((verdict_code(result.is_sugeno()), result.render(&f)))
        }
        Command::TheoremSuite { scope, lattice, arity, seed, limit } => {
            theorem_suite(scope, &lattice, arity, seed, limit)
        }
        Command::Bench { lattice, arity, table } => bench(&lattice, arity, table.as_deref()),
    }
}

fn lattice_validate(arg: &LatticeArg) -> CmdResult {
    let spec = LatticeSpec::parse(&arg.lattice)?;
    let l = match spec.build() {
        Ok(l) => l,
        Err(
            e @ (LatticeError::CyclicOrder(_)
            | LatticeError::NoBounds { .. }
            | LatticeError::NotALattice { .. }
            | LatticeError::LawViolation(_)),
        ) => return Ok((EXIT_FAILS, format!("invalid: {e}\n"))),
        Err(e) => return Err(e.into()),
    };
    let mut out = String::new();
    let _ = writeln!(out, "lattice {}: valid", l.name());
    let _ = writeln!(out, "elements: {}", l.size());
    let _ = writeln!(out, "bottom: {}  top: {}", l.element_name(l.bottom()), l.element_name(l.top()));
    let _ = writeln!(out, "chain: {}", l.is_chain());
    let _ = writeln!(out, "distributive: {}", l.is_distributive());
    if let Some((a, b, c)) = l.distributivity_violation() {
        let n = |e| l.element_name(e);
        let _ = writeln!(out, "violating triple: x={} y={} z={}", n(a), n(b), n(c));
    }
    match l.birkhoff() {
        Ok(form) => {
            let names: Vec<&str> = form.join_irreducibles().iter().map(|&j| l.element_name(j)).collect();
            let _ = writeln!(out, "join-irreducibles: {}", names.join(" "));
        }
        Err(_) => {
            if let Some((kind, _)) = l.forbidden_sublattice() {
                let _ = writeln!(out, "forbidden sublattice: {kind:?}");
            }
        }
    }
    Ok((EXIT_HOLDS, out))
}

fn relations(arg: &LatticeArg, x: &str, y: &str, kind: Option<RelationKind>) -> CmdResult {
    let l = load_lattice(arg)?;
    let x = LVector::parse(l.clone(), x)?;
    let y = LVector::parse(l, y)?;
    let kinds: Vec<RelationKind> = kind.map_or_else(|| RelationKind::ALL.to_vec(), |k| vec![k]);
    let mut out = String::new();
    let mut all_hold = true;
    for k in kinds {
        let v = relation_check(&x, &y, k)?;
        all_hold &= v.holds();
        let _ = write!(out, "{}: {}", k.name(), v.holds());
        match v.witness {
            Some(Violation::Pair(i, j)) => {
                let _ = write!(out, " (witness coordinates {} and {})", i + 1, j + 1);
            }
            Some(Violation::Subset(s)) => {
                let _ = write!(out, " (witness subset {s})");
            }
            None => {}
        }
        out.push('\n');
    }
    let code = if kind.is_some() { verdict_code(all_hold) } else { EXIT_HOLDS };
    Ok((code, out))
}

fn region(arg: &LatticeArg, x: &str, kind: Option<RelationKind>) -> CmdResult {
    let l = load_lattice(arg)?;
    let x = LVector::parse(l, x)?;
    let mut out = String::new();
    match kind {
        Some(k) => {
            let members = relation_region(&x, k)?;
            let _ = writeln!(out, "{}: {} vectors", k.name(), members.len());
            for y in members {
                let _ = writeln!(out, "{y}");
            }
        }
        None => {
            for k in [RelationKind::Comonotone, RelationKind::Comparable, RelationKind::GComonotone] {
                let _ = writeln!(out, "{}: {} vectors", k.name(), relation_region(&x, k)?.len());
            }
        }
    }
    Ok((EXIT_HOLDS, out))
}

fn sugeno(arg: &LatticeArg, path: &Path, x: &str, form: Option<SugenoForm>) -> CmdResult {
    let l = load_lattice(arg)?;
    let (_, m) =
        Capacity::parse_file(l.clone(), &read(path)?).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    let x = LVector::parse(l.clone(), x)?;
    let mut out = String::new();
    let forms: Vec<SugenoForm> = form.map_or_else(|| SugenoForm::BOTH.to_vec(), |f| vec![f]);
    let values: Vec<_> = forms.iter().map(|&f| m.sugeno(&x, f)).collect::<Result<_, _>>()?;
    for (f, v) in forms.iter().zip(&values) {
        let _ = writeln!(out, "{}: {}", f.name(), l.element_name(*v));
    }
    if values.len() == 2 {
        let agree = values[0] == values[1];
        let _ = writeln!(out, "forms agree: {agree}");
        return Ok((verdict_code(agree), out));
    }
    Ok((EXIT_HOLDS, out))
}

fn axioms(arg: &LatticeArg, path: &Path, kind: Option<AxiomKind>) -> CmdResult {
    let l = load_lattice(arg)?;
    let f = load_table(&l, path)?;
    if let Some(k) = kind {
        let v = axiom_check(&f, k);
        let mut out = format!("{k}: {} (pairs_checked {})", v.holds(), v.pairs_checked);
        if let Some(w) = &v.witness {
            let _ = write!(out, " witness {}", w.render(&l));
        }
        out.push('\n');
        return Ok((verdict_code(v.holds()), out));
    }
    match theorem3_report(&f) {
        Ok(report) => Ok((verdict_code(report.theorem3_consistent), report.render(&l))),
        Err(AxiomError::NotAggregation(w)) => Ok((EXIT_FAILS, format!("monotone-boundary: false witness {w}\n"))),
        Err(e) => Err(e.into()),
    }
}

/// Sample size for `theorem-suite --seed` when no `--limit` is given.
const DEFAULT_SAMPLE: usize = 1000;

fn theorem_suite(scope: Scope, arg: &LatticeArg, arity: usize, seed: Option<u64>, limit: Option<u64>) -> CmdResult {
    let l = load_lattice(arg)?;
    let mut config = SuiteConfig::new(l, arity);
    match (seed, limit) {
        (Some(seed), limit) => {
            config.sample = Some((seed, limit.map_or(DEFAULT_SAMPLE, |n| n as usize)));
        }
        (None, Some(limit)) => config.pair_limit = limit as u128,
        (None, None) => {}
    }
    let results = run_suite(scope, &config)?;
    let mut out = String::new();
    if let Some((seed, count)) = config.sample {
        let _ = writeln!(out, "sampling {count} aggregation functions with seed {seed}");
    }
    for r in &results {
        out.push_str(&r.render());
    }
    let failed = results.iter().any(|r| r.outcome == Outcome::Fail);
    Ok((verdict_code(!failed), out))
}

fn bench(arg: &LatticeArg, arity: usize, table: Option<&Path>) -> CmdResult {
    let l = load_lattice(arg)?;
    let f = match table {
        Some(path) => load_table(&l, path)?,
        None => {
            let values = (0..1usize << arity).map(|s| if s == 0 { l.bottom() } else { l.top() }).collect();
            let m = Capacity::validate(l.clone(), arity, values)?;
            FunctionTable::of_capacity(&m, SugenoForm::SupOfMeets)
        }
    };
    let analytic = cost_model(&l, f.arity());
    let measured = run_bench(&f);
    let matches = measured.boolean_hom_pairs == analytic.boolean_hom_pairs
        && measured.full_hom_pairs == analytic.full_hom_pairs
        && measured.reduction_factor() == analytic.expected_factor();
    let mut out = render_cost_table(&[measured]);
    let _ = writeln!(out, "measured counts match the analytic model: {matches}");
    Ok((verdict_code(matches), out))
}
