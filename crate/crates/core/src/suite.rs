//! Exhaustive verification suites over one lattice and arity.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::axioms::{enumerate_aggregations, theorem3_report, AggregationEnumeration, AxiomError, Condition};
use crate::lattice::{Elem, Lattice};
use crate::recognizer::{recognize, Method, RecognizeError};
use crate::relations::{check_coords, format_coords, RelationKind};
use crate::subset::{saturating_count, Domain, MAX_ARITY};

/// Default cap on the number of vector pairs a suite may visit.
pub const DEFAULT_PAIR_LIMIT: u128 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SuiteError {
    #[error("arity must be between 1 and {MAX_ARITY}")]
    BadArity,
    #[error("enumeration of {cases} cases exceeds the limit of {limit}")]
    EnumerationTooLarge { cases: u128, limit: u128 },
    #[error("{0}")]
    NotApplicable(String),
    #[error(transparent)]
    Axiom(#[from] AxiomError),
    #[error(transparent)]
    Recognize(#[from] RecognizeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Thm1,
    Thm2,
    Thm3,
    Prop1,
    Example1,
    All,
}

impl Scope {
    pub const SINGLE: [Scope; 5] = [Scope::Thm1, Scope::Thm2, Scope::Thm3, Scope::Prop1, Scope::Example1];

    pub fn name(self) -> &'static str {
        match self {
            Scope::Thm1 => "thm1",
            Scope::Thm2 => "thm2",
            Scope::Thm3 => "thm3",
            Scope::Prop1 => "prop1",
            Scope::Example1 => "example1",
            Scope::All => "all",
        }
    }
}

impl FromStr for Scope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Scope::SINGLE
            .into_iter()
            .chain([Scope::All])
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown scope `{s}` (expected thm1, thm2, thm3, prop1, example1 or all)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    /// A finding that is recorded rather than judged, such as behavior on
    /// non-distributive lattices.
    Info,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "FAIL",
            Outcome::Info => "info",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub scope: Scope,
    pub outcome: Outcome,
    pub cases: u64,
    pub summary: String,
    pub witness: Option<String>,
}

impl SuiteResult {
    pub fn render(&self) -> String {
        let mut out = format!("{}: {} ({})\n", self.scope.name(), self.outcome, self.summary);
        if let Some(w) = &self.witness {
            let _ = writeln!(out, "  witness: {w}");
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub lattice: Arc<Lattice>,
    pub arity: usize,
    /// Cap on vector pairs for the pair-based suites.
    pub pair_limit: u128,
    /// Cap on `|L|^n` for aggregation enumeration.
    pub max_points: usize,
    /// Draw `(seed, count)` random aggregation functions instead of
    /// enumerating all of them.
    pub sample: Option<(u64, usize)>,
}

impl SuiteConfig {
    pub fn new(lattice: Arc<Lattice>, arity: usize) -> Self {
        SuiteConfig {
            lattice,
            arity,
            pair_limit: DEFAULT_PAIR_LIMIT,
            max_points: crate::axioms::EXHAUSTIVE_DOMAIN_LIMIT,
            sample: None,
        }
    }

    fn domain(&self) -> Result<Domain, SuiteError> {
        if self.arity == 0 || self.arity > MAX_ARITY {
            return Err(SuiteError::BadArity);
        }
        let cases = saturating_count(self.lattice.size(), 2 * self.arity);
        if cases > self.pair_limit {
            return Err(SuiteError::EnumerationTooLarge { cases, limit: self.pair_limit });
        }
        Ok(Domain::new(self.lattice.size(), self.arity).expect("guarded above"))
    }

    fn pair_witness(&self, x: &[Elem], y: &[Elem]) -> String {
        format!("x={} y={}", format_coords(&self.lattice, x), format_coords(&self.lattice, y))
    }
}

/// Runs one suite, or every applicable suite for [`Scope::All`]. With
/// `All`, suites that do not apply to the lattice are reported as info.
pub fn run_suite(scope: Scope, config: &SuiteConfig) -> Result<Vec<SuiteResult>, SuiteError> {
    if scope != Scope::All {
        return Ok(vec![run_single(scope, config)?]);
    }
    Scope::SINGLE
        .iter()
        .map(|&s| match run_single(s, config) {
            Err(
                e @ (SuiteError::NotApplicable(_)
                | SuiteError::EnumerationTooLarge { .. }
                | SuiteError::Axiom(AxiomError::EnumerationTooLarge { .. })),
            ) => Ok(SuiteResult {
                scope: s,
                outcome: Outcome::Info,
                cases: 0,
                summary: format!("skipped: {e}"),
                witness: None,
            }),
            other => other,
        })
        .collect()
}

fn run_single(scope: Scope, config: &SuiteConfig) -> Result<SuiteResult, SuiteError> {
    match scope {
        Scope::Thm1 => self_duality(config),
        Scope::Thm2 => four_conditions(config),
        Scope::Thm3 => characterization(config),
        Scope::Prop1 => chain_characterization(config),
        Scope::Example1 => region_closure(config),
        Scope::All => unreachable!("handled by run_suite"),
    }
}

/// Iterates every ordered pair `(x, y)` of `L^n`.
fn for_each_pair(domain: Domain, mut visit: impl FnMut(&[Elem], &[Elem])) -> u64 {
    let points: Vec<Vec<Elem>> = domain.points().collect();
    let mut count = 0;
    for x in &points {
        for y in &points {
            visit(x, y);
            count += 1;
        }
    }
    count
}

fn self_duality(config: &SuiteConfig) -> Result<SuiteResult, SuiteError> {
    let l = &*config.lattice;
    let mut divergent = 0u64;
    let mut first = None;
    let cases = for_each_pair(config.domain()?, |x, y| {
        let g = check_coords(l, x, y, RelationKind::GComonotone).is_none();
        let d = check_coords(l, x, y, RelationKind::DualGComonotone).is_none();
        if g != d {
            divergent += 1;
            first.get_or_insert_with(|| format!("{} (g-comonotone {g}, dual {d})", config.pair_witness(x, y)));
        }
    });
    let outcome = match (l.is_distributive(), divergent) {
        (true, 0) => Outcome::Pass,
        (true, _) => Outcome::Fail,
        (false, _) => Outcome::Info,
    };
    let summary = format!("{cases} vector pairs checked, {divergent} where the relation and its dual differ");
    Ok(SuiteResult { scope: Scope::Thm1, outcome, cases, summary, witness: first })
}

fn four_conditions(config: &SuiteConfig) -> Result<SuiteResult, SuiteError> {
    let l = &*config.lattice;
    let kinds = [
        RelationKind::GComonotone,
        RelationKind::DualGComonotone,
        RelationKind::SubsetwiseJoin,
        RelationKind::SubsetwiseMeet,
    ];
    let mut disagreements = 0u64;
    let mut first = None;
    let cases = for_each_pair(config.domain()?, |x, y| {
        let verdicts = kinds.map(|k| check_coords(l, x, y, k).is_none());
        if verdicts.iter().any(|&v| v != verdicts[0]) {
            disagreements += 1;
            first.get_or_insert_with(|| {
                let detail: Vec<String> =
                    kinds.iter().zip(verdicts).map(|(k, v)| format!("{}={v}", k.name())).collect();
                format!("{} ({})", config.pair_witness(x, y), detail.join(", "))
            });
        }
    });
    let outcome = match (l.is_distributive(), disagreements) {
        (true, 0) => Outcome::Pass,
        (true, _) => Outcome::Fail,
        (false, _) => Outcome::Info,
    };
    let summary = format!("{cases} vector pairs checked, {disagreements} where the four conditions disagree");
    Ok(SuiteResult { scope: Scope::Thm2, outcome, cases, summary, witness: first })
}

fn require_distributive(config: &SuiteConfig) -> Result<(), SuiteError> {
    if config.lattice.is_distributive() {
        Ok(())
    } else {
        Err(SuiteError::NotApplicable(format!("lattice `{}` is not distributive", config.lattice.name())))
    }
}

fn aggregations(config: &SuiteConfig) -> Result<Box<dyn Iterator<Item = crate::axioms::FunctionTable>>, SuiteError> {
    let mode = match config.sample {
        Some((seed, count)) => AggregationEnumeration::Sample { seed, count },
        None => AggregationEnumeration::Exhaustive { max_points: config.max_points },
    };
    Ok(enumerate_aggregations(config.lattice.clone(), config.arity, mode)?)
}

fn characterization(config: &SuiteConfig) -> Result<SuiteResult, SuiteError> {
    require_distributive(config)?;
    let l = &*config.lattice;
    let mut cases = 0u64;
    let mut sugeno = 0u64;
    let mut all_conditions = 0u64;
    let mut inconsistent = 0u64;
    let mut first = None;
    for f in aggregations(config)? {
        cases += 1;
        let report = theorem3_report(&f)?;
        let is_sugeno = recognize(&f, Method::BooleanHomogeneity)?.is_sugeno();
        sugeno += u64::from(is_sugeno);
        let agree_with_sugeno = report.conditions.iter().all(|&(_, holds)| holds == is_sugeno);
        if report.conditions.iter().all(|&(_, holds)| holds) {
            all_conditions += 1;
        }
        if !agree_with_sugeno {
            inconsistent += 1;
            first.get_or_insert_with(|| {
                let points: Vec<String> = f
                    .domain()
                    .points()
                    .enumerate()
                    .map(|(i, x)| format!("{}->{}", format_coords(l, &x), l.element_name(f.value_at(i))))
                    .collect();
                let held: Vec<&str> = report.conditions.iter().filter(|(_, h)| *h).map(|(c, _)| c.label()).collect();
                format!(
                    "f = [{}] is {}a Sugeno integral; conditions holding: {}",
                    points.join(" "),
                    if is_sugeno { "" } else { "not " },
                    if held.is_empty() { "none".to_string() } else { held.join(" ") }
                )
            });
        }
    }
    let outcome = if inconsistent == 0 { Outcome::Pass } else { Outcome::Fail };
    let summary = format!(
        "{cases} aggregation functions, {sugeno} Sugeno integrals identified, \
         {all_conditions} satisfy all seven conditions, {inconsistent} where the conditions (ii)-(viii) \
         and the Sugeno verdict do not all agree"
    );
    Ok(SuiteResult { scope: Scope::Thm3, outcome, cases, summary, witness: first })
}

fn chain_characterization(config: &SuiteConfig) -> Result<SuiteResult, SuiteError> {
    if !config.lattice.is_chain() {
        return Err(SuiteError::NotApplicable(format!("lattice `{}` is not a chain", config.lattice.name())));
    }
    let mut cases = 0u64;
    let mut selected = 0u64;
    let mut mismatches = 0u64;
    let mut first = None;
    for f in aggregations(config)? {
        cases += 1;
        let report = theorem3_report(&f)?;
        let is_sugeno = recognize(&f, Method::BooleanHomogeneity)?.is_sugeno();
        let (iv, v) = (report.condition(Condition::IV), report.condition(Condition::V));
        selected += u64::from(iv);
        if iv != is_sugeno || v != is_sugeno {
            mismatches += 1;
            first.get_or_insert_with(|| format!("table {:?}: sugeno={is_sugeno} (iv)={iv} (v)={v}", f.values()));
        }
    }
    let outcome = if mismatches == 0 { Outcome::Pass } else { Outcome::Fail };
    let summary = format!(
        "{cases} aggregation functions, {selected} comonotone maxitive and min-homogeneous, {mismatches} mismatches"
    );
    Ok(SuiteResult { scope: Scope::Prop1, outcome, cases, summary, witness: first })
}

fn region_closure(config: &SuiteConfig) -> Result<SuiteResult, SuiteError> {
    let l = &*config.lattice;
    if config.arity < 2 {
        return Err(SuiteError::NotApplicable("region closure needs arity at least 2".into()));
    }
    let mut strict = 0u64;
    let mut missing = 0u64;
    let mut first_strict = None;
    let mut first_missing = None;
    let cases = for_each_pair(config.domain()?, |x, y| {
        let a = check_coords(l, x, y, RelationKind::Comonotone).is_none();
        let b = check_coords(l, x, y, RelationKind::Comparable).is_none();
        let c = check_coords(l, x, y, RelationKind::GComonotone).is_none();
        if c && !(a || b) {
            strict += 1;
            first_strict.get_or_insert_with(|| config.pair_witness(x, y));
        }
        if (a || b) && !c {
            missing += 1;
            first_missing.get_or_insert_with(|| config.pair_witness(x, y));
        }
    });
    let expect_equality = l.is_chain() && config.arity == 2;
    let outcome = if missing > 0 {
        Outcome::Fail
    } else if expect_equality {
        if strict == 0 {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    } else {
        Outcome::Info
    };
    let summary = format!(
        "{cases} vector pairs checked, {strict} in C(x) outside A(x) ∪ B(x), {missing} in A(x) ∪ B(x) outside C(x)"
    );
    let witness = first_missing.or(first_strict);
    Ok(SuiteResult { scope: Scope::Example1, outcome, cases, summary, witness })
}
