//! Deciding whether a tabulated function is a Sugeno integral, and
//! recovering its capacity from the values at characteristic vectors.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::axioms::{axiom_check, AxiomKind, AxiomWitness, FunctionTable};
use crate::capacity::{Capacity, CapacityError, SugenoForm};
use crate::lattice::Elem;
use crate::relations::format_coords;
use crate::subset::IndexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecognizeError {
    #[error("not an aggregation function: {0}")]
    NotAggregation(String),
    #[error("lattice `{0}` is not distributive; recognition is only defined on distributive lattices")]
    NotDistributive(String),
    #[error(transparent)]
    Capacity(#[from] CapacityError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    BooleanHomogeneity,
    DirectComparison,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::BooleanHomogeneity => "boolean-homogeneity",
            Method::DirectComparison => "direct-comparison",
        }
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.replace('_', "-").as_str() {
            "boolean" | "boolean-homogeneity" => Ok(Method::BooleanHomogeneity),
            "direct" | "direct-comparison" => Ok(Method::DirectComparison),
            other => Err(format!("unknown method `{other}` (expected boolean or direct)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RecognizeOptions {
    pub method: Method,
    /// Accept non-distributive lattices, comparing against the
    /// sup-of-meets form only.
    pub allow_nondistributive: bool,
}

impl From<Method> for RecognizeOptions {
    fn from(method: Method) -> Self {
        RecognizeOptions { method, allow_nondistributive: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Inf,
    Sup,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refutation {
    /// `f(c ∧ x) ≠ c ∧ f(x)` (or the join version) for a Boolean `x`.
    BooleanHomogeneity { side: Side, c: Elem, x: Vec<Elem> },
    /// `f(x)` differs from the integral of the recovered capacity.
    Disagreement { x: Vec<Elem>, value: Elem, sugeno: Elem },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Sugeno(Capacity),
    NotSugeno(Refutation),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecognitionResult {
    pub verdict: Verdict,
    pub method: Method,
    /// Homogeneity identities evaluated (Boolean method only).
    pub pairs_checked: u64,
    /// Points at which `f` was compared with the recovered integral.
    pub points_compared: u64,
}

impl RecognitionResult {
    pub fn is_sugeno(&self) -> bool {
        matches!(self.verdict, Verdict::Sugeno(_))
    }

    pub fn capacity(&self) -> Option<&Capacity> {
        match &self.verdict {
            Verdict::Sugeno(m) => Some(m),
            Verdict::NotSugeno(_) => None,
        }
    }

    /// Verdict line, capacity or witness block, then the counters.
    pub fn render(&self, f: &FunctionTable) -> String {
        let mut out = String::new();
        match &self.verdict {
            Verdict::Sugeno(m) => {
                out.push_str("sugeno\n");
                out.push_str(&m.to_file_string("recovered"));
            }
            Verdict::NotSugeno(r) => {
                out.push_str("not_sugeno\n");
                let _ = writeln!(out, "witness: {}", render_refutation(f, r));
            }
        }
        let _ = writeln!(out, "method: {}", self.method.name());
        let _ = writeln!(out, "pairs_checked: {}", self.pairs_checked);
        let _ = writeln!(out, "points_compared: {}", self.points_compared);
        out
    }
}

fn render_refutation(f: &FunctionTable, r: &Refutation) -> String {
    let l = &**f.lattice();
    let name = |e: Elem| l.element_name(e).to_string();
    match r {
        Refutation::BooleanHomogeneity { side, c, x } => {
            let (label, sym) = match side {
                Side::Inf => ("boolean-inf-homogeneity", "∧"),
                Side::Sup => ("boolean-sup-homogeneity", "∨"),
            };
            let op = |a, b| if *side == Side::Inf { l.meet(a, b) } else { l.join(a, b) };
            let shifted: Vec<Elem> = x.iter().map(|&xi| op(*c, xi)).collect();
            format!(
                "{label} c={} x={}: f(c{sym}x) = {} but c{sym}f(x) = {}",
                name(*c),
                format_coords(l, x),
                name(f.value(&shifted)),
                name(op(*c, f.value(x)))
            )
        }
        Refutation::Disagreement { x, value, sugeno } => format!(
            "disagreement x={}: f(x) = {} but the recovered integral gives {}",
            format_coords(l, x),
            name(*value),
            name(*sugeno)
        ),
    }
}

fn require_aggregation(f: &FunctionTable) -> Result<(), RecognizeError> {
    match axiom_check(f, AxiomKind::MonotoneBoundary).witness {
        Some(w) => Err(RecognizeError::NotAggregation(w.render(f.lattice()))),
        None => Ok(()),
    }
}

/// `m(I) = f(1_I)`, where `1_I` is top on `I` and bottom elsewhere.
pub fn recover_capacity(f: &FunctionTable) -> Result<Capacity, RecognizeError> {
    require_aggregation(f)?;
    let l = f.lattice();
    let n = f.arity();
    let values = IndexSet::all(n)
        .map(|s| {
            let x: Vec<Elem> = (0..n).map(|i| if s.contains(i) { l.top() } else { l.bottom() }).collect();
            f.value(&x)
        })
        .collect();
    Ok(Capacity::validate(l.clone(), n, values)?)
}

/// First point where `f` differs from the integral of `m`, scanning every
/// point. On distributive lattices both forms must match; otherwise only
/// the sup-of-meets form.
fn first_disagreement(f: &FunctionTable, m: &Capacity, both_forms: bool) -> (Option<Refutation>, u64) {
    let mut first = None;
    let mut count = 0;
    for (i, x) in f.domain().points().enumerate() {
        count += 1;
        let value = f.value_at(i);
        let sup = m.eval(&x, SugenoForm::SupOfMeets);
        let inf_ok = !both_forms || m.eval(&x, SugenoForm::InfOfJoins) == value;
        if (value != sup || !inf_ok) && first.is_none() {
            first = Some(Refutation::Disagreement { x, value, sugeno: sup });
        }
    }
    (first, count)
}

pub fn recognize(f: &FunctionTable, options: impl Into<RecognizeOptions>) -> Result<RecognitionResult, RecognizeError> {
    let options = options.into();
    let l = f.lattice();
    let distributive = l.is_distributive();
    if !distributive && !options.allow_nondistributive {
        return Err(RecognizeError::NotDistributive(l.name().to_string()));
    }
    require_aggregation(f)?;
    let mut pairs_checked = 0;
    if options.method == Method::BooleanHomogeneity && distributive {
        let inf = axiom_check(f, AxiomKind::BooleanInfHomogeneous);
        let sup = axiom_check(f, AxiomKind::BooleanSupHomogeneous);
        pairs_checked = inf.pairs_checked + sup.pairs_checked;
        let failure =
            [(Side::Inf, inf.witness), (Side::Sup, sup.witness)].into_iter().find_map(|(side, w)| w.map(|w| (side, w)));
        if let Some((side, AxiomWitness::Constant { c, x })) = failure {
            return Ok(RecognitionResult {
                verdict: Verdict::NotSugeno(Refutation::BooleanHomogeneity { side, c, x }),
                method: options.method,
                pairs_checked,
                points_compared: 0,
            });
        }
    }
    let m = recover_capacity(f)?;
    let (disagreement, points_compared) = first_disagreement(f, &m, distributive);
    let verdict = match disagreement {
        Some(r) => Verdict::NotSugeno(r),
        None => Verdict::Sugeno(m),
    };
    let method = if distributive { options.method } else { Method::DirectComparison };
    Ok(RecognitionResult { verdict, method, pairs_checked, points_compared })
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Inf => "inf",
            Side::Sup => "sup",
        })
    }
}
