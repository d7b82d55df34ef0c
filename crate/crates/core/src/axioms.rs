//! Function tables `L^n -> L` and the homogeneity and supremality axioms
//! that characterize Sugeno integrals.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::capacity::{Capacity, SugenoForm};
use crate::enumerate::MonotoneProblem;
use crate::lattice::{Elem, Lattice, LatticeError};
use crate::relations::{check_coords, format_coords, parse_coords, RelationKind};
use crate::subset::{saturating_count, Domain, MAX_ARITY};

/// Largest domain `|L|^n` a table may have.
pub const TABLE_LIMIT: u128 = 10_000_000;

/// Largest domain `|L|^n` accepted by exhaustive aggregation enumeration.
pub const EXHAUSTIVE_DOMAIN_LIMIT: usize = 9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AxiomError {
    #[error("arity must be between 1 and {MAX_ARITY}")]
    BadArity,
    #[error("table over {lattice} with arity {arity} would have {cases} entries (limit {limit})")]
    TooLarge { lattice: String, arity: usize, cases: u128, limit: u128 },
    #[error("table needs {expected} entries, got {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("lattice mismatch: `{0}` vs `{1}`")]
    LatticeMismatch(String, String),
    #[error("not an aggregation function: {0}")]
    NotAggregation(String),
    #[error("enumeration over a domain of {cases} points exceeds the limit of {limit}")]
    EnumerationTooLarge { cases: u128, limit: u128 },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// An explicit map `f: L^n -> L`, stored in mixed-radix order with the
/// first coordinate most significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionTable {
    lattice: Arc<Lattice>,
    domain: Domain,
    values: Vec<Elem>,
}

fn domain_for(lattice: &Lattice, arity: usize) -> Result<Domain, AxiomError> {
    if arity == 0 || arity > MAX_ARITY {
        return Err(AxiomError::BadArity);
    }
    let cases = saturating_count(lattice.size(), arity);
    if cases > TABLE_LIMIT {
        return Err(AxiomError::TooLarge { lattice: lattice.name().to_string(), arity, cases, limit: TABLE_LIMIT });
    }
    Ok(Domain::new(lattice.size(), arity).expect("guarded above"))
}

impl FunctionTable {
    pub fn new(lattice: Arc<Lattice>, arity: usize, values: Vec<Elem>) -> Result<Self, AxiomError> {
        let domain = domain_for(&lattice, arity)?;
        if values.len() != domain.len() {
            return Err(AxiomError::WrongLength { expected: domain.len(), found: values.len() });
        }
        for &v in &values {
            lattice.check_elem(v)?;
        }
        Ok(FunctionTable { lattice, domain, values })
    }

    /// Tabulates `f` over every point of `L^arity`.
    pub fn from_fn(
        lattice: Arc<Lattice>,
        arity: usize,
        mut f: impl FnMut(&[Elem]) -> Elem,
    ) -> Result<Self, AxiomError> {
        let domain = domain_for(&lattice, arity)?;
        let values = domain.points().map(|x| f(&x)).collect();
        FunctionTable::new(lattice, arity, values)
    }

    /// The Sugeno integral of `m` in the chosen form.
    pub fn of_capacity(m: &Capacity, form: SugenoForm) -> Self {
        FunctionTable::from_fn(m.lattice().clone(), m.arity(), |x| m.eval(x, form))
            .expect("capacity arity is within table limits")
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn arity(&self) -> usize {
        self.domain.arity()
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn value(&self, x: &[Elem]) -> Elem {
        self.values[self.domain.encode(x)]
    }

    pub fn value_at(&self, index: usize) -> Elem {
        self.values[index]
    }

    pub fn to_file_string(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "table {name} over {} arity {}", self.lattice.name(), self.arity());
        for (i, x) in self.domain.points().enumerate() {
            let _ =
                writeln!(out, "{} -> {}", format_coords(&self.lattice, &x), self.lattice.element_name(self.values[i]));
        }
        out
    }

    /// Parses the table file format; every point of `L^n` must appear once.
    pub fn parse_file(lattice: Arc<Lattice>, text: &str) -> Result<(String, Self), AxiomError> {
        let err = |line: usize, msg: String| AxiomError::Parse { line, msg };
        let mut header: Option<(String, Domain)> = None;
        let mut entries: Vec<Option<Elem>> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = crate::lattice::strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            match &header {
                None => {
                    let words: Vec<&str> = line.split_whitespace().collect();
                    let ["table", name, "over", lat, "arity", n] = words.as_slice() else {
                        return Err(err(
                            line_no,
                            format!("expected `table <name> over <lattice> arity <n>`, found `{line}`"),
                        ));
                    };
                    if *lat != lattice.name() {
                        return Err(AxiomError::LatticeMismatch(lat.to_string(), lattice.name().to_string()));
                    }
                    let n: usize = n.parse().map_err(|_| err(line_no, format!("bad arity `{n}`")))?;
                    let domain = domain_for(&lattice, n)?;
                    entries = vec![None; domain.len()];
                    header = Some((name.to_string(), domain));
                }
                Some((_, domain)) => {
                    let (point_txt, elem_txt) = line
                        .split_once("->")
                        .ok_or_else(|| err(line_no, format!("expected `(x1,...,xn) -> <elem>`, found `{line}`")))?;
                    let point = parse_coords(&lattice, point_txt).map_err(|e| err(line_no, e.to_string()))?;
                    if point.len() != domain.arity() {
                        return Err(err(line_no, format!("point `{}` has the wrong arity", point_txt.trim())));
                    }
                    let elem = lattice
                        .element(elem_txt.trim())
                        .map_err(|_| err(line_no, format!("unknown element `{}`", elem_txt.trim())))?;
                    let slot = &mut entries[domain.encode(&point)];
                    if slot.is_some() {
                        return Err(err(line_no, format!("duplicate entry for {}", point_txt.trim())));
                    }
                    *slot = Some(elem);
                }
            }
        }
        let (name, domain) = header.ok_or_else(|| err(1, "missing table header".into()))?;
        let last = text.lines().count();
        let values = entries
            .iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| err(last, format!("missing entry for {}", format_coords(&lattice, &domain.decode(i)))))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let arity = domain.arity();
        Ok((name, FunctionTable::new(lattice, arity, values)?))
    }

    /// Points that differ from `x` in one coordinate, lowered by one cover.
    fn lower_neighbors(&self, x: &[Elem]) -> Vec<usize> {
        let mut out = Vec::new();
        let mut y = x.to_vec();
        for i in 0..x.len() {
            for c in self.lattice.lower_covers(x[i]) {
                y[i] = c;
                out.push(self.domain.encode(&y));
            }
            y[i] = x[i];
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AxiomKind {
    MonotoneBoundary,
    Idempotent,
    InfHomogeneous,
    SupHomogeneous,
    BooleanInfHomogeneous,
    BooleanSupHomogeneous,
    ComonotoneSupremal,
    ComonotoneInfimal,
    GComonotoneSupremal,
    GComonotoneInfimal,
}

impl AxiomKind {
    pub const ALL: [AxiomKind; 10] = [
        AxiomKind::MonotoneBoundary,
        AxiomKind::Idempotent,
        AxiomKind::InfHomogeneous,
        AxiomKind::SupHomogeneous,
        AxiomKind::BooleanInfHomogeneous,
        AxiomKind::BooleanSupHomogeneous,
        AxiomKind::ComonotoneSupremal,
        AxiomKind::ComonotoneInfimal,
        AxiomKind::GComonotoneSupremal,
        AxiomKind::GComonotoneInfimal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AxiomKind::MonotoneBoundary => "monotone-boundary",
            AxiomKind::Idempotent => "idempotent",
            AxiomKind::InfHomogeneous => "inf-homogeneous",
            AxiomKind::SupHomogeneous => "sup-homogeneous",
            AxiomKind::BooleanInfHomogeneous => "boolean-inf-homogeneous",
            AxiomKind::BooleanSupHomogeneous => "boolean-sup-homogeneous",
            AxiomKind::ComonotoneSupremal => "comonotone-supremal",
            AxiomKind::ComonotoneInfimal => "comonotone-infimal",
            AxiomKind::GComonotoneSupremal => "g-comonotone-supremal",
            AxiomKind::GComonotoneInfimal => "g-comonotone-infimal",
        }
    }
}

impl fmt::Display for AxiomKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AxiomKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.replace('_', "-");
        AxiomKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| format!("unknown axiom `{s}`"))
    }
}

/// Why an identity failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomWitness {
    /// A point where a boundary value or idempotency fails.
    Point { x: Vec<Elem> },
    /// A constant `c` and vector `x` violating a homogeneity identity.
    Constant { c: Elem, x: Vec<Elem> },
    /// A pair violating monotonicity (`x` covered by `y`) or a
    /// supremal/infimal identity.
    Pair { x: Vec<Elem>, y: Vec<Elem> },
}

impl AxiomWitness {
    pub fn render(&self, l: &Lattice) -> String {
        match self {
            AxiomWitness::Point { x } => format!("x={}", format_coords(l, x)),
            AxiomWitness::Constant { c, x } => format!("c={} x={}", l.element_name(*c), format_coords(l, x)),
            AxiomWitness::Pair { x, y } => format!("x={} y={}", format_coords(l, x), format_coords(l, y)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomVerdict {
    pub axiom: AxiomKind,
    pub witness: Option<AxiomWitness>,
    /// Identity evaluations performed.
    pub pairs_checked: u64,
}

impl AxiomVerdict {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

struct Tally {
    witness: Option<AxiomWitness>,
    count: u64,
}

impl Tally {
    fn new() -> Self {
        Tally { witness: None, count: 0 }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> AxiomWitness) {
        self.count += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }
}

/// Decides one axiom for `f`. Every candidate is evaluated, so the counter
/// is exact even after a witness has been found.
pub fn axiom_check(f: &FunctionTable, axiom: AxiomKind) -> AxiomVerdict {
    let l = &*f.lattice;
    let n = f.arity();
    let mut t = Tally::new();
    match axiom {
        AxiomKind::MonotoneBoundary => {
            let bottom = vec![l.bottom(); n];
            let top = vec![l.top(); n];
            t.record(f.value(&bottom) == l.bottom(), || AxiomWitness::Point { x: bottom.clone() });
            t.record(f.value(&top) == l.top(), || AxiomWitness::Point { x: top.clone() });
            for (j, y) in f.domain.points().enumerate() {
                for i in f.lower_neighbors(&y) {
                    t.record(l.leq(f.values[i], f.values[j]), || AxiomWitness::Pair {
                        x: f.domain.decode(i),
                        y: y.clone(),
                    });
                }
            }
        }
        AxiomKind::Idempotent => {
            for c in l.elements() {
                let x = vec![c; n];
                t.record(f.value(&x) == c, || AxiomWitness::Point { x: x.clone() });
            }
        }
        AxiomKind::InfHomogeneous | AxiomKind::SupHomogeneous => {
            let points: Vec<Vec<Elem>> = f.domain.points().collect();
            homogeneity(f, axiom, &points, &mut t);
        }
        AxiomKind::BooleanInfHomogeneous | AxiomKind::BooleanSupHomogeneous => {
            homogeneity(f, axiom, &boolean_points(f), &mut t);
        }
        AxiomKind::ComonotoneSupremal
        | AxiomKind::ComonotoneInfimal
        | AxiomKind::GComonotoneSupremal
        | AxiomKind::GComonotoneInfimal => {
            let relation = match axiom {
                AxiomKind::ComonotoneSupremal | AxiomKind::ComonotoneInfimal => RelationKind::Comonotone,
                _ => RelationKind::GComonotone,
            };
            let supremal = matches!(axiom, AxiomKind::ComonotoneSupremal | AxiomKind::GComonotoneSupremal);
            let points: Vec<Vec<Elem>> = f.domain.points().collect();
            let mut z = vec![0; n];
            for (i, x) in points.iter().enumerate() {
                for y in &points[i..] {
                    if check_coords(l, x, y, relation).is_some() {
                        continue;
                    }
                    let (lhs, rhs) = if supremal {
                        z.iter_mut().zip(x.iter().zip(y)).for_each(|(z, (&a, &b))| *z = l.join(a, b));
                        (f.value(&z), l.join(f.value(x), f.value(y)))
                    } else {
                        z.iter_mut().zip(x.iter().zip(y)).for_each(|(z, (&a, &b))| *z = l.meet(a, b));
                        (f.value(&z), l.meet(f.value(x), f.value(y)))
                    };
                    t.record(lhs == rhs, || AxiomWitness::Pair { x: x.clone(), y: y.clone() });
                }
            }
        }
    }
    AxiomVerdict { axiom, witness: t.witness, pairs_checked: t.count }
}

/// `{bottom, top}^n` in table order.
fn boolean_points(f: &FunctionTable) -> Vec<Vec<Elem>> {
    let l = &*f.lattice;
    let n = f.arity();
    let mut pts: Vec<Vec<Elem>> = (0..1usize << n)
        .map(|mask| (0..n).map(|i| if mask >> i & 1 == 1 { l.top() } else { l.bottom() }).collect())
        .collect();
    pts.sort_by_key(|x| f.domain.encode(x));
    pts
}

fn homogeneity(f: &FunctionTable, axiom: AxiomKind, points: &[Vec<Elem>], t: &mut Tally) {
    let l = &*f.lattice;
    let inf = matches!(axiom, AxiomKind::InfHomogeneous | AxiomKind::BooleanInfHomogeneous);
    let op = |a: Elem, b: Elem| if inf { l.meet(a, b) } else { l.join(a, b) };
    let mut z = vec![0; f.arity()];
    for c in l.elements() {
        for x in points {
            z.iter_mut().zip(x).for_each(|(z, &xi)| *z = op(c, xi));
            t.record(f.value(&z) == op(c, f.value(x)), || AxiomWitness::Constant { c, x: x.clone() });
        }
    }
}

/// The seven equivalent conditions of the characterization theorem,
/// numbered as in the literature (condition (i) is "f is a Sugeno integral").
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
}

impl Condition {
    pub const ALL: [Condition; 7] =
        [Condition::II, Condition::III, Condition::IV, Condition::V, Condition::VI, Condition::VII, Condition::VIII];

    pub fn label(self) -> &'static str {
        match self {
            Condition::II => "(ii)",
            Condition::III => "(iii)",
            Condition::IV => "(iv)",
            Condition::V => "(v)",
            Condition::VI => "(vi)",
            Condition::VII => "(vii)",
            Condition::VIII => "(viii)",
        }
    }

    /// The two axioms whose conjunction forms the condition.
    pub fn conjuncts(self) -> [AxiomKind; 2] {
        use AxiomKind::*;
        match self {
            Condition::II => [InfHomogeneous, GComonotoneSupremal],
            Condition::III => [SupHomogeneous, GComonotoneInfimal],
            Condition::IV => [InfHomogeneous, ComonotoneSupremal],
            Condition::V => [SupHomogeneous, ComonotoneInfimal],
            Condition::VI => [ComonotoneSupremal, ComonotoneInfimal],
            Condition::VII => [GComonotoneSupremal, GComonotoneInfimal],
            Condition::VIII => [BooleanSupHomogeneous, BooleanInfHomogeneous],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    /// One verdict per [`AxiomKind`], in [`AxiomKind::ALL`] order.
    pub verdicts: Vec<AxiomVerdict>,
    pub conditions: Vec<(Condition, bool)>,
    pub theorem3_consistent: bool,
}

impl CheckReport {
    pub fn verdict(&self, axiom: AxiomKind) -> &AxiomVerdict {
        self.verdicts.iter().find(|v| v.axiom == axiom).expect("all axioms present")
    }

    pub fn condition(&self, c: Condition) -> bool {
        self.conditions.iter().find(|(k, _)| *k == c).expect("all conditions present").1
    }

    pub fn render(&self, l: &Lattice) -> String {
        let mut out = String::new();
        for v in &self.verdicts {
            let _ = write!(out, "{}: {} (pairs_checked {})", v.axiom, v.holds(), v.pairs_checked);
            if let Some(w) = &v.witness {
                let _ = write!(out, " witness {}", w.render(l));
            }
            out.push('\n');
        }
        for (c, holds) in &self.conditions {
            let _ = writeln!(out, "condition {}: {holds}", c.label());
        }
        let _ = writeln!(out, "conditions agree: {}", self.theorem3_consistent);
        out
    }
}

/// Checks all ten axioms and the seven conjunctive conditions.
pub fn theorem3_report(f: &FunctionTable) -> Result<CheckReport, AxiomError> {
    let verdicts: Vec<AxiomVerdict> = AxiomKind::ALL.iter().map(|&k| axiom_check(f, k)).collect();
    if let Some(w) = &verdicts[0].witness {
        return Err(AxiomError::NotAggregation(w.render(&f.lattice)));
    }
    let holds = |k: AxiomKind| verdicts.iter().any(|v| v.axiom == k && v.holds());
    let conditions: Vec<(Condition, bool)> =
        Condition::ALL.iter().map(|&c| (c, c.conjuncts().into_iter().all(holds))).collect();
    let theorem3_consistent = conditions.iter().all(|&(_, b)| b == conditions[0].1);
    Ok(CheckReport { verdicts, conditions, theorem3_consistent })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AggregationEnumeration {
    /// Every aggregation function; requires `|L|^n <= max_points`.
    Exhaustive { max_points: usize },
    /// `count` random aggregation functions from a seeded ChaCha8 stream.
    Sample { seed: u64, count: usize },
}

impl AggregationEnumeration {
    pub const EXHAUSTIVE: AggregationEnumeration =
        AggregationEnumeration::Exhaustive { max_points: EXHAUSTIVE_DOMAIN_LIMIT };
}

/// Streams monotone tables with `f(0,…,0) = 0` and `f(1,…,1) = 1`.
///
/// Points are assigned in order of increasing rank sum, so every lower
/// neighbor of a point is fixed before the point itself.
pub fn enumerate_aggregations(
    lattice: Arc<Lattice>,
    arity: usize,
    mode: AggregationEnumeration,
) -> Result<Box<dyn Iterator<Item = FunctionTable>>, AxiomError> {
    let domain = domain_for(&lattice, arity)?;
    if let AggregationEnumeration::Exhaustive { max_points } = mode {
        if domain.len() > max_points {
            return Err(AxiomError::EnumerationTooLarge { cases: domain.len() as u128, limit: max_points as u128 });
        }
    }
    let shell = FunctionTable { lattice: lattice.clone(), domain, values: vec![lattice.bottom(); domain.len()] };
    let bottom = domain.encode(&vec![lattice.bottom(); arity]);
    let top = domain.encode(&vec![lattice.top(); arity]);
    let mut values = vec![lattice.bottom(); domain.len()];
    values[top] = lattice.top();
    let points: Vec<Vec<Elem>> = domain.points().collect();
    let lower = points.iter().map(|x| shell.lower_neighbors(x)).collect();
    let mut order: Vec<usize> = (0..domain.len()).filter(|&i| i != bottom && i != top).collect();
    order.sort_by_key(|&i| (points[i].iter().map(|&c| lattice.rank(c)).sum::<usize>(), i));
    let problem = MonotoneProblem { lattice: lattice.clone(), order, lower, values };
    let wrap = move |values| FunctionTable { lattice: lattice.clone(), domain, values };
    match mode {
        AggregationEnumeration::Exhaustive { .. } => Ok(Box::new(problem.into_iter().map(wrap))),
        AggregationEnumeration::Sample { seed, count } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok(Box::new((0..count).map(move |_| wrap(problem.sample(&mut rng)))))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::capacity::{enumerate_capacities, CapacityEnumeration};
    use crate::lattice::LatticeSpec;

    fn arc(spec: &str) -> Arc<Lattice> {
        Arc::new(LatticeSpec::parse(spec).unwrap().build().unwrap())
    }

    fn h(l: &Arc<Lattice>, n: usize) -> FunctionTable {
        let (b, t) = (l.bottom(), l.top());
        FunctionTable::from_fn(l.clone(), n, |x| if x.iter().all(|&c| c == b) { b } else { t }).unwrap()
    }

    #[test]
    fn sugeno_integrals_satisfy_every_axiom() {
        let l = arc("chain:3");
        for m in enumerate_capacities(l, 2, CapacityEnumeration::Exhaustive { limit: 100 }).unwrap() {
            let f = FunctionTable::of_capacity(&m, SugenoForm::SupOfMeets);
            for k in AxiomKind::ALL {
                assert!(axiom_check(&f, k).holds(), "{k} fails for {:?}", m.values());
            }
        }
    }

    #[test]
    fn h_verdicts() {
        let l = arc("chain:3");
        let f = h(&l, 2);
        let holds = |k| axiom_check(&f, k).holds();
        assert!(holds(AxiomKind::MonotoneBoundary));
        assert!(holds(AxiomKind::ComonotoneSupremal));
        assert!(holds(AxiomKind::ComonotoneInfimal));
        assert!(holds(AxiomKind::GComonotoneSupremal));
        assert!(holds(AxiomKind::GComonotoneInfimal));
        assert!(!holds(AxiomKind::SupHomogeneous));
        assert!(!holds(AxiomKind::InfHomogeneous));
        assert!(!holds(AxiomKind::BooleanInfHomogeneous));
        assert!(!holds(AxiomKind::BooleanSupHomogeneous));
        let idem = axiom_check(&f, AxiomKind::Idempotent);
        assert_eq!(idem.witness, Some(AxiomWitness::Point { x: vec![1, 1] }));
        assert_eq!(
            axiom_check(&f, AxiomKind::BooleanInfHomogeneous).witness,
            Some(AxiomWitness::Constant { c: 1, x: vec![0, 2] })
        );
    }

    #[test]
    fn h_conditions_split() {
        let l = arc("chain:3");
        let report = theorem3_report(&h(&l, 2)).unwrap();
        for c in Condition::ALL {
            let expected = matches!(c, Condition::VI | Condition::VII);
            assert_eq!(report.condition(c), expected, "{}", c.label());
        }
        assert!(!report.theorem3_consistent);
    }

    #[test]
    fn projection_satisfies_everything() {
        let l = arc("boolean:2");
        let f = FunctionTable::from_fn(l, 2, |x| x[0]).unwrap();
        assert!(AxiomKind::ALL.iter().all(|&k| axiom_check(&f, k).holds()));
    }

    #[test]
    fn constant_top_is_not_an_aggregation() {
        let l = arc("chain:3");
        let f = FunctionTable::from_fn(l, 2, |_| 2).unwrap();
        assert_eq!(axiom_check(&f, AxiomKind::MonotoneBoundary).witness, Some(AxiomWitness::Point { x: vec![0, 0] }));
        assert!(matches!(theorem3_report(&f), Err(AxiomError::NotAggregation(_))));
    }

    #[test]
    fn monotonicity_witness_is_a_cover_pair() {
        let l = arc("chain:4");
        let f = FunctionTable::new(l, 1, vec![0, 2, 1, 3]).unwrap();
        assert_eq!(
            axiom_check(&f, AxiomKind::MonotoneBoundary).witness,
            Some(AxiomWitness::Pair { x: vec![1], y: vec![2] })
        );
    }

    #[test]
    fn pair_counts_match_the_cost_model() {
        let l = arc("chain:3");
        let f = h(&l, 2);
        let count = |k| axiom_check(&f, k).pairs_checked;
        assert_eq!(count(AxiomKind::InfHomogeneous), 27);
        assert_eq!(count(AxiomKind::BooleanSupHomogeneous), 12);
        assert_eq!(count(AxiomKind::Idempotent), 3);
        assert_eq!(count(AxiomKind::ComonotoneSupremal), 36);
        assert_eq!(count(AxiomKind::GComonotoneInfimal), 38);
        // 2 boundary points plus 12 cover pairs of the 3x3 grid
        assert_eq!(count(AxiomKind::MonotoneBoundary), 14);
    }

    #[test]
    fn aggregation_counts() {
        let count =
            |spec: &str, n| enumerate_aggregations(arc(spec), n, AggregationEnumeration::EXHAUSTIVE).unwrap().count();
        assert_eq!(count("chain:2", 1), 1);
        assert_eq!(count("chain:3", 1), 3);
        assert_eq!(count("chain:3", 2), 136);
        assert_eq!(count("chain:2", 3), 18);
    }

    #[test]
    fn enumeration_yields_distinct_aggregations() {
        let all: Vec<_> =
            enumerate_aggregations(arc("chain:3"), 2, AggregationEnumeration::EXHAUSTIVE).unwrap().collect();
        let mut tables: Vec<_> = all.iter().map(|f| f.values().to_vec()).collect();
        tables.sort();
        tables.dedup();
        assert_eq!(tables.len(), all.len());
        assert!(all.iter().all(|f| axiom_check(f, AxiomKind::MonotoneBoundary).holds()));
    }

    #[test]
    fn enumeration_guard() {
        assert!(matches!(
            enumerate_aggregations(arc("boolean:2"), 2, AggregationEnumeration::EXHAUSTIVE),
            Err(AxiomError::EnumerationTooLarge { cases: 16, limit: 9 })
        ));
    }

    #[test]
    fn sampling_is_seeded_and_monotone() {
        let mode = AggregationEnumeration::Sample { seed: 7, count: 20 };
        let a: Vec<_> = enumerate_aggregations(arc("boolean:2"), 2, mode).unwrap().collect();
        let b: Vec<_> = enumerate_aggregations(arc("boolean:2"), 2, mode).unwrap().collect();
        assert_eq!(a, b);
        assert!(a.iter().all(|f| axiom_check(f, AxiomKind::MonotoneBoundary).holds()));
    }

    #[test]
    fn table_file_round_trip() {
        let l = arc("chain:3");
        let f = h(&l, 2);
        let text = f.to_file_string("h");
        assert!(text.starts_with("table h over chain:3 arity 2\n(0,0) -> 0\n"));
        let (name, g) = FunctionTable::parse_file(l, &text).unwrap();
        assert_eq!(name, "h");
        assert_eq!(g, f);
    }

    #[test]
    fn table_file_errors() {
        let l = arc("chain:2");
        let missing = "table t over chain:2 arity 1\n(0) -> 0\n";
        assert!(matches!(
            FunctionTable::parse_file(l.clone(), missing),
            Err(AxiomError::Parse { msg, .. }) if msg.contains("missing entry for (1)")
        ));
        let bad = "table t over chain:2 arity 1\n(0) -> 0\n(3) -> 1\n";
        assert!(matches!(FunctionTable::parse_file(l.clone(), bad), Err(AxiomError::Parse { line: 3, .. })));
        let wrong = "table t over chain:3 arity 1\n";
        assert!(matches!(FunctionTable::parse_file(l, wrong), Err(AxiomError::LatticeMismatch(..))));
    }

    // Pattern counts frozen from an independent brute force over the 136
    // aggregation functions on chain(3)^2.
    #[test]
    fn condition_patterns_on_chain3() {
        let mut all_true = 0;
        let mut only_vi_vii = 0;
        let mut none = 0;
        for f in enumerate_aggregations(arc("chain:3"), 2, AggregationEnumeration::EXHAUSTIVE).unwrap() {
            let r = theorem3_report(&f).unwrap();
            let pattern: Vec<bool> = Condition::ALL.iter().map(|&c| r.condition(c)).collect();
            match pattern.as_slice() {
                [true, true, true, true, true, true, true] => all_true += 1,
                [false, false, false, false, true, true, false] => {
                    only_vi_vii += 1;
                    assert!(!axiom_check(&f, AxiomKind::Idempotent).holds());
                }
                [false, false, false, false, false, false, false] => none += 1,
                other => panic!("unexpected pattern {other:?} for {:?}", f.values()),
            }
        }
        assert_eq!((all_true, only_vi_vii, none), (9, 18, 109));
    }
}
