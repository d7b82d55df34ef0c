//! L-valued capacities and the discrete Sugeno integral.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::enumerate::MonotoneProblem;
use crate::lattice::{Elem, Lattice, LatticeError};
use crate::relations::LVector;
use crate::subset::{saturating_count, IndexSet, MAX_ARITY};

/// Default cap on raw candidate tables for exhaustive enumeration.
pub const DEFAULT_CAPACITY_LIMIT: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CapacityViolation {
    Boundary { set: IndexSet, found: String, expected: String },
    Monotonicity { smaller: IndexSet, larger: IndexSet },
}

impl fmt::Display for CapacityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CapacityViolation::Boundary { set, found, expected } => {
                write!(f, "boundary violation: m({set}) = {found}, expected {expected}")
            }
            CapacityViolation::Monotonicity { smaller, larger } => {
                write!(f, "monotonicity violation: {smaller} ⊂ {larger} but m({smaller}) ≰ m({larger})")
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CapacityError {
    #[error("invalid capacity: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<CapacityViolation>),
    #[error("capacity table needs {expected} entries, got {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("arity must be between 1 and {MAX_ARITY}")]
    BadArity,
    #[error("arity mismatch: capacity has {0}, vector has {1}")]
    ArityMismatch(usize, usize),
    #[error("lattice mismatch: `{0}` vs `{1}`")]
    LatticeMismatch(String, String),
    #[error("enumeration of {cases} candidate tables exceeds the limit of {limit}")]
    EnumerationTooLarge { cases: u128, limit: u128 },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// The two expressions of the Sugeno integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SugenoForm {
    /// `⋁_I ( m(I) ∧ ⋀_{i∈I} x_i )`
    SupOfMeets,
    /// `⋀_I ( m([n]∖I) ∨ ⋁_{i∈I} x_i )`
    InfOfJoins,
}

impl SugenoForm {
    pub const BOTH: [SugenoForm; 2] = [SugenoForm::SupOfMeets, SugenoForm::InfOfJoins];

    pub fn name(self) -> &'static str {
        match self {
            SugenoForm::SupOfMeets => "sup_of_meets",
            SugenoForm::InfOfJoins => "inf_of_joins",
        }
    }
}

impl FromStr for SugenoForm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sup" | "sup_of_meets" => Ok(SugenoForm::SupOfMeets),
            "inf" | "inf_of_joins" => Ok(SugenoForm::InfOfJoins),
            _ => Err(format!("unknown form `{s}` (expected sup or inf)")),
        }
    }
}

/// A monotone set function `m: 2^[n] → L` with `m(∅) = 0`, `m([n]) = 1`,
/// stored densely by subset mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Capacity {
    lattice: Arc<Lattice>,
    arity: usize,
    values: Vec<Elem>,
}

impl Capacity {
    /// Validates a subset table. All boundary violations are reported
    /// (`∅` before `[n]`), followed by the first monotonicity violation
    /// found over cover pairs `X ⊂ X ∪ {i}`.
    pub fn validate(lattice: Arc<Lattice>, arity: usize, values: Vec<Elem>) -> Result<Self, CapacityError> {
        if arity == 0 || arity > MAX_ARITY {
            return Err(CapacityError::BadArity);
        }
        let expected = 1usize << arity;
        if values.len() != expected {
            return Err(CapacityError::WrongLength { expected, found: values.len() });
        }
        for &v in &values {
            lattice.check_elem(v)?;
        }
        let l = &lattice;
        let full = IndexSet::full(arity);
        let mut violations = Vec::new();
        for (set, want) in [(IndexSet::empty(), l.bottom()), (full, l.top())] {
            let got = values[set.mask() as usize];
            if got != want {
                violations.push(CapacityViolation::Boundary {
                    set,
                    found: l.element_name(got).to_string(),
                    expected: l.element_name(want).to_string(),
                });
            }
        }
        'outer: for smaller in IndexSet::all(arity) {
            for i in (0..arity).filter(|&i| !smaller.contains(i)) {
                let larger = smaller.with(i);
                if !l.leq(values[smaller.mask() as usize], values[larger.mask() as usize]) {
                    violations.push(CapacityViolation::Monotonicity { smaller, larger });
                    break 'outer;
                }
            }
        }
        if violations.is_empty() {
            Ok(Capacity { lattice, arity, values })
        } else {
            Err(CapacityError::Invalid(violations))
        }
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn value(&self, set: IndexSet) -> Elem {
        self.values[set.mask() as usize]
    }

    /// The table indexed by subset mask.
    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn sugeno(&self, x: &LVector, form: SugenoForm) -> Result<Elem, CapacityError> {
        if **x.lattice() != *self.lattice {
            return Err(CapacityError::LatticeMismatch(
                self.lattice.name().to_string(),
                x.lattice().name().to_string(),
            ));
        }
        if x.arity() != self.arity {
            return Err(CapacityError::ArityMismatch(self.arity, x.arity()));
        }
        Ok(self.eval(x.coords(), form))
    }

    /// Direct `2^n` evaluation of the chosen form on raw coordinates.
    pub fn eval(&self, x: &[Elem], form: SugenoForm) -> Elem {
        let l = &*self.lattice;
        let n = self.arity;
        match form {
            SugenoForm::SupOfMeets => {
                l.join_all(IndexSet::all(n).map(|s| l.meet(self.value(s), l.meet_all(s.iter().map(|i| x[i])))))
            }
            SugenoForm::InfOfJoins => l.meet_all(
                IndexSet::all(n).map(|s| l.join(self.value(s.complement(n)), l.join_all(s.iter().map(|i| x[i])))),
            ),
        }
    }

    /// Writes the capacity file format, one line per subset in mask order.
    pub fn to_file_string(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "capacity {name} over {} arity {}", self.lattice.name(), self.arity);
        for s in IndexSet::all(self.arity) {
            let _ = writeln!(out, "{s} -> {}", self.lattice.element_name(self.value(s)));
        }
        out
    }

    /// Parses the capacity file format against `lattice`. Missing `{}` and
    /// full-set lines default to bottom and top; every other subset must
    /// be present exactly once.
    pub fn parse_file(lattice: Arc<Lattice>, text: &str) -> Result<(String, Self), CapacityError> {
        let err = |line: usize, msg: String| CapacityError::Parse { line, msg };
        let mut header = None;
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
                    let ["capacity", name, "over", lat, "arity", n] = words.as_slice() else {
                        return Err(err(
                            line_no,
                            format!("expected `capacity <name> over <lattice> arity <n>`, found `{line}`"),
                        ));
                    };
                    if *lat != lattice.name() {
                        return Err(CapacityError::LatticeMismatch(lat.to_string(), lattice.name().to_string()));
                    }
                    let n: usize = n
                        .parse()
                        .ok()
                        .filter(|n| (1..=MAX_ARITY).contains(n))
                        .ok_or_else(|| err(line_no, format!("bad arity `{n}`")))?;
                    entries = vec![None; 1 << n];
                    header = Some((name.to_string(), n));
                }
                Some((_, n)) => {
                    let (set_txt, elem_txt) = line
                        .split_once("->")
                        .ok_or_else(|| err(line_no, format!("expected `<set> -> <elem>`, found `{line}`")))?;
                    let set = IndexSet::parse(set_txt, *n)
                        .ok_or_else(|| err(line_no, format!("bad subset `{}`", set_txt.trim())))?;
                    let elem = lattice
                        .element(elem_txt.trim())
                        .map_err(|_| err(line_no, format!("unknown element `{}`", elem_txt.trim())))?;
                    let slot = &mut entries[set.mask() as usize];
                    if slot.is_some() {
                        return Err(err(line_no, format!("duplicate entry for {set}")));
                    }
                    *slot = Some(elem);
                }
            }
        }
        let (name, n) = header.ok_or_else(|| err(1, "missing capacity header".into()))?;
        let full = (1usize << n) - 1;
        entries[0].get_or_insert(lattice.bottom());
        entries[full].get_or_insert(lattice.top());
        let values = entries
            .iter()
            .enumerate()
            .map(|(mask, v)| {
                v.ok_or_else(|| {
                    let set = IndexSet::new(mask as u32, n).expect("mask in range");
                    err(text.lines().count(), format!("missing entry for {set}"))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok((name, Capacity::validate(lattice, n, values)?))
    }

    fn problem(lattice: Arc<Lattice>, arity: usize) -> MonotoneProblem {
        let size = 1usize << arity;
        let mut values = vec![lattice.bottom(); size];
        values[size - 1] = lattice.top();
        let lower = (0..size)
            .map(|mask| {
                let s = IndexSet::new(mask as u32, arity).expect("mask in range");
                s.iter().map(|i| s.without(i).mask() as usize).collect()
            })
            .collect();
        // every proper subset of a mask is numerically smaller
        MonotoneProblem { lattice, order: (1..size - 1).collect(), lower, values }
    }

    /// A random capacity from a seeded generator.
    pub fn sample(lattice: Arc<Lattice>, arity: usize, rng: &mut impl rand::Rng) -> Result<Self, CapacityError> {
        if arity == 0 || arity > MAX_ARITY {
            return Err(CapacityError::BadArity);
        }
        let values = Capacity::problem(lattice.clone(), arity).sample(rng);
        Capacity::validate(lattice, arity, values)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapacityEnumeration {
    /// Every capacity, provided `|L|^(2^n - 2)` stays within `limit`.
    Exhaustive { limit: u128 },
    /// `count` random capacities from a ChaCha8 stream seeded with `seed`.
    Sample { seed: u64, count: usize },
}

/// Streams capacities on `[arity]`. Exhaustive mode yields each capacity
/// once, lexicographically over the table with masks in increasing order.
pub fn enumerate_capacities(
    lattice: Arc<Lattice>,
    arity: usize,
    mode: CapacityEnumeration,
) -> Result<Box<dyn Iterator<Item = Capacity>>, CapacityError> {
    if arity == 0 || arity > MAX_ARITY {
        return Err(CapacityError::BadArity);
    }
    let problem = Capacity::problem(lattice.clone(), arity);
    match mode {
        CapacityEnumeration::Exhaustive { limit } => {
            let cases = saturating_count(lattice.size(), (1usize << arity) - 2);
            if cases > limit {
                return Err(CapacityError::EnumerationTooLarge { cases, limit });
            }
            Ok(Box::new(problem.into_iter().map(move |values| Capacity { lattice: lattice.clone(), arity, values })))
        }
        CapacityEnumeration::Sample { seed, count } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok(Box::new((0..count).map(move |_| Capacity {
                lattice: lattice.clone(),
                arity,
                values: problem.sample(&mut rng),
            })))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticeSpec;

    fn arc(spec: &str) -> Arc<Lattice> {
        Arc::new(LatticeSpec::parse(spec).unwrap().build().unwrap())
    }

    #[test]
    fn symmetric_capacity_is_valid() {
        let l = arc("chain:3");
        assert!(Capacity::validate(l, 2, vec![0, 1, 1, 2]).is_ok());
    }

    #[test]
    fn bottom_must_map_to_zero() {
        let l = arc("chain:3");
        let err = Capacity::validate(l, 2, vec![1, 1, 1, 2]).unwrap_err();
        let CapacityError::Invalid(v) = err else { panic!() };
        assert!(matches!(v[0], CapacityViolation::Boundary { set, .. } if set.is_empty()));
    }

    #[test]
    fn boundary_reported_before_monotonicity() {
        // ∅→0, {1}→1, {2}→b, {1,2}→b on boolean(2)
        let l = arc("boolean:2");
        let (zero, top, b) = (0, l.top(), l.element("b").unwrap());
        let err = Capacity::validate(l, 2, vec![zero, top, b, b]).unwrap_err();
        let CapacityError::Invalid(v) = err else { panic!() };
        assert_eq!(v.len(), 2);
        assert!(matches!(&v[0], CapacityViolation::Boundary { set, .. } if *set == IndexSet::full(2)));
        assert_eq!(
            v[1],
            CapacityViolation::Monotonicity { smaller: IndexSet::new(0b01, 2).unwrap(), larger: IndexSet::full(2) }
        );
    }

    #[test]
    fn wrong_shapes() {
        let l = arc("chain:3");
        assert_eq!(
            Capacity::validate(l.clone(), 2, vec![0, 2]),
            Err(CapacityError::WrongLength { expected: 4, found: 2 })
        );
        assert_eq!(Capacity::validate(l, 0, vec![]), Err(CapacityError::BadArity));
    }

    #[test]
    fn collapsing_capacities() {
        let l = arc("boolean:2");
        let (a, b, top) = (1, 2, l.top());
        // top on every nonempty set: the join
        let max = Capacity::validate(l.clone(), 2, vec![0, top, top, top]).unwrap();
        // top only on [n]: the meet
        let min = Capacity::validate(l.clone(), 2, vec![0, 0, 0, top]).unwrap();
        for form in SugenoForm::BOTH {
            assert_eq!(max.eval(&[a, b], form), top);
            assert_eq!(min.eval(&[a, b], form), 0);
            assert_eq!(max.eval(&[a, a], form), a);
            assert_eq!(min.eval(&[a, top], form), a);
        }
    }

    #[test]
    fn forms_agree_on_boolean_example() {
        // m = (∅→0, {1}→a, {2}→b, {1,2}→1), x = (b, a): both forms give 0
        let l = arc("boolean:2");
        let m = Capacity::validate(l.clone(), 2, vec![0, 1, 2, 3]).unwrap();
        let x = LVector::parse(l, "(b,a)").unwrap();
        assert_eq!(m.sugeno(&x, SugenoForm::SupOfMeets).unwrap(), 0);
        assert_eq!(m.sugeno(&x, SugenoForm::InfOfJoins).unwrap(), 0);
    }

    #[test]
    fn sugeno_errors() {
        let l = arc("chain:3");
        let m = Capacity::validate(l.clone(), 2, vec![0, 1, 1, 2]).unwrap();
        let x3 = LVector::parse(l, "(0,1,2)").unwrap();
        assert_eq!(m.sugeno(&x3, SugenoForm::SupOfMeets), Err(CapacityError::ArityMismatch(2, 3)));
        let other = LVector::parse(arc("chain:4"), "(0,1)").unwrap();
        assert!(matches!(m.sugeno(&other, SugenoForm::SupOfMeets), Err(CapacityError::LatticeMismatch(..))));
    }

    #[test]
    fn exhaustive_counts() {
        let count = |spec: &str, n| {
            enumerate_capacities(arc(spec), n, CapacityEnumeration::Exhaustive { limit: DEFAULT_CAPACITY_LIMIT })
                .unwrap()
                .count()
        };
        assert_eq!(count("chain:3", 2), 9);
        assert_eq!(count("chain:2", 1), 1);
        // m({1}), m({2}) free in boolean(2)
        assert_eq!(count("boolean:2", 2), 16);
    }

    #[test]
    fn exhaustive_is_lexicographic_and_valid() {
        let l = arc("chain:3");
        let all: Vec<Vec<Elem>> = enumerate_capacities(l.clone(), 3, CapacityEnumeration::Exhaustive { limit: 1000 })
            .unwrap()
            .map(|m| m.values().to_vec())
            .collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        for v in &all {
            assert!(Capacity::validate(l.clone(), 3, v.clone()).is_ok());
        }
    }

    #[test]
    fn guard_and_sampling() {
        let l = arc("chain:5");
        assert!(matches!(
            enumerate_capacities(l.clone(), 4, CapacityEnumeration::Exhaustive { limit: 1000 }),
            Err(CapacityError::EnumerationTooLarge { .. })
        ));
        let draw = |seed| {
            enumerate_capacities(l.clone(), 4, CapacityEnumeration::Sample { seed, count: 5 })
                .unwrap()
                .collect::<Vec<_>>()
        };
        let a = draw(7);
        assert_eq!(a.len(), 5);
        assert_eq!(a, draw(7));
        for m in &a {
            assert!(Capacity::validate(l.clone(), 4, m.values().to_vec()).is_ok());
        }
    }

    #[test]
    fn file_round_trip_and_defaults() {
        let l = arc("chain:3");
        let m = Capacity::validate(l.clone(), 2, vec![0, 1, 2, 2]).unwrap();
        let text = m.to_file_string("mu");
        assert_eq!(Capacity::parse_file(l.clone(), &text).unwrap(), ("mu".to_string(), m.clone()));

        let short = "capacity mu over chain:3 arity 2\n{1} -> 1\n{2} -> 2   # comment\n";
        assert_eq!(Capacity::parse_file(l.clone(), short).unwrap().1, m);

        let missing = "capacity mu over chain:3 arity 2\n{1} -> 1\n";
        assert!(matches!(Capacity::parse_file(l.clone(), missing), Err(CapacityError::Parse { .. })));
        let wrong = "capacity mu over chain:4 arity 2\n";
        assert!(matches!(Capacity::parse_file(l.clone(), wrong), Err(CapacityError::LatticeMismatch(..))));
        let bad = "capacity mu over chain:3 arity 2\n{1} => 1\n";
        assert_eq!(
            Capacity::parse_file(l, bad).unwrap_err(),
            CapacityError::Parse { line: 2, msg: "expected `<set> -> <elem>`, found `{1} => 1`".into() }
        );
    }
}
