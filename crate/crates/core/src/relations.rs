//! Vector relations on `L^n`: comonotonicity, comparability, the two
//! interchange-identity relations, and their subset-wise forms.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use itertools::Itertools;
use thiserror::Error;

use crate::lattice::{Elem, Lattice, LatticeError};
use crate::subset::{saturating_count, Domain, IndexSet, MAX_ARITY};

/// Largest `|L|^n` that [`relation_region`] will enumerate.
pub const REGION_LIMIT: u128 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RelationError {
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("vectors live in different lattices (`{0}` vs `{1}`)")]
    LatticeMismatch(String, String),
    #[error("vector must have between 1 and {MAX_ARITY} coordinates")]
    BadArity,
    #[error("enumeration of {cases} vectors exceeds the limit of {limit}")]
    EnumerationTooLarge { cases: u128, limit: u128 },
    #[error("malformed vector literal `{0}`")]
    Malformed(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// An element of `L^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LVector {
    lattice: Arc<Lattice>,
    coords: Vec<Elem>,
}

impl LVector {
    pub fn new(lattice: Arc<Lattice>, coords: Vec<Elem>) -> Result<Self, RelationError> {
        if coords.is_empty() || coords.len() > MAX_ARITY {
            return Err(RelationError::BadArity);
        }
        for &c in &coords {
            lattice.check_elem(c)?;
        }
        Ok(LVector { lattice, coords })
    }

    /// The constant vector `(c, …, c)`.
    pub fn constant(lattice: Arc<Lattice>, c: Elem, arity: usize) -> Result<Self, RelationError> {
        LVector::new(lattice, vec![c; arity])
    }

    /// Parses `(e1,e2,...,en)` against the element names of `lattice`.
    pub fn parse(lattice: Arc<Lattice>, literal: &str) -> Result<Self, RelationError> {
        let coords = parse_coords(&lattice, literal)?;
        LVector::new(lattice, coords)
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn coords(&self) -> &[Elem] {
        &self.coords
    }

    pub fn arity(&self) -> usize {
        self.coords.len()
    }

    pub fn meet(&self, other: &LVector) -> LVector {
        let coords = self.coords.iter().zip(&other.coords).map(|(&a, &b)| self.lattice.meet(a, b)).collect();
        LVector { lattice: self.lattice.clone(), coords }
    }

    pub fn join(&self, other: &LVector) -> LVector {
        let coords = self.coords.iter().zip(&other.coords).map(|(&a, &b)| self.lattice.join(a, b)).collect();
        LVector { lattice: self.lattice.clone(), coords }
    }

    pub fn leq(&self, other: &LVector) -> bool {
        self.coords.iter().zip(&other.coords).all(|(&a, &b)| self.lattice.leq(a, b))
    }
}

/// Parses a vector literal into element indices.
pub fn parse_coords(lattice: &Lattice, literal: &str) -> Result<Vec<Elem>, RelationError> {
    let malformed = || RelationError::Malformed(literal.to_string());
    let inner = literal.trim().strip_prefix('(').and_then(|s| s.strip_suffix(')')).ok_or_else(malformed)?;
    if inner.trim().is_empty() {
        return Err(malformed());
    }
    inner.split(',').map(|tok| lattice.element(tok.trim()).map_err(RelationError::from)).collect()
}

/// Formats coordinates as `(e1,...,en)` using element names.
pub fn format_coords(lattice: &Lattice, coords: &[Elem]) -> String {
    format!("({})", coords.iter().map(|&c| lattice.element_name(c)).join(","))
}

impl fmt::Display for LVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_coords(&self.lattice, &self.coords))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationKind {
    Comonotone,
    Comparable,
    GComonotone,
    DualGComonotone,
    /// `⋀_I (x_i ∨ y_i) = ⋀_I x_i ∨ ⋀_I y_i` for every nonempty `I`.
    SubsetwiseJoin,
    /// `⋁_I (x_i ∧ y_i) = ⋁_I x_i ∧ ⋁_I y_i` for every nonempty `I`.
    SubsetwiseMeet,
}

impl RelationKind {
    pub const ALL: [RelationKind; 6] = [
        RelationKind::Comonotone,
        RelationKind::Comparable,
        RelationKind::GComonotone,
        RelationKind::DualGComonotone,
        RelationKind::SubsetwiseJoin,
        RelationKind::SubsetwiseMeet,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationKind::Comonotone => "comonotone",
            RelationKind::Comparable => "comparable",
            RelationKind::GComonotone => "g-comonotone",
            RelationKind::DualGComonotone => "dual-g-comonotone",
            RelationKind::SubsetwiseJoin => "subsetwise-join",
            RelationKind::SubsetwiseMeet => "subsetwise-meet",
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelationKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.replace('_', "-");
        RelationKind::ALL.into_iter().find(|k| k.name() == norm).ok_or_else(|| format!("unknown relation `{s}`"))
    }
}

/// Where a relation first fails: an index pair (zero-based, `i <= j`) or a
/// subset of indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    Pair(usize, usize),
    Subset(IndexSet),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Pair(i, j) => write!(f, "indices ({},{})", i + 1, j + 1),
            Violation::Subset(s) => write!(f, "subset {s}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelationVerdict {
    pub kind: RelationKind,
    pub witness: Option<Violation>,
}

impl RelationVerdict {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

pub fn relation_check(x: &LVector, y: &LVector, kind: RelationKind) -> Result<RelationVerdict, RelationError> {
    if x.lattice != y.lattice {
        return Err(RelationError::LatticeMismatch(x.lattice.name().to_string(), y.lattice.name().to_string()));
    }
    if x.arity() != y.arity() {
        return Err(RelationError::ArityMismatch(x.arity(), y.arity()));
    }
    Ok(RelationVerdict { kind, witness: check_coords(&x.lattice, &x.coords, &y.coords, kind) })
}

/// Unchecked core of [`relation_check`] on raw coordinate slices of equal
/// length. Returns the lexicographically first violation, if any.
pub fn check_coords(l: &Lattice, x: &[Elem], y: &[Elem], kind: RelationKind) -> Option<Violation> {
    debug_assert_eq!(x.len(), y.len());
    let n = x.len();
    let pairs = || (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)));
    match kind {
        RelationKind::Comonotone => pairs()
            .find(|&(i, j)| {
                let up = l.leq(x[i], x[j]) && l.leq(y[i], y[j]);
                let down = l.leq(x[j], x[i]) && l.leq(y[j], y[i]);
                !(up || down)
            })
            .map(|(i, j)| Violation::Pair(i, j)),
        RelationKind::Comparable => {
            let not_below = (0..n).find(|&i| !l.leq(x[i], y[i]));
            let not_above = (0..n).find(|&i| !l.leq(y[i], x[i]));
            match (not_below, not_above) {
                (Some(i), Some(j)) => Some(Violation::Pair(i.min(j), i.max(j))),
                _ => None,
            }
        }
        RelationKind::GComonotone => pairs()
            .find(|&(i, j)| {
                let lhs = l.meet(l.join(x[i], y[i]), l.join(x[j], y[j]));
                let rhs = l.join(l.meet(x[i], x[j]), l.meet(y[i], y[j]));
                lhs != rhs
            })
            .map(|(i, j)| Violation::Pair(i, j)),
        RelationKind::DualGComonotone => pairs()
            .find(|&(i, j)| {
                let lhs = l.join(l.meet(x[i], y[i]), l.meet(x[j], y[j]));
                let rhs = l.meet(l.join(x[i], x[j]), l.join(y[i], y[j]));
                lhs != rhs
            })
            .map(|(i, j)| Violation::Pair(i, j)),
        RelationKind::SubsetwiseJoin => IndexSet::all(n)
            .skip(1)
            .find(|s| {
                let lhs = l.meet_all(s.iter().map(|i| l.join(x[i], y[i])));
                let rhs = l.join(l.meet_all(s.iter().map(|i| x[i])), l.meet_all(s.iter().map(|i| y[i])));
                lhs != rhs
            })
            .map(Violation::Subset),
        RelationKind::SubsetwiseMeet => IndexSet::all(n)
            .skip(1)
            .find(|s| {
                let lhs = l.join_all(s.iter().map(|i| l.meet(x[i], y[i])));
                let rhs = l.meet(l.join_all(s.iter().map(|i| x[i])), l.join_all(s.iter().map(|i| y[i])));
                lhs != rhs
            })
            .map(Violation::Subset),
    }
}

/// All `y ∈ L^n` related to `x` under `kind`, in lexicographic order.
pub fn relation_region(x: &LVector, kind: RelationKind) -> Result<Vec<LVector>, RelationError> {
    let l = &x.lattice;
    let cases = saturating_count(l.size(), x.arity());
    if cases > REGION_LIMIT {
        return Err(RelationError::EnumerationTooLarge { cases, limit: REGION_LIMIT });
    }
    let domain = Domain::new(l.size(), x.arity()).expect("guarded above");
    Ok(domain
        .points()
        .filter(|y| check_coords(l, &x.coords, y, kind).is_none())
        .map(|coords| LVector { lattice: l.clone(), coords })
        .collect())
}

/// Brute-force search over all `n!` permutations for one that sorts both
/// vectors nondecreasingly at once.
pub fn common_sorting_permutation(l: &Lattice, x: &[Elem], y: &[Elem]) -> Option<Vec<usize>> {
    let sorted = |v: &[Elem], p: &[usize]| p.windows(2).all(|w| l.leq(v[w[0]], v[w[1]]));
    (0..x.len()).permutations(x.len()).find(|p| sorted(x, p) && sorted(y, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec_of(l: &Arc<Lattice>, s: &str) -> LVector {
        LVector::parse(l.clone(), s).unwrap()
    }

    #[test]
    fn three_vector_example_on_grid_chain() {
        let l = Arc::new(Lattice::chain(11).unwrap());
        let x = vec_of(&l, "(6,3,5)");
        let y = vec_of(&l, "(7,2,9)");
        let check = |k| relation_check(&x, &y, k).unwrap();
        assert!(!check(RelationKind::Comonotone).holds());
        assert!(!check(RelationKind::Comparable).holds());
        assert!(check(RelationKind::GComonotone).holds());
        assert!(check(RelationKind::DualGComonotone).holds());
        // x1 > x3 while y1 < y3
        assert_eq!(check(RelationKind::Comonotone).witness, Some(Violation::Pair(0, 2)));
    }

    #[test]
    fn constant_vectors_are_g_comonotone() {
        let l = Arc::new(Lattice::boolean(2).unwrap());
        let x = vec_of(&l, "(a,b)");
        for c in l.elements() {
            let cv = LVector::constant(l.clone(), c, 2).unwrap();
            assert!(relation_check(&x, &cv, RelationKind::GComonotone).unwrap().holds());
            assert!(relation_check(&x, &cv, RelationKind::DualGComonotone).unwrap().holds());
        }
        // (a,b) is not even comonotone with itself
        assert!(!relation_check(&x, &x, RelationKind::Comonotone).unwrap().holds());
        assert!(relation_check(&x, &x, RelationKind::Comparable).unwrap().holds());
        assert!(relation_check(&x, &x, RelationKind::GComonotone).unwrap().holds());
    }

    #[test]
    fn swapped_atoms_not_comonotone() {
        let l = Arc::new(Lattice::boolean(2).unwrap());
        let v = relation_check(&vec_of(&l, "(a,b)"), &vec_of(&l, "(b,a)"), RelationKind::Comonotone).unwrap();
        assert_eq!(v.witness, Some(Violation::Pair(0, 1)));
    }

    #[test]
    fn errors() {
        let l = Arc::new(Lattice::chain(3).unwrap());
        let m = Arc::new(Lattice::chain(4).unwrap());
        let x = vec_of(&l, "(0,1)");
        assert!(matches!(
            relation_check(&x, &vec_of(&l, "(0,1,2)"), RelationKind::Comonotone),
            Err(RelationError::ArityMismatch(2, 3))
        ));
        assert!(matches!(
            relation_check(&x, &vec_of(&m, "(0,1)"), RelationKind::Comonotone),
            Err(RelationError::LatticeMismatch(..))
        ));
        assert!(matches!(LVector::parse(l.clone(), "0,1"), Err(RelationError::Malformed(_))));
        assert!(matches!(LVector::parse(l.clone(), "(0,7)"), Err(RelationError::Lattice(_))));
        let big = Arc::new(Lattice::chain(11).unwrap());
        let x7 = LVector::constant(big, 0, 7).unwrap();
        assert!(matches!(
            relation_region(&x7, RelationKind::Comonotone),
            Err(RelationError::EnumerationTooLarge { .. })
        ));
    }

    #[test]
    fn regions_on_chain5() {
        // sizes frozen from an independent brute force over all 25 vectors
        let l = Arc::new(Lattice::chain(5).unwrap());
        let x = vec_of(&l, "(3,1)");
        let a = relation_region(&x, RelationKind::Comonotone).unwrap();
        let b = relation_region(&x, RelationKind::Comparable).unwrap();
        let c = relation_region(&x, RelationKind::GComonotone).unwrap();
        assert_eq!((a.len(), b.len(), c.len()), (15, 15, 17));
        assert!(c.iter().all(|y| a.contains(y) || b.contains(y)));
        assert!(a.iter().chain(&b).all(|y| c.contains(y)));
    }

    #[test]
    fn constant_x_region_is_everything() {
        let l = Arc::new(Lattice::chain(4).unwrap());
        let x = vec_of(&l, "(2,2)");
        assert_eq!(relation_region(&x, RelationKind::Comonotone).unwrap().len(), 16);
    }

    #[test]
    fn two_chain_regions_coincide() {
        let l = Arc::new(Lattice::chain(2).unwrap());
        for s in ["(0,0)", "(0,1)", "(1,0)", "(1,1)"] {
            let x = vec_of(&l, s);
            assert_eq!(
                relation_region(&x, RelationKind::GComonotone).unwrap(),
                relation_region(&x, RelationKind::Comonotone).unwrap()
            );
        }
    }

    #[test]
    fn kind_names_round_trip() {
        for k in RelationKind::ALL {
            assert_eq!(k.name().parse::<RelationKind>().unwrap(), k);
        }
        assert_eq!("g_comonotone".parse::<RelationKind>().unwrap(), RelationKind::GComonotone);
        assert!("cocomonotone".parse::<RelationKind>().is_err());
    }

    #[test]
    fn permutation_search() {
        let l = Lattice::chain(5).unwrap();
        assert_eq!(common_sorting_permutation(&l, &[3, 1, 2], &[4, 0, 1]), Some(vec![1, 2, 0]));
        assert_eq!(common_sorting_permutation(&l, &[3, 1], &[0, 2]), None);
    }
}
