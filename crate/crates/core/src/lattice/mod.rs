//! Finite bounded lattices with dense meet/join tables.
//!
//! Elements are identified by their index into the element list; names only
//! matter for parsing and printing. Every constructor funnels through
//! [`Lattice::from_order`], which derives the operation tables from the order
//! relation and validates the lattice laws exhaustively.

mod birkhoff;
mod build;
mod format;

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

pub use birkhoff::{distributive_expansion_check, BirkhoffForm, TwoFamily};
pub use build::LatticeSpec;
pub(crate) use format::strip_comment;

/// Index of an element inside its lattice.
pub type Elem = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("cover relation has a cycle through `{0}`")]
    CyclicOrder(String),
    #[error("no unique {which}: `{element}` is not comparable to `{other}`")]
    NoBounds { which: &'static str, element: String, other: String },
    #[error("`{a}` and `{b}` have no {op}")]
    NotALattice { a: String, b: String, op: &'static str },
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("lattice `{0}` is not distributive")]
    NotDistributive(String),
    #[error("index set of the family is empty")]
    EmptyIndexSet,
    #[error("family maps have different lengths ({0} and {1})")]
    FamilyMismatch(usize, usize),
    #[error("invalid lattice spec `{0}`")]
    InvalidSpec(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Io(String),
    #[error("law violated: {0}")]
    LawViolation(String),
}

/// Tri-state record of what is known about distributivity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distributivity {
    VerifiedTrue,
    VerifiedFalse,
    Unverified,
}

/// Which of the two minimal non-distributive lattices a sublattice is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForbiddenKind {
    Pentagon,
    Diamond,
}

/// A finite bounded lattice.
#[derive(Debug, Clone)]
pub struct Lattice {
    name: String,
    names: Vec<String>,
    // leq[a * size + b] is true iff a <= b
    leq: Vec<bool>,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    bottom: Elem,
    top: Elem,
    distributive: OnceLock<bool>,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
            || (self.names == other.names
                && self.leq == other.leq
                && self.bottom == other.bottom
                && self.top == other.top)
    }
}

impl Eq for Lattice {}

impl Lattice {
    /// Builds a lattice from a full order relation given as a dense
    /// `size * size` matrix. `leq` must already be reflexive and transitive;
    /// this is checked along with antisymmetry.
    pub fn from_order(name: impl Into<String>, names: Vec<String>, leq: Vec<bool>) -> Result<Self, LatticeError> {
        let size = names.len();
        assert_eq!(leq.len(), size * size, "order matrix has wrong shape");
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(LatticeError::DuplicateElement(a.clone()));
            }
        }
        if size == 0 {
            return Err(LatticeError::InvalidSpec("empty element list".into()));
        }
        let le = |a: usize, b: usize| leq[a * size + b];
        for a in 0..size {
            if !le(a, a) {
                return Err(LatticeError::LawViolation(format!("`{}` <= itself fails", names[a])));
            }
            for b in 0..size {
                if a != b && le(a, b) && le(b, a) {
                    return Err(LatticeError::CyclicOrder(names[a].clone()));
                }
                for c in 0..size {
                    if le(a, b) && le(b, c) && !le(a, c) {
                        return Err(LatticeError::LawViolation(format!(
                            "order not transitive at `{}`, `{}`, `{}`",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }

        let bottom = (0..size).find(|&b| (0..size).all(|x| le(b, x)));
        let top = (0..size).find(|&t| (0..size).all(|x| le(x, t)));
        let bottom = bottom.ok_or_else(|| no_bound("bottom", &names, size, &le, true))?;
        let top = top.ok_or_else(|| no_bound("top", &names, size, &le, false))?;

        let mut meet = vec![0; size * size];
        let mut join = vec![0; size * size];
        for a in 0..size {
            for b in 0..size {
                let lower: Vec<usize> = (0..size).filter(|&z| le(z, a) && le(z, b)).collect();
                let glb = lower.iter().copied().find(|&z| lower.iter().all(|&w| le(w, z)));
                meet[a * size + b] = glb.ok_or_else(|| LatticeError::NotALattice {
                    a: names[a].clone(),
                    b: names[b].clone(),
                    op: "meet",
                })?;
                let upper: Vec<usize> = (0..size).filter(|&z| le(a, z) && le(b, z)).collect();
                let lub = upper.iter().copied().find(|&z| upper.iter().all(|&w| le(z, w)));
                join[a * size + b] = lub.ok_or_else(|| LatticeError::NotALattice {
                    a: names[a].clone(),
                    b: names[b].clone(),
                    op: "join",
                })?;
            }
        }

        let lattice = Lattice { name: name.into(), names, leq, meet, join, bottom, top, distributive: OnceLock::new() };
        lattice.check_laws()?;
        Ok(lattice)
    }

    pub(crate) fn mark_distributive(self) -> Self {
        let _ = self.distributive.set(true);
        self
    }

    pub(crate) fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    // Commutativity, associativity, idempotency and absorption for both
    // operations, over every pair and triple.
    fn check_laws(&self) -> Result<(), LatticeError> {
        let n = self.size();
        let fail = |law: &str, xs: &[Elem]| {
            let args: Vec<&str> = xs.iter().map(|&x| self.names[x].as_str()).collect();
            Err(LatticeError::LawViolation(format!("{law} at ({})", args.join(", "))))
        };
        for a in 0..n {
            if self.meet(a, a) != a || self.join(a, a) != a {
                return fail("idempotency", &[a]);
            }
            if !self.leq(self.bottom, a) || !self.leq(a, self.top) {
                return fail("bounds", &[a]);
            }
            for b in 0..n {
                if self.meet(a, b) != self.meet(b, a) || self.join(a, b) != self.join(b, a) {
                    return fail("commutativity", &[a, b]);
                }
                if self.join(a, self.meet(a, b)) != a || self.meet(a, self.join(a, b)) != a {
                    return fail("absorption", &[a, b]);
                }
                if self.leq(a, b) != (self.meet(a, b) == a) {
                    return fail("order/meet consistency", &[a, b]);
                }
                for c in 0..n {
                    if self.meet(self.meet(a, b), c) != self.meet(a, self.meet(b, c))
                        || self.join(self.join(a, b), c) != self.join(a, self.join(b, c))
                    {
                        return fail("associativity", &[a, b, c]);
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size()
    }

    pub fn element_name(&self, x: Elem) -> &str {
        &self.names[x]
    }

    pub fn element_names(&self) -> &[String] {
        &self.names
    }

    /// Resolves an element by name; a bare decimal index is accepted as a
    /// fallback so `6` addresses the seventh element of any lattice.
    pub fn element(&self, name: &str) -> Result<Elem, LatticeError> {
        if let Some(i) = self.names.iter().position(|n| n == name) {
            return Ok(i);
        }
        match name.parse::<usize>() {
            Ok(i) if i < self.size() => Ok(i),
            _ => Err(LatticeError::UnknownElement(name.to_string())),
        }
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a * self.size() + b]
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a * self.size() + b]
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a * self.size() + b]
    }

    pub fn checked_meet(&self, a: Elem, b: Elem) -> Result<Elem, LatticeError> {
        self.check_elem(a)?;
        self.check_elem(b)?;
        Ok(self.meet(a, b))
    }

    pub fn checked_join(&self, a: Elem, b: Elem) -> Result<Elem, LatticeError> {
        self.check_elem(a)?;
        self.check_elem(b)?;
        Ok(self.join(a, b))
    }

    pub fn checked_leq(&self, a: Elem, b: Elem) -> Result<bool, LatticeError> {
        self.check_elem(a)?;
        self.check_elem(b)?;
        Ok(self.leq(a, b))
    }

    pub fn check_elem(&self, a: Elem) -> Result<(), LatticeError> {
        if a < self.size() {
            Ok(())
        } else {
            Err(LatticeError::UnknownElement(format!("#{a}")))
        }
    }

    /// Meet of a finite family; the empty meet is top.
    pub fn meet_all(&self, xs: impl IntoIterator<Item = Elem>) -> Elem {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Join of a finite family; the empty join is bottom.
    pub fn join_all(&self, xs: impl IntoIterator<Item = Elem>) -> Elem {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn comparable(&self, a: Elem, b: Elem) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    pub fn is_chain(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.comparable(a, b)))
    }

    /// `a` is covered by `b`: `a < b` with nothing strictly between.
    pub fn covers(&self, a: Elem, b: Elem) -> bool {
        a != b && self.leq(a, b) && !self.elements().any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b))
    }

    pub fn lower_covers(&self, x: Elem) -> Vec<Elem> {
        self.elements().filter(|&a| self.covers(a, x)).collect()
    }

    pub fn upper_covers(&self, x: Elem) -> Vec<Elem> {
        self.elements().filter(|&b| self.covers(x, b)).collect()
    }

    /// All cover pairs `(a, b)` in index order.
    pub fn cover_pairs(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if self.covers(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Number of elements below or equal to `x`. Strictly increasing along
    /// the order, so sorting by it yields a linear extension.
    pub fn rank(&self, x: Elem) -> usize {
        self.elements().filter(|&a| self.leq(a, x)).count()
    }

    pub fn distributivity(&self) -> Distributivity {
        match self.distributive.get() {
            Some(true) => Distributivity::VerifiedTrue,
            Some(false) => Distributivity::VerifiedFalse,
            None => Distributivity::Unverified,
        }
    }

    /// Exhaustive check of `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)`; the answer is
    /// cached in the distributivity flag.
    pub fn is_distributive(&self) -> bool {
        *self.distributive.get_or_init(|| self.distributivity_violation().is_none())
    }

    /// First triple (lexicographic) violating the distributive law.
    pub fn distributivity_violation(&self) -> Option<(Elem, Elem, Elem)> {
        for x in self.elements() {
            for y in self.elements() {
                for z in self.elements() {
                    let lhs = self.meet(x, self.join(y, z));
                    let rhs = self.join(self.meet(x, y), self.meet(x, z));
                    if lhs != rhs {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// Searches for a sublattice isomorphic to N5 or M3, returned as
    /// `(bottom, p, q, r, top)`. For the pentagon `p < q` and `r` is the
    /// side element; for the diamond `p, q, r` are the three atoms.
    pub fn forbidden_sublattice(&self) -> Option<(ForbiddenKind, [Elem; 5])> {
        for p in self.elements() {
            for q in self.elements() {
                for r in self.elements() {
                    if p == q || q == r || p == r {
                        continue;
                    }
                    let o = self.meet(p, r);
                    let i = self.join(p, r);
                    let five = [o, p, q, r, i];
                    let distinct = (0..5).all(|s| (s + 1..5).all(|t| five[s] != five[t]));
                    if !distinct {
                        continue;
                    }
                    if self.leq(p, q) && self.meet(q, r) == o && self.join(q, r) == i {
                        return Some((ForbiddenKind::Pentagon, five));
                    }
                    if p < q
                        && q < r
                        && self.meet(p, q) == o
                        && self.meet(q, r) == o
                        && self.join(p, q) == i
                        && self.join(q, r) == i
                    {
                        return Some((ForbiddenKind::Diamond, five));
                    }
                }
            }
        }
        None
    }

    pub fn birkhoff(&self) -> Result<BirkhoffForm, LatticeError> {
        BirkhoffForm::new(self)
    }
}

fn no_bound(
    which: &'static str,
    names: &[String],
    size: usize,
    le: &dyn Fn(usize, usize) -> bool,
    lower: bool,
) -> LatticeError {
    // report two extremal elements that are incomparable
    let extremal: Vec<usize> =
        (0..size).filter(|&a| (0..size).all(|b| b == a || if lower { !le(b, a) } else { !le(a, b) })).collect();
    let (e, o) = match extremal.as_slice() {
        [a, b, ..] => (*a, *b),
        [a] => (*a, *a),
        [] => (0, 0),
    };
    LatticeError::NoBounds { which, element: names[e].clone(), other: names[o].clone() }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} elements)", self.name, self.size())
    }
}
