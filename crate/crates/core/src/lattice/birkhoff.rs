use fixedbitset::FixedBitSet;

use super::{Elem, Lattice, LatticeError};

/// Join-irreducible poset of a finite distributive lattice together with
/// the embedding of each element as the down-set of join-irreducibles
/// below it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BirkhoffForm {
    irreducibles: Vec<Elem>,
    // irr_leq[i * j_count + j]: irreducibles[i] <= irreducibles[j]
    irr_leq: Vec<bool>,
    downsets: Vec<FixedBitSet>,
}

impl BirkhoffForm {
    pub fn new(lattice: &Lattice) -> Result<Self, LatticeError> {
        if !lattice.is_distributive() {
            return Err(LatticeError::NotDistributive(lattice.name().to_string()));
        }
        // join-irreducible: not bottom, exactly one lower cover
        let irreducibles: Vec<Elem> =
            lattice.elements().filter(|&x| x != lattice.bottom() && lattice.lower_covers(x).len() == 1).collect();
        let j = irreducibles.len();
        let mut irr_leq = vec![false; j * j];
        for (a, &p) in irreducibles.iter().enumerate() {
            for (b, &q) in irreducibles.iter().enumerate() {
                irr_leq[a * j + b] = lattice.leq(p, q);
            }
        }
        let downsets = lattice
            .elements()
            .map(|x| {
                let mut set = FixedBitSet::with_capacity(j);
                for (i, &p) in irreducibles.iter().enumerate() {
                    set.set(i, lattice.leq(p, x));
                }
                set
            })
            .collect();
        Ok(BirkhoffForm { irreducibles, irr_leq, downsets })
    }

    pub fn join_irreducibles(&self) -> &[Elem] {
        &self.irreducibles
    }

    pub fn irreducible_leq(&self, i: usize, j: usize) -> bool {
        self.irr_leq[i * self.irreducibles.len() + j]
    }

    pub fn downset_of(&self, x: Elem) -> &FixedBitSet {
        &self.downsets[x]
    }

    /// Element whose down-set is exactly `set`, if any.
    pub fn element_of(&self, set: &FixedBitSet) -> Option<Elem> {
        self.downsets.iter().position(|d| d == set)
    }

    /// Meet via intersection of down-sets.
    pub fn meet(&self, a: Elem, b: Elem) -> Option<Elem> {
        let mut s = self.downsets[a].clone();
        s.intersect_with(&self.downsets[b]);
        self.element_of(&s)
    }

    /// Join via union of down-sets.
    pub fn join(&self, a: Elem, b: Elem) -> Option<Elem> {
        let mut s = self.downsets[a].clone();
        s.union_with(&self.downsets[b]);
        self.element_of(&s)
    }

    /// True when the set-based operations reproduce the lattice tables for
    /// every pair and the embedding is injective and order-reflecting.
    pub fn reconstructs(&self, lattice: &Lattice) -> bool {
        let injective = lattice.elements().all(|a| {
            lattice.elements().all(|b| {
                let subset = self.downsets[a].is_subset(&self.downsets[b]);
                subset == lattice.leq(a, b) && (a == b || self.downsets[a] != self.downsets[b])
            })
        });
        injective
            && lattice.elements().all(|a| {
                lattice
                    .elements()
                    .all(|b| self.meet(a, b) == Some(lattice.meet(a, b)) && self.join(a, b) == Some(lattice.join(a, b)))
            })
    }
}

/// Two families `λ_{i,0}`, `λ_{i,1}` over a common nonempty index set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoFamily {
    left: Vec<Elem>,
    right: Vec<Elem>,
}

impl TwoFamily {
    pub fn new(left: Vec<Elem>, right: Vec<Elem>) -> Result<Self, LatticeError> {
        if left.len() != right.len() {
            return Err(LatticeError::FamilyMismatch(left.len(), right.len()));
        }
        if left.is_empty() {
            return Err(LatticeError::EmptyIndexSet);
        }
        Ok(TwoFamily { left, right })
    }

    pub fn len(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }

    fn pick(&self, i: usize, selector: usize) -> Elem {
        if selector >> i & 1 == 0 {
            self.left[i]
        } else {
            self.right[i]
        }
    }
}

/// Evaluates both distributive expansion identities for `family`:
///
/// ```text
/// ⋀_i (λ_{i,0} ∨ λ_{i,1}) = ⋁_φ ⋀_i λ_{i,φ(i)}
/// ⋁_i (λ_{i,0} ∧ λ_{i,1}) = ⋀_φ ⋁_i λ_{i,φ(i)}
/// ```
///
/// The right-hand sides range over all `2^|I|` selectors. Any lattice is
/// accepted so the identity can be refuted on non-distributive ones.
pub fn distributive_expansion_check(lattice: &Lattice, family: &TwoFamily) -> Result<bool, LatticeError> {
    let n = family.len();
    if n == 0 {
        return Err(LatticeError::EmptyIndexSet);
    }
    if n > 24 {
        return Err(LatticeError::InvalidSpec(format!("index set of size {n} is too large")));
    }
    for &x in family.left.iter().chain(&family.right) {
        lattice.check_elem(x)?;
    }
    let meet_of_joins = lattice.meet_all((0..n).map(|i| lattice.join(family.left[i], family.right[i])));
    let join_of_meets = lattice.join_all((0..n).map(|i| lattice.meet(family.left[i], family.right[i])));

    let selectors = 0..1usize << n;
    let expanded_join =
        lattice.join_all(selectors.clone().map(|phi| lattice.meet_all((0..n).map(|i| family.pick(i, phi)))));
    let expanded_meet = lattice.meet_all(selectors.map(|phi| lattice.join_all((0..n).map(|i| family.pick(i, phi)))));
    Ok(meet_of_joins == expanded_join && join_of_meets == expanded_meet)
}
