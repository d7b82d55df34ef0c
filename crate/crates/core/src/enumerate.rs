//! Backtracking enumeration of monotone assignments.
//!
//! Both capacities (monotone maps on the subset lattice) and aggregation
//! functions (monotone maps on `L^n`) are assignments of lattice elements to
//! the points of a finite poset, subject to `value(p) <= value(q)` whenever
//! `p` is covered by `q`. Slots are assigned in a fixed linear extension, so
//! each cover constraint is checked exactly once, when its upper end is
//! assigned; a branch is abandoned as soon as a candidate falls below one of
//! its already assigned lower covers.

use std::sync::Arc;

use rand::Rng;

use crate::lattice::{Elem, Lattice};

#[derive(Debug, Clone)]
pub(crate) struct MonotoneProblem {
    pub lattice: Arc<Lattice>,
    /// Free slots in assignment order; must be a linear extension.
    pub order: Vec<usize>,
    /// Lower covers of each slot (indexed by slot id).
    pub lower: Vec<Vec<usize>>,
    /// Initial values; fixed slots already hold their final value.
    pub values: Vec<Elem>,
}

impl MonotoneProblem {
    fn feasible(&self, values: &[Elem], slot: usize, v: Elem) -> bool {
        self.lower[slot].iter().all(|&p| self.lattice.leq(values[p], v))
    }

    fn candidate_from(&self, values: &[Elem], slot: usize, from: Elem) -> Option<Elem> {
        (from..self.lattice.size()).find(|&v| self.feasible(values, slot, v))
    }

    /// One seeded random assignment: every slot draws uniformly from the
    /// elements above the join of its lower covers.
    pub fn sample(&self, rng: &mut impl Rng) -> Vec<Elem> {
        let mut values = self.values.clone();
        for &slot in &self.order {
            let candidates: Vec<Elem> = self.lattice.elements().filter(|&v| self.feasible(&values, slot, v)).collect();
            values[slot] = candidates[rng.random_range(0..candidates.len())];
        }
        values
    }

    pub fn into_iter(self) -> MonotoneAssignments {
        MonotoneAssignments { values: self.values.clone(), problem: self, started: false, done: false }
    }
}

/// Lexicographic (in assignment order) stream of all monotone assignments.
#[derive(Debug)]
pub(crate) struct MonotoneAssignments {
    problem: MonotoneProblem,
    values: Vec<Elem>,
    started: bool,
    done: bool,
}

impl MonotoneAssignments {
    // Fills positions `from..` with their smallest feasible candidates. The
    // top element is always feasible, so this cannot fail.
    fn fill_from(&mut self, from: usize) {
        for pos in from..self.problem.order.len() {
            let slot = self.problem.order[pos];
            self.values[slot] = self.problem.candidate_from(&self.values, slot, 0).expect("top is always feasible");
        }
    }
}

impl Iterator for MonotoneAssignments {
    type Item = Vec<Elem>;

    fn next(&mut self) -> Option<Vec<Elem>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.fill_from(0);
            return Some(self.values.clone());
        }
        for pos in (0..self.problem.order.len()).rev() {
            let slot = self.problem.order[pos];
            let current = self.values[slot];
            if let Some(v) = self.problem.candidate_from(&self.values, slot, current + 1) {
                self.values[slot] = v;
                self.fill_from(pos + 1);
                return Some(self.values.clone());
            }
        }
        self.done = true;
        None
    }
}
