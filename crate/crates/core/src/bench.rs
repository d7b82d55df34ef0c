//! Exact pair-count cost model for the homogeneity checks.
//!
//! Full homogeneity quantifies over `L × L^n` (`k·k^n` identities), Boolean
//! homogeneity over `L × {0,1}^n` (`k·2^n`), so the saving is `(k/2)^n`.
//! The (g-)comonotone counts are measured, not derived.

use std::fmt::Write as _;

use num_rational::Ratio;

use crate::axioms::{axiom_check, AxiomKind, FunctionTable};
use crate::lattice::Lattice;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CostModel {
    pub k: usize,
    pub n: usize,
    pub boolean_hom_pairs: u128,
    pub full_hom_pairs: u128,
    /// Zero until measured by [`run_bench`].
    pub comonotone_pairs: u128,
    /// Zero until measured by [`run_bench`].
    pub g_comonotone_pairs: u128,
}

impl CostModel {
    /// `full_hom_pairs / boolean_hom_pairs`, in lowest terms.
    pub fn reduction_factor(&self) -> Ratio<u128> {
        Ratio::new(self.full_hom_pairs, self.boolean_hom_pairs)
    }

    /// `(k/2)^n` computed independently of the pair counts.
    pub fn expected_factor(&self) -> Ratio<u128> {
        Ratio::new(self.k as u128, 2).pow(self.n as i32)
    }
}

/// Analytic counts for a lattice of size `k = |L|` and arity `n`.
pub fn cost_model(l: &Lattice, n: usize) -> CostModel {
    let k = l.size() as u128;
    let exp = n as u32;
    CostModel {
        k: l.size(),
        n,
        boolean_hom_pairs: k * 2u128.pow(exp),
        full_hom_pairs: k * k.pow(exp),
        comonotone_pairs: 0,
        g_comonotone_pairs: 0,
    }
}

/// Runs the instrumented checks on `f` and returns the measured counts.
pub fn run_bench(f: &FunctionTable) -> CostModel {
    let count = |k| axiom_check(f, k).pairs_checked as u128;
    CostModel {
        k: f.lattice().size(),
        n: f.arity(),
        boolean_hom_pairs: count(AxiomKind::BooleanInfHomogeneous),
        full_hom_pairs: count(AxiomKind::InfHomogeneous),
        comonotone_pairs: count(AxiomKind::ComonotoneSupremal),
        g_comonotone_pairs: count(AxiomKind::GComonotoneSupremal),
    }
}

/// Column-aligned cost table, followed by a note on any row where the
/// g-comonotone pair count differs from the Boolean count.
pub fn render_cost_table(rows: &[CostModel]) -> String {
    let header =
        ["k", "n", "boolean_pairs", "full_pairs", "comonotone_pairs", "g_comonotone_pairs", "reduction_factor"];
    let cells: Vec<[String; 7]> = rows
        .iter()
        .map(|r| {
            [
                r.k.to_string(),
                r.n.to_string(),
                r.boolean_hom_pairs.to_string(),
                r.full_hom_pairs.to_string(),
                r.comonotone_pairs.to_string(),
                r.g_comonotone_pairs.to_string(),
                r.reduction_factor().to_string(),
            ]
        })
        .collect();
    let widths: Vec<usize> =
        (0..7).map(|c| cells.iter().map(|row| row[c].len()).chain([header[c].len()]).max().unwrap_or(0)).collect();
    let mut out = String::new();
    let line = |out: &mut String, row: &[&str]| {
        let padded: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(&mut out, &header);
    for row in &cells {
        line(&mut out, &row.iter().map(String::as_str).collect::<Vec<_>>());
    }
    for r in rows.iter().filter(|r| r.g_comonotone_pairs != 0 && r.g_comonotone_pairs != r.boolean_hom_pairs) {
        let _ = writeln!(
            out,
            "note: k={} n={}: the k*2^n = {} figure counts the Boolean homogeneity pairs of condition (viii); \
             the g-comonotone conditions of (vii) range over {} pairs",
            r.k, r.n, r.boolean_hom_pairs, r.g_comonotone_pairs
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::capacity::{Capacity, SugenoForm};

    fn join_integral(k: usize, n: usize) -> FunctionTable {
        let l = Arc::new(Lattice::chain(k).unwrap());
        let values = (0..1usize << n).map(|s| if s == 0 { 0 } else { k - 1 }).collect();
        let m = Capacity::validate(l, n, values).unwrap();
        FunctionTable::of_capacity(&m, SugenoForm::SupOfMeets)
    }

    #[test]
    fn analytic_examples() {
        let c = cost_model(&Lattice::chain(3).unwrap(), 2);
        assert_eq!((c.boolean_hom_pairs, c.full_hom_pairs), (12, 27));
        assert_eq!(c.reduction_factor(), Ratio::new(9, 4));
        assert_eq!(cost_model(&Lattice::chain(4).unwrap(), 3).reduction_factor(), Ratio::from_integer(8));
        assert_eq!(cost_model(&Lattice::chain(2).unwrap(), 5).reduction_factor(), Ratio::from_integer(1));
    }

    #[test]
    fn measured_matches_analytic() {
        let measured = run_bench(&join_integral(3, 2));
        let analytic = cost_model(&Lattice::chain(3).unwrap(), 2);
        assert_eq!(measured.boolean_hom_pairs, analytic.boolean_hom_pairs);
        assert_eq!(measured.full_hom_pairs, analytic.full_hom_pairs);
        assert_eq!((measured.comonotone_pairs, measured.g_comonotone_pairs), (36, 38));
    }

    #[test]
    fn two_chain_counts_coincide() {
        let m = run_bench(&join_integral(2, 2));
        assert_eq!((m.boolean_hom_pairs, m.full_hom_pairs), (8, 8));
    }

    #[test]
    fn g_comonotone_exceeds_boolean_on_chain5() {
        let m = run_bench(&join_integral(5, 3));
        assert_eq!(m.boolean_hom_pairs, 40);
        assert_eq!(m.g_comonotone_pairs, 4209);
        assert!(render_cost_table(&[m]).contains("note: k=5 n=3"));
    }

    #[test]
    fn table_layout() {
        let text = render_cost_table(&[run_bench(&join_integral(3, 2))]);
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("k  n  boolean_pairs"));
        assert!(lines[1].ends_with("9/4"));
    }
}
