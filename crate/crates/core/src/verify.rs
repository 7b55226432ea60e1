//! The lemma suite: machine checks of the counting and equivalence claims on
//! exhaustive finite ranges, each reporting a pass/fail verdict and, on
//! failure, the smallest witness in canonical text encoding.

use crate::bitableau::{self, DIAGONAL_POLY_BOUND};
use crate::census;
use crate::insertion;
use crate::model::{ExponentMatrix, InjectiveWord, MarginPair, Partition, Permutation};

/// Outcome of one named check.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub witness: Option<String>,
}

impl CheckReport {
    fn pass(name: &'static str, detail: String) -> Self {
        CheckReport { name, passed: true, detail, witness: None }
    }

    fn fail(name: &'static str, witness: String, detail: String) -> Self {
        CheckReport { name, passed: false, detail, witness: Some(witness) }
    }
}

/// Runs the whole suite cumulatively up to `n`, capping each check at its own
/// exhaustive bound.
pub fn run_suite(n: usize) -> Vec<CheckReport> {
    vec![
        equivalence(n.min(DIAGONAL_POLY_BOUND)),
        inverse_size(n.min(6)),
        children_bound(n.min(9)),
        restriction(n.min(7)),
        weight_law(n.min(6)),
        shape_equality(n.min(6)),
    ]
}

/// Zero diagonal entry if and only if a lateral bump, and nonzero entries in
/// `{-1, +1}`, over all permutation matrices of every size up to `cap`.
pub fn equivalence(cap: usize) -> CheckReport {
    const NAME: &str = "equivalence";
    let mut checked = 0u64;
    let mut zeros = 0u64;
    for m in 1..=cap {
        for w in Permutation::all(m) {
            let alpha = ExponentMatrix::permutation_matrix(&w);
            let entry = match bitableau::rsk_entry(&alpha, &alpha) {
                Ok(e) => e,
                Err(err) => return CheckReport::fail(NAME, w.to_string(), err.to_string()),
            };
            let lateral = insertion::has_lateral_bump(&InjectiveWord::from_permutation(&w));
            if (entry == 0) != lateral {
                return CheckReport::fail(
                    NAME,
                    w.to_string(),
                    format!("entry {entry} vs lateral {lateral}"),
                );
            }
            if !(-1..=1).contains(&entry) {
                return CheckReport::fail(NAME, w.to_string(), format!("entry {entry}"));
            }
            checked += 1;
            if entry == 0 {
                zeros += 1;
            }
        }
    }
    CheckReport::pass(NAME, format!("{checked} permutations through n = {cap}, {zeros} zeros"))
}

/// Every `v` has exactly `n + 1` distinct children partitioning the next
/// symmetric group, for every size up to `cap`.
pub fn inverse_size(cap: usize) -> CheckReport {
    const NAME: &str = "inverse-size";
    for m in 1..=cap {
        if let Err(err) = census::verify_inverse_size(m) {
            return CheckReport::fail(NAME, err.to_string(), format!("at n = {m}"));
        }
    }
    CheckReport::pass(NAME, format!("fibers partition S_2 .. S_{}", cap + 1))
}

/// Child-count caps on every tree level up to `cap`.
pub fn children_bound(cap: usize) -> CheckReport {
    const NAME: &str = "children-bound";
    let levels = match census::tree_levels(cap) {
        Ok(levels) => levels,
        Err(err) => return CheckReport::fail(NAME, err.to_string(), String::new()),
    };
    let mut members = 0u64;
    for level in &levels {
        if let Err(err) = census::verify_children_bound(level) {
            return CheckReport::fail(NAME, err.to_string(), format!("level {}", level.n));
        }
        members += level.members.len() as u64;
    }
    CheckReport::pass(NAME, format!("{members} nodes across levels 1..={cap}"))
}

/// Dropping the last letter preserves lateral-bump-freeness, exhaustively for
/// every size up to `cap`.
pub fn restriction(cap: usize) -> CheckReport {
    const NAME: &str = "restriction";
    let mut checked = 0u64;
    for m in 2..=cap {
        let mut witness = None;
        crate::model::visit_s_n(m, |word| {
            if witness.is_some() {
                return;
            }
            let w = Permutation::new(word.to_vec()).expect("valid word");
            if insertion::has_lateral_bump(&InjectiveWord::from_permutation(&w)) {
                return;
            }
            let parent = insertion::phi(&w);
            if insertion::has_lateral_bump(&InjectiveWord::from_permutation(&parent)) {
                witness = Some(w.to_string());
            }
        });
        if let Some(w) = witness {
            return CheckReport::fail(NAME, w, format!("at n = {m}"));
        }
        checked += 1;
    }
    CheckReport::pass(NAME, format!("lateral-free words up to n = {cap} ({checked} sizes)"))
}

fn margin_sweep(cap: usize) -> Vec<ExponentMatrix> {
    let mut out = Vec::new();
    for total in 0..=cap as u32 {
        for sigma in Partition::all_of(total) {
            for pi in Partition::all_of(total) {
                let margins = MarginPair::new(sigma.parts().to_vec(), pi.parts().to_vec())
                    .expect("equal totals by construction");
                out.extend(margins.matrices());
            }
        }
    }
    out
}

/// The tableau pair of every matrix carries the matrix's margins as weights.
pub fn weight_law(cap: usize) -> CheckReport {
    const NAME: &str = "weight";
    let mut checked = 0u64;
    for alpha in margin_sweep(cap) {
        let out = insertion::rsk(&alpha);
        let sigma = trim_zeros(alpha.row_sums());
        let pi = trim_zeros(alpha.col_sums());
        if trim_zeros(out.insertion.weight()) != sigma || trim_zeros(out.recording.weight()) != pi {
            return CheckReport::fail(NAME, alpha.to_string(), "weights differ from margins".into());
        }
        checked += 1;
    }
    CheckReport::pass(NAME, format!("{checked} matrices with totals up to {cap}"))
}

/// Insertion and recording tableaux always share one shape.
pub fn shape_equality(cap: usize) -> CheckReport {
    const NAME: &str = "shape-equality";
    let mut checked = 0u64;
    for alpha in margin_sweep(cap) {
        let out = insertion::rsk(&alpha);
        if out.insertion.shape() != out.recording.shape() {
            return CheckReport::fail(NAME, alpha.to_string(), "shapes differ".into());
        }
        checked += 1;
    }
    for m in 1..=cap {
        for w in Permutation::all(m) {
            let out = insertion::rsk(&ExponentMatrix::permutation_matrix(&w));
            if out.insertion.shape() != out.recording.shape() {
                return CheckReport::fail(NAME, w.to_string(), "shapes differ".into());
            }
            checked += 1;
        }
    }
    CheckReport::pass(NAME, format!("{checked} inputs with totals up to {cap}"))
}

fn trim_zeros(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}
