//! Exhaustive census of the lateral-bump-free permutations by two
//! independent routes: a direct scan of `S_n` and level-by-level growth of
//! the rooted tree whose edges are the drop-last-and-flatten map.
//!
//! Tree growth keeps only the current frontier; each frontier member stores
//! its insertion tableau so that expanding to the next level costs one probe
//! per candidate child instead of a full re-insertion.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::insertion::{self, LateralScanner};
use crate::model::{visit_s_n, Partition, Permutation, Tableau};

/// Largest `n` accepted by [`census_direct`]: a full scan of `S_10` is about
/// 3.6 million insertions.
pub const DIRECT_CENSUS_BOUND: usize = 10;

/// Largest `n` for which [`tree_levels`] materializes every level at once.
pub const TREE_LEVELS_BOUND: usize = 10;

/// Default memory budget for the tree frontier, in bytes.
pub const DEFAULT_MEMORY_BUDGET: u64 = 2 << 30;

/// One row of the census table.
///
/// `u_count` counts members with a full complement of `n + 1` surviving
/// children; `h_overlap` counts members whose insertion shape has pairwise
/// distinct column heights. Neither has a published reference value; they
/// are measured outputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub n: usize,
    pub v_count: u64,
    pub c_count: u64,
    pub u_count: u64,
    pub h_overlap: u64,
}

impl CensusRow {
    pub fn factorial(&self) -> u64 {
        (1..=self.n as u64).product()
    }

    /// `p_n = |V_n| / n!` in lowest terms.
    pub fn p_exact(&self) -> (u64, u64) {
        let f = self.factorial();
        let g = gcd(self.v_count, f);
        (self.v_count / g, f / g)
    }

    /// `p_n` rounded half-up to six decimal places.
    pub fn p_decimal(&self) -> String {
        let f = self.factorial() as u128;
        let scaled = (self.v_count as u128 * 1_000_000 + f / 2) / f;
        format!("{}.{:06}", scaled / 1_000_000, scaled % 1_000_000)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// Renders rows as the canonical CSV table.
pub fn rows_to_csv(rows: &[CensusRow]) -> String {
    let mut out = String::from("n,v_count,c_count,p_n_exact_num,p_n_exact_den,p_n_decimal,u_count\n");
    for row in rows {
        let (num, den) = row.p_exact();
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            row.n,
            row.v_count,
            row.c_count,
            num,
            den,
            row.p_decimal(),
            row.u_count
        ));
    }
    out
}

pub fn rows_to_json(rows: &[CensusRow]) -> serde_json::Value {
    json!({
        "schema_version": 1,
        "rows": rows
            .iter()
            .map(|row| {
                let (num, den) = row.p_exact();
                json!({
                    "n": row.n,
                    "v_count": row.v_count,
                    "c_count": row.c_count,
                    "p_n_exact_num": num,
                    "p_n_exact_den": den,
                    "p_n_decimal": row.p_decimal(),
                    "u_count": row.u_count,
                    "h_overlap": row.h_overlap,
                })
            })
            .collect::<Vec<_>>(),
    })
}

/// Scans all of `S_n` with the lateral-bump scanner and tallies the row
/// exactly. Survivors additionally get their child probes and a column-height
/// check.
pub fn census_direct(n: usize) -> Result<CensusRow> {
    if n > DIRECT_CENSUS_BOUND {
        return Err(Error::BoundExceeded { n, bound: DIRECT_CENSUS_BOUND, what: "direct census" });
    }
    let mut row = CensusRow { n, v_count: 0, c_count: 0, u_count: 0, h_overlap: 0 };
    let mut scanner = LateralScanner::new();
    visit_s_n(n, |word| {
        if scanner.scan(word) {
            row.c_count += 1;
            return;
        }
        row.v_count += 1;
        let rows = scanner.rows();
        let children = (0..=n as u32)
            .filter(|&k| !insertion::star_probe_rows(rows, k))
            .count();
        if children == n + 1 {
            row.u_count += 1;
        }
        if !shape_of_rows(rows).has_repeated_column_height() {
            row.h_overlap += 1;
        }
    });
    debug_assert_eq!(row.v_count + row.c_count, row.factorial());
    Ok(row)
}

fn shape_of_rows(rows: &[Vec<u32>]) -> Partition {
    Partition::new(rows.iter().map(|r| r.len() as u32).collect())
        .expect("insertion rows have weakly decreasing lengths")
}

/// A frontier member: the word and its insertion tableau, both on raw rows.
#[derive(Debug, Clone)]
struct Member {
    word: Vec<u32>,
    rows: Vec<Vec<u32>>,
}

impl Member {
    fn root() -> Self {
        Member { word: vec![1], rows: vec![vec![1]] }
    }

    fn child_count(&self, n: usize) -> usize {
        (0..=n as u32)
            .filter(|&k| !insertion::star_probe_rows(&self.rows, k))
            .count()
    }

    /// Children that stay lateral-bump-free, built without re-running the
    /// whole word: entries above `k` shift up by one and the new letter
    /// `k + 1` is inserted on top of the relabeled tableau.
    fn build_children(&self, n: usize) -> Vec<Member> {
        (0..=n as u32)
            .filter(|&k| !insertion::star_probe_rows(&self.rows, k))
            .map(|k| {
                let mut word: Vec<u32> =
                    self.word.iter().map(|&a| if a <= k { a } else { a + 1 }).collect();
                word.push(k + 1);
                let mut rows: Vec<Vec<u32>> = self
                    .rows
                    .iter()
                    .map(|r| r.iter().map(|&e| if e <= k { e } else { e + 1 }).collect())
                    .collect();
                insertion::insert_into_rows_raw(&mut rows, k + 1);
                Member { word, rows }
            })
            .collect()
    }
}

/// Frontier-only tree census up to `n_max`, within `budget` bytes of frontier
/// storage. Rows agree with [`census_direct`] wherever both run.
pub fn census_tree_with_budget(n_max: usize, budget: u64) -> Result<Vec<CensusRow>> {
    if n_max == 0 {
        return Ok(Vec::new());
    }
    if n_max > 20 {
        return Err(Error::BoundExceeded { n: n_max, bound: 20, what: "tree census" });
    }
    let mut rows = Vec::with_capacity(n_max);
    let mut frontier = vec![Member::root()];
    for n in 1..=n_max {
        let counts: Vec<usize> = frontier.par_iter().map(|m| m.child_count(n)).collect();
        let factorial: u64 = (1..=n as u64).product();
        let v_count = frontier.len() as u64;
        rows.push(CensusRow {
            n,
            v_count,
            c_count: factorial - v_count,
            u_count: counts.iter().filter(|&&c| c == n + 1).count() as u64,
            h_overlap: frontier
                .iter()
                .filter(|m| !shape_of_rows(&m.rows).has_repeated_column_height())
                .count() as u64,
        });
        if n == n_max {
            break;
        }
        let projected: u64 = counts.iter().map(|&c| c as u64).sum();
        let member_bytes = estimated_member_bytes(n + 1);
        if projected * member_bytes > budget {
            return Err(Error::MemoryBudgetExceeded { projected: projected * member_bytes, budget });
        }
        let mut next: Vec<Member> = frontier
            .par_iter()
            .map(|m| m.build_children(n))
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect();
        next.par_sort_unstable_by(|a, b| a.word.cmp(&b.word));
        frontier = next;
    }
    Ok(rows)
}

/// Frontier-only tree census with the default memory budget.
pub fn census_tree(n_max: usize) -> Result<Vec<CensusRow>> {
    census_tree_with_budget(n_max, DEFAULT_MEMORY_BUDGET)
}

fn estimated_member_bytes(n: usize) -> u64 {
    // word + tableau cells + per-Vec overhead for ~2*sqrt(2n) rows
    let rows = 2 * ((2 * n) as f64).sqrt() as u64 + 2;
    8 * n as u64 + 32 * rows + 96
}

/// One fully materialized tree level, members in lexicographic word order.
#[derive(Debug, Clone)]
pub struct TreeLevel {
    pub n: usize,
    pub members: Vec<TreeMember>,
}

#[derive(Debug, Clone)]
pub struct TreeMember {
    pub word: Permutation,
    pub tableau: Tableau,
    pub child_count: usize,
}

/// Materializes levels `1..=n_max` of the tree. Bounded by
/// [`TREE_LEVELS_BOUND`]; use [`census_tree`] for counting runs beyond it.
pub fn tree_levels(n_max: usize) -> Result<Vec<TreeLevel>> {
    if n_max > TREE_LEVELS_BOUND {
        return Err(Error::BoundExceeded { n: n_max, bound: TREE_LEVELS_BOUND, what: "tree levels" });
    }
    let mut levels = Vec::new();
    let mut frontier = vec![Member::root()];
    for n in 1..=n_max {
        levels.push(TreeLevel {
            n,
            members: frontier
                .iter()
                .map(|m| TreeMember {
                    word: Permutation::new(m.word.clone()).expect("members are permutations"),
                    tableau: Tableau::new(m.rows.clone()).expect("members carry valid tableaux"),
                    child_count: m.child_count(n),
                })
                .collect(),
        });
        if n == n_max {
            break;
        }
        let mut next: Vec<Member> =
            frontier.iter().flat_map(|m| m.build_children(n)).collect();
        next.sort_unstable_by(|a, b| a.word.cmp(&b.word));
        frontier = next;
    }
    Ok(levels)
}

/// Report of the per-node child-count caps over one level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChildrenBoundReport {
    pub n: usize,
    /// Members with `n + 1` surviving children (the level's `U_n`).
    pub u_count: u64,
    /// Members whose shape has two equal-height columns; each is checked
    /// against the stricter cap of `n` children.
    pub equal_height_count: u64,
    pub max_children: usize,
}

/// Checks both child-count caps on a level: every member has at most `n + 1`
/// children, and members whose shape has two equal-height columns have at
/// most `n`. Fails with the violating permutation.
pub fn verify_children_bound(level: &TreeLevel) -> Result<ChildrenBoundReport> {
    let n = level.n;
    let mut report =
        ChildrenBoundReport { n, u_count: 0, equal_height_count: 0, max_children: 0 };
    for member in &level.members {
        report.max_children = report.max_children.max(member.child_count);
        if member.child_count > n + 1 {
            return Err(Error::CheckFailed {
                check: "children-bound (n+1 cap)",
                witness: member.word.to_string(),
            });
        }
        if member.child_count == n + 1 {
            report.u_count += 1;
        }
        if member.tableau.shape().has_repeated_column_height() {
            report.equal_height_count += 1;
            if member.child_count > n {
                return Err(Error::CheckFailed {
                    check: "children-bound (equal-height cap)",
                    witness: member.word.to_string(),
                });
            }
        }
    }
    Ok(report)
}

/// Checks that every `v` in `S_n` has exactly `n + 1` distinct children, each
/// mapping back to `v`, and that the children of all `v` partition `S_{n+1}`.
pub fn verify_inverse_size(n: usize) -> Result<()> {
    if n > 6 {
        return Err(Error::BoundExceeded { n, bound: 6, what: "inverse-size check" });
    }
    let mut seen = std::collections::HashSet::new();
    for v in Permutation::all(n) {
        let kids = insertion::children(&v);
        if kids.len() != n + 1 {
            return Err(Error::CheckFailed { check: "inverse-size (count)", witness: v.to_string() });
        }
        for c in kids {
            if insertion::phi(&c) != v {
                return Err(Error::CheckFailed {
                    check: "inverse-size (phi round-trip)",
                    witness: c.to_string(),
                });
            }
            if !seen.insert(c.clone()) {
                return Err(Error::CheckFailed {
                    check: "inverse-size (duplicate child)",
                    witness: c.to_string(),
                });
            }
        }
    }
    let expected: u64 = (1..=n as u64 + 1).product();
    if seen.len() as u64 != expected {
        return Err(Error::CheckFailed {
            check: "inverse-size (partition of S_{n+1})",
            witness: format!("{} children != {}", seen.len(), expected),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direct_census_pinned_values() {
        let r3 = census_direct(3).unwrap();
        assert_eq!((r3.v_count, r3.c_count), (5, 1));
        let r2 = census_direct(2).unwrap();
        assert_eq!((r2.v_count, r2.c_count), (2, 0));
        let r4 = census_direct(4).unwrap();
        assert_eq!((r4.v_count, r4.c_count), (17, 7));
        let r1 = census_direct(1).unwrap();
        assert_eq!((r1.v_count, r1.c_count), (1, 0));
    }

    #[test]
    fn direct_census_bound() {
        assert!(matches!(census_direct(11), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn tree_matches_direct_up_to_seven() {
        let tree = census_tree(7).unwrap();
        for row in &tree {
            assert_eq!(*row, census_direct(row.n).unwrap(), "n = {}", row.n);
        }
    }

    #[test]
    fn tree_levels_reproduce_the_figure() {
        let levels = tree_levels(3).unwrap();
        let words =
            |l: &TreeLevel| l.members.iter().map(|m| m.word.to_string()).collect::<Vec<_>>();
        assert_eq!(words(&levels[0]), vec!["1"]);
        assert_eq!(words(&levels[1]), vec!["12", "21"]);
        assert_eq!(words(&levels[2]), vec!["123", "213", "231", "312", "321"]);
        // Edges: 12 -> {123, 231}, 21 -> {213, 312, 321}.
        let l2 = &levels[1];
        assert_eq!(l2.members[0].child_count, 2);
        assert_eq!(l2.members[1].child_count, 3);
        for m in &levels[2].members {
            let parent = insertion::phi(&m.word);
            assert!(l2.members.iter().any(|p| p.word == parent), "orphan {}", m.word);
        }
    }

    #[test]
    fn children_bound_report_small_levels() {
        let levels = tree_levels(4).unwrap();
        let r2 = verify_children_bound(&levels[1]).unwrap();
        assert_eq!(r2.u_count, 1); // only 21 keeps all three children
        let r3 = verify_children_bound(&levels[2]).unwrap();
        assert_eq!(r3.u_count, 3); // 213, 231, 321
        assert_eq!(r3.max_children, 4);
        let r4 = verify_children_bound(&levels[3]).unwrap();
        assert_eq!(r4.n, 4);
        let total: usize = levels[3].members.iter().map(|m| m.child_count).sum();
        let v5 = census_tree(5).unwrap()[4].v_count;
        assert_eq!(total as u64, v5);
    }

    #[test]
    fn inverse_size_holds_up_to_five() {
        for n in 1..=5 {
            verify_inverse_size(n).unwrap();
        }
    }

    #[test]
    fn u_counts_never_exceed_h_overlap() {
        // Members with a full complement of children must have all-distinct
        // column heights.
        for row in census_tree(7).unwrap() {
            assert!(row.u_count <= row.h_overlap, "n = {}", row.n);
        }
    }

    #[test]
    fn p_rendering() {
        let r3 = census_direct(3).unwrap();
        assert_eq!(r3.p_exact(), (5, 6));
        assert_eq!(r3.p_decimal(), "0.833333");
        let r1 = census_direct(1).unwrap();
        assert_eq!(r1.p_exact(), (1, 1));
        assert_eq!(r1.p_decimal(), "1.000000");
        let r4 = census_direct(4).unwrap();
        assert_eq!(r4.p_exact(), (17, 24));
        assert_eq!(r4.p_decimal(), "0.708333");
    }

    #[test]
    fn csv_rendering_matches_golden_prefix() {
        let rows: Vec<CensusRow> = (1..=4).map(|n| census_direct(n).unwrap()).collect();
        let csv = rows_to_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "n,v_count,c_count,p_n_exact_num,p_n_exact_den,p_n_decimal,u_count"
        );
        assert_eq!(lines.next().unwrap(), "1,1,0,1,1,1.000000,1");
        assert_eq!(lines.next().unwrap(), "2,2,0,1,1,1.000000,1");
        assert_eq!(lines.next().unwrap(), "3,5,1,5,6,0.833333,3");
        let last = lines.next().unwrap();
        assert!(last.starts_with("4,17,7,17,24,0.708333,"));
    }

    #[test]
    fn memory_budget_is_enforced() {
        let err = census_tree_with_budget(8, 1024).unwrap_err();
        assert!(matches!(err, Error::MemoryBudgetExceeded { .. }));
    }
}
