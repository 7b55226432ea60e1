use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::Permutation;

/// A `p x q` matrix over the non-negative integers, stored row-major.
///
/// Serves both as an RSK input and as the exponent of a monomial `z^beta`.
/// Canonical text encoding: rows semicolon-separated, entries comma-separated,
/// e.g. `1,0,2;0,2,0;1,1,0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentMatrix {
    p: usize,
    q: usize,
    entries: Vec<u32>,
}

impl ExponentMatrix {
    pub fn new(p: usize, q: usize, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != p * q {
            return Err(Error::DimensionMismatch {
                expected: format!("{p}x{q}"),
                found: format!("{} entries", entries.len()),
            });
        }
        Ok(ExponentMatrix { p, q, entries })
    }

    pub fn zero(p: usize, q: usize) -> Self {
        ExponentMatrix { p, q, entries: vec![0; p * q] }
    }

    pub fn from_rows(rows: &[&[u32]]) -> Result<Self> {
        let p = rows.len();
        let q = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != q) {
            return Err(Error::DimensionMismatch {
                expected: format!("{p}x{q}"),
                found: "ragged rows".to_string(),
            });
        }
        Ok(ExponentMatrix { p, q, entries: rows.concat() })
    }

    /// The permutation matrix of `w`: a 1 in row `w_i`, column `i`.
    pub fn permutation_matrix(w: &Permutation) -> Self {
        let n = w.n();
        let mut m = Self::zero(n, n);
        for (i, &wi) in w.word().iter().enumerate() {
            m.entries[(wi as usize - 1) * n + i] = 1;
        }
        m
    }

    /// Reads a permutation back off a permutation matrix: `w_i` is the row
    /// index of the 1 in column `i`.
    pub fn to_permutation(&self) -> Result<Permutation> {
        if self.p != self.q {
            return Err(Error::NotAPermutationMatrix {
                reason: format!("not square: {}x{}", self.p, self.q),
            });
        }
        let n = self.p;
        let mut word = vec![0u32; n];
        for i in 0..n {
            let mut row_sum = 0u32;
            for (j, slot) in word.iter_mut().enumerate() {
                let e = self.entry(i, j);
                if e > 1 {
                    return Err(Error::NotAPermutationMatrix {
                        reason: format!("entry {e} at row {}, column {}", i + 1, j + 1),
                    });
                }
                row_sum += e;
                if e == 1 {
                    if *slot != 0 {
                        return Err(Error::NotAPermutationMatrix {
                            reason: format!("column {} has two ones", j + 1),
                        });
                    }
                    *slot = i as u32 + 1;
                }
            }
            if row_sum != 1 {
                return Err(Error::NotAPermutationMatrix {
                    reason: format!("row {} has sum {row_sum}", i + 1),
                });
            }
        }
        Permutation::new(word)
    }

    pub fn row_count(&self) -> usize {
        self.p
    }

    pub fn col_count(&self) -> usize {
        self.q
    }

    /// Entry at 0-based `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.q + j]
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn row_sums(&self) -> Vec<u32> {
        (0..self.p)
            .map(|i| (0..self.q).map(|j| self.entry(i, j)).sum())
            .collect()
    }

    pub fn col_sums(&self) -> Vec<u32> {
        (0..self.q)
            .map(|j| (0..self.p).map(|i| self.entry(i, j)).sum())
            .collect()
    }

    pub fn margins(&self) -> MarginPair {
        MarginPair::new(self.row_sums(), self.col_sums())
            .expect("row and column sums of one matrix have equal totals")
    }

    /// Total of all entries; the degree of the monomial `z^beta`.
    pub fn total(&self) -> u64 {
        self.entries.iter().map(|&e| u64::from(e)).sum()
    }

    /// The column-major biword: entry `alpha_{i,j}` contributes `alpha_{i,j}`
    /// copies of the pair `(i | j)`, read down the columns from left to right.
    pub fn biword(&self) -> Biword {
        let mut top = Vec::new();
        let mut bottom = Vec::new();
        for j in 0..self.q {
            for i in 0..self.p {
                for _ in 0..self.entry(i, j) {
                    top.push(i as u32 + 1);
                    bottom.push(j as u32 + 1);
                }
            }
        }
        Biword::new(top, bottom).expect("column-major reading is canonically ordered")
    }
}

impl fmt::Display for ExponentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.p)
            .map(|i| {
                (0..self.q)
                    .map(|j| self.entry(i, j).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{}", rows.join(";"))
    }
}

impl FromStr for ExponentMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(ExponentMatrix::zero(0, 0));
        }
        let rows: Vec<Vec<u32>> = s
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|tok| tok.trim().parse::<u32>())
                    .collect::<std::result::Result<_, _>>()
            })
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse { what: "matrix", input: s.to_string() })?;
        let refs: Vec<&[u32]> = rows.iter().map(Vec::as_slice).collect();
        ExponentMatrix::from_rows(&refs)
    }
}

/// Prescribed row sums `sigma` and column sums `pi` with equal total mass.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarginPair {
    sigma: Vec<u32>,
    pi: Vec<u32>,
}

impl MarginPair {
    pub fn new(sigma: Vec<u32>, pi: Vec<u32>) -> Result<Self> {
        let sigma_total: u64 = sigma.iter().map(|&s| u64::from(s)).sum();
        let pi_total: u64 = pi.iter().map(|&s| u64::from(s)).sum();
        if sigma_total != pi_total {
            return Err(Error::MarginMismatch { sigma_total, pi_total });
        }
        Ok(MarginPair { sigma, pi })
    }

    /// The margins of `Mat_{1^n, 1^n}`, the permutation-matrix block.
    pub fn unit(n: usize) -> Self {
        MarginPair { sigma: vec![1; n], pi: vec![1; n] }
    }

    pub fn sigma(&self) -> &[u32] {
        &self.sigma
    }

    pub fn pi(&self) -> &[u32] {
        &self.pi
    }

    pub fn total(&self) -> u64 {
        self.sigma.iter().map(|&s| u64::from(s)).sum()
    }

    /// All matrices with these margins, in descending lexicographic order of
    /// the row-major entry sequence. Deterministic and duplicate-free; this
    /// ordering indexes the basis of every operator block.
    pub fn matrices(&self) -> Vec<ExponentMatrix> {
        let p = self.sigma.len();
        let q = self.pi.len();
        let mut out = Vec::new();
        let mut entries = vec![0u32; p * q];
        let mut row_rem = self.sigma.clone();
        let mut col_rem = self.pi.clone();
        fill_from(0, p, q, &mut entries, &mut row_rem, &mut col_rem, &mut out);
        out
    }
}

fn fill_from(
    pos: usize,
    p: usize,
    q: usize,
    entries: &mut Vec<u32>,
    row_rem: &mut [u32],
    col_rem: &mut [u32],
    out: &mut Vec<ExponentMatrix>,
) {
    if pos == p * q {
        if row_rem.iter().all(|&r| r == 0) && col_rem.iter().all(|&c| c == 0) {
            out.push(ExponentMatrix { p, q, entries: entries.clone() });
        }
        return;
    }
    let (i, j) = (pos / q, pos % q);
    // The last entry of a row or column is forced by its remaining sum.
    let forced_by_row = if j == q - 1 { Some(row_rem[i]) } else { None };
    let forced_by_col = if i == p - 1 { Some(col_rem[j]) } else { None };
    let candidates: Vec<u32> = match (forced_by_row, forced_by_col) {
        (Some(a), Some(b)) if a == b => vec![a],
        (Some(_), Some(_)) => vec![],
        (Some(a), None) => vec![a],
        (None, Some(b)) => vec![b],
        (None, None) => (0..=row_rem[i].min(col_rem[j])).rev().collect(),
    };
    for v in candidates {
        if v > row_rem[i] || v > col_rem[j] {
            continue;
        }
        entries[pos] = v;
        row_rem[i] -= v;
        col_rem[j] -= v;
        fill_from(pos + 1, p, q, entries, row_rem, col_rem, out);
        row_rem[i] += v;
        col_rem[j] += v;
        entries[pos] = 0;
    }
}

/// A two-line array `(top | bottom)` in the canonical column-major order:
/// the pair sequence `(bottom_k, top_k)` is weakly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Biword {
    top: Vec<u32>,
    bottom: Vec<u32>,
}

impl Biword {
    pub fn new(top: Vec<u32>, bottom: Vec<u32>) -> Result<Self> {
        if top.len() != bottom.len() {
            return Err(Error::DimensionMismatch {
                expected: format!("{} pairs", top.len()),
                found: format!("{} pairs", bottom.len()),
            });
        }
        for k in 1..top.len() {
            let in_order = bottom[k - 1] < bottom[k]
                || (bottom[k - 1] == bottom[k] && top[k - 1] <= top[k]);
            if !in_order {
                return Err(Error::Parse {
                    what: "biword (not in column-major order)",
                    input: format!("({:?} | {:?})", top, bottom),
                });
            }
        }
        Ok(Biword { top, bottom })
    }

    pub fn len(&self) -> usize {
        self.top.len()
    }

    pub fn is_empty(&self) -> bool {
        self.top.is_empty()
    }

    pub fn top(&self) -> &[u32] {
        &self.top
    }

    pub fn bottom(&self) -> &[u32] {
        &self.bottom
    }

    pub fn pairs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.top.iter().copied().zip(self.bottom.iter().copied())
    }
}

impl fmt::Display for Biword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join("");
        write!(f, "({} | {})", join(&self.top), join(&self.bottom))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(s: &str) -> ExponentMatrix {
        s.parse().unwrap()
    }

    #[test]
    fn biword_of_the_worked_matrix() {
        let alpha = matrix("1,0,2;0,2,0;1,1,0");
        let bw = alpha.biword();
        assert_eq!(bw.top(), &[1, 3, 2, 2, 3, 1, 1]);
        assert_eq!(bw.bottom(), &[1, 1, 2, 2, 2, 3, 3]);
        assert_eq!(bw.to_string(), "(1322311 | 1122233)");
    }

    #[test]
    fn biword_of_zero_matrix_is_empty() {
        assert!(ExponentMatrix::zero(3, 2).biword().is_empty());
    }

    #[test]
    fn biword_of_identity_matrix_is_diagonal() {
        let id = ExponentMatrix::permutation_matrix(&Permutation::identity(3));
        let bw = id.biword();
        assert_eq!(bw.top(), &[1, 2, 3]);
        assert_eq!(bw.bottom(), &[1, 2, 3]);
    }

    #[test]
    fn permutation_matrix_round_trip() {
        let w = Permutation::new(vec![3, 1, 2]).unwrap();
        let m = ExponentMatrix::permutation_matrix(&w);
        assert_eq!(m.to_string(), "0,1,0;0,0,1;1,0,0");
        assert_eq!(m.to_permutation().unwrap(), w);

        let id = ExponentMatrix::from_rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(id.to_permutation().unwrap(), Permutation::identity(3));
    }

    #[test]
    fn rejects_non_permutation_matrices() {
        let bad = matrix("1,1;0,0");
        assert!(matches!(bad.to_permutation(), Err(Error::NotAPermutationMatrix { .. })));
        let two = matrix("2,0;0,0");
        assert!(two.to_permutation().is_err());
    }

    #[test]
    fn margin_mismatch_is_rejected() {
        assert!(matches!(
            MarginPair::new(vec![2], vec![1]),
            Err(Error::MarginMismatch { sigma_total: 2, pi_total: 1 })
        ));
    }

    #[test]
    fn margin_enumeration_small_cases() {
        let m = MarginPair::unit(2).matrices();
        assert_eq!(m.len(), 2);
        assert_eq!(m[0].to_string(), "1,0;0,1");
        assert_eq!(m[1].to_string(), "0,1;1,0");

        let forced = MarginPair::new(vec![2], vec![1, 1]).unwrap().matrices();
        assert_eq!(forced.len(), 1);
        assert_eq!(forced[0].to_string(), "1,1");

        let m21 = MarginPair::new(vec![2, 1], vec![2, 1]).unwrap().matrices();
        let strings: Vec<String> = m21.iter().map(ExponentMatrix::to_string).collect();
        assert_eq!(strings, vec!["2,0;0,1", "1,1;1,0"]);
    }

    #[test]
    fn unit_margin_count_is_factorial() {
        let mut fact = 1usize;
        for n in 1..=6 {
            fact *= n;
            assert_eq!(MarginPair::unit(n).matrices().len(), fact, "n = {n}");
        }
    }

    #[test]
    fn enumerated_matrices_have_requested_margins() {
        let m = MarginPair::new(vec![3, 2, 2], vec![4, 2, 1]).unwrap();
        let all = m.matrices();
        assert!(!all.is_empty());
        for a in &all {
            assert_eq!(a.row_sums(), m.sigma());
            assert_eq!(a.col_sums(), m.pi());
        }
        // descending row-major lexicographic order, no duplicates
        for pair in all.windows(2) {
            assert!(pair[0].entries() > pair[1].entries());
        }
    }

    #[test]
    fn empty_margins_give_the_empty_matrix() {
        let m = MarginPair::new(vec![], vec![]).unwrap();
        assert_eq!(m.matrices().len(), 1);
        let with_zero_rows = MarginPair::new(vec![0, 0], vec![]).unwrap();
        assert_eq!(with_zero_rows.matrices().len(), 1);
    }

    #[test]
    fn matrix_text_round_trip() {
        let m = matrix("1,0,2;0,2,0;1,1,0");
        assert_eq!(m.to_string(), "1,0,2;0,2,0;1,1,0");
        assert_eq!(m.total(), 7);
        assert_eq!(m.row_sums(), vec![3, 2, 2]);
        assert_eq!(m.col_sums(), vec![2, 3, 2]);
    }
}
