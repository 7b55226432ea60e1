//! Determinantal bitableaux and coefficient extraction.
//!
//! For same-shape tableaux `(P, Q)` and each column `j`, the minor `Delta_j`
//! is the determinant of the submatrix of variables `z_{r,c}` whose rows are
//! indexed by column `j` of `P` and whose columns by column `j` of `Q`. The
//! bitableau `[P|Q]` is the product of all minors, a homogeneous polynomial
//! whose degree is the number of boxes.
//!
//! Coefficients of single monomials are extracted two ways: a pruned
//! factor-by-factor search (fast path) and full expansion (the oracle the
//! fast path is tested against). Coefficient arithmetic is checked; overflow
//! panics rather than wrapping.

use std::collections::HashMap;

use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::insertion::{self, InsertionTrace};
use crate::model::{ExponentMatrix, MarginPair, Permutation, Tableau};

/// Exhaustive-sweep bound for the polynomial-oracle diagonal census.
pub const DIAGONAL_POLY_BOUND: usize = 6;
/// Exhaustive-sweep bound for the bump-trace diagonal census.
pub const DIAGONAL_TRACE_BOUND: usize = 10;
/// Default cap on basis size for materializing an operator block.
pub const DEFAULT_BLOCK_LIMIT: usize = 10_000;

/// One determinantal factor: row variable indices from a column of `P`,
/// column variable indices from the same column of `Q`. Both strictly
/// increasing and of equal length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorSpec {
    rows: Vec<u32>,
    cols: Vec<u32>,
}

impl MinorSpec {
    pub fn new(rows: Vec<u32>, cols: Vec<u32>) -> Result<Self> {
        if rows.len() != cols.len() {
            return Err(Error::ShapeMismatch {
                left: format!("{} row indices", rows.len()),
                right: format!("{} column indices", cols.len()),
            });
        }
        debug_assert!(rows.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(cols.windows(2).all(|w| w[0] < w[1]));
        Ok(MinorSpec { rows, cols })
    }

    /// The minors of a same-shape tableau pair, leftmost column first.
    pub fn factors(p: &Tableau, q: &Tableau) -> Result<Vec<MinorSpec>> {
        if p.shape() != q.shape() {
            return Err(Error::ShapeMismatch {
                left: p.shape().to_string(),
                right: q.shape().to_string(),
            });
        }
        (1..=p.shape().first_row_len() as usize)
            .map(|j| MinorSpec::new(p.column(j), q.column(j)))
            .collect()
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn cols(&self) -> &[u32] {
        &self.cols
    }
}

/// An integer-coefficient polynomial in the variables `z_{i,j}` of a fixed
/// `p x q` ambient grid, stored as a finitely supported exponent map.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePoly {
    p: usize,
    q: usize,
    terms: HashMap<Vec<u32>, i64>,
}

impl SparsePoly {
    pub fn zero(p: usize, q: usize) -> Self {
        SparsePoly { p, q, terms: HashMap::new() }
    }

    pub fn constant_one(p: usize, q: usize) -> Self {
        let mut terms = HashMap::new();
        terms.insert(vec![0; p * q], 1);
        SparsePoly { p, q, terms }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: Vec<u32>, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(key);
        match entry {
            std::collections::hash_map::Entry::Occupied(mut o) => {
                let sum = o.get().checked_add(coeff).expect("polynomial coefficient overflowed i64");
                if sum == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    /// Coefficient of `z^beta`. The ambient dimensions need not agree: a
    /// monomial matches when the exponent supports coincide, so `beta` rows
    /// or columns outside this grid must be zero.
    pub fn coefficient_of(&self, beta: &ExponentMatrix) -> i64 {
        let mut key = vec![0u32; self.p * self.q];
        for i in 0..beta.row_count() {
            for j in 0..beta.col_count() {
                let e = beta.entry(i, j);
                if e == 0 {
                    continue;
                }
                if i >= self.p || j >= self.q {
                    return 0;
                }
                key[i * self.q + j] = e;
            }
        }
        self.terms.get(&key).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        assert_eq!((self.p, self.q), (other.p, other.q), "ambient dimensions must agree");
        let mut out = SparsePoly::zero(self.p, self.q);
        for (ka, &ca) in &self.terms {
            for (kb, &cb) in &other.terms {
                let key: Vec<u32> = ka.iter().zip(kb).map(|(&a, &b)| a + b).collect();
                let coeff = ca.checked_mul(cb).expect("polynomial coefficient overflowed i64");
                out.add_term(key, coeff);
            }
        }
        out
    }

    /// Every term as `(exponent matrix, coefficient)` in the canonical order:
    /// ascending lexicographic on the flattened row-major key.
    pub fn sorted_terms(&self) -> Vec<(ExponentMatrix, i64)> {
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort();
        keys.into_iter()
            .map(|k| {
                let m = ExponentMatrix::new(self.p, self.q, k.clone())
                    .expect("stored keys share the ambient dimensions");
                (m, self.terms[k])
            })
            .collect()
    }

    /// Total degree of each term; None for the zero polynomial.
    pub fn degrees(&self) -> Option<Vec<u64>> {
        if self.terms.is_empty() {
            return None;
        }
        Some(self.terms.keys().map(|k| k.iter().map(|&e| u64::from(e)).sum()).collect())
    }

    /// Renders `coeff * z[i,j]^e ...` lines in canonical term order.
    pub fn render_lines(&self) -> String {
        let mut lines = Vec::new();
        for (m, coeff) in self.sorted_terms() {
            let mut factors = Vec::new();
            for i in 0..m.row_count() {
                for j in 0..m.col_count() {
                    let e = m.entry(i, j);
                    if e == 1 {
                        factors.push(format!("z[{},{}]", i + 1, j + 1));
                    } else if e > 1 {
                        factors.push(format!("z[{},{}]^{}", i + 1, j + 1, e));
                    }
                }
            }
            if factors.is_empty() {
                lines.push(format!("{coeff}"));
            } else {
                lines.push(format!("{coeff} * {}", factors.join(" ")));
            }
        }
        lines.join("\n")
    }
}

/// Full Leibniz expansion of one minor inside ambient dimensions `(p, q)`:
/// `h!` signed monomial terms, each coefficient `+1` or `-1`.
pub fn minor_poly_in(spec: &MinorSpec, p: usize, q: usize) -> SparsePoly {
    let h = spec.size();
    let mut out = SparsePoly::zero(p, q);
    let mut used = vec![false; h];
    let mut picks = vec![0usize; h];
    expand_minor(spec, 0, &mut used, &mut picks, 0, &mut |picks, inversions| {
        let mut key = vec![0u32; p * q];
        for (r_idx, &c_idx) in picks.iter().enumerate() {
            let r = spec.rows[r_idx] as usize - 1;
            let c = spec.cols[c_idx] as usize - 1;
            key[r * q + c] += 1;
        }
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        out.add_term(key, sign);
    });
    out
}

/// Full Leibniz expansion of one minor in its minimal ambient dimensions.
pub fn minor_poly(spec: &MinorSpec) -> SparsePoly {
    let p = spec.rows.iter().max().copied().unwrap_or(0) as usize;
    let q = spec.cols.iter().max().copied().unwrap_or(0) as usize;
    minor_poly_in(spec, p, q)
}

fn expand_minor(
    spec: &MinorSpec,
    r_idx: usize,
    used: &mut [bool],
    picks: &mut [usize],
    inversions: usize,
    emit: &mut impl FnMut(&[usize], usize),
) {
    let h = spec.size();
    if r_idx == h {
        emit(picks, inversions);
        return;
    }
    for c_idx in 0..h {
        if used[c_idx] {
            continue;
        }
        // New inversions: previously used columns to the right of this one.
        let added = used[c_idx + 1..].iter().filter(|&&u| u).count();
        used[c_idx] = true;
        picks[r_idx] = c_idx;
        expand_minor(spec, r_idx + 1, used, picks, inversions + added, emit);
        used[c_idx] = false;
    }
}

/// The bitableau `[P|Q]`: the expanded product of all column minors.
/// Homogeneous of degree `|shape|`.
pub fn bitableau(p: &Tableau, q: &Tableau) -> Result<SparsePoly> {
    let factors = MinorSpec::factors(p, q)?;
    let rows = factors.iter().flat_map(|f| &f.rows).max().copied().unwrap_or(0) as usize;
    let cols = factors.iter().flat_map(|f| &f.cols).max().copied().unwrap_or(0) as usize;
    let mut acc = SparsePoly::constant_one(rows, cols);
    for spec in &factors {
        acc = acc.mul(&minor_poly_in(spec, rows, cols));
    }
    Ok(acc)
}

/// Coefficient of `z^beta` in `[P|Q]` by pruned factor-by-factor search.
///
/// Minors are processed left to right; each Leibniz term subtracts its
/// exponents from the residual target and any branch that would drive an
/// exponent negative is cut. Agrees exactly with reading the coefficient off
/// the full expansion.
pub fn coefficient(p: &Tableau, q: &Tableau, beta: &ExponentMatrix) -> Result<i64> {
    let factors = MinorSpec::factors(p, q)?;
    if beta.total() != p.size() as u64 {
        return Ok(0);
    }
    let mut residual = beta.entries().to_vec();
    let mut acc = 0i64;
    coeff_search(&factors, 0, beta.row_count(), beta.col_count(), &mut residual, 1, &mut acc);
    Ok(acc)
}

fn coeff_search(
    factors: &[MinorSpec],
    f_idx: usize,
    p: usize,
    q: usize,
    residual: &mut [u32],
    sign: i64,
    acc: &mut i64,
) {
    if f_idx == factors.len() {
        debug_assert!(residual.iter().all(|&e| e == 0), "degree bookkeeping went wrong");
        *acc = acc.checked_add(sign).expect("coefficient accumulator overflowed i64");
        return;
    }
    let spec = &factors[f_idx];
    let h = spec.size();
    let mut used: u64 = 0;
    minor_search(spec, 0, h, p, q, &mut used, 0, factors, f_idx, residual, sign, acc);
}

#[allow(clippy::too_many_arguments)]
fn minor_search(
    spec: &MinorSpec,
    r_idx: usize,
    h: usize,
    p: usize,
    q: usize,
    used: &mut u64,
    inversions: usize,
    factors: &[MinorSpec],
    f_idx: usize,
    residual: &mut [u32],
    sign: i64,
    acc: &mut i64,
) {
    if r_idx == h {
        let term_sign = if inversions.is_multiple_of(2) { sign } else { -sign };
        coeff_search(factors, f_idx + 1, p, q, residual, term_sign, acc);
        return;
    }
    let r = spec.rows[r_idx] as usize - 1;
    if r >= p {
        return; // variable row outside the target's grid: exponent is zero
    }
    for c_idx in 0..h {
        if *used & (1 << c_idx) != 0 {
            continue;
        }
        let c = spec.cols[c_idx] as usize - 1;
        if c >= q {
            continue;
        }
        let cell = r * q + c;
        if residual[cell] == 0 {
            continue;
        }
        let added = (*used >> (c_idx + 1)).count_ones() as usize;
        residual[cell] -= 1;
        *used |= 1 << c_idx;
        minor_search(
            spec,
            r_idx + 1,
            h,
            p,
            q,
            used,
            inversions + added,
            factors,
            f_idx,
            residual,
            sign,
            acc,
        );
        *used &= !(1 << c_idx);
        residual[cell] += 1;
    }
}

/// One entry of the operator block: the coefficient of `z^beta` in
/// `[P_alpha | Q_alpha]`. Errors when the two matrices have different margins.
pub fn rsk_entry(beta: &ExponentMatrix, alpha: &ExponentMatrix) -> Result<i64> {
    if beta.margins() != alpha.margins() {
        let (s, t) = (beta.margins(), alpha.margins());
        return Err(Error::MarginMismatch { sigma_total: s.total(), pi_total: t.total() });
    }
    let out = insertion::rsk(alpha);
    coefficient(&out.insertion, &out.recording, beta)
}

/// The operator block over one margin pair, expressed in the canonical
/// enumeration of `Mat_(sigma,pi)`: `entries[b][a]` is the coefficient of
/// `z^{basis[b]}` in the bitableau of `basis[a]`.
#[derive(Debug, Clone)]
pub struct BlockMatrix {
    pub margin: MarginPair,
    pub basis: Vec<ExponentMatrix>,
    pub entries: Vec<Vec<i64>>,
}

impl BlockMatrix {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.dimension()).map(|i| self.entries[i][i]).collect()
    }

    pub fn trace(&self) -> i64 {
        self.diagonal()
            .iter()
            .try_fold(0i64, |t, &d| t.checked_add(d))
            .expect("block trace overflowed i64")
    }

    /// JSON export: margins, basis in canonical text encoding, dense entries,
    /// and the trace.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "schema_version": 1,
            "sigma": self.margin.sigma(),
            "pi": self.margin.pi(),
            "basis": self.basis.iter().map(ExponentMatrix::to_string).collect::<Vec<_>>(),
            "entries": self.entries,
            "trace": self.trace(),
        })
    }
}

/// Materializes the block over `Mat_(sigma,pi)` with the default size limit.
pub fn block(margin: &MarginPair) -> Result<BlockMatrix> {
    block_with_limit(margin, DEFAULT_BLOCK_LIMIT)
}

/// As [`block`], with an explicit cap on the basis size. Columns are filled
/// in parallel (one `alpha` per task) and assembled in basis order.
pub fn block_with_limit(margin: &MarginPair, limit: usize) -> Result<BlockMatrix> {
    let basis = margin.matrices();
    if basis.len() > limit {
        return Err(Error::BlockTooLarge { size: basis.len(), limit });
    }
    let columns: Vec<Vec<i64>> = basis
        .par_iter()
        .map(|alpha| {
            let out = insertion::rsk(alpha);
            basis
                .iter()
                .map(|beta| {
                    coefficient(&out.insertion, &out.recording, beta)
                        .expect("basis tableaux share one shape per alpha")
                })
                .collect()
        })
        .collect();
    let n = basis.len();
    let entries: Vec<Vec<i64>> =
        (0..n).map(|b| (0..n).map(|a| columns[a][b]).collect()).collect();
    Ok(BlockMatrix { margin: margin.clone(), basis, entries })
}

/// How to evaluate the diagonal entries of the unit-margin block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagonalMethod {
    /// Pruned coefficient extraction per permutation; bound
    /// [`DIAGONAL_POLY_BOUND`].
    Polynomial,
    /// Lateral-bump detection, with signs read off the insertion trace;
    /// bound [`DIAGONAL_TRACE_BOUND`].
    BumpTrace,
}

/// Counts of diagonal entries of the `Mat_{1^n,1^n}` block by value.
/// `zeros` is `|C_n|`; `plus_ones + minus_ones` is `|V_n|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiagonalCensus {
    pub n: usize,
    pub zeros: u64,
    pub plus_ones: u64,
    pub minus_ones: u64,
}

impl DiagonalCensus {
    pub fn nonzeros(&self) -> u64 {
        self.plus_ones + self.minus_ones
    }
}

/// Sweeps all permutation matrices of size `n` and classifies each diagonal
/// entry of the block. Checks that every entry lies in `{-1, 0, +1}` and
/// that zero and nonzero counts partition `n!`.
pub fn diagonal_zero_census(n: usize, method: DiagonalMethod) -> Result<DiagonalCensus> {
    let bound = match method {
        DiagonalMethod::Polynomial => DIAGONAL_POLY_BOUND,
        DiagonalMethod::BumpTrace => DIAGONAL_TRACE_BOUND,
    };
    if n > bound {
        return Err(Error::BoundExceeded { n, bound, what: "diagonal census" });
    }
    let mut census = DiagonalCensus { n, zeros: 0, plus_ones: 0, minus_ones: 0 };
    let mut factorial = 1u64;
    for i in 2..=n as u64 {
        factorial *= i;
    }
    crate::model::visit_s_n(n, |word| {
        let w = Permutation::new(word.to_vec()).expect("visit_s_n yields permutations");
        let entry = match method {
            DiagonalMethod::Polynomial => {
                let alpha = ExponentMatrix::permutation_matrix(&w);
                rsk_entry(&alpha, &alpha).expect("alpha shares margins with itself")
            }
            DiagonalMethod::BumpTrace => {
                let (_, trace) = insertion::schensted(&w);
                if trace.has_lateral() {
                    0
                } else {
                    diagonal_sign_from_trace(&trace)
                }
            }
        };
        match entry {
            0 => census.zeros += 1,
            1 => census.plus_ones += 1,
            -1 => census.minus_ones += 1,
            other => panic!("diagonal entry {other} outside {{-1, 0, +1}} for w = {w}"),
        }
    });
    assert_eq!(census.zeros + census.nonzeros(), factorial, "diagonal census must cover S_n");
    Ok(census)
}

/// Sign of the diagonal entry for a lateral-bump-free insertion trace.
///
/// Without lateral bumps every letter stays in the column where it first
/// landed, and the step's new box opens in that same column, so the letter
/// pairs `(w_i, i)` of one column select one Leibniz term in one minor. The
/// entry's sign is the product over columns of the parity of the pairing
/// between sorted letters and sorted step indices.
pub fn diagonal_sign_from_trace(trace: &InsertionTrace) -> i64 {
    debug_assert!(!trace.has_lateral());
    let mut by_column: HashMap<u32, Vec<(u32, u32)>> = HashMap::new();
    for step in &trace.steps {
        let col = step
            .outcome
            .bumps
            .first()
            .map(|b| b.from_col)
            .unwrap_or(step.outcome.new_box.1);
        by_column.entry(col).or_default().push((step.letter, step.index as u32));
    }
    let mut inversions = 0usize;
    for (_, mut pairs) in by_column {
        pairs.sort_unstable();
        for i in 0..pairs.len() {
            for j in i + 1..pairs.len() {
                if pairs[i].1 > pairs[j].1 {
                    inversions += 1;
                }
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::insertion::{has_lateral_bump, rsk, schensted};
    use crate::model::InjectiveWord;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn matrix(s: &str) -> ExponentMatrix {
        s.parse().unwrap()
    }

    #[test]
    fn one_by_one_minor_is_a_variable() {
        let spec = MinorSpec::new(vec![1], vec![1]).unwrap();
        let poly = minor_poly(&spec);
        assert_eq!(poly.term_count(), 1);
        assert_eq!(poly.coefficient_of(&matrix("1")), 1);
    }

    #[test]
    fn two_by_two_minor_expansion() {
        // rows {1,2}, cols {1,3}: z11*z23 - z13*z21
        let spec = MinorSpec::new(vec![1, 2], vec![1, 3]).unwrap();
        let poly = minor_poly(&spec);
        assert_eq!(poly.term_count(), 2);
        assert_eq!(poly.coefficient_of(&matrix("1,0,0;0,0,1")), 1);
        assert_eq!(poly.coefficient_of(&matrix("0,0,1;1,0,0")), -1);
    }

    #[test]
    fn three_by_three_minor_has_six_signed_terms() {
        let spec = MinorSpec::new(vec![1, 2, 3], vec![1, 2, 3]).unwrap();
        let poly = minor_poly(&spec);
        assert_eq!(poly.term_count(), 6);
        assert_eq!(poly.coefficient_of(&matrix("1,0,0;0,1,0;0,0,1")), 1);
        assert_eq!(poly.coefficient_of(&matrix("0,1,0;1,0,0;0,0,1")), -1);
        assert_eq!(poly.coefficient_of(&matrix("0,0,1;1,0,0;0,1,0")), 1);
    }

    #[test]
    fn bitableau_of_the_worked_pair() {
        // Columns of P = [1,1,1,3],[2,2],[3]: {1,2,3}, {1,2}, {1}, {3}
        // Columns of Q = [1,1,2,2],[2,3],[3]: {1,2,3}, {1,3}, {2}, {2}
        let out = rsk(&matrix("1,0,2;0,2,0;1,1,0"));
        let factors = MinorSpec::factors(&out.insertion, &out.recording).unwrap();
        let sizes: Vec<usize> = factors.iter().map(MinorSpec::size).collect();
        assert_eq!(sizes, vec![3, 2, 1, 1]);
        assert_eq!(factors[1].rows(), &[1, 2]);
        assert_eq!(factors[1].cols(), &[1, 3]);
        assert_eq!(factors[2].rows(), &[1]);
        assert_eq!(factors[2].cols(), &[2]);
        assert_eq!(factors[3].rows(), &[3]);
        assert_eq!(factors[3].cols(), &[2]);

        let poly = bitableau(&out.insertion, &out.recording).unwrap();
        // (3x3)(2x2) product with two fixed variables: at most 12 monomials.
        assert_eq!(poly.degrees().unwrap(), vec![7; poly.term_count()]);
        // Every monomial carries the margins of alpha.
        for (m, _) in poly.sorted_terms() {
            assert_eq!(m.row_sums(), vec![3, 2, 2]);
            assert_eq!(m.col_sums(), vec![2, 3, 2]);
        }
    }

    #[test]
    fn bitableau_of_single_rows_is_a_diagonal_monomial() {
        let row = Tableau::new(vec![vec![1, 2, 3, 4]]).unwrap();
        let poly = bitableau(&row, &row).unwrap();
        assert_eq!(poly.term_count(), 1);
        assert_eq!(poly.coefficient_of(&matrix("1,0,0,0;0,1,0,0;0,0,1,0;0,0,0,1")), 1);
    }

    #[test]
    fn bitableau_of_single_column_is_a_two_by_two_determinant() {
        let col = Tableau::new(vec![vec![1], vec![2]]).unwrap();
        let poly = bitableau(&col, &col).unwrap();
        assert_eq!(poly.coefficient_of(&matrix("1,0;0,1")), 1);
        assert_eq!(poly.coefficient_of(&matrix("0,1;1,0")), -1);
    }

    #[test]
    fn bitableau_rejects_shape_mismatch() {
        let a = Tableau::new(vec![vec![1, 2]]).unwrap();
        let b = Tableau::new(vec![vec![1], vec![2]]).unwrap();
        assert!(matches!(bitableau(&a, &b), Err(Error::ShapeMismatch { .. })));
    }

    #[test]
    fn coefficient_examples() {
        let row = Tableau::new(vec![vec![1, 2, 3]]).unwrap();
        assert_eq!(coefficient(&row, &row, &matrix("1,0,0;0,1,0;0,0,1")).unwrap(), 1);

        let col = Tableau::new(vec![vec![1], vec![2]]).unwrap();
        assert_eq!(coefficient(&col, &col, &matrix("0,1;1,0")).unwrap(), -1);

        let out = rsk(&ExponentMatrix::permutation_matrix(&perm("132")));
        let beta = ExponentMatrix::permutation_matrix(&perm("132"));
        assert_eq!(coefficient(&out.insertion, &out.recording, &beta).unwrap(), 0);
    }

    #[test]
    fn rsk_entry_examples() {
        let id = ExponentMatrix::permutation_matrix(&Permutation::identity(4));
        assert_eq!(rsk_entry(&id, &id).unwrap(), 1);
        let m132 = ExponentMatrix::permutation_matrix(&perm("132"));
        assert_eq!(rsk_entry(&m132, &m132).unwrap(), 0);
        let m21 = ExponentMatrix::permutation_matrix(&perm("21"));
        assert_eq!(rsk_entry(&m21, &m21).unwrap(), -1);
    }

    #[test]
    fn rsk_entry_rejects_margin_mismatch() {
        let a = matrix("1,0;0,1");
        let b = matrix("2,0;0,0");
        assert!(matches!(rsk_entry(&a, &b), Err(Error::MarginMismatch { .. })));
    }

    #[test]
    fn block_of_unit_margins_two() {
        let b = block(&MarginPair::unit(2)).unwrap();
        assert_eq!(b.dimension(), 2);
        assert_eq!(b.basis[0].to_string(), "1,0;0,1");
        assert_eq!(b.basis[1].to_string(), "0,1;1,0");
        assert_eq!(b.diagonal(), vec![1, -1]);
        assert_eq!(b.trace(), 0);
        assert_eq!(b.entries, vec![vec![1, 1], vec![0, -1]]);
    }

    #[test]
    fn block_of_forced_margin_is_identity_entry() {
        let m = MarginPair::new(vec![3], vec![1, 1, 1]).unwrap();
        let b = block(&m).unwrap();
        assert_eq!(b.dimension(), 1);
        assert_eq!(b.entries, vec![vec![1]]);
    }

    #[test]
    fn block_limit_is_enforced() {
        let err = block_with_limit(&MarginPair::unit(4), 10).unwrap_err();
        assert!(matches!(err, Error::BlockTooLarge { size: 24, limit: 10 }));
    }

    #[test]
    fn unit_block_diagonal_matches_census_at_n3() {
        let b = block(&MarginPair::unit(3)).unwrap();
        let zeros = b.diagonal().iter().filter(|&&d| d == 0).count();
        assert_eq!(zeros, 1);
        // The unique zero sits at the matrix of 132.
        let w132 = ExponentMatrix::permutation_matrix(&perm("132"));
        let idx = b.basis.iter().position(|m| *m == w132).unwrap();
        assert_eq!(b.entries[idx][idx], 0);

        let census = diagonal_zero_census(3, DiagonalMethod::Polynomial).unwrap();
        assert_eq!((census.zeros, census.nonzeros()), (1, 5));
    }

    #[test]
    fn diagonal_census_small_values() {
        let c1 = diagonal_zero_census(1, DiagonalMethod::Polynomial).unwrap();
        assert_eq!((c1.zeros, c1.nonzeros()), (0, 1));
        let c4 = diagonal_zero_census(4, DiagonalMethod::Polynomial).unwrap();
        assert_eq!((c4.zeros, c4.nonzeros()), (7, 17));
        let c4t = diagonal_zero_census(4, DiagonalMethod::BumpTrace).unwrap();
        assert_eq!(c4, c4t);
    }

    #[test]
    fn census_bound_is_enforced() {
        assert!(matches!(
            diagonal_zero_census(7, DiagonalMethod::Polynomial),
            Err(Error::BoundExceeded { .. })
        ));
        assert!(matches!(
            diagonal_zero_census(11, DiagonalMethod::BumpTrace),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn trace_sign_agrees_with_polynomial_oracle_up_to_n5() {
        for n in 1..=5 {
            for w in Permutation::all(n) {
                if has_lateral_bump(&InjectiveWord::from_permutation(&w)) {
                    continue;
                }
                let alpha = ExponentMatrix::permutation_matrix(&w);
                let oracle = rsk_entry(&alpha, &alpha).unwrap();
                let (_, trace) = schensted(&w);
                assert_eq!(diagonal_sign_from_trace(&trace), oracle, "w = {w}");
            }
        }
    }

    #[test]
    fn pruned_coefficient_matches_full_expansion_on_s4_blocks() {
        let basis = MarginPair::unit(4).matrices();
        for alpha in &basis {
            let out = rsk(alpha);
            let full = bitableau(&out.insertion, &out.recording).unwrap();
            for beta in &basis {
                assert_eq!(
                    coefficient(&out.insertion, &out.recording, beta).unwrap(),
                    full.coefficient_of(beta),
                );
            }
        }
    }

    #[test]
    fn render_lines_are_canonical() {
        let col = Tableau::new(vec![vec![1], vec![2]]).unwrap();
        let poly = bitableau(&col, &col).unwrap();
        assert_eq!(poly.render_lines(), "-1 * z[1,2] z[2,1]\n1 * z[1,1] z[2,2]");
    }
}
