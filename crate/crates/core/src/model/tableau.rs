use std::fmt;

use crate::error::{Error, Result};
use crate::model::Partition;

/// A semistandard Young tableau in French convention: `rows[0]` is the bottom
/// row, rows weakly increase left to right, columns strictly increase bottom
/// to top. Entries are positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tableau {
    rows: Vec<Vec<u32>>,
}

impl Tableau {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let t = Tableau { rows };
        t.validate()?;
        Ok(t)
    }

    pub fn empty() -> Self {
        Tableau { rows: Vec::new() }
    }

    /// Construct without checking the SSYT conditions.
    ///
    /// Used by the insertion engine, which preserves both conditions by
    /// construction; debug builds still validate.
    pub(crate) fn from_rows_unchecked(rows: Vec<Vec<u32>>) -> Self {
        let t = Tableau { rows };
        debug_assert!(t.validate().is_ok());
        t
    }

    fn validate(&self) -> Result<()> {
        for (i, row) in self.rows.iter().enumerate() {
            for (j, pair) in row.windows(2).enumerate() {
                if pair[0] > pair[1] {
                    return Err(Error::RowNotWeaklyIncreasing { row: i + 1, col: j + 2 });
                }
            }
            if row.contains(&0) {
                return Err(Error::RowNotWeaklyIncreasing { row: i + 1, col: 1 });
            }
        }
        let lengths: Vec<usize> = self.rows.iter().map(Vec::len).collect();
        if lengths.windows(2).any(|w| w[0] < w[1]) || lengths.contains(&0) {
            return Err(Error::RaggedShape { lengths });
        }
        for i in 1..self.rows.len() {
            for j in 0..self.rows[i].len() {
                if self.rows[i - 1][j] >= self.rows[i][j] {
                    return Err(Error::ColumnNotStrictlyIncreasing {
                        col: j + 1,
                        row: i,
                        row_above: i + 1,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub(crate) fn rows_mut(&mut self) -> &mut Vec<Vec<u32>> {
        &mut self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn shape(&self) -> Partition {
        let parts = self.rows.iter().map(|r| r.len() as u32).collect();
        Partition::new(parts).expect("row lengths of a valid tableau form a partition")
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Entries of column `j` (1-based), read bottom to top; strictly increasing.
    pub fn column(&self, j: usize) -> Vec<u32> {
        self.rows
            .iter()
            .filter_map(|row| row.get(j - 1))
            .copied()
            .collect()
    }

    /// Weight vector `(c_1, c_2, ...)` up to the largest entry, where `c_i`
    /// counts occurrences of `i`.
    pub fn weight(&self) -> Vec<u32> {
        let max = self.rows.iter().flatten().copied().max().unwrap_or(0);
        let mut counts = vec![0u32; max as usize];
        for &e in self.rows.iter().flatten() {
            counts[e as usize - 1] += 1;
        }
        counts
    }

    /// True if the entries are exactly `{1, ..., n}` for `n` the box count.
    pub fn is_standard(&self) -> bool {
        self.weight().iter().all(|&c| c == 1) && self.weight().len() == self.size()
    }
}

/// Prints the rows top row first, so the bottom row appears last, matching
/// French-convention figures.
impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "(empty)");
        }
        for (i, row) in self.rows.iter().enumerate().rev() {
            let line: Vec<String> = row.iter().map(u32::to_string).collect();
            write!(f, "{}", line.join(" "))?;
            if i > 0 {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_the_shape_421_ssyt() {
        // rows bottom-up: [1,1,1,3], [2,2], [4]
        let t = Tableau::new(vec![vec![1, 1, 1, 3], vec![2, 2], vec![4]]).unwrap();
        assert_eq!(t.shape().parts(), &[4, 2, 1]);
        assert_eq!(t.weight(), vec![3, 2, 1, 1]);
        assert!(!t.is_standard());
    }

    #[test]
    fn weight_of_standard_tableau_is_all_ones() {
        let t = Tableau::new(vec![vec![1, 2, 4], vec![3, 5]]).unwrap();
        assert_eq!(t.weight(), vec![1, 1, 1, 1, 1]);
        assert!(t.is_standard());
    }

    #[test]
    fn rejects_weakly_increasing_column() {
        // column 1 would contain 2, 2
        assert!(Tableau::new(vec![vec![2, 3], vec![2]]).is_err());
    }

    #[test]
    fn rejects_decreasing_row_and_ragged_shape() {
        assert!(Tableau::new(vec![vec![2, 1]]).is_err());
        assert!(Tableau::new(vec![vec![1], vec![2, 3]]).is_err());
    }

    #[test]
    fn column_reads_bottom_to_top() {
        let t = Tableau::new(vec![vec![1, 1, 1, 3], vec![2, 2], vec![4]]).unwrap();
        assert_eq!(t.column(1), vec![1, 2, 4]);
        assert_eq!(t.column(2), vec![1, 2]);
        assert_eq!(t.column(4), vec![3]);
    }

    #[test]
    fn display_prints_bottom_row_last() {
        let t = Tableau::new(vec![vec![1, 2, 4], vec![3, 5]]).unwrap();
        assert_eq!(t.to_string(), "3 5\n1 2 4");
    }
}
