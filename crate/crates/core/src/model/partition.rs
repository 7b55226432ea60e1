use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An integer partition: a weakly decreasing sequence of positive parts.
///
/// The empty partition is valid and is the shape of the empty tableau.
/// Canonical text encoding is comma-separated parts, e.g. `2,2,1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        for (i, pair) in parts.windows(2).enumerate() {
            if pair[0] < pair[1] {
                return Err(Error::NotAPartition { parts, index: i });
            }
        }
        if parts.last() == Some(&0) {
            let index = parts.iter().position(|&p| p == 0).unwrap();
            return Err(Error::NotAPartition { parts, index });
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Single-row partition `(n)`; the empty partition when `n = 0`.
    pub fn row(n: u32) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Total weight `|lambda|`.
    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Length of the first row; 0 for the empty partition.
    pub fn first_row_len(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Column heights, i.e. the conjugate partition: `heights[j-1] = #{i : lambda_i >= j}`.
    ///
    /// Weakly decreasing, with one entry per column of the diagram.
    pub fn column_heights(&self) -> Vec<u32> {
        let cols = self.first_row_len() as usize;
        let mut heights = vec![0u32; cols];
        for &part in &self.parts {
            for h in heights.iter_mut().take(part as usize) {
                *h += 1;
            }
        }
        heights
    }

    /// The conjugate partition as a `Partition`.
    pub fn conjugate(&self) -> Partition {
        Partition { parts: self.column_heights() }
    }

    /// True if two columns of the diagram share a height.
    pub fn has_repeated_column_height(&self) -> bool {
        // Heights are weakly decreasing, so a repeat must be adjacent.
        self.column_heights().windows(2).any(|w| w[0] == w[1])
    }

    /// All partitions of `n`, parts in weakly decreasing order, emitted in
    /// descending lexicographic order starting from `(n)`.
    pub fn all_of(n: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fn rec(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition { parts: current.clone() });
                return;
            }
            let top = max_part.min(remaining);
            for part in (1..=top).rev() {
                current.push(part);
                rec(remaining - part, part, current, out);
                current.pop();
            }
        }
        rec(n, n.max(1), &mut current, &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.parts {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|tok| tok.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Parse { what: "partition", input: s.to_string() })?;
        Partition::new(parts)
    }
}
