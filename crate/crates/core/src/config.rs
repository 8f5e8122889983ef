use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A subset of the points of a space, kept sorted and duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(from = "Vec<usize>", into = "Vec<usize>")]
pub struct Configuration {
    points: Vec<usize>,
}

impl Configuration {
    pub fn new(points: impl IntoIterator<Item = usize>) -> Self {
        let mut points: Vec<usize> = points.into_iter().collect();
        points.sort_unstable();
        points.dedup();
        Self { points }
    }

    pub fn full(n: usize) -> Self {
        Self {
            points: (0..n).collect(),
        }
    }

    pub fn from_mask(mask: u64) -> Self {
        Self {
            points: BitIter(mask).collect(),
        }
    }

    /// Bitmask of the points; `None` if some point is 64 or above.
    pub fn mask(&self) -> Option<u64> {
        self.points
            .iter()
            .try_fold(0u64, |m, &p| (p < 64).then(|| m | (1 << p)))
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: usize) -> bool {
        self.points.binary_search(&p).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.points.iter().copied()
    }

    /// Checks the configuration against a space of `n` points.
    pub fn validate(&self, n: usize) -> Result<()> {
        match self.points.last() {
            Some(&p) if p >= n => Err(Error::PointOutOfRange {
                point: p,
                points: n,
            }),
            _ => Ok(()),
        }
    }

    pub fn validate_nonempty(&self, n: usize) -> Result<()> {
        if self.is_empty() {
            return Err(Error::EmptyConfiguration);
        }
        self.validate(n)
    }

    /// Number of points shared with `other`.
    pub fn intersection_len(&self, other: &Configuration) -> usize {
        let (mut i, mut j, mut count) = (0, 0, 0);
        while i < self.points.len() && j < other.points.len() {
            match self.points[i].cmp(&other.points[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    count += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        count
    }

    /// Image under a point map.
    pub fn image(&self, map: &[usize]) -> Configuration {
        Configuration::new(self.points.iter().map(|&p| map[p]))
    }
}

impl From<Vec<usize>> for Configuration {
    fn from(points: Vec<usize>) -> Self {
        Self::new(points)
    }
}

impl From<Configuration> for Vec<usize> {
    fn from(c: Configuration) -> Self {
        c.points
    }
}

impl FromIterator<usize> for Configuration {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::new(iter)
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

/// Iterates the set bits of a mask, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let bit = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(bit)
    }
}

/// Subsets of `0..n` (n < 64) as masks, visiting sorted point lists in
/// lexicographic order. With `with_zero`, only subsets containing 0.
pub fn subsets_lex(n: usize, with_zero: bool) -> Vec<u64> {
    fn walk(next: usize, n: usize, mask: u64, out: &mut Vec<u64>) {
        for p in next..n {
            let m = mask | (1 << p);
            out.push(m);
            walk(p + 1, n, m, out);
        }
    }
    assert!(n < 64);
    let mut out = Vec::new();
    if with_zero {
        if n > 0 {
            out.push(1);
            walk(1, n, 1, &mut out);
        }
    } else {
        walk(0, n, 0, &mut out);
    }
    out
}
