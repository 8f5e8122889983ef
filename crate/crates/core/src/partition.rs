//! Partitions of a point set, used both as equivalence relations (block
//! systems) and as colorings with labeled classes.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::config::Configuration;
use crate::error::{Error, Result};

/// A partition of `0..n` in canonical form: blocks are numbered in order of
/// their least point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct Partition {
    block_of: Vec<usize>,
    blocks: Vec<Configuration>,
}

impl Partition {
    /// Builds a partition from arbitrary labels, one per point.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut remap: std::collections::HashMap<usize, usize> = Default::default();
        let mut block_of = Vec::with_capacity(labels.len());
        let mut members: Vec<Vec<usize>> = Vec::new();
        for (p, l) in labels.iter().enumerate() {
            let id = *remap.entry(*l).or_insert_with(|| {
                members.push(Vec::new());
                members.len() - 1
            });
            members[id].push(p);
            block_of.push(id);
        }
        Self {
            block_of,
            blocks: members.into_iter().map(Configuration::new).collect(),
        }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (i, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(Error::Parse("empty block".into()));
            }
            for &p in b {
                if p >= n {
                    return Err(Error::PointOutOfRange {
                        point: p,
                        points: n,
                    });
                }
                if labels[p] != usize::MAX {
                    return Err(Error::Parse(format!("point {p} in two blocks")));
                }
                labels[p] = i;
            }
        }
        if let Some(p) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::Parse(format!("point {p} in no block")));
        }
        Ok(Self::from_labels(&labels))
    }

    /// The diagonal: every point alone.
    pub fn discrete(n: usize) -> Self {
        Self::from_labels(&(0..n).collect::<Vec<_>>())
    }

    /// One block holding every point.
    pub fn full(n: usize) -> Self {
        Self::from_labels(&vec![0; n])
    }

    pub fn point_count(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, p: usize) -> usize {
        self.block_of[p]
    }

    pub fn blocks(&self) -> &[Configuration] {
        &self.blocks
    }

    /// The class `[p]`.
    pub fn class_of(&self, p: usize) -> &Configuration {
        &self.blocks[self.block_of[p]]
    }

    pub fn blocks_as_lists(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| b.points().to_vec()).collect()
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.len() == self.block_of.len()
    }

    pub fn is_full(&self) -> bool {
        self.blocks.len() == 1
    }

    pub fn same_block(&self, a: usize, b: usize) -> bool {
        self.block_of[a] == self.block_of[b]
    }

    /// Every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.point_count() == coarser.point_count()
            && self.blocks.iter().all(|b| {
                let id = coarser.block_of(b.points()[0]);
                b.iter().all(|p| coarser.block_of(p) == id)
            })
    }

    /// Whether the permutation `g` maps every block onto a block.
    pub fn is_preserved_by(&self, g: &[usize]) -> bool {
        self.blocks.iter().all(|b| {
            let id = self.block_of[g[b.points()[0]]];
            b.iter().all(|p| self.block_of[g[p]] == id)
        })
    }

    /// Union of the classes meeting `k`, i.e. the saturation `[K]`.
    pub fn saturate(&self, k: &Configuration) -> Configuration {
        let mut hit = vec![false; self.blocks.len()];
        for p in k.iter() {
            hit[self.block_of[p]] = true;
        }
        Configuration::new((0..self.point_count()).filter(|&p| hit[self.block_of[p]]))
    }

    /// Meet (common refinement).
    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        if self.point_count() != other.point_count() {
            return Err(Error::SizeMismatch {
                expected: self.point_count(),
                got: other.point_count(),
            });
        }
        let labels: Vec<usize> = (0..self.point_count())
            .map(|p| self.block_of[p] * other.block_count() + other.block_of[p])
            .collect();
        Ok(Self::from_labels(&labels))
    }

    /// Order used for lists of congruences: finer first, then by block list.
    pub fn lattice_order(a: &Partition, b: &Partition) -> Ordering {
        b.block_count()
            .cmp(&a.block_count())
            .then_with(|| a.blocks.cmp(&b.blocks))
    }
}

impl TryFrom<Vec<Vec<usize>>> for Partition {
    type Error = Error;

    fn try_from(blocks: Vec<Vec<usize>>) -> Result<Self> {
        let n = blocks.iter().map(Vec::len).sum();
        Self::from_blocks(n, &blocks)
    }
}

impl From<Partition> for Vec<Vec<usize>> {
    fn from(p: Partition) -> Self {
        p.blocks_as_lists()
    }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true if the two classes were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }

    pub fn into_partition(mut self) -> Partition {
        let labels: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Partition::from_labels(&labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_labels() {
        let p = Partition::from_labels(&[7, 3, 7, 3]);
        let q = Partition::from_labels(&[0, 1, 0, 1]);
        assert_eq!(p, q);
        assert_eq!(p.blocks_as_lists(), vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(p.block_of(3), 1);
    }

    #[test]
    fn refinement_and_meet() {
        let parity = Partition::from_labels(&[0, 1, 0, 1]);
        let halves = Partition::from_labels(&[0, 0, 1, 1]);
        assert!(Partition::discrete(4).refines(&parity));
        assert!(parity.refines(&Partition::full(4)));
        assert!(!parity.refines(&halves));
        assert_eq!(parity.meet(&halves).unwrap(), Partition::discrete(4));
    }

    #[test]
    fn saturation() {
        let parity = Partition::from_labels(&[0, 1, 0, 1]);
        assert_eq!(
            parity.saturate(&Configuration::new([0])),
            Configuration::new([0, 2])
        );
    }

    #[test]
    fn block_lists_validate() {
        assert!(Partition::from_blocks(3, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::from_blocks(3, &[vec![0, 1]]).is_err());
        let p = Partition::try_from(vec![vec![1, 2], vec![0]]).unwrap();
        assert_eq!(p.blocks_as_lists(), vec![vec![0], vec![1, 2]]);
    }

    #[test]
    fn union_find_merges() {
        let mut uf = UnionFind::new(5);
        assert!(uf.union(0, 3));
        assert!(uf.union(3, 4));
        assert!(!uf.union(0, 4));
        assert_eq!(uf.into_partition().block_count(), 3);
    }
}
