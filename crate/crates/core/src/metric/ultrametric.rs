use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::partition::Partition;
use crate::rainbow::Coloring;
use crate::space::GSpace;
use crate::splitting::{relative_position, Position};
use crate::transversal::find_kaleidoscopic_coloring;

pub const DEFAULT_LEAF_CAP: usize = 12;

/// A leveled tree with `branching[j]` children at depth `j`. Leaves are
/// addressed by digit vectors (root digit first) and numbered in
/// lexicographic address order. Two leaves whose addresses first differ at
/// depth `j` are at distance `scale[n - 1 - j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UltrametricSpec {
    branching: Vec<usize>,
    scale: Vec<BigRational>,
}

impl UltrametricSpec {
    /// Tree with the default scale `1, 2, ..., n`.
    pub fn new(branching: Vec<usize>) -> Result<Self> {
        let scale = (1..=branching.len())
            .map(|i| BigRational::from_integer(i.into()))
            .collect();
        Self::with_scale(branching, scale)
    }

    pub fn with_scale(branching: Vec<usize>, scale: Vec<BigRational>) -> Result<Self> {
        if branching.is_empty() {
            return Err(Error::InvalidUltrametric("no levels".into()));
        }
        if let Some(b) = branching.iter().find(|&&b| b < 2) {
            return Err(Error::InvalidUltrametric(format!("branching {b} below 2")));
        }
        if scale.len() != branching.len() {
            return Err(Error::InvalidUltrametric(
                "one scale value per level".into(),
            ));
        }
        if !scale[0].is_positive() || scale.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidUltrametric(
                "scale must be positive and strictly increasing".into(),
            ));
        }
        Ok(Self { branching, scale })
    }

    pub fn branching(&self) -> &[usize] {
        &self.branching
    }

    pub fn leaf_count(&self) -> usize {
        self.branching.iter().product()
    }

    /// Digits of a leaf, root first.
    pub fn address(&self, mut leaf: usize) -> Vec<usize> {
        let mut digits = vec![0; self.branching.len()];
        for (slot, &b) in digits.iter_mut().zip(&self.branching).rev() {
            *slot = leaf % b;
            leaf /= b;
        }
        digits
    }

    fn leaf(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .zip(&self.branching)
            .fold(0, |acc, (&d, &b)| acc * b + d)
    }

    pub fn distance(&self, x: usize, y: usize) -> BigRational {
        let (a, b) = (self.address(x), self.address(y));
        match a.iter().zip(&b).position(|(p, q)| p != q) {
            None => BigRational::zero(),
            Some(j) => self.scale[self.branching.len() - 1 - j].clone(),
        }
    }
}

/// The action of the level-preserving tree automorphisms on the leaves. Each
/// internal node contributes the swap of its first two child subtrees and
/// the cyclic rotation of all its child subtrees.
pub fn ultrametric_space(spec: &UltrametricSpec) -> GSpace {
    let n = spec.leaf_count();
    let depth = spec.branching.len();
    let mut generators = Vec::new();
    for j in 0..depth {
        let prefixes: usize = spec.branching[..j].iter().product();
        let b = spec.branching[j];
        for prefix in 0..prefixes {
            let prefix_digits = {
                let mut d = vec![0; j];
                let mut x = prefix;
                for (slot, &bb) in d.iter_mut().zip(&spec.branching[..j]).rev() {
                    *slot = x % bb;
                    x /= bb;
                }
                d
            };
            let mut swap = Vec::with_capacity(n);
            let mut rotate = Vec::with_capacity(n);
            for leaf in 0..n {
                let mut addr = spec.address(leaf);
                if addr[..j] != prefix_digits[..] {
                    swap.push(leaf);
                    rotate.push(leaf);
                    continue;
                }
                let c = addr[j];
                addr[j] = match c {
                    0 => 1,
                    1 => 0,
                    other => other,
                };
                swap.push(spec.leaf(&addr));
                addr[j] = (c + 1) % b;
                rotate.push(spec.leaf(&addr));
            }
            generators.push(swap);
            generators.push(rotate);
        }
    }
    GSpace::new(n, generators).expect("tree automorphisms act transitively on leaves")
}

/// `Δ = E_{ε_0} ⊂ E_{ε_1} ⊂ ... ⊂ E_{ε_n} = X×X`, where `E_{ε_i}` joins
/// leaves that agree on all but their last `i` digits (the closed
/// `ε_i`-balls).
pub fn epsilon_chain(spec: &UltrametricSpec) -> Vec<Partition> {
    let n = spec.leaf_count();
    let depth = spec.branching.len();
    (0..=depth)
        .map(|i| {
            let ball: usize = spec.branching[depth - i..].iter().product();
            let labels: Vec<usize> = (0..n).map(|leaf| leaf / ball).collect();
            Partition::from_labels(&labels)
        })
        .collect()
}

/// One kaleidoscopic configuration with its dispositions along the chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitEntry {
    pub subset: Configuration,
    pub steps: Vec<Position>,
    pub coloring: Coloring,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UltrametricReport {
    pub branching: Vec<usize>,
    pub leaves: usize,
    /// Subsets whose size divides the leaf count.
    pub checked: usize,
    pub kaleidoscopic: Vec<SplitEntry>,
    /// Kaleidoscopic subsets with some step neither parallel nor orthogonal.
    pub violations: Vec<SplitEntry>,
}

impl UltrametricReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustively checks that every kaleidoscopic configuration of the tree is
/// split by the ε-chain.
pub fn verify_ultrametric_splittability(
    spec: &UltrametricSpec,
    cap: usize,
    exec: Exec,
) -> Result<UltrametricReport> {
    let n = spec.leaf_count();
    if n > cap || n >= 64 {
        return Err(Error::CapExceeded {
            what: "leaf count for exhaustive verification",
            cap: cap.min(63),
        });
    }
    let space = ultrametric_space(spec);
    let chain = epsilon_chain(spec);
    let masks: Vec<u64> = (1..1u64 << n)
        .filter(|m| n.is_multiple_of(m.count_ones() as usize))
        .collect();
    let results = exec.map(&masks, |&m| -> Result<Option<SplitEntry>> {
        let k = Configuration::from_mask(m);
        let Some(coloring) = find_kaleidoscopic_coloring(&space, &k)? else {
            return Ok(None);
        };
        let steps = chain
            .windows(2)
            .map(|w| relative_position(&k, &w[0], &w[1]))
            .collect::<Result<Vec<_>>>()?;
        Ok(Some(SplitEntry {
            subset: k,
            steps,
            coloring,
        }))
    });
    let mut kaleidoscopic = Vec::new();
    for r in results {
        if let Some(e) = r? {
            kaleidoscopic.push(e);
        }
    }
    kaleidoscopic.sort_by(|a, b| a.subset.cmp(&b.subset));
    let violations = kaleidoscopic
        .iter()
        .filter(|e| e.steps.contains(&Position::Neither))
        .cloned()
        .collect();
    Ok(UltrametricReport {
        branching: spec.branching.clone(),
        leaves: n,
        checked: masks.len(),
        kaleidoscopic,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{congruences, group_order_capped};

    fn tree(b: &[usize]) -> UltrametricSpec {
        UltrametricSpec::new(b.to_vec()).unwrap()
    }

    /// `prod_j b_j!^(number of nodes at depth j)`.
    fn wreath_order(b: &[usize]) -> usize {
        let mut nodes = 1;
        let mut order = 1;
        for &bj in b {
            let fact: usize = (1..=bj).product();
            order *= fact.pow(nodes as u32);
            nodes *= bj;
        }
        order
    }

    #[test]
    fn group_orders() {
        for b in [&[2][..], &[2, 2], &[2, 3], &[3, 2], &[2, 2, 2]] {
            let space = ultrametric_space(&tree(b));
            let o = group_order_capped(&space, 1_000_000).unwrap();
            assert_eq!(o.group_order, wreath_order(b), "{b:?}");
            assert_eq!(o.group_order, space.point_count() * o.stabilizer_order);
        }
        assert_eq!(wreath_order(&[2, 2]), 8);
        assert_eq!(wreath_order(&[2, 3]), 72);
    }

    #[test]
    fn chains() {
        let c = epsilon_chain(&tree(&[2, 2]));
        assert_eq!(c.len(), 3);
        assert!(c[0].is_discrete());
        assert_eq!(c[1].blocks_as_lists(), vec![vec![0, 1], vec![2, 3]]);
        assert!(c[2].is_full());
        assert_eq!(epsilon_chain(&tree(&[2])).len(), 2);
        let sizes: Vec<usize> = epsilon_chain(&tree(&[2, 3]))
            .iter()
            .map(Partition::block_count)
            .collect();
        assert_eq!(sizes, vec![6, 2, 1]);
    }

    #[test]
    fn chain_members_are_congruences() {
        for b in [&[2, 2][..], &[2, 3], &[3, 2], &[2, 2, 2]] {
            let spec = tree(b);
            let space = ultrametric_space(&spec);
            let lattice = congruences(&space);
            for e in epsilon_chain(&spec) {
                assert!(space.preserves(&e));
                assert!(lattice.contains(&e));
            }
        }
    }

    #[test]
    fn strong_triangle_inequality() {
        for b in [&[2, 2][..], &[2, 3], &[3, 2], &[2, 2, 2], &[3, 4]] {
            let spec = tree(b);
            let n = spec.leaf_count();
            for x in 0..n {
                for y in 0..n {
                    let dxy = spec.distance(x, y);
                    assert_eq!(dxy, spec.distance(y, x));
                    for z in 0..n {
                        let m = spec.distance(x, z).max(spec.distance(z, y));
                        assert!(dxy <= m);
                    }
                }
            }
        }
    }

    #[test]
    fn distances_respect_balls() {
        let spec = tree(&[2, 3]);
        let chain = epsilon_chain(&spec);
        for x in 0..6 {
            for y in 0..6 {
                let d = spec.distance(x, y);
                for (i, e) in chain.iter().enumerate() {
                    let eps = if i == 0 {
                        BigRational::zero()
                    } else {
                        BigRational::from_integer(i.into())
                    };
                    assert_eq!(e.same_block(x, y), d <= eps);
                }
            }
        }
    }

    #[test]
    fn small_tree_report() {
        let report =
            verify_ultrametric_splittability(&tree(&[2, 2]), DEFAULT_LEAF_CAP, Exec::Sequential)
                .unwrap();
        assert!(report.passed());
        let steps = |s: &[usize]| {
            report
                .kaleidoscopic
                .iter()
                .find(|e| e.subset.points() == s)
                .map(|e| e.steps.clone())
        };
        assert_eq!(
            steps(&[0, 2]),
            Some(vec![Position::Orthogonal, Position::Parallel])
        );
        assert_eq!(
            steps(&[0, 1]),
            Some(vec![Position::Parallel, Position::Orthogonal])
        );
        assert!(
            verify_ultrametric_splittability(&tree(&[2]), DEFAULT_LEAF_CAP, Exec::Sequential)
                .unwrap()
                .passed()
        );
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(UltrametricSpec::new(vec![]).is_err());
        assert!(UltrametricSpec::new(vec![2, 1]).is_err());
        let two = BigRational::from_integer(2.into());
        assert!(UltrametricSpec::with_scale(vec![2, 2], vec![two.clone(), two]).is_err());
        assert!(matches!(
            verify_ultrametric_splittability(
                &tree(&[2, 2, 2, 2]),
                DEFAULT_LEAF_CAP,
                Exec::Sequential
            ),
            Err(Error::CapExceeded { .. })
        ));
    }
}
