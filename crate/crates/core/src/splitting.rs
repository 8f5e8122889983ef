//! Splitting chains of invariant equivalences and the splitting
//! construction.
//!
//! For nested equivalences `E ⊆ F`, a set `K` is `F/E`-parallel when
//! `[K]_E` contains `[x]_F` for every `x` in `K`, and `F/E`-orthogonal when
//! `[K]_E ∩ [x]_F = [x]_E`. A splitting chain runs from the diagonal to the
//! full relation through invariant equivalences, with `K` parallel or
//! orthogonal at every step. Every such chain can be refined to a maximal
//! chain of the congruence lattice without losing that property, so the
//! construction only walks maximal chains.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::partition::Partition;
use crate::space::{congruences, GSpace};

/// Default cap on the number of congruences for [`generate_splittable`].
pub const DEFAULT_LATTICE_CAP: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Position {
    Parallel,
    Orthogonal,
    Neither,
}

/// How `k` sits relative to `e ⊆ f`. Parallel wins when both hold.
pub fn relative_position(k: &Configuration, e: &Partition, f: &Partition) -> Result<Position> {
    if !e.refines(f) {
        return Err(Error::NotRefinement);
    }
    k.validate(e.point_count())?;
    let n = e.point_count();
    let mut in_sat = vec![false; n];
    for p in e.saturate(k).iter() {
        in_sat[p] = true;
    }
    let parallel = k.iter().all(|x| f.class_of(x).iter().all(|y| in_sat[y]));
    if parallel {
        return Ok(Position::Parallel);
    }
    let orthogonal = k.iter().all(|x| {
        f.class_of(x)
            .iter()
            .all(|y| !in_sat[y] || e.same_block(x, y))
    });
    Ok(if orthogonal {
        Position::Orthogonal
    } else {
        Position::Neither
    })
}

/// `Δ = E_0 ⊂ E_1 ⊂ ... ⊂ E_m = X×X` with the disposition of each step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingChain {
    pub chain: Vec<Partition>,
    pub steps: Vec<Position>,
}

impl SplittingChain {
    /// Re-checks the chain for `k` in `space`: ends, strict refinement,
    /// invariance of every level and every declared step.
    pub fn verify(&self, space: &GSpace, k: &Configuration) -> bool {
        let n = space.point_count();
        let (Some(first), Some(last)) = (self.chain.first(), self.chain.last()) else {
            return false;
        };
        if k.validate_nonempty(n).is_err()
            || first.point_count() != n
            || !first.is_discrete()
            || !last.is_full()
            || self.steps.len() + 1 != self.chain.len()
        {
            return false;
        }
        if !self
            .chain
            .iter()
            .all(|p| p.point_count() == n && space.preserves(p))
        {
            return false;
        }
        self.chain.windows(2).zip(&self.steps).all(|(w, &step)| {
            w[0] != w[1]
                && step != Position::Neither
                && relative_position(k, &w[0], &w[1]).is_ok_and(|pos| pos == step)
        })
    }
}

/// Strict refinement between lattice members, `succ[i]` lists the indices of
/// strictly coarser members.
fn strictly_coarser(lattice: &[Partition]) -> Vec<Vec<usize>> {
    (0..lattice.len())
        .map(|i| {
            (0..lattice.len())
                .filter(|&j| i != j && lattice[i].refines(&lattice[j]))
                .collect()
        })
        .collect()
}

/// Shortest, then lexicographically least (by lattice index) splitting chain
/// of `k` through the given lattice, which must be sorted as returned by
/// [`congruences`].
pub fn splitting_chain_in(lattice: &[Partition], k: &Configuration) -> Option<SplittingChain> {
    let top = lattice.len() - 1;
    if lattice.len() == 1 {
        return Some(SplittingChain {
            chain: vec![lattice[0].clone()],
            steps: Vec::new(),
        });
    }
    let succ = strictly_coarser(lattice);
    // usable transitions with their disposition
    let moves: Vec<Vec<(usize, Position)>> = succ
        .iter()
        .enumerate()
        .map(|(i, s)| {
            s.iter()
                .filter_map(|&j| match relative_position(k, &lattice[i], &lattice[j]) {
                    Ok(Position::Neither) | Err(_) => None,
                    Ok(pos) => Some((j, pos)),
                })
                .collect()
        })
        .collect();
    // distance to the top, relaxing until stable (the lattice is a DAG)
    let mut dist = vec![usize::MAX; lattice.len()];
    dist[top] = 0;
    loop {
        let mut changed = false;
        for i in 0..lattice.len() {
            for &(j, _) in &moves[i] {
                if dist[j] != usize::MAX && dist[j] + 1 < dist[i] {
                    dist[i] = dist[j] + 1;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    if dist[0] == usize::MAX {
        return None;
    }
    let mut at = 0;
    let mut chain = vec![lattice[0].clone()];
    let mut steps = Vec::new();
    while at != top {
        let &(next, pos) = moves[at]
            .iter()
            .filter(|(j, _)| dist[*j].checked_add(1) == Some(dist[at]))
            .min_by_key(|(j, _)| *j)
            .expect("distance labels are consistent");
        chain.push(lattice[next].clone());
        steps.push(pos);
        at = next;
    }
    Some(SplittingChain { chain, steps })
}

/// A splitting chain for `k`, or `None` when `k` is not splittable.
pub fn is_splittable(space: &GSpace, k: &Configuration) -> Result<Option<SplittingChain>> {
    k.validate_nonempty(space.point_count())?;
    Ok(splitting_chain_in(&congruences(space), k))
}

/// All maximal chains of the lattice as index paths from the diagonal (0)
/// to the full relation (last).
pub fn maximal_chains(lattice: &[Partition]) -> Vec<Vec<usize>> {
    let succ = strictly_coarser(lattice);
    let covers: Vec<Vec<usize>> = succ
        .iter()
        .map(|s| {
            s.iter()
                .copied()
                .filter(|&j| !s.iter().any(|&m| m != j && succ[m].contains(&j)))
                .collect()
        })
        .collect();
    let top = lattice.len() - 1;
    let mut out = Vec::new();
    let mut path = vec![0];
    fn walk(
        at: usize,
        top: usize,
        covers: &[Vec<usize>],
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if at == top {
            out.push(path.clone());
            return;
        }
        for &j in &covers[at] {
            path.push(j);
            walk(j, top, covers, path, out);
            path.pop();
        }
    }
    walk(0, top, &covers, &mut path, &mut out);
    out
}

/// Builds every configuration obtainable along one chain, top-down: a
/// parallel step keeps the current union of classes (full preimage), an
/// orthogonal step keeps exactly one finer class inside each coarser class
/// (a section), over all choices.
fn build_along(chain: &[&Partition], n: usize) -> BTreeSet<Vec<bool>> {
    let mut level: BTreeSet<Vec<bool>> = BTreeSet::from([vec![true; n]]);
    for w in chain.windows(2).rev() {
        let (fine, coarse) = (w[0], w[1]);
        let mut next = BTreeSet::new();
        for set in &level {
            next.insert(set.clone());
            // choices of one fine class per coarse class inside `set`
            let mut options: Vec<Vec<&Configuration>> = Vec::new();
            for block in coarse.blocks() {
                if !set[block.points()[0]] {
                    continue;
                }
                let mut inside: Vec<&Configuration> = Vec::new();
                for p in block.iter() {
                    let c = fine.class_of(p);
                    if c.points()[0] == p {
                        inside.push(c);
                    }
                }
                options.push(inside);
            }
            let mut partial: Vec<Vec<bool>> = vec![vec![false; n]];
            for choices in &options {
                let mut grown = Vec::with_capacity(partial.len() * choices.len());
                for base in &partial {
                    for c in choices {
                        let mut s = base.clone();
                        for p in c.iter() {
                            s[p] = true;
                        }
                        grown.push(s);
                    }
                }
                partial = grown;
            }
            next.extend(partial);
        }
        level = next;
    }
    level
}

/// Every splittable configuration of `space`, sorted lexicographically.
pub fn generate_splittable(space: &GSpace, cap: usize, exec: Exec) -> Result<Vec<Configuration>> {
    let lattice = congruences(space);
    if lattice.len() > cap {
        return Err(Error::CapExceeded {
            what: "congruence lattice size",
            cap,
        });
    }
    let n = space.point_count();
    let chains = maximal_chains(&lattice);
    let per_chain = exec.map(&chains, |path| {
        let chain: Vec<&Partition> = path.iter().map(|&i| &lattice[i]).collect();
        build_along(&chain, n)
    });
    let all: BTreeSet<Configuration> = per_chain
        .into_iter()
        .flatten()
        .map(|bits| Configuration::new((0..n).filter(|&p| bits[p])))
        .collect();
    Ok(all.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_group_spec;
    use crate::space::cayley_space;

    fn cay(s: &str) -> GSpace {
        cayley_space(&parse_group_spec(s).unwrap())
    }

    fn set(p: &[usize]) -> Configuration {
        Configuration::new(p.iter().copied())
    }

    #[test]
    fn positions_in_z4() {
        let delta = Partition::discrete(4);
        let parity = Partition::from_labels(&[0, 1, 0, 1]);
        assert_eq!(
            relative_position(&set(&[0, 1]), &delta, &parity).unwrap(),
            Position::Orthogonal
        );
        assert_eq!(
            relative_position(&set(&[0, 2]), &delta, &parity).unwrap(),
            Position::Parallel
        );
        assert_eq!(
            relative_position(&set(&[0, 1, 2]), &delta, &parity).unwrap(),
            Position::Neither
        );
        assert_eq!(
            relative_position(&set(&[0]), &parity, &delta),
            Err(Error::NotRefinement)
        );
        // e = f: both hold, parallel reported
        assert_eq!(
            relative_position(&set(&[0]), &parity, &parity).unwrap(),
            Position::Parallel
        );
    }

    #[test]
    fn chains_in_z4() {
        let z4 = cay("C4");
        let c = is_splittable(&z4, &set(&[0, 1])).unwrap().unwrap();
        assert_eq!(c.chain.len(), 3);
        assert_eq!(c.chain[1].blocks_as_lists(), vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(c.steps, vec![Position::Orthogonal, Position::Parallel]);
        assert!(c.verify(&z4, &set(&[0, 1])));
        assert_eq!(is_splittable(&z4, &set(&[0, 1, 2])).unwrap(), None);
        let single = is_splittable(&z4, &set(&[2])).unwrap().unwrap();
        assert_eq!(single.chain.len(), 2);
        assert_eq!(single.steps, vec![Position::Orthogonal]);
    }

    #[test]
    fn tampered_chain_fails() {
        let z4 = cay("C4");
        let mut c = is_splittable(&z4, &set(&[0, 1])).unwrap().unwrap();
        c.steps[0] = Position::Parallel;
        assert!(!c.verify(&z4, &set(&[0, 1])));
    }

    #[test]
    fn generated_sets() {
        let klein =
            generate_splittable(&cay("C2xC2"), DEFAULT_LATTICE_CAP, Exec::Sequential).unwrap();
        assert_eq!(klein.len(), 11);
        assert!(klein.iter().all(|k| [1, 2, 4].contains(&k.len())));

        let z4 = generate_splittable(&cay("C4"), DEFAULT_LATTICE_CAP, Exec::Sequential).unwrap();
        let expected: Vec<Configuration> = vec![
            set(&[0]),
            set(&[0, 1]),
            set(&[0, 1, 2, 3]),
            set(&[0, 2]),
            set(&[0, 3]),
            set(&[1]),
            set(&[1, 2]),
            set(&[1, 3]),
            set(&[2]),
            set(&[2, 3]),
            set(&[3]),
        ];
        assert_eq!(z4, expected);

        let one = GSpace::new(1, vec![]).unwrap();
        assert_eq!(
            generate_splittable(&one, DEFAULT_LATTICE_CAP, Exec::Sequential).unwrap(),
            vec![set(&[0])]
        );
    }

    #[test]
    fn maximal_chain_counts() {
        // C2^3: 7 lines, each in 3 planes
        let lattice = congruences(&cay("C2xC2xC2"));
        assert_eq!(maximal_chains(&lattice).len(), 21);
        assert_eq!(maximal_chains(&congruences(&cay("C12"))).len(), 3);
    }
}
