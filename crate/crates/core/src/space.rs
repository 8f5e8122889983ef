//! Transitive permutation actions, set orbits and the congruence lattice.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::group::AbelianGroupSpec;
use crate::partition::{Partition, UnionFind};

/// Default cap on the size of a materialized permutation group.
pub const DEFAULT_GROUP_CAP: usize = 10_000_000;

/// On-disk form of a [`GSpace`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GSpaceFile {
    pub points: usize,
    pub generators: Vec<Vec<usize>>,
}

/// `|G|` and `|G_0|` for the group generated by a space's generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupOrder {
    pub group_order: usize,
    pub stabilizer_order: usize,
}

/// A finite set `0..n` with a transitive action given by generator
/// permutations (each stored as its image array).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "GSpaceFile", into = "GSpaceFile")]
pub struct GSpace {
    n: usize,
    generators: Vec<Vec<usize>>,
    #[allow(clippy::type_complexity)]
    order: OnceLock<std::result::Result<GroupOrder, Error>>,
}

impl PartialEq for GSpace {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.generators == other.generators
    }
}

impl Eq for GSpace {}

impl GSpace {
    /// Builds a space, rejecting non-permutations and intransitive actions.
    /// Identity generators are dropped.
    pub fn new(n: usize, generators: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoPoints);
        }
        for (index, g) in generators.iter().enumerate() {
            let mut seen = vec![false; n];
            let ok = g.len() == n
                && g.iter()
                    .all(|&x| x < n && !std::mem::replace(&mut seen[x], true));
            if !ok {
                return Err(Error::NotPermutation { index, points: n });
            }
        }
        let mut gens: Vec<Vec<usize>> = Vec::new();
        for g in generators {
            let identity = g.iter().enumerate().all(|(i, &x)| i == x);
            if !identity && !gens.contains(&g) {
                gens.push(g);
            }
        }
        let space = Self {
            n,
            generators: gens,
            order: OnceLock::new(),
        };
        let orbit = space.point_orbit(0).len();
        if orbit != n {
            return Err(Error::NotTransitive { orbit, points: n });
        }
        Ok(space)
    }

    pub fn point_count(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Vec<usize>] {
        &self.generators
    }

    fn point_orbit(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        seen[start] = true;
        let mut stack = vec![start];
        let mut orbit = vec![start];
        while let Some(x) = stack.pop() {
            for g in &self.generators {
                let y = g[x];
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                    stack.push(y);
                }
            }
        }
        orbit
    }

    /// Orders of the generated group and of the stabilizer of point 0,
    /// computed once with [`DEFAULT_GROUP_CAP`].
    pub fn group_order(&self) -> Result<GroupOrder> {
        self.order
            .get_or_init(|| group_order_capped(self, DEFAULT_GROUP_CAP))
            .clone()
    }

    /// Whether every generator maps blocks of `p` onto blocks.
    pub fn preserves(&self, p: &Partition) -> bool {
        self.generators.iter().all(|g| p.is_preserved_by(g))
    }

    pub fn to_file(&self) -> GSpaceFile {
        GSpaceFile {
            points: self.n,
            generators: self.generators.clone(),
        }
    }
}

impl TryFrom<GSpaceFile> for GSpace {
    type Error = Error;

    fn try_from(f: GSpaceFile) -> Result<Self> {
        GSpace::new(f.points, f.generators)
    }
}

impl From<GSpace> for GSpaceFile {
    fn from(s: GSpace) -> Self {
        s.to_file()
    }
}

/// The regular action of `G` on itself; generators are the unit translations.
pub fn cayley_space(spec: &AbelianGroupSpec) -> GSpace {
    let n = spec.order();
    let generators = (0..spec.orders().len())
        .map(|i| {
            let e = spec.unit(i);
            (0..n).map(|x| spec.add(x, e)).collect()
        })
        .collect();
    GSpace::new(n, generators).expect("regular action is transitive")
}

/// The family `G[A] = {gA : g in G}`, sorted and deduplicated.
pub fn set_orbit(space: &GSpace, a: &Configuration) -> Result<Vec<Configuration>> {
    a.validate_nonempty(space.point_count())?;
    let mut seen: BTreeSet<Configuration> = BTreeSet::new();
    seen.insert(a.clone());
    let mut queue = VecDeque::from([a.clone()]);
    while let Some(set) = queue.pop_front() {
        for g in space.generators() {
            let image = set.image(g);
            if !seen.contains(&image) {
                seen.insert(image.clone());
                queue.push_back(image);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Smallest invariant equivalence coarser than the current state of `uf`.
fn close_under(space: &GSpace, uf: &mut UnionFind) {
    loop {
        let mut changed = false;
        for g in space.generators() {
            for x in 0..space.point_count() {
                let r = uf.find(x);
                if r != x && uf.union(g[x], g[r]) {
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
}

/// Smallest invariant equivalence containing the pair `(x, y)`.
pub fn principal_congruence(space: &GSpace, x: usize, y: usize) -> Partition {
    let mut uf = UnionFind::new(space.point_count());
    uf.union(x, y);
    close_under(space, &mut uf);
    uf.into_partition()
}

/// Join in the lattice of invariant equivalences.
pub fn join(space: &GSpace, a: &Partition, b: &Partition) -> Partition {
    let mut uf = UnionFind::new(space.point_count());
    for p in [a, b] {
        for block in p.blocks() {
            let first = block.points()[0];
            for q in block.iter().skip(1) {
                uf.union(first, q);
            }
        }
    }
    close_under(space, &mut uf);
    uf.into_partition()
}

/// All invariant equivalence relations of a transitive space, from the
/// diagonal to the full relation, sorted by block count descending and then
/// lexicographically by block list.
pub fn congruences(space: &GSpace) -> Vec<Partition> {
    let n = space.point_count();
    let mut found: BTreeSet<Partition> = BTreeSet::new();
    found.insert(Partition::discrete(n));
    found.insert(Partition::full(n));
    let mut fresh: Vec<Partition> = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            let p = principal_congruence(space, x, y);
            if found.insert(p.clone()) {
                fresh.push(p);
            }
        }
    }
    while let Some(p) = fresh.pop() {
        let current: Vec<Partition> = found.iter().cloned().collect();
        for q in &current {
            let j = join(space, &p, q);
            if found.insert(j.clone()) {
                fresh.push(j);
            }
        }
    }
    let mut all: Vec<Partition> = found.into_iter().collect();
    all.sort_by(Partition::lattice_order);
    all
}

/// Breadth-first closure of the generators. Fails once more than `cap`
/// group elements have been produced.
pub fn group_order_capped(space: &GSpace, cap: usize) -> Result<GroupOrder> {
    let n = space.point_count();
    let identity: Box<[u32]> = (0..n as u32).collect();
    let mut seen: HashSet<Box<[u32]>> = HashSet::new();
    seen.insert(identity.clone());
    let mut queue = VecDeque::from([identity]);
    let mut stabilizer = 0;
    while let Some(elem) = queue.pop_front() {
        if elem[0] == 0 {
            stabilizer += 1;
        }
        for g in space.generators() {
            let next: Box<[u32]> = elem.iter().map(|&x| g[x as usize] as u32).collect();
            if !seen.contains(&next) {
                if seen.len() >= cap {
                    return Err(Error::CapExceeded {
                        what: "permutation group size",
                        cap,
                    });
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    let order = GroupOrder {
        group_order: seen.len(),
        stabilizer_order: stabilizer,
    };
    debug_assert_eq!(order.group_order, n * order.stabilizer_order);
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_group_spec;

    fn cay(s: &str) -> GSpace {
        cayley_space(&parse_group_spec(s).unwrap())
    }

    #[test]
    fn cayley_generators() {
        let z4 = cay("C4");
        assert_eq!(z4.generators(), &[vec![1, 2, 3, 0]]);
        let klein = cay("C2xC2");
        assert_eq!(klein.generators(), &[vec![2, 3, 0, 1], vec![1, 0, 3, 2]]);
        let z6 = cay("C6");
        assert_eq!(z6.generators(), &[vec![1, 2, 3, 4, 5, 0]]);
    }

    #[test]
    fn rejects_bad_spaces() {
        assert!(matches!(
            GSpace::new(3, vec![vec![0, 0, 1]]),
            Err(Error::NotPermutation { index: 0, .. })
        ));
        assert!(matches!(
            GSpace::new(4, vec![vec![1, 0, 3, 2]]),
            Err(Error::NotTransitive {
                orbit: 2,
                points: 4
            })
        ));
        assert_eq!(GSpace::new(0, vec![]), Err(Error::NoPoints));
        assert!(GSpace::new(1, vec![]).is_ok());
    }

    #[test]
    fn orbits_of_sets() {
        let z4 = cay("C4");
        let orbit = set_orbit(&z4, &Configuration::new([0, 1])).unwrap();
        let lists: Vec<&[usize]> = orbit.iter().map(|c| c.points()).collect();
        assert_eq!(lists, vec![&[0, 1][..], &[0, 3], &[1, 2], &[2, 3]]);
        assert_eq!(set_orbit(&z4, &Configuration::full(4)).unwrap().len(), 1);
        assert_eq!(set_orbit(&z4, &Configuration::new([0])).unwrap().len(), 4);
        assert_eq!(
            set_orbit(&z4, &Configuration::default()),
            Err(Error::EmptyConfiguration)
        );
    }

    #[test]
    fn congruence_lattices() {
        let z4 = congruences(&cay("C4"));
        assert_eq!(z4.len(), 3);
        assert_eq!(z4[1].blocks_as_lists(), vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(congruences(&cay("C2xC2")).len(), 5);
        assert_eq!(congruences(&GSpace::new(1, vec![]).unwrap()).len(), 1);
        // subgroup counts of C12 and C2^3
        assert_eq!(congruences(&cay("C12")).len(), 6);
        assert_eq!(congruences(&cay("C2xC2xC2")).len(), 16);
    }

    #[test]
    fn orders() {
        let o = cay("C4").group_order().unwrap();
        assert_eq!((o.group_order, o.stabilizer_order), (4, 1));
        let o = cay("C2xC2").group_order().unwrap();
        assert_eq!((o.group_order, o.stabilizer_order), (4, 1));
        // symmetric group on 4 points
        let s4 = GSpace::new(4, vec![vec![1, 0, 2, 3], vec![1, 2, 3, 0]]).unwrap();
        let o = s4.group_order().unwrap();
        assert_eq!((o.group_order, o.stabilizer_order), (24, 6));
        assert!(matches!(
            group_order_capped(&s4, 10),
            Err(Error::CapExceeded { .. })
        ));
    }
}
