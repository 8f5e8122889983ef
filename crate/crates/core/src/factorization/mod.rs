//! Factorizations `G = A + B` of finite abelian groups.
//!
//! Subsets of `G` are [`Configuration`]s of element indices. The searches run
//! on 64-bit masks, so they accept groups of order at most 64.

mod classify;
mod hajos;

pub use classify::{
    hajos_classify, template_families, verify_match, ClassifierMatch, CoincidencePolicy, Family,
};
pub use hajos::{
    all_factorizations, hajos_brute, hajos_check, HajosOptions, HajosProperty, HajosVerdict,
    HajosWitness, PeriodicPart, DEFAULT_HAJOS_CAP,
};

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::config::{BitIter, Configuration};
use crate::error::{Error, Result};
use crate::group::{AbelianGroupSpec, GroupElement};

/// Largest group order the mask-based searches accept.
pub const MASK_LIMIT: usize = 64;

/// `G = A + B` with the sum map `A x B -> G` bijective.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationCertificate {
    pub group: AbelianGroupSpec,
    pub a: Configuration,
    pub b: Configuration,
}

impl FactorizationCertificate {
    pub fn verify(&self) -> bool {
        is_factorization(&self.group, &self.a, &self.b)
    }
}

/// Addition table and translate masks for a group of order at most 64.
#[derive(Clone, Debug)]
pub(crate) struct GroupTable {
    pub n: usize,
    add: Vec<u8>,
    neg: Vec<u8>,
}

impl GroupTable {
    pub fn new(spec: &AbelianGroupSpec) -> Result<Self> {
        let n = spec.order();
        if n > MASK_LIMIT {
            return Err(Error::CapExceeded {
                what: "group order for mask-based search",
                cap: MASK_LIMIT,
            });
        }
        Ok(Self {
            n,
            add: spec.addition_table().into_iter().map(|x| x as u8).collect(),
            neg: (0..n).map(|x| spec.neg(x) as u8).collect(),
        })
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b] as usize
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg[b] as usize)
    }

    pub fn full(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1 << self.n) - 1
        }
    }

    /// `A + g`.
    pub fn translate(&self, a: u64, g: usize) -> u64 {
        BitIter(a).fold(0, |m, x| m | (1 << self.add(x, g)))
    }

    /// Least non-zero period of `A`.
    pub fn period(&self, a: u64) -> Option<usize> {
        (1..self.n).find(|&g| self.translate(a, g) == a)
    }

    pub fn is_periodic(&self, a: u64) -> bool {
        self.period(a).is_some()
    }

    /// Every `B` containing 0 with `A + B = G`, in discovery order. Stops
    /// after `limit` complements when given.
    pub fn complements(&self, a: u64, limit: Option<usize>) -> Vec<u64> {
        let size = a.count_ones() as usize;
        let mut out = Vec::new();
        if size == 0 || !self.n.is_multiple_of(size) || a & 1 == 0 {
            return out;
        }
        let tiles: Vec<u64> = (0..self.n).map(|b| self.translate(a, b)).collect();
        let members: Vec<usize> = BitIter(a).collect();
        self.cover(&tiles, &members, a, 1, limit, &mut out);
        out
    }

    fn cover(
        &self,
        tiles: &[u64],
        members: &[usize],
        covered: u64,
        chosen: u64,
        limit: Option<usize>,
        out: &mut Vec<u64>,
    ) -> bool {
        if covered == self.full() {
            out.push(chosen);
            return limit.is_some_and(|l| out.len() >= l);
        }
        let u = (!covered).trailing_zeros() as usize;
        for &x in members {
            let b = self.sub(u, x);
            let tile = tiles[b];
            if tile & covered == 0
                && self.cover(
                    tiles,
                    members,
                    covered | tile,
                    chosen | (1 << b),
                    limit,
                    out,
                )
            {
                return true;
            }
        }
        false
    }

    /// All complements containing 0, sorted lexicographically.
    pub fn sorted_complements(&self, a: u64) -> Vec<u64> {
        let mut all = self.complements(a, None);
        all.sort_by(|&x, &y| cmp_lex(x, y));
        all
    }
}

/// Lexicographic order of the sorted point lists of two masks.
pub fn cmp_lex(a: u64, b: u64) -> Ordering {
    BitIter(a).cmp(BitIter(b))
}

fn mask_of(spec: &AbelianGroupSpec, c: &Configuration) -> Result<u64> {
    c.validate_nonempty(spec.order())?;
    c.mask().ok_or(Error::CapExceeded {
        what: "group order for mask-based search",
        cap: MASK_LIMIT,
    })
}

/// Translate of `a` containing 0 by subtracting its least element.
pub fn normalize(spec: &AbelianGroupSpec, a: &Configuration) -> Configuration {
    match a.points().first() {
        Some(&m) => Configuration::new(a.iter().map(|x| spec.add(x, spec.neg(m)))),
        None => a.clone(),
    }
}

/// Whether every element of `G` is uniquely `a + b` with `a` in `A`, `b` in `B`.
pub fn is_factorization(spec: &AbelianGroupSpec, a: &Configuration, b: &Configuration) -> bool {
    let n = spec.order();
    if a.is_empty() || b.is_empty() || a.validate(n).is_err() || b.validate(n).is_err() {
        return false;
    }
    if a.len() * b.len() != n {
        return false;
    }
    let mut hit = vec![false; n];
    a.iter().all(|x| {
        b.iter()
            .all(|y| !std::mem::replace(&mut hit[spec.add(x, y)], true))
    })
}

/// The lexicographically least complement `B` of `A` with `0 in B`.
pub fn find_complement(
    spec: &AbelianGroupSpec,
    a: &Configuration,
) -> Result<Option<Configuration>> {
    let mask = mask_of(spec, a)?;
    let table = GroupTable::new(spec)?;
    if !spec.order().is_multiple_of(a.len()) {
        return Ok(None);
    }
    // complements of A and of its normalized translate coincide
    let shift = a.points()[0];
    let normalized = table.translate(mask, table.sub(0, shift));
    Ok(table
        .sorted_complements(normalized)
        .first()
        .map(|&b| Configuration::from_mask(b)))
}

/// All complements of `A` containing 0, sorted lexicographically.
pub fn all_complements(spec: &AbelianGroupSpec, a: &Configuration) -> Result<Vec<Configuration>> {
    let mask = mask_of(spec, a)?;
    let table = GroupTable::new(spec)?;
    let normalized = table.translate(mask, table.sub(0, a.points()[0]));
    Ok(table
        .sorted_complements(normalized)
        .into_iter()
        .map(Configuration::from_mask)
        .collect())
}

/// Index of the least non-zero `g` with `A + g = A`.
pub fn period_index(spec: &AbelianGroupSpec, a: &Configuration) -> Result<Option<usize>> {
    a.validate_nonempty(spec.order())?;
    let n = spec.order();
    Ok((1..n).find(|&g| Configuration::new(a.iter().map(|x| spec.add(x, g))) == *a))
}

/// The least non-zero period of `A`, if any.
pub fn is_periodic(spec: &AbelianGroupSpec, a: &Configuration) -> Result<Option<GroupElement>> {
    Ok(period_index(spec, a)?.map(|g| spec.decode(g)))
}

/// A pair `(B, C)` with `G = A + B = B + C`: `B` is the least complement
/// of `A` and `C` the least complement of `B`.
pub fn is_doubly_complemented(
    spec: &AbelianGroupSpec,
    a: &Configuration,
) -> Result<Option<(Configuration, Configuration)>> {
    let Some(b) = find_complement(spec, a)? else {
        return Ok(None);
    };
    Ok(find_complement(spec, &b)?.map(|c| (b, c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_group_spec;

    fn g(s: &str) -> AbelianGroupSpec {
        parse_group_spec(s).unwrap()
    }

    fn set(p: &[usize]) -> Configuration {
        Configuration::new(p.iter().copied())
    }

    /// Every 0-containing subset of the right size whose sums with A are
    /// distinct, lexicographically least first.
    fn brute_complement(spec: &AbelianGroupSpec, a: &Configuration) -> Option<Configuration> {
        let n = spec.order();
        let mut cands: Vec<Configuration> = (0..1u64 << n)
            .filter(|m| m & 1 == 1)
            .map(Configuration::from_mask)
            .filter(|b| is_factorization(spec, a, b))
            .collect();
        cands.sort();
        cands.into_iter().next()
    }

    #[test]
    fn factorization_examples() {
        assert!(is_factorization(&g("C4"), &set(&[0, 1]), &set(&[0, 2])));
        assert!(!is_factorization(&g("C4"), &set(&[0, 1]), &set(&[0, 1])));
        assert!(is_factorization(
            &g("C2xC3"),
            &set(&[0]),
            &Configuration::full(6)
        ));
        assert!(!is_factorization(&g("C4"), &set(&[0]), &set(&[0, 1])));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(
            find_complement(&g("C8"), &set(&[0, 2])).unwrap(),
            Some(set(&[0, 1, 4, 5]))
        );
        assert_eq!(find_complement(&g("C4"), &set(&[0, 1, 2])).unwrap(), None);
        assert_eq!(
            find_complement(&g("C4"), &set(&[0, 2])).unwrap(),
            Some(set(&[0, 1]))
        );
        // translated input gives the same complements
        assert_eq!(
            find_complement(&g("C8"), &set(&[3, 5])).unwrap(),
            Some(set(&[0, 1, 4, 5]))
        );
    }

    #[test]
    fn complements_match_brute_force() {
        for spec in [g("C8"), g("C4xC2"), g("C2xC2xC2"), g("C6"), g("C9")] {
            for m in 1..(1u64 << spec.order()) {
                let a = Configuration::from_mask(m);
                assert_eq!(
                    find_complement(&spec, &a).unwrap(),
                    brute_complement(&spec, &a),
                    "{spec} {a}"
                );
            }
        }
    }

    #[test]
    fn periods() {
        assert_eq!(
            period_index(&g("C8"), &set(&[0, 1, 4, 5])).unwrap(),
            Some(4)
        );
        assert_eq!(period_index(&g("C4"), &set(&[0, 1])).unwrap(), None);
        assert_eq!(
            is_periodic(&g("C3xC2"), &Configuration::full(6)).unwrap(),
            Some(GroupElement {
                residues: vec![0, 1]
            })
        );
        let table = GroupTable::new(&g("C8")).unwrap();
        assert_eq!(table.period(0b0011_0011), Some(4));
    }

    #[test]
    fn double_complements() {
        assert_eq!(
            is_doubly_complemented(&g("C4"), &set(&[0, 1])).unwrap(),
            Some((set(&[0, 2]), set(&[0, 1])))
        );
        assert_eq!(
            is_doubly_complemented(&g("C4"), &set(&[0, 1, 2])).unwrap(),
            None
        );
        assert_eq!(
            is_doubly_complemented(&g("C6"), &Configuration::full(6)).unwrap(),
            Some((set(&[0]), Configuration::full(6)))
        );
    }

    #[test]
    fn empty_input_is_an_error() {
        assert_eq!(
            find_complement(&g("C4"), &Configuration::default()),
            Err(Error::EmptyConfiguration)
        );
    }
}
