//! Exhaustive Hajós, semi-Hajós and demi-Hajós checks.
//!
//! Every factorization translates to one with `0 in A` and `0 in B`, and
//! periodicity is translation invariant, so it suffices to enumerate
//! normalized factorizations. They are produced from the smaller factor: for
//! each divisor `d <= |G|/d` and each 0-containing `X` of size `d`, every
//! complement `Y` of `X` gives the pairs `(X, Y)` and `(Y, X)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{cmp_lex, is_factorization, FactorizationCertificate, GroupTable};
use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::group::AbelianGroupSpec;
use crate::par::Exec;

pub const DEFAULT_HAJOS_CAP: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HajosProperty {
    /// In every factorization one factor is periodic.
    Hajos,
    /// Every complemented proper subset is periodic or has a periodic
    /// complement.
    Semi,
    /// In every factorization one factor is periodic or has a periodic
    /// complement.
    Demi,
}

#[derive(Clone, Copy, Debug)]
pub struct HajosOptions {
    pub cap: usize,
    pub exec: Exec,
    /// Collect a [`HajosWitness`] per checked item when the property holds.
    pub witnesses: bool,
}

impl Default for HajosOptions {
    fn default() -> Self {
        Self {
            cap: DEFAULT_HAJOS_CAP,
            exec: Exec::default(),
            witnesses: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HajosVerdict {
    pub property: HajosProperty,
    pub holds: bool,
    /// Least failing factorization, ordered by `A` then `B`.
    pub counterexample: Option<FactorizationCertificate>,
    /// Number of normalized factorizations examined.
    pub factorizations: usize,
    /// One witness per checked item, when requested and the property holds.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<HajosWitness>,
}

/// Which set carries the period in a [`HajosWitness`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PeriodicPart {
    FactorA,
    FactorB,
    /// `periodic` is a complement of `A`.
    ComplementOfA,
    /// `periodic` is a complement of `B`.
    ComplementOfB,
}

/// A factorization `G = A + B` together with a periodic set attached to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HajosWitness {
    pub a: Configuration,
    pub b: Configuration,
    pub part: PeriodicPart,
    pub periodic: Configuration,
    /// Index of a non-zero element fixing `periodic` under translation.
    pub period: usize,
}

impl HajosWitness {
    /// Re-checks the factorization, the relation of `periodic` to it, and
    /// the period.
    pub fn verify(&self, spec: &AbelianGroupSpec) -> bool {
        let n = spec.order();
        if self.period == 0 || self.period >= n || self.periodic.validate_nonempty(n).is_err() {
            return false;
        }
        let shifted: Configuration = self
            .periodic
            .iter()
            .map(|x| spec.add(x, self.period))
            .collect();
        let related = match self.part {
            PeriodicPart::FactorA => self.periodic == self.a,
            PeriodicPart::FactorB => self.periodic == self.b,
            PeriodicPart::ComplementOfA => is_factorization(spec, &self.a, &self.periodic),
            PeriodicPart::ComplementOfB => is_factorization(spec, &self.b, &self.periodic),
        };
        shifted == self.periodic && related && is_factorization(spec, &self.a, &self.b)
    }

    /// Whether the witness is of a kind `property` accepts.
    pub fn fits(&self, property: HajosProperty) -> bool {
        match property {
            HajosProperty::Hajos => {
                matches!(self.part, PeriodicPart::FactorA | PeriodicPart::FactorB)
            }
            HajosProperty::Semi => {
                matches!(
                    self.part,
                    PeriodicPart::FactorA | PeriodicPart::ComplementOfA
                )
            }
            HajosProperty::Demi => true,
        }
    }
}

/// `k`-subsets of `1..n` joined with `{0}`, in lexicographic order.
fn zero_subsets_of_size(n: usize, size: usize) -> Vec<u64> {
    fn walk(start: usize, n: usize, left: usize, mask: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(mask);
            return;
        }
        for p in start..=n - left {
            walk(p + 1, n, left - 1, mask | (1 << p), out);
        }
    }
    let mut out = Vec::new();
    if size >= 1 && size <= n {
        walk(1, n, size - 1, 1, &mut out);
    }
    out
}

/// All normalized factorizations `(A, B)` sorted by `A` then `B`
/// lexicographically.
pub(crate) fn normalized_factorizations(table: &GroupTable, exec: Exec) -> Vec<(u64, u64)> {
    let n = table.n;
    let mut seeds = Vec::new();
    for d in (1..=n).filter(|d| n.is_multiple_of(*d) && d * d <= n) {
        seeds.extend(zero_subsets_of_size(n, d));
    }
    let mut pairs: Vec<(u64, u64)> = exec.flat_map(&seeds, |&x| {
        let square = (x.count_ones() as usize).pow(2) == n;
        table
            .complements(x, None)
            .into_iter()
            .flat_map(|y| {
                let mut v = vec![(x, y)];
                if !square {
                    v.push((y, x));
                }
                v
            })
            .collect()
    });
    pairs.sort_by(|p, q| cmp_lex(p.0, q.0).then_with(|| cmp_lex(p.1, q.1)));
    pairs.dedup();
    pairs
}

/// Every normalized factorization of `spec`, as configurations.
pub fn all_factorizations(
    spec: &AbelianGroupSpec,
    exec: Exec,
) -> Result<Vec<(Configuration, Configuration)>> {
    let table = GroupTable::new(spec)?;
    Ok(normalized_factorizations(&table, exec)
        .into_iter()
        .map(|(a, b)| (Configuration::from_mask(a), Configuration::from_mask(b)))
        .collect())
}

/// Checks the Hajós property by enumeration.
pub fn hajos_brute(spec: &AbelianGroupSpec, opts: &HajosOptions) -> Result<HajosVerdict> {
    hajos_check(spec, HajosProperty::Hajos, opts)
}

/// Checks one of the three properties by enumerating every normalized
/// factorization of `spec`.
pub fn hajos_check(
    spec: &AbelianGroupSpec,
    property: HajosProperty,
    opts: &HajosOptions,
) -> Result<HajosVerdict> {
    let n = spec.order();
    if n > opts.cap {
        return Err(Error::CapExceeded {
            what: "group order for Hajós enumeration",
            cap: opts.cap,
        });
    }
    let table = GroupTable::new(spec)?;
    let pairs = normalized_factorizations(&table, opts.exec);

    // complements of each complemented A, already sorted
    let mut complements: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &(a, b) in &pairs {
        complements.entry(a).or_default().push(b);
    }
    let keys: Vec<u64> = complements.keys().copied().collect();
    let flags = opts.exec.map(&keys, |&a| {
        let own = table.is_periodic(a);
        let via = complements[&a].iter().any(|&b| table.is_periodic(b));
        (own, via)
    });
    let periodic: BTreeMap<u64, (bool, bool)> = keys.into_iter().zip(flags).collect();
    let own = |x: u64| periodic[&x].0;
    let good = |x: u64| periodic[&x].0 || periodic[&x].1;

    let failure: Option<(u64, u64)> = match property {
        HajosProperty::Hajos => pairs.iter().copied().find(|&(a, b)| !own(a) && !own(b)),
        HajosProperty::Demi => pairs.iter().copied().find(|&(a, b)| !good(a) && !good(b)),
        HajosProperty::Semi => pairs
            .iter()
            .copied()
            .find(|&(a, _)| a != table.full() && !good(a)),
    };
    let counterexample = failure.map(|(a, b)| FactorizationCertificate {
        group: spec.clone(),
        a: Configuration::from_mask(a),
        b: Configuration::from_mask(b),
    });
    let witnesses = if opts.witnesses && counterexample.is_none() {
        let witness = |a: u64, b: u64| -> Option<HajosWitness> {
            let mk = |part, p: u64| {
                table.period(p).map(|period| HajosWitness {
                    a: Configuration::from_mask(a),
                    b: Configuration::from_mask(b),
                    part,
                    periodic: Configuration::from_mask(p),
                    period,
                })
            };
            let via = |x: u64, part| complements[&x].iter().find_map(|&c| mk(part, c));
            match property {
                HajosProperty::Hajos => {
                    mk(PeriodicPart::FactorA, a).or_else(|| mk(PeriodicPart::FactorB, b))
                }
                HajosProperty::Semi => {
                    mk(PeriodicPart::FactorA, a).or_else(|| via(a, PeriodicPart::ComplementOfA))
                }
                HajosProperty::Demi => mk(PeriodicPart::FactorA, a)
                    .or_else(|| via(a, PeriodicPart::ComplementOfA))
                    .or_else(|| mk(PeriodicPart::FactorB, b))
                    .or_else(|| via(b, PeriodicPart::ComplementOfB)),
            }
        };
        let items: Vec<(u64, u64)> = match property {
            // one item per complemented proper subset
            HajosProperty::Semi => complements
                .iter()
                .filter(|(&a, _)| a != table.full())
                .map(|(&a, bs)| (a, bs[0]))
                .collect(),
            _ => pairs.clone(),
        };
        opts.exec
            .map(&items, |&(a, b)| witness(a, b))
            .into_iter()
            .map(|w| w.expect("property holds"))
            .collect()
    } else {
        Vec::new()
    };
    Ok(HajosVerdict {
        property,
        holds: counterexample.is_none(),
        counterexample,
        factorizations: pairs.len(),
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::is_factorization;
    use crate::group::parse_group_spec;

    fn g(s: &str) -> AbelianGroupSpec {
        parse_group_spec(s).unwrap()
    }

    /// Normalized factorizations by scanning every pair of 0-containing
    /// subsets.
    fn brute_pairs(spec: &AbelianGroupSpec) -> Vec<(Configuration, Configuration)> {
        let n = spec.order();
        let subsets: Vec<Configuration> = (0..1u64 << n)
            .filter(|m| m & 1 == 1)
            .map(Configuration::from_mask)
            .collect();
        let mut out = Vec::new();
        for a in &subsets {
            for b in &subsets {
                if is_factorization(spec, a, b) {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn enumeration_is_complete() {
        for s in ["C4", "C6", "C8", "C2xC2xC2", "C4xC2", "C9", "C3xC3"] {
            let spec = g(s);
            assert_eq!(
                all_factorizations(&spec, Exec::Sequential).unwrap(),
                brute_pairs(&spec),
                "{s}"
            );
        }
    }

    #[test]
    fn small_groups_are_hajos() {
        let opts = HajosOptions::default();
        for s in ["C4", "C2xC2", "C2", "C3", "C5", "C7"] {
            let v = hajos_brute(&g(s), &opts).unwrap();
            assert!(v.holds, "{s}");
            assert!(v.counterexample.is_none());
        }
    }

    #[test]
    fn semi_and_demi_small() {
        let opts = HajosOptions::default();
        for p in [HajosProperty::Semi, HajosProperty::Demi] {
            assert!(hajos_check(&g("C6"), p, &opts).unwrap().holds);
            assert!(hajos_check(&g("C4"), p, &opts).unwrap().holds);
        }
    }

    #[test]
    fn witnesses_verify() {
        let opts = HajosOptions {
            witnesses: true,
            ..Default::default()
        };
        for p in [
            HajosProperty::Hajos,
            HajosProperty::Semi,
            HajosProperty::Demi,
        ] {
            for s in ["C8", "C4xC2", "C6", "C3xC3"] {
                let spec = g(s);
                let v = hajos_check(&spec, p, &opts).unwrap();
                assert!(v.holds);
                assert!(!v.witnesses.is_empty());
                assert!(
                    v.witnesses.iter().all(|w| w.fits(p) && w.verify(&spec)),
                    "{s} {p:?}"
                );
            }
        }
        let v = hajos_brute(&g("C6"), &opts).unwrap();
        let mut bad = v.witnesses[0].clone();
        bad.period = 1;
        assert!(!bad.verify(&g("C6")) || bad.periodic.len() == 6);
    }

    #[test]
    fn cap_is_enforced() {
        let opts = HajosOptions {
            cap: 8,
            ..Default::default()
        };
        assert!(matches!(
            hajos_brute(&g("C9"), &opts),
            Err(Error::CapExceeded { .. })
        ));
    }
}
