//! Decides the Hajós property from the group type alone, using the
//! Hajós–Sands list of template families.
//!
//! A finite abelian group embeds into another iff, for every prime, the
//! exponent partition of its p-component fits under the other's. Template
//! prime variables are distinct primes; a variable that does not divide the
//! group order is simply unused.

use serde::{Deserialize, Serialize};

use crate::group::{factorize, AbelianGroupSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Prime {
    Var(u8),
    Fixed(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Exp {
    Const(u32),
    /// Free positive exponent `n`.
    Free,
}

/// One template type from the Hajós–Sands list.
#[derive(Clone, Copy, Debug)]
pub struct Family {
    pub name: &'static str,
    slots: &'static [(Prime, Exp)],
}

use Exp::{Const as E, Free as N};
use Prime::{Fixed as F, Var as V};

const FAMILIES: [Family; 14] = [
    Family {
        name: "(p^n,q)",
        slots: &[(V(0), N), (V(1), E(1))],
    },
    Family {
        name: "(p^2,q^2)",
        slots: &[(V(0), E(2)), (V(1), E(2))],
    },
    Family {
        name: "(p^2,q,r)",
        slots: &[(V(0), E(2)), (V(1), E(1)), (V(2), E(1))],
    },
    Family {
        name: "(p,q,r,s)",
        slots: &[(V(0), E(1)), (V(1), E(1)), (V(2), E(1)), (V(3), E(1))],
    },
    Family {
        name: "(p,p)",
        slots: &[(V(0), E(1)), (V(0), E(1))],
    },
    Family {
        name: "(p,3,3)",
        slots: &[(V(0), E(1)), (F(3), E(1)), (F(3), E(1))],
    },
    Family {
        name: "(3^2,3)",
        slots: &[(F(3), E(2)), (F(3), E(1))],
    },
    Family {
        name: "(p^3,2,2)",
        slots: &[(V(0), E(3)), (F(2), E(1)), (F(2), E(1))],
    },
    Family {
        name: "(p^2,2,2,2)",
        slots: &[(V(0), E(2)), (F(2), E(1)), (F(2), E(1)), (F(2), E(1))],
    },
    Family {
        name: "(p,2^2,2)",
        slots: &[(V(0), E(1)), (F(2), E(2)), (F(2), E(1))],
    },
    Family {
        name: "(p,2,2,2,2)",
        slots: &[
            (V(0), E(1)),
            (F(2), E(1)),
            (F(2), E(1)),
            (F(2), E(1)),
            (F(2), E(1)),
        ],
    },
    Family {
        name: "(p,q,2,2)",
        slots: &[(V(0), E(1)), (V(1), E(1)), (F(2), E(1)), (F(2), E(1))],
    },
    Family {
        name: "(2^n,2)",
        slots: &[(F(2), N), (F(2), E(1))],
    },
    Family {
        name: "(2^2,2^2)",
        slots: &[(F(2), E(2)), (F(2), E(2))],
    },
];

const VAR_NAMES: [char; 4] = ['p', 'q', 'r', 's'];

pub fn template_families() -> &'static [Family] {
    &FAMILIES
}

/// Whether a prime variable may take the value of a fixed prime appearing in
/// the same family (e.g. `p = 2` in `(p^3,2,2)`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoincidencePolicy {
    /// Variables range over all primes, fixed ones included.
    #[default]
    Allowed,
    /// Variables avoid every fixed prime of their family.
    Distinct,
}

/// The family and variable assignment under which a group embeds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifierMatch {
    pub family: String,
    /// Variable name and the prime it was assigned; unused variables omitted.
    pub assignment: Vec<(char, usize)>,
    /// Free exponent needed, when the family has one.
    pub n: Option<u32>,
}

/// Exponent partition (descending) of the p-component for each prime.
fn primary_parts(orders: &[usize]) -> Vec<(usize, Vec<u32>)> {
    let mut parts: Vec<(usize, Vec<u32>)> = Vec::new();
    for &m in orders {
        for (p, e) in factorize(m) {
            match parts.iter_mut().find(|(q, _)| *q == p) {
                Some((_, v)) => v.push(e),
                None => parts.push((p, vec![e])),
            }
        }
    }
    for (_, v) in parts.iter_mut() {
        v.sort_unstable_by(|a, b| b.cmp(a));
    }
    parts.sort();
    parts
}

fn fits(group: &[u32], template: &[u32]) -> bool {
    group.len() <= template.len() && group.iter().zip(template).all(|(g, t)| g <= t)
}

fn var_count(f: &Family) -> u8 {
    f.slots
        .iter()
        .filter_map(|(p, _)| match p {
            Prime::Var(v) => Some(v + 1),
            _ => None,
        })
        .max()
        .unwrap_or(0)
}

/// Tries one assignment; `assign[v]` is `None` for a variable mapped to a
/// prime outside the group order.
fn embeds(
    f: &Family,
    parts: &[(usize, Vec<u32>)],
    assign: &[Option<usize>],
) -> Option<Option<u32>> {
    let max_exp = parts
        .iter()
        .flat_map(|(_, v)| v.iter().copied())
        .max()
        .unwrap_or(1);
    let mut needed_n = None;
    for (p, exps) in parts {
        let mut template: Vec<(u32, bool)> = f
            .slots
            .iter()
            .filter(|(q, _)| match q {
                Prime::Var(v) => assign[*v as usize] == Some(*p),
                Prime::Fixed(x) => x == p,
            })
            .map(|(_, e)| match e {
                Exp::Const(k) => (*k, false),
                Exp::Free => (max_exp.max(1), true),
            })
            .collect();
        template.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
        let values: Vec<u32> = template.iter().map(|t| t.0).collect();
        if !fits(exps, &values) {
            return None;
        }
        if let Some(i) = template.iter().position(|t| t.1) {
            // smallest free exponent that still fits
            let mut sorted = template.clone();
            let mut lo = 1;
            for cand in 1..=max_exp.max(1) {
                sorted[i].0 = cand;
                let mut v: Vec<u32> = sorted.iter().map(|t| t.0).collect();
                v.sort_unstable_by(|a, b| b.cmp(a));
                if fits(exps, &v) {
                    lo = cand;
                    break;
                }
            }
            needed_n = Some(lo);
        }
    }
    Some(needed_n)
}

fn assignments(
    vars: usize,
    primes: &[usize],
    forbidden: &[usize],
    current: &mut Vec<Option<usize>>,
    out: &mut Vec<Vec<Option<usize>>>,
) {
    if current.len() == vars {
        out.push(current.clone());
        return;
    }
    current.push(None);
    assignments(vars, primes, forbidden, current, out);
    current.pop();
    for &p in primes {
        if forbidden.contains(&p) || current.contains(&Some(p)) {
            continue;
        }
        current.push(Some(p));
        assignments(vars, primes, forbidden, current, out);
        current.pop();
    }
}

/// Decides whether the group embeds into some member of a template family,
/// returning the first matching family in list order.
pub fn hajos_classify(
    spec: &AbelianGroupSpec,
    policy: CoincidencePolicy,
) -> Option<ClassifierMatch> {
    let parts = primary_parts(spec.orders());
    let primes: Vec<usize> = parts.iter().map(|(p, _)| *p).collect();
    for f in FAMILIES.iter() {
        let fixed: Vec<usize> = f
            .slots
            .iter()
            .filter_map(|(p, _)| match p {
                Prime::Fixed(x) => Some(*x),
                _ => None,
            })
            .collect();
        let forbidden = match policy {
            CoincidencePolicy::Allowed => Vec::new(),
            CoincidencePolicy::Distinct => fixed,
        };
        let mut all = Vec::new();
        assignments(
            var_count(f) as usize,
            &primes,
            &forbidden,
            &mut Vec::new(),
            &mut all,
        );
        for assign in all {
            if let Some(n) = embeds(f, &parts, &assign) {
                return Some(ClassifierMatch {
                    family: f.name.to_string(),
                    assignment: assign
                        .iter()
                        .enumerate()
                        .filter_map(|(i, p)| p.map(|p| (VAR_NAMES[i], p)))
                        .collect(),
                    n,
                });
            }
        }
    }
    None
}

/// Re-checks a match: the named family with the given assignment admits the
/// group.
pub fn verify_match(spec: &AbelianGroupSpec, m: &ClassifierMatch) -> bool {
    let Some(f) = FAMILIES.iter().find(|f| f.name == m.family) else {
        return false;
    };
    let parts = primary_parts(spec.orders());
    let vars = var_count(f) as usize;
    let mut assign = vec![None; vars];
    for &(name, p) in &m.assignment {
        let Some(i) = VAR_NAMES.iter().position(|&c| c == name) else {
            return false;
        };
        if i >= vars || factorize(p) != [(p, 1)] {
            return false;
        }
        assign[i] = Some(p);
    }
    let distinct = {
        let mut v: Vec<usize> = assign.iter().flatten().copied().collect();
        let len = v.len();
        v.sort_unstable();
        v.dedup();
        v.len() == len
    };
    distinct && embeds(f, &parts, &assign).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_group_spec;

    fn classify(orders: &[usize]) -> Option<ClassifierMatch> {
        hajos_classify(
            &AbelianGroupSpec::new(orders.to_vec()).unwrap(),
            CoincidencePolicy::default(),
        )
    }

    #[test]
    fn listed_examples() {
        let m = classify(&[8, 3]).unwrap();
        assert_eq!(m.family, "(p^n,q)");
        assert_eq!(m.assignment, vec![('p', 2), ('q', 3)]);
        assert_eq!(m.n, Some(3));
        assert_eq!(classify(&[2, 2]).unwrap().family, "(p,p)");
        assert!(classify(&[4, 9, 5]).is_none());
    }

    #[test]
    fn primary_decomposition() {
        assert_eq!(primary_parts(&[12, 2]), vec![(2, vec![2, 1]), (3, vec![1])]);
    }

    #[test]
    fn cyclic_families() {
        // cyclic groups of order p^n q, p^2 q^2, p^2 q r, p q r s are listed
        for n in [16, 24, 36, 60, 210, 9 * 2] {
            assert!(classify(&[n]).is_some(), "{n}");
        }
        // p^3 q^2 and p^2 q^2 r are not
        assert!(classify(&[72]).is_none());
        assert!(classify(&[180]).is_none());
        // rank 3 p-groups beyond the list
        assert!(classify(&[5, 5, 5]).is_none());
    }

    #[test]
    fn matches_reverify() {
        for s in ["C8xC3", "C2xC2", "C9xC3", "C12xC2", "C30"] {
            let spec = parse_group_spec(s).unwrap();
            let m = hajos_classify(&spec, CoincidencePolicy::Allowed).unwrap();
            assert!(verify_match(&spec, &m), "{s}");
        }
        let spec = parse_group_spec("C8xC3").unwrap();
        let bogus = ClassifierMatch {
            family: "(p,p)".into(),
            assignment: vec![('p', 2)],
            n: None,
        };
        assert!(!verify_match(&spec, &bogus));
    }
}
