//! Finite abelian groups given by their cyclic factors.
//!
//! Elements are residue vectors, and each vector is identified with a dense
//! index by mixed-radix encoding with the first factor most significant. Index
//! order is therefore the lexicographic order of residue vectors.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite abelian group `C_{n_1} x ... x C_{n_k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct AbelianGroupSpec {
    orders: Vec<usize>,
}

impl AbelianGroupSpec {
    pub fn new(orders: Vec<usize>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::GroupSyntax {
                text: String::new(),
                reason: "no cyclic factors".into(),
            });
        }
        if let Some(&bad) = orders.iter().find(|&&n| n < 2) {
            return Err(Error::FactorTooSmall(bad));
        }
        Ok(Self { orders })
    }

    /// Cyclic group `C_n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn order(&self) -> usize {
        self.orders.iter().product()
    }

    pub fn encode(&self, g: &GroupElement) -> usize {
        self.orders
            .iter()
            .zip(&g.residues)
            .fold(0, |acc, (&n, &r)| acc * n + r % n)
    }

    pub fn decode(&self, mut index: usize) -> GroupElement {
        let mut residues = vec![0; self.orders.len()];
        for (slot, &n) in residues.iter_mut().zip(&self.orders).rev() {
            *slot = index % n;
            index /= n;
        }
        GroupElement { residues }
    }

    /// Sum of two elements given by index.
    pub fn add(&self, a: usize, b: usize) -> usize {
        let mut out = 0;
        let mut stride = 1;
        let (mut a, mut b) = (a, b);
        for &n in self.orders.iter().rev() {
            out += ((a % n + b % n) % n) * stride;
            stride *= n;
            a /= n;
            b /= n;
        }
        out
    }

    pub fn neg(&self, a: usize) -> usize {
        let mut out = 0;
        let mut stride = 1;
        let mut a = a;
        for &n in self.orders.iter().rev() {
            out += ((n - a % n) % n) * stride;
            stride *= n;
            a /= n;
        }
        out
    }

    /// Index of the unit vector `e_i`.
    pub fn unit(&self, i: usize) -> usize {
        self.orders[i + 1..].iter().product()
    }

    /// Full addition table, `table[a * order + b] = a + b`.
    pub fn addition_table(&self) -> Vec<usize> {
        let n = self.order();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(self.add(a, b));
            }
        }
        table
    }
}

impl fmt::Display for AbelianGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.orders.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "C{n}")?;
        }
        Ok(())
    }
}

/// Parses the `C<n>(xC<n>)*` notation, e.g. `C4xC2`.
pub fn parse_group_spec(text: &str) -> Result<AbelianGroupSpec> {
    let syntax = |reason: &str| Error::GroupSyntax {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(syntax("empty"));
    }
    let mut orders = Vec::new();
    for factor in trimmed.split(['x', 'X']) {
        let digits = factor
            .strip_prefix('C')
            .or_else(|| factor.strip_prefix('Z'))
            .ok_or_else(|| syntax(&format!("factor {factor:?} must start with C")))?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(syntax(&format!("factor {factor:?} has no order")));
        }
        let n: usize = digits
            .parse()
            .map_err(|_| syntax(&format!("factor {factor:?} is too large")))?;
        orders.push(n);
    }
    AbelianGroupSpec::new(orders)
}

impl FromStr for AbelianGroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_group_spec(s)
    }
}

impl TryFrom<String> for AbelianGroupSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        parse_group_spec(&s)
    }
}

impl From<AbelianGroupSpec> for String {
    fn from(g: AbelianGroupSpec) -> String {
        g.to_string()
    }
}

/// An element of an [`AbelianGroupSpec`] as a residue vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub residues: Vec<usize>,
}

/// Factors `n` into `(prime, exponent)` pairs, primes ascending.
pub fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every abelian group of the given order up to isomorphism, in invariant
/// factor form (largest factor first, each dividing the previous one).
pub fn abelian_groups_of_order(order: usize) -> Vec<AbelianGroupSpec> {
    if order < 2 {
        return Vec::new();
    }
    let mut types: Vec<Vec<usize>> = vec![Vec::new()];
    for (p, e) in factorize(order) {
        let mut next = Vec::new();
        for t in &types {
            for part in partitions(e, e) {
                let mut combined = t.clone();
                for (i, &k) in part.iter().enumerate() {
                    let q = p.pow(k);
                    if i < combined.len() {
                        combined[i] *= q;
                    } else {
                        combined.push(q);
                    }
                }
                next.push(combined);
            }
        }
        types = next;
    }
    types.sort_by(|a, b| b.cmp(a));
    types
        .into_iter()
        .map(|orders| AbelianGroupSpec { orders })
        .collect()
}

/// All abelian groups with `2 <= order <= max_order`.
pub fn abelian_groups_up_to(max_order: usize) -> Vec<AbelianGroupSpec> {
    (2..=max_order).flat_map(abelian_groups_of_order).collect()
}
