//! Free-cumulant monomials `R_{a_1} ... R_{a_k}`, stored as partitions with
//! parts at least 2.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{usage, Result};

/// A partition `mu` with every part `>= 2`, parts kept in descending order.
///
/// Viewed as a monomial, part `i` with multiplicity `s_i` stands for
/// `R_i^{s_i}`. The empty partition is the constant monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if let Some(bad) = parts.iter().find(|&&p| p < 2) {
            return Err(usage(format!("free cumulant index {bad} is below 2")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self(parts))
    }

    /// Builds a partition from the `s`-vector `{i: s_i}`.
    pub fn from_multiplicities(s: &BTreeMap<u32, usize>) -> Result<Self> {
        let parts = s
            .iter()
            .flat_map(|(&i, &m)| std::iter::repeat_n(i, m))
            .collect();
        Self::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// `l(mu)`, also the number of black vertices.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|mu|`.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn black_count(&self) -> usize {
        self.len()
    }

    /// Total number of vertices `2 s_2 + 3 s_3 + ... = |mu|`.
    pub fn vertex_count(&self) -> usize {
        self.size() as usize
    }

    /// `sum (a_i - 1) = |mu| - l(mu)`.
    pub fn white_count(&self) -> usize {
        self.vertex_count() - self.len()
    }

    /// The `s`-vector: part value to multiplicity.
    pub fn multiplicities(&self) -> BTreeMap<u32, usize> {
        let mut s = BTreeMap::new();
        for &p in &self.0 {
            *s.entry(p).or_insert(0) += 1;
        }
        s
    }

    /// `l(mu)! / (l_1! ... l_j!)`, the number of distinct orderings of the parts.
    pub fn arrangement_count(&self) -> BigUint {
        let mut count = factorial(self.len());
        for m in self.multiplicities().values() {
            count /= factorial(*m);
        }
        count
    }
}

fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = crate::error::Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Self::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl std::str::FromStr for Partition {
    type Err = crate::error::Error;

    /// Parses a comma separated part list such as `3,2`.
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|_| usage(format!("cannot parse part {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "R_{p}")?;
        }
        Ok(())
    }
}

/// Every partition of `total` into parts `>= 2`, in reverse lexicographic order.
pub fn partitions_at_least_two(total: u32) -> Vec<Partition> {
    fn rec(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in (2..=rest.min(max)).rev() {
            prefix.push(p);
            rec(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, total, &mut Vec::new(), &mut out);
    out
}

/// Every ordered tuple of integers `>= 2` summing to `total`.
pub fn compositions_at_least_two(total: u32) -> Vec<Vec<u32>> {
    fn rec(rest: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in 2..=rest {
            prefix.push(p);
            rec(rest - p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, &mut Vec::new(), &mut out);
    out
}
