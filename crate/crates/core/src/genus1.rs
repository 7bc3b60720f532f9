//! Closed forms for the genus-one part `Z_{n,n-1}`.
//!
//! Three evaluators are kept side by side: the per-reduced-map sum over
//! ordered compositions, its symmetrised form, and the per-partition formula
//! with the arrangement factor `l(mu)! / prod l_j!`. All arithmetic is exact;
//! only finished per-partition totals are turned into integers.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::engine::exact_integer;
use crate::error::{Error, Result};
use crate::partition::{compositions_at_least_two, partitions_at_least_two, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    MapSum,
    SymmetricSum,
    PartitionFormula,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::MapSum => "MAP_SUM",
            Provenance::SymmetricSum => "SYMMETRIC_SUM",
            Provenance::PartitionFormula => "PARTITION_FORMULA",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormResult {
    pub n: usize,
    pub source: Provenance,
    pub terms: BTreeMap<Partition, BigInt>,
}

fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn shifted_product(parts: &[u32]) -> BigRational {
    parts
        .iter()
        .fold(BigRational::one(), |acc, &a| acc * int(i64::from(a) - 1))
}

/// `5/24 sum a_i^2 + 1/4 sum a_i + 1/6 sum_{i != j} a_i a_j`, with the
/// cross term summed over ordered pairs.
pub fn bracket(parts: &[u32]) -> BigRational {
    let mut squares = BigRational::zero();
    let mut linear = BigRational::zero();
    let mut cross = BigRational::zero();
    for (i, &a) in parts.iter().enumerate() {
        let a = i64::from(a);
        squares += int(a * a);
        linear += int(a);
        for (j, &b) in parts.iter().enumerate() {
            if i != j {
                cross += int(a * i64::from(b));
            }
        }
    }
    rat(5, 24) * squares + rat(1, 4) * linear + rat(1, 6) * cross
}

/// The same bracket through power sums: `(S2 + 6 S1 + 4 S1^2) / 24`.
pub fn bracket_power_sums(parts: &[u32]) -> BigRational {
    let s1: i64 = parts.iter().map(|&a| i64::from(a)).sum();
    let s2: i64 = parts.iter().map(|&a| i64::from(a) * i64::from(a)).sum();
    rat(s2 + 6 * s1 + 4 * s1 * s1, 24)
}

/// Coefficient of `R_mu` in the genus-one part of `Z_n`; zero unless
/// `|mu| = n - 1`.
pub fn closed_form_coefficient(n: usize, mu: &Partition) -> Result<BigInt> {
    if mu.size() as usize + 1 != n || mu.is_empty() {
        return Ok(BigInt::zero());
    }
    let value = int(n as i64)
        * BigRational::from_integer(BigInt::from(mu.arrangement_count()))
        * bracket(mu.parts())
        * shifted_product(mu.parts());
    let out = exact_integer(
        &value,
        &format!("closed-form coefficient for n = {n}, {mu}"),
    )?;
    if out.is_negative() {
        return Err(Error::Consistency(format!(
            "closed-form coefficient for n = {n}, {mu} is negative"
        )));
    }
    Ok(out)
}

/// The three summands of the per-reduced-map formula for one ordered tuple.
pub fn map_sum_summands(n: usize, tuple: &[u32]) -> [BigRational; 3] {
    let k = tuple.len() as i64;
    let n = n as i64;
    let a: Vec<i64> = tuple.iter().map(|&x| i64::from(x)).collect();
    if a.is_empty() {
        return [
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
        ];
    }
    let tail_from = |i: usize| shifted_product(&tuple[i.min(tuple.len())..]);

    let t1 =
        (rat(k * n, 4) + rat(2 * k * n, 2)) * rat((a[0] - 2) * (a[0] - 1) * a[0], 6) * tail_from(1);

    let pairs_with = rat((k + 1) * k, 2);
    let t2 = (pairs_with.clone() * rat(n, 3) + pairs_with * int(n))
        * rat((a[0] - 1) * a[0], 2)
        * tail_from(1);

    let t3 = if k >= 2 {
        let choose = rat(k * (k - 1), 2);
        (int(2) * choose.clone() * rat(n, 6) + int(2) * choose * rat(n, 2))
            * rat((a[0] - 1) * a[0], 2)
            * rat((a[1] - 2) * (a[1] - 1), 2)
            * tail_from(2)
    } else {
        BigRational::zero()
    };
    [t1, t2, t3]
}

fn accumulate(
    n: usize,
    source: Provenance,
    per_tuple: impl Fn(&[u32]) -> BigRational,
) -> Result<ClosedFormResult> {
    let mut sums: BTreeMap<Partition, BigRational> = BTreeMap::new();
    if n >= 1 {
        for tuple in compositions_at_least_two(n as u32 - 1) {
            if tuple.is_empty() {
                continue;
            }
            let key = Partition::new(tuple.clone())?;
            *sums.entry(key).or_insert_with(BigRational::zero) += per_tuple(&tuple);
        }
    }
    let mut terms = BTreeMap::new();
    for (mu, value) in sums {
        let what = format!("{source} total for n = {n}, {mu}");
        terms.insert(mu, exact_integer(&value, &what)?);
    }
    Ok(ClosedFormResult { n, source, terms })
}

pub fn map_sum_polynomial(n: usize) -> Result<ClosedFormResult> {
    accumulate(n, Provenance::MapSum, |t| {
        let [a, b, c] = map_sum_summands(n, t);
        a + b + c
    })
}

pub fn symmetric_sum_polynomial(n: usize) -> Result<ClosedFormResult> {
    accumulate(n, Provenance::SymmetricSum, |t| {
        int(n as i64) * bracket(t) * shifted_product(t)
    })
}

pub fn closed_form_polynomial(n: usize) -> Result<ClosedFormResult> {
    let mut terms = BTreeMap::new();
    if n >= 2 {
        for mu in partitions_at_least_two(n as u32 - 1) {
            terms.insert(mu.clone(), closed_form_coefficient(n, &mu)?);
        }
    }
    Ok(ClosedFormResult {
        n,
        source: Provenance::PartitionFormula,
        terms,
    })
}

/// Checks term-by-term equality of the three evaluators and of the two
/// bracket routes.
pub fn three_way_check(n: usize) -> Result<ClosedFormResult> {
    let per_map = map_sum_polynomial(n)?;
    let symmetric = symmetric_sum_polynomial(n)?;
    let closed = closed_form_polynomial(n)?;
    if per_map.terms != closed.terms || symmetric.terms != closed.terms {
        return Err(Error::Consistency(format!(
            "closed forms disagree at n = {n}: per-map {:?}, symmetric {:?}, closed {:?}",
            per_map.terms, symmetric.terms, closed.terms
        )));
    }
    if n >= 1 {
        for tuple in compositions_at_least_two(n as u32 - 1) {
            if bracket(&tuple) != bracket_power_sums(&tuple) {
                return Err(Error::Consistency(format!(
                    "bracket routes disagree on {tuple:?}"
                )));
            }
        }
    }
    Ok(closed)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LassalleRow {
    pub n: usize,
    pub mu: Partition,
    pub coefficient: BigInt,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LassalleReport {
    pub rows: Vec<LassalleRow>,
    pub violations: Vec<String>,
}

impl LassalleReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Positivity and integrality of every genus-one coefficient for `n <= max_n`.
pub fn lassalle_scan(max_n: usize) -> LassalleReport {
    let mut report = LassalleReport::default();
    for n in 3..=max_n {
        for mu in partitions_at_least_two(n as u32 - 1) {
            match closed_form_coefficient(n, &mu) {
                Ok(c) if c.is_positive() => report.rows.push(LassalleRow {
                    n,
                    mu,
                    coefficient: c,
                }),
                Ok(c) => report
                    .violations
                    .push(format!("n = {n}, {mu}: coefficient {c} is not positive")),
                Err(e) => report.violations.push(format!("n = {n}, {mu}: {e}")),
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mu(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form_coefficient(3, &mu(&[2])).unwrap(), big(4));
        assert_eq!(closed_form_coefficient(6, &mu(&[3, 2])).unwrap(), big(143));
        assert_eq!(closed_form_coefficient(5, &mu(&[2, 2])).unwrap(), big(20));
        assert_eq!(closed_form_coefficient(6, &mu(&[5])).unwrap(), big(155));
        assert_eq!(closed_form_coefficient(6, &mu(&[2, 2])).unwrap(), big(0));
    }

    #[test]
    fn symmetric_sum_examples() {
        let t = symmetric_sum_polynomial(3).unwrap();
        assert_eq!(t.terms, [(mu(&[2]), big(4))].into_iter().collect());
        assert!(symmetric_sum_polynomial(2).unwrap().terms.is_empty());
        let t = symmetric_sum_polynomial(6).unwrap();
        assert_eq!(t.terms[&mu(&[5])], big(155));
        assert_eq!(t.terms[&mu(&[3, 2])], big(143));
        assert_eq!(t.terms.len(), 2);
    }

    #[test]
    fn map_sum_breakdown() {
        let three: BigRational = map_sum_summands(3, &[2]).into_iter().sum();
        assert_eq!(three, int(4));
        let [t1, t2, t3] = map_sum_summands(3, &[2]);
        assert!(t1.is_zero() && t3.is_zero());
        assert_eq!(t2, int(4));

        let a = map_sum_summands(6, &[3, 2]);
        let b = map_sum_summands(6, &[2, 3]);
        assert_eq!(&a[0] + &b[0], int(15));
        assert_eq!(&a[1] + &b[1], int(120));
        assert_eq!(&a[2] + &b[2], int(8));

        let l = map_sum_polynomial(5).unwrap();
        assert_eq!(l.terms[&mu(&[2, 2])], big(20));
        let [t1, _, t3] = map_sum_summands(5, &[2, 2]);
        assert!(t1.is_zero() && t3.is_zero());
    }

    #[test]
    fn three_way_up_to_twelve() {
        for n in 1..=12 {
            three_way_check(n).unwrap();
        }
    }

    #[test]
    fn lassalle_scans() {
        assert!(lassalle_scan(2).rows.is_empty());
        assert!(lassalle_scan(2).passed());
        let r = lassalle_scan(6);
        assert!(r.passed());
        assert_eq!(r.rows.len(), 6);
        assert!(lassalle_scan(12).passed());
    }
}
