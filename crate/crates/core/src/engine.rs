//! Coefficients of `Z_n` by exhaustive enumeration of polygon gluings.
//!
//! Each gluing contributes one `(M, q)` pair per admissible colouring; pairs
//! are tallied by the monomial of `q`. The rescaled coefficient of a monomial
//! with `V` vertices is `(-1)^(n+1+V) * 2^(V-(n-1)) * rawCount`.
//!
//! Work is split by the partner of boundary edge 0. Every branch owns its
//! tally and branches are merged by addition, so results do not depend on
//! the number of worker threads.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::admissibility::{admissible_colorings, for_each_admissible_q, BipartiteGraph};
use crate::error::{usage, Error, Result};
use crate::partition::Partition;
use crate::polygon::{double_factorial_odd, GluedMap, Gluing, Matchings};

/// Default largest `n` enumerated without `--force`.
pub const DEFAULT_LIMIT: usize = 8;
/// Largest `n` enumerated even with `--force`.
pub const HARD_CAP: usize = 10;

#[derive(Clone, Copy, Debug)]
pub struct EngineConfig {
    pub threads: usize,
    pub limit: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            threads: std::thread::available_parallelism().map_or(1, |p| p.get()),
            limit: DEFAULT_LIMIT,
        }
    }
}

impl EngineConfig {
    pub fn with_threads(threads: usize) -> Self {
        Self {
            threads,
            ..Self::default()
        }
    }

    /// Raises the enumeration limit to [`HARD_CAP`].
    pub fn forced(mut self) -> Self {
        self.limit = HARD_CAP;
        self
    }

    fn check(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(usage("n must be at least 1"));
        }
        if self.threads == 0 {
            return Err(usage("threads must be at least 1"));
        }
        let limit = self.limit.min(HARD_CAP);
        if n > limit {
            return Err(Error::LimitExceeded {
                n,
                limit,
                hard_cap: HARD_CAP,
            });
        }
        Ok(())
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads)
            .build()
            .map_err(|e| Error::Consistency(format!("cannot start worker pool: {e}")))
    }
}

/// A raw `(M, q)` count and its rescaled value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coefficient {
    pub raw: BigUint,
    pub value: BigRational,
}

impl Coefficient {
    pub fn new(n: usize, mono: &Partition, raw: BigUint) -> Self {
        let value = rescale(n, mono, &raw);
        Self { raw, value }
    }

    pub fn is_integral(&self) -> bool {
        self.value.is_integer()
    }

    /// The rescaled value as an integer, or a consistency error when the
    /// power-of-two division is not exact.
    pub fn integer(&self) -> Result<BigInt> {
        if self.is_integral() {
            Ok(self.value.to_integer())
        } else {
            Err(Error::Consistency(format!(
                "rescaled coefficient {} is not an integer",
                self.value
            )))
        }
    }
}

/// `(-1)^(n+1+V) * 2^(V-(n-1)) * raw` with `V = |mu|`, exactly.
pub fn rescale(n: usize, mono: &Partition, raw: &BigUint) -> BigRational {
    let v = mono.vertex_count() as i64;
    let exponent = v - (n as i64 - 1);
    let mut value = BigRational::from_integer(BigInt::from(raw.clone()));
    let power = BigInt::one() << exponent.unsigned_abs();
    if exponent >= 0 {
        value *= BigRational::from_integer(power);
    } else {
        value /= BigRational::from_integer(power);
    }
    if (n as i64 + 1 + v) % 2 != 0 {
        value = -value;
    }
    value
}

/// Raw `(M, q)` counts for one `n`, keyed by monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tally {
    pub n: usize,
    /// Doubled genus the pass was restricted to, if any.
    pub doubled_genus: Option<u32>,
    pub gluings: BigUint,
    pub raw: BTreeMap<Partition, BigUint>,
}

impl Tally {
    pub fn total_pairs(&self) -> BigUint {
        self.raw.values().sum()
    }

    /// Splits the tally into one polynomial per occurring doubled genus.
    pub fn by_genus(&self) -> Vec<GenusPolynomial> {
        let mut parts: BTreeMap<u32, GenusPolynomial> = BTreeMap::new();
        for (mono, raw) in &self.raw {
            let dg = doubled_genus_of(self.n, mono);
            parts
                .entry(dg)
                .or_insert_with(|| GenusPolynomial::empty(self.n, dg))
                .terms
                .insert(mono.clone(), Coefficient::new(self.n, mono, raw.clone()));
        }
        parts.into_values().collect()
    }

    pub fn restricted(&self, doubled_genus: u32) -> GenusPolynomial {
        let mut poly = GenusPolynomial::empty(self.n, doubled_genus);
        for (mono, raw) in &self.raw {
            if doubled_genus_of(self.n, mono) == doubled_genus {
                poly.terms
                    .insert(mono.clone(), Coefficient::new(self.n, mono, raw.clone()));
            }
        }
        poly
    }
}

/// Doubled genus forced by Euler's formula: `V = n + 1 - 2g`.
pub fn doubled_genus_of(n: usize, mono: &Partition) -> u32 {
    (n as i64 + 1 - mono.vertex_count() as i64) as u32
}

/// The part of `Z_n` of a single (doubled) genus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusPolynomial {
    pub n: usize,
    pub doubled_genus: u32,
    pub terms: BTreeMap<Partition, Coefficient>,
}

impl GenusPolynomial {
    pub fn empty(n: usize, doubled_genus: u32) -> Self {
        Self {
            n,
            doubled_genus,
            terms: BTreeMap::new(),
        }
    }

    /// Terms whose rescaled value is not an integer.
    pub fn non_integral_terms(&self) -> Vec<(&Partition, &Coefficient)> {
        self.terms
            .iter()
            .filter(|(_, c)| !c.is_integral())
            .collect()
    }
}

fn partner_gluing(partner: &[usize]) -> Gluing {
    Gluing::from_partners(partner.to_vec()).expect("enumerated matchings are valid")
}

fn run_branches<T, F>(n: usize, config: &EngineConfig, branch: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(Matchings) -> Result<T> + Sync,
{
    config.check(n)?;
    let pool = config.pool()?;
    pool.install(|| {
        (1..2 * n)
            .into_par_iter()
            .map(|p| branch(Matchings::branch(n, p)?))
            .collect::<Result<Vec<T>>>()
    })
}

/// One pass over all gluings; with `doubled_genus` set, maps of other genera
/// are skipped before any colouring work.
pub fn tally(n: usize, doubled_genus: Option<u32>, config: &EngineConfig) -> Result<Tally> {
    let target_v = doubled_genus.map(|dg| n as i64 + 1 - i64::from(dg));
    let branches = run_branches(n, config, |mut matchings| {
        let mut local: HashMap<Partition, u64> = HashMap::new();
        let mut seen = 0u64;
        while let Some(partner) = matchings.advance_in_place() {
            seen += 1;
            let map = GluedMap::new(&partner_gluing(partner));
            if target_v.is_some_and(|v| map.vertex_count() as i64 != v) {
                continue;
            }
            let graph = BipartiteGraph::from_map(&map)?;
            let mut overflow = false;
            for_each_admissible_q(&graph, |q| {
                let mono = Partition::new(q.to_vec()).expect("colours are >= 2");
                let slot = local.entry(mono).or_insert(0);
                match slot.checked_add(1) {
                    Some(v) => *slot = v,
                    None => overflow = true,
                }
            });
            if overflow {
                return Err(Error::Overflow(n));
            }
        }
        Ok((seen, local))
    })?;

    let mut raw: BTreeMap<Partition, BigUint> = BTreeMap::new();
    let mut gluings = BigUint::zero();
    for (seen, local) in branches {
        gluings += BigUint::from(seen);
        for (mono, count) in local {
            *raw.entry(mono).or_insert_with(BigUint::zero) += BigUint::from(count);
        }
    }
    let expected = BigUint::from(double_factorial_odd(n));
    if gluings != expected {
        return Err(Error::Consistency(format!(
            "visited {gluings} gluings, expected {expected}"
        )));
    }
    Ok(Tally {
        n,
        doubled_genus,
        gluings,
        raw,
    })
}

/// Raw count and rescaled coefficient of one monomial, by a dedicated pass
/// that counts colourings with exactly the monomial's multiset.
pub fn coefficient(n: usize, mono: &Partition, config: &EngineConfig) -> Result<Coefficient> {
    if mono.is_empty() {
        return Err(usage("monomial needs at least one part"));
    }
    let branches = run_branches(n, config, |mut matchings| {
        let mut count = BigUint::zero();
        while let Some(partner) = matchings.advance_in_place() {
            let map = GluedMap::new(&partner_gluing(partner));
            if map.vertex_count() != mono.vertex_count() {
                continue;
            }
            let c = admissible_colorings(&map, mono);
            if c > 0 {
                count += BigUint::from(c);
            }
        }
        Ok(count)
    })?;
    let raw: BigUint = branches.into_iter().sum();
    Ok(Coefficient::new(n, mono, raw))
}

pub fn genus_part(n: usize, doubled_genus: u32, config: &EngineConfig) -> Result<GenusPolynomial> {
    Ok(tally(n, Some(doubled_genus), config)?.restricted(doubled_genus))
}

/// Every genus part of `Z_n` from a single pass, ordered by doubled genus.
pub fn full_expansion(n: usize, config: &EngineConfig) -> Result<Vec<GenusPolynomial>> {
    Ok(tally(n, None, config)?.by_genus())
}

/// Integer value of a rational that must be integral, with context.
pub fn exact_integer(value: &BigRational, what: &str) -> Result<BigInt> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(Error::Consistency(format!(
            "{what}: {value} is not an integer"
        )))
    }
}

/// Renders an exact rational as `p` or `p/q`.
pub fn render_rational(value: &BigRational) -> String {
    if value.is_integer() {
        value.to_integer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom().abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn cfg() -> EngineConfig {
        EngineConfig::with_threads(2)
    }

    #[test]
    fn coefficient_examples() {
        let c = coefficient(3, &mono(&[2]), &cfg()).unwrap();
        assert_eq!(c.raw, BigUint::from(4u32));
        assert_eq!(c.integer().unwrap(), BigInt::from(4));

        let c = coefficient(2, &mono(&[3]), &cfg()).unwrap();
        assert_eq!(c.raw, BigUint::from(1u32));
        assert_eq!(c.integer().unwrap(), BigInt::from(4));

        let c = coefficient(2, &mono(&[2]), &cfg()).unwrap();
        assert_eq!(c.raw, BigUint::from(1u32));
        assert_eq!(c.integer().unwrap(), BigInt::from(-2));
    }

    #[test]
    fn genus_part_examples() {
        let p = genus_part(3, 2, &cfg()).unwrap();
        assert_eq!(p.terms.len(), 1);
        assert_eq!(p.terms[&mono(&[2])].integer().unwrap(), BigInt::from(4));

        assert!(genus_part(2, 2, &cfg()).unwrap().terms.is_empty());

        let p = genus_part(4, 2, &cfg()).unwrap();
        assert_eq!(p.terms.len(), 1);
        assert_eq!(p.terms[&mono(&[3])].integer().unwrap(), BigInt::from(21));
    }

    #[test]
    fn full_expansion_small() {
        let parts = full_expansion(1, &cfg()).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].doubled_genus, 0);
        assert_eq!(parts[0].terms.keys().collect::<Vec<_>>(), vec![&mono(&[2])]);

        let parts = full_expansion(2, &cfg()).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(
            parts[0].terms[&mono(&[3])].integer().unwrap(),
            BigInt::from(4)
        );
        assert_eq!(parts[1].doubled_genus, 1);
        assert_eq!(
            parts[1].terms[&mono(&[2])].integer().unwrap(),
            BigInt::from(-2)
        );
    }

    #[test]
    fn dedicated_pass_matches_full_tally() {
        for n in 1..=6 {
            let t = tally(n, None, &cfg()).unwrap();
            for (m, raw) in &t.raw {
                assert_eq!(&coefficient(n, m, &cfg()).unwrap().raw, raw, "n={n} {m}");
            }
        }
    }

    #[test]
    fn thread_count_does_not_matter() {
        let a = tally(6, None, &EngineConfig::with_threads(1)).unwrap();
        let b = tally(6, None, &EngineConfig::with_threads(5)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn limits() {
        let c = EngineConfig::with_threads(1);
        assert!(matches!(
            tally(9, None, &c),
            Err(Error::LimitExceeded { .. })
        ));
        assert!(matches!(
            tally(11, None, &c.forced()),
            Err(Error::LimitExceeded { .. })
        ));
        assert!(matches!(tally(0, None, &c), Err(Error::Usage(_))));
        assert!(matches!(
            tally(3, None, &EngineConfig::with_threads(0)),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn rescale_signs_and_powers() {
        let one = BigUint::one();
        // genus one: factor exactly 1
        assert_eq!(rescale(6, &mono(&[3, 2]), &one), BigRational::one());
        // genus zero: V = n + 1, factor +4
        assert_eq!(
            rescale(5, &mono(&[6]), &one),
            BigRational::from_integer(BigInt::from(4))
        );
        // V = n - 2: factor -1/2
        let half = rescale(6, &mono(&[4]), &one);
        assert_eq!(render_rational(&half), "-1/2");
    }
}
