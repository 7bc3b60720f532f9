//! The acceptance suite: one pass/fail result per criterion.
//!
//! Shared by the `selftest` command and the `acceptance` test target so both
//! report the same thing.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::seq::{index, SliceRandom};
use rand::SeedableRng;

use crate::admissibility::{candidate_colorings, BipartiteGraph};
use crate::census::{
    census_classes, decoration_count, enumerate_placements, qualifying_gluings,
    reduced_bipartite_genus_one, reduced_genus_one, verify_decorations, CensusFilter,
};
use crate::engine::{full_expansion, genus_part, tally, EngineConfig};
use crate::error::Result;
use crate::genus1::{closed_form_polynomial, lassalle_scan, three_way_check};
use crate::partition::Partition;
use crate::polygon::{enumerate_gluings, GluedMap, Gluing};
use crate::report::{expand_json, to_text};

pub const GLUING_COUNTS: [u64; 8] = [1, 3, 15, 105, 945, 10395, 135135, 2027025];

/// `(n, mu, coefficient)` values the enumeration must reproduce.
pub const PINNED: [(usize, &[u32], i64); 6] = [
    (3, &[2], 4),
    (4, &[3], 21),
    (5, &[2, 2], 20),
    (5, &[4], 65),
    (6, &[3, 2], 143),
    (6, &[5], 155),
];

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    /// Largest `n` for the enumeration-based criteria.
    pub max_n: usize,
    pub threads: usize,
    pub seed: u64,
    /// Random `(map, q)` pairs compared at `n = 7`.
    pub samples: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            max_n: 8,
            threads: 4,
            seed: 0x5eed_2024,
            samples: 10_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{mark}] {:>2} {}: {}", self.id, self.title, self.detail)
    }
}

fn outcome(
    id: u8,
    title: &'static str,
    run: impl FnOnce() -> Result<(bool, String)>,
) -> CriterionResult {
    let (passed, detail) = run().unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionResult {
        id,
        title,
        passed,
        detail,
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

pub fn gluing_counts(opts: &SuiteOptions) -> CriterionResult {
    outcome(1, "gluing counts", || {
        let start = Instant::now();
        let top = opts.max_n.min(GLUING_COUNTS.len());
        let mut got = Vec::new();
        for n in 1..=top {
            got.push(enumerate_gluings(n)?.count() as u64);
        }
        let elapsed = start.elapsed();
        let ok = got == GLUING_COUNTS[..top] && elapsed < Duration::from_secs(30);
        Ok((ok, format!("n = 1..={top}: {got:?} in {}", secs(elapsed))))
    })
}

pub fn genus_one_agreement(opts: &SuiteOptions) -> CriterionResult {
    outcome(2, "genus-one closed forms agree with enumeration", || {
        let start = Instant::now();
        let cfg = EngineConfig::with_threads(4);
        let mut checked = 0;
        let mut mismatches = Vec::new();
        for n in 3..=opts.max_n {
            let closed = three_way_check(n)?;
            let enumerated = genus_part(n, 2, &cfg)?;
            let mut keys: Vec<&Partition> = closed.terms.keys().collect();
            keys.extend(enumerated.terms.keys());
            keys.sort();
            keys.dedup();
            for mu in keys {
                checked += 1;
                let want = closed.terms.get(mu).cloned().unwrap_or_else(BigInt::zero);
                let got = match enumerated.terms.get(mu) {
                    Some(c) => c.integer()?,
                    None => BigInt::zero(),
                };
                if want != got {
                    mismatches.push(format!("n = {n}, {mu}: closed {want}, enumerated {got}"));
                }
            }
        }
        let elapsed = start.elapsed();
        let ok = mismatches.is_empty() && elapsed < Duration::from_secs(60);
        let detail = if mismatches.is_empty() {
            format!(
                "{checked} coefficients for n = 3..={} in {}",
                opts.max_n,
                secs(elapsed)
            )
        } else {
            mismatches.join("; ")
        };
        Ok((ok, detail))
    })
}

pub fn pinned_values(opts: &SuiteOptions) -> CriterionResult {
    outcome(3, "pinned coefficients", || {
        let cfg = EngineConfig::with_threads(opts.threads);
        let mut bad = Vec::new();
        let mut seen = 0;
        for &(n, parts, want) in &PINNED {
            let mu = Partition::new(parts.to_vec())?;
            let got = crate::engine::coefficient(n, &mu, &cfg)?.integer()?;
            seen += 1;
            if got != BigInt::from(want) {
                bad.push(format!("n = {n}, {mu}: got {got}, want {want}"));
            }
        }
        Ok(if bad.is_empty() {
            (true, format!("{seen} values reproduced by enumeration"))
        } else {
            (false, bad.join("; "))
        })
    })
}

fn random_gluing(n: usize, rng: &mut StdRng) -> Result<Gluing> {
    let mut sides: Vec<usize> = (0..2 * n).collect();
    sides.shuffle(rng);
    let mut partner = vec![0; 2 * n];
    for pair in sides.chunks(2) {
        partner[pair[0]] = pair[1];
        partner[pair[1]] = pair[0];
    }
    Gluing::from_partners(partner)
}

/// A uniformly random composition of `whites` into `blacks` positive parts,
/// shifted to colours `q >= 2`.
fn random_colors(blacks: usize, whites: usize, rng: &mut StdRng) -> Vec<u32> {
    let mut cuts: Vec<usize> = index::sample(rng, whites - 1, blacks - 1)
        .into_iter()
        .map(|c| c + 1)
        .collect();
    cuts.sort_unstable();
    cuts.push(whites);
    let mut prev = 0;
    cuts.into_iter()
        .map(|c| {
            let q = (c - prev) as u32 + 1;
            prev = c;
            q
        })
        .collect()
}

pub fn oracle_equivalence(opts: &SuiteOptions) -> CriterionResult {
    outcome(4, "Hall condition matches orientation oracle", || {
        let mut exhaustive = 0u64;
        let mut discrepancies = Vec::new();
        for n in 1..=opts.max_n.min(6) {
            for g in enumerate_gluings(n)? {
                let graph = BipartiteGraph::from_map(&GluedMap::new(&g))?;
                for q in candidate_colorings(&graph) {
                    exhaustive += 1;
                    if graph.hall_condition(&q)? != graph.orientation_walk_condition(&q)? {
                        discrepancies.push(format!("{g} with q = {q:?}"));
                    }
                }
            }
        }
        let mut rng = StdRng::seed_from_u64(opts.seed);
        let mut sampled = 0;
        let mut admissible = 0;
        while sampled < opts.samples {
            let g = random_gluing(7, &mut rng)?;
            let graph = BipartiteGraph::from_map(&GluedMap::new(&g))?;
            let (b, w) = (graph.black_count(), graph.white_count());
            if b == 0 || w < b {
                continue;
            }
            let q = random_colors(b, w, &mut rng);
            sampled += 1;
            let hall = graph.hall_condition(&q)?;
            admissible += u64::from(hall);
            if hall != graph.orientation_walk_condition(&q)? {
                discrepancies.push(format!("{g} with q = {q:?}"));
            }
        }
        let detail = format!(
            "{exhaustive} exhaustive pairs for n <= {}, {sampled} random pairs at n = 7 \
             ({admissible} admissible, seed {:#x}), {} discrepancies",
            opts.max_n.min(6),
            opts.seed,
            discrepancies.len()
        );
        Ok((discrepancies.is_empty(), detail))
    })
}

pub fn lassalle_positivity() -> CriterionResult {
    outcome(5, "genus-one coefficients are positive integers", || {
        let start = Instant::now();
        let report = lassalle_scan(12);
        let elapsed = start.elapsed();
        let ok = report.passed() && !report.rows.is_empty() && elapsed < Duration::from_secs(1);
        let detail = if report.passed() {
            format!(
                "{} coefficients for n <= 12 in {}",
                report.rows.len(),
                secs(elapsed)
            )
        } else {
            report.violations.join("; ")
        };
        Ok((ok, detail))
    })
}

pub fn census_counts() -> CriterionResult {
    outcome(6, "census of reduced genus-one maps", || {
        let uncoloured = reduced_genus_one()?.len();
        let contributing = reduced_bipartite_genus_one(true)?.len();
        Ok((
            uncoloured == 5 && contributing == 7,
            format!(
                "{uncoloured} reduced classes up to rotation and reflection (want 5), \
                 {contributing} contributing bipartite classes up to rotation (want 7)"
            ),
        ))
    })
}

pub fn placement_counts() -> CriterionResult {
    outcome(7, "decoration count matches explicit placements", || {
        let mut bad = Vec::new();
        for k in 0..=5 {
            for m in 0..=4 {
                let listed = enumerate_placements(k, m).len() as u64;
                if listed != decoration_count(k, m) {
                    bad.push(format!("k = {k}, m = {m}"));
                }
            }
        }
        Ok(if bad.is_empty() {
            (true, "k <= 5, m <= 4".to_string())
        } else {
            (false, format!("mismatch at {}", bad.join(", ")))
        })
    })
}

pub fn orbit_counting(opts: &SuiteOptions) -> CriterionResult {
    outcome(8, "orbit-stabilizer and decorated map counts", || {
        let mut problems = Vec::new();
        let mut classes_seen = 0;
        let families = [
            CensusFilter::default(),
            CensusFilter {
                doubled_genus: Some(2),
                ..CensusFilter::default()
            },
            CensusFilter::reduced_bipartite_genus_one(false),
            CensusFilter::reduced_bipartite_genus_one(true),
        ];
        for n in 1..=opts.max_n.min(6) {
            for filter in &families {
                let classes = census_classes(n, filter)?;
                let direct = qualifying_gluings(n, filter)?.len();
                let orbit_total: usize = classes.iter().map(|c| c.orbit_size).sum();
                if orbit_total != direct {
                    problems.push(format!("n = {n}: orbits cover {orbit_total} of {direct}"));
                }
                for c in &classes {
                    classes_seen += 1;
                    if c.orbit_size * c.stabilizer_order != n {
                        problems.push(format!("{}: orbit * stabilizer != {n}", c.representative));
                    }
                }
            }
        }
        for n in 1..=3 {
            let filter = CensusFilter::reduced_genus_one();
            for c in census_classes(n, &filter)? {
                if c.orbit_size * c.stabilizer_order != 4 * n {
                    problems.push(format!(
                        "{}: dihedral orbit * stabilizer != {}",
                        c.representative,
                        4 * n
                    ));
                }
            }
        }

        let mut reports = 0;
        for base in reduced_bipartite_genus_one(true)?
            .iter()
            .filter(|c| c.n <= 4)
        {
            let map = base.map();
            let (b0, w0) = (map.black_count(), map.white_count());
            for k in 0..=2 {
                for leaves in 0..=3 {
                    let r = verify_decorations(base, b0 + k, w0 + k + leaves)?;
                    reports += 1;
                    if !r.passed || !r.formula_matches() {
                        problems.push(format!(
                            "{} with {k} pairs, {leaves} leaves: {} decorations ({} predicted), {} labelled maps",
                            base.representative, r.decorations, r.predicted_decorations, r.labeled_maps
                        ));
                    }
                }
            }
        }
        Ok(if problems.is_empty() {
            (
                true,
                format!(
                    "{classes_seen} classes for n <= {}, {reports} decoration checks",
                    opts.max_n.min(6)
                ),
            )
        } else {
            (false, problems.join("; "))
        })
    })
}

pub fn rescaling_integrality(opts: &SuiteOptions) -> CriterionResult {
    outcome(9, "rescaled coefficients are integers", || {
        let cfg = EngineConfig::with_threads(opts.threads);
        let mut inexact = Vec::new();
        let mut terms = 0;
        for n in 1..=opts.max_n.min(6) {
            for poly in full_expansion(n, &cfg)? {
                terms += poly.terms.len();
                for (mu, c) in poly.non_integral_terms() {
                    inexact.push(format!(
                        "n = {n}, {mu}: rawCount {} gives {}",
                        c.raw,
                        crate::engine::render_rational(&c.value)
                    ));
                }
            }
        }
        Ok(if inexact.is_empty() {
            (
                true,
                format!("{terms} terms for n <= {}", opts.max_n.min(6)),
            )
        } else {
            (
                false,
                format!(
                    "{} inexact divisions: {}",
                    inexact.len(),
                    inexact.join("; ")
                ),
            )
        })
    })
}

pub fn determinism() -> CriterionResult {
    outcome(
        10,
        "expansion output is independent of thread count",
        || {
            let one = to_text(&expand_json(
                &tally(6, None, &EngineConfig::with_threads(1))?,
                None,
            ));
            let eight = to_text(&expand_json(
                &tally(6, None, &EngineConfig::with_threads(8))?,
                None,
            ));
            Ok((one == eight, format!("n = 6 JSON, {} bytes", one.len())))
        },
    )
}

pub fn degenerate_case() -> CriterionResult {
    outcome(11, "genus-one part of Z_2 is empty", || {
        let enumerated = genus_part(2, 2, &EngineConfig::with_threads(1))?;
        let closed = closed_form_polynomial(2)?;
        Ok((
            enumerated.terms.is_empty() && closed.terms.is_empty(),
            format!(
                "{} enumerated terms, {} closed-form terms",
                enumerated.terms.len(),
                closed.terms.len()
            ),
        ))
    })
}

/// Runs every criterion in order.
pub fn run_suite(opts: &SuiteOptions) -> Vec<CriterionResult> {
    vec![
        gluing_counts(opts),
        genus_one_agreement(opts),
        pinned_values(opts),
        oracle_equivalence(opts),
        lassalle_positivity(),
        census_counts(),
        placement_counts(),
        orbit_counting(opts),
        rescaling_integrality(opts),
        determinism(),
        degenerate_case(),
    ]
}
