//! Independent validation of the symbolic checker: randomized point
//! evaluation of the split identity, and exhaustive enumeration of
//! small-coefficient families.
//!
//! A nonzero polynomial over an infinite integral domain cannot vanish
//! everywhere, so random points from a large integer box (embedded into
//! each domain) refute broken families with overwhelming likelihood,
//! while any single violating point is a definitive refutation. The
//! exhaustive search enumerates every family over a finite coefficient
//! pool and confirms extensionally that the classifier accepts exactly
//! the families the checker does.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::bassoc::{check_b_associative, classify, first_violation_at_arity, Classification};
use crate::family::{case_ii_family, weighted_mean, PolyFamily};
use crate::poly::{Monomial, Polynomial};
use crate::ring::Ring;

/// Hard cap on the enumerated space unless explicitly overridden.
pub const SEARCH_SPACE_LIMIT: u128 = 100_000_000;

/// Coordinates are drawn uniformly from this integer box.
const SAMPLE_BOX: i64 = 1_000_000;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("search space of {size} families exceeds the limit of {limit} (set allow_large to override)")]
    SearchSpaceTooLarge { size: u128, limit: u128 },
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
}

/// Enumeration parameters for the exhaustive search.
#[derive(Clone, Debug)]
pub struct SearchConfig<R: Ring> {
    pub max_arity: usize,
    /// Degree cap applied to every arity without an explicit override.
    pub max_total_degree: u32,
    /// Optional per-arity degree caps (entry `n-1` for arity `n`); a cap
    /// of zero restricts that arity to pool constants.
    pub per_arity_degrees: Option<Vec<u32>>,
    /// Coefficient pool; must contain 0 and 1.
    pub pool: Vec<R>,
    pub seed: u64,
    /// Permits search spaces beyond [`SEARCH_SPACE_LIMIT`].
    pub allow_large: bool,
}

impl<R: Ring> SearchConfig<R> {
    fn degree_for(&self, arity: usize) -> u32 {
        self.per_arity_degrees
            .as_ref()
            .and_then(|v| v.get(arity - 1).copied())
            .unwrap_or(self.max_total_degree)
    }
}

/// Outcome of randomized point checking.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SampleOutcome<R: Ring> {
    /// No violation found; probabilistic evidence only.
    Consistent,
    /// A definitive refutation at a concrete point.
    PointViolation {
        arity: usize,
        split: (usize, usize, usize),
        point: Vec<R>,
    },
}

/// Evaluates both sides of the split identity at random points for
/// random splits. Any violation definitively refutes B-associativity.
pub fn sample_check<R: Ring>(fam: &PolyFamily<R>, trials: usize, seed: u64) -> SampleOutcome<R> {
    assert!(trials >= 1);
    let splits: Vec<(usize, usize, usize)> = all_splits(fam.max_arity());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let (n, a, k) = splits[rng.random_range(0..splits.len())];
        let point: Vec<R> = (0..n)
            .map(|_| R::from_int(rng.random_range(-SAMPLE_BOX..=SAMPLE_BOX)))
            .collect();
        let lhs = fam.member(n).evaluate(&point).expect("matching arity");
        let inner = fam
            .member(k)
            .evaluate(&point[a..a + k])
            .expect("matching arity");
        let mut replaced = point.clone();
        for slot in replaced.iter_mut().skip(a).take(k) {
            *slot = inner.clone();
        }
        let rhs = fam.member(n).evaluate(&replaced).expect("matching arity");
        if lhs != rhs {
            return SampleOutcome::PointViolation {
                arity: n,
                split: (a, k, n - a - k),
                point,
            };
        }
    }
    SampleOutcome::Consistent
}

/// All `(n, a, k)` splits up to the given arity, canonical order.
fn all_splits(max_arity: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for n in 1..=max_arity {
        for a in 0..n {
            for k in 1..=(n - a) {
                out.push((n, a, k));
            }
        }
    }
    out
}

/// Why a family landed in the mismatch list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MismatchReason {
    /// The checker accepted but the classifier refuted.
    ClassifiedNotBAssociative,
    /// The classification does not rebuild the original family.
    ReconstructionDiffers,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SearchMismatch<R: Ring> {
    pub family: PolyFamily<R>,
    pub classification: Classification<R>,
    pub reason: MismatchReason,
}

/// Result of the exhaustive enumeration.
#[derive(Clone, Debug)]
pub struct SearchReport<R: Ring> {
    /// Size of the enumerated space (all coefficient assignments).
    pub total_enumerated: u128,
    /// Families passing the checker, in enumeration order, with their
    /// classifications.
    pub b_associative: Vec<(PolyFamily<R>, Classification<R>)>,
    /// Must be empty: every passing family classifies into one of the
    /// two shapes and rebuilds exactly from its classification.
    pub mismatches: Vec<SearchMismatch<R>>,
}

/// Monomials of the given arity up to the degree cap, graded-lex
/// ascending; these are the coefficient slots of one member.
fn monomial_slots(arity: usize, max_degree: u32) -> Vec<Monomial> {
    fn rec(prefix: &mut Vec<u32>, remaining_vars: usize, budget: u32, out: &mut Vec<Monomial>) {
        if remaining_vars == 0 {
            out.push(Monomial::from_exponents(prefix.iter().copied()));
            return;
        }
        for e in 0..=budget {
            prefix.push(e);
            rec(prefix, remaining_vars - 1, budget - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), arity, max_degree, &mut out);
    out.sort();
    out
}

/// Decodes a candidate index into a member polynomial: digit `j` in base
/// `pool.len()` selects the coefficient of slot `j`, slot 0 least
/// significant.
fn decode_member<R: Ring>(
    index: u64,
    slots: &[Monomial],
    pool: &[R],
    arity: usize,
) -> Polynomial<R> {
    let base = pool.len() as u64;
    let mut idx = index;
    let mut terms = Vec::new();
    for slot in slots {
        let digit = (idx % base) as usize;
        idx /= base;
        terms.push((slot.clone(), pool[digit].clone()));
    }
    Polynomial::from_terms(arity, terms).expect("slots respect the arity")
}

/// Enumerates every family over the pool, checks each and classifies the
/// passing ones. Deterministic: identical configurations yield identical
/// reports regardless of the worker count.
pub fn exhaustive_search<R: Ring>(
    cfg: &SearchConfig<R>,
    jobs: usize,
) -> Result<SearchReport<R>, OracleError> {
    if cfg.max_arity < 2 {
        return Err(OracleError::InvalidConfig(
            "max_arity must be at least 2".into(),
        ));
    }
    if cfg.pool.is_empty()
        || !cfg.pool.iter().any(|c| c.is_zero())
        || !cfg.pool.iter().any(|c| c.is_one())
    {
        return Err(OracleError::InvalidConfig(
            "the coefficient pool must be nonempty and contain 0 and 1".into(),
        ));
    }

    let slots_per_arity: Vec<Vec<Monomial>> = (1..=cfg.max_arity)
        .map(|n| monomial_slots(n, cfg.degree_for(n)))
        .collect();
    let base = cfg.pool.len() as u128;
    let mut total: u128 = 1;
    for slots in &slots_per_arity {
        total = total.saturating_mul(base.saturating_pow(slots.len() as u32));
    }
    if total > SEARCH_SPACE_LIMIT && !cfg.allow_large {
        return Err(OracleError::SearchSpaceTooLarge {
            size: total,
            limit: SEARCH_SPACE_LIMIT,
        });
    }
    let counts: Vec<u64> = slots_per_arity
        .iter()
        .map(|s| (cfg.pool.len() as u64).pow(s.len() as u32))
        .collect();

    // Partition on the arity-1 candidate; prefix pruning is sound
    // because a violated split at arity <= j stays violated in every
    // extension of the prefix.
    let subtree = |i1: u64| -> (Vec<(PolyFamily<R>, Classification<R>)>, Vec<SearchMismatch<R>>) {
        let mut found = Vec::new();
        let mut mismatches = Vec::new();
        let mut members = vec![decode_member(i1, &slots_per_arity[0], &cfg.pool, 1)];
        if first_violation_at_arity(&members, 1).is_none() {
            extend_members(
                cfg,
                &slots_per_arity,
                &counts,
                &mut members,
                &mut found,
                &mut mismatches,
            );
        }
        (found, mismatches)
    };

    let per_first: Vec<_> = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("worker pool");
        pool.install(|| (0..counts[0]).into_par_iter().map(subtree).collect())
    } else {
        (0..counts[0]).map(subtree).collect()
    };

    let mut b_associative = Vec::new();
    let mut mismatches = Vec::new();
    for (f, m) in per_first {
        b_associative.extend(f);
        mismatches.extend(m);
    }
    Ok(SearchReport {
        total_enumerated: total,
        b_associative,
        mismatches,
    })
}

fn extend_members<R: Ring>(
    cfg: &SearchConfig<R>,
    slots_per_arity: &[Vec<Monomial>],
    counts: &[u64],
    members: &mut Vec<Polynomial<R>>,
    found: &mut Vec<(PolyFamily<R>, Classification<R>)>,
    mismatches: &mut Vec<SearchMismatch<R>>,
) {
    let arity = members.len() + 1;
    for idx in 0..counts[arity - 1] {
        members.push(decode_member(idx, &slots_per_arity[arity - 1], &cfg.pool, arity));
        if first_violation_at_arity(members, arity).is_none() {
            if arity == cfg.max_arity {
                record_family(members.clone(), found, mismatches);
            } else {
                extend_members(cfg, slots_per_arity, counts, members, found, mismatches);
            }
        }
        members.pop();
    }
}

fn record_family<R: Ring>(
    members: Vec<Polynomial<R>>,
    found: &mut Vec<(PolyFamily<R>, Classification<R>)>,
    mismatches: &mut Vec<SearchMismatch<R>>,
) {
    let family = PolyFamily::new(members).expect("enumerated members are well-formed");
    let classification = classify(&family);
    match &classification {
        Classification::NotBAssociative(_) => mismatches.push(SearchMismatch {
            family: family.clone(),
            classification: classification.clone(),
            reason: MismatchReason::ClassifiedNotBAssociative,
        }),
        _ => {
            if reconstruct(&classification, family.max_arity()).as_ref() != Some(&family) {
                mismatches.push(SearchMismatch {
                    family: family.clone(),
                    classification: classification.clone(),
                    reason: MismatchReason::ReconstructionDiffers,
                });
            }
        }
    }
    found.push((family, classification));
}

/// Rebuilds the family a classification describes; `None` when the
/// description is not realizable (which itself signals a mismatch).
pub fn reconstruct<R: Ring>(
    cls: &Classification<R>,
    max_arity: usize,
) -> Option<PolyFamily<R>> {
    match cls {
        Classification::CaseI { z, k, tail } => {
            let mut members = Vec::with_capacity(max_arity);
            for n in 1..*k {
                match z {
                    Some(z) => members.push(weighted_mean(z, n).ok()?),
                    // parameter-free truncations have at most the
                    // identity before the constants
                    None => members.push(Polynomial::var(1, 1)),
                }
            }
            for (offset, c) in tail.iter().enumerate() {
                members.push(Polynomial::constant(c.clone(), k + offset));
            }
            PolyFamily::new(members).ok()
        }
        Classification::CaseII { q, tail } => case_ii_family(q, max_arity, tail).ok(),
        Classification::NotBAssociative(_) => None,
    }
}

/// Per-family conflict between the symbolic checker and the randomized
/// oracle.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Disagreement {
    /// The checker accepted but a sampled point violates the identity.
    OkButPointViolation { family_index: usize },
    /// The checker produced a witness whose difference polynomial never
    /// evaluated nonzero across all retry rounds.
    WitnessVanishes { family_index: usize },
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct AgreementReport {
    pub families_checked: usize,
    pub disagreements: Vec<Disagreement>,
}

impl AgreementReport {
    pub fn merge(mut self, other: AgreementReport) -> AgreementReport {
        self.families_checked += other.families_checked;
        self.disagreements.extend(other.disagreements);
        self
    }
}

/// Cross-validates the checker against point evaluation over a corpus:
/// an accepted family must sample consistently, and a witness's nonzero
/// difference polynomial must evaluate nonzero at some sampled point
/// (retrying with fresh points up to ten rounds of one hundred each).
pub fn checker_oracle_agreement<R: Ring>(
    corpus: &[PolyFamily<R>],
    trials: usize,
    seed: u64,
) -> AgreementReport {
    let mut report = AgreementReport::default();
    for (index, fam) in corpus.iter().enumerate() {
        let fam_seed = seed.wrapping_add(index as u64);
        match check_b_associative(fam) {
            Ok(()) => {
                if let SampleOutcome::PointViolation { .. } = sample_check(fam, trials, fam_seed)
                {
                    report
                        .disagreements
                        .push(Disagreement::OkButPointViolation { family_index: index });
                }
            }
            Err(witness) => {
                let mut rng = ChaCha8Rng::seed_from_u64(fam_seed);
                let nv = witness.difference.num_vars();
                let found = (0..10).any(|_| {
                    (0..100).any(|_| {
                        let point: Vec<R> = (0..nv)
                            .map(|_| R::from_int(rng.random_range(-SAMPLE_BOX..=SAMPLE_BOX)))
                            .collect();
                        !witness
                            .difference
                            .evaluate(&point)
                            .expect("matching arity")
                            .is_zero()
                    })
                });
                if !found {
                    report
                        .disagreements
                        .push(Disagreement::WitnessVanishes { family_index: index });
                }
            }
        }
        report.families_checked += 1;
    }
    report
}
