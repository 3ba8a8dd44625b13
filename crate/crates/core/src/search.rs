//! Parameter-space scans for GRL instances meeting a target property.
//!
//! Candidates are ordered canonically: evaluation-point sets in
//! lexicographic order of their sorted element codes, then the family
//! parameters (sorted `(mu, delta, tau)` triples, or sampled matrices in
//! sample order). Evaluation is parallel; hits are emitted in candidate order.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::DEFAULT_BUDGET;
use crate::criteria::{
    check_amds_dual_thm, check_mds_thm, check_self_dual_thm, cross_validate, solve_self_dual_special,
    ConditionReport, Criterion,
};
use crate::error::{Error, Result};
use crate::gf::{Fe, Field};
use crate::grl::{special_a, ui_coefficients, GrlSpec, Layout};
use crate::matrix::Mat;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Family {
    /// Every combination of the listed values in the [`Layout::Cor33`] matrix.
    Cor33 { mu: Vec<Fe>, delta: Vec<Fe>, tau: Vec<Fe> },
    /// [`solve_self_dual_special`] on each point set.
    SelfDualSolver,
    /// `count` invertible matrices drawn uniformly from a seeded generator.
    Gl3Sample { count: usize, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct SearchJob {
    pub field: Field,
    pub n: usize,
    pub k: usize,
    pub family: Family,
    pub goal: Criterion,
    /// Re-check every hit against the exhaustive oracles.
    pub validate: bool,
    pub max_candidates: Option<u64>,
    pub max_hits: Option<usize>,
    /// Enumeration budget for validation.
    pub budget: u64,
}

impl SearchJob {
    pub fn new(field: &Field, n: usize, k: usize, family: Family, goal: Criterion) -> SearchJob {
        SearchJob {
            field: field.clone(),
            n,
            k,
            family,
            goal,
            validate: false,
            max_candidates: None,
            max_hits: None,
            budget: DEFAULT_BUDGET,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchHit {
    /// Position in the canonical candidate order.
    pub candidate: u64,
    pub spec: GrlSpec,
    pub report: ConditionReport,
    /// For self-dual hits.
    pub lambda: Option<Fe>,
    /// Oracle verdict on the goal property, when validation ran.
    pub validated: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StopReason {
    Exhausted,
    MaxHits,
    MaxCandidates,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub hits: Vec<SearchHit>,
    pub candidates_examined: u64,
    pub stop: StopReason,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostEstimate {
    pub candidate_count: u128,
    /// Subset relations evaluated per candidate (matrix-entry checks for the
    /// self-dual goal).
    pub per_candidate_subset_checks: u128,
}

pub fn binomial(n: u64, r: u64) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u128, |acc, i| {
        acc.saturating_mul((n - i) as u128) / (i + 1) as u128
    })
}

fn family_size(family: &Family) -> u128 {
    match family {
        Family::Cor33 { mu, delta, tau } => {
            let distinct = |v: &Vec<Fe>| v.iter().unique().count() as u128;
            distinct(mu) * distinct(delta) * distinct(tau)
        }
        Family::SelfDualSolver => 1,
        Family::Gl3Sample { count, .. } => *count as u128,
    }
}

pub fn estimate_cost(job: &SearchJob) -> CostEstimate {
    let (n, k) = (job.n as u64, job.k as u64);
    let c = |r: u64| if k >= r { binomial(n, k - r) } else { 0 };
    let per_candidate_subset_checks = match job.goal {
        Criterion::Mds => 3 * c(1) + 3 * c(2),
        // condition 1 and condition 6 over I, condition 5 over J
        Criterion::AmdsDual => 3 * c(1) + 6 * c(2),
        // v-ratios plus the six independent entries of A A^T
        Criterion::SelfDual => n as u128 + 6,
    };
    CostEstimate {
        candidate_count: binomial(job.field.order() as u64, n).saturating_mul(family_size(&job.family)),
        per_candidate_subset_checks,
    }
}

fn validate_job(job: &SearchJob) -> Result<()> {
    if job.max_hits == Some(0) || job.max_candidates == Some(0) {
        return Err(Error::LimitZero);
    }
    let bad = |msg: String| Err(Error::InvalidJob(msg));
    let q = job.field.order() as usize;
    if job.n > q {
        return bad(format!("n = {} exceeds the field size {q}", job.n));
    }
    if job.k <= 3 {
        return bad(format!("k = {} must exceed 3", job.k));
    }
    if job.k >= job.n {
        return bad(format!("k = {} must be less than n = {}", job.k, job.n));
    }
    if job.goal == Criterion::SelfDual && job.n + 3 != 2 * job.k {
        return bad(format!("self-dual goal needs n + 3 = 2k, got n = {}, k = {}", job.n, job.k));
    }
    match &job.family {
        Family::SelfDualSolver if job.goal != Criterion::SelfDual => {
            bad("the self-dual solver family only serves the self-dual goal".into())
        }
        Family::Cor33 { mu, delta, tau } => {
            if mu.is_empty() || delta.is_empty() || tau.is_empty() {
                return bad("cor33 parameter lists must be nonempty".into());
            }
            if mu.iter().chain(delta).chain(tau).any(|&x| !job.field.contains(x)) {
                return bad("cor33 parameter outside the field".into());
            }
            Ok(())
        }
        Family::Gl3Sample { count: 0, .. } => bad("sample count must be positive".into()),
        _ => Ok(()),
    }
}

/// Draws `count` invertible `3 x 3` matrices, rejecting singular draws.
pub fn sample_gl3(field: &Field, count: usize, seed: u64) -> Vec<Mat> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = field.order();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let data = (0..9).map(|_| Fe::from_code(rng.gen_range(0..q))).collect();
        let a = Mat::new(field, 3, 3, data).expect("3x3");
        if !a.det().expect("square").is_zero() {
            out.push(a);
        }
    }
    out
}

/// Mixing matrices of a family in canonical order; empty for the solver.
fn family_matrices(field: &Field, family: &Family) -> Vec<Mat> {
    match family {
        Family::Cor33 { mu, delta, tau } => {
            let sorted = |v: &Vec<Fe>| v.iter().copied().sorted().dedup().collect_vec();
            let (mu, delta, tau) = (sorted(mu), sorted(delta), sorted(tau));
            mu.iter()
                .cartesian_product(&delta)
                .cartesian_product(&tau)
                .map(|((&m, &d), &t)| special_a(field, m, d, t, Layout::Cor33))
                .collect()
        }
        Family::SelfDualSolver => Vec::new(),
        Family::Gl3Sample { count, seed } => sample_gl3(field, *count, *seed),
    }
}

/// Column multipliers making `v_i^2 = lambda u_i` with `lambda` read off
/// entry (1,3) of `A A^T = lambda M`.
fn self_dual_scaling(field: &Field, alpha: &[Fe], a: &Mat) -> Option<Vec<Fe>> {
    let gram = a.matmul(&a.transpose()).ok()?;
    let lambda = field.neg(gram.get(0, 2));
    if lambda.is_zero() {
        return None;
    }
    let u = ui_coefficients(field, alpha).ok()?.u;
    u.iter()
        .map(|&ui| field.sqrt(field.mul(lambda, ui)).first().copied())
        .collect()
}

fn evaluate(job: &SearchJob, candidate: u64, alpha: &[Fe], a: Option<&Mat>) -> Result<Option<SearchHit>> {
    let f = &job.field;
    let spec = match (a, job.goal) {
        (None, _) => match solve_self_dual_special(f, alpha) {
            Ok(sol) => sol.spec(f)?,
            Err(_) => return Ok(None),
        },
        (Some(a), Criterion::SelfDual) => match self_dual_scaling(f, alpha, a) {
            Some(v) => GrlSpec::new(f, alpha.to_vec(), v, a.clone(), job.k)?,
            None => return Ok(None),
        },
        (Some(a), _) => GrlSpec::unscaled(f, alpha.to_vec(), a.clone(), job.k)?,
    };
    let (report, lambda) = match job.goal {
        Criterion::Mds => (check_mds_thm(&spec)?, None),
        Criterion::AmdsDual => (check_amds_dual_thm(&spec)?, None),
        Criterion::SelfDual => {
            let c = check_self_dual_thm(&spec)?;
            (c.report, c.lambda)
        }
    };
    if !report.holds {
        return Ok(None);
    }
    let validated = if job.validate {
        let cv = cross_validate(&spec, job.budget)?;
        Some(match job.goal {
            Criterion::Mds => cv.oracle.mds,
            Criterion::AmdsDual => cv.oracle.amds_dual,
            Criterion::SelfDual => cv.oracle.self_dual,
        } == Some(true))
    } else {
        None
    };
    Ok(Some(SearchHit {
        candidate,
        spec,
        report,
        lambda,
        validated,
    }))
}

pub fn run_search(job: &SearchJob) -> Result<SearchOutcome> {
    validate_job(job)?;
    let f = &job.field;
    let matrices = family_matrices(f, &job.family);
    let per_set = matrices.len().max(1) as u64;
    let elements: Vec<Fe> = f.elements().collect();
    let limit = job.max_candidates.unwrap_or(u64::MAX);

    const CHUNK: usize = 1024;
    let mut hits = Vec::new();
    let mut examined = 0u64;
    let candidates = elements.iter().copied().combinations(job.n).flat_map(|alpha| {
        (0..per_set).map(move |j| (alpha.clone(), j as usize))
    });
    for chunk in &candidates.enumerate().take(limit.min(usize::MAX as u64) as usize).chunks(CHUNK) {
        let chunk: Vec<(usize, (Vec<Fe>, usize))> = chunk.collect();
        let results: Vec<Option<SearchHit>> = chunk
            .par_iter()
            .map(|(idx, (alpha, j))| evaluate(job, *idx as u64, alpha, matrices.get(*j)))
            .collect::<Result<_>>()?;
        for (pos, hit) in results.into_iter().enumerate() {
            if let Some(hit) = hit {
                hits.push(hit);
                if Some(hits.len()) == job.max_hits {
                    return Ok(SearchOutcome {
                        hits,
                        candidates_examined: examined + pos as u64 + 1,
                        stop: StopReason::MaxHits,
                    });
                }
            }
        }
        examined += chunk.len() as u64;
    }
    let total = binomial(f.order() as u64, job.n as u64).saturating_mul(per_set as u128);
    let exhausted = examined as u128 >= total;
    Ok(SearchOutcome {
        hits,
        candidates_examined: examined,
        stop: if exhausted { StopReason::Exhausted } else { StopReason::MaxCandidates },
    })
}
