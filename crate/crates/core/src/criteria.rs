//! Closed-form decision procedures for GRL codes with a `3 x 3` mixing
//! matrix, stated over subsets of the evaluation points.
//!
//! Every procedure returns a [`ConditionReport`] listing each violated (or,
//! for existential conditions, each witnessing) subset together with the
//! evaluated sides of the relation, so a failure can be read off directly.
//! Column numbers of `A` in reports are 1-based.

use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::{Classification, CodeClass, NonGrsWitness};
use crate::error::{Error, Result};
use crate::gf::{Fe, Field};
use crate::grl::{m_matrix, special_a, ui_coefficients, GrlSpec, Layout, SymSums};
use crate::matrix::{has_duplicates, Mat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    Mds,
    AmdsDual,
    SelfDual,
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Criterion::Mds => "mds",
            Criterion::AmdsDual => "amds-dual",
            Criterion::SelfDual => "self-dual",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantifier {
    /// Must hold for every subset; findings are violations.
    All,
    /// Needs one subset; findings are witnesses.
    Exists,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionStatus {
    pub id: String,
    pub quantifier: Quantifier,
    pub satisfied: bool,
    pub description: String,
}

/// One subset on which a relation was evaluated and found notable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub condition: String,
    /// The subset `J` or `I` of evaluation points, empty when the relation
    /// involves none.
    pub subset: Vec<Fe>,
    /// Column numbers of `A` (`s`, or `t` and `s`), or a coordinate / matrix
    /// entry for the self-dual relations.
    pub index: Vec<usize>,
    /// `(lhs, rhs)` for every relation involved.
    pub sides: Vec<(Fe, Fe)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub criterion: Criterion,
    pub holds: bool,
    pub conditions: Vec<ConditionStatus>,
    pub findings: Vec<Finding>,
    pub notes: Vec<String>,
}

impl ConditionReport {
    pub fn condition(&self, id: &str) -> Option<&ConditionStatus> {
        self.conditions.iter().find(|c| c.id == id)
    }

    pub fn findings_for<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a Finding> + 'a {
        self.findings.iter().filter(move |f| f.condition == id)
    }

    fn assemble(criterion: Criterion, conditions: Vec<ConditionStatus>, findings: Vec<Finding>) -> Self {
        ConditionReport {
            criterion,
            holds: conditions.iter().all(|c| c.satisfied),
            conditions,
            findings,
            notes: Vec::new(),
        }
    }
}

fn status(id: &str, quantifier: Quantifier, findings: &[Finding], description: &str) -> ConditionStatus {
    let any = findings.iter().any(|f| f.condition == id);
    ConditionStatus {
        id: id.to_string(),
        quantifier,
        satisfied: match quantifier {
            Quantifier::All => !any,
            Quantifier::Exists => any,
        },
        description: description.to_string(),
    }
}

fn require_shape(spec: &GrlSpec) -> Result<()> {
    if spec.l() != 3 {
        return Err(Error::WrongMixingSize(spec.l()));
    }
    if spec.k() <= 3 {
        return Err(Error::KTooSmall(spec.k()));
    }
    Ok(())
}

/// 1-based view of the mixing matrix.
struct Mix<'a>(&'a Mat);

impl Mix<'_> {
    fn at(&self, i: usize, j: usize) -> Fe {
        self.0.get(i - 1, j - 1)
    }
}

/// Column pairs `(t, s)` with `t < s`.
const PAIRS: [(usize, usize); 3] = [(1, 2), (1, 3), (2, 3)];

/// `(a_1s e2 + a_3s, a_2s e1)`.
fn single_sides(f: &Field, a: &Mix, s: usize, sums: &SymSums) -> (Fe, Fe) {
    (
        f.add(f.mul(a.at(1, s), sums.e2), a.at(3, s)),
        f.mul(a.at(2, s), sums.e1),
    )
}

/// `((a_2s a_1t - a_1s a_2t) P, (a_3s a_1t - a_1s a_3t) e1 + a_2s a_3t - a_3s a_2t)`.
fn pair_sides(f: &Field, a: &Mix, t: usize, s: usize, sums: &SymSums) -> (Fe, Fe) {
    let m = |x: Fe, y: Fe| f.mul(x, y);
    let lead = f.sub(m(a.at(2, s), a.at(1, t)), m(a.at(1, s), a.at(2, t)));
    let lin = f.sub(m(a.at(3, s), a.at(1, t)), m(a.at(1, s), a.at(3, t)));
    let cst = f.sub(m(a.at(2, s), a.at(3, t)), m(a.at(3, s), a.at(2, t)));
    (m(lead, sums.sq_plus_e2), f.add(m(lin, sums.e1), cst))
}

/// Runs `eval` on every `size`-subset of `points` and concatenates the
/// findings in lexicographic index order of the subsets.
fn scan_subsets<F>(field: &Field, points: &[Fe], size: usize, eval: F) -> Vec<Finding>
where
    F: Fn(&[Fe], &SymSums) -> Vec<Finding> + Sync,
{
    const CHUNK: usize = 4096;
    let mut out = Vec::new();
    for chunk in &(0..points.len()).combinations(size).chunks(CHUNK) {
        let chunk: Vec<Vec<usize>> = chunk.collect();
        let found: Vec<Vec<Finding>> = chunk
            .par_iter()
            .map(|idx| {
                let subset: Vec<Fe> = idx.iter().map(|&i| points[i]).collect();
                let sums = SymSums::of_distinct(field, &subset);
                eval(&subset, &sums)
            })
            .collect();
        out.extend(found.into_iter().flatten());
    }
    out
}

fn finding(condition: &str, subset: &[Fe], index: Vec<usize>, sides: Vec<(Fe, Fe)>) -> Finding {
    Finding {
        condition: condition.to_string(),
        subset: subset.to_vec(),
        index,
        sides,
    }
}

/// Findings for the single-column relation `a_1s e2(J) + a_3s = a_2s e1(J)`
/// over `(k-1)`-subsets `J`, tagged `tag`: equalities, which are violations
/// of the MDS condition and witnesses for the dual-AMDS one.
fn single_equalities(spec: &GrlSpec, tag: &str) -> Vec<Finding> {
    let f = spec.field();
    let a = Mix(spec.mixing());
    scan_subsets(f, spec.alpha(), spec.k() - 1, |subset, sums| {
        (1..=3)
            .filter_map(|s| {
                let (lhs, rhs) = single_sides(f, &a, s, sums);
                (lhs == rhs).then(|| finding(tag, subset, vec![s], vec![(lhs, rhs)]))
            })
            .collect()
    })
}

/// As [`single_equalities`] for the column-pair relation over
/// `(k-2)`-subsets `I`.
fn pair_equalities(spec: &GrlSpec, tag: &str) -> Vec<Finding> {
    let f = spec.field();
    let a = Mix(spec.mixing());
    scan_subsets(f, spec.alpha(), spec.k() - 2, |subset, sums| {
        PAIRS
            .iter()
            .filter_map(|&(t, s)| {
                let (lhs, rhs) = pair_sides(f, &a, t, s, sums);
                (lhs == rhs).then(|| finding(tag, subset, vec![t, s], vec![(lhs, rhs)]))
            })
            .collect()
    })
}

/// Decides whether the GRL code is MDS.
///
/// Condition 1: for every `(k-1)`-subset `J` and `s = 1..3`,
/// `a_1s e2(J) + a_3s != a_2s e1(J)`.
/// Condition 2: for every `(k-2)`-subset `I` and `t < s`,
/// `(a_2s a_1t - a_1s a_2t) P(I) != (a_3s a_1t - a_1s a_3t) e1(I) + a_2s a_3t - a_3s a_2t`
/// with `P = sum x^2 + e2`.
pub fn check_mds_thm(spec: &GrlSpec) -> Result<ConditionReport> {
    require_shape(spec)?;
    let mut findings = single_equalities(spec, "1");
    findings.extend(pair_equalities(spec, "2"));
    let conditions = vec![
        status("1", Quantifier::All, &findings, "a1s*e2(J) + a3s != a2s*e1(J) for every (k-1)-subset J and every s"),
        status("2", Quantifier::All, &findings, "column-pair relation over P(I), e1(I) fails for every (k-2)-subset I and every t < s"),
    ];
    Ok(ConditionReport::assemble(Criterion::Mds, conditions, findings))
}

/// Decides whether the dual of the GRL code is AMDS (dual distance `k`).
///
/// Conditions 1 to 4 are universal. The existential clause needs a witness
/// for condition 5 or condition 6; the report keeps both lists and exposes
/// the disjunction as condition `5|6`.
pub fn check_amds_dual_thm(spec: &GrlSpec) -> Result<ConditionReport> {
    require_shape(spec)?;
    let f = spec.field();
    let a = Mix(spec.mixing());

    let mut findings = scan_subsets(f, spec.alpha(), spec.k() - 2, |subset, sums| {
        (1..=3)
            .filter_map(|r| {
                let sides = vec![
                    (a.at(2, r), f.mul(a.at(1, r), sums.e1)),
                    (a.at(3, r), f.mul(a.at(1, r), sums.sq_plus_e2)),
                    (f.mul(a.at(3, r), sums.e1), f.mul(a.at(2, r), sums.sq_plus_e2)),
                ];
                sides
                    .iter()
                    .all(|(l, r)| l == r)
                    .then(|| finding("1", subset, vec![r], sides))
            })
            .collect()
    });

    // one condition per column pair: some 2x2 minor of the two columns is nonzero
    for (id, (c1, c2)) in ["2", "3", "4"].into_iter().zip(PAIRS) {
        let minors: Vec<(Fe, Fe)> = PAIRS
            .iter()
            .map(|&(r1, r2)| {
                let det = f.sub(
                    f.mul(a.at(r1, c1), a.at(r2, c2)),
                    f.mul(a.at(r1, c2), a.at(r2, c1)),
                );
                (det, Fe::ZERO)
            })
            .collect();
        if minors.iter().all(|(d, _)| d.is_zero()) {
            findings.push(finding(id, &[], vec![c1, c2], minors));
        }
    }

    findings.extend(single_equalities(spec, "5"));
    findings.extend(pair_equalities(spec, "6"));

    let has5 = findings.iter().any(|x| x.condition == "5");
    let has6 = findings.iter().any(|x| x.condition == "6");
    let conditions = vec![
        status("1", Quantifier::All, &findings, "for every (k-2)-subset I and every r, one of a2r != a1r*e1(I), a3r != a1r*P(I), a3r*e1(I) != a2r*P(I)"),
        status("2", Quantifier::All, &findings, "columns 1 and 2 of A have a nonzero 2x2 minor"),
        status("3", Quantifier::All, &findings, "columns 1 and 3 of A have a nonzero 2x2 minor"),
        status("4", Quantifier::All, &findings, "columns 2 and 3 of A have a nonzero 2x2 minor"),
        ConditionStatus {
            id: "5|6".into(),
            quantifier: Quantifier::Exists,
            satisfied: has5 || has6,
            description: "some (k-1)-subset J gives a1s*e2(J) + a3s = a2s*e1(J), or some (k-2)-subset I gives equality in the column-pair relation".into(),
        },
    ];
    let mut report = ConditionReport::assemble(Criterion::AmdsDual, conditions, findings);
    report.notes.push(format!(
        "condition 5 {}, condition 6 {}",
        if has5 { "has witnesses" } else { "has no witness" },
        if has6 { "has witnesses" } else { "has no witness" },
    ));
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfDualCheck {
    pub holds: bool,
    /// The common ratio `v_i^2 / u_i`, present when the code is self-dual.
    pub lambda: Option<Fe>,
    pub report: ConditionReport,
}

/// Decides self-duality for `n + 3 = 2k`.
///
/// With `lambda = v_1^2 / u_1`, the code is self-dual iff `v_i^2 = lambda u_i`
/// for every `i` and `A A^T = lambda M`, where `M` is [`m_matrix`].
pub fn check_self_dual_thm(spec: &GrlSpec) -> Result<SelfDualCheck> {
    if spec.l() != 3 {
        return Err(Error::WrongMixingSize(spec.l()));
    }
    let (n, k) = (spec.n(), spec.k());
    if n + 3 != 2 * k {
        return Err(Error::LengthParity { n, k });
    }
    if k <= 3 {
        return Err(Error::KTooSmall(k));
    }
    let f = spec.field();
    let u = ui_coefficients(f, spec.alpha())?.u;
    let v = spec.v();
    let lambda = f.div(f.mul(v[0], v[0]), u[0])?;

    let mut findings = Vec::new();
    for i in 0..n {
        let (lhs, rhs) = (f.mul(v[i], v[i]), f.mul(lambda, u[i]));
        if lhs != rhs {
            findings.push(finding("1", &[], vec![i + 1], vec![(lhs, rhs)]));
        }
    }
    let a = spec.mixing();
    let gram = a.matmul(&a.transpose())?;
    let target = m_matrix(f, spec.alpha())?.scale(lambda);
    for i in 0..3 {
        for j in i..3 {
            let (lhs, rhs) = (gram.get(i, j), target.get(i, j));
            if lhs != rhs {
                findings.push(finding("2", &[], vec![i + 1, j + 1], vec![(lhs, rhs)]));
            }
        }
    }
    let conditions = vec![
        status("1", Quantifier::All, &findings, "v_i^2 = lambda*u_i for every i, lambda = v_1^2/u_1"),
        status("2", Quantifier::All, &findings, "A*A^T = lambda*M"),
    ];
    let mut report = ConditionReport::assemble(Criterion::SelfDual, conditions, findings);
    report.notes.push(format!("lambda = {}", f.format(lambda)));
    Ok(SelfDualCheck {
        holds: report.holds,
        lambda: report.holds.then_some(lambda),
        report,
    })
}

/// A self-dual GRL code with the [`Layout::SelfDual`] mixing matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfDualSolution {
    pub alpha: Vec<Fe>,
    pub k: usize,
    pub lambda: Fe,
    pub mu: Fe,
    pub delta: Fe,
    pub tau: Fe,
    pub v: Vec<Fe>,
}

impl SelfDualSolution {
    pub fn mixing(&self, field: &Field) -> Mat {
        special_a(field, self.mu, self.delta, self.tau, Layout::SelfDual)
    }

    pub fn spec(&self, field: &Field) -> Result<GrlSpec> {
        GrlSpec::new(field, self.alpha.clone(), self.v.clone(), self.mixing(field), self.k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "stage")]
pub enum SolveFailure {
    /// `n + 3` is odd or gives `k <= 3`.
    Length { n: usize },
    DuplicatePoints,
    /// `P(alpha) = 0`, so `1 = -lambda P` has no solution.
    DegenerateSum,
    /// One of the two remaining entry constraints fails.
    Consistency { relation: String, lhs: Fe, rhs: Fe },
    /// `lambda u_i` has no square root (coordinate is 1-based).
    NonSquare { coordinate: usize, value: Fe },
}

impl fmt::Display for SolveFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveFailure::Length { n } => write!(f, "length: n = {n} does not give an integral k > 3 with n + 3 = 2k"),
            SolveFailure::DuplicatePoints => f.write_str("evaluation points are not distinct"),
            SolveFailure::DegenerateSum => f.write_str("sum of squares plus e2 vanishes; no lambda"),
            SolveFailure::Consistency { relation, lhs, rhs } => {
                write!(f, "consistency: {relation} fails (lhs {}, rhs {})", lhs.code(), rhs.code())
            }
            SolveFailure::NonSquare { coordinate, value } => {
                write!(f, "non-square: lambda*u_{coordinate} = {} has no square root", value.code())
            }
        }
    }
}

/// Solves `A A^T = lambda M` entrywise for the self-dual layout
/// `[[mu, tau, 1], [delta, 1, 0], [1, 0, 0]]`, then `v_i^2 = lambda u_i`.
///
/// Entry (3,3) gives `lambda = -1/P`, (1,3) gives `mu = -lambda`, (2,3)
/// gives `delta = -lambda e1` and (1,2) gives `tau = -mu delta`; entries
/// (2,2) and (1,1) must then agree. Each `v_i` is the square root with the
/// smaller code.
pub fn solve_self_dual_special(
    field: &Field,
    alpha: &[Fe],
) -> std::result::Result<SelfDualSolution, SolveFailure> {
    let f = field;
    let n = alpha.len();
    if !(n + 3).is_multiple_of(2) || (n + 3) / 2 <= 3 {
        return Err(SolveFailure::Length { n });
    }
    if has_duplicates(alpha) {
        return Err(SolveFailure::DuplicatePoints);
    }
    let sums = SymSums::of_distinct(f, alpha);
    let inv = f.inv(sums.sq_plus_e2).map_err(|_| SolveFailure::DegenerateSum)?;
    let lambda = f.neg(inv);
    let mu = f.neg(lambda);
    let delta = f.neg(f.mul(lambda, sums.e1));
    let tau = f.neg(f.mul(mu, delta));

    let lhs = f.add(f.mul(delta, delta), Fe::ONE);
    if lhs != mu {
        return Err(SolveFailure::Consistency {
            relation: "delta^2 + 1 = -lambda".into(),
            lhs,
            rhs: mu,
        });
    }
    let lhs = f.add(f.add(f.mul(mu, mu), f.mul(tau, tau)), Fe::ONE);
    if !lhs.is_zero() {
        return Err(SolveFailure::Consistency {
            relation: "mu^2 + tau^2 + 1 = 0".into(),
            lhs,
            rhs: Fe::ZERO,
        });
    }

    let u = ui_coefficients(f, alpha).expect("distinct points, n >= 5").u;
    let v = u
        .iter()
        .enumerate()
        .map(|(i, &ui)| {
            let value = f.mul(lambda, ui);
            f.sqrt(value)
                .first()
                .copied()
                .ok_or(SolveFailure::NonSquare { coordinate: i + 1, value })
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(SelfDualSolution {
        alpha: alpha.to_vec(),
        k: (n + 3) / 2,
        lambda,
        mu,
        delta,
        tau,
        v,
    })
}

/// Verdicts for the three properties; `None` where not evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub mds: Option<bool>,
    pub amds_dual: Option<bool>,
    pub self_dual: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossValidation {
    /// From the closed-form conditions, where they apply.
    pub criteria: Verdicts,
    /// From enumeration and column-subset ranks.
    pub oracle: Verdicts,
    pub classification: Classification,
    pub dual_distance: Option<usize>,
    pub non_grs: NonGrsWitness,
    pub agree: bool,
}

/// Runs every applicable decision procedure alongside the exhaustive
/// oracles and compares them.
pub fn cross_validate(spec: &GrlSpec, budget: u64) -> Result<CrossValidation> {
    let code = spec.code();
    let classification = code.classify(budget)?;
    let dual_distance = code.min_dependent_columns();
    let oracle = Verdicts {
        mds: Some(classification.class == CodeClass::Mds),
        amds_dual: Some(dual_distance == Some(spec.k())),
        self_dual: Some(code.is_self_dual()),
    };
    let mut criteria = Verdicts::default();
    if spec.l() == 3 && spec.k() > 3 {
        criteria.mds = Some(check_mds_thm(spec)?.holds);
        criteria.amds_dual = Some(check_amds_dual_thm(spec)?.holds);
        if spec.n() + 3 == 2 * spec.k() {
            criteria.self_dual = Some(check_self_dual_thm(spec)?.holds);
        }
    }
    let same = |c: Option<bool>, o: Option<bool>| c.is_none() || c == o;
    let agree = same(criteria.mds, oracle.mds)
        && same(criteria.amds_dual, oracle.amds_dual)
        && same(criteria.self_dual, oracle.self_dual);
    Ok(CrossValidation {
        criteria,
        oracle,
        classification,
        dual_distance,
        non_grs: code.non_grs_witness(),
        agree,
    })
}
