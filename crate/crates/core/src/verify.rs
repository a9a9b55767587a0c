//! The verification harness: run property suites over a population of codes.
//!
//! The population is either every L-subspace of `L^n` for `n <= max_n`
//! (finite towers only) or a seeded random sample. Codes are checked in
//! parallel and results are merged in population order, so a summary depends
//! only on the plan, never on the worker count.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::document::{describe_tower, AnyTower, CodeDocument, TowerDoc};
use crate::error::{Error, Result};
use crate::field::{BaseField, ExtensionTower, Field};
use crate::linalg::{self, gaussian_binomial};
use crate::report::{to_json, Format};
use crate::support::{self, LinearCode};
use crate::weights;
use crate::witness::{self, Strategy, DEFAULT_HEIGHT};

pub const WORKERS_ENV: &str = "RANKWEIGHT_WORKERS";
/// Largest `|L|` and `n` accepted for exhaustive runs without `force`.
pub const MAX_FIELD_SIZE: u64 = 9;
pub const MAX_LENGTH: usize = 4;
/// Groups up to this size check the sum rule on every pair; larger groups
/// draw [`SUM_PARTNERS`] partners per code.
pub const ALL_PAIRS_LIMIT: usize = 64;
pub const SUM_PARTNERS: usize = 4;
/// Dimension cap for random codes over an infinite base.
pub const INFINITE_DIM_CAP: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    Basics,
    Equivdef,
    Witness,
    Delsarte,
    Closure,
    Trace,
    All,
}

impl Theorem {
    pub const SUITES: [Theorem; 6] = [
        Theorem::Basics,
        Theorem::Equivdef,
        Theorem::Witness,
        Theorem::Delsarte,
        Theorem::Closure,
        Theorem::Trace,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::Basics => "basics",
            Theorem::Equivdef => "equivdef",
            Theorem::Witness => "witness",
            Theorem::Delsarte => "delsarte",
            Theorem::Closure => "closure",
            Theorem::Trace => "trace",
            Theorem::All => "all",
        }
    }

    /// Suites that need enumeration inside the code and so a finite base.
    fn needs_finite(self) -> bool {
        matches!(self, Theorem::Equivdef)
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Theorem::SUITES
            .iter()
            .chain([Theorem::All].iter())
            .copied()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::parse("theorem", format!("unknown theorem `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeSource {
    Exhaustive,
    Random { count: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyPlan {
    pub towers: Vec<TowerDoc>,
    pub max_n: usize,
    pub theorems: Vec<Theorem>,
    pub source: CodeSource,
    /// Lift the resource guards on exhaustive runs.
    pub force: bool,
    /// Worker count; `None` reads [`WORKERS_ENV`], then available parallelism.
    pub workers: Option<usize>,
}

impl VerifyPlan {
    fn suites(&self) -> BTreeSet<Theorem> {
        if self.theorems.is_empty() || self.theorems.contains(&Theorem::All) {
            Theorem::SUITES.into_iter().collect()
        } else {
            self.theorems.iter().copied().collect()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub theorem: String,
    pub property: String,
    pub detail: String,
    /// Reproduces the failure through `parse_code_file`.
    pub document: CodeDocument,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub n: usize,
    pub codes: u128,
    pub expected: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skipped {
    pub theorem: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerSummary {
    pub tower: String,
    pub codes_checked: usize,
    pub assertions: u64,
    pub census: Vec<CensusEntry>,
    pub skipped: Vec<Skipped>,
    /// First failure of each property, in population order.
    pub failures: Vec<Failure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub passed: bool,
    pub codes_checked: usize,
    pub assertions: u64,
    pub towers: Vec<TowerSummary>,
}

impl VerifySummary {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => to_json(self),
            Format::Text => {
                let mut s = String::new();
                for t in &self.towers {
                    let _ = writeln!(s, "{}", t.tower);
                    let _ = writeln!(s, "  codes checked  {}", t.codes_checked);
                    let _ = writeln!(s, "  assertions     {}", t.assertions);
                    for c in &t.census {
                        let _ = writeln!(
                            s,
                            "  census n={}     {} (expected {})",
                            c.n, c.codes, c.expected
                        );
                    }
                    for k in &t.skipped {
                        let _ = writeln!(s, "  skipped        {}: {}", k.theorem, k.reason);
                    }
                    for f in &t.failures {
                        let _ = writeln!(s, "  FAIL {}/{}: {}", f.theorem, f.property, f.detail);
                        let _ = writeln!(
                            s,
                            "    {}",
                            serde_json::to_string(&f.document).expect("documents serialize")
                        );
                    }
                }
                let _ = writeln!(
                    s,
                    "{}: {} codes, {} assertions",
                    if self.passed { "PASS" } else { "FAIL" },
                    self.codes_checked,
                    self.assertions
                );
                s
            }
        }
    }
}

pub fn default_workers() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&w| w > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Run every selected suite over the plan's population.
///
/// Returns [`Error::Inapplicable`] for plans that cannot run as stated: an
/// exhaustive source over an infinite base, a guard violation without
/// `force`, or a tower on which no selected suite applies.
pub fn run_verify(plan: &VerifyPlan) -> Result<VerifySummary> {
    if plan.max_n == 0 {
        return Err(Error::Inapplicable("max_n must be at least 1".into()));
    }
    let towers = plan
        .towers
        .iter()
        .map(TowerDoc::build)
        .collect::<Result<Vec<_>>>()?;
    for t in &towers {
        check_guards(plan, t)?;
    }
    let workers = plan.workers.unwrap_or_else(default_workers).max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Unsupported(e.to_string()))?;
    let mut summaries = Vec::with_capacity(towers.len());
    for (i, t) in towers.iter().enumerate() {
        let summary = match t {
            AnyTower::Finite(t) => pool.install(|| verify_tower(plan, t, i as u64))?,
            AnyTower::Rational(t) => pool.install(|| verify_tower(plan, t, i as u64))?,
        };
        summaries.push(summary);
    }
    Ok(VerifySummary {
        passed: summaries.iter().all(|t| t.failures.is_empty()),
        codes_checked: summaries.iter().map(|t| t.codes_checked).sum(),
        assertions: summaries.iter().map(|t| t.assertions).sum(),
        towers: summaries,
    })
}

fn check_guards(plan: &VerifyPlan, tower: &AnyTower) -> Result<()> {
    let (name, size) = match tower {
        AnyTower::Finite(t) => (describe_tower(t), t.size()),
        AnyTower::Rational(t) => (describe_tower(t), None),
    };
    let suites = plan.suites();
    if size.is_none() && suites.iter().all(|t| t.needs_finite()) {
        return Err(Error::Inapplicable(format!(
            "no selected suite applies over the infinite base of {name}"
        )));
    }
    if plan.source != CodeSource::Exhaustive {
        return Ok(());
    }
    let Some(size) = size else {
        return Err(Error::Inapplicable(format!(
            "exhaustive enumeration over the infinite base of {name}"
        )));
    };
    if !plan.force && (size > MAX_FIELD_SIZE || plan.max_n > MAX_LENGTH) {
        return Err(Error::Inapplicable(format!(
            "exhaustive run over {name} with n <= {} exceeds the resource guard (|L| <= {MAX_FIELD_SIZE}, n <= {MAX_LENGTH}); pass force to override",
            plan.max_n
        )));
    }
    Ok(())
}

/// Codes grouped by length, in population order.
fn population<F: BaseField>(
    plan: &VerifyPlan,
    tower: &Arc<ExtensionTower<F>>,
    tower_index: u64,
) -> Result<Vec<Vec<LinearCode<F>>>> {
    let mut groups: Vec<Vec<LinearCode<F>>> = vec![Vec::new(); plan.max_n];
    match plan.source {
        CodeSource::Exhaustive => {
            for (n, group) in (1..=plan.max_n).zip(groups.iter_mut()) {
                for s in linalg::enumerate_all_subspaces(&**tower, n)? {
                    group.push(LinearCode::from_subspace(tower.clone(), s));
                }
            }
        }
        CodeSource::Random { count, seed } => {
            for i in 0..count {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream((tower_index << 32) | i as u64);
                let n = rng.random_range(1..=plan.max_n);
                let cap = if tower.is_finite() {
                    n
                } else {
                    n.min(INFINITE_DIM_CAP)
                };
                let dim = rng.random_range(0..=cap);
                let rows = (0..dim)
                    .map(|_| {
                        (0..n)
                            .map(|_| tower.random(&mut rng, DEFAULT_HEIGHT))
                            .collect()
                    })
                    .collect();
                groups[n - 1].push(LinearCode::new(tower.clone(), n, rows)?);
            }
        }
    }
    Ok(groups)
}

fn verify_tower<F: BaseField>(
    plan: &VerifyPlan,
    tower: &Arc<ExtensionTower<F>>,
    tower_index: u64,
) -> Result<TowerSummary> {
    let name = describe_tower(tower);
    let mut suites = plan.suites();
    let mut skipped = Vec::new();
    if !tower.is_finite() {
        suites.retain(|t| {
            if t.needs_finite() {
                skipped.push(Skipped {
                    theorem: t.name().into(),
                    reason: "requires enumeration over a finite base field".into(),
                });
            }
            !t.needs_finite()
        });
    }
    if suites.contains(&Theorem::Trace) && !tower.is_separable() {
        suites.remove(&Theorem::Trace);
        skipped.push(Skipped {
            theorem: Theorem::Trace.name().into(),
            reason: "the tower is inseparable".into(),
        });
    }

    let groups = population(plan, tower, tower_index)?;
    let mut census = Vec::new();
    let mut failures: Vec<Failure> = Vec::new();
    if plan.source == CodeSource::Exhaustive {
        let q = tower.size().expect("exhaustive towers are finite");
        for (n, group) in (1..=plan.max_n).zip(&groups) {
            let expected = (0..=n).map(|r| gaussian_binomial(n, r, q)).sum();
            let codes = group.len() as u128;
            if codes != expected {
                failures.push(Failure {
                    theorem: Theorem::Basics.name().into(),
                    property: "census".into(),
                    detail: format!("n={n}: enumerated {codes} codes, expected {expected}"),
                    document: CodeDocument::from_code(&LinearCode::zero(tower.clone(), n)),
                });
            }
            census.push(CensusEntry { n, codes, expected });
        }
    }

    let seed = match plan.source {
        CodeSource::Random { seed, .. } => seed,
        CodeSource::Exhaustive => 0,
    };
    let jobs: Vec<(usize, usize)> = groups
        .iter()
        .enumerate()
        .flat_map(|(g, group)| (0..group.len()).map(move |i| (g, i)))
        .collect();
    let outcomes: Vec<Result<Outcome>> = jobs
        .par_iter()
        .enumerate()
        .map(|(index, &(g, i))| {
            let partners = partners(&groups[g], seed, tower_index, index as u64);
            check_code(&suites, &groups[g][i], &partners)
        })
        .collect();

    let mut assertions = 0;
    for (outcome, &(g, i)) in outcomes.into_iter().zip(&jobs) {
        let outcome = outcome?;
        assertions += outcome.assertions;
        for (theorem, property, detail) in outcome.failures {
            if failures.iter().any(|f| f.property == property) {
                continue;
            }
            failures.push(Failure {
                theorem: theorem.name().into(),
                property: property.into(),
                detail,
                document: CodeDocument::from_code(&groups[g][i]),
            });
        }
    }
    Ok(TowerSummary {
        tower: name,
        codes_checked: jobs.len(),
        assertions,
        census,
        skipped,
        failures,
    })
}

fn partners<F: Field>(
    group: &[LinearCode<F>],
    seed: u64,
    tower_index: u64,
    index: u64,
) -> Vec<&LinearCode<F>> {
    if group.len() <= ALL_PAIRS_LIMIT {
        return group.iter().collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x005e_ed0f_9a17);
    rng.set_stream((tower_index << 32) | index);
    sample(&mut rng, group.len(), SUM_PARTNERS)
        .into_iter()
        .map(|j| &group[j])
        .collect()
}

#[derive(Default)]
struct Outcome {
    assertions: u64,
    failures: Vec<(Theorem, &'static str, String)>,
}

impl Outcome {
    fn check(
        &mut self,
        theorem: Theorem,
        property: &'static str,
        ok: bool,
        detail: impl FnOnce() -> String,
    ) {
        self.assertions += 1;
        if !ok {
            self.failures.push((theorem, property, detail()));
        }
    }
}

fn check_code<F: BaseField>(
    suites: &BTreeSet<Theorem>,
    code: &LinearCode<F>,
    partners: &[&LinearCode<F>],
) -> Result<Outcome> {
    let mut out = Outcome::default();
    for &suite in suites {
        match suite {
            Theorem::Basics => check_basics(&mut out, code)?,
            Theorem::Equivdef => check_equivdef(&mut out, code)?,
            Theorem::Witness => check_witness(&mut out, code)?,
            Theorem::Delsarte => check_delsarte(&mut out, code),
            Theorem::Closure => check_closure(&mut out, code, partners)?,
            Theorem::Trace => check_trace(&mut out, code)?,
            Theorem::All => unreachable!("expanded by the plan"),
        }
    }
    Ok(out)
}

fn check_basics<F: BaseField>(out: &mut Outcome, code: &LinearCode<F>) -> Result<()> {
    let t = Theorem::Basics;
    let n = code.length();
    let res = support::restriction(code);
    let direct = support::restriction_direct(code);
    out.check(t, "restriction-paths", res == direct, || {
        format!(
            "dual path gives dim {}, direct path dim {}",
            res.dim(),
            direct.dim()
        )
    });
    let dual = support::dual(code);
    out.check(t, "dual-dimension", dual.dim() + code.dim() == n, || {
        format!("dim C = {}, dim C^perp = {}", code.dim(), dual.dim())
    });
    out.check(t, "double-dual", support::dual(&dual) == *code, || {
        "C^perp^perp != C".into()
    });
    let wt = support::rank_weight_code(code);
    out.check(t, "rank-weight-bounds", code.dim() <= wt && wt <= n, || {
        format!("dim C = {}, wt_R(C) = {wt}, n = {n}", code.dim())
    });
    let extended = support::is_extended(code);
    out.check(
        t,
        "extended-criterion",
        extended == (res.dim() == code.dim()),
        || format!("extended = {extended}, dim Res(C) = {}", res.dim()),
    );
    let by_dual = support::restriction(&dual).dim() > 0;
    out.check(t, "degeneracy-criteria", (wt < n) == by_dual, || {
        format!("wt_R(C) = {wt}, Res(C^perp) nonzero = {by_dual}")
    });
    Ok(())
}

fn check_equivdef<F: BaseField>(out: &mut Outcome, code: &LinearCode<F>) -> Result<()> {
    let t = Theorem::Equivdef;
    let n = code.length();
    let m = code.tower().degree();
    let rows = weights::hierarchy_values(code)?;
    let mut previous = 0;
    for (i, &[drr, mr, osr, dr]) in rows.iter().enumerate() {
        let r = i + 1;
        let cell = || format!("r={r}: dRr={drr} Mr={mr} OSr={osr} Dr={dr}");
        if n <= m {
            out.check(
                t,
                "four-way-equality",
                drr == mr && mr == osr && osr == dr,
                cell,
            );
        }
        out.check(t, "drr-equals-mr", drr == mr, cell);
        out.check(t, "os-le-d-le-drr", osr <= dr && dr <= drr, cell);
        out.check(
            t,
            "drr-bounds",
            r <= drr && drr <= n && previous <= drr,
            || format!("r={r}: dRr={drr}, previous {previous}, n={n}"),
        );
        previous = drr;
    }
    if let Some(&[d1, ..]) = rows.first() {
        let d = weights::rank_distance(code)?;
        out.check(t, "rank-distance", d == d1, || {
            format!("d_R = {d}, dR1 = {d1}")
        });
    }
    Ok(())
}

fn check_witness<F: BaseField>(out: &mut Outcome, code: &LinearCode<F>) -> Result<()> {
    let t = Theorem::Witness;
    let n = code.length();
    let m = code.tower().degree();
    let wt = support::rank_weight_code(code);
    if m >= n {
        let found = witness::find_witness(code, Strategy::Auto);
        let valid = match &found {
            Ok(o) => match &o.witness {
                Some(w) => witness::check_witness(code, w)?.is_valid(),
                None => false,
            },
            Err(Error::SearchExhausted) => false,
            Err(e) => return Err(e.clone()),
        };
        out.check(t, "witness-exists", valid, || match found {
            Ok(o) => format!(
                "m={m} >= n={n}, search ended with {:?} and no valid witness",
                o.source
            ),
            Err(e) => format!("m={m} >= n={n}: {e}"),
        });
    }
    if let Some(c) = witness::constructive_extended(code) {
        let ok = witness::check_witness(code, &c)?.is_valid();
        out.check(t, "constructive-extended", ok, || {
            "strategy (a) witness fails verification".into()
        });
    }
    if !code.tower().is_finite() || code.is_zero() {
        return Ok(());
    }
    let exhaustive = witness::exhaustive_witness(code)?;
    let exists = exhaustive.is_some();
    let maxwt = weights::maxwt(code)?;
    out.check(t, "maxwt-bound", maxwt <= wt, || {
        format!("maxwt = {maxwt} > wt_R = {wt}")
    });
    out.check(t, "maxwt-detects-witness", (maxwt == wt) == exists, || {
        format!("maxwt = {maxwt}, wt_R = {wt}, exhaustive witness found = {exists}")
    });
    if exists {
        let extended = support::is_extended(code);
        out.check(
            t,
            "dimension-necessity",
            wt <= m && (extended || code.dim() < m),
            || {
                format!(
                    "witness with wt_R = {wt}, dim = {}, m = {m}, extended = {extended}",
                    code.dim()
                )
            },
        );
    }
    if m < n && wt == n {
        out.check(t, "nondegenerate-necessity", !exists, || {
            format!("nondegenerate code with m={m} < n={n} has a witness")
        });
    }
    match witness::find_witness(code, Strategy::Constructive) {
        Ok(o) => {
            let ok = match &o.witness {
                Some(w) => witness::check_witness(code, w)?.is_valid() && exists,
                None => !exists,
            };
            out.check(t, "strategy-consistency", ok, || {
                format!(
                    "constructive {:?} disagrees with exhaustive (found = {exists})",
                    o.source
                )
            });
        }
        Err(Error::StrategyInapplicable(_)) => {}
        Err(e) => return Err(e),
    }
    Ok(())
}

fn check_delsarte<F: BaseField>(out: &mut Outcome, code: &LinearCode<F>) {
    let lhs = support::restriction(code).orthogonal_complement();
    let rhs = support::rank_support_code(&support::dual(code));
    out.check(
        Theorem::Delsarte,
        "res-perp-equals-rsupp-dual",
        lhs == rhs,
        || {
            format!(
                "dim Res(C)^perp = {}, dim Rsupp(C^perp) = {}",
                lhs.dim(),
                rhs.dim()
            )
        },
    );
}

fn check_closure<F: BaseField>(
    out: &mut Outcome,
    code: &LinearCode<F>,
    partners: &[&LinearCode<F>],
) -> Result<()> {
    let t = Theorem::Closure;
    let star = support::closure(code);
    let wt = support::rank_weight_code(code);
    out.check(t, "closure-dimension", star.dim() == wt, || {
        format!("dim C* = {}, wt_R(C) = {wt}", star.dim())
    });
    let contains = code.is_subcode_of(&star)?;
    out.check(
        t,
        "closure-extended-superset",
        contains && support::is_extended(&star),
        || "C* is not an extended superset of C".into(),
    );
    if code.tower().is_finite() {
        let oracle = support::closure_oracle(code)?;
        out.check(t, "closure-oracle", oracle == star, || {
            format!("dim C* = {}, oracle dim = {}", star.dim(), oracle.dim())
        });
    }
    for other in partners {
        let lhs = support::closure(&code.sum(other)?);
        let rhs = star.sum(&support::closure(other))?;
        out.check(t, "closure-sum", lhs == rhs, || {
            format!(
                "(C+D)* != C*+D* for D = {}",
                serde_json::to_string(&CodeDocument::from_code(*other))
                    .expect("documents serialize")
            )
        });
    }
    Ok(())
}

fn check_trace<F: BaseField>(out: &mut Outcome, code: &LinearCode<F>) -> Result<()> {
    let image = support::trace_image(code)?;
    let rsupp = support::rank_support_code(code);
    out.check(Theorem::Trace, "trace-identity", image == rsupp, || {
        format!(
            "dim Tr(C) = {}, dim Rsupp(C) = {}",
            image.dim(),
            rsupp.dim()
        )
    });
    Ok(())
}
