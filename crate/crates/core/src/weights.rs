//! Rank distance, maximum rank weight and the four generalized rank weight
//! hierarchies of a code, plus the report that gathers them.
//!
//! Every minimization enumerates subcodes through their coefficient
//! subspaces inside `L^dim(C)`, so the search space depends only on `dim C`.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::enumerate_subspaces;
use crate::support::{
    self, closure, extend_to_l, rank_weight, rank_weight_code, KSubspace, LVector, LinearCode,
};
use crate::witness::{self, Source, Strategy};

fn require_finite<F: Field>(code: &LinearCode<F>) -> Result<()> {
    if code.tower().is_finite() {
        Ok(())
    } else {
        Err(Error::InfiniteField)
    }
}

fn check_r<F: Field>(code: &LinearCode<F>, r: usize) -> Result<()> {
    if r == 0 || r > code.dim() {
        Err(Error::BadR { r, dim: code.dim() })
    } else {
        Ok(())
    }
}

/// Every `r`-dimensional subcode of `C`, each exactly once.
pub fn subcodes<F: Field>(
    code: &LinearCode<F>,
    r: usize,
) -> Result<impl Iterator<Item = LinearCode<F>> + '_> {
    require_finite(code)?;
    let coeff_spaces = enumerate_subspaces(&**code.tower(), code.dim(), r)?;
    Ok(coeff_spaces.map(move |s| code.subcode(s.basis())))
}

/// One nonzero codeword per one-dimensional subcode.
pub fn projective_points<F: Field>(
    code: &LinearCode<F>,
) -> Result<impl Iterator<Item = LVector<F>> + '_> {
    require_finite(code)?;
    let lines = enumerate_subspaces(&**code.tower(), code.dim(), 1)?;
    Ok(lines.map(move |s| code.codeword(&s.basis()[0])))
}

/// `d_R(C)`: minimum rank weight of a nonzero codeword.
pub fn rank_distance<F: Field>(code: &LinearCode<F>) -> Result<usize> {
    if code.is_zero() {
        return Err(Error::ZeroCode);
    }
    require_finite(code)?;
    let mut best = usize::MAX;
    for c in projective_points(code)? {
        best = best.min(rank_weight(code.tower(), &c)?);
        if best == 1 {
            break;
        }
    }
    Ok(best)
}

/// `maxwt_R(D)`: maximum rank weight of a codeword.
pub fn maxwt<F: Field>(code: &LinearCode<F>) -> Result<usize> {
    require_finite(code)?;
    if code.is_zero() {
        return Ok(0);
    }
    let ceiling = rank_weight_code(code).min(code.tower().degree());
    let mut best = 0;
    for c in projective_points(code)? {
        best = best.max(rank_weight(code.tower(), &c)?);
        if best == ceiling {
            break;
        }
    }
    Ok(best)
}

/// A minimum value together with the first minimizer in enumeration order.
#[derive(Debug, Clone, PartialEq)]
pub struct Minimum<F: Field> {
    pub value: usize,
    pub minimizer: LinearCode<F>,
}

fn minimize_over_subcodes<F: Field>(
    code: &LinearCode<F>,
    r: usize,
    floor: usize,
    objective: impl Fn(&LinearCode<F>) -> Result<usize>,
) -> Result<Minimum<F>> {
    require_finite(code)?;
    check_r(code, r)?;
    let mut best: Option<Minimum<F>> = None;
    for d in subcodes(code, r)? {
        let v = objective(&d)?;
        if best.as_ref().is_none_or(|b| v < b.value) {
            best = Some(Minimum {
                value: v,
                minimizer: d,
            });
            if v <= floor {
                break;
            }
        }
    }
    Ok(best.expect("at least one subcode of dimension r"))
}

/// `d_{R,r}(C) = min wt_R(D)` over `r`-dimensional subcodes `D`.
pub fn minimize_drr<F: Field>(code: &LinearCode<F>, r: usize) -> Result<Minimum<F>> {
    minimize_over_subcodes(code, r, r, |d| Ok(rank_weight_code(d)))
}

/// `OS_r(C) = min maxwt_R(D)` over `r`-dimensional subcodes `D`.
pub fn minimize_osr<F: Field>(code: &LinearCode<F>, r: usize) -> Result<Minimum<F>> {
    minimize_over_subcodes(code, r, 1, maxwt)
}

/// `D_r(C) = min maxwt_R(D*)` over `r`-dimensional subcodes `D`.
pub fn minimize_dr<F: Field>(code: &LinearCode<F>, r: usize) -> Result<Minimum<F>> {
    minimize_over_subcodes(code, r, 1, |d| maxwt(&closure(d)))
}

/// `M_r(C) = min dim V` over extended `V = W_L` with `dim(C ∩ V) >= r`.
/// The minimizer is `V`.
pub fn minimize_mr<F: Field>(code: &LinearCode<F>, r: usize) -> Result<Minimum<F>> {
    require_finite(code)?;
    check_r(code, r)?;
    let tower = code.tower();
    let n = code.length();
    for d in r..=n {
        for w in enumerate_subspaces(tower.base(), n, d)? {
            let v = extend_to_l(&KSubspace::new(tower.clone(), w));
            if code.intersection(&v)?.dim() >= r {
                return Ok(Minimum {
                    value: d,
                    minimizer: v,
                });
            }
        }
    }
    unreachable!("V = L^n meets C in dimension dim C >= r")
}

pub fn weight_drr<F: Field>(code: &LinearCode<F>, r: usize) -> Result<usize> {
    minimize_drr(code, r).map(|m| m.value)
}

pub fn weight_mr<F: Field>(code: &LinearCode<F>, r: usize) -> Result<usize> {
    minimize_mr(code, r).map(|m| m.value)
}

pub fn weight_osr<F: Field>(code: &LinearCode<F>, r: usize) -> Result<usize> {
    minimize_osr(code, r).map(|m| m.value)
}

pub fn weight_dr<F: Field>(code: &LinearCode<F>, r: usize) -> Result<usize> {
    minimize_dr(code, r).map(|m| m.value)
}

/// One row of the generalized weight hierarchy; `None` means inapplicable.
#[derive(Debug, Clone, PartialEq)]
pub struct HierarchyRow<F: Field> {
    pub r: usize,
    pub d_rr: Option<usize>,
    pub m_r: Option<usize>,
    pub os_r: Option<usize>,
    pub d_r: Option<usize>,
    /// First minimizers for `d_Rr`, `M_r`, `OS_r`, `D_r` (verbose mode only).
    pub minimizers: Option<[LinearCode<F>; 4]>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightReport<F: Field> {
    pub code: LinearCode<F>,
    pub rank_distance: Option<usize>,
    pub hierarchy: Vec<HierarchyRow<F>>,
    pub witness: Option<LVector<F>>,
    pub witness_source: Option<Source>,
    pub degenerate: bool,
    /// `(entry, reason)` for every value that could not be computed.
    pub inapplicable: Vec<(String, String)>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ReportOptions {
    /// Only this row of the hierarchy.
    pub r: Option<usize>,
    pub verbose: bool,
    pub strategy: Strategy,
}

/// Compute every weight of `C`. When `n <= m` the four definitions must
/// agree row by row; disagreement is reported as [`Error::EquivalenceViolation`].
pub fn weight_report<F: Field>(
    code: &LinearCode<F>,
    opts: ReportOptions,
) -> Result<WeightReport<F>> {
    let tower = code.tower();
    let finite = tower.is_finite();
    let mut inapplicable = Vec::new();
    let infinite_reason = "requires enumeration over a finite base field".to_string();

    let rank_distance = if code.is_zero() {
        inapplicable.push(("rank_distance".into(), "zero code".into()));
        None
    } else if finite {
        Some(rank_distance(code)?)
    } else {
        inapplicable.push(("rank_distance".into(), infinite_reason.clone()));
        None
    };

    let rows: Vec<usize> = match opts.r {
        Some(r) => {
            check_r(code, r)?;
            vec![r]
        }
        None => (1..=code.dim()).collect(),
    };
    let mut hierarchy = Vec::with_capacity(rows.len());
    for r in rows {
        if !finite {
            inapplicable.push((format!("hierarchy[{r}]"), infinite_reason.clone()));
            hierarchy.push(HierarchyRow {
                r,
                d_rr: None,
                m_r: None,
                os_r: None,
                d_r: None,
                minimizers: None,
            });
            continue;
        }
        let a = minimize_drr(code, r)?;
        let b = minimize_mr(code, r)?;
        let c = minimize_osr(code, r)?;
        let d = minimize_dr(code, r)?;
        if code.length() <= tower.degree()
            && !(a.value == b.value && b.value == c.value && c.value == d.value)
        {
            return Err(Error::EquivalenceViolation {
                r,
                d_rr: a.value,
                m_r: b.value,
                os_r: c.value,
                d_r: d.value,
            });
        }
        hierarchy.push(HierarchyRow {
            r,
            d_rr: Some(a.value),
            m_r: Some(b.value),
            os_r: Some(c.value),
            d_r: Some(d.value),
            minimizers: opts.verbose.then_some([
                a.minimizer,
                b.minimizer,
                c.minimizer,
                d.minimizer,
            ]),
        });
    }

    let (witness, witness_source) = match witness::find_witness(code, opts.strategy) {
        Ok(outcome) => {
            if outcome.witness.is_none() {
                inapplicable.push(("witness".into(), absence_reason(outcome.source)));
            }
            (outcome.witness, Some(outcome.source))
        }
        Err(e @ (Error::SearchExhausted | Error::StrategyInapplicable(_))) => {
            inapplicable.push(("witness".into(), e.to_string()));
            (None, None)
        }
        Err(e) => return Err(e),
    };

    Ok(WeightReport {
        code: code.clone(),
        rank_distance,
        hierarchy,
        witness,
        witness_source,
        degenerate: support::is_rank_degenerate(code),
        inapplicable,
    })
}

fn absence_reason(source: Source) -> String {
    match source {
        Source::DimensionBound => "no witness: wt_R(C) exceeds the extension degree".into(),
        _ => "no witness: exhaustive search found none".into(),
    }
}

/// The hierarchy rows of an arbitrary code, as plain values.
pub fn hierarchy_values<F: Field>(code: &LinearCode<F>) -> Result<Vec<[usize; 4]>> {
    (1..=code.dim())
        .map(|r| {
            Ok([
                weight_drr(code, r)?,
                weight_mr(code, r)?,
                weight_osr(code, r)?,
                weight_dr(code, r)?,
            ])
        })
        .collect()
}
