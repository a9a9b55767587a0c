//! Support witnesses: codewords `c ∈ C` with `Rsupp(c) = Rsupp(C)`.
//!
//! Search is constructive first (extended codes, then splitting off the
//! restriction one rational vector at a time), with exhaustive search over
//! finite bases and seeded random sampling over infinite ones as fallback.
//! Every candidate is checked with [`check_witness`] before it is returned.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{ExtElem, ExtensionTower, Field};
use crate::linalg;
use crate::support::{
    self, closure, expand_matrix, expand_matrix_in, is_extended, rank_support_code,
    rank_support_vec, restriction, KBasis, LVector, LinearCode,
};
use crate::weights::projective_points;

pub const DEFAULT_HEIGHT: u64 = 5;
pub const RANDOM_ROUNDS: u32 = 10;
pub const SAMPLES_PER_ROUND: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Auto,
    /// Strategies (a) and (b) only.
    Constructive,
    Exhaustive,
    Random {
        seed: u64,
        height: u64,
    },
}

/// How a witness (or its absence) was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    ZeroCode,
    ConstructiveExtended,
    ConstructiveSplit,
    Exhaustive,
    Randomized,
    /// `wt_R(C) > m` rules out every codeword.
    DimensionBound,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessOutcome<F: Field> {
    pub witness: Option<LVector<F>>,
    pub source: Source,
}

/// Outcome of checking a candidate witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WitnessCheck {
    pub in_code: bool,
    /// `Rsupp(c) = Rsupp(C)` by direct recomputation.
    pub support_matches: bool,
    /// `C ⊆ (Lc)*`.
    pub closure_criterion: bool,
}

impl WitnessCheck {
    pub fn is_valid(&self) -> bool {
        self.in_code && self.support_matches && self.closure_criterion
    }
}

pub fn check_witness<F: Field>(
    code: &LinearCode<F>,
    c: &[ExtElem<F::Elem>],
) -> Result<WitnessCheck> {
    let tower = code.tower();
    let in_code = code.contains(c)?;
    let support_matches = rank_support_vec(tower, c)? == rank_support_code(code);
    let line = LinearCode::new(tower.clone(), code.length(), vec![c.to_vec()])?;
    let closure_criterion = code.is_subcode_of(&closure(&line))?;
    Ok(WitnessCheck {
        in_code,
        support_matches,
        closure_criterion,
    })
}

fn verified<F: Field>(code: &LinearCode<F>, c: LVector<F>) -> Result<Option<LVector<F>>> {
    Ok(check_witness(code, &c)?.is_valid().then_some(c))
}

/// Strategy (a): for an extended code of dimension at most `m` with rational
/// basis `e_1..e_r`, the codeword `sum_i alpha_i e_i`.
pub fn constructive_extended<F: Field>(code: &LinearCode<F>) -> Option<LVector<F>> {
    let tower = code.tower();
    if code.dim() > tower.degree() || !is_extended(code) {
        return None;
    }
    let res = restriction(code);
    let mut c = vec![tower.zero(); code.length()];
    for (alpha, e) in tower.basis().iter().zip(res.basis()) {
        for (cj, ej) in c.iter_mut().zip(e) {
            *cj = tower.add(cj, &tower.mul(alpha, &tower.embed(ej)));
        }
    }
    Some(c)
}

/// One splitting step: given a witness `c1` of `C1` and a rational vector
/// `c2`, a witness of `C1 + L c2`.
///
/// When `c2` lies outside `Rsupp(c1)` some row `j` of `M(c1)` depends on the
/// others; after replacing `alpha_i` by `alpha_i + mu_i alpha_j` that row
/// vanishes, and `c1 + alpha_j c2` has support `Rsupp(c1) + k c2`.
pub fn extend_witness<F: Field>(
    tower: &Arc<ExtensionTower<F>>,
    c1: &[ExtElem<F::Elem>],
    c2: &[F::Elem],
) -> Result<LVector<F>> {
    let k = tower.base();
    let m = tower.degree();
    let support = rank_support_vec(tower, c1)?;
    if support.contains(c2)? {
        return Ok(c1.to_vec());
    }
    let em = expand_matrix(tower, c1)?;
    // relations lambda with sum_i lambda_i row_i = 0
    let relations = linalg::kernel(k, &em.matrix().transpose());
    let Some(lambda) = relations.basis().first() else {
        return Err(Error::StrategyInapplicable(
            "rows of M(c1) are independent, so wt_R(C) would exceed m".into(),
        ));
    };
    let j = (0..m)
        .rev()
        .find(|&i| !k.is_zero(&lambda[i]))
        .expect("nonzero relation");
    let lj_inv = k.inv(&lambda[j]).expect("nonzero");
    let alpha = tower.basis();
    let new_basis: Vec<_> = (0..m)
        .map(|i| {
            if i == j {
                alpha[j].clone()
            } else {
                let mu = k.neg(&k.mul(&lambda[i], &lj_inv));
                tower.add(&alpha[i], &tower.mul(&tower.embed(&mu), &alpha[j]))
            }
        })
        .collect();
    let basis = KBasis::new(tower, new_basis)?;
    let adjusted = expand_matrix_in(tower, &basis, c1)?;
    debug_assert!(adjusted.row(j).iter().all(|x| k.is_zero(x)));
    let aj = &basis.elems()[j];
    Ok(c1
        .iter()
        .zip(c2)
        .map(|(x, y)| tower.add(x, &tower.mul(aj, &tower.embed(y))))
        .collect())
}

/// Strategy (b): starting from a witness `c1` of a subcode `C1` with
/// `C = C1 + Res(C)_L`, absorb a basis of `Res(C)` one vector at a time.
pub fn constructive_split<F: Field>(
    code: &LinearCode<F>,
    c1_code: &LinearCode<F>,
    c1: &[ExtElem<F::Elem>],
) -> Result<LVector<F>> {
    let tower = code.tower();
    if support::rank_weight_code(code) > tower.degree() {
        return Err(Error::StrategyInapplicable("wt_R(C) exceeds m".into()));
    }
    if !c1_code.is_subcode_of(code)? {
        return Err(Error::StrategyInapplicable(
            "C1 is not a subcode of C".into(),
        ));
    }
    let res = restriction(code);
    let mut current = c1_code.clone();
    let mut witness = c1.to_vec();
    for e in res.basis() {
        let e_l: LVector<F> = e.iter().map(|x| tower.embed(x)).collect();
        if current.contains(&e_l)? {
            continue;
        }
        witness = extend_witness(tower, &witness, e)?;
        current = current.sum(&LinearCode::new(tower.clone(), code.length(), vec![e_l])?)?;
    }
    if current != *code {
        return Err(Error::StrategyInapplicable("C is not C1 + Res(C)_L".into()));
    }
    Ok(witness)
}

/// A complement `C1` of `Res(C)_L` inside `C`, built from canonical rows of `C`.
pub fn restriction_complement<F: Field>(code: &LinearCode<F>) -> LinearCode<F> {
    let tower = code.tower();
    let n = code.length();
    let mut span = support::extend_to_l(&restriction(code));
    let mut picked = Vec::new();
    for g in code.basis() {
        if !span.contains(g).expect("same length") {
            let line = LinearCode::new(tower.clone(), n, vec![g.clone()]).expect("valid row");
            span = span.sum(&line).expect("same tower");
            picked.push(g.clone());
        }
    }
    LinearCode::new(tower.clone(), n, picked).expect("valid rows")
}

/// Strategy (c): scan one codeword per projective point.
pub fn exhaustive_witness<F: Field>(code: &LinearCode<F>) -> Result<Option<LVector<F>>> {
    let target = support::rank_weight_code(code);
    for c in projective_points(code)? {
        if support::rank_weight(code.tower(), &c)? == target {
            return verified(code, c);
        }
    }
    Ok(None)
}

/// Strategy (d): random codewords with coordinates of growing height.
pub fn random_witness<F: Field>(
    code: &LinearCode<F>,
    seed: u64,
    height: u64,
) -> Result<LVector<F>> {
    let tower = code.tower();
    let target = rank_support_code(code);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut h = height.max(1);
    for _ in 0..RANDOM_ROUNDS {
        for _ in 0..SAMPLES_PER_ROUND {
            let coeffs: Vec<_> = (0..code.dim()).map(|_| tower.random(&mut rng, h)).collect();
            let c = code.codeword(&coeffs);
            if rank_support_vec(tower, &c)? == target {
                if let Some(c) = verified(code, c)? {
                    return Ok(c);
                }
            }
        }
        h = h.saturating_mul(2);
    }
    Err(Error::SearchExhausted)
}

fn subcode_witness<F: Field>(
    code: &LinearCode<F>,
    seed: u64,
    height: u64,
) -> Result<Option<LVector<F>>> {
    if code.is_zero() {
        return Ok(Some(vec![code.tower().zero(); code.length()]));
    }
    if code.tower().is_finite() {
        exhaustive_witness(code)
    } else {
        random_witness(code, seed, height).map(Some)
    }
}

/// Strategies (a) then (b), or `None` when neither applies.
fn constructive<F: Field>(
    code: &LinearCode<F>,
    seed: u64,
    height: u64,
) -> Result<Option<WitnessOutcome<F>>> {
    if let Some(c) = constructive_extended(code) {
        if let Some(c) = verified(code, c)? {
            return Ok(Some(WitnessOutcome {
                witness: Some(c),
                source: Source::ConstructiveExtended,
            }));
        }
    }
    let res_dim = restriction(code).dim();
    if res_dim == 0 || res_dim == code.dim() {
        return Ok(None);
    }
    if support::rank_weight_code(code) > code.tower().degree() {
        return Ok(None);
    }
    let c1_code = restriction_complement(code);
    let Some(c1) = subcode_witness(&c1_code, seed, height)? else {
        return Ok(None);
    };
    let c = constructive_split(code, &c1_code, &c1)?;
    Ok(verified(code, c)?.map(|c| WitnessOutcome {
        witness: Some(c),
        source: Source::ConstructiveSplit,
    }))
}

/// Find `c ∈ C` with `Rsupp(c) = Rsupp(C)`.
///
/// Absence is reported only when it is proved: by `wt_R(C) > m`, or by
/// exhausting a finite code.
pub fn find_witness<F: Field>(
    code: &LinearCode<F>,
    strategy: Strategy,
) -> Result<WitnessOutcome<F>> {
    let tower = code.tower();
    if code.is_zero() {
        return Ok(WitnessOutcome {
            witness: Some(vec![tower.zero(); code.length()]),
            source: Source::ZeroCode,
        });
    }
    let (seed, height) = match strategy {
        Strategy::Random { seed, height } => (seed, height),
        _ => (0, DEFAULT_HEIGHT),
    };
    if support::rank_weight_code(code) > tower.degree() && strategy != Strategy::Exhaustive {
        return Ok(WitnessOutcome {
            witness: None,
            source: Source::DimensionBound,
        });
    }
    match strategy {
        Strategy::Constructive => constructive(code, seed, height)?.ok_or_else(|| {
            Error::StrategyInapplicable("C is neither extended nor split by its restriction".into())
        }),
        Strategy::Exhaustive => Ok(WitnessOutcome {
            witness: exhaustive_witness(code)?,
            source: Source::Exhaustive,
        }),
        Strategy::Random { seed, height } => Ok(WitnessOutcome {
            witness: Some(random_witness(code, seed, height)?),
            source: Source::Randomized,
        }),
        Strategy::Auto => {
            if let Some(found) = constructive(code, seed, height)? {
                return Ok(found);
            }
            if tower.is_finite() {
                Ok(WitnessOutcome {
                    witness: exhaustive_witness(code)?,
                    source: Source::Exhaustive,
                })
            } else {
                Ok(WitnessOutcome {
                    witness: Some(random_witness(code, seed, height)?),
                    source: Source::Randomized,
                })
            }
        }
    }
}
