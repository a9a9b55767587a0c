//! Rank supports, restriction, extension, trace images, duals and the
//! closure `C*` of codes inside `L^n`.
//!
//! A vector `c` in `L^n` expands into the `m x n` matrix over `k` whose
//! column `j` holds the coordinates of `c_j`. Its rank support is the row
//! space of that matrix; the rank support of a code is the sum of the
//! supports of its codewords, which is the sum over any generating set.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{ExtElem, ExtensionTower, Field};
use crate::linalg::{self, Matrix, Subspace};

/// A vector of `L^n`.
pub type LVector<F> = Vec<ExtElem<<F as Field>::Elem>>;

/// An `L`-linear subspace of `L^n`, kept in canonical form over `L`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearCode<F: Field> {
    tower: Arc<ExtensionTower<F>>,
    space: Subspace<ExtElem<F::Elem>>,
}

/// A `k`-linear subspace of `k^n` attached to a tower.
#[derive(Debug, Clone, PartialEq)]
pub struct KSubspace<F: Field> {
    tower: Arc<ExtensionTower<F>>,
    space: Subspace<F::Elem>,
}

/// `M(c)`: row `i`, column `j` holds the `i`-th coordinate of `c_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpandedMatrix<E> {
    matrix: Matrix<E>,
}

impl<E: Clone> ExpandedMatrix<E> {
    pub fn matrix(&self) -> &Matrix<E> {
        &self.matrix
    }

    pub fn row(&self, i: usize) -> &[E] {
        self.matrix.row(i)
    }

    /// `sum_i row_i * alpha_i` in the power basis.
    pub fn reassemble<F: Field<Elem = E>>(&self, tower: &ExtensionTower<F>) -> LVector<F> {
        let (m, n) = self.matrix.shape();
        (0..n)
            .map(|j| {
                let col: Vec<E> = (0..m).map(|i| self.matrix.get(i, j).clone()).collect();
                tower.from_coords(&col)
            })
            .collect()
    }
}

fn same_tower<F: Field>(a: &Arc<ExtensionTower<F>>, b: &Arc<ExtensionTower<F>>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::TowerMismatch)
    }
}

fn check_vector<F: Field>(tower: &ExtensionTower<F>, c: &[ExtElem<F::Elem>]) -> Result<()> {
    if c.iter().any(|x| x.0.len() != tower.degree()) {
        Err(Error::TowerMismatch)
    } else {
        Ok(())
    }
}

impl<F: Field> LinearCode<F> {
    /// The `L`-span of `generators`, each of length `n`.
    pub fn new(
        tower: Arc<ExtensionTower<F>>,
        n: usize,
        generators: Vec<LVector<F>>,
    ) -> Result<Self> {
        for g in &generators {
            check_vector(&tower, g)?;
        }
        let space = Subspace::span(&*tower, n, generators)?;
        Ok(LinearCode { tower, space })
    }

    pub fn from_subspace(tower: Arc<ExtensionTower<F>>, space: Subspace<ExtElem<F::Elem>>) -> Self {
        LinearCode { tower, space }
    }

    pub fn zero(tower: Arc<ExtensionTower<F>>, n: usize) -> Self {
        LinearCode {
            tower,
            space: Subspace::zero(n),
        }
    }

    pub fn full(tower: Arc<ExtensionTower<F>>, n: usize) -> Self {
        let space = Subspace::full(&*tower, n);
        LinearCode { tower, space }
    }

    pub fn tower(&self) -> &Arc<ExtensionTower<F>> {
        &self.tower
    }

    pub fn length(&self) -> usize {
        self.space.ambient_dim()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.space.is_zero()
    }

    /// Canonical generator rows.
    pub fn basis(&self) -> &[LVector<F>] {
        self.space.basis()
    }

    pub fn space(&self) -> &Subspace<ExtElem<F::Elem>> {
        &self.space
    }

    pub fn contains(&self, v: &[ExtElem<F::Elem>]) -> Result<bool> {
        check_vector(&self.tower, v)?;
        self.space.contains(&*self.tower, v)
    }

    pub fn is_subcode_of(&self, other: &Self) -> Result<bool> {
        same_tower(&self.tower, &other.tower)?;
        self.space.is_subspace_of(&*self.tower, &other.space)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        same_tower(&self.tower, &other.tower)?;
        let space = self.space.sum(&*self.tower, &other.space)?;
        Ok(LinearCode::from_subspace(self.tower.clone(), space))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        same_tower(&self.tower, &other.tower)?;
        let space = self.space.intersection(&*self.tower, &other.space)?;
        Ok(LinearCode::from_subspace(self.tower.clone(), space))
    }

    /// The codeword `sum_i coeffs[i] * basis[i]`.
    pub fn codeword(&self, coeffs: &[ExtElem<F::Elem>]) -> LVector<F> {
        self.space.combine(&*self.tower, coeffs)
    }

    /// The subcode spanned by the codewords with the given coefficient rows.
    pub fn subcode(&self, coefficient_rows: &[Vec<ExtElem<F::Elem>>]) -> Self {
        let rows = coefficient_rows.iter().map(|c| self.codeword(c)).collect();
        let space = Subspace::span_unchecked(&*self.tower, self.length(), rows);
        LinearCode::from_subspace(self.tower.clone(), space)
    }
}

impl<F: Field> KSubspace<F> {
    pub fn new(tower: Arc<ExtensionTower<F>>, space: Subspace<F::Elem>) -> Self {
        KSubspace { tower, space }
    }

    pub fn span(tower: Arc<ExtensionTower<F>>, n: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let space = Subspace::span(tower.base(), n, rows)?;
        Ok(KSubspace { tower, space })
    }

    pub fn tower(&self) -> &Arc<ExtensionTower<F>> {
        &self.tower
    }

    pub fn space(&self) -> &Subspace<F::Elem> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn length(&self) -> usize {
        self.space.ambient_dim()
    }

    pub fn basis(&self) -> &[Vec<F::Elem>] {
        self.space.basis()
    }

    pub fn contains(&self, v: &[F::Elem]) -> Result<bool> {
        self.space.contains(self.tower.base(), v)
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool> {
        same_tower(&self.tower, &other.tower)?;
        self.space.is_subspace_of(self.tower.base(), &other.space)
    }

    pub fn orthogonal_complement(&self) -> Self {
        KSubspace::new(
            self.tower.clone(),
            self.space.orthogonal_complement(self.tower.base()),
        )
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        same_tower(&self.tower, &other.tower)?;
        let space = self.space.sum(self.tower.base(), &other.space)?;
        Ok(KSubspace::new(self.tower.clone(), space))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        same_tower(&self.tower, &other.tower)?;
        let space = self.space.intersection(self.tower.base(), &other.space)?;
        Ok(KSubspace::new(self.tower.clone(), space))
    }
}

/// A `k`-basis of `L`, other than the power basis.
#[derive(Debug, Clone)]
pub struct KBasis<F: Field> {
    elems: Vec<ExtElem<F::Elem>>,
    /// Maps power-basis coordinates to coordinates in `elems`.
    to_coords: Matrix<F::Elem>,
}

impl<F: Field> KBasis<F> {
    pub fn new(tower: &ExtensionTower<F>, elems: Vec<ExtElem<F::Elem>>) -> Result<Self> {
        let m = tower.degree();
        if elems.len() != m {
            return Err(Error::NotABasis);
        }
        check_vector(tower, &elems)?;
        // column i holds the power-basis coordinates of elems[i]
        let cols = Matrix::from_rows(m, &elems.iter().map(|e| e.0.clone()).collect::<Vec<_>>())
            .transpose();
        let to_coords = linalg::invert(tower.base(), &cols).ok_or(Error::NotABasis)?;
        Ok(KBasis { elems, to_coords })
    }

    pub fn power(tower: &ExtensionTower<F>) -> Self {
        Self::new(tower, tower.basis()).expect("power basis")
    }

    pub fn elems(&self) -> &[ExtElem<F::Elem>] {
        &self.elems
    }

    pub fn coords(&self, tower: &ExtensionTower<F>, x: &ExtElem<F::Elem>) -> Vec<F::Elem> {
        let col = Matrix::new(x.0.len(), 1, x.0.clone());
        let out = linalg::mat_mul(tower.base(), &self.to_coords, &col);
        (0..out.num_rows()).map(|i| out.get(i, 0).clone()).collect()
    }
}

/// `M(c)` in the power basis.
pub fn expand_matrix<F: Field>(
    tower: &ExtensionTower<F>,
    c: &[ExtElem<F::Elem>],
) -> Result<ExpandedMatrix<F::Elem>> {
    check_vector(tower, c)?;
    let (m, n) = (tower.degree(), c.len());
    let mut data = Vec::with_capacity(m * n);
    for i in 0..m {
        data.extend(c.iter().map(|x| x.0[i].clone()));
    }
    Ok(ExpandedMatrix {
        matrix: Matrix::new(m, n, data),
    })
}

/// `M(c)` with respect to an arbitrary `k`-basis of `L`.
pub fn expand_matrix_in<F: Field>(
    tower: &ExtensionTower<F>,
    basis: &KBasis<F>,
    c: &[ExtElem<F::Elem>],
) -> Result<ExpandedMatrix<F::Elem>> {
    check_vector(tower, c)?;
    let cols: Vec<Vec<F::Elem>> = c.iter().map(|x| basis.coords(tower, x)).collect();
    let (m, n) = (tower.degree(), c.len());
    let mut data = Vec::with_capacity(m * n);
    for i in 0..m {
        data.extend(cols.iter().map(|col| col[i].clone()));
    }
    Ok(ExpandedMatrix {
        matrix: Matrix::new(m, n, data),
    })
}

/// `Rsupp(c)`: the row space of `M(c)`.
pub fn rank_support_vec<F: Field>(
    tower: &Arc<ExtensionTower<F>>,
    c: &[ExtElem<F::Elem>],
) -> Result<KSubspace<F>> {
    let em = expand_matrix(tower, c)?;
    let space = Subspace::from_matrix(tower.base(), em.matrix());
    Ok(KSubspace::new(tower.clone(), space))
}

/// `Rsupp(c)` computed from `M(c)` in another basis.
pub fn rank_support_vec_in<F: Field>(
    tower: &Arc<ExtensionTower<F>>,
    basis: &KBasis<F>,
    c: &[ExtElem<F::Elem>],
) -> Result<KSubspace<F>> {
    let em = expand_matrix_in(tower, basis, c)?;
    let space = Subspace::from_matrix(tower.base(), em.matrix());
    Ok(KSubspace::new(tower.clone(), space))
}

/// `wt_R(c)`.
pub fn rank_weight<F: Field>(tower: &ExtensionTower<F>, c: &[ExtElem<F::Elem>]) -> Result<usize> {
    let em = expand_matrix(tower, c)?;
    Ok(linalg::rank(tower.base(), em.matrix()))
}

/// `Rsupp(C)`, the sum of the supports of the canonical generators.
pub fn rank_support_code<F: Field>(code: &LinearCode<F>) -> KSubspace<F> {
    let tower = code.tower();
    let m = tower.degree();
    let n = code.length();
    let mut rows = Vec::with_capacity(m * code.dim());
    for g in code.basis() {
        for i in 0..m {
            rows.push(g.iter().map(|x| x.0[i].clone()).collect());
        }
    }
    KSubspace::new(
        tower.clone(),
        Subspace::span_unchecked(tower.base(), n, rows),
    )
}

/// `wt_R(C) = dim Rsupp(C)`.
pub fn rank_weight_code<F: Field>(code: &LinearCode<F>) -> usize {
    rank_support_code(code).dim()
}

/// `Res(C) = C ∩ k^n`, computed as `Rsupp(C^perp)^perp`.
pub fn restriction<F: Field>(code: &LinearCode<F>) -> KSubspace<F> {
    let res = rank_support_code(&dual(code)).orthogonal_complement();
    debug_assert_eq!(res, restriction_direct(code), "restriction paths disagree");
    res
}

/// `Res(C)` by intersecting `C`, viewed as a `k`-subspace of `k^(mn)`, with
/// the embedded copy of `k^n`.
pub fn restriction_direct<F: Field>(code: &LinearCode<F>) -> KSubspace<F> {
    let tower = code.tower();
    let k = tower.base();
    let (m, n) = (tower.degree(), code.length());
    let flat = |v: &[ExtElem<F::Elem>]| -> Vec<F::Elem> {
        v.iter().flat_map(|x| x.0.iter().cloned()).collect()
    };
    let mut rows = Vec::with_capacity(m * code.dim());
    for g in code.basis() {
        for alpha in tower.basis() {
            let scaled: Vec<_> = g.iter().map(|x| tower.mul(&alpha, x)).collect();
            rows.push(flat(&scaled));
        }
    }
    let as_k = Subspace::span_unchecked(k, m * n, rows);
    let embedded_rows = (0..n)
        .map(|t| {
            let mut v = vec![k.zero(); m * n];
            v[t * m] = k.one();
            v
        })
        .collect();
    let embedded = Subspace::span_unchecked(k, m * n, embedded_rows);
    let meet = as_k.intersection(k, &embedded).expect("same ambient");
    let projected = meet
        .basis()
        .iter()
        .map(|v| (0..n).map(|t| v[t * m].clone()).collect())
        .collect();
    KSubspace::new(tower.clone(), Subspace::span_unchecked(k, n, projected))
}

/// `D_L`, the `L`-span of a `k`-subspace.
pub fn extend_to_l<F: Field>(d: &KSubspace<F>) -> LinearCode<F> {
    let tower = d.tower();
    let space = d.space().map_into(&**tower, |x| tower.embed(x));
    LinearCode::from_subspace(tower.clone(), space)
}

/// `C` has a basis in `k^n`.
pub fn is_extended<F: Field>(code: &LinearCode<F>) -> bool {
    restriction(code).dim() == code.dim()
}

/// `Tr(C)`, spanned by the traces of `alpha_i * g` over basis elements and generators.
pub fn trace_image<F: Field>(code: &LinearCode<F>) -> Result<KSubspace<F>> {
    let tower = code.tower();
    if !tower.is_separable() {
        return Err(Error::InseparableTower);
    }
    let mut rows = Vec::new();
    for g in code.basis() {
        for alpha in tower.basis() {
            rows.push(
                g.iter()
                    .map(|x| tower.trace(&tower.mul(&alpha, x)))
                    .collect(),
            );
        }
    }
    Ok(KSubspace::new(
        tower.clone(),
        Subspace::span_unchecked(tower.base(), code.length(), rows),
    ))
}

/// `C^perp` for the standard bilinear form on `L^n`.
pub fn dual<F: Field>(code: &LinearCode<F>) -> LinearCode<F> {
    let tower = code.tower();
    LinearCode::from_subspace(tower.clone(), code.space().orthogonal_complement(&**tower))
}

/// `Rsupp(C) != k^n`; cross-checked against `Res(C^perp) != 0`.
pub fn is_rank_degenerate<F: Field>(code: &LinearCode<F>) -> bool {
    let by_support = rank_weight_code(code) < code.length();
    let by_dual = restriction(&dual(code)).dim() > 0;
    assert_eq!(by_support, by_dual, "degeneracy criteria disagree");
    by_support
}

/// `C* = Rsupp(C)_L`.
pub fn closure<F: Field>(code: &LinearCode<F>) -> LinearCode<F> {
    extend_to_l(&rank_support_code(code))
}

/// `C*` as the literal intersection of every extended code `W_L` containing `C`.
pub fn closure_oracle<F: Field>(code: &LinearCode<F>) -> Result<LinearCode<F>> {
    let tower = code.tower();
    let k = tower.base();
    let n = code.length();
    let mut acc = LinearCode::full(tower.clone(), n);
    for w in linalg::enumerate_all_subspaces(k, n)? {
        let ext = extend_to_l(&KSubspace::new(tower.clone(), w));
        if code.is_subcode_of(&ext)? {
            acc = acc.intersection(&ext)?;
        }
    }
    Ok(acc)
}
