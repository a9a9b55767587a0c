//! Exact linear algebra over any [`Field`]: echelon forms, kernels,
//! orthogonal complements, subspace lattice operations and enumeration of
//! subspaces of `F^n` for finite `F`.

use crate::error::{Error, Result};
use crate::field::Field;

/// Dense row-major matrix. All entries belong to the field passed to the
/// operations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn new(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(rows * cols, data.len(), "matrix shape does not match data");
        Matrix { rows, cols, data }
    }

    pub fn from_rows(cols: usize, rows: &[Vec<E>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned());
        }
        Matrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn zeros<F: Field<Elem = E>>(f: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![f.zero(); rows * cols],
        }
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        let mut m = Self::zeros(f, n, n);
        for i in 0..n {
            m.set(i, i, f.one());
        }
        m
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn num_rows(&self) -> usize {
        self.rows
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[E]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

pub fn mat_mul<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows, "inner dimensions differ");
    let mut out = Matrix::zeros(f, a.rows, b.cols);
    for i in 0..a.rows {
        for l in 0..a.cols {
            let x = a.get(i, l);
            if f.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let v = f.add(out.get(i, j), &f.mul(x, b.get(l, j)));
                out.set(i, j, v);
            }
        }
    }
    out
}

/// In-place reduced row echelon form. Returns the pivot columns; rows past
/// `pivots.len()` are zero afterwards.
pub fn rref<F: Field>(f: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
        for j in 0..m.cols {
            let v = f.mul(m.get(r, j), &inv);
            m.set(r, j, v);
        }
        for i in 0..m.rows {
            if i == r || f.is_zero(m.get(i, c)) {
                continue;
            }
            let factor = m.get(i, c).clone();
            for j in 0..m.cols {
                let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    let mut work = m.clone();
    rref(f, &mut work).len()
}

/// Inverse of a square matrix, `None` if singular.
pub fn invert<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    let n = m.rows;
    assert_eq!(n, m.cols, "square matrix required");
    let mut aug = Matrix::zeros(f, n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, n + i, f.one());
    }
    let pivots = rref(f, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let mut out = Matrix::zeros(f, n, n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, aug.get(i, n + j).clone());
        }
    }
    Some(out)
}

/// `{ v : m v^T = 0 }`.
pub fn kernel<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Subspace<F::Elem> {
    let mut work = m.clone();
    let pivots = rref(f, &mut work);
    let n = m.cols;
    let mut rows = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![f.zero(); n];
        v[free] = f.one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(work.get(i, free));
        }
        rows.push(v);
    }
    Subspace::span_unchecked(f, n, rows)
}

/// A subspace of `F^n` stored as its reduced row echelon basis without zero
/// rows. Two subspaces are equal iff their canonical bases are identical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace<E> {
    ambient: usize,
    basis: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<E: Clone + PartialEq> Subspace<E> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full<F: Field<Elem = E>>(f: &F, ambient: usize) -> Self {
        Self::from_matrix(f, &Matrix::identity(f, ambient))
    }

    /// Canonical row space of `m`.
    pub fn from_matrix<F: Field<Elem = E>>(f: &F, m: &Matrix<E>) -> Self {
        let mut work = m.clone();
        let pivots = rref(f, &mut work);
        let basis = (0..pivots.len()).map(|i| work.row(i).to_vec()).collect();
        Subspace {
            ambient: m.cols,
            basis,
            pivots,
        }
    }

    /// Span of `rows`, each of length `ambient`.
    pub fn span<F: Field<Elem = E>>(f: &F, ambient: usize, rows: Vec<Vec<E>>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ambient) {
            return Err(Error::AmbientMismatch(ambient, bad.len()));
        }
        Ok(Self::span_unchecked(f, ambient, rows))
    }

    pub(crate) fn span_unchecked<F: Field<Elem = E>>(
        f: &F,
        ambient: usize,
        rows: Vec<Vec<E>>,
    ) -> Self {
        let m = Matrix::from_rows(ambient, &rows);
        Self::from_matrix(f, &m)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<E>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn to_matrix(&self) -> Matrix<E> {
        Matrix::from_rows(self.ambient, &self.basis)
    }

    /// `sum_i coeffs[i] * basis[i]`.
    pub fn combine<F: Field<Elem = E>>(&self, f: &F, coeffs: &[E]) -> Vec<E> {
        let mut out = vec![f.zero(); self.ambient];
        for (c, row) in coeffs.iter().zip(&self.basis) {
            if f.is_zero(c) {
                continue;
            }
            for (o, x) in out.iter_mut().zip(row) {
                *o = f.add(o, &f.mul(c, x));
            }
        }
        out
    }

    /// Residual of `v` after elimination against the canonical basis.
    pub fn reduce<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if f.is_zero(&out[p]) {
                continue;
            }
            let c = out[p].clone();
            for (o, x) in out.iter_mut().zip(row) {
                *o = f.sub(o, &f.mul(&c, x));
            }
        }
        out
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::AmbientMismatch(self.ambient, v.len()));
        }
        Ok(self.reduce(f, v).iter().all(|x| f.is_zero(x)))
    }

    pub fn is_subspace_of<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Result<bool> {
        for row in &self.basis {
            if !other.contains(f, row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Complement for the standard bilinear form `sum_i x_i y_i`.
    pub fn orthogonal_complement<F: Field<Elem = E>>(&self, f: &F) -> Self {
        if self.basis.is_empty() {
            return Self::full(f, self.ambient);
        }
        kernel(f, &self.to_matrix())
    }

    pub fn sum<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Result<Self> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        let rows = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Self::span_unchecked(f, self.ambient, rows))
    }

    /// `(a^perp + b^perp)^perp`.
    pub fn intersection<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Result<Self> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        let s = self
            .orthogonal_complement(f)
            .sum(f, &other.orthogonal_complement(f))?;
        Ok(s.orthogonal_complement(f))
    }

    /// Apply `g` to every entry and re-canonicalize over `target`.
    pub fn map_into<T: Field>(&self, target: &T, g: impl Fn(&E) -> T::Elem) -> Subspace<T::Elem> {
        let rows = self
            .basis
            .iter()
            .map(|r| r.iter().map(&g).collect())
            .collect();
        Subspace::span_unchecked(target, self.ambient, rows)
    }
}

/// Number of `r`-dimensional subspaces of an `n`-dimensional space over a
/// field with `q` elements.
pub fn gaussian_binomial(n: usize, r: usize, q: u64) -> u128 {
    if r > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..r {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Lazy stream of every `r`-dimensional subspace of `F^n`.
///
/// Ordered by pivot profile (combinations in lexicographic order), then by
/// the free entries, read row-major and lowest position fastest.
pub struct SubspaceIter<'a, F: Field> {
    field: &'a F,
    n: usize,
    q: u64,
    profile: Option<Vec<usize>>,
    free: Vec<(usize, usize)>,
    counter: u64,
    limit: u64,
}

impl<'a, F: Field> SubspaceIter<'a, F> {
    fn load_profile(&mut self) {
        if let Some(p) = &self.profile {
            self.free = p
                .iter()
                .enumerate()
                .flat_map(|(i, &pc)| {
                    (pc + 1..self.n)
                        .filter(|j| !p.contains(j))
                        .map(move |j| (i, j))
                })
                .collect();
            self.counter = 0;
            self.limit = self.q.pow(self.free.len() as u32);
        }
    }

    fn advance_profile(&mut self) {
        let n = self.n;
        self.profile = match self.profile.take() {
            None => None,
            Some(mut p) => {
                let r = p.len();
                let mut i = r;
                loop {
                    if i == 0 {
                        break None;
                    }
                    i -= 1;
                    if p[i] < n - r + i {
                        p[i] += 1;
                        for j in i + 1..r {
                            p[j] = p[j - 1] + 1;
                        }
                        break Some(p);
                    }
                }
            }
        };
        self.load_profile();
    }
}

impl<F: Field> Iterator for SubspaceIter<'_, F> {
    type Item = Subspace<F::Elem>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let profile = self.profile.as_ref()?;
            if self.counter < self.limit {
                let f = self.field;
                let r = profile.len();
                let mut basis = vec![vec![f.zero(); self.n]; r];
                for (i, &pc) in profile.iter().enumerate() {
                    basis[i][pc] = f.one();
                }
                let mut c = self.counter;
                for &(i, j) in &self.free {
                    basis[i][j] = f.element_at(c % self.q);
                    c /= self.q;
                }
                self.counter += 1;
                return Some(Subspace {
                    ambient: self.n,
                    basis,
                    pivots: profile.clone(),
                });
            }
            self.advance_profile();
        }
    }
}

/// Every `r`-dimensional subspace of `F^n`, each exactly once.
pub fn enumerate_subspaces<F: Field>(f: &F, n: usize, r: usize) -> Result<SubspaceIter<'_, F>> {
    let q = f.size().ok_or(Error::InfiniteField)?;
    if r > n {
        return Err(Error::BadR { r, dim: n });
    }
    let mut it = SubspaceIter {
        field: f,
        n,
        q,
        profile: Some((0..r).collect()),
        free: Vec::new(),
        counter: 0,
        limit: 0,
    };
    it.load_profile();
    Ok(it)
}

/// Every subspace of `F^n`, by increasing dimension.
pub fn enumerate_all_subspaces<F: Field>(
    f: &F,
    n: usize,
) -> Result<impl Iterator<Item = Subspace<F::Elem>> + '_> {
    f.size().ok_or(Error::InfiniteField)?;
    Ok((0..=n).flat_map(move |r| enumerate_subspaces(f, n, r).expect("finite field, r <= n")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ExtensionTower, GaloisField, Rationals};

    fn gf2() -> GaloisField {
        GaloisField::prime(2).unwrap()
    }

    fn q_rows(rows: &[&[i64]]) -> Vec<Vec<num_rational::BigRational>> {
        let q = Rationals::new();
        rows.iter()
            .map(|r| r.iter().map(|&c| q.from_i64(c)).collect())
            .collect()
    }

    #[test]
    fn rref_examples() {
        let f = gf2();
        let s = Subspace::span(&f, 2, vec![vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(s.basis(), &[vec![1, 0], vec![0, 1]]);
        let z = Subspace::from_matrix(&f, &Matrix::zeros(&f, 3, 3));
        assert_eq!((z.dim(), z.ambient_dim()), (0, 3));
        let q = Rationals::new();
        let s = Subspace::span(&q, 2, q_rows(&[&[2, 4]])).unwrap();
        assert_eq!(s.basis(), q_rows(&[&[1, 2]]).as_slice());
    }

    #[test]
    fn kernel_examples() {
        let f = gf2();
        let k = kernel(&f, &Matrix::from_rows(2, &[vec![1, 1]]));
        assert_eq!(k.basis(), &[vec![1, 1]]);
        assert_eq!(kernel(&f, &Matrix::identity(&f, 2)).dim(), 0);
        let q = Rationals::new();
        let k = kernel(&q, &Matrix::from_rows(3, &q_rows(&[&[1, 1, 0]])));
        assert_eq!(k.basis(), q_rows(&[&[1, -1, 0], &[0, 0, 1]]).as_slice());
    }

    #[test]
    fn complement_examples() {
        let f = gf2();
        let s = Subspace::span(&f, 2, vec![vec![1, 1]]).unwrap();
        assert_eq!(s.orthogonal_complement(&f), s);
        assert_eq!(Subspace::full(&f, 3).orthogonal_complement(&f).dim(), 0);
        let q = Rationals::new();
        let s = Subspace::span(&q, 3, q_rows(&[&[1, 0, 0]])).unwrap();
        let c = s.orthogonal_complement(&q);
        assert_eq!(c.basis(), q_rows(&[&[0, 1, 0], &[0, 0, 1]]).as_slice());
    }

    #[test]
    fn sum_and_intersection_examples() {
        let f = gf2();
        let a = Subspace::span(&f, 2, vec![vec![1, 0]]).unwrap();
        let b = Subspace::span(&f, 2, vec![vec![0, 1]]).unwrap();
        assert!(a.sum(&f, &b).unwrap().is_full());
        assert_eq!(a.sum(&f, &a).unwrap(), a);
        let c = Subspace::span(&f, 3, vec![vec![1, 1, 0]]).unwrap();
        let d = Subspace::span(&f, 3, vec![vec![0, 1, 1]]).unwrap();
        assert_eq!(c.sum(&f, &d).unwrap().dim(), 2);
        assert_eq!(a.sum(&f, &c), Err(Error::AmbientMismatch(2, 3)));

        let x = Subspace::span(&f, 3, vec![vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let y = Subspace::span(&f, 3, vec![vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(x.intersection(&f, &y).unwrap().basis(), &[vec![0, 1, 0]]);
        assert_eq!(x.intersection(&f, &Subspace::full(&f, 3)).unwrap(), x);
        let u = Subspace::span(&f, 2, vec![vec![1, 1]]).unwrap();
        assert_eq!(u.intersection(&f, &a).unwrap().dim(), 0);
    }

    #[test]
    fn contains_examples() {
        let f = gf2();
        let s = Subspace::span(&f, 2, vec![vec![1, 1]]).unwrap();
        assert!(s.contains(&f, &[1, 1]).unwrap());
        assert!(!s.contains(&f, &[1, 0]).unwrap());
        assert!(s.contains(&f, &[0, 0]).unwrap());
        assert!(s.contains(&f, &[0, 0, 0]).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let f = gf2();
        assert_eq!(enumerate_subspaces(&f, 3, 1).unwrap().count(), 7);
        let gf4 = ExtensionTower::new(gf2(), vec![1, 1, 1], "w").unwrap();
        let all: Vec<_> = enumerate_subspaces(&gf4, 2, 2).unwrap().collect();
        assert_eq!(all, vec![Subspace::full(&gf4, 2)]);
        assert_eq!(enumerate_subspaces(&gf4, 2, 1).unwrap().count(), 5);
        assert_eq!(enumerate_subspaces(&gf4, 0, 0).unwrap().count(), 1);
        assert!(matches!(
            enumerate_subspaces(&Rationals::new(), 2, 1),
            Err(Error::InfiniteField)
        ));
    }

    #[test]
    fn enumerated_bases_are_canonical() {
        let f = GaloisField::prime(3).unwrap();
        for s in enumerate_all_subspaces(&f, 3).unwrap() {
            let again = Subspace::span(&f, 3, s.basis().to_vec()).unwrap();
            assert_eq!(again, s);
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let f = GaloisField::prime(5).unwrap();
        let m = Matrix::from_rows(2, &[vec![1, 2], vec![3, 4]]);
        let inv = invert(&f, &m).unwrap();
        assert_eq!(mat_mul(&f, &m, &inv), Matrix::identity(&f, 2));
        let sing = Matrix::from_rows(2, &[vec![1, 2], vec![2, 4]]);
        assert!(invert(&f, &sing).is_none());
    }
}
