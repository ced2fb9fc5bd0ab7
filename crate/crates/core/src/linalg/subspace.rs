//! Linear subspaces of a graded piece `S_k`, held in canonical form.
//!
//! A [`Subspace`] stores the reduced row-echelon basis of its span, so two
//! subspaces are equal exactly when their stored bases are identical and
//! `==` is the subspace equality.

use crate::error::{Error, Result};
use crate::linalg::matrix::{dot, non_pivots, Matrix};
use crate::monomial::{basis_dim, mono_basis};
use crate::poly::HomogeneousPolynomial;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<T> {
    n: usize,
    degree: u32,
    basis: Matrix<T>,
    pivots: Vec<usize>,
}

impl<T: Scalar> Subspace<T> {
    pub fn zero(n: usize, degree: u32) -> Self {
        Subspace {
            n,
            degree,
            basis: Matrix::zeros(0, basis_dim(n, degree)),
            pivots: Vec::new(),
        }
    }

    pub fn full(n: usize, degree: u32) -> Self {
        let dim = basis_dim(n, degree);
        Subspace {
            n,
            degree,
            basis: Matrix::identity(dim),
            pivots: (0..dim).collect(),
        }
    }

    /// Span of coordinate vectors in [`mono_basis`]`(n, degree)` order.
    pub fn span(n: usize, degree: u32, vectors: Vec<Vec<T>>) -> Result<Self> {
        let m = Matrix::from_rows(vectors, basis_dim(n, degree))?;
        Ok(Self::from_matrix(n, degree, &m))
    }

    pub(crate) fn from_matrix(n: usize, degree: u32, m: &Matrix<T>) -> Self {
        debug_assert_eq!(m.ncols(), basis_dim(n, degree));
        let ech = m.echelon();
        Subspace {
            n,
            degree,
            basis: ech.matrix,
            pivots: ech.pivots,
        }
    }

    /// Span of polynomials; all must lie in `S_degree` with `n + 1` variables.
    pub fn span_polys<'a>(
        n: usize,
        degree: u32,
        polys: impl IntoIterator<Item = &'a HomogeneousPolynomial<T>>,
    ) -> Result<Self> {
        let mut rows = Vec::new();
        for p in polys {
            if p.n() != n || p.degree() != degree {
                return Err(Error::AmbientMismatch {
                    left_n: n,
                    left_k: degree,
                    right_n: p.n(),
                    right_k: p.degree(),
                });
            }
            rows.push(p.coords());
        }
        Self::span(n, degree, rows)
    }

    /// Variable count minus one of the ambient ring.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn codim(&self) -> usize {
        self.ambient_dim() - self.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    /// Canonical basis matrix (reduced row-echelon, one row per basis vector).
    pub fn basis(&self) -> &Matrix<T> {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns that are not pivots; they coordinatize `S_k / self`.
    pub fn free_columns(&self) -> Vec<usize> {
        non_pivots(&self.pivots, self.ambient_dim())
    }

    pub fn basis_polys(&self) -> Vec<HomogeneousPolynomial<T>> {
        self.basis
            .rows()
            .iter()
            .map(|r| HomogeneousPolynomial::from_coords(self.n, self.degree, r))
            .collect()
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.degree != other.degree {
            return Err(Error::AmbientMismatch {
                left_n: self.n,
                left_k: self.degree,
                right_n: other.n,
                right_k: other.degree,
            });
        }
        Ok(())
    }

    fn check_poly(&self, p: &HomogeneousPolynomial<T>) -> Result<()> {
        if self.n != p.n() || self.degree != p.degree() {
            return Err(Error::AmbientMismatch {
                left_n: self.n,
                left_k: self.degree,
                right_n: p.n(),
                right_k: p.degree(),
            });
        }
        Ok(())
    }

    /// Normal form of `v` modulo the subspace: the unique representative
    /// with zeros in every pivot column.
    pub fn reduce(&self, v: &[T]) -> Vec<T> {
        let mut out = v.to_vec();
        for (row, &p) in self.basis.rows().iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let factor = out[p].clone();
            for (o, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o = o.clone() - factor.clone() * r.clone();
                }
            }
        }
        out
    }

    /// Coordinates of the class of `v` in `S_k / self`, indexed by
    /// [`free_columns`](Self::free_columns).
    pub fn quotient_coords(&self, v: &[T]) -> Vec<T> {
        let reduced = self.reduce(v);
        self.free_columns()
            .into_iter()
            .map(|c| reduced[c].clone())
            .collect()
    }

    /// Projection `S_k -> S_k / self` tabulated per monomial, for applying
    /// to sparse vectors.
    pub fn quotient_map(&self) -> QuotientMap<T> {
        let free = self.free_columns();
        let mut images = vec![vec![T::zero(); free.len()]; self.ambient_dim()];
        for (q, &c) in free.iter().enumerate() {
            images[c][q] = T::one();
        }
        for (row, &p) in self.basis.rows().iter().zip(&self.pivots) {
            for (q, &c) in free.iter().enumerate() {
                if !row[c].is_zero() {
                    images[p][q] = -row[c].clone();
                }
            }
        }
        QuotientMap {
            codim: free.len(),
            images,
        }
    }

    pub fn contains_vector(&self, v: &[T]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    pub fn contains_poly(&self, p: &HomogeneousPolynomial<T>) -> Result<bool> {
        self.check_poly(p)?;
        Ok(self.contains_vector(&p.coords()))
    }

    /// Whether `other` is a subspace of `self`.
    pub fn contains(&self, other: &Self) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(other.dim() <= self.dim() && other.basis.rows().iter().all(|v| self.contains_vector(v)))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut rows = self.basis.rows().to_vec();
        rows.extend(other.basis.rows().iter().cloned());
        Self::span(self.n, self.degree, rows)
    }

    /// Intersection by the Zassenhaus sum-intersection algorithm.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let dim = self.ambient_dim();
        let mut rows: Vec<Vec<T>> = self
            .basis
            .rows()
            .iter()
            .map(|r| r.iter().chain(r.iter()).cloned().collect())
            .collect();
        rows.extend(other.basis.rows().iter().map(|r| {
            r.iter()
                .cloned()
                .chain(std::iter::repeat_n(T::zero(), dim))
                .collect()
        }));
        let ech = Matrix::from_rows(rows, 2 * dim)?.echelon();
        let meet: Vec<Vec<T>> = ech
            .matrix
            .rows()
            .iter()
            .zip(&ech.pivots)
            .filter(|(_, &p)| p >= dim)
            .map(|(r, _)| r[dim..].to_vec())
            .collect();
        Self::span(self.n, self.degree, meet)
    }

    /// Orthogonal complement for the apolar pairing
    /// `<f, q> = sum alpha! a_alpha b_alpha`.
    pub fn orthogonal_complement(&self) -> Self {
        let weights: Vec<T> = mono_basis(self.n, self.degree)
            .iter()
            .map(|e| T::from_i64(e.factorial() as i64))
            .collect();
        let weighted: Vec<Vec<T>> = self
            .basis
            .rows()
            .iter()
            .map(|r| {
                r.iter()
                    .zip(&weights)
                    .map(|(x, w)| x.clone() * w.clone())
                    .collect()
            })
            .collect();
        let m = Matrix::from_rows(weighted, self.ambient_dim()).expect("row lengths");
        Self::from_matrix(self.n, self.degree, &m.kernel())
    }

    /// Whether every basis vector pairs to zero with every vector of `other`.
    pub fn is_orthogonal_to(&self, other: &Self) -> Result<bool> {
        self.check_ambient(other)?;
        let weights: Vec<T> = mono_basis(self.n, self.degree)
            .iter()
            .map(|e| T::from_i64(e.factorial() as i64))
            .collect();
        Ok(self.basis.rows().iter().all(|a| {
            let wa: Vec<T> = a
                .iter()
                .zip(&weights)
                .map(|(x, w)| x.clone() * w.clone())
                .collect();
            other.basis.rows().iter().all(|b| dot(&wa, b).is_zero())
        }))
    }
}

/// Tabulated projection onto the quotient by a [`Subspace`]; see
/// [`Subspace::quotient_map`].
#[derive(Debug, Clone)]
pub struct QuotientMap<T> {
    codim: usize,
    images: Vec<Vec<T>>,
}

impl<T: Scalar> QuotientMap<T> {
    pub fn codim(&self) -> usize {
        self.codim
    }

    /// The tabulated images reduced modulo `p`, indexed like the monomial
    /// basis, or `None` if `p` divides a denominator.
    pub fn residues(&self, p: u64) -> Option<Vec<Vec<u64>>> {
        self.images
            .iter()
            .map(|image| image.iter().map(|x| x.residue(p)).collect())
            .collect()
    }

    /// Quotient coordinates of a polynomial in the ambient piece.
    pub fn apply(&self, p: &HomogeneousPolynomial<T>) -> Vec<T> {
        let mut out = vec![T::zero(); self.codim];
        for (e, c) in p.terms() {
            for (o, x) in out.iter_mut().zip(&self.images[e.index()]) {
                if !x.is_zero() {
                    *o = o.clone() + c.clone() * x.clone();
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;
    type Sub = Subspace<Q>;
    type P = HomogeneousPolynomial<Q>;

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| Q::from_i64(x)).collect()
    }

    fn polys(n: usize, items: &[&str]) -> Vec<P> {
        items
            .iter()
            .map(|s| P::parse(s, Some(n)).unwrap())
            .collect()
    }

    #[test]
    fn span_of_standard_vectors_is_full() {
        let s = Sub::span(0, 1, vec![v(&[1])]).unwrap();
        assert!(s.is_full());
        let plane = Sub::span(1, 1, vec![v(&[1, 0]), v(&[0, 1])]).unwrap();
        assert_eq!(plane.dim(), 2);
        assert_eq!(plane, Sub::full(1, 1));
    }

    #[test]
    fn canonical_form_ignores_scaling_and_order() {
        let a = Sub::span(1, 2, vec![v(&[1, 2, 0]), v(&[0, 1, 1])]).unwrap();
        let b = Sub::span(1, 2, vec![v(&[0, -3, -3]), v(&[2, 4, 0]), v(&[1, 3, 1])]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sum_and_intersection_of_lines() {
        let a = Sub::span(1, 1, vec![v(&[1, 1])]).unwrap();
        let b = Sub::span(1, 1, vec![v(&[1, -1])]).unwrap();
        assert_eq!(a.sum(&b).unwrap().dim(), 2);
        assert_eq!(a.intersect(&b).unwrap().dim(), 0);
        assert_eq!(a.sum(&a).unwrap(), a);
        assert_eq!(a.intersect(&a).unwrap(), a);
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = Sub::full(1, 1);
        let b = Sub::full(1, 2);
        assert!(matches!(a.sum(&b), Err(Error::AmbientMismatch { .. })));
        assert!(a.contains(&b).is_err());
    }

    #[test]
    fn complement_of_everything_is_zero() {
        assert!(Sub::full(2, 3).orthogonal_complement().is_zero());
        assert!(Sub::zero(2, 3).orthogonal_complement().is_full());
    }

    #[test]
    fn complement_of_a_square_in_binary_quadrics() {
        let e = Sub::span_polys(1, 2, &polys(1, &["x0^2"])).unwrap();
        let expected = Sub::span_polys(1, 2, &polys(1, &["x0*x1", "x1^2"])).unwrap();
        assert_eq!(e.orthogonal_complement(), expected);
    }

    #[test]
    fn complement_uses_factorial_weights() {
        // a*x0^2 + b*x0*x1 + c*x1^2 pairs with x0^2 + x1^2 to 2a + 2c
        let e = Sub::span_polys(1, 2, &polys(1, &["x0^2 + x1^2"])).unwrap();
        let expected = Sub::span_polys(1, 2, &polys(1, &["x0*x1", "x0^2 - x1^2"])).unwrap();
        let perp = e.orthogonal_complement();
        assert_eq!(perp, expected);
        assert!(perp.is_orthogonal_to(&e).unwrap());
    }

    #[test]
    fn quotient_coordinates_vanish_exactly_on_the_subspace() {
        let e = Sub::span(1, 2, vec![v(&[1, 1, 0])]).unwrap();
        assert!(e
            .quotient_coords(&v(&[3, 3, 0]))
            .iter()
            .all(|x| *x == Q::from_i64(0)));
        assert_eq!(e.quotient_coords(&v(&[1, 0, 2])), v(&[-1, 2]));
    }

    #[test]
    fn tabulated_projection_agrees_with_reduction() {
        let e = Sub::span(1, 3, vec![v(&[1, 2, 0, -1]), v(&[0, 3, 1, 1])]).unwrap();
        let map = e.quotient_map();
        for coords in [v(&[1, 0, 0, 0]), v(&[5, -2, 7, 1]), v(&[0, 0, 0, 3])] {
            let poly = P::from_coords(1, 3, &coords);
            assert_eq!(map.apply(&poly), e.quotient_coords(&coords));
        }
    }
}
