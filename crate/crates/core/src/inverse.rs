//! Associated forms and apolar ideals.
//!
//! For a complete-intersection tuple `W`, the piece `(I_W)_T` has
//! codimension one in `S_T`, and its orthogonal complement under the apolar
//! pairing is a line spanned by the associated form `B_W`. The ideal `I_W`
//! is then the apolar ideal of `B_W`: everything that `B_W` is annihilated
//! by when acting as a differential operator.

use crate::error::{Error, Result};
use crate::ideal::{ideal_piece, is_complete_intersection, GeneratorTuple};
use crate::linalg::{Matrix, Subspace};
use crate::monomial::{basis_dim, mono_basis};
use crate::poly::HomogeneousPolynomial;
use crate::scalar::Scalar;

/// The normalized degree-`T` dual form of a complete intersection.
#[derive(Debug, Clone, PartialEq)]
pub struct AssociatedForm<T> {
    n: usize,
    d: u32,
    form: HomogeneousPolynomial<T>,
}

impl<T: Scalar> AssociatedForm<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn socle_degree(&self) -> u32 {
        self.form.degree()
    }

    /// Leading coefficient (graded lex) is 1.
    pub fn form(&self) -> &HomogeneousPolynomial<T> {
        &self.form
    }

    pub fn into_form(self) -> HomogeneousPolynomial<T> {
        self.form
    }
}

/// Spanning vector of a line in `S_T`, normalized. Errors unless `line` is
/// one-dimensional.
pub(crate) fn line_generator<T: Scalar>(line: &Subspace<T>) -> Result<HomogeneousPolynomial<T>> {
    if line.dim() != 1 {
        return Err(Error::ComplementNotLine(line.dim()));
    }
    // rref rows already have leading coefficient 1
    Ok(line.basis_polys().remove(0))
}

/// `B_W`, spanning `(I_W)_T^⊥`.
pub fn associated_form<T: Scalar>(w: &GeneratorTuple<T>) -> Result<AssociatedForm<T>> {
    if !is_complete_intersection(w) {
        return Err(Error::NotCompleteIntersection);
    }
    let top = ideal_piece(w, w.socle_degree());
    let form = line_generator(&top.orthogonal_complement())?;
    Ok(AssociatedForm {
        n: w.n(),
        d: w.d(),
        form,
    })
}

/// Matrix of `S_k -> S_{m-k}`, `g |-> g(d/dz) dual`, with one column per
/// monomial of `S_k`.
pub fn catalecticant<T: Scalar>(dual: &HomogeneousPolynomial<T>, k: u32) -> Matrix<T> {
    let n = dual.n();
    let m = dual.degree();
    let target = basis_dim(n, m.saturating_sub(k));
    let columns: Vec<Vec<T>> = mono_basis(n, k)
        .iter()
        .map(|e| {
            HomogeneousPolynomial::monomial(e.clone(), T::one())
                .polar_apply(dual)
                .map(|p| p.coords())
                .unwrap_or_else(|_| vec![T::zero(); target])
        })
        .collect();
    Matrix::from_rows(columns, target)
        .expect("uniform column length")
        .transpose()
}

/// `{g in S_k : g(d/dz) dual = 0}`; all of `S_k` above the degree of `dual`.
pub fn apolar_piece<T: Scalar>(dual: &HomogeneousPolynomial<T>, k: u32) -> Subspace<T> {
    if k > dual.degree() {
        return Subspace::full(dual.n(), k);
    }
    let cat = catalecticant(dual, k);
    Subspace::span(dual.n(), k, cat.kernel().into_rows()).expect("kernel rows have ambient length")
}

/// Checks `apolar_piece(B_W, k) = (I_W)_k` for every `0 <= k <= T + 1`.
pub fn verify_inverse_system<T: Scalar>(w: &GeneratorTuple<T>) -> Result<bool> {
    let b = associated_form(w)?;
    Ok((0..=w.socle_degree() + 1).all(|k| apolar_piece(b.form(), k) == ideal_piece(w, k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;
    type P = HomogeneousPolynomial<Q>;

    fn p(s: &str, n: usize) -> P {
        P::parse(s, Some(n)).unwrap()
    }

    fn tuple(items: &[&str], n: usize) -> GeneratorTuple<Q> {
        GeneratorTuple::new(items.iter().map(|s| p(s, n)).collect()).unwrap()
    }

    #[test]
    fn squares_have_the_product_of_variables_as_associated_form() {
        let b = associated_form(&tuple(&["x0^2", "x1^2", "x2^2"], 2)).unwrap();
        assert_eq!(b.form(), &p("x0*x1*x2", 2));
        assert_eq!(b.socle_degree(), 3);
        let b = associated_form(&tuple(&["x0^2", "x1^2"], 1)).unwrap();
        assert_eq!(b.form(), &p("x0*x1", 1));
    }

    #[test]
    fn non_complete_intersection_is_rejected() {
        let cone = tuple(&["x0^2", "x0*x1", "x0*x2"], 2);
        assert!(matches!(
            associated_form(&cone),
            Err(Error::NotCompleteIntersection)
        ));
        assert!(verify_inverse_system(&cone).is_err());
    }

    #[test]
    fn apolar_pieces_of_the_triple_product() {
        let b = p("x0*x1*x2", 2);
        assert_eq!(
            apolar_piece(&b, 2),
            tuple(&["x0^2", "x1^2", "x2^2"], 2).span()
        );
        assert!(apolar_piece(&b, 4).is_full());
        assert!(apolar_piece(&b, 0).is_zero());
        let z0sq = p("x0^2", 1);
        assert_eq!(
            apolar_piece(&z0sq, 1),
            Subspace::span_polys(1, 1, &[p("x1", 1)]).unwrap()
        );
    }

    #[test]
    fn inverse_system_of_squares_and_a_mixed_tuple() {
        assert!(verify_inverse_system(&tuple(&["x0^2", "x1^2", "x2^2"], 2)).unwrap());
        let w = tuple(&["x0^2 + x1*x2", "x1^2 - x0*x2", "x2^2 + 2*x0*x1"], 2);
        assert!(is_complete_intersection(&w));
        assert!(verify_inverse_system(&w).unwrap());
    }

    #[test]
    fn apolar_pieces_are_closed_under_multiplication() {
        let b = p("x0^3*x1 + 2*x0*x1^2*x2 - x2^4", 2);
        for k in 0..4 {
            let lower = apolar_piece(&b, k);
            let upper = apolar_piece(&b, k + 1);
            for g in lower.basis_polys() {
                for i in 0..=2 {
                    let lifted = g.multiply(&P::variable(2, i)).unwrap();
                    assert!(upper.contains_poly(&lifted).unwrap());
                }
            }
        }
    }
}
