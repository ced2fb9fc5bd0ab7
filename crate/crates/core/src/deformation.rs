//! Differentials of the maps `W -> (I_W)_k` and `f -> E_k(f)`.
//!
//! A tangent vector at `W` is a tuple `h = (h_0, ..., h_n)` of forms of
//! degree `d - 1`, taken modulo `span(W)` componentwise. Its image is the
//! linear map `(I_W)_k -> S_k / (I_W)_k` sending `b = sum u_i g_i` to
//! `sum u_i h_i`. The representation of `b` is not unique, but two of them
//! differ by a syzygy of the `g_i`; for a complete intersection every
//! syzygy is a combination of Koszul syzygies `g_j e_i - g_i e_j`, whose
//! images `g_j h_i - g_i h_j` lie in `I_W`, so the induced map does not
//! depend on the choice.
//!
//! At a form `f` the same construction with `g_i = df/dx_i` and
//! `h_i = dh/dx_i` gives the differential of `f -> E_k(f)`, on the tangent
//! space `S_d / <f>`.
//!
//! The differential is injective exactly when the assembled kernel is zero.

use crate::error::{Error, Result};
use crate::ideal::{
    hilbert_profile, is_complete_intersection, is_smooth, jacobian_gens, GeneratorTuple,
};
use crate::linalg::elimination::{mul_mod, rank_mod, MODULUS};
use crate::linalg::{Matrix, QuotientMap, Subspace};
use crate::monomial::{basis_dim, mono_basis, ExponentVector};
use crate::poly::HomogeneousPolynomial;
use crate::scalar::Scalar;

/// Chosen representations `b_j = sum_i u_{j,i} g_i` for the canonical basis
/// `b_j` of `(I_W)_k`.
#[derive(Debug, Clone)]
pub struct PieceRepresentation<T> {
    gens: Vec<HomogeneousPolynomial<T>>,
    piece: Subspace<T>,
    projection: QuotientMap<T>,
    multiplier_degree: u32,
    multiplication: Matrix<T>,
    representations: Vec<Vec<HomogeneousPolynomial<T>>>,
    modular: Option<ModularImages>,
}

/// The representations and the quotient projection reduced modulo
/// [`MODULUS`].
#[derive(Debug, Clone)]
struct ModularImages {
    projection: Vec<Vec<u64>>,
    /// per basis vector, per generator: the terms of `u_{j,i}`
    representations: Vec<Vec<Vec<(ExponentVector, u64)>>>,
}

impl ModularImages {
    fn new<T: Scalar>(
        projection: &QuotientMap<T>,
        representations: &[Vec<HomogeneousPolynomial<T>>],
    ) -> Option<Self> {
        let reduce_poly = |u: &HomogeneousPolynomial<T>| {
            u.terms()
                .map(|(e, c)| Some((e.clone(), c.residue(MODULUS)?)))
                .collect::<Option<Vec<_>>>()
        };
        Some(ModularImages {
            projection: projection.residues(MODULUS)?,
            representations: representations
                .iter()
                .map(|u| u.iter().map(reduce_poly).collect())
                .collect::<Option<_>>()?,
        })
    }

    /// Flattened image matrix modulo the prime.
    fn image<T: Scalar>(
        &self,
        directions: &[HomogeneousPolynomial<T>],
        codim: usize,
    ) -> Option<Vec<u64>> {
        let h = directions
            .iter()
            .map(|d| {
                d.terms()
                    .map(|(e, c)| Some((e, c.residue(MODULUS)?)))
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>()?;
        let mut out = vec![0u64; self.representations.len() * codim];
        for (u, row) in self.representations.iter().zip(out.chunks_mut(codim)) {
            for (u_i, h_i) in u.iter().zip(&h) {
                for (mu, a) in u_i {
                    for (e, b) in h_i {
                        let coefficient = mul_mod(*a, *b, MODULUS);
                        let image = &self.projection[mu.mul(e).index()];
                        for (o, &x) in row.iter_mut().zip(image) {
                            *o = (*o + mul_mod(coefficient, x, MODULUS)) % MODULUS;
                        }
                    }
                }
            }
        }
        Some(out)
    }
}

impl<T: Scalar> PieceRepresentation<T> {
    /// `gens` must be nonempty and share a degree `e <= k`.
    pub fn new(gens: &[HomogeneousPolynomial<T>], k: u32) -> Result<Self> {
        let first = gens
            .first()
            .ok_or_else(|| Error::InvalidInput("no generators".into()))?;
        let (n, e) = (first.n(), first.degree());
        if k < e {
            return Err(Error::OutOfRange {
                what: "k",
                value: i64::from(k),
                range: format!(">= {e}"),
            });
        }
        let multiplier_degree = k - e;
        let multipliers = mono_basis(n, multiplier_degree);
        // column (i, u) of the multiplication map holds u * g_i
        let columns: Vec<Vec<T>> = gens
            .iter()
            .flat_map(|g| multipliers.iter().map(move |u| g.shift(u).coords()))
            .collect();
        let multiplication = Matrix::from_rows(columns, basis_dim(n, k))?.transpose();
        let piece = Subspace::span(n, k, multiplication.transpose().into_rows())?;
        let rhs = piece.basis().rows().to_vec();
        let representations: Vec<_> = multiplication
            .solve_many(&rhs)
            .into_iter()
            .map(|sol| {
                let sol = sol.expect("basis vectors lie in the image");
                split(&sol, n, multiplier_degree, gens.len())
            })
            .collect();
        let projection = piece.quotient_map();
        let modular = ModularImages::new(&projection, &representations);
        Ok(PieceRepresentation {
            gens: gens.to_vec(),
            projection,
            modular,
            piece,
            multiplier_degree,
            multiplication,
            representations,
        })
    }

    pub fn gens(&self) -> &[HomogeneousPolynomial<T>] {
        &self.gens
    }

    /// The piece `(I_W)_k` in canonical form.
    pub fn piece(&self) -> &Subspace<T> {
        &self.piece
    }

    /// `u_{j, .}` for the `j`-th canonical basis vector.
    pub fn representation(&self, j: usize) -> &[HomogeneousPolynomial<T>] {
        &self.representations[j]
    }

    /// Some `u` with `sum u_i g_i = b`, if `b` lies in the piece.
    pub fn solve(&self, b: &HomogeneousPolynomial<T>) -> Option<Vec<HomogeneousPolynomial<T>>> {
        let n = self.piece.n();
        self.multiplication
            .solve(&b.coords())
            .map(|sol| split(&sol, n, self.multiplier_degree, self.gens.len()))
    }

    /// Basis of all `u` with `sum u_i g_i = 0` in degree `k`.
    pub fn syzygies(&self) -> Vec<Vec<HomogeneousPolynomial<T>>> {
        let n = self.piece.n();
        self.multiplication
            .kernel()
            .rows()
            .iter()
            .map(|v| split(v, n, self.multiplier_degree, self.gens.len()))
            .collect()
    }

    /// Matrix of `b_j |-> sum_i u_{j,i} h_i mod (I_W)_k`: one row per basis
    /// vector of the piece, one column per quotient coordinate.
    pub fn image_matrix(&self, directions: &[HomogeneousPolynomial<T>]) -> Result<Matrix<T>> {
        let rows = self
            .representations
            .iter()
            .map(|u| Ok(self.projection.apply(&combine(u, directions)?)))
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(rows, self.piece.codim())
    }

    /// Whether the image matrices of `tangent_basis` are linearly
    /// independent modulo a large prime. A `true` answer proves they are
    /// independent over the rationals; `false` proves nothing.
    fn independent_mod_prime(&self, tangent_basis: &[Vec<HomogeneousPolynomial<T>>]) -> bool {
        let Some(modular) = &self.modular else {
            return false;
        };
        let codim = self.piece.codim();
        let height = self.piece.dim() * codim;
        if tangent_basis.len() > height {
            return false;
        }
        let Some(columns) = tangent_basis
            .iter()
            .map(|directions| modular.image(directions, codim))
            .collect::<Option<Vec<_>>>()
        else {
            return false;
        };
        rank_mod(columns, height) == tangent_basis.len()
    }
}

fn split<T: Scalar>(
    flat: &[T],
    n: usize,
    degree: u32,
    parts: usize,
) -> Vec<HomogeneousPolynomial<T>> {
    let m = basis_dim(n, degree);
    (0..parts)
        .map(|i| HomogeneousPolynomial::from_coords(n, degree, &flat[i * m..(i + 1) * m]))
        .collect()
}

/// `sum_i u_i h_i`.
pub fn combine<T: Scalar>(
    u: &[HomogeneousPolynomial<T>],
    h: &[HomogeneousPolynomial<T>],
) -> Result<HomogeneousPolynomial<T>> {
    if u.len() != h.len() || u.is_empty() {
        return Err(Error::InvalidInput(format!(
            "{} multipliers for {} directions",
            u.len(),
            h.len()
        )));
    }
    let mut sum = HomogeneousPolynomial::zero(u[0].n(), u[0].degree() + h[0].degree());
    for (a, b) in u.iter().zip(h) {
        sum = sum.checked_add(&a.multiply(b)?)?;
    }
    Ok(sum)
}

/// Tangent vector at `W`, with every component reduced modulo `span(W)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentVectorW<T> {
    h: Vec<HomogeneousPolynomial<T>>,
}

impl<T: Scalar> TangentVectorW<T> {
    pub fn new(w: &GeneratorTuple<T>, h: Vec<HomogeneousPolynomial<T>>) -> Result<Self> {
        if h.len() != w.gens().len() {
            return Err(Error::InvalidInput(format!(
                "tangent vector has {} components, expected {}",
                h.len(),
                w.gens().len()
            )));
        }
        let span = w.span();
        let h = h
            .into_iter()
            .map(|hi| {
                if hi.n() != w.n() || hi.degree() + 1 != w.d() {
                    return Err(Error::AmbientMismatch {
                        left_n: w.n(),
                        left_k: w.d() - 1,
                        right_n: hi.n(),
                        right_k: hi.degree(),
                    });
                }
                let reduced = span.reduce(&hi.coords());
                Ok(HomogeneousPolynomial::from_coords(
                    w.n(),
                    w.d() - 1,
                    &reduced,
                ))
            })
            .collect::<Result<_>>()?;
        Ok(TangentVectorW { h })
    }

    pub fn components(&self) -> &[HomogeneousPolynomial<T>] {
        &self.h
    }

    pub fn is_zero(&self) -> bool {
        self.h.iter().all(HomogeneousPolynomial::is_zero)
    }

    /// The tuple `g_i + t h_i` along this direction.
    pub fn perturb(&self, w: &GeneratorTuple<T>, t: &T) -> Result<GeneratorTuple<T>> {
        let gens = w
            .gens()
            .iter()
            .zip(&self.h)
            .map(|(g, h)| g.checked_add(&h.scale(t)))
            .collect::<Result<_>>()?;
        GeneratorTuple::new(gens)
    }
}

/// Tangent vector at `f`, reduced so that the coefficient of the leading
/// monomial of `f` is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentVectorF<T> {
    h: HomogeneousPolynomial<T>,
}

impl<T: Scalar> TangentVectorF<T> {
    pub fn new(f: &HomogeneousPolynomial<T>, h: HomogeneousPolynomial<T>) -> Result<Self> {
        let (lead, lead_coeff) = f
            .leading_term()
            .ok_or_else(|| Error::InvalidInput("zero form has no tangent space".into()))?;
        let factor = h.coefficient(lead) / lead_coeff.clone();
        Ok(TangentVectorF {
            h: h.checked_sub(&f.scale(&factor))?,
        })
    }

    pub fn form(&self) -> &HomogeneousPolynomial<T> {
        &self.h
    }

    pub fn is_zero(&self) -> bool {
        self.h.is_zero()
    }
}

/// Kernel of a differential: dimensions and a basis of canonical tangent
/// vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelReport<V> {
    pub k: u32,
    pub tangent_dim: usize,
    pub kernel_dim: usize,
    pub kernel_basis: Vec<V>,
}

fn check_degree_range(n: usize, d: u32, k: u32) -> Result<()> {
    let top = hilbert_profile(n, d)?.socle_degree();
    if k + 1 < d || k > top {
        return Err(Error::OutOfRange {
            what: "k",
            value: i64::from(k),
            range: format!("[{}, {top}]", d - 1),
        });
    }
    Ok(())
}

/// The matrix of `(dPsi_k)_W(h)`.
pub fn tangent_image_w<T: Scalar>(
    w: &GeneratorTuple<T>,
    h: &TangentVectorW<T>,
    k: u32,
) -> Result<Matrix<T>> {
    if !is_complete_intersection(w) {
        return Err(Error::NotCompleteIntersection);
    }
    check_degree_range(w.n(), w.d(), k)?;
    PieceRepresentation::new(w.gens(), k)?.image_matrix(h.components())
}

/// Assembles the linear map `tangent basis -> flattened image matrices`
/// and returns its kernel, as coefficient vectors over the tangent basis.
fn kernel_over<T: Scalar>(
    rep: &PieceRepresentation<T>,
    tangent_basis: &[Vec<HomogeneousPolynomial<T>>],
) -> Result<Matrix<T>> {
    if rep.independent_mod_prime(tangent_basis) {
        return Ok(Matrix::zeros(0, tangent_basis.len()));
    }
    let columns = tangent_basis
        .iter()
        .map(|directions| {
            let image = rep.image_matrix(directions)?;
            Ok(image.into_rows().into_iter().flatten().collect::<Vec<T>>())
        })
        .collect::<Result<Vec<_>>>()?;
    let height = rep.piece().dim() * rep.piece().codim();
    Ok(Matrix::from_rows(columns, height)?.transpose().kernel())
}

/// Kernel of the differential of `W -> (I_W)_k` at a complete intersection.
pub fn dpsi_w_kernel<T: Scalar>(
    w: &GeneratorTuple<T>,
    k: u32,
) -> Result<KernelReport<TangentVectorW<T>>> {
    let (n, d) = (w.n(), w.d());
    check_degree_range(n, d, k)?;
    if !is_complete_intersection(w) {
        return Err(Error::NotCompleteIntersection);
    }
    let rep = PieceRepresentation::new(w.gens(), k)?;
    let span = w.span();
    let monomials = mono_basis(n, d - 1);
    let zero = HomogeneousPolynomial::zero(n, d - 1);
    // canonical coordinates: a free monomial of S_{d-1} in one slot
    let basis: Vec<Vec<HomogeneousPolynomial<T>>> = (0..=n)
        .flat_map(|slot| {
            let zero = zero.clone();
            let monomials = monomials.clone();
            span.free_columns().into_iter().map(move |c| {
                let mut h = vec![zero.clone(); n + 1];
                h[slot] = HomogeneousPolynomial::monomial(monomials[c].clone(), T::one());
                h
            })
        })
        .collect();
    let kernel = kernel_over(&rep, &basis)?;
    let kernel_basis = kernel
        .rows()
        .iter()
        .map(|coeffs| {
            let mut h = vec![zero.clone(); n + 1];
            for (c, dir) in coeffs.iter().zip(&basis) {
                if c.is_zero() {
                    continue;
                }
                for (slot, part) in h.iter_mut().zip(dir) {
                    *slot = slot.checked_add(&part.scale(c))?;
                }
            }
            TangentVectorW::new(w, h)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(KernelReport {
        k,
        tangent_dim: basis.len(),
        kernel_dim: kernel_basis.len(),
        kernel_basis,
    })
}

/// Kernel of the differential of `f -> E_k(f)` at a smooth form, on `S_d / <f>`.
pub fn dpsi_f_kernel<T: Scalar>(
    f: &HomogeneousPolynomial<T>,
    k: u32,
) -> Result<KernelReport<TangentVectorF<T>>> {
    let (n, d) = (f.n(), f.degree());
    check_degree_range(n, d, k)?;
    if !is_smooth(f) {
        return Err(Error::NotSmooth);
    }
    let w = jacobian_gens(f)?;
    let rep = PieceRepresentation::new(w.gens(), k)?;
    let lead = f
        .leading_term()
        .expect("smooth forms are nonzero")
        .0
        .clone();
    let monomials: Vec<ExponentVector> = mono_basis(n, d)
        .iter()
        .filter(|e| **e != lead)
        .cloned()
        .collect();
    let basis = monomials
        .iter()
        .map(|e| HomogeneousPolynomial::monomial(e.clone(), T::one()).gradient())
        .collect::<Result<Vec<_>>>()?;
    let kernel = kernel_over(&rep, &basis)?;
    let kernel_basis = kernel
        .rows()
        .iter()
        .map(|coeffs| {
            let terms = monomials
                .iter()
                .zip(coeffs)
                .map(|(e, c)| (e.clone(), c.clone()));
            TangentVectorF::new(f, HomogeneousPolynomial::from_terms(n, d, terms)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(KernelReport {
        k,
        tangent_dim: monomials.len(),
        kernel_dim: kernel_basis.len(),
        kernel_basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::ideal_piece;
    use num_rational::BigRational;

    type Q = BigRational;
    type P = HomogeneousPolynomial<Q>;

    fn p(s: &str, n: usize) -> P {
        P::parse(s, Some(n)).unwrap()
    }

    fn squares() -> GeneratorTuple<Q> {
        GeneratorTuple::new(vec![p("x0^2", 2), p("x1^2", 2), p("x2^2", 2)]).unwrap()
    }

    fn zero_matrix(m: &Matrix<Q>) -> bool {
        m.rows().iter().flatten().all(|x| *x == Q::from_i64(0))
    }

    #[test]
    fn zero_direction_gives_zero_map() {
        let w = squares();
        let h = TangentVectorW::new(&w, vec![P::zero(2, 2); 3]).unwrap();
        assert!(zero_matrix(&tangent_image_w(&w, &h, 3).unwrap()));
    }

    #[test]
    fn directions_inside_w_are_zero_tangent_vectors() {
        let w = squares();
        let h = TangentVectorW::new(&w, vec![p("x1^2", 2), p("2*x0^2 - x2^2", 2), p("x0^2", 2)])
            .unwrap();
        assert!(h.is_zero());
        assert!(zero_matrix(&tangent_image_w(&w, &h, 2).unwrap()));
    }

    #[test]
    fn moving_one_square_is_seen_in_degree_three() {
        let w = squares();
        let h = TangentVectorW::new(&w, vec![p("x1*x2", 2), P::zero(2, 2), P::zero(2, 2)]).unwrap();
        let image = tangent_image_w(&w, &h, 3).unwrap();
        assert!(image.rank() > 0);
    }

    #[test]
    fn squares_have_injective_differential() {
        let w = squares();
        for k in 2..=3 {
            let report = dpsi_w_kernel(&w, k).unwrap();
            assert_eq!(report.tangent_dim, 3 * (6 - 3));
            assert_eq!(report.kernel_dim, 0, "k = {k}");
        }
        assert!(dpsi_w_kernel(&w, 4).is_err());
        assert!(dpsi_w_kernel(&w, 1).is_err());
    }

    #[test]
    fn fermat_kernel_contains_the_fiber_directions() {
        let f = p("x0^3 + x1^3 + x2^3", 2);
        let report = dpsi_f_kernel(&f, 2).unwrap();
        assert_eq!(report.tangent_dim, 9);
        assert!(report.kernel_dim >= 2);
        let span =
            Subspace::span_polys(2, 3, report.kernel_basis.iter().map(|v| v.form())).unwrap();
        assert!(span.contains_poly(&p("x1^3", 2)).unwrap());
        assert!(span.contains_poly(&p("x2^3", 2)).unwrap());
    }

    #[test]
    fn the_form_itself_is_the_zero_tangent_vector() {
        let f = p("x0^3 + x1^3 + x2^3 + x0*x1*x2", 2);
        assert!(TangentVectorF::new(&f, f.scale(&Q::from_i64(4)))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn representations_reproduce_the_basis() {
        let w = squares();
        let rep = PieceRepresentation::new(w.gens(), 3).unwrap();
        for (j, b) in rep.piece().basis_polys().iter().enumerate() {
            assert_eq!(&combine(rep.representation(j), w.gens()).unwrap(), b);
        }
        // Koszul syzygies x_j^2 e_i - x_i^2 e_j live in degree 4, none in degree 3
        assert!(rep.syzygies().is_empty());
        let rep4 = PieceRepresentation::new(w.gens(), 4).unwrap();
        assert_eq!(rep4.syzygies().len(), 3);
    }

    #[test]
    fn moving_off_the_kernel_changes_the_piece() {
        let w = squares();
        let h = TangentVectorW::new(&w, vec![p("x1*x2", 2), P::zero(2, 2), P::zero(2, 2)]).unwrap();
        let moved = h.perturb(&w, &Q::new(1.into(), 10.into())).unwrap();
        assert_ne!(ideal_piece(&moved, 3), ideal_piece(&w, 3));
    }
}
