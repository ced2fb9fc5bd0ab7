//! Recovering generators and forms from one graded piece.
//!
//! Given `E = (I_W)_k` for a complete intersection `W` and some
//! `d - 1 <= k <= T`, the route is fixed:
//!
//! 1. lift `E` to degree `T` by multiplying with all monomials of degree
//!    `T - k` (the ideal is generated in degree `d - 1`, so this gives
//!    `(I_W)_T`);
//! 2. take the orthogonal complement, a line spanned by the associated form
//!    `B_W`;
//! 3. read off `W` as the degree `d - 1` piece of the apolar ideal of `B_W`;
//! 4. solve the linear system `{g in S_d : dg/dx_i in W for all i}`.
//!
//! Step 4 is the fiber. For a form that is not a Sebastiani-Thom sum it is
//! the line through the form; for a maximal decomposition into `s` summands
//! it is the `s`-dimensional span of the summands.

use crate::error::{Error, Result};
use crate::ideal::{hilbert_profile, ideal_piece, jacobian_gens, GeneratorTuple};
use crate::inverse::{apolar_piece, line_generator};
use crate::linalg::{Matrix, Subspace};
use crate::monomial::{basis_dim, mono_basis};
use crate::poly::HomogeneousPolynomial;
use crate::scalar::Scalar;
use crate::st::st_report;

/// Linear space of forms of degree `d` whose partials all lie in a fixed `W`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberResult<T> {
    d: u32,
    space: Subspace<T>,
}

impl<T: Scalar> FiberResult<T> {
    pub fn d(&self) -> u32 {
        self.d
    }

    /// Dimension of the fiber; the number of summands in a maximal
    /// Sebastiani-Thom decomposition when `W` comes from a smooth form.
    pub fn s(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &Subspace<T> {
        &self.space
    }

    /// Canonical basis; each element has leading coefficient 1.
    pub fn basis(&self) -> Vec<HomogeneousPolynomial<T>> {
        self.space.basis_polys()
    }

    /// The reconstructed form when the fiber is a single line.
    pub fn unique(&self) -> Option<HomogeneousPolynomial<T>> {
        (self.s() == 1).then(|| self.basis().remove(0))
    }
}

/// `S_{m-k} * E`, the piece in degree `m` of the ideal generated by `E`.
pub fn lift_piece<T: Scalar>(piece: &Subspace<T>, m: u32) -> Result<Subspace<T>> {
    let k = piece.degree();
    if m < k {
        return Err(Error::OutOfRange {
            what: "target degree",
            value: i64::from(m),
            range: format!(">= {k}"),
        });
    }
    if m == k {
        return Ok(piece.clone());
    }
    let n = piece.n();
    let mut rows = Matrix::zeros(0, basis_dim(n, m));
    let basis = piece.basis_polys();
    for u in mono_basis(n, m - k).iter() {
        for b in &basis {
            rows.push_row(b.shift(u).coords());
        }
    }
    Subspace::span(n, m, rows.into_rows())
}

/// Recovers `W` from `E = (I_W)_k`.
///
/// The input is validated: `d - 1 <= k <= T`, `dim E = b_{n,d}(k)`, the
/// lift to degree `T + 1` fills `S_{T+1}`, and the recovered `W` must
/// regenerate `E` exactly.
pub fn recover_generators<T: Scalar>(piece: &Subspace<T>, d: u32) -> Result<GeneratorTuple<T>> {
    let n = piece.n();
    let k = piece.degree();
    let profile = hilbert_profile(n, d)?;
    let top = profile.socle_degree();
    if k + 1 < d || k > top {
        return Err(Error::OutOfRange {
            what: "k",
            value: i64::from(k),
            range: format!("[{}, {top}]", d - 1),
        });
    }
    let expected = profile.b(k) as usize;
    if piece.dim() != expected {
        return Err(Error::PieceDimension {
            expected,
            found: piece.dim(),
        });
    }
    if !lift_piece(piece, top + 1)?.is_full() {
        return Err(Error::NotCompleteIntersection);
    }
    let socle_line = lift_piece(piece, top)?.orthogonal_complement();
    let dual = line_generator(&socle_line)?;
    let span = apolar_piece(&dual, d - 1);
    if span.dim() != n + 1 {
        return Err(Error::NotAnIdealPiece);
    }
    let w = GeneratorTuple::new(span.basis_polys()).map_err(|_| Error::NotAnIdealPiece)?;
    if &ideal_piece(&w, k) != piece {
        return Err(Error::NotAnIdealPiece);
    }
    Ok(w)
}

/// `{g in S_d : dg/dx_i in span(W) for all i}`.
pub fn fiber<T: Scalar>(w: &GeneratorTuple<T>) -> FiberResult<T> {
    let n = w.n();
    let d = w.d();
    let span = w.span();
    let free = span.free_columns().len();
    let monomials = mono_basis(n, d);
    // one column per monomial of S_d, one row per (variable, quotient coordinate)
    let mut constraints = Matrix::zeros((n + 1) * free, monomials.len());
    for (col, e) in monomials.iter().enumerate() {
        let mono = HomogeneousPolynomial::monomial(e.clone(), T::one());
        for i in 0..=n {
            if e.get(i) == 0 {
                continue;
            }
            let derivative = mono.partial(i).expect("index in range");
            for (j, value) in span
                .quotient_coords(&derivative.coords())
                .into_iter()
                .enumerate()
            {
                if !value.is_zero() {
                    constraints.set(i * free + j, col, value);
                }
            }
        }
    }
    let space = Subspace::span(n, d, constraints.kernel().into_rows())
        .expect("kernel rows have ambient length");
    FiberResult { d, space }
}

/// Fiber over the piece `E`: the forms whose degree-`k` Jacobian piece is `E`
/// (up to taking the linear span).
pub fn reconstruct_poly<T: Scalar>(piece: &Subspace<T>, d: u32) -> Result<FiberResult<T>> {
    Ok(fiber(&recover_generators(piece, d)?))
}

/// Outcome of testing `E_k(h) ⊆ E_k(f) => h ∝ f` on one `h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContainmentCheck {
    /// `E_k(h) ⊆ E_k(f)`.
    pub hypothesis: bool,
    /// `h` is a nonzero multiple of `f`.
    pub conclusion: bool,
}

impl ContainmentCheck {
    pub fn implication_holds(&self) -> bool {
        !self.hypothesis || self.conclusion
    }
}

/// Precomputed `E_k(f)` for a smooth form with one-dimensional fiber, to
/// test many `h` against.
#[derive(Debug, Clone)]
pub struct ContainmentTest<T> {
    f: HomogeneousPolynomial<T>,
    piece: Subspace<T>,
}

impl<T: Scalar> ContainmentTest<T> {
    pub fn new(f: &HomogeneousPolynomial<T>, k: u32) -> Result<Self> {
        let report = st_report(f)?;
        if report.is_st {
            return Err(Error::SebastianiThom { s: report.s });
        }
        let d = f.degree();
        let top = crate::ideal::socle_degree(f.n(), d);
        if k + 1 < d || k > top {
            return Err(Error::OutOfRange {
                what: "k",
                value: i64::from(k),
                range: format!("[{}, {top}]", d - 1),
            });
        }
        Ok(ContainmentTest {
            f: f.clone(),
            piece: ideal_piece(&jacobian_gens(f)?, k),
        })
    }

    pub fn check(&self, h: &HomogeneousPolynomial<T>) -> Result<ContainmentCheck> {
        if h.n() != self.f.n() || h.degree() != self.f.degree() {
            return Err(Error::AmbientMismatch {
                left_n: self.f.n(),
                left_k: self.f.degree(),
                right_n: h.n(),
                right_k: h.degree(),
            });
        }
        let k = self.piece.degree();
        let gen_degree = h.degree() - 1;
        // E_k(h) is spanned by the u * dh/dx_i, so test those one at a time
        let partials = h.gradient()?;
        let multipliers = mono_basis(h.n(), k - gen_degree);
        let hypothesis = multipliers.iter().all(|u| {
            partials
                .iter()
                .all(|g| self.piece.contains_vector(&g.shift(u).coords()))
        });
        Ok(ContainmentCheck {
            hypothesis,
            conclusion: h.is_scalar_multiple_of(&self.f),
        })
    }
}

/// One-shot form of [`ContainmentTest`]. `f` must be smooth and not of
/// Sebastiani-Thom type, and `d - 1 <= k <= T`.
pub fn containment_implies_equal<T: Scalar>(
    h: &HomogeneousPolynomial<T>,
    f: &HomogeneousPolynomial<T>,
    k: u32,
) -> Result<ContainmentCheck> {
    ContainmentTest::new(f, k)?.check(h)
}
