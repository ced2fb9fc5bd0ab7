//! Graded pieces of ideals generated by `n + 1` forms of degree `d - 1`.
//!
//! The ideal `I_W` of a generator tuple is never represented as a whole;
//! each graded piece `(I_W)_k` is computed directly as the span of the
//! monomial multiples `u * g_i` with `deg u = k - (d - 1)`. For a complete
//! intersection the quotient `S / I_W` is Artinian Gorenstein with socle
//! degree `T = (n + 1)(d - 2)` and Hilbert function given by
//! [`hilbert_profile`], independent of the particular tuple.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::monomial::{basis_dim, mono_basis};
use crate::poly::HomogeneousPolynomial;
use crate::scalar::Scalar;

/// `T = (n + 1)(d - 2)`, the top degree of a complete-intersection quotient.
pub fn socle_degree(n: usize, d: u32) -> u32 {
    (n as u32 + 1) * d.saturating_sub(2)
}

/// `n + 1` linearly independent forms of degree `d - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorTuple<T> {
    n: usize,
    d: u32,
    gens: Vec<HomogeneousPolynomial<T>>,
}

impl<T: Scalar> GeneratorTuple<T> {
    pub fn new(gens: Vec<HomogeneousPolynomial<T>>) -> Result<Self> {
        let Some(first) = gens.first() else {
            return Err(Error::InvalidInput("empty generator tuple".into()));
        };
        let (n, e) = (first.n(), first.degree());
        if gens.len() != n + 1 {
            return Err(Error::InvalidInput(format!(
                "expected {} generators for {} variables, found {}",
                n + 1,
                n + 1,
                gens.len()
            )));
        }
        for g in &gens {
            if g.n() != n {
                return Err(Error::VariableMismatch {
                    left: n,
                    right: g.n(),
                });
            }
            if g.degree() != e {
                return Err(Error::DegreeMismatch {
                    expected: e,
                    found: g.degree(),
                });
            }
        }
        if e == 0 {
            return Err(Error::OutOfRange {
                what: "generator degree",
                value: 0,
                range: ">= 1".into(),
            });
        }
        let rank = Subspace::span_polys(n, e, &gens)?.dim();
        if rank != n + 1 {
            return Err(Error::DependentGenerators {
                rank,
                expected: n + 1,
            });
        }
        Ok(GeneratorTuple { n, d: e + 1, gens })
    }

    /// Variable count minus one.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Degree of the forms whose Jacobian generators live in this tuple's
    /// degree; the generators themselves have degree `d - 1`.
    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn socle_degree(&self) -> u32 {
        socle_degree(self.n, self.d)
    }

    pub fn gens(&self) -> &[HomogeneousPolynomial<T>] {
        &self.gens
    }

    /// The point `W` of the Grassmannian: the span of the generators in `S_{d-1}`.
    pub fn span(&self) -> Subspace<T> {
        Subspace::span_polys(self.n, self.d - 1, &self.gens).expect("validated generators")
    }

    /// Generators replaced by the canonical basis of their span.
    pub fn canonical(&self) -> Self {
        GeneratorTuple {
            n: self.n,
            d: self.d,
            gens: self.span().basis_polys(),
        }
    }
}

/// Hilbert function `a_{n,d}(k) = dim M_k` of a complete-intersection
/// quotient by forms of degree `d - 1`, for `k = 0..=T+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertProfile {
    n: usize,
    d: u32,
    socle: u32,
    values: Vec<u64>,
}

impl HilbertProfile {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn socle_degree(&self) -> u32 {
        self.socle
    }

    /// `a(0), ..., a(T), a(T + 1) = 0`.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// `a_{n,d}(k)`; zero above the socle degree.
    pub fn a(&self, k: u32) -> u64 {
        self.values.get(k as usize).copied().unwrap_or(0)
    }

    /// `b_{n,d}(k) = dim S_k - a_{n,d}(k)`, the dimension of the ideal piece.
    pub fn b(&self, k: u32) -> u64 {
        basis_dim(self.n, k) as u64 - self.a(k)
    }

    pub fn total(&self) -> u64 {
        self.values.iter().sum()
    }
}

type ProfileCache = RwLock<HashMap<(usize, u32), Arc<HilbertProfile>>>;

/// Coefficients of `((1 - t^{d-1}) / (1 - t))^{n+1}`. Cached per `(n, d)`.
pub fn hilbert_profile(n: usize, d: u32) -> Result<Arc<HilbertProfile>> {
    if n < 1 {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as i64,
            range: ">= 1".into(),
        });
    }
    if d < 2 {
        return Err(Error::OutOfRange {
            what: "d",
            value: i64::from(d),
            range: ">= 2".into(),
        });
    }
    static CACHE: OnceLock<ProfileCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.read().expect("profile cache poisoned").get(&(n, d)) {
        return Ok(Arc::clone(hit));
    }
    let socle = socle_degree(n, d);
    // repeated multiplication by 1 + t + ... + t^{d-2}
    let mut values = vec![1u64];
    for _ in 0..=n {
        let mut next = vec![0u64; values.len() + d as usize - 2];
        for (i, &v) in values.iter().enumerate() {
            for slot in &mut next[i..i + d as usize - 1] {
                *slot += v;
            }
        }
        values = next;
    }
    debug_assert_eq!(values.len(), socle as usize + 1);
    values.push(0);
    let profile = Arc::new(HilbertProfile {
        n,
        d,
        socle,
        values,
    });
    Ok(cache
        .write()
        .expect("profile cache poisoned")
        .entry((n, d))
        .or_insert(profile)
        .clone())
}

/// Span of `u * g` over all monomials `u` of degree `k - deg g` and all `g`
/// in `gens` (which must share one degree and variable count).
pub(crate) fn piece_of<T: Scalar>(
    n: usize,
    gen_degree: u32,
    gens: &[HomogeneousPolynomial<T>],
    k: u32,
) -> Subspace<T> {
    if k < gen_degree {
        return Subspace::zero(n, k);
    }
    let multipliers = mono_basis(n, k - gen_degree);
    let mut m = Matrix::zeros(0, basis_dim(n, k));
    for u in multipliers.iter() {
        for g in gens {
            m.push_row(g.shift(u).coords());
        }
    }
    Subspace::from_matrix(n, k, &m)
}

/// `(I_W)_k`. Zero below the generator degree `d - 1`.
pub fn ideal_piece<T: Scalar>(w: &GeneratorTuple<T>, k: u32) -> Subspace<T> {
    piece_of(w.n, w.d - 1, &w.gens, k)
}

/// The partial derivatives of `f` as a generator tuple.
pub fn jacobian_gens<T: Scalar>(f: &HomogeneousPolynomial<T>) -> Result<GeneratorTuple<T>> {
    if f.degree() < 2 {
        return Err(Error::OutOfRange {
            what: "d",
            value: i64::from(f.degree()),
            range: ">= 2".into(),
        });
    }
    match GeneratorTuple::new(f.gradient()?) {
        Err(Error::DependentGenerators { .. }) => Err(Error::DependentPartials),
        other => other,
    }
}

/// `E_k(f) = J(f) ∩ S_k`.
pub fn jacobian_piece<T: Scalar>(f: &HomogeneousPolynomial<T>, k: u32) -> Result<Subspace<T>> {
    Ok(ideal_piece(&jacobian_gens(f)?, k))
}

/// Whether `I_W` is a complete intersection, decided by the Artinian test
/// `(I_W)_{T+1} = S_{T+1}`.
pub fn is_complete_intersection<T: Scalar>(w: &GeneratorTuple<T>) -> bool {
    ideal_piece(w, w.socle_degree() + 1).is_full()
}

/// Smoothness of the hypersurface `f = 0`: independent partials generating
/// a complete intersection.
pub fn is_smooth<T: Scalar>(f: &HomogeneousPolynomial<T>) -> bool {
    match jacobian_gens(f) {
        Ok(w) => is_complete_intersection(&w),
        Err(_) => false,
    }
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

    /// Direct expansion of `(1 + t + ... + t^{d-2})^{n+1}` by counting
    /// exponent tuples with entries in `0..=d-2`.
    fn brute_profile(n: usize, d: u32) -> Vec<u64> {
        let top = (n as u32 + 1) * (d - 2);
        let mut counts = vec![0u64; top as usize + 1];
        let mut digits = vec![0u32; n + 1];
        loop {
            counts[digits.iter().sum::<u32>() as usize] += 1;
            let mut i = 0;
            loop {
                if i == digits.len() {
                    return counts;
                }
                digits[i] += 1;
                if digits[i] <= d - 2 {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn profiles_of_small_cases() {
        let h = hilbert_profile(2, 3).unwrap();
        assert_eq!(h.values(), [1, 3, 3, 1, 0]);
        assert_eq!(h.socle_degree(), 3);
        assert_eq!(h.total(), 8);
        assert_eq!(
            hilbert_profile(2, 4).unwrap().values(),
            [1, 3, 6, 7, 6, 3, 1, 0]
        );
        assert_eq!(hilbert_profile(1, 3).unwrap().values(), [1, 2, 1, 0]);
    }

    #[test]
    fn profiles_match_brute_force_and_are_symmetric() {
        for n in 1..=3 {
            for d in 2..=6 {
                let h = hilbert_profile(n, d).unwrap();
                let t = h.socle_degree();
                assert_eq!(&h.values()[..=t as usize], brute_profile(n, d).as_slice());
                assert_eq!(h.a(t + 1), 0);
                assert_eq!(h.total(), u64::from(d - 1).pow(n as u32 + 1));
                for k in 0..=t {
                    assert_eq!(h.a(k), h.a(t - k));
                }
            }
        }
    }

    #[test]
    fn profile_rejects_degenerate_parameters() {
        assert!(hilbert_profile(0, 3).is_err());
        assert!(hilbert_profile(2, 1).is_err());
    }

    #[test]
    fn squares_ideal_pieces() {
        let w = tuple(&["x0^2", "x1^2", "x2^2"], 2);
        let i2 = ideal_piece(&w, 2);
        assert_eq!(i2, w.span());
        assert_eq!(i2.dim(), 3);
        // x_i^2 x_j: three choices of i, three of j
        let i3 = ideal_piece(&w, 3);
        assert_eq!(i3.dim(), 9);
        let missing = p("x0*x1*x2", 2);
        assert!(!i3.contains_poly(&missing).unwrap());
        assert!(ideal_piece(&w, 4).is_full());
        assert!(ideal_piece(&w, 1).is_zero());
    }

    #[test]
    fn fermat_jacobian_pieces() {
        let f = p("x0^3 + x1^3 + x2^3", 2);
        let e2 = jacobian_piece(&f, 2).unwrap();
        assert_eq!(e2, tuple(&["x0^2", "x1^2", "x2^2"], 2).span());
        assert_eq!(jacobian_piece(&f, 3).unwrap().dim(), 9);
        let quartic = p("x0^4 + x1^4 + x2^4", 2);
        assert_eq!(jacobian_piece(&quartic, 6).unwrap().dim(), 27);
    }

    #[test]
    fn complete_intersection_test() {
        assert!(is_complete_intersection(&tuple(
            &["x0^2", "x1^2", "x2^2"],
            2
        )));
        let cone = tuple(&["x0^2", "x0*x1", "x0*x2"], 2);
        assert!(!is_complete_intersection(&cone));
        assert!(!ideal_piece(&cone, 4).contains_poly(&p("x1^4", 2)).unwrap());
    }

    #[test]
    fn smoothness() {
        assert!(is_smooth(&p("x0^3 + x1^3 + x2^3", 2)));
        assert!(!is_smooth(&p("x0^3", 2)));
        let hesse = p("x0^3 + x1^3 + x2^3 - 3*x0*x1*x2", 2);
        assert!(!is_smooth(&hesse));
        // every partial vanishes at (1:1:1)
        for g in hesse.gradient().unwrap() {
            let value = g
                .terms()
                .fold(Q::from_i64(0), |acc, (_, c)| acc + c.clone());
            assert_eq!(value, Q::from_i64(0));
        }
    }

    #[test]
    fn dependent_partials_are_rejected() {
        assert!(matches!(
            jacobian_gens(&p("x0^3 + x1^3", 2)),
            Err(Error::DependentPartials)
        ));
        assert!(matches!(
            GeneratorTuple::new(vec![p("x0^2", 1), p("2*x0^2", 1)]),
            Err(Error::DependentGenerators {
                rank: 1,
                expected: 2
            })
        ));
    }
}
