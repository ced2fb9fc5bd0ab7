//! Sebastiani-Thom analysis and random instance generation.
//!
//! A smooth form is of Sebastiani-Thom type when, after a linear change of
//! coordinates, it splits as a sum of forms in disjoint sets of variables.
//! The number `s` of summands in the finest such splitting equals the
//! dimension of the fiber `{g : dg/dx_i in span(df/dx_j)}`, which is how it
//! is computed here; the coordinate change itself is never recovered.
//!
//! The computed fiber is the full linear span of the summands. Members with
//! some summand coefficient equal to zero are included even though they are
//! no longer smooth.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ideal::{
    hilbert_profile, is_complete_intersection, is_smooth, jacobian_gens, GeneratorTuple,
};
use crate::monomial::{mono_basis, ExponentVector};
use crate::poly::HomogeneousPolynomial;
use crate::reconstruct::{fiber, FiberResult};
use crate::scalar::Scalar;

/// Rejection-sampling budget for the random generators.
pub const MAX_ATTEMPTS: usize = 64;

/// Default bound on the absolute value of random integer perturbations.
pub const DEFAULT_COEFF_BOUND: i64 = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct StReport<T> {
    pub is_st: bool,
    pub s: usize,
    pub fiber: FiberResult<T>,
}

pub fn st_report<T: Scalar>(f: &HomogeneousPolynomial<T>) -> Result<StReport<T>> {
    let w = jacobian_gens(f).map_err(|e| match e {
        Error::DependentPartials => Error::NotSmooth,
        other => other,
    })?;
    if !is_complete_intersection(&w) {
        return Err(Error::NotSmooth);
    }
    let fiber = fiber(&w);
    let s = fiber.s();
    Ok(StReport {
        is_st: s >= 2,
        s,
        fiber,
    })
}

/// Finest partition of the variable indices such that every monomial of
/// `f` uses variables from one part only. Parts are sorted, and ordered by
/// their smallest index.
pub fn coordinate_split<T: Scalar>(f: &HomogeneousPolynomial<T>) -> Vec<Vec<usize>> {
    let vars = f.n() + 1;
    let mut parent: Vec<usize> = (0..vars).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (e, _) in f.terms() {
        let mut used = (0..vars).filter(|&i| e.get(i) > 0);
        if let Some(first) = used.next() {
            for other in used {
                let (a, b) = (root(&mut parent, first), root(&mut parent, other));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut parts: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; vars];
    for i in 0..vars {
        let r = root(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = parts.len();
            parts.push(Vec::new());
        }
        parts[slot[r]].push(i);
    }
    parts
}

fn check_sizes(n: usize, d: u32) -> Result<()> {
    hilbert_profile(n, d).map(|_| ())
}

fn check_bound(coeff_bound: i64) -> Result<()> {
    if coeff_bound < 0 {
        return Err(Error::OutOfRange {
            what: "coeff_bound",
            value: coeff_bound,
            range: ">= 0".into(),
        });
    }
    Ok(())
}

/// Dense form of degree `d` with independent uniform integer coefficients
/// in `[-coeff_bound, coeff_bound]`.
pub fn random_form<T: Scalar>(
    n: usize,
    d: u32,
    rng: &mut impl Rng,
    coeff_bound: i64,
) -> HomogeneousPolynomial<T> {
    let terms = mono_basis(n, d)
        .iter()
        .map(|e| {
            (
                e.clone(),
                T::from_i64(rng.gen_range(-coeff_bound..=coeff_bound)),
            )
        })
        .collect::<Vec<_>>();
    HomogeneousPolynomial::from_terms(n, d, terms).expect("terms from the monomial basis")
}

/// Fermat form `x0^d + ... + xn^d`.
pub fn fermat<T: Scalar>(n: usize, d: u32) -> HomogeneousPolynomial<T> {
    HomogeneousPolynomial::from_terms(
        n,
        d,
        (0..=n).map(|i| (ExponentVector::power(n, i, d), T::one())),
    )
    .expect("pure powers")
}

/// Smooth form obtained by perturbing the Fermat form with random integer
/// coefficients, deterministic in `seed`. With `require_non_st` the form
/// must also have a one-dimensional fiber.
pub fn random_smooth<T: Scalar>(
    n: usize,
    d: u32,
    seed: u64,
    require_non_st: bool,
    coeff_bound: i64,
) -> Result<HomogeneousPolynomial<T>> {
    check_sizes(n, d)?;
    check_bound(coeff_bound)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = fermat::<T>(n, d);
    for _ in 0..MAX_ATTEMPTS {
        let f = base
            .checked_add(&random_form(n, d, &mut rng, coeff_bound))
            .expect("same space");
        if !is_smooth(&f) {
            continue;
        }
        if require_non_st && st_report(&f)?.is_st {
            continue;
        }
        return Ok(f);
    }
    Err(Error::AttemptsExhausted {
        attempts: MAX_ATTEMPTS,
    })
}

/// Complete-intersection tuple `x_i^{d-1} + (random perturbation)`,
/// deterministic in `seed`.
pub fn random_ci_tuple<T: Scalar>(
    n: usize,
    d: u32,
    seed: u64,
    coeff_bound: i64,
) -> Result<GeneratorTuple<T>> {
    check_sizes(n, d)?;
    check_bound(coeff_bound)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let gens = (0..=n)
            .map(|i| {
                let power =
                    HomogeneousPolynomial::monomial(ExponentVector::power(n, i, d - 1), T::one());
                power
                    .checked_add(&random_form(n, d - 1, &mut rng, coeff_bound))
                    .expect("same space")
            })
            .collect();
        let Ok(w) = GeneratorTuple::new(gens) else {
            continue;
        };
        if is_complete_intersection(&w) {
            return Ok(w);
        }
    }
    Err(Error::AttemptsExhausted {
        attempts: MAX_ATTEMPTS,
    })
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

    #[test]
    fn fermat_cubic_splits_into_three() {
        let r = st_report(&p("x0^3 + x1^3 + x2^3", 2)).unwrap();
        assert!(r.is_st);
        assert_eq!(r.s, 3);
        assert_eq!(r.fiber.s(), 3);
    }

    #[test]
    fn cubic_with_cross_term() {
        let f = p("x0^3 + x1^3 + x2^3 + x0*x1*x2", 2);
        let r = st_report(&f).unwrap();
        assert_eq!(r.s, r.fiber.s());
        assert_eq!(r.s, 1);
        assert!(!r.is_st);
    }

    #[test]
    fn singular_forms_are_rejected() {
        assert!(matches!(st_report(&p("x0^3", 2)), Err(Error::NotSmooth)));
        assert!(matches!(
            st_report(&p("x0^3 + x1^3 + x2^3 - 3*x0*x1*x2", 2)),
            Err(Error::NotSmooth)
        ));
    }

    #[test]
    fn coordinate_splits() {
        assert_eq!(
            coordinate_split(&p("x0^3 + x1^3 + x2^3", 2)),
            vec![vec![0], vec![1], vec![2]]
        );
        assert_eq!(coordinate_split(&p("x0*x1*x2", 2)), vec![vec![0, 1, 2]]);
        assert_eq!(
            coordinate_split(&p("x0^2*x1 + x2^3", 2)),
            vec![vec![0, 1], vec![2]]
        );
        assert_eq!(
            coordinate_split(&p("x0*x3 + x1^2 + x2*x1", 3)),
            vec![vec![0, 3], vec![1, 2]]
        );
    }

    #[test]
    fn random_smooth_is_deterministic_and_admissible() {
        let f: P = random_smooth(2, 3, 1, true, DEFAULT_COEFF_BOUND).unwrap();
        assert_eq!(
            f,
            random_smooth(2, 3, 1, true, DEFAULT_COEFF_BOUND).unwrap()
        );
        assert!(is_smooth(&f));
        assert_eq!(st_report(&f).unwrap().s, 1);
        let g: P = random_smooth(1, 4, 7, false, DEFAULT_COEFF_BOUND).unwrap();
        assert!(is_smooth(&g));
        assert_eq!((g.n(), g.degree()), (1, 4));
    }

    #[test]
    fn zero_bound_only_yields_fermat() {
        let f: P = random_smooth(2, 3, 5, false, 0).unwrap();
        assert_eq!(f, fermat(2, 3));
        assert!(matches!(
            random_smooth::<Q>(2, 3, 5, true, 0),
            Err(Error::AttemptsExhausted { .. })
        ));
    }

    #[test]
    fn random_tuples_are_complete_intersections() {
        for seed in 0..3 {
            let w: GeneratorTuple<Q> = random_ci_tuple(2, 4, seed, DEFAULT_COEFF_BOUND).unwrap();
            assert!(is_complete_intersection(&w));
            assert_eq!(w.d(), 4);
        }
    }

    #[test]
    fn parameter_validation() {
        assert!(random_smooth::<Q>(0, 3, 1, false, 3).is_err());
        assert!(random_smooth::<Q>(2, 3, 1, false, -1).is_err());
    }
}
