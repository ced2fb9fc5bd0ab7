//! Exponent vectors and the monomial bases of graded pieces.
//!
//! The order is graded lexicographic with `x0 > x1 > ... > xn`, listed from
//! the largest monomial down: in degree 2 with two variables the basis is
//! `[x0^2, x0*x1, x1^2]`. [`ExponentVector`]'s `Ord` follows this listing
//! order, so the smallest element of a set of same-degree monomials is the
//! leading one. Coordinates of every vector in `S_k` refer to this order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::binomial;

/// Exponents of a monomial in `n + 1` variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector {
    exponents: Box<[u32]>,
    degree: u32,
}

impl ExponentVector {
    pub fn new(exponents: impl Into<Box<[u32]>>) -> Self {
        let exponents = exponents.into();
        assert!(!exponents.is_empty(), "at least one variable");
        let degree = exponents.iter().sum();
        ExponentVector { exponents, degree }
    }

    /// `x_i^power` in `n + 1` variables.
    pub fn power(n: usize, i: usize, power: u32) -> Self {
        let mut e = vec![0; n + 1];
        e[i] = power;
        Self::new(e)
    }

    pub fn one(n: usize) -> Self {
        Self::new(vec![0; n + 1])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Variable count minus one.
    pub fn n(&self) -> usize {
        self.exponents.len() - 1
    }

    pub fn get(&self, i: usize) -> u32 {
        self.exponents[i]
    }

    pub fn mul(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.exponents.len(), other.exponents.len());
        ExponentVector {
            exponents: self
                .exponents
                .iter()
                .zip(other.exponents.iter())
                .map(|(a, b)| a + b)
                .collect(),
            degree: self.degree + other.degree,
        }
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &ExponentVector) -> Option<ExponentVector> {
        let exponents = self
            .exponents
            .iter()
            .zip(other.exponents.iter())
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Box<[u32]>>>()?;
        Some(ExponentVector {
            exponents,
            degree: self.degree - other.degree,
        })
    }

    /// `alpha! = prod alpha_i!`, the weight of this monomial in the apolar pairing.
    pub fn factorial(&self) -> u64 {
        self.exponents
            .iter()
            .flat_map(|&e| 2..=u64::from(e))
            .product()
    }

    /// Position of this monomial in [`mono_basis`] of its degree.
    pub fn index(&self) -> usize {
        let n = self.n();
        let mut remaining = self.degree as usize;
        let mut index = 0;
        for (i, &e) in self.exponents[..n].iter().enumerate() {
            let e = e as usize;
            if remaining > e {
                // monomials sharing the prefix but with a larger exponent at i
                index += binomial(remaining - e - 1 + n - i, n - i);
            }
            remaining -= e;
        }
        index
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| other.exponents.cmp(&self.exponents))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.exponents[..])
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            match e {
                1 => write!(f, "x{i}")?,
                _ => write!(f, "x{i}^{e}")?,
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// `dim S_k = C(n + k, n)`.
pub fn basis_dim(n: usize, k: u32) -> usize {
    binomial(n + k as usize, n)
}

type BasisCache = RwLock<HashMap<(usize, u32), Arc<[ExponentVector]>>>;

/// All monomials of degree `k` in `n + 1` variables, in graded-lex order.
pub fn mono_basis(n: usize, k: u32) -> Arc<[ExponentVector]> {
    static CACHE: OnceLock<BasisCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.read().expect("basis cache poisoned").get(&(n, k)) {
        return Arc::clone(hit);
    }
    let basis: Arc<[ExponentVector]> = enumerate(n, k).into();
    cache
        .write()
        .expect("basis cache poisoned")
        .entry((n, k))
        .or_insert(basis)
        .clone()
}

fn enumerate(n: usize, k: u32) -> Vec<ExponentVector> {
    fn go(prefix: &mut Vec<u32>, remaining: u32, slots: usize, out: &mut Vec<ExponentVector>) {
        if slots == 1 {
            prefix.push(remaining);
            out.push(ExponentVector::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=remaining).rev() {
            prefix.push(e);
            go(prefix, remaining - e, slots - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::with_capacity(basis_dim(n, k));
    go(&mut Vec::with_capacity(n + 1), k, n + 1, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_quadrics() {
        let basis = mono_basis(1, 2);
        let shown: Vec<String> = basis.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["x0^2", "x0*x1", "x1^2"]);
    }

    #[test]
    fn constants_form_a_single_monomial() {
        let basis = mono_basis(2, 0);
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].to_string(), "1");
    }

    #[test]
    fn ternary_cubics_count_matches_enumeration() {
        // brute force: every triple with sum 3
        let brute = (0..=3u32)
            .flat_map(|a| (0..=3u32).flat_map(move |b| (0..=3u32).map(move |c| (a, b, c))))
            .filter(|(a, b, c)| a + b + c == 3)
            .count();
        assert_eq!(brute, 10);
        assert_eq!(mono_basis(2, 3).len(), 10);
        assert_eq!(basis_dim(2, 3), 10);
    }

    #[test]
    fn index_agrees_with_listing_position() {
        for n in 0..4 {
            for k in 0..7 {
                let basis = mono_basis(n, k);
                assert_eq!(basis.len(), basis_dim(n, k));
                for (pos, e) in basis.iter().enumerate() {
                    assert_eq!(e.index(), pos, "n={n} k={k} {e}");
                }
                assert!(basis.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn factorial_weights() {
        assert_eq!(ExponentVector::new(vec![2, 0]).factorial(), 2);
        assert_eq!(ExponentVector::new(vec![1, 1]).factorial(), 1);
        assert_eq!(ExponentVector::new(vec![3, 2, 0]).factorial(), 12);
    }

    #[test]
    fn division_is_partial() {
        let a = ExponentVector::new(vec![2, 1, 0]);
        let b = ExponentVector::new(vec![1, 1, 0]);
        assert_eq!(a.checked_div(&b), Some(ExponentVector::new(vec![1, 0, 0])));
        assert_eq!(b.checked_div(&a), None);
    }
}
