//! Homogeneous polynomials with exact coefficients.
//!
//! The same type holds forms in the `x` variables and dual forms in the `z`
//! variables; which role a value plays is decided by the operation it is
//! passed to ([`HomogeneousPolynomial::polar_apply`] treats its argument as
//! a dual form).

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::monomial::{basis_dim, mono_basis, ExponentVector};
use crate::scalar::{factorial, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct HomogeneousPolynomial<T> {
    n: usize,
    degree: u32,
    terms: BTreeMap<ExponentVector, T>,
}

impl<T: Scalar> HomogeneousPolynomial<T> {
    pub fn zero(n: usize, degree: u32) -> Self {
        HomogeneousPolynomial {
            n,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(exponent: ExponentVector, coefficient: T) -> Self {
        let mut p = Self::zero(exponent.n(), exponent.degree());
        if !coefficient.is_zero() {
            p.terms.insert(exponent, coefficient);
        }
        p
    }

    pub fn variable(n: usize, i: usize) -> Self {
        Self::monomial(ExponentVector::power(n, i, 1), T::one())
    }

    pub fn constant(n: usize, value: T) -> Self {
        Self::monomial(ExponentVector::one(n), value)
    }

    /// Builds a polynomial from terms; like terms are combined.
    pub fn from_terms(
        n: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (ExponentVector, T)>,
    ) -> Result<Self> {
        let mut p = Self::zero(n, degree);
        for (e, c) in terms {
            if e.n() != n {
                return Err(Error::VariableMismatch {
                    left: n,
                    right: e.n(),
                });
            }
            if e.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: e.degree(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Polynomial whose coefficient vector in [`mono_basis`]`(n, degree)` is `coords`.
    pub fn from_coords(n: usize, degree: u32, coords: &[T]) -> Self {
        let basis = mono_basis(n, degree);
        assert_eq!(coords.len(), basis.len(), "coordinate vector length");
        let terms = basis
            .iter()
            .zip(coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        HomogeneousPolynomial { n, degree, terms }
    }

    /// Coefficient vector in [`mono_basis`]`(n, degree)` order.
    pub fn coords(&self) -> Vec<T> {
        let mut v = vec![T::zero(); basis_dim(self.n, self.degree)];
        for (e, c) in &self.terms {
            v[e.index()] = c.clone();
        }
        v
    }

    /// Variable count minus one.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &T)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> T {
        self.terms.get(e).cloned().unwrap_or_else(T::zero)
    }

    /// Leading term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&ExponentVector, &T)> {
        self.terms.iter().next()
    }

    /// Scalar multiple with leading coefficient 1; the canonical
    /// representative of the projective point. Zero stays zero.
    pub fn normalized(&self) -> Self {
        match self.leading_term() {
            Some((_, lead)) => self.scale(&(T::one() / lead.clone())),
            None => self.clone(),
        }
    }

    /// Whether `self = lambda * other` for some nonzero `lambda`.
    pub fn is_scalar_multiple_of(&self, other: &Self) -> bool {
        self.n == other.n
            && self.degree == other.degree
            && !self.is_zero()
            && !other.is_zero()
            && self.normalized() == other.normalized()
    }

    fn add_term(&mut self, e: ExponentVector, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get().clone() + c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::VariableMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-T::one())
    }

    pub fn scale(&self, factor: &T) -> Self {
        if factor.is_zero() {
            return Self::zero(self.n, self.degree);
        }
        HomogeneousPolynomial {
            n: self.n,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.clone() * factor.clone()))
                .collect(),
        }
    }

    /// Product by a monomial.
    pub fn shift(&self, by: &ExponentVector) -> Self {
        debug_assert_eq!(by.n(), self.n);
        HomogeneousPolynomial {
            n: self.n,
            degree: self.degree + by.degree(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.mul(by), c.clone()))
                .collect(),
        }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::VariableMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut out = Self::zero(self.n, self.degree + other.degree);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.mul(eb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn partial(&self, i: usize) -> Result<Self> {
        if i > self.n {
            return Err(Error::IndexOutOfRange {
                index: i,
                vars: self.n + 1,
            });
        }
        if self.degree == 0 {
            return Err(Error::OutOfRange {
                what: "degree",
                value: 0,
                range: ">= 1 for differentiation".into(),
            });
        }
        let unit = ExponentVector::power(self.n, i, 1);
        let terms = self
            .terms
            .iter()
            .filter_map(|(e, c)| {
                let lowered = e.checked_div(&unit)?;
                Some((lowered, c.clone() * T::from_i64(i64::from(e.get(i)))))
            })
            .collect();
        Ok(HomogeneousPolynomial {
            n: self.n,
            degree: self.degree - 1,
            terms,
        })
    }

    /// All first partial derivatives, in variable order.
    pub fn gradient(&self) -> Result<Vec<Self>> {
        (0..=self.n).map(|i| self.partial(i)).collect()
    }

    /// `self(d/dz) dual`: `self` acts as a constant-coefficient differential
    /// operator on the dual form `dual`.
    pub fn polar_apply(&self, dual: &Self) -> Result<Self> {
        if self.n != dual.n {
            return Err(Error::VariableMismatch {
                left: self.n,
                right: dual.n,
            });
        }
        if self.degree > dual.degree {
            return Err(Error::DegreeMismatch {
                expected: dual.degree,
                found: self.degree,
            });
        }
        let mut out = Self::zero(self.n, dual.degree - self.degree);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &dual.terms {
                if let Some(rest) = eb.checked_div(ea) {
                    let weight = falling_factorial_weight::<T>(eb, ea);
                    out.add_term(rest, ca.clone() * cb.clone() * weight);
                }
            }
        }
        Ok(out)
    }

    /// `<f, q> = sum_alpha alpha! a_alpha b_alpha`.
    pub fn apolar_inner(&self, other: &Self) -> Result<T> {
        self.check_same_space(other)?;
        Ok(self
            .terms
            .iter()
            .filter_map(|(e, a)| {
                let b = other.terms.get(e)?;
                Some(a.clone() * b.clone() * T::from_i64(e.factorial() as i64))
            })
            .fold(T::zero(), |acc, x| acc + x))
    }

    /// Checks the Euler identity `sum_i x_i df/dx_i = d f` exactly.
    pub fn euler_check(&self) -> bool {
        if self.degree == 0 {
            return true;
        }
        let mut sum = Self::zero(self.n, self.degree);
        for i in 0..=self.n {
            let d = self.partial(i).expect("index in range");
            let term = d
                .multiply(&Self::variable(self.n, i))
                .expect("same variable count");
            sum = sum.checked_add(&term).expect("same space");
        }
        sum == self.scale(&T::from_i64(i64::from(self.degree)))
    }

    /// Re-expresses the polynomial in `n_total + 1` variables, renaming
    /// `x_i` to `x_{i + offset}`.
    pub fn embed(&self, n_total: usize, offset: usize) -> Result<Self> {
        if offset + self.n > n_total {
            return Err(Error::IndexOutOfRange {
                index: offset + self.n,
                vars: n_total + 1,
            });
        }
        let terms = self.terms.iter().map(|(e, c)| {
            let mut ex = vec![0; n_total + 1];
            ex[offset..=offset + self.n].copy_from_slice(e.exponents());
            (ExponentVector::new(ex), c.clone())
        });
        Self::from_terms(n_total, self.degree, terms)
    }

    /// Parses the text grammar
    ///
    /// ```text
    /// poly    := [sign] term (('+'|'-') term)*
    /// term    := coeff | coeff '*' factors | factors
    /// factors := var ('^' int)? ('*' var ('^' int)?)*
    /// var     := 'x' int
    /// coeff   := int | int '/' int
    /// ```
    ///
    /// Whitespace is ignored. With `n = None` the variable count is taken
    /// from the largest index used.
    pub fn parse(text: &str, n: Option<usize>) -> Result<Self> {
        crate::parse::parse_polynomial(text, n)
    }
}

/// `beta! / (beta - alpha)!`, the constant produced by `d^alpha z^beta`.
fn falling_factorial_weight<T: Scalar>(beta: &ExponentVector, alpha: &ExponentVector) -> T {
    beta.exponents()
        .iter()
        .zip(alpha.exponents())
        .fold(T::one(), |acc, (&b, &a)| {
            acc * factorial::<T>(b) / factorial::<T>(b - a)
        })
}

impl<T: Scalar> fmt::Display for HomogeneousPolynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (pos, (e, c)) in self.terms.iter().enumerate() {
            let negative = *c < T::zero();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            match (pos, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let constant = e.degree() == 0;
            if constant {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{e}")?;
            } else {
                write!(f, "{magnitude}*{e}")?;
            }
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for HomogeneousPolynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[n={} d={}] ", self.n, self.degree)?;
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type P = HomogeneousPolynomial<BigRational>;

    fn p(s: &str) -> P {
        P::parse(s, None).unwrap()
    }

    fn pn(s: &str, n: usize) -> P {
        P::parse(s, Some(n)).unwrap()
    }

    fn q(v: i64) -> BigRational {
        BigRational::from_i64(v)
    }

    #[test]
    fn products() {
        assert_eq!(pn("x0", 1).multiply(&pn("x1", 1)).unwrap(), pn("x0*x1", 1));
        assert_eq!(
            p("x0 + x1").multiply(&p("x0 - x1")).unwrap(),
            p("x0^2 - x1^2")
        );
        assert_eq!(
            pn("1/2*x0^2", 1).multiply(&p("2*x1^3")).unwrap(),
            p("x0^2*x1^3")
        );
        assert!(matches!(
            pn("x0", 1).multiply(&pn("x0", 2)),
            Err(Error::VariableMismatch { .. })
        ));
    }

    #[test]
    fn partials() {
        assert_eq!(pn("x0^3", 0).partial(0).unwrap(), pn("3*x0^2", 0));
        assert_eq!(p("x0*x1*x2").partial(1).unwrap(), pn("x0*x2", 2));
        assert_eq!(p("x0^3 + x1^3 + x2^3").partial(2).unwrap(), pn("3*x2^2", 2));
        assert!(matches!(
            p("x0*x1").partial(2),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn polar_action() {
        assert_eq!(
            pn("x0", 1).polar_apply(&p("x0^2*x1")).unwrap(),
            p("2*x0*x1")
        );
        assert_eq!(
            pn("x0^2", 0).polar_apply(&pn("x0^2", 0)).unwrap(),
            P::constant(0, q(2))
        );
        assert_eq!(
            p("x0*x1").polar_apply(&p("x0*x1")).unwrap(),
            P::constant(1, q(1))
        );
        assert!(matches!(
            p("x0^2*x1").polar_apply(&p("x0*x1")),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn inner_product_values() {
        assert_eq!(pn("x0^2", 0).apolar_inner(&pn("x0^2", 0)).unwrap(), q(2));
        assert_eq!(pn("x0^2", 1).apolar_inner(&p("x1^2")).unwrap(), q(0));
        // 1!1! * 2 * 3 + 2! * 1 * (-1) = 6 - 2
        assert_eq!(
            p("2*x0*x1 + x2^2")
                .apolar_inner(&p("3*x0*x1 - x2^2"))
                .unwrap(),
            q(4)
        );
        assert!(p("x0^2").apolar_inner(&p("x0^3")).is_err());
    }

    #[test]
    fn euler_identity_examples() {
        for s in ["x0^3", "x0*x1*x2", "x0^2*x1 + x1^2*x2"] {
            assert!(p(s).euler_check(), "{s}");
        }
    }

    #[test]
    fn display_follows_grammar() {
        let f = p("x0^3 + x1^3 + x2^3 - 3*x0*x1*x2");
        assert_eq!(f.to_string(), "x0^3 - 3*x0*x1*x2 + x1^3 + x2^3");
        assert_eq!(P::parse(&f.to_string(), None).unwrap(), f);
        assert_eq!(p("-1/2*x0*x1").to_string(), "-1/2*x0*x1");
        assert_eq!(P::zero(2, 3).to_string(), "0");
    }

    #[test]
    fn coordinates_round_trip() {
        let f = p("2*x0^2 - x0*x1 + 5*x1^2");
        assert_eq!(f.coords(), vec![q(2), q(-1), q(5)]);
        assert_eq!(P::from_coords(1, 2, &f.coords()), f);
    }

    #[test]
    fn normalization_and_multiples() {
        let f = p("3*x0*x1 + 6*x1^2");
        assert_eq!(f.normalized(), p("x0*x1 + 2*x1^2"));
        assert!(f.scale(&q(-7)).is_scalar_multiple_of(&f));
        assert!(!p("x0*x1").is_scalar_multiple_of(&p("x1^2 + x0*x1")));
    }

    #[test]
    fn embedding_shifts_variables() {
        let g = p("x0^2 + x0*x1");
        assert_eq!(g.embed(3, 2).unwrap(), pn("x2^2 + x2*x3", 3));
        assert!(g.embed(2, 2).is_err());
    }
}
