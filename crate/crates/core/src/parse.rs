use crate::error::{Error, Result};
use crate::monomial::ExponentVector;
use crate::poly::HomogeneousPolynomial;
use crate::scalar::Scalar;

struct Cursor<'a> {
    bytes: &'a [u8],
    // byte offsets into the original text, one per retained byte
    offsets: Vec<usize>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn offset(&self) -> usize {
        self.offsets
            .get(self.pos)
            .copied()
            .unwrap_or_else(|| self.offsets.last().map_or(0, |o| o + 1))
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<&'a str> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(self.offset(), "expected an integer"));
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits"))
    }

    fn small_int(&mut self, what: &str) -> Result<u32> {
        let at = self.offset();
        self.digits()?
            .parse()
            .map_err(|_| Error::parse(at, format!("{what} too large")))
    }
}

type Term<T> = (Vec<(usize, u32)>, T);

pub(crate) fn parse_polynomial<T: Scalar>(
    text: &str,
    n: Option<usize>,
) -> Result<HomogeneousPolynomial<T>> {
    let (bytes, offsets): (Vec<u8>, Vec<usize>) = text
        .bytes()
        .enumerate()
        .filter(|(_, b)| !b.is_ascii_whitespace())
        .map(|(i, b)| (b, i))
        .unzip();
    let mut cur = Cursor {
        bytes: &bytes,
        offsets,
        pos: 0,
    };
    if cur.peek().is_none() {
        return Err(Error::parse(0, "empty polynomial"));
    }

    let mut terms: Vec<Term<T>> = Vec::new();
    let mut negative = if cur.eat(b'-') {
        true
    } else {
        cur.eat(b'+');
        false
    };
    loop {
        let (factors, coeff) = parse_term::<T>(&mut cur)?;
        terms.push((factors, if negative { -coeff } else { coeff }));
        match cur.peek() {
            None => break,
            Some(b'+') => negative = false,
            Some(b'-') => negative = true,
            Some(other) => {
                return Err(Error::parse(
                    cur.offset(),
                    format!("unexpected character '{}'", other as char),
                ))
            }
        }
        cur.pos += 1;
    }

    let max_index = terms
        .iter()
        .flat_map(|(f, _)| f.iter().map(|&(i, _)| i))
        .max();
    let n = match (n, max_index) {
        (Some(n), Some(m)) if m > n => {
            return Err(Error::IndexOutOfRange {
                index: m,
                vars: n + 1,
            })
        }
        (Some(n), _) => n,
        (None, m) => m.unwrap_or(0),
    };

    let mut exponents = Vec::with_capacity(terms.len());
    for (factors, coeff) in terms {
        let mut e = vec![0u32; n + 1];
        for (i, power) in factors {
            e[i] += power;
        }
        exponents.push((ExponentVector::new(e), coeff));
    }
    let degree = exponents[0].0.degree();
    if let Some((e, _)) = exponents.iter().find(|(e, _)| e.degree() != degree) {
        return Err(Error::InvalidInput(format!(
            "not homogeneous: terms of degree {degree} and {}",
            e.degree()
        )));
    }
    let poly = HomogeneousPolynomial::from_terms(n, degree, exponents)?;
    if poly.is_zero() {
        return Err(Error::InvalidInput(
            "zero polynomial has no well-defined degree".into(),
        ));
    }
    Ok(poly)
}

fn parse_term<T: Scalar>(cur: &mut Cursor<'_>) -> Result<Term<T>> {
    let mut coeff = T::one();
    let mut factors = Vec::new();
    if cur.peek().is_some_and(|b| b.is_ascii_digit()) {
        let at = cur.offset();
        let numer = cur.digits()?;
        let literal = if cur.eat(b'/') {
            format!("{numer}/{}", cur.digits()?)
        } else {
            numer.to_string()
        };
        coeff = literal
            .parse::<T>()
            .map_err(|_| Error::parse(at, format!("invalid coefficient '{literal}'")))?;
        if !cur.eat(b'*') {
            return Ok((factors, coeff));
        }
    }
    loop {
        if !cur.eat(b'x') {
            return Err(Error::parse(cur.offset(), "expected a variable 'x<index>'"));
        }
        let at = cur.offset();
        let index = cur.small_int("variable index")? as usize;
        if index > 64 {
            return Err(Error::parse(at, "variable index too large"));
        }
        let power = if cur.eat(b'^') {
            cur.small_int("exponent")?
        } else {
            1
        };
        factors.push((index, power));
        if !cur.eat(b'*') {
            return Ok((factors, coeff));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type P = HomogeneousPolynomial<BigRational>;

    fn parse(s: &str) -> Result<P> {
        P::parse(s, None)
    }

    #[test]
    fn accepts_the_documented_example() {
        let f = parse("x0^3 + x1^3 + x2^3 - 3*x0*x1*x2").unwrap();
        assert_eq!(f.n(), 2);
        assert_eq!(f.degree(), 3);
        assert_eq!(f.term_count(), 4);
    }

    #[test]
    fn whitespace_and_signs() {
        let a = parse(" - x0 ^2+ 1/2 * x0 * x1 ").unwrap();
        let b = parse("-x0^2+1/2*x0*x1").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse("+x0").unwrap(), parse("x0").unwrap());
    }

    #[test]
    fn repeated_variables_and_like_terms() {
        assert_eq!(parse("x0*x0*x1").unwrap(), parse("x0^2*x1").unwrap());
        assert_eq!(parse("x0 + x0 + x1").unwrap(), parse("2*x0 + x1").unwrap());
    }

    #[test]
    fn explicit_variable_count() {
        assert_eq!(P::parse("x0^2", Some(3)).unwrap().n(), 3);
        assert!(matches!(
            P::parse("x4", Some(3)),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn constants_are_degree_zero() {
        let c = parse("7/3").unwrap();
        assert_eq!(c.degree(), 0);
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in [
            "",
            "x",
            "x0^",
            "3*",
            "x0 +",
            "x0 ** x1",
            "y0",
            "1/0*x0",
            "x0 + x1^2",
            "x0 - x0",
            "2x0",
        ] {
            assert!(parse(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn error_positions_point_into_the_original_text() {
        match parse("x0 + y1") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 5),
            other => panic!("unexpected {other:?}"),
        }
    }
}
