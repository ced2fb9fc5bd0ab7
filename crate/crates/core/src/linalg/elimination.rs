//! Row reduction kernels.
//!
//! [`gauss_jordan`] works over any [`Scalar`]. [`fraction_free`] is the
//! route taken for big rationals: rows are scaled to primitive integer
//! vectors and eliminated with integer combinations, first in checked
//! `i128` arithmetic and, only if that overflows, in big integers. Both
//! produce the unique reduced row-echelon form, so the choice of route never
//! changes the output.
//!
//! [`modular_rank`] reduces modulo a large prime. The rank modulo a prime
//! never exceeds the true rank, so a full modular rank certifies a full
//! rational rank without any exact elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::Scalar;

pub fn gauss_jordan<T: Scalar>(rows: &mut Vec<Vec<T>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(found) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, found);
        let inv = T::one() / rows[rank][col].clone();
        for entry in rows[rank][col..].iter_mut() {
            if !entry.is_zero() {
                *entry = entry.clone() * inv.clone();
            }
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for c in col..cols {
                if !pivot_row[c].is_zero() {
                    row[c] = row[c].clone() - factor.clone() * pivot_row[c].clone();
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    pivots
}

/// Integer arithmetic used by the fraction-free route. Operations return
/// `None` on overflow.
trait Ring: Clone {
    fn nil() -> Self;
    fn is_nil(&self) -> bool;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn sub(&self, other: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, other: &Self) -> Self;
    fn is_unit(&self) -> bool;
}

impl Ring for i128 {
    fn nil() -> Self {
        0
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
}

impl Ring for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
}

fn make_primitive<R: Ring>(row: &mut [R]) {
    let mut content = R::nil();
    for entry in row.iter().filter(|e| !e.is_nil()) {
        content = content.gcd(entry);
        if content.is_unit() {
            return;
        }
    }
    if content.is_nil() {
        return;
    }
    for entry in row.iter_mut().filter(|e| !e.is_nil()) {
        *entry = entry.div_exact(&content);
    }
}

/// Integer Gauss-Jordan on primitive rows. Returns `None` on overflow.
fn integer_gauss_jordan<R: Ring>(rows: &mut Vec<Vec<R>>, cols: usize) -> Option<Vec<usize>> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(found) = (rank..rows.len()).find(|&r| !rows[r][col].is_nil()) else {
            continue;
        };
        rows.swap(rank, found);
        let pivot_row = rows[rank].clone();
        let a = &pivot_row[col];
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_nil() {
                continue;
            }
            let g = a.gcd(&row[col]);
            let scale_row = a.div_exact(&g);
            let scale_pivot = row[col].div_exact(&g);
            for c in 0..cols {
                let lhs = if row[c].is_nil() {
                    R::nil()
                } else {
                    row[c].mul(&scale_row)?
                };
                row[c] = if pivot_row[c].is_nil() {
                    lhs
                } else {
                    lhs.sub(&pivot_row[c].mul(&scale_pivot)?)?
                };
            }
            make_primitive(row);
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    Some(pivots)
}

fn integer_rows(rows: &[Vec<BigRational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let lcm = row
                .iter()
                .filter(|e| !e.is_zero())
                .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
            let mut ints: Vec<BigInt> = row
                .iter()
                .map(|e| {
                    if e.is_zero() {
                        BigInt::zero()
                    } else {
                        e.numer() * (&lcm / e.denom())
                    }
                })
                .collect();
            make_primitive(&mut ints);
            ints
        })
        .collect()
}

fn to_rational_rref<R: Ring>(
    rows: Vec<Vec<R>>,
    pivots: &[usize],
    convert: impl Fn(&R) -> BigInt,
) -> Vec<Vec<BigRational>> {
    rows.into_iter()
        .zip(pivots)
        .map(|(row, &p)| {
            let lead = convert(&row[p]);
            row.iter()
                .map(|e| {
                    if e.is_nil() {
                        BigRational::zero()
                    } else {
                        BigRational::new(convert(e), lead.clone())
                    }
                })
                .collect()
        })
        .collect()
}

pub fn fraction_free(rows: &mut Vec<Vec<BigRational>>, cols: usize) -> Vec<usize> {
    let ints = integer_rows(rows);
    let small: Option<Vec<Vec<i128>>> = ints
        .iter()
        .map(|row| row.iter().map(|e| e.to_i128()).collect())
        .collect();
    if let Some(mut small) = small {
        if let Some(pivots) = integer_gauss_jordan(&mut small, cols) {
            *rows = to_rational_rref(small, &pivots, |e| BigInt::from(*e));
            return pivots;
        }
    }
    let mut big = ints;
    let pivots = integer_gauss_jordan(&mut big, cols).expect("big integers do not overflow");
    *rows = to_rational_rref(big, &pivots, BigInt::clone);
    pivots
}

/// `2^61 - 1`.
pub const MODULUS: u64 = (1 << 61) - 1;

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2)
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Rank of the reduction of `rows` modulo [`MODULUS`], or `None` when some
/// denominator vanishes there. Always at most the rank over the rationals.
pub fn modular_rank<T: Scalar>(rows: &[Vec<T>], cols: usize) -> Option<usize> {
    let residues = rows
        .iter()
        .map(|row| row.iter().map(|e| e.residue(MODULUS)).collect())
        .collect::<Option<Vec<Vec<u64>>>>()?;
    Some(rank_mod(residues, cols))
}

/// Rank of a matrix with entries already reduced modulo [`MODULUS`].
pub fn rank_mod(mut m: Vec<Vec<u64>>, cols: usize) -> usize {
    let p = MODULUS;
    let mut rank = 0;
    for c in 0..cols {
        if rank == m.len() {
            break;
        }
        let Some(r) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, r);
        let inv = inv_mod(m[rank][c], p);
        let pivot: Vec<u64> = m[rank].iter().map(|&x| mul_mod(x, inv, p)).collect();
        for row in m.iter_mut().skip(rank + 1) {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&pivot).skip(c) {
                *x = (*x + p - mul_mod(f, y, p)) % p;
            }
        }
        m[rank] = pivot;
        rank += 1;
    }
    rank
}
