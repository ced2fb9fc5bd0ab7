use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};
use proptest::prelude::*;

use milnor::linalg::elimination::modular_rank;
use milnor::linalg::{Matrix, Subspace};
use milnor::{basis_dim, Rational, Scalar};

fn q(v: i64) -> Rational {
    Rational::from_i64(v)
}

fn to_rows(entries: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    entries
        .iter()
        .map(|r| r.iter().map(|&x| q(x)).collect())
        .collect()
}

/// Integer matrix of the given shape, entries in a small range, biased
/// towards zero so that rank deficiency actually occurs.
fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(
        prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -4i64..=4], cols),
        rows,
    )
}

/// Leibniz expansion, independent of any elimination.
fn det(m: &[Vec<i64>]) -> i128 {
    fn permutations(items: Vec<usize>) -> Vec<Vec<usize>> {
        if items.len() <= 1 {
            return vec![items];
        }
        let mut out = Vec::new();
        for i in 0..items.len() {
            let mut rest = items.clone();
            let head = rest.remove(i);
            for mut p in permutations(rest) {
                p.insert(0, head);
                out.push(p);
            }
        }
        out
    }
    let n = m.len();
    permutations((0..n).collect())
        .into_iter()
        .map(|p| {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            sign * p
                .iter()
                .enumerate()
                .map(|(i, &j)| i128::from(m[i][j]))
                .product::<i128>()
        })
        .sum()
}

/// Subspace of S_k in three variables spanned by a few random vectors.
fn subspace(k: u32) -> impl Strategy<Value = Subspace<Rational>> {
    let dim = basis_dim(2, k);
    (0..=dim).prop_flat_map(move |count| {
        int_matrix(count, dim)
            .prop_map(move |rows| Subspace::span(2, k, to_rows(&rows)).expect("lengths match"))
    })
}

#[test]
fn invertible_five_by_five_reduces_to_identity() {
    let m = vec![
        vec![2, -1, 0, 3, 1],
        vec![1, 4, -2, 0, 0],
        vec![0, 1, 1, -1, 2],
        vec![3, 0, 2, 1, -1],
        vec![-1, 2, 0, 0, 1],
    ];
    assert_ne!(det(&m), 0);
    let a = Matrix::from_rows(to_rows(&m), 5).unwrap();
    assert_eq!(a.rref(), Matrix::identity(5));
}

#[test]
fn singular_five_by_five_loses_rank() {
    let mut m = vec![
        vec![2, -1, 0, 3, 1],
        vec![1, 4, -2, 0, 0],
        vec![0, 1, 1, -1, 2],
        vec![3, 0, 2, 1, -1],
    ];
    // row 4 = row 0 - 2 row 2
    m.push(m[0].iter().zip(&m[2]).map(|(a, b)| a - 2 * b).collect());
    assert_eq!(det(&m), 0);
    let a = Matrix::from_rows(to_rows(&m), 5).unwrap();
    assert_eq!(a.rank(), 4);
    assert_eq!(a.kernel().nrows(), 1);
}

#[test]
fn fixed_width_and_big_rationals_agree() {
    let rows = vec![
        vec![3, 1, -2, 0],
        vec![1, 1, 1, 1],
        vec![4, 2, -1, 1],
        vec![0, 5, 0, -7],
    ];
    let big = Matrix::from_rows(to_rows(&rows), 4).unwrap();
    let small: Matrix<Rational64> = Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| Rational64::from_integer(x)).collect())
            .collect(),
        4,
    )
    .unwrap();
    assert_eq!(big.rank(), small.rank());
    let big_rref: Vec<Vec<String>> = big
        .rref()
        .rows()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    let small_rref: Vec<Vec<String>> = small
        .rref()
        .rows()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    assert_eq!(big_rref, small_rref);
}

#[test]
fn subspace_operations_work_over_fixed_width_rationals() {
    let e: Subspace<Rational64> = Subspace::span(
        1,
        2,
        vec![vec![
            Rational64::one(),
            Rational64::zero(),
            Rational64::one(),
        ]],
    )
    .unwrap();
    let perp = e.orthogonal_complement();
    assert_eq!(perp.dim(), 2);
    assert_eq!(perp.orthogonal_complement(), e);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_matches_determinant(m in int_matrix(5, 5)) {
        let a = Matrix::from_rows(to_rows(&m), 5).unwrap();
        prop_assert_eq!(a.rank() == 5, det(&m) != 0);
    }

    #[test]
    fn rank_plus_nullity(m in int_matrix(4, 6)) {
        let a = Matrix::from_rows(to_rows(&m), 6).unwrap();
        let kernel = a.kernel();
        prop_assert_eq!(a.rank() + kernel.nrows(), 6);
        for v in kernel.rows() {
            prop_assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn modular_rank_never_exceeds_rank(m in int_matrix(5, 7)) {
        let rows = to_rows(&m);
        let exact = Matrix::from_rows(rows.clone(), 7).unwrap().echelon().pivots.len();
        let modular = modular_rank(&rows, 7).unwrap();
        prop_assert!(modular <= exact);
        // small integer entries never collide with the prime
        prop_assert_eq!(modular, exact);
    }

    #[test]
    fn reduced_form_is_idempotent(m in int_matrix(4, 5)) {
        let r = Matrix::from_rows(to_rows(&m), 5).unwrap().rref();
        prop_assert_eq!(r.rref(), r);
    }

    #[test]
    fn span_is_canonical(m in int_matrix(3, 6), mix in int_matrix(3, 3)) {
        let rows = to_rows(&m);
        let a = Subspace::span(2, 2, rows.clone()).unwrap();
        // mixing rows with an invertible matrix does not change the span
        let mix_rows = to_rows(&mix);
        if Matrix::from_rows(mix_rows.clone(), 3).unwrap().rank() == 3 {
            let mixed: Vec<Vec<Rational>> = mix_rows
                .iter()
                .map(|c| {
                    (0..6)
                        .map(|j| c.iter().zip(&rows).fold(q(0), |acc, (x, r)| acc + x * &r[j]))
                        .collect()
                })
                .collect();
            prop_assert_eq!(Subspace::span(2, 2, mixed).unwrap(), a);
        }
    }

    #[test]
    fn complement_is_an_involution(e in subspace(3)) {
        let perp = e.orthogonal_complement();
        prop_assert_eq!(perp.dim() + e.dim(), e.ambient_dim());
        prop_assert!(e.is_orthogonal_to(&perp).unwrap());
        prop_assert_eq!(perp.orthogonal_complement(), e);
    }

    #[test]
    fn sum_and_intersection_dimensions(a in subspace(2), b in subspace(2)) {
        let sum = a.sum(&b).unwrap();
        let meet = a.intersect(&b).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), a.dim() + b.dim());
        prop_assert!(a.contains(&meet).unwrap() && b.contains(&meet).unwrap());
        prop_assert!(sum.contains(&a).unwrap() && sum.contains(&b).unwrap());
    }

    #[test]
    fn tabulated_projection_matches_reduction(e in subspace(2), v in prop::collection::vec(-5i64..=5, 6)) {
        let v: Vec<Rational> = v.into_iter().map(q).collect();
        let poly = milnor::Poly::from_coords(2, 2, &v);
        prop_assert_eq!(e.quotient_map().apply(&poly), e.quotient_coords(&v));
    }
}

#[test]
fn big_rationals_survive_large_entries() {
    let huge = BigRational::from_integer(num_bigint::BigInt::from(10).pow(40));
    let rows = vec![vec![huge.clone(), q(1)], vec![q(1), huge.clone()]];
    let a = Matrix::from_rows(rows, 2).unwrap();
    assert_eq!(a.rank(), 2);
    assert_eq!(a.rref(), Matrix::identity(2));
}
