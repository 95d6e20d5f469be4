mod common;

use chainmail::linalg::{
    cokernel, determinant, determinant_of_rows, is_positive_definite, leading_minors, smith_normal_form,
};
use chainmail::IntMatrix;
use common::{cofactor_det, from_i128, invariant_factors_by_minors, to_i128};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn square(max_n: usize, range: i128) -> impl Strategy<Value = Vec<Vec<i128>>> {
    (0..=max_n).prop_flat_map(move |n| prop::collection::vec(prop::collection::vec(-range..=range, n), n))
}

fn rect(max: usize, range: i128) -> impl Strategy<Value = Vec<Vec<i128>>> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| prop::collection::vec(prop::collection::vec(-range..=range, c), r))
}

fn symmetric(max_n: usize, range: i128) -> impl Strategy<Value = Vec<Vec<i128>>> {
    square(max_n, range).prop_map(|m| {
        let n = m.len();
        (0..n)
            .map(|i| (0..n).map(|j| if i <= j { m[i][j] } else { m[j][i] }).collect())
            .collect()
    })
}

#[test]
fn pinned_values() {
    let m = IntMatrix::from_rows(&[vec![2, -1], vec![-1, 2]]).unwrap();
    assert_eq!(determinant(&m).unwrap(), BigInt::from(3));
    assert_eq!(smith_normal_form(&m).diagonal, vec![BigInt::one(), BigInt::from(3)]);
    assert!(is_positive_definite(&m).unwrap());
    assert_eq!(leading_minors(&m).unwrap(), vec![BigInt::from(2), BigInt::from(3)]);

    let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]).unwrap();
    assert_eq!(smith_normal_form(&m).diagonal, vec![BigInt::one(), BigInt::from(6)]);

    let m = IntMatrix::from_rows(&[vec![3, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]).unwrap();
    assert_eq!(cokernel(&m).unwrap().to_string(), "Z/3");
    assert_eq!(
        smith_normal_form(&m).diagonal,
        invariant_factors_by_minors(&to_i128(&m)),
    );
}

#[test]
fn cokernel_of_singular_and_trivial() {
    let lap = IntMatrix::from_rows(&[vec![1, -1], vec![-1, 1]]).unwrap();
    let g = cokernel(&lap).unwrap();
    assert_eq!((g.free_rank, g.invariant_factors.len()), (1, 0));
    assert_eq!(g.to_string(), "Z");
    let id = IntMatrix::identity(3);
    assert!(cokernel(&id).unwrap().is_trivial());
    assert_eq!(determinant(&IntMatrix::zeros(0, 0)).unwrap(), BigInt::one());
}

#[test]
fn non_square_is_rejected() {
    let m = IntMatrix::zeros(2, 3);
    assert!(determinant(&m).is_err());
    assert!(is_positive_definite(&m).is_err());
}

#[test]
fn large_entries_stay_exact() {
    // det [[a, b], [c, d]] with products past 2^128.
    let a = BigInt::from(3).pow(90);
    let m = IntMatrix::from_rows(&[vec![a.clone(), BigInt::from(1)], vec![BigInt::from(1), a.clone()]]).unwrap();
    assert_eq!(determinant(&m).unwrap(), &a * &a - 1);
}

/// Laplace expansion in arbitrary precision.
fn big_cofactor(m: &[Vec<BigInt>]) -> BigInt {
    if m.is_empty() {
        return BigInt::one();
    }
    (0..m.len())
        .map(|j| {
            let sub: Vec<Vec<BigInt>> = m[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(k, _)| k != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let term = &m[0][j] * big_cofactor(&sub);
            if j % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

proptest! {
    #[test]
    fn wide_entries_fall_back_exactly(m in proptest::collection::vec(proptest::collection::vec(-(1i128 << 62)..(1i128 << 62), 5), 5)) {
        let oracle = big_cofactor(&m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect::<Vec<_>>());
        prop_assert_eq!(determinant_of_rows(&m), oracle.clone());
        prop_assert_eq!(determinant(&from_i128(&m)).unwrap(), oracle);
    }

    #[test]
    fn determinant_matches_cofactor_expansion(m in square(7, 9)) {
        let big = from_i128(&m);
        prop_assert_eq!(determinant(&big).unwrap(), BigInt::from(cofactor_det(&m)));
    }

    #[test]
    fn determinant_is_signed_product_of_snf(m in square(6, 6)) {
        let big = from_i128(&m);
        let d = determinant(&big).unwrap();
        let product: BigInt = smith_normal_form(&big).diagonal.iter().product();
        prop_assert_eq!(d.abs(), product);
    }

    #[test]
    fn snf_matches_determinantal_divisors(m in rect(4, 5)) {
        let big = from_i128(&m);
        prop_assert_eq!(smith_normal_form(&big).diagonal, invariant_factors_by_minors(&m));
    }

    #[test]
    fn snf_transforms_are_unimodular(m in rect(5, 7)) {
        let big = from_i128(&m);
        let snf = smith_normal_form(&big);
        prop_assert_eq!(determinant(&snf.left).unwrap().abs(), BigInt::one());
        prop_assert_eq!(determinant(&snf.right).unwrap().abs(), BigInt::one());
        let product = snf.left.mul(&big).unwrap().mul(&snf.right).unwrap();
        for i in 0..product.rows() {
            for j in 0..product.cols() {
                let expected = if i == j && i < snf.diagonal.len() { snf.diagonal[i].clone() } else { BigInt::zero() };
                prop_assert_eq!(product.get(i, j), &expected);
            }
        }
        for w in snf.diagonal.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero()));
        }
    }

    #[test]
    fn positive_definite_implies_positive_det(m in symmetric(6, 4)) {
        let big = from_i128(&m);
        if is_positive_definite(&big).unwrap() {
            prop_assert!(determinant(&big).unwrap().is_positive());
        }
    }

    #[test]
    fn gram_matrices_are_positive_definite(a in square(5, 3)) {
        // A·Aᵀ + I is positive definite for every A.
        let n = a.len();
        let m: Vec<Vec<i128>> = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * a[j][k]).sum::<i128>() + i128::from(i == j)).collect())
            .collect();
        prop_assert!(is_positive_definite(&from_i128(&m)).unwrap());
    }

    #[test]
    fn cokernel_order_is_abs_det(m in square(5, 5)) {
        let big = from_i128(&m);
        let d = determinant(&big).unwrap();
        let g = cokernel(&big).unwrap();
        if d.is_zero() {
            prop_assert!(g.free_rank > 0);
            prop_assert_eq!(g.order(), None);
        } else {
            prop_assert_eq!(g.free_rank, 0);
            prop_assert_eq!(g.order(), Some(d.abs()));
        }
    }
}
