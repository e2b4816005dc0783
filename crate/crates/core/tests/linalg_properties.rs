mod common;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use torbundle::{char_poly, exterior_power, rational_kernel_rank, smith_normal_form, IntMatrix};

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-10i64..=10, r * c).prop_map(move |xs| {
            IntMatrix::new(r, c, xs.into_iter().map(BigInt::from).collect()).unwrap()
        })
    })
}

fn square(max_n: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(-10i64..=10, n * n).prop_map(move |xs| {
            IntMatrix::new(n, n, xs.into_iter().map(BigInt::from).collect()).unwrap()
        })
    })
}

fn square_pair(max_n: usize) -> impl Strategy<Value = (IntMatrix, IntMatrix)> {
    (1..=max_n).prop_flat_map(|n| {
        let v = || proptest::collection::vec(-5i64..=5, n * n);
        (v(), v()).prop_map(move |(a, b)| {
            let m = |xs: Vec<i64>| {
                IntMatrix::new(n, n, xs.into_iter().map(BigInt::from).collect()).unwrap()
            };
            (m(a), m(b))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn snf_reconstructs(a in matrix(8, 8)) {
        let s = smith_normal_form(&a);
        prop_assert_eq!(&(&s.u * &a) * &s.v, s.d.clone());
        prop_assert_eq!(s.u.det().unwrap().abs(), BigInt::from(1));
        prop_assert_eq!(s.v.det().unwrap().abs(), BigInt::from(1));
        let nonzero: Vec<&BigInt> = s.diagonal.iter().take_while(|d| !d.is_zero()).collect();
        prop_assert!(s.diagonal[nonzero.len()..].iter().all(Zero::is_zero));
        prop_assert!(nonzero.iter().all(|d| d.is_positive()));
        for w in nonzero.windows(2) {
            prop_assert!(w[1].is_multiple_of(w[0]));
        }
        prop_assert_eq!(s.rank(), a.rank());
    }

    #[test]
    fn snf_is_deterministic(a in matrix(5, 5)) {
        prop_assert_eq!(smith_normal_form(&a), smith_normal_form(&a));
    }

    #[test]
    fn kernel_plus_rank_is_cols(a in matrix(6, 7)) {
        prop_assert_eq!(rational_kernel_rank(&a) + a.rank(), a.cols());
    }

    #[test]
    fn cauchy_binet((a, b) in square_pair(6), j in 0usize..=3) {
        prop_assume!(j <= a.rows());
        let lhs = exterior_power(&(&a * &b), j).unwrap();
        let rhs = &exterior_power(&a, j).unwrap() * &exterior_power(&b, j).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn char_poly_of_block_sum((a, b) in square_pair(4)) {
        let lhs = char_poly(&a.block_diag(&b)).unwrap();
        let rhs = &char_poly(&a).unwrap() * &char_poly(&b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn char_poly_constant_term_is_signed_det(a in square(5)) {
        let chi = char_poly(&a).unwrap();
        let sign = if a.rows() % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
        prop_assert_eq!(chi.coefficient(0), sign * a.det().unwrap());
        prop_assert_eq!(chi.coefficient(a.rows() - 1), -a.trace());
    }

    #[test]
    fn top_exterior_power_is_det(a in square(5)) {
        let top = exterior_power(&a, a.rows()).unwrap();
        prop_assert_eq!(top[(0, 0)].clone(), a.det().unwrap());
    }
}

#[test]
fn exterior_power_of_identity() {
    for n in 0..=6 {
        for j in 0..=n {
            let e = exterior_power(&IntMatrix::identity(n), j).unwrap();
            assert!(e.is_identity(), "n={n} j={j}");
        }
    }
}

#[test]
fn large_entries_stay_exact() {
    // entries beyond 64 bits
    let big = BigInt::from(u64::MAX) * BigInt::from(u64::MAX);
    let a = IntMatrix::new(
        2,
        2,
        vec![big.clone(), BigInt::from(1), BigInt::from(0), big.clone()],
    )
    .unwrap();
    let s = smith_normal_form(&a);
    assert_eq!(&(&s.u * &a) * &s.v, s.d);
    assert_eq!(s.diagonal[0], BigInt::from(1));
    assert_eq!(s.diagonal[1], &big * &big);
}
