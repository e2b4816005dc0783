#![allow(dead_code)]

use num_bigint::BigInt;
use rand::Rng;
use torbundle::{regular_representation_action, validate_action, ActionData, IntMatrix};

pub fn example_rho() -> IntMatrix {
    IntMatrix::from_rows(&[vec![0, -1], vec![1, -1]]).unwrap()
}

pub fn example() -> ActionData {
    validate_action(3, example_rho()).unwrap()
}

pub fn companion(p: u64) -> ActionData {
    validate_action(p as i64, regular_representation_action(p)).unwrap()
}

/// `k` copies of the companion action of `p`.
pub fn companion_sum(p: u64, k: usize) -> ActionData {
    let block = regular_representation_action(p);
    let mut rho = block.clone();
    for _ in 1..k {
        rho = rho.block_diag(&block);
    }
    validate_action(p as i64, rho).unwrap()
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let entries = (0..rows * cols)
        .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
        .collect();
    IntMatrix::new(rows, cols, entries).unwrap()
}

/// A random unimodular matrix and its inverse, built from elementary row operations.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> (IntMatrix, IntMatrix) {
    let mut u = IntMatrix::identity(n);
    let mut u_inv = IntMatrix::identity(n);
    if n < 2 {
        return (u, u_inv);
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        let q = rng.gen_range(-2i64..=2);
        let mut e = IntMatrix::identity(n);
        e[(i, j)] = BigInt::from(q);
        let mut e_inv = IntMatrix::identity(n);
        e_inv[(i, j)] = BigInt::from(-q);
        u = &e * &u;
        u_inv = &u_inv * &e_inv;
    }
    (u, u_inv)
}

/// A random conjugate of `k` copies of the companion action of `p`.
pub fn random_action<R: Rng>(rng: &mut R, p: u64, k: usize) -> ActionData {
    let base = companion_sum(p, k);
    let (u, u_inv) = random_unimodular(rng, base.n(), 6);
    let rho = &(&u * base.rho()) * &u_inv;
    validate_action(p as i64, rho).unwrap()
}
