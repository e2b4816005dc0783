//! Fixtures shared by the benchmarks.

use torbundle::{
    regular_representation_action, validate_action, ActionData, IntMatrix, ManifoldParams,
};

/// `k` copies of the companion matrix of `Φ_p`, conjugated by a fixed
/// unimodular shear so that the blocks are mixed.
pub fn mixed_action(p: u64, k: usize) -> ActionData {
    let block = regular_representation_action(p);
    let rho = (1..k).fold(block.clone(), |acc, _| acc.block_diag(&block));
    let n = rho.rows();
    let mut shear = IntMatrix::identity(n);
    let mut shear_inv = IntMatrix::identity(n);
    for i in 0..n - 1 {
        shear[(i, i + 1)] = 1.into();
    }
    // inverse of I + N with N the superdiagonal shift is sum (-N)^t
    for i in 0..n {
        for j in i + 1..n {
            shear_inv[(i, j)] = if (j - i) % 2 == 0 { 1 } else { -1 }.into();
        }
    }
    let conjugated = &(&shear * &rho) * &shear_inv;
    validate_action(p as i64, conjugated).expect("conjugate of a valid action")
}

pub fn mixed_manifold(p: u64, k: usize, l: i64) -> ManifoldParams {
    ManifoldParams::new(mixed_action(p, k), l).expect("odd l >= 3")
}

/// A dense matrix with entries in `-9..=9` from a small LCG.
pub fn dense_matrix(n: usize, seed: u64) -> IntMatrix {
    let mut state = seed;
    let entries = (0..n * n)
        .map(|_| {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 33) % 19) as i64 - 9
        })
        .collect::<Vec<_>>();
    IntMatrix::new(n, n, entries.into_iter().map(Into::into).collect()).expect("n * n entries")
}
