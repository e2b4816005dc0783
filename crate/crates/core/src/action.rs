//! Validated `Z/p` actions on `Z^n` that are free away from the origin.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::{char_poly, smith_normal_form, IntMatrix, SnfDecomposition};
use crate::poly::{cyclotomic, int_pow, is_prime};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("p must be an odd prime (got {0}, which is not prime)")]
    NonPrimeP(i64),
    #[error("p must be an odd prime (got {0}, which is even)")]
    EvenP(i64),
    #[error("rho must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("rho must act on a lattice of positive rank")]
    EmptyLattice,
    #[error("rho must have order exactly p: {0}")]
    WrongOrder(&'static str),
    #[error("action is not free away from the origin: det(rho - I) = 0")]
    NotFree,
    #[error("lattice rank {n} is not a multiple of p - 1 = {}", p - 1)]
    DimensionMismatch { n: usize, p: u64 },
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

/// An order-`p` integral representation `rho` of `Z/p` on `Z^n` such that no
/// nonzero lattice vector is fixed by a nontrivial element.
///
/// `n = k (p - 1)`, the characteristic polynomial of `rho` is `Φ_p^k` and
/// `|det(rho - I)| = p^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionData {
    p: u64,
    n: usize,
    k: usize,
    rho: IntMatrix,
    rho_minus_id: IntMatrix,
    snf_of_rho_minus_id: SnfDecomposition,
}

impl ActionData {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rho(&self) -> &IntMatrix {
        &self.rho
    }

    pub fn rho_minus_id(&self) -> &IntMatrix {
        &self.rho_minus_id
    }

    pub fn snf_of_rho_minus_id(&self) -> &SnfDecomposition {
        &self.snf_of_rho_minus_id
    }

    /// `p^k`, the number of fixed points on the torus and of conjugacy
    /// classes of order-`p` subgroups.
    pub fn p_to_k(&self) -> BigInt {
        int_pow(self.p, self.k as u32)
    }

    /// `p^k` as a machine integer, for counts that index enumerations.
    pub fn class_count(&self) -> usize {
        (self.p as usize).pow(self.k as u32)
    }

    /// Direct sum of two actions of the same prime, `rho ⊕ rho'`.
    pub fn direct_sum(&self, other: &ActionData) -> Result<ActionData, ActionError> {
        if self.p != other.p {
            return Err(ActionError::Inconsistent(format!(
                "cannot add actions of different primes {} and {}",
                self.p, other.p
            )));
        }
        validate_action(self.p as i64, self.rho.block_diag(&other.rho))
    }
}

/// Checks, in order: `p` odd prime, `rho^p = I`, `rho ≠ I`, `det(rho - I) ≠ 0`,
/// `(p - 1) | n`, and finally that the characteristic polynomial is `Φ_p^k`.
///
/// For prime `p` a nontrivial power of `rho` fixes a nonzero vector only if
/// `rho` itself does, so `det(rho - I) ≠ 0` is the freeness test.
pub fn validate_action(p: i64, rho: IntMatrix) -> Result<ActionData, ActionError> {
    if p % 2 == 0 {
        return Err(ActionError::EvenP(p));
    }
    if p < 0 || !is_prime(p as u64) {
        return Err(ActionError::NonPrimeP(p));
    }
    let p = p as u64;
    if !rho.is_square() {
        return Err(ActionError::NotSquare {
            rows: rho.rows(),
            cols: rho.cols(),
        });
    }
    let n = rho.rows();
    if n == 0 {
        return Err(ActionError::EmptyLattice);
    }
    if !rho.pow(p).is_identity() {
        return Err(ActionError::WrongOrder("rho^p is not the identity"));
    }
    if rho.is_identity() {
        return Err(ActionError::WrongOrder("rho is the identity"));
    }
    let rho_minus_id = &rho - &IntMatrix::identity(n);
    let det = rho_minus_id
        .det()
        .map_err(|e| ActionError::Inconsistent(e.to_string()))?;
    if det.is_zero() {
        return Err(ActionError::NotFree);
    }
    if !n.is_multiple_of(p as usize - 1) {
        return Err(ActionError::DimensionMismatch { n, p });
    }
    let k = n / (p as usize - 1);

    let phi = cyclotomic(p).map_err(|e| ActionError::Inconsistent(e.to_string()))?;
    let chi = char_poly(&rho).map_err(|e| ActionError::Inconsistent(e.to_string()))?;
    if chi != phi.pow(k as u32) {
        return Err(ActionError::Inconsistent(format!(
            "characteristic polynomial {chi} is not Φ_{p}^{k}"
        )));
    }
    if det.abs() != int_pow(p, k as u32) {
        return Err(ActionError::Inconsistent(format!(
            "|det(rho - I)| = {} but p^k = {}",
            det.abs(),
            int_pow(p, k as u32)
        )));
    }

    let snf_of_rho_minus_id = smith_normal_form(&rho_minus_id);
    Ok(ActionData {
        p,
        n,
        k,
        rho,
        rho_minus_id,
        snf_of_rho_minus_id,
    })
}

/// Multiplication by the generator on `Z[Z/p] / (norm)` in the basis
/// `1, t, ..., t^(p-2)`: the companion matrix of `Φ_p`.
pub fn regular_representation_action(p: u64) -> IntMatrix {
    let n = p as usize - 1;
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n - 1 {
        m[(i + 1, i)] = BigInt::one();
    }
    for i in 0..n {
        m[(i, n - 1)] = -BigInt::one();
    }
    m
}

/// Point of the torus `R^n / Z^n`, coordinates in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusFixedPoint {
    pub coordinates: Vec<BigRational>,
}

impl TorusFixedPoint {
    pub fn is_origin(&self) -> bool {
        self.coordinates.iter().all(Zero::is_zero)
    }
}

/// Reduces a rational into `[0, 1)`.
pub(crate) fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

/// Every vector `y` with `0 ≤ y_i < d_i`, in mixed-radix order (last index fastest).
/// Zero entries of `d` are treated as 1.
pub(crate) fn box_points(d: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut out = vec![Vec::with_capacity(d.len())];
    for di in d {
        let bound = if di.is_zero() {
            BigInt::one()
        } else {
            di.clone()
        };
        let mut next = Vec::new();
        for prefix in &out {
            let mut y = BigInt::zero();
            while y < bound {
                let mut v = prefix.clone();
                v.push(y.clone());
                next.push(v);
                y += 1;
            }
        }
        out = next;
    }
    out
}

/// The `p^k` points of `R^n / Z^n` fixed by `rho`.
///
/// With `U (rho - I) V = D`, these are `V D^{-1} y mod Z^n` for `y` in the box
/// `0 ≤ y_i < d_i`.
pub fn torus_fixed_points(a: &ActionData) -> Vec<TorusFixedPoint> {
    let snf = &a.snf_of_rho_minus_id;
    box_points(&snf.diagonal)
        .into_iter()
        .map(|y| {
            let scaled: Vec<BigRational> = y
                .iter()
                .zip(&snf.diagonal)
                .map(|(yi, di)| BigRational::new(yi.clone(), di.clone()))
                .collect();
            let coordinates = (0..a.n)
                .map(|i| {
                    let x: BigRational = (0..a.n)
                        .map(|j| BigRational::from_integer(snf.v[(i, j)].clone()) * &scaled[j])
                        .sum();
                    frac(&x)
                })
                .collect();
            TorusFixedPoint { coordinates }
        })
        .collect()
}
