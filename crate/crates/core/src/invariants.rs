//! Group-theoretic invariants of `Γ = Z^n ⋊_rho Z/p`.
//!
//! `H^1(Z/p; Z^n)`, conjugacy classes of order-`p` subgroups, the
//! abelianization, the commutator subgroup check, and the ranks `r_j` of the
//! fixed parts of the exterior powers of the lattice.

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::abelian::FgAbGroup;
use crate::action::{box_points, ActionData};
use crate::linalg::{cokernel, exterior_power, rational_kernel_rank, IntMatrix};
use crate::poly::{binomial, is_prime};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("internal consistency check failed: {0}")]
pub struct ConsistencyError(pub String);

/// A coset `ū ∈ Z^n / (rho - I) Z^n`, standing for the conjugacy class of
/// the subgroup generated by `u s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubgroupClassRep {
    pub u: Vec<BigInt>,
    pub label: usize,
}

/// `r_0, ..., r_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RjVector {
    pub values: Vec<usize>,
}

impl RjVector {
    pub fn get(&self, j: usize) -> usize {
        self.values.get(j).copied().unwrap_or(0)
    }

    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn sum(&self) -> usize {
        self.values.iter().sum()
    }
}

fn elementary(p: u64, count: usize) -> FgAbGroup {
    FgAbGroup::cyclic(BigInt::from(p)).pow(count)
}

/// `H^1(Z/p; Z^n_rho) ≅ coker(rho - I)`, which is `(Z/p)^k`.
pub fn h1(a: &ActionData) -> Result<FgAbGroup, ConsistencyError> {
    let g = cokernel(a.rho_minus_id());
    let expected = elementary(a.p(), a.k());
    if g != expected {
        return Err(ConsistencyError(format!(
            "coker(rho - I) = {g}, expected {expected}"
        )));
    }
    Ok(g)
}

/// One representative per conjugacy class of order-`p` subgroups.
///
/// With `U (rho - I) V = D`, the coset of `u` is determined by `U u mod D`, so
/// the classes are `u = U^{-1} y` for `y` in the box `0 ≤ y_i < d_i`. Labels
/// count the box in mixed radix.
pub fn conjugacy_classes(a: &ActionData) -> Vec<SubgroupClassRep> {
    let snf = a.snf_of_rho_minus_id();
    box_points(&snf.diagonal)
        .into_iter()
        .enumerate()
        .map(|(label, y)| SubgroupClassRep {
            u: snf.u_inv.mul_vec(&y),
            label,
        })
        .collect()
}

/// `Γ^ab ≅ coker(rho - I) ⊕ Z/p = (Z/p)^(k+1)`.
pub fn abelianization(a: &ActionData) -> Result<FgAbGroup, ConsistencyError> {
    let g = cokernel(a.rho_minus_id()).direct_sum(&FgAbGroup::cyclic(BigInt::from(a.p())));
    let expected = elementary(a.p(), a.k() + 1);
    if g != expected {
        return Err(ConsistencyError(format!(
            "abelianization {g}, expected {expected}"
        )));
    }
    Ok(g)
}

/// `[Γ, Γ] = im(rho - I)`; true when that image has full rank `n`.
pub fn commutator_rank_check(a: &ActionData) -> bool {
    a.rho_minus_id().rank() == a.n()
}

/// `r_j` as the dimension of the fixed space of `Λ^j rho`, for `j = 0..=n`.
pub fn compute_r(a: &ActionData) -> Result<RjVector, ConsistencyError> {
    let det = a.rho().det().map_err(|e| ConsistencyError(e.to_string()))?;
    if !det.is_one() {
        return Err(ConsistencyError(format!("det rho = {det}, expected 1")));
    }
    let n = a.n();
    let mut values = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let ext = exterior_power(a.rho(), j).map_err(|e| ConsistencyError(e.to_string()))?;
        let shifted = &ext - &IntMatrix::identity(ext.rows());
        values.push(rational_kernel_rank(&shifted));
    }
    if values[0] != 1 || values[n] != 1 {
        return Err(ConsistencyError(format!(
            "r_0 = {}, r_n = {}; both must be 1",
            values[0], values[n]
        )));
    }
    Ok(RjVector { values })
}

/// `r_j` for `k = 1`: `(C(p-1, j) + (-1)^j (p-1)) / p` for `j < p`, else 0.
pub fn r_closed_form_k1(p: u64, j: usize) -> usize {
    debug_assert!(is_prime(p));
    if j >= p as usize {
        return 0;
    }
    let sign = if j.is_multiple_of(2) { 1 } else { -1 };
    let num = binomial(p as usize - 1, j) + BigInt::from(sign * (p as i64 - 1));
    let q = num / BigInt::from(p);
    q.try_into().expect("r_j fits in usize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{regular_representation_action, validate_action};
    use num_traits::Zero;
    use std::collections::HashSet;

    fn companion(p: u64) -> ActionData {
        validate_action(p as i64, regular_representation_action(p)).unwrap()
    }

    fn example() -> ActionData {
        let rho = IntMatrix::from_rows(&[vec![0, -1], vec![1, -1]]).unwrap();
        validate_action(3, rho).unwrap()
    }

    fn z(p: i64) -> FgAbGroup {
        FgAbGroup::cyclic(BigInt::from(p))
    }

    #[test]
    fn h1_examples() {
        assert_eq!(h1(&example()).unwrap(), z(3));
        assert_eq!(h1(&companion(5)).unwrap(), z(5));
        let e = example();
        assert_eq!(h1(&e.direct_sum(&e).unwrap()).unwrap(), z(3).pow(2));
    }

    #[test]
    fn abelianization_examples() {
        assert_eq!(abelianization(&example()).unwrap(), z(3).pow(2));
        assert_eq!(abelianization(&companion(5)).unwrap(), z(5).pow(2));
        let e = example();
        assert_eq!(
            abelianization(&e.direct_sum(&e).unwrap()).unwrap(),
            z(3).pow(3)
        );
    }

    #[test]
    fn class_reps_are_distinct_cosets() {
        let e = example();
        for a in [
            e.clone(),
            e.direct_sum(&e).unwrap(),
            companion(5),
            companion(7),
        ] {
            let reps = conjugacy_classes(&a);
            assert_eq!(reps.len(), a.class_count());
            assert!(reps[0].u.iter().all(Zero::is_zero));
            // distinct images in Z^n / D under U
            let snf = a.snf_of_rho_minus_id();
            let images: HashSet<Vec<BigInt>> = reps
                .iter()
                .map(|r| {
                    snf.u
                        .mul_vec(&r.u)
                        .iter()
                        .zip(&snf.diagonal)
                        .map(|(x, d)| num_integer::Integer::mod_floor(x, d))
                        .collect()
                })
                .collect();
            assert_eq!(images.len(), reps.len());
            let labels: Vec<usize> = reps.iter().map(|r| r.label).collect();
            assert_eq!(labels, (0..reps.len()).collect::<Vec<_>>());
        }
        assert_eq!(conjugacy_classes(&example()).len(), 3);
    }

    #[test]
    fn commutator_full_rank() {
        assert!(commutator_rank_check(&example()));
        assert!(commutator_rank_check(&companion(5)));
        assert!(commutator_rank_check(&companion(7)));
    }

    #[test]
    fn r_vectors() {
        assert_eq!(compute_r(&example()).unwrap().values, vec![1, 0, 1]);
        assert_eq!(
            compute_r(&companion(5)).unwrap().values,
            vec![1, 0, 2, 0, 1]
        );
        let e = example();
        // Λ²(A ⊕ A) = Λ²A ⊕ (A ⊗ A) ⊕ Λ²A; A ⊗ A has a 2-dimensional fixed space
        assert_eq!(
            compute_r(&e.direct_sum(&e).unwrap()).unwrap().values,
            vec![1, 0, 4, 0, 1]
        );
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(r_closed_form_k1(3, 0), 1);
        assert_eq!(r_closed_form_k1(3, 1), 0);
        assert_eq!(r_closed_form_k1(5, 2), 2);
        assert_eq!(r_closed_form_k1(5, 5), 0);
        assert_eq!(r_closed_form_k1(3, 7), 0);
        let r7: Vec<usize> = (0..=6).map(|j| r_closed_form_k1(7, j)).collect();
        assert_eq!(r7, vec![1, 0, 3, 2, 3, 0, 1]);
    }

    #[test]
    fn closed_form_matches_exterior_route() {
        for p in [3u64, 5, 7] {
            let r = compute_r(&companion(p)).unwrap();
            for j in 0..=r.n() {
                assert_eq!(r.get(j), r_closed_form_k1(p, j), "p={p} j={j}");
            }
        }
    }
}
