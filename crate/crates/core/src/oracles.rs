//! Brute-force cross-checks for the closed formulas, sized for small inputs.
//!
//! Each oracle reaches its answer by a different route than the operation it
//! checks: orbit enumeration instead of Smith normal form, characters instead
//! of exterior powers, a determinant instead of coset enumeration.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::action::{torus_fixed_points, ActionData};
use crate::invariants::{
    compute_r, conjugacy_classes, r_closed_form_k1, ConsistencyError, RjVector,
};
use crate::poly::{binomial, cyclotomic, int_pow, poly_pow_coefficient};

/// Oracles refuse search spaces above this many states.
pub const MAX_STATES: u64 = 10_000_000;

/// The modulus-doubling self-check runs when the doubled space stays below this.
pub const SELF_CHECK_STATES: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("search space of {states} states exceeds the oracle limit of {MAX_STATES}")]
    TooLarge { states: String },
    #[error("modulus {modulus} is not a multiple of p^k = {required}")]
    BadModulus { modulus: u64, required: String },
    #[error("orbit count changed from {at_modulus} to {at_double} when doubling the modulus")]
    Unstable { at_modulus: u64, at_double: u64 },
    #[error("character sum for r_{j} is {numerator}, not divisible by p")]
    InexactDivision { j: usize, numerator: String },
    #[error(transparent)]
    Consistency(#[from] ConsistencyError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleOutcome {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub agree: bool,
}

impl OracleOutcome {
    fn compare(name: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Self {
        let expected = expected.to_string();
        let actual = actual.to_string();
        Self {
            name: name.into(),
            agree: expected == actual,
            expected,
            actual,
        }
    }
}

fn state_count(modulus: u64, n: usize) -> Option<u64> {
    modulus.checked_pow(n as u32).filter(|&s| s <= MAX_STATES)
}

fn count_orbits(a: &ActionData, modulus: u64) -> u64 {
    let n = a.n();
    let states = modulus.pow(n as u32) as usize;
    let m = BigInt::from(modulus);
    // columns of (I - rho) reduced mod the modulus
    let gens: Vec<Vec<u64>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    let x = -&a.rho_minus_id()[(i, j)];
                    x.mod_floor(&m).to_u64().expect("reduced entry fits")
                })
                .collect()
        })
        .collect();

    let decode = |mut s: usize, out: &mut [u64]| {
        for d in out.iter_mut().rev() {
            *d = s as u64 % modulus;
            s /= modulus as usize;
        }
    };
    let encode = |v: &[u64]| {
        v.iter()
            .fold(0usize, |acc, &d| acc * modulus as usize + d as usize)
    };

    let mut seen = vec![false; states];
    let mut orbits = 0u64;
    let mut queue = VecDeque::new();
    let mut digits = vec![0u64; n];
    let mut shifted = vec![0u64; n];
    for start in 0..states {
        if seen[start] {
            continue;
        }
        orbits += 1;
        seen[start] = true;
        queue.push_back(start);
        while let Some(s) = queue.pop_front() {
            decode(s, &mut digits);
            for g in &gens {
                for ((t, d), x) in shifted.iter_mut().zip(&digits).zip(g) {
                    *t = (d + x) % modulus;
                }
                let t = encode(&shifted);
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
    }
    orbits
}

/// Counts orbits of `u ↦ u + (I - rho) v` on `(Z/modulus)^n`.
///
/// `det(rho - I) Z^n ⊆ (rho - I) Z^n`, so any multiple of `p^k` is a faithful
/// modulus. When the space at twice the modulus is small the count is
/// repeated there and must not change.
pub fn oracle_conjugacy_by_orbits(a: &ActionData, modulus: u64) -> Result<u64, OracleError> {
    let required = a.p_to_k();
    if modulus == 0 || !(BigInt::from(modulus) % &required).is_zero() {
        return Err(OracleError::BadModulus {
            modulus,
            required: required.to_string(),
        });
    }
    if state_count(modulus, a.n()).is_none() {
        return Err(OracleError::TooLarge {
            states: BigInt::from(modulus).pow(a.n() as u32).to_string(),
        });
    }
    let count = count_orbits(a, modulus);
    let doubled = modulus * 2;
    if doubled
        .checked_pow(a.n() as u32)
        .is_some_and(|s| s <= SELF_CHECK_STATES)
    {
        let again = count_orbits(a, doubled);
        if again != count {
            return Err(OracleError::Unstable {
                at_modulus: count,
                at_double: again,
            });
        }
    }
    Ok(count)
}

/// Default orbit-oracle modulus `p^(k+1)`.
pub fn default_modulus(a: &ActionData) -> u64 {
    a.p().pow(a.k() as u32 + 1)
}

/// `r_j = (C(n, j) + (p - 1)(-1)^j [x^(n-j)] Φ_p^k) / p`.
///
/// The eigenvalues of every nontrivial power of `rho` are the primitive
/// `p`-th roots, each `k` times, so `tr Λ^j(rho^a)` is the same for all
/// `a ≠ 0` and equals `(-1)^j` times that coefficient; averaging over the
/// group gives the fixed-space dimension.
pub fn oracle_r_by_characters(a: &ActionData) -> Result<RjVector, OracleError> {
    let (p, n, k) = (a.p(), a.n(), a.k());
    let phi = cyclotomic(p).map_err(|e| ConsistencyError(e.to_string()))?;
    let pb = BigInt::from(p);
    let mut values = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let coeff = poly_pow_coefficient(&phi, k as u32, n - j);
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let numerator = binomial(n, j) + BigInt::from(sign * (p as i64 - 1)) * coeff;
        let (q, rem) = numerator.div_rem(&pb);
        if !rem.is_zero() || q.is_negative() {
            return Err(OracleError::InexactDivision {
                j,
                numerator: numerator.to_string(),
            });
        }
        values.push(q.to_usize().expect("r_j fits in usize"));
    }
    Ok(RjVector { values })
}

/// `|det(rho - I)|`.
pub fn oracle_fixed_point_count(a: &ActionData) -> Result<BigInt, OracleError> {
    let det = a
        .rho_minus_id()
        .det()
        .map_err(|e| ConsistencyError(e.to_string()))?;
    Ok(det.abs())
}

/// One outcome per `j` comparing the exterior-power route against the
/// character route and, for `k = 1`, the closed form.
pub fn oracle_closed_form_vs_exterior(a: &ActionData) -> Result<Vec<OracleOutcome>, OracleError> {
    let exterior = compute_r(a)?;
    let characters = oracle_r_by_characters(a)?;
    Ok((0..=a.n())
        .map(|j| {
            let ext = exterior.get(j);
            let chr = characters.get(j);
            if a.k() == 1 {
                let closed = r_closed_form_k1(a.p(), j);
                OracleOutcome {
                    name: format!("r_{j}: exterior power vs characters vs closed form"),
                    expected: format!("{chr} (characters), {closed} (closed form)"),
                    actual: format!("{ext} (exterior power)"),
                    agree: ext == chr && chr == closed,
                }
            } else {
                OracleOutcome::compare(format!("r_{j}: exterior power vs characters"), chr, ext)
            }
        })
        .collect())
}

/// All oracles for one action, plus the names of checks refused for size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub outcomes: Vec<OracleOutcome>,
    pub skipped: Vec<String>,
}

impl Verification {
    pub fn all_agree(&self) -> bool {
        self.outcomes.iter().all(|o| o.agree)
    }
}

pub fn verify_all(a: &ActionData) -> Result<Verification, OracleError> {
    let mut outcomes = Vec::new();
    let mut skipped = Vec::new();
    let pk = a.p_to_k();

    let modulus = default_modulus(a);
    match oracle_conjugacy_by_orbits(a, modulus) {
        Ok(count) => outcomes.push(OracleOutcome::compare(
            format!(
                "conjugacy classes: orbits on (Z/{modulus})^{} vs coset enumeration",
                a.n()
            ),
            count,
            conjugacy_classes(a).len(),
        )),
        Err(OracleError::TooLarge { states }) => {
            skipped.push(format!("conjugacy orbit enumeration ({states} states)"))
        }
        Err(e) => return Err(e),
    }

    let det = oracle_fixed_point_count(a)?;
    outcomes.push(OracleOutcome::compare(
        "fixed points: |det(rho - I)| vs p^k",
        &pk,
        &det,
    ));
    outcomes.push(OracleOutcome::compare(
        "fixed points: |det(rho - I)| vs enumeration",
        &det,
        torus_fixed_points(a).len(),
    ));
    outcomes.extend(oracle_closed_form_vs_exterior(a)?);
    debug_assert_eq!(pk, int_pow(a.p(), a.k() as u32));
    Ok(Verification { outcomes, skipped })
}
