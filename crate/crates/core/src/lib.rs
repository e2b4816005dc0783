//! Exact invariants of a free-away-from-zero `Z/p` action `rho` on `Z^n`.
//!
//! Starting from an odd prime `p` and an integral matrix `rho` of order `p`,
//! this crate computes the invariants of the crystallographic group
//! `Γ = Z^n ⋊_rho Z/p` and of the flat torus bundle `M = T^n ×_{Z/p} S^l`:
//!
//! * [`invariants`]: `H^1`, conjugacy classes of order-`p` subgroups,
//!   abelianization, and the ranks `r_j` of fixed exterior powers.
//! * [`ltheory`]: L-groups of `Z`, `Z[Z^n]`, `Z[Z/p]` and `ZΓ`, Whitehead groups.
//! * [`structure`]: periodic and geometric structure sets and the census of
//!   obstruction groups that detect them.
//! * [`oracles`]: brute-force cross-checks for all of the above.
//!
//! All arithmetic is exact ([`linalg`] works over `BigInt`).
//!
//! ```
//! use torbundle::{validate_action, IntMatrix, ManifoldParams, sgeo_of_m};
//!
//! let rho = IntMatrix::from_rows(&[vec![0, -1], vec![1, -1]]).unwrap();
//! let action = validate_action(3, rho).unwrap();
//! let mp = ManifoldParams::new(action, 3).unwrap();
//! assert_eq!(sgeo_of_m(&mp).to_string(), "Z^3 + Z/2");
//! ```

pub mod abelian;
pub mod action;
pub mod invariants;
pub mod linalg;
pub mod ltheory;
pub mod oracles;
pub mod poly;
pub mod structure;

pub use abelian::FgAbGroup;
pub use action::{
    regular_representation_action, torus_fixed_points, validate_action, ActionData, ActionError,
    TorusFixedPoint,
};
pub use invariants::{
    abelianization, commutator_rank_check, compute_r, conjugacy_classes, h1, r_closed_form_k1,
    ConsistencyError, RjVector, SubgroupClassRep,
};
pub use linalg::{
    char_poly, cokernel, exterior_power, rational_kernel_rank, smith_normal_form, IntMatrix,
    LinalgError, SnfDecomposition,
};
pub use ltheory::{
    l_of_z, l_of_zn, l_of_zp_decorated, ls_of_zgamma, reduced_ls_of_zp, rep_ring_rank, whitehead,
    Coefficient, Decoration, LGroupTableEntry, LTheoryError, LocalizedModule, RingLabel,
};
pub use oracles::{verify_all, OracleError, OracleOutcome, Verification};
pub use poly::{cyclotomic, poly_pow_coefficient, IntPolynomial};
pub use structure::{
    detection_report, nontrivial_splitting_count, rho_targets, sgeo_of_m, sigma_geo_codomain,
    sper_of_bgamma, sper_of_m, splitting_census, splitting_rows, DetectionReport, ManifoldParams,
    StructureError,
};

/// Any error raised by this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Consistency(#[from] ConsistencyError),
    #[error(transparent)]
    LTheory(#[from] LTheoryError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}
