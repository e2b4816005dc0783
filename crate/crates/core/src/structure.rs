//! Structure sets of `BΓ` and of the flat bundle `M = T^n ×_{Z/p} S^l`, and
//! the census of obstruction groups that detect elements of `S^geo(M)`.
//!
//! Nothing here evaluates an obstruction of an actual homotopy equivalence;
//! the report lists the groups in which the obstructions live.

use thiserror::Error;

use crate::abelian::FgAbGroup;
use crate::action::ActionData;
use crate::invariants::{
    compute_r, conjugacy_classes, ConsistencyError, RjVector, SubgroupClassRep,
};
use crate::ltheory::{
    finite_subgroup_rank, l_of_z, r_weighted_sum, rep_ring_rank, Coefficient, LocalizedModule,
};

/// Largest lattice rank for which the splitting census is enumerated.
pub const MAX_CENSUS_RANK: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("l must be an odd integer >= 3 (got {0})")]
    InvalidL(i64),
    #[error("splitting census over {0} coordinates exceeds the limit of {MAX_CENSUS_RANK}")]
    CensusTooLarge(usize),
    #[error(transparent)]
    Consistency(#[from] ConsistencyError),
}

/// The action together with the sphere dimension `l`.
///
/// `dim M = n + l` and `d = (n + l + 1) / 2`; `l` enters only through the
/// parity of `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifoldParams {
    action: ActionData,
    l: i64,
    r: RjVector,
}

impl ManifoldParams {
    pub fn new(action: ActionData, l: i64) -> Result<Self, StructureError> {
        if l < 3 || l % 2 == 0 {
            return Err(StructureError::InvalidL(l));
        }
        let r = compute_r(&action)?;
        Ok(Self { action, l, r })
    }

    pub fn action(&self) -> &ActionData {
        &self.action
    }

    pub fn l(&self) -> i64 {
        self.l
    }

    pub fn dim(&self) -> i64 {
        self.action.n() as i64 + self.l
    }

    pub fn d(&self) -> i64 {
        (self.dim() + 1) / 2
    }

    /// `(-1)^d`
    pub fn rho_sign(&self) -> i8 {
        if self.d() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn r(&self) -> &RjVector {
        &self.r
    }
}

/// `S^per_m(BΓ)`: `Z[1/p]^(p^k (p-1)/2)` for odd `m`, 0 for even `m`.
pub fn sper_of_bgamma(a: &ActionData, m: i64) -> LocalizedModule {
    let rank = if m.rem_euclid(2) == 1 {
        finite_subgroup_rank(a)
    } else {
        0
    };
    LocalizedModule::free(Coefficient::InvertP(a.p()), rank)
}

/// `S^per(M) = Z^(p^k (p-1)/2) ⊕ ⊕_{i=0}^{n} L_{n-i}(Z)^{r_i}`.
pub fn sper_of_m(mp: &ManifoldParams) -> FgAbGroup {
    let n = mp.action.n();
    FgAbGroup::free(finite_subgroup_rank(&mp.action)).direct_sum(&r_weighted_sum(
        &mp.r,
        n as i64,
        0..n + 1,
    ))
}

/// `S^geo(M) = Z^(p^k (p-1)/2) ⊕ ⊕_{i=0}^{n-1} L_{n-i}(Z)^{r_i}`.
pub fn sgeo_of_m(mp: &ManifoldParams) -> FgAbGroup {
    FgAbGroup::free(finite_subgroup_rank(&mp.action)).direct_sum(&sigma_geo_codomain(mp))
}

/// `⊕_{i=0}^{n-1} L_{n-i}(Z)^{r_i}`, the target of the splitting invariant.
pub fn sigma_geo_codomain(mp: &ManifoldParams) -> FgAbGroup {
    let n = mp.action.n();
    r_weighted_sum(&mp.r, n as i64, 0..n)
}

/// One subtorus `T^J × pt` of the characteristic variety.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingRow {
    /// 1-based coordinates, ascending.
    pub subset: Vec<usize>,
    /// `L_{|J|}(Z)`
    pub group: FgAbGroup,
    /// The obstruction group is trivial.
    pub vacuous: bool,
}

/// Rows for every nonempty `J ⊆ {1..n}`, ordered by the bitmask of `J`.
pub fn splitting_census(mp: &ManifoldParams) -> Result<Vec<SplittingRow>, StructureError> {
    splitting_rows(mp.action.n())
}

/// The census for a rank-`n` torus, independent of the action.
pub fn splitting_rows(n: usize) -> Result<Vec<SplittingRow>, StructureError> {
    if n > MAX_CENSUS_RANK {
        return Err(StructureError::CensusTooLarge(n));
    }
    Ok((1u64..1 << n)
        .map(|mask| {
            let subset: Vec<usize> = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| i + 1)
                .collect();
            let group = l_of_z(subset.len() as i64);
            let vacuous = group.is_trivial();
            SplittingRow {
                subset,
                group,
                vacuous,
            }
        })
        .collect())
}

/// Number of nonempty `J` with `L_{|J|}(Z) ≠ 0`, i.e. `|J|` even: `2^(n-1) - 1`.
pub fn nontrivial_splitting_count(n: usize) -> u64 {
    if n == 0 {
        0
    } else {
        (1u64 << (n - 1)) - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhoTargetRow {
    pub class: SubgroupClassRep,
    /// `R~(P)^{(-1)^d}[1/p]`
    pub target: LocalizedModule,
}

/// One ρ-invariant target per conjugacy class of order-`p` subgroups.
pub fn rho_targets(mp: &ManifoldParams) -> Vec<RhoTargetRow> {
    let p = mp.action.p();
    let rank = rep_ring_rank(p, mp.rho_sign());
    conjugacy_classes(&mp.action)
        .into_iter()
        .map(|class| RhoTargetRow {
            class,
            target: LocalizedModule::free(Coefficient::InvertP(p), rank),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetectionReport {
    pub splitting_entries: Vec<SplittingRow>,
    pub rho_entries: Vec<RhoTargetRow>,
    pub rho_sign: i8,
    pub sigma_geo_codomain: FgAbGroup,
    pub structure_set: FgAbGroup,
    /// `p^k (p-1)/2 + Σ_{i<n, n-i ≡ 0 (4)} r_i`, summed independently of the
    /// group arithmetic.
    pub expected_free_rank: usize,
    /// `expected_free_rank` equals the free rank of `structure_set`.
    pub free_rank_audit: bool,
}

impl DetectionReport {
    pub fn nontrivial_splitting_count(&self) -> usize {
        self.splitting_entries.iter().filter(|r| !r.vacuous).count()
    }
}

pub fn detection_report(mp: &ManifoldParams) -> Result<DetectionReport, StructureError> {
    let n = mp.action.n();
    let structure_set = sgeo_of_m(mp);
    let expected_free_rank = finite_subgroup_rank(&mp.action)
        + (0..n)
            .filter(|i| (n - i).is_multiple_of(4))
            .map(|i| mp.r.get(i))
            .sum::<usize>();
    Ok(DetectionReport {
        splitting_entries: splitting_census(mp)?,
        rho_entries: rho_targets(mp),
        rho_sign: mp.rho_sign(),
        sigma_geo_codomain: sigma_geo_codomain(mp),
        free_rank_audit: structure_set.free_rank() == expected_free_rank,
        structure_set,
        expected_free_rank,
    })
}
