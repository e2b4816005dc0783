//! Closed-form L-groups, Whitehead groups and representation-ring ranks.
//!
//! Degrees are arbitrary integers; every L-group here is 4-periodic and is
//! looked up by `m mod 4`.

use std::fmt;
use std::ops::Range;

use num_bigint::BigInt;
use thiserror::Error;

use crate::abelian::FgAbGroup;
use crate::action::ActionData;
use crate::invariants::{compute_r, ConsistencyError, RjVector};
use crate::poly::binomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LTheoryError {
    #[error("decoration {0} has no closed form for Z[Z/p]")]
    UnsupportedDecoration(Decoration),
    #[error("Wh_{0} has no closed form here; degrees must be at most 1")]
    UnsupportedDegree(i64),
    #[error("LocalizedModule over {coefficient} cannot carry torsion of order {order}")]
    InvertedTorsion {
        coefficient: Coefficient,
        order: BigInt,
    },
    #[error(transparent)]
    Consistency(#[from] ConsistencyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingLabel {
    /// `Z`
    Integers,
    /// `Z[Z^n]`
    Laurent,
    /// `Z[Z/p]`
    CyclicGroupRing,
    /// `Z Γ`
    GammaGroupRing,
}

impl fmt::Display for RingLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RingLabel::Integers => "Z",
            RingLabel::Laurent => "Z[Z^n]",
            RingLabel::CyclicGroupRing => "Z[Z/p]",
            RingLabel::GammaGroupRing => "Z[Gamma]",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Decoration {
    S,
    H,
    /// `<0>`, projective.
    P,
    /// `<-i>` for `i ≥ 1`.
    Minus(u32),
    MinusInfinity,
}

impl fmt::Display for Decoration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decoration::S => f.write_str("s"),
            Decoration::H => f.write_str("h"),
            Decoration::P => f.write_str("p"),
            Decoration::Minus(i) => write!(f, "<-{i}>"),
            Decoration::MinusInfinity => f.write_str("<-inf>"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LGroupTableEntry {
    pub ring: RingLabel,
    pub decoration: Decoration,
    pub degree: i64,
    pub value: FgAbGroup,
}

/// Ring of coefficients of a localized module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coefficient {
    Integers,
    InvertP(u64),
    InvertTwo,
    InvertTwoP(u64),
}

impl Coefficient {
    fn inverts(&self, q: &BigInt) -> bool {
        let divides = |d: u64| (q % BigInt::from(d)) == BigInt::from(0);
        match *self {
            Coefficient::Integers => false,
            Coefficient::InvertP(p) => divides(p),
            Coefficient::InvertTwo => divides(2),
            Coefficient::InvertTwoP(p) => divides(2) || divides(p),
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Integers => write!(f, "Z"),
            Coefficient::InvertP(p) => write!(f, "Z[1/{p}]"),
            Coefficient::InvertTwo => write!(f, "Z[1/2]"),
            Coefficient::InvertTwoP(p) => write!(f, "Z[1/{}]", 2 * p),
        }
    }
}

/// `R^free_rank ⊕ torsion` over a localization `R` of `Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalizedModule {
    coefficient: Coefficient,
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl LocalizedModule {
    /// Rejects torsion whose order is a unit in the coefficient ring.
    pub fn new(
        coefficient: Coefficient,
        free_rank: usize,
        torsion: Vec<BigInt>,
    ) -> Result<Self, LTheoryError> {
        if let Some(bad) = torsion.iter().find(|d| coefficient.inverts(d)) {
            return Err(LTheoryError::InvertedTorsion {
                coefficient,
                order: bad.clone(),
            });
        }
        let torsion = FgAbGroup::from_parts(0, torsion)
            .invariant_factors()
            .to_vec();
        Ok(Self {
            coefficient,
            free_rank,
            torsion,
        })
    }

    pub fn free(coefficient: Coefficient, free_rank: usize) -> Self {
        Self {
            coefficient,
            free_rank,
            torsion: Vec::new(),
        }
    }

    pub fn coefficient(&self) -> Coefficient {
        self.coefficient
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

/// `Z[1/p]^r + Z/d + ...`, or `0`.
impl fmt::Display for LocalizedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        match self.free_rank {
            0 => {}
            1 => terms.push(self.coefficient.to_string()),
            r => terms.push(format!("{}^{r}", self.coefficient)),
        }
        terms.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

fn is_even(m: i64) -> bool {
    m.rem_euclid(2) == 0
}

/// `L_m(Z)`: `Z, 0, Z/2, 0` for `m ≡ 0, 1, 2, 3 (mod 4)`.
pub fn l_of_z(m: i64) -> FgAbGroup {
    match m.rem_euclid(4) {
        0 => FgAbGroup::free(1),
        2 => FgAbGroup::cyclic(BigInt::from(2)),
        _ => FgAbGroup::trivial(),
    }
}

/// `L_m(Z[Z^n]) = ⊕_i L_{m-i}(Z)^C(n,i)`.
pub fn l_of_zn(m: i64, n: usize) -> FgAbGroup {
    (0..=n)
        .map(|i| {
            let copies: usize = binomial(n, i).try_into().expect("binomial fits in usize");
            l_of_z(m - i as i64).pow(copies)
        })
        .sum()
}

/// `L^<j>_m(Z[Z/p])` for `j ≤ 0`: `Z^((p-1)/2) ⊕ L_m(Z)` in even degrees, 0 in odd.
pub fn l_of_zp_decorated(
    m: i64,
    p: u64,
    decoration: Decoration,
) -> Result<FgAbGroup, LTheoryError> {
    match decoration {
        Decoration::S | Decoration::H => Err(LTheoryError::UnsupportedDecoration(decoration)),
        Decoration::P | Decoration::Minus(_) | Decoration::MinusInfinity => Ok(if is_even(m) {
            FgAbGroup::free(half(p)).direct_sum(&l_of_z(m))
        } else {
            FgAbGroup::trivial()
        }),
    }
}

/// Reduced `L^s_m(Z[Z/p])`: `Z^((p-1)/2)` in even degrees, 0 in odd.
pub fn reduced_ls_of_zp(m: i64, p: u64) -> FgAbGroup {
    if is_even(m) {
        FgAbGroup::free(half(p))
    } else {
        FgAbGroup::trivial()
    }
}

fn half(p: u64) -> usize {
    (p as usize - 1) / 2
}

/// `⊕_{i ∈ indices} L_{m-i}(Z)^{r_i}`.
pub fn r_weighted_sum(r: &RjVector, m: i64, indices: Range<usize>) -> FgAbGroup {
    indices.map(|i| l_of_z(m - i as i64).pow(r.get(i))).sum()
}

/// Free rank `p^k (p-1)/2` contributed by the order-`p` subgroups.
pub fn finite_subgroup_rank(a: &ActionData) -> usize {
    a.class_count() * half(a.p())
}

/// `L^s_m(ZΓ)` from precomputed `r`.
pub fn ls_of_zgamma_with(a: &ActionData, r: &RjVector, m: i64) -> FgAbGroup {
    let tail = r_weighted_sum(r, m, 0..a.n() + 1);
    if is_even(m) {
        FgAbGroup::free(finite_subgroup_rank(a)).direct_sum(&tail)
    } else {
        tail
    }
}

/// `L^s_m(ZΓ)`: `Z^(p^k (p-1)/2) ⊕ ⊕_i L_{m-i}(Z)^{r_i}` for even `m`,
/// the `r`-sum alone for odd `m`.
pub fn ls_of_zgamma(a: &ActionData, m: i64) -> Result<FgAbGroup, LTheoryError> {
    let r = compute_r(a)?;
    Ok(ls_of_zgamma_with(a, &r, m))
}

/// `Wh_m(Γ) ≅ ⊕_{(P)} Wh_m(Z/p)` for `m ≤ 1`.
pub fn whitehead(a: &ActionData, m: i64) -> Result<FgAbGroup, LTheoryError> {
    let classes = a.class_count();
    match m {
        1 => Ok(FgAbGroup::free(classes * (a.p() as usize - 3) / 2)),
        0 => Ok(FgAbGroup::symbolic(class_group_token(a.p())).pow(classes)),
        m if m < 0 => Ok(FgAbGroup::trivial()),
        m => Err(LTheoryError::UnsupportedDegree(m)),
    }
}

/// Token for the ideal class group of `Z[ζ_p]`, whose order is not computed.
pub fn class_group_token(p: u64) -> String {
    format!("C(Z[zeta_{p}])")
}

/// Rank of the `±1` eigenpart of the reduced representation ring of `Z/p`.
pub fn rep_ring_rank(p: u64, _sign: i8) -> usize {
    half(p)
}

/// The four tabulated rings over `degrees`, in ring-major order.
pub fn l_table(a: &ActionData, r: &RjVector, degrees: Range<i64>) -> Vec<LGroupTableEntry> {
    let mut out = Vec::new();
    for m in degrees {
        out.push(LGroupTableEntry {
            ring: RingLabel::Integers,
            decoration: Decoration::S,
            degree: m,
            value: l_of_z(m),
        });
        out.push(LGroupTableEntry {
            ring: RingLabel::Laurent,
            decoration: Decoration::S,
            degree: m,
            value: l_of_zn(m, a.n()),
        });
        out.push(LGroupTableEntry {
            ring: RingLabel::CyclicGroupRing,
            decoration: Decoration::MinusInfinity,
            degree: m,
            value: l_of_zp_decorated(m, a.p(), Decoration::MinusInfinity)
                .expect("<-inf> is supported"),
        });
        out.push(LGroupTableEntry {
            ring: RingLabel::GammaGroupRing,
            decoration: Decoration::S,
            degree: m,
            value: ls_of_zgamma_with(a, r, m),
        });
    }
    out.sort_by_key(|e| (e.ring as u8, e.degree));
    out
}
