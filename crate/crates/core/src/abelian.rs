//! Finitely generated abelian groups in invariant-factor form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// `Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_r` with `d_1 | d_2 | ... | d_r`, `d_i ≥ 2`,
/// plus named finite summands whose order is not computed.
///
/// Every constructor normalizes, so structural equality is group isomorphism
/// whenever the symbolic parts agree.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct FgAbGroup {
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
    symbolic_summands: Vec<String>,
}

impl FgAbGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            ..Self::default()
        }
    }

    pub fn cyclic(order: BigInt) -> Self {
        Self::from_parts(0, vec![order])
    }

    /// `Z^free_rank` plus one cyclic summand per entry of `orders`, in any
    /// order. Entries of 1 vanish, entries of 0 count as free summands and
    /// signs are ignored.
    pub fn from_parts(free_rank: usize, orders: impl IntoIterator<Item = BigInt>) -> Self {
        let mut g = Self {
            free_rank,
            ..Self::default()
        };
        for d in orders {
            if d.is_zero() {
                g.free_rank += 1;
            } else {
                g.invariant_factors.push(num_traits::Signed::abs(&d));
            }
        }
        g.normalize();
        g
    }

    /// A named finite summand of unknown order, e.g. a class group.
    pub fn symbolic(name: impl Into<String>) -> Self {
        Self {
            symbolic_summands: vec![name.into()],
            ..Self::default()
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn symbolic_summands(&self) -> &[String] {
        &self.symbolic_summands
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0
            && self.invariant_factors.is_empty()
            && self.symbolic_summands.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the group, when it is finite and has no symbolic part.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0 && self.symbolic_summands.is_empty())
            .then(|| self.invariant_factors.iter().product())
    }

    /// Subgroup of elements of finite order, as a group in its own right.
    pub fn torsion(&self) -> FgAbGroup {
        Self {
            free_rank: 0,
            ..self.clone()
        }
    }

    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        let mut g = self.clone();
        g.free_rank += other.free_rank;
        g.invariant_factors
            .extend(other.invariant_factors.iter().cloned());
        g.symbolic_summands
            .extend(other.symbolic_summands.iter().cloned());
        g.normalize();
        g
    }

    /// Direct sum of `copies` copies of `self`.
    pub fn pow(&self, copies: usize) -> FgAbGroup {
        let mut g = Self {
            free_rank: self.free_rank * copies,
            ..Self::default()
        };
        for _ in 0..copies {
            g.invariant_factors
                .extend(self.invariant_factors.iter().cloned());
            g.symbolic_summands
                .extend(self.symbolic_summands.iter().cloned());
        }
        g.normalize();
        g
    }

    fn normalize(&mut self) {
        let f = &mut self.invariant_factors;
        f.retain(|d| !d.is_one());
        f.sort();
        // (a, b) -> (gcd, lcm) pairwise leaves a divisibility chain
        for i in 0..f.len() {
            for j in i + 1..f.len() {
                let g = f[i].gcd(&f[j]);
                let l = f[i].lcm(&f[j]);
                f[i] = g;
                f[j] = l;
            }
        }
        f.retain(|d| !d.is_one());
        self.symbolic_summands.sort();
    }
}

impl std::iter::Sum for FgAbGroup {
    fn sum<I: Iterator<Item = FgAbGroup>>(iter: I) -> Self {
        iter.fold(FgAbGroup::trivial(), |acc, g| acc.direct_sum(&g))
    }
}

/// Renders as `Z^r + Z/d1 + ... + Name^s`; the trivial group is `0`.
impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        match self.free_rank {
            0 => {}
            1 => terms.push("Z".to_string()),
            r => terms.push(format!("Z^{r}")),
        }
        terms.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        let mut i = 0;
        let sym = &self.symbolic_summands;
        while i < sym.len() {
            let run = sym[i..].iter().take_while(|s| **s == sym[i]).count();
            terms.push(if run == 1 {
                sym[i].clone()
            } else {
                format!("{}^{run}", sym[i])
            });
            i += run;
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}
