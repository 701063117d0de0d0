//! Symmetric residue sets and the generalized sum-of-divisor series
//! A_{S,n,k}(q).

use std::collections::BTreeSet;
use std::fmt;

use num::Zero;

use crate::error::{Error, Result};
use crate::qseries::QSeries;
use crate::rat::{rint, Rat};

/// A set of residues S in {1,..,n} closed under l -> n - l, with n standing
/// for the zero residue (its own negative).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricSet {
    n: u32,
    members: BTreeSet<u32>,
}

impl SymmetricSet {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn members(&self) -> &BTreeSet<u32> {
        &self.members
    }

    /// True when the zero residue (spelled n) belongs to the set.
    pub fn contains_zero_residue(&self) -> bool {
        self.members.contains(&self.n)
    }

    /// Members other than the zero residue, ascending.
    pub fn nonzero_members(&self) -> impl Iterator<Item = u32> + '_ {
        self.members.iter().copied().filter(move |&l| l != self.n)
    }

    /// Whether the positive integer m is congruent to a member of S mod n.
    pub fn admits(&self, m: u64) -> bool {
        let r = (m % self.n as u64) as u32;
        let r = if r == 0 { self.n } else { r };
        self.members.contains(&r)
    }

    /// Every symmetric subset for the given modulus.
    pub fn enumerate_all(n: u32) -> Vec<SymmetricSet> {
        // Orbits of l -> n - l on {1,..,n-1}, plus the free member n.
        let mut orbits: Vec<Vec<u32>> = Vec::new();
        let mut seen = BTreeSet::new();
        for l in 1..n {
            if seen.contains(&l) {
                continue;
            }
            let partner = n - l;
            seen.insert(l);
            seen.insert(partner);
            if partner == l {
                orbits.push(vec![l]);
            } else {
                orbits.push(vec![l, partner]);
            }
        }
        orbits.push(vec![n]);
        let mut sets = Vec::new();
        for mask in 0..(1u32 << orbits.len()) {
            let mut members = BTreeSet::new();
            for (i, orbit) in orbits.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    members.extend(orbit.iter().copied());
                }
            }
            sets.push(SymmetricSet { n, members });
        }
        sets
    }
}

impl fmt::Display for SymmetricSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}

/// Validate a proposed residue set, reporting the first member whose
/// negation partner is missing.
pub fn validate_symmetric(n: u32, members: &[i64]) -> Result<SymmetricSet> {
    assert!(n >= 1);
    let mut set = BTreeSet::new();
    for &m in members {
        if m < 1 || m > n as i64 {
            return Err(Error::MemberOutOfRange(m, n));
        }
        set.insert(m as u32);
    }
    for &l in &set {
        if l == n {
            continue; // the zero residue is its own negative
        }
        let partner = n - l;
        if !set.contains(&partner) {
            return Err(Error::SymmetryViolation {
                n,
                member: l,
                partner,
            });
        }
    }
    Ok(SymmetricSet { n, members: set })
}

/// Expand A_{S,n,k}(q) to the given truncation order.
///
/// Each factor q^m/(1-q^m)^2 = sum_{j>=1} j q^{jm}; a dynamic program over
/// admissible m ascending maintains one accumulated series per part count,
/// so strictly increasing tuples are counted once.
pub fn expand_a(s: &SymmetricSet, k: u32, order: usize) -> QSeries {
    assert!(k >= 1);
    let k = k as usize;
    let mut layers: Vec<Vec<Rat>> = vec![vec![Rat::zero(); order + 1]; k + 1];
    layers[0][0] = rint(1);
    for m in 1..=order {
        if !s.admits(m as u64) {
            continue;
        }
        // factor f_m = sum_{j >= 1, jm <= order} j q^{jm}
        let factor: Vec<(usize, i64)> = (1..)
            .map(|j| (j * m, j as i64))
            .take_while(|(e, _)| *e <= order)
            .collect();
        for c in (1..=k).rev() {
            let (lower, upper) = layers.split_at_mut(c);
            let src = &lower[c - 1];
            let dst = &mut upper[0];
            for &(e, j) in &factor {
                let jq = rint(j);
                for i in 0..=order - e {
                    if !src[i].is_zero() {
                        dst[i + e] += &src[i] * &jq;
                    }
                }
            }
        }
    }
    QSeries::new(Rat::zero(), layers.swap_remove(k))
}

/// Brute-force oracle: iterate tuples (m_1 < ... < m_k, j_1..j_k >= 1)
/// directly from the defining display and accumulate prod(j_i) at
/// exponent sum(j_i m_i). Exponential in k; test use only.
pub fn expand_a_oracle(s: &SymmetricSet, k: u32, order: usize) -> QSeries {
    let mut coeffs = vec![Rat::zero(); order + 1];
    fn recurse(
        s: &SymmetricSet,
        parts_left: u32,
        min_m: usize,
        budget: usize,
        weight: u64,
        coeffs: &mut [Rat],
        order: usize,
    ) {
        if parts_left == 0 {
            coeffs[order - budget] += rint(weight as i64);
            return;
        }
        // Each remaining part costs at least its m; cheapest completion uses
        // consecutive admissible values, but the simple m-bound suffices.
        for m in min_m..=budget {
            if !s.admits(m as u64) {
                continue;
            }
            let mut j = 1usize;
            while j * m <= budget {
                recurse(
                    s,
                    parts_left - 1,
                    m + 1,
                    budget - j * m,
                    weight * j as u64,
                    coeffs,
                    order,
                );
                j += 1;
            }
        }
    }
    recurse(s, k, 1, order, 1, &mut coeffs, order);
    QSeries::new(Rat::zero(), coeffs)
}
