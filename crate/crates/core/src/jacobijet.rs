//! Exact z-Taylor jets of the theta quotients psi_r(n tau, z) and their
//! products phi_S(n tau, z), plus the weight-graded building-block series
//! combining jets with eta quotients.
//!
//! A jet stores components t_0..t_J with the function reconstructed as
//! sum_j t_j(q) (2 pi i z)^j / j!. The (2 pi i)^j / j! normalization keeps
//! every stored coefficient rational.
//!
//! The components come from a reduction of the shifted theta quotient: the
//! z -> z + 1/2 shift contributes e(r/2)(-1)^k per lattice term, and the
//! common factors e(r/2) and q^{n r^2/2} cancel between numerator and
//! denominator, leaving integer q-exponents E(k) = n k(k-1)/2 + k l after
//! tau -> n tau.

use num::Zero;

use crate::error::{Error, Result};
use crate::macmahon::SymmetricSet;
use crate::numbertheory::EtaQuotientCache;
use crate::qseries::QSeries;
use crate::rat::{binomial, rat, rat_pow, Rat};

/// Finite z-Taylor jet: components t_0..t_J of exact q-series.
#[derive(Debug, Clone)]
pub struct ZJet {
    components: Vec<QSeries>,
}

impl ZJet {
    pub fn new(components: Vec<QSeries>) -> Self {
        assert!(!components.is_empty());
        ZJet { components }
    }

    /// The jet of the constant function 1.
    pub fn unit(max_degree: usize, order: usize) -> Self {
        let mut components = vec![QSeries::one(order)];
        components.extend((0..max_degree).map(|_| QSeries::zero(order)));
        ZJet { components }
    }

    pub fn max_degree(&self) -> usize {
        self.components.len() - 1
    }

    pub fn component(&self, j: usize) -> &QSeries {
        &self.components[j]
    }

    pub fn components(&self) -> &[QSeries] {
        &self.components
    }

    /// Product jet. The /j! normalization turns the Leibniz rule into a
    /// binomial convolution: (ab)_j = sum_i C(j,i) a_i b_{j-i}.
    pub fn mul(&self, other: &ZJet) -> ZJet {
        let max_degree = self.max_degree().min(other.max_degree());
        let mut components = Vec::with_capacity(max_degree + 1);
        for j in 0..=max_degree {
            let mut acc: Option<QSeries> = None;
            for i in 0..=j {
                let term = self.components[i]
                    .mul(&other.components[j - i])
                    .scale(&binomial(j as u32, i as u32));
                acc = Some(match acc {
                    None => term,
                    Some(prev) => prev.add(&term).expect("aligned grids"),
                });
            }
            components.push(acc.unwrap());
        }
        ZJet { components }
    }

    /// Sign-flip z -> -z: component j picks up (-1)^j.
    pub fn reflect(&self) -> ZJet {
        ZJet {
            components: self
                .components
                .iter()
                .enumerate()
                .map(|(j, t)| if j % 2 == 1 { t.neg() } else { t.clone() })
                .collect(),
        }
    }
}

/// Shifted-theta numerator components N_j(q) = sum_k (-1)^k (k+r)^j q^{E(k)}
/// with r = l/n - 1/2 and E(k) = n k(k-1)/2 + k l, summed over exactly the
/// k with E(k) <= order.
fn psi_numerators(n: u32, ell: u32, max_degree: usize, order: usize) -> Vec<QSeries> {
    let n_i = n as i64;
    let ell_i = ell as i64;
    let r = rat(2 * ell_i - n_i, 2 * n_i);
    let exponent = |k: i64| n_i * k * (k - 1) / 2 + k * ell_i;
    let mut coeffs = vec![vec![Rat::zero(); order + 1]; max_degree + 1];
    let mut add_term = |k: i64| -> bool {
        let e = exponent(k);
        if e < 0 || e as usize > order {
            return false;
        }
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        let base = Rat::from_integer(k.into()) + &r;
        let mut power = rat(sign, 1);
        for row in coeffs.iter_mut() {
            row[e as usize] += &power;
            power *= &base;
        }
        true
    };
    add_term(0);
    let mut k = 1i64;
    loop {
        let up = add_term(k);
        let down = add_term(-k);
        if !up && !down {
            break;
        }
        k += 1;
    }
    coeffs
        .into_iter()
        .map(|c| QSeries::new(Rat::zero(), c))
        .collect()
}

/// Jet of psi_{alpha(n,l)}(n tau, z) for 1 <= l <= n-1, with
/// alpha(n,l) = l/n - 1/2. The component t_j is N_j / N_0; t_0 = 1.
pub fn psi_jet(n: u32, ell: u32, max_degree: usize, order: usize) -> Result<ZJet> {
    if ell == 0 || ell >= n {
        return Err(if ell == n {
            Error::ZeroResidueFactor(ell)
        } else {
            Error::ResidueOutOfRange(ell as i64, n)
        });
    }
    let numerators = psi_numerators(n, ell, max_degree, order);
    let inv = numerators[0].inverse().expect("N_0 has leading coefficient 1");
    Ok(ZJet::new(
        numerators.iter().map(|nj| nj.mul(&inv)).collect(),
    ))
}

/// Jet of phi_S(n tau, z): the product over l in S minus the zero residue.
/// The empty product is the unit jet.
pub fn phi_jet(s: &SymmetricSet, max_degree: usize, order: usize) -> ZJet {
    let mut jet = ZJet::unit(max_degree, order);
    for ell in s.nonzero_members() {
        let factor = psi_jet(s.n(), ell, max_degree, order).expect("nonzero residue");
        jet = jet.mul(&factor);
    }
    jet
}

/// The weight-2w building-block series.
///
/// With n not in S this is the normalized 2w-th jet component of phi_S.
/// With n in S it is sum_{i=1..w} C(2w+1, 2i+1) (2/n)^i H_i t_{2w-2i},
/// where H_i = D^i(eta(n tau)^3)/eta(n tau)^3. All transcendental scalars
/// from the z-derivatives are dropped uniformly; they are absorbed by the
/// undetermined proportionality constant recovered at solve time.
pub fn expr_weight(s: &SymmetricSet, w: u32, order: usize) -> QSeries {
    assert!(w >= 1);
    let jet = phi_jet(s, 2 * w as usize, order);
    if !s.contains_zero_residue() {
        return jet.component(2 * w as usize).clone();
    }
    let mut cache = EtaQuotientCache::new(s.n(), order);
    let two_over_n = rat(2, s.n() as i64);
    let mut acc = QSeries::zero(order);
    for i in 1..=w {
        let coeff = binomial(2 * w + 1, 2 * i + 1) * rat_pow(&two_over_n, i as i64);
        let term = cache
            .h(i as usize)
            .mul(jet.component(2 * (w - i) as usize))
            .scale(&coeff);
        acc = acc.add(&term).expect("aligned grids");
    }
    acc
}
