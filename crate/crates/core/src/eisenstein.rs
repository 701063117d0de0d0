//! Weight-2 Eisenstein q-expansions, with and without character twists.

use num::Zero;

use crate::numbertheory::{bernoulli2_chi, sigma1, DirichletCharacter};
use crate::qseries::QSeries;
use crate::rat::{rat, rint, Rat};

/// G_2(q) = -1/24 + sum_{m>=1} sigma_1(m) q^m.
pub fn g2(order: usize) -> QSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(rat(-1, 24));
    for m in 1..=order {
        coeffs.push(rint(sigma1(m as u64) as i64));
    }
    QSeries::new(Rat::zero(), coeffs)
}

/// G_2(q^d).
pub fn g2_scaled(d: u32, order: usize) -> QSeries {
    assert!(d >= 1);
    g2(order / d as usize).rescale_q(d)
}

/// Character-twisted weight-2 Eisenstein series.
///
/// The coefficient of q^m is sum_{d|m} cofactor(m/d) * weighted(d) * d.
/// The constant term is -B_{2,weighted}/4 when the cofactor character is
/// trivial or principal, and 0 otherwise, matching the printed conventions
/// for the two displayed variants G_{2,chi,psi} and G_{2,psi,chi}.
pub fn g2_char(
    cofactor: &DirichletCharacter,
    weighted: &DirichletCharacter,
    order: usize,
) -> QSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    if cofactor.is_principal_kind() {
        coeffs.push(-bernoulli2_chi(weighted) / rint(4));
    } else {
        coeffs.push(Rat::zero());
    }
    for m in 1..=order {
        let mut acc: i64 = 0;
        let mut d = 1i64;
        while d * d <= m as i64 {
            if m as i64 % d == 0 {
                let e = m as i64 / d;
                acc += (cofactor.value(e) * weighted.value(d)) as i64 * d;
                if d != e {
                    acc += (cofactor.value(d) * weighted.value(e)) as i64 * e;
                }
            }
            d += 1;
        }
        coeffs.push(rint(acc));
    }
    QSeries::new(Rat::zero(), coeffs)
}
