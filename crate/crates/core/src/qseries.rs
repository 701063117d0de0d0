//! Truncated power series in q with exact rational coefficients and a
//! rational exponent offset.
//!
//! A [`QSeries`] with offset `rho` and coefficients `c_0..c_N` represents
//! `q^rho * (c_0 + c_1 q + ... + c_N q^N)`, known exactly through exponent
//! `rho + N` and zero below `rho`. Truncation-order propagation is
//! pessimistic: a binary operation never emits a coefficient that is not
//! fully determined by both inputs.

use num::complex::Complex64;
use num::{BigInt, One, Signed, ToPrimitive, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    offset: Rat,
    coeffs: Vec<Rat>,
}

impl QSeries {
    /// Build a series from an offset and coefficient list (must be non-empty).
    pub fn new(offset: Rat, coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "a QSeries carries at least one coefficient");
        QSeries { offset, coeffs }
    }

    /// The constant series c, carried to the given order.
    pub fn constant(c: Rat, order: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); order + 1];
        coeffs[0] = c;
        QSeries::new(Rat::zero(), coeffs)
    }

    pub fn zero(order: usize) -> Self {
        QSeries::new(Rat::zero(), vec![Rat::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rat::one(), order)
    }

    /// Series with integer exponents and offset 0, from (exponent, coefficient) pairs.
    pub fn from_terms(terms: &[(usize, Rat)], order: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); order + 1];
        for (e, c) in terms {
            if *e <= order {
                coeffs[*e] += c.clone();
            }
        }
        QSeries::new(Rat::zero(), coeffs)
    }

    pub fn offset(&self) -> &Rat {
        &self.offset
    }

    /// Truncation degree N relative to the offset.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Highest exponent this series determines.
    pub fn top_exponent(&self) -> Rat {
        &self.offset + Rat::from_integer(BigInt::from(self.order()))
    }

    /// Iterate over (exponent, coefficient) pairs of carried terms.
    pub fn terms(&self) -> impl Iterator<Item = (Rat, &Rat)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (&self.offset + Rat::from_integer(BigInt::from(i)), c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Coefficient of q^e. Zero for on-range exponents between grid points;
    /// an error outside the represented range.
    pub fn coeff(&self, e: &Rat) -> Result<Rat> {
        let low = self.offset.clone();
        let high = self.top_exponent();
        if e < &low || e > &high {
            return Err(Error::ExponentOutOfRange {
                exponent: e.clone(),
                low,
                high,
            });
        }
        let diff = e - &self.offset;
        if !diff.is_integer() {
            return Ok(Rat::zero());
        }
        let i = diff.to_integer().to_usize().expect("in-range index");
        Ok(self.coeffs[i].clone())
    }

    /// Coefficient of q^e for integer e (convenience over [`QSeries::coeff`]).
    pub fn coeff_int(&self, e: i64) -> Result<Rat> {
        self.coeff(&Rat::from_integer(BigInt::from(e)))
    }

    pub fn neg(&self) -> QSeries {
        QSeries::new(self.offset.clone(), self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &Rat) -> QSeries {
        QSeries::new(self.offset.clone(), self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Exact coefficientwise sum on the common determined range.
    ///
    /// Fails if the two offsets do not differ by an integer.
    pub fn add(&self, other: &QSeries) -> Result<QSeries> {
        let diff = &other.offset - &self.offset;
        if !diff.is_integer() {
            return Err(Error::GridMismatch(diff));
        }
        let base = self.offset.clone().min(other.offset.clone());
        let da = (&self.offset - &base).to_integer().to_i64().unwrap();
        let db = (&other.offset - &base).to_integer().to_i64().unwrap();
        let order = (da + self.order() as i64).min(db + other.order() as i64);
        let mut coeffs = vec![Rat::zero(); order as usize + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            let j = da + i as i64;
            if j <= order {
                coeffs[j as usize] += c;
            }
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            let j = db + i as i64;
            if j <= order {
                coeffs[j as usize] += c;
            }
        }
        Ok(QSeries::new(base, coeffs))
    }

    pub fn sub(&self, other: &QSeries) -> Result<QSeries> {
        self.add(&other.neg())
    }

    /// Cauchy product, truncated to the smaller reliable order.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let order = self.order().min(other.order());
        let mut coeffs = vec![Rat::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        QSeries::new(&self.offset + &other.offset, coeffs)
    }

    /// Multiplicative inverse; requires a nonzero leading coefficient.
    pub fn inverse(&self) -> Result<QSeries> {
        if self.coeffs[0].is_zero() {
            return Err(Error::NonInvertible(self.offset.clone()));
        }
        let n = self.order();
        let a0_inv = self.coeffs[0].recip();
        let mut b = vec![Rat::zero(); n + 1];
        b[0] = a0_inv.clone();
        for j in 1..=n {
            let mut acc = Rat::zero();
            for i in 1..=j {
                if !self.coeffs[i].is_zero() && !b[j - i].is_zero() {
                    acc += &self.coeffs[i] * &b[j - i];
                }
            }
            b[j] = -(acc * &a0_inv);
        }
        Ok(QSeries::new(-self.offset.clone(), b))
    }

    /// Substitute q -> q^d.
    pub fn rescale_q(&self, d: u32) -> QSeries {
        assert!(d >= 1);
        let d = d as usize;
        let mut coeffs = vec![Rat::zero(); self.order() * d + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * d] = c.clone();
        }
        QSeries::new(&self.offset * Rat::from_integer(BigInt::from(d)), coeffs)
    }

    /// Apply the operator q d/dq: the coefficient of q^e is multiplied by e.
    pub fn apply_d(&self) -> QSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * (&self.offset + Rat::from_integer(BigInt::from(i))))
            .collect();
        QSeries::new(self.offset.clone(), coeffs)
    }

    /// Exact equality on every exponent both series determine (implicit zeros
    /// below each offset included). Offsets on incompatible grids compare
    /// unequal unless both series are identically zero on the common range.
    pub fn eq_to_order(&self, other: &QSeries) -> bool {
        let diff = &other.offset - &self.offset;
        if !diff.is_integer() {
            // Incompatible grids: equal only if both vanish.
            return self.is_zero() && other.is_zero();
        }
        let base = self.offset.clone().min(other.offset.clone());
        let da = (&self.offset - &base).to_integer().to_i64().unwrap();
        let db = (&other.offset - &base).to_integer().to_i64().unwrap();
        let top = (da + self.order() as i64).min(db + other.order() as i64);
        for j in 0..=top {
            let a = if j >= da && j - da <= self.order() as i64 {
                self.coeffs[(j - da) as usize].clone()
            } else {
                Rat::zero()
            };
            let b = if j >= db && j - db <= other.order() as i64 {
                other.coeffs[(j - db) as usize].clone()
            } else {
                Rat::zero()
            };
            if a != b {
                return false;
            }
        }
        true
    }

    /// Evaluate at a complex point inside the disc of reliable truncation.
    pub fn eval_complex(&self, q: Complex64) -> Complex64 {
        // Horner on the integer-step part, then the fractional offset factor.
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * q + Complex64::new(c.to_f64().unwrap_or(0.0), 0.0);
        }
        if self.offset.is_zero() {
            acc
        } else {
            let rho = self.offset.to_f64().unwrap();
            acc * q.powf(rho)
        }
    }
}

// JSON schema: {"offset": {"num": "...", "den": "..."}, "order": N,
// "coefficients": [{"num": "...", "den": "..."}, ...]}

#[derive(Serialize, Deserialize)]
struct RatRepr {
    num: String,
    den: String,
}

impl From<&Rat> for RatRepr {
    fn from(r: &Rat) -> Self {
        RatRepr {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

impl RatRepr {
    fn to_rat<E: DeError>(&self) -> std::result::Result<Rat, E> {
        let num = BigInt::from_str(&self.num)
            .map_err(|e| E::custom(format!("bad numerator {:?}: {e}", self.num)))?;
        let den = BigInt::from_str(&self.den)
            .map_err(|e| E::custom(format!("bad denominator {:?}: {e}", self.den)))?;
        if !den.is_positive() {
            return Err(E::custom("denominator must be positive"));
        }
        let r = Rat::new(num.clone(), den.clone());
        if r.numer() != &num || r.denom() != &den {
            return Err(E::custom(format!("{num}/{den} is not in lowest terms")));
        }
        Ok(r)
    }
}

#[derive(Serialize, Deserialize)]
struct QSeriesRepr {
    offset: RatRepr,
    order: usize,
    coefficients: Vec<RatRepr>,
}

impl Serialize for QSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        QSeriesRepr {
            offset: RatRepr::from(&self.offset),
            order: self.order(),
            coefficients: self.coeffs.iter().map(RatRepr::from).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = QSeriesRepr::deserialize(deserializer)?;
        if repr.coefficients.len() != repr.order + 1 {
            return Err(D::Error::custom(format!(
                "expected {} coefficients for order {}, got {}",
                repr.order + 1,
                repr.order,
                repr.coefficients.len()
            )));
        }
        let offset = repr.offset.to_rat()?;
        let coeffs = repr
            .coefficients
            .iter()
            .map(|r| r.to_rat())
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(QSeries::new(offset, coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rint};

    fn qs(offset: Rat, ints: &[i64]) -> QSeries {
        QSeries::new(offset, ints.iter().map(|&n| rint(n)).collect())
    }

    #[test]
    fn add_identity_and_constants() {
        let a = qs(rint(0), &[1, 1]);
        let z = QSeries::zero(5);
        assert!(a.add(&z).unwrap().eq_to_order(&qs(rint(0), &[1, 1])));

        let g = QSeries::new(rint(0), vec![rat(-1, 24), rint(1)]);
        let c = QSeries::constant(rat(1, 24), 3);
        let sum = g.add(&c).unwrap();
        assert_eq!(sum.coeff_int(0).unwrap(), rint(0));
        assert_eq!(sum.coeff_int(1).unwrap(), rint(1));
    }

    #[test]
    fn add_with_aligned_fractional_offsets() {
        // q^{5/8}(1 - 3q) + q^{5/8}(3q) = q^{5/8}
        let a = QSeries::new(rat(5, 8), vec![rint(1), rint(-3)]);
        let b = QSeries::new(rat(5, 8), vec![rint(0), rint(3)]);
        let sum = a.add(&b).unwrap();
        assert_eq!(sum.coeff(&rat(5, 8)).unwrap(), rint(1));
        assert_eq!(sum.coeff(&rat(13, 8)).unwrap(), rint(0));
    }

    #[test]
    fn add_grid_mismatch_refused() {
        let a = QSeries::new(rat(5, 8), vec![rint(1)]);
        let b = QSeries::new(rint(0), vec![rint(1)]);
        assert!(matches!(a.add(&b), Err(Error::GridMismatch(_))));
    }

    #[test]
    fn mul_binomial_square_and_geometric() {
        let a = qs(rint(0), &[1, 1, 0, 0]);
        let sq = a.mul(&a);
        assert!(sq.eq_to_order(&qs(rint(0), &[1, 2, 1, 0])));

        let one_minus_q = qs(rint(0), &[1, -1, 0, 0, 0, 0]);
        let geo = qs(rint(0), &[1, 1, 1, 1, 1, 1]);
        assert!(one_minus_q.mul(&geo).eq_to_order(&QSeries::one(5)));
    }

    #[test]
    fn mul_shift() {
        // (q + 3q^2 + 4q^3) * q^5 = q^6 + 3q^7 + 4q^8
        let a = qs(rint(0), &[0, 1, 3, 4]);
        let b = QSeries::new(rint(5), vec![rint(1), rint(0), rint(0), rint(0)]);
        let p = a.mul(&b);
        assert_eq!(p.coeff_int(6).unwrap(), rint(1));
        assert_eq!(p.coeff_int(7).unwrap(), rint(3));
        assert_eq!(p.coeff_int(8).unwrap(), rint(4));
    }

    #[test]
    fn inverse_unit_geometric_and_error() {
        assert!(QSeries::one(4).inverse().unwrap().eq_to_order(&QSeries::one(4)));

        let a = qs(rint(0), &[1, -1, 0, 0, 0]);
        let inv = a.inverse().unwrap();
        assert!(inv.eq_to_order(&qs(rint(0), &[1, 1, 1, 1, 1])));

        let sing = qs(rint(0), &[0, 1]);
        assert!(matches!(sing.inverse(), Err(Error::NonInvertible(_))));
    }

    #[test]
    fn inverse_of_psi_denominator() {
        // 1/(1 - q - q^4) = 1 + q + q^2 + q^3 + 2q^4 + ...
        let a = qs(rint(0), &[1, -1, 0, 0, -1]);
        let inv = a.inverse().unwrap();
        assert_eq!(inv.coeff_int(0).unwrap(), rint(1));
        assert_eq!(inv.coeff_int(1).unwrap(), rint(1));
        assert_eq!(inv.coeff_int(2).unwrap(), rint(1));
        assert_eq!(inv.coeff_int(3).unwrap(), rint(1));
        assert_eq!(inv.coeff_int(4).unwrap(), rint(2));
        assert!(a.mul(&inv).eq_to_order(&QSeries::one(4)));
    }

    #[test]
    fn rescale_examples() {
        // q + 3q^2 -> q^5 + 3q^10
        let a = qs(rint(0), &[0, 1, 3]);
        let r = a.rescale_q(5);
        assert_eq!(r.order(), 10);
        assert_eq!(r.coeff_int(5).unwrap(), rint(1));
        assert_eq!(r.coeff_int(10).unwrap(), rint(3));
        assert_eq!(r.coeff_int(7).unwrap(), rint(0));

        let c = QSeries::constant(rat(-1, 24), 2);
        assert_eq!(c.rescale_q(3).coeff_int(0).unwrap(), rat(-1, 24));

        let m = QSeries::new(rat(1, 8), vec![rint(1)]);
        assert_eq!(*m.rescale_q(5).offset(), rat(5, 8));
    }

    #[test]
    fn apply_d_examples() {
        assert!(QSeries::constant(rint(7), 3).apply_d().is_zero());

        let a = qs(rint(0), &[0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 3]);
        let d = a.apply_d();
        assert_eq!(d.coeff_int(5).unwrap(), rint(5));
        assert_eq!(d.coeff_int(10).unwrap(), rint(30));

        // D(q^{5/8}(1 - 3q)) = (5/8)q^{5/8} - (39/8)q^{13/8}
        let f = QSeries::new(rat(5, 8), vec![rint(1), rint(-3)]);
        let df = f.apply_d();
        assert_eq!(df.coeff(&rat(5, 8)).unwrap(), rat(5, 8));
        assert_eq!(df.coeff(&rat(13, 8)).unwrap(), rat(-39, 8));
    }

    #[test]
    fn coeff_range_behavior() {
        let g = QSeries::new(rint(0), vec![rat(-1, 24), rint(1), rint(3)]);
        assert_eq!(g.coeff_int(2).unwrap(), rint(3));

        let a = qs(rint(0), &[1, 1]);
        assert_eq!(a.coeff(&rat(1, 2)).unwrap(), rint(0));
        assert!(matches!(
            a.coeff_int(5),
            Err(Error::ExponentOutOfRange { .. })
        ));
        assert!(matches!(
            a.coeff_int(-1),
            Err(Error::ExponentOutOfRange { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let a = QSeries::new(rat(5, 8), vec![rint(1), rat(-3, 7), rint(0)]);
        let json = serde_json::to_string(&a).unwrap();
        let back: QSeries = serde_json::from_str(&json).unwrap();
        assert_eq!(a, back);
    }

    #[test]
    fn json_rejects_bad_shapes() {
        let bad_len = r#"{"offset":{"num":"0","den":"1"},"order":2,"coefficients":[{"num":"1","den":"1"}]}"#;
        assert!(serde_json::from_str::<QSeries>(bad_len).is_err());
        let not_lowest = r#"{"offset":{"num":"0","den":"1"},"order":0,"coefficients":[{"num":"2","den":"4"}]}"#;
        assert!(serde_json::from_str::<QSeries>(not_lowest).is_err());
    }
}
