//! Shorthand constructors for arbitrary-precision rationals.

use num::{BigInt, BigRational, One, Zero};

pub type Rat = BigRational;
pub type Int = BigInt;

/// The rational n/d.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// The integer n as a rational.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn rzero() -> Rat {
    Rat::zero()
}

pub fn rone() -> Rat {
    Rat::one()
}

/// Binomial coefficient C(n, k) as a rational.
pub fn binomial(n: u32, k: u32) -> Rat {
    if k > n {
        return Rat::zero();
    }
    let mut num = Int::one();
    let mut den = Int::one();
    for i in 0..k.min(n - k) {
        num *= Int::from(n - i);
        den *= Int::from(i + 1);
    }
    Rat::new(num, den)
}

/// Exact integer power of a rational, with negative exponents allowed.
pub fn rat_pow(base: &Rat, exp: i64) -> Rat {
    if exp >= 0 {
        num::pow::pow(base.clone(), exp as usize)
    } else {
        num::pow::pow(base.clone(), (-exp) as usize).recip()
    }
}

/// Format a rational as `num/den`, or just `num` when the denominator is 1.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(3, 3), rint(1));
        assert_eq!(binomial(3, 1), rint(3));
        assert_eq!(binomial(5, 3), rint(10));
        assert_eq!(binomial(2, 5), rint(0));
    }

    #[test]
    fn format_integer_and_fraction() {
        assert_eq!(format_rat(&rat(-1, 24)), "-1/24");
        assert_eq!(format_rat(&rint(7)), "7");
    }
}
