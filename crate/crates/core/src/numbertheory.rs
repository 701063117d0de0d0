//! Arithmetic primitives: divisor sums, Dirichlet characters of order at
//! most two, generalized Bernoulli numbers, and the cube of the scaled
//! Dedekind eta-function together with its logarithmic-derivative quotients
//! H_i = D^i(eta(n tau)^3) / eta(n tau)^3.

use num::{One, Zero};

use crate::qseries::QSeries;
use crate::rat::{rat, rint, Rat};

/// Sum of the positive divisors of m.
pub fn sigma1(m: u64) -> u64 {
    assert!(m >= 1);
    let mut total = 0;
    let mut d = 1;
    while d * d <= m {
        if m % d == 0 {
            total += d;
            if d * d != m {
                total += m / d;
            }
        }
        d += 1;
    }
    total
}

/// Kronecker symbol (a/n), extending the Jacobi symbol to all integers.
pub fn kronecker(a: i64, n: i64) -> i32 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut a = a;
    let mut n = n;
    let mut result = 1i32;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    // (a/2) factor for each power of 2 in n.
    while n % 2 == 0 {
        n /= 2;
        if a % 2 == 0 {
            return 0;
        }
        let r = a.rem_euclid(8);
        if r == 3 || r == 5 {
            result = -result;
        }
    }
    // Jacobi symbol loop for odd positive n.
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n.rem_euclid(8);
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.rem_euclid(4) == 3 && n.rem_euclid(4) == 3 {
            result = -result;
        }
        a = a.rem_euclid(n);
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// A real Dirichlet character: the trivial character, the principal
/// character mod N, or the quadratic character given by the Kronecker
/// symbol (./N).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DirichletCharacter {
    Trivial,
    Principal(u64),
    Quadratic(u64),
}

impl DirichletCharacter {
    pub fn modulus(&self) -> u64 {
        match self {
            DirichletCharacter::Trivial => 1,
            DirichletCharacter::Principal(n) | DirichletCharacter::Quadratic(n) => *n,
        }
    }

    /// The character value at m, in {-1, 0, 1}.
    pub fn value(&self, m: i64) -> i32 {
        match self {
            DirichletCharacter::Trivial => 1,
            DirichletCharacter::Principal(n) => {
                if gcd(m.rem_euclid(*n as i64) as u64, *n) == 1 {
                    1
                } else {
                    0
                }
            }
            DirichletCharacter::Quadratic(n) => kronecker(m, *n as i64),
        }
    }

    /// True for the trivial and principal kinds (the cofactor position that
    /// carries a Bernoulli constant term in the Eisenstein expansions).
    pub fn is_principal_kind(&self) -> bool {
        matches!(
            self,
            DirichletCharacter::Trivial | DirichletCharacter::Principal(_)
        )
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Generalized Bernoulli number B_{2,chi} via the Bernoulli-polynomial
/// formula N * sum_{a=1..N} chi(a) B_2(a/N) with B_2(x) = x^2 - x + 1/6.
pub fn bernoulli2_chi(chi: &DirichletCharacter) -> Rat {
    let n = chi.modulus();
    let mut total = Rat::zero();
    for a in 1..=n {
        let v = chi.value(a as i64);
        if v == 0 {
            continue;
        }
        let x = rat(a as i64, n as i64);
        let b2 = &x * &x - &x + rat(1, 6);
        total += b2 * rint(v as i64);
    }
    total * rint(n as i64)
}

/// eta(n tau)^3 as a q-series: offset n/8 and Euler-product factors in q^n.
pub fn eta3_scaled(n: u32, order: usize) -> QSeries {
    let mut euler = vec![Rat::zero(); order + 1];
    euler[0] = Rat::one();
    let step = n as usize;
    let mut m = step;
    while m <= order {
        // Multiply by (1 - q^m) in place, descending.
        for i in (0..=order.saturating_sub(m)).rev() {
            if !euler[i].is_zero() {
                let t = euler[i].clone();
                euler[i + m] -= t;
            }
        }
        m += step;
    }
    let product = QSeries::new(Rat::zero(), euler);
    let cubed = product.mul(&product).mul(&product);
    QSeries::new(rat(n as i64, 8), cubed.coeffs().to_vec())
}

/// Cache of the eta-quotient series H_i = D^i(eta(n tau)^3)/eta(n tau)^3.
///
/// H_0 = 1 and every H_i has offset 0: the fractional offsets of numerator
/// and denominator cancel in the quotient.
pub struct EtaQuotientCache {
    n: u32,
    order: usize,
    inv_eta3: QSeries,
    // entries[i] holds H_i; d_eta3 holds D^i(eta(n tau)^3) alongside.
    entries: Vec<QSeries>,
    d_eta3: Vec<QSeries>,
}

impl EtaQuotientCache {
    pub fn new(n: u32, order: usize) -> Self {
        let eta3 = eta3_scaled(n, order);
        let inv_eta3 = eta3.inverse().expect("eta^3 has unit leading coefficient");
        EtaQuotientCache {
            n,
            order,
            inv_eta3,
            entries: vec![QSeries::one(order)],
            d_eta3: vec![eta3],
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The series H_i, computed on demand and memoized.
    pub fn h(&mut self, i: usize) -> QSeries {
        while self.entries.len() <= i {
            let next = self.d_eta3.last().unwrap().apply_d();
            self.entries.push(next.mul(&self.inv_eta3));
            self.d_eta3.push(next);
        }
        self.entries[i].clone()
    }
}

/// One-shot accessor for H_i (see [`EtaQuotientCache`]).
pub fn eta_log_quot(n: u32, i: usize, order: usize) -> QSeries {
    EtaQuotientCache::new(n, order).h(i)
}
