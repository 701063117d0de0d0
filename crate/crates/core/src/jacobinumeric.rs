//! Complex-numeric evaluation of the theta quotients on H x C, the Jacobi
//! group with exact translation/phase bookkeeping, the weight-k index-m
//! slash action, and the numeric invariance checks.
//!
//! Phases are stored additively as exact rationals theta with xi = e(theta),
//! so xi^m is well-defined for half-integer index m without choosing a
//! branch of a complex power.

use num::complex::Complex64;
use num::{ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::jacobijet::ZJet;
use crate::macmahon::SymmetricSet;
use crate::modgroup::{in_gamma, GammaKind, MatZ};
use crate::rat::{rat, Rat};

/// A Jacobi group element [M, (lambda, mu), e(theta)].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiElement {
    pub matrix: MatZ,
    pub translation: (Rat, Rat),
    pub phase: Rat,
}

impl JacobiElement {
    pub fn identity() -> Self {
        JacobiElement {
            matrix: MatZ::identity(),
            translation: (Rat::zero(), Rat::zero()),
            phase: Rat::zero(),
        }
    }

    /// [M] = [M, (0,0), 1].
    pub fn from_matrix(matrix: MatZ) -> Self {
        JacobiElement {
            matrix,
            translation: (Rat::zero(), Rat::zero()),
            phase: Rat::zero(),
        }
    }

    /// [X] = [I, X, 1].
    pub fn from_translation(lambda: Rat, mu: Rat) -> Self {
        JacobiElement {
            matrix: MatZ::identity(),
            translation: (lambda, mu),
            phase: Rat::zero(),
        }
    }

    /// Group law: [M, X, xi][M', X', xi'] =
    /// [MM', XM' + X', xi xi' e(det(XM'; X'))].
    pub fn mul(&self, other: &JacobiElement) -> JacobiElement {
        let m = &other.matrix;
        let (lambda, mu) = &self.translation;
        let xm = (
            lambda * Rat::from_integer(m.a.into()) + mu * Rat::from_integer(m.c.into()),
            lambda * Rat::from_integer(m.b.into()) + mu * Rat::from_integer(m.d.into()),
        );
        let (lambda2, mu2) = &other.translation;
        let det = &xm.0 * mu2 - &xm.1 * lambda2;
        JacobiElement {
            matrix: self.matrix.mul(&other.matrix),
            translation: (xm.0 + lambda2, xm.1 + mu2),
            phase: &self.phase + &other.phase + det,
        }
    }
}

/// A point (tau, z) with Im(tau) > 0.
#[derive(Debug, Clone, Copy)]
pub struct EvalPoint {
    pub tau: Complex64,
    pub z: Complex64,
}

impl EvalPoint {
    pub fn new(tau: Complex64, z: Complex64) -> Result<Self> {
        if tau.im <= 0.0 {
            return Err(Error::NotInUpperHalfPlane(tau.im));
        }
        Ok(EvalPoint { tau, z })
    }
}

/// e(x) = exp(2 pi i x).
pub fn e_complex(x: Complex64) -> Complex64 {
    (Complex64::new(0.0, 2.0 * std::f64::consts::PI) * x).exp()
}

fn e_real(x: f64) -> Complex64 {
    e_complex(Complex64::new(x, 0.0))
}

fn rat_f64(r: &Rat) -> f64 {
    r.to_f64().expect("rational fits in f64")
}

/// theta_r(tau, z) = sum_{m in Z + r} q^{m^2/2} zeta^m, truncated adaptively
/// so the geometric tail is below eps/10.
pub fn theta_r_eval(r: &Rat, p: &EvalPoint, eps: f64) -> Result<Complex64> {
    if p.tau.im <= 0.0 {
        return Err(Error::NotInUpperHalfPlane(p.tau.im));
    }
    let r = rat_f64(r);
    let y = p.tau.im;
    let z_im = p.z.im.abs();
    let term = |m: f64| e_complex(p.tau * (0.5 * m * m) + p.z * m);
    // Magnitude bound exp(-pi y m^2 + 2 pi |Im z| |m|) at half-integer shifts.
    let bound = |k: f64| {
        let m = k.abs() + r.abs();
        (-std::f64::consts::PI * y * (k.abs() - r.abs()).max(0.0).powi(2)
            + 2.0 * std::f64::consts::PI * z_im * m)
            .exp()
    };
    let mut total = term(r);
    let mut k = 1.0f64;
    let threshold = eps / 10.0;
    loop {
        total += term(k + r) + term(-k + r);
        if bound(k) < threshold && bound(k + 1.0) < threshold {
            break;
        }
        k += 1.0;
        if k > 1e4 {
            break; // tail bound certainly satisfied long before this
        }
    }
    Ok(total)
}

/// The classical Jacobi theta function (r = 0).
pub fn theta_eval(p: &EvalPoint, eps: f64) -> Result<Complex64> {
    theta_r_eval(&Rat::zero(), p, eps)
}

/// psi(tau, z) = theta(tau, z) / theta(tau, 0).
pub fn psi_eval(p: &EvalPoint, eps: f64) -> Result<Complex64> {
    let num = theta_eval(p, eps)?;
    let den = theta_eval(&EvalPoint { tau: p.tau, z: Complex64::zero() }, eps)?;
    Ok(num / den)
}

const DENOMINATOR_FLOOR: f64 = 1e-6;

/// psi_r(tau, z) = theta_r(tau, z + 1/2) / theta_r(tau, 1/2).
pub fn psi_r_eval(r: &Rat, p: &EvalPoint, eps: f64) -> Result<Complex64> {
    let half = Complex64::new(0.5, 0.0);
    let num = theta_r_eval(r, &EvalPoint { tau: p.tau, z: p.z + half }, eps)?;
    let den = theta_r_eval(r, &EvalPoint { tau: p.tau, z: half }, eps)?;
    if den.norm() < DENOMINATOR_FLOOR {
        return Err(Error::NearZeroDenominator(den.norm()));
    }
    Ok(num / den)
}

/// alpha(n, l) = l/n - 1/2.
pub fn alpha(n: u32, ell: u32) -> Rat {
    rat(2 * ell as i64 - n as i64, 2 * n as i64)
}

/// phi_S(tau, z): the product of psi_{alpha(n,l)} over l in S minus the
/// zero residue.
pub fn phi_eval(s: &SymmetricSet, p: &EvalPoint, eps: f64) -> Result<Complex64> {
    let mut total = Complex64::new(1.0, 0.0);
    for ell in s.nonzero_members() {
        total *= psi_r_eval(&alpha(s.n(), ell), p, eps)?;
    }
    Ok(total)
}

/// Index of phi_S as a Jacobi form: |S \ {n}| / 2 (each theta quotient
/// carries index 1/2).
pub fn phi_index(s: &SymmetricSet) -> Rat {
    rat(s.nonzero_members().count() as i64, 2)
}

/// Apply the weight-k index-m slash action of a Jacobi group element to an
/// evaluator, at one point.
pub fn slash_apply(
    f: &dyn Fn(Complex64, Complex64) -> Complex64,
    k: i32,
    index: &Rat,
    g: &JacobiElement,
    p: &EvalPoint,
) -> Complex64 {
    let m = rat_f64(index);
    let (a, b, c, d) = (
        g.matrix.a as f64,
        g.matrix.b as f64,
        g.matrix.c as f64,
        g.matrix.d as f64,
    );
    let lambda = rat_f64(&g.translation.0);
    let mu = rat_f64(&g.translation.1);
    let denom = p.tau * c + d;
    let shifted = p.z + p.tau * lambda + mu;
    let tau_new = (p.tau * a + b) / denom;
    let z_new = shifted / denom;
    let xi_m = e_real(m * rat_f64(&g.phase));
    let weight = denom.powi(-k);
    let exponent =
        shifted * shifted * (-c * m) / denom + (p.tau * (lambda * lambda) + p.z * (2.0 * lambda) + lambda * mu) * m;
    xi_m * weight * e_complex(exponent) * f(tau_new, z_new)
}

/// Deterministic sample points with Im(tau) in [0.8, 2], |Re tau| <= 1,
/// |z| <= 0.3.
pub fn sample_points(samples: usize, rng: &mut ChaCha8Rng) -> Vec<EvalPoint> {
    (0..samples)
        .map(|_| {
            let tau = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(0.8..2.0));
            let z = Complex64::new(rng.gen_range(-0.21..0.21), rng.gen_range(-0.21..0.21));
            EvalPoint::new(tau, z).unwrap()
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct MatrixCheck {
    pub matrix: MatZ,
    pub max_error: f64,
}

#[derive(Debug, Clone)]
pub struct InvarianceReport {
    pub seed: u64,
    pub tol: f64,
    pub checks: Vec<MatrixCheck>,
}

impl InvarianceReport {
    pub fn max_error(&self) -> f64 {
        self.checks.iter().map(|c| c.max_error).fold(0.0, f64::max)
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.max_error < self.tol)
    }
}

const THETA_EPS: f64 = 1e-12;

/// Numeric invariance of phi_S under qualified matrices: each matrix must
/// either satisfy the Gamma(2)-with-congruences predicate, or be
/// (1 0; 1 1), or be (1 n; 0 1). Unqualified matrices are refused.
pub fn check_invariance(
    s: &SymmetricSet,
    matrices: &[MatZ],
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<InvarianceReport> {
    let n = s.n();
    for m in matrices {
        let qualified = in_gamma(m, GammaKind::Lemma31, n)
            || *m == MatZ::new(1, 0, 1, 1).unwrap()
            || *m == MatZ::new(1, n as i64, 0, 1).unwrap();
        if !qualified {
            return Err(Error::UnqualifiedMatrix {
                a: m.a,
                b: m.b,
                c: m.c,
                d: m.d,
                n,
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = sample_points(samples, &mut rng);
    let index = phi_index(s);
    let evaluator =
        |tau: Complex64, z: Complex64| match phi_eval(s, &EvalPoint { tau, z }, THETA_EPS) {
            Ok(v) => v,
            Err(_) => Complex64::new(f64::NAN, f64::NAN),
        };
    let mut checks = Vec::new();
    for m in matrices {
        let g = JacobiElement::from_matrix(*m);
        let mut max_error: f64 = 0.0;
        for p in &points {
            let lhs = slash_apply(&evaluator, 0, &index, &g, p);
            let rhs = phi_eval(s, p, THETA_EPS)?;
            max_error = max_error.max((lhs - rhs).norm());
        }
        checks.push(MatrixCheck {
            matrix: *m,
            max_error,
        });
    }
    Ok(InvarianceReport {
        seed,
        tol,
        checks,
    })
}

/// Three distinct matrices satisfying the Gamma(2) + congruence conditions
/// for the given n.
pub fn lemma31_matrices(n: u32) -> Vec<MatZ> {
    let n = n as i64;
    vec![
        MatZ::new(1, 2 * n, 0, 1).unwrap(),
        MatZ::new(1, 0, 2, 1).unwrap(),
        MatZ::new(1, 2 * n, 2, 4 * n + 1).unwrap(),
    ]
}

#[derive(Debug, Clone)]
pub struct SimpleReport {
    pub seed: u64,
    pub tol: f64,
    pub max_error: f64,
    pub cases: usize,
}

impl SimpleReport {
    pub fn pass(&self) -> bool {
        self.max_error < self.tol
    }
}

/// The translation identity theta|[(1 1; 0 1)] = theta|[(0, 1/2)] at
/// seeded samples, with index 1/2.
///
/// The literature sometimes states this for the quotient psi =
/// theta(tau,z)/theta(tau,0), but the quotient version is false: the
/// denominator theta(tau,0) picks up the same half-translation under
/// tau -> tau + 1, turning into theta(tau,1/2), so the two sides differ
/// by theta(tau,0)/theta(tau,1/2). The identity that actually holds (and
/// implies everything downstream) is the one for theta itself.
pub fn check_tr(samples: usize, tol: f64, seed: u64) -> Result<SimpleReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = sample_points(samples, &mut rng);
    let index = rat(1, 2);
    let evaluator = |tau: Complex64, z: Complex64| {
        theta_eval(&EvalPoint { tau, z }, THETA_EPS).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    };
    let g_mat = JacobiElement::from_matrix(MatZ::new(1, 1, 0, 1).unwrap());
    let g_tr = JacobiElement::from_translation(Rat::zero(), rat(1, 2));
    let mut max_error: f64 = 0.0;
    for p in &points {
        let lhs = slash_apply(&evaluator, 0, &index, &g_mat, p);
        let rhs = slash_apply(&evaluator, 0, &index, &g_tr, p);
        max_error = max_error.max((lhs - rhs).norm());
    }
    Ok(SimpleReport {
        seed,
        tol,
        max_error,
        cases: points.len(),
    })
}

/// A random SL2(Z) word in the two standard generators, kept short so the
/// entries stay small.
fn random_matz(rng: &mut ChaCha8Rng) -> MatZ {
    let t = MatZ::new(1, 1, 0, 1).unwrap();
    let t_inv = MatZ::new(1, -1, 0, 1).unwrap();
    let s = MatZ::new(0, -1, 1, 0).unwrap();
    let mut m = MatZ::identity();
    for _ in 0..rng.gen_range(1..=4) {
        m = match rng.gen_range(0..3) {
            0 => m.mul(&t),
            1 => m.mul(&t_inv),
            _ => m.mul(&s),
        };
    }
    m
}

fn random_rat(rng: &mut ChaCha8Rng, max_num: i64, den: i64) -> Rat {
    rat(rng.gen_range(-max_num..=max_num), den)
}

/// A random Jacobi group element with small rational translation and phase.
pub fn random_jacobi_element(rng: &mut ChaCha8Rng) -> JacobiElement {
    JacobiElement {
        matrix: random_matz(rng),
        translation: (random_rat(rng, 4, 4), random_rat(rng, 4, 4)),
        phase: random_rat(rng, 8, 8),
    }
}

/// Cocycle property (f|g)|h = f|(gh) for phi_S with S = {1,4} mod 5
/// (integer index 1), over random rational group pairs.
pub fn check_cocycle(pairs: usize, samples_per_pair: usize, tol: f64, seed: u64) -> Result<SimpleReport> {
    let s = crate::macmahon::validate_symmetric(5, &[1, 4])?;
    let index = phi_index(&s);
    let evaluator =
        |tau: Complex64, z: Complex64| match phi_eval(&s, &EvalPoint { tau, z }, THETA_EPS) {
            Ok(v) => v,
            Err(_) => Complex64::new(f64::NAN, f64::NAN),
        };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_error: f64 = 0.0;
    for _ in 0..pairs {
        let g = random_jacobi_element(&mut rng);
        let h = random_jacobi_element(&mut rng);
        let gh = g.mul(&h);
        let points = sample_points(samples_per_pair, &mut rng);
        for p in &points {
            let inner = |tau: Complex64, z: Complex64| {
                slash_apply(
                    &evaluator,
                    0,
                    &index,
                    &g,
                    &EvalPoint { tau, z },
                )
            };
            let lhs = slash_apply(&inner, 0, &index, &h, p);
            let rhs = slash_apply(&evaluator, 0, &index, &gh, p);
            max_error = max_error.max((lhs - rhs).norm());
        }
    }
    Ok(SimpleReport {
        seed,
        tol,
        max_error,
        cases: pairs,
    })
}

#[derive(Debug, Clone)]
pub struct JetConsistencyReport {
    pub seed: u64,
    pub tol: f64,
    pub max_error: f64,
    pub samples: usize,
}

impl JetConsistencyReport {
    pub fn pass(&self) -> bool {
        self.max_error < self.tol
    }
}

/// Evaluate a jet at complex (q, z): sum_j t_j(q) (2 pi i z)^j / j!.
pub fn jet_eval(jet: &ZJet, q: Complex64, z: Complex64) -> Complex64 {
    let two_pi_i_z = Complex64::new(0.0, 2.0 * std::f64::consts::PI) * z;
    let mut power = Complex64::new(1.0, 0.0);
    let mut factorial = 1.0f64;
    let mut total = Complex64::zero();
    for (j, t) in jet.components().iter().enumerate() {
        if j > 0 {
            power *= two_pi_i_z;
            factorial *= j as f64;
        }
        total += t.eval_complex(q) * power / factorial;
    }
    total
}

/// Compare phi_S(n tau, z) against its truncated jet at seeded samples with
/// |q| <= 0.3 and |z| <= 0.1, where q = e(tau) is the expansion variable of
/// the jet components.
pub fn check_jet_consistency(
    s: &SymmetricSet,
    max_degree: usize,
    order: usize,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<JetConsistencyReport> {
    let jet = crate::jacobijet::phi_jet(s, max_degree, order);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_error: f64 = 0.0;
    for _ in 0..samples {
        let q_abs = rng.gen_range(0.05..0.3f64);
        let q_arg = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
        let q = Complex64::from_polar(q_abs, q_arg);
        let z = Complex64::new(rng.gen_range(-0.07..0.07), rng.gen_range(-0.07..0.07));
        // tau with e(tau) = q.
        let tau = Complex64::new(
            q_arg / (2.0 * std::f64::consts::PI),
            -q_abs.ln() / (2.0 * std::f64::consts::PI),
        );
        let scaled = EvalPoint::new(tau * s.n() as f64, z)?;
        let lhs = phi_eval(s, &scaled, THETA_EPS)?;
        let rhs = jet_eval(&jet, q, z);
        max_error = max_error.max((lhs - rhs).norm());
    }
    Ok(JetConsistencyReport {
        seed,
        tol,
        max_error,
        samples,
    })
}
