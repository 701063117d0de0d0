//! Exact linear algebra over the rationals: expressing target q-series in a
//! given basis, reproducing the n=5, k=1 coefficient table, and the
//! weight-graded span tests for A_{S,n,k}.

use num::{BigInt, ToPrimitive, Zero};

use crate::eisenstein::{g2, g2_char, g2_scaled};
use crate::error::{Error, Result};
use crate::jacobijet::{expr_weight, phi_jet};
use crate::macmahon::{expand_a, validate_symmetric, SymmetricSet};
use crate::numbertheory::{DirichletCharacter, EtaQuotientCache};
use crate::qseries::QSeries;
use crate::rat::{rat, rint, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpanStatus {
    /// The target is the stated combination, exactly, on every verified row.
    Unique,
    /// Residual is nonzero; carries the smallest failing exponent.
    NotInSpan { first_failing_exponent: Rat },
    /// The basis is linearly dependent; carries a nonzero null combination.
    RankDeficient { certificate: Vec<Rat> },
}

#[derive(Debug, Clone)]
pub struct SpanSolution {
    pub coefficients: Vec<Rat>,
    /// Highest exponent checked.
    pub verified_order: i64,
    pub status: SpanStatus,
}

impl SpanSolution {
    pub fn is_unique(&self) -> bool {
        matches!(self.status, SpanStatus::Unique)
    }
}

/// Solve target = sum c_i basis_i exactly by Gaussian elimination over the
/// rationals, then verify the residual on every row of the common range,
/// not just the pivot rows.
pub fn solve_in_span(target: &QSeries, basis: &[QSeries]) -> Result<SpanSolution> {
    if target.order() < 3 * basis.len() {
        return Err(Error::InsufficientOrder {
            target_order: target.order() as i64,
            basis_size: basis.len(),
        });
    }
    // Common integer-step grid.
    let mut base = target.offset().clone();
    for b in basis {
        let diff = b.offset() - target.offset();
        if !diff.is_integer() {
            return Err(Error::GridMismatch(diff));
        }
        if b.offset() < &base {
            base = b.offset().clone();
        }
    }
    let shift = |s: &QSeries| (s.offset() - &base).to_integer().to_i64().unwrap();
    let mut top = shift(target) + target.order() as i64;
    for b in basis {
        top = top.min(shift(b) + b.order() as i64);
    }
    let rows = (top + 1) as usize;
    let cols = basis.len();
    let entry = |s: &QSeries, row: i64| -> Rat {
        let i = row - shift(s);
        if i >= 0 && i <= s.order() as i64 {
            s.coeffs()[i as usize].clone()
        } else {
            Rat::zero()
        }
    };
    // Augmented matrix, rows = exponents, last column = target.
    let mut mat: Vec<Vec<Rat>> = (0..rows as i64)
        .map(|r| {
            let mut row: Vec<Rat> = basis.iter().map(|b| entry(b, r)).collect();
            row.push(entry(target, r));
            row
        })
        .collect();

    // Forward elimination with exact rational pivoting.
    let mut pivot_row_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut next_row = 0usize;
    for col in 0..cols {
        let Some(p) = (next_row..rows).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(next_row, p);
        let inv = mat[next_row][col].clone().recip();
        for c in col..=cols {
            mat[next_row][c] *= &inv;
        }
        for r in 0..rows {
            if r != next_row && !mat[r][col].is_zero() {
                let f = mat[r][col].clone();
                for c in col..=cols {
                    let t = &mat[next_row][c] * &f;
                    mat[r][c] -= t;
                }
            }
        }
        pivot_row_of_col[col] = Some(next_row);
        next_row += 1;
    }

    // A pivot-free column is a dependency: express it in the pivot columns.
    if let Some(dep) = (0..cols).find(|&c| pivot_row_of_col[c].is_none()) {
        let mut certificate = vec![Rat::zero(); cols];
        certificate[dep] = rint(-1);
        for c in 0..dep {
            if let Some(r) = pivot_row_of_col[c] {
                certificate[c] = mat[r][dep].clone();
            }
        }
        return Ok(SpanSolution {
            coefficients: vec![Rat::zero(); cols],
            verified_order: base.to_f64().map(|b| b as i64).unwrap_or(0) + top,
            status: SpanStatus::RankDeficient { certificate },
        });
    }

    let coefficients: Vec<Rat> = (0..cols)
        .map(|c| mat[pivot_row_of_col[c].unwrap()][cols].clone())
        .collect();

    // Re-check every row against the original series, independently of the
    // elimination bookkeeping.
    let mut status = SpanStatus::Unique;
    'rows: for r in 0..rows as i64 {
        let mut acc = entry(target, r);
        for (c, b) in basis.iter().enumerate() {
            acc -= entry(b, r) * &coefficients[c];
        }
        if !acc.is_zero() {
            let exp = &base + Rat::from_integer(BigInt::from(r));
            status = SpanStatus::NotInSpan {
                first_failing_exponent: exp,
            };
            break 'rows;
        }
    }

    let verified_order = (&base + Rat::from_integer(BigInt::from(top)))
        .to_integer()
        .to_i64()
        .unwrap_or(top);
    Ok(SpanSolution {
        coefficients,
        verified_order,
        status,
    })
}

/// The five-series basis of the n=5 table: (1, G2, G2(q^5), G_{2,chi,psi},
/// G_{2,psi,chi}) with chi evaluated as the trivial character and
/// psi = (./5).
pub fn table_basis_mod5(order: usize) -> Vec<QSeries> {
    let chi = DirichletCharacter::Trivial;
    let psi = DirichletCharacter::Quadratic(5);
    vec![
        QSeries::one(order),
        g2(order),
        g2_scaled(5, order),
        g2_char(&chi, &psi, order),
        g2_char(&psi, &chi, order),
    ]
}

/// The seven symmetric sets mod 5 with their published coefficient vectors
/// in the [`table_basis_mod5`] ordering.
pub fn table_expectations() -> Vec<(Vec<i64>, Vec<Rat>)> {
    vec![
        (vec![5], vec![rat(1, 24), rint(0), rint(1), rint(0), rint(0)]),
        (
            vec![1, 4],
            vec![rint(0), rat(1, 2), rat(-1, 2), rint(0), rat(1, 2)],
        ),
        (
            vec![1, 4, 5],
            vec![rat(1, 24), rat(1, 2), rat(1, 2), rint(0), rat(1, 2)],
        ),
        (
            vec![2, 3],
            vec![rint(0), rat(1, 2), rat(-1, 2), rint(0), rat(-1, 2)],
        ),
        (
            vec![2, 3, 5],
            vec![rat(1, 24), rat(1, 2), rat(1, 2), rint(0), rat(-1, 2)],
        ),
        (
            vec![1, 2, 3, 4],
            vec![rint(0), rint(1), rint(-1), rint(0), rint(0)],
        ),
        (
            vec![1, 2, 3, 4, 5],
            vec![rat(1, 24), rint(1), rint(0), rint(0), rint(0)],
        ),
    ]
}

#[derive(Debug, Clone)]
pub struct TableRowResult {
    pub set: SymmetricSet,
    pub expected: Vec<Rat>,
    pub solution: SpanSolution,
    pub ok: bool,
}

#[derive(Debug, Clone)]
pub struct TableReport {
    pub rows: Vec<TableRowResult>,
}

impl TableReport {
    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(|r| r.ok)
    }
}

/// Expand each A_{S,5,1}, solve it in the five-series basis, and compare
/// against the published coefficient vectors with zero tolerance.
pub fn reproduce_table(order: usize) -> Result<TableReport> {
    let basis = table_basis_mod5(order);
    let mut rows = Vec::new();
    for (members, expected) in table_expectations() {
        let set = validate_symmetric(5, &members)?;
        let target = expand_a(&set, 1, order);
        let solution = solve_in_span(&target, &basis)?;
        let ok = solution.is_unique() && solution.coefficients == expected;
        rows.push(TableRowResult {
            set,
            expected,
            solution,
            ok,
        });
    }
    Ok(TableReport { rows })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecomposeMode {
    /// Basis (1, W_1, .., W_k) with W_w the single weight-2w expression.
    Strict,
    /// Independent coefficients for every eta-quotient/jet product.
    Relaxed,
}

/// A labeled span solve for A_{S,n,k} against the weight-graded basis.
#[derive(Debug, Clone)]
pub struct RoseDecomposition {
    pub labels: Vec<String>,
    pub solution: SpanSolution,
}

/// Decompose A_{S,n,k}(q) in the weight-graded basis.
///
/// Relaxed mode prunes identically-zero and linearly dependent basis
/// elements before solving (jets of small sets frequently vanish); pruned
/// positions report coefficient 0.
pub fn rose_decompose(
    s: &SymmetricSet,
    k: u32,
    order: usize,
    mode: DecomposeMode,
) -> Result<RoseDecomposition> {
    assert!(k >= 1);
    let target = expand_a(s, k, order);
    let (labels, basis) = rose_basis(s, k, order, mode);
    let (kept, pruned_basis) = prune_dependent(&basis);
    let solution = solve_in_span(&target, &pruned_basis)?;
    let mut coefficients = vec![Rat::zero(); basis.len()];
    for (slot, c) in kept.iter().zip(solution.coefficients.iter()) {
        coefficients[*slot] = c.clone();
    }
    Ok(RoseDecomposition {
        labels,
        solution: SpanSolution {
            coefficients,
            verified_order: solution.verified_order,
            status: solution.status,
        },
    })
}

/// Build the labeled basis for [`rose_decompose`].
pub fn rose_basis(
    s: &SymmetricSet,
    k: u32,
    order: usize,
    mode: DecomposeMode,
) -> (Vec<String>, Vec<QSeries>) {
    let mut labels = vec!["1".to_string()];
    let mut basis = vec![QSeries::one(order)];
    match mode {
        DecomposeMode::Strict => {
            for w in 1..=k {
                labels.push(format!("W{w}"));
                basis.push(expr_weight(s, w, order));
            }
        }
        DecomposeMode::Relaxed => {
            let jet = phi_jet(s, 2 * k as usize, order);
            if s.contains_zero_residue() {
                let mut cache = EtaQuotientCache::new(s.n(), order);
                for total in 1..=k {
                    for i in 0..=total {
                        let j = total - i;
                        let series = if i == 0 {
                            jet.component(2 * j as usize).clone()
                        } else {
                            cache.h(i as usize).mul(jet.component(2 * j as usize))
                        };
                        labels.push(match (i, j) {
                            (0, j) => format!("t{}", 2 * j),
                            (i, 0) => format!("H{i}"),
                            (i, j) => format!("H{i}*t{}", 2 * j),
                        });
                        basis.push(series);
                    }
                }
            } else {
                for j in 1..=k {
                    labels.push(format!("t{}", 2 * j));
                    basis.push(jet.component(2 * j as usize).clone());
                }
            }
        }
    }
    (labels, basis)
}

/// Select a maximal linearly independent subset (by exact elimination on
/// coefficient columns), returning kept indices and the kept series.
fn prune_dependent(basis: &[QSeries]) -> (Vec<usize>, Vec<QSeries>) {
    let mut kept: Vec<usize> = Vec::new();
    let mut reduced: Vec<Vec<Rat>> = Vec::new(); // echelon rows, one per kept element
    let mut pivots: Vec<usize> = Vec::new();
    for (idx, series) in basis.iter().enumerate() {
        if series.is_zero() {
            continue;
        }
        let mut v: Vec<Rat> = series.coeffs().to_vec();
        for (row, &p) in reduced.iter().zip(pivots.iter()) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (x, y) in v.iter_mut().zip(row.iter()) {
                    *x -= y * &f;
                }
            }
        }
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            let inv = v[p].clone().recip();
            for x in v.iter_mut() {
                *x *= &inv;
            }
            reduced.push(v);
            pivots.push(p);
            kept.push(idx);
        }
    }
    let series = kept.iter().map(|&i| basis[i].clone()).collect();
    (kept, series)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_picks_single_basis_element() {
        let basis = vec![g2(30), g2_scaled(5, 30), QSeries::one(30)];
        let sol = solve_in_span(&g2(30), &basis).unwrap();
        assert!(sol.is_unique());
        assert_eq!(sol.coefficients, vec![rint(1), rint(0), rint(0)]);
    }

    #[test]
    fn solve_not_in_span_reports_first_failure() {
        // target = 1 + q^2, basis = (1, q)
        let target = QSeries::new(rint(0), vec![rint(1), rint(0), rint(1), rint(0), rint(0), rint(0), rint(0)]);
        let basis = vec![
            QSeries::one(6),
            QSeries::new(rint(0), vec![rint(0), rint(1), rint(0), rint(0), rint(0), rint(0), rint(0)]),
        ];
        let sol = solve_in_span(&target, &basis).unwrap();
        match sol.status {
            SpanStatus::NotInSpan {
                first_failing_exponent,
            } => assert_eq!(first_failing_exponent, rint(2)),
            other => panic!("expected not-in-span, got {other:?}"),
        }
    }

    #[test]
    fn solve_rank_deficient_certificate() {
        let g = g2(30);
        let basis = vec![QSeries::one(30), g.clone(), g.scale(&rint(2))];
        let sol = solve_in_span(&g, &basis).unwrap();
        match &sol.status {
            SpanStatus::RankDeficient { certificate } => {
                // The certificate is a genuine null combination.
                let mut acc = QSeries::zero(30);
                for (c, b) in certificate.iter().zip(basis.iter()) {
                    acc = acc.add(&b.scale(c)).unwrap();
                }
                assert!(acc.is_zero());
                assert!(certificate.iter().any(|c| !c.is_zero()));
            }
            other => panic!("expected rank-deficient, got {other:?}"),
        }
    }

    #[test]
    fn solve_order_guard() {
        let basis = vec![QSeries::one(5), g2(5)];
        assert!(matches!(
            solve_in_span(&g2(5), &basis),
            Err(Error::InsufficientOrder { .. })
        ));
    }

    #[test]
    fn table_row_1234() {
        let basis = table_basis_mod5(60);
        let s = validate_symmetric(5, &[1, 2, 3, 4]).unwrap();
        let sol = solve_in_span(&expand_a(&s, 1, 60), &basis).unwrap();
        assert!(sol.is_unique());
        assert_eq!(
            sol.coefficients,
            vec![rint(0), rint(1), rint(-1), rint(0), rint(0)]
        );
    }

    #[test]
    fn full_table_reproduction() {
        let report = reproduce_table(60).unwrap();
        assert_eq!(report.rows.len(), 7);
        for row in &report.rows {
            assert!(row.ok, "row {} failed: {:?}", row.set, row.solution);
            // The chi-psi series never appears.
            assert!(row.solution.coefficients[3].is_zero());
        }
    }

    #[test]
    fn rose_strict_zero_residue_singleton() {
        let s = validate_symmetric(5, &[5]).unwrap();
        let d = rose_decompose(&s, 1, 60, DecomposeMode::Strict).unwrap();
        assert!(d.solution.is_unique());
        assert_eq!(d.solution.coefficients, vec![rat(1, 24), rat(-1, 6)]);
    }

    #[test]
    fn rose_strict_pair_set() {
        let s = validate_symmetric(5, &[1, 4]).unwrap();
        let d = rose_decompose(&s, 1, 80, DecomposeMode::Strict).unwrap();
        assert!(d.solution.is_unique(), "status {:?}", d.solution.status);
    }

    #[test]
    fn rose_relaxed_empty_set() {
        let s = validate_symmetric(5, &[]).unwrap();
        let d = rose_decompose(&s, 1, 80, DecomposeMode::Relaxed).unwrap();
        assert!(d.solution.is_unique());
        assert!(d.solution.coefficients.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn rose_relaxed_k1_mod5() {
        for members in [vec![5i64], vec![1, 4], vec![1, 4, 5], vec![1, 2, 3, 4, 5]] {
            let s = validate_symmetric(5, &members).unwrap();
            let d = rose_decompose(&s, 1, 80, DecomposeMode::Relaxed).unwrap();
            assert!(
                d.solution.is_unique(),
                "S={s} status {:?}",
                d.solution.status
            );
        }
    }
}
