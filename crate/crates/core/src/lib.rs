//! Exact q-series arithmetic and modular-form tooling: generalized
//! MacMahon sum-of-divisor series, Eisenstein series with character twists,
//! Taylor jets of Jacobi theta quotients, exact decomposition into
//! quasimodular bases, congruence-subgroup verification, and numeric
//! Jacobi-form invariance checks.

pub mod decompose;
pub mod eisenstein;
pub mod error;
pub mod jacobijet;
pub mod jacobinumeric;
pub mod macmahon;
pub mod modgroup;
pub mod numbertheory;
pub mod qseries;
pub mod rat;

pub use decompose::{
    reproduce_table, rose_basis, rose_decompose, solve_in_span, table_basis_mod5,
    table_expectations, DecomposeMode, SpanSolution, SpanStatus, TableReport, TableRowResult,
};
pub use eisenstein::{g2, g2_char, g2_scaled};
pub use error::{Error, Result};
pub use jacobijet::{expr_weight, phi_jet, psi_jet, ZJet};
pub use jacobinumeric::{
    check_cocycle, check_invariance, check_jet_consistency, check_tr, lemma31_matrices,
    phi_eval, psi_eval, psi_r_eval, theta_eval, theta_r_eval, EvalPoint, InvarianceReport,
    JacobiElement, JetConsistencyReport, SimpleReport,
};
pub use macmahon::{expand_a, expand_a_oracle, validate_symmetric, SymmetricSet};
pub use modgroup::{
    in_gamma, index_gamma1, sl2_enumerate, sl2_order, subgroup_closure, verify_generation,
    GammaKind, GenerationReport, MatZ, ModMatrix,
};
pub use numbertheory::{bernoulli2_chi, kronecker, sigma1, DirichletCharacter, EtaQuotientCache};
pub use qseries::QSeries;
pub use rat::{Int, Rat};
