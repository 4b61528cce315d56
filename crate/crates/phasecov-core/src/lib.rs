//! Phase-covariant qubit channels and their performance measures.
//!
//! A phase-covariant channel acts on the Bloch ball as
//! `(x1, x2, x3) -> (lambda1 x1, lambda1 x2, lambda_star + lambda3 x3)`.
//! This crate provides, in closed form, the extremal channel fidelities
//! over pure inputs, the maximal output Schatten norms, the fixed point,
//! and the entanglement surviving one-sided transmission (concurrence and
//! entanglement of formation), together with a brute-force oracle that
//! certifies every closed form by independent grid search.
//!
//! Two time-parametrized families, one decaying and one oscillatory, come
//! with their own piecewise measure formulas and concurrence death-time
//! solvers for trajectory studies.

pub mod channel;
pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod linalg;
pub mod measures;
pub mod oracle;

pub use channel::{
    check_covariance, mix_unital_nonunital, ChannelParams, CpReport, NonUnitalityDegree, Sign,
    CP_TOL,
};
pub use dynamics::{
    concurrence_death_interval_osc, concurrence_death_time_exp, concurrence_exp, concurrence_osc,
    consistency_flags, linspace, paper_formulas_exp, paper_formulas_osc, run_trajectory,
    FamilyKind, PaperMeasures, TrajectoryFamily, TrajectorySample, DEFAULT_P_VALUES,
};
pub use entanglement::{
    concurrence_closed, concurrence_spectral, concurrence_spectrum_closed,
    entanglement_of_formation, evolve_one_sided, kron, x_matrix, ConcurrenceSpectrum, Matrix4,
    TwoQubitXState,
};
pub use error::{Error, Result};
pub use linalg::{
    bloch_to_state, fidelity_qubit, pauli_decompose, state_overlap, BlochVector, ComplexMatrix2,
    QubitState,
};
pub use measures::{
    f_max_closed, f_min_closed, fidelity_on_pure, measure_report, nu2_squared_closed, nu_inf_bloch,
    nu_inf_paper, nu_p_general, Branch, ExtremalFamily, Extremum, MeasureReport,
};
pub use oracle::{
    audit_channel, brute_fidelity_extrema, brute_fixed_point, brute_inf_double_max,
    brute_output_norm, run_audit, sample_cp_channels, sample_cp_channels_where, AuditReport,
    ChannelAudit, GridSpec, NormOrder, OracleReport,
};
