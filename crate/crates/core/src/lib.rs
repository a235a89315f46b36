//! Exact-arithmetic toolkit for the torus quotient of the minimal
//! Schubert variety attached to parameters (r, q) with n = rq + 1.
//!
//! The library constructs the cell in coordinates, decides semistability
//! for the peak subtorus, builds the invariant monomials and the quotient
//! chart and transition data, and machine-verifies the structural
//! identities behind each construction at desk scale. Every computation is
//! exact: scalars are arbitrary-precision rationals or elements of a large
//! prime field, and no check carries a tolerance.

pub mod cell;
pub mod charts;
pub mod field;
pub mod jsonio;
pub mod lattice;
pub mod peaks;
pub mod report;
pub mod sample;
pub mod sections;
pub mod snf;
pub mod stability;
pub mod suites;

pub use cell::{CellError, CellPoint, MinimalSchubertDatum};
pub use charts::{
    b_value, chart_inverse, chart_map, chart_points_agree, cocycle_check, tower_dimensions,
    transition, transition_matrix, ChartError, ChartPoint, FiberVector, TransitionBlock,
};
pub use field::{FieldError, FieldSpec, Value};
pub use lattice::{LatticeError, Permutation, ReducedWord, WeightVector};
pub use peaks::{
    all_witness_tuples, beta_pair_table, d_index, e_sequence, gamma_sum, ESequence, PeakError,
    WitnessTuple,
};
pub use report::{CheckRecord, CheckStatus};
pub use sections::{
    assemble_invariant, chain, evaluate, monomial_mprime, monomial_mr, BetaMonomial, SectionError,
};
pub use stability::{
    hm_pairing, is_semistable, minimality_floor_check, orbit_solve, stabilizer_trivial, torus_act,
    OrbitOutcome, SemistabilityReport, StabilityError, TorusElement,
};
pub use suites::{run_suite, ConfigError, Suite, SuiteConfig};
