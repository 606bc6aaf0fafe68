//! Geometry of contact metric 3-manifolds and their transversal Ricci
//! solitons.
//!
//! The crate computes moving-frame connection, curvature and Ricci data
//! from structure functions ([`frame`]), constructs the homogeneous model
//! spaces and the Heisenberg coordinate chart ([`models`]), builds the
//! closed-form potential vector field families with their soliton constants
//! ([`soliton`]), and verifies the soliton equation numerically, both
//! through exact frame algebra and through finite differences on the chart
//! ([`verify`]). A small CLI ([`cli`]) exposes the same operations with
//! canonical JSON reports ([`report`]).
//!
//! See the `examples/` directory for one runnable walk-through per
//! capability.

pub mod cli;
pub mod error;
pub mod frame;
pub mod models;
pub mod report;
pub mod soliton;
pub mod verify;

pub use error::{Error, Result};
pub use frame::{
    connection_from_structure, curvature_from_connection, eta_parallel_residual,
    identify_alpha_beta, ricci_operator, ContactTensors, CurvatureTensor, FrameConnection,
    MuDerivatives, RicciDiagonal, RicciMatrix, StructureFunctions, E1, E2, XI,
};
pub use models::{
    classify_group, d_homothetic, heisenberg_chart, ChartPoint, ContactStructure, GroupTag,
    HeisenbergChart, MetricField, Model, NonSasakianModel, SasakianModel,
};
pub use soliton::{
    delta_coefficients, evaluate_potential, solve_potential, solve_sasakian_potential,
    soliton_constant, AffineForm, CaseTag, PotentialFamily, PotentialField, PotentialValues,
    SolitonParams, SolitonType,
};
pub use verify::{
    axis_residual, chart_soliton_residual, fd_christoffels, fd_ricci, lie_derivative_fd,
    origin_residual, soliton_frame_residual, ChartResidual, FdConfig, FdScheme, FrameDerivatives,
    LabeledResidual, ResidualReport, SolitonSystem,
};
