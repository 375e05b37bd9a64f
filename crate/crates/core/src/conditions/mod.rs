//! Curvature conditions on the self-dual Weyl spectrum and differential
//! identities of `W⁺`, at single points and over sampling grids.
//!
//! Grid results are statements about the sampled points only.

mod checks;
mod fields;
mod sweep;

pub use checks::{
    check_almost_complex, check_asd, check_half_pic, check_kahler_spectrum, check_middle_eigenvalue, kahler_spectrum,
    HalfPicCheck, KahlerBranch, KahlerSpectrumCheck, MarginCheck, ResidualCheck,
};
pub use fields::{
    analyze_point, distinguished_form, distinguished_index, divergence_residual, kahler_form_check,
    kahler_form_parallel, weitzenbock_residual, DistinguishedFormField, DivergenceResidual, KahlerFormCheck,
    PointCurvature, SelfDualWeylField, WeitzenbockResidual, ISOLATION_GAP,
};
pub use sweep::{
    evaluate_point, grid_points, grid_sweep, Classification, Condition, ConditionKind, ConditionReport,
    ConditionSummary, ConditionValue, PointRecord, Tolerances, Verdict, DEFAULT_BUDGET,
};
