//! Nested CES production with industrial robots and AI.
//!
//! Robots substitute for low-skill labor inside one nest, AI for high-skill
//! labor inside the other. The crate evaluates output, both wages, the skill
//! premium and its response to AI in closed form ([`ces`]), the no-AI
//! benchmark model ([`legacy`]), finite-difference checks for every closed
//! form ([`numdiff`]) and grid sweeps for comparative statics ([`sweep`]).

pub mod ces;
pub mod error;
pub mod legacy;
pub mod numdiff;
pub mod params;
pub mod sweep;

pub use ces::{
    classify_ai_effect, elasticity_from_param, high_skill_wage, low_skill_wage, output,
    param_from_elasticity, premium_gradient_ai, skill_premium, wage_report, AiEffect, Elasticity,
    Evaluation, WageReport,
};
pub use error::{ModelError, Result};
pub use legacy::{
    apply_reduction, legacy_high_skill_wage, legacy_output, legacy_ws_robot_gradient, LegacyBundle,
    LegacyParameters, ReductionMap,
};
pub use params::{Factor, FactorBundle, TechnologyParameters, Validation};
pub use sweep::{
    monotonicity_report, run_sweep, run_sweep_with, table2_scenario, Axis, Grid, Monotonicity,
    OutputKind, SweepError, SweepOptions, SweepResult, SweepSpec, Table2Row,
};
