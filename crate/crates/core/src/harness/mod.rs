//! Exponent conditions, test-function families, inequality ratios and
//! empirical constants.

mod conditions;
mod estimate;
mod family;
mod ratio;
mod report;

pub use conditions::{
    check_leibniz_conditions, check_product_conditions, Clause, ConditionCase, ExponentTuple, Manifold, ProductTuple,
    Verdict, Witnesses, CONDITION_TOL,
};
pub use estimate::{
    estimate_constant, sharpness_scan, ConstantEstimate, PairRatio, SharpnessConfig, SharpnessRow, SharpnessScan, Target,
    DEFAULT_BANDWIDTHS, EUCLIDEAN_PERIOD,
};
pub use family::{generate_family, FamilyKind, FunctionFamily, Profile};
pub use ratio::{leibniz_ratio, product_ratio, Operator, RatioValue};
pub use report::{provenance, Report};
