//! Fuzzy-number data model: membership and α-cut forms, validation and the
//! expected-interval family of characteristics.

mod alpha;
mod metrics;
mod number;

pub use alpha::{to_alpha_cuts, AlphaCutRepresentation, BISECTION_TOLERANCE};
pub use metrics::{
    ambiguity_s, closed_form, expected_interval, expected_value, value_s, width, ExpectedInterval,
    ReductionFunction,
};
pub use number::{
    validate, FuzzyNumber, Membership, MembershipFn, MembershipSpec, ShapeTag, ValidationConfig,
    DEFAULT_VALIDATION_GRID, MEMBERSHIP_TOLERANCE,
};
