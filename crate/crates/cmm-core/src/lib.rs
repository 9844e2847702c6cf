//! Exact symbolic computation for the root system A_{n-1}: Laurent
//! polynomials in q with rational exponents, weights and Weyl group
//! combinatorics, the group algebra C_q[P], Macdonald polynomials at
//! parameters (q^2, t = q^{2k}), the weight-lattice Gaussian, and exact
//! verification of the Cherednik-Macdonald-Mehta identities.
//!
//! Everything is computed over exact rational arithmetic; there is no
//! floating point and no tolerance anywhere. Identities between rational
//! functions in q are decided by cross-multiplication, identities between
//! Laurent polynomials by canonical-form equality, and truncated q-series
//! are compared exactly up to a stated order.

pub mod algebra;
pub mod gaussian;
pub mod laurent;
pub mod macdonald;
pub mod report;
pub mod roots;
pub mod verify;

mod error;

pub use error::Error;
pub use laurent::{qbracket, rat, rat_int, rational_eq, LaurentQ, QExp, RationalQ};
pub use roots::{
    dominance_le, signed_orbit, star, weyl_orbit, RootSystem, SignedOrbit, Weight,
};
pub use algebra::{
    alternant, char_expand, delta_k, monomial_symmetric, q_dimension, q_dimension_bracket,
    weyl_character, weyl_denominator, WeightPoly,
};
pub use macdonald::{
    inner_product_k, macdonald_poly, norm_direct, norm_formula, phi, phi_zero, MacdonaldPoly,
    RationalWeightPoly,
};
pub use gaussian::{
    ball_order_for_guaranteed, gaussian_eval_property, gaussian_pairing, gaussian_truncated,
    prop1_coefficient_check, verify_eq5, TruncatedGaussian,
};
pub use report::{IdentityId, ReportParams, ReportValue, VerificationReport};
pub use verify::{
    cmm_lhs, cmm_rhs_eq1, cmm_rhs_eq8, default_cmm_instances, verify_cmm, verify_eq7,
    verify_norm, verify_symmetry, CmmInstance,
};
