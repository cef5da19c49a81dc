//! Exact computer algebra for images of polynomial maps between affine
//! spaces: multivariate polynomials over the rationals, a Groebner-basis
//! engine, the constructible-image decomposition, explicit surjection
//! constructors onto complements of subvarieties, and machine-checkable
//! surjectivity certificates.

mod buchberger;
pub mod error;
pub mod gcd;
pub mod ideal;
pub mod image;
pub mod map;
pub mod order;
pub mod parse;
pub mod poly;
pub mod ring;
pub mod surjection;
pub mod target;
pub mod verify;

pub use error::{Error, Result};
pub use ideal::{ideal_of, normal_form, s_polynomial, Ideal};
pub use image::{
    boundary_locus, complement_ideal, constructible_image, graph_ideal, image_closure,
    slice_to_image_dimension, ConstructiblePiece, ConstructibleSet, GraphIdeal, ImageOptions,
    ImageTrace, RoundRecord,
};
pub use map::PolynomialMap;
pub use order::TermOrder;
pub use parse::{parse_polynomial, ParseError};
pub use poly::{int, rat, Polynomial};
pub use ring::{Monomial, RingContext};
pub use surjection::{
    compose_actions, conjugate_by_automorphism, full_surjection, generic_linear_change, point,
    restrict_pure_powers, restrict_theorem_main, restrict_to_subvariety, winkelmann_generator,
    AdditiveAction, LinearChange, Restriction,
};
pub use target::{ExponentSchedule, TargetVariety};
pub use verify::{
    avoids_target, check_degree_bound, fiber_nonempty, verify_surjection, Certificate,
    ConstructionVariant, DegreeAudit, FiberSample, VerifyOptions,
};
