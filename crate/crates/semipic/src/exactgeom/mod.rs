//! Exact rational linear algebra and polyhedral cone arithmetic.
//!
//! Everything here works over arbitrary-precision rationals. Cones carry
//! both a generator (V) representation and an equation/inequality (H)
//! representation, kept in a canonical form so that cone equality is a
//! bit-exact comparison. Wall-and-chamber verification enumerates chambers
//! as sign-vector cells of the hyperplane arrangement spanned by the walls.

mod arrangement;
mod cone;
mod num;
mod verify;

pub use arrangement::{Arrangement, Cell, ChamberSet};
pub use cone::{cone_hull, cone_intersect, Cone};
pub use num::{
    canonical_span_basis, lcm_of_denominators, primitive_integer, rat, ratio, solve_affine,
    AffineSolution, RatMatrix, RatVec, Rational,
};
pub use verify::{
    verify_fan, verify_wall_chamber, FanReport, LabeledCone, WallChamberReport,
    WallChamberStructure,
};
