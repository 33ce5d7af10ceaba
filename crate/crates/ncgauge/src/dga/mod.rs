//! The dg-algebra `A_θ`: polynomial elements `a0 + a_i ξ^i`, the Moyal star
//! product, the differentials `d` and `d*`, and gauge-field operations.

pub mod deformation;
pub mod element;
pub mod gauge;

pub use deformation::Deformation;
pub use element::{commutator, differential_d, dstar, in_z, star, star_poly, AElement};
pub use gauge::{
    cohomology_representative, covariant_derivative, field_strength, first_order_reference,
    CohomologySplit, FieldStrength,
};
