//! A∞-morphism between the source and target algebras: the components,
//! their symbol-level recursion, and the independent evaluation check.

pub mod morphism;
pub mod recursion;
pub mod verify;

pub use morphism::{ComponentKind, Morphism, MorphismComponent, Setting};
pub use recursion::{
    build_theta_doubleprime, build_theta_prime, extend, first_component, mc_residual, psi,
    solve_order, solve_recursion,
};
pub use verify::{one_form_basis, scalar_basis, verify_component_equations};
