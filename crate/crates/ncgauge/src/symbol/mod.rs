//! Symbols of constant-coefficient (poly)differential operators: slot
//! symbols, the operators `∂`, `h`, `π` and their tensor extensions, the
//! realization map, and star-product twists at the symbol level.

pub mod ops;
pub mod slot;
pub mod tensor;

pub use slot::{Slot, SlotSymbol};
pub use tensor::{Head, Realizer, SlotTypeSignature, TensorSymbol, Term};
