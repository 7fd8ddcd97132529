//! Words, block decompositions, finite monoids and identity checking for
//! monoid varieties.

pub mod blocks;
pub mod derive;
pub mod families;
pub mod monoid;
pub mod random;
pub mod system;
pub mod varieties;
pub mod verify;
pub mod word;

pub use blocks::{are_1_equivalent, are_equivalent, decompose, full_decompose, is_reduced};
pub use monoid::{build_sw, satisfies_identity, FiniteMonoid};
pub use system::IdentitySystem;
pub use varieties::{holds_in, is_isoterm, VarietyId};
pub use word::{parse_word, Identity, Letter, Substitution, Word};
