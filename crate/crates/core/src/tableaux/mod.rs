//! Tagged minors, standard products and double tableaux.
//!
//! A standard product is one whose factors admit a chain of taggings, each
//! the largest tagging dominating its predecessor. The chain fixes a double
//! tableau, and that tableau is the leading term of the product's image
//! under the factorization map.

mod standard;
mod tableau;
mod tagged;

pub use standard::{canonical_tagging, enumerate_standard, largest_tagged, symbols, StandardProduct};
pub(crate) use standard::display_product;
pub(crate) use tableau::monomial_word;
pub use tableau::{leading_monomial, tableau_of, Cell, Tableau};
pub use tagged::{enum_tagged, is_greater, offsets, Pair, TaggedMinor};
