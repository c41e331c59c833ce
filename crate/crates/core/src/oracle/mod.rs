//! Independent rank certificates and generators of test instances.

mod family;
mod sylvester;

pub use family::{gen_family, monomial_upper, Family, FamilySpec};
pub use sylvester::{catalecticant_bound, sylvester_rank, BinaryForm};
