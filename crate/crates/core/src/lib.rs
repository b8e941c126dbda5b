//! Mapping classes of closed nonorientable surfaces `N_g`, represented by
//! their action on `π_1(N_g)`, together with a verifier for identities in
//! the level 2 subgroup `Γ_2(N_g)`.

pub mod catalog;
pub mod curves;
pub mod engine;
pub mod error;
pub mod generators;
pub mod group;
pub mod homology;
pub mod hs;
pub mod invariants;
pub mod mapping;
pub mod oracle;
pub mod polygon;
pub mod quotient;
pub mod run;
pub mod verify;
pub mod word;

pub use engine::Engine;
pub use error::{Error, Result};
pub use generators::{GenWord, GeneratorName};
pub use group::{Conjugacy, GroupContext, InnerWitness, Triviality};
pub use mapping::{equal_mod_inner, Equality, MappingClass};
pub use word::{GroupWord, Letter};
