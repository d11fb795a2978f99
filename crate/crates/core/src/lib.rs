pub mod batch;
pub mod classify;
pub mod corpus;
pub mod cycles;
pub mod eligibility;
pub mod error;
pub mod graph_iso;
pub mod io;
pub mod matching;
pub mod matrix;
mod par;
pub mod spectrum;
pub mod transforms;
pub mod word;

pub use classify::{basic_subsets, classify_irreducible, is_spherical, Base, Family, SphericalType};
pub use eligibility::{is_contractible, EligibilityReport};
pub use error::{Error, Result};
pub use matrix::{CoxeterMatrix, DiagramKind, Gen, Order, Subset};
pub use spectrum::{spectrum, spectrum_with_seed, RankSpectrum};
pub use transforms::{TransformKind, TransformRecord};
pub use word::{CanonicalForm, Substitution, Word, WordEngine};
