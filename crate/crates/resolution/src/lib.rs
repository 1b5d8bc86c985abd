//! Simplicial resolutions of finite-to-one surjections and the homological
//! machinery around them: filtered chain complexes, spectral sequence
//! pages, and configuration-space cell complexes.

pub mod chain;
pub mod complex;
pub mod corpus;
pub mod embedding;
pub mod fox_neuwirth;
pub mod functor;
pub mod resolution;
pub mod spectral;

pub use chain::{Cell, FilteredChainComplex, LevelBetti};
pub use complex::{SimplicialComplex, SimplicialMap};
pub use embedding::{moment_embedding, EmbeddingData};
pub use resolution::{build_resolution, check_resolution_equivalence, compare_embeddings, Mode, Resolution};
pub use spectral::{spectral_sequence, SpectralPages};
