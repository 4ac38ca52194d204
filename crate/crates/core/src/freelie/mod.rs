//! Lyndon words, Lie bases inside the free associative algebra, the
//! lower exponent-p layers as GL(d, p)-modules and commutator growth.

mod basis;
mod com;
mod layer;
mod ncpoly;
mod word;

pub use basis::{layer_ranks, mobius, witt_dim, LayerRanks, LieBasis};
pub use com::{com_dim_growth, com_matrix, Growth, GrowthContext};
pub use layer::{layer_blocks, Block, GradedCoords, LayerModule};
pub use ncpoly::{expand, NcPoly};
pub use word::{lyndon_words, lyndon_words_by_filter, standard_bracketing, BracketTree, Word};
