//! Exact sparse linear algebra over the rationals.

mod closure;
mod market;
mod matrix;
mod space;

use thiserror::Error;

pub use closure::{
    algebra_closure, algebra_closure_with, is_multiplicatively_closed, word_product, Closure,
    ClosureOptions, Side,
};
pub use market::{matrix_market_string, write_matrix_market};
pub use matrix::{embed_block, BlockLayout, ExactMatrix, IndexSpace};
pub use space::{MatrixSpace, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("{op}: incompatible shapes {left:?} and {right:?}")]
    Shape {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("{op}: index spaces {left} and {right} do not match")]
    Space {
        op: &'static str,
        left: String,
        right: String,
    },
    #[error("matrix of shape {found:?} does not fit ambient space {expected:?}")]
    Ambient {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("matrix of shape {found:?} does not match block layout of size {expected:?}")]
    Layout {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("block ({i}, {j}) expects shape {expected:?}, got {found:?}")]
    BlockSize {
        i: usize,
        j: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("block ({i}, {j}) outside a layout with {blocks} blocks")]
    BlockIndex { i: usize, j: usize, blocks: usize },
}
