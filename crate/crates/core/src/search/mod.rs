//! Extension, growth to maximal graphs, enumeration of classes, and the
//! search for maximal triangle-free subgraphs of the E8 line system.

pub mod e8;
mod enumerate;
mod extend;
mod general;

pub use e8::{e8_moves, e8_vertices, search_e8_triangle_free, E8Move, E8SearchOptions, E8SearchResult, E8Vertex};
pub use enumerate::{census, enumerate_cyclotomic, enumerate_levels, ClassRecord, EnumerateOptions};
pub use extend::{
    extensions, extensions_in, grow_greedy, grow_to_maximal, is_maximal, is_maximal_in, triangle_free, Column, Growth,
    Mode, DEFAULT_CAP,
};
pub use general::{wrap_general_matrices, GeneralClass, ENTRY_BOUND};
