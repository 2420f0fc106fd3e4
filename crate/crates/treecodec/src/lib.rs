//! Succinct codes for unlabeled rooted trees and the routing-table packet
//! format built on them.
//!
//! The crate covers, end to end:
//!
//! - [`tree`]: the canonical representation of unordered rooted trees,
//!   where equality is isomorphism, plus parent-array text I/O;
//! - [`count`]: exact counting of rooted trees and the related closed-form
//!   counts (ordered trees, labeled trees);
//! - [`enumerate`]: exhaustive generation of every shape at small sizes;
//! - [`sample`]: exactly uniform random trees driven by the counts;
//! - [`codec`]: the pit-climbing and tunnel-digging bit codes and the
//!   TreeExplorer hybrid that selects between them by leaf count;
//! - [`newick`]: Newick text I/O and its bit-cost model;
//! - [`analysis`]: entropy baselines and the averaging benchmark;
//! - [`routing`]: path-vector tables as labeled trees and the bit-exact
//!   packet codec.
//!
//! Everything is a pure function of its inputs: trees are immutable once
//! built, random state is caller-owned, and no module does I/O besides the
//! explicit text/CSV emitters.

pub mod analysis;
pub mod bits;
pub mod codec;
pub mod count;
pub mod enumerate;
pub mod error;
pub mod newick;
pub mod routing;
pub mod sample;
pub mod tree;

pub use bits::BitString;
pub use codec::{
    code_lengths, decode_pc, decode_td, decode_tree_explorer, encode_pc, encode_td,
    encode_tree_explorer, CodeLengths, CodingMethod,
};
pub use count::{count_trees, labeled_tree_count, ordered_rooted_count, TreeCounts};
pub use enumerate::enumerate_trees;
pub use error::{Error, Result};
pub use newick::{emit_newick, newick_bit_length, parse_newick};
pub use routing::{
    baseline_path_vector_bits, decode_packet, encode_packet, table_from_paths, tree_to_table,
    DecodedPacket, LabeledTree, PathVectorTable, Route,
};
pub use sample::{sample_uniform, UniformSampler};
pub use tree::{emit_parent_text, parse_parent_text, Tree, TreeStats, MAX_NODES};
