//! Tree structure codes: pit-climbing, tunnel-digging, and the
//! TreeExplorer hybrid that picks between them by leaf count.

mod pc;
mod td;

pub use pc::{decode_pc, encode_pc, pc_trace, pc_visit_order, PcSymbol};
pub use td::{decode_td, encode_td, td_trace, td_visit_order, TdSymbol};

pub(crate) use pc::decode_pc_image;
pub(crate) use td::parse_prefix as td_parse_prefix;

use std::fmt;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::tree::{Tree, TreeStats};

/// One of the two base coding methods. The TreeExplorer prefix bit is 0 for
/// pit-climbing and 1 for tunnel-digging.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CodingMethod {
    Pc,
    Td,
}

impl fmt::Display for CodingMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CodingMethod::Pc => "pit-climbing",
            CodingMethod::Td => "tunnel-digging",
        })
    }
}

/// Method TreeExplorer selects for a tree with these stats: pit-climbing
/// when leaves < n/2, tunnel-digging otherwise (ties included).
pub fn selected_method(stats: &TreeStats) -> CodingMethod {
    if 2 * stats.leaves < stats.n {
        CodingMethod::Pc
    } else {
        CodingMethod::Td
    }
}

/// TreeExplorer code: one method bit, then the selected base code.
pub fn encode_tree_explorer(tree: &Tree) -> BitString {
    let mut bits = BitString::new();
    match selected_method(&tree.stats()) {
        CodingMethod::Pc => {
            bits.push(false);
            bits.extend(&encode_pc(tree));
        }
        CodingMethod::Td => {
            bits.push(true);
            bits.extend(&encode_td(tree));
        }
    }
    bits
}

/// Inverse of [`encode_tree_explorer`]: the first bit picks the decoder for
/// the remainder.
pub fn decode_tree_explorer(bits: &BitString, n: usize) -> Result<Tree> {
    if bits.is_empty() {
        return Err(Error::EmptyCodeword);
    }
    let body = bits.slice(1, bits.len());
    if bits.bit(0) {
        decode_td(&body, n)
    } else {
        decode_pc(&body, n)
    }
}

/// Node order in which TreeExplorer traverses the tree; label fields in
/// packets are laid out in this order.
pub fn visit_order(tree: &Tree) -> Vec<usize> {
    match selected_method(&tree.stats()) {
        CodingMethod::Pc => pc_visit_order(tree),
        CodingMethod::Td => td_visit_order(tree),
    }
}

/// Closed-form codeword lengths in bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodeLengths {
    pub pc: u64,
    pub td: u64,
    pub te: u64,
}

/// Exact codeword lengths for a tree with the given stats: pit-climbing
/// `n + 2l - 3`, tunnel-digging `3n - 2l - 3`, TreeExplorer `min + 1`.
/// Both base codes are empty for a single node.
pub fn code_lengths(stats: &TreeStats) -> CodeLengths {
    let (n, l) = (stats.n as u64, stats.leaves as u64);
    let (pc, td) = if stats.n == 1 {
        (0, 0)
    } else {
        (n + 2 * l - 3, 3 * n - 2 * l - 3)
    };
    CodeLengths { pc, td, te: pc.min(td) + 1 }
}
