//! Tunnel-digging code: walk the nodes below the root in level order,
//! logging leaf/internal per node and a tunnel symbol between sibling
//! groups, then render the log as bits.
//!
//! Rendering: leaf 1, tunnel 0, internal 00 when it closes its sibling
//! group and 01 while further internals follow in the same group. The
//! continuation bit is what makes the stream parse deterministically: the
//! plain two-zero rendering of every internal is ambiguous, because a zero
//! run spanning sibling groups can be split between internals and tunnels
//! in several structurally valid ways (the smallest colliding pair of
//! trees has five nodes). Canonical child order always puts internal
//! children before leaf children, so within a group the internals form a
//! prefix and the marker is well defined.

use std::collections::VecDeque;

use crate::bits::BitString;
use crate::codec::CodingMethod;
use crate::error::{Error, Result};
use crate::tree::{Tree, MAX_NODES};

/// Ternary traversal symbols of the tunnel-digging walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TdSymbol {
    /// A leaf at the current position.
    Leaf,
    /// An internal node at the current position.
    Internal,
    /// Transition between non-sibling nodes, including level drops.
    Tunnel,
}

/// Ternary trace of the tunnel-digging traversal. Empty for a single node.
pub fn td_trace(tree: &Tree) -> Vec<TdSymbol> {
    trace_and_order(tree).0
}

/// Nodes in logging order, with the root (which is never logged) first.
pub fn td_visit_order(tree: &Tree) -> Vec<usize> {
    trace_and_order(tree).1
}

fn trace_and_order(tree: &Tree) -> (Vec<TdSymbol>, Vec<usize>) {
    let n = tree.n();
    let mut order = Vec::with_capacity(n);
    order.push(0);
    // Level order: enqueue children as nodes are dequeued.
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        order.extend(tree.children(v).iter().map(|&c| c as usize));
    }
    let mut symbols = Vec::with_capacity(2 * n);
    for (i, &v) in order.iter().enumerate().skip(1) {
        if i > 1 && tree.parent(v) != tree.parent(order[i - 1]) {
            symbols.push(TdSymbol::Tunnel);
        }
        symbols.push(if tree.is_leaf(v) { TdSymbol::Leaf } else { TdSymbol::Internal });
    }
    (symbols, order)
}

/// Binary tunnel-digging code; `3n - 2*leaves - 3` bits for two or more
/// nodes, empty for a single node.
pub fn encode_td(tree: &Tree) -> BitString {
    let symbols = td_trace(tree);
    let mut bits = BitString::with_capacity(symbols.len() * 2);
    for (i, &sym) in symbols.iter().enumerate() {
        match sym {
            TdSymbol::Leaf => bits.push(true),
            TdSymbol::Tunnel => bits.push(false),
            TdSymbol::Internal => {
                bits.push(false);
                // another internal follows in this group iff the next
                // symbol is also an internal
                bits.push(symbols.get(i + 1) == Some(&TdSymbol::Internal));
            }
        }
    }
    bits
}

fn malformed(reason: &'static str) -> Error {
    Error::MalformedCodeword { method: CodingMethod::Td, reason }
}

/// Decodes a tunnel-digging codeword for a tree with `n` nodes. The code
/// is instantaneous: a single left-to-right pass reconstructs the sibling
/// groups, serving them to internal nodes in queue order.
pub fn decode_td(bits: &BitString, n: usize) -> Result<Tree> {
    let (tree, consumed) = parse_prefix(bits, 0, n)?;
    if consumed != bits.len() {
        return Err(malformed("leftover bits after the structure"));
    }
    Ok(tree)
}

/// Parses one codeword starting at bit `start`, returning the tree and the
/// number of bits consumed. The caller supplies the node count; parsing
/// stops at the token that completes the tree.
pub(crate) fn parse_prefix(bits: &BitString, start: usize, n: usize) -> Result<(Tree, usize)> {
    if n == 0 {
        return Err(Error::ZeroNodeCount);
    }
    if n > MAX_NODES {
        return Err(Error::TooManyNodes { n });
    }
    if n == 1 {
        return Ok((Tree::single(), 0));
    }

    #[derive(PartialEq)]
    enum Phase {
        GroupStart,
        MoreInternals, // a 01 marker promised another internal
        Leaves,        // leaf run; a zero here separates groups
    }

    let len = bits.len();
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut queue: VecDeque<usize> = VecDeque::new();
    let mut serving = 0; // node whose child group is being read
    let mut nodes = 1;
    let mut phase = Phase::GroupStart;
    let mut pos = start;

    loop {
        if pos >= len {
            return Err(malformed("input ends before the tree is complete"));
        }
        if bits.bit(pos) {
            if phase == Phase::MoreInternals {
                return Err(malformed("leaf where another internal was promised"));
            }
            if nodes == n {
                return Err(malformed("more nodes than the requested count"));
            }
            parent[nodes] = Some(serving);
            nodes += 1;
            pos += 1;
            phase = Phase::Leaves;
        } else if phase == Phase::Leaves {
            // group separator
            pos += 1;
            serving = queue.pop_front().ok_or(malformed("separator with no pending parent"))?;
            phase = Phase::GroupStart;
            continue;
        } else {
            if pos + 1 >= len {
                return Err(malformed("truncated internal marker"));
            }
            if nodes == n {
                return Err(malformed("more nodes than the requested count"));
            }
            parent[nodes] = Some(serving);
            queue.push_back(nodes);
            nodes += 1;
            phase = if bits.bit(pos + 1) { Phase::MoreInternals } else { Phase::Leaves };
            pos += 2;
        }
        if nodes == n && queue.is_empty() {
            // a valid structure always closes on a leaf
            debug_assert!(phase == Phase::Leaves);
            let tree = Tree::from_parents(&parent).expect("parsed groups form a tree");
            return Ok((tree, pos - start));
        }
    }
}
