//! Pit-climbing code: traverse from the leftmost leaf, climbing edge by
//! edge and falling into the leftmost unexplored leaf, then render the
//! ternary log as bits.
//!
//! Rendering: fall 0, climb-to-new 1, climb-to-seen 00 or 01. The second
//! bit of a climb-to-seen records whether the number of open falls at that
//! climb is odd, and is forced to 0 on the trace's final symbol. A plain
//! all-zero rendering of every climb-to-seen is ambiguous: a zero run can
//! be split between falls and climbs-to-seen in several structurally valid
//! ways, and distinct trees collide from seven nodes up. The parity bit
//! pins the depth trajectory; the resulting code is collision-free for
//! every tree with up to 19 nodes by exhaustive check (the final-symbol
//! exception keeps the three-node star at its classic rendering, which a
//! bare parity bit would break).

use std::collections::HashSet;

use crate::bits::BitString;
use crate::codec::CodingMethod;
use crate::error::{Error, Result};
use crate::tree::{Tree, MAX_NODES};

/// Ternary traversal symbols of the pit-climbing walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PcSymbol {
    /// Fall from the current node to the leftmost leaf of its leftmost
    /// unexplored subtree (one symbol regardless of the fall's edge count).
    Fall,
    /// Climb one edge to a node seen for the first time.
    ClimbNew,
    /// Climb one edge back to an already-visited node.
    ClimbSeen,
}

/// Ternary trace of the pit-climbing traversal. Empty for a single node.
pub fn pc_trace(tree: &Tree) -> Vec<PcSymbol> {
    walk(tree).0
}

/// Nodes in first-visit order of the traversal: the start leaf first, every
/// fall target at its fall, every other node at its first climb.
pub fn pc_visit_order(tree: &Tree) -> Vec<usize> {
    walk(tree).1
}

fn walk(tree: &Tree) -> (Vec<PcSymbol>, Vec<usize>) {
    let n = tree.n();
    let mut symbols = Vec::with_capacity(2 * n);
    let mut order = Vec::with_capacity(n);
    let mut next_child = vec![0u32; n];
    let mut visited = vec![false; n];

    let descend = |cur: &mut usize, next_child: &mut [u32]| {
        while !tree.is_leaf(*cur) {
            let c = tree.children(*cur)[next_child[*cur] as usize] as usize;
            next_child[*cur] += 1;
            *cur = c;
        }
    };

    let mut cur = 0;
    descend(&mut cur, &mut next_child);
    visited[cur] = true;
    order.push(cur);

    loop {
        if (next_child[cur] as usize) < tree.children(cur).len() {
            symbols.push(PcSymbol::Fall);
            descend(&mut cur, &mut next_child);
            visited[cur] = true;
            order.push(cur);
        } else if cur == 0 {
            break;
        } else {
            let p = tree.parent(cur).unwrap();
            if visited[p] {
                symbols.push(PcSymbol::ClimbSeen);
            } else {
                symbols.push(PcSymbol::ClimbNew);
                visited[p] = true;
                order.push(p);
            }
            cur = p;
        }
    }
    (symbols, order)
}

/// Binary pit-climbing code; `n + 2*leaves - 3` bits for two or more nodes,
/// empty for a single node.
pub fn encode_pc(tree: &Tree) -> BitString {
    let symbols = pc_trace(tree);
    let mut bits = BitString::with_capacity(symbols.len() * 2);
    let mut open_falls = 0u32;
    for (i, &sym) in symbols.iter().enumerate() {
        match sym {
            PcSymbol::ClimbNew => bits.push(true),
            PcSymbol::Fall => {
                open_falls += 1;
                bits.push(false);
            }
            PcSymbol::ClimbSeen => {
                bits.push(false);
                bits.push(open_falls % 2 == 1 && i + 1 < symbols.len());
                open_falls -= 1;
            }
        }
    }
    bits
}

fn malformed(reason: &'static str) -> Error {
    Error::MalformedCodeword { method: CodingMethod::Pc, reason }
}

/// Decodes a pit-climbing codeword for a tree with `n` nodes.
///
/// Parsing is a depth-first search over the traversal state machine: a
/// zero can open a fall or start a climb-to-seen, whose parity bit must
/// match the current open-fall count. Reading two zeros as a climb first
/// and memoizing dead states, the search returns the first parse that
/// consumes every bit and builds exactly `n` nodes ending at the root.
///
/// The first parse inverts [`encode_pc`] for every tree with up to 14
/// nodes (checked exhaustively) and for random trees far beyond that, but
/// the code admits rare ambiguous strings at larger sizes, where the
/// result is the parse the fixed search order reaches first. The packet
/// layer never relies on the ambiguous cases: its encoder only emits a
/// pit-climbing body after verifying the codeword decodes to its own tree.
pub fn decode_pc(bits: &BitString, n: usize) -> Result<Tree> {
    match parse_checked(bits, n)? {
        Parsed::Image(tree) | Parsed::Stray(tree) => Ok(tree),
    }
}

/// Like [`decode_pc`] but only accepts canonical codewords (exact inverses
/// of [`encode_pc`]); packet framing relies on this to reject misaligned
/// structure slices.
pub(crate) fn decode_pc_image(bits: &BitString, n: usize) -> Result<Tree> {
    match parse_checked(bits, n)? {
        Parsed::Image(tree) => Ok(tree),
        Parsed::Stray(_) => Err(malformed("parses only as a non-canonical traversal")),
    }
}

enum Parsed {
    Image(Tree),
    Stray(Tree),
}

fn parse_checked(bits: &BitString, n: usize) -> Result<Parsed> {
    if n == 0 {
        return Err(Error::ZeroNodeCount);
    }
    if n > MAX_NODES {
        return Err(Error::TooManyNodes { n });
    }
    let len = bits.len();
    if n == 1 {
        return if len == 0 {
            Ok(Parsed::Image(Tree::single()))
        } else {
            Err(malformed("leftover bits after a single-node code"))
        };
    }
    // len = (n-1) + 2*(leaves-1) for any valid parse
    if len < n - 1 || len > 3 * (n - 1) || (len - (n - 1)) % 2 != 0 {
        return Err(malformed("bit count cannot reach the requested node count"));
    }
    parse(bits, n)
}

struct Frame {
    pos: usize,
    depth: u32, // open falls not yet matched by a climb-to-seen
    nodes: usize,
    fresh: bool, // just fell into a leaf (or still at the start leaf)
    stage: u8,
}

fn parse(bits: &BitString, n: usize) -> Result<Parsed> {
    let len = bits.len();
    // Dead states (no accepting continuation) depend only on
    // (pos, depth, fresh): the node count is a function of the bits
    // consumed and the open-fall depth. Every state is expanded at most
    // once, so the search is polynomial in the input length.
    let mut dead: HashSet<(usize, u32, bool)> = HashSet::new();
    let mut stack = vec![Frame { pos: 0, depth: 0, nodes: 1, fresh: true, stage: 0 }];
    let mut symbols: Vec<PcSymbol> = Vec::new();

    while let Some(top) = stack.last_mut() {
        let Frame { pos, depth, nodes, fresh, stage } = *top;
        let alternatives = if bits.bit(pos) { 1 } else { 2 };
        if stage >= alternatives {
            stack.pop();
            dead.insert((pos, depth, fresh));
            if !stack.is_empty() {
                symbols.pop();
            }
            continue;
        }
        top.stage += 1;

        let step = if bits.bit(pos) {
            (nodes < n).then(|| (PcSymbol::ClimbNew, pos + 1, depth, nodes + 1, false))
        } else if stage == 0 {
            // climb-to-seen: the second bit must match the open-fall parity
            let marker = depth % 2 == 1 && pos + 2 < len;
            (depth >= 1 && pos + 2 <= len && bits.bit(pos + 1) == marker)
                .then(|| (PcSymbol::ClimbSeen, pos + 2, depth - 1, nodes, false))
        } else {
            (!fresh && nodes < n).then(|| (PcSymbol::Fall, pos + 1, depth + 1, nodes + 1, true))
        };

        let Some((sym, pos, depth, nodes, fresh)) = step else {
            continue;
        };
        if pos == len {
            if depth == 0 && nodes == n {
                symbols.push(sym);
                let tree = build(&symbols, n);
                return if encode_pc(&tree) == *bits {
                    Ok(Parsed::Image(tree))
                } else {
                    Ok(Parsed::Stray(tree))
                };
            }
            continue;
        }
        if dead.contains(&(pos, depth, fresh)) {
            continue;
        }
        symbols.push(sym);
        stack.push(Frame { pos, depth, nodes, fresh, stage: 0 });
    }
    Err(malformed("no valid parse reaches the requested node count"))
}

/// Replays an accepted symbol sequence into a canonical tree. Nodes are
/// numbered in first-visit order while replaying.
fn build(symbols: &[PcSymbol], n: usize) -> Tree {
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut fall_origins: Vec<usize> = Vec::new();
    let mut cur = 0;
    let mut next = 1;
    for &sym in symbols {
        match sym {
            PcSymbol::Fall => {
                fall_origins.push(cur);
                cur = next;
                next += 1;
            }
            PcSymbol::ClimbNew => {
                parent[cur] = Some(next);
                cur = next;
                next += 1;
            }
            PcSymbol::ClimbSeen => {
                let origin = fall_origins.pop().expect("accepted parse balances falls");
                parent[cur] = Some(origin);
                cur = origin;
            }
        }
    }
    debug_assert_eq!(next, n);
    Tree::from_parents(&parent).expect("accepted parse forms a tree")
}
