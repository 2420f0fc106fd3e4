//! Path-vector routing tables as labeled rooted trees, and the packet
//! format that ships a table as a TreeExplorer structure code plus labels.
//!
//! Wire format, bit exact:
//!
//! ```text
//! byte 0      version_flags: high nibble 1; low nibble bit0 = has_labels,
//!             bit1 = pit-climbing body (0x10/0x11 tunnel-digging
//!             structure-only/labeled, 0x12/0x13 pit-climbing)
//! bytes 1-2   node count n, big endian
//! bytes 3-4   leaf count, big endian; present only when bit1 is set
//! rest        body: method bit, structure code, then (if labeled) n label
//!             fields of max(1, ceil(log2 n)) bits each in traversal order;
//!             bits packed MSB-first, zero-padded to a byte boundary
//! ```
//!
//! A tunnel-digging structure code parses deterministically, so its length
//! never needs to be transmitted. A pit-climbing code is not self-framing
//! (a codeword plus two zero padding bits can be a valid codeword of a
//! different tree), so pit-climbing packets carry the leaf count, which
//! fixes the structure length exactly.

use crate::bits::BitString;
use crate::codec::{
    decode_pc, decode_pc_image, encode_pc, encode_td, pc_visit_order, selected_method,
    td_visit_order, CodingMethod,
};
use crate::count::ceil_log2;
use crate::error::{Error, Result};
use crate::tree::{Tree, MAX_NODES};

/// A canonical tree whose nodes carry the distinct labels `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledTree {
    tree: Tree,
    labels: Vec<u32>,
}

impl LabeledTree {
    /// Wraps a canonical tree with one label per node; labels must be a
    /// permutation of `0..n`.
    pub fn new(tree: Tree, labels: Vec<u32>) -> Result<LabeledTree> {
        let n = tree.n();
        if labels.len() != n {
            return Err(Error::LabelCountMismatch { expected: n, got: labels.len() });
        }
        let mut seen = vec![false; n];
        for &label in &labels {
            if label as usize >= n {
                return Err(Error::LabelOutOfRange { label, n });
            }
            if std::mem::replace(&mut seen[label as usize], true) {
                return Err(Error::DuplicateLabel { label });
            }
        }
        Ok(LabeledTree { tree, labels })
    }

    /// Canonicalizes a raw parent array and carries the labels along.
    pub fn from_parents(raw: &[Option<usize>], labels: &[u32]) -> Result<LabeledTree> {
        let (tree, order) = Tree::from_parents_with_order(raw)?;
        if labels.len() != raw.len() {
            return Err(Error::LabelCountMismatch { expected: raw.len(), got: labels.len() });
        }
        let mut permuted = vec![0u32; labels.len()];
        for (i, &label) in labels.iter().enumerate() {
            permuted[order[i]] = label;
        }
        LabeledTree::new(tree, permuted)
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }
}

/// One shortest-path entry: every hop from the source to `dest`, endpoints
/// included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Route {
    pub dest: u32,
    pub hops: Vec<u32>,
}

/// A path-vector routing table: the source node plus one hop sequence per
/// reachable destination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathVectorTable {
    pub source: u32,
    pub routes: Vec<Route>,
}

/// Folds a consistent path-vector table into the labeled tree rooted at the
/// source: each node's parent is the penultimate hop of its route.
pub fn table_from_paths(table: &PathVectorTable) -> Result<LabeledTree> {
    let mut max_label = table.source;
    for route in &table.routes {
        for &hop in &route.hops {
            max_label = max_label.max(hop);
        }
    }
    let n = max_label as usize + 1;
    if n > MAX_NODES {
        return Err(Error::TooManyNodes { n });
    }

    let mut parent: Vec<Option<u32>> = vec![None; n];
    let mut present = vec![false; n];
    let mut is_dest = vec![false; n];
    present[table.source as usize] = true;
    for route in &table.routes {
        if route.hops.first() != Some(&table.source) {
            return Err(Error::InvalidRoute {
                dest: route.dest,
                reason: "hop sequence does not start at the source",
            });
        }
        if route.hops.last() != Some(&route.dest) {
            return Err(Error::InvalidRoute {
                dest: route.dest,
                reason: "hop sequence does not end at the destination",
            });
        }
        if route.dest == table.source {
            return Err(Error::InvalidRoute {
                dest: route.dest,
                reason: "destination equals the source",
            });
        }
        if std::mem::replace(&mut is_dest[route.dest as usize], true) {
            return Err(Error::DuplicateDestination { dest: route.dest });
        }
        let mut on_route = vec![false; n];
        for pair in route.hops.windows(2) {
            let (from, to) = (pair[0], pair[1]);
            if to == table.source || std::mem::replace(&mut on_route[to as usize], true) {
                return Err(Error::InvalidRoute {
                    dest: route.dest,
                    reason: "hop sequence revisits a node",
                });
            }
            present[to as usize] = true;
            match parent[to as usize] {
                None => parent[to as usize] = Some(from),
                Some(existing) if existing == from => {}
                Some(_) => return Err(Error::InconsistentParent { label: to }),
            }
        }
    }
    // Labels must be the dense range 0..n.
    if present.iter().any(|&p| !p) {
        let count = present.iter().filter(|&&p| p).count();
        return Err(Error::LabelOutOfRange { label: max_label, n: count });
    }

    let raw: Vec<Option<usize>> = parent.iter().map(|p| p.map(|v| v as usize)).collect();
    let labels: Vec<u32> = (0..n as u32).collect();
    LabeledTree::from_parents(&raw, &labels)
}

/// Expands a labeled tree into its path-vector table: one route per
/// non-root node, listing the labels from the root down to it. Routes come
/// out sorted by destination label.
pub fn tree_to_table(lt: &LabeledTree) -> PathVectorTable {
    let tree = lt.tree();
    let labels = lt.labels();
    let mut routes: Vec<Route> = (1..tree.n())
        .map(|v| {
            let mut hops = Vec::new();
            let mut cur = v;
            loop {
                hops.push(labels[cur]);
                match tree.parent(cur) {
                    Some(p) => cur = p,
                    None => break,
                }
            }
            hops.reverse();
            Route { dest: labels[v], hops }
        })
        .collect();
    routes.sort_by_key(|r| r.dest);
    PathVectorTable { source: labels[0], routes }
}

/// Total bits of the naive per-destination protocol messages: every route
/// listed hop by hop at the label width. Message headers are not charged.
pub fn baseline_path_vector_bits(table: &PathVectorTable) -> u64 {
    let mut n = 1u64; // the source
    let mut hop_count = 0u64;
    for route in &table.routes {
        n += 1;
        hop_count += route.hops.len() as u64;
    }
    let width = ceil_log2(n as usize).max(1) as u64;
    hop_count * width
}

fn label_width(n: usize) -> u32 {
    ceil_log2(n).max(1)
}

/// Structure-only and labeled packet flavors produced by [`decode_packet`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecodedPacket {
    Labeled(LabeledTree),
    Structure(Tree),
}

/// Node order in which label fields are laid out for the given method: the
/// pit-climbing first-visit order, or the root followed by the
/// tunnel-digging logging order.
fn traversal_order(tree: &Tree, method: CodingMethod) -> Vec<usize> {
    match method {
        CodingMethod::Pc => pc_visit_order(tree),
        CodingMethod::Td => td_visit_order(tree),
    }
}

/// Frames a labeled tree into a packet, optionally dropping the labels
/// (a structure-only update).
///
/// The body carries the method-selected structure code, except that a
/// pit-climbing codeword which does not decode back to its own tree (the
/// code admits rare ambiguous pairs above 19 nodes) is replaced by the
/// tunnel-digging code, which is instantaneous and therefore always safe.
/// The method bit and header flags signal whichever code was used.
pub fn encode_packet(lt: &LabeledTree, include_labels: bool) -> Vec<u8> {
    let tree = lt.tree();
    let stats = tree.stats();
    let n = stats.n;
    let mut method = selected_method(&stats);
    let mut body = BitString::new();
    if method == CodingMethod::Pc {
        let code = encode_pc(tree);
        if decode_pc(&code, n).as_ref() == Ok(tree) {
            body.push(false);
            body.extend(&code);
        } else {
            method = CodingMethod::Td;
        }
    }
    if method == CodingMethod::Td {
        body.push(true);
        body.extend(&encode_td(tree));
    }
    if include_labels {
        let width = label_width(n);
        for v in traversal_order(tree, method) {
            body.push_uint(lt.labels()[v] as u64, width);
        }
    }
    let mut bytes = Vec::with_capacity(5 + body.len().div_ceil(8));
    let mut flags = 0x10 | include_labels as u8;
    if method == CodingMethod::Pc {
        flags |= 0x02;
    }
    bytes.push(flags);
    bytes.extend_from_slice(&(n as u16).to_be_bytes());
    if method == CodingMethod::Pc {
        bytes.extend_from_slice(&(stats.leaves as u16).to_be_bytes());
    }
    bytes.extend_from_slice(body.padded_bytes());
    bytes
}

/// Parses a packet back into its tree, exact inverse of [`encode_packet`].
pub fn decode_packet(bytes: &[u8]) -> Result<DecodedPacket> {
    if bytes.len() < 3 {
        return Err(Error::TruncatedPacket);
    }
    let flags = bytes[0];
    if flags & 0xFC != 0x10 {
        return Err(Error::BadVersion { byte: flags });
    }
    let has_labels = flags & 0x01 != 0;
    let pc_body = flags & 0x02 != 0;
    let n = u16::from_be_bytes([bytes[1], bytes[2]]) as usize;
    if n == 0 {
        return Err(Error::ZeroNodeCount);
    }

    if pc_body {
        if bytes.len() < 5 {
            return Err(Error::TruncatedPacket);
        }
        let leaves = u16::from_be_bytes([bytes[3], bytes[4]]) as usize;
        if leaves < 1 || leaves > n.saturating_sub(1) {
            return Err(Error::MalformedCodeword {
                method: CodingMethod::Pc,
                reason: "leaf count out of range for the node count",
            });
        }
        let body = BitString::from_bytes(&bytes[5..]);
        let p = n + 2 * leaves - 3;
        if body.is_empty() || 1 + p > body.len() {
            return Err(Error::TruncatedBody);
        }
        if body.bit(0) {
            return Err(Error::MalformedCodeword {
                method: CodingMethod::Pc,
                reason: "method bit contradicts the header flags",
            });
        }
        let tree = decode_pc_image(&body.slice(1, 1 + p), n)?;
        finish_packet(&body, 1 + p, tree, CodingMethod::Pc, has_labels, n, 5)
    } else {
        let body = BitString::from_bytes(&bytes[3..]);
        if body.is_empty() {
            return Err(Error::TruncatedBody);
        }
        if !body.bit(0) {
            return Err(Error::MalformedCodeword {
                method: CodingMethod::Td,
                reason: "method bit contradicts the header flags",
            });
        }
        let (tree, consumed) = crate::codec::td_parse_prefix(&body, 1, n)?;
        finish_packet(&body, 1 + consumed, tree, CodingMethod::Td, has_labels, n, 3)
    }
}

/// Reads the optional label block at `pos` and validates the zero padding.
fn finish_packet(
    body: &BitString,
    mut pos: usize,
    tree: Tree,
    method: CodingMethod,
    has_labels: bool,
    n: usize,
    header_bytes: usize,
) -> Result<DecodedPacket> {
    let result = if has_labels {
        let width = label_width(n);
        if pos + n * width as usize > body.len() {
            return Err(Error::TruncatedBody);
        }
        let order = traversal_order(&tree, method);
        let mut labels = vec![0u32; n];
        let mut seen = vec![false; n];
        for &node in &order {
            let label = body.uint(pos, width);
            pos += width as usize;
            if label >= n as u64 {
                return Err(Error::LabelOutOfRange { label: label as u32, n });
            }
            if std::mem::replace(&mut seen[label as usize], true) {
                return Err(Error::DuplicateLabel { label: label as u32 });
            }
            labels[node] = label as u32;
        }
        DecodedPacket::Labeled(LabeledTree::new(tree, labels)?)
    } else {
        DecodedPacket::Structure(tree)
    };

    if body.len() - pos >= 8 {
        return Err(Error::TrailingGarbage { pos: header_bytes + pos / 8 });
    }
    if (pos..body.len()).any(|i| body.bit(i)) {
        return Err(Error::NonzeroPadding);
    }
    Ok(result)
}

/// Parses the route-list text format: first line `source <label>`, then one
/// route per line as space-separated hop labels; blank lines are ignored.
pub fn parse_route_list(text: &str) -> Result<PathVectorTable> {
    let mut lines = text.lines().enumerate();
    let (first_no, first) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or_else(|| Error::RouteListSyntax { line: 1, reason: "missing source line".into() })?;
    let mut head = first.split_whitespace();
    let source = match (head.next(), head.next(), head.next()) {
        (Some("source"), Some(label), None) => {
            label.parse::<u32>().map_err(|_| Error::RouteListSyntax {
                line: first_no + 1,
                reason: format!("invalid source label {label:?}"),
            })?
        }
        _ => {
            return Err(Error::RouteListSyntax {
                line: first_no + 1,
                reason: "expected `source <label>`".into(),
            })
        }
    };
    let mut routes = Vec::new();
    for (no, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let mut hops = Vec::new();
        for token in line.split_whitespace() {
            hops.push(token.parse::<u32>().map_err(|_| Error::RouteListSyntax {
                line: no + 1,
                reason: format!("invalid hop label {token:?}"),
            })?);
        }
        if hops.len() < 2 {
            return Err(Error::RouteListSyntax {
                line: no + 1,
                reason: "a route needs at least two hops".into(),
            });
        }
        routes.push(Route { dest: *hops.last().unwrap(), hops });
    }
    Ok(PathVectorTable { source, routes })
}

/// Inverse of [`parse_route_list`].
pub fn emit_route_list(table: &PathVectorTable) -> String {
    let mut out = format!("source {}\n", table.source);
    for route in &table.routes {
        let hops: Vec<String> = route.hops.iter().map(|h| h.to_string()).collect();
        out.push_str(&hops.join(" "));
        out.push('\n');
    }
    out
}
