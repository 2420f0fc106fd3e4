//! Canonical rooted-tree representation and validation.

use crate::error::{Error, Result};

/// Largest supported node count (the packet header stores `n` in 16 bits).
pub const MAX_NODES: usize = 65535;

/// Canonical ordered form of an unlabeled unordered rooted tree.
///
/// Node 0 is the root and nodes are numbered in depth-first preorder of the
/// canonical child order, so `parent(i) < i` holds for every non-root node.
/// Children of every node are kept in nonincreasing lexicographic order of
/// their subtrees' level sequences. Two parent arrays describe isomorphic
/// unordered rooted trees exactly when their canonical `Tree`s are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    parents: Vec<u32>, // parents[0] is an unused 0 sentinel
    child_start: Vec<u32>,
    child_list: Vec<u32>,
}

/// Basic shape statistics of a tree.
///
/// A leaf is a node with no children; the root of a one-node tree counts as
/// a leaf, so `leaves >= 1` always holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeStats {
    pub n: usize,
    pub leaves: usize,
    pub depth: usize,
}

impl Tree {
    /// The one-node tree.
    pub fn single() -> Tree {
        Tree {
            parents: vec![0],
            child_start: vec![0, 0],
            child_list: Vec::new(),
        }
    }

    /// Canonicalizes a raw parent array (entry `None` marks the root, which
    /// may sit at any index and children may appear in any order).
    pub fn from_parents(raw: &[Option<usize>]) -> Result<Tree> {
        Ok(Self::from_parents_with_order(raw)?.0)
    }

    /// Like [`Tree::from_parents`] but also returns the index map from raw
    /// positions to canonical positions, for carrying node labels along.
    pub fn from_parents_with_order(raw: &[Option<usize>]) -> Result<(Tree, Vec<usize>)> {
        let n = raw.len();
        if n == 0 {
            return Err(Error::EmptyTree);
        }
        if n > MAX_NODES {
            return Err(Error::TooManyNodes { n });
        }

        let mut root = None;
        for (node, entry) in raw.iter().enumerate() {
            match *entry {
                None => {
                    if root.replace(node).is_some() {
                        return Err(Error::MultipleRoots);
                    }
                }
                Some(parent) if parent >= n => {
                    return Err(Error::ParentOutOfRange { node, parent, n });
                }
                Some(_) => {}
            }
        }
        let root = root.ok_or(Error::MultipleRoots)?;

        // Raw children lists, input order.
        let mut degree = vec![0u32; n];
        for entry in raw.iter().flatten() {
            degree[*entry] += 1;
        }
        let mut start = vec![0u32; n + 1];
        for v in 0..n {
            start[v + 1] = start[v] + degree[v];
        }
        let mut fill = start.clone();
        let mut children = vec![0u32; n.saturating_sub(1)];
        for (node, entry) in raw.iter().enumerate() {
            if let Some(parent) = *entry {
                children[fill[parent] as usize] = node as u32;
                fill[parent] += 1;
            }
        }

        // Depths via BFS; an unreachable node means a parent cycle.
        let mut depth = vec![u32::MAX; n];
        let mut bfs = Vec::with_capacity(n);
        depth[root] = 0;
        bfs.push(root as u32);
        let mut head = 0;
        while head < bfs.len() {
            let v = bfs[head] as usize;
            head += 1;
            for &c in &children[start[v] as usize..start[v + 1] as usize] {
                depth[c as usize] = depth[v] + 1;
                bfs.push(c);
            }
        }
        if bfs.len() != n {
            let node = (0..n).find(|&v| depth[v] == u32::MAX).unwrap();
            return Err(Error::CycleDetected { node });
        }

        // Rank subtrees level by level, deepest first. A node's key is the
        // nonincreasing list of its children's ranks; within one level,
        // larger keys (natural slice order) are exactly the subtrees whose
        // level sequences are lexicographically greater.
        let mut rank = vec![0u32; n];
        let mut sorted_children: Vec<Vec<u32>> = vec![Vec::new(); n];
        let max_depth = *depth.iter().max().unwrap() as usize;
        let mut by_depth: Vec<Vec<u32>> = vec![Vec::new(); max_depth + 1];
        for v in 0..n {
            by_depth[depth[v] as usize].push(v as u32);
        }
        for level in by_depth.iter().rev() {
            let mut keyed: Vec<(Vec<u32>, u32)> = level
                .iter()
                .map(|&v| {
                    let mut kids: Vec<u32> =
                        children[start[v as usize] as usize..start[v as usize + 1] as usize].to_vec();
                    kids.sort_by(|&a, &b| rank[b as usize].cmp(&rank[a as usize]));
                    let key: Vec<u32> = kids.iter().map(|&c| rank[c as usize]).collect();
                    sorted_children[v as usize] = kids;
                    (key, v)
                })
                .collect();
            keyed.sort();
            let mut next = 0u32;
            for i in 0..keyed.len() {
                if i > 0 && keyed[i].0 != keyed[i - 1].0 {
                    next += 1;
                }
                rank[keyed[i].1 as usize] = next;
            }
        }

        // Renumber in preorder of the canonical child order.
        let mut order = vec![0usize; n];
        let mut parents = vec![0u32; n];
        let mut stack = vec![root as u32];
        let mut next = 0u32;
        while let Some(v) = stack.pop() {
            let v = v as usize;
            order[v] = next as usize;
            if v != root {
                parents[next as usize] = order[raw[v].unwrap()] as u32;
            }
            next += 1;
            for &c in sorted_children[v].iter().rev() {
                stack.push(c);
            }
        }

        Ok((Tree::from_canonical_parents(parents), order))
    }

    /// Builds a tree from a canonical preorder parent array without
    /// re-sorting. Callers must guarantee canonical child order.
    pub(crate) fn from_canonical_parents(parents: Vec<u32>) -> Tree {
        let n = parents.len();
        debug_assert!(parents.iter().enumerate().skip(1).all(|(i, &p)| (p as usize) < i));
        let mut child_start = vec![0u32; n + 1];
        for &p in &parents[1..] {
            child_start[p as usize + 1] += 1;
        }
        for v in 0..n {
            child_start[v + 1] += child_start[v];
        }
        let mut fill = child_start.clone();
        let mut child_list = vec![0u32; n.saturating_sub(1)];
        // Preorder indices are increasing within each sibling block, so
        // filling in index order preserves canonical child order.
        for (i, &p) in parents.iter().enumerate().skip(1) {
            child_list[fill[p as usize] as usize] = i as u32;
            fill[p as usize] += 1;
        }
        Tree {
            parents,
            child_start,
            child_list,
        }
    }

    /// Builds a tree from a canonical level sequence (`levels[0] == 0`,
    /// preorder depths). Used by the enumerator, which produces canonical
    /// sequences by construction.
    pub(crate) fn from_canonical_levels(levels: &[u32]) -> Tree {
        debug_assert!(!levels.is_empty() && levels[0] == 0);
        let mut parents = vec![0u32; levels.len()];
        let mut last_at = vec![0u32; levels.len() + 1];
        for (i, &d) in levels.iter().enumerate().skip(1) {
            debug_assert!(d >= 1 && d <= levels[i - 1] + 1);
            parents[i] = last_at[d as usize - 1];
            last_at[d as usize] = i as u32;
        }
        Tree::from_canonical_parents(parents)
    }

    pub fn n(&self) -> usize {
        self.parents.len()
    }

    /// Parent of `node`, `None` for the root.
    pub fn parent(&self, node: usize) -> Option<usize> {
        if node == 0 {
            None
        } else {
            Some(self.parents[node] as usize)
        }
    }

    /// Children of `node` in canonical order.
    pub fn children(&self, node: usize) -> &[u32] {
        &self.child_list[self.child_start[node] as usize..self.child_start[node + 1] as usize]
    }

    pub fn is_leaf(&self, node: usize) -> bool {
        self.child_start[node] == self.child_start[node + 1]
    }

    /// Preorder depth sequence; equal sequences characterize isomorphism.
    pub fn level_sequence(&self) -> Vec<u32> {
        let mut levels = vec![0u32; self.n()];
        for i in 1..self.n() {
            levels[i] = levels[self.parents[i] as usize] + 1;
        }
        levels
    }

    pub fn stats(&self) -> TreeStats {
        let n = self.n();
        let leaves = (0..n).filter(|&v| self.is_leaf(v)).count();
        let depth = *self.level_sequence().iter().max().unwrap() as usize;
        TreeStats { n, leaves, depth }
    }
}

impl std::fmt::Debug for Tree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Tree{:?}", self.level_sequence())
    }
}

/// Parses the parent-array text format: first line the node count, then the
/// parent of each node as a space-separated integer with the root as -1.
pub fn parse_parent_text(text: &str) -> Result<Tree> {
    let mut tokens = text.split_whitespace();
    let head = tokens
        .next()
        .ok_or_else(|| Error::ParentTextSyntax { reason: "missing node count".into() })?;
    let n: usize = head.parse().map_err(|_| Error::ParentTextSyntax {
        reason: format!("invalid node count {head:?}"),
    })?;
    if n == 0 {
        return Err(Error::EmptyTree);
    }
    if n > MAX_NODES {
        return Err(Error::TooManyNodes { n });
    }
    let mut raw = Vec::with_capacity(n);
    for i in 0..n {
        let tok = tokens.next().ok_or_else(|| Error::ParentTextSyntax {
            reason: format!("expected {n} parent entries, got {i}"),
        })?;
        let value: i64 = tok.parse().map_err(|_| Error::ParentTextSyntax {
            reason: format!("invalid parent entry {tok:?}"),
        })?;
        match value {
            -1 => raw.push(None),
            v if v >= 0 && (v as usize) < n => raw.push(Some(v as usize)),
            v => {
                return Err(Error::ParentTextSyntax {
                    reason: format!("parent {v} out of range for {n} nodes"),
                })
            }
        }
    }
    if let Some(extra) = tokens.next() {
        return Err(Error::ParentTextSyntax {
            reason: format!("unexpected trailing token {extra:?}"),
        });
    }
    Tree::from_parents(&raw)
}

/// Inverse of [`parse_parent_text`] on canonical trees.
pub fn emit_parent_text(tree: &Tree) -> String {
    let mut out = format!("{}\n", tree.n());
    for i in 0..tree.n() {
        if i > 0 {
            out.push(' ');
        }
        match tree.parent(i) {
            None => out.push_str("-1"),
            Some(p) => out.push_str(&p.to_string()),
        }
    }
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(raw: &[i64]) -> Tree {
        let raw: Vec<Option<usize>> = raw
            .iter()
            .map(|&v| if v < 0 { None } else { Some(v as usize) })
            .collect();
        Tree::from_parents(&raw).unwrap()
    }

    // Test-only oracle: unordered rooted-tree isomorphism by trying every
    // pairing of child subtrees. Exponential, fine at unit-test sizes.
    fn isomorphic(a: &Tree, ra: usize, b: &Tree, rb: usize) -> bool {
        let ca = a.children(ra);
        let cb = b.children(rb);
        if ca.len() != cb.len() {
            return false;
        }
        if ca.is_empty() {
            return true;
        }
        let mut used = vec![false; cb.len()];
        fn assign(a: &Tree, ca: &[u32], b: &Tree, cb: &[u32], used: &mut [bool], i: usize) -> bool {
            if i == ca.len() {
                return true;
            }
            for j in 0..cb.len() {
                if !used[j] && isomorphic(a, ca[i] as usize, b, cb[j] as usize) {
                    used[j] = true;
                    if assign(a, ca, b, cb, used, i + 1) {
                        return true;
                    }
                    used[j] = false;
                }
            }
            false
        }
        assign(a, ca, b, cb, &mut used, 0)
    }

    #[test]
    fn single_node_identity() {
        let t = tree(&[-1]);
        assert_eq!(t.n(), 1);
        assert_eq!(t, Tree::single());
    }

    #[test]
    fn sibling_order_is_normalized() {
        // root with children (leaf, chain-of-2) vs (chain-of-2, leaf)
        let a = tree(&[-1, 0, 0, 2]);
        let b = tree(&[-1, 0, 1, 0]);
        assert_eq!(a, b);
        assert!(isomorphic(&a, 0, &b, 0));
        // canonical order puts the longer subtree first
        assert_eq!(a.level_sequence(), vec![0, 1, 2, 1]);
    }

    #[test]
    fn star_any_input_order() {
        let a = tree(&[-1, 0, 0, 0]);
        let b = tree(&[1, -1, 1, 1]);
        assert_eq!(a, b);
        assert_eq!(a.level_sequence(), vec![0, 1, 1, 1]);
    }

    #[test]
    fn stats_examples() {
        assert_eq!(
            tree(&[-1, 0, 1]).stats(),
            TreeStats { n: 3, leaves: 1, depth: 2 }
        );
        assert_eq!(
            tree(&[-1, 0, 0]).stats(),
            TreeStats { n: 3, leaves: 2, depth: 1 }
        );
        assert_eq!(
            tree(&[-1]).stats(),
            TreeStats { n: 1, leaves: 1, depth: 0 }
        );
    }

    #[test]
    fn rejects_bad_parent_arrays() {
        assert_eq!(Tree::from_parents(&[]), Err(Error::EmptyTree));
        assert_eq!(
            Tree::from_parents(&[None, None]),
            Err(Error::MultipleRoots)
        );
        assert_eq!(
            Tree::from_parents(&[Some(1), Some(0)]),
            Err(Error::MultipleRoots)
        );
        assert!(matches!(
            Tree::from_parents(&[None, Some(7)]),
            Err(Error::ParentOutOfRange { node: 1, parent: 7, n: 2 })
        ));
        // root plus a 2-cycle off to the side
        assert!(matches!(
            Tree::from_parents(&[None, Some(2), Some(1)]),
            Err(Error::CycleDetected { .. })
        ));
    }

    #[test]
    fn parent_text_round_trip() {
        let t = tree(&[-1, 0, 1, 0]);
        let text = emit_parent_text(&t);
        assert_eq!(text, "4\n-1 0 1 0\n");
        assert_eq!(parse_parent_text(&text).unwrap(), t);
        assert!(parse_parent_text("3\n-1 0").is_err());
        assert!(parse_parent_text("2\n-1 0 extra").is_err());
        assert!(parse_parent_text("0\n").is_err());
    }

    #[test]
    fn canonical_parent_indices_increase() {
        let t = tree(&[3, 3, 1, -1, 1, 0]);
        for i in 1..t.n() {
            assert!(t.parent(i).unwrap() < i);
        }
    }
}
