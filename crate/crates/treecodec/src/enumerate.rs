//! Exhaustive enumeration of canonical rooted trees.

use crate::error::{Error, Result};
use crate::tree::Tree;

/// Enumeration is guarded to test-scale node counts.
pub const ENUMERATION_LIMIT: usize = 16;

/// Iterates every canonical rooted tree with `n` nodes exactly once, in
/// decreasing lexicographic order of level sequences (path first, star
/// last). Successor generation on level sequences: find the rightmost
/// entry of depth at least 2 and repeat the block that precedes it.
pub fn enumerate_trees(n: usize) -> Result<TreeEnumerator> {
    if n < 1 || n > ENUMERATION_LIMIT {
        return Err(Error::EnumerationRange { n });
    }
    Ok(TreeEnumerator {
        levels: (0..n as u32).collect(),
        done: false,
    })
}

pub struct TreeEnumerator {
    levels: Vec<u32>,
    done: bool,
}

impl Iterator for TreeEnumerator {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        if self.done {
            return None;
        }
        let tree = Tree::from_canonical_levels(&self.levels);
        self.done = !self.advance();
        Some(tree)
    }
}

impl TreeEnumerator {
    fn advance(&mut self) -> bool {
        let n = self.levels.len();
        let Some(p) = (0..n).rev().find(|&i| self.levels[i] >= 2) else {
            return false;
        };
        let q = (0..p).rev().find(|&i| self.levels[i] == self.levels[p] - 1).unwrap();
        for i in p..n {
            self.levels[i] = self.levels[i - (p - q)];
        }
        true
    }
}
