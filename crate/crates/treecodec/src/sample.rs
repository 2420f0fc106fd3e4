//! Exactly uniform random generation of rooted trees.

use num_bigint::{BigUint, RandBigInt};
use num_traits::Zero;
use rand::Rng;

use crate::count::TreeCounts;
use crate::error::{Error, Result};
use crate::tree::{Tree, MAX_NODES};

/// Uniform sampler over all rooted trees with a given node count, driven by
/// exact counts so that every tree has probability exactly `1/a(n)`.
///
/// The classical recursive decomposition is used: for `n > 2`, pick a pair
/// `(j, d)` with probability `d * a(d) * a(n - j*d) / ((n-1) * a(n))`, build
/// a uniform tree with `n - j*d` nodes, and attach `j` copies of one
/// uniform tree with `d` nodes to its root.
///
/// Counts and per-size selection tables are cached, so a long-lived sampler
/// amortizes the big-integer work across draws.
pub struct UniformSampler {
    counts: TreeCounts,
    tables: Vec<Option<SizeTable>>,
}

/// Cumulative selection weights for one subtree size.
struct SizeTable {
    total: BigUint,
    cum: Vec<BigUint>,
    pairs: Vec<(usize, usize)>, // (copies, size)
}

// Sizes above this threshold recompute weights per draw instead of caching
// the cumulative table (the tables grow quadratically in memory).
const TABLE_LIMIT: usize = 1024;

impl UniformSampler {
    pub fn new() -> Self {
        UniformSampler { counts: TreeCounts::new(), tables: Vec::new() }
    }

    /// Draws one tree, exactly uniform over all rooted trees with `n` nodes.
    pub fn sample<R: Rng + ?Sized>(&mut self, n: usize, rng: &mut R) -> Result<Tree> {
        if n == 0 {
            return Err(Error::ZeroNodeCount);
        }
        if n > MAX_NODES {
            return Err(Error::TooManyNodes { n });
        }
        self.counts.count(n)?;
        let parents = self.build(n, rng);
        let raw: Vec<Option<usize>> = parents
            .iter()
            .enumerate()
            .map(|(i, &p)| if i == 0 { None } else { Some(p as usize) })
            .collect();
        Tree::from_parents(&raw)
    }

    /// Builds a raw parent array (root at 0). Single-copy attachments are
    /// handled iteratively through a job stack; multi-copy attachments
    /// recurse, and since `j >= 2` forces `d <= (m-1)/2` the recursion depth
    /// is logarithmic in `n`.
    fn build<R: Rng + ?Sized>(&mut self, n: usize, rng: &mut R) -> Vec<u32> {
        let mut parents = Vec::with_capacity(n);
        parents.push(0);
        let mut jobs: Vec<(u32, usize)> = vec![(0, n)];
        while let Some((root, size)) = jobs.pop() {
            let mut m = size;
            while m > 2 {
                let (copies, d) = self.pick(m, rng);
                m -= copies * d;
                if copies == 1 {
                    let c = parents.len() as u32;
                    parents.push(root);
                    jobs.push((c, d));
                } else {
                    let template = self.build(d, rng);
                    for _ in 0..copies {
                        let base = parents.len() as u32;
                        parents.push(root);
                        for &p in &template[1..] {
                            parents.push(base + p);
                        }
                    }
                }
            }
            if m == 2 {
                parents.push(root);
            }
        }
        parents
    }

    /// Selects `(copies, size)` for a tree of `m > 2` nodes.
    fn pick<R: Rng + ?Sized>(&mut self, m: usize, rng: &mut R) -> (usize, usize) {
        if m <= TABLE_LIMIT {
            if self.tables.len() <= m {
                self.tables.resize_with(m + 1, || None);
            }
            if self.tables[m].is_none() {
                self.tables[m] = Some(self.make_table(m));
            }
            let table = self.tables[m].as_ref().unwrap();
            let r = rng.gen_biguint_below(&table.total);
            let idx = table.cum.partition_point(|c| *c <= r);
            return table.pairs[idx];
        }
        let total = BigUint::from(m - 1) * self.counts.count(m).unwrap();
        let mut r = rng.gen_biguint_below(&total);
        for (weight, pair) in WeightIter::new(&mut self.counts, m) {
            if r < weight {
                return pair;
            }
            r -= weight;
        }
        unreachable!("selection weights sum to (m-1) * a(m)");
    }

    fn make_table(&mut self, m: usize) -> SizeTable {
        let mut cum = Vec::new();
        let mut pairs = Vec::new();
        let mut total = BigUint::zero();
        for (weight, pair) in WeightIter::new(&mut self.counts, m) {
            total += weight;
            cum.push(total.clone());
            pairs.push(pair);
        }
        debug_assert_eq!(total, BigUint::from(m - 1) * self.counts.count(m).unwrap());
        SizeTable { total, cum, pairs }
    }
}

impl Default for UniformSampler {
    fn default() -> Self {
        Self::new()
    }
}

/// Weights `d * a(d) * a(m - j*d)` over all `(j, d)` with `j*d <= m-1`.
struct WeightIter<'a> {
    counts: &'a mut TreeCounts,
    m: usize,
    d: usize,
    j: usize,
}

impl<'a> WeightIter<'a> {
    fn new(counts: &'a mut TreeCounts, m: usize) -> Self {
        counts.count(m).unwrap();
        WeightIter { counts, m, d: 1, j: 1 }
    }
}

impl Iterator for WeightIter<'_> {
    type Item = (BigUint, (usize, usize));

    fn next(&mut self) -> Option<Self::Item> {
        while self.d <= self.m - 1 {
            if self.j * self.d <= self.m - 1 {
                let (j, d) = (self.j, self.d);
                self.j += 1;
                let weight = BigUint::from(d)
                    * self.counts.count(d).unwrap().clone()
                    * self.counts.count(self.m - j * d).unwrap();
                return Some((weight, (j, d)));
            }
            self.d += 1;
            self.j = 1;
        }
        None
    }
}

/// Convenience wrapper drawing one uniform tree with a caller-owned RNG.
/// Loops should prefer a reusable [`UniformSampler`].
pub fn sample_uniform<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Tree> {
    UniformSampler::new().sample(n, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_trees;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashMap;

    #[test]
    fn n1_is_the_single_node() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(sample_uniform(1, &mut rng).unwrap(), Tree::single());
        assert!(sample_uniform(0, &mut rng).is_err());
    }

    #[test]
    fn n3_frequencies_are_balanced() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut sampler = UniformSampler::new();
        let mut freq: HashMap<Tree, u32> = HashMap::new();
        for _ in 0..10_000 {
            *freq.entry(sampler.sample(3, &mut rng).unwrap()).or_default() += 1;
        }
        assert_eq!(freq.len(), 2);
        for (_, count) in freq {
            // 5000 +- 3 sigma with sigma = 50
            assert!((4850..=5150).contains(&count), "count {count}");
        }
    }

    #[test]
    fn sampled_sizes_are_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut sampler = UniformSampler::new();
        for n in [1, 2, 5, 17, 60, 150] {
            for _ in 0..20 {
                assert_eq!(sampler.sample(n, &mut rng).unwrap().n(), n);
            }
        }
    }

    #[test]
    fn every_shape_reachable_at_n5() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut sampler = UniformSampler::new();
        let mut seen: HashMap<Tree, u32> = HashMap::new();
        for _ in 0..2000 {
            *seen.entry(sampler.sample(5, &mut rng).unwrap()).or_default() += 1;
        }
        let all: Vec<Tree> = enumerate_trees(5).unwrap().collect();
        assert_eq!(seen.len(), all.len());
        for t in all {
            assert!(seen[&t] > 0);
        }
    }
}
