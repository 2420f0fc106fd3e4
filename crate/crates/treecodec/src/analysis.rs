//! Entropy baselines, competitor cost models, and the benchmark harness.

use std::io::{self, Write};

use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::codec::{code_lengths, encode_tree_explorer};
use crate::count::{ceil_log2, TreeCounts};
use crate::enumerate::enumerate_trees;
use crate::error::{Error, Result};
use crate::newick::newick_bit_length;
use crate::sample::UniformSampler;
use crate::tree::Tree;

/// Entropy of the uniform source over rooted trees with `n` nodes, both the
/// exact value `log2 a(n)` and the closed asymptotic form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntropyReport {
    pub n: usize,
    pub exact_bits: f64,
    pub asymptotic_bits: f64,
}

/// `log2 a(n)`: the exact entropy in bits of the uniform rooted-tree source.
pub fn uniform_entropy_exact(n: usize) -> Result<f64> {
    TreeCounts::new().log2_count(n)
}

// Rounded base-2 logarithms of the growth constant and amplitude of the
// asymptotic count c * d^n * n^(-3/2); kept at the published four-decimal
// precision on purpose.
const LOG2_GROWTH: f64 = 1.5635;
const LOG2_AMPLITUDE: f64 = -1.1846;

/// Asymptotic uniform entropy `1.5635*n - 1.5*log2(n) - 1.1846` bits.
pub fn uniform_entropy_asymptotic(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroNodeCount);
    }
    Ok(LOG2_GROWTH * n as f64 - 1.5 * (n as f64).log2() + LOG2_AMPLITUDE)
}

pub fn entropy_report(n: usize) -> Result<EntropyReport> {
    Ok(EntropyReport {
        n,
        exact_bits: uniform_entropy_exact(n)?,
        asymptotic_bits: uniform_entropy_asymptotic(n)?,
    })
}

/// Bits the adjacency-list representation spends on a tree with `n` nodes:
/// `2n * ceil(log2 n)`.
pub fn adjacency_list_bits(n: usize) -> u64 {
    2 * n as u64 * ceil_log2(n) as u64
}

/// TreeExplorer cost for a labeled tree: the structure code plus
/// `n * ceil(log2 n)` bits listing the labels in traversal order.
pub fn labeled_te_bits(tree: &Tree) -> u64 {
    encode_tree_explorer(tree).len() as u64 + tree.n() as u64 * ceil_log2(tree.n()) as u64
}

/// One benchmark line: average code costs over a pool of trees of size `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchmarkRow {
    pub n: usize,
    pub sample_count: u64,
    pub avg_te_bits: f64,
    pub avg_pc_bits: f64,
    pub avg_td_bits: f64,
    pub exact_entropy_bits: f64,
    pub asymptotic_entropy_bits: f64,
    pub adjacency_bits: u64,
    pub avg_newick_bits: f64,
    pub avg_labeled_te_bits: f64,
    /// First difference of `avg_te_bits` against the previous row; absent
    /// on the first row.
    pub te_rate_of_change: Option<f64>,
}

/// Node counts small enough to average over every tree instead of sampling.
const EXHAUSTIVE_LIMIT: u64 = 10_000;

/// Largest node count the benchmark accepts.
pub const BENCHMARK_MAX_N: usize = 200;

/// Runs the cost comparison for every `n` in `n_min..=n_max`.
///
/// Per `n`, the pool is either every tree of that size (when `a(n)` is at
/// most 10000, removing sampling noise) or `samples_per_n` uniform draws
/// from an RNG seeded by `(master_seed, n)` only, so rows do not depend on
/// evaluation order and repeated runs are bit-identical.
pub fn run_benchmark(
    n_min: usize,
    n_max: usize,
    samples_per_n: u64,
    master_seed: u64,
) -> Result<Vec<BenchmarkRow>> {
    if n_min < 1 || n_min > n_max || n_max > BENCHMARK_MAX_N {
        return Err(Error::InvalidBenchmarkRange { reason: "need 1 <= n_min <= n_max <= 200" });
    }
    if samples_per_n == 0 {
        return Err(Error::InvalidBenchmarkRange { reason: "need at least one sample per n" });
    }
    let mut counts = TreeCounts::new();
    let mut sampler = UniformSampler::new();
    let mut rows: Vec<BenchmarkRow> = Vec::with_capacity(n_max - n_min + 1);
    for n in n_min..=n_max {
        let exhaustive = counts.count(n)?.to_u64().filter(|&a| a <= EXHAUSTIVE_LIMIT);
        let mut pool = Averages::default();
        match exhaustive {
            Some(_) => {
                for tree in enumerate_trees(n)? {
                    pool.add(&tree);
                }
            }
            None => {
                let mut rng = bench_rng(master_seed, n);
                for _ in 0..samples_per_n {
                    pool.add(&sampler.sample(n, &mut rng)?);
                }
            }
        }
        let avg_te_bits = pool.te / pool.count as f64;
        let te_rate_of_change = rows.last().map(|prev: &BenchmarkRow| avg_te_bits - prev.avg_te_bits);
        rows.push(BenchmarkRow {
            n,
            sample_count: pool.count,
            avg_te_bits,
            avg_pc_bits: pool.pc / pool.count as f64,
            avg_td_bits: pool.td / pool.count as f64,
            exact_entropy_bits: counts.log2_count(n)?,
            asymptotic_entropy_bits: uniform_entropy_asymptotic(n)?,
            adjacency_bits: adjacency_list_bits(n),
            avg_newick_bits: pool.newick / pool.count as f64,
            avg_labeled_te_bits: pool.labeled_te / pool.count as f64,
            te_rate_of_change,
        });
    }
    Ok(rows)
}

#[derive(Default)]
struct Averages {
    count: u64,
    pc: f64,
    td: f64,
    te: f64,
    newick: f64,
    labeled_te: f64,
}

impl Averages {
    fn add(&mut self, tree: &Tree) {
        let stats = tree.stats();
        let lengths = code_lengths(&stats);
        self.count += 1;
        self.pc += lengths.pc as f64;
        self.td += lengths.td as f64;
        self.te += lengths.te as f64;
        self.newick += newick_bit_length(&stats) as f64;
        self.labeled_te += (lengths.te + stats.n as u64 * ceil_log2(stats.n) as u64) as f64;
    }
}

/// Deterministic per-`n` RNG stream for the benchmark.
fn bench_rng(master_seed: u64, n: usize) -> ChaCha8Rng {
    let mut seed = [0u8; 32];
    seed[..8].copy_from_slice(&master_seed.to_le_bytes());
    seed[8..16].copy_from_slice(&(n as u64).to_le_bytes());
    ChaCha8Rng::from_seed(seed)
}

/// Writes rows as CSV: header plus one line per row, floating point columns
/// with four decimals, the rate column empty where undefined.
pub fn write_benchmark_csv<W: Write>(rows: &[BenchmarkRow], mut out: W) -> io::Result<()> {
    writeln!(
        out,
        "n,sample_count,avg_te_bits,avg_pc_bits,avg_td_bits,exact_entropy_bits,\
         asymptotic_entropy_bits,adjacency_bits,avg_newick_bits,avg_labeled_te_bits,\
         te_rate_of_change"
    )?;
    for row in rows {
        let rate = row
            .te_rate_of_change
            .map(|r| format!("{r:.4}"))
            .unwrap_or_default();
        writeln!(
            out,
            "{},{},{:.4},{:.4},{:.4},{:.4},{:.4},{},{:.4},{:.4},{}",
            row.n,
            row.sample_count,
            row.avg_te_bits,
            row.avg_pc_bits,
            row.avg_td_bits,
            row.exact_entropy_bits,
            row.asymptotic_entropy_bits,
            row.adjacency_bits,
            row.avg_newick_bits,
            row.avg_labeled_te_bits,
            rate,
        )?;
    }
    Ok(())
}
