//! Command-line front end for the tree codes: encode/decode between text
//! tree formats and codewords, stats, sampling, enumeration, the benchmark
//! CSV, and the routing packet tools.

use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use treecodec::analysis::{adjacency_list_bits, run_benchmark, write_benchmark_csv};
use treecodec::bits::BitString;
use treecodec::codec::{
    code_lengths, decode_pc, decode_td, decode_tree_explorer, encode_pc, encode_td,
    encode_tree_explorer,
};
use treecodec::enumerate::enumerate_trees;
use treecodec::newick::{emit_newick, newick_bit_length, parse_newick};
use treecodec::routing::{
    decode_packet, emit_route_list, encode_packet, parse_route_list, table_from_paths,
    tree_to_table, DecodedPacket,
};
use treecodec::sample::UniformSampler;
use treecodec::tree::{emit_parent_text, parse_parent_text, Tree};

#[derive(Parser)]
#[command(
    name = "treecodec",
    about = "Succinct codes for rooted trees and routing-table packets",
    version,
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Method {
    Pc,
    Td,
    Te,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Newick,
    Parents,
}

#[derive(Args)]
struct InputArg {
    /// Read from this file instead of stdin
    #[arg(short, long)]
    input: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Encode trees (one per line/block) into codeword lines
    Encode {
        #[arg(short, long, value_enum)]
        method: Method,
        /// Input tree format
        #[arg(short, long, value_enum, default_value = "newick")]
        format: Format,
        #[command(flatten)]
        input: InputArg,
    },
    /// Decode codeword lines back into trees
    Decode {
        #[arg(short, long, value_enum)]
        method: Method,
        /// Node count of each encoded tree
        #[arg(short, long)]
        n: usize,
        /// Output tree format
        #[arg(short, long, value_enum, default_value = "newick")]
        format: Format,
        #[command(flatten)]
        input: InputArg,
    },
    /// Print size and cost figures for each input tree
    Stats {
        #[arg(short, long, value_enum, default_value = "newick")]
        format: Format,
        #[command(flatten)]
        input: InputArg,
    },
    /// Draw uniformly random trees
    Sample {
        #[arg(short, long)]
        n: usize,
        #[arg(short, long, default_value = "1")]
        count: u64,
        #[arg(short, long, default_value = "0")]
        seed: u64,
        #[arg(short, long, value_enum, default_value = "newick")]
        format: Format,
    },
    /// List every tree shape with the given node count
    Enumerate {
        #[arg(short, long)]
        n: usize,
        #[arg(short, long, value_enum, default_value = "newick")]
        format: Format,
    },
    /// Run the averaging benchmark and emit CSV
    Bench {
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        samples: u64,
        #[arg(long, default_value = "0")]
        seed: u64,
        /// Write the CSV here instead of stdout
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Pack a route-list file into a binary packet
    PacketEncode {
        #[arg(short, long)]
        input: String,
        #[arg(short, long)]
        output: String,
        /// Send the structure only, dropping the labels
        #[arg(long)]
        structure_only: bool,
    },
    /// Unpack a binary packet into a route list (or Newick if unlabeled)
    PacketDecode {
        #[arg(short, long)]
        input: String,
        /// Write here instead of stdout
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Translate between Newick and parent-array text
    Convert {
        /// Target format (the input is read as the other one)
        #[arg(long, value_enum)]
        to: Format,
        #[command(flatten)]
        input: InputArg,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap prints help/version through the error path too
            let _ = err.print();
            return match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

type AnyError = Box<dyn std::error::Error>;

fn run(command: Command) -> Result<(), AnyError> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match command {
        Command::Encode { method, format, input } => {
            for tree in read_trees(&read_input(&input)?, format)? {
                let bits = match method {
                    Method::Pc => encode_pc(&tree),
                    Method::Td => encode_td(&tree),
                    Method::Te => encode_tree_explorer(&tree),
                };
                writeln!(out, "{bits}")?;
            }
        }
        Command::Decode { method, n, format, input } => {
            let text = read_input(&input)?;
            for line in text.lines() {
                let line = line.trim();
                let bits: BitString = line.parse()?;
                if bits.is_empty() && line.is_empty() && n != 1 {
                    continue; // skip blank lines unless they mean the empty codeword
                }
                let tree = match method {
                    Method::Pc => decode_pc(&bits, n)?,
                    Method::Td => decode_td(&bits, n)?,
                    Method::Te => decode_tree_explorer(&bits, n)?,
                };
                write_tree(&mut out, &tree, format)?;
            }
        }
        Command::Stats { format, input } => {
            for tree in read_trees(&read_input(&input)?, format)? {
                let stats = tree.stats();
                let lengths = code_lengths(&stats);
                writeln!(
                    out,
                    "n={} leaves={} depth={} pc={} td={} te={} adjacency={} newick={}",
                    stats.n,
                    stats.leaves,
                    stats.depth,
                    lengths.pc,
                    lengths.td,
                    lengths.te,
                    adjacency_list_bits(stats.n),
                    newick_bit_length(&stats),
                )?;
            }
        }
        Command::Sample { n, count, seed, format } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut sampler = UniformSampler::new();
            for _ in 0..count {
                let tree = sampler.sample(n, &mut rng)?;
                write_tree(&mut out, &tree, format)?;
            }
        }
        Command::Enumerate { n, format } => {
            for tree in enumerate_trees(n)? {
                write_tree(&mut out, &tree, format)?;
            }
        }
        Command::Bench { n_min, n_max, samples, seed, output } => {
            let rows = run_benchmark(n_min, n_max, samples, seed)?;
            match output {
                Some(path) => write_benchmark_csv(&rows, fs::File::create(path)?)?,
                None => write_benchmark_csv(&rows, &mut out)?,
            }
        }
        Command::PacketEncode { input, output, structure_only } => {
            let table = parse_route_list(&fs::read_to_string(input)?)?;
            let lt = table_from_paths(&table)?;
            fs::write(output, encode_packet(&lt, !structure_only))?;
        }
        Command::PacketDecode { input, output } => {
            let text = match decode_packet(&fs::read(input)?)? {
                DecodedPacket::Labeled(lt) => emit_route_list(&tree_to_table(&lt)),
                DecodedPacket::Structure(tree) => emit_newick(&tree, None)?,
            };
            match output {
                Some(path) => fs::write(path, ensure_newline(text))?,
                None => write!(out, "{}", ensure_newline(text))?,
            }
        }
        Command::Convert { to, input } => {
            let text = read_input(&input)?;
            match to {
                Format::Parents => {
                    for tree in read_trees(&text, Format::Newick)? {
                        write_tree(&mut out, &tree, Format::Parents)?;
                    }
                }
                Format::Newick => {
                    for tree in read_trees(&text, Format::Parents)? {
                        write_tree(&mut out, &tree, Format::Newick)?;
                    }
                }
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn read_input(input: &InputArg) -> Result<String, AnyError> {
    match &input.input {
        Some(path) => Ok(fs::read_to_string(path)?),
        None => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text)?;
            Ok(text)
        }
    }
}

/// Reads a stream of trees: one Newick string per line, or a sequence of
/// parent-array blocks (count line followed by the entries).
fn read_trees(text: &str, format: Format) -> Result<Vec<Tree>, AnyError> {
    let mut trees = Vec::new();
    match format {
        Format::Newick => {
            for line in text.lines() {
                let line = line.trim();
                if line.is_empty() {
                    continue;
                }
                trees.push(parse_newick(line)?.0);
            }
        }
        Format::Parents => {
            let mut tokens = text.split_whitespace().peekable();
            while tokens.peek().is_some() {
                let header = tokens.next().unwrap();
                let n: usize = header
                    .parse()
                    .map_err(|_| format!("invalid node count {header:?}"))?;
                let mut block = header.to_string();
                for _ in 0..n {
                    let tok = tokens
                        .next()
                        .ok_or_else(|| format!("expected {n} parent entries"))?;
                    block.push(' ');
                    block.push_str(tok);
                }
                trees.push(parse_parent_text(&block)?);
            }
        }
    }
    Ok(trees)
}

fn write_tree(out: &mut impl Write, tree: &Tree, format: Format) -> Result<(), AnyError> {
    match format {
        Format::Newick => writeln!(out, "{}", emit_newick(tree, None)?)?,
        Format::Parents => write!(out, "{}", emit_parent_text(tree))?,
    }
    Ok(())
}

fn ensure_newline(mut text: String) -> String {
    if !text.ends_with('\n') {
        text.push('\n');
    }
    text
}
