//! Structural properties of the codes beyond the acceptance sizes:
//! exhaustive injectivity and round trips up to the enumeration limit,
//! ternary trace facts, and randomized checks at packet scale.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use treecodec::bits::BitString;
use treecodec::codec::{
    decode_td, encode_pc, encode_td, encode_tree_explorer, pc_trace, td_trace, PcSymbol, TdSymbol,
};
use treecodec::enumerate::enumerate_trees;
use treecodec::routing::{
    decode_packet, encode_packet, table_from_paths, tree_to_table, DecodedPacket, LabeledTree,
};
use treecodec::sample::UniformSampler;

#[test]
fn codes_are_injective_up_to_the_enumeration_limit() {
    for n in 1..=16usize {
        let mut pc: HashMap<String, usize> = HashMap::new();
        let mut td: HashMap<String, usize> = HashMap::new();
        let mut te: HashMap<String, usize> = HashMap::new();
        for (i, tree) in enumerate_trees(n).unwrap().enumerate() {
            assert!(pc.insert(encode_pc(&tree).to_string(), i).is_none(), "pc collision n={n}");
            assert!(td.insert(encode_td(&tree).to_string(), i).is_none(), "td collision n={n}");
            assert!(
                te.insert(encode_tree_explorer(&tree).to_string(), i).is_none(),
                "te collision n={n}"
            );
        }
    }
}

#[test]
fn tunnel_digging_round_trips_up_to_the_enumeration_limit() {
    // the deterministic parse makes this hold for every n; spot the range
    // that enumeration reaches
    for n in 1..=16usize {
        for tree in enumerate_trees(n).unwrap() {
            assert_eq!(decode_td(&encode_td(&tree), n).unwrap(), tree);
        }
    }
}

#[test]
fn ternary_trace_counts() {
    for n in 1..=12usize {
        for tree in enumerate_trees(n).unwrap() {
            let stats = tree.stats();
            let pc = pc_trace(&tree);
            let falls = pc.iter().filter(|&&s| s == PcSymbol::Fall).count();
            let seen = pc.iter().filter(|&&s| s == PcSymbol::ClimbSeen).count();
            let climbs = pc.len() - falls;
            assert_eq!(falls, stats.leaves - 1, "falls hit every leaf but the first");
            assert_eq!(seen, stats.leaves - 1, "every fall is climbed back once");
            assert_eq!(climbs, stats.n - 1, "every edge is climbed once");
            assert!(
                !pc.windows(2).any(|w| w == [PcSymbol::Fall, PcSymbol::Fall]),
                "no two consecutive falls"
            );

            let td = td_trace(&tree);
            assert!(
                !td.windows(2).any(|w| w == [TdSymbol::Tunnel, TdSymbol::Tunnel]),
                "no two consecutive tunnels"
            );
            let leaves = td.iter().filter(|&&s| s == TdSymbol::Leaf).count();
            let tunnels = td.iter().filter(|&&s| s == TdSymbol::Tunnel).count();
            if n >= 2 {
                assert_eq!(leaves, stats.leaves);
                assert_eq!(tunnels, stats.n - stats.leaves - 1);
            }
        }
    }
}

#[test]
fn table_round_trip_on_random_labeled_trees() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7461626c65);
    let mut sampler = UniformSampler::new();
    for i in 0..1000 {
        let n = 1 + (i * 499) / 999;
        let tree = sampler.sample(n, &mut rng).unwrap();
        let mut labels: Vec<u32> = (0..n as u32).collect();
        labels.shuffle(&mut rng);
        let lt = LabeledTree::new(tree, labels).unwrap();
        let table = tree_to_table(&lt);
        let back = table_from_paths(&table).unwrap();
        // identical twin subtrees may swap positions, which relabels the
        // tree onto itself; the route table is the invariant form
        assert_eq!(back.tree(), lt.tree(), "n={n}");
        assert_eq!(tree_to_table(&back), table, "n={n}");
    }
}

#[test]
fn structure_only_packets_save_exactly_the_label_block() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x736176);
    let mut sampler = UniformSampler::new();
    for n in [2usize, 3, 17, 80, 300] {
        let tree = sampler.sample(n, &mut rng).unwrap();
        let labels: Vec<u32> = (0..n as u32).collect();
        let lt = LabeledTree::new(tree, labels).unwrap();
        let labeled = encode_packet(&lt, true);
        let bare = encode_packet(&lt, false);
        let width = (usize::BITS - (n - 1).leading_zeros()).max(1) as usize;
        // compare pre-padding bit counts via the parsed sizes
        let labeled_bits = match decode_packet(&labeled).unwrap() {
            DecodedPacket::Labeled(_) => (labeled.len() - 3) * 8,
            _ => unreachable!(),
        };
        let bare_bits = (bare.len() - 3) * 8;
        let saved = labeled_bits as i64 - bare_bits as i64;
        let exact = (n * width) as i64;
        assert!((saved - exact).abs() < 8, "n={n}: saved {saved} vs {exact}");
    }
}

#[test]
fn large_packets_round_trip_both_ways() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6269675f70616b);
    let mut sampler = UniformSampler::new();
    for n in [500usize, 501, 777, 1000] {
        let tree = sampler.sample(n, &mut rng).unwrap();
        let mut labels: Vec<u32> = (0..n as u32).collect();
        labels.shuffle(&mut rng);
        let lt = LabeledTree::new(tree, labels).unwrap();
        match decode_packet(&encode_packet(&lt, true)).unwrap() {
            DecodedPacket::Labeled(back) => assert_eq!(back, lt, "n={n}"),
            other => panic!("expected labels, got {other:?}"),
        }
        match decode_packet(&encode_packet(&lt, false)).unwrap() {
            DecodedPacket::Structure(back) => assert_eq!(&back, lt.tree(), "n={n}"),
            other => panic!("expected structure, got {other:?}"),
        }
    }
}

#[test]
fn decoders_never_panic_on_bit_flips() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x666c6970);
    let mut sampler = UniformSampler::new();
    for n in [5usize, 12, 40] {
        let tree = sampler.sample(n, &mut rng).unwrap();
        let mut labels: Vec<u32> = (0..n as u32).collect();
        labels.shuffle(&mut rng);
        let lt = LabeledTree::new(tree.clone(), labels).unwrap();
        let packet = encode_packet(&lt, true);
        for byte in 0..packet.len() {
            for bit in 0..8 {
                let mut corrupt = packet.clone();
                corrupt[byte] ^= 1 << bit;
                let _ = decode_packet(&corrupt); // any Result is fine
            }
        }
        let code = encode_tree_explorer(&tree);
        for i in 0..code.len() {
            let flipped: BitString = (0..code.len()).map(|j| code.bit(j) ^ (i == j)).collect();
            let _ = treecodec::codec::decode_tree_explorer(&flipped, n);
        }
    }
}
