//! Newick text form: nested parentheses and commas, ';' terminated.
//! Labels are optional nonnegative integers written after each node.

use crate::error::{Error, Result};
use crate::tree::{Tree, TreeStats, MAX_NODES};

/// Renders a tree as Newick text. A leaf is its label (or nothing), an
/// internal node is the parenthesized comma-separated list of its children
/// followed by its label. Canonical child order is preserved.
pub fn emit_newick(tree: &Tree, labels: Option<&[u32]>) -> Result<String> {
    if let Some(labels) = labels {
        if labels.len() != tree.n() {
            return Err(Error::LabelCountMismatch { expected: tree.n(), got: labels.len() });
        }
    }
    enum Step {
        Enter(usize),
        Close(usize),
        Comma,
    }
    let mut out = String::new();
    let mut stack = vec![Step::Enter(0)];
    while let Some(step) = stack.pop() {
        match step {
            Step::Enter(v) => {
                if tree.is_leaf(v) {
                    if let Some(labels) = labels {
                        out.push_str(&labels[v].to_string());
                    }
                } else {
                    out.push('(');
                    stack.push(Step::Close(v));
                    for (i, &c) in tree.children(v).iter().enumerate().rev() {
                        stack.push(Step::Enter(c as usize));
                        if i > 0 {
                            stack.push(Step::Comma);
                        }
                    }
                }
            }
            Step::Close(v) => {
                out.push(')');
                if let Some(labels) = labels {
                    out.push_str(&labels[v].to_string());
                }
            }
            Step::Comma => out.push(','),
        }
    }
    out.push(';');
    Ok(out)
}

/// Parses Newick text into a canonical tree and, when every node carries
/// one, the labels permuted into canonical node order. Mixing labeled and
/// unlabeled nodes is rejected.
pub fn parse_newick(text: &str) -> Result<(Tree, Option<Vec<u32>>)> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut parents: Vec<Option<usize>> = Vec::new();
    let mut labels: Vec<Option<u32>> = Vec::new();
    // Open internal nodes, innermost last.
    let mut open: Vec<usize> = Vec::new();

    let new_node = |parents: &mut Vec<Option<usize>>,
                    labels: &mut Vec<Option<u32>>,
                    parent: Option<usize>|
     -> Result<usize> {
        if parents.len() == MAX_NODES {
            return Err(Error::TooManyNodes { n: MAX_NODES + 1 });
        }
        parents.push(parent);
        labels.push(None);
        Ok(parents.len() - 1)
    };

    // Reads an optional integer label at `pos`.
    let read_label = |bytes: &[u8], pos: &mut usize| -> Result<Option<u32>> {
        let start = *pos;
        let mut value: u64 = 0;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            value = value * 10 + (bytes[*pos] - b'0') as u64;
            if value > u32::MAX as u64 {
                return Err(Error::LabelTooLarge { pos: start });
            }
            *pos += 1;
        }
        Ok((*pos > start).then_some(value as u32))
    };

    loop {
        // Expecting a node here.
        if pos < bytes.len() && bytes[pos] == b'(' {
            let v = new_node(&mut parents, &mut labels, open.last().copied())?;
            open.push(v);
            pos += 1;
            continue; // expect the first child
        }
        let v = new_node(&mut parents, &mut labels, open.last().copied())?;
        labels[v] = read_label(bytes, &mut pos)?;
        // One or more closings may follow a completed node.
        loop {
            match bytes.get(pos) {
                Some(b',') => {
                    if open.is_empty() {
                        return Err(Error::UnexpectedChar { pos, ch: ',' });
                    }
                    pos += 1;
                    break; // next sibling
                }
                Some(b')') => {
                    let closed = open.pop().ok_or(Error::UnbalancedParens { pos })?;
                    pos += 1;
                    labels[closed] = read_label(bytes, &mut pos)?;
                    continue;
                }
                Some(b';') => {
                    if !open.is_empty() {
                        return Err(Error::UnbalancedParens { pos });
                    }
                    pos += 1;
                    let rest = text[pos..].trim_end();
                    if !rest.is_empty() {
                        return Err(Error::TrailingGarbage { pos });
                    }
                    return finish(parents, labels);
                }
                Some(&ch) => {
                    return Err(Error::UnexpectedChar { pos, ch: char::from(ch) });
                }
                None => {
                    return Err(if open.is_empty() {
                        Error::MissingTerminator
                    } else {
                        Error::UnbalancedParens { pos }
                    });
                }
            }
        }
    }
}

fn finish(parents: Vec<Option<usize>>, labels: Vec<Option<u32>>) -> Result<(Tree, Option<Vec<u32>>)> {
    let labeled = labels.iter().filter(|l| l.is_some()).count();
    let (tree, order) = Tree::from_parents_with_order(&parents)?;
    match labeled {
        0 => Ok((tree, None)),
        k if k == labels.len() => {
            let mut out = vec![0u32; labels.len()];
            for (raw, label) in labels.into_iter().enumerate() {
                out[order[raw]] = label.unwrap();
            }
            Ok((tree, Some(out)))
        }
        _ => Err(Error::MixedLabels),
    }
}

/// Cost of the Newick text in bits: two bits per structural character over
/// the three-letter alphabet plus one terminator bit, `4n - 2l - 1` total.
pub fn newick_bit_length(stats: &TreeStats) -> u64 {
    4 * stats.n as u64 - 2 * stats.leaves as u64 - 1
}
