//! Crate-wide error type.

use thiserror::Error;

use crate::codec::CodingMethod;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("tree must have at least one node")]
    EmptyTree,
    #[error("node count {n} exceeds the 16-bit packet limit of {max}", max = crate::tree::MAX_NODES)]
    TooManyNodes { n: usize },
    #[error("parent array has no root entry or more than one")]
    MultipleRoots,
    #[error("node {node}: parent index {parent} out of range for {n} nodes")]
    ParentOutOfRange { node: usize, parent: usize, n: usize },
    #[error("cycle detected: node {node} is not reachable from the root")]
    CycleDetected { node: usize },

    #[error("node count must be at least 1")]
    ZeroNodeCount,
    #[error("enumeration supports 1..={limit} nodes, got {n}", limit = crate::enumerate::ENUMERATION_LIMIT)]
    EnumerationRange { n: usize },

    #[error("invalid bit character at position {pos} (expected '0' or '1')")]
    InvalidBitChar { pos: usize },
    #[error("{method} codeword is malformed: {reason}")]
    MalformedCodeword { method: CodingMethod, reason: &'static str },
    #[error("empty codeword: at least the method bit is required")]
    EmptyCodeword,

    #[error("unbalanced parentheses at position {pos}")]
    UnbalancedParens { pos: usize },
    #[error("missing ';' terminator")]
    MissingTerminator,
    #[error("trailing garbage at position {pos}")]
    TrailingGarbage { pos: usize },
    #[error("unexpected character {ch:?} at position {pos}")]
    UnexpectedChar { pos: usize, ch: char },
    #[error("label at position {pos} does not fit in 32 bits")]
    LabelTooLarge { pos: usize },
    #[error("either all nodes or no nodes may carry labels")]
    MixedLabels,
    #[error("expected {expected} labels, got {got}")]
    LabelCountMismatch { expected: usize, got: usize },

    #[error("parent-array text: {reason}")]
    ParentTextSyntax { reason: String },

    #[error("label {label} out of range for {n} nodes")]
    LabelOutOfRange { label: u32, n: usize },
    #[error("duplicate label {label}")]
    DuplicateLabel { label: u32 },
    #[error("duplicate destination {dest}")]
    DuplicateDestination { dest: u32 },
    #[error("route to {dest} is invalid: {reason}")]
    InvalidRoute { dest: u32, reason: &'static str },
    #[error("conflicting parents for node {label} across routes")]
    InconsistentParent { label: u32 },
    #[error("route list line {line}: {reason}")]
    RouteListSyntax { line: usize, reason: String },

    #[error("packet too short for the fixed header")]
    TruncatedPacket,
    #[error("unsupported packet version byte {byte:#04x}")]
    BadVersion { byte: u8 },
    #[error("packet body ends before the encoded payload")]
    TruncatedBody,
    #[error("packet padding bits are not zero")]
    NonzeroPadding,

    #[error("benchmark range invalid: {reason}")]
    InvalidBenchmarkRange { reason: &'static str },
}
