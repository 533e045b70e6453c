//! Transition graphs, Rauzy graphs, their cyclomatic complexity, and the
//! five-block decomposition of the base-10 doubling sequence.
//!
//! For a digit sequence the transition graph has the occurring digits as
//! vertices and the occurring consecutive pairs as directed edges; the level
//! `n` Rauzy graph generalizes this to length-`n` blocks joined when they
//! overlap in `n − 1` positions. On a converged prefix of an admissible pair
//! the cyclomatic number `C = e − n + p` of either graph equals the
//! complexity slope plus one.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::digits::{Digit, DigitSequencePrefix};
use crate::error::{Error, Result};

/// Digits and consecutive digit pairs of a sequence prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionGraph {
    vertices: BTreeSet<Digit>,
    edges: BTreeSet<(Digit, Digit)>,
}

/// Length-`n` blocks of a prefix, joined by the observed `(n+1)`-blocks.
///
/// Every edge `(u, v)` satisfies `u[1..] == v[..n−1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RauzyGraph {
    n: usize,
    vertices: BTreeSet<Vec<Digit>>,
    edges: BTreeSet<(Vec<Digit>, Vec<Digit>)>,
}

/// Edge count `e`, vertex count `n`, weakly connected component count `p`,
/// and the cyclomatic number `c = e − n + p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclomaticResult {
    pub e: u64,
    pub n: u64,
    pub p: u64,
    pub c: i64,
}

impl TransitionGraph {
    pub fn vertices(&self) -> impl Iterator<Item = Digit> + '_ {
        self.vertices.iter().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Digit, Digit)> + '_ {
        self.edges.iter().copied()
    }

    pub fn vertex_count(&self) -> u64 {
        self.vertices.len() as u64
    }

    pub fn edge_count(&self) -> u64 {
        self.edges.len() as u64
    }

    /// `C = e − n + p`, components counted without regard to direction.
    pub fn cyclomatic(&self) -> CyclomaticResult {
        cyclomatic_of(
            &self.vertices,
            self.edges.len(),
            self.edges.iter().map(|(u, v)| (u, v)),
        )
    }
}

impl RauzyGraph {
    /// The block length this graph was built at.
    pub fn level(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> impl Iterator<Item = &[Digit]> {
        self.vertices.iter().map(Vec::as_slice)
    }

    pub fn edges(&self) -> impl Iterator<Item = (&[Digit], &[Digit])> {
        self.edges.iter().map(|(u, v)| (u.as_slice(), v.as_slice()))
    }

    pub fn vertex_count(&self) -> u64 {
        self.vertices.len() as u64
    }

    pub fn edge_count(&self) -> u64 {
        self.edges.len() as u64
    }

    /// `C = e − n + p`, components counted without regard to direction.
    pub fn cyclomatic(&self) -> CyclomaticResult {
        cyclomatic_of(
            &self.vertices,
            self.edges.len(),
            self.edges.iter().map(|(u, v)| (u, v)),
        )
    }
}

/// The transition graph of a prefix of at least two digits.
pub fn build_transition_graph(prefix: &DigitSequencePrefix) -> Result<TransitionGraph> {
    let digits = prefix.digits();
    if digits.len() < 2 {
        return Err(Error::PrefixTooShort {
            needed: 2,
            got: digits.len(),
        });
    }
    let vertices: BTreeSet<Digit> = digits.iter().copied().collect();
    let edges: BTreeSet<(Digit, Digit)> = digits.windows(2).map(|w| (w[0], w[1])).collect();
    Ok(TransitionGraph { vertices, edges })
}

/// The level-`n` Rauzy graph of a prefix of at least `n + 1` digits.
pub fn build_rauzy(prefix: &DigitSequencePrefix, n: usize) -> Result<RauzyGraph> {
    assert!(n >= 1, "Rauzy level must be at least 1");
    let digits = prefix.digits();
    if digits.len() < n + 1 {
        return Err(Error::PrefixTooShort {
            needed: n + 1,
            got: digits.len(),
        });
    }
    let vertices: BTreeSet<Vec<Digit>> = digits.windows(n).map(<[Digit]>::to_vec).collect();
    let edges: BTreeSet<(Vec<Digit>, Vec<Digit>)> = digits
        .windows(n + 1)
        .map(|w| (w[..n].to_vec(), w[1..].to_vec()))
        .collect();
    Ok(RauzyGraph { n, vertices, edges })
}

/// Count weakly connected components with a union-find over the vertex set
/// and assemble `C = e − n + p`.
fn cyclomatic_of<'a, V: Ord + 'a>(
    vertices: &'a BTreeSet<V>,
    edge_count: usize,
    edges: impl Iterator<Item = (&'a V, &'a V)>,
) -> CyclomaticResult {
    let index: BTreeMap<&V, usize> = vertices.iter().zip(0..).collect();
    let mut parent: Vec<usize> = (0..index.len()).collect();

    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }

    for (u, v) in edges {
        let (ru, rv) = (find(&mut parent, index[u]), find(&mut parent, index[v]));
        if ru != rv {
            parent[ru] = rv;
        }
    }
    let components = (0..parent.len())
        .filter(|&x| find(&mut parent, x) == x)
        .count();

    let (e, n, p) = (edge_count as u64, vertices.len() as u64, components as u64);
    CyclomaticResult {
        e,
        n,
        p,
        c: e as i64 - n as i64 + p as i64,
    }
}

/// One of the five blocks that tile the base-10 doubling sequence when it
/// starts at exponent 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum IyengarBlock {
    B1248,
    B1249,
    B125,
    B136,
    B137,
}

impl IyengarBlock {
    pub fn digits(self) -> &'static [Digit] {
        match self {
            IyengarBlock::B1248 => &[1, 2, 4, 8],
            IyengarBlock::B1249 => &[1, 2, 4, 9],
            IyengarBlock::B125 => &[1, 2, 5],
            IyengarBlock::B136 => &[1, 3, 6],
            IyengarBlock::B137 => &[1, 3, 7],
        }
    }
}

impl core::fmt::Display for IyengarBlock {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for d in self.digits() {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// A complete tiling of a digit prefix by [`IyengarBlock`]s, possibly with a
/// proper prefix of one more block left over at the end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IyengarParse {
    pub blocks: Vec<IyengarBlock>,
    pub trailing: Vec<Digit>,
}

impl IyengarParse {
    /// How often each block occurs.
    pub fn usage(&self) -> BTreeMap<IyengarBlock, u64> {
        let mut counts = BTreeMap::new();
        for &b in &self.blocks {
            *counts.entry(b).or_insert(0) += 1;
        }
        counts
    }
}

/// Greedily decompose a prefix of the base-10 doubling sequence (taken from
/// exponent 0, so it begins `1, 2, 4, 8, …`) into the five blocks.
///
/// The block set is prefix-distinguishable — after `1,2` the next digit
/// selects `4`-or-`5`, after `1,2,4` it selects `8`-or-`9`, after `1,3` it
/// selects `6`-or-`7` — so the parse is deterministic and any sequence that
/// is not a block concatenation fails at a definite offset. A prefix of the
/// doubling sequence taken from the wrong starting exponent fails at offset
/// 0, since no block starts with anything but 1.
pub fn iyengar_parse(prefix: &DigitSequencePrefix) -> Result<IyengarParse> {
    parse_digits(prefix.digits())
}

fn parse_digits(digits: &[Digit]) -> Result<IyengarParse> {
    let mut blocks = Vec::new();
    let mut at = 0;
    while at < digits.len() {
        match take_block(digits, at) {
            Ok(Some(block)) => {
                blocks.push(block);
                at += block.digits().len();
            }
            Ok(None) => {
                return Ok(IyengarParse {
                    blocks,
                    trailing: digits[at..].to_vec(),
                })
            }
            Err(err) => return Err(err),
        }
    }
    Ok(IyengarParse {
        blocks,
        trailing: Vec::new(),
    })
}

/// Decode one block at `at`; `Ok(None)` means the input ended inside a
/// block (a legal trailing partial).
fn take_block(digits: &[Digit], at: usize) -> Result<Option<IyengarBlock>> {
    let next = |offset: usize| digits.get(at + offset).copied();
    let mismatch = |offset: usize| Error::ParseMismatch { offset: at + offset };
    if next(0) != Some(1) {
        return Err(mismatch(0));
    }
    match next(1) {
        None => Ok(None),
        Some(2) => match next(2) {
            None => Ok(None),
            Some(4) => match next(3) {
                None => Ok(None),
                Some(8) => Ok(Some(IyengarBlock::B1248)),
                Some(9) => Ok(Some(IyengarBlock::B1249)),
                Some(_) => Err(mismatch(3)),
            },
            Some(5) => Ok(Some(IyengarBlock::B125)),
            Some(_) => Err(mismatch(2)),
        },
        Some(3) => match next(2) {
            None => Ok(None),
            Some(6) => Ok(Some(IyengarBlock::B136)),
            Some(7) => Ok(Some(IyengarBlock::B137)),
            Some(_) => Err(mismatch(2)),
        },
        Some(_) => Err(mismatch(1)),
    }
}
