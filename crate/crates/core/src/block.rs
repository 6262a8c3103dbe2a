//! Blocks of barriers: tuples `s₁ < … < s_k` with `s_i ∈ 𝓑_i`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::barrier::{common_ground, members_from, BarrierDescriptor};
use crate::error::{invalid, Error, Result};
use crate::sets::FiniteSet;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<FiniteSet>", into = "Vec<FiniteSet>")]
pub struct Block(Vec<FiniteSet>);

impl Block {
    pub fn new(parts: Vec<FiniteSet>) -> Result<Self> {
        if parts.is_empty() {
            return invalid("a block needs at least one part");
        }
        if parts.iter().any(FiniteSet::is_empty) {
            return invalid("block parts must be nonempty");
        }
        if let Some(w) = parts.windows(2).find(|w| !w[0].is_below(&w[1])) {
            return invalid(format!("block parts {} and {} are not increasing", w[0], w[1]));
        }
        Ok(Block(parts))
    }

    pub fn parts(&self) -> &[FiniteSet] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first_min(&self) -> u32 {
        self.0[0].min().expect("nonempty part")
    }

    pub fn first_max(&self) -> u32 {
        self.0[0].max().expect("nonempty part")
    }

    pub fn last_max(&self) -> u32 {
        self.0[self.0.len() - 1].max().expect("nonempty part")
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.0.iter().map(FiniteSet::len).collect()
    }

    pub fn is_inside(&self, m: &FiniteSet) -> bool {
        self.0.iter().all(|p| p.is_subset(m))
    }

    pub fn to_concat(&self) -> FiniteSet {
        FiniteSet::from_sorted_unchecked(self.0.iter().flat_map(|p| p.iter()).collect())
    }
}

impl TryFrom<Vec<FiniteSet>> for Block {
    type Error = Error;
    fn try_from(v: Vec<FiniteSet>) -> Result<Self> {
        Block::new(v)
    }
}

impl From<Block> for Vec<FiniteSet> {
    fn from(b: Block) -> Self {
        b.0
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `Bl(𝓑₁,…,𝓑_k)` for barriers on a common ground set.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<BarrierDescriptor>", into = "Vec<BarrierDescriptor>")]
pub struct BlockFamily(Vec<BarrierDescriptor>);

impl BlockFamily {
    pub fn new(barriers: Vec<BarrierDescriptor>) -> Result<Self> {
        if barriers.is_empty() {
            return invalid("a block family needs at least one barrier");
        }
        common_ground(&barriers)?;
        Ok(BlockFamily(barriers))
    }

    /// `Bl([ℕ]^{k₁}, …, [ℕ]^{k_m})`.
    pub fn cubes(ks: &[u32]) -> Result<Self> {
        BlockFamily::new(ks.iter().map(|&k| BarrierDescriptor::cube(k)).collect::<Result<_>>()?)
    }

    pub fn barriers(&self) -> &[BarrierDescriptor] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, block: &Block) -> bool {
        block.len() == self.0.len()
            && self.0.iter().zip(block.parts()).all(|(b, p)| b.contains_unchecked(p.as_slice()))
    }

    /// `𝓑₁ ⊕ … ⊕ 𝓑_k`, the image of the family under concatenation.
    pub fn sum(&self) -> BarrierDescriptor {
        BarrierDescriptor::Sum(self.0.clone())
    }

    /// The family with every barrier restricted to `m`.
    pub fn restrict(&self, m: &crate::sets::SetGenerator) -> Result<Self> {
        BlockFamily::new(
            self.0.iter().map(|b| BarrierDescriptor::restrict(b.clone(), m.clone())).collect::<Result<_>>()?,
        )
    }
}

impl TryFrom<Vec<BarrierDescriptor>> for BlockFamily {
    type Error = Error;
    fn try_from(v: Vec<BarrierDescriptor>) -> Result<Self> {
        BlockFamily::new(v)
    }
}

impl From<BlockFamily> for Vec<BarrierDescriptor> {
    fn from(f: BlockFamily) -> Self {
        f.0
    }
}

impl fmt::Debug for BlockFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bl{:?}", self.0)
    }
}

/// The order blocks are listed in: by `max(s₁)` (a linear extension of the
/// directed order), then lexicographically on concatenations.
pub fn enumeration_order(a: &Block, b: &Block) -> Ordering {
    a.first_max().cmp(&b.first_max()).then_with(|| a.to_concat().lex_cmp(&b.to_concat()))
}

/// Every block of `fam` with all elements at most `n` and, if given, inside
/// `within`.
pub fn enumerate_blocks(fam: &BlockFamily, n: u32, within: Option<&FiniteSet>) -> Vec<Block> {
    let candidates: Vec<u32> = fam.0[0]
        .ground()
        .up_to(n)
        .iter()
        .filter(|&x| within.is_none_or(|w| w.contains(x)))
        .collect();
    let mut out = Vec::new();
    extend_blocks(&fam.0, &candidates, 0, &mut Vec::new(), &mut out);
    out.sort_by(enumeration_order);
    out
}

fn extend_blocks(
    barriers: &[BarrierDescriptor],
    cand: &[u32],
    from: usize,
    parts: &mut Vec<FiniteSet>,
    out: &mut Vec<Block>,
) {
    let Some((first, rest)) = barriers.split_first() else {
        out.push(Block(parts.clone()));
        return;
    };
    let reserve: usize = rest.iter().map(BarrierDescriptor::min_member_len).sum();
    let Some(end) = cand.len().checked_sub(reserve) else { return };
    for s in members_from(first, &cand[..end], from) {
        let next = cand.partition_point(|&x| x <= s.max().expect("nonempty member"));
        parts.push(s);
        extend_blocks(rest, cand, next, parts, out);
        parts.pop();
    }
}

/// Decomposes `s` as `s₁⌢…⌢s_k` by taking, for each barrier in turn, the
/// shortest initial segment of the remainder that belongs to it.
pub fn from_concat(fam: &BlockFamily, s: &FiniteSet) -> Result<Block> {
    if s.is_empty() {
        return invalid("cannot decompose the empty set");
    }
    let elems = s.as_slice();
    let mut parts = Vec::with_capacity(fam.len());
    let mut start = 0;
    for (i, b) in fam.0.iter().enumerate() {
        let rest = &elems[start..];
        let Some(len) = (1..=rest.len()).find(|&l| b.contains_unchecked(&rest[..l])) else {
            let rest = FiniteSet::from_sorted_unchecked(rest.to_vec());
            return Err(Error::NotInSum {
                set: s.clone(),
                reason: format!("no initial segment of {rest} lies in part {}", i + 1),
            });
        };
        parts.push(FiniteSet::from_sorted_unchecked(rest[..len].to_vec()));
        start += len;
    }
    if start < elems.len() {
        let rest = FiniteSet::from_sorted_unchecked(elems[start..].to_vec());
        return Err(Error::NotInSum { set: s.clone(), reason: format!("{rest} is left over") });
    }
    Ok(Block(parts))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockOrdering {
    Less,
    Equal,
    Greater,
    Incomparable,
}

/// `S < T` iff `max(s₁) < min(t₁)`.
pub fn block_compare(s: &Block, t: &Block) -> Result<BlockOrdering> {
    if s.len() != t.len() {
        return invalid(format!("blocks of length {} and {} are not comparable", s.len(), t.len()));
    }
    Ok(if s.to_concat() == t.to_concat() {
        BlockOrdering::Equal
    } else if s.first_max() < t.first_min() {
        BlockOrdering::Less
    } else if t.first_max() < s.first_min() {
        BlockOrdering::Greater
    } else {
        BlockOrdering::Incomparable
    })
}

/// The first block of `fam` inside `{1..n}` lying above every block in
/// `blocks` in the directed order.
pub fn block_above(fam: &BlockFamily, blocks: &[Block], n: u32) -> Option<Block> {
    let bound = blocks.iter().map(Block::first_max).max().unwrap_or(0);
    let within = FiniteSet::interval(bound + 1, n);
    enumerate_blocks(fam, n, Some(&within)).into_iter().next()
}
