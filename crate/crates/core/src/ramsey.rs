//! Finite-scale monochromatic and metric stabilization searches.
//!
//! Colorings act on blocks; a coloring of a single barrier is a coloring of
//! its one-part blocks. The infinite Ramsey statements only promise infinite
//! witnesses, so a search inside a finite universe can legitimately come back
//! empty; that outcome is [`Search::NotFound`] together with the best partial
//! result.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::block::{enumerate_blocks, Block, BlockFamily};
use crate::error::{invalid, Error, Result};
use crate::ratio::{self, Rational};
use crate::sets::{FiniteSet, Subsets};

/// Outcome of a finite search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Search<T> {
    Found(T),
    NotFound { best: Option<T> },
}

impl<T> Search<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            Search::NotFound { .. } => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Search::Found(_))
    }
}

pub type ColorFn = Arc<dyn Fn(&Block) -> u32 + Send + Sync>;

#[derive(Clone)]
pub enum ColorRule {
    Constant(u32),
    /// 1 when the sum of all elements is even, 2 when odd.
    SumParity,
    /// 1 when the element occurs in the block, 2 otherwise.
    Contains(u32),
    Table(HashMap<Block, u32>),
    Custom(ColorFn),
}

#[derive(Clone)]
pub struct Coloring {
    pub q: u32,
    pub rule: ColorRule,
}

impl fmt::Debug for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rule = match &self.rule {
            ColorRule::Constant(c) => format!("constant {c}"),
            ColorRule::SumParity => "sum parity".into(),
            ColorRule::Contains(x) => format!("contains {x}"),
            ColorRule::Table(t) => format!("table of {}", t.len()),
            ColorRule::Custom(_) => "custom".into(),
        };
        write!(f, "Coloring {{ q: {}, rule: {rule} }}", self.q)
    }
}

impl Coloring {
    pub fn constant(c: u32) -> Self {
        Coloring { q: c.max(1), rule: ColorRule::Constant(c) }
    }

    pub fn sum_parity() -> Self {
        Coloring { q: 2, rule: ColorRule::SumParity }
    }

    pub fn contains(x: u32) -> Self {
        Coloring { q: 2, rule: ColorRule::Contains(x) }
    }

    pub fn custom(q: u32, f: impl Fn(&Block) -> u32 + Send + Sync + 'static) -> Self {
        Coloring { q, rule: ColorRule::Custom(Arc::new(f)) }
    }

    pub fn table(q: u32, entries: impl IntoIterator<Item = (Block, u32)>) -> Self {
        Coloring { q, rule: ColorRule::Table(entries.into_iter().collect()) }
    }

    /// The color of `b`, checked to lie in `1..=q`.
    pub fn color(&self, b: &Block) -> Result<u32> {
        let c = match &self.rule {
            ColorRule::Constant(c) => *c,
            ColorRule::SumParity => {
                let sum: u64 = b.parts().iter().flat_map(|p| p.iter()).map(u64::from).sum();
                if sum.is_multiple_of(2) {
                    1
                } else {
                    2
                }
            }
            ColorRule::Contains(x) => {
                if b.parts().iter().any(|p| p.contains(*x)) {
                    1
                } else {
                    2
                }
            }
            ColorRule::Table(t) => *t.get(b).ok_or_else(|| Error::NotTotal(format!("no color for {b}")))?,
            ColorRule::Custom(f) => f(b),
        };
        if c == 0 || c > self.q {
            return Err(Error::NotTotal(format!("color {c} of {b} is outside 1..={}", self.q)));
        }
        Ok(c)
    }

    pub fn label(&self, c: u32) -> String {
        match (&self.rule, c) {
            (ColorRule::SumParity, 1) => "even".into(),
            (ColorRule::SumParity, 2) => "odd".into(),
            (ColorRule::Contains(_), 1) => "yes".into(),
            (ColorRule::Contains(_), 2) => "no".into(),
            _ => c.to_string(),
        }
    }
}

/// JSON form of a coloring: either a bare table
/// `[{"object":[[1,2],[3,4]],"color":1}, …]` or a named rule.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ColoringSpec {
    Table(Vec<TableEntry>),
    Rule(RuleSpec),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableEntry {
    pub object: ObjectSpec,
    pub color: u32,
}

/// A block, or a bare set standing for a one-part block.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ObjectSpec {
    Block(Block),
    Set(FiniteSet),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case", deny_unknown_fields)]
pub enum RuleSpec {
    Constant { color: u32 },
    SumParity,
    Contains { element: u32 },
}

impl ColoringSpec {
    pub fn build(self) -> Result<Coloring> {
        Ok(match self {
            ColoringSpec::Rule(RuleSpec::Constant { color }) => {
                if color == 0 {
                    return invalid("colors start at 1");
                }
                Coloring::constant(color)
            }
            ColoringSpec::Rule(RuleSpec::SumParity) => Coloring::sum_parity(),
            ColoringSpec::Rule(RuleSpec::Contains { element }) => Coloring::contains(element),
            ColoringSpec::Table(entries) => {
                let q = entries.iter().map(|e| e.color).max().unwrap_or(1);
                let mut table = HashMap::new();
                for e in entries {
                    if e.color == 0 {
                        return invalid("colors start at 1");
                    }
                    let b = match e.object {
                        ObjectSpec::Block(b) => b,
                        ObjectSpec::Set(s) => Block::new(vec![s])?,
                    };
                    table.insert(b, e.color);
                }
                Coloring { q, rule: ColorRule::Table(table) }
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Every subset of the target size in lexicographic order; complete.
    Exhaustive,
    /// Scan the universe upward keeping each element that preserves the
    /// property.
    Greedy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonochromeWitness {
    pub subset: FiniteSet,
    /// `None` when no block lies inside the subset.
    pub color: Option<u32>,
    pub color_label: Option<String>,
    pub domain_size: usize,
}

/// Universe positions covered by each block, as bitmasks.
pub(crate) struct Indexed {
    pub(crate) universe: Vec<u32>,
    pub(crate) blocks: Vec<Block>,
    masks: Vec<u64>,
}

impl Indexed {
    pub(crate) fn new(fam: &BlockFamily, universe: &FiniteSet) -> Result<Self> {
        if universe.len() > 64 {
            return invalid("universes are limited to 64 elements");
        }
        let n = universe.max().unwrap_or(0);
        let blocks = enumerate_blocks(fam, n, Some(universe));
        let u = universe.as_slice().to_vec();
        let masks = blocks
            .iter()
            .map(|b| {
                b.parts()
                    .iter()
                    .flat_map(|p| p.iter())
                    .map(|x| 1u64 << u.binary_search(&x).expect("blocks lie inside the universe"))
                    .fold(0, |m, bit| m | bit)
            })
            .collect();
        Ok(Indexed { universe: u, blocks, masks })
    }

    pub(crate) fn subset(&self, mask: u64) -> FiniteSet {
        FiniteSet::from_sorted_unchecked(
            self.universe.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect(),
        )
    }

    pub(crate) fn inside(&self, mask: u64) -> impl Iterator<Item = usize> + '_ {
        self.masks.iter().enumerate().filter(move |(_, &m)| m & !mask == 0).map(|(i, _)| i)
    }
}

fn mask_of(idx: &[usize]) -> u64 {
    idx.iter().fold(0, |m, &i| m | 1 << i)
}

/// Scans subsets of `universe` of size exactly `target` in lexicographic
/// order, or greedily, for one accepted by `ok`; on failure retries smaller
/// sizes to report the best partial subset.
pub(crate) fn subset_search<T>(
    ix: &Indexed,
    target: usize,
    strategy: Strategy,
    mut ok: impl FnMut(u64) -> Option<T>,
) -> Search<T> {
    match strategy {
        Strategy::Exhaustive => {
            for size in (1..=target).rev() {
                for idx in Subsets::new(ix.universe.len(), size) {
                    if let Some(w) = ok(mask_of(&idx)) {
                        return if size == target { Search::Found(w) } else { Search::NotFound { best: Some(w) } };
                    }
                }
            }
            Search::NotFound { best: None }
        }
        Strategy::Greedy => {
            let mut mask = 0u64;
            let mut best = None;
            for i in 0..ix.universe.len() {
                if let Some(w) = ok(mask | 1 << i) {
                    mask |= 1 << i;
                    best = Some(w);
                }
            }
            if mask.count_ones() as usize >= target {
                Search::Found(best.expect("nonempty mask"))
            } else {
                Search::NotFound { best }
            }
        }
    }
}

/// A subset `M` of `universe` such that every block of `fam` inside `M` has
/// the same color.
pub fn find_monochromatic(
    fam: &BlockFamily,
    coloring: &Coloring,
    universe: &FiniteSet,
    target: usize,
    strategy: Strategy,
) -> Result<Search<MonochromeWitness>> {
    if target == 0 || target > universe.len() {
        return invalid(format!("target {target} must lie in 1..={}", universe.len()));
    }
    let ix = Indexed::new(fam, universe)?;
    let colors: Vec<u32> = ix.blocks.iter().map(|b| coloring.color(b)).collect::<Result<_>>()?;
    let search = subset_search(&ix, target, strategy, |mask| {
        let mut color = None;
        let mut count = 0;
        for i in ix.inside(mask) {
            count += 1;
            match color {
                None => color = Some(colors[i]),
                Some(c) if c != colors[i] => return None,
                _ => {}
            }
        }
        Some(MonochromeWitness {
            subset: ix.subset(mask),
            color,
            color_label: color.map(|c| coloring.label(c)),
            domain_size: count,
        })
    });
    if let Some(w) = witnesses(&search) {
        verify_monochromatic(fam, coloring, w)?;
    }
    Ok(search)
}

fn witnesses<T>(s: &Search<T>) -> Option<&T> {
    match s {
        Search::Found(w) | Search::NotFound { best: Some(w) } => Some(w),
        Search::NotFound { best: None } => None,
    }
}

/// Re-enumerates the blocks inside the witness and checks their colors.
pub fn verify_monochromatic(fam: &BlockFamily, coloring: &Coloring, w: &MonochromeWitness) -> Result<()> {
    let blocks = enumerate_blocks(fam, w.subset.max().unwrap_or(0), Some(&w.subset));
    if blocks.len() != w.domain_size {
        return invalid(format!("witness claims {} blocks, found {}", w.domain_size, blocks.len()));
    }
    for b in &blocks {
        let c = coloring.color(b)?;
        if Some(c) != w.color {
            return invalid(format!("block {b} has color {c}, witness claims {:?}", w.color));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MetricWitness {
    pub subset: FiniteSet,
    /// `max − min` of the values over blocks inside the subset.
    #[serde(with = "ratio::pq")]
    pub max_gap: Rational,
    pub domain_size: usize,
}

fn spread<'a>(values: impl Iterator<Item = &'a Rational>) -> (Rational, usize) {
    let mut lo: Option<&Rational> = None;
    let mut hi: Option<&Rational> = None;
    let mut n = 0;
    for v in values {
        n += 1;
        if lo.is_none_or(|l| v < l) {
            lo = Some(v);
        }
        if hi.is_none_or(|h| v > h) {
            hi = Some(v);
        }
    }
    match (lo, hi) {
        (Some(l), Some(h)) => (h - l, n),
        _ => (ratio::zero(), 0),
    }
}

/// A subset on which all block values lie within `epsilon` of each other
/// (strictly).
pub fn metric_stabilize(
    fam: &BlockFamily,
    values: impl Fn(&Block) -> Result<Rational>,
    epsilon: &Rational,
    universe: &FiniteSet,
    target: usize,
    strategy: Strategy,
) -> Result<Search<MetricWitness>> {
    if target == 0 || target > universe.len() {
        return invalid(format!("target {target} must lie in 1..={}", universe.len()));
    }
    if *epsilon <= ratio::zero() {
        return invalid("epsilon must be positive");
    }
    let ix = Indexed::new(fam, universe)?;
    let vals: Vec<Rational> = ix.blocks.iter().map(&values).collect::<Result<_>>()?;
    Ok(subset_search(&ix, target, strategy, |mask| {
        let (gap, n) = spread(ix.inside(mask).map(|i| &vals[i]));
        (gap < *epsilon).then(|| MetricWitness { subset: ix.subset(mask), max_gap: gap, domain_size: n })
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagonalStage {
    pub stage: usize,
    #[serde(with = "ratio::pq")]
    pub epsilon: Rational,
    /// The stage set `M_i`; its minimum is `m_i`.
    pub set: FiniteSet,
    pub blocks_inside: usize,
    #[serde(with = "ratio::pq")]
    pub max_gap: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagonalResult {
    pub m_list: FiniteSet,
    pub stages: Vec<DiagonalStage>,
    /// First stage whose set contains no block at all, when the universe ran
    /// out of room before the pool was exhausted.
    pub stalled_at: Option<usize>,
}

/// Builds a nested chain `M₁ ⊇ M₂ ⊇ …` inside `universe`, where `M_i` is the
/// greedy `ε_i`-stable subset of `M_{i−1} ∖ {m_{i−1}}` and `m_i = min M_i`.
/// Any two blocks inside `{m_i}` whose first parts start at `m_ℓ` then differ
/// by less than `ε_ℓ`.
pub fn diagonal_stabilize(
    fam: &BlockFamily,
    values: impl Fn(&Block) -> Result<Rational>,
    schedule: impl Fn(usize) -> Rational,
    universe: &FiniteSet,
) -> Result<DiagonalResult> {
    let ix = Indexed::new(fam, universe)?;
    let vals: Vec<Rational> = ix.blocks.iter().map(&values).collect::<Result<_>>()?;
    let mut pool: u64 = if ix.universe.len() == 64 { u64::MAX } else { (1u64 << ix.universe.len()) - 1 };
    let mut chosen = 0u64;
    let mut stages = Vec::new();
    let mut stalled_at = None;
    let mut stage = 1;
    while pool != 0 {
        let eps = schedule(stage);
        let mut set = 0u64;
        // earlier picks stay in view: blocks starting at them were settled
        // at their own stage, but the gap check covers every block in `M_i`
        for i in 0..ix.universe.len() {
            if pool >> i & 1 == 0 {
                continue;
            }
            let (gap, _) = spread(ix.inside(set | 1 << i).map(|j| &vals[j]));
            if gap < eps {
                set |= 1 << i;
            }
        }
        let (gap, n) = spread(ix.inside(set).map(|j| &vals[j]));
        if n == 0 && stalled_at.is_none() && ix.inside(set | chosen).next().is_none() {
            stalled_at = Some(stage);
        }
        stages.push(DiagonalStage {
            stage,
            epsilon: eps,
            set: ix.subset(set),
            blocks_inside: n,
            max_gap: gap,
        });
        let min = set.trailing_zeros();
        chosen |= 1 << min;
        pool = set & !(1 << min);
        stage += 1;
    }
    Ok(DiagonalResult { m_list: ix.subset(chosen), stages, stalled_at })
}

/// Checks the diagonal property on `m_list`: blocks `S, T` inside it with
/// `min(s₁ ∪ t₁) = m_ℓ` satisfy `|v(S) − v(T)| < ε_ℓ`.
pub fn verify_diagonal(
    fam: &BlockFamily,
    values: impl Fn(&Block) -> Result<Rational>,
    schedule: impl Fn(usize) -> Rational,
    m_list: &FiniteSet,
) -> Result<bool> {
    let blocks = enumerate_blocks(fam, m_list.max().unwrap_or(0), Some(m_list));
    let vals: Vec<Rational> = blocks.iter().map(&values).collect::<Result<_>>()?;
    for (i, s) in blocks.iter().enumerate() {
        for (j, t) in blocks.iter().enumerate().skip(i + 1) {
            let m = s.first_min().min(t.first_min());
            let ell = m_list.iter().position(|x| x == m).expect("block inside m_list") + 1;
            if (&vals[i] - &vals[j]).abs() >= schedule(ell) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
