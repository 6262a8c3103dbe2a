//! `Ψ_k` evaluation and block oscillation measurement.
//!
//! For a block `S = {s₁ < … < s_k}` and coefficients `a`,
//! `Ψ_k(S)(a) = ‖Σ a_i 𝒳(s_i)‖`. The oscillation of a family over a finite
//! universe is the largest `|Ψ_k(S)(a) − Ψ_k(T)(a)|` over blocks inside the
//! universe and coefficient tuples on a recorded grid.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::block::{enumerate_blocks, Block, BlockFamily};
use crate::error::{invalid, Error, Result};
use crate::norm::{block_vector, coefficient_grid, Group, NormSpec};
use crate::ramsey::{subset_search, Indexed, Search, Strategy};
use crate::ratio::{self, Rational};
use crate::sets::FiniteSet;

/// Strictly decreasing positive tolerances `ε₁ > ε₂ > …` tending to 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ToleranceSchedule {
    /// `ε_i = first · ratio^(i−1)`.
    Geometric {
        #[serde(with = "ratio::pq")]
        first: Rational,
        #[serde(with = "ratio::pq")]
        ratio: Rational,
    },
    /// The listed values, then repeated halving of the last one.
    Explicit {
        #[serde(with = "ratio::pq_vec")]
        values: Vec<Rational>,
    },
}

impl Default for ToleranceSchedule {
    fn default() -> Self {
        ToleranceSchedule::Geometric { first: ratio::frac(1, 2), ratio: ratio::frac(1, 2) }
    }
}

impl ToleranceSchedule {
    pub fn geometric(first: Rational, ratio: Rational) -> Result<Self> {
        let s = ToleranceSchedule::Geometric { first, ratio };
        s.validate()?;
        Ok(s)
    }

    pub fn explicit(values: Vec<Rational>) -> Result<Self> {
        let s = ToleranceSchedule::Explicit { values };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ToleranceSchedule::Geometric { first, ratio } => {
                if !first.is_positive() {
                    return invalid("schedule must start positive");
                }
                if !ratio.is_positive() || *ratio >= Rational::one() {
                    return invalid("geometric ratio must lie in (0,1)");
                }
            }
            ToleranceSchedule::Explicit { values } => {
                if values.is_empty() {
                    return invalid("explicit schedule needs at least one value");
                }
                if !values.iter().all(Signed::is_positive) {
                    return invalid("tolerances must be positive");
                }
                if values.windows(2).any(|w| w[1] >= w[0]) {
                    return invalid("tolerances must strictly decrease");
                }
            }
        }
        Ok(())
    }

    /// `ε_i` for `i ≥ 1`.
    pub fn at(&self, i: usize) -> Rational {
        let i = i.max(1);
        match self {
            ToleranceSchedule::Geometric { first, ratio } => first * num_traits::pow(ratio.clone(), i - 1),
            ToleranceSchedule::Explicit { values } => {
                if i <= values.len() {
                    values[i - 1].clone()
                } else {
                    let extra = (i - values.len()) as u32;
                    values.last().expect("validated") / Rational::from_integer(num_bigint::BigInt::one() << extra)
                }
            }
        }
    }
}

/// Reciprocal norms of the parts of one block, so `Ψ_k(S)` can be
/// evaluated for many coefficient tuples.
#[derive(Debug, Clone)]
pub struct BlockProfile {
    block: Block,
    parts: Vec<Vec<u32>>,
    inv: Vec<Rational>,
}

impl BlockProfile {
    pub fn new(spec: &NormSpec, block: &Block) -> Result<Self> {
        let mut inv = Vec::with_capacity(block.len());
        for p in block.parts() {
            let x = block_vector(spec, p)?;
            inv.push(x.get(p.min().expect("parts are nonempty")));
        }
        Ok(BlockProfile {
            block: block.clone(),
            parts: block.parts().iter().map(|p| p.as_slice().to_vec()).collect(),
            inv,
        })
    }

    pub fn block(&self) -> &Block {
        &self.block
    }

    /// Coefficient of every entry of `𝒳(s_i)`.
    pub fn coefficients(&self) -> &[Rational] {
        &self.inv
    }

    pub fn eval(&self, spec: &NormSpec, coeffs: &[Rational]) -> Result<Rational> {
        if coeffs.len() != self.parts.len() {
            return invalid(format!("{} coefficients for a block of length {}", coeffs.len(), self.parts.len()));
        }
        let mut groups: Vec<Group<'_>> = self
            .parts
            .iter()
            .zip(&self.inv)
            .zip(coeffs)
            .filter(|(_, a)| !a.is_zero())
            .map(|((p, inv), a)| Group { value: a.abs() * inv, indices: p })
            .collect();
        Ok(spec.eval_groups(&mut groups).value)
    }
}

/// `Ψ_k(S)(a) = ‖Σ a_i 𝒳(s_i)‖`.
pub fn psi_eval(spec: &NormSpec, block: &Block, coeffs: &[Rational]) -> Result<Rational> {
    BlockProfile::new(spec, block)?.eval(spec, coeffs)
}

/// Grid used for oscillation sups: nonnegative tuples, plus sign vertices
/// for index-filtered specs whose unconditionality is only assumed.
pub fn oscillation_grid(spec: &NormSpec, k: usize, grid_q: u32) -> Vec<Vec<Rational>> {
    coefficient_grid(k, grid_q, spec.has_filters())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OscillationReport {
    #[serde(with = "ratio::pq")]
    pub gap: Rational,
    pub witness_pair: (Block, Block),
    #[serde(with = "ratio::pq_vec")]
    pub witness_coeffs: Vec<Rational>,
    pub universe: FiniteSet,
    pub grid_q: u32,
    pub blocks: usize,
    pub grid_points: usize,
}

impl OscillationReport {
    /// Recomputes `|Ψ(S)(a) − Ψ(T)(a)|` at the stored witnesses.
    pub fn reverify(&self, spec: &NormSpec) -> Result<Rational> {
        let (s, t) = &self.witness_pair;
        Ok((psi_eval(spec, s, &self.witness_coeffs)? - psi_eval(spec, t, &self.witness_coeffs)?).abs())
    }
}

/// `Ψ` values of every block for every grid point: `table[g][b]`.
struct ValueTable {
    grid: Vec<Vec<Rational>>,
    table: Vec<Vec<Rational>>,
}

impl ValueTable {
    fn new(spec: &NormSpec, blocks: &[Block], k: usize, grid_q: u32) -> Result<Self> {
        let profiles: Vec<BlockProfile> = blocks.iter().map(|b| BlockProfile::new(spec, b)).collect::<Result<_>>()?;
        let grid = oscillation_grid(spec, k, grid_q);
        let table = grid
            .iter()
            .map(|a| profiles.iter().map(|p| p.eval(spec, a)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        Ok(ValueTable { grid, table })
    }

    /// Largest spread over the blocks in `members`, with the first grid point
    /// and first (min, max) block indices attaining it.
    fn gap(&self, members: &[usize]) -> (Rational, usize, usize, usize) {
        let mut best = (ratio::zero(), 0, members.first().copied().unwrap_or(0), members.get(1).copied().unwrap_or(0));
        for (g, row) in self.table.iter().enumerate() {
            let (mut lo, mut hi) = (members[0], members[0]);
            for &b in &members[1..] {
                if row[b] < row[lo] {
                    lo = b;
                }
                if row[b] > row[hi] {
                    hi = b;
                }
            }
            let d = &row[hi] - &row[lo];
            if d > best.0 {
                best = (d, g, lo.min(hi), lo.max(hi));
            }
        }
        best
    }
}

fn report(
    table: &ValueTable,
    blocks: &[Block],
    members: &[usize],
    universe: &FiniteSet,
    grid_q: u32,
) -> OscillationReport {
    let (gap, g, s, t) = table.gap(members);
    OscillationReport {
        gap,
        witness_pair: (blocks[s].clone(), blocks[t].clone()),
        witness_coeffs: table.grid[g].clone(),
        universe: universe.clone(),
        grid_q,
        blocks: members.len(),
        grid_points: table.grid.len(),
    }
}

/// Largest oscillation over all block pairs inside `universe`; the witness
/// is the first maximizing grid point, then the first extremal blocks in
/// enumeration order.
pub fn oscillation_gap(
    spec: &NormSpec,
    fam: &BlockFamily,
    universe: &FiniteSet,
    grid_q: u32,
) -> Result<OscillationReport> {
    let blocks = enumerate_blocks(fam, universe.max().unwrap_or(0), Some(universe));
    if blocks.len() < 2 {
        return Err(Error::InsufficientBlocks { found: blocks.len() });
    }
    let table = ValueTable::new(spec, &blocks, fam.len(), grid_q)?;
    let members: Vec<usize> = (0..blocks.len()).collect();
    Ok(report(&table, &blocks, &members, universe, grid_q))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StableWitness {
    pub subset: FiniteSet,
    #[serde(with = "ratio::pq")]
    pub gap: Rational,
    /// Absent when fewer than two blocks fit inside the subset.
    pub report: Option<OscillationReport>,
}

/// A subset of `universe` on which the family is `ε`-block oscillation
/// stable at grid resolution `grid_q`. Exhaustive search returns the
/// lexicographically least subset of size `target`.
pub fn find_stable_subsequence(
    spec: &NormSpec,
    fam: &BlockFamily,
    epsilon: &Rational,
    universe: &FiniteSet,
    target: usize,
    strategy: Strategy,
    grid_q: u32,
) -> Result<Search<StableWitness>> {
    if target == 0 || target > universe.len() {
        return invalid(format!("target {target} must lie in 1..={}", universe.len()));
    }
    if !epsilon.is_positive() {
        return invalid("epsilon must be positive");
    }
    let ix = Indexed::new(fam, universe)?;
    let table = ValueTable::new(spec, &ix.blocks, fam.len(), grid_q)?;
    let search = subset_search(&ix, target, strategy, |mask| {
        let members: Vec<usize> = ix.inside(mask).collect();
        let subset = ix.subset(mask);
        if members.len() < 2 {
            return Some(StableWitness { subset, gap: ratio::zero(), report: None });
        }
        let r = report(&table, &ix.blocks, &members, &subset, grid_q);
        (r.gap < *epsilon).then(|| StableWitness { subset, gap: r.gap.clone(), report: Some(r) })
    });
    if let Search::Found(w) | Search::NotFound { best: Some(w) } = &search {
        if let Some(r) = &w.report {
            let fresh = oscillation_gap(spec, fam, &w.subset, grid_q)?;
            if fresh.gap != r.gap || r.reverify(spec)? != r.gap {
                return invalid(format!("stable subset {} failed re-verification", w.subset));
            }
        }
    }
    Ok(search)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageResult {
    pub stage: usize,
    #[serde(with = "ratio::pq")]
    pub epsilon: Rational,
    /// Least `n_j` whose tail `{x ∈ universe : x > n_j}` is stable at `ε_j`.
    pub n: Option<u32>,
    #[serde(with = "ratio::pq")]
    pub gap: Rational,
    /// Oscillation witness on the shortest admissible tail when the stage
    /// fails.
    pub failure: Option<OscillationReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AsymptoticReport {
    pub universe: FiniteSet,
    pub grid_q: u32,
    /// Tails shorter than this are not considered: they hold too few blocks
    /// to say anything.
    pub min_tail: usize,
    pub stages: Vec<StageResult>,
    pub all_passed: bool,
}

pub const DEFAULT_STAGES: usize = 12;

/// Finite-horizon form of the tail criterion: for each `ε_j`, the least
/// `n_j` such that all block pairs inside the tail of `universe` above
/// `n_j` oscillate by less than `ε_j`.
///
/// Tails must hold at least `span + 2` elements, where `span` is the size of
/// the first block of the family.
pub fn asymptotic_stability_check(
    spec: &NormSpec,
    fam: &BlockFamily,
    schedule: &ToleranceSchedule,
    universe: &FiniteSet,
    grid_q: u32,
    stages: usize,
) -> Result<AsymptoticReport> {
    schedule.validate()?;
    let ix = Indexed::new(fam, universe)?;
    if ix.blocks.len() < 2 {
        return Err(Error::InsufficientBlocks { found: ix.blocks.len() });
    }
    let span = ix.blocks[0].to_concat().len();
    let min_tail = span + 2;
    let table = ValueTable::new(spec, &ix.blocks, fam.len(), grid_q)?;

    // candidate thresholds 0 and each universe element, with their tail gaps
    let mut tails = Vec::new();
    for (pos, n) in std::iter::once(0).chain(universe.iter()).enumerate() {
        if universe.len() - pos < min_tail {
            break;
        }
        let members: Vec<usize> = (0..ix.blocks.len()).filter(|&b| ix.blocks[b].first_min() > n).collect();
        if members.len() < 2 {
            break;
        }
        tails.push((n, members));
    }
    if tails.is_empty() {
        return Err(Error::InsufficientUniverse(format!("no tail of {universe} holds {min_tail} elements")));
    }
    let gaps: Vec<Rational> = tails.iter().map(|(_, m)| table.gap(m).0).collect();

    let mut results = Vec::new();
    for j in 1..=stages {
        let eps = schedule.at(j);
        match gaps.iter().position(|g| *g < eps) {
            Some(i) => results.push(StageResult { stage: j, epsilon: eps, n: Some(tails[i].0), gap: gaps[i].clone(), failure: None }),
            None => {
                let (n, members) = tails.last().expect("nonempty");
                let tail = universe.after(*n);
                let r = report(&table, &ix.blocks, members, &tail, grid_q);
                results.push(StageResult { stage: j, epsilon: eps, n: None, gap: r.gap.clone(), failure: Some(r) });
            }
        }
    }
    let all_passed = results.iter().all(|r| r.n.is_some());
    Ok(AsymptoticReport { universe: universe.clone(), grid_q, min_tail, stages: results, all_passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{frac, int};
    use crate::sets::set;

    fn block(parts: &[&[u32]]) -> Block {
        Block::new(parts.iter().map(|p| set(p)).collect()).unwrap()
    }

    #[test]
    fn psi_examples() {
        let spec = NormSpec::weighted_pair_octet();
        let b88 = block(&[&[1, 2, 3, 4, 5, 6, 7, 8], &[9, 10, 11, 12, 13, 14, 15, 16]]);
        assert_eq!(psi_eval(&spec, &b88, &[int(1), int(1)]).unwrap(), int(1));
        let b22 = block(&[&[1, 2], &[3, 4]]);
        assert_eq!(psi_eval(&spec, &b22, &[int(1), int(1)]).unwrap(), frac(3, 2));
        let b228 = block(&[&[1, 2], &[3, 4], &[5, 6, 7, 8, 9, 10, 11, 12]]);
        assert_eq!(psi_eval(&spec, &b228, &[int(0), int(0), int(1)]).unwrap(), int(1));
        assert!(psi_eval(&spec, &b228, &[int(1)]).is_err());
    }

    #[test]
    fn schedules() {
        let s = ToleranceSchedule::default();
        assert_eq!(s.at(1), frac(1, 2));
        assert_eq!(s.at(3), frac(1, 8));
        let e = ToleranceSchedule::explicit(vec![int(1), frac(1, 3)]).unwrap();
        assert_eq!(e.at(4), frac(1, 12));
        assert!(ToleranceSchedule::explicit(vec![int(1), int(1)]).is_err());
        assert!(ToleranceSchedule::geometric(int(1), int(1)).is_err());
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"kind":"geometric","first":"1/2","ratio":"1/2"}"#);
    }

    #[test]
    fn even_pair_gap() {
        let fam = BlockFamily::cubes(&[1, 1]).unwrap();
        let r = oscillation_gap(&NormSpec::even_pair(), &fam, &FiniteSet::interval(1, 8), 4).unwrap();
        assert_eq!(r.gap, frac(1, 2));
        assert_eq!(r.witness_coeffs, vec![int(1), int(1)]);
        assert_eq!(r.reverify(&NormSpec::even_pair()).unwrap(), r.gap);
    }

    #[test]
    fn constant_families_do_not_oscillate() {
        let fam = BlockFamily::cubes(&[8, 8]).unwrap();
        let r = oscillation_gap(&NormSpec::weighted_pair_octet(), &fam, &FiniteSet::interval(1, 18), 2).unwrap();
        assert_eq!(r.gap, int(0));
        let r = oscillation_gap(&NormSpec::Sup, &BlockFamily::cubes(&[2, 1]).unwrap(), &FiniteSet::interval(1, 7), 3)
            .unwrap();
        assert_eq!(r.gap, int(0));
        assert!(matches!(
            oscillation_gap(&NormSpec::Sup, &fam, &FiniteSet::interval(1, 16), 2),
            Err(Error::InsufficientBlocks { found: 1 })
        ));
    }

    #[test]
    fn stable_subsequence_even_pair() {
        let fam = BlockFamily::cubes(&[1, 1]).unwrap();
        let spec = NormSpec::even_pair();
        let u = FiniteSet::interval(1, 10);
        let w = find_stable_subsequence(&spec, &fam, &frac(1, 4), &u, 5, Strategy::Exhaustive, 4)
            .unwrap()
            .found()
            .unwrap();
        // at most one even element keeps every pair value at 1
        assert_eq!(w.subset, set(&[1, 2, 3, 5, 7]));
        assert_eq!(w.gap, int(0));
        let big = find_stable_subsequence(&spec, &fam, &int(4), &u, 10, Strategy::Greedy, 4).unwrap();
        assert_eq!(big.found().unwrap().subset, u);
    }

    #[test]
    fn asymptotic_examples() {
        let spec = NormSpec::even_pair();
        let fam = BlockFamily::cubes(&[1, 1]).unwrap();
        let r = asymptotic_stability_check(&spec, &fam, &ToleranceSchedule::default(), &FiniteSet::interval(1, 16), 4, 3)
            .unwrap();
        assert!(r.stages.iter().all(|s| s.n.is_none() && s.gap == frac(1, 2)));
        let odds: FiniteSet = FiniteSet::new((0..10).map(|i| 2 * i + 1).collect()).unwrap();
        let r = asymptotic_stability_check(&spec, &fam, &ToleranceSchedule::default(), &odds, 4, 12).unwrap();
        assert!(r.all_passed);
        assert!(r.stages.iter().all(|s| s.n == Some(0)));
    }
}
