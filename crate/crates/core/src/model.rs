//! Block asymptotic model norms.
//!
//! The model norm of a barrier sequence `(𝓑_i)` is
//! `|||Σ a_i e_i||| = lim ‖Σ a_i 𝒳(s_i)‖` as the block `{s₁,…,s_k}` of
//! `Bl(𝓑₁,…,𝓑_k)` moves to infinity. It is evaluated lazily by probing a
//! few pairwise far-apart blocks and checking that they agree.

use std::collections::HashMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::barrier::{BarrierDescriptor, DEFAULT_FUEL};
use crate::block::{Block, BlockFamily};
use crate::error::{invalid, Error, Result};
use crate::norm::NormSpec;
use crate::oscillation::{oscillation_grid, BlockProfile};
use crate::ratio::{self, Rational};
use crate::sets::FiniteSet;

/// `(𝓑₁, …, 𝓑_p, 𝓑, 𝓑, …)`: a finite prefix followed by one barrier
/// repeated forever.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BarrierSequence {
    #[serde(default)]
    pub prefix: Vec<BarrierDescriptor>,
    pub tail: BarrierDescriptor,
}

impl BarrierSequence {
    pub fn constant(tail: BarrierDescriptor) -> Self {
        BarrierSequence { prefix: Vec::new(), tail }
    }

    pub fn new(prefix: Vec<BarrierDescriptor>, tail: BarrierDescriptor) -> Result<Self> {
        let seq = BarrierSequence { prefix, tail };
        seq.family(seq.prefix.len() + 1)?;
        Ok(seq)
    }

    /// `([ℕ]^8, [ℕ]^8, …)`.
    pub fn octets() -> Self {
        Self::constant(BarrierDescriptor::Cube(8))
    }

    /// `([ℕ]^2, [ℕ]^2, [ℕ]^8, [ℕ]^8, …)`.
    pub fn pair_pair_octets() -> Self {
        BarrierSequence { prefix: vec![BarrierDescriptor::Cube(2), BarrierDescriptor::Cube(2)], tail: BarrierDescriptor::Cube(8) }
    }

    pub fn barrier(&self, i: usize) -> &BarrierDescriptor {
        self.prefix.get(i).unwrap_or(&self.tail)
    }

    /// `Bl(𝓑₁, …, 𝓑_k)`.
    pub fn family(&self, k: usize) -> Result<BlockFamily> {
        if k == 0 {
            return invalid("block length must be at least 1");
        }
        BlockFamily::new((0..k).map(|i| self.barrier(i).clone()).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    /// Least element of the first probe block, and the spacing between
    /// probes. Defaults to the size of the first block of the family plus 8.
    #[serde(default)]
    pub tail_offset: Option<u32>,
    pub probe_count: usize,
    /// Probe values within this spread count as stabilized.
    #[serde(with = "ratio::pq")]
    pub tolerance: Rational,
}

impl Default for ModelConfig {
    fn default() -> Self {
        ModelConfig { tail_offset: None, probe_count: 5, tolerance: ratio::zero() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Probe {
    pub block: Block,
    #[serde(with = "ratio::pq")]
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelValue {
    /// The common probe value, or their mean when the probes disagree.
    #[serde(with = "ratio::pq")]
    pub value: Rational,
    pub stabilized: bool,
    pub probes: Vec<Probe>,
    pub tail_offset: u32,
}

/// The block built by taking successive fronts of each barrier, each above
/// `cursor` and above the previous part.
fn block_after(fam: &BlockFamily, mut cursor: u32) -> Result<Block> {
    let mut parts = Vec::with_capacity(fam.len());
    for b in fam.barriers() {
        let part = b
            .front(&b.ground().after(cursor), DEFAULT_FUEL)
            .map_err(|e| Error::InsufficientUniverse(format!("no part above {cursor}: {e}")))?;
        cursor = part.max().expect("fronts are nonempty");
        parts.push(part);
    }
    Block::new(parts)
}

/// Probe blocks `S₁ < S₂ < …` with `min(S₁) ≥ offset`, separated by gaps of
/// `offset`.
pub fn probe_blocks(fam: &BlockFamily, offset: Option<u32>, count: usize) -> Result<(u32, Vec<Block>)> {
    if count == 0 {
        return invalid("at least one probe is required");
    }
    let offset = match offset {
        Some(o) if o >= 1 => o,
        Some(_) => return invalid("tail offset must be at least 1"),
        None => block_after(fam, 0)?.to_concat().len() as u32 + 8,
    };
    let mut cursor = offset - 1;
    let mut probes = Vec::with_capacity(count);
    for _ in 0..count {
        let b = block_after(fam, cursor)?;
        cursor = b.last_max() + offset;
        probes.push(b);
    }
    Ok((offset, probes))
}

/// Lazily evaluated model norm of one barrier sequence under one norm.
pub struct ModelEvaluator {
    spec: NormSpec,
    seq: BarrierSequence,
    config: ModelConfig,
    probes: HashMap<usize, (u32, Vec<BlockProfile>)>,
    cache: HashMap<Vec<Rational>, ModelValue>,
}

impl ModelEvaluator {
    pub fn new(spec: NormSpec, seq: BarrierSequence, config: ModelConfig) -> Result<Self> {
        if config.probe_count == 0 {
            return invalid("at least one probe is required");
        }
        if config.tolerance.is_negative() {
            return invalid("tolerance must be nonnegative");
        }
        Ok(ModelEvaluator { spec, seq, config, probes: HashMap::new(), cache: HashMap::new() })
    }

    pub fn spec(&self) -> &NormSpec {
        &self.spec
    }

    pub fn sequence(&self) -> &BarrierSequence {
        &self.seq
    }

    fn profiles(&mut self, k: usize) -> Result<&(u32, Vec<BlockProfile>)> {
        if !self.probes.contains_key(&k) {
            let fam = self.seq.family(k)?;
            let (offset, blocks) = probe_blocks(&fam, self.config.tail_offset, self.config.probe_count)?;
            let profiles = blocks.iter().map(|b| BlockProfile::new(&self.spec, b)).collect::<Result<_>>()?;
            self.probes.insert(k, (offset, profiles));
        }
        Ok(&self.probes[&k])
    }

    /// `|||Σ a_i e_i|||` with the probe evidence.
    pub fn eval(&mut self, coeffs: &[Rational]) -> Result<ModelValue> {
        if coeffs.is_empty() {
            return invalid("at least one coefficient is required");
        }
        if let Some(v) = self.cache.get(coeffs) {
            return Ok(v.clone());
        }
        let spec = self.spec.clone();
        let tolerance = self.config.tolerance.clone();
        let (offset, profiles) = self.profiles(coeffs.len())?;
        let offset = *offset;
        let probes: Vec<Probe> = profiles
            .iter()
            .map(|p| Ok(Probe { block: p.block().clone(), value: p.eval(&spec, coeffs)? }))
            .collect::<Result<_>>()?;
        let lo = probes.iter().map(|p| &p.value).min().expect("nonempty");
        let hi = probes.iter().map(|p| &p.value).max().expect("nonempty");
        let (value, stabilized) = if lo == hi {
            (lo.clone(), true)
        } else {
            let sum: Rational = probes.iter().map(|p| &p.value).sum();
            (sum / ratio::int(probes.len() as i64), hi - lo <= tolerance)
        };
        let v = ModelValue { value, stabilized, probes, tail_offset: offset };
        self.cache.insert(coeffs.to_vec(), v.clone());
        Ok(v)
    }

    /// The stabilized value, or [`Error::NotStabilized`].
    pub fn norm(&mut self, coeffs: &[Rational]) -> Result<Rational> {
        let v = self.eval(coeffs)?;
        if !v.stabilized {
            return Err(Error::NotStabilized { coeffs: fmt_coeffs(coeffs) });
        }
        Ok(v.value)
    }
}

pub(crate) fn fmt_coeffs(a: &[Rational]) -> String {
    let parts: Vec<String> = a.iter().map(ratio::to_pq).collect();
    format!("({})", parts.join(","))
}

pub fn model_eval(spec: &NormSpec, seq: &BarrierSequence, coeffs: &[Rational], config: &ModelConfig) -> Result<ModelValue> {
    ModelEvaluator::new(spec.clone(), seq.clone(), config.clone())?.eval(coeffs)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConsistencyViolation {
    #[serde(with = "ratio::pq_vec")]
    pub coeffs: Vec<Rational>,
    #[serde(with = "ratio::pq")]
    pub base: Rational,
    #[serde(with = "ratio::pq")]
    pub extended: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub k_max: usize,
    pub grid_q: u32,
    pub checked: usize,
    pub holds: bool,
    pub violations: Vec<ConsistencyViolation>,
}

/// `|||(a, 0)||| = |||a|||` for every grid tuple `a` of length `k ≤ k_max`.
pub fn consistency_check(eval: &mut ModelEvaluator, k_max: usize, grid_q: u32) -> Result<ConsistencyReport> {
    let mut checked = 0;
    let mut violations = Vec::new();
    for k in 1..=k_max {
        for a in oscillation_grid(eval.spec(), k, grid_q) {
            let base = eval.norm(&a)?;
            let mut ext = a.clone();
            ext.push(ratio::zero());
            let extended = eval.norm(&ext)?;
            checked += 1;
            if base != extended {
                violations.push(ConsistencyViolation { coeffs: a, base, extended });
            }
        }
    }
    Ok(ConsistencyReport { k_max, grid_q, checked, holds: violations.is_empty(), violations })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpreadingWitness {
    pub placement: FiniteSet,
    #[serde(with = "ratio::pq_vec")]
    pub coeffs: Vec<Rational>,
    #[serde(with = "ratio::pq")]
    pub at_identity: Rational,
    #[serde(with = "ratio::pq")]
    pub at_placement: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpreadingReport {
    pub k: usize,
    pub grid_q: u32,
    pub checked: usize,
    pub holds: bool,
    pub witness: Option<SpreadingWitness>,
}

/// `Σ a_i e_i` placed at the positions of `s`, zeros elsewhere.
pub fn place(a: &[Rational], s: &FiniteSet) -> Vec<Rational> {
    let mut v = vec![ratio::zero(); s.max().unwrap_or(0) as usize];
    for (x, ai) in s.iter().zip(a) {
        v[x as usize - 1] = ai.clone();
    }
    v
}

/// Compares `|||Σ a_i e_i|||` with `|||Σ a_i e_{s(i)}|||` for each placement
/// and grid tuple; stops at the first difference.
pub fn spreading_check(
    eval: &mut ModelEvaluator,
    k: usize,
    placements: &[FiniteSet],
    grid_q: u32,
) -> Result<SpreadingReport> {
    if let Some(s) = placements.iter().find(|s| s.len() != k) {
        return invalid(format!("placement {s} is not a {k}-set"));
    }
    let grid = oscillation_grid(eval.spec(), k, grid_q);
    let mut checked = 0;
    for s in placements {
        for a in &grid {
            let at_identity = eval.norm(a)?;
            let at_placement = eval.norm(&place(a, s))?;
            checked += 1;
            if at_identity != at_placement {
                return Ok(SpreadingReport {
                    k,
                    grid_q,
                    checked,
                    holds: false,
                    witness: Some(SpreadingWitness { placement: s.clone(), coeffs: a.clone(), at_identity, at_placement }),
                });
            }
        }
    }
    Ok(SpreadingReport { k, grid_q, checked, holds: true, witness: None })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    /// Largest `A` with `A·|||a|||₁ ≤ |||a|||₂` on the grid.
    #[serde(with = "ratio::pq")]
    pub lower: Rational,
    #[serde(with = "ratio::pq_vec")]
    pub lower_witness: Vec<Rational>,
    /// Smallest `B` with `|||a|||₂ ≤ B·|||a|||₁` on the grid.
    #[serde(with = "ratio::pq")]
    pub upper: Rational,
    #[serde(with = "ratio::pq_vec")]
    pub upper_witness: Vec<Rational>,
    pub k_max: usize,
    pub grid_q: u32,
    pub checked: usize,
}

/// Empirical equivalence constants between two model norms over nonzero
/// grid tuples of length up to `k_max`. Witnesses are the first tuples
/// attaining each extreme.
pub fn equivalence_constants(
    first: &mut ModelEvaluator,
    second: &mut ModelEvaluator,
    k_max: usize,
    grid_q: u32,
) -> Result<EquivalenceReport> {
    let mut lower: Option<(Rational, Vec<Rational>)> = None;
    let mut upper: Option<(Rational, Vec<Rational>)> = None;
    let mut checked = 0;
    for k in 1..=k_max {
        for a in oscillation_grid(first.spec(), k, grid_q) {
            if a.iter().all(Zero::is_zero) {
                continue;
            }
            let r1 = first.norm(&a)?;
            let r2 = second.norm(&a)?;
            if r1.is_zero() {
                return invalid(format!("first model vanishes at {}", fmt_coeffs(&a)));
            }
            let r = r2 / r1;
            checked += 1;
            if lower.as_ref().is_none_or(|(l, _)| r < *l) {
                lower = Some((r.clone(), a.clone()));
            }
            if upper.as_ref().is_none_or(|(u, _)| r > *u) {
                upper = Some((r, a));
            }
        }
    }
    let ((lower, lower_witness), (upper, upper_witness)) = match (lower, upper) {
        (Some(l), Some(u)) => (l, u),
        _ => return invalid("no nonzero grid tuples"),
    };
    Ok(EquivalenceReport { lower, lower_witness, upper, upper_witness, k_max, grid_q, checked })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{frac, int};
    use crate::sets::set;

    fn ones(k: usize) -> Vec<Rational> {
        vec![int(1); k]
    }

    #[test]
    fn probes_are_far_apart() {
        let fam = BlockFamily::cubes(&[2, 2, 8]).unwrap();
        let (offset, blocks) = probe_blocks(&fam, None, 3).unwrap();
        assert_eq!(offset, 20);
        assert_eq!(blocks[0].first_min(), 20);
        assert_eq!(blocks[0].sizes(), vec![2, 2, 8]);
        assert_eq!(blocks[1].first_min(), blocks[0].last_max() + 21);
        let schreier = BlockFamily::new(vec![BarrierDescriptor::Schreier]).unwrap();
        let (_, b) = probe_blocks(&schreier, Some(5), 1).unwrap();
        assert_eq!(b[0].parts()[0], set(&[5, 6, 7, 8, 9]));
    }

    #[test]
    fn named_values() {
        let spec = NormSpec::weighted_pair_octet();
        let cfg = ModelConfig::default();
        let seq = BarrierSequence::pair_pair_octets();
        let v = model_eval(&spec, &seq, &ones(2), &cfg).unwrap();
        assert!(v.stabilized);
        assert_eq!(v.value, frac(3, 2));
        let v = model_eval(&spec, &seq, &[int(0), int(0), int(1), int(1)], &cfg).unwrap();
        assert_eq!(v.value, int(1));
        let v = model_eval(&spec, &BarrierSequence::octets(), &ones(3), &cfg).unwrap();
        assert_eq!(v.value, int(1));
    }

    #[test]
    fn filtered_specs_need_not_stabilize() {
        let seq = BarrierSequence::new(vec![BarrierDescriptor::Cube(1)], BarrierDescriptor::Cube(2)).unwrap();
        let cfg = ModelConfig { tail_offset: Some(2), probe_count: 2, tolerance: ratio::zero() };
        // probes {2},{3,4} and {7},{8,9}: two evens, then one
        let mut e = ModelEvaluator::new(NormSpec::even_pair(), seq.clone(), cfg.clone()).unwrap();
        let v = e.eval(&ones(2)).unwrap();
        assert!(!v.stabilized);
        assert_eq!(v.value, frac(5, 4));
        assert!(matches!(e.norm(&ones(2)), Err(Error::NotStabilized { .. })));
        let loose = ModelConfig { tolerance: frac(1, 2), ..cfg };
        assert!(model_eval(&NormSpec::even_pair(), &seq, &ones(2), &loose).unwrap().stabilized);
    }

    #[test]
    fn consistency_and_spreading() {
        let spec = NormSpec::weighted_pair_octet();
        let mut e = ModelEvaluator::new(spec.clone(), BarrierSequence::pair_pair_octets(), ModelConfig::default()).unwrap();
        let r = consistency_check(&mut e, 3, 2).unwrap();
        assert!(r.holds, "{:?}", r.violations);
        let s = spreading_check(&mut e, 2, &[set(&[1, 2]), set(&[3, 4])], 1).unwrap();
        let w = s.witness.unwrap();
        assert_eq!(w.placement, set(&[3, 4]));
        assert_eq!((w.at_identity, w.at_placement), (frac(3, 2), int(1)));
        let mut o = ModelEvaluator::new(spec, BarrierSequence::octets(), ModelConfig::default()).unwrap();
        assert!(spreading_check(&mut o, 2, &[set(&[2, 5])], 2).unwrap().holds);
        assert!(spreading_check(&mut o, 2, &[set(&[2])], 2).is_err());
    }

    #[test]
    fn equivalence_of_the_two_models() {
        let spec = NormSpec::weighted_pair_octet();
        let mut a = ModelEvaluator::new(spec.clone(), BarrierSequence::octets(), ModelConfig::default()).unwrap();
        let mut b = ModelEvaluator::new(spec, BarrierSequence::pair_pair_octets(), ModelConfig::default()).unwrap();
        let r = equivalence_constants(&mut a, &mut b, 3, 2).unwrap();
        assert_eq!((r.lower.clone(), r.upper.clone()), (int(1), int(2)));
        assert_eq!(r.upper_witness, ones(3));
        let mut a2 = ModelEvaluator::new(NormSpec::weighted_pair_octet(), BarrierSequence::octets(), ModelConfig::default()).unwrap();
        let r = equivalence_constants(&mut a, &mut a2, 2, 2).unwrap();
        assert_eq!((r.lower, r.upper), (int(1), int(1)));
    }

    #[test]
    fn sequence_json() {
        let seq: BarrierSequence = serde_json::from_str(
            r#"{"prefix":[{"type":"cube","k":2},{"type":"cube","k":2}],"tail":{"type":"cube","k":8}}"#,
        )
        .unwrap();
        assert_eq!(seq, BarrierSequence::pair_pair_octets());
        assert_eq!(seq.family(4).unwrap().len(), 4);
        assert!(seq.family(0).is_err());
    }
}
