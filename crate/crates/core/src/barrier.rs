//! Barrier descriptors.
//!
//! A barrier on an infinite `N ⊆ ℕ` is a family of nonempty finite subsets of
//! `N` with no `⊆`-comparable pair such that every infinite `M ⊆ N` has an
//! initial segment in the family. Barriers are infinite, so they are described
//! intensionally by a small algebra closed under restriction, quotient, sum and
//! relabelling onto `ℕ`. Every constructor validates its arguments so that a
//! descriptor always denotes a genuine barrier.

use std::collections::HashSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::ordinal::Ordinal;
use crate::sets::{FiniteSet, SetGenerator, Subsets};

pub const DEFAULT_FUEL: u64 = 1_000_000;

/// Elements of two generators compared when checking for a common ground.
const GROUND_PROBE: usize = 256;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDescriptor", into = "RawDescriptor")]
pub enum BarrierDescriptor {
    /// `[ℕ]^k`
    Cube(u32),
    /// `{s : |s| = min s}`
    Schreier,
    Restrict { base: Box<BarrierDescriptor>, to: SetGenerator },
    Quotient { base: Box<BarrierDescriptor>, s: FiniteSet },
    Sum(Vec<BarrierDescriptor>),
    Associated(Box<BarrierDescriptor>),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum RawDescriptor {
    Cube { k: u32 },
    Schreier,
    Restrict { base: Box<BarrierDescriptor>, to: SetGenerator },
    Quotient { base: Box<BarrierDescriptor>, s: FiniteSet },
    Sum { parts: Vec<BarrierDescriptor> },
    Associated { base: Box<BarrierDescriptor> },
}

impl TryFrom<RawDescriptor> for BarrierDescriptor {
    type Error = Error;
    fn try_from(raw: RawDescriptor) -> Result<Self> {
        // Nested descriptors were already validated while deserializing.
        match raw {
            RawDescriptor::Cube { k } => BarrierDescriptor::cube(k),
            RawDescriptor::Schreier => Ok(BarrierDescriptor::Schreier),
            RawDescriptor::Restrict { base, to } => BarrierDescriptor::restrict(*base, to),
            RawDescriptor::Quotient { base, s } => BarrierDescriptor::quotient(*base, s),
            RawDescriptor::Sum { parts } => BarrierDescriptor::sum(parts),
            RawDescriptor::Associated { base } => Ok(BarrierDescriptor::associated(*base)),
        }
    }
}

impl From<BarrierDescriptor> for RawDescriptor {
    fn from(b: BarrierDescriptor) -> Self {
        match b {
            BarrierDescriptor::Cube(k) => RawDescriptor::Cube { k },
            BarrierDescriptor::Schreier => RawDescriptor::Schreier,
            BarrierDescriptor::Restrict { base, to } => RawDescriptor::Restrict { base, to },
            BarrierDescriptor::Quotient { base, s } => RawDescriptor::Quotient { base, s },
            BarrierDescriptor::Sum(parts) => RawDescriptor::Sum { parts },
            BarrierDescriptor::Associated(base) => RawDescriptor::Associated { base },
        }
    }
}

/// Operations accepted by [`build_descriptor`].
#[derive(Debug, Clone)]
pub enum BuildOp {
    Restrict { base: BarrierDescriptor, to: SetGenerator },
    Quotient { base: BarrierDescriptor, s: FiniteSet },
    Sum(Vec<BarrierDescriptor>),
    Associated(BarrierDescriptor),
}

pub fn build_descriptor(op: BuildOp) -> Result<BarrierDescriptor> {
    match op {
        BuildOp::Restrict { base, to } => BarrierDescriptor::restrict(base, to),
        BuildOp::Quotient { base, s } => BarrierDescriptor::quotient(base, s),
        BuildOp::Sum(parts) => BarrierDescriptor::sum(parts),
        BuildOp::Associated(base) => Ok(BarrierDescriptor::associated(base)),
    }
}

impl BarrierDescriptor {
    pub fn cube(k: u32) -> Result<Self> {
        if k == 0 {
            return invalid("cube needs k >= 1");
        }
        Ok(BarrierDescriptor::Cube(k))
    }

    pub fn schreier() -> Self {
        BarrierDescriptor::Schreier
    }

    /// `𝓑↾M`. `M` must lie inside the ground set of `base`; this is checked on
    /// a finite prefix of `M`.
    pub fn restrict(base: BarrierDescriptor, to: SetGenerator) -> Result<Self> {
        let ground = base.ground();
        if let Some(x) = to.iter().take(GROUND_PROBE).find(|&x| !ground.contains(x)) {
            return invalid(format!("restriction set contains {x}, which is outside the ground set"));
        }
        Ok(BarrierDescriptor::Restrict { base: Box::new(base), to })
    }

    /// `𝓑_s = {t : s⌢t ∈ 𝓑}`.
    ///
    /// `s` must lie in the ground set and no initial segment of `s` (including
    /// `s` itself) may belong to `base`. This is exactly what makes `𝓑_s` a
    /// nonempty barrier on `N/max(s)`; `s ∉ 𝓑` alone allows empty quotients
    /// such as `[ℕ]^2` over `{1,2,3}`.
    pub fn quotient(base: BarrierDescriptor, s: FiniteSet) -> Result<Self> {
        if s.is_empty() {
            return invalid("quotient needs a nonempty s");
        }
        let ground = base.ground();
        if let Some(x) = s.iter().find(|&x| !ground.contains(x)) {
            return invalid(format!("quotient set {s} contains {x}, which is outside the ground set"));
        }
        for len in 1..=s.len() {
            let p = s.prefix(len);
            if base.contains_unchecked(p.as_slice()) {
                return if len == s.len() {
                    invalid(format!("{s} belongs to the barrier, so its quotient is not a barrier"))
                } else {
                    invalid(format!("the initial segment {p} of {s} belongs to the barrier, so the quotient is empty"))
                };
            }
        }
        Ok(BarrierDescriptor::Quotient { base: Box::new(base), s })
    }

    /// `𝓑₁ ⊕ … ⊕ 𝓑_k`; all parts must share a ground set.
    pub fn sum(parts: Vec<BarrierDescriptor>) -> Result<Self> {
        if parts.is_empty() {
            return invalid("sum needs at least one part");
        }
        common_ground(&parts)?;
        Ok(BarrierDescriptor::Sum(parts))
    }

    /// The relabelling of `base` onto `ℕ` along the increasing enumeration of
    /// its ground set.
    pub fn associated(base: BarrierDescriptor) -> Self {
        BarrierDescriptor::Associated(Box::new(base))
    }

    /// The infinite set this barrier lives on.
    pub fn ground(&self) -> SetGenerator {
        match self {
            BarrierDescriptor::Cube(_) | BarrierDescriptor::Schreier | BarrierDescriptor::Associated(_) => {
                SetGenerator::naturals()
            }
            BarrierDescriptor::Restrict { to, .. } => to.clone(),
            BarrierDescriptor::Quotient { base, s } => base.ground().after(s.max().unwrap_or(0)),
            BarrierDescriptor::Sum(parts) => parts[0].ground(),
        }
    }

    pub fn contains(&self, s: &FiniteSet) -> Result<bool> {
        if s.is_empty() {
            return invalid("membership is only defined for nonempty sets");
        }
        Ok(self.contains_unchecked(s.as_slice()))
    }

    /// Membership for a strictly increasing, possibly empty slice.
    pub(crate) fn contains_unchecked(&self, s: &[u32]) -> bool {
        if s.is_empty() {
            return false;
        }
        match self {
            BarrierDescriptor::Cube(k) => s.len() == *k as usize,
            BarrierDescriptor::Schreier => s.len() == s[0] as usize,
            BarrierDescriptor::Restrict { base, to } => {
                s.iter().all(|&x| to.contains(x)) && base.contains_unchecked(s)
            }
            BarrierDescriptor::Quotient { base, s: t } => {
                if t.max().unwrap_or(0) >= s[0] {
                    return false;
                }
                let mut joined = t.as_slice().to_vec();
                joined.extend_from_slice(s);
                base.contains_unchecked(&joined)
            }
            BarrierDescriptor::Sum(parts) => split_sum(parts, s).is_some(),
            BarrierDescriptor::Associated(base) => {
                let ground = base.ground();
                let relabelled: Vec<u32> = s.iter().map(|&i| ground.nth(i as usize)).collect();
                base.contains_unchecked(&relabelled)
            }
        }
    }

    /// The unique initial segment of `m` in the barrier.
    pub fn front(&self, m: &SetGenerator, fuel: u64) -> Result<FiniteSet> {
        let ground = self.ground();
        let mut prefix = Vec::new();
        for (step, x) in m.iter().enumerate() {
            if step as u64 >= fuel {
                return Err(Error::NoFrontFound { fuel });
            }
            if !ground.contains(x) {
                return invalid(format!("generator element {x} is outside the ground set {ground:?}"));
            }
            prefix.push(x);
            if self.contains_unchecked(&prefix) {
                return Ok(FiniteSet::from_sorted_unchecked(prefix));
            }
        }
        unreachable!("generators are infinite")
    }

    /// All members with every element at most `n`, in lexicographic order.
    pub fn enumerate(&self, n: u32) -> Vec<FiniteSet> {
        let candidates = self.ground().up_to(n).into_vec();
        let mut out = members_from(self, &candidates, 0);
        out.sort_by(|a, b| a.lex_cmp(b));
        out
    }

    /// Structural rank when it can be read off the descriptor, otherwise the
    /// finite-probe classifier at the given bound.
    pub fn rank_with_probe(&self, probe: u32) -> RankReport {
        match shape(self) {
            Shape::Cube(k) => RankReport {
                rank: Ordinal::omega_pow(k),
                confirmed: true,
                method: RankMethod::Structural,
                probe_bound: None,
            },
            Shape::Unbounded => RankReport {
                rank: Ordinal::AtLeastOmegaOmega,
                confirmed: true,
                method: RankMethod::Structural,
                probe_bound: None,
            },
            Shape::Unknown => classify_empirical(self, probe),
        }
    }

    pub fn rank(&self) -> RankReport {
        self.rank_with_probe(DEFAULT_PROBE)
    }
}

pub const DEFAULT_PROBE: u32 = 16;

pub(crate) fn common_ground(parts: &[BarrierDescriptor]) -> Result<()> {
    let first = parts[0].ground().take(GROUND_PROBE);
    for (i, p) in parts.iter().enumerate().skip(1) {
        if p.ground().take(GROUND_PROBE) != first {
            return invalid(format!("sum part {i} lives on a different ground set"));
        }
    }
    Ok(())
}

/// Splits `s` as `s₁ < … < s_k` with `s_i` in part `i`.
///
/// Each part is Sperner, so at most one initial segment of the remainder lies
/// in the next part and the greedy split is the only candidate.
pub(crate) fn split_sum(parts: &[BarrierDescriptor], s: &[u32]) -> Option<Vec<usize>> {
    let mut cuts = Vec::with_capacity(parts.len());
    let mut start = 0;
    for part in parts {
        let end = (start + 1..=s.len()).find(|&end| part.contains_unchecked(&s[start..end]))?;
        cuts.push(end);
        start = end;
    }
    (start == s.len()).then_some(cuts)
}

/// Members of `b` whose elements are drawn from `candidates[from..]`.
///
/// A nonmember prefix of a barrier with no member prefix always extends to a
/// member, so the search descends through every nonmember and stops at the
/// first member on each branch.
pub(crate) fn members_from(b: &BarrierDescriptor, candidates: &[u32], from: usize) -> Vec<FiniteSet> {
    fn go(b: &BarrierDescriptor, cand: &[u32], next: usize, prefix: &mut Vec<u32>, out: &mut Vec<FiniteSet>) {
        for i in next..cand.len() {
            prefix.push(cand[i]);
            if b.contains_unchecked(prefix) {
                out.push(FiniteSet::from_sorted_unchecked(prefix.clone()));
            } else if !cube_saturated(b, prefix.len()) {
                go(b, cand, i + 1, prefix, out);
            }
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(b, candidates, from, &mut Vec::new(), &mut out);
    out
}

impl BarrierDescriptor {
    /// A lower bound on the size of every member.
    pub(crate) fn min_member_len(&self) -> usize {
        match self {
            BarrierDescriptor::Cube(k) => *k as usize,
            BarrierDescriptor::Restrict { base, .. } => base.min_member_len(),
            BarrierDescriptor::Sum(parts) => parts.iter().map(BarrierDescriptor::min_member_len).sum(),
            _ => 1,
        }
    }
}

/// Cheap pruning for cubes: a nonmember of length `>= k` never becomes one.
fn cube_saturated(b: &BarrierDescriptor, len: usize) -> bool {
    matches!(b, BarrierDescriptor::Cube(k) if len >= *k as usize)
}

impl fmt::Display for BarrierDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BarrierDescriptor::Cube(k) => write!(f, "[N]^{k}"),
            BarrierDescriptor::Schreier => write!(f, "S"),
            BarrierDescriptor::Restrict { base, to } => write!(f, "{base}|{to:?}"),
            BarrierDescriptor::Quotient { base, s } => write!(f, "({base})_{s}"),
            BarrierDescriptor::Sum(parts) => {
                write!(f, "(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
            BarrierDescriptor::Associated(base) => write!(f, "assoc({base})"),
        }
    }
}

impl fmt::Debug for BarrierDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Pairs `(s, t)` with `s ⊊ t` inside `family`.
pub fn sperner_violations(family: &[FiniteSet]) -> Vec<(FiniteSet, FiniteSet)> {
    #[derive(Default)]
    struct Node {
        children: std::collections::BTreeMap<u32, usize>,
        terminal: bool,
    }
    let mut trie = vec![Node::default()];
    for s in family {
        let mut at = 0;
        for x in s.iter() {
            at = match trie[at].children.get(&x) {
                Some(&c) => c,
                None => {
                    trie.push(Node::default());
                    let c = trie.len() - 1;
                    trie[at].children.insert(x, c);
                    c
                }
            };
        }
        trie[at].terminal = true;
    }

    // Every subset of `t` is a subsequence of its sorted elements.
    fn walk(trie: &[Node], at: usize, t: &[u32], from: usize, path: &mut Vec<u32>, out: &mut Vec<FiniteSet>) {
        if trie[at].terminal && path.len() < t.len() {
            out.push(FiniteSet::from_sorted_unchecked(path.clone()));
        }
        for i in from..t.len() {
            if let Some(&c) = trie[at].children.get(&t[i]) {
                path.push(t[i]);
                walk(trie, c, t, i + 1, path, out);
                path.pop();
            }
        }
    }

    let mut violations = Vec::new();
    let mut seen = HashSet::new();
    for t in family {
        if !seen.insert(t.clone()) {
            continue;
        }
        let mut subs = Vec::new();
        walk(&trie, 0, t.as_slice(), 0, &mut Vec::new(), &mut subs);
        violations.extend(subs.into_iter().map(|s| (s, t.clone())));
    }
    violations
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub sperner_ok: bool,
    pub violations: Vec<(FiniteSet, FiniteSet)>,
    pub enumerated: usize,
    /// Sampled infinite subsets of the ground set whose front was checked.
    pub front_samples: usize,
    pub front_failures: Vec<String>,
}

/// `(B2)` exhaustively on the truncation to `{1..n}`, `(B3)` on `samples`
/// seeded random subsets of the ground set.
pub fn check_axioms(b: &BarrierDescriptor, n: u32, samples: usize, seed: u64) -> AxiomReport {
    let family = b.enumerate(n);
    let violations = sperner_violations(&family);
    let ground = b.ground();
    let pool = ground.take(40).into_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..samples {
        let len = rng.gen_range(0..12);
        let picked: Vec<u32> = pool.iter().copied().filter(|_| rng.gen_bool(0.5)).take(len).collect();
        let tail_start = picked.last().copied().unwrap_or(0);
        let m = SetGenerator::prefix_then(FiniteSet::from_sorted_unchecked(picked), ground.after(tail_start))
            .expect("prefix lies below the tail");
        match b.front(&m, DEFAULT_FUEL) {
            Ok(f) => {
                let is_prefix = f.iter().zip(m.iter()).all(|(a, c)| a == c);
                if !is_prefix || !b.contains_unchecked(f.as_slice()) {
                    failures.push(format!("front {f} along {m:?} is not a member initial segment"));
                }
            }
            Err(e) => failures.push(format!("{m:?}: {e}")),
        }
    }
    AxiomReport {
        sperner_ok: violations.is_empty(),
        violations,
        enumerated: family.len(),
        front_samples: samples,
        front_failures: failures,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RankMethod {
    Structural,
    Empirical,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankReport {
    #[serde(serialize_with = "ser_display")]
    pub rank: Ordinal,
    pub confirmed: bool,
    pub method: RankMethod,
    pub probe_bound: Option<u32>,
}

fn ser_display<S: serde::Serializer>(o: &Ordinal, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(o)
}

/// What the descriptor algebra tells us about rank without enumerating.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    /// Equal to `[N]^k` on its ground set.
    Cube(u32),
    /// Every restriction to an infinite set has members of unbounded size.
    Unbounded,
    Unknown,
}

fn shape(b: &BarrierDescriptor) -> Shape {
    match b {
        BarrierDescriptor::Cube(k) => Shape::Cube(*k),
        BarrierDescriptor::Schreier => Shape::Unbounded,
        BarrierDescriptor::Restrict { base, .. } | BarrierDescriptor::Associated(base) => shape(base),
        BarrierDescriptor::Quotient { base, s } => quotient_shape(base, s.as_slice()),
        BarrierDescriptor::Sum(parts) => {
            let mut total = 0;
            let mut unknown = false;
            for p in parts {
                match shape(p) {
                    Shape::Unbounded => return Shape::Unbounded,
                    Shape::Cube(k) => total += k,
                    Shape::Unknown => unknown = true,
                }
            }
            if unknown {
                Shape::Unknown
            } else {
                Shape::Cube(total)
            }
        }
    }
}

/// Shape of `base_s` given that `s` passed the quotient precondition.
fn quotient_shape(base: &BarrierDescriptor, s: &[u32]) -> Shape {
    match base {
        BarrierDescriptor::Cube(k) => Shape::Cube(k - s.len() as u32),
        BarrierDescriptor::Schreier => Shape::Cube(s[0] - s.len() as u32),
        BarrierDescriptor::Restrict { base, .. } => quotient_shape(base, s),
        BarrierDescriptor::Quotient { base, s: t } => {
            let mut joined = t.as_slice().to_vec();
            joined.extend_from_slice(s);
            quotient_shape(base, &joined)
        }
        BarrierDescriptor::Associated(inner) => {
            let ground = inner.ground();
            let relabelled: Vec<u32> = s.iter().map(|&i| ground.nth(i as usize)).collect();
            quotient_shape(inner, &relabelled)
        }
        BarrierDescriptor::Sum(_) => Shape::Unknown,
    }
}

/// Finite truncation of `𝔐_k(𝓑)`: minima of the size-`k` members inside `{1..n}`.
pub fn frak_m(family: &[FiniteSet], k: usize) -> Vec<u32> {
    let mut mins: Vec<u32> = family.iter().filter(|s| s.len() == k).filter_map(|s| s.min()).collect();
    mins.sort_unstable();
    mins.dedup();
    mins
}

/// Rank classification from a finite enumeration of the associated barrier.
///
/// With `d` the largest member size seen, the rank is `ω^d` exactly when
/// every member has size at most `d` and some tail `[ℕ/n₀]^d` lies inside the
/// barrier. On the truncation to `{1..n}` we take `n₀` as the largest minimum
/// of a missing `d`-subset, require every smaller member to start at or below
/// `n₀`, and call the verdict confirmed when the window above `n₀` holds at
/// least `2d` elements. Otherwise the probe is doubled once; growth of `d`
/// is reported as `≥ω^ω`, unconfirmed.
pub fn classify_empirical(b: &BarrierDescriptor, n: u32) -> RankReport {
    let assoc = match b {
        BarrierDescriptor::Associated(_) => b.clone(),
        _ => BarrierDescriptor::associated(b.clone()),
    };
    let probe = |n: u32| -> (u32, bool) {
        let family = assoc.enumerate(n);
        let d = family.iter().map(|s| s.len()).max().unwrap_or(0);
        if d == 0 {
            return (0, false);
        }
        let members: HashSet<&[u32]> = family.iter().filter(|s| s.len() == d).map(|s| s.as_slice()).collect();
        let mut n0 = 0;
        for_each_subset(n, d, |t| {
            if !members.contains(t) {
                n0 = n0.max(t[0]);
            }
        });
        let small_ok = (1..d).all(|j| frak_m(&family, j).iter().all(|&m| m <= n0));
        let confirmed = small_ok && n >= n0 + 2 * d as u32;
        (d as u32, confirmed)
    };
    let (d, confirmed) = probe(n);
    if confirmed {
        return RankReport {
            rank: Ordinal::omega_pow(d),
            confirmed: true,
            method: RankMethod::Empirical,
            probe_bound: Some(n),
        };
    }
    let (d2, confirmed2) = probe(2 * n);
    let rank = if d2 > d { Ordinal::AtLeastOmegaOmega } else { Ordinal::omega_pow(d2.max(1)) };
    RankReport {
        rank,
        confirmed: confirmed2 && d2 == d,
        method: RankMethod::Empirical,
        probe_bound: Some(2 * n),
    }
}

/// Calls `f` on every `k`-subset of `{1..n}` in increasing lexicographic order.
pub(crate) fn for_each_subset(n: u32, k: usize, mut f: impl FnMut(&[u32])) {
    if k == 0 {
        return;
    }
    for idx in Subsets::new(n as usize, k) {
        let t: Vec<u32> = idx.iter().map(|&i| i as u32 + 1).collect();
        f(&t);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::set;

    fn cube(k: u32) -> BarrierDescriptor {
        BarrierDescriptor::cube(k).unwrap()
    }

    #[test]
    fn membership() {
        let s = BarrierDescriptor::Schreier;
        assert!(s.contains(&set(&[2, 4])).unwrap());
        assert!(!cube(3).contains(&set(&[1, 2])).unwrap());
        let q = BarrierDescriptor::quotient(s.clone(), set(&[3])).unwrap();
        assert!(q.contains(&set(&[5, 9])).unwrap());
        assert!(!q.contains(&set(&[2, 9])).unwrap());
        assert!(s.contains(&FiniteSet::empty()).is_err());
    }

    #[test]
    fn fronts() {
        assert_eq!(cube(2).front(&SetGenerator::evens(), DEFAULT_FUEL).unwrap(), set(&[2, 4]));
        let s = BarrierDescriptor::Schreier;
        assert_eq!(s.front(&SetGenerator::CofiniteAfter(2), DEFAULT_FUEL).unwrap(), set(&[3, 4, 5]));
        assert_eq!(s.front(&SetGenerator::odds(), DEFAULT_FUEL).unwrap(), set(&[1]));
        assert!(matches!(
            s.front(&SetGenerator::CofiniteAfter(100), 10),
            Err(Error::NoFrontFound { fuel: 10 })
        ));
    }

    #[test]
    fn enumerations() {
        assert_eq!(cube(2).enumerate(3), vec![set(&[1, 2]), set(&[1, 3]), set(&[2, 3])]);
        assert_eq!(BarrierDescriptor::Schreier.enumerate(3), vec![set(&[1]), set(&[2, 3])]);
        let sum = BarrierDescriptor::sum(vec![cube(1), cube(1)]).unwrap();
        assert_eq!(sum.enumerate(3), cube(2).enumerate(3));
        let r = BarrierDescriptor::restrict(cube(2), SetGenerator::evens()).unwrap();
        assert_eq!(r.enumerate(6), vec![set(&[2, 4]), set(&[2, 6]), set(&[4, 6])]);
    }

    #[test]
    fn quotient_preconditions() {
        let q = BarrierDescriptor::quotient(cube(3), set(&[2])).unwrap();
        assert!(q.contains(&set(&[5, 9])).unwrap());
        assert!(BarrierDescriptor::quotient(cube(2), set(&[1, 2])).is_err());
        assert!(BarrierDescriptor::quotient(cube(2), set(&[1, 2, 3])).is_err());
        // {1} is a Schreier member, so nothing extends {1,5}
        assert!(BarrierDescriptor::quotient(BarrierDescriptor::Schreier, set(&[1, 5])).is_err());
        let r = BarrierDescriptor::restrict(cube(2), SetGenerator::evens()).unwrap();
        assert!(BarrierDescriptor::quotient(r, set(&[3])).is_err());
    }

    #[test]
    fn associated_relabels() {
        let r = BarrierDescriptor::restrict(cube(2), SetGenerator::evens()).unwrap();
        let a = BarrierDescriptor::associated(r);
        for n in 1..=20 {
            assert_eq!(a.enumerate(n), cube(2).enumerate(n));
        }
    }

    #[test]
    fn sperner() {
        let v = sperner_violations(&[set(&[1]), set(&[1, 2])]);
        assert_eq!(v, vec![(set(&[1]), set(&[1, 2]))]);
        assert!(check_axioms(&cube(2), 10, 50, 1).sperner_ok);
        let report = check_axioms(&BarrierDescriptor::Schreier, 12, 50, 1);
        assert!(report.sperner_ok && report.front_failures.is_empty());
    }

    #[test]
    fn ranks() {
        assert_eq!(cube(1).rank().rank, Ordinal::omega_pow(1));
        assert_eq!(cube(4).rank().rank, Ordinal::omega_pow(4));
        assert_eq!(BarrierDescriptor::Schreier.rank().rank, Ordinal::AtLeastOmegaOmega);
        let sum = BarrierDescriptor::sum(vec![cube(2), cube(3)]).unwrap();
        assert_eq!(sum.rank().rank, Ordinal::omega_pow(5));
        let q = BarrierDescriptor::quotient(BarrierDescriptor::Schreier, set(&[4, 5])).unwrap();
        assert_eq!(q.rank().rank, Ordinal::omega_pow(2));
    }

    #[test]
    fn empirical_classifier() {
        for k in 1..=4 {
            let r = classify_empirical(&cube(k), 2 * k + 4);
            assert_eq!(r.rank, Ordinal::omega_pow(k));
            assert!(r.confirmed);
        }
        // the quotient of a sum falls back to the classifier
        let sum = BarrierDescriptor::sum(vec![cube(1), cube(2)]).unwrap();
        let q = BarrierDescriptor::quotient(sum, set(&[1])).unwrap();
        let r = q.rank();
        assert_eq!(r.method, RankMethod::Empirical);
        assert_eq!(r.rank, Ordinal::omega_pow(2));
        assert!(r.confirmed);
    }

    #[test]
    fn json_schema() {
        let b: BarrierDescriptor = serde_json::from_str(
            r#"{"type":"quotient","base":{"type":"schreier"},"s":[3]}"#,
        )
        .unwrap();
        assert!(b.contains(&set(&[5, 9])).unwrap());
        assert!(serde_json::from_str::<BarrierDescriptor>(r#"{"type":"cube","k":0}"#).is_err());
        let back = serde_json::to_string(&b).unwrap();
        assert_eq!(serde_json::from_str::<BarrierDescriptor>(&back).unwrap(), b);
    }

    #[test]
    fn subsets_in_order() {
        let mut seen = Vec::new();
        for_each_subset(4, 2, |t| seen.push(t.to_vec()));
        assert_eq!(seen, vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]]);
    }
}
