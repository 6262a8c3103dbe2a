//! Finite subsets of the positive integers and a closed algebra of infinite
//! increasing sets.
//!
//! Naturals start at 1 throughout the crate; `0` is rejected everywhere.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// A finite, strictly increasing set of positive integers.
///
/// Serialized as a JSON array of integers. The empty set is constructible but
/// every barrier element is nonempty.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct FiniteSet(Vec<u32>);

impl FiniteSet {
    pub fn new(elements: Vec<u32>) -> Result<Self> {
        if elements.contains(&0) {
            return invalid("0 is not a natural number here");
        }
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return invalid(format!("{elements:?} is not strictly increasing"));
        }
        Ok(FiniteSet(elements))
    }

    /// Sorts and dedups before validating.
    pub fn from_unsorted(mut elements: Vec<u32>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        Self::new(elements)
    }

    pub fn empty() -> Self {
        FiniteSet(Vec::new())
    }

    /// `{lo, lo+1, ..., hi}`; empty when `lo > hi`.
    pub fn interval(lo: u32, hi: u32) -> Self {
        assert!(lo >= 1, "naturals start at 1");
        FiniteSet((lo..=hi).collect())
    }

    /// Callers guarantee the invariant.
    pub(crate) fn from_sorted_unchecked(elements: Vec<u32>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(elements.iter().all(|&x| x >= 1));
        FiniteSet(elements)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &FiniteSet) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|x| it.by_ref().any(|y| y == x))
    }

    /// `s ⊑ t`: `self` is an initial segment of `other`.
    pub fn is_initial_segment_of(&self, other: &FiniteSet) -> bool {
        other.0.starts_with(&self.0)
    }

    /// `s < t`: every element of `self` is below every element of `other`.
    /// Either side empty makes the relation vacuously true.
    pub fn is_below(&self, other: &FiniteSet) -> bool {
        match (self.max(), other.min()) {
            (Some(a), Some(b)) => a < b,
            _ => true,
        }
    }

    /// `s⌢t`; requires `self < other`.
    pub fn concat(&self, other: &FiniteSet) -> Result<FiniteSet> {
        if !self.is_below(other) {
            return invalid(format!("{self} is not below {other}"));
        }
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Ok(FiniteSet(v))
    }

    pub fn union(&self, other: &FiniteSet) -> FiniteSet {
        let mut v: Vec<u32> = self.0.iter().chain(other.0.iter()).copied().collect();
        v.sort_unstable();
        v.dedup();
        FiniteSet(v)
    }

    /// Elements strictly greater than `n`, written `s/n`.
    pub fn after(&self, n: u32) -> FiniteSet {
        FiniteSet(self.0.iter().copied().filter(|&x| x > n).collect())
    }

    pub fn prefix(&self, len: usize) -> FiniteSet {
        FiniteSet(self.0[..len.min(self.0.len())].to_vec())
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }

    /// The lexicographic order on finite sets: `s <_lex t` iff
    /// `min(s △ t) ∈ s`. Note that a proper extension sorts *before* its
    /// initial segment.
    pub fn lex_cmp(&self, other: &FiniteSet) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let mut i = 0;
        while i < a.len() && i < b.len() && a[i] == b[i] {
            i += 1;
        }
        match (a.get(i), b.get(i)) {
            (None, None) => Ordering::Equal,
            // the first difference is an element of `b` only
            (None, Some(_)) => Ordering::Greater,
            (Some(_), None) => Ordering::Less,
            (Some(x), Some(y)) => x.cmp(y),
        }
    }
}

impl TryFrom<Vec<u32>> for FiniteSet {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        FiniteSet::new(v)
    }
}

impl From<FiniteSet> for Vec<u32> {
    fn from(s: FiniteSet) -> Self {
        s.0
    }
}

impl fmt::Display for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Convenience constructor for literals in tests and examples.
///
/// Panics on invalid input.
pub fn set(elements: &[u32]) -> FiniteSet {
    FiniteSet::new(elements.to_vec()).expect("invalid set literal")
}

/// The three order relations between two nonempty finite sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SetRelation {
    /// `max(s) < min(t)`
    pub less: bool,
    #[serde(serialize_with = "ser_ordering")]
    pub lex: Ordering,
    /// `s ⊑ t`
    pub initial_segment: bool,
}

fn ser_ordering<S: serde::Serializer>(o: &Ordering, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(match o {
        Ordering::Less => "less",
        Ordering::Equal => "equal",
        Ordering::Greater => "greater",
    })
}

pub fn compare_sets(s: &FiniteSet, t: &FiniteSet) -> Result<SetRelation> {
    if s.is_empty() || t.is_empty() {
        return invalid("compare_sets needs nonempty sets");
    }
    Ok(SetRelation {
        less: s.is_below(t),
        lex: s.lex_cmp(t),
        initial_segment: s.is_initial_segment_of(t),
    })
}

/// An infinite strictly increasing subset of ℕ, described intensionally.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGenerator", into = "RawGenerator")]
pub enum SetGenerator {
    /// `{n+1, n+2, ...}`
    CofiniteAfter(u32),
    /// `{start, start+step, ...}`
    Arithmetic { start: u32, step: u32 },
    /// A finite prefix followed by a generator whose elements all exceed it.
    PrefixThen { prefix: FiniteSet, tail: Box<SetGenerator> },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum RawGenerator {
    CofiniteAfter { n: u32 },
    Arithmetic { start: u32, step: u32 },
    ExplicitPrefixThen { prefix: FiniteSet, tail: Box<SetGenerator> },
}

impl TryFrom<RawGenerator> for SetGenerator {
    type Error = Error;
    fn try_from(raw: RawGenerator) -> Result<Self> {
        match raw {
            RawGenerator::CofiniteAfter { n } => Ok(SetGenerator::CofiniteAfter(n)),
            RawGenerator::Arithmetic { start, step } => SetGenerator::arithmetic(start, step),
            RawGenerator::ExplicitPrefixThen { prefix, tail } => SetGenerator::prefix_then(prefix, *tail),
        }
    }
}

impl From<SetGenerator> for RawGenerator {
    fn from(g: SetGenerator) -> Self {
        match g {
            SetGenerator::CofiniteAfter(n) => RawGenerator::CofiniteAfter { n },
            SetGenerator::Arithmetic { start, step } => RawGenerator::Arithmetic { start, step },
            SetGenerator::PrefixThen { prefix, tail } => RawGenerator::ExplicitPrefixThen { prefix, tail },
        }
    }
}

impl SetGenerator {
    pub fn naturals() -> Self {
        SetGenerator::CofiniteAfter(0)
    }

    pub fn evens() -> Self {
        SetGenerator::Arithmetic { start: 2, step: 2 }
    }

    pub fn odds() -> Self {
        SetGenerator::Arithmetic { start: 1, step: 2 }
    }

    pub fn arithmetic(start: u32, step: u32) -> Result<Self> {
        if start == 0 || step == 0 {
            return invalid("arithmetic generator needs start >= 1 and step >= 1");
        }
        Ok(SetGenerator::Arithmetic { start, step })
    }

    pub fn prefix_then(prefix: FiniteSet, tail: SetGenerator) -> Result<Self> {
        if let Some(m) = prefix.max() {
            if tail.first() <= m {
                return invalid(format!(
                    "prefix {prefix} must lie below every tail element (tail starts at {})",
                    tail.first()
                ));
            }
        }
        if prefix.is_empty() {
            return Ok(tail);
        }
        Ok(SetGenerator::PrefixThen { prefix, tail: Box::new(tail) })
    }

    pub fn first(&self) -> u32 {
        match self {
            SetGenerator::CofiniteAfter(n) => n + 1,
            SetGenerator::Arithmetic { start, .. } => *start,
            SetGenerator::PrefixThen { prefix, tail } => prefix.min().unwrap_or_else(|| tail.first()),
        }
    }

    pub fn contains(&self, x: u32) -> bool {
        match self {
            SetGenerator::CofiniteAfter(n) => x > *n,
            SetGenerator::Arithmetic { start, step } => x >= *start && (x - start).is_multiple_of(*step),
            SetGenerator::PrefixThen { prefix, tail } => prefix.contains(x) || tail.contains(x),
        }
    }

    /// The generated set with everything `<= n` removed.
    pub fn after(&self, n: u32) -> SetGenerator {
        match self {
            SetGenerator::CofiniteAfter(m) => SetGenerator::CofiniteAfter((*m).max(n)),
            SetGenerator::Arithmetic { start, step } => {
                if *start > n {
                    self.clone()
                } else {
                    let k = (n - start) / step + 1;
                    SetGenerator::Arithmetic { start: start + k * step, step: *step }
                }
            }
            SetGenerator::PrefixThen { prefix, tail } => {
                let rest = prefix.after(n);
                let tail = tail.after(n);
                if rest.is_empty() {
                    tail
                } else {
                    SetGenerator::PrefixThen { prefix: rest, tail: Box::new(tail) }
                }
            }
        }
    }

    pub fn iter(&self) -> GeneratorIter<'_> {
        GeneratorIter { gen: self, pos: 0, tail: None }
    }

    pub fn take(&self, n: usize) -> FiniteSet {
        FiniteSet::from_sorted_unchecked(self.iter().take(n).collect())
    }

    /// 1-based `i`-th element (`m_i`).
    pub fn nth(&self, i: usize) -> u32 {
        assert!(i >= 1, "enumeration is 1-based");
        match self {
            SetGenerator::CofiniteAfter(n) => n + i as u32,
            SetGenerator::Arithmetic { start, step } => start + (i as u32 - 1) * step,
            SetGenerator::PrefixThen { prefix, tail } => {
                if i <= prefix.len() {
                    prefix.as_slice()[i - 1]
                } else {
                    tail.nth(i - prefix.len())
                }
            }
        }
    }

    /// 1-based position of `x` in the enumeration, if generated.
    pub fn position(&self, x: u32) -> Option<usize> {
        match self {
            SetGenerator::CofiniteAfter(n) => (x > *n).then(|| (x - n) as usize),
            SetGenerator::Arithmetic { start, step } => {
                (x >= *start && (x - start).is_multiple_of(*step)).then(|| ((x - start) / step) as usize + 1)
            }
            SetGenerator::PrefixThen { prefix, tail } => match prefix.as_slice().binary_search(&x) {
                Ok(i) => Some(i + 1),
                Err(_) => tail.position(x).map(|p| p + prefix.len()),
            },
        }
    }

    /// Elements of the generated set that are `<= n`.
    pub fn up_to(&self, n: u32) -> FiniteSet {
        FiniteSet::from_sorted_unchecked(self.iter().take_while(|&x| x <= n).collect())
    }
}

impl fmt::Debug for SetGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetGenerator::CofiniteAfter(n) => write!(f, "N/{n}"),
            SetGenerator::Arithmetic { start, step } => write!(f, "{{{start}+{step}i}}"),
            SetGenerator::PrefixThen { prefix, tail } => write!(f, "{prefix}⌢{tail:?}"),
        }
    }
}

pub struct GeneratorIter<'a> {
    gen: &'a SetGenerator,
    pos: usize,
    tail: Option<Box<GeneratorIter<'a>>>,
}

impl Iterator for GeneratorIter<'_> {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        match self.gen {
            SetGenerator::CofiniteAfter(n) => {
                self.pos += 1;
                Some(n + self.pos as u32)
            }
            SetGenerator::Arithmetic { start, step } => {
                let x = start + self.pos as u32 * step;
                self.pos += 1;
                Some(x)
            }
            SetGenerator::PrefixThen { prefix, tail } => {
                if self.pos < prefix.len() {
                    self.pos += 1;
                    return Some(prefix.as_slice()[self.pos - 1]);
                }
                self.tail.get_or_insert_with(|| Box::new(tail.iter())).next()
            }
        }
    }
}

/// The `k`-subsets of `{0, …, n-1}` as sorted index vectors, in
/// lexicographic order.
#[derive(Debug, Clone)]
pub struct Subsets {
    n: usize,
    cur: Option<Vec<usize>>,
}

impl Subsets {
    pub fn new(n: usize, k: usize) -> Self {
        Subsets { n, cur: (k <= n).then(|| (0..k).collect()) }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.clone()?;
        let cur = self.cur.as_mut().expect("checked above");
        let k = cur.len();
        let mut i = k;
        while i > 0 && cur[i - 1] == self.n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            self.cur = None;
        } else {
            cur[i - 1] += 1;
            for j in i..k {
                cur[j] = cur[j - 1] + 1;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compare_examples() {
        let r = compare_sets(&set(&[1, 2]), &set(&[3, 5])).unwrap();
        assert!(r.less && r.lex == Ordering::Less && !r.initial_segment);

        let r = compare_sets(&set(&[1, 2]), &set(&[1, 3])).unwrap();
        assert!(!r.less && r.lex == Ordering::Less && !r.initial_segment);

        let r = compare_sets(&set(&[1, 2]), &set(&[1, 2, 5])).unwrap();
        assert!(r.initial_segment);
        // min(s △ t) = 5 ∈ t
        assert_eq!(r.lex, Ordering::Greater);

        assert!(compare_sets(&FiniteSet::empty(), &set(&[1])).is_err());
    }

    #[test]
    fn rejects_bad_sets() {
        assert!(FiniteSet::new(vec![0, 1]).is_err());
        assert!(FiniteSet::new(vec![2, 1]).is_err());
        assert!(FiniteSet::new(vec![1, 1]).is_err());
        assert_eq!(FiniteSet::from_unsorted(vec![3, 1, 3]).unwrap(), set(&[1, 3]));
    }

    #[test]
    fn generators() {
        assert_eq!(SetGenerator::evens().take(3), set(&[2, 4, 6]));
        assert_eq!(SetGenerator::CofiniteAfter(2).take(3), set(&[3, 4, 5]));
        let g = SetGenerator::prefix_then(set(&[1, 4]), SetGenerator::evens().after(4)).unwrap();
        assert_eq!(g.take(4), set(&[1, 4, 6, 8]));
        assert_eq!(g.nth(3), 6);
        assert_eq!(g.position(8), Some(4));
        assert_eq!(g.position(2), None);
        assert!(SetGenerator::prefix_then(set(&[5]), SetGenerator::naturals()).is_err());
        assert_eq!(SetGenerator::odds().after(4).first(), 5);
        assert_eq!(g.after(1).take(2), set(&[4, 6]));
        assert!(SetGenerator::arithmetic(0, 1).is_err());
    }

    #[test]
    fn subsets() {
        let all: Vec<Vec<usize>> = Subsets::new(4, 2).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 1]);
        assert_eq!(all[5], vec![2, 3]);
        assert_eq!(Subsets::new(3, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        assert_eq!(Subsets::new(2, 3).count(), 0);
    }

    #[test]
    fn generator_json() {
        let g: SetGenerator = serde_json::from_str(r#"{"kind":"arithmetic","start":2,"step":2}"#).unwrap();
        assert_eq!(g, SetGenerator::evens());
        let g: SetGenerator = serde_json::from_str(
            r#"{"kind":"explicit-prefix-then","prefix":[1,3],"tail":{"kind":"cofinite-after","n":9}}"#,
        )
        .unwrap();
        assert_eq!(g.take(3), set(&[1, 3, 10]));
        let bad = serde_json::from_str::<SetGenerator>(
            r#"{"kind":"explicit-prefix-then","prefix":[1,30],"tail":{"kind":"cofinite-after","n":9}}"#,
        );
        assert!(bad.is_err());
        let back = serde_json::to_string(&g).unwrap();
        assert_eq!(serde_json::from_str::<SetGenerator>(&back).unwrap(), g);
    }
}
