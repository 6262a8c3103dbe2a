//! Exact norms on finitely supported sequences.
//!
//! The main family is the sup-family norm
//! `‖x‖ = sup({|a_i|} ∪ ⋃_terms {w · Σ_{i∈s} |a_i| : s an m-set of admissible indices})`,
//! which covers the weighted pair/8-set norm, the `(m,n)` family, and
//! index-filtered variants. Values are computed by sorting absolute entries
//! and summing the top `m` admissible ones per term.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::ratio::{self, frac, int, Rational};
use crate::sets::FiniteSet;

/// A finitely supported vector; zero entries are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Vector(BTreeMap<u32, Rational>);

impl Vector {
    pub fn zero() -> Self {
        Vector(BTreeMap::new())
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, Rational)>) -> Result<Self> {
        let mut v = Vector::zero();
        for (i, a) in pairs {
            if i == 0 {
                return invalid("vector indices start at 1");
            }
            v.set(i, a);
        }
        Ok(v)
    }

    /// `Σ coeffs[j] e_{j+1}`.
    pub fn from_coeffs(coeffs: &[Rational]) -> Self {
        let mut v = Vector::zero();
        for (j, a) in coeffs.iter().enumerate() {
            v.set(j as u32 + 1, a.clone());
        }
        v
    }

    pub fn unit(i: u32) -> Self {
        Vector::from_pairs([(i, ratio::one())]).expect("index >= 1")
    }

    /// `Σ_{i∈s} e_i`
    pub fn indicator(s: &FiniteSet) -> Self {
        Vector(s.iter().map(|i| (i, ratio::one())).collect())
    }

    pub fn set(&mut self, i: u32, a: Rational) {
        if a.is_zero() {
            self.0.remove(&i);
        } else {
            self.0.insert(i, a);
        }
    }

    pub fn get(&self, i: u32) -> Rational {
        self.0.get(&i).cloned().unwrap_or_else(ratio::zero)
    }

    pub fn support(&self) -> FiniteSet {
        FiniteSet::from_sorted_unchecked(self.0.keys().copied().collect())
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.0.iter().map(|(&i, a)| (i, a))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Vector::from_pairs(self.0.iter().map(|(&i, a)| (i, a * c))).expect("indices already valid")
    }

    pub fn add(&self, other: &Vector) -> Self {
        let mut v = self.clone();
        for (&i, a) in &other.0 {
            let sum = v.get(i) + a;
            v.set(i, sum);
        }
        v
    }

    /// Moves the entry at the `j`-th support position to `positions[j]`.
    pub fn relocate(&self, positions: &FiniteSet) -> Result<Self> {
        if positions.len() != self.0.len() {
            return invalid("relocation needs one position per support element");
        }
        Vector::from_pairs(positions.iter().zip(self.0.values().cloned()))
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(i, a)| format!("{}e{i}", ratio::to_pq(a))).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Serialize for Vector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m: BTreeMap<u32, String> = self.0.iter().map(|(&i, a)| (i, ratio::to_pq(a))).collect();
        m.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Vector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Entry(#[serde(with = "ratio::pq")] Rational);
        let m: BTreeMap<u32, Entry> = BTreeMap::deserialize(d)?;
        Vector::from_pairs(m.into_iter().map(|(i, a)| (i, a.0))).map_err(serde::de::Error::custom)
    }
}

/// Restricts which indices a sup-family term may sum over.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IndexFilter {
    Even,
    Odd,
    Residue { modulus: u32, residue: u32 },
}

impl IndexFilter {
    pub fn admits(&self, i: u32) -> bool {
        match self {
            IndexFilter::Even => i.is_multiple_of(2),
            IndexFilter::Odd => i % 2 == 1,
            IndexFilter::Residue { modulus, residue } => i % modulus == *residue,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SupTerm {
    #[serde(with = "ratio::pq")]
    pub w: Rational,
    pub m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filter: Option<IndexFilter>,
}

impl SupTerm {
    pub fn new(w: Rational, m: u32) -> Self {
        SupTerm { w, m, filter: None }
    }

    fn admitted(&self, indices: &[u32]) -> usize {
        match &self.filter {
            None => indices.len(),
            Some(f) => indices.iter().filter(|&&i| f.admits(i)).count(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub enum NormSpec {
    /// The singleton term `(1, 1)` is always implicit.
    SupFamily(Vec<SupTerm>),
    Lp(u32),
    Sup,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum RawSpec {
    SupFamily { terms: Vec<SupTerm> },
    Lp { p: u32 },
    Sup,
}

impl TryFrom<RawSpec> for NormSpec {
    type Error = Error;
    fn try_from(raw: RawSpec) -> Result<Self> {
        match raw {
            RawSpec::SupFamily { terms } => NormSpec::sup_family(terms),
            RawSpec::Lp { p } => NormSpec::lp(p),
            RawSpec::Sup => Ok(NormSpec::Sup),
        }
    }
}

impl From<NormSpec> for RawSpec {
    fn from(n: NormSpec) -> Self {
        match n {
            NormSpec::SupFamily(terms) => RawSpec::SupFamily { terms },
            NormSpec::Lp(p) => RawSpec::Lp { p },
            NormSpec::Sup => RawSpec::Sup,
        }
    }
}

impl NormSpec {
    pub fn sup_family(terms: Vec<SupTerm>) -> Result<Self> {
        for (i, t) in terms.iter().enumerate() {
            if !t.w.is_positive() || t.w > ratio::one() {
                return invalid(format!("term {i}: weight {} is not in (0,1]", ratio::to_pq(&t.w)));
            }
            if t.m == 0 {
                return invalid(format!("term {i}: cardinality must be positive"));
            }
            if let Some(IndexFilter::Residue { modulus, residue }) = &t.filter {
                if *modulus == 0 || residue >= modulus {
                    return invalid(format!("term {i}: residue filter needs 0 <= residue < modulus"));
                }
            }
        }
        Ok(NormSpec::SupFamily(terms))
    }

    pub fn lp(p: u32) -> Result<Self> {
        if p == 0 {
            return invalid("l_p needs p >= 1");
        }
        Ok(NormSpec::Lp(p))
    }

    /// `sup(|a_i|, 3/4 · pair sums, 9/16 · 8-set sums)`.
    pub fn weighted_pair_octet() -> Self {
        NormSpec::SupFamily(vec![SupTerm::new(frac(3, 4), 2), SupTerm::new(frac(9, 16), 8)])
    }

    /// `‖·‖_(m,n)`: weights `(m+1)/2m` on `m`-sets and `(n+1)/2n` on `n`-sets.
    pub fn mn(m: u32, n: u32) -> Result<Self> {
        let w = |k: u32| frac(k as i64 + 1, 2 * k as i64);
        NormSpec::sup_family(vec![SupTerm::new(w(m), m), SupTerm::new(w(n), n)])
    }

    /// `max(|a_i|, 3/4 (|a_i| + |a_j|) for even i ≠ j)`.
    pub fn even_pair() -> Self {
        NormSpec::SupFamily(vec![SupTerm { w: frac(3, 4), m: 2, filter: Some(IndexFilter::Even) }])
    }

    pub fn has_filters(&self) -> bool {
        matches!(self, NormSpec::SupFamily(t) if t.iter().any(|t| t.filter.is_some()))
    }

    /// Evaluates over groups of indices sharing one absolute value.
    pub(crate) fn eval_groups(&self, groups: &mut [Group<'_>]) -> Evaluation {
        match self {
            NormSpec::Sup => Evaluation::exact(groups.iter().map(|g| g.value.clone()).max().unwrap_or_default()),
            NormSpec::Lp(p) => {
                let mut sum = ratio::zero();
                for g in groups.iter() {
                    sum += num_traits::pow(g.value.clone(), *p as usize) * int(g.indices.len() as i64);
                }
                nth_root(&sum, *p)
            }
            NormSpec::SupFamily(terms) => {
                Evaluation::exact(sup_family_small(terms, groups).unwrap_or_else(|| sup_family_big(terms, groups)))
            }
        }
    }
}

/// Each term takes the `m` largest admitted entries.
fn sup_family_big(terms: &[SupTerm], groups: &mut [Group<'_>]) -> Rational {
    groups.sort_by(|a, b| b.value.cmp(&a.value));
    let mut best = groups.first().map(|g| g.value.clone()).unwrap_or_default();
    for t in terms {
        let mut remaining = t.m as usize;
        let mut sum = ratio::zero();
        for g in groups.iter() {
            if remaining == 0 {
                break;
            }
            let take = t.admitted(g.indices).min(remaining);
            if take > 0 {
                sum += &g.value * int(take as i64);
                remaining -= take;
            }
        }
        let v = sum * &t.w;
        if v > best {
            best = v;
        }
    }
    best
}

/// The sup-family evaluation in `i128` over a common denominator. `None`
/// when a value does not fit, so the caller falls back to big rationals.
fn sup_family_small(terms: &[SupTerm], groups: &[Group<'_>]) -> Option<Rational> {
    let small = |r: &Rational| Some((r.numer().to_i128()?, r.denom().to_i128()?));
    let lcm = |a: i128, b: i128| a.checked_mul(b / a.gcd(&b));
    let mut den: i128 = 1;
    let mut values = Vec::with_capacity(groups.len());
    for g in groups {
        let (n, d) = small(&g.value)?;
        den = lcm(den, d)?;
        values.push((n, d, g.indices));
    }
    let mut wden: i128 = 1;
    for t in terms {
        wden = lcm(wden, small(&t.w)?.1)?;
    }
    let mut scaled: Vec<(i128, &[u32])> =
        values.iter().map(|&(n, d, ix)| Some((n.checked_mul(den / d)?, ix))).collect::<Option<_>>()?;
    scaled.sort_by_key(|g| std::cmp::Reverse(g.0));
    let mut best = scaled.first().map_or(0, |g| g.0).checked_mul(wden)?;
    for t in terms {
        let (wn, wd) = small(&t.w)?;
        let mut remaining = t.m as usize;
        let mut sum: i128 = 0;
        for &(v, ix) in &scaled {
            if remaining == 0 {
                break;
            }
            let take = t.admitted(ix).min(remaining);
            if take > 0 {
                sum = sum.checked_add(v.checked_mul(take as i128)?)?;
                remaining -= take;
            }
        }
        let v = sum.checked_mul(wn.checked_mul(wden / wd)?)?;
        if v > best {
            best = v;
        }
    }
    let total = den.checked_mul(wden)?;
    let g = best.gcd(&total);
    Some(Rational::new_raw(BigInt::from(best / g), BigInt::from(total / g)))
}

/// A run of indices whose entries share the absolute value `value`.
#[derive(Debug, Clone)]
pub(crate) struct Group<'a> {
    pub value: Rational,
    pub indices: &'a [u32],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub value: Rational,
    /// False only for `ℓ_p` roots that are not rational.
    pub exact: bool,
}

impl Evaluation {
    fn exact(value: Rational) -> Self {
        Evaluation { value, exact: true }
    }
}

/// Bits of precision for inexact `ℓ_p` roots.
const ROOT_BITS: u32 = 48;

fn nth_root(x: &Rational, p: u32) -> Evaluation {
    if p == 1 || x.is_zero() {
        return Evaluation::exact(x.clone());
    }
    let (n, d) = (x.numer(), x.denom());
    let (rn, rd) = (n.nth_root(p), d.nth_root(p));
    if num_traits::pow(rn.clone(), p as usize) == *n && num_traits::pow(rd.clone(), p as usize) == *d {
        return Evaluation::exact(Rational::new(rn, rd));
    }
    let scale = BigInt::one() << (ROOT_BITS * p);
    let approx = (n * scale / d).nth_root(p);
    Evaluation { value: Rational::new(approx, BigInt::one() << ROOT_BITS), exact: false }
}

pub fn norm_eval_flagged(spec: &NormSpec, v: &Vector) -> Evaluation {
    let keys: Vec<u32> = v.0.keys().copied().collect();
    let mut groups: Vec<Group<'_>> =
        v.0.values().enumerate().map(|(j, a)| Group { value: a.abs(), indices: &keys[j..j + 1] }).collect();
    spec.eval_groups(&mut groups)
}

/// Exact for sup-family and `ℓ_∞`; `ℓ_p` roots may be truncated, see
/// [`norm_eval_flagged`].
pub fn norm_eval(spec: &NormSpec, v: &Vector) -> Rational {
    norm_eval_flagged(spec, v).value
}

/// `𝒳(s) = (Σ_{i∈s} e_i) / ‖Σ_{i∈s} e_i‖`.
pub fn block_vector(spec: &NormSpec, s: &FiniteSet) -> Result<Vector> {
    block_vector_with(|v| norm_eval(spec, v), s)
}

pub fn block_vector_with(eval: impl Fn(&Vector) -> Rational, s: &FiniteSet) -> Result<Vector> {
    if s.is_empty() {
        return invalid("block vectors need a nonempty support");
    }
    let ind = Vector::indicator(s);
    let n = eval(&ind);
    if n.is_zero() {
        return Err(Error::DegenerateBlock(s.clone()));
    }
    Ok(ind.scale(&n.recip()))
}

/// Reduced fractions in `[-1, 1]` with denominator at most `q`, ascending.
///
/// Nested in `q`, so grid sups are monotone under refinement.
pub fn farey_values(q: u32) -> Vec<Rational> {
    let mut v: Vec<Rational> = (1..=q.max(1) as i64)
        .flat_map(|d| (-d..=d).map(move |j| frac(j, d)))
        .collect();
    v.sort();
    v.dedup();
    v
}

/// Coefficient tuples used for grid sups over `[0,1]^k` (and, with
/// `signed`, the sign vertices `{-1,0,1}^k`).
///
/// Ordered coarse to fine: by the largest reduced denominator, nonnegative
/// tuples before signed ones, then lexicographically. Searches reporting the
/// first witness therefore report the simplest one.
pub fn coefficient_grid(k: usize, q: u32, signed: bool) -> Vec<Vec<Rational>> {
    let base: Vec<Rational> = (0..=q.max(1) as i64).map(|j| frac(j, q.max(1) as i64)).collect();
    let mut out = cartesian(&base, k);
    if signed {
        let signs = [int(-1), int(0), int(1)];
        out.extend(cartesian(&signs, k).into_iter().filter(|t| t.iter().any(Signed::is_negative)));
    }
    sort_grid(&mut out);
    out
}

/// All of `{j/q' : q' ≤ q, |j| ≤ q'}^k`, ordered as [`coefficient_grid`].
pub fn signed_grid(k: usize, q: u32) -> Vec<Vec<Rational>> {
    let mut out = cartesian(&farey_values(q), k);
    sort_grid(&mut out);
    out
}

fn sort_grid(grid: &mut [Vec<Rational>]) {
    let max_den = |t: &Vec<Rational>| t.iter().map(|a| a.denom().clone()).max().unwrap_or_else(BigInt::one);
    grid.sort_by(|a, b| {
        max_den(a)
            .cmp(&max_den(b))
            .then_with(|| a.iter().any(Signed::is_negative).cmp(&b.iter().any(Signed::is_negative)))
            .then_with(|| a.cmp(b))
    });
}

fn cartesian(values: &[Rational], k: usize) -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<Rational>> = vec![Vec::with_capacity(k)];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                values.iter().map(move |a| {
                    let mut t = t.clone();
                    t.push(a.clone());
                    t
                })
            })
            .collect();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DkReport {
    /// Lower bound for the sup over `[-1,1]^k`, attained on the grid.
    #[serde(with = "ratio::pq")]
    pub distance: Rational,
    #[serde(with = "ratio::pq_vec")]
    pub witness: Vec<Rational>,
    pub k: usize,
    pub grid_q: u32,
    pub points: usize,
}

/// `d_k(ρ₁, ρ₂)` over the nested grid of denominators up to `grid_q`, which
/// includes every sign vertex. The first maximizing point in grid order is
/// the witness.
pub fn dk_distance(
    rho1: impl Fn(&[Rational]) -> Rational,
    rho2: impl Fn(&[Rational]) -> Rational,
    k: usize,
    grid_q: u32,
) -> DkReport {
    let grid = signed_grid(k, grid_q);
    let mut best = ratio::zero();
    let mut witness = vec![ratio::zero(); k];
    for a in &grid {
        let d = (rho1(a) - rho2(a)).abs();
        if d > best {
            best = d;
            witness = a.clone();
        }
    }
    DkReport { distance: best, witness, k, grid_q, points: grid.len() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisConstantReport {
    #[serde(with = "ratio::pq")]
    pub constant: Rational,
    #[serde(with = "ratio::pq_vec")]
    pub witness: Vec<Rational>,
    pub prefix: usize,
    pub horizon: usize,
    pub grid_q: u32,
}

/// Grid lower bound for the basis constant of `(e_i)`: the largest
/// `‖Σ_{i≤m} a_i e_i‖ / ‖Σ_{i≤n} a_i e_i‖` with `m < n ≤ horizon`.
pub fn basis_constant(spec: &NormSpec, horizon: usize, grid_q: u32) -> Result<BasisConstantReport> {
    if horizon < 2 {
        return invalid("basis constant needs a horizon of at least 2");
    }
    let mut best = ratio::one();
    let mut witness = vec![ratio::zero(); horizon];
    let mut prefix = 0;
    for a in signed_grid(horizon, grid_q) {
        let full = norm_eval(spec, &Vector::from_coeffs(&a));
        if full.is_zero() {
            continue;
        }
        for m in 1..horizon {
            let r = norm_eval(spec, &Vector::from_coeffs(&a[..m])) / &full;
            if r > best {
                best = r;
                witness = a.clone();
                prefix = m;
            }
        }
    }
    Ok(BasisConstantReport { constant: best, witness, prefix, horizon, grid_q })
}

/// `‖a‖_n = max(|a₁ − a₂|, |a₂|/n)` on `ℝ²`.
pub fn degenerate_norm(n: u32, a: &[Rational]) -> Rational {
    let d = (&a[0] - &a[1]).abs();
    let t = a[1].abs() / int(n as i64);
    d.max(t)
}

/// The pointwise limit of [`degenerate_norm`]: `|a₁ − a₂|`.
pub fn degenerate_limit(a: &[Rational]) -> Rational {
    (&a[0] - &a[1]).abs()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    /// A nonzero grid point where the evaluator vanishes.
    #[serde(with = "opt_tuple")]
    pub positivity: Option<Vec<Rational>>,
    /// A scalar and point breaking `ρ(λa) = |λ| ρ(a)`.
    #[serde(with = "opt_tuple")]
    pub homogeneity: Option<Vec<Rational>>,
    /// Two points, concatenated, breaking `ρ(a+b) ≤ ρ(a) + ρ(b)`.
    #[serde(with = "opt_tuple")]
    pub triangle: Option<Vec<Rational>>,
    /// A unit vector `e_i` with `ρ(e_i) ≠ 1`.
    pub normalization: Option<usize>,
}

impl AxiomCheck {
    pub fn is_norm(&self) -> bool {
        self.is_seminorm() && self.positivity.is_none()
    }

    pub fn is_seminorm(&self) -> bool {
        self.homogeneity.is_none() && self.triangle.is_none()
    }

    /// Names of the failing axioms, in a fixed order.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.positivity.is_some() {
            out.push("positivity");
        }
        if self.homogeneity.is_some() {
            out.push("homogeneity");
        }
        if self.triangle.is_some() {
            out.push("triangle");
        }
        if self.normalization.is_some() {
            out.push("normalization");
        }
        out
    }
}

mod opt_tuple {
    use super::*;
    pub fn serialize<S: serde::Serializer>(v: &Option<Vec<Rational>>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match v {
            Some(t) => s.collect_seq(t.iter().map(ratio::to_pq)),
            None => s.serialize_none(),
        }
    }
}

/// Checks the norm axioms of `rho` on `ℝ^k` at the points of the nested
/// grid with denominators up to `grid_q`.
pub fn check_norm_axioms(rho: impl Fn(&[Rational]) -> Rational, k: usize, grid_q: u32) -> AxiomCheck {
    let grid = signed_grid(k, grid_q);
    let scalars = farey_values(grid_q);
    let mut check = AxiomCheck { positivity: None, homogeneity: None, triangle: None, normalization: None };
    for i in 0..k {
        let mut e = vec![ratio::zero(); k];
        e[i] = ratio::one();
        if rho(&e) != ratio::one() {
            check.normalization = Some(i + 1);
            break;
        }
    }
    let values: Vec<Rational> = grid.iter().map(|a| rho(a)).collect();
    for (a, v) in grid.iter().zip(&values) {
        if check.positivity.is_none() && v.is_zero() && a.iter().any(|x| !x.is_zero()) {
            check.positivity = Some(a.clone());
        }
        if check.homogeneity.is_none() {
            for l in &scalars {
                let la: Vec<Rational> = a.iter().map(|x| x * l).collect();
                if rho(&la) != l.abs() * v {
                    let mut w = vec![l.clone()];
                    w.extend(a.iter().cloned());
                    check.homogeneity = Some(w);
                    break;
                }
            }
        }
    }
    'outer: for (a, va) in grid.iter().zip(&values) {
        for (b, vb) in grid.iter().zip(&values) {
            let sum: Vec<Rational> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if rho(&sum) > va + vb {
                check.triangle = Some(a.iter().chain(b).cloned().collect());
                break 'outer;
            }
        }
    }
    check
}

/// A tabulated seminorm on `ℝ^k` at grid resolution `grid_q`, a finite
/// stand-in for a point of the space of normalized seminorms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeminormSample {
    pub k: usize,
    pub grid_q: u32,
    pub values: Vec<(Vec<Rational>, Rational)>,
}

impl SeminormSample {
    pub fn tabulate(rho: impl Fn(&[Rational]) -> Rational, k: usize, grid_q: u32) -> Self {
        let values = signed_grid(k, grid_q).into_iter().map(|a| {
            let v = rho(&a);
            (a, v)
        });
        SeminormSample { k, grid_q, values: values.collect() }
    }

    /// Positive at every nonzero grid point.
    pub fn norm_like(&self) -> bool {
        self.values.iter().all(|(a, v)| v.is_positive() || a.iter().all(Zero::is_zero))
    }

    pub fn value_at(&self, a: &[Rational]) -> Option<&Rational> {
        self.values.iter().find(|(p, _)| p.as_slice() == a).map(|(_, v)| v)
    }

    /// Sup of the differences over the shared grid.
    pub fn distance(&self, other: &SeminormSample) -> Result<Rational> {
        if self.k != other.k || self.grid_q != other.grid_q {
            return invalid("samples must share dimension and grid");
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|((_, x), (_, y))| (x - y).abs())
            .max()
            .unwrap_or_default())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegenerateLimitReport {
    /// `(n, ‖(1,1)‖_n)` for `n = 1..=n_max`.
    pub table: Vec<(u32, String)>,
    pub all_match_one_over_n: bool,
    #[serde(with = "ratio::pq")]
    pub limit_at_11: Rational,
    #[serde(with = "ratio::pq")]
    pub limit_at_10: Rational,
    pub each_norm_positive_at_11: bool,
    pub limit_failures: Vec<&'static str>,
    pub limit_is_seminorm: bool,
    pub limit_is_norm: bool,
}

/// Tabulates `‖(1,1)‖_n` and checks that the limit is a seminorm but not a
/// norm.
pub fn degenerate_limit_demo(n_max: u32, grid_q: u32) -> Result<DegenerateLimitReport> {
    if n_max == 0 {
        return invalid("n_max must be at least 1");
    }
    let ones = [ratio::one(), ratio::one()];
    let table: Vec<(u32, Rational)> = (1..=n_max).map(|n| (n, degenerate_norm(n, &ones))).collect();
    let all_match = table.iter().all(|(n, v)| *v == frac(1, *n as i64));
    let positive = table.iter().all(|(_, v)| v.is_positive());
    let axioms = check_norm_axioms(degenerate_limit, 2, grid_q);
    Ok(DegenerateLimitReport {
        table: table.into_iter().map(|(n, v)| (n, ratio::to_pq(&v))).collect(),
        all_match_one_over_n: all_match,
        limit_at_11: degenerate_limit(&ones),
        limit_at_10: degenerate_limit(&[ratio::one(), ratio::zero()]),
        each_norm_positive_at_11: positive,
        limit_failures: axioms.failures(),
        limit_is_seminorm: axioms.is_seminorm(),
        limit_is_norm: axioms.is_norm(),
    })
}
