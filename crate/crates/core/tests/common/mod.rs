//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library's evaluation code; only its data types are reused.

#![allow(dead_code)]

use std::collections::BTreeMap;

use barrier_models::norm::{IndexFilter, NormSpec};
use barrier_models::ratio::{frac, int, zero};
use barrier_models::Rational;
use num_traits::{Signed, Zero};

/// All `k`-element subsets of `items`, in lexicographic order.
pub fn combinations<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    fn go<T: Clone>(items: &[T], k: usize, start: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i].clone());
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Every subset of `items`, as bitmask order.
pub fn power_set(items: &[u32]) -> Vec<Vec<u32>> {
    (0u64..1 << items.len())
        .map(|mask| items.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect())
        .collect()
}

fn admits(filter: &Option<IndexFilter>, i: u32) -> bool {
    match filter {
        None => true,
        Some(IndexFilter::Even) => i.is_multiple_of(2),
        Some(IndexFilter::Odd) => i % 2 == 1,
        Some(IndexFilter::Residue { modulus, residue }) => i % modulus == *residue,
    }
}

/// Literal sup over singletons and over every admitted subset of the
/// support of size at most `m` for each term. An `m`-subset of ℕ may use
/// indices outside the support, which contribute zero, so subsets of size
/// below `m` cover every term.
pub fn oracle_norm(spec: &NormSpec, v: &BTreeMap<u32, Rational>) -> Rational {
    let support: Vec<u32> = v.iter().filter(|(_, a)| !a.is_zero()).map(|(&i, _)| i).collect();
    let abs = |i: &u32| v[i].abs();
    match spec {
        NormSpec::Sup => support.iter().map(abs).max().unwrap_or_else(zero),
        NormSpec::Lp(_) => panic!("oracle covers sup-type norms only"),
        NormSpec::SupFamily(terms) => {
            let mut best = support.iter().map(abs).max().unwrap_or_else(zero);
            for t in terms {
                let admitted: Vec<u32> = support.iter().copied().filter(|&i| admits(&t.filter, i)).collect();
                for size in 1..=(t.m as usize).min(admitted.len()) {
                    for e in combinations(&admitted, size) {
                        let s: Rational = e.iter().map(abs).sum::<Rational>() * &t.w;
                        if s > best {
                            best = s;
                        }
                    }
                }
            }
            best
        }
    }
}

pub fn indicator(s: &[u32]) -> BTreeMap<u32, Rational> {
    s.iter().map(|&i| (i, int(1))).collect()
}

/// `‖Σ a_i 𝒳(s_i)‖`, building the vector coordinate by coordinate.
pub fn oracle_psi(spec: &NormSpec, parts: &[Vec<u32>], a: &[Rational]) -> Rational {
    let mut v = BTreeMap::new();
    for (s, ai) in parts.iter().zip(a) {
        let n = oracle_norm(spec, &indicator(s));
        for &i in s {
            v.insert(i, ai / &n);
        }
    }
    oracle_norm(spec, &v)
}

/// Membership test for one part of a block.
pub type Member<'a> = &'a dyn Fn(&[u32]) -> bool;

/// Blocks `s₁ < s₂ < …` inside `universe` with `s_i` accepted by `member[i]`,
/// found by trying every subset above the previous part.
pub fn oracle_blocks(member: &[Member], universe: &[u32]) -> Vec<Vec<Vec<u32>>> {
    fn go(
        member: &[Member],
        rest: &[u32],
        cur: &mut Vec<Vec<u32>>,
        out: &mut Vec<Vec<Vec<u32>>>,
    ) {
        let Some(accept) = member.get(cur.len()) else {
            out.push(cur.clone());
            return;
        };
        for s in power_set(rest) {
            if s.is_empty() || !accept(&s) {
                continue;
            }
            let top = *s.last().unwrap();
            let above: Vec<u32> = rest.iter().copied().filter(|&x| x > top).collect();
            cur.push(s);
            go(member, &above, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(member, universe, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Blocks of consecutive-size parts for a family of cubes, by splitting
/// every subset of the right total size.
pub fn cube_blocks(sizes: &[usize], universe: &[u32]) -> Vec<Vec<Vec<u32>>> {
    let total: usize = sizes.iter().sum();
    combinations(universe, total)
        .into_iter()
        .map(|c| {
            let mut parts = Vec::new();
            let mut at = 0;
            for &k in sizes {
                parts.push(c[at..at + k].to_vec());
                at += k;
            }
            parts
        })
        .collect()
}

/// Every tuple of length `k` with entries `p/d`, `0 ≤ p ≤ d ≤ q`.
pub fn nonneg_grid(k: usize, q: u32) -> Vec<Vec<Rational>> {
    let mut values: Vec<Rational> = Vec::new();
    for d in 1..=q as i64 {
        for p in 0..=d {
            let r = frac(p, d);
            if !values.contains(&r) {
                values.push(r);
            }
        }
    }
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                values.iter().map(move |x| {
                    let mut t = t.clone();
                    t.push(x.clone());
                    t
                })
            })
            .collect();
    }
    out
}

/// Every tuple of length `k` with entries `±p/d`, `0 ≤ p ≤ d ≤ q`.
pub fn signed_grid(k: usize, q: u32) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    for t in nonneg_grid(k, q) {
        let nonzero: Vec<usize> = (0..k).filter(|&i| !t[i].is_zero()).collect();
        for signs in 0u32..1 << nonzero.len() {
            let mut u = t.clone();
            for (b, &i) in nonzero.iter().enumerate() {
                if signs >> b & 1 == 1 {
                    u[i] = -u[i].clone();
                }
            }
            out.push(u);
        }
    }
    out
}

/// Largest `|Ψ(S)(a) − Ψ(T)(a)|` over all block pairs and grid tuples.
pub fn oracle_gap(spec: &NormSpec, blocks: &[Vec<Vec<u32>>], grid: &[Vec<Rational>]) -> Rational {
    let mut gap = zero();
    for a in grid {
        let values: Vec<Rational> = blocks.iter().map(|b| oracle_psi(spec, b, a)).collect();
        if let (Some(lo), Some(hi)) = (values.iter().min(), values.iter().max()) {
            let d = hi - lo;
            if d > gap {
                gap = d;
            }
        }
    }
    gap
}

pub fn even_pair() -> NormSpec {
    serde_json::from_str(r#"{"type":"supfamily","terms":[{"w":"3/4","m":2,"filter":"even"}]}"#).unwrap()
}

pub fn section6_spec() -> NormSpec {
    serde_json::from_str(r#"{"type":"supfamily","terms":[{"w":"3/4","m":2},{"w":"9/16","m":8}]}"#).unwrap()
}
