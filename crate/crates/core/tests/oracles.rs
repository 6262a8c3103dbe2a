mod common;

use std::collections::BTreeMap;

use barrier_models::block::{enumerate_blocks, Block, BlockFamily};
use barrier_models::norm::{norm_eval, NormSpec, Vector};
use barrier_models::oscillation::{find_stable_subsequence, oscillation_gap, psi_eval};
use barrier_models::ramsey::{find_monochromatic, Coloring, Strategy};
use barrier_models::ratio::{frac, int};
use barrier_models::{set, BarrierDescriptor, FiniteSet, Rational};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn parts(b: &Block) -> Vec<Vec<u32>> {
    b.parts().iter().map(|p| p.as_slice().to_vec()).collect()
}

fn random_vector(rng: &mut ChaCha8Rng, max_support: usize, max_index: u32) -> BTreeMap<u32, Rational> {
    let len = rng.gen_range(0..=max_support);
    (0..len)
        .map(|_| (rng.gen_range(1..=max_index), frac(rng.gen_range(-12..=12), rng.gen_range(1..=6))))
        .collect()
}

fn to_vector(v: &BTreeMap<u32, Rational>) -> Vector {
    Vector::from_pairs(v.iter().map(|(&i, a)| (i, a.clone()))).unwrap()
}

#[test]
fn norm_matches_literal_sup_for_several_specs() {
    let specs = [
        section6_spec(),
        even_pair(),
        NormSpec::mn(3, 5).unwrap(),
        NormSpec::Sup,
        serde_json::from_str(r#"{"type":"supfamily","terms":[{"w":"2/3","m":3,"filter":{"residue":{"modulus":3,"residue":1}}}]}"#).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for spec in &specs {
        for _ in 0..150 {
            let v = random_vector(&mut rng, 10, 20);
            assert_eq!(norm_eval(spec, &to_vector(&v)), oracle_norm(spec, &v), "{spec:?} at {v:?}");
        }
    }
}

#[test]
fn psi_matches_explicit_vector_on_every_small_block() {
    let spec = section6_spec();
    let universe: Vec<u32> = (1..=9).collect();
    let fam = BlockFamily::cubes(&[1, 2, 3]).unwrap();
    let blocks = enumerate_blocks(&fam, 9, None);
    assert_eq!(blocks.len(), cube_blocks(&[1, 2, 3], &universe).len());
    let grid = signed_grid(3, 2);
    for b in blocks.iter().step_by(7) {
        for a in &grid {
            assert_eq!(psi_eval(&spec, b, a).unwrap(), oracle_psi(&spec, &parts(b), a), "{b} at {a:?}");
        }
    }
}

#[test]
fn block_enumeration_matches_subset_search() {
    let universe: Vec<u32> = (1..=9).collect();
    let schreier = |s: &[u32]| s.len() == s[0] as usize;
    let pair = |s: &[u32]| s.len() == 2;
    let single = |s: &[u32]| s.len() == 1;
    let cases: Vec<(BlockFamily, Vec<Member>)> = vec![
        (BlockFamily::new(vec![BarrierDescriptor::schreier(), BarrierDescriptor::cube(1).unwrap()]).unwrap(), vec![&schreier, &single]),
        (BlockFamily::new(vec![BarrierDescriptor::cube(2).unwrap(), BarrierDescriptor::schreier()]).unwrap(), vec![&pair, &schreier]),
        (BlockFamily::cubes(&[2, 1, 2]).unwrap(), vec![&pair, &single, &pair]),
    ];
    for (fam, member) in cases {
        let mut got: Vec<Vec<Vec<u32>>> = enumerate_blocks(&fam, 9, None).iter().map(parts).collect();
        got.sort();
        assert_eq!(got, oracle_blocks(&member, &universe), "{fam:?}");
    }
}

#[test]
fn barrier_enumeration_matches_membership_filter() {
    let universe: Vec<u32> = (1..=10).collect();
    let descriptors: Vec<(BarrierDescriptor, Member)> = vec![
        (BarrierDescriptor::schreier(), &|s: &[u32]| s.len() == s[0] as usize),
        (BarrierDescriptor::cube(3).unwrap(), &|s: &[u32]| s.len() == 3),
        (
            BarrierDescriptor::sum(vec![BarrierDescriptor::cube(1).unwrap(), BarrierDescriptor::cube(2).unwrap()]).unwrap(),
            &|s: &[u32]| s.len() == 3,
        ),
    ];
    for (b, member) in descriptors {
        let mut got: Vec<Vec<u32>> = b.enumerate(10).into_iter().map(FiniteSet::into_vec).collect();
        got.sort();
        let mut want: Vec<Vec<u32>> = power_set(&universe).into_iter().filter(|s| !s.is_empty() && member(s)).collect();
        want.sort();
        assert_eq!(got, want, "{b}");
    }
}

#[test]
fn oscillation_gap_matches_all_pairs() {
    let spec = even_pair();
    let fam = BlockFamily::cubes(&[1, 1]).unwrap();
    let universe: Vec<u32> = (1..=8).collect();
    let report = oscillation_gap(&spec, &fam, &FiniteSet::interval(1, 8), 2).unwrap();
    let blocks = cube_blocks(&[1, 1], &universe);
    assert_eq!(report.gap, oracle_gap(&spec, &blocks, &signed_grid(2, 2)));
    assert_eq!(report.gap, frac(1, 2));
}

#[test]
fn stable_subsequence_is_the_least_stable_five_subset() {
    let spec = even_pair();
    let fam = BlockFamily::cubes(&[1, 1]).unwrap();
    let universe: Vec<u32> = (1..=10).collect();
    let grid = signed_grid(2, 2);
    let stable = |m: &[u32]| oracle_gap(&spec, &cube_blocks(&[1, 1], m), &grid) < frac(1, 4);
    let least = combinations(&universe, 5).into_iter().find(|m| stable(m)).unwrap();
    assert_eq!(least, vec![1, 2, 3, 5, 7]);
    assert!(stable(&[1, 3, 5, 7, 9]));
    let found = find_stable_subsequence(&spec, &fam, &frac(1, 4), &FiniteSet::interval(1, 10), 5, Strategy::Exhaustive, 2)
        .unwrap()
        .found()
        .unwrap();
    assert_eq!(found.subset.as_slice(), least.as_slice());
}

#[test]
fn monochromatic_search_matches_brute_force_on_sampled_colorings() {
    let fam = BlockFamily::cubes(&[2]).unwrap();
    let universe: Vec<u32> = (1..=5).collect();
    let pairs = combinations(&universe, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..300 {
        let colors: Vec<u32> = pairs.iter().map(|_| rng.gen_range(1..=2)).collect();
        let color_of = |p: &[u32]| colors[pairs.iter().position(|q| q == p).unwrap()];
        let oracle = combinations(&universe, 3)
            .into_iter()
            .find(|t| combinations(t, 2).iter().all(|p| color_of(p) == color_of(&combinations(t, 2)[0])));
        let coloring = Coloring::table(
            2,
            pairs.iter().zip(&colors).map(|(p, &c)| (Block::new(vec![FiniteSet::new(p.clone()).unwrap()]).unwrap(), c)),
        );
        let got = find_monochromatic(&fam, &coloring, &FiniteSet::interval(1, 5), 3, Strategy::Exhaustive).unwrap().found();
        assert_eq!(got.map(|w| w.subset.into_vec()), oracle);
    }
}

#[test]
fn unit_sums_follow_from_the_definition() {
    let spec = section6_spec();
    for k in 1..=12u32 {
        let s: Vec<u32> = (1..=k).collect();
        let v = Vector::indicator(&set(&s));
        assert_eq!(norm_eval(&spec, &v), oracle_norm(&spec, &indicator(&s)));
    }
    assert_eq!(oracle_norm(&spec, &indicator(&[4, 9])), frac(3, 2));
    assert_eq!(oracle_norm(&spec, &indicator(&(1..=8).collect::<Vec<_>>())), frac(9, 2));
    assert_eq!(oracle_norm(&spec, &indicator(&[7])), int(1));
}
