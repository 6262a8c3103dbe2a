//! Block oscillation: the gap `sup |Ψ(S)(a) - Ψ(T)(a)|`, stable
//! subsequences and the tail criterion.

use barrier_models::block::BlockFamily;
use barrier_models::norm::NormSpec;
use barrier_models::oscillation::{asymptotic_stability_check, find_stable_subsequence, oscillation_gap, ToleranceSchedule};
use barrier_models::ramsey::Strategy;
use barrier_models::ratio::{frac, to_pq};
use barrier_models::{FiniteSet, SetGenerator};

fn main() -> barrier_models::Result<()> {
    let spec = NormSpec::even_pair();
    let fam = BlockFamily::cubes(&[1, 1])?;

    let r = oscillation_gap(&spec, &fam, &FiniteSet::interval(1, 8), 8)?;
    let (s, t) = &r.witness_pair;
    println!("gap over 1..8: {} between {s} and {t}", to_pq(&r.gap));

    let stable = find_stable_subsequence(&spec, &fam, &frac(1, 4), &FiniteSet::interval(1, 10), 5, Strategy::Exhaustive, 8)?;
    if let Some(w) = stable.found() {
        println!("least 5-subset of 1..10 with gap < 1/4: {} (gap {})", w.subset, to_pq(&w.gap));
    }

    let schedule = ToleranceSchedule::default();
    let all = asymptotic_stability_check(&spec, &fam, &schedule, &FiniteSet::interval(1, 16), 8, 4)?;
    println!("tails of 1..16 pass: {}", all.all_passed);
    let odds = SetGenerator::odds().take(12);
    let odd = asymptotic_stability_check(&spec, &fam, &schedule, &odds, 8, 4)?;
    println!("tails of the first 12 odd numbers pass: {}", odd.all_passed);
    Ok(())
}
