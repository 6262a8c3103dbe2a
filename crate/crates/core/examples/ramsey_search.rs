//! Finite Ramsey searches over block families: monochromatic subsets,
//! metric stabilization and the diagonal construction.

use barrier_models::block::BlockFamily;
use barrier_models::norm::NormSpec;
use barrier_models::oscillation::{psi_eval, ToleranceSchedule};
use barrier_models::ramsey::{diagonal_stabilize, find_monochromatic, metric_stabilize, Coloring, Search, Strategy};
use barrier_models::ratio::{frac, int, to_pq};
use barrier_models::FiniteSet;

fn main() -> barrier_models::Result<()> {
    let pairs = BlockFamily::cubes(&[2])?;
    let universe = FiniteSet::interval(1, 9);
    let parity = Coloring::sum_parity();
    match find_monochromatic(&pairs, &parity, &universe, 4, Strategy::Exhaustive)? {
        Search::Found(w) => println!("pairs of color {} inside {}", w.color_label.unwrap_or_default(), w.subset),
        Search::NotFound { best } => println!("no 4-set; best {best:?}"),
    }
    let short = FiniteSet::interval(1, 4);
    if let Search::NotFound { best: Some(b) } = find_monochromatic(&pairs, &parity, &short, 3, Strategy::Exhaustive)? {
        println!("inside 1..4 no triple works; largest is {}", b.subset);
    }

    let spec = NormSpec::even_pair();
    let singles = BlockFamily::cubes(&[1, 1])?;
    let ones = [int(1), int(1)];
    let value = |b: &_| psi_eval(&spec, b, &ones);
    let r = metric_stabilize(&singles, value, &frac(1, 4), &FiniteSet::interval(1, 10), 5, Strategy::Exhaustive)?;
    if let Some(w) = r.found() {
        println!("values of e_i + e_j within 1/4 on {}", w.subset);
    }

    let schedule = ToleranceSchedule::default();
    let d = diagonal_stabilize(&singles, value, |i| schedule.at(i), &FiniteSet::interval(1, 12))?;
    for s in &d.stages {
        println!("stage {}: eps {} keeps {}", s.stage, to_pq(&s.epsilon), s.set);
    }
    println!("diagonal sequence {:?}", d.m_list);
    Ok(())
}
