//! Builds barriers from descriptors, takes fronts of infinite sets and
//! classifies lexicographic rank.

use barrier_models::barrier::{check_axioms, classify_empirical};
use barrier_models::{set, BarrierDescriptor, SetGenerator};

fn main() -> barrier_models::Result<()> {
    let schreier = BarrierDescriptor::schreier();
    let evens = SetGenerator::evens();
    println!("front of the evens in S: {}", schreier.front(&evens, 1_000)?);
    println!("S up to 6: {:?}", schreier.enumerate(6));

    let sum = BarrierDescriptor::sum(vec![BarrierDescriptor::cube(2)?, BarrierDescriptor::cube(3)?])?;
    println!("{sum} contains {{1,2,3,4,5}}: {}", sum.contains(&set(&[1, 2, 3, 4, 5]))?);

    let quotient = BarrierDescriptor::quotient(schreier.clone(), set(&[3]))?;
    println!("{quotient} contains {{5,9}}: {}", quotient.contains(&set(&[5, 9]))?);

    for b in [BarrierDescriptor::cube(4)?, sum, schreier.clone()] {
        let r = b.rank();
        println!("rank {b} = {} ({:?}, confirmed {})", r.rank, r.method, r.confirmed);
    }
    let r = classify_empirical(&BarrierDescriptor::cube(3)?, 10);
    println!("from the enumeration up to 10: [N]^3 has rank {}", r.rank);

    let axioms = check_axioms(&schreier, 14, 16, 7);
    println!("S up to 14: {} members, Sperner {}, {} sampled fronts", axioms.enumerated, axioms.sperner_ok, axioms.front_samples);
    Ok(())
}
