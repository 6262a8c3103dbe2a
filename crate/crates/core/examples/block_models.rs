//! Block asymptotic models: norms computed from far-out blocks, prefix
//! consistency, spreading and equivalence between two models.

use barrier_models::model::{
    consistency_check, equivalence_constants, spreading_check, BarrierSequence, ModelConfig, ModelEvaluator,
};
use barrier_models::norm::NormSpec;
use barrier_models::ratio::{int, to_pq, zero};
use barrier_models::set;

fn main() -> barrier_models::Result<()> {
    let spec = NormSpec::weighted_pair_octet();
    let mut octets = ModelEvaluator::new(spec.clone(), BarrierSequence::octets(), ModelConfig::default())?;
    let mut mixed = ModelEvaluator::new(spec, BarrierSequence::pair_pair_octets(), ModelConfig::default())?;

    let v = mixed.eval(&[int(1), int(1)])?;
    println!("|||e_1 + e_2||| = {} from {} probes (offset {})", to_pq(&v.value), v.probes.len(), v.tail_offset);
    println!("|||e_3 + e_4||| = {}", to_pq(&mixed.norm(&[zero(), zero(), int(1), int(1)])?));

    let c = consistency_check(&mut mixed, 3, 2)?;
    println!("prefix consistency on {} tuples: {}", c.checked, c.holds);

    let placements = [set(&[2, 5]), set(&[3, 4])];
    for (name, eval) in [("octets", &mut octets), ("pairs, pairs, octets", &mut mixed)] {
        let r = spreading_check(eval, 2, &placements, 2)?;
        match r.witness {
            None => println!("{name}: spreading on the sampled placements"),
            Some(w) => println!(
                "{name}: not spreading, {} at identity vs {} at {}",
                to_pq(&w.at_identity),
                to_pq(&w.at_placement),
                w.placement
            ),
        }
    }

    let eq = equivalence_constants(&mut octets, &mut mixed, 4, 2)?;
    println!("{} |||a|||_8 <= |||a|||_(2,2,8) <= {} |||a|||_8", to_pq(&eq.lower), to_pq(&eq.upper));
    Ok(())
}
