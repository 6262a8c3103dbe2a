//! Exact evaluation of sup-family norms, block vectors, the distance `d_k`,
//! basis constants and a limit of norms that is only a seminorm.

use barrier_models::norm::{basis_constant, block_vector, degenerate_limit_demo, dk_distance, norm_eval, NormSpec, Vector};
use barrier_models::ratio::{frac, to_pq};
use barrier_models::{set, Rational};

fn main() -> barrier_models::Result<()> {
    let spec: NormSpec =
        serde_json::from_str(r#"{"type":"supfamily","terms":[{"w":"3/4","m":2},{"w":"9/16","m":8}]}"#).expect("valid spec");
    for k in [1, 2, 3, 8, 12] {
        let v = Vector::indicator(&set(&(1..=k).collect::<Vec<_>>()));
        println!("||1 on {{1..{k}}}|| = {}", to_pq(&norm_eval(&spec, &v)));
    }
    let v = Vector::from_coeffs(&[frac(1, 1), frac(-1, 2), frac(1, 3)]);
    println!("||(1, -1/2, 1/3)|| = {}", to_pq(&norm_eval(&spec, &v)));
    println!("X({{4,9}}) = {:?}", block_vector(&spec, &set(&[4, 9]))?);

    let rho = |s: NormSpec| move |a: &[Rational]| norm_eval(&s, &Vector::from_coeffs(a));
    let d = dk_distance(rho(spec.clone()), rho(NormSpec::Sup), 3, 4);
    println!("d_3 against the sup norm >= {} at {:?}", to_pq(&d.distance), d.witness.iter().map(to_pq).collect::<Vec<_>>());

    let bc = basis_constant(&spec, 4, 2)?;
    println!("basis constant over length 4: {}", serde_json::to_string(&bc).expect("serializable"));

    let demo = degenerate_limit_demo(8, 4)?;
    println!("||(1,1)||_n for n = 1..8: {:?}", demo.table.iter().map(|(_, v)| v.as_str()).collect::<Vec<_>>());
    println!("limit at (1,1) = {}, fails {:?}", to_pq(&demo.limit_at_11), demo.limit_failures);
    Ok(())
}
