//! Blocks of barriers: enumeration, the concatenation bijection onto the
//! sum barrier, and the directed order.

use barrier_models::block::{block_above, block_compare, enumerate_blocks, from_concat, BlockFamily};
use barrier_models::{set, BarrierDescriptor};

fn main() -> barrier_models::Result<()> {
    let fam = BlockFamily::new(vec![BarrierDescriptor::schreier(), BarrierDescriptor::cube(1)?])?;
    let blocks = enumerate_blocks(&fam, 7, None);
    println!("{} blocks of (S, [N]^1) in 1..7", blocks.len());
    for b in blocks.iter().take(6) {
        println!("  {b} -> {}", b.to_concat());
    }

    let split = from_concat(&fam, &set(&[2, 5, 6]))?;
    println!("{{2,5,6}} splits as {split}");
    match from_concat(&fam, &set(&[2, 5, 6, 7])) {
        Ok(b) => println!("unexpected block {b}"),
        Err(e) => println!("{{2,5,6,7}}: {e}"),
    }

    let (s, t) = (&blocks[0], &blocks[3]);
    let above = block_above(&fam, &[s.clone(), t.clone()], 20).expect("room above");
    println!("{s} vs {t}: {:?}; first block above both: {above}", block_compare(s, t)?);
    Ok(())
}
