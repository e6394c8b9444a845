//! Certified largest real root of an integer polynomial and the Sharkovskii
//! tail of a period.

use circle_periods::arith::{largest_root_above, rat, sharkovskii_tail, IntPoly, ShoNumber};

fn main() -> anyhow::Result<()> {
    // x^2 - x - 1 has the golden ratio as its largest root.
    let p = IntPoly::from_i64(&[-1, -1, 1]);
    let r = largest_root_above(&p, &rat(1, 1), &rat(1, 1_000_000_000_000))?;
    println!("golden ratio in {}", r.display());
    println!("Sharkovskii tail of 6: {}", sharkovskii_tail(ShoNumber::Finite(6)));
    Ok(())
}
