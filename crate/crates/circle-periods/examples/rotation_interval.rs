//! Build a lifting from two twist periodic orbits and compute its rotation
//! interval exactly.

use circle_periods::arith::{fmt_rational, rat};
use circle_periods::lifting::{build_from_orbits, rotation_interval, RotationConfig};
use circle_periods::LiftedOrbit;

fn main() -> anyhow::Result<()> {
    // A fixed point at 0 and a period-2 orbit {1/3, 2/3} of rotation number 1/2.
    let fixed = LiftedOrbit::new(vec![rat(0, 1)], 0);
    let half = LiftedOrbit::new(vec![rat(1, 3), rat(2, 3)], 1);
    let f = build_from_orbits(&[fixed, half])?;
    let rot = rotation_interval(&f, &RotationConfig::default())?;
    println!("Rot(F) = [{}, {}]", fmt_rational(&rot.c), fmt_rational(&rot.d));
    println!("length = {}", fmt_rational(&rot.len()));
    Ok(())
}
