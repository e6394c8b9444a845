//! Strict boundary of cofiniteness and boundary of cofiniteness of a few sets
//! of periods.

use circle_periods::cofiniteness::report;
use circle_periods::families::montevideo_per;
use circle_periods::PeriodSet;

fn main() -> anyhow::Result<()> {
    let sets = [
        ("S(7)", PeriodSet::successors(7)),
        ("{1, 2} U S(9)", PeriodSet::from_parts([1, 2], Some(9))),
        ("montevideo n=6", montevideo_per(6)),
    ];
    for (name, ps) in sets {
        let r = report(&ps)?;
        println!("{name}: sbc = {}, candidates = {:?}, bc = {:?}", r.sbc, r.sbcset, r.bc);
    }
    Ok(())
}
