//! Set of periods from the rotation interval, cross-checked by brute-force
//! loop enumeration.

use circle_periods::families::{instance, FamilyName};
use circle_periods::lifting::RotationConfig;
use circle_periods::oracle::{periods_up_to, OracleConfig};
use circle_periods::periods::per_from_rotation;

fn main() -> anyhow::Result<()> {
    let inst = instance(FamilyName::Persistent, 7)?;
    let ocfg = OracleConfig::default();
    let analysis = per_from_rotation(&inst.markov, &RotationConfig::default(), &ocfg)?;
    println!("Per(f) = {}", analysis.per);
    println!("closed form agrees: {}", analysis.per == inst.expected_per);
    let bound = 12;
    let oracle = periods_up_to(&inst.markov, bound, &ocfg)?;
    println!("oracle periods up to {bound}: {:?}", oracle.periods());
    println!("Per up to {bound}:          {:?}", analysis.per.members_up_to(bound));
    Ok(())
}
