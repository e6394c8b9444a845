//! Run every check on one member of each family.

use circle_periods::families::{instance, verify, FamilyName, VerifyConfig};

fn main() -> anyhow::Result<()> {
    let cfg = VerifyConfig::default();
    for (name, n) in [(FamilyName::Dream, 5), (FamilyName::Persistent, 7), (FamilyName::Montevideo, 4)] {
        let r = verify(&instance(name, n)?, &cfg);
        let red: Vec<&String> = r.theorem_bound_flags.iter().filter(|(_, ok)| !**ok).map(|(k, _)| k).collect();
        println!(
            "{name} n={n}: classes={} rot={} per={} poly={} transitive={} oracle={} sbc/bc={:?} red bounds={red:?}",
            r.classes,
            r.rot_ok,
            r.per_ok,
            r.poly_ok,
            r.transitive_ok,
            r.oracle_ok,
            r.cofin.as_ref().map(|c| (c.sbc, c.bc)),
        );
    }
    Ok(())
}
