use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::verify::{smallest_denominator_inside, VerifyConfig};
use super::{instance, FamilyName};
use crate::arith::{rational_serde, CertifiedRoot, Rational};
use crate::cofiniteness;
use crate::error::{Error, Result};
use crate::lifting::{rotation_interval, RotationInterval};
use crate::markov::entropy_bounds;
use crate::periods::per_with_rotation;

/// One parameter of a family scan.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub n: u64,
    pub rotation: Option<RotationInterval>,
    #[serde(with = "opt_rational")]
    pub len_rot: Option<Rational>,
    pub entropy: Option<CertifiedRoot>,
    pub entropy_log: Option<(f64, f64)>,
    pub sbc: Option<u64>,
    pub bc: Option<u64>,
    /// Names of failed claims and errors; empty when the row is green.
    pub flags: Vec<String>,
}

/// A scan with the monotonicity checks along the parameter.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub family: FamilyName,
    pub rows: Vec<ScanRow>,
    pub len_strictly_decreasing: bool,
    /// Consecutive entropy brackets are certainly ordered.
    pub entropy_strictly_decreasing: bool,
    pub bc_nondecreasing: bool,
    /// `bc` equals its closed form where the family has one, and lies within
    /// the claimed bounds otherwise.
    pub bc_matches_claims: bool,
}

impl ScanReport {
    pub fn all_green(&self) -> bool {
        self.len_strictly_decreasing
            && self.entropy_strictly_decreasing
            && self.bc_nondecreasing
            && self.bc_matches_claims
            && self.rows.iter().all(|r| r.flags.is_empty())
    }
}

fn scan_row(name: FamilyName, n: u64, cfg: &VerifyConfig) -> ScanRow {
    let mut row = ScanRow { n, rotation: None, len_rot: None, entropy: None, entropy_log: None, sbc: None, bc: None, flags: Vec::new() };
    let inst = match instance(name, n) {
        Ok(i) => i,
        Err(e) => {
            row.flags.push(format!("error: {e}"));
            return row;
        }
    };
    let m = &inst.markov;
    match m.entropy(&cfg.tol) {
        Ok(s) => {
            row.entropy_log = Some(entropy_bounds(&s));
            row.entropy = Some(s);
        }
        Err(e) => row.flags.push(format!("entropy error: {e}")),
    }
    let rot = match rotation_interval(&inst.lifting, &cfg.rotation) {
        Ok(r) => r,
        Err(e) => {
            row.flags.push(format!("rotation error: {e}"));
            return row;
        }
    };
    if rot != inst.expected_rot {
        row.flags.push("rot".into());
    }
    row.len_rot = Some(rot.len());
    row.rotation = Some(rot.clone());
    let per = match per_with_rotation(m, rot.clone(), &cfg.oracle_cfg) {
        Ok(a) => a.per,
        Err(e) => {
            row.flags.push(format!("periods error: {e}"));
            return row;
        }
    };
    if per != inst.expected_per {
        row.flags.push("per".into());
    }
    let e = &inst.expected_cofin;
    match cofiniteness::report(&per) {
        Ok(c) => {
            row.sbc = Some(c.sbc);
            row.bc = c.bc;
            if c.sbc != e.sbc {
                row.flags.push("sbc".into());
            }
            match c.bc {
                None => row.flags.push("bc_absent".into()),
                Some(b) => {
                    if b < e.bc_bounds.0 {
                        row.flags.push("bc_lower".into());
                    }
                    if b > e.bc_bounds.1 {
                        row.flags.push("bc_upper".into());
                    }
                    if e.bc.is_some_and(|x| x != b) {
                        row.flags.push("bc_exact".into());
                    }
                }
            }
        }
        Err(err) => row.flags.push(format!("cofiniteness error: {err}")),
    }
    if let (Some(s), Some(sigma)) = (smallest_denominator_inside(&rot), &row.entropy) {
        let mut pw = Rational::from_integer(1.into());
        for _ in 0..s {
            pw = &pw * &sigma.upper;
        }
        if pw < Rational::from_integer(3.into()) {
            row.flags.push("entropy_log3_over_s".into());
        }
    }
    row
}

/// Scan `n_from..=n_to` over admissible parameters of the family.
pub fn mts1_scan(name: FamilyName, n_from: u64, n_to: u64, cfg: &VerifyConfig) -> Result<ScanReport> {
    let ns: Vec<u64> = (n_from..=n_to).filter(|&n| name.admits(n)).collect();
    if ns.is_empty() {
        return Err(Error::BadParameter(format!("no admissible {name} parameters in {n_from}..={n_to}")));
    }
    let rows: Vec<ScanRow> = ns.par_iter().map(|&n| scan_row(name, n, cfg)).collect();
    let pairs = || rows.windows(2).map(|w| (&w[0], &w[1]));
    let len_strictly_decreasing = pairs().all(|(a, b)| matches!((&a.len_rot, &b.len_rot), (Some(x), Some(y)) if y < x));
    let entropy_strictly_decreasing =
        pairs().all(|(a, b)| matches!((&a.entropy, &b.entropy), (Some(x), Some(y)) if x.certainly_above(y)));
    let bc_nondecreasing = pairs().all(|(a, b)| matches!((a.bc, b.bc), (Some(x), Some(y)) if x <= y));
    let bc_matches_claims = rows.iter().all(|r| !r.flags.iter().any(|f| f.starts_with("bc")));
    Ok(ScanReport { family: name, rows, len_strictly_decreasing, entropy_strictly_decreasing, bc_nondecreasing, bc_matches_claims })
}

mod opt_rational {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match x {
            Some(v) => rational_serde::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Rational>, D::Error> {
        let v: Option<String> = Option::deserialize(d)?;
        v.map(|s| crate::arith::parse_rational(&s).map_err(serde::de::Error::custom)).transpose()
    }
}
