use std::collections::{BTreeMap, BTreeSet};

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{FamilyInstance, FamilyName};
use crate::arith::{largest_root_above, CertifiedRoot, IntPoly, Rational};
use crate::cofiniteness::{self, CofinitenessReport};
use crate::lifting::{rotation_interval, RotationConfig, RotationInterval};
use crate::markov::{entropy_bounds, tol_pow10, TransitivityCertificate};
use crate::oracle::{periods_up_to, OracleConfig};
use crate::periods::{per_with_rotation, PeriodSet};

/// Radius of the circle on which cofactor roots are counted.
pub const COFACTOR_RADIUS: f64 = 1.0 + 1e-6;

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub tol: Rational,
    /// Run the brute-force oracle up to `sbc + 3`.
    pub oracle: bool,
    pub rotation: RotationConfig,
    pub oracle_cfg: OracleConfig,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { tol: tol_pow10(12), oracle: true, rotation: RotationConfig::default(), oracle_cfg: OracleConfig::default() }
    }
}

/// Comparison of the rome characteristic polynomial with the closed form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyComparison {
    pub char_poly: IntPoly,
    pub expected: IntPoly,
    /// `C` with `expected = char_poly * C` or `char_poly = expected * C`.
    pub cofactor: Option<IntPoly>,
    /// `"expected/char"` or `"char/expected"` when a cofactor exists.
    pub cofactor_side: Option<String>,
    /// Number of cofactor roots inside `|x| = COFACTOR_RADIUS`, by the argument principle.
    pub cofactor_roots_inside: Option<usize>,
    /// Cofactor roots all lie in the closed unit disk.
    pub cofactor_in_unit_disk: Option<bool>,
    pub char_root: CertifiedRoot,
    pub expected_root: CertifiedRoot,
    pub roots_overlap: bool,
}

impl PolyComparison {
    pub fn new(char_poly: IntPoly, expected: IntPoly, tol: &Rational) -> crate::Result<Self> {
        let one = Rational::one();
        let char_root = largest_root_above(&char_poly, &one, tol)?;
        let expected_root = largest_root_above(&expected, &one, tol)?;
        let (cofactor, side) = match (expected.div_exact(&char_poly), char_poly.div_exact(&expected)) {
            (Some(c), _) => (Some(c), Some("expected/char".to_string())),
            (None, Some(c)) => (Some(c), Some("char/expected".to_string())),
            _ => (None, None),
        };
        let cofactor_roots_inside = cofactor.as_ref().and_then(|c| c.roots_inside_circle(COFACTOR_RADIUS));
        let cofactor_in_unit_disk = cofactor.as_ref().map(|c| {
            let deg = c.degree().unwrap_or(0);
            cofactor_roots_inside == Some(deg) && c.descartes_above(&one) == 0
        });
        let roots_overlap = char_root.overlaps(&expected_root);
        Ok(Self {
            char_poly,
            expected,
            cofactor,
            cofactor_side: side,
            cofactor_roots_inside,
            cofactor_in_unit_disk,
            char_root,
            expected_root,
            roots_overlap,
        })
    }

    /// Largest roots agree and any cofactor carries no entropy.
    pub fn ok(&self) -> bool {
        self.roots_overlap && self.cofactor_in_unit_disk.unwrap_or(true)
    }
}

/// Brute-force periods against the closed form, up to a bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCheck {
    pub max_period: u64,
    pub found: BTreeSet<u64>,
    pub expected: BTreeSet<u64>,
    pub loops_examined: usize,
}

/// Outcome of every check on a family instance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub family: FamilyName,
    pub n: u64,
    pub classes: usize,
    pub rotation: Option<RotationInterval>,
    pub rot_ok: bool,
    pub per: Option<PeriodSet>,
    pub per_ok: bool,
    pub poly: Option<PolyComparison>,
    pub poly_ok: bool,
    /// Comparison with the polynomial of the Markov graph figure, when the
    /// family states one that differs from its closed form.
    pub graph_poly: Option<PolyComparison>,
    pub transitivity: TransitivityCertificate,
    pub transitive_ok: bool,
    /// Class count and branching classes as described for the family.
    pub structure_ok: bool,
    pub oracle: Option<OracleCheck>,
    pub oracle_ok: bool,
    pub cofin: Option<CofinitenessReport>,
    pub entropy: Option<CertifiedRoot>,
    /// Outward-rounded `[log lower, log upper]` of the spectral radius.
    pub entropy_log: Option<(f64, f64)>,
    /// Each claimed bound of the family theorem, evaluated literally.
    pub theorem_bound_flags: BTreeMap<String, bool>,
    pub errors: Vec<String>,
}

impl VerificationReport {
    /// Every check passed, including every theorem bound.
    pub fn all_green(&self) -> bool {
        self.errors.is_empty()
            && self.rot_ok
            && self.per_ok
            && self.poly_ok
            && self.transitive_ok
            && self.structure_ok
            && self.oracle_ok
            && self.theorem_bound_flags.values().all(|&v| v)
    }
}

fn structure_ok(inst: &FamilyInstance) -> bool {
    let g = inst.markov.graph();
    let branching = (0..g.len()).filter(|&v| g.out_degree(v) > 1).count();
    let n = inst.n as usize;
    match inst.name {
        FamilyName::Dream => g.len() == 2 * (2 * n - 1),
        // J0, J3 and the last interval of the I-chain, which covers J1 and J2.
        FamilyName::Persistent => g.len() == 2 * n + 2 && branching == 3,
        FamilyName::Montevideo => g.len() == 4 * n * n && branching == 5,
    }
}

/// Theorem claims on `sbc` and `bc`, and the entropy lower bound `h >= log 3 / s`.
fn bound_flags(inst: &FamilyInstance, cofin: &CofinitenessReport, rot: &RotationInterval, entropy: Option<&CertifiedRoot>) -> BTreeMap<String, bool> {
    let e = &inst.expected_cofin;
    let mut f = BTreeMap::new();
    f.insert("sbc".to_string(), cofin.sbc == e.sbc);
    f.insert("bc_exists".to_string(), cofin.bc.is_some());
    if let Some(bc) = cofin.bc {
        f.insert("bc_lower".to_string(), e.bc_bounds.0 <= bc);
        f.insert("bc_upper".to_string(), bc <= e.bc_bounds.1);
        if let Some(x) = e.bc {
            f.insert("bc_exact".to_string(), bc == x);
        }
    }
    if let (Some(s), Some(sigma)) = (smallest_denominator_inside(rot), entropy) {
        // log sigma >= log 3 / s  iff  sigma^s >= 3; checked on the upper end of the bracket.
        let mut pw = Rational::one();
        for _ in 0..s {
            pw = &pw * &sigma.upper;
        }
        f.insert("entropy_log3_over_s".to_string(), pw >= Rational::from_integer(3.into()));
    }
    f
}

/// Smallest `s` with some `p/s` strictly inside the rotation interval.
pub fn smallest_denominator_inside(rot: &RotationInterval) -> Option<u64> {
    if rot.is_degenerate() {
        return None;
    }
    crate::periods::m_set(&rot.c, &rot.d).ok().and_then(|m| (1..=m.tail_from()?).find(|&k| m.contains(k)))
}

/// Run every check on an instance, collecting failures into the report.
pub fn verify(inst: &FamilyInstance, cfg: &VerifyConfig) -> VerificationReport {
    let mut errors = Vec::new();
    let m = &inst.markov;
    let transitivity = m.transitivity_certificate();
    let rotation = rotation_interval(&inst.lifting, &cfg.rotation).map_err(|e| errors.push(format!("rotation: {e}"))).ok();
    let rot_ok = rotation.as_ref() == Some(&inst.expected_rot);
    let analysis = rotation
        .clone()
        .and_then(|r| per_with_rotation(m, r, &cfg.oracle_cfg).map_err(|e| errors.push(format!("periods: {e}"))).ok());
    let per = analysis.map(|a| a.per);
    let per_ok = per.as_ref() == Some(&inst.expected_per);
    let poly = m
        .rome_char_poly(&m.find_rome())
        .and_then(|p| PolyComparison::new(p, inst.expected_poly.clone(), &cfg.tol))
        .map_err(|e| errors.push(format!("polynomial: {e}")))
        .ok();
    let poly_ok = poly.as_ref().is_some_and(PolyComparison::ok);
    let graph_poly = match (&poly, &inst.graph_poly) {
        (Some(p), Some(g)) => PolyComparison::new(p.char_poly.clone(), g.clone(), &cfg.tol)
            .map_err(|e| errors.push(format!("graph polynomial: {e}")))
            .ok(),
        _ => None,
    };
    let entropy = poly.as_ref().map(|p| p.char_root.clone());
    let cofin = per.as_ref().and_then(|p| cofiniteness::report(p).map_err(|e| errors.push(format!("cofiniteness: {e}"))).ok());
    let oracle = match (&cofin, cfg.oracle) {
        (Some(c), true) => {
            let bound = c.sbc + 3;
            match periods_up_to(m, bound, &cfg.oracle_cfg) {
                Ok(r) => Some(OracleCheck {
                    max_period: bound,
                    found: r.periods(),
                    expected: inst.expected_per.members_up_to(bound),
                    loops_examined: r.loops_examined,
                }),
                Err(e) => {
                    errors.push(format!("oracle: {e}"));
                    None
                }
            }
        }
        _ => None,
    };
    let oracle_ok = if cfg.oracle { oracle.as_ref().is_some_and(|o| o.found == o.expected) } else { true };
    let theorem_bound_flags = match (&cofin, &rotation) {
        (Some(c), Some(r)) => bound_flags(inst, c, r, entropy.as_ref()),
        _ => BTreeMap::new(),
    };
    VerificationReport {
        family: inst.name,
        n: inst.n,
        classes: m.class_count(),
        rotation,
        rot_ok,
        per,
        per_ok,
        entropy_log: entropy.as_ref().map(entropy_bounds),
        entropy,
        poly,
        poly_ok,
        graph_poly,
        transitive_ok: transitivity.irreducible && !transitivity.permutation,
        transitivity,
        structure_ok: structure_ok(inst),
        oracle,
        oracle_ok,
        cofin,
        theorem_bound_flags,
        errors,
    }
}
