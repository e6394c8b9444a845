//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! The target runs without the libtest harness so the lines are always
//! printed. It exits non-zero when the set of failing items differs from
//! `KNOWN_RED`, in either direction: an unexpected failure and a known red
//! item that turned green are both reported.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use circle_periods::arith::{rat, CertifiedRoot, Rational};
use circle_periods::markov::tol_pow10;
use circle_periods::families::{instance, mts1_scan, verify, FamilyInstance, FamilyName, VerificationReport, VerifyConfig};
use circle_periods::graphext::{admits_extension, extend, traversal, verify_extension, CombGraph, ExtensionReport};
use circle_periods::lifting::{rotation_interval, RotationConfig, RotationInterval};
use circle_periods::minentropy::{beta, exceeds_cube_root_bound, BetaResult};
use circle_periods::oracle::OracleConfig;
use circle_periods::periods::{m_set, per_with_rotation};

use FamilyName::{Dream, Montevideo, Persistent};

/// Bracket width for every certified root.
fn tol() -> Rational {
    tol_pow10(12)
}
/// Wall-clock budget for the exact period sets of criterion 1.
const PER_BUDGET: Duration = Duration::from_secs(60);
/// Entropy ceiling at the largest scanned parameter.
const ENTROPY_CEILING: f64 = 0.35;
/// Rotation-interval length required at the end of each scan.
fn len_ceiling() -> Rational {
    rat(1, 100)
}

/// Items expected to fail, as `(criterion, item)`. Persistent members with
/// `n = 1 mod 4` do not match the stated closed form of their polynomial,
/// while they do match the polynomial read off their Markov graph.
const KNOWN_RED: &[(u32, &str)] = &[
    (4, "persistent n=5 poly"),
    (4, "persistent n=9 poly"),
    (4, "persistent n=13 poly"),
    (7, "persistent n=9 on apple poly"),
    (7, "persistent n=13 on apple poly"),
    (7, "persistent n=9 on star3 poly"),
    (7, "persistent n=13 on star3 poly"),
];

#[derive(Default)]
struct Criterion {
    checked: usize,
    failed: Vec<String>,
}

impl Criterion {
    fn check(&mut self, ok: bool, item: impl Into<String>) {
        self.checked += 1;
        if !ok {
            self.failed.push(item.into());
        }
    }
}

fn instances() -> Vec<(FamilyName, u64)> {
    let mut v: Vec<_> = (3..=10).map(|n| (Dream, n)).collect();
    v.extend([5, 7, 9, 11, 13].map(|n| (Persistent, n)));
    v.extend((3..=6).map(|n| (Montevideo, n)));
    v
}

fn data(file: &str) -> CombGraph {
    let path = format!("{}/data/{file}", env!("CARGO_MANIFEST_DIR"));
    CombGraph::from_json(&std::fs::read_to_string(&path).expect("graph file")).expect("graph json")
}

fn criterion_1(insts: &[FamilyInstance]) -> Criterion {
    let mut c = Criterion::default();
    let start = Instant::now();
    for inst in insts {
        let ok = rotation_interval(&inst.lifting, &RotationConfig::default())
            .and_then(|rot| per_with_rotation(&inst.markov, rot, &OracleConfig::default()))
            .is_ok_and(|a| a.per == inst.expected_per);
        c.check(ok, format!("{} n={} per", inst.name, inst.n));
    }
    let elapsed = start.elapsed();
    c.check(elapsed < PER_BUDGET, format!("time {elapsed:?}"));
    c
}

fn criterion_2(reports: &[VerificationReport]) -> Criterion {
    let mut c = Criterion::default();
    for r in reports {
        c.check(r.oracle.is_some() && r.oracle_ok, format!("{} n={} oracle", r.family, r.n));
    }
    c
}

fn criterion_3(reports: &[VerificationReport]) -> Criterion {
    let mut c = Criterion::default();
    for r in reports {
        let n = r.n as i64;
        let expected = match r.family {
            Dream => RotationInterval::new(rat(1, 2 * n - 1), rat(2, 2 * n - 1)),
            Persistent => RotationInterval::new(rat(1, 2), rat(n + 2, 2 * n)),
            Montevideo => RotationInterval::new(rat(2 * n - 1, 2 * n * n), rat(2 * n + 1, 2 * n * n)),
        };
        c.check(r.rot_ok && r.rotation.as_ref() == Some(&expected), format!("{} n={} rot", r.family, r.n));
    }
    c
}

fn narrow(r: &CertifiedRoot) -> bool {
    r.width() <= tol()
}

fn criterion_4(reports: &[VerificationReport], scans: &[(FamilyName, circle_periods::families::ScanReport)]) -> Criterion {
    let mut c = Criterion::default();
    for r in reports {
        let ok = r.poly.as_ref().is_some_and(|p| {
            p.roots_overlap && narrow(&p.char_root) && narrow(&p.expected_root) && p.cofactor_in_unit_disk == Some(true)
        });
        c.check(ok, format!("{} n={} poly", r.family, r.n));
    }
    for (name, s) in scans {
        c.check(s.entropy_strictly_decreasing, format!("{name} scan entropy decreasing"));
        let last = s.rows.last().and_then(|r| r.entropy_log);
        c.check(last.is_some_and(|(_, hi)| hi < ENTROPY_CEILING), format!("{name} scan final entropy {last:?}"));
    }
    c
}

fn criterion_5(reports: &[VerificationReport]) -> Criterion {
    let mut c = Criterion::default();
    for n in 3..=20 {
        let ok = instance(Dream, n).is_ok_and(|inst| {
            let r = verify(&inst, &VerifyConfig { oracle: false, ..VerifyConfig::default() });
            r.cofin.as_ref().is_some_and(|k| k.sbc == n && k.bc == Some(n))
        });
        c.check(ok, format!("dream n={n} bc=sbc=n"));
    }
    for r in reports.iter().filter(|r| r.family == Persistent) {
        let k = (r.n - 1) / 2;
        let ok = r.cofin.as_ref().is_some_and(|x| x.sbc == r.n && x.bc.is_some_and(|b| 2 * k < b && b <= r.n));
        c.check(ok, format!("persistent n={} sbc=n, 2k+1<=bc<=n", r.n));
    }
    for r in reports.iter().filter(|r| r.family == Montevideo) {
        let n = r.n;
        let nu = if n % 2 == 0 { n } else { n - 1 };
        let sbc = n * nu + 1 - nu / 2;
        let cofin = r.cofin.as_ref();
        c.check(cofin.is_some_and(|x| x.sbc == sbc), format!("montevideo n={n} sbc={sbc}"));
        let literal = [(3, 6), (4, 15), (5, 19)].iter().find(|&&(m, _)| m == n).map(|&(_, b)| b);
        let bound_holds = r.theorem_bound_flags.get("bc_upper").copied();
        let ok = match literal {
            Some(b) => cofin.is_some_and(|x| x.bc == Some(b)) && bound_holds == Some(false),
            None => bound_holds == Some(true),
        };
        c.check(ok, format!("montevideo n={n} bc upper bound pattern (bc={:?})", cofin.and_then(|x| x.bc)));
    }
    c
}

fn criterion_6(reports: &[VerificationReport], ext: &[(String, ExtensionReport)]) -> Criterion {
    let mut c = Criterion::default();
    for r in reports {
        c.check(r.transitive_ok, format!("{} n={} transitive", r.family, r.n));
    }
    for (label, e) in ext {
        c.check(e.transitive_ok, format!("{label} transitive"));
    }
    c
}

fn criterion_7(ext: &[(String, ExtensionReport)], graphs: &[(&str, CombGraph)]) -> Criterion {
    let mut c = Criterion::default();
    for (label, g) in graphs {
        let ok = g.excised().and_then(|(x, a, b)| traversal(&x, &a, &b)).is_ok_and(|t| {
            t.m >= 5 && t.m % 2 == 1 && t.m_is_admissible() && t.parity_property() && t.is_surjective_walk()
        });
        c.check(ok, format!("{label} traversal"));
    }
    for (label, e) in ext {
        let brackets = e.poly.as_ref().is_some_and(|p| p.roots_overlap && narrow(&p.char_root) && narrow(&p.expected_root));
        c.check(e.errors.is_empty() && e.integer_evaluations_ok && brackets, format!("{label} poly"));
        c.check(e.entropy_above_circle, format!("{label} entropy above circle"));
    }
    for (g, _) in graphs {
        for name in [Dream, Persistent, Montevideo] {
            let roots: Vec<&CertifiedRoot> = ext
                .iter()
                .filter(|(l, e)| e.family == name && l.ends_with(&format!("on {g}")))
                .filter_map(|(_, e)| e.poly.as_ref().map(|p| &p.char_root))
                .collect();
            let dec = roots.windows(2).all(|w| w[0].certainly_above(w[1]));
            c.check(roots.len() >= 2 && dec, format!("{name} on {g} extended entropy decreasing"));
        }
    }
    for name in [Dream, Persistent, Montevideo] {
        let circle: Vec<CertifiedRoot> = ext
            .iter()
            .filter(|(l, e)| e.family == name && l.ends_with("on star3"))
            .filter_map(|(_, e)| instance(name, e.n).ok()?.markov.entropy(&tol()).ok())
            .collect();
        c.check(circle.windows(2).all(|w| w[0].certainly_above(&w[1])), format!("{name} circle entropy decreasing"));
    }
    c
}

fn beta_of(c: &Rational, d: &Rational) -> Option<BetaResult> {
    beta(c, d, &tol()).ok()
}

fn criterion_8() -> Criterion {
    let mut c = Criterion::default();
    let grid = [
        (rat(0, 1), rat(1, 2)),
        (rat(1, 5), rat(2, 5)),
        (rat(1, 4), rat(1, 3)),
        (rat(1, 3), rat(2, 3)),
        (rat(1, 2), rat(7, 10)),
        (rat(2, 5), rat(3, 5)),
        (rat(3, 5), rat(4, 5)),
        (rat(1, 7), rat(3, 7)),
        (rat(5, 4), rat(3, 2)),
        (rat(-1, 3), rat(1, 6)),
    ];
    let three_tol = tol() * Rational::from_integer(3.into());
    let mut results = Vec::new();
    for (lo, hi) in &grid {
        let b = beta_of(lo, hi);
        c.check(b.as_ref().is_some_and(|b| b.method_agreement), format!("beta({lo}, {hi}) two methods agree"));
        let q = m_set(lo, hi).ok().and_then(|m| (1..=m.tail_from()?).find(|&k| m.contains(k)));
        let ok = match (&b, q) {
            (Some(b), Some(q)) => exceeds_cube_root_bound(&b.beta, q as u32),
            _ => false,
        };
        c.check(ok, format!("beta({lo}, {hi}) > 3^(1/{q:?})"));
        results.push(b);
    }
    let witness = beta_of(&rat(1, 2), &rat(7, 10)).is_some_and(|b| exceeds_cube_root_bound(&b.beta, 5));
    c.check(witness, "beta(1/2, 7/10) > 3^(1/5) via 3/5");
    for n in 3..=8u64 {
        let ok = instance(Dream, n).is_ok_and(|inst| {
            let sigma = inst.markov.entropy(&tol());
            let b = beta_of(&inst.expected_rot.c, &inst.expected_rot.d);
            // log beta <= log sigma + 3 tol follows from beta <= sigma (1 + 3 tol).
            match (sigma, b) {
                (Ok(s), Some(b)) => b.beta.lower <= &s.upper * (Rational::from_integer(1.into()) + &three_tol),
                _ => false,
            }
        });
        c.check(ok, format!("dream n={n} log beta <= h + 3 tol"));
    }
    let nested = [(1, 0), (2, 0), (2, 1), (2, 7), (1, 7), (5, 3)];
    for (inner, outer) in nested {
        let (ci, di) = &grid[inner];
        let (co, d_o) = &grid[outer];
        assert!(co <= ci && di <= d_o, "grid pair ({inner}, {outer}) is not nested");
        let ok = match (&results[inner], &results[outer]) {
            (Some(i), Some(o)) => i.beta.lower <= o.beta.upper,
            _ => false,
        };
        c.check(ok, format!("beta({ci}, {di}) <= beta({co}, {d_o})"));
    }
    c
}

fn criterion_9(scans: &[(FamilyName, circle_periods::families::ScanReport)]) -> Criterion {
    let mut c = Criterion::default();
    for (name, s) in scans {
        c.check(s.len_strictly_decreasing, format!("{name} len Rot strictly decreasing"));
        let last = s.rows.last().and_then(|r| r.len_rot.clone());
        c.check(last.as_ref().is_some_and(|l| *l <= len_ceiling()), format!("{name} final len Rot {last:?}"));
        c.check(s.bc_nondecreasing, format!("{name} bc nondecreasing"));
        c.check(s.entropy_strictly_decreasing, format!("{name} entropy strictly decreasing"));
        for row in &s.rows {
            // The literal montevideo upper bound fails at n = 3, 4, 5; criterion 5 pins that pattern.
            let expected: BTreeSet<&str> =
                if *name == Montevideo && (3..=5).contains(&row.n) { ["bc_upper"].into() } else { BTreeSet::new() };
            let got: BTreeSet<&str> = row.flags.iter().map(String::as_str).collect();
            c.check(got == expected, format!("{name} n={} flags {:?}", row.n, row.flags));
        }
    }
    c
}

fn main() -> ExitCode {
    let cfg = VerifyConfig::default();
    let insts: Vec<FamilyInstance> = instances().into_iter().map(|(f, n)| instance(f, n).expect("family instance")).collect();
    let reports: Vec<VerificationReport> = insts.iter().map(|i| verify(i, &cfg)).collect();
    let scans: Vec<_> = [Dream, Persistent, Montevideo]
        .into_iter()
        .map(|f| {
            let range = f.scan_range();
            (f, mts1_scan(f, range[0], *range.last().unwrap(), &cfg).expect("scan"))
        })
        .collect();
    let graphs = [("apple", data("apple.json")), ("star3", data("star3.json"))];
    let mut ext = Vec::new();
    for (g, graph) in &graphs {
        for inst in insts.iter().filter(|i| admits_extension(i.name, i.n)) {
            let label = format!("{} n={} on {g}", inst.name, inst.n);
            match extend(inst, graph) {
                Ok(e) => ext.push((label, verify_extension(inst, &e, &tol()))),
                Err(err) => panic!("{label}: {err}"),
            }
        }
    }

    let criteria = [
        ("exact period sets", criterion_1(&insts)),
        ("oracle agrees up to sbc + 3", criterion_2(&reports)),
        ("exact rotation intervals", criterion_3(&reports)),
        ("entropy polynomials", criterion_4(&reports, &scans)),
        ("cofiniteness", criterion_5(&reports)),
        ("irreducible and non-permutation", criterion_6(&reports, &ext)),
        ("graph extension", criterion_7(&ext, &graphs)),
        ("minimal entropy exponent", criterion_8()),
        ("family scans", criterion_9(&scans)),
    ];

    let mut failing = BTreeSet::new();
    for (k, (title, c)) in criteria.iter().enumerate() {
        let id = k as u32 + 1;
        let status = if c.failed.is_empty() { "PASS" } else { "FAIL" };
        let detail = if c.failed.is_empty() { String::new() } else { format!("; failing: {}", c.failed.join(", ")) };
        println!("{status} criterion {id}: {title} ({} of {} checks passed{detail})", c.checked - c.failed.len(), c.checked);
        for item in &c.failed {
            failing.insert((id, item.clone()));
        }
    }
    let known: BTreeSet<(u32, String)> = KNOWN_RED.iter().map(|&(k, s)| (k, s.to_string())).collect();
    let unexpected: Vec<_> = failing.difference(&known).collect();
    let recovered: Vec<_> = known.difference(&failing).collect();
    if unexpected.is_empty() && recovered.is_empty() {
        println!("acceptance: failing items are exactly the {} documented known reds", known.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected failures {unexpected:?}; known reds now passing {recovered:?}");
        ExitCode::FAILURE
    }
}
