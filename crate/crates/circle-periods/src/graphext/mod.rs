//! Extension of the circle families to graphs that contain a circuit.
//!
//! An interval is cut out of a circuit of the graph `G`, leaving a subgraph
//! `X` with two new endpoints. A surjective walk through `X` from one endpoint
//! to the other yields `m` pieces. In the circle family's Markov graph a chain
//! of classes `A -> B -> C -> D` is replaced by `A -> L_i -> U_j -> D`, where
//! the `L_i` are the `m` pieces of `B` and the `U_j` are the distinct images of
//! those pieces in `X`. The period and entropy claims for the extended map are
//! checked on the resulting graph.

mod graph;

use std::collections::BTreeSet;

use num_traits::One;
use serde::{Deserialize, Serialize};

pub use graph::{traversal, CombGraph, Excision, Step, Traversal};

use crate::arith::{frac, IntPoly, Rational};
use crate::error::{Error, Result};
use crate::families::{
    dream_poly_m, montevideo_poly_m, persistent_graph_poly_m, persistent_poly_m, FamilyInstance, FamilyName, OrbitTag, PolyComparison,
};
use crate::markov::{tol_pow10, Digraph, Rome, TransitivityCertificate};

/// Family Markov graph with the chain `A -> B -> C -> D` re-routed through the traversal.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtendedMarkov {
    pub family: FamilyName,
    pub n: u64,
    pub m: usize,
    pub t: usize,
    pub labels: Vec<String>,
    pub graph: Digraph,
    pub orientation: Vec<i8>,
    /// Base class of every extended vertex: `L_i -> B`, `U_j -> C`, others to themselves.
    pub projection: Vec<usize>,
    /// Base class indices of `A, B, C, D`.
    pub chain: [usize; 4],
    pub base_classes: usize,
    pub l_vertices: Vec<usize>,
    pub u_vertices: Vec<usize>,
    /// `L_i -> U_{assignment[i]}`.
    pub assignment: Vec<usize>,
    /// Base graph, for the projection check.
    pub base_graph: Digraph,
    pub base_char_poly: IntPoly,
}

impl ExtendedMarkov {
    pub fn vertex(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn rome_char_poly(&self) -> Result<IntPoly> {
        self.graph.rome_char_poly(&self.graph.find_rome())
    }
}

/// `(orbit, index)` pairs of the endpoints of `A, B, C, D` and of the return class.
fn chain_points(name: FamilyName, n: u64) -> [(OrbitTag, i64, OrbitTag, i64); 4] {
    use OrbitTag::{X, Y};
    let n = n as i64;
    match name {
        FamilyName::Dream => [(Y, 1, Y, 2), (Y, 3, Y, 4), (Y, 5, Y, 6), (Y, 7, Y, 8)],
        FamilyName::Persistent => {
            let l = |i: i64| (n + 1 + i * (n + 2)).rem_euclid(2 * n);
            let r = |i: i64| (n + 2 + i * (n + 2)).rem_euclid(2 * n);
            [(Y, l(0), Y, r(0)), (Y, l(1), Y, r(1)), (Y, l(2), Y, r(2)), (Y, l(3), Y, r(3))]
        }
        FamilyName::Montevideo => {
            let (p, r, q) = (2 * n - 1, 2 * n + 1, 2 * n * n);
            [
                (Y, (n - 4) * r + n, X, (n - 3) * p + n),
                (Y, (n - 3) * r + n, X, (n - 2) * p + n),
                (Y, (n - 2) * r + n, X, (n - 1) * p + n),
                (Y, q - 1, X, q),
            ]
        }
    }
}

/// Smallest parameter of each family that admits an extension.
pub fn admits_extension(name: FamilyName, n: u64) -> bool {
    match name {
        FamilyName::Dream => n >= 5,
        FamilyName::Persistent => n >= 7 && n % 2 == 1,
        FamilyName::Montevideo => n >= 4,
    }
}

/// Base class indices of the chain `A, B, C, D`.
pub fn chain_classes(inst: &FamilyInstance) -> Result<[usize; 4]> {
    let mut out = [0; 4];
    for (slot, (lt, li, rt, ri)) in out.iter_mut().zip(chain_points(inst.name, inst.n)) {
        let left = inst.coordinate(lt, li);
        let right = inst.coordinate(rt, ri);
        let c = inst
            .markov
            .class_starting_at(&left)
            .ok_or_else(|| Error::BadParameter(format!("no class starts at {lt:?}{li}")))?;
        let class = &inst.markov.classes()[c];
        if frac(&class.right) != frac(&right) && !(frac(&right) == Rational::from_integer(0.into()) && class.right == Rational::one()) {
            return Err(Error::BadParameter(format!("class {} does not end at {rt:?}{ri}", class.name)));
        }
        *slot = c;
    }
    Ok(out)
}

/// Replace `B` and `C` by the `L` and `U` vertices of the traversal of `G`.
pub fn extend(inst: &FamilyInstance, g: &CombGraph) -> Result<ExtendedMarkov> {
    if !admits_extension(inst.name, inst.n) {
        return Err(Error::BadParameter(format!("{} family with n = {} has no extension", inst.name, inst.n)));
    }
    let (x, a, b) = g.excised()?;
    let tr = traversal(&x, &a, &b)?;
    extend_with(inst, tr.m, &tr.assignment)
}

/// Extension for `m` pieces of `B`, piece `i` mapping onto `U_{assignment[i]}`.
pub fn extend_with(inst: &FamilyInstance, m: usize, assignment: &[usize]) -> Result<ExtendedMarkov> {
    if assignment.len() != m || m == 0 {
        return Err(Error::BadParameter("assignment must give one U for each of the m pieces".into()));
    }
    let u_count = assignment.iter().max().map_or(0, |&j| j + 1);
    let used: BTreeSet<usize> = assignment.iter().copied().collect();
    if used.len() != u_count {
        return Err(Error::BadParameter("every U must be the image of some piece".into()));
    }
    let chain @ [ca, cb, cc, cd] = chain_classes(inst)?;
    let base = inst.markov.graph();
    let k = base.len();
    let preds = |v: usize| (0..k).filter(|&u| base.has_arrow(u, v)).collect::<Vec<_>>();
    if base.succ[ca] != [cb] || base.succ[cb] != [cc] || base.succ[cc] != [cd] || preds(cb) != [ca] || preds(cc) != [cb] {
        return Err(Error::BadParameter(format!("{} n = {}: the classes A, B, C, D do not form a simple chain", inst.name, inst.n)));
    }
    let kept: Vec<usize> = (0..k).filter(|&v| v != cb && v != cc).collect();
    let mut index = vec![usize::MAX; k];
    for (i, &v) in kept.iter().enumerate() {
        index[v] = i;
    }
    let l_vertices: Vec<usize> = (kept.len()..kept.len() + m).collect();
    let u_vertices: Vec<usize> = (kept.len() + m..kept.len() + m + u_count).collect();
    let total = kept.len() + m + u_count;
    let mut succ = vec![Vec::new(); total];
    for &v in &kept {
        for &w in &base.succ[v] {
            if w == cb {
                succ[index[v]].extend(l_vertices.iter().copied());
            } else {
                succ[index[v]].push(index[w]);
            }
        }
    }
    for (i, &l) in l_vertices.iter().enumerate() {
        succ[l].push(u_vertices[assignment[i]]);
    }
    for &u in &u_vertices {
        succ[u].push(index[cd]);
    }
    let classes = inst.markov.classes();
    let base_orient = inst.markov.orientation();
    let mut labels: Vec<String> = kept.iter().map(|&v| classes[v].name.clone()).collect();
    let mut orientation: Vec<i8> = kept.iter().map(|&v| base_orient[v]).collect();
    let mut projection = kept.clone();
    for i in 0..m {
        labels.push(format!("L{i}"));
        orientation.push(base_orient[cb]);
        projection.push(cb);
    }
    for j in 0..u_count {
        labels.push(format!("U{j}"));
        orientation.push(base_orient[cc]);
        projection.push(cc);
    }
    let base_char_poly = inst.markov.rome_char_poly(&inst.markov.find_rome())?;
    Ok(ExtendedMarkov {
        family: inst.name,
        n: inst.n,
        m,
        t: u_count - 1,
        labels,
        graph: Digraph::new(succ),
        orientation,
        projection,
        chain,
        base_classes: k,
        l_vertices,
        u_vertices,
        assignment: assignment.to_vec(),
        base_graph: base.clone(),
        base_char_poly,
    })
}

/// The closed-form polynomial of the extended map.
pub fn extended_closed_form(name: FamilyName, n: u64, m: usize) -> IntPoly {
    let (n, m) = (n as usize, m as i64);
    match name {
        FamilyName::Dream => dream_poly_m(n, m),
        FamilyName::Persistent => persistent_poly_m(n, m),
        FamilyName::Montevideo => montevideo_poly_m(n, m),
    }
}

/// Results of the combinatorial checks on an extended graph.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtensionReport {
    pub family: FamilyName,
    pub n: u64,
    pub m: usize,
    pub t: usize,
    pub vertices: usize,
    pub vertex_count_ok: bool,
    pub transitivity: TransitivityCertificate,
    pub transitive_ok: bool,
    pub poly: Option<PolyComparison>,
    pub poly_ok: bool,
    /// Persistent graphs with `n = 4k+1`: comparison with the polynomial of the graph figure.
    pub graph_poly: Option<PolyComparison>,
    /// Closed form and rome polynomial agree exactly at `x = 2` and `x = 3`.
    pub integer_evaluations_ok: bool,
    /// Extended spectral radius certainly above the circle one.
    pub entropy_above_circle: bool,
    /// Every extended arrow projects to a base arrow.
    pub projection_ok: bool,
    /// Persistent family: the only loop on `{J0, J2}` is the positive loop of length 2.
    pub j0_j2_loop_ok: Option<bool>,
    /// Persistent family: `{J0, J3}` is a rome.
    pub rome_ok: Option<bool>,
    pub errors: Vec<String>,
}

impl ExtensionReport {
    pub fn all_green(&self) -> bool {
        self.errors.is_empty()
            && self.vertex_count_ok
            && self.transitive_ok
            && self.poly_ok
            && self.integer_evaluations_ok
            && self.entropy_above_circle
            && self.projection_ok
            && self.j0_j2_loop_ok.unwrap_or(true)
            && self.rome_ok.unwrap_or(true)
    }
}

fn persistent_class(inst: &FamilyInstance, e: &ExtendedMarkov, l: (OrbitTag, i64)) -> Option<usize> {
    let c = inst.markov.class_starting_at(&inst.coordinate(l.0, l.1))?;
    e.projection.iter().position(|&p| p == c)
}

/// Run every check on an extension of `inst`.
pub fn verify_extension(inst: &FamilyInstance, e: &ExtendedMarkov, tol: &Rational) -> ExtensionReport {
    let mut errors = Vec::new();
    let vertex_count_ok = e.graph.len() == e.base_classes - 2 + e.m + e.t + 1 && e.t < e.m;
    let transitivity = e.graph.transitivity_certificate();
    let closed = extended_closed_form(e.family, e.n, e.m);
    let char_poly = e.rome_char_poly().map_err(|err| errors.push(format!("rome polynomial: {err}"))).ok();
    // The rome determinant carries a power of x and a sign; both are removed before comparing.
    let char_poly = char_poly.map(|p| strip_monomial(&p));
    let poly = char_poly
        .as_ref()
        .and_then(|p| PolyComparison::new(p.clone(), strip_monomial(&closed), tol).map_err(|err| errors.push(format!("closed form: {err}"))).ok());
    let graph_poly = match (&char_poly, e.family == FamilyName::Persistent && e.n % 4 == 1) {
        (Some(p), true) => PolyComparison::new(p.clone(), strip_monomial(&persistent_graph_poly_m(e.n as usize, e.m as i64)), tol)
            .map_err(|err| errors.push(format!("graph polynomial: {err}")))
            .ok(),
        _ => None,
    };
    let integer_evaluations_ok = poly.as_ref().is_some_and(integer_identity_holds);
    let circle_root = crate::arith::largest_root_above(&e.base_char_poly, &Rational::one(), tol).ok();
    let entropy_above_circle = match (&poly, &circle_root) {
        (Some(p), Some(c)) => p.char_root.certainly_above(c),
        _ => false,
    };
    let projection_ok = e.graph.arrows().iter().all(|&[u, v]| e.base_graph.has_arrow(e.projection[u], e.projection[v]));
    let (j0_j2_loop_ok, rome_ok) = if e.family == FamilyName::Persistent {
        let n = inst.n as i64;
        let j0 = persistent_class(inst, e, (OrbitTag::X, 0));
        // J0 = [x0, y0], J2 = [x1, y_{n-2}] and J3 = [y_{2n-1}, x2].
        let j2 = persistent_class(inst, e, (OrbitTag::X, 1));
        let j3 = persistent_class(inst, e, (OrbitTag::Y, 2 * n - 1));
        let loop_ok = match (j0, j2) {
            (Some(a), Some(b)) => Some(only_positive_two_loop(e, a, b)),
            _ => {
                errors.push("classes J0 and J2 not found".into());
                None
            }
        };
        let rome = match (j0, j3) {
            (Some(a), Some(b)) => Some(e.graph.validate_rome(&Rome::new([a, b])).is_ok()),
            _ => {
                errors.push("classes J0 and J3 not found".into());
                None
            }
        };
        (loop_ok, rome)
    } else {
        (None, None)
    };
    ExtensionReport {
        family: e.family,
        n: e.n,
        m: e.m,
        t: e.t,
        vertices: e.graph.len(),
        vertex_count_ok,
        transitive_ok: transitivity.irreducible && !transitivity.permutation,
        transitivity,
        poly_ok: poly.as_ref().is_some_and(PolyComparison::ok),
        poly,
        graph_poly,
        integer_evaluations_ok,
        entropy_above_circle,
        projection_ok,
        j0_j2_loop_ok,
        rome_ok,
        errors,
    }
}

/// The closed form equals the rome polynomial times the reported cofactor at `x = 2` and `x = 3`.
pub fn integer_identity_holds(c: &PolyComparison) -> bool {
    [2, 3].iter().all(|&x| {
        let x = num_bigint::BigInt::from(x);
        let (ch, ex) = (c.char_poly.eval_int(&x), c.expected.eval_int(&x));
        match (c.cofactor_side.as_deref(), &c.cofactor) {
            (Some("expected/char"), Some(k)) => ex == ch * k.eval_int(&x),
            (Some("char/expected"), Some(k)) => ch == ex * k.eval_int(&x),
            _ => ch == ex,
        }
    })
}

/// `p / (s x^k)` with `x^k` the largest power of `x` dividing `p` and `s` the sign of the leading coefficient.
pub fn strip_monomial(p: &IntPoly) -> IntPoly {
    let k = p.low_order();
    let q = IntPoly::new(p.coeffs()[k.min(p.coeffs().len())..].to_vec());
    if q.lead() < num_bigint::BigInt::from(0) {
        q.neg()
    } else {
        q
    }
}

/// Loops inside the subgraph on `{a, b}` are exactly `a -> b -> a` and its repetitions, and it is positive.
fn only_positive_two_loop(e: &ExtendedMarkov, a: usize, b: usize) -> bool {
    let sub = Digraph::new(vec![
        e.graph.succ[a].iter().filter_map(|&w| (w == a).then_some(0).or((w == b).then_some(1))).collect(),
        e.graph.succ[b].iter().filter_map(|&w| (w == a).then_some(0).or((w == b).then_some(1))).collect(),
    ]);
    let orient = [e.orientation[a], e.orientation[b]];
    match sub.enumerate_loops(4, &orient, 16) {
        Ok(loops) => {
            let simple: Vec<_> = loops.iter().filter(|l| l.simple).collect();
            simple.len() == 1 && simple[0].length == 2 && simple[0].sign == 1
        }
        Err(_) => false,
    }
}

/// Default tolerance for extension checks.
pub fn default_tol() -> Rational {
    tol_pow10(12)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::instance;

    fn star() -> CombGraph {
        CombGraph::from_json(include_str!("../../data/star3.json")).unwrap()
    }

    #[test]
    fn star_extension_of_persistent_seven() {
        let inst = instance(FamilyName::Persistent, 7).unwrap();
        let e = extend(&inst, &star()).unwrap();
        assert_eq!(e.m, 7);
        assert_eq!(e.graph.len(), 2 * 7 + 2 - 2 + e.m + e.t + 1);
        let r = verify_extension(&inst, &e, &default_tol());
        assert!(r.all_green(), "{r:?}");
    }

    #[test]
    fn assignment_does_not_change_the_polynomial() {
        let inst = instance(FamilyName::Dream, 5).unwrap();
        let e = extend(&inst, &star()).unwrap();
        let p = e.rome_char_poly().unwrap();
        let mut rotated = e.assignment.clone();
        rotated.rotate_left(3);
        let mut reversed = e.assignment.clone();
        reversed.reverse();
        for a in [rotated, reversed] {
            let f = extend_with(&inst, e.m, &a).unwrap();
            assert_eq!(strip_monomial(&f.rome_char_poly().unwrap()), strip_monomial(&p));
        }
    }

    #[test]
    fn inadmissible_parameters_are_rejected() {
        let g = star();
        for (f, n) in [(FamilyName::Dream, 4), (FamilyName::Persistent, 5), (FamilyName::Montevideo, 3)] {
            let inst = instance(f, n).unwrap();
            assert!(matches!(extend(&inst, &g), Err(Error::BadParameter(_))));
        }
    }

    #[test]
    fn plain_circle_is_not_extendable() {
        let g = CombGraph::from_json(r#"{"vertices": ["p"], "edges": [["p", "p"]]}"#).unwrap();
        let inst = instance(FamilyName::Dream, 5).unwrap();
        assert!(matches!(extend(&inst, &g), Err(Error::NotExtendable(_))));
    }

    #[test]
    fn m_equal_one_recovers_the_circle_graph_polynomial() {
        let inst = instance(FamilyName::Dream, 6).unwrap();
        let e = extend_with(&inst, 1, &[0]).unwrap();
        let base = inst.markov.rome_char_poly(&inst.markov.find_rome()).unwrap();
        assert_eq!(strip_monomial(&e.rome_char_poly().unwrap()), strip_monomial(&base));
    }
}
