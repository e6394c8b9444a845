//! Extend the persistent family to a graph with a circuit and check the
//! extended Markov graph.

use circle_periods::families::{instance, FamilyName};
use circle_periods::graphext::{default_tol, extend, traversal, verify_extension, CombGraph};

fn main() -> anyhow::Result<()> {
    let g = CombGraph::from_json(include_str!("../data/apple.json"))?;
    let (x, a, b) = g.excised()?;
    let tr = traversal(&x, &a, &b)?;
    println!("traversal from {a} to {b}: m = {}, {} distinct pieces, parity property {}", tr.m, tr.t() + 1, tr.parity_property());
    let inst = instance(FamilyName::Persistent, 7)?;
    let e = extend(&inst, &g)?;
    let r = verify_extension(&inst, &e, &default_tol());
    println!("extended graph: {} vertices", r.vertices);
    println!("transitive: {}, closed form: {}, entropy above circle: {}", r.transitive_ok, r.poly_ok, r.entropy_above_circle);
    println!("projection preserves arrows: {}, rome validates: {:?}", r.projection_ok, r.rome_ok);
    Ok(())
}
