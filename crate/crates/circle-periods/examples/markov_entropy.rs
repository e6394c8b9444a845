//! Markov graph modulo 1 of a family member, its rome polynomial and the
//! certified topological entropy.

use circle_periods::families::{instance, FamilyName};
use circle_periods::markov::{entropy_bounds, tol_pow10};

fn main() -> anyhow::Result<()> {
    let inst = instance(FamilyName::Dream, 4)?;
    let m = &inst.markov;
    println!("{} basic interval classes, {} arrows", m.class_count(), m.graph().arrow_count());
    let rome = m.find_rome();
    let names: Vec<&str> = rome.members.iter().map(|&i| m.classes()[i].name.as_str()).collect();
    println!("rome: {names:?}");
    println!("characteristic polynomial: {:?}", m.rome_char_poly(&rome)?);
    let sigma = m.entropy(&tol_pow10(12))?;
    let (lo, hi) = entropy_bounds(&sigma);
    println!("spectral radius in {}", sigma.display());
    println!("entropy in [{lo:.12}, {hi:.12}]");
    println!("transitivity: {:?}", m.transitivity_certificate());
    Ok(())
}
