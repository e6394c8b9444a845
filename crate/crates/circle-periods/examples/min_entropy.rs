//! Minimal entropy exponent for a rotation interval and the model map that
//! realizes it.

use circle_periods::arith::{rat, to_f64};
use circle_periods::markov::tol_pow10;
use circle_periods::minentropy::{beta, min_entropy_model, model_rotation};

fn main() -> anyhow::Result<()> {
    let (c, d) = (rat(1, 2), rat(7, 10));
    let tol = tol_pow10(12);
    let b = beta(&c, &d, &tol)?;
    println!("beta(1/2, 7/10) in {}", b.beta.display());
    println!("independent method agrees: {}", b.method_agreement);
    let model = min_entropy_model(&c, &d, &tol)?;
    println!("model: b ~ {:.6}, u ~ {:.6}", model.b.midpoint_f64(), model.u.midpoint_f64());
    let rot = model_rotation(&model, 4000);
    let show = |i: &circle_periods::minentropy::Interval| format!("[{:.6}, {:.6}]", to_f64(&i.lo), to_f64(&i.hi));
    println!("lower envelope rotation in {}", show(&rot.lower_envelope));
    println!("upper envelope rotation in {}", show(&rot.upper_envelope));
    println!("consistent with [c, d]: {}", rot.consistent);
    Ok(())
}
