use num_traits::One;

use super::Lifting;
use crate::arith::Rational;

/// The lower and upper maps `F_l(x) = inf {F(y) : y >= x}` and
/// `F_u(x) = sup {F(y) : y <= x}`, computed exactly.
///
/// Both envelopes are swept over one period. Where a piece of `F` crosses
/// the running extremum the crossing point is inserted as a new breakpoint.
pub fn upper_lower(f: &Lifting) -> (Lifting, Lifting) {
    (lower(f), upper(f))
}

fn upper(f: &Lifting) -> Lifting {
    let nodes = f.nodes();
    // Running maximum entering the period: max of F over [b_0 - 1, b_0].
    let mut cur = nodes.iter().map(|(_, v)| v.clone()).max().expect("nonempty") - Rational::one();
    if nodes[0].1 > cur {
        cur = nodes[0].1.clone();
    }
    let mut out: Vec<(Rational, Rational)> = vec![(nodes[0].0.clone(), cur.clone())];
    for w in nodes.windows(2) {
        let ((x0, y0), (x1, y1)) = (&w[0], &w[1]);
        if y1 > &cur {
            if y0 < &cur {
                let xs = x0 + (&cur - y0) * (x1 - x0) / (y1 - y0);
                out.push((xs, cur.clone()));
            }
            cur = y1.clone();
        }
        out.push((x1.clone(), cur.clone()));
    }
    finish(out)
}

fn lower(f: &Lifting) -> Lifting {
    let nodes = f.nodes();
    let last = nodes.len() - 1;
    // Running minimum entering from the right: min of F over [b_0 + 1, b_0 + 2].
    let mut cur = nodes.iter().map(|(_, v)| v.clone()).min().expect("nonempty") + Rational::one();
    if nodes[last].1 < cur {
        cur = nodes[last].1.clone();
    }
    let mut out: Vec<(Rational, Rational)> = vec![(nodes[last].0.clone(), cur.clone())];
    for w in nodes.windows(2).rev() {
        let ((x0, y0), (x1, y1)) = (&w[0], &w[1]);
        if y0 < &cur {
            if y1 > &cur {
                let xs = x0 + (&cur - y0) * (x1 - x0) / (y1 - y0);
                out.push((xs, cur.clone()));
            }
            cur = y0.clone();
        }
        out.push((x0.clone(), cur.clone()));
    }
    finish(out)
}

fn finish(points: Vec<(Rational, Rational)>) -> Lifting {
    Lifting::from_points(&points).expect("envelope samples are consistent").simplified()
}
