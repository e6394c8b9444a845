use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{det_poly, IntPoly};
use crate::error::{Error, Result};

/// A finite directed graph given by successor lists, with at most one arrow
/// between any ordered pair of vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Digraph {
    pub succ: Vec<Vec<usize>>,
}

/// A set of vertices met by every loop.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rome {
    pub members: Vec<usize>,
}

impl Rome {
    pub fn new<I: IntoIterator<Item = usize>>(members: I) -> Self {
        let set: BTreeSet<usize> = members.into_iter().collect();
        Self { members: set.into_iter().collect() }
    }
}

/// Irreducibility, permutation and transitivity flags of a transition matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitivityCertificate {
    pub irreducible: bool,
    pub permutation: bool,
    pub transitive: bool,
}

/// A loop up to cyclic rotation, stored as its lexicographically least rotation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Loop {
    pub word: Vec<usize>,
    pub length: usize,
    /// Not a repetition of a shorter loop.
    pub simple: bool,
    /// Length of the shortest loop this one repeats.
    pub primitive_length: usize,
    pub sign: i8,
}

impl Digraph {
    pub fn new(succ: Vec<Vec<usize>>) -> Self {
        let succ = succ
            .into_iter()
            .map(|s| s.into_iter().collect::<BTreeSet<_>>().into_iter().collect())
            .collect();
        Self { succ }
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    pub fn arrow_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn has_arrow(&self, i: usize, j: usize) -> bool {
        self.succ[i].binary_search(&j).is_ok()
    }

    pub fn arrows(&self) -> Vec<[usize; 2]> {
        self.succ.iter().enumerate().flat_map(|(i, s)| s.iter().map(move |&j| [i, j])).collect()
    }

    pub fn matrix(&self) -> Vec<Vec<i64>> {
        let n = self.len();
        let mut m = vec![vec![0i64; n]; n];
        for (i, s) in self.succ.iter().enumerate() {
            for &j in s {
                m[i][j] = 1;
            }
        }
        m
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.succ[v].len()
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.len()];
        for s in &self.succ {
            for &j in s {
                d[j] += 1;
            }
        }
        d
    }

    pub fn is_irreducible(&self) -> bool {
        if self.is_empty() {
            return false;
        }
        let mut g = DiGraph::<(), ()>::new();
        let nodes: Vec<_> = (0..self.len()).map(|_| g.add_node(())).collect();
        for (i, s) in self.succ.iter().enumerate() {
            for &j in s {
                g.add_edge(nodes[i], nodes[j], ());
            }
        }
        let scc = tarjan_scc(&g);
        scc.len() == 1 && (self.len() > 1 || self.has_arrow(0, 0))
    }

    pub fn is_permutation(&self) -> bool {
        self.succ.iter().all(|s| s.len() == 1) && self.in_degrees().iter().all(|&d| d == 1)
    }

    pub fn transitivity_certificate(&self) -> TransitivityCertificate {
        let irreducible = self.is_irreducible();
        let permutation = self.is_permutation();
        TransitivityCertificate { irreducible, permutation, transitive: irreducible && !permutation }
    }

    /// Topological order of the subgraph induced on `allowed`, or a cycle inside it.
    fn topo_order(&self, allowed: &[bool]) -> std::result::Result<Vec<usize>, Vec<usize>> {
        let n = self.len();
        let mut indeg = vec![0usize; n];
        for v in (0..n).filter(|&v| allowed[v]) {
            for &w in &self.succ[v] {
                if allowed[w] {
                    indeg[w] += 1;
                }
            }
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| allowed[v] && indeg[v] == 0).collect();
        let mut order = Vec::new();
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &self.succ[v] {
                if allowed[w] {
                    indeg[w] -= 1;
                    if indeg[w] == 0 {
                        queue.push_back(w);
                    }
                }
            }
        }
        let remaining: Vec<bool> = (0..n).map(|v| allowed[v] && indeg[v] > 0).collect();
        if order.len() == allowed.iter().filter(|&&a| a).count() {
            Ok(order)
        } else {
            Err(self.find_cycle(&remaining))
        }
    }

    /// A cycle in the subgraph induced on `allowed`, where every allowed
    /// vertex has an allowed predecessor; found by walking predecessors.
    fn find_cycle(&self, allowed: &[bool]) -> Vec<usize> {
        let pred = self.predecessors();
        let start = allowed.iter().position(|&a| a).expect("nonempty remainder");
        let mut pos = vec![usize::MAX; self.len()];
        let mut path = Vec::new();
        let mut v = start;
        while pos[v] == usize::MAX {
            pos[v] = path.len();
            path.push(v);
            v = pred[v].iter().copied().find(|&u| allowed[u]).expect("remaining vertices have remaining predecessors");
        }
        let mut cycle = path[pos[v]..].to_vec();
        cycle.reverse();
        cycle
    }

    /// Checks that no loop avoids the rome.
    pub fn validate_rome(&self, rome: &Rome) -> Result<()> {
        let mut allowed = vec![true; self.len()];
        for &r in &rome.members {
            if r >= self.len() {
                return Err(Error::BadParameter(format!("rome member {r} out of range")));
            }
            allowed[r] = false;
        }
        self.topo_order(&allowed).map(|_| ()).map_err(Error::InvalidRome)
    }

    /// Vertices of out-degree at least two, plus one vertex from each cycle of
    /// the functional graph that remains.
    pub fn find_rome(&self) -> Rome {
        let n = self.len();
        let mut member: Vec<bool> = (0..n).map(|v| self.out_degree(v) >= 2).collect();
        loop {
            let allowed: Vec<bool> = member.iter().map(|m| !m).collect();
            match self.topo_order(&allowed) {
                Ok(_) => break,
                Err(cycle) => {
                    let v = *cycle.iter().min().expect("cycle is nonempty");
                    member[v] = true;
                }
            }
        }
        Rome::new((0..n).filter(|&v| member[v]))
    }

    /// Matrix `M_R(t)` of simple rome paths, with `t = 1/x` marking length.
    pub fn rome_path_matrix(&self, rome: &Rome) -> Result<Vec<Vec<IntPoly>>> {
        let n = self.len();
        let m = rome.members.len();
        let mut index = vec![usize::MAX; n];
        for (k, &r) in rome.members.iter().enumerate() {
            index[r] = k;
        }
        let allowed: Vec<bool> = (0..n).map(|v| index[v] == usize::MAX).collect();
        let order = self.topo_order(&allowed).map_err(Error::InvalidRome)?;
        let t = IntPoly::monomial(1, 1);
        let mut paths: Vec<Option<Vec<IntPoly>>> = vec![None; n];
        // Paths from a free vertex to each rome vertex, filled in reverse topological order.
        for &v in order.iter().rev() {
            let mut row = vec![IntPoly::zero(); m];
            for &w in &self.succ[v] {
                add_step(&mut row, w, &index, &paths, &t);
            }
            paths[v] = Some(row);
        }
        let mut mr = Vec::with_capacity(m);
        for &r in &rome.members {
            let mut row = vec![IntPoly::zero(); m];
            for &w in &self.succ[r] {
                add_step(&mut row, w, &index, &paths, &t);
            }
            mr.push(row);
        }
        Ok(mr)
    }

    /// Characteristic polynomial `det(xI - M)` of the transition matrix from
    /// the rome path matrix: it equals `(-1)^m x^n det(M_R(1/x) - I)`.
    pub fn rome_char_poly(&self, rome: &Rome) -> Result<IntPoly> {
        let mut mr = self.rome_path_matrix(rome)?;
        for (i, row) in mr.iter_mut().enumerate() {
            row[i] = row[i].sub(&IntPoly::one());
        }
        let d = det_poly(mr);
        let n = self.len();
        let deg = d.degree().unwrap_or(0);
        if deg > n {
            return Err(Error::Degenerate("rome path lengths exceed the vertex count".into()));
        }
        let p = d.reversed(n);
        let lead = p.lead();
        if lead == BigInt::from(-1) {
            Ok(p.neg())
        } else {
            debug_assert_eq!(lead, BigInt::from(1));
            Ok(p)
        }
    }

    /// All loops of length at most `max_len`, each once up to rotation.
    /// `orientation[v]` is the sign of the branch on vertex `v`.
    pub fn enumerate_loops(&self, max_len: usize, orientation: &[i8], cap: usize) -> Result<Vec<Loop>> {
        self.enumerate_loops_filtered(max_len, orientation, cap, &|_| true)
    }

    /// As `enumerate_loops`, keeping only lengths accepted by `keep_len`.
    pub fn enumerate_loops_filtered(
        &self,
        max_len: usize,
        orientation: &[i8],
        cap: usize,
        keep_len: &(dyn Fn(usize) -> bool + Sync),
    ) -> Result<Vec<Loop>> {
        let n = self.len();
        let pred = self.predecessors();
        let counter = std::sync::atomic::AtomicUsize::new(0);
        let per_start: Vec<Result<Vec<Loop>>> = (0..n)
            .into_par_iter()
            .map(|s| {
                let dist = self.distances_to(s, &pred);
                let mut out = Vec::new();
                let mut word = vec![s];
                self.dfs_loops(s, &dist, max_len, orientation, cap, &counter, keep_len, &mut word, &mut out)?;
                Ok(out)
            })
            .collect();
        let mut all = Vec::new();
        for r in per_start {
            all.extend(r?);
        }
        all.sort();
        Ok(all)
    }

    fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut p = vec![Vec::new(); self.len()];
        for (i, s) in self.succ.iter().enumerate() {
            for &j in s {
                p[j].push(i);
            }
        }
        p
    }

    /// Distance from each vertex `>= s` to `s` inside the subgraph on `{s, s+1, ...}`.
    fn distances_to(&self, s: usize, pred: &[Vec<usize>]) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.len()];
        dist[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &u in &pred[v] {
                if u >= s && dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    q.push_back(u);
                }
            }
        }
        dist
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs_loops(
        &self,
        s: usize,
        dist: &[usize],
        max_len: usize,
        orientation: &[i8],
        cap: usize,
        counter: &std::sync::atomic::AtomicUsize,
        keep_len: &(dyn Fn(usize) -> bool + Sync),
        word: &mut Vec<usize>,
        out: &mut Vec<Loop>,
    ) -> Result<()> {
        let v = *word.last().expect("word starts at s");
        for &w in &self.succ[v] {
            if w < s || dist[w] == usize::MAX {
                continue;
            }
            if w == s {
                let len = word.len();
                if keep_len(len) && is_least_rotation(word) {
                    let c = counter.fetch_add(1, std::sync::atomic::Ordering::Relaxed) + 1;
                    if c > cap {
                        return Err(Error::BudgetExceeded { cap });
                    }
                    let prim = primitive_period(word);
                    let sign = word.iter().map(|&u| orientation[u]).product();
                    out.push(Loop { word: word.clone(), length: len, simple: prim == len, primitive_length: prim, sign });
                }
                // Closed walks may pass through the start vertex again.
                if word.len() + 1 > max_len {
                    continue;
                }
            }
            if word.len() + dist[w] > max_len {
                continue;
            }
            word.push(w);
            self.dfs_loops(s, dist, max_len, orientation, cap, counter, keep_len, word, out)?;
            word.pop();
        }
        Ok(())
    }
}

fn add_step(row: &mut [IntPoly], w: usize, index: &[usize], paths: &[Option<Vec<IntPoly>>], t: &IntPoly) {
    if index[w] != usize::MAX {
        row[index[w]] = row[index[w]].add(t);
    } else {
        let pw = paths[w].as_ref().expect("successor processed first");
        for (k, p) in pw.iter().enumerate() {
            if !p.is_zero() {
                row[k] = row[k].add(&p.mul(t));
            }
        }
    }
}

/// True when `w` is lexicographically least among its rotations.
pub(crate) fn is_least_rotation(w: &[usize]) -> bool {
    let n = w.len();
    (1..n).all(|r| {
        for k in 0..n {
            let (a, b) = (w[k], w[(k + r) % n]);
            if a != b {
                return a < b;
            }
        }
        true
    })
}

/// Smallest `d` dividing `len(w)` with `w` invariant under rotation by `d`.
pub(crate) fn primitive_period(w: &[usize]) -> usize {
    let n = w.len();
    (1..=n).find(|&d| n.is_multiple_of(d) && (0..n).all(|k| w[k] == w[(k + d) % n])).unwrap_or(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::char_poly;

    #[test]
    fn self_loop_rome() {
        let g = Digraph::new(vec![vec![0]]);
        assert_eq!(g.rome_char_poly(&Rome::new([0])).unwrap(), IntPoly::from_i64(&[-1, 1]));
        let loops = g.enumerate_loops(3, &[1], 100).unwrap();
        assert_eq!(loops.len(), 3);
        assert!(loops[0].simple && loops[0].sign == 1 && loops[0].length == 1);
    }

    #[test]
    fn rome_polynomial_matches_determinant() {
        let g = Digraph::new(vec![vec![1, 2], vec![2], vec![0, 3], vec![0]]);
        let rome = g.find_rome();
        g.validate_rome(&rome).unwrap();
        assert_eq!(g.rome_char_poly(&rome).unwrap(), char_poly(&g.matrix()));
        let all = Rome::new(0..4);
        assert_eq!(g.rome_char_poly(&all).unwrap(), char_poly(&g.matrix()));
    }

    #[test]
    fn invalid_rome_and_certificates() {
        let g = Digraph::new(vec![vec![1], vec![0]]);
        assert!(matches!(g.validate_rome(&Rome::new([])), Err(Error::InvalidRome(_))));
        let c = g.transitivity_certificate();
        assert!(c.irreducible && c.permutation && !c.transitive);
        let two = Digraph::new(vec![vec![0], vec![1]]);
        assert!(!two.is_irreducible());
    }

    #[test]
    fn loop_canonical_forms() {
        assert!(is_least_rotation(&[0, 1, 0, 2]));
        assert!(!is_least_rotation(&[0, 2, 0, 1]));
        assert_eq!(primitive_period(&[0, 1, 0, 1]), 2);
        let g = Digraph::new(vec![vec![0, 1], vec![0]]);
        let loops = g.enumerate_loops(4, &[1, -1], 1000).unwrap();
        // Golden mean shift, length 4: 0000, 0001 and 0101.
        assert_eq!(loops.iter().filter(|l| l.length == 4).count(), 3);
        assert!(matches!(g.enumerate_loops(10, &[1, -1], 3), Err(Error::BudgetExceeded { .. })));
    }
}
