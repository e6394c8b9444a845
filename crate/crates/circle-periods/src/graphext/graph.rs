//! Combinatorial graphs, excision of an interval from a circuit, and the
//! edge-covering traversal of the excised subgraph.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Where to cut the circuit and how to name the two new endpoints.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Excision {
    /// An edge lying on a circuit; the first such edge when absent.
    #[serde(default)]
    pub circuit_edge_hint: Option<[String; 2]>,
    /// Names of the endpoints `a` and `b` created by the cut.
    #[serde(default)]
    pub endpoints: Option<[String; 2]>,
}

/// A finite connected graph with multi-edges and self-loops.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
    #[serde(default)]
    pub excise: Excision,
}

impl CombGraph {
    pub fn from_json(text: &str) -> Result<Self> {
        let g: Self = serde_json::from_str(text).map_err(|e| Error::Parse { what: "graph JSON", input: e.to_string() })?;
        g.check()?;
        Ok(g)
    }

    fn index(&self) -> Result<BTreeMap<&str, usize>> {
        let mut idx = BTreeMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if idx.insert(v.as_str(), i).is_some() {
                return Err(Error::BadParameter(format!("duplicate vertex {v:?}")));
            }
        }
        Ok(idx)
    }

    /// Edges as vertex index pairs.
    pub fn edge_indices(&self) -> Result<Vec<[usize; 2]>> {
        let idx = self.index()?;
        self.edges
            .iter()
            .map(|[u, v]| {
                let get = |w: &String| idx.get(w.as_str()).copied().ok_or_else(|| Error::BadParameter(format!("unknown vertex {w:?}")));
                Ok([get(u)?, get(v)?])
            })
            .collect()
    }

    /// Names are unique, edges refer to known vertices and the graph is connected.
    pub fn check(&self) -> Result<()> {
        if self.vertices.is_empty() {
            return Err(Error::BadParameter("graph has no vertices".into()));
        }
        let edges = self.edge_indices()?;
        if !connected(self.vertices.len(), &edges, None) {
            return Err(Error::BadParameter("graph is not connected".into()));
        }
        Ok(())
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        Ok(self.edge_indices()?.iter().map(|[a, b]| usize::from(*a == v) + usize::from(*b == v)).sum())
    }

    /// A connected graph has a circuit iff it has at least as many edges as vertices.
    pub fn has_circuit(&self) -> bool {
        self.edges.len() >= self.vertices.len()
    }

    /// Edge `e` lies on a circuit iff it is a self-loop or not a bridge.
    pub fn on_circuit(&self, e: usize) -> Result<bool> {
        let edges = self.edge_indices()?;
        let [u, v] = *edges.get(e).ok_or_else(|| Error::BadParameter(format!("edge {e} out of range")))?;
        Ok(u == v || connected(self.vertices.len(), &edges, Some(e)))
    }

    /// A connected graph is an interval iff it is a tree of maximal degree two.
    pub fn is_interval(&self) -> Result<bool> {
        if self.edges.len() + 1 != self.vertices.len() || self.edges.is_empty() {
            return Ok(false);
        }
        for v in 0..self.vertices.len() {
            if self.degree(v)? > 2 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Index of the edge to cut: the hinted edge, or the first edge on a circuit.
    pub fn circuit_edge(&self) -> Result<usize> {
        if !self.has_circuit() {
            return Err(Error::NotExtendable("graph contains no circuit".into()));
        }
        match &self.excise.circuit_edge_hint {
            Some([u, v]) => {
                let e = self
                    .edges
                    .iter()
                    .position(|[a, b]| (a == u && b == v) || (a == v && b == u))
                    .ok_or_else(|| Error::BadParameter(format!("hinted edge {u}-{v} is not an edge")))?;
                if !self.on_circuit(e)? {
                    return Err(Error::NotExtendable(format!("hinted edge {u}-{v} is a bridge")));
                }
                Ok(e)
            }
            None => {
                for e in 0..self.edges.len() {
                    if self.on_circuit(e)? {
                        return Ok(e);
                    }
                }
                Err(Error::NotExtendable("no edge lies on a circuit".into()))
            }
        }
    }

    /// The subgraph `X` left after removing the interior of an interval inside
    /// the chosen circuit edge, with its two new endpoints `(a, b)`.
    pub fn excised(&self) -> Result<(CombGraph, String, String)> {
        self.check()?;
        let e = self.circuit_edge()?;
        let [a, b] = self.excise.endpoints.clone().unwrap_or_else(|| ["a".to_string(), "b".to_string()]);
        if a == b || self.vertices.contains(&a) || self.vertices.contains(&b) {
            return Err(Error::BadParameter(format!("endpoint names {a:?}, {b:?} must be new and distinct")));
        }
        let [u, v] = self.edges[e].clone();
        let mut vertices = self.vertices.clone();
        vertices.push(a.clone());
        vertices.push(b.clone());
        let mut edges: Vec<[String; 2]> = self.edges.iter().enumerate().filter(|(i, _)| *i != e).map(|(_, x)| x.clone()).collect();
        edges.push([u, a.clone()]);
        edges.push([v, b.clone()]);
        Ok((CombGraph { vertices, edges, excise: Excision::default() }, a, b))
    }
}

/// Connectivity, optionally with one edge removed.
fn connected(n: usize, edges: &[[usize; 2]], skip: Option<usize>) -> bool {
    let mut adj = vec![Vec::new(); n];
    for (i, &[u, v]) in edges.iter().enumerate() {
        if Some(i) != skip {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut q = VecDeque::from([0]);
    while let Some(u) = q.pop_front() {
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                q.push_back(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// One traversed edge between two consecutive vertex visits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub edge: usize,
    pub from: String,
    pub to: String,
}

/// The partition `0 = s_0 < ... < s_m = 1` of a surjective walk from `a` to `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Traversal {
    pub a: String,
    pub b: String,
    /// Odd, at least 5.
    pub m: usize,
    /// The walk through the vertices, artificial vertices included.
    pub walk: Vec<Step>,
    /// Edges of the subdivided graph as vertex name pairs.
    pub edges: Vec<[String; 2]>,
    /// Artificial vertices placed inside self-loops.
    pub artificial_points: Vec<String>,
    /// `phi(s_i)` for `i = 0..=m`; even indices are vertices, odd ones marked points.
    pub points: Vec<String>,
    /// `phi([s_i, s_{i+1}])` for `i = 0..m`.
    pub pieces: Vec<String>,
    /// Distinct pieces `U_0, ..., U_t` in order of first appearance.
    pub u_pieces: Vec<String>,
    /// `assignment[i] = j` when piece `i` is `U_j`.
    pub assignment: Vec<usize>,
}

impl Traversal {
    /// `t`, so that there are `t + 1` distinct pieces.
    pub fn t(&self) -> usize {
        self.u_pieces.len() - 1
    }

    /// Equal images occur only at indices of equal parity, and `s_m` is the only preimage of `b`.
    pub fn parity_property(&self) -> bool {
        let mut parity: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, p) in self.points.iter().enumerate() {
            if *parity.entry(p.as_str()).or_insert(i % 2) != i % 2 {
                return false;
            }
        }
        self.points.iter().filter(|p| **p == self.b).count() == 1
    }

    /// The walk is continuous, starts at `a`, ends at `b` and covers every edge.
    pub fn is_surjective_walk(&self) -> bool {
        let chained = self.walk.windows(2).all(|w| w[0].to == w[1].from);
        let covered: BTreeSet<usize> = self.walk.iter().map(|s| s.edge).collect();
        let ends = self.walk.first().is_some_and(|s| s.from == self.a) && self.walk.last().is_some_and(|s| s.to == self.b);
        let steps_ok = self.walk.iter().all(|s| {
            let [u, v] = &self.edges[s.edge];
            (u == &s.from && v == &s.to) || (u == &s.to && v == &s.from)
        });
        chained && ends && steps_ok && covered.len() == self.edges.len()
    }

    /// `m = 2 n - 1` with `n` the number of traversed edges, and `m >= 5` odd.
    pub fn m_is_admissible(&self) -> bool {
        self.m == 2 * self.walk.len() - 1 && self.m % 2 == 1 && self.m >= 5
    }

    pub fn is_valid(&self) -> bool {
        self.parity_property() && self.is_surjective_walk() && self.m_is_admissible() && self.pieces.len() == self.m
    }
}

/// Vertices, edges and artificial vertices of a subdivided graph.
type Subdivision = (Vec<String>, Vec<[String; 2]>, Vec<String>);

/// Subdivide self-loops so that every edge closure is an interval.
fn subdivide(x: &CombGraph) -> Result<Subdivision> {
    let mut vertices = x.vertices.clone();
    let mut edges = Vec::new();
    let mut artificial = Vec::new();
    for (i, [u, v]) in x.edges.iter().enumerate() {
        if u == v {
            let mut name = format!("v{i}*");
            while vertices.contains(&name) {
                name.push('*');
            }
            vertices.push(name.clone());
            artificial.push(name.clone());
            edges.push([u.clone(), name.clone()]);
            edges.push([name, v.clone()]);
        } else {
            edges.push([u.clone(), v.clone()]);
        }
    }
    Ok((vertices, edges, artificial))
}

/// Build the traversal of `x` from endpoint `a` to endpoint `b`.
///
/// The walk leaves `a`, covers every other edge by a depth-first tour that
/// crosses each edge once in each direction, moves along a shortest path to
/// the neighbour `v` of `b` and finally crosses the edge `[v, b]`.
pub fn traversal(x: &CombGraph, a: &str, b: &str) -> Result<Traversal> {
    x.check()?;
    if x.is_interval()? {
        return Err(Error::NotExtendable("the excised subgraph is an interval".into()));
    }
    let (vertices, edges, artificial_points) = subdivide(x)?;
    let idx: BTreeMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let (ia, ib) = match (idx.get(a), idx.get(b)) {
        (Some(&ia), Some(&ib)) if ia != ib => (ia, ib),
        _ => return Err(Error::NotExtendable(format!("{a:?} and {b:?} are not two distinct vertices"))),
    };
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); vertices.len()];
    for (e, [u, v]) in edges.iter().enumerate() {
        let (u, v) = (idx[u.as_str()], idx[v.as_str()]);
        adj[u].push((e, v));
        if u != v {
            adj[v].push((e, u));
        }
    }
    for (name, i) in [(a, ia), (b, ib)] {
        let loops = adj[i].iter().filter(|(e, _)| edges[*e][0] == edges[*e][1]).count();
        if adj[i].len() != 1 || loops != 0 {
            return Err(Error::NotExtendable(format!("{name:?} is not an endpoint")));
        }
    }
    let (ea, w) = adj[ia][0];
    let (eb, v) = adj[ib][0];
    let name = |i: usize| vertices[i].clone();
    let mut walk = vec![Step { edge: ea, from: name(ia), to: name(w) }];
    let mut used = vec![false; edges.len()];
    used[ea] = true;
    used[eb] = true;
    tour(w, &adj, &mut used, &mut walk, &name);
    for (e, from, to) in shortest_path(w, v, &adj, eb) {
        walk.push(Step { edge: e, from: name(from), to: name(to) });
    }
    walk.push(Step { edge: eb, from: name(v), to: name(ib) });

    let n = walk.len();
    let m = 2 * n - 1;
    let mut points = Vec::with_capacity(m + 1);
    let mut pieces = Vec::with_capacity(m);
    for (j, s) in walk.iter().enumerate() {
        points.push(s.from.clone());
        if j + 1 < n {
            points.push(format!("alpha(e{})", s.edge));
            pieces.push(format!("e{}@{}", s.edge, s.from));
            pieces.push(format!("e{}@{}", s.edge, s.to));
        } else {
            points.push(s.to.clone());
            pieces.push(format!("e{}", s.edge));
        }
    }
    let mut u_pieces: Vec<String> = Vec::new();
    let assignment = pieces
        .iter()
        .map(|p| match u_pieces.iter().position(|u| u == p) {
            Some(j) => j,
            None => {
                u_pieces.push(p.clone());
                u_pieces.len() - 1
            }
        })
        .collect();
    let tr = Traversal {
        a: a.to_string(),
        b: b.to_string(),
        m,
        walk,
        edges,
        artificial_points,
        points,
        pieces,
        u_pieces,
        assignment,
    };
    if !tr.is_valid() {
        return Err(Error::NotExtendable("traversal violates the partition properties".into()));
    }
    Ok(tr)
}

fn tour(u: usize, adj: &[Vec<(usize, usize)>], used: &mut [bool], walk: &mut Vec<Step>, name: &dyn Fn(usize) -> String) {
    for &(e, x) in &adj[u] {
        if used[e] {
            continue;
        }
        used[e] = true;
        walk.push(Step { edge: e, from: name(u), to: name(x) });
        tour(x, adj, used, walk, name);
        walk.push(Step { edge: e, from: name(x), to: name(u) });
    }
}

/// Shortest path as `(edge, from, to)` steps, never using the edge `skip`.
fn shortest_path(s: usize, t: usize, adj: &[Vec<(usize, usize)>], skip: usize) -> Vec<(usize, usize, usize)> {
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; adj.len()];
    let mut seen = vec![false; adj.len()];
    seen[s] = true;
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for &(e, x) in &adj[u] {
            if e != skip && !seen[x] {
                seen[x] = true;
                prev[x] = Some((e, u));
                q.push_back(x);
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = t;
    while let Some((e, p)) = prev[cur] {
        path.push((e, p, cur));
        cur = p;
    }
    path.reverse();
    path
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(vertices: &[&str], edges: &[[&str; 2]]) -> CombGraph {
        CombGraph {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            edges: edges.iter().map(|[u, v]| [u.to_string(), v.to_string()]).collect(),
            excise: Excision::default(),
        }
    }

    #[test]
    fn star_traversal_is_smallest_case() {
        let x = graph(&["a", "b", "c", "w"], &[["a", "c"], ["c", "w"], ["c", "b"]]);
        let t = traversal(&x, "a", "b").unwrap();
        assert_eq!(t.walk.len(), 4);
        assert_eq!(t.m, 7);
        assert!(t.is_valid());
        assert_eq!(t.points.first().map(String::as_str), Some("a"));
        assert_eq!(t.points.last().map(String::as_str), Some("b"));
    }

    #[test]
    fn interval_is_rejected() {
        let x = graph(&["a", "c", "b"], &[["a", "c"], ["c", "b"]]);
        assert!(matches!(traversal(&x, "a", "b"), Err(Error::NotExtendable(_))));
    }

    #[test]
    fn circle_excision_gives_interval() {
        let g = graph(&["p"], &[["p", "p"]]);
        let (x, a, b) = g.excised().unwrap();
        assert!(x.is_interval().unwrap());
        assert!(matches!(traversal(&x, &a, &b), Err(Error::NotExtendable(_))));
    }

    #[test]
    fn self_loops_get_artificial_vertices() {
        let x = graph(&["a", "b", "c"], &[["a", "c"], ["c", "c"], ["c", "b"]]);
        let t = traversal(&x, "a", "b").unwrap();
        assert_eq!(t.artificial_points.len(), 1);
        assert!(t.is_valid());
    }

    #[test]
    fn bridges_are_not_circuit_edges() {
        let g = graph(&["p", "q"], &[["p", "p"], ["p", "q"]]);
        assert!(g.on_circuit(0).unwrap());
        assert!(!g.on_circuit(1).unwrap());
        assert_eq!(g.circuit_edge().unwrap(), 0);
    }
}
