//! Simple undirected graphs with named vertices: hardware X and logical Y.

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::order::MonomialOrder;
use crate::poly::{Coef, Polynomial};
use crate::ring::{Monomial, Ring};

/// Simple undirected graph. Vertex order is significant: it fixes the
/// variable order in every ring derived from the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: BTreeSet<(usize, usize)>, // i < j
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
}

impl Graph {
    pub fn new<S: Into<String>>(vertices: Vec<S>, edges: &[(usize, usize)]) -> Result<Graph> {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut set = BTreeSet::new();
        for v in &vertices {
            if !set.insert(v.clone()) {
                return Err(Error::InvalidGraph(format!("duplicate vertex `{v}`")));
            }
        }
        let mut g = Graph {
            vertices,
            edges: BTreeSet::new(),
        };
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        if a == b {
            return Err(Error::InvalidGraph("loops are not allowed".into()));
        }
        if a >= self.vertices.len() || b >= self.vertices.len() {
            return Err(Error::InvalidGraph("edge endpoint out of range".into()));
        }
        self.edges.insert((a.min(b), a.max(b)));
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &(a, b) in &self.edges {
            if a == v {
                out.push(b);
            } else if b == v {
                out.push(a);
            }
        }
        out.sort_unstable();
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// All-pairs shortest path lengths in edges; `None` when disconnected.
    pub fn distances(&self) -> Vec<Vec<Option<usize>>> {
        let n = self.n();
        let mut dist = vec![vec![None; n]; n];
        for s in 0..n {
            dist[s][s] = Some(0);
            let mut q = VecDeque::new();
            q.push_back(s);
            while let Some(u) = q.pop_front() {
                let du = dist[s][u].unwrap();
                for w in self.neighbors(u) {
                    if dist[s][w].is_none() {
                        dist[s][w] = Some(du + 1);
                        q.push_back(w);
                    }
                }
            }
        }
        dist
    }

    /// The ring Q[v_0, ..., v_{n-1}] with one variable per vertex, in vertex
    /// order.
    pub fn ring(&self) -> Arc<Ring> {
        Ring::new(self.vertices.clone())
    }

    /// Sum over edges of the product of endpoint variables.
    pub fn quadratic_form(&self, ring: &Arc<Ring>) -> Result<Polynomial> {
        let mut q = Polynomial::zero(ring);
        for &(a, b) in &self.edges {
            let ia = ring.index_of(&self.vertices[a])?;
            let ib = ring.index_of(&self.vertices[b])?;
            let m = Monomial::var(ring.len(), ia).mul(&Monomial::var(ring.len(), ib))?;
            q.add_term(m, Coef::from_integer(1.into()));
        }
        Ok(q)
    }

    /// Subgraph induced on `keep`; true when connected (empty sets are not).
    pub fn is_connected_subset(&self, keep: &[usize]) -> bool {
        if keep.is_empty() {
            return false;
        }
        let set: BTreeSet<usize> = keep.iter().copied().collect();
        let mut seen = BTreeSet::new();
        let mut stack = vec![*keep.first().unwrap()];
        seen.insert(keep[0]);
        while let Some(u) = stack.pop() {
            for w in self.neighbors(u) {
                if set.contains(&w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == set.len()
    }

    /// Number of edges of the induced subgraph on `keep`.
    pub fn induced_edge_count(&self, keep: &[usize]) -> usize {
        let set: BTreeSet<usize> = keep.iter().copied().collect();
        self.edges
            .iter()
            .filter(|(a, b)| set.contains(a) && set.contains(b))
            .count()
    }

    // -------------------------------------------------------------
    // serialization
    // -------------------------------------------------------------

    pub fn to_json(&self) -> serde_json::Value {
        let edges: Vec<(String, String)> = self
            .edges
            .iter()
            .map(|&(a, b)| (self.vertices[a].clone(), self.vertices[b].clone()))
            .collect();
        serde_json::json!({ "vertices": self.vertices, "edges": edges })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Graph> {
        let parsed: GraphJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::Parse(format!("graph json: {e}")))?;
        let mut g = Graph::new(parsed.vertices, &[])?;
        for (a, b) in parsed.edges {
            let ia = g.vertex_index(&a)?;
            let ib = g.vertex_index(&b)?;
            g.add_edge(ia, ib)?;
        }
        Ok(g)
    }

    /// Adjacency-list text: one line per vertex, `name: nbr1 nbr2 ...`.
    /// Vertices are declared by their line; forward references allowed.
    pub fn from_adjacency_text(text: &str) -> Result<Graph> {
        let mut names: Vec<String> = Vec::new();
        let mut adj: Vec<Vec<String>> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (name, rest) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected `name: ...` in `{line}`")))?;
            names.push(name.trim().to_string());
            adj.push(rest.split_whitespace().map(str::to_string).collect());
        }
        let mut g = Graph::new(names, &[])?;
        for (i, nbrs) in adj.iter().enumerate() {
            for nb in nbrs {
                let j = g.vertex_index(nb)?;
                g.add_edge(i, j)?;
            }
        }
        Ok(g)
    }
}

/// Chimera-style grid of bipartite cells (cross representation): `rows` x
/// `cols` cells of K_{t,t}; side-0 qubits couple down columns, side-1 qubits
/// across rows. Vertex `x{r}_{c}_{u}_{k}` is qubit k on side u of cell (r,c).
pub fn chimera(rows: usize, cols: usize, t: usize) -> Result<Graph> {
    let mut names = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            for u in 0..2 {
                for k in 0..t {
                    names.push(format!("x{r}_{c}_{u}_{k}"));
                }
            }
        }
    }
    let idx = |r: usize, c: usize, u: usize, k: usize| ((r * cols + c) * 2 + u) * t + k;
    let mut g = Graph::new(names, &[])?;
    for r in 0..rows {
        for c in 0..cols {
            for k in 0..t {
                for k2 in 0..t {
                    g.add_edge(idx(r, c, 0, k), idx(r, c, 1, k2))?;
                }
                if r + 1 < rows {
                    g.add_edge(idx(r, c, 0, k), idx(r + 1, c, 0, k))?;
                }
                if c + 1 < cols {
                    g.add_edge(idx(r, c, 1, k), idx(r, c + 1, 1, k))?;
                }
            }
        }
    }
    Ok(g)
}

// ------------------------------------------------------------------
// chains
// ------------------------------------------------------------------

/// A simple path given as its ordered vertex list (endpoints included).
/// Size, in the convention used throughout, is the number of edges.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Chain(pub Vec<usize>);

impl Chain {
    pub fn size(&self) -> usize {
        self.0.len() - 1
    }

    pub fn interior(&self) -> &[usize] {
        &self.0[1..self.0.len() - 1]
    }
}

/// All simple paths of size <= k (edges) between u and v, canonically
/// ordered. Endpoint-lexicographic canonicalization: each chain is listed
/// from its smaller endpoint, and the result is sorted.
pub fn enumerate_chains(g: &Graph, u: usize, v: usize, k: usize) -> Result<BTreeSet<Chain>> {
    if u == v {
        return Err(Error::InvalidGraph("chain endpoints must differ".into()));
    }
    let mut out = BTreeSet::new();
    let mut path = vec![u];
    let mut visited = vec![false; g.n()];
    visited[u] = true;
    chain_dfs(g, v, k, &mut path, &mut visited, &mut out);
    Ok(out)
}

fn chain_dfs(
    g: &Graph,
    target: usize,
    k: usize,
    path: &mut Vec<usize>,
    visited: &mut Vec<bool>,
    out: &mut BTreeSet<Chain>,
) {
    let last = *path.last().unwrap();
    if last == target {
        let mut verts = path.clone();
        if verts.first().unwrap() > verts.last().unwrap() {
            verts.reverse();
        }
        out.insert(Chain(verts));
        return;
    }
    if path.len() > k {
        return; // adding another edge would exceed size k
    }
    for w in g.neighbors(last) {
        if !visited[w] {
            visited[w] = true;
            path.push(w);
            chain_dfs(g, target, k, path, visited, out);
            path.pop();
            visited[w] = false;
        }
    }
}

// ------------------------------------------------------------------
// automorphisms
// ------------------------------------------------------------------

/// A bijection on vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Permutation(pub Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation((0..n).collect())
    }

    pub fn apply(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn compose(&self, then: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&v| then.0[v]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Disjoint cycles of length >= 2.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut cyc = vec![s];
            seen[s] = true;
            let mut v = self.0[s];
            while v != s {
                seen[v] = true;
                cyc.push(v);
                v = self.0[v];
            }
            if cyc.len() >= 2 {
                out.push(cyc);
            }
        }
        out
    }
}

/// True when sigma preserves the edge set.
pub fn is_automorphism(g: &Graph, sigma: &Permutation) -> bool {
    if sigma.0.len() != g.n() {
        return false;
    }
    let mut image = vec![usize::MAX; g.n()];
    for (i, &v) in sigma.0.iter().enumerate() {
        if v >= g.n() || image[v] != usize::MAX {
            return false;
        }
        image[v] = i;
    }
    // a bijection mapping every edge to an edge preserves the edge set
    g.edges().all(|(a, b)| g.has_edge(sigma.apply(a), sigma.apply(b)))
}

/// The automorphism group described by a stabilizer-chain transversal.
#[derive(Debug, Clone)]
pub struct AutomorphismGroup {
    pub generators: Vec<Permutation>,
    pub order: u128,
}

pub const DEFAULT_AUTOMORPHISM_BOUND: usize = 32;

/// Generators of Aut(G) found by partition-refinement backtracking along the
/// stabilizer chain of the vertex sequence 0, 1, ..., n-1. Sound and complete
/// for graphs within the bound.
pub fn automorphism_generators(g: &Graph, bound: usize) -> Result<Vec<Permutation>> {
    Ok(automorphism_group(g, bound)?.generators)
}

pub fn automorphism_group(g: &Graph, bound: usize) -> Result<AutomorphismGroup> {
    let n = g.n();
    if n > bound {
        return Err(Error::AutomorphismBound(bound));
    }
    let mut generators = Vec::new();
    let mut order: u128 = 1;
    for base in 0..n {
        // transversal size of `base` in the stabilizer of 0..base-1
        let mut orbit = 1u128;
        for image in 0..n {
            if image == base {
                continue;
            }
            if let Some(sigma) = search_automorphism(g, base, image) {
                debug_assert!(is_automorphism(g, &sigma));
                orbit += 1;
                if !sigma.is_identity() {
                    generators.push(sigma);
                }
            }
        }
        order = order.saturating_mul(orbit);
    }
    generators.sort();
    generators.dedup();
    Ok(AutomorphismGroup { generators, order })
}

/// One automorphism fixing 0..prefix-1 pointwise and mapping `prefix` to
/// `image`, if any exists.
fn search_automorphism(g: &Graph, prefix: usize, image: usize) -> Option<Permutation> {
    let n = g.n();
    if g.degree(prefix) != g.degree(image) {
        return None;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for v in 0..prefix {
        map[v] = v;
        used[v] = true;
    }
    // prefix vertices are fixed; the prefix vertex itself maps to image
    if image < prefix || (used[image] && image != prefix) {
        return None;
    }
    if !consistent(g, &map, prefix, image) {
        return None;
    }
    map[prefix] = image;
    used[image] = true;
    if extend(g, &mut map, &mut used, prefix + 1) {
        Some(Permutation(map))
    } else {
        None
    }
}

fn consistent(g: &Graph, map: &[usize], v: usize, img: usize) -> bool {
    for u in 0..map.len() {
        if map[u] == usize::MAX || u == v {
            continue;
        }
        if g.has_edge(u, v) != g.has_edge(map[u], img) {
            return false;
        }
    }
    true
}

fn extend(g: &Graph, map: &mut Vec<usize>, used: &mut Vec<bool>, depth: usize) -> bool {
    let n = g.n();
    if depth == n {
        return true;
    }
    for img in 0..n {
        if used[img] || g.degree(depth) != g.degree(img) {
            continue;
        }
        if consistent(g, map, depth, img) {
            map[depth] = img;
            used[img] = true;
            if extend(g, map, used, depth + 1) {
                return true;
            }
            map[depth] = usize::MAX;
            used[img] = false;
        }
    }
    false
}

/// The square-with-pendant hardware graph used throughout the worked
/// examples: cycle x1 x2 x3 x4 with x5 attached to x4.
pub fn square_with_pendant() -> Graph {
    Graph::new(
        vec!["x1", "x2", "x3", "x4", "x5"],
        &[(0, 1), (1, 2), (2, 3), (0, 3), (3, 4)],
    )
    .unwrap()
}

/// Complete graph on the given vertex names.
pub fn complete<S: Into<String>>(names: Vec<S>) -> Graph {
    let names: Vec<String> = names.into_iter().map(Into::into).collect();
    let n = names.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push((i, j));
        }
    }
    Graph::new(names, &edges).unwrap()
}

/// Path graph on the given vertex names, in order.
pub fn path<S: Into<String>>(names: Vec<S>) -> Graph {
    let names: Vec<String> = names.into_iter().map(Into::into).collect();
    let n = names.len();
    let edges: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    Graph::new(names, &edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_form_of_square_with_pendant() {
        let g = square_with_pendant();
        let ring = g.ring();
        let q = g.quadratic_form(&ring).unwrap();
        let expect =
            Polynomial::parse(&ring, "x1*x2 + x2*x3 + x3*x4 + x1*x4 + x4*x5").unwrap();
        assert_eq!(q, expect);
        assert_eq!(q.num_terms(), g.edge_count());
        assert!(q
            .terms()
            .all(|(m, c)| m.total_degree() == 2 && c == &crate::poly::int(1)));
    }

    #[test]
    fn quadratic_form_edgeless_and_triangle() {
        let g = Graph::new(vec!["a", "b"], &[]).unwrap();
        assert!(g.quadratic_form(&g.ring()).unwrap().is_zero());
        let k3 = complete(vec!["y1", "y2", "y3"]);
        let ring = k3.ring();
        assert_eq!(
            k3.quadratic_form(&ring).unwrap(),
            Polynomial::parse(&ring, "y1*y2 + y1*y3 + y2*y3").unwrap()
        );
    }

    #[test]
    fn chains_adjacent_k1() {
        let g = complete(vec!["u", "v"]);
        let chains = enumerate_chains(&g, 0, 1, 1).unwrap();
        assert_eq!(chains.len(), 1);
        assert!(chains.contains(&Chain(vec![0, 1])));
    }

    #[test]
    fn chains_around_square() {
        let g = Graph::new(vec!["x1", "x2", "x3", "x4"], &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let chains = enumerate_chains(&g, 0, 2, 2).unwrap();
        let expect: BTreeSet<Chain> =
            [Chain(vec![0, 1, 2]), Chain(vec![0, 3, 2])].into_iter().collect();
        assert_eq!(chains, expect);
    }

    #[test]
    fn chains_between_components_empty() {
        let g = Graph::new(vec!["a", "b", "c"], &[(0, 1)]).unwrap();
        assert!(enumerate_chains(&g, 0, 2, 3).unwrap().is_empty());
    }

    #[test]
    fn automorphisms_of_worked_example_graph() {
        let g = square_with_pendant();
        let group = automorphism_group(&g, DEFAULT_AUTOMORPHISM_BOUND).unwrap();
        // exchanging x1 and x3 is the only nontrivial symmetry
        assert_eq!(group.order, 2);
        let swap = Permutation(vec![2, 1, 0, 3, 4]);
        assert!(group.generators.contains(&swap));
        for sigma in &group.generators {
            assert!(is_automorphism(&g, sigma));
        }
    }

    #[test]
    fn automorphism_group_orders() {
        assert_eq!(automorphism_group(&complete(vec!["a", "b", "c"]), 32).unwrap().order, 6);
        assert_eq!(automorphism_group(&path(vec!["a", "b", "c"]), 32).unwrap().order, 2);
    }

    #[test]
    fn automorphism_bound_is_enforced() {
        let g = complete((0..40).map(|i| format!("v{i}")).collect::<Vec<_>>());
        assert!(matches!(
            automorphism_group(&g, 32),
            Err(Error::AutomorphismBound(32))
        ));
    }

    #[test]
    fn chimera_cell_structure() {
        let g = chimera(1, 1, 4).unwrap();
        assert_eq!(g.n(), 8);
        assert_eq!(g.edge_count(), 16); // K_{4,4}
        let g2 = chimera(2, 2, 4).unwrap();
        assert_eq!(g2.n(), 32);
        // intra: 4 cells * 16; inter: vertical 2*4 + horizontal 2*4
        assert_eq!(g2.edge_count(), 64 + 16);
        assert!(g2.max_degree() <= 6);
    }

    #[test]
    fn graph_json_round_trip() {
        let g = square_with_pendant();
        let j = g.to_json();
        let back = Graph::from_json(&j).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn adjacency_text_parses() {
        let g = Graph::from_adjacency_text("a: b\nb: a c\nc:\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn random_chain_enumeration_matches_naive_dfs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..25 {
            let n = rng.gen_range(3..=8);
            let mut edges = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    if rng.gen_bool(0.4) {
                        edges.push((i, j));
                    }
                }
            }
            let g = Graph::new((0..n).map(|i| format!("v{i}")).collect::<Vec<_>>(), &edges).unwrap();
            let u = 0;
            let v = n - 1;
            let k = rng.gen_range(1..=4usize);
            let fast = enumerate_chains(&g, u, v, k).unwrap();
            // naive: enumerate all vertex sequences by brute-force permutations
            let mut naive = BTreeSet::new();
            let mut stack: Vec<Vec<usize>> = vec![vec![u]];
            while let Some(p) = stack.pop() {
                let last = *p.last().unwrap();
                if last == v {
                    let mut q = p.clone();
                    if q.first().unwrap() > q.last().unwrap() {
                        q.reverse();
                    }
                    naive.insert(Chain(q));
                    continue;
                }
                if p.len() > k {
                    continue;
                }
                for w in 0..n {
                    if g.has_edge(last, w) && !p.contains(&w) {
                        let mut q = p.clone();
                        q.push(w);
                        stack.push(q);
                    }
                }
            }
            assert_eq!(fast, naive);
        }
    }
}
