//! The embedding ideal: a polynomial system whose binary variety is exactly
//! the set of minor embeddings of a logical graph Y into a hardware graph X
//! with fibers (chains) of size at most k.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{enumerate_chains, Graph};
use crate::groebner::{
    buchberger, enumerate_binary_variety, staircase_count, BuchbergerConfig, GroebnerBasis, Ideal,
    StandardCount,
};
use crate::order::MonomialOrder;
use crate::poly::{int, Polynomial};
use crate::ring::{Monomial, Ring};

/// What shape a fiber is allowed to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FiberMode {
    /// Connected and acyclic (the default reading of a vertex model).
    Subtree,
    /// Connected subgraph; cycles inside a fiber are tolerated.
    Subgraph,
    /// A simple path, the preferred minimal structure.
    Chain,
}

impl std::str::FromStr for FiberMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<FiberMode> {
        match s {
            "subtree" => Ok(FiberMode::Subtree),
            "subgraph" => Ok(FiberMode::Subgraph),
            "chain" => Ok(FiberMode::Chain),
            other => Err(Error::Parse(format!("unknown fiber mode `{other}`"))),
        }
    }
}

/// How the pullback (edge-coverage) condition is encoded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PullbackEncoding {
    /// Product over hardware edges of (1 - connecting indicators); exact and
    /// zero-dimensional. The default.
    Product,
    /// The integer-slack form (sum = 1 + delta^2) with delta bounded by its
    /// attainable range.
    DeltaBounded,
}

/// Provenance of each generator family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GeneratorTag {
    Disjointness,
    Usage,
    Size,
    Connectivity,
    ChainDegree,
    Pullback,
    FieldEquation,
}

/// The ideal I in Q[alpha, beta (, delta)] whose zeros are the embeddings.
#[derive(Debug, Clone)]
pub struct EmbeddingIdeal {
    pub ring: Arc<Ring>,
    pub ideal: Ideal,
    pub tags: Vec<GeneratorTag>,
    pub x: Graph,
    pub y: Graph,
    pub k: usize,
    pub mode: FiberMode,
    /// Per-hardware-node capacity (1 unless the node is a folded class).
    pub capacities: Vec<usize>,
    /// Whether usage variables beta_i are present.
    pub with_beta: bool,
}

/// The binary matrix realizing one fiber bundle pi: X -> Y.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct EmbeddingAssignment {
    /// alpha[i][j] = 1 when hardware vertex i carries logical vertex j.
    pub alpha: Vec<Vec<u8>>,
    /// beta[i] = 1 when hardware vertex i is used.
    pub beta: Vec<u8>,
}

impl EmbeddingAssignment {
    pub fn from_alpha(alpha: Vec<Vec<u8>>) -> EmbeddingAssignment {
        let beta = alpha
            .iter()
            .map(|row| row.iter().any(|&a| a == 1) as u8)
            .collect();
        EmbeddingAssignment { alpha, beta }
    }

    /// Hardware vertices carrying logical vertex j.
    pub fn fiber(&self, j: usize) -> Vec<usize> {
        self.alpha
            .iter()
            .enumerate()
            .filter(|(_, row)| row[j] == 1)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn used(&self) -> Vec<usize> {
        self.beta
            .iter()
            .enumerate()
            .filter(|(_, b)| **b == 1)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn max_chain_len(&self) -> usize {
        (0..self.alpha.first().map_or(0, Vec::len))
            .map(|j| self.fiber(j).len())
            .max()
            .unwrap_or(0)
    }

    pub fn to_json(&self, x: &Graph, y: &Graph) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for j in 0..y.n() {
            let fiber: Vec<String> = self
                .fiber(j)
                .into_iter()
                .map(|i| x.vertices()[i].clone())
                .collect();
            map.insert(y.vertices()[j].clone(), serde_json::json!(fiber));
        }
        serde_json::json!({ "logical_to_physical": map })
    }

    pub fn from_json(value: &serde_json::Value, x: &Graph, y: &Graph) -> Result<EmbeddingAssignment> {
        let map = value
            .get("logical_to_physical")
            .and_then(|v| v.as_object())
            .ok_or_else(|| Error::Parse("expected logical_to_physical object".into()))?;
        let mut alpha = vec![vec![0u8; y.n()]; x.n()];
        for (yname, fiber) in map {
            let j = y.vertex_index(yname)?;
            let fiber = fiber
                .as_array()
                .ok_or_else(|| Error::Parse("fiber must be an array".into()))?;
            for xv in fiber {
                let name = xv.as_str().ok_or_else(|| Error::Parse("vertex name".into()))?;
                let i = x.vertex_index(name)?;
                alpha[i][j] = 1;
            }
        }
        Ok(EmbeddingAssignment::from_alpha(alpha))
    }
}

/// Options for building the ideal.
#[derive(Debug, Clone)]
pub struct EmbedOptions {
    pub pullback: PullbackEncoding,
    pub groebner: BuchbergerConfig,
}

impl Default for EmbedOptions {
    fn default() -> Self {
        EmbedOptions {
            pullback: PullbackEncoding::Product,
            groebner: BuchbergerConfig::default(),
        }
    }
}

struct RingLayout {
    ring: Arc<Ring>,
    n: usize,
    m: usize,
    with_beta: bool,
    delta_pairs: Vec<(usize, usize)>,
}

impl RingLayout {
    fn alpha(&self, i: usize, j: usize) -> usize {
        i * self.m + j
    }

    fn beta(&self, i: usize) -> usize {
        debug_assert!(self.with_beta);
        self.n * self.m + i
    }

    fn delta(&self, pair: (usize, usize)) -> usize {
        let base = self.n * self.m + if self.with_beta { self.n } else { 0 };
        base + self.delta_pairs.iter().position(|&p| p == pair).unwrap()
    }

    fn alpha_var(&self, i: usize, j: usize) -> Polynomial {
        Polynomial::var(&self.ring, self.alpha(i, j))
    }
}

fn layout(
    n: usize,
    m: usize,
    with_beta: bool,
    delta_pairs: Vec<(usize, usize)>,
) -> RingLayout {
    let mut names = Vec::with_capacity(n * m + n);
    for i in 1..=n {
        for j in 1..=m {
            names.push(format!("a{i}_{j}"));
        }
    }
    if with_beta {
        for i in 1..=n {
            names.push(format!("b{i}"));
        }
    }
    for &(j1, j2) in &delta_pairs {
        names.push(format!("d{}_{}", j1 + 1, j2 + 1));
    }
    RingLayout {
        ring: Ring::new(names),
        n,
        m,
        with_beta,
        delta_pairs,
    }
}

/// Drop monomials that are already known to vanish on the variety: more
/// than cap(i) distinct logicals on one node, or two vertices of one fiber
/// farther apart than k. Sound because the corresponding generators are in
/// the ideal, so this only rewrites generators modulo the ideal.
fn prune(
    poly: Polynomial,
    lay: &RingLayout,
    caps: &[usize],
    dist: &[Vec<Option<usize>>],
    k: usize,
) -> Polynomial {
    let mut out = Polynomial::zero(&lay.ring);
    'term: for (mono, coef) in poly.multilinearized().terms() {
        let mut per_node: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for idx in mono.support() {
            if idx < lay.n * lay.m {
                let i = idx / lay.m;
                let j = idx % lay.m;
                per_node.entry(i).or_default().push(j);
            }
        }
        for (&i, logicals) in &per_node {
            if logicals.len() > caps[i] {
                continue 'term;
            }
        }
        // same fiber, distance over k
        let mut per_logical: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (&i, logicals) in &per_node {
            for &j in logicals {
                per_logical.entry(j).or_default().push(i);
            }
        }
        for nodes in per_logical.values() {
            for a in 0..nodes.len() {
                for b in (a + 1)..nodes.len() {
                    match dist[nodes[a]][nodes[b]] {
                        Some(d) if d <= k => {}
                        _ => continue 'term,
                    }
                }
            }
        }
        out.add_term(mono.clone(), coef.clone());
    }
    out
}

fn build_system(
    x: &Graph,
    y: &Graph,
    k: usize,
    mode: FiberMode,
    capacities: Vec<usize>,
    with_beta: bool,
    opts: &EmbedOptions,
) -> Result<EmbeddingIdeal> {
    if k < 1 {
        return Err(Error::Invalid("chain size bound k must be >= 1".into()));
    }
    let n = x.n();
    let m = y.n();
    let y_edges: Vec<(usize, usize)> = y.edges().collect();
    let delta_pairs = if opts.pullback == PullbackEncoding::DeltaBounded {
        y_edges.clone()
    } else {
        Vec::new()
    };
    let lay = layout(n, m, with_beta, delta_pairs);
    let dist = x.distances();

    let mut gens: Vec<Polynomial> = Vec::new();
    let mut tags: Vec<GeneratorTag> = Vec::new();
    let mut push = |g: Polynomial, t: GeneratorTag, gens: &mut Vec<Polynomial>, tags: &mut Vec<GeneratorTag>| {
        if !g.is_zero() {
            gens.push(g);
            tags.push(t);
        }
    };

    // capacity (disjointness): every (cap+1)-subset of logicals vanishes
    for i in 0..n {
        let cap = capacities[i];
        for subset in k_subsets(m, cap + 1) {
            let mut g = Polynomial::one(&lay.ring);
            for &j in &subset {
                g = g.mul(&lay.alpha_var(i, j))?;
            }
            push(g, GeneratorTag::Disjointness, &mut gens, &mut tags);
        }
    }

    // usage: sum_j alpha_ij = beta_i
    if with_beta {
        for i in 0..n {
            let mut g = Polynomial::zero(&lay.ring);
            for j in 0..m {
                g = g.add(&lay.alpha_var(i, j))?;
            }
            g = g.sub(&Polynomial::var(&lay.ring, lay.beta(i)))?;
            push(g, GeneratorTag::Usage, &mut gens, &mut tags);
        }
    }

    // size: fiber cardinality in 1..=k+1, as the vanishing product
    for j in 0..m {
        let mut s = Polynomial::zero(&lay.ring);
        for i in 0..n {
            s = s.add(&lay.alpha_var(i, j))?;
        }
        let mut g = Polynomial::one(&lay.ring);
        for kappa in 1..=(k + 1).min(n) {
            let factor = s.sub(&Polynomial::constant(&lay.ring, int(kappa as i64)))?;
            g = prune(g.mul(&factor)?, &lay, &capacities, &dist, k);
        }
        push(g, GeneratorTag::Size, &mut gens, &mut tags);
    }

    // distance cuts and connectivity
    for j in 0..m {
        for i1 in 0..n {
            for i2 in (i1 + 1)..n {
                let far = !matches!(dist[i1][i2], Some(d) if d <= k);
                let gate = lay.alpha_var(i1, j).mul(&lay.alpha_var(i2, j))?;
                if far {
                    push(gate, GeneratorTag::Size, &mut gens, &mut tags);
                    continue;
                }
                if dist[i1][i2] == Some(0) {
                    continue;
                }
                let chains = enumerate_chains(x, i1, i2, k)?;
                match mode {
                    FiberMode::Subtree | FiberMode::Chain => {
                        // exactly one chain through the fiber
                        let mut s = Polynomial::zero(&lay.ring);
                        for c in &chains {
                            let mut t = Polynomial::one(&lay.ring);
                            for &w in c.interior() {
                                t = t.mul(&lay.alpha_var(w, j))?;
                            }
                            s = s.add(&t)?;
                        }
                        let body = s.sub(&Polynomial::one(&lay.ring))?;
                        let g = prune(gate.mul(&body)?, &lay, &capacities, &dist, k);
                        push(g, GeneratorTag::Connectivity, &mut gens, &mut tags);
                    }
                    FiberMode::Subgraph => {
                        // at least one chain through the fiber
                        let mut prod = Polynomial::one(&lay.ring);
                        for c in &chains {
                            let mut t = Polynomial::one(&lay.ring);
                            for &w in c.interior() {
                                t = t.mul(&lay.alpha_var(w, j))?;
                            }
                            let factor = t.sub(&Polynomial::one(&lay.ring))?;
                            prod = prune(prod.mul(&factor)?, &lay, &capacities, &dist, k);
                        }
                        let g = prune(gate.mul(&prod)?, &lay, &capacities, &dist, k);
                        push(g, GeneratorTag::Connectivity, &mut gens, &mut tags);
                    }
                }
            }
        }
    }

    // chain mode: fiber-internal degree at most 2
    if mode == FiberMode::Chain {
        for j in 0..m {
            for i1 in 0..n {
                let mut d = Polynomial::zero(&lay.ring);
                for i2 in x.neighbors(i1) {
                    d = d.add(&lay.alpha_var(i2, j))?;
                }
                let d1 = d.sub(&Polynomial::one(&lay.ring))?;
                let d2 = d.sub(&Polynomial::constant(&lay.ring, int(2)))?;
                let g = lay
                    .alpha_var(i1, j)
                    .mul(&d)?
                    .mul(&d1)?
                    .mul(&d2)?;
                let g = prune(g, &lay, &capacities, &dist, k);
                push(g, GeneratorTag::ChainDegree, &mut gens, &mut tags);
            }
        }
    }

    // pullback: every logical edge is covered by a hardware edge
    for &(j1, j2) in &y_edges {
        let mut connectors: Vec<Polynomial> = Vec::new();
        for (i1, i2) in x.edges() {
            let c = lay
                .alpha_var(i1, j1)
                .mul(&lay.alpha_var(i2, j2))?
                .add(&lay.alpha_var(i1, j2).mul(&lay.alpha_var(i2, j1))?)?;
            connectors.push(c);
        }
        match opts.pullback {
            PullbackEncoding::Product => {
                let mut prod = Polynomial::one(&lay.ring);
                for c in &connectors {
                    let factor = Polynomial::one(&lay.ring).sub(c)?;
                    prod = prune(prod.mul(&factor)?, &lay, &capacities, &dist, k);
                }
                push(prod, GeneratorTag::Pullback, &mut gens, &mut tags);
            }
            PullbackEncoding::DeltaBounded => {
                let mut s = Polynomial::zero(&lay.ring);
                for c in &connectors {
                    s = s.add(c)?;
                }
                let delta = Polynomial::var(&lay.ring, lay.delta((j1, j2)));
                let g = s
                    .sub(&Polynomial::one(&lay.ring))?
                    .sub(&delta.mul(&delta)?)?;
                push(g, GeneratorTag::Pullback, &mut gens, &mut tags);
                // bound: delta^2 takes one of the attainable values
                let mut bound = Polynomial::one(&lay.ring);
                let max = connectors.len();
                for dsq in 0..max {
                    let factor = delta
                        .mul(&delta)?
                        .sub(&Polynomial::constant(&lay.ring, int(dsq as i64)))?;
                    bound = bound.mul(&factor)?;
                }
                push(bound, GeneratorTag::Pullback, &mut gens, &mut tags);
            }
        }
    }

    // field equations for alpha and beta
    let binary_count = n * m + if with_beta { n } else { 0 };
    for idx in 0..binary_count {
        let v = Polynomial::var(&lay.ring, idx);
        push(
            v.mul(&v)?.sub(&v)?,
            GeneratorTag::FieldEquation,
            &mut gens,
            &mut tags,
        );
    }

    Ok(EmbeddingIdeal {
        ideal: Ideal::new(&lay.ring, gens.clone()),
        ring: lay.ring,
        tags,
        x: x.clone(),
        y: y.clone(),
        k,
        mode,
        capacities,
        with_beta,
    })
}

fn k_subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > m {
        return out;
    }
    let mut cur = Vec::new();
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    rec(0, m, k, &mut cur, &mut out);
    out
}

/// Build the embedding ideal for Y into X with fibers of size <= k (chains
/// of at most k edges, so at most k+1 vertices).
pub fn build_embedding_ideal(
    x: &Graph,
    y: &Graph,
    k: usize,
    mode: FiberMode,
    opts: &EmbedOptions,
) -> Result<EmbeddingIdeal> {
    build_system(x, y, k, mode, vec![1; x.n()], true, opts)
}

/// Same constraint families over a capacitated node graph (used for folded
/// hardware); usage variables are omitted, matching the folded systems.
pub fn build_capacitated_embedding_ideal(
    x: &Graph,
    capacities: Vec<usize>,
    y: &Graph,
    k: usize,
    mode: FiberMode,
    opts: &EmbedOptions,
) -> Result<EmbeddingIdeal> {
    build_system(x, y, k, mode, capacities, false, opts)
}

impl EmbeddingIdeal {
    /// Reduced basis under grevlex (existence, counting).
    pub fn groebner(&self, config: &BuchbergerConfig) -> Result<GroebnerBasis> {
        buchberger(&self.ideal, &MonomialOrder::GrevLex, config)
    }

    /// Reduced basis under the block elimination order [alpha] > [beta].
    pub fn groebner_beta_elimination(&self, config: &BuchbergerConfig) -> Result<GroebnerBasis> {
        let drop = self.x.n() * self.y.n();
        let ord = MonomialOrder::elimination(&self.ring, drop);
        buchberger(&self.ideal, &ord, config)
    }

    pub fn beta_indices(&self) -> Vec<usize> {
        if !self.with_beta {
            return Vec::new();
        }
        let base = self.x.n() * self.y.n();
        (base..base + self.x.n()).collect()
    }

    fn binary_var_indices(&self) -> Vec<usize> {
        let nm = self.x.n() * self.y.n();
        let total = nm + if self.with_beta { self.x.n() } else { 0 };
        (0..total).collect()
    }

    fn decode(&self, point: &[u8]) -> EmbeddingAssignment {
        let n = self.x.n();
        let m = self.y.n();
        let mut alpha = vec![vec![0u8; m]; n];
        for i in 0..n {
            for j in 0..m {
                alpha[i][j] = point[i * m + j];
            }
        }
        if self.with_beta {
            let beta = (0..n).map(|i| point[n * m + i]).collect();
            EmbeddingAssignment { alpha, beta }
        } else {
            EmbeddingAssignment::from_alpha(alpha)
        }
    }
}

/// A Y minor exists iff 1 is not in the reduced basis.
pub fn check_embeddable(e: &EmbeddingIdeal, config: &BuchbergerConfig) -> Result<bool> {
    Ok(!e.groebner(config)?.contains_one())
}

/// All embeddings, enumerated from the elimination-order basis so the beta
/// projection can be read off the same computation.
pub fn enumerate_embeddings(
    e: &EmbeddingIdeal,
    config: &BuchbergerConfig,
) -> Result<Vec<EmbeddingAssignment>> {
    let gb = if e.with_beta {
        e.groebner_beta_elimination(config)?
    } else {
        e.groebner(config)?
    };
    enumerate_embeddings_from(e, &gb)
}

pub fn enumerate_embeddings_from(
    e: &EmbeddingIdeal,
    gb: &GroebnerBasis,
) -> Result<Vec<EmbeddingAssignment>> {
    let vars = e.binary_var_indices();
    let points = enumerate_binary_variety(gb, &vars)?;
    Ok(points.iter().map(|p| e.decode(p)).collect())
}

/// Number of embeddings, counted from the staircase without solving.
pub fn count_embeddings(e: &EmbeddingIdeal, config: &BuchbergerConfig) -> Result<u128> {
    let gb = e.groebner(config)?;
    match staircase_count(&gb).standard_monomial_count {
        StandardCount::Finite(c) => Ok(c),
        StandardCount::Infinite => Err(Error::Invalid(
            "embedding ideal is not zero-dimensional".into(),
        )),
    }
}

/// Definition-level validation of one assignment, with reasons on failure.
pub fn validate_embedding(
    a: &EmbeddingAssignment,
    x: &Graph,
    y: &Graph,
    k: usize,
    mode: FiberMode,
) -> (bool, Vec<String>) {
    let mut reasons = Vec::new();
    let n = x.n();
    let m = y.n();
    if a.alpha.len() != n || a.alpha.iter().any(|r| r.len() != m) {
        return (false, vec!["alpha shape mismatch".into()]);
    }
    for (i, row) in a.alpha.iter().enumerate() {
        let s: u8 = row.iter().sum();
        if s > 1 {
            reasons.push(format!("disjointness: vertex {} in several fibers", x.vertices()[i]));
        }
        if a.beta[i] != (s > 0) as u8 {
            reasons.push(format!("usage: beta mismatch at {}", x.vertices()[i]));
        }
    }
    for j in 0..m {
        let fiber = a.fiber(j);
        let name = &y.vertices()[j];
        if fiber.is_empty() {
            reasons.push(format!("size: empty fiber for {name}"));
            continue;
        }
        if fiber.len() > k + 1 {
            reasons.push(format!("size: fiber for {name} exceeds {} vertices", k + 1));
        }
        let connected = x.is_connected_subset(&fiber);
        if !connected {
            reasons.push(format!("connectivity: fiber for {name} disconnected"));
            continue;
        }
        let edges = x.induced_edge_count(&fiber);
        match mode {
            FiberMode::Subtree => {
                if edges != fiber.len() - 1 {
                    reasons.push(format!("connectivity: fiber for {name} contains a cycle"));
                }
            }
            FiberMode::Chain => {
                if edges != fiber.len() - 1 {
                    reasons.push(format!("connectivity: fiber for {name} contains a cycle"));
                } else {
                    let max_deg = fiber
                        .iter()
                        .map(|&v| {
                            x.neighbors(v)
                                .into_iter()
                                .filter(|w| fiber.contains(w))
                                .count()
                        })
                        .max()
                        .unwrap_or(0);
                    if max_deg > 2 {
                        reasons.push(format!("chain-degree: fiber for {name} branches"));
                    }
                }
            }
            FiberMode::Subgraph => {}
        }
    }
    for (j1, j2) in y.edges() {
        let f1 = a.fiber(j1);
        let f2 = a.fiber(j2);
        let covered = x.edges().any(|(u, v)| {
            (f1.contains(&u) && f2.contains(&v)) || (f1.contains(&v) && f2.contains(&u))
        });
        if !covered {
            reasons.push(format!(
                "pullback: edge ({}, {}) not covered",
                y.vertices()[j1],
                y.vertices()[j2]
            ));
        }
    }
    (reasons.is_empty(), reasons)
}

/// Exhaustive oracle: all alpha-matrices passing validation. Feasible for
/// n*m up to about 20.
pub fn brute_force_embeddings(
    x: &Graph,
    y: &Graph,
    k: usize,
    mode: FiberMode,
) -> Vec<EmbeddingAssignment> {
    let n = x.n();
    let m = y.n();
    let mut out = Vec::new();
    // each hardware vertex carries one logical vertex or none
    let mut assign = vec![0usize; n]; // 0 = unused, j+1 = logical j
    loop {
        let mut alpha = vec![vec![0u8; m]; n];
        for i in 0..n {
            if assign[i] > 0 {
                alpha[i][assign[i] - 1] = 1;
            }
        }
        let a = EmbeddingAssignment::from_alpha(alpha);
        if validate_embedding(&a, x, y, k, mode).0 {
            out.push(a);
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == n {
                out.sort();
                return out;
            }
            assign[pos] += 1;
            if assign[pos] <= m {
                break;
            }
            assign[pos] = 0;
            pos += 1;
        }
    }
}

/// The pullback of Q_X along the assignment: substitute each hardware
/// variable by the sum of its assigned logical variables and expand.
pub fn pullback_form(a: &EmbeddingAssignment, x: &Graph, y: &Graph) -> Result<Polynomial> {
    let y_ring = y.ring();
    let mut out = Polynomial::zero(&y_ring);
    for (i1, i2) in x.edges() {
        let img = |i: usize| -> Polynomial {
            let mut s = Polynomial::zero(&y_ring);
            for j in 0..y.n() {
                if a.alpha[i][j] == 1 {
                    s.add_term(Monomial::var(y_ring.len(), j), int(1));
                }
            }
            s
        };
        out = out.add(&img(i1).mul(&img(i2))?)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, path, square_with_pendant};

    fn cfg() -> BuchbergerConfig {
        BuchbergerConfig::default()
    }

    #[test]
    fn single_edge_into_single_edge() {
        let x = complete(vec!["x1", "x2"]);
        let y = complete(vec!["y1", "y2"]);
        let e = build_embedding_ideal(&x, &y, 1, FiberMode::Subtree, &EmbedOptions::default()).unwrap();
        let found = enumerate_embeddings(&e, &cfg()).unwrap();
        assert_eq!(found.len(), 2);
        assert_eq!(count_embeddings(&e, &cfg()).unwrap(), 2);
        let oracle = brute_force_embeddings(&x, &y, 1, FiberMode::Subtree);
        assert_eq!(found.len(), oracle.len());
    }

    #[test]
    fn triangle_into_path_is_infeasible() {
        let x = path(vec!["x1", "x2", "x3"]);
        let y = complete(vec!["y1", "y2", "y3"]);
        let e = build_embedding_ideal(&x, &y, 1, FiberMode::Subtree, &EmbedOptions::default()).unwrap();
        assert!(!check_embeddable(&e, &cfg()).unwrap());
        assert_eq!(count_embeddings(&e, &cfg()).unwrap(), 0);
        assert!(brute_force_embeddings(&x, &y, 1, FiberMode::Subtree).is_empty());
    }

    #[test]
    fn identity_embedding_exists() {
        let x = square_with_pendant();
        let y = square_with_pendant();
        // Y == X embeds as a subgraph with singleton fibers
        let e = build_embedding_ideal(&x, &y, 1, FiberMode::Subtree, &EmbedOptions::default()).unwrap();
        assert!(check_embeddable(&e, &cfg()).unwrap());
    }

    #[test]
    fn single_logical_vertex_fibers() {
        // one logical vertex, k=1: singleton fibers plus one per edge
        let x = path(vec!["x1", "x2", "x3"]);
        let y = Graph::new(vec!["y1"], &[]).unwrap();
        let e = build_embedding_ideal(&x, &y, 1, FiberMode::Subtree, &EmbedOptions::default()).unwrap();
        let found = enumerate_embeddings(&e, &cfg()).unwrap();
        let oracle = brute_force_embeddings(&x, &y, 1, FiberMode::Subtree);
        assert_eq!(found.len(), oracle.len());
        assert_eq!(found.len(), x.n() + x.edge_count());
    }

    #[test]
    fn k2_into_p3_matches_oracle() {
        let x = path(vec!["x1", "x2", "x3"]);
        let y = complete(vec!["y1", "y2"]);
        let e = build_embedding_ideal(&x, &y, 2, FiberMode::Subtree, &EmbedOptions::default()).unwrap();
        let found = enumerate_embeddings(&e, &cfg()).unwrap();
        let oracle = brute_force_embeddings(&x, &y, 2, FiberMode::Subtree);
        assert_eq!(found, oracle);
        assert_eq!(found.len(), 8);
    }

    #[test]
    fn validate_worked_example_map() {
        // square X, triangle Y: pi(x1)=pi(x4)=y1, pi(x2)=y2, pi(x3)=y3
        let x = Graph::new(vec!["x1", "x2", "x3", "x4"], &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let y = complete(vec!["y1", "y2", "y3"]);
        let alpha = vec![
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![1, 0, 0],
        ];
        let a = EmbeddingAssignment::from_alpha(alpha);
        let (ok, reasons) = validate_embedding(&a, &x, &y, 1, FiberMode::Subtree);
        assert!(ok, "{reasons:?}");
    }

    #[test]
    fn validate_rejects_overlapping_fibers() {
        let x = complete(vec!["x1", "x2"]);
        let y = complete(vec!["y1", "y2"]);
        let alpha = vec![vec![1, 1], vec![0, 1]];
        let a = EmbeddingAssignment {
            alpha,
            beta: vec![1, 1],
        };
        let (ok, reasons) = validate_embedding(&a, &x, &y, 1, FiberMode::Subtree);
        assert!(!ok);
        assert!(reasons.iter().any(|r| r.contains("disjointness")));
    }

    #[test]
    fn pullback_counts_connecting_edges() {
        let x = Graph::new(vec!["x1", "x2", "x3", "x4"], &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let y = complete(vec!["y1", "y2", "y3"]);
        let alpha = vec![
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![1, 0, 0],
        ];
        let a = EmbeddingAssignment::from_alpha(alpha);
        let p = pullback_form(&a, &x, &y).unwrap();
        let ring = p.ring().clone();
        // each triangle edge must be covered at least once
        for (pair, at_least) in [("y1*y2", 1), ("y2*y3", 1), ("y1*y3", 1)] {
            let mono = Polynomial::parse(&ring, pair).unwrap();
            let (m, _) = mono.leading_term(&MonomialOrder::GrevLex).unwrap();
            assert!(p.coefficient(&m) >= int(at_least));
        }
    }

    #[test]
    fn pullback_of_zero_assignment_is_zero() {
        let x = complete(vec!["x1", "x2"]);
        let y = complete(vec!["y1", "y2"]);
        let a = EmbeddingAssignment::from_alpha(vec![vec![0, 0], vec![0, 0]]);
        assert!(pullback_form(&a, &x, &y).unwrap().is_zero());
    }

    #[test]
    fn assignment_json_round_trip() {
        let x = square_with_pendant();
        let y = complete(vec!["y1", "y2", "y3"]);
        let alpha = vec![
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![1, 0, 0],
            vec![0, 0, 0],
        ];
        let a = EmbeddingAssignment::from_alpha(alpha);
        let j = a.to_json(&x, &y);
        let back = EmbeddingAssignment::from_json(&j, &x, &y).unwrap();
        assert_eq!(a, back);
    }

    #[test]
    fn delta_encoding_agrees_on_existence() {
        let x = path(vec!["x1", "x2", "x3"]);
        let y = complete(vec!["y1", "y2"]);
        let opts = EmbedOptions {
            pullback: PullbackEncoding::DeltaBounded,
            ..EmbedOptions::default()
        };
        let e = build_embedding_ideal(&x, &y, 2, FiberMode::Subtree, &opts).unwrap();
        assert!(check_embeddable(&e, &cfg()).unwrap());
        let infeasible = build_embedding_ideal(
            &path(vec!["x1", "x2", "x3"]),
            &complete(vec!["y1", "y2", "y3"]),
            1,
            FiberMode::Subtree,
            &opts,
        )
        .unwrap();
        assert!(!check_embeddable(&infeasible, &cfg()).unwrap());
    }
}
