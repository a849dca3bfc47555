//! Symmetry folding: rewrite the hardware graph's quadratic form in
//! invariant coordinates to quotient out automorphism redundancy.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::embed::{
    build_capacitated_embedding_ideal, EmbedOptions, EmbeddingIdeal, FiberMode,
};
use crate::error::{Error, Result};
use crate::graph::{is_automorphism, Graph, Permutation};
use crate::groebner::{buchberger, BuchbergerConfig, Ideal};
use crate::order::{Block, MonomialOrder, SubOrder};
use crate::poly::{int, Coef, Polynomial};
use crate::ring::{Monomial, Ring};

pub const DEFAULT_GROUP_BOUND: usize = 40_320;

/// Close a generator set into the full finite group.
pub fn group_closure(generators: &[Permutation], n: usize, bound: usize) -> Result<Vec<Permutation>> {
    let mut group: BTreeSet<Permutation> = BTreeSet::new();
    group.insert(Permutation::identity(n));
    let mut frontier: Vec<Permutation> = vec![Permutation::identity(n)];
    while let Some(g) = frontier.pop() {
        for s in generators {
            let h = g.compose(s);
            if group.insert(h.clone()) {
                if group.len() > bound {
                    return Err(Error::GroupBound(bound));
                }
                frontier.push(h);
            }
        }
    }
    Ok(group.into_iter().collect())
}

/// Apply a vertex permutation to a polynomial over the vertex ring:
/// x_i -> x_{sigma(i)}.
pub fn permute_poly(f: &Polynomial, sigma: &Permutation) -> Polynomial {
    let ring = f.ring();
    let mut out = Polynomial::zero(ring);
    for (m, c) in f.terms() {
        let mut exps = vec![0u32; ring.len()];
        for i in m.support() {
            exps[sigma.apply(i)] += m.exp(i);
        }
        out.add_term(Monomial::from_exps(exps), c.clone());
    }
    out
}

/// The Reynolds symmetrization: sum of f over the group generated by the
/// given permutations. The normalized variant divides by the group order,
/// so invariant inputs come back unchanged.
pub fn reynolds(
    f: &Polynomial,
    generators: &[Permutation],
    normalized: bool,
    bound: usize,
) -> Result<Polynomial> {
    let n = f.ring().len();
    let group = group_closure(generators, n, bound)?;
    let mut acc = Polynomial::zero(f.ring());
    for sigma in &group {
        acc = acc.add(&permute_poly(f, sigma))?;
    }
    if normalized {
        let order = int(group.len() as i64);
        acc = acc.scale(&(Coef::from_integer(1.into()) / order));
    }
    Ok(acc)
}

/// A complete, functionally independent set of polynomial invariants of a
/// vertex-permutation group.
#[derive(Debug, Clone)]
pub struct InvariantSet {
    /// Ring over the hardware vertices.
    pub ring: Arc<Ring>,
    /// (name, polynomial) per invariant, in canonical order.
    pub invariants: Vec<(String, Polynomial)>,
    pub group: Vec<Permutation>,
}

/// Build the classical complete invariant set for a group generated by one
/// or more permutations whose nontrivial cycles are disjoint transpositions:
/// per swapped pair the sum and product, plus every fixed vertex. Supplying
/// candidates directly is supported through `InvariantSet` construction.
pub fn invariant_basis(
    generators: &[Permutation],
    x: &Graph,
    seed: u64,
    bound: usize,
) -> Result<InvariantSet> {
    let ring = x.ring();
    let n = x.n();
    let group = group_closure(generators, n, bound)?;
    for sigma in generators {
        if !is_automorphism(x, sigma) {
            return Err(Error::Invalid("generator is not an automorphism".into()));
        }
    }

    // union of swapped pairs across generators; must be disjoint 2-cycles
    let mut swapped: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut touched: BTreeSet<usize> = BTreeSet::new();
    for sigma in generators {
        for cyc in sigma.cycles() {
            if cyc.len() != 2 {
                return Err(Error::Invalid(
                    "invariant construction supports transposition-type generators; supply candidates"
                        .into(),
                ));
            }
            let (a, b) = (cyc[0].min(cyc[1]), cyc[0].max(cyc[1]));
            if touched.contains(&a) && !swapped.contains(&(a, b))
                || touched.contains(&b) && !swapped.contains(&(a, b))
            {
                return Err(Error::Invalid(
                    "generators must have disjoint support; supply candidates".into(),
                ));
            }
            swapped.insert((a, b));
            touched.insert(a);
            touched.insert(b);
        }
    }

    let mut invariants: Vec<(String, Polynomial)> = Vec::new();
    let mut counter = 0usize;
    // merged classes first, in vertex order, then fixed vertices
    for i in 0..n {
        if let Some(&(a, b)) = swapped.iter().find(|&&(a, _)| a == i) {
            counter += 1;
            let sum = Polynomial::var(&ring, a).add(&Polynomial::var(&ring, b))?;
            invariants.push((format!("K{counter}"), sum));
            counter += 1;
            let prod = Polynomial::var(&ring, a).mul(&Polynomial::var(&ring, b))?;
            invariants.push((format!("K{counter}"), prod));
        } else if !touched.contains(&i) {
            counter += 1;
            invariants.push((format!("K{counter}"), Polynomial::var(&ring, i)));
        }
    }

    let set = InvariantSet {
        ring,
        invariants,
        group,
    };
    set.certify(seed)?;
    Ok(set)
}

impl InvariantSet {
    /// Invariants from explicit candidate polynomials (user supplied).
    pub fn from_candidates(
        x: &Graph,
        candidates: Vec<(String, Polynomial)>,
        generators: &[Permutation],
        seed: u64,
        bound: usize,
    ) -> Result<InvariantSet> {
        let group = group_closure(generators, x.n(), bound)?;
        let set = InvariantSet {
            ring: x.ring(),
            invariants: candidates,
            group,
        };
        set.verify_invariance()?;
        set.certify(seed)?;
        Ok(set)
    }

    /// Exact polynomial check: I(sigma x) = I(x) for all group elements.
    pub fn verify_invariance(&self) -> Result<()> {
        for sigma in &self.group {
            for (name, inv) in &self.invariants {
                if &permute_poly(inv, sigma) != inv {
                    return Err(Error::Invalid(format!(
                        "candidate {name} is not invariant under the group"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Functional independence: the Jacobian has full rank at a random
    /// rational point; three independent samples guard against unlucky
    /// points.
    pub fn certify(&self, seed: u64) -> Result<()> {
        use rand::SeedableRng;
        let r = self.invariants.len();
        let n = self.ring.len();
        if r > n {
            return Err(Error::RankDeficient { rank: n, expected: r });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut best_rank = 0;
        for _ in 0..3 {
            let point: Vec<Coef> = (0..n)
                .map(|_| int(rng.gen_range(2..100) as i64) / int(rng.gen_range(1..17) as i64))
                .collect();
            let mut jac: Vec<Vec<Coef>> = Vec::with_capacity(r);
            for (_, inv) in &self.invariants {
                let mut row = Vec::with_capacity(n);
                for v in 0..n {
                    row.push(partial(inv, v)?.eval(&point)?);
                }
                jac.push(row);
            }
            let rank = rational_rank(jac);
            best_rank = best_rank.max(rank);
            if rank == r {
                return Ok(());
            }
        }
        Err(Error::RankDeficient {
            rank: best_rank,
            expected: r,
        })
    }
}

/// Partial derivative with respect to ring variable v.
fn partial(f: &Polynomial, v: usize) -> Result<Polynomial> {
    let ring = f.ring();
    let mut out = Polynomial::zero(ring);
    for (m, c) in f.terms() {
        let e = m.exp(v);
        if e == 0 {
            continue;
        }
        let mut exps = m.exps().to_vec();
        exps[v] -= 1;
        out.add_term(Monomial::from_exps(exps), c * int(e as i64));
    }
    Ok(out)
}

fn rational_rank(mut m: Vec<Vec<Coef>>) -> usize {
    use num_traits::Zero;
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut col = 0;
    while rank < rows && col < cols {
        let pivot = (rank..rows).find(|&r| !m[r][col].is_zero());
        match pivot {
            None => {
                col += 1;
                continue;
            }
            Some(p) => {
                m.swap(rank, p);
                let inv = m[rank][col].clone();
                for r in (rank + 1)..rows {
                    if !m[r][col].is_zero() {
                        let factor = &m[r][col] / &inv;
                        for c in col..cols {
                            let delta = &m[rank][c] * &factor;
                            m[r][c] = &m[r][c] - delta;
                        }
                    }
                }
                rank += 1;
                col += 1;
            }
        }
    }
    rank
}

/// The result of folding a hardware graph along a symmetry group.
#[derive(Debug, Clone)]
pub struct FoldedGraph {
    /// Folded target as a plain graph over the node invariants.
    pub graph: Graph,
    /// Quadratic form of the folded graph, over the node ring.
    pub form: Polynomial,
    /// Node name -> defining invariant polynomial over the original ring.
    pub back_map: BTreeMap<String, Polynomial>,
    /// Node name -> size of its parallel class (1 for unmerged vertices).
    pub capacities: BTreeMap<String, usize>,
    /// Pure-invariant relations that vanish on the complement ideal.
    pub side_relations: Vec<Polynomial>,
}

/// Fold X along the invariants: compute the reduced basis of
/// {f - Q_X} u {K_i - I_i} u {non-edge monomials} under [x] > f > [K] and
/// read the folded quadratic form off the intersection with Q[K, f].
pub fn fold_graph(
    x: &Graph,
    inv: &InvariantSet,
    config: &BuchbergerConfig,
) -> Result<FoldedGraph> {
    let n = x.n();
    let r = inv.invariants.len();
    // extended ring: x vars, then f, then K vars
    let mut names: Vec<String> = x.vertices().to_vec();
    names.push("f".to_string());
    for (kname, _) in &inv.invariants {
        names.push(kname.clone());
    }
    let ring = Ring::new(names);

    let mut gens: Vec<Polynomial> = Vec::new();
    let qx = x.quadratic_form(&x.ring())?.into_ring(&ring)?;
    gens.push(Polynomial::var(&ring, n).sub(&qx)?);
    for (idx, (_, ipoly)) in inv.invariants.iter().enumerate() {
        let kvar = Polynomial::var(&ring, n + 1 + idx);
        gens.push(kvar.sub(&ipoly.into_ring(&ring)?)?);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if !x.has_edge(i, j) {
                let m = Monomial::var(ring.len(), i).mul(&Monomial::var(ring.len(), j))?;
                gens.push(Polynomial::monomial(&ring, m, int(1)));
            }
        }
    }

    let order = MonomialOrder::Block(vec![
        Block {
            vars: (0..n).collect(),
            order: SubOrder::GrevLex,
        },
        Block {
            vars: vec![n],
            order: SubOrder::GrevLex,
        },
        Block {
            vars: (n + 1..n + 1 + r).collect(),
            order: SubOrder::GrevLex,
        },
    ]);
    let gb = buchberger(&Ideal::new(&ring, gens), &order, config)?;
    let keep: Vec<usize> = (n..n + 1 + r).collect();
    let inter = crate::groebner::eliminate(&gb, &keep)?;

    // solve for f: exactly one element must be linear in f
    let fvar = n;
    let mut folded_form: Option<Polynomial> = None;
    let mut side: Vec<Polynomial> = Vec::new();
    for g in &inter.elements {
        let deg_f = g.terms().map(|(m, _)| m.exp(fvar)).max().unwrap_or(0);
        if deg_f == 0 {
            side.push(g.clone());
            continue;
        }
        if deg_f > 1 || folded_form.is_some() {
            return Err(Error::FoldFailure(
                "intersection is not linear in the form variable".into(),
            ));
        }
        // g = c*f + tail; normalize to f - (folded form)
        let mut coef_f: Option<Coef> = None;
        let mut tail = Polynomial::zero(&ring);
        for (m, c) in g.terms() {
            if m.exp(fvar) == 1 {
                if m.total_degree() != 1 {
                    return Err(Error::FoldFailure("form variable appears mixed".into()));
                }
                coef_f = Some(c.clone());
            } else {
                tail.add_term(m.clone(), c.clone());
            }
        }
        let cf = coef_f.ok_or_else(|| Error::FoldFailure("missing form variable".into()))?;
        folded_form = Some(tail.scale(&(-Coef::from_integer(1.into()) / cf)));
    }
    let folded_form =
        folded_form.ok_or_else(|| Error::FoldFailure("f is not expressible in the invariants".into()))?;

    if folded_form.total_degree() > 2 {
        return Err(Error::FoldFailure("folded form has degree above 2".into()));
    }

    // nodes: the linear (sum-type) invariants; product invariants belong to
    // side relations only
    let mut node_names: Vec<String> = Vec::new();
    let mut back_map = BTreeMap::new();
    let mut capacities = BTreeMap::new();
    for (kname, ipoly) in &inv.invariants {
        if ipoly.total_degree() == 1 {
            node_names.push(kname.clone());
            back_map.insert(kname.clone(), ipoly.clone());
            capacities.insert(kname.clone(), ipoly.num_terms());
        }
    }
    // the folded form must be supported on the node invariants
    let node_ring = Ring::new(node_names.clone());
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut node_form = Polynomial::zero(&node_ring);
    for (m, c) in folded_form.terms() {
        let support: Vec<usize> = m.support().collect();
        if support.iter().any(|&v| v <= fvar) {
            return Err(Error::FoldFailure(
                "folded form mentions unfolded variables".into(),
            ));
        }
        let mut exps = vec![0u32; node_ring.len()];
        for &v in &support {
            let kname = ring.name(v);
            let idx = node_ring
                .index_of(kname)
                .map_err(|_| Error::FoldFailure(format!("form uses non-node invariant {kname}")))?;
            exps[idx] = m.exp(v);
        }
        let mono = Monomial::from_exps(exps);
        if mono.total_degree() == 2 && mono.is_multilinear() {
            let sup: Vec<usize> = mono.support().collect();
            edges.push((sup[0], sup[1]));
        }
        node_form.add_term(mono, c.clone());
    }
    let graph = Graph::new(node_names, &edges)?;

    Ok(FoldedGraph {
        graph,
        form: node_form,
        back_map,
        capacities,
        side_relations: side,
    })
}

impl FoldedGraph {
    pub fn capacity_vec(&self) -> Vec<usize> {
        self.graph
            .vertices()
            .iter()
            .map(|v| self.capacities[v])
            .collect()
    }

    /// Class members (original vertex indices) of each folded node.
    pub fn class_members(&self, x: &Graph) -> Result<BTreeMap<String, Vec<usize>>> {
        let mut out = BTreeMap::new();
        for (name, inv) in &self.back_map {
            let members: Vec<usize> = inv
                .support()
                .into_iter()
                .map(|i| x.vertex_index(inv.ring().name(i)))
                .collect::<Result<_>>()?;
            out.insert(name.clone(), members);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let back: BTreeMap<String, String> = self
            .back_map
            .iter()
            .map(|(k, v)| (k.clone(), v.to_text()))
            .collect();
        serde_json::json!({
            "graph": self.graph.to_json(),
            "form": self.form.to_text(),
            "back_map": back,
            "capacities": self.capacities,
            "side_relations": self.side_relations.iter().map(|p| p.to_text()).collect::<Vec<_>>(),
        })
    }
}

/// Embedding ideal over the folded target: same families, with each merged
/// node's capacity card(I) replacing the unit row constraint, and no usage
/// variables.
pub fn build_folded_embedding_ideal(
    fx: &FoldedGraph,
    y: &Graph,
    k: usize,
    opts: &EmbedOptions,
) -> Result<EmbeddingIdeal> {
    build_capacitated_embedding_ideal(&fx.graph, fx.capacity_vec(), y, k, FiberMode::Subtree, opts)
}

/// All concrete assignments a folded assignment unfolds to: each logical
/// vertex hosted on a merged node picks a distinct class representative.
pub fn unfold_assignments(
    folded: &crate::embed::EmbeddingAssignment,
    fx: &FoldedGraph,
    x: &Graph,
) -> Result<Vec<crate::embed::EmbeddingAssignment>> {
    let classes = fx.class_members(x)?;
    let m = folded.alpha.first().map_or(0, Vec::len);
    let node_names = fx.graph.vertices();
    let mut partial: Vec<Vec<Vec<u8>>> = vec![vec![vec![0u8; m]; x.n()]];
    for (node_idx, node) in node_names.iter().enumerate() {
        let members = &classes[node];
        let hosted: Vec<usize> = (0..m).filter(|&j| folded.alpha[node_idx][j] == 1).collect();
        if hosted.is_empty() {
            continue;
        }
        let mut next: Vec<Vec<Vec<u8>>> = Vec::new();
        for alpha in &partial {
            for choice in injections(hosted.len(), members.len()) {
                let mut a = alpha.clone();
                for (t, &j) in hosted.iter().enumerate() {
                    a[members[choice[t]]][j] = 1;
                }
                next.push(a);
            }
        }
        partial = next;
    }
    Ok(partial
        .into_iter()
        .map(crate::embed::EmbeddingAssignment::from_alpha)
        .collect())
}

/// All injections of 0..k into 0..n, as index vectors.
fn injections(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut used = vec![false; n];
    fn rec(k: usize, n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(k, n, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    rec(k, n, &mut cur, &mut used, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, square_with_pendant};

    #[test]
    fn reynolds_orbit_sum() {
        let ring = Ring::new(vec!["x1", "x2"]);
        let f = Polynomial::var(&ring, 0);
        let swap = Permutation(vec![1, 0]);
        let s = reynolds(&f, &[swap], false, DEFAULT_GROUP_BOUND).unwrap();
        assert_eq!(s, Polynomial::parse(&ring, "x1 + x2").unwrap());
    }

    #[test]
    fn reynolds_normalized_fixes_invariants() {
        let ring = Ring::new(vec!["x1", "x2"]);
        let f = Polynomial::parse(&ring, "x1 + x2").unwrap();
        let swap = Permutation(vec![1, 0]);
        let s = reynolds(&f, &[swap], true, DEFAULT_GROUP_BOUND).unwrap();
        assert_eq!(s, f);
    }

    #[test]
    fn reynolds_s3_orbit_of_square() {
        // S3 on 3 variables generated by (12) and (123)
        let ring = Ring::new(vec!["x1", "x2", "x3"]);
        let f = Polynomial::parse(&ring, "x1^2").unwrap();
        let g1 = Permutation(vec![1, 0, 2]);
        let g2 = Permutation(vec![1, 2, 0]);
        let s = reynolds(&f, &[g1, g2], false, DEFAULT_GROUP_BOUND).unwrap();
        // |S3| = 6, each square appears |G|/3 = 2 times
        assert_eq!(
            s,
            Polynomial::parse(&ring, "2*x1^2 + 2*x2^2 + 2*x3^2").unwrap()
        );
    }

    #[test]
    fn invariants_of_pendant_square_swap() {
        let x = square_with_pendant();
        let swap = Permutation(vec![2, 1, 0, 3, 4]); // x1 <-> x3
        let inv = invariant_basis(&[swap], &x, 11, DEFAULT_GROUP_BOUND).unwrap();
        let texts: Vec<String> = inv.invariants.iter().map(|(_, p)| p.to_text()).collect();
        assert_eq!(texts, vec!["x1 + x3", "x1*x3", "x2", "x4", "x5"]);
        inv.verify_invariance().unwrap();
    }

    #[test]
    fn trivial_group_gives_coordinates() {
        let x = complete(vec!["x1", "x2", "x3"]);
        let inv = invariant_basis(&[], &x, 3, DEFAULT_GROUP_BOUND).unwrap();
        assert_eq!(inv.invariants.len(), 3);
        assert!(inv
            .invariants
            .iter()
            .enumerate()
            .all(|(i, (_, p))| *p == Polynomial::var(&x.ring(), i)));
    }

    #[test]
    fn dependent_candidates_are_rejected() {
        let x = complete(vec!["x1", "x2"]);
        let ring = x.ring();
        let cands = vec![
            ("K1".to_string(), Polynomial::parse(&ring, "x1 + x2").unwrap()),
            ("K2".to_string(), Polynomial::parse(&ring, "2*x1 + 2*x2").unwrap()),
        ];
        let swap = Permutation(vec![1, 0]);
        assert!(matches!(
            InvariantSet::from_candidates(&x, cands, &[swap], 5, DEFAULT_GROUP_BOUND),
            Err(Error::RankDeficient { .. })
        ));
    }

    #[test]
    fn fold_pendant_square_into_chain() {
        let x = square_with_pendant();
        let swap = Permutation(vec![2, 1, 0, 3, 4]);
        let inv = invariant_basis(&[swap], &x, 11, DEFAULT_GROUP_BOUND).unwrap();
        let folded = fold_graph(&x, &inv, &BuchbergerConfig::default()).unwrap();
        // folded into the chain [x2, K, x4, x5] with form K*x2 + K*x4 + x4*x5
        let ring = folded.form.ring().clone();
        let expect = Polynomial::parse(&ring, "K1*x2 + K1*x4 + x4*x5").unwrap();
        assert_eq!(folded.form, expect);
        assert_eq!(folded.capacities["K1"], 2);
        assert_eq!(folded.capacities["x2"], 1);
        assert_eq!(folded.graph.edge_count(), 3);
    }

    #[test]
    fn fold_by_trivial_group_is_identity() {
        let x = square_with_pendant();
        let inv = invariant_basis(&[], &x, 11, DEFAULT_GROUP_BOUND).unwrap();
        let folded = fold_graph(&x, &inv, &BuchbergerConfig::default()).unwrap();
        // same graph up to node renaming K1..K5 <-> x1..x5
        assert_eq!(folded.graph.edge_count(), x.edge_count());
        assert!(folded.capacity_vec().iter().all(|&c| c == 1));
        assert!(folded.side_relations.is_empty());
    }
}
