//! Reduction of a polynomial binary objective to a quadratic one: fast
//! penalty substitution, and minimal-auxiliary reduction through the toric
//! ideal of the objective's variable pairs.

use std::collections::{BTreeMap, BTreeSet, BinaryHeap};
use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, normal_form, BuchbergerConfig, GroebnerBasis, Ideal};
use crate::order::MonomialOrder;
use crate::poly::{int, Coef, Polynomial};
use crate::ring::{Monomial, Ring};

/// Integer matrix whose columns record, per substitution variable, the
/// exponent vector of the monomial it represents. The first m columns are
/// the identity; the rest carry exactly two ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigMatrix {
    pub rows: usize,
    pub cols: Vec<Vec<u32>>,
}

/// The pair ideal K_A of an objective, over the mixed ring
/// [x_1..x_{m+p}] then the original variables.
#[derive(Debug, Clone)]
pub struct PairSystem {
    pub ring: Arc<Ring>,
    pub ideal: Ideal,
    pub config: ConfigMatrix,
    /// Pair k (0-based) is represented by mixed variable index m + k.
    pub pairs: Vec<(usize, usize)>,
    /// Number of original variables.
    pub m: usize,
    /// Name prefix used for substitution variables.
    pub prefix: String,
}

/// Outcome of a quadratization.
#[derive(Debug, Clone)]
pub struct Reduction {
    /// Ring of the output: original variables first, then surviving
    /// auxiliaries.
    pub ring: Arc<Ring>,
    pub quadratic: Polynomial,
    /// Auxiliary variable name -> the two variable names whose product it
    /// represents (entries may reference earlier auxiliaries).
    pub substitutions: BTreeMap<String, (String, String)>,
    pub penalty_terms: Vec<Polynomial>,
    pub aux_count: usize,
    /// False when the rewriting search ran out of budget before proving
    /// minimality.
    pub minimal: bool,
    pub m_used: Coef,
}

impl Reduction {
    /// quadratic + sum of penalties, over the output ring.
    pub fn penalized(&self) -> Polynomial {
        let mut acc = self.quadratic.clone();
        for p in &self.penalty_terms {
            acc = acc.add(p).expect("penalties share the output ring");
        }
        acc
    }
}

#[derive(Debug, Clone)]
pub struct QuadratizeOptions {
    pub a1: Coef,
    pub a2: Coef,
    pub a3: Coef,
    /// Penalty magnitude; None means 1 + sum of |coefficients|.
    pub m: Option<Coef>,
    /// State budget for the rewriting search.
    pub search_budget: usize,
    pub groebner: BuchbergerConfig,
}

impl Default for QuadratizeOptions {
    fn default() -> Self {
        QuadratizeOptions {
            a1: int(-2),
            a2: int(-2),
            a3: int(1),
            m: None,
            search_budget: 500_000,
            groebner: BuchbergerConfig::default(),
        }
    }
}

impl QuadratizeOptions {
    fn validate(&self) -> Result<()> {
        // a1 < -a3, a2 < -a3, a3 > 0; M > 0 when given
        let zero = int(0);
        let neg_a3 = -self.a3.clone();
        if !(self.a1 < neg_a3 && self.a2 < neg_a3 && self.a3 > zero) {
            return Err(Error::InvalidPenalty);
        }
        if let Some(m) = &self.m {
            if *m <= zero {
                return Err(Error::InvalidPenalty);
            }
        }
        Ok(())
    }

    fn m_for(&self, f: &Polynomial) -> Coef {
        match &self.m {
            Some(m) => m.clone(),
            None => int(1) + f.coef_abs_sum(),
        }
    }
}

/// The penalty of Eq. M*(a1(x*yi - x) + a2(x*yj - x) + a3(yi*yj - x)) on the
/// given ring, by variable index.
fn penalty_term(
    ring: &Arc<Ring>,
    x: usize,
    yi: usize,
    yj: usize,
    opts: &QuadratizeOptions,
    m: &Coef,
) -> Result<Polynomial> {
    let vx = Polynomial::var(ring, x);
    let vi = Polynomial::var(ring, yi);
    let vj = Polynomial::var(ring, yj);
    let t1 = vx.mul(&vi)?.sub(&vx)?.scale(&opts.a1);
    let t2 = vx.mul(&vj)?.sub(&vx)?.scale(&opts.a2);
    let t3 = vi.mul(&vj)?.sub(&vx)?.scale(&opts.a3);
    Ok(t1.add(&t2)?.add(&t3)?.scale(m))
}

/// Pick a substitution-variable prefix that cannot collide with the
/// original names.
fn aux_prefix(names: &[String], count: usize) -> String {
    'candidate: for prefix in ["x", "w", "t", "aux"] {
        for k in 1..=count {
            let candidate = format!("{prefix}{k}");
            if names.iter().any(|n| n == &candidate) {
                continue 'candidate;
            }
        }
        return prefix.to_string();
    }
    "sub_".to_string()
}

/// Distinct variable pairs occurring inside any monomial of `f`
/// (multilinearized), sorted lexicographically.
fn pairs_of(f: &Polynomial) -> Vec<(usize, usize)> {
    let mut pairs = BTreeSet::new();
    for (mono, _) in f.terms() {
        let support: Vec<usize> = mono.support().collect();
        for i in 0..support.len() {
            for j in (i + 1)..support.len() {
                pairs.insert((support[i], support[j]));
            }
        }
    }
    pairs.into_iter().collect()
}

/// Build the pair ideal K_A and its configuration matrix for the
/// (multilinearized) objective.
pub fn build_pair_ideal(f: &Polynomial) -> Result<PairSystem> {
    let f = f.multilinearized();
    let orig = f.ring().clone();
    let m = orig.len();
    let pairs = pairs_of(&f);
    let p = pairs.len();

    let prefix = aux_prefix(orig.vars(), m + p);
    let mut names: Vec<String> = (1..=m + p).map(|k| format!("{prefix}{k}")).collect();
    names.extend(orig.vars().iter().cloned());
    let ring = Ring::new(names);

    let nv = ring.len();
    let yvar = |i: usize| Monomial::var(nv, m + p + i);
    let xvar = |k: usize| Monomial::var(nv, k);

    let mut generators = Vec::new();
    let mut cols = Vec::new();
    for i in 0..m {
        // x_{i+1} - y_i
        let g = Polynomial::from_terms(
            &ring,
            vec![(xvar(i), int(1)), (yvar(i), int(-1))],
        );
        generators.push(g);
        let mut col = vec![0u32; m];
        col[i] = 1;
        cols.push(col);
    }
    for (k, &(a, b)) in pairs.iter().enumerate() {
        let pair_mono = yvar(a).mul(&yvar(b))?;
        let g = Polynomial::from_terms(
            &ring,
            vec![(xvar(m + k), int(1)), (pair_mono, int(-1))],
        );
        generators.push(g);
        let mut col = vec![0u32; m];
        col[a] = 1;
        col[b] = 1;
        cols.push(col);
    }

    Ok(PairSystem {
        ideal: Ideal::new(&ring, generators),
        ring,
        config: ConfigMatrix { rows: m, cols },
        pairs,
        m,
        prefix,
    })
}

// ------------------------------------------------------------------
// penalty method
// ------------------------------------------------------------------

/// Repeatedly replace the most frequent variable pair in cubic-or-higher
/// monomials by a fresh substitution variable, appending one penalty per
/// substitution, until the objective is quadratic.
pub fn penalty_quadratize(f: &Polynomial, opts: &QuadratizeOptions) -> Result<Reduction> {
    opts.validate()?;
    let f_ml = f.multilinearized();
    let m_coef = opts.m_for(&f_ml);
    let orig = f_ml.ring().clone();
    let m = orig.len();

    // upper bound on fresh variables: one per pair occurrence is plenty
    let prefix = aux_prefix(orig.vars(), m + 4 * f_ml.num_terms().max(4) + m);

    let mut names: Vec<String> = orig.vars().to_vec();
    let mut work = f_ml.clone();
    let mut substitutions: BTreeMap<String, (String, String)> = BTreeMap::new();
    let mut penalty_specs: Vec<(String, String, String)> = Vec::new();
    let mut next_index = m + 1;

    while work.total_degree() > 2 {
        // most frequent pair among monomials of degree >= 3
        let mut freq: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (mono, _) in work.terms() {
            if mono.total_degree() < 3 {
                continue;
            }
            let support: Vec<usize> = mono.support().collect();
            for i in 0..support.len() {
                for j in (i + 1)..support.len() {
                    *freq.entry((support[i], support[j])).or_insert(0) += 1;
                }
            }
        }
        let (&(a, b), _) = freq
            .iter()
            .max_by(|(pa, ca), (pb, cb)| ca.cmp(cb).then(pb.cmp(pa)))
            .expect("degree > 2 implies a pair exists");

        let ring_old = work.ring().clone();
        let name_a = ring_old.name(a).to_string();
        let name_b = ring_old.name(b).to_string();
        let aux_name = format!("{prefix}{next_index}");
        next_index += 1;

        names.push(aux_name.clone());
        let ring_new = Ring::new(names.clone());
        let aux_idx = ring_new.index_of(&aux_name)?;
        let work_new = work.into_ring(&ring_new)?;

        // replace every occurrence of the pair a*b by the fresh variable
        let ia = ring_new.index_of(&name_a)?;
        let ib = ring_new.index_of(&name_b)?;
        let mut replaced = Polynomial::zero(&ring_new);
        for (mono, coef) in work_new.terms() {
            if mono.exp(ia) >= 1 && mono.exp(ib) >= 1 {
                let mut exps = mono.exps().to_vec();
                exps[ia] -= 1;
                exps[ib] -= 1;
                exps[aux_idx] += 1;
                replaced.add_term(Monomial::from_exps(exps), coef.clone());
            } else {
                replaced.add_term(mono.clone(), coef.clone());
            }
        }
        work = replaced;
        substitutions.insert(aux_name.clone(), (name_a.clone(), name_b.clone()));
        penalty_specs.push((aux_name, name_a, name_b));
    }

    let ring = work.ring().clone();
    let quadratic = work.into_ring(&ring)?;
    let mut penalty_terms = Vec::new();
    for (x, a, b) in &penalty_specs {
        penalty_terms.push(penalty_term(
            &ring,
            ring.index_of(x)?,
            ring.index_of(a)?,
            ring.index_of(b)?,
            opts,
            &m_coef,
        )?);
    }
    let aux_count = substitutions.len();
    Ok(Reduction {
        ring,
        quadratic,
        substitutions,
        penalty_terms,
        aux_count,
        minimal: false,
        m_used: m_coef,
    })
}

// ------------------------------------------------------------------
// toric method
// ------------------------------------------------------------------

/// One degree-<=2 representation of a multilinear monomial: plain variables
/// plus substitution-pair factors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Rep {
    plain: Vec<usize>,
    pair_idx: Vec<usize>,
}

#[derive(Debug, Clone)]
struct Fiber {
    coef: Coef,
    vars: Vec<usize>,
    reps: Vec<Rep>,
    start: usize,
}

fn reps_for(vars: &[usize], pair_lookup: &BTreeMap<(usize, usize), usize>) -> Vec<Rep> {
    match vars.len() {
        0 | 1 => vec![Rep {
            plain: vars.to_vec(),
            pair_idx: vec![],
        }],
        2 => {
            let mut reps = vec![Rep {
                plain: vars.to_vec(),
                pair_idx: vec![],
            }];
            if let Some(&k) = pair_lookup.get(&(vars[0], vars[1])) {
                reps.push(Rep {
                    plain: vec![],
                    pair_idx: vec![k],
                });
            }
            reps
        }
        3 => {
            let (a, b, c) = (vars[0], vars[1], vars[2]);
            let mut reps = Vec::new();
            for (keep, pair) in [(c, (a, b)), (b, (a, c)), (a, (b, c))] {
                if let Some(&k) = pair_lookup.get(&pair) {
                    reps.push(Rep {
                        plain: vec![keep],
                        pair_idx: vec![k],
                    });
                }
            }
            reps.sort();
            reps
        }
        4 => {
            let (a, b, c, d) = (vars[0], vars[1], vars[2], vars[3]);
            let splits = [((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))];
            let mut reps = Vec::new();
            for (p1, p2) in splits {
                if let (Some(&k1), Some(&k2)) = (pair_lookup.get(&p1), pair_lookup.get(&p2)) {
                    let mut pi = vec![k1, k2];
                    pi.sort_unstable();
                    reps.push(Rep {
                        plain: vec![],
                        pair_idx: pi,
                    });
                }
            }
            reps.sort();
            reps
        }
        _ => unreachable!("fibers of degree > 4 are handled by recursion"),
    }
}

#[derive(Debug, PartialEq, Eq)]
struct SearchState {
    // reversed ordering fields so the BinaryHeap pops the smallest score
    aux: usize,
    terms: usize,
    choices: Vec<u8>,
}

impl Ord for SearchState {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other
            .aux
            .cmp(&self.aux)
            .then(other.terms.cmp(&self.terms))
            .then(other.choices.cmp(&self.choices))
    }
}

impl PartialOrd for SearchState {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

fn distinct_aux(fibers: &[Fiber], choices: &[u8]) -> usize {
    let mut set = BTreeSet::new();
    for (f, &c) in fibers.iter().zip(choices) {
        for &k in &f.reps[c as usize].pair_idx {
            set.insert(k);
        }
    }
    set.len()
}

/// Best-first search over per-monomial representations, scored by distinct
/// auxiliary count. Every move corresponds to applying a binomial of the
/// pair ideal as a rewrite. Returns (choices, minimal).
fn rewrite_search(fibers: &[Fiber], budget: usize) -> (Vec<u8>, bool) {
    let start: Vec<u8> = fibers.iter().map(|f| f.start as u8).collect();
    let mut best = start.clone();
    let mut best_score = (distinct_aux(fibers, &start), 0usize);
    let mut heap = BinaryHeap::new();
    let mut visited: BTreeSet<Vec<u8>> = BTreeSet::new();
    heap.push(SearchState {
        aux: best_score.0,
        terms: 0,
        choices: start,
    });
    let mut expanded = 0usize;
    let mut exhausted = true;
    while let Some(state) = heap.pop() {
        if !visited.insert(state.choices.clone()) {
            continue;
        }
        expanded += 1;
        if expanded > budget {
            exhausted = false;
            break;
        }
        let score = (state.aux, state.terms);
        if score < best_score || (score == best_score && state.choices < best) {
            best_score = score;
            best = state.choices.clone();
        }
        for (i, f) in fibers.iter().enumerate() {
            for c in 0..f.reps.len() as u8 {
                if c == state.choices[i] {
                    continue;
                }
                let mut next = state.choices.clone();
                next[i] = c;
                if !visited.contains(&next) {
                    let aux = distinct_aux(fibers, &next);
                    heap.push(SearchState {
                        aux,
                        terms: 0,
                        choices: next,
                    });
                }
            }
        }
    }
    (best, exhausted)
}

/// The graded-lex (substitution block first) reduced basis of K_A. Under
/// this order the normal form of the objective is the minimal mixed
/// quadratic, and the basis binomials are the rewriting system.
pub fn rewriting_basis(system: &PairSystem, config: &BuchbergerConfig) -> Result<GroebnerBasis> {
    buchberger(&system.ideal, &MonomialOrder::DegLex, config)
}

struct RoundOutcome {
    poly: Polynomial, // over a fresh ring: inputs then surviving aux
    substitutions: BTreeMap<String, (String, String)>,
    minimal: bool,
}

/// One reduction round: normal form against K_A, then rewriting search.
fn toric_round(f: &Polynomial, opts: &QuadratizeOptions, aux_counter: &mut usize) -> Result<RoundOutcome> {
    let f_ml = f.multilinearized();
    let orig = f_ml.ring().clone();
    let system = build_pair_ideal(&f_ml)?;
    let gb = rewriting_basis(&system, &opts.groebner)?;

    let mixed = system.ring.clone();
    let f_mixed = f_ml.into_ring(&mixed)?;
    let nf = normal_form(&f_mixed, &gb)?;

    let pair_lookup: BTreeMap<(usize, usize), usize> = system
        .pairs
        .iter()
        .enumerate()
        .map(|(k, &p)| (p, k))
        .collect();
    let m = system.m;
    let p = system.pairs.len();

    // decode each normal-form term into its fiber and starting representation
    let mut fibers: Vec<Fiber> = Vec::new();
    for (mono, coef) in nf.terms() {
        let mut plain: Vec<usize> = Vec::new();
        let mut pair_idx: Vec<usize> = Vec::new();
        let mut vars: BTreeSet<usize> = BTreeSet::new();
        for i in mono.support() {
            for _ in 0..mono.exp(i) {
                if i < m {
                    plain.push(i);
                    vars.insert(i);
                } else if i < m + p {
                    let k = i - m;
                    pair_idx.push(k);
                    vars.insert(system.pairs[k].0);
                    vars.insert(system.pairs[k].1);
                } else {
                    let v = i - m - p;
                    plain.push(v);
                    vars.insert(v);
                }
            }
        }
        plain.sort_unstable();
        pair_idx.sort_unstable();
        let vars: Vec<usize> = vars.into_iter().collect();
        let start_rep = Rep { plain, pair_idx };
        // fibers wider than a quartic keep their normal-form representation;
        // the next recursion round reduces them further
        let reps = if vars.len() <= 4 {
            reps_for(&vars, &pair_lookup)
        } else {
            vec![start_rep.clone()]
        };
        let start = reps
            .iter()
            .position(|r| *r == start_rep)
            .ok_or_else(|| Error::Invalid("normal form produced an unknown representation".into()))?;
        fibers.push(Fiber {
            coef: coef.clone(),
            vars,
            reps,
            start,
        });
    }
    fibers.sort_by(|a, b| a.vars.cmp(&b.vars));

    let (choices, minimal) = rewrite_search(&fibers, opts.search_budget);

    // assemble output over [original vars] + [surviving aux]
    let mut used_pairs: BTreeSet<usize> = BTreeSet::new();
    for (f, &c) in fibers.iter().zip(&choices) {
        used_pairs.extend(f.reps[c as usize].pair_idx.iter().copied());
    }
    let mut names: Vec<String> = orig.vars().to_vec();
    let mut aux_name_of: BTreeMap<usize, String> = BTreeMap::new();
    for &k in &used_pairs {
        *aux_counter += 1;
        // keep the historical x_{m+k} numbering within a round when free
        let name = format!("{}{}", system.prefix, m + k + 1);
        let name = if names.contains(&name) {
            format!("{}a{}", system.prefix, aux_counter)
        } else {
            name
        };
        aux_name_of.insert(k, name.clone());
        names.push(name);
    }
    let out_ring = Ring::new(names);
    let mut out = Polynomial::zero(&out_ring);
    for (f, &c) in fibers.iter().zip(&choices) {
        let rep = &f.reps[c as usize];
        let mut mono = Monomial::one(out_ring.len());
        for &v in &rep.plain {
            mono = mono.mul(&Monomial::var(out_ring.len(), out_ring.index_of(orig.name(v))?))?;
        }
        for &k in &rep.pair_idx {
            mono = mono.mul(&Monomial::var(
                out_ring.len(),
                out_ring.index_of(&aux_name_of[&k])?,
            ))?;
        }
        out.add_term(mono, f.coef.clone());
    }

    let mut substitutions = BTreeMap::new();
    for &k in &used_pairs {
        let (a, b) = system.pairs[k];
        substitutions.insert(
            aux_name_of[&k].clone(),
            (orig.name(a).to_string(), orig.name(b).to_string()),
        );
    }
    Ok(RoundOutcome {
        poly: out,
        substitutions,
        minimal,
    })
}

/// Minimal reduction into a quadratic via the toric rewriting system;
/// degree <= 4 is handled in one pass, higher degrees by repeated rounds.
pub fn toric_reduce(f: &Polynomial, opts: &QuadratizeOptions) -> Result<Reduction> {
    opts.validate()?;
    let f_ml = f.multilinearized();
    let m_coef = opts.m_for(&f_ml);

    let mut work = f_ml.clone();
    let mut substitutions: BTreeMap<String, (String, String)> = BTreeMap::new();
    let mut minimal = true;
    let mut aux_counter = 0usize;
    while work.total_degree() > 2 {
        let round = toric_round(&work, opts, &mut aux_counter)?;
        for (k, v) in round.substitutions {
            substitutions.insert(k, v);
        }
        minimal = minimal && round.minimal;
        work = round.poly;
    }

    // drop substitutions that no longer appear (later rounds may rewrite
    // earlier auxiliaries away)
    let ring = work.ring().clone();
    let live: BTreeSet<String> = closure_of_live_aux(&work, &substitutions);
    substitutions.retain(|k, _| live.contains(k));

    // output ring: original variables plus live auxiliaries, then penalties
    let mut penalty_terms = Vec::new();
    for (x, (a, b)) in &substitutions {
        penalty_terms.push(penalty_term(
            &ring,
            ring.index_of(x)?,
            ring.index_of(a)?,
            ring.index_of(b)?,
            opts,
            &m_coef,
        )?);
    }
    let aux_count = substitutions.len();
    Ok(Reduction {
        ring,
        quadratic: work,
        substitutions,
        penalty_terms,
        aux_count,
        minimal,
        m_used: m_coef,
    })
}

/// Auxiliaries reachable from the quadratic through substitution
/// definitions (an aux used only inside another aux's definition is live).
fn closure_of_live_aux(
    quadratic: &Polynomial,
    substitutions: &BTreeMap<String, (String, String)>,
) -> BTreeSet<String> {
    let ring = quadratic.ring();
    let mut live: BTreeSet<String> = quadratic
        .support()
        .into_iter()
        .map(|i| ring.name(i).to_string())
        .filter(|n| substitutions.contains_key(n))
        .collect();
    loop {
        let mut grew = false;
        for name in live.clone() {
            if let Some((a, b)) = substitutions.get(&name) {
                for dep in [a, b] {
                    if substitutions.contains_key(dep) && live.insert(dep.clone()) {
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            return live;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> QuadratizeOptions {
        QuadratizeOptions::default()
    }

    /// Brute-force minimizers of a polynomial over the binary cube, as
    /// bitmask set plus the minimum value.
    pub(crate) fn brute_minima(f: &Polynomial) -> (Vec<u64>, Coef) {
        let n = f.ring().len();
        assert!(n <= 24);
        let mut best: Option<Coef> = None;
        let mut arg = Vec::new();
        for bits in 0u64..(1 << n) {
            let point: Vec<Coef> = (0..n)
                .map(|i| int(((bits >> i) & 1) as i64))
                .collect();
            let v = f.eval(&point).unwrap();
            match &best {
                None => {
                    best = Some(v);
                    arg = vec![bits];
                }
                Some(b) => {
                    if v < *b {
                        best = Some(v);
                        arg = vec![bits];
                    } else if v == *b {
                        arg.push(bits);
                    }
                }
            }
        }
        (arg, best.unwrap())
    }

    /// Argmin projections of the penalized reduction onto the original
    /// variables must equal the argmin set of f.
    pub(crate) fn check_minima_preserved(f: &Polynomial, red: &Reduction) {
        let (f_arg, f_min) = brute_minima(f);
        let total = red.penalized();
        let (t_arg, t_min) = brute_minima(&total);
        assert_eq!(f_min, t_min, "minimum value must be preserved");
        // project each total argmin onto the original variables
        let orig_n = f.ring().len();
        let proj: BTreeSet<u64> = t_arg
            .iter()
            .map(|bits| {
                let mut out = 0u64;
                for i in 0..orig_n {
                    let j = red.ring.index_of(f.ring().name(i)).unwrap();
                    out |= ((bits >> j) & 1) << i;
                }
                out
            })
            .collect();
        let expect: BTreeSet<u64> = f_arg.into_iter().collect();
        assert_eq!(proj, expect, "argmin projection must match");
        // at every global minimizer each substitution holds
        for bits in &t_arg {
            for (x, (a, b)) in &red.substitutions {
                let ix = red.ring.index_of(x).unwrap();
                let ia = red.ring.index_of(a).unwrap();
                let ib = red.ring.index_of(b).unwrap();
                let vx = (bits >> ix) & 1;
                let va = (bits >> ia) & 1;
                let vb = (bits >> ib) & 1;
                assert_eq!(vx, va & vb, "substitution {x} must hold at minimizers");
            }
        }
    }

    #[test]
    fn already_quadratic_is_untouched() {
        let r = Ring::new(vec!["y1", "y2"]);
        let f = Polynomial::parse(&r, "y1*y2 - 3*y1").unwrap();
        for red in [
            penalty_quadratize(&f, &opts()).unwrap(),
            toric_reduce(&f, &opts()).unwrap(),
        ] {
            assert_eq!(red.aux_count, 0);
            assert!(red.penalty_terms.is_empty());
            assert_eq!(red.quadratic.to_text(), f.to_text());
        }
    }

    #[test]
    fn penalty_triple_product() {
        let r = Ring::new(vec!["y1", "y2", "y3"]);
        let f = Polynomial::parse(&r, "y1*y2*y3").unwrap();
        let red = penalty_quadratize(&f, &opts()).unwrap();
        assert_eq!(red.aux_count, 1);
        assert_eq!(
            red.substitutions.get("x4"),
            Some(&("y1".to_string(), "y2".to_string()))
        );
        // M = 1 + 1 = 2; penalty = M*(y1*y2 - 2*x4*y1 - 2*x4*y2 + 3*x4)
        let expect = Polynomial::parse(
            &red.ring,
            "2*y1*y2 - 4*x4*y1 - 4*x4*y2 + 6*x4",
        )
        .unwrap();
        assert_eq!(red.penalty_terms, vec![expect]);
        check_minima_preserved(&f, &red);
    }

    #[test]
    fn penalty_constraint_validation() {
        let r = Ring::new(vec!["y1", "y2", "y3"]);
        let f = Polynomial::parse(&r, "y1*y2*y3").unwrap();
        let mut bad = opts();
        bad.a3 = int(-1);
        assert!(matches!(
            penalty_quadratize(&f, &bad),
            Err(Error::InvalidPenalty)
        ));
        let mut bad_m = opts();
        bad_m.m = Some(int(0));
        assert!(matches!(
            penalty_quadratize(&f, &bad_m),
            Err(Error::InvalidPenalty)
        ));
    }

    #[test]
    fn pair_ideal_single_pair() {
        let r = Ring::new(vec!["y1", "y2"]);
        let f = Polynomial::parse(&r, "y1*y2").unwrap();
        let sys = build_pair_ideal(&f).unwrap();
        assert_eq!(sys.ideal.generators.len(), 3);
        assert_eq!(sys.config.cols, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        let expect: Vec<Polynomial> = ["x1 - y1", "x2 - y2", "x3 - y1*y2"]
            .iter()
            .map(|t| Polynomial::parse(&sys.ring, t).unwrap())
            .collect();
        assert_eq!(sys.ideal.generators, expect);
    }

    #[test]
    fn pair_ideal_linear_objective() {
        let r = Ring::new(vec!["y1", "y2"]);
        let f = Polynomial::parse(&r, "y1 + y2").unwrap();
        let sys = build_pair_ideal(&f).unwrap();
        assert_eq!(sys.ideal.generators.len(), 2);
        assert_eq!(sys.pairs.len(), 0);
    }

    #[test]
    fn toric_shares_one_auxiliary() {
        let r = Ring::new(vec!["y1", "y2", "y3", "y4"]);
        let f = Polynomial::parse(&r, "y1*y2*y3 + y1*y2*y4").unwrap();
        let red = toric_reduce(&f, &opts()).unwrap();
        assert!(red.minimal);
        assert_eq!(red.aux_count, 1, "single auxiliary x = y1*y2 suffices");
        let (x, (a, b)) = red.substitutions.iter().next().unwrap();
        assert_eq!((a.as_str(), b.as_str()), ("y1", "y2"));
        let expect = Polynomial::parse(&red.ring, &format!("{x}*y3 + {x}*y4")).unwrap();
        assert_eq!(red.quadratic, expect);
        check_minima_preserved(&f, &red);
    }

    #[test]
    fn toric_beats_or_ties_penalty() {
        let r = Ring::new(vec!["y1", "y2", "y3", "y4"]);
        for text in [
            "y1*y2*y3 + y2*y3*y4",
            "y1*y2*y3*y4",
            "y1*y2*y3 + y1*y2*y4 + y1*y3*y4",
        ] {
            let f = Polynomial::parse(&r, text).unwrap();
            let t = toric_reduce(&f, &opts()).unwrap();
            let p = penalty_quadratize(&f, &opts()).unwrap();
            assert!(t.aux_count <= p.aux_count, "{text}");
            check_minima_preserved(&f, &t);
            check_minima_preserved(&f, &p);
        }
    }

    #[test]
    fn quartic_single_monomial() {
        let r = Ring::new(vec!["y1", "y2", "y3", "y4"]);
        let f = Polynomial::parse(&r, "y1*y2*y3*y4").unwrap();
        let red = toric_reduce(&f, &opts()).unwrap();
        assert_eq!(red.aux_count, 2);
        assert_eq!(red.quadratic.total_degree(), 2);
        check_minima_preserved(&f, &red);
    }

    #[test]
    fn quintic_recursion_terminates() {
        let r = Ring::new(vec!["y1", "y2", "y3", "y4", "y5"]);
        let f = Polynomial::parse(&r, "y1*y2*y3*y4*y5 + y1*y2").unwrap();
        let red = toric_reduce(&f, &opts()).unwrap();
        assert!(red.quadratic.total_degree() <= 2);
        check_minima_preserved(&f, &red);
    }

    #[test]
    fn multilinearization_applies_first() {
        let r = Ring::new(vec!["y1", "y2"]);
        let f = Polynomial::parse(&r, "y1^2*y2 + y1").unwrap();
        let red = toric_reduce(&f, &opts()).unwrap();
        assert_eq!(red.aux_count, 0);
        assert_eq!(red.quadratic, Polynomial::parse(&red.ring, "y1*y2 + y1").unwrap());
    }

    /// Minimal auxiliary count by brute force over substitution subsets.
    fn brute_min_aux(f: &Polynomial) -> usize {
        let f = f.multilinearized();
        let pairs = pairs_of(&f);
        let monos: Vec<Vec<usize>> = f
            .terms()
            .filter(|(m, _)| m.total_degree() >= 3)
            .map(|(m, _)| m.support().collect())
            .collect();
        if monos.is_empty() {
            return 0;
        }
        for size in 0..=pairs.len() {
            for subset in subsets_of_size(pairs.len(), size) {
                let chosen: Vec<(usize, usize)> =
                    subset.iter().map(|&k| pairs[k]).collect();
                if monos.iter().all(|mv| coverable(mv, &chosen)) {
                    return size;
                }
            }
        }
        unreachable!("full pair set always covers");
    }

    fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut cur, &mut out);
        out
    }

    fn coverable(mono: &[usize], chosen: &[(usize, usize)]) -> bool {
        match mono.len() {
            3 => chosen.iter().any(|&(a, b)| mono.contains(&a) && mono.contains(&b)),
            4 => {
                let (a, b, c, d) = (mono[0], mono[1], mono[2], mono[3]);
                [((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))]
                    .iter()
                    .any(|(p1, p2)| chosen.contains(p1) && chosen.contains(p2))
            }
            _ => false,
        }
    }

    #[test]
    fn toric_aux_count_is_globally_minimal_on_small_inputs() {
        let r = Ring::new(vec!["y1", "y2", "y3", "y4", "y5", "y6"]);
        for text in [
            "y1*y2*y3 + y3*y4*y5 + y1*y5*y6",
            "y1*y2*y3 + y2*y3*y4 + y3*y4*y5 + y4*y5*y6",
            "y1*y2*y3*y4 + y3*y4*y5*y6",
            "y1*y2*y3 + y4*y5*y6",
        ] {
            let f = Polynomial::parse(&r, text).unwrap();
            let red = toric_reduce(&f, &opts()).unwrap();
            assert!(red.minimal, "{text}");
            assert_eq!(red.aux_count, brute_min_aux(&f), "{text}");
        }
    }

    #[test]
    fn rewrite_moves_are_ideal_members() {
        // every alternative representation of a monomial differs from the
        // chosen one by an element of K_A
        let r = Ring::new(vec!["y1", "y2", "y3"]);
        let f = Polynomial::parse(&r, "y1*y2*y3").unwrap();
        let sys = build_pair_ideal(&f).unwrap();
        let gb = rewriting_basis(&sys, &BuchbergerConfig::default()).unwrap();
        let ring = &sys.ring;
        // y1*x(23) - y2*x(13), etc: pairs are (0,1)=x4, (0,2)=x5, (1,2)=x6
        for (a, b) in [("y1", "x6"), ("y2", "x5"), ("y3", "x4")] {
            for (c, d) in [("y1", "x6"), ("y2", "x5"), ("y3", "x4")] {
                let pa = Polynomial::var_named(ring, a)
                    .unwrap()
                    .mul(&Polynomial::var_named(ring, b).unwrap())
                    .unwrap();
                let pb = Polynomial::var_named(ring, c)
                    .unwrap()
                    .mul(&Polynomial::var_named(ring, d).unwrap())
                    .unwrap();
                let diff = pa.sub(&pb).unwrap();
                assert!(crate::groebner::in_ideal(&diff, &gb).unwrap());
            }
        }
    }
}
