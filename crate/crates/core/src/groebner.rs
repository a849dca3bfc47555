//! Buchberger engine: reduced Groebner bases, normal forms, elimination,
//! staircase counting and enumeration of zero-dimensional binary varieties.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::order::MonomialOrder;
use crate::poly::{Coef, Polynomial};
use crate::ring::{Monomial, Ring};

/// A generating set; no canonical form implied.
#[derive(Debug, Clone)]
pub struct Ideal {
    pub ring: Arc<Ring>,
    pub generators: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ring: &Arc<Ring>, generators: Vec<Polynomial>) -> Ideal {
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal {
            ring: ring.clone(),
            generators,
        }
    }
}

/// A reduced Groebner basis together with the order it was computed under.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    pub ring: Arc<Ring>,
    pub order: MonomialOrder,
    pub elements: Vec<Polynomial>,
    pub reduced: bool,
}

impl GroebnerBasis {
    pub fn contains_one(&self) -> bool {
        self.elements.len() == 1 && self.elements[0] == Polynomial::one(&self.ring)
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|p| p.leading_term(&self.order).expect("basis elements are nonzero").0)
            .collect()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct BuchbergerConfig {
    /// Cap on generated S-pairs; exceeding it is an explicit error.
    pub pair_budget: usize,
}

impl Default for BuchbergerConfig {
    fn default() -> Self {
        BuchbergerConfig {
            pair_budget: 1_000_000,
        }
    }
}

// ------------------------------------------------------------------
// ordered working representation
// ------------------------------------------------------------------

/// Terms sorted descending in the active order; index 0 is the leading term.
#[derive(Debug, Clone)]
struct OrdPoly {
    terms: Vec<(Monomial, Coef)>,
}

impl OrdPoly {
    fn from_poly(p: &Polynomial, ord: &MonomialOrder) -> OrdPoly {
        OrdPoly {
            terms: p.sorted_terms(ord),
        }
    }

    fn to_poly(&self, ring: &Arc<Ring>) -> Polynomial {
        Polynomial::from_terms(ring, self.terms.clone())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn lc(&self) -> &Coef {
        &self.terms[0].1
    }

    fn make_monic(&mut self) {
        let lc = self.lc().clone();
        if !lc.is_one() {
            for (_, c) in self.terms.iter_mut() {
                *c /= &lc;
            }
        }
    }
}

/// out = a - coef * m * b, keeping the descending term order (merge).
fn sub_mul(a: &OrdPoly, coef: &Coef, m: &Monomial, b: &OrdPoly, ord: &MonomialOrder) -> OrdPoly {
    let mut shifted: Vec<(Monomial, Coef)> = Vec::with_capacity(b.terms.len());
    for (bm, bc) in &b.terms {
        shifted.push((bm.mul(m).expect("exponent overflow"), -(bc * coef)));
    }
    // merge two sorted-descending term lists
    let mut out = Vec::with_capacity(a.terms.len() + shifted.len());
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.terms.len() && j < shifted.len() {
        match ord.cmp_unchecked(&a.terms[i].0, &shifted[j].0) {
            std::cmp::Ordering::Greater => {
                out.push(a.terms[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Less => {
                out.push(shifted[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = &a.terms[i].1 + &shifted[j].1;
                if !c.is_zero() {
                    out.push((a.terms[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a.terms[i..]);
    out.extend_from_slice(&shifted[j..]);
    OrdPoly { terms: out }
}

/// Full normal form of `f` against `basis`: no term of the result is
/// divisible by any basis leading monomial.
fn reduce_full(f: &OrdPoly, basis: &[OrdPoly], ord: &MonomialOrder) -> OrdPoly {
    let mut work = f.clone();
    let mut done: Vec<(Monomial, Coef)> = Vec::new();
    'outer: while !work.is_zero() {
        let (m, c) = work.terms[0].clone();
        for g in basis {
            if g.is_zero() {
                continue;
            }
            if g.lm().divides(&m) {
                let q = g.lm().div_into(&m);
                let coef = &c / g.lc();
                work = sub_mul(&work, &coef, &q, g, ord);
                continue 'outer;
            }
        }
        // head term irreducible: move it out
        done.push((m, c));
        work.terms.remove(0);
    }
    OrdPoly { terms: done }
}

fn s_poly(f: &OrdPoly, g: &OrdPoly, ord: &MonomialOrder) -> OrdPoly {
    let lcm = f.lm().lcm(g.lm());
    let mf = f.lm().div_into(&lcm);
    let mg = g.lm().div_into(&lcm);
    // (lcm/lm(f)) * f / lc(f): shifting by a fixed monomial preserves the
    // descending order because the order is multiplicative
    let lc_f = f.lc().clone();
    let lhs = OrdPoly {
        terms: f
            .terms
            .iter()
            .map(|(m, c)| (m.mul(&mf).expect("exponent overflow"), c / &lc_f))
            .collect(),
    };
    let coef = Coef::one() / g.lc();
    sub_mul(&lhs, &coef, &mg, g, ord)
}

/// Compute the reduced Groebner basis of `ideal` under `ord`.
pub fn buchberger(
    ideal: &Ideal,
    ord: &MonomialOrder,
    config: &BuchbergerConfig,
) -> Result<GroebnerBasis> {
    ord.validate(&ideal.ring)?;
    let mut basis: Vec<OrdPoly> = Vec::new();
    for g in &ideal.generators {
        let op = OrdPoly::from_poly(g, ord);
        if !op.is_zero() {
            basis.push(op);
        }
    }
    if basis.is_empty() {
        return Err(Error::Invalid("empty generator list".into()));
    }

    // interreduce the inputs first; keeps pair counts down
    basis = interreduce(basis, ord);

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut generated: usize = 0;
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pairs.push((i, j));
            generated += 1;
        }
    }
    if generated > config.pair_budget {
        return Err(Error::BudgetExceeded(config.pair_budget));
    }

    let mut processed: std::collections::BTreeSet<(usize, usize)> = std::collections::BTreeSet::new();
    while !pairs.is_empty() {
        // normal strategy: minimal lcm in the active order
        let mut best = 0usize;
        let mut best_lcm = basis[pairs[0].0].lm().lcm(basis[pairs[0].1].lm());
        for (idx, (i, j)) in pairs.iter().enumerate().skip(1) {
            let l = basis[*i].lm().lcm(basis[*j].lm());
            if ord.cmp_unchecked(&l, &best_lcm) == std::cmp::Ordering::Less {
                best_lcm = l;
                best = idx;
            }
        }
        let (i, j) = pairs.swap_remove(best);
        processed.insert((i.min(j), i.max(j)));

        // product criterion
        if basis[i].lm().gcd_is_one(basis[j].lm()) {
            continue;
        }
        // chain criterion
        let lcm_ij = basis[i].lm().lcm(basis[j].lm());
        let mut skip = false;
        for (k, g) in basis.iter().enumerate() {
            if k == i || k == j || g.is_zero() {
                continue;
            }
            if g.lm().divides(&lcm_ij)
                && processed.contains(&(i.min(k), i.max(k)))
                && processed.contains(&(j.min(k), j.max(k)))
            {
                skip = true;
                break;
            }
        }
        if skip {
            continue;
        }

        let s = s_poly(&basis[i], &basis[j], ord);
        let r = reduce_full(&s, &basis, ord);
        if r.is_zero() {
            continue;
        }
        let new_idx = basis.len();
        basis.push(r);
        for k in 0..new_idx {
            if !basis[k].is_zero() {
                pairs.push((k, new_idx));
                generated += 1;
                if generated > config.pair_budget {
                    return Err(Error::BudgetExceeded(config.pair_budget));
                }
            }
        }
    }

    // minimalize and tail-reduce to the canonical reduced basis
    let mut reduced = interreduce(basis, ord);
    // canonical listing: ascending leading monomials
    reduced.sort_by(|a, b| ord.cmp_unchecked(a.lm(), b.lm()));

    Ok(GroebnerBasis {
        ring: ideal.ring.clone(),
        order: ord.clone(),
        elements: reduced.iter().map(|p| p.to_poly(&ideal.ring)).collect(),
        reduced: true,
    })
}

/// Replace every element by its normal form against the others until the set
/// is stable; drops elements that reduce to zero. Replacing one element at a
/// time keeps the generated ideal unchanged, and the result is fully
/// interreduced and monic.
fn interreduce(mut basis: Vec<OrdPoly>, ord: &MonomialOrder) -> Vec<OrdPoly> {
    basis.retain(|p| !p.is_zero());
    loop {
        basis.sort_by(|a, b| ord.cmp_unchecked(a.lm(), b.lm()));
        let mut changed = false;
        let mut i = 0;
        while i < basis.len() {
            let g = basis[i].clone();
            let others: Vec<OrdPoly> = basis
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i)
                .map(|(_, p)| p.clone())
                .collect();
            let r = reduce_full(&g, &others, ord);
            if r.terms != g.terms {
                changed = true;
                if r.is_zero() {
                    basis.remove(i);
                    continue;
                }
                basis[i] = r;
            }
            i += 1;
        }
        if !changed {
            for p in basis.iter_mut() {
                p.make_monic();
            }
            basis.sort_by(|a, b| ord.cmp_unchecked(a.lm(), b.lm()));
            return basis;
        }
    }
}

/// Canonical remainder of `f` modulo the ideal represented by `gb`.
pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    if f.ring() != &gb.ring {
        return Err(Error::RingMismatch);
    }
    let basis: Vec<OrdPoly> = gb
        .elements
        .iter()
        .map(|p| OrdPoly::from_poly(p, &gb.order))
        .collect();
    let r = reduce_full(&OrdPoly::from_poly(f, &gb.order), &basis, &gb.order);
    Ok(r.to_poly(&gb.ring))
}

/// Ideal membership via normal form.
pub fn in_ideal(f: &Polynomial, gb: &GroebnerBasis) -> Result<bool> {
    Ok(normal_form(f, gb)?.is_zero())
}

/// Intersection with the subring generated by `keep_vars` (by ring index).
/// Requires an order that eliminates the complement (lex prefix, or leading
/// block(s) exactly covering the dropped variables).
pub fn eliminate(gb: &GroebnerBasis, keep_vars: &[usize]) -> Result<GroebnerBasis> {
    let n = gb.ring.len();
    let mut keep = vec![false; n];
    for &i in keep_vars {
        keep[i] = true;
    }
    let dropped: Vec<usize> = (0..n).filter(|i| !keep[*i]).collect();
    let ok = match &gb.order {
        MonomialOrder::Lex => {
            // kept variables must form a suffix of the ring order
            let first_kept = (0..n).find(|i| keep[*i]).unwrap_or(n);
            (first_kept..n).all(|i| keep[i])
        }
        MonomialOrder::Block(blocks) => {
            // dropped variables must be exactly the union of leading blocks
            let mut acc: Vec<usize> = Vec::new();
            let mut valid = false;
            if dropped.is_empty() {
                valid = true;
            }
            for b in blocks {
                acc.extend(b.vars.iter().copied());
                let mut a = acc.clone();
                a.sort_unstable();
                let mut d = dropped.clone();
                d.sort_unstable();
                if a == d {
                    valid = true;
                    break;
                }
            }
            valid
        }
        _ => dropped.is_empty(),
    };
    if !ok {
        let names = dropped.iter().map(|&i| gb.ring.name(i).to_string()).collect();
        return Err(Error::NotEliminationBlock(names));
    }
    let elements: Vec<Polynomial> = gb
        .elements
        .iter()
        .filter(|p| p.supported_on(&keep))
        .cloned()
        .collect();
    Ok(GroebnerBasis {
        ring: gb.ring.clone(),
        order: gb.order.clone(),
        elements,
        reduced: true,
    })
}

// ------------------------------------------------------------------
// staircase counting
// ------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StandardCount {
    Finite(u128),
    Infinite,
}

#[derive(Debug, Clone)]
pub struct StaircaseReport {
    pub standard_monomial_count: StandardCount,
    pub leading_terms: Vec<Monomial>,
}

/// Count monomials under the staircase (not divisible by any leading term).
/// Infinite exactly when some variable has no pure power among the leading
/// terms.
pub fn staircase_count(gb: &GroebnerBasis) -> StaircaseReport {
    let lts = gb.leading_monomials();
    if lts.iter().any(|m| m.is_one()) {
        return StaircaseReport {
            standard_monomial_count: StandardCount::Finite(0),
            leading_terms: lts,
        };
    }
    let n = gb.ring.len();
    // pure power bound per variable
    let mut bound = vec![None::<u32>; n];
    for m in &lts {
        let mut support = m.support();
        if let (Some(i), None) = (support.next(), support.next()) {
            let e = m.exp(i);
            bound[i] = Some(bound[i].map_or(e, |b: u32| b.min(e)));
        }
    }
    if bound.iter().any(|b| b.is_none()) {
        return StaircaseReport {
            standard_monomial_count: StandardCount::Infinite,
            leading_terms: lts,
        };
    }
    let bound: Vec<u32> = bound.into_iter().map(Option::unwrap).collect();

    fn count_rec(var: usize, bound: &[u32], lts: &[Monomial]) -> u128 {
        if lts.iter().any(|m| m.is_one()) {
            return 0;
        }
        if var == bound.len() {
            return 1;
        }
        let mut total: u128 = 0;
        for e in 0..bound[var] {
            // leading terms still relevant for monomials with exponent e at `var`
            let filtered: Vec<Monomial> = lts
                .iter()
                .filter(|m| m.exp(var) <= e)
                .map(|m| {
                    let mut exps = m.exps().to_vec();
                    exps[var] = 0;
                    Monomial::from_exps(exps)
                })
                .collect();
            // keep minimal elements only
            let mut minimal: Vec<Monomial> = Vec::new();
            for m in filtered {
                if minimal.iter().any(|x| x.divides(&m)) {
                    continue;
                }
                minimal.retain(|x| !m.divides(x));
                minimal.push(m);
            }
            total = total.saturating_add(count_rec(var + 1, bound, &minimal));
        }
        total
    }

    let count = count_rec(0, &bound, &lts);
    StaircaseReport {
        standard_monomial_count: StandardCount::Finite(count),
        leading_terms: lts,
    }
}

// ------------------------------------------------------------------
// binary variety enumeration
// ------------------------------------------------------------------

/// All common zeros over the binary cube, for ideals containing v^2 - v for
/// every enumerated variable. Points come back in ascending ring order
/// (variable 0 is the most significant coordinate).
pub fn enumerate_binary_variety(gb: &GroebnerBasis, vars: &[usize]) -> Result<Vec<Vec<u8>>> {
    // precondition: each variable carries its field equation
    for &v in vars {
        let ring = &gb.ring;
        let x = Polynomial::var(ring, v);
        let field = x.mul(&x)?.sub(&x)?;
        if !in_ideal(&field, gb)? {
            return Err(Error::NotBinaryClosed(ring.name(v).to_string()));
        }
    }
    if gb.contains_one() {
        return Ok(Vec::new());
    }
    let polys: Vec<Polynomial> = gb.elements.clone();
    let mut out = Vec::new();
    let mut assign: BTreeMap<usize, Polynomial> = BTreeMap::new();
    let mut point = vec![0u8; vars.len()];
    dfs(gb, &polys, vars, 0, &mut assign, &mut point, &mut out)?;
    Ok(out)
}

fn dfs(
    gb: &GroebnerBasis,
    polys: &[Polynomial],
    vars: &[usize],
    depth: usize,
    assign: &mut BTreeMap<usize, Polynomial>,
    point: &mut Vec<u8>,
    out: &mut Vec<Vec<u8>>,
) -> Result<()> {
    if depth == vars.len() {
        // all enumerated variables fixed; every polynomial must vanish
        for p in polys {
            let s = p.substitute(assign)?;
            if !s.is_zero() {
                return Ok(());
            }
        }
        out.push(point.clone());
        return Ok(());
    }
    let v = vars[depth];
    for bit in [0u8, 1u8] {
        let ring = &gb.ring;
        let val = Polynomial::constant(ring, crate::poly::int(bit as i64));
        assign.insert(v, val);
        point[depth] = bit;
        // prune: any polynomial that has become a nonzero constant rules this
        // branch out
        let mut feasible = true;
        for p in polys {
            let s = p.substitute(assign)?;
            if !s.is_zero() && s.num_terms() == 1 && s.total_degree() == 0 {
                feasible = false;
                break;
            }
            // fully-assigned polynomials must vanish
            if !s.is_zero() && s.support().iter().all(|i| assign.contains_key(i)) {
                feasible = false;
                break;
            }
        }
        if feasible {
            dfs(gb, polys, vars, depth + 1, assign, point, out)?;
        }
        assign.remove(&v);
    }
    Ok(())
}

// ------------------------------------------------------------------
// independent verifier
// ------------------------------------------------------------------

/// Check the four reduced-basis properties plus S-polynomial reduction,
/// using only the public polynomial operations.
pub fn verify_reduced_basis(gb: &GroebnerBasis) -> Result<()> {
    let ord = &gb.order;
    let lts: Vec<(Monomial, Coef)> = gb
        .elements
        .iter()
        .map(|p| p.leading_term(ord))
        .collect::<Result<_>>()?;
    for (i, (lm, lc)) in lts.iter().enumerate() {
        if !lc.is_one() {
            return Err(Error::Invalid(format!("element {i} is not monic")));
        }
        // minimal generation: no other leading term divides this one
        for (j, (other, _)) in lts.iter().enumerate() {
            if i != j && other.divides(lm) {
                return Err(Error::Invalid(format!(
                    "leading term of element {i} is divisible by element {j}"
                )));
            }
        }
        // no trailing term divisible by any leading term
        for (m, _) in gb.elements[i].terms() {
            if m == lm {
                continue;
            }
            if lts.iter().any(|(l, _)| l.divides(m)) {
                return Err(Error::Invalid(format!(
                    "element {i} has a reducible trailing term"
                )));
            }
        }
    }
    // every S-polynomial reduces to zero
    for i in 0..gb.elements.len() {
        for j in (i + 1)..gb.elements.len() {
            let f = OrdPoly::from_poly(&gb.elements[i], ord);
            let g = OrdPoly::from_poly(&gb.elements[j], ord);
            let s = s_poly(&f, &g, ord);
            let basis: Vec<OrdPoly> = gb
                .elements
                .iter()
                .map(|p| OrdPoly::from_poly(p, ord))
                .collect();
            let r = reduce_full(&s, &basis, ord);
            if !r.is_zero() {
                return Err(Error::Invalid(format!(
                    "S-polynomial of ({i},{j}) does not reduce to zero"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn gb_of(ring: &Arc<Ring>, gens: &[&str], ord: MonomialOrder) -> GroebnerBasis {
        let gens: Vec<Polynomial> = gens.iter().map(|s| Polynomial::parse(ring, s).unwrap()).collect();
        buchberger(&Ideal::new(ring, gens), &ord, &BuchbergerConfig::default()).unwrap()
    }

    #[test]
    fn already_reduced_is_kept() {
        let r = Ring::new(vec!["x"]);
        let gb = gb_of(&r, &["x^2 - x"], MonomialOrder::Lex);
        assert_eq!(gb.elements, vec![Polynomial::parse(&r, "x^2 - x").unwrap()]);
        verify_reduced_basis(&gb).unwrap();
    }

    #[test]
    fn linear_system_solves() {
        let r = Ring::new(vec!["x", "y"]);
        let gb = gb_of(&r, &["x - y", "y - 1"], MonomialOrder::Lex);
        let expect: Vec<Polynomial> = vec![
            Polynomial::parse(&r, "y - 1").unwrap(),
            Polynomial::parse(&r, "x - 1").unwrap(),
        ];
        let mut got = gb.elements.clone();
        got.sort_by_key(|p| p.to_text());
        let mut want = expect;
        want.sort_by_key(|p| p.to_text());
        assert_eq!(got, want);
        verify_reduced_basis(&gb).unwrap();
    }

    #[test]
    fn normal_form_single_division() {
        let r = Ring::new(vec!["x"]);
        let gb = gb_of(&r, &["x^2 - x"], MonomialOrder::Lex);
        let nf = normal_form(&Polynomial::parse(&r, "x^2").unwrap(), &gb).unwrap();
        assert_eq!(nf, Polynomial::parse(&r, "x").unwrap());
    }

    #[test]
    fn membership_of_generators() {
        let r = Ring::new(vec!["x", "y"]);
        let gens = ["x^2 - y", "x*y - 1"];
        let gb = gb_of(&r, &gens, MonomialOrder::GrevLex);
        for g in gens {
            assert!(in_ideal(&Polynomial::parse(&r, g).unwrap(), &gb).unwrap());
        }
        verify_reduced_basis(&gb).unwrap();
    }

    #[test]
    fn elimination_on_lex_basis() {
        let r = Ring::new(vec!["x", "y"]);
        let gb = gb_of(&r, &["x - y^2", "y - 1"], MonomialOrder::Lex);
        let elim = eliminate(&gb, &[1]).unwrap();
        assert_eq!(elim.elements, vec![Polynomial::parse(&r, "y - 1").unwrap()]);
        // keeping everything returns the basis unchanged
        let all = eliminate(&gb, &[0, 1]).unwrap();
        assert_eq!(all.elements.len(), gb.elements.len());
    }

    #[test]
    fn elimination_requires_suffix() {
        let r = Ring::new(vec!["x", "y"]);
        let gb = gb_of(&r, &["x - y^2", "y - 1"], MonomialOrder::Lex);
        assert!(matches!(
            eliminate(&gb, &[0]),
            Err(Error::NotEliminationBlock(_))
        ));
    }

    #[test]
    fn staircase_binary_square() {
        let r = Ring::new(vec!["x", "y"]);
        let gb = gb_of(&r, &["x^2 - x", "y^2 - y"], MonomialOrder::GrevLex);
        let rep = staircase_count(&gb);
        assert_eq!(rep.standard_monomial_count, StandardCount::Finite(4));
    }

    #[test]
    fn staircase_infinite_axis() {
        let r = Ring::new(vec!["x", "y"]);
        let gb = gb_of(&r, &["x"], MonomialOrder::GrevLex);
        let rep = staircase_count(&gb);
        assert_eq!(rep.standard_monomial_count, StandardCount::Infinite);
    }

    #[test]
    fn enumerate_small_binary_variety() {
        let r = Ring::new(vec!["x", "y"]);
        let gb = gb_of(&r, &["x^2 - x", "y^2 - y", "x*y"], MonomialOrder::GrevLex);
        let pts = enumerate_binary_variety(&gb, &[0, 1]).unwrap();
        assert_eq!(pts, vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn enumerate_inconsistent_is_empty() {
        let r = Ring::new(vec!["x"]);
        let gb = gb_of(&r, &["x^2 - x", "x - 1", "x"], MonomialOrder::Lex);
        assert!(gb.contains_one());
        assert!(enumerate_binary_variety(&gb, &[0]).unwrap().is_empty());
    }

    #[test]
    fn enumerate_with_substitution() {
        let r = Ring::new(vec!["x", "y"]);
        let gb = gb_of(&r, &["x - 1", "y^2 - y", "x^2 - x"], MonomialOrder::Lex);
        let pts = enumerate_binary_variety(&gb, &[0, 1]).unwrap();
        assert_eq!(pts, vec![vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn not_binary_closed_is_detected() {
        let r = Ring::new(vec!["x", "y"]);
        let gb = gb_of(&r, &["x^2 - x"], MonomialOrder::GrevLex);
        assert!(matches!(
            enumerate_binary_variety(&gb, &[0, 1]),
            Err(Error::NotBinaryClosed(_))
        ));
    }

    #[test]
    fn nf_is_linear_and_idempotent_spotcheck() {
        let r = Ring::new(vec!["x", "y"]);
        let gb = gb_of(&r, &["x^2 - x", "y^2 - y"], MonomialOrder::GrevLex);
        let f = Polynomial::parse(&r, "x^3*y + 2*x").unwrap();
        let g = Polynomial::parse(&r, "y^2 - 3").unwrap();
        let nf_f = normal_form(&f, &gb).unwrap();
        let nf_nf = normal_form(&nf_f, &gb).unwrap();
        assert_eq!(nf_f, nf_nf);
        let lin = normal_form(&f.scale(&int(2)).add(&g.scale(&int(5))).unwrap(), &gb).unwrap();
        let rhs = nf_f.scale(&int(2)).add(&normal_form(&g, &gb).unwrap().scale(&int(5))).unwrap();
        assert_eq!(lin, rhs);
    }
}
