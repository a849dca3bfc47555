//! Monomial orders: lex, graded lex, graded reverse lex and block elimination.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{Monomial, Ring};

/// Order used inside a single block of variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubOrder {
    Lex,
    DegLex,
    GrevLex,
}

/// A total, multiplicative monomial order with 1 minimal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum MonomialOrder {
    /// Pure lexicographic, first ring variable largest.
    Lex,
    /// Total degree, ties broken lexicographically.
    DegLex,
    /// Total degree, ties broken by reverse lex from the last variable.
    GrevLex,
    /// Block elimination: blocks are compared left to right, each with its
    /// own sub-order. Earlier blocks dominate (their variables are larger).
    Block(Vec<Block>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    /// Ring indices belonging to this block, in block-local precedence order.
    pub vars: Vec<usize>,
    pub order: SubOrder,
}

fn cmp_sub(a: &Monomial, b: &Monomial, vars: &[usize], order: SubOrder) -> Ordering {
    match order {
        SubOrder::Lex => {
            for &i in vars {
                match a.exp(i).cmp(&b.exp(i)) {
                    Ordering::Equal => {}
                    o => return o,
                }
            }
            Ordering::Equal
        }
        SubOrder::DegLex => {
            let da: u64 = vars.iter().map(|&i| a.exp(i) as u64).sum();
            let db: u64 = vars.iter().map(|&i| b.exp(i) as u64).sum();
            match da.cmp(&db) {
                Ordering::Equal => cmp_sub(a, b, vars, SubOrder::Lex),
                o => o,
            }
        }
        SubOrder::GrevLex => {
            let da: u64 = vars.iter().map(|&i| a.exp(i) as u64).sum();
            let db: u64 = vars.iter().map(|&i| b.exp(i) as u64).sum();
            match da.cmp(&db) {
                Ordering::Equal => {
                    // scan from the last variable; smaller exponent wins
                    for &i in vars.iter().rev() {
                        match a.exp(i).cmp(&b.exp(i)) {
                            Ordering::Equal => {}
                            Ordering::Less => return Ordering::Greater,
                            Ordering::Greater => return Ordering::Less,
                        }
                    }
                    Ordering::Equal
                }
                o => o,
            }
        }
    }
}

impl MonomialOrder {
    /// Compare two monomials of the same ring. `Greater` means `a` is the
    /// larger monomial.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != b.nvars() {
            return Err(Error::DimensionMismatch(a.nvars(), b.nvars()));
        }
        Ok(self.cmp_unchecked(a, b))
    }

    pub fn cmp_unchecked(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => {
                let all: Vec<usize> = (0..a.nvars()).collect();
                cmp_sub(a, b, &all, SubOrder::Lex)
            }
            MonomialOrder::DegLex => {
                let all: Vec<usize> = (0..a.nvars()).collect();
                cmp_sub(a, b, &all, SubOrder::DegLex)
            }
            MonomialOrder::GrevLex => {
                let all: Vec<usize> = (0..a.nvars()).collect();
                cmp_sub(a, b, &all, SubOrder::GrevLex)
            }
            MonomialOrder::Block(blocks) => {
                for blk in blocks {
                    match cmp_sub(a, b, &blk.vars, blk.order) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// Block order eliminating the first `drop` ring variables: one grevlex
    /// block for `0..drop`, one for the rest.
    pub fn elimination(ring: &Ring, drop: usize) -> MonomialOrder {
        MonomialOrder::Block(vec![
            Block {
                vars: (0..drop).collect(),
                order: SubOrder::GrevLex,
            },
            Block {
                vars: (drop..ring.len()).collect(),
                order: SubOrder::GrevLex,
            },
        ])
    }

    /// A short descriptor for serialized bases.
    pub fn descriptor(&self, ring: &Ring) -> String {
        match self {
            MonomialOrder::Lex => "lex".to_string(),
            MonomialOrder::DegLex => "deglex".to_string(),
            MonomialOrder::GrevLex => "grevlex".to_string(),
            MonomialOrder::Block(blocks) => {
                let parts: Vec<String> = blocks
                    .iter()
                    .map(|b| {
                        let names: Vec<&str> = b.vars.iter().map(|&i| ring.name(i)).collect();
                        format!(
                            "{:?}[{}]",
                            b.order,
                            names.join(",")
                        )
                        .to_lowercase()
                    })
                    .collect();
                format!("block({})", parts.join(" > "))
            }
        }
    }

    /// Check that every block partitions the ring exactly once.
    pub fn validate(&self, ring: &Ring) -> Result<()> {
        if let MonomialOrder::Block(blocks) = self {
            let mut seen = vec![false; ring.len()];
            for b in blocks {
                for &i in &b.vars {
                    if i >= ring.len() || seen[i] {
                        return Err(Error::Invalid(
                            "block order must partition the ring variables".into(),
                        ));
                    }
                    seen[i] = true;
                }
            }
            if !seen.iter().all(|&s| s) {
                return Err(Error::Invalid(
                    "block order must cover every ring variable".into(),
                ));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u32]) -> Monomial {
        Monomial::from_exps(exps.to_vec())
    }

    #[test]
    fn lex_compares_first_variable_degree_first() {
        // x0 vs x1^2 under lex(x0 > x1): greater
        let ord = MonomialOrder::Lex;
        assert_eq!(ord.cmp_unchecked(&m(&[1, 0]), &m(&[0, 2])), Ordering::Greater);
    }

    #[test]
    fn grevlex_breaks_degree_ties_by_reverse_lex() {
        // x0*x1 vs x0^2: tie on degree, last differing variable is x1 where
        // x0*x1 has the larger exponent, so x0*x1 is smaller.
        let ord = MonomialOrder::GrevLex;
        assert_eq!(ord.cmp_unchecked(&m(&[1, 1]), &m(&[2, 0])), Ordering::Less);
    }

    #[test]
    fn grevlex_prefers_total_degree() {
        let ord = MonomialOrder::GrevLex;
        // x + y^2: leading term is y^2
        assert_eq!(ord.cmp_unchecked(&m(&[0, 2]), &m(&[1, 0])), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates_leading_block() {
        // blocks [x] > [y, z]: any monomial containing x beats any without
        let ord = MonomialOrder::Block(vec![
            Block { vars: vec![0], order: SubOrder::GrevLex },
            Block { vars: vec![1, 2], order: SubOrder::GrevLex },
        ]);
        assert_eq!(ord.cmp_unchecked(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
    }
}
