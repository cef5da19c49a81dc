//! Global term orders: lex, grevlex, and block (elimination) orders.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::ring::{grevlex, lex, Monomial, RingContext};
use crate::error::{Error, Result};

/// A global monomial order.
///
/// Block orders compare the front-variable block first (grevlex within the
/// block), then fall through to the back order on the remaining variables;
/// this is the standard elimination order for the front block.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum TermOrder {
    Lex,
    GrevLex,
    Block {
        front: BTreeSet<usize>,
        back: Box<TermOrder>,
    },
}

impl TermOrder {
    /// Elimination order for the given variable names.
    pub fn elimination(ring: &RingContext, vars: &[&str]) -> Result<TermOrder> {
        let mut front = BTreeSet::new();
        for v in vars {
            front.insert(ring.index_of_checked(v)?);
        }
        Ok(TermOrder::Block {
            front,
            back: Box::new(TermOrder::GrevLex),
        })
    }

    pub fn block_of_indices(front: impl IntoIterator<Item = usize>) -> TermOrder {
        TermOrder::Block {
            front: front.into_iter().collect(),
            back: Box::new(TermOrder::GrevLex),
        }
    }

    /// Verify a block order's front variables exist in `ring`.
    pub fn validate(&self, ring: &RingContext) -> Result<()> {
        if let TermOrder::Block { front, back } = self {
            if let Some(&bad) = front.iter().find(|&&i| i >= ring.arity()) {
                return Err(Error::InvalidArgument(format!(
                    "block order refers to variable index {bad} in a ring of arity {}",
                    ring.arity()
                )));
            }
            back.validate(ring)?;
        }
        Ok(())
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp_exponents(a.exponents(), b.exponents())
    }

    fn cmp_exponents(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            TermOrder::Lex => lex(a, b),
            TermOrder::GrevLex => grevlex(a, b),
            TermOrder::Block { front, back } => {
                let n = a.len().max(b.len());
                let fa: Vec<u32> = project(a, n, front, true);
                let fb: Vec<u32> = project(b, n, front, true);
                match grevlex(&fa, &fb) {
                    Ordering::Equal => {
                        let ra: Vec<u32> = project(a, n, front, false);
                        let rb: Vec<u32> = project(b, n, front, false);
                        back.cmp_exponents(&ra, &rb)
                    }
                    o => o,
                }
            }
        }
    }

    pub fn max<'p>(&self, monomials: impl Iterator<Item = &'p Monomial>) -> Option<&'p Monomial> {
        monomials.max_by(|a, b| self.cmp(a, b))
    }
}

fn project(e: &[u32], n: usize, front: &BTreeSet<usize>, keep_front: bool) -> Vec<u32> {
    (0..n)
        .map(|i| {
            if front.contains(&i) == keep_front {
                e.get(i).copied().unwrap_or(0)
            } else {
                0
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn lex_prefers_front_variables() {
        // x > y^2 under lex with x before y
        assert_eq!(TermOrder::Lex.cmp(&m(&[1, 0]), &m(&[0, 2])), Ordering::Greater);
    }

    #[test]
    fn grevlex_prefers_degree() {
        assert_eq!(TermOrder::GrevLex.cmp(&m(&[1, 0]), &m(&[0, 2])), Ordering::Less);
    }

    #[test]
    fn block_order_eliminates_front_block() {
        // front = {0}: any positive power of x dominates anything x-free
        let ord = TermOrder::block_of_indices([0usize]);
        assert_eq!(ord.cmp(&m(&[1, 0]), &m(&[0, 9])), Ordering::Greater);
        // x-free monomials compare by the back order
        assert_eq!(ord.cmp(&m(&[0, 1]), &m(&[0, 2])), Ordering::Less);
    }

    #[test]
    fn orders_are_global() {
        for ord in [
            TermOrder::Lex,
            TermOrder::GrevLex,
            TermOrder::block_of_indices([1usize]),
        ] {
            assert_eq!(ord.cmp(&m(&[0, 0]), &m(&[1, 1])), Ordering::Less);
        }
    }
}
