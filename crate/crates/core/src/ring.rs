//! Variable contexts and monomials.
//!
//! Every polynomial carries a [`RingContext`]: an ordered list of named
//! variables, each with a nonnegative integer weight. Weights drive weighted
//! homogenization; weight 0 marks variables that homogenization treats as
//! constants.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Debug, PartialEq, Eq, Hash)]
struct RingData {
    variables: Vec<String>,
    weights: Vec<u32>,
}

/// An ordered list of named variables with integer weights.
///
/// Cheap to clone (shared internally); two contexts are equal when their
/// variable names and weights agree, regardless of how they were built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingContext {
    data: Arc<RingData>,
}

impl RingContext {
    /// Context with all weights 1.
    pub fn new<S: Into<String>>(variables: Vec<S>) -> Result<Self> {
        let vars: Vec<String> = variables.into_iter().map(Into::into).collect();
        let weights = vec![1; vars.len()];
        Self::with_weights(vars, weights)
    }

    pub fn with_weights<S: Into<String>>(variables: Vec<S>, weights: Vec<u32>) -> Result<Self> {
        let variables: Vec<String> = variables.into_iter().map(Into::into).collect();
        if variables.len() != weights.len() {
            return Err(Error::InvalidArgument(format!(
                "{} variables but {} weights",
                variables.len(),
                weights.len()
            )));
        }
        for (i, v) in variables.iter().enumerate() {
            if v.is_empty() {
                return Err(Error::InvalidArgument("empty variable name".into()));
            }
            if variables[..i].contains(v) {
                return Err(Error::InvalidArgument(format!("duplicate variable `{v}`")));
            }
        }
        Ok(RingContext {
            data: Arc::new(RingData { variables, weights }),
        })
    }

    pub fn arity(&self) -> usize {
        self.data.variables.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.data.variables
    }

    pub fn weights(&self) -> &[u32] {
        &self.data.weights
    }

    pub fn variable(&self, index: usize) -> &str {
        &self.data.variables[index]
    }

    pub fn weight(&self, index: usize) -> u32 {
        self.data.weights[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.data.variables.iter().position(|v| v == name)
    }

    pub fn index_of_checked(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// New context keeping only the variables at `keep` (in order), with
    /// their weights.
    pub fn subring(&self, keep: &[usize]) -> Result<Self> {
        let variables: Vec<String> = keep.iter().map(|&i| self.variable(i).to_string()).collect();
        let weights: Vec<u32> = keep.iter().map(|&i| self.weight(i)).collect();
        Self::with_weights(variables, weights)
    }

    /// New context with an extra variable appended.
    pub fn extended(&self, name: &str, weight: u32) -> Result<Self> {
        let mut variables = self.data.variables.clone();
        let mut weights = self.data.weights.clone();
        variables.push(name.to_string());
        weights.push(weight);
        Self::with_weights(variables, weights)
    }

    /// Concatenation of two contexts; variable names must be disjoint.
    pub fn product(&self, other: &RingContext) -> Result<Self> {
        let mut variables = self.data.variables.clone();
        let mut weights = self.data.weights.clone();
        for (v, &w) in other.variables().iter().zip(other.weights()) {
            variables.push(v.clone());
            weights.push(w);
        }
        Self::with_weights(variables, weights)
    }

    /// A name not used by this context: `desired`, or `desired` with
    /// underscores appended until free.
    pub fn fresh_name(&self, desired: &str) -> String {
        let mut name = desired.to_string();
        while self.index_of(&name).is_some() {
            name.push('_');
        }
        name
    }

    pub fn same_ring(&self, other: &RingContext) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data == other.data
    }

    pub(crate) fn expect_same(&self, other: &RingContext, what: &str) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "{what}: [{}] vs [{}]",
                self.variables().join(","),
                other.variables().join(",")
            )))
        }
    }
}

impl fmt::Debug for RingContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingContext[")?;
        for (i, v) in self.variables().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
            if self.weight(i) != 1 {
                write!(f, ":{}", self.weight(i))?;
            }
        }
        write!(f, "]")
    }
}

/// Exponent vector, one entry per ring variable.
///
/// `Ord` is graded reverse lexicographic: higher total degree wins, ties
/// break at the last differing exponent with the smaller entry winning.
/// This is the ambient default order used for canonical term storage and
/// printing.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn variable(arity: usize, index: usize) -> Self {
        let mut e = vec![0; arity];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| u64::from(e) * u64::from(w))
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise quotient, `None` unless `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Monomial(out))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }

    /// True when every variable in the support lies in `mask`.
    pub fn supported_on(&self, mask: &[bool]) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, &e)| e == 0 || mask[i])
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex(&self.0, &other.0).then_with(|| self.0.len().cmp(&other.0.len()))
    }
}

pub(crate) fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| u64::from(e)).sum();
    let db: u64 = b.iter().map(|&e| u64::from(e)).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    let n = a.len().max(b.len());
    for i in (0..n).rev() {
        let ea = a.get(i).copied().unwrap_or(0);
        let eb = b.get(i).copied().unwrap_or(0);
        if ea != eb {
            // smaller exponent at the last difference means the larger monomial
            return eb.cmp(&ea);
        }
    }
    Ordering::Equal
}

pub(crate) fn lex(a: &[u32], b: &[u32]) -> Ordering {
    let n = a.len().max(b.len());
    for i in 0..n {
        let ea = a.get(i).copied().unwrap_or(0);
        let eb = b.get(i).copied().unwrap_or(0);
        if ea != eb {
            return ea.cmp(&eb);
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_rejects_duplicates_and_empty_names() {
        assert!(RingContext::new(vec!["x", "x"]).is_err());
        assert!(RingContext::new(vec![""]).is_err());
    }

    #[test]
    fn grevlex_orders_by_degree_then_reverse() {
        // x^2 vs x*y in k[x,y]: same degree, last difference at y with
        // x^2 having the smaller entry, so x^2 > x*y.
        let x2 = Monomial(vec![2, 0]);
        let xy = Monomial(vec![1, 1]);
        let y2 = Monomial(vec![0, 2]);
        assert!(x2 > xy);
        assert!(xy > y2);
        assert!(y2 > Monomial(vec![1, 0]));
    }

    #[test]
    fn monomial_division() {
        let a = Monomial(vec![2, 1]);
        let b = Monomial(vec![1, 0]);
        assert_eq!(a.div(&b), Some(Monomial(vec![1, 1])));
        assert_eq!(b.div(&a), None);
        assert_eq!(a.lcm(&b), a);
    }

    #[test]
    fn fresh_names_avoid_collisions() {
        let r = RingContext::new(vec!["t", "t_"]).unwrap();
        assert_eq!(r.fresh_name("t"), "t__");
        assert_eq!(r.fresh_name("s"), "s");
    }
}
