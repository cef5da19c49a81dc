//! Exact multivariate polynomials over the rationals.
//!
//! Terms are kept in a `BTreeMap` keyed by the ambient default (grevlex)
//! order, so equal polynomials have identical storage and identical
//! canonical rendering. All coefficient arithmetic is arbitrary-precision
//! rational; there is no floating point anywhere in this crate.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::order::TermOrder;
use crate::ring::{Monomial, RingContext};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: RingContext,
    terms: BTreeMap<Monomial, BigRational>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Polynomial {
    pub fn zero(ring: &RingContext) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &RingContext, c: BigRational) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.arity()), c);
        }
        p
    }

    pub fn one(ring: &RingContext) -> Self {
        Self::constant(ring, BigRational::one())
    }

    pub fn variable(ring: &RingContext, name: &str) -> Result<Self> {
        let idx = ring.index_of_checked(name)?;
        let mut p = Self::zero(ring);
        p.terms
            .insert(Monomial::variable(ring.arity(), idx), BigRational::one());
        Ok(p)
    }

    pub fn from_terms(
        ring: &RingContext,
        terms: impl IntoIterator<Item = (Monomial, BigRational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            if m.arity() != ring.arity() {
                return Err(Error::InvalidArgument(format!(
                    "monomial arity {} in a ring of arity {}",
                    m.arity(),
                    ring.arity()
                )));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn ring(&self) -> &RingContext {
        &self.ring
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.is_one() && c.is_one())
                .unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// The coefficient of `mono` (zero if absent).
    pub fn coefficient(&self, mono: &Monomial) -> BigRational {
        self.terms.get(mono).cloned().unwrap_or_else(BigRational::zero)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.expect_same(&other.ring, "polynomial addition")?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.expect_same(&other.ring, "polynomial subtraction")?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.expect_same(&other.ring, "polynomial multiplication")?;
        let mut out = Self::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        let mut out = Self::zero(&self.ring);
        for (m, a) in &self.terms {
            out.terms.insert(m.clone(), a * c);
        }
        out
    }

    pub fn mul_term(&self, mono: &Monomial, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        let mut out = Self::zero(&self.ring);
        for (m, a) in &self.terms {
            out.terms.insert(m.mul(mono), a * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Self::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.checked_mul(&base).expect("same ring");
            }
            k >>= 1;
            if k > 0 {
                base = base.checked_mul(&base).expect("same ring");
            }
        }
        result
    }

    /// Maximum total degree over terms; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Maximum weight-dot-exponent over terms, using the ring's weights.
    pub fn weighted_degree(&self) -> Result<u64> {
        self.terms
            .keys()
            .map(|m| m.weighted_degree(self.ring.weights()))
            .max()
            .ok_or(Error::ZeroPolynomial)
    }

    /// The order-maximal term.
    pub fn leading_term(&self, ord: &TermOrder) -> Result<(Monomial, BigRational)> {
        let m = ord
            .max(self.terms.keys())
            .ok_or(Error::ZeroPolynomial)?;
        Ok((m.clone(), self.terms[m].clone()))
    }

    pub fn leading_monomial(&self, ord: &TermOrder) -> Result<Monomial> {
        Ok(self.leading_term(ord)?.0)
    }

    /// Divide by the leading coefficient (w.r.t. `ord`).
    pub fn monic(&self, ord: &TermOrder) -> Result<Polynomial> {
        let (_, lc) = self.leading_term(ord)?;
        Ok(self.scale(&(BigRational::one() / lc)))
    }

    /// Simultaneous substitution of variables by polynomials in `target`.
    ///
    /// Unassigned variables map to the variable of the same name in the
    /// target ring; a variable that actually occurs, is unassigned, and is
    /// missing from the target is an error.
    pub fn substitute(
        &self,
        target: &RingContext,
        assignment: &BTreeMap<String, Polynomial>,
    ) -> Result<Polynomial> {
        for (name, image) in assignment {
            self.ring.index_of_checked(name)?;
            image.ring.expect_same(target, "substitution image")?;
        }
        // per-variable images, resolved lazily so untouched missing
        // variables stay legal
        let mut images: Vec<Option<Polynomial>> = vec![None; self.ring.arity()];
        let mut out = Polynomial::zero(target);
        for (mono, coeff) in &self.terms {
            let mut term = Polynomial::constant(target, coeff.clone());
            for (i, &e) in mono.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if images[i].is_none() {
                    let name = self.ring.variable(i);
                    let img = match assignment.get(name) {
                        Some(p) => p.clone(),
                        None => Polynomial::variable(target, name)?,
                    };
                    images[i] = Some(img);
                }
                let img = images[i].as_ref().unwrap();
                term = term.checked_mul(&img.pow(e))?;
            }
            out = out.checked_add(&term)?;
        }
        Ok(out)
    }

    /// Re-express this polynomial in a ring that contains all its
    /// *occurring* variables (matched by name); weights may differ.
    pub fn embed(&self, target: &RingContext) -> Result<Polynomial> {
        let positions: Vec<Option<usize>> = self
            .ring
            .variables()
            .iter()
            .map(|v| target.index_of(v))
            .collect();
        let mut out = Polynomial::zero(target);
        for (mono, coeff) in &self.terms {
            let mut e = vec![0u32; target.arity()];
            for (i, &exp) in mono.exponents().iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                match positions[i] {
                    Some(pos) => e[pos] = exp,
                    None => {
                        return Err(Error::UnknownVariable(
                            self.ring.variable(i).to_string(),
                        ))
                    }
                }
            }
            out.add_term(Monomial(e), coeff.clone());
        }
        Ok(out)
    }

    /// Multiply each term by `hvar^(D - wdeg(term))`, `D` the weighted
    /// degree; the result is weighted-homogeneous of degree `D`.
    pub fn homogenize(&self, hvar: &str) -> Result<Polynomial> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let idx = self.ring.index_of_checked(hvar)?;
        if self.ring.weight(idx) != 1 {
            return Err(Error::BadHomogenizer(hvar.to_string()));
        }
        if self.terms.keys().any(|m| m.exponents()[idx] != 0) {
            return Err(Error::BadHomogenizer(hvar.to_string()));
        }
        let weights = self.ring.weights();
        let total = self.weighted_degree()?;
        let mut out = Polynomial::zero(&self.ring);
        for (mono, coeff) in &self.terms {
            let gap = total - mono.weighted_degree(weights);
            let mut e = mono.exponents().to_vec();
            e[idx] = u32::try_from(gap).expect("homogenization exponent fits u32");
            out.terms.insert(Monomial(e), coeff.clone());
        }
        Ok(out)
    }

    /// Evaluate at a rational point (one value per ring variable).
    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.ring.arity() {
            return Err(Error::InvalidArgument(format!(
                "point has {} coordinates, ring has {}",
                point.len(),
                self.ring.arity()
            )));
        }
        let mut acc = BigRational::zero();
        for (mono, coeff) in &self.terms {
            let mut v = coeff.clone();
            for (i, &e) in mono.exponents().iter().enumerate() {
                for _ in 0..e {
                    v *= &point[i];
                }
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Formal partial derivative with respect to the named variable.
    pub fn partial_derivative(&self, var: &str) -> Result<Polynomial> {
        let idx = self.ring.index_of_checked(var)?;
        let mut out = Polynomial::zero(&self.ring);
        for (mono, coeff) in &self.terms {
            let e = mono.exponents()[idx];
            if e == 0 {
                continue;
            }
            let mut exps = mono.exponents().to_vec();
            exps[idx] = e - 1;
            out.add_term(Monomial(exps), coeff * int(i64::from(e)));
        }
        Ok(out)
    }

    /// True when the named variable occurs with positive exponent.
    pub fn mentions(&self, var: &str) -> bool {
        match self.ring.index_of(var) {
            Some(idx) => self.terms.keys().any(|m| m.exponents()[idx] > 0),
            None => false,
        }
    }

    /// Canonical rendering: terms in descending default order, explicit
    /// `*`, `^` for powers, coefficients as `p/q`.
    pub fn render(&self) -> String {
        format!("{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (mono, coeff)) in self.terms.iter().rev().enumerate() {
            let neg = coeff.is_negative();
            let abs = coeff.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || mono.is_one() {
                factors.push(render_rational(&abs));
            }
            for (v, &e) in self.ring.variables().iter().zip(mono.exponents()) {
                match e {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn render_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

macro_rules! arith_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("ring mismatch")
            }
        }
        impl $trait for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$checked(&rhs).expect("ring mismatch")
            }
        }
    };
}

arith_op!(Add, add, checked_add);
arith_op!(Sub, sub, checked_sub);
arith_op!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-BigRational::one())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn ring(vars: &[&str]) -> RingContext {
        RingContext::new(vars.to_vec()).unwrap()
    }

    fn p(src: &str, r: &RingContext) -> Polynomial {
        parse_polynomial(src, r).unwrap()
    }

    #[test]
    fn addition_cancels() {
        let r = ring(&["x"]);
        assert_eq!(p("x + 1", &r) + p("x - 1", &r), p("2*x", &r));
        let q = p("x^2 - 3", &r);
        assert_eq!(q.checked_add(&Polynomial::zero(&r)).unwrap(), q);
    }

    #[test]
    fn addition_builds_curve_generator() {
        let r = ring(&["w1", "w2", "w3"]);
        assert_eq!(
            p("w2^2 - w3^3", &r) + p("0 - w3", &r),
            p("w2^2 - w3^3 - w3", &r)
        );
    }

    #[test]
    fn multiplication_distributes() {
        let r = ring(&["a", "b", "c"]);
        assert_eq!(p("x", &ring(&["x"])).pow(2), p("x^2", &ring(&["x"])));
        let q = p("a^2 - b^3 - b", &r);
        assert_eq!(
            p("c", &r) * q.clone(),
            p("c*a^2 - c*b^3 - c*b", &r)
        );
        assert_eq!(q.checked_mul(&Polynomial::one(&r)).unwrap(), q);
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = p("x", &ring(&["x"]));
        let b = p("y", &ring(&["y"]));
        assert!(a.checked_add(&b).is_err());
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn substitution_identity_and_numeric() {
        let r = ring(&["x", "y"]);
        let q = p("x", &r);
        let mut sub = BTreeMap::new();
        sub.insert("x".to_string(), p("x", &r));
        assert_eq!(q.substitute(&r, &sub).unwrap(), q);

        let mut numeric = BTreeMap::new();
        numeric.insert("x".to_string(), Polynomial::constant(&r, int(2)));
        numeric.insert("y".to_string(), Polynomial::constant(&r, int(3)));
        let v = p("x*y", &r).substitute(&r, &numeric).unwrap();
        assert_eq!(v, Polynomial::constant(&r, int(6)));
    }

    #[test]
    fn substitution_is_simultaneous() {
        let r = ring(&["x", "y"]);
        let mut swap = BTreeMap::new();
        swap.insert("x".to_string(), p("y", &r));
        swap.insert("y".to_string(), p("x", &r));
        assert_eq!(p("x^2 - y", &r).substitute(&r, &swap).unwrap(), p("y^2 - x", &r));
    }

    #[test]
    fn substitution_rejects_missing_target_variable() {
        let r = ring(&["x", "y"]);
        let small = ring(&["x"]);
        // y occurs and has no image in the target ring
        assert!(p("x + y", &r).substitute(&small, &BTreeMap::new()).is_err());
        // but a polynomial not mentioning y moves freely
        assert_eq!(
            p("x^2", &r).substitute(&small, &BTreeMap::new()).unwrap(),
            p("x^2", &small)
        );
    }

    fn session_ring() -> RingContext {
        RingContext::with_weights(
            vec!["a", "b", "c", "e", "w1", "w2", "w3"],
            vec![1, 1, 1, 1, 0, 0, 0],
        )
        .unwrap()
    }

    #[test]
    fn weighted_degree_ignores_weight_zero_variables() {
        let r = session_ring();
        assert_eq!(p("c*a^2*w1", &r).weighted_degree().unwrap(), 3);
        assert_eq!(p("w1*w2", &r).weighted_degree().unwrap(), 0);
        assert_eq!(p("b^3", &r).weighted_degree().unwrap(), 3);
        assert!(Polynomial::zero(&r).weighted_degree().is_err());
    }

    #[test]
    fn homogenize_pads_each_term_to_top_weight() {
        let r = session_ring();
        let affine = p("1 + c*(a^2 - b^3 - b) - w1", &r);
        // weighted degrees per term: 0, 3, 4, 2, 0 -> pad to 4 by hand
        let expected = p("e^4 + c*a^2*e - c*b^3 - c*b*e^2 - w1*e^4", &r);
        assert_eq!(affine.homogenize("e").unwrap(), expected);

        // already homogeneous input is a fixed point
        let h = p("c*b^3 - a^4", &r);
        assert_eq!(h.homogenize("e").unwrap(), h);

        // round trip: e -> 1 recovers the original
        let mut back = BTreeMap::new();
        back.insert("e".to_string(), Polynomial::one(&r));
        assert_eq!(
            affine.homogenize("e").unwrap().substitute(&r, &back).unwrap(),
            affine
        );
    }

    #[test]
    fn homogenize_rejects_occurring_variable() {
        let r = session_ring();
        assert!(p("e + a", &r).homogenize("e").is_err());
        // weight-0 variable is not a homogenizer
        assert!(p("a", &r).homogenize("w1").is_err());
    }

    #[test]
    fn leading_terms_follow_the_order() {
        let r = ring(&["x", "y"]);
        let q = p("x + y^2", &r);
        assert_eq!(
            q.leading_term(&TermOrder::Lex).unwrap().0,
            Monomial(vec![1, 0])
        );
        assert_eq!(
            q.leading_term(&TermOrder::GrevLex).unwrap().0,
            Monomial(vec![0, 2])
        );
        let rw = ring(&["w1", "w2", "w3"]);
        let e = p("w2^2 - w3^3 - w3", &rw);
        // lex w1 > w2 > w3: w2^2 beats every w3 power
        assert_eq!(
            e.leading_term(&TermOrder::Lex).unwrap().0,
            Monomial(vec![0, 2, 0])
        );
        assert!(Polynomial::zero(&r).leading_term(&TermOrder::Lex).is_err());
    }

    #[test]
    fn rendering_is_canonical() {
        let r = ring(&["w1", "w2", "w3"]);
        let q = p("w2^2 - w3^3 - w3", &r);
        assert_eq!(q.render(), "-w3^3 + w2^2 - w3");
        assert_eq!(p("0", &r).render(), "0");
        assert_eq!(p("-1/2*w1*w2 + 7", &r).render(), "-1/2*w1*w2 + 7");
    }

    #[test]
    fn evaluation_matches_term_sum() {
        let r = ring(&["x", "y"]);
        let q = p("x^2*y - 1/2*y + 3", &r);
        let v = q.evaluate(&[rat(1, 2), int(4)]).unwrap();
        assert_eq!(v, int(2)); // 1/4*4 - 2 + 3
    }

    #[test]
    fn partial_derivatives() {
        let r = ring(&["x", "y"]);
        assert_eq!(
            p("x^2*y^3", &r).partial_derivative("x").unwrap(),
            p("2*x*y^3", &r)
        );
        assert_eq!(
            p("x^2", &r).partial_derivative("y").unwrap(),
            Polynomial::zero(&r)
        );
    }
}
