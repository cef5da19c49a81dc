//! Ideals and the operations the image algorithm consumes: Groebner bases,
//! normal forms, membership, elimination, saturation, intersection, radical
//! membership, principal-ideal radicals, and combinatorial Krull dimension.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_rational::BigRational;
use num_traits::One;

use crate::buchberger;
use crate::error::{Error, Result};
use crate::gcd::squarefree_part;
use crate::order::TermOrder;
use crate::poly::Polynomial;
use crate::ring::{Monomial, RingContext};

/// Finitely generated ideal with cached reduced Groebner bases, one per
/// term order. The cache is shared across clones and write-once per order.
#[derive(Clone)]
pub struct Ideal {
    ring: RingContext,
    generators: Vec<Polynomial>,
    cache: Arc<RwLock<HashMap<TermOrder, Arc<Vec<Polynomial>>>>>,
}

impl Ideal {
    /// Zero generators are dropped; all generators must share `ring`.
    pub fn new(ring: &RingContext, generators: Vec<Polynomial>) -> Result<Self> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            g.ring().expect_same(ring, "ideal generator")?;
            if !g.is_zero() {
                gens.push(g);
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: gens,
            cache: Arc::new(RwLock::new(HashMap::new())),
        })
    }

    pub fn zero(ring: &RingContext) -> Self {
        Ideal {
            ring: ring.clone(),
            generators: Vec::new(),
            cache: Arc::new(RwLock::new(HashMap::new())),
        }
    }

    pub fn unit(ring: &RingContext) -> Self {
        Ideal {
            ring: ring.clone(),
            generators: vec![Polynomial::one(ring)],
            cache: Arc::new(RwLock::new(HashMap::new())),
        }
    }

    pub fn ring(&self) -> &RingContext {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    /// This ideal plus extra generators.
    pub fn plus(&self, extra: &[Polynomial]) -> Result<Ideal> {
        let mut gens = self.generators.clone();
        gens.extend_from_slice(extra);
        Ideal::new(&self.ring, gens)
    }

    /// Generators re-expressed (by variable name) in another ring.
    pub fn embed(&self, target: &RingContext) -> Result<Ideal> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.embed(target))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(target, gens)
    }

    /// The reduced Groebner basis for `ord`, computed once and cached.
    pub fn groebner_basis(&self, ord: &TermOrder) -> Result<Arc<Vec<Polynomial>>> {
        ord.validate(&self.ring)?;
        if let Some(gb) = self.cache.read().expect("gb cache poisoned").get(ord) {
            return Ok(gb.clone());
        }
        let gb = Arc::new(buchberger::groebner_basis(
            &self.ring,
            &self.generators,
            ord,
        ));
        let mut cache = self.cache.write().expect("gb cache poisoned");
        Ok(cache.entry(ord.clone()).or_insert(gb).clone())
    }

    pub(crate) fn seed_cache(&self, ord: TermOrder, gb: Vec<Polynomial>) {
        self.cache
            .write()
            .expect("gb cache poisoned")
            .entry(ord)
            .or_insert_with(|| Arc::new(gb));
    }

    /// True iff the reduced basis is `{1}`.
    pub fn contains_one(&self) -> Result<bool> {
        let gb = self.groebner_basis(&TermOrder::GrevLex)?;
        Ok(gb.len() == 1 && gb[0].is_one())
    }

    /// Ideal membership via normal form against the Groebner basis.
    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        p.ring().expect_same(&self.ring, "ideal membership")?;
        let ord = TermOrder::GrevLex;
        let gb = self.groebner_basis(&ord)?;
        Ok(normal_form(p, &gb, &ord)?.is_zero())
    }

    /// The elimination ideal `I ∩ k[remaining]`, in the smaller ring.
    pub fn eliminate(&self, vars: &[&str]) -> Result<Ideal> {
        let mut front = Vec::new();
        for v in vars {
            front.push(self.ring.index_of_checked(v)?);
        }
        front.sort_unstable();
        front.dedup();
        let ord = TermOrder::block_of_indices(front.iter().copied());
        let gb = self.groebner_basis(&ord)?;

        let mask: Vec<bool> = (0..self.ring.arity())
            .map(|i| !front.contains(&i))
            .collect();
        let remaining: Vec<usize> = (0..self.ring.arity())
            .filter(|i| mask[*i])
            .collect();
        let subring = self.ring.subring(&remaining)?;
        let kept: Vec<Polynomial> = gb
            .iter()
            .filter(|g| {
                g.terms().all(|(m, _)| m.supported_on(&mask))
            })
            .map(|g| g.embed(&subring))
            .collect::<Result<Vec<_>>>()?;
        let out = Ideal::new(&subring, kept.clone())?;
        // the surviving basis elements are already a reduced grevlex basis
        // of the elimination ideal
        out.seed_cache(TermOrder::GrevLex, kept);
        Ok(out)
    }

    /// Saturation `I : f^∞`, via elimination of a fresh variable `t` from
    /// `I + (t·f - 1)`.
    pub fn saturate(&self, f: &Polynomial) -> Result<Ideal> {
        f.ring().expect_same(&self.ring, "saturation")?;
        if f.is_zero() {
            return Err(Error::InvalidArgument("saturation by zero".into()));
        }
        let t = self.ring.fresh_name("t");
        let ext = self.ring.extended(&t, 1)?;
        let tvar = Polynomial::variable(&ext, &t)?;
        let mut gens = self.embed(&ext)?.generators().to_vec();
        gens.push(tvar.checked_mul(&f.embed(&ext)?)? - Polynomial::one(&ext));
        Ideal::new(&ext, gens)?.eliminate(&[&t])?.embed(&self.ring)
    }

    /// Intersection `I ∩ J`, via elimination of a fresh `t` from
    /// `t·I + (1-t)·J`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.expect_same(&other.ring, "ideal intersection")?;
        let t = self.ring.fresh_name("t");
        let ext = self.ring.extended(&t, 1)?;
        let tvar = Polynomial::variable(&ext, &t)?;
        let one_minus_t = Polynomial::one(&ext).checked_sub(&tvar)?;
        let mut gens = Vec::new();
        for g in &self.generators {
            gens.push(tvar.checked_mul(&g.embed(&ext)?)?);
        }
        for g in &other.generators {
            gens.push(one_minus_t.checked_mul(&g.embed(&ext)?)?);
        }
        Ideal::new(&ext, gens)?.eliminate(&[&t])?.embed(&self.ring)
    }

    /// Radical membership: `g ∈ √I` iff `1 ∈ I + (t·g - 1)`.
    pub fn radical_contains(&self, g: &Polynomial) -> Result<bool> {
        g.ring().expect_same(&self.ring, "radical membership")?;
        let t = self.ring.fresh_name("t");
        let ext = self.ring.extended(&t, 1)?;
        let tvar = Polynomial::variable(&ext, &t)?;
        let mut gens = self.embed(&ext)?.generators().to_vec();
        gens.push(tvar.checked_mul(&g.embed(&ext)?)? - Polynomial::one(&ext));
        Ideal::new(&ext, gens)?.contains_one()
    }

    /// Radical of a principal ideal: the squarefree part of the single
    /// reduced-basis generator. Errors if the reduced basis is larger.
    pub fn radical_of_principal(&self) -> Result<Ideal> {
        let gb = self.groebner_basis(&TermOrder::GrevLex)?;
        match gb.len() {
            0 => Ok(Ideal::zero(&self.ring)),
            1 => {
                let f = &gb[0];
                if f.is_constant() {
                    return Ok(Ideal::unit(&self.ring));
                }
                Ideal::new(&self.ring, vec![squarefree_part(f)?])
            }
            n => Err(Error::NotPrincipal(n)),
        }
    }

    /// Krull dimension of `V(I)`: the largest number of variables `S` such
    /// that no leading monomial of the reduced basis is supported inside
    /// `S`. The empty variety reports -1.
    pub fn dimension(&self) -> Result<i64> {
        let ord = TermOrder::GrevLex;
        let gb = self.groebner_basis(&ord)?;
        if gb.len() == 1 && gb[0].is_constant() {
            return Ok(-1);
        }
        let n = self.ring.arity();
        assert!(n <= 24, "combinatorial dimension limited to 24 variables");
        let supports: Vec<u32> = gb
            .iter()
            .map(|g| {
                let lm = g.leading_monomial(&ord).expect("basis elements nonzero");
                lm.exponents()
                    .iter()
                    .enumerate()
                    .fold(0u32, |acc, (i, &e)| {
                        if e > 0 {
                            acc | (1 << i)
                        } else {
                            acc
                        }
                    })
            })
            .collect();
        let mut best: i64 = -1;
        for subset in 0u32..(1 << n) {
            let size = subset.count_ones() as i64;
            if size <= best {
                continue;
            }
            if supports.iter().all(|&s| s & !subset != 0) {
                best = size;
            }
        }
        Ok(best)
    }

    /// `V(I) == V(J)`: every generator of each ideal lies in the radical of
    /// the other.
    pub fn equal_up_to_radical(&self, other: &Ideal) -> Result<bool> {
        self.ring.expect_same(&other.ring, "radical comparison")?;
        for g in &self.generators {
            if !other.radical_contains(g)? {
                return Ok(false);
            }
        }
        for g in &other.generators {
            if !self.radical_contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Canonical rendering of the generator list.
    pub fn render(&self) -> String {
        format!("{self}")
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.generators == other.generators
    }
}

impl Eq for Ideal {}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        if self.generators.is_empty() {
            write!(f, "0")?;
        }
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Remainder of multivariate division of `p` by `basis` under `ord`: no
/// term of the result is divisible by any basis leading monomial.
pub fn normal_form(p: &Polynomial, basis: &[Polynomial], ord: &TermOrder) -> Result<Polynomial> {
    for b in basis {
        b.ring().expect_same(p.ring(), "normal form basis")?;
    }
    let leads: Vec<Option<(Monomial, BigRational)>> = basis
        .iter()
        .map(|b| {
            if b.is_zero() {
                None
            } else {
                Some(b.leading_term(ord).expect("nonzero"))
            }
        })
        .collect();
    let mut work = p.clone();
    let mut out = Polynomial::zero(p.ring());
    'outer: while !work.is_zero() {
        let (lm, lc) = work.leading_term(ord)?;
        for (b, lead) in basis.iter().zip(&leads) {
            let Some((bm, bc)) = lead else { continue };
            if let Some(shift) = lm.div(bm) {
                let c = &lc / bc;
                work = work.checked_sub(&b.mul_term(&shift, &c))?;
                continue 'outer;
            }
        }
        out.add_term(lm.clone(), lc.clone());
        work = work.checked_sub(&Polynomial::from_terms(p.ring(), [(lm, lc)])?)?;
    }
    Ok(out)
}

/// The S-polynomial of `f` and `g` (both nonzero) under `ord`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, ord: &TermOrder) -> Result<Polynomial> {
    f.ring().expect_same(g.ring(), "s-polynomial")?;
    let (fm, fc) = f.leading_term(ord)?;
    let (gm, gc) = g.leading_term(ord)?;
    let lcm = fm.lcm(&gm);
    let sf = lcm.div(&fm).expect("lcm divisible");
    let sg = lcm.div(&gm).expect("lcm divisible");
    let left = f.mul_term(&sf, &(BigRational::one() / fc));
    let right = g.mul_term(&sg, &(BigRational::one() / gc));
    left.checked_sub(&right)
}

/// Assemble `(w_1, q_1, …, q_m)`-style ideals from parsed text, mostly a
/// test and CLI convenience.
pub fn ideal_of(ring: &RingContext, sources: &[&str]) -> Result<Ideal> {
    let gens = sources
        .iter()
        .map(|s| {
            crate::parse::parse_polynomial(s, ring)
                .map_err(|e| Error::InvalidArgument(e.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(ring, gens)
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
    fn normal_form_examples() {
        let r = ring(&["x", "y"]);
        let lex = TermOrder::Lex;
        assert!(normal_form(&p("x^2", &r), &[p("x", &r)], &lex).unwrap().is_zero());
        assert_eq!(
            normal_form(&p("x + y", &r), &[p("x", &r)], &lex).unwrap(),
            p("y", &r)
        );
        // hand division of x^2*y + y by x*y - 1 under lex x > y
        assert_eq!(
            normal_form(&p("x^2*y + y", &r), &[p("x*y - 1", &r)], &lex).unwrap(),
            p("x + y", &r)
        );
        // empty basis returns the input unchanged
        let q = p("x^3 - y", &r);
        assert_eq!(normal_form(&q, &[], &lex).unwrap(), q);
    }

    #[test]
    fn membership_examples() {
        let r = ring(&["x"]);
        let i = ideal_of(&r, &["x"]).unwrap();
        assert!(i.contains(&p("x^2", &r)).unwrap());
        assert!(!i.contains(&p("1", &r)).unwrap());

        let rw = ring(&["w1", "w2", "w3"]);
        let e = ideal_of(&rw, &["w1", "w2^2 - w3^3 - w3"]).unwrap();
        // explicit combination: w1 * (w2^2 - w3^3 - w3)
        assert!(e
            .contains(&p("w1*(w2^2 - w3^3 - w3)", &rw))
            .unwrap());
    }

    #[test]
    fn contains_one_examples() {
        let r = ring(&["x"]);
        assert!(ideal_of(&r, &["x", "x + 1"]).unwrap().contains_one().unwrap());
        assert!(!ideal_of(&r, &["x"]).unwrap().contains_one().unwrap());
    }

    #[test]
    fn eliminate_parabola_and_degenerate() {
        let r = ring(&["a", "w1", "w2"]);
        let i = ideal_of(&r, &["w1 - a", "w2 - a^2"]).unwrap();
        let out = i.eliminate(&["a"]).unwrap();
        assert_eq!(out.ring().variables(), &["w1", "w2"]);
        assert_eq!(out.render(), "(w1^2 - w2)");

        let rx = ring(&["x"]);
        let empty = ideal_of(&rx, &["x"]).unwrap().eliminate(&["x"]).unwrap();
        assert!(empty.is_zero_ideal());
        assert_eq!(empty.ring().arity(), 0);
    }

    #[test]
    fn saturation_examples() {
        let r = ring(&["x", "y"]);
        let i = ideal_of(&r, &["x^2*y"]).unwrap();
        assert_eq!(i.saturate(&p("x", &r)).unwrap().render(), "(y)");
        // identity case: saturating by a unit
        let j = ideal_of(&r, &["x^2 - y"]).unwrap();
        let sat = j.saturate(&Polynomial::one(&r)).unwrap();
        assert!(sat.equal_up_to_radical(&j).unwrap());
        assert_eq!(
            sat.groebner_basis(&TermOrder::GrevLex).unwrap(),
            j.groebner_basis(&TermOrder::GrevLex).unwrap()
        );
        assert!(j.saturate(&Polynomial::zero(&r)).is_err());
    }

    #[test]
    fn saturation_is_idempotent() {
        let r = ring(&["x", "y", "z"]);
        let i = ideal_of(&r, &["x^2*y*z - x^2*z", "y^2*z"]).unwrap();
        let f = p("y*z", &r);
        let once = i.saturate(&f).unwrap();
        let twice = once.saturate(&f).unwrap();
        assert_eq!(
            once.groebner_basis(&TermOrder::GrevLex).unwrap(),
            twice.groebner_basis(&TermOrder::GrevLex).unwrap()
        );
    }

    #[test]
    fn intersection_examples() {
        let r = ring(&["x", "y", "z"]);
        let ix = ideal_of(&r, &["x"]).unwrap();
        let iy = ideal_of(&r, &["y"]).unwrap();
        assert_eq!(ix.intersect(&iy).unwrap().render(), "(x*y)");
        // idempotence up to basis equality
        let meet = ix.intersect(&ix).unwrap();
        assert_eq!(
            meet.groebner_basis(&TermOrder::GrevLex).unwrap(),
            ix.groebner_basis(&TermOrder::GrevLex).unwrap()
        );
        // primary decomposition by hand: (x, y) ∩ (x, z) = (x, y*z)
        let a = ideal_of(&r, &["x", "y"]).unwrap();
        let b = ideal_of(&r, &["x", "z"]).unwrap();
        let expected = ideal_of(&r, &["x", "y*z"]).unwrap();
        let meet = a.intersect(&b).unwrap();
        assert_eq!(
            meet.groebner_basis(&TermOrder::GrevLex).unwrap(),
            expected.groebner_basis(&TermOrder::GrevLex).unwrap()
        );
    }

    #[test]
    fn radical_membership_examples() {
        let r = ring(&["x", "y"]);
        let i = ideal_of(&r, &["x^2"]).unwrap();
        assert!(i.radical_contains(&p("x", &r)).unwrap());
        assert!(!i.radical_contains(&p("y", &r)).unwrap());
        // 0 is in every radical
        assert!(i.radical_contains(&Polynomial::zero(&r)).unwrap());
    }

    #[test]
    fn radical_of_principal_examples() {
        let r = ring(&["w1"]);
        assert_eq!(
            ideal_of(&r, &["w1^2"]).unwrap().radical_of_principal().unwrap().render(),
            "(w1)"
        );
        assert_eq!(
            ideal_of(&r, &["w1"]).unwrap().radical_of_principal().unwrap().render(),
            "(w1)"
        );
        let rxy = ring(&["x", "y"]);
        assert_eq!(
            ideal_of(&rxy, &["x^2*y^3"]).unwrap().radical_of_principal().unwrap().render(),
            "(x*y)"
        );
        // reduced basis of (x, y) has two elements
        let err = ideal_of(&rxy, &["x", "y"]).unwrap().radical_of_principal();
        assert!(matches!(err, Err(Error::NotPrincipal(2))));
        // reduction can reveal principality
        let hidden = ideal_of(&rxy, &["x^2", "x^2 + x^3"]).unwrap();
        assert_eq!(hidden.radical_of_principal().unwrap().render(), "(x)");
        assert!(Ideal::zero(&rxy).radical_of_principal().unwrap().is_zero_ideal());
    }

    #[test]
    fn dimension_examples() {
        let r3 = ring(&["x", "y", "z"]);
        assert_eq!(Ideal::zero(&r3).dimension().unwrap(), 3);
        let rw = ring(&["w1", "w2", "w3"]);
        let curve = ideal_of(&rw, &["w1", "w2^2 - w3^3 - w3"]).unwrap();
        assert_eq!(curve.dimension().unwrap(), 1);
        let rxy = ring(&["x", "y"]);
        assert_eq!(ideal_of(&rxy, &["x", "y"]).unwrap().dimension().unwrap(), 0);
        assert_eq!(ideal_of(&rxy, &["x", "x - 1"]).unwrap().dimension().unwrap(), -1);
    }

    #[test]
    fn radical_equality_examples() {
        let r = ring(&["x", "y"]);
        let a = ideal_of(&r, &["x^2"]).unwrap();
        let b = ideal_of(&r, &["x"]).unwrap();
        let c = ideal_of(&r, &["y"]).unwrap();
        assert!(a.equal_up_to_radical(&b).unwrap());
        assert!(!b.equal_up_to_radical(&c).unwrap());
    }

    #[test]
    fn groebner_cache_is_shared_and_stable() {
        let r = ring(&["x", "y"]);
        let i = ideal_of(&r, &["x^2 + y^2 - 1", "x - y"]).unwrap();
        let g1 = i.groebner_basis(&TermOrder::Lex).unwrap();
        let clone = i.clone();
        let g2 = clone.groebner_basis(&TermOrder::Lex).unwrap();
        assert!(Arc::ptr_eq(&g1, &g2));
    }
}
