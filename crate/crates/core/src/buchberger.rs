//! Buchberger's algorithm.
//!
//! The engine works fraction-free over the integers: rational inputs are
//! scaled to primitive integer form, reductions use minimal gcd scaling,
//! and only the final reduced basis is converted back to monic rational
//! polynomials. Pair selection is the normal strategy (degree, then lex,
//! on the pair lcm) with the product and chain criteria.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::order::TermOrder;
use crate::poly::Polynomial;
use crate::ring::{Monomial, RingContext};

/// Term list sorted descending by a fixed order, integer coefficients.
#[derive(Clone, Debug)]
pub(crate) struct OrdPoly {
    pub terms: Vec<(Monomial, BigInt)>,
}

impl OrdPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> &(Monomial, BigInt) {
        &self.terms[0]
    }

    fn from_polynomial(p: &Polynomial, ord: &TermOrder) -> Self {
        let mut denom_lcm = BigInt::one();
        for (_, c) in p.terms() {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let mut terms: Vec<(Monomial, BigInt)> = p
            .terms()
            .map(|(m, c)| {
                let scaled = c * BigRational::from_integer(denom_lcm.clone());
                debug_assert!(scaled.is_integer());
                (m.clone(), scaled.to_integer())
            })
            .collect();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        let mut out = OrdPoly { terms };
        out.normalize();
        out
    }

    fn to_polynomial(&self, ring: &RingContext) -> Polynomial {
        Polynomial::from_terms(
            ring,
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), BigRational::from_integer(c.clone()))),
        )
        .expect("engine monomials share the ring arity")
    }

    /// Divide out the integer content and make the leading coefficient
    /// positive.
    fn normalize(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut content = BigInt::zero();
        for (_, c) in &self.terms {
            content = content.gcd(c);
            if content.is_one() {
                break;
            }
        }
        if self.terms[0].1.is_negative() {
            content = -content;
        }
        if !content.is_one() {
            for (_, c) in &mut self.terms {
                *c = &*c / &content;
            }
        }
    }
}

/// `a*f - b*x^shift*g`, fraction-free; result re-sorted by construction.
fn combine(
    f: &OrdPoly,
    a: &BigInt,
    g: &OrdPoly,
    b: &BigInt,
    shift: &Monomial,
    ord: &TermOrder,
) -> OrdPoly {
    let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
    let mut i = 0;
    let mut j = 0;
    while i < f.terms.len() && j < g.terms.len() {
        let gm = g.terms[j].0.mul(shift);
        match ord.cmp(&f.terms[i].0, &gm) {
            std::cmp::Ordering::Greater => {
                out.push((f.terms[i].0.clone(), a * &f.terms[i].1));
                i += 1;
            }
            std::cmp::Ordering::Less => {
                out.push((gm, -(b * &g.terms[j].1)));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = a * &f.terms[i].1 - b * &g.terms[j].1;
                if !c.is_zero() {
                    out.push((gm, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    while i < f.terms.len() {
        out.push((f.terms[i].0.clone(), a * &f.terms[i].1));
        i += 1;
    }
    while j < g.terms.len() {
        out.push((g.terms[j].0.mul(shift), -(b * &g.terms[j].1)));
        j += 1;
    }
    OrdPoly { terms: out }
}

/// Full normal form of `p` against `basis`; every term of the result is
/// indivisible by every basis leading monomial. The result is a positive
/// rational multiple of the true remainder.
pub(crate) fn reduce(p: OrdPoly, basis: &[OrdPoly], ord: &TermOrder) -> OrdPoly {
    let mut work = p;
    let mut out: Vec<(Monomial, BigInt)> = Vec::new();
    let mut steps = 0usize;
    'outer: while !work.is_zero() {
        let (lm, lc) = work.leading().clone();
        for g in basis {
            if g.is_zero() {
                continue;
            }
            let (gm, gc) = g.leading();
            if let Some(shift) = lm.div(gm) {
                let d = lc.gcd(gc);
                let mut a = gc / &d;
                let mut b = &lc / &d;
                if a.is_negative() {
                    a = -a;
                    b = -b;
                }
                work = combine(&work, &a, g, &b, &shift, ord);
                if !a.is_one() {
                    for (_, c) in &mut out {
                        *c = &*c * &a;
                    }
                }
                steps += 1;
                if steps % 32 == 0 {
                    let mut probe = OrdPoly {
                        terms: std::mem::take(&mut work.terms),
                    };
                    // joint content strip keeps the out/work pair consistent
                    strip_joint_content(&mut probe.terms, &mut out);
                    work = probe;
                }
                continue 'outer;
            }
        }
        out.push(work.terms.remove(0));
    }
    let mut result = OrdPoly { terms: out };
    result.normalize();
    result
}

fn strip_joint_content(a: &mut Vec<(Monomial, BigInt)>, b: &mut Vec<(Monomial, BigInt)>) {
    let mut content = BigInt::zero();
    for (_, c) in a.iter().chain(b.iter()) {
        content = content.gcd(c);
        if content.is_one() {
            return;
        }
    }
    if content.is_zero() || content.is_one() {
        return;
    }
    for (_, c) in a.iter_mut().chain(b.iter_mut()) {
        *c = &*c / &content;
    }
}

fn s_polynomial(f: &OrdPoly, g: &OrdPoly, ord: &TermOrder) -> OrdPoly {
    let (fm, fc) = f.leading();
    let (gm, gc) = g.leading();
    let lcm = fm.lcm(gm);
    let d = fc.gcd(gc);
    let a = gc / &d;
    let b = fc / &d;
    let sf = lcm.div(fm).expect("lcm divisible by lm(f)");
    let sg = lcm.div(gm).expect("lcm divisible by lm(g)");
    // a*x^sf*f - b*x^sg*g; reuse combine by pre-shifting f
    let shifted_f = OrdPoly {
        terms: f
            .terms
            .iter()
            .map(|(m, c)| (m.mul(&sf), c.clone()))
            .collect(),
    };
    combine(&shifted_f, &a, g, &b, &sg, ord)
}

#[derive(PartialEq, Eq)]
struct PairKey {
    degree: u64,
    lcm: Vec<u32>,
    i: usize,
    j: usize,
}

impl Ord for PairKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.lcm.cmp(&other.lcm))
            .then_with(|| (self.i, self.j).cmp(&(other.i, other.j)))
    }
}

impl PartialOrd for PairKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Reduced Groebner basis of the given generators: monic, mutually reduced,
/// sorted descending by leading monomial.
pub(crate) fn groebner_basis(
    ring: &RingContext,
    generators: &[Polynomial],
    ord: &TermOrder,
) -> Vec<Polynomial> {
    let mut basis: Vec<OrdPoly> = Vec::new();
    for p in generators {
        if p.is_zero() {
            continue;
        }
        let q = reduce(OrdPoly::from_polynomial(p, ord), &basis, ord);
        if !q.is_zero() {
            basis.push(q);
        }
    }

    let mut queue: BinaryHeap<Reverse<PairKey>> = BinaryHeap::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let push_pair = |queue: &mut BinaryHeap<Reverse<PairKey>>,
                         pending: &mut HashSet<(usize, usize)>,
                         basis: &[OrdPoly],
                         i: usize,
                         j: usize| {
        let lcm = basis[i].leading().0.lcm(&basis[j].leading().0);
        pending.insert((i, j));
        queue.push(Reverse(PairKey {
            degree: lcm.total_degree(),
            lcm: lcm.0,
            i,
            j,
        }));
    };

    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            push_pair(&mut queue, &mut pending, &basis, i, j);
        }
    }

    while let Some(Reverse(key)) = queue.pop() {
        let (i, j) = (key.i, key.j);
        if !pending.remove(&(i, j)) {
            continue;
        }
        let lm_i = &basis[i].leading().0;
        let lm_j = &basis[j].leading().0;
        let lcm = lm_i.lcm(lm_j);
        // product criterion: coprime leading monomials
        if lcm == lm_i.mul(lm_j) {
            continue;
        }
        // chain criterion: some k divides the lcm and both companion pairs
        // are already treated
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading().0.divides(&lcm)
                && !pending.contains(&key_of(i, k))
                && !pending.contains(&key_of(j, k))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], ord);
        let r = reduce(s, &basis, ord);
        if r.is_zero() {
            continue;
        }
        basis.push(r);
        let t = basis.len() - 1;
        for k in 0..t {
            push_pair(&mut queue, &mut pending, &basis, k, t);
        }
    }

    interreduce(ring, basis, ord)
}

fn key_of(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn interreduce(ring: &RingContext, mut basis: Vec<OrdPoly>, ord: &TermOrder) -> Vec<Polynomial> {
    // drop elements whose leading monomial is divisible by another's
    let mut keep: Vec<bool> = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let mi = &basis[i].leading().0;
            let mj = &basis[j].leading().0;
            if mj.divides(mi) && (mi != mj || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut kept: Vec<OrdPoly> = basis
        .drain(..)
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(p))
        .collect();

    // tail-reduce every element against the others
    loop {
        let mut changed = false;
        for i in 0..kept.len() {
            let others: Vec<OrdPoly> = kept
                .iter()
                .enumerate()
                .filter_map(|(j, p)| (j != i).then(|| p.clone()))
                .collect();
            let reduced = reduce(kept[i].clone(), &others, ord);
            if reduced.terms != kept[i].terms {
                changed = true;
                kept[i] = reduced;
            }
        }
        kept.retain(|p| !p.is_zero());
        if !changed {
            break;
        }
    }

    kept.sort_by(|a, b| ord.cmp(&b.leading().0, &a.leading().0));
    kept.iter()
        .map(|p| {
            p.to_polynomial(ring)
                .monic(ord)
                .expect("nonzero basis element")
        })
        .collect()
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
    fn principal_monomial_ideal() {
        let r = ring(&["x"]);
        let gb = groebner_basis(&r, &[p("x", &r)], &TermOrder::Lex);
        assert_eq!(gb, vec![p("x", &r)]);
    }

    #[test]
    fn circle_and_line() {
        // hand S-polynomial: S(x^2+y^2-1, x-y) reduces to 2y^2-1
        let r = ring(&["x", "y"]);
        let gb = groebner_basis(
            &r,
            &[p("x^2 + y^2 - 1", &r), p("x - y", &r)],
            &TermOrder::Lex,
        );
        assert_eq!(gb, vec![p("x - y", &r), p("y^2 - 1/2", &r)]);
    }

    #[test]
    fn unit_ideal_detection() {
        let r = ring(&["x"]);
        let gb = groebner_basis(&r, &[p("x", &r), p("x + 1", &r)], &TermOrder::GrevLex);
        assert_eq!(gb, vec![Polynomial::one(&r)]);
    }

    #[test]
    fn zero_generators_are_ignored(){
        let r = ring(&["x", "y"]);
        let gb = groebner_basis(&r, &[Polynomial::zero(&r), p("y", &r)], &TermOrder::GrevLex);
        assert_eq!(gb, vec![p("y", &r)]);
    }

    #[test]
    fn reduced_basis_is_mutually_reduced() {
        let r = ring(&["x", "y", "z"]);
        let gb = groebner_basis(
            &r,
            &[p("x^2 + y", &r), p("x*y - z", &r), p("y^2 + x*z", &r)],
            &TermOrder::GrevLex,
        );
        for (i, g) in gb.iter().enumerate() {
            for (j, h) in gb.iter().enumerate() {
                if i == j {
                    continue;
                }
                let hm = h.leading_monomial(&TermOrder::GrevLex).unwrap();
                for (m, _) in g.terms() {
                    assert!(!hm.divides(m), "basis not reduced: {h} divides a term of {g}");
                }
            }
        }
    }
}
