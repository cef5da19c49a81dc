//! Multivariate polynomial gcd and squarefree parts.
//!
//! The gcd recurses on the highest occurring variable: contents are gcds of
//! the univariate-view coefficients, primitive parts run through the
//! subresultant polynomial remainder sequence.

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::order::TermOrder;
use crate::poly::Polynomial;
use crate::ring::Monomial;

/// Exact division; errors if `d` does not divide `p`.
pub fn divide_exact(p: &Polynomial, d: &Polynomial) -> Result<Polynomial> {
    p.ring().expect_same(d.ring(), "exact division")?;
    if d.is_zero() {
        return Err(Error::InvalidArgument("division by zero polynomial".into()));
    }
    let ord = TermOrder::GrevLex;
    let (dm, dc) = d.leading_term(&ord)?;
    let mut rem = p.clone();
    let mut quot = Polynomial::zero(p.ring());
    while !rem.is_zero() {
        let (rm, rc) = rem.leading_term(&ord)?;
        let shift = rm.div(&dm).ok_or_else(|| {
            Error::InvalidArgument("inexact polynomial division".into())
        })?;
        let c = rc / &dc;
        quot.add_term(shift.clone(), c.clone());
        rem = rem.checked_sub(&d.mul_term(&shift, &c))?;
    }
    Ok(quot)
}

/// Highest variable index occurring in `p`, if any.
fn main_variable(p: &Polynomial) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (m, _) in p.terms() {
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 && best.map_or(true, |b| i > b) {
                best = Some(i);
            }
        }
    }
    best
}

fn degree_in(p: &Polynomial, var: usize) -> u32 {
    p.terms()
        .map(|(m, _)| m.exponents()[var])
        .max()
        .unwrap_or(0)
}

/// Coefficient of `var^k`, as a polynomial in the same ring.
fn coefficient_in(p: &Polynomial, var: usize, k: u32) -> Polynomial {
    let mut out = Polynomial::zero(p.ring());
    for (m, c) in p.terms() {
        if m.exponents()[var] == k {
            let mut e = m.exponents().to_vec();
            e[var] = 0;
            out.add_term(Monomial(e), c.clone());
        }
    }
    out
}

fn leading_coefficient_in(p: &Polynomial, var: usize) -> Polynomial {
    coefficient_in(p, var, degree_in(p, var))
}

/// Content of `p` viewed as univariate in `var`.
fn content_in(p: &Polynomial, var: usize) -> Result<Polynomial> {
    let mut content = Polynomial::zero(p.ring());
    for k in 0..=degree_in(p, var) {
        let c = coefficient_in(p, var, k);
        if !c.is_zero() {
            content = gcd(&content, &c)?;
            if content.is_constant() {
                break;
            }
        }
    }
    Ok(content)
}

/// Pseudo-remainder of `a` by `b` in `var`: the remainder of
/// `lc(b)^(deg a - deg b + 1) * a` under univariate division.
fn pseudo_remainder(a: &Polynomial, b: &Polynomial, var: usize) -> Result<Polynomial> {
    let db = degree_in(b, var);
    let lcb = leading_coefficient_in(b, var);
    let mut r = a.clone();
    let mut steps = degree_in(a, var).saturating_sub(db) + 1;
    while !r.is_zero() && degree_in(&r, var) >= db && steps > 0 {
        let dr = degree_in(&r, var);
        let lcr = leading_coefficient_in(&r, var);
        let mut shift = vec![0u32; r.ring().arity()];
        shift[var] = dr - db;
        let shifted = b.mul_term(&Monomial(shift), &BigRational::one());
        r = r.checked_mul(&lcb)?.checked_sub(&shifted.checked_mul(&lcr)?)?;
        steps -= 1;
    }
    // each division step contributed one lc(b) factor; pad to lc(b)^(δ+1)
    for _ in 0..steps {
        r = r.checked_mul(&lcb)?;
    }
    Ok(r)
}

/// Normalize so the grevlex-leading coefficient is 1.
fn normalized(p: &Polynomial) -> Result<Polynomial> {
    if p.is_zero() {
        Ok(p.clone())
    } else {
        p.monic(&TermOrder::GrevLex)
    }
}

/// Gcd of two polynomials, monic-normalized; gcd(0, 0) = 0.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    a.ring().expect_same(b.ring(), "gcd")?;
    if a.is_zero() {
        return normalized(b);
    }
    if b.is_zero() {
        return normalized(a);
    }
    if a.is_constant() || b.is_constant() {
        return Ok(Polynomial::one(a.ring()));
    }
    let var = main_variable(a)
        .max(main_variable(b))
        .expect("nonconstant inputs have a main variable");

    if degree_in(a, var) == 0 || degree_in(b, var) == 0 {
        // one input does not involve the joint main variable; the gcd is
        // the gcd of it with the other's content
        let (flat, tall) = if degree_in(a, var) == 0 { (a, b) } else { (b, a) };
        let content = content_in(tall, var)?;
        return gcd(flat, &content);
    }

    let content_a = content_in(a, var)?;
    let content_b = content_in(b, var)?;
    let content = gcd(&content_a, &content_b)?;
    let mut f = divide_exact(a, &content_a)?;
    let mut g = divide_exact(b, &content_b)?;
    if degree_in(&f, var) < degree_in(&g, var) {
        std::mem::swap(&mut f, &mut g);
    }

    // subresultant remainder sequence on the primitive parts
    let mut gcoef = Polynomial::one(a.ring());
    let mut h = Polynomial::one(a.ring());
    loop {
        let delta = degree_in(&f, var) - degree_in(&g, var);
        let r = pseudo_remainder(&f, &g, var)?;
        if r.is_zero() {
            let pp = divide_exact(&g, &content_in(&g, var)?)?;
            return normalized(&pp.checked_mul(&content)?);
        }
        if degree_in(&r, var) == 0 {
            // primitive parts are coprime in var
            return normalized(&content);
        }
        f = g;
        let mut divisor = gcoef.clone();
        for _ in 0..delta {
            divisor = divisor.checked_mul(&h)?;
        }
        g = divide_exact(&r, &divisor)?;
        gcoef = leading_coefficient_in(&f, var);
        h = match delta {
            0 => h,
            1 => gcoef.clone(),
            _ => {
                let mut num = Polynomial::one(a.ring());
                for _ in 0..delta {
                    num = num.checked_mul(&gcoef)?;
                }
                let mut den = Polynomial::one(a.ring());
                for _ in 0..(delta - 1) {
                    den = den.checked_mul(&h)?;
                }
                divide_exact(&num, &den)?
            }
        };
    }
}

/// Squarefree part: `f` divided by `gcd(f, ∂f/∂x_1, …)`, monic.
pub fn squarefree_part(f: &Polynomial) -> Result<Polynomial> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Ok(Polynomial::one(f.ring()));
    }
    let mut g = f.clone();
    for v in 0..f.ring().arity() {
        let name = f.ring().variable(v).to_string();
        if !f.mentions(&name) {
            continue;
        }
        let d = f.partial_derivative(&name)?;
        g = gcd(&g, &d)?;
        if g.is_constant() {
            break;
        }
    }
    normalized(&divide_exact(f, &g)?)
}
