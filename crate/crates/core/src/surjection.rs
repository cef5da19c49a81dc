//! Explicit surjections `A^N -> A^n \ Z` and the tools behind them:
//! one-parameter additive actions, their composition from a base point,
//! restriction to coordinate subvarieties, and automorphism conjugation.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::map::PolynomialMap;
use crate::order::TermOrder;
use crate::poly::{int, Polynomial};
use crate::ring::{Monomial, RingContext};
use crate::target::{ExponentSchedule, TargetVariety};

/// Domain names for the constructions, dodging codomain collisions by
/// appending underscores.
fn fresh_domain(codomain: &RingContext, desired: &[String]) -> Result<RingContext> {
    let mut names: Vec<String> = Vec::with_capacity(desired.len());
    for d in desired {
        let mut name = d.clone();
        while codomain.index_of(&name).is_some() || names.contains(&name) {
            name.push('_');
        }
        names.push(name);
    }
    RingContext::new(names)
}

/// Substitution sending `w_{i+1} -> a_i` (the codomain variables after the
/// first onto the given domain variables).
fn q_at(
    q: &Polynomial,
    target: &TargetVariety,
    domain: &RingContext,
    a_names: &[String],
) -> Result<Polynomial> {
    let mut assignment = BTreeMap::new();
    for (i, a) in a_names.iter().enumerate() {
        assignment.insert(
            target.ring().variable(i + 1).to_string(),
            Polynomial::variable(domain, a)?,
        );
    }
    q.substitute(domain, &assignment)
}

fn power_of(var: &Polynomial, exp: u64) -> Result<Polynomial> {
    let e = u32::try_from(exp)
        .map_err(|_| Error::InvalidArgument("schedule exponent exceeds u32".into()))?;
    Ok(var.pow(e))
}

/// The full-parameter surjection `A^{m+2n-2} -> A^n \ Z`, with domain
/// variables ordered `(a_1..a_{n-1}, c_1..c_m, b_1..b_{n-1})` and the base
/// point `(1, 0, …, 0)` baked in:
/// `(1 + Σ_j c_j q_j(a), a_1 + b_1 w_1, …, a_{n-1} + b_{n-1} w_1)`,
/// `w_1` standing for the first coordinate.
pub fn full_surjection(target: &TargetVariety) -> Result<PolynomialMap> {
    let n = target.ambient_dimension();
    let m = target.generator_count();
    let mut desired: Vec<String> = (1..n).map(|i| format!("a{i}")).collect();
    desired.extend((1..=m).map(|j| format!("c{j}")));
    desired.extend((1..n).map(|i| format!("b{i}")));
    let domain = fresh_domain(target.ring(), &desired)?;
    let names = domain.variables();
    let a_names = &names[..n - 1];
    let c_names = &names[n - 1..n - 1 + m];
    let b_names = &names[n - 1 + m..];

    let mut first = Polynomial::one(&domain);
    for (c, q) in c_names.iter().zip(target.q_list()) {
        let cq = Polynomial::variable(&domain, c)?
            .checked_mul(&q_at(q, target, &domain, a_names)?)?;
        first = first + cq;
    }
    let mut coords = vec![first.clone()];
    for (a, b) in a_names.iter().zip(b_names) {
        let shift = Polynomial::variable(&domain, b)?.checked_mul(&first)?;
        coords.push(Polynomial::variable(&domain, a)? + shift);
    }
    PolynomialMap::new(&domain, target.ring(), coords)
}

/// The restriction of [`full_surjection`] to `c_j = c^{(j-1)(1+p_{n-1})}`,
/// `b_i = c^{p_{i-1}}`: a map `A^n -> A^n \ Z` of degree at most
/// `m * p_{n-1}`, for any target.
pub fn restrict_theorem_main(target: &TargetVariety) -> Result<PolynomialMap> {
    let n = target.ambient_dimension();
    let m = target.generator_count();
    let schedule = ExponentSchedule::new(target.max_degree(), n)?;
    let mut desired: Vec<String> = (1..n).map(|i| format!("a{i}")).collect();
    desired.push("c".to_string());
    let domain = fresh_domain(target.ring(), &desired)?;
    let names = domain.variables();
    let a_names = &names[..n - 1];
    let c = Polynomial::variable(&domain, &names[n - 1])?;

    let mut first = Polynomial::one(&domain);
    for (j, q) in target.q_list().iter().enumerate() {
        let exponent = if j == 0 {
            1
        } else {
            (j as u64) * (1 + schedule.p(n - 1))
        };
        first = first
            + power_of(&c, exponent)?.checked_mul(&q_at(q, target, &domain, a_names)?)?;
    }
    let mut coords = vec![first.clone()];
    for (i, a) in a_names.iter().enumerate() {
        let shift = power_of(&c, schedule.p(i))?.checked_mul(&first)?;
        coords.push(Polynomial::variable(&domain, a)? + shift);
    }
    let _ = m;
    PolynomialMap::new(&domain, target.ring(), coords)
}

/// The lower-degree restriction `c_j = c^{(j-1)(d+1)+1}`, `b_i = 0` for
/// `i < n-1`, `b_{n-1} = c`; requires every `q_j` to carry a pure
/// `w_n^{d_j}` monomial. Degree at most `m(d+1)+1`.
pub fn restrict_pure_powers(target: &TargetVariety) -> Result<PolynomialMap> {
    if let Err(j) = target.pure_power_check() {
        let n = target.ambient_dimension();
        return Err(Error::MissingPurePower {
            index: j + 1,
            variable: target.ring().variable(n - 1).to_string(),
            degree: target.degrees()[j],
        });
    }
    let n = target.ambient_dimension();
    let d = target.max_degree();
    let mut desired: Vec<String> = (1..n).map(|i| format!("a{i}")).collect();
    desired.push("c".to_string());
    let domain = fresh_domain(target.ring(), &desired)?;
    let names = domain.variables();
    let a_names = &names[..n - 1];
    let c = Polynomial::variable(&domain, &names[n - 1])?;

    let mut first = Polynomial::one(&domain);
    for (j, q) in target.q_list().iter().enumerate() {
        let exponent = (j as u64) * (d + 1) + 1;
        first = first
            + power_of(&c, exponent)?.checked_mul(&q_at(q, target, &domain, a_names)?)?;
    }
    let mut coords = vec![first.clone()];
    for a in &a_names[..n - 2] {
        coords.push(Polynomial::variable(&domain, a)?);
    }
    let last = Polynomial::variable(&domain, &a_names[n - 2])? + c.checked_mul(&first)?;
    coords.push(last);
    PolynomialMap::new(&domain, target.ring(), coords)
}

/// An invertible triangular change of coordinates together with the
/// transformed target.
#[derive(Clone, Debug)]
pub struct LinearChange {
    pub tau: PolynomialMap,
    pub tau_inv: PolynomialMap,
    pub transformed: TargetVariety,
}

/// Random shear `w_i -> w_i + A_i w_n` (middle variables only) making every
/// transformed generator carry a pure `w_n^{d_j}` monomial. The first
/// attempt uses `A = 0`, so already-pure targets pass through unchanged;
/// later attempts draw `A_i` from the integers in `[-10, 10]`.
pub fn generic_linear_change(target: &TargetVariety, seed: u64) -> Result<LinearChange> {
    const ATTEMPTS: u32 = 32;
    let ring = target.ring();
    let n = target.ambient_dimension();
    let last = ring.variable(n - 1).to_string();
    let middle: Vec<String> = (1..n - 1).map(|i| ring.variable(i).to_string()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for attempt in 0..ATTEMPTS {
        let coeffs: Vec<i64> = if attempt == 0 {
            vec![0; middle.len()]
        } else {
            middle.iter().map(|_| rng.gen_range(-10..=10)).collect()
        };
        let shear = |sign: i64| -> Result<PolynomialMap> {
            let mut coords = Vec::with_capacity(n);
            for (i, v) in ring.variables().iter().enumerate() {
                let mut p = Polynomial::variable(ring, v)?;
                if i >= 1 && i + 1 < n {
                    let a = int(sign * coeffs[i - 1]);
                    p = p + Polynomial::variable(ring, &last)?.scale(&a);
                }
                coords.push(p);
            }
            PolynomialMap::new(ring, ring, coords)
        };
        let tau = shear(1)?;
        let tau_inv = shear(-1)?;
        let mut back = BTreeMap::new();
        for (v, p) in ring.variables().iter().zip(tau_inv.coordinates()) {
            back.insert(v.clone(), p.clone());
        }
        let transformed_q: Vec<Polynomial> = target
            .q_list()
            .iter()
            .map(|q| q.substitute(ring, &back))
            .collect::<Result<Vec<_>>>()?;
        let candidate = TargetVariety::new(ring, transformed_q)?;
        if candidate.pure_power_check().is_ok() {
            return Ok(LinearChange {
                tau,
                tau_inv,
                transformed: candidate,
            });
        }
    }
    Err(Error::GenericityFailure(ATTEMPTS))
}

/// A one-parameter additive action on `A^n`: polynomial coordinates in the
/// parameter and the space variables, the identity at parameter 0 and
/// additive under parameter addition (both checked symbolically at
/// construction). The fixed locus is generated by the coefficients of the
/// positive parameter powers.
#[derive(Clone, Debug)]
pub struct AdditiveAction {
    parameter: String,
    space: RingContext,
    formula_ring: RingContext,
    formula: Vec<Polynomial>,
    fixed_locus: Ideal,
}

impl AdditiveAction {
    /// `formula` lives in the ring `[parameter, space variables]`.
    pub fn new(space: &RingContext, parameter: &str, formula: Vec<Polynomial>) -> Result<Self> {
        if space.index_of(parameter).is_some() {
            return Err(Error::InvalidArgument(format!(
                "parameter `{parameter}` collides with a space variable"
            )));
        }
        let mut names = vec![parameter.to_string()];
        names.extend(space.variables().iter().cloned());
        let formula_ring = RingContext::new(names)?;
        if formula.len() != space.arity() {
            return Err(Error::InvalidArgument(
                "one formula coordinate per space variable".into(),
            ));
        }
        for f in &formula {
            f.ring().expect_same(&formula_ring, "action formula")?;
        }

        let action = AdditiveAction {
            parameter: parameter.to_string(),
            space: space.clone(),
            formula_ring,
            formula,
            fixed_locus: Ideal::zero(space),
        };
        action.check_group_law()?;
        let fixed_locus = action.derive_fixed_locus()?;
        Ok(AdditiveAction {
            fixed_locus,
            ..action
        })
    }

    pub fn parameter(&self) -> &str {
        &self.parameter
    }

    pub fn space(&self) -> &RingContext {
        &self.space
    }

    pub fn formula(&self) -> &[Polynomial] {
        &self.formula
    }

    pub fn formula_ring(&self) -> &RingContext {
        &self.formula_ring
    }

    pub fn fixed_locus(&self) -> &Ideal {
        &self.fixed_locus
    }

    /// Apply with the given parameter value and point coordinates, all in
    /// an arbitrary common ring.
    pub fn apply(
        &self,
        target: &RingContext,
        parameter_value: &Polynomial,
        point: &[Polynomial],
    ) -> Result<Vec<Polynomial>> {
        let mut assignment = BTreeMap::new();
        assignment.insert(self.parameter.clone(), parameter_value.clone());
        for (v, p) in self.space.variables().iter().zip(point) {
            assignment.insert(v.clone(), p.clone());
        }
        self.formula
            .iter()
            .map(|f| f.substitute(target, &assignment))
            .collect()
    }

    fn check_group_law(&self) -> Result<()> {
        // identity at parameter 0
        let zero_sub = {
            let mut m = BTreeMap::new();
            m.insert(
                self.parameter.clone(),
                Polynomial::zero(&self.formula_ring),
            );
            m
        };
        for (f, v) in self.formula.iter().zip(self.space.variables()) {
            let at_zero = f.substitute(&self.formula_ring, &zero_sub)?;
            let var = Polynomial::variable(&self.formula_ring, v)?;
            if at_zero != var {
                return Err(Error::GroupLawViolation(format!(
                    "phi(0, w) != w in coordinate {v}: got {at_zero}"
                )));
            }
        }

        // phi(s, phi(t, w)) = phi(s + t, w) in k[s, t, w]
        let s = self.formula_ring.fresh_name("s");
        let t = self.formula_ring.fresh_name("t");
        let mut names = vec![s.clone(), t.clone()];
        names.extend(self.space.variables().iter().cloned());
        let big = RingContext::new(names)?;
        let svar = Polynomial::variable(&big, &s)?;
        let tvar = Polynomial::variable(&big, &t)?;
        let w: Vec<Polynomial> = self
            .space
            .variables()
            .iter()
            .map(|v| Polynomial::variable(&big, v))
            .collect::<Result<Vec<_>>>()?;
        let inner = self.apply(&big, &tvar, &w)?;
        let nested = self.apply(&big, &svar, &inner)?;
        let joint = self.apply(&big, &(svar.checked_add(&tvar)?), &w)?;
        for ((lhs, rhs), v) in nested.iter().zip(&joint).zip(self.space.variables()) {
            if lhs != rhs {
                return Err(Error::GroupLawViolation(format!(
                    "phi(s, phi(t, w)) != phi(s+t, w) in coordinate {v}"
                )));
            }
        }
        Ok(())
    }

    /// Fixed locus: generated by the coefficients of every positive power
    /// of the parameter across `phi(t, w) - w`.
    fn derive_fixed_locus(&self) -> Result<Ideal> {
        let pidx = 0usize; // parameter is the first formula-ring variable
        let mut gens: Vec<Polynomial> = Vec::new();
        for (f, v) in self.formula.iter().zip(self.space.variables()) {
            let delta = f.checked_sub(&Polynomial::variable(&self.formula_ring, v)?)?;
            let mut by_power: BTreeMap<u32, Polynomial> = BTreeMap::new();
            for (mono, coeff) in delta.terms() {
                let k = mono.exponents()[pidx];
                if k == 0 {
                    continue;
                }
                let mut exps = mono.exponents().to_vec();
                exps[pidx] = 0;
                by_power
                    .entry(k)
                    .or_insert_with(|| Polynomial::zero(&self.formula_ring))
                    .add_term(Monomial(exps), coeff.clone());
            }
            for (_, g) in by_power {
                let g = g.embed(&self.space)?;
                gens.push(g.monic(&TermOrder::GrevLex)?);
            }
            let _ = v;
        }
        Ideal::new(&self.space, gens)
    }
}

/// The orbit map `A^N -> A^n` of a composed action sequence from `p`:
/// coordinates of `(G_N(t_N, ·) ∘ … ∘ G_1(t_1, ·))(p)` in fresh parameters
/// `t_1..t_N`. Colliding parameter names are renamed internally.
pub fn compose_actions(
    actions: &[AdditiveAction],
    point: &[BigRational],
) -> Result<PolynomialMap> {
    let space = match actions.first() {
        Some(a) => a.space().clone(),
        None => {
            return Err(Error::InvalidArgument(
                "empty action list: use PolynomialMap::constant for the constant map".into(),
            ))
        }
    };
    for a in actions {
        a.space().expect_same(&space, "action composition")?;
    }
    if point.len() != space.arity() {
        return Err(Error::InvalidArgument(
            "base point arity must match the action space".into(),
        ));
    }
    let mut names: Vec<String> = Vec::with_capacity(actions.len());
    for a in actions {
        let mut name = a.parameter().to_string();
        while names.contains(&name) || space.index_of(&name).is_some() {
            name.push('_');
        }
        names.push(name);
    }
    let domain = RingContext::new(names.clone())?;
    let mut coords: Vec<Polynomial> = point
        .iter()
        .map(|c| Polynomial::constant(&domain, c.clone()))
        .collect();
    for (a, name) in actions.iter().zip(&names) {
        let t = Polynomial::variable(&domain, name)?;
        coords = a.apply(&domain, &t, &coords)?;
    }
    PolynomialMap::new(&domain, &space, coords)
}

/// The action shifting `var` by `t * f(other coordinates)`, where `f` is a
/// minimal-degree generator of the elimination ideal of `z_ideal` with
/// `var` removed — the ideal of the projection of `Z` to the hyperplane
/// `var = 0`. Fails when the projection is dominant.
pub fn winkelmann_generator(z_ideal: &Ideal, var: &str) -> Result<AdditiveAction> {
    let space = z_ideal.ring().clone();
    space.index_of_checked(var)?;
    if z_ideal.contains_one()? {
        return Err(Error::InvalidArgument(
            "the target ideal is the unit ideal".into(),
        ));
    }
    let dim = z_ideal.dimension()?;
    if dim > space.arity() as i64 - 2 {
        return Err(Error::InvalidArgument(format!(
            "target must have codimension >= 2 (dimension {dim} in A^{})",
            space.arity()
        )));
    }
    let projected = z_ideal.eliminate(&[var])?;
    let gb = projected.groebner_basis(&TermOrder::GrevLex)?;
    if gb.is_empty() {
        return Err(Error::NoGenerator(var.to_string()));
    }
    // minimal total degree, ties broken by the smaller leading monomial
    let f = gb
        .iter()
        .min_by(|a, b| {
            let da = a.total_degree().expect("basis nonzero");
            let db = b.total_degree().expect("basis nonzero");
            da.cmp(&db).then_with(|| {
                let la = a.leading_monomial(&TermOrder::GrevLex).expect("nonzero");
                let lb = b.leading_monomial(&TermOrder::GrevLex).expect("nonzero");
                la.cmp(&lb)
            })
        })
        .expect("nonempty basis");

    let parameter = space.fresh_name("t");
    let mut names = vec![parameter.clone()];
    names.extend(space.variables().iter().cloned());
    let formula_ring = RingContext::new(names)?;
    let shift = Polynomial::variable(&formula_ring, &parameter)?
        .checked_mul(&f.embed(&formula_ring)?)?;
    let formula = space
        .variables()
        .iter()
        .map(|v| {
            let p = Polynomial::variable(&formula_ring, v)?;
            Ok(if v == var { p + shift.clone() } else { p })
        })
        .collect::<Result<Vec<_>>>()?;
    AdditiveAction::new(&space, &parameter, formula)
}

/// A substitution onto a coordinate subvariety `H ≅ A^k`: some domain
/// variables of a map are replaced by polynomials in a smaller free
/// variable set.
#[derive(Clone, Debug)]
pub struct Restriction {
    new_domain: RingContext,
    assignments: BTreeMap<String, Polynomial>,
}

impl Restriction {
    pub fn new(
        new_domain: &RingContext,
        assignments: BTreeMap<String, Polynomial>,
    ) -> Result<Self> {
        for (key, value) in &assignments {
            value.ring().expect_same(new_domain, "restriction value")?;
            if new_domain.index_of(key).is_some() {
                return Err(Error::InvalidArgument(format!(
                    "substituted variable `{key}` cannot remain free in the restricted domain"
                )));
            }
        }
        Ok(Restriction {
            new_domain: new_domain.clone(),
            assignments,
        })
    }

    pub fn new_domain(&self) -> &RingContext {
        &self.new_domain
    }

    pub fn assignments(&self) -> &BTreeMap<String, Polynomial> {
        &self.assignments
    }
}

/// Coordinate-wise substitution of a map onto the subvariety described by
/// `restriction`.
pub fn restrict_to_subvariety(
    map: &PolynomialMap,
    restriction: &Restriction,
) -> Result<PolynomialMap> {
    for key in restriction.assignments.keys() {
        map.domain().index_of_checked(key)?;
    }
    for v in restriction.new_domain.variables() {
        if map.codomain().index_of(v).is_some() {
            return Err(Error::InvalidArgument(format!(
                "restricted domain variable `{v}` collides with a codomain variable"
            )));
        }
    }
    let coords = map
        .coordinates()
        .iter()
        .map(|c| c.substitute(&restriction.new_domain, &restriction.assignments))
        .collect::<Result<Vec<_>>>()?;
    PolynomialMap::new(&restriction.new_domain, map.codomain(), coords)
}

/// `tau_inv ∘ map`, after checking symbolically that `tau ∘ tau_inv` and
/// `tau_inv ∘ tau` are the identity.
pub fn conjugate_by_automorphism(
    map: &PolynomialMap,
    tau: &PolynomialMap,
    tau_inv: &PolynomialMap,
) -> Result<PolynomialMap> {
    if !tau.compose(tau_inv)?.is_identity() || !tau_inv.compose(tau)?.is_identity() {
        return Err(Error::InvalidArgument(
            "tau and tau_inv are not mutually inverse".into(),
        ));
    }
    tau_inv.compose(map)
}

/// The theorem-main substitution schedule, as a [`Restriction`] on the
/// domain of [`full_surjection`]: `c_1 -> c`, `c_j -> c^{(j-1)(1+p_{n-1})}`,
/// `b_i -> c^{p_{i-1}}`.
pub fn theorem_main_schedule(
    target: &TargetVariety,
    psi_domain: &RingContext,
) -> Result<Restriction> {
    let n = target.ambient_dimension();
    let m = target.generator_count();
    let schedule = ExponentSchedule::new(target.max_degree(), n)?;
    schedule_restriction(psi_domain, target, n, m, |j| {
        if j == 0 {
            1
        } else {
            (j as u64) * (1 + schedule.p(n - 1))
        }
    }, |i| Some(schedule.p(i)))
}

/// The pure-powers substitution schedule: `c_j -> c^{(j-1)(d+1)+1}`,
/// `b_i -> 0` for `i < n-1`, `b_{n-1} -> c`.
pub fn pure_powers_schedule(
    target: &TargetVariety,
    psi_domain: &RingContext,
) -> Result<Restriction> {
    let n = target.ambient_dimension();
    let m = target.generator_count();
    let d = target.max_degree();
    schedule_restriction(psi_domain, target, n, m, |j| (j as u64) * (d + 1) + 1, |i| {
        if i + 2 == n {
            Some(1)
        } else {
            None
        }
    })
}

fn schedule_restriction(
    psi_domain: &RingContext,
    target: &TargetVariety,
    n: usize,
    m: usize,
    c_exponent: impl Fn(usize) -> u64,
    b_exponent: impl Fn(usize) -> Option<u64>,
) -> Result<Restriction> {
    let names = psi_domain.variables();
    let a_names = &names[..n - 1];
    let c_names = &names[n - 1..n - 1 + m];
    let b_names = &names[n - 1 + m..];
    let mut desired: Vec<String> = a_names.to_vec();
    desired.push("c".to_string());
    let new_domain = fresh_domain(target.ring(), &desired)?;
    let c = Polynomial::variable(&new_domain, &new_domain.variables()[n - 1])?;
    let mut assignments = BTreeMap::new();
    for (j, cj) in c_names.iter().enumerate() {
        assignments.insert(cj.clone(), power_of(&c, c_exponent(j))?);
    }
    for (i, bi) in b_names.iter().enumerate() {
        let value = match b_exponent(i) {
            Some(e) => power_of(&c, e)?,
            None => Polynomial::zero(&new_domain),
        };
        assignments.insert(bi.clone(), value);
    }
    Restriction::new(&new_domain, assignments)
}

/// Convenience: a rational point from integer coordinates.
pub fn point(coords: &[i64]) -> Vec<BigRational> {
    coords.iter().map(|&c| int(c)).collect()
}

/// True when the composed map is constant (all coordinates constant).
pub fn is_constant_map(map: &PolynomialMap) -> bool {
    map.coordinates().iter().all(Polynomial::is_constant)
}

/// Evaluate whether a point lies on the target (all defining equations
/// vanish).
pub fn on_target(target: &TargetVariety, p: &[BigRational]) -> Result<bool> {
    for g in target.ideal().generators() {
        if !g.evaluate(p)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
