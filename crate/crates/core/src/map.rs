//! Polynomial maps between affine spaces.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::RingContext;

/// A morphism `A^N -> A^n`: one coordinate polynomial in the domain
/// variables per codomain variable.
#[derive(Clone, PartialEq, Eq)]
pub struct PolynomialMap {
    domain: RingContext,
    codomain: RingContext,
    coordinates: Vec<Polynomial>,
}

impl PolynomialMap {
    pub fn new(
        domain: &RingContext,
        codomain: &RingContext,
        coordinates: Vec<Polynomial>,
    ) -> Result<Self> {
        if coordinates.len() != codomain.arity() {
            return Err(Error::InvalidArgument(format!(
                "{} coordinates for a codomain of dimension {}",
                coordinates.len(),
                codomain.arity()
            )));
        }
        for c in &coordinates {
            c.ring().expect_same(domain, "map coordinate")?;
        }
        Ok(PolynomialMap {
            domain: domain.clone(),
            codomain: codomain.clone(),
            coordinates,
        })
    }

    pub fn identity(ring: &RingContext, codomain: &RingContext) -> Result<Self> {
        if ring.arity() != codomain.arity() {
            return Err(Error::InvalidArgument(
                "identity requires equal dimensions".into(),
            ));
        }
        let coords = ring
            .variables()
            .iter()
            .map(|v| Polynomial::variable(ring, v))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, codomain, coords)
    }

    /// The constant map `A^0 -> A^n` at `point`.
    pub fn constant(codomain: &RingContext, point: &[BigRational]) -> Result<Self> {
        let domain = RingContext::new(Vec::<String>::new())?;
        if point.len() != codomain.arity() {
            return Err(Error::InvalidArgument(
                "constant point arity mismatch".into(),
            ));
        }
        let coords = point
            .iter()
            .map(|c| Polynomial::constant(&domain, c.clone()))
            .collect();
        Self::new(&domain, codomain, coords)
    }

    pub fn domain(&self) -> &RingContext {
        &self.domain
    }

    pub fn codomain(&self) -> &RingContext {
        &self.codomain
    }

    pub fn coordinates(&self) -> &[Polynomial] {
        &self.coordinates
    }

    /// Composition `self ∘ inner`: substitutes `inner`'s coordinates for
    /// this map's domain variables.
    pub fn compose(&self, inner: &PolynomialMap) -> Result<PolynomialMap> {
        inner
            .codomain
            .expect_same(&self.domain, "map composition")?;
        let mut assignment = BTreeMap::new();
        for (v, p) in self.domain.variables().iter().zip(&inner.coordinates) {
            assignment.insert(v.clone(), p.clone());
        }
        let coords = self
            .coordinates
            .iter()
            .map(|c| c.substitute(&inner.domain, &assignment))
            .collect::<Result<Vec<_>>>()?;
        PolynomialMap::new(&inner.domain, &self.codomain, coords)
    }

    pub fn evaluate(&self, point: &[BigRational]) -> Result<Vec<BigRational>> {
        self.coordinates
            .iter()
            .map(|c| c.evaluate(point))
            .collect()
    }

    /// Maximum total degree over the coordinates (0 for constant maps).
    pub fn total_degree(&self) -> u64 {
        self.coordinates
            .iter()
            .filter_map(|c| c.total_degree())
            .max()
            .unwrap_or(0)
    }

    /// Symbolic identity check against the identity map.
    pub fn is_identity(&self) -> bool {
        if self.domain.arity() != self.codomain.arity() {
            return false;
        }
        self.coordinates
            .iter()
            .zip(self.domain.variables())
            .all(|(c, v)| {
                Polynomial::variable(&self.domain, v)
                    .map(|p| p == *c)
                    .unwrap_or(false)
            })
    }
}

impl fmt::Display for PolynomialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) -> ({})",
            self.domain.variables().join(", "),
            self.coordinates
                .iter()
                .map(|c| c.render())
                .collect::<Vec<_>>()
                .join(", ")
        )
    }
}

impl fmt::Debug for PolynomialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::poly::int;

    #[test]
    fn composition_substitutes() {
        let zr = RingContext::new(vec!["z"]).unwrap();
        let mid = RingContext::new(vec!["u", "v"]).unwrap();
        let wr = RingContext::new(vec!["w"]).unwrap();
        let inner = PolynomialMap::new(
            &zr,
            &mid,
            vec![
                parse_polynomial("z", &zr).unwrap(),
                parse_polynomial("z^2", &zr).unwrap(),
            ],
        )
        .unwrap();
        let outer = PolynomialMap::new(
            &mid,
            &wr,
            vec![parse_polynomial("u + v", &mid).unwrap()],
        )
        .unwrap();
        let both = outer.compose(&inner).unwrap();
        assert_eq!(both.coordinates()[0], parse_polynomial("z + z^2", &zr).unwrap());
        assert_eq!(both.evaluate(&[int(3)]).unwrap(), vec![int(12)]);
    }

    #[test]
    fn constant_map_has_empty_domain() {
        let wr = RingContext::new(vec!["w1", "w2"]).unwrap();
        let m = PolynomialMap::constant(&wr, &[int(1), int(0)]).unwrap();
        assert_eq!(m.domain().arity(), 0);
        assert_eq!(m.total_degree(), 0);
        assert_eq!(m.evaluate(&[]).unwrap(), vec![int(1), int(0)]);
    }
}
