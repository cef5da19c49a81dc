//! Target data: the subvariety `Z = V(w_1, q_1, …, q_m)` and the exponent
//! schedule used by the restricted constructions.

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poly::Polynomial;
use crate::ring::{Monomial, RingContext};

/// `Z = V(w_1, q_1, …, q_m)` inside `A^n`, where the `q_j` are nonconstant
/// polynomials in the variables after the first.
#[derive(Clone, Debug, PartialEq)]
pub struct TargetVariety {
    ring: RingContext,
    q_list: Vec<Polynomial>,
    degrees: Vec<u64>,
    max_degree: u64,
}

impl TargetVariety {
    /// Zero `q_j` are dropped; constant nonzero `q_j` (empty `Z`) and `q_j`
    /// mentioning the first variable are rejected.
    pub fn new(ring: &RingContext, q_list: Vec<Polynomial>) -> Result<Self> {
        if ring.arity() < 2 {
            return Err(Error::InvalidArgument(
                "the ambient space must have dimension at least 2".into(),
            ));
        }
        let first = ring.variable(0).to_string();
        let mut qs = Vec::new();
        for q in q_list {
            q.ring().expect_same(ring, "target generator")?;
            if q.is_zero() {
                continue;
            }
            if q.is_constant() {
                return Err(Error::InvalidArgument(
                    "a nonzero constant target generator defines the empty variety".into(),
                ));
            }
            if q.mentions(&first) {
                return Err(Error::InvalidArgument(format!(
                    "target generators must not mention the first variable `{first}`"
                )));
            }
            qs.push(q);
        }
        if qs.is_empty() {
            return Err(Error::InvalidArgument(
                "at least one nonzero target generator is required".into(),
            ));
        }
        let degrees: Vec<u64> = qs
            .iter()
            .map(|q| q.total_degree().expect("nonzero generator"))
            .collect();
        let max_degree = degrees.iter().copied().max().expect("nonempty");
        Ok(TargetVariety {
            ring: ring.clone(),
            q_list: qs,
            degrees,
            max_degree,
        })
    }

    pub fn from_sources(ring: &RingContext, sources: &[&str]) -> Result<Self> {
        let qs = sources
            .iter()
            .map(|s| {
                crate::parse::parse_polynomial(s, ring)
                    .map_err(|e| Error::InvalidArgument(e.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, qs)
    }

    pub fn ring(&self) -> &RingContext {
        &self.ring
    }

    /// Ambient dimension `n`.
    pub fn ambient_dimension(&self) -> usize {
        self.ring.arity()
    }

    /// Number of generators `m` (not counting the first coordinate).
    pub fn generator_count(&self) -> usize {
        self.q_list.len()
    }

    pub fn q_list(&self) -> &[Polynomial] {
        &self.q_list
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// `d = max_j deg(q_j)`.
    pub fn max_degree(&self) -> u64 {
        self.max_degree
    }

    /// The full defining ideal `(w_1, q_1, …, q_m)`.
    pub fn ideal(&self) -> Ideal {
        let mut gens = vec![Polynomial::variable(&self.ring, self.ring.variable(0))
            .expect("first variable exists")];
        gens.extend(self.q_list.iter().cloned());
        Ideal::new(&self.ring, gens).expect("generators live in the target ring")
    }

    /// Whether each `q_j` contains a nonzero monomial `w_n^{d_j}` in the
    /// last variable alone. Returns the first failing index otherwise.
    pub fn pure_power_check(&self) -> std::result::Result<(), usize> {
        let n = self.ring.arity();
        for (j, (q, &dj)) in self.q_list.iter().zip(&self.degrees).enumerate() {
            let mut exps = vec![0u32; n];
            exps[n - 1] = u32::try_from(dj).expect("degree fits u32");
            if q.coefficient(&Monomial(exps)) == num_rational::BigRational::from_integer(0.into())
            {
                return Err(j);
            }
        }
        Ok(())
    }
}

/// The exponents `p_0, …, p_{n-1}` with `p_k = d^k + d^{k-1} + … + 1`;
/// for `d = 1` this degenerates to `p_k = k + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentSchedule {
    degree: u64,
    values: Vec<u64>,
}

impl ExponentSchedule {
    pub fn new(degree: u64, length: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidArgument(
                "exponent schedule requires degree >= 1".into(),
            ));
        }
        let mut values = Vec::with_capacity(length);
        let mut prev: u64 = 0;
        for _ in 0..length {
            // p_k = d*p_{k-1} + 1
            let next = degree
                .checked_mul(prev)
                .and_then(|v| v.checked_add(1))
                .ok_or_else(|| {
                    Error::InvalidArgument("exponent schedule overflow".into())
                })?;
            values.push(next);
            prev = next;
        }
        Ok(ExponentSchedule { degree, values })
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// `p_k`.
    pub fn p(&self, k: usize) -> u64 {
        self.values[k]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn wring(n: usize) -> RingContext {
        RingContext::new((1..=n).map(|i| format!("w{i}")).collect()).unwrap()
    }

    #[test]
    fn schedule_matches_geometric_sums() {
        let s = ExponentSchedule::new(3, 3).unwrap();
        assert_eq!(s.values(), &[1, 4, 13]); // 1, 3+1, 9+3+1
        let s1 = ExponentSchedule::new(1, 4).unwrap();
        assert_eq!(s1.values(), &[1, 2, 3, 4]);
        for d in 1..6u64 {
            let s = ExponentSchedule::new(d, 6).unwrap();
            for k in 1..6 {
                assert_eq!(s.p(k), d * s.p(k - 1) + 1);
            }
            assert_eq!(s.p(0), 1);
        }
    }

    #[test]
    fn target_validation() {
        let r = wring(3);
        // zero generators dropped, constants rejected, w1 rejected
        let q = parse_polynomial("w2^2 - w3^3 - w3", &r).unwrap();
        let z = TargetVariety::new(&r, vec![Polynomial::zero(&r), q.clone()]).unwrap();
        assert_eq!(z.generator_count(), 1);
        assert_eq!(z.max_degree(), 3);
        assert_eq!(z.degrees(), &[3]);

        assert!(TargetVariety::new(&r, vec![Polynomial::one(&r)]).is_err());
        assert!(TargetVariety::new(&r, vec![Polynomial::zero(&r)]).is_err());
        let w1q = parse_polynomial("w1 - w2", &r).unwrap();
        assert!(TargetVariety::new(&r, vec![w1q]).is_err());
    }

    #[test]
    fn pure_power_detection() {
        let r = wring(3);
        let z = TargetVariety::from_sources(&r, &["w2^2 - w3^3 - w3"]).unwrap();
        assert!(z.pure_power_check().is_ok()); // -w3^3 present, degree 3

        let z = TargetVariety::from_sources(&r, &["w2*w3"]).unwrap();
        assert_eq!(z.pure_power_check(), Err(0)); // no w3^2 monomial

        let z = TargetVariety::from_sources(&r, &["w3"]).unwrap();
        assert!(z.pure_power_check().is_ok());
    }

    #[test]
    fn ideal_includes_first_coordinate() {
        let r = wring(3);
        let z = TargetVariety::from_sources(&r, &["w2^2 - w3^3 - w3"]).unwrap();
        assert_eq!(z.ideal().render(), "(w1, -w3^3 + w2^2 - w3)");
    }
}
