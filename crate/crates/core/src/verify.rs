//! Surjectivity certification.
//!
//! A certificate combines four independent checks: the image avoids the
//! target (a feasibility check on one ideal), the image algorithm's
//! complement agrees with the target ideal up to radical, sampled fibers
//! behave (nonempty off the target, empty on it), and the construction's
//! degree bound holds.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::image::{complement_ideal, constructible_image, run_indexed, ImageOptions, ImageTrace};
use crate::map::PolynomialMap;
use crate::poly::{rat, Polynomial};
use crate::ring::RingContext;
use crate::target::{ExponentSchedule, TargetVariety};

/// Which explicit construction produced a map, for degree auditing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstructionVariant {
    TheoremMain,
    PurePowers,
}

impl ConstructionVariant {
    pub fn name(self) -> &'static str {
        match self {
            ConstructionVariant::TheoremMain => "theorem-main",
            ConstructionVariant::PurePowers => "pure-powers",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "theorem-main" => Ok(ConstructionVariant::TheoremMain),
            "pure-powers" => Ok(ConstructionVariant::PurePowers),
            other => Err(Error::InvalidArgument(format!(
                "unknown variant `{other}` (expected theorem-main or pure-powers)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeAudit {
    pub observed: u64,
    pub bound: u64,
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct FiberSample {
    pub point: Vec<BigRational>,
    pub on_target: bool,
    pub fiber_nonempty: bool,
}

impl FiberSample {
    /// Off-target points need nonempty fibers, on-target points empty ones.
    pub fn consistent(&self) -> bool {
        self.on_target != self.fiber_nonempty
    }
}

/// The full verification record; the verdict is the conjunction of every
/// enabled check.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub avoidance: bool,
    pub complement: Option<Ideal>,
    pub complement_match: bool,
    pub fiber_samples: Vec<FiberSample>,
    pub degree_audit: Option<DegreeAudit>,
    pub trace: ImageTrace,
}

impl Certificate {
    pub fn verdict(&self) -> bool {
        self.avoidance
            && self.complement_match
            && self.fiber_samples.iter().all(FiberSample::consistent)
            && self.degree_audit.as_ref().map_or(true, |a| a.ok)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Fiber samples per side (off-target and on-target).
    pub samples: usize,
    pub seed: u64,
    pub jobs: usize,
    /// Enables the degree audit when the construction is known.
    pub variant: Option<ConstructionVariant>,
    /// Extra on-target points supplied by a harness that knows a
    /// parametrization; each must satisfy the defining equations.
    pub on_target_points: Vec<Vec<BigRational>>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            samples: 20,
            seed: 42,
            jobs: 1,
            variant: None,
            on_target_points: Vec::new(),
        }
    }
}

/// `F(A^N) ∩ Z = ∅`, decided by feasibility of the pulled-back defining
/// equations: the ideal `(g(F_1, …, F_n) : g ∈ I(Z))` in the domain ring
/// contains 1 exactly when the graph ideal plus `I(Z)` does.
pub fn avoids_target(map: &PolynomialMap, target: &TargetVariety) -> Result<bool> {
    if map.codomain().arity() != target.ambient_dimension() {
        return Err(Error::InvalidArgument(
            "map codomain and target dimensions differ".into(),
        ));
    }
    pullback_ideal(map, &target.ideal())?.contains_one()
}

/// Substitute the map's coordinates into every generator of an ideal on
/// the codomain.
pub fn pullback_ideal(map: &PolynomialMap, ideal: &Ideal) -> Result<Ideal> {
    ideal
        .ring()
        .expect_same(map.codomain(), "pullback ideal")?;
    let mut assignment = BTreeMap::new();
    for (w, f) in map.codomain().variables().iter().zip(map.coordinates()) {
        assignment.insert(w.clone(), f.clone());
    }
    let gens = ideal
        .generators()
        .iter()
        .map(|g| g.substitute(map.domain(), &assignment))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(map.domain(), gens)
}

/// Solvability of `F(z) = w0` over the algebraic closure: true iff the
/// fiber ideal `(F_1 - w0_1, …, F_n - w0_n)` is proper.
pub fn fiber_nonempty(map: &PolynomialMap, point: &[BigRational]) -> Result<bool> {
    if point.len() != map.codomain().arity() {
        return Err(Error::InvalidArgument(
            "fiber point arity mismatch".into(),
        ));
    }
    let gens = map
        .coordinates()
        .iter()
        .zip(point)
        .map(|(f, c)| f.checked_sub(&Polynomial::constant(map.domain(), c.clone())))
        .collect::<Result<Vec<_>>>()?;
    Ok(!Ideal::new(map.domain(), gens)?.contains_one()?)
}

/// Degree audit for the two restricted constructions.
pub fn check_degree_bound(
    map: &PolynomialMap,
    target: &TargetVariety,
    variant: ConstructionVariant,
) -> Result<DegreeAudit> {
    let n = target.ambient_dimension();
    let m = target.generator_count() as u64;
    let d = target.max_degree();
    let bound = match variant {
        ConstructionVariant::TheoremMain => m * ExponentSchedule::new(d, n)?.p(n - 1),
        ConstructionVariant::PurePowers => m * (d + 1) + 1,
    };
    let observed = map.total_degree();
    Ok(DegreeAudit {
        observed,
        bound,
        ok: observed <= bound,
    })
}

/// Deterministic pool of small rational points lying on the target, found
/// by scanning a fixed grid of the free coordinates. Only what the grid
/// reaches is reported; targets without small rational points yield few
/// (or no) entries.
pub fn on_target_grid_points(target: &TargetVariety, budget: usize) -> Result<Vec<Vec<BigRational>>> {
    let n = target.ambient_dimension();
    if n > 4 {
        return Ok(Vec::new());
    }
    let mut grid: Vec<BigRational> = Vec::new();
    grid.push(rat(0, 1));
    for k in 1..=8i64 {
        grid.push(rat(k, 1));
        grid.push(rat(-k, 1));
    }
    for k in [1i64, -1, 3, -3, 5, -5] {
        grid.push(rat(k, 2));
    }
    for k in [1i64, -1, 2, -2] {
        grid.push(rat(k, 3));
    }

    let free = n - 1;
    let mut pool = Vec::new();
    let mut index = vec![0usize; free];
    'scan: loop {
        let mut point = Vec::with_capacity(n);
        point.push(rat(0, 1));
        point.extend(index.iter().map(|&i| grid[i].clone()));
        let mut on = true;
        for q in target.q_list() {
            if !q.evaluate(&point)?.is_zero() {
                on = false;
                break;
            }
        }
        if on {
            pool.push(point);
            if pool.len() >= budget {
                break;
            }
        }
        // odometer over the grid
        for slot in 0..free {
            index[slot] += 1;
            if index[slot] < grid.len() {
                continue 'scan;
            }
            index[slot] = 0;
        }
        break;
    }
    Ok(pool)
}

/// Run the full certification pipeline.
pub fn verify_surjection(
    map: &PolynomialMap,
    target: &TargetVariety,
    options: &VerifyOptions,
) -> Result<Certificate> {
    let avoidance = avoids_target(map, target)?;

    let constraints = Ideal::zero(map.domain());
    let image_options = ImageOptions {
        jobs: options.jobs,
        round_limit: None,
    };
    let (set, trace) = constructible_image(map, &constraints, &image_options)?;
    let complement = complement_ideal(&set, map.codomain())?;
    let complement_match = match &complement {
        Some(j) => j.equal_up_to_radical(&target.ideal())?,
        None => false,
    };

    let mut points: Vec<(Vec<BigRational>, bool)> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let target_ideal = target.ideal();
    let mut guard = 0usize;
    while points.iter().filter(|(_, on)| !on).count() < options.samples {
        guard += 1;
        if guard > options.samples * 100 + 1000 {
            return Err(Error::GenericityFailure(guard as u32));
        }
        let candidate: Vec<BigRational> = (0..target.ambient_dimension())
            .map(|_| rat(rng.gen_range(-7..=7), 1))
            .collect();
        let on = target_ideal
            .generators()
            .iter()
            .map(|g| g.evaluate(&candidate))
            .collect::<Result<Vec<_>>>()?
            .iter()
            .all(BigRational::is_zero);
        if !on {
            points.push((candidate, false));
        }
    }

    let mut pool = Vec::new();
    for p in &options.on_target_points {
        if !crate::surjection::on_target(target, p)? {
            return Err(Error::InvalidArgument(format!(
                "supplied on-target point does not satisfy the defining equations: ({})",
                p.iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            )));
        }
        pool.push(p.clone());
    }
    if pool.len() < options.samples {
        for p in on_target_grid_points(target, options.samples)? {
            if !pool.contains(&p) {
                pool.push(p);
            }
        }
    }
    if !pool.is_empty() {
        // cycle when the known rational points are fewer than requested
        for k in 0..options.samples {
            points.push((pool[k % pool.len()].clone(), true));
        }
    }

    let flags: Vec<bool> = if options.jobs > 1 {
        run_indexed(&points, options.jobs, |(p, _)| fiber_nonempty(map, p))?
    } else {
        points
            .iter()
            .map(|(p, _)| fiber_nonempty(map, p))
            .collect::<Result<Vec<_>>>()?
    };
    let fiber_samples: Vec<FiberSample> = points
        .into_iter()
        .zip(flags)
        .map(|((point, on_target), fiber_nonempty)| FiberSample {
            point,
            on_target,
            fiber_nonempty,
        })
        .collect();

    let degree_audit = match options.variant {
        Some(v) => Some(check_degree_bound(map, target, v)?),
        None => None,
    };

    Ok(Certificate {
        avoidance,
        complement,
        complement_match,
        fiber_samples,
        degree_audit,
        trace,
    })
}

/// Sample points of the codomain grid that lie inside a piece of the
/// decomposition, for cross-checking fiber feasibility.
pub fn grid_points_in_piece(
    piece: &crate::image::ConstructiblePiece,
    ambient: &RingContext,
    budget: usize,
    bound: i64,
) -> Result<Vec<Vec<BigRational>>> {
    let n = ambient.arity();
    let mut out = Vec::new();
    let mut index = vec![0i64; n];
    let width = 2 * bound + 1;
    'scan: loop {
        let point: Vec<BigRational> = index.iter().map(|&i| rat(i - bound, 1)).collect();
        if piece.contains_point(&point)? {
            out.push(point);
            if out.len() >= budget {
                break;
            }
        }
        for slot in 0..n {
            index[slot] += 1;
            if index[slot] < width {
                continue 'scan;
            }
            index[slot] = 0;
        }
        break;
    }
    Ok(out)
}
