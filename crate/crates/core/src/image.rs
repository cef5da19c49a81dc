//! The constructible image of a polynomial map.
//!
//! Strategy: the closure of the image is an elimination ideal of the graph.
//! The part of the closure possibly missed by the image lies under the
//! projection `W` of the graph's boundary at infinity, computed by weighted
//! homogenization, saturation, and per-chart elimination. Recursing on the
//! preimage of `W` yields a finite union of locally closed pieces whose
//! union is exactly the image.

use std::sync::Mutex;

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::map::PolynomialMap;
use crate::poly::{int, Polynomial};
use crate::ring::RingContext;

/// A graph ideal in the product ring `k[z, w]` (`z` the domain variables
/// with weight 1, `w` the codomain variables with weight 0), remembering
/// the split.
#[derive(Clone, Debug)]
pub struct GraphIdeal {
    ideal: Ideal,
    domain: RingContext,
    codomain: RingContext,
}

impl GraphIdeal {
    /// Wrap an ideal already living in the product ring of `domain` and
    /// `codomain`.
    pub fn assemble(ideal: Ideal, domain: RingContext, codomain: RingContext) -> GraphIdeal {
        debug_assert_eq!(
            ideal.ring().arity(),
            domain.arity() + codomain.arity(),
            "graph ideal must live in the product ring"
        );
        GraphIdeal {
            ideal,
            domain,
            codomain,
        }
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn domain(&self) -> &RingContext {
        &self.domain
    }

    pub fn codomain(&self) -> &RingContext {
        &self.codomain
    }

    fn with_ideal(&self, ideal: Ideal) -> GraphIdeal {
        GraphIdeal {
            ideal,
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
        }
    }
}

/// One locally closed piece `V(closed) \ V(removed)` of a constructible set.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstructiblePiece {
    pub closed: Ideal,
    pub removed: Ideal,
}

impl ConstructiblePiece {
    /// Membership of a rational point, by evaluating generators.
    pub fn contains_point(&self, point: &[BigRational]) -> Result<bool> {
        for g in self.closed.generators() {
            if !g.evaluate(point)?.is_zero() {
                return Ok(false);
            }
        }
        // the point must avoid the removed locus
        if self.removed.is_zero_ideal() {
            return Ok(false);
        }
        for g in self.removed.generators() {
            if !g.evaluate(point)?.is_zero() {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// True when `V(closed) ⊆ V(removed)`, i.e. the piece is empty.
    pub fn is_empty_piece(&self) -> Result<bool> {
        for g in self.removed.generators() {
            if !self.closed.radical_contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A finite union of locally closed pieces; union semantics only, the
/// pieces of one decomposition may overlap.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ConstructibleSet {
    pub pieces: Vec<ConstructiblePiece>,
}

impl ConstructibleSet {
    pub fn contains_point(&self, point: &[BigRational]) -> Result<bool> {
        for piece in &self.pieces {
            if piece.contains_point(point)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Per-round record of the recursion.
#[derive(Clone, Debug)]
pub struct RoundRecord {
    /// Accumulated constrained graph ideal at the start of the round.
    pub gamma: Ideal,
    /// Krull dimension of `V(gamma)`.
    pub dimension: i64,
    /// Image closure this round (codomain ring).
    pub closure: Ideal,
    /// The saturated homogenized graph plus the hyperplane at infinity.
    pub graph_at_infinity: Ideal,
    /// Per-chart elimination ideals, one per domain variable, pre-radical.
    pub chart_ideals: Vec<Ideal>,
    /// Boundary locus `W`: the union of the radical-reduced charts.
    pub boundary: Ideal,
}

/// Full trace of a [`constructible_image`] run.
#[derive(Clone, Debug)]
pub struct ImageTrace {
    pub rounds: Vec<RoundRecord>,
    /// The accumulated ideal that finally contained 1.
    pub final_gamma: Ideal,
}

#[derive(Clone, Copy, Debug)]
pub struct ImageOptions {
    /// Worker threads for per-round chart eliminations.
    pub jobs: usize,
    /// Override of the default round limit (domain dimension + 2).
    pub round_limit: Option<usize>,
}

impl Default for ImageOptions {
    fn default() -> Self {
        ImageOptions {
            jobs: 1,
            round_limit: None,
        }
    }
}

/// The ideal `(w_1 - F_1, …, w_n - F_n) + constraints` in `k[z, w]`.
pub fn graph_ideal(map: &PolynomialMap, constraints: &Ideal) -> Result<GraphIdeal> {
    constraints
        .ring()
        .expect_same(map.domain(), "graph constraints")?;
    let domain = map.domain();
    let codomain = map.codomain();
    let product = RingContext::with_weights(
        domain
            .variables()
            .iter()
            .chain(codomain.variables())
            .cloned()
            .collect::<Vec<_>>(),
        std::iter::repeat(1)
            .take(domain.arity())
            .chain(std::iter::repeat(0).take(codomain.arity()))
            .collect(),
    )
    .map_err(|_| {
        Error::InvalidArgument(
            "domain and codomain variable names must be disjoint to form a graph".into(),
        )
    })?;
    let mut gens = Vec::with_capacity(codomain.arity() + constraints.generators().len());
    for (w, f) in codomain.variables().iter().zip(map.coordinates()) {
        let wvar = Polynomial::variable(&product, w)?;
        gens.push(wvar - f.embed(&product)?);
    }
    for c in constraints.generators() {
        gens.push(c.embed(&product)?);
    }
    Ok(GraphIdeal {
        ideal: Ideal::new(&product, gens)?,
        domain: domain.clone(),
        codomain: codomain.clone(),
    })
}

/// Ideal of the Zariski closure of the image: the graph ideal with the
/// domain variables eliminated, re-expressed in the codomain ring.
pub fn image_closure(graph: &GraphIdeal) -> Result<Ideal> {
    let domain_vars: Vec<&str> = graph.domain.variables().iter().map(String::as_str).collect();
    graph
        .ideal
        .eliminate(&domain_vars)?
        .embed(&graph.codomain)
}

/// The boundary locus `W` together with the per-chart data.
#[derive(Clone, Debug)]
pub struct BoundaryLocus {
    /// Union of the radical-reduced chart ideals (codomain ring).
    pub ideal: Ideal,
    /// Eliminated chart ideals, one per domain variable, pre-radical.
    pub charts: Vec<Ideal>,
    /// Saturated homogenized graph plus `(e)`, in the extended ring.
    pub graph_at_infinity: Ideal,
}

/// Project the graph's part at infinity to the codomain.
///
/// The graph is homogenized by a fresh weight-1 variable, saturated by it,
/// and intersected with the hyperplane at infinity; the charts `z_i = 1`
/// cover that hyperplane and each chart is eliminated down to the codomain.
/// Chart ideals are reduced to their radical when principal; non-principal
/// charts are used as-is, which can only enlarge `W` and costs extra
/// recursion work rather than soundness.
pub fn boundary_locus(graph: &GraphIdeal, jobs: usize) -> Result<BoundaryLocus> {
    let product = graph.ideal.ring();
    let hvar = product.fresh_name("e");
    let mut names: Vec<String> = graph.domain.variables().to_vec();
    names.push(hvar.clone());
    names.extend(graph.codomain.variables().iter().cloned());
    let mut weights = vec![1u32; graph.domain.arity() + 1];
    weights.extend(std::iter::repeat(0).take(graph.codomain.arity()));
    let ext = RingContext::with_weights(names, weights)?;

    let homogenized: Vec<Polynomial> = graph
        .ideal
        .generators()
        .iter()
        .map(|g| g.embed(&ext)?.homogenize(&hvar))
        .collect::<Result<Vec<_>>>()?;
    let closure = Ideal::new(&ext, homogenized)?
        .saturate(&Polynomial::variable(&ext, &hvar)?)?;
    let at_infinity = closure.plus(&[Polynomial::variable(&ext, &hvar)?])?;

    let mut eliminated: Vec<&str> = graph
        .domain
        .variables()
        .iter()
        .map(String::as_str)
        .collect();
    eliminated.push(&hvar);

    let chart_of = |z: &String| -> Result<Ideal> {
        let chart_eq = Polynomial::variable(&ext, z)? - Polynomial::one(&ext);
        at_infinity
            .plus(&[chart_eq])?
            .eliminate(&eliminated)?
            .embed(&graph.codomain)
    };

    let charts: Vec<Ideal> = if jobs > 1 && graph.domain.arity() > 1 {
        run_indexed(graph.domain.variables(), jobs, chart_of)?
    } else {
        graph
            .domain
            .variables()
            .iter()
            .map(chart_of)
            .collect::<Result<Vec<_>>>()?
    };

    let mut union = Ideal::unit(&graph.codomain);
    for chart in &charts {
        let reduced = match chart.radical_of_principal() {
            Ok(r) => r,
            Err(Error::NotPrincipal(_)) => chart.clone(),
            Err(e) => return Err(e),
        };
        union = union.intersect(&reduced)?;
    }
    Ok(BoundaryLocus {
        ideal: union,
        charts,
        graph_at_infinity: at_infinity,
    })
}

/// Run `f` over `items` on up to `jobs` scoped threads, preserving order.
pub(crate) fn run_indexed<T: Sync, U: Send>(
    items: &[T],
    jobs: usize,
    f: impl Fn(&T) -> Result<U> + Sync,
) -> Result<Vec<U>> {
    let results: Mutex<Vec<Option<Result<U>>>> =
        Mutex::new((0..items.len()).map(|_| None).collect());
    let next = std::sync::atomic::AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(items.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                if i >= items.len() {
                    break;
                }
                let r = f(&items[i]);
                results.lock().expect("worker panicked")[i] = Some(r);
            });
        }
    });
    results
        .into_inner()
        .expect("worker panicked")
        .into_iter()
        .map(|r| r.expect("all indices visited"))
        .collect()
}

/// Decompose `F(V(constraints))` into locally closed pieces.
///
/// Each round contributes the piece `closure \ W` and recurses on the
/// preimage of `W`; the recursion stops when the accumulated graph ideal
/// contains 1 (empty constrained domain or fully covered boundary).
pub fn constructible_image(
    map: &PolynomialMap,
    constraints: &Ideal,
    options: &ImageOptions,
) -> Result<(ConstructibleSet, ImageTrace)> {
    let base = graph_ideal(map, constraints)?;
    let round_limit = options
        .round_limit
        .unwrap_or(map.domain().arity() + 2);
    let mut gamma = base.ideal().clone();
    let mut pieces = Vec::new();
    let mut rounds: Vec<RoundRecord> = Vec::new();

    loop {
        if gamma.contains_one()? {
            return Ok((
                ConstructibleSet { pieces },
                ImageTrace {
                    rounds,
                    final_gamma: gamma,
                },
            ));
        }
        let dimension = gamma.dimension()?;
        if rounds.len() >= round_limit {
            return Err(Error::RoundLimitExceeded {
                limit: round_limit,
                dimension,
            });
        }
        let current = base.with_ideal(gamma.clone());
        let closure = image_closure(&current)?;
        let boundary = boundary_locus(&current, options.jobs)?;
        pieces.push(ConstructiblePiece {
            closed: closure.clone(),
            removed: boundary.ideal.clone(),
        });
        rounds.push(RoundRecord {
            gamma: gamma.clone(),
            dimension,
            closure,
            graph_at_infinity: boundary.graph_at_infinity.clone(),
            chart_ideals: boundary.charts.clone(),
            boundary: boundary.ideal.clone(),
        });
        let pulled = boundary.ideal.embed(gamma.ring())?;
        gamma = gamma.plus(pulled.generators())?;
    }
}

/// When the union of pieces is `A^n \ V(J)`, return `J`.
///
/// This holds when the first piece covers the whole space minus its
/// boundary and every later piece's closure agrees (up to radical) with the
/// previous piece's removed locus, so the union telescopes.
pub fn complement_ideal(set: &ConstructibleSet, ambient: &RingContext) -> Result<Option<Ideal>> {
    let Some(first) = set.pieces.first() else {
        return Ok(None);
    };
    first.closed.ring().expect_same(ambient, "complement")?;
    if !first.closed.is_zero_ideal() {
        return Ok(None);
    }
    for pair in set.pieces.windows(2) {
        if !pair[1].closed.equal_up_to_radical(&pair[0].removed)? {
            return Ok(None);
        }
    }
    Ok(Some(set.pieces.last().expect("nonempty").removed.clone()))
}

/// Cut the constrained domain down by random affine-linear forms until the
/// sliced domain, its image closure, and the original image closure share
/// one dimension. Deterministic for a fixed seed; retries a bounded number
/// of draws before reporting a genericity failure.
pub fn slice_to_image_dimension(
    map: &PolynomialMap,
    constraints: &Ideal,
    seed: u64,
) -> Result<Ideal> {
    const ATTEMPTS: u32 = 16;
    let graph = graph_ideal(map, constraints)?;
    let target = image_closure(&graph)?.dimension()?;
    let domain_dim = constraints.dimension()?;
    if domain_dim <= target {
        return Ok(constraints.clone());
    }
    let cuts = usize::try_from(domain_dim - target).expect("dimension gap fits usize");
    let domain = map.domain();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ATTEMPTS {
        let mut forms = Vec::with_capacity(cuts);
        for _ in 0..cuts {
            let mut form = Polynomial::constant(domain, int(rng.gen_range(-20..=20)));
            for v in domain.variables() {
                let c = int(rng.gen_range(-20..=20));
                form = form + Polynomial::variable(domain, v)?.scale(&c);
            }
            forms.push(form);
        }
        let sliced = constraints.plus(&forms)?;
        if sliced.dimension()? != target {
            continue;
        }
        let sliced_closure = image_closure(&graph_ideal(map, &sliced)?)?;
        if sliced_closure.dimension()? == target {
            return Ok(sliced);
        }
    }
    Err(Error::GenericityFailure(ATTEMPTS))
}
