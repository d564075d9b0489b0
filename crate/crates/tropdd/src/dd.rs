//! The tropical double description pipeline: successive halfspace
//! elimination with extremality filtering, plus affine homogenization.
//!
//! Starting from the canonical basis (the generators of the free cone), rows
//! of `A x ≤ B x` are folded in one at a time. At each step the current
//! generators split into those satisfying the new row (kept) and the rest
//! (dropped); every pair across the split combines into a boundary candidate
//! h = (a·g^j)⊗g^i ⊕ (b·g^i)⊗g^j, and candidates survive iff they are
//! extreme in the cone of the rows accumulated so far. The result is the
//! unique minimal generating set — one normalized representative per extreme
//! ray.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::extremality;
use crate::oracle;
use crate::system::{AffineSystem, IneqSystem};
use crate::vector::{TRowVector, TVector};

/// A canonically ordered set of pairwise non-proportional, normalized,
/// nonzero generators. Set equality is list equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    dim: usize,
    gens: Vec<TVector>,
}

impl GeneratorSet {
    /// Builds a set from arbitrary nonzero vectors: normalizes, deduplicates
    /// (proportional vectors collapse), and sorts canonically.
    pub fn new(dim: usize, vecs: Vec<TVector>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dimension must be >= 1"));
        }
        let mut gens = Vec::with_capacity(vecs.len());
        for v in &vecs {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: v.dim(),
                });
            }
            gens.push(v.normalize()?);
        }
        gens.sort();
        gens.dedup();
        Ok(GeneratorSet { dim, gens })
    }

    /// The empty set in the given dimension.
    pub fn empty(dim: usize) -> Result<Self> {
        Self::new(dim, Vec::new())
    }

    /// The tropical canonical basis (ε_i): generators of the free cone.
    pub fn canonical_basis(dim: usize) -> Result<Self> {
        let vecs = (1..=dim).map(|i| TVector::basis(dim, i)).collect();
        Self::new(dim, vecs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn members(&self) -> &[TVector] {
        &self.gens
    }

    pub fn iter(&self) -> std::slice::Iter<'_, TVector> {
        self.gens.iter()
    }

    /// True iff some member is proportional to v (i.e. normalizes to the
    /// same representative).
    pub fn contains_ray(&self, v: &TVector) -> Result<bool> {
        let n = v.normalize()?;
        Ok(self.gens.binary_search(&n).is_ok())
    }
}

impl std::fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for g in &self.gens {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Extreme points and rays of a tropical polyhedron, canonically ordered.
/// Members are x = ⊕_i λ_i v^i ⊕ ⊕_j μ_j r^j with ⊕_i λ_i = 𝟙.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineGenerators {
    /// Extreme points, last (homogenizing) coordinate scaled to 𝟙 and
    /// dropped; not renormalized.
    pub points: Vec<TVector>,
    /// Extreme rays of the recession cone, normalized.
    pub rays: Vec<TVector>,
}

/// How rows are folded into the pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RowOrder {
    /// Pick the row minimizing |G^≤|·|G^>| next (ties: lowest index).
    #[default]
    Dynamic,
    /// Process rows in input order.
    Fixed,
}

/// Which extremality test filters the candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExtremalityFilter {
    /// Least-SCC criterion on the tangent hypergraph (near-linear per test).
    #[default]
    Hypergraph,
    /// Residuation against the other candidates (quadratic; the baseline).
    Residuation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ComputeOptions {
    pub order: RowOrder,
    pub filter: ExtremalityFilter,
    /// Test candidates in parallel. The merge is order-preserving, so
    /// parallel and serial runs produce identical sets.
    pub parallel: bool,
}

/// Counters recorded along a pipeline run.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PipelineStats {
    /// |G| after the base case and after each processed row.
    pub step_generator_counts: Vec<usize>,
    /// Original indices of the rows in processing order.
    pub row_order: Vec<usize>,
    /// Total extremality tests performed.
    pub candidates_tested: usize,
    /// Members of G^≤ removed by re-testing. The theory says a kept
    /// generator stays extreme, so this should remain 0; it is recorded to
    /// let the suite assert that empirically.
    pub kept_rejected: usize,
}

fn candidate_passes(
    filter: ExtremalityFilter,
    accumulated: &IneqSystem,
    pool: &[TVector],
    v: &TVector,
) -> Result<bool> {
    match filter {
        ExtremalityFilter::Hypergraph => extremality::is_extreme(accumulated, v),
        ExtremalityFilter::Residuation => oracle::is_extreme_residuation(pool, v),
    }
}

/// One halfspace-elimination step. `accumulated` must already contain the row
/// `a x ≤ b x` as its last row; the input set must generate the solution set
/// of the preceding rows.
fn intersect_step(
    g: &GeneratorSet,
    a: &TRowVector,
    b: &TRowVector,
    accumulated: &IneqSystem,
    opts: ComputeOptions,
    stats: &mut PipelineStats,
) -> Result<GeneratorSet> {
    let dim = g.dim();
    if a.dim() != dim || b.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: if a.dim() != dim { a.dim() } else { b.dim() },
        });
    }
    let last = accumulated.row_count();
    if last == 0 || accumulated.row(last) != (a, b) {
        return Err(Error::invalid(
            "accumulated system must end with the row being intersected",
        ));
    }

    let mut keep: Vec<&TVector> = Vec::new();
    let mut drop: Vec<&TVector> = Vec::new();
    for v in g.iter() {
        if a.dot(v)? <= b.dot(v)? {
            keep.push(v);
        } else {
            drop.push(v);
        }
    }

    // kept members, already normalized and sorted
    let kept: Vec<TVector> = keep.iter().map(|v| (*v).clone()).collect();
    // boundary combinations h = (a·g^j)⊗g^i ⊕ (b·g^i)⊗g^j, one per pair
    // across the split; deduplicated against each other and the kept set
    let mut combos: Vec<TVector> = Vec::new();
    for gi in &keep {
        let bgi = b.dot(gi)?;
        for gj in &drop {
            let agj = a.dot(gj)?;
            combos.push(TVector::combine(&agj, gi, &bgi, gj)?.normalize()?);
        }
    }
    combos.sort();
    combos.dedup();
    combos.retain(|h| kept.binary_search(h).is_err());

    // pool = candidate generating set of the intersection; tags mark the
    // members kept from G^≤ (re-tested, expected to always survive)
    let pool: Vec<TVector> = kept.iter().chain(&combos).cloned().collect();
    let from_kept = kept.len();
    stats.candidates_tested += pool.len();

    let verdicts: Vec<bool> = if opts.parallel {
        pool.par_iter()
            .map(|v| candidate_passes(opts.filter, accumulated, &pool, v))
            .collect::<Result<_>>()?
    } else {
        pool.iter()
            .map(|v| candidate_passes(opts.filter, accumulated, &pool, v))
            .collect::<Result<_>>()?
    };

    stats.kept_rejected += verdicts[..from_kept].iter().filter(|&&ok| !ok).count();
    let survivors: Vec<TVector> = pool
        .into_iter()
        .zip(&verdicts)
        .filter(|(_, &ok)| ok)
        .map(|(v, _)| v)
        .collect();
    GeneratorSet::new(dim, survivors)
}

/// Intersects the cone generated by `g` with the halfspace `a x ≤ b x`,
/// filtering with the default options. `accumulated` must include the new
/// row as its last row and describe the cone generated by `g` before it.
pub fn intersect_halfspace(
    g: &GeneratorSet,
    a: &TRowVector,
    b: &TRowVector,
    accumulated: &IneqSystem,
) -> Result<GeneratorSet> {
    let mut stats = PipelineStats::default();
    intersect_step(g, a, b, accumulated, ComputeOptions::default(), &mut stats)
}

/// The next row to fold in under dynamic ordering: minimizes |G^≤|·|G^>|
/// against the current generators, ties broken by lowest original index.
/// Returns the original (1-based) row index.
pub fn select_next(sys: &IneqSystem, remaining: &[usize], current: &GeneratorSet) -> Result<usize> {
    let mut best: Option<(usize, usize)> = None; // (score, row)
    for &k in remaining {
        let (a, b) = sys.row(k);
        let mut le = 0usize;
        for v in current.iter() {
            if a.dot(v)? <= b.dot(v)? {
                le += 1;
            }
        }
        let score = le * (current.len() - le);
        match best {
            Some((s, _)) if s <= score => {}
            _ => best = Some((score, k)),
        }
    }
    best.map(|(_, k)| k)
        .ok_or_else(|| Error::invalid("no remaining rows to select"))
}

/// Runs the full double description pipeline and returns the extreme rays of
/// {x | A x ≤ B x} together with the run's statistics.
pub fn compute_extreme_with(
    sys: &IneqSystem,
    opts: ComputeOptions,
) -> Result<(GeneratorSet, PipelineStats)> {
    let dim = sys.dim();
    let mut current = GeneratorSet::canonical_basis(dim)?;
    let mut stats = PipelineStats::default();
    stats.step_generator_counts.push(current.len());
    let mut accumulated = IneqSystem::empty(dim)?;
    let mut remaining: Vec<usize> = (1..=sys.row_count()).collect();
    while !remaining.is_empty() {
        let k = match opts.order {
            RowOrder::Dynamic => select_next(sys, &remaining, &current)?,
            RowOrder::Fixed => remaining[0],
        };
        remaining.retain(|&r| r != k);
        let (a, b) = sys.row(k);
        accumulated.push_row(a.clone(), b.clone())?;
        current = intersect_step(&current, a, b, &accumulated, opts, &mut stats)?;
        stats.row_order.push(k);
        stats.step_generator_counts.push(current.len());
    }
    Ok((current, stats))
}

/// [`compute_extreme_with`] under default options.
pub fn compute_extreme(sys: &IneqSystem) -> Result<GeneratorSet> {
    compute_extreme_with(sys, ComputeOptions::default()).map(|(g, _)| g)
}

/// Embeds an affine system `A x ⊕ c ≤ B x ⊕ e` as a cone system in dimension
/// d+1: the constants ride on the added coordinate, which plays the role of
/// the affine unit.
pub fn homogenize(asys: &AffineSystem) -> Result<IneqSystem> {
    let d = asys.dim();
    let mut sys = IneqSystem::empty(d + 1)?;
    for k in 1..=asys.row_count() {
        let (a, c, b, e) = asys.row(k);
        let mut ax = a.entries().to_vec();
        ax.push(c.clone());
        let mut bx = b.entries().to_vec();
        bx.push(e.clone());
        sys.push_row(TVector::new(ax)?, TVector::new(bx)?)?;
    }
    Ok(sys)
}

/// Splits the extreme rays of a homogenized cone back into extreme points
/// (finite last coordinate, scaled to 𝟙 and dropped) and extreme rays of the
/// recession cone (𝟘 last coordinate, dropped).
pub fn dehomogenize(g: &GeneratorSet) -> Result<AffineGenerators> {
    let hdim = g.dim();
    if hdim < 2 {
        return Err(Error::invalid(
            "dehomogenization needs at least 2 coordinates",
        ));
    }
    let mut points = Vec::new();
    let mut rays = Vec::new();
    for v in g.iter() {
        let last = v.get(hdim);
        let dropped = |w: &TVector| TVector::new(w.entries()[..hdim - 1].to_vec());
        if last.is_finite() {
            let unit = last.try_neg().expect("finite scale");
            points.push(dropped(&v.scale(&unit))?);
        } else {
            let r = dropped(v)?;
            if r.is_zero() {
                return Err(Error::Internal(
                    "dehomogenize: ray with empty support".into(),
                ));
            }
            rays.push(r);
        }
    }
    points.sort();
    rays.sort();
    Ok(AffineGenerators { points, rays })
}

/// Convenience: full affine pipeline — homogenize, compute, dehomogenize.
pub fn compute_extreme_affine(asys: &AffineSystem) -> Result<AffineGenerators> {
    dehomogenize(&compute_extreme(&homogenize(asys)?)?)
}
