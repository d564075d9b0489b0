//! Seeded random instance generation.
//!
//! The coefficient distribution is simple and documented rather than tuned:
//! each matrix entry is independently `-oo` with probability `1 - density`,
//! otherwise an integer uniform in an inclusive range. Rows whose left-hand
//! side is entirely `-oo` state `-oo ≤ B x` and constrain nothing, so such
//! rows are redrawn (whole row, both sides) up to a bounded number of times.
//! Everything is driven by a ChaCha stream cipher keyed by the seed, so equal
//! parameters reproduce equal instances on every platform.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hypergraph::{Hyperedge, Hypergraph};
use crate::scalar::Scalar;
use crate::system::IneqSystem;
use crate::vector::TVector;

/// Default probability that an entry is finite.
pub const DEFAULT_DENSITY: f64 = 0.7;
/// Default inclusive range for finite integer coefficients.
pub const DEFAULT_COEFF_RANGE: (i64, i64) = (-10, 10);
/// Redraw budget per row before giving up on the density.
const ROW_RETRIES: usize = 1000;

/// Parameters for [`random_system`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandParams {
    pub dim: usize,
    pub rows: usize,
    pub seed: u64,
    /// Probability in `[0, 1]` that an entry is finite.
    pub density: f64,
    /// Inclusive range for finite integer coefficients.
    pub coeff_range: (i64, i64),
}

impl RandParams {
    pub fn new(dim: usize, rows: usize, seed: u64) -> Self {
        RandParams {
            dim,
            rows,
            seed,
            density: DEFAULT_DENSITY,
            coeff_range: DEFAULT_COEFF_RANGE,
        }
    }
}

fn random_row(rng: &mut ChaCha8Rng, p: &RandParams) -> TVector {
    let entries = (0..p.dim)
        .map(|_| {
            if rng.random_bool(p.density) {
                Scalar::from_int(rng.random_range(p.coeff_range.0..=p.coeff_range.1))
            } else {
                Scalar::zero()
            }
        })
        .collect();
    TVector::new(entries).expect("dim validated")
}

/// Generate a seeded random inequality system `A x ≤ B x`.
pub fn random_system(p: &RandParams) -> Result<IneqSystem> {
    if p.dim == 0 || p.rows == 0 {
        return Err(Error::invalid("random_system needs dim ≥ 1 and rows ≥ 1"));
    }
    if !(0.0..=1.0).contains(&p.density) {
        return Err(Error::invalid(format!("density {} outside [0, 1]", p.density)));
    }
    if p.coeff_range.0 > p.coeff_range.1 {
        return Err(Error::invalid("empty coefficient range"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut sys = IneqSystem::empty(p.dim)?;
    for row in 0..p.rows {
        let mut redraws = 0;
        loop {
            let a = random_row(&mut rng, p);
            let b = random_row(&mut rng, p);
            if !a.is_zero() {
                sys.push_row(a, b)?;
                break;
            }
            redraws += 1;
            if redraws >= ROW_RETRIES {
                return Err(Error::invalid(format!(
                    "row {row}: {ROW_RETRIES} redraws produced only vacuous rows \
                     (density {} too low for dim {})",
                    p.density, p.dim
                )));
            }
        }
    }
    Ok(sys)
}

/// Parameters for [`random_hypergraph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HyperParams {
    pub nodes: usize,
    pub edges: usize,
    /// Tail sets are drawn with size uniform in `1..=max_tail`.
    pub max_tail: usize,
    /// Head sets are drawn with size uniform in `1..=max_head`.
    pub max_head: usize,
    pub seed: u64,
}

/// Generate a seeded random directed hypergraph (node ids `1..=nodes`).
/// Duplicate picks inside one set collapse, so actual set sizes may be
/// smaller than drawn.
pub fn random_hypergraph(p: &HyperParams) -> Result<Hypergraph> {
    if p.nodes == 0 || p.max_tail == 0 || p.max_head == 0 {
        return Err(Error::invalid(
            "random_hypergraph needs nodes ≥ 1 and max set sizes ≥ 1",
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let pick_set = |max_size: usize, rng: &mut ChaCha8Rng| -> Vec<usize> {
        let size = rng.random_range(1..=max_size);
        (0..size).map(|_| rng.random_range(1..=p.nodes)).collect()
    };
    let edges = (0..p.edges)
        .map(|_| {
            let tail = pick_set(p.max_tail, &mut rng);
            let head = pick_set(p.max_head, &mut rng);
            Hyperedge::new(tail, head)
        })
        .collect::<Result<Vec<_>>>()?;
    Hypergraph::new(p.nodes, edges)
}
