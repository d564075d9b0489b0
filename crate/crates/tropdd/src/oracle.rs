//! Slow, independent reference implementations: residuation-based membership
//! and extremality, exhaustive {𝟘,𝟙} tangent-cone enumeration, naive
//! hypergraph fixpoints, and the McMullen-type upper bound.
//!
//! Everything here is written for obviousness, not speed. These routines are
//! the ground truth the fast paths are differentially tested against, and the
//! baseline the benchmark harness compares with.

use num_bigint::BigUint;
use num_integer::binomial;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, SccPartition};
use crate::scalar::Scalar;
use crate::system::IneqSystem;
use crate::vector::TVector;

/// Cap on the {𝟘,𝟙} enumeration: at most 2^24 candidate patterns.
pub const ENUM_GUARD_BITS: usize = 24;

/// Arguments of the upper-bound function `U`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundParams {
    pub n: u64,
    pub d: u64,
}

/// U(n,d) = C(n−⌊(d+1)/2⌋, n−d) + C(n−⌊(d+2)/2⌋, n−d), exactly.
///
/// Defined for n ≥ d ≥ 1. This is the McMullen-type bound on the number of
/// extreme rays of a tropical cone in dimension d cut out by n inequalities
/// (applied as U(n+d, d−1), see [`ray_count_bound`]).
pub fn upper_bound(p: BoundParams) -> Result<BigUint> {
    let BoundParams { n, d } = p;
    if d < 1 || n < d {
        return Err(Error::invalid(format!(
            "upper bound requires n >= d >= 1, got n={n}, d={d}"
        )));
    }
    let k = BigUint::from(n - d);
    let a = binomial(BigUint::from(n - (d + 1) / 2), k.clone());
    let b = binomial(BigUint::from(n - (d + 2) / 2), k);
    Ok(a + b)
}

/// Bound on the number of extreme rays of a cone in dimension `d` defined by
/// `n` inequalities: U(n+d, d−1). In dimension 1 every nonzero cone has a
/// single extreme ray.
pub fn ray_count_bound(n: u64, d: u64) -> Result<BigUint> {
    if d == 0 {
        return Err(Error::invalid("dimension must be positive"));
    }
    if d == 1 {
        return Ok(BigUint::from(1u32));
    }
    upper_bound(BoundParams { n: n + d, d: d - 1 })
}

/// Greatest-subsolution coefficients: λ_i = min over j ∈ supp(g_i) of
/// (x_j − g_i,j), taken as 𝟘 when x vanishes somewhere on that support or the
/// support is empty.
pub fn residuation_coefficients(gens: &[TVector], x: &TVector) -> Result<Vec<Scalar>> {
    let mut lambda = Vec::with_capacity(gens.len());
    for g in gens {
        if g.dim() != x.dim() {
            return Err(Error::DimensionMismatch {
                expected: x.dim(),
                got: g.dim(),
            });
        }
        let mut best: Option<Scalar> = None;
        for (gj, xj) in g.entries().iter().zip(x.entries()) {
            if !gj.is_finite() {
                continue;
            }
            if xj.is_zero() {
                best = Some(Scalar::zero());
                break;
            }
            let dif = xj
                .finite_sub(gj)
                .expect("both operands finite on the support");
            best = Some(match best {
                Some(b) => b.min(dif),
                None => dif,
            });
        }
        lambda.push(best.unwrap_or_else(Scalar::zero));
    }
    Ok(lambda)
}

/// Membership of x in the span of `gens`, via residuation: x is a tropical
/// combination of the generators iff the greatest subsolution reproduces it
/// exactly. Returns the verdict together with the coefficients used.
pub fn residuation_membership(gens: &[TVector], x: &TVector) -> Result<(bool, Vec<Scalar>)> {
    let lambda = residuation_coefficients(gens, x)?;
    let mut z = TVector::zeros(x.dim());
    for (l, g) in lambda.iter().zip(gens) {
        z = TVector::combine(&Scalar::one(), &z, l, g)?;
    }
    Ok((z == *x, lambda))
}

/// x is extreme in the span of `gens` iff it is not a combination of the
/// members not proportional to it.
pub fn is_extreme_residuation(gens: &[TVector], x: &TVector) -> Result<bool> {
    let rest: Vec<TVector> = gens
        .iter()
        .filter(|g| !g.is_proportional(x))
        .cloned()
        .collect();
    let (member, _) = residuation_membership(&rest, x)?;
    Ok(!member)
}

/// Support coordinates and per-saturated-row (argmax-A, argmax-B) bit masks
/// over the dense support positions.
fn tangent_masks(sys: &IneqSystem, g: &TVector) -> Result<(Vec<usize>, Vec<(u32, u32)>)> {
    if let Some(row) = sys.violated_row(g)? {
        return Err(Error::NotAMember { row });
    }
    let supp = g.support();
    let s = supp.len();
    if s > ENUM_GUARD_BITS {
        return Err(Error::EnumerationGuard {
            support: s,
            limit: ENUM_GUARD_BITS,
        });
    }
    // bit position of each support coordinate
    let mut pos = vec![usize::MAX; g.dim() + 1];
    for (b, &j) in supp.iter().enumerate() {
        pos[j] = b;
    }
    // masks per finitely saturated row
    let mut constraints: Vec<(u32, u32)> = Vec::new();
    for k in 1..=sys.row_count() {
        let (ra, rb) = sys.row(k);
        let (av, aarg) = ra.dot_argmax(g)?;
        let (bv, barg) = rb.dot_argmax(g)?;
        if av != bv || av.is_zero() {
            continue;
        }
        let amask = aarg.iter().fold(0u32, |m, &j| m | 1 << pos[j]);
        let bmask = barg.iter().fold(0u32, |m, &j| m | 1 << pos[j]);
        constraints.push((amask, bmask));
    }
    Ok((supp, constraints))
}

/// All {𝟘,𝟙} elements of the tangent cone of `sys` at the member `g`, each
/// given as the sorted list of support coordinates carrying 𝟙. A pattern
/// survives iff for every saturated row, hitting an argmax coordinate of the
/// left side implies hitting one of the right side. Includes the all-𝟘 and
/// all-𝟙 patterns.
pub fn zero_one_tangent(sys: &IneqSystem, g: &TVector) -> Result<Vec<Vec<usize>>> {
    let (supp, constraints) = tangent_masks(sys, g)?;
    let s = supp.len();
    let mut out = Vec::new();
    for y in 0u64..(1u64 << s) {
        let y = y as u32;
        if constraints.iter().all(|&(a, b)| y & a == 0 || y & b != 0) {
            out.push(
                supp.iter()
                    .enumerate()
                    .filter(|&(p, _)| y & (1 << p) != 0)
                    .map(|(_, &j)| j)
                    .collect(),
            );
        }
    }
    Ok(out)
}

/// Exhaustive {𝟘,𝟙} tangent-cone extremality test.
///
/// Enumerates every {𝟘,𝟙} pattern over supp(g) and keeps those satisfying the
/// tangent-cone constraints at g. g is extreme of type t iff the all-𝟙
/// pattern is the only survivor whose t-th coordinate is 𝟙; `t = None` asks
/// whether any type works.
pub fn is_extreme_enum(sys: &IneqSystem, g: &TVector, t: Option<usize>) -> Result<bool> {
    if let Some(i) = t {
        if i == 0 || i > g.dim() {
            return Err(Error::invalid(format!(
                "type index {i} out of range 1..={}",
                g.dim()
            )));
        }
    }
    let (supp, constraints) = tangent_masks(sys, g)?;
    let s = supp.len();
    if s == 0 {
        return Ok(false);
    }
    let mut pos = vec![usize::MAX; g.dim() + 1];
    for (b, &j) in supp.iter().enumerate() {
        pos[j] = b;
    }
    let full: u32 = (1u32 << s) - 1;
    debug_assert!(
        constraints
            .iter()
            .all(|&(a, b)| full & a == 0 || full & b != 0),
        "the all-one pattern survives at any member"
    );
    // ok[p]: no survivor besides all-𝟙 has bit p set
    let mut ok = vec![true; s];
    for y in 0..full {
        if constraints.iter().all(|&(a, b)| y & a == 0 || y & b != 0) {
            for (p, slot) in ok.iter_mut().enumerate() {
                if y & (1 << p) != 0 {
                    *slot = false;
                }
            }
        }
    }
    Ok(match t {
        Some(i) => pos[i] != usize::MAX && ok[pos[i]],
        None => ok.iter().any(|&v| v),
    })
}

/// Reachability closure by plain fixpoint iteration: scan all edges until
/// nothing changes. O(|N|·size(H)) worst case; no worklist machinery shared
/// with the fast path.
pub fn naive_reachable(h: &Hypergraph, u: usize) -> Result<Vec<usize>> {
    let n = h.node_count();
    if u == 0 || u > n {
        return Err(Error::invalid(format!("node id {u} out of range 1..={n}")));
    }
    let mut inset = vec![false; n + 1];
    inset[u] = true;
    loop {
        let mut changed = false;
        for e in h.edges() {
            if e.tail().iter().all(|&v| inset[v]) {
                for &w in e.head() {
                    if !inset[w] {
                        inset[w] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok((1..=n).filter(|&v| inset[v]).collect())
}

/// Full SCC partition by definition chasing: one fixpoint reachability per
/// node, mutual-reachability classes, and the order matrix from the class
/// representatives.
pub fn naive_minimal_sccs(h: &Hypergraph) -> SccPartition {
    let n = h.node_count();
    let mut reach: Vec<Vec<bool>> = vec![Vec::new()]; // node 0 unused
    for u in 1..=n {
        let mut row = vec![false; n + 1];
        for v in naive_reachable(h, u).expect("node id in range") {
            row[v] = true;
        }
        reach.push(row);
    }
    let mut comp_of = vec![usize::MAX; n + 1];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for u in 1..=n {
        if comp_of[u] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut members = vec![u];
        comp_of[u] = id;
        for v in u + 1..=n {
            if comp_of[v] == usize::MAX && reach[u][v] && reach[v][u] {
                comp_of[v] = id;
                members.push(v);
            }
        }
        components.push(members);
    }
    let k = components.len();
    let mut leq = vec![vec![false; k]; k];
    for (i, ci) in components.iter().enumerate() {
        for (j, cj) in components.iter().enumerate() {
            leq[i][j] = reach[cj[0]][ci[0]];
        }
    }
    let minimal = (0..k)
        .filter(|&i| (0..k).all(|j| j == i || !leq[j][i]))
        .collect();
    SccPartition {
        components,
        minimal,
        leq,
        comp_of,
    }
}
