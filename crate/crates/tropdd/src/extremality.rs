//! Tangent cones, tangent hypergraphs, and the least-SCC extremality
//! criterion.
//!
//! At a member g of the cone {x | Ax ≤ Bx}, the tangent cone is carried by
//! the rows saturated at g (A_k g = B_k g). Each finitely saturated row
//! induces a directed hyperedge from the argmax coordinates of the right side
//! to those of the left side, all inside supp(g). g is extreme iff the SCCs
//! of that hypergraph admit a least element for reachability; the members of
//! the least SCC are exactly the types of extremality.

use crate::error::{Error, Result};
use crate::hypergraph::{Hyperedge, Hypergraph};
use crate::scalar::Scalar;
use crate::system::IneqSystem;
use crate::vector::TVector;

/// Saturation data of a system at a member g, in original coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentData {
    /// Rows k (1-based) with dot(A_k,g) = dot(B_k,g), excluding rows where
    /// both sides are 𝟘 (those constrain nothing inside the support).
    pub saturated_rows: Vec<usize>,
    /// Per saturated row: (tail, head) = (argmax(B_k g), argmax(A_k g)),
    /// as sorted original coordinate indices ⊆ supp(g).
    pub edges: Vec<(Vec<usize>, Vec<usize>)>,
    /// supp(g), ascending.
    pub support: Vec<usize>,
}

/// Collects the saturated rows and their argmax sets at g. Errors when g
/// violates the system or is the all-𝟘 vector.
pub fn tangent_data(sys: &IneqSystem, g: &TVector) -> Result<TangentData> {
    if let Some(row) = sys.violated_row(g)? {
        return Err(Error::NotAMember { row });
    }
    let support = g.support();
    if support.is_empty() {
        return Err(Error::ZeroVector);
    }
    let mut saturated_rows = Vec::new();
    let mut edges = Vec::new();
    for k in 1..=sys.row_count() {
        let (ra, rb) = sys.row(k);
        let (av, aarg) = ra.dot_argmax(g)?;
        let (bv, barg) = rb.dot_argmax(g)?;
        if av != bv || av.is_zero() {
            continue;
        }
        // argmax coordinates of a finite value necessarily lie in supp(g)
        saturated_rows.push(k);
        edges.push((barg, aarg));
    }
    Ok(TangentData {
        saturated_rows,
        edges,
        support,
    })
}

fn build_hypergraph(data: &TangentData, dim: usize) -> Result<Hypergraph> {
    let mut pos = vec![0usize; dim + 1];
    for (i, &j) in data.support.iter().enumerate() {
        pos[j] = i + 1;
    }
    let edges = data
        .edges
        .iter()
        .map(|(tail, head)| {
            Hyperedge::new(
                tail.iter().map(|&j| pos[j]).collect(),
                head.iter().map(|&j| pos[j]).collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Hypergraph::new(data.support.len(), edges)
}

/// The tangent hypergraph H(g,C): nodes are supp(g) reindexed densely to
/// 1..|supp(g)|; one hyperedge (argmax(B_k g) → argmax(A_k g)) per finitely
/// saturated row.
pub fn tangent_hypergraph(sys: &IneqSystem, g: &TVector) -> Result<Hypergraph> {
    build_hypergraph(&tangent_data(sys, g)?, g.dim())
}

/// Least-SCC extremality criterion: g is extreme in the cone iff the SCCs of
/// its tangent hypergraph admit a least element.
pub fn is_extreme(sys: &IneqSystem, g: &TVector) -> Result<bool> {
    Ok(tangent_hypergraph(sys, g)?.has_least_scc()?.is_some())
}

/// The types t for which g is extreme of type t: the members of the least
/// SCC, mapped back to original coordinates. Empty iff g is not extreme.
pub fn extreme_types(sys: &IneqSystem, g: &TVector) -> Result<Vec<usize>> {
    let data = tangent_data(sys, g)?;
    let h = build_hypergraph(&data, g.dim())?;
    Ok(match h.has_least_scc()? {
        Some(least) => least.into_iter().map(|v| data.support[v - 1]).collect(),
        None => Vec::new(),
    })
}

/// A radius of validity for first-order (tangent-cone) reasoning at g: half
/// the minimum over the positive slacks of non-saturated rows (both sides
/// finite) and the max/second-max gaps inside each saturated row's two
/// sides. `None` when no finite slack or gap constrains the neighborhood
/// (any positive perturbation works).
pub fn perturbation_radius(sys: &IneqSystem, g: &TVector) -> Result<Option<Scalar>> {
    if let Some(row) = sys.violated_row(g)? {
        return Err(Error::NotAMember { row });
    }
    let mut bound: Option<Scalar> = None;
    let mut shrink = |v: Scalar| {
        bound = Some(match bound.take() {
            Some(b) => b.min(v),
            None => v,
        });
    };
    for k in 1..=sys.row_count() {
        let (ra, rb) = sys.row(k);
        let (av, _) = ra.dot_argmax(g)?;
        let (bv, _) = rb.dot_argmax(g)?;
        if av == bv {
            if av.is_zero() {
                continue;
            }
            // saturated: the gap to the second-largest finite term, per side
            for side in [ra, rb] {
                let mut second: Option<Scalar> = None;
                for (c, x) in side.entries().iter().zip(g.entries()) {
                    let term = c.tmul(x);
                    if term.is_finite() && term < av {
                        second = Some(match second.take() {
                            Some(s) => s.max(term),
                            None => term,
                        });
                    }
                }
                if let Some(s) = second {
                    shrink(av.finite_sub(&s).expect("both finite"));
                }
            }
        } else if av.is_finite() {
            // strict row with finite left side: the slack; rows with a 𝟘
            // left side stay satisfied under any support-preserving move
            shrink(bv.finite_sub(&av).expect("bv ≥ av finite"));
        }
    }
    Ok(bound.map(|b| b.half()))
}

/// The perturbation of g in direction of a {𝟘,𝟙} pattern: coordinates of
/// `ones` keep g_i, the rest of supp(g) drops to g_i − δ, coordinates
/// outside the support stay 𝟘.
pub fn perturbed(g: &TVector, ones: &[usize], delta: &Scalar) -> TVector {
    let mut out = g.clone();
    let neg = delta.try_neg().expect("finite perturbation");
    for i in g.support() {
        if !ones.contains(&i) {
            out.set(i, g.get(i).tmul(&neg));
        }
    }
    out
}
