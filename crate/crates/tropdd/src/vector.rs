//! Vectors over Rmax and the handful of exact operations the double
//! description pipeline is built from.
//!
//! Coordinate indices are 1-based throughout the public API, matching the
//! usual notation for inequality systems (and the node identifiers of tangent
//! hypergraphs, which *are* coordinate indices).

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A (column) vector in Rmax^d. Rows of inequality systems use the same
/// representation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TVector {
    entries: Vec<Scalar>,
}

/// Rows of a system are plain vectors; the alias keeps signatures readable.
pub type TRowVector = TVector;

impl TVector {
    pub fn new(entries: Vec<Scalar>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::invalid("vector dimension must be >= 1"));
        }
        Ok(TVector { entries })
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        TVector {
            entries: entries.iter().map(|&v| Scalar::from_int(v)).collect(),
        }
    }

    /// The all -oo vector (the tropical zero vector).
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be >= 1");
        TVector {
            entries: vec![Scalar::zero(); dim],
        }
    }

    /// Canonical basis vector e_i: unit (0) at coordinate i, -oo elsewhere.
    pub fn basis(dim: usize, i: usize) -> Self {
        assert!((1..=dim).contains(&i), "basis index out of range");
        let mut v = TVector::zeros(dim);
        v.entries[i - 1] = Scalar::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// 1-based access.
    pub fn get(&self, i: usize) -> &Scalar {
        &self.entries[i - 1]
    }

    pub fn set(&mut self, i: usize, v: Scalar) {
        self.entries[i - 1] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    /// Support: 1-based indices of the finite coordinates, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_finite())
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Max-plus dot product of a row with a vector, together with the set of
    /// coordinates attaining the maximum (1-based, ascending). When the value
    /// is -oo no finite term attains it and the argmax set is empty.
    pub fn dot_argmax(&self, x: &TVector) -> Result<(Scalar, Vec<usize>)> {
        if self.dim() != x.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.dim(),
            });
        }
        let mut best = Scalar::zero();
        let mut arg: Vec<usize> = Vec::new();
        for (i, (a, b)) in self.entries.iter().zip(x.entries.iter()).enumerate() {
            let term = a.tmul(b);
            if term.is_zero() {
                continue;
            }
            if arg.is_empty() || term > best {
                best = term;
                arg.clear();
                arg.push(i + 1);
            } else if term == best {
                arg.push(i + 1);
            }
        }
        Ok((best, arg))
    }

    /// Max-plus dot product without the argmax set.
    pub fn dot(&self, x: &TVector) -> Result<Scalar> {
        Ok(self.dot_argmax(x)?.0)
    }

    /// Tropical linear combination λ⊗u ⊕ μ⊗v (entrywise).
    pub fn combine(lambda: &Scalar, u: &TVector, mu: &Scalar, v: &TVector) -> Result<TVector> {
        if u.dim() != v.dim() {
            return Err(Error::DimensionMismatch {
                expected: u.dim(),
                got: v.dim(),
            });
        }
        let entries = u
            .entries
            .iter()
            .zip(v.entries.iter())
            .map(|(a, b)| lambda.tmul(a).tadd(&mu.tmul(b)))
            .collect();
        Ok(TVector { entries })
    }

    /// Scale by λ (entrywise ⊗).
    pub fn scale(&self, lambda: &Scalar) -> TVector {
        TVector {
            entries: self.entries.iter().map(|a| lambda.tmul(a)).collect(),
        }
    }

    /// Canonical representative of the proportionality class: scale so the
    /// first finite entry becomes 0. Errors on the all -oo vector, which has
    /// no canonical form.
    pub fn normalize(&self) -> Result<TVector> {
        let first = self
            .entries
            .iter()
            .find(|v| v.is_finite())
            .ok_or(Error::ZeroVector)?;
        let kappa = first.try_neg().expect("finite entry has an inverse");
        Ok(self.scale(&kappa))
    }

    /// True iff u = λ⊗v for some finite λ. Both all -oo counts as
    /// proportional (same ray class {0}); exactly one all -oo does not.
    pub fn is_proportional(&self, other: &TVector) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        match (self.is_zero(), other.is_zero()) {
            (true, true) => true,
            (true, false) | (false, true) => false,
            (false, false) => {
                self.normalize().expect("non-zero") == other.normalize().expect("non-zero")
            }
        }
    }
}

/// Space-separated scalar tokens, e.g. `-oo 0 -2` or `0 9/2 2`.
impl fmt::Display for TVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
