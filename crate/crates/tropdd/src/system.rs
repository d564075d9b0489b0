//! Systems of max-plus linear inequalities.
//!
//! A cone system is `A x <= B x` rowwise: for each k,
//! `max_i (a_ki + x_i) <= max_i (b_ki + x_i)`. Its solution set is a tropical
//! cone. The affine variant carries constant terms on both sides and describes
//! a tropical polyhedron; it reduces to a cone one dimension up.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::vector::{TRowVector, TVector};

/// A homogeneous system `A x <= B x` with n rows over Rmax^d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IneqSystem {
    dim: usize,
    rows_a: Vec<TRowVector>,
    rows_b: Vec<TRowVector>,
}

impl IneqSystem {
    /// A system with no rows (whole space Rmax^d).
    pub fn empty(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dimension must be >= 1"));
        }
        Ok(IneqSystem {
            dim,
            rows_a: Vec::new(),
            rows_b: Vec::new(),
        })
    }

    pub fn new(dim: usize, rows_a: Vec<TRowVector>, rows_b: Vec<TRowVector>) -> Result<Self> {
        let mut sys = IneqSystem::empty(dim)?;
        if rows_a.len() != rows_b.len() {
            return Err(Error::invalid(format!(
                "row count mismatch: {} left rows, {} right rows",
                rows_a.len(),
                rows_b.len()
            )));
        }
        for (a, b) in rows_a.into_iter().zip(rows_b) {
            sys.push_row(a, b)?;
        }
        Ok(sys)
    }

    pub fn push_row(&mut self, a: TRowVector, b: TRowVector) -> Result<()> {
        for r in [&a, &b] {
            if r.dim() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    got: r.dim(),
                });
            }
        }
        self.rows_a.push(a);
        self.rows_b.push(b);
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row_count(&self) -> usize {
        self.rows_a.len()
    }

    /// 1-based row access: (A_k, B_k).
    pub fn row(&self, k: usize) -> (&TRowVector, &TRowVector) {
        (&self.rows_a[k - 1], &self.rows_b[k - 1])
    }

    /// First violated row (1-based), or None if x satisfies every row.
    pub fn violated_row(&self, x: &TVector) -> Result<Option<usize>> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.dim(),
            });
        }
        for k in 1..=self.row_count() {
            let (a, b) = self.row(k);
            if a.dot(x)? > b.dot(x)? {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }

    pub fn satisfies(&self, x: &TVector) -> Result<bool> {
        Ok(self.violated_row(x)?.is_none())
    }

    /// The subsystem made of the given rows (1-based indices), in the given
    /// order. Used to accumulate processed halfspaces during the pipeline.
    pub fn subsystem(&self, rows: &[usize]) -> Result<IneqSystem> {
        let mut sys = IneqSystem::empty(self.dim)?;
        for &k in rows {
            if k == 0 || k > self.row_count() {
                return Err(Error::invalid(format!("row index {k} out of range")));
            }
            let (a, b) = self.row(k);
            sys.push_row(a.clone(), b.clone())?;
        }
        Ok(sys)
    }
}

impl fmt::Display for IneqSystem {
    /// One row per line, `A_k  <=  B_k`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in self.rows_a.iter().zip(&self.rows_b) {
            writeln!(f, "{a}  <=  {b}")?;
        }
        Ok(())
    }
}

/// An affine system `A x ⊕ c <= B x ⊕ e` describing a tropical polyhedron in
/// Rmax^d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSystem {
    dim: usize,
    rows_a: Vec<TRowVector>,
    c: Vec<Scalar>,
    rows_b: Vec<TRowVector>,
    e: Vec<Scalar>,
}

impl AffineSystem {
    pub fn empty(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dimension must be >= 1"));
        }
        Ok(AffineSystem {
            dim,
            rows_a: Vec::new(),
            c: Vec::new(),
            rows_b: Vec::new(),
            e: Vec::new(),
        })
    }

    pub fn push_row(&mut self, a: TRowVector, c: Scalar, b: TRowVector, e: Scalar) -> Result<()> {
        for r in [&a, &b] {
            if r.dim() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    got: r.dim(),
                });
            }
        }
        self.rows_a.push(a);
        self.c.push(c);
        self.rows_b.push(b);
        self.e.push(e);
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row_count(&self) -> usize {
        self.rows_a.len()
    }

    /// 1-based row access: (A_k, c_k, B_k, e_k).
    pub fn row(&self, k: usize) -> (&TRowVector, &Scalar, &TRowVector, &Scalar) {
        (
            &self.rows_a[k - 1],
            &self.c[k - 1],
            &self.rows_b[k - 1],
            &self.e[k - 1],
        )
    }

    pub fn satisfies(&self, x: &TVector) -> Result<bool> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.dim(),
            });
        }
        for k in 1..=self.row_count() {
            let (a, c, b, e) = self.row(k);
            let lhs = a.dot(x)?.tadd(c);
            let rhs = b.dot(x)?.tadd(e);
            if lhs > rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::{running_example, tv};
    use super::*;

    #[test]
    fn membership_of_known_rays() {
        let sys = running_example();
        assert_eq!(sys.dim(), 3);
        assert_eq!(sys.row_count(), 4);
        for g in ["-oo 0 -oo", "-2 1 0", "2 2 0", "0 -oo 0", "0 1 0"] {
            assert!(sys.satisfies(&tv(g)).unwrap(), "{g} should be a member");
        }
        // x3 <= x1 + 2 fails for (-oo, -oo, 0)
        assert_eq!(sys.violated_row(&tv("-oo -oo 0")).unwrap(), Some(1));
        // scaling preserves membership
        assert!(sys.satisfies(&tv("5 8 7")).unwrap()); // 7<=7, 5<=8, 5<=9, 7<=7
    }

    #[test]
    fn zero_vector_always_member() {
        let sys = running_example();
        assert!(sys.satisfies(&TVector::zeros(3)).unwrap());
        assert!(IneqSystem::empty(4).unwrap().satisfies(&TVector::zeros(4)).unwrap());
    }

    #[test]
    fn subsystem_selects_rows_in_order() {
        let sys = running_example();
        let sub = sys.subsystem(&[3, 1]).unwrap();
        assert_eq!(sub.row_count(), 2);
        assert_eq!(sub.row(1), sys.row(3));
        assert_eq!(sub.row(2), sys.row(1));
        assert!(sys.subsystem(&[0]).is_err());
        assert!(sys.subsystem(&[5]).is_err());
    }

    #[test]
    fn affine_membership() {
        // x1 <= 3 in dimension 1: A=(0), c=-oo, B=(-oo), e=3
        let mut p = AffineSystem::empty(1).unwrap();
        p.push_row(tv("0"), Scalar::zero(), tv("-oo"), Scalar::from_int(3))
            .unwrap();
        assert!(p.satisfies(&tv("3")).unwrap());
        assert!(p.satisfies(&tv("-oo")).unwrap());
        assert!(!p.satisfies(&tv("4")).unwrap());
    }

    #[test]
    fn dimension_checks() {
        let mut sys = IneqSystem::empty(3).unwrap();
        assert!(sys.push_row(tv("0 0"), tv("0 0 0")).is_err());
        assert!(IneqSystem::empty(0).is_err());
        assert!(sys.satisfies(&tv("0 0")).is_err());
    }
}
