//! Dense complex linear algebra for the nodal solver.
//!
//! Node counts stay below ~20, so a plain LU with partial pivoting is the
//! right tool; no sparse machinery.

use crate::scalar::{Real, C};

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<T> {
    n: usize,
    data: Vec<C<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![C::new(T::zero(), T::zero()); n * n],
        }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> C<T> {
        self.data[r * self.n + c]
    }

    #[inline]
    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut C<T> {
        &mut self.data[r * self.n + c]
    }

    #[inline]
    pub fn add(&mut self, r: usize, c: usize, v: C<T>) {
        self.data[r * self.n + c] += v;
    }

    /// Largest |entry|² in the matrix; zero for an empty matrix.
    fn max_norm_sqr(&self) -> T {
        self.data
            .iter()
            .map(|z| z.norm_sqr())
            .fold(T::zero(), T::max)
    }
}

/// LU factorization with partial pivoting, stored in place.
pub struct LuFactors<T> {
    lu: CMatrix<T>,
    pivots: Vec<usize>,
}

/// Factorization failure: the matrix is numerically singular.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SingularMatrix;

/// Factors `m` (consumed) into P·L·U. Fails if any pivot falls below a
/// scale-relative threshold.
pub fn lu_factor<T: Real>(mut m: CMatrix<T>) -> Result<LuFactors<T>, SingularMatrix> {
    let n = m.dimension();
    let scale = m.max_norm_sqr();
    if n > 0 && !(scale > T::zero()) {
        return Err(SingularMatrix);
    }
    // |pivot|^2 threshold: (n * eps)^2 relative to the largest entry.
    let eps = T::epsilon() * T::from_f64_lossy(n as f64);
    let threshold = scale * eps * eps;
    let mut pivots = Vec::with_capacity(n);
    for k in 0..n {
        let mut best = k;
        let mut best_mag = m.at(k, k).norm_sqr();
        for r in (k + 1)..n {
            let mag = m.at(r, k).norm_sqr();
            if mag > best_mag {
                best = r;
                best_mag = mag;
            }
        }
        if !(best_mag > threshold) {
            return Err(SingularMatrix);
        }
        if best != k {
            for c in 0..n {
                let tmp = m.at(k, c);
                *m.at_mut(k, c) = m.at(best, c);
                *m.at_mut(best, c) = tmp;
            }
        }
        pivots.push(best);
        let pivot = m.at(k, k);
        for r in (k + 1)..n {
            let factor = m.at(r, k) / pivot;
            *m.at_mut(r, k) = factor;
            for c in (k + 1)..n {
                let delta = factor * m.at(k, c);
                *m.at_mut(r, c) -= delta;
            }
        }
    }
    Ok(LuFactors { lu: m, pivots })
}

impl<T: Real> LuFactors<T> {
    /// Solves A x = b in place.
    pub fn solve_in_place(&self, b: &mut [C<T>]) {
        let n = self.lu.dimension();
        debug_assert_eq!(b.len(), n);
        for k in 0..n {
            b.swap(k, self.pivots[k]);
        }
        // Forward substitution with unit-lower L.
        for r in 1..n {
            let mut acc = b[r];
            for c in 0..r {
                acc -= self.lu.at(r, c) * b[c];
            }
            b[r] = acc;
        }
        // Back substitution with U.
        for r in (0..n).rev() {
            let mut acc = b[r];
            for c in (r + 1)..n {
                acc -= self.lu.at(r, c) * b[c];
            }
            b[r] = acc / self.lu.at(r, r);
        }
    }
}
