use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Lower-triangular matrix with 1-based indices `1 <= k <= n <= n_max`.
///
/// Rows are stored contiguously; entries above the diagonal do not exist.
#[derive(Debug, Clone, PartialEq)]
pub struct TriMatrix<S> {
    n_max: usize,
    entries: Vec<S>,
}

fn offset(n: usize, k: usize) -> usize {
    n * (n - 1) / 2 + (k - 1)
}

impl<S: Scalar> TriMatrix<S> {
    /// Builds the matrix entry by entry; rows are computed in parallel.
    pub fn from_fn<F>(n_max: usize, f: F) -> Self
    where
        F: Fn(usize, usize) -> S + Sync,
    {
        assert!(n_max >= 1, "n_max must be at least 1");
        let rows: Vec<Vec<S>> = (1..=n_max)
            .into_par_iter()
            .map(|n| (1..=n).map(|k| f(n, k)).collect())
            .collect();
        Self {
            n_max,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn try_from_fn<F>(n_max: usize, f: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> Result<S> + Sync,
    {
        assert!(n_max >= 1, "n_max must be at least 1");
        let rows: Result<Vec<Vec<S>>> = (1..=n_max)
            .into_par_iter()
            .map(|n| (1..=n).map(|k| f(n, k)).collect())
            .collect();
        Ok(Self {
            n_max,
            entries: rows?.into_iter().flatten().collect(),
        })
    }

    pub fn identity(n_max: usize) -> Self {
        Self::from_fn(n_max, |n, k| if n == k { S::one() } else { S::zero() })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Entry `(n, k)`; `None` above the diagonal or out of range.
    pub fn get(&self, n: usize, k: usize) -> Option<&S> {
        if k == 0 || k > n || n > self.n_max {
            return None;
        }
        self.entries.get(offset(n, k))
    }

    /// Entry `(n, k)` for `1 <= k <= n <= n_max`; panics otherwise.
    pub fn at(&self, n: usize, k: usize) -> &S {
        self.get(n, k)
            .unwrap_or_else(|| panic!("({n}, {k}) outside the lower triangle of size {}", self.n_max))
    }

    pub fn row(&self, n: usize) -> &[S] {
        &self.entries[offset(n, 1)..=offset(n, n)]
    }

    pub fn map<T: Scalar, F: Fn(&S) -> T + Sync>(&self, f: F) -> TriMatrix<T> {
        TriMatrix::from_fn(self.n_max, |n, k| f(self.at(n, k)))
    }

    /// Matrix product; `C_{n,k} = sum_{k <= l <= n} A_{n,l} B_{l,k}`.
    pub fn mul(&self, rhs: &TriMatrix<S>) -> Result<TriMatrix<S>> {
        if rhs.n_max != self.n_max {
            return Err(Error::LengthMismatch { need: self.n_max, got: rhs.n_max });
        }
        Ok(TriMatrix::from_fn(self.n_max, |n, k| {
            (k..=n).fold(S::zero(), |acc, l| acc + self.at(n, l).clone() * rhs.at(l, k).clone())
        }))
    }

    /// `T_n = sum_{k=1}^n M_{n,k} S_k` for `n = 1..=n_max`.
    pub fn transform(&self, seq: &[S]) -> Result<Vec<S>> {
        if seq.len() < self.n_max {
            return Err(Error::LengthMismatch { need: self.n_max, got: seq.len() });
        }
        Ok((1..=self.n_max)
            .map(|n| {
                self.row(n)
                    .iter()
                    .zip(seq)
                    .fold(S::zero(), |acc, (m, s)| acc + m.clone() * s.clone())
            })
            .collect())
    }

    /// True when every diagonal entry equals `(-1)^k`.
    pub fn has_signed_unit_diagonal(&self) -> bool {
        (1..=self.n_max).all(|k| *self.at(k, k) == S::sign(k as i64))
    }

    /// Entries in row-major order as `(n, k, value)`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        (1..=self.n_max).flat_map(move |n| (1..=n).map(move |k| (n, k, self.at(n, k))))
    }
}

/// Transform by `m` (free-function form).
pub fn transform<S: Scalar>(m: &TriMatrix<S>, seq: &[S]) -> Result<Vec<S>> {
    m.transform(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn indexing_is_one_based() {
        let m = TriMatrix::from_fn(3, |n, k| Complex64::new((10 * n + k) as f64, 0.0));
        assert_eq!(m.at(1, 1).re, 11.0);
        assert_eq!(m.at(3, 2).re, 32.0);
        assert!(m.get(2, 3).is_none());
        assert!(m.get(0, 0).is_none());
        assert!(m.get(4, 1).is_none());
        assert_eq!(m.row(3).len(), 3);
    }

    #[test]
    fn transform_extracts_columns() {
        let m = TriMatrix::from_fn(4, |n, k| Complex64::new((n * n + k) as f64, 0.0));
        let mut e1 = vec![Complex64::new(0.0, 0.0); 4];
        e1[0] = Complex64::new(1.0, 0.0);
        let col = m.transform(&e1).unwrap();
        for n in 1..=4 {
            assert_eq!(col[n - 1], *m.at(n, 1));
        }
    }

    #[test]
    fn short_sequence_is_rejected() {
        let m: TriMatrix<Complex64> = TriMatrix::identity(5);
        let err = m.transform(&[Complex64::new(1.0, 0.0); 3]).unwrap_err();
        assert_eq!(err, Error::LengthMismatch { need: 5, got: 3 });
    }
}
