//! Exact symmetric rational Gram matrices with denominators dividing 2.
//!
//! Positive definiteness, the LDL^T decomposition, and the determinant are all
//! computed in exact rational arithmetic at construction time. Quadratic-form
//! values use an i128 fast path on the doubled integer entries with a big-int
//! fallback, so they are exact at every coefficient scale the crate accepts.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest supported matrix dimension.
pub const MAX_DIMENSION: usize = 4;

/// A symmetric positive-definite rational matrix whose doubled entries are
/// integers, together with its exact LDL^T decomposition and determinant.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactGram {
    n: usize,
    entries: Vec<BigRational>,
    /// 2 * entries, row-major; the single integer source for form values.
    twice: Vec<i128>,
    ldl_d: Vec<BigRational>,
    ldl_l: Vec<BigRational>,
    det: BigRational,
}

impl ExactGram {
    pub fn new(n: usize, entries: Vec<BigRational>) -> Result<Self> {
        if n == 0 || n > MAX_DIMENSION {
            return Err(Error::UnsupportedDimension(n));
        }
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                actual: entries.len(),
            });
        }
        let two = BigRational::from_integer(BigInt::from(2));
        let mut twice = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                if entries[i * n + j] != entries[j * n + i] {
                    return Err(Error::InvalidParameter(format!(
                        "matrix is not symmetric at ({i},{j})"
                    )));
                }
                let doubled = &entries[i * n + j] * &two;
                if !doubled.is_integer() {
                    return Err(Error::InvalidParameter(format!(
                        "entry ({i},{j}) = {} has a denominator not dividing 2",
                        entries[i * n + j]
                    )));
                }
                let v = doubled.to_integer().to_i128().ok_or_else(|| {
                    Error::NumericOverflow(format!("entry ({i},{j}) too large"))
                })?;
                twice.push(v);
            }
        }
        let (ldl_d, ldl_l) = ldl_decompose(n, &entries)?;
        let det = ldl_d.iter().product();
        Ok(Self {
            n,
            entries,
            twice,
            ldl_d,
            ldl_l,
            det,
        })
    }

    pub fn from_integer_entries(n: usize, entries: &[i64]) -> Result<Self> {
        Self::new(
            n,
            entries
                .iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    /// `2 * entry(i, j)` as an integer.
    pub fn twice_entry(&self, i: usize, j: usize) -> i128 {
        self.twice[i * self.n + j]
    }

    pub fn det_exact(&self) -> &BigRational {
        &self.det
    }

    pub fn min_diagonal(&self) -> BigRational {
        (0..self.n)
            .map(|i| self.entry(i, i).clone())
            .min()
            .expect("dimension is at least 1")
    }

    /// The exact decomposition `G = L D L^T`: `D` diagonal (all positive),
    /// `L` unit lower triangular stored row-major.
    pub(crate) fn ldl(&self) -> (&[BigRational], &[BigRational]) {
        (&self.ldl_d, &self.ldl_l)
    }

    /// Exact quadratic form value `x^T G x`.
    pub fn form_value(&self, coords: &[i64]) -> Result<BigRational> {
        if coords.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: coords.len(),
            });
        }
        if let Some(doubled) = self.form_value_twice_i128(coords) {
            return Ok(BigRational::new(BigInt::from(doubled), BigInt::from(2)));
        }
        // fallback for coordinates large enough to overflow i128
        let mut acc = BigInt::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                acc += BigInt::from(self.twice[i * self.n + j])
                    * BigInt::from(coords[i])
                    * BigInt::from(coords[j]);
            }
        }
        Ok(BigRational::new(acc, BigInt::from(2)))
    }

    /// `2 x^T G x` in i128, or `None` on overflow.
    pub(crate) fn form_value_twice_i128(&self, coords: &[i64]) -> Option<i128> {
        let mut acc: i128 = 0;
        for i in 0..self.n {
            for j in 0..self.n {
                let term = self.twice[i * self.n + j]
                    .checked_mul(coords[i] as i128)?
                    .checked_mul(coords[j] as i128)?;
                acc = acc.checked_add(term)?;
            }
        }
        Some(acc)
    }
}

fn ldl_decompose(
    n: usize,
    entries: &[BigRational],
) -> Result<(Vec<BigRational>, Vec<BigRational>)> {
    let mut d: Vec<BigRational> = Vec::with_capacity(n);
    let mut l = vec![BigRational::zero(); n * n];
    for j in 0..n {
        let mut dj = entries[j * n + j].clone();
        for k in 0..j {
            dj -= &l[j * n + k] * &l[j * n + k] * &d[k];
        }
        if !dj.is_positive() {
            return Err(Error::NotPositiveDefinite);
        }
        l[j * n + j] = BigRational::one();
        for i in (j + 1)..n {
            let mut v = entries[i * n + j].clone();
            for k in 0..j {
                v -= &l[i * n + k] * &l[j * n + k] * &d[k];
            }
            l[i * n + j] = v / &dj;
        }
        d.push(dj);
    }
    Ok((d, l))
}

/// Exact determinant of an arbitrary square rational matrix by cofactor
/// expansion. Independent of the LDL^T route, and defined for non-positive-
/// definite inputs as well.
pub fn det_rational(n: usize, entries: &[BigRational]) -> BigRational {
    assert_eq!(entries.len(), n * n, "entry count must be n^2");
    match n {
        0 => BigRational::one(),
        1 => entries[0].clone(),
        _ => {
            let mut acc = BigRational::zero();
            for col in 0..n {
                if entries[col].is_zero() {
                    continue;
                }
                let mut minor = Vec::with_capacity((n - 1) * (n - 1));
                for i in 1..n {
                    for j in 0..n {
                        if j != col {
                            minor.push(entries[i * n + j].clone());
                        }
                    }
                }
                let term = &entries[col] * det_rational(n - 1, &minor);
                if col % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
    }
}
