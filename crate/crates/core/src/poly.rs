//! Monic integer polynomials of degree 2–4: discriminants, exact root-structure
//! classification, numeric root approximations, and the symmetric-quartic
//! structure test.
//!
//! Classification is decided entirely by exact integer/rational tests;
//! floating-point roots are attached as advisory output only.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::roots;

/// Largest accepted coefficient magnitude.
pub const MAX_COEFF: i64 = 1_000_000;

/// A monic polynomial `x^n + a x^(n-1) + ...` with integer coefficients,
/// degree n in 2..=4. The leading 1 is implicit; `tail` stores the remaining
/// coefficients from highest to lowest power.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    tail: Vec<i64>,
}

impl IntPolynomial {
    pub fn new(tail: Vec<i64>) -> Result<Self> {
        if !(2..=4).contains(&tail.len()) {
            return Err(Error::Parse(format!(
                "expected 2 to 4 coefficients, got {}",
                tail.len()
            )));
        }
        for &c in &tail {
            if c.abs() > MAX_COEFF {
                return Err(Error::CoefficientRange {
                    value: c,
                    limit: MAX_COEFF,
                });
            }
        }
        Ok(Self { tail })
    }

    pub fn quadratic(a: i64, b: i64) -> Result<Self> {
        Self::new(vec![a, b])
    }

    pub fn cubic(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new(vec![a, b, c])
    }

    pub fn quartic(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(vec![a, b, c, d])
    }

    /// Parses the comma-separated coefficient list `a,b[,c[,d]]`; the monic
    /// leading 1 is implicit and the degree is inferred from the count.
    pub fn parse(text: &str) -> Result<Self> {
        let tail = text
            .split(',')
            .map(|tok| {
                i64::from_str(tok.trim())
                    .map_err(|_| Error::Parse(format!("bad integer {:?}", tok.trim())))
            })
            .collect::<Result<Vec<i64>>>()?;
        Self::new(tail)
    }

    pub fn degree(&self) -> usize {
        self.tail.len()
    }

    /// Coefficient of `x^(degree-1)`.
    pub fn a(&self) -> i64 {
        self.tail[0]
    }

    /// Coefficient of `x^(degree-2)`.
    pub fn b(&self) -> i64 {
        self.tail[1]
    }

    /// Coefficient of `x^(degree-3)`, present for degree >= 3.
    pub fn c(&self) -> Option<i64> {
        self.tail.get(2).copied()
    }

    /// Constant coefficient of a quartic.
    pub fn d(&self) -> Option<i64> {
        self.tail.get(3).copied()
    }

    pub fn tail(&self) -> &[i64] {
        &self.tail
    }

    fn require_degree(&self, expected: usize) -> Result<()> {
        if self.degree() != expected {
            return Err(Error::DegreeMismatch {
                expected,
                actual: self.degree(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        write!(f, "x^{n}")?;
        for (k, &c) in self.tail.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let power = n - 1 - k;
            let sign = if c < 0 { '-' } else { '+' };
            let mag = c.unsigned_abs();
            match power {
                0 => write!(f, "{sign}{mag}")?,
                1 if mag == 1 => write!(f, "{sign}x")?,
                1 => write!(f, "{sign}{mag}x")?,
                _ if mag == 1 => write!(f, "{sign}x^{power}")?,
                _ => write!(f, "{sign}{mag}x^{power}")?,
            }
        }
        Ok(())
    }
}

/// Exact root-structure classes recognized by the construction families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootKind {
    TwoDistinctReal,
    ComplexConjugatePair,
    ThreeDistinctReal,
    FourDistinctRealSymmetric,
    Other,
}

/// Classification outcome: the exact kind, numeric root approximations
/// (ascending by real part, then imaginary part), and for symmetric quartics
/// the exact squared root `gamma_sq = -c/a` of the `x^2 - gamma^2` factor.
#[derive(Debug, Clone, PartialEq)]
pub struct RootClassification {
    pub kind: RootKind,
    pub roots: Vec<Complex64>,
    pub gamma_sq: Option<BigRational>,
}

/// `a^2 - 4b` for a degree-2 polynomial.
pub fn discriminant_quadratic(p: &IntPolynomial) -> Result<i128> {
    p.require_degree(2)?;
    let (a, b) = (p.a() as i128, p.b() as i128);
    Ok(a * a - 4 * b)
}

/// `18abc - 4a^3 c + a^2 b^2 - 4b^3 - 27c^2` for a degree-3 polynomial;
/// positive exactly when the roots are three distinct reals.
pub fn discriminant_cubic(p: &IntPolynomial) -> Result<i128> {
    p.require_degree(3)?;
    let (a, b, c) = (p.a() as i128, p.b() as i128, p.c().unwrap() as i128);
    Ok(18 * a * b * c - 4 * a * a * a * c + a * a * b * b - 4 * b * b * b - 27 * c * c)
}

/// Tests whether a quartic has four distinct real roots with one pair summing
/// to zero, i.e. factors as `(x^2 - gamma^2)(x^2 + a x + p)` with distinct real
/// roots on both factors and no root shared between them. Returns the exact
/// `gamma^2 = -c/a` when the structure holds, `None` otherwise.
pub fn detect_symmetric_quartic(p: &IntPolynomial) -> Result<Option<BigRational>> {
    p.require_degree(4)?;
    if p.a() == 0 {
        return Err(Error::InvalidFamily);
    }
    let a = BigRational::from_integer(BigInt::from(p.a()));
    let b = BigRational::from_integer(BigInt::from(p.b()));
    let c = BigRational::from_integer(BigInt::from(p.c().unwrap()));
    let d = BigRational::from_integer(BigInt::from(p.d().unwrap()));

    // (i) gamma^2 = -c/a must be positive
    let gamma_sq = -&c / &a;
    if !gamma_sq.is_positive() {
        return Ok(None);
    }
    // cofactor constant term: p = b + gamma^2
    let pc = &b + &gamma_sq;
    // (ii) constant term must match -gamma^2 * p
    if d != -(&gamma_sq * &pc) {
        return Ok(None);
    }
    // (iii) cofactor x^2 + a x + p needs two distinct real roots
    let four = BigRational::from_integer(BigInt::from(4));
    if &a * &a <= &four * &pc {
        return Ok(None);
    }
    // (iv) cofactor roots must avoid +-gamma: (p + gamma^2)^2 != a^2 gamma^2
    let s = &pc + &gamma_sq;
    if &s * &s == &a * &a * &gamma_sq {
        return Ok(None);
    }
    Ok(Some(gamma_sq))
}

/// Builds `x^4 + a x^3 + (p - gamma_sq) x^2 - a gamma_sq x - gamma_sq p`, the
/// quartic that factors as `(x^2 - gamma_sq)(x^2 + a x + p)`. Inverse of
/// [`detect_symmetric_quartic`] on valid parameters.
pub fn synthesize_symmetric_quartic(a: i64, p: i64, gamma_sq: i64) -> Result<IntPolynomial> {
    if a == 0 {
        return Err(Error::InvalidParameter("a must be nonzero".into()));
    }
    if gamma_sq < 1 {
        return Err(Error::InvalidParameter(format!(
            "gamma_sq must be >= 1, got {gamma_sq}"
        )));
    }
    let (ai, pi, gi) = (a as i128, p as i128, gamma_sq as i128);
    if ai * ai - 4 * pi <= 0 {
        return Err(Error::InvalidParameter(format!(
            "a^2 - 4p = {} is not positive, cofactor roots are not distinct reals",
            ai * ai - 4 * pi
        )));
    }
    if (pi + gi) * (pi + gi) == ai * ai * gi {
        return Err(Error::InvalidParameter(
            "(p + gamma_sq)^2 = a^2 gamma_sq, a cofactor root collides with +-gamma".into(),
        ));
    }
    let to_i64 = |v: i128, what: &str| -> Result<i64> {
        i64::try_from(v).map_err(|_| Error::NumericOverflow(format!("{what} = {v}")))
    };
    IntPolynomial::quartic(
        a,
        to_i64(pi - gi, "b")?,
        to_i64(-ai * gi, "c")?,
        to_i64(-gi * pi, "d")?,
    )
}

/// Classifies the root structure from exact integer/rational data and attaches
/// numeric root approximations. Never fails: structures outside the four
/// recognized classes come back as [`RootKind::Other`].
pub fn classify(p: &IntPolynomial) -> RootClassification {
    let roots = roots_numeric(p);
    let (kind, gamma_sq) = match p.degree() {
        2 => {
            let disc = discriminant_quadratic(p).expect("degree checked");
            if disc > 0 {
                (RootKind::TwoDistinctReal, None)
            } else if disc < 0 {
                (RootKind::ComplexConjugatePair, None)
            } else {
                (RootKind::Other, None)
            }
        }
        3 => {
            if discriminant_cubic(p).expect("degree checked") > 0 {
                (RootKind::ThreeDistinctReal, None)
            } else {
                (RootKind::Other, None)
            }
        }
        _ => {
            if p.a() != 0 {
                match detect_symmetric_quartic(p).expect("degree and a checked") {
                    Some(g) => (RootKind::FourDistinctRealSymmetric, Some(g)),
                    None => (RootKind::Other, None),
                }
            } else {
                (RootKind::Other, None)
            }
        }
    };
    RootClassification {
        kind,
        roots,
        gamma_sq,
    }
}

/// Numeric approximations of all roots, ascending by real part then imaginary
/// part. Absolute error is within 1e-10 for the well-separated roots handled
/// by the construction families.
pub fn roots_numeric(p: &IntPolynomial) -> Vec<Complex64> {
    roots::monic_roots(p.tail())
}
