//! The four construction families: mapping a classified polynomial to an exact
//! Gram matrix, a closed-form determinant, and a floating generator matrix
//! whose rows are built from the roots.
//!
//! The exact Gram matrix, derived from the coefficients alone, is the single
//! source of truth for norms, minima, and densities; the floating generator
//! matrix is advisory output cross-checked against it.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gram::ExactGram;
use crate::poly::{self, IntPolynomial, RootKind};

/// The four lattice constructions, tagged by the root structure they consume.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstructionFamily {
    /// Quadratic with two distinct real roots; rows (α,β), (β,α).
    F2R,
    /// Quadratic with a complex-conjugate pair α±iβ; rows (α,β), (α,−β).
    F2C,
    /// Cubic with three distinct real roots; rows are cyclic shifts of (α,β,γ).
    F3R,
    /// Quartic with distinct real roots α,β,γ,ψ and α=−γ; rows are cyclic
    /// shifts of (α,β,γ,ψ).
    F4S,
}

impl ConstructionFamily {
    pub const ALL: [ConstructionFamily; 4] = [
        ConstructionFamily::F2R,
        ConstructionFamily::F2C,
        ConstructionFamily::F3R,
        ConstructionFamily::F4S,
    ];

    pub fn dimension(self) -> usize {
        match self {
            ConstructionFamily::F2R | ConstructionFamily::F2C => 2,
            ConstructionFamily::F3R => 3,
            ConstructionFamily::F4S => 4,
        }
    }

    pub fn code(self) -> &'static str {
        match self {
            ConstructionFamily::F2R => "f2r",
            ConstructionFamily::F2C => "f2c",
            ConstructionFamily::F3R => "f3r",
            ConstructionFamily::F4S => "f4s",
        }
    }

    /// The root-structure class this family requires.
    pub fn expected_kind(self) -> RootKind {
        match self {
            ConstructionFamily::F2R => RootKind::TwoDistinctReal,
            ConstructionFamily::F2C => RootKind::ComplexConjugatePair,
            ConstructionFamily::F3R => RootKind::ThreeDistinctReal,
            ConstructionFamily::F4S => RootKind::FourDistinctRealSymmetric,
        }
    }
}

impl fmt::Display for ConstructionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for ConstructionFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "f2r" => Ok(ConstructionFamily::F2R),
            "f2c" => Ok(ConstructionFamily::F2C),
            "f3r" => Ok(ConstructionFamily::F3R),
            "f4s" => Ok(ConstructionFamily::F4S),
            other => Err(Error::InvalidParameter(format!(
                "unknown family {other:?} (expected f2r, f2c, f3r, or f4s)"
            ))),
        }
    }
}

impl Serialize for ConstructionFamily {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.code())
    }
}

/// The family matching a root-structure class, if any.
pub fn family_for_kind(kind: RootKind) -> Option<ConstructionFamily> {
    match kind {
        RootKind::TwoDistinctReal => Some(ConstructionFamily::F2R),
        RootKind::ComplexConjugatePair => Some(ConstructionFamily::F2C),
        RootKind::ThreeDistinctReal => Some(ConstructionFamily::F3R),
        RootKind::FourDistinctRealSymmetric => Some(ConstructionFamily::F4S),
        RootKind::Other => None,
    }
}

/// A validated (polynomial, family) pair: the exact Gram matrix, the
/// closed-form determinant, and the floating generator matrix.
#[derive(Debug, Clone)]
pub struct LatticeInstance {
    pub poly: IntPolynomial,
    pub family: ConstructionFamily,
    pub gram: ExactGram,
    /// Rows are the basis vectors assembled from the roots.
    pub gen_matrix: Vec<Vec<f64>>,
    pub det_closed_form: BigRational,
}

impl LatticeInstance {
    /// Maximum absolute entry difference between the exact Gram matrix and
    /// `gen_matrix * gen_matrix^T`.
    pub fn gram_float_deviation(&self) -> f64 {
        let n = self.gram.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let dot: f64 = (0..n)
                    .map(|k| self.gen_matrix[i][k] * self.gen_matrix[j][k])
                    .sum();
                let exact = self.gram.entry(i, j).to_f64().unwrap_or(f64::NAN);
                worst = worst.max((dot - exact).abs());
            }
        }
        worst
    }

    /// Embeds basis coordinates into the ambient space: `coords * gen_matrix`.
    pub fn embed(&self, coords: &[i64]) -> Vec<f64> {
        let n = self.gram.dim();
        (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| coords[i] as f64 * self.gen_matrix[i][j])
                    .sum()
            })
            .collect()
    }
}

/// The family Gram matrix entries as exact rationals, straight from the
/// coefficient formulas. No validity or definiteness check is applied.
pub fn gram_entries_for_family(
    family: ConstructionFamily,
    a: i64,
    b: i64,
) -> Vec<BigRational> {
    let ai = BigInt::from(a);
    let bi = BigInt::from(b);
    let diag = BigRational::from_integer(&ai * &ai - BigInt::from(2) * &bi);
    let int = |v: BigInt| BigRational::from_integer(v);
    match family {
        ConstructionFamily::F2R => {
            let off = int(BigInt::from(2) * &bi);
            vec![diag.clone(), off.clone(), off, diag]
        }
        ConstructionFamily::F2C => {
            let d = int(bi.clone());
            let off = BigRational::new(&ai * &ai - BigInt::from(2) * &bi, BigInt::from(2));
            vec![d.clone(), off.clone(), off, d]
        }
        ConstructionFamily::F3R => {
            let off = int(bi.clone());
            let mut m = vec![off; 9];
            for i in 0..3 {
                m[i * 3 + i] = diag.clone();
            }
            m
        }
        ConstructionFamily::F4S => {
            let off = int(BigInt::from(2) * &bi);
            let zero = int(BigInt::from(0));
            let mut m = vec![zero; 16];
            for i in 0..4 {
                m[i * 4 + i] = diag.clone();
            }
            m[2] = off.clone(); // (0,2)
            m[8] = off.clone(); // (2,0)
            m[7] = off.clone(); // (1,3)
            m[13] = off; // (3,1)
            m
        }
    }
}

/// The family Gram matrix, validated positive definite. Callers are expected
/// to have checked family validity; invalid (a, b) surface as
/// [`Error::NotPositiveDefinite`].
pub fn gram_for_family(family: ConstructionFamily, a: i64, b: i64) -> Result<ExactGram> {
    ExactGram::new(family.dimension(), gram_entries_for_family(family, a, b))
}

/// Closed-form `det(G)` from the coefficients alone:
/// F2R `a^2(a^2-4b)`, F2C `a^2(4b-a^2)/4`, F3R `a^2(a^2-3b)^2`,
/// F4S `a^4(a^2-4b)^2`.
pub fn det_closed_form(family: ConstructionFamily, a: i64, b: i64) -> BigRational {
    let a = BigInt::from(a);
    let b = BigInt::from(b);
    let a2 = &a * &a;
    match family {
        ConstructionFamily::F2R => {
            BigRational::from_integer(&a2 * (&a2 - BigInt::from(4) * &b))
        }
        ConstructionFamily::F2C => {
            BigRational::new(&a2 * (BigInt::from(4) * &b - &a2), BigInt::from(4))
        }
        ConstructionFamily::F3R => {
            let f = &a2 - BigInt::from(3) * &b;
            BigRational::from_integer(&a2 * &f * &f)
        }
        ConstructionFamily::F4S => {
            let f = &a2 - BigInt::from(4) * &b;
            BigRational::from_integer(&a2 * &a2 * &f * &f)
        }
    }
}

/// Builds the lattice instance for a polynomial whose root structure matches
/// one of the four families.
pub fn build(p: &IntPolynomial) -> Result<LatticeInstance> {
    if p.a() == 0 {
        return Err(Error::InvalidFamily);
    }
    let cls = poly::classify(p);
    let family = family_for_kind(cls.kind).ok_or(Error::UnsupportedStructure)?;
    let gram = gram_for_family(family, p.a(), p.b())
        .map_err(|e| Error::Internal(format!("gram construction failed for {p}: {e}")))?;
    let det_closed = det_closed_form(family, p.a(), p.b());
    if &det_closed != gram.det_exact() {
        return Err(Error::Internal(format!(
            "closed-form determinant {det_closed} != exact {} for {p}",
            gram.det_exact()
        )));
    }
    let gen_matrix = generator_matrix(family, p, &cls.gamma_sq)?;
    Ok(LatticeInstance {
        poly: p.clone(),
        family,
        gram,
        gen_matrix,
        det_closed_form: det_closed,
    })
}

/// Assembles the generator rows with the deterministic root assignment:
/// real roots ascending; for F2C the positive imaginary part; for F4S
/// γ = +sqrt(γ²) and β ≤ ψ.
fn generator_matrix(
    family: ConstructionFamily,
    p: &IntPolynomial,
    gamma_sq: &Option<BigRational>,
) -> Result<Vec<Vec<f64>>> {
    match family {
        ConstructionFamily::F2R => {
            let rs = poly::roots_numeric(p);
            let (alpha, beta) = (rs[0].re, rs[1].re);
            Ok(vec![vec![alpha, beta], vec![beta, alpha]])
        }
        ConstructionFamily::F2C => {
            let a = p.a() as f64;
            let b = p.b() as f64;
            let alpha = -a / 2.0;
            let beta = (4.0 * b - a * a).sqrt() / 2.0;
            Ok(vec![vec![alpha, beta], vec![alpha, -beta]])
        }
        ConstructionFamily::F3R => {
            let rs = poly::roots_numeric(p);
            let (alpha, beta, gamma) = (rs[0].re, rs[1].re, rs[2].re);
            Ok(vec![
                vec![alpha, beta, gamma],
                vec![gamma, alpha, beta],
                vec![beta, gamma, alpha],
            ])
        }
        ConstructionFamily::F4S => {
            let gsq = gamma_sq
                .as_ref()
                .ok_or_else(|| Error::Internal("missing gamma_sq for F4S".into()))?;
            let gamma = gsq
                .to_f64()
                .ok_or_else(|| Error::Internal("gamma_sq out of float range".into()))?
                .sqrt();
            let alpha = -gamma;
            // cofactor x^2 + a x + p with p = b + gamma^2
            let a = p.a() as f64;
            let pc = p.b() as f64 + gsq.to_f64().unwrap_or(f64::NAN);
            let disc = (a * a - 4.0 * pc).sqrt();
            let beta = (-a - disc) / 2.0;
            let psi = (-a + disc) / 2.0;
            Ok(vec![
                vec![alpha, beta, gamma, psi],
                vec![beta, gamma, psi, alpha],
                vec![gamma, psi, alpha, beta],
                vec![psi, alpha, beta, gamma],
            ])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gram::det_rational;

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn build_f2r_example() {
        let inst = build(&IntPolynomial::quadratic(6, 6).unwrap()).unwrap();
        assert_eq!(inst.family, ConstructionFamily::F2R);
        assert_eq!(inst.gram.entry(0, 0), &int(24));
        assert_eq!(inst.gram.entry(0, 1), &int(12));
        assert_eq!(inst.gram.det_exact(), &int(432));
        assert!(inst.gram_float_deviation() <= 1e-8);
    }

    #[test]
    fn build_f2c_example() {
        let inst = build(&IntPolynomial::quadratic(3, 3).unwrap()).unwrap();
        assert_eq!(inst.family, ConstructionFamily::F2C);
        assert_eq!(inst.gram.entry(0, 0), &int(3));
        assert_eq!(inst.gram.entry(0, 1), &rat(3, 2));
        assert_eq!(inst.gram.det_exact(), &rat(27, 4));
        assert!(inst.gram_float_deviation() <= 1e-8);
    }

    #[test]
    fn build_f3r_example() {
        let inst = build(&IntPolynomial::cubic(4, 4, 1).unwrap()).unwrap();
        assert_eq!(inst.family, ConstructionFamily::F3R);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 8 } else { 4 };
                assert_eq!(inst.gram.entry(i, j), &int(expect));
            }
        }
        assert_eq!(inst.gram.det_exact(), &int(256));
        assert!(inst.gram_float_deviation() <= 1e-8);
    }

    #[test]
    fn build_f4s_example() {
        let inst = build(&IntPolynomial::quartic(6, 6, -6, -7).unwrap()).unwrap();
        assert_eq!(inst.family, ConstructionFamily::F4S);
        assert_eq!(inst.gram.entry(0, 0), &int(24));
        assert_eq!(inst.gram.entry(0, 2), &int(12));
        assert_eq!(inst.gram.entry(1, 3), &int(12));
        assert_eq!(inst.gram.entry(0, 1), &int(0));
        assert_eq!(inst.gram.det_exact(), &int(186_624));
        assert!(inst.gram_float_deviation() <= 1e-8);
    }

    #[test]
    fn build_rejects_invalid_input() {
        assert!(matches!(
            build(&IntPolynomial::quadratic(0, 5).unwrap()),
            Err(Error::InvalidFamily)
        ));
        // disc = 0: double root
        assert!(matches!(
            build(&IntPolynomial::quadratic(2, 1).unwrap()),
            Err(Error::UnsupportedStructure)
        ));
        // non-symmetric quartic
        assert!(matches!(
            build(&IntPolynomial::quartic(2, 3, 4, 5).unwrap()),
            Err(Error::UnsupportedStructure)
        ));
    }

    #[test]
    fn gram_for_family_examples() {
        let g = gram_for_family(ConstructionFamily::F4S, 6, 6).unwrap();
        assert_eq!(g.entry(0, 0), &int(24));
        assert_eq!(g.entry(0, 2), &int(12));
        assert_eq!(g.entry(0, 3), &int(0));

        let g = gram_for_family(ConstructionFamily::F2R, 1, 0).unwrap();
        assert_eq!(g.entries(), &[int(1), int(0), int(0), int(1)]);

        let g = gram_for_family(ConstructionFamily::F3R, 1, -1).unwrap();
        assert_eq!(g.entry(0, 0), &int(3));
        assert_eq!(g.entry(0, 1), &int(-1));

        // invalid combinations surface as non-positive-definite
        assert!(matches!(
            gram_for_family(ConstructionFamily::F2R, 1, 1),
            Err(Error::NotPositiveDefinite)
        ));
    }

    #[test]
    fn det_closed_form_examples() {
        assert_eq!(det_closed_form(ConstructionFamily::F2R, 2, -2), int(48));
        assert_eq!(det_closed_form(ConstructionFamily::F3R, 1, -1), int(16));
        assert_eq!(
            det_closed_form(ConstructionFamily::F4S, 6, 6),
            int(186_624)
        );
        assert_eq!(det_closed_form(ConstructionFamily::F2C, 3, 3), rat(27, 4));
    }

    #[test]
    fn det_closed_form_matches_cofactor_expansion_on_a_grid() {
        for family in ConstructionFamily::ALL {
            for a in [-7i64, -2, 1, 3, 9] {
                for b in -9i64..=9 {
                    let entries =
                        gram_entries_for_family(family, a, b);
                    assert_eq!(
                        det_closed_form(family, a, b),
                        det_rational(family.dimension(), &entries),
                        "family {family} a={a} b={b}"
                    );
                }
            }
        }
    }

    #[test]
    fn extreme_coefficients_stay_exact() {
        // a^4 (a^2 - 4b)^2 at the accepted coefficient bound
        let a = 1_000_000i64;
        let b = -1_000_000i64;
        let entries = gram_entries_for_family(ConstructionFamily::F4S, a, b);
        assert_eq!(
            det_closed_form(ConstructionFamily::F4S, a, b),
            det_rational(4, &entries)
        );
        let g = gram_for_family(ConstructionFamily::F4S, a, b).unwrap();
        let v = g
            .form_value(&[1_000_000, -1_000_000, 1_000_000, -1_000_000])
            .unwrap();
        assert!(v.is_integer());
        let m = crate::svp::shortest_vectors(&g);
        assert_eq!(
            m.lambda,
            BigRational::from_integer(BigInt::from(1_000_002_000_000i64))
        );
        assert_eq!(m.kissing, 8);
        assert!(m.well_rounded);
    }

    #[test]
    fn generator_rows_embed_coordinates() {
        let inst = build(&IntPolynomial::quadratic(6, 6).unwrap()).unwrap();
        let v = inst.embed(&[1, 0]);
        assert_eq!(v.len(), 2);
        // (1,0) embeds to the first row
        assert_eq!(v, inst.gen_matrix[0]);
    }

    #[test]
    fn family_parsing() {
        assert_eq!(
            "f2r".parse::<ConstructionFamily>().unwrap(),
            ConstructionFamily::F2R
        );
        assert_eq!(
            "F4S".parse::<ConstructionFamily>().unwrap(),
            ConstructionFamily::F4S
        );
        assert!("f5x".parse::<ConstructionFamily>().is_err());
        assert_eq!(ConstructionFamily::F3R.dimension(), 3);
        assert_eq!(ConstructionFamily::F3R.to_string(), "f3r");
    }
}
