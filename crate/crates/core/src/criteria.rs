//! Closed-form well-roundedness and density-optimality predicates, decided
//! from the coefficients (a, b) alone.
//!
//! Callers are responsible for the family's root-structure validity (F2R
//! needs `a^2-4b > 0`, F2C needs `a^2-4b < 0`, F3R/F4S validity comes from the
//! full polynomial); the predicates only require `a != 0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::construct::{ConstructionFamily, det_closed_form};
use crate::error::{Error, Result};

/// Which inequality branch of the criterion applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    BNonNegative,
    BNegative,
    ComplexBand,
}

impl Branch {
    pub fn code(self) -> &'static str {
        match self {
            Branch::BNonNegative => "b_nonnegative",
            Branch::BNegative => "b_negative",
            Branch::ComplexBand => "complex_band",
        }
    }
}

/// Verdict of the closed-form criterion for one (family, a, b).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionVerdict {
    pub family: ConstructionFamily,
    pub well_rounded: bool,
    /// Highest center density for the family's dimension. Never set for F4S:
    /// its equality cases enlarge the minimum layer to 12 vectors, short of
    /// the 24 needed for the densest dimension-4 packing.
    pub optimal_density: bool,
    /// An equality case holds, so the minimum layer is enlarged.
    pub enlarged_kissing: bool,
    pub branch: Branch,
    /// The minimum the criterion implies, present when well-rounded:
    /// `a^2 - 2b` for F2R/F3R/F4S, `b` for F2C.
    pub predicted_minimum: Option<i128>,
}

/// Decides well-roundedness and optimality from (a, b):
/// F2R/F4S: WR iff `a^2 >= 6b` (b >= 0) or `a^2 >= -2b` (b < 0).
/// F3R: WR iff `a^2 >= 4b` (b >= 0) or `a^2 >= -b` (b < 0).
/// F2C: WR iff `b <= a^2 <= 3b`.
pub fn wr_predicate(family: ConstructionFamily, a: i64, b: i64) -> Result<CriterionVerdict> {
    if a == 0 {
        return Err(Error::InvalidFamily);
    }
    let a2 = (a as i128) * (a as i128);
    let b = b as i128;
    let (well_rounded, enlarged_kissing, optimal_density, branch, minimum) = match family {
        ConstructionFamily::F2R | ConstructionFamily::F4S => {
            let (wr, branch) = if b >= 0 {
                (a2 >= 6 * b, Branch::BNonNegative)
            } else {
                (a2 >= -2 * b, Branch::BNegative)
            };
            let enlarged = a2 == 6 * b || a2 == -2 * b;
            let optimal = enlarged && family == ConstructionFamily::F2R;
            (wr, enlarged, optimal, branch, a2 - 2 * b)
        }
        ConstructionFamily::F3R => {
            let (wr, branch) = if b >= 0 {
                (a2 >= 4 * b, Branch::BNonNegative)
            } else {
                (a2 >= -b, Branch::BNegative)
            };
            let enlarged = a2 == 4 * b || a2 == -b;
            (wr, enlarged, a2 == 4 * b, branch, a2 - 2 * b)
        }
        ConstructionFamily::F2C => {
            let wr = b <= a2 && a2 <= 3 * b;
            let enlarged = a2 == b || a2 == 3 * b;
            (wr, enlarged, enlarged, Branch::ComplexBand, b)
        }
    };
    Ok(CriterionVerdict {
        family,
        well_rounded,
        optimal_density,
        enlarged_kissing,
        branch,
        predicted_minimum: well_rounded.then_some(minimum),
    })
}

/// Closed-form `delta^2 = (predicted minimum / 4)^n / det(G)`, defined only on
/// well-rounded inputs (elsewhere the predicted-minimum formula is unsound).
pub fn density_closed_form(
    family: ConstructionFamily,
    a: i64,
    b: i64,
) -> Result<BigRational> {
    let verdict = wr_predicate(family, a, b)?;
    let Some(minimum) = verdict.predicted_minimum else {
        return Err(Error::NotApplicable(format!(
            "{family} with a={a}, b={b} is not well-rounded"
        )));
    };
    let det = det_closed_form(family, a, b);
    if det.is_zero() {
        return Err(Error::NotApplicable(format!(
            "{family} with a={a}, b={b} has a degenerate generator matrix"
        )));
    }
    let quarter = BigRational::new(BigInt::from(minimum), BigInt::from(4));
    let mut value = BigRational::from_integer(BigInt::from(1));
    for _ in 0..family.dimension() {
        value *= &quarter;
    }
    Ok(value / det)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn f2r_equality_case_is_optimal() {
        let v = wr_predicate(ConstructionFamily::F2R, 2, -2).unwrap();
        assert!(v.well_rounded);
        assert!(v.optimal_density);
        assert!(v.enlarged_kissing);
        assert_eq!(v.branch, Branch::BNegative);
        assert_eq!(v.predicted_minimum, Some(8));
    }

    #[test]
    fn f2c_band() {
        let v = wr_predicate(ConstructionFamily::F2C, 1, 1).unwrap();
        assert!(v.well_rounded);
        assert!(v.optimal_density);
        assert_eq!(v.branch, Branch::ComplexBand);
        assert_eq!(v.predicted_minimum, Some(1));

        // strictly inside the band: well-rounded but not optimal
        let v = wr_predicate(ConstructionFamily::F2C, 2, 2).unwrap();
        assert!(v.well_rounded);
        assert!(!v.optimal_density);

        // outside the band
        let v = wr_predicate(ConstructionFamily::F2C, 1, 5).unwrap();
        assert!(!v.well_rounded);
        assert_eq!(v.predicted_minimum, None);
    }

    #[test]
    fn f3r_inequalities() {
        let v = wr_predicate(ConstructionFamily::F3R, 2, 5).unwrap();
        assert!(!v.well_rounded);

        let v = wr_predicate(ConstructionFamily::F3R, 4, 4).unwrap();
        assert!(v.well_rounded);
        assert!(v.optimal_density);
        assert!(v.enlarged_kissing);
        assert_eq!(v.predicted_minimum, Some(8));

        // a^2 = -b enlarges the layer but is not the densest case
        let v = wr_predicate(ConstructionFamily::F3R, 1, -1).unwrap();
        assert!(v.well_rounded);
        assert!(v.enlarged_kissing);
        assert!(!v.optimal_density);
    }

    #[test]
    fn f4s_is_never_optimal() {
        let v = wr_predicate(ConstructionFamily::F4S, 6, 6).unwrap();
        assert!(v.well_rounded);
        assert!(v.enlarged_kissing);
        assert!(!v.optimal_density);

        let v = wr_predicate(ConstructionFamily::F4S, 4, 1).unwrap();
        assert!(v.well_rounded);
        assert!(!v.enlarged_kissing);
    }

    #[test]
    fn a_zero_is_rejected() {
        assert!(matches!(
            wr_predicate(ConstructionFamily::F2R, 0, 3),
            Err(Error::InvalidFamily)
        ));
    }

    #[test]
    fn density_examples() {
        assert_eq!(
            density_closed_form(ConstructionFamily::F3R, 4, 4).unwrap(),
            rat(1, 32)
        );
        assert_eq!(
            density_closed_form(ConstructionFamily::F2C, 3, 3).unwrap(),
            rat(1, 12)
        );
        assert_eq!(
            density_closed_form(ConstructionFamily::F2R, 6, 6).unwrap(),
            rat(1, 12)
        );
        assert_eq!(
            density_closed_form(ConstructionFamily::F3R, 1, -1).unwrap(),
            rat(27, 1024)
        );
        assert!(matches!(
            density_closed_form(ConstructionFamily::F3R, 2, 5),
            Err(Error::NotApplicable(_))
        ));
    }
}
