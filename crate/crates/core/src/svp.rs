//! Exact shortest-vector computation for positive-definite rational Gram
//! matrices of dimension at most 4.
//!
//! The engine enumerates every integer vector whose form value is at most the
//! smallest diagonal entry (the norm of a unit coordinate vector, hence a
//! valid upper bound) with a depth-first search driven by the exact LDL^T
//! decomposition. Candidate ranges per level come from a floating square root
//! widened by one integer on both sides; every candidate is then accepted or
//! rejected in exact rational arithmetic, so boundary ties are never missed.
//!
//! [`naive_shortest_vectors`] is a deliberately simple reference search used
//! to cross-check the engine. It shares no code with the LDL^T route: the box
//! bounds come from the adjugate and the scan evaluates the doubled integer
//! form directly.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::Result;
use crate::gram::{ExactGram, det_rational};

/// Integer coefficients of a lattice vector in the construction basis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoordinateVector(pub Vec<i64>);

impl CoordinateVector {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn negated(&self) -> Self {
        CoordinateVector(self.0.iter().map(|&v| -v).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }
}

impl fmt::Display for CoordinateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// The lattice minimum and everything attached to it.
#[derive(Debug, Clone, PartialEq)]
pub struct MinResult {
    /// Smallest nonzero form value.
    pub lambda: BigRational,
    /// Every coordinate vector attaining `lambda`, both signs, sorted
    /// lexicographically.
    pub minimal_vectors: Vec<CoordinateVector>,
    pub kissing: usize,
    /// Exact rank of the minimal-vector coordinate matrix.
    pub span_rank: usize,
    pub well_rounded: bool,
}

/// Exact squared center density `delta^2 = (lambda/4)^n / det(G)` with a
/// floating approximation of `delta`.
#[derive(Debug, Clone, PartialEq)]
pub struct CenterDensitySq {
    pub value: BigRational,
    pub numeric: f64,
}

/// Exact form value `x^T G x`; errors on a length mismatch.
pub fn form_value(g: &ExactGram, v: &CoordinateVector) -> Result<BigRational> {
    g.form_value(v.coords())
}

/// Exact minimum, full minimal-vector set, kissing number, span rank, and
/// well-roundedness. Positive definiteness and the dimension cap are enforced
/// when the [`ExactGram`] is constructed.
pub fn shortest_vectors(g: &ExactGram) -> MinResult {
    let n = g.dim();
    let bound = g.min_diagonal();
    let (d, l) = g.ldl();
    let mut hits: Vec<(Vec<i64>, BigRational)> = Vec::new();
    let mut coords = vec![0i64; n];
    enumerate_level(
        n - 1,
        &BigRational::zero(),
        &mut coords,
        &bound,
        d,
        l,
        n,
        &mut hits,
    );
    let lambda = hits
        .iter()
        .map(|(_, q)| q)
        .min()
        .expect("unit vectors always satisfy the bound")
        .clone();
    let mut minimal: Vec<CoordinateVector> = hits
        .into_iter()
        .filter(|(_, q)| *q == lambda)
        .map(|(v, _)| CoordinateVector(v))
        .collect();
    minimal.sort();
    finish_result(g, lambda, minimal)
}

fn finish_result(
    g: &ExactGram,
    lambda: BigRational,
    minimal: Vec<CoordinateVector>,
) -> MinResult {
    let n = g.dim();
    let span_rank = coordinate_rank(&minimal, n);
    MinResult {
        lambda,
        kissing: minimal.len(),
        span_rank,
        well_rounded: span_rank == n,
        minimal_vectors: minimal,
    }
}

/// DFS over level `level` (levels run n-1 down to 0). `acc` is the exact form
/// contribution of the already fixed levels; a vector is recorded when every
/// level is fixed and `acc` stays within the bound.
#[allow(clippy::too_many_arguments)]
fn enumerate_level(
    level: usize,
    acc: &BigRational,
    coords: &mut [i64],
    bound: &BigRational,
    d: &[BigRational],
    l: &[BigRational],
    n: usize,
    hits: &mut Vec<(Vec<i64>, BigRational)>,
) {
    // offset forced by the fixed higher levels: s = sum_{i>level} L[i][level] x_i
    let mut s = BigRational::zero();
    for i in (level + 1)..n {
        if coords[i] != 0 {
            s += &l[i * n + level] * BigRational::from_integer(BigInt::from(coords[i]));
        }
    }
    let budget = bound - acc;
    let radius = (&budget / &d[level]).to_f64().unwrap_or(0.0).max(0.0).sqrt();
    let center = -s.to_f64().unwrap_or(0.0);
    let lo = (center - radius).floor() as i64 - 1;
    let hi = (center + radius).ceil() as i64 + 1;
    for x in lo..=hi {
        let c = &s + BigRational::from_integer(BigInt::from(x));
        let next = acc + &d[level] * &c * &c;
        if next > *bound {
            continue;
        }
        coords[level] = x;
        if level == 0 {
            if coords.iter().any(|&v| v != 0) {
                hits.push((coords.to_vec(), next));
            }
        } else {
            enumerate_level(level - 1, &next, coords, bound, d, l, n, hits);
        }
    }
    coords[level] = 0;
}

/// `true` when the minimal vectors span the whole space.
pub fn is_well_rounded(g: &ExactGram) -> bool {
    shortest_vectors(g).well_rounded
}

/// Exact `delta^2 = (lambda/4)^n / det(G)` for a result computed from `g`.
pub fn center_density_sq(g: &ExactGram, m: &MinResult) -> CenterDensitySq {
    let n = g.dim();
    let quarter = &m.lambda / BigRational::from_integer(BigInt::from(4));
    let mut value = BigRational::from_integer(BigInt::from(1));
    for _ in 0..n {
        value *= &quarter;
    }
    value /= g.det_exact();
    let numeric = value.to_f64().map(f64::sqrt).unwrap_or(f64::NAN);
    CenterDensitySq { value, numeric }
}

/// Reference brute-force search: scans the whole box `|x_i| <= B_i + margin`
/// where `B_i = floor(sqrt(U * (G^{-1})_ii))` is the exact per-coordinate
/// bound for form values up to `U`, the smallest diagonal entry. Kept free of
/// any LDL^T machinery so it can serve as an independent oracle.
pub fn naive_shortest_vectors(g: &ExactGram, extra_margin: u32) -> MinResult {
    let n = g.dim();
    let u = g.min_diagonal();
    let det = g.det_exact();

    let mut box_bounds = vec![0i64; n];
    for (i, slot) in box_bounds.iter_mut().enumerate() {
        // (G^{-1})_ii = principal minor complement / det
        let mut minor = Vec::with_capacity((n - 1) * (n - 1));
        for r in 0..n {
            for c in 0..n {
                if r != i && c != i {
                    minor.push(g.entry(r, c).clone());
                }
            }
        }
        let inv_ii = det_rational(n - 1, &minor) / det;
        let limit = (&u * &inv_ii).floor().to_integer().sqrt();
        *slot = limit.to_i64().unwrap_or(i64::MAX / 4) + extra_margin as i64;
    }

    let twice_bound: i128 = (0..n).map(|i| g.twice_entry(i, i)).min().unwrap();
    let mut best: Option<i128> = None;
    let mut minimal: Vec<CoordinateVector> = Vec::new();
    let mut coords = vec![0i64; n];
    scan_box(g, 0, &mut coords, &box_bounds, twice_bound, &mut best, &mut minimal);

    let twice_min = best.expect("unit vectors lie inside the box");
    minimal.sort();
    let lambda = BigRational::new(BigInt::from(twice_min), BigInt::from(2));
    finish_result(g, lambda, minimal)
}

fn scan_box(
    g: &ExactGram,
    idx: usize,
    coords: &mut Vec<i64>,
    bounds: &[i64],
    twice_cap: i128,
    best: &mut Option<i128>,
    minimal: &mut Vec<CoordinateVector>,
) {
    if idx == bounds.len() {
        if coords.iter().all(|&v| v == 0) {
            return;
        }
        let doubled = g
            .form_value_twice_i128(coords)
            .expect("box coordinates stay within i128 range");
        if doubled > twice_cap {
            return;
        }
        match best {
            Some(b) if doubled > *b => {}
            Some(b) if doubled == *b => minimal.push(CoordinateVector(coords.clone())),
            _ => {
                *best = Some(doubled);
                minimal.clear();
                minimal.push(CoordinateVector(coords.clone()));
            }
        }
        return;
    }
    for x in -bounds[idx]..=bounds[idx] {
        coords[idx] = x;
        scan_box(g, idx + 1, coords, bounds, twice_cap, best, minimal);
    }
    coords[idx] = 0;
}

/// Exact rank of the coordinate matrix via fraction-free elimination.
fn coordinate_rank(vectors: &[CoordinateVector], n: usize) -> usize {
    let mut rows: Vec<Vec<i128>> = vectors
        .iter()
        .map(|v| v.coords().iter().map(|&x| x as i128).collect())
        .collect();
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot_row) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let pivot = rows[rank][col];
        let pivot_vals = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            let factor = row[col];
            if factor != 0 {
                for (c, val) in row.iter_mut().enumerate() {
                    *val = *val * pivot - pivot_vals[c] * factor;
                }
            }
        }
        rank += 1;
        if rank == n {
            break;
        }
    }
    rank
}
