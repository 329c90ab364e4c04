//! Numeric root isolation for monic polynomials of degree 2–4.
//!
//! Degree 2 uses the closed quadratic formula; degrees 3 and 4 use
//! Durand-Kerner iteration followed by Newton polishing. Output order is
//! deterministic: ascending by real part, then imaginary part.

use num_complex::Complex64;

const MAX_ITERATIONS: usize = 400;

/// All roots of `x^n + tail[0] x^(n-1) + ... + tail[n-1]`, `n = tail.len()`.
pub(crate) fn monic_roots(tail: &[i64]) -> Vec<Complex64> {
    let tail_f: Vec<f64> = tail.iter().map(|&c| c as f64).collect();
    let mut rs = match tail_f.len() {
        2 => quadratic_roots(tail_f[0], tail_f[1]),
        _ => {
            let mut rs = durand_kerner(&tail_f);
            refine_root_clusters(&tail_f, &mut rs);
            rs
        }
    };
    snap_near_real(&mut rs);
    rs.sort_by(|p, q| {
        p.re.total_cmp(&q.re).then_with(|| p.im.total_cmp(&q.im))
    });
    rs
}

fn quadratic_roots(a: f64, b: f64) -> Vec<Complex64> {
    let disc = a * a - 4.0 * b;
    if disc >= 0.0 {
        if a == 0.0 && b == 0.0 {
            return vec![Complex64::new(0.0, 0.0); 2];
        }
        // q-form avoids cancellation between -a and sqrt(disc)
        let q = -(a + disc.sqrt().copysign(if a == 0.0 { 1.0 } else { a })) / 2.0;
        let other = if q == 0.0 { 0.0 } else { b / q };
        vec![Complex64::new(q, 0.0), Complex64::new(other, 0.0)]
    } else {
        let re = -a / 2.0;
        let im = (-disc).sqrt() / 2.0;
        vec![Complex64::new(re, -im), Complex64::new(re, im)]
    }
}

fn eval_monic(tail: &[f64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for &c in tail {
        acc = acc * z + c;
    }
    acc
}

fn eval_monic_derivative(tail: &[f64], z: Complex64) -> Complex64 {
    let n = tail.len();
    let mut acc = Complex64::new(n as f64, 0.0);
    for (k, &c) in tail.iter().take(n - 1).enumerate() {
        acc = acc * z + c * (n - 1 - k) as f64;
    }
    acc
}

fn durand_kerner(tail: &[f64]) -> Vec<Complex64> {
    let n = tail.len();
    let radius = 1.0 + tail.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32 + 1) * radius).collect();

    let tol = 1e-14 * (1.0 + radius);
    for _ in 0..MAX_ITERATIONS {
        let mut max_step = 0.0f64;
        for k in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if j != k {
                    den *= z[k] - z[j];
                }
            }
            if den.norm_sqr() == 0.0 {
                // coincident iterates; perturb and continue
                z[k] += Complex64::new(1e-8 * (1.0 + radius), 1e-8);
                max_step = f64::MAX;
                continue;
            }
            let step = eval_monic(tail, z[k]) / den;
            z[k] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step <= tol {
            break;
        }
    }

    // Newton polishing sharpens simple roots to full precision
    for r in z.iter_mut() {
        for _ in 0..3 {
            let d = eval_monic_derivative(tail, *r);
            if d.norm_sqr() < 1e-300 {
                break;
            }
            *r -= eval_monic(tail, *r) / d;
        }
    }
    z
}

fn snap_near_real(roots: &mut [Complex64]) {
    for r in roots.iter_mut() {
        if r.im != 0.0 && r.im.abs() <= 1e-9 * (1.0 + r.re.abs()) {
            r.im = 0.0;
        }
    }
}

/// Repairs multiple-root clusters. Durand-Kerner iterates straddle an m-fold
/// root in a cluster of spread ~eps^(1/m); each detected cluster is replaced
/// by the nearby simple root of the (m-1)-th derivative, recovered by Newton
/// at full precision. A replacement is kept only when it does not worsen the
/// cluster's worst residual, so mistakenly grouped simple roots are left
/// untouched.
fn refine_root_clusters(tail: &[f64], roots: &mut [Complex64]) {
    let n = roots.len();
    let radius = 1.0 + tail.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let residual_floor = 1e-12 * radius.powi(n as i32);

    // all roots coincide: their mean is -a/n, exactly
    let mean = roots.iter().sum::<Complex64>() / n as f64;
    if roots
        .iter()
        .all(|r| (r - mean).norm() <= 1e-2 * (1.0 + mean.norm()))
    {
        let exact = Complex64::new(-tail[0] / n as f64, 0.0);
        let before = worst_residual(tail, roots.iter());
        if eval_monic(tail, exact).norm() <= before.max(residual_floor) {
            roots.fill(exact);
            return;
        }
    }

    let mut visited = vec![false; n];
    for i in 0..n {
        if visited[i] {
            continue;
        }
        visited[i] = true;
        let mut members = vec![i];
        for j in (i + 1)..n {
            if !visited[j] && (roots[i] - roots[j]).norm() <= 5e-5 * (1.0 + roots[i].norm())
            {
                visited[j] = true;
                members.push(j);
            }
        }
        if members.len() < 2 {
            continue;
        }
        let mean =
            members.iter().map(|&j| roots[j]).sum::<Complex64>() / members.len() as f64;
        let refined = newton_on_derivative(tail, members.len() - 1, mean);
        let before = worst_residual(tail, members.iter().map(|&j| &roots[j]));
        if eval_monic(tail, refined).norm() <= before.max(residual_floor) {
            for &j in &members {
                roots[j] = refined;
            }
        }
    }
}

fn worst_residual<'a>(tail: &[f64], roots: impl Iterator<Item = &'a Complex64>) -> f64 {
    roots
        .map(|r| eval_monic(tail, *r).norm())
        .fold(0.0f64, f64::max)
}

/// Newton iteration on the `order`-th derivative of the monic polynomial,
/// started from `start`. An exactly m-fold root of f is a simple root of
/// f^(m-1), so convergence there is quadratic.
fn newton_on_derivative(tail: &[f64], order: usize, start: Complex64) -> Complex64 {
    let n = tail.len();
    let mut coeffs: Vec<f64> = Vec::with_capacity(n + 1);
    coeffs.push(1.0);
    coeffs.extend_from_slice(tail);
    for _ in 0..order {
        let deg = coeffs.len() - 1;
        coeffs = coeffs[..deg]
            .iter()
            .enumerate()
            .map(|(k, &c)| c * (deg - k) as f64)
            .collect();
    }
    let mut z = start;
    for _ in 0..40 {
        let mut f = Complex64::new(0.0, 0.0);
        let mut df = Complex64::new(0.0, 0.0);
        for &c in &coeffs {
            df = df * z + f;
            f = f * z + c;
        }
        if df.norm_sqr() < 1e-300 {
            break;
        }
        let step = f / df;
        z -= step;
        if step.norm() <= 1e-15 * (1.0 + z.norm()) {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(z: Complex64, re: f64, im: f64) {
        assert!(
            (z.re - re).abs() <= 1e-10 && (z.im - im).abs() <= 1e-10,
            "root {z} != {re}+{im}i"
        );
    }

    #[test]
    fn quadratic_two_real() {
        // x^2 + 2x - 2 has roots -1 +- sqrt(3)
        let rs = monic_roots(&[2, -2]);
        let s3 = 3.0f64.sqrt();
        assert_close(rs[0], -1.0 - s3, 0.0);
        assert_close(rs[1], -1.0 + s3, 0.0);
    }

    #[test]
    fn quadratic_complex_pair() {
        // x^2 + 3x + 3 has roots -1.5 +- i sqrt(3)/2
        let rs = monic_roots(&[3, 3]);
        let im = 3.0f64.sqrt() / 2.0;
        assert_close(rs[0], -1.5, -im);
        assert_close(rs[1], -1.5, im);
    }

    #[test]
    fn cubic_three_real() {
        // x^3 + x^2 - x = x (x^2 + x - 1)
        let rs = monic_roots(&[1, -1, 0]);
        let s5 = 5.0f64.sqrt();
        assert_close(rs[0], (-1.0 - s5) / 2.0, 0.0);
        assert_close(rs[1], 0.0, 0.0);
        assert_close(rs[2], (-1.0 + s5) / 2.0, 0.0);
    }

    #[test]
    fn quartic_symmetric() {
        // (x^2 - 1)(x^2 + 6x + 7): roots -3 +- sqrt(2), -1, 1
        let rs = monic_roots(&[6, 6, -6, -7]);
        let s2 = 2.0f64.sqrt();
        assert_close(rs[0], -3.0 - s2, 0.0);
        assert_close(rs[1], -3.0 + s2, 0.0);
        assert_close(rs[2], -1.0, 0.0);
        assert_close(rs[3], 1.0, 0.0);
    }

    #[test]
    fn residual_stays_small_for_repeated_roots() {
        // x^3 with a triple root converges slowly but keeps |f| tiny
        let rs = monic_roots(&[0, 0, 0]);
        for r in rs {
            assert!(eval_monic(&[0.0, 0.0, 0.0], r).norm() <= 1e-7);
        }
    }

    #[test]
    fn multiple_root_clusters_are_repaired() {
        // (x-4)(x+4)^2: double root at -4
        let rs = monic_roots(&[4, -16, -64]);
        assert_close(rs[0], -4.0, 0.0);
        assert_close(rs[1], -4.0, 0.0);
        assert_close(rs[2], 4.0, 0.0);

        // (x+1)^3: triple root
        let rs = monic_roots(&[3, 3, 1]);
        for r in rs {
            assert_close(r, -1.0, 0.0);
        }

        // (x+1)^4: quadruple root, recovered exactly as -a/4
        let rs = monic_roots(&[4, 6, 4, 1]);
        for r in rs {
            assert_eq!(r, Complex64::new(-1.0, 0.0));
        }

        // (x^2+1)^2: double complex pair
        let rs = monic_roots(&[0, 2, 0, 1]);
        assert_close(rs[0], 0.0, -1.0);
        assert_close(rs[1], 0.0, -1.0);
        assert_close(rs[2], 0.0, 1.0);
        assert_close(rs[3], 0.0, 1.0);

        // (x+1)^2 (x+2)^2: two double roots
        let rs = monic_roots(&[6, 13, 12, 4]);
        assert_close(rs[0], -2.0, 0.0);
        assert_close(rs[1], -2.0, 0.0);
        assert_close(rs[2], -1.0, 0.0);
        assert_close(rs[3], -1.0, 0.0);
    }
}
