//! Dense complex polynomials and a simultaneous-iteration root finder.
//!
//! Coefficients are stored in ascending order. The solver is Aberth-style:
//! all roots are iterated together from deterministic starting points on a
//! circle, then polished with Newton steps. Degrees here stay below a few
//! hundred, where this converges reliably.

use num_complex::Complex64;

pub type C64 = Complex64;

pub fn poly_eval(p: &[C64], z: C64) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for &c in p.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

pub fn poly_mul(a: &[C64], b: &[C64]) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.norm_sqr() == 0.0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn poly_derivative(p: &[C64]) -> Vec<C64> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| c * (i as f64))
        .collect()
}

pub fn poly_max_coeff(p: &[C64]) -> f64 {
    p.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// `a - s·b`, padding the shorter polynomial.
pub fn poly_axpy(a: &[C64], s: C64, b: &[C64]) -> Vec<C64> {
    let len = a.len().max(b.len());
    let mut out = vec![C64::new(0.0, 0.0); len];
    for (i, &c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, &c) in b.iter().enumerate() {
        out[i] -= s * c;
    }
    out
}

/// Coefficients of `w ↦ p(w + c)` by repeated synthetic division. Shifting
/// the origin to a root cluster keeps evaluation well conditioned there.
pub fn poly_shift(p: &[C64], c: C64) -> Vec<C64> {
    let mut a = p.to_vec();
    let n = a.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let add = c * a[j + 1];
            a[j] += add;
        }
    }
    a
}

/// All roots of `p`, deterministic. Fails when the leading coefficient is
/// degenerate or the iteration does not settle.
pub fn aberth_roots(p: &[C64], max_iter: usize, eps: f64) -> Result<Vec<C64>, String> {
    let scale = poly_max_coeff(p);
    if scale == 0.0 {
        return Err("zero polynomial".to_string());
    }
    let p: Vec<C64> = p.iter().map(|&c| c / scale).collect();
    let deg = p.len() - 1;
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lead = p[deg];
    if lead.norm() < 1e-12 {
        return Err("leading coefficient lost to cancellation".to_string());
    }
    // monic form and the Cauchy bound for the initial circle
    let monic: Vec<C64> = p.iter().map(|&c| c / lead).collect();
    let radius = 1.0 + monic[..deg].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let radius = radius.min(1e6);
    let dp = poly_derivative(&monic);
    let mut z: Vec<C64> = (0..deg)
        .map(|t| {
            let theta = 2.0 * std::f64::consts::PI * (t as f64) / (deg as f64) + 0.41;
            C64::from_polar(radius * 0.8, theta)
        })
        .collect();
    let mut converged = false;
    for _ in 0..max_iter {
        let mut max_step: f64 = 0.0;
        for i in 0..deg {
            let pv = poly_eval(&monic, z[i]);
            let dv = poly_eval(&dp, z[i]);
            if !pv.is_finite() || !dv.is_finite() {
                return Err("iteration diverged".to_string());
            }
            if pv.norm() == 0.0 {
                continue;
            }
            let ratio = if dv.norm() > 1e-300 {
                pv / dv
            } else {
                C64::new(1e-3, 1e-3)
            };
            let mut repulse = C64::new(0.0, 0.0);
            for j in 0..deg {
                if j != i {
                    let diff = z[i] - z[j];
                    if diff.norm() > 1e-300 {
                        repulse += C64::new(1.0, 0.0) / diff;
                    }
                }
            }
            let denom = C64::new(1.0, 0.0) - ratio * repulse;
            let step = if denom.norm() > 1e-12 { ratio / denom } else { ratio };
            z[i] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
        }
        if max_step < eps {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(format!("no convergence after {max_iter} iterations"));
    }
    // Newton polish
    for zi in z.iter_mut() {
        for _ in 0..2 {
            let pv = poly_eval(&monic, *zi);
            let dv = poly_eval(&dp, *zi);
            if dv.norm() > 1e-300 {
                *zi -= pv / dv;
            }
        }
    }
    Ok(z)
}
