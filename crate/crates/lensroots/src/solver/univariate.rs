//! Dense univariate complex polynomials and the simultaneous
//! Aberth-Ehrlich root iteration.

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 200;
/// Fast-path stop: largest relative correction in a sweep.
const REL_STOP: f64 = 1e-13;
/// Above this at the sweep cap the iteration has genuinely failed.
const REL_FAIL: f64 = 1e-8;

/// Coefficients ascending; leading coefficient nonzero for nonzero
/// polynomials (exact zeros are stripped on construction).
#[derive(Clone, Debug, PartialEq)]
pub struct UnivariatePolynomial {
    pub coefficients: Vec<Complex64>,
}

impl UnivariatePolynomial {
    pub fn new(mut coefficients: Vec<Complex64>) -> Self {
        while coefficients.len() > 1 && coefficients.last().unwrap().norm() == 0.0 {
            coefficients.pop();
        }
        UnivariatePolynomial { coefficients }
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for c in self.coefficients.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// All complex roots with multiplicity, in no particular order.
    pub fn roots(&self) -> Result<Vec<Complex64>> {
        univariate_roots(self)
    }
}

/// Aberth-Ehrlich with Newton-polygon initial radii. Roots freeze
/// individually once |p| drops to the evaluation noise floor, which is the
/// only reliable stop at clustered or multiple roots.
pub fn univariate_roots(p: &UnivariatePolynomial) -> Result<Vec<Complex64>> {
    let c = &p.coefficients;
    if c.len() <= 1 {
        return Ok(Vec::new());
    }
    let first_nonzero = c.iter().position(|a| a.norm() > 0.0).unwrap();
    let mut roots = vec![Complex64::ZERO; first_nonzero];
    let work = &c[first_nonzero..];
    let d = work.len() - 1;
    match d {
        0 => return Ok(roots),
        1 => {
            roots.push(-work[0] / work[1]);
            return Ok(roots);
        }
        2 => {
            roots.extend(quadratic(work[0], work[1], work[2]));
            return Ok(roots);
        }
        _ => {}
    }

    let radii = initial_radii(work);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.4;
            Complex64::from_polar(radii[k], theta)
        })
        .collect();
    let mut frozen = vec![false; d];
    let mut last_maxrel = f64::INFINITY;
    let mut converged = false;

    for _ in 0..MAX_SWEEPS {
        if frozen.iter().all(|&x| x) {
            converged = true;
            break;
        }
        let mut maxrel = 0.0f64;
        for i in 0..d {
            if frozen[i] {
                continue;
            }
            let (pv, dp, floor) = horner_with_floor(work, z[i]);
            if pv.norm() <= 4.0 * floor {
                frozen[i] = true;
                continue;
            }
            let w = pv / dp;
            let mut s = Complex64::ZERO;
            for j in 0..d {
                if j != i {
                    s += (z[i] - z[j]).finv();
                }
            }
            let mut delta = w / (Complex64::new(1.0, 0.0) - w * s);
            if !delta.is_finite() {
                delta = w;
            }
            if !delta.is_finite() {
                // p'(z_i) vanished exactly; nudge off the stationary point
                let bump = Complex64::new(1e-3, 2e-3) * (1.0 + z[i].norm());
                z[i] += bump;
                maxrel = maxrel.max(1.0);
                continue;
            }
            z[i] -= delta;
            maxrel = maxrel.max(delta.norm() / (1.0 + z[i].norm()));
        }
        last_maxrel = maxrel;
        if maxrel < REL_STOP {
            converged = true;
            break;
        }
    }

    if !converged && !frozen.iter().all(|&x| x) && last_maxrel > REL_FAIL {
        return Err(Error::NoConvergence(format!(
            "aberth relative correction {last_maxrel:.3e} after {MAX_SWEEPS} sweeps"
        )));
    }
    roots.extend(z);
    Ok(roots)
}

/// Value, derivative, and the running noise floor eps * sum |c_j||z|^j.
fn horner_with_floor(c: &[Complex64], z: Complex64) -> (Complex64, Complex64, f64) {
    let az = z.norm();
    let mut p = Complex64::ZERO;
    let mut dp = Complex64::ZERO;
    let mut s = 0.0f64;
    for cj in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + cj;
        s = s * az + cj.norm();
    }
    (p, dp, f64::EPSILON * s)
}

/// Per-root starting radii from the upper convex hull of (j, ln|c_j|);
/// each hull segment of width w contributes w copies of its slope radius.
fn initial_radii(c: &[Complex64]) -> Vec<f64> {
    let pts: Vec<(f64, f64)> = c
        .iter()
        .enumerate()
        .filter(|(_, a)| a.norm() > 0.0)
        .map(|(j, a)| (j as f64, a.norm().ln()))
        .collect();
    let mut hull: Vec<(f64, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            if (y2 - y1) * (p.0 - x1) <= (p.1 - y1) * (x2 - x1) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut radii = Vec::with_capacity(c.len() - 1);
    for k in 1..hull.len() {
        let (x1, y1) = hull[k - 1];
        let (x2, y2) = hull[k];
        let r = ((y1 - y2) / (x2 - x1)).exp();
        for _ in 0..(x2 - x1).round() as usize {
            radii.push(r);
        }
    }
    radii
}

fn quadratic(c0: Complex64, c1: Complex64, c2: Complex64) -> [Complex64; 2] {
    if c1.norm() == 0.0 {
        let r = (-c0 / c2).sqrt();
        return [r, -r];
    }
    let disc = c1 * c1 - 4.0 * c2 * c0;
    let mut s = disc.sqrt();
    if (c1.conj() * s).re < 0.0 {
        s = -s;
    }
    let q = (c1 + s) * -0.5;
    [q / c2, c0 / q]
}
