//! Newton refinement of root candidates on the real system
//! (Re f, Im f) = 0, assembled from Wirtinger derivatives.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mixedpoly::MixedPolynomial;
use crate::solver::{dedupe, Root, Sign, CONJUGACY_REL, SIGN_DEGENERATE_REL};

const RESIDUAL_STOP_REL: f64 = 1e-11;
const STEP_STOP_REL: f64 = 1e-14;
const SINGULAR_REL: f64 = 1e-12;
const MAX_STEPS: u32 = 100;

/// Magnitude scale of the Jacobian J = |f_z|^2 - |f_zbar|^2 at z; the
/// derivative scale, not scale(f), so the degeneracy test stays
/// meaningful for roots far from the origin.
fn jacobian_scale(fz: &MixedPolynomial, fzb: &MixedPolynomial, z: Complex64) -> f64 {
    let s = fz.scale_at(z) + fzb.scale_at(z);
    s * s
}

pub(crate) fn make_root(
    fz: &MixedPolynomial,
    fzb: &MixedPolynomial,
    z: Complex64,
    residual: f64,
    iterations: u32,
) -> Root {
    let j = fz.evaluate(z).norm_sqr() - fzb.evaluate(z).norm_sqr();
    let sign = if j.abs() <= SIGN_DEGENERATE_REL * jacobian_scale(fz, fzb, z) {
        Sign::Degenerate
    } else if j > 0.0 {
        Sign::Positive
    } else {
        Sign::Negative
    };
    Root { location: z, jacobian: j, sign, residual, newton_iterations: iterations }
}

/// Newton on the real 2-vector (Re f, Im f). The complex step solving
/// A d + B conj(d) = -f is d = (B conj(f) - conj(A) f) / J with
/// A = f_z, B = f_zbar, J = |A|^2 - |B|^2.
pub fn newton_polish(f: &MixedPolynomial, z0: Complex64) -> Result<Root> {
    let (fz, fzb) = f.wirtinger();
    let mut z = z0;
    let mut steps = 0u32;
    loop {
        let fv = f.evaluate(z);
        let scale = f.scale_at(z);
        if fv.norm() <= RESIDUAL_STOP_REL * scale {
            return Ok(make_root(&fz, &fzb, z, fv.norm(), steps));
        }
        if steps >= MAX_STEPS {
            return Err(Error::Diverged(z0));
        }
        let a = fz.evaluate(z);
        let b = fzb.evaluate(z);
        let j = a.norm_sqr() - b.norm_sqr();
        if j.abs() <= SINGULAR_REL * jacobian_scale(&fz, &fzb, z) {
            return Err(Error::SingularJacobian(z));
        }
        let delta = (b * fv.conj() - a.conj() * fv) / j;
        z += delta;
        steps += 1;
        if delta.norm() < STEP_STOP_REL * (1.0 + z.norm()) {
            let r = f.evaluate(z).norm();
            return Ok(make_root(&fz, &fzb, z, r, steps));
        }
    }
}

/// Independent cross-check: Newton launched from every node of a
/// grid_n x grid_n lattice over the window, keeping converged points that
/// genuinely lie on the zero set. No completeness claim.
pub fn grid_newton_oracle(
    f: &MixedPolynomial,
    window: (f64, f64, f64, f64),
    grid_n: usize,
) -> Vec<Root> {
    let (x0, x1, y0, y1) = window;
    let mut found: Vec<Root> = Vec::new();
    for i in 0..grid_n {
        for j in 0..grid_n {
            let x = x0 + (x1 - x0) * i as f64 / (grid_n - 1) as f64;
            let y = y0 + (y1 - y0) * j as f64 / (grid_n - 1) as f64;
            if let Ok(root) = newton_polish(f, Complex64::new(x, y)) {
                if root.residual <= CONJUGACY_REL * f.scale_at(root.location) {
                    found.push(root);
                }
            }
        }
    }
    dedupe(found)
}
