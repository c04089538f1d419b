//! Winding number of f along a circle by adaptive argument tracking;
//! the signed root count inside, used as independent certification.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mixedpoly::MixedPolynomial;

/// Contour floor: a sample with |f| below this times scale is treated as
/// sitting on the zero set.
const CONTOUR_FLOOR_REL: f64 = 1e-9;
const INITIAL_SAMPLES: usize = 32;

#[derive(Clone, Copy, Debug)]
pub struct Contour {
    pub center: Complex64,
    pub radius: f64,
    /// Largest accepted argument step between consecutive samples; must
    /// not exceed pi/2 so the branch of arg is unambiguous.
    pub max_arg_step: f64,
    pub max_refinement_depth: u32,
}

impl Contour {
    pub fn circle(center: Complex64, radius: f64) -> Self {
        Contour {
            center,
            radius,
            max_arg_step: std::f64::consts::FRAC_PI_2,
            max_refinement_depth: 16,
        }
    }
}

fn sample(f: &MixedPolynomial, c: &Contour, theta: f64) -> Result<Complex64> {
    let p = c.center + Complex64::from_polar(c.radius, theta);
    let v = f.evaluate(p);
    if v.norm() < CONTOUR_FLOOR_REL * f.scale_at(p) {
        return Err(Error::ZeroOnContour(p));
    }
    Ok(v)
}

fn arg_change(
    f: &MixedPolynomial,
    c: &Contour,
    t1: f64,
    v1: Complex64,
    t2: f64,
    v2: Complex64,
    depth: u32,
) -> Result<f64> {
    let step = (v2 / v1).arg();
    if step.abs() <= c.max_arg_step {
        return Ok(step);
    }
    if depth >= c.max_refinement_depth {
        let mid = c.center + Complex64::from_polar(c.radius, 0.5 * (t1 + t2));
        return Err(Error::ZeroOnContour(mid));
    }
    let tm = 0.5 * (t1 + t2);
    let vm = sample(f, c, tm)?;
    Ok(arg_change(f, c, t1, v1, tm, vm, depth + 1)?
        + arg_change(f, c, tm, vm, t2, v2, depth + 1)?)
}

/// Total change of arg(f)/2pi along the contour.
pub fn winding_number(f: &MixedPolynomial, c: &Contour) -> Result<i64> {
    if !(c.max_arg_step > 0.0 && c.max_arg_step <= std::f64::consts::FRAC_PI_2) {
        return Err(Error::Malformed(
            "contour max_arg_step must lie in (0, pi/2]".into(),
        ));
    }
    if !(c.radius > 0.0) {
        return Err(Error::Malformed("contour radius must be positive".into()));
    }
    let thetas: Vec<f64> = (0..=INITIAL_SAMPLES)
        .map(|k| 2.0 * std::f64::consts::PI * k as f64 / INITIAL_SAMPLES as f64)
        .collect();
    let mut values = Vec::with_capacity(thetas.len());
    for (k, &t) in thetas.iter().enumerate() {
        if k == INITIAL_SAMPLES {
            values.push(values[0]);
        } else {
            values.push(sample(f, c, t)?);
        }
    }
    let mut total = 0.0f64;
    for k in 0..INITIAL_SAMPLES {
        total += arg_change(f, c, thetas[k], values[k], thetas[k + 1], values[k + 1], 0)?;
    }
    let w = total / (2.0 * std::f64::consts::PI);
    Ok(w.round() as i64)
}

/// Winding on a circle enclosing all reported roots, for certification.
/// Radius 2 x max root modulus + 1; on a contour failure the radius grows
/// by 1.37 and the attempt repeats, at most three times.
pub fn certify_winding(f: &MixedPolynomial, max_root_modulus: f64) -> Option<i64> {
    let mut radius = 2.0 * max_root_modulus + 1.0;
    for _ in 0..3 {
        match winding_number(f, &Contour::circle(Complex64::ZERO, radius)) {
            Ok(w) => return Some(w),
            Err(_) => radius *= 1.37,
        }
    }
    None
}
