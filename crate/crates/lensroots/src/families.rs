//! The polynomial families: point-mass lens numerators, the degree-3
//! Rhie lens, the power lens, the bifurcation deformations phi_t and
//! psi_t, and the closed-form predictor for the roots born at infinity.

use num_complex::Complex64;
use serde_json::Value;

use crate::classify::{classify_polynomial, ClassName};
use crate::error::{Error, Result};
use crate::mixedpoly::MixedPolynomial;

#[derive(Clone, Debug)]
pub struct LensSystem {
    pub masses: Vec<Complex64>,
    pub positions: Vec<Complex64>,
}

/// Numerator of zbar - sum sigma_i / (z - alpha_i):
/// zbar prod(z - alpha_i) - sum_i sigma_i prod_{j != i} (z - alpha_j).
pub fn lens_numerator(sys: &LensSystem) -> Result<MixedPolynomial> {
    if sys.masses.is_empty() || sys.masses.len() != sys.positions.len() {
        return Err(Error::Malformed(
            "lens system needs equally many masses and positions, at least one".into(),
        ));
    }
    if sys.masses.iter().any(|s| s.norm() == 0.0) {
        return Err(Error::Malformed("lens masses must be nonzero".into()));
    }
    for i in 0..sys.positions.len() {
        for j in i + 1..sys.positions.len() {
            if sys.positions[i] == sys.positions[j] {
                return Err(Error::Malformed(format!(
                    "duplicate lens position {}",
                    sys.positions[i]
                )));
            }
        }
    }
    let linear = |alpha: Complex64| {
        MixedPolynomial::new([(1, 0, Complex64::new(1.0, 0.0)), (0, 0, -alpha)])
    };
    let mut prod = MixedPolynomial::monomial(0, 0, Complex64::new(1.0, 0.0));
    for &alpha in &sys.positions {
        prod = prod.multiply(&linear(alpha));
    }
    let zbar = MixedPolynomial::monomial(0, 1, Complex64::new(1.0, 0.0));
    let mut f = zbar.multiply(&prod);
    for (i, &sigma) in sys.masses.iter().enumerate() {
        let mut partial = MixedPolynomial::monomial(0, 0, sigma);
        for (j, &alpha) in sys.positions.iter().enumerate() {
            if j != i {
                partial = partial.multiply(&linear(alpha));
            }
        }
        f = f.sub(&partial);
    }
    Ok(f)
}

/// The degree-3 Rhie lens polynomial
/// (3/100) zbar (z^3 - 1/8) - (3/100) z^2 + 13/100000, with rho = 10.
pub fn rhie3() -> MixedPolynomial {
    MixedPolynomial::new([
        (3, 1, Complex64::new(3.0 / 100.0, 0.0)),
        (0, 1, Complex64::new(-3.0 / 800.0, 0.0)),
        (2, 0, Complex64::new(-3.0 / 100.0, 0.0)),
        (0, 0, Complex64::new(13.0 / 100000.0, 0.0)),
    ])
}

/// zbar^m z^n - 1 with the n - m unit-circle roots, all positive.
pub fn power_lens(n: u32, m: u32) -> Result<MixedPolynomial> {
    if n <= m {
        return Err(Error::Malformed(format!("power lens needs n > m >= 0, got ({n}, {m})")));
    }
    Ok(MixedPolynomial::new([
        (n, m, Complex64::new(1.0, 0.0)),
        (0, 0, Complex64::new(-1.0, 0.0)),
    ]))
}

/// Worked example with twelve roots, stored in expanded form:
/// (zbar/100 + 1)^3 (z^3 - 1/8) - z^3 - 3 z^2/100 + constant; rho = 12.
pub fn example_f() -> MixedPolynomial {
    MixedPolynomial::new([
        (3, 3, Complex64::new(1e-6, 0.0)),
        (3, 2, Complex64::new(3.0 / 10000.0, 0.0)),
        (3, 1, Complex64::new(3.0 / 100.0, 0.0)),
        (0, 3, Complex64::new(-1.0 / 8e6, 0.0)),
        (0, 2, Complex64::new(-3.0 / 80000.0, 0.0)),
        (0, 1, Complex64::new(-3.0 / 800.0, 0.0)),
        (2, 0, Complex64::new(-3.0 / 100.0, 0.0)),
        (0, 0, Complex64::new(13.0 / 100000.0, 0.0)),
    ])
}

/// Numerator of the Rhie-type lens zbar = (1-eps) z^{n-2}/(z^{n-1} - a^{n-1}) + eps/z.
/// Makes no maximality claim; rho is whatever solve_all reports.
pub fn rhie_family(n: u32, epsilon: f64, a: f64) -> Result<MixedPolynomial> {
    if n < 3 {
        return Err(Error::Malformed(format!("rhie family needs n >= 3, got {n}")));
    }
    if !(0.0..1.0).contains(&epsilon) {
        return Err(Error::Malformed(format!(
            "rhie family needs 0 <= epsilon < 1, got {epsilon}"
        )));
    }
    if !(a > 0.0) {
        return Err(Error::Malformed(format!("rhie family needs a > 0, got {a}")));
    }
    let an = a.powi(n as i32 - 1);
    Ok(MixedPolynomial::new([
        (n, 1, Complex64::new(1.0, 0.0)),
        (1, 1, Complex64::new(-an, 0.0)),
        (n - 1, 0, Complex64::new(-1.0, 0.0)),
        (0, 0, Complex64::new(epsilon * an, 0.0)),
    ]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Phi,
    Psi,
}

/// Deformation data over a lens-type base ell_n = zbar q(z) - p(z).
#[derive(Clone, Debug)]
pub struct BifurcationSpec {
    pub base: MixedPolynomial,
    pub m: u32,
    pub t: Complex64,
    /// Leading coefficient of q, derived from the base.
    pub gamma: Complex64,
    pub variant: Variant,
}

impl BifurcationSpec {
    pub fn new(base: MixedPolynomial, m: u32, t: Complex64, variant: Variant) -> Result<Self> {
        let tag = classify_polynomial(&base)?;
        if tag.class_name != ClassName::L || tag.m != 1 {
            return Err(Error::Malformed(format!(
                "bifurcation base must classify as L with m = 1, got {tag}"
            )));
        }
        if m < 1 {
            return Err(Error::Malformed("bifurcation m must be >= 1".into()));
        }
        let gamma = base
            .terms()
            .iter()
            .filter(|&&(_, mu, _)| mu == 1)
            .max_by_key(|&&(nu, _, _)| nu)
            .map(|&(_, _, a)| a)
            .unwrap_or(Complex64::ZERO);
        if gamma.norm() == 0.0 {
            return Err(Error::Malformed("bifurcation base has gamma = 0".into()));
        }
        Ok(BifurcationSpec { base, m, t, gamma, variant })
    }

    /// Default small parameter: |t| = 1e-3 x |gamma|, real positive.
    pub fn default_t(&self) -> Complex64 {
        Complex64::new(1e-3 * self.gamma.norm(), 0.0)
    }

    fn q_block(&self) -> MixedPolynomial {
        MixedPolynomial::new(
            self.base
                .terms()
                .iter()
                .filter(|&&(_, mu, _)| mu == 1)
                .map(|&(nu, _, a)| (nu, 0, a)),
        )
    }
}

/// phi_t = ((t zbar + gamma)^m - gamma^m) / (gamma^{m-1} m t) q(z) - p(z),
/// expanded binomially so no division by small t ever happens:
/// the zbar^j block carries C(m,j)/m (t/gamma)^{j-1} q(z) for j = 1..m.
pub fn phi_t(spec: &BifurcationSpec) -> Result<MixedPolynomial> {
    if spec.variant != Variant::Phi {
        return Err(Error::Malformed("spec variant is not phi".into()));
    }
    if spec.m == 1 || spec.t.norm() == 0.0 {
        return Ok(spec.base.clone());
    }
    let q = spec.q_block();
    let ratio = spec.t / spec.gamma;
    let mut out = spec.base.clone();
    let m = spec.m;
    for j in 2..=m {
        let r_j = binomial(m, j) / m as f64 * ratio.powu(j - 1);
        let block = q.scale(r_j).multiply(&MixedPolynomial::monomial(0, j, Complex64::ONE));
        out = out.add(&block);
    }
    Ok(out)
}

/// psi_t = base + t zbar^m q(z), a harmonically splitting deformation
/// with m - 1 new negative roots for small t.
pub fn psi_t(spec: &BifurcationSpec) -> Result<MixedPolynomial> {
    if spec.variant != Variant::Psi {
        return Err(Error::Malformed("spec variant is not psi".into()));
    }
    if spec.m < 2 {
        return Err(Error::Malformed("psi_t needs m >= 2".into()));
    }
    if spec.t.norm() == 0.0 {
        return Ok(spec.base.clone());
    }
    let q = spec.q_block();
    let block = q
        .scale(spec.t)
        .multiply(&MixedPolynomial::monomial(0, spec.m, Complex64::ONE));
    Ok(spec.base.add(&block))
}

/// Closed-form asymptotes of the m - 1 roots born at infinity:
/// z_j = gamma (conj(zeta_j) - 1) / t over the nontrivial m-th roots of
/// unity zeta_j.
pub fn predict_infinity_roots(gamma: Complex64, m: u32, t: Complex64) -> Result<Vec<Complex64>> {
    if m < 2 {
        return Err(Error::Malformed("prediction needs m >= 2".into()));
    }
    if t.norm() == 0.0 || gamma.norm() == 0.0 {
        return Err(Error::Malformed("prediction needs t != 0 and gamma != 0".into()));
    }
    let mut out = Vec::with_capacity(m as usize - 1);
    for j in 1..m {
        let zeta = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / m as f64);
        out.push(gamma * (zeta.conj() - Complex64::ONE) / t);
    }
    Ok(out)
}

fn binomial(n: u32, k: u32) -> f64 {
    let mut out = 1.0f64;
    for i in 0..k {
        out = out * (n - i) as f64 / (i + 1) as f64;
    }
    out
}

// ---- family spec JSON ----

fn parse_complex(v: &Value, what: &str) -> Result<Complex64> {
    match v {
        Value::Number(x) => Ok(Complex64::new(
            x.as_f64().ok_or_else(|| Error::Malformed(format!("bad number for {what}")))?,
            0.0,
        )),
        Value::Array(parts) if parts.len() == 2 => {
            let re = parts[0].as_f64();
            let im = parts[1].as_f64();
            match (re, im) {
                (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
                _ => Err(Error::Malformed(format!("bad complex pair for {what}"))),
            }
        }
        _ => Err(Error::Malformed(format!(
            "{what} must be a number or a [re, im] pair"
        ))),
    }
}

fn get_u32(params: &Value, key: &str) -> Result<u32> {
    params
        .get(key)
        .and_then(Value::as_u64)
        .and_then(|x| u32::try_from(x).ok())
        .ok_or_else(|| Error::Malformed(format!("family params missing integer {key:?}")))
}

fn get_f64(params: &Value, key: &str) -> Result<f64> {
    params
        .get(key)
        .and_then(Value::as_f64)
        .ok_or_else(|| Error::Malformed(format!("family params missing number {key:?}")))
}

fn complex_list(params: &Value, key: &str) -> Result<Vec<Complex64>> {
    let arr = params
        .get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Malformed(format!("family params missing list {key:?}")))?;
    arr.iter().map(|v| parse_complex(v, key)).collect()
}

/// Builds the polynomial a family spec JSON value describes.
pub fn family_from_value(v: &Value) -> Result<MixedPolynomial> {
    let name = v
        .get("family")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Malformed("family spec needs a string \"family\" key".into()))?;
    let empty = Value::Object(Default::default());
    let params = v.get("params").unwrap_or(&empty);
    match name {
        "rhie3" => Ok(rhie3()),
        "example" => Ok(example_f()),
        "power" => power_lens(get_u32(params, "n")?, get_u32(params, "m")?),
        "lens" => {
            let sys = LensSystem {
                masses: complex_list(params, "masses")?,
                positions: complex_list(params, "positions")?,
            };
            lens_numerator(&sys)
        }
        "rhie_family" => rhie_family(
            get_u32(params, "n")?,
            get_f64(params, "epsilon")?,
            get_f64(params, "a")?,
        ),
        "phi" | "psi" => {
            let base_value = params
                .get("base")
                .ok_or_else(|| Error::Malformed("phi/psi params need a \"base\"".into()))?;
            let base = polynomial_from_value(base_value)?;
            let m = get_u32(params, "m")?;
            let variant = if name == "phi" { Variant::Phi } else { Variant::Psi };
            let mut spec = BifurcationSpec::new(base, m, Complex64::ZERO, variant)?;
            spec.t = match params.get("t") {
                Some(tv) => parse_complex(tv, "t")?,
                None => spec.default_t(),
            };
            match variant {
                Variant::Phi => phi_t(&spec),
                Variant::Psi => psi_t(&spec),
            }
        }
        other => Err(Error::Malformed(format!("unknown family {other:?}"))),
    }
}

/// A polynomial literal ({"terms": ...}) or a family spec ({"family": ...}).
pub fn polynomial_from_value(v: &Value) -> Result<MixedPolynomial> {
    if v.get("terms").is_some() {
        let p: MixedPolynomial = serde_json::from_value(v.clone())
            .map_err(|e| Error::Malformed(format!("invalid polynomial JSON: {e}")))?;
        Ok(p)
    } else if v.get("family").is_some() {
        family_from_value(v)
    } else {
        Err(Error::Malformed(
            "input JSON needs either a \"terms\" or a \"family\" key".into(),
        ))
    }
}
