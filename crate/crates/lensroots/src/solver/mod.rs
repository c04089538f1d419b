//! Root pipeline: exact elimination, simultaneous univariate solve,
//! Newton polish, conjugacy filtering, dedupe, winding certification.

pub mod newton;
pub mod sylvester;
pub mod univariate;
pub mod winding;

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::classify::{classify_polynomial, ClassTag};
use crate::error::{Error, Result};
use crate::mixedpoly::MixedPolynomial;

pub use newton::{grid_newton_oracle, newton_polish};
pub use sylvester::{bivariate_pair, sylvester_resultant, Bivariate};
pub use univariate::{univariate_roots, UnivariatePolynomial};
pub use winding::{certify_winding, winding_number, Contour};

/// |J| below this times scale^2 marks a root degenerate.
pub const SIGN_DEGENERATE_REL: f64 = 1e-8;
/// Candidates with |f| above this times scale are spurious eliminant
/// roots (z and the w = zbar slice disagree) and are discarded.
pub const CONJUGACY_REL: f64 = 1e-6;
/// Roots closer than this times (1 + |z|) are duplicates.
pub const DEDUPE_REL: f64 = 1e-6;
pub const DEGENERATE_DEDUPE_REL: f64 = 1e-4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
    Degenerate,
}

impl Sign {
    pub fn as_str(&self) -> &'static str {
        match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
            Sign::Degenerate => "0",
        }
    }

    fn from_str(s: &str) -> Option<Sign> {
        match s {
            "+" => Some(Sign::Positive),
            "-" => Some(Sign::Negative),
            "0" => Some(Sign::Degenerate),
            _ => None,
        }
    }
}

/// An isolated zero of f with its local data.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Root {
    pub location: Complex64,
    /// J = |f_z|^2 - |f_zbar|^2 at the root.
    pub jacobian: f64,
    pub sign: Sign,
    /// |f| at the reported location.
    pub residual: f64,
    pub newton_iterations: u32,
}

#[derive(Serialize, Deserialize)]
struct RootRepr {
    re: f64,
    im: f64,
    sign: String,
    jacobian: f64,
    residual: f64,
}

impl Serialize for Root {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RootRepr {
            re: self.location.re,
            im: self.location.im,
            sign: self.sign.as_str().to_string(),
            jacobian: self.jacobian,
            residual: self.residual,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Root {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = RootRepr::deserialize(d)?;
        let sign = Sign::from_str(&r.sign)
            .ok_or_else(|| D::Error::custom(format!("invalid sign {:?}", r.sign)))?;
        Ok(Root {
            location: Complex64::new(r.re, r.im),
            jacobian: r.jacobian,
            sign,
            residual: r.residual,
            newton_iterations: 0,
        })
    }
}

/// Full result of solve_all. The source polynomial rides along for the
/// assertion helpers but stays out of the JSON shape.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootReport {
    #[serde(skip)]
    pub polynomial: MixedPolynomial,
    pub rho: usize,
    pub beta: i64,
    pub winding_certified: bool,
    pub degenerate_found: bool,
    pub class: ClassTag,
    /// Sorted by (re, im).
    pub roots: Vec<Root>,
}

impl RootReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<RootReport> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn max_root_modulus(&self) -> f64 {
        self.roots.iter().map(|r| r.location.norm()).fold(0.0, f64::max)
    }
}

/// Merge roots within DEDUPE_REL x (1 + |z|), keeping the lowest residual
/// per cluster; result sorted by (re, im). Degenerate roots merge at the
/// wider DEGENERATE_DEDUPE_REL since a multiple root is only located to
/// about the square root of the residual tolerance.
pub(crate) fn dedupe(mut roots: Vec<Root>) -> Vec<Root> {
    let radius = |r: &Root| {
        let rel = if r.sign == Sign::Degenerate { DEGENERATE_DEDUPE_REL } else { DEDUPE_REL };
        rel * (1.0 + r.location.norm())
    };
    roots.sort_by(|a, b| a.residual.total_cmp(&b.residual));
    let mut kept: Vec<Root> = Vec::new();
    for r in roots {
        if kept.iter().all(|k| (k.location - r.location).norm() > radius(k).max(radius(&r))) {
            kept.push(r);
        }
    }
    kept.sort_by(|a, b| {
        (a.location.re, a.location.im).partial_cmp(&(b.location.re, b.location.im)).unwrap()
    });
    kept
}

/// Keeps the candidates that actually satisfy f = 0, not just the
/// eliminant: |f(z)| <= CONJUGACY_REL x scale.
pub fn conjugacy_filter(f: &MixedPolynomial, candidates: &[Complex64]) -> Vec<Complex64> {
    candidates
        .iter()
        .copied()
        .filter(|&z| f.evaluate(z).norm() <= CONJUGACY_REL * f.scale_at(z))
        .collect()
}

/// Finds, polishes, filters, signs, counts, and certifies all isolated
/// roots of f. Candidates are polished before the conjugacy filter so the
/// filter judges the converged point rather than the raw eliminant root.
pub fn solve_all(f: &MixedPolynomial) -> Result<RootReport> {
    let prof = f.degrees()?;
    let class = classify_polynomial(f)?;
    if prof.holo == 0 && prof.antiholo == 0 {
        // nonzero constant: empty zero set
        return Ok(RootReport {
            polynomial: f.clone(),
            rho: 0,
            beta: 0,
            winding_certified: true,
            degenerate_found: false,
            class,
            roots: Vec::new(),
        });
    }

    let (fb, gb) = bivariate_pair(f)?;
    let eliminant = sylvester_resultant(&fb, &gb)?;
    let candidates = eliminant.roots()?;

    let (fz, fzb) = f.wirtinger();
    let mut found: Vec<Root> = Vec::new();
    for z0 in candidates {
        match newton_polish(f, z0) {
            Ok(root) => {
                if root.residual <= CONJUGACY_REL * f.scale_at(root.location) {
                    found.push(root);
                }
            }
            Err(Error::SingularJacobian(zs)) => {
                // Degenerate zero: report it flagged instead of failing.
                let residual = f.evaluate(zs).norm();
                if residual <= CONJUGACY_REL * f.scale_at(zs) {
                    let j = fz.evaluate(zs).norm_sqr() - fzb.evaluate(zs).norm_sqr();
                    found.push(Root {
                        location: zs,
                        jacobian: j,
                        sign: Sign::Degenerate,
                        residual,
                        newton_iterations: 0,
                    });
                }
            }
            Err(Error::Diverged(_)) => {}
            Err(e) => return Err(e),
        }
    }

    let roots = dedupe(found);
    let rho = roots.len();
    let beta = roots.iter().fold(0i64, |acc, r| {
        acc + match r.sign {
            Sign::Positive => 1,
            Sign::Negative => -1,
            Sign::Degenerate => 0,
        }
    });
    let degenerate_found = roots.iter().any(|r| r.sign == Sign::Degenerate);
    let max_mod = roots.iter().map(|r| r.location.norm()).fold(0.0, f64::max);
    let winding_certified = certify_winding(f, max_mod) == Some(beta);

    Ok(RootReport {
        polynomial: f.clone(),
        rho,
        beta,
        winding_certified,
        degenerate_found,
        class,
        roots,
    })
}
