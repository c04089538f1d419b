//! Mixed polynomials f(z, zbar) with complex coefficients in sparse form.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Relative magnitude below which a coefficient is dropped.
pub const TRIM_REL: f64 = 1e-13;

/// f(z, zbar) = sum a_{nu,mu} z^nu zbar^mu.
/// No stored coefficient is zero; terms below the trim tolerance are
/// removed on construction and after every arithmetic operation.
/// Internally keyed by (mu, nu) so evaluation walks zbar groups directly.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedPolynomial {
    terms: BTreeMap<(u32, u32), Complex64>,
}

/// Degree data of a nonzero mixed polynomial.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DegreeProfile {
    /// Highest power of z appearing in any term.
    pub holo: u32,
    /// Highest power of zbar appearing in any term.
    pub antiholo: u32,
    /// Mixed degree: max over terms of nu + mu.
    pub mixed: u32,
    /// True when exactly one term attains the mixed degree.
    pub top_is_monomial: bool,
    /// (nu, mu) of the top term; meaningful only when `top_is_monomial`.
    pub top_exponents: (u32, u32),
    /// Coefficient of the top term when monomial, zero otherwise.
    pub top_coefficient: Complex64,
}

fn trim(mut terms: BTreeMap<(u32, u32), Complex64>) -> BTreeMap<(u32, u32), Complex64> {
    let maxmag = terms.values().map(|a| a.norm()).fold(0.0, f64::max);
    terms.retain(|_, a| a.norm() > TRIM_REL * maxmag);
    terms
}

impl Default for MixedPolynomial {
    fn default() -> Self {
        Self::zero()
    }
}

impl MixedPolynomial {
    /// Builds from (nu, mu, coefficient) triples; repeated exponent pairs accumulate.
    pub fn new(terms: impl IntoIterator<Item = (u32, u32, Complex64)>) -> Self {
        let mut map: BTreeMap<(u32, u32), Complex64> = BTreeMap::new();
        for (nu, mu, a) in terms {
            *map.entry((mu, nu)).or_insert(Complex64::ZERO) += a;
        }
        MixedPolynomial { terms: trim(map) }
    }

    pub fn zero() -> Self {
        MixedPolynomial { terms: BTreeMap::new() }
    }

    pub fn monomial(nu: u32, mu: u32, a: Complex64) -> Self {
        Self::new([(nu, mu, a)])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as (nu, mu, coefficient), ascending in (nu, mu).
    pub fn terms(&self) -> Vec<(u32, u32, Complex64)> {
        let mut out: Vec<_> = self
            .terms
            .iter()
            .map(|(&(mu, nu), &a)| (nu, mu, a))
            .collect();
        out.sort_by_key(|&(nu, mu, _)| (nu, mu));
        out
    }

    pub fn coeff(&self, nu: u32, mu: u32) -> Complex64 {
        self.terms.get(&(mu, nu)).copied().unwrap_or(Complex64::ZERO)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Nested Horner evaluation: Horner in z within each zbar group,
    /// Horner in zbar across groups.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        let zb = z.conj();
        let mut acc = Complex64::ZERO;
        let mut have_acc = false;
        let mut prev_mu = 0u32;
        let mut it = self.terms.iter().rev().peekable();
        while let Some(&(&(mu, _), _)) = it.peek() {
            let mut inner = Complex64::ZERO;
            let mut prev_nu: Option<u32> = None;
            while let Some(&(&(gmu, nu), &a)) = it.peek() {
                if gmu != mu {
                    break;
                }
                it.next();
                inner = match prev_nu {
                    None => a,
                    Some(pn) => inner * z.powu(pn - nu) + a,
                };
                prev_nu = Some(nu);
            }
            inner *= z.powu(prev_nu.unwrap_or(0));
            if have_acc {
                acc = acc * zb.powu(prev_mu - mu) + inner;
            } else {
                acc = inner;
                have_acc = true;
            }
            prev_mu = mu;
        }
        if have_acc {
            acc * zb.powu(prev_mu)
        } else {
            Complex64::ZERO
        }
    }

    /// sum |a_{nu,mu}| |z|^(nu+mu); the natural magnitude scale at z.
    pub fn scale_at(&self, z: Complex64) -> f64 {
        let r = z.norm();
        self.terms
            .iter()
            .map(|(&(mu, nu), a)| a.norm() * r.powi((nu + mu) as i32))
            .sum()
    }

    /// Wirtinger derivatives (f_z, f_zbar).
    pub fn wirtinger(&self) -> (MixedPolynomial, MixedPolynomial) {
        let fz = MixedPolynomial::new(
            self.terms
                .iter()
                .filter(|(&(_, nu), _)| nu > 0)
                .map(|(&(mu, nu), &a)| (nu - 1, mu, a * nu as f64)),
        );
        let fzb = MixedPolynomial::new(
            self.terms
                .iter()
                .filter(|(&(mu, _), _)| mu > 0)
                .map(|(&(mu, nu), &a)| (nu, mu - 1, a * mu as f64)),
        );
        (fz, fzb)
    }

    /// Swaps the roles of z and zbar and conjugates coefficients, so that
    /// conjugate_swap(f)(z) = conj(f(z)). An involution.
    pub fn conjugate_swap(&self) -> MixedPolynomial {
        MixedPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(&(mu, nu), &a)| ((nu, mu), a.conj()))
                .collect(),
        }
    }

    pub fn degrees(&self) -> Result<DegreeProfile> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let holo = self.terms.keys().map(|&(_, nu)| nu).max().unwrap();
        let antiholo = self.terms.keys().map(|&(mu, _)| mu).max().unwrap();
        let mixed = self.terms.keys().map(|&(mu, nu)| nu + mu).max().unwrap();
        let top: Vec<_> = self
            .terms
            .iter()
            .filter(|(&(mu, nu), _)| nu + mu == mixed)
            .map(|(&(mu, nu), &a)| (nu, mu, a))
            .collect();
        let top_is_monomial = top.len() == 1;
        Ok(DegreeProfile {
            holo,
            antiholo,
            mixed,
            top_is_monomial,
            top_exponents: if top_is_monomial { (top[0].0, top[0].1) } else { (0, 0) },
            top_coefficient: if top_is_monomial { top[0].2 } else { Complex64::ZERO },
        })
    }

    /// Terms of total degree exactly l.
    pub fn degree_part(&self, l: u32) -> MixedPolynomial {
        MixedPolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(&(mu, nu), _)| nu + mu == l)
                .map(|(&k, &a)| (k, a))
                .collect(),
        }
    }

    pub fn add(&self, other: &MixedPolynomial) -> MixedPolynomial {
        let mut map = self.terms.clone();
        for (&k, &a) in &other.terms {
            *map.entry(k).or_insert(Complex64::ZERO) += a;
        }
        MixedPolynomial { terms: trim(map) }
    }

    pub fn sub(&self, other: &MixedPolynomial) -> MixedPolynomial {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn multiply(&self, other: &MixedPolynomial) -> MixedPolynomial {
        let mut map: BTreeMap<(u32, u32), Complex64> = BTreeMap::new();
        for (&(m1, n1), &a) in &self.terms {
            for (&(m2, n2), &b) in &other.terms {
                *map.entry((m1 + m2, n1 + n2)).or_insert(Complex64::ZERO) += a * b;
            }
        }
        MixedPolynomial { terms: trim(map) }
    }

    pub fn scale(&self, c: Complex64) -> MixedPolynomial {
        MixedPolynomial {
            terms: trim(self.terms.iter().map(|(&k, &a)| (k, a * c)).collect()),
        }
    }

    /// f(z + c, zbar + conj(c)) expanded back into monomial form.
    pub fn recenter(&self, c: Complex64) -> MixedPolynomial {
        let cb = c.conj();
        let mut map: BTreeMap<(u32, u32), Complex64> = BTreeMap::new();
        for (&(mu, nu), &a) in &self.terms {
            let zpows = binomial_shift(nu, c);
            let bpows = binomial_shift(mu, cb);
            for (k, &zc) in zpows.iter().enumerate() {
                for (l, &bc) in bpows.iter().enumerate() {
                    *map.entry((l as u32, k as u32)).or_insert(Complex64::ZERO) += a * zc * bc;
                }
            }
        }
        MixedPolynomial { terms: trim(map) }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let p: MixedPolynomial = serde_json::from_str(text)?;
        Ok(p)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialization cannot fail")
    }
}

/// Coefficients of (x + c)^n in ascending powers of x.
fn binomial_shift(n: u32, c: Complex64) -> Vec<Complex64> {
    let mut out = vec![Complex64::ZERO; n as usize + 1];
    let mut binom = 1.0f64;
    for k in 0..=n {
        out[k as usize] = c.powu(n - k) * binom;
        binom = binom * (n - k) as f64 / (k + 1) as f64;
    }
    out
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    zn: u32,
    zb: u32,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    terms: Vec<TermRepr>,
}

impl Serialize for MixedPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = PolyRepr {
            terms: self
                .terms()
                .into_iter()
                .map(|(nu, mu, a)| TermRepr { zn: nu, zb: mu, re: a.re, im: a.im })
                .collect(),
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MixedPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(d)?;
        let mut map: BTreeMap<(u32, u32), Complex64> = BTreeMap::new();
        for t in &repr.terms {
            if map.insert((t.zb, t.zn), Complex64::new(t.re, t.im)).is_some() {
                return Err(D::Error::custom(format!(
                    "duplicate term for exponents ({}, {})",
                    t.zn, t.zb
                )));
            }
        }
        Ok(MixedPolynomial { terms: trim(map) })
    }
}
