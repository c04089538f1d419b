//! Elimination step: f(z, zbar) and its conjugate partner as bivariate
//! polynomials in (z, w), and their Sylvester resultant in w.
//!
//! The resultant is interpolated exactly over the rationals at integer
//! nodes, so coefficients spanning many orders of magnitude survive; the
//! tail coefficients of the bifurcation families sit far below f64 noise
//! relative to the leading ones and a floating-point elimination loses
//! the far roots entirely.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::mixedpoly::MixedPolynomial;
use crate::solver::univariate::UnivariatePolynomial;

/// Polynomial in (z, w); slices[j] is the coefficient of w^j as a dense
/// polynomial in z, ascending.
#[derive(Clone, Debug)]
pub struct Bivariate {
    pub slices: Vec<Vec<Complex64>>,
}

impl Bivariate {
    fn degree_w(&self) -> usize {
        self.slices.len() - 1
    }

    fn degree_z(&self) -> usize {
        self.slices
            .iter()
            .map(|s| s.iter().rposition(|c| c.norm() > 0.0).unwrap_or(0))
            .max()
            .unwrap_or(0)
    }
}

/// F(z, w) = f with zbar renamed to w, and G(z, w) = conj-coefficient
/// partner with the roles swapped, so that real solutions of f are the
/// common zeros of F and G on the slice w = zbar.
pub fn bivariate_pair(f: &MixedPolynomial) -> Result<(Bivariate, Bivariate)> {
    let prof = f.degrees()?;
    let n = prof.holo as usize;
    let m = prof.antiholo as usize;
    let mut fs = vec![vec![Complex64::ZERO; n + 1]; m + 1];
    let mut gs = vec![vec![Complex64::ZERO; m + 1]; n + 1];
    for (nu, mu, a) in f.terms() {
        fs[mu as usize][nu as usize] += a;
        gs[nu as usize][mu as usize] += a.conj();
    }
    Ok((Bivariate { slices: fs }, Bivariate { slices: gs }))
}

/// Complex number with exact rational parts.
#[derive(Clone)]
struct QC {
    re: BigRational,
    im: BigRational,
}

impl QC {
    fn zero() -> Self {
        QC { re: BigRational::zero(), im: BigRational::zero() }
    }

    fn one() -> Self {
        QC { re: BigRational::from_integer(BigInt::from(1)), im: BigRational::zero() }
    }

    fn from_c64(a: Complex64) -> Result<Self> {
        let re = BigRational::from_float(a.re);
        let im = BigRational::from_float(a.im);
        match (re, im) {
            (Some(re), Some(im)) => Ok(QC { re, im }),
            _ => Err(Error::Malformed(format!("non-finite coefficient {a}"))),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn add(&self, o: &QC) -> QC {
        QC { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    fn sub(&self, o: &QC) -> QC {
        QC { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    fn mul(&self, o: &QC) -> QC {
        QC {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn div(&self, o: &QC) -> QC {
        let den = &o.re * &o.re + &o.im * &o.im;
        QC {
            re: (&self.re * &o.re + &self.im * &o.im) / &den,
            im: (&self.im * &o.re - &self.re * &o.im) / &den,
        }
    }

    fn mul_rat(&self, x: &BigRational) -> QC {
        QC { re: &self.re * x, im: &self.im * x }
    }

    fn div_rat(&self, x: &BigRational) -> QC {
        QC { re: &self.re / x, im: &self.im / x }
    }

    fn neg(&self) -> QC {
        QC { re: -self.re.clone(), im: -self.im.clone() }
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

/// Nearest-ish f64 for a rational of any bit size: shift the numerator so
/// the quotient carries ~64 significant bits, then rescale by a power of
/// two in two steps to dodge intermediate overflow.
fn rat_to_f64(q: &BigRational) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    let n = q.numer();
    let d = q.denom();
    let shift = n.bits() as i64 - d.bits() as i64;
    let k = 64 - shift;
    let scaled: BigInt = if k >= 0 { n << k as usize } else { n >> (-k) as usize };
    let q64 = (scaled / d).to_f64().unwrap_or(if n.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    });
    let k1 = k / 2;
    let k2 = k - k1;
    q64 * 2f64.powi(-k1 as i32) * 2f64.powi(-k2 as i32)
}

/// Exact Gaussian elimination determinant.
fn exact_det(mut m: Vec<Vec<QC>>) -> QC {
    let n = m.len();
    let mut det = QC::one();
    let mut flip = false;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return QC::zero();
        };
        if piv != col {
            m.swap(piv, col);
            flip = !flip;
        }
        let pv = m[col][col].clone();
        det = det.mul(&pv);
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].div(&pv);
            for c in col..n {
                let s = factor.mul(&m[col][c]);
                m[r][c] = m[r][c].sub(&s);
            }
        }
    }
    if flip {
        det.neg()
    } else {
        det
    }
}

fn node_value(k: usize) -> BigRational {
    let q = (k + 1) / 2;
    let v = if k == 0 {
        BigInt::from(0)
    } else if k % 2 == 1 {
        BigInt::from(q as i64)
    } else {
        BigInt::from(-(q as i64))
    };
    BigRational::from_integer(v)
}

fn eval_slice(slice: &[QC], x: &BigRational) -> QC {
    let mut acc = QC::zero();
    for c in slice.iter().rev() {
        acc = acc.mul_rat(x).add(c);
    }
    acc
}

/// Resultant of F and G with respect to w, as a univariate polynomial in z
/// with f64 coefficients normalized to unit leading magnitude scale.
///
/// Interpolates det Syl(F, G)(x) at the integer nodes 0, 1, -1, 2, -2, ...
/// through exact divided differences. If every determinant vanishes the
/// resultant is identically zero and the zero set is not isolated.
pub fn sylvester_resultant(fb: &Bivariate, gb: &Bivariate) -> Result<UnivariatePolynomial> {
    let m = fb.degree_w();
    let n = gb.degree_w();
    let size = n + m;
    if size == 0 {
        return Ok(UnivariatePolynomial::new(vec![Complex64::new(1.0, 0.0)]));
    }
    let zf = fb.degree_z();
    let zg = gb.degree_z();
    let d_bound = n * zf + m * zg;

    let f_exact: Vec<Vec<QC>> = fb
        .slices
        .iter()
        .map(|s| s.iter().map(|&c| QC::from_c64(c)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let g_exact: Vec<Vec<QC>> = gb
        .slices
        .iter()
        .map(|s| s.iter().map(|&c| QC::from_c64(c)).collect::<Result<_>>())
        .collect::<Result<_>>()?;

    let nodes: Vec<BigRational> = (0..=d_bound).map(node_value).collect();
    let mut values: Vec<QC> = Vec::with_capacity(nodes.len());
    for x in &nodes {
        let fv: Vec<QC> = f_exact.iter().map(|s| eval_slice(s, x)).collect();
        let gv: Vec<QC> = g_exact.iter().map(|s| eval_slice(s, x)).collect();
        let mut mat = vec![vec![QC::zero(); size]; size];
        for i in 0..n {
            for (j, v) in fv.iter().enumerate() {
                mat[i][i + (m - j)] = v.clone();
            }
        }
        for i in 0..m {
            for (j, v) in gv.iter().enumerate() {
                mat[n + i][i + (n - j)] = v.clone();
            }
        }
        values.push(exact_det(mat));
    }

    if values.iter().all(|v| v.is_zero()) {
        return Err(Error::NonIsolated);
    }

    // Exact divided differences, then Newton-form expansion to monomials.
    let mut dd = values;
    for level in 1..=d_bound {
        for i in (level..=d_bound).rev() {
            let num = dd[i].sub(&dd[i - 1]);
            let den = &nodes[i] - &nodes[i - level];
            dd[i] = num.div_rat(&den);
        }
    }
    let mut coeffs: Vec<QC> = vec![dd[d_bound].clone()];
    for i in (0..d_bound).rev() {
        let x = &nodes[i];
        let mut next = vec![QC::zero(); coeffs.len() + 1];
        for (j, c) in coeffs.iter().enumerate() {
            next[j + 1] = next[j + 1].add(c);
            next[j] = next[j].sub(&c.mul_rat(x));
        }
        next[0] = next[0].add(&dd[i]);
        coeffs = next;
    }
    while coeffs.len() > 1 && coeffs.last().unwrap().is_zero() {
        coeffs.pop();
    }

    let mut out: Vec<Complex64> = coeffs.iter().map(|c| c.to_c64()).collect();
    let maxmag = out.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if maxmag > 0.0 {
        for c in &mut out {
            *c /= maxmag;
        }
    }
    Ok(UnivariatePolynomial::new(out))
}
