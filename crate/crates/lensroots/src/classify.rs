//! Syntactic class tags (L, Lhs, M) in the given chart, plus
//! count-law assertions over root reports.

use std::collections::BTreeSet;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::mixedpoly::MixedPolynomial;
use crate::solver::RootReport;

/// Singular-value ratio below which the mu >= 1 coefficient block counts
/// as rank one.
const RANK1_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassName {
    L,
    Lhs,
    M,
    Other,
}

impl ClassName {
    pub fn as_str(&self) -> &'static str {
        match self {
            ClassName::L => "L",
            ClassName::Lhs => "Lhs",
            ClassName::M => "M",
            ClassName::Other => "other",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassTag {
    pub class_name: ClassName,
    pub n: u32,
    pub m: u32,
    /// Mixed degree, carried for display as "L(d;n,m)".
    pub d: u32,
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({};{},{})", self.class_name.as_str(), self.d, self.n, self.m)
    }
}

#[derive(Serialize, Deserialize)]
struct TagRepr {
    class: String,
    n: u32,
    m: u32,
}

impl Serialize for ClassTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TagRepr { class: self.class_name.as_str().to_string(), n: self.n, m: self.m }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ClassTag {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = TagRepr::deserialize(d)?;
        let class_name = match r.class.as_str() {
            "L" => ClassName::L,
            "Lhs" => ClassName::Lhs,
            "M" => ClassName::M,
            "other" => ClassName::Other,
            other => return Err(D::Error::custom(format!("unknown class {other:?}"))),
        };
        Ok(ClassTag { class_name, n: r.n, m: r.m, d: r.n + r.m })
    }
}

/// Classifies f in the given chart. L: zbar-support {0, m} with the mu=m
/// slice q satisfying deg q >= deg p; Lhs: the mu >= 1 coefficient block
/// factors as r(zbar) q(z), detected as rank one; else M.
pub fn classify_polynomial(f: &MixedPolynomial) -> Result<ClassTag> {
    let prof = f.degrees()?;
    let n = prof.holo;
    let m = prof.antiholo;
    let d = prof.mixed;

    if m >= 1 {
        let support: BTreeSet<u32> = f.terms().iter().map(|&(_, mu, _)| mu).collect();
        let l_support = support.len() <= 2
            && support.contains(&m)
            && support.iter().all(|&mu| mu == 0 || mu == m);
        if l_support {
            let deg_q = f
                .terms()
                .iter()
                .filter(|&&(_, mu, _)| mu == m)
                .map(|&(nu, _, _)| nu)
                .max()
                .unwrap();
            let deg_p = f
                .terms()
                .iter()
                .filter(|&&(_, mu, _)| mu == 0)
                .map(|&(nu, _, _)| nu)
                .max();
            if deg_p.map_or(true, |dp| dp <= deg_q) {
                return Ok(ClassTag { class_name: ClassName::L, n: deg_q, m, d });
            }
        }
        if block_rank_one(f, n, m) {
            return Ok(ClassTag { class_name: ClassName::Lhs, n, m, d });
        }
    }

    Ok(ClassTag { class_name: ClassName::M, n, m, d })
}

fn block_rank_one(f: &MixedPolynomial, n: u32, m: u32) -> bool {
    let rows = m as usize;
    let cols = n as usize + 1;
    let mut a = DMatrix::<Complex64>::zeros(rows, cols);
    for (nu, mu, c) in f.terms() {
        if mu >= 1 {
            a[(mu as usize - 1, nu as usize)] = c;
        }
    }
    let sv = a.singular_values();
    if sv.len() < 2 {
        return true;
    }
    let mut s: Vec<f64> = sv.iter().copied().collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s[1] <= RANK1_TOL * s[0]
}

#[derive(Clone, Debug)]
pub struct AssertOutcome {
    pub pass: bool,
    pub detail: String,
}

/// Checks beta = n - m for a monomial top form z^n zbar^m, with winding
/// certification agreeing.
pub fn assert_beta(report: &RootReport) -> Result<AssertOutcome> {
    let prof = report.polynomial.degrees()?;
    if !prof.top_is_monomial {
        return Err(Error::Malformed(
            "beta assertion not applicable: top form is not a monomial".into(),
        ));
    }
    if report.degenerate_found {
        return Err(Error::Malformed(
            "beta assertion not applicable: report is degenerate-flagged".into(),
        ));
    }
    let (n, m) = prof.top_exponents;
    let expected = n as i64 - m as i64;
    let pass = report.beta == expected && report.winding_certified;
    Ok(AssertOutcome {
        pass,
        detail: format!(
            "beta = {} vs n - m = {}, winding_certified = {}",
            report.beta, expected, report.winding_certified
        ),
    })
}

/// Checks the class root-count window: for L/Lhs(n+m;n,m),
/// n+m-2 <= rho <= 5n+m-6 with rho = n-m (mod 2); for m = 1 this is the
/// Khavinson-Neumann window n-1 <= rho <= 5n-5. Vacuous for class M.
pub fn assert_rho_bounds(report: &RootReport, tag: &ClassTag) -> AssertOutcome {
    match tag.class_name {
        ClassName::L | ClassName::Lhs => {}
        _ => {
            return AssertOutcome {
                pass: true,
                detail: format!("no rho bounds asserted for class {tag}"),
            }
        }
    }
    if tag.m < 1 || tag.n < 2 {
        return AssertOutcome {
            pass: true,
            detail: format!("no rho bounds asserted for {tag}: needs n >= 2, m >= 1"),
        };
    }
    let n = tag.n as i64;
    let m = tag.m as i64;
    let rho = report.rho as i64;
    let lo = n + m - 2;
    let hi = 5 * n + m - 6;
    let parity_ok = (rho - (n - m)).rem_euclid(2) == 0;
    let pass = lo <= rho && rho <= hi && parity_ok;
    AssertOutcome {
        pass,
        detail: format!("rho = {rho} against [{lo}, {hi}] with parity of n-m = {}", n - m),
    }
}
