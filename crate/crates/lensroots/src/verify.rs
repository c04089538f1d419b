//! Named invariant suites behind `lensroots verify`, with JUnit-style
//! reporting.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::classify::{assert_beta, ClassName};
use crate::error::{Error, Result};
use crate::families::{
    example_f, lens_numerator, phi_t, power_lens, predict_infinity_roots, psi_t, rhie3,
    BifurcationSpec, LensSystem, Variant,
};
use crate::mixedpoly::MixedPolynomial;
use crate::solver::{solve_all, winding_number, Contour, RootReport, Sign};

#[derive(Clone, Debug)]
pub struct CaseResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub suite: String,
    pub cases: Vec<CaseResult>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.passed)
    }

    pub fn junit_xml(&self) -> String {
        let failures = self.cases.iter().filter(|c| !c.passed).count();
        let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        out.push_str(&format!(
            "<testsuite name=\"{}\" tests=\"{}\" failures=\"{failures}\">\n",
            xml_escape(&self.suite),
            self.cases.len()
        ));
        for c in &self.cases {
            if c.passed {
                out.push_str(&format!("  <testcase name=\"{}\"/>\n", xml_escape(&c.name)));
            } else {
                out.push_str(&format!(
                    "  <testcase name=\"{}\"><failure message=\"{}\"/></testcase>\n",
                    xml_escape(&c.name),
                    xml_escape(&c.detail)
                ));
            }
        }
        out.push_str("</testsuite>\n");
        out
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

pub fn run_suite(name: &str) -> Result<SuiteResult> {
    match name {
        "paper-goldens" => Ok(paper_goldens()),
        "beta-random" => Ok(beta_random()),
        other => Err(Error::Malformed(format!(
            "unknown suite {other:?}; available: paper-goldens, beta-random"
        ))),
    }
}

struct Suite {
    cases: Vec<CaseResult>,
}

impl Suite {
    fn check(&mut self, name: &str, condition: bool, detail: String) {
        self.cases.push(CaseResult { name: name.to_string(), passed: condition, detail });
    }

    fn run(&mut self, name: &str, body: impl FnOnce() -> Result<(bool, String)>) {
        match body() {
            Ok((passed, detail)) => self.cases.push(CaseResult {
                name: name.to_string(),
                passed,
                detail,
            }),
            Err(e) => self.cases.push(CaseResult {
                name: name.to_string(),
                passed: false,
                detail: format!("error: {e}"),
            }),
        }
    }
}

/// Uniform draw from the closed unit disk.
pub fn disk_sample(rng: &mut impl Rng) -> Complex64 {
    loop {
        let x = rng.random::<f64>() * 2.0 - 1.0;
        let y = rng.random::<f64>() * 2.0 - 1.0;
        if x * x + y * y <= 1.0 {
            return Complex64::new(x, y);
        }
    }
}

/// Random member of M(n+m; n, m): dense unit-disk coefficients with a
/// non-negligible top monomial.
pub fn random_member(n: u32, m: u32, rng: &mut impl Rng) -> MixedPolynomial {
    loop {
        let mut terms = Vec::new();
        for nu in 0..=n {
            for mu in 0..=m {
                terms.push((nu, mu, disk_sample(rng)));
            }
        }
        let f = MixedPolynomial::new(terms);
        if f.coeff(n, m).norm() >= 1e-6 {
            return f;
        }
    }
}

/// Far roots of a report: modulus above the threshold.
fn far_roots(report: &RootReport, threshold: f64) -> Vec<crate::solver::Root> {
    report.roots.iter().copied().filter(|r| r.location.norm() > threshold).collect()
}

/// For each prediction, the relative distance to its nearest far root.
fn prediction_distances(predictions: &[Complex64], far: &[crate::solver::Root]) -> Vec<f64> {
    predictions
        .iter()
        .map(|&p| {
            far.iter()
                .map(|r| (r.location - p).norm() / p.norm())
                .fold(f64::INFINITY, f64::min)
        })
        .collect()
}

fn phi_report(m: u32, t: Complex64) -> Result<(RootReport, Vec<Complex64>)> {
    let spec = BifurcationSpec::new(rhie3(), m, t, Variant::Phi)?;
    let f = phi_t(&spec)?;
    let report = solve_all(&f)?;
    let predictions = predict_infinity_roots(spec.gamma, m, t)?;
    Ok((report, predictions))
}

fn paper_goldens() -> SuiteResult {
    let mut s = Suite { cases: Vec::new() };

    let l3_report = solve_all(&rhie3());
    s.run("l3_rho_beta_class", || {
        let r = l3_report.as_ref().map_err(|e| Error::Malformed(e.to_string()))?;
        let ok = r.rho == 10
            && r.beta == 2
            && r.winding_certified
            && !r.degenerate_found
            && r.class.to_string() == "L(4;3,1)"
            && r.roots.iter().all(|x| x.residual <= 1e-9);
        Ok((ok, format!("rho={} beta={} class={}", r.rho, r.beta, r.class)))
    });
    s.run("l3_meets_kn_bound_with_equality", || {
        let r = l3_report.as_ref().map_err(|e| Error::Malformed(e.to_string()))?;
        Ok((r.rho == 5 * 3 - 5, format!("rho={} vs 5n-5=10", r.rho)))
    });

    let ex_report = solve_all(&example_f());
    s.run("example_rho_beta_signs", || {
        let r = ex_report.as_ref().map_err(|e| Error::Malformed(e.to_string()))?;
        let pos = r.roots.iter().filter(|x| x.sign == Sign::Positive).count();
        let neg = r.roots.iter().filter(|x| x.sign == Sign::Negative).count();
        Ok((
            r.rho == 12 && r.beta == 0 && pos == 6 && neg == 6 && r.winding_certified,
            format!("rho={} beta={} pos={pos} neg={neg}", r.rho, r.beta),
        ))
    });
    s.run("example_far_pair_near_minus150", || {
        let r = ex_report.as_ref().map_err(|e| Error::Malformed(e.to_string()))?;
        let mut roots = r.roots.clone();
        roots.sort_by(|a, b| b.location.norm().total_cmp(&a.location.norm()));
        let targets = [Complex64::new(-150.0, 86.6), Complex64::new(-150.0, -86.6)];
        let ok = roots.len() >= 2
            && targets.iter().all(|&w| {
                roots[..2]
                    .iter()
                    .any(|r| (r.location - w).norm() <= 0.5 && r.sign == Sign::Negative)
            });
        Ok((ok, format!("largest two: {}, {}", roots[0].location, roots[1].location)))
    });
    s.run("example_conjugate_symmetry", || {
        let r = ex_report.as_ref().map_err(|e| Error::Malformed(e.to_string()))?;
        let ok = r.roots.iter().all(|a| {
            r.roots.iter().any(|b| {
                (b.location - a.location.conj()).norm() <= 1e-6 * (1.0 + a.location.norm())
                    && b.sign == a.sign
            })
        });
        Ok((ok, "root multiset closed under conjugation with equal signs".into()))
    });

    s.run("power_lens_counts", || {
        let r31 = solve_all(&power_lens(3, 1)?)?;
        let r20 = solve_all(&power_lens(2, 0)?)?;
        let r52 = solve_all(&power_lens(5, 2)?)?;
        let ok31 = r31.rho == 2
            && r31.roots.iter().any(|r| (r.location - Complex64::ONE).norm() < 1e-9)
            && r31.roots.iter().any(|r| (r.location + Complex64::ONE).norm() < 1e-9);
        let ok20 = r20.rho == 2;
        let ok52 =
            r52.rho == 3 && r52.beta == 3 && r52.roots.iter().all(|r| r.sign == Sign::Positive);
        Ok((
            ok31 && ok20 && ok52,
            format!("rho(3,1)={} rho(2,0)={} rho(5,2)={}", r31.rho, r20.rho, r52.rho),
        ))
    });

    for m in [2u32, 3, 4] {
        s.run(&format!("phi_m{m}_rho_and_far_roots"), || {
            let t = Complex64::new(1e-3 * 0.03, 0.0);
            let (report, predictions) = phi_report(m, t)?;
            let far = far_roots(&report, 50.0);
            let dists = prediction_distances(&predictions, &far);
            let ok = report.rho == 9 + m as usize
                && far.len() == m as usize - 1
                && far.iter().all(|r| r.sign == Sign::Negative)
                && dists.iter().all(|&d| d <= 0.1);
            Ok((
                ok,
                format!("rho={} far={} max rel dist={:.3e}", report.rho, far.len(),
                    dists.iter().fold(0.0f64, |a, &b| a.max(b))),
            ))
        });
        s.run(&format!("phi_m{m}_halving_t"), || {
            let t = Complex64::new(1e-3 * 0.03, 0.0);
            let (r1, p1) = phi_report(m, t)?;
            let (r2, p2) = phi_report(m, t * 0.5)?;
            let d1 = prediction_distances(&p1, &far_roots(&r1, 50.0));
            let d2 = prediction_distances(&p2, &far_roots(&r2, 50.0));
            let ok = d1.iter().zip(&d2).all(|(&a, &b)| b <= a && b >= 0.23 * a);
            let fmt = |v: &[f64]| {
                v.iter().map(|d| format!("{d:.3e}")).collect::<Vec<_>>().join(",")
            };
            Ok((ok, format!("rel dists [{}] -> [{}]", fmt(&d1), fmt(&d2))))
        });
    }

    for m in [2u32, 3] {
        s.run(&format!("psi_m{m}_new_negative_roots"), || {
            let spec = BifurcationSpec::new(rhie3(), m, Complex64::new(1e-3, 0.0), Variant::Psi)?;
            let f = psi_t(&spec)?;
            let report = solve_all(&f)?;
            let base_roots: Vec<Complex64> = solve_all(&rhie3())?
                .roots
                .iter()
                .map(|r| r.location)
                .collect();
            let fresh: Vec<_> = report
                .roots
                .iter()
                .filter(|r| base_roots.iter().all(|&b| (r.location - b).norm() > 0.05))
                .collect();
            let ok = report.rho == 9 + m as usize
                && fresh.len() == m as usize - 1
                && fresh.iter().all(|r| r.sign == Sign::Negative);
            Ok((ok, format!("rho={} new={}", report.rho, fresh.len())))
        });
    }

    s.run("phi_low_end_count", || {
        let base = MixedPolynomial::new([
            (3, 1, Complex64::ONE),
            (0, 0, -Complex64::ONE),
        ]);
        let spec = BifurcationSpec::new(base, 2, Complex64::new(1e-3, 0.0), Variant::Phi)?;
        let report = solve_all(&phi_t(&spec)?)?;
        Ok((report.rho == 3, format!("rho={} vs n+m-2=3", report.rho)))
    });

    s.run("non_isolated_error_paths", || {
        let circle = MixedPolynomial::new([
            (1, 1, Complex64::ONE),
            (0, 0, -Complex64::ONE),
        ]);
        let line = MixedPolynomial::new([
            (0, 1, Complex64::ONE),
            (1, 0, -Complex64::ONE),
        ]);
        let a = matches!(solve_all(&circle), Err(Error::NonIsolated));
        let b = matches!(solve_all(&line), Err(Error::NonIsolated));
        Ok((a && b, format!("z zbar - 1: {a}, zbar - z: {b}")))
    });

    s.run("winding_basics", || {
        let unit = Contour::circle(Complex64::ZERO, 1.0);
        let z = MixedPolynomial::monomial(1, 0, Complex64::ONE);
        let zb = MixedPolynomial::monomial(0, 1, Complex64::ONE);
        let w1 = winding_number(&z, &unit)?;
        let w2 = winding_number(&zb, &unit)?;
        let w3 = winding_number(&example_f(), &Contour::circle(Complex64::ZERO, 500.0))?;
        Ok((w1 == 1 && w2 == -1 && w3 == 0, format!("z: {w1}, zbar: {w2}, example@500: {w3}")))
    });

    s.run("lens_two_masses", || {
        let sys = LensSystem {
            masses: vec![Complex64::ONE, Complex64::ONE],
            positions: vec![Complex64::ONE, -Complex64::ONE],
        };
        let f = lens_numerator(&sys)?;
        let expected = MixedPolynomial::new([
            (2, 1, Complex64::ONE),
            (0, 1, -Complex64::ONE),
            (1, 0, Complex64::new(-2.0, 0.0)),
        ]);
        let tag = crate::classify::classify_polynomial(&f)?;
        Ok((
            f == expected && tag.class_name == ClassName::L && tag.m == 1,
            format!("classifies {tag}"),
        ))
    });

    s.run("predict_closed_forms", || {
        let g = Complex64::new(0.03, 0.0);
        let t = Complex64::new(3e-5, 0.0);
        let p2 = predict_infinity_roots(g, 2, t)?;
        let ok2 = p2.len() == 1 && (p2[0] - (-2.0 * g / t)).norm() < 1e-9;
        let p3 = predict_infinity_roots(Complex64::new(100.0, 0.0), 3, Complex64::ONE)?;
        let targets = [Complex64::new(-150.0, 86.6), Complex64::new(-150.0, -86.6)];
        let ok3 = targets
            .iter()
            .all(|&w| p3.iter().any(|&p| (p - w).norm() < 0.1));
        Ok((ok2 && ok3, format!("m=2: {:?}, m=3: {p3:?}", p2)))
    });

    s.run("beta_assertions_on_goldens", || {
        let l3 = l3_report.as_ref().map_err(|e| Error::Malformed(e.to_string()))?;
        let ex = ex_report.as_ref().map_err(|e| Error::Malformed(e.to_string()))?;
        let a = assert_beta(l3)?;
        let b = assert_beta(ex)?;
        let mut corrupted = l3.clone();
        corrupted.beta += 2;
        let c = assert_beta(&corrupted)?;
        Ok((
            a.pass && b.pass && !c.pass,
            format!("l3: {}, example: {}, corrupted: {}", a.detail, b.detail, c.pass),
        ))
    });

    s.run("parity_of_goldens", || {
        let l3 = l3_report.as_ref().map_err(|e| Error::Malformed(e.to_string()))?;
        let ex = ex_report.as_ref().map_err(|e| Error::Malformed(e.to_string()))?;
        let ok = (l3.rho as i64 - l3.beta).rem_euclid(2) == 0
            && (ex.rho as i64 - ex.beta).rem_euclid(2) == 0
            && (l3.rho as i64 - 2).rem_euclid(2) == 0
            && (ex.rho as i64).rem_euclid(2) == 0;
        Ok((ok, "rho = n - m (mod 2) on both goldens".into()))
    });

    SuiteResult { suite: "paper-goldens".into(), cases: s.cases }
}

fn beta_random() -> SuiteResult {
    let mut s = Suite { cases: Vec::new() };
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut degenerate = 0usize;
    let mut failures = Vec::new();
    let total = 100;
    for k in 0..total {
        let f = random_member(3, 2, &mut rng);
        match solve_all(&f) {
            Ok(report) if report.degenerate_found => degenerate += 1,
            Ok(report) => {
                if report.beta != 1 || !report.winding_certified {
                    failures.push(format!(
                        "draw {k}: beta={} certified={}",
                        report.beta, report.winding_certified
                    ));
                }
            }
            Err(e) => failures.push(format!("draw {k}: {e}")),
        }
    }
    s.check(
        "beta_equals_one_on_random_m_3_2",
        failures.is_empty(),
        if failures.is_empty() {
            format!("{} draws checked", total - degenerate)
        } else {
            failures.join("; ")
        },
    );
    s.check(
        "degenerate_rate_below_5_percent",
        degenerate * 20 < total,
        format!("{degenerate} of {total} draws flagged degenerate"),
    );
    SuiteResult { suite: "beta-random".into(), cases: s.cases }
}
