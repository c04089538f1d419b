//! Frozen numeric goldens: every value here was produced by an
//! independent high-precision prototype and is asserted bit-tight against
//! the library's own pipeline.

use std::process::Command;

use num_complex::Complex64;

use lensroots::classify::{classify_polynomial, ClassName};
use lensroots::families::{
    example_f, lens_numerator, phi_t, power_lens, predict_infinity_roots, psi_t, rhie3,
    rhie_family, BifurcationSpec, LensSystem, Variant,
};
use lensroots::mixedpoly::MixedPolynomial;
use lensroots::solver::{solve_all, winding_number, Contour, Root, RootReport, Sign};
use lensroots::Error;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The report root nearest to the target; panics if none is within tol.
fn root_near(report: &RootReport, target: Complex64, tol: f64) -> Root {
    report
        .roots
        .iter()
        .copied()
        .min_by(|a, b| (a.location - target).norm().total_cmp(&(b.location - target).norm()))
        .filter(|r| (r.location - target).norm() <= tol)
        .unwrap_or_else(|| panic!("no root within {tol:.1e} of {target}"))
}

fn rel_tol(target: Complex64) -> f64 {
    1e-8 * (1.0 + target.norm())
}

#[test]
fn l3_constant_and_degrees() {
    let f = rhie3();
    assert_eq!(f.coeff(0, 0), c(13.0 / 100000.0, 0.0));
    assert_eq!(f.evaluate(Complex64::ZERO), c(13.0 / 100000.0, 0.0));
    let prof = f.degrees().unwrap();
    assert_eq!((prof.holo, prof.antiholo, prof.mixed), (3, 1, 4));
    assert!(prof.top_is_monomial);
    assert_eq!(prof.top_exponents, (3, 1));
}

#[test]
fn l3_report_matches_oracle() {
    let report = solve_all(&rhie3()).unwrap();
    assert_eq!(report.rho, 10);
    assert_eq!(report.beta, 2);
    assert!(report.winding_certified);
    assert!(!report.degenerate_found);
    assert_eq!(report.class.to_string(), "L(4;3,1)");
    assert!(report.roots.iter().all(|r| r.residual <= 1e-9));

    let a = root_near(&report, c(-0.9274620916482909, 0.0), rel_tol(c(-0.93, 0.0)));
    assert_eq!(a.sign, Sign::Negative);
    let b = root_near(&report, c(0.02827567160499268, 0.0), rel_tol(c(0.03, 0.0)));
    assert_eq!(b.sign, Sign::Negative);
    let d = root_near(&report, c(1.055706419725713, 0.0), rel_tol(c(1.06, 0.0)));
    assert_eq!(d.sign, Sign::Positive);

    for r in &report.roots {
        let j = r.jacobian.abs();
        assert!((1e-5..1e-3).contains(&j), "|J| = {j:.3e} out of the oracle band");
    }
}

#[test]
fn example_report_matches_oracle() {
    let report = solve_all(&example_f()).unwrap();
    assert_eq!(report.rho, 12);
    assert_eq!(report.beta, 0);
    assert!(report.winding_certified);
    assert_eq!(report.class.to_string(), "Lhs(6;3,3)");
    let pos = report.roots.iter().filter(|r| r.sign == Sign::Positive).count();
    let neg = report.roots.iter().filter(|r| r.sign == Sign::Negative).count();
    assert_eq!((pos, neg), (6, 6));

    let far = c(-149.9999999991388, 86.59676649123037);
    assert_eq!(root_near(&report, far, rel_tol(far)).sign, Sign::Negative);
    assert_eq!(root_near(&report, far.conj(), rel_tol(far)).sign, Sign::Negative);
    let small = c(0.02827016658146366, 0.0);
    root_near(&report, small, rel_tol(small));

    for r in &report.roots {
        let partner = root_near(&report, r.location.conj(), 1e-9 * (1.0 + r.location.norm()));
        assert_eq!(partner.sign, r.sign);
    }
}

#[test]
fn power_lens_goldens() {
    let r21 = solve_all(&power_lens(2, 1).unwrap()).unwrap();
    assert_eq!((r21.rho, r21.beta), (1, 1));
    let one = root_near(&r21, c(1.0, 0.0), 1e-12);
    assert_eq!(one.sign, Sign::Positive);
    assert!((one.jacobian - 3.0).abs() < 1e-9);

    let r31 = solve_all(&power_lens(3, 1).unwrap()).unwrap();
    assert_eq!((r31.rho, r31.beta), (2, 2));
    for t in [c(1.0, 0.0), c(-1.0, 0.0)] {
        let r = root_near(&r31, t, 1e-12);
        assert_eq!(r.sign, Sign::Positive);
        assert!((r.jacobian - 8.0).abs() < 1e-9);
    }

    let r52 = solve_all(&power_lens(5, 2).unwrap()).unwrap();
    assert_eq!((r52.rho, r52.beta), (3, 3));
    assert!(r52.winding_certified);
    for t in [c(1.0, 0.0), c(-0.5, 0.8660254037844386), c(-0.5, -0.8660254037844386)] {
        let r = root_near(&r52, t, 1e-12);
        assert_eq!(r.sign, Sign::Positive);
        assert!((r.jacobian - 21.0).abs() < 1e-9);
    }
}

fn phi_report(m: u32, t: f64) -> (RootReport, Vec<Complex64>) {
    let spec = BifurcationSpec::new(rhie3(), m, c(t, 0.0), Variant::Phi).unwrap();
    let report = solve_all(&phi_t(&spec).unwrap()).unwrap();
    let predictions = predict_infinity_roots(spec.gamma, m, spec.t).unwrap();
    (report, predictions)
}

fn max_rel_dist(predictions: &[Complex64], report: &RootReport) -> f64 {
    predictions
        .iter()
        .map(|&p| {
            report
                .roots
                .iter()
                .map(|r| (r.location - p).norm() / p.norm())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

#[test]
fn phi_m2_golden() {
    let (report, predictions) = phi_report(2, 3e-5);
    assert_eq!((report.rho, report.beta), (11, 1));
    assert!(report.winding_certified);
    let far = c(-1999.999499999751, 0.0);
    assert_eq!(root_near(&report, far, rel_tol(far)).sign, Sign::Negative);
    let d = max_rel_dist(&predictions, &report);
    assert!((2.4e-7..2.6e-7).contains(&d), "rel dist {d:.6e}");

    let (half, half_pred) = phi_report(2, 1.5e-5);
    let ratio = max_rel_dist(&half_pred, &half) / d;
    assert!((0.2499..0.2501).contains(&ratio), "halving ratio {ratio:.6}");
}

#[test]
fn phi_m3_golden() {
    let (report, predictions) = phi_report(3, 3e-5);
    assert_eq!((report.rho, report.beta), (12, 0));
    assert!(report.winding_certified);
    for target in [c(-1500.0, -866.0248264337847), c(-1500.0, 866.0248264337847)] {
        assert_eq!(root_near(&report, target, rel_tol(target)).sign, Sign::Negative);
    }
    let d = max_rel_dist(&predictions, &report);
    assert!((3.2e-7..3.5e-7).contains(&d), "rel dist {d:.6e}");
}

#[test]
fn phi_m4_golden() {
    let (report, predictions) = phi_report(4, 3e-5);
    assert_eq!((report.rho, report.beta), (13, -1));
    assert!(report.winding_certified);
    for target in [
        c(-1999.999499999501, 0.0),
        c(-1000.000500000499, 999.9994999997492),
        c(-1000.000500000499, -999.9994999997492),
    ] {
        assert_eq!(root_near(&report, target, rel_tol(target)).sign, Sign::Negative);
    }
    let d = max_rel_dist(&predictions, &report);
    assert!(d <= 5.1e-7, "rel dist {d:.6e}");
}

#[test]
fn psi_goldens() {
    let spec2 = BifurcationSpec::new(rhie3(), 2, c(1e-3, 0.0), Variant::Psi).unwrap();
    let r2 = solve_all(&psi_t(&spec2).unwrap()).unwrap();
    assert_eq!((r2.rho, r2.beta), (11, 1));
    let far = c(-999.9989999980045, 0.0);
    assert_eq!(root_near(&r2, far, rel_tol(far)).sign, Sign::Negative);

    let spec3 = BifurcationSpec::new(rhie3(), 3, c(1e-3, 0.0), Variant::Psi).unwrap();
    let r3 = solve_all(&psi_t(&spec3).unwrap()).unwrap();
    assert_eq!((r3.rho, r3.beta), (12, 0));
    for target in [c(0.0, 31.60694533877997), c(0.0, -31.60694533877997)] {
        assert_eq!(root_near(&r3, target, rel_tol(target)).sign, Sign::Negative);
    }
}

#[test]
fn phi_low_end_golden() {
    let base = power_lens(3, 1).unwrap();
    let spec = BifurcationSpec::new(base, 2, c(1e-3, 0.0), Variant::Phi).unwrap();
    let report = solve_all(&phi_t(&spec).unwrap()).unwrap();
    assert_eq!((report.rho, report.beta), (3, 1));
    assert!(report.winding_certified);
    let expect = [
        (c(-1999.999999999875, 0.0), Sign::Negative),
        (c(-1.000125054718779, 0.0), Sign::Positive),
        (c(0.9998750546562702, 0.0), Sign::Positive),
    ];
    for (target, sign) in expect {
        assert_eq!(root_near(&report, target, rel_tol(target)).sign, sign);
    }
}

#[test]
fn rhie_family_goldens() {
    let r = solve_all(&rhie_family(3, 0.01, 0.75).unwrap()).unwrap();
    assert_eq!((r.rho, r.beta), (6, 2));
    assert!(r.winding_certified);
    let expect = [
        (c(1.248555832615, 0.0), Sign::Positive),
        (c(-1.248555832615, 0.0), Sign::Positive),
        (c(0.060069400215, 0.0), Sign::Positive),
        (c(-0.060069400215, 0.0), Sign::Positive),
        (c(0.0, 0.670820393250), Sign::Negative),
        (c(0.0, -0.670820393250), Sign::Negative),
    ];
    for (target, sign) in expect {
        assert_eq!(root_near(&r, target, 1e-9 * (1.0 + target.norm())).sign, sign);
    }
    let j_small = root_near(&r, c(0.060069400215, 0.0), 1e-9).jacobian;
    assert!((j_small - 2.2367e-2).abs() < 1e-5);
    let j_imag = root_near(&r, c(0.0, 0.670820393250), 1e-9).jacobian;
    assert!((j_imag - -4.5787e-1).abs() < 1e-4);

    let r4 = solve_all(&rhie_family(4, 1e-3, 0.65).unwrap()).unwrap();
    assert_eq!(r4.rho, 15);
    assert_eq!(r4.rho, 5 * 4 - 5);
}

#[test]
fn winding_goldens() {
    let unit = Contour::circle(Complex64::ZERO, 1.0);
    let z = MixedPolynomial::monomial(1, 0, c(1.0, 0.0));
    let zb = MixedPolynomial::monomial(0, 1, c(1.0, 0.0));
    assert_eq!(winding_number(&z, &unit).unwrap(), 1);
    assert_eq!(winding_number(&zb, &unit).unwrap(), -1);
    let big = Contour::circle(Complex64::ZERO, 500.0);
    assert_eq!(winding_number(&example_f(), &big).unwrap(), 0);
}

#[test]
fn lens_numerator_golden() {
    let sys = LensSystem {
        masses: vec![c(1.0, 0.0), c(1.0, 0.0)],
        positions: vec![c(1.0, 0.0), c(-1.0, 0.0)],
    };
    let f = lens_numerator(&sys).unwrap();
    let expected = MixedPolynomial::new([
        (2, 1, c(1.0, 0.0)),
        (0, 1, c(-1.0, 0.0)),
        (1, 0, c(-2.0, 0.0)),
    ]);
    assert_eq!(f, expected);
    assert_eq!(classify_polynomial(&f).unwrap().to_string(), "L(3;2,1)");
}

#[test]
fn classify_goldens() {
    assert_eq!(classify_polynomial(&rhie3()).unwrap().class_name, ClassName::L);
    assert_eq!(classify_polynomial(&example_f()).unwrap().class_name, ClassName::Lhs);
    let mixed = MixedPolynomial::new([
        (2, 1, c(1.0, 0.0)),
        (0, 2, c(1.0, 0.0)),
        (0, 0, c(1.0, 0.0)),
    ]);
    assert_eq!(classify_polynomial(&mixed).unwrap().class_name, ClassName::M);
}

#[test]
fn non_isolated_goldens() {
    let circle = MixedPolynomial::new([(1, 1, c(1.0, 0.0)), (0, 0, c(-1.0, 0.0))]);
    let line = MixedPolynomial::new([(0, 1, c(1.0, 0.0)), (1, 0, c(-1.0, 0.0))]);
    assert!(matches!(solve_all(&circle), Err(Error::NonIsolated)));
    assert!(matches!(solve_all(&line), Err(Error::NonIsolated)));
}

#[test]
fn report_json_roundtrip_bit_for_bit() {
    let report = solve_all(&rhie3()).unwrap();
    let text = report.to_json();
    let back = RootReport::from_json(&text).unwrap();
    assert_eq!(back.rho, report.rho);
    assert_eq!(back.beta, report.beta);
    assert_eq!(back.winding_certified, report.winding_certified);
    assert_eq!(back.degenerate_found, report.degenerate_found);
    assert_eq!(back.class, report.class);
    assert_eq!(back.roots.len(), report.roots.len());
    for (a, b) in back.roots.iter().zip(&report.roots) {
        assert_eq!(a.location.re.to_bits(), b.location.re.to_bits());
        assert_eq!(a.location.im.to_bits(), b.location.im.to_bits());
        assert_eq!(a.jacobian.to_bits(), b.jacobian.to_bits());
        assert_eq!(a.residual.to_bits(), b.residual.to_bits());
        assert_eq!(a.sign, b.sign);
    }
}

// ---- CLI goldens through the built binary ----

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lensroots"))
}

#[test]
fn cli_solve_stdout_golden() {
    let out = bin().args(["solve", "rhie3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "rho=10 beta=2 class=L(4;3,1)");

    let out = bin().args(["solve", "example"]).output().unwrap();
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("rho=12 beta=0"));
}

#[test]
fn cli_exit_codes() {
    let dir = std::env::temp_dir();
    let circle = dir.join("lensroots_test_circle.json");
    std::fs::write(
        &circle,
        r#"{"family":"lens","params":{"masses":[[1,0]],"positions":[[0,0]]}}"#,
    )
    .unwrap();
    let out = bin().arg("solve").arg(&circle).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let bad = dir.join("lensroots_test_bad.json");
    std::fs::write(&bad, "not json").unwrap();
    let out = bin().arg("solve").arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(3));

    let dbl = dir.join("lensroots_test_double.json");
    std::fs::write(
        &dbl,
        r#"{"terms":[{"zn":2,"zb":0,"re":1.0,"im":0.0},{"zn":1,"zb":0,"re":-2.0,"im":0.0},{"zn":0,"zb":0,"re":1.0,"im":0.0}]}"#,
    )
    .unwrap();
    let out = bin().arg("solve").arg(&dbl).output().unwrap();
    assert_eq!(out.status.code(), Some(1), "double root must exit 1");
}

#[test]
fn cli_solve_outputs_deterministic() {
    let dir = std::env::temp_dir();
    let j1 = dir.join("lensroots_test_r1.json");
    let j2 = dir.join("lensroots_test_r2.json");
    let c1 = dir.join("lensroots_test_r1.csv");
    for (j, csv) in [(&j1, &c1), (&j2, &c1)] {
        let out = bin()
            .args(["solve", "rhie3", "--json"])
            .arg(j)
            .arg("--csv")
            .arg(csv)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&j1).unwrap(), std::fs::read(&j2).unwrap());
    let csv = std::fs::read_to_string(&c1).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("re,im,sign,jacobian,residual"));
    assert_eq!(lines.count(), 10);
}

#[test]
fn cli_sweep_golden() {
    let dir = std::env::temp_dir();
    let spec = dir.join("lensroots_test_sweep.json");
    let traj = dir.join("lensroots_test_traj.csv");
    std::fs::write(
        &spec,
        r#"{
  "family": {"family": "phi", "params": {"base": {"family": "rhie3"}, "m": 3}},
  "t_values": {"start": 5e-3, "ratio": 0.5, "count": 6}
}"#,
    )
    .unwrap();
    let out = bin().arg("sweep").arg(&spec).arg("--out").arg(&traj).output().unwrap();
    assert_eq!(out.status.code(), Some(0));

    let text = std::fs::read_to_string(&traj).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("row,t,id,re,im,sign,rho,beta,note"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();

    let summaries: Vec<&Vec<&str>> = rows.iter().filter(|r| r[0] == "summary").collect();
    assert_eq!(summaries.len(), 6);
    for s in &summaries {
        assert_eq!((s[6], s[7]), ("12", "0"), "every step keeps rho=12 beta=0");
    }

    // identity tracking: each id keeps one sign for its whole trajectory,
    // and the two far negative roots persist across all six steps
    use std::collections::HashMap;
    let mut sign_by_id: HashMap<&str, &str> = HashMap::new();
    let mut steps_by_id: HashMap<&str, usize> = HashMap::new();
    for r in rows.iter().filter(|r| r[0] == "root") {
        let prev = sign_by_id.insert(r[2], r[5]);
        assert!(prev.is_none() || prev == Some(r[5]), "id {} changed sign", r[2]);
        *steps_by_id.entry(r[2]).or_insert(0) += 1;
    }
    let persistent = steps_by_id.values().filter(|&&n| n == 6).count();
    assert_eq!(persistent, 12, "all twelve trajectories persist over the sweep");

    let errors = rows.iter().filter(|r| r[0] == "error").count();
    assert_eq!(errors, 0);
}

#[test]
fn cli_verify_golden() {
    let out = bin().args(["verify", "paper-goldens"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let xml = String::from_utf8_lossy(&out.stdout);
    assert!(xml.starts_with("<?xml"));
    assert!(xml.contains("<testsuite name=\"paper-goldens\""));
    assert!(xml.contains("failures=\"0\""));

    let out = bin().args(["verify", "no-such-suite"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn cli_plot_axis_lines_golden() {
    let dir = std::env::temp_dir();
    let zp = dir.join("lensroots_test_z.json");
    let svg_path = dir.join("lensroots_test_z.svg");
    std::fs::write(&zp, r#"{"terms":[{"zn":1,"zb":0,"re":1.0,"im":0.0}]}"#).unwrap();
    let out = bin()
        .arg("plot")
        .arg(&zp)
        .args(["--window", "-1,1,-1,1", "--samples", "64", "--out"])
        .arg(&svg_path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));

    let svg = std::fs::read_to_string(&svg_path).unwrap();
    let green = svg.split("stroke=\"green\"").nth(1).unwrap().split("</g>").next().unwrap();
    let red = svg.split("stroke=\"red\"").nth(1).unwrap().split("</g>").next().unwrap();
    // f = z: Re f = 0 is the vertical axis, Im f = 0 the horizontal one;
    // the 2x2 canvas maps both onto the midline at 400.
    for seg in green.lines().filter(|l| l.starts_with("<path")) {
        assert!(seg.contains("M 400.000000") && seg.contains("L 400.000000"), "{seg}");
    }
    assert!(green.lines().any(|l| l.starts_with("<path")));
    for seg in red.lines().filter(|l| l.starts_with("<path")) {
        let ys: Vec<&str> = seg
            .split(|ch| ch == ' ' || ch == '"')
            .filter(|tok| tok.starts_with("400."))
            .collect();
        assert!(ys.len() >= 2, "horizontal segment expected: {seg}");
    }
    assert!(red.lines().any(|l| l.starts_with("<path")));
}
