"""Smoke test for the lensroots_py extension module.

Build the module first:

    cargo build -p lensroots-py

The script copies the cdylib next to a temp dir under the import name
Python expects, so no maturin install is needed.
"""

import json
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load_module():
    for profile in ("debug", "release"):
        built = ROOT / "target" / profile / "liblensroots_py.so"
        if built.exists():
            break
    else:
        sys.exit("liblensroots_py.so not found; run: cargo build -p lensroots-py")
    tmp = tempfile.mkdtemp(prefix="lensroots_py.")
    shutil.copy2(built, pathlib.Path(tmp) / "lensroots_py.so")
    sys.path.insert(0, tmp)
    import lensroots_py

    return lensroots_py


def main():
    lr = load_module()

    l3 = lr.rhie3()
    report = lr.solve_all(l3)
    assert report.rho == 10, report.rho
    assert report.beta == 2, report.beta
    assert report.class_tag == "L(4;3,1)", report.class_tag
    assert report.winding_certified
    assert not report.degenerate_found
    assert len(report.roots) == 10
    signs = sorted(r.sign for r in report.roots)
    assert signs.count("+") == 6 and signs.count("-") == 4, signs
    for r in report.roots:
        assert abs(l3.evaluate(r.location)) < 1e-9, r.location
        assert r.residual < 1e-9

    parsed = json.loads(report.to_json())
    assert parsed["rho"] == 10 and parsed["beta"] == 2

    ex = lr.example()
    assert ex.classify() == "Lhs(6;3,3)", ex.classify()
    assert lr.winding_number(ex, 0j, 500.0) == 0
    ex_report = lr.solve_all(ex)
    assert ex_report.rho == 12 and ex_report.beta == 0

    deformed = lr.phi(l3, 3, 3e-5)
    phi_report = lr.solve_all(deformed)
    assert phi_report.rho == 12, phi_report.rho
    far = [r for r in phi_report.roots if abs(r.location) > 50]
    assert len(far) == 2 and all(r.sign == "-" for r in far)
    predicted = lr.predict_infinity_roots(0.03 + 0j, 3, 3e-5 + 0j)
    assert len(predicted) == 2
    for p in predicted:
        assert min(abs(p - r.location) for r in far) / abs(p) < 1e-3

    default_t = lr.phi(l3, 2)
    assert lr.solve_all(default_t).rho == 11

    psi_report = lr.solve_all(lr.psi(l3, 2, 1e-3))
    assert psi_report.rho == 11, psi_report.rho

    pl = lr.power_lens(3, 1)
    pl_report = lr.solve_all(pl)
    assert pl_report.rho == 2 and pl_report.beta == 2, pl_report

    two = lr.lens_numerator([1 + 0j, 1 + 0j], [1 + 0j, -1 + 0j])
    assert two.classify() == "L(3;2,1)", two.classify()
    assert lr.solve_all(lr.rhie_family(3, 0.01, 0.75)).rho == 6

    poly = lr.MixedPolynomial([(2, 1, 1 + 0j), (0, 0, -1 + 0j)])
    assert poly.degrees() == (2, 1, 3)
    again = lr.MixedPolynomial.from_json(poly.to_json())
    assert again.terms() == poly.terms()
    assert again.evaluate(0.5 + 0.25j) == poly.evaluate(0.5 + 0.25j)

    svg = lr.render_svg(l3, (-1.5, 1.5, -1.5, 1.5), 200, report)
    assert svg.startswith("<svg") and svg.count("<circle") == 10

    try:
        lr.solve_all(lr.MixedPolynomial([(1, 1, 1 + 0j), (0, 0, -1 + 0j)]))
    except ValueError as e:
        assert "non-isolated" in str(e), e
    else:
        sys.exit("expected ValueError for a non-isolated zero set")

    print("ok")


if __name__ == "__main__":
    main()
