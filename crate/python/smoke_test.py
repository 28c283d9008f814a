"""Smoke test for the dirac_spectra extension module.

Build and install first:  maturin develop -m crates/python/Cargo.toml
(or pip install a wheel from `maturin build`), then run this script.
"""

import math

import dirac_spectra as ds


def close(a, b, rel=1e-10):
    return abs(a - b) <= rel * max(abs(a), abs(b))


def main():
    assert ds.connection_factor(0.5) == -0.25
    assert ds.su2_spectrum(0.0, nmax=0) == [(0, 0.0, 2)]
    assert len(ds.su2_spectrum(0.5, nmax=3)) == 7
    assert all(line[2] > 0 for line in ds.su3_lines(0.5, 1, 1))

    g = ds.TestFunction.gaussian()
    assert g.kind == "gaussian" and math.isclose(g(1.0), math.exp(-1.0))
    d = ds.trace_direct_su2(0.5, 8.0, g)
    a = ds.trace_asymptotic_su2(0.5, 8.0, g)
    assert d.method == "direct" and close(d.value, a.value), (d, a)

    geom = ds.ProductGeometry(a=1.0, beta=2.0, t=1 / 3, lam=4.0)
    d = ds.product_trace_direct(geom, g)
    a = ds.product_trace_asymptotic(geom, g)
    assert close(d.value, a.value), (d, a)

    h = ds.TestFunction("polyexp:1,0.5")
    d = ds.shifted_trace_direct(geom, h, 2.0)
    a = ds.shifted_trace_asymptotic(geom, h, 2.0)
    assert close(d.value, a.value), (d, a)
    assert abs(ds.potential_v(ds.TestFunction.poly_exp([1.0]), 1.0) + 0.0969427) < 1e-6

    p = ds.plateau_expansion(ds.ProductGeometry(1.0, 1.0, 0.5, 32.0), ds.TestFunction.plateau(1.0, 0.5), 10.0)
    assert p["rederived_rel_diff"] < 1e-4 < p["verbatim_rel_diff"], p

    rows = ds.slow_roll(0.5, 2.0, 1.0, 1.0, ds.TestFunction("polyexp:1"), [0.0, 0.5, 1.0])
    assert [r["status"] for r in rows] == ["singular", "ok", "ok"]
    assert rows[0]["epsilon"] is None and rows[1]["epsilon"] > 0

    checks = ds.verify(mmax=4)
    assert checks and all(passed for *_, passed in checks), checks

    for bad in (lambda: ds.TestFunction("nonsense"), lambda: ds.ProductGeometry(-1.0, 1.0, 0.5, 4.0)):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
