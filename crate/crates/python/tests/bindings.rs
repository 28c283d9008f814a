use dirac_spectra::dirac_spectra;
use pyo3::ffi::c_str;
use pyo3::prelude::*;

#[test]
fn module_round_trip() {
    pyo3::append_to_inittab!(dirac_spectra);
    Python::attach(|py| {
        let code = c_str!(
            r#"
import dirac_spectra as ds
assert ds.su2_spectrum(0.0, nmax=0) == [(0, 0.0, 2)]
g = ds.TestFunction("gaussian")
d = ds.trace_direct_su2(1 / 3, 6.0, g)
a = ds.trace_asymptotic_su2(1 / 3, 6.0, g)
assert abs(d.value - a.value) <= 1e-10 * abs(a.value), (d, a)
geom = ds.ProductGeometry(1.0, 3.0, 0.5, 3.0, s=0.25)
assert geom.s == 0.25 and geom.lam == 3.0
try:
    ds.shifted_trace_asymptotic(geom, g, 1.0)
except ValueError as e:
    assert "gaussian" in str(e)
else:
    raise AssertionError("gaussian accepted by the polyexp-only expansion")
rows = ds.slow_roll(0.5, 2.0, 1.0, 1.0, ds.TestFunction("polyexp:1"), [0.5, 1.0])
assert all(r["status"] == "ok" for r in rows)
"#
        );
        py.run(code, None, None).unwrap();
    });
}
