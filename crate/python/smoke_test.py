"""Quick check that the pyschlicht extension imports and agrees with known values."""

import math

import pyschlicht as ps


def close(a, b, tol=1e-12):
    return abs(a - b) <= tol


f = ps.Series.parse("1,0.375")
g = ps.bernardi(f, 1)
assert g.to_literal() == "1,0.25", g
assert ps.apply("libera", f) == g

k = ps.Series.preset("koebe", order=64)
assert close(k.coeff(5).real, 5.0)
q = k.starlike_quotient()
assert close(q.coeff(3).real, 2.0)

u = ps.Series([1, 0.5, 0.25], lowest_power=0, order=32)
assert max(abs(a - b) for a, b in zip(u.log().exp().coeffs, u.coeffs)) < 1e-12

cubic = ps.Series.preset("poly:3", level=0.6)
report = ps.check(cubic, "sm:0.6")
assert report["verdict"] == "pass", report
assert ps.sm_level(cubic) <= 0.6 + 1e-9

assert close(ps.m_threshold(1), math.sqrt(2) - 1)
assert close(ps.r_bound(0.5), 0.350781, 1e-5)
assert close(ps.valence(ps.Series.preset("koebe"), 0.9), 1.0, 1e-6)

w = ps.build_extremal(0.6)
assert w["m"] == 3 and close(w["z1_modulus"], math.sqrt(26 / 27))

scan = ps.phi_scan(1, 0.41, 201)
assert scan["min_value"] > 0

table = ps.constants(3)
assert len(table["thresholds"]) == 4

try:
    ps.Series.parse("not a series")
except ValueError:
    pass
else:
    raise AssertionError("bad literal accepted")

print("pyschlicht smoke test ok")
