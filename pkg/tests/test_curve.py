import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclicq import curve as cv
from cyclicq.weyl import make_root

ROOT3 = make_root(3)


def test_lift_validate_many():
    rng = np.random.default_rng(0)
    for _ in range(100):
        mod = cv.random_modulus(rng)
        p = cv.random_point(rng, mod, ROOT3)
        assert cv.validate(p).curve < 1e-12 and cv.validate(p).mu < 1e-12


def test_perturbation_fails():
    rng = np.random.default_rng(1)
    p = cv.random_point(rng, cv.random_modulus(rng), ROOT3)
    bad = cv.CurvePoint(p.x, p.y, 1.01 * p.mu, p.modulus, p.root)
    assert not cv.validate(bad)


def test_symmetric_point_first_equation():
    x = 0.7 + 0.2j
    k = 2 * x ** 3 / (1 + x ** 6)
    mod = cv.make_modulus(k)
    p = cv.CurvePoint(x, x, 1.0, mod, ROOT3)
    assert cv.validate(p).curve < 1e-12


def test_branches():
    mod = cv.make_modulus(0.4 + 0.1j)
    a = cv.lift_x(mod, 1.1, ROOT3, branch_y=1)
    b = cv.lift_x(mod, 1.1, ROOT3, branch_y=4)
    assert abs(a.y - b.y) < 1e-14
    mus = [cv.lift_x(mod, 1.1, ROOT3, branch_mu=j).mu for j in range(3)]
    assert min(abs(mus[i] - mus[j]) for i in range(3) for j in range(i)) > 0.1
    assert all(cv.validate(cv.lift_x(mod, 1.1, ROOT3, branch_mu=j)) for j in range(3))


def test_shift():
    rng = np.random.default_rng(2)
    p = cv.random_point(rng, cv.random_modulus(rng), make_root(5))
    s = p
    for _ in range(5):
        s = cv.shift(s, 1)
    assert abs(s.x - p.x) < 1e-12 and abs(s.mu - p.mu) < 1e-12
    back = cv.shift(cv.shift(p, 1), -1)
    assert abs(back.y - p.y) < 1e-14
    assert cv.validate(cv.shift(p, 1))


def test_c0():
    rng = np.random.default_rng(3)
    mod = cv.random_modulus(rng)
    r, s = cv.random_point(rng, mod, ROOT3), cv.random_point(rng, mod, ROOT3)
    q = ROOT3.q
    for sg in (1, -1):
        c = cv.c0(r, s, sg)
        assert abs(c * c - q * q * r.x * s.x / (r.y * s.y)) < 1e-12 * abs(c) ** 2
    assert abs(cv.c0(r, s, 1) + cv.c0(r, s, -1)) < 1e-14
    # symmetric point x = y
    x = 0.9
    p = cv.CurvePoint(x, x, 1.0, cv.make_modulus(2 * x ** 3 / (1 + x ** 6)), ROOT3)
    assert abs(cv.c0(p, p) ** 2 - q * q) < 1e-14
    # invariance under s -> s q
    assert abs(cv.c0(r, cv.shift(s, 1)) - cv.c0(r, s)) < 1e-14


def test_z_point():
    rng = np.random.default_rng(4)
    s = cv.random_point(rng, cv.random_modulus(rng), ROOT3)
    cc = cv.CouplingConstants(1.3, 0.7j)
    z = cv.z_point(s, cc)
    assert abs(z * z - cc.kappa0 * cc.kappa1 * s.x * s.y) < 1e-12
    p = cv.CurvePoint(2.0, 0.5, 1.0, cv.make_modulus(0.3), ROOT3)
    assert abs(abs(cv.z_point(p, cv.CouplingConstants())) - 1) < 1e-14


def test_ses_constants():
    q = ROOT3.q
    mu = 0.4 + 0.3j
    s = cv.CurvePoint(1.0, 1.0, mu, cv.make_modulus(0.3), ROOT3)
    c, cb, d = cv.ses_constants(s, cv.CouplingConstants(), 1.0)
    assert abs(c + mu * q * q) < 1e-14
    assert abs(cb / d - q * q) < 1e-14
    with pytest.raises(ValueError):
        cv.ses_constants(s, cv.CouplingConstants(), 2.0)


def test_json_roundtrip():
    rng = np.random.default_rng(5)
    p = cv.random_point(rng, cv.random_modulus(rng), make_root(5, 2))
    d = json.loads(json.dumps(p.to_dict()))
    p2 = cv.CurvePoint.from_dict(d)
    assert (p2.x, p2.y, p2.mu, p2.N, p2.root.m) == (p.x, p.y, p.mu, 5, 2)


def test_errors():
    with pytest.raises(ValueError):
        cv.make_modulus(0.0)
    with pytest.raises(cv.DegeneratePointError):
        cv.CurvePoint(0.0, 1.0, 1.0, cv.make_modulus(0.3), ROOT3)
    rng = np.random.default_rng(6)
    with pytest.raises(cv.ExhaustedDrawsError):
        cv.random_points(rng, cv.make_modulus(0.3), ROOT3, 2, accept=lambda *p: False)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.2, 0.8), st.floats(0, 6.28), st.floats(0.5, 2.0), st.floats(0, 6.28),
       st.sampled_from([3, 5, 7]))
def test_lift_always_on_curve(kr, kt, xr, xt, N):
    mod = cv.make_modulus(kr * np.exp(1j * kt))
    try:
        p = cv.lift_x(mod, xr * np.exp(1j * xt), make_root(N))
    except cv.DegeneratePointError:
        return
    res = cv.validate(p)
    assert res.curve < 1e-10 and res.mu < 1e-10
