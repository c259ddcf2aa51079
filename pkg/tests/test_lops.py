import numpy as np
import pytest

from cyclicq import curve as cv
from cyclicq import intertwiners as iw
from cyclicq import lops as lo
from cyclicq.reps import ALL_GENS, BOREL_GENS, intertwiner_residual, omega, phi, pi, rho, rhobar
from cyclicq.tensorcore import kron
from cyclicq.weyl import make_root, make_weyl

from conftest import rel

CC = cv.CouplingConstants()


def test_bracket_identity_is_lphi():
    wp = make_weyl(make_root(3))
    L = lo.bracket(np.eye(2), np.eye(2), wp).matrix
    O = np.zeros((3, 3))
    assert np.allclose(L, lo.assemble([[wp.Zinv / wp.q, O], [O, wp.Z]]))
    assert np.allclose(L, lo.l_phi(wp).matrix)


def test_bracket_oracle_and_linearity():
    wp = make_weyl(make_root(3))
    rng = np.random.default_rng(0)
    A = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    B = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    # blockwise: L_ab = sum_c D1_a A_ac D2_c B_cb D3_b
    D1, D2, D3 = [wp.Xinv, wp.I], [wp.Zinv, wp.Z], [wp.X, wp.I]
    blocks = [[sum(D1[a] @ (A[a, c] * D2[c]) @ (B[c, b] * D3[b]) for c in range(2)) for b in range(2)] for a in range(2)]
    assert np.allclose(lo.bracket(A, B, wp).matrix, lo.assemble(blocks))
    assert np.allclose(lo.bracket(2.5 * A, B, wp).matrix, 2.5 * lo.bracket(A, B, wp).matrix)
    assert np.allclose(lo.split(lo.assemble(blocks), 3)[1][0], blocks[1][0])


def test_u_v_mats(ctx3):
    r = ctx3.points(1)[0]
    z = 0.7 + 0.4j
    U = lo.u_mat(r, z, CC)
    assert abs(np.linalg.det(U) - r.mu * (z * z - r.x * r.y)) < 1e-12
    assert lo.u_mat(r, 0, CC)[0, 0] == 0
    V = lo.v_mat(r, z, CC)
    q = r.q
    assert np.allclose(V, [[-q * z, r.y], [q * r.x * r.mu, -z * r.mu]])


def test_lhom(ctx3):
    wp = ctx3.wp
    r, s = ctx3.points(2, shifts=False)
    z = 0.8 - 0.3j
    pz = pi(z, wp.root)
    c0 = cv.c0(r, s)
    for L, rep, gens in ((lo.l_rho(r, z, CC, wp), rho(r, CC, wp), BOREL_GENS),
                         (lo.l_rhobar(r, z, CC, wp), rhobar(r, CC, wp), BOREL_GENS),
                         (lo.l_phi(wp), phi(c0, wp), BOREL_GENS),
                         (lo.l_omega(r, s, z, CC, wp), omega(r, s, CC, c0, wp), ALL_GENS)):
        assert intertwiner_residual(L.check, (rep, pz), (pz, rep), gens) < 1e-9


def test_r6v():
    root = make_root(3)
    q = root.q
    a, b, c = lo.abc(1.0, root)
    assert np.allclose([a, b, c], [1 - q * q, 0, 1 - q * q])
    a, b, _ = lo.abc(1 / q, root)
    assert abs(a) < 1e-14 and abs(b - q * (1 - q ** -2)) < 1e-14
    z, w = 0.6 + 0.2j, 1.1 - 0.5j
    assert intertwiner_residual(lo.r6v(z / w, root), (pi(z, root), pi(w, root)),
                                (pi(w, root), pi(z, root)), ALL_GENS) < 1e-10


def test_rll_and_ll(ctx3):
    wp = ctx3.wp
    I, I2, N = wp.I, np.eye(2), 3
    r, rp, s, sp = ctx3.points(4)
    z, w = ctx3.spectral(), ctx3.spectral()
    Lc = lambda a, b, zz: lo.l_omega(a, b, zz, CC, wp).check
    R = lo.r6v(z / w, wp.root)
    for mk in (lambda zz: lo.l_rho(r, zz, CC, wp).check, lambda zz: Lc(r, s, zz)):
        lhs = kron(R, I) @ kron(I2, mk(w)) @ kron(mk(z), I2)
        rhs = kron(I2, mk(z)) @ kron(mk(w), I2) @ kron(I, R)
        assert rel(lhs, rhs) < 1e-9
    T = iw.t_map(r, s, wp)
    assert rel(kron(I2, T) @ Lc(r, s, z), Lc(s, r, z) @ kron(T, I2)) < 1e-9
    Rc = iw.r_check(r, rp, s, sp, wp)
    assert rel(kron(I2, Rc) @ lo.fuse(Lc(r, rp, z), Lc(s, sp, z), N),
               lo.fuse(Lc(s, sp, z), Lc(r, rp, z), N) @ kron(Rc, I2)) < 1e-9


def test_factorization_abc(ctx3):
    wp = ctx3.wp
    I2, N = np.eye(2), 3
    O = iw.o_poly(wp).matrix()
    rng = np.random.default_rng(7)
    A, B, C = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(3))
    br = lambda a, b: lo.bracket(a, b, wp).check
    assert rel(kron(I2, O) @ lo.fuse(br(A, B), br(I2, C), N), lo.fuse(br(A, I2), br(B, C), N) @ kron(O, I2)) < 1e-9


def test_bold_l(ctx3):
    wp = ctx3.wp
    s, sp = ctx3.points(2)
    z = 0.9 + 0.1j
    Lb = lo.l_bold(s, sp, z, CC, wp)
    Lo = lo.l_omega(s, sp, z, CC, wp).check
    n = lo.bold_norm(s, sp, z, CC)
    assert rel(Lb @ Lo, n * np.eye(6)) < 1e-9
    assert rel(Lo @ Lb, n * np.eye(6)) < 1e-9
    o = omega(s, sp, CC, cv.c0(s, sp), wp)
    assert intertwiner_residual(Lb, (pi(z, wp.root), o), (o, pi(z, wp.root)), ALL_GENS) < 1e-9


def test_gauge_transformation(ctx3):
    wp = ctx3.wp
    s = ctx3.points(1)[0]
    w = 1.3 - 0.2j
    for fam, Lf, Ls, g in (("rho", lo.l_rho, lo.l_std, lo.gauge_aleph),
                           ("rhobar", lo.l_rhobar, lo.l_bar_std, lo.gauge_beth)):
        G = lo.gauge_lift(g(s, CC), 3)
        zs = lo.gauge_z(s, CC, fam)
        assert rel(Lf(s, w, CC, wp).matrix, w * G @ Ls(zs / w, s.mu, wp).matrix @ np.linalg.inv(G)) < 1e-10
    with pytest.raises(ValueError):
        lo.gauge_z(s, CC, "nope")


def test_printed_vstd_has_no_gauge(ctx3):
    # without the q in the lower-left entry the gauge relation for rhobar fails
    wp = ctx3.wp
    s = ctx3.points(1)[0]
    w = 1.1
    G = lo.gauge_lift(lo.gauge_beth(s, CC), 3)
    zs = lo.gauge_z(s, CC, "rhobar")
    printed = w * G @ lo.l_bar_std(zs / w, s.mu, wp, printed=True).matrix @ np.linalg.inv(G)
    assert rel(lo.l_rhobar(s, w, CC, wp).matrix, printed) > 0.1


def test_std_l_simple_cases():
    wp = make_weyl(make_root(3))
    mu = 0.6 + 0.2j
    b = lo.l_std(0.0, mu, wp).blocks
    assert not b[0][1].any() and not b[1][0].any()
    z = 0.3
    assert abs(np.linalg.det(lo.u_std(z, mu)) - mu * (1 - z * z)) < 1e-14
