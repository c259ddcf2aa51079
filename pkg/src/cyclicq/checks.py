"""Numerical certification suites. Each check yields a report entry

    {check_id, anchor, params, residual, tolerance, pass, asserted}

``asserted=False`` marks quantities that are reported but never fail a run.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from . import curve as cv
from . import intertwiners as iw
from . import lops as lo
from . import transfer as tr
from . import weights as wt
from .config import Config
from .reps import ALL_GENS, BOREL_GENS, intertwiner_residual, omega, phi, pi, rho, rhobar, tensor
from .tensorcore import kron, numerical_rank
from .weyl import make_root, make_weyl, trace_table, weyl_residuals

DENOM_FLOOR = 1e-6
SPECTRAL_MARGIN = 1e-4


def _c(v):
    v = complex(v)
    return [v.real, v.imag]


@dataclass
class Ctx:
    cfg: Config
    rng: np.random.Generator

    def __post_init__(self):
        c = self.cfg
        self.root = make_root(c.N, c.m)
        self.wp = make_weyl(self.root)
        self.cc = cv.CouplingConstants(complex(*c.kappa0), complex(*c.kappa1))
        self.mod = cv.make_modulus(complex(*c.k)) if c.k is not None else cv.random_modulus(self.rng)
        self.c0_sign = -1 if c.flip_c0 else 1
        self.zs_sign = -1 if c.flip_zs else 1
        self.entries: List[dict] = []

    # -- recording ----------------------------------------------------------
    def record(self, check_id, anchor, residual, tol, params=None, mode="le", asserted=True):
        residual = float(residual)
        ok = residual <= tol if mode == "le" else residual > tol
        self.entries.append({
            "check_id": check_id, "anchor": anchor, "params": params or {},
            "residual": residual, "tolerance": float(tol), "comparison": mode,
            "pass": bool(ok and np.isfinite(residual)), "asserted": asserted,
        })
        return ok

    # -- sampling -------------------------------------------------------------
    def points(self, count: int, shifts: bool = True) -> list:
        """Generic points: every weight recursion among them (and their q-shifts) stays away from its poles."""
        def accept(*pts):
            # a point and its own q-shifts always sit on a pole, so only distinct bases are paired
            fam = [[p] + ([cv.shift(p, 1), cv.shift(p, -1)] if shifts else []) for p in pts]
            for i, fa in enumerate(fam):
                for j, fb in enumerate(fam):
                    if i == j:
                        continue
                    for a in fa:
                        for b in fb:
                            if wt.min_denominator(a, b) < DENOM_FLOOR:
                                return False
                            try:
                                wt.w_bar(a, b)
                            except cv.DegeneratePointError:
                                return False
            return True
        return cv.random_points(self.rng, self.mod, self.root, count, accept)

    def spectral(self, *zs) -> complex:
        """A spectral parameter w with a, b of every z/w bounded away from zero."""
        for _ in range(100):
            w = self.rng.uniform(0.5, 1.5) * np.exp(1j * self.rng.uniform(0, 2 * np.pi))
            ok = True
            for z in zs:
                a, b, _ = lo.abc(z / w, self.root)
                if abs(a) < SPECTRAL_MARGIN or abs(b) < SPECTRAL_MARGIN:
                    ok = False
            if ok:
                return complex(w)
        raise cv.ExhaustedDrawsError("no generic spectral parameter after 100 tries")


def _rel(a, b) -> float:
    scale = max(np.linalg.norm(a), np.linalg.norm(b))
    return float(np.linalg.norm(a - b) / scale) if scale else 0.0


def _pp(**pts) -> dict:
    return {k: (v.to_dict() if isinstance(v, cv.CurvePoint) else _c(v)) for k, v in pts.items()}


# ---------------------------------------------------------------------------
def suite_weyl(ctx: Ctx, orders=None):
    orders = orders or [ctx.cfg.N]
    for N in orders:
        wp = make_weyl(make_root(N, ctx.cfg.m if np.gcd(ctx.cfg.m, N) == 1 else 1))
        res = weyl_residuals(wp)
        ctx.record(f"weyl/relations/N{N}", "Weyl pair relations", max(res.values()), 1e-11, {"N": N})
        tab = trace_table(wp)
        expect = np.zeros((N, N))
        expect[0, 0] = N
        ctx.record(f"weyl/trace-table/N{N}", "traces of X^n Z^m", np.abs(tab - expect).max(), 1e-11, {"N": N})
        a = ctx.cfg.alpha
        worst = 0.0
        for m in range(N):
            s = sum(wp.root.qpow((2 * a + m) * p) for p in range(N))
            # q^{(2a+m)p} on the lifted branch equals exp((2a+m) p log q)
            closed = (1 - wp.root.qpow(2 * a * N)) / (1 - wp.root.qpow(2 * a + m))
            worst = max(worst, abs(s - closed) / abs(closed))
        ctx.record(f"weyl/geometric-sum/N{N}", "twisted geometric sum", worst, 1e-10, {"N": N, "alpha": a})


def suite_curve(ctx: Ctx):
    worst = 0.0
    for _ in range(max(ctx.cfg.draws, 10)):
        p = cv.random_point(ctx.rng, ctx.mod, ctx.root)
        r = cv.validate(p)
        worst = max(worst, r.curve, r.mu)
        for e in (1, -1):
            rs = cv.validate(cv.shift(p, e))
            worst = max(worst, rs.curve, rs.mu)
    ctx.record("curve/lift-validate", "curve equations", worst, 1e-10)
    p = cv.random_point(ctx.rng, ctx.mod, ctx.root)
    bad = cv.CurvePoint(p.x, p.y, p.mu * 1.01, p.modulus, p.root)
    ctx.record("curve/perturbed-rejected", "curve equations", cv.validate(bad).mu, 1e-10, _pp(p=p), mode="gt")
    r, s = ctx.points(2, shifts=False)
    c0 = cv.c0(r, s, ctx.c0_sign)
    ctx.record("curve/c0-square", "c0 squared", abs(c0 * c0 - ctx.root.q ** 2 * r.x * s.x / (r.y * s.y)) / abs(c0) ** 2,
               1e-12, _pp(r=r, s=s))
    zs = cv.z_point(s, ctx.cc, ctx.zs_sign)
    cs, cbs, ds = cv.ses_constants(s, ctx.cc, zs)
    ctx.record("curve/ses-constant-ratio", "SES constants", abs(cbs / ds - ctx.root.q ** 2), 1e-12, _pp(s=s))


def suite_weights(ctx: Ctx, pairs: Optional[int] = None):
    n = pairs or max(ctx.cfg.draws, 10)
    worst = {"recursion": 0.0, "fourier-ratio": 0.0, "closure": 0.0, "normalization": 0.0, "dft-roundtrip": 0.0}
    for _ in range(n):
        r, s = ctx.points(2, shifts=False)
        wh, wb = wt.w_hat(r, s), wt.w_bar(r, s)
        W, Wc = wt.fourier(wh, -1), wt.fourier(wb, 1)
        worst["recursion"] = max(worst["recursion"], wt.ratio_residual(wh), wt.ratio_residual(wb))
        worst["fourier-ratio"] = max(worst["fourier-ratio"], wt.ratio_residual(W), wt.ratio_residual(Wc))
        worst["closure"] = max(worst["closure"], *(abs(wt.closure(t) - 1) for t in (wh, wb, W, Wc)))
        worst["normalization"] = max(worst["normalization"], abs(wh[0] - 1), abs(Wc[0] - 1), abs(wb.values.sum() - 1))
        back = wt.fourier(W, 1).values / ctx.root.N
        worst["dft-roundtrip"] = max(worst["dft-roundtrip"], float(np.abs(back - wh.values).max() / np.abs(wh.values).max()))
    anchors = {"recursion": "weight recursions", "fourier-ratio": "Fourier-transformed weight recursions",
               "closure": "cyclic closure of the weights", "normalization": "weight normalization",
               "dft-roundtrip": "discrete Fourier inversion"}
    for key, v in worst.items():
        ctx.record(f"weights/{key}/N{ctx.root.N}", anchors[key], v, ctx.cfg.tol_rel, {"pairs": n})


# ---------------------------------------------------------------------------
def check_rfact(ctx: Ctx, draws: int):
    wp, cc, sg = ctx.wp, ctx.cc, ctx.c0_sign
    worst = {"rfact": 0.0, "rab": 0.0, "t": 0.0, "s": 0.0, "bcheck": 0.0, "trs": 0.0, "srs": 0.0, "invert": np.inf}
    last = {}
    for _ in range(draws):
        r, rp, s, sp = ctx.points(4, shifts=False)
        om = lambda a, b: omega(a, b, cc, cv.c0(a, b, sg), wp)
        R = iw.r_check(r, rp, s, sp, wp)
        worst["rfact"] = max(worst["rfact"], intertwiner_residual(R, (om(r, rp), om(s, sp)), (om(s, sp), om(r, rp)), ALL_GENS))
        Ab = iw.a_check(r, s, sp, wp) @ iw.b_check(rp, s, sp, wp)
        worst["rab"] = max(worst["rab"], _rel(R, Ab))
        worst["t"] = max(worst["t"], intertwiner_residual(iw.t_map(r, s, wp), om(r, s), om(s, r), ALL_GENS))
        worst["s"] = max(worst["s"], intertwiner_residual(iw.s_map(rp, s, wp), (om(r, rp), om(s, sp)), (om(r, s), om(rp, sp)), ALL_GENS))
        worst["bcheck"] = max(worst["bcheck"], intertwiner_residual(iw.b_check(rp, s, sp, wp), (om(r, rp), om(s, sp)), (om(r, s), om(sp, rp)), ALL_GENS))
        worst["trs"] = max(worst["trs"], iw.trs_residual(r, s, wp))
        worst["srs"] = max(worst["srs"], iw.srs_residual(r, s, wp))
        sv = np.linalg.svd(R, compute_uv=False)
        worst["invert"] = min(worst["invert"], sv[-1] / sv[0])
        last = _pp(r=r, rp=rp, s=s, sp=sp)
    N, tol = ctx.root.N, ctx.cfg.tol_rel
    ctx.record(f"intertwiners/rfact/N{N}", "R-matrix factorization into S and T", worst["rfact"], tol, {"draws": draws, "last": last})
    ctx.record(f"intertwiners/rab/N{N}", "R as A after B", worst["rab"], tol, {"draws": draws})
    ctx.record(f"intertwiners/t-map/N{N}", "T intertwiner", worst["t"], tol, {"draws": draws})
    ctx.record(f"intertwiners/s-map/N{N}", "S intertwiner", worst["s"], tol, {"draws": draws})
    ctx.record(f"intertwiners/b-check/N{N}", "B intertwiner", worst["bcheck"], tol, {"draws": draws})
    ctx.record(f"intertwiners/trs-condition/N{N}", "T commutation condition", worst["trs"], tol, {"draws": draws})
    ctx.record(f"intertwiners/srs-condition/N{N}", "S commutation condition", worst["srs"], tol, {"draws": draws})
    ctx.record(f"intertwiners/r-invertible/N{N}", "R invertibility", worst["invert"], 1e-8, {"draws": draws}, mode="gt")


def check_factor(ctx: Ctx, draws: int):
    wp, cc, q, N = ctx.wp, ctx.cc, ctx.root.q, ctx.root.N
    o = iw.o_poly(wp)
    O = o.matrix()
    worst = {1: 0.0, -1: 0.0}
    for _ in range(draws):
        r, s = ctx.points(2, shifts=False)
        for sg in (1, -1):
            c0 = cv.c0(r, s, sg)
            res = intertwiner_residual(O, (omega(r, s, cc, c0, wp), phi(c0, wp)), (rho(r, cc, wp), rhobar(s, cc, wp)))
            worst[sg] = max(worst[sg], res)
    for sg in (1, -1):
        ctx.record(f"intertwiners/factor/c0{'+' if sg > 0 else '-'}/N{N}", "O(chi) factorization of Omega (x) phi",
                   worst[sg], ctx.cfg.tol_rel, {"draws": draws, "c0_sign": sg})
    oi = iw.o_inverse(o)
    ctx.record(f"intertwiners/o-inverse/N{N}", "inverse of O(chi)", _rel(O @ oi.matrix(), np.eye(N * N)), 1e-10)
    ctx.record(f"intertwiners/o-inverse-two-routes/N{N}", "inverse of O(chi)",
               float(np.abs(oi.coeffs - iw.o_inverse_direct(o).coeffs).max()), 1e-11)
    ls = (1 + 1j ** N) / (1 + 1j) * np.sqrt(N)
    if ctx.root.m == 1:
        ctx.record(f"intertwiners/landsberg-schaar/N{N}", "Gauss sum value of O(1)", abs(o.at_scalar(1.0) - ls), 1e-12)
    ctx.record(f"intertwiners/o-eigen-floor/N{N}", "nonvanishing of O(q^j)", float(np.abs(o.eigenvalues()).min()), 0.5, mode="gt")
    ctx.record(f"intertwiners/o-functional/N{N}", "functional equation of O", iw.o_functional_residual(o), 1e-11)
    p = iw.p_poly(wp)
    ctx.record(f"intertwiners/p-functional/N{N}", "functional equation of P", iw.p_functional_residual(p), 1e-11)
    pi_ = iw.o_inverse(p)
    ctx.record(f"intertwiners/p-inverse/N{N}", "inverse of P(Z)", _rel(p.matrix() @ pi_.matrix(), np.eye(N)), 1e-10)


def check_stalt(ctx: Ctx, draws: int):
    wp, cc, N = ctx.wp, ctx.cc, ctx.root.N
    wt_, ws_ = 0.0, 0.0
    for _ in range(draws):
        r, s = ctx.points(2, shifts=False)
        wt_ = max(wt_, intertwiner_residual(iw.frak_t(r, s, wp), (rho(r, cc, wp), rhobar(s, cc, wp)), (rho(s, cc, wp), rhobar(r, cc, wp))))
        ws_ = max(ws_, intertwiner_residual(iw.cal_s(r, s, wp), (rhobar(r, cc, wp), rho(s, cc, wp)), (rhobar(s, cc, wp), rho(r, cc, wp))))
    ctx.record(f"intertwiners/frak-t/N{N}", "alternative T intertwiner", wt_, ctx.cfg.tol_rel, {"draws": draws})
    ctx.record(f"intertwiners/cal-s/N{N}", "alternative S intertwiner", ws_, ctx.cfg.tol_rel, {"draws": draws})


def check_ses(ctx: Ctx, draws: int):
    wp, cc, N, sg = ctx.wp, ctx.cc, ctx.root.N, ctx.c0_sign
    worst = {"int": 0.0, "comp": 0.0, "rank": 0, "neg": np.inf}
    for _ in range(draws):
        r, s = ctx.points(2)
        zs = cv.z_point(s, cc, ctx.zs_sign)
        m = iw.ses_maps(s, cc, zs, wp)
        sq, sqi = cv.shift(s, 1), cv.shift(s, -1)
        om = lambda a, b: omega(a, b, cc, cv.c0(a, b, sg), wp)
        seqs = [
            (m.iota, m.tau, rho(s, cc, wp), rho(sq, cc, wp), rho(sqi, cc, wp)),
            (m.iota_bar, m.tau_bar, rhobar(s, cc, wp), rhobar(sq, cc, wp), rhobar(sqi, cc, wp)),
            (m.I_bar, m.T_bar, om(r, s), om(r, sq), om(r, sqi)),
        ]
        for inj, sur, mid, sub, quo in seqs:
            middle = (mid, pi(zs, ctx.root))
            worst["int"] = max(worst["int"], intertwiner_residual(inj, sub, middle), intertwiner_residual(sur, middle, quo))
            worst["comp"] = max(worst["comp"], float(np.linalg.norm(sur @ inj)))
            ok_rank = numerical_rank(inj) == N and numerical_rank(sur) == N
            worst["rank"] = max(worst["rank"], 0 if ok_rank else 1)
        middle = (om(r, s), pi(zs, ctx.root))
        neg = min(intertwiner_residual(m.I_bar, om(r, sq), middle, ("f0", "f1")),
                  intertwiner_residual(m.T_bar, middle, om(r, sqi), ("f0", "f1")))
        worst["neg"] = min(worst["neg"], neg)
    ctx.record(f"intertwiners/ses-intertwining/N{N}", "short exact sequences", worst["int"], ctx.cfg.tol_rel, {"draws": draws})
    ctx.record(f"intertwiners/ses-composition/N{N}", "short exact sequences", worst["comp"], 1e-12, {"draws": draws})
    ctx.record(f"intertwiners/ses-ranks/N{N}", "short exact sequences", worst["rank"], 0.5, {"draws": draws})
    ctx.record(f"intertwiners/ses-not-full-intertwiners/N{N}", "Ibar and Tbar fail on f-generators",
               worst["neg"], 0.1, {"draws": draws}, mode="gt")


def check_rho_not_restriction(ctx: Ctx):
    r, s = ctx.points(2, shifts=False)
    om = omega(r, s, ctx.cc, cv.c0(r, s, ctx.c0_sign), ctx.wp)
    rh = rho(r, ctx.cc, ctx.wp)
    res = max(_rel(om.act(g), rh.act(g)) for g in BOREL_GENS)
    ctx.record(f"reps/rho-not-omega-restriction/N{ctx.root.N}", "rho is not a restriction", res, 0.1, _pp(r=r, s=s), mode="gt")


def suite_intertwiners(ctx: Ctx, draws: Optional[int] = None):
    d = draws or ctx.cfg.draws
    check_rfact(ctx, d)
    check_factor(ctx, d)
    check_stalt(ctx, d)
    check_ses(ctx, d)
    check_rho_not_restriction(ctx)


# ---------------------------------------------------------------------------
def suite_lops(ctx: Ctx, draws: Optional[int] = None):
    wp, cc, root, N, q = ctx.wp, ctx.cc, ctx.root, ctx.root.N, ctx.root.q
    d = draws or ctx.cfg.draws
    I, I2 = wp.I, np.eye(2)
    w6 = {k: 0.0 for k in ("lhom", "lhom-op", "lphi", "r6v", "ll1", "ll2", "ll3", "rll", "lprop", "abc",
                            "lfusion", "vfusion", "bold-norm", "bold-int", "gtrans", "gtrans-printed")}
    for _ in range(d):
        r, rp, s, sp = ctx.points(4)
        z = ctx.spectral()
        w = ctx.spectral(z)
        sg = ctx.c0_sign
        om = lambda a, b: omega(a, b, cc, cv.c0(a, b, sg), wp)
        pz = pi(z, root)
        # homomorphism property of each L
        for L, rep, gens in ((lo.l_rho(r, z, cc, wp), rho(r, cc, wp), BOREL_GENS),
                             (lo.l_rhobar(r, z, cc, wp), rhobar(r, cc, wp), BOREL_GENS),
                             (lo.l_phi(wp), phi(cv.c0(r, s, sg), wp), BOREL_GENS),
                             (lo.l_omega(r, s, z, cc, wp), om(r, s), ALL_GENS)):
            w6["lhom"] = max(w6["lhom"], intertwiner_residual(L.check, (rep, pz), (pz, rep), gens))
            w6["lhom-op"] = max(w6["lhom-op"], intertwiner_residual(L.matrix, (rep, pz), tensor(rep, pz, op=True), gens))
        Lphi = lo.l_phi(wp).matrix
        w6["lphi"] = max(w6["lphi"], _rel(Lphi, lo.assemble([[wp.Zinv / q, 0 * I], [0 * I, wp.Z]])))
        w6["r6v"] = max(w6["r6v"], intertwiner_residual(lo.r6v(z / w, root), (pz, pi(w, root)), (pi(w, root), pz), ALL_GENS))
        # LL properties
        Lc = lambda a, b, zz: lo.l_omega(a, b, zz, cc, wp).check
        T = iw.t_map(r, s, wp)
        w6["ll1"] = max(w6["ll1"], _rel(kron(I2, T) @ Lc(r, s, z), Lc(s, r, z) @ kron(T, I2)))
        S = iw.s_map(rp, s, wp)
        w6["ll2"] = max(w6["ll2"], _rel(kron(I2, S) @ lo.fuse(Lc(r, rp, z), Lc(s, sp, z), N),
                                        lo.fuse(Lc(r, s, z), Lc(rp, sp, z), N) @ kron(S, I2)))
        R = iw.r_check(r, rp, s, sp, wp)
        w6["ll3"] = max(w6["ll3"], _rel(kron(I2, R) @ lo.fuse(Lc(r, rp, z), Lc(s, sp, z), N),
                                        lo.fuse(Lc(s, sp, z), Lc(r, rp, z), N) @ kron(R, I2)))
        # RLL for rho, rhobar, Omega
        for mk in (lambda zz: lo.l_rho(r, zz, cc, wp).check, lambda zz: lo.l_rhobar(r, zz, cc, wp).check,
                   lambda zz: Lc(r, s, zz)):
            lhs = kron(lo.r6v(z / w, root), I) @ kron(I2, mk(w)) @ kron(mk(z), I2)
            rhs = kron(I2, mk(z)) @ kron(mk(w), I2) @ kron(I, lo.r6v(z / w, root))
            w6["rll"] = max(w6["rll"], _rel(lhs, rhs))
        # factorization of L
        O = iw.o_poly(wp).matrix()
        w6["lprop"] = max(w6["lprop"], _rel(kron(I2, O) @ lo.fuse(Lc(r, s, z), lo.l_phi(wp).check, N),
                                            lo.fuse(lo.l_rho(r, z, cc, wp).check, lo.l_rhobar(s, z, cc, wp).check, N) @ kron(O, I2)))
        A_, B_, C_ = (ctx.rng.normal(size=(2, 2)) + 1j * ctx.rng.normal(size=(2, 2)) for _ in range(3))
        br = lambda a, b: lo.bracket(a, b, wp).check
        w6["abc"] = max(w6["abc"], _rel(kron(I2, O) @ lo.fuse(br(A_, B_), br(I2, C_), N),
                                        lo.fuse(br(A_, I2), br(B_, C_), N) @ kron(O, I2)))
        # fusion of L
        zs = cv.z_point(s, cc, ctx.zs_sign)
        w = ctx.spectral(zs)
        a6, b6, _ = lo.abc(zs / w, root)
        C1, C2 = b6 / q, q * a6
        m = iw.ses_maps(s, cc, zs, wp)
        Rz = lo.r6v(zs / w, root)
        for mk, inj, sur in ((lambda p: lo.l_rho(p, w, cc, wp).check, m.iota, m.tau),
                             (lambda p: lo.l_rhobar(p, w, cc, wp).check, m.iota_bar, m.tau_bar),
                             (lambda p: Lc(r, p, w), m.I_bar, m.T_bar)):
            lhs = kron(mk(s), I2) @ kron(I, Rz) @ kron(inj, I2)
            w6["lfusion"] = max(w6["lfusion"], _rel(lhs, C1 * kron(I2, inj) @ mk(cv.shift(s, 1))))
            lhs = kron(I2, sur) @ kron(mk(s), I2) @ kron(I, Rz)
            w6["lfusion"] = max(w6["lfusion"], _rel(lhs, C2 * mk(cv.shift(s, -1)) @ kron(sur, I2)))
        # fusion of the bold L
        zr = cv.z_point(rp, cc, ctx.zs_sign)
        mr = iw.ses_maps(rp, cc, zr, wp)
        E1, E2 = tr.e_coeffs(rp, s, sp, cc)
        B = lambda p: iw.b_check(p, s, sp, wp)
        Lb = lo.l_bold(s, sp, zr, cc, wp)
        lhs = kron(B(rp), I2) @ kron(I, Lb) @ kron(mr.I_bar, I)
        w6["vfusion"] = max(w6["vfusion"], _rel(lhs, E1 * kron(I, mr.I_bar) @ B(cv.shift(rp, 1))))
        lhs = kron(I, mr.T_bar) @ kron(B(rp), I2) @ kron(I, Lb)
        w6["vfusion"] = max(w6["vfusion"], _rel(lhs, E2 * B(cv.shift(rp, -1)) @ kron(mr.T_bar, I)))
        # bold L normalization and intertwining
        Lb = lo.l_bold(s, sp, z, cc, wp)
        nrm = lo.bold_norm(s, sp, z, cc)
        Lo = Lc(s, sp, z)
        w6["bold-norm"] = max(w6["bold-norm"], _rel(Lb @ Lo, nrm * np.eye(2 * N)), _rel(Lo @ Lb, nrm * np.eye(2 * N)))
        w6["bold-int"] = max(w6["bold-int"], intertwiner_residual(Lb, (pz, om(s, sp)), (om(s, sp), pz), ALL_GENS))
        # gauge transformation to the standard L's
        for fam, Lf, Ls, g in (("rho", lo.l_rho, lo.l_std, lo.gauge_aleph), ("rhobar", lo.l_rhobar, lo.l_bar_std, lo.gauge_beth)):
            zg = lo.gauge_z(s, cc, fam)
            G = lo.gauge_lift(g(s, cc), N)
            rhs = w * G @ Ls(zg / w, s.mu, wp).matrix @ np.linalg.inv(G)
            w6["gtrans"] = max(w6["gtrans"], _rel(Lf(s, w, cc, wp).matrix, rhs))
        G = lo.gauge_lift(lo.gauge_beth(s, cc), N)
        zg = lo.gauge_z(s, cc, "rhobar")
        printed = w * G @ lo.l_bar_std(zg / w, s.mu, wp, printed=True).matrix @ np.linalg.inv(G)
        w6["gtrans-printed"] = max(w6["gtrans-printed"], _rel(lo.l_rhobar(s, w, cc, wp).matrix, printed))
    tol = ctx.cfg.tol_rel
    anchors = {
        "lhom": "L-operators intertwine", "lhom-op": "L-operators against the opposite coproduct",
        "lphi": "L_phi is diagonal", "r6v": "six-vertex R intertwines", "ll1": "L and T", "ll2": "L and S",
        "ll3": "L and R", "rll": "RLL relations", "lprop": "L-operator factorization",
        "abc": "bracket factorization with arbitrary 2x2 matrices", "lfusion": "fusion of L-operators",
        "vfusion": "fusion of the bold L", "bold-norm": "bold L normalization",
        "bold-int": "bold L intertwines", "gtrans": "gauge transformation to standard L",
    }
    for key, anchor in anchors.items():
        ctx.record(f"lops/{key}/N{N}", anchor, w6[key], tol, {"draws": d})
    ctx.record(f"lops/gtrans-printed-form/N{N}", "gauge transformation with the printed V(z,mu)",
               w6["gtrans-printed"], tol, {"draws": d}, asserted=False)


# ---------------------------------------------------------------------------
def suite_transfer(ctx: Ctx, M: Optional[int] = None, alpha="config", draws: int = 1, tag: str = ""):
    """V-chain identities. ``alpha=None`` runs the untwisted variants."""
    wp, cc, root, N, q = ctx.wp, ctx.cc, ctx.root, ctx.root.N, ctx.root.q
    M = M or ctx.cfg.M
    a = ctx.cfg.alpha if alpha == "config" else alpha
    tol, ttol = ctx.cfg.tol_rel, ctx.cfg.tol_transfer
    base = f"transfer{tag}/N{N}M{M}"
    strict = a is not None and abs(2 * a - round(2 * a)) > 1e-12
    for _ in range(draws):
        r, s = ctx.points(2)
        zs = cv.z_point(s, cc, ctx.zs_sign)
        w = ctx.spectral(zs)
        z2 = ctx.spectral(zs)
        params = dict(_pp(r=r, s=s, w=w), M=M, alpha=a)
        # premise of the commutation proof: L_check intertwines t1^alpha (x) t1^alpha
        pw = pi(w, root)
        cov = 0.0
        for rep, L in ((rho(r, cc, wp), lo.l_rho(r, w, cc, wp)), (rhobar(r, cc, wp), lo.l_rhobar(r, w, cc, wp))):
            A = tr.twist_insertion(rep, root, a, strict)
            B = tr.twist_insertion(pw, root, a, strict)
            cov = max(cov, np.linalg.norm(L.check @ kron(A, B) - kron(B, A) @ L.check) / np.linalg.norm(L.check))
        ctx.record(f"{base}/twist-covariance", "L-operators intertwine the twist factors", cov, tol, params)
        T = tr.t6v(zs / w, M, a, root, strict)
        Tz2 = tr.t6v(z2, M, a, root, strict)
        Sz = np.diag(tr.sz_diag(M)).astype(complex)
        ctx.record(f"{base}/t-sz", "transfer matrix conserves S_z", np.linalg.norm(T @ Sz - Sz @ T) / np.linalg.norm(T), 1e-12, params)
        ctx.record(f"{base}/t-commuting", "commuting transfer matrices",
                   np.linalg.norm(T @ Tz2 - Tz2 @ T) / (np.linalg.norm(T) * np.linalg.norm(Tz2)), tol, params)
        Qr = tr.q_rho(r, w, M, a, cc, wp, strict)
        Qb = tr.q_rhobar(r, w, M, a, cc, wp, strict)
        for key, Q in (("qtcom-rho", Qr), ("qtcom-rhobar", Qb)):
            ctx.record(f"{base}/{key}", "Q commutes with T",
                       np.linalg.norm(T @ Q - Q @ T) / (np.linalg.norm(T) * np.linalg.norm(Q)), tol, params)
        for sg in (1, -1):
            fact = tr.t_fact_check(r, s, w, M, a, cc, wp, sg, strict)
            key = "inverse_form" if "inverse_form" in fact else "multiplicative"
            ctx.record(f"{base}/tfact/c0{'+' if sg > 0 else '-'}", "T_Omega factorization", fact[key], ttol, dict(params, form=key))
        tq = tr.tq_relation_check(s, w, M, a, cc, wp, r=r, zs_sign=ctx.zs_sign, strict=strict)
        names = {"tqv_rho": "TQ relation for Q_rho", "tqv_rhobar": "TQ relation for Q_rhobar",
                 "tomega": "TQ relation for T_Omega", "tq_standard": "standard TQ relation",
                 "tq_standard_bar": "standard TQ relation (bar)"}
        for key, v in tq.items():
            ctx.record(f"{base}/{key.replace('_', '-')}", names[key], v, ttol, params)
        To = tr.t_omega(r, s, w, M, a, cc, wp, ctx.c0_sign, strict)
        for key, Q in (("q-rho", Qr), ("q-rhobar", Qb), ("t-omega", To)):
            ctx.record(f"{base}/charge/{key}", "charge conservation mod N",
                       tr.charge_violation(Q, M, N) / np.abs(Q).max(), 1e-12, params)
        if strict:
            c = cv.c0(r, s, ctx.c0_sign)
            ctx.record(f"{base}/tphi-two-routes", "closed form of T_phi",
                       _rel(tr.t_phi(c, M, a, wp), tr.t_phi_closed(c, M, a, root)), 1e-10, params)
        mu = s.mu
        fit = max(tr.polyfit_residual(lambda zz: tr.q_std(zz, mu, M, wp), M, M + 4, ctx.rng),
                  tr.polyfit_residual(lambda zz: tr.q_bar_std(zz, mu, M, wp), M, M + 4, ctx.rng))
        ctx.record(f"{base}/q-polynomial", "Q(z,mu) is polynomial in z", fit, tol, params)
        qs = max(tr.qsimp_residual(s, w, M, cc, wp, "rho", a), tr.qsimp_residual(s, w, M, cc, wp, "rhobar", a))
        ctx.record(f"{base}/qsimp", "gauge-fixed Q against Q_rho", qs, ttol, params)


def suite_tau2(ctx: Ctx, M: Optional[int] = None, alpha="config", draws: int = 1, tag: str = ""):
    wp, cc, N = ctx.wp, ctx.cc, ctx.root.N
    M = M or ctx.cfg.M
    a = ctx.cfg.alpha if alpha == "config" else alpha
    strict = a is not None and abs(2 * a - round(2 * a)) > 1e-12
    base = f"tau2{tag}/N{N}M{M}"
    ttol = ctx.cfg.tol_transfer
    for _ in range(draws):
        r, rp, s, sp = ctx.points(4)
        params = dict(_pp(r=r, rp=rp, s=s, sp=sp), M=M, alpha=a)
        ctx.record(f"{base}/tqw", "TQ relation of the tau2 model",
                   tr.tqw_check(r, rp, s, sp, M, a, cc, wp, ctx.zs_sign, ctx.c0_sign, strict), ttol, params)
        direct, factored = tr.cp_transfer(r, rp, s, sp, M, a, cc, wp, ctx.c0_sign, strict)
        ctx.record(f"{base}/tcpab", "chiral Potts transfer matrix from A and B", _rel(direct, factored), ttol, params)
        z1, z2 = ctx.spectral(), ctx.spectral()
        T1 = tr.tau2_transfer(s, sp, z1, M, a, cc, wp, strict)
        T2 = tr.tau2_transfer(s, sp, z2, M, a, cc, wp, strict)
        nrm = lambda x, y: np.linalg.norm(x @ y - y @ x) / (np.linalg.norm(x) * np.linalg.norm(y))
        ctx.record(f"{base}/tau2-commuting", "commuting tau2 transfer matrices", nrm(T1, T2), ttol, params)
        ctx.record(f"{base}/cp-tau2-commutator", "chiral Potts and tau2 transfer matrices",
                   nrm(direct, T1), ttol, params, asserted=False)


SUITE_FUNCS = {
    "weyl": suite_weyl, "curve": suite_curve, "weights": suite_weights,
    "intertwiners": suite_intertwiners, "lops": suite_lops,
    "transfer": suite_transfer, "tau2": suite_tau2,
}
