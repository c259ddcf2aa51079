"""Twisted-trace transfer matrices and Q-operators on V^{(x)M} and W^{(x)M}.

Every operator here is Tr_0( twist_0 O^{0M} ... O^{02} O^{01} ), with the
auxiliary space as tensor slot 0 and site 1 acted on first. ``alpha=None``
drops the twist and gives the plain trace.
"""
from __future__ import annotations

from typing import Callable, Optional

import numpy as np

from . import curve as cv
from .curve import CouplingConstants, CurvePoint
from .intertwiners import a_check, b_check, r_check
from .lops import (abc, l_bar_std, l_bold_form, l_omega, l_phi, l_rho, l_rhobar, l_std, r6v)
from .reps import Rep, omega, phi, pi, rho, rhobar
from .tensorcore import cyclic_shift, embed, partial_trace_first, swap
from .weyl import RootOfUnity, WeylPair

BUDGET = 2_000_000
MEMORY_BYTES = 4 * 2 ** 30     # dense complex128 operators on the full chain


class BudgetError(ValueError):
    pass


class IntegerTwistError(ValueError):
    pass


def check_alpha(alpha: Optional[float], strict: bool = True) -> None:
    if alpha is None:
        return
    if not np.isfinite(alpha):
        raise ValueError("alpha must be finite")
    if strict and abs(2 * alpha - round(2 * alpha)) < 1e-12:
        raise IntegerTwistError(f"2*alpha = {2 * alpha} is an integer; the twisted traces need 2*alpha outside Z")


def _check_budget(aux: int, site: int, M: int) -> None:
    if M < 1:
        raise ValueError("need at least one site")
    D = aux * site ** M
    if D > BUDGET:
        raise BudgetError(f"dimension {aux} * {site}^{M} exceeds the budget {BUDGET}")
    if 16 * D * D > MEMORY_BYTES:
        raise BudgetError(f"a dense {D} x {D} operator needs {16 * D * D / 2 ** 30:.1f} GiB")


def twist_insertion(rep: Rep, root: RootOfUnity, alpha: Optional[float], strict: bool = True) -> np.ndarray:
    """rep(t1^alpha).

    Every t1 used here is c * D with D = diag(q^{e j}); the result is
    c^alpha (principal branch) times diag(exp(alpha e j log q)).
    """
    check_alpha(alpha, strict)
    if alpha is None:
        return np.eye(rep.dim, dtype=np.complex128)
    d = np.diag(rep.act("t1"))
    if not np.allclose(rep.act("t1"), np.diag(d)):
        raise ValueError("t1 is not diagonal")
    q, lq = root.q, root.log_q
    c = d[0]
    j = np.arange(rep.dim)
    ratio = d[1] / c if rep.dim > 1 else 1.0
    # exponents +-2 are distinct mod N for odd N >= 3
    e = next((e for e in (2, -2) if abs(q ** e - ratio) < 1e-9), None)
    if e is None or not np.allclose(d, c * q ** (e * j)):
        raise ValueError("t1 is not a scalar times a clock power")
    return np.diag(np.exp(alpha * (np.log(c) + e * j * lq)))


def chain_trace(site_op: Callable[[int], np.ndarray], twist: np.ndarray, M: int, site_dim: int) -> np.ndarray:
    aux = twist.shape[0]
    _check_budget(aux, site_dim, M)
    dims = [aux] + [site_dim] * M
    D = aux * site_dim ** M
    prod = np.eye(D, dtype=np.complex128)
    for i in range(1, M + 1):
        prod = embed(site_op(i), dims, [0, i]) @ prod
    prod = embed(twist, dims, [0]) @ prod
    return partial_trace_first(prod, aux, site_dim ** M)


def sz_diag(M: int) -> np.ndarray:
    """Eigenvalues of S_z in the product basis; basis index 0 is spin up."""
    bits = (np.arange(2 ** M)[:, None] >> np.arange(M)[::-1]) & 1
    return (M - 2 * bits.sum(axis=1)).astype(int)


def sz_power(base: complex, M: int) -> np.ndarray:
    """base^{S_z/2} on V^{(x)M}, with base^{1/2} principal."""
    return np.diag(np.sqrt(complex(base)) ** sz_diag(M))


def t6v(z_over_w, M: int, alpha: Optional[float], root: RootOfUnity, strict: bool = True) -> np.ndarray:
    R = swap(2, 2) @ r6v(z_over_w, root)
    tw = twist_insertion(pi(1.0, root), root, alpha, strict)
    return chain_trace(lambda i: R, tw, M, 2)


def q_rho(r, w, M, alpha, cc, wp, strict=True) -> np.ndarray:
    L = l_rho(r, w, cc, wp).matrix
    return chain_trace(lambda i: L, twist_insertion(rho(r, cc, wp), wp.root, alpha, strict), M, 2)


def q_rhobar(r, w, M, alpha, cc, wp, strict=True) -> np.ndarray:
    L = l_rhobar(r, w, cc, wp).matrix
    return chain_trace(lambda i: L, twist_insertion(rhobar(r, cc, wp), wp.root, alpha, strict), M, 2)


def t_omega(r, s, w, M, alpha, cc, wp, c0_sign=1, strict=True) -> np.ndarray:
    c0 = cv.c0(r, s, c0_sign)
    L = l_omega(r, s, w, cc, wp).matrix
    return chain_trace(lambda i: L, twist_insertion(omega(r, s, cc, c0, wp), wp.root, alpha, strict), M, 2)


def t_phi(c, M, alpha, wp, strict=True) -> np.ndarray:
    L = l_phi(wp).matrix
    return chain_trace(lambda i: L, twist_insertion(phi(c, wp), wp.root, alpha, strict), M, 2)


def t_phi_closed(c, M, alpha, root: RootOfUnity) -> np.ndarray:
    """q^{-(S_z+M)/2} (q/c)^alpha (1 - q^{2 alpha N}) / (1 - q^{2 alpha - S_z})."""
    check_alpha(alpha)
    q, lq, N = root.q, root.log_q, root.N
    sz = sz_diag(M)
    q2a = np.exp(2 * alpha * lq)
    vals = q ** (-((sz + M) // 2)) * np.exp(alpha * np.log(q / complex(c))) \
        * (1 - np.exp(2 * alpha * N * lq)) / (1 - q2a * q ** (-sz))
    return np.diag(vals)


def q_std(z, mu, M, wp, alpha=None) -> np.ndarray:
    """Tr_W(L^M(z,mu) ... L^1(z,mu)), untwisted unless alpha is given (twist (q mu)^alpha Z^{2 alpha})."""
    L = l_std(z, mu, wp).matrix
    tw = np.eye(wp.N, dtype=np.complex128)
    if alpha is not None:
        check_alpha(alpha, strict=False)
        tw = np.diag(np.exp(alpha * (np.log(wp.q * mu) + 2 * np.arange(wp.N) * wp.root.log_q)))
    return chain_trace(lambda i: L, tw, M, 2)


def q_bar_std(z, mu, M, wp, alpha=None) -> np.ndarray:
    L = l_bar_std(z, mu, wp).matrix
    tw = np.eye(wp.N, dtype=np.complex128)
    if alpha is not None:
        check_alpha(alpha, strict=False)
        tw = np.diag(np.exp(alpha * (np.log(mu) + 2 * np.arange(wp.N) * wp.root.log_q)))
    return chain_trace(lambda i: L, tw, M, 2)


def charge_violation(op: np.ndarray, M: int, N: int) -> float:
    """Largest |entry| between states whose S_z differ by a non-multiple of 2N."""
    sz = sz_diag(M)
    diff = sz[:, None] - sz[None, :]
    mask = (diff // 2) % N != 0
    return float(np.abs(op[mask]).max()) if mask.any() else 0.0


def polyfit_residual(fn: Callable[[complex], np.ndarray], degree: int, samples: int, rng) -> float:
    """Fit each entry of fn(z) by a degree-``degree`` polynomial and report the relative misfit."""
    zs = np.exp(2j * np.pi * np.arange(samples) / samples) * (0.5 + rng.uniform(0, 1))
    vals = np.array([fn(z).ravel() for z in zs])
    V = np.vander(zs, degree + 1, increasing=True)
    coef, *_ = np.linalg.lstsq(V, vals, rcond=None)
    return float(np.linalg.norm(V @ coef - vals) / np.linalg.norm(vals))


def _rel(a, b) -> float:
    scale = max(np.linalg.norm(a), np.linalg.norm(b))
    return float(np.linalg.norm(a - b) / scale) if scale else 0.0


def tq_relation_check(s, w, M, alpha, cc, wp, r=None, zs_sign=1, strict=True) -> dict:
    """Residuals of the V-chain TQ relations at the point s and spectral parameter w.

    Keys: tqv_rho, tqv_rhobar, tomega (needs r), tq_standard, tq_standard_bar.
    """
    root = wp.root
    zs = cv.z_point(s, cc, zs_sign)
    a6, b6, _ = abc(zs / w, root)
    C1, C2 = b6 / wp.q, wp.q * a6
    sq, sqi = cv.shift(s, 1), cv.shift(s, -1)
    T = t6v(zs / w, M, alpha, root, strict)
    out = {}
    for key, Q in (("tqv_rho", q_rho), ("tqv_rhobar", q_rhobar)):
        lhs = Q(s, w, M, alpha, cc, wp, strict) @ T
        rhs = C1 ** M * Q(sq, w, M, alpha, cc, wp, strict) + C2 ** M * Q(sqi, w, M, alpha, cc, wp, strict)
        out[key] = _rel(lhs, rhs)
    if r is not None:
        lhs = t_omega(r, s, w, M, alpha, cc, wp, strict=strict) @ T
        rhs = C1 ** M * t_omega(r, sq, w, M, alpha, cc, wp, strict=strict) \
            + C2 ** M * t_omega(r, sqi, w, M, alpha, cc, wp, strict=strict)
        out["tomega"] = _rel(lhs, rhs)
    # the standard form, at z = z_s / w and mu = mu_s
    z, mu, q = zs / w, s.mu, wp.q
    a, b, _ = abc(z, root)
    Tz = t6v(z, M, alpha, root, strict)
    for key, Q in (("tq_standard", q_std), ("tq_standard_bar", q_bar_std)):
        lhs = Q(z, mu, M, wp, alpha) @ Tz
        rhs = (b / q) ** M * Q(q * z, q * mu, M, wp, alpha) + (q * a) ** M * Q(z / q, mu / q, M, wp, alpha)
        out[key] = _rel(lhs, rhs)
    return out


def qsimp_residual(s, w, M, cc, wp, family="rho", alpha=None) -> float:
    """Q(z_s/w, mu_s) against w^-M D^{S_z/2} Q_rho_s(w) D^{-S_z/2}, D = kappa1 y_s/(kappa0 x_s)
    (x and y exchanged for rhobar)."""
    from .lops import gauge_z
    zs = gauge_z(s, cc, family)
    if family == "rho":
        D = cc.kappa1 * s.y / (cc.kappa0 * s.x)
        lhs = q_std(zs / w, s.mu, M, wp, alpha)
        Q = q_rho(s, w, M, alpha, cc, wp, strict=False)
    else:
        D = cc.kappa1 * s.x / (cc.kappa0 * s.y)
        lhs = q_bar_std(zs / w, s.mu, M, wp, alpha)
        Q = q_rhobar(s, w, M, alpha, cc, wp, strict=False)
    Dp, Dm = sz_power(D, M), sz_power(1 / D, M)
    rhs = w ** (-M) * Dp @ Q @ Dm
    return _rel(lhs, rhs)


def t_fact_check(r, s, w, M, alpha, cc, wp, c0_sign=1, strict=True) -> dict:
    """T_Omega = Q_rho Q_rhobar T_phi^{-1} with c = c0, plus the multiplicative form.

    T_phi^{-1} comes from the diagonal closed form, never a generic inverse.
    """
    c0 = cv.c0(r, s, c0_sign)
    To = t_omega(r, s, w, M, alpha, cc, wp, c0_sign, strict)
    Qr, Qb = q_rho(r, w, M, alpha, cc, wp, strict), q_rhobar(s, w, M, alpha, cc, wp, strict)
    Tp = t_phi(c0, M, alpha, wp, strict)
    out = {"multiplicative": _rel(To @ Tp, Qr @ Qb),
           "phi_commutes": max(_rel(Tp @ Qr, Qr @ Tp), _rel(Tp @ Qb, Qb @ Tp))}
    if alpha is not None and abs(2 * alpha - round(2 * alpha)) > 1e-12:
        Tpi = np.diag(1.0 / np.diag(t_phi_closed(c0, M, alpha, wp.root)))
        out["inverse_form"] = _rel(To, Qr @ Qb @ Tpi)
    return out


# ---- W-chains -------------------------------------------------------------

def tau2_transfer(s, sp, z, M, alpha, cc, wp, strict=True) -> np.ndarray:
    Lb = l_bold_form(s, sp, z, cc, wp)
    tw = twist_insertion(pi(1.0, wp.root), wp.root, alpha, strict)
    return chain_trace(lambda i: Lb, tw, M, wp.N)


def q_tau2(r, rp, s, sp, M, alpha, cc, wp, c0_sign=1, strict=True) -> np.ndarray:
    B = swap(wp.N, wp.N) @ b_check(rp, s, sp, wp)
    tw = twist_insertion(omega(r, rp, cc, cv.c0(r, rp, c0_sign), wp), wp.root, alpha, strict)
    return chain_trace(lambda i: B, tw, M, wp.N)


def e_coeffs(rp, s, sp, cc):
    """E1, E2 of the bold-L fusion relations."""
    q = rp.q
    z2 = lambda p: cc.kappa0 * cc.kappa1 * p.x * p.y
    E1 = s.mu * (q * q * z2(rp) - z2(s)) * (q * q * rp.x * rp.mu * sp.mu - sp.y) / (s.mu * s.x - rp.mu * rp.x * q * q)
    E2 = sp.mu * q * q * (z2(rp) - z2(sp)) * (rp.x * rp.mu - s.x * s.mu) / (sp.y - rp.x * rp.mu * sp.mu)
    return complex(E1), complex(E2)


def tqw_check(r, rp, s, sp, M, alpha, cc, wp, zs_sign=1, c0_sign=1, strict=True) -> float:
    zr = cv.z_point(rp, cc, zs_sign)
    E1, E2 = e_coeffs(rp, s, sp, cc)
    T = tau2_transfer(s, sp, zr, M, alpha, cc, wp, strict)
    Q = lambda p: q_tau2(r, p, s, sp, M, alpha, cc, wp, c0_sign, strict)
    lhs = Q(rp) @ T
    rhs = E1 ** M * Q(cv.shift(rp, 1)) + E2 ** M * Q(cv.shift(rp, -1))
    return _rel(lhs, rhs)


def cp_transfer(r, rp, s, sp, M, alpha, cc, wp, c0_sign=1, strict=True) -> tuple:
    """The chiral Potts transfer matrix computed from R(rr';ss') products and from A P B."""
    N = wp.N
    _check_budget(N, N, M)
    tw = twist_insertion(omega(r, rp, cc, cv.c0(r, rp, c0_sign), wp), wp.root, alpha, strict)
    R = swap(N, N) @ r_check(r, rp, s, sp, wp)
    direct = chain_trace(lambda i: R, tw, M, N)

    A = swap(N, N) @ a_check(r, s, sp, wp)
    B = swap(N, N) @ b_check(rp, s, sp, wp)
    dims = [N] * (M + 1)
    D = N ** (M + 1)
    calB = np.eye(D, dtype=np.complex128)
    calA = np.eye(D, dtype=np.complex128)
    for i in range(1, M + 1):
        calB = embed(B, dims, [0, i]) @ calB
        calA = embed(A, dims, [0, i]) @ calA
    full = embed(tw, dims, [0]) @ calA @ cyclic_shift(N, M + 1) @ calB
    factored = partial_trace_first(full, N, N ** M)
    return direct, factored
