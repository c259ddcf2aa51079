"""Intertwiners built from the weights: T, S, the factorized R-matrix and its halves,
the polynomials O(chi) and P(Z), the alternative intertwiners, and the SES maps.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curve import CouplingConstants, CurvePoint, ses_constants
from .tensorcore import SingularMatrixError, identity, inverse, kron
from .weights import w_bar, w_hat
from .weyl import WeylPair, chi

_E0 = np.array([[1.0], [0.0]], dtype=np.complex128)
_E1 = np.array([[0.0], [1.0]], dtype=np.complex128)


def _matpoly(coeffs, base: np.ndarray) -> np.ndarray:
    # Horner in the matrix argument
    out = np.zeros_like(base)
    eye = np.eye(base.shape[0], dtype=np.complex128)
    for c in coeffs[::-1]:
        out = out @ base + c * eye
    return out


def t_map(r: CurvePoint, s: CurvePoint, wp: WeylPair) -> np.ndarray:
    """T_rs = sum_n Wbar_rs(n) Z^{2n}: Omega_rs -> Omega_sr."""
    if (r.x, r.y, r.mu) == (s.x, s.y, s.mu):
        # Wbar_rr is delta_{n0}; the recursion itself is 0/0 at the wrap-around
        return identity(wp.N)
    wb = w_bar(r, s)
    return np.diag(_matpoly(wb.values, wp.Zpow(2)).diagonal()).astype(np.complex128)


def s_map(r: CurvePoint, s: CurvePoint, wp: WeylPair) -> np.ndarray:
    """S_rs = sum_n What_rs(n) chi^n."""
    return _matpoly(w_hat(r, s).values, chi(wp))


def trs_residual(r: CurvePoint, s: CurvePoint, wp: WeylPair) -> float:
    T, Z2, X = t_map(r, s, wp), wp.Zpow(2), wp.X
    mm = r.mu * s.mu
    lhs = T @ (r.y * wp.I - s.x * mm * Z2) @ X
    rhs = (s.y * wp.I - r.x * mm * Z2) @ X @ T
    return float(np.linalg.norm(lhs - rhs) / max(np.linalg.norm(lhs), np.linalg.norm(rhs)))


def srs_residual(r: CurvePoint, s: CurvePoint, wp: WeylPair) -> float:
    S, c = s_map(r, s, wp), chi(wp)
    Z2 = kron(wp.Zpow(2), wp.I)
    I = identity(wp.N ** 2)
    lhs = r.mu * S @ Z2 @ (r.x * I - s.y * c)
    rhs = s.mu * Z2 @ (s.x * I - r.y * c) @ S
    return float(np.linalg.norm(lhs - rhs) / max(np.linalg.norm(lhs), np.linalg.norm(rhs)))


def b_check(rp: CurvePoint, s: CurvePoint, sp: CurvePoint, wp: WeylPair) -> np.ndarray:
    """(1 (x) T_{r's'}) S_{r's}: Omega_{rr'} (x) Omega_{ss'} -> Omega_{rs} (x) Omega_{s'r'}."""
    return kron(wp.I, t_map(rp, sp, wp)) @ s_map(rp, s, wp)


def a_check(r: CurvePoint, rp: CurvePoint, s: CurvePoint, wp: WeylPair) -> np.ndarray:
    """S_{rs} (T_{rr'} (x) 1): Omega_{rr'} (x) Omega_{ss'} -> Omega_{r's} (x) Omega_{rs'}."""
    return s_map(r, s, wp) @ kron(t_map(r, rp, wp), wp.I)


def r_check(r, rp, s, sp, wp: WeylPair) -> np.ndarray:
    """S_{rs'} (T_rs (x) T_{r's'}) S_{r's}: Omega_{rr'} (x) Omega_{ss'} -> Omega_{ss'} (x) Omega_{rr'}."""
    return s_map(r, sp, wp) @ kron(t_map(r, s, wp), t_map(rp, sp, wp)) @ s_map(rp, s, wp)


@dataclass(frozen=True, eq=False)
class PolyOp:
    """sum_n coeffs[n] g^n for g = chi (W (x) W) or g = Z^2 (W)."""

    coeffs: np.ndarray
    kind: str
    wp: WeylPair

    def __post_init__(self):
        if self.kind not in ("chi", "Zsquared"):
            raise ValueError(f"unknown polynomial kind {self.kind!r}")
        if len(self.coeffs) != self.wp.N:
            raise ValueError("a polynomial operator needs exactly N coefficients")

    @property
    def generator(self) -> np.ndarray:
        return chi(self.wp) if self.kind == "chi" else self.wp.Zpow(2)

    def matrix(self, scale: complex = 1.0) -> np.ndarray:
        """The operator with g replaced by scale * g."""
        c = self.coeffs * complex(scale) ** np.arange(len(self.coeffs))
        return _matpoly(c, self.generator)

    def at_scalar(self, x: complex) -> complex:
        return complex(np.polyval(self.coeffs[::-1], x))

    def eigenvalues(self) -> np.ndarray:
        """Values on the eigenvalues of the generator.

        chi has spectrum q^j and Z^2 has spectrum q^{2j}, both of which run
        over all N-th roots of unity.
        """
        q = self.wp.q
        return np.array([self.at_scalar(q ** j) for j in range(self.wp.N)])


def o_poly(wp: WeylPair) -> PolyOp:
    n = np.arange(wp.N)
    return PolyOp(wp.q ** (-(n * n) % wp.N).astype(float), "chi", wp)


def p_poly(wp: WeylPair) -> PolyOp:
    """Solution of P(Z) = Z^2 P(q^-1 Z): p_n = q^{-2(n-1)} p_{n-1}, p_0 = 1."""
    N, q = wp.N, wp.q
    p = np.empty(N, dtype=np.complex128)
    p[0] = 1.0
    for n in range(1, N):
        p[n] = q ** (-2 * (n - 1)) * p[n - 1]
    # around the cycle: p_0 = q^{-2(N-1)} p_{N-1}
    if abs(q ** (-2 * (N - 1)) * p[N - 1] - p[0]) > 1e-10:
        raise ArithmeticError("P recursion does not close")
    return PolyOp(p, "Zsquared", wp)


def _circulant_inverse(o: PolyOp) -> np.ndarray:
    lam = o.eigenvalues()
    small = np.min(np.abs(lam))
    if small < 1e-10:
        raise SingularMatrixError(float(small), float(np.max(np.abs(lam))))
    # the polynomial f(g) = sum b_n g^n with f(w_j) = 1/lam_j, w_j = q^j
    N, q = o.wp.N, o.wp.q
    j = np.arange(N)
    V = q ** (np.outer(j, j) % N)
    return np.linalg.solve(V, 1.0 / lam)


def o_inverse(o: PolyOp) -> PolyOp:
    """Inverse polynomial from the eigenvalues of the circulant (any PolyOp works)."""
    return PolyOp(_circulant_inverse(o), o.kind, o.wp)


def o_inverse_direct(o: PolyOp) -> PolyOp:
    """Same coefficients by solving sum_{m} a_{n-m} b_m = delta_{n0} as a linear system."""
    N = o.wp.N
    a = o.coeffs
    C = np.array([[a[(n - m) % N] for m in range(N)] for n in range(N)])
    rhs = np.zeros(N, dtype=np.complex128)
    rhs[0] = 1.0
    return PolyOp(np.linalg.solve(C, rhs), o.kind, o.wp)


def o_functional_residual(o: PolyOp) -> float:
    """|| O(q chi) - chi O(q^-1 chi) ||_F."""
    q = o.wp.q
    return float(np.linalg.norm(o.matrix(q) - chi(o.wp) @ o.matrix(1 / q)))


def p_functional_residual(p: PolyOp) -> float:
    """|| P(Z) - Z^2 P(q^-1 Z) ||_F; in Z^2 language q^-1 Z rescales Z^2 by q^-2."""
    q = p.wp.q
    return float(np.linalg.norm(p.matrix() - p.wp.Zpow(2) @ p.matrix(q ** -2)))


def frak_t(r: CurvePoint, s: CurvePoint, wp: WeylPair) -> np.ndarray:
    """O(chi) (T_rs (x) 1) O(chi)^-1: rho_r (x) rhobar_s -> rho_s (x) rhobar_r."""
    o = o_poly(wp)
    return o.matrix() @ kron(t_map(r, s, wp), wp.I) @ o_inverse(o).matrix()


def cal_s(r: CurvePoint, s: CurvePoint, wp: WeylPair) -> np.ndarray:
    """(P(Z)^-1 (x) 1) S_rs (P(Z) (x) 1): rhobar_r (x) rho_s -> rhobar_s (x) rho_r."""
    p = p_poly(wp).matrix()
    return kron(inverse(p), wp.I) @ s_map(r, s, wp) @ kron(p, wp.I)


@dataclass(frozen=True, eq=False)
class SESMaps:
    """The three pairs of short exact sequence maps at a point s.

    iota-type maps go W -> W (x) V, tau-type maps go W (x) V -> W, with V the
    second tensor slot.
    """

    iota: np.ndarray
    tau: np.ndarray
    iota_bar: np.ndarray
    tau_bar: np.ndarray
    I_bar: np.ndarray
    T_bar: np.ndarray
    zs: complex


def ses_maps(s: CurvePoint, cc: CouplingConstants, zs: complex, wp: WeylPair) -> SESMaps:
    c_s, cb_s, d_s = ses_constants(s, cc, zs)
    q, X, I = wp.q, wp.X, wp.I
    Z, Zi, Zi2 = wp.Z, wp.Zinv, wp.Zpow(-2)
    col = lambda top, bot: kron(top, _E0) + kron(bot, _E1)
    row = lambda left, right: kron(left, _E0.T) + kron(right, _E1.T)
    return SESMaps(
        iota=col(c_s * Z, X @ Zi),
        tau=row(-(q / c_s) * X @ Zi, Z),
        iota_bar=col(cb_s * I, X @ Zi2),
        tau_bar=row(-(1 / cb_s) * X @ Zi2, I),
        I_bar=col(d_s * I, X),
        T_bar=row(-X, d_s * I),
        zs=complex(zs),
    )
