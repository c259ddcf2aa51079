"""L-operators on W (x) V, the six-vertex R-matrix, the bold L on V (x) W, and gauge-fixed L's.

Conventions. An L-operator acts on W (x) V with V the second (fast) slot and
L_check = P L, P = swap(N, 2), maps W (x) V -> V (x) W. A 2x2 array of N x N
blocks [[A00, A01], [A10, A11]] is the operator sum_ab A_ab (x) E_ab.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .curve import CouplingConstants, CurvePoint
from .tensorcore import kron, swap
from .weyl import RootOfUnity, WeylPair

_E = [[np.outer(np.eye(2)[a], np.eye(2)[b]).astype(np.complex128) for b in range(2)] for a in range(2)]


def assemble(blocks) -> np.ndarray:
    """sum_ab blocks[a][b] (x) E_ab on W (x) V."""
    return sum(kron(blocks[a][b], _E[a][b]) for a in range(2) for b in range(2))


def split(m: np.ndarray, N: int):
    """Inverse of :func:`assemble`."""
    t = np.asarray(m).reshape(N, 2, N, 2)
    return [[t[:, a, :, b] for b in range(2)] for a in range(2)]


@dataclass(frozen=True, eq=False)
class LOp:
    matrix: np.ndarray
    N: int
    label: dict = field(default_factory=dict)

    @property
    def blocks(self):
        return split(self.matrix, self.N)

    @property
    def check(self) -> np.ndarray:
        """P L : W (x) V -> V (x) W."""
        return swap(self.N, 2) @ self.matrix


def bracket(A, B, wp: WeylPair, label=None) -> LOp:
    """{A, B} = diag(X^-1, 1) A diag(Z^-1, Z) B diag(X, 1)."""
    A = np.asarray(A, dtype=np.complex128)
    B = np.asarray(B, dtype=np.complex128)
    I, O = wp.I, np.zeros_like(wp.I)
    d1 = assemble([[wp.Xinv, O], [O, I]])
    d2 = assemble([[wp.Zinv, O], [O, wp.Z]])
    d3 = assemble([[wp.X, O], [O, I]])
    m = d1 @ kron(I, A) @ d2 @ kron(I, B) @ d3
    return LOp(m, wp.N, label or {})


def u_mat(r: CurvePoint, z, cc: CouplingConstants) -> np.ndarray:
    return np.array([[z, cc.kappa0 * r.x * r.mu], [cc.kappa1 * r.y, z * r.mu]], dtype=np.complex128)


def v_mat(r: CurvePoint, z, cc: CouplingConstants) -> np.ndarray:
    q = r.q
    return np.array([[-q * z, cc.kappa0 * r.y], [q * cc.kappa1 * r.x * r.mu, -z * r.mu]], dtype=np.complex128)


_I2 = np.eye(2, dtype=np.complex128)


def l_omega(r, s, z, cc, wp) -> LOp:
    return bracket(u_mat(r, z, cc), v_mat(s, z, cc), wp, {"name": "omega", "z": complex(z)})


def l_phi(wp) -> LOp:
    return bracket(_I2, _I2, wp, {"name": "phi"})


def l_rho(r, z, cc, wp) -> LOp:
    return bracket(u_mat(r, z, cc), _I2, wp, {"name": "rho", "z": complex(z)})


def l_rhobar(r, z, cc, wp) -> LOp:
    return bracket(v_mat(r, z, cc), _I2, wp, {"name": "rhobar", "z": complex(z)})


def abc(z, root: RootOfUnity):
    q = root.q
    return 1 - q * q * z * z, q * (1 - z * z), z * (1 - q * q)


def r6v(z, root: RootOfUnity) -> np.ndarray:
    """Six-vertex R_check(z); R_check(z/w) maps pi_z (x) pi_w -> pi_w (x) pi_z."""
    a, b, c = abc(z, root)
    return np.array([[a, 0, 0, 0], [0, c, b, 0], [0, b, c, 0], [0, 0, 0, a]], dtype=np.complex128)


def bold_blocks(s: CurvePoint, sp: CurvePoint, z, cc: CouplingConstants, wp: WeylPair):
    q, X, Xi, Z, Zi = wp.q, wp.X, wp.Xinv, wp.Z, wp.Zinv
    k0, k1 = complex(cc.kappa0), complex(cc.kappa1)
    mm = s.mu * sp.mu
    M00 = s.y * sp.y * k0 * k1 * Zi - q * q * z * z * mm * Z
    M01 = q * z * k0 * (-sp.y * Zi + s.x * mm * Z)
    M10 = q * z * k1 * (s.y * Zi - q * q * sp.x * mm * Z)
    M11 = q * q * (-z * z * Zi + s.x * sp.x * k0 * k1 * mm * Z)
    return [[M00, Xi @ M01], [X @ M10, M11]]


def l_bold(s: CurvePoint, sp: CurvePoint, z, cc: CouplingConstants, wp: WeylPair) -> np.ndarray:
    """Bold L_check for Omega_{ss'}: V (x) W -> W (x) V, normalized so that

    l_bold(z) @ l_omega(s, s', z).check = q^2 (z^2 - z_s^2)(z^2 - z_{s'}^2) mu_s mu_{s'} I.
    """
    return assemble(bold_blocks(s, sp, z, cc, wp)) @ swap(2, wp.N)


def l_bold_form(s, sp, z, cc, wp) -> np.ndarray:
    """Bold L = P L_check acting on V (x) W."""
    return swap(wp.N, 2) @ l_bold(s, sp, z, cc, wp)


def bold_norm(s, sp, z, cc) -> complex:
    zs2 = cc.kappa0 * cc.kappa1 * s.x * s.y
    zsp2 = cc.kappa0 * cc.kappa1 * sp.x * sp.y
    return complex(s.q ** 2 * (z * z - zs2) * (z * z - zsp2) * s.mu * sp.mu)


def fuse(L1: np.ndarray, L2: np.ndarray, N: int) -> np.ndarray:
    """(L1 (x) 1_W)(1_W (x) L2) on W (x) W (x) V for checked L's, landing in V (x) W (x) W."""
    I = np.eye(N, dtype=np.complex128)
    return kron(L1, I) @ kron(I, L2)


def gauge_aleph(s: CurvePoint, cc: CouplingConstants) -> np.ndarray:
    return np.diag([1.0, np.sqrt(cc.kappa1 * s.y / (cc.kappa0 * s.x))]).astype(np.complex128)


def gauge_beth(s: CurvePoint, cc: CouplingConstants) -> np.ndarray:
    return np.diag([1.0, np.sqrt(cc.kappa1 * s.x / (cc.kappa0 * s.y))]).astype(np.complex128)


def u_std(z, mu) -> np.ndarray:
    return np.array([[1, z], [z, 1]], dtype=np.complex128) @ np.diag([1, mu]).astype(np.complex128)


def v_std(z, mu, root: RootOfUnity, printed: bool = False) -> np.ndarray:
    """diag(1, mu) [[-q, z], [q z, -1]].

    The lower-left entry carries a factor q; without it (``printed=True``)
    no diagonal gauge maps this matrix onto V_s(w), whose lower-left entry
    is q kappa1 x mu.
    """
    lower = z if printed else root.q * z
    return np.diag([1, mu]).astype(np.complex128) @ np.array([[-root.q, z], [lower, -1]], dtype=np.complex128)


def l_std(z, mu, wp: WeylPair) -> LOp:
    return bracket(u_std(z, mu), _I2, wp, {"name": "std", "z": complex(z), "mu": complex(mu)})


def l_bar_std(z, mu, wp: WeylPair, printed: bool = False) -> LOp:
    return bracket(v_std(z, mu, wp.root, printed), _I2, wp, {"name": "bar_std", "z": complex(z), "mu": complex(mu)})


def gauge_z(s: CurvePoint, cc: CouplingConstants, family: str = "rho") -> complex:
    """The square root of kappa0 kappa1 x_s y_s singled out by the gauge matrices.

    aleph needs z_s = kappa0 x_s aleph_11 and beth needs z_s = kappa0 y_s beth_11;
    the two can differ by a sign.
    """
    if family == "rho":
        return complex(cc.kappa0 * s.x * gauge_aleph(s, cc)[1, 1])
    if family == "rhobar":
        return complex(cc.kappa0 * s.y * gauge_beth(s, cc)[1, 1])
    raise ValueError(f"unknown family {family!r}")


def gauge_lift(g: np.ndarray, N: int) -> np.ndarray:
    """A 2x2 matrix acting on the V slot of W (x) V."""
    return kron(np.eye(N), g)
