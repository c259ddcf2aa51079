"""Points on the chiral Potts curve and the constants derived from them.

The curve C_k is the set of (x, y, mu) with

    x^N + y^N = k (1 + x^N y^N),   mu^N = k' / (1 - k x^N) = (1 - k y^N) / k'.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .weyl import RootOfUnity

CURVE_RTOL = 1e-10


class DegeneratePointError(ValueError):
    """A construction hit a pole or zero radicand at this point."""


class ExhaustedDrawsError(RuntimeError):
    pass


def _c(v) -> complex:
    return complex(v)


@dataclass(frozen=True)
class Modulus:
    k: complex
    kprime: complex

    def __post_init__(self):
        k, kp = _c(self.k), _c(self.kprime)
        if not (np.isfinite(k) and np.isfinite(kp)):
            raise ValueError("modulus must be finite")
        if abs(k) < 1e-12 or abs(kp) < 1e-12 or abs(k * k - 1) < 1e-12:
            raise ValueError(f"degenerate modulus k={k}")
        if abs(k * k + kp * kp - 1) > 1e-12 * max(1.0, abs(k) ** 2):
            raise ValueError("k^2 + k'^2 must equal 1")


def make_modulus(k, kprime=None) -> Modulus:
    k = _c(k)
    if kprime is None:
        kprime = np.sqrt(1 - k * k)
    return Modulus(k, _c(kprime))


@dataclass(frozen=True)
class CouplingConstants:
    kappa0: complex = 1.0
    kappa1: complex = 1.0

    def __post_init__(self):
        for v in (self.kappa0, self.kappa1):
            v = _c(v)
            if v == 0 or not np.isfinite(v):
                raise ValueError("kappa0 and kappa1 must be finite and nonzero")


@dataclass(frozen=True)
class CurvePoint:
    x: complex
    y: complex
    mu: complex
    modulus: Modulus
    root: RootOfUnity

    def __post_init__(self):
        for name in ("x", "y", "mu"):
            v = getattr(self, name)
            if _c(v) == 0 or not np.isfinite(_c(v)):
                raise DegeneratePointError(f"coordinate {name} must be finite and nonzero")

    @property
    def N(self) -> int:
        return self.root.N

    @property
    def q(self) -> complex:
        return self.root.q

    def to_dict(self) -> dict:
        pair = lambda v: [float(_c(v).real), float(_c(v).imag)]
        return {
            "k": pair(self.modulus.k), "kprime": pair(self.modulus.kprime),
            "x": pair(self.x), "y": pair(self.y), "mu": pair(self.mu),
            "N": self.root.N, "m": self.root.m,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CurvePoint":
        c = lambda p: complex(p[0], p[1])
        return cls(c(d["x"]), c(d["y"]), c(d["mu"]),
                   Modulus(c(d["k"]), c(d["kprime"])),
                   RootOfUnity(int(d["N"]), int(d.get("m", 1))))


@dataclass(frozen=True)
class CurveResidual:
    curve: float
    mu: float
    tol: float = CURVE_RTOL

    @property
    def ok(self) -> bool:
        return self.curve <= self.tol and self.mu <= self.tol

    def __bool__(self):
        return self.ok


def _rel(a, b) -> float:
    scale = max(abs(a), abs(b), 1e-300)
    return float(abs(a - b) / scale)


def validate(p: CurvePoint) -> CurveResidual:
    N, k, kp = p.N, p.modulus.k, p.modulus.kprime
    xN, yN, mN = p.x ** N, p.y ** N, p.mu ** N
    r_curve = _rel(xN + yN, k * (1 + xN * yN))
    r_mu = max(_rel(mN, kp / (1 - k * xN)), _rel(mN, (1 - k * yN) / kp))
    return CurveResidual(r_curve, r_mu)


def lift_x(mod: Modulus, x, root: RootOfUnity, branch_y: int = 0, branch_mu: int = 0) -> CurvePoint:
    """Complete x to a curve point; the branches pick among the N-th roots."""
    x = _c(x)
    N, k = root.N, mod.k
    xN = x ** N
    den = 1 - k * xN
    if abs(den) < 1e-12:
        raise DegeneratePointError("1 - k x^N vanishes")
    num = k - xN
    if abs(num) < 1e-12:
        raise DegeneratePointError("k - x^N vanishes, so y = 0")
    y = (num / den) ** (1.0 / N) * root.q ** (branch_y % N)
    mu = (mod.kprime / den) ** (1.0 / N) * root.q ** (branch_mu % N)
    return CurvePoint(x, complex(y), complex(mu), mod, root)


def shift(p: CurvePoint, sign: int = 1) -> CurvePoint:
    """The automorphism s -> s q^{+-1} acting on all three coordinates."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    f = p.q ** sign
    return CurvePoint(p.x * f, p.y * f, p.mu * f, p.modulus, p.root)


def c0(r: CurvePoint, s: CurvePoint, sign: int = 1) -> complex:
    """Square root of q^2 x_r x_s / (y_r y_s).

    The root is taken per point, q sqrt(x_r/y_r) sqrt(x_s/y_s), so that
    c0(r,s) c0(r',s') = c0(r,r') c0(s,s') holds exactly. The intertwiners
    between tensor products of Omega's need that multiplicativity for the
    central z-generators to match. It is also invariant under s -> s q.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return complex(sign * r.q * np.sqrt(r.x / r.y) * np.sqrt(s.x / s.y))


def z_point(s: CurvePoint, cc: CouplingConstants, sign: int = 1) -> complex:
    """z_s with z_s^2 = kappa0 kappa1 x_s y_s.

    Taken as kappa0 x_s sqrt(kappa1 y_s / (kappa0 x_s)) so that the same
    square root appears in the gauge matrix aleph_s.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    k0, k1 = _c(cc.kappa0), _c(cc.kappa1)
    return complex(sign * k0 * s.x * np.sqrt(k1 * s.y / (k0 * s.x)))


def ses_constants(s: CurvePoint, cc: CouplingConstants, zs) -> tuple:
    """(c_s, cbar_s, d_s) for the short exact sequences at s."""
    k0, k1, q = _c(cc.kappa0), _c(cc.kappa1), s.q
    zs = _c(zs)
    if abs(zs * zs - k0 * k1 * s.x * s.y) > 1e-9 * max(1.0, abs(zs) ** 2):
        raise ValueError("zs must square to kappa0 kappa1 x_s y_s")
    c_s = -k0 * s.x * s.mu * q * q / zs
    cbar_s = k0 * s.y * q / zs
    d_s = k0 * s.y / (zs * q)
    return complex(c_s), complex(cbar_s), complex(d_s)


def random_modulus(rng: np.random.Generator) -> Modulus:
    k = rng.uniform(0.2, 0.8) * np.exp(1j * rng.uniform(0, 2 * np.pi))
    return make_modulus(k)


def random_point(rng: np.random.Generator, mod: Modulus, root: RootOfUnity) -> CurvePoint:
    x = rng.uniform(0.5, 2.0) * np.exp(1j * rng.uniform(0, 2 * np.pi))
    return lift_x(mod, x, root, int(rng.integers(root.N)), int(rng.integers(root.N)))


def random_points(rng: np.random.Generator, mod: Modulus, root: RootOfUnity, count: int,
                  accept: Optional[Callable[..., bool]] = None, max_tries: int = 100) -> list:
    """Draw ``count`` points jointly, redrawing until ``accept(*points)`` holds."""
    for _ in range(max_tries):
        try:
            pts = [random_point(rng, mod, root) for _ in range(count)]
        except DegeneratePointError:
            continue
        if accept is None or accept(*pts):
            return pts
    raise ExhaustedDrawsError(f"no acceptable draw of {count} points after {max_tries} tries")
