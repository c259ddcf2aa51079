"""Primitive roots of unity and the clock/shift Weyl pair on W = C^N."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd

import numpy as np

from .tensorcore import as_cmat, kron


@dataclass(frozen=True)
class RootOfUnity:
    N: int
    m: int = 1

    def __post_init__(self):
        if not isinstance(self.N, (int, np.integer)) or self.N < 3 or self.N % 2 == 0:
            raise ValueError(f"order N must be an odd integer >= 3, got {self.N}")
        if gcd(int(self.m), int(self.N)) != 1:
            raise ValueError(f"exponent m={self.m} is not coprime to N={self.N}")

    @property
    def q(self) -> complex:
        return complex(np.exp(2j * np.pi * self.m / self.N))

    @property
    def log_q(self) -> complex:
        """Principal logarithm of q; fixes the meaning of q**a for real a."""
        return complex(np.log(self.q))

    def qpow(self, a) -> complex:
        """q**a, with non-integer powers taken through ``log_q``."""
        return complex(np.exp(a * self.log_q))


def make_root(N: int, m: int = 1) -> RootOfUnity:
    return RootOfUnity(int(N), int(m))


@dataclass(frozen=True, eq=False)
class WeylPair:
    root: RootOfUnity
    X: np.ndarray
    Z: np.ndarray

    @property
    def N(self) -> int:
        return self.root.N

    @property
    def q(self) -> complex:
        return self.root.q

    @cached_property
    def Xinv(self) -> np.ndarray:
        # X is a permutation, so the inverse is the transpose
        return self.X.T.copy()

    @cached_property
    def Zinv(self) -> np.ndarray:
        return np.diag(1.0 / np.diag(self.Z))

    @cached_property
    def I(self) -> np.ndarray:
        return np.eye(self.N, dtype=np.complex128)

    def Zpow(self, k: int) -> np.ndarray:
        return np.diag(np.diag(self.Z) ** int(k))

    def Xpow(self, k: int) -> np.ndarray:
        return np.roll(self.I, int(k) % self.N, axis=0)


def make_weyl(root: RootOfUnity) -> WeylPair:
    N = root.N
    X = np.zeros((N, N), dtype=np.complex128)
    X[(np.arange(N) + 1) % N, np.arange(N)] = 1.0
    Z = np.diag(root.q ** np.arange(N)).astype(np.complex128)
    return WeylPair(root, X, Z)


def chi(wp: WeylPair) -> np.ndarray:
    return kron(wp.Xinv, wp.X)


def diag_frac_power(d, alpha: float) -> np.ndarray:
    """Entrywise principal-branch power of a diagonal matrix."""
    d = as_cmat(d)
    if not np.allclose(d, np.diag(np.diag(d)), atol=0):
        raise ValueError("diag_frac_power needs a diagonal matrix")
    v = np.diag(d)
    if np.any(v == 0):
        raise ValueError("zero diagonal entry has no fractional power")
    return np.diag(np.exp(alpha * np.log(v)))


def clock_power(wp: WeylPair, a: float) -> np.ndarray:
    """Z**a on the lifted branch diag(exp(a * j * log q)), j = 0..N-1.

    Unlike the entrywise principal branch this keeps the eigenvalue phases
    on one sheet, which is what makes twisted traces geometric sums.
    """
    j = np.arange(wp.N)
    return np.diag(np.exp(a * j * wp.root.log_q))


def trace_table(wp: WeylPair) -> np.ndarray:
    """Tr(X^n Z^m) for 0 <= n, m < N."""
    N = wp.N
    out = np.empty((N, N), dtype=np.complex128)
    for n in range(N):
        Xn = wp.Xpow(n)
        for m in range(N):
            out[n, m] = np.trace(Xn @ wp.Zpow(m))
    return out


def weyl_residuals(wp: WeylPair) -> dict:
    N, I = wp.N, wp.I
    return {
        "ZX-qXZ": float(np.linalg.norm(wp.Z @ wp.X - wp.q * wp.X @ wp.Z)),
        "X^N-I": float(np.linalg.norm(np.linalg.matrix_power(wp.X, N) - I)),
        "Z^N-I": float(np.linalg.norm(np.linalg.matrix_power(wp.Z, N) - I)),
    }
