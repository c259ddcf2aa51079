"""Dense complex linear algebra used by every other module.

Operators are plain ``complex128`` numpy arrays. Tensor products follow the
row-major Kronecker convention: the basis vector ``e_i (x) e_j`` of
``A (x) B`` sits at index ``i * dim(B) + j``, so the left factor is the
slow index.
"""
from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Sequence

import numpy as np

SINGULAR_RTOL = 1e-13


class DimensionError(ValueError):
    """Operand shapes are incompatible with the requested operation."""


class SingularMatrixError(np.linalg.LinAlgError):
    """Raised when a matrix is singular to working tolerance."""

    def __init__(self, sigma_min: float, norm: float):
        self.sigma_min = sigma_min
        self.norm = norm
        super().__init__(
            f"matrix is singular to tolerance: smallest singular value "
            f"{sigma_min:.3e} vs norm {norm:.3e}"
        )


@dataclass(frozen=True)
class Tolerance:
    rel: float = 1e-10
    abs: float = 1e-12

    def __post_init__(self):
        for v in (self.rel, self.abs):
            if not np.isfinite(v) or v < 0:
                raise ValueError(f"tolerance components must be finite and >= 0, got {v}")
        if self.rel == 0 and self.abs == 0:
            raise ValueError("at least one of rel/abs must be positive")


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class Comparison:
    """Outcome of :func:`approx_eq`; truthy iff the residual is in bounds."""

    ok: bool
    residual: float
    bound: float

    def __bool__(self):
        return bool(self.ok)


def as_cmat(a) -> np.ndarray:
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise DimensionError(f"expected a 2-d matrix, got shape {m.shape}")
    return m


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.complex128)


def kron(a, b) -> np.ndarray:
    return np.kron(as_cmat(a), as_cmat(b))


def kron_all(*ops) -> np.ndarray:
    out = identity(1)
    for op in ops:
        out = np.kron(out, as_cmat(op))
    return out


def swap(dim_a: int, dim_b: int) -> np.ndarray:
    """Permutation taking ``a (x) b`` in ``A (x) B`` to ``b (x) a`` in ``B (x) A``."""
    if dim_a < 1 or dim_b < 1:
        raise ValueError("dimensions must be positive")
    n = dim_a * dim_b
    p = np.zeros((n, n), dtype=np.complex128)
    i, j = np.meshgrid(np.arange(dim_a), np.arange(dim_b), indexing="ij")
    p[(j * dim_a + i).ravel(), (i * dim_b + j).ravel()] = 1.0
    return p


def cyclic_shift(dim_single: int, count: int) -> np.ndarray:
    """Permutation ``a (x) b_1 (x) ... (x) b_{count-1} -> b_1 (x) ... (x) b_{count-1} (x) a``."""
    if count < 1:
        raise ValueError("count must be >= 1")
    rest = dim_single ** (count - 1)
    return swap(dim_single, rest)


def partial_trace_first(m, dim_aux: int, dim_rest: int) -> np.ndarray:
    """Trace out the first tensor slot (dimension ``dim_aux``)."""
    m = as_cmat(m)
    n = dim_aux * dim_rest
    if m.shape != (n, n):
        raise DimensionError(
            f"matrix of shape {m.shape} is not square of size {dim_aux}*{dim_rest}"
        )
    return np.einsum("iaib->ab", m.reshape(dim_aux, dim_rest, dim_aux, dim_rest))


def embed(op, dims: Sequence[int], slots: Sequence[int]) -> np.ndarray:
    """Lift ``op`` acting on ``slots`` (in that order) to the full tensor space ``dims``."""
    op = as_cmat(op)
    dims = list(dims)
    n, k = len(dims), len(slots)
    if len(set(slots)) != k or any(s < 0 or s >= n for s in slots):
        raise DimensionError(f"bad slot list {slots} for {n} factors")
    sub = [dims[s] for s in slots]
    if op.shape != (int(np.prod(sub)),) * 2:
        raise DimensionError(f"operator of shape {op.shape} does not act on slots of dims {sub}")
    if 2 * n + k > len(string.ascii_letters):
        raise DimensionError("too many tensor factors")
    letters = string.ascii_letters
    out_idx = list(letters[:n])
    in_idx = letters[n:2 * n]
    new = letters[2 * n:2 * n + k]
    res_idx = out_idx.copy()
    for j, s in enumerate(slots):
        res_idx[s] = new[j]
    op_sub = new + "".join(out_idx[s] for s in slots)
    total = int(np.prod(dims))
    eye = np.eye(total, dtype=np.complex128).reshape(dims + dims)
    pattern = f"{op_sub},{''.join(out_idx)}{in_idx}->{''.join(res_idx)}{in_idx}"
    return np.einsum(pattern, op.reshape(sub + sub), eye).reshape(total, total)


def sigma_min(a) -> float:
    return float(np.linalg.svd(as_cmat(a), compute_uv=False)[-1])


def _check_invertible(a: np.ndarray):
    s = np.linalg.svd(a, compute_uv=False)
    if s[-1] <= SINGULAR_RTOL * s[0] or s[-1] == 0:
        raise SingularMatrixError(float(s[-1]), float(s[0]))


def solve(a, b) -> np.ndarray:
    a, b = as_cmat(a), as_cmat(b)
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"solve needs a square matrix, got {a.shape}")
    if b.shape[0] != a.shape[0]:
        raise DimensionError(f"right-hand side has {b.shape[0]} rows, expected {a.shape[0]}")
    _check_invertible(a)
    return np.linalg.solve(a, b)


def inverse(a) -> np.ndarray:
    a = as_cmat(a)
    return solve(a, identity(a.shape[0]))


def residual(a, b) -> float:
    return float(np.linalg.norm(as_cmat(a) - as_cmat(b)))


def rel_residual(a, b) -> float:
    """Frobenius distance relative to the larger operand (0 when both vanish)."""
    a, b = as_cmat(a), as_cmat(b)
    scale = max(np.linalg.norm(a), np.linalg.norm(b))
    if scale == 0:
        return 0.0
    return float(np.linalg.norm(a - b) / scale)


def approx_eq(a, b, tol: Tolerance = DEFAULT_TOL) -> Comparison:
    a, b = as_cmat(a), as_cmat(b)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")
    res = float(np.linalg.norm(a - b))
    bound = tol.abs + tol.rel * max(np.linalg.norm(a), np.linalg.norm(b))
    return Comparison(bool(res <= bound), res, float(bound))


def commutator(a, b) -> np.ndarray:
    return a @ b - b @ a


def numerical_rank(a, gap: float = 1e-6) -> int:
    """Number of singular values above ``gap`` times the largest one."""
    s = np.linalg.svd(as_cmat(a), compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s > gap * s[0]))
