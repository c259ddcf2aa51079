"""Chiral Potts weights: the recursions for What and Wbar, and their Fourier transforms W and Wcheck."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curve import CurvePoint, DegeneratePointError

DENOM_FLOOR = 1e-6
FAMILIES = ("what", "wbar", "w", "wcheck")


@dataclass(frozen=True, eq=False)
class WeightTable:
    family: str
    values: np.ndarray
    r: CurvePoint
    s: CurvePoint

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown weight family {self.family!r}")

    def __getitem__(self, n):
        return self.values[n % len(self.values)]

    def __len__(self):
        return len(self.values)


def what_ratio(r: CurvePoint, s: CurvePoint, n: int):
    """(numerator, denominator) of What(n)/What(n-1)."""
    q = r.q
    return (s.mu * r.y - r.mu * s.y * q ** (2 * (n - 1)),
            s.mu * s.x - r.mu * r.x * q ** (2 * n))


def wbar_ratio(r: CurvePoint, s: CurvePoint, n: int):
    q = r.q
    return (r.mu * s.mu * (r.x * q * q - s.x * q ** (2 * n)),
            s.y - r.y * q ** (2 * n))


def w_ratio(r: CurvePoint, s: CurvePoint, n: int):
    q = r.q
    return r.mu * (s.y - r.x * q ** (2 * n)), s.mu * (r.y - s.x * q ** (2 * n))


def wcheck_ratio(r: CurvePoint, s: CurvePoint, n: int):
    q, mm = r.q, r.mu * s.mu
    return s.y - r.x * q ** (2 * n) * mm, r.y - s.x * q ** (2 * n) * mm


_RATIOS = {"what": what_ratio, "wbar": wbar_ratio, "w": w_ratio, "wcheck": wcheck_ratio}


def min_denominator(r: CurvePoint, s: CurvePoint) -> float:
    """Smallest |denominator| in the two defining recursions over a full cycle."""
    N = r.N
    dens = [abs(f(r, s, n)[1]) for f in (what_ratio, wbar_ratio) for n in range(1, N + 1)]
    return float(min(dens))


def _run(ratio, r, s, family):
    N = r.N
    vals = np.empty(N, dtype=np.complex128)
    vals[0] = 1.0
    for n in range(1, N):
        num, den = ratio(r, s, n)
        if abs(den) < DENOM_FLOOR:
            raise DegeneratePointError(f"{family} recursion denominator {abs(den):.2e} at n={n}")
        vals[n] = vals[n - 1] * num / den
    num, den = ratio(r, s, N)
    if abs(den) < DENOM_FLOOR:
        raise DegeneratePointError(f"{family} recursion denominator {abs(den):.2e} at n={N}")
    return vals


def w_hat(r: CurvePoint, s: CurvePoint) -> WeightTable:
    return WeightTable("what", _run(what_ratio, r, s, "what"), r, s)


def w_bar(r: CurvePoint, s: CurvePoint) -> WeightTable:
    """Wbar scaled so that its entries sum to 1, which is Wcheck(0) = 1."""
    vals = _run(wbar_ratio, r, s, "wbar")
    total = vals.sum()
    if abs(total) < DENOM_FLOOR * np.abs(vals).max():
        raise DegeneratePointError("Wbar sums to zero and cannot be normalized")
    return WeightTable("wbar", vals / total, r, s)


def fourier(t: WeightTable, sign: int) -> WeightTable:
    """out(n) = sum_m t(m) q^{2 sign m n}.

    sign=-1 sends What to W and sign=+1 sends Wbar to Wcheck.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    N, q = t.r.N, t.r.q
    n = np.arange(N)
    kernel = q ** ((2 * sign * np.outer(n, n)) % N)
    # only the two forward transforms change the family; inverses carry a factor N
    family = {("what", -1): "w", ("wbar", 1): "wcheck"}.get((t.family, sign), t.family)
    return WeightTable(family, kernel @ t.values, t.r, t.s)


def w_plain(r: CurvePoint, s: CurvePoint) -> WeightTable:
    return fourier(w_hat(r, s), -1)


def w_check(r: CurvePoint, s: CurvePoint) -> WeightTable:
    return fourier(w_bar(r, s), 1)


def closure(t: WeightTable) -> complex:
    """Product of the defining ratios around n = 1..N; equals 1 when the recursion closes."""
    ratio = _RATIOS[t.family]
    num, den = 1.0 + 0j, 1.0 + 0j
    for n in range(1, t.r.N + 1):
        a, b = ratio(t.r, t.s, n)
        num *= a
        den *= b
    return complex(num / den)


def ratio_residual(t: WeightTable) -> float:
    """max_n |t(n) den_n - t(n-1) num_n| relative to the table scale, n = 1..N (cyclic)."""
    ratio = _RATIOS[t.family]
    v = t.values
    scale = np.abs(v).max()
    worst = 0.0
    for n in range(1, t.r.N + 1):
        num, den = ratio(t.r, t.s, n)
        lhs, rhs = t[n] * den, t[n - 1] * num
        worst = max(worst, abs(lhs - rhs) / (scale * max(abs(num), abs(den))))
    return float(worst)
