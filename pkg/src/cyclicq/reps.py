"""Generators, coproducts and the concrete representations Omega, rho, rhobar, phi, pi."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence, Union

import numpy as np

from .curve import CouplingConstants, CurvePoint
from .tensorcore import DimensionError, identity, kron
from .weyl import RootOfUnity, WeylPair

BOREL_GENS = ("e0", "e1", "t0", "t0inv", "t1", "t1inv", "z0", "z1")
ALL_GENS = BOREL_GENS + ("f0", "f1")


class BorelOnlyError(KeyError):
    """An f-generator was requested from a Borel-subalgebra representation."""


@dataclass(frozen=True, eq=False)
class Rep:
    dim: int
    act_map: Mapping[str, np.ndarray]
    kind: str = "full"
    label: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("full", "borel"):
            raise ValueError(f"unknown kind {self.kind!r}")
        gens = ALL_GENS if self.kind == "full" else BOREL_GENS
        missing = [g for g in gens if g not in self.act_map]
        if missing:
            raise ValueError(f"representation is missing generators {missing}")
        for g, m in self.act_map.items():
            if m.shape != (self.dim, self.dim):
                raise DimensionError(f"{g} has shape {m.shape}, expected {(self.dim, self.dim)}")

    def act(self, g: str) -> np.ndarray:
        if g not in ALL_GENS:
            raise KeyError(f"unknown generator {g!r}")
        if g not in self.act_map:
            raise BorelOnlyError(f"{g} is not defined on the Borel representation {self.label.get('name')}")
        return self.act_map[g]

    def has(self, g: str) -> bool:
        return g in self.act_map

    @property
    def gens(self) -> tuple:
        return ALL_GENS if self.kind == "full" else BOREL_GENS


def _with_inverses(d: dict) -> dict:
    # every t in these representations is diagonal
    for i in "01":
        d[f"t{i}inv"] = np.diag(1.0 / np.diag(d[f"t{i}"]))
    return d


def omega(r: CurvePoint, s: CurvePoint, cc: CouplingConstants, c0: complex, wp: WeylPair) -> Rep:
    q, I = wp.q, wp.I
    X, Xi, Z2, Zi2 = wp.X, wp.Xinv, wp.Zpow(2), wp.Zpow(-2)
    if abs(c0 * c0 - q * q * r.x * s.x / (r.y * s.y)) > 1e-9 * abs(c0) ** 2:
        raise ValueError("c0 does not square to q^2 x_r x_s / (y_r y_s)")
    k0, k1 = complex(cc.kappa0), complex(cc.kappa1)
    d = q - 1 / q
    A = Xi @ (s.y / (r.x * r.mu * s.mu) * Zi2 - I)
    B = (s.x * r.mu * s.mu / r.y * Z2 - I) @ X
    t0 = c0 * r.y * s.y / (q * q * r.x * s.x * r.mu * s.mu) * Zi2
    acts = {
        "e0": k0 * r.x / d * A,
        "e1": k1 * r.y / d * B,
        "f0": c0 * r.y / (q * k0 * r.x * s.x * d) * B,
        "f1": c0 / (q * k1 * s.x * d) * A,
        "t0": t0,
        "t1": np.diag(1.0 / np.diag(t0)),
        "z0": c0 * I,
        "z1": I / c0,
    }
    return Rep(wp.N, _with_inverses(acts), "full", {"name": "omega", "r": r.to_dict(), "s": s.to_dict(), "c0": [c0.real, c0.imag]})


def rho(r: CurvePoint, cc: CouplingConstants, wp: WeylPair) -> Rep:
    q, d = wp.q, wp.q - 1 / wp.q
    acts = {
        "e0": -complex(cc.kappa0) * r.x / d * wp.Xinv,
        "e1": -complex(cc.kappa1) * r.y / d * wp.X,
        "t0": wp.Zpow(-2) / (q * r.mu),
        "t1": q * r.mu * wp.Zpow(2),
        "z0": wp.I.copy(),
        "z1": wp.I.copy(),
    }
    return Rep(wp.N, _with_inverses(acts), "borel", {"name": "rho", "r": r.to_dict()})


def rhobar(r: CurvePoint, cc: CouplingConstants, wp: WeylPair) -> Rep:
    d = wp.q - 1 / wp.q
    acts = {
        "e0": complex(cc.kappa0) * r.y / (r.mu * d) * wp.Xinv,
        "e1": complex(cc.kappa1) * r.x * r.mu / d * wp.X,
        "t0": wp.Zpow(-2) / r.mu,
        "t1": r.mu * wp.Zpow(2),
        "z0": wp.I.copy(),
        "z1": wp.I.copy(),
    }
    return Rep(wp.N, _with_inverses(acts), "borel", {"name": "rhobar", "r": r.to_dict()})


def phi(c: complex, wp: WeylPair) -> Rep:
    c = complex(c)
    if c == 0:
        raise ValueError("phi_c needs c != 0")
    q = wp.q
    zero = np.zeros((wp.N, wp.N), dtype=np.complex128)
    acts = {
        "e0": zero, "e1": zero.copy(),
        "t0": c / q * wp.Zpow(-2),
        "t1": q / c * wp.Zpow(2),
        "z0": wp.I / c,
        "z1": c * wp.I,
    }
    return Rep(wp.N, _with_inverses(acts), "borel", {"name": "phi", "c": [c.real, c.imag]})


def pi(z: complex, root: RootOfUnity) -> Rep:
    """The two-dimensional evaluation representation pi_z on V."""
    z = complex(z)
    if z == 0:
        raise ValueError("pi_z needs z != 0")
    q = root.q
    acts = {
        "e0": np.array([[0, 0], [z, 0]], dtype=np.complex128),
        "e1": np.array([[0, z], [0, 0]], dtype=np.complex128),
        "f0": np.array([[0, 1 / z], [0, 0]], dtype=np.complex128),
        "f1": np.array([[0, 0], [1 / z, 0]], dtype=np.complex128),
        "t0": np.diag([1 / q, q]).astype(np.complex128),
        "t1": np.diag([q, 1 / q]).astype(np.complex128),
        "z0": identity(2),
        "z1": identity(2),
    }
    return Rep(2, _with_inverses(acts), "full", {"name": "pi", "z": [z.real, z.imag]})


def _inv_diag(m: np.ndarray) -> np.ndarray:
    return np.diag(1.0 / np.diag(m))


def coproduct(a: Rep, b: Rep, g: str) -> np.ndarray:
    """(a (x) b) Delta(g) with

    Delta(e_i) = e_i (x) 1 + z_i t_i (x) e_i,  Delta(f_i) = f_i (x) t_i^-1 + z_i^-1 (x) f_i,
    and t_i, z_i group-like.
    """
    if g not in ALL_GENS:
        raise KeyError(f"unknown generator {g!r}")
    kind, i = g[0], g[1]
    if kind == "e":
        return kron(a.act(g), identity(b.dim)) + kron(a.act("z" + i) @ a.act("t" + i), b.act(g))
    if kind == "f":
        return kron(a.act(g), b.act(f"t{i}inv")) + kron(_inv_diag(a.act("z" + i)), b.act(g))
    return kron(a.act(g), b.act(g))


def coproduct_op(a: Rep, b: Rep, g: str) -> np.ndarray:
    """(a (x) b) Delta^op(g): each Delta term with its legs exchanged."""
    if g not in ALL_GENS:
        raise KeyError(f"unknown generator {g!r}")
    kind, i = g[0], g[1]
    if kind == "e":
        return kron(identity(a.dim), b.act(g)) + kron(a.act(g), b.act("z" + i) @ b.act("t" + i))
    if kind == "f":
        return kron(a.act(f"t{i}inv"), b.act(g)) + kron(a.act(g), _inv_diag(b.act("z" + i)))
    return kron(a.act(g), b.act(g))


def tensor(*reps: Rep, op: bool = False) -> Rep:
    """The tensor product representation through the (iterated) coproduct."""
    if not reps:
        raise ValueError("need at least one representation")
    if len(reps) == 1:
        return reps[0]
    if op and len(reps) != 2:
        raise ValueError("opposite coproduct is only supported for two factors")
    a = reps[0]
    b = tensor(*reps[1:])
    kind = "full" if a.kind == b.kind == "full" else "borel"
    gens = ALL_GENS if kind == "full" else BOREL_GENS
    cp = coproduct_op if op else coproduct
    acts = {g: cp(a, b, g) for g in gens}
    return Rep(a.dim * b.dim, acts, kind, {"name": "tensor", "op": op, "factors": [r.label for r in reps]})


RepLike = Union[Rep, Sequence[Rep]]


def _as_rep(x: RepLike) -> Rep:
    return x if isinstance(x, Rep) else tensor(*x)


def intertwiner_residual(m, src: RepLike, dst: RepLike, gens: Sequence[str] = BOREL_GENS) -> float:
    """max_g ||m src(g) - dst(g) m||_F / ||m||_F."""
    m = np.asarray(m, dtype=np.complex128)
    src, dst = _as_rep(src), _as_rep(dst)
    if m.shape != (dst.dim, src.dim):
        raise DimensionError(f"map of shape {m.shape} cannot go from dim {src.dim} to dim {dst.dim}")
    nm = np.linalg.norm(m)
    if nm == 0:
        raise ValueError("zero map")
    return max(float(np.linalg.norm(m @ src.act(g) - dst.act(g) @ m)) for g in gens) / float(nm)

