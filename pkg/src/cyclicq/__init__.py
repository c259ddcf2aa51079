"""Cyclic representations of U_q(sl2-hat) at roots of unity, chiral Potts weights,
L-operators and transfer/Q-operators, with numerical certification suites."""
from . import curve, intertwiners, lops, reps, tensorcore, transfer, weights, weyl

__version__ = "0.1.0"
__all__ = ["curve", "intertwiners", "lops", "reps", "tensorcore", "transfer", "weights", "weyl"]
