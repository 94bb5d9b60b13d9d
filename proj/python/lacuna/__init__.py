"""Sparsest-shift interpolation of rational polynomials from modular black boxes.

A black box is either a polynomial (JSON text, a dict in the same format, or a
:class:`LacunaryPoly`) or a callable ``f(p, theta)`` returning ``f(theta) mod p``
that raises ``ZeroDivisionError`` when ``p`` divides a denominator.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Union

from . import _core
from ._core import DenominatorVanished, EvaluationFailure, LacunaError, ReconstructionFailure

__all__ = [
    "LacunaryPoly",
    "interpolate",
    "sparsest_shift",
    "reduce",
    "evaluate",
    "tight_bounds",
    "s_of_q",
    "oracle",
    "run_cli",
    "LacunaError",
    "ReconstructionFailure",
    "EvaluationFailure",
    "DenominatorVanished",
]


@dataclass(frozen=True)
class LacunaryPoly:
    """constant + sum of coeff * (x - shift)**exp."""

    shift: Fraction = Fraction(0)
    constant: Fraction = Fraction(0)
    terms: tuple = field(default_factory=tuple)  # ((coeff, exp), ...), exponents ascending

    @classmethod
    def from_json(cls, text: str) -> "LacunaryPoly":
        data = json.loads(_core.canonical(text))
        if "dense" in data:
            raise ValueError("dense input has no shifted form; interpolate it first")
        return cls(
            Fraction(data["shift"]),
            Fraction(data["constant"]),
            tuple((Fraction(t["coeff"]), int(t["exp"])) for t in data["terms"]),
        )

    def to_json(self) -> str:
        payload = {
            "shift": str(self.shift),
            "constant": str(self.constant),
            "terms": [{"coeff": str(c), "exp": e} for c, e in self.terms],
        }
        return _core.canonical(json.dumps(payload))

    def __call__(self, x) -> Fraction:
        y = Fraction(x) - self.shift
        return self.constant + sum(c * y**e for c, e in self.terms)


Box = Union[str, dict, LacunaryPoly, Callable[[int, int], int]]


def _box(source: Box):
    if isinstance(source, LacunaryPoly):
        return source.to_json()
    if isinstance(source, dict):
        return json.dumps(source)
    return source


def tight_bounds(poly: Union[str, dict, LacunaryPoly]) -> tuple:
    """(B_A, B_T, B_H, B_N) of an explicit shifted polynomial."""
    return _core.tight_bounds(_box(poly))


def _bounds(source: Box, bounds):
    if bounds is not None:
        return tuple(int(b) for b in bounds)
    if callable(source) and not isinstance(source, LacunaryPoly):
        raise ValueError("a callable box needs explicit bounds")
    return tight_bounds(source)


def interpolate(source: Box, bounds: Iterable[int] | None = None, *, assume_shift=None, mu: float = 1.0,
                seed: int = 0) -> LacunaryPoly:
    shift = None if assume_shift is None else str(Fraction(assume_shift))
    text = _core.interpolate(_box(source), _bounds(source, bounds), shift, mu, seed)
    return LacunaryPoly.from_json(text)


def sparsest_shift(source: Box, bounds: Iterable[int] | None = None, *, mu: float = 1.0) -> dict:
    result = _core.sparsest_shift(_box(source), _bounds(source, bounds), mu)
    result["alpha"] = Fraction(result["alpha"])
    return result


def reduce(source: Box, p: int, threads: int = 1) -> list:
    """Coefficients of f^(p), ascending."""
    return _core.reduce(_box(source), p, threads)


def evaluate(source: Box, p: int, theta: int) -> int:
    return _core.evaluate(_box(source), p, theta)


def s_of_q(q: int, cap_exponent: float = 1.89):
    return _core.s_of_q(q, cap_exponent)


def oracle(beta1: int, beta2: int, ell: int, mu: float = 1.0) -> dict:
    return _core.oracle(beta1, beta2, ell, mu)


def run_cli(args: list) -> tuple:
    """(exit code, stdout, stderr) of the command-line front end."""
    return _core.run_cli([str(a) for a in args])
