"""Certification of quadrature rules by exact spline integration.

A rule that claims to integrate a spline space exactly is checked here
against the most unforgiving basis available: plain powers anchored at
the left endpoint plus one truncated power per interior knot and
admissible exponent.  Truncated powers are deliberately preferred over
B-splines -- their moments have one-line closed forms, so this module
shares no machinery (and no failure modes) with the rule construction
it certifies.

Nothing in here imports the engine; ``residuals`` accepts any object
carrying flat ``nodes``/``weights`` arrays, or a plain (nodes, weights)
pair.
"""

import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

import numpy as np

from .errors import InvalidPartition, UnsupportedConfiguration

__all__ = [
    "SplineSpace",
    "BasisElement",
    "BasisResidual",
    "ResidualReport",
    "basis",
    "exact_integral",
    "residuals",
]


@dataclass(frozen=True)
class SplineSpace:
    """Piecewise polynomials of one degree and smoothness on [a, b].

    ``knots`` are the interior breakpoints only, strictly increasing and
    strictly inside (a, b).  ``continuity`` counts matched derivatives:
    0 means merely continuous, 1 means continuously differentiable.
    """

    degree: int
    continuity: int
    knots: Tuple[float, ...]
    a: float
    b: float

    def __post_init__(self):
        object.__setattr__(self, "knots", tuple(float(t) for t in self.knots))
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))
        if self.continuity < 0:
            raise UnsupportedConfiguration("continuity must be >= 0")
        if self.degree <= self.continuity:
            raise UnsupportedConfiguration(
                f"degree {self.degree} must exceed continuity {self.continuity}")
        if not self.b > self.a:
            raise InvalidPartition("need a < b")
        prev = self.a
        for t in self.knots:
            if not (prev < t < self.b):
                raise InvalidPartition(
                    f"interior knot {t} out of order or outside ({self.a}, {self.b})")
            prev = t

    @property
    def dimension(self) -> int:
        return (self.degree + 1) + len(self.knots) * (self.degree - self.continuity)


@dataclass(frozen=True)
class BasisElement:
    """One spanning function: (x-origin)^exponent, optionally truncated."""

    kind: str  # "power" | "truncated"
    origin: float
    exponent: int

    @property
    def id(self) -> str:
        if self.kind == "power":
            if self.exponent == 0:
                return "1"
            return f"(x-{self.origin:g})^{self.exponent}"
        return f"(x-{self.origin:g})_+^{self.exponent}"

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if self.kind == "power":
            return (x - self.origin) ** self.exponent
        return np.where(x > self.origin, (x - self.origin) ** self.exponent, 0.0)


def basis(space: SplineSpace) -> List[BasisElement]:
    """A spanning set of ``space``: left-anchored powers of every degree,
    then truncated powers at each interior knot for every exponent the
    smoothness class leaves free."""
    out = [BasisElement("power", space.a, j) for j in range(space.degree + 1)]
    for t in space.knots:
        for m in range(space.continuity + 1, space.degree + 1):
            out.append(BasisElement("truncated", t, m))
    assert len(out) == space.dimension
    return out


def exact_integral(element: BasisElement, space: SplineSpace) -> float:
    """Closed-form integral of a basis element over [a, b].

    Both kinds reduce to (b - origin)^(e+1)/(e+1): the plain powers are
    anchored at a, and a truncated power vanishes left of its knot.
    """
    p = element.exponent + 1
    return (space.b - element.origin) ** p / p


@dataclass(frozen=True)
class BasisResidual:
    id: str
    exact: float
    quadrature: float
    residual: float


@dataclass(frozen=True)
class ResidualReport:
    """How well a rule integrates every element of a spline basis."""

    per_basis: Tuple[BasisResidual, ...]
    max_residual: float
    min_weight: float


RuleLike = Union[Tuple[Sequence[float], Sequence[float]], object]


def _nodes_weights(rule: RuleLike) -> Tuple[np.ndarray, np.ndarray]:
    if hasattr(rule, "nodes") and hasattr(rule, "weights"):
        return np.asarray(rule.nodes, dtype=float), np.asarray(rule.weights, dtype=float)
    xs, ws = rule
    return np.asarray(xs, dtype=float), np.asarray(ws, dtype=float)


def residuals(rule: RuleLike, space: SplineSpace) -> ResidualReport:
    """Integrate every basis element with ``rule`` and compare to the
    closed forms.  Residuals are relative, floored at scale 1."""
    xs, ws = _nodes_weights(rule)
    rows = []
    worst = 0.0
    for el in basis(space):
        exact = exact_integral(el, space)
        quad = math.fsum(ws * el(xs)) if xs.size else 0.0
        rel = abs(quad - exact) / max(1.0, abs(exact))
        worst = max(worst, rel)
        rows.append(BasisResidual(el.id, exact, quad, rel))
    min_w = float(np.min(ws)) if ws.size else math.nan
    return ResidualReport(tuple(rows), worst, min_w)
