"""Rule assembly on arbitrary partitions.

This module owns the global picture: given a partition of [a, b] and a
request (continuity, nodes per subinterval, full/half node budget, where
the sweeps meet), it

* plans how many nodes land on each subinterval and checks the count
  against the dimension of the spline space being integrated,
* runs a left sweep and a right sweep of knot-crossing maps from the two
  ends toward the middle subinterval, emitting one reference rule per
  subinterval as it goes,
* closes the gap at the middle with a two-sided rule (and, for the
  even-count closures, a matched pair of subintervals),
* maps everything to physical coordinates and sanity-checks the result.

Full rules put the same node count N everywhere (N+1 at the middle) and
integrate the richest spline space with that many nodes; half rules
alternate N and N-1 nodes in pairs and hit the matching lower-degree
space.  Some requests carry one leftover degree of freedom; it can be
fixed to a value or spent pinning a node at a chosen location.
"""

import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from . import family_c0 as fc0
from . import family_c1 as fc1
from .errors import (
    DegenerateDenominator,
    InvalidPartition,
    NegativeDiscriminant,
    NumericFailure,
    RootCountMismatch,
    RuleNotAvailable,
    TargetUnreachable,
    UnsupportedConfiguration,
)
from .family_c0 import ParamC0, ReferenceRule
from .family_c1 import ParamC1

__all__ = [
    "Partition",
    "FreeParameter",
    "RuleRequest",
    "NodePlan",
    "SubintervalRule",
    "RuleMeta",
    "QuadratureRule",
    "plan",
    "generate",
    "pin_free_parameter",
]

#: relative slack allowed between sum(lengths) and b - a
_SUM_TOL = 1e-12
#: length ratios beyond this are rejected as numerically hopeless
_RATIO_CAP = 1e12


@dataclass(frozen=True)
class Partition:
    """A partition of [a, b] into consecutive subintervals.

    ``lengths`` are the subinterval widths left to right; they must be
    positive, finite, and sum to b - a (to ~1e-12 relative).
    """

    a: float
    b: float
    lengths: Tuple[float, ...]

    def __post_init__(self):
        a, b = float(self.a), float(self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        lens = tuple(float(v) for v in self.lengths)
        object.__setattr__(self, "lengths", lens)
        if not (math.isfinite(a) and math.isfinite(b)):
            raise InvalidPartition("interval endpoints must be finite")
        if not b > a:
            raise InvalidPartition(f"need a < b, got [{a}, {b}]")
        if len(lens) < 1:
            raise InvalidPartition("at least one subinterval is required")
        for i, length in enumerate(lens, start=1):
            if not math.isfinite(length) or length <= 0.0:
                raise InvalidPartition(f"length {length} is not a positive finite number",
                                       subinterval=i)
        total = math.fsum(lens)
        if abs(total - (b - a)) > _SUM_TOL * max(1.0, abs(b - a)):
            raise InvalidPartition(
                f"lengths sum to {total!r}, interval is {b - a!r} wide")
        ratio = max(lens) / min(lens)
        if ratio >= _RATIO_CAP:
            raise InvalidPartition(
                f"length ratio {ratio:.3e} is too extreme to sweep stably")

    @classmethod
    def uniform(cls, a: float, b: float, count: int) -> "Partition":
        if count < 1:
            raise InvalidPartition("at least one subinterval is required")
        return cls(a, b, tuple((b - a) / count for _ in range(count)))

    @property
    def subinterval_count(self) -> int:
        return len(self.lengths)

    @property
    def knots(self) -> np.ndarray:
        """All S+1 knots, endpoints included; the last one is exactly b."""
        t = np.empty(len(self.lengths) + 1)
        t[0] = self.a
        np.cumsum(self.lengths, out=t[1:])
        t[1:] += self.a
        t[-1] = self.b
        return t


@dataclass(frozen=True)
class FreeParameter:
    """How to spend the leftover degree of freedom, when there is one."""

    kind: str
    value: float = 0.0

    _KINDS = ("default_zero", "value", "pin_node")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise UnsupportedConfiguration(f"unknown free-parameter kind {self.kind!r}")
        object.__setattr__(self, "value", float(self.value))

    @classmethod
    def zero(cls) -> "FreeParameter":
        return cls("default_zero")

    @classmethod
    def of_value(cls, v: float) -> "FreeParameter":
        return cls("value", v)

    @classmethod
    def pin(cls, x: float) -> "FreeParameter":
        return cls("pin_node", x)


@dataclass(frozen=True)
class RuleRequest:
    """What to build: smoothness class, node budget, and sweep layout.

    ``middle_index`` is the 1-based subinterval where the sweeps meet.
    ``family`` is "full" (N nodes everywhere, N+1 at the middle) or
    "half" (N / N-1 alternating in pairs; needs an odd middle index).
    """

    continuity: int
    nodes_per_subinterval: int
    middle_index: int
    family: str = "full"
    free_parameter: FreeParameter = field(default_factory=FreeParameter.zero)

    def __post_init__(self):
        if self.continuity not in (0, 1):
            raise UnsupportedConfiguration(
                f"continuity must be 0 or 1, got {self.continuity}")
        if self.nodes_per_subinterval < 1:
            raise UnsupportedConfiguration("nodes per subinterval must be >= 1")
        if self.family not in ("full", "half"):
            raise UnsupportedConfiguration(f"family must be 'full' or 'half', got {self.family!r}")
        if self.middle_index < 1:
            raise UnsupportedConfiguration("middle index is 1-based and must be >= 1")

    @property
    def degree(self) -> int:
        N = self.nodes_per_subinterval
        if self.continuity == 0:
            return 2 * N if self.family == "full" else 2 * N - 1
        return 2 * N + 1 if self.family == "full" else 2 * N


@dataclass(frozen=True, eq=False)
class NodePlan:
    """Node counts per subinterval plus the dimension bookkeeping."""

    counts: Tuple[int, ...]
    total: int
    dimension: int
    degree: int
    excess: int

    def __len__(self):
        return len(self.counts)

    def __getitem__(self, i):
        return self.counts[i]

    def __iter__(self):
        return iter(self.counts)

    def __eq__(self, other):
        if isinstance(other, NodePlan):
            return (self.counts, self.total, self.dimension,
                    self.degree, self.excess) == (
                        other.counts, other.total, other.dimension,
                        other.degree, other.excess)
        if isinstance(other, (list, tuple)):
            return list(self.counts) == list(other)
        return NotImplemented


@dataclass(frozen=True)
class SubintervalRule:
    """The nodes/weights that landed on one subinterval (1-based index)."""

    index: int
    nodes: np.ndarray
    weights: np.ndarray


@dataclass(frozen=True)
class RuleMeta:
    """Provenance of a generated rule."""

    degree: int
    dimension: int
    free_value: Optional[float]
    branches: Tuple[Tuple[int, str], ...] = ()


@dataclass(frozen=True)
class QuadratureRule:
    """A complete rule: per-subinterval pieces plus flat sorted arrays."""

    partition: Partition
    request: RuleRequest
    per_subinterval: Tuple[SubintervalRule, ...]
    nodes: np.ndarray
    weights: np.ndarray
    meta: RuleMeta


# ---------------------------------------------------------------------------
# planning
# ---------------------------------------------------------------------------

def _dimension(degree: int, continuity: int, subintervals: int) -> int:
    return (degree + 1) + (subintervals - 1) * (degree - continuity)


def plan(req: RuleRequest, part: Partition) -> NodePlan:
    """Node counts per subinterval, with the counting identity verified.

    The identity is 2*total - dimension == excess, where excess is 1 for
    the families carrying a free parameter and 0 for the strictly
    Gaussian ones.  A failure here is a bug, not a data condition.
    """
    S = part.subinterval_count
    S_M = req.middle_index
    N = req.nodes_per_subinterval
    c = req.continuity
    if S_M > S:
        raise UnsupportedConfiguration(
            f"middle index {S_M} exceeds the {S} subintervals")
    if req.family == "half" and S_M % 2 == 0:
        raise UnsupportedConfiguration(
            "half rules need an odd (1-based) middle index so the pairs tile")

    if req.family == "full":
        counts = [N] * S
        counts[S_M - 1] = N + 1
        free_families = (c == 0)
    else:
        counts = [0] * S
        s = 1
        while s <= S_M - 2:
            counts[s - 1] = N
            counts[s] = N - 1
            s += 2
        lo = S_M + 2 if S % 2 == 1 else S_M + 3
        s = S
        while s >= lo:
            counts[s - 1] = N
            counts[s - 2] = N - 1
            s -= 2
        if S % 2 == 1:
            counts[S_M - 1] = N if c == 0 else N + 1
            free_families = (c == 1)
        else:
            counts[S_M - 1] = N
            counts[S_M] = N
            free_families = (c == 0)

    total = sum(counts)
    degree = req.degree
    dim = _dimension(degree, c, S)
    excess = 2 * total - dim
    expected = 1 if free_families else 0
    if excess != expected:
        raise UnsupportedConfiguration(
            f"internal counting inconsistency: excess {excess}, expected {expected}")
    return NodePlan(tuple(counts), total, dim, degree, excess)


# ---------------------------------------------------------------------------
# assembly
# ---------------------------------------------------------------------------

def _reraise_at(exc: NumericFailure, s: int):
    """Re-raise a numeric failure with the subinterval index attached."""
    if exc.subinterval is None:
        msg = exc.args[0] if exc.args else str(exc)
        raise type(exc)(msg, subinterval=s) from exc
    raise exc


def _to_physical(ref: ReferenceRule, t_lo: float, t_hi: float,
                 length: float, reflect: bool, snap: bool = True
                 ) -> Tuple[np.ndarray, np.ndarray]:
    xs = np.asarray(ref.nodes, dtype=float)
    ws = np.asarray(ref.weights, dtype=float)
    if reflect:
        xs = -xs[::-1]
        ws = ws[::-1]
    px = t_lo + (xs + 1.0) * (length / 2.0)
    pw = ws * (length / 2.0)
    if snap:
        # roots are admitted with a hair of bracket slack; snap endpoint
        # grazers onto the knot so the closed-subinterval guarantee holds
        # exactly (the pin solver asks for raw positions instead, so its
        # displacement stays strictly monotone through zero)
        tol = 1e-12 * max(1.0, length)
        px = np.where((px < t_lo) & (t_lo - px <= tol), t_lo, px)
        px = np.where((px > t_hi) & (px - t_hi <= tol), t_hi, px)
    return px, pw


def _pair_c1(st: ParamC1, N: int, lam: float):
    """One paired crossing for continuity 1, trying both quadratic branches.

    Returns (branch, rule_N, stepped state, rule_{N-1}).  A negative
    discriminant means neither branch exists and propagates; a root-count
    or degeneracy failure on one branch falls through to the other.
    """
    last = None
    for br in ("plus", "minus"):
        try:
            om = fc1.omega_pair_c1(st, N, lam, branch=br)
            r_lead = fc1.boundary_rule_c1(st, N, om)
            st2 = fc1.step_ab(st, N, lam, omega=om)
            r_trail = fc1.boundary_rule_c1(st2, N - 1)
            return br, r_lead, st2, r_trail
        except NegativeDiscriminant:
            raise
        except (RootCountMismatch, DegenerateDenominator) as e:
            last = e
    raise RuleNotAvailable(
        f"neither pairing branch yields an admissible rule ({last})") from last


def _assemble(c: int, N: int, family: str, S_M: int, part: Partition,
              free: float, snap: bool = True):
    """Run the sweeps; returns (per-subinterval (nodes, weights), branches)."""
    S = part.subinterval_count
    t = part.knots
    L = part.lengths
    out = [None] * S
    branches = []

    def put(s, ref, reflect=False):
        out[s - 1] = _to_physical(ref, t[s - 1], t[s], L[s - 1], reflect, snap)

    if family == "full":
        # left sweep: Gaussian rules, plain crossings
        st = ParamC0(0.0) if c == 0 else ParamC1(0.0, 0.0)
        for s in range(1, S_M):
            try:
                if c == 0:
                    put(s, fc0.boundary_rule_c0(st, N))
                    st = fc0.step_alpha(st, N, L[s] / L[s - 1])
                else:
                    put(s, fc1.boundary_rule_c1(st, N))
                    st = fc1.step_ab(st, N, L[s] / L[s - 1])
            except NumericFailure as e:
                _reraise_at(e, s)
        left = st
        # right sweep: same thing mirrored
        st = ParamC0(0.0) if c == 0 else ParamC1(0.0, 0.0)
        for s in range(S, S_M, -1):
            try:
                if c == 0:
                    put(s, fc0.boundary_rule_c0(st, N), reflect=True)
                    st = fc0.step_alpha(st, N, L[s - 2] / L[s - 1])
                else:
                    put(s, fc1.boundary_rule_c1(st, N), reflect=True)
                    st = fc1.step_ab(st, N, L[s - 2] / L[s - 1])
            except NumericFailure as e:
                _reraise_at(e, s)
        right = st
        try:
            if c == 0:
                put(S_M, fc0.middle_rule_c0(left, right, N + 1, omega=free))
            else:
                put(S_M, fc1.middle_rule_c1(left, right, N + 1))
        except NumericFailure as e:
            _reraise_at(e, S_M)
        return out, branches

    # half family: paired crossings toward an odd middle index
    st = ParamC0(0.0) if c == 0 else ParamC1(0.0, 0.0)
    s = 1
    while s <= S_M - 2:
        lam = L[s] / L[s - 1]
        lam2 = L[s + 1] / L[s]
        try:
            if c == 0:
                om = fc0.omega_pair_c0(st, N, lam)
                put(s, fc0.boundary_rule_c0(st, N, om))
                st = fc0.step_alpha(st, N, lam, omega=om)
                put(s + 1, fc0.boundary_rule_c0(st, N - 1))
                st = fc0.step_alpha(st, N - 1, lam2)
            else:
                br, r_lead, st2, r_trail = _pair_c1(st, N, lam)
                branches.append((s, br))
                put(s, r_lead)
                put(s + 1, r_trail)
                st = fc1.step_ab(st2, N - 1, lam2)
        except NumericFailure as e:
            _reraise_at(e, s)
        s += 2
    left = st

    st = ParamC0(0.0) if c == 0 else ParamC1(0.0, 0.0)
    lo = S_M + 2 if S % 2 == 1 else S_M + 3
    s = S
    while s >= lo:
        lam = L[s - 2] / L[s - 1]
        lam2 = L[s - 3] / L[s - 2]
        try:
            if c == 0:
                om = fc0.omega_pair_c0(st, N, lam)
                put(s, fc0.boundary_rule_c0(st, N, om), reflect=True)
                st = fc0.step_alpha(st, N, lam, omega=om)
                put(s - 1, fc0.boundary_rule_c0(st, N - 1), reflect=True)
                st = fc0.step_alpha(st, N - 1, lam2)
            else:
                br, r_lead, st2, r_trail = _pair_c1(st, N, lam)
                branches.append((s, br))
                put(s, r_lead, reflect=True)
                put(s - 1, r_trail, reflect=True)
                st = fc1.step_ab(st2, N - 1, lam2)
        except NumericFailure as e:
            _reraise_at(e, s)
        s -= 2
    right = st

    try:
        if S % 2 == 1:
            if c == 0:
                put(S_M, fc0.middle_rule_c0(left, right, N))
            else:
                put(S_M, fc1.middle_rule_c1(left, right, N + 1, omega=free))
        else:
            lam_mid = L[S_M] / L[S_M - 1]
            if c == 0:
                a_rm, a_lm = float(free), -float(free) / lam_mid
                om_t = fc0.bridge_omega_c0(left, N, -a_rm)
                put(S_M, fc0.boundary_rule_c0(left, N, om_t))
                put(S_M + 1, fc0.middle_rule_c0(a_lm, right, N))
            else:
                rm, lm = fc1.middle_pair_params_c1(left, right, N, lam_mid)
                om_t = fc1.bridge_omega_c1(left, N, rm.beta)
                put(S_M, fc1.boundary_rule_c1(left, N, om_t))
                put(S_M + 1, fc1.middle_rule_c1(lm, right, N))
    except NumericFailure as e:
        _reraise_at(e, S_M)

    return out, branches


def _finalize(req: RuleRequest, part: Partition, npl: NodePlan,
              free_value: Optional[float], pieces, branches) -> QuadratureRule:
    subrules = []
    for s, piece in enumerate(pieces, start=1):
        if piece is None:
            raise RuleNotAvailable(f"sweeps left subinterval {s} uncovered (bug)")
        px, pw = piece
        if len(px) != npl.counts[s - 1]:
            raise RuleNotAvailable(
                f"subinterval {s} got {len(px)} nodes, planned {npl.counts[s - 1]} (bug)")
        subrules.append(SubintervalRule(s, px, pw))
    flat_x = np.concatenate([r.nodes for r in subrules]) if npl.total else np.empty(0)
    flat_w = np.concatenate([r.weights for r in subrules]) if npl.total else np.empty(0)
    if flat_x.size > 1 and not np.all(np.diff(flat_x) > 0.0):
        raise RuleNotAvailable("nodes are not strictly increasing across the partition")
    width = part.b - part.a
    if abs(math.fsum(flat_w) - width) > 1e-9 * max(1.0, abs(width)):
        raise RuleNotAvailable(
            f"weights sum to {math.fsum(flat_w)!r}, expected {width!r}")
    meta = RuleMeta(degree=npl.degree, dimension=npl.dimension,
                    free_value=free_value, branches=tuple(branches))
    return QuadratureRule(partition=part, request=req,
                          per_subinterval=tuple(subrules),
                          nodes=flat_x, weights=flat_w, meta=meta)


def generate(req: RuleRequest, part: Partition) -> QuadratureRule:
    """Build the requested rule, or raise an error explaining why not.

    Validation problems raise InvalidPartition / UnsupportedConfiguration;
    genuine non-existence on this partition surfaces as a NumericFailure
    subclass with the offending subinterval attached when known.
    """
    npl = plan(req, part)
    fp = req.free_parameter
    if fp.kind == "pin_node":
        free = pin_free_parameter(req, part, fp.value)
    elif fp.kind == "value":
        if fp.value != 0.0 and npl.excess == 0:
            raise UnsupportedConfiguration(
                "this rule family is fully determined; it has no free parameter")
        free = fp.value
    else:
        free = 0.0
    pieces, branches = _assemble(req.continuity, req.nodes_per_subinterval,
                                 req.family, req.middle_index, part, free)
    return _finalize(req, part, npl,
                     free if npl.excess == 1 else None, pieces, branches)


# ---------------------------------------------------------------------------
# free-parameter pinning
# ---------------------------------------------------------------------------

_PIN_TOL = 1e-12
_PIN_GRID_LO = -8.0
_PIN_GRID_HI = 8.0
_PIN_GRID_STEP = 0.125


def pin_free_parameter(req: RuleRequest, part: Partition, x_target: float) -> float:
    """Free-parameter value that places a node at ``x_target``.

    Scans a deterministic grid of parameter values, then refines by
    bisection (with a final secant polish) either a sign change of the
    nearest-node displacement or an existence boundary toward which the
    displacement vanishes.  Returns the first solution in scan order;
    raises TargetUnreachable if the scan finds none.
    """
    npl = plan(req, part)
    if npl.excess != 1:
        raise UnsupportedConfiguration(
            "this rule family is fully determined; there is nothing to pin")
    x_t = float(x_target)
    if not (part.a <= x_t <= part.b):
        raise TargetUnreachable(
            f"pin target {x_t} lies outside [{part.a}, {part.b}]")

    def displacement(v: float) -> Optional[float]:
        # raw (unsnapped) positions keep this strictly monotone through 0
        try:
            pieces, _ = _assemble(req.continuity, req.nodes_per_subinterval,
                                  req.family, req.middle_index, part, v,
                                  snap=False)
        except NumericFailure:
            return None
        flat = np.concatenate([px for px, _ in pieces])
        if flat.size == 0 or (flat.size > 1 and not np.all(np.diff(flat) > 0.0)):
            return None
        return float(flat[np.argmin(np.abs(flat - x_t))] - x_t)

    def refine(lo: float, d_lo: float, hi: float) -> Optional[float]:
        # invariant: lo is feasible with displacement d_lo; hi is either
        # infeasible or has the opposite displacement sign.  Bisect until
        # the bracket collapses; the solution may sit on the existence
        # boundary itself, so no sign change is ever required.
        best_v, best_d = lo, abs(d_lo)
        d_hi = None
        for _ in range(120):
            mid = 0.5 * (lo + hi)
            if mid == lo or mid == hi:
                break
            d_mid = displacement(mid)
            if d_mid is not None and abs(d_mid) < best_d:
                best_v, best_d = mid, abs(d_mid)
                if best_d == 0.0:
                    return mid
            if d_mid is None or (d_mid > 0.0) != (d_lo > 0.0):
                hi, d_hi = mid, d_mid
            else:
                lo, d_lo = mid, d_mid
        if d_hi is not None and d_hi != d_lo:
            v_sec = lo - d_lo * (hi - lo) / (d_hi - d_lo)
            d_sec = displacement(v_sec)
            if d_sec is not None and abs(d_sec) < best_d:
                best_v, best_d = v_sec, abs(d_sec)
        return best_v if best_d <= _PIN_TOL else None

    grid = np.arange(_PIN_GRID_LO, _PIN_GRID_HI + 0.5 * _PIN_GRID_STEP, _PIN_GRID_STEP)
    prev_v = None
    prev_d = None
    for v in grid:
        d = displacement(float(v))
        if d is not None and abs(d) <= _PIN_TOL:
            return float(v)
        if prev_v is not None:
            solved = None
            if prev_d is not None and d is not None and (d > 0.0) != (prev_d > 0.0):
                solved = refine(prev_v, prev_d, float(v))
            elif prev_d is not None and d is None:
                solved = refine(prev_v, prev_d, float(v))
            elif prev_d is None and d is not None:
                solved = refine(float(v), d, prev_v)
            if solved is not None:
                return solved
        prev_v, prev_d = float(v), d
    raise TargetUnreachable(
        f"no scanned free-parameter value places a node at {x_t}")
