"""Golden reference rules, embedded as 30-significant-digit decimals.

Both fixtures live on the same deliberately lopsided partition of [0, 9]
(lengths 1, 2, 3, 1, 1, 1, sweeps meeting at the third subinterval) and
were computed independently in 60-digit arithmetic, straight from the
closed formulae, by a pipeline that shares no code with this package.
They pin the whole stack end to end: a wrong sign anywhere in a crossing
map moves these digits.

Fixture ids are opaque tokens; they match the ``--fixture`` CLI flag.
"""

from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from .engine import FreeParameter, Partition, QuadratureRule, RuleRequest, generate

__all__ = ["Fixture", "FIXTURES", "FIXTURE_TOLERANCE", "fixture_request",
           "expected_values", "run_fixture"]

# acceptance bar for reproducing an embedded fixture
FIXTURE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class Fixture:
    id: str
    description: str
    continuity: int
    nodes_per_subinterval: int
    family: str
    middle_index: int
    free: FreeParameter
    a: float
    b: float
    lengths: Tuple[float, ...]
    # per subinterval: (node strings, weight strings)
    expected: Tuple[Tuple[Tuple[str, ...], Tuple[str, ...]], ...]


FIXTURES: Dict[str, Fixture] = {
    "5.1": Fixture(
        id="5.1",
        description="continuity-1 full rule, one node per subinterval, "
                    "free parameter at its default",
        continuity=1,
        nodes_per_subinterval=1,
        family="full",
        middle_index=3,
        free=FreeParameter.zero(),
        a=0.0,
        b=9.0,
        lengths=(1.0, 2.0, 3.0, 1.0, 1.0, 1.0),
        expected=(
            (("0.25",),
             ("0.592592592592592592592592592593",)),
            (("1.24590163934426229508196721311",),
             ("1.46854811838653222180167764935",)),
            (("3.16770110966937212125709652505", "5.58282902405192609756608104703"),
             ("2.35013464383737852528941214121", "2.08872199927045862964347505851")),
            (("6.99905923639592406240750919623",),
             ("0.997162095477486963888345651385",)),
            (("7.96739130434782608695652173913",),
             ("0.910247957842958474191904314364",)),
            (("8.75",),
             ("0.592592592592592592592592592593",)),
        ),
    ),
    "9.1": Fixture(
        id="9.1",
        description="continuity-0 half rule, two/one nodes alternating, "
                    "free parameter pinned so a node lands on x = 3",
        continuity=0,
        nodes_per_subinterval=2,
        family="half",
        middle_index=3,
        free=FreeParameter.pin(3.0),
        a=0.0,
        b=9.0,
        lengths=(1.0, 2.0, 3.0, 1.0, 1.0, 1.0),
        expected=(
            (("0.236398874298326460388169277604", "0.906458268558816396754687865253"),
             ("0.56006630848886144951744780045", "0.773267024844471883815885532884")),
            (("2.0",),
             ("1.33333333333333333333333333333",)),
            (("3.0", "4.5"),
             ("0.833333333333333333333333333333", "2.0")),
            (("6.08463764954519109257145993161", "6.84393377902623747885711149696"),
             ("0.974441463590872927244826102116", "0.692225203075793739421840564551")),
            (("7.5",),
             ("0.666666666666666666666666666667",)),
            (("8.12984378812835756567558911627", "8.77015621187164243432441088373"),
             ("0.622376773805484849714359050862", "0.544289892861181816952307615805")),
        ),
    ),
}


def fixture_request(fixture_id: str) -> Tuple[RuleRequest, Partition]:
    """The request/partition pair a fixture describes."""
    fx = FIXTURES[fixture_id]
    req = RuleRequest(continuity=fx.continuity,
                      nodes_per_subinterval=fx.nodes_per_subinterval,
                      middle_index=fx.middle_index,
                      family=fx.family,
                      free_parameter=fx.free)
    part = Partition(fx.a, fx.b, fx.lengths)
    return req, part


def expected_values(fixture_id: str) -> List[Tuple[int, np.ndarray, np.ndarray]]:
    """Expected (subinterval, nodes, weights) triples as float arrays."""
    fx = FIXTURES[fixture_id]
    out = []
    for s, (xs, ws) in enumerate(fx.expected, start=1):
        out.append((s, np.array([float(v) for v in xs]),
                    np.array([float(v) for v in ws])))
    return out


def run_fixture(fixture_id: str) -> Tuple[QuadratureRule, float]:
    """Generate a fixture's rule and return it with the worst relative
    deviation of any node or weight from the embedded decimals."""
    req, part = fixture_request(fixture_id)
    rule = generate(req, part)
    worst = 0.0
    for (s, exp_x, exp_w), got in zip(expected_values(fixture_id), rule.per_subinterval):
        assert got.index == s
        if len(exp_x) != len(got.nodes):
            raise AssertionError(
                f"fixture {fixture_id} subinterval {s}: expected {len(exp_x)} nodes, got {len(got.nodes)}")
        for e, g in zip(exp_x, got.nodes):
            worst = max(worst, abs(g - e) / max(1.0, abs(e)))
        for e, g in zip(exp_w, got.weights):
            worst = max(worst, abs(g - e) / max(1.0, abs(e)))
    return rule, float(worst)
