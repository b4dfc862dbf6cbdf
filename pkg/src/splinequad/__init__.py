"""Gaussian and one-parameter optimal quadrature rules for spline spaces
on arbitrary partitions, plus their uniform-grid interior limits.

The short tour:

>>> from splinequad import Partition, RuleRequest, generate
>>> part = Partition(0.0, 3.0, (1.0, 1.0, 1.0))
>>> req = RuleRequest(continuity=1, nodes_per_subinterval=2, middle_index=2)
>>> rule = generate(req, part)
>>> rule.meta.degree, len(rule.nodes)
(5, 7)

See splinequad.splinecheck for certifying a rule against the spline
space it claims to integrate, and splinequad.realline for the interior
limit rules.
"""

from .errors import (
    ConvergenceFailure,
    DegenerateDenominator,
    InvalidPartition,
    NegativeDiscriminant,
    NoConvergence,
    NumericFailure,
    QuadratureError,
    RootCountMismatch,
    RuleNotAvailable,
    TargetUnreachable,
    UnsupportedConfiguration,
)
from .engine import (
    FreeParameter,
    NodePlan,
    Partition,
    QuadratureRule,
    RuleMeta,
    RuleRequest,
    SubintervalRule,
    generate,
    pin_free_parameter,
    plan,
)
from .family_c0 import ParamC0, ReferenceRule
from .family_c1 import ParamC1
from .realline import LimitRule, fixed_point, realline_rule_c0, realline_rule_c1
from .splinecheck import ResidualReport, SplineSpace, residuals

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "QuadratureError", "InvalidPartition", "UnsupportedConfiguration",
    "NumericFailure", "RootCountMismatch", "ConvergenceFailure",
    "NegativeDiscriminant", "DegenerateDenominator", "RuleNotAvailable",
    "TargetUnreachable", "NoConvergence",
    # engine
    "Partition", "FreeParameter", "RuleRequest", "NodePlan", "SubintervalRule",
    "RuleMeta", "QuadratureRule", "plan", "generate", "pin_free_parameter",
    # families
    "ParamC0", "ParamC1", "ReferenceRule",
    # real line
    "LimitRule", "fixed_point", "realline_rule_c0", "realline_rule_c1",
    # certification
    "SplineSpace", "ResidualReport", "residuals",
]
