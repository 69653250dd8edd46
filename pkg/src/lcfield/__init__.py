"""Levi-Civita field arithmetic with explicit exactness horizons."""

from .core import (
    D,
    DEFAULT_HORIZON,
    INF,
    ONE,
    ZERO,
    Comparison,
    LCNumber,
    Order,
    add,
    compare,
    div,
    from_json,
    from_text,
    inv,
    mul,
    nth_root,
    power,
    relations,
    sign,
    std_part,
    to_json,
    to_text,
    truncate,
    valuation,
)
from .dist import (
    DiracLike,
    HeavisideFn,
    PairingReport,
    dirac_bump,
    dirac_heaviside_product_check,
    heaviside,
    moment_identity,
    pair,
    pair_derivative,
)
from .approx import RealFunctionHandle, RealPolynomial, cheb_approx, ext_polynomial, step_approx
from .lp import holder_defect, lp_norm
from .measure import (
    Interval,
    MeasurableSet,
    PiecewiseSimple,
    ae_eq,
    closed,
    integrate,
    measure,
    on,
    piecewise,
    pw_product,
)
from .parse import eval_expr, evaluate, parse
from .sequences import SequenceHandle, Verdict, inner_product, slp_norm, weak_limit
from .series import PowerSeries, definite, derivatives_at, polynomial, ps_eval

__version__ = "0.1.0"
