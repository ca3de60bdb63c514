"""Exact counts of polynomial congruences mod p^i and closed forms for them.

Series and closed forms are plain dicts in the same JSON schema the
``zetacount`` command line tool reads and writes.
"""

import json

from . import _zetacount as _core
from ._zetacount import BudgetExceeded, ParseError, PreconditionError

__all__ = [
    "BudgetExceeded",
    "ParseError",
    "PreconditionError",
    "closed_form",
    "count",
    "evaluate",
    "fit",
    "fixture_names",
    "fixture_series",
    "series_counts",
    "to_p",
    "to_z",
]


def count(poly, p, max_i, naive=False, node_budget=10_000_000, eval_budget=100_000_000, threads=1):
    """M_0..M_max_i for the congruence poly = 0 mod p^i."""
    raw = _core.count(poly, str(p), max_i, naive, node_budget, eval_budget, threads)
    return [int(x) for x in raw]


def fit(counts, p, n, factors, degree_bound=None, slack=5):
    """Fit P(t) = B(t) / prod(1 - p^-nu t^N); returns (series, warnings)."""
    if not isinstance(factors, str):
        factors = ";".join(f"{nu},{N}" for nu, N in factors)
    series, warnings = _core.fit([str(c) for c in counts], str(p), n, factors, degree_bound, slack)
    return json.loads(series), list(warnings)


def closed_form(series):
    return json.loads(_core.closed_form(json.dumps(series)))


def evaluate(closed, i):
    return int(_core.evaluate(json.dumps(closed), i))


def series_counts(series, upto):
    return [int(x) for x in _core.series_counts(json.dumps(series), upto)]


def to_z(series):
    return json.loads(_core.to_z(json.dumps(series)))


def to_p(zeta):
    return json.loads(_core.to_p(json.dumps(zeta)))


def fixture_names():
    return list(_core.fixture_names())


def fixture_series(name, p):
    return json.loads(_core.fixture_series(name, str(p)))
