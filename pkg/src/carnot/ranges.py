"""Exponent-range arithmetic for the cohomology vanishing theorems.

All comparisons are exact: exponents are positive rationals or the
infinity sentinel INF (1/INF = 0).  For a Carnot weight table the
classifier decides a (p, q, k) query by

  vanishes:        1 < p, q < inf  and  1/p - 1/q >= dN_max(k)/Q
  does not vanish: 1 <= p, q <= inf and  1/p - 1/q <  dN_min(k)/Q

and reports the uncovered gap interval otherwise.  Boundary exponents
(p or q equal to 1 or inf) never satisfy the vanishing side conditions;
such queries fall through to Unknown with a note rather than being
silently normalized.
"""

from dataclasses import dataclass

from .rationals import Rat, ZERO, ONE, rat


class _Infinity:
    """Positive infinity for Lebesgue exponents (comparison-free sentinel)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"


INF = _Infinity()

VANISHES = "vanishes"
DOES_NOT_VANISH = "does_not_vanish"
UNKNOWN = "unknown"


class InvalidExponents(Exception):
    """p or q below 1: not a Lebesgue exponent."""


class UndefinedWeights(Exception):
    """The table has no cohomology in a degree the query needs."""


def parse_exponent(text):
    if isinstance(text, _Infinity):
        return INF
    if isinstance(text, str) and text.strip().lower() in ("inf", "infinity", "oo"):
        return INF
    return rat(text)


def _check_exponent(name, value):
    if value is INF:
        return
    if not isinstance(value, type(ONE)):
        value = rat(value)
    if value < 1:
        raise InvalidExponents(f"{name} = {value} is below 1")


def _inv(value):
    return ZERO if value is INF else ONE / value


def gap(p, q):
    """1/p - 1/q with 1/inf = 0."""
    return _inv(p) - _inv(q)


@dataclass(frozen=True)
class RangeQuery:
    degree: int
    p: object  # Rat or INF
    q: object

    @classmethod
    def of(cls, degree, p, q):
        p = parse_exponent(p)
        q = parse_exponent(q)
        _check_exponent("p", p)
        _check_exponent("q", q)
        return cls(degree, p, q)


@dataclass(frozen=True)
class Classification:
    verdict: str               # VANISHES / DOES_NOT_VANISH / UNKNOWN
    gap: Rat
    vanish_threshold: Rat      # dN_max(k)/Q
    nonvanish_threshold: Rat   # dN_min(k)/Q
    note: str = ""

    @property
    def unknown_interval(self):
        if self.verdict != UNKNOWN:
            return None
        return (self.nonvanish_threshold, self.vanish_threshold)


def _thresholds(table, k):
    if not 1 <= k <= table.n:
        raise ValueError(f"degree must be in 1..{table.n}")
    dmax = table.delta_n_max(k)
    dmin = table.delta_n_min(k)
    if dmax is None or dmin is None:
        raise UndefinedWeights(f"weights undefined around degree {k}")
    q = table.homogeneous_dimension
    return dmax / q, dmin / q


def classify(table, query):
    """Decide a (p, q) query in one degree against a Carnot weight table."""
    if not table.grading_is_carnot:
        raise ValueError("classification requires a Carnot grading table")
    p, q, k = query.p, query.q, query.degree
    _check_exponent("p", p)
    _check_exponent("q", q)
    vanish_at, nonvanish_at = _thresholds(table, k)
    g = gap(p, q)
    if g < nonvanish_at:  # side conditions 1 <= p, q <= inf always hold here
        return Classification(DOES_NOT_VANISH, g, vanish_at, nonvanish_at)
    interior = p is not INF and q is not INF and p > 1 and q > 1
    if g >= vanish_at:
        if interior:
            return Classification(VANISHES, g, vanish_at, nonvanish_at)
        return Classification(
            UNKNOWN, g, vanish_at, nonvanish_at,
            note="gap reaches the vanishing threshold but the side condition "
                 "1 < p, q < inf fails")
    return Classification(UNKNOWN, g, vanish_at, nonvanish_at,
                          note="gap falls in the uncovered interval")


def ws_lower_bound(table, k):
    """Computable lower bound max(1, w_min(k) - w_max(k-1)) for the
    homogeneous-pairing invariant in degree k."""
    if not 1 <= k <= table.n:
        raise ValueError(f"degree must be in 1..{table.n}")
    lo, hi = table.w_min(k), table.w_max(k - 1)
    if lo is None or hi is None:
        raise UndefinedWeights(f"weights undefined around degree {k}")
    bound = lo - hi
    return bound if bound > 1 else ONE


def best_nonvanishing(tables, k):
    """Largest non-vanishing threshold ws_bound(k)/T over several gradings
    of one algebra.  Returns (threshold, index of the witnessing table).
    Side conditions for the winning bound: 1 <= p, q < inf.
    """
    if not tables:
        raise ValueError("no tables given")
    betti = tables[0].betti
    for t in tables[1:]:
        if t.betti != betti:
            raise ValueError("tables do not grade the same algebra")
    best = None
    best_index = None
    for i, t in enumerate(tables):
        value = ws_lower_bound(t, k) / t.homogeneous_dimension
        if best is None or value > best:
            best, best_index = value, i
    return best, best_index


def lp_membership(lam, w, t, p):
    """Sufficient condition lam - w + T/p < 0 for L^p integrability at
    infinity of a homogeneous form of degree lam and weight >= w."""
    lam, w, t = rat(lam), rat(w), rat(t)
    if t <= 0:
        raise ValueError("homogeneous dimension must be positive")
    p = parse_exponent(p)
    _check_exponent("p", p)
    return lam - w + t * _inv(p) < 0


def pairing_gap_bound(w, w_prime, t):
    """Non-vanishing gap bound (w + w' - T)/T from the pairing construction."""
    w, w_prime, t = rat(w), rat(w_prime), rat(t)
    if t <= 0:
        raise ValueError("homogeneous dimension must be positive")
    return (w + w_prime - t) / t


@dataclass(frozen=True)
class RangeRow:
    degree: int
    vanish_threshold: Rat      # needs 1 < p, q < inf (None if not Carnot)
    nonvanish_threshold: Rat   # valid for 1 <= p, q <= inf
    ws_threshold: Rat          # valid for 1 <= p, q < inf


def range_report(table, degrees=None):
    """Threshold rows per degree: vanishing, non-vanishing, ws bound."""
    rows = []
    if degrees is None:
        degrees = range(1, table.n + 1)
    for k in degrees:
        ws = ws_lower_bound(table, k) / table.homogeneous_dimension
        if table.grading_is_carnot:
            vmax, vmin = _thresholds(table, k)
        else:
            vmax, vmin = None, None
        rows.append(RangeRow(k, vmax, vmin, ws))
    return rows
