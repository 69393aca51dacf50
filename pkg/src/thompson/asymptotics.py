"""Exact element counts against their asymptotic growth, in high precision.

Stirling's formula gives the constants the growth shapes leave out:

    C_k   ~ 4^k / (sqrt(pi) k^(3/2))
    t_k   = (k+1) C_k^2   ~ (1/pi) 16^k / k^2
    v_k   = (k+1)! C_k^2  ~ sqrt(2/pi) (16/e)^k k^(k - 3/2)

so ``t_k k^2 / 16^k -> 1/pi`` and ``v_k / ((16/e)^k k^(k-3/2)) -> sqrt(2/pi)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import mpmath

from .density import density_ratio_formula_T, density_ratio_formula_V
from .freeness import pingpong_ratio_T, pingpong_ratio_V
from .trees import catalan

PREC_BITS = 160

LIMIT_T = "1/pi"
LIMIT_V = "sqrt(2/pi)"


def _ctx():
    return mpmath.workprec(PREC_BITS)


def element_count_T(k: int) -> int:
    return (k + 1) * catalan(k) ** 2


def element_count_V(k: int) -> int:
    return factorial(k + 1) * catalan(k) ** 2


def log_count_T(k: int):
    """``ln t_k`` from log-Gamma, without forming the integer."""
    with _ctx():
        return mpmath.log(k + 1) + 2 * _log_catalan(k)


def log_count_V(k: int):
    with _ctx():
        return mpmath.loggamma(k + 2) + 2 * _log_catalan(k)


def _log_catalan(k: int):
    return mpmath.loggamma(2 * k + 1) - 2 * mpmath.loggamma(k + 1) - mpmath.log(k + 1)


def exact_log(x: int):
    with _ctx():
        return mpmath.log(mpmath.mpf(x))


@dataclass(frozen=True)
class GrowthSample:
    k: int
    exact_log: object
    model_log: object

    @property
    def gap(self):
        with _ctx():
            return self.exact_log - self.model_log

    @property
    def ratio(self):
        with _ctx():
            return mpmath.exp(self.gap)

    def row(self) -> dict:
        return {"k": self.k, "exact_log": mpmath.nstr(self.exact_log, 20),
                "model_log": mpmath.nstr(self.model_log, 20),
                "ratio": mpmath.nstr(self.ratio, 15)}


def model_log_T(k: int):
    """``ln(16^k / k^2)``."""
    with _ctx():
        return k * mpmath.log(16) - 2 * mpmath.log(k)


def model_log_V(k: int):
    """``ln((16/e)^k k^(k - 3/2))``."""
    with _ctx():
        return k * (mpmath.log(16) - 1) + (k - mpmath.mpf(3) / 2) * mpmath.log(k)


def growth_sample_T(k: int) -> GrowthSample:
    if k < 1:
        raise ValueError("needs k >= 1")
    return GrowthSample(k, exact_log(element_count_T(k)), model_log_T(k))


def growth_sample_V(k: int) -> GrowthSample:
    if k < 1:
        raise ValueError("needs k >= 1")
    return GrowthSample(k, exact_log(element_count_V(k)), model_log_V(k))


def growth_ratio_T(k: int):
    """``t_k k^2 / 16^k``; tends to ``1/pi``."""
    return growth_sample_T(k).ratio


def growth_ratio_V(k: int):
    """``v_k / ((16/e)^k k^(k - 3/2))``; tends to ``sqrt(2/pi)``."""
    return growth_sample_V(k).ratio


def limit_constant(group: str):
    with _ctx():
        if group == "T":
            return 1 / mpmath.pi
        if group == "V":
            return mpmath.sqrt(2 / mpmath.pi)
    raise ValueError(group)


def growth_series(group: str, ks) -> list:
    f = growth_sample_T if group == "T" else growth_sample_V
    return [f(k) for k in ks]


# ---------------------------------------------------------------------------
# spheres of pairs


@dataclass(frozen=True)
class SphereSample:
    n: int
    arity: int
    exact_log: object
    model_log: object

    @property
    def gap(self):
        with _ctx():
            return self.exact_log - self.model_log

    @property
    def log_ratio(self):
        """``ln(sphere) / ln(model)``; tends to 1."""
        with _ctx():
            return self.exact_log / self.model_log

    def row(self) -> dict:
        return {"k": self.n, "exact_log": mpmath.nstr(self.exact_log, 20),
                "model_log": mpmath.nstr(self.model_log, 20),
                "ratio": mpmath.nstr(mpmath.exp(self.gap), 15)}


def sphere_growth_check(group: str, ns, k_arity: int = 2) -> list:
    """Exact ``ln |Sph_k(n)|`` against ``k`` times the single-element model.

    For pairs of T elements the model is ``16^(2n) / n^4`` and the gap tends
    to ``2 ln(1/pi)``; for V it is ``(16/e)^(2n) n^(2n - 3)`` with gap
    tending to ``ln(2/pi)``.
    """
    count = element_count_T if group == "T" else element_count_V
    model = model_log_T if group == "T" else model_log_V
    out = []
    for n in ns:
        with _ctx():
            out.append(SphereSample(n, k_arity, exact_log(count(n) ** k_arity),
                                    k_arity * model(n)))
    return out


def sphere_gap_limit(group: str, k_arity: int = 2):
    with _ctx():
        return k_arity * mpmath.log(limit_constant(group))


# ---------------------------------------------------------------------------
# the three limits


@dataclass(frozen=True)
class LimitRow:
    name: str
    n: int
    value: Fraction
    limit: Fraction

    @property
    def gap(self):
        with _ctx():
            return abs(mpmath.mpf(self.value.numerator) / self.value.denominator
                       - mpmath.mpf(self.limit.numerator) / self.limit.denominator)

    @property
    def relative_gap(self):
        with _ctx():
            return self.gap / (mpmath.mpf(self.limit.numerator) / self.limit.denominator)

    def row(self) -> dict:
        with _ctx():
            v = mpmath.mpf(self.value.numerator) / self.value.denominator
        return {"name": self.name, "n": self.n, "value": mpmath.nstr(v, 12),
                "limit": str(self.limit), "gap": mpmath.nstr(self.gap, 6),
                "relative_gap": mpmath.nstr(self.relative_gap, 6)}


LIMITS = (
    ("T north-south family", density_ratio_formula_T, Fraction(1, 16)),
    ("V north-south family", density_ratio_formula_V, Fraction(1, 16)),
    ("T ping-pong pairs", pingpong_ratio_T, Fraction(1, 2 ** 24)),
    ("V ping-pong pairs", pingpong_ratio_V, Fraction(1, 2 ** 24)),
)


def limit_table(ns=(10, 50, 200, 1000)) -> list:
    return [LimitRow(name, n, f(n), lim) for name, f, lim in LIMITS for n in ns]
