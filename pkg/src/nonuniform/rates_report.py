"""Rate estimates for uniform, layered and flipping BCH codes of length 255, and
the bound curves they are compared against.

Layered and flipping rates are *estimates*: the weight distribution of a
(255, k) BCH code is taken as 2^k C(n, i) / 2^n.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .bounds import m_alpha, m_beta
from .gf2m_bch import bch_dimension_table, dimension_for
from .math_core import binomial, log2_rational
from .tolerance import ChannelModel, t_down_profile, t_l_profile

BCH_N = 255
BCH_M = 8
# p grid shared by the figure sweeps
DEFAULT_P_GRID = tuple(round(0.005 * i, 3) for i in range(1, 31))
CSV_HEADER = ("scheme", "p", "q_e", "n", "rate")


@lru_cache(maxsize=None)
def _table() -> tuple[tuple[int, int], ...]:
    return tuple(bch_dimension_table(BCH_M))


def _k_for(t: int) -> int | None:
    return dimension_for(t, list(_table()), BCH_N)


@lru_cache(maxsize=None)
def _profile(n: int, p: float, q_e: float):
    return t_down_profile(ChannelModel(n, p, q_e))


def _check_n(n: int):
    if n != BCH_N:
        raise ValueError("BCH rate estimates are defined for n = 255 only")


def uniform_bch_rate(n: int, p: float, q_e: float) -> float:
    _check_n(n)
    t = _profile(n, p, q_e)[n]
    k = _k_for(t)
    return 0.0 if k is None else k / n


def layered_bch_rate_estimate(n: int, p: float, q_e: float) -> float:
    """log2(sum_w 2^k(w) C(n,w) / 2^n) / n with k(w) the dimension for t_l(w).

    Weights whose layer needs more correction than any listed code contribute
    nothing.
    """
    _check_n(n)
    tl = t_l_profile(_profile(n, p, q_e))
    total = 0
    for w in range(n + 1):
        k = _k_for(tl[w])
        if k is not None:
            total += binomial(n, w) << k
    if total == 0:
        return 0.0
    return max(0.0, (log2_rational(total) - n) / n)


def flipping_bch_rate_estimate(n: int, p: float, q_e: float) -> float:
    """(k - 1)/n for the code correcting t' = t_down(floor(n/2)) errors.

    Every primitive length-255 BCH code contains the all-ones word, so the
    heaviest transmitted word has weight floor(n/2).
    """
    _check_n(n)
    t = _profile(n, p, q_e)[n // 2]
    k = _k_for(t)
    return 0.0 if k is None else (k - 1) / n


@dataclass
class RateCurve:
    n: int
    q_e: float
    points: dict[str, list[tuple[float, float]]] = field(default_factory=dict)

    def add(self, scheme: str, p: float, rate: float):
        self.points.setdefault(scheme, []).append((p, rate))

    def rates(self, scheme: str) -> np.ndarray:
        return np.array([r for _, r in self.points[scheme]])

    def is_nonincreasing(self, scheme: str, jitter: float = 1e-9) -> bool:
        return bool((np.diff(self.rates(scheme)) <= jitter).all())

    def rows(self):
        for scheme, pts in self.points.items():
            for p, r in pts:
                yield scheme, p, self.q_e, self.n, r

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for scheme, p, q_e, n, r in self.rows():
            w.writerow([scheme, f"{p:g}", f"{q_e:g}", n, f"{r:.10f}"])
        return buf.getvalue()


def _bound_rates(n: int, p: float, q_e: float) -> tuple[float, float]:
    prof = _profile(n, p, q_e)
    beta = m_beta(prof).rate
    t = prof[n]
    if t == 0:
        alpha = 1.0
    elif n > 2 * t:
        alpha = m_alpha(n, t).rate
    else:
        alpha = 0.0
    return alpha, beta


def bound_rate_curves(n: int, q_e: float, p_grid=DEFAULT_P_GRID) -> RateCurve:
    """log2(M_alpha)/n (uniform, t = t_down(n)) and log2(M_beta)/n (nonuniform)."""
    if n > 512:
        raise ValueError("bound curves limited to n <= 512")
    curve = RateCurve(n, q_e)
    for p in p_grid:
        a, b = _bound_rates(n, p, q_e)
        curve.add("uniform-bound", p, a)
        curve.add("nonuniform-bound", p, b)
    return curve


def bch_rate_curves(q_e: float, p_grid=DEFAULT_P_GRID) -> RateCurve:
    curve = RateCurve(BCH_N, q_e)
    for p in p_grid:
        curve.add("uniform-bch", p, uniform_bch_rate(BCH_N, p, q_e))
        curve.add("layered-bch-estimate", p, layered_bch_rate_estimate(BCH_N, p, q_e))
        curve.add("flipping-bch-estimate", p, flipping_bch_rate_estimate(BCH_N, p, q_e))
    return curve


def figure_curves(q_e: float, p_grid=DEFAULT_P_GRID) -> dict[str, RateCurve]:
    """The three comparison sets: bounds, uniform vs layered, layered vs flipping."""
    bounds = bound_rate_curves(BCH_N, q_e, p_grid)
    codes = bch_rate_curves(q_e, p_grid)
    fig5, fig7 = RateCurve(BCH_N, q_e), RateCurve(BCH_N, q_e)
    for s in ("uniform-bch", "layered-bch-estimate"):
        fig5.points[s] = codes.points[s]
    for s in ("layered-bch-estimate", "flipping-bch-estimate"):
        fig7.points[s] = codes.points[s]
    return {"fig3": bounds, "fig5": fig5, "fig7": fig7}


def log2_safe(x) -> float:
    return -math.inf if x <= 0 else log2_rational(x)
