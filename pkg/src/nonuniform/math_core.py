"""Numeric kernel: exact binomials, rationals, binary entropy and binomial tails.

Everything that feeds a threshold comparison or a bound recursion can be run
in exact rational arithmetic (:class:`fractions.Fraction`); floats are used for
entropy, asymptotics and simulation only.
"""

from __future__ import annotations

import math
from decimal import Decimal
from fractions import Fraction
from typing import Union

Real = Union[float, Fraction]


def binomial(n: int, k: int) -> int:
    """C(n, k) as an exact integer, 0 outside ``0 <= k <= n``."""
    if n < 0:
        raise ValueError(f"binomial: n must be >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def to_fraction(value: Union[str, int, float, Fraction, Decimal]) -> Fraction:
    """Parse a probability exactly.

    Decimal strings such as ``"0.1"`` become the exact rational 1/10, not the
    nearest binary float.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(Decimal(value.strip()))
    return Fraction(value)


def is_exact(*values) -> bool:
    return all(isinstance(v, (Fraction, int)) and not isinstance(v, bool) for v in values)


def entropy(x: float) -> float:
    """Binary entropy in bits, extended by 0 outside [0, 1]."""
    x = float(x)
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def log2_rational(q: Fraction) -> float:
    """log2 of a positive rational with arbitrarily large numerator/denominator."""
    if q <= 0:
        raise ValueError("log2 of a non-positive number")
    return math.log2(q.numerator) - math.log2(q.denominator)


def binomial_pmf_terms(w: int, p: Real, upto: int | None = None) -> list:
    """Terms C(w,i) p^i (1-p)^(w-i) for i = 0..min(upto, w).

    Exact when ``p`` is a Fraction, otherwise float computed in log space so
    that large ``w`` neither overflows nor loses the small tail terms.
    """
    last = w if upto is None else min(upto, w)
    if last < 0:
        return []
    if isinstance(p, Fraction):
        q = 1 - p
        return [binomial(w, i) * p**i * q ** (w - i) for i in range(last + 1)]
    p = float(p)
    if p <= 0.0:
        return [1.0] + [0.0] * last
    if p >= 1.0:
        return [0.0] * last + [1.0] if last == w else [0.0] * (last + 1)
    lp, lq = math.log(p), math.log1p(-p)
    lw = math.lgamma(w + 1)
    return [
        math.exp(lw - math.lgamma(i + 1) - math.lgamma(w - i + 1) + i * lp + (w - i) * lq)
        for i in range(last + 1)
    ]


def binomial_tail(w: int, t: int, p: Real) -> Real:
    """P(at most t of w independent Bernoulli(p) events occur).

    Returns a Fraction when ``p`` is a Fraction, otherwise a float summed with
    :func:`math.fsum`.
    """
    if w < 0 or t < 0:
        raise ValueError("binomial_tail needs w >= 0 and t >= 0")
    if t >= w:
        return Fraction(1) if isinstance(p, Fraction) else 1.0
    terms = binomial_pmf_terms(w, p, t)
    if isinstance(p, Fraction):
        return sum(terms, Fraction(0))
    return min(1.0, math.fsum(terms))
