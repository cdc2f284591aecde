"""Tolerance profiles: how many errors a codeword of each weight must survive.

A profile is a dense step function over weights ``0..n``. The Z-channel profile
comes from the binomial tail against the reliability target ``1 - q_e``; the
remaining functions derive layer assignments and the transforms that turn a
two-sided requirement (drops and raises) into a drops-only one.
"""

from __future__ import annotations

import enum
import json
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .math_core import Real, binomial_pmf_terms, is_exact, to_fraction

# float tails closer than this to the threshold are re-decided exactly
_TIE_BAND = 1e-9


class Direction(str, enum.Enum):
    NON_DECREASING = "NonDecreasing"
    NON_INCREASING = "NonIncreasing"
    ANY = "Any"


class EmptyPreimageWarning(UserWarning):
    """The set defining a transformed profile value was empty at some weight."""


@dataclass(frozen=True)
class ToleranceProfile:
    n: int
    values: tuple[int, ...]
    direction: Direction = Direction.NON_DECREASING

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "direction", Direction(self.direction))
        if len(vals) != self.n + 1:
            raise ValueError(f"profile for n={self.n} needs {self.n + 1} values, got {len(vals)}")
        if any(v < 0 or v > self.n for v in vals):
            raise ValueError("profile values must lie in [0, n]")
        diffs = np.diff(vals)
        if self.direction is Direction.NON_DECREASING and (diffs < 0).any():
            raise ValueError("values are not nondecreasing")
        if self.direction is Direction.NON_INCREASING and (diffs > 0).any():
            raise ValueError("values are not nonincreasing")

    @classmethod
    def constant(cls, n: int, c: int, direction=Direction.NON_DECREASING) -> "ToleranceProfile":
        return cls(n, (c,) * (n + 1), direction)

    @classmethod
    def from_values(cls, values: Sequence[int], direction=None) -> "ToleranceProfile":
        vals = tuple(int(v) for v in values)
        if direction is None:
            d = np.diff(vals)
            direction = Direction.NON_DECREASING if (d >= 0).all() else (
                Direction.NON_INCREASING if (d <= 0).all() else Direction.ANY)
        return cls(len(vals) - 1, vals, direction)

    def __call__(self, w: int) -> int:
        return self.values[w]

    def __getitem__(self, w: int) -> int:
        return self.values[w]

    def __len__(self) -> int:
        return self.n + 1

    def __add__(self, other: "ToleranceProfile") -> "ToleranceProfile":
        if other.n != self.n:
            raise ValueError("profiles have different lengths")
        vals = [min(a + b, self.n) for a, b in zip(self.values, other.values)]
        return ToleranceProfile.from_values(vals)

    def as_array(self) -> np.ndarray:
        return np.array(self.values, dtype=np.int64)

    def is_unit_step(self) -> bool:
        """Consecutive values differ by 0 or 1 (the shape of i.i.d. Z-channel profiles)."""
        return all(b - a in (0, 1) for a, b in zip(self.values, self.values[1:]))

    def to_dict(self) -> dict:
        return {"n": self.n, "direction": self.direction.value, "values": list(self.values)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "ToleranceProfile":
        return cls(int(d["n"]), tuple(d["values"]), Direction(d.get("direction", "Any")))

    @classmethod
    def from_json(cls, s: str) -> "ToleranceProfile":
        return cls.from_dict(json.loads(s))


@dataclass(frozen=True)
class ChannelModel:
    """i.i.d. binary asymmetric channel plus the per-codeword failure budget.

    Probabilities may be floats or Fractions; when all three are exact the
    profile thresholds are decided in rational arithmetic.
    """

    n: int
    p_down: Real
    q_e: Real
    p_up: Real = 0.0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be >= 0")
        if not 0 < self.q_e < 1:
            raise ValueError("q_e must lie in (0, 1)")
        if not 0 <= self.p_down < 1:
            raise ValueError("p_down must lie in [0, 1)")
        if not 0 <= self.p_up <= self.p_down:
            raise ValueError("need 0 <= p_up <= p_down")

    @classmethod
    def from_strings(cls, n: int, p_down: str, q_e: str, p_up: str = "0") -> "ChannelModel":
        return cls(n, to_fraction(p_down), to_fraction(q_e), to_fraction(p_up))

    @property
    def is_z_channel(self) -> bool:
        return self.p_up == 0

    @property
    def exact(self) -> bool:
        return is_exact(self.p_down, self.q_e, self.p_up)


def _first_reaching(pmf, target: Real) -> int:
    """Smallest s with sum(pmf[:s+1]) >= target, or the last index if never."""
    acc = Fraction(0) if isinstance(target, Fraction) else 0.0
    s = -1
    for s, term in enumerate(pmf):
        acc += term
        if acc >= target:
            return s
    return s


def _float_decision_is_safe(pmf: list, target: float, s: int) -> bool:
    head = math.fsum(pmf[: s + 1])
    prev = math.fsum(pmf[:s]) if s > 0 else 0.0
    return abs(head - target) > _TIE_BAND and abs(prev - target) > _TIE_BAND


def _conv(a: list, b: list) -> list:
    zero = a[0] * 0
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _pmf_down(w: int, p: Real):
    if isinstance(p, Fraction):
        return _exact_terms(w, p)
    return binomial_pmf_terms(w, p)


def _exact_terms(w: int, p: Fraction):
    """Lazy exact binomial pmf via the ratio recurrence."""
    if p == 0:
        yield Fraction(1)
        return
    term = (1 - p) ** w
    ratio = p / (1 - p)
    for i in range(w + 1):
        yield term
        term = term * (w - i) / (i + 1) * ratio


def _pmf_total(w: int, n: int, p_down: Real, p_up: Real) -> list:
    return _conv(binomial_pmf_terms(w, p_down), binomial_pmf_terms(n - w, p_up))


def _threshold_profile(ch: ChannelModel, pmf_fn) -> list[int]:
    exact = ch.exact
    target = 1 - ch.q_e
    out = []
    for w in range(ch.n + 1):
        if exact:
            s = _first_reaching(pmf_fn(w, Fraction(ch.p_down), Fraction(ch.p_up)), target)
        else:
            pmf = pmf_fn(w, float(ch.p_down), float(ch.p_up))
            tf = float(target)
            s = _first_float(pmf, tf)
            if not _float_decision_is_safe(pmf, tf, s):
                pmf_q = pmf_fn(w, Fraction(ch.p_down), Fraction(ch.p_up))
                s = _first_reaching(pmf_q, 1 - Fraction(ch.q_e))
        out.append(s)
    return out


def _first_float(pmf: list, target: float) -> int:
    cum = np.cumsum(pmf)
    hits = np.nonzero(cum >= target)[0]
    return int(hits[0]) if hits.size else len(pmf) - 1


def t_down_profile(ch: ChannelModel) -> ToleranceProfile:
    """Minimal number of drops each weight must survive on a Z-channel.

    ``values[w] = min{s : P(at most s of w ones drop) >= 1 - q_e}``.
    """
    if not ch.is_z_channel:
        raise ValueError("t_down_profile needs a Z-channel (p_up = 0)")
    vals = _threshold_profile(ch, lambda w, pd, pu: _pmf_down(w, pd))
    return ToleranceProfile(ch.n, tuple(min(v, w) for w, v in enumerate(vals)))


def t_f_profile(ch: ChannelModel) -> ToleranceProfile:
    """Total (drops + raises) errors a weight-w codeword must survive."""
    if ch.is_z_channel:
        return t_down_profile(ch)
    vals = _threshold_profile(ch, lambda w, pd, pu: _pmf_total(w, ch.n, pd, pu))
    return ToleranceProfile.from_values(vals)


def t_l_profile(t_down: ToleranceProfile) -> ToleranceProfile:
    """Layer assignment ``t_l(w) = t_down(max{s : s - t_down(s) <= w})``."""
    if t_down.direction is not Direction.NON_DECREASING:
        raise ValueError("t_l_profile needs a nondecreasing profile")
    n, t = t_down.n, t_down.values
    reach = [s - t[s] for s in range(n + 1)]
    vals = []
    for w in range(n + 1):
        top = max(s for s in range(n + 1) if reach[s] <= w)
        vals.append(t[top])
    return ToleranceProfile(n, tuple(vals))


def _check_pair(t_down: ToleranceProfile, t_up: ToleranceProfile):
    if t_down.n != t_up.n:
        raise ValueError("profiles have different lengths")
    if t_down.direction is not Direction.NON_DECREASING:
        raise ValueError("t_down must be nondecreasing")
    if t_up.direction is not Direction.NON_INCREASING:
        raise ValueError("t_up must be nonincreasing")


def overline_t_up(t_down: ToleranceProfile, t_up: ToleranceProfile) -> ToleranceProfile:
    """``t_up(max{s : t_up(s) + s < w - t_down(w)})``, pointwise >= t_up.

    The inequality is strict: a light word that raises its full budget can
    land exactly where a heavy word lands after dropping its full budget, and
    that lighter weight must stay outside the set. Where the set is empty
    (very light words) the value falls back to ``t_up(0)``, the largest
    value, and an :class:`EmptyPreimageWarning` is issued.
    """
    _check_pair(t_down, t_up)
    n, up, down = t_up.n, t_up.values, t_down.values
    vals, empty = [], []
    for w in range(n + 1):
        cands = [s for s in range(n + 1) if up[s] + s < w - down[w]]
        if cands:
            vals.append(up[max(cands)])
        else:
            vals.append(up[0])
            empty.append(w)
    if empty:
        warnings.warn(f"empty preimage at weights {empty}; used t_up(0)", EmptyPreimageWarning, stacklevel=2)
    return ToleranceProfile(n, tuple(vals), Direction.NON_INCREASING)


def underline_t_up(t_down: ToleranceProfile, t_up: ToleranceProfile) -> ToleranceProfile:
    """``t_up(max{s : s - t_up(s) - t_down(s) <= w})``, pointwise <= t_up.

    ``s`` ranges over the weights whose two-sided error ball can still reach
    weight ``w``; taking the heaviest one gives the smallest raise budget.
    """
    _check_pair(t_down, t_up)
    n, up, down = t_up.n, t_up.values, t_down.values
    vals = []
    for w in range(n + 1):
        top = max(s for s in range(n + 1) if s - up[s] - down[s] <= w)
        vals.append(up[top])
    return ToleranceProfile(n, tuple(vals), Direction.NON_INCREASING)


def monotone_envelope(t: ToleranceProfile | Sequence[int]):
    """Smallest nondecreasing profile lying on or above ``t`` (running maximum).

    A profile gives a profile; a bare sequence gives a tuple, since such input
    need not respect the ``values <= n`` bound of a profile.
    """
    vals = t.values if isinstance(t, ToleranceProfile) else tuple(int(v) for v in t)
    env = tuple(int(v) for v in np.maximum.accumulate(vals))
    if isinstance(t, ToleranceProfile):
        return ToleranceProfile(t.n, env)
    return env
