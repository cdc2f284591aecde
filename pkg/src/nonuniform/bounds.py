"""Upper bounds on code size: the uniform and nonuniform y-recursions, the
large-n rate bounds, and a brute-force optimum for small lengths.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .codebook import Codebook
from .math_core import binomial, entropy, log2_rational
from .tolerance import Direction, ToleranceProfile
from .words import submasks_within

log = logging.getLogger(__name__)

MAX_EXHAUSTIVE_N = 14


@dataclass(frozen=True)
class BoundReport:
    n: int
    y: tuple[Fraction, ...]
    total: Fraction
    negative: tuple[int, ...] = ()

    @property
    def rate(self) -> float:
        return log2_rational(self.total) / self.n if self.n else 0.0

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "y": [_dec(v) for v in self.y],
            "total": _dec(self.total),
            "rate": self.rate,
            "negative": list(self.negative),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _dec(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def m_alpha(n: int, t: int) -> BoundReport:
    """Kløve's almost-explicit bound on uniform codes correcting t asymmetric errors."""
    if t < 1 or n <= 2 * t:
        raise ValueError(f"m_alpha needs n > 2t >= 2, got n={n}, t={t}")
    y: list[Fraction | None] = [None] * (n + 1)
    y[0] = Fraction(1)
    for r in range(1, t + 1):
        y[r] = Fraction(0)
    for r in range(1, n // 2 - t + 1):
        acc = Fraction(binomial(n, r))
        for j in range(t):
            acc -= y[r + j] * binomial(r + j, j)
        y[t + r] = acc / binomial(t + r, t)
    for r in range(0, (n + 1) // 2):
        mirrored = y[r]
        if y[n - r] is not None and n - r != r and y[n - r] != mirrored:
            raise AssertionError(f"inconsistent symmetric assignment at {n - r}")
        y[n - r] = mirrored
    if any(v is None for v in y):
        raise AssertionError("recursion left entries unassigned")
    return BoundReport(n, tuple(y), sum(y, Fraction(0)))


def m_beta(t_down: ToleranceProfile) -> BoundReport:
    """Closed-form optimum of the weight-class LP for nonuniform codes.

    Negative intermediate values (possible only for profiles that do not come
    from a real channel) are kept in ``y`` but counted as 0 in the total.
    """
    if t_down.direction is not Direction.NON_DECREASING:
        raise ValueError("m_beta needs a nondecreasing profile")
    n, t = t_down.n, t_down.values
    if any(t[w] > w for w in range(n + 1)):
        raise ValueError("profile must satisfy t(w) <= w")
    y = [Fraction(1)]
    for r in range(1, n + 1):
        tr = t[r]
        acc = Fraction(binomial(n, r - tr))
        for j in range(1, tr + 1):
            acc -= y[r - j] * binomial(r - j, tr - j)
        y.append(acc / binomial(r, tr))
    negative = tuple(r for r, v in enumerate(y) if v < 0)
    if negative:
        log.warning("m_beta: negative y at weights %s; clamped to 0 in the total", list(negative))
    total = sum((v for v in y if v > 0), Fraction(0))
    return BoundReport(n, tuple(y), total, negative)


# ---------------------------------------------------------------------------
# large-n rate bounds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AsymptoticBounds:
    p: float
    lower_alpha: float
    upper_alpha: float
    lower_beta: float
    upper_beta: float
    s_p: float

    def to_dict(self) -> dict:
        return dict(self.__dict__)


_GOLDEN = (math.sqrt(5) - 1) / 2


def golden_max(f, lo: float, hi: float, tol: float = 1e-10, grid: int = 400) -> tuple[float, float]:
    """Maximise f on [lo, hi]: coarse grid scan, then golden-section refinement."""
    if hi <= lo:
        return lo, f(lo)
    xs = np.linspace(lo, hi, grid + 1)
    vals = [f(x) for x in xs]
    i = int(np.argmax(vals))
    a, b = xs[max(i - 1, 0)], xs[min(i + 1, grid)]
    c, d = b - _GOLDEN * (b - a), a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    x = (a + b) / 2
    best = max((f(x), x), (vals[i], xs[i]), (f(lo), lo), (f(hi), hi))
    return best[1], best[0]


def s_of_p(p: float) -> float:
    return entropy(p) / (1 - p)


def z_channel_capacity(p: float) -> float:
    """Capacity of the Z-channel with 1->0 crossover p, ``log2(1 + 2^-s(p))``."""
    return math.log2(1 + 2 ** (-s_of_p(p)))


def asymptotic_bounds(p: float) -> AsymptoticBounds:
    if not 0 < p < 1:
        raise ValueError("p must lie in (0, 1)")
    hp = entropy(p)
    lower_alpha = max(0.0, 1 - entropy(2 * p)) if p <= 0.25 else 0.0
    upper_alpha = (1 + p) * (1 - entropy(p / (1 + p)))

    def lb(theta):
        if theta >= 1:
            return 0.0
        return entropy(theta) - theta * hp - (1 - theta) * entropy(p * theta / (1 - theta))

    _, lower_beta = golden_max(lb, 0.0, 1 - p)
    _, upper_beta = golden_max(lambda th: entropy((1 - p) * th) - th * hp, 0.0, 1.0)
    return AsymptoticBounds(p, lower_alpha, upper_alpha, max(0.0, lower_beta), upper_beta, s_of_p(p))


# ---------------------------------------------------------------------------
# exhaustive optimum for small n
# ---------------------------------------------------------------------------

def conflict_bitsets(t: ToleranceProfile) -> list[int]:
    """Neighbour bitsets of the ball-intersection graph on all 2^n words.

    Balls of x != y meet iff the common lower word x & y lies in both, i.e.
    N(x, y) <= t(w(x)) and N(y, x) <= t(w(y)).
    """
    n = t.n
    words = np.arange(1 << n, dtype=np.int32)
    pop = np.array([int(w).bit_count() for w in words], dtype=np.int8)
    radius = np.asarray(t.values, dtype=np.int8)[pop]
    out = []
    chunk = max(1, (1 << 22) >> n)
    for lo in range(0, 1 << n, chunk):
        x = words[lo:lo + chunk, None]
        adj = (pop[x & ~words[None, :]] <= radius[lo:lo + chunk, None]) & (
            pop[words[None, :] & ~x] <= radius[None, :])
        for i, row in enumerate(adj):
            row[lo + i] = False
            out.append(int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little"))
    return out


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _Budget(Exception):
    pass


class _MisSolver:
    """Exact maximum independent set on int-bitset adjacency.

    Branch and bound with a greedy clique-cover upper bound, degree-ordered
    branching and deterministic lowest-index tie-breaks.
    """

    def __init__(self, nbrs: list[int], max_nodes: int | None = None):
        self.nbrs = nbrs
        self.nodes = 0
        self.max_nodes = max_nodes

    def _reduce(self, cand: int, chosen: int) -> tuple[int, int]:
        nbrs = self.nbrs
        changed = True
        while changed and cand:
            changed = False
            for v in _bits(cand):
                if not cand >> v & 1:
                    continue
                nv = nbrs[v] & cand
                if nv == 0 or nv & (nv - 1) == 0 or self._is_clique(nv, cand):
                    # v is simplicial in cand: some maximum set contains it
                    chosen |= 1 << v
                    cand &= ~(nv | 1 << v)
                    changed = True
        return cand, chosen

    def _is_clique(self, mask: int, cand: int) -> bool:
        nbrs = self.nbrs
        for u in _bits(mask):
            if (mask & ~(1 << u)) & ~nbrs[u]:
                return False
        return True

    def _clique_cover(self, cand: int) -> int:
        nbrs = self.nbrs
        cliques: list[int] = []
        rest = cand
        count = 0
        while rest:
            v = (rest & -rest).bit_length() - 1
            common = nbrs[v] & rest
            rest &= ~(1 << v)
            while common:
                u = (common & -common).bit_length() - 1
                rest &= ~(1 << u)
                common &= nbrs[u]
            count += 1
        return count

    def _greedy(self, cand: int) -> int:
        nbrs = self.nbrs
        chosen = 0
        while cand:
            best, best_deg = -1, None
            for v in _bits(cand):
                d = (nbrs[v] & cand).bit_count()
                if best_deg is None or d < best_deg:
                    best, best_deg = v, d
            chosen |= 1 << best
            cand &= ~(nbrs[best] | 1 << best)
        return chosen

    def solve(self, cand: int) -> int:
        cand, forced = self._reduce(cand, 0)
        self.best = forced | self._greedy(cand)
        self._search(cand, forced)
        return self.best

    def _search(self, cand: int, chosen: int) -> None:
        # depth-first, include branch first; pending exclude branches live on
        # an explicit stack since 2^n nested calls overflow the interpreter
        nbrs = self.nbrs
        stack = [(cand, chosen)]
        while stack:
            cand, chosen = stack.pop()
            while True:
                self.nodes += 1
                if self.max_nodes is not None and self.nodes > self.max_nodes:
                    raise _Budget
                cand, chosen = self._reduce(cand, chosen)
                size = chosen.bit_count()
                if not cand:
                    if size > self.best.bit_count():
                        self.best = chosen
                    break
                if size + self._clique_cover(cand) <= self.best.bit_count():
                    break
                v = max(_bits(cand), key=lambda u: ((nbrs[u] & cand).bit_count(), -u))
                stack.append((cand & ~(1 << v), chosen))
                cand, chosen = cand & ~(nbrs[v] | 1 << v), chosen | 1 << v


def _ball_packing_milp(t_down: ToleranceProfile, time_limit: float | None):
    """Ball packing as a 0/1 program: every word lies in at most one chosen ball."""
    from scipy.optimize import Bounds, LinearConstraint, milp
    from scipy.sparse import csr_array

    n = t_down.n
    rows, cols = [], []
    for x in range(1 << n):
        for z in submasks_within(x, n, t_down[x.bit_count()]):
            rows.append(z)
            cols.append(x)
    size = 1 << n
    a = csr_array((np.ones(len(rows)), (rows, cols)), shape=(size, size))
    options = {"disp": False}
    if time_limit is not None:
        options["time_limit"] = time_limit
    res = milp(-np.ones(size), constraints=LinearConstraint(a, -np.inf, 1),
               integrality=np.ones(size), bounds=Bounds(0, 1), options=options)
    if res.status != 0:
        raise TimeoutError(f"MILP did not prove optimality: {res.message}")
    return [x for x in range(size) if res.x[x] > 0.5]


def exhaustive_optimal_code(t_down: ToleranceProfile, engine: str = "auto",
                            max_nodes: int = 200_000, time_limit: float | None = None) -> tuple[int, Codebook]:
    """Largest code whose asymmetric balls under ``t_down`` are pairwise disjoint.

    ``engine`` is "bnb" (bitset branch and bound on the ball-intersection
    graph), "milp" (HiGHS on the ball-packing program) or "auto", which runs
    the branch and bound up to ``max_nodes`` nodes and then hands over to
    HiGHS. Both engines are exact; a ``TimeoutError`` means optimality was
    not proved within the budget. Feasible only for small n.
    """
    n = t_down.n
    if n > MAX_EXHAUSTIVE_N:
        raise ValueError(f"exhaustive search limited to n <= {MAX_EXHAUSTIVE_N}")
    if engine not in ("auto", "bnb", "milp"):
        raise ValueError(f"unknown engine {engine!r}")
    if engine != "milp":
        solver = _MisSolver(conflict_bitsets(t_down), None if engine == "bnb" else max_nodes)
        try:
            best = solver.solve((1 << (1 << n)) - 1)
        except _Budget:
            log.debug("exhaustive n=%d: node budget hit, switching to MILP", n)
        else:
            log.debug("exhaustive n=%d: %d nodes, size %d", n, solver.nodes, best.bit_count())
            return best.bit_count(), Codebook(n, _bits(best))
    words = _ball_packing_milp(t_down, time_limit)
    return len(words), Codebook(n, words)
