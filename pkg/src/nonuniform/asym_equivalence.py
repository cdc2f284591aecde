"""Executable checks relating two-sided [t_down, t_up] correction to drops-only
correction with an enlarged profile.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .codebook import Codebook, validate_nonuniform
from .tolerance import Direction, ToleranceProfile, overline_t_up, underline_t_up
from .words import weight

MAX_PAIR_N = 12
MAX_CHECK_N = 10


@dataclass(frozen=True)
class ErrorSpec:
    t_down: ToleranceProfile
    t_up: ToleranceProfile

    def __post_init__(self):
        if self.t_down.n != self.t_up.n:
            raise ValueError("profiles have different lengths")
        if self.t_down.direction is not Direction.NON_DECREASING:
            raise ValueError("t_down must be nondecreasing")
        if self.t_up.direction is not Direction.NON_INCREASING:
            raise ValueError("t_up must be nonincreasing")


def _reach(x: int, n: int, down: int, up: int) -> set[int]:
    ones = [i for i in range(n) if x >> i & 1]
    zeros = [i for i in range(n) if not x >> i & 1]
    lowered = []
    for r in range(min(down, len(ones)) + 1):
        for pos in combinations(ones, r):
            v = x
            for i in pos:
                v ^= 1 << i
            lowered.append(v)
    out = set()
    for r in range(min(up, len(zeros)) + 1):
        for pos in combinations(zeros, r):
            mask = 0
            for i in pos:
                mask |= 1 << i
            out.update(v | mask for v in lowered)
    return out


def first_confusion(codebook: Codebook, spec: ErrorSpec) -> tuple[int, int, int] | None:
    """(x, y, v) with v reachable from both codewords, or None."""
    n = codebook.n
    if n > MAX_PAIR_N:
        raise ValueError(f"exhaustive check limited to n <= {MAX_PAIR_N}")
    owner: dict[int, int] = {}
    for x in sorted(codebook.words):
        w = weight(x)
        for v in _reach(x, n, spec.t_down[w], spec.t_up[w]):
            y = owner.setdefault(v, x)
            if y != x:
                return y, x, v
    return None


def corrects_pair(codebook: Codebook, spec: ErrorSpec) -> bool:
    return first_confusion(codebook, spec) is None


def _guard(codebook: Codebook):
    if codebook.n > MAX_CHECK_N:
        raise ValueError(f"equivalence checks limited to n <= {MAX_CHECK_N}")


def check_constant_tup_equivalence(codebook: Codebook, t_down: ToleranceProfile, c: int) -> bool:
    """Two-sided correction with constant t_up = c agrees with drops-only t_down + c."""
    _guard(codebook)
    n = codebook.n
    spec = ErrorSpec(t_down, ToleranceProfile.constant(n, c, Direction.NON_INCREASING))
    return corrects_pair(codebook, spec) == validate_nonuniform(codebook, t_down + ToleranceProfile.constant(n, c))


def check_sufficiency_overline(codebook: Codebook, t_down: ToleranceProfile, t_up: ToleranceProfile) -> bool:
    """validate(t_down + overline t_up) implies corrects_pair([t_down, t_up])."""
    _guard(codebook)
    enlarged = t_down + overline_t_up(t_down, t_up)
    return not validate_nonuniform(codebook, enlarged) or corrects_pair(codebook, ErrorSpec(t_down, t_up))


def check_necessity_underline(codebook: Codebook, t_down: ToleranceProfile, t_up: ToleranceProfile) -> bool:
    """corrects_pair([t_down, t_up]) implies validate(t_down + underline t_up)."""
    _guard(codebook)
    if not corrects_pair(codebook, ErrorSpec(t_down, t_up)):
        return True
    return validate_nonuniform(codebook, t_down + underline_t_up(t_down, t_up))


# ---------------------------------------------------------------------------
# sample corpora
# ---------------------------------------------------------------------------

def random_nondecreasing(n: int, rng: random.Random, top: int = 2) -> ToleranceProfile:
    """A unit-step nondecreasing profile with t(0) = 0 and values <= top."""
    vals, cur = [0], 0
    for w in range(1, n + 1):
        if cur < min(top, w) and rng.random() < 0.35:
            cur += 1
        vals.append(cur)
    return ToleranceProfile(n, tuple(vals))


def random_nonincreasing(n: int, rng: random.Random, top: int = 2) -> ToleranceProfile:
    start = rng.randint(0, top)
    vals, cur = [], start
    for _ in range(n + 1):
        vals.append(cur)
        if cur > 0 and rng.random() < 0.3:
            cur -= 1
    return ToleranceProfile(n, tuple(vals), Direction.NON_INCREASING)


def greedy_code(n: int, t: ToleranceProfile, order: list[int]) -> Codebook:
    """First-fit packing of disjoint balls along the given word order."""
    from .codebook import ball

    taken: set[int] = set()
    words = []
    for x in order:
        b = ball(x, n, t)
        if taken.isdisjoint(b):
            taken |= b
            words.append(x)
    return Codebook(n, words)


def sample_case(rng: random.Random, n_max: int = 8) -> tuple[Codebook, ToleranceProfile, int, ToleranceProfile]:
    """One random instance: (codebook, t_down, c, t_up).

    A third of the codebooks are greedy packings for t_down + c (so they pass
    one side and probe the other), a third are such packings with a single
    extra word added to create a near miss, and a third are unstructured.
    """
    n = rng.randint(2, n_max)
    td = random_nondecreasing(n, rng)
    c = rng.choice((1, 2))
    tu = random_nonincreasing(n, rng)
    kind = rng.randrange(3)
    order = list(range(1 << n))
    rng.shuffle(order)
    if kind < 2:
        cb = greedy_code(n, td + ToleranceProfile.constant(n, c), order)
        if kind == 1:
            extra = [x for x in order if x not in cb.words]
            if extra:
                cb = Codebook(n, set(cb.words) | {extra[0]})
    else:
        size = rng.randint(1, min(12, 1 << n))
        cb = Codebook(n, order[:size])
    return cb, td, c, tu
