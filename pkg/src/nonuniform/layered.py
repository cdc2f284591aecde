"""Layered nonuniform codes: a word of weight w is a codeword when it lies in
chain level t_l(w). Heavier words sit in deeper (smaller) levels, so they
tolerate more drops without wasting redundancy on light words.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .chain_codes import MAX_ENUMERATE_N, CodeChain, chain_decode
from .codebook import Codebook, validate_nonuniform, validation_report  # noqa: F401  (re-exported)
from .gf2m_bch import DecodingFailure
from .tolerance import ToleranceProfile, t_l_profile
from .words import covers, drops, weight

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class LayeredCode:
    chain: CodeChain
    t_down: ToleranceProfile
    t_l: ToleranceProfile = field(init=False)

    def __post_init__(self):
        if self.chain.n != self.t_down.n:
            raise ValueError("chain and profile lengths differ")
        tl = t_l_profile(self.t_down)
        object.__setattr__(self, "t_l", tl)
        deep = [w for w in range(self.n + 1) if tl[w] > self.chain.k_max]
        if deep:
            log.warning("t_l exceeds chain depth %d at weights %s; capped", self.chain.k_max, deep)

    @property
    def n(self) -> int:
        return self.chain.n

    def level(self, w: int) -> int:
        return min(self.t_l[w], self.chain.k_max)

    @property
    def deficient_weights(self) -> list[int]:
        """Weights whose required level is deeper than the chain provides."""
        return [w for w in range(self.n + 1) if self.t_l[w] > self.chain.k_max]


def layered_membership(code: LayeredCode, x: int) -> bool:
    return code.chain.contains(code.level(weight(x)), x)


def layered_enumerate(code: LayeredCode) -> Codebook:
    n = code.n
    if n > MAX_ENUMERATE_N:
        raise ValueError(f"enumeration limited to n <= {MAX_ENUMERATE_N}")
    words = np.arange(1 << n, dtype=np.int64)
    pop = np.array([int(w).bit_count() for w in range(1 << n)], dtype=np.int64)
    keep = np.zeros(len(words), dtype=bool)
    for lvl in sorted({code.level(w) for w in range(n + 1)}):
        sel = np.array([code.level(int(w)) == lvl for w in pop])
        keep[sel] = code.chain.level_mask(lvl, words[sel])
    return Codebook(n, words[keep].tolist())


def decode_interval(code: LayeredCode, y: int) -> tuple[int, int]:
    w = weight(y)
    lo = code.t_l[w]
    hi = code.t_l[min(code.n, w + lo)]
    return lo, hi


def layered_decode(code: LayeredCode, y: int) -> int:
    """Recover the codeword from a received word.

    Scans t upward over the decoding interval and returns the first chain
    decoding that is a layered codeword and whose ball holds y.
    """
    lo, hi = decode_interval(code, y)
    log.debug("layered_decode: interval [%d, %d] width %d", lo, hi, hi - lo)
    tried = set()
    for t in range(lo, hi + 1):
        t = min(t, code.chain.k_max)
        if t in tried:
            continue
        tried.add(t)
        try:
            x = chain_decode(code.chain, t, y)
        except DecodingFailure:
            continue
        if covers(x, y) and layered_membership(code, x) and drops(x, y) <= code.t_down[weight(x)]:
            return x
    raise DecodingFailure(f"no level in [{lo}, {hi}] yields a codeword within tolerance")
