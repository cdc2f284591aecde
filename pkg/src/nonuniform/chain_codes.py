"""Nested code chains C_1 ⊃ C_2 ⊃ ... where level t corrects t asymmetric errors.

Words are ints (position 1 = most significant bit). Level 0 is the whole
space. Two families are provided: Varshamov chains over a prime field, with
level t fixed by the first t elementary symmetric functions of the support,
and BCH chains, with level t the BCH code of designed distance 2t + 1.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field

import numpy as np

from .codebook import Codebook
from .gf2m_bch import BchCode, DecodingFailure, bch_decode, build_bch, gf2_mod
from .words import bits_to_int, int_to_bits, supermasks_within

MAX_VARSHAMOV_DECODE_N = 20
MAX_ENUMERATE_N = 20


class Family(str, enum.Enum):
    VARSHAMOV = "Varshamov"
    BCH = "BCH"


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % d for d in range(2, int(q ** 0.5) + 1))


def next_prime(n: int) -> int:
    q = n + 1
    while not _is_prime(q):
        q += 1
    return q


@dataclass(frozen=True)
class VarshamovParams:
    q: int
    alpha: tuple[int, ...]
    g: tuple[int, ...]

    def __post_init__(self):
        if not _is_prime(self.q):
            raise ValueError(f"q={self.q} is not prime (prime powers are not supported)")
        a = [x % self.q for x in self.alpha]
        if 0 in a:
            raise ValueError("alpha entries must be nonzero in F_q")
        if len(set(a)) != len(a):
            raise ValueError("alpha entries must be distinct in F_q")
        if self.q <= len(a):
            raise ValueError("need q > n")

    @classmethod
    def default(cls, n: int, k: int) -> "VarshamovParams":
        return cls(next_prime(n), tuple(range(1, n + 1)), (0,) * k)


def sigma(x: int, n: int, params: VarshamovParams, k: int) -> list[int]:
    """sigma_1..sigma_k of {alpha_i : x_i = 1} over F_q, via prod(1 + u z)."""
    q = params.q
    s = [1] + [0] * k
    for i in range(n):
        if x >> (n - 1 - i) & 1:
            u = params.alpha[i]
            for l in range(k, 0, -1):
                s[l] = (s[l] + u * s[l - 1]) % q
    return s[1:]


def _sigma_all(words: np.ndarray, n: int, params: VarshamovParams, k: int) -> np.ndarray:
    q = params.q
    s = np.zeros((k + 1, len(words)), dtype=np.int64)
    s[0] = 1
    for i in range(n):
        bit = (words >> (n - 1 - i)) & 1 == 1
        u = params.alpha[i]
        for l in range(k, 0, -1):
            s[l] = np.where(bit, (s[l] + u * s[l - 1]) % q, s[l])
    return s[1:]


@dataclass(frozen=True)
class CodeChain:
    n: int
    k_max: int
    family: Family
    varshamov: VarshamovParams | None = None
    m: int | None = None
    codes: tuple[BchCode, ...] = field(default=(), repr=False)

    def _check_level(self, t: int):
        if not 0 <= t <= self.k_max:
            raise ValueError(f"level {t} outside 0..{self.k_max}")

    def contains(self, t: int, x: int) -> bool:
        self._check_level(t)
        if t == 0:
            return True
        if self.family is Family.BCH:
            return gf2_mod(x, self.codes[t - 1].generator) == 0
        return sigma(x, self.n, self.varshamov, t) == list(self.varshamov.g[:t])

    def level_mask(self, t: int, words: np.ndarray) -> np.ndarray:
        """Vectorised membership of an int64 word array in level t."""
        self._check_level(t)
        words = np.asarray(words, dtype=np.int64)
        if t == 0:
            return np.ones(words.shape, dtype=bool)
        if self.family is Family.BCH:
            g = self.codes[t - 1].generator
            rem = np.zeros(words.shape, dtype=np.int64)
            for i in range(self.n):
                r_i = gf2_mod(1 << i, g)
                rem ^= np.where((words >> i) & 1 == 1, r_i, 0)
            return rem == 0
        s = _sigma_all(words, self.n, self.varshamov, t)
        target = np.array(self.varshamov.g[:t], dtype=np.int64)[:, None]
        return (s == target).all(axis=0)

    def level_codebook(self, t: int) -> Codebook:
        if self.n > MAX_ENUMERATE_N:
            raise ValueError(f"enumeration limited to n <= {MAX_ENUMERATE_N}")
        words = np.arange(1 << self.n, dtype=np.int64)
        return Codebook(self.n, words[self.level_mask(t, words)].tolist())

    def decode(self, t: int, y: int) -> int:
        return chain_decode(self, t, y)

    def to_dict(self) -> dict:
        d = {"family": self.family.value, "n": self.n, "k_max": self.k_max}
        if self.family is Family.BCH:
            d["m"] = self.m
            d["dimensions"] = [c.k for c in self.codes]
        else:
            v = self.varshamov
            d.update(q=v.q, alpha=list(v.alpha), g=list(v.g))
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def varshamov_chain(n: int, k: int, params: VarshamovParams | None = None) -> CodeChain:
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    params = params or VarshamovParams.default(n, k)
    if len(params.alpha) != n:
        raise ValueError("alpha must have n entries")
    if len(params.g) < k:
        raise ValueError("g must have at least k entries")
    return CodeChain(n, k, Family.VARSHAMOV, varshamov=params)


def bch_chain(m: int, k: int) -> CodeChain:
    codes = tuple(build_bch(m, t) for t in range(1, k + 1))
    return CodeChain((1 << m) - 1, k, Family.BCH, m=m, codes=codes)


def chain_decode(chain: CodeChain, t: int, y: int) -> int:
    """D_t(y): the level-t codeword whose asymmetric t-ball holds y.

    BCH levels use the algebraic decoder (which corrects any t flips, so in
    particular t drops). Varshamov levels search the supersets of y with at
    most t extra ones, fewest first.
    """
    chain._check_level(t)
    if t == 0:
        return y
    n = chain.n
    if chain.family is Family.BCH:
        word, _ = bch_decode(chain.codes[t - 1], int_to_bits(y, n))
        return bits_to_int(word)
    if n > MAX_VARSHAMOV_DECODE_N:
        raise ValueError(f"Varshamov decoding is exhaustive; limited to n <= {MAX_VARSHAMOV_DECODE_N}")
    for x in supermasks_within(y, n, t):
        if chain.contains(t, x):
            return x
    raise DecodingFailure(f"no level-{t} codeword covers the received word within {t} drops")
