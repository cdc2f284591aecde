"""Binary word helpers.

Two representations are used across the package:

* small-n combinatorics (codebooks, balls, chains) store a word of length n as
  a Python ``int`` whose most significant of the n bits is position 1, so
  ``format(x, f"0{n}b")`` prints the word left to right;
* codecs and the channel simulator use ``numpy.uint8`` arrays where index 0 is
  position 1.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np


def weight(x: int) -> int:
    return x.bit_count()


def drops(x: int, y: int) -> int:
    """N(x, y): positions where x has a 1 and y has a 0."""
    return (x & ~y).bit_count()


def covers(x: int, v: int) -> bool:
    """True when v <= x componentwise."""
    return v & ~x == 0


def parse_word(s: str) -> int:
    s = s.strip()
    if not s or set(s) - {"0", "1"}:
        raise ValueError(f"not a binary word: {s!r}")
    return int(s, 2)


def word_str(x: int, n: int) -> str:
    return format(x, f"0{n}b")


def to_hex(x: int, n: int) -> str:
    """Hex with position 1 as the most significant bit, zero-padded on the right."""
    digits = -(-n // 4)
    return format(x << (4 * digits - n), f"0{digits}x")


def from_hex(h: str, n: int) -> int:
    digits = -(-n // 4)
    if len(h) != digits:
        raise ValueError(f"expected {digits} hex digits for n={n}, got {len(h)}")
    v = int(h, 16)
    pad = 4 * digits - n
    if v & ((1 << pad) - 1):
        raise ValueError("nonzero padding bits in hex word")
    return v >> pad


def int_to_bits(x: int, n: int) -> np.ndarray:
    return np.array([(x >> (n - 1 - i)) & 1 for i in range(n)], dtype=np.uint8)


def bits_to_int(bits: Sequence[int]) -> int:
    v = 0
    for b in bits:
        v = (v << 1) | (int(b) & 1)
    return v


def as_bits(word, n: int | None = None) -> np.ndarray:
    """Coerce a bit string, int (needs n) or sequence to a uint8 array."""
    if isinstance(word, str):
        return np.array([int(c) for c in word.strip()], dtype=np.uint8)
    if isinstance(word, (int, np.integer)):
        if n is None:
            raise ValueError("integer word needs an explicit length")
        return int_to_bits(int(word), n)
    arr = np.asarray(word, dtype=np.uint8)
    if arr.ndim != 1 or (arr > 1).any():
        raise ValueError("word must be a 1-D 0/1 vector")
    return arr


def bits_str(bits: Iterable[int]) -> str:
    return "".join(str(int(b)) for b in bits)


def submasks_within(x: int, n: int, t: int) -> Iterator[int]:
    """All v <= x obtained by clearing at most t of the ones of x."""
    ones = [i for i in range(n) if x >> i & 1]
    t = min(t, len(ones))
    for r in range(t + 1):
        for pos in combinations(ones, r):
            v = x
            for i in pos:
                v &= ~(1 << i)
            yield v


def supermasks_within(y: int, n: int, t: int) -> Iterator[int]:
    """All x >= y obtained by setting at most t of the zeros of y, fewest first."""
    zeros = [i for i in range(n) if not y >> i & 1]
    t = min(t, len(zeros))
    for r in range(t + 1):
        for pos in combinations(zeros, r):
            x = y
            for i in pos:
                x |= 1 << i
            yield x
