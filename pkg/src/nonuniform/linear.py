"""Systematic binary linear codes given by a generator matrix G = [I_k | P].

Used where a code is specified by its matrix rather than by a generator
polynomial, e.g. the (7,4) Hamming code of the flipping-code worked example.
Decoding is by a coset-leader table, so only small redundancy n - k is
practical.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .gf2m_bch import DecodingFailure
from .words import as_bits, bits_to_int

# the (7,4) Hamming generator of the flipping-code worked example
HAMMING_7_4_G = (
    "1000110",
    "0100101",
    "0010011",
    "0001111",
)


class LinearCode:
    def __init__(self, generator, t: int):
        g = np.array([as_bits(r) if isinstance(r, str) else r for r in generator], dtype=np.uint8)
        k, n = g.shape
        if not np.array_equal(g[:, :k], np.eye(k, dtype=np.uint8)):
            raise ValueError("generator must be systematic, G = [I | P]")
        self.n, self.k, self.t = n, k, t
        self.G = g
        p = g[:, k:]
        self.H = np.concatenate([p.T, np.eye(n - k, dtype=np.uint8)], axis=1)
        self._leaders = self._coset_table()

    def __repr__(self) -> str:
        return f"LinearCode({self.n},{self.k},t={self.t})"

    def _syndrome_int(self, word: np.ndarray) -> int:
        return bits_to_int((self.H @ word) & 1)

    def _coset_table(self) -> dict[int, tuple[int, ...]]:
        table: dict[int, tuple[int, ...]] = {0: ()}
        for w in range(1, self.t + 1):
            for pos in combinations(range(self.n), w):
                e = np.zeros(self.n, dtype=np.uint8)
                e[list(pos)] = 1
                s = self._syndrome_int(e)
                if s in table:
                    raise ValueError(f"code does not correct {self.t} errors")
                table[s] = pos
        return table

    def encode(self, message) -> np.ndarray:
        u = as_bits(message)
        if u.size != self.k:
            raise ValueError(f"message length {u.size} != k={self.k}")
        return (u @ self.G.astype(np.int64) & 1).astype(np.uint8)

    def is_codeword(self, word) -> bool:
        return self._syndrome_int(as_bits(word)) == 0

    def decode(self, received) -> tuple[np.ndarray, int]:
        r = as_bits(received)
        if r.size != self.n:
            raise ValueError(f"received length {r.size} != n={self.n}")
        pos = self._leaders.get(self._syndrome_int(r))
        if pos is None:
            raise DecodingFailure("syndrome outside the coset-leader table")
        out = r.copy()
        out[list(pos)] ^= 1
        return out, len(pos)

    def decode_batch(self, received: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        r = np.asarray(received, dtype=np.uint8)
        out, ok = r.copy(), np.ones(len(r), dtype=bool)
        for i, row in enumerate(r):
            try:
                out[i] = self.decode(row)[0]
            except DecodingFailure:
                ok[i] = False
        return out, ok


def hamming_7_4() -> LinearCode:
    return LinearCode(HAMMING_7_4_G, t=1)
