"""Explicit codebooks and asymmetric-ball disjointness checks."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

from .math_core import binomial
from .tolerance import ToleranceProfile
from .words import submasks_within, to_hex, weight, word_str

MAX_VALIDATE_N = 16
MAX_VALIDATE_WORDS = 4096


@dataclass(frozen=True)
class Codebook:
    n: int
    words: frozenset[int]
    weight_counts: tuple[int, ...] = field(init=False)

    def __init__(self, n: int, words: Iterable[int]):
        ws = frozenset(int(w) for w in words)
        if any(w < 0 or w >> n for w in ws):
            raise ValueError(f"word outside {{0,1}}^{n}")
        counts = [0] * (n + 1)
        for w in ws:
            counts[weight(w)] += 1
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "words", ws)
        object.__setattr__(self, "weight_counts", tuple(counts))

    @classmethod
    def from_strings(cls, words: Iterable[str]) -> "Codebook":
        words = list(words)
        n = len(words[0]) if words else 0
        return cls(n, (int(w, 2) for w in words))

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, x: int) -> bool:
        return x in self.words

    def __iter__(self):
        return iter(sorted(self.words))

    def strings(self) -> list[str]:
        return [word_str(w, self.n) for w in sorted(self.words)]

    def hex_words(self) -> list[str]:
        return [to_hex(w, self.n) for w in sorted(self.words)]

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "size": len(self), "words": self.hex_words()})


def ball(x: int, n: int, t: ToleranceProfile) -> set[int]:
    """Words reachable from x by dropping at most t(w(x)) ones."""
    return set(submasks_within(x, n, t[weight(x)]))


def validation_report(codebook: Codebook, t: ToleranceProfile) -> dict:
    """Check pairwise ball disjointness; list every collision found.

    Each collision is reported as ``(x, y, v)`` bit strings, where v lies in
    both balls. ``pairs_checked`` counts the codeword pairs covered.
    """
    n = codebook.n
    if t.n != n:
        raise ValueError("profile length does not match codebook")
    if n > MAX_VALIDATE_N and len(codebook) > MAX_VALIDATE_WORDS:
        raise ValueError(f"validation limited to n <= {MAX_VALIDATE_N} or <= {MAX_VALIDATE_WORDS} words")
    owner: dict[int, int] = {}
    violations = []
    seen_pairs = set()
    for x in sorted(codebook.words):
        for v in submasks_within(x, n, t[weight(x)]):
            y = owner.get(v)
            if y is None:
                owner[v] = x
            elif (y, x) not in seen_pairs:
                seen_pairs.add((y, x))
                violations.append((word_str(y, n), word_str(x, n), word_str(v, n)))
    m = len(codebook)
    return {"pairs_checked": m * (m - 1) // 2, "violations": violations}


def validate_nonuniform(codebook: Codebook, t: ToleranceProfile) -> bool:
    """True iff distinct codewords have disjoint asymmetric balls under profile t."""
    return not validation_report(codebook, t)["violations"]


def reach_set(t: ToleranceProfile, r: int) -> list[int]:
    """Weights s with s - t(s) <= r <= s: the layers whose balls touch weight r."""
    return [s for s in range(r, t.n + 1) if s - t[s] <= r]


def weight_class_inequality(codebook: Codebook, t: ToleranceProfile) -> list[tuple[int, int, int]]:
    """Per weight r: (r, sum_{j in reach(r)} C(j, r) A_j, C(n, r)).

    A code correcting t has left <= right for every r.
    """
    a = codebook.weight_counts
    rows = []
    for r in range(codebook.n + 1):
        lhs = sum(binomial(j, r) * a[j] for j in reach_set(t, r))
        rows.append((r, lhs, binomial(codebook.n, r)))
    return rows
