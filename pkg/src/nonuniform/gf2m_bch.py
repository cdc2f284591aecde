"""GF(2^m) arithmetic and narrow-sense primitive binary BCH codes.

Binary polynomials are Python ints (bit i = coefficient of x^i). A codeword
of length n = 2^m - 1 maps position 1 to x^(n-1), so the int of a codeword
read left to right *is* its polynomial. Encoding is systematic with the
message in the first k positions.

Decoding uses Berlekamp-Massey for the error locator and a Chien search for
its roots; binary errors have magnitude 1 so no evaluator is needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .words import as_bits, bits_to_int, int_to_bits

# Conventional primitive polynomials, fixed so codeword bits are reproducible.
PRIMITIVE_POLYS = {
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10001001,
    8: 0b100011101,
    9: 0b1000010001,
    10: 0b10000001001,
}


class DecodingFailure(Exception):
    """The received word lies outside every decoding sphere."""


class GF2m:
    """The field GF(2^m) in polynomial basis, with exp/log tables."""

    def __init__(self, m: int, prim: int | None = None):
        if m not in PRIMITIVE_POLYS and prim is None:
            raise ValueError(f"no primitive polynomial registered for m={m}")
        self.m = m
        self.prim = prim or PRIMITIVE_POLYS[m]
        self.order = (1 << m) - 1
        exp = [0] * (2 * self.order)
        log = [-1] * (self.order + 1)
        a = 1
        for i in range(self.order):
            if log[a] != -1:
                raise ValueError("polynomial is not primitive")
            exp[i] = a
            log[a] = i
            a <<= 1
            if a >> m:
                a ^= self.prim
        for i in range(self.order, 2 * self.order):
            exp[i] = exp[i - self.order]
        self.exp = exp
        self.log = log
        self.exp_arr = np.array(exp, dtype=np.int64)
        self.log_arr = np.array([0] + log[1:], dtype=np.int64)

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.exp[(self.order - self.log[a]) % self.order]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e else 1
        return self.exp[(self.log[a] * e) % self.order]

    def alpha_pow(self, e: int) -> int:
        return self.exp[e % self.order]


@lru_cache(maxsize=None)
def get_field(m: int) -> GF2m:
    return GF2m(m)


# -- GF(2)[x] helpers -------------------------------------------------------

def gf2_mul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def gf2_divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    q = 0
    db = b.bit_length()
    while a.bit_length() >= db:
        shift = a.bit_length() - db
        q |= 1 << shift
        a ^= b << shift
    return q, a


def gf2_mod(a: int, b: int) -> int:
    return gf2_divmod(a, b)[1]


def cyclotomic_coset(j: int, n: int) -> tuple[int, ...]:
    j %= n
    coset, c = [], j
    while c not in coset:
        coset.append(c)
        c = (2 * c) % n
    return tuple(sorted(coset))


def minimal_polynomial(gf: GF2m, j: int) -> int:
    """Minimal polynomial over GF(2) of alpha^j, as a binary int."""
    poly = [1]  # coefficients in GF(2^m), lowest degree first
    for c in cyclotomic_coset(j, gf.order):
        root = gf.alpha_pow(c)
        nxt = [0] * (len(poly) + 1)
        for i, a in enumerate(poly):
            nxt[i + 1] ^= a
            nxt[i] ^= gf.mul(a, root)
        poly = nxt
    if any(a > 1 for a in poly):
        raise AssertionError("minimal polynomial has non-binary coefficients")
    return sum(a << i for i, a in enumerate(poly))


# -- BCH codes ---------------------------------------------------------------

@dataclass(frozen=True)
class BchCode:
    m: int
    designed_t: int
    generator: int
    roots: tuple[int, ...] = field(repr=False)

    @property
    def n(self) -> int:
        return (1 << self.m) - 1

    @property
    def k(self) -> int:
        return self.n - (self.generator.bit_length() - 1)

    @property
    def t(self) -> int:
        return self.designed_t

    @property
    def gf(self) -> GF2m:
        return get_field(self.m)

    def __str__(self) -> str:
        return f"BCH({self.n},{self.k},t={self.designed_t})"

    # membership / encoding on ints -------------------------------------
    def contains_int(self, x: int) -> bool:
        return gf2_mod(x, self.generator) == 0

    def encode_int(self, message: int) -> int:
        if message >> self.k:
            raise ValueError("message wider than k bits")
        shifted = message << (self.n - self.k)
        return shifted ^ gf2_mod(shifted, self.generator)

    # array interface ---------------------------------------------------
    def encode(self, message) -> np.ndarray:
        return bch_encode(self, message)

    def decode(self, received) -> tuple[np.ndarray, int]:
        return bch_decode(self, received)

    def is_codeword(self, word) -> bool:
        return self.contains_int(bits_to_int(as_bits(word)))


def build_bch(m: int, designed_t: int) -> BchCode:
    """Narrow-sense primitive BCH code of length 2^m - 1 with roots alpha^1..alpha^(2t)."""
    if not 2 <= m <= 10:
        raise ValueError("m must lie in 2..10")
    if designed_t < 1:
        raise ValueError("designed_t must be >= 1")
    return _build_bch(m, designed_t)


@lru_cache(maxsize=None)
def _build_bch(m: int, designed_t: int) -> BchCode:
    gf = get_field(m)
    n = gf.order
    leaders, seen = [], set()
    for j in range(1, 2 * designed_t + 1):
        coset = cyclotomic_coset(j, n)
        if coset[0] not in seen:
            seen.add(coset[0])
            leaders.append(coset[0])
    g = 1
    for j in leaders:
        g = gf2_mul(g, minimal_polynomial(gf, j))
    k = n - (g.bit_length() - 1)
    if k < 1:
        raise ValueError(f"designed_t={designed_t} leaves no information bits for m={m}")
    roots = tuple(sorted(c for j in leaders for c in cyclotomic_coset(j, n)))
    return BchCode(m, designed_t, g, roots)


def bch_encode(code: BchCode, message) -> np.ndarray:
    msg = as_bits(message)
    if msg.size != code.k:
        raise ValueError(f"message length {msg.size} != k={code.k}")
    return int_to_bits(code.encode_int(bits_to_int(msg)), code.n)


def _syndromes(code: BchCode, positions) -> list[int]:
    """S_j = r(alpha^j), j = 1..2t, for a word with ones at the given indices."""
    gf, n = code.gf, code.n
    exps = [n - 1 - i for i in positions]
    out = []
    for j in range(1, 2 * code.designed_t + 1):
        s = 0
        for e in exps:
            s ^= gf.exp[(e * j) % gf.order]
        out.append(s)
    return out


def berlekamp_massey(gf: GF2m, synd: list[int]) -> list[int]:
    """Error-locator coefficients [1, L1, ..., Lv] from syndromes S_1..S_2t."""
    c, b = [1], [1]
    length, shift, last = 0, 1, 1
    for i, s in enumerate(synd):
        d = s
        for j in range(1, length + 1):
            if j < len(c):
                d ^= gf.mul(c[j], synd[i - j])
        if d == 0:
            shift += 1
            continue
        coef = gf.div(d, last)
        new = c + [0] * max(0, len(b) + shift - len(c))
        for j, bj in enumerate(b):
            new[j + shift] ^= gf.mul(coef, bj)
        if 2 * length <= i:
            b, length, last, shift = c, i + 1 - length, d, 1
        else:
            shift += 1
        c = new
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def _chien(code: BchCode, locator: list[int]) -> list[int]:
    """Indices (0-based positions) whose exponent is the inverse of a locator root."""
    gf, n = code.gf, code.n
    e = np.arange(n)
    acc = np.zeros(n, dtype=np.int64)
    for k, lk in enumerate(locator):
        if lk == 0:
            continue
        # term Lk * (alpha^-e)^k
        acc ^= gf.exp_arr[(gf.log[lk] - k * e) % gf.order]
    roots = np.nonzero(acc == 0)[0]
    return [n - 1 - int(x) for x in roots]


def _correct(code: BchCode, synd: list[int]) -> list[int]:
    if not any(synd):
        return []
    loc = berlekamp_massey(code.gf, synd)
    degree = len(loc) - 1
    if degree > code.designed_t:
        raise DecodingFailure("error locator degree exceeds design")
    positions = _chien(code, loc)
    if len(positions) != degree:
        raise DecodingFailure("locator root count mismatch: beyond design distance")
    return positions


def bch_decode(code: BchCode, received) -> tuple[np.ndarray, int]:
    """Bounded-distance decode; returns (codeword, number of flipped bits)."""
    r = as_bits(received)
    if r.size != code.n:
        raise ValueError(f"received length {r.size} != n={code.n}")
    flips = _correct(code, _syndromes(code, np.nonzero(r)[0]))
    out = r.copy()
    for i in flips:
        out[i] ^= 1
    if flips and not code.contains_int(bits_to_int(out)):
        raise DecodingFailure("correction did not land on a codeword")
    return out, len(flips)


@lru_cache(maxsize=None)
def _syndrome_matrix(code: BchCode) -> np.ndarray:
    """Binary (n, 2t*m) matrix: row i holds the bits of alpha^(j*(n-1-i))."""
    gf, n, m = code.gf, code.n, code.m
    cols = []
    for j in range(1, 2 * code.designed_t + 1):
        vals = np.array([gf.exp[((n - 1 - i) * j) % gf.order] for i in range(n)], dtype=np.int64)
        for b in range(m):
            cols.append((vals >> b) & 1)
    return np.array(cols, dtype=np.float32).T


def _gf_mul_vec(gf: GF2m, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    log = gf.log_arr
    out = gf.exp_arr[(log[a] + log[b]) % gf.order]
    return np.where((a != 0) & (b != 0), out, 0)


def _bm_vec(gf: GF2m, synd: np.ndarray) -> np.ndarray:
    """Berlekamp-Massey run row-wise over a (batch, 2t) syndrome array."""
    rows, tt = synd.shape
    width = tt + 1
    c = np.zeros((rows, width), dtype=np.int64)
    c[:, 0] = 1
    b = c.copy()
    length = np.zeros(rows, dtype=np.int64)
    shift = np.ones(rows, dtype=np.int64)
    last = np.ones(rows, dtype=np.int64)
    cols = np.arange(width)
    inv = lambda v: gf.exp_arr[(gf.order - gf.log_arr[v]) % gf.order]
    for i in range(tt):
        d = synd[:, i].copy()
        for j in range(1, i + 1):
            d ^= _gf_mul_vec(gf, c[:, j], synd[:, i - j])
        active = d != 0
        coef = _gf_mul_vec(gf, d, inv(np.where(active, last, 1)))
        idx = cols[None, :] - shift[:, None]
        shifted = np.where(idx >= 0, np.take_along_axis(b, np.clip(idx, 0, None), axis=1), 0)
        new = c ^ _gf_mul_vec(gf, coef[:, None], shifted)
        grow = active & (2 * length <= i)
        b = np.where(grow[:, None], c, b)
        last = np.where(grow, d, last)
        length = np.where(grow, i + 1 - length, length)
        shift = np.where(grow, 1, shift + 1)
        c = np.where(active[:, None], new, c)
    return c


def bch_decode_batch(code: BchCode, received: np.ndarray, chunk: int = 4096) -> tuple[np.ndarray, np.ndarray]:
    """Decode many words at once.

    Returns ``(decoded, ok)``; rows that fail keep the received bits and have
    ``ok = False``. Syndromes are one matrix product and Berlekamp-Massey and
    the Chien search run vectorised across rows with a nonzero syndrome.
    """
    r = np.asarray(received, dtype=np.uint8)
    if r.ndim != 2 or r.shape[1] != code.n:
        raise ValueError("received must have shape (batch, n)")
    gf, n, m, tt = code.gf, code.n, code.m, 2 * code.designed_t
    out = r.copy()
    ok = np.ones(len(r), dtype=bool)
    hmat = _syndrome_matrix(code)
    weights = 1 << np.arange(m, dtype=np.int64)
    e = np.arange(n)
    for lo in range(0, len(r), chunk):
        part = r[lo:lo + chunk]
        sbits = (part.astype(np.float32) @ hmat).astype(np.int64) & 1
        synd = sbits.reshape(len(part), tt, m) @ weights
        bad = np.nonzero(synd.any(axis=1))[0]
        if not bad.size:
            continue
        loc = _bm_vec(gf, synd[bad])
        nz = loc != 0
        degree = np.where(nz.any(axis=1), loc.shape[1] - 1 - np.argmax(nz[:, ::-1], axis=1), 0)
        acc = np.zeros((len(bad), n), dtype=np.int64)
        for k in range(loc.shape[1]):
            lk = loc[:, k]
            term = gf.exp_arr[(gf.log_arr[lk][:, None] - k * e[None, :]) % gf.order]
            acc ^= np.where((lk != 0)[:, None], term, 0)
        roots = acc == 0
        good = (roots.sum(axis=1) == degree) & (degree <= code.designed_t)
        rows = lo + bad
        ok[rows[~good]] = False
        fix = roots[good][:, ::-1]  # root at exponent e flips index n-1-e
        out[rows[good]] ^= fix.astype(np.uint8)
    return out, ok


def bch_dimension_table(m: int, include_repetition: bool = False) -> list[tuple[int, int]]:
    """Distinct dimensions k with the largest designed t that still yields them.

    Rows come out with k strictly decreasing. The k = 1 repetition code is left
    out unless ``include_repetition`` is set; published length-255 tables stop
    at k = 9.
    """
    rows: dict[int, int] = {}
    t = 1
    while True:
        try:
            code = build_bch(m, t)
        except ValueError:
            break
        rows[code.k] = t
        t += 1
    table = sorted(rows.items(), key=lambda kt: -kt[0])
    if not include_repetition:
        table = [(k, t) for k, t in table if k > 1]
    return table


def dimension_for(t_needed: int, table: list[tuple[int, int]], n: int) -> int | None:
    """Largest k whose code corrects at least t_needed errors (k = n when t_needed = 0)."""
    if t_needed <= 0:
        return n
    ks = [k for k, t in table if t >= t_needed]
    return max(ks) if ks else None
