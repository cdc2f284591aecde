"""Flipping codes: keep transmitted weights low by complementing heavy words.

Two variants over a systematic base code:

* ``AuxBits``: append ``aux_len`` indicator bits; a codeword heavier than n/2
  is sent complemented with an all-ones indicator.
* ``InfoBit``: spend the first information bit. Encode ``0 || u``; if the word
  overlaps a fixed max-weight codeword ``alpha`` (with leading 1) in more than
  half of alpha's ones, send ``x + alpha`` instead. The leading bit of the
  decoded word then says whether to undo the flip.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from typing import Protocol

import numpy as np

from .gf2m_bch import BchCode, bch_decode_batch, gf2_mod
from .tolerance import ChannelModel, monotone_envelope, t_down_profile, t_f_profile
from .words import as_bits

log = logging.getLogger(__name__)

ALPHA_EXHAUSTIVE_K = 20
ALPHA_SAMPLES = 100_000


class SystematicCode(Protocol):
    n: int
    k: int
    t: int

    def encode(self, message) -> np.ndarray: ...
    def decode(self, received) -> tuple[np.ndarray, int]: ...
    def is_codeword(self, word) -> bool: ...


class Variant(str, enum.Enum):
    AUX_BITS = "AuxBits"
    INFO_BIT = "InfoBit"


def _encode_many(code, messages: np.ndarray) -> np.ndarray:
    return np.array([code.encode(u) for u in messages], dtype=np.uint8)


def find_alpha(code, seed: int = 0) -> tuple[np.ndarray, bool]:
    """A maximum-weight codeword with first bit 1, and whether it is provably optimal.

    The all-ones word is tried first. Otherwise small codes are searched
    exhaustively and larger ones by random sampling.
    """
    n, k = code.n, code.k
    if k < 1:
        raise ValueError("code has no information bits")
    ones = np.ones(n, dtype=np.uint8)
    if isinstance(code, BchCode):
        # all-ones is in a cyclic code iff g(x) divides x^n - 1 over (x - 1)
        if gf2_mod((1 << n) - 1, code.generator) == 0:
            return ones, True
    elif code.is_codeword(ones):
        return ones, True
    if k - 1 <= ALPHA_EXHAUSTIVE_K:
        rest = (np.arange(1 << (k - 1))[:, None] >> np.arange(k - 2, -1, -1)) & 1
        msgs = np.concatenate([np.ones((len(rest), 1), dtype=np.int64), rest], axis=1).astype(np.uint8)
        optimal = True
    else:
        rng = np.random.default_rng(seed)
        msgs = rng.integers(0, 2, size=(ALPHA_SAMPLES, k), dtype=np.uint8)
        msgs[:, 0] = 1
        optimal = False
        log.info("find_alpha: sampled %d codewords; result is heuristic", ALPHA_SAMPLES)
    best, best_w = None, -1
    for u in msgs:
        x = code.encode(u)
        w = int(x.sum())
        if w > best_w:
            best, best_w = x, w
    return best, optimal


@dataclass(frozen=True)
class FlippingCode:
    base: object
    variant: Variant
    t_prime: int
    alpha: np.ndarray | None = None
    aux_len: int = 0

    @property
    def n(self) -> int:
        return self.base.n + (self.aux_len if self.variant is Variant.AUX_BITS else 0)

    @property
    def message_length(self) -> int:
        return self.base.k - (1 if self.variant is Variant.INFO_BIT else 0)

    @property
    def max_weight(self) -> int:
        """Largest weight a transmitted word can have."""
        n = self.base.n
        if self.variant is Variant.INFO_BIT:
            return (2 * n - int(self.alpha.sum())) // 2
        return n // 2 + self.aux_len

    @property
    def adequate(self) -> bool:
        """The base code corrects at least the required t'."""
        return self.t_prime <= self.base.t


def _required_t(channel: ChannelModel | None, weight: int, fallback: int) -> int:
    if channel is None:
        return fallback
    prof = t_down_profile(channel) if channel.is_z_channel else monotone_envelope(t_f_profile(channel))
    return prof[weight]


def flipping_info(base, channel: ChannelModel | None = None, seed: int = 0) -> FlippingCode:
    """InfoBit variant. t' is the profile at the largest transmitted weight when a
    channel is given, else the base code's own t."""
    alpha, _ = find_alpha(base, seed)
    n = base.n
    top = (2 * n - int(alpha.sum())) // 2
    ch = channel if channel is None or channel.n == n else _resize(channel, n)
    return FlippingCode(base, Variant.INFO_BIT, _required_t(ch, top, base.t), alpha=alpha)


def flipping_aux(base, channel: ChannelModel | None = None, aux_len: int | None = None) -> FlippingCode:
    """AuxBits variant; the indicator block length defaults to t' + 1."""
    n = base.n
    ch = channel if channel is None or channel.n == n else _resize(channel, n)
    t_prime = _required_t(ch, n // 2, base.t)
    if aux_len is None:
        aux_len = t_prime + 1
    if aux_len < t_prime + 1:
        raise ValueError("aux_len must be at least t' + 1")
    return FlippingCode(base, Variant.AUX_BITS, t_prime, aux_len=aux_len)


def _resize(ch: ChannelModel, n: int) -> ChannelModel:
    return ChannelModel(n, ch.p_down, ch.q_e, ch.p_up)


def _check(code: FlippingCode, variant: Variant):
    if code.variant is not variant:
        raise ValueError(f"operation needs the {variant.value} variant")


def flip_encode_aux(code: FlippingCode, u) -> np.ndarray:
    _check(code, Variant.AUX_BITS)
    x = code.base.encode(as_bits(u))
    n = code.base.n
    if int(x.sum()) <= n // 2:
        return np.concatenate([x, np.zeros(code.aux_len, dtype=np.uint8)])
    return np.concatenate([1 - x, np.ones(code.aux_len, dtype=np.uint8)])


def flip_decode_aux(code: FlippingCode, y) -> np.ndarray:
    _check(code, Variant.AUX_BITS)
    y = as_bits(y)
    n = code.base.n
    if y.size != n + code.aux_len:
        raise ValueError(f"received length {y.size} != {n + code.aux_len}")
    body = y[:n]
    if y[n:].any():
        body = 1 - body
    x, _ = code.base.decode(body)
    return x[: code.base.k]


def flip_encode_info(code: FlippingCode, u) -> np.ndarray:
    _check(code, Variant.INFO_BIT)
    u = as_bits(u)
    if u.size != code.message_length:
        raise ValueError(f"message length {u.size} != {code.message_length}")
    x = code.base.encode(np.concatenate([[0], u]).astype(np.uint8))
    overlap = int((x & code.alpha).sum())
    if 2 * overlap > int(code.alpha.sum()):
        return x ^ code.alpha
    return x


def flip_decode_info(code: FlippingCode, y) -> np.ndarray:
    _check(code, Variant.INFO_BIT)
    word, _ = code.base.decode(as_bits(y))
    if word[0]:
        word = word ^ code.alpha
    return word[1 : code.base.k]


def flip_decode_info_batch(code: FlippingCode, received: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Batch decode to messages; ``ok`` is False where the base decoder gave up."""
    _check(code, Variant.INFO_BIT)
    if isinstance(code.base, BchCode):
        words, ok = bch_decode_batch(code.base, received)
    else:
        words, ok = code.base.decode_batch(received)
    words = np.where(words[:, :1] == 1, words ^ code.alpha, words)
    return words[:, 1 : code.base.k], ok
