"""Seeded binary asymmetric channel simulation and per-codeword reliability audits.

Randomness is counter based (Philox keyed by (seed, codeword index)); trial j
always consumes the same stretch of the stream, so a run split into chunks
reproduces the sequential statistics exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from statsmodels.stats.proportion import proportion_confint

from .tolerance import ChannelModel
from .words import as_bits

DEFAULT_CHUNK = 8192

# decoder(received batch) -> (decoded batch, ok mask)
BatchDecoder = Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]]


@dataclass(frozen=True)
class ChannelRun:
    channel: ChannelModel
    seed: int
    trials: int

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not 0 <= self.seed < 1 << 64:
            raise ValueError("seed must fit in 64 bits")


def _blocks(n: int) -> int:
    return -(-n // 4)


def _uniforms(seed: int, index: int, start: int, count: int, n: int) -> np.ndarray:
    bg = np.random.Philox(key=[seed, index])
    width = 4 * _blocks(n)
    bg.advance(start * _blocks(n))
    return np.random.Generator(bg).random((count, width))[:, :n]


def transmit_batch(channel: ChannelModel, x, seed: int, index: int = 0, start: int = 0, count: int = 1) -> np.ndarray:
    """Trials start..start+count-1 of word x through the channel."""
    x = as_bits(x)
    u = _uniforms(seed, index, start, count, x.size)
    p_down, p_up = float(channel.p_down), float(channel.p_up)
    flip = np.where(x == 1, u < p_down, u < p_up)
    return (x ^ flip).astype(np.uint8)


def transmit(run: ChannelRun, x, index: int = 0, draw: int = 0) -> np.ndarray:
    return transmit_batch(run.channel, x, run.seed, index, draw, 1)[0]


def wilson(failures: int, trials: int, alpha: float = 0.05) -> tuple[float, float, float]:
    """Wilson interval (low, high) and its half-width."""
    lo, hi = proportion_confint(failures, trials, alpha=alpha, method="wilson")
    return float(lo), float(hi), float(hi - lo) / 2


def estimate_codeword_reliability(run: ChannelRun, x, decoder: BatchDecoder, target=None,
                                  index: int = 0, chunk: int = DEFAULT_CHUNK) -> tuple[float, float, int]:
    """Monte-Carlo Pr[decode(channel(x)) != target].

    ``target`` defaults to x itself. Returns (failure_rate, wilson_halfwidth, failures).
    """
    x = as_bits(x)
    target = x if target is None else as_bits(target)
    failures = 0
    for lo in range(0, run.trials, chunk):
        cnt = min(chunk, run.trials - lo)
        y = transmit_batch(run.channel, x, run.seed, index, lo, cnt)
        out, ok = decoder(y)
        good = ok & (out == target).all(axis=1)
        failures += int(cnt - good.sum())
    _, _, half = wilson(failures, run.trials)
    return failures / run.trials, half, failures


@dataclass
class AuditReport:
    q_e: float
    rows: list[dict] = field(default_factory=list)

    @property
    def max_failure(self) -> float:
        return max((r["failure_rate"] for r in self.rows), default=0.0)

    @property
    def passed(self) -> bool:
        return all(r["failure_rate"] <= self.q_e + 3 * r["ci_halfwidth"] for r in self.rows)

    def to_dict(self) -> dict:
        return {"q_e": self.q_e, "passed": self.passed, "max_failure": self.max_failure, "rows": self.rows}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        lines = ["weight,failure_rate,ci"]
        lines += [f"{r['weight']},{r['failure_rate']:.6g},{r['ci_halfwidth']:.6g}" for r in self.rows]
        return "\n".join(lines) + "\n"


def sample_audit_messages(encode: Callable, k: int, seed: int, n_random: int = 5, pool: int = 2000) -> list[np.ndarray]:
    """Messages whose codewords have minimum, middle and maximum weight, plus random ones.

    Extremes are taken over the zero message and a random pool; for long codes
    the true extremes are not searched for.
    """
    rng = np.random.default_rng(seed)
    cand = rng.integers(0, 2, size=(pool, k), dtype=np.uint8)
    cand = np.concatenate([np.zeros((1, k), dtype=np.uint8), cand])
    weights = np.array([int(encode(u).sum()) for u in cand])
    lo, hi = int(weights.min()), int(weights.max())
    # mid is taken inside the observed range: flipped codes never reach n/2 + 1
    picks = [int(np.argmin(weights)), int(np.argmin(np.abs(2 * weights - lo - hi))), int(np.argmax(weights))]
    picks = list(dict.fromkeys(picks))
    free = np.setdiff1d(np.arange(1, len(cand)), picks)
    rest = rng.choice(free, size=n_random + 3 - len(picks), replace=False)
    return [cand[i] for i in picks + [int(r) for r in rest]]


def worst_case_audit(encode: Callable, decoder: BatchDecoder, channel: ChannelModel, messages,
                     trials: int, seed: int = 0, chunk: int = DEFAULT_CHUNK) -> AuditReport:
    """Per-message failure rates of ``decoder(channel(encode(u))) == u``."""
    report = AuditReport(float(channel.q_e))
    run = ChannelRun(channel, seed, trials)
    for i, u in enumerate(messages):
        u = as_bits(u)
        x = encode(u)
        rate, half, fails = estimate_codeword_reliability(run, x, decoder, target=u, index=i, chunk=chunk)
        report.rows.append({"index": i, "weight": int(x.sum()), "failure_rate": rate,
                            "ci_halfwidth": half, "failures": fails, "trials": trials})
    report.rows.sort(key=lambda r: (r["weight"], r["index"]))
    return report
