import numpy as np
import pytest

from nonuniform.channel_sim import (
    ChannelRun, estimate_codeword_reliability, sample_audit_messages, transmit, transmit_batch, wilson,
    worst_case_audit,
)
from nonuniform.gf2m_bch import bch_decode_batch, build_bch
from nonuniform.math_core import binomial_tail
from nonuniform.tolerance import ChannelModel

CH = ChannelModel(31, 0.1, 0.01)


def identity(y):
    return y, np.ones(len(y), dtype=bool)


def test_deterministic_and_chunk_invariant():
    x = np.ones(31, dtype=np.uint8)
    a = transmit_batch(CH, x, seed=3, index=2, start=0, count=100)
    b = np.concatenate([transmit_batch(CH, x, 3, 2, s, 25) for s in range(0, 100, 25)])
    assert np.array_equal(a, b)
    assert np.array_equal(transmit(ChannelRun(CH, 3, 10), x, index=2, draw=7), a[7])
    assert not np.array_equal(a, transmit_batch(CH, x, seed=4, index=2, count=100))


def test_z_channel_never_raises_bits():
    x = np.zeros(31, dtype=np.uint8)
    x[::2] = 1
    y = transmit_batch(CH, x, 0, count=2000)
    assert not (y & ~x).any()
    # 16 ones at p = 0.1: mean drops 1.6
    assert abs(float((x - y).sum(axis=1).mean()) - 1.6) < 0.1


def test_p_up():
    ch = ChannelModel(20, 0.3, 0.01, p_up=0.25)
    x = np.zeros(20, dtype=np.uint8)
    x[:10] = 1
    y = transmit_batch(ch, x, 1, count=4000)
    assert abs(y[:, 10:].mean() - 0.25) < 0.01
    assert abs(1 - y[:, :10].mean() - 0.3) < 0.01


def test_reliability_chunking_identical():
    run = ChannelRun(CH, 11, 3000)
    x = np.ones(31, dtype=np.uint8)
    assert estimate_codeword_reliability(run, x, identity, chunk=3000) == \
        estimate_codeword_reliability(run, x, identity, chunk=128)


def test_calibration_against_binomial_tail():
    code = build_bch(5, 2)
    rng = np.random.default_rng(0)
    run = ChannelRun(CH, 5, 20000)
    dec = lambda y: bch_decode_batch(code, y)
    for i in range(3):
        x = code.encode(rng.integers(0, 2, code.k, dtype=np.uint8))
        w = int(x.sum())
        rate, half, _ = estimate_codeword_reliability(run, x, dec, index=i)
        expected = 1 - float(binomial_tail(w, 2, 0.1))
        assert abs(rate - expected) <= 3 * half


def test_wilson():
    lo, hi, half = wilson(0, 100)
    assert lo == pytest.approx(0, abs=1e-12) and 0.03 < hi < 0.04
    lo, hi, half = wilson(50, 100)
    assert lo < 0.5 < hi and half == pytest.approx((hi - lo) / 2)


def test_audit_messages_and_report():
    code = build_bch(5, 2)
    msgs = sample_audit_messages(code.encode, code.k, seed=1)
    assert len(msgs) == 8
    assert len({m.tobytes() for m in msgs}) == 8

    def decode_message(y):
        out, ok = bch_decode_batch(code, y)
        return out[:, :code.k], ok

    rep = worst_case_audit(code.encode, decode_message, CH, msgs, trials=500, seed=2)
    # t=2 is far too weak at p=0.1, the audit must say so
    assert not rep.passed and rep.max_failure > 0.05
    assert len(rep.rows) == 8
    assert [r["weight"] for r in rep.rows] == sorted(r["weight"] for r in rep.rows)
    assert rep.to_csv().startswith("weight,failure_rate,ci\n")
    assert '"passed"' in rep.to_json()


def test_run_validation():
    with pytest.raises(ValueError):
        ChannelRun(CH, 0, 0)
    with pytest.raises(ValueError):
        ChannelRun(CH, -1, 5)
