import json
import math
from fractions import Fraction

import pytest

from nonuniform.bounds import asymptotic_bounds, exhaustive_optimal_code, m_alpha, m_beta, z_channel_capacity
from nonuniform.codebook import validate_nonuniform, weight_class_inequality
from nonuniform.math_core import binomial
from nonuniform.tolerance import ChannelModel, ToleranceProfile, t_down_profile


def test_m_alpha_4_1():
    r = m_alpha(4, 1)
    assert r.y == (1, 0, 2, 0, 1)
    assert r.total == 4


def test_m_alpha_6_1_hand():
    r = m_alpha(6, 1)
    assert r.y[:3] == (1, 0, 3)
    assert r.y[6] == 1 and r.y[5] == 0 and r.y[4] == 3
    # y_3 = C(6,2) - y_2*C(2,0) over C(3,1)
    assert r.y[3] == Fraction(15 - 3, 3)
    assert r.total == sum(r.y)


def test_m_alpha_rejects():
    with pytest.raises(ValueError):
        m_alpha(4, 2)
    with pytest.raises(ValueError):
        m_alpha(5, 0)


def test_m_alpha_255_table_t():
    for t in (1, 2, 9, 18, 43, 63):
        r = m_alpha(255, t)
        assert r.total > 0
    rates = [m_alpha(255, t).rate for t in range(1, 30)]
    assert all(a > b for a, b in zip(rates, rates[1:]))


def test_m_beta_examples():
    r = m_beta(ToleranceProfile.from_values([0, 1, 1]))
    assert r.y == (1, 0, 1) and r.total == 2
    r = m_beta(ToleranceProfile.from_values([0, 1, 1, 1, 1]))
    assert r.y == (1, 0, 2, Fraction(4, 3), Fraction(2, 3))
    assert r.total == 5


def test_m_beta_zero_profile():
    for n in range(0, 21):
        r = m_beta(ToleranceProfile.constant(n, 0))
        assert r.total == 2 ** n
        assert r.y == tuple(binomial(n, k) for k in range(n + 1))


def test_m_beta_negative_clamped():
    # an adversarial (non-channel) profile driving some y negative
    prof = ToleranceProfile.from_values([0, 1, 1, 3, 3])
    r = m_beta(prof)
    assert r.negative
    assert r.total == sum(v for v in r.y if v > 0)


def test_bound_report_json():
    d = json.loads(m_beta(ToleranceProfile.from_values([0, 1, 1, 1, 1])).to_json())
    assert d["y"] == ["1", "0", "2", "4/3", "2/3"]
    assert d["total"] == "5"
    assert d["rate"] == pytest.approx(math.log2(5) / 4)


def test_m_beta_dominates_m_alpha_constant():
    for n in range(5, 30):
        for t in range(1, (n - 1) // 2 + 1):
            assert m_beta(ToleranceProfile.from_values([min(w, t) for w in range(n + 1)])).total >= 0
            assert m_alpha(n, t).total > 0


def test_asymptotic_values():
    b = asymptotic_bounds(0.5)
    assert b.upper_beta == pytest.approx(math.log2(1.25), abs=1e-6)
    assert b.upper_beta == pytest.approx(z_channel_capacity(0.5), abs=1e-9)
    assert asymptotic_bounds(0.25).lower_alpha == 0.0
    tiny = asymptotic_bounds(1e-6)
    for v in (tiny.lower_alpha, tiny.upper_alpha, tiny.lower_beta, tiny.upper_beta):
        assert abs(v - 1) < 1e-3


def test_asymptotic_ordering_grid():
    for i in range(1, 50):
        b = asymptotic_bounds(i / 100)
        assert b.lower_alpha <= b.upper_alpha + 1e-9
        assert b.lower_beta <= b.upper_beta + 1e-9
        assert b.upper_beta == pytest.approx(z_channel_capacity(i / 100), abs=1e-8)
        for v in (b.lower_alpha, b.upper_alpha, b.lower_beta, b.upper_beta):
            assert 0 <= v <= 1


def test_asymptotic_rejects():
    with pytest.raises(ValueError):
        asymptotic_bounds(0.0)


def test_exhaustive_small_examples():
    size, cb = exhaustive_optimal_code(ToleranceProfile.constant(4, 0))
    assert size == 16 and len(cb) == 16
    size, cb = exhaustive_optimal_code(ToleranceProfile.from_values([0, 1, 1]))
    assert size == 2 and cb.strings() == ["00", "11"]
    prof = ToleranceProfile.from_values([0, 1, 1, 1, 1])
    size, cb = exhaustive_optimal_code(prof)
    assert size <= 5 and size <= m_beta(prof).total
    assert validate_nonuniform(cb, prof)


def test_exhaustive_uniform_4_1_equals_m_alpha():
    size, _ = exhaustive_optimal_code(ToleranceProfile.from_values([0, 1, 1, 1, 1]))
    assert size == 4 == m_alpha(4, 1).total


def test_exhaustive_witness_inequality():
    for n, p in [(5, 0.1), (6, 0.2), (7, 0.3)]:
        prof = t_down_profile(ChannelModel(n, p, 0.05))
        size, cb = exhaustive_optimal_code(prof)
        assert len(cb) == size
        assert validate_nonuniform(cb, prof)
        assert all(lhs <= rhs for _, lhs, rhs in weight_class_inequality(cb, prof))


def test_exhaustive_guard():
    with pytest.raises(ValueError):
        exhaustive_optimal_code(ToleranceProfile.constant(15, 1))


def test_exhaustive_single_asymmetric_error_known_sizes():
    # published optimal sizes of single asymmetric error correcting codes
    known = {1: 1, 2: 2, 3: 2, 4: 4, 5: 6, 6: 12, 7: 18}
    for n, size in known.items():
        prof = ToleranceProfile.from_values([min(1, w) for w in range(n + 1)])
        assert exhaustive_optimal_code(prof)[0] == size


@pytest.mark.parametrize("n,p,q", [(5, 0.05, 0.01), (6, 0.1, 0.2), (6, 0.3, 0.01), (7, 0.2, 0.05)])
def test_exhaustive_engines_agree(n, p, q):
    prof = t_down_profile(ChannelModel(n, p, q))
    a, cb_a = exhaustive_optimal_code(prof, engine="bnb")
    b, cb_b = exhaustive_optimal_code(prof, engine="milp")
    assert a == b
    assert validate_nonuniform(cb_a, prof) and validate_nonuniform(cb_b, prof)


def test_exhaustive_engine_name():
    with pytest.raises(ValueError):
        exhaustive_optimal_code(ToleranceProfile.constant(3, 0), engine="greedy")
