import json
import warnings
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from scipy.stats import binom

from nonuniform.tolerance import (
    ChannelModel, Direction, EmptyPreimageWarning, ToleranceProfile, monotone_envelope,
    overline_t_up, t_down_profile, t_f_profile, t_l_profile, underline_t_up,
)

# weights 0 | 1..5 | 6..10
STEP_PROFILE = ToleranceProfile(10, (0, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2))
T_UP_STEP = ToleranceProfile(10, (1,) * 6 + (0,) * 5, Direction.NON_INCREASING)


def scipy_profile(n, p, q_e):
    out = []
    for w in range(n + 1):
        s = 0
        while binom.cdf(s, w, p) < 1 - q_e:
            s += 1
        out.append(min(s, w))
    return tuple(out)


def test_t_down_reference_point():
    prof = t_down_profile(ChannelModel(10, 0.1, 0.05))
    assert prof[10] == 3
    assert prof[0] == 0
    assert prof.values == scipy_profile(10, 0.1, 0.05)


def test_t_down_exact_strings():
    prof = t_down_profile(ChannelModel.from_strings(10, "0.1", "0.05"))
    assert prof.values == t_down_profile(ChannelModel(10, 0.1, 0.05)).values


@pytest.mark.parametrize("n,p,q", [(30, 0.05, 1e-3), (64, 0.2, 1e-2), (255, 0.01, 1e-4)])
def test_t_down_matches_scipy(n, p, q):
    assert t_down_profile(ChannelModel(n, p, q)).values == scipy_profile(n, p, q)


def test_noiseless_profile():
    assert t_down_profile(ChannelModel(10, 0.0, 0.05)).values == (0,) * 11


def test_exact_tie_decided_exactly():
    # P(no drop in 1 bit) = 1 - p = 1 - q_e exactly: s = 0 qualifies
    prof = t_down_profile(ChannelModel.from_strings(3, "0.1", "0.1"))
    assert prof[1] == 0
    assert Fraction(9, 10) ** 2 < Fraction(9, 10)
    assert prof[2] == 1


def test_unit_steps_grid():
    bad = 0
    for n in range(1, 65):
        for p in (0.01, 0.05, 0.1, 0.2, 0.3):
            for q in (1e-2, 1e-3, 1e-4):
                if not t_down_profile(ChannelModel(n, p, q)).is_unit_step():
                    bad += 1
    assert bad == 0


def test_t_l_examples():
    tl = t_l_profile(STEP_PROFILE)
    assert tl[3] == 1 and tl[4] == 2 and tl[10] == 2
    assert t_l_profile(ToleranceProfile.constant(8, 2)).values == (2,) * 9


def test_t_l_properties():
    for p in (0.05, 0.1, 0.3):
        td = t_down_profile(ChannelModel(40, p, 1e-3))
        tl = t_l_profile(td)
        assert tl.direction is Direction.NON_DECREASING
        assert all(a >= b for a, b in zip(tl.values, td.values))


def double_sum(n, w, t, pd, pu):
    return sum(binom.pmf(i, w, pd) * binom.pmf(j, n - w, pu) for i in range(t + 1) for j in range(t - i + 1))


def test_t_f_reduces_to_t_down():
    ch = ChannelModel(20, 0.1, 0.01)
    assert t_f_profile(ch).values == t_down_profile(ch).values


def test_t_f_symmetric_channel_constant():
    prof = t_f_profile(ChannelModel(4, 0.1, 0.05, 0.1))
    assert len(set(prof.values)) == 1


def test_t_f_against_double_sum():
    n, pd, pu, q = 10, 0.2, 0.01, 0.05
    prof = t_f_profile(ChannelModel(n, pd, q, pu))
    for w in range(n + 1):
        t = prof[w]
        assert double_sum(n, w, t, pd, pu) >= 1 - q
        assert t == 0 or double_sum(n, w, t - 1, pd, pu) < 1 - q
    assert all(a <= b for a, b in zip(prof.values, prof.values[1:]))


def test_overline_underline_constant_and_zero():
    td = STEP_PROFILE
    for c in (0, 1, 2):
        up = ToleranceProfile.constant(10, c, Direction.NON_INCREASING)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", EmptyPreimageWarning)
            assert overline_t_up(td, up).values == (c,) * 11
        assert underline_t_up(td, up).values == (c,) * 11


def direct_overline(td, tu, w):
    cands = [s for s in range(td.n + 1) if tu[s] + s < w - td[w]]
    return tu[max(cands)] if cands else tu[0]


def test_overline_direct_and_sandwich():
    with pytest.warns(EmptyPreimageWarning):
        over = overline_t_up(STEP_PROFILE, T_UP_STEP)
    under = underline_t_up(STEP_PROFILE, T_UP_STEP)
    for w in range(11):
        assert over[w] == direct_overline(STEP_PROFILE, T_UP_STEP, w)
        assert under[w] <= T_UP_STEP[w] <= over[w]


def test_monotone_envelope():
    assert monotone_envelope([2, 1, 3]) == (2, 2, 3)
    assert monotone_envelope(STEP_PROFILE).values == STEP_PROFILE.values


@given(st.lists(st.integers(0, 6), min_size=1, max_size=7))
def test_envelope_minimal(vals):
    vals = [min(v, len(vals) - 1) for v in vals]
    env = monotone_envelope(vals)
    assert all(a <= b for a, b in zip(env, env[1:]))
    assert all(e >= v for e, v in zip(env, vals))
    # minimality: lowering any entry breaks one of the two properties
    for i in range(len(env)):
        if env[i] > vals[i]:
            assert i > 0 and env[i] == env[i - 1]


def test_profile_json_roundtrip():
    s = STEP_PROFILE.to_json()
    assert json.loads(s) == {"n": 10, "direction": "NonDecreasing", "values": list(STEP_PROFILE.values)}
    assert ToleranceProfile.from_json(s) == STEP_PROFILE


def test_profile_validation():
    with pytest.raises(ValueError):
        ToleranceProfile(3, (0, 1, 0, 1))
    with pytest.raises(ValueError):
        ToleranceProfile(2, (0, 1))
    with pytest.raises(ValueError):
        ChannelModel(5, 0.1, 0.05, p_up=0.2)
    with pytest.raises(ValueError):
        ChannelModel(5, 0.1, 0.0)
