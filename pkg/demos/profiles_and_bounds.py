"""How much a channel-matched tolerance profile buys over a uniform budget.

A word of weight w on a Z-channel with crossover p sees Binomial(w, p) drops,
so light words need little protection. We compute the per-weight budget for
a target word error rate, compare the weight-class bound with the classical
uniform one, and then build a layered code that realises the profile.
"""

from nonuniform import (
    ChannelModel, LayeredCode, exhaustive_optimal_code, layered_enumerate, m_alpha, m_beta, t_down_profile,
    validate_nonuniform, varshamov_chain,
)

n, p, q_e = 10, 0.05, 0.01
prof = t_down_profile(ChannelModel(n, p, q_e))
print("t_down by weight:", prof.values)

t = prof[n]
beta, alpha = m_beta(prof), m_alpha(n, t)
print(f"nonuniform bound {float(beta.total):.1f} codewords, uniform (t={t}) bound {float(alpha.total):.1f}")

code = LayeredCode(varshamov_chain(n, max(prof.values)), prof)
cb = layered_enumerate(code)
print("layered code:", len(cb), "codewords, per weight", list(cb.weight_counts))
print("balls pairwise disjoint:", validate_nonuniform(cb, prof))

# small lengths can be solved exactly
small = t_down_profile(ChannelModel(6, p, q_e))
size, best = exhaustive_optimal_code(small)
print(f"n=6 optimum {size} vs bound {float(m_beta(small).total):.2f}:", best.strings())
