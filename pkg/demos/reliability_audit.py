"""Worst-case reliability of a flipped BCH code on a Z-channel.

A (255,k) BCH code that corrects 6 errors is flipped so codewords weigh at
most 127. At p = 0.01 a weight-127 word drops more than 6 ones with
probability below 1e-3, so every audited codeword should meet q_e = 1e-3.
The audit uses fewer trials than the acceptance run to stay quick.
"""

import sys

from nonuniform import ChannelModel, build_bch, flip_encode_info, flipping_info, worst_case_audit
from nonuniform.channel_sim import sample_audit_messages
from nonuniform.flipping import flip_decode_info_batch

trials = int(sys.argv[1]) if len(sys.argv) > 1 else 20_000
channel = ChannelModel(255, 0.01, 1e-3)
code = flipping_info(build_bch(8, 6), channel)
print(f"message bits {code.message_length}, t' = {code.t_prime}, base t = {code.base.t}")

encode = lambda u: flip_encode_info(code, u)
msgs = sample_audit_messages(encode, code.message_length, seed=7)
report = worst_case_audit(encode, lambda y: flip_decode_info_batch(code, y), channel, msgs, trials, seed=7)
for r in report.rows:
    print(f"  weight {r['weight']:3d}: failure {r['failure_rate']:.2e} +- {r['ci_halfwidth']:.1e}")
print("within target:", report.passed)
