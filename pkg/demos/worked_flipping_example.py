"""Flipping a (7,4) Hamming code so that no codeword is heavier than 4.

On a Z-channel only 1s are lost, so heavy codewords are the fragile ones.
The flipping construction fixes one message bit to 1 in a codeword alpha
and uses it as a flag: if a codeword would be heavy, send its complement
(which is still a codeword because alpha is all ones) and clear the flag.
"""

from nonuniform import flip_decode_info, flip_encode_info, flipping_info, hamming_7_4
from nonuniform.words import bits_str

code = flipping_info(hamming_7_4())
print("alpha:", bits_str(code.alpha), " message bits:", code.message_length, " max weight:", code.max_weight)

for u in ("000", "011", "110", "111"):
    y = flip_encode_info(code, u)
    print(f"  {u} -> {bits_str(y)}  (weight {int(y.sum())})")

# 1001001 lost its first 1 on the way
received = "0001001"
print("decode", received, "->", bits_str(flip_decode_info(code, received)))
