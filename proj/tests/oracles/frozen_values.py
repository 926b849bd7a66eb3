#!/usr/bin/env python3
# Copyright 2026 The qhash Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent high-precision recomputation of the constants frozen in the
C++ tests. Run: python3 tests/oracles/frozen_values.py"""

import itertools

import mpmath as mp
import numpy as np

mp.mp.dps = 50


def ceil(x):
    return int(mp.ceil(x))


print("== planner ==")
lam = 5 * mp.sqrt(2) / 8
for delta, order, ratio in [(mp.mpf("0.25"), 25, lam), (mp.mpf("0.25"), 25, mp.mpf("0.88388")),
                            (mp.mpf("0.3"), 25, lam)]:
    base = 20 / ((1 - ratio) * delta) * mp.log(4 * order)
    red = 20 / ((1 - ratio) * delta**2) * mp.log(4 * order)
    cor = 160 * mp.sqrt(2) / (3 * delta) * mp.log(4 * order)
    print(f"expander delta={delta} |G|={order} ratio={mp.nstr(ratio, 12)}: "
          f"t_paper={ceil(base)} ({mp.nstr(base, 15)}) t_rederived={ceil(red)} t_corollary={ceil(cor)}")
for eps, h in [(mp.mpf("0.1"), 256), (mp.mpf("0.5"), 2), (mp.mpf("0.3"), 4)]:
    val = (mp.log(h, 2) + 1) / (2 * eps**2)
    print(f"extractor eps={eps} |H|={h}: t={ceil(val)} ({mp.nstr(val, 15)})")

print("== gillman ==")
print("4 exp(-0.058) =", mp.nstr(4 * mp.exp(-mp.mpf("100") ** 2 * mp.mpf("0.116") / (20 * 1000)), 20))


def clmul(a, b):
    r = 0
    for i in range(32):
        if (b >> i) & 1:
            r ^= a << i
    return r


def reduce(p, poly, n):
    for bit in range(2 * n - 2, n - 1, -1):
        if (p >> bit) & 1:
            p ^= poly << (bit - n)
    return p


print("== lhl n=3 ==")
prod = reduce(clmul(0b011, 0b101), 0b1011, 3)
print("a*x =", format(prod, "03b"), "low 2 bits =", format(prod & 3, "02b"))

print("== margulis neighbors of (1,1), n=3 ==")
n, x, y = 3, 1, 1
maps = [((x + y) % n, y), ((x - y) % n, y), ((x + y + 1) % n, y), ((x - y - 1) % n, y),
        (x, (y + x) % n), (x, (y - x) % n), (x, (y + x + 1) % n), (x, (y - x - 1) % n)]
print(sorted(maps))

print("== small spectra ==")
k4 = np.ones((4, 4)) - np.eye(4)
c4 = np.array([[0, 1, 0, 1], [1, 0, 1, 0], [0, 1, 0, 1], [1, 0, 1, 0]], float)
for name, a in [("K4", k4), ("C4", c4)]:
    ev = sorted(np.linalg.eigvalsh(a), reverse=True)
    print(name, ev, "lambda =", max(abs(ev[1]), abs(ev[-1])))

print("== Z_5 two-term pair ==")
print(mp.nstr(abs(mp.expjpi(mp.mpf(2) / 5) + mp.expjpi(mp.mpf(4) / 5)) / 2, 20))

print("== hadamard, uniform source: distance of Ext(X,U_d) to U_1 ==")
for nb in [2, 3, 4, 8]:
    ones = sum(bin(a & b).count("1") & 1 for a, b in itertools.product(range(2**nb), repeat=2))
    p1 = mp.mpf(ones) / 4**nb
    print(nb, mp.nstr(abs(p1 - mp.mpf(1) / 2), 20), "== 2^-(n+1):", mp.mpf(2) ** -(nb + 1))

print("== lhl uniform source n=8 m=2 ==")
print(mp.nstr(mp.mpf(2) ** -8 * (1 - mp.mpf(2) ** -2), 20))

print("== uniform vs uniform-on-half over 2^3 ==")
p = [mp.mpf(1) / 8] * 8
q = [mp.mpf(1) / 4] * 4 + [0] * 4
print(sum(abs(a - b) for a, b in zip(p, q)) / 2)

print("== binomial / Haar ==")
D = 64
print("Haar E|<t|psi>|^2 =", 1 / D, " sd =", mp.nstr(mp.sqrt((D - 1) / (D**2 * (D + 1))), 15))
print("P(|<t|psi>|^2 >= 0.81), D=64:", mp.nstr((1 - mp.mpf("0.81")) ** (D - 1), 5))
