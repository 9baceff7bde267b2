"""Regenerates entropy_limits_symmetric_hadamard.json.

Independent of the Rust code: numpy amplitude evolution for the finite-n
Renyi/Tsallis values and 40-digit mpmath quadrature for the integral of f^alpha.
"""
import json

import mpmath as mp
import numpy as np

mp.mp.dps = 40


def run(a, b, delta, al, be, n):
    c = -delta * np.conj(b)
    d = delta * np.conj(a)
    left = np.zeros(2 * n + 3, complex)
    right = np.zeros(2 * n + 3, complex)
    o = n + 1
    left[o], right[o] = al, be
    for _ in range(n):
        nl = np.zeros_like(left)
        nr = np.zeros_like(right)
        nl[:-1] = a * left[1:] + b * right[1:]
        nr[1:] = c * left[:-1] + d * right[:-1]
        left, right = nl, nr
    p = abs(left) ** 2 + abs(right) ** 2
    return p[o - n:o + n + 1:2]


def integral(alpha, abs_a, drift):
    abs_b = mp.sqrt(1 - abs_a**2)

    def g(t):
        s = mp.sin(t)
        base = abs_b * (1 - drift * abs_a * s) / (mp.pi * (1 - abs_a**2 * s**2))
        return base**alpha * (abs_a * mp.cos(t)) ** (1 - alpha)

    return mp.quad(g, [-mp.pi / 2, 0, mp.pi / 2])


s = 1 / np.sqrt(2)
out = {"coin": "hadamard", "state": [[s, 0.0], [0.0, s]], "orders": []}
for alpha in (0.5, 1.5):
    i_alpha = integral(mp.mpf(alpha), 1 / mp.sqrt(2), 0)
    entry = {
        "alpha": alpha,
        "integral": float(i_alpha),
        "renyi_limit": float(mp.log(i_alpha, 2) / (1 - alpha)),
        "tsallis_limit": float((i_alpha - 1) / (1 - alpha)),
        "finite": [],
    }
    for n in (128, 256, 512, 1024):
        p = run(s, s, -1, s, 1j * s, n)
        power_sum = float(np.sum(p[p > 0] ** alpha))
        entry["finite"].append({
            "n": n,
            "renyi": float(np.log2(power_sum) / (1 - alpha)),
            "tsallis": float((power_sum - 1) / (1 - alpha)),
        })
    out["orders"].append(entry)

with open("entropy_limits_symmetric_hadamard.json", "w") as fh:
    json.dump(out, fh, indent=2)
    fh.write("\n")
