#!/usr/bin/env python3
"""Independent oracle for the generator-flow curve evaluator.

Integrates y' = 2 s x y + v with scipy's adaptive RK at tight tolerance and
prints 17-significant-digit literals for freezing into the C++ tests.
"""
import numpy as np
from scipy.integrate import solve_ivp


def flow(x, v, s, t):
    def rhs(_, y):
        return 2.0 * np.cross(s, y) + v

    sol = solve_ivp(rhs, (0.0, t), np.asarray(x, float), rtol=1e-12, atol=1e-14,
                    dense_output=True)
    return sol.y[:, -1]


def lit(arr):
    return ", ".join(f"{x:.17g}" for x in np.atleast_1d(arr))


cases = [
    ("helix", [1.0, 0.0, 0.0], [0.3, -0.2, 0.5], [0.1, 0.4, -0.25], 1.7),
    ("circleish", [0.5, -1.0, 2.0], [0.8, 0.1, -0.3], [0.0, 0.0, 0.6], 2.2),
    ("drift", [0.0, 1.0, -0.5], [1.0, 2.0, 0.5], [0.0, 0.0, 0.0], 0.9),
    ("generic", [-0.4, 0.2, 1.1], [0.7, -1.2, 0.4], [-0.3, 0.5, 0.2], 1.3),
]

for name, x, v, s, t in cases:
    y = flow(x, v, s, t)
    print(f"{name}: y({t}) = {{{lit(y)}}}")

# tangent spot check for the generic case at t = 1.3
x, v, s, t = cases[3][1:]
y = flow(x, v, s, t)
print(f"generic tangent: {{{lit(2.0 * np.cross(s, y) + v)}}}")

# circle traversed as a generator curve: center c0, normal n, radius vec r
c0 = np.array([0.3, -0.2, 0.5])
n = np.array([0.0, 0.6, 0.8])
r = np.array([1.0, 0.0, 0.0])  # orthogonal to n
tau = 2.0
start = c0 + r
s = 0.5 * n
v = -np.cross(n, c0)
y = flow(start, v, s, tau)
direct = c0 + np.cos(tau) * r + np.sin(tau) * (np.cross(n, r))
print(f"circle flow:   {{{lit(y)}}}")
print(f"circle direct: {{{lit(direct)}}}")
print(f"agreement: {np.max(np.abs(y - direct)):.3g}")
