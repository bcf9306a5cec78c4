#!/usr/bin/env python3
"""Independent 2x2 complex-matrix oracle for the su2core tests.

Everything here is computed with numpy/scipy linear algebra only (matrix
products, series exponentials, conjugation), never with the library's own
quaternion formulas. Printed literals are frozen into tests/test_su2.cpp.
"""
import numpy as np
from scipy.linalg import expm

I2 = np.eye(2, dtype=complex)
SIG = [
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
]
TAU = [-1j * s for s in SIG]


def mu(v):
    return v[0] * TAU[0] + v[1] * TAU[1] + v[2] * TAU[2]


def quat(m):
    """Coefficients (a, b1, b2, b3) of m over {1, t1, t2, t3}."""
    a = np.trace(m).real / 2.0
    b = [np.trace(m @ np.linalg.inv(t)).real / 2.0 for t in TAU]
    return np.array([a, *b])


def show(name, q):
    print(f"{name} = {{{q[0]:.17g}, {q[1]:.17g}, {q[2]:.17g}, {q[3]:.17g}}}")


def grp(a, b):
    return a * I2 + mu(np.asarray(b, dtype=float))


# --- products ---
show("tau1*tau2", quat(TAU[0] @ TAU[1]))
x = grp(0.6, [0.0, 0.8, 0.0])
y = grp(0.36, [0.48, 0.0, 0.8])
show("x*y", quat(x @ y))

# --- exponentials by series ---
show("expm(pi/2 e3)", quat(expm(mu([0, 0, np.pi / 2]))))
show("expm(pi e1)", quat(expm(mu([np.pi, 0, 0]))))
v = np.array([0.3, -0.2, 0.7])
show("expm(v)", quat(expm(mu(v))))

# --- covering / adjoint by conjugation ---
s = expm(mu([0, 0, np.pi / 4]))
w = s @ mu([1, 0, 0]) @ np.linalg.inv(s)
wq = quat(w)
print(f"Ad(exp2(pi/4 e3)) e1 = {{{wq[1]:.17g}, {wq[2]:.17g}, {wq[3]:.17g}}}")
g = expm(mu([0.23, -1.4, 0.9]))
u = np.array([0.4, 1.1, -0.2])
wq = quat(g @ mu(u) @ np.linalg.inv(g))
print(f"Ad(exp2(0.23,-1.4,0.9)) u = {{{wq[1]:.17g}, {wq[2]:.17g}, {wq[3]:.17g}}}")

# --- commutator witness for the non-commuting pair ---
p = expm(mu([0.3, 0, 0]))
q = expm(mu([0, 0.3, 0]))
print("comm norm =", f"{np.linalg.norm(p @ q - q @ p):.17g}")

# --- fiber delta: inv(t3) * arg ---
arg = expm(mu([0.5, -0.1, 0.2]))
show("inv(tau3)*arg", quat(np.linalg.inv(TAU[2]) @ arg))

# --- torus flip property spot value ---
h = expm(mu([np.pi / 2, 0, 0]))  # flip for n = e3, m = e1
s7 = expm(mu([0, 0, 0.7]))
show("h exp2(0.7 e3) h^-1", quat(h @ s7 @ np.linalg.inv(h)))
