#!/usr/bin/env python3
"""Independent oracle for integer-lattice rank and exact integer solves.

Outputs are frozen into tests/test_bohr.cpp.
"""
import sympy as sp


def rank_case(name, rows):
    m = sp.Matrix(rows)
    print(f"rank {name}: rows={rows} rank={m.rank()} independent={m.rank() == len(rows)}")


def solve_case(name, L, L2):
    A = sp.Matrix(L2).T  # columns are the target tuple members
    out = []
    for l in L:
        b = sp.Matrix(l)
        sol = A.solve_least_squares(b) if A.rows != A.cols else None
        try:
            x = A.LUsolve(b) if A.rows == A.cols else sp.Matrix(
                sp.linsolve((A, b)).args[0]
            )
        except (ValueError, IndexError, NotImplementedError):
            print(f"leq_z {name}: {l} -> inconsistent"); return
        if A * x != b:
            print(f"leq_z {name}: {l} -> inconsistent"); return
        if any(not e.is_Integer for e in x):
            print(f"leq_z {name}: {l} -> non-integer {list(x)}"); return
        out.append([int(e) for e in x])
    print(f"leq_z {name}: N={out}")


rank_case("unit pair", [[1, 0], [0, 1]])
rank_case("collinear", [[2, 0], [3, 0]])
rank_case("single", [[1, 1]])
rank_case("det one", [[2, 3], [3, 5]])
rank_case("doubled", [[2, 4], [3, 6]])
rank_case("three in two", [[1, 0], [0, 1], [1, 1]])
rank_case("big entries", [[12, 35, 8], [9, 27, 6], [4, 11, 3]])

solve_case("sum", [[1, 1]], [[1, 0], [0, 1]])
solve_case("identity", [[1, 0], [0, 1]], [[1, 0], [0, 1]])
solve_case("halved", [[1, 0]], [[2, 0]])
solve_case("unimodular", [[0, 1], [1, 0]], [[2, 1], [1, 1]])
solve_case("tall", [[2, 1, 5]], [[1, 0, 2], [0, 1, 1]])
solve_case("tall inconsistent", [[1, 1, 0]], [[1, 0, 2], [0, 1, 1]])
solve_case("mixed", [[2, 3, 0], [1, 1, 1]], [[1, 1, 0], [0, 1, 0], [0, 0, 1]])
