"""Independent LP oracle: enumerate basic feasible solutions with sympy.

For max c.x subject to A x = b, x >= 0 the optimum (when finite) is attained
at a vertex, and every vertex is the unique solution supported on some set
of linearly independent columns. Enumerating all column subsets of size
rank(A) therefore finds every vertex.
"""

from itertools import combinations

import sympy


def vertices(rows, num_vars):
    A = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in coeffs] for coeffs, _ in rows])
    b = sympy.Matrix([sympy.Rational(r.numerator, r.denominator) for _, r in rows])
    rank = A.rank()
    found = []
    if rank == 0:
        return [tuple([0] * num_vars)] if all(v == 0 for v in b) else []
    for cols in combinations(range(num_vars), rank):
        sub = A[:, list(cols)]
        if sub.rank() < rank:
            continue
        try:
            sol, params = sub.gauss_jordan_solve(b)
        except ValueError:
            continue
        if params.shape[0]:
            continue
        if any(v < 0 for v in sol):
            continue
        x = [sympy.Integer(0)] * num_vars
        for k, col in enumerate(cols):
            x[col] = sol[k]
        if tuple(x) not in found:
            found.append(tuple(x))
    return found


def vertex_optimum(rows, objective):
    """(feasible, best value) over all vertices; value is a sympy Rational."""
    vs = vertices(rows, len(objective))
    if not vs:
        return False, None
    c = [sympy.Rational(v.numerator, v.denominator) for v in objective]
    return True, max(sum(ci * xi for ci, xi in zip(c, x)) for x in vs)
