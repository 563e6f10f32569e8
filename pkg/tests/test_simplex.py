import random
from fractions import Fraction

import pytest

from semidense import means
from semidense.errors import MalformedLP
from semidense.search import enumerate_semigroups
from semidense.simplex import LinearProgram, SimplexSolver, check_farkas, independent_rows, simplex_solve
from vertex_oracle import vertex_optimum


def _same(fraction, rational):
    return fraction == Fraction(int(rational.p), int(rational.q))


def test_simple_optimum():
    lp = LinearProgram.build(2, [([1, 1], 1)], [1, 0])
    res = simplex_solve(lp)
    assert res.optimal and res.value == 1 and res.vertex == (1, 0)


def test_unbounded():
    lp = LinearProgram.build(2, [([1, -1], 0)], [1, 1])
    assert simplex_solve(lp).status == "unbounded"


def test_infeasible_with_certificate():
    rows = LinearProgram.build(2, [([1, 1], 1), ([1, 1], 2)], [0, 0]).rows
    res = SimplexSolver(2, rows).maximize([0, 0])
    assert res.status == "infeasible" and check_farkas(rows, res.certificate)
    rows = LinearProgram.build(1, [([1], -1)], [0]).rows
    res = SimplexSolver(1, rows).maximize([0])
    assert res.status == "infeasible" and check_farkas(rows, res.certificate)


def test_lp_dump_round_trip():
    lp = LinearProgram.build(3, [([1, Fraction(1, 2), 0], 1), ([0, -1, 1], 0)], [1, 0, -2])
    assert LinearProgram.parse(lp.dump()) == lp


@pytest.mark.parametrize(
    "text",
    ["eq 1 = 1\nobj 1\n", "vars 2\neq 1 = 1\nobj 1 1\n", "vars 1\nobj 1 2\n", "vars x\nobj 1\n", "vars 1\nfoo\n"],
)
def test_malformed_lp(text):
    with pytest.raises(MalformedLP):
        LinearProgram.parse(text)


def test_independent_rows_drop_combinations():
    rows = LinearProgram.build(2, [([1, 1], 1), ([2, 2], 2), ([1, -1], 0), ([3, 1], 2)], [0, 0]).rows
    assert independent_rows(rows) == [0, 2]


def test_redundant_lim_rows_and_degeneracy_are_handled():
    # left-zero with an adjoined identity: many repeated invariance rows
    from semidense import catalog

    S = catalog.adjoin_identity(catalog.right_zero(3))
    value, p = means.banach_density(S, S.subset([0]))
    assert value == 1 and means.is_left_invariant(S, p)


def _lim_programs(max_order):
    for n in range(1, max_order + 1):
        for S in enumerate_semigroups(n):
            rows = means.lim_rows(S)
            for A in S.all_subsets():
                yield rows, tuple(Fraction(int(a in A)) for a in S.elements)


def check_against_vertices(rows, objective):
    feasible, best = vertex_optimum(rows, objective)
    res = SimplexSolver(len(objective), rows).maximize(objective)
    if not feasible:
        return res.status == "infeasible" and check_farkas(rows, res.certificate)
    return res.optimal and _same(res.value, best) and all(x >= 0 for x in res.vertex) and all(
        sum(c * x for c, x in zip(coeffs, res.vertex)) == rhs for coeffs, rhs in rows
    )


def test_lim_programs_match_vertex_oracle():
    bad = [(rows, obj) for rows, obj in _lim_programs(3) if not check_against_vertices(rows, obj)]
    assert not bad


def random_lp(rng):
    """A small bounded LP: a capacity row keeps every feasible region bounded."""
    n = rng.randint(1, 4)
    m = rng.randint(0, 3)
    rows = [([rng.randint(-3, 3) for _ in range(n)], rng.randint(-3, 3)) for _ in range(m)]
    rows.append(([1] * n, rng.randint(0, 4)))
    rng.shuffle(rows)
    objective = [rng.randint(-4, 4) for _ in range(n)]
    return LinearProgram.build(n, rows, objective)


def test_random_lps_match_vertex_oracle():
    rng = random.Random(20240611)
    statuses = {"optimal": 0, "infeasible": 0}
    for _ in range(1000):
        lp = random_lp(rng)
        assert check_against_vertices(lp.rows, lp.objective), lp.dump()
        statuses[simplex_solve(lp).status] += 1
    # both outcomes are exercised
    assert statuses["optimal"] > 100 and statuses["infeasible"] > 100
