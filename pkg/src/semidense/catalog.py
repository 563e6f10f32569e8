"""Named small semigroups used in examples, tests and the structured sampler."""

from __future__ import annotations

from itertools import combinations

from .semigroup import FiniteSemigroup


def right_zero(n: int) -> FiniteSemigroup:
    """xy = y."""
    return FiniteSemigroup(tuple(tuple(range(n)) for _ in range(n)))


def left_zero(n: int) -> FiniteSemigroup:
    """xy = x."""
    return FiniteSemigroup(tuple((i,) * n for i in range(n)))


def cyclic_group(n: int) -> FiniteSemigroup:
    return FiniteSemigroup(tuple(tuple((i + j) % n for j in range(n)) for i in range(n)))


def chain_semilattice(n: int) -> FiniteSemigroup:
    """{0..n-1} under min; 0 is absorbing."""
    return FiniteSemigroup(tuple(tuple(min(i, j) for j in range(n)) for i in range(n)))


def null_semigroup(n: int) -> FiniteSemigroup:
    """Every product is 0."""
    return FiniteSemigroup(tuple((0,) * n for _ in range(n)))


def monogenic(index: int, period: int) -> FiniteSemigroup:
    """<a> with a^(index+period) = a^index; element k stands for a^(k+1)."""
    n = index + period - 1

    def reduce(e: int) -> int:
        if e < index:
            return e
        return index + (e - index) % period

    # exponents are k+1 for k in 0..n-1
    return FiniteSemigroup(tuple(tuple(reduce(i + j + 2) - 1 for j in range(n)) for i in range(n)))


def rectangular_band(rows: int, cols: int) -> FiniteSemigroup:
    """(i, j)(k, l) = (i, l), element (i, j) at index i*cols + j."""
    n = rows * cols
    return FiniteSemigroup(
        tuple(tuple((a // cols) * cols + (b % cols) for b in range(n)) for a in range(n))
    )


def union_semilattice(m: int) -> tuple[FiniteSemigroup, list[frozenset[int]]]:
    """Nonempty subsets of {1..m} under union, ordered by size then lexicographically.

    Returns the semigroup and the list of subsets indexed by element.
    """
    universe = range(1, m + 1)
    sets = [frozenset(c) for k in range(1, m + 1) for c in combinations(universe, k)]
    pos = {s: i for i, s in enumerate(sets)}
    table = tuple(tuple(pos[a | b] for b in sets) for a in sets)
    labels = tuple("{" + ",".join(map(str, sorted(s))) + "}" for s in sets)
    return FiniteSemigroup(table, labels), sets


def adjoin_zero(S: FiniteSemigroup) -> FiniteSemigroup:
    """S with a new absorbing element at index S.order."""
    n = S.order
    z = n
    table = [list(row) + [z] for row in S.table]
    table.append([z] * (n + 1))
    return FiniteSemigroup(tuple(map(tuple, table)))


def adjoin_identity(S: FiniteSemigroup) -> FiniteSemigroup:
    """S with a new identity element at index S.order."""
    n = S.order
    e = n
    table = [list(row) + [i] for i, row in enumerate(S.table)]
    table.append(list(range(n)) + [e])
    return FiniteSemigroup(tuple(map(tuple, table)))


BUILTINS = {
    "RZ2": lambda: right_zero(2),
    "LZ2": lambda: left_zero(2),
    "C2": lambda: cyclic_group(2),
    "SL2": lambda: chain_semilattice(2),
}
