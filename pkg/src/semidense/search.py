"""Enumeration of small semigroups and a structured sampler for larger orders.

The enumerator fills the table row-major with associativity propagation and is
partitioned by first row; each prefix is independent, so parallel runs fold
their results back in prefix order and are identical to serial runs.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from itertools import permutations, product
from typing import Iterator

from . import catalog, kernels
from .errors import OrderTooLarge, SemidenseError
from .semigroup import MASK_WIDTH, FiniteSemigroup, direct_product, from_flat

EXHAUSTIVE_MAX = 5


def first_rows(n: int) -> list[tuple[int, ...]]:
    return list(product(range(n), repeat=n))


@lru_cache(maxsize=8)
def _perms(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(permutations(range(n)))


def enumerate_prefix(n: int, first_row: tuple[int, ...], dedup: str = "none") -> list[tuple[int, ...]]:
    """Flat tables for one first-row prefix, in lexicographic order."""
    mode = kernels.DEDUP_MODES[dedup]
    perms = _perms(n) if mode else ()
    return kernels.enumerate_tables(n, first_row, mode, perms)


def _enumerate_job(args):
    return enumerate_prefix(*args)


def enumerate_semigroups(n: int, dedup: str = "none", jobs: int = 1) -> Iterator[FiniteSemigroup]:
    """Every associative table of order n, or one per (anti-)isomorphism class."""
    if n > EXHAUSTIVE_MAX:
        raise OrderTooLarge(f"exhaustive enumeration stops at order {EXHAUSTIVE_MAX}; use the sampler")
    if n < 1:
        raise SemidenseError("order must be positive")
    if dedup not in kernels.DEDUP_MODES:
        raise SemidenseError(f"unknown dedup mode {dedup!r}")
    tasks = [(n, fr, dedup) for fr in first_rows(n)]
    if jobs <= 1:
        chunks = map(_enumerate_job, tasks)
        for chunk in chunks:
            for flat in chunk:
                yield from_flat(flat, n)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for chunk in pool.map(_enumerate_job, tasks, chunksize=max(1, len(tasks) // (4 * jobs))):
            for flat in chunk:
                yield from_flat(flat, n)


@lru_cache(maxsize=16)
def census(max_order: int, dedup: str = "iso") -> tuple[FiniteSemigroup, ...]:
    return tuple(S for n in range(1, max_order + 1) for S in enumerate_semigroups(n, dedup))


@lru_cache(maxsize=8)
def _labeled(n: int) -> tuple[FiniteSemigroup, ...]:
    return tuple(enumerate_semigroups(n, "none"))


def brute_filter_count(n: int) -> int:
    """Associative tables among all n^(n*n) tables, by direct testing."""
    count = 0
    for flat in product(range(n), repeat=n * n):
        if kernels.first_nonassociative(flat, n) is None:
            count += 1
    return count


def relabel(S: FiniteSemigroup, perm: list[int]) -> FiniteSemigroup:
    """Apply the bijection old -> perm[old]."""
    n = S.order
    inv = [0] * n
    for old, new in enumerate(perm):
        inv[new] = old
    return FiniteSemigroup(tuple(tuple(perm[S.table[inv[x]][inv[y]]] for y in range(n)) for x in range(n)))


def _factor_pairs(n: int) -> list[tuple[int, int]]:
    return [(a, n // a) for a in range(2, n) if n % a == 0 and a <= EXHAUSTIVE_MAX - 1 and n // a <= EXHAUSTIVE_MAX - 1]


def sample_semigroup(n: int, rng: random.Random, mask_width: int = MASK_WIDTH) -> FiniteSemigroup:
    """Draw a semigroup of order n from structured generators.

    Non-uniform by design: products of small census members, zero or identity
    adjunctions, monogenic semigroups, rectangular bands and chains.
    """
    if n > mask_width:
        raise OrderTooLarge(f"order {n} exceeds mask width {mask_width}")
    if n <= 4:
        return rng.choice(_labeled(n))
    while True:
        kind = rng.choice(["product", "zero", "identity", "monogenic", "band", "chain"])
        if kind == "product":
            pairs = _factor_pairs(n)
            if not pairs:
                continue
            a, b = rng.choice(pairs)
            S = direct_product(sample_semigroup(a, rng), sample_semigroup(b, rng), mask_width)
        elif kind == "zero":
            S = catalog.adjoin_zero(sample_semigroup(n - 1, rng, mask_width))
        elif kind == "identity":
            S = catalog.adjoin_identity(sample_semigroup(n - 1, rng, mask_width))
        elif kind == "monogenic":
            index = rng.randint(1, n)
            S = catalog.monogenic(index, n + 1 - index)
        elif kind == "band":
            pairs = [(a, n // a) for a in range(1, n + 1) if n % a == 0]
            S = catalog.rectangular_band(*rng.choice(pairs))
        else:
            S = catalog.chain_semilattice(n)
        perm = list(range(n))
        rng.shuffle(perm)
        return relabel(S, perm)
