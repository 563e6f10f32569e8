"""Folner and translation densities on finite semigroups.

On a finite semigroup the strong Folner condition reduces to the existence of
a nonempty K with sK = K for every s (take H = S and epsilon below 1/|S|).
The largest such K is the invariant core; left translations permute it, and
their orbits (atoms) are the minimal invariant sets. Every invariant set is a
union of atoms, so d(A) is the best atom ratio |A & B| / |B|.

FC needs no operation here: K = S always satisfies sK within K.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional

from . import kernels
from .errors import BoundExceeded, EmptyF, NoSFC
from .means import MeanVector, banach_density, is_left_amenable
from .semigroup import FiniteSemigroup, SubsetMask, kernel

ORACLE_BOUND = 16


@dataclass(frozen=True)
class InvariantCore:
    core: SubsetMask
    atoms: tuple[SubsetMask, ...]


@lru_cache(maxsize=4096)
def invariant_core(S: FiniteSemigroup) -> InvariantCore:
    t = S.table
    K = S.full().bits
    while True:
        images = [0] * S.order
        for s in S.elements:
            img = 0
            for y in S.elements:
                if K >> y & 1:
                    img |= 1 << t[s][y]
            images[s] = img
        drop = 0
        for y in S.elements:
            if not K >> y & 1:
                continue
            if any(not K >> t[s][y] & 1 or not images[s] >> y & 1 for s in S.elements):
                drop |= 1 << y
        if not drop:
            break
        K &= ~drop
    core = SubsetMask(K, S.order)

    parent = list(S.elements)

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x in core:
        for s in S.elements:
            a, b = find(x), find(t[s][x])
            if a != b:
                parent[max(a, b)] = min(a, b)
    blocks: dict[int, list[int]] = {}
    for x in core:
        blocks.setdefault(find(x), []).append(x)
    atoms = tuple(S.subset(b) for _, b in sorted(blocks.items()))
    return InvariantCore(core, atoms)


def satisfies_sfc(S: FiniteSemigroup) -> bool:
    return bool(invariant_core(S).core)


def _require_sfc(S: FiniteSemigroup) -> InvariantCore:
    ic = invariant_core(S)
    if not ic.core:
        raise NoSFC("semigroup does not satisfy the strong Folner condition")
    return ic


def folner_density(S: FiniteSemigroup, A: SubsetMask) -> tuple[Fraction, SubsetMask]:
    """d(A) as the best atom ratio; ties go to the atom with the lowest element."""
    ic = _require_sfc(S)
    best, witness = Fraction(-1), ic.atoms[0]
    for B in ic.atoms:
        r = Fraction(len(A & B), len(B))
        if r > best:
            best, witness = r, B
    return best, witness


@lru_cache(maxsize=1024)
def invariant_sets(S: FiniteSemigroup) -> tuple[int, ...]:
    """Masks of every nonempty K with sK = K for all s, by full subset scan."""
    return tuple(kernels.invariant_subsets(S.flat, S.order))


def folner_density_oracle(S: FiniteSemigroup, A: SubsetMask, bound: int = ORACLE_BOUND) -> Fraction:
    """max |A & K| / |K| over all invariant K, found without using atoms."""
    if S.order > bound:
        raise BoundExceeded(f"order {S.order} above oracle bound {bound}")
    sets = invariant_sets(S)
    if not sets:
        raise NoSFC("semigroup does not satisfy the strong Folner condition")
    return max(Fraction((A.bits & K).bit_count(), K.bit_count()) for K in sets)


def translation_density_oracle(S: FiniteSemigroup, A: SubsetMask, bound: int = ORACLE_BOUND) -> Fraction:
    """min over nonempty F of max_s |F & As^-1| / |F|; defined for every S."""
    return translation_density_oracle_witness(S, A, bound)[0]


def translation_density_oracle_witness(
    S: FiniteSemigroup, A: SubsetMask, bound: int = ORACLE_BOUND
) -> tuple[Fraction, SubsetMask]:
    """Also returns the test set F attaining the minimum (lowest mask on ties)."""
    if S.order > bound:
        raise BoundExceeded(f"order {S.order} above oracle bound {bound}")
    pre = [S.right_preimage(s, A).bits for s in S.elements]
    num, den, f = kernels.dt_oracle(pre, S.order)
    return Fraction(num, den), SubsetMask(f, S.order)


def translation_density_fast(S: FiniteSemigroup, A: SubsetMask) -> tuple[Fraction, int]:
    """max_s |As^-1 & K| / |K| on the invariant core K, with the lowest maximizing s."""
    K = _require_sfc(S).core
    best, shift = Fraction(-1), 0
    for s in S.elements:
        r = Fraction(len(S.right_preimage(s, A) & K), len(K))
        if r > best:
            best, shift = r, s
    return best, shift


def folner_defect(S: FiniteSemigroup, F: SubsetMask, H: Iterable[int]) -> Fraction:
    """max over s in H of |F \\ sF| / |F|."""
    if not F:
        raise EmptyF("F must be nonempty")
    return max((Fraction(len(F - S.left_image(s, F)), len(F)) for s in H), default=Fraction(0))


def delta_set(S: FiniteSemigroup) -> SubsetMask:
    """{x : d({x}) > 0}; equals the invariant core."""
    _require_sfc(S)
    return S.subset(x for x in S.elements if folner_density(S, S.subset([x]))[0] > 0)


def piecewise_syndetic(S: FiniteSemigroup, A: SubsetMask) -> bool:
    return bool(A & kernel(S))


@dataclass(frozen=True)
class DensityReport:
    subset: SubsetMask
    d: Optional[Fraction]
    d_star: Optional[Fraction]
    d_t: Optional[Fraction]
    d_t_oracle: Optional[Fraction]
    witness_orbit: Optional[SubsetMask]
    witness_mean: Optional[MeanVector]
    witness_shift: Optional[int]

    @property
    def consistent(self) -> bool:
        """All computed values agree (vacuous when fewer than two exist)."""
        vals = {v for v in (self.d, self.d_star, self.d_t, self.d_t_oracle) if v is not None}
        return len(vals) <= 1

    def tsv(self) -> str:
        lines = []
        for name, v in (("d", self.d), ("d_star", self.d_star), ("d_t", self.d_t), ("d_t_oracle", self.d_t_oracle)):
            if v is not None:
                lines.append(f"{name}\t{fmt_fraction(v)}")
        if self.witness_orbit is not None:
            lines.append(f"witness_orbit\t{self.witness_orbit.hex}")
        if self.witness_shift is not None:
            lines.append(f"witness_shift\t{self.witness_shift}")
        return "\n".join(lines) + "\n"


def fmt_fraction(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


def density_report(S: FiniteSemigroup, A: SubsetMask, oracle_bound: int = ORACLE_BOUND) -> DensityReport:
    d = orbit = d_t = shift = d_star = mean = oracle = None
    if satisfies_sfc(S):
        d, orbit = folner_density(S, A)
        d_t, shift = translation_density_fast(S, A)
    if is_left_amenable(S):
        d_star, mean = banach_density(S, A)
    if S.order <= oracle_bound:
        oracle = translation_density_oracle(S, A, oracle_bound)
    return DensityReport(A, d, d_star, d_t, oracle, orbit, mean, shift)
