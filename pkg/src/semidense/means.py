"""Left invariant means on finite semigroups via exact linear programming.

A mean on a finite semigroup is a probability vector ``p``; it is left
invariant when the pushforward of ``p`` under every left translation is ``p``
again, i.e. ``p[u] = sum(p[t] for t with s*t == u)`` for all ``s`` and ``u``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import BadEta, EmptyF, NotAmenable, NotInvariantInput, TheoremViolation
from .semigroup import FiniteSemigroup, QuotientMap, SubsetMask
from .simplex import LinearProgram, Row, SimplexSolver

ZERO, ONE = Fraction(0), Fraction(1)


@dataclass(frozen=True)
class MeanVector:
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        if any(w < 0 for w in self.weights):
            raise ValueError("mean weights must be nonnegative")
        if sum(self.weights) != 1:
            raise ValueError(f"mean weights sum to {sum(self.weights)}, not 1")

    @classmethod
    def of(cls, weights: Iterable) -> "MeanVector":
        return cls(tuple(Fraction(w) for w in weights))

    @classmethod
    def uniform(cls, n: int) -> "MeanVector":
        return cls((Fraction(1, n),) * n)

    @classmethod
    def point(cls, n: int, i: int) -> "MeanVector":
        return cls(tuple(ONE if k == i else ZERO for k in range(n)))

    @property
    def order(self) -> int:
        return len(self.weights)

    def measure(self, A: SubsetMask | Iterable[int]) -> Fraction:
        return sum((self.weights[a] for a in A), ZERO)

    def dump(self) -> str:
        return "".join(f"p_{i} {w.numerator}/{w.denominator}\n" for i, w in enumerate(self.weights))

    @classmethod
    def parse(cls, text: str) -> "MeanVector":
        pairs = []
        for line in text.splitlines():
            if line.strip():
                name, value = line.split()
                pairs.append((int(name.removeprefix("p_")), Fraction(value)))
        pairs.sort()
        if [i for i, _ in pairs] != list(range(len(pairs))):
            raise ValueError("mean lines must cover p_0 .. p_{n-1}")
        return cls(tuple(w for _, w in pairs))


def pushforward(p: Sequence[Fraction], images: Sequence[int], size: int) -> list[Fraction]:
    out = [ZERO] * size
    for t, w in enumerate(p):
        out[images[t]] += w
    return out


def is_left_invariant(S: FiniteSemigroup, p: MeanVector) -> bool:
    if p.order != S.order:
        return False
    w = list(p.weights)
    return all(pushforward(w, S.table[s], S.order) == w for s in S.elements)


def lim_rows(S: FiniteSemigroup) -> list[Row]:
    """Normalization plus one row per (s, u); trivial and repeated rows dropped."""
    n = S.order
    rows: list[Row] = [((ONE,) * n, ONE)]
    seen = set()
    for s in S.elements:
        row_s = S.table[s]
        for u in S.elements:
            coeffs = [0] * n
            coeffs[u] += 1
            for t in S.elements:
                if row_s[t] == u:
                    coeffs[t] -= 1
            key = tuple(coeffs)
            if any(key) and key not in seen:
                seen.add(key)
                rows.append((tuple(Fraction(c) for c in key), ZERO))
    return rows


def build_lim_program(S: FiniteSemigroup, objective_subset: SubsetMask) -> LinearProgram:
    """Maximize p(objective_subset) over the left invariant means of S."""
    objective = tuple(ONE if a in objective_subset else ZERO for a in S.elements)
    return LinearProgram(S.order, tuple(lim_rows(S)), objective)


@lru_cache(maxsize=4096)
def lim_solver(S: FiniteSemigroup) -> SimplexSolver:
    return SimplexSolver(S.order, lim_rows(S))


def is_left_amenable(S: FiniteSemigroup) -> bool:
    return lim_solver(S).feasible


def banach_density(S: FiniteSemigroup, A: SubsetMask) -> tuple[Fraction, MeanVector]:
    """d*(A) = max p(A) over left invariant means, with the optimal vertex."""
    solver = lim_solver(S)
    if not solver.feasible:
        raise NotAmenable("no left invariant mean exists")
    res = solver.maximize([ONE if a in A else ZERO for a in S.elements])
    if not res.optimal:
        raise TheoremViolation(f"LIM program reported {res.status}; the polytope is a bounded simplex face")
    return res.value, MeanVector(res.vertex)


def delta_star_set(S: FiniteSemigroup) -> SubsetMask:
    """{x : d*({x}) > 0}."""
    return S.subset(x for x in S.elements if banach_density(S, S.subset([x]))[0] > 0)


def product_mean(S: FiniteSemigroup, p: MeanVector, T: FiniteSemigroup, q: MeanVector) -> MeanVector:
    """Outer product on S x T (index i*|T| + j), checked to be left invariant."""
    from .semigroup import direct_product

    for G, m in ((S, p), (T, q)):
        if not is_left_invariant(G, m):
            raise NotInvariantInput("factor mean is not left invariant")
    r = MeanVector(tuple(a * b for a in p.weights for b in q.weights))
    if not is_left_invariant(direct_product(S, T, mask_width=S.order * T.order), r):
        raise TheoremViolation("product of invariant means is not invariant")
    k = T.order
    for i in S.elements:
        for j in T.elements:
            if r.weights[i * k + j] != p.weights[i] * q.weights[j]:
                raise TheoremViolation("product mean does not factor on rectangles")
    return r


def pushforward_mean(p: MeanVector, h: QuotientMap) -> MeanVector:
    if not is_left_invariant(h.source, p):
        raise NotInvariantInput("source mean is not left invariant")
    q = MeanVector(tuple(pushforward(p.weights, h.class_of, h.target.order)))
    if not is_left_invariant(h.target, q):
        raise TheoremViolation("pushforward of an invariant mean is not invariant")
    return q


def lift_mean_feasible(q: MeanVector, h: QuotientMap) -> MeanVector:
    """Some p in LIM(source) with pushforward q; infeasibility is a theorem violation."""
    if not is_left_invariant(h.target, q):
        raise NotInvariantInput("target mean is not left invariant")
    S = h.source
    rows = lim_rows(S)
    for u in h.target.elements:
        coeffs = tuple(ONE if h.class_of[t] == u else ZERO for t in S.elements)
        rows.append((coeffs, q.weights[u]))
    solver = SimplexSolver(S.order, rows)
    if not solver.feasible:
        raise TheoremViolation(f"no invariant lift of {q.weights} through {h.class_of}")
    res = solver.maximize([ZERO] * S.order)
    p = MeanVector(res.vertex)
    if pushforward(p.weights, h.class_of, h.target.order) != list(q.weights):
        raise TheoremViolation("lifted mean does not push forward to the target mean")
    return p


def translate_bound_check(
    S: FiniteSemigroup, p: MeanVector, A: SubsetMask, F: SubsetMask, eta: Fraction
) -> tuple[SubsetMask, bool]:
    """R = {s : |F & As^-1| >= eta|F|} and whether p(R) >= (p(A) - eta)/(1 - eta)."""
    if not F:
        raise EmptyF("F must be nonempty")
    eta = Fraction(eta)
    pa = p.measure(A)
    if not 0 < eta < pa:
        raise BadEta(f"need 0 < eta < p(A) = {pa}, got {eta}")
    size = len(F)
    R = S.subset(s for s in S.elements if len(F & S.right_preimage(s, A)) >= eta * size)
    return R, p.measure(R) >= (pa - eta) / (1 - eta)
