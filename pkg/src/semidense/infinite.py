"""Finite-scale reproductions of infinite examples.

The builtin semigroups are finite subsets of the positive integers under
union, the free semigroup on {a, b} and the positive integers under addition. Everything here
computes on explicit finite pieces; nothing claims a limit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Hashable, Iterable, Sequence

from . import catalog
from . import densities as dens
from . import semigroup as sg
from .errors import BadIndex, BadLength, EmptyF, SemidenseError


@dataclass(frozen=True)
class FgSemigroup:
    """A semigroup given by canonical forms, a product and finitely many generators."""

    name: str
    generators: tuple[Hashable, ...]
    multiply: Callable[[Hashable, Hashable], Hashable]
    encode: Callable[[Hashable], int]
    decode: Callable[[int], Hashable]

    def ball(self, length: int) -> list:
        """All products of 1..length generators, sorted by integer key."""
        if length < 1:
            return []
        seen = set(self.generators)
        layer = list(seen)
        for _ in range(length - 1):
            nxt = []
            for x in layer:
                for g in self.generators:
                    y = self.multiply(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            layer = nxt
        return sorted(seen, key=self.encode)

    def check_associative(self, length: int) -> bool:
        ball = self.ball(length)
        m = self.multiply
        return all(m(m(x, y), z) == m(x, m(y, z)) for x in ball for y in ball for z in ball)


def _bits(xs: Iterable[int]) -> int:
    out = 0
    for x in xs:
        out |= 1 << (x - 1)
    return out


def _from_bits(key: int) -> frozenset[int]:
    return frozenset(i + 1 for i in range(key.bit_length()) if key >> i & 1)


def pfn(generators: int = 4) -> FgSemigroup:
    """(P_f(N), union), generated here by the singletons {1}, ..., {g}."""
    return FgSemigroup(
        "pfn", tuple(frozenset([k]) for k in range(1, generators + 1)), frozenset.union, _bits, _from_bits
    )


def _word_key(w: str) -> int:
    key = 0
    for ch in w:
        key = 2 * key + (1 if ch == "a" else 2)
    return key


def _word_of(key: int) -> str:
    out = []
    while key:
        r = key % 2 or 2
        out.append("a" if r == 1 else "b")
        key = (key - r) // 2
    return "".join(reversed(out))


def free_semigroup(alphabet: str = "ab") -> FgSemigroup:
    if alphabet not in ("a", "ab"):
        raise SemidenseError("alphabet must be 'a' or 'ab'")
    return FgSemigroup("free", tuple(alphabet), str.__add__, _word_key, _word_of)


def nplus() -> FgSemigroup:
    """Positive integers under addition, generated by 1."""
    return FgSemigroup("nplus", (1,), int.__add__, int, int)


BUILTINS: dict[str, Callable[[], FgSemigroup]] = {"pfn": pfn, "free": free_semigroup, "nplus": nplus}


@dataclass(frozen=True)
class FolnerSequenceSpec:
    start: int
    stop: int  # inclusive
    F: Callable[[int], Sequence]

    def __call__(self, n: int) -> list:
        if not self.start <= n <= self.stop:
            raise BadIndex(f"index {n} outside {self.start}..{self.stop}")
        members = list(self.F(n))
        if not members:
            raise EmptyF(f"F({n}) is empty")
        return members


# finite subsets of N under union


def pfn_folner_set(n: int) -> list[frozenset[int]]:
    """F_n = {{2..2n}} together with the initial segments {1..k} for n < k <= 2n."""
    if n < 1:
        raise BadIndex("n must be at least 1")
    return [frozenset(range(2, 2 * n + 1))] + [frozenset(range(1, k + 1)) for k in range(n + 1, 2 * n + 1)]


def pfn_defect(n: int, shifts: Iterable[frozenset[int]] = (frozenset([1]),)) -> Fraction:
    """max over s of |F_n minus sF_n| / |F_n|, translating by union."""
    F = set(pfn_folner_set(n))
    return max(Fraction(len(F - {s | Z for Z in F}), len(F)) for s in shifts)


def pfn_ratio(n: int, T: frozenset[int]) -> Fraction:
    """|A & {Z|T}| / |{Z|T}| with A the finite sets avoiding 1."""
    translates = {Z | T for Z in pfn_folner_set(n)}
    return Fraction(sum(1 for X in translates if 1 not in X), len(translates))


def pfn_max_ratio(n: int) -> tuple[Fraction, frozenset[int]]:
    """Max of :func:`pfn_ratio` over all T within {1..2n}, with the first maximizer.

    Restricting T loses nothing: every Z in F_n lies inside {1..2n}, so whether
    two unions Z|T coincide and whether they contain 1 depend only on T & {1..2n}.
    T is scanned in increasing bit order; the empty T is included.
    """
    if n < 1:
        raise BadIndex("n must be at least 1")
    width = 2 * n
    fam = [_bits(Z) for Z in pfn_folner_set(n)]
    best, arg = Fraction(-1), 0
    for t in range(1 << width):
        translates = {z | t for z in fam}
        r = Fraction(sum(1 for x in translates if not x & 1), len(translates))
        if r > best:
            best, arg = r, t
    return best, _from_bits(arg)


@dataclass(frozen=True)
class PfnTruncation:
    m: int
    order: int
    density_avoiding_one: Fraction
    density_containing_one: Fraction
    core: frozenset[frozenset[int]]
    witness_shift: frozenset[int]
    shift_absorbed: bool  # some t in A with {1} | t == t (never, by construction)
    cofinal: bool


def pfn_density_A(m: int) -> PfnTruncation:
    """d of {X : 1 not in X} on the finite truncation P_f({1..m}), with certificates."""
    if m < 1:
        raise BadIndex("m must be at least 1")
    S, sets = catalog.union_semilattice(m)
    A = S.subset(i for i, X in enumerate(sets) if 1 not in X)
    s = sets.index(frozenset([1]))
    absorbed = any(S.mul(s, t) == t for t in A)
    core = dens.invariant_core(S).core
    return PfnTruncation(
        m,
        S.order,
        dens.folner_density(S, A)[0],
        dens.folner_density(S, A.complement())[0],
        frozenset(sets[i] for i in core),
        sets[s],
        absorbed,
        sg.is_cofinal(S, A),
    )


# free semigroup on {a, b}


@dataclass(frozen=True)
class FreeExampleReport:
    length: int
    words: int
    a_misses_B_translates: bool
    b_misses_A_translates: bool
    union_translates_cover: bool
    a_inverse_A_is_everything: bool

    @property
    def passed(self) -> bool:
        return (
            self.a_misses_B_translates
            and self.b_misses_A_translates
            and self.union_translates_cover
            and self.a_inverse_A_is_everything
        )


def free_semigroup_example(length: int) -> FreeExampleReport:
    """Certificates on the ball of words of length <= L.

    With A (B) the words starting with a (b):
    {a} & B s^-1 and {b} & A s^-1 are empty for every s with |s| <= L-1, so the
    single test set F = {a} (or {b}) bounds d_t by 0; every x s lies in A | B,
    so |F & (A|B) s^-1| = |F| for every F within the ball and every s (checking
    each element suffices, since the condition is pointwise); and a x lies in A
    for every x with |x| <= L-1, so a^-1 A covers the ball.
    """
    if length < 2:
        raise BadLength("word length must be at least 2")
    fg = free_semigroup()
    ball = fg.ball(length)
    shorter = fg.ball(length - 1)
    in_a = lambda w: w.startswith("a")  # noqa: E731
    in_b = lambda w: w.startswith("b")  # noqa: E731
    return FreeExampleReport(
        length,
        len(ball),
        all(not in_b("a" + s) for s in shorter),
        all(not in_a("b" + s) for s in shorter),
        all(in_a(x + s) or in_b(x + s) for x in ball for s in ball),
        all(in_a("a" + x) for x in shorter),
    )


# generic nets


PREDICATES: dict[str, Callable[[Hashable], bool]] = {
    "all": lambda x: True,
    "evens": lambda x: isinstance(x, int) and x % 2 == 0,
    "starts_a": lambda x: isinstance(x, str) and x.startswith("a"),
    "no_one": lambda x: isinstance(x, frozenset) and 1 not in x,
}


def default_spec(fg: FgSemigroup, n_max: int) -> FolnerSequenceSpec:
    if fg.name == "nplus":
        return FolnerSequenceSpec(1, n_max, lambda n: list(range(1, n + 1)))
    if fg.name == "pfn":
        return FolnerSequenceSpec(1, n_max, pfn_folner_set)
    return FolnerSequenceSpec(1, n_max, fg.ball)


def density_along_net(
    fg: FgSemigroup,
    A: Callable[[Hashable], bool],
    spec: FolnerSequenceSpec,
    n_range: Iterable[int],
    shift_ball: Sequence,
) -> list[Fraction]:
    """max over s in shift_ball of |A s^-1 & F(n)| / |F(n)| for each n.

    The shift ball is finite, so each value is a lower bound for the maximum
    over all of S at that index; no limit is claimed.
    """
    if not shift_ball:
        raise SemidenseError("shift ball must be nonempty")
    out = []
    for n in n_range:
        F = spec(n)
        out.append(max(Fraction(sum(1 for x in F if A(fg.multiply(x, s))), len(F)) for s in shift_ball))
    return out


def net_defects(fg: FgSemigroup, spec: FolnerSequenceSpec, n_range: Iterable[int]) -> list[Fraction]:
    """max over generators s of |F(n) minus sF(n)| / |F(n)|."""
    out = []
    for n in n_range:
        F = set(spec(n))
        out.append(max(Fraction(len(F - {fg.multiply(s, x) for x in F}), len(F)) for s in fg.generators))
    return out


# right zero semigroups: normalizing by |F| versus |Fs|


def right_zero_normalization(n: int = 2) -> tuple[Fraction, Fraction]:
    """On the right zero semigroup of order n with F = {0, 1} and A = {0}:
    (max_s |A & Fs| / |F|, max_s |A & Fs| / |Fs|) = (1/2, 1) when n >= 2.
    """
    if n < 2:
        raise BadIndex("need order at least 2")
    S = catalog.right_zero(n)
    F, A = S.subset([0, 1]), S.subset([0])
    by_f = max(Fraction(len(A & S.right_image(s, F)), len(F)) for s in S.elements)
    by_fs = max(Fraction(len(A & S.right_image(s, F)), len(S.right_image(s, F))) for s in S.elements)
    return by_f, by_fs


def pfn_translate_defects(n: int, m: int) -> int:
    """max over X within {1..n} of |F_m minus {X|Z : Z in F_m}| (at most 1 for m >= n)."""
    F = set(pfn_folner_set(m))
    worst = 0
    for bits in product((0, 1), repeat=n):
        X = frozenset(i + 1 for i, b in enumerate(bits) if b)
        if X:
            worst = max(worst, len(F - {X | Z for Z in F}))
    return worst
