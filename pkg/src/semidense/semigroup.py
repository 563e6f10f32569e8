"""Finite semigroups as multiplication tables, subsets as bit masks.

Elements are dense indices ``0..n-1`` and ``table[i][j]`` is ``i*j``. Row ``a``
is the left translation by ``a`` and column ``a`` the right translation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence

from . import kernels
from .errors import (
    BoundExceeded,
    EntryOutOfRange,
    NotAnEquivalence,
    NotAssociative,
    NotWellDefined,
    Overflow,
    ParseError,
    PreconditionViolated,
    SizeMismatch,
    TableError,
    TheoremViolation,
)

MASK_WIDTH = 32
ISO_BOUND = 8


@dataclass(frozen=True)
class SubsetMask:
    """A subset of a semigroup of order ``order``, stored as an int bit mask."""

    bits: int
    order: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.order:
            raise ValueError(f"mask {self.bits:#x} has bits outside order {self.order}")

    @classmethod
    def of(cls, order: int, elements: Iterable[int]) -> "SubsetMask":
        bits = 0
        for e in elements:
            if not 0 <= e < order:
                raise ValueError(f"element {e} outside order {order}")
            bits |= 1 << e
        return cls(bits, order)

    @classmethod
    def full(cls, order: int) -> "SubsetMask":
        return cls((1 << order) - 1, order)

    @classmethod
    def empty(cls, order: int) -> "SubsetMask":
        return cls(0, order)

    def __iter__(self) -> Iterator[int]:
        bits, i = self.bits, 0
        while bits:
            if bits & 1:
                yield i
            bits >>= 1
            i += 1

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def __contains__(self, e: int) -> bool:
        return 0 <= e < self.order and bool(self.bits >> e & 1)

    def __and__(self, other: "SubsetMask") -> "SubsetMask":
        return SubsetMask(self.bits & other.bits, self.order)

    def __or__(self, other: "SubsetMask") -> "SubsetMask":
        return SubsetMask(self.bits | other.bits, self.order)

    def __sub__(self, other: "SubsetMask") -> "SubsetMask":
        return SubsetMask(self.bits & ~other.bits, self.order)

    def complement(self) -> "SubsetMask":
        return SubsetMask(((1 << self.order) - 1) & ~self.bits, self.order)

    def issubset(self, other: "SubsetMask") -> bool:
        return self.bits & ~other.bits == 0

    @property
    def hex(self) -> str:
        return f"@{self.bits:x}"

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self)) + "}"


def parse_subset(text: str, order: int) -> SubsetMask:
    """Parse ``"0,2,5"`` or ``"@<hex>"``; an empty string is the empty set."""
    text = text.strip()
    try:
        if text.startswith("@"):
            return SubsetMask(int(text[1:], 16), order)
        if not text:
            return SubsetMask.empty(order)
        return SubsetMask.of(order, (int(tok) for tok in text.split(",")))
    except ValueError as exc:
        raise ParseError(f"bad subset {text!r}: {exc}") from None


@dataclass(frozen=True)
class FiniteSemigroup:
    """A validated associative multiplication table."""

    table: tuple[tuple[int, ...], ...]
    labels: Optional[tuple[str, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        n = len(self.table)
        if n == 0:
            raise TableError("a semigroup needs at least one element")
        for i, row in enumerate(self.table):
            if len(row) != n:
                raise TableError(f"row {i} has length {len(row)}, expected {n}")
            for j, v in enumerate(row):
                if not 0 <= v < n:
                    raise EntryOutOfRange(i, j, v, n)
        bad = kernels.first_nonassociative(self.flat, n)
        if bad is not None:
            raise NotAssociative(*bad)
        if self.labels is not None and len(self.labels) != n:
            raise TableError(f"{len(self.labels)} labels for order {n}")

    @property
    def order(self) -> int:
        return len(self.table)

    @cached_property
    def flat(self) -> tuple[int, ...]:
        return tuple(v for row in self.table for v in row)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def label(self, e: int) -> str:
        return self.labels[e] if self.labels else str(e)

    @property
    def elements(self) -> range:
        return range(self.order)

    def full(self) -> SubsetMask:
        return SubsetMask.full(self.order)

    def subset(self, elements: Iterable[int]) -> SubsetMask:
        return SubsetMask.of(self.order, elements)

    def all_subsets(self) -> Iterator[SubsetMask]:
        for bits in range(1 << self.order):
            yield SubsetMask(bits, self.order)

    # translations of subsets, all as masks

    def left_image(self, s: int, mask: SubsetMask) -> SubsetMask:
        """sK = {s*k : k in K}."""
        row = self.table[s]
        return SubsetMask.of(self.order, (row[k] for k in mask))

    def left_preimage(self, s: int, mask: SubsetMask) -> SubsetMask:
        """s^{-1}A = {t : s*t in A}."""
        row = self.table[s]
        return SubsetMask.of(self.order, (t for t in self.elements if row[t] in mask))

    def right_preimage(self, s: int, mask: SubsetMask) -> SubsetMask:
        """As^{-1} = {x : x*s in A}."""
        return SubsetMask.of(self.order, (x for x in self.elements if self.table[x][s] in mask))

    def right_image(self, s: int, mask: SubsetMask) -> SubsetMask:
        """Fs = {f*s : f in F}."""
        return SubsetMask.of(self.order, (self.table[f][s] for f in mask))

    def opposite(self) -> "FiniteSemigroup":
        n = self.order
        return FiniteSemigroup(tuple(tuple(self.table[j][i] for j in range(n)) for i in range(n)), self.labels)

    def restrict(self, mask: SubsetMask) -> tuple["FiniteSemigroup", list[int]]:
        """The subsemigroup on a multiplicatively closed subset, relabelled densely.

        Returns the subsemigroup and the list mapping new index -> old element.
        """
        elems = list(mask)
        pos = {e: i for i, e in enumerate(elems)}
        try:
            table = tuple(tuple(pos[self.table[a][b]] for b in elems) for a in elems)
        except KeyError:
            raise TableError(f"{mask} is not closed under multiplication") from None
        return FiniteSemigroup(table), elems

    def __str__(self) -> str:
        return format_sgt(self).strip()


def validate_table(order: int, raw_table: Sequence[Sequence[int]]) -> FiniteSemigroup:
    if len(raw_table) != order:
        raise TableError(f"expected {order} rows, got {len(raw_table)}")
    return FiniteSemigroup(tuple(tuple(int(v) for v in row) for row in raw_table))


def from_flat(flat: Sequence[int], order: int) -> FiniteSemigroup:
    return FiniteSemigroup(tuple(tuple(flat[i * order:(i + 1) * order]) for i in range(order)))


# .sgt text format


def parse_sgt(text: str) -> FiniteSemigroup:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ParseError("empty table file")
    try:
        n = int(lines[0])
    except ValueError:
        raise ParseError(f"first line must be the order, got {lines[0]!r}") from None
    if n < 1 or len(lines) < n + 1:
        raise ParseError(f"order {n} needs {n} table rows, found {len(lines) - 1}")
    try:
        rows = [[int(tok) for tok in lines[1 + i].split()] for i in range(n)]
    except ValueError as exc:
        raise ParseError(f"non-integer table entry: {exc}") from None
    labels = None
    if len(lines) > n + 1:
        extra = lines[n + 1].split()
        if extra[0] != "labels:":
            raise ParseError(f"unexpected trailing line {lines[n + 1]!r}")
        labels = tuple(extra[1:])
        if len(labels) != n:
            raise ParseError(f"{len(labels)} labels for order {n}")
    S = validate_table(n, rows)
    return FiniteSemigroup(S.table, labels) if labels else S


def read_sgt(path: str | Path) -> FiniteSemigroup:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_sgt(text)


def format_sgt(S: FiniteSemigroup) -> str:
    out = [str(S.order)]
    out += [" ".join(map(str, row)) for row in S.table]
    if S.labels:
        out.append("labels: " + " ".join(S.labels))
    return "\n".join(out) + "\n"


def write_sgt(S: FiniteSemigroup, path: str | Path) -> None:
    Path(path).write_text(format_sgt(S))


# constructions


def direct_product(S: FiniteSemigroup, T: FiniteSemigroup, mask_width: int = MASK_WIDTH) -> FiniteSemigroup:
    """S x T with (s,t)(s',t') = (ss', tt'); element (i, j) sits at index i*|T| + j."""
    m, k = S.order, T.order
    if m * k > mask_width:
        raise Overflow(f"|S||T| = {m * k} exceeds mask width {mask_width}")
    table = tuple(
        tuple(S.table[i][i2] * k + T.table[j][j2] for i2 in range(m) for j2 in range(k))
        for i in range(m)
        for j in range(k)
    )
    labels = None
    if S.labels or T.labels:
        labels = tuple(f"({S.label(i)},{T.label(j)})" for i in range(m) for j in range(k))
    return FiniteSemigroup(table, labels)


def product_subset(A: SubsetMask, B: SubsetMask) -> SubsetMask:
    """A x B inside the product encoding of ``direct_product``."""
    k = B.order
    return SubsetMask.of(A.order * k, (i * k + j for i in A for j in B))


@dataclass(frozen=True)
class QuotientMap:
    """A surjective homomorphism given by ``class_of[s]``."""

    source: FiniteSemigroup
    target: FiniteSemigroup
    class_of: tuple[int, ...]

    def __post_init__(self):
        if len(self.class_of) != self.source.order:
            raise TableError("class_of must cover every source element")
        if set(self.class_of) != set(self.target.elements):
            raise TableError("quotient map is not surjective")
        h, S, T = self.class_of, self.source, self.target
        for a in S.elements:
            for b in S.elements:
                if h[S.table[a][b]] != T.table[h[a]][h[b]]:
                    raise TableError(f"not a homomorphism at ({a}, {b})")

    def image(self, A: SubsetMask) -> SubsetMask:
        return SubsetMask.of(self.target.order, (self.class_of[a] for a in A))

    def preimage(self, B: SubsetMask) -> SubsetMask:
        return SubsetMask.of(self.source.order, (s for s in self.source.elements if self.class_of[s] in B))


def identity_map(S: FiniteSemigroup) -> QuotientMap:
    return QuotientMap(S, S, tuple(S.elements))


def trivial_map(S: FiniteSemigroup) -> QuotientMap:
    return QuotientMap(S, FiniteSemigroup(((0,),)), (0,) * S.order)


def collapse_relation(S: FiniteSemigroup) -> list[list[bool]]:
    """rel[a][b] iff ax = bx for some x."""
    rows = S.table
    return [[any(ra[x] == rb[x] for x in S.elements) for rb in rows] for ra in rows]


def collapse_quotient(S: FiniteSemigroup) -> QuotientMap:
    """Quotient by a ~ b iff ax = bx for some x, verified to be a congruence.

    Under SFC the target is checked to be cancellative; failure there raises
    TheoremViolation.
    """
    n = S.order
    rel = collapse_relation(S)
    for a in range(n):
        for b in range(n):
            if not rel[a][b]:
                continue
            for c in range(n):
                if rel[b][c] and not rel[a][c]:
                    raise NotAnEquivalence("collapse relation is not transitive", (a, b, c))
    class_of = [-1] * n
    reps: list[int] = []
    for a in range(n):
        if class_of[a] < 0:
            for b in range(a, n):
                if rel[a][b]:
                    class_of[b] = len(reps)
            reps.append(a)
    t = S.table
    for a in range(n):
        for a2 in range(a + 1, n):
            if not rel[a][a2]:
                continue
            for b in range(n):
                if class_of[t[a][b]] != class_of[t[a2][b]] or class_of[t[b][a]] != class_of[t[b][a2]]:
                    raise NotWellDefined("collapse relation is not a congruence", (a, a2, b))
    target = FiniteSemigroup(tuple(tuple(class_of[t[x][y]] for y in reps) for x in reps))
    qmap = QuotientMap(S, target, tuple(class_of))

    from .densities import satisfies_sfc

    if satisfies_sfc(S):
        flags = classify(target)
        if not (flags.left_cancellative and flags.right_cancellative):
            raise TheoremViolation(f"SFC semigroup with non-cancellative collapse quotient:\n{S}")
    return qmap


# ideals


def principal_left_ideal(S: FiniteSemigroup, a: int) -> SubsetMask:
    """{a} together with Sa."""
    return SubsetMask.of(S.order, [a] + [S.table[x][a] for x in S.elements])


def principal_right_ideal(S: FiniteSemigroup, a: int) -> SubsetMask:
    return SubsetMask.of(S.order, [a] + list(S.table[a]))


def minimal_left_ideals(S: FiniteSemigroup) -> list[SubsetMask]:
    # every left ideal contains a principal one, so minimal ones are principal
    principals = {principal_left_ideal(S, a) for a in S.elements}
    minimal = [L for L in principals if not any(M != L and M.issubset(L) for M in principals)]
    return sorted(minimal, key=lambda L: min(L))


def kernel(S: FiniteSemigroup) -> SubsetMask:
    out = SubsetMask.empty(S.order)
    for L in minimal_left_ideals(S):
        out = out | L
    return out


def is_left_ideal(S: FiniteSemigroup, mask: SubsetMask) -> bool:
    return all(S.table[x][a] in mask for a in mask for x in S.elements)


def is_right_ideal(S: FiniteSemigroup, mask: SubsetMask) -> bool:
    return all(S.table[a][x] in mask for a in mask for x in S.elements)


def is_two_sided_ideal(S: FiniteSemigroup, mask: SubsetMask) -> bool:
    return bool(mask) and is_left_ideal(S, mask) and is_right_ideal(S, mask)


def idempotents(S: FiniteSemigroup) -> SubsetMask:
    return SubsetMask.of(S.order, (e for e in S.elements if S.table[e][e] == e))


def right_zeros(S: FiniteSemigroup) -> SubsetMask:
    """{z : xz = z for every x}."""
    return SubsetMask.of(S.order, (z for z in S.elements if all(S.table[x][z] == z for x in S.elements)))


# structural predicates


def has_collapse_property(S: FiniteSemigroup) -> tuple[bool, Optional[tuple[int, int]]]:
    """Whether every pair a, b has some x with ax = bx; else the first failing pair."""
    rows = S.table
    for a in S.elements:
        for b in range(a + 1, S.order):
            if not any(rows[a][x] == rows[b][x] for x in S.elements):
                return False, (a, b)
    return True, None


def _below(S: FiniteSemigroup, s: int, t: int) -> bool:
    return s == t or S.table[s][t] == t


def is_cofinal(S: FiniteSemigroup, A: SubsetMask) -> bool:
    """Cofinality of A for the order s <= t iff s = t or st = t.

    Requires the collapse property, under which the order is directed.
    """
    ok, pair = has_collapse_property(S)
    if not ok:
        raise PreconditionViolated(f"collapse property fails at {pair}")
    for x in S.elements:
        for y in S.elements:
            if not any(_below(S, x, t) and _below(S, y, t) for t in S.elements):
                raise PreconditionViolated(f"order is not directed at ({x}, {y})")
    return all(any(_below(S, s, t) for t in A) for s in S.elements)


def is_thick(S: FiniteSemigroup, A: SubsetMask) -> bool:
    """Some right translate of every finite F lies in A; F = S is the worst case."""
    return any(all(S.table[f][x] in A for f in S.elements) for x in S.elements)


@dataclass(frozen=True)
class StructureFlags:
    commutative: bool
    left_cancellative: bool
    right_cancellative: bool
    group: bool
    band: bool
    has_right_zero: bool
    has_identity: bool

    def as_dict(self) -> dict[str, bool]:
        return dict(self.__dict__)


def classify(S: FiniteSemigroup) -> StructureFlags:
    n, t = S.order, S.table
    commutative = all(t[a][b] == t[b][a] for a in range(n) for b in range(a + 1, n))
    left_canc = all(len(set(row)) == n for row in t)
    right_canc = all(len({t[x][a] for x in range(n)}) == n for a in range(n))
    identity = any(all(t[e][x] == x and t[x][e] == x for x in range(n)) for e in range(n))
    return StructureFlags(
        commutative=commutative,
        left_cancellative=left_canc,
        right_cancellative=right_canc,
        group=left_canc and right_canc and identity,
        band=all(t[e][e] == e for e in range(n)),
        has_right_zero=bool(right_zeros(S)),
        has_identity=identity,
    )


def brute_isomorphic(
    S: FiniteSemigroup, T: FiniteSemigroup, allow_anti: bool = False, bound: int = ISO_BOUND
) -> bool:
    """Search for a bijection phi with phi(ab) = phi(a)phi(b) (or phi(b)phi(a))."""
    if S.order != T.order:
        raise SizeMismatch(f"orders {S.order} and {T.order} differ")
    if S.order > bound:
        raise BoundExceeded(f"order {S.order} above isomorphism bound {bound}")
    modes = (False, True) if allow_anti else (False,)
    return any(_find_iso(S, T, anti) for anti in modes)


def _find_iso(S: FiniteSemigroup, T: FiniteSemigroup, anti: bool) -> bool:
    n = S.order
    s, t = S.table, T.table
    phi = [-1] * n
    used = [False] * n

    def consistent(k: int) -> bool:
        for a in range(k + 1):
            for b in range(k + 1):
                if a != k and b != k:
                    continue
                ab = s[a][b]
                if phi[ab] < 0:
                    continue
                want = t[phi[b]][phi[a]] if anti else t[phi[a]][phi[b]]
                if phi[ab] != want:
                    return False
        # products landing on k from already placed pairs
        for a in range(k):
            for b in range(k):
                if s[a][b] == k:
                    want = t[phi[b]][phi[a]] if anti else t[phi[a]][phi[b]]
                    if phi[k] != want:
                        return False
        return True

    def extend(k: int) -> bool:
        if k == n:
            return True
        for v in range(n):
            if used[v]:
                continue
            phi[k], used[v] = v, True
            if consistent(k) and extend(k + 1):
                return True
            phi[k], used[v] = -1, False
        return False

    return extend(0)

