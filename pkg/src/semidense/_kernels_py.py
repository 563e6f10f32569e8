"""Pure-Python reference implementations of the hot kernels.

Every function here has a twin with the same signature in ``_ckernels.pyx``.
Tables are flat row-major sequences of length ``n*n``; subsets are int masks.
"""

from __future__ import annotations

from typing import Optional, Sequence

_DEDUP_NONE, _DEDUP_ISO, _DEDUP_ANTI = 0, 1, 2


def first_nonassociative(flat: Sequence[int], n: int) -> Optional[tuple[int, int, int]]:
    """Return the first triple (i, j, k) in lexicographic order with (ij)k != i(jk)."""
    for i in range(n):
        row_i = i * n
        for j in range(n):
            ij = flat[row_i + j]
            for k in range(n):
                if flat[ij * n + k] != flat[row_i + flat[j * n + k]]:
                    return (i, j, k)
    return None


def _cell_consistent(t: list[int], n: int, i: int, j: int) -> bool:
    # Check every fully defined triple that reads cell (i, j).
    # position t[a][b] with (a, b) = (i, j)
    x = t[i * n + j]
    for c in range(n):
        xc = t[x * n + c]
        bc = t[j * n + c]
        if xc < 0 or bc < 0:
            continue
        a_bc = t[i * n + bc]
        if a_bc >= 0 and a_bc != xc:
            return False
    # position t[b][c] with (b, c) = (i, j)
    for a in range(n):
        ab = t[a * n + i]
        if ab < 0:
            continue
        lhs = t[ab * n + j]
        rhs = t[a * n + x]
        if lhs >= 0 and rhs >= 0 and lhs != rhs:
            return False
    # position t[ab][c] with ab = i, c = j
    for a in range(n):
        for b in range(n):
            if t[a * n + b] != i:
                continue
            bc = t[b * n + j]
            if bc < 0:
                continue
            rhs = t[a * n + bc]
            if rhs >= 0 and rhs != x:
                return False
    # position t[a][bc] with a = i, bc = j
    for b in range(n):
        for c in range(n):
            if t[b * n + c] != j:
                continue
            ab = t[i * n + b]
            if ab < 0:
                continue
            lhs = t[ab * n + c]
            if lhs >= 0 and lhs != x:
                return False
    return True


def is_canonical(flat: Sequence[int], n: int, perms: Sequence[Sequence[int]], anti: bool) -> bool:
    """True iff ``flat`` is lexicographically minimal among its relabelings.

    ``perms`` lists every bijection old -> new. With ``anti`` the transposes of
    the relabelings are also candidates.
    """
    size = n * n
    for p in perms:
        inv = [0] * n
        for old, new in enumerate(p):
            inv[new] = old
        for transpose in ((False, True) if anti else (False,)):
            for pos in range(size):
                x, y = divmod(pos, n)
                if transpose:
                    x, y = y, x
                val = p[flat[inv[x] * n + inv[y]]]
                cur = flat[pos]
                if val < cur:
                    return False
                if val > cur:
                    break
    return True


def enumerate_tables(
    n: int, first_row: Sequence[int], dedup: int, perms: Sequence[Sequence[int]]
) -> list[tuple[int, ...]]:
    """All associative tables of order n whose row 0 equals ``first_row``.

    Depth-first in row-major cell order with values ascending, so output is in
    lexicographic table order. ``dedup`` 1 keeps isomorphism-class minima,
    2 additionally quotients by transposition.
    """
    size = n * n
    t = [-1] * size
    out: list[tuple[int, ...]] = []
    anti = dedup == _DEDUP_ANTI

    def place(pos: int) -> None:
        if pos == size:
            if dedup == _DEDUP_NONE or is_canonical(t, n, perms, anti):
                out.append(tuple(t))
            return
        i, j = divmod(pos, n)
        values = (first_row[j],) if i == 0 else range(n)
        for v in values:
            t[pos] = v
            if _cell_consistent(t, n, i, j):
                place(pos + 1)
        t[pos] = -1

    place(0)
    return out


def invariant_subsets(flat: Sequence[int], n: int) -> list[int]:
    """Every nonempty mask K with sK == K for all s, ascending."""
    found = []
    for k in range(1, 1 << n):
        members = [y for y in range(n) if k >> y & 1]
        for s in range(n):
            row = s * n
            img = 0
            for y in members:
                img |= 1 << flat[row + y]
            if img != k:
                break
        else:
            found.append(k)
    return found


def dt_oracle(pre: Sequence[int], n: int) -> tuple[int, int, int]:
    """min over nonempty F of max_s |F & pre[s]| / |F|.

    Returns (numerator, denominator, F) unreduced; ties keep the lowest F.
    """
    best_num, best_den, best_f = 2, 1, 0
    for f in range(1, 1 << n):
        size = f.bit_count()
        top = 0
        for m in pre:
            c = (f & m).bit_count()
            if c > top:
                top = c
                if top * best_den >= best_num * size:
                    break
        if top * best_den < best_num * size:
            best_num, best_den, best_f = top, size, f
            if top == 0:
                break
    return best_num, best_den, best_f
