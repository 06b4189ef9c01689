"""Brute-force ground truth for the rest of the package.

Everything here works on explicit tables or explicit matrices and is only
meant for desk-scale sizes; the caps are plain keyword arguments.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import ResourceError
from .ffring import ReducedPoly, grid_from_values
from .trigroup import TriangularPermutation, point_table

TABLE_CAP = 1 << 20
MATRIX_CAP = 4096
ENUM_CAP = 1 << 20


@dataclass(frozen=True)
class PermutationTable:
    """table[zeta_inv(v)] == zeta_inv(sigma(v))."""

    p: int
    n: int
    table: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.table) != list(range(self.p**self.n)):
            raise ValueError("table is not a bijection")

    def then(self, first: PermutationTable) -> PermutationTable:
        """self o first as tables."""
        return PermutationTable(self.p, self.n, tuple(self.table[i] for i in first.table))


def to_table(sigma: TriangularPermutation, cap: int = TABLE_CAP) -> PermutationTable:
    if sigma.size > cap:
        raise ResourceError(f"p^n = {sigma.size} exceeds the table cap {cap}")
    return PermutationTable(sigma.p, sigma.n, tuple(int(x) for x in point_table(sigma)))


def cycle_type(t: PermutationTable) -> Counter:
    """Multiset of cycle lengths, as a Counter length -> multiplicity."""
    seen = [False] * len(t.table)
    lengths: Counter = Counter()
    for start in range(len(t.table)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = t.table[i]
            length += 1
        lengths[length] += 1
    return lengths


def order(t: PermutationTable) -> int:
    out = 1
    for length in cycle_type(t):
        out = np.lcm(out, length)
    return int(out)


def rank_mod_p(mat: np.ndarray, p: int) -> int:
    """Row-reduce a copy of ``mat`` over F_p."""
    a = np.array(mat, dtype=np.int64) % p
    rows, cols = a.shape
    rank = 0
    for col in range(cols):
        nz = np.flatnonzero(a[rank:, col])
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        a[rank] = a[rank] * pow(int(a[rank, col]), -1, p) % p
        others = np.flatnonzero(a[:, col])
        others = others[others != rank]
        if others.size:
            a[others] = (a[others] - np.outer(a[others, col], a[rank])) % p
        rank += 1
        if rank == rows:
            break
    return rank


def star_matrix(sigma: TriangularPermutation, cap: int = MATRIX_CAP) -> np.ndarray:
    """Matrix of f -> f o sigma - f on R_n in the mixed-radix monomial basis.

    Column j is the coefficient vector of the image of the j-th monomial.
    """
    p, n, size = sigma.p, sigma.n, sigma.size
    if size > cap:
        raise ResourceError(f"operator dimension {size} exceeds the matrix cap {cap}")
    # monomial values: mono[v, a] = v^a, v and a both in mixed-radix order
    pts = np.array([[(j // p**i) % p for i in range(n)] for j in range(size)], dtype=np.int64)
    mono = np.ones((size, size), dtype=np.int64)
    for i in range(n):
        powers = np.array([[pow(int(x), int(e), p) for e in range(p)] for x in range(p)], dtype=np.int64)
        mono = mono * powers[pts[:, i][:, None], pts[:, i][None, :]] % p
    nxt = point_table(sigma)
    diff = (mono[nxt] - mono) % p
    # back to coefficients, one column at a time via the indicator transform
    grid = diff.reshape((p,) * n + (size,), order="F")
    coeffs = grid_from_values(grid, p, axes=range(n))
    return coeffs.reshape(size, size, order="F")


def star_kernel_dim(sigma: TriangularPermutation, cap: int = MATRIX_CAP) -> int:
    mat = star_matrix(sigma, cap)
    return sigma.size - rank_mod_p(mat, sigma.p)


def group_order(p: int, n: int, m: int = 0) -> int:
    """#BB_{n-m}(R_m) = p^((p^n - p^m)/(p-1))."""
    return p ** ((p**n - p**m) // (p - 1))


def enumerate_group(p: int, n: int, cap: int = ENUM_CAP) -> Iterator[TriangularPermutation]:
    """Every element of BB_n(F_p), in lexicographic coefficient order."""
    total = group_order(p, n)
    if total > cap:
        raise ResourceError(f"|BB_{n}(F_{p})| = {total} exceeds the enumeration cap {cap}")
    ncoef = (p**n - 1) // (p - 1)
    for flat in itertools.product(range(p), repeat=ncoef):
        comps = []
        off = 0
        for i in range(n):
            comps.append(ReducedPoly(p, i, flat[off:off + p**i]))
            off += p**i
        yield TriangularPermutation(p, n, tuple(comps))


def enumerate_count(p: int, n: int, cap: int = ENUM_CAP) -> int:
    return sum(1 for _ in enumerate_group(p, n, cap))


def _powers(t: PermutationTable) -> list[tuple[int, ...]]:
    ident = tuple(range(len(t.table)))
    out = [ident]
    cur = t.table
    while cur != ident:
        out.append(cur)
        cur = tuple(t.table[i] for i in cur)
    return out


def equivalence_check(a: TriangularPermutation, b: TriangularPermutation) -> bool:
    """<a> == <b> as cyclic subgroups, decided on tables."""
    ta, tb = to_table(a), to_table(b)
    return tb.table in set(_powers(ta)) and ta.table in set(_powers(tb))


def naive_orbit_power(t: PermutationTable, m: int, index: int) -> int:
    """sigma^m applied to a point index by m table lookups."""
    for _ in range(m % len(t.table)):
        index = t.table[index]
    return index
