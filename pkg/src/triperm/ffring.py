"""Dense arithmetic in R_k = F_p[x_1..x_k] / (x_i^p - x_i).

A ``ReducedPoly`` stores all p^k coefficients in one flat int64 array.  The
coefficient of x^a lives at index a_1 + a_2*p + ... + a_k*p^(k-1), so x_1 is
the least significant digit.  Reshaping that array in Fortran order gives a
k-dimensional grid whose axis j belongs to x_(j+1); every bulk routine in this
module works on that grid view.

Because R_k is canonically the ring of all functions F_p^k -> F_p, the module
also provides the two directions of that isomorphism: ``value_table`` (all
values at once) and ``grid_interpolate`` (back to coefficients).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import UsageError

MAX_PRIME = 1 << 16


def is_prime(n: int) -> bool:
    """Deterministic trial division; enough for the supported range."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, (int, np.integer)) or isinstance(p, bool):
        raise UsageError(f"modulus must be an integer, got {p!r}")
    p = int(p)
    if not 2 <= p <= MAX_PRIME or not is_prime(p):
        raise UsageError(f"modulus must be a prime in [2, 2^16], got {p}")
    return p


@dataclass
class MultCounter:
    """Running tally of F_p multiplications.

    Passed explicitly into the routines that count; nothing is global.
    """

    count: int = 0

    def add(self, k: int = 1) -> None:
        self.count += k


def pow_counted(x: int, e: int, p: int, counter: MultCounter | None = None) -> int:
    """x^e mod p by left-to-right square and multiply, charging each product."""
    if e == 0:
        return 1
    result = x % p
    for bit in bin(e)[3:]:
        result = result * result % p
        if counter is not None:
            counter.add()
        if bit == "1":
            result = result * x % p
            if counter is not None:
                counter.add()
    return result


# -- per-axis transforms -------------------------------------------------


@lru_cache(maxsize=None)
def _vandermonde(p: int) -> np.ndarray:
    # V[a, e] = a^e; maps coefficients along one axis to values.
    v = np.array([[pow(a, e, p) for e in range(p)] for a in range(p)], dtype=np.int64)
    v.setflags(write=False)
    return v


@lru_cache(maxsize=None)
def _indicator_matrix(p: int) -> np.ndarray:
    # Column a holds the coefficients of 1 - (x - a)^(p-1), the indicator of a.
    m = np.zeros((p, p), dtype=np.int64)
    for a in range(p):
        for e in range(p):
            c = math.comb(p - 1, e) * pow(-a % p, p - 1 - e, p)
            m[e, a] = -c % p
        m[0, a] = (m[0, a] + 1) % p
    m.setflags(write=False)
    return m


def _along_axes(arr: np.ndarray, mat: np.ndarray, p: int, axes: Iterable[int] | None = None) -> np.ndarray:
    if axes is None:
        axes = range(arr.ndim)
    out = arr
    for ax in axes:
        out = np.moveaxis(np.tensordot(mat, out, axes=([1], [ax])), 0, ax) % p
    return out


def values_from_grid(grid: np.ndarray, p: int, axes: Iterable[int] | None = None) -> np.ndarray:
    """Coefficient grid -> value grid along ``axes`` (all axes by default)."""
    return _along_axes(np.asarray(grid, dtype=np.int64), _vandermonde(p), p, axes)


def grid_from_values(values: np.ndarray, p: int, axes: Iterable[int] | None = None) -> np.ndarray:
    """Value grid -> coefficient grid, as a sum of point indicators."""
    return _along_axes(np.asarray(values, dtype=np.int64), _indicator_matrix(p), p, axes)


def index_to_exponents(index: int, p: int, arity: int) -> tuple[int, ...]:
    out = []
    for _ in range(arity):
        index, d = divmod(index, p)
        out.append(d)
    return tuple(out)


def exponents_to_index(exps: Sequence[int], p: int) -> int:
    idx = 0
    for e in reversed(exps):
        idx = idx * p + e
    return idx


def reduce_exponent(e: int, p: int) -> int:
    if e < 0:
        raise UsageError(f"negative exponent {e}")
    return 0 if e == 0 else 1 + (e - 1) % (p - 1)


class ReducedPoly:
    """Immutable element of R_k over F_p."""

    __slots__ = ("p", "arity", "coeffs")

    def __init__(self, p: int, arity: int, coeffs: np.ndarray | Sequence[int]):
        arr = np.array(coeffs, dtype=np.int64).reshape(-1) % p
        if arity < 0:
            raise UsageError("arity must be non-negative")
        if arr.size != p**arity:
            raise UsageError(f"expected {p**arity} coefficients, got {arr.size}")
        arr.setflags(write=False)
        self.p = p
        self.arity = arity
        self.coeffs = arr

    # constructors

    @classmethod
    def zero(cls, p: int, arity: int) -> ReducedPoly:
        return cls(p, arity, np.zeros(p**arity, dtype=np.int64))

    @classmethod
    def constant(cls, p: int, arity: int, c: int) -> ReducedPoly:
        arr = np.zeros(p**arity, dtype=np.int64)
        arr[0] = c % p
        return cls(p, arity, arr)

    @classmethod
    def variable(cls, p: int, arity: int, i: int) -> ReducedPoly:
        """The coordinate x_i (1-indexed)."""
        if not 1 <= i <= arity:
            raise UsageError(f"variable x_{i} out of range for arity {arity}")
        return cls.from_terms(p, arity, {tuple(int(j == i - 1) for j in range(arity)): 1})

    @classmethod
    def from_terms(cls, p: int, arity: int, terms: Mapping[tuple[int, ...], int]) -> ReducedPoly:
        """Build from already reduced exponent tuples (entries < p)."""
        arr = np.zeros(p**arity, dtype=np.int64)
        for exps, c in terms.items():
            if len(exps) != arity or any(not 0 <= e < p for e in exps):
                raise UsageError(f"exponent {exps} is not reduced for p={p}, arity={arity}")
            i = exponents_to_index(exps, p)
            arr[i] = (arr[i] + c) % p
        return cls(p, arity, arr)

    @classmethod
    def from_grid(cls, p: int, grid: np.ndarray) -> ReducedPoly:
        grid = np.asarray(grid)
        return cls(p, grid.ndim, grid.reshape(-1, order="F"))

    # views

    @property
    def grid(self) -> np.ndarray:
        return self.coeffs.reshape((self.p,) * self.arity, order="F")

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def coeff(self, exps: Sequence[int]) -> int:
        return int(self.coeffs[exponents_to_index(exps, self.p)])

    @property
    def constant_term(self) -> int:
        return int(self.coeffs[0])

    @property
    def top_coeff(self) -> int:
        """Coefficient of (x_1 ... x_k)^(p-1); the constant term when k = 0."""
        return int(self.coeffs[-1])

    def terms(self) -> Iterator[tuple[tuple[int, ...], int]]:
        for i in np.flatnonzero(self.coeffs):
            yield index_to_exponents(int(i), self.p, self.arity), int(self.coeffs[i])

    def nnz(self) -> int:
        return int(np.count_nonzero(self.coeffs))

    def depends_on(self, i: int) -> bool:
        """Whether x_i (1-indexed) occurs in some monomial."""
        g = np.moveaxis(self.grid, i - 1, 0)
        return bool(g[1:].any())

    # arity changes

    def extend(self, arity: int) -> ReducedPoly:
        """Embed R_k into R_arity (new variables appended, unused)."""
        if arity < self.arity:
            raise UsageError("cannot extend to a smaller arity")
        arr = np.zeros(self.p**arity, dtype=np.int64)
        arr[: self.coeffs.size] = self.coeffs
        return ReducedPoly(self.p, arity, arr)

    def truncate(self, arity: int) -> ReducedPoly:
        """Inverse of ``extend``; the dropped variables must not occur."""
        n = self.p**arity
        if arity > self.arity or self.coeffs[n:].any():
            raise UsageError(f"polynomial depends on variables beyond x_{arity}")
        return ReducedPoly(self.p, arity, self.coeffs[:n])

    # arithmetic

    def _check(self, other: ReducedPoly) -> None:
        if not isinstance(other, ReducedPoly):
            raise UsageError(f"expected ReducedPoly, got {type(other).__name__}")
        if other.p != self.p or other.arity != self.arity:
            raise UsageError(
                f"mismatch: (p={self.p}, k={self.arity}) vs (p={other.p}, k={other.arity})"
            )

    def __add__(self, other: ReducedPoly) -> ReducedPoly:
        self._check(other)
        return ReducedPoly(self.p, self.arity, self.coeffs + other.coeffs)

    def __sub__(self, other: ReducedPoly) -> ReducedPoly:
        self._check(other)
        return ReducedPoly(self.p, self.arity, self.coeffs - other.coeffs)

    def __neg__(self) -> ReducedPoly:
        return ReducedPoly(self.p, self.arity, -self.coeffs)

    def scale(self, c: int) -> ReducedPoly:
        return ReducedPoly(self.p, self.arity, self.coeffs * (c % self.p))

    def __mul__(self, other: ReducedPoly | int) -> ReducedPoly:
        if isinstance(other, (int, np.integer)):
            return self.scale(int(other))
        self._check(other)
        p, k = self.p, self.arity
        if k == 0:
            return ReducedPoly(p, 0, self.coeffs * other.coeffs)
        # Full product has exponents up to 2p-2 per variable; then fold.
        big = np.zeros((2 * p - 1,) * k, dtype=np.int64)
        g = other.grid
        for exps, c in self.terms():
            region = tuple(slice(e, e + p) for e in exps)
            big[region] = (big[region] + c * g) % p
        for ax in range(k):
            lo = [slice(None)] * k
            hi = [slice(None)] * k
            lo[ax] = slice(1, p)
            hi[ax] = slice(p, 2 * p - 1)
            big[tuple(lo)] += big[tuple(hi)]
            keep = [slice(None)] * k
            keep[ax] = slice(0, p)
            big = big[tuple(keep)] % p
        return ReducedPoly.from_grid(p, big)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> ReducedPoly:
        result = ReducedPoly.constant(self.p, self.arity, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ReducedPoly):
            return NotImplemented
        return (
            self.p == other.p
            and self.arity == other.arity
            and np.array_equal(self.coeffs, other.coeffs)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.arity, self.coeffs.tobytes()))

    def __repr__(self) -> str:
        return f"ReducedPoly(p={self.p}, arity={self.arity}, {self.pretty()})"

    def pretty(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = [f"x{i + 1}" for i in range(self.arity)]
        parts = []
        for exps, c in self.terms():
            mono = "*".join(
                names[j] if e == 1 else f"{names[j]}^{e}" for j, e in enumerate(exps) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts) if parts else "0"

    # function view

    def values(self) -> np.ndarray:
        """Value grid over F_p^k; axis j is the coordinate x_(j+1)."""
        return values_from_grid(self.grid, self.p)

    def __call__(self, *point: int) -> int:
        return evaluate(self, point)

    # serialization

    def to_dict(self) -> dict:
        return {"arity": self.arity, "terms": [[list(e), c] for e, c in self.terms()]}

    @classmethod
    def from_dict(cls, d: Mapping, p: int) -> ReducedPoly:
        try:
            arity = d["arity"]
            terms = d["terms"]
        except (KeyError, TypeError) as exc:
            raise UsageError(f"polynomial document needs 'arity' and 'terms': {exc}") from None
        if not isinstance(arity, int) or arity < 0:
            raise UsageError(f"bad arity {arity!r}")
        arr = np.zeros(p**arity, dtype=np.int64)
        seen = set()
        for term in terms:
            try:
                exps, c = term
                exps = [int(e) for e in exps]
            except (TypeError, ValueError):
                raise UsageError(f"malformed term {term!r}") from None
            if len(exps) != arity:
                raise UsageError(f"term {term!r} does not have arity {arity}")
            for e in exps:
                if not 0 <= e < p:
                    hint = reduce_exponent(e, p) if e >= 0 else None
                    raise UsageError(
                        f"exponent {e} in term {term!r} is not reduced mod x^{p} = x"
                        + (f"; use {hint} instead" if hint is not None else "")
                    )
            if not isinstance(c, int) or not 0 <= c < p:
                raise UsageError(f"coefficient {c!r} must be an integer in [0, {p})")
            key = tuple(exps)
            if key in seen:
                raise UsageError(f"duplicate monomial {key}")
            seen.add(key)
            arr[exponents_to_index(key, p)] = c
        return cls(p, arity, arr)


# -- module-level operations ---------------------------------------------


def canonical_reduce(raw: Mapping[tuple[int, ...], int], p: int, arity: int) -> ReducedPoly:
    """Reduce arbitrary exponents with x^p = x and sum the colliding terms."""
    arr = np.zeros(p**arity, dtype=np.int64)
    for exps, c in raw.items():
        if len(exps) != arity:
            raise UsageError(f"exponent tuple {exps} does not have arity {arity}")
        idx = exponents_to_index([reduce_exponent(e, p) for e in exps], p)
        arr[idx] = (arr[idx] + c) % p
    return ReducedPoly(p, arity, arr)


def ring_arith(f: ReducedPoly, g: ReducedPoly | None, op: str) -> ReducedPoly:
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "neg":
        return -f
    raise UsageError(f"unknown ring operation {op!r}")


def evaluate(f: ReducedPoly, v: Sequence[int], counter: MultCounter | None = None) -> int:
    """Value of f at v by nested Horner, charging every product to ``counter``."""
    if len(v) != f.arity:
        raise UsageError(f"point of length {len(v)} for arity {f.arity}")
    p = f.p
    v = [int(x) % p for x in v]

    def rec(block: np.ndarray, k: int) -> int:
        # block: flat coefficients of a polynomial in x_1..x_k
        if k == 0:
            return int(block[0])
        step = p ** (k - 1)
        top = -1
        for e in range(p - 1, -1, -1):
            if block[e * step:(e + 1) * step].any():
                top = e
                break
        if top < 0:
            return 0
        x = v[k - 1]
        acc = rec(block[top * step:(top + 1) * step], k - 1)
        for e in range(top - 1, -1, -1):
            acc = acc * x % p
            if counter is not None:
                counter.add()
            acc = (acc + rec(block[e * step:(e + 1) * step], k - 1)) % p
        return acc

    return rec(f.coeffs, f.arity)


def value_table(f: ReducedPoly) -> dict[tuple[int, ...], int]:
    """All values of f as a mapping point -> value."""
    vals = f.values().reshape(-1, order="F")
    return {index_to_exponents(i, f.p, f.arity): int(x) for i, x in enumerate(vals)}


def grid_interpolate(
    values: Mapping[tuple[int, ...], int] | np.ndarray, p: int, arity: int | None = None
) -> ReducedPoly:
    """The unique f in R_k with the given values on all of F_p^k.

    ``values`` is either a mapping from points to scalars or a value grid
    (axis j = coordinate x_(j+1)).
    """
    if isinstance(values, np.ndarray):
        grid = values
        if arity is not None and grid.ndim != arity:
            raise UsageError("value grid has the wrong dimension")
    else:
        if arity is None:
            arity = len(next(iter(values))) if values else 0
        if len(values) != p**arity:
            raise UsageError(f"value table has {len(values)} entries, need {p**arity}")
        flat = np.zeros(p**arity, dtype=np.int64)
        seen = np.zeros(p**arity, dtype=bool)
        for point, val in values.items():
            if len(point) != arity or any(not 0 <= c < p for c in point):
                raise UsageError(f"point {point} is not in F_{p}^{arity}")
            i = exponents_to_index(point, p)
            flat[i] = val % p
            seen[i] = True
        if not seen.all():
            raise UsageError("value table does not cover every point")
        grid = flat.reshape((p,) * arity, order="F")
    return ReducedPoly.from_grid(p, grid_from_values(grid, p))


def substitute(f: ReducedPoly, G: Sequence[ReducedPoly]) -> ReducedPoly:
    """f(G_1, ..., G_k), reduced.  All G_j share one arity and modulus."""
    if len(G) != f.arity:
        raise UsageError(f"substitute needs {f.arity} polynomials, got {len(G)}")
    if not G:
        raise UsageError("cannot infer target arity from an empty substitution; use extend()")
    p, arity = f.p, G[0].arity
    for g in G:
        if g.p != p or g.arity != arity:
            raise UsageError("substituted polynomials must share modulus and arity")
    fvals = f.values()
    gvals = tuple(g.values() for g in G)
    return ReducedPoly.from_grid(p, grid_from_values(fvals[gvals], p))


def delta_poly(p: int, i: int) -> ReducedPoly:
    """Indicator of the point (p-1, ..., p-1) in F_p^i; the constant 1 for i = 0."""
    if i < 0:
        raise UsageError("delta_poly needs i >= 0")
    # prod_j (1 - (x_j + 1)^(p-1)), expanded one axis at a time
    col = _indicator_matrix(p)[:, p - 1]
    grid = np.ones((), dtype=np.int64)
    for _ in range(i):
        grid = np.multiply.outer(grid, col) % p
    # multiply.outer appends axes, so the first variable is axis 0
    return ReducedPoly.from_grid(p, grid)


def r_minus_test(f: ReducedPoly) -> bool:
    """Membership in R_k^-: no (x_1 ... x_k)^(p-1) term."""
    return f.top_coeff == 0
