"""The group BB_n(F_p) of strictly triangular permutations of F_p^n.

An element is sigma = (x_1 + g_1, x_2 + g_2(x_1), ..., x_n + g_n(x_1..x_{n-1}))
with each g_i stored as a ReducedPoly of arity i-1.

Products are function composition: ``compose(s, t)(v) == apply(s, apply(t, v))``.
Every conjugation identity below is read in that convention and is checked
as an exact coefficient identity when a certificate is built.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import DomainError, UsageError
from .ffring import (
    MultCounter,
    ReducedPoly,
    check_prime,
    delta_poly,
    evaluate,
    grid_from_values,
    r_minus_test,
)


@dataclass(frozen=True, eq=True)
class TriangularPermutation:
    p: int
    n: int
    components: tuple[ReducedPoly, ...]

    def __post_init__(self):
        check_prime(self.p)
        if self.n < 1:
            raise UsageError("a triangular permutation needs n >= 1")
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if len(comps) != self.n:
            raise UsageError(f"expected {self.n} components, got {len(comps)}")
        for i, g in enumerate(comps, start=1):
            if not isinstance(g, ReducedPoly) or g.p != self.p or g.arity != i - 1:
                raise UsageError(f"component {i} must be a ReducedPoly over F_{self.p} of arity {i - 1}")

    def __hash__(self):
        return hash((self.p, self.n, self.components))

    @classmethod
    def from_terms(cls, p: int, terms: Sequence[Mapping[tuple[int, ...], int]]) -> TriangularPermutation:
        """Shorthand: one {exponents: coefficient} dict per component."""
        return cls(p, len(terms), tuple(ReducedPoly.from_terms(p, i, t) for i, t in enumerate(terms)))

    def __call__(self, v: Sequence[int]) -> tuple[int, ...]:
        return apply(self, v)

    def __matmul__(self, other: TriangularPermutation) -> TriangularPermutation:
        return compose(self, other)

    def __repr__(self) -> str:
        parts = [f"x{i} + {g.pretty()}" if not g.is_zero() else f"x{i}" for i, g in enumerate(self.components, 1)]
        return f"TriangularPermutation(p={self.p}, ({', '.join(parts)}))"

    @property
    def size(self) -> int:
        return self.p**self.n

    def truncate(self, k: int) -> TriangularPermutation:
        """The induced map on the first k coordinates."""
        return TriangularPermutation(self.p, k, self.components[:k])

    def to_dict(self) -> dict:
        return {"p": self.p, "n": self.n, "components": [g.to_dict() for g in self.components]}

    @classmethod
    def from_dict(cls, d: Mapping) -> TriangularPermutation:
        try:
            p, n, comps = d["p"], d["n"], d["components"]
        except (KeyError, TypeError) as exc:
            raise UsageError(f"map document needs 'p', 'n', 'components': {exc}") from None
        p = check_prime(p)
        if not isinstance(comps, list) or len(comps) != n:
            raise UsageError(f"expected {n} components")
        polys = []
        for i, c in enumerate(comps):
            g = ReducedPoly.from_dict(c, p)
            if g.arity != i:
                raise UsageError(f"component {i + 1} must have arity {i}, got {g.arity}")
            polys.append(g)
        return cls(p, n, tuple(polys))


@dataclass(frozen=True)
class DiagonalMap:
    """D = (l_1 x_1, ..., l_n x_n) with every l_i nonzero."""

    p: int
    lambdas: tuple[int, ...]

    def __post_init__(self):
        lam = tuple(int(x) % self.p for x in self.lambdas)
        if any(x == 0 for x in lam):
            raise DomainError("diagonal entries must be nonzero")
        object.__setattr__(self, "lambdas", lam)

    @classmethod
    def identity(cls, p: int, n: int) -> DiagonalMap:
        return cls(p, (1,) * n)

    def inverse(self) -> DiagonalMap:
        return DiagonalMap(self.p, tuple(pow(x, -1, self.p) for x in self.lambdas))

    def is_identity(self) -> bool:
        return all(x == 1 for x in self.lambdas)

    def apply(self, v: Sequence[int], counter: MultCounter | None = None) -> tuple[int, ...]:
        out = []
        for lam, x in zip(self.lambdas, v):
            if lam != 1:
                x = x * lam % self.p
                if counter is not None:
                    counter.add()
            out.append(x)
        return tuple(out)


@dataclass(frozen=True)
class ConjugationCertificate:
    """(phi, D) with D^-1 . phi^-1 . sigma . phi . D == Delta."""

    phi: TriangularPermutation
    diag: DiagonalMap

    def to_dict(self) -> dict:
        return {"phi": self.phi.to_dict(), "diag": list(self.diag.lambdas)}

    @classmethod
    def from_dict(cls, d: Mapping) -> ConjugationCertificate:
        try:
            phi = TriangularPermutation.from_dict(d["phi"])
            diag = DiagonalMap(phi.p, tuple(d["diag"]))
        except (KeyError, TypeError) as exc:
            raise UsageError(f"certificate needs 'phi' and 'diag': {exc}") from None
        if len(diag.lambdas) != phi.n:
            raise UsageError("diagonal length does not match phi")
        return cls(phi, diag)

    def verify(self, sigma: TriangularPermutation) -> bool:
        chain = diag_conjugate(conjugate(sigma, self.phi), self.diag)
        return chain == delta_map(sigma.p, sigma.n)


# -- basic group structure -------------------------------------------------


def identity(p: int, n: int) -> TriangularPermutation:
    return TriangularPermutation(p, n, tuple(ReducedPoly.zero(p, i) for i in range(n)))


def elementary(p: int, n: int, i: int, g: ReducedPoly) -> TriangularPermutation:
    """The map touching only coordinate i: x_i -> x_i + g(x_1..x_{i-1})."""
    comps = [ReducedPoly.zero(p, j) for j in range(n)]
    comps[i - 1] = g
    return TriangularPermutation(p, n, tuple(comps))


def apply(sigma: TriangularPermutation, v: Sequence[int], counter: MultCounter | None = None) -> tuple[int, ...]:
    if len(v) != sigma.n:
        raise UsageError(f"point of length {len(v)} for n={sigma.n}")
    p = sigma.p
    v = [int(x) % p for x in v]
    return tuple(
        (v[i] + evaluate(g, v[:i], counter)) % p for i, g in enumerate(sigma.components)
    )


def _check_pair(a: TriangularPermutation, b: TriangularPermutation) -> None:
    if a.p != b.p or a.n != b.n:
        raise UsageError(f"shape mismatch: (p={a.p}, n={a.n}) vs (p={b.p}, n={b.n})")


def coordinate_values(sigma: TriangularPermutation, k: int) -> list[np.ndarray]:
    """Value grids over F_p^k of the first k output coordinates of sigma."""
    p = sigma.p
    out = []
    for j in range(k):
        g = sigma.components[j]
        vals = g.values().reshape((p,) * j + (1,) * (k - j))
        ident = np.arange(p).reshape((1,) * j + (p,) + (1,) * (k - j - 1))
        out.append(np.broadcast_to((vals + ident) % p, (p,) * k))
    return out


def compose(sigma: TriangularPermutation, tau: TriangularPermutation) -> TriangularPermutation:
    """sigma o tau, i.e. apply tau first."""
    _check_pair(sigma, tau)
    p, n = sigma.p, sigma.n
    coords = coordinate_values(tau, n - 1)
    comps = []
    for i in range(n):
        if i == 0:
            comps.append(sigma.components[0] + tau.components[0])
            continue
        # coordinate j of tau only depends on x_1..x_j: slice to i dims
        sub = tuple(c[(Ellipsis,) + (0,) * (n - 1 - i)] for c in coords[:i])
        gvals = sigma.components[i].values()[sub]
        total = (gvals + tau.components[i].values()) % p
        comps.append(ReducedPoly.from_grid(p, grid_from_values(total, p)))
    return TriangularPermutation(p, n, tuple(comps))


def compose_all(maps: Sequence[TriangularPermutation]) -> TriangularPermutation:
    """maps[0] o maps[1] o ... (the last one is applied first)."""
    out = maps[-1]
    for m in reversed(maps[:-1]):
        out = compose(m, out)
    return out


def elementary_factors(sigma: TriangularPermutation) -> list[TriangularPermutation]:
    """[(x_1+g_1), ..., (x_n+g_n)] whose composition in this order is sigma."""
    return [elementary(sigma.p, sigma.n, i, g) for i, g in enumerate(sigma.components, 1)]


def invert(sigma: TriangularPermutation) -> TriangularPermutation:
    """(x_n - g_n) o ... o (x_1 - g_1)."""
    p, n = sigma.p, sigma.n
    factors = [elementary(p, n, i, -g) for i, g in enumerate(sigma.components, 1)]
    return compose_all(factors[::-1])


def power(sigma: TriangularPermutation, m: int) -> TriangularPermutation:
    m %= sigma.size
    result = identity(sigma.p, sigma.n)
    base = sigma
    while m:
        if m & 1:
            result = compose(result, base)
        m >>= 1
        if m:
            base = compose(base, base)
    return result


def conjugate(sigma: TriangularPermutation, phi: TriangularPermutation) -> TriangularPermutation:
    """phi^-1 o sigma o phi."""
    return compose(invert(phi), compose(sigma, phi))


def diag_conjugate(sigma: TriangularPermutation, diag: DiagonalMap) -> TriangularPermutation:
    """D^-1 o sigma o D.  Component i becomes x_i + l_i^-1 g_i(l_1 x_1, ...)."""
    p = sigma.p
    lam = diag.lambdas
    if len(lam) != sigma.n:
        raise UsageError("diagonal length does not match the map")
    comps = []
    for i, g in enumerate(sigma.components):
        grid = g.grid
        # scaling x_j by l_j multiplies the coefficient of x_j^e by l_j^e
        for j in range(i):
            pw = np.array([pow(lam[j], e, p) for e in range(p)], dtype=np.int64)
            grid = grid * pw.reshape((1,) * j + (p,) + (1,) * (i - 1 - j)) % p
        comps.append(ReducedPoly.from_grid(p, grid).scale(pow(lam[i], -1, p)))
    return TriangularPermutation(p, sigma.n, tuple(comps))


def point_table(sigma: TriangularPermutation) -> np.ndarray:
    """next[zeta_inv(v)] = zeta_inv(sigma(v)) for every v, vectorized."""
    p, n = sigma.p, sigma.n
    coords = coordinate_values(sigma, n)
    idx = np.zeros((p,) * n, dtype=np.int64)
    for j in reversed(range(n)):
        idx = idx * p + coords[j]
    return idx.reshape(-1, order="F")


# -- digit bijection ---------------------------------------------------------


def zeta(m: int, p: int, n: int) -> tuple[int, ...]:
    """Base-p digits of m mod p^n, least significant first."""
    m %= p**n
    out = []
    for _ in range(n):
        m, d = divmod(m, p)
        out.append(d)
    return tuple(out)


def zeta_inv(v: Sequence[int], p: int) -> int:
    m = 0
    for d in reversed(v):
        m = m * p + int(d) % p
    return m


# -- maximal orbit maps --------------------------------------------------------


def invariants(sigma: TriangularPermutation) -> tuple[int, ...]:
    """c_i = coefficient of (x_1 ... x_{i-1})^(p-1) in g_i."""
    return tuple(g.top_coeff for g in sigma.components)


def is_maximal_orbit(sigma: TriangularPermutation) -> tuple[bool, tuple[int, ...] | None]:
    c = invariants(sigma)
    if all(c):
        return True, c
    return False, None


def _require_maximal(sigma: TriangularPermutation, what: str = "map") -> tuple[int, ...]:
    ok, c = is_maximal_orbit(sigma)
    if not ok:
        bad = invariants(sigma).index(0) + 1
        where = "the constant g_1" if bad == 1 else f"the (x_1...x_{bad - 1})^(p-1) coefficient of g_{bad}"
        raise DomainError(f"{what} is not of maximal orbit (Ostafe criterion: {where} is zero)")
    return c


def standard_form(sigma: TriangularPermutation) -> bool:
    """g_1 == 1 and g_2(0) = ... = g_n(0) = 0, i.e. sigma(0) = (1, 0, ..., 0)."""
    if sigma.components[0].constant_term != 1:
        return False
    return all(g.constant_term == 0 for g in sigma.components[1:])


def standard_form_representative(sigma: TriangularPermutation) -> tuple[TriangularPermutation, int]:
    """The unique standard-form sigma^e generating the same cyclic group.

    Returns (sigma^e, e) with gcd(e, p) = 1.
    """
    _require_maximal(sigma)
    p, n = sigma.p, sigma.n
    a = pow(sigma.components[0].constant_term, -1, p)
    s = power(sigma, a)
    step = power(s, p)
    target = (1,) + (0,) * (n - 1)
    w = apply(s, (0,) * n)
    for j in range(p ** (n - 1)):
        if w == target:
            e = a * (j * p + 1) % sigma.size
            return power(sigma, e), e
        w = apply(step, w)
    raise AssertionError("maximal orbit map never reached (1, 0, ..., 0)")


def solve_coboundary(tau: TriangularPermutation, k_poly: ReducedPoly) -> ReducedPoly:
    """The f with f - f o tau = k_poly and zero constant coefficient."""
    _require_maximal(tau, "tau")
    if k_poly.p != tau.p or k_poly.arity != tau.n:
        raise UsageError("k_poly must live in R_n for the same p, n as tau")
    if not r_minus_test(k_poly):
        raise DomainError(
            "k_poly has a nonzero (x_1...x_n)^(p-1) coefficient, so it is not in the image of e* - tau*"
        )
    p = tau.p
    nxt = point_table(tau)
    kv = k_poly.values().reshape(-1, order="F")
    f = np.zeros(tau.size, dtype=np.int64)
    cur = 0
    for _ in range(tau.size - 1):
        f[nxt[cur]] = (f[cur] - kv[cur]) % p
        cur = nxt[cur]
    sol = ReducedPoly.from_grid(p, grid_from_values(f.reshape((p,) * tau.n, order="F"), p))
    return sol - ReducedPoly.constant(p, tau.n, sol.constant_term)


def conjugate_to_standard(sigma: TriangularPermutation, tau: TriangularPermutation) -> TriangularPermutation:
    """The unique standard-form phi with phi^-1 o sigma o phi == tau."""
    _check_pair(sigma, tau)
    ls = _require_maximal(sigma, "sigma")
    lt = _require_maximal(tau, "tau")
    if ls != lt:
        raise DomainError(f"not conjugate: invariants {ls} != {lt}")
    p = sigma.p
    one = ReducedPoly.constant(p, 0, 1)
    phi = TriangularPermutation(p, 1, (one,))
    for k in range(2, sigma.n + 1):
        psi = TriangularPermutation(p, k, phi.components + (ReducedPoly.zero(p, k - 1),))
        rho = conjugate(sigma.truncate(k), psi)
        rhs = tau.components[k - 1] - rho.components[k - 1]
        f = solve_coboundary(tau.truncate(k - 1), rhs)
        phi = TriangularPermutation(p, k, phi.components + (f,))
    if conjugate(sigma, phi) != tau:
        raise AssertionError("conjugation identity failed")
    return phi


def delta_map(p: int, n: int) -> TriangularPermutation:
    """(x_1 + d_0, x_2 + d_1, ..., x_n + d_{n-1}); conjugate by zeta to m -> m+1."""
    return TriangularPermutation(p, n, tuple(delta_poly(p, i) for i in range(n)))


def conjugate_to_delta(sigma: TriangularPermutation) -> ConjugationCertificate:
    c = _require_maximal(sigma)
    p, n = sigma.p, sigma.n
    delta = delta_map(p, n)
    mu = invariants(delta)
    diag = DiagonalMap(p, tuple(ci * pow(mi, -1, p) % p for ci, mi in zip(c, mu)))
    # D . Delta . D^-1 has invariants l_i * mu_i = c_i
    target = diag_conjugate(delta, diag.inverse())
    phi = conjugate_to_standard(sigma, target)
    cert = ConjugationCertificate(phi, diag)
    if not cert.verify(sigma):
        raise AssertionError("certificate does not reproduce Delta")
    return cert


def mth_root(sigma: TriangularPermutation, m: int) -> TriangularPermutation:
    """tau with tau^m == sigma, for gcd(m, p) = 1."""
    if math.gcd(m, sigma.p) != 1:
        raise DomainError(f"m={m} is divisible by p={sigma.p}; no root is guaranteed")
    return power(sigma, pow(m % sigma.size, -1, sigma.size))


# -- random elements -------------------------------------------------------------


def random_triangular(
    p: int, n: int, rng: np.random.Generator, maximal: bool = False
) -> TriangularPermutation:
    """Uniform element of BB_n(F_p), or of its maximal-orbit subset."""
    comps = []
    for i in range(n):
        arr = rng.integers(0, p, size=p**i)
        if maximal:
            arr[-1] = rng.integers(1, p)
        comps.append(ReducedPoly(p, i, arr))
    return TriangularPermutation(p, n, tuple(comps))
