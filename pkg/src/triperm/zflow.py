"""Z-flows: one polynomial family sigma_T whose specialization at m is sigma^m.

Component i of a flow is a ReducedPoly over the ordered variables
(Q_0, ..., Q_{n-1}, x_1, ..., x_{i-1}), so its arity is n + i - 1.  Putting
Q_j := digit j of m recovers g_i of sigma^m.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import ResourceError, UsageError
from .ffring import ReducedPoly, check_prime, grid_from_values, values_from_grid
from .intpoly import digits
from .trigroup import TriangularPermutation, compose, identity, invariants, power

FLOW_CAP = 4096


@dataclass(frozen=True)
class FlowMap:
    p: int
    n: int
    components: tuple[ReducedPoly, ...]

    def __post_init__(self):
        check_prime(self.p)
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if len(comps) != self.n:
            raise UsageError(f"expected {self.n} flow components")
        for i, g in enumerate(comps, 1):
            if g.p != self.p or g.arity != self.n + i - 1:
                raise UsageError(f"flow component {i} must have arity {self.n + i - 1}")

    def __hash__(self):
        return hash((self.p, self.n, self.components))

    def names(self, i: int) -> list[str]:
        return [f"Q{j}" for j in range(self.n)] + [f"x{j + 1}" for j in range(i - 1)]

    def pretty(self) -> str:
        return ", ".join(
            f"x{i}" if g.is_zero() else f"x{i} + {g.pretty(self.names(i))}"
            for i, g in enumerate(self.components, 1)
        )

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "q_arity": self.n,
            "components": [g.to_dict() for g in self.components],
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> FlowMap:
        try:
            p = check_prime(d["p"])
            n = int(d["n"])
            if int(d["q_arity"]) != n:
                raise UsageError("q_arity must equal n")
            comps = tuple(ReducedPoly.from_dict(c, p) for c in d["components"])
        except (KeyError, TypeError) as exc:
            raise UsageError(f"bad flow document: {exc}") from None
        return cls(p, n, comps)


@dataclass(frozen=True)
class LevelFlow:
    """Component j is a ReducedPoly over (t, x_1, ..., x_{j-1})."""

    p: int
    n: int
    level: int
    components: tuple[ReducedPoly, ...]

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "level": self.level,
            "components": [g.to_dict() for g in self.components],
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> LevelFlow:
        try:
            p = check_prime(d["p"])
            comps = tuple(ReducedPoly.from_dict(c, p) for c in d["components"])
            return cls(p, int(d["n"]), int(d["level"]), comps)
        except (KeyError, TypeError) as exc:
            raise UsageError(f"bad level-flow document: {exc}") from None


def build_flow(sigma: TriangularPermutation, cap: int = FLOW_CAP) -> FlowMap:
    """Interpolate the coefficient sequences of sigma^0, ..., sigma^(p^n - 1).

    Each sequence has period p^n, and m -> digits(m) is a bijection of
    [0, p^n) onto F_p^n, so interpolating over the digit grid gives the flow.
    """
    p, n, size = sigma.p, sigma.n, sigma.size
    if size > cap:
        raise ResourceError(f"p^n = {size} exceeds the flow cap {cap}")
    stacks = [np.zeros((size, p**i), dtype=np.int64) for i in range(n)]
    cur = identity(p, n)
    for m in range(size):
        for i, g in enumerate(cur.components):
            stacks[i][m] = g.coeffs
        cur = compose(sigma, cur)
    comps = []
    for i, st in enumerate(stacks):
        # rows are indexed by m, i.e. by the mixed-radix digit vector of m
        grid = st.reshape((p,) * n + (p,) * i, order="F")
        comps.append(ReducedPoly.from_grid(p, grid_from_values(grid, p, axes=range(n))))
    return FlowMap(p, n, tuple(comps))


def _specialize_poly(g: ReducedPoly, q_values: tuple[int, ...]) -> ReducedPoly:
    """Fix the leading len(q_values) variables of g to the given values."""
    k = len(q_values)
    vals = values_from_grid(g.grid, g.p, axes=range(k))
    sub = vals[q_values]
    return ReducedPoly.from_grid(g.p, sub)


def specialize(flow: FlowMap, m: int) -> TriangularPermutation:
    q = digits(m, flow.p, flow.n)
    return TriangularPermutation(flow.p, flow.n, tuple(_specialize_poly(g, q) for g in flow.components))


@dataclass(frozen=True)
class WReport:
    lambdas: tuple[int, ...]
    passed: tuple[bool, ...]

    @property
    def ok(self) -> bool:
        return all(self.passed)

    def to_dict(self) -> dict:
        return {"lambdas": list(self.lambdas), "passed": list(self.passed), "ok": self.ok}


def w_membership(flow: FlowMap) -> WReport:
    """Check g_i = h + l * Q_{i-1} with h free of Q_{i-1}, ..., Q_{n-1}."""
    p, n = flow.p, flow.n
    lambdas, passed = [], []
    for i, g in enumerate(flow.components, 1):
        grid = g.grid
        # the single allowed monomial with a high digit variable: Q_{i-1}^1
        lam_idx = [0] * g.arity
        lam_idx[i - 1] = 1
        lam = int(grid[tuple(lam_idx)])
        # h must vanish wherever some Q_j with j >= i-1 has positive degree
        rest = grid.copy()
        rest[tuple(lam_idx)] = 0
        mask = np.zeros(rest.shape, dtype=bool)
        for j in range(i - 1, n):
            sl = [slice(None)] * g.arity
            sl[j] = slice(1, None)
            mask[tuple(sl)] = True
        lambdas.append(lam)
        passed.append(not rest[mask].any())
    return WReport(tuple(lambdas), tuple(passed))


def expected_lambdas(sigma: TriangularPermutation) -> tuple[int, ...]:
    """(-1)^(i-1) c_i when the first i-1 coordinates form a maximal orbit, else 0.

    sigma^(p^(i-1)) moves coordinate i by the orbit sum of g_i over the first
    i-1 coordinates; that sum is (-1)^(i-1) c_i over a single full orbit and
    vanishes (a multiple of p) otherwise.
    """
    p = sigma.p
    c = invariants(sigma)
    out = []
    for i, ci in enumerate(c, 1):
        full = all(c[: i - 1])
        out.append((-1) ** (i - 1) * ci % p if full else 0)
    return tuple(out)


def lagrange_basis(p: int) -> list[ReducedPoly]:
    """M_a(t) = prod_{j != a} (t - j)/(a - j) over F_p, in R_1."""
    t = ReducedPoly.variable(p, 1, 1)
    out = []
    for a in range(p):
        m = ReducedPoly.constant(p, 1, 1)
        for j in range(p):
            if j != a:
                m = (m * (t - ReducedPoly.constant(p, 1, j))).scale(pow(a - j, -1, p))
        out.append(m)
    return out


def level_flow(sigma: TriangularPermutation, i: int) -> LevelFlow:
    """Flow in one variable t for tau = sigma^(p^i): specialization at m is tau^m."""
    p, n = sigma.p, sigma.n
    if not 0 <= i <= n - 1:
        raise UsageError(f"level must be in [0, {n - 1}], got {i}")
    tau = power(sigma, p**i)
    basis = lagrange_basis(p)
    comps = [ReducedPoly.zero(p, 1 + j) for j in range(n)]
    cur = identity(p, n)
    for a in range(p):
        for j, g in enumerate(cur.components):
            # M_a(t) * g(x), with t the first variable
            term = np.multiply.outer(basis[a].coeffs, g.grid) % p
            comps[j] = comps[j] + ReducedPoly.from_grid(p, term)
        cur = compose(tau, cur)
    return LevelFlow(p, n, i, tuple(comps))


def specialize_level(flow: LevelFlow, m: int) -> TriangularPermutation:
    t = (m % flow.p,)
    return TriangularPermutation(flow.p, flow.n, tuple(_specialize_poly(g, t) for g in flow.components))
