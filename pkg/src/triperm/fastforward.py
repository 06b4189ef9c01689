"""Fast iteration of maximal-orbit maps through a conjugation to m -> m + 1.

A form stores sigma as

    mu . phi . D . zeta . INC . zeta^-1 . D^-1 . phi^-1 . mu^-1

with phi = t_1 . t_2 ... t_n a product of elementary factors t_i = (x_i + g_i),
D diagonal and mu an optional lower triangular wrap.  Raising to the m-th
power only touches INC, so sigma^m(v) costs the same as sigma(v).

Every F_p multiplication is charged to an explicit ``MultCounter``.  Powers
x^a inside a monomial use square and multiply; additions and the digit
arithmetic of zeta are free.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import UsageError
from .ffring import MultCounter, ReducedPoly, check_prime, evaluate, pow_counted
from .oracle import PermutationTable
from .trigroup import (
    DiagonalMap,
    TriangularPermutation,
    apply,
    conjugate_to_delta,
    delta_map,
    diag_conjugate,
    power,
    zeta,
    zeta_inv,
)

RNG_ID = "numpy.random.PCG64"


@dataclass(frozen=True)
class ElementaryFactor:
    """x_i -> x_i + sign * g(x_1, ..., x_{i-1}), all other coordinates fixed."""

    i: int
    g: ReducedPoly
    sign: int = 1
    _terms: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise UsageError("factor sign must be +1 or -1")
        if self.g.arity != self.i - 1:
            raise UsageError(f"factor on x_{self.i} needs g of arity {self.i - 1}")
        object.__setattr__(self, "_terms", tuple(self.g.terms()))

    def inverse(self) -> ElementaryFactor:
        return ElementaryFactor(self.i, self.g, -self.sign)

    def shift(self, v: Sequence[int], counter: MultCounter | None = None) -> int:
        """sign * g(v_1..v_{i-1}), evaluated monomial by monomial."""
        p = self.g.p
        total = 0
        for exps, c in self._terms:
            val = None
            for j, e in enumerate(exps):
                if e == 0:
                    continue
                xe = pow_counted(v[j], e, p, counter)
                if val is None:
                    val = xe
                else:
                    val = val * xe % p
                    if counter is not None:
                        counter.add()
            if val is None:
                val = c
            elif c != 1:
                val = val * c % p
                if counter is not None:
                    counter.add()
            total += val
        return self.sign * total % p

    def apply(self, v: Sequence[int], counter: MultCounter | None = None) -> list[int]:
        w = list(v)
        w[self.i - 1] = (w[self.i - 1] + self.shift(v, counter)) % self.g.p
        return w

    def to_dict(self) -> dict:
        return {"i": self.i, "sign": self.sign, "g": self.g.to_dict()}

    @classmethod
    def from_dict(cls, d: Mapping, p: int) -> ElementaryFactor:
        try:
            return cls(int(d["i"]), ReducedPoly.from_dict(d["g"], p), int(d["sign"]))
        except (KeyError, TypeError) as exc:
            raise UsageError(f"bad factor document: {exc}") from None


@dataclass(frozen=True)
class FastForwardForm:
    p: int
    n: int
    factors: tuple[ElementaryFactor, ...]
    diag: DiagonalMap
    wrap: tuple[ElementaryFactor, ...] = ()
    seed_info: Mapping | None = None

    def __post_init__(self):
        check_prime(self.p)
        object.__setattr__(self, "factors", tuple(self.factors))
        object.__setattr__(self, "wrap", tuple(self.wrap))
        if len(self.diag.lambdas) != self.n:
            raise UsageError("diagonal length does not match n")
        for f in self.factors + self.wrap:
            if not 1 <= f.i <= self.n or f.g.p != self.p:
                raise UsageError(f"factor on x_{f.i} does not fit (p={self.p}, n={self.n})")

    @property
    def size(self) -> int:
        return self.p**self.n

    # chains; a factor list [t_1, ..., t_k] means t_1 . t_2 ... t_k

    def _forward(self, chain, v, counter):
        for f in reversed(chain):
            v = f.apply(v, counter)
        return v

    def _backward(self, chain, v, counter):
        for f in chain:
            v = f.inverse().apply(v, counter)
        return v

    def pull(self, v: Sequence[int], counter: MultCounter | None = None) -> int:
        """zeta^-1 . D^-1 . phi^-1 . mu^-1 applied to v: the orbit position of v."""
        w = [int(x) % self.p for x in v]
        if len(w) != self.n:
            raise UsageError(f"point of length {len(w)} for n={self.n}")
        if self.wrap:
            w = self._backward(self.wrap, w[::-1], counter)[::-1]
        w = self._backward(self.factors, w, counter)
        w = self.diag.inverse().apply(w, counter)
        return zeta_inv(w, self.p)

    def push(self, k: int, counter: MultCounter | None = None) -> tuple[int, ...]:
        """mu . phi . D . zeta applied to the orbit position k."""
        w = list(self.diag.apply(zeta(k, self.p, self.n), counter))
        w = self._forward(self.factors, w, counter)
        if self.wrap:
            w = self._forward(self.wrap, w[::-1], counter)[::-1]
        return tuple(w)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "factors": [f.to_dict() for f in self.factors],
            "diag": list(self.diag.lambdas),
            "wrap": [f.to_dict() for f in self.wrap],
            "seed_info": dict(self.seed_info) if self.seed_info is not None else None,
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> FastForwardForm:
        try:
            p = check_prime(d["p"])
            n = int(d["n"])
            factors = tuple(ElementaryFactor.from_dict(f, p) for f in d["factors"])
            wrap = tuple(ElementaryFactor.from_dict(f, p) for f in d.get("wrap", []))
            diag = DiagonalMap(p, tuple(d["diag"]))
        except (KeyError, TypeError) as exc:
            raise UsageError(f"bad fast-forward document: {exc}") from None
        return cls(p, n, factors, diag, wrap, d.get("seed_info"))


def eval_power(
    form: FastForwardForm, m: int, v: Sequence[int], counter: MultCounter | None = None
) -> tuple[int, ...]:
    """sigma^m(v) for any integer m; only the INC step depends on m."""
    k = form.pull(v, counter)
    return form.push((k + m) % form.size, counter)


def _factors_of(phi: TriangularPermutation) -> tuple[ElementaryFactor, ...]:
    return tuple(
        ElementaryFactor(i, g) for i, g in enumerate(phi.components, 1) if not g.is_zero()
    )


def from_triangular(sigma: TriangularPermutation) -> FastForwardForm:
    """Fast-forward form of a maximal-orbit triangular map."""
    cert = conjugate_to_delta(sigma)
    target = diag_conjugate(delta_map(sigma.p, sigma.n), cert.diag.inverse())
    # Any conjugator onto D.Delta.D^-1 serves; skip phi when none is needed.
    factors = () if sigma == target else _factors_of(cert.phi)
    form = FastForwardForm(sigma.p, sigma.n, factors, cert.diag)
    checks = [(0,) * sigma.n, (1,) * sigma.n, tuple(range(sigma.n))]
    for m in (0, 1, 2):
        sm = power(sigma, m)
        for v in checks:
            if eval_power(form, m, v) != apply(sm, v):
                raise AssertionError("fast-forward form disagrees with sigma")
    return form


def _sparse_poly(p: int, arity: int, budget: int, rng: np.random.Generator) -> ReducedPoly:
    # Colliding draws merge by addition; a zero sum simply drops out.
    arr = np.zeros(p**arity, dtype=np.int64)
    for _ in range(budget):
        exps = rng.integers(0, p, size=arity)
        c = int(rng.integers(1, p))
        idx = int(sum(int(e) * p**j for j, e in enumerate(exps)))
        arr[idx] = (arr[idx] + c) % p
    return ReducedPoly(p, arity, arr)


def sparse_generate(p: int, n: int, sparsity_budget: int, seed: int = 0, wrap: bool = False) -> FastForwardForm:
    """Random sparse fast-forward form, deterministic in ``seed``.

    Draw order: the n factors t_1..t_n (``sparsity_budget`` monomials each),
    then the n diagonal entries, then the n wrap factors if requested.
    """
    p = check_prime(p)
    if sparsity_budget < 0:
        raise UsageError("sparsity budget must be >= 0")
    if n < 1:
        raise UsageError("n must be >= 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    factors = tuple(ElementaryFactor(i, _sparse_poly(p, i - 1, sparsity_budget, rng)) for i in range(1, n + 1))
    diag = DiagonalMap(p, tuple(int(x) for x in rng.integers(1, p, size=n)))
    wrap_factors: tuple[ElementaryFactor, ...] = ()
    if wrap:
        wrap_factors = tuple(
            ElementaryFactor(i, _sparse_poly(p, i - 1, sparsity_budget, rng)) for i in range(1, n + 1)
        )
    info = {"rng": RNG_ID, "seed": int(seed), "budget": int(sparsity_budget), "wrap": bool(wrap)}
    return FastForwardForm(
        p,
        n,
        tuple(f for f in factors if not f.g.is_zero()),
        diag,
        tuple(f for f in wrap_factors if not f.g.is_zero()),
        info,
    )


def form_table(form: FastForwardForm, m: int = 1) -> PermutationTable:
    """Permutation table of sigma^m, point by point."""
    p, n = form.p, form.n
    table = tuple(zeta_inv(eval_power(form, m, zeta(k, p, n)), p) for k in range(form.size))
    return PermutationTable(p, n, table)


def factor_costs(form: FastForwardForm, v: Sequence[int] | None = None) -> list[int]:
    """Multiplications spent on each factor (forward and inverse use the same count)."""
    if v is None:
        v = (1,) * form.n
    out = []
    for f in form.factors + form.wrap:
        c = MultCounter()
        f.shift(v, c)
        out.append(c.count)
    return out


def naive_power(
    form: FastForwardForm, m: int, v: Sequence[int], counter: MultCounter | None = None
) -> tuple[int, ...]:
    """sigma^m(v) by applying the single step m mod p^n times."""
    w = tuple(v)
    for _ in range(m % form.size):
        w = eval_power(form, 1, w, counter)
    return w


def count_report(
    form: FastForwardForm,
    trials: int,
    seed: int = 0,
    naive_cap: int = 4096,
    sigma: TriangularPermutation | None = None,
) -> dict:
    """Multiplication counts over random (m, v): fast-forward and naive.

    Naive iteration applies ``sigma`` directly when it is given, otherwise
    the form's single step; it is skipped when p^n exceeds ``naive_cap``.
    """
    if trials < 1:
        raise UsageError("trials must be >= 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    ff, naive = [], []
    for _ in range(trials):
        m = int(rng.integers(0, form.size))
        v = tuple(int(x) for x in rng.integers(0, form.p, size=form.n))
        c = MultCounter()
        eval_power(form, m, v, c)
        ff.append(c.count)
        if form.size <= naive_cap:
            c = MultCounter()
            if sigma is not None:
                w = v
                for _ in range(m):
                    w = apply(sigma, w, c)
            else:
                naive_power(form, m, v, c)
            naive.append(c.count)
    budget = form.seed_info.get("budget") if form.seed_info else None
    return {
        "p": form.p,
        "n": form.n,
        "budget": budget,
        "trials": trials,
        "ff_mults_mean": float(np.mean(ff)),
        "ff_mults_max": int(max(ff)),
        "naive_mults_mean": float(np.mean(naive)) if naive else None,
        "factor_mults_max": max(factor_costs(form), default=0),
        "indicative_only": form.p == 2,
    }


def counted_apply_cost(sigma: TriangularPermutation, v: Sequence[int]) -> int:
    """Multiplications for one direct (Horner) application of sigma."""
    c = MultCounter()
    for i, g in enumerate(sigma.components):
        evaluate(g, list(v[:i]), c)
    return c.count
