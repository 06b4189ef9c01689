"""Integer-valued polynomials, Lucas' theorem and the digit polynomials Q_i.

A ``BinomialPoly`` is sum_i c_i * C(T, i) with exact rational c_i.  Reducing
one mod p turns it into a function Z -> F_p that only depends on finitely many
base-p digits of the argument; ``tau_reduce`` writes that function as a
polynomial in the digit variables Q_j = C(T, p^j).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .errors import DomainError, UsageError
from .ffring import ReducedPoly, check_prime, grid_interpolate


def binom(m: int, i: int) -> int:
    """C(m, i) for any integer m (falling factorial over i!)."""
    if i < 0:
        return 0
    if m >= 0:
        return math.comb(m, i)
    # C(-a, i) = (-1)^i C(a + i - 1, i)
    return (-1) ** i * math.comb(-m + i - 1, i)


@dataclass(frozen=True)
class BinomialPoly:
    coeffs: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {int(i): Fraction(c) for i, c in self.coeffs.items() if Fraction(c) != 0}
        if any(i < 0 for i in clean):
            raise UsageError("binomial indices must be non-negative")
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    def __hash__(self):
        return hash(tuple(self.coeffs.items()))

    @property
    def degree(self) -> int:
        return max(self.coeffs, default=-1)

    def is_integral(self) -> bool:
        """Member of Int(Z): all binomial coordinates are integers."""
        return all(c.denominator == 1 for c in self.coeffs.values())

    def is_p_integral(self, p: int) -> bool:
        """Member of Int(Z, Z_(p)): no denominator divisible by p."""
        return all(c.denominator % p for c in self.coeffs.values())

    def to_dict(self) -> dict:
        return {"coeffs": [[i, f"{c.numerator}/{c.denominator}"] for i, c in self.coeffs.items()]}

    @classmethod
    def from_dict(cls, d: Mapping) -> BinomialPoly:
        try:
            return cls({int(i): Fraction(c) for i, c in d["coeffs"]})
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"bad binomial polynomial document: {exc}") from None


def poly_eval(poly: Sequence[Fraction | int], t: int | Fraction) -> Fraction:
    """Evaluate sum_k poly[k] * t^k exactly."""
    acc = Fraction(0)
    for c in reversed(poly):
        acc = acc * t + Fraction(c)
    return acc


def binom_expand(poly: Sequence[Fraction | int]) -> BinomialPoly:
    """Binomial coordinates of a polynomial given by monomial coefficients.

    c_i is the i-th forward difference of the polynomial at 0.
    """
    deg = len(poly) - 1
    vals = [poly_eval(poly, t) for t in range(deg + 1)]
    coeffs = {}
    for i in range(deg + 1):
        coeffs[i] = vals[0]
        vals = [b - a for a, b in zip(vals, vals[1:])]
    return BinomialPoly(coeffs)


def binom_to_monomial(f: BinomialPoly) -> list[Fraction]:
    """Monomial coefficients of sum c_i C(T, i); the inverse of binom_expand."""
    out = [Fraction(0)] * (f.degree + 1 if f.coeffs else 1)
    for i, c in f.coeffs.items():
        # C(T, i) = T (T-1) ... (T-i+1) / i!
        falling = [Fraction(1)]
        for j in range(i):
            nxt = [Fraction(0)] * (len(falling) + 1)
            for k, a in enumerate(falling):
                nxt[k + 1] += a
                nxt[k] -= j * a
            falling = nxt
        scale = c / math.factorial(i)
        for k, a in enumerate(falling):
            out[k] += scale * a
    return out


def binom_eval(f: BinomialPoly, m: int) -> Fraction:
    return sum((c * binom(m, i) for i, c in f.coeffs.items()), Fraction(0))


def lucas_binom(m: int, d: int, p: int) -> int:
    """C(m, d) mod p as the product of digitwise binomials."""
    if m < 0 or d < 0:
        raise UsageError("lucas_binom needs m, d >= 0")
    out = 1
    while d:
        m, a = divmod(m, p)
        d, b = divmod(d, p)
        if b > a:
            return 0
        out = out * math.comb(a, b) % p
    return out


def q_eval(i: int, m: int, p: int) -> int:
    """Q_i(m): digit i of m, with negative m taken mod p^(i+1)."""
    return (m % p ** (i + 1)) // p**i


def digits(m: int, p: int, r: int) -> tuple[int, ...]:
    return tuple(q_eval(j, m, p) for j in range(r))


def mod_p(c: Fraction, p: int) -> int:
    if c.denominator % p == 0:
        raise DomainError(f"{c} is not p-integral for p={p}")
    return c.numerator * pow(c.denominator, -1, p) % p


def _binom_in_q(alpha: int, p: int) -> np.ndarray:
    """Coefficients of q -> C(q, alpha) mod p as a polynomial in one variable."""
    return grid_interpolate({(q,): math.comb(q, alpha) % p for q in range(p)}, p).coeffs


def tau_reduce(f: BinomialPoly, p: int) -> ReducedPoly:
    """The polynomial g in Q_0..Q_r with g(digits of m) = f(m) mod p for all m.

    The result has arity r + 1 with r = floor(log_p(deg f)) (arity 1 for
    constants).
    """
    p = check_prime(p)
    if not f.is_p_integral(p):
        raise DomainError(f"polynomial is not {p}-integral")
    r = 0
    while p ** (r + 1) <= max(f.degree, 1):
        r += 1
    arity = r + 1
    out = np.zeros((p,) * arity, dtype=np.int64)
    one_var = {}
    for d, c in f.coeffs.items():
        cp = mod_p(c, p)
        if cp == 0:
            continue
        # Lucas: C(T, d) == prod_j C(Q_j, alpha_j) mod p
        term = np.ones((), dtype=np.int64)
        for j in range(arity):
            alpha = q_eval(j, d, p)
            if alpha not in one_var:
                one_var[alpha] = _binom_in_q(alpha, p)
            term = np.multiply.outer(term, one_var[alpha]) % p
        out = (out + cp * term) % p
    return ReducedPoly.from_grid(p, out)


def eval_qpoly(g: ReducedPoly, m: int) -> int:
    """Evaluate a polynomial in Q_0..Q_{r} at the digits of m."""
    from .ffring import evaluate

    return evaluate(g, digits(m, g.p, g.arity))


def periodic_to_qpoly(values: Sequence[int], p: int) -> ReducedPoly:
    """Polynomial in Q_0..Q_{r-1} reproducing a function of period p^r."""
    p = check_prime(p)
    n = len(values)
    r = 0
    while p**r < n:
        r += 1
    if p**r != n:
        raise UsageError(f"table length {n} is not a power of {p}")
    # m = sum_j d_j p^j is exactly the mixed-radix index of its digit vector
    grid = np.asarray(values, dtype=np.int64).reshape((p,) * r, order="F") % p
    return grid_interpolate(grid, p, r)


def qpoly_to_dict(g: ReducedPoly) -> dict:
    return {"vars": "Q", **g.to_dict()}
