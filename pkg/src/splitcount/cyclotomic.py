"""Exact arithmetic in Z[zeta_d] = Z[x] / Phi_d(x).

Elements are stored as coefficient vectors of length phi(d) in the basis
1, z, ..., z^(phi(d)-1), so equality is coefficient-wise.  Text form is
``c0 + c1*z + c2*z^2 ...`` with ``z`` the chosen primitive d-th root.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import DimensionMismatch, InvalidD, OrderMismatch
from .poly import MultiPoly, UniPoly, _join_terms

__all__ = [
    "cyclotomic_polynomial",
    "CyclotomicInteger",
    "NotInteger",
    "root_power",
    "eval_at_roots",
    "eval_unipoly_at_root",
    "as_integer",
    "complete_homogeneous_at_roots",
]


def _check_order(d):
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise InvalidD(f"order must be a positive integer, got {d!r}")


@lru_cache(maxsize=None)
def cyclotomic_polynomial(d: int) -> UniPoly:
    """Phi_d = (x^d - 1) / prod of Phi_e over proper divisors e of d."""
    _check_order(d)
    p = UniPoly.monomial(d) - 1
    for e in range(1, d):
        if d % e == 0:
            p = p.exact_div(cyclotomic_polynomial(e))
    return p


@lru_cache(maxsize=None)
def _power_table(d: int) -> tuple[tuple[int, ...], ...]:
    """Reduced coefficient vectors of z^0, ..., z^(d-1)."""
    phi = cyclotomic_polynomial(d)
    k = phi.degree
    rows = []
    for e in range(d):
        _, r = UniPoly.monomial(e).divmod(phi)
        rows.append(tuple(r[i] for i in range(k)))
    return tuple(rows)


def _reduce_cyclic(d: int, vec: Sequence[int]) -> tuple[int, ...]:
    """Reduce an element of Z[x]/(x^d - 1), given as a length-d vector."""
    table = _power_table(d)
    k = len(table[0])
    out = [0] * k
    for e, c in enumerate(vec):
        if c:
            row = table[e]
            for i in range(k):
                if row[i]:
                    out[i] += c * row[i]
    return tuple(out)


@dataclass(frozen=True)
class CyclotomicInteger:
    d: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        _check_order(self.d)
        k = cyclotomic_polynomial(self.d).degree
        if len(self.coeffs) != k:
            raise DimensionMismatch(f"Z[zeta_{self.d}] elements need {k} coefficients")

    @classmethod
    def from_cyclic(cls, d: int, vec: Sequence[int]) -> "CyclotomicInteger":
        """Element with ``vec[e]`` as coefficient of z^e, e in 0..d-1."""
        return cls(d, _reduce_cyclic(d, vec))

    @classmethod
    def from_unipoly(cls, d: int, p: UniPoly) -> "CyclotomicInteger":
        vec = [0] * d
        for e, c in enumerate(p.coeffs):
            vec[e % d] += c
        return cls.from_cyclic(d, vec)

    @classmethod
    def integer(cls, d: int, c: int) -> "CyclotomicInteger":
        k = cyclotomic_polynomial(d).degree
        return cls(d, (c,) + (0,) * (k - 1))

    def _coerce(self, other) -> "CyclotomicInteger":
        if isinstance(other, int) and not isinstance(other, bool):
            return CyclotomicInteger.integer(self.d, other)
        if not isinstance(other, CyclotomicInteger):
            raise TypeError(f"cannot combine with {type(other).__name__}")
        if other.d != self.d:
            raise OrderMismatch(f"zeta_{self.d} vs zeta_{other.d}")
        return other

    def __add__(self, other):
        o = self._coerce(other)
        return CyclotomicInteger(self.d, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInteger(self.d, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        d = self.d
        vec = [0] * d
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        vec[(i + j) % d] += a * b
        return CyclotomicInteger.from_cyclic(d, vec)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = CyclotomicInteger.integer(self.d, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = CyclotomicInteger.integer(self.d, other)
        if not isinstance(other, CyclotomicInteger):
            return NotImplemented
        return self.d == other.d and self.coeffs == other.coeffs

    __hash__ = object.__hash__

    def is_integer(self) -> bool:
        return not any(self.coeffs[1:])

    def to_text(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                parts.append((c, "" if i == 0 else ("z" if i == 1 else f"z^{i}")))
        return _join_terms(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"CyclotomicInteger(d={self.d}, {self.to_text()!r})"


def root_power(d: int, e: int) -> CyclotomicInteger:
    """zeta_d ** e, for any integer e."""
    _check_order(d)
    vec = [0] * d
    vec[e % d] = 1
    return CyclotomicInteger.from_cyclic(d, vec)


@dataclass(frozen=True)
class NotInteger:
    """Returned by :func:`as_integer` for a value outside Z."""

    value: CyclotomicInteger

    def __str__(self):
        return self.value.to_text()


def as_integer(x: CyclotomicInteger) -> int | NotInteger:
    if x.is_integer():
        return x.coeffs[0]
    return NotInteger(x)


def eval_at_roots(p: MultiPoly, d: int, l: int = 1) -> CyclotomicInteger:
    """Substitute t_i -> zeta_d^i for i = l..d.

    ``p`` may have ``d - l + 1`` variables (its first variable stands for
    t_l) or ``d`` variables with t_1..t_(l-1) absent.
    """
    _check_order(d)
    if not 1 <= l <= d:
        raise DimensionMismatch(f"offset {l} outside 1..{d}")
    width = d - l + 1
    if p.d == width:
        base = l
    elif p.d == d:
        base = 1
        if l > 1 and any(any(e[: l - 1]) for e in p.terms):
            raise DimensionMismatch(f"variables below t{l} present")
    else:
        raise DimensionMismatch(f"polynomial has {p.d} variables; expected {width} or {d}")
    vec = [0] * d
    for exps, c in p.terms.items():
        e = 0
        for i, k in enumerate(exps):
            if k:
                e += (base + i) * k
        vec[e % d] += c
    return CyclotomicInteger.from_cyclic(d, vec)


def eval_unipoly_at_root(p: UniPoly, d: int, e: int = 1) -> CyclotomicInteger:
    """p(zeta_d^e)."""
    _check_order(d)
    vec = [0] * d
    for k, c in enumerate(p.coeffs):
        vec[(k * e) % d] += c
    return CyclotomicInteger.from_cyclic(d, vec)


def complete_homogeneous_at_roots(k: int, d: int, exponents: Sequence[int]) -> CyclotomicInteger:
    """h_k(zeta^e_1, ..., zeta^e_m) without expanding h_k.

    Uses h_j(x_1..x_i) = h_j(x_1..x_{i-1}) + x_i * h_{j-1}(x_1..x_i), with
    values kept in Z[x]/(x^d - 1) where multiplying by zeta^e is a rotation.
    """
    _check_order(d)
    if k < 0:
        raise ValueError("k must be non-negative")
    # h[j] as a length-d cyclic vector; start with zero variables
    h = [[0] * d for _ in range(k + 1)]
    h[0][0] = 1
    for e in exponents:
        s = e % d
        for j in range(1, k + 1):
            prev = h[j - 1]
            cur = h[j]
            for i in range(d):
                if prev[i]:
                    cur[(i + s) % d] += prev[i]
    return CyclotomicInteger.from_cyclic(d, h[k])
