"""Exact integer polynomials.

:class:`UniPoly` is dense (``coeffs[i]`` is the coefficient of ``t^i``);
:class:`MultiPoly` is sparse over a fixed number of variables
``t1, ..., td`` (1-indexed in every public signature).

Text form
---------
Univariate: ``1 + t + 2*t^3 - t^4`` (ascending powers).

Multivariate: terms are ordered by total degree, then by exponent vector
in descending lexicographic order, so ``t1^5*t2`` precedes ``t2^6``::

    term   := [coef "*"] mono | coef
    mono   := var ("*" var)*
    var    := "t" INDEX ["^" EXP]
    poly   := ["-"] term ((" + " | " - ") term)*

The zero polynomial prints as ``0``.
"""

from __future__ import annotations

import re
from operator import add
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, NoVariables

__all__ = [
    "UniPoly",
    "MultiPoly",
    "complete_homogeneous",
    "gaussian_binomial",
    "gaussian_binomial_pascal",
]


def _trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


def _coef(c) -> int:
    if isinstance(c, bool) or not isinstance(c, int):
        raise TypeError(f"coefficients must be integers, got {c!r}")
    return c


def _join_terms(parts: list[tuple[int, str]]) -> str:
    """Render (coefficient, monomial-text) pairs; empty monomial = constant."""
    if not parts:
        return "0"
    out = []
    for idx, (c, mono) in enumerate(parts):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if idx == 0:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


@dataclass(frozen=True)
class UniPoly:
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(tuple(_coef(c) for c in self.coeffs)))

    @classmethod
    def _raw(cls, coeffs: Sequence[int]) -> "UniPoly":
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", _trim(coeffs))
        return obj

    @classmethod
    def constant(cls, c: int) -> "UniPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "UniPoly":
        return cls((0,) * k + (c,))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other):
        if isinstance(other, int):
            other = UniPoly.constant(other)
        if not isinstance(other, UniPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        res = list(a)
        for i, c in enumerate(b):
            res[i] += c
        return UniPoly._raw(res)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, int):
            other = UniPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return UniPoly._raw([c * other for c in self.coeffs])
        if not isinstance(other, UniPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly()
        res = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    res[i + j] += x * y
        return UniPoly._raw(res)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result, base = UniPoly((1,)), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, divisor: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        """Quotient and remainder over the integers.

        Raises ValueError if some step would need a non-integer quotient
        coefficient (never happens for monic divisors).
        """
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dv = divisor.coeffs
        lead = dv[-1]
        dd = len(dv) - 1
        if len(rem) - 1 < dd:
            return UniPoly(), self
        quot = [0] * (len(rem) - dd)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if not c:
                continue
            q, r = divmod(c, lead)
            if r:
                raise ValueError("inexact integer polynomial division")
            quot[k - dd] = q
            for j, x in enumerate(dv):
                rem[k - dd + j] -= q * x
        return UniPoly(quot), UniPoly(rem)

    def exact_div(self, divisor: "UniPoly") -> "UniPoly":
        q, r = self.divmod(divisor)
        if not r.is_zero():
            raise ValueError("division leaves a remainder")
        return q

    def eval_int(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    __call__ = eval_int

    def to_text(self, var: str = "t") -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            parts.append((c, mono))
        return _join_terms(parts)

    def to_json(self) -> dict[str, int]:
        return {str(i): c for i, c in enumerate(self.coeffs) if c}

    def __str__(self):
        return self.to_text()


def _mono_text(exps: Sequence[int]) -> str:
    factors = []
    for i, e in enumerate(exps, start=1):
        if e == 1:
            factors.append(f"t{i}")
        elif e > 1:
            factors.append(f"t{i}^{e}")
    return "*".join(factors)


def _term_order(exps: Sequence[int]):
    return (sum(exps), tuple(-e for e in exps))


@dataclass(frozen=True, eq=True)
class MultiPoly:
    """Sparse polynomial in ``d`` variables with integer coefficients.

    ``terms`` maps exponent tuples of length ``d`` to nonzero coefficients.
    Instances are treated as immutable; never mutate ``terms``.
    """

    d: int
    terms: Mapping[tuple[int, ...], int]

    __hash__ = None  # type: ignore[assignment]

    def __post_init__(self):
        if isinstance(self.d, bool) or not isinstance(self.d, int) or self.d < 1:
            raise DimensionMismatch(f"need at least one variable, got d={self.d!r}")
        clean = {}
        for exps, c in self.terms.items():
            exps = tuple(exps)
            if len(exps) != self.d:
                raise DimensionMismatch(f"exponent vector {exps} has length != {self.d}")
            if any(e < 0 for e in exps):
                raise DimensionMismatch(f"negative exponent in {exps}")
            if _coef(c):
                clean[exps] = c
        object.__setattr__(self, "terms", clean)

    @classmethod
    def _raw(cls, d: int, terms: dict) -> "MultiPoly":
        # Skips validation; caller guarantees nonzero coefficients and lengths.
        obj = object.__new__(cls)
        object.__setattr__(obj, "d", d)
        object.__setattr__(obj, "terms", terms)
        return obj

    @classmethod
    def zero(cls, d: int) -> "MultiPoly":
        return cls._raw(d, {})

    @classmethod
    def one(cls, d: int) -> "MultiPoly":
        return cls._raw(d, {(0,) * d: 1})

    @classmethod
    def var(cls, d: int, i: int, power: int = 1) -> "MultiPoly":
        """The monomial ``t_i^power`` (``i`` is 1-indexed)."""
        if not 1 <= i <= d:
            raise DimensionMismatch(f"variable t{i} outside t1..t{d}")
        exps = [0] * d
        exps[i - 1] = power
        return cls._raw(d, {tuple(exps): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def _check(self, other: "MultiPoly"):
        if not isinstance(other, MultiPoly):
            raise TypeError(f"expected MultiPoly, got {type(other).__name__}")
        if other.d != self.d:
            raise DimensionMismatch(f"{self.d} variables vs {other.d}")

    def __add__(self, other):
        if isinstance(other, int):
            other = MultiPoly.one(self.d) * other
        self._check(other)
        res = dict(self.terms)
        for e, c in other.terms.items():
            v = res.get(e, 0) + c
            if v:
                res[e] = v
            else:
                res.pop(e, None)
        return MultiPoly._raw(self.d, res)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.d, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return MultiPoly.zero(self.d)
            return MultiPoly._raw(self.d, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        res: dict = {}
        get = res.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(map(add, ea, eb))
                res[e] = get(e, 0) + ca * cb
        return MultiPoly._raw(self.d, {e: c for e, c in res.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = MultiPoly.one(self.d)
        for _ in range(k):
            result = result * self
        return result

    def scale_shift(self, i: int, p: int) -> "MultiPoly":
        """Multiply by ``t_i^p``."""
        if not 1 <= i <= self.d:
            raise DimensionMismatch(f"variable t{i} outside t1..t{self.d}")
        k = i - 1
        res = {}
        for e, c in self.terms.items():
            e2 = list(e)
            e2[k] += p
            res[tuple(e2)] = c
        return MultiPoly._raw(self.d, res)

    def total_degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def evaluate(self, values: Sequence[int]) -> int:
        if len(values) != self.d:
            raise DimensionMismatch(f"need {self.d} values, got {len(values)}")
        total = 0
        for e, c in self.terms.items():
            term = c
            for v, k in zip(values, e):
                if k:
                    term *= v**k
            total += term
        return total

    def to_univariate(self, weights: Sequence[int]) -> UniPoly:
        """Substitute ``t_i -> t^weights[i-1]``."""
        if len(weights) != self.d:
            raise DimensionMismatch(f"need {self.d} weights, got {len(weights)}")
        coeffs: dict[int, int] = {}
        for e, c in self.terms.items():
            k = sum(w * x for w, x in zip(weights, e))
            coeffs[k] = coeffs.get(k, 0) + c
        if not coeffs:
            return UniPoly()
        return UniPoly([coeffs.get(k, 0) for k in range(max(coeffs) + 1)])

    def collapse(self) -> UniPoly:
        """Set every variable to the same ``t``."""
        return self.to_univariate([1] * self.d)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self.terms.items(), key=lambda kv: _term_order(kv[0]))

    def to_text(self) -> str:
        return _join_terms([(c, _mono_text(e)) for e, c in self.sorted_terms()])

    def to_json(self) -> dict[str, int]:
        """Coefficient map keyed by comma-joined exponent vectors."""
        return {",".join(map(str, e)): c for e, c in self.sorted_terms()}

    def __str__(self):
        return self.to_text()

    @classmethod
    def parse(cls, text: str, d: int | None = None) -> "MultiPoly":
        """Parse the text form documented in the module docstring.

        ``d`` defaults to the largest variable index that appears.
        """
        parsed = _parse_terms(text)
        top = max((i for _, vs in parsed for i, _ in vs), default=1)
        if d is None:
            d = top
        elif top > d:
            raise DimensionMismatch(f"t{top} appears but d={d}")
        res: dict = {}
        for c, vs in parsed:
            exps = [0] * d
            for i, k in vs:
                exps[i - 1] += k
            key = tuple(exps)
            res[key] = res.get(key, 0) + c
        return cls(d, res)


_TERM_RE = re.compile(r"^(?:(\d+)\*?)?((?:t\d+(?:\^\d+)?)(?:\*t\d+(?:\^\d+)?)*)?$")
_VAR_RE = re.compile(r"t(\d+)(?:\^(\d+))?")


def _parse_terms(text: str) -> list[tuple[int, list[tuple[int, int]]]]:
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial text")
    chunks = re.findall(r"[+-]?[^+-]+", s)
    if "".join(chunks) != s:
        raise ValueError(f"cannot parse polynomial {text!r}")
    out = []
    for chunk in chunks:
        sign = -1 if chunk[0] == "-" else 1
        body = chunk.lstrip("+-")
        m = _TERM_RE.match(body)
        if not m or not (m.group(1) or m.group(2)):
            raise ValueError(f"bad term {chunk!r}")
        coef = int(m.group(1)) if m.group(1) else 1
        vs = []
        if m.group(2):
            for vm in _VAR_RE.finditer(m.group(2)):
                idx = int(vm.group(1))
                if idx < 1:
                    raise ValueError("variables are t1, t2, ...")
                vs.append((idx, int(vm.group(2) or 1)))
        out.append((sign * coef, vs))
    return out


def complete_homogeneous(k: int, vars: Iterable[int], d: int | None = None) -> MultiPoly:
    """h_k in the listed (1-indexed) variables, embedded in ``d`` variables."""
    vs = sorted(set(vars))
    if d is None:
        d = max(vs, default=1)
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return MultiPoly.one(d)
    if not vs:
        raise NoVariables("h_k with k >= 1 needs at least one variable")
    if vs[0] < 1 or vs[-1] > d:
        raise DimensionMismatch(f"variables {vs} outside t1..t{d}")
    terms = {}
    for combo in combinations_with_replacement(vs, k):
        exps = [0] * d
        for i in combo:
            exps[i - 1] += 1
        terms[tuple(exps)] = 1
    return MultiPoly._raw(d, terms)


def gaussian_binomial(m: int, n: int) -> UniPoly:
    """The q-binomial [m+n choose n]_q.

    Built as prod_{i=1..n} (q^(m+i) - 1) divided exactly by
    prod_{i=1..n} (q^i - 1).
    """
    if m < 0 or n < 0:
        raise ValueError("m and n must be non-negative")
    one = UniPoly((1,))
    num, den = one, one
    for i in range(1, n + 1):
        num = num * (UniPoly.monomial(m + i) - 1)
        den = den * (UniPoly.monomial(i) - 1)
    return num.exact_div(den)


def gaussian_binomial_pascal(m: int, n: int) -> UniPoly:
    """Same as :func:`gaussian_binomial` via the q-Pascal recurrence."""
    a = m + n
    # row[b] = [a' choose b]_q for the current a'
    row = [UniPoly((1,))]
    for top in range(1, a + 1):
        new = [UniPoly((1,))]
        for b in range(1, top):
            new.append(row[b - 1] + UniPoly.monomial(b) * row[b])
        new.append(UniPoly((1,)))
        row = new
    return row[n]

