"""Exact rational functions in the deformation parameters ``h`` and ``r``.

``ParamPoly`` is a sparse bivariate polynomial with ``Fraction`` coefficients,
``ParamScalar`` a reduced quotient of two of them.  Both are immutable.

Polynomial gcd is delegated to sympy's sparse polynomial rings; everything
else (ring arithmetic, canonical form, evaluation) is done here.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterator, Tuple, Union

from sympy import QQ
from sympy.polys.rings import ring as _sympy_ring

Exponent = Tuple[int, int]
Number = Union[int, Fraction]

PARAMETERS = ("h", "r")

_RING, _, _ = _sympy_ring("h,r", QQ)


def _term_key(e: Exponent) -> Tuple[int, int, int]:
    # graded lex, h before r
    return (e[0] + e[1], e[0], e[1])


class ParamPoly:
    """Polynomial in h, r over the rationals."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Dict[Exponent, Number] | None = None):
        clean: Dict[Exponent, Fraction] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    clean[(int(e[0]), int(e[1]))] = Fraction(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Exponent, Fraction]) -> "ParamPoly":
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c: Number) -> "ParamPoly":
        return cls._raw({(0, 0): Fraction(c)} if c else {})

    @classmethod
    def h(cls) -> "ParamPoly":
        return cls._raw({(1, 0): Fraction(1)})

    @classmethod
    def r(cls) -> "ParamPoly":
        return cls._raw({(0, 1): Fraction(1)})

    @property
    def terms(self) -> Dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Exponent, Fraction]]:
        """Terms in canonical (descending graded-lex) order."""
        for e in sorted(self._terms, key=_term_key, reverse=True):
            yield e, self._terms[e]

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and (0, 0) in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((0, 0), Fraction(0))

    def degree(self) -> int:
        return max((e[0] + e[1] for e in self._terms), default=-1)

    def leading(self) -> Tuple[Exponent, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self._terms, key=_term_key)
        return e, self._terms[e]

    def __add__(self, other: "ParamPoly") -> "ParamPoly":
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return ParamPoly._raw(out)

    def __neg__(self) -> "ParamPoly":
        return ParamPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "ParamPoly") -> "ParamPoly":
        return self + (-other)

    def __mul__(self, other: "ParamPoly") -> "ParamPoly":
        a, b = self._terms, other._terms
        if not a or not b:
            return ParamPoly._raw({})
        if len(a) == 1 and (0, 0) in a:
            c = a[(0, 0)]
            if c == 1:
                return other
            return ParamPoly._raw({e: c * v for e, v in b.items()})
        if len(b) == 1 and (0, 0) in b:
            return other * self
        out: Dict[Exponent, Fraction] = {}
        for (i1, j1), c1 in a.items():
            for (i2, j2), c2 in b.items():
                e = (i1 + i2, j1 + j2)
                out[e] = out.get(e, 0) + c1 * c2
        return ParamPoly._raw({e: c for e, c in out.items() if c})

    def scale(self, c: Number) -> "ParamPoly":
        c = Fraction(c)
        if not c:
            return ParamPoly._raw({})
        return ParamPoly._raw({e: c * v for e, v in self._terms.items()})

    def __pow__(self, n: int) -> "ParamPoly":
        out = ParamPoly.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ParamPoly) and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def evaluate(self, h: Number, r: Number) -> Fraction:
        h, r = Fraction(h), Fraction(r)
        return sum((c * h ** e[0] * r ** e[1] for e, c in self._terms.items()), Fraction(0))

    def to_sympy(self):
        return _RING.from_dict({e: QQ(c.numerator, c.denominator) for e, c in self._terms.items()})

    @classmethod
    def from_sympy(cls, p) -> "ParamPoly":
        return cls._raw({(int(e[0]), int(e[1])): Fraction(int(c.numerator), int(c.denominator))
                         for e, c in p.items() if c})

    def __repr__(self) -> str:
        return f"ParamPoly({format_poly(self)})"


def _format_monomial(e: Exponent) -> str:
    parts = []
    for name, k in zip(PARAMETERS, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def _format_number(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: ParamPoly) -> str:
    if p.is_zero():
        return "0"
    out = []
    for e, c in p.items():
        mono = _format_monomial(e)
        mag = abs(c)
        if not mono:
            body = _format_number(mag)
        elif mag == 1:
            body = mono
        elif mag.denominator == 1:
            body = f"{mag.numerator}*{mono}"
        else:
            body = f"{mag.numerator}*{mono}/{mag.denominator}"
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


class ParamScalar:
    """Element of Q(h, r) kept in lowest terms with a monic denominator."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: ParamPoly | Number = 0, den: ParamPoly | Number = 1):
        if not isinstance(num, ParamPoly):
            num = ParamPoly.constant(num)
        if not isinstance(den, ParamPoly):
            den = ParamPoly.constant(den)
        if den.is_zero():
            raise ZeroDivisionError("ParamScalar with zero denominator")
        self.num, self.den = _normalize(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, num: ParamPoly, den: ParamPoly) -> "ParamScalar":
        s = object.__new__(cls)
        s.num = num
        s.den = den
        s._hash = None
        return s

    @classmethod
    def coerce(cls, x: "ParamScalar | ParamPoly | Number") -> "ParamScalar":
        if isinstance(x, ParamScalar):
            return x
        if isinstance(x, ParamPoly):
            return cls._raw(x, _ONE_POLY)
        if isinstance(x, (int, Rational)):
            return cls._raw(ParamPoly.constant(Fraction(x)), _ONE_POLY)
        raise TypeError(f"cannot coerce {type(x).__name__} to ParamScalar")

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.den == _ONE_POLY and self.num == _ONE_POLY

    def is_polynomial(self) -> bool:
        return self.den == _ONE_POLY

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __add__(self, other) -> "ParamScalar":
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if self.num.is_zero():
            return o
        if o.num.is_zero():
            return self
        if self.den == o.den:
            if self.den.is_constant():
                return ParamScalar._raw(self.num + o.num, self.den)
            return ParamScalar(self.num + o.num, self.den)
        return ParamScalar(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "ParamScalar":
        return ParamScalar._raw(-self.num, self.den)

    def __sub__(self, other) -> "ParamScalar":
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other) -> "ParamScalar":
        return (-self) + other

    def __mul__(self, other) -> "ParamScalar":
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if self.num.is_zero() or o.num.is_zero():
            return ZERO
        if self.den.is_constant() and o.den.is_constant():
            return ParamScalar._raw(self.num * o.num, _ONE_POLY)
        return ParamScalar(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "ParamScalar":
        if self.num.is_zero():
            raise ZeroDivisionError("division by zero ParamScalar")
        return ParamScalar(self.den, self.num)

    def __truediv__(self, other) -> "ParamScalar":
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other) -> "ParamScalar":
        return _coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "ParamScalar":
        if n < 0:
            return self.inverse() ** (-n)
        return ParamScalar._raw(self.num ** n, self.den ** n) if self.den.is_constant() \
            else ParamScalar(self.num ** n, self.den ** n)

    def __eq__(self, other) -> bool:
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def normalize(self) -> "ParamScalar":
        return ParamScalar(self.num, self.den)

    def substitute(self, h: Number, r: Number = 0) -> Fraction:
        return substitute(self, h, r)

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"ParamScalar({format_scalar(self)})"


_ONE_POLY = ParamPoly.constant(1)


def _coerce(x):
    if isinstance(x, ParamScalar):
        return x
    if isinstance(x, ParamPoly):
        return ParamScalar._raw(x, _ONE_POLY)
    if isinstance(x, (int, Rational)):
        return ParamScalar._raw(ParamPoly.constant(Fraction(x)), _ONE_POLY)
    return NotImplemented


def _normalize(num: ParamPoly, den: ParamPoly) -> Tuple[ParamPoly, ParamPoly]:
    if num.is_zero():
        return num, _ONE_POLY
    if den.is_constant():
        c = den.constant_value()
        return (num if c == 1 else num.scale(1 / c)), _ONE_POLY
    g = num.to_sympy().gcd(den.to_sympy())
    if g != 1:
        num = ParamPoly.from_sympy(num.to_sympy().exquo(g))
        den = ParamPoly.from_sympy(den.to_sympy().exquo(g))
    _, lc = den.leading()
    if lc != 1:
        num, den = num.scale(1 / lc), den.scale(1 / lc)
    if den.is_constant():
        return num, _ONE_POLY
    return num, den


ZERO = ParamScalar._raw(ParamPoly._raw({}), _ONE_POLY)
ONE = ParamScalar._raw(_ONE_POLY, _ONE_POLY)
H = ParamScalar._raw(ParamPoly.h(), _ONE_POLY)
R = ParamScalar._raw(ParamPoly.r(), _ONE_POLY)


def scalar(x: "ParamScalar | ParamPoly | Number") -> ParamScalar:
    return ParamScalar.coerce(x)


def scalar_arith(a: ParamScalar, b: ParamScalar, op: str) -> ParamScalar:
    """Dispatch ``add``/``sub``/``mul``/``div``; raises ZeroDivisionError on ``div`` by 0."""
    ops = {"add": ParamScalar.__add__, "sub": ParamScalar.__sub__,
           "mul": ParamScalar.__mul__, "div": ParamScalar.__truediv__}
    if op not in ops:
        raise ValueError(f"unknown scalar op {op!r}")
    return ops[op](scalar(a), scalar(b))


def substitute(s: ParamScalar, h: Number, r: Number = 0) -> Fraction:
    """Evaluate at rational ``(h, r)``; raises ZeroDivisionError at a pole."""
    s = scalar(s)
    d = s.den.evaluate(h, r)
    if d == 0:
        raise ZeroDivisionError(f"pole of {s} at h={h}, r={r}")
    return s.num.evaluate(h, r) / d


def format_scalar(s: ParamScalar) -> str:
    num = format_poly(s.num)
    if s.den == _ONE_POLY:
        return num
    den = format_poly(s.den)
    if len(s.num._terms) > 1:
        num = f"({num})"
    if len(s.den._terms) > 1 or not s.den.is_constant():
        den = f"({den})"
    return f"{num}/{den}"
