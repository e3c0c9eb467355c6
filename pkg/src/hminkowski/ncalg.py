"""Free associative *-algebra over Q(h, r) on named noncommuting generators."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple, Union

from .scalars import ONE, ZERO, ParamScalar, scalar, substitute

Word = Tuple[str, ...]


@dataclass(frozen=True)
class Generator:
    name: str
    kind: str
    star: str
    star_sign: int = 1
    latex: str = ""


def _gens() -> Dict[str, Generator]:
    table = []
    for g in "abcd":
        table.append(Generator(g, "group", g + "star", 1, g))
        table.append(Generator(g + "star", "group_star", g, 1, g + "^*"))
    # K hermitian: beta* = gamma
    kstar = {"al": "al", "be": "ga", "ga": "be", "de": "de"}
    greek = {"al": "\\alpha", "be": "\\beta", "ga": "\\gamma", "de": "\\delta"}
    for x in ("al", "be", "ga", "de"):
        table.append(Generator(x, "coordinate", kstar[x], 1, greek[x]))
        table.append(Generator(x + "2", "coordinate", kstar[x] + "2", 1, greek[x] + "'"))
        # Y antihermitian
        table.append(Generator("d_" + x, "derivative", "d_" + kstar[x], -1, "\\partial_" + greek[x]))
        table.append(Generator("w_" + x, "form", "w_" + kstar[x], 1, "d" + greek[x]))
    table.append(Generator("x", "plane", "x", 1, "x"))
    table.append(Generator("y", "plane", "y", 1, "y"))
    return {g.name: g for g in table}


GENERATORS: Dict[str, Generator] = _gens()

# Ascending generator ranks.  Words are compared degree first, then
# lexicographically from the right, so in normal words coordinates stand left
# of derivatives and forms, group entries left of coordinates, and the
# specially-deformed generator of each family (de, d_al, c) ranks lowest.
DEFAULT_ORDER: Tuple[str, ...] = (
    "w_de", "w_be", "w_ga", "w_al",
    "d_al", "d_be", "d_ga", "d_de",
    "de2", "be2", "ga2", "al2",
    "de", "be", "ga", "al",
    "y", "x",
    "cstar", "astar", "dstar", "bstar",
    "c", "a", "d", "b",
)

# Reading order used only for printing.
DISPLAY_ORDER: Tuple[str, ...] = (
    "a", "b", "c", "d", "astar", "bstar", "cstar", "dstar", "x", "y",
    "al", "be", "ga", "de", "al2", "be2", "ga2", "de2",
    "d_al", "d_be", "d_ga", "d_de", "w_al", "w_be", "w_ga", "w_de",
)

StarTable = Mapping[str, Tuple[int, str]]

DEFAULT_STAR: Dict[str, Tuple[int, str]] = {g.name: (g.star_sign, g.star) for g in GENERATORS.values()}


def star_table(**overrides: Tuple[int, str]) -> Dict[str, Tuple[int, str]]:
    """Copy of the default star table with some generators redeclared."""
    t = dict(DEFAULT_STAR)
    t.update(overrides)
    return t


def validate_star_table(table: StarTable) -> None:
    for name, (sign, image) in table.items():
        if image not in table:
            raise ValueError(f"star image {image!r} of {name!r} is undeclared")
        s2, back = table[image]
        if back != name or sign * s2 != 1:
            raise ValueError(f"star is not an involution on {name!r}")


Coeff = Union[ParamScalar, int, Fraction]


class AlgElement:
    """Finite linear combination of words with ParamScalar coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Word, Coeff] | None = None):
        clean: Dict[Word, ParamScalar] = {}
        if terms:
            for w, c in terms.items():
                c = scalar(c)
                if c:
                    w = tuple(w)
                    clean[w] = clean[w] + c if w in clean else c
                    if not clean[w]:
                        del clean[w]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Word, ParamScalar]) -> "AlgElement":
        x = object.__new__(cls)
        x._terms = terms
        x._hash = None
        return x

    @classmethod
    def gen(cls, name: str) -> "AlgElement":
        if name not in GENERATORS:
            raise KeyError(f"unknown generator {name!r}")
        return cls._raw({(name,): ONE})

    @classmethod
    def word(cls, *names: str, coeff: Coeff = 1) -> "AlgElement":
        return cls({tuple(names): coeff})

    @classmethod
    def const(cls, c: Coeff) -> "AlgElement":
        c = scalar(c)
        return cls._raw({(): c} if c else {})

    @property
    def terms(self) -> Dict[Word, ParamScalar]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Word, ParamScalar]]:
        return iter(self._terms.items())

    def words(self) -> Iterable[Word]:
        return self._terms.keys()

    def coeff(self, w: Sequence[str]) -> ParamScalar:
        return self._terms.get(tuple(w), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_scalar(self) -> bool:
        return all(len(w) == 0 for w in self._terms)

    def scalar_value(self) -> ParamScalar:
        if not self.is_scalar():
            raise ValueError("element is not a multiple of the unit")
        return self._terms.get((), ZERO)

    def degree(self) -> int:
        return max((len(w) for w in self._terms), default=-1)

    def generators(self) -> set:
        return {g for w in self._terms for g in w}

    def __add__(self, other) -> "AlgElement":
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if not o._terms:
            return self
        if not self._terms:
            return o
        out = dict(self._terms)
        for w, c in o._terms.items():
            if w in out:
                v = out[w] + c
                if v:
                    out[w] = v
                else:
                    del out[w]
            else:
                out[w] = c
        return AlgElement._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "AlgElement":
        return AlgElement._raw({w: -c for w, c in self._terms.items()})

    def __sub__(self, other) -> "AlgElement":
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other) -> "AlgElement":
        return (-self) + other

    def scale(self, c: Coeff) -> "AlgElement":
        c = scalar(c)
        if not c:
            return ZERO_ELEMENT
        if c == ONE:
            return self
        return AlgElement._raw({w: v * c for w, v in self._terms.items()})

    def __mul__(self, other) -> "AlgElement":
        if isinstance(other, (ParamScalar, int, Fraction)):
            return self.scale(other)
        if not isinstance(other, AlgElement):
            return NotImplemented
        if not self._terms or not other._terms:
            return ZERO_ELEMENT
        out: Dict[Word, ParamScalar] = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                w = w1 + w2
                c = c1 * c2
                if w in out:
                    out[w] = out[w] + c
                else:
                    out[w] = c
        return AlgElement._raw({w: c for w, c in out.items() if c})

    def __rmul__(self, other) -> "AlgElement":
        if isinstance(other, (ParamScalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other) -> "AlgElement":
        if isinstance(other, (ParamScalar, int, Fraction)):
            return self.scale(scalar(other).inverse())
        return NotImplemented

    def __pow__(self, n: int) -> "AlgElement":
        out = ONE_ELEMENT
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def map_coefficients(self, f) -> "AlgElement":
        return AlgElement({w: f(c) for w, c in self._terms.items()})

    def substitute(self, h, r=0) -> Dict[Word, Fraction]:
        """Coefficient-wise evaluation at rational parameters, as a plain dict."""
        out = {}
        for w, c in self._terms.items():
            v = substitute(c, h, r)
            if v:
                out[w] = v
        return out

    def specialize(self, h, r=0) -> "AlgElement":
        """Same element with the parameters fixed to rational values."""
        return AlgElement(self.substitute(h, r))

    def __repr__(self) -> str:
        from .dsl import format_element
        return f"AlgElement({format_element(self)})"

    def __str__(self) -> str:
        from .dsl import format_element
        return format_element(self)


def _coerce(x):
    if isinstance(x, AlgElement):
        return x
    if isinstance(x, (ParamScalar, int, Fraction)):
        return AlgElement.const(x)
    return NotImplemented


ZERO_ELEMENT = AlgElement._raw({})
ONE_ELEMENT = AlgElement._raw({(): ONE})


def gen(name: str) -> AlgElement:
    return AlgElement.gen(name)


def gens(*names: str) -> Tuple[AlgElement, ...]:
    return tuple(AlgElement.gen(n) for n in names)


def alg_arith(x: AlgElement, y, op: str) -> AlgElement:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "scale":
        return x.scale(y)
    raise ValueError(f"unknown op {op!r}")


def star_word(w: Word, table: StarTable = DEFAULT_STAR) -> Tuple[int, Word]:
    sign = 1
    out = []
    for g in reversed(w):
        try:
            s, img = table[g]
        except KeyError:
            raise KeyError(f"generator {g!r} has no star declaration") from None
        sign *= s
        out.append(img)
    return sign, tuple(out)


def star(x: AlgElement, table: StarTable = DEFAULT_STAR) -> AlgElement:
    """Antilinear antimultiplicative involution; parameters are real so coefficients are fixed."""
    out: Dict[Word, ParamScalar] = {}
    for w, c in x.items():
        sign, sw = star_word(w, table)
        out[sw] = out.get(sw, ZERO) + (c if sign > 0 else -c)
    return AlgElement(out)


def commutator(x: AlgElement, y: AlgElement) -> AlgElement:
    return x * y - y * x


def word_key(w: Word, order: Mapping[str, int], from_right: bool = True) -> Tuple:
    """Deglex sort key: degree first, then lexicographic by generator rank.

    With ``from_right`` the lexicographic comparison starts at the last letter.
    """
    if from_right:
        return (len(w), tuple(order[g] for g in reversed(w)))
    return (len(w), tuple(order[g] for g in w))


def rank_map(order: Sequence[str] = DEFAULT_ORDER) -> Dict[str, int]:
    return {g: i for i, g in enumerate(order)}


DEFAULT_RANK = rank_map(DEFAULT_ORDER)
DISPLAY_RANK = rank_map(DISPLAY_ORDER)


def sorted_terms(x: AlgElement, order: Mapping[str, int] = DISPLAY_RANK):
    return sorted(x.items(), key=lambda t: word_key(t[0], order, from_right=False))
