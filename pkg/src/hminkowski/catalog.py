"""Constant matrices and printed relation sets of the two h-deformed models.

Model ``j = 1`` carries the extra real parameter ``r``; model ``j = 2`` has
only ``h``.  Displayed matrices are transcribed verbatim and cross-checked
against their defining formulas in the verifier; printed relations are kept
as DSL strings so they stay readable next to the source.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

from .dsl import parse_expression, parse_relation
from .ncalg import AlgElement
from .scalars import H, R, ParamScalar
from .tensor import (AlgMatrix, conjugate, dagger, invert_numeric, matmul, mat_product,
                     permutation_P, specialize)

GROUP = ("a", "b", "c", "d")
GROUP_STAR = ("astar", "bstar", "cstar", "dstar")
COORDS = ("al", "be", "ga", "de")
COORDS2 = ("al2", "be2", "ga2", "de2")
DERIVS = ("d_al", "d_be", "d_ga", "d_de")
FORMS = ("w_al", "w_be", "w_ga", "w_de")
PLANE = ("x", "y")

FAMILIES = ("group", "lorentz_cross", "minkowski", "derivatives", "mixed_ky",
            "forms_kdk", "forms_dkdk", "braided_cross")


class DerivedOnly(LookupError):
    """Raised for relation families that have no printed form."""


@dataclass(frozen=True)
class Relation:
    label: str
    lhs: AlgElement
    rhs: AlgElement

    @property
    def residual(self) -> AlgElement:
        return self.lhs - self.rhs


@dataclass(frozen=True)
class RelationFamily:
    tag: str
    relations: Tuple[Relation, ...]
    partial: bool = False

    def residuals(self) -> List[AlgElement]:
        return [rel.residual for rel in self.relations]


@dataclass(frozen=True)
class ModelSpec:
    j: int
    params: Tuple[str, ...]
    matrices: Mapping[str, AlgMatrix]
    generator_sets: Mapping[str, Tuple[str, ...]]
    printed: Mapping[str, RelationFamily] = field(default_factory=dict)
    expressions: Mapping[str, AlgElement] = field(default_factory=dict)
    # rational (h, r) when the parameters have been fixed, else None
    point: Optional[Tuple[Fraction, Fraction]] = None

    @property
    def name(self) -> str:
        return f"M{self.j}"

    @property
    def label(self) -> str:
        if self.point is None:
            return self.name
        return f"{self.name}[h={self.point[0]}, r={self.point[1]}]"

    @property
    def h(self) -> ParamScalar:
        return H if self.point is None else ParamScalar(self.point[0])

    @property
    def r(self) -> ParamScalar:
        return R if self.point is None else ParamScalar(self.point[1])

    def xi(self) -> AlgElement:
        """The h-determinant ``a d - c b - h c d`` of the group matrix."""
        a, b, c, d = (AlgElement.gen(g) for g in GROUP)
        return a * d - c * b - (c * d).scale(self.h)

    def __getitem__(self, key: str) -> AlgMatrix:
        return self.matrices[key]


def _m(rows) -> AlgMatrix:
    return AlgMatrix(rows)


h, r = H, R


def jordanian_R() -> AlgMatrix:
    return _m([[1, -h, h, h * h],
               [0, 1, 0, -h],
               [0, 0, 1, h],
               [0, 0, 0, 1]])


def jordanian_Rhat_display() -> AlgMatrix:
    return _m([[1, -h, h, h * h],
               [0, 0, 1, h],
               [0, 1, 0, -h],
               [0, 0, 0, 1]])


def projector_minus_display() -> AlgMatrix:
    return _m([[0, h, -h, -h * h],
               [0, 1, -1, -h],
               [0, -1, 1, h],
               [0, 0, 0, 0]]).scale(ParamScalar(1, 2))


def epsilon() -> AlgMatrix:
    return _m([[h, 1], [-1, 0]])


def epsilon_inverse_display() -> AlgMatrix:
    return _m([[0, -1], [1, h]])


def trace_matrix_display() -> AlgMatrix:
    return _m([[1, -2 * h], [0, 1]])


def r3_matrix(j: int) -> AlgMatrix:
    if j == 1:
        return _m([[1, 0, 0, 0],
                   [0, 1, r, 0],
                   [0, 0, 1, 0],
                   [0, 0, 0, 1]])
    return _m([[1, 0, -h, 0],
               [-h, 1, 0, h],
               [0, 0, 1, 0],
               [0, 0, h, 1]])


def rhat_eps_display(j: int) -> AlgMatrix:
    if j == 1:
        return _m([[0, 0, 0, 1],
                   [0, -1, 0, h],
                   [0, 0, -1, h],
                   [1, -h, -h, h * h - r]])
    return _m([[0, 0, 0, 1],
               [0, -1, 0, 2 * h],
               [0, 0, -1, 2 * h],
               [1, 0, 0, h * h]])


def metric_display(j: int) -> AlgMatrix:
    pref = ParamScalar(1) / (2 + h * h)
    if j == 1:
        g = _m([[0, 0, 0, 1],
                [0, 0, -1, h],
                [0, -1, 0, -h],
                [1, -h, h, -r - h * h]])
    else:
        g = _m([[0, 0, 0, 1],
                [0, 0, -1, 2 * h],
                [0, -1, 0, 0],
                [1, 0, 2 * h, -3 * h * h]])
    return g.scale(pref)


def k_eps_display(j: int) -> AlgMatrix:
    from .dsl import parse_expression as p
    if j == 1:
        rows = [["de", "-be + h*de"], ["-ga + h*de", "al - h*(be + ga) + (h^2 - r)*de"]]
    else:
        rows = [["de", "-be + 2*h*de"], ["-ga + 2*h*de", "al + h^2*de"]]
    return _m([[p(x) for x in row] for row in rows])


def generator_matrices() -> Dict[str, AlgMatrix]:
    M = _m([["a", "b"], ["c", "d"]])
    K = _m([["al", "be"], ["ga", "de"]])
    return {
        "M": M,
        "Mdag": dagger(M),
        "Mstar": conjugate(M),
        "K": K,
        "Kp": _m([["al2", "be2"], ["ga2", "de2"]]),
        # derivative matrix places d_ga in the upper-right slot
        "Y": _m([["d_al", "d_ga"], ["d_be", "d_de"]]),
        "dK": _m([["w_al", "w_be"], ["w_ga", "w_de"]]),
        "X": _m([["x"], ["y"]]),
    }


_PRINTED_GROUP = [
    "[a, b] = h*(xi - a^2)",
    "[a, c] = h*c^2",
    "[a, d] = h*c*(d - a)",
    "[b, c] = h*(a*c + c*d)",
    "[b, d] = h*(d^2 - xi)",
    "[c, d] = -h*c^2",
]
_XI = "(a*d - c*b - h*c*d)"

_PRINTED_LORENTZ = {
    1: [
        "[a, astar] = r*cstar*c",
        "[a, bstar] = r*dstar*c",
        "[a, dstar] = 0",
        "[b, bstar] = r*(dstar*d - a*astar)",
        "[b, dstar] = -r*cstar*a",
        "[d, dstar] = -r*cstar*c",
        "[c, astar] = 0",
        "[c, bstar] = 0",
        "[c, cstar] = 0",
        "[c, dstar] = 0",
    ],
    2: [
        "[a, astar] = -h*(cstar*a + astar*c)",
        "[a, bstar] = h*(a*astar - dstar*a - bstar*c)",
        "[a, cstar] = h*cstar*c",
        "[a, dstar] = h*(a*cstar + dstar*c)",
        "[b, bstar] = -h*(a*bstar + b*astar + bstar*d + dstar*b)",
        "[b, cstar] = h*(cstar*d + a*cstar)",
        "[b, dstar] = h*(dstar*d - a*dstar - b*cstar)",
        "[c, cstar] = 0",
        "[c, dstar] = h*cstar*c",
        "[d, dstar] = -h*(c*dstar + d*cstar)",
    ],
}

_PRINTED_MINKOWSKI = {
    1: [
        "[al, be] = -h*be^2 - r*be*de + h*de*al - h*be*ga + h^2*de*ga",
        "[al, de] = h*(de*ga - be*de)",
        "[al, ga] = h*ga^2 + r*de*ga - h*al*de + h*be*ga - h^2*be*de",
        "[be, de] = h*de^2",
        "[be, ga] = h*de*(ga + be) + r*de^2",
        "[ga, de] = -h*de^2",
    ],
    2: [
        "[al, be] = 2*h*al*de + h^2*be*de",
        "[al, de] = 2*h*(de*ga - be*de)",
        "[al, ga] = -h^2*de*ga - 2*h*de*al",
        "[be, de] = 2*h*de^2",
        "[be, ga] = 3*h^2*de^2",
        "[ga, de] = -2*h*de^2",
    ],
}

_PRINTED_DERIVATIVES = {
    1: [
        "[d_al, d_be] = -h*d_al^2",
        "[d_be, d_de] = h*(d_be^2 + d_be*d_ga - d_al*d_de) - r*d_be*d_al - h^2*d_al*d_ga",
        "[d_al, d_ga] = h*d_al^2",
        "[d_ga, d_de] = -h*(d_ga^2 + d_be*d_ga - d_de*d_al) + r*d_al*d_ga + h^2*d_be*d_al",
        "[d_al, d_de] = h*(d_al*d_be - d_ga*d_al)",
        "[d_be, d_ga] = h*d_al*(d_be + d_ga) - r*d_al^2",
    ],
    2: [
        "[d_al, d_be] = -2*h*d_al^2",
        "[d_al, d_de] = 2*h*(d_be*d_al - d_al*d_ga)",
        "[d_al, d_ga] = 2*h*d_al^2",
        "[d_be, d_de] = h^2*d_be*d_al - 2*h*d_de*d_al",
        "[d_be, d_ga] = 5*h^2*d_al^2",
        "[d_ga, d_de] = 2*h*d_al*d_de - h^2*d_al*d_ga",
    ],
}

_PRINTED_MIXED = {
    1: [
        "[d_al, al] = 1 + h*be*d_al - h*ga*d_al - h^2*de*d_al",
        "[d_al, be] = -h*de*d_al",
        "[d_al, ga] = h*de*d_al",
        "[d_al, de] = 0",
        "[d_be, al] = (r + h^2)*ga*d_al + h*(r - h^2)*de*d_al"
        " - h*(al*d_al + be*d_be + ga*d_be) + h^2*(de*d_be + be*d_al)",
        "[d_be, be] = 1 + (r - h^2)*de*d_al + h*(be*d_al - de*d_be)",
        "[d_be, ga] = -h*(ga*d_al + de*d_be) + h^2*de*d_al",
        "[d_be, de] = h*de*d_al",
    ],
    2: [
        "[d_al, al] = 1 + 2*h*(be*d_al - ga*d_al) - 4*h^2*de*d_al",
        "[d_al, be] = -2*h*de*d_al",
        "[d_al, ga] = 2*h*de*d_al",
        "[d_al, de] = 0",
        "[d_be, al] = -2*h*al*d_al - h^2*ga*d_al - 2*h^3*de*d_al",
        "[d_be, de] = 2*h*de*d_al",
        "[d_be, be] = 1 - h^2*de*d_al",
        "[d_be, ga] = 4*h^2*de*d_al",
    ],
}


_PRINTED_EXPRESSIONS = {
    1: {"det_h_K": "2/(h^2 + 2)*(al*de - be*ga + h*be*de)"},
    2: {"det_h_K": "2/(h^2 + 2)*(al*de - be*ga + 2*h*be*de)"},
}
# exterior derivative, the same for both models
_PRINTED_D = "w_al*d_al + w_be*d_be + w_ga*d_ga + w_de*d_de - 2*h*(w_ga*d_al + w_de*d_be)"


def _family(tag: str, lines: List[str], partial: bool = False) -> RelationFamily:
    rels = []
    for line in lines:
        lhs, rhs = parse_relation(line.replace("xi", _XI))
        rels.append(Relation(line, lhs, rhs))
    return RelationFamily(tag, tuple(rels), partial)


@lru_cache(maxsize=None)
def build_model(j: int) -> ModelSpec:
    if j not in (1, 2):
        raise ValueError(f"model index must be 1 or 2, got {j!r}")
    P = permutation_P(2)
    R_h = jordanian_R()
    I4 = AlgMatrix.identity(4)
    Rhat = mat_product(P, R_h)
    R3 = r3_matrix(j)
    R2 = mat_product(P, R3, P)
    mats: Dict[str, AlgMatrix] = {
        "P": P,
        "I4": I4,
        "R_h": R_h,
        "R_h_dag": dagger(R_h),
        "R_h_inv": invert_numeric(R_h),
        "Rhat_h": jordanian_Rhat_display(),
        "P_plus": (I4 + Rhat).scale(ParamScalar(1, 2)),
        "P_minus": projector_minus_display(),
        "eps": epsilon(),
        "eps_inv": epsilon_inverse_display(),
        "D_h": trace_matrix_display(),
        "R3": R3,
        "R2": R2,
        "R3_inv": invert_numeric(R3),
        "R2_inv": invert_numeric(R2),
        "Rhat3": matmul(P, R3),
        "Rhat_eps": rhat_eps_display(j),
        "K_eps": k_eps_display(j),
        "g_h": metric_display(j),
    }
    mats.update(generator_matrices())
    gsets = {
        "group": GROUP,
        "group_star": GROUP_STAR,
        "lorentz": GROUP + GROUP_STAR,
        "coordinates": COORDS,
        "copy": COORDS2,
        "derivatives": DERIVS,
        "forms": FORMS,
        "plane": PLANE,
    }
    printed = {
        "group": _family("group", _PRINTED_GROUP),
        "lorentz_cross": _family("lorentz_cross", _PRINTED_LORENTZ[j]),
        "minkowski": _family("minkowski", _PRINTED_MINKOWSKI[j]),
        "derivatives": _family("derivatives", _PRINTED_DERIVATIVES[j]),
        "mixed_ky": _family("mixed_ky", _PRINTED_MIXED[j], partial=True),
    }
    exprs = {k: parse_expression(v) for k, v in _PRINTED_EXPRESSIONS[j].items()}
    exprs["d"] = parse_expression(_PRINTED_D)
    return ModelSpec(j, ("h", "r") if j == 1 else ("h",), mats, gsets, printed, exprs)


@lru_cache(maxsize=None)
def model_at(j: int, h, r=0) -> ModelSpec:
    """Model ``j`` with both parameters fixed to rationals (``r`` is ignored by M2).

    Matrices, printed relations and printed expressions are all specialised, so
    every check can be rerun verbatim, e.g. in the classical limit h = r = 0.
    """
    base = build_model(j)
    h, r = Fraction(h), Fraction(r) if j == 1 else Fraction(0)
    mats = {k: specialize(A, h, r) for k, A in base.matrices.items()}
    printed = {}
    for tag, fam in base.printed.items():
        rels = tuple(Relation(rel.label, rel.lhs.specialize(h, r), rel.rhs.specialize(h, r))
                     for rel in fam.relations)
        printed[tag] = RelationFamily(tag, rels, fam.partial)
    exprs = {k: x.specialize(h, r) for k, x in base.expressions.items()}
    return ModelSpec(j, base.params, mats, base.generator_sets, printed, exprs, (h, r))


def printed_relations(spec: ModelSpec, family: str) -> RelationFamily:
    if family not in FAMILIES:
        raise KeyError(f"unknown relation family {family!r}")
    if family not in spec.printed:
        raise DerivedOnly(f"family {family!r} has no printed relations; derive it instead")
    return spec.printed[family]


def m_inverse(spec: ModelSpec) -> AlgMatrix:
    """``eps M^t eps^-1``: the inverse of M once the h-determinant is set to 1.

    Without that specialisation it is the h-adjugate, ``M adj = adj M = xi I``.
    """
    return mat_product(spec["eps"], spec["M"].transpose(), spec["eps_inv"])


def model_from_name(name: str) -> ModelSpec:
    key = name.strip().upper()
    if key not in ("M1", "M2"):
        raise ValueError(f"unknown model {name!r}; expected M1 or M2")
    return build_model(int(key[1]))
