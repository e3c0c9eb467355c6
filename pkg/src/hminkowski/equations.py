"""Reflection-type matrix equations and the rewrite systems they generate.

A :class:`ReflectionEqSpec` names its factors symbolically (a matrix key of the
model plus an optional tensor leg), so the same equation can be expanded with
substituted generator matrices, e.g. ``K -> M K M^dagger`` or ``K -> K + K'``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Tuple

from .catalog import (COORDS, COORDS2, DERIVS, FORMS, GROUP, GROUP_STAR, PLANE, ModelSpec,
                      build_model, model_at)
from .ncalg import AlgElement
from .rewrite import (RewriteSystem, check_confluence, commutation_rules, complete, orient)
from .tensor import AlgMatrix, DimensionError, leg_embed, mat_product


@dataclass(frozen=True)
class Factor:
    """A model matrix, embedded on one leg of C^2 (x) C^2 when ``leg`` is set."""
    key: str
    leg: Optional[int] = None

    def resolve(self, spec: ModelSpec, subs: Mapping[str, AlgMatrix]) -> AlgMatrix:
        A = subs[self.key] if self.key in subs else spec[self.key]
        if self.leg is None:
            return A
        return leg_embed(A, 2, (self.leg,))

    def __str__(self) -> str:
        return self.key if self.leg is None else f"{self.key}{self.leg}"


def _f(text: str) -> Tuple[Factor, ...]:
    out = []
    for tok in text.split():
        if tok[-1] in "12" and tok[:-1] in ("K", "Kp", "Y", "dK", "M", "Mdag", "Mstar"):
            out.append(Factor(tok[:-1], int(tok[-1])))
        else:
            out.append(Factor(tok))
    return tuple(out)


@dataclass(frozen=True)
class ReflectionEqSpec:
    """``prod(left) = right_sign * prod(right) + eta * prod(inhomogeneous)``."""
    tag: str
    left: Tuple[Factor, ...]
    right: Tuple[Factor, ...]
    right_sign: int = 1
    inhomogeneous: Tuple[Factor, ...] = ()
    eta: int = 1

    def sides(self, spec: ModelSpec, subs: Mapping[str, AlgMatrix] | None = None) -> Tuple[AlgMatrix, AlgMatrix]:
        subs = subs or {}
        lhs = mat_product(*(f.resolve(spec, subs) for f in self.left))
        rhs = mat_product(*(f.resolve(spec, subs) for f in self.right))
        if self.right_sign != 1:
            rhs = rhs.scale(self.right_sign)
        if self.inhomogeneous:
            rhs = rhs + mat_product(*(f.resolve(spec, subs) for f in self.inhomogeneous)).scale(self.eta)
        if lhs.shape != rhs.shape:
            raise DimensionError(f"{self.tag}: sides have shapes {lhs.shape} and {rhs.shape}")
        return lhs, rhs

    def __str__(self) -> str:
        rhs = " ".join(map(str, self.right))
        if self.right_sign < 0:
            rhs = "-" + rhs
        if self.inhomogeneous:
            eta = "" if self.eta == 1 else f"{self.eta}*"
            rhs += f" + {eta}" + " ".join(map(str, self.inhomogeneous))
        return " ".join(map(str, self.left)) + " = " + rhs


EQUATIONS: Dict[str, ReflectionEqSpec] = {
    "group": ReflectionEqSpec("group", _f("R_h M1 M2"), _f("M2 M1 R_h")),
    "group_star": ReflectionEqSpec("group_star", _f("R_h_dag Mdag1 Mdag2"), _f("Mdag2 Mdag1 R_h_dag")),
    "lorentz_cross": ReflectionEqSpec("lorentz_cross", _f("Mdag1 R2 M2"), _f("M2 R2 Mdag1")),
    "lorentz_cross_alt": ReflectionEqSpec("lorentz_cross_alt", _f("Mdag2 R3 M1"), _f("M1 R3 Mdag2")),
    "minkowski": ReflectionEqSpec("minkowski", _f("R_h K1 R2 K2"), _f("K2 R3 K1 R_h_dag")),
    "copy": ReflectionEqSpec("copy", _f("R_h Kp1 R2 Kp2"), _f("Kp2 R3 Kp1 R_h_dag")),
    "derivatives": ReflectionEqSpec("derivatives", _f("R_h_dag Y2 R2_inv Y1"), _f("Y1 R3_inv Y2 R_h")),
    "mixed": ReflectionEqSpec("mixed", _f("Y2 R_h K1 R2"), _f("R3 K1 R_h_dag Y2"),
                              inhomogeneous=_f("R3 P")),
    "forms_kdk": ReflectionEqSpec("forms_kdk", _f("R_h dK1 R2 K2"), _f("K2 R3 dK1 R_h_dag")),
    "forms_kdk_partner": ReflectionEqSpec("forms_kdk_partner", _f("R_h K1 R2 dK2"), _f("dK2 R3 K1 R_h_dag")),
    "forms_dkdk": ReflectionEqSpec("forms_dkdk", _f("R_h dK1 R2 dK2"), _f("dK2 R3 dK1 R_h_dag"), right_sign=-1),
    "braided": ReflectionEqSpec("braided", _f("R_h Kp1 R2 K2"), _f("K2 R3 Kp1 R_h_dag")),
}

# command-line spellings of the equation tags
EQUATION_TAGS: Dict[str, str] = {
    "minkowski": "minkowski",
    "derivatives": "derivatives",
    "mixed": "mixed",
    "forms-kdk": "forms_kdk",
    "forms-dkdk": "forms_dkdk",
    "braided": "braided",
}


def matrix_residuals(A: AlgMatrix, B: AlgMatrix) -> List[Tuple[Tuple[int, int], AlgElement]]:
    """Nonzero entries of ``A - B`` with their positions, row-major."""
    D = A - B
    return [((i, j), D[i, j]) for i in range(D.rows) for j in range(D.cols) if D[i, j]]


def derive_relations(eq: ReflectionEqSpec | str, spec: ModelSpec,
                     subs: Mapping[str, AlgMatrix] | None = None) -> List[AlgElement]:
    """Scalar relations ``lhs_ij - rhs_ij = 0`` of a matrix equation, in entry order."""
    if isinstance(eq, str):
        eq = EQUATIONS[eq]
    lhs, rhs = eq.sides(spec, subs)
    return [x for _, x in matrix_residuals(lhs, rhs)]


def plane_relations(spec: ModelSpec) -> List[AlgElement]:
    """``R_h X1 X2 = X2 X1`` for the column vector X = (x, y)."""
    X = spec["X"]
    xs = [X[0, 0], X[1, 0]]
    x12 = AlgMatrix([[xs[i] * xs[j]] for i in range(2) for j in range(2)])
    x21 = AlgMatrix([[xs[j] * xs[i]] for i in range(2) for j in range(2)])
    return [x for _, x in matrix_residuals(spec["R_h"] @ x12, x21)]


# Which equations (and cross-commutations) make up each shipped system.
SYSTEM_RECIPES: Dict[str, Tuple[Tuple[str, ...], Tuple[Tuple[Tuple[str, ...], Tuple[str, ...]], ...]]] = {
    "group": (("group",), ()),
    "lorentz": (("group", "group_star", "lorentz_cross"), ()),
    "minkowski": (("minkowski",), ()),
    "derivatives": (("derivatives",), ()),
    "mixed": (("minkowski", "derivatives", "mixed"), ()),
    "forms": (("minkowski", "forms_kdk", "forms_dkdk"), ()),
    "braided": (("minkowski", "copy", "braided"), ()),
    "lorentz_minkowski": (("group", "group_star", "lorentz_cross", "minkowski"),
                          ((GROUP + GROUP_STAR, COORDS),)),
    "lorentz_derivatives": (("group", "group_star", "lorentz_cross", "derivatives"),
                            ((GROUP + GROUP_STAR, DERIVS),)),
}

SYSTEM_GENERATORS: Dict[str, Tuple[str, ...]] = {
    "group": GROUP,
    "lorentz": GROUP + GROUP_STAR,
    "minkowski": COORDS,
    "derivatives": DERIVS,
    "mixed": COORDS + DERIVS,
    "forms": COORDS + FORMS,
    "braided": COORDS + COORDS2,
    "lorentz_minkowski": GROUP + GROUP_STAR + COORDS,
    "lorentz_derivatives": GROUP + GROUP_STAR + DERIVS,
    "plane": PLANE,
}

# the systems a user can name on the command line
FAMILY_NAMES = ("group", "lorentz", "minkowski", "derivatives", "mixed", "forms", "braided", "plane")


def system_relations(spec: ModelSpec, name: str) -> List[AlgElement]:
    if name == "plane":
        return plane_relations(spec)
    if name not in SYSTEM_RECIPES:
        raise KeyError(f"unknown rewrite system {name!r}")
    eqs, cross = SYSTEM_RECIPES[name]
    rels: List[AlgElement] = []
    for tag in eqs:
        rels.extend(derive_relations(tag, spec))
    for low, high in cross:
        rels.extend(commutation_rules(low, high))
    return rels


@lru_cache(maxsize=None)
def _system(j: int, point, name: str) -> RewriteSystem:
    spec = build_model(j) if point is None else model_at(j, *point)
    sys = orient(system_relations(spec, name), name=name, metadata={"model": spec.label})
    if not check_confluence(sys, 3).confluent:
        sys, _ = complete(sys, 4)
    return sys


def system(spec: ModelSpec | int, name: str) -> RewriteSystem:
    """Oriented, interreduced (and if needed completed) rewrite system, cached per model."""
    if isinstance(spec, int):
        return _system(spec, None, name)
    return _system(spec.j, spec.point, name)
