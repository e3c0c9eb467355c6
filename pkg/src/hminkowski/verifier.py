"""Identity suite: every structural claim about the two models as an exact check.

Each check returns a :class:`CheckReport`; a failing report always carries at
least one witness (a nonzero residual in DSL form, or a position).  Checks are
pure functions of the model, so the suite can rerun them verbatim on a model
with fixed parameters, e.g. the classical limit.

Group-valued identities are stated homogeneously: ``m_inverse`` is the
h-adjugate, so wherever ``M^-1`` appears the identity carries the matching
power of the h-determinant ``xi`` instead.  Setting ``xi = 1`` gives back the
SL form.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .catalog import (COORDS, DERIVS, FORMS, GROUP, GROUP_STAR, ModelSpec,
                      Relation, RelationFamily, m_inverse, model_at)
from .dsl import format_element
from .equations import (EQUATIONS, SYSTEM_GENERATORS, derive_relations, matrix_residuals,
                        plane_relations, system, system_relations)
from .ncalg import (DEFAULT_ORDER, DEFAULT_STAR, ONE_ELEMENT, ZERO_ELEMENT, AlgElement, StarTable,
                    commutator, star)
from .rewrite import (GeneratorOrder, RewriteSystem, check_confluence,
                      is_central, orient, relation_sets_equivalent, star_closure_witnesses)
from .scalars import ONE, ParamScalar
from .tensor import (AlgMatrix, dagger, invert_numeric, kron, leg_embed, mat_product,
                     partial_trace, partial_transpose, permutation_P, rank)

STATUSES = ("pass", "fail", "skipped")


@dataclass(frozen=True)
class Witness:
    """Where an identity breaks, and the nonzero residual left there (if any)."""
    where: str
    residual: Optional[AlgElement] = None

    def to_json(self) -> Dict[str, Optional[str]]:
        return {"at": self.where, "residual": None if self.residual is None else format_element(self.residual)}

    def __str__(self) -> str:
        if self.residual is None:
            return self.where
        return f"{self.where}: {format_element(self.residual)}"


@dataclass
class CheckReport:
    id: str
    status: str
    witnesses: List[Witness] = field(default_factory=list)
    timing: float = 0.0
    details: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")
        if self.status == "fail" and not self.witnesses:
            raise ValueError("a failing report needs at least one witness")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def summary_line(self) -> str:
        line = f"{self.status.upper():7s} {self.id}"
        if self.witnesses:
            line += f"  ({len(self.witnesses)} witness{'es' if len(self.witnesses) > 1 else ''}; first: {self.witnesses[0]})"
        return line


class ProportionalityError(ValueError):
    def __init__(self, message: str, witness: Witness):
        super().__init__(f"{message}: {witness}")
        self.witness = witness


def _report(check_id: str, witnesses: Sequence[Witness], **details) -> CheckReport:
    return CheckReport(check_id, "fail" if witnesses else "pass", list(witnesses), details=details)


def _matrix_witnesses(label: str, A: AlgMatrix, B: AlgMatrix,
                      reduce: Optional[Callable[[AlgElement], AlgElement]] = None) -> List[Witness]:
    out = []
    for (i, j), x in matrix_residuals(A, B):
        if reduce is not None:
            x = reduce(x)
        if x:
            out.append(Witness(f"{label} entry ({i},{j})", x))
    return out


def _zero_witnesses(label: str, elements: Iterable[AlgElement], sys: RewriteSystem) -> List[Witness]:
    out = []
    for k, x in enumerate(elements):
        nf = sys.normal_form(x)
        if nf:
            out.append(Witness(f"{label} #{k}", nf))
    return out


def _legs(A: AlgMatrix, *legs: int, n: int = 2) -> AlgMatrix:
    return leg_embed(A, n, legs)


def contract(R4: AlgMatrix, X: AlgMatrix) -> AlgMatrix:
    """``X'_ij = sum_kl R4_{ij,kl} X_kl`` for a 4x4 R4 acting on a 2x2 X."""
    return AlgMatrix([[sum((R4[2 * i + j, 2 * k + l] * X[k, l] for k in range(2) for l in range(2)),
                           ZERO_ELEMENT) for j in range(2)] for i in range(2)])


def substitute_generators(x: AlgElement, mapping: Mapping[str, AlgElement]) -> AlgElement:
    """Replace generators by elements (an algebra map on the free algebra)."""
    out = ZERO_ELEMENT
    for w, c in x.items():
        term = AlgElement.const(c)
        for g in w:
            term = term * (mapping[g] if g in mapping else AlgElement.gen(g))
        out = out + term
    return out


def _matrix_substitution(A: AlgMatrix, names: AlgMatrix) -> Dict[str, AlgElement]:
    """Map each generator entry of ``names`` to the matching entry of ``A``."""
    out = {}
    for i in range(names.rows):
        for j in range(names.cols):
            (w,) = names[i, j].words()
            out[w[0]] = A[i, j]
    return out


def _evaluate_on_matrices(x: AlgElement, assignment: Mapping[str, AlgMatrix], n: int) -> AlgMatrix:
    out = AlgMatrix.zeros(n)
    for w, c in x.items():
        out = out + mat_product(AlgMatrix.identity(n), *(assignment[g] for g in w)).scale(c)
    return out


# ---------------------------------------------------------------- R-matrices

def check_ybe(R: AlgMatrix, check_id: str = "ybe") -> CheckReport:
    R12, R13, R23 = (_legs(R, *legs, n=3) for legs in ((1, 2), (1, 3), (2, 3)))
    wit = _matrix_witnesses("R12 R13 R23 - R23 R13 R12", mat_product(R12, R13, R23), mat_product(R23, R13, R12))
    return _report(check_id, wit)


def check_triangularity(R: AlgMatrix, check_id: str = "triangularity") -> CheckReport:
    P = permutation_P(2)
    wit = _matrix_witnesses("P R P R - I", mat_product(P, R, P, R), AlgMatrix.identity(4))
    return _report(check_id, wit)


def check_spectral(Rhat: AlgMatrix, Pp: AlgMatrix, Pm: AlgMatrix, check_id: str = "spectral") -> CheckReport:
    I4 = AlgMatrix.identity(4)
    wit = []
    wit += _matrix_witnesses("Rhat - (P+ - P-)", Rhat, Pp - Pm)
    wit += _matrix_witnesses("P+ + P- - I", Pp + Pm, I4)
    wit += _matrix_witnesses("P+ P-", Pp @ Pm, AlgMatrix.zeros(4))
    wit += _matrix_witnesses("P+^2 - P+", Pp @ Pp, Pp)
    wit += _matrix_witnesses("P-^2 - P-", Pm @ Pm, Pm)
    wit += _matrix_witnesses("P+ Rhat - P+", Pp @ Rhat, Pp)
    wit += _matrix_witnesses("P- Rhat + P-", Pm @ Rhat, -Pm)
    ranks = {"P+": rank(Pp), "P-": rank(Pm)}
    if ranks["P+"] != 3:
        wit.append(Witness(f"rank of P+ is {ranks['P+']}, expected 3"))
    if ranks["P-"] != 1:
        wit.append(Witness(f"rank of P- is {ranks['P-']}, expected 1"))
    return _report(check_id, wit, ranks=ranks)


def check_mixed_ybe(spec: ModelSpec, r3_13: Optional[AlgMatrix] = None, r3_23: Optional[AlgMatrix] = None,
                    check_id: str = "mixed_ybe") -> CheckReport:
    Rh12 = _legs(spec["R_h"], 1, 2, n=3)
    A13 = _legs(spec["R3"] if r3_13 is None else r3_13, 1, 3, n=3)
    A23 = _legs(spec["R3"] if r3_23 is None else r3_23, 2, 3, n=3)
    wit = _matrix_witnesses("R_h12 R3_13 R3_23 - R3_23 R3_13 R_h12",
                            mat_product(Rh12, A13, A23), mat_product(A23, A13, Rh12))
    return _report(check_id, wit)


def check_r3_reality(spec: ModelSpec, R3: Optional[AlgMatrix] = None, check_id: str = "r3_reality") -> CheckReport:
    R3 = spec["R3"] if R3 is None else R3
    P = permutation_P(2)
    wit = _matrix_witnesses("P R3 P - R3^dagger", mat_product(P, R3, P), dagger(R3))
    return _report(check_id, wit)


def r3_blocks(R3: AlgMatrix) -> Dict[str, AlgMatrix]:
    """The 2x2 blocks of R3 indexed by its first leg, named like the group entries."""
    out = {}
    for name, (p, q) in zip(GROUP, ((0, 0), (0, 1), (1, 0), (1, 1))):
        out[name] = AlgMatrix([[R3[2 * p + i, 2 * q + j] for j in range(2)] for i in range(2)])
    return out


def check_r3_represents_glh2(spec: ModelSpec, R3: Optional[AlgMatrix] = None,
                             check_id: str = "r3_represents_glh2") -> CheckReport:
    blocks = r3_blocks(spec["R3"] if R3 is None else R3)
    wit = []
    for rel in spec.printed["group"].relations:
        res = _evaluate_on_matrices(rel.residual, blocks, 2)
        wit += _matrix_witnesses(f"blocks in {rel.label!r}", res, AlgMatrix.zeros(2))
    xi = _evaluate_on_matrices(spec.xi(), blocks, 2)
    return _report(check_id, wit, xi_block=[[format_element(x) for x in row] for row in xi.entries])


# ------------------------------------------------------------- relation sets

def compare_relation_sets(derived: Sequence[AlgElement], printed: RelationFamily | Sequence[Relation],
                          check_id: str = "compare", order: GeneratorOrder | Sequence[str] = DEFAULT_ORDER,
                          one_directional: Optional[bool] = None) -> CheckReport:
    """Mutual consequence of a derived and a printed relation set.

    Partial families (and ``one_directional=True``) only require every printed
    relation to follow from the derived ones.
    """
    if isinstance(printed, RelationFamily):
        rels, partial = list(printed.relations), printed.partial
    else:
        rels, partial = list(printed), False
    if one_directional is not None:
        partial = one_directional
    sys_d = orient(derived, order)
    wit = []
    for rel in rels:
        nf = sys_d.normal_form(rel.residual)
        if nf:
            wit.append(Witness(f"printed {rel.label!r} does not follow from the derived set", nf))
    if not partial:
        sys_p = orient([rel.residual for rel in rels], order)
        wit += _zero_witnesses("derived relation not implied by the printed set", derived, sys_p)
    return _report(check_id, wit, derived_rules=len(sys_d), printed=len(rels),
                   direction="printed => derived" if partial else "both")


def check_plane(spec: ModelSpec) -> CheckReport:
    x, y = AlgElement.gen("x"), AlgElement.gen("y")
    expected = [x * y - y * x - (y * y).scale(spec.h)]
    miss_derived, miss_expected = relation_sets_equivalent(plane_relations(spec), expected)
    wit = [Witness("plane relation not implied by xy - yx - h y^2", m) for m in miss_derived]
    wit += [Witness("xy - yx - h y^2 not implied", m) for m in miss_expected]
    return _report("plane", wit)


def check_group_relations(spec: ModelSpec) -> CheckReport:
    return compare_relation_sets(derive_relations("group", spec), spec.printed["group"], "group_relations")


def check_glh2_determinant(spec: ModelSpec) -> CheckReport:
    sg, sl = system(spec, "group"), system(spec, "lorentz")
    Pm, M, Md = spec["P_minus"], spec["M"], spec["Mdag"]
    xi = spec.xi()
    xis = star(xi)
    wit = _matrix_witnesses("P- M1 M2 - xi P-", mat_product(Pm, _legs(M, 1), _legs(M, 2)),
                            Pm.map(lambda e: e * xi), sg.normal_form)
    wit += _matrix_witnesses("M2^dag M1^dag P-^dag - xi* P-^dag",
                             mat_product(_legs(Md, 2), _legs(Md, 1), dagger(Pm)),
                             dagger(Pm).map(lambda e: e * xis), sl.normal_form)
    for g in GROUP:
        c = sg.normal_form(commutator(xi, AlgElement.gen(g)))
        if c:
            wit.append(Witness(f"[xi, {g}]", c))
    for g in GROUP + GROUP_STAR:
        c = sl.normal_form(commutator(xis, AlgElement.gen(g)))
        if c:
            wit.append(Witness(f"[xi*, {g}]", c))
    return _report("glh2_determinant", wit, xi=format_element(xi))


def check_lorentz_relations(spec: ModelSpec) -> CheckReport:
    sl = system(spec, "lorentz")
    base = list(spec.printed["group"].relations) + list(spec.printed["lorentz_cross"].relations)
    printed = base + [Relation(rel.label + " (starred)", star(rel.lhs), star(rel.rhs)) for rel in base]
    derived = system_relations(spec, "lorentz")
    rep = compare_relation_sets(derived, printed, "lorentz_relations")
    wit = list(rep.witnesses)
    wit += _zero_witnesses("Mdag2 R3 M1 = M1 R3 Mdag2 entry", derive_relations("lorentz_cross_alt", spec), sl)
    return _report("lorentz_relations", wit, **rep.details)


def check_minkowski_relations(spec: ModelSpec) -> CheckReport:
    return compare_relation_sets(derive_relations("minkowski", spec), spec.printed["minkowski"],
                                 "minkowski_relations")


def check_derivative_relations(spec: ModelSpec) -> CheckReport:
    return compare_relation_sets(derive_relations("derivatives", spec), spec.printed["derivatives"],
                                 "derivative_relations")


def check_mixed_relations(spec: ModelSpec) -> CheckReport:
    return compare_relation_sets(system_relations(spec, "mixed"), spec.printed["mixed_ky"], "mixed_relations")


# ------------------------------------------------------ Minkowski length etc.

def compute_det_h_K(spec: ModelSpec) -> AlgElement:
    """det_h K from ``-P- K1 Rhat3 K1 P-^dagger = det_h K P- P-^dagger`` (normal form)."""
    sm = system(spec, "minkowski")
    Pm, K1 = spec["P_minus"], _legs(spec["K"], 1)
    lhs = (-mat_product(Pm, K1, spec["Rhat3"], K1, dagger(Pm))).map(sm.normal_form)
    PP = Pm @ dagger(Pm)
    piv = next(((i, j) for i in range(4) for j in range(4) if PP[i, j]), None)
    if piv is None:
        raise ProportionalityError("P- P-^dagger vanishes", Witness("P- P-^dagger"))
    lam = lhs[piv].scale(PP[piv].scalar_value().inverse())
    for i in range(4):
        for j in range(4):
            res = sm.normal_form(lhs[i, j] - lam * PP[i, j])
            if res:
                raise ProportionalityError("not proportional to P- P-^dagger", Witness(f"entry ({i},{j})", res))
    return sm.normal_form(lam)


def check_det_h_K(spec: ModelSpec) -> CheckReport:
    sm = system(spec, "minkowski")
    try:
        det = compute_det_h_K(spec)
    except ProportionalityError as exc:
        return _report("det_h_K", [exc.witness])
    expected = spec.expressions["det_h_K"]
    res = sm.normal_form(det - expected)
    wit = [Witness("det_h K minus the displayed value", res)] if res else []
    return _report("det_h_K", wit, det_h_K=format_element(det))


def trace_h(spec: ModelSpec, A: AlgMatrix, D: Optional[AlgMatrix] = None) -> AlgElement:
    return mat_product(spec["D_h"] if D is None else D, A).trace()


def check_centrality_reality(spec: ModelSpec) -> CheckReport:
    sm = system(spec, "minkowski")
    det = compute_det_h_K(spec)
    wit = []
    for g in COORDS:
        c = sm.normal_form(commutator(det, AlgElement.gen(g)))
        if c:
            wit.append(Witness(f"[det_h K, {g}]", c))
    im = sm.normal_form(star(det) - det)
    if im:
        wit.append(Witness("det_h K* - det_h K", im))
    tr = trace_h(spec, spec["K"])
    details: Dict[str, Any] = {"tr_h_K": format_element(tr)}
    if spec.h:
        if is_central(tr, sm, COORDS):
            wit.append(Witness("tr_h K is central", tr))
        if not sm.normal_form(star(tr) - tr):
            wit.append(Witness("tr_h K is real", tr))
        details["trace_assertions"] = "checked"
    else:
        # the undeformed trace is central and real
        details["trace_assertions"] = "skipped at h = 0"
    return _report("centrality_reality", wit, **details)


def rhat_eps_formula(spec: ModelSpec) -> AlgMatrix:
    I2, Ei = AlgMatrix.identity(2), spec["eps_inv"]
    return mat_product(kron(I2, Ei.T), spec["Rhat3"], kron(I2, dagger(Ei)))


def metric_formula(spec: ModelSpec) -> AlgMatrix:
    pref = ONE / (2 + spec.h * spec.h)
    return mat_product(kron(spec["D_h"].T, AlgMatrix.identity(2)), spec["P"], rhat_eps_formula(spec)).scale(pref)


def check_length_consistency(spec: ModelSpec) -> CheckReport:
    sm = system(spec, "minkowski")
    K = spec["K"]
    wit = []
    keps = contract(rhat_eps_formula(spec), K)
    wit += _matrix_witnesses("K^eps formula - display", keps, spec["K_eps"])
    g = metric_formula(spec)
    wit += _matrix_witnesses("g_h formula - display", g, spec["g_h"])
    l1 = compute_det_h_K(spec)
    l2 = trace_h(spec, K @ keps).scale(ONE / (2 + spec.h * spec.h))
    l3 = sum((g[2 * i + j, 2 * k + l] * K[i, j] * K[k, l]
              for i in range(2) for j in range(2) for k in range(2) for l in range(2)), ZERO_ELEMENT)
    for label, x in (("det_h K - tr_h(K K^eps)/(2+h^2)", l1 - l2), ("det_h K - g.K.K", l1 - l3),
                     ("tr_h(K K^eps)/(2+h^2) - g.K.K", l2 - l3)):
        res = sm.normal_form(x)
        if res:
            wit.append(Witness(label, res))
    return _report("length_consistency", wit, length=format_element(l1))


def check_dh_properties(spec: ModelSpec, D: Optional[AlgMatrix] = None) -> CheckReport:
    D = spec["D_h"] if D is None else D
    sl = system(spec, "lorentz")
    P, Rh = spec["P"], spec["R_h"]
    wit = []
    Rt1_inv = invert_numeric(partial_transpose(Rh, 1))
    formula = partial_trace(mat_product(P, partial_transpose(Rt1_inv, 1)), 2)
    wit += _matrix_witnesses("(i) tr_2 formula - D", formula, D)
    by_index = AlgMatrix([[sum((Rt1_inv[2 * j + i, 2 * s + s] for s in range(2)), ZERO_ELEMENT)
                           for j in range(2)] for i in range(2)])
    wit += _matrix_witnesses("(i) index formula - D", by_index, D)
    wit += _matrix_witnesses("(ii) -eps eps^-1^t - D", -(spec["eps"] @ spec["eps_inv"].T), D)
    M, adj, xi = spec["M"], m_inverse(spec), spec.xi()
    lhs = mat_product(M.T, D.T, adj.T)
    wit += _matrix_witnesses("(iii) M^t D^t adj^t - xi D^t", lhs, D.T.map(lambda e: e * xi), sl.normal_form)
    for k in range(2):
        for l in range(2):
            E = AlgMatrix([[1 if (i, j) == (k, l) else 0 for j in range(2)] for i in range(2)])
            res = sl.normal_form(trace_h(spec, mat_product(M, E, adj), D) - trace_h(spec, E, D) * xi)
            if res:
                wit.append(Witness(f"(iv) tr_h(M E{k}{l} adj) - xi tr_h(E{k}{l})", res))
    return _report("dh_properties", wit, D_h=[[format_element(x) for x in row] for row in formula.entries])


def check_keps_covariance(spec: ModelSpec) -> CheckReport:
    sl = system(spec, "lorentz")
    Re = rhat_eps_formula(spec)
    adj = m_inverse(spec)
    lhs = mat_product(Re, _legs(spec["M"], 1), _legs(spec["Mstar"], 2))
    rhs = mat_product(_legs(dagger(adj), 1), _legs(adj.T, 2), Re)
    return _report("keps_covariance", _matrix_witnesses("Reps M1 M2* - adj^dag_1 adj^t_2 Reps", lhs, rhs,
                                                        sl.normal_form))


def check_metric_invariance(spec: ModelSpec) -> CheckReport:
    sl = system(spec, "lorentz")
    g = metric_formula(spec)
    wit = _matrix_witnesses("g_h formula - display", g, spec["g_h"])
    Lam = kron(spec["M"], spec["Mstar"])
    xi = spec.xi()
    xx = xi * star(xi)
    wit += _matrix_witnesses("Lambda^t g Lambda - xi xi* g", mat_product(Lam.T, g, Lam), g.map(lambda e: e * xx),
                             sl.normal_form)
    return _report("metric_invariance", wit)


def check_coaction_covariance(spec: ModelSpec) -> CheckReport:
    """The Minkowski and derivative relations are preserved by the Lorentz coaction."""
    wit = []
    adj = m_inverse(spec)
    slm = system(spec, "lorentz_minkowski")
    Kp = mat_product(spec["M"], spec["K"], spec["Mdag"])
    wit += _zero_witnesses("minkowski relation for M K M^dag", derive_relations("minkowski", spec, {"K": Kp}), slm)
    det = compute_det_h_K(spec)
    det_p = substitute_generators(det, _matrix_substitution(Kp, spec["K"]))
    xi = spec.xi()
    res = slm.normal_form(det_p - xi * star(xi) * det)
    if res:
        wit.append(Witness("det_h(M K M^dag) - xi xi* det_h K", res))
    sld = system(spec, "lorentz_derivatives")
    Yp = mat_product(dagger(adj), spec["Y"], adj)
    wit += _zero_witnesses("derivative relation for adj^dag Y adj", derive_relations("derivatives", spec, {"Y": Yp}),
                           sld)
    return _report("coaction_covariance", wit)


def box_operator(spec: ModelSpec, Y: Optional[AlgMatrix] = None) -> AlgElement:
    Y = spec["Y"] if Y is None else Y
    y_eps = contract(invert_numeric(rhat_eps_formula(spec)), Y)
    return trace_h(spec, y_eps @ Y).scale(ONE / (2 + spec.h * spec.h))


def check_box(spec: ModelSpec) -> CheckReport:
    sd = system(spec, "derivatives")
    box = sd.normal_form(box_operator(spec))
    wit = []
    for g in DERIVS:
        c = sd.normal_form(commutator(box, AlgElement.gen(g)))
        if c:
            wit.append(Witness(f"[box, {g}]", c))
    im = sd.normal_form(star(box) - box)
    if im:
        wit.append(Witness("box* - box", im))
    sc = system(spec, "lorentz_derivatives")
    adj = m_inverse(spec)
    xi = spec.xi()
    moved = box_operator(spec, mat_product(dagger(adj), spec["Y"], adj))
    res = sc.normal_form(moved - xi * star(xi) * box)
    if res:
        wit.append(Witness("box(adj^dag Y adj) - xi xi* box(Y)", res))
    return _report("box", wit, box=format_element(box))


# ------------------------------------------------------------ forms, copies

def _classical_relations(name: str, gens: Sequence[str]) -> List[AlgElement]:
    """Undeformed relations of a shipped system at h = r = 0."""
    rels = []
    for i, g in enumerate(gens):
        x = AlgElement.gen(g)
        if g in FORMS:
            rels.append(x * x)
        for k in gens[i + 1:]:
            y = AlgElement.gen(k)
            if g in FORMS and k in FORMS:
                rels.append(x * y + y * x)
            elif name == "mixed" and g in COORDS and k in DERIVS and COORDS.index(g) == DERIVS.index(k):
                rels.append(y * x - x * y - ONE_ELEMENT)
            else:
                rels.append(x * y - y * x)
    return rels


def check_forms_and_d(spec: ModelSpec) -> CheckReport:
    sf = system(spec, "forms")
    wit = []
    # (a) the K-dK relation and its partner add up to the derivative of the Minkowski equation
    kdk, partner = EQUATIONS["forms_kdk"], EQUATIONS["forms_kdk_partner"]
    l1, r1 = kdk.sides(spec)
    l2, r2 = partner.sides(spec)
    wit += _matrix_witnesses("(a) d of the minkowski equation", l1 + l2, r1 + r2, sf.normal_form)
    wit += _zero_witnesses("(a) partner relation", derive_relations(partner, spec), sf)
    # (b) star closure of the forms system
    wit += [Witness(f"(b) star of rule {' '.join(lhs)}", res) for lhs, res in star_closure_witnesses(sf)]
    # (c) d = tr_h(dK Y) against the displayed expression
    d = trace_h(spec, spec["dK"] @ spec["Y"])
    if d != spec.expressions["d"]:
        wit.append(Witness("(c) tr_h(dK Y) - displayed d", d - spec.expressions["d"]))
    # (d) classical anticommutation of the forms
    c0 = model_at(spec.j, 0, 0)
    dkdk0 = derive_relations("forms_dkdk", c0)
    expected = _classical_relations("forms", FORMS)
    miss_a, miss_b = relation_sets_equivalent(dkdk0, expected)
    wit += [Witness("(d) h=0 dK-dK relation not an anticommutator", m) for m in miss_a]
    wit += [Witness("(d) anticommutator missing at h=0", m) for m in miss_b]
    return _report("forms_and_d", wit, d=format_element(d), forms_rules=len(sf))


def check_braided_addition(spec: ModelSpec, include_cross: bool = True) -> CheckReport:
    if include_cross:
        sb = system(spec, "braided")
    else:
        sb = orient(derive_relations("minkowski", spec) + derive_relations("copy", spec), name="two copies")
    summed = derive_relations("minkowski", spec, {"K": spec["K"] + spec["Kp"]})
    wit = _zero_witnesses("minkowski relation for K + K'", summed, sb)
    return _report("braided_addition", wit, rules=len(sb), cross_relations=include_cross)


STAR_FAMILIES = ("lorentz", "minkowski", "derivatives", "mixed", "forms", "braided")


def check_star_structure(spec: ModelSpec, table: StarTable = DEFAULT_STAR,
                         families: Sequence[str] = STAR_FAMILIES) -> CheckReport:
    wit = []
    for fam in families:
        for lhs, res in star_closure_witnesses(system(spec, fam), table):
            wit.append(Witness(f"{fam}: star of rule {' '.join(lhs)}", res))
    return _report("star_structure", wit, families=list(families))


def hermitian_derivatives_table() -> Dict[str, Tuple[int, str]]:
    """Star table with Y declared hermitian instead of antihermitian."""
    return {**DEFAULT_STAR, "d_al": (1, "d_al"), "d_be": (1, "d_ga"), "d_ga": (1, "d_be"), "d_de": (1, "d_de")}


# ------------------------------------------------------- structural suites

SHIPPED_SYSTEMS = ("group", "lorentz", "minkowski", "derivatives", "mixed", "forms", "braided",
                   "lorentz_minkowski", "lorentz_derivatives", "plane")


def check_catalog_displays(spec: ModelSpec) -> CheckReport:
    P, I4 = spec["P"], AlgMatrix.identity(4)
    Rhat = P @ spec["R_h"]
    half = ParamScalar(1, 2)
    eps, ei = spec["eps"], spec["eps_inv"]
    wit = []
    wit += _matrix_witnesses("P R_h - displayed Rhat_h", Rhat, spec["Rhat_h"])
    wit += _matrix_witnesses("(I - Rhat)/2 - displayed P-", (I4 - Rhat).scale(half), spec["P_minus"])
    outer = AlgMatrix([[eps[i, j] * ei[k, l] for k in range(2) for l in range(2)]
                       for i in range(2) for j in range(2)]).scale(-half)
    wit += _matrix_witnesses("-eps (x) eps^-1 / 2 - P-", outer, spec["P_minus"])
    wit += _matrix_witnesses("eps eps^-1 - I", eps @ ei, AlgMatrix.identity(2))
    wit += _matrix_witnesses("P R3 P - R2", mat_product(P, spec["R3"], P), spec["R2"])
    wit += _matrix_witnesses("Rhat_eps formula - display", rhat_eps_formula(spec), spec["Rhat_eps"])
    wit += _matrix_witnesses("K^eps formula - display", contract(rhat_eps_formula(spec), spec["K"]), spec["K_eps"])
    PP = spec["P_minus"] @ dagger(spec["P_minus"])
    c = ((2 + spec.h * spec.h) * half) ** 2
    wit += _matrix_witnesses("(P- P-^dag)^2 - c P- P-^dag", PP @ PP, PP.scale(c))
    sg = system(spec, "group")
    M, adj, xi = spec["M"], m_inverse(spec), spec.xi()
    xiI = AlgMatrix.identity(2).map(lambda e: e * xi)
    wit += _matrix_witnesses("M adj - xi I", M @ adj, xiI, sg.normal_form)
    wit += _matrix_witnesses("adj M - xi I", adj @ M, xiI, sg.normal_form)
    return _report("catalog_displays", wit)


def check_confluence_all(spec: ModelSpec, max_degree: int = 3) -> CheckReport:
    wit, details = [], {}
    for name in SHIPPED_SYSTEMS:
        sys = system(spec, name)
        rep = check_confluence(sys, max_degree)
        details[name] = {"rules": len(sys), "overlaps": rep.checked,
                         "completion_rules": sys.metadata.get("completion_rules", 0)}
        wit += [Witness(f"{name}: overlap {' '.join(o.word)}", o.difference) for o in rep.unresolved]
    return _report("confluence", wit, systems=details)


def check_classical_limit(spec: ModelSpec) -> CheckReport:
    """At h = r = 0 every relation set is undeformed and every other check still passes."""
    c0 = model_at(spec.j, 0, 0)
    wit = []
    for name in SHIPPED_SYSTEMS:
        expected = _classical_relations(name, SYSTEM_GENERATORS[name])
        miss_a, miss_b = relation_sets_equivalent(system_relations(c0, name), expected)
        wit += [Witness(f"{name}: h=0 relation is not classical", m) for m in miss_a]
        wit += [Witness(f"{name}: classical relation missing at h=0", m) for m in miss_b]
    sub = run_suite(c0, [cid for cid in CHECK_IDS if cid not in ("classical_limit", "oracle")])
    for rep in sub:
        if rep.status == "fail":
            wit += [Witness(f"h=0 {rep.id}: {w.where}", w.residual) for w in rep.witnesses]
    return _report("classical_limit", wit, rerun=[rep.id for rep in sub])


def check_oracle(spec: ModelSpec, points: Optional[Sequence[Tuple]] = None) -> CheckReport:
    from .oracle import cross_validate
    return cross_validate(spec, points)


# ---------------------------------------------------------------- runner

CHECKS: Dict[str, Callable[[ModelSpec], CheckReport]] = {
    "ybe": lambda s: check_ybe(s["R_h"]),
    "triangularity": lambda s: check_triangularity(s["R_h"]),
    "spectral": lambda s: check_spectral(s["P"] @ s["R_h"], s["P_plus"], s["P_minus"]),
    "catalog_displays": check_catalog_displays,
    "plane": check_plane,
    "group_relations": check_group_relations,
    "glh2_determinant": check_glh2_determinant,
    "lorentz_relations": check_lorentz_relations,
    "mixed_ybe": check_mixed_ybe,
    "r3_reality": check_r3_reality,
    "r3_represents_glh2": check_r3_represents_glh2,
    "minkowski_relations": check_minkowski_relations,
    "derivative_relations": check_derivative_relations,
    "mixed_relations": check_mixed_relations,
    "det_h_K": check_det_h_K,
    "centrality_reality": check_centrality_reality,
    "length_consistency": check_length_consistency,
    "dh_properties": check_dh_properties,
    "keps_covariance": check_keps_covariance,
    "metric_invariance": check_metric_invariance,
    "coaction_covariance": check_coaction_covariance,
    "box": check_box,
    "forms_and_d": check_forms_and_d,
    "braided_addition": check_braided_addition,
    "star_structure": check_star_structure,
    "confluence": check_confluence_all,
    "classical_limit": check_classical_limit,
    "oracle": check_oracle,
}
CHECK_IDS: Tuple[str, ...] = tuple(CHECKS)


def select_checks(suite: str | Sequence[str] | None) -> List[str]:
    """``all``/None, or a comma-separated list of check ids (prefixes allowed)."""
    if suite is None or suite == "all":
        return list(CHECK_IDS)
    names = [s.strip() for s in suite.split(",")] if isinstance(suite, str) else list(suite)
    out = []
    for name in names:
        hits = [cid for cid in CHECK_IDS if cid == name] or [cid for cid in CHECK_IDS if cid.startswith(name)]
        if not hits:
            raise KeyError(f"unknown check {name!r}")
        out += [h for h in hits if h not in out]
    return [cid for cid in CHECK_IDS if cid in out]


def run_check(check_id: str, spec: ModelSpec, **kwargs) -> CheckReport:
    t0 = time.perf_counter()
    rep = CHECKS[check_id](spec, **kwargs) if kwargs else CHECKS[check_id](spec)
    rep.id = check_id
    rep.timing = time.perf_counter() - t0
    return rep


def run_suite(spec: ModelSpec, suite: str | Sequence[str] | None = None,
              oracle_points: Optional[Sequence[Tuple]] = None) -> List[CheckReport]:
    """Run the selected checks in registry order."""
    out = []
    for cid in select_checks(suite):
        if cid == "oracle" and oracle_points is not None:
            out.append(run_check(cid, spec, points=oracle_points))
        else:
            out.append(run_check(cid, spec))
    return out
