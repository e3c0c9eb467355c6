"""Independent numeric cross-check of the symbolic engine.

Parameters are fixed to rationals first; matrix equations are then expanded
with plain dict arithmetic, the resulting relations are row-reduced over Q,
and elements are reduced by single-rule substitutions at randomly chosen
positions.  Nothing here goes through ParamScalar, AlgMatrix products or the
RewriteSystem reducer, so agreement with the symbolic results is meaningful.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .catalog import ModelSpec, build_model
from .equations import EQUATIONS, SYSTEM_GENERATORS, SYSTEM_RECIPES, Factor, system
from .ncalg import DEFAULT_ORDER, AlgElement, Word

NumPoly = Dict[Word, Fraction]
NumMatrix = List[List[NumPoly]]

SEED = 20240917
N_POINTS = 3


def _acc(out: NumPoly, w: Word, c: Fraction) -> None:
    v = out.get(w, 0) + c
    if v:
        out[w] = v
    else:
        out.pop(w, None)


def padd(x: NumPoly, y: NumPoly, c: Fraction = Fraction(1)) -> NumPoly:
    out = dict(x)
    for w, v in y.items():
        _acc(out, w, c * v)
    return out


def pmul(x: NumPoly, y: NumPoly) -> NumPoly:
    out: NumPoly = {}
    for w1, c1 in x.items():
        for w2, c2 in y.items():
            _acc(out, w1 + w2, c1 * c2)
    return out


def _gen(name: str) -> NumPoly:
    return {(name,): Fraction(1)}


def numeric(spec: ModelSpec, key: str, h: Fraction, r: Fraction) -> NumMatrix:
    A = spec[key]
    return [[A[i, j].substitute(h, r) for j in range(A.cols)] for i in range(A.rows)]


def nmatmul(A: NumMatrix, B: NumMatrix) -> NumMatrix:
    n, m, p = len(A), len(B), len(B[0])
    if len(A[0]) != m:
        raise ValueError("shape mismatch")
    out = []
    for i in range(n):
        row = []
        for k in range(p):
            acc: NumPoly = {}
            for j in range(m):
                if A[i][j] and B[j][k]:
                    acc = padd(acc, pmul(A[i][j], B[j][k]))
            row.append(acc)
        out.append(row)
    return out


def nembed(A: NumMatrix, leg: int) -> NumMatrix:
    """A (x) 1 for leg 1, 1 (x) A for leg 2, written out index by index."""
    out = [[{} for _ in range(4)] for _ in range(4)]
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    if leg == 1 and j == l:
                        out[2 * i + j][2 * k + l] = dict(A[i][k])
                    elif leg == 2 and i == k:
                        out[2 * i + j][2 * k + l] = dict(A[j][l])
    return out


def _side(factors: Sequence[Factor], spec: ModelSpec, h, r) -> NumMatrix:
    mats = []
    for f in factors:
        A = numeric(spec, f.key, h, r)
        mats.append(A if f.leg is None else nembed(A, f.leg))
    out = mats[0]
    for B in mats[1:]:
        out = nmatmul(out, B)
    return out


def equation_relations(tag: str, spec: ModelSpec, h, r) -> List[NumPoly]:
    eq = EQUATIONS[tag]
    lhs = _side(eq.left, spec, h, r)
    rhs = _side(eq.right, spec, h, r)
    extra = _side(eq.inhomogeneous, spec, h, r) if eq.inhomogeneous else None
    out = []
    for i in range(len(lhs)):
        for j in range(len(lhs[0])):
            d = padd(lhs[i][j], rhs[i][j], Fraction(-eq.right_sign))
            if extra is not None:
                d = padd(d, extra[i][j], Fraction(-eq.eta))
            if d:
                out.append(d)
    return out


def system_relations(spec: ModelSpec, name: str, h, r) -> List[NumPoly]:
    if name == "plane":
        x, y = _gen("x"), _gen("y")
        Rh = numeric(spec, "R_h", h, r)
        v = [x, y]
        out = []
        for i in range(2):
            for j in range(2):
                acc = {}
                for k in range(2):
                    for l in range(2):
                        if Rh[2 * i + j][2 * k + l]:
                            acc = padd(acc, pmul(Rh[2 * i + j][2 * k + l], pmul(v[k], v[l])))
                acc = padd(acc, pmul(v[j], v[i]), Fraction(-1))
                if acc:
                    out.append(acc)
        return out
    eqs, cross = SYSTEM_RECIPES[name]
    rels: List[NumPoly] = []
    for tag in eqs:
        rels += equation_relations(tag, spec, h, r)
    for low, high in cross:
        for g in low:
            for k in high:
                rels.append({(g, k): Fraction(1), (k, g): Fraction(-1)})
    return rels


class InconsistentRelations(ValueError):
    pass


class NumericReducer:
    """Row-reduced basis of a span of relations over Q, used as rewrite rules."""

    def __init__(self, relations: Sequence[NumPoly], order: Sequence[str] = DEFAULT_ORDER):
        self.rank = {g: i for i, g in enumerate(order)}
        rows: Dict[Word, NumPoly] = {}
        for rel in relations:
            row = self._reduce_row(dict(rel), rows)
            if not row:
                continue
            lead = max(row, key=self.key)
            if not lead:
                raise InconsistentRelations("relations imply a nonzero constant")
            c = row[lead]
            row = {w: v / c for w, v in row.items()}
            for pw, prow in rows.items():
                if lead in prow:
                    rows[pw] = padd(prow, row, -prow[lead])
            rows[lead] = row
        self.rules: Dict[Word, NumPoly] = {}
        for lead, row in rows.items():
            rhs = {w: -v for w, v in row.items() if w != lead}
            self.rules[lead] = rhs
        self.lengths = sorted({len(w) for w in self.rules})

    def key(self, w: Word):
        return (len(w), tuple(self.rank[g] for g in reversed(w)))

    @staticmethod
    def _reduce_row(row: NumPoly, rows: Mapping[Word, NumPoly]) -> NumPoly:
        for pw, prow in rows.items():
            if pw in row:
                row = padd(row, prow, -row[pw])
        return row

    def redexes(self, x: NumPoly) -> List[Tuple[Word, int, Word]]:
        out = []
        for w in x:
            for i in range(len(w)):
                for L in self.lengths:
                    if w[i:i + L] in self.rules:
                        out.append((w, i, w[i:i + L]))
        return out

    def reduce(self, x: NumPoly, rng: random.Random) -> NumPoly:
        """Apply one rule at a random redex until none is left."""
        x = dict(x)
        while True:
            found = self.redexes(x)
            if not found:
                return x
            w, i, lhs = rng.choice(sorted(found))
            c = x.pop(w)
            u, v = w[:i], w[i + len(lhs):]
            for w2, c2 in self.rules[lhs].items():
                _acc(x, u + w2 + v, c * c2)


def random_points(spec: ModelSpec, n: int = N_POINTS, seed: int = SEED) -> List[Tuple[Fraction, Fraction]]:
    rng = random.Random(seed + spec.j)
    out = []
    while len(out) < n:
        h = Fraction(rng.choice((-1, 1)) * rng.randint(1, 9), rng.randint(1, 7))
        r = Fraction(rng.choice((-1, 1)) * rng.randint(1, 9), rng.randint(1, 7)) if spec.j == 1 else Fraction(0)
        if (h, r) not in out:
            out.append((h, r))
    return out


def random_element(gens: Sequence[str], rng: random.Random, n_terms: int = 4, max_degree: int = 3) -> AlgElement:
    terms = {}
    for _ in range(n_terms):
        w = tuple(rng.choice(gens) for _ in range(rng.randint(0, max_degree)))
        terms[w] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return AlgElement(terms)


PRINTED_SYSTEM = {"group": "group", "lorentz_cross": "lorentz", "minkowski": "minkowski",
                  "derivatives": "derivatives", "mixed_ky": "mixed"}


def cross_validate(spec: ModelSpec, points: Optional[Sequence[Tuple]] = None, seed: int = SEED,
                   systems: Optional[Sequence[str]] = None, samples: int = 6):
    """Re-validate the symbolic systems and key identities at rational points."""
    from .verifier import SHIPPED_SYSTEMS, Witness, _report, box_operator, compute_det_h_K

    base = build_model(spec.j)
    if points is None:
        points = [spec.point] if spec.point is not None else random_points(spec, N_POINTS, seed)
    points = [(Fraction(h), Fraction(r) if spec.j == 1 else Fraction(0)) for h, r in points]
    names = list(systems or SHIPPED_SYSTEMS)
    rng = random.Random(seed)
    wit = []
    compared = 0

    def miss(where, poly):
        wit.append(Witness(where, AlgElement(poly) if poly else None))

    for h, r in points:
        tag = f"h={h}, r={r}"
        reducers = {}
        for name in names:
            try:
                red = NumericReducer(system_relations(base, name, h, r))
            except InconsistentRelations as exc:
                miss(f"{tag} {name}: {exc}", None)
                continue
            reducers[name] = red
            sym = system(base, name)
            try:
                spec_rules = {lhs: rhs.substitute(h, r) for lhs, rhs in sym.rules.items()}
            except ZeroDivisionError:
                miss(f"{tag} {name}: symbolic rules have a pole here", None)
                continue
            if spec_rules != red.rules:
                bad = sorted(set(spec_rules) ^ set(red.rules)) or \
                    sorted(w for w in spec_rules if spec_rules[w] != red.rules[w])
                for w in bad[:3]:
                    miss(f"{tag} {name}: rule for {' '.join(w)} differs",
                         padd(spec_rules.get(w, {}), red.rules.get(w, {}), Fraction(-1)))
            gens = list(SYSTEM_GENERATORS[name])
            for _ in range(samples):
                x = random_element(gens, rng)
                sym_nf = sym.normal_form(x).substitute(h, r)
                num_nf = red.reduce(x.substitute(h, r), rng)
                compared += 1
                if sym_nf != num_nf:
                    miss(f"{tag} {name}: normal forms of {x} differ", padd(sym_nf, num_nf, Fraction(-1)))
        # printed relation sets
        for fam, name in PRINTED_SYSTEM.items():
            if name not in reducers:
                continue
            for rel in base.printed[fam].relations:
                res = reducers[name].reduce(rel.residual.substitute(h, r), rng)
                compared += 1
                if res:
                    miss(f"{tag} printed {rel.label!r}", res)
        # det_h K: -P- K1 Rhat3 K1 P-^dag against det * P- P-^dag
        if "minkowski" in reducers:
            red = reducers["minkowski"]
            Pm = numeric(base, "P_minus", h, r)
            Pmd = [[Pm[k][i] for k in range(4)] for i in range(4)]
            K1 = nembed(numeric(base, "K", h, r), 1)
            lhs = nmatmul(nmatmul(nmatmul(nmatmul(Pm, K1), numeric(base, "Rhat3", h, r)), K1), Pmd)
            PP = nmatmul(Pm, Pmd)
            det = compute_det_h_K(base).substitute(h, r)
            for i in range(4):
                for j in range(4):
                    d = padd({w: -c for w, c in lhs[i][j].items()}, pmul(det, PP[i][j]), Fraction(-1))
                    res = red.reduce(d, rng)
                    compared += 1
                    if res:
                        miss(f"{tag} det_h K entry ({i},{j})", res)
        # the box operator commutes with every derivative
        if "derivatives" in reducers:
            red = reducers["derivatives"]
            box = box_operator(base).substitute(h, r)
            for g in SYSTEM_GENERATORS["derivatives"]:
                res = red.reduce(padd(pmul(box, _gen(g)), pmul(_gen(g), box), Fraction(-1)), rng)
                compared += 1
                if res:
                    miss(f"{tag} [box, {g}]", res)
    return _report("oracle", wit, points=[f"h={h}, r={r}" for h, r in points], comparisons=compared)
