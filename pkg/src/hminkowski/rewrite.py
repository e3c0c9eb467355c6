"""Rewriting modulo two-sided ideals: orientation, normal forms, diamond-lemma checks.

Words are compared degree-first, then lexicographically by generator rank, so
every oriented rule strictly decreases its word and reduction terminates.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .ncalg import (DEFAULT_ORDER, DEFAULT_STAR, AlgElement, StarTable, Word,
                    commutator, rank_map, star, word_key)
from .scalars import ParamScalar


class OrientationError(ValueError):
    pass


class NotConfluentError(RuntimeError):
    pass


class CompletionError(RuntimeError):
    pass


@dataclass(frozen=True)
class GeneratorOrder:
    names: Tuple[str, ...] = DEFAULT_ORDER
    from_right: bool = True

    def rank(self) -> Dict[str, int]:
        return rank_map(self.names)

    def restrict(self, gens: Iterable[str]) -> "GeneratorOrder":
        keep = set(gens)
        return GeneratorOrder(tuple(g for g in self.names if g in keep), self.from_right)


@dataclass(frozen=True)
class RewriteRule:
    lhs: Word
    rhs: AlgElement

    def as_relation(self) -> AlgElement:
        return AlgElement.word(*self.lhs) - self.rhs


@dataclass
class Overlap:
    word: Word
    left: AlgElement
    right: AlgElement

    @property
    def difference(self) -> AlgElement:
        return self.left - self.right


@dataclass
class ConfluenceReport:
    system: str
    max_degree: int
    checked: int
    unresolved: List[Overlap] = field(default_factory=list)

    @property
    def confluent(self) -> bool:
        return not self.unresolved


class RewriteSystem:
    """Immutable set of order-decreasing rules keyed by left-hand word."""

    def __init__(self, rules: Mapping[Word, AlgElement], order: GeneratorOrder | Sequence[str] = DEFAULT_ORDER,
                 name: str = "", metadata: Optional[dict] = None):
        self.order = order if isinstance(order, GeneratorOrder) else GeneratorOrder(tuple(order))
        self.rank = self.order.rank()
        self.rules: Dict[Word, AlgElement] = dict(rules)
        self.name = name
        self.metadata = dict(metadata or {})
        self._lengths = sorted({len(w) for w in self.rules})
        self._memo: Dict[Word, AlgElement] = {}
        self._confluent_at: Dict[int, ConfluenceReport] = {}
        for lhs, rhs in self.rules.items():
            k = self.key(lhs)
            for w in rhs.words():
                if self.key(w) >= k:
                    raise OrientationError(f"rule {lhs} -> {rhs} does not decrease the word order")

    def key(self, w: Word):
        return word_key(w, self.rank, self.order.from_right)

    def __len__(self) -> int:
        return len(self.rules)

    def __contains__(self, w) -> bool:
        return tuple(w) in self.rules

    def rule_list(self) -> List[RewriteRule]:
        return [RewriteRule(w, self.rules[w]) for w in sorted(self.rules, key=self.key)]

    def generators(self) -> set:
        out = set()
        for lhs, rhs in self.rules.items():
            out.update(lhs)
            out.update(rhs.generators())
        return out

    def leading_word(self, x: AlgElement) -> Word:
        return max(x.words(), key=self.key)

    def find_redex(self, w: Word, rightmost: bool = False) -> Optional[Tuple[int, Word]]:
        n = len(w)
        positions = range(n - 1, -1, -1) if rightmost else range(n)
        for i in positions:
            for L in self._lengths:
                if i + L <= n and w[i:i + L] in self.rules:
                    return i, w[i:i + L]
        return None

    def _neg_key(self, w: Word):
        seq = reversed(w) if self.order.from_right else w
        return (-len(w), tuple(-self.rank[g] for g in seq))

    def normal_form(self, x: AlgElement, strategy: str = "left") -> AlgElement:
        """Fully reduce ``x``; terms are processed from the largest word down."""
        if not self.rules or not x:
            return x
        rightmost = strategy == "right"
        pending: Dict[Word, ParamScalar] = {}
        heap: list = []
        for w, c in x.items():
            pending[w] = c
            heapq.heappush(heap, (self._neg_key(w), w))
        result: Dict[Word, ParamScalar] = {}
        while heap:
            _, w = heapq.heappop(heap)
            c = pending.pop(w, None)
            if c is None or not c:
                continue
            hit = self.find_redex(w, rightmost)
            if hit is None:
                result[w] = c
                continue
            i, lhs = hit
            u, v = w[:i], w[i + len(lhs):]
            for w2, c2 in self.rules[lhs].items():
                nw = u + w2 + v
                if nw in pending:
                    pending[nw] = pending[nw] + c * c2
                else:
                    pending[nw] = c * c2
                    heapq.heappush(heap, (self._neg_key(nw), nw))
        return AlgElement._raw({w: c for w, c in result.items() if c})

    def reduce_once_at(self, w: Word, i: int, lhs: Word) -> AlgElement:
        u, v = w[:i], w[i + len(lhs):]
        return AlgElement.word(*u) * self.rules[lhs] * AlgElement.word(*v)

    def is_normal(self, w: Word) -> bool:
        return self.find_redex(w) is None

    def with_rules(self, extra: Mapping[Word, AlgElement], name: str | None = None) -> "RewriteSystem":
        rules = dict(self.rules)
        rules.update(extra)
        return RewriteSystem(rules, self.order, name or self.name, self.metadata)

    def overlaps(self, max_degree: int) -> List[Tuple[Word, Tuple[int, Word], Tuple[int, Word]]]:
        """Ambiguous words: suffix/prefix overlaps and inclusions of rule left-hand sides."""
        out = []
        lhss = sorted(self.rules, key=self.key)
        for u in lhss:
            for v in lhss:
                for k in range(1, min(len(u), len(v))):
                    if u[-k:] == v[:k]:
                        w = u + v[k:]
                        if len(w) <= max_degree:
                            out.append((w, (0, u), (len(u) - k, v)))
                if u != v and len(v) < len(u):
                    for i in range(len(u) - len(v) + 1):
                        if u[i:i + len(v)] == v:
                            out.append((u, (0, u), (i, v)))
        return out


def orient(relations: Iterable[AlgElement], order: GeneratorOrder | Sequence[str] = DEFAULT_ORDER,
           name: str = "", base: Optional[RewriteSystem] = None, metadata: Optional[dict] = None) -> RewriteSystem:
    """Interreduce relations (each meaning ``x = 0``) into a reduced rewrite system.

    Each surviving relation contributes one rule, its largest word rewritten to
    the rest.  A relation that reduces to a nonzero constant is inconsistent.
    """
    order = order if isinstance(order, GeneratorOrder) else GeneratorOrder(tuple(order))
    rules: Dict[Word, AlgElement] = dict(base.rules) if base else {}
    queue: List[AlgElement] = list(relations)
    while queue:
        sys = RewriteSystem(rules, order)
        rel = sys.normal_form(queue.pop(0))
        if not rel:
            continue
        lead = sys.leading_word(rel)
        if not lead:
            raise OrientationError(f"relation reduces to the nonzero constant {rel}")
        c = rel.coeff(lead)
        rhs = -(rel - AlgElement.word(*lead, coeff=c)).scale(c.inverse())
        new = RewriteSystem({lead: rhs}, order)
        # rules whose left side contains the new lead go back to the queue
        kept: Dict[Word, AlgElement] = {}
        for lhs, r in rules.items():
            if new.find_redex(lhs) is not None:
                queue.append(AlgElement.word(*lhs) - r)
            else:
                kept[lhs] = r
        kept[lead] = rhs
        interim = RewriteSystem(kept, order)
        rules = {lhs: interim.normal_form(r) for lhs, r in kept.items()}
    return RewriteSystem(rules, order, name, metadata)


def normal_form(x: AlgElement, sys: RewriteSystem, strategy: str = "left") -> AlgElement:
    return sys.normal_form(x, strategy)


def check_confluence(sys: RewriteSystem, max_degree: int = 3) -> ConfluenceReport:
    """Resolve every overlap ambiguity of length at most ``max_degree`` both ways."""
    if max_degree < 3:
        raise ValueError("max_degree must be at least 3")
    cached = sys._confluent_at.get(max_degree)
    if cached is not None:
        return cached
    amb = sys.overlaps(max_degree)
    report = ConfluenceReport(sys.name, max_degree, len(amb))
    for w, (i, u), (j, v) in amb:
        left = sys.normal_form(sys.reduce_once_at(w, i, u))
        right = sys.normal_form(sys.reduce_once_at(w, j, v))
        if left != right:
            report.unresolved.append(Overlap(w, left, right))
    sys._confluent_at[max_degree] = report
    return report


def complete(sys: RewriteSystem, max_degree: int = 4) -> Tuple[RewriteSystem, List[RewriteRule]]:
    """Bounded completion: add reduced overlap differences as rules until confluent."""
    added: List[RewriteRule] = []
    current = sys
    for _ in range(16):
        rep = check_confluence(current, max(3, max_degree))
        if rep.confluent:
            meta = dict(sys.metadata, completion_rules=len(added))
            return RewriteSystem(current.rules, current.order, sys.name, meta), added
        diffs = [o.difference for o in rep.unresolved]
        nxt = orient(diffs, current.order, current.name, base=current)
        for lhs in nxt.rules:
            if lhs not in current.rules:
                if len(lhs) > max_degree:
                    raise CompletionError(f"completion of {sys.name} needs rules beyond degree {max_degree}")
                added.append(RewriteRule(lhs, nxt.rules[lhs]))
        current = nxt
    raise CompletionError(f"completion of {sys.name} did not stabilise")


def require_confluent(sys: RewriteSystem, degree: int = 3) -> None:
    need = max(3, 2 * max((len(w) for w in sys.rules), default=1) - 1, degree)
    rep = check_confluence(sys, need)
    if not rep.confluent:
        raise NotConfluentError(f"{sys.name or 'system'} is not confluent at degree {need}: "
                                f"{len(rep.unresolved)} unresolved overlaps")


def equivalent_modulo(x: AlgElement, y: AlgElement, sys: RewriteSystem) -> bool:
    require_confluent(sys)
    return not sys.normal_form(x - y)


def is_central(x: AlgElement, sys: RewriteSystem, gens: Sequence[str]) -> bool:
    require_confluent(sys)
    return all(not sys.normal_form(commutator(x, AlgElement.gen(g))) for g in gens)


def closed_under_star(sys: RewriteSystem, table: StarTable = DEFAULT_STAR) -> bool:
    return not star_closure_witnesses(sys, table)


def star_closure_witnesses(sys: RewriteSystem, table: StarTable = DEFAULT_STAR) -> List[Tuple[Word, AlgElement]]:
    require_confluent(sys)
    out = []
    for rule in sys.rule_list():
        res = sys.normal_form(star(rule.as_relation(), table))
        if res:
            out.append((rule.lhs, res))
    return out


def relation_sets_equivalent(a: Sequence[AlgElement], b: Sequence[AlgElement],
                             order: GeneratorOrder | Sequence[str] = DEFAULT_ORDER) -> Tuple[list, list]:
    """Mutual-consequence test; returns the relations of each side not implied by the other."""
    sa, sb = orient(a, order), orient(b, order)
    miss_a = [x for x in a if sb.normal_form(x)]
    miss_b = [x for x in b if sa.normal_form(x)]
    return miss_a, miss_b


def commutation_rules(low: Sequence[str], high: Sequence[str]) -> List[AlgElement]:
    """Relations declaring every generator of ``low`` to commute with every one of ``high``."""
    return [commutator(AlgElement.gen(g), AlgElement.gen(k)) for g in low for k in high]


EMPTY_SYSTEM = RewriteSystem({}, DEFAULT_ORDER, "empty")
