"""Finite-state transduction of a parsed grammar over document annotations."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .annotations import Annotation, Document
from .errors import SpanError
from .grammar import (ALL, APPELT, ONE, OPTIONAL, PLUS, Constraint, Element, Grammar,
                      Node, Rule)

Span = tuple[int, int]


@dataclass(frozen=True)
class MatchResult:
    rule_name: str
    span: Span
    bound_spans: dict[str, Span] = field(default_factory=dict)
    consumed: tuple[int, ...] = field(default=(), compare=False)  # annotation ids
    created: tuple[int, ...] = field(default=(), compare=False)


def eval_constraint(c: Constraint, a: Annotation) -> bool:
    return c.test(a)


class _Sequence:
    """Input annotations in matching order plus a successor table."""

    def __init__(self, anns: Sequence[Annotation]):
        self.anns = list(anns)
        n = len(self.anns)
        # successors of i: every annotation at the nearest start offset >= anns[i].end
        self.after: list[tuple[int, ...]] = []
        starts = [a.start for a in self.anns]
        for a in self.anns:
            k = _bisect_left(starts, a.end)
            if k < n:
                s = starts[k]
                succ = []
                while k < n and starts[k] == s:
                    succ.append(k)
                    k += 1
                self.after.append(tuple(succ))
            else:
                self.after.append(())

    def __len__(self) -> int:
        return len(self.anns)


def _bisect_left(xs: list[int], x: int) -> int:
    lo, hi = 0, len(xs)
    while lo < hi:
        mid = (lo + hi) // 2
        if xs[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo


# A partial match: index of the last consumed annotation (None before the
# first), indices consumed so far, and label -> (first, last) index bindings.
_State = tuple[int | None, tuple[int, ...], tuple[tuple[str, int, int], ...]]


class _Matcher:
    def __init__(self, seq: _Sequence, start: int):
        self.seq = seq
        self.start = start

    def candidates(self, last: int | None) -> tuple[int, ...]:
        return (self.start,) if last is None else self.seq.after[last]

    def match_sequence(self, nodes: Sequence[Node], last: int | None) -> Iterator[_State]:
        if not nodes:
            yield last, (), ()
            return
        head, rest = nodes[0], nodes[1:]
        for l1, c1, b1 in self.match_node(head, last):
            for l2, c2, b2 in self.match_sequence(rest, l1):
                yield l2, c1 + c2, b1 + b2

    def match_once(self, node: Node, last: int | None) -> Iterator[_State]:
        if isinstance(node, Element):
            for j in self.candidates(last):
                if node.test(self.seq.anns[j]):
                    yield j, (j,), ()
        else:
            for alt in node.alternatives:
                yield from self.match_sequence(alt, last)

    def repeat(self, node: Node, last: int | None, minimum: int, maximum: int | None) -> Iterator[_State]:
        # greedy: longer repetitions are produced first
        if maximum is None or maximum > 0:
            for l1, c1, b1 in self.match_once(node, last):
                if not c1:
                    continue
                nxt_max = None if maximum is None else maximum - 1
                for l2, c2, b2 in self.repeat(node, l1, max(minimum - 1, 0), nxt_max):
                    yield l2, c1 + c2, b1 + b2
        if minimum <= 0:
            yield last, (), ()

    def match_node(self, node: Node, last: int | None) -> Iterator[_State]:
        q = node.quantifier
        if q == ONE:
            states = self.match_once(node, last)
        elif q == OPTIONAL:
            states = self.repeat(node, last, 0, 1)
        elif q == PLUS:
            states = self.repeat(node, last, 1, None)
        else:
            states = self.repeat(node, last, 0, None)
        for l, consumed, bindings in states:
            if node.label and consumed:
                bindings = bindings + ((node.label, consumed[0], consumed[-1]),)
            yield l, consumed, bindings


@dataclass(frozen=True)
class _Candidate:
    rule_index: int
    rule: Rule
    consumed: tuple[int, ...]
    span: Span
    bound: dict[str, Span]


def _best_match(rule: Rule, rule_index: int, seq: _Sequence, start: int) -> _Candidate | None:
    best = None
    for _, consumed, bindings in _Matcher(seq, start).match_sequence(rule.pattern, None):
        if not consumed:
            continue
        anns = seq.anns
        span = (anns[consumed[0]].start, anns[consumed[-1]].end)
        if best is None or (span[1] - span[0], len(consumed)) > (best.span[1] - best.span[0], len(best.consumed)):
            bound: dict[str, Span] = {}
            for label, first, last in bindings:
                s, e = anns[first].start, anns[last].end
                if label in bound:
                    s, e = min(s, bound[label][0]), max(e, bound[label][1])
                bound[label] = (s, e)
            best = _Candidate(rule_index, rule, consumed, span, bound)
    return best


def _fire(doc: Document, seq: _Sequence, cand: _Candidate) -> MatchResult:
    created = []
    for action in cand.rule.actions:
        if action.label not in cand.bound:
            continue  # label sat on an optional part that matched nothing
        s, e = cand.bound[action.label]
        created.append(doc.add(action.new_type, s, e, action.feature_map()))
    return MatchResult(
        cand.rule.name,
        cand.span,
        dict(cand.bound),
        tuple(seq.anns[i].id for i in cand.consumed),
        tuple(created),
    )


def input_sequence(g: Grammar, doc: Document, region: Span | None = None) -> list[Annotation]:
    start, end = region if region is not None else (0, len(doc.text))
    wanted = set(g.input_types)
    anns = [a for a in doc.annotations if a.type in wanted and start <= a.start and a.end <= end]
    return sorted(anns, key=Annotation.sort_key)


def run_transducer(g: Grammar, doc: Document, region: Span | None = None) -> list[MatchResult]:
    """Match ``g`` over the input annotations inside ``region`` and fire rule actions.

    Under ``appelt`` control only one match fires per position (longest span,
    then higher priority, then earlier rule) and matching resumes after it.
    Under ``all`` every rule's longest match at every position fires.
    """
    if region is not None:
        s, e = region
        if not (0 <= s <= e <= len(doc.text)):
            raise SpanError(f"region {region} outside document of length {len(doc.text)}")
    seq = _Sequence(input_sequence(g, doc, region))
    results: list[MatchResult] = []
    i = 0
    n = len(seq)
    while i < n:
        cands = [c for k, r in enumerate(g.rules) if (c := _best_match(r, k, seq, i)) is not None]
        if g.control == ALL:
            for c in cands:
                results.append(_fire(doc, seq, c))
            i += 1
            continue
        if not cands:
            i += 1
            continue
        best = max(cands, key=lambda c: (c.span[1] - c.span[0], c.rule.priority, -c.rule_index))
        results.append(_fire(doc, seq, best))
        last = best.consumed[-1]
        i = last + 1
        while i < n and seq.anns[i].start < best.span[1]:
            i += 1
    return results


__all__ = ["MatchResult", "eval_constraint", "input_sequence", "run_transducer", "APPELT", "ALL"]
