"""Timelines and streams."""
from __future__ import annotations

from dataclasses import dataclass, field

from elars.core.terms import Sort
from elars.errors import DomainError

EMPTY = frozenset()


@dataclass(frozen=True, order=True)
class Timeline:
    """Inclusive interval of time points."""
    start: int
    end: int

    def __contains__(self, point):
        return isinstance(point, int) and self.start <= point <= self.end

    def __len__(self):
        return max(0, self.end - self.start + 1)

    def __iter__(self):
        return iter(range(self.start, self.end + 1))

    def points(self):
        return range(self.start, self.end + 1)

    def issubset(self, other):
        return other.start <= self.start and self.end <= other.end

    def __str__(self):
        return '%d..%d' % (self.start, self.end)


@dataclass(frozen=True)
class Stream:
    """A timeline ``[0, h]`` with the ground facts holding at each of its points."""
    timeline: Timeline
    eval: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.timeline.start != 0:
            raise DomainError('stream timelines start at 0, got %s' % (self.timeline,))
        cleaned = {}
        for point, facts in self.eval.items():
            if not facts:
                continue
            if point not in self.timeline:
                raise DomainError('facts at %r lie outside timeline %s' % (point, self.timeline))
            for fact in facts:
                if not fact.is_ground:
                    raise DomainError('stream fact %s is not ground' % (fact,))
            cleaned[point] = frozenset(facts)
        object.__setattr__(self, 'eval', cleaned)

    @property
    def horizon(self):
        return self.timeline.end

    def at(self, point):
        return self.eval.get(point, EMPTY)

    def items(self):
        return sorted(self.eval.items())

    def facts(self):
        for point, facts in self.items():
            for fact in facts:
                yield point, fact

    def __eq__(self, other):
        if not isinstance(other, Stream):
            return NotImplemented
        return self.timeline == other.timeline and self.eval == other.eval

    def __hash__(self):
        return hash((self.timeline, frozenset(self.eval.items())))

    def __len__(self):
        return sum(len(facts) for facts in self.eval.values())

    def abstract_terms(self):
        terms = set()
        for facts in self.eval.values():
            for fact in facts:
                terms.update(t for t in fact.args if t.sort == Sort.ABSTRACT)
        return terms

    def predicates(self):
        seen = {}
        for _, fact in self.facts():
            seen.setdefault(fact.pred, fact.arity)
        return seen

    def issubset(self, other):
        """Pointwise containment on this stream's own timeline."""
        if not self.timeline.issubset(other.timeline):
            return False
        return all(facts <= other.at(point) for point, facts in self.eval.items())

    def restricted(self, lo, hi):
        """Facts at points ``lo..hi`` re-indexed so that ``lo`` becomes 0."""
        lo = max(lo, 0)
        hi = min(hi, self.horizon)
        return Stream(Timeline(0, hi - lo),
                      {p - lo: f for p, f in self.eval.items() if lo <= p <= hi})

    def with_facts(self, additions):
        """New stream with ``additions`` (point -> facts) merged in."""
        merged = dict(self.eval)
        for point, facts in additions.items():
            merged[point] = merged.get(point, EMPTY) | frozenset(facts)
        return Stream(self.timeline, merged)
