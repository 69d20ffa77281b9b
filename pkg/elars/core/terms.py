"""Terms and atoms of the two-sorted rule language."""
from __future__ import annotations

import hashlib
from enum import Enum, IntEnum
from typing import NamedTuple

TOP = 'top'
LEQ = 'leq'
PLUS_EQ = 'plus_eq'


class Sort(Enum):
    ABSTRACT = 'abstract'
    TIME = 'time'


class TermKind(IntEnum):
    ABSTRACT_VAR = 0
    TIME_VAR = 1
    CONSTANT = 2
    TIME_POINT = 3
    NULL = 4


_VARIABLES = (TermKind.ABSTRACT_VAR, TermKind.TIME_VAR)
_TIME_KINDS = (TermKind.TIME_VAR, TermKind.TIME_POINT)


class NullKey(NamedTuple):
    """Identity of a labelled null: rule, existential variable, frontier binding."""
    rule_id: str
    var: str
    frontier: tuple

    def digest(self):
        text = ','.join(str(t) for t in self.frontier)
        return hashlib.sha1(text.encode('utf-8')).hexdigest()[:10]


class Term(NamedTuple):
    kind: TermKind
    value: object

    @classmethod
    def var(cls, name):
        return cls(TermKind.ABSTRACT_VAR, name)

    @classmethod
    def time_var(cls, name):
        return cls(TermKind.TIME_VAR, name)

    @classmethod
    def const(cls, name):
        return cls(TermKind.CONSTANT, str(name))

    @classmethod
    def time(cls, point):
        if point < 0:
            raise ValueError('time points are naturals, got %r' % (point,))
        return cls(TermKind.TIME_POINT, int(point))

    @classmethod
    def null(cls, key):
        return cls(TermKind.NULL, key)

    @property
    def sort(self):
        return Sort.TIME if self.kind in _TIME_KINDS else Sort.ABSTRACT

    @property
    def is_variable(self):
        return self.kind in _VARIABLES

    @property
    def is_null(self):
        return self.kind == TermKind.NULL

    def __str__(self):
        if self.kind == TermKind.NULL:
            key = self.value
            return '_:r%s_%s_%s' % (key.rule_id, key.var, key.digest())
        return str(self.value)

    def __repr__(self):
        return 'Term(%s, %r)' % (self.kind.name, self.value)


def substitute(term, binding):
    if term.kind in _VARIABLES:
        return binding.get(term, term)
    return term


class PredicateSig(NamedTuple):
    name: str
    sorts: tuple

    @property
    def arity(self):
        return len(self.sorts)

    @property
    def is_simple(self):
        return Sort.TIME not in self.sorts


class NormalAtom(NamedTuple):
    pred: str
    args: tuple = ()

    @property
    def arity(self):
        return len(self.args)

    @property
    def is_ground(self):
        return not any(t.is_variable for t in self.args)

    def variables(self):
        return [t for t in self.args if t.is_variable]

    def substitute(self, binding):
        return NormalAtom(self.pred, tuple(substitute(t, binding) for t in self.args))

    def __str__(self):
        if not self.args:
            return self.pred
        return '%s(%s)' % (self.pred, ','.join(str(t) for t in self.args))


TOP_ATOM = NormalAtom(TOP, ())


class ArithOp(Enum):
    LEQ = LEQ
    PLUS = PLUS_EQ


class ArithAtom(NamedTuple):
    """``t1 <= t2`` (LEQ, two args) or ``t1 = t2 + t3`` (PLUS, three args)."""
    op: ArithOp
    args: tuple

    @classmethod
    def leq(cls, left, right):
        return cls(ArithOp.LEQ, (left, right))

    @classmethod
    def plus(cls, total, left, right):
        return cls(ArithOp.PLUS, (total, left, right))

    @property
    def is_ground(self):
        return not any(t.is_variable for t in self.args)

    def variables(self):
        return [t for t in self.args if t.is_variable]

    def substitute(self, binding):
        return ArithAtom(self.op, tuple(substitute(t, binding) for t in self.args))

    def evaluate(self):
        """Truth over the naturals; the atom must be ground."""
        values = [t.value for t in self.args]
        if self.op == ArithOp.LEQ:
            return values[0] <= values[1]
        return values[0] == values[1] + values[2]

    def as_atom(self):
        """The atom over ``leq``/``plus_eq`` that stands for this relation in rule sets."""
        return NormalAtom(self.op.value, self.args)

    def __str__(self):
        if self.op == ArithOp.LEQ:
            return '%s <= %s' % self.args
        return '%s = %s + %s' % self.args


def atom_of(atom):
    """Normal-atom view of a rule-set atom (arithmetic becomes leq/plus_eq)."""
    return atom.as_atom() if isinstance(atom, ArithAtom) else atom


def from_atom(atom):
    """Inverse of :func:`atom_of` for leq/plus_eq atoms."""
    if atom.pred == LEQ and atom.arity == 2:
        return ArithAtom(ArithOp.LEQ, atom.args)
    if atom.pred == PLUS_EQ and atom.arity == 3:
        return ArithAtom(ArithOp.PLUS, atom.args)
    return atom


def unify(pattern, fact, binding):
    """Extend ``binding`` so that ``pattern`` maps onto the ground ``fact``.

    Returns the extended binding (``binding`` itself when nothing new was bound)
    or None when the atoms clash. Variables only bind terms of their own sort.
    """
    if pattern.pred != fact.pred or len(pattern.args) != len(fact.args):
        return None
    extended = None
    for left, right in zip(pattern.args, fact.args):
        if left.is_variable:
            current = binding if extended is None else extended
            bound = current.get(left)
            if bound is None:
                if left.sort != right.sort:
                    return None
                if extended is None:
                    extended = dict(binding)
                extended[left] = right
            elif bound != right:
                return None
        elif left != right:
            return None
    return binding if extended is None else extended
