"""Existential rules over normal and arithmetic atoms, and the auxiliary vocabulary."""
from dataclasses import dataclass
from typing import NamedTuple

from elars.core import LEQ, PLUS_EQ, NullKey, atom_of
from elars.errors import DomainError

BOX_PREFIX = 'box_'
AT_PREFIX = 'at_'
TIME_INDEX_SEP = '__'


def box_name(pred):
    return BOX_PREFIX + pred


def at_name(pred):
    return AT_PREFIX + pred


def time_indexed_name(pred, point):
    return '%s%st%d' % (pred, TIME_INDEX_SEP, point)


def original_predicate(name):
    """User predicate behind an auxiliary name, or None."""
    for prefix in (BOX_PREFIX, AT_PREFIX):
        if name.startswith(prefix):
            return name[len(prefix):]
    return None


def aux_time_positions(atom):
    """Argument indexes that hold time terms, read off the predicate name."""
    arity = len(atom.args)
    if atom.pred in (LEQ, PLUS_EQ):
        return frozenset(range(arity))
    if atom.pred.startswith(BOX_PREFIX) and arity >= 2:
        return frozenset((arity - 2, arity - 1))
    if atom.pred.startswith(AT_PREFIX) and arity >= 3:
        return frozenset((arity - 3, arity - 2, arity - 1))
    return frozenset()


def _variables(atoms):
    seen = {}
    for atom in atoms:
        for v in atom.variables():
            seen.setdefault(v, None)
    return list(seen)


class NullScope(NamedTuple):
    """Skolem identity a rule mints nulls under.

    Instances produced by grounding keep the id and frontier order of the rule
    they come from, with the grounded variables fixed to their values.
    """
    rule_id: str
    frontier: tuple
    fixed: tuple = ()

    def key(self, var, binding):
        fixed = dict(self.fixed)
        values = tuple(fixed[v] if v in fixed else binding[v] for v in self.frontier)
        return NullKey(self.rule_id, var.value, values)


@dataclass(frozen=True)
class ExRule:
    id: str
    body: tuple
    head: tuple
    existentials: tuple = ()
    scope: NullScope = None

    def __post_init__(self):
        body_vars = set(self.body_variables())
        existentials = set(self.existentials)
        for v in self.head_variables():
            if v not in existentials and v not in body_vars:
                raise DomainError('rule %s: head variable %s is neither in the body nor existential'
                                  % (self.id, v.value))
        if existentials & body_vars:
            raise DomainError('rule %s: existential variable occurs in the body' % self.id)

    def body_variables(self):
        return _variables(self.body)

    def head_variables(self):
        return _variables(self.head)

    @property
    def frontier(self):
        head = set(self.head_variables())
        return [v for v in self.body_variables() if v in head]

    @property
    def null_scope(self):
        return self.scope or NullScope(self.id, tuple(self.frontier))

    def body_atoms(self):
        """Body with arithmetic as leq/plus_eq atoms, the form the chase matches."""
        return tuple(atom_of(atom) for atom in self.body)

    def predicates(self):
        return {atom_of(a).pred for a in self.body} | {a.pred for a in self.head}

    def __str__(self):
        body = ', '.join(str(a) for a in self.body)
        head = ', '.join(str(a) for a in self.head)
        if self.existentials:
            head = 'exists %s. %s' % (','.join(v.value for v in self.existentials), head)
        return '%s -> %s.' % (body, head)


@dataclass(frozen=True)
class ExBCQ:
    exist_vars: tuple
    atoms: tuple

    def body_atoms(self):
        return tuple(atom_of(atom) for atom in self.atoms)

    def __str__(self):
        body = ', '.join(str(a) for a in self.atoms)
        if self.exist_vars:
            return 'exists %s. %s' % (','.join(v.value for v in self.exist_vars), body)
        return body

