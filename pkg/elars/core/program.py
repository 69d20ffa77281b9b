"""LARS+ atoms, rules, programs and queries."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from elars.core.terms import ArithAtom, NormalAtom, Term, TOP, substitute


@dataclass(frozen=True)
class Plain:
    atom: NormalAtom

    def __str__(self):
        return str(self.atom)


@dataclass(frozen=True)
class At:
    time: Term
    atom: NormalAtom

    def __str__(self):
        return '@%s %s' % (self.time, self.atom)


@dataclass(frozen=True)
class WinAt:
    size: int
    time: Term
    atom: NormalAtom

    def __str__(self):
        return 'in %d at %s %s' % (self.size, self.time, self.atom)


@dataclass(frozen=True)
class WinDiamond:
    size: int
    atom: NormalAtom

    def __str__(self):
        return 'in %d some %s' % (self.size, self.atom)


@dataclass(frozen=True)
class WinBox:
    size: int
    atom: NormalAtom

    def __str__(self):
        return 'in %d always %s' % (self.size, self.atom)


LarsAtom = Union[ArithAtom, Plain, At, WinAt, WinDiamond, WinBox]
HeadAtom = Union[Plain, At]
WINDOWED = (WinAt, WinDiamond, WinBox)


def inner_atom(alpha):
    """The normal atom under the operators of ``alpha`` (None for arithmetic)."""
    if isinstance(alpha, ArithAtom):
        return None
    return alpha.atom


def atom_variables(alpha):
    """Variables of a LARS atom in order of occurrence, time term first."""
    if isinstance(alpha, ArithAtom):
        return alpha.variables()
    found = []
    if isinstance(alpha, (At, WinAt)) and alpha.time.is_variable:
        found.append(alpha.time)
    found.extend(alpha.atom.variables())
    return found


def substitute_atom(alpha, binding):
    if isinstance(alpha, ArithAtom):
        return alpha.substitute(binding)
    atom = alpha.atom.substitute(binding)
    if isinstance(alpha, Plain):
        return Plain(atom)
    if isinstance(alpha, At):
        return At(substitute(alpha.time, binding), atom)
    if isinstance(alpha, WinAt):
        return WinAt(alpha.size, substitute(alpha.time, binding), atom)
    return type(alpha)(alpha.size, atom)


def collect_variables(atoms):
    seen = {}
    for alpha in atoms:
        for v in atom_variables(alpha):
            seen.setdefault(v, None)
    return list(seen)


@dataclass(frozen=True)
class Rule:
    id: str
    body: tuple
    head: tuple
    existentials: tuple = ()

    def body_variables(self):
        return collect_variables(self.body)

    def head_variables(self):
        return collect_variables(self.head)

    @property
    def frontier(self):
        existentials = set(self.existentials)
        return [v for v in self.head_variables() if v not in existentials]

    def windows(self):
        return [alpha.size for alpha in self.body + self.head if isinstance(alpha, WINDOWED)]

    def __str__(self):
        body = ', '.join(str(a) for a in self.body)
        head = ', '.join(str(a) for a in self.head)
        if self.existentials:
            head = 'exists %s. %s' % (','.join(str(v) for v in self.existentials), head)
        return '%s -> %s.' % (body, head)


@dataclass(frozen=True)
class Program:
    rules: tuple = ()
    signature: dict = field(default_factory=dict, compare=False)

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)

    def predicates(self):
        names = dict.fromkeys(self.signature)
        for rule in self.rules:
            for alpha in rule.body + rule.head:
                atom = inner_atom(alpha)
                if atom is not None and atom.pred != TOP:
                    names.setdefault(atom.pred, None)
        return list(names)

    def max_window(self):
        return max((n for r in self.rules for n in r.windows()), default=0)

    def with_rules(self, rules):
        return Program(tuple(rules), dict(self.signature))


@dataclass(frozen=True)
class BCQ:
    """Boolean conjunctive query: every variable is existentially closed."""
    exist_vars: tuple
    atoms: tuple

    def windows(self):
        return [alpha.size for alpha in self.atoms if isinstance(alpha, WINDOWED)]

    def predicates(self):
        return [a.atom.pred for a in self.atoms
                if not isinstance(a, ArithAtom) and a.atom.pred != TOP]

    def __str__(self):
        body = ', '.join(str(a) for a in self.atoms) or 'top'
        if self.exist_vars:
            return 'exists %s. %s' % (','.join(str(v) for v in self.exist_vars), body)
        return body
