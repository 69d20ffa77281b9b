"""Translation of LARS+ programs, streams, queries and timelines into existential rules.

Every user predicate ``p`` is represented by ``box_p`` (arguments of ``p``,
window size ``N``, evaluation time ``C``) and ``at_p`` (arguments of ``p``,
window size ``N``, time point ``T``, evaluation time ``C``). Auxiliary rules
give these predicates their window meaning.
"""
import logging
from dataclasses import dataclass, field
from itertools import product

from elars.core import (
    BCQ, TOP, ArithAtom, At, NormalAtom, Plain, Rule, Term, WinAt, WinBox, WinDiamond,
    atom_variables,
)
from elars.errors import DomainError
from elars.rewrite.exrules import AT_PREFIX, BOX_PREFIX, ExBCQ, ExRule, at_name, box_name, original_predicate

log = logging.getLogger(__name__)

ZERO = Term.time(0)
ONE = Term.time(1)


def fresh_names(used, base, count=1):
    """``count`` variable names starting with ``base`` that avoid ``used``."""
    names = []
    k = 0
    while len(names) < count:
        k += 1
        name = base if k == 1 and count == 1 else '%s%d' % (base, k)
        if name not in used:
            names.append(name)
            used.add(name)
    return names


def _rule_names(atoms):
    return {v.value for alpha in atoms for v in atom_variables(alpha)}


def _without_diamonds(atoms, used):
    diamonds = sum(isinstance(alpha, WinDiamond) for alpha in atoms)
    if not diamonds:
        return atoms, ()
    names = iter(fresh_names(used, 'T', diamonds))
    result = []
    added = []
    for alpha in atoms:
        if isinstance(alpha, WinDiamond):
            var = Term.time_var(next(names))
            added.append(var)
            result.append(WinAt(alpha.size, var, alpha.atom))
        else:
            result.append(alpha)
    return tuple(result), tuple(added)


def eliminate_diamond(program):
    """Replace each ``in n some b`` by ``in n at T b`` with ``T`` fresh and used only there."""
    rules = []
    for rule in program:
        used = _rule_names(rule.body + rule.head)
        body, added = _without_diamonds(rule.body, used)
        rules.append(rule if not added else Rule(rule.id, body, rule.head, rule.existentials))
    return program.with_rules(rules)


def eliminate_diamond_query(query):
    used = _rule_names(query.atoms) | {v.value for v in query.exist_vars}
    atoms, added = _without_diamonds(query.atoms, used)
    if not added:
        return query
    return BCQ(query.exist_vars + added, atoms)


class _AtomRewriter(object):
    """Maps LARS atoms of one rule onto the auxiliary vocabulary, sharing one ``C``."""

    def __init__(self, current):
        self.current = current

    def __call__(self, alpha):
        if isinstance(alpha, ArithAtom):
            return alpha
        atom = alpha.atom
        if isinstance(alpha, Plain):
            return NormalAtom(box_name(atom.pred), atom.args + (ZERO, self.current))
        if isinstance(alpha, At):
            return NormalAtom(box_name(atom.pred), atom.args + (ZERO, alpha.time))
        if isinstance(alpha, WinBox):
            return NormalAtom(box_name(atom.pred), atom.args + (Term.time(alpha.size), self.current))
        if isinstance(alpha, WinAt):
            return NormalAtom(at_name(atom.pred), atom.args + (Term.time(alpha.size), alpha.time, self.current))
        raise DomainError('eliminate diamonds before rewriting, found %s' % (alpha,))


def _box_top(current):
    return NormalAtom(box_name(TOP), (ZERO, current))


def rewrite_rule(rule, with_box_top=True):
    used = _rule_names(rule.body + rule.head)
    current = Term.time_var(fresh_names(used, 'C')[0])
    rewrite = _AtomRewriter(current)
    body = tuple(rewrite(alpha) for alpha in rule.body)
    head = tuple(rewrite(alpha) for alpha in rule.head)
    if with_box_top and not any(current in atom.args for atom in body):
        body += (_box_top(current),)
    return ExRule(rule.id, body, head, rule.existentials)


def _vars(names, maker=Term.var):
    return tuple(maker(name) for name in names)


def auxiliary_rules(pred, arity, window):
    """Window axioms for ``pred``; the first rule is the ``top`` seed and only exists for ``top``."""
    xs = _vars(['X%d' % i for i in range(1, arity + 1)])
    n, n1, c, c1, t, i = _vars(['N', 'N1', 'C', 'C1', 'T', 'I'], Term.time_var)
    m = Term.time(window)
    box, at = box_name(pred), at_name(pred)

    def box_(size, now):
        return NormalAtom(box, xs + (size, now))

    rules = []
    if pred == TOP:
        rules.append(ExRule('aux1_%s' % pred, (ArithAtom.leq(ZERO, c),), (box_(ZERO, c),)))
    rules.extend([
        ExRule('aux2_%s' % pred, (box_(ZERO, ZERO),), (box_(m, ZERO),)),
        ExRule('aux3_%s' % pred, (box_(n1, c), ArithAtom.plus(n1, n, ONE)), (box_(n, c),)),
        ExRule('aux4_%s' % pred,
               (box_(n, c), ArithAtom.plus(n1, n, ONE), ArithAtom.leq(n1, m),
                ArithAtom.plus(c1, c, ONE), box_(ZERO, c1)),
               (box_(n1, c1),)),
        ExRule('aux5_%s' % pred, (box_(ZERO, c),), (NormalAtom(at, xs + (ZERO, c, c)),)),
        ExRule('aux6_%s' % pred,
               (NormalAtom(at, xs + (n, t, c)), ArithAtom.leq(n1, m), ArithAtom.plus(n1, n, ONE),
                ArithAtom.leq(i, ONE), ArithAtom.plus(c1, c, i)),
               (NormalAtom(at, xs + (n1, t, c1)),)),
    ])
    return rules


@dataclass(frozen=True)
class RewriteOutput:
    rules: tuple
    max_window: int
    predicate_map: dict = field(default_factory=dict, compare=False)

    @property
    def program_rules(self):
        return tuple(r for r in self.rules if not r.id.startswith('aux'))

    @property
    def auxiliary(self):
        return tuple(r for r in self.rules if r.id.startswith('aux'))


def _arities(program, predicates):
    arities = {}
    for rule in program:
        for alpha in rule.body + rule.head:
            if not isinstance(alpha, ArithAtom) and alpha.atom.pred != TOP:
                arities.setdefault(alpha.atom.pred, alpha.atom.arity)
    for name, sig in program.signature.items():
        arities.setdefault(name, sig.arity)
    for name, arity in (predicates or {}).items():
        arities.setdefault(name, arity)
    return arities


def rewrite_program(program, max_window=0, predicates=None, with_auxiliary=True, with_box_top=True):
    """Rewrite a diamond-free program.

    ``predicates`` (name -> arity) adds predicates known from the stream or
    a query, and ``max_window`` raises the window bound the auxiliary rules
    are instantiated with.
    """
    window = max(program.max_window(), max_window)
    rules = [rewrite_rule(rule, with_box_top) for rule in program]
    arities = _arities(program, predicates)
    predicate_map = {name: (box_name(name), at_name(name)) for name in [TOP] + sorted(arities)}
    if with_auxiliary:
        rules.extend(auxiliary_rules(TOP, 0, window))
        for name in sorted(arities):
            rules.extend(auxiliary_rules(name, arities[name], window))
    log.debug('rewrote %d rules into %d existential rules, window bound %d',
              len(program), len(rules), window)
    return RewriteOutput(tuple(rules), window, predicate_map)


def rewrite_stream(stream):
    return frozenset(NormalAtom(box_name(fact.pred), fact.args + (ZERO, Term.time(point)))
                     for point, fact in stream.facts())


def rewrite_query(query, t):
    """Existential-rule BCQ asking ``query`` at time point ``t``."""
    query = eliminate_diamond_query(query)
    used = _rule_names(query.atoms) | {v.value for v in query.exist_vars}
    current = Term.time_var(fresh_names(used, 'C')[0])
    rewrite = _AtomRewriter(current)
    point = Term.time(t)
    atoms = tuple(rewrite(alpha) for alpha in query.atoms)
    atoms += (ArithAtom.leq(current, point), ArithAtom.leq(point, current))
    return ExBCQ(tuple(query.exist_vars) + (current,), atoms)


def _arith_atoms(sources):
    for atoms in sources:
        for atom in atoms:
            if isinstance(atom, ArithAtom):
                yield atom


def rewrite_timeline(timeline, rules=(), queries=()):
    """Ground arithmetic for ``[0, h]``: all of ``leq`` and ``plus_eq`` over the timeline.

    Arithmetic atoms of ``rules`` and ``queries`` naming constants beyond ``h``
    also get their true instances, so a literal like ``I <= 1`` still has
    matches on a one-point timeline.
    """
    h = timeline.end
    points = [Term.time(p) for p in range(h + 1)]
    facts = set()
    for a in range(h + 1):
        for b in range(a, h + 1):
            facts.add(ArithAtom.leq(points[a], points[b]).as_atom())
    for b in range(h + 1):
        for c in range(h + 1 - b):
            facts.add(ArithAtom.plus(points[b + c], points[b], points[c]).as_atom())

    sources = [r.body for r in rules] + [q.atoms for q in queries]
    for atom in _arith_atoms(sources):
        if not any(not t.is_variable and t.value > h for t in atom.args):
            continue
        names = list(dict.fromkeys(atom.variables()))
        for values in product(points, repeat=len(names)):
            instance = atom.substitute(dict(zip(names, values)))
            if instance.evaluate():
                facts.add(instance.as_atom())
    return frozenset(facts)


def _demands(atoms, boxes, ats):
    for atom in atoms:
        if isinstance(atom, ArithAtom):
            continue
        pred = original_predicate(atom.pred)
        if atom.pred.startswith(AT_PREFIX):
            ats.add(pred)
        elif atom.pred.startswith(BOX_PREFIX) and atom.args[-2] != ZERO:
            boxes.add(pred)


def prune_auxiliary(output, demands=()):
    """Drop window axioms whose conclusions nothing reads.

    Rules 2 to 4 of ``p`` stay when a rule body or a demanded atom reads
    ``box_p`` with a window other than 0; rules 5 and 6 stay when ``at_p`` is
    read. The ``top`` seed always stays.
    """
    boxes, ats = set(), set()
    for rule in output.program_rules:
        _demands(rule.body, boxes, ats)
    _demands(demands, boxes, ats)

    kept = list(output.program_rules)
    for rule in output.auxiliary:
        kind, _, pred = rule.id.partition('_')
        if kind == 'aux1' or (kind in ('aux2', 'aux3', 'aux4') and pred in boxes) \
                or (kind in ('aux5', 'aux6') and pred in ats):
            kept.append(rule)
    log.debug('kept %d of %d auxiliary rules', len(kept) - len(output.program_rules), len(output.auxiliary))
    return RewriteOutput(tuple(kept), output.max_window, output.predicate_map)
