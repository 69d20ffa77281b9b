"""Window-freeing, partial and temporal grounding, and time-indexed predicates."""
import logging
from itertools import product

from elars.chase.index import FactIndex
from elars.chase.matcher import homomorphisms
from elars.core import (
    LEQ, PLUS_EQ, TOP, TOP_ATOM, ArithAtom, At, NormalAtom, Plain, Rule, Sort, Term, WinAt, WinBox,
    WinDiamond, atom_of, atom_variables, from_atom,
)
from elars.errors import DomainError
from elars.rewrite.exrules import BOX_PREFIX, ExRule, NullScope, box_name, original_predicate, time_indexed_name
from elars.rewrite.rewriter import fresh_names, rewrite_program

log = logging.getLogger(__name__)

ARITHMETIC = frozenset((LEQ, PLUS_EQ))


def _wfree_atoms(atoms, now, used):
    result = []
    for alpha in atoms:
        if isinstance(alpha, (Plain, WinBox)):
            result.append(At(now, alpha.atom))
        elif isinstance(alpha, WinAt):
            result.append(At(alpha.time, alpha.atom))
        elif isinstance(alpha, WinDiamond):
            result.append(At(Term.time_var(fresh_names(used, 'U')[0]), alpha.atom))
        else:
            result.append(alpha)
    return tuple(result)


def wfree(program):
    """Window-free version: simple and boxed atoms move to a fixed ``@N``.

    Windowed at-atoms lose their window and each diamond gets its own fresh
    time variable. When ``N`` would only occur in the head, ``@N top`` joins
    the body so that the rule stays safe.
    """
    rules = []
    for rule in program:
        used = {v.value for alpha in rule.body + rule.head for v in atom_variables(alpha)}
        now = Term.time_var(fresh_names(used, 'N')[0])
        body = _wfree_atoms(rule.body, now, used)
        head = _wfree_atoms(rule.head, now, used)
        in_body = {v for alpha in body for v in atom_variables(alpha)}
        if now not in in_body and any(now in atom_variables(alpha) for alpha in head):
            body += (At(now, TOP_ATOM),)
        rules.append(Rule(rule.id, body, head, rule.existentials))
    return program.with_rules(rules)


def _binding_key(binding, order):
    return tuple(binding[v] for v in order)


def partial_ground(rules, facts, predicates):
    """Instantiate the atoms over ``predicates`` against ``facts`` and delete them.

    Every homomorphism of those body atoms into ``facts`` yields one rule;
    rules whose such atoms have no homomorphism vanish. Grounded rules mint
    the same nulls as the rule they come from.
    """
    predicates = frozenset(predicates)
    index = FactIndex(facts)
    result = []
    seen = set()
    for rule in rules:
        if any(atom.pred in predicates for atom in rule.head):
            raise DomainError('rule %s derives a grounded predicate' % rule.id)
        body = rule.body_atoms()
        grounded = [atom for atom in body if atom.pred in predicates]
        if not grounded:
            candidates = [rule]
        else:
            kept = [atom for atom in body if atom.pred not in predicates]
            order = list(dict.fromkeys(v for atom in grounded for v in atom.variables()))
            bindings = sorted(homomorphisms(grounded, index), key=lambda b: _binding_key(b, order))
            scope = rule.null_scope
            fixed = dict(scope.fixed)
            candidates = []
            for k, binding in enumerate(bindings, 1):
                pinned = scope.fixed + tuple((v, binding[v]) for v in scope.frontier
                                             if v in binding and v not in fixed)
                candidates.append(ExRule(
                    '%s_%d' % (rule.id, k),
                    tuple(from_atom(atom.substitute(binding)) for atom in kept),
                    tuple(atom.substitute(binding) for atom in rule.head),
                    rule.existentials,
                    NullScope(scope.rule_id, scope.frontier, pinned)))
        for candidate in candidates:
            key = (candidate.body, candidate.head, candidate.existentials)
            if key not in seen:
                seen.add(key)
                result.append(candidate)
    return tuple(result)


def _true_instances(atom, points):
    """Instances true over the naturals with the variables of ``atom`` ranging over ``points``."""
    names = list(dict.fromkeys(atom.variables()))
    for values in product(points, repeat=len(names)):
        instance = atom.substitute(dict(zip(names, values)))
        if instance.evaluate():
            yield instance.as_atom()


def temporal_grounding(program, timeline):
    """Ground the time sort of the window-free rewriting over ``timeline``.

    The auxiliary window rules and the ``top`` guard of the rewriting are left
    out. Each body time variable is pinned by ``T <= T`` and the arithmetic
    is then partially grounded with its true instances over ``timeline``.
    """
    rewritten = rewrite_program(wfree(program), with_auxiliary=False, with_box_top=False).rules
    top = box_name(TOP)
    pinned = []
    for rule in rewritten:
        body = [atom for atom in rule.body if atom_of(atom).pred != top]
        times = [v for v in rule.body_variables() if v.sort == Sort.TIME]
        body.extend(ArithAtom.leq(v, v) for v in times)
        pinned.append(ExRule(rule.id, tuple(body), rule.head, rule.existentials))

    points = [Term.time(p) for p in timeline.points()]
    arithmetic = set()
    for rule in pinned:
        for atom in rule.body:
            if isinstance(atom, ArithAtom):
                arithmetic.update(_true_instances(atom, points))
    log.debug('temporal grounding over %s with %d arithmetic facts', timeline, len(arithmetic))
    return partial_ground(pinned, arithmetic, ARITHMETIC)


def _tfree_atom(atom):
    name = original_predicate(atom.pred)
    if not atom.pred.startswith(BOX_PREFIX) or atom.arity < 2:
        raise DomainError('cannot time-index %s' % (atom,))
    window, point = atom.args[-2], atom.args[-1]
    if window.is_variable or point.is_variable:
        raise DomainError('time arguments of %s must be ground' % (atom,))
    if window.value != 0:
        raise DomainError('window argument of %s must be 0' % (atom,))
    return NormalAtom(time_indexed_name(name, point.value), atom.args[:-2])


def tfree(rules):
    """Move ground time points of ``box_p(s, 0, t)`` atoms into predicate names."""
    result = []
    for rule in rules:
        body = tuple(_tfree_atom(atom_of(atom)) for atom in rule.body)
        head = tuple(_tfree_atom(atom) for atom in rule.head)
        result.append(ExRule(rule.id, body, head, rule.existentials, rule.null_scope))
    return tuple(result)


def tfree_facts(facts):
    return frozenset(_tfree_atom(fact) for fact in facts)
