from elars.acyclicity.graph import is_weakly_acyclic
from elars.core import TOP_ATOM, ArithAtom, inner_atom
from elars.rewrite.exrules import ExRule


def strip(program):
    """Drop arithmetic, windows and temporal operators; empty bodies become ``top``."""
    rules = []
    for rule in program:
        body = tuple(inner_atom(alpha) for alpha in rule.body if not isinstance(alpha, ArithAtom))
        head = tuple(inner_atom(alpha) for alpha in rule.head)
        rules.append(ExRule(rule.id, body or (TOP_ATOM,), head, rule.existentials))
    return tuple(rules)


def is_lwa(program):
    return is_weakly_acyclic(strip(program))
