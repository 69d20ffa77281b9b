"""Semi-oblivious (skolem) chase in breadth-first rounds."""
import logging
from dataclasses import dataclass

from elars.chase.index import FactIndex
from elars.chase.matcher import delta_homomorphisms, homomorphisms
from elars.core import Term
from elars.errors import DomainError

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Saturated:
    facts: frozenset
    rounds: int
    nulls: int

    saturated = True


@dataclass(frozen=True)
class FuelExhausted:
    facts: frozenset
    fuel: int
    nulls: int

    saturated = False

    @property
    def rounds(self):
        return self.fuel


class ChaseState(object):
    """Facts derived so far plus the registry of named nulls."""

    def __init__(self, facts=()):
        self.index = FactIndex(facts)
        self.nulls = {}
        self.rounds = 0

    def null(self, key):
        term = self.nulls.get(key)
        if term is None:
            term = self.nulls[key] = Term.null(key)
        return term

    def extend(self, rule, binding):
        """``binding`` extended with the named nulls of ``rule``'s existential variables."""
        if not rule.existentials:
            return binding
        extended = dict(binding)
        scope = rule.null_scope
        for var in rule.existentials:
            extended[var] = self.null(scope.key(var, binding))
        return extended

    def head_facts(self, rule, binding):
        full = self.extend(rule, binding)
        return [atom.substitute(full) for atom in rule.head]


def _is_active(state, rule, binding):
    return any(fact not in state.index for fact in state.head_facts(rule, binding))


def active_matches(rule, facts, state=None):
    """Body matches of ``rule`` whose skolemised head is not yet contained in ``facts``."""
    state = state or ChaseState(facts)
    return [binding for binding in homomorphisms(rule.body_atoms(), state.index)
            if _is_active(state, rule, binding)]


def _check_input(facts):
    for fact in facts:
        if any(term.is_null or term.is_variable for term in fact.args):
            raise DomainError('chase input fact %s must be ground and null-free' % (fact,))


def chase(rules, facts, fuel=10000, trace=None):
    """Run the skolem chase of ``rules`` from ``facts``.

    Each round adds the heads of all active matches against the facts of the
    previous round; a round only has to look at matches touching a fact that
    the previous round added. Returns :class:`Saturated` as soon as a round
    adds nothing, and :class:`FuelExhausted` (holding the facts after ``fuel``
    rounds) if round ``fuel + 1`` would still add something. ``fuel=None``
    runs until saturation. ``trace`` receives one record per productive round.
    """
    if fuel is not None and fuel <= 0:
        raise DomainError('fuel must be positive, got %r' % (fuel,))
    facts = frozenset(facts)
    _check_input(facts)
    rules = tuple(rules)
    state = ChaseState(facts)
    delta = None

    while True:
        new_facts = set()
        nulls_before = len(state.nulls)
        for rule in rules:
            body = rule.body_atoms()
            if delta is None:
                matches = homomorphisms(body, state.index)
            elif not body:
                continue
            else:
                matches = delta_homomorphisms(body, state.index, delta)
            for binding in matches:
                for fact in state.head_facts(rule, binding):
                    if fact not in state.index:
                        new_facts.add(fact)

        if not new_facts:
            log.debug('chase saturated after %d rounds', state.rounds)
            return Saturated(frozenset(state.index.facts), state.rounds, len(state.nulls))
        if fuel is not None and state.rounds >= fuel:
            log.warning('chase stopped after %d rounds with %d facts', fuel, len(state.index))
            return FuelExhausted(frozenset(state.index.facts), fuel, nulls_before)

        state.rounds += 1
        state.index.update(new_facts)
        delta = FactIndex(new_facts)
        if trace is not None:
            trace({'round': state.rounds, 'newFacts': len(new_facts),
                   'newNulls': len(state.nulls) - nulls_before})
        log.debug('round %d added %d facts', state.rounds, len(new_facts))
