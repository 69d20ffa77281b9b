"""Direct evaluation of LARS+ atoms, rules and queries over streams.

Windows follow the reading ``[max(0, t - n), t]`` for box, diamond and the
range test of windowed at-atoms.
"""
import logging
from itertools import product

from elars.core.program import At, Plain, WinAt, WinBox, WinDiamond, atom_variables, substitute_atom
from elars.core.stream import Stream, Timeline
from elars.core.terms import ArithAtom, Sort, TOP, Term, substitute, unify
from elars.errors import DomainError

log = logging.getLogger(__name__)


def _check_point(stream, t):
    if t not in stream.timeline:
        raise DomainError('time point %r is outside timeline %s' % (t, stream.timeline))


def window_points(t, size):
    return range(max(0, t - size), t + 1)


def make_window(stream, size, t):
    """The window of ``size`` at ``t``: timeline ``[0, t]``, facts kept on ``[max(0, t - size), t]``."""
    _check_point(stream, t)
    lo = max(0, t - size)
    return Stream(Timeline(0, t), {p: f for p, f in stream.eval.items() if lo <= p <= t})


def _holds_at(stream, point, atom):
    if atom.pred == TOP:
        return point in stream.timeline
    return atom in stream.at(point)


def holds(stream, t, alpha):
    """Truth of the ground LARS atom ``alpha`` at ``t``."""
    _check_point(stream, t)
    if atom_variables(alpha):
        raise DomainError('cannot evaluate non-ground atom %s' % (alpha,))
    if isinstance(alpha, ArithAtom):
        return alpha.evaluate()
    if isinstance(alpha, Plain):
        return _holds_at(stream, t, alpha.atom)
    if isinstance(alpha, At):
        return _holds_at(stream, alpha.time.value, alpha.atom)
    if isinstance(alpha, WinAt):
        point = alpha.time.value
        return max(0, t - alpha.size) <= point <= t and _holds_at(stream, point, alpha.atom)
    if isinstance(alpha, WinBox):
        return all(_holds_at(stream, p, alpha.atom) for p in window_points(t, alpha.size))
    if isinstance(alpha, WinDiamond):
        return any(_holds_at(stream, p, alpha.atom) for p in window_points(t, alpha.size))
    raise DomainError('unknown atom %r' % (alpha,))


def _sources(stream, t, alpha):
    """Facts an atom with a fixed time term can be matched against."""
    if isinstance(alpha, Plain) or isinstance(alpha, WinBox):
        return stream.at(t)
    if isinstance(alpha, At):
        return stream.at(alpha.time.value)
    if isinstance(alpha, WinAt):
        point = alpha.time.value
        return stream.at(point) if max(0, t - alpha.size) <= point <= t else ()
    found = set()
    for p in window_points(t, alpha.size):
        found.update(stream.at(p))
    return found


def _admissible(binding, extended, universe):
    if universe is None or extended is binding:
        return True
    return all(value in universe for var, value in extended.items()
               if var.sort == Sort.ABSTRACT and var not in binding)


def _extensions(stream, t, alpha, binding, universe):
    grounded = substitute_atom(alpha, binding)
    free = atom_variables(grounded)
    if not free:
        if holds(stream, t, grounded):
            yield binding
        return

    if isinstance(grounded, ArithAtom):
        names = list(dict.fromkeys(free))
        for values in product(stream.timeline.points(), repeat=len(names)):
            extended = dict(binding)
            extended.update(zip(names, (Term.time(v) for v in values)))
            if grounded.substitute(extended).evaluate():
                yield extended
        return

    if isinstance(grounded, (At, WinAt)) and grounded.time.is_variable:
        if isinstance(grounded, At):
            points = stream.timeline.points()
        else:
            points = window_points(t, grounded.size)
        for point in points:
            extended = dict(binding)
            extended[grounded.time] = Term.time(point)
            yield from _extensions(stream, t, alpha, extended, universe)
        return

    seen = set()
    for fact in _sources(stream, t, grounded):
        extended = unify(grounded.atom, fact, binding)
        if extended is None or not _admissible(binding, extended, universe):
            continue
        key = frozenset(extended.items())
        if key in seen:
            continue
        seen.add(key)
        if holds(stream, t, substitute_atom(alpha, extended)):
            yield extended


def _search(stream, t, atoms, index, binding, universe):
    if index == len(atoms):
        yield binding
        return
    for extended in _extensions(stream, t, atoms[index], binding, universe):
        yield from _search(stream, t, atoms, index + 1, extended, universe)


def iter_matches(stream, t, atoms, universe=None, binding=None):
    """Lazily enumerate the T-matches of ``atoms`` at ``t`` extending ``binding``.

    Arithmetic atoms are tried last so that their time variables are mostly
    bound by the time they are reached. ``universe`` restricts abstract
    variables; None leaves them free to bind any term of the stream.
    """
    _check_point(stream, t)
    ordered = sorted(atoms, key=lambda alpha: isinstance(alpha, ArithAtom))
    return _search(stream, t, ordered, 0, dict(binding or {}), universe)


def find_matches(stream, t, atoms, universe=None):
    return list(iter_matches(stream, t, atoms, universe))


def head_out_of_scope(rule, timeline):
    """True when a head atom names a ground time point outside ``timeline``."""
    for alpha in rule.head:
        if isinstance(alpha, At) and not alpha.time.is_variable and alpha.time.value not in timeline:
            return True
    return False


def satisfies_rule(stream, rule):
    if head_out_of_scope(rule, stream.timeline):
        return True
    universe = stream.abstract_terms()
    for t in stream.timeline:
        for match in iter_matches(stream, t, rule.body, universe):
            if next(iter_matches(stream, t, rule.head, universe, match), None) is None:
                log.debug('rule %s violated at %d by %s', rule.id, t, match)
                return False
    return True


def is_model(stream, program, data):
    if not data.issubset(stream):
        return False
    return all(satisfies_rule(stream, rule) for rule in program)


def bcq_holds(stream, t, query):
    _check_point(stream, t)
    universe = stream.abstract_terms()
    return next(iter_matches(stream, t, query.atoms, universe), None) is not None


def _head_target(alpha, match, t):
    atom = alpha.atom.substitute(match)
    if isinstance(alpha, At):
        return substitute(alpha.time, match).value, atom
    return t, atom


def least_model(program, data):
    """Least stream over ``data``'s timeline containing ``data`` and satisfying ``program``.

    Only existential-free programs have one; rules whose head lies out of
    scope are satisfied vacuously and never fire.
    """
    for rule in program:
        if rule.existentials:
            raise DomainError('rule %s has existential variables; no least model' % rule.id)

    timeline = data.timeline
    rules = [rule for rule in program if not head_out_of_scope(rule, timeline)]
    facts = {p: set(f) for p, f in data.eval.items()}
    rounds = 0
    changed = True
    while changed:
        changed = False
        rounds += 1
        current = Stream(timeline, facts)
        for rule in rules:
            for t in timeline:
                for match in iter_matches(current, t, rule.body):
                    for alpha in rule.head:
                        point, atom = _head_target(alpha, match, t)
                        if atom.pred == TOP:
                            continue
                        bucket = facts.setdefault(point, set())
                        if atom not in bucket:
                            bucket.add(atom)
                            changed = True
    log.debug('least model reached after %d rounds', rounds)
    return Stream(timeline, facts)
