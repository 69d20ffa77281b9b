"""Homomorphisms from atom conjunctions into indexed fact sets."""
from elars.chase.index import FactIndex


def _bind(atom, fact, binding):
    """``binding`` extended over the free variables of ``atom``, or None on a clash.

    ``fact`` comes from an index lookup, so constants and bound variables
    already agree with it.
    """
    extended = binding
    for term, value in zip(atom.args, fact.args):
        if not term.is_variable:
            continue
        known = extended.get(term)
        if known is None:
            if term.sort != value.sort:
                return None
            if extended is binding:
                extended = dict(binding)
            extended[term] = value
        elif known != value:
            return None
    return extended


def _search(atoms, index, binding, recent):
    """Extensions of ``binding`` over ``atoms``, pairs of an atom and a flag.

    A flagged atom may not be mapped onto a fact of ``recent``.
    """
    if not atoms:
        yield binding
        return
    chosen, found = None, None
    for i, (atom, _) in enumerate(atoms):
        candidates = index.candidates(atom, binding)
        if found is None or len(candidates) < len(found):
            chosen, found = i, candidates
            if not found:
                return
            if len(found) == 1:
                break
    atom, old_only = atoms[chosen]
    rest = atoms[:chosen] + atoms[chosen + 1:]
    for fact in found:
        if old_only and fact in recent:
            continue
        extended = _bind(atom, fact, binding)
        if extended is not None:
            yield from _search(rest, index, extended, recent)


def homomorphisms(atoms, index, binding=None):
    """All extensions of ``binding`` mapping ``atoms`` into ``index``.

    The atom with the fewest candidate facts under the current binding is
    matched next.
    """
    return _search(tuple((atom, False) for atom in atoms), index, dict(binding or {}), None)


def delta_homomorphisms(atoms, index, delta):
    """Homomorphisms that map at least one atom onto a fact of ``delta``.

    Each one is found once: from the first atom that lands in ``delta``,
    with the atoms before it kept out of ``delta``.
    """
    atoms = tuple(atoms)
    recent = delta.facts
    for i, atom in enumerate(atoms):
        rest = tuple((a, True) for a in atoms[:i]) + tuple((a, False) for a in atoms[i + 1:])
        for fact in delta.candidates(atom, {}):
            start = _bind(atom, fact, {})
            if start is not None:
                yield from _search(rest, index, start, recent)


def answer_bcq_on_facts(facts, query):
    """True iff the query's atoms map homomorphically into ``facts``."""
    index = facts if isinstance(facts, FactIndex) else FactIndex(facts)
    return next(homomorphisms(query.body_atoms(), index), None) is not None
