"""Answer-preserving program transformations applied before rewriting."""
import logging
from dataclasses import replace

from elars.core import (
    BCQ, TOP_ATOM, WINDOWED, At, NormalAtom, Plain, Rule, Term, WinAt, atom_variables, head_out_of_scope,
)
from elars.rewrite.rewriter import fresh_names

log = logging.getLogger(__name__)

TIME_Q = 'time_q'
YES = 'yes'


def _clip(atoms, bound):
    return tuple(replace(alpha, size=bound) if isinstance(alpha, WINDOWED) and alpha.size > bound else alpha
                 for alpha in atoms)


def clip_windows(program, timeline):
    """Shrink every window larger than the timeline to ``|T| - 1``."""
    bound = len(timeline) - 1
    return program.with_rules(Rule(r.id, _clip(r.body, bound), _clip(r.head, bound), r.existentials)
                              for r in program)


def clip_query(query, timeline):
    return BCQ(query.exist_vars, _clip(query.atoms, len(timeline) - 1))


def drop_out_of_scope(program, timeline):
    """Remove rules whose head names a time point outside ``timeline``; every stream on it satisfies them."""
    kept = [rule for rule in program if not head_out_of_scope(rule, timeline)]
    if len(kept) < len(program):
        log.warning('dropped %d rules with heads outside %s', len(program) - len(kept), timeline)
    return program.with_rules(kept)


def _fresh_predicate(base, taken):
    name = base
    k = 1
    while name in taken:
        k += 1
        name = '%s%d' % (base, k)
    return name


def compile_query(program, data, t, query):
    """Turn asking ``query`` at ``t`` into asking a fresh nullary atom at 0.

    Returns the extended program, the extended stream and the atom to ask.
    """
    taken = set(program.predicates()) | set(data.predicates())
    time_q = NormalAtom(_fresh_predicate(TIME_Q, taken))
    yes = NormalAtom(_fresh_predicate(YES, taken | {time_q.pred}))
    used = {v.value for alpha in query.atoms for v in atom_variables(alpha)}
    now = Term.time_var(fresh_names(used, 'N')[0])
    body = tuple(query.atoms) + (At(now, time_q), WinAt(0, now, TOP_ATOM))
    rule = Rule('q', body, (At(Term.time(0), yes),))
    compiled = program.with_rules(tuple(program) + (rule,))
    return compiled, data.with_facts({t: {time_q}}), yes


def compiled_query(yes):
    return BCQ((), (Plain(yes),))
