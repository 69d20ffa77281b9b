"""End-to-end BCQ answering: gate check, rewriting, chase, homomorphism test."""
import logging
import time
from dataclasses import dataclass, field
from enum import Enum

from elars.acyclicity import is_lwa, is_tlwa
from elars.chase import answer_bcq_on_facts, chase
from elars.conf import conf
from elars.core import TOP, ArithAtom, NormalAtom
from elars.errors import DomainError, GateRefused
from elars.rewrite import (
    BOX_PREFIX, clip_query, clip_windows, drop_out_of_scope, eliminate_diamond, original_predicate,
    prune_auxiliary, rewrite_program, rewrite_query, rewrite_stream, rewrite_timeline,
)

log = logging.getLogger(__name__)


class Verdict(str, Enum):
    YES = 'yes'
    NO = 'no'
    UNKNOWN = 'unknown'


class Gate(str, Enum):
    LWA = 'lwa'
    TLWA = 'tlwa'
    NONE = 'none'


@dataclass(frozen=True)
class AnswerOptions:
    """How hard to try.

    ``fuel`` is an explicit round limit; without it a program that passes no
    gate is refused when ``require_gate`` is set and chased with
    ``default_fuel`` rounds otherwise. Gated programs are chased with
    ``gated_fuel`` rounds.
    """
    fuel: int = None
    default_fuel: int = conf['fuel']
    gated_fuel: int = conf['gated_fuel']
    require_gate: bool = conf['require_gate']
    prune: bool = conf['prune_auxiliary']
    trace: object = field(default=None, compare=False)

    @classmethod
    def from_settings(cls, settings, **overrides):
        values = dict(default_fuel=settings.fuel, gated_fuel=settings.gated_fuel,
                      require_gate=settings.require_gate, prune=settings.prune_auxiliary)
        values.update(overrides)
        return cls(**values)


@dataclass(frozen=True)
class Answer:
    verdict: Verdict
    mode: str
    gate: Gate
    stats: dict

    def as_dict(self):
        return {'verdict': self.verdict.value, 'mode': self.mode, 'gate': self.gate.value,
                'stats': dict(self.stats)}


def decide_gate(program, timeline):
    """The first decidability gate ``program`` passes: LWA, then TLWA over ``timeline``."""
    if is_lwa(program):
        return Gate.LWA
    if is_tlwa(program, timeline):
        return Gate.TLWA
    return Gate.NONE


def chase_fuel(gate, options):
    if gate is not Gate.NONE:
        return max(options.gated_fuel, options.fuel or 0)
    if options.fuel is not None:
        return options.fuel
    if options.require_gate:
        raise GateRefused('program is neither LWA nor TLWA; give a fuel limit or disable the gate')
    return options.default_fuel


def _arities(program, data, queries):
    arities = dict(data.predicates())
    for query in queries:
        for alpha in query.atoms:
            if not isinstance(alpha, ArithAtom) and alpha.atom.pred != TOP:
                arities.setdefault(alpha.atom.pred, alpha.atom.arity)
    for name, sig in program.signature.items():
        arities.setdefault(name, sig.arity)
    return arities


def _prepare(program, data, queries):
    timeline = data.timeline
    program = clip_windows(drop_out_of_scope(program, timeline), timeline)
    queries = [clip_query(q, timeline) for q in queries]
    return eliminate_diamond(program), queries


@dataclass(frozen=True)
class ChasePlan:
    """What a chase needs besides the stream's facts; fixed by the timeline and the predicates."""
    gate: Gate
    fuel: int
    rules: tuple
    timeline_facts: frozenset


def plan_chase(program, timeline, arities, options, queries=(), demands=()):
    """Gate and rewrite a prepared ``program`` for streams over ``timeline``."""
    gate = decide_gate(program, timeline)
    fuel = chase_fuel(gate, options)
    window = max([program.max_window()] + [n for q in queries for n in q.windows()])
    output = rewrite_program(program, window, arities)
    if options.prune:
        output = prune_auxiliary(output, [atom for q in demands for atom in q.atoms])
    log.info('gate %s, %d rules, at most %d rounds', gate.value, len(output.rules), fuel)
    timeline_facts = frozenset(rewrite_timeline(timeline, output.rules, demands))
    return ChasePlan(gate, fuel, output.rules, timeline_facts)


def _chase(plan, data, options):
    outcome = chase(plan.rules, rewrite_stream(data) | plan.timeline_facts, plan.fuel, options.trace)
    if not outcome.saturated:
        log.warning('chase ran out of fuel after %d rounds', outcome.rounds)
    return outcome


def _stats(outcome, ms):
    return {'rounds': outcome.rounds, 'facts': len(outcome.facts), 'nulls': outcome.nulls,
            'ms': round(ms, 3)}


def answer(program, data, t, query, options=None):
    """Decide ``program, data, t |= query`` through the existential-rule rewriting."""
    options = options or AnswerOptions()
    if t not in data.timeline:
        raise DomainError('time point %d lies outside %s' % (t, data.timeline))
    prepared, (query,) = _prepare(program, data, [query])
    rewritten = rewrite_query(query, t)
    start = time.time()
    plan = plan_chase(prepared, data.timeline, _arities(prepared, data, [query]), options, [query], [rewritten])
    outcome = _chase(plan, data, options)
    gate, ms = plan.gate, (time.time() - start) * 1000.0

    found = answer_bcq_on_facts(outcome.facts, rewritten)
    if found:
        verdict = Verdict.YES
    elif outcome.saturated:
        verdict = Verdict.NO
    else:
        verdict = Verdict.UNKNOWN
    result = Answer(verdict, 'chase', gate, _stats(outcome, ms))
    log.info('%s at %d: %s', query, t, verdict.value)
    return result


def project_model(facts, offset=0):
    """User facts per absolute time point, read off ``box_p(args, 0, s)`` facts."""
    model = {}
    for fact in facts:
        if not fact.pred.startswith(BOX_PREFIX) or fact.arity < 2:
            continue
        name = original_predicate(fact.pred)
        window, point = fact.args[-2], fact.args[-1]
        if name == TOP or window.value != 0:
            continue
        model.setdefault(point.value + offset, set()).add(NormalAtom(name, fact.args[:-2]))
    return {p: frozenset(f) for p, f in model.items()}


class Materializer(object):
    """Query-free materialisation of one program over a series of streams.

    Clipping, gating and rewriting only depend on the timeline and on the
    stream's predicates, and their result is kept per such pair.
    """

    def __init__(self, program, options=None):
        self.program = program
        self.options = options or AnswerOptions()
        self.plans = {}

    def plan(self, data):
        key = (data.timeline, frozenset(data.predicates().items()))
        plan = self.plans.get(key)
        if plan is None:
            prepared, _ = _prepare(self.program, data, [])
            arities = _arities(prepared, data, [])
            plan = self.plans[key] = plan_chase(prepared, data.timeline, arities, self.options)
        return plan

    def __call__(self, data, offset=0):
        start = time.time()
        plan = self.plan(data)
        outcome = _chase(plan, data, self.options)
        ms = (time.time() - start) * 1000.0
        stats = dict(_stats(outcome, ms), gate=plan.gate.value, saturated=outcome.saturated)
        return outcome, project_model(outcome.facts, offset), stats


def materialize(program, data, options=None, offset=0):
    """Query-free materialisation of ``program`` over ``data``.

    Returns the chase outcome and its projection to user facts, keyed by
    ``point + offset``, plus the gate and timing in a stats dict.
    """
    return Materializer(program, options)(data, offset)
