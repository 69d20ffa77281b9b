import pytest

from elars.acyclicity import (
    Position, dependency_graph, is_lwa, is_tlwa, is_weakly_acyclic, partial_ground, strip,
    temporal_grounding, tfree, tfree_facts, validate_witness, verdict_report, wfree,
)
from elars.chase import chase
from elars.core import NormalAtom, Term, Timeline
from elars.errors import DomainError
from elars.rewrite import (
    clip_windows, drop_out_of_scope, eliminate_diamond, rewrite_program, rewrite_stream, rewrite_timeline,
)
from elars.syntax import parse_exrules, parse_program, render_exrules
from tests.generators import instances

ARITHMETIC = {'leq', 'plus_eq'}


def prepared(program, timeline):
    return eliminate_diamond(clip_windows(drop_out_of_scope(program, timeline), timeline))


def chase_input(program, data):
    output = rewrite_program(program, predicates=data.predicates())
    return output.rules, rewrite_stream(data), rewrite_timeline(data.timeline, output.rules)


def test_dependency_graph_edges():
    rules, _ = parse_exrules('p(X) -> exists Y. q(X, Y).\nq(X, Y) -> p(Y).')
    graph = dependency_graph(rules)
    p1, q1, q2 = Position('p', 1), Position('q', 1), Position('q', 2)
    assert graph.normal == {(p1, q1), (q2, p1)}
    assert graph.special == {(p1, q2)}
    assert str(p1) == 'p[1]'


def test_datalog_is_weakly_acyclic(belt_program):
    assert is_weakly_acyclic(parse_exrules('e(X, Y), t(Y, Z) -> t(X, Z).')[0])
    assert is_lwa(belt_program)


@pytest.mark.parametrize('name', ['chain', 'relay'])
def test_forward_programs_are_tlwa_but_not_lwa(name, request):
    program = request.getfixturevalue(name)
    verdict = is_lwa(program)
    assert not verdict
    assert validate_witness(dependency_graph(strip(program)), verdict.witness)
    assert is_tlwa(program, Timeline(0, 1))
    assert is_tlwa(program, Timeline(0, 3))


def test_loop_fails_both_gates(data_dir):
    program = parse_program((data_dir / 'loop.lars').read_text())
    assert not is_lwa(program)
    assert not is_tlwa(program, Timeline(0, 2))


def test_validate_witness_rejects_broken_cycles(relay):
    graph = dependency_graph(strip(relay))
    witness = is_lwa(relay).witness
    assert not validate_witness(graph, witness[:-1] if len(witness) > 1 else ())
    assert not validate_witness(graph, tuple(e for e in witness if not e.special))


def test_verdict_report(relay, belt_program):
    report = verdict_report(relay, Timeline(0, 1))
    assert report['lwa'] is False
    assert report['tlwa'] is True
    assert report['timeline'] == '0..1'
    assert set(report['witness']) == {'lwa'}
    assert all(set(edge) == {'from', 'to', 'special'} for edge in report['witness']['lwa'])

    assert verdict_report(belt_program) == {'lwa': True}


def test_strip_keeps_top_for_empty_bodies():
    program = parse_program('T <= 1 -> @T p(a).')
    assert str(strip(program)[0]) == 'top -> p(a).'


def test_wfree(relay):
    rules = [str(rule) for rule in wfree(relay)]
    assert rules == ['@N p(X) -> exists Y. @N q(X,Y).', '@T q(X,Y), U = T + 1 -> @U p(Y).']


def test_wfree_keeps_head_time_safe():
    rule = wfree(parse_program('in 2 some p(X) -> q(X).')).rules[0]
    assert str(rule) == '@U p(X), @N top -> @N q(X).'


def test_partial_ground():
    rules, facts = parse_exrules('box_p(X,0,T), U = T + 1 -> box_q(X,0,U).\nplus_eq(1,0,1).\nplus_eq(2,1,1).\n')
    grounded = partial_ground(rules, facts, ARITHMETIC)
    assert [str(rule) for rule in grounded] == ['box_p(X,0,0) -> box_q(X,0,1).', 'box_p(X,0,1) -> box_q(X,0,2).']


def test_temporal_grounding_of_relay(relay, data_dir):
    text = render_exrules(tfree(temporal_grounding(relay, Timeline(0, 1))))
    assert text == (data_dir / 'relay_tgrnd_0_1.exr').read_text()


def test_tfree_facts():
    facts = {NormalAtom('box_p', (Term.const('a'), Term.time(0), Term.time(2)))}
    assert tfree_facts(facts) == {NormalAtom('p__t2', (Term.const('a'),))}
    with pytest.raises(DomainError):
        tfree_facts({NormalAtom('box_p', (Term.const('a'), Term.time(3), Term.time(2)))})


@pytest.mark.parametrize('generator', instances(200, base=1000, existentials=True), ids=repr)
def test_stripping_and_rewriting_agree_on_weak_acyclicity(generator):
    program = eliminate_diamond(generator.program())
    rewritten = rewrite_program(program).rules
    assert is_lwa(program).acyclic == is_weakly_acyclic(rewritten).acyclic


@pytest.mark.parametrize('generator', instances(100, base=2000, existentials=True), ids=repr)
def test_lwa_implies_tlwa(generator):
    program = generator.program()
    if is_lwa(program):
        assert is_tlwa(program, Timeline(0, 1))
        assert is_tlwa(program, Timeline(0, 3))


@pytest.mark.parametrize('generator', instances(100, base=3000, existentials=True), ids=repr)
def test_tlwa_programs_saturate(generator):
    data = generator.stream()
    program = prepared(generator.program(), data.timeline)
    if not is_tlwa(program, data.timeline):
        return
    rules, facts, arithmetic = chase_input(program, data)
    assert chase(rules, facts | arithmetic, fuel=5000).saturated


@pytest.mark.parametrize('generator', instances(100, base=4000, existentials=True), ids=repr)
def test_window_free_saturation_carries_over(generator):
    data = generator.stream()
    program = prepared(generator.program(), data.timeline)
    window_free = wfree(program)
    rules, facts, arithmetic = chase_input(window_free, data)
    if not (is_weakly_acyclic(rules) or is_tlwa(window_free, data.timeline)):
        return
    if not chase(rules, facts | arithmetic, fuel=200).saturated:
        return
    rules, facts, arithmetic = chase_input(program, data)
    assert chase(rules, facts | arithmetic, fuel=5000).saturated


@pytest.mark.parametrize('generator', instances(120, base=5000, existentials=True), ids=repr)
def test_partial_grounding_preserves_the_chase(generator):
    data = generator.stream()
    program = prepared(generator.program(), data.timeline)
    if not is_lwa(program):
        return
    rules, facts, arithmetic = chase_input(program, data)
    full = chase(rules, facts | arithmetic, fuel=None)
    grounded = chase(partial_ground(rules, arithmetic, ARITHMETIC), facts, fuel=None)
    assert full.facts == grounded.facts | arithmetic


@pytest.mark.parametrize('generator', instances(100, base=6000, existentials=True), ids=repr)
def test_time_indexing_preserves_the_chase(generator):
    data = generator.stream()
    program = prepared(generator.program(), data.timeline)
    grounding = temporal_grounding(program, data.timeline)
    indexed = tfree(grounding)
    if not is_weakly_acyclic(indexed):
        return
    facts = rewrite_stream(data)
    timed = chase(grounding, facts, fuel=None)
    flat = chase(indexed, tfree_facts(facts), fuel=None)
    assert tfree_facts(timed.facts) == flat.facts
