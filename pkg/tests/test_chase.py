import random
from itertools import product

import pytest

from elars.acyclicity import is_tlwa
from elars.chase import (
    ChaseState, FactIndex, FuelExhausted, Saturated, active_matches, answer_bcq_on_facts, chase,
    delta_homomorphisms, homomorphisms,
)
from elars.core import NormalAtom, Term, Timeline
from elars.errors import DomainError
from elars.rewrite import (
    clip_windows, drop_out_of_scope, eliminate_diamond, rewrite_program, rewrite_query, rewrite_stream,
    rewrite_timeline,
)
from elars.syntax import parse_exrules, parse_query, parse_stream
from tests.generators import instances

X, Y, Z = Term.var('X'), Term.var('Y'), Term.var('Z')
CONSTANTS = tuple(Term.const(c) for c in 'abc')
SMALL_FACTS = [NormalAtom('e', (s, o)) for s in CONSTANTS for o in CONSTANTS] + \
    [NormalAtom('p', (c,)) for c in CONSTANTS]


def fact(pred, *args):
    return NormalAtom(pred, tuple(Term.const(a) for a in args))


def rules(text):
    return parse_exrules(text)[0]


def test_index_candidates():
    index = FactIndex([fact('e', 'a', 'b'), fact('e', 'b', 'c'), fact('e', 'a', 'c')])
    assert len(index.candidates(NormalAtom('e', (X, Y)), {})) == 3
    assert index.candidates(NormalAtom('e', (X, Y)), {X: Term.const('b')}) == {fact('e', 'b', 'c')}
    assert not index.candidates(NormalAtom('f', (X,)), {})
    assert index.add(fact('e', 'a', 'b')) is False


def test_homomorphisms_join():
    index = FactIndex([fact('e', 'a', 'b'), fact('e', 'b', 'c')])
    found = list(homomorphisms([NormalAtom('e', (X, Y)), NormalAtom('e', (Y, Z))], index))
    assert found == [{X: Term.const('a'), Y: Term.const('b'), Z: Term.const('c')}]


def test_delta_homomorphisms_need_a_new_fact():
    old = fact('e', 'a', 'b')
    new = fact('e', 'b', 'c')
    index = FactIndex([old, new])
    atoms = [NormalAtom('e', (X, Y))]
    assert [b[X] for b in delta_homomorphisms(atoms, index, FactIndex([new]))] == [Term.const('b')]


def test_datalog_saturates():
    outcome = chase(rules('e(X, Y) -> t(X, Y).\nt(X, Y), e(Y, Z) -> t(X, Z).'),
                    [fact('e', 'a', 'b'), fact('e', 'b', 'c'), fact('e', 'c', 'd')])
    assert isinstance(outcome, Saturated)
    assert outcome.saturated
    assert fact('t', 'a', 'd') in outcome.facts
    assert outcome.rounds == 3
    assert outcome.nulls == 0


def test_existential_heads_get_named_nulls():
    outcome = chase(rules('person(X) -> exists Y. parent(X, Y).'), [fact('person', 'ann')])
    (parent,) = [f for f in outcome.facts if f.pred == 'parent']
    null = parent.args[1]
    assert null.is_null
    assert null.value.rule_id == '1'
    assert null.value.frontier == (Term.const('ann'),)
    assert str(null).startswith('_:r1_Y_')
    assert outcome.nulls == 1


def test_chase_is_deterministic():
    program = rules('person(X) -> exists Y. parent(X, Y).\nparent(X, Y) -> person(Y).')
    first = chase(program, [fact('person', 'ann')], fuel=6)
    second = chase(program, [fact('person', 'ann')], fuel=6)
    assert first.facts == second.facts


def test_fuel_exhaustion():
    program = rules('person(X) -> exists Y. parent(X, Y).\nparent(X, Y) -> person(Y).')
    outcome = chase(program, [fact('person', 'ann')], fuel=5)
    assert isinstance(outcome, FuelExhausted)
    assert not outcome.saturated
    assert outcome.rounds == 5
    assert outcome.nulls == 3
    assert len(outcome.facts) == 6


def test_fuel_is_not_spent_on_the_final_empty_round():
    outcome = chase(rules('e(X, Y) -> t(X, Y).'), [fact('e', 'a', 'b')], fuel=1)
    assert isinstance(outcome, Saturated)
    assert outcome.rounds == 1


def test_trace_records_productive_rounds():
    records = []
    chase(rules('person(X) -> exists Y. parent(X, Y).'), [fact('person', 'ann')], trace=records.append)
    assert records == [{'round': 1, 'newFacts': 1, 'newNulls': 1}]


def test_chase_rejects_bad_input():
    with pytest.raises(DomainError):
        chase((), [fact('p', 'a')], fuel=0)
    with pytest.raises(DomainError):
        chase((), [NormalAtom('p', (X,))])


def test_active_matches():
    program = rules('person(X) -> exists Y. parent(X, Y).')
    facts = [fact('person', 'ann'), fact('person', 'bob')]
    assert len(active_matches(program[0], facts)) == 2

    state = ChaseState(facts)
    state.index.update(state.head_facts(program[0], {X: Term.const('ann')}))
    assert active_matches(program[0], facts, state) == [{X: Term.const('bob')}]


def test_answer_bcq_on_facts(belt_program, belt_stream):
    output = rewrite_program(belt_program)
    facts = rewrite_stream(belt_stream) | rewrite_timeline(belt_stream.timeline, output.rules)
    outcome = chase(output.rules, facts)
    assert outcome.saturated
    assert answer_bcq_on_facts(outcome.facts, rewrite_query(parse_query('warn(b1)'), 4))
    assert not answer_bcq_on_facts(outcome.facts, rewrite_query(parse_query('warn(b1)'), 5))
    assert answer_bcq_on_facts(FactIndex(outcome.facts), rewrite_query(parse_query('exists Y. bOpr(b1, Y)'), 4))


def _chain_input(chain, extra=()):
    output = rewrite_program(chain)
    data = parse_stream('timeline 0 3. @0 p(a, b).')
    facts = rewrite_stream(data) | rewrite_timeline(Timeline(0, 3), output.rules) | frozenset(extra)
    return output.rules, facts


def test_forward_chain_terminates_on_a_proper_timeline(chain):
    program, facts = _chain_input(chain)
    outcome = chase(program, facts, fuel=100)
    assert isinstance(outcome, Saturated)
    chain = [f for f in outcome.facts if f.pred == 'box_p' and f.args[2] == Term.time(0)]
    assert sorted(f.args[3].value for f in chain) == [0, 1, 2, 3]


def test_forward_chain_diverges_when_zero_is_its_own_successor(chain):
    broken = NormalAtom('plus_eq', (Term.time(0), Term.time(0), Term.time(1)))
    program, facts = _chain_input(chain, [broken])
    assert isinstance(chase(program, facts, fuel=50), FuelExhausted)


def test_index_tables_follow_additions():
    index = FactIndex([fact('e', 'a', 'b')])
    pattern = NormalAtom('e', (Term.const('a'), Y))
    assert index.candidates(pattern, {}) == {fact('e', 'a', 'b')}
    index.add(fact('e', 'a', 'c'))
    index.add(fact('e', 'b', 'c'))
    assert index.candidates(pattern, {}) == {fact('e', 'a', 'b'), fact('e', 'a', 'c')}
    assert index.candidates(NormalAtom('e', (X, Y)), {X: Term.const('b'), Y: Term.const('c')}) == \
        {fact('e', 'b', 'c')}
    assert not index.candidates(NormalAtom('e', (X, X)), {X: Term.const('a')})


def test_index_keeps_arities_apart():
    index = FactIndex([fact('e', 'a', 'b'), fact('e', 'a'), fact('e', 'a', 'b', 'c')])
    assert index.candidates(NormalAtom('e', (X, Y)), {}) == {fact('e', 'a', 'b')}
    assert index.candidates(NormalAtom('e', (Term.const('a'),)), {}) == {fact('e', 'a')}
    assert [b[X] for b in homomorphisms([NormalAtom('e', (X,))], index)] == [Term.const('a')]


def _random_conjunction(rng):
    atoms = []
    for _ in range(rng.randint(1, 3)):
        pred, arity = rng.choice([('e', 2), ('p', 1)])
        atoms.append(NormalAtom(pred, tuple(rng.choice(CONSTANTS) if rng.random() < 0.2
                                            else rng.choice((X, Y, Z)) for _ in range(arity))))
    return atoms


def _brute_force(atoms, facts, touching=None):
    variables = sorted({t for atom in atoms for t in atom.args if t.is_variable}, key=lambda v: v.value)
    found = set()
    for values in product(CONSTANTS, repeat=len(variables)):
        binding = dict(zip(variables, values))
        images = [atom.substitute(binding) for atom in atoms]
        if all(image in facts for image in images):
            if touching is None or any(image in touching for image in images):
                found.add(frozenset(binding.items()))
    return found


@pytest.mark.parametrize('seed', range(100))
def test_homomorphisms_agree_with_brute_force(seed):
    rng = random.Random(seed)
    facts = set(rng.sample(SMALL_FACTS, rng.randint(0, len(SMALL_FACTS))))
    recent = {f for f in facts if rng.random() < 0.4}
    atoms = _random_conjunction(rng)

    found = [frozenset(b.items()) for b in homomorphisms(atoms, FactIndex(facts))]
    assert len(found) == len(set(found))
    assert set(found) == _brute_force(atoms, facts)

    fresh = [frozenset(b.items()) for b in delta_homomorphisms(atoms, FactIndex(facts), FactIndex(recent))]
    assert len(fresh) == len(set(fresh))
    assert set(fresh) == _brute_force(atoms, facts, recent)


def test_empty_frontier_mints_one_null():
    outcome = chase(rules('p(X) -> exists Y. p(Y).'), [fact('p', 'a')])
    assert outcome.saturated
    assert outcome.nulls == 1
    assert outcome.rounds == 1
    (null,) = [f.args[0] for f in outcome.facts if f.args[0].is_null]
    assert null.value.frontier == ()


def test_nulls_are_reused_per_frontier():
    outcome = chase(rules('e(X, Y) -> exists Z. f(X, Z).'),
                    [fact('e', 'a', 'b'), fact('e', 'a', 'c'), fact('e', 'b', 'c')])
    assert outcome.nulls == 2
    assert len([f for f in outcome.facts if f.pred == 'f']) == 2


def test_facts_grow_with_every_round():
    program = rules('person(X) -> exists Y. parent(X, Y).\nparent(X, Y) -> person(Y).')
    start = [fact('person', 'ann')]
    outcomes = [chase(program, start, fuel=k) for k in range(1, 7)]
    for smaller, larger in zip(outcomes, outcomes[1:]):
        assert smaller.facts < larger.facts
        assert smaller.nulls <= larger.nulls

    records = []
    last = chase(program, start, fuel=6, trace=records.append)
    assert sum(r['newFacts'] for r in records) == len(last.facts) - len(start)
    assert all(r['newFacts'] > 0 for r in records)


@pytest.mark.parametrize('generator', instances(60, base=11000, existentials=True), ids=repr)
def test_saturation_ignores_rule_order(generator):
    data = generator.stream()
    program = generator.program()
    program = eliminate_diamond(clip_windows(drop_out_of_scope(program, data.timeline), data.timeline))
    if not is_tlwa(program, data.timeline):
        return
    output = rewrite_program(program, predicates=data.predicates())
    facts = rewrite_stream(data) | rewrite_timeline(data.timeline, output.rules)
    shuffled = list(output.rules)
    random.Random(generator.seed).shuffle(shuffled)

    first = chase(output.rules, facts, fuel=5000)
    second = chase(shuffled, facts, fuel=5000)
    assert first.saturated and second.saturated
    assert first.facts == second.facts
    assert (first.rounds, first.nulls) == (second.rounds, second.nulls)
