import statistics

import pytest

from elars.core import NormalAtom, Term, Timeline
from elars.errors import DomainError, GateRefused, StreamOrderError
from elars.reason import (
    AnswerOptions, BeltConfig, Gate, Materializer, Verdict, answer, chase_fuel, decide_gate, gen_belts,
    materialize, oracle_answer, run_pointwise, stream_batches, write_belts,
)
from elars.rewrite import compile_query, compiled_query
from elars.syntax import parse_program, parse_query, parse_stream
from tests.generators import instances

WARN_B1 = NormalAtom('warn', (Term.const('b1'),))


def belt_facts(stream, pred, belt):
    return {t: [f for f in stream.at(t) if f.pred == pred and f.args[0] == Term.const(belt)]
            for t in stream.timeline}


def temperatures(stream, belt):
    return [int(facts[0].args[1].value) for _, facts in sorted(belt_facts(stream, 'bTmp', belt).items())]


def test_belt_warning(belt_program, belt_stream):
    result = answer(belt_program, belt_stream, 4, parse_query('warn(b1)'))
    assert result.verdict is Verdict.YES
    assert result.gate is Gate.LWA
    assert result.mode == 'chase'
    assert answer(belt_program, belt_stream, 5, parse_query('warn(b1)')).verdict is Verdict.NO
    assert answer(belt_program, belt_stream, 4, parse_query('exists Y. bOpr(b1, Y)')).verdict is Verdict.YES


def test_answer_record(belt_program, belt_stream):
    record = answer(belt_program, belt_stream, 4, parse_query('warn(b1)')).as_dict()
    assert record['verdict'] == 'yes'
    assert record['gate'] == 'lwa'
    assert set(record['stats']) == {'rounds', 'facts', 'nulls', 'ms'}


def test_forward_chain_passes_the_temporal_gate(chain):
    data = parse_stream('timeline 0 3. @0 p(a, b).')
    result = answer(chain, data, 0, parse_query('@3 p(X, Y)'))
    assert result.verdict is Verdict.YES
    assert result.gate is Gate.TLWA
    assert result.stats['rounds'] > 0


def test_ungated_programs_need_fuel(data_dir):
    program = parse_program((data_dir / 'loop.lars').read_text())
    data = parse_stream((data_dir / 'loop.lstream').read_text())
    assert decide_gate(program, data.timeline) is Gate.NONE
    with pytest.raises(GateRefused):
        answer(program, data, 0, parse_query('person(bob)'))

    fuelled = AnswerOptions(fuel=5)
    assert answer(program, data, 0, parse_query('person(bob)'), fuelled).verdict is Verdict.UNKNOWN
    assert answer(program, data, 0, parse_query('exists Y. parent(ann, Y)'), fuelled).verdict is Verdict.YES

    loose = AnswerOptions(require_gate=False, default_fuel=3)
    result = answer(program, data, 0, parse_query('person(bob)'), loose)
    assert result.verdict is Verdict.UNKNOWN
    assert result.stats['rounds'] == 3


def test_chase_fuel():
    options = AnswerOptions(fuel=7, gated_fuel=100)
    assert chase_fuel(Gate.LWA, options) == 100
    assert chase_fuel(Gate.NONE, options) == 7
    assert chase_fuel(Gate.TLWA, AnswerOptions(fuel=500, gated_fuel=100)) == 500


def test_points_outside_the_timeline(belt_program, belt_stream):
    with pytest.raises(DomainError):
        answer(belt_program, belt_stream, 10, parse_query('warn(b1)'))
    with pytest.raises(DomainError):
        oracle_answer(belt_program, belt_stream, 10, parse_query('warn(b1)'))


@pytest.mark.parametrize('generator', instances(200, base=7000), ids=repr)
def test_rewriting_agrees_with_the_model(generator):
    program, data, query, t = generator.program(), generator.stream(), generator.query(), generator.point()
    expected = oracle_answer(program, data, t, query)
    result = answer(program, data, t, query)
    assert result.verdict is (Verdict.YES if expected else Verdict.NO)


@pytest.mark.parametrize('generator', instances(60, base=8000), ids=repr)
def test_compiled_queries_keep_their_answer(generator):
    program, data, query, t = generator.program(), generator.stream(), generator.query(), generator.point()
    compiled, extended, yes = compile_query(program, data, t, query)
    assert oracle_answer(compiled, extended, 0, compiled_query(yes)) == oracle_answer(program, data, t, query)


def test_materialize(belt_program, belt_stream):
    outcome, projection, stats = materialize(belt_program, belt_stream)
    assert outcome.saturated
    assert WARN_B1 in projection[4]
    assert WARN_B1 not in projection.get(5, frozenset())
    assert stats['gate'] == 'lwa'
    assert stats['saturated'] is True

    _, shifted, _ = materialize(belt_program, belt_stream, offset=100)
    assert WARN_B1 in shifted[104]


def test_pointwise_belt_warnings(belt_program, belt_stream):
    reports = list(run_pointwise(belt_program, stream_batches(belt_stream), 6))
    assert [r.tick for r in reports] == list(range(10))
    assert [r.tick for r in reports if WARN_B1 in r.derived] == [0, 1, 2, 3, 4]
    assert all(not (r.derived & belt_stream.at(r.tick)) for r in reports)
    record = reports[0].as_dict()
    assert record['tick'] == 0
    assert 'warn(b1)' in record['facts']
    assert record['saturated'] is True


def test_pointwise_with_a_full_buffer_matches_materialisation(belt_program, belt_stream):
    _, projection, _ = materialize(belt_program, belt_stream)
    for report in run_pointwise(belt_program, stream_batches(belt_stream), 10):
        assert report.derived == projection.get(report.tick, frozenset()) - belt_stream.at(report.tick)


def test_pointwise_reports_quiet_ticks(belt_program):
    fact = NormalAtom('belt', (Term.const('b1'),))
    reports = list(run_pointwise(belt_program, [(0, {fact}), (3, {fact})], 2))
    assert [r.tick for r in reports] == [0, 1, 2, 3]
    assert not reports[1].derived


def test_pointwise_merges_batches_of_one_tick(belt_program):
    batches = [(0, {NormalAtom('beltTmp', (Term.const('b1'), Term.const('90')))}),
               (0, {NormalAtom('high', (Term.const('90'),))})]
    (report,) = run_pointwise(belt_program, batches, 3)
    assert WARN_B1 in report.derived


def test_pointwise_input_errors(belt_program):
    assert list(run_pointwise(belt_program, [], 3)) == []
    with pytest.raises(DomainError):
        list(run_pointwise(belt_program, [], 0))
    with pytest.raises(DomainError):
        list(run_pointwise(belt_program, [(-1, set())], 3))
    with pytest.raises(StreamOrderError):
        list(run_pointwise(belt_program, [(2, set()), (1, set())], 3))


def test_gen_belts_shape():
    program, stream = gen_belts(BeltConfig(belts=3, horizon=5, seed=1))
    assert len(program) == 5
    assert stream.timeline == Timeline(0, 4)
    for t in stream.timeline:
        assert len([f for f in stream.at(t) if f.pred == 'bTmp']) == 3
        assert NormalAtom('slow', (Term.const('slow'),)) in stream.at(t)
        assert NormalAtom('high', (Term.const('8'),)) in stream.at(t)


def test_gen_belts_without_events():
    _, stream = gen_belts(BeltConfig(belts=4, horizon=20, p1=0.0, p2=0.0, p3=0.0))
    speeds = {f.args[1].value for _, f in stream.facts() if f.pred == 'bSpeed'}
    assert speeds == {'ok'}
    assert all(1 <= k <= 7 for b in ('b1', 'b2', 'b3', 'b4') for k in temperatures(stream, b))


def test_gen_belts_slow_frequency():
    _, stream = gen_belts(BeltConfig(belts=100, horizon=100, p1=0.3, seed=7))
    speeds = [f.args[1].value for _, f in stream.facts() if f.pred == 'bSpeed']
    assert len(speeds) == 10000
    assert abs(speeds.count('slow') / len(speeds) - 0.3) <= 0.05


def test_gen_belts_episodes():
    _, stream = gen_belts(BeltConfig(belts=5, horizon=40, p2=1.0, p3=1.0, seed=3))
    for belt in ('b1', 'b2', 'b3', 'b4', 'b5'):
        runs, length = [], 0
        for k in temperatures(stream, belt):
            if k >= 8:
                length += 1
            elif length:
                runs.append(length)
                length = 0
        assert runs
        assert all(4 <= run <= 6 for run in runs)

    _, stream = gen_belts(BeltConfig(belts=1, horizon=10, p2=1.0, p3=0.0, seed=3))
    assert [k >= 8 for k in temperatures(stream, 'b1')] == [True, False] * 5


def test_gen_belts_is_deterministic(tmp_path):
    cfg = BeltConfig(belts=5, horizon=12, seed=11)
    first = write_belts(cfg, tmp_path / 'one')
    second = write_belts(cfg, tmp_path / 'two')
    for a, b in zip(first, second):
        assert a.read_bytes() == b.read_bytes()
    assert first[0].name == 'sA.lars'
    assert gen_belts(cfg)[1] != gen_belts(BeltConfig(belts=5, horizon=12, seed=12))[1]


@pytest.mark.parametrize('overrides', [
    {'p1': 1.5}, {'p2': -0.1}, {'belts': 0}, {'horizon': 0}, {'seed': -1},
])
def test_belt_config_validation(overrides):
    with pytest.raises(DomainError):
        BeltConfig(**overrides)


def test_materializer_reuses_its_plan(belt_program, belt_stream):
    materializer = Materializer(belt_program)
    first = materializer(belt_stream.restricted(0, 5))
    second = materializer(belt_stream.restricted(4, 9), offset=4)
    assert len(materializer.plans) == 1
    assert first[1] == materialize(belt_program, belt_stream.restricted(0, 5))[1]
    assert second[1] == materialize(belt_program, belt_stream.restricted(4, 9), offset=4)[1]


def test_belt_incidents_follow_hot_windows():
    program, stream = gen_belts(BeltConfig(belts=5, horizon=30, p2=0.5, p3=1.0, seed=42))
    hot = parse_program('in 3 always bTmp(X, Y), high(Y) -> hot(X).')
    belts = ['b%d' % i for i in range(1, 6)]
    for report in run_pointwise(program, stream_batches(stream), 6):
        incidents = {f.args[1].value for f in report.derived if f.pred == 'incId'}
        blocked = {f.args[0].value for f in report.derived if f.pred == 'block'}
        expected = {b for b in belts if oracle_answer(hot, stream, report.tick, parse_query('hot(%s)' % b))}
        assert incidents == expected
        assert blocked == (expected if report.tick == 0 else set())
        assert report.stats['saturated']


@pytest.mark.slow
def test_belt_scenario_latency():
    program, stream = gen_belts(BeltConfig(belts=100, horizon=100, p1=0.3, p2=0.3, p3=0.5, seed=42))
    reports = list(run_pointwise(program, stream_batches(stream), 6))
    assert [r.tick for r in reports] == list(range(100))
    assert all(r.stats['saturated'] for r in reports)
    assert statistics.median(r.stats['ms'] for r in reports) <= 250.0
