"""Conveyor-belt scenario: a five-rule program and a seeded random sensor stream."""
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from elars.conf import conf
from elars.core import NormalAtom, Stream, Term, Timeline
from elars.errors import DomainError
from elars.syntax import parse_program, render_program, render_stream

log = logging.getLogger(__name__)

BELT_PROGRAM = '''\
belt(X) -> exists Y. bOpr(X, Y).
in 5 some bSpeed(X, Y), slow(Y) -> exists Z. brkG(X, Z).
in 3 always bTmp(X, Y), high(Y) -> exists Z. incId(Z, X).
incId(Y, X), bOpr(X, Z) -> assign(Y, Z).
in 3 always incId(Z, X) -> block(X).
'''

PROGRAM_FILE = 'sA.lars'
STREAM_FILE = 'sA.lstream'

HIGH_TEMPERATURES = (8, 9)
NORMAL_TEMPERATURES = (1, 7)
EPISODE_LENGTHS = (4, 6)
SLOW, OK = 'slow', 'ok'


@dataclass(frozen=True)
class BeltConfig:
    belts: int = conf['belts']['belts']
    horizon: int = conf['belts']['horizon']
    p1: float = conf['belts']['p1']
    p2: float = conf['belts']['p2']
    p3: float = conf['belts']['p3']
    seed: int = conf['belts']['seed']

    def __post_init__(self):
        for name in ('p1', 'p2', 'p3'):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise DomainError('%s must be a probability, got %r' % (name, value))
        if self.belts < 1 or self.horizon < 1:
            raise DomainError('belts and horizon must be positive')
        if self.seed < 0:
            raise DomainError('seed must be a natural number')

    @classmethod
    def from_settings(cls, settings, **overrides):
        values = dict(settings.belts)
        values.update((k, v) for k, v in overrides.items() if v is not None)
        return cls(**values)


def _fact(pred, *args):
    return NormalAtom(pred, tuple(Term.const(str(a)) for a in args))


class _Belt(object):
    """Temperature state of one belt: remaining high ticks and whether it cools down next."""

    def __init__(self):
        self.remaining = 0
        self.cooling = False

    def temperature(self, rng, cfg):
        if self.remaining > 0:
            self.remaining -= 1
            self.cooling = self.remaining == 0
            return int(rng.integers(HIGH_TEMPERATURES[0], HIGH_TEMPERATURES[1] + 1))
        if not self.cooling and rng.random() < cfg.p2:
            length = int(rng.integers(EPISODE_LENGTHS[0], EPISODE_LENGTHS[1] + 1)) if rng.random() < cfg.p3 else 1
            self.remaining = length - 1
            self.cooling = self.remaining == 0
            return int(rng.integers(HIGH_TEMPERATURES[0], HIGH_TEMPERATURES[1] + 1))
        self.cooling = False
        return int(rng.integers(NORMAL_TEMPERATURES[0], NORMAL_TEMPERATURES[1] + 1))


def gen_belts(cfg):
    """The belt program and a stream over ``[0, horizon - 1]`` drawn from ``cfg.seed``.

    Every tick carries, per belt, ``belt(b)``, ``bSpeed(b, slow|ok)`` and
    ``bTmp(b, k)`` with ``k`` in 1..9, plus the designations ``high(8)``,
    ``high(9)`` and ``slow(slow)``. A high temperature starts with probability
    ``p2`` and then lasts 4 to 6 ticks with probability ``p3``; a belt is never
    high on the tick after an episode ends.
    """
    rng = np.random.default_rng(cfg.seed)
    names = ['b%d' % i for i in range(1, cfg.belts + 1)]
    belts = [_Belt() for _ in names]
    designations = {_fact('high', k) for k in HIGH_TEMPERATURES} | {_fact('slow', SLOW)}

    facts = {}
    for tick in range(cfg.horizon):
        current = set(designations)
        slow = rng.random(len(names)) < cfg.p1
        for name, belt, is_slow in zip(names, belts, slow):
            current.add(_fact('belt', name))
            current.add(_fact('bSpeed', name, SLOW if is_slow else OK))
            current.add(_fact('bTmp', name, belt.temperature(rng, cfg)))
        facts[tick] = current
    stream = Stream(Timeline(0, cfg.horizon - 1), facts)
    log.info('generated %d belts over %d ticks, %d facts', cfg.belts, cfg.horizon, len(stream))
    return parse_program(BELT_PROGRAM), stream


def write_belts(cfg, out_dir):
    """Write ``sA.lars`` and ``sA.lstream`` into ``out_dir`` and return their paths."""
    program, stream = gen_belts(cfg)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    program_path = out_dir / PROGRAM_FILE
    stream_path = out_dir / STREAM_FILE
    program_path.write_text(render_program(program), encoding='utf-8')
    stream_path.write_text(render_stream(stream), encoding='utf-8')
    return program_path, stream_path
