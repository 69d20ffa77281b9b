"""Pointwise evaluation over a sliding buffer of the most recent time points."""
import logging
from dataclasses import dataclass, field

from elars.core import Stream, Timeline
from elars.errors import DomainError, StreamOrderError
from elars.reason.pipeline import Materializer

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class TickReport:
    tick: int
    derived: frozenset
    stats: dict = field(default_factory=dict)

    def as_dict(self):
        record = {'tick': self.tick, 'facts': sorted(str(f) for f in self.derived)}
        record.update((k, self.stats[k]) for k in ('rounds', 'ms', 'saturated') if k in self.stats)
        return record


def _evaluate(materializer, buffer, tick, window):
    lo = max(0, tick - window + 1)
    data = Stream(Timeline(0, tick), buffer).restricted(lo, tick)
    _, projection, stats = materializer(data, offset=lo)
    derived = projection.get(tick, frozenset()) - buffer.get(tick, frozenset())
    log.debug('tick %d: %d derived facts over %s', tick, len(derived), data.timeline)
    return TickReport(tick, frozenset(derived), stats)


def run_pointwise(program, batches, window, options=None):
    """Yield one :class:`TickReport` per time point, oldest first.

    ``batches`` yields ``(point, facts)`` pairs in nondecreasing time order;
    several batches may share a point and points without a batch are still
    reported. The model at tick ``t`` is computed from the facts of the last
    ``window`` points only, re-indexed to start at 0.
    """
    if window <= 0:
        raise DomainError('window must be positive, got %r' % (window,))
    materializer = Materializer(program, options)
    buffer = {}
    tick = 0
    last = None
    for point, facts in batches:
        if point < 0:
            raise DomainError('negative time point %d' % point)
        if last is not None and point < last:
            raise StreamOrderError('batch for %d arrived after %d' % (point, last))
        while tick < point:
            yield _evaluate(materializer, buffer, tick, window)
            tick += 1
            _evict(buffer, tick, window)
        buffer[point] = buffer.get(point, frozenset()) | frozenset(facts)
        last = point
    while last is not None and tick <= last:
        yield _evaluate(materializer, buffer, tick, window)
        tick += 1
        _evict(buffer, tick, window)


def _evict(buffer, tick, window):
    for point in [p for p in buffer if p < tick - window + 1]:
        del buffer[point]


def stream_batches(stream):
    """Batches of a whole stream, one per time point of its timeline."""
    return [(point, stream.at(point)) for point in stream.timeline]
