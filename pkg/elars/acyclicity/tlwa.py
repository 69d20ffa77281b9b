import logging

from elars.acyclicity.graph import is_weakly_acyclic
from elars.acyclicity.grounding import temporal_grounding, tfree
from elars.acyclicity.lwa import is_lwa

log = logging.getLogger(__name__)


def is_tlwa(program, timeline):
    """Weak acyclicity of the time-indexed temporal grounding over ``timeline``."""
    return is_weakly_acyclic(tfree(temporal_grounding(program, timeline)))


def verdict_report(program, timeline=None):
    """JSON-ready record of the acyclicity verdicts; ``tlwa`` only with a timeline."""
    verdicts = {'lwa': is_lwa(program)}
    if timeline is not None:
        verdicts['tlwa'] = is_tlwa(program, timeline)

    report = {name: verdict.acyclic for name, verdict in verdicts.items()}
    if timeline is not None:
        report['timeline'] = str(timeline)
    witnesses = {name: [edge.as_dict() for edge in verdict.witness]
                 for name, verdict in verdicts.items() if not verdict.acyclic}
    if witnesses:
        report['witness'] = witnesses
    log.info('acyclicity: %s', ', '.join('%s=%s' % (k, v.acyclic) for k, v in verdicts.items()))
    return report
