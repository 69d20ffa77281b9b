import logging

from elars.core import bcq_holds, least_model
from elars.errors import DomainError

log = logging.getLogger(__name__)


def oracle_answer(program, data, t, query):
    """Decide the query on the least model of an existential-free program, without rewriting."""
    if t not in data.timeline:
        raise DomainError('time point %d lies outside %s' % (t, data.timeline))
    model = least_model(program, data)
    verdict = bcq_holds(model, t, query)
    log.debug('oracle: %s at %d is %s on a model of %d facts', query, t, verdict, len(model))
    return verdict
