"""Serializers; every output reads back through the parser."""


def render_program(program):
    return ''.join('%s\n' % rule for rule in program)


def render_query(query):
    return str(query)


def _fact_key(item):
    point, fact = item
    return point, str(fact)


def render_stream(stream):
    lines = ['timeline %d %d.\n' % (stream.timeline.start, stream.timeline.end)]
    for point, fact in sorted(stream.facts(), key=_fact_key):
        lines.append('@%d %s.\n' % (point, fact))
    return ''.join(lines)


def render_facts(facts):
    return ''.join('%s.\n' % (fact,) for fact in sorted(facts, key=str))


def render_exrules(rules, facts=()):
    text = ''.join('%s\n' % rule for rule in rules)
    if facts:
        text += render_facts(facts)
    return text
