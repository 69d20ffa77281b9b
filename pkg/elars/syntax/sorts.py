"""Signature inference and name checks for user vocabularies."""
from elars.core import LEQ, PLUS_EQ, TOP, ArithAtom, PredicateSig, Sort, atom_variables, inner_atom
from elars.rewrite.exrules import AT_PREFIX, BOX_PREFIX, TIME_INDEX_SEP
from elars.syntax.errors import ParseError, ParseErrorKind

RESERVED_PREDICATES = (TOP, LEQ, PLUS_EQ)


def is_reserved_predicate(name):
    return (name in RESERVED_PREDICATES or name.startswith(BOX_PREFIX) or name.startswith(AT_PREFIX)
            or TIME_INDEX_SEP in name)


def check_reserved(name, span=None):
    if name != TOP and is_reserved_predicate(name):
        raise ParseError(ParseErrorKind.SYNTACTIC, 'predicate name %s is reserved' % name, span)


def _record(table, atom):
    if atom.pred == TOP:
        return
    for term in atom.args:
        if term.sort != Sort.ABSTRACT:
            raise ParseError(ParseErrorKind.SORT_CONFLICT,
                             'time term %s in an argument of %s' % (term, atom.pred))
    known = table.get(atom.pred)
    if known is None:
        table[atom.pred] = PredicateSig(atom.pred, (Sort.ABSTRACT,) * atom.arity)
    elif known.arity != atom.arity:
        raise ParseError(ParseErrorKind.ARITY_CONFLICT,
                         'predicate %s used with arity %d and %d' % (atom.pred, known.arity, atom.arity))


def _check_rule_variables(rule):
    sorts = {}
    for alpha in rule.body + rule.head:
        for v in atom_variables(alpha):
            if sorts.setdefault(v.value, v.sort) != v.sort:
                raise ParseError(ParseErrorKind.SORT_CONFLICT,
                                 'variable %s of rule %s has both sorts' % (v.value, rule.id))


def infer_sorts(program, stream=None):
    """Signature table (name -> PredicateSig) of a program and, optionally, a stream.

    Predicate positions only ever hold abstract terms; time enters through the
    operators and arithmetic, so every table entry is a simple predicate.
    """
    table = dict(program.signature)
    for rule in program:
        _check_rule_variables(rule)
        for alpha in rule.body + rule.head:
            if not isinstance(alpha, ArithAtom):
                _record(table, inner_atom(alpha))
    if stream is not None:
        for _, fact in stream.facts():
            _record(table, fact)
    return table
