"""Text front end: programs (.lars), streams (.lstream), queries and rule sets (.exr)."""
import logging
from typing import NamedTuple

from lark import Lark, Token, Transformer
from lark.exceptions import UnexpectedCharacters, UnexpectedInput, VisitError

from elars.core import (
    BCQ, LEQ, PLUS_EQ, TOP, At, ArithAtom, NormalAtom, Plain, Program, Rule, Sort, Stream,
    Term, Timeline, WinAt, WinBox, WinDiamond, atom_variables,
)
from elars.rewrite.exrules import ExRule, aux_time_positions
from elars.syntax.errors import ParseError, ParseErrorKind, SourceSpan
from elars.syntax.grammar import GRAMMAR
from elars.syntax.sorts import check_reserved, infer_sorts

log = logging.getLogger(__name__)

_parser = Lark(GRAMMAR, start=['program', 'stream', 'query', 'exrules'], parser='lalr')


class RawAtom(NamedTuple):
    pred: str
    args: tuple
    token: object


class RawLiteral(NamedTuple):
    """A literal before sorts are known: terms are still lark tokens."""
    kind: str
    atom: object = None
    size: int = None
    time: object = None
    arith: tuple = ()

    def time_tokens(self):
        if self.time is not None:
            yield self.time
        for token in self.arith:
            yield token

    def arg_tokens(self):
        return self.atom.args if self.atom is not None else ()


class SyntaxTree(Transformer):
    def atom(self, items):
        name = items[0]
        return RawAtom(str(name), tuple(items[1:]), name)

    def top(self, items):
        return RawAtom(TOP, (), None)

    def plain(self, items):
        return RawLiteral('plain', atom=items[0])

    def at(self, items):
        return RawLiteral('at', atom=items[1], time=items[0])

    def win_box(self, items):
        return RawLiteral('win_box', atom=items[1], size=int(items[0]))

    def win_diamond(self, items):
        return RawLiteral('win_diamond', atom=items[1], size=int(items[0]))

    def win_at(self, items):
        return RawLiteral('win_at', atom=items[2], size=int(items[0]), time=items[1])

    def leq(self, items):
        return RawLiteral('leq', arith=tuple(items))

    def plus(self, items):
        return RawLiteral('plus', arith=tuple(items))

    def existentials(self, items):
        return tuple(items)

    def body(self, items):
        return tuple(items)

    def head(self, items):
        if items and isinstance(items[0], tuple) and not isinstance(items[0], RawLiteral):
            return items[0], tuple(items[1:])
        return (), tuple(items)

    def rule(self, items):
        return items[0], items[1]

    def program(self, items):
        return list(items)

    def query(self, items):
        if items and not isinstance(items[0], RawLiteral):
            return items[0], tuple(items[1:])
        return (), tuple(items)

    def fact_line(self, items):
        return items[0], items[1]

    def stream(self, items):
        return items[0], items[1], list(items[2:])

    def ex_body(self, items):
        return tuple(items)

    def ex_head(self, items):
        if items and not isinstance(items[0], RawAtom):
            return items[0], tuple(items[1:])
        return (), tuple(items)

    def ex_rule(self, items):
        return 'rule', items[0], items[1]

    def ex_fact(self, items):
        return 'fact', items[0]

    def exrules(self, items):
        return list(items)


def _span(token):
    return SourceSpan.of(token) if isinstance(token, Token) else None


def _parse(text, start):
    try:
        tree = _parser.parse(text, start=start)
        return SyntaxTree().transform(tree)
    except UnexpectedCharacters as exc:
        raise ParseError(ParseErrorKind.LEXICAL, 'unexpected character %r' % (exc.char,),
                         SourceSpan(exc.line, exc.column, exc.pos_in_stream))
    except UnexpectedInput as exc:
        token = getattr(exc, 'token', None)
        found = 'end of input' if token is None or token.type == '$END' else repr(str(token))
        raise ParseError(ParseErrorKind.SYNTACTIC, 'unexpected %s' % found, _span(token))
    except VisitError as exc:
        if isinstance(exc.orig_exc, ParseError):
            raise exc.orig_exc
        raise


class _TermBuilder(object):
    """Turns tokens into terms for one rule or query once variable sorts are known."""

    def __init__(self, literals, existentials=(), time_of=None):
        self.time_vars = {}
        self.abstract_vars = {}
        for lit in literals:
            for token in lit.time_tokens():
                if token.type == 'VARIABLE':
                    self.time_vars.setdefault(str(token), token)
            positions = time_of(lit.atom) if time_of and lit.atom is not None else ()
            for index, token in enumerate(lit.arg_tokens()):
                if token.type != 'VARIABLE':
                    continue
                if index in positions:
                    self.time_vars.setdefault(str(token), token)
                else:
                    self.abstract_vars.setdefault(str(token), token)
        for token in existentials:
            if str(token) in self.time_vars:
                raise ParseError(ParseErrorKind.SORT_CONFLICT,
                                 'existential variable %s is used as a time term' % token, _span(token))
        clash = sorted(set(self.time_vars) & set(self.abstract_vars))
        if clash:
            name = clash[0]
            raise ParseError(ParseErrorKind.SORT_CONFLICT,
                             'variable %s is used both as a time and as an abstract term' % name,
                             _span(self.abstract_vars[name]))

    def time(self, token):
        if token.type == 'INT':
            return Term.time(int(token))
        if token.type != 'VARIABLE':
            raise ParseError(ParseErrorKind.SORT_CONFLICT, '%s cannot stand for a time point' % token,
                             _span(token))
        return Term.time_var(str(token))

    def abstract(self, token):
        if token.type == 'NULL':
            raise ParseError(ParseErrorKind.NULL_IN_SOURCE, 'null %s in source text' % token, _span(token))
        if token.type == 'VARIABLE':
            return Term.var(str(token))
        return Term.const(str(token))

    def atom(self, raw, positions=()):
        args = tuple(self.time(t) if i in positions else self.abstract(t) for i, t in enumerate(raw.args))
        return NormalAtom(raw.pred, args)

    def literal(self, lit):
        if lit.kind == 'leq':
            return ArithAtom.leq(*(self.time(t) for t in lit.arith))
        if lit.kind == 'plus':
            return ArithAtom.plus(*(self.time(t) for t in lit.arith))
        atom = self.atom(lit.atom)
        if lit.kind == 'plain':
            return Plain(atom)
        if lit.kind == 'at':
            return At(self.time(lit.time), atom)
        if lit.kind == 'win_box':
            return WinBox(lit.size, atom)
        if lit.kind == 'win_diamond':
            return WinDiamond(lit.size, atom)
        return WinAt(lit.size, self.time(lit.time), atom)


def _literal_token(lit):
    if lit.atom is not None and lit.atom.token is not None:
        return lit.atom.token
    return lit.time if lit.time is not None else (lit.arith[0] if lit.arith else None)


def _build_rule(rule_id, body, declared, head):
    for lit in head:
        if lit.kind in ('win_box', 'win_diamond', 'win_at'):
            raise ParseError(ParseErrorKind.HEAD_WINDOW,
                             'window operators are not allowed in rule heads', _span(_literal_token(lit)))
        if lit.kind in ('leq', 'plus'):
            raise ParseError(ParseErrorKind.SYNTACTIC,
                             'arithmetic atoms are not allowed in rule heads', _span(_literal_token(lit)))
    for lit in body + head:
        if lit.atom is not None:
            check_reserved(lit.atom.pred, _span(lit.atom.token))

    terms = _TermBuilder(body + head, declared)
    body_atoms = tuple(terms.literal(lit) for lit in body)
    head_atoms = tuple(terms.literal(lit) for lit in head)

    body_names = {v.value for alpha in body_atoms for v in atom_variables(alpha)}
    for token in declared:
        if str(token) in body_names:
            raise ParseError(ParseErrorKind.SYNTACTIC,
                             'existential variable %s also occurs in the body' % token, _span(token))
    existentials = []
    for alpha in head_atoms:
        for v in atom_variables(alpha):
            if v.value not in body_names and v not in existentials:
                if v.sort == Sort.TIME:
                    raise ParseError(ParseErrorKind.SORT_CONFLICT,
                                     'time variable %s occurs only in the head' % v.value)
                existentials.append(v)
    return Rule(rule_id, body_atoms, head_atoms, tuple(existentials))


def parse_program(text):
    """Parse a ``.lars`` program; rules are numbered from 1 in file order."""
    statements = _parse(text, 'program')
    rules = tuple(_build_rule(str(index), body, head[0], head[1])
                  for index, (body, head) in enumerate(statements, 1))
    program = Program(rules)
    signature = infer_sorts(program)
    log.debug('parsed %d rules over %d predicates', len(rules), len(signature))
    return Program(rules, signature)


def parse_stream(text):
    low, high, lines = _parse(text, 'stream')
    if int(low) != 0:
        raise ParseError(ParseErrorKind.SYNTACTIC, 'timelines start at 0, got %s' % low, _span(low))
    timeline = Timeline(0, int(high))
    terms = _TermBuilder(())
    facts = {}
    for point, raw in lines:
        if int(point) not in timeline:
            raise ParseError(ParseErrorKind.SYNTACTIC,
                             'fact at %s lies outside timeline %s' % (point, timeline), _span(point))
        if raw.pred == TOP:
            raise ParseError(ParseErrorKind.SYNTACTIC, 'top is not a stream fact', _span(point))
        check_reserved(raw.pred, _span(raw.token))
        for token in raw.args:
            if token.type == 'VARIABLE':
                raise ParseError(ParseErrorKind.SYNTACTIC, 'stream facts are ground, found %s' % token,
                                 _span(token))
        facts.setdefault(int(point), set()).add(terms.atom(raw))
    stream = Stream(timeline, facts)
    infer_sorts(Program(), stream)
    return stream


def parse_query(text):
    """Parse a BCQ; every variable is existentially closed whether declared or not."""
    declared, literals = _parse(text, 'query')
    for lit in literals:
        if lit.atom is not None:
            check_reserved(lit.atom.pred, _span(lit.atom.token))
    terms = _TermBuilder(literals)
    atoms = tuple(terms.literal(lit) for lit in literals)
    variables = {}
    for token in declared:
        name = str(token)
        variables[name] = Term.time_var(name) if name in terms.time_vars else Term.var(name)
    for alpha in atoms:
        for v in atom_variables(alpha):
            variables.setdefault(v.value, v)
    return BCQ(tuple(variables.values()), atoms)


def parse_exrules(text):
    """Parse an ``.exr`` file into ``(rules, facts)``.

    Time positions are recognised from the auxiliary predicate names, so the
    output of the rewriting reads back with the sorts it was written with.
    """
    rules = []
    facts = set()
    for index, statement in enumerate(_parse(text, 'exrules'), 1):
        if statement[0] == 'fact':
            raw = statement[1]
            terms = _TermBuilder((RawLiteral('plain', atom=raw),), time_of=aux_time_positions)
            if any(token.type == 'VARIABLE' for token in raw.args):
                raise ParseError(ParseErrorKind.SYNTACTIC, 'facts are ground, found %s' % raw.pred,
                                 _span(raw.token))
            facts.add(_ex_atom(terms, raw))
            continue
        _, body, (declared, head) = statement
        literals = [lit if isinstance(lit, RawLiteral) else RawLiteral('plain', atom=lit) for lit in body]
        literals += [RawLiteral('plain', atom=raw) for raw in head]
        terms = _TermBuilder(literals, declared, time_of=aux_time_positions)
        body_atoms = tuple(_ex_literal(terms, lit) for lit in literals[:len(body)])
        head_atoms = tuple(_ex_atom(terms, raw) for raw in head)
        body_vars = {v for a in body_atoms for v in a.variables()}
        existentials = []
        for atom in head_atoms:
            for v in atom.variables():
                if v not in body_vars and v not in existentials:
                    existentials.append(v)
        rules.append(ExRule(str(index), body_atoms, head_atoms, tuple(existentials)))
    return tuple(rules), frozenset(facts)


def _ex_atom(terms, raw):
    if raw.pred in (LEQ, PLUS_EQ):
        return NormalAtom(raw.pred, tuple(terms.time(t) for t in raw.args))
    return terms.atom(raw, aux_time_positions(raw))


def _ex_literal(terms, lit):
    if lit.kind in ('leq', 'plus'):
        return terms.literal(lit)
    return _ex_atom(terms, lit.atom)
