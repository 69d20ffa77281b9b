from enum import Enum
from typing import NamedTuple

from elars.errors import ElarsError


class ParseErrorKind(Enum):
    LEXICAL = 'lexical'
    SYNTACTIC = 'syntactic'
    SORT_CONFLICT = 'sort-conflict'
    ARITY_CONFLICT = 'arity-conflict'
    NULL_IN_SOURCE = 'null-in-source'
    HEAD_WINDOW = 'head-window'


class SourceSpan(NamedTuple):
    line: int
    column: int
    offset: int

    @classmethod
    def of(cls, token):
        """Span of a lark token, or None for tokens without position."""
        if token is None or getattr(token, 'line', None) is None:
            return None
        return cls(token.line, token.column, token.start_pos)

    def __str__(self):
        return 'line %d, column %d' % (self.line, self.column)


class ParseError(ElarsError):
    def __init__(self, kind, message, span=None):
        super(ParseError, self).__init__(message)
        self.kind = kind
        self.message = message
        self.span = span

    def __str__(self):
        if self.span is None:
            return '%s error: %s' % (self.kind.value, self.message)
        return '%s error at %s: %s' % (self.kind.value, self.span, self.message)
