from elars.syntax.errors import ParseError, ParseErrorKind, SourceSpan
from elars.syntax.parser import parse_exrules, parse_program, parse_query, parse_stream
from elars.syntax.render import render_exrules, render_facts, render_program, render_query, render_stream
from elars.syntax.sorts import check_reserved, infer_sorts, is_reserved_predicate
