from elars.core.terms import (
    LEQ, PLUS_EQ, TOP, TOP_ATOM, ArithAtom, ArithOp, NormalAtom, NullKey, PredicateSig,
    Sort, Term, TermKind, atom_of, from_atom, substitute, unify,
)
from elars.core.program import (
    BCQ, At, LarsAtom, Plain, Program, Rule, WinAt, WinBox, WinDiamond, WINDOWED,
    atom_variables, inner_atom, substitute_atom,
)
from elars.core.stream import Stream, Timeline
from elars.core.semantics import (
    bcq_holds, find_matches, head_out_of_scope, holds, is_model, iter_matches,
    least_model, make_window, satisfies_rule,
)
