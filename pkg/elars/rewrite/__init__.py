from elars.rewrite.exrules import (
    AT_PREFIX, BOX_PREFIX, ExBCQ, ExRule, NullScope, at_name, aux_time_positions, box_name,
    original_predicate, time_indexed_name,
)
from elars.rewrite.rewriter import (
    RewriteOutput, auxiliary_rules, eliminate_diamond, eliminate_diamond_query, prune_auxiliary,
    rewrite_program, rewrite_query, rewrite_rule, rewrite_stream, rewrite_timeline,
)
from elars.rewrite.trimming import clip_query, clip_windows, compile_query, compiled_query, drop_out_of_scope
