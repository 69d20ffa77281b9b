from elars.acyclicity.graph import (
    DependencyGraph, Edge, Position, WaVerdict, dependency_graph, is_weakly_acyclic, validate_witness,
)
from elars.acyclicity.grounding import partial_ground, temporal_grounding, tfree, tfree_facts, wfree
from elars.acyclicity.lwa import is_lwa, strip
from elars.acyclicity.tlwa import is_tlwa, verdict_report
