"""Embed labelled transition systems into Petri net reachability graphs.

The pipeline: decide embeddability via regions (exact rational arithmetic),
synthesize witnessing nets, search minimum-alphabet label splittings when an
LTS does not embed as-is, and generate subset-sum gadget LTSs whose known
answers exercise the whole stack end to end.
"""

from .linalg import RatMatrix, RatVector, in_span, nullspace_basis, rref
from .lts import (
    CycleBase,
    Edge,
    FormatError,
    Lts,
    SpanningTree,
    cycle_base,
    edge_parikh,
    format_lts,
    parse_lts,
    spanning_tree,
    state_parikh,
    validate,
)
from .petri import (
    BoundExceeded,
    NotEnabled,
    PetriNet,
    Verification,
    enabled,
    fire,
    format_net,
    marking_name,
    parse_net,
    reachability_graph,
    synthesize,
    verify_embedding,
)
from .reduction import (
    ReductionParams,
    SubsetSumInstance,
    build_lts,
    extract_solution,
    format_instance,
    index_set_splitting,
    params,
    parse_instance,
    subset_sum_brute,
    unit_word,
)
from .regions import (
    CycleInconsistent,
    EmbeddabilityReport,
    NotEmbeddable,
    Region,
    effect_space,
    is_embeddable,
    region_from_effect,
    separating_regions,
    ssp_solvable,
    state_signature,
)
from .splitting import (
    LabelSplitting,
    SearchBudgetExhausted,
    SplitOutcome,
    apply_splitting,
    decide,
    from_partitions,
    identity_splitting,
    optimize,
    parse_splitting,
    serialize_splitting,
    set_partitions,
    validate_splitting,
)

__version__ = "0.1.0"
