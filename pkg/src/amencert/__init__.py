"""amencert: exact amenability obstructions for expansion classes of finite
structures, and an ordering-measure laboratory over finite fields."""

__version__ = "0.1.0"

from .structures import (  # noqa: F401
    BoronStructure,
    Embedding,
    FieldPrime,
    FiniteDigraph,
    SubstructureRep,
    VecSubspace,
    boron_bn,
    boron_delta,
    boron_meet,
    enumerate_embeddings,
    is_embedding,
    substructure_reps,
)
from .expansions import (  # noqa: F401
    Expansion,
    boron_expansions,
    boron_order_of,
    boron_reduce,
    expansion_fiber,
    get_plugin,
    restrict_expansion,
    s3_expansions,
    s3_membership,
    vs_orderings,
)
from .stiemke import Dual, Primal, stiemke_solve  # noqa: F401
from .amenability import (  # noqa: F401
    BaseOutsideClassError,
    Certificate,
    ConsistencySystem,
    ConsistentMeasure,
    GeneratorSpec,
    NoObstructionReport,
    build_consistency_system,
    decide_base,
    search_obstruction,
    verify_certificate,
)
from .vmeasure import (  # noqa: F401
    ClassCountEvent,
    OrderedSpace,
    SimClass,
    count_bases_with_coords,
    least_basis_of,
    ll_and_sim,
    measure_nwk,
    natural_orderings,
    order_compare,
    sim_classes,
)
from .chains import (  # noqa: F401
    ChainState,
    CoordinateCylinder,
    CoordinatePrefix,
    CylinderEstimate,
    ValidMatrix,
    coord,
    coord_linearity_check,
    cylinder_estimate,
    enumerate_extensions,
    enumerate_valid,
    inclusion_matrix,
    is_valid_matrix,
    matrix_type,
    phi_prefix,
    pushforward_check,
    sample_uniform_ordering,
)
