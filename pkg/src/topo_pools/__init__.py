"""Mining-pool equilibria checked with combinatorial topology.

Pools are simplices of an input complex, admissible miner assignments are
facets of an output complex, and equilibrium existence is decided by the
number of distinct pool sizes, with explicit maps and reduction traces as
certificates.
"""
from .complex_core import (
    AbstractComplex,
    Complex,
    components,
    dim,
    is_connected,
    join,
    make_complex,
    skeleton,
    standard_simplex,
)
from .errors import (
    ArgumentError,
    BoundExceeded,
    ColorError,
    ConfigError,
    ConstructionError,
    DomainError,
    InternalError,
    JoinError,
    NotEqualPoolError,
    SizeError,
    TopoPoolsError,
)
from .export import complex_from_dict, complex_to_dict, dumps, to_dot
from .ksa import (
    AgreementVertex,
    KsaTask,
    Protocol,
    Reduction,
    ReductionReport,
    build_2sa_to_2dp,
    build_kdp_to_ksa,
    gen_ksa,
    ksa_solvable,
)
from .pool_tasks import (
    OutputComplex,
    Partition,
    PoolConfig,
    PoolVertex,
    full_simplex_round,
    gen_input,
    gen_output,
    merge_maps,
    no_stay_ok,
    part_of,
    partition_input,
    restrict_map,
    rotation_map,
    swap_m,
    task_carrier,
)
from .solvability import (
    Verdict,
    brute_force_equilibria,
    certify_connected_image,
    count_equilibria,
    equilibrium_verdict,
)
from .subdivision import (
    SubdivVertex,
    barycentric,
    carried_by,
    chromatic,
    find_disjoint_facets,
    iterate_div,
    ordered_bell,
)
from .topo_maps import (
    CarrierMap,
    CheckResult,
    VertexMap,
    are_homeomorphic_pools,
    check_decision,
    check_monotonic,
    check_simulation,
    is_simplicial,
)

__version__ = "0.1.0"
