"""starcrit: exhaustive search and verification of star-critical Ramsey
numbers for cycles versus the 5-clique, at desk scale and mechanically
checkable end to end."""

__version__ = "0.1.0"

from .arrows import (
    Certificate,
    RamseyInstance,
    brute_force_arrows,
    brute_force_critical_catalog,
    star_critical,
    star_host_arrows,
)
from .canon import (
    IsoCatalog,
    are_isomorphic,
    automorphism_orbits,
    canonical_form,
    canonical_labeling,
)
from .constructions import (
    CliquePattern,
    Coloring,
    c4_star_witness,
    critical_catalog,
    lower_bound_coloring,
    unique_c4_critical,
    verify_coloring,
)
from .detect import (
    clique_partition,
    cycle_extension_violations,
    find_cycle_of_length,
    has_clique,
    has_cycle_of_length,
    has_independent_set,
    is_cycle_free,
    min_degree_bound_holds,
    ramsey_number,
)
from .generate import (
    EnumSpec,
    ExhaustionRecord,
    RamseyNumberCertificate,
    enumerate_cycle_free,
    verify_ramsey_number,
)
from .graphs import (
    Graph,
    HostGraph,
    complement_within,
    complete,
    cycle,
    disjoint_union,
    empty,
    graph6_decode,
    graph6_encode,
    host_complete,
    host_minus_clique,
    host_minus_star,
)

__all__ = [
    "Certificate",
    "CliquePattern",
    "Coloring",
    "EnumSpec",
    "ExhaustionRecord",
    "Graph",
    "HostGraph",
    "IsoCatalog",
    "RamseyInstance",
    "RamseyNumberCertificate",
    "are_isomorphic",
    "automorphism_orbits",
    "brute_force_arrows",
    "brute_force_critical_catalog",
    "c4_star_witness",
    "canonical_form",
    "canonical_labeling",
    "clique_partition",
    "complement_within",
    "complete",
    "critical_catalog",
    "cycle",
    "cycle_extension_violations",
    "disjoint_union",
    "empty",
    "enumerate_cycle_free",
    "find_cycle_of_length",
    "graph6_decode",
    "graph6_encode",
    "has_clique",
    "has_cycle_of_length",
    "has_independent_set",
    "host_complete",
    "host_minus_clique",
    "host_minus_star",
    "is_cycle_free",
    "lower_bound_coloring",
    "min_degree_bound_holds",
    "ramsey_number",
    "star_critical",
    "star_host_arrows",
    "unique_c4_critical",
    "verify_coloring",
    "verify_ramsey_number",
]
