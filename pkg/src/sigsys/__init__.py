"""Integer signature systems of graphs: feasibility, verdicts and certificates."""

from .graphs import (
    ArcTable,
    Graph,
    GraphError,
    GuardExceeded,
    VertexMap,
    categorical_product,
    check_hom,
    count_4cycles,
    enumerate_homs,
    gen_named,
    is_bipartite,
    mycielski_cone,
)
from .intlin import GroupElement, QuotientPresentation, hnf, quotient, snf, solve_diophantine
from .system import (
    SignatureSystem,
    SystemSolution,
    Verdict,
    WalkCertificate,
    build_system,
    extract_certificate,
    no_hom_test,
    push_solution,
    solve_system,
    verdict,
    verify_certificate,
    walk_signature,
)
from .valued import D1, D2, D3, RelationSet, ValuedDigraph, builtin, custom_odd_cycle_dset, relations_from, theta

__all__ = [
    "ArcTable",
    "Graph",
    "GraphError",
    "GuardExceeded",
    "VertexMap",
    "categorical_product",
    "check_hom",
    "count_4cycles",
    "enumerate_homs",
    "gen_named",
    "is_bipartite",
    "mycielski_cone",
    "GroupElement",
    "QuotientPresentation",
    "hnf",
    "quotient",
    "snf",
    "solve_diophantine",
    "SignatureSystem",
    "SystemSolution",
    "Verdict",
    "WalkCertificate",
    "build_system",
    "extract_certificate",
    "no_hom_test",
    "push_solution",
    "solve_system",
    "verdict",
    "verify_certificate",
    "walk_signature",
    "D1",
    "D2",
    "D3",
    "RelationSet",
    "ValuedDigraph",
    "builtin",
    "custom_odd_cycle_dset",
    "relations_from",
    "theta",
]

__version__ = "0.1.0"
