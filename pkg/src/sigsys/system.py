"""Signature systems: assembly, integer solving, verdicts and walk certificates."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .graphs import DEFAULT_HOM_GUARD, ArcTable, Graph, GraphError, VertexMap, check_hom, complete, is_bipartite
from .intlin import GroupElement, Infeasibility, Matrix, QuotientPresentation, diophantine, quotient
from .valued import D1, ValuedDigraph, theta

DEFAULT_SIG = (1, -1)
DEFAULT_PARITY = (2, 1)

COIND_LE_3 = "coind_le_3"
CHI_GE_4 = "chi_ge_4"
BIPARTITE = "bipartite_coind_le_2"
NO_HOM = "no_hom_to_target"
RAW = "raw_feasibility_only"


class InvalidHost(GraphError):
    pass


class CertificateError(RuntimeError):
    """A solution failed to turn into a valid walk; indicates a solver bug."""


@dataclass(frozen=True)
class SignatureSystem:
    host: Graph
    arcs: ArcTable
    dset: tuple[ValuedDigraph, ...]
    quotient: QuotientPresentation
    A: Matrix = field(repr=False)
    b: tuple[int, ...] = field(repr=False)
    variable_roles: tuple[tuple, ...] = field(repr=False)
    constraint_roles: tuple[tuple, ...] = field(repr=False)
    sig_params: tuple[int, int] = DEFAULT_SIG
    parity_params: tuple[int, int] = DEFAULT_PARITY

    @property
    def num_arcs(self) -> int:
        return len(self.arcs)

    @property
    def num_variables(self) -> int:
        return len(self.variable_roles)

    @property
    def num_equations(self) -> int:
        return len(self.A)

    @property
    def dset_names(self) -> tuple[str, ...]:
        return tuple(d.name for d in self.dset)

    @property
    def is_default(self) -> bool:
        return self.sig_params == DEFAULT_SIG and self.parity_params == DEFAULT_PARITY

    def signature_vector(self, arc_values: Sequence[int]) -> list[int]:
        """Pre-projection vector sum_(u,v) (p X_uv + q X_vu) e_(u,v)."""
        p, q = self.sig_params
        return [p * arc_values[i] + q * arc_values[self.arcs.reverse(i)] for i in range(self.num_arcs)]

    def torsion_aux(self, arc_values: Sequence[int]) -> tuple[int, ...] | None:
        """Auxiliaries k_j making the torsion rows exact, or None if impossible."""
        g = self.quotient.project(self.signature_vector(arc_values))
        if any(g.free) or any(g.torsion):
            return None
        vec = self.signature_vector(arc_values)
        out = []
        for row, d in zip(self.quotient.torsion_rows, self.quotient.invariant_factors):
            out.append(sum(r * x for r, x in zip(row, vec)) // d)
        return tuple(out)

    def residual(self, x: Sequence[int]) -> list[int]:
        return [sum(a * v for a, v in zip(row, x) if a) - rhs for row, rhs in zip(self.A, self.b)]

    def is_solution(self, sol: SystemSolution) -> bool:
        x = sol.vector()
        return len(x) == self.num_variables and not any(self.residual(x))


@dataclass(frozen=True)
class SystemSolution:
    arc_values: tuple[int, ...]
    N: int
    torsion_aux: tuple[int, ...] = ()

    def vector(self) -> list[int]:
        return [*self.arc_values, self.N, *self.torsion_aux]


def validate_host(h: Graph) -> None:
    if not h.is_simple:
        raise InvalidHost("host graph has loops")
    if h.num_edges == 0:
        raise InvalidHost("host graph has no edges")
    if not h.is_connected():
        raise InvalidHost("host graph is disconnected")


def build_system(
    h: Graph,
    dset: Sequence[ValuedDigraph] = (D1,),
    sig_params: tuple[int, int] = DEFAULT_SIG,
    parity_params: tuple[int, int] = DEFAULT_PARITY,
    guard: int = DEFAULT_HOM_GUARD,
    group: QuotientPresentation | None = None,
) -> SignatureSystem:
    validate_host(h)
    arcs = h.arcs
    m = len(arcs)
    Q = group if group is not None else quotient(m, theta(dset, h, guard).relations)
    t = len(Q.invariant_factors)
    nvar = m + 1 + t
    p, q = sig_params
    pp, qp = parity_params
    A: Matrix = []
    b: list[int] = []
    croles: list[tuple] = []

    for u in range(h.n):
        row = [0] * nvar
        for v in h.adj[u]:
            row[arcs.index[(u, v)]] += 1
            row[arcs.index[(v, u)]] -= 1
        A.append(row)
        b.append(0)
        croles.append(("flow", u))

    row = [1] * m + [-pp] + [0] * t
    A.append(row)
    b.append(qp)
    croles.append(("parity",))

    def sig_row(coeffs: Sequence[int]) -> list[int]:
        return [p * coeffs[i] + q * coeffs[arcs.reverse(i)] for i in range(m)]

    for i, coeffs in enumerate(Q.free_rows):
        A.append(sig_row(coeffs) + [0] * (1 + t))
        b.append(0)
        croles.append(("signature-free", i))
    for j, (coeffs, d) in enumerate(zip(Q.torsion_rows, Q.invariant_factors)):
        aux = [0] * t
        aux[j] = -d
        A.append(sig_row(coeffs) + [0] + aux)
        b.append(0)
        croles.append(("signature-torsion", j))

    vroles = tuple([("arc", u, v) for u, v in arcs] + [("N",)] + [("k", j) for j in range(t)])
    return SignatureSystem(h, arcs, tuple(dset), Q, A, tuple(b), vroles, tuple(croles), sig_params, parity_params)


@dataclass(frozen=True)
class SolveResult:
    solution: SystemSolution | None
    infeasibility: Infeasibility | None

    @property
    def feasible(self) -> bool:
        return self.solution is not None


def _split(S: SignatureSystem, x: Sequence[int]) -> SystemSolution:
    m = S.num_arcs
    return SystemSolution(tuple(x[:m]), x[m], tuple(x[m + 1 :]))


def decide(S: SignatureSystem) -> SolveResult:
    x, cert = diophantine(S.A, list(S.b))
    if x is None:
        return SolveResult(None, cert)
    sol = _split(S, x)
    if S.is_default:
        sol = min_reduce(S, sol)
    return SolveResult(sol, None)


def solve_system(S: SignatureSystem) -> SystemSolution | None:
    return decide(S).solution


def min_reduce(S: SignatureSystem, sol: SystemSolution) -> SystemSolution:
    """Subtract min(X_uv, X_vu) from both arcs of every edge (and the sum from N).

    Preserves flow, parity and the default signature rows; the result is
    nonnegative with at most one nonzero arc per edge.
    """
    X = list(sol.arc_values)
    N = sol.N
    for i, (u, v) in enumerate(S.arcs):
        if u < v:
            j = S.arcs.reverse(i)
            c = min(X[i], X[j])
            X[i] -= c
            X[j] -= c
            N -= c
    return SystemSolution(tuple(X), N, sol.torsion_aux)


# -- verdicts ----------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    feasible: bool
    conclusions: frozenset[str]
    provenance: str


@lru_cache(maxsize=None)
def k3_feasible(dset: tuple[ValuedDigraph, ...], sig_params, parity_params) -> bool:
    return decide(build_system(complete(3), dset, sig_params, parity_params)).feasible


def verdict(h: Graph, S: SignatureSystem | None, result: SolveResult | None) -> Verdict:
    if is_bipartite(h):
        feasible = result.feasible if result is not None else False
        return Verdict(feasible, frozenset({BIPARTITE}), "host is bipartite")
    assert S is not None and result is not None
    out = set()
    notes = []
    if not result.feasible:
        if S.dset == (D1,) and S.is_default:
            out.add(COIND_LE_3)
            notes.append("default system infeasible")
    else:
        if not k3_feasible(S.dset, S.sig_params, S.parity_params):
            out.add(CHI_GE_4)
            notes.append("feasible here, infeasible on K3")
    if not out:
        out.add(RAW)
        notes.append("no named conclusion applies")
    return Verdict(result.feasible, frozenset(out), "; ".join(notes))


# -- walks -------------------------------------------------------------------


@dataclass(frozen=True)
class WalkCertificate:
    walk: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.walk)


def walk_vector(h: Graph, walk: Sequence[int], sig_params: tuple[int, int] = DEFAULT_SIG) -> list[int]:
    L = len(walk)
    if L == 0:
        raise GraphError("empty walk")
    arcs = h.arcs
    p, q = sig_params
    vec = [0] * len(arcs)
    for j in range(L):
        a, b = walk[j], walk[(j + 1) % L]
        if not h.has_edge(a, b):
            raise GraphError(f"step ({a}, {b}) is not an edge")
        vec[arcs.index[(a, b)]] += p
        vec[arcs.index[(b, a)]] += q
    return vec


def walk_signature(
    h: Graph, Q: QuotientPresentation, walk: Sequence[int], sig_params: tuple[int, int] = DEFAULT_SIG
) -> GroupElement:
    return Q.project(walk_vector(h, walk, sig_params))


def verify_certificate(
    h: Graph, Q: QuotientPresentation, cert: WalkCertificate, sig_params: tuple[int, int] = DEFAULT_SIG
) -> bool:
    w = cert.walk
    if len(w) % 2 == 0:
        return False
    try:
        return walk_signature(h, Q, w, sig_params).is_zero()
    except GraphError:
        return False


def traversal_counts(h: Graph, walk: Sequence[int]) -> list[int]:
    arcs = h.arcs
    X = [0] * len(arcs)
    L = len(walk)
    for j in range(L):
        X[arcs.index[(walk[j], walk[(j + 1) % L])]] += 1
    return X


def solution_from_walk(S: SignatureSystem, walk: Sequence[int]) -> SystemSolution | None:
    """Traversal counts of an odd closed walk, or None if its signature is nonzero."""
    X = traversal_counts(S.host, walk)
    aux = S.torsion_aux(X)
    if aux is None:
        return None
    pp, qp = S.parity_params
    rest = sum(X) - qp
    if pp == 0 or rest % pp:
        return None
    return SystemSolution(tuple(X), rest // pp, aux)


def _euler_circuit(n: int, out: list[list[list[int]]], start: int) -> list[int]:
    """Iterative Hierholzer on a multidigraph given as out[u] = [[v, count], ...]."""
    ptr = [0] * n
    stack = [start]
    circuit = []
    while stack:
        u = stack[-1]
        lst = out[u]
        while ptr[u] < len(lst) and lst[ptr[u]][1] == 0:
            ptr[u] += 1
        if ptr[u] < len(lst):
            lst[ptr[u]][1] -= 1
            stack.append(lst[ptr[u]][0])
        else:
            circuit.append(stack.pop())
    circuit.reverse()
    return circuit[:-1]


def _support_connected(h: Graph, S_arcs: ArcTable, X: Sequence[int]) -> bool:
    adj: dict[int, set[int]] = {}
    for i, (u, v) in enumerate(S_arcs):
        if X[i]:
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
    if not adj:
        return False
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == len(adj)


def extract_certificate(S: SignatureSystem, sol: SystemSolution) -> WalkCertificate:
    """Turn a solution of a default-parameter system into an odd closed walk.

    Min-reduce, inflate every arc by one only if the support is empty or
    disconnected, then follow an Euler circuit of the traversal multidigraph.
    """
    if not S.is_default:
        raise ValueError("certificates need the default signature and parity parameters")
    if not S.is_solution(sol):
        raise CertificateError("not a solution of this system")
    h = S.host
    red = min_reduce(S, sol)
    X = list(red.arc_values)
    if any(x < 0 for x in X):
        raise CertificateError("negative traversal count after min-reduction")
    if not _support_connected(h, S.arcs, X):
        X = [x + 1 for x in X]
    out: list[list[list[int]]] = [[] for _ in range(h.n)]
    for i, (u, v) in enumerate(S.arcs):
        if X[i]:
            out[u].append([v, X[i]])
    start = next(u for u in range(h.n) if out[u])
    walk = _euler_circuit(h.n, out, start)
    if len(walk) != sum(X) or any(c for lst in out for _, c in lst):
        raise CertificateError("traversal multidigraph is not Eulerian")
    cert = WalkCertificate(tuple(walk))
    if not verify_certificate(h, S.quotient, cert, S.sig_params):
        raise CertificateError("extracted walk fails verification")
    return cert


# -- homomorphisms between hosts ---------------------------------------------


def push_arc_values(
    S: SignatureSystem, S2: SignatureSystem, psi: VertexMap, arc_values: Sequence[int]
) -> list[int]:
    """X'_(u',v') = sum of X_(u,v) over arcs with (psi(u), psi(v)) = (u', v')."""
    if not check_hom(psi):
        raise GraphError("psi is not a homomorphism")
    X2 = [0] * S2.num_arcs
    idx2 = S2.arcs.index
    for i, (u, v) in enumerate(S.arcs):
        if arc_values[i]:
            X2[idx2[(psi.image[u], psi.image[v])]] += arc_values[i]
    return X2


def push_solution(S: SignatureSystem, S2: SignatureSystem, psi: VertexMap, sol: SystemSolution) -> SystemSolution:
    """Image of a solution on S.host under psi, as a solution of S2 on psi's target."""
    if psi.source != S.host or psi.target != S2.host:
        raise GraphError("psi does not map between the two hosts")
    X2 = push_arc_values(S, S2, psi, sol.arc_values)
    aux = S2.torsion_aux(X2)
    if aux is None:
        raise CertificateError("pushed signature is nonzero; source solution invalid?")
    return SystemSolution(tuple(X2), sol.N, aux)


@dataclass(frozen=True)
class NoHomProof:
    """Feasible on the source, infeasible on the target: no homomorphism exists."""

    source: SignatureSystem
    target: SignatureSystem
    solution: SystemSolution
    witness: Infeasibility

    def check(self) -> bool:
        return self.source.is_solution(self.solution) and self.witness.check(self.target.A, list(self.target.b))


def no_hom_test(
    h: Graph,
    h2: Graph,
    dset: Sequence[ValuedDigraph] = (D1,),
    sig_params: tuple[int, int] = DEFAULT_SIG,
    parity_params: tuple[int, int] = DEFAULT_PARITY,
    guard: int = DEFAULT_HOM_GUARD,
) -> NoHomProof | None:
    S = build_system(h, dset, sig_params, parity_params, guard)
    r = decide(S)
    if not r.feasible:
        return None
    S2 = build_system(h2, dset, sig_params, parity_params, guard)
    r2 = decide(S2)
    if r2.feasible:
        return None
    return NoHomProof(S, S2, r.solution, r2.infeasibility)
