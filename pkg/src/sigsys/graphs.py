"""Finite graphs, arc tables, named constructions and homomorphisms."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

DEFAULT_HOM_GUARD = 10**8


class GraphError(ValueError):
    pass


class GuardExceeded(RuntimeError):
    """A brute-force search would exceed its configured size bound."""


def _norm_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Undirected graph on vertices ``0..n-1``; a loop is the edge ``(u, u)``."""

    n: int
    edges: frozenset[tuple[int, int]]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), labels: Sequence[str] | None = None):
        if n < 0:
            raise GraphError(f"negative vertex count {n}")
        norm = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for {n} vertices")
            norm.add(_norm_edge(u, v))
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n:
                raise GraphError("one label per vertex required")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(norm))
        object.__setattr__(self, "labels", labels)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self.edges)})"

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        nb: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return tuple(tuple(sorted(s)) for s in nb)

    @cached_property
    def adj_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adj)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj_sets[u]

    @property
    def is_simple(self) -> bool:
        return all(u != v for u, v in self.edges)

    @cached_property
    def arcs(self) -> ArcTable:
        return ArcTable.of(self)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v in self.adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == self.n

    def label(self, u: int) -> str:
        return self.labels[u] if self.labels else str(u)


@dataclass(frozen=True)
class ArcTable:
    """Lexicographically ordered arcs of a graph; fixes the basis of Z^A(H)."""

    arcs: tuple[tuple[int, int], ...]
    index: dict[tuple[int, int], int] = field(compare=False, repr=False)

    @classmethod
    def of(cls, g: Graph) -> ArcTable:
        arcs: set[tuple[int, int]] = set()
        for u, v in g.edges:
            arcs.add((u, v))
            arcs.add((v, u))
        ordered = tuple(sorted(arcs))
        return cls(ordered, {a: i for i, a in enumerate(ordered)})

    def __len__(self) -> int:
        return len(self.arcs)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.arcs)

    def __getitem__(self, i: int) -> tuple[int, int]:
        return self.arcs[i]

    def reverse(self, i: int) -> int:
        u, v = self.arcs[i]
        return self.index[(v, u)]


@dataclass(frozen=True)
class VertexMap:
    source: Graph
    target: Graph
    image: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "image", tuple(self.image))
        if len(self.image) != self.source.n:
            raise GraphError("image length must equal source vertex count")
        if any(not 0 <= x < self.target.n for x in self.image):
            raise GraphError("image vertex out of range")

    def __call__(self, u: int) -> int:
        return self.image[u]


# -- constructions -----------------------------------------------------------


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    return Graph(n, itertools.combinations(range(n), 2))


def looped_path(n: int) -> Graph:
    """Path 0..n with a loop at 0."""
    if n < 1:
        raise GraphError("looped path needs n >= 1")
    return Graph(n + 1, [(0, 0)] + [(i, i + 1) for i in range(n)])


def u53() -> Graph:
    """U(5,3): vertices (i,{j,k}) with i not in {j,k}; adjacency by mutual membership."""
    verts = []
    for i in range(1, 6):
        for j, k in itertools.combinations([x for x in range(1, 6) if x != i], 2):
            verts.append((i, frozenset((j, k))))
    edges = []
    for a, b in itertools.combinations(range(len(verts)), 2):
        (i, s), (i2, s2) = verts[a], verts[b]
        if i in s2 and i2 in s:
            edges.append((a, b))
    labels = [f"({i},{{{','.join(map(str, sorted(s)))}}})" for i, s in verts]
    return Graph(len(verts), edges, labels)


def c7_power3() -> Graph:
    """C7 with the chords {i, i+3}."""
    return Graph(7, [(i, (i + 1) % 7) for i in range(7)] + [(i, (i + 3) % 7) for i in range(7)])


NAMED = ("cycle", "complete", "looped_path", "u53", "c7_power3")


def gen_named(name: str, n: int | None = None) -> Graph:
    if name == "cycle":
        if n is None:
            raise GraphError("cycle needs n")
        return cycle(n)
    if name == "complete":
        if n is None:
            raise GraphError("complete needs n")
        return complete(n)
    if name == "looped_path":
        if n is None:
            raise GraphError("looped_path needs n")
        return looped_path(n)
    if name == "u53":
        return u53()
    if name == "c7_power3":
        return c7_power3()
    raise GraphError(f"unknown graph name {name!r}")


def categorical_product(g: Graph, g2: Graph) -> Graph:
    """Vertex ``(u, u2)`` is numbered ``u * g2.n + u2``."""
    m = g2.n
    edges = set()
    for u, v in g.edges:
        for u2, v2 in g2.edges:
            edges.add(_norm_edge(u * m + u2, v * m + v2))
            edges.add(_norm_edge(u * m + v2, v * m + u2))
    labels = [f"({g.label(u)},{g2.label(u2)})" for u in range(g.n) for u2 in range(m)]
    return Graph(g.n * m, edges, labels)


def mycielski_cone(g: Graph, n: int) -> Graph:
    """The n-th cone over g: level i copy of g at ``i * g.n + u``, apex last.

    Built as the product with the looped path, with level n collapsed to a
    single apex (parallel edges merged).
    """
    if n < 1:
        raise GraphError("cone level must be >= 1")
    if not g.is_simple:
        raise GraphError("cone base must be loopless")
    k = g.n
    apex = n * k

    def vid(u: int, level: int) -> int:
        return apex if level == n else level * k + u

    edges = set()
    for u, v in g.edges:
        edges.add(_norm_edge(vid(u, 0), vid(v, 0)))
        for i in range(n):
            edges.add(_norm_edge(vid(u, i), vid(v, i + 1)))
            edges.add(_norm_edge(vid(v, i), vid(u, i + 1)))
    labels = [f"({g.label(u)},{i})" for i in range(n) for u in range(k)] + ["apex"]
    return Graph(n * k + 1, edges, labels)


def generalised_mycielski(levels: Sequence[int]) -> Graph:
    """Iterated cones starting from K2; ``levels[i]`` is the level of cone i+1."""
    g = complete(2)
    for n in levels:
        g = mycielski_cone(g, n)
    return g


# -- predicates --------------------------------------------------------------


def is_bipartite(g: Graph) -> bool:
    colour = [-1] * g.n
    for s in range(g.n):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for v in g.adj[u]:
                if colour[v] < 0:
                    colour[v] = 1 - colour[u]
                    stack.append(v)
                elif colour[v] == colour[u]:
                    return False
    return True


def count_4cycles(g: Graph) -> int:
    """4-cycles up to rotation and reflection; via common neighbours of diagonals."""
    if not g.is_simple:
        raise GraphError("count_4cycles needs a simple graph")
    total = 0
    for u, w in itertools.combinations(range(g.n), 2):
        c = len(g.adj_sets[u] & g.adj_sets[w])
        total += c * (c - 1) // 2
    return total // 2


def shortest_odd_cycle(g: Graph) -> list[int] | None:
    """Vertices of a shortest odd cycle in order, or None when bipartite."""
    best: list[int] | None = None
    for s in range(g.n):
        # BFS in the bipartite double cover: reach (s, odd parity)
        start = (s, 0)
        parent = {start: None}
        queue = [start]
        for node in queue:
            u, p = node
            for v in g.adj[u]:
                nxt = (v, 1 - p)
                if nxt not in parent:
                    parent[nxt] = node
                    queue.append(nxt)
        goal = (s, 1)
        if goal not in parent:
            continue
        walk = []
        node = goal
        while node is not None:
            walk.append(node[0])
            node = parent[node]
        walk = walk[::-1][:-1]
        if len(set(walk)) != len(walk):
            continue
        if best is None or len(walk) < len(best):
            best = walk
    return best


# -- homomorphisms -----------------------------------------------------------


def check_hom(f: VertexMap) -> bool:
    tgt = f.target
    return all(tgt.has_edge(f.image[u], f.image[v]) for u, v in f.source.edges)


def enumerate_homs(
    d: Graph,
    h: Graph,
    guard: int = DEFAULT_HOM_GUARD,
    arcs: Iterable[tuple[int, int]] | None = None,
) -> list[VertexMap]:
    """All homomorphisms d -> h in lexicographic order of image tuples.

    ``arcs`` overrides d's edge set (used for valued digraphs); direction is
    irrelevant because h is symmetric.
    """
    return [VertexMap(d, h, img) for img in iter_hom_images(d.n, arcs if arcs is not None else d.edges, h, guard)]


def iter_hom_images(
    n: int, arcs: Iterable[tuple[int, int]], h: Graph, guard: int = DEFAULT_HOM_GUARD
) -> Iterator[tuple[int, ...]]:
    if h.n**n > guard:
        raise GuardExceeded(f"{h.n}^{n} candidate maps exceed guard {guard}")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for u, v in arcs:
        nbrs[u].add(v)
        nbrs[v].add(u)
    if n == 0:
        yield ()
        return
    self_loop = [i in nbrs[i] for i in range(n)]
    hv = range(h.n)
    img = [0] * n

    # forward checking: each assignment prunes the domains of later neighbours
    def rec(i: int, domains: list[frozenset[int] | None]) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(img)
            return
        dom = domains[i]
        cands = sorted(dom) if dom is not None else hv
        for x in cands:
            if self_loop[i] and not h.has_edge(x, x):
                continue
            img[i] = x
            new = domains
            ok = True
            fwd = [j for j in nbrs[i] if j > i]
            if fwd:
                new = list(domains)
                ax = h.adj_sets[x]
                for j in fwd:
                    nd = ax if new[j] is None else new[j] & ax
                    if not nd:
                        ok = False
                        break
                    new[j] = nd
            if ok:
                yield from rec(i + 1, new)

    yield from rec(0, [None] * n)


def walk_is_closed_in(g: Graph, walk: Sequence[int]) -> bool:
    L = len(walk)
    return L > 0 and all(g.has_edge(walk[i], walk[(i + 1) % L]) for i in range(L))


# -- text formats ------------------------------------------------------------


def format_graph(g: Graph) -> str:
    lines = [f"p {g.n}"]
    lines += [f"e {u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    """Native ``p n`` / ``e u v`` format (0-indexed) or DIMACS ``p edge n m`` (1-indexed)."""
    n = None
    dimacs = False
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#") or line.startswith("c"):
            continue
        parts = line.split()
        try:
            if parts[0] == "p":
                if n is not None:
                    raise GraphError(f"line {lineno}: duplicate p line")
                if len(parts) >= 3 and not parts[1].lstrip("-").isdigit():
                    dimacs = True
                    n = int(parts[2])
                else:
                    n = int(parts[1])
            elif parts[0] == "e":
                if n is None:
                    raise GraphError(f"line {lineno}: edge before p line")
                u, v = int(parts[1]), int(parts[2])
                if dimacs:
                    u, v = u - 1, v - 1
                edges.append((u, v))
            else:
                raise GraphError(f"line {lineno}: unrecognised line {line!r}")
        except (IndexError, ValueError) as exc:
            if isinstance(exc, GraphError):
                raise
            raise GraphError(f"line {lineno}: malformed {line!r}") from exc
    if n is None:
        raise GraphError("missing p line")
    return Graph(n, edges)


def read_graph(path) -> Graph:
    with open(path) as fh:
        return parse_graph(fh.read())


def write_graph(g: Graph, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_graph(g))
