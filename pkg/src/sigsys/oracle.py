"""Brute-force exponential-graph machinery H^C for small hosts and odd cycles C.

Used as an independent check of the linear-algebra pipeline: loops in the
component of the constants, free-group signatures of map pairs, and cone
homomorphisms read off from paths in H^C.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .graphs import Graph, GraphError, GuardExceeded, VertexMap, cycle, mycielski_cone
from .intlin import GroupElement, QuotientPresentation

DEFAULT_ORACLE_GUARD = 10**7

ExpVertex = tuple[int, ...]
Letter = tuple[tuple[int, int], int]
FreeWord = tuple[Letter, ...]


def _check_cycle(c: Graph) -> int:
    L = c.n
    if L < 3 or L % 2 == 0 or c != cycle(L):
        raise GraphError("C must be an odd cycle on 0..L-1")
    return L


def _check_guard(h: Graph, c: Graph, guard: int) -> None:
    if h.n**c.n > guard:
        raise GuardExceeded(f"H^C has {h.n}^{c.n} = {h.n ** c.n} vertices, above guard {guard}")


def exp_adjacent(h: Graph, c: Graph, f: Sequence[int], g: Sequence[int]) -> bool:
    return all(h.has_edge(f[u], g[v]) and h.has_edge(f[v], g[u]) for u, v in c.edges)


def is_loop(h: Graph, c: Graph, f: Sequence[int]) -> bool:
    return exp_adjacent(h, c, f, f)


def exp_neighbours(h: Graph, c: Graph, f: Sequence[int]) -> Iterator[ExpVertex]:
    """Neighbours of f in H^C, in lexicographic order."""
    choices = []
    for j in range(c.n):
        allowed = None
        for u in c.adj[j]:
            nb = h.adj_sets[f[u]]
            allowed = nb if allowed is None else allowed & nb
        if allowed is None:
            allowed = frozenset(range(h.n))
        if not allowed:
            return
        choices.append(sorted(allowed))
    yield from itertools.product(*choices)


def _encode(f: Sequence[int], base: int) -> int:
    code = 0
    for x in reversed(f):
        code = code * base + x
    return code


def _decode(code: int, base: int, length: int) -> ExpVertex:
    out = []
    for _ in range(length):
        code, r = divmod(code, base)
        out.append(r)
    return tuple(out)


@dataclass(frozen=True)
class Component:
    members: frozenset[ExpVertex]
    loops: tuple[ExpVertex, ...]
    parent: dict = field(default=None, compare=False, repr=False)  # encoded BFS tree

    def __len__(self) -> int:
        return len(self.members)


def component_of_constants(h: Graph, c: Graph, guard: int = DEFAULT_ORACLE_GUARD) -> Component:
    """BFS closure of the constant maps in H^C; loops are the homomorphisms C -> H found."""
    _check_guard(h, c, guard)
    base, L = max(h.n, 1), c.n
    parent: dict[int, int | None] = {}
    queue: deque[int] = deque()
    for u in range(h.n):
        code = _encode((u,) * L, base)
        parent[code] = None
        queue.append(code)
    while queue:
        code = queue.popleft()
        f = _decode(code, base, L)
        for g in exp_neighbours(h, c, f):
            gc = _encode(g, base)
            if gc not in parent:
                parent[gc] = code
                queue.append(gc)
    members = frozenset(_decode(x, base, L) for x in parent)
    loops = tuple(sorted(f for f in members if is_loop(h, c, f)))
    return Component(members, loops, parent)


def path_to_constant(h: Graph, comp: Component, f: ExpVertex) -> list[ExpVertex]:
    """Shortest path f = p_0, ..., p_m (constant) in the component's BFS tree."""
    base, L = max(h.n, 1), len(f)
    code = _encode(f, base)
    if code not in comp.parent:
        raise GraphError("map is not in the component of the constants")
    path = []
    while code is not None:
        path.append(_decode(code, base, L))
        code = comp.parent[code]
    return path


# -- free-group signatures ---------------------------------------------------


def reduce_word(word: Sequence[Letter]) -> FreeWord:
    out: list[Letter] = []
    for arc, e in word:
        if out and out[-1][0] == arc and out[-1][1] == -e:
            out.pop()
        else:
            out.append((arc, e))
    return tuple(out)


def raw_free_signature(h: Graph, c: Graph, f: Sequence[int], g: Sequence[int]) -> list[Letter]:
    """Unreduced product over i of (f(2i), g(2i+1)) (f(2i+2), g(2i+1))^-1, left to right."""
    L = _check_cycle(c)
    if not exp_adjacent(h, c, f, g):
        raise GraphError("f and g are not adjacent in H^C")
    word: list[Letter] = []
    for i in range(L):
        a, b, a2 = f[(2 * i) % L], g[(2 * i + 1) % L], f[(2 * i + 2) % L]
        word.append(((a, b), 1))
        word.append(((a2, b), -1))
    return word


def free_signature(h: Graph, c: Graph, f: Sequence[int], g: Sequence[int]) -> FreeWord:
    return reduce_word(raw_free_signature(h, c, f, g))


def abelianise(h: Graph, word: Sequence[Letter]) -> list[int]:
    idx = h.arcs.index
    vec = [0] * len(idx)
    for arc, e in word:
        vec[idx[arc]] += e
    return vec


def signature_partner(h: Graph, c: Graph, f: Sequence[int]) -> ExpVertex:
    """f itself for a loop, else its lexicographically least neighbour."""
    if is_loop(h, c, f):
        return tuple(f)
    for g in exp_neighbours(h, c, f):
        return g
    raise GraphError("isolated vertex of H^C has no signature")


def abelian_signature(h: Graph, c: Graph, f: Sequence[int], Q: QuotientPresentation) -> GroupElement:
    g = signature_partner(h, c, f)
    return Q.project(abelianise(h, free_signature(h, c, f, g)))


# -- cones -------------------------------------------------------------------


def path_to_cone_hom(h: Graph, c: Graph, path: Sequence[Sequence[int]]) -> VertexMap:
    """Homomorphism M_m(C) -> H from a path loop = p_0, ..., p_m = constant in H^C."""
    m = len(path) - 1
    if m < 1:
        raise GraphError("need a path of length >= 1 (a looped H would be required otherwise)")
    if not is_loop(h, c, path[0]):
        raise GraphError("path must start at a loop of H^C")
    if len(set(path[-1])) != 1:
        raise GraphError("path must end at a constant map")
    for a, b in zip(path, path[1:]):
        if not exp_adjacent(h, c, a, b):
            raise GraphError("consecutive path entries are not adjacent")
    cone = mycielski_cone(c, m)
    image = [path[i][u] for i in range(m) for u in range(c.n)] + [path[-1][0]]
    return VertexMap(cone, h, tuple(image))
