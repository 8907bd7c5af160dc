"""Valued digraphs and the relation lattices they stamp out on a host graph."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .graphs import DEFAULT_HOM_GUARD, ArcTable, Graph, GraphError, iter_hom_images, shortest_odd_cycle


@dataclass(frozen=True)
class ValuedDigraph:
    n: int
    arcs: tuple[tuple[int, int], ...]
    values: tuple[int, ...]
    name: str = "custom"

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(tuple(a) for a in self.arcs))
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if len(self.arcs) != len(self.values):
            raise GraphError("one value per arc required")
        if len(set(self.arcs)) != len(self.arcs):
            raise GraphError("duplicate arc in valued digraph")
        for u, v in self.arcs:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"arc ({u}, {v}) out of range")


# a,b,c,d = 0,1,2,3
D1 = ValuedDigraph(4, ((0, 1), (2, 1), (2, 3), (0, 3)), (1, -1, 1, -1), "D1")
D2 = ValuedDigraph(4, ((0, 1), (1, 2), (2, 3), (3, 0)), (1, 1, 1, 1), "D2")
D3 = ValuedDigraph(3, ((0, 1), (1, 2), (2, 0)), (1, 1, 0), "D3")

BUILTINS = {"D1": D1, "D2": D2, "D3": D3}


def builtin(name: str) -> ValuedDigraph:
    try:
        return BUILTINS[name.upper()]
    except KeyError:
        raise GraphError(f"unknown valued digraph {name!r}; expected one of D1, D2, D3") from None


@dataclass(frozen=True)
class RelationSet:
    arc_table: ArcTable
    relations: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.relations)

    def __iter__(self):
        return iter(self.relations)


def _canonical(vec: Sequence[int]) -> tuple[int, ...] | None:
    """Sign-normalised copy (first nonzero entry positive), or None for zero."""
    for x in vec:
        if x:
            return tuple(vec) if x > 0 else tuple(-y for y in vec)
    return None


def _collect(vectors: Iterable[Sequence[int]], table: ArcTable) -> RelationSet:
    seen = {c for v in vectors if (c := _canonical(v)) is not None}
    return RelationSet(table, tuple(sorted(seen)))


def iter_relations(d: ValuedDigraph, h: Graph, guard: int = DEFAULT_HOM_GUARD):
    table = h.arcs
    m = len(table)
    idx = table.index
    weighted = [(a, w) for a, w in zip(d.arcs, d.values) if w]
    for img in iter_hom_images(d.n, d.arcs, h, guard):
        vec = [0] * m
        for (u, v), w in weighted:
            vec[idx[(img[u], img[v])]] += w
        yield vec


def relations_from(d: ValuedDigraph, h: Graph, guard: int = DEFAULT_HOM_GUARD) -> RelationSet:
    """One relation per homomorphism of d into h (zero-valued arcs still constrain)."""
    return _collect(iter_relations(d, h, guard), h.arcs)


def theta(dset: Sequence[ValuedDigraph], h: Graph, guard: int = DEFAULT_HOM_GUARD) -> RelationSet:
    vecs: list[Sequence[int]] = []
    for d in dset:
        vecs.extend(iter_relations(d, h, guard))
    return _collect(vecs, h.arcs)


def custom_odd_cycle_dset(h: Graph) -> ValuedDigraph:
    """h itself, valued +1 forward / -1 backward on a shortest odd cycle, 0 elsewhere."""
    cyc = shortest_odd_cycle(h)
    if cyc is None:
        raise GraphError("graph is bipartite; it has no odd cycle")
    L = len(cyc)
    val = {}
    for i in range(L):
        a, b = cyc[i], cyc[(i + 1) % L]
        val[(a, b)] = 1
        val[(b, a)] = -1
    arcs = tuple(h.arcs)
    return ValuedDigraph(h.n, arcs, tuple(val.get(a, 0) for a in arcs), "wtd")


def format_valued(d: ValuedDigraph) -> str:
    lines = [f"p {d.n}"] + [f"a {u} {v} {w}" for (u, v), w in zip(d.arcs, d.values)]
    return "\n".join(lines) + "\n"


def parse_valued(text: str, name: str = "custom") -> ValuedDigraph:
    n = None
    arcs, values = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            if parts[0] == "p":
                n = int(parts[1])
            elif parts[0] == "a":
                arcs.append((int(parts[1]), int(parts[2])))
                values.append(int(parts[3]))
            else:
                raise GraphError(f"line {lineno}: unrecognised line {line!r}")
        except (IndexError, ValueError) as exc:
            if isinstance(exc, GraphError):
                raise
            raise GraphError(f"line {lineno}: malformed {line!r}") from exc
    if n is None:
        raise GraphError("missing p line")
    return ValuedDigraph(n, tuple(arcs), tuple(values), name)
