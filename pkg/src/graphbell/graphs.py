"""Simple undirected graphs, named presets, and local-complementation tools.

Vertices are 0-indexed. The preset family covers the linear cluster,
the box (4-cycle) cluster, the complete-bipartite error-correction
family ec(k) = K_{2,k}, complete and star graphs for GHZ-type states,
and the K4-plus-pendant partner of ec(3) under local complementation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations, permutations

from .errors import CapacityError, DimensionError, ValidationError

LC_ORBIT_VERTEX_CAP = 8


def _norm_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """An undirected simple graph: vertex count plus edge set."""

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError(f"graphs need at least one vertex, got n={self.n}")
        normed = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise ValidationError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValidationError(f"edge {e} has an endpoint outside 0..{self.n - 1}")
            normed.add(_norm_edge(u, v))
        object.__setattr__(self, "edges", frozenset(normed))

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        return cls(n, frozenset(tuple(e) for e in edges))

    def neighbors(self, v: int) -> frozenset:
        if not 0 <= v < self.n:
            raise ValidationError(f"vertex {v} out of range for n={self.n}")
        return frozenset(u if w == v else w for (u, w) in self.edges if v in (u, w))

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "edges": self.sorted_edges()})

    @classmethod
    def from_json(cls, text: str) -> "Graph":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"invalid graph JSON: {exc}") from exc
        if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
            raise ValidationError('graph JSON must be {"n": <int>, "edges": [[u,v], ...]}')
        if not isinstance(obj["n"], int):
            raise ValidationError("graph JSON field 'n' must be an integer")
        edges = []
        for e in obj["edges"]:
            if not (isinstance(e, list) and len(e) == 2):
                raise ValidationError(f"bad edge entry {e!r}")
            edges.append((int(e[0]), int(e[1])))
        return cls.from_edges(obj["n"], edges)


def make_named_graph(preset: str, n: int | None = None) -> Graph:
    """Build one of the named graph presets.

    linear(n)        path 0-1-...-(n-1)
    box4             the 4-cycle on qubit pairs (0,1) (0,2) (1,3) (2,3)
    ec(k)            complete bipartite K_{2,k}: poles {0, k+1}, middles 1..k
    ghz_complete(n)  complete graph
    ghz_star(n)      star with center 0
    ec3_lc           K4 on {0,1,2,3} plus pendant vertex 4 attached to 0
    single_vertex    one vertex, no edges
    empty(n)         n vertices, no edges
    """
    name = preset.lower()
    if name in ("linear", "ghz_complete", "ghz_star", "ec", "empty"):
        if n is None or n < 1:
            raise ValidationError(f"preset {preset!r} needs a size n >= 1")
    if name == "linear":
        return Graph.from_edges(n, [(j, j + 1) for j in range(n - 1)])
    if name == "box4":
        return Graph.from_edges(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
    if name == "ec":
        # poles 0 and n+1 each connect to every middle vertex
        k = n
        return Graph.from_edges(
            k + 2, [(0, m) for m in range(1, k + 1)] + [(m, k + 1) for m in range(1, k + 1)]
        )
    if name == "ghz_complete":
        return Graph.from_edges(n, list(combinations(range(n), 2)))
    if name == "ghz_star":
        return Graph.from_edges(n, [(0, j) for j in range(1, n)])
    if name == "ec3_lc":
        return Graph.from_edges(5, list(combinations(range(4), 2)) + [(0, 4)])
    if name == "single_vertex":
        return Graph(1)
    if name == "empty":
        return Graph(n)
    raise ValidationError(f"unknown graph preset {preset!r}")


def local_complement(g: Graph, v: int) -> Graph:
    """Toggle every edge between two neighbours of v; an involution at v."""
    nbrs = sorted(g.neighbors(v))
    edges = set(g.edges)
    for a, b in combinations(nbrs, 2):
        e = _norm_edge(a, b)
        if e in edges:
            edges.remove(e)
        else:
            edges.add(e)
    return Graph(g.n, frozenset(edges))


# -- LC-orbit search ----------------------------------------------------
#
# Graphs on n <= 8 vertices are encoded as bitmasks over the C(n,2)
# vertex pairs, which doubles as an exact canonical hash for orbit
# deduplication.


def _pair_index(n: int):
    index = {}
    for i, (a, b) in enumerate(combinations(range(n), 2)):
        index[(a, b)] = i
    return index


def _encode(g: Graph, index) -> int:
    code = 0
    for e in g.edges:
        code |= 1 << index[e]
    return code


def _lc_on_code(code: int, v: int, n: int, index) -> int:
    nbrs = [u for u in range(n) if u != v and (code >> index[_norm_edge(u, v)]) & 1]
    for a, b in combinations(nbrs, 2):
        code ^= 1 << index[(a, b)]
    return code


def _permuted_codes(g: Graph, index) -> set:
    codes = set()
    for perm in permutations(range(g.n)):
        code = 0
        for u, v in g.edges:
            code |= 1 << index[_norm_edge(perm[u], perm[v])]
        codes.add(code)
    return codes


def lc_equivalent(
    g1: Graph, g2: Graph, up_to_permutation: bool = False
) -> tuple[bool, list[int] | None]:
    """Breadth-first search of g1's local-complementation orbit for g2.

    Returns (found, witness) where witness is the vertex sequence whose
    successive complementations map g1 onto g2 (or onto a relabelling of
    g2 when ``up_to_permutation`` is set). The search is exhaustive, so a
    False answer means no witness exists.
    """
    if g1.n != g2.n:
        raise DimensionError(f"vertex counts differ: {g1.n} vs {g2.n}")
    if g1.n > LC_ORBIT_VERTEX_CAP:
        raise CapacityError(
            f"LC orbit search is capped at {LC_ORBIT_VERTEX_CAP} vertices, got n={g1.n}"
        )
    index = _pair_index(g1.n)
    start = _encode(g1, index)
    targets = _permuted_codes(g2, index) if up_to_permutation else {_encode(g2, index)}

    if start in targets:
        return True, []
    seen = {start: (None, None)}  # code -> (parent code, vertex)
    frontier = [start]
    while frontier:
        nxt = []
        for code in frontier:
            for v in range(g1.n):
                child = _lc_on_code(code, v, g1.n, index)
                if child in seen:
                    continue
                seen[child] = (code, v)
                if child in targets:
                    path = [v]
                    back = code
                    while seen[back][0] is not None:
                        back, vertex = seen[back]
                        path.append(vertex)
                    path.reverse()
                    return True, path
                nxt.append(child)
        frontier = nxt
    return False, None
