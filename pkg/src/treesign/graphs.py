"""Simple undirected graphs: construction, parsing, generation, export.

Graphs are immutable, use dense 0-based vertex ids, and store each edge
once in canonical orientation (u < v), lexicographically sorted. Inputs
that are not simple are normalized (loops dropped, parallel edges merged)
and the cleanup is reported rather than rejected.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING, Iterable, Mapping

if TYPE_CHECKING:
    from .solver import Sign
    from .trees import RootedTree

Vertex = int
Edge = tuple[int, int]

# G(n, p) draws use random.Random, i.e. MT19937 with explicit seeding;
# the float sequence is identical across platforms and CPython versions.
GNP_GENERATOR = "mt19937"

FAMILIES = (
    "path",
    "cycle",
    "complete",
    "complete_bipartite",
    "grid",
    "hypercube",
)


class ParseError(ValueError):
    """Malformed graph input; carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def canonical_edge(u: int, v: int) -> Edge:
    """Order the endpoints as (min, max); loops are rejected."""
    if u == v:
        raise ValueError(f"loop edge {u}-{u} is not allowed")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class NormalizationLog:
    """What input cleanup did: loops dropped, parallel edges merged."""

    dropped_loops: int = 0
    merged_duplicates: int = 0
    warnings: tuple[str, ...] = ()

    @property
    def clean(self) -> bool:
        return self.dropped_loops == 0 and self.merged_duplicates == 0


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on vertices 0..n-1.

    ``edges`` must be canonical (u < v), strictly increasing
    lexicographically, and within range; the constructor validates this.
    """

    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        prev: Edge | None = None
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge {u}-{v} invalid for n={self.n}")
            if prev is not None and (u, v) <= prev:
                raise ValueError("edges must be sorted and unique")
            prev = (u, v)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[Vertex, ...], ...]:
        """Sorted neighbor list per vertex (symmetric closure of edges)."""
        neighbors: list[list[Vertex]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            neighbors[u].append(v)
            neighbors[v].append(u)
        return tuple(tuple(sorted(ns)) for ns in neighbors)

    def degree(self, v: Vertex) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return u != v and canonical_edge(u, v) in self.edge_set


def make_graph(n: int, pairs: Iterable[tuple[int, int]]) -> tuple[Graph, NormalizationLog]:
    """Build the simple graph on n vertices from arbitrary endpoint pairs.

    Loops are dropped and duplicate (or reversed duplicate) edges merged;
    the log reports how many of each.
    """
    dropped = 0
    seen: set[Edge] = set()
    merged = 0
    for u, v in pairs:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"vertex index out of range for n={n}: {u}-{v}")
        if u == v:
            dropped += 1
            continue
        e = canonical_edge(u, v)
        if e in seen:
            merged += 1
        else:
            seen.add(e)
    graph = Graph(n, tuple(sorted(seen)))
    return graph, NormalizationLog(dropped, merged)


def is_connected(g: Graph) -> bool:
    """True iff every vertex is reachable from vertex 0 (true for n <= 1)."""
    if g.n <= 1:
        return True
    seen = bytearray(g.n)
    seen[0] = 1
    stack = [0]
    count = 1
    while stack:
        u = stack.pop()
        for w in g.adjacency[u]:
            if not seen[w]:
                seen[w] = 1
                count += 1
                stack.append(w)
    return count == g.n


def connected_components(g: Graph) -> list[list[Vertex]]:
    """Vertex lists of the connected components, each sorted, in order of
    smallest member."""
    seen = bytearray(g.n)
    components = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = 1
        comp = [start]
        stack = [start]
        while stack:
            u = stack.pop()
            for w in g.adjacency[u]:
                if not seen[w]:
                    seen[w] = 1
                    comp.append(w)
                    stack.append(w)
        components.append(sorted(comp))
    return components


def graph_key(g: Graph) -> str:
    """Canonical one-line identifier of a labeled graph."""
    return f"n={g.n};m={g.m};" + ",".join(f"{u}-{v}" for u, v in g.edges)


# ---------------------------------------------------------------------------
# parsing and emission


def parse_edge_list(text: str) -> tuple[Graph, NormalizationLog]:
    """Parse the plain edge-list format.

    An optional first content line holding a single integer declares the
    vertex count; every other content line holds two whitespace-separated
    0-based endpoints. Blank lines and lines starting with '#' are skipped.
    Without a header, the vertex count is 1 + the largest index seen.
    """
    pairs: list[tuple[int, int]] = []
    declared_n: int | None = None
    first_content = True
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if first_content and len(tokens) == 1:
            declared_n = _parse_index(tokens[0], lineno)
            first_content = False
            continue
        first_content = False
        if len(tokens) != 2:
            raise ParseError("expected two vertex indices", lineno)
        u = _parse_index(tokens[0], lineno)
        v = _parse_index(tokens[1], lineno)
        if declared_n is not None and (u >= declared_n or v >= declared_n):
            raise ParseError(
                f"vertex index out of range for n={declared_n}", lineno
            )
        pairs.append((u, v))
    if declared_n is None and not pairs:
        raise ParseError("empty input: no header and no edges")
    n = declared_n if declared_n is not None else 1 + max(max(p) for p in pairs)
    return make_graph(n, pairs)


def emit_edge_list(g: Graph) -> str:
    """Inverse of parse_edge_list: header line, then sorted edges."""
    lines = [str(g.n)]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> tuple[Graph, NormalizationLog]:
    """Parse the DIMACS-like format: 'c' comments, one 'p edge <n> <m>'
    header, then 1-indexed 'e <u> <v>' lines.

    A mismatch between the declared and actual edge count is recorded as a
    warning in the log, not an error.
    """
    declared: tuple[int, int] | None = None
    pairs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tokens = line.split()
        if tokens[0] == "p":
            if declared is not None:
                raise ParseError("duplicate problem header", lineno)
            if len(tokens) != 4 or tokens[1] != "edge":
                raise ParseError("malformed header, expected 'p edge <n> <m>'", lineno)
            declared = (_parse_index(tokens[2], lineno), _parse_index(tokens[3], lineno))
        elif tokens[0] == "e":
            if declared is None:
                raise ParseError("edge descriptor before 'p edge' header", lineno)
            if len(tokens) != 3:
                raise ParseError("malformed edge descriptor", lineno)
            u = _parse_index(tokens[1], lineno)
            v = _parse_index(tokens[2], lineno)
            n = declared[0]
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"vertex index out of range for n={n}", lineno)
            pairs.append((u - 1, v - 1))
        else:
            raise ParseError(f"unknown descriptor {tokens[0]!r}", lineno)
    if declared is None:
        raise ParseError("missing 'p edge' header")
    graph, log = make_graph(declared[0], pairs)
    if len(pairs) != declared[1]:
        warning = f"header declares {declared[1]} edges, found {len(pairs)}"
        log = NormalizationLog(
            log.dropped_loops, log.merged_duplicates, log.warnings + (warning,)
        )
    return graph, log


def _parse_index(token: str, lineno: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"not an integer: {token!r}", lineno) from None
    if value < 0:
        raise ParseError(f"negative index: {value}", lineno)
    return value


# ---------------------------------------------------------------------------
# generators


def named_graph(family: str, params: Iterable[int]) -> Graph:
    """Standard labeled graph of the given family.

    Labelings: path/cycle use 0..n-1 in order; complete_bipartite(a, b)
    puts the left side at 0..a-1; grid(a, b) labels (row, col) as
    row*b + col; hypercube(d) joins words differing in one bit.
    """
    params = tuple(params)
    if family == "path":
        (n,) = _family_params(family, params, 1)
        _require(n >= 1, "path needs n >= 1")
        return Graph(n, tuple((i, i + 1) for i in range(n - 1)))
    if family == "cycle":
        (n,) = _family_params(family, params, 1)
        _require(n >= 3, "cycle needs n >= 3")
        return Graph(n, tuple(sorted([(i, i + 1) for i in range(n - 1)] + [(0, n - 1)])))
    if family == "complete":
        (n,) = _family_params(family, params, 1)
        _require(n >= 1, "complete needs n >= 1")
        return Graph(n, tuple((u, v) for u in range(n) for v in range(u + 1, n)))
    if family == "complete_bipartite":
        a, b = _family_params(family, params, 2)
        _require(a >= 1 and b >= 1, "complete_bipartite needs a, b >= 1")
        return Graph(a + b, tuple((u, v) for u in range(a) for v in range(a, a + b)))
    if family == "grid":
        a, b = _family_params(family, params, 2)
        _require(a >= 1 and b >= 1, "grid needs a, b >= 1")
        edges = []
        for r in range(a):
            for c in range(b):
                v = r * b + c
                if c + 1 < b:
                    edges.append((v, v + 1))
                if r + 1 < a:
                    edges.append((v, v + b))
        return Graph(a * b, tuple(sorted(edges)))
    if family == "hypercube":
        (d,) = _family_params(family, params, 1)
        _require(d >= 0, "hypercube needs d >= 0")
        n = 1 << d
        edges = [(x, x | (1 << k)) for x in range(n) for k in range(d) if not x & (1 << k)]
        return Graph(n, tuple(sorted(edges)))
    raise ValueError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")


def _family_params(family: str, params: tuple[int, ...], count: int) -> tuple[int, ...]:
    if len(params) != count:
        raise ValueError(f"{family} takes {count} parameter(s), got {len(params)}")
    return params


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ValueError(message)


def gnp_graph(n: int, p: float, seed: int) -> Graph:
    """G(n, p) with a reproducible draw.

    Pairs are visited in lexicographic order and included when the next
    float from random.Random(seed) falls below p, so identical
    (n, p, seed) give identical graphs on every platform.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must be in [0, 1]")
    rng = random.Random(seed)
    edges = tuple(
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
    )
    return Graph(n, edges)


# ---------------------------------------------------------------------------
# DOT export


def to_dot(
    g: Graph,
    tree: "RootedTree | None" = None,
    signs: "Mapping[Edge, Sign] | None" = None,
) -> str:
    """Graphviz text for the graph, optionally with a spanning tree overlay.

    Tree edges are solid and carry their sign as a label when one is given;
    cotree edges are dashed; vertices show their depth when a tree is given.
    """
    if signs is not None and tree is None:
        raise ValueError("sign labeling given without a tree")
    tree_edges = tree.tree_edges if tree is not None else frozenset()
    if signs is not None:
        for e in signs:
            if e not in tree_edges:
                raise ValueError(f"labeling references an edge not in the tree: {e}")
    lines = ["graph {"]
    for v in range(g.n):
        if tree is not None:
            lines.append(f'  {v} [label="{v} (d={tree.depth[v]})"];')
        else:
            lines.append(f'  {v} [label="{v}"];')
    for u, v in g.edges:
        if tree is None:
            lines.append(f"  {u} -- {v};")
        elif (u, v) in tree_edges:
            if signs is not None and (u, v) in signs:
                lines.append(f'  {u} -- {v} [style=solid, label="{signs[(u, v)].value}"];')
            else:
                lines.append(f"  {u} -- {v} [style=solid];")
        else:
            lines.append(f"  {u} -- {v} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
