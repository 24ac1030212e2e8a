"""Rooted spanning trees and edge-exchange moves.

A RootedTree pins a spanning tree of a graph at a root and keeps
array-backed parent and depth maps. The depth of a vertex is the length
of its unique tree path from the root; the potential of a tree is the sum
of all depths. Exchanging a cotree edge for an edge on its fundamental
path yields another spanning tree; the potential change is computed by
re-rooting only the detached component.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Literal, Sequence

from .graphs import Edge, Graph, Vertex, canonical_edge, connected_components


class DisconnectedGraphError(ValueError):
    """The operation needs a connected graph."""


def require_connected(g: Graph) -> None:
    """Raise DisconnectedGraphError for a disconnected graph, naming the
    component count and suggesting per-component runs."""
    comps = connected_components(g)
    if len(comps) > 1:
        sizes = ", ".join(str(len(c)) for c in comps)
        raise DisconnectedGraphError(
            f"graph is not connected: {len(comps)} components (sizes {sizes}); "
            "solve each component separately"
        )


@dataclass(frozen=True)
class RootedTree:
    """Spanning tree of ``graph`` rooted at ``root``.

    ``parent[root]`` is None; for every other vertex, depth[v] =
    depth[parent[v]] + 1. Tree edges are derived from the parent map, so a
    well-formed instance is spanning and acyclic by construction.
    """

    graph: Graph
    root: Vertex
    parent: tuple[Vertex | None, ...]
    depth: tuple[int, ...]

    @cached_property
    def tree_edges(self) -> frozenset[Edge]:
        return frozenset(
            canonical_edge(v, p) for v, p in enumerate(self.parent) if p is not None
        )

    @cached_property
    def children(self) -> tuple[tuple[Vertex, ...], ...]:
        kids: list[list[Vertex]] = [[] for _ in range(self.graph.n)]
        for v, p in enumerate(self.parent):
            if p is not None:
                kids[p].append(v)
        return tuple(tuple(k) for k in kids)

    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.tree_edges))


def bfs_tree(g: Graph, root: Vertex) -> RootedTree:
    """Breadth-first spanning tree; depths equal graph distance from root.

    Neighbors are explored in sorted order, so the result is deterministic.
    Raises DisconnectedGraphError when some vertex is unreachable.
    """
    if not 0 <= root < g.n:
        raise ValueError(f"root {root} out of range for n={g.n}")
    parent: list[Vertex | None] = [None] * g.n
    depth = [-1] * g.n
    depth[root] = 0
    queue = deque([root])
    reached = 1
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if depth[w] < 0:
                depth[w] = depth[u] + 1
                parent[w] = u
                reached += 1
                queue.append(w)
    if reached != g.n:
        raise DisconnectedGraphError(
            f"graph is not connected: reached {reached} of {g.n} vertices from {root}"
        )
    return RootedTree(g, root, tuple(parent), tuple(depth))


def tree_from_edges(g: Graph, edges: Iterable[Edge], root: Vertex) -> RootedTree:
    """Root the given spanning edge set at ``root``.

    Validates that the edges belong to the graph and form a spanning tree.
    """
    if not 0 <= root < g.n:
        raise ValueError(f"root {root} out of range for n={g.n}")
    edge_list = [canonical_edge(u, v) for u, v in edges]
    edge_set = set(edge_list)
    if len(edge_set) != len(edge_list):
        raise ValueError("duplicate tree edges")
    if not edge_set <= g.edge_set:
        missing = sorted(edge_set - g.edge_set)[0]
        raise ValueError(f"edge {missing} is not an edge of the graph")
    if len(edge_set) != g.n - 1:
        raise ValueError(f"a spanning tree of n={g.n} needs {g.n - 1} edges, got {len(edge_set)}")
    neighbors: list[list[Vertex]] = [[] for _ in range(g.n)]
    for u, v in edge_set:
        neighbors[u].append(v)
        neighbors[v].append(u)
    parent: list[Vertex | None] = [None] * g.n
    depth = [-1] * g.n
    depth[root] = 0
    queue = deque([root])
    reached = 1
    while queue:
        u = queue.popleft()
        for w in neighbors[u]:
            if depth[w] < 0:
                depth[w] = depth[u] + 1
                parent[w] = u
                reached += 1
                queue.append(w)
    if reached != g.n:
        raise ValueError("edges do not span the graph")
    return RootedTree(g, root, tuple(parent), tuple(depth))


def potential(t: RootedTree) -> int:
    """Sum of the depths of all vertices."""
    return sum(t.depth)


def cotree_edges(t: RootedTree) -> tuple[Edge, ...]:
    """Graph edges outside the tree, lexicographically sorted."""
    return tuple(e for e in t.graph.edges if e not in t.tree_edges)


def is_ancestor(t: RootedTree, anc: Vertex, desc: Vertex) -> bool:
    """True iff ``anc`` lies on the tree path from the root to ``desc``."""
    steps = t.depth[desc] - t.depth[anc]
    if steps < 0:
        return False
    x = desc
    for _ in range(steps):
        x = t.parent[x]  # type: ignore[assignment]
    return x == anc


def cotree_path_is_monotone(t: RootedTree, e: Edge) -> bool:
    """True iff the fundamental path of ``e`` has strictly monotone depths.

    Depths along a tree path step by exactly 1, falling toward the two
    endpoints' lowest common ancestor and rising after it, so the path is
    monotone exactly when one endpoint is an ancestor of the other.
    """
    u, v = e
    if t.depth[u] > t.depth[v]:
        u, v = v, u
    return is_ancestor(t, u, v)


def fundamental_path(t: RootedTree, e: Edge) -> tuple[Vertex, ...]:
    """The unique tree path joining the endpoints of a cotree edge.

    The first element is e's smaller endpoint, the last its larger one.
    """
    e = canonical_edge(*e)
    if e not in t.graph.edge_set:
        raise ValueError(f"{e} is not an edge of the graph")
    if e in t.tree_edges:
        raise ValueError(f"{e} is a tree edge, not a cotree edge")
    a, b = e
    up_a = [a]
    up_b = [b]
    x, y = a, b
    while t.depth[x] > t.depth[y]:
        x = t.parent[x]  # type: ignore[assignment]
        up_a.append(x)
    while t.depth[y] > t.depth[x]:
        y = t.parent[y]  # type: ignore[assignment]
        up_b.append(y)
    while x != y:
        x = t.parent[x]  # type: ignore[assignment]
        y = t.parent[y]  # type: ignore[assignment]
        up_a.append(x)
        up_b.append(y)
    up_b.pop()  # both branches end at the common ancestor; keep one copy
    return tuple(up_a + up_b[::-1])


@dataclass(frozen=True)
class MonotoneReport:
    """Classification of the depth sequence along a tree path.

    Valleys are interior positions strictly below both neighbors, peaks
    strictly above; the path is monotone iff both lists are empty.
    """

    monotone: bool
    direction: Literal["increasing", "decreasing", "none"]
    valley_indices: tuple[int, ...]
    peak_indices: tuple[int, ...]


def monotone_report(t: RootedTree, path: Sequence[Vertex]) -> MonotoneReport:
    """Classify the depths of ``path``'s vertices (assumed a tree path)."""
    d = [t.depth[v] for v in path]
    valleys = tuple(
        i for i in range(1, len(d) - 1) if d[i - 1] > d[i] < d[i + 1]
    )
    peaks = tuple(
        i for i in range(1, len(d) - 1) if d[i - 1] < d[i] > d[i + 1]
    )
    monotone = not valleys and not peaks
    direction: Literal["increasing", "decreasing", "none"] = "none"
    if monotone and len(d) > 1:
        if d[0] < d[-1]:
            direction = "increasing"
        elif d[0] > d[-1]:
            direction = "decreasing"
    return MonotoneReport(monotone, direction, valleys, peaks)


@dataclass(frozen=True)
class SwapMove:
    """One edge exchange: add a cotree edge, remove a fundamental-path edge."""

    added: Edge
    removed: Edge
    delta_psi: int


def detached_component(t: RootedTree, removed: Edge) -> tuple[Vertex, ...]:
    """Vertices cut off from the root when ``removed`` leaves the tree,
    i.e. the subtree under the removed edge's deeper endpoint."""
    removed = canonical_edge(*removed)
    if removed not in t.tree_edges:
        raise ValueError(f"{removed} is not a tree edge")
    u, v = removed
    child = u if t.depth[u] > t.depth[v] else v
    comp = [child]
    stack = [child]
    while stack:
        x = stack.pop()
        for k in t.children[x]:
            comp.append(k)
            stack.append(k)
    return tuple(comp)


def _check_move(t: RootedTree, add: Edge, remove: Edge) -> tuple[tuple[Vertex, ...], Vertex, Vertex]:
    """Validate an exchange and return (component, inner, outer) where
    ``inner`` is the added edge's endpoint inside the detached component."""
    add = canonical_edge(*add)
    remove = canonical_edge(*remove)
    if add not in t.graph.edge_set:
        raise ValueError(f"{add} is not an edge of the graph")
    if add in t.tree_edges:
        raise ValueError(f"{add} is a tree edge, not a cotree edge")
    ru, rv = remove
    if remove not in t.tree_edges:
        raise ValueError(f"{remove} is not a tree edge")
    child = ru if t.depth[ru] > t.depth[rv] else rv
    a, b = add
    a_inside = is_ancestor(t, child, a)
    b_inside = is_ancestor(t, child, b)
    if a_inside == b_inside:
        raise ValueError(
            f"removed edge {remove} is not on the fundamental path of {add}"
        )
    inner, outer = (a, b) if a_inside else (b, a)
    return detached_component(t, remove), inner, outer


def _reroot_component(
    t: RootedTree, comp: tuple[Vertex, ...], inner: Vertex, outer: Vertex
) -> tuple[dict[Vertex, Vertex], dict[Vertex, int]]:
    """Re-hang the detached component from ``outer`` through ``inner``;
    returns the new parent and depth assignments for component vertices."""
    comp_set = set(comp)
    new_parent: dict[Vertex, Vertex] = {inner: outer}
    new_depth: dict[Vertex, int] = {inner: t.depth[outer] + 1}
    queue = deque([inner])
    while queue:
        x = queue.popleft()
        p = t.parent[x]
        neighbors = list(t.children[x])
        if p is not None:
            neighbors.append(p)
        for w in neighbors:
            if w in comp_set and w not in new_depth:
                new_depth[w] = new_depth[x] + 1
                new_parent[w] = x
                queue.append(w)
    return new_parent, new_depth


def delta_potential(t: RootedTree, add: Edge, remove: Edge) -> int:
    """Potential change of exchanging ``remove`` for ``add``, without
    mutating the tree; only the detached component is re-rooted."""
    comp, inner, outer = _check_move(t, add, remove)
    _, new_depth = _reroot_component(t, comp, inner, outer)
    return sum(new_depth.values()) - sum(t.depth[v] for v in comp)


def apply_swap(t: RootedTree, move: SwapMove) -> RootedTree:
    """Spanning tree after the exchange; parent and depth maps are
    recomputed for exactly the detached component."""
    comp, inner, outer = _check_move(t, move.added, move.removed)
    new_parent, new_depth = _reroot_component(t, comp, inner, outer)
    parent = list(t.parent)
    depth = list(t.depth)
    for v in comp:
        parent[v] = new_parent[v]
        depth[v] = new_depth[v]
    return RootedTree(t.graph, t.root, tuple(parent), tuple(depth))
