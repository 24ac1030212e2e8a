"""Brute-force ground truth for small instances.

Spanning trees are enumerated by backtracking, counted independently by
an exact integer determinant, and checked exhaustively: the potential-
maximal trees and every exchange-local-maximal tree must have all
fundamental paths monotone, and the solver's output must verify. Any
failed check is serialized as a witness; none is expected to exist.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .graphs import Edge, Graph, Vertex, canonical_edge, graph_key, is_connected
from .solver import solve, verify_alternating, verify_monotone
from .trees import (
    RootedTree,
    cotree_edges,
    delta_potential,
    fundamental_path,
    potential,
    require_connected,
    tree_from_edges,
)

DEFAULT_TREE_CAP = 1_000_000


class EnumerationLimitError(RuntimeError):
    """The instance has more spanning trees than the configured cap."""


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _spannable(parent: list[int], ncomp: int, edges: tuple[Edge, ...], idx: int) -> bool:
    """Can the current components still be merged into one using only
    edges[idx:]?"""
    if ncomp == 1:
        return True
    trial = parent.copy()
    left = ncomp
    for u, v in edges[idx:]:
        ru, rv = _find(trial, u), _find(trial, v)
        if ru != rv:
            trial[ru] = rv
            left -= 1
            if left == 1:
                return True
    return False


def enumerate_spanning_trees(
    g: Graph, root: Vertex = 0, max_trees: int = DEFAULT_TREE_CAP
) -> Iterator[RootedTree]:
    """Yield every spanning tree of ``g`` exactly once, rooted at ``root``.

    Backtracks over edge inclusion in lexicographic order; a branch is cut
    when including an edge would close a cycle or when excluding it
    disconnects what remains. Intended for small graphs; raises
    EnumerationLimitError past ``max_trees`` trees.
    """
    require_connected(g)
    if not 0 <= root < g.n:
        raise ValueError(f"root {root} out of range for n={g.n}")
    n = g.n
    if n == 1:
        yield tree_from_edges(g, (), root)
        return
    edges = g.edges
    yielded = 0

    def rec(idx: int, parent: list[int], ncomp: int, chosen: list[Edge]) -> Iterator[RootedTree]:
        nonlocal yielded
        if ncomp == 1:
            yielded += 1
            if yielded > max_trees:
                raise EnumerationLimitError(
                    f"more than {max_trees} spanning trees; raise max_trees to enumerate"
                )
            yield tree_from_edges(g, chosen, root)
            return
        if len(edges) - idx < ncomp - 1:
            return
        u, v = edges[idx]
        ru, rv = _find(parent, u), _find(parent, v)
        if ru != rv:
            child = parent.copy()
            child[ru] = rv
            chosen.append(edges[idx])
            yield from rec(idx + 1, child, ncomp - 1, chosen)
            chosen.pop()
        if _spannable(parent, ncomp, edges, idx + 1):
            yield from rec(idx + 1, parent, ncomp, chosen)

    yield from rec(0, list(range(n)), n, [])


def _integer_determinant(a: list[list[int]]) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination
    (every division below is exact)."""
    a = [row[:] for row in a]
    m = len(a)
    if m == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(m - 1):
        if a[k][k] == 0:
            for r in range(k + 1, m):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, m):
            for j in range(k + 1, m):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[m - 1][m - 1]


def count_spanning_trees(g: Graph) -> int:
    """Number of spanning trees, as the determinant of the Laplacian with
    the last row and column deleted, in exact integer arithmetic.

    Independent of the enumerator by construction; the two must agree.
    """
    require_connected(g)
    n = g.n
    if n == 1:
        return 1
    lap = [[0] * n for _ in range(n)]
    for u, v in g.edges:
        lap[u][u] += 1
        lap[v][v] += 1
        lap[u][v] -= 1
        lap[v][u] -= 1
    reduced = [row[: n - 1] for row in lap[: n - 1]]
    return _integer_determinant(reduced)


def max_potential_tree(
    g: Graph, root: Vertex, max_trees: int = DEFAULT_TREE_CAP
) -> tuple[RootedTree, int, int]:
    """Potential-maximal spanning tree by exhaustive enumeration.

    Returns the maximizer with the lexicographically least edge set among
    ties, the maximal potential, and the number of trees attaining it.
    """
    best: RootedTree | None = None
    best_key: tuple[Edge, ...] | None = None
    best_psi = -1
    count = 0
    for t in enumerate_spanning_trees(g, root, max_trees):
        psi = potential(t)
        if psi > best_psi:
            best_psi = psi
            best = t
            best_key = t.sorted_edges()
            count = 1
        elif psi == best_psi:
            count += 1
            key = t.sorted_edges()
            if best_key is None or key < best_key:
                best = t
                best_key = key
    assert best is not None
    return best, best_psi, count


def _admits_improving_swap(t: RootedTree) -> bool:
    """Is there any cotree edge and any removal on its fundamental path
    that strictly increases the potential?"""
    for e in cotree_edges(t):
        path = fundamental_path(t, e)
        for j in range(len(path) - 1):
            removed = canonical_edge(path[j], path[j + 1])
            if delta_potential(t, e, removed) >= 1:
                return True
    return False


def _tree_witness(t: RootedTree, check: str, detail: str) -> dict:
    return {
        "check": check,
        "detail": detail,
        "root": t.root,
        "tree_edges": [list(e) for e in t.sorted_edges()],
        "depth": list(t.depth),
    }


@dataclass(frozen=True)
class OracleReport:
    """Exhaustive-check outcome for one graph.

    ``witness`` serializes the first tree that broke a check, or None.
    """

    graph_id: str
    root: Vertex
    tree_count: int
    kirchhoff_count: int
    max_psi: int
    max_psi_tree_count: int
    global_max_conforms: bool
    all_local_maxima_conform: bool
    solve_agrees: bool
    witness: dict | None = None

    @property
    def counts_agree(self) -> bool:
        return self.tree_count == self.kirchhoff_count

    @property
    def ok(self) -> bool:
        return (
            self.counts_agree
            and self.global_max_conforms
            and self.all_local_maxima_conform
            and self.solve_agrees
        )

    def to_json_dict(self) -> dict:
        return {
            "graph_id": self.graph_id,
            "root": self.root,
            "tree_count": self.tree_count,
            "kirchhoff_count": self.kirchhoff_count,
            "max_psi": self.max_psi,
            "max_psi_tree_count": self.max_psi_tree_count,
            "global_max_conforms": self.global_max_conforms,
            "all_local_maxima_conform": self.all_local_maxima_conform,
            "solve_agrees": self.solve_agrees,
            "ok": self.ok,
            "witness": self.witness,
        }


def exhaustive_check(
    g: Graph, root: Vertex = 0, max_trees: int = DEFAULT_TREE_CAP
) -> OracleReport:
    """Validate every claim the solver rests on, over all spanning trees.

    (a) every potential-maximal tree has only monotone fundamental paths
        (reported for the lexicographically least one; (b) covers ties),
    (b) every tree admitting no strictly improving exchange has only
        monotone fundamental paths,
    (c) the solver's output passes the alternation verifier,
    (d) the enumerated tree count equals the determinant count.
    """
    witness: dict | None = None

    tree_count = 0
    best: RootedTree | None = None
    best_key: tuple[Edge, ...] | None = None
    best_psi = -1
    max_count = 0
    all_local_maxima_conform = True

    for t in enumerate_spanning_trees(g, root, max_trees):
        tree_count += 1
        psi = potential(t)
        if not verify_monotone(g, t).ok and not _admits_improving_swap(t):
            all_local_maxima_conform = False
            if witness is None:
                witness = _tree_witness(
                    t,
                    "local_max_conforms",
                    "non-monotone tree admitting no improving exchange",
                )
        if psi > best_psi:
            best_psi = psi
            max_count = 1
            best = t
            best_key = t.sorted_edges()
        elif psi == best_psi:
            max_count += 1
            key = t.sorted_edges()
            if best_key is None or key < best_key:
                best = t
                best_key = key

    assert best is not None
    kirchhoff = count_spanning_trees(g)
    global_max_conforms = verify_monotone(g, best).ok
    if not global_max_conforms and witness is None:
        witness = _tree_witness(
            best, "global_max_conforms", "potential-maximal tree with a non-monotone path"
        )

    solution = solve(g, root)
    solve_agrees = verify_alternating(g, solution.tree, solution.signs).ok
    if not solve_agrees and witness is None:
        witness = _tree_witness(
            solution.tree, "solve_agrees", "solver output failed the alternation verifier"
        )

    return OracleReport(
        graph_id=graph_key(g),
        root=root,
        tree_count=tree_count,
        kirchhoff_count=kirchhoff,
        max_psi=best_psi,
        max_psi_tree_count=max_count,
        global_max_conforms=global_max_conforms,
        all_local_maxima_conform=all_local_maxima_conform,
        solve_agrees=solve_agrees,
        witness=witness,
    )


def enumerate_connected_graphs(n: int) -> Iterator[Graph]:
    """Yield every labeled simple connected graph on ``n`` vertices once,
    by filtering all edge subsets of the complete graph. Guarded to n <= 6
    (the subset count doubles per potential edge)."""
    if not 1 <= n <= 6:
        raise ValueError(f"n={n} out of supported range 1..6")
    all_edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
    for mask in range(1 << len(all_edges)):
        edges = tuple(e for i, e in enumerate(all_edges) if mask >> i & 1)
        g = Graph(n, edges)
        if is_connected(g):
            yield g
