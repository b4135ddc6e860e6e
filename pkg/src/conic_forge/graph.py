"""Simple graphs: cliques, perfectness, chordality, comparability, the
``G_{r_1..r_n}`` family, and signed cycles of oriented graphs."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations, product
from typing import Iterable, Optional, Sequence

from . import config
from .errors import BadArity, BadMultiplicity, Disconnected, TooLarge

Edge = tuple[int, int]


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected graph on vertices ``1..vertex_count``."""

    vertex_count: int
    edges: frozenset[Edge]

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.vertex_count + 1)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(s) for s in adj)

    @property
    def vertices(self) -> range:
        return range(1, self.vertex_count + 1)

    def adjacent(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def complement(self) -> "SimpleGraph":
        edges = {
            (u, v) for u, v in combinations(self.vertices, 2) if not self.adjacent(u, v)
        }
        return SimpleGraph(self.vertex_count, frozenset(edges))

    def induced(self, subset: Iterable[int]) -> tuple["SimpleGraph", list[int]]:
        labels = sorted(subset)
        index = {v: i + 1 for i, v in enumerate(labels)}
        edges = {
            (index[u], index[v]) for u, v in combinations(labels, 2) if self.adjacent(u, v)
        }
        return SimpleGraph(len(labels), frozenset(edges)), labels

    def relabeled(self, perm: Sequence[int]) -> "SimpleGraph":
        edges = {_edge(perm[u - 1], perm[v - 1]) for u, v in self.edges}
        return SimpleGraph(self.vertex_count, frozenset(edges))

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def to_json(self) -> dict:
        return {"vertices": self.vertex_count, "edges": [list(e) for e in self.sorted_edges()]}


def from_edges(count: int, edges: Iterable[Sequence[int]]) -> SimpleGraph:
    out = set()
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not (1 <= u <= count and 1 <= v <= count):
            raise ValueError(f"edge {list(e)} out of range 1..{count}")
        if u == v:
            raise ValueError(f"loop at vertex {u}")
        out.add(_edge(u, v))
    return SimpleGraph(count, frozenset(out))


def parse_graph(text: str) -> SimpleGraph:
    data = json.loads(text)
    return from_edges(int(data["vertices"]), data.get("edges", []))


def complete_graph(d: int) -> SimpleGraph:
    return SimpleGraph(d, frozenset(combinations(range(1, d + 1), 2)))


def cycle_graph(d: int) -> SimpleGraph:
    return from_edges(d, [(i, i % d + 1) for i in range(1, d + 1)])


def path_graph(d: int) -> SimpleGraph:
    return from_edges(d, [(i, i + 1) for i in range(1, d)])


def edgeless_graph(d: int) -> SimpleGraph:
    return SimpleGraph(d, frozenset())


# ---------------------------------------------------------------------------
# Cliques and stable sets


def maximal_cliques(g: SimpleGraph) -> list[tuple[int, ...]]:
    """All maximal cliques, each sorted, in lexicographic order (Bron-Kerbosch
    with pivoting)."""
    out: list[tuple[int, ...]] = []
    adj = g.adjacency

    def expand(r: set[int], p: set[int], x: set[int]) -> None:
        if not p and not x:
            out.append(tuple(sorted(r)))
            return
        pivot = max(p | x, key=lambda u: (len(adj[u] & p), -u))
        for v in sorted(p - adj[pivot]):
            expand(r | {v}, p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    if not g.vertex_count:
        return [()]
    expand(set(), set(g.vertices), set())
    return sorted(out)


def maximal_stable_sets(g: SimpleGraph) -> list[tuple[int, ...]]:
    """Maximal cliques of the complement."""
    return maximal_cliques(g.complement())


# ---------------------------------------------------------------------------
# Chordality, perfectness, comparability


def lex_bfs(g: SimpleGraph) -> list[int]:
    """Lexicographic breadth-first order, ties broken by smallest vertex."""
    labels: dict[int, list[int]] = {v: [] for v in g.vertices}
    order: list[int] = []
    remaining = set(g.vertices)
    step = g.vertex_count
    while remaining:
        v = max(remaining, key=lambda u: (labels[u], -u))
        remaining.remove(v)
        order.append(v)
        for w in g.adjacency[v]:
            if w in remaining:
                labels[w].append(step)
        step -= 1
    return order


def is_chordal(g: SimpleGraph) -> bool:
    """Reverse LexBFS order must be a perfect elimination ordering."""
    order = lex_bfs(g)
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        earlier = [w for w in g.adjacency[v] if pos[w] < pos[v]]
        if not earlier:
            continue
        parent = max(earlier, key=lambda w: pos[w])
        if any(w != parent and not g.adjacent(w, parent) for w in earlier):
            return False
    return True


def induced_cycles(g: SimpleGraph, min_length: int = 3) -> list[tuple[int, ...]]:
    """Chordless cycles as vertex tuples starting at their least vertex, the
    second vertex smaller than the last."""
    out = []
    adj = g.adjacency

    def extend(path: list[int]) -> None:
        s, last = path[0], path[-1]
        for v in sorted(adj[last]):
            if v <= s or v in path:
                continue
            if any(adj[v].__contains__(w) for w in path[1:-1]):
                continue
            if len(path) > 1 and s in adj[v]:
                if path[1] < v and len(path) + 1 >= min_length:
                    out.append(tuple(path + [v]))
                continue
            extend(path + [v])

    for s in g.vertices:
        extend([s])
    return sorted(out)


def _has_odd_hole(g: SimpleGraph) -> bool:
    return any(len(c) >= 5 and len(c) % 2 == 1 for c in induced_cycles(g, 5))


def is_perfect(g: SimpleGraph, bound: Optional[int] = None) -> bool:
    """No odd hole and no odd antihole of length at least five."""
    limit = config.max_d() if bound is None else bound
    if g.vertex_count > limit:
        raise TooLarge(f"{g.vertex_count} vertices exceeds bound {limit}")
    return not _has_odd_hole(g) and not _has_odd_hole(g.complement())


def implication_classes(g: SimpleGraph) -> list[set[tuple[int, int]]]:
    """Gamma-forcing classes of oriented edges."""
    arcs = [(u, v) for u, v in g.edges] + [(v, u) for u, v in g.edges]
    parent = {a: a for a in arcs}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for a, b in arcs:
        for c in g.adjacency[a]:
            if c != b and not g.adjacent(b, c):
                union((a, b), (a, c))
        for c in g.adjacency[b]:
            if c != a and not g.adjacent(a, c):
                union((a, b), (c, b))
    classes: dict = {}
    for a in arcs:
        classes.setdefault(find(a), set()).add(a)
    return sorted(classes.values(), key=lambda s: sorted(s))


def is_comparability(g: SimpleGraph, bound: Optional[int] = None) -> bool:
    """A transitive orientation exists iff no implication class contains an
    arc together with its reverse."""
    limit = config.max_d() if bound is None else bound
    if g.vertex_count > limit:
        raise TooLarge(f"{g.vertex_count} vertices exceeds bound {limit}")
    for cls in implication_classes(g):
        if any((b, a) in cls for a, b in cls):
            return False
    return True


def is_comparability_exhaustive(g: SimpleGraph, max_edges: int = 16) -> bool:
    """Try every orientation; only for tiny graphs."""
    edges = g.sorted_edges()
    if len(edges) > max_edges:
        raise TooLarge(f"{len(edges)} edges exceeds bound {max_edges}")
    for signs in product((False, True), repeat=len(edges)):
        arcs = {(v, u) if s else (u, v) for (u, v), s in zip(edges, signs)}
        if all(
            (a, c) in arcs
            for a, b in arcs
            for b2, c in arcs
            if b == b2 and a != c
        ):
            return True
    return not edges


# ---------------------------------------------------------------------------
# The family G_{r_1..r_n}


@dataclass(frozen=True)
class FamilyGraph:
    r: tuple[int, ...]
    graph: SimpleGraph
    cliques: tuple[tuple[int, ...], ...]
    plus: tuple[tuple[int, ...], ...]
    minus: tuple[tuple[int, ...], ...]


def gen_family(r: Sequence[int]) -> FamilyGraph:
    """The graph ``G_{r_1..r_n}`` on ``[2d]``, ``d = sum(r)``, with cliques in
    the order ``Q_0, Q_1, ..., Q_n``. ``plus[i]``/``minus[i]`` hold ``Q_i^+``
    and ``Q_i^-`` for ``i >= 1`` (index 0 is empty)."""
    r = tuple(int(x) for x in r)
    if len(r) < 3:
        raise BadArity(f"need at least 3 parts, got {len(r)}")
    if any(x < 1 for x in r):
        raise BadMultiplicity("every part must be at least 1")
    d = sum(r)
    q0 = tuple(range(d + 1, 2 * d + 1))
    plus: list[tuple[int, ...]] = [()]
    minus: list[tuple[int, ...]] = [()]
    cliques = [q0]
    start = 0
    for ri in r:
        qp = tuple(range(start + 1, start + ri + 1))
        qm = tuple(d + v for v in qp)
        plus.append(qp)
        minus.append(qm)
        cliques.append(tuple(sorted(set(qp) | (set(q0) - set(qm)))))
        start += ri
    edges = {_edge(u, v) for q in cliques for u, v in combinations(q, 2)}
    return FamilyGraph(r, SimpleGraph(2 * d, frozenset(edges)), tuple(cliques), tuple(plus), tuple(minus))


# ---------------------------------------------------------------------------
# Oriented graphs, spanning trees, signed cycles


@dataclass(frozen=True)
class SignedCycle:
    """Signed characteristic vector over the arc list of an oriented graph."""

    vector: tuple[int, ...]
    vertices: tuple[int, ...]

    @property
    def supp_plus(self) -> tuple[int, ...]:
        return tuple(i for i, x in enumerate(self.vector) if x > 0)

    @property
    def supp_minus(self) -> tuple[int, ...]:
        return tuple(i for i, x in enumerate(self.vector) if x < 0)

    def negated(self) -> "SignedCycle":
        return SignedCycle(tuple(-x for x in self.vector), tuple(reversed(self.vertices)))


@dataclass(frozen=True)
class DirectedGraphWithTree:
    """Arcs ``(tail, head)`` on vertices ``0..vertex_count-1``; ``tree`` and
    ``nontree`` are arc indices, ``nontree`` in the order used for class
    coordinates."""

    vertex_count: int
    arcs: tuple[tuple[int, int], ...]
    tree: tuple[int, ...]
    nontree: tuple[int, ...]


def _signed_walk(arc_index: dict, narcs: int, walk: Sequence[int]) -> tuple[int, ...]:
    vec = [0] * narcs
    for u, w in zip(walk, list(walk[1:]) + [walk[0]]):
        if (u, w) in arc_index:
            vec[arc_index[(u, w)]] += 1
        else:
            vec[arc_index[(w, u)]] -= 1
    return tuple(vec)


def spanning_tree_with_cycles(h) -> tuple[DirectedGraphWithTree, list[SignedCycle]]:
    """BFS tree from vertex 0 (neighbors in index order) and the fundamental
    cycle of each non-tree arc, signed so that the arc itself is positive.

    ``h`` is anything with ``vertex_count`` and an ``edges`` list of arcs.
    """
    n = h.vertex_count
    arcs = tuple(sorted(tuple(a) for a in h.edges))
    arc_index = {a: i for i, a in enumerate(arcs)}
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for u, w in arcs:
        nbrs[u].append(w)
        nbrs[w].append(u)
    parent: dict[int, Optional[int]] = {0: None} if n else {}
    queue = [0] if n else []
    tree = []
    while queue:
        u = queue.pop(0)
        for w in sorted(nbrs[u]):
            if w not in parent:
                parent[w] = u
                queue.append(w)
                tree.append(arc_index[(u, w)] if (u, w) in arc_index else arc_index[(w, u)])
    if len(parent) != n:
        raise Disconnected("underlying graph is not connected")
    tree_set = set(tree)
    nontree = tuple(i for i in range(len(arcs)) if i not in tree_set)

    def root_path(v: int) -> list[int]:
        path = [v]
        while parent[path[-1]] is not None:
            path.append(parent[path[-1]])
        return path

    cycles = []
    for i in nontree:
        a, b = arcs[i]
        pa, pb = root_path(a), root_path(b)
        common = set(pa) & set(pb)
        lca = next(v for v in pa if v in common)
        up_from_b = pb[: pb.index(lca) + 1]  # b, ..., lca
        down_to_a = list(reversed(pa[1 : pa.index(lca)]))  # below lca, ..., parent of a
        walk = [a] + (up_from_b[:-1] if lca == a else up_from_b) + down_to_a
        vec = _signed_walk(arc_index, len(arcs), walk)
        cycles.append(SignedCycle(vec, tuple(walk)))
    return DirectedGraphWithTree(n, arcs, tuple(sorted(tree)), nontree), cycles


def chordless_cycles(h, bound: Optional[int] = None) -> list[SignedCycle]:
    """Chordless cycles of the underlying undirected graph of an oriented
    graph on vertices ``0..vertex_count-1``, with signed vectors over the
    sorted arc list (traversal starts at the least vertex)."""
    limit = config.max_d() if bound is None else bound
    n = h.vertex_count
    if n > limit + 2:
        raise TooLarge(f"{n} vertices exceeds bound {limit + 2}")
    arcs = tuple(sorted(tuple(a) for a in h.edges))
    arc_index = {a: i for i, a in enumerate(arcs)}
    shifted = from_edges(n, [(u + 1, w + 1) for u, w in arcs])
    out = []
    for cyc in induced_cycles(shifted):
        walk = [v - 1 for v in cyc]
        out.append(SignedCycle(_signed_walk(arc_index, len(arcs), walk), tuple(walk)))
    return out


def all_cycles(h) -> list[SignedCycle]:
    """Every simple cycle (chords allowed) of the underlying undirected graph."""
    n = h.vertex_count
    arcs = tuple(sorted(tuple(a) for a in h.edges))
    arc_index = {a: i for i, a in enumerate(arcs)}
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for u, w in arcs:
        nbrs[u].add(w)
        nbrs[w].add(u)
    out = []

    def extend(path: list[int]) -> None:
        s, last = path[0], path[-1]
        for v in sorted(nbrs[last]):
            if v == s and len(path) >= 3 and path[1] < path[-1]:
                out.append(SignedCycle(_signed_walk(arc_index, len(arcs), path), tuple(path)))
            elif v > s and v not in path:
                extend(path + [v])

    for s in range(n):
        extend([s])
    return out


# ---------------------------------------------------------------------------
# Isomorphism classes (brute force, desk scale)


def canonical_form(g: SimpleGraph) -> tuple:
    """Least adjacency code over relabelings that respect the degree profile."""
    deg = {v: len(g.adjacency[v]) for v in g.vertices}
    classes: dict[int, list[int]] = {}
    for v in g.vertices:
        classes.setdefault(deg[v], []).append(v)
    keys = sorted(classes)
    best = None

    def assign(i: int, order: list[int]) -> None:
        nonlocal best
        if i == len(keys):
            code = tuple(int(g.adjacent(a, b)) for a, b in combinations(order, 2))
            if best is None or code < best:
                best = code
            return
        for perm in permutations(classes[keys[i]]):
            assign(i + 1, order + list(perm))

    assign(0, [])
    return (g.vertex_count, tuple(len(classes[k]) for k in keys), best)


def all_graphs(max_vertices: int) -> list[SimpleGraph]:
    """One representative per isomorphism class on 0..max_vertices vertices,
    grown by attaching a new vertex to every neighbor subset."""
    out = [SimpleGraph(0, frozenset())]
    layer = [SimpleGraph(0, frozenset())]
    for n in range(1, max_vertices + 1):
        seen: dict[tuple, SimpleGraph] = {}
        for g in layer:
            for k in range(n):
                for nb in combinations(range(1, n), k):
                    h = SimpleGraph(n, g.edges | {(v, n) for v in nb})
                    key = canonical_form(h)
                    if key not in seen:
                        seen[key] = h
        layer = [seen[key] for key in sorted(seen)]
        out.extend(layer)
    return out


def is_connected(g: SimpleGraph) -> bool:
    if g.vertex_count == 0:
        return True
    seen = {1}
    stack = [1]
    while stack:
        v = stack.pop()
        for w in g.adjacency[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.vertex_count
