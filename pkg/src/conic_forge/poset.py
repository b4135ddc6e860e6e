"""Finite posets given by cover relations, and the Hasse diagram of P-hat.

Elements are 1-based indices ``1..k``. In ``P-hat`` the bottom element gets
index 0 and the top element index ``k + 1`` (which equals ``d`` when the
Hasse diagram has ``d + 1`` vertices).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations
from typing import Iterable, Sequence

from .errors import CyclicRelation, RedundantCover

Cover = tuple[int, int]


@dataclass(frozen=True)
class Poset:
    element_count: int
    covers: tuple[Cover, ...]

    @cached_property
    def below(self) -> tuple[frozenset[int], ...]:
        """``below[p]`` is the set of elements strictly below ``p`` (index 0 unused)."""
        k = self.element_count
        down: list[set[int]] = [set() for _ in range(k + 1)]
        lower_covers: list[list[int]] = [[] for _ in range(k + 1)]
        for a, b in self.covers:
            lower_covers[b].append(a)
        order = _topological_order(k, self.covers)
        for p in order:
            for q in lower_covers[p]:
                down[p].add(q)
                down[p] |= down[q]
        return tuple(frozenset(s) for s in down)

    @cached_property
    def above(self) -> tuple[frozenset[int], ...]:
        up: list[set[int]] = [set() for _ in range(self.element_count + 1)]
        for p in self.elements:
            for q in self.below[p]:
                up[q].add(p)
        return tuple(frozenset(s) for s in up)

    @property
    def elements(self) -> range:
        return range(1, self.element_count + 1)

    def leq(self, a: int, b: int) -> bool:
        return a == b or a in self.below[b]

    def lt(self, a: int, b: int) -> bool:
        return a in self.below[b]

    def comparable(self, a: int, b: int) -> bool:
        return a == b or a in self.below[b] or b in self.below[a]

    def minimal(self) -> list[int]:
        return [p for p in self.elements if not self.below[p]]

    def maximal(self) -> list[int]:
        return [p for p in self.elements if not self.above[p]]

    def to_json(self) -> dict:
        return {"elements": self.element_count, "covers": [list(c) for c in self.covers]}

    def relabeled(self, perm: Sequence[int]) -> "Poset":
        """Poset with element ``p`` renamed ``perm[p - 1]``."""
        covers = [(perm[a - 1], perm[b - 1]) for a, b in self.covers]
        return Poset(self.element_count, tuple(sorted(covers)))


def _topological_order(k: int, covers: Iterable[Cover]) -> list[int]:
    indeg = [0] * (k + 1)
    succ: list[list[int]] = [[] for _ in range(k + 1)]
    for a, b in covers:
        succ[a].append(b)
        indeg[b] += 1
    ready = sorted(p for p in range(1, k + 1) if indeg[p] == 0)
    out = []
    while ready:
        p = ready.pop(0)
        out.append(p)
        for q in succ[p]:
            indeg[q] -= 1
            if indeg[q] == 0:
                ready.append(q)
        ready.sort()
    if len(out) != k:
        raise CyclicRelation("cover relation contains a cycle")
    return out


def from_covers(count: int, covers: Iterable[Sequence[int]]) -> Poset:
    """Validated poset on ``1..count``; covers must form a transitive reduction."""
    pairs = []
    for c in covers:
        a, b = int(c[0]), int(c[1])
        if not (1 <= a <= count and 1 <= b <= count):
            raise ValueError(f"cover {c} out of range 1..{count}")
        if a == b:
            raise CyclicRelation(f"loop at element {a}")
        pairs.append((a, b))
    if len(set(pairs)) != len(pairs):
        raise RedundantCover("duplicate cover pair")
    _topological_order(count, pairs)
    poset = Poset(count, tuple(sorted(pairs)))
    for a, b in pairs:
        # (a, b) is implied if some other upper cover of a lies below b
        for c in poset.elements:
            if c not in (a, b) and (a, c) in set(pairs) and poset.leq(c, b):
                raise RedundantCover(f"cover ({a}, {b}) is implied via {c}")
    return poset


def from_relation(count: int, relation: Iterable[Sequence[int]]) -> Poset:
    """Poset from any generating set of strict relations ``a < b``."""
    rel = {(int(a), int(b)) for a, b in relation}
    below = {p: set() for p in range(1, count + 1)}
    for a, b in rel:
        below[b].add(a)
    changed = True
    while changed:
        changed = False
        for p in below:
            extra = set().union(*(below[q] for q in below[p])) - below[p] if below[p] else set()
            if extra:
                below[p] |= extra
                changed = True
    for p in below:
        if p in below[p]:
            raise CyclicRelation("relation contains a cycle")
    covers = []
    for b in below:
        for a in below[b]:
            if not any(a in below[c] for c in below[b] if c != a):
                covers.append((a, b))
    return Poset(count, tuple(sorted(covers)))


def parse_poset(text: str) -> Poset:
    data = json.loads(text)
    return from_covers(int(data["elements"]), data.get("covers", []))


def chain(k: int) -> Poset:
    return Poset(k, tuple((i, i + 1) for i in range(1, k)))


def antichain(k: int) -> Poset:
    return Poset(k, ())


def x_shape() -> Poset:
    return from_covers(5, [(1, 3), (2, 3), (3, 4), (3, 5)])


# ---------------------------------------------------------------------------
# Hasse diagram of P-hat


@dataclass(frozen=True)
class HasseHat:
    """Upward-oriented Hasse diagram of ``P-hat`` on vertices ``0..top``."""

    vertex_count: int
    edges: tuple[Cover, ...]

    @property
    def top(self) -> int:
        return self.vertex_count - 1

    @property
    def d(self) -> int:
        return self.vertex_count - 1

    def sources(self) -> list[int]:
        heads = {b for _, b in self.edges}
        return [v for v in range(self.vertex_count) if v not in heads]

    def sinks(self) -> list[int]:
        tails = {a for a, _ in self.edges}
        return [v for v in range(self.vertex_count) if v not in tails]


def hasse_hat(poset: Poset) -> HasseHat:
    top = poset.element_count + 1
    edges = set(poset.covers)
    for p in poset.minimal():
        edges.add((0, p))
    for p in poset.maximal():
        edges.add((p, top))
    if poset.element_count == 0:
        edges.add((0, top))
    return HasseHat(top + 1, tuple(sorted(edges)))


# ---------------------------------------------------------------------------
# Enumerations


def poset_ideals(poset: Poset) -> list[frozenset[int]]:
    """All down-closed subsets, sorted by (size, elements)."""
    out = [frozenset()]
    for anti in antichains(poset):
        if anti:
            out.append(frozenset(anti).union(*(poset.below[a] for a in anti)))
    return sorted(set(out), key=lambda s: (len(s), sorted(s)))


def antichains(poset: Poset) -> list[frozenset[int]]:
    out: list[frozenset[int]] = []

    def grow(current: list[int], start: int) -> None:
        out.append(frozenset(current))
        for p in range(start, poset.element_count + 1):
            if all(not poset.comparable(p, q) for q in current):
                grow(current + [p], p + 1)

    grow([], 1)
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def maximal_chains_hat(poset: Poset) -> list[tuple[int, ...]]:
    """Maximal chains of ``P-hat`` as vertex tuples from 0 to the top index."""
    hat = hasse_hat(poset)
    succ: dict[int, list[int]] = {v: [] for v in range(hat.vertex_count)}
    for a, b in hat.edges:
        succ[a].append(b)
    out = []

    def walk(path: list[int]) -> None:
        v = path[-1]
        if v == hat.top:
            out.append(tuple(path))
            return
        for w in sorted(succ[v]):
            walk(path + [w])

    walk([0])
    return sorted(out)


def maximal_chains(poset: Poset) -> list[tuple[int, ...]]:
    """Maximal chains of ``P`` itself (P-hat chains with 0-hat and 1-hat stripped)."""
    return [c[1:-1] for c in maximal_chains_hat(poset)]


def is_pure(poset: Poset) -> bool:
    return len({len(c) for c in maximal_chains(poset)}) <= 1


# ---------------------------------------------------------------------------
# Constructions


def disjoint_union(p: Poset, q: Poset) -> Poset:
    shift = p.element_count
    covers = list(p.covers) + [(a + shift, b + shift) for a, b in q.covers]
    return Poset(p.element_count + q.element_count, tuple(sorted(covers)))


def ordinal_sum(p: Poset, q: Poset) -> Poset:
    """``P`` below a fresh element ``z`` below ``Q``; ``z`` gets index |P| + 1."""
    z = p.element_count + 1
    shift = z
    covers = list(p.covers)
    covers += [(m, z) for m in p.maximal()]
    covers += [(z, m + shift) for m in q.minimal()]
    covers += [(a + shift, b + shift) for a, b in q.covers]
    return Poset(p.element_count + q.element_count + 1, tuple(sorted(covers)))


def induced_subposet(poset: Poset, subset: Iterable[int]) -> tuple[Poset, list[int]]:
    """Induced order on ``subset``; returns the poset and the old labels in order."""
    labels = sorted(subset)
    index = {p: i + 1 for i, p in enumerate(labels)}
    rel = [(index[a], index[b]) for a in labels for b in labels if poset.lt(a, b)]
    return from_relation(len(labels), rel), labels


# ---------------------------------------------------------------------------
# Structural predicates


def cut_points(poset: Poset) -> list[int]:
    """Elements comparable with every other element, bottom to top."""
    pts = [p for p in poset.elements if all(poset.comparable(p, q) for q in poset.elements)]
    return sorted(pts, key=lambda p: len(poset.below[p]))


def _components(poset: Poset, elems: Sequence[int]) -> list[list[int]]:
    left = set(elems)
    comps = []
    while left:
        stack = [min(left)]
        comp = set()
        while stack:
            p = stack.pop()
            if p in comp:
                continue
            comp.add(p)
            stack.extend(q for q in left if q not in comp and poset.comparable(p, q))
        left -= comp
        comps.append(sorted(comp))
    return comps


def _is_chain(poset: Poset, elems: Sequence[int]) -> bool:
    return all(poset.comparable(a, b) for a, b in combinations(elems, 2))


def x_blocks(poset: Poset) -> list[list[int]]:
    """Non-cut elements grouped by the gap between consecutive cut points."""
    cuts = cut_points(poset)
    rest = [p for p in poset.elements if p not in cuts]
    blocks: dict[int, list[int]] = {}
    for p in rest:
        key = sum(1 for c in cuts if poset.lt(c, p))
        blocks.setdefault(key, []).append(p)
    return [sorted(blocks[k]) for k in sorted(blocks)]


def is_general_x_shape(poset: Poset) -> bool:
    """Ordinal sum of chains and of disjoint unions of two chains."""
    for block in x_blocks(poset):
        comps = _components(poset, block)
        if len(comps) != 2 or not all(_is_chain(poset, c) for c in comps):
            return False
    return True


def contains_x_shape(poset: Poset) -> bool:
    """Whether five elements ``a, b < c < e, f`` occur (a||b and e||f)."""
    for c in poset.elements:
        low = sorted(poset.below[c])
        high = sorted(poset.above[c])
        has_low = any(not poset.comparable(a, b) for a, b in combinations(low, 2))
        has_high = any(not poset.comparable(a, b) for a, b in combinations(high, 2))
        if has_low and has_high:
            return True
    return False


def comparability_graph(poset: Poset):
    from .graph import SimpleGraph

    edges = [(a, b) for a in poset.elements for b in poset.elements if a < b and poset.comparable(a, b)]
    return SimpleGraph(poset.element_count, frozenset(edges))


# ---------------------------------------------------------------------------
# Isomorphism classes (brute force, desk scale)


def canonical_form(poset: Poset) -> tuple:
    """Lexicographically least relation matrix over label permutations that
    respect the (down-size, up-size) profile."""
    k = poset.element_count
    profile = {p: (len(poset.below[p]), len(poset.above[p])) for p in poset.elements}
    classes: dict[tuple, list[int]] = {}
    for p in poset.elements:
        classes.setdefault(profile[p], []).append(p)
    keys = sorted(classes)
    best = None

    def assign(i: int, order: list[int]) -> None:
        nonlocal best
        if i == len(keys):
            code = tuple(int(poset.lt(a, b)) for a in order for b in order)
            if best is None or code < best:
                best = code
            return
        for perm in permutations(classes[keys[i]]):
            assign(i + 1, order + list(perm))

    assign(0, [])
    return (k, tuple(keys), best)


def all_posets(max_elements: int) -> list[Poset]:
    """One representative per isomorphism class, for 0..max_elements elements.

    Each poset arises from a smaller one by adding a new maximal element on
    top of an order ideal.
    """
    out = [Poset(0, ())]
    layer = [Poset(0, ())]
    for k in range(1, max_elements + 1):
        seen: dict[tuple, Poset] = {}
        for p in layer:
            for ideal in poset_ideals(p):
                rel = [(a, b) for b in p.elements for a in p.below[b]]
                rel += [(a, k) for a in ideal]
                q = from_relation(k, rel)
                key = canonical_form(q)
                if key not in seen:
                    seen[key] = q
        layer = [seen[key] for key in sorted(seen)]
        out.extend(layer)
    return out
