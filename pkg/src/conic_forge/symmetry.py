"""Quasi-symmetric and weakly-symmetric weight multisets, and the structural
conditions that characterize them for Hibi rings and stable set rings."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvariantViolation
from .exactmath import canonical_direction
from .graph import SimpleGraph, maximal_cliques
from .poset import Poset, is_general_x_shape, is_pure
from .toric import hibi_presentation, stab_presentation


@dataclass(frozen=True)
class LineSummary:
    direction: tuple[int, ...]
    weight_sum: tuple[int, ...]
    cone: str  # "line", "ray+" or "ray-"

    def to_json(self) -> dict:
        return {"direction": list(self.direction), "weight_sum": list(self.weight_sum), "cone": self.cone}


@dataclass(frozen=True)
class SymmetryReport:
    quasi: bool
    weakly: bool
    structural: bool
    gorenstein: bool
    lines: tuple[LineSummary, ...]

    def to_json(self) -> dict:
        return {
            "quasi_symmetric": self.quasi,
            "weakly_symmetric": self.weakly,
            "structural": self.structural,
            "gorenstein": self.gorenstein,
            "lines": [ln.to_json() for ln in self.lines],
        }


def lines(weights: Iterable[Sequence[int]]) -> list[LineSummary]:
    """Group nonzero weights by the line through the origin they span."""
    groups: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for w in weights:
        w = tuple(w)
        if any(w):
            groups.setdefault(canonical_direction(w), []).append(w)
    out = []
    for direction in sorted(groups):
        ws = groups[direction]
        total = tuple(map(sum, zip(*ws)))
        signs = {_side(direction, w) for w in ws}
        cone = "line" if len(signs) == 2 else ("ray+" if signs == {1} else "ray-")
        out.append(LineSummary(direction, total, cone))
    return out


def _side(direction: Sequence[int], w: Sequence[int]) -> int:
    return 1 if sum(a * b for a, b in zip(direction, w)) > 0 else -1


def is_quasi_symmetric(weights: Iterable[Sequence[int]]) -> bool:
    return all(not any(ln.weight_sum) for ln in lines(weights))


def is_weakly_symmetric(weights: Iterable[Sequence[int]]) -> bool:
    return all(ln.cone == "line" for ln in lines(weights))


def _report(weights, structural: bool, gorenstein: bool) -> SymmetryReport:
    ls = tuple(lines(weights))
    quasi = all(not any(ln.weight_sum) for ln in ls)
    weakly = all(ln.cone == "line" for ln in ls)
    if quasi and not weakly:
        raise InvariantViolation("quasi-symmetric but not weakly-symmetric")
    if structural != weakly:
        raise InvariantViolation(
            f"structural condition {structural} disagrees with weak symmetry {weakly}"
        )
    if gorenstein and quasi != weakly:
        raise InvariantViolation("Gorenstein ring with quasi != weakly")
    return SymmetryReport(quasi, weakly, structural, gorenstein, ls)


def classify_hibi(poset: Poset) -> SymmetryReport:
    t = hibi_presentation(poset)
    return _report(t.weights, is_general_x_shape(poset), is_pure(poset))


def classify_stab(g: SimpleGraph) -> SymmetryReport:
    cliques = maximal_cliques(g)
    t = stab_presentation(g)
    gorenstein = len({len(q) for q in cliques}) == 1
    return _report(t.weights, len(cliques) <= 2, gorenstein)
