"""Command line front end: ``conic-forge <command> ...``.

Reports are JSON on stdout (sorted keys); diagnostics go to stderr.
Exit codes: 0 success, 2 bad input, 3 invariant violation, 4 graph not
perfect, 5 certificate failure, 6 mathematical mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from itertools import product
from typing import Callable, Optional, Sequence

from . import config
from .conic import (
    classes_json,
    conic_classes,
    conic_oracle,
    intersect,
    is_centrally_symmetric,
    lattice_points,
    region_CG,
    region_CG_prime,
    region_CP,
    small_IJ_region,
    symmetry_center_doubled,
    verify_zonotope_equality,
)
from .conjecture import conjecture_regions
from .errors import (
    BadArity,
    BadMultiplicity,
    CyclicRelation,
    InvariantViolation,
    NotPerfect,
    RedundantCover,
    ScheduleStuck,
    TooLarge,
)
from .graph import (
    SimpleGraph,
    all_graphs,
    from_edges,
    gen_family,
    is_chordal,
    is_comparability,
    is_perfect,
    maximal_cliques,
    maximal_stable_sets,
)
from .nccr import nccr_certificate
from .poset import Poset, all_posets, comparability_graph, from_covers
from .symmetry import classify_hibi, classify_stab
from .toric import hibi_presentation, stab_presentation

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INVARIANT = 3
EXIT_NOT_PERFECT = 4
EXIT_CERTIFICATE = 5
EXIT_MISMATCH = 6

PARSE_ERRORS = (
    json.JSONDecodeError,
    KeyError,
    TypeError,
    ValueError,
    CyclicRelation,
    RedundantCover,
    BadArity,
    BadMultiplicity,
    TooLarge,
)


class CertificateFailure(Exception):
    def __init__(self, report: dict):
        super().__init__("certificate failure")
        self.report = report


class Mismatch(Exception):
    def __init__(self, report: dict):
        super().__init__("mathematical mismatch")
        self.report = report


# ---------------------------------------------------------------------------
# Input


def load_input(path: str):
    """A poset (``elements`` key) or a graph (``vertices`` key)."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("input must be a JSON object")
    if "elements" in data:
        return from_covers(int(data["elements"]), data.get("covers", []))
    if "vertices" in data:
        return from_edges(int(data["vertices"]), data.get("edges", []))
    raise KeyError("expected an 'elements' or 'vertices' key")


def parse_r(text: str) -> tuple[int, ...]:
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if not parts:
        raise ValueError("empty --r list")
    return tuple(int(p) for p in parts)


# ---------------------------------------------------------------------------
# Reports


def hibi_report(poset: Poset, full: bool) -> dict:
    t = hibi_presentation(poset)
    region = region_CP(poset)
    classes = conic_classes(t)
    center2 = symmetry_center_doubled(t)
    if not is_centrally_symmetric(classes, center2):
        raise InvariantViolation("conic classes are not centrally symmetric")
    out = {
        "poset": poset.to_json(),
        "class_rank": t.class_rank,
        "conic_count": len(classes),
        "region_count": len(region.constraints),
        "symmetry": classify_hibi(poset).to_json(),
        "center_doubled": list(center2),
    }
    if full:
        out["presentation"] = t.to_json()
        out["region"] = region.to_json()
        out["conic_classes"] = classes_json(classes)
    return out


def stab_report(g: SimpleGraph, full: bool) -> dict:
    if not is_perfect(g):
        raise NotPerfect("graph contains an odd hole or odd antihole")
    t = stab_presentation(g)
    region = region_CG(g, t)
    classes = conic_classes(t)
    center2 = symmetry_center_doubled(t)
    if not is_centrally_symmetric(classes, center2):
        raise InvariantViolation("conic classes are not centrally symmetric")
    out = {
        "graph": g.to_json(),
        "cliques": [list(q) for q in t.cliques],
        "class_rank": t.class_rank,
        "conic_count": len(classes),
        "symmetry": classify_stab(g).to_json(),
        "center_doubled": list(center2),
        "region": region.to_json(),
    }
    if full:
        out["presentation"] = t.to_json()
        out["conic_classes"] = classes_json(classes)
    return out


def family_report(r: Sequence[int], full: bool) -> dict:
    fam = gen_family(r)
    g = fam.graph
    t = stab_presentation(g, fam.cliques)
    cliques = maximal_cliques(g)
    stable = maximal_stable_sets(g)
    expected_stable = _family_stable_sets(fam)
    out = {
        "r": list(fam.r),
        "graph": g.to_json(),
        "cliques": [list(q) for q in fam.cliques],
        "cliques_match": sorted(cliques) == sorted(fam.cliques),
        "stable_sets_match": stable == expected_stable,
        "chordal": is_chordal(g),
        "comparability": is_comparability(g),
        "gorenstein": len({len(q) for q in cliques}) == 1,
        "class_rank": t.class_rank,
    }
    if full:
        out["stable_sets"] = [list(s) for s in stable]
        out["plus"] = [list(q) for q in fam.plus[1:]]
        out["minus"] = [list(q) for q in fam.minus[1:]]
    return out


def _family_stable_sets(fam) -> list[tuple[int, ...]]:
    """Pairs ``{v, v'}`` with ``v`` in ``Q_i^+`` and ``v'`` in ``Q_i^-``, and
    transversals of ``Q_1^+, ..., Q_n^+``."""
    n = len(fam.r)
    out = set()
    for i in range(1, n + 1):
        for v in fam.plus[i]:
            for w in fam.minus[i]:
                out.add(tuple(sorted((v, w))))
    for choice in product(*fam.plus[1:]):
        out.add(tuple(sorted(choice)))
    return sorted(out)


def three_way_hibi(poset: Poset) -> dict:
    t = hibi_presentation(poset)
    oracle = conic_oracle(t)
    zono = conic_classes(t)
    region = lattice_points(region_CP(poset))
    eq = verify_zonotope_equality(t, region_CP(poset, prime=True))
    return _compare("hibi", oracle, zono, region, eq)


def three_way_stab(g: SimpleGraph) -> dict:
    t = stab_presentation(g)
    oracle = conic_oracle(t)
    zono = conic_classes(t)
    region = lattice_points(region_CG(g, t))
    prime = region_CG_prime(g, t)
    if t.class_rank:
        prime = intersect(prime, small_IJ_region(t, 2))
    eq = verify_zonotope_equality(t, prime)
    return _compare("stab", oracle, zono, region, eq)


def _compare(kind: str, oracle, zono, region, eq) -> dict:
    so, sz, sr = set(oracle), set(zono), set(region)
    agree = so == sz == sr
    out = {
        "kind": kind,
        "oracle_count": len(so),
        "zonotope_count": len(sz),
        "region_count": len(sr),
        "agree": agree,
        "zonotope_equality": eq.to_json(),
    }
    if not agree:
        out["oracle_only"] = classes_json(so - sz - sr)
        out["zonotope_only"] = classes_json(sz - so)
        out["region_only"] = classes_json(sr - sz)
        out["missing_from_region"] = classes_json(sz - sr)
    return out


# ---------------------------------------------------------------------------
# Commands


def cmd_analyze_hibi(args) -> dict:
    obj = load_input(args.input)
    if not isinstance(obj, Poset):
        raise ValueError("analyze-hibi expects a poset file")
    return hibi_report(obj, args.json)


def cmd_analyze_stab(args) -> dict:
    obj = load_input(args.input)
    if not isinstance(obj, SimpleGraph):
        raise ValueError("analyze-stab expects a graph file")
    return stab_report(obj, args.json)


def cmd_family(args) -> dict:
    return family_report(_need_r(args), args.json)


def cmd_nccr_verify(args) -> dict:
    r = _need_r(args)
    try:
        cert = nccr_certificate(r)
    except ScheduleStuck as exc:
        report = {"r": list(r), "valid": False, "stuck": [list(c) for c in exc.residual]}
        raise CertificateFailure(report) from exc
    report = {
        "r": list(r),
        "valid": cert.valid,
        "condition_a": cert.condition_a,
        "condition_b": cert.condition_b,
        "stratified": cert.stratified,
        "Ltilde_count": len(cert.Ltilde),
        "L_count": len(cert.L),
        "steps": len(cert.schedule),
    }
    if args.json:
        report["certificate"] = cert.to_json()
    if not (cert.valid and cert.stratified):
        raise CertificateFailure(report)
    return report


def cmd_oracle_check(args) -> dict:
    if args.r:
        fam = gen_family(parse_r(args.r))
        obj: object = fam.graph
    else:
        obj = load_input(_need_input(args))
    if isinstance(obj, Poset):
        report = {"hibi": three_way_hibi(obj)}
        g = comparability_graph(obj)
        report["stab_of_comparability_graph"] = three_way_stab(g)
        report["conjecture"] = conjecture_regions(obj).to_json() if args.json else _conj_summary(obj)
        ok = report["hibi"]["agree"] and report["stab_of_comparability_graph"]["agree"]
        ok = ok and report["hibi"]["zonotope_equality"]["equal"]
        ok = ok and report["stab_of_comparability_graph"]["zonotope_equality"]["equal"]
    else:
        if not is_perfect(obj):
            raise NotPerfect("graph contains an odd hole or odd antihole")
        report = {"stab": three_way_stab(obj)}
        ok = report["stab"]["agree"] and report["stab"]["zonotope_equality"]["equal"]
    if not ok:
        raise Mismatch(report)
    return report


def _conj_summary(poset: Poset) -> dict:
    rep = conjecture_regions(poset)
    return {"verdict": rep.verdict, "containment": rep.containment, "extra_points": len(rep.extra_points)}


def cmd_conjecture_check(args) -> dict:
    obj = load_input(_need_input(args))
    if not isinstance(obj, Poset):
        raise ValueError("conjecture-check expects a poset file")
    rep = conjecture_regions(obj)
    if rep.verdict != "MATCH":
        print(f"conjecture verdict {rep.verdict}: reverse inclusion not confirmed", file=sys.stderr)
    return rep.to_json() if args.json else _conj_summary(obj)


def _sweep_poset(p: Poset) -> dict:
    row = {"poset": p.to_json()}
    row.update(three_way_hibi(p))
    try:
        sym = classify_hibi(p)
        row["symmetry_ok"] = True
        row["weakly"] = sym.weakly
        row["gorenstein"] = sym.gorenstein
    except InvariantViolation as exc:
        row["symmetry_ok"] = False
        row["symmetry_error"] = str(exc)
    conj = conjecture_regions(p)
    row["conjecture"] = conj.verdict
    return row


def _sweep_graph(g: SimpleGraph) -> dict:
    row = {"graph": g.to_json()}
    row.update(three_way_stab(g))
    try:
        sym = classify_stab(g)
        row["symmetry_ok"] = True
        row["weakly"] = sym.weakly
        row["gorenstein"] = sym.gorenstein
    except InvariantViolation as exc:
        row["symmetry_ok"] = False
        row["symmetry_error"] = str(exc)
    return row


def run_sweep(kind: str, bound: int, threads: int = 1) -> dict:
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    if bound > config.max_d():
        raise TooLarge(f"bound {bound} exceeds {config.max_d()}")
    if kind == "posets":
        items = all_posets(bound) if bound else []
        work: Callable = _sweep_poset
    else:
        items = [g for g in all_graphs(bound) if is_perfect(g)] if bound else []
        work = _sweep_graph
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        rows = list(pool.map(work, items))
    bad = [
        row
        for row in rows
        if not (row["agree"] and row["zonotope_equality"]["equal"] and row["symmetry_ok"])
    ]
    summary = {
        "kind": kind,
        "bound": bound,
        "instances": len(rows),
        "violations": len(bad),
        "weakly_symmetric": sum(1 for row in rows if row.get("weakly")),
        "gorenstein": sum(1 for row in rows if row.get("gorenstein")),
    }
    if kind == "posets":
        summary["conjecture_non_match"] = sum(1 for row in rows if row.get("conjecture") != "MATCH")
    if bad:
        summary["failures"] = bad
    return summary


def cmd_sweep(args) -> dict:
    bound = args.bound if args.bound is not None else 0
    summary = run_sweep(args.kind, bound, args.threads)
    if summary["violations"]:
        raise Mismatch(summary)
    return summary


def _need_r(args) -> tuple[int, ...]:
    if not args.r:
        raise ValueError("--r is required")
    return parse_r(args.r)


def _need_input(args) -> str:
    if not args.input:
        raise ValueError("--input is required")
    return args.input


COMMANDS = {
    "analyze-hibi": cmd_analyze_hibi,
    "analyze-stab": cmd_analyze_stab,
    "family": cmd_family,
    "nccr-verify": cmd_nccr_verify,
    "oracle-check": cmd_oracle_check,
    "sweep": cmd_sweep,
    "conjecture-check": cmd_conjecture_check,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="conic-forge", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    src = parser.add_mutually_exclusive_group()
    src.add_argument("--input", help="poset or graph JSON file")
    src.add_argument("--r", help="comma separated parts r_1,...,r_n of the family")
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--bound", type=int, default=None, help="size bound for sweep")
    parser.add_argument("--kind", choices=["posets", "graphs"], default="posets")
    parser.add_argument("--json", action="store_true", help="full report instead of a summary")
    return parser


def emit(report: dict) -> None:
    sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be positive")
    if args.command in ("analyze-hibi", "analyze-stab", "conjecture-check") and not args.input:
        parser.error(f"{args.command} needs --input")
    if args.command in ("family", "nccr-verify") and not args.r:
        parser.error(f"{args.command} needs --r")
    try:
        report = COMMANDS[args.command](args)
    except (OSError,) + PARSE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NotPerfect as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_PERFECT
    except CertificateFailure as exc:
        emit(exc.report)
        print("error: certificate failed", file=sys.stderr)
        return EXIT_CERTIFICATE
    except Mismatch as exc:
        emit(exc.report)
        print("error: mathematical mismatch", file=sys.stderr)
        return EXIT_MISMATCH
    except InvariantViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    emit(report)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
