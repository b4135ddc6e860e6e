from __future__ import annotations

import json
import subprocess
import sys

import pytest

from conic_forge import cli
from conic_forge.errors import InvariantViolation
from conic_forge.nccr import NccrCertificate

# Six triangles glued along edges into a strip on seven vertices.
TRIANGLE_STRIP = {
    "vertices": 7,
    "edges": [[1, 2], [1, 3], [2, 3], [2, 4], [3, 4], [2, 5], [4, 5], [3, 6], [4, 6], [5, 6], [5, 7], [6, 7]],
}


@pytest.fixture
def write(tmp_path):
    def _write(name, data):
        path = tmp_path / name
        path.write_text(data if isinstance(data, str) else json.dumps(data))
        return str(path)

    return _write


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_analyze_hibi(capsys, write):
    code, rep = run(capsys, "analyze-hibi", "--input", write("a.json", {"elements": 2, "covers": []}))
    assert code == 0 and rep["class_rank"] == 1 and rep["conic_count"] == 3
    code, rep = run(capsys, "analyze-hibi", "--input", write("c.json", {"elements": 3, "covers": [[1, 2], [2, 3]]}))
    assert code == 0 and rep["class_rank"] == 0 and rep["conic_count"] == 1


def test_analyze_hibi_full_report(capsys, write):
    code, rep = run(capsys, "analyze-hibi", "--json", "--input", write("a.json", {"elements": 2, "covers": []}))
    assert code == 0
    assert rep["conic_classes"] == [[-1], [0], [1]]
    assert rep["region"] == [{"normal": [1], "lo": -1, "hi": 1, "provenance": rep["region"][0]["provenance"]}]


def test_parse_errors(capsys, write):
    assert run(capsys, "analyze-hibi", "--input", write("bad.json", "{bad"))[0] == 2
    assert run(capsys, "analyze-hibi", "--input", write("cyc.json", {"elements": 2, "covers": [[1, 2], [2, 1]]}))[0] == 2
    assert run(capsys, "analyze-hibi", "--input", write("g.json", TRIANGLE_STRIP))[0] == 2
    assert run(capsys, "analyze-hibi", "--input", "/nonexistent/file.json")[0] == 2


def test_analyze_stab(capsys, write):
    code, rep = run(capsys, "analyze-stab", "--input", write("g.json", TRIANGLE_STRIP))
    assert code == 0
    assert rep["cliques"] == [[1, 2, 3], [2, 3, 4], [2, 4, 5], [3, 4, 6], [4, 5, 6], [5, 6, 7]]
    assert rep["class_rank"] == 5
    facet = next(c for c in rep["region"] if c["normal"] == [2, -1, -1, 0, 1])
    assert (facet["lo_prime"], facet["hi_prime"]) == (-4, 4)


def test_analyze_stab_other_graphs(capsys, write):
    k4 = {"vertices": 4, "edges": [[a, b] for a in range(1, 5) for b in range(a + 1, 5)]}
    code, rep = run(capsys, "analyze-stab", "--input", write("k4.json", k4))
    assert code == 0 and rep["class_rank"] == 0
    c5 = {"vertices": 5, "edges": [[1, 2], [2, 3], [3, 4], [4, 5], [5, 1]]}
    assert run(capsys, "analyze-stab", "--input", write("c5.json", c5))[0] == 4


def test_family_and_nccr(capsys):
    code, rep = run(capsys, "family", "--r", "2,1,1")
    assert code == 0
    assert rep["cliques_match"] and rep["stable_sets_match"] and rep["chordal"]
    assert not rep["comparability"] and rep["gorenstein"]
    code, rep = run(capsys, "nccr-verify", "--r", "1,1,1")
    assert code == 0 and rep["valid"] and rep["Ltilde_count"] == 27
    code, rep = run(capsys, "nccr-verify", "--r", "2,1,1")
    assert code == 0 and rep["valid"] and rep["stratified"]
    assert run(capsys, "nccr-verify", "--r", "1,1")[0] == 2


def test_nccr_certificate_failure(capsys, monkeypatch):
    def broken(r):
        return NccrCertificate(((0, 0, 0),), ((0, 0, 0),), (), False, True, True)

    monkeypatch.setattr(cli, "nccr_certificate", broken)
    code, rep = run(capsys, "nccr-verify", "--r", "1,1,1")
    assert code == 5 and rep["valid"] is False


def test_oracle_check(capsys, write):
    code, rep = run(capsys, "oracle-check", "--input", write("a.json", {"elements": 2, "covers": []}))
    assert code == 0 and rep["hibi"]["agree"] and rep["hibi"]["oracle_count"] == 3
    code, rep = run(capsys, "oracle-check", "--r", "1,1,1")
    assert code == 0 and rep["stab"]["oracle_count"] == 27
    two_one_three = {"elements": 6, "covers": [[1, 3], [2, 3], [3, 4], [3, 5], [3, 6]]}
    code, rep = run(capsys, "oracle-check", "--input", write("two_one_three.json", two_one_three))
    assert code == 0
    assert rep["stab_of_comparability_graph"]["agree"]
    assert rep["conjecture"]["verdict"] in ("MATCH", "EXTRA", "UNBOUNDED")


def test_oracle_check_mismatch_exit(capsys, write, monkeypatch):
    real = cli.three_way_stab

    def skewed(g):
        rep = real(g)
        rep["agree"] = False
        return rep

    monkeypatch.setattr(cli, "three_way_stab", skewed)
    assert run(capsys, "oracle-check", "--input", write("g.json", TRIANGLE_STRIP))[0] == 6


def test_invariant_violation_exit(capsys, write, monkeypatch):
    def boom(poset, full):
        raise InvariantViolation("broken")

    monkeypatch.setattr(cli, "hibi_report", boom)
    assert run(capsys, "analyze-hibi", "--input", write("a.json", {"elements": 1}))[0] == 3


def test_conjecture_check(capsys, write):
    code, rep = run(capsys, "conjecture-check", "--input", write("x.json", {"elements": 5, "covers": [[1, 3], [2, 3], [3, 4], [3, 5]]}))
    assert code == 0 and rep["containment"]


def test_sweep(capsys):
    code, rep = run(capsys, "sweep", "--bound", "0")
    assert code == 0 and rep["instances"] == 0
    code, rep = run(capsys, "sweep", "--kind", "posets", "--bound", "3")
    assert code == 0 and rep["instances"] == 1 + 1 + 2 + 5 and rep["violations"] == 0
    code, rep = run(capsys, "sweep", "--kind", "graphs", "--bound", "4")
    assert code == 0 and rep["instances"] == 1 + 1 + 2 + 4 + 11 and rep["violations"] == 0


def test_sweep_bound_limit(capsys, monkeypatch):
    monkeypatch.setenv("CONIC_FORGE_MAX_D", "3")
    assert run(capsys, "sweep", "--bound", "4")[0] == 2


def test_usage_errors():
    with pytest.raises(SystemExit) as info:
        cli.main(["analyze-hibi"])
    assert info.value.code == 2
    with pytest.raises(SystemExit):
        cli.main(["sweep", "--threads", "0"])


def test_output_identical_across_runs_and_threads(write):
    path = write("g.json", TRIANGLE_STRIP)

    def out(*argv):
        return subprocess.run(
            [sys.executable, "-m", "conic_forge.cli", *argv], capture_output=True, check=True
        ).stdout

    first = out("oracle-check", "--input", path, "--json")
    assert first == out("oracle-check", "--input", path, "--json", "--threads", "3")
    sweep = out("sweep", "--kind", "posets", "--bound", "4", "--json")
    assert sweep == out("sweep", "--kind", "posets", "--bound", "4", "--json", "--threads", "4")
