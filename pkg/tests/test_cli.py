import io
import json
import os
import re
import shlex
import subprocess
import sys
from pathlib import Path

import pytest

from simpcx.cli import invariants_record, main
from simpcx.constructions import build, minimal_rp2
from simpcx.homology import homology_summary

README = Path(__file__).resolve().parents[1] / "README.md"


def run(argv, capsys, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def cli(*args, input=None):
    return subprocess.run([sys.executable, "-m", "simpcx", *args], input=input,
                          capture_output=True, text=True)


class TestVerbs:
    def test_build(self, capsys):
        code, out, _ = run(["build", "cyclic:4"], capsys)
        d = json.loads(out)
        assert code == 0 and len(d["triangles"]) <= 26
        assert "P" in d["marks"]["vertices"] and "xi" in d["marks"]["loops"]

    def test_invariants(self, capsys, tmp_path):
        f = tmp_path / "rp2.json"
        f.write_text(json.dumps(minimal_rp2().to_dict()))
        code, out, _ = run(["invariants", "--in", str(f)], capsys)
        assert code == 0
        assert json.loads(out) == {"s0": 6, "s1": 15, "s2": 10, "euler": 1,
                                   "betti": [1, 0, 0], "torsion": [2]}

    def test_invariants_stdin(self, capsys, monkeypatch):
        text = json.dumps(build("torus").to_dict())
        code, out, _ = run(["invariants"], capsys, stdin=text, monkeypatch=monkeypatch)
        assert json.loads(out)["betti"] == [1, 2, 1]

    def test_bounds(self, capsys):
        code, out, _ = run(["bounds", "--group", "finite_abelian:2,4"], capsys)
        assert code == 0 and json.loads(out)["kappa"]["hi"] <= 62

    def test_census_json(self, capsys):
        code, out, _ = run(["census", "9"], capsys)
        assert code == 0 and len(out.splitlines()) == 3

    def test_census_table(self, capsys):
        code, out, _ = run(["census", "10", "--format", "table"], capsys)
        assert code == 0 and len(out.splitlines()) == 10

    def test_census_budget(self, capsys):
        code, out, _ = run(["census", "9", "--budget-nodes", "20"], capsys)
        assert code == 0 and json.loads(out.splitlines()[-1])["incomplete"] is True

    def test_census_too_large(self, capsys):
        code, out, _ = run(["census", "12"], capsys)
        assert code == 1 and json.loads(out)["error"] == "TooLarge"

    def test_encode_decode(self, capsys, tmp_path):
        f = tmp_path / "x.json"
        f.write_text(json.dumps(build("rp2").to_dict()))
        run(["encode", "--in", str(f), "--out", str(tmp_path / "g.json")], capsys)
        g = json.loads((tmp_path / "g.json").read_text())
        assert (g["b"], g["g"], g["r"]) == (6, 15, 10)
        code, out, _ = run(["decode", "--in", str(tmp_path / "g.json")], capsys)
        assert code == 0 and json.loads(out)["triangles"] == build("rp2").to_dict()["triangles"]

    def test_decode_not_a_complex(self, capsys, tmp_path):
        f = tmp_path / "g.json"
        f.write_text(json.dumps({"b": 2, "g": 2, "r": 0, "A": [[1, 1], [1, 1]], "B": []}))
        code, out, _ = run(["decode", "--in", str(f)], capsys)
        assert code == 1 and json.loads(out)["error"] == "NotAComplex"

    def test_compile(self, capsys):
        code, out, _ = run(["compile", "<a | a^3>"], capsys)
        assert code == 0 and len(json.loads(out)["triangles"]) == 17

    def test_compile_needs_simplify(self, capsys):
        code, out, _ = run(["compile", "<a, b | b, a^2>"], capsys)
        assert code == 1 and json.loads(out)["error"] == "UnreducedRelator"
        code, out, _ = run(["compile", "--simplify", "<a, b | b, a^2>"], capsys)
        assert code == 0 and len(json.loads(out)["triangles"]) == 10

    def test_present(self, capsys, tmp_path):
        f = tmp_path / "x.json"
        f.write_text(json.dumps(build("rp2").to_dict()))
        code, out, _ = run(["present", "--in", str(f)], capsys)
        d = json.loads(out)
        assert d["simplified"] == "<a1 | a1^2>"
        assert d["abelianization"] == {"rank": 0, "torsion": [2]}

    def test_systole(self, capsys, tmp_path):
        f = tmp_path / "x.json"
        f.write_text(json.dumps(build("rp2").to_dict()))
        code, out, _ = run(["systole", "--in", str(f), "--ring", "2"], capsys)
        assert code == 0 and json.loads(out)["length"] == 3
        code, out, _ = run(["systole", "--in", str(f), "--ring", "3"], capsys)
        assert code == 1 and json.loads(out)["error"] == "TrivialH1"

    def test_count(self, capsys):
        code, out, _ = run(["count", "31"], capsys)
        assert json.loads(out)["lower_abelian_count"] == 4
        code, out, _ = run(["count", "2", "--which", "sigma"], capsys)
        assert json.loads(out)["lower_log2"]["value"] == pytest.approx(1.4074916, abs=1e-7)

    def test_table_format(self, capsys):
        code, out, _ = run(["bounds", "--group", "cyclic:2", "--format", "table"], capsys)
        assert code == 0 and "lo_reason" in out and "{" not in out.splitlines()[0]


class TestErrors:
    def test_unknown_verb(self):
        assert cli("frobnicate").returncode == 2

    def test_unknown_flag(self):
        r = cli("build", "rp2", "--colour")
        assert r.returncode == 2 and "usage" in r.stderr

    def test_bad_json(self):
        r = cli("invariants", input="not json")
        assert r.returncode == 2

    def test_invalid_complex(self):
        r = cli("invariants", input=json.dumps({"vertex_count": 3, "triangles": [[0, 1, 1]]}))
        assert r.returncode == 1 and json.loads(r.stdout)["error"] == "DegenerateSimplex"

    def test_bad_group(self):
        r = cli("bounds", "--group", "cyclic:1")
        assert r.returncode == 1 and json.loads(r.stdout)["error"] == "UnsupportedSpec"


def test_build_then_invariants_matches_library():
    for name in ("rp2", "torus", "cyclic:5", "freeprod:(rp2,torus)"):
        built = cli("build", name).stdout
        got = cli("invariants", input=built).stdout
        expect = json.dumps(invariants_record(build(name).complex), sort_keys=True) + "\n"
        assert got == expect
        assert json.loads(got)["torsion"] == list(homology_summary(build(name).complex).h1_torsion_factors)


def readme_sessions():
    """``$ simpcx ...`` lines from the README's console blocks, each with its shown output."""
    text = README.read_text()
    sessions = []
    for block in re.findall(r"```console\n(.*?)```", text, re.S):
        cur = None
        for line in block.splitlines():
            if line.startswith("$ "):
                cur = [line[2:], []]
                sessions.append(cur)
            elif cur is not None:
                cur[1].append(line)
    return [(cmd, "\n".join(out).strip()) for cmd, out in sessions]


def test_readme_commands(tmp_path):
    sessions = readme_sessions()
    assert len(sessions) >= 8
    bindir = str(Path(sys.executable).parent)
    env = dict(os.environ, PATH=bindir + os.pathsep + os.environ.get("PATH", ""))
    for cmd, shown in sessions:
        assert shlex.split(cmd)[0] in ("simpcx", "echo", "cat"), cmd
        r = subprocess.run(cmd, shell=True, cwd=tmp_path, env=env, capture_output=True, text=True)
        assert r.returncode == 0, (cmd, r.stdout, r.stderr)
        if shown:
            assert r.stdout.strip() == shown, cmd
