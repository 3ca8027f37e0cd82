from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from zipcone import __version__
from zipcone.cli import EXIT_FAIL, EXIT_PASS, EXIT_REFUSED, EXIT_USAGE, main, parse_q_values

SCHEMA = json.loads((Path(__file__).resolve().parents[1] / "src" / "zipcone" / "schemas"
                     / "report.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# ---------------------------------------------------------------------------
# describe


def test_describe_sp6_hw(capsys):
    code, out, _ = run(capsys, "describe", "--case", "sp6", "--q", "5", "--cone", "hw")
    assert code == EXIT_PASS
    assert "25a1+5a2+a3 <= 0 (within X+I)" in out.splitlines()


def test_describe_u3_21_lw(capsys):
    code, out, _ = run(capsys, "describe", "--case", "u3-21", "--q", "5", "--cone", "lw")
    assert code == EXIT_PASS
    assert "4a1+a2-5a3 <= 0" in out


def test_describe_x_plus(capsys):
    code, out, _ = run(capsys, "describe", "--cone", "xplusI", "--case", "sp6", "--q", "2")
    assert code == EXIT_PASS
    assert "a1>=a2>=a3" in out


def test_describe_family_and_mu(capsys):
    code, out, _ = run(capsys, "describe", "--family", "Sp", "--mu", "1,1,1", "--q", "5", "--cone", "hw")
    assert code == EXIT_PASS
    assert "25a1+5a2+a3 <= 0 (within X+I)" in out


@pytest.mark.parametrize("argv", [
    ["describe", "--case", "sp6", "--q", "5", "--cone", "nope"],
    ["describe", "--case", "sp6", "--q", "1", "--cone", "hw"],
    ["describe", "--case", "sp6", "--q", "x", "--cone", "hw"],
    ["describe", "--q", "5", "--cone", "hw"],
    ["describe", "--case", "sp9", "--q", "5", "--cone", "hw"],
    ["describe", "--family", "GL", "--mu", "1,a", "--q", "5", "--cone", "hw"],
    ["frobnicate"],
])
def test_bad_arguments_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as info:
        raise SystemExit(main(argv))
    assert info.value.code == EXIT_USAGE


# ---------------------------------------------------------------------------
# verify


def test_verify_sp6_five(capsys):
    code, out, _ = run(capsys, "verify", "--case", "sp6", "--q", "5")
    assert code == EXIT_PASS
    rep = json.loads(out)
    jsonschema.validate(rep, SCHEMA)
    assert rep["status"] == "pass" and rep["version"] == __version__


def test_verify_sp6_two_is_refused(capsys):
    code, out, err = run(capsys, "verify", "--case", "sp6", "--q", "2")
    assert code == EXIT_REFUSED
    assert "u(q) negative" in out + err
    jsonschema.validate(json.loads(out), SCHEMA)


def test_verify_gl4_22_two(capsys):
    code, out, _ = run(capsys, "verify", "--case", "gl4-22", "--q", "2")
    assert code == EXIT_PASS
    jsonschema.validate(json.loads(out), SCHEMA)


def test_verify_tabulated_fails(capsys):
    code, out, _ = run(capsys, "verify", "--case", "sp6", "--q", "5", "--tabulated")
    assert code == EXIT_FAIL
    rep = json.loads(out)
    jsonschema.validate(rep, SCHEMA)
    assert rep["errata_applied"] is False and rep["status"] == "fail"


def test_verify_mixed_range_reports_refusal(capsys):
    code, out, _ = run(capsys, "verify", "--case", "sp6", "--q-range", "4:5")
    assert code == EXIT_REFUSED
    assert json.loads(out)["q"] == [4, 5]


def test_verify_unknown_case(capsys):
    code, _, err = run(capsys, "verify", "--case", "nope", "--q", "5")
    assert code == EXIT_USAGE and "unknown case" in err


def test_parse_q_values():
    assert parse_q_values("5,3,5", None) == [3, 5]
    assert parse_q_values(None, "2:4") == [2, 3, 4]
    assert parse_q_values(None, "2-4") == [2, 3, 4]


# ---------------------------------------------------------------------------
# certify


def test_certify_gl4_31(capsys):
    code, out, _ = run(capsys, "certify", "--case", "gl4-31", "--w", "4312", "--q", "7", "--target", "49,7,1")
    assert code == EXIT_PASS
    assert "certificate" in out and "1*F3" in out


def test_certify_from_neighbors_json(capsys):
    code, out, _ = run(capsys, "certify", "--case", "gl4-31", "--w", "4312", "--q", "7",
                       "--target", "49,7,1", "--sources", "neighbors", "--json")
    assert code == EXIT_PASS
    rep = json.loads(out)
    assert rep["status"] == "certificate"
    assert rep["coefficients"] == {"e2-e3#1": "1", "e2-e3#2": "49"}
    assert rep["sources"] == {"e2-e3#1": "7a2+a3 <= 0", "e2-e3#2": "a1 <= 0"}


def test_certify_zero_target(capsys):
    code, out, _ = run(capsys, "certify", "--case", "gl4-31", "--w", "4312", "--q", "7", "--target", "0,0,0")
    assert code == EXIT_PASS
    assert "target = 0" in out


def test_certify_unprovable_prints_witness(capsys):
    code, out, _ = run(capsys, "certify", "--case", "u3-21", "--w", "231", "--q", "5", "--target=-1,0")
    assert code == EXIT_FAIL
    assert "witness" in out


@pytest.mark.parametrize("target", ["1,2", "a,b,c", "1,,2", ""])
def test_certify_malformed_target(capsys, target):
    code, _, _ = run(capsys, "certify", "--case", "gl4-31", "--w", "4312", "--q", "7", f"--target={target}")
    assert code == EXIT_USAGE


def test_certify_w_outside_group(capsys):
    code, _, _ = run(capsys, "certify", "--case", "gl4-31", "--w", "4311", "--q", "7", "--target", "1,0,0")
    assert code == EXIT_USAGE


# ---------------------------------------------------------------------------
# strata


def test_strata_sp6(capsys):
    code, out, _ = run(capsys, "strata", "--case", "sp6", "--format", "json")
    assert code == EXIT_PASS
    rep = json.loads(out)
    assert len(rep["strata"]) == 8
    first = rep["strata"][0]
    assert first["w"] == "[123]" and first["length"] == 0 and first["E"] == []
    assert [s["length"] for s in rep["strata"]] == sorted(s["length"] for s in rep["strata"])


def test_strata_gl4_31(capsys):
    code, out, _ = run(capsys, "strata", "--case", "gl4-31", "--format", "json")
    assert len(json.loads(out)["strata"]) == 4


@pytest.mark.parametrize("fmt", ["text", "dot"])
def test_strata_other_formats(capsys, fmt):
    code, out, _ = run(capsys, "strata", "--case", "sp6", "--format", fmt)
    assert code == EXIT_PASS and "[123]" in out
    if fmt == "dot":
        assert out.startswith("digraph")


# ---------------------------------------------------------------------------
# plot, sweep, audit


def test_plot_sp6(capsys):
    code, out, _ = run(capsys, "plot", "--case", "sp6", "--q", "5")
    assert code == EXIT_PASS
    assert out.startswith("<svg") and "25a1+5a2+a3 &gt; 0" in out


def test_plot_planar_case(capsys):
    code, out, _ = run(capsys, "plot", "--case", "sp4", "--q", "5")
    assert code == EXIT_PASS and "planar" in out


def test_plot_unsupported_dimension(capsys):
    code, _, err = run(capsys, "plot", "--case", "b4-spin", "--q", "5")
    assert code == EXIT_USAGE and "dimension" in err


def test_plot_warns_about_rays_off_the_slice(capsys):
    code, out, err = run(capsys, "plot", "--case", "gl4-22", "--q", "5")
    assert code == EXIT_PASS
    assert "does not meet the slice" in out and err


def test_sweep(capsys):
    code, out, _ = run(capsys, "sweep", "--cases", "sp6,gl4-31", "--q", "2,5")
    rep = json.loads(out)
    assert code == EXIT_REFUSED
    assert rep["summary"] == {"pass": 3, "fail": 0, "refused": 1}


def test_sweep_all_pass(capsys):
    code, out, _ = run(capsys, "sweep", "--cases", "gl4-31,u3-21", "--q-range", "2:3", "--jobs", "2")
    assert code == EXIT_PASS and json.loads(out)["summary"]["pass"] == 4


def test_audit(capsys):
    code, out, _ = run(capsys, "audit", "--case", "sp6", "--q", "5")
    assert code == EXIT_PASS
    assert len(json.loads(out)["rays"]) == 4


# ---------------------------------------------------------------------------
# determinism and output files


COMMANDS = [
    ["describe", "--case", "gl4-31", "--q", "3", "--cone", "preset", "--bar"],
    ["verify", "--case", "u3-21", "--q", "2,3"],
    ["certify", "--case", "gl4-31", "--w", "4312", "--q", "7", "--target", "49,7,1", "--json"],
    ["strata", "--case", "sp6", "--format", "dot"],
    ["plot", "--case", "u4-31", "--q", "5"],
    ["sweep", "--cases", "gl4-22", "--q", "2,3"],
    ["audit", "--case", "u3-21", "--q", "5"],
]


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: a[0])
def test_reruns_are_byte_identical(capsys, argv):
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first and first == second


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: a[0])
def test_out_writes_only_the_named_file(tmp_path, monkeypatch, capsys, argv):
    monkeypatch.chdir(tmp_path)
    _, expected, _ = run(capsys, *argv)
    target = tmp_path / "sub" / "result.out"
    target.parent.mkdir()
    code, out, _ = run(capsys, *argv, "--out", str(target))
    assert out == ""
    assert target.read_text() == expected
    assert sorted(p.relative_to(tmp_path).as_posix() for p in tmp_path.rglob("*")) == ["sub", "sub/result.out"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "zipcone", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and __version__ in proc.stdout
