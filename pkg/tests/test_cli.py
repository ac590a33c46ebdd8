from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from projline.cli import main


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


@pytest.fixture(autouse=True)
def no_config(monkeypatch):
    monkeypatch.delenv("CONFIG", raising=False)


def test_mul_examples(capsys):
    assert run(capsys, "mul", "rank0(1,2)", "positive(1,3)") == (0, {"type": "positive", "n": 1, "j": 6})
    assert run(capsys, "mul", "deficient(2,1)")[1] == {"type": "deficient", "n": 2, "k": 1}
    code, out = run(capsys, "mul", "rank0(0,2)", "positive(1,1)", "--geometry", "podles")
    assert out == {"type": "deficient", "n": 1, "k": 1}
    # flags are accepted before the subcommand too
    assert run(capsys, "--geometry", "podles", "mul", "rank0(0,2)", "positive(1,1)")[1] == out


def test_mul_reads_json_from_stdin(capsys, monkeypatch):
    data = json.dumps([{"type": "rank0", "m": 1, "l": 2}, {"type": "positive", "n": 1, "j": 3}])
    assert run(capsys, "mul", stdin=data, monkeypatch=monkeypatch)[1]["j"] == 6


def test_malformed_input_exits_2(capsys, monkeypatch):
    assert run(capsys, "mul", "bogus(1")[0] == 2
    assert run(capsys, "mul", stdin="[oops", monkeypatch=monkeypatch)[0] == 2
    assert run(capsys, "classify", "finite(1)")[0] == 2
    assert run(capsys, "--truncation", "1", "eta")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["cone", "x", "0"])
    assert info.value.code == 2


def test_classify_examples(capsys):
    code, out = run(capsys, "classify", "cofinite(1,2)+finite(3,1)", "--verify")
    assert code == 0 and out["verified"] is True
    assert out["class"] == {"type": "positive", "n": 1, "j": 1}
    assert out["certificate"]["dim"] == 2
    assert run(capsys, "classify", "")[1]["class"] == {"type": "rank0", "m": 0, "l": 0}
    assert run(capsys, "classify", "cofinite(2,0)")[1]["class"] == {"type": "deficient", "n": 1, "k": 2}


def test_classify_json_spec(capsys, monkeypatch):
    spec = {"entries": [{"kind": "cofinite", "m": 0, "l": 3}]}
    code, out = run(capsys, "classify", "--certificate", stdin=json.dumps(spec), monkeypatch=monkeypatch)
    assert code == 0 and out["class"]["type"] == "deficient" and "verified" not in out


def test_classify_exit_3_on_failed_verification(capsys, monkeypatch):
    from projline import cli, normal_form

    def broken(spec, cert, claimed, g):
        raise normal_form.BadCertificate(0, "forced")

    monkeypatch.setattr(cli.normal_form, "verify_certificate", broken)
    code, out = run(capsys, "classify", "cofinite(1,0)", "--verify")
    assert code == 3 and out["verified"] is False


def test_k_theory_commands(capsys):
    assert run(capsys, "kclass", "deficient(1,1)")[1] == {"a": -1, "b": 1, "basis": ["e11+0", "Itilde"]}
    assert run(capsys, "cone", "-1", "0", "--geometry", "projline")[1]["in_cone"] is False
    assert run(capsys, "cone", "-1", "0", "--geometry", "podles")[1]["in_cone"] is True
    assert run(capsys, "linebundle", "0")[1]["class"] == {"type": "positive", "n": 1, "j": 0}
    assert run(capsys, "eta")[1]["eta"] == [-1, 1]
    flipped = run(capsys, "eta", "--eta-sign-flip", "--geometry", "podles")[1]
    assert flipped["eta"] == [1, 1] and flipped["exact_at_ideal"]


def test_config_file_with_flag_override(capsys, monkeypatch, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"geometry": "podles", "eta_sign_flip": True}))
    monkeypatch.setenv("CONFIG", str(cfg))
    assert run(capsys, "cone", "-1", "0")[1]["in_cone"] is True
    assert run(capsys, "cone", "-1", "0", "--geometry", "projline")[1]["in_cone"] is False
    assert run(capsys, "eta")[1]["eta"] == [1, 1]
    cfg.write_text("not json")
    assert run(capsys, "eta")[0] == 2


def test_represent(capsys):
    code, out = run(capsys, "represent", "ChiW", "--truncation", "3")
    assert code == 0 and out["N"] == 3 and out["matrix"][1][0] == [1.0, 0.0]


def test_output_is_sorted_and_deterministic(capsys):
    main(["classify", "cofinite(1,2)+finite(3,1)", "--certificate"])
    first = capsys.readouterr().out
    main(["classify", "cofinite(1,2)+finite(3,1)", "--certificate"])
    assert capsys.readouterr().out == first
    assert first.strip() == json.dumps(json.loads(first), sort_keys=True)


def test_selftest_command(capsys):
    code, out = run(capsys, "selftest", "--level", "fast")
    assert code == 0 and out["ok"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "projline", "linebundle", "-3"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["class"] == {"type": "positive", "n": 1, "j": 3}
