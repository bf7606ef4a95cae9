import json

import pytest

from embq.cli.main import dispatch
from embq.core.schemas import StructureSchema, load_structure
from embq.game.schemas import GameOutcomeSchema
from embq.morphism.schemas import MorphismReportSchema
from embq.zeroone.schemas import MuReportSchema

E0 = "(aleph1 x aleph0)"
E1 = "(aleph1 x aleph0),(aleph0 x 1)"


def run(argv, capsys):
    """Run the CLI and return the exit code with parsed stdout and raw stderr."""
    code = dispatch(argv)
    captured = capsys.readouterr()
    report = json.loads(captured.out) if captured.out.strip() else None
    return code, report, captured.err


def test_embed_found(capsys, write_structure, k2, k3):
    """Test that K2 embeds into K3."""
    code, report, _ = run(["embed", "--from", write_structure("k2", k2), "--to", write_structure("k3", k3)], capsys)
    assert code == 0
    assert report["found"] is True
    assert set(report["map"]) == {"v0", "v1"}


def test_embed_not_found(capsys, write_structure, k2, k3):
    """Test that K3 does not embed into K2."""
    code, report, _ = run(["embed", "--from", write_structure("k3", k3), "--to", write_structure("k2", k2)], capsys)
    assert code == 1
    assert report["found"] is False


def test_embed_enumerate_with_pin(capsys, write_structure, k2, k3):
    """Test enumeration of pinned embeddings."""
    argv = ["embed", "--from", write_structure("k2", k2), "--to", write_structure("k3", k3),
            "--pin", "v0=v2", "--enumerate", "10"]
    code, report, _ = run(argv, capsys)
    assert code == 0
    assert report["count"] == 2
    assert all(m["v0"] == "v2" for m in report["maps"])


def test_embed_text_format(capsys, write_structure, k2, k3):
    """Test the plain-text report."""
    code = dispatch(["embed", "--from", write_structure("k2", k2), "--to", write_structure("k3", k3),
                     "--format", "text"])
    assert code == 0
    assert "found: True" in capsys.readouterr().out


def test_check(capsys, write_structure, k3):
    """Test formula evaluation with and without an assignment."""
    path = write_structure("k3", k3)
    code, report, _ = run(["check", "--structure", path, "--formula", "exists x y. E(x,y)"], capsys)
    assert code == 0
    assert report["holds"] is True
    code, report, _ = run(["check", "--structure", path, "--formula", "E(x,y)", "--assign", "x=v0,y=v0"], capsys)
    assert code == 1
    assert report["assignment"] == {"x": "v0", "y": "v0"}


def test_check_syntax_error(capsys, write_structure, k3):
    """Test that a malformed formula is a usage error."""
    code, _, err = run(["check", "--structure", write_structure("k3", k3), "--formula", "E(x,"], capsys)
    assert code == 2
    assert json.loads(err)["error"]["code"] == "SYNTAX_ERROR"


def test_qe(capsys, write_structure, pentagon):
    """Test quantifier elimination on the pentagon."""
    argv = ["qe", "--structure", write_structure("pentagon", pentagon), "--formula", "exists y. E(x,y)"]
    code, report, _ = run(argv, capsys)
    assert code == 0
    assert report["theta"]["variables"] == ["x"]


def test_qe_refuses_non_homogeneous(capsys, write_structure, path3):
    """Test that path(3) is refused with the counterexample."""
    argv = ["qe", "--structure", write_structure("path3", path3), "--formula", "exists y. E(x,y)"]
    code, report, err = run(argv, capsys)
    assert code == 2
    assert report is None
    assert "not quasi-homogeneous" in err


def test_homog(capsys, write_structure, pentagon, path3):
    """Test the homogeneity checker's exit codes."""
    code, report, _ = run(["homog", "--structure", write_structure("pentagon", pentagon)], capsys)
    assert code == 0
    assert report["homogeneous"] is True
    code, _, _ = run(["homog", "--structure", write_structure("path3", path3)], capsys)
    assert code == 1


def test_homog_size_cap(capsys, write_structure, pentagon):
    """Test that a cap flag is reported with exit code 3."""
    code, _, err = run(["homog", "--structure", write_structure("pentagon", pentagon), "--cap-size", "2"], capsys)
    assert code == 3
    assert json.loads(err)["error"]["details"]["cap"] == "size"


def test_chain(capsys, tmp_path, write_structure, haertig, three_u):
    """Test the type chain of a counting quantifier along the colored chain."""
    registry = tmp_path / "quantifiers.json"
    registry.write_text(json.dumps([{
        "name": "Qhas3",
        "kind": "embedding_closure",
        "generators": [StructureSchema.from_structure(three_u).model_dump(mode="json")],
    }]), encoding="utf-8")
    paths = [write_structure(f"a{i}", a) for i, a in enumerate(haertig[:7])]
    argv = ["chain", "--structures", *paths, "--formula", "Qhas3[x: U(x)]", "--quantifiers", str(registry)]
    code, report, _ = run(argv, capsys)
    assert code == 0
    assert report["stabilization_index"] == 4


def test_game_finite(capsys, write_structure, k2, k3):
    """Test the finite game and the distinguishing round."""
    left, right = write_structure("k2", k2), write_structure("k3", k3)
    code, report, _ = run(["game", "--left", left, "--right", right, "--rounds", "1", "--witness"], capsys)
    assert code == 1
    assert report["losing_round"] == 1
    assert report["witness"]
    code, report, _ = run(["game", "--left", left, "--right", right, "--rounds", "3", "--distinguish"], capsys)
    assert code == 1
    assert report["round"] == 1


def test_game_symbolic(capsys):
    """Test the symbolic game from the command line."""
    argv = ["game", "--symbolic", "--left-profile", E0, "--right-profile", E1]
    code, report, _ = run(argv + ["--rounds", "1"], capsys)
    assert code == 0
    code, report, _ = run(argv + ["--rounds", "2"], capsys)
    assert code == 1
    assert report["symbolic"] is True


def test_game_symbolic_round_cap(capsys):
    """Test that the round cap flag applies to the symbolic game."""
    argv = ["game", "--symbolic", "--left-profile", E0, "--right-profile", E0, "--rounds", "3", "--cap-rounds", "2"]
    code, _, _ = run(argv, capsys)
    assert code == 3


def test_game_needs_structures(capsys):
    """Test that the finite game needs both structure files."""
    code, _, err = run(["game", "--rounds", "1"], capsys)
    assert code == 2
    assert json.loads(err)["error"]["code"] == "VALIDATION_ERROR"


def test_zeroone(capsys, tmp_path):
    """Test one estimate row per size."""
    vocab = tmp_path / "vocab.json"
    vocab.write_text('{"E": 2}', encoding="utf-8")
    argv = ["zeroone", "--vocab", str(vocab), "--formula", "true", "--sizes", "3", "--samples", "5"]
    code, report, _ = run(argv, capsys)
    assert code == 0
    assert report["rows"] == [{
        "size": 3, "samples": 5, "successes": 5, "estimate": 1.0, "ci_low": report["rows"][0]["ci_low"], "ci_high": 1.0,
    }]
    assert report["seed"] == 42


def test_zeroone_bad_sizes(capsys, tmp_path):
    """Test that malformed sizes are a usage error."""
    vocab = tmp_path / "vocab.json"
    vocab.write_text('{"E": 2}', encoding="utf-8")
    code, _, _ = run(["zeroone", "--vocab", str(vocab), "--formula", "true", "--sizes", "3,x"], capsys)
    assert code == 2


def test_catalog_gen(capsys, tmp_path, k3):
    """Test emitting and writing a catalog structure."""
    out = tmp_path / "k3.json"
    code, report, _ = run(["catalog", "gen", "complete", "--param", "n=3", "--out", str(out)], capsys)
    assert code == 0
    assert report["universe"] == ["v0", "v1", "v2"]
    assert load_structure(out) == k3


def test_missing_file(capsys, tmp_path):
    """Test that a missing structure file is reported as not found."""
    code, _, err = run(["homog", "--structure", str(tmp_path / "absent.json")], capsys)
    assert code == 2
    assert json.loads(err)["error"]["code"] == "NOT_FOUND"


def test_unknown_command():
    """Test that argparse rejects unknown commands with exit code 2."""
    with pytest.raises(SystemExit) as excinfo:
        dispatch(["frobnicate"])
    assert excinfo.value.code == 2


def test_reports_survive_json_round_trip(capsys, tmp_path, write_structure, k2, k3):
    """Test that each JSON report validates against its schema and dumps back unchanged."""
    left, right = write_structure("k2", k2), write_structure("k3", k3)
    vocab = tmp_path / "vocab.json"
    vocab.write_text('{"E": 2}', encoding="utf-8")
    runs = [
        (MorphismReportSchema, ["embed", "--from", left, "--to", right, "--enumerate", "3"]),
        (GameOutcomeSchema, ["game", "--left", right, "--right", right, "--rounds", "2", "--witness"]),
        (GameOutcomeSchema, ["game", "--symbolic", "--left-profile", E0, "--right-profile", E1,
                             "--rounds", "2", "--witness"]),
        (MuReportSchema, ["zeroone", "--vocab", str(vocab), "--formula", "exists x. E(x,x)",
                          "--sizes", "2,3", "--samples", "7"]),
    ]
    for schema, argv in runs:
        _, report, _ = run(argv, capsys)
        assert schema.model_validate(report).model_dump(mode="json") == report, argv


@pytest.mark.slow
def test_zeroone_seed_is_deterministic_across_jobs(capsys, tmp_path):
    """Test that a fixed seed gives the same rows with one or several workers."""
    vocab = tmp_path / "vocab.json"
    vocab.write_text('{"E": 2}', encoding="utf-8")
    argv = ["zeroone", "--vocab", str(vocab), "--formula", "exists x y. E(x,y) & !E(y,x)",
            "--sizes", "4,6", "--samples", "40", "--seed", "5"]
    reports = [run(argv + ["--jobs", jobs], capsys)[1] for jobs in ("2", "2", "1")]
    assert reports[0] == reports[1] == reports[2]
    assert reports[0]["seed"] == 5
