"""Command-line interface and JSON transport.

Exit-code contract: 0 success, 2 input error, 3 precondition violation,
4 verification failure. Reports in --format json must be byte-deterministic.
"""

import io
import json
from fractions import Fraction

import pytest

from factoreq import IntMatrix, brauer_relation_basis, corpus_group
from factoreq.cli import main
from factoreq.jsonio import (
    InputError,
    burnside_from_json,
    canonical_dumps,
    group_from_json,
    jsonable,
    load_json,
    module_from_json,
    rational_from_json,
    rational_to_json,
)

V4_GROUP_JSON = {"generators": [[1, 0, 3, 2], [2, 3, 0, 1]]}
TRIVIAL_MODULE_JSON = {"rank": 1, "action": {"1": [[1]], "2": [[1]]}}


@pytest.fixture
def v4_file(tmp_path):
    p = tmp_path / "v4.json"
    p.write_text(json.dumps(V4_GROUP_JSON))
    return str(p)


@pytest.fixture
def trivial_module_file(tmp_path):
    p = tmp_path / "triv.json"
    p.write_text(json.dumps(TRIVIAL_MODULE_JSON))
    return str(p)


# --- JSON transport ------------------------------------------------------------


def test_rational_round_trip():
    x = Fraction(-3, 7)
    assert rational_to_json(x) == {"num": "-3", "den": "7"}
    assert rational_from_json(rational_to_json(x)) == x
    big = Fraction(10**40 + 1, 10**39)
    assert rational_from_json(rational_to_json(big)) == big


def test_rational_from_json_rejects_junk():
    with pytest.raises(InputError):
        rational_from_json({"num": "1"})
    with pytest.raises(InputError):
        rational_from_json({"num": "a", "den": "2"})


def test_canonical_dumps_is_key_order_insensitive():
    a = canonical_dumps({"b": 1, "a": [1, 2]})
    b = canonical_dumps({"a": [1, 2], "b": 1})
    assert a == b
    assert a.endswith("\n")
    assert " " not in a.strip()


def test_group_from_json_generators_and_table():
    g1 = group_from_json(V4_GROUP_JSON)
    assert g1.order == 4
    table = [[0, 1], [1, 0]]
    g2 = group_from_json({"cayley_table": table})
    assert g2.order == 2
    with pytest.raises(InputError):
        group_from_json({"generators": [[0, 0]]})
    with pytest.raises(InputError):
        group_from_json({"nope": 1})


def test_module_from_json_lattice():
    group = group_from_json(V4_GROUP_JSON)
    m = module_from_json(group, TRIVIAL_MODULE_JSON)
    assert m.rank == 1
    assert m.act(3) == IntMatrix([[1]])


def test_module_from_json_completes_partial_actions():
    group = group_from_json(V4_GROUP_JSON)
    # only one generator given: cannot reach the whole group
    with pytest.raises(InputError, match="generate"):
        module_from_json(group, {"rank": 1, "action": {"1": [[1]]}})
    with pytest.raises(InputError, match="inconsistent"):
        module_from_json(
            group,
            {"rank": 1, "action": {"1": [[1]], "2": [[1]], "3": [[-1]]}},
        )


def test_module_from_json_presentation():
    group = group_from_json(V4_GROUP_JSON)
    m = module_from_json(
        group,
        {
            "presentation": {
                "gens": 2,
                "relations": [[0, 5]],
                "action": {"1": [[1, 0], [0, 1]], "2": [[1, 0], [0, 1]]},
            }
        },
    )
    assert m.gens == 2
    assert m.torsion_order() == 5


def test_burnside_from_json():
    group = corpus_group("V4")
    theta = burnside_from_json(group, {"coeffs": {"0": 1, "4": 2}})
    assert theta.coeffs == (1, 0, 0, 0, 2)
    with pytest.raises(InputError, match="out of range"):
        burnside_from_json(group, {"coeffs": {"9": 1}})
    with pytest.raises(InputError):
        burnside_from_json(group, {})


def test_jsonable_handles_the_report_types():
    group = corpus_group("V4")
    theta = brauer_relation_basis(group)[0]
    out = jsonable(
        {
            "frac": Fraction(1, 2),
            "matrix": IntMatrix([[1, 2]]),
            "theta": theta,
            "mixed": [Fraction(3), (1, "x")],
        }
    )
    assert out["frac"] == {"num": "1", "den": "2"}
    assert out["matrix"] == [[1, 2]]
    assert out["mixed"] == [{"num": "3", "den": "1"}, [1, "x"]]
    json.dumps(out)  # everything must be encodable


# --- CLI: happy paths -------------------------------------------------------------


def test_cli_group_corpus_name(capsys):
    assert main(["group", "S3"]) == 0
    out = capsys.readouterr().out
    assert "group of order 6" in out
    assert "subgroup conjugacy classes: 4" in out


def test_cli_group_json_report(capsys):
    assert main(["--format", "json", "group", "V4"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["order"] == 4
    assert len(report["subgroup_classes"]) == 5
    assert report["subgroup_classes"][0]["representative"] == [0]


def test_cli_group_from_file_and_stdin(v4_file, capsys, monkeypatch):
    assert main(["group", v4_file]) == 0
    assert "group of order 4" in capsys.readouterr().out
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(V4_GROUP_JSON)))
    assert main(["group", "-"]) == 0
    assert "group of order 4" in capsys.readouterr().out


def test_cli_relations(capsys):
    assert main(["relations", "C6"]) == 0
    assert "rank 0" in capsys.readouterr().out
    assert main(["--format", "json", "relations", "V4"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["rank"] == 1
    assert report["relations"][0]["coeffs"] == {"0": 1, "1": -1, "2": -1, "3": -1, "4": 2}


def test_cli_regconst(v4_file, trivial_module_file, capsys):
    assert main(["regconst", v4_file, "--module", trivial_module_file]) == 0
    assert "1/2" in capsys.readouterr().out


def test_cli_regconst_json(v4_file, trivial_module_file, capsys):
    assert (
        main(["--format", "json", "regconst", v4_file, "--module", trivial_module_file])
        == 0
    )
    report = json.loads(capsys.readouterr().out)
    assert report["constants"] == [{"num": "1", "den": "2"}]


def test_cli_factor_equiv_isomorphic(v4_file, trivial_module_file, capsys):
    assert (
        main(
            [
                "factor-equiv",
                v4_file,
                "--module-a",
                trivial_module_file,
                "--module-b",
                trivial_module_file,
            ]
        )
        == 0
    )
    out = capsys.readouterr().out
    assert "factor equivalent: yes" in out


def test_cli_verify_suite(capsys):
    assert main(["verify", "relations"]) == 0
    out = capsys.readouterr().out
    assert "checks passed" in out
    assert "[pass]" in out and "FAIL" not in out


def test_cli_output_file(tmp_path, capsys):
    dest = tmp_path / "report.json"
    assert main(["--format", "json", "--output", str(dest), "relations", "S3"]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(dest.read_text())["rank"] == 1


def test_cli_json_output_is_canonical(capsys):
    assert main(["--format", "json", "group", "Q8"]) == 0
    text = capsys.readouterr().out
    assert text == canonical_dumps(json.loads(text))


def test_cli_byte_determinism(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for dest in (a, b):
        assert (
            main(["--seed", "5", "--format", "json", "--output", str(dest), "verify", "relations"])
            == 0
        )
    assert a.read_bytes() == b.read_bytes()


def test_cli_verdicts_ignore_seed(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["--seed", "0", "--format", "json", "--output", str(a), "verify", "corollary"]) == 0
    assert main(["--seed", "99", "--format", "json", "--output", str(b), "verify", "corollary"]) == 0
    ra, rb = json.loads(a.read_text()), json.loads(b.read_text())
    assert ra["verdicts"] == rb["verdicts"]
    assert ra["regulator_constants"] == rb["regulator_constants"]


# --- CLI: failure modes --------------------------------------------------------------


def test_cli_bad_permutation_exits_2(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"generators": [[0, 0]]}))
    assert main(["group", str(p)]) == 2
    assert "not a permutation" in capsys.readouterr().err


def test_cli_missing_file_exits_2(capsys):
    assert main(["group", "/nonexistent/thing.json"]) == 2
    assert "error:" in capsys.readouterr().err


def test_cli_bad_bound_exits_2(capsys):
    assert main(["--bound", "0", "group", "V4"]) == 2
    assert "error:" in capsys.readouterr().err


def test_cli_non_relation_exits_3(v4_file, trivial_module_file, tmp_path, capsys):
    rel = tmp_path / "rel.json"
    rel.write_text(json.dumps({"coeffs": {"0": 1}}))
    code = main(
        ["regconst", v4_file, "--module", trivial_module_file, "--relation", str(rel)]
    )
    assert code == 3
    assert "precondition violated" in capsys.readouterr().err


def test_cli_not_rationally_isomorphic_exits_3(tmp_path, capsys):
    c2 = tmp_path / "c2.json"
    c2.write_text(json.dumps({"generators": [[1, 0]]}))
    triv = tmp_path / "triv.json"
    triv.write_text(json.dumps({"rank": 1, "action": {"1": [[1]]}}))
    sign = tmp_path / "sign.json"
    sign.write_text(json.dumps({"rank": 1, "action": {"1": [[-1]]}}))
    code = main(
        ["factor-equiv", str(c2), "--module-a", str(triv), "--module-b", str(sign)]
    )
    assert code == 3
    assert "not rationally isomorphic" in capsys.readouterr().err


def test_cli_unknown_suite_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "everything"])
    assert exc.value.code == 2


def test_cli_failing_suite_exits_4(monkeypatch, capsys):
    fake = {
        "suite": "relations",
        "seed": 0,
        "groups": ["V4"],
        "checks": [{"name": "relations.rank", "group": "V4", "ok": False}],
        "verdicts": {"relations.rank[V4]": False},
        "regulator_constants": {},
        "summary": {"checks": 1, "passed": 0, "ok": False},
    }
    monkeypatch.setattr("factoreq.cli.run_suites", lambda suite, seed=0: fake)
    assert main(["verify", "relations"]) == 4
    assert "[FAIL]" in capsys.readouterr().out


def test_cli_corpus_is_self_contained(capsys):
    # every corpus name resolves without input files
    for name in ("C2", "C4", "C6", "V4", "S3", "D4", "Q8"):
        assert main(["group", name]) == 0
    capsys.readouterr()
