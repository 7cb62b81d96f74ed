import io
import json

import jsonschema
import pytest

from rootdatum import cli
from rootdatum import datum as dt


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, text, _ = run(*argv)
    return code, json.loads(text), text


CASES = [
    ("describe", ("describe", "GL", "3")),
    ("describe", ("describe", "Sp", "2")),
    ("dual", ("dual", "SL", "2")),
    ("cgroup", ("cgroup", "PGL", "2")),
    ("cgroup", ("cgroup", "UnitaryQuasiSplit", "2")),
    ("twisting", ("twisting", "PGL", "2", "--box", "5")),
    ("twisting", ("twisting", "GL", "2", "--box", "2")),
    ("gtilde", ("gtilde", "PGL", "2")),
    ("classify", ("classify", "--kind", "holomorphic", "--k", "2", "--s", "0")),
    ("classify", ("classify", "--kind", "maass", "--s", "1/2", "--hecke", "5:2")),
    ("satake", ("satake", "--kind", "holomorphic", "--k", "12", "--s", "0", "--hecke", "2:-24")),
    ("unitary-check", ("unitary-check", "--n", "3", "--p", "13", "--samples", "3")),
]


@pytest.mark.parametrize("verb,argv", CASES)
def test_output_matches_schema_and_is_deterministic(verb, argv):
    code, obj, text = run_json(*argv)
    assert code == 0
    assert obj["schema"] == f"rootdatum/1/{verb}"
    jsonschema.validate(obj, cli.load_schema(verb))
    assert run(*argv)[1] == text


def test_twisting_pgl2_is_empty():
    _, obj, _ = run_json("twisting", "PGL", "2", "--box", "5")
    assert obj["existence"] is False and obj["elements"] == []


def test_cgroup_pgl2_is_gl2():
    _, obj, _ = run_json("cgroup", "PGL", "2")
    assert obj["agree"] is True
    assert "GL(2)" in [m["candidate"] for m in obj["catalog_matches"]]


def test_classify_weight_two():
    _, obj, _ = run_json("classify", "--kind", "holomorphic", "--k", "2", "--s", "0")
    assert (obj["L_algebraic"], obj["C_algebraic"]) == (False, True)


def test_describe_round_trip_via_json_file(tmp_path):
    rd, g = dt.standard("UnitaryQuasiSplit", 3)
    path = tmp_path / "u3.json"
    path.write_text(json.dumps(dt.datum_to_json(rd, g)))
    code, obj, _ = run_json("describe", "--json", str(path))
    assert code == 0
    assert obj["datum"] == dt.datum_to_json(rd, g)


@pytest.mark.parametrize("argv,code", [
    (("describe", "FOO", "2"), "unsupported_group"),
    (("twisting", "GL", "2", "--box", "500"), "invalid_argument"),
    (("satake", "--kind", "holomorphic", "--k", "12", "--s", "1/3", "--hecke", "2:1"),
     "invalid_argument"),
])
def test_domain_errors_exit_one(argv, code):
    status, obj, _ = run_json(*argv)
    assert status == 1
    assert obj["error"]["code"] == code
    jsonschema.validate(obj, cli.load_schema("error"))


@pytest.mark.parametrize("argv", [("describe",), ("describe", "GL"), ("nosuchverb",),
                                  ("twisting", "GL", "2", "--box", "x")])
def test_usage_errors_exit_two(argv):
    assert run(*argv)[0] == 2


def test_bad_json_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    status, obj, _ = run_json("describe", "--json", str(path))
    assert status == 1 and obj["error"]["code"] == "bad_input"


def test_every_verb_has_a_schema():
    for verb in cli.VERBS + ("error",):
        schema = cli.load_schema(verb)
        jsonschema.Draft202012Validator.check_schema(schema)
        assert schema["$id"] == f"rootdatum/1/{verb}"
