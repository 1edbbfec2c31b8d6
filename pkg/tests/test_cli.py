import json
import os
import subprocess
import sys

import pytest

from ualg.algebra import parse_algebra, serialize_algebra
from ualg.cli import main
from ualg.congruences import check_congruence, kernel_congruence
from ualg.documents import parse_congruence_document, parse_hom_document, serialize_hom
from ualg.homs import check_hom, projection_hom
from ualg.zoo import cyclic_group

SRC = os.path.join(os.path.dirname(__file__), os.pardir, "src")


@pytest.fixture
def files(tmp_path, Z2, M2, Z3, Z4, Z2xZ2):
    for name, alg in [("z2", Z2), ("m2", M2), ("z3", Z3), ("z4", Z4), ("z2xz2", Z2xZ2.algebra)]:
        (tmp_path / f"{name}.json").write_bytes(serialize_algebra(alg))
    (tmp_path / "proj1.json").write_bytes(
        serialize_hom(projection_hom(Z2xZ2, 0), "z2xz2.json", "z2.json"))
    (tmp_path / "proj2.json").write_bytes(
        serialize_hom(projection_hom(Z2xZ2, 1), "z2xz2.json", "z2.json"))
    (tmp_path / "mod2.json").write_bytes(
        serialize_hom(check_hom(Z4, Z2, [0, 1, 0, 1]), "z4.json", "z2.json"))
    (tmp_path / "first.json").write_bytes(
        b'{"algebra": "z2xz2.json", "blocks": [[0, 1], [2, 3]]}')
    (tmp_path / "bad.json").write_bytes(b'{"algebra": "z4.json", "blocks": [[0, 1], [2], [3]]}')
    (tmp_path / "klass.json").write_bytes(b'{"algebras": ["z3.json", "z2xz2.json"]}')
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval_example(files, capsys):
    assert run(capsys, "eval", "--algebra", files / "z2.json", "--term", "+(x0,x0)", "--env", "1") == (0, "0\n", "")


def test_homs_count_example(files, capsys):
    code, out, _ = run(capsys, "homs", "--from", files / "z2.json", "--to", files / "z2.json", "--count")
    assert (code, out) == (0, "2\n")


def test_iso_none_example(files, capsys):
    code, out, _ = run(capsys, "iso", "--left", files / "z2.json", "--right", files / "m2.json")
    assert (code, out) == (1, "none\n")


def test_homs_listing_and_negative(files, capsys):
    code, out, _ = run(capsys, "homs", "--from", files / "z4.json", "--to", files / "z2.json")
    assert (code, out) == (0, "0,0,0,0\n0,1,0,1\n")
    code, out, _ = run(capsys, "homs", "--from", files / "z2.json", "--to", files / "m2.json", "--injective")
    assert (code, out) == (1, "none\n")


def test_homs_json(files, capsys):
    code, out, _ = run(capsys, "homs", "--from", files / "z2.json", "--to", files / "z2xz2.json", "--json")
    assert code == 0 and len(json.loads(out)["homs"]) == 4


def test_inspect(files, capsys):
    code, out, _ = run(capsys, "inspect", "--algebra", files / "z2.json")
    assert code == 0
    assert "op +/2: 0,1,1,0" in out and "subuniverses: 3" in out and "endomorphisms: 2" in out
    code, out, _ = run(capsys, "inspect", "--algebra", files / "z2.json", "--json")
    assert out.encode() == (files / "z2.json").read_bytes()


def test_sg(files, capsys):
    assert run(capsys, "sg", "--algebra", files / "z3.json", "--set", "1")[:2] == (0, "0,1,2\n")
    code, out, _ = run(capsys, "sg", "--algebra", files / "m2.json", "--set", "1", "--json")
    assert json.loads(out) == {"generators": [1], "members": [1]}


def test_quotient(files, capsys, Z2):
    code, out, _ = run(capsys, "quotient", "--congruence", files / "first.json", "--json")
    assert code == 0 and parse_algebra(out) == Z2.renamed(None)
    code, out, _ = run(capsys, "quotient", "--congruence", files / "bad.json")
    assert code == 1 and out.startswith("not a congruence")


def test_kernel_round_trips(files, capsys):
    code, out, _ = run(capsys, "kernel", "--hom", files / "proj1.json")
    assert (code, out) == (0, "0,1 | 2,3\n")
    code, out, _ = run(capsys, "kernel", "--hom", files / "proj1.json", "--json")
    A, blocks = parse_congruence_document(out)
    assert blocks == [[0, 1], [2, 3]]
    assert check_congruence(A, blocks) == kernel_congruence(parse_hom_document(
        (files / "proj1.json").read_bytes(), str(files)))


def test_iso_json_round_trips(files, capsys):
    (files / "z2b.json").write_bytes((files / "z2.json").read_bytes())
    code, out, _ = run(capsys, "iso", "--left", files / "z2.json", "--right", files / "z2b.json", "--json")
    assert code == 0 and parse_hom_document(out).map == (0, 1)


def test_product(files, capsys, Z2xZ2):
    code, out, _ = run(capsys, "product", "--algebra", files / "z2.json", "--algebra", files / "z2.json")
    assert code == 0 and parse_algebra(out).tables == Z2xZ2.algebra.tables


def test_factor(files, capsys):
    code, out, _ = run(capsys, "factor", "--hom", files / "proj1.json")
    assert code == 0 and "projection: 0,0,1,1" in out and "mediating: 0,1" in out
    code, out, _ = run(capsys, "factor", "--hom", files / "proj1.json", "--hom", files / "proj1.json", "--epi")
    assert (code, out) == (0, "0,1\nsurjective: true\n")
    code, out, _ = run(capsys, "factor", "--hom", files / "proj2.json", "--hom", files / "proj1.json")
    assert code == 1 and "(0, 1)" in out
    code, _, err = run(capsys, "factor")
    assert code == 2 and "one --hom" in err


def test_subalg(files, capsys):
    code, out, _ = run(capsys, "subalg", "--algebra", files / "m2.json")
    assert (code, out) == (0, "{}\n{0}\n{1}\n{0,1}\n")
    code, out, _ = run(capsys, "subalg", "--left", files / "z2.json", "--right", files / "z2xz2.json", "--json")
    assert code == 0 and parse_hom_document(out).map == (0, 1)
    code, out, _ = run(capsys, "subalg", "--left", files / "m2.json", "--right", files / "z2.json")
    assert (code, out) == (1, "none\n")
    code, out, _ = run(capsys, "subalg", "--left", files / "z2.json", "--class", files / "klass.json")
    assert code == 0 and out.startswith("member 1: subuniverse {0,1}")


def test_image(files, capsys):
    code, out, _ = run(capsys, "image", "--hom", files / "mod2.json")
    assert (code, out) == (0, "image: 0,1\n")
    code, out, _ = run(capsys, "image", "--left", files / "z2.json", "--right", files / "z2xz2.json")
    assert (code, out) == (0, "0,0,1,1\n")
    code, out, _ = run(capsys, "image", "--left", files / "z2xz2.json", "--right", files / "z2.json")
    assert code == 1
    code, out, _ = run(capsys, "image", "--left", files / "z2.json", "--class", files / "klass.json", "--json")
    assert code == 0 and json.loads(out)["member"] == 1


def test_verify(files, capsys):
    code, out, _ = run(capsys, "verify", "--algebra", files / "z4.json", "--seed", "7")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "seed: 7"
    assert len(lines) == 10 and all(line.startswith("PASS") for line in lines[1:])
    code, out, _ = run(capsys, "verify", "--algebra", files / "m2.json", "--json")
    doc = json.loads(out)
    assert doc["seed"] == 0 and all(r["ok"] for r in doc["results"])


@pytest.mark.parametrize("argv,needle", [
    (["eval", "--algebra", "z2.json", "--term", "+(x0", "--env", "1"], "expected"),
    (["eval", "--algebra", "z2.json", "--term", "+(x0,x0)", "--env", "5"], "out of range"),
    (["eval", "--algebra", "missing.json", "--term", "x0"], "missing.json"),
    (["sg", "--algebra", "z2.json", "--set", "a,b"], "comma-separated"),
    (["homs", "--from", "z2.json"], "--to"),
    (["quotient", "--congruence", "z2.json"], "missing"),
])
def test_usage_errors_exit_2(files, capsys, argv, needle):
    argv = [str(files / a) if a.endswith(".json") else a for a in argv]
    code, out, err = run(capsys, *argv)
    assert code == 2 and needle in err and out == ""


def test_unknown_verb_exits_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_invalid_algebra_file_exits_2(files, capsys):
    (files / "broken.json").write_bytes(b'{"size": 2, "signature": [{"symbol": "+", "arity": 2}], "operations": {"+": [0, 1, 1, 2]}}')
    code, _, err = run(capsys, "inspect", "--algebra", files / "broken.json")
    assert code == 2 and "+" in err


def test_non_hom_document_exits_1(files, capsys):
    (files / "swap.json").write_bytes(b'{"domain": "z2.json", "codomain": "z2.json", "map": [1, 0]}')
    code, out, _ = run(capsys, "kernel", "--hom", files / "swap.json")
    assert code == 1 and "+" in out


def _subprocess(args, env=None):
    full_env = dict(os.environ, PYTHONPATH=os.path.abspath(SRC), **(env or {}))
    return subprocess.run([sys.executable, "-m", "ualg", *args], capture_output=True, env=full_env)


def test_module_entry_point_is_deterministic(files):
    argv = ["homs", "--from", str(files / "z4.json"), "--to", str(files / "z2.json"), "--json"]
    first, second = _subprocess(argv), _subprocess(argv)
    assert first.returncode == 0 and first.stdout == second.stdout and first.stdout


def test_debug_recheck_and_fallback_agree(files):
    argv = ["factor", "--hom", str(files / "mod2.json"), "--json"]
    base = _subprocess(argv)
    rechecked = _subprocess(argv, {"UALG_DEBUG_RECHECK": "1"})
    pure = _subprocess(argv, {"UALG_PURE_PYTHON": "1"})
    assert base.returncode == rechecked.returncode == pure.returncode == 0
    assert base.stdout == rechecked.stdout == pure.stdout


def test_verify_is_seeded(files, capsys):
    argv = ["verify", "--algebra", files / "z3.json", "--seed", "11", "--json"]
    assert run(capsys, *argv) == run(capsys, *argv)
    assert cyclic_group(3) == parse_algebra((files / "z3.json").read_bytes())
