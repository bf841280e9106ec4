import copy
import json
import subprocess
import sys

import pytest

from tangentoids import QQ, ZZ, Modular, biproduct_tangentoid, build_tangentoid, dual_numbers_tangentoid, product
from tangentoids.cli import execute, main, parse_text_report, render_machine, render_text
from tangentoids.documents import emit_ring, parse_document, parse_ring, tangentoid_document
from tangentoids.errors import DocumentError
from tangentoids.solid import cyclic_solid, product_ring_solid, unit_solid, zero_solid

DUAL = {"algebra": {"generators": 2, "table": [[[1, 0], [0, 1]], [[0, 1], [0, 0]]], "unit": [1, 0],
                    "names": ["1", "e"]}}


def dual_doc(ring="Z", lift=((1, 0), (0, 0), (0, 0), (0, 1)), command="check", **args):
    return {"ring": ring,
            "objects": {"A": copy.deepcopy(DUAL),
                        "D": {"tangentoid": {"carrier": "A", "p": [[1, 0]], "z": [[1], [0]],
                                             "s": [[1, 0, 0], [0, 1, 1]], "l": [list(r) for r in lift],
                                             "n": [[1, 0], [0, -1]]}}},
            "command": command, "args": {"tangentoid": "D", **args}}


def run(tmp_path, doc, *flags, command=None, capsys=None):
    path = tmp_path / "doc.json"
    path.write_text(json.dumps(doc))
    code = main([command or doc.get("command", "check"), str(path), "--format", "machine", *flags])
    out = capsys.readouterr().out if capsys else None
    return code, (json.loads(out) if out else None)


@pytest.mark.parametrize("spec", ["Z", "Q", {"mod": 6}, {"product": [{"mod": 2}, {"mod": 3}]}])
def test_ring_schema_round_trip(spec):
    assert emit_ring(parse_ring(spec)) == spec


@pytest.mark.parametrize("spec", ["R", {"mod": 1}, {"mod": "6"}, {"product": [{"mod": 2}]}, {"field": 2}])
def test_bad_rings(spec):
    with pytest.raises(DocumentError):
        parse_ring(spec)


EMITTABLE = [
    dual_numbers_tangentoid(ZZ),
    dual_numbers_tangentoid(QQ),
    biproduct_tangentoid(Modular(6)),
    build_tangentoid(ZZ, cyclic_solid(ZZ, 4)),
    build_tangentoid(*product_ring_solid(Modular(3))[:2]),
]


@pytest.mark.parametrize("T", EMITTABLE, ids=range(len(EMITTABLE)))
def test_emitted_documents_round_trip(T):
    doc = tangentoid_document(T)
    again = parse_document(json.loads(json.dumps(doc)))
    assert tangentoid_document(again.get("D")) == doc


def test_check_dual_numbers(tmp_path, capsys):
    code, rep = run(tmp_path, dual_doc(), capsys=capsys)
    assert code == 0 and rep["verdict"] == "pass"
    names = [e["name"] for e in rep["entries"]]
    assert "lift_universal" in names and "algebra:A:associativity" in names


def test_check_mutated_lift(tmp_path, capsys):
    code, rep = run(tmp_path, dual_doc({"mod": 2}, lift=((1, 0), (0, 0), (0, 1), (0, 0))), capsys=capsys)
    assert code == 1
    entry = next(e for e in rep["entries"] if e["name"] == "lift_universal")
    assert entry["status"] == "fail" and entry["counterexample"]["source"] == [0, 1]


def test_counterexamples_use_document_names(tmp_path, capsys):
    path = tmp_path / "doc.json"
    path.write_text(json.dumps(dual_doc({"mod": 2}, lift=((1, 0), (0, 0), (0, 1), (0, 0)))))
    assert main(["check", str(path)]) == 1
    out = capsys.readouterr().out
    assert "lhs: e⊗1" in out or "rhs: e⊗1" in out


@pytest.mark.parametrize("mutate", [
    lambda d: d["objects"]["A"]["algebra"].update(relations=[[2]]),
    lambda d: d["objects"]["D"]["tangentoid"].update(p=[[1, 0, 0]]),
    lambda d: d["objects"]["D"]["tangentoid"].update(carrier="B"),
    lambda d: d.update(command="frobnicate"),
    lambda d: d.update(ring={"mod": 0}),
    lambda d: d["args"].update(tangentoid="A"),
])
def test_input_errors_exit_two(tmp_path, capsys, mutate):
    doc = dual_doc()
    mutate(doc)
    code, rep = run(tmp_path, doc, command="check", capsys=capsys)
    assert code == 2 and rep["verdict"] == "input-error"


def test_unreadable_file(tmp_path, capsys):
    assert main(["check", str(tmp_path / "missing.json")]) == 2
    (tmp_path / "junk.json").write_text("{not json")
    assert main(["check", str(tmp_path / "junk.json")]) == 2


def solid_doc(ring, solid, **args):
    return {"ring": ring, "objects": {"M": {"solid": solid}}, "command": "build", "args": {"solid": "M", **args}}


def test_build_unit_gives_dual_numbers(tmp_path, capsys):
    code, rep = run(tmp_path, solid_doc("Z", {"generators": 1, "table": [[[1]]]}), capsys=capsys)
    assert code == 0 and rep["data"]["coexponentiable"] is True
    emitted = rep["data"]["emitted"]
    carrier = emitted["objects"]["D"]["tangentoid"]["carrier"]["algebra"]
    assert carrier["table"] == [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
    # the emitted document re-checks clean
    path = tmp_path / "emitted.json"
    path.write_text(json.dumps(emitted))
    assert main(["run", str(path)]) == 0


def test_build_torsion_is_flagged(tmp_path, capsys):
    code, rep = run(tmp_path, solid_doc("Z", {"generators": 1, "relations": [[2]], "table": [[[1]]]}),
                    capsys=capsys)
    assert code == 0 and rep["data"]["coexponentiable"] is False


def test_build_zero_module(tmp_path, capsys):
    code, rep = run(tmp_path, solid_doc("Z", {"generators": 0, "table": []}), capsys=capsys)
    assert code == 0
    assert rep["data"]["emitted"]["objects"]["D"]["tangentoid"]["carrier"]["algebra"]["generators"] == 1


def test_build_rejects_non_solid(tmp_path, capsys):
    code, rep = run(tmp_path, solid_doc("Z", {"generators": 1, "table": [[[2]]]}), capsys=capsys)
    assert code == 1


def classify_doc(ring, **args):
    return {"ring": ring, "command": "classify", "args": args}


def test_classify_integers(tmp_path, capsys):
    code, rep = run(tmp_path, classify_doc("Z", max_rank=3), capsys=capsys)
    assert code == 0
    assert rep["data"]["coexponentiable"] == ["trivial", "dual numbers"]
    assert "holds" in rep["data"]["dichotomy"]


def test_classify_product_ring(tmp_path, capsys):
    code, rep = run(tmp_path, classify_doc({"product": [{"mod": 2}, {"mod": 2}]}, max_rank=2), capsys=capsys)
    assert code == 0
    new = [s for s in rep["data"]["structures"] if s["name"].startswith("R⋉S")]
    assert new and all(s["coexponentiable"] for s in new)
    assert all(sorted(s["distinct_from"]) == ["dual numbers", "trivial"] for s in new)


def test_classify_budget(tmp_path, capsys):
    code, rep = run(tmp_path, classify_doc({"mod": 2}, max_rank=3, exhaustive=True), "--budget", "1000",
                    capsys=capsys)
    assert code == 3 and rep["options"]["budget"] == 1000
    code, rep = run(tmp_path, classify_doc({"mod": 2}, max_rank=2), capsys=capsys)
    assert code == 0 and rep["data"]["ranks"] == [0, 1]


def test_adjoint(tmp_path, capsys):
    code, rep = run(tmp_path, dual_doc({"mod": 2}, command="adjoint", source="A", target="A"), capsys=capsys)
    assert code == 0 and rep["data"]["left"] == rep["data"]["right"] == rep["data"]["kaehler_pairs"]
    code, rep = run(tmp_path, dual_doc("Z", command="adjoint", source="A", target="A"), capsys=capsys)
    assert code == 3 and "infinite" in rep["message"]


def kaehler_doc(ring, algebra):
    return {"ring": ring, "objects": {"A": {"algebra": algebra}}, "command": "kaehler", "args": {"algebra": "A"}}


def test_kaehler_command(tmp_path, capsys):
    code, rep = run(tmp_path, kaehler_doc("Z", copy.deepcopy(DUAL["algebra"])), capsys=capsys)
    assert code == 0 and sorted(rep["data"]["invariant_factors"][0]) == [0, 2]
    code, rep = run(tmp_path, kaehler_doc("Z", {"generators": 1, "table": [[[1]]], "unit": [1]}), capsys=capsys)
    assert code == 0 and rep["data"]["invariant_factors"] == [[]]
    code, rep = run(tmp_path, kaehler_doc({"mod": 4}, copy.deepcopy(DUAL["algebra"])), capsys=capsys)
    assert code == 0 and rep["data"]["pair_counts"]


def test_text_data_block_round_trips():
    rep = execute(dual_doc({"mod": 2}, lift=((1, 0), (0, 0), (0, 1), (0, 0))))
    assert parse_text_report(render_text(rep, ["1", "e"])) == rep.as_dict()
    assert json.loads(render_machine(rep)) == rep.as_dict()


def test_deterministic_apart_from_timing():
    def strip(d):
        d = json.loads(json.dumps(d))
        d.pop("seconds")
        for e in d["entries"]:
            e.pop("seconds", None)
        return d
    a, b = execute(dual_doc({"mod": 2})), execute(dual_doc({"mod": 2}))
    assert strip(a.as_dict()) == strip(b.as_dict())


def test_seed_and_probes_are_echoed():
    rep = execute(dual_doc({"mod": 3}), seed=7, probes=2)
    assert rep.as_dict()["options"] == {"budget": 2 ** 24, "probes": 2, "seed": 7}


def test_module_entry_point(tmp_path):
    path = tmp_path / "doc.json"
    path.write_text(json.dumps(dual_doc()))
    proc = subprocess.run([sys.executable, "-m", "tangentoids", "check", str(path)], capture_output=True, text=True)
    assert proc.returncode == 0
    assert parse_text_report(proc.stdout)["verdict"] == "pass"


JOBS = __import__("pathlib").Path(__file__).resolve().parent.parent / "jobs"


@pytest.mark.parametrize("name,code", [("dual_numbers", 0), ("mutated_lift", 1), ("build_torsion", 0),
                                       ("classify_product", 0), ("adjoint", 0), ("kaehler", 0)])
def test_shipped_jobs(name, code, capsys):
    assert main(["run", str(JOBS / f"{name}.json")]) == code
    capsys.readouterr()
