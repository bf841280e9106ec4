"""Command-line front end: ``tangentoids <command> DOCUMENT``."""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from .algebras import (
    AModule,
    Algebra,
    AlgebraMorphism,
    algebra_check,
    dual_numbers,
    hom_enumerate,
    kaehler,
    kaehler_oracle,
    trivial_algebra,
)
from .documents import (
    COMMANDS,
    JobDocument,
    emit_module,
    emit_scalar,
    load_document,
    parse_document,
    tangentoid_document,
)
from .errors import (
    BudgetExceeded,
    DocumentError,
    InfiniteEnumeration,
    MixedRings,
    NotCoexponentiable,
    NotWellDefined,
    ShapeMismatch,
    TangentoidError,
    UnsupportedRing,
)
from .functor import (
    TangentStructureInstance,
    adjunction_check,
    dual_extension,
    kaehler_adjoint_hom,
    kaehler_universality,
    naturality_check,
)
from .matrix import Matrix
from .modules import FPModule, modules_isomorphic, presentation_signature
from .rings import Integers, Product
from .solid import (
    DEFAULT_BUDGET,
    NonUnitalAlgebra,
    check_solid,
    classify_free_solids,
    cyclic_solid,
    unit_solid,
    zero_solid,
)
from .tangentoid import (
    CALG,
    Tangentoid,
    build_tangentoid,
    check_tangentoid,
    is_coexponentiable,
    probe_family,
    universality_bruteforce,
)

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_REFUSED = 0, 1, 2, 3
DATA_MARKER = "--- data ---"
DEFAULTS = {"budget": DEFAULT_BUDGET, "probes": 4, "seed": 0, "format": "text"}
BRUTEFORCE_LIMIT = 64


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, str)) or x is None:
        return x
    if isinstance(x, float):
        return x
    return emit_scalar(x)


@dataclass
class Report:
    command: str
    args: Dict[str, Any]
    options: Dict[str, Any]
    entries: List[dict] = field(default_factory=list)
    data: Dict[str, Any] = field(default_factory=dict)
    exit_code: int = EXIT_PASS
    message: Optional[str] = None
    seconds: float = 0.0
    names: Optional[list] = None

    @property
    def verdict(self) -> str:
        return {EXIT_PASS: "pass", EXIT_FAIL: "fail", EXIT_INPUT: "input-error",
                EXIT_REFUSED: "refused"}[self.exit_code]

    def add(self, name, ok, **extra):
        status = extra.pop("status", None) or ("pass" if ok else "fail")
        self.entries.append({"name": name, "status": status, **{k: v for k, v in extra.items() if v is not None}})

    def settle(self):
        """Exit 1 as soon as any entry failed."""
        if self.exit_code == EXIT_PASS and any(e["status"] == "fail" for e in self.entries):
            self.exit_code = EXIT_FAIL

    def as_dict(self) -> dict:
        out = {"command": self.command, "args": self.args, "options": self.options,
               "entries": self.entries, "verdict": self.verdict, "exit_code": self.exit_code,
               "seconds": round(self.seconds, 6)}
        if self.data:
            out["data"] = self.data
        if self.message:
            out["message"] = self.message
        return _jsonable(out)


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _render_vector(v, names) -> str:
    if not isinstance(v, list):
        return str(v)
    g = len(names) if names else 0
    if g and len(v) == g:
        labels = names
    elif g and len(v) == g * g:
        labels = [f"{a}⊗{b}" for a in names for b in names]
    else:
        return json.dumps(v)
    terms = [f"{c}*{lab}" if c != 1 else lab for c, lab in zip(v, labels) if c not in (0, "0")]
    return " + ".join(terms) if terms else "0"


def render_text(report: Report, names=None) -> str:
    d = report.as_dict()
    lines = [f"tangentoids {d['command']}"]
    opts = ", ".join(f"{k}={v}" for k, v in sorted(d["options"].items()))
    lines.append(f"options: {opts}")
    for e in d["entries"]:
        extra = ""
        if "note" in e:
            extra = f"  ({e['note']})"
        lines.append(f"  [{e['status']}] {e['name']}{extra}")
        cex = e.get("counterexample")
        if isinstance(cex, dict):
            for key in ("source", "lhs", "rhs"):
                if key in cex:
                    lines.append(f"      {key}: {_render_vector(cex[key], names)}")
    if report.message:
        lines.append(f"message: {report.message}")
    lines.append(f"verdict: {d['verdict']} (exit {d['exit_code']})")
    lines.append(DATA_MARKER)
    lines.append(json.dumps(d, sort_keys=True))
    return "\n".join(lines) + "\n"


def render_machine(report: Report) -> str:
    return json.dumps(report.as_dict(), sort_keys=True, indent=2) + "\n"


def parse_text_report(text: str) -> dict:
    """Recover the machine form from the data block of a text report."""
    _, _, tail = text.partition(DATA_MARKER + "\n")
    if not tail:
        raise DocumentError("no data block in report")
    return json.loads(tail)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _axiom_entries(report: Report, axioms, prefix=""):
    for e in axioms.entries:
        d = e.as_dict()
        d["name"] = prefix + d["name"]
        report.entries.append(d)


def _fixture_algebras(ring, extra=()):
    return [trivial_algebra(ring), dual_numbers(ring), *extra]


def cmd_check(doc: JobDocument, options) -> Report:
    rep = Report("check", doc.args, options)
    T = doc.arg("tangentoid", Tangentoid)
    for name, obj in doc.objects.items():
        if isinstance(obj, Algebra) and not isinstance(obj, NonUnitalAlgebra):
            for law in algebra_check(obj).entries:
                rep.add(f"algebra:{name}:{law.name}", law.passed,
                        **({} if law.witness is None else {"note": f"witness {law.witness}"}))
    axioms = check_tangentoid(T)
    _axiom_entries(rep, axioms)
    card = T.module.cardinality if T.module.is_finite else None
    if card is not None and card <= BRUTEFORCE_LIMIT:
        bf = universality_bruteforce(T, probe_family(T.ring, options["probes"]))
        rep.add("universality_bruteforce", bf["ok"], note=None if bf["ok"] else bf.get("reason"))
    if T.ambient == CALG:
        rep.data["coexponentiable"] = is_coexponentiable(T)
        if axioms.passed and T.ring.is_finite:
            inst = TangentStructureInstance(T, verify=False)
            algs = _fixture_algebras(T.ring, [T.algebra])
            mors = [f for A in algs for B in algs for f in hom_enumerate(A, B)]
            rng = random.Random(options["seed"])
            sample = rng.sample(mors, min(len(mors), 8))
            nat = naturality_check(inst, sample)
            bad = nat.failures()
            rep.add("naturality", nat.passed,
                    note=f"{len(sample)} sampled morphisms" if not bad else f"{bad[0].component}-square fails")
    rep.data["ambient"] = axioms.ambient
    rep.settle()
    return rep


def cmd_build(doc: JobDocument, options) -> Report:
    rep = Report("build", doc.args, options)
    M = doc.arg("solid", NonUnitalAlgebra)
    ambient = doc.args.get("ambient", CALG)
    sc = check_solid(M)
    if not sc:
        rep.add("solid", False, note=f"{sc.reason} fails")
        rep.settle()
        return rep
    rep.add("solid", True)
    T = build_tangentoid(doc.ring, M, sc.witness, ambient=ambient)
    axioms = check_tangentoid(T)
    _axiom_entries(rep, axioms)
    emitted = tangentoid_document(T)
    again = parse_document(json.loads(json.dumps(emitted)))
    T2 = again.get("D", Tangentoid)
    same = tangentoid_document(T2) == emitted
    rep.add("reparse", same and check_tangentoid(T2).passed)
    if ambient == CALG:
        rep.data["coexponentiable"] = is_coexponentiable(T)
    rep.data["emitted"] = emitted
    rep.settle()
    return rep


def _signature(T: Tangentoid):
    K, _ = T.kernel
    return {"kernel_invariant_factors": presentation_signature(K), "kernel_annihilator": K.annihilator()}


def _structure(name, T: Tangentoid):
    axioms = check_tangentoid(T)
    return {"name": name, "rank": T.g, "tangentoid": axioms.passed,
            "coexponentiable": is_coexponentiable(T), **_signature(T)}


def cmd_classify(doc: JobDocument, options) -> Report:
    rep = Report("classify", doc.args, options)
    ring = doc.ring
    max_rank = doc.args.get("max_rank", 2)
    if not isinstance(max_rank, int) or max_rank < 0:
        raise DocumentError("max_rank must be a non-negative integer")
    exhaustive = doc.args.get("exhaustive", "auto")
    cls = classify_free_solids(ring, max_rank, budget=options["budget"], exhaustive=exhaustive)
    for v in cls.verdicts:
        rep.add(f"rank_{v.rank}", True, status="pass", admits=v.admits, method=v.method,
                candidates=v.candidates, found=v.found)
    structures = [_structure("trivial", build_tangentoid(ring, zero_solid(ring)))]
    if 1 in cls.ranks:
        structures.append(_structure("dual numbers", build_tangentoid(ring, unit_solid(ring))))
    if isinstance(ring, Product):
        for k in range(len(ring.factors)):
            gen = tuple(ring.factors[i].zero if i == k else ring.factors[i].one for i in range(len(ring.factors)))
            M = cyclic_solid(ring, gen)
            structures.append(_structure(f"R⋉S{k}", build_tangentoid(ring, M)))
    if isinstance(ring, Integers):
        structures.append(_structure("Z⋉Z/2", build_tangentoid(ring, cyclic_solid(ring, 2))))
    base = {s["name"]: s for s in structures[:2]}
    for s in structures:
        rep.add(f"structure:{s['name']}", s["tangentoid"])
        if s["name"] not in base:
            s["distinct_from"] = [n for n, b in base.items()
                                  if (b["kernel_invariant_factors"], b["kernel_annihilator"])
                                  != (s["kernel_invariant_factors"], s["kernel_annihilator"])]
    coexp = [s["name"] for s in structures if s["tangentoid"] and s["coexponentiable"]]
    rep.data.update({"ranks": cls.ranks, "structures": structures, "coexponentiable": coexp,
                     "budget": options["budget"], "exhaustive": exhaustive})
    if ring.is_pid():
        rep.data["dichotomy"] = ("over a PID the coexponentiable tangentoids are exactly R and R[ε]: "
                                 + ("holds" if sorted(coexp) == ["dual numbers", "trivial"] else "violated"))
        rep.add("dichotomy", sorted(coexp) == ["dual numbers", "trivial"])
    rep.settle()
    return rep


def cmd_adjoint(doc: JobDocument, options) -> Report:
    rep = Report("adjoint", doc.args, options)
    T = doc.arg("tangentoid", Tangentoid)
    A = doc.arg("source", Algebra)
    B = doc.arg("target", Algebra)
    if not doc.ring.is_finite:
        raise InfiniteEnumeration(f"hom-sets over {doc.ring} are infinite; enumeration refused")
    axioms = check_tangentoid(T)
    if not axioms.passed:
        _axiom_entries(rep, axioms)
        rep.settle()
        return rep
    inst = TangentStructureInstance(T, verify=False)
    adj = adjunction_check(inst, A, B)
    rep.add("adjunction_bijection", adj.passed, note=f"|L| = {adj.left}, |R| = {adj.right}")
    rep.data.update({"left": adj.left, "right": adj.right, "bijection": adj.bijection})
    K, _ = T.kernel
    if modules_isomorphic(K, FPModule.free(T.ring, 1)):
        pairs = kaehler_adjoint_hom(A, B)
        rep.add("kaehler_count", len(pairs) == adj.left, note=f"{len(pairs)} pairs")
        rep.data["kaehler_pairs"] = len(pairs)
    rep.settle()
    return rep


def cmd_kaehler(doc: JobDocument, options) -> Report:
    rep = Report("kaehler", doc.args, options)
    A = doc.arg("algebra", Algebra)
    om = kaehler(A)
    oracle = kaehler_oracle(A, om)
    rep.add("oracle_agreement", oracle.agrees)
    E = dual_extension(A)
    inc = AlgebraMorphism(A, E, Matrix.identity(A.ring, A.ngens).vstack(Matrix.zeros(A.ring, A.ngens, A.ngens)),
                          check=False)
    probes = [AModule.regular(A), AModule.regular(E).restrict(inc)][:max(options["probes"], 1)]
    ok = all(kaehler_universality(A, N, om) for N in probes)
    rep.add("universality", ok, note=f"{len(probes)} probe modules")
    rep.data.update({"presentation": emit_module(om.module),
                     "invariant_factors": presentation_signature(om.module)})
    if A.ring.is_finite and A.carrier.is_finite:
        # derivation counts agree with A-linear maps out of Omega
        for B in _fixture_algebras(A.ring):
            pairs = kaehler_adjoint_hom(A, B)
            rep.data.setdefault("pair_counts", []).append(len(pairs))
    rep.settle()
    return rep


DISPATCH = {"check": cmd_check, "build": cmd_build, "classify": cmd_classify,
            "adjoint": cmd_adjoint, "kaehler": cmd_kaehler}


def _names(doc: Optional[JobDocument]):
    if doc is None:
        return None
    T = doc.objects.get(doc.args.get("tangentoid")) if isinstance(doc.args.get("tangentoid"), str) else None
    return T.names if isinstance(T, Tangentoid) else None


def execute(doc_or_data, command=None, **flags) -> Report:
    """Run one job; never raises for library errors, the exit code carries the outcome."""
    start = time.perf_counter()
    options = dict(DEFAULTS)
    doc = None
    try:
        doc = doc_or_data if isinstance(doc_or_data, JobDocument) else parse_document(doc_or_data)
        options.update({k: v for k, v in doc.options.items() if k in DEFAULTS})
        options.update({k: v for k, v in flags.items() if v is not None})
        cmd = command or doc.command
        rep = DISPATCH[cmd](doc, options)
    except (DocumentError, ShapeMismatch, NotWellDefined, MixedRings) as exc:
        rep = Report(command or "?", getattr(doc, "args", {}), options, exit_code=EXIT_INPUT, message=str(exc))
    except (InfiniteEnumeration, BudgetExceeded, NotCoexponentiable, UnsupportedRing) as exc:
        rep = Report(command or doc.command, doc.args, options, exit_code=EXIT_REFUSED,
                     message=f"{type(exc).__name__}: {exc}")
    except TangentoidError as exc:
        rep = Report(command or doc.command, doc.args, options, exit_code=EXIT_FAIL,
                     message=f"{type(exc).__name__}: {exc}")
    rep.options = {k: v for k, v in options.items() if k != "format"}
    rep.seconds = time.perf_counter() - start
    rep.names = _names(doc)
    return rep


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tangentoids", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("run", *COMMANDS):
        p = sub.add_parser(name, help="run the document's own command" if name == "run" else f"{name} command")
        p.add_argument("document", help="job document path, or - for standard input")
        p.add_argument("--format", choices=("text", "machine"), default=None)
        p.add_argument("--budget", type=int, default=None)
        p.add_argument("--probes", type=int, default=None)
        p.add_argument("--seed", type=int, default=None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    fmt = args.format
    try:
        if args.document == "-":
            doc = parse_document(sys.stdin.read())
        else:
            doc = load_document(args.document)
    except DocumentError as exc:
        rep = Report(args.command, {}, {}, exit_code=EXIT_INPUT, message=str(exc))
    else:
        fmt = fmt or doc.options.get("format")
        rep = execute(doc, None if args.command == "run" else args.command,
                      budget=args.budget, probes=args.probes, seed=args.seed)
    if fmt == "machine":
        sys.stdout.write(render_machine(rep))
    else:
        sys.stdout.write(render_text(rep, rep.names))
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
