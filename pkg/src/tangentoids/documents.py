"""Structured job documents: parsing rings, modules, algebras and tangentoids, and emitting them back."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict

from .algebras import Algebra
from .errors import DocumentError, TangentoidError
from .matrix import Matrix
from .modules import FPModule
from .rings import BaseRing, Integers, Modular, Product, Rationals, QQ, ZZ, product
from .solid import NonUnitalAlgebra
from .tangentoid import CALG, MOD, Tangentoid, build_tangentoid

COMMANDS = ("check", "build", "classify", "adjoint", "kaehler")


# ---------------------------------------------------------------------------
# scalars and rings
# ---------------------------------------------------------------------------

def parse_ring(spec) -> BaseRing:
    if spec == "Z":
        return ZZ
    if spec == "Q":
        return QQ
    if isinstance(spec, dict):
        if set(spec) == {"mod"}:
            n = spec["mod"]
            if not isinstance(n, int) or isinstance(n, bool) or n < 2:
                raise DocumentError(f"modulus must be an integer >= 2, got {n!r}")
            return Modular(n)
        if set(spec) == {"product"}:
            factors = spec["product"]
            if not isinstance(factors, list) or len(factors) < 2:
                raise DocumentError("a product ring needs at least two factors")
            return product(*[parse_ring(f) for f in factors])
    raise DocumentError(f"unrecognised ring {spec!r}")


def emit_ring(ring: BaseRing):
    if isinstance(ring, Integers):
        return "Z"
    if isinstance(ring, Rationals):
        return "Q"
    if isinstance(ring, Modular):
        return {"mod": ring.n}
    if isinstance(ring, Product):
        return {"product": [emit_ring(f) for f in ring.factors]}
    raise DocumentError(f"cannot emit ring {ring}")


def parse_scalar(ring: BaseRing, x):
    if isinstance(ring, Product):
        if isinstance(x, list):
            if len(x) != len(ring.factors):
                raise DocumentError(f"product element {x!r} has the wrong number of components")
            return tuple(parse_scalar(f, y) for f, y in zip(ring.factors, x))
        # a bare integer is its diagonal image
    return ring.canon(_plain_scalar(x))


def _plain_scalar(x):
    if isinstance(x, bool):
        raise DocumentError(f"booleans are not ring elements: {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return Fraction(x)
        except ValueError:
            raise DocumentError(f"cannot read {x!r} as a number") from None
    raise DocumentError(f"cannot read {x!r} as a ring element")


def emit_scalar(x):
    if isinstance(x, tuple):
        return [emit_scalar(y) for y in x]
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return x


def emit_vector(v):
    return [emit_scalar(x) for x in v]


def _vector(ring, v, length, what):
    if not isinstance(v, list) or len(v) != length:
        raise DocumentError(f"{what} must be a list of {length} entries")
    return tuple(parse_scalar(ring, x) for x in v)


def parse_matrix(ring, rows, nrows=None, ncols=None, what="matrix") -> Matrix:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise DocumentError(f"{what} must be a list of rows")
    if nrows is not None and len(rows) != nrows:
        raise DocumentError(f"{what} must have {nrows} rows, got {len(rows)}")
    width = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    data = [_vector(ring, r, width, f"each row of {what}") for r in rows]
    return Matrix(ring, data, width) if data else Matrix.zeros(ring, 0, width)


def emit_matrix(m: Matrix):
    return [emit_vector(r) for r in m.rows]


# ---------------------------------------------------------------------------
# modules and algebras
# ---------------------------------------------------------------------------

def parse_module(ring, spec) -> FPModule:
    if not isinstance(spec, dict) or "generators" not in spec:
        raise DocumentError("a module needs a 'generators' count")
    g = spec["generators"]
    if not isinstance(g, int) or isinstance(g, bool) or g < 0:
        raise DocumentError(f"generator count must be a non-negative integer, got {g!r}")
    rels = spec.get("relations", [])
    if not isinstance(rels, list):
        raise DocumentError("relations must be a list of coefficient vectors")
    vecs = [_vector(ring, r, g, "each relation") for r in rels]
    return FPModule.from_relation_vectors(ring, g, vecs)


def emit_module(M: FPModule) -> dict:
    return {"generators": M.ngens, "relations": [emit_vector(c) for c in M.relations.columns()]}


def _carrier_spec(spec):
    # the carrier may be nested under "module" or given flat
    return spec["module"] if "module" in spec else spec


def parse_algebra(ring, spec, unital=True) -> Algebra:
    if not isinstance(spec, dict) or "table" not in spec:
        raise DocumentError("an algebra needs a 'table'")
    M = parse_module(ring, _carrier_spec(spec))
    g = M.ngens
    table = spec["table"]
    if not isinstance(table, list) or len(table) != g or any(not isinstance(r, list) or len(r) != g for r in table):
        raise DocumentError(f"table must be a {g} x {g} array of vectors")
    table = [[_vector(ring, v, g, "each table entry") for v in row] for row in table]
    names = spec.get("names")
    if unital:
        unit = spec.get("unit")
        unit = None if unit is None else _vector(ring, unit, g, "unit")
        return Algebra(M, table, unit=unit, names=names)
    if "unit" in spec:
        raise DocumentError("a non-unital algebra must not declare a unit")
    return NonUnitalAlgebra(M, table, names=names)


def emit_algebra(A: Algebra) -> dict:
    out = emit_module(A.carrier)
    out["table"] = [[emit_vector(v) for v in row] for row in A.table]
    if A.unit is not None:
        out["unit"] = emit_vector(A.unit)
    if A.names:
        out["names"] = list(A.names)
    return out


# ---------------------------------------------------------------------------
# tangentoids
# ---------------------------------------------------------------------------

def emit_tangentoid(T: Tangentoid) -> dict:
    carrier = ({"algebra": emit_algebra(T.algebra)} if T.ambient == CALG
               else {"module": emit_module(T.module)})
    out = {"carrier": carrier, "ambient": T.ambient,
           "p": emit_matrix(T.p), "z": emit_matrix(T.z), "s": emit_matrix(T.s), "l": emit_matrix(T.l)}
    if T.n is not None:
        out["n"] = emit_matrix(T.n)
    out["names"] = list(T.names)
    return out


@dataclass
class JobDocument:
    ring: BaseRing
    objects: Dict[str, Any] = field(default_factory=dict)
    command: str = "check"
    args: Dict[str, Any] = field(default_factory=dict)
    options: Dict[str, Any] = field(default_factory=dict)
    raw: Dict[str, Any] = field(default_factory=dict)

    def get(self, name, kind=None):
        if name not in self.objects:
            raise DocumentError(f"unknown object {name!r}")
        obj = self.objects[name]
        if kind is not None and not isinstance(obj, kind):
            raise DocumentError(f"object {name!r} is a {type(obj).__name__}, expected {kind.__name__}")
        return obj

    def arg(self, key, kind=None):
        if key not in self.args:
            raise DocumentError(f"command {self.command!r} needs argument {key!r}")
        return self.get(self.args[key], kind)


class _Resolver:
    def __init__(self, ring, specs):
        self.ring = ring
        self.specs = specs
        self.done: Dict[str, Any] = {}
        self.active = set()

    def ref(self, value, expected=None):
        if isinstance(value, str):
            if value in self.active:
                raise DocumentError(f"cyclic reference through {value!r}")
            if value not in self.done:
                if value not in self.specs:
                    raise DocumentError(f"unknown object {value!r}")
                self.active.add(value)
                self.done[value] = self.build(self.specs[value])
                self.active.discard(value)
            obj = self.done[value]
        else:
            obj = self.build(value)
        if expected is not None and not isinstance(obj, expected):
            raise DocumentError(f"expected a {expected.__name__}, got {type(obj).__name__}")
        return obj

    def build(self, spec):
        if not isinstance(spec, dict) or len(spec) != 1:
            raise DocumentError(f"an object is a one-key mapping, got {spec!r}")
        (kind, body), = spec.items()
        if kind == "module":
            return parse_module(self.ring, body)
        if kind == "algebra":
            return parse_algebra(self.ring, body)
        if kind == "solid":
            return parse_algebra(self.ring, body, unital=False)
        if kind == "tangentoid":
            return self.tangentoid(body)
        raise DocumentError(f"unknown object kind {kind!r}")

    def tangentoid(self, body) -> Tangentoid:
        if not isinstance(body, dict):
            raise DocumentError("a tangentoid is a mapping")
        ambient = body.get("ambient")
        if ambient not in (None, MOD, CALG):
            raise DocumentError(f"ambient must be {MOD!r} or {CALG!r}")
        if "from_solid" in body:
            M = self.ref(body["from_solid"], NonUnitalAlgebra)
            return build_tangentoid(self.ring, M, ambient=ambient or CALG)
        missing = [k for k in ("carrier", "p", "z", "s", "l") if k not in body]
        if missing:
            raise DocumentError(f"tangentoid is missing {', '.join(missing)}")
        carrier = self.ref(body["carrier"])
        if not isinstance(carrier, (Algebra, FPModule)):
            raise DocumentError("a tangentoid carrier must be a module or an algebra")
        M = carrier.carrier if isinstance(carrier, Algebra) else carrier
        g = M.ngens
        mats = {
            "p": parse_matrix(self.ring, body["p"], 1, g, "p"),
            "z": parse_matrix(self.ring, body["z"], g, 1, "z"),
            "s": parse_matrix(self.ring, body["s"], g, None, "s"),
            "l": parse_matrix(self.ring, body["l"], g * g, g, "l"),
        }
        n = body.get("n")
        n = None if n is None else parse_matrix(self.ring, n, g, g, "n")
        return Tangentoid(carrier, mats["p"], mats["z"], mats["s"], mats["l"], n,
                          ambient=ambient, names=body.get("names"))


def parse_document(data) -> JobDocument:
    """Build a :class:`JobDocument` from decoded JSON; every failure is a DocumentError."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"not a valid document: {exc}") from None
    if not isinstance(data, dict) or "ring" not in data:
        raise DocumentError("a document is a mapping with a 'ring'")
    ring = parse_ring(data["ring"])
    specs = data.get("objects", {})
    if not isinstance(specs, dict):
        raise DocumentError("'objects' must be a mapping of names")
    res = _Resolver(ring, specs)
    try:
        for name in specs:
            res.ref(name)
    except DocumentError:
        raise
    except (TangentoidError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"invalid object: {exc}") from exc
    command = data.get("command", "check")
    if command not in COMMANDS:
        raise DocumentError(f"unknown command {command!r}")
    args = data.get("args", {})
    options = data.get("options", {})
    if not isinstance(args, dict) or not isinstance(options, dict):
        raise DocumentError("'args' and 'options' must be mappings")
    return JobDocument(ring, res.done, command, args, options, data)


def load_document(path) -> JobDocument:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise DocumentError(str(exc)) from None
    return parse_document(text)


def tangentoid_document(T: Tangentoid, name="D") -> dict:
    """A complete job document that checks ``T``."""
    return {"ring": emit_ring(T.ring), "objects": {name: {"tangentoid": emit_tangentoid(T)}},
            "command": "check", "args": {"tangentoid": name}}
