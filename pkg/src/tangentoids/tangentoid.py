"""Tangentoids in Mod_R and cAlg_R: data, axiom checker and the solid correspondence.

Matrices follow the column convention: column ``j`` of a morphism matrix is
the image of source generator ``j``.  ``I`` is the free module of rank one
(the ring itself).

The pullback ``D_m`` of ``p`` along itself is presented as
``D (+) K^(m-1)`` with ``K = ker p`` and legs ``pi_1(x, k...) = x`` and
``pi_j(x, k...) = z p x + k_j``.  When ``D`` is split (``p`` is the first
coordinate, ``z`` the first generator and the first generator carries no
relations) ``K`` is simply spanned by the remaining generators.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Sequence

from .algebras import (
    Algebra,
    AlgebraMorphism,
    algebra_check,
    algebra_product,
    morphism_laws,
    semidirect,
    subalgebra,
    algebra_tensor,
)
from .errors import AmbientMismatch, ExtractionFailure, InvalidWitness, ShapeMismatch
from .matrix import Matrix
from .modules import (
    DirectSum,
    FPModule,
    ModuleMorphism,
    factor_through,
    is_fgp,
    is_isomorphism,
    kernel,
    module_direct_sum,
    module_swap,
    module_tensor,
    morphism_equal,
    tensor_power,
)
from .solid import NonUnitalAlgebra, SolidWitness, check_solid

MOD = "Mod"
CALG = "cAlg"

AXIOMS = (
    "section",
    "sum_over_base",
    "sum_unit",
    "sum_commutative",
    "sum_associative",
    "lift_projection",
    "lift_zero",
    "lift_sum",
    "flip_projection",
    "flip_zero",
    "flip_additive",
    "flip_involution",
    "flip_yang_baxter",
    "flip_lift",
    "lift_coassociative",
    "lift_symmetric",
    "lift_universal",
    "pullback_preservation",
    "negation",
)


def _m(ring, data, nrows=None, ncols=None) -> Matrix:
    if isinstance(data, Matrix):
        return data
    data = [list(r) for r in data]
    if not data:
        return Matrix.zeros(ring, nrows or 0, ncols or 0)
    return Matrix(ring, data)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass
class AxiomEntry:
    name: str
    status: str  # "pass" | "fail" | "automatic"
    counterexample: Optional[dict] = None
    seconds: float = 0.0
    note: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.status in ("pass", "automatic")

    def as_dict(self):
        out = {"name": self.name, "status": self.status, "seconds": round(self.seconds, 6)}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class AxiomReport:
    ambient: str
    entries: List[AxiomEntry] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.ok for e in self.entries)

    def __getitem__(self, name) -> AxiomEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def names(self):
        return [e.name for e in self.entries]

    def failures(self) -> List[AxiomEntry]:
        return [e for e in self.entries if not e.ok]

    def as_dict(self):
        return {"ambient": self.ambient, "passed": self.passed, "entries": [e.as_dict() for e in self.entries]}


def _plain(v):
    return [list(x) if isinstance(x, tuple) else x for x in v]


def _difference(lhs: Matrix, rhs: Matrix, target: FPModule) -> Optional[dict]:
    """First source generator where ``lhs`` and ``rhs`` differ in ``target``."""
    if lhs.shape != rhs.shape:
        raise ShapeMismatch(f"cannot compare {lhs.shape} with {rhs.shape}")
    diff = lhs - rhs
    for j in range(diff.ncols):
        if not target.is_zero_vector(diff.column(j)):
            src = [lhs.ring.one if t == j else lhs.ring.zero for t in range(lhs.ncols)]
            return {"source": _plain(src), "lhs": _plain(target.reduce(lhs.column(j))),
                    "rhs": _plain(target.reduce(rhs.column(j)))}
    return None


# ---------------------------------------------------------------------------
# pullbacks of p
# ---------------------------------------------------------------------------

@dataclass
class FiberPower:
    """``D_m`` with its legs ``pi_1, ..., pi_m`` (matrices ``D_m -> D``)."""

    module: FPModule
    legs: List[Matrix]
    power: FPModule  # D^m as a direct sum, target of the stacked legs
    stacked: Matrix
    algebra: Optional[Algebra] = None

    def pair(self, maps: Sequence[Matrix]) -> Optional[Matrix]:
        """Matrix of ``<f_1, ..., f_m>: X -> D_m``, or None when the ``f_i`` disagree over the base."""
        F = maps[0]
        for f in maps[1:]:
            F = F.vstack(f)
        return self.power.solve(self.stacked, F)


# ---------------------------------------------------------------------------
# the tangentoid
# ---------------------------------------------------------------------------

class Tangentoid:
    """Carrier ``D`` with ``p, z, s, l`` and optional ``n``; the flip is the symmetry."""

    def __init__(self, carrier, p, z, s, l, n=None, ambient: Optional[str] = None, names=None):
        if isinstance(carrier, Algebra):
            self.algebra = carrier
            self.module = carrier.carrier
            ambient = ambient or CALG
        else:
            self.algebra = None
            self.module = carrier
            ambient = ambient or MOD
        if ambient not in (MOD, CALG):
            raise AmbientMismatch(f"unknown ambient {ambient!r}")
        if ambient == CALG and self.algebra is None:
            raise AmbientMismatch("a cAlg tangentoid needs an algebra carrier")
        if ambient == MOD and self.algebra is not None:
            self.algebra = None
        self.ambient = ambient
        ring = self.module.ring
        g = self.module.ngens
        self.p = _m(ring, p, 1, g)
        self.z = _m(ring, z, g, 1)
        self.s = _m(ring, s)
        self.l = _m(ring, l, g * g, g)
        self.n = None if n is None else _m(ring, n, g, g)
        if self.p.shape != (1, g) or self.z.shape != (g, 1) or self.l.shape != (g * g, g):
            raise ShapeMismatch("p, z or l has the wrong shape for the carrier")
        if self.n is not None and self.n.shape != (g, g):
            raise ShapeMismatch("n must be square")
        if self.s.shape != (g, self.fiber(2).module.ngens):
            raise ShapeMismatch(f"s must be {g} x {self.fiber(2).module.ngens} for the chosen D_2")
        if names is None and self.algebra is not None:
            names = self.algebra.names
        self.names = list(names) if names else [f"g{i}" for i in range(g)]

    # -- basic objects ---------------------------------------------------------
    @property
    def ring(self):
        return self.module.ring

    @property
    def g(self) -> int:
        return self.module.ngens

    @cached_property
    def unit_object(self) -> FPModule:
        return FPModule.free(self.ring, 1)

    @cached_property
    def square(self) -> FPModule:
        return module_tensor(self.module, self.module)

    @cached_property
    def cube(self) -> FPModule:
        return tensor_power(self.module, 3)

    @cached_property
    def sigma(self) -> Matrix:
        return module_swap(self.module, self.module).matrix

    @cached_property
    def identity(self) -> Matrix:
        return self.module.identity_matrix()

    @cached_property
    def is_split(self) -> bool:
        ring = self.ring
        g = self.g
        if g == 0:
            return False
        e0 = [ring.one] + [ring.zero] * (g - 1)
        return (list(self.p.rows[0]) == e0 and list(self.z.column(0)) == e0
                and all(x == ring.zero for x in self.module.relations.rows[0]))

    @cached_property
    def kernel(self):
        """``(K, iota)`` for ``K = ker p``."""
        ring = self.ring
        if self.is_split:
            g = self.g
            K = FPModule(ring, g - 1, self.module.relations.select_rows(range(1, g)))
            iota = Matrix.zeros(ring, 1, g - 1).vstack(Matrix.identity(ring, g - 1))
            return K, ModuleMorphism(K, self.module, iota, check=False)
        return kernel(ModuleMorphism(self.module, self.unit_object, self.p, check=False))

    def fiber(self, m: int) -> FiberPower:
        cache = self.__dict__.setdefault("_fibers", {})
        if m not in cache:
            cache[m] = self._build_fiber(m)
        return cache[m]

    def _build_fiber(self, m: int) -> FiberPower:
        ring = self.ring
        K, iota = self.kernel
        D = self.module
        parts = [D] + [K] * (m - 1)
        Dm = module_direct_sum(*parts)
        zp = self.z @ self.p
        legs = []
        for j in range(m):
            blocks = [self.identity if j == 0 else zp]
            for t in range(1, m):
                blocks.append(iota.matrix if t == j else Matrix.zeros(ring, self.g, K.ngens))
            leg = blocks[0]
            for b in blocks[1:]:
                leg = leg.hstack(b)
            legs.append(leg)
        power = module_direct_sum(*([D] * m))
        stacked = legs[0]
        for leg in legs[1:]:
            stacked = stacked.vstack(leg)
        alg = None
        if self.ambient == CALG:
            prod = self.algebra
            for _ in range(m - 1):
                prod = algebra_product(self.algebra, prod)
            alg, _ = subalgebra(prod, Dm, stacked)
        return FiberPower(Dm, legs, power, stacked, alg)

    # -- derived maps ------------------------------------------------------------
    def negation(self) -> Matrix:
        """``n`` if given, else ``2 z p - id``."""
        return self.n if self.n is not None else negation_synthesize(self)

    def __repr__(self):
        return f"Tangentoid({self.ambient}, {self.ring}, ngens={self.g})"


def negation_synthesize(T: Tangentoid) -> Matrix:
    """``id (+) (-1)`` through the splitting ``D = I (+) ker p``: ``2 z p - id``."""
    zp = T.z @ T.p
    return zp + zp - T.identity


# ---------------------------------------------------------------------------
# the axiom checker
# ---------------------------------------------------------------------------

class _Checker:
    def __init__(self, T: Tangentoid, preservation=((0, 2), (1, 2), (2, 2))):
        self.T = T
        self.report = AxiomReport(T.ambient)
        self.preservation = preservation

    def entry(self, name, fn, automatic=False):
        t0 = time.perf_counter()
        try:
            cex, note = fn()
        except _Unpairable as exc:
            cex, note = {"reason": str(exc)}, "maps do not agree over the base"
        dt = time.perf_counter() - t0
        if cex is None:
            status = "automatic" if automatic else "pass"
        else:
            status = "fail"
            if automatic:
                note = (note + "; " if note else "") + "flip axiom failed although c is the symmetry"
        self.report.entries.append(AxiomEntry(name, status, cex, dt, note))

    def compare(self, lhs, rhs, target):
        return _difference(lhs, rhs, target), None

    def pair(self, m, maps):
        X = self.T.fiber(m).pair(maps)
        if X is None:
            raise _Unpairable(f"pairing into D_{m} does not exist")
        return X

    def run(self) -> AxiomReport:
        T = self.T
        ring = T.ring
        D, DD = T.module, T.square
        P, Z, S, L, Id = T.p, T.z, T.s, T.l, T.identity
        I1 = Matrix.identity(ring, 1)
        D2 = T.fiber(2)
        p1, p2 = D2.legs
        sigma = T.sigma

        if T.ambient == CALG:
            self.algebra_entries()

        self.entry("section", lambda: self.compare(P @ Z, I1, T.unit_object))
        self.entry("sum_over_base", lambda: self.compare(P @ S, P @ p1, T.unit_object))
        self.entry("sum_unit", lambda: self.compare(S @ self.pair(2, [Z @ P, Id]), Id, D))
        self.entry("sum_commutative", lambda: self.compare(S @ self.pair(2, [p2, p1]), S, D))
        self.entry("sum_associative", self._associativity)

        idp = Id.kron(P)
        pid = P.kron(Id)
        self.entry("lift_projection", lambda: self.compare(idp @ L, Z @ P, D))
        self.entry("lift_zero", lambda: self.compare(L @ Z, Z.kron(Z), DD))
        self.entry("lift_sum", self._lift_sum)

        # flip axioms: c is the symmetry, so these hold by the symmetric monoidal structure
        note = "c = symmetry"
        self.entry("flip_projection", lambda: (_difference(idp @ sigma, pid, D), note), automatic=True)
        self.entry("flip_zero", lambda: (_difference(sigma @ Z.kron(Id), Id.kron(Z), DD), note), automatic=True)
        self.entry("flip_additive", self._flip_additive, automatic=True)
        self.entry("flip_involution", lambda: (_difference(sigma @ sigma, Id.kron(Id), DD), note), automatic=True)
        self.entry("flip_yang_baxter", self._yang_baxter, automatic=True)
        self.entry("flip_lift", self._flip_lift, automatic=True)

        self.entry("lift_coassociative", lambda: self.compare(Id.kron(L) @ L, L.kron(Id) @ L, T.cube))
        self.entry("lift_symmetric", lambda: self.compare(sigma @ L, L, DD))
        self.entry("lift_universal", self._universal)
        self.entry("pullback_preservation", self._preservation)
        if T.n is not None:
            self.entry("negation", lambda: self._negation(T.n))
        return self.report

    # -- individual diagrams ----------------------------------------------------
    def algebra_entries(self):
        T = self.T
        A = T.algebra

        def carrier():
            rep = algebra_check(A)
            bad = rep.failures()
            if bad:
                return {"law": bad[0].name, "generators": bad[0].witness}, None
            return None, None

        self.entry("algebra_carrier", carrier)
        R = Algebra(T.unit_object, [[(1,)]], unit=(1,), check=False)
        DD = algebra_tensor(A, A)
        D2 = T.fiber(2).algebra
        maps = [("algebra_p", A, R, T.p), ("algebra_z", R, A, T.z), ("algebra_s", D2, A, T.s),
                ("algebra_l", A, DD, T.l)]
        if T.n is not None:
            maps.append(("algebra_n", A, A, T.n))
        for name, src, tgt, mat in maps:
            self.entry(name, lambda src=src, tgt=tgt, mat=mat: _algebra_failure(src, tgt, mat))

    def _associativity(self):
        T = self.T
        S = T.s
        q1, q2, q3 = T.fiber(3).legs
        left = S @ self.pair(2, [S @ self.pair(2, [q1, q2]), q3])
        right = S @ self.pair(2, [q1, S @ self.pair(2, [q2, q3])])
        return self.compare(left, right, T.module)

    def _lift_sum(self):
        T = self.T
        p1, p2 = T.fiber(2).legs
        L = T.l
        X = self._pair_tensor_fiber(L @ p1, L @ p2)
        lhs = L @ T.s
        rhs = T.identity.kron(T.s) @ X
        return self.compare(lhs, rhs, T.square)

    @cached_property
    def tensor_fiber(self):
        """``D (x) D_2`` presented as a tensor, with legs ``id (x) pi_k`` stacked."""
        T = self.T
        D2 = T.fiber(2)
        src = module_tensor(T.module, D2.module)
        legs = [T.identity.kron(leg) for leg in D2.legs]
        stacked = legs[0].vstack(legs[1])
        return src, stacked, module_direct_sum(T.square, T.square)

    def _pair_tensor_fiber(self, f, g):
        _, stacked, power = self.tensor_fiber
        X = power.solve(stacked, f.vstack(g))
        if X is None:
            raise _Unpairable("pairing into D (x) D_2 does not exist")
        return X

    def _flip_additive(self):
        T = self.T
        D2 = T.fiber(2)
        sig = T.sigma
        f = sig @ D2.legs[0].kron(T.identity)
        g = sig @ D2.legs[1].kron(T.identity)
        X = self._pair_tensor_fiber(f, g)
        lhs = T.identity.kron(T.s) @ X
        rhs = sig @ T.s.kron(T.identity)
        return _difference(lhs, rhs, T.square), "c = symmetry"

    def _yang_baxter(self):
        T = self.T
        a = T.sigma.kron(T.identity)
        b = T.identity.kron(T.sigma)
        return _difference(a @ b @ a, b @ a @ b, T.cube), "c = symmetry"

    def _flip_lift(self):
        T = self.T
        a = T.sigma.kron(T.identity)
        b = T.identity.kron(T.sigma)
        lhs = a @ b @ T.l.kron(T.identity)
        rhs = T.identity.kron(T.l) @ T.sigma
        return _difference(lhs, rhs, T.cube), "c = symmetry"

    def _universal(self):
        T = self.T
        res = universality_equalizer(T)
        if res["ok"]:
            return None, "triple equalizer criterion with n = " + ("given" if T.n is not None else "2zp - id")
        return res["counterexample"], res["reason"]

    def _preservation(self):
        T = self.T
        for n, m in self.preservation:
            ok, cex = pullback_comparison(T, n, m)
            if not ok:
                cex = dict(cex or {})
                cex["n"], cex["m"] = n, m
                return cex, f"comparison D^{n} (x) D_{m} is not an isomorphism"
        return None, "checked (n, m) in " + ", ".join(f"({a},{b})" for a, b in self.preservation)

    def _negation(self, N):
        T = self.T
        cex = _difference(T.p @ N, T.p, T.unit_object)
        if cex is not None:
            return cex, "p n != p"
        return self.compare(T.s @ self.pair(2, [N, T.identity]), T.z @ T.p, T.module)


class _Unpairable(Exception):
    pass


def _algebra_failure(src: Algebra, tgt: Algebra, mat: Matrix):
    f = AlgebraMorphism(src, tgt, mat, check=False)
    rep = morphism_laws(f)
    bad = rep.failures()
    if bad:
        return {"law": bad[0].name, "generators": bad[0].witness}, None
    return None, None


def check_tangentoid(T: Tangentoid, preservation=((0, 2), (1, 2), (2, 2))) -> AxiomReport:
    """Every tangentoid axiom as an exact equality modulo relations."""
    if T.ambient not in (MOD, CALG):
        raise AmbientMismatch(T.ambient)
    return _Checker(T, preservation).run()


# ---------------------------------------------------------------------------
# universality
# ---------------------------------------------------------------------------

def equalizer(T: Tangentoid):
    """``(E, inclusion)``: ``w`` with ``(id (x) p) w = (p (x) id) w = z (p (x) p) w``."""
    idp = T.identity.kron(T.p)
    pid = T.p.kron(T.identity)
    zpp = T.z @ T.p.kron(T.p)
    F = (idp - pid).vstack(idp - zpp)
    target = module_direct_sum(T.module, T.module)
    return kernel(ModuleMorphism(T.square, target, F, check=False))


def universality_equalizer(T: Tangentoid) -> dict:
    """Triple-equalizer form of universality: ``l`` factors through ``E`` isomorphically."""
    E, inc = equalizer(T)
    idp = T.identity.kron(T.p)
    pid = T.p.kron(T.identity)
    zpp = T.z @ T.p.kron(T.p)
    for name, other in (("(id x p) l = (p x id) l", pid), ("(id x p) l = z (p x p) l", zpp)):
        cex = _difference(idp @ T.l, other @ T.l, T.module)
        if cex is not None:
            return {"ok": False, "reason": f"l does not land in the equalizer: {name}", "counterexample": cex}
    h = factor_through(ModuleMorphism(T.module, T.square, T.l, check=False), inc)
    if h is None:
        return {"ok": False, "reason": "l does not factor through the equalizer", "counterexample": None}
    if is_isomorphism(h) is None:
        # find an equalizer element outside the image of l, or a kernel element of l
        K, kinc = kernel(h)
        if not K.is_zero():
            v = kinc.matrix.column(0)
            return {"ok": False, "reason": "l is not a monomorphism",
                    "counterexample": {"source": _plain(v), "lhs": _plain(T.square.reduce(T.l.apply(v))),
                                       "rhs": _plain(T.square.zero_vector())}}
        for j in range(E.ngens):
            w = inc.matrix.column(j)
            X = T.square.solve(T.l, Matrix.column_vector(T.ring, w))
            if X is None:
                return {"ok": False, "reason": "the equalizer is larger than the image of l",
                        "counterexample": {"source": None, "lhs": _plain(T.square.reduce(w)), "rhs": None}}
        return {"ok": False, "reason": "l is not an isomorphism onto the equalizer", "counterexample": None}
    return {"ok": True}


def universality_pullback(T: Tangentoid) -> bool:
    """Universality read directly: ``D_2`` is the pullback of ``z`` and ``id (x) p``."""
    ring = T.ring
    p1, p2 = T.fiber(2).legs
    chk = _Checker(T)
    try:
        X = chk._pair_tensor_fiber(T.l @ p1, T.z.kron(T.identity) @ p2)
    except _Unpairable:
        return False
    v = T.identity.kron(T.s) @ X
    target = module_direct_sum(T.unit_object, T.square)
    F = T.z.hstack(-(T.identity.kron(T.p)))
    P, inc = kernel(ModuleMorphism(target, T.module, F, check=False))
    cmp_ = ModuleMorphism(T.fiber(2).module, target, (T.p @ p1).vstack(v), check=False)
    h = factor_through(cmp_, inc)
    del ring
    return h is not None and is_isomorphism(h) is not None


def pullback_comparison(T: Tangentoid, n: int, m: int):
    """Whether ``D^n (x) D_m -> (D^n (x) D) x_{D^n} ... (m factors)`` is an isomorphism."""
    ring = T.ring
    Dn = tensor_power(T.module, n)
    Fm = T.fiber(m)
    src = module_tensor(Dn, Fm.module)
    In = Dn.identity_matrix()
    piece = module_tensor(Dn, T.module)
    legs = [In.kron(leg) for leg in Fm.legs]
    stacked = legs[0]
    for leg in legs[1:]:
        stacked = stacked.vstack(leg)
    prod = module_direct_sum(*([piece] * m))
    proj = In.kron(T.p)
    if m > 1:
        rows = None
        for k in range(1, m):
            blocks = []
            for t in range(m):
                if t == 0:
                    blocks.append(proj)
                elif t == k:
                    blocks.append(-proj)
                else:
                    blocks.append(Matrix.zeros(ring, Dn.ngens, piece.ngens))
            row = blocks[0]
            for b in blocks[1:]:
                row = row.hstack(b)
            rows = row if rows is None else rows.vstack(row)
        tgt = module_direct_sum(*([Dn] * (m - 1)))
        Pm, inc = kernel(ModuleMorphism(prod, tgt, rows, check=False))
    else:
        Pm, inc = prod, ModuleMorphism.identity(prod)
    cmp_ = ModuleMorphism(src, prod, stacked, check=False)
    h = factor_through(cmp_, inc)
    if h is None:
        return False, {"reason": "comparison does not land in the fiber product"}
    if is_isomorphism(h) is None:
        return False, {"reason": "comparison is not invertible"}
    return True, None


# ---------------------------------------------------------------------------
# the solid correspondence
# ---------------------------------------------------------------------------

@dataclass
class DTwoSharp:
    """``D(2) = I (+) (M (x) M)`` with ``l_sharp: D(2) -> D (x) D`` and ``l_flat`` back."""

    module: DirectSum
    sharp: Matrix
    flat: Matrix

    def verify(self) -> bool:
        return morphism_equal(ModuleMorphism(self.module, self.module, self.flat @ self.sharp, check=False),
                              ModuleMorphism.identity(self.module))


@dataclass
class Extraction:
    algebra: NonUnitalAlgebra
    witness: SolidWitness
    inclusion: ModuleMorphism  # M -> D
    retraction: ModuleMorphism  # D -> M, factor of id - z p
    d2: DTwoSharp
    l_circ: Matrix

    def __iter__(self):
        yield self.algebra
        yield self.witness


def d_two_sharp(T: Tangentoid, K: FPModule, iota: Matrix, pi: Matrix) -> DTwoSharp:
    KK = module_tensor(K, K)
    D2s = module_direct_sum(T.unit_object, KK)
    sharp = T.z.kron(T.z).hstack(iota.kron(iota))
    flat = T.p.kron(T.p).vstack(pi.kron(pi))
    return DTwoSharp(D2s, sharp, flat)


def extract_solid(T: Tangentoid) -> Extraction:
    """``M = ker p`` with ``alpha`` from ``l_circ`` and ``nu`` read off ``l``."""
    ring = T.ring
    K, inc = kernel(ModuleMorphism(T.module, T.unit_object, T.p, check=False))
    iota = inc.matrix
    proj = ModuleMorphism(T.module, T.module, T.identity - T.z @ T.p, check=False)
    r = factor_through(proj, inc)
    if r is None:
        raise ExtractionFailure("id - z p does not factor through ker p")
    pi = r.matrix
    KK = module_tensor(K, K)
    nu = ModuleMorphism(K, KK, pi.kron(pi) @ T.l @ iota, check=False)
    d2 = d_two_sharp(T, K, iota, pi)
    if not d2.verify():
        raise ExtractionFailure("l_flat l_sharp is not the identity")
    X = T.square.solve(T.l, d2.sharp)
    if X is None:
        raise ExtractionFailure("l_sharp does not factor through l")
    emb = d2.module.injection(1).matrix
    alpha = pi @ X @ emb
    A = NonUnitalAlgebra.from_alpha(ModuleMorphism(KK, K, alpha, check=False))
    w = SolidWitness(A, nu)
    if not w.verify():
        raise ExtractionFailure("alpha and nu are not inverse")
    if A.mult.certificate is None:
        raise ExtractionFailure("alpha is not well defined")
    del ring
    return Extraction(A, w, inc, r, d2, X)


def build_tangentoid(ring, M: NonUnitalAlgebra, witness: Optional[SolidWitness] = None,
                     ambient: str = CALG) -> Tangentoid:
    """``D = R (+) M`` (``R x| M`` in cAlg) with ``l = l_sharp (id (+) nu)``."""
    if M.ring != ring:
        raise InvalidWitness(f"{M.ring} vs {ring}")
    if witness is None:
        res = check_solid(M)
        if not res:
            raise InvalidWitness(f"not solid: {res.reason}")
        witness = res.witness
    elif not witness.verify():
        raise InvalidWitness("nu is not inverse to alpha")
    k = M.ngens
    g = k + 1
    zero, one = ring.zero, ring.one
    if ambient == CALG:
        carrier = semidirect(ring, M)
        names = carrier.names
    elif ambient == MOD:
        carrier = FPModule(ring, g, Matrix.zeros(ring, 1, 0).block_diag(M.carrier.relations))
        names = ["1"] + (list(M.names) if M.names else [f"m{i + 1}" for i in range(k)])
    else:
        raise AmbientMismatch(ambient)
    p = [[one] + [zero] * k]
    z = [[one]] + [[zero] for _ in range(k)]
    s_rows = [[one] + [zero] * (2 * k)]
    for i in range(k):
        s_rows.append([zero] + [one if j == i else zero for j in range(k)] + [one if j == i else zero for j in range(k)])
    lrows = [[zero] * g for _ in range(g * g)]
    lrows[0][0] = one
    nu = witness.nu.matrix
    for a in range(k):
        for b in range(k):
            for c in range(k):
                lrows[(b + 1) * g + (c + 1)][a + 1] = nu[b * k + c, a]
    n = [[one if i == j == 0 else (ring.neg(one) if i == j else zero) for j in range(g)] for i in range(g)]
    return Tangentoid(carrier, _m(ring, p), _m(ring, z), Matrix(ring, s_rows, 1 + 2 * k),
                      Matrix(ring, lrows, g), Matrix(ring, n, g), ambient=ambient, names=names)


# ---------------------------------------------------------------------------
# morphisms, monoid structure, coexponentiability, transport
# ---------------------------------------------------------------------------

def check_morphism(f, T: Tangentoid, T2: Tangentoid) -> AxiomReport:
    """Compatibility of ``f: D -> D'`` with ``p, z, s, l, c``; negation is checked as a consequence."""
    if T.ambient != T2.ambient:
        raise AmbientMismatch(f"{T.ambient} vs {T2.ambient}")
    F = f.matrix if hasattr(f, "matrix") else _m(T.ring, f)
    rep = AxiomReport(T.ambient)

    def add(name, fn, automatic=False, note=None):
        t0 = time.perf_counter()
        try:
            cex = fn()
        except _Unpairable as exc:
            cex = {"reason": str(exc)}
        status = "fail" if cex is not None else ("automatic" if automatic else "pass")
        rep.entries.append(AxiomEntry(name, status, cex, time.perf_counter() - t0, note))

    if T.ambient == CALG:
        add("algebra_morphism", lambda: _algebra_failure(T.algebra, T2.algebra, F)[0])
    add("well_defined", lambda: None if ModuleMorphism(T.module, T2.module, F, check=False).certificate
        is not None else {"reason": "relations not preserved"})
    add("projection", lambda: _difference(T2.p @ F, T.p, T.unit_object))
    add("zero", lambda: _difference(F @ T.z, T2.z, T2.module))

    def sums():
        p1, p2 = T.fiber(2).legs
        X = T2.fiber(2).pair([F @ p1, F @ p2])
        if X is None:
            raise _Unpairable("f x f does not exist")
        return _difference(T2.s @ X, F @ T.s, T2.module)

    add("sum", sums)
    add("lift", lambda: _difference(T2.l @ F, F.kron(F) @ T.l, T2.square))
    add("flip", lambda: _difference(T2.sigma @ F.kron(F), F.kron(F) @ T.sigma, T2.square), automatic=True,
        note="c = symmetry")
    n1, n2 = T.negation(), T2.negation()
    add("negation", lambda: _difference(n2 @ F, F @ n1, T2.module), note="derived, not assumed")
    return rep


@dataclass
class InducedMonoid:
    mu: Matrix
    eta: Matrix
    report: Dict[str, bool]

    @property
    def commutative(self) -> bool:
        return self.report["commutative"]

    def table(self, g):
        cols = self.mu.columns()
        return [[cols[i * g + j] for j in range(g)] for i in range(g)]


def induced_monoid(T: Tangentoid) -> InducedMonoid:
    """``mu = s <id (x) p, p (x) id>`` and ``eta = z`` with their laws."""
    D = T.module
    Id = T.identity
    X = T.fiber(2).pair([Id.kron(T.p), T.p.kron(Id)])
    if X is None:
        raise ExtractionFailure("<id x p, p x id> does not exist")
    mu = T.s @ X
    eta = T.z
    rep = {}
    rep["associative"] = _difference(mu @ mu.kron(Id), mu @ Id.kron(mu), D) is None
    rep["unit"] = (_difference(mu @ eta.kron(Id), Id, D) is None
                   and _difference(mu @ Id.kron(eta), Id, D) is None)
    rep["commutative"] = _difference(mu @ T.sigma, mu, D) is None
    # the flip is a monoid morphism for the tensor monoid on D (x) D
    mid = Id.kron(T.sigma).kron(Id)
    mu2 = mu.kron(mu) @ mid
    rep["flip_is_monoid_morphism"] = _difference(T.sigma @ mu2, mu2 @ T.sigma.kron(T.sigma), T.square) is None
    if T.ambient == CALG:
        rep["matches_carrier"] = _difference(mu, T.algebra.mult.matrix, D) is None
    return InducedMonoid(mu, eta, rep)


def is_coexponentiable(T: Tangentoid) -> bool:
    """In cAlg: ``ker p`` (equivalently ``D``) is finitely generated projective."""
    if T.ambient != CALG:
        raise AmbientMismatch("coexponentiability is decided in cAlg")
    K, _ = T.kernel
    return is_fgp(K)


def mod_alg_transport(T: Tangentoid) -> Tangentoid:
    """Mod to cAlg via the induced monoid, cAlg to Mod by forgetting."""
    if T.ambient == CALG:
        return Tangentoid(T.module, T.p, T.z, T.s, T.l, T.n, ambient=MOD, names=T.names)
    mon = induced_monoid(T)
    A = Algebra(T.module, mon.table(T.g), unit=mon.eta.column(0), check=False, names=T.names)
    return Tangentoid(A, T.p, T.z, T.s, T.l, T.n, ambient=CALG, names=T.names)


# ---------------------------------------------------------------------------
# named tangentoids
# ---------------------------------------------------------------------------

def dual_numbers_tangentoid(ring) -> Tangentoid:
    """``R[e]`` with augmentation, inclusion, ``e1, e2 -> e``, ``e -> e (x) e``, ``e -> -e``."""
    from .algebras import dual_numbers

    A = dual_numbers(ring)
    return Tangentoid(A, [[1, 0]], [[1], [0]], [[1, 0, 0], [0, 1, 1]],
                      [[1, 0], [0, 0], [0, 0], [0, 1]], [[1, 0], [0, -1]], ambient=CALG)


def trivial_tangentoid(ring, ambient=CALG) -> Tangentoid:
    from .algebras import trivial_algebra

    carrier = trivial_algebra(ring) if ambient == CALG else FPModule.free(ring, 1)
    return Tangentoid(carrier, [[1]], [[1]], [[1]], [[1]], [[1]], ambient=ambient)


def biproduct_tangentoid(ring) -> Tangentoid:
    """``R (+) R`` in Mod with ``l(x, y) = (x, 0) (x) (1, 0) + (0, 1) (x) (0, y)``."""
    D = FPModule.free(ring, 2)
    # images of the generators (1, 0) and (0, 1): (1,0)(x)(1,0) and (0,1)(x)(0,1)
    l = [[1, 0], [0, 0], [0, 0], [0, 1]]
    return Tangentoid(D, [[1, 0]], [[1], [0]], [[1, 0, 0], [0, 1, 1]], l, [[1, 0], [0, -1]], ambient=MOD,
                      names=["x", "y"])


# ---------------------------------------------------------------------------
# round trips
# ---------------------------------------------------------------------------

@dataclass
class SolidIsomorphism:
    """Module isomorphism ``phi: M -> M'`` with ``alpha' (phi (x) phi) = phi alpha``."""

    forward: ModuleMorphism
    inverse: ModuleMorphism


def solid_round_trip(M: NonUnitalAlgebra, ambient: str = CALG) -> Optional[SolidIsomorphism]:
    """Certified isomorphism ``M -> extract_solid(build_tangentoid(M))``, or None."""
    T = build_tangentoid(M.ring, M, ambient=ambient)
    ex = extract_solid(T)
    M2 = ex.algebra
    K, iota = T.kernel  # the split copy of M inside D
    phi = ModuleMorphism(M.carrier, M2.carrier, ex.retraction.matrix @ iota.matrix, check=False)
    inv = is_isomorphism(phi)
    if inv is None:
        return None
    lhs = M2.alpha.matrix @ phi.matrix.kron(phi.matrix)
    rhs = phi.matrix @ M.alpha.matrix
    if _difference(lhs, rhs, M2.carrier) is not None:
        return None
    return SolidIsomorphism(phi, inv)


@dataclass
class TangentoidIsomorphism:
    """``f: T' -> T`` with ``T' = build_tangentoid(extract_solid(T))``."""

    rebuilt: Tangentoid
    forward: Matrix
    report: AxiomReport
    inverse: Optional[ModuleMorphism]

    @property
    def ok(self) -> bool:
        return self.report.passed and self.inverse is not None


def tangentoid_round_trip(T: Tangentoid) -> TangentoidIsomorphism:
    ex = extract_solid(T)
    T2 = build_tangentoid(T.ring, ex.algebra, ex.witness, ambient=T.ambient)
    f = T.z.hstack(ex.inclusion.matrix)
    rep = check_morphism(f, T2, T)
    inv = is_isomorphism(ModuleMorphism(T2.module, T.module, f, check=False))
    return TangentoidIsomorphism(T2, f, rep, inv)


# ---------------------------------------------------------------------------
# brute-force universality
# ---------------------------------------------------------------------------

def hom_matrices(X: FPModule, Y: FPModule) -> List[Matrix]:
    """Every module morphism ``X -> Y`` (``Y`` finite), one canonical matrix each."""
    ring = X.ring
    elems = list(Y.elements())
    rels = X.relations.columns()
    out = []

    def rec(prefix):
        if len(prefix) == X.ngens:
            M = (Matrix.from_columns(ring, prefix, Y.ngens) if prefix
                 else Matrix.zeros(ring, Y.ngens, 0))
            for r in rels:
                if not Y.is_zero_vector(M.apply(r)):
                    return
            out.append(M)
            return
        for y in elems:
            rec(prefix + [y])

    rec([])
    return out


def probe_family(ring, size: int = 4) -> List[FPModule]:
    """``R`` and cyclic quotients ``R/(a)`` by non-unit, non-zero ``a``."""
    probes = [FPModule.free(ring, 1)]
    if ring.is_finite:
        for a in ring.elements():
            if len(probes) >= size:
                break
            if a == ring.zero or ring.inverse(a) is not None:
                continue
            probes.append(FPModule.cyclic(ring, a))
    return probes[:max(size, 1)]


def universality_bruteforce(T: Tangentoid, probes: Optional[Sequence[FPModule]] = None) -> dict:
    """Test the pullback square of the universality axiom against every map from each probe.

    For each probe ``X`` and each pair ``(a: X -> I, b: X -> D (x) D)`` with
    ``z a = (id (x) p) b`` there must be exactly one ``u: X -> D_2`` with
    ``p pi_1 u = a`` and ``v u = b``.
    """
    if not T.module.is_finite:
        from .errors import InfiniteEnumeration
        raise InfiniteEnumeration("brute-force universality needs a finite carrier")
    probes = list(probes) if probes is not None else probe_family(T.ring)
    D2 = T.fiber(2)
    p1, p2 = D2.legs
    try:
        X = _Checker(T)._pair_tensor_fiber(T.l @ p1, T.z.kron(T.identity) @ p2)
    except _Unpairable:
        return {"ok": False, "reason": "the universality square does not exist", "probe": None}
    v = T.identity.kron(T.s) @ X
    a_leg = T.p @ p1
    I, DD, D = T.unit_object, T.square, T.module
    idp = T.identity.kron(T.p)

    def key(Y, M):
        return tuple(Y.key(c) for c in M.columns())

    for idx, P in enumerate(probes):
        counts = {}
        for u in hom_matrices(P, D2.module):
            k = (key(I, a_leg @ u), key(DD, v @ u))
            counts[k] = counts.get(k, 0) + 1
        for a in hom_matrices(P, I):
            za = key(D, T.z @ a)
            ka = key(I, a)
            for b in hom_matrices(P, DD):
                if key(D, idp @ b) != za:
                    continue
                c = counts.get((ka, key(DD, b)), 0)
                if c != 1:
                    return {"ok": False, "probe": idx, "reason": f"{c} factorisations",
                            "a": _plain(a.column(0)) if a.ncols else [], "b": _plain(b.column(0)) if b.ncols else []}
    return {"ok": True, "probes": len(probes)}
