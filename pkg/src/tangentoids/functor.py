"""The tangent structure ``D (x) -`` on cAlg induced by a tangentoid ``D``."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .algebras import (
    AModule,
    Algebra,
    AlgebraMorphism,
    algebra_tensor,
    derivations,
    hom_enumerate,
    kaehler,
    morphism_laws,
)
from .errors import AmbientMismatch, InfiniteEnumeration, NotCoexponentiable
from .matrix import Matrix
from .modules import (
    FPModule,
    ModuleMorphism,
    factor_through,
    is_isomorphism,
    kernel,
    module_direct_sum,
    module_tensor,
)
from .tangentoid import CALG, Tangentoid, _difference, check_tangentoid, is_coexponentiable


@dataclass
class Components:
    """``p, z, s, l, n`` tensored with ``id_A``; mutable so tests can corrupt one."""

    p: Matrix
    z: Matrix
    s: Matrix
    l: Matrix
    n: Matrix


class TangentStructureInstance:
    """``T = D (x) -`` with per-algebra structure components cached."""

    def __init__(self, tangentoid: Tangentoid, verify: bool = True):
        if tangentoid.ambient != CALG:
            raise AmbientMismatch("the tangent functor is built in cAlg")
        if verify:
            rep = check_tangentoid(tangentoid)
            if not rep.passed:
                raise AmbientMismatch(f"tangentoid fails {rep.failures()[0].name}")
        self.tangentoid = tangentoid
        self._components: Dict[int, Components] = {}
        self._applied: Dict[int, Algebra] = {}

    @property
    def D(self) -> Algebra:
        return self.tangentoid.algebra

    def apply(self, A: Algebra) -> Algebra:
        key = id(A)
        if key not in self._applied:
            self._applied[key] = algebra_tensor(self.D, A)
        return self._applied[key]

    def components(self, A: Algebra) -> Components:
        key = id(A)
        if key not in self._components:
            T = self.tangentoid
            IA = A.carrier.identity_matrix()
            self._components[key] = Components(
                T.p.kron(IA), T.z.kron(IA), T.s.kron(IA), T.l.kron(IA), T.negation().kron(IA))
        return self._components[key]


def tangent_apply(T: TangentStructureInstance, A: Algebra) -> Algebra:
    return T.apply(A)


def tangent_map(T: TangentStructureInstance, f: AlgebraMorphism) -> AlgebraMorphism:
    """``id_D (x) f``."""
    ID = T.tangentoid.identity
    return AlgebraMorphism(T.apply(f.source), T.apply(f.target), ID.kron(f.matrix), check=False)


def dual_extension(A: Algebra) -> Algebra:
    """``A (+) A e`` with ``e^2 = 0``, built directly on two copies of the carrier."""
    S = module_direct_sum(A.carrier, A.carrier)
    g = A.ngens
    zero = (0,) * g
    table = []
    for i in range(2 * g):
        row = []
        for j in range(2 * g):
            a, b = i % g, j % g
            prod = tuple(A.table[a][b])
            if i < g and j < g:
                row.append(prod + zero)
            elif i >= g and j >= g:
                row.append(zero + zero)
            else:
                row.append(zero + prod)
        table.append(row)
    unit = tuple(A.unit) + zero
    return Algebra(S, table, unit=unit, check=False)


def dual_extension_comparison(T: TangentStructureInstance, A: Algebra):
    """Certified isomorphism ``R[e] (x) A -> A (+) A e`` (None when it fails)."""
    D = T.D
    if D.ngens != 2:
        return None
    src = T.apply(A)
    tgt = dual_extension(A)
    g = A.ngens
    # 1 (x) a -> (a, 0), e (x) a -> (0, a)
    F = Matrix.identity(A.ring, 2 * g)
    f = AlgebraMorphism(src, tgt, F, check=False)
    if not morphism_laws(f).passed:
        return None
    inv = is_isomorphism(f.underlying)
    return None if inv is None else f


@dataclass
class NaturalityEntry:
    morphism: int
    component: str
    passed: bool
    counterexample: Optional[dict] = None


@dataclass
class NaturalityReport:
    entries: List[NaturalityEntry] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def failures(self):
        return [e for e in self.entries if not e.passed]


def naturality_check(T: TangentStructureInstance, morphisms) -> NaturalityReport:
    """Squares for ``p, z, s, l, n`` against each ``f: A -> B``, using the cached components."""
    tg = T.tangentoid
    D = tg.module
    report = NaturalityReport()
    for idx, f in enumerate(morphisms):
        A, B = f.source, f.target
        cA, cB = T.components(A), T.components(B)
        F = f.matrix
        ID = tg.identity
        TF = ID.kron(F)
        DB = module_tensor(D, B.carrier)
        DDB = module_tensor(tg.square, B.carrier)
        D2 = tg.fiber(2).module
        checks = [
            ("p", cB.p @ TF, F @ cA.p, B.carrier),
            ("z", TF @ cA.z, cB.z @ F, DB),
            ("s", cB.s @ D2.identity_matrix().kron(F), TF @ cA.s, DB),
            ("l", cB.l @ TF, tg.square.identity_matrix().kron(F) @ cA.l, DDB),
            ("n", cB.n @ TF, TF @ cA.n, DB),
        ]
        for name, lhs, rhs, target in checks:
            cex = _difference(lhs, rhs, target)
            report.entries.append(NaturalityEntry(idx, name, cex is None, cex))
    return report


# ---------------------------------------------------------------------------
# hom-set adjunction
# ---------------------------------------------------------------------------

def _require_finite(*algebras):
    for A in algebras:
        if not A.ring.is_finite:
            raise InfiniteEnumeration(f"hom-set enumeration over {A.ring} is infinite")
        if not A.carrier.is_finite:
            raise InfiniteEnumeration("hom-set enumeration needs finite carriers")


def coefficient_module(K: FPModule, B: Algebra) -> AModule:
    """``K (x) B`` as a B-module through the right factor."""
    carrier = module_tensor(K, B.carrier)
    IK = K.identity_matrix()
    action = [IK.kron(B.left_action(B.basis(i))) for i in range(B.ngens)]
    return AModule(B, carrier, action, check=False)


@dataclass
class AdjunctionReport:
    left: int
    right: int
    injective: bool
    surjective: bool
    bijection: List[tuple]

    @property
    def passed(self) -> bool:
        return self.injective and self.surjective and self.left == self.right


def adjunction_check(T: TangentStructureInstance, A: Algebra, B: Algebra) -> AdjunctionReport:
    """``Hom(A, D (x) B)`` against pairs ``(phi, delta)`` with ``delta`` a derivation into ``M (x) B``."""
    tg = T.tangentoid
    _require_finite(A, B)
    if not is_coexponentiable(tg):
        raise NotCoexponentiable("ker p is not finitely generated projective")
    DB = T.apply(B)
    left = hom_enumerate(A, DB)

    K, iota = tg.kernel
    ret = factor_through(ModuleMorphism(tg.module, tg.module, tg.identity - tg.z @ tg.p, check=False), iota)
    N = coefficient_module(K, B)
    IB = B.carrier.identity_matrix()
    pB = tg.p.kron(IB)
    mB = ret.matrix.kron(IB)

    right_keys = []
    for phi in hom_enumerate(A, B):
        space = derivations(A, phi, N)
        for delta in space.elements():
            right_keys.append((phi.key(), tuple(N.carrier.key(c) for c in delta.matrix.columns())))
    index = {k: i for i, k in enumerate(right_keys)}

    images = []
    for psi in left:
        phi_m = pB @ psi.matrix
        d_m = mB @ psi.matrix
        k = (tuple(B.carrier.key(c) for c in phi_m.columns()),
             tuple(N.carrier.key(c) for c in d_m.columns()))
        images.append(index.get(k))
    hit = [i for i in images if i is not None]
    injective = len(set(hit)) == len(hit) and None not in images
    surjective = set(hit) == set(range(len(right_keys)))
    return AdjunctionReport(len(left), len(right_keys), injective, surjective,
                            [(i, j) for i, j in enumerate(images)])


def amodule_homs(src: AModule, tgt: AModule):
    """``Hom_A(src, tgt)`` as ``(K, inclusion)``; an element of ``K`` maps to a column-stacked matrix."""
    ring = src.ring
    A = src.base
    gs, gt = src.carrier.ngens, tgt.carrier.ngens
    rels = src.carrier.relations.columns()
    blocks = len(rels) + gs * A.ngens
    source = module_direct_sum(*([tgt.carrier] * gs)) if gs else FPModule.zero(ring)
    target = module_direct_sum(*([tgt.carrier] * blocks)) if blocks else FPModule.zero(ring)
    rows = [[ring.zero] * (gs * gt) for _ in range(blocks * gt)]

    def add(block, col_block, mat: Matrix):
        for t in range(gt):
            for u in range(gt):
                x = mat[t, u]
                if x != ring.zero:
                    r = rows[block * gt + t]
                    r[col_block * gt + u] = ring.add(r[col_block * gt + u], x)

    I = Matrix.identity(ring, gt)
    for b, r in enumerate(rels):
        for a in range(gs):
            if r[a] != ring.zero:
                add(b, a, I.scale(r[a]))
    for ai in range(A.ngens):
        act_s = src.action[ai]
        act_t = tgt.action[ai]
        for j in range(gs):
            b = len(rels) + ai * gs + j
            # h(a . e_j) - a . h(e_j)
            for k in range(gs):
                c = act_s[k, j]
                if c != ring.zero:
                    add(b, k, I.scale(c))
            add(b, j, -act_t)
    L = ModuleMorphism(source, target, Matrix(ring, rows, gs * gt, canon=False), check=False)
    return kernel(L)


def kaehler_adjoint_hom(A: Algebra, B: Algebra) -> list:
    """Pairs ``(phi, h)`` with ``h: Omega_A -> B_phi`` A-linear."""
    _require_finite(A, B)
    om = kaehler(A)
    out = []
    for phi in hom_enumerate(A, B):
        Bphi = AModule.regular(B).restrict(phi)
        K, inc = amodule_homs(om.omega, Bphi)
        gt = B.ngens
        for x in K.elements():
            v = inc(x)
            cols = [v[j * gt:(j + 1) * gt] for j in range(om.module.ngens)]
            h = (Matrix.from_columns(B.ring, cols, gt) if cols else Matrix.zeros(B.ring, gt, 0))
            out.append((phi, h))
    return out


@dataclass
class FormalTangentAlgebra:
    """The left adjoint applied to ``A``, held as ``(Omega_A, M)`` and never materialized.

    Morphisms out of it into ``B`` are the pairs ``(phi, delta)`` with ``delta``
    a ``phi``-derivation ``A -> M (x) B``.
    """

    base: Algebra
    omega: AModule
    module: FPModule

    @classmethod
    def of(cls, T: TangentStructureInstance, A: Algebra) -> "FormalTangentAlgebra":
        K, _ = T.tangentoid.kernel
        return cls(A, kaehler(A).omega, K)

    def hom_pairs(self, B: Algebra) -> list:
        _require_finite(self.base, B)
        N = coefficient_module(self.module, B)
        out = []
        for phi in hom_enumerate(self.base, B):
            out.extend((phi, d) for d in derivations(self.base, phi, N).elements())
        return out

    def hom_count(self, B: Algebra) -> int:
        return len(self.hom_pairs(B))


def kaehler_universality(A: Algebra, N: AModule, omega=None) -> bool:
    """``h -> h d`` is an isomorphism ``Hom_A(Omega, N) -> Der(A, N)``."""
    om = omega or kaehler(A)
    ring = A.ring
    g, go, n = A.ngens, om.module.ngens, N.carrier.ngens
    H, h_inc = amodule_homs(om.omega, N)
    space = derivations(A, A.identity(), N)
    d = om.d.matrix
    rows = [[ring.zero] * (go * n) for _ in range(g * n)]
    for a in range(g):
        for k in range(go):
            c = d[k, a]
            if c != ring.zero:
                for t in range(n):
                    rows[a * n + t][k * n + t] = c
    L = Matrix(ring, rows, go * n, canon=False) if rows else Matrix.zeros(ring, 0, go * n)
    comp = ModuleMorphism(H, space.inclusion.target, L @ h_inc.matrix, check=False)
    f = factor_through(comp, space.inclusion)
    if f is None:
        return False
    return is_isomorphism(f) is not None
