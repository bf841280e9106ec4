"""Commutative algebras with finitely presented carriers.

An algebra is a carrier module together with a structure-constant table:
``table[i][j]`` is the coordinate vector of ``e_i * e_j``.  The unit is an
optional coordinate vector; without one the algebra is non-unital.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from .errors import InfiniteEnumeration, MixedRings, NonUnital, NotWellDefined, ShapeMismatch
from .matrix import Matrix
from .modules import (
    DirectSum,
    FPModule,
    ModuleMorphism,
    TensorModule,
    is_isomorphism,
    kernel,
    module_direct_sum,
    module_tensor,
)
from .rings import BaseRing


@dataclass
class LawResult:
    name: str
    passed: bool
    witness: Optional[tuple] = None

    def as_dict(self):
        return {"name": self.name, "status": "pass" if self.passed else "fail", "witness": self.witness}


@dataclass
class LawReport:
    entries: List[LawResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def __getitem__(self, name) -> LawResult:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def failures(self):
        return [e for e in self.entries if not e.passed]


class Algebra:
    """Commutative (possibly non-unital) algebra given by a multiplication table."""

    def __init__(self, carrier: FPModule, table, unit=None, check: bool = True, names=None):
        g = carrier.ngens
        ring = carrier.ring
        table = [[tuple(ring.canon(x) for x in v) for v in row] for row in table]
        if len(table) != g or any(len(row) != g for row in table) or any(
                len(v) != g for row in table for v in row):
            raise ShapeMismatch(f"multiplication table must be {g} x {g} vectors of length {g}")
        self.carrier = carrier
        self.table = table
        self.unit = None if unit is None else tuple(ring.canon(x) for x in unit)
        if self.unit is not None and len(self.unit) != g:
            raise ShapeMismatch("unit vector has the wrong length")
        self.names = list(names) if names else None
        columns = [table[i][j] for i in range(g) for j in range(g)]
        self.square = module_tensor(carrier, carrier)
        self.mult = ModuleMorphism(self.square, carrier, Matrix.from_columns(ring, columns, g), check=check)

    @property
    def ring(self) -> BaseRing:
        return self.carrier.ring

    @property
    def ngens(self) -> int:
        return self.carrier.ngens

    @property
    def is_unital(self) -> bool:
        return self.unit is not None

    def mul(self, a, b) -> tuple:
        # bilinear sum over the table, skipping zero coordinates
        ring = self.ring
        zero, add, rmul = ring.zero, ring.add, ring.mul
        a = [ring.canon(x) for x in a]
        b = [ring.canon(x) for x in b]
        out = [zero] * self.ngens
        for i, x in enumerate(a):
            if x == zero:
                continue
            row = self.table[i]
            for j, y in enumerate(b):
                if y == zero:
                    continue
                c = rmul(x, y)
                if c == zero:
                    continue
                for k, t in enumerate(row[j]):
                    if t != zero:
                        out[k] = add(out[k], rmul(c, t))
        return tuple(out)

    def basis(self, i) -> tuple:
        return self.carrier.basis_vector(i)

    def require_unit(self):
        if self.unit is None:
            raise NonUnital("operation needs a unital algebra")
        return self.unit

    def left_action(self, a) -> Matrix:
        """Matrix of ``x -> a x`` on the carrier."""
        cols = [self.mul(a, self.basis(j)) for j in range(self.ngens)]
        return Matrix.from_columns(self.ring, cols, self.ngens) if cols else Matrix.zeros(self.ring, 0, 0)

    def unit_morphism(self) -> "AlgebraMorphism":
        R = trivial_algebra(self.ring)
        return AlgebraMorphism(R, self, Matrix.from_columns(self.ring, [self.require_unit()], self.ngens),
                               check=False)

    def identity(self) -> "AlgebraMorphism":
        return AlgebraMorphism(self, self, self.carrier.identity_matrix(), check=False)

    def __repr__(self):
        return f"Algebra({self.ring}, ngens={self.ngens}, unit={self.unit})"


def algebra_check(A: Algebra) -> LawReport:
    """Commutativity, associativity and (when present) the unit law, with witnesses."""
    report = LawReport()
    g = A.ngens
    M = A.carrier
    e = [A.basis(i) for i in range(g)]
    report.entries.append(LawResult("well_defined", A.mult.certificate is not None))
    bad = None
    for i in range(g):
        for j in range(i + 1, g):
            if M.key(A.table[i][j]) != M.key(A.table[j][i]):
                bad = (i, j)
                break
        if bad:
            break
    report.entries.append(LawResult("commutativity", bad is None, bad))
    bad = None
    for i, j, k in itertools.product(range(g), repeat=3):
        if M.key(A.mul(A.table[i][j], e[k])) != M.key(A.mul(e[i], A.table[j][k])):
            bad = (i, j, k)
            break
    report.entries.append(LawResult("associativity", bad is None, bad))
    if A.unit is not None:
        bad = None
        for i in range(g):
            if M.key(A.mul(A.unit, e[i])) != M.key(e[i]):
                bad = (i,)
                break
        report.entries.append(LawResult("unit", bad is None, bad))
    return report


class AlgebraMorphism:
    """A module morphism between algebras that is multiplicative (and unital)."""

    def __init__(self, source: Algebra, target: Algebra, matrix: Matrix, check: bool = True):
        self.source = source
        self.target = target
        self.underlying = ModuleMorphism(source.carrier, target.carrier, matrix, check=check)
        if check:
            report = morphism_laws(self)
            if not report.passed:
                raise NotWellDefined(f"not an algebra morphism: {report.failures()[0]}")

    @property
    def matrix(self) -> Matrix:
        return self.underlying.matrix

    @property
    def ring(self):
        return self.source.ring

    def __call__(self, v):
        return self.underlying(v)

    def __matmul__(self, other: "AlgebraMorphism") -> "AlgebraMorphism":
        return AlgebraMorphism(other.source, self.target, self.matrix @ other.matrix, check=False)

    def key(self):
        """Canonical images of the source generators."""
        return tuple(self.target.carrier.key(c) for c in self.matrix.columns())

    def __repr__(self):
        return f"AlgebraMorphism({self.matrix.tolist()})"


def morphism_laws(f: AlgebraMorphism) -> LawReport:
    """Well-definedness, multiplicativity and unitality with generator witnesses."""
    A, B = f.source, f.target
    report = LawReport()
    report.entries.append(LawResult("well_defined", f.underlying.certificate is not None))
    imgs = list(f.matrix.columns())
    bad = None
    for i in range(A.ngens):
        for j in range(i, A.ngens):
            if not B.carrier.is_zero_vector(_sub(B, f(A.table[i][j]), B.mul(imgs[i], imgs[j]))):
                bad = (i, j)
                break
        if bad:
            break
    report.entries.append(LawResult("multiplicative", bad is None, bad))
    if A.unit is not None and B.unit is not None:
        ok = B.carrier.is_zero_vector(_sub(B, f(A.unit), B.unit))
        report.entries.append(LawResult("unital", ok, None if ok else A.unit))
    return report


def _sub(A: Algebra, a, b):
    sub = A.ring.sub
    return tuple(sub(x, y) for x, y in zip(a, b))


def is_algebra_morphism(f: AlgebraMorphism) -> bool:
    return morphism_laws(f).passed


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def trivial_algebra(ring: BaseRing) -> Algebra:
    """``R`` itself."""
    return Algebra(FPModule.free(ring, 1), [[(1,)]], unit=(1,), check=False, names=["1"])


def zero_algebra(ring: BaseRing) -> Algebra:
    return Algebra(FPModule.zero(ring), [], unit=(), check=False)


def dual_numbers(ring: BaseRing, name: str = "e") -> Algebra:
    """``R[e]/(e^2)`` on the basis ``(1, e)``."""
    return Algebra(FPModule.free(ring, 2), [[(1, 0), (0, 1)], [(0, 1), (0, 0)]], unit=(1, 0),
                   check=False, names=["1", name])


def monic_quotient(ring: BaseRing, coefficients: Sequence, name: str = "x") -> Algebra:
    """``R[x]/(x^d + c_{d-1} x^{d-1} + ... + c_0)`` on the basis ``1, x, ..., x^{d-1}``.

    ``coefficients`` lists ``c_0, ..., c_{d-1}``.
    """
    d = len(coefficients)
    if d == 0:
        return zero_algebra(ring)
    # x^k for k < 2d - 1 reduced to the basis
    powers = []
    for k in range(2 * d - 1):
        if k < d:
            powers.append([1 if t == k else 0 for t in range(d)])
        else:
            prev = powers[k - 1]
            top = prev[d - 1]
            shifted = [0] + prev[:d - 1]
            powers.append([shifted[t] - top * coefficients[t] for t in range(d)])
    table = [[tuple(powers[i + j]) for j in range(d)] for i in range(d)]
    names = ["1"] + [name if k == 1 else f"{name}^{k}" for k in range(1, d)]
    return Algebra(FPModule.free(ring, d), table, unit=tuple(powers[0]), check=False, names=names)


def cyclic_algebra(ring: BaseRing, d) -> Algebra:
    """The quotient ring ``R/(d)``."""
    return Algebra(FPModule.cyclic(ring, d), [[(1,)]], unit=(1,), check=False, names=["1"])


def algebra_product(A: Algebra, B: Algebra) -> Algebra:
    """Direct product ``A x B`` with componentwise multiplication."""
    if A.ring != B.ring:
        raise MixedRings(f"{A.ring} vs {B.ring}")
    S = module_direct_sum(A.carrier, B.carrier)
    ga, gb = A.ngens, B.ngens
    zb = (0,) * gb
    za = (0,) * ga
    table = []
    for i in range(ga + gb):
        row = []
        for j in range(ga + gb):
            if i < ga and j < ga:
                row.append(tuple(A.table[i][j]) + zb)
            elif i >= ga and j >= ga:
                row.append(za + tuple(B.table[i - ga][j - ga]))
            else:
                row.append(za + zb)
        table.append(row)
    unit = None
    if A.unit is not None and B.unit is not None:
        unit = tuple(A.unit) + tuple(B.unit)
    names = None
    if A.names and B.names:
        names = [f"({n},0)" for n in A.names] + [f"(0,{n})" for n in B.names]
    out = Algebra(S, table, unit=unit, check=False, names=names)
    out.summands = S
    return out


def semidirect(ring: BaseRing, M) -> Algebra:
    """Square-zero extension ``R x| M`` on ``R (+) M``: ``(a+m)(b+n) = ab + a n + b m``.

    ``M`` may be a module or a non-unital algebra; its own product is ignored.
    """
    if isinstance(M, Algebra):
        names = M.names
        M = M.carrier
    else:
        names = None
    if M.ring != ring:
        raise MixedRings(f"{M.ring} vs {ring}")
    g = M.ngens + 1
    rel = Matrix.zeros(ring, 1, 0).block_diag(M.relations)
    carrier = FPModule(ring, g, rel)

    def e(k):
        return tuple(1 if t == k else 0 for t in range(g))

    zero = (0,) * g
    table = [[zero] * g for _ in range(g)]
    for j in range(g):
        table[0][j] = e(j)
        table[j][0] = e(j)
    if names is None:
        names = ["m"] if M.ngens == 1 else [f"m{i + 1}" for i in range(M.ngens)]
    return Algebra(carrier, table, unit=e(0), check=False, names=["1"] + list(names))


def subalgebra(ambient: Algebra, K: FPModule, inclusion: Matrix) -> tuple:
    """Algebra structure on ``K`` making ``inclusion: K -> ambient`` an algebra morphism.

    Returns ``(algebra, morphism)``; raises NotWellDefined when ``K`` is not
    closed under the products or does not contain the unit.
    """
    amb = ambient.carrier
    g = K.ngens
    cols = inclusion.columns()
    prods = []
    for i in range(g):
        for j in range(g):
            prods.append(ambient.mul(cols[i], cols[j]))
    wanted = list(prods)
    if ambient.unit is not None:
        wanted.append(ambient.unit)
    if wanted:
        X = amb.solve(inclusion, Matrix.from_columns(ambient.ring, wanted, amb.ngens))
        if X is None:
            raise NotWellDefined("submodule is not a subalgebra")
        xcols = X.columns()
    else:
        xcols = []
    table = [[xcols[i * g + j] for j in range(g)] for i in range(g)]
    unit = xcols[-1] if ambient.unit is not None else None
    A = Algebra(K, table, unit=unit, check=False)
    return A, AlgebraMorphism(A, ambient, inclusion, check=False)


class TensorAlgebra(Algebra):
    """``A (x) B`` with its coprojections ``a -> a (x) 1`` and ``b -> 1 (x) b``."""

    def __init__(self, A: Algebra, B: Algebra):
        if A.ring != B.ring:
            raise MixedRings(f"{A.ring} vs {B.ring}")
        if A.unit is None or B.unit is None:
            raise NonUnital("tensor product of algebras needs units")
        carrier = module_tensor(A.carrier, B.carrier)
        ga, gb = A.ngens, B.ngens
        table = []
        for i, j in itertools.product(range(ga), range(gb)):
            row = []
            for k, l in itertools.product(range(ga), range(gb)):
                row.append(carrier.pair(A.table[i][k], B.table[j][l]))
            table.append(row)
        names = None
        if A.names and B.names:
            names = [f"{a}*{b}" for a in A.names for b in B.names]
        super().__init__(carrier, table, unit=carrier.pair(A.unit, B.unit), check=False, names=names)
        self.left = A
        self.right = B

    @property
    def coprojections(self):
        ring = self.ring
        ia = Matrix.from_columns(ring, [self.carrier.pair(A_e, self.right.unit)
                                        for A_e in (self.left.basis(i) for i in range(self.left.ngens))],
                                 self.ngens) if self.left.ngens else Matrix.zeros(ring, self.ngens, 0)
        ib = Matrix.from_columns(ring, [self.carrier.pair(self.left.unit, B_e)
                                        for B_e in (self.right.basis(i) for i in range(self.right.ngens))],
                                 self.ngens) if self.right.ngens else Matrix.zeros(ring, self.ngens, 0)
        return (AlgebraMorphism(self.left, self, ia, check=False),
                AlgebraMorphism(self.right, self, ib, check=False))


def algebra_tensor(A: Algebra, B: Algebra) -> TensorAlgebra:
    return TensorAlgebra(A, B)


def tensor_algebra_morphisms(f: AlgebraMorphism, g: AlgebraMorphism, source=None, target=None) -> AlgebraMorphism:
    source = source or algebra_tensor(f.source, g.source)
    target = target or algebra_tensor(f.target, g.target)
    return AlgebraMorphism(source, target, f.matrix.kron(g.matrix), check=False)


@dataclass
class AlgebraPullback:
    """``A x_C B`` with its two projections."""

    algebra: Algebra
    projections: tuple
    inclusion: AlgebraMorphism
    product: Algebra

    def pair(self, f: AlgebraMorphism, g: AlgebraMorphism) -> Optional[AlgebraMorphism]:
        """The induced morphism ``<f, g>`` into the pullback, or None if it does not exist."""
        stacked = f.matrix.vstack(g.matrix)
        X = self.product.carrier.solve(self.inclusion.matrix, stacked)
        if X is None:
            return None
        return AlgebraMorphism(f.source, self.algebra, X, check=False)


def algebra_pullback(f: AlgebraMorphism, g: AlgebraMorphism) -> AlgebraPullback:
    """Fiber product of ``f: A -> C`` and ``g: B -> C`` as a subalgebra of ``A x B``."""
    if f.target.carrier != g.target.carrier or f.ring != g.ring:
        raise MixedRings("pullback needs a common target")
    A, B = f.source, g.source
    P = algebra_product(A, B)
    diff = ModuleMorphism(P.carrier, f.target.carrier, f.matrix.hstack(-g.matrix), check=False)
    K, incl = kernel(diff)
    alg, inc = subalgebra(P, K, incl.matrix)
    S: DirectSum = P.summands
    pa = AlgebraMorphism(alg, A, S.projection(0).matrix @ incl.matrix, check=False)
    pb = AlgebraMorphism(alg, B, S.projection(1).matrix @ incl.matrix, check=False)
    return AlgebraPullback(alg, (pa, pb), inc, P)


# ---------------------------------------------------------------------------
# hom-sets
# ---------------------------------------------------------------------------

def algebra_generators(A: Algebra):
    """Greedy algebra generating set plus the data expressing carrier generators.

    Returns ``(gens, words, coefficients)``: ``gens`` are carrier-generator
    indices, ``words`` are tuples of indices into ``gens`` (monomials, the empty
    word being the unit), and ``coefficients`` is a ``len(words) x ngens``
    matrix with ``e_i = sum_w coefficients[w][i] * word_w``.
    """
    A.require_unit()
    M = A.carrier
    ring = A.ring
    gens: list = []
    words = [()]
    vecs = [A.unit]

    def in_span(v):
        W = Matrix.from_columns(ring, vecs, M.ngens)
        return M.solve(W, Matrix.from_columns(ring, [v], M.ngens)) is not None

    def close():
        changed = True
        while changed:
            changed = False
            for w, v in list(zip(words, vecs)):
                for gi, gidx in enumerate(gens):
                    prod = A.mul(v, A.basis(gidx))
                    if not in_span(prod):
                        words.append(tuple(sorted(w + (gi,))))
                        vecs.append(prod)
                        changed = True

    for i in range(M.ngens):
        if M.is_zero_vector(A.basis(i)) or in_span(A.basis(i)):
            continue
        gens.append(i)
        words.append((len(gens) - 1,))
        vecs.append(A.basis(i))
        close()
    W = Matrix.from_columns(ring, vecs, M.ngens)
    C = M.solve(W, M.identity_matrix()) if M.ngens else Matrix.zeros(ring, len(vecs), 0)
    if C is None:
        raise NotWellDefined("algebra generators do not span the carrier")
    return gens, words, C


def hom_enumerate(A: Algebra, B: Algebra, limit: Optional[int] = None) -> List[AlgebraMorphism]:
    """All unital algebra morphisms ``A -> B``, ordered by their generator images.

    Only the target needs to be finite: ``A`` is finitely generated, so the
    candidates are the assignments of its algebra generators to elements of ``B``.
    """
    if A.ring != B.ring:
        raise MixedRings(f"{A.ring} vs {B.ring}")
    A.require_unit()
    B.require_unit()
    if not B.carrier.is_finite:
        raise InfiniteEnumeration("hom-set enumeration needs a finite target")
    gens, words, C = algebra_generators(A)
    elements = list(B.carrier.elements())
    if limit is not None and len(elements) ** len(gens) > limit:
        from .errors import BudgetExceeded
        raise BudgetExceeded(f"{len(elements)}^{len(gens)} candidates exceed the budget {limit}")
    ring = A.ring
    gB = B.ngens
    found = {}
    for images in itertools.product(elements, repeat=len(gens)):
        word_vals = []
        for w in words:
            v = B.unit
            for gi in w:
                v = B.mul(v, images[gi])
            word_vals.append(v)
        Wm = Matrix.from_columns(ring, word_vals, gB) if gB else Matrix.zeros(ring, 0, len(word_vals))
        F = Wm @ C
        f = AlgebraMorphism(A, B, F, check=False)
        if f.underlying.certificate is None or not morphism_laws(f).passed:
            continue
        k = f.key()
        if k not in found:
            found[k] = AlgebraMorphism(A, B, Matrix.from_columns(
                ring, [B.carrier.reduce(c) for c in F.columns()], gB) if gB else F, check=False)
    return [found[k] for k in sorted(found)]


# ---------------------------------------------------------------------------
# modules over algebras, derivations, Kaehler differentials
# ---------------------------------------------------------------------------

class AModule:
    """An R-module with an action of each generator of the algebra ``base``."""

    def __init__(self, base: Algebra, carrier: FPModule, action: Sequence[Matrix], check: bool = True):
        if len(action) != base.ngens:
            raise ShapeMismatch("one action matrix per algebra generator is required")
        self.base = base
        self.carrier = carrier
        self.action = list(action)
        if check:
            bad = module_laws(self)
            if bad is not None:
                raise NotWellDefined(f"action law {bad[0]} fails at {bad[1]}")

    @property
    def ring(self):
        return self.carrier.ring

    def act_matrix(self, a) -> Matrix:
        """Matrix of multiplication by the algebra element ``a``."""
        out = Matrix.zeros(self.ring, self.carrier.ngens, self.carrier.ngens)
        for c, m in zip(a, self.action):
            if c != self.ring.zero:
                out = out + m.scale(c)
        return out

    def act(self, a, v) -> tuple:
        return self.act_matrix(a).apply(v)

    @classmethod
    def regular(cls, A: Algebra) -> "AModule":
        return cls(A, A.carrier, [A.left_action(A.basis(i)) for i in range(A.ngens)], check=False)

    def restrict(self, phi: AlgebraMorphism) -> "AModule":
        """Restriction of scalars along ``phi: A -> base``."""
        return AModule(phi.source, self.carrier,
                       [self.act_matrix(phi(phi.source.basis(i))) for i in range(phi.source.ngens)],
                       check=False)


def module_laws(N: AModule):
    """First failing action law as ``(name, witness)``, or None."""
    A = N.base
    M = N.carrier
    for m in N.action:
        if ModuleMorphism(M, M, m, check=False).certificate is None:
            return ("well_defined", None)
    zero = ModuleMorphism.zero(M, M)
    for r in A.carrier.relations.columns():
        if not all(M.is_zero_vector(c) for c in N.act_matrix(r).columns()):
            return ("relations", r)
    for i in range(A.ngens):
        for j in range(A.ngens):
            lhs = N.action[i] @ N.action[j]
            rhs = N.act_matrix(A.table[i][j])
            if not all(M.is_zero_vector(c) for c in (lhs - rhs).columns()):
                return ("multiplication", (i, j))
    if A.unit is not None:
        diff = N.act_matrix(A.unit) - M.identity_matrix()
        if not all(M.is_zero_vector(c) for c in diff.columns()):
            return ("unit", None)
    del zero
    return None


@dataclass
class Derivation:
    """R-linear ``delta: A -> N`` satisfying Leibniz over ``phi: A -> B`` (``N`` a B-module)."""

    phi: AlgebraMorphism
    module: AModule
    matrix: Matrix

    def __call__(self, v):
        return self.matrix.apply(v)

    def leibniz_failure(self):
        A = self.phi.source
        N = self.module
        M = N.carrier
        if ModuleMorphism(A.carrier, M, self.matrix, check=False).certificate is None:
            return ("well_defined", None)
        for i in range(A.ngens):
            for j in range(i, A.ngens):
                lhs = self(A.table[i][j])
                a = N.act(self.phi(A.basis(i)), self(A.basis(j)))
                b = N.act(self.phi(A.basis(j)), self(A.basis(i)))
                diff = tuple(M.ring.sub(x, M.ring.add(y, z)) for x, y, z in zip(lhs, a, b))
                if not M.is_zero_vector(diff):
                    return ("leibniz", (i, j))
        return None

    @property
    def is_valid(self) -> bool:
        return self.leibniz_failure() is None


@dataclass
class DerivationSpace:
    """The solution module of the Leibniz system with its embedding into ``N^g``."""

    module: FPModule
    inclusion: ModuleMorphism
    phi: AlgebraMorphism
    target: AModule

    @property
    def cardinality(self):
        return self.module.cardinality

    def derivation(self, element) -> Derivation:
        v = self.inclusion(element)
        g = self.phi.source.ngens
        n = self.target.carrier.ngens
        cols = [v[a * n:(a + 1) * n] for a in range(g)]
        M = Matrix.from_columns(self.module.ring, cols, n) if cols else Matrix.zeros(self.module.ring, n, 0)
        return Derivation(self.phi, self.target, M)

    def elements(self):
        for x in self.module.elements():
            yield self.derivation(x)


def derivations(A: Algebra, phi: AlgebraMorphism, N: AModule) -> DerivationSpace:
    """Derivations ``A -> N`` over ``phi``, as the kernel of the linear Leibniz map."""
    ring = A.ring
    if phi.source is not A and phi.source.carrier != A.carrier:
        raise MixedRings("phi must start at A")
    g = A.ngens
    n = N.carrier.ngens
    rels = A.carrier.relations.columns()
    src = module_direct_sum(*([N.carrier] * g)) if g else FPModule.zero(ring)
    blocks = len(rels) + g * g
    tgt = module_direct_sum(*([N.carrier] * blocks)) if blocks else FPModule.zero(ring)
    rows = [[ring.zero] * (g * n) for _ in range(blocks * n)]
    I = Matrix.identity(ring, n)

    def add_block(block, a, mat: Matrix):
        for t in range(n):
            for u in range(n):
                x = mat[t, u]
                if x != ring.zero:
                    r = rows[block * n + t]
                    r[a * n + u] = ring.add(r[a * n + u], x)

    for b, r in enumerate(rels):
        for a in range(g):
            if r[a] != ring.zero:
                add_block(b, a, I.scale(r[a]))
    acts = [N.act_matrix(phi(A.basis(i))) for i in range(g)]
    for i in range(g):
        for j in range(g):
            b = len(rels) + i * g + j
            prod = A.table[i][j]
            for a in range(g):
                if prod[a] != ring.zero:
                    add_block(b, a, I.scale(prod[a]))
            add_block(b, j, -acts[i])
            add_block(b, i, -acts[j])
    L = ModuleMorphism(src, tgt, Matrix(ring, rows, g * n, canon=False), check=False)
    K, incl = kernel(L)
    return DerivationSpace(K, incl, phi, N)


@dataclass
class Kaehler:
    """``Omega_{A/R}`` with the universal derivation ``d``.

    Generator ``k * g + i`` of the carrier stands for ``e_k d(e_i)``.
    """

    omega: AModule
    d: Derivation

    @property
    def module(self) -> FPModule:
        return self.omega.carrier


def kaehler(A: Algebra) -> Kaehler:
    u = A.require_unit()
    ring = A.ring
    g = A.ngens
    P = A.carrier.relations
    Ig = Matrix.identity(ring, g)
    columns = list(P.kron(Ig).columns()) + list(Ig.kron(P).columns())
    # A-multiples of the Leibniz relations d(e_i e_j) - e_i de_j - e_j de_i
    for k in range(g):
        for i in range(g):
            for j in range(i, g):
                v = [ring.zero] * (g * g)

                def acc(idx, c):
                    v[idx] = ring.add(v[idx], c)

                for t, c in enumerate(A.table[i][j]):
                    if c != ring.zero:
                        acc(k * g + t, c)
                for t, c in enumerate(A.table[k][i]):
                    if c != ring.zero:
                        acc(t * g + j, ring.neg(c))
                for t, c in enumerate(A.table[k][j]):
                    if c != ring.zero:
                        acc(t * g + i, ring.neg(c))
                columns.append(tuple(v))
    carrier = FPModule.from_relation_vectors(ring, g * g, columns)
    action = [A.left_action(A.basis(a)).kron(Ig) for a in range(g)]
    omega = AModule(A, carrier, action, check=False)
    dcols = []
    for i in range(g):
        col = [ring.zero] * (g * g)
        for k, c in enumerate(u):
            col[k * g + i] = c
        dcols.append(tuple(col))
    dm = Matrix.from_columns(ring, dcols, g * g) if g else Matrix.zeros(ring, 0, 0)
    return Kaehler(omega, Derivation(A.identity(), omega, dm))


@dataclass
class KaehlerOracle:
    """``I / I^2`` for ``I = ker(A (x) A -> A)`` and the comparison map from ``Omega``."""

    module: FPModule
    comparison: ModuleMorphism
    inverse: Optional[ModuleMorphism]

    @property
    def agrees(self) -> bool:
        return self.inverse is not None


def kaehler_oracle(A: Algebra, omega: Optional[Kaehler] = None) -> KaehlerOracle:
    """Independent ``I/I^2`` construction, compared with the table-based ``Omega``."""
    ring = A.ring
    g = A.ngens
    AA = algebra_tensor(A, A)
    mu = ModuleMorphism(AA.carrier, A.carrier, A.mult.matrix, check=False)
    K, incl = kernel(mu)
    cols = incl.matrix.columns()
    prods = [AA.mul(a, b) for a, b in itertools.combinations_with_replacement(cols, 2)]
    extra = []
    if prods and K.ngens:
        X = AA.carrier.solve(incl.matrix, Matrix.from_columns(ring, prods, AA.ngens))
        if X is None:
            raise NotWellDefined("I^2 not contained in I")
        extra = X.columns()
    rel = K.relations
    if extra:
        rel = rel.hstack(Matrix.from_columns(ring, extra, K.ngens))
    Q = FPModule(ring, K.ngens, rel)
    omega = omega or kaehler(A)
    # e_k de_i -> e_k (x) e_i - e_k e_i (x) 1
    images = []
    for k in range(g):
        for i in range(g):
            a = AA.carrier.pair(A.basis(k), A.basis(i))
            b = AA.carrier.pair(A.table[k][i], A.unit)
            images.append(tuple(ring.sub(x, y) for x, y in zip(a, b)))
    if images and K.ngens:
        Y = AA.carrier.solve(incl.matrix, Matrix.from_columns(ring, images, AA.ngens))
        if Y is None:
            raise NotWellDefined("comparison images do not lie in I")
    else:
        Y = Matrix.zeros(ring, K.ngens, g * g)
    comp = ModuleMorphism(omega.module, Q, Y, check=False)
    inv = is_isomorphism(comp) if comp.certificate is not None else None
    return KaehlerOracle(Q, comp, inv)
