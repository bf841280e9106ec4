"""Finitely presented modules over the supported base rings.

A module is ``R^g / span(columns of P)`` where ``P`` is a ``g x r`` relation
matrix.  All normal-form work happens factor by factor: a module over a
product ring is split by the standard idempotents, and modules over ``Z/n``
are lifted to ``Z`` with ``n * I`` appended to the relations.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, List, Optional, Sequence

from . import smith as _smith
from .errors import MixedRings, NotWellDefined, ShapeMismatch, UnsupportedRing
from .matrix import Matrix
from .rings import BaseRing, Integers, Modular, Product, Rationals


# ---------------------------------------------------------------------------
# factor-level helpers
# ---------------------------------------------------------------------------

def _domain(ring):
    if isinstance(ring, Rationals):
        return _smith.RAT
    if isinstance(ring, (Integers, Modular)):
        return _smith.INT
    raise UnsupportedRing(f"no Euclidean lift for {ring}")


def _modulus(ring):
    return ring.n if isinstance(ring, Modular) else None


def _lifted_relations(ring, relations: Matrix) -> list:
    """Relation rows over the lift domain, with ``n * I`` appended over Z/n."""
    rows = [list(r) for r in relations.rows]
    n = _modulus(ring)
    if n is not None:
        g = relations.nrows
        for i, r in enumerate(rows):
            r.extend(n if j == i else 0 for j in range(g))
    return rows


def split_matrix(m: Matrix) -> List[Matrix]:
    """Component matrices of a matrix over a product ring."""
    ring = m.ring
    if not isinstance(ring, Product):
        return [m]
    return [
        Matrix(f, [[x[i] for x in r] for r in m.rows], m.ncols, canon=False)
        for i, f in enumerate(ring.factors)
    ]


def join_matrices(ring: BaseRing, parts: Sequence[Matrix]) -> Matrix:
    """Inverse of :func:`split_matrix`; narrower parts are padded with zero columns."""
    if not isinstance(ring, Product):
        (only,) = parts
        return only
    nrows = parts[0].nrows
    ncols = max(p.ncols for p in parts)
    rows = []
    for i in range(nrows):
        row = []
        for j in range(ncols):
            row.append(tuple(
                p.rows[i][j] if j < p.ncols else f.zero
                for p, f in zip(parts, ring.factors)
            ))
        rows.append(row)
    return Matrix(ring, rows, ncols, canon=False)


def _to_domain_rows(m: Matrix) -> list:
    return [list(r) for r in m.rows]


@dataclass(frozen=True)
class LocalNormal:
    """Smith data for one factor: ``M`` is ``(+) R/(d_i)`` in normal coordinates.

    ``to_normal`` (k x g) sends generator coordinates to normal coordinates and
    ``from_normal`` (g x k) sends them back; ``moduli`` holds the non-unit
    invariant factors (0 for a free summand) as lift-domain values.
    """

    ring: BaseRing
    moduli: tuple
    to_normal: list
    from_normal: list

    @property
    def finite(self) -> bool:
        return all(d != 0 for d in self.moduli)


def _local_normal(ring, g: int, relations: Matrix) -> LocalNormal:
    dom = _domain(ring)
    rows = _lifted_relations(ring, relations)
    ncols = len(rows[0]) if rows else 0
    if g == 0:
        return LocalNormal(ring, (), [], [])
    sd = _smith.smith(rows, g, ncols, dom)
    keep = []
    moduli = []
    for i in range(g):
        d = sd.diagonal[i] if i < len(sd.diagonal) else dom.zero
        if d != 0 and dom.is_unit(d):
            continue
        keep.append(i)
        moduli.append(d)
    to_normal = [sd.U[i] for i in keep]
    from_normal = [[row[i] for i in keep] for row in sd.Uinv]
    return LocalNormal(ring, tuple(moduli), to_normal, from_normal)


# ---------------------------------------------------------------------------
# modules
# ---------------------------------------------------------------------------

class FPModule:
    """``ring^ngens / span(relations)``; relations are columns of a ``ngens x r`` matrix."""

    def __init__(self, ring: BaseRing, ngens: int, relations: Matrix | None = None):
        if ngens < 0:
            raise ValueError("generator count must be non-negative")
        if relations is None:
            relations = Matrix.zeros(ring, ngens, 0)
        if relations.ring != ring:
            raise MixedRings(f"relations over {relations.ring}, module over {ring}")
        if relations.nrows != ngens:
            raise ShapeMismatch(f"relation matrix has {relations.nrows} rows, expected {ngens}")
        self.ring = ring
        self.ngens = ngens
        self.relations = relations

    # -- constructors -----------------------------------------------------------
    @classmethod
    def free(cls, ring, n: int) -> "FPModule":
        return cls(ring, n)

    @classmethod
    def zero(cls, ring) -> "FPModule":
        return cls(ring, 0)

    @classmethod
    def from_relation_vectors(cls, ring, ngens: int, vectors) -> "FPModule":
        vectors = list(vectors)
        if not vectors:
            return cls(ring, ngens)
        return cls(ring, ngens, Matrix.from_columns(ring, vectors, ngens))

    @classmethod
    def cyclic(cls, ring, d) -> "FPModule":
        """``R/(d)``."""
        return cls(ring, 1, Matrix(ring, [[d]], 1))

    def __eq__(self, other):
        if not isinstance(other, FPModule):
            return NotImplemented
        return (self.ring, self.ngens, self.relations) == (other.ring, other.ngens, other.relations)

    def __hash__(self):
        return hash((self.ring, self.ngens, self.relations))

    def __repr__(self):
        return f"FPModule({self.ring}, ngens={self.ngens}, relations={self.relations.tolist()})"

    # -- factor decomposition -----------------------------------------------------
    def components(self) -> List["FPModule"]:
        """Per-factor modules ``e_i M`` for a product ring, else ``[self]``."""
        if not isinstance(self.ring, Product):
            return [self]
        return [FPModule(f, self.ngens, rel) for f, rel in zip(self.ring.factors, split_matrix(self.relations))]

    @cached_property
    def normal(self) -> List[LocalNormal]:
        return [_local_normal(c.ring, c.ngens, c.relations) for c in self.components()]

    def identity_matrix(self) -> Matrix:
        return Matrix.identity(self.ring, self.ngens)

    # -- element level ----------------------------------------------------------
    def _vector_parts(self, v):
        if isinstance(self.ring, Product):
            return [[x[i] for x in v] for i in range(len(self.ring.factors))]
        return [list(v)]

    def _join_vector(self, parts):
        if isinstance(self.ring, Product):
            return tuple(tuple(p[j] for p in parts) for j in range(self.ngens))
        return tuple(parts[0])

    def normal_coordinates(self, v) -> tuple:
        """Reduced normal coordinates of ``v``; equal exactly when the elements are equal."""
        if len(v) != self.ngens:
            raise ShapeMismatch(f"vector of length {len(v)} in a module with {self.ngens} generators")
        out = []
        for ln, part in zip(self.normal, self._vector_parts(v)):
            for row, d in zip(ln.to_normal, ln.moduli):
                c = sum(a * b for a, b in zip(row, part))
                out.append(c % d if d != 0 else c)
        return tuple(out)

    def key(self, v) -> tuple:
        return self.normal_coordinates(v)

    def is_zero_vector(self, v) -> bool:
        return all(c == 0 for c in self.normal_coordinates(v))

    def reduce(self, v) -> tuple:
        """Canonical representative of the class of ``v``."""
        parts = []
        for ln, part in zip(self.normal, self._vector_parts(v)):
            coords = []
            for row, d in zip(ln.to_normal, ln.moduli):
                c = sum(a * b for a, b in zip(row, part))
                coords.append(c % d if d != 0 else c)
            parts.append([ln.ring.canon(sum(a * b for a, b in zip(row, coords))) for row in ln.from_normal])
        return self._join_vector(parts)

    def zero_vector(self) -> tuple:
        return tuple(self.ring.zero for _ in range(self.ngens))

    def basis_vector(self, i) -> tuple:
        return tuple(self.ring.one if j == i else self.ring.zero for j in range(self.ngens))

    def add(self, v, w) -> tuple:
        add = self.ring.add
        return tuple(add(a, b) for a, b in zip(v, w))

    def scale(self, c, v) -> tuple:
        mul = self.ring.mul
        return tuple(mul(c, a) for a in v)

    # -- invariants -------------------------------------------------------------
    def is_zero(self) -> bool:
        return all(len(ln.moduli) == 0 for ln in self.normal)

    @property
    def is_finite(self) -> bool:
        return all(ln.finite for ln in self.normal) and all(
            not isinstance(ln.ring, Rationals) or not ln.moduli for ln in self.normal
        )

    @property
    def cardinality(self) -> Optional[int]:
        if not self.is_finite:
            return None
        return math.prod(int(d) for ln in self.normal for d in ln.moduli)

    def elements(self) -> Iterator[tuple]:
        """All elements as canonical vectors, lexicographic in normal coordinates."""
        from .errors import InfiniteEnumeration

        if not self.is_finite:
            raise InfiniteEnumeration(f"module {self!r} is infinite")
        per_factor = []
        for ln in self.normal:
            vecs = []
            for coords in itertools.product(*(range(int(d)) for d in ln.moduli)):
                vecs.append([ln.ring.canon(sum(a * b for a, b in zip(row, coords))) for row in ln.from_normal])
            per_factor.append(vecs)
        for combo in itertools.product(*per_factor):
            yield self._join_vector(list(combo))

    def invariant_factors(self):
        """Non-unit invariant factors (0 marks a free summand).

        A list for a non-product ring, a tuple of per-factor lists otherwise.
        Over ``Z/n`` the factors are positive divisors of ``n``; ``n`` itself
        marks a free summand.
        """
        lists = []
        for ln in self.normal:
            ds = [abs(d) if isinstance(d, int) else d for d in ln.moduli]
            if isinstance(ln.ring, Rationals):
                ds = [Fraction(0) for _ in ds]
            lists.append(ds)
        if isinstance(self.ring, Product):
            return tuple(lists)
        return lists[0]

    def annihilator(self):
        """Generator of the annihilator ideal, as a raw ring value."""
        parts = []
        for comp, ln in zip(self.components(), self.normal):
            ring = comp.ring
            if not ln.moduli:
                parts.append(ring.one)
            elif isinstance(ring, Rationals):
                parts.append(ring.zero)
            else:
                parts.append(ring.canon(math.lcm(*[int(d) for d in ln.moduli])))
        if isinstance(self.ring, Product):
            return tuple(parts)
        return parts[0]

    # -- solving ---------------------------------------------------------------
    def solve(self, F: Matrix, Y: Matrix) -> Optional[Matrix]:
        """``X`` with ``F X == Y`` modulo the relations of this module, or None.

        ``F`` is ``ngens x k`` and ``Y`` is ``ngens x m``.
        """
        if F.nrows != self.ngens or Y.nrows != self.ngens:
            raise ShapeMismatch("solve: row count must equal the generator count")
        k = F.ncols
        parts = []
        for comp, Fi, Yi in zip(self.components(), split_matrix(F), split_matrix(Y)):
            ring = comp.ring
            dom = _domain(ring)
            A = _to_domain_rows(Fi)
            rel = _lifted_relations(ring, comp.relations)
            A = [a + r for a, r in zip(A, rel)] if A else []
            ncols = k + (len(rel[0]) if rel else 0)
            Z = _smith.solve(A, self.ngens, ncols, _to_domain_rows(Yi), dom)
            if Z is None:
                return None
            parts.append(Matrix(ring, Z[:k], Y.ncols))
        return join_matrices(self.ring, parts)

    def preimage_generators(self, F: Matrix) -> Matrix:
        """Columns generating ``{x in R^k : F x == 0 in this module}``."""
        if F.nrows != self.ngens:
            raise ShapeMismatch("preimage: row count must equal the generator count")
        k = F.ncols
        parts = []
        for comp, Fi in zip(self.components(), split_matrix(F)):
            ring = comp.ring
            dom = _domain(ring)
            A = _to_domain_rows(Fi)
            rel = _lifted_relations(ring, comp.relations)
            A = [a + r for a, r in zip(A, rel)] if A else []
            ncols = k + (len(rel[0]) if rel else 0)
            if self.ngens == 0:
                basis = _smith.identity(k, dom)
            else:
                basis = _smith.kernel_basis(A, self.ngens, ncols, dom)[:k]
            t = len(basis[0]) if basis else 0
            M = Matrix(ring, basis, t) if k else Matrix.zeros(ring, 0, 0)
            parts.append(_prune_zero_columns(M))
        return join_matrices(self.ring, parts)


def _prune_zero_columns(M: Matrix) -> Matrix:
    keep = [j for j in range(M.ncols) if any(x != M.ring.zero for x in M.column(j))]
    return M.select_columns(keep)


# ---------------------------------------------------------------------------
# morphisms
# ---------------------------------------------------------------------------

class ModuleMorphism:
    """An R-linear map given by a ``target.ngens x source.ngens`` matrix."""

    def __init__(self, source: FPModule, target: FPModule, matrix: Matrix, check: bool = True):
        if source.ring != target.ring or matrix.ring != source.ring:
            raise MixedRings("morphism spans different rings")
        if matrix.shape != (target.ngens, source.ngens):
            raise ShapeMismatch(f"matrix shape {matrix.shape}, expected {(target.ngens, source.ngens)}")
        self.source = source
        self.target = target
        self.matrix = matrix
        if check and self.certificate is None:
            raise NotWellDefined("matrix does not send source relations into target relations")

    @cached_property
    def certificate(self) -> Optional[Matrix]:
        """``X`` with ``matrix @ source.relations == target.relations @ X`` (mod nothing)."""
        image = self.matrix @ self.source.relations
        if image.ncols == 0:
            return Matrix.zeros(self.source.ring, self.target.relations.ncols, 0)
        return self.target.solve(self.target.relations, image) if self.target.relations.ncols else (
            Matrix.zeros(self.source.ring, 0, image.ncols) if image.is_zero() else None
        )

    @property
    def ring(self):
        return self.source.ring

    @classmethod
    def identity(cls, M: FPModule) -> "ModuleMorphism":
        return cls(M, M, M.identity_matrix(), check=False)

    @classmethod
    def zero(cls, source: FPModule, target: FPModule) -> "ModuleMorphism":
        return cls(source, target, Matrix.zeros(source.ring, target.ngens, source.ngens), check=False)

    def __call__(self, v) -> tuple:
        return self.matrix.apply(v)

    def __matmul__(self, other: "ModuleMorphism") -> "ModuleMorphism":
        """``self @ other`` is the composite ``self o other``."""
        if other.target.ngens != self.source.ngens or other.target.ring != self.source.ring:
            raise ShapeMismatch("composable morphisms required")
        return ModuleMorphism(other.source, self.target, self.matrix @ other.matrix, check=False)

    def __add__(self, other):
        return ModuleMorphism(self.source, self.target, self.matrix + other.matrix, check=False)

    def __sub__(self, other):
        return ModuleMorphism(self.source, self.target, self.matrix - other.matrix, check=False)

    def __neg__(self):
        return ModuleMorphism(self.source, self.target, -self.matrix, check=False)

    def scale(self, c):
        return ModuleMorphism(self.source, self.target, self.matrix.scale(c), check=False)

    def __repr__(self):
        return f"ModuleMorphism({self.source.ngens} -> {self.target.ngens}, {self.matrix.tolist()})"


def first_difference(f: ModuleMorphism, g: ModuleMorphism):
    """Index of the first source generator where ``f`` and ``g`` differ, or None."""
    if f.matrix.shape != g.matrix.shape or f.ring != g.ring:
        raise ShapeMismatch("morphisms with different shapes cannot be compared")
    diff = f.matrix - g.matrix
    for j in range(diff.ncols):
        if not f.target.is_zero_vector(diff.column(j)):
            return j
    return None


def morphism_equal(f: ModuleMorphism, g: ModuleMorphism) -> bool:
    """Equality in the category: ``f - g`` lands in the target relations."""
    return first_difference(f, g) is None


def is_zero_morphism(f: ModuleMorphism) -> bool:
    return all(f.target.is_zero_vector(c) for c in f.matrix.columns())


def kernel(f: ModuleMorphism):
    """``(K, inclusion)`` presenting ``ker f`` with a certified inclusion into the source."""
    gens = f.target.preimage_generators(f.matrix)
    rels = f.source.preimage_generators(gens)
    K = FPModule(f.ring, gens.ncols, rels)
    return K, ModuleMorphism(K, f.source, gens, check=False)


def factor_through(f: ModuleMorphism, mono: ModuleMorphism) -> Optional[ModuleMorphism]:
    """``h`` with ``mono o h == f`` when it exists (``mono`` assumed injective)."""
    if f.target.ngens != mono.target.ngens:
        raise ShapeMismatch("factor_through needs a common target")
    X = mono.target.solve(mono.matrix, f.matrix)
    if X is None:
        return None
    return ModuleMorphism(f.source, mono.source, X, check=False)


def is_injective(f: ModuleMorphism) -> bool:
    K, _ = kernel(f)
    return K.is_zero()


def is_isomorphism(f: ModuleMorphism) -> Optional[ModuleMorphism]:
    """Two-sided inverse of ``f`` when it is an isomorphism, else None."""
    T = f.target
    X = T.solve(f.matrix, T.identity_matrix())
    if X is None:
        return None
    if not is_injective(f):
        return None
    g = ModuleMorphism(T, f.source, X, check=False)
    if not (morphism_equal(f @ g, ModuleMorphism.identity(T))
            and morphism_equal(g @ f, ModuleMorphism.identity(f.source))):
        return None
    return g


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

class TensorModule(FPModule):
    """``M (x) N``; the generator for the pair ``(i, j)`` has index ``i * N.ngens + j``."""

    def __init__(self, left: FPModule, right: FPModule):
        if left.ring != right.ring:
            raise MixedRings(f"{left.ring} vs {right.ring}")
        ring = left.ring
        rel = left.relations.kron(right.identity_matrix()).hstack(
            left.identity_matrix().kron(right.relations))
        super().__init__(ring, left.ngens * right.ngens, rel)
        self.left = left
        self.right = right

    def index(self, i, j) -> int:
        return i * self.right.ngens + j

    def pair(self, a, b) -> tuple:
        """The pure tensor ``a (x) b`` of two coordinate vectors."""
        mul = self.ring.mul
        return tuple(mul(x, y) for x in a for y in b)


def module_tensor(M: FPModule, N: FPModule) -> TensorModule:
    return TensorModule(M, N)


def tensor_power(M: FPModule, n: int) -> FPModule:
    """``M^(x)n`` with row-major generator order; ``n == 0`` gives the free module of rank 1."""
    if n == 0:
        return FPModule.free(M.ring, 1)
    out = M
    for _ in range(n - 1):
        out = module_tensor(out, M)
    return out


def tensor_morphisms(f: ModuleMorphism, g: ModuleMorphism, source=None, target=None) -> ModuleMorphism:
    source = source or module_tensor(f.source, g.source)
    target = target or module_tensor(f.target, g.target)
    return ModuleMorphism(source, target, f.matrix.kron(g.matrix), check=False)


class DirectSum(FPModule):
    """Biproduct of a list of modules with block presentation."""

    def __init__(self, summands: Sequence[FPModule]):
        summands = list(summands)
        if not summands:
            raise ValueError("direct sum of no summands")
        ring = summands[0].ring
        for s in summands:
            if s.ring != ring:
                raise MixedRings(f"{s.ring} vs {ring}")
        rel = summands[0].relations
        for s in summands[1:]:
            rel = rel.block_diag(s.relations)
        super().__init__(ring, sum(s.ngens for s in summands), rel)
        self.summands = summands
        offsets = [0]
        for s in summands:
            offsets.append(offsets[-1] + s.ngens)
        self.offsets = offsets

    def injection(self, k) -> ModuleMorphism:
        s = self.summands[k]
        rows = [[self.ring.one if i == self.offsets[k] + j else self.ring.zero for j in range(s.ngens)]
                for i in range(self.ngens)]
        return ModuleMorphism(s, self, Matrix(self.ring, rows, s.ngens, canon=False), check=False)

    def projection(self, k) -> ModuleMorphism:
        s = self.summands[k]
        rows = [[self.ring.one if j == self.offsets[k] + i else self.ring.zero for j in range(self.ngens)]
                for i in range(s.ngens)]
        return ModuleMorphism(self, s, Matrix(self.ring, rows, self.ngens, canon=False), check=False)

    def pairing(self, maps: Sequence[ModuleMorphism]) -> ModuleMorphism:
        """``<f_1, ..., f_k>`` into the sum."""
        m = maps[0].matrix
        for f in maps[1:]:
            m = m.vstack(f.matrix)
        return ModuleMorphism(maps[0].source, self, m, check=False)

    def copairing(self, maps: Sequence[ModuleMorphism]) -> ModuleMorphism:
        """``[f_1, ..., f_k]`` out of the sum."""
        m = maps[0].matrix
        for f in maps[1:]:
            m = m.hstack(f.matrix)
        return ModuleMorphism(self, maps[0].target, m, check=False)


def module_direct_sum(*summands: FPModule) -> DirectSum:
    return DirectSum(summands)


def smith_presentation(M: FPModule):
    """``(N, to_N, from_N)`` where ``N`` is the diagonal presentation of ``M``."""
    ring = M.ring
    if not isinstance(ring, Product):
        (ln,) = M.normal
        k = len(ln.moduli)
        N = FPModule(ring, k, Matrix(ring, [[ln.moduli[i] if i == j else 0 for j in range(k)] for i in range(k)], k)
                     if k else None)
        to_N = ModuleMorphism(M, N, Matrix(ring, ln.to_normal, M.ngens) if k else Matrix.zeros(ring, 0, M.ngens),
                              check=False)
        from_N = ModuleMorphism(N, M, Matrix(ring, ln.from_normal, k) if M.ngens else Matrix.zeros(ring, 0, k),
                                check=False)
        return N, to_N, from_N
    k = max((len(ln.moduli) for ln in M.normal), default=0)
    diag_parts, to_parts, from_parts = [], [], []
    for comp, ln in zip(M.components(), M.normal):
        f = comp.ring
        moduli = list(ln.moduli) + [1] * (k - len(ln.moduli))
        diag_parts.append(Matrix(f, [[moduli[i] if i == j else 0 for j in range(k)] for i in range(k)], k))
        to_rows = [list(r) for r in ln.to_normal] + [[0] * M.ngens for _ in range(k - len(ln.moduli))]
        to_parts.append(Matrix(f, to_rows, M.ngens))
        from_rows = [list(r) + [0] * (k - len(ln.moduli)) for r in ln.from_normal]
        from_parts.append(Matrix(f, from_rows, k))
    N = FPModule(ring, k, join_matrices(ring, diag_parts))
    to_N = ModuleMorphism(M, N, join_matrices(ring, to_parts), check=False)
    from_N = ModuleMorphism(N, M, join_matrices(ring, from_parts), check=False)
    return N, to_N, from_N


def presentation_signature(M: FPModule):
    """Isomorphism invariant: per-factor non-unit invariant factors."""
    inv = M.invariant_factors()
    return inv if isinstance(inv, tuple) else (inv,)


def modules_isomorphic(M: FPModule, N: FPModule) -> bool:
    """Abstract isomorphism test by comparison of invariant factors."""
    if M.ring != N.ring:
        return False
    return presentation_signature(M) == presentation_signature(N)


def is_fgp(M: FPModule) -> bool:
    """Finitely generated projective test, factor by factor."""
    for comp, ln in zip(M.components(), M.normal):
        ring = comp.ring
        if isinstance(ring, (Integers, Rationals)):
            if any(d != 0 for d in ln.moduli):
                return False
        elif isinstance(ring, Modular):
            n = ring.n
            for p, k in _factorize(n):
                for d in ln.moduli:
                    v = _valuation(int(d), p)
                    if v not in (0, k):
                        return False
        else:
            raise UnsupportedRing(str(ring))
    return True


def _factorize(n):
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            out.append((p, k))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def _valuation(d, p):
    v = 0
    while d and d % p == 0:
        d //= p
        v += 1
    return v


def module_swap(M: FPModule, N: FPModule) -> ModuleMorphism:
    """The symmetry ``M (x) N -> N (x) M``, ``(i, j) -> (j, i)``."""
    src, tgt = module_tensor(M, N), module_tensor(N, M)
    ring = M.ring
    rows = [[ring.zero] * src.ngens for _ in range(tgt.ngens)]
    for i in range(M.ngens):
        for j in range(N.ngens):
            rows[tgt.index(j, i)][src.index(i, j)] = ring.one
    return ModuleMorphism(src, tgt, Matrix(ring, rows, src.ngens, canon=False), check=False)


@dataclass(frozen=True)
class SmithForm:
    """``U @ A @ V == D`` with ``U``, ``V`` invertible and ``D`` diagonal."""

    U: Matrix
    V: Matrix
    D: Matrix

    @property
    def diagonal(self) -> list:
        return [self.D[i, i] for i in range(min(self.D.shape))]


def smith_normal_form(A: Matrix) -> SmithForm:
    """Smith form over Z, Q or Z/n (computed over Z and reduced)."""
    ring = A.ring
    if isinstance(ring, Product):
        raise UnsupportedRing("split product-ring matrices with split_matrix first")
    dom = _domain(ring)
    m, n = A.shape
    rows = [list(r) for r in A.rows]
    if m == 0 or n == 0:
        return SmithForm(Matrix.identity(ring, m), Matrix.identity(ring, n), A)
    sd = _smith.smith(rows, m, n, dom)
    return SmithForm(Matrix(ring, sd.U, m), Matrix(ring, sd.V, n), Matrix(ring, sd.D, n))
