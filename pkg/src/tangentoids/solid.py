"""Solid commutative non-unital algebras and the named examples."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import List, Optional

from .algebras import Algebra, algebra_check
from .errors import BudgetExceeded, InvalidWitness, UnsupportedRing
from .matrix import Matrix
from .modules import FPModule, ModuleMorphism, is_fgp, is_isomorphism, morphism_equal
from .rings import BaseRing, Integers, Modular, Product, Rationals, ZZ, product

DEFAULT_BUDGET = 2 ** 24


class NonUnitalAlgebra(Algebra):
    """A carrier with a commutative associative product and no unit."""

    def __init__(self, carrier: FPModule, table, check: bool = True, names=None):
        super().__init__(carrier, table, unit=None, check=check, names=names)

    @classmethod
    def from_algebra(cls, A: Algebra) -> "NonUnitalAlgebra":
        return cls(A.carrier, A.table, check=False, names=A.names)

    @classmethod
    def from_alpha(cls, alpha: ModuleMorphism, names=None) -> "NonUnitalAlgebra":
        M = alpha.target
        g = M.ngens
        cols = alpha.matrix.columns()
        table = [[cols[i * g + j] for j in range(g)] for i in range(g)]
        return cls(M, table, check=False, names=names)

    @property
    def alpha(self) -> ModuleMorphism:
        return self.mult


@dataclass
class SolidWitness:
    """``nu: M -> M (x) M`` with ``alpha nu = id`` and ``nu alpha = id``."""

    algebra: NonUnitalAlgebra
    nu: ModuleMorphism

    def verify(self) -> bool:
        A = self.algebra
        return (morphism_equal(A.alpha @ self.nu, ModuleMorphism.identity(A.carrier))
                and morphism_equal(self.nu @ A.alpha, ModuleMorphism.identity(A.square)))


@dataclass
class SolidCheck:
    """Outcome of :func:`check_solid`: a witness, or the name of the failed law."""

    witness: Optional[SolidWitness]
    reason: Optional[str] = None
    detail: Optional[tuple] = None

    def __bool__(self):
        return self.witness is not None


def check_solid(M: NonUnitalAlgebra) -> SolidCheck:
    report = algebra_check(M)
    for law in ("well_defined", "commutativity", "associativity"):
        entry = report[law]
        if not entry.passed:
            return SolidCheck(None, law, entry.witness)
    nu = is_isomorphism(M.alpha)
    if nu is None:
        return SolidCheck(None, "invertibility")
    w = SolidWitness(M, nu)
    if not w.verify():
        return SolidCheck(None, "invertibility")
    return SolidCheck(w)


def require_solid(M: NonUnitalAlgebra) -> SolidWitness:
    res = check_solid(M)
    if not res:
        raise InvalidWitness(f"not solid: {res.reason}")
    return res.witness


# ---------------------------------------------------------------------------
# named examples
# ---------------------------------------------------------------------------

def zero_solid(ring: BaseRing) -> NonUnitalAlgebra:
    return NonUnitalAlgebra(FPModule.zero(ring), [], check=False)


def unit_solid(ring: BaseRing) -> NonUnitalAlgebra:
    """``R`` with its own multiplication; ``nu(x) = x (x) 1``."""
    return NonUnitalAlgebra(FPModule.free(ring, 1), [[(1,)]], check=False, names=["e"])


def cyclic_solid(ring: BaseRing, d) -> NonUnitalAlgebra:
    """``R/(d)`` with residue multiplication."""
    return NonUnitalAlgebra(FPModule.cyclic(ring, d), [[(1,)]], check=False, names=["e"])


def torsion_solid(n: int):
    """``Z/n`` as a solid non-unital Z-algebra, with its witness."""
    if n < 1:
        raise ValueError("n must be positive")
    M = zero_solid(ZZ) if n == 1 else cyclic_solid(ZZ, n)
    return M, require_solid(M)


def product_ring_solid(S: BaseRing):
    """``(R, M, witness)`` with ``R = S x S`` and ``M = S`` acted on by ``(a, b) x = a x``.

    As a cyclic module ``M = R/((0, 1))``: the annihilator of the action is
    generated by ``(0, 1)``.
    """
    if isinstance(S, Product):
        raise UnsupportedRing("S must be a non-product ring")
    R = product(S, S)
    M = cyclic_solid(R, (0, 1))
    return R, M, require_solid(M)


# ---------------------------------------------------------------------------
# classification of solid structures on free modules
# ---------------------------------------------------------------------------

@dataclass
class RankVerdict:
    rank: int
    admits: bool
    method: str
    candidates: Optional[int] = None
    found: Optional[int] = None


@dataclass
class Classification:
    ring: BaseRing
    max_rank: int
    verdicts: List[RankVerdict] = field(default_factory=list)

    @property
    def ranks(self) -> List[int]:
        return [v.rank for v in self.verdicts if v.admits]


def _free_table_search(ring: BaseRing, k: int, budget: int):
    """Count commutative associative invertible tables on ``R^k`` by exhaustion."""
    q = ring.cardinality
    total = q ** (k ** 3)
    if total > budget:
        raise BudgetExceeded(f"{q}^{k ** 3} = {total} candidate tables exceed the budget {budget}")
    M = FPModule.free(ring, k)
    elems = list(ring.elements())
    vectors = list(itertools.product(elems, repeat=k))
    found = 0
    pairs = [(i, j) for i in range(k) for j in range(k)]
    for choice in itertools.product(vectors, repeat=k * k):
        table = [[choice[i * k + j] for j in range(k)] for i in range(k)]
        if any(table[i][j] != table[j][i] for i, j in pairs):
            continue
        A = NonUnitalAlgebra(M, table, check=False)
        if not algebra_check(A)["associativity"].passed:
            continue
        if is_isomorphism(A.alpha) is not None:
            found += 1
    return total, found


def classify_free_solids(ring: BaseRing, max_rank: int, budget: int = DEFAULT_BUDGET,
                         exhaustive="auto") -> Classification:
    """Which free ranks ``k <= max_rank`` carry a solid structure.

    Ranks 0 and 1 always do (zero module, ``R`` itself).  For ``k >= 2`` the
    multiplication would be an isomorphism ``R^(k^2) -> R^k``, impossible since
    ``k^2 != k``.  Over a finite ring the exclusion is also confirmed by an
    exhaustive search of all ``|R|^(k^3)`` tables: ``exhaustive="auto"`` runs it
    when it fits the budget, ``True`` demands it (raising BudgetExceeded),
    ``False`` skips it.
    """
    out = Classification(ring, max_rank)
    for k in range(max_rank + 1):
        if k == 0:
            out.verdicts.append(RankVerdict(0, True, "zero module"))
            continue
        if k == 1:
            ok = bool(check_solid(unit_solid(ring)))
            out.verdicts.append(RankVerdict(1, ok, "ring multiplication"))
            continue
        verdict = RankVerdict(k, False, "rank argument: k^2 != k")
        if ring.is_finite and exhaustive:
            total = ring.cardinality ** (k ** 3)
            if exhaustive is True or total <= budget:
                total, found = _free_table_search(ring, k, budget)
                verdict = RankVerdict(k, found > 0, "exhaustive search", total, found)
        out.verdicts.append(verdict)
    return out
