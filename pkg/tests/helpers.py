"""Fixture families shared by the test modules."""

from tangentoids import (
    algebra_product,
    dual_numbers,
    hom_enumerate,
    monic_quotient,
    trivial_algebra,
)
from tangentoids.algebras import Derivation, morphism_laws, AlgebraMorphism
from tangentoids.tangentoid import hom_matrices


def algebra_family(R):
    """R, R[e], R x R, R[x]/(x^3), R[x]/(x^2 + x + 1)."""
    return [
        trivial_algebra(R),
        dual_numbers(R),
        algebra_product(trivial_algebra(R), trivial_algebra(R)),
        monic_quotient(R, [0, 0, 0]),
        monic_quotient(R, [1, 1]),
    ]


def brute_force_homs(A, B):
    """Oracle: every module map A -> B filtered by the algebra laws."""
    keys = set()
    for F in hom_matrices(A.carrier, B.carrier):
        f = AlgebraMorphism(A, B, F, check=False)
        if morphism_laws(f).passed:
            keys.add(f.key())
    return keys


def brute_force_derivations(A, phi, N):
    """Oracle: every module map A -> N satisfying Leibniz over ``phi``."""
    count = 0
    for F in hom_matrices(A.carrier, N.carrier):
        if Derivation(phi, N, F).is_valid:
            count += 1
    return count
