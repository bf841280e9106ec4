import itertools
from math import gcd

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import invariant_factors as sympy_invariants

from tangentoids import QQ, ZZ, FPModule, Matrix, ModuleMorphism, Modular, is_fgp, kernel, product
from tangentoids.errors import NotWellDefined, ShapeMismatch
from tangentoids.modules import (
    factor_through,
    is_injective,
    is_isomorphism,
    module_direct_sum,
    module_swap,
    module_tensor,
    modules_isomorphic,
    morphism_equal,
    smith_presentation,
    tensor_power,
)

Z2xZ3 = product(Modular(2), Modular(3))


def span_size(n, g, rels):
    """Size of the Z/n-span of the relation vectors, by closure."""
    seen = {tuple([0] * g)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for v in frontier:
            for r in rels:
                w = tuple((a + b) % n for a, b in zip(v, r))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return len(seen)


rel_lists = st.integers(1, 3).flatmap(
    lambda g: st.tuples(st.just(g), st.lists(st.lists(st.integers(-9, 9), min_size=g, max_size=g), max_size=3)))


@settings(max_examples=80, deadline=None)
@given(rel_lists, st.sampled_from([2, 4, 6, 9]))
def test_cardinality_against_span_enumeration(data, n):
    g, rels = data
    M = FPModule.from_relation_vectors(Modular(n), g, rels)
    assert M.cardinality == n ** g // span_size(n, g, [[x % n for x in r] for r in rels])
    assert len(list(M.elements())) == M.cardinality


@settings(max_examples=80, deadline=None)
@given(rel_lists)
def test_integer_invariants_against_sympy(data):
    g, rels = data
    M = FPModule.from_relation_vectors(ZZ, g, rels)
    ours = sorted(d for d in M.invariant_factors() if d != 1)
    if rels:
        rows = [list(r) for r in zip(*rels)]  # relations are columns
        theirs = [abs(int(d)) for d in sympy_invariants(sympy.Matrix(rows), domain=sympy.ZZ)]
    else:
        theirs = []
    rank = len([d for d in theirs if d != 0])
    expected = sorted([d for d in theirs if d not in (0, 1)] + [0] * (g - rank))
    assert ours == expected


def test_cyclic_tensor_is_gcd():
    for m, n in itertools.product([2, 3, 4, 6, 0], repeat=2):
        T = module_tensor(FPModule.cyclic(ZZ, m), FPModule.cyclic(ZZ, n))
        g = gcd(m, n)
        assert modules_isomorphic(T, FPModule.cyclic(ZZ, g) if g != 1 else FPModule.zero(ZZ))


def test_tensor_power_ranks():
    assert tensor_power(FPModule.free(ZZ, 2), 0) == FPModule.free(ZZ, 1)
    assert tensor_power(FPModule.free(ZZ, 2), 3).ngens == 8


def test_fgp_detection():
    assert is_fgp(FPModule.free(ZZ, 3))
    assert not is_fgp(FPModule.cyclic(ZZ, 2))
    assert is_fgp(FPModule.cyclic(Modular(6), 2))  # Z/6 = Z/2 x Z/3
    assert not is_fgp(FPModule.cyclic(Modular(4), 2))
    assert is_fgp(FPModule.cyclic(Z2xZ3, (0, 1)))
    assert is_fgp(FPModule.cyclic(QQ, 0))


def test_ill_defined_morphism_rejected():
    with pytest.raises(NotWellDefined):
        ModuleMorphism(FPModule.cyclic(ZZ, 2), FPModule.free(ZZ, 1), Matrix(ZZ, [[1]]))
    ModuleMorphism(FPModule.cyclic(ZZ, 2), FPModule.cyclic(ZZ, 4), Matrix(ZZ, [[2]]))


def test_shape_checked():
    with pytest.raises(ShapeMismatch):
        ModuleMorphism(FPModule.free(ZZ, 2), FPModule.free(ZZ, 1), Matrix(ZZ, [[1]]))


def test_kernel_of_multiplication_by_two():
    f = ModuleMorphism(FPModule.cyclic(ZZ, 4), FPModule.cyclic(ZZ, 4), Matrix(ZZ, [[2]]))
    K, inc = kernel(f)
    assert K.cardinality == 2
    assert is_injective(inc)
    assert all(FPModule.cyclic(ZZ, 4).is_zero_vector(c) for c in (f.matrix @ inc.matrix).columns())


def test_factor_through_and_inverse():
    M = FPModule.cyclic(ZZ, 6)
    N = module_direct_sum(FPModule.cyclic(ZZ, 2), FPModule.cyclic(ZZ, 3))
    f = ModuleMorphism(M, N, Matrix(ZZ, [[1], [1]]))
    inv = is_isomorphism(f)
    assert inv is not None
    assert morphism_equal(f @ inv, ModuleMorphism.identity(N))
    double = ModuleMorphism(M, M, Matrix(ZZ, [[2]]))
    assert is_isomorphism(double) is None
    g = factor_through(ModuleMorphism(M, M, Matrix(ZZ, [[4]])), double)
    assert g is not None and morphism_equal(double @ g, ModuleMorphism(M, M, Matrix(ZZ, [[4]])))


def test_direct_sum_identities():
    A, B = FPModule.cyclic(ZZ, 2), FPModule.free(ZZ, 1)
    S = module_direct_sum(A, B)
    for k, X in enumerate([A, B]):
        assert morphism_equal(S.projection(k) @ S.injection(k), ModuleMorphism.identity(X))
    total = S.injection(0) @ S.projection(0) + S.injection(1) @ S.projection(1)
    assert morphism_equal(total, ModuleMorphism.identity(S))


def test_swap_is_involution():
    M, N = FPModule.cyclic(ZZ, 2), FPModule.free(ZZ, 2)
    s = module_swap(M, N)
    assert morphism_equal(module_swap(N, M) @ s, ModuleMorphism.identity(module_tensor(M, N)))


def test_smith_presentation_is_isomorphic():
    M = FPModule.from_relation_vectors(ZZ, 2, [[2, 4], [6, 8]])
    N, to_N, from_N = smith_presentation(M)
    assert morphism_equal(from_N @ to_N, ModuleMorphism.identity(M))
    assert sorted(M.invariant_factors()) == [2, 4]


def test_product_ring_module_splits():
    M = FPModule.cyclic(Z2xZ3, (0, 1))
    assert M.cardinality == 2
    assert M.invariant_factors() == ([2], [])
    assert M.annihilator() == (0, 1)


def test_rational_quotients_vanish():
    assert FPModule.cyclic(QQ, 5).is_zero()
    assert not FPModule.cyclic(QQ, 0).is_zero()
