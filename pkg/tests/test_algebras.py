import pytest

from tangentoids import (
    QQ,
    ZZ,
    AModule,
    Algebra,
    AlgebraMorphism,
    FPModule,
    Matrix,
    Modular,
    algebra_check,
    algebra_product,
    algebra_pullback,
    algebra_tensor,
    cyclic_algebra,
    derivations,
    dual_numbers,
    hom_enumerate,
    kaehler,
    kaehler_oracle,
    modules_isomorphic,
    monic_quotient,
    product,
    semidirect,
    trivial_algebra,
)
from tangentoids.algebras import algebra_generators, module_laws, morphism_laws, subalgebra
from tangentoids.errors import InfiniteEnumeration, MixedRings, NonUnital, NotWellDefined

from helpers import algebra_family, brute_force_derivations, brute_force_homs

Z2, Z3 = Modular(2), Modular(3)


@pytest.mark.parametrize("R", [ZZ, QQ, Modular(4), Modular(6), product(Z2, Z3)], ids=str)
def test_fixture_algebras_satisfy_laws(R):
    for A in algebra_family(R):
        assert algebra_check(A).passed


def test_non_associative_table_detected():
    # e1 e1 = e2, e2 e1 = e1, everything else 0: (e1 e1) e1 = e1 but e1 (e1 e1) = e1 e2 = 0
    M = FPModule.free(ZZ, 2)
    A = Algebra(M, [[(0, 1), (0, 0)], [(1, 0), (0, 0)]], check=False)
    rep = algebra_check(A)
    assert not rep["commutativity"].passed
    assert rep["commutativity"].witness == (0, 1)


def test_associativity_witness():
    M = FPModule.free(ZZ, 1)
    A = Algebra(M, [[(2,)]], check=False)
    assert algebra_check(A).passed  # 2xy is associative
    B = Algebra(FPModule.free(ZZ, 2), [[(0, 1), (1, 0)], [(1, 0), (0, 0)]], check=False)
    rep = algebra_check(B)
    assert not rep["associativity"].passed


def test_unit_law_failure():
    A = Algebra(FPModule.cyclic(ZZ, 2), [[(1,)]], unit=(0,), check=False)
    assert not algebra_check(A)["unit"].passed


@pytest.mark.parametrize("R", [Z2, Z3], ids=str)
def test_hom_enumeration_matches_brute_force(R):
    fam = algebra_family(R)
    for A in fam:
        for B in fam:
            ours = [f.key() for f in hom_enumerate(A, B)]
            assert len(ours) == len(set(ours))
            assert set(ours) == brute_force_homs(A, B)


def test_hom_counts_by_hand():
    # Hom(R[e], R[e]) over Z/2: e -> a e for a in Z/2
    D = dual_numbers(Z2)
    assert len(hom_enumerate(D, D)) == 2
    # Hom(Z/2[x]/(x^2+x+1), Z/2) is empty: the polynomial has no root mod 2
    F4 = monic_quotient(Z2, [1, 1])
    assert hom_enumerate(F4, trivial_algebra(Z2)) == []
    # Hom(F4, F4) is the Galois group of order 2
    assert len(hom_enumerate(F4, F4)) == 2


def test_hom_enumeration_needs_only_a_finite_target():
    A = dual_numbers(ZZ)
    # Z[e] -> Z/2 sends e to a square-zero element, hence to 0
    assert len(hom_enumerate(A, cyclic_algebra(ZZ, 2))) == 1
    assert len(hom_enumerate(A, cyclic_algebra(ZZ, 4))) == 2  # e -> 0 or 2
    with pytest.raises(InfiniteEnumeration):
        hom_enumerate(A, A)


def test_mixed_rings_refused():
    with pytest.raises(MixedRings):
        hom_enumerate(dual_numbers(Z2), dual_numbers(Z3))


def test_algebra_generators_span():
    A = monic_quotient(Z3, [0, 0, 0])
    gens, words, C = algebra_generators(A)
    assert gens == [1]  # x generates
    assert len(words) == 3


def test_tensor_of_dual_numbers():
    # R[e] (x) R[e'] = R[e, e']/(e^2, e'^2), rank 4
    D = dual_numbers(ZZ)
    T = algebra_tensor(D, D)
    assert T.ngens == 4
    assert algebra_check(T).passed
    e, f = T.carrier.pair((0, 1), (1, 0)), T.carrier.pair((1, 0), (0, 1))
    assert T.mul(e, e) == (0, 0, 0, 0)
    assert T.mul(e, f) == T.carrier.pair((0, 1), (0, 1))


def test_pullback_of_augmentations():
    # R[e] x_R R[e] = R[e1, e2]/(e_i e_j)
    R = Z3
    D = dual_numbers(R)
    aug = AlgebraMorphism(D, trivial_algebra(R), Matrix(R, [[1, 0]]))
    P = algebra_pullback(aug, aug)
    assert P.algebra.carrier.cardinality == 27
    assert algebra_check(P.algebra).passed
    # square-zero elements are exactly b1 e1 + b2 e2 (a^2 = 0 forces a = 0 in Z/3)
    C = P.algebra.carrier
    nil = [x for x in C.elements() if C.is_zero_vector(P.algebra.mul(x, x))]
    assert len(nil) == 9


def test_semidirect_is_square_zero():
    M = FPModule.cyclic(ZZ, 2)
    A = semidirect(ZZ, M)
    assert algebra_check(A).passed
    m = A.basis(1)
    assert A.carrier.is_zero_vector(A.mul(m, m))
    assert semidirect(ZZ, FPModule.free(ZZ, 1)).table == dual_numbers(ZZ).table


def test_subalgebra_requires_closure():
    P = algebra_product(trivial_algebra(ZZ), trivial_algebra(ZZ))
    # the diagonal is a subalgebra
    alg, inc = subalgebra(P, FPModule.free(ZZ, 1), Matrix(ZZ, [[1], [1]]))
    assert algebra_check(alg).passed
    with pytest.raises(NotWellDefined):
        subalgebra(P, FPModule.free(ZZ, 1), Matrix(ZZ, [[1], [0]]))


def test_morphism_laws_report():
    D = dual_numbers(Z2)
    bad = AlgebraMorphism(D, D, Matrix(Z2, [[1, 1], [0, 0]]), check=False)
    rep = morphism_laws(bad)
    assert not rep.passed
    with pytest.raises(NotWellDefined):
        AlgebraMorphism(D, D, Matrix(Z2, [[1, 1], [0, 0]]))


def test_cyclic_algebra_and_non_unital():
    A = cyclic_algebra(ZZ, 4)
    assert algebra_check(A).passed
    N = Algebra(FPModule.free(ZZ, 1), [[(1,)]])
    with pytest.raises(NonUnital):
        N.require_unit()


def test_module_laws_detect_bad_action():
    D = dual_numbers(ZZ)
    good = AModule.regular(D)
    assert module_laws(good) is None
    # e acting as the identity violates e^2 = 0
    bad = AModule(D, D.carrier, [Matrix.identity(ZZ, 2), Matrix.identity(ZZ, 2)], check=False)
    assert module_laws(bad)[0] == "multiplication"


@pytest.mark.parametrize("R", [Z2, Z3], ids=str)
def test_derivation_spaces_match_brute_force(R):
    fam = algebra_family(R)
    for A in fam:
        for B in fam[:3]:
            for phi in hom_enumerate(A, B):
                N = AModule.regular(B)
                space = derivations(A, phi, N)
                assert space.cardinality == brute_force_derivations(A, phi, N)
                assert all(d.is_valid for d in space.elements())


@pytest.mark.parametrize("R", [ZZ, QQ, Modular(4), Z2, Z3, product(Z2, Z3)], ids=str)
def test_kaehler_agrees_with_ideal_oracle(R):
    for A in algebra_family(R):
        om = kaehler(A)
        assert kaehler_oracle(A, om).agrees
        assert om.d.is_valid


def test_kaehler_of_integer_dual_numbers():
    # by hand: Omega = A de / (2 e de), so de generates Z and e de generates Z/2
    om = kaehler(dual_numbers(ZZ))
    target = FPModule.from_relation_vectors(ZZ, 2, [[0, 2]])
    assert modules_isomorphic(om.module, target)
    assert sorted(om.module.invariant_factors()) == [0, 2]


def test_kaehler_of_base_ring_vanishes():
    assert kaehler(trivial_algebra(ZZ)).module.is_zero()
