import pytest

from tangentoids import (
    ZZ,
    AModule,
    AlgebraMorphism,
    FormalTangentAlgebra,
    Matrix,
    Modular,
    TangentStructureInstance,
    adjunction_check,
    algebra_check,
    biproduct_tangentoid,
    build_tangentoid,
    dual_numbers,
    dual_numbers_tangentoid,
    hom_enumerate,
    kaehler,
    kaehler_adjoint_hom,
    monic_quotient,
    naturality_check,
    product,
    product_ring_solid,
    tangent_apply,
    tangent_map,
    trivial_algebra,
    trivial_tangentoid,
)
from tangentoids.algebras import Derivation, Kaehler
from tangentoids.errors import AmbientMismatch, InfiniteEnumeration, NotCoexponentiable
from tangentoids.functor import dual_extension, dual_extension_comparison, kaehler_universality
from tangentoids.modules import presentation_signature
from tangentoids.solid import cyclic_solid

from helpers import algebra_family

Z2, Z3 = Modular(2), Modular(3)


def test_tangent_of_dual_numbers_has_rank_four():
    T = TangentStructureInstance(dual_numbers_tangentoid(ZZ))
    A = tangent_apply(T, dual_numbers(ZZ))
    assert A.ngens == 4 and algebra_check(A).passed


def test_trivial_structure_returns_the_algebra():
    T = TangentStructureInstance(trivial_tangentoid(Z3))
    for A in algebra_family(Z3):
        TA = tangent_apply(T, A)
        assert TA.ngens == A.ngens and TA.table == A.table


def test_tensor_presentation_over_torsion_coefficients():
    T = TangentStructureInstance(build_tangentoid(ZZ, cyclic_solid(ZZ, 2)))
    TA = tangent_apply(T, dual_numbers(ZZ))
    # Z x| Z/2 tensored with Z^2: Z^2 (+) (Z/2)^2
    assert sorted(presentation_signature(TA.carrier)[0]) == [0, 0, 2, 2]


@pytest.mark.parametrize("R", [ZZ, Z2, Modular(6)], ids=str)
def test_dual_extension_is_certified(R):
    T = TangentStructureInstance(dual_numbers_tangentoid(R))
    for A in algebra_family(R):
        assert dual_extension_comparison(T, A) is not None
        assert algebra_check(dual_extension(A)).passed


def test_functor_laws():
    T = TangentStructureInstance(dual_numbers_tangentoid(Z2))
    fam = algebra_family(Z2)
    for A in fam:
        ident = tangent_map(T, A.identity())
        assert ident.matrix == T.apply(A).carrier.identity_matrix()
    count = 0
    for A in fam:
        for B in fam:
            for f in hom_enumerate(A, B):
                for C in fam[:3]:
                    for g in hom_enumerate(B, C):
                        lhs = tangent_map(T, g @ f).matrix
                        rhs = (tangent_map(T, g) @ tangent_map(T, f)).matrix
                        assert lhs == rhs
                        count += 1
    assert count > 20


def test_augmentation_maps_to_a_projection():
    R = Z2
    T = TangentStructureInstance(dual_numbers_tangentoid(R))
    D = dual_numbers(R)
    aug = AlgebraMorphism(D, trivial_algebra(R), Matrix(R, [[1, 0]]))
    Taug = tangent_map(T, aug)
    # basis 1(x)1, 1(x)e, e(x)1, e(x)e -> 1, 0, e, 0
    assert Taug.matrix == Matrix(R, [[1, 0, 0, 0], [0, 0, 1, 0]])


@pytest.fixture
def natural_setup():
    T = TangentStructureInstance(dual_numbers_tangentoid(Z2))
    fam = algebra_family(Z2)
    mors = [f for A in fam for B in fam for f in hom_enumerate(A, B)]
    return T, fam, mors


def test_naturality(natural_setup):
    T, fam, mors = natural_setup
    rep = naturality_check(T, mors)
    assert rep.passed and len(rep.entries) == 5 * len(mors)
    assert naturality_check(T, [A.identity() for A in fam]).passed


def test_corrupted_sum_breaks_naturality(natural_setup):
    T, fam, mors = natural_setup
    A = fam[1]
    comp = T.components(A)
    rows = [list(r) for r in comp.s.rows]
    rows[0][0], rows[0][1] = rows[0][1], rows[0][0]
    comp.s = Matrix(Z2, rows, comp.s.ncols)
    rep = naturality_check(T, mors)
    assert {e.component for e in rep.failures()} == {"s"}
    assert all(e.counterexample is not None for e in rep.failures())


def test_instance_preconditions():
    with pytest.raises(AmbientMismatch):
        TangentStructureInstance(biproduct_tangentoid(ZZ))
    bad = dual_numbers_tangentoid(ZZ)
    bad.s = Matrix(ZZ, [[1, 0, 0], [0, 0, 1]])
    with pytest.raises(AmbientMismatch):
        TangentStructureInstance(bad)


def test_adjunction_dual_numbers():
    T = TangentStructureInstance(dual_numbers_tangentoid(Z2))
    D = dual_numbers(Z2)
    rep = adjunction_check(T, D, D)
    assert rep.passed and rep.left == rep.right == 8
    assert sorted(j for _, j in rep.bijection) == list(range(8))


def test_adjunction_from_the_base_ring():
    T = TangentStructureInstance(dual_numbers_tangentoid(Z3))
    for B in algebra_family(Z3):
        rep = adjunction_check(T, trivial_algebra(Z3), B)
        assert rep.left == rep.right == 1


def test_trivial_adjunction_is_hom():
    T = TangentStructureInstance(trivial_tangentoid(Z2))
    fam = algebra_family(Z2)
    for A in fam:
        for B in fam:
            rep = adjunction_check(T, A, B)
            assert rep.passed and rep.left == len(hom_enumerate(A, B))


def test_product_ring_adjunction():
    R, M, w = product_ring_solid(Z2)
    T = TangentStructureInstance(build_tangentoid(R, M, w))
    fam = algebra_family(R)[:3]
    for A in fam:
        for B in fam:
            assert adjunction_check(T, A, B).passed


def test_adjunction_refusals():
    with pytest.raises(InfiniteEnumeration):
        adjunction_check(TangentStructureInstance(dual_numbers_tangentoid(ZZ)),
                         dual_numbers(ZZ), dual_numbers(ZZ))
    Z4 = Modular(4)
    T = TangentStructureInstance(build_tangentoid(Z4, cyclic_solid(Z4, 2)))
    with pytest.raises(NotCoexponentiable):
        adjunction_check(T, dual_numbers(Z4), dual_numbers(Z4))


def test_kaehler_pairs():
    D = dual_numbers(Z2)
    R = trivial_algebra(Z2)
    assert len(kaehler_adjoint_hom(R, D)) == 1
    pairs = kaehler_adjoint_hom(D, R)
    # only the augmentation; Hom_A(Omega, Z/2) = Der(A, Z/2) = (m/m^2)^* has 2 elements
    assert {phi.key() for phi, _ in pairs} == {((1,), (0,))}
    assert len(pairs) == 2


@pytest.mark.parametrize("R", [Z2, Z3], ids=str)
def test_kaehler_counts_match_adjunction(R):
    T = TangentStructureInstance(dual_numbers_tangentoid(R))
    fam = algebra_family(R)
    for A in fam:
        for B in fam:
            assert len(kaehler_adjoint_hom(A, B)) == adjunction_check(T, A, B).left


def test_formal_tangent_algebra_counts():
    T = TangentStructureInstance(dual_numbers_tangentoid(Z2))
    fam = algebra_family(Z2)
    for A in fam:
        F = FormalTangentAlgebra.of(T, A)
        for B in fam:
            assert F.hom_count(B) == len(hom_enumerate(A, T.apply(B)))


def test_kaehler_universality_detects_wrong_d():
    A = monic_quotient(ZZ, [0, 0, 0])
    om = kaehler(A)
    assert kaehler_universality(A, AModule.regular(A), om)
    broken = Kaehler(om.omega, Derivation(om.d.phi, om.omega, om.d.matrix.scale(2)))
    assert not kaehler_universality(A, AModule.regular(A), broken)
