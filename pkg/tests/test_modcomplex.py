import pytest

from dgloci.errors import InputError, ResourceError
from dgloci.modcomplex import (
    INFINITE,
    Complex,
    ComplexMap,
    FreeComplex,
    PresentedModule,
    cone,
    dual_into_ring,
    euler_characteristic,
    free_resolution_of_complex,
    homology_at,
)
from dgloci.dgring import koszul_matrix
from dgloci.polyalg import FieldSpec, Ideal, Matrix, PolyRing

F5 = FieldSpec(5)
R = PolyRing(F5, ["x", "y"])
S = PolyRing(F5, ["x", "y", "z"])


def koszul(ring, elements, J=None):
    els = [ring(e) for e in elements]
    c = len(els)
    from math import comb

    mods = {-i: PresentedModule.free(ring, comb(c, i), J) for i in range(c + 1)}
    maps = {-i: koszul_matrix(ring, els, i) for i in range(1, c + 1)}
    return Complex(ring, mods, maps)


def lengths(C):
    return {n: H.length() for n, H in C.homology_table().items()}


def test_module_length_and_annihilator():
    M = PresentedModule.cyclic(Ideal(R, ["x^2", "y^3"]))
    assert M.length() == 6
    assert M.annihilator() == Ideal(R, ["x^2", "y^3"])
    N = PresentedModule(R, 2, Matrix.from_columns(R, 2, [["x", 0], [0, "y"]]))
    assert N.annihilator() == Ideal(R, ["x*y"])
    assert N.length() == INFINITE
    assert PresentedModule.free(R, 2, Ideal(R, ["x", "y"])).length() == 2


def test_annihilator_kills_module():
    M = PresentedModule(R, 2, Matrix.from_columns(R, 2, [["x^2", "y"], ["y", 0], [0, "x*y"]]))
    for g in M.annihilator().generators:
        for i in range(2):
            assert M.contains_relation({(i, e): c for e, c in g.terms.items()})


def test_zero_module():
    assert PresentedModule.cyclic(Ideal(R, ["x", "1 - x"])).is_zero()
    assert PresentedModule.zero(R).length() == 0


def test_regular_and_quotient():
    B = PresentedModule.cyclic(Ideal(R, ["x*y"]))
    assert B.is_regular("x + y")
    assert not B.is_regular("x")
    assert B.quotient_by("x").annihilator() == Ideal(R, ["x"])
    assert B.multiplication_kernel("x").annihilator() == Ideal(R, ["x"])


def test_koszul_on_variables_resolves_residue_field():
    C = koszul(S, ["x", "y", "z"])
    assert lengths(C) == {0: 1}


def test_koszul_on_repeated_element():
    C = koszul(R, ["x", "x"])
    # H^0 = P/(x), H^{-1} = P/(x), nothing in degree -2
    table = C.homology_table()
    assert sorted(table) == [-1, 0]
    assert table[-1].annihilator() == Ideal(R, ["x"])


def test_euler_characteristic_of_artinian_koszul():
    C = koszul(R, ["x", "y"], Ideal(R, ["x^3", "y^3"]))
    table = C.homology_table()
    # terms have lengths 9, 18, 9 so the alternating sum is zero
    assert euler_characteristic(table) == 0
    assert table[-1].length() == 2
    assert table[-2].length() == 1


def test_bad_differential_rejected():
    d = Matrix.from_rows(R, [["x"]])
    with pytest.raises(InputError):
        FreeComplex(R, {-1: 1, 0: 1, 1: 1}, {-1: d, 0: d})
    with pytest.raises(InputError):
        FreeComplex(R, {0: 1, 1: 1}, {0: Matrix.from_rows(R, [["x", "y"]])})


def test_non_commuting_map_rejected():
    C = FreeComplex(R, {-1: 1, 0: 1}, {-1: Matrix.from_rows(R, [["x"]])})
    with pytest.raises(InputError):
        ComplexMap(C, C, {0: Matrix.from_rows(R, [["1"]])})


def test_cone_of_multiplication():
    C = FreeComplex(R, {0: 1})
    K = cone(ComplexMap.multiplication(C, "x"))
    assert K.ranks() == {-1: 1, 0: 1}
    assert lengths(K) == {0: INFINITE}
    assert homology_at(K, 0).annihilator() == Ideal(R, ["x"])


def test_cone_long_exact_sequence_lengths():
    C = koszul(R, ["x", "y"], Ideal(R, ["x^3", "y^3"]))
    K = cone(ComplexMap.multiplication(C, "x"))
    for n in range(-3, 1):
        H, H1 = homology_at(C, n), homology_at(C, n + 1)
        expect = H.quotient_by("x").length() + H1.multiplication_kernel("x").length()
        assert homology_at(K, n).length() == expect


def test_resolution_of_residue_field_three_variables():
    C = Complex(S, {0: PresentedModule.cyclic(Ideal(S, ["x", "y", "z"]))})
    F = free_resolution_of_complex(C)
    assert F.ranks() == {-3: 1, -2: 3, -1: 3, 0: 1}
    assert lengths(F) == {0: 1}


@pytest.mark.parametrize("method", ["cone", "tensor"])
def test_resolution_methods_agree(method):
    J = Ideal(R, ["x*y"])
    C = koszul(R, ["x + y"], J)
    F = free_resolution_of_complex(C, method=method)
    assert {n: H.annihilator() for n, H in F.homology_table().items()} == {
        n: H.annihilator() for n, H in C.homology_table().items()
    }
    D = dual_into_ring(F)
    table = {n: H.length() for n, H in D.homology_table(range(-4, 5)).items()}
    # B/(x+y) is a complete intersection of length 2 in degree 2 of the dual
    assert table == {2: 2}


def test_dual_and_double_dual():
    F = koszul(R, ["x", "y"])
    D = dual_into_ring(F)
    assert D.ranks() == {0: 1, 1: 2, 2: 1}
    assert lengths(D) == {2: 1}
    DD = dual_into_ring(D)
    assert DD.ranks() == F.ranks()
    assert lengths(DD) == lengths(F)


def test_dual_needs_free_complex():
    C = Complex(R, {0: PresentedModule.cyclic(Ideal(R, ["x"]))})
    with pytest.raises(InputError):
        dual_into_ring(C)


def test_negative_window_rejected():
    C = Complex(R, {0: PresentedModule.cyclic(Ideal(R, ["x"]))})
    with pytest.raises(ResourceError):
        free_resolution_of_complex(C, window=-1)


P1 = PolyRing(F5, ["x"])
X2 = Ideal(P1, ["x^2"])


def mult_x_mod_x2():
    mods = {-1: PresentedModule.free(P1, 1, X2), 0: PresentedModule.free(P1, 1, X2)}
    return Complex(P1, mods, {-1: Matrix.from_rows(P1, [["x"]])})


def test_homology_of_principal_koszul():
    C = koszul(P1, ["x"])
    assert homology_at(C, 0).annihilator() == Ideal(P1, ["x"])
    assert homology_at(C, -1).is_zero()


def test_homology_of_multiplication_on_dual_numbers():
    H = homology_at(mult_x_mod_x2(), -1)
    assert H.annihilator() == Ideal(P1, ["x"])
    assert H.length() == 1


def test_module_examples():
    assert PresentedModule.cyclic(Ideal(R, ["x"])).direct_sum(
        PresentedModule.cyclic(Ideal(R, ["y"]))
    ).annihilator() == Ideal(R, ["x*y"])
    assert PresentedModule.free(R, 2).annihilator().is_zero()
    assert PresentedModule.cyclic(Ideal(R, ["x^2", "x*y"])).annihilator() == Ideal(R, ["x^2", "x*y"])
    assert PresentedModule.cyclic(Ideal(R, ["x", "y"])).length() == 1
    assert PresentedModule.cyclic(Ideal(R, ["x^2", "y"])).length() == 2
    assert PresentedModule.cyclic(Ideal(R, ["x*y"])).length() == INFINITE


def test_cone_examples():
    C = FreeComplex(R, {0: 1})
    assert lengths(cone(ComplexMap.multiplication(C, 1))) == {}
    K = cone(ComplexMap.multiplication(C, "x"))
    assert K.d(-1) == Matrix.from_rows(R, [["x"]])
    M = Complex(P1, {0: PresentedModule.free(P1, 1, X2)})
    Kx = cone(ComplexMap.multiplication(M, "x"))
    table = Kx.homology_table()
    assert sorted(table) == [-1, 0]
    assert all(H.annihilator() == Ideal(P1, ["x"]) for H in table.values())


def test_resolution_examples():
    C = Complex(R, {0: PresentedModule.cyclic(Ideal(R, ["x*y"]))})
    F = free_resolution_of_complex(C)
    assert F.ranks() == {-1: 1, 0: 1}
    assert F.d(-1) == Matrix.from_rows(R, [["x*y"]])
    free = FreeComplex(R, {0: 1})
    assert free_resolution_of_complex(free) is free
    G = free_resolution_of_complex(mult_x_mod_x2())
    assert G.ranks() == {-2: 1, -1: 2, 0: 1}
    assert lengths(G) == lengths(mult_x_mod_x2()) == {-1: 1, 0: 1}


def test_dual_examples():
    F = FreeComplex(R, {-1: 1, 0: 1}, {-1: Matrix.from_rows(R, [["x*y"]])})
    D = dual_into_ring(F)
    assert D.ranks() == {0: 1, 1: 1}
    table = D.homology_table()
    assert list(table) == [1]
    assert table[1].annihilator() == Ideal(R, ["x*y"])
    assert dual_into_ring(FreeComplex(R, {0: 1})).ranks() == {0: 1}
