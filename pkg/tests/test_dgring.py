import threading

import pytest

from dgloci.dgring import (
    BaseAlgebra,
    Koszul,
    TrivialExt,
    amplitude_bounds,
    build_dg,
    dg_quotient,
    find_max_regular_sequence,
    is_regular_element,
)
from dgloci.errors import InputError, UnsupportedError
from dgloci.polyalg import FieldSpec, Ideal, PolyRing

F3, F5 = FieldSpec(3), FieldSpec(5)
R = PolyRing(F5, ["x", "y"])
S = PolyRing(F5, ["x", "y", "z"])
P1 = PolyRing(F5, ["x"])


def koszul(ring, elements, ideal=()):
    return build_dg(BaseAlgebra(ring, Ideal(ring, ideal)), Koszul(tuple(ring(e) for e in elements)))


def trivial(ring, ideal=(), k=2, r=2):
    return build_dg(BaseAlgebra(ring, Ideal(ring, ideal)), TrivialExt(-k, r))


def test_build_shapes():
    assert koszul(R, ["x", "y"]).complex().ranks() == {-2: 1, -1: 2, 0: 1}
    A = koszul(P1, [])
    assert A.complex().ranks() == {0: 1}
    assert amplitude_bounds(A.cohomology_table()) == (0, 0, 0)
    T = trivial(R, ["x*y"])
    assert T.complex().ranks() == {-2: 2, 0: 1}


def test_zero_ring_rejected():
    with pytest.raises(InputError):
        BaseAlgebra(R, Ideal(R, ["1"]))
    with pytest.raises(InputError):
        trivial(R, k=0)


def test_cohomology_examples():
    T = koszul(S, ["x", "y", "z"]).cohomology_table()
    assert T.degrees == [0]
    assert T[0].length() == 1
    T = koszul(R, ["x", "x"]).cohomology_table()
    assert T.degrees == [-1, 0]
    assert T.annihilator(-1) == T.annihilator(0) == Ideal(R, ["x"])
    t = PolyRing(F3, ["t"])
    T = trivial(t).cohomology_table()
    assert T.degrees == [-2, 0]
    assert T[-2].rank == 2 and T[-2].is_free()


def test_amplitude_examples():
    assert amplitude_bounds(trivial(R, ["x*y"]).cohomology_table()) == (-2, 0, 2)
    assert amplitude_bounds(koszul(R, ["x", "x"]).cohomology_table()) == (-1, 0, 1)
    assert amplitude_bounds(koszul(R, ["x", "y"]).cohomology_table()) == (0, 0, 0)


def test_koszul_on_variable_subsets_is_acyclic():
    for els in (["x"], ["y", "z"], ["x", "y", "z"], ["x", "z"]):
        T = koszul(S, els).cohomology_table()
        assert T.degrees == [0]


def test_koszul_h0_is_quotient():
    A = koszul(R, ["x^2 - y", "y^2"], ["x*y"])
    assert A.h0_ideal == Ideal(R, ["x*y", "x^2 - y", "y^2"])
    assert A.cohomology_table().annihilator(0) == A.h0_ideal


def test_regular_element_examples():
    assert is_regular_element(trivial(P1), "x")
    assert not is_regular_element(koszul(P1, ["x"], ["x^2"]), "x")
    assert not is_regular_element(koszul(R, [], ["x*y"]), "x")
    assert is_regular_element(koszul(R, [], ["x*y"]), "x + y")


def test_quotient_examples():
    A = dg_quotient(trivial(P1), "x")
    assert A.is_trivial_ext()
    assert A.h0_ideal == Ideal(P1, ["x"])
    assert [H.length() for H in A.cohomology_table().entries.values()] == [2, 1]
    B = dg_quotient(koszul(R, ["x"]), "y")
    assert [str(e) for e in B.construction.elements] == ["x", "y"]
    C = dg_quotient(koszul(P1, []), "x")
    assert C.cohomology_table()[0].length() == 1
    with pytest.raises(UnsupportedError):
        dg_quotient(trivial(R, ["x*y"]), "x")


def test_max_regular_sequence_examples():
    assert [str(f) for f in find_max_regular_sequence(trivial(R), ["x", "y"])] == ["x", "y"]
    node = koszul(R, [], ["x*y"])
    assert find_max_regular_sequence(node, ["x", "y"]) == []
    assert [str(f) for f in find_max_regular_sequence(node, ["x", "y", "x + y"])] == ["x + y"]
    assert find_max_regular_sequence(koszul(R, ["x", "y"])) == []


def test_default_pool_reaches_artinian():
    for A in (trivial(R, ["x*y"]), koszul(S, ["x*y"]), koszul(R, [], ["y^2 - x^3"])):
        seq = find_max_regular_sequence(A)
        quotient = A
        for f in seq:
            quotient = dg_quotient(quotient, f)
        assert quotient.h0_dimension() == 0


def test_concurrent_cohomology_is_consistent():
    A = koszul(S, ["x*y", "x*z", "y*z"])
    out = []

    def work():
        out.append({n: str(H.annihilator()) for n, H in A.cohomology_table().entries.items()})

    threads = [threading.Thread(target=work) for _ in range(6)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(out) == 6
    assert all(o == out[0] for o in out)
