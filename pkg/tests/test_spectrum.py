import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dgloci.dgring import BaseAlgebra, CohomologyTable
from dgloci.errors import InputError, UnsupportedError
from dgloci.modcomplex import PresentedModule
from dgloci.polyalg import FieldSpec, Ideal, PolyRing
from dgloci.spectrum import (
    ConstructibleSet,
    MinimalPrimesSource,
    amp_stratification,
    combine,
    complement,
    cover_union,
    difference,
    intersection,
    irreducible_cover,
    is_dense_open,
    is_empty,
    minimal_primes,
    support,
    union,
)

F5 = FieldSpec(5)
R = PolyRing(F5, ["x", "y"])
S = PolyRing(F5, ["x", "y", "z"])
PLANE = BaseAlgebra.polynomial(R)
NODE = BaseAlgebra(R, Ideal(R, ["x*y"]))
TWO = BaseAlgebra(S, Ideal(S, ["x*y", "x*z"]))


def I(*gens, ring=R):
    return Ideal(ring, list(gens))


def point(a, b):
    return I(f"x - {a}", f"y - {b}")


POINTS = [point(a, b) for a, b in itertools.product(range(5), repeat=2)]
GENERIC = [I(), I("x"), I("y"), I("x - y"), I("y - x^2")]


def test_support_examples():
    assert support(PresentedModule.free(R, 1), PLANE).same_set(ConstructibleSet.whole(PLANE))
    assert support(PresentedModule.cyclic(I("x")), PLANE).same_set(ConstructibleSet.closed_set(PLANE, I("x")))
    assert support(PresentedModule.zero(R), PLANE).is_empty()


def test_combine_examples():
    Vx = ConstructibleSet.closed_set(PLANE, I("x"))
    Vy = ConstructibleSet.closed_set(PLANE, I("y"))
    assert combine([complement(Vx), Vx], "intersection").is_empty()
    assert combine([Vx, Vy], "union").same_set(ConstructibleSet.closed_set(PLANE, I("x*y")))
    assert combine([ConstructibleSet.empty(PLANE)], "complement").same_set(ConstructibleSet.whole(PLANE))
    with pytest.raises(InputError):
        combine([Vx, Vy], "xor")


def test_emptiness_examples():
    assert ConstructibleSet.locally_closed(PLANE, I("x^2"), I("x")).is_empty()
    assert not ConstructibleSet.locally_closed(PLANE, I("x"), I("y")).is_empty()
    assert is_empty(ConstructibleSet.empty(PLANE))


def test_repr_is_readable():
    X = ConstructibleSet.locally_closed(PLANE, I("x*y"), I("x"))
    assert repr(X) == "{V(x*y)\\V(x)}"


def test_minimal_primes_examples():
    assert [p.canonical() for p in minimal_primes(NODE)] == [("x",), ("y",)]
    assert [p.canonical() for p in minimal_primes(TWO)] == [("x",), ("y", "z")]
    cusp = BaseAlgebra(R, I("y^2 - x^3"))
    src = MinimalPrimesSource.declared([I("y^2 - x^3")])
    assert minimal_primes(cusp, src) == [I("y^2 - x^3")]


def test_non_monomial_needs_declaration():
    with pytest.raises(UnsupportedError):
        minimal_primes(BaseAlgebra(R, I("y^2 - x^3")))


def test_bad_declarations_rejected():
    with pytest.raises(InputError):
        minimal_primes(NODE, MinimalPrimesSource.declared([I("x")]))
    with pytest.raises(InputError):
        minimal_primes(NODE, MinimalPrimesSource.declared([I("x"), I("x", "y")]))
    with pytest.raises(InputError):
        minimal_primes(NODE, MinimalPrimesSource.declared([I("x + 1"), I("y")]))


def test_dense_open_examples():
    primes = minimal_primes(NODE)
    both = union(ConstructibleSet.open_set(NODE, I("x")), ConstructibleSet.open_set(NODE, I("y")))
    assert is_dense_open(both, primes)
    assert not is_dense_open(ConstructibleSet.open_set(NODE, I("x")), primes)
    assert is_dense_open(ConstructibleSet.whole(NODE), primes)
    with pytest.raises(ValueError):
        is_dense_open(ConstructibleSet.closed_set(NODE, I("x")), primes)


def test_cover_examples():
    cover = irreducible_cover(NODE)
    assert [(str(f), p.canonical()) for f, p in cover] == [("y", ("x",)), ("x", ("y",))]
    dom = BaseAlgebra(R, I("y^2 - x^3"))
    cover = irreducible_cover(dom, MinimalPrimesSource.declared([I("y^2 - x^3")]))
    assert [(str(f), p.canonical()) for f, p in cover] == [("1", ("x^3 - y^2",))]
    cover = irreducible_cover(TWO)
    assert [p.canonical() for _, p in cover] == [("x",), ("y", "z")]


@pytest.mark.parametrize("base", [NODE, TWO], ids=["node", "plane-and-line"])
def test_cover_invariants(base):
    primes = minimal_primes(base)
    cover = irreducible_cover(base)
    pieces = [ConstructibleSet.open_set(base, Ideal(base.ring, [f])) for f, _ in cover]
    for a, b in itertools.combinations(pieces, 2):
        assert intersection(a, b).is_empty()
    assert is_dense_open(cover_union(base, cover), primes)
    for (f, p), piece in zip(cover, pieces):
        inside = [q for q in primes if piece.contains_prime(q)]
        assert inside == [p]


def test_amp_stratification_partitions_spec():
    J = I("x*y")
    T = CohomologyTable(J, {0: PresentedModule.cyclic(J), -1: PresentedModule.cyclic(I("x", "y"))})
    strata = amp_stratification(T, NODE)
    assert [(s.inf, s.sup) for s in strata] == [(-1, 0), (0, 0)]
    assert strata[0].region.same_set(ConstructibleSet.closed_set(NODE, I("x", "y")))
    regions = [s.region for s in strata]
    assert combine(regions, "union").same_set(ConstructibleSet.whole(NODE))
    for a, b in itertools.combinations(regions, 2):
        assert intersection(a, b).is_empty()


def test_support_matches_localization():
    # M_q = 0 exactly when some element of Ann(M) is a unit at q
    M = PresentedModule.cyclic(I("x^2", "x*y"))
    X = support(M, PLANE)
    for q in POINTS + GENERIC:
        local_zero = any(not q.contains(g) for g in M.annihilator().generators)
        assert X.contains_prime(q) == (not local_zero)


# boolean laws ---------------------------------------------------------------

POOL = ["x", "y", "x*y", "x - y", "x + 1", "y^2 - x", "x^2"]


def atoms():
    ideal = st.lists(st.sampled_from(POOL), min_size=0, max_size=2).map(lambda g: I(*g))
    return st.one_of(
        ideal.map(lambda J: ConstructibleSet.closed_set(PLANE, J)),
        ideal.map(lambda J: ConstructibleSet.open_set(PLANE, J)),
        st.tuples(ideal, ideal).map(lambda p: ConstructibleSet.locally_closed(PLANE, p[0], p[1])),
    )


def members(X):
    return [X.contains_prime(q) for q in POINTS + GENERIC]


@settings(max_examples=40, deadline=None)
@given(atoms(), atoms())
def test_operations_are_pointwise(X, Y):
    mx, my = members(X), members(Y)
    assert members(union(X, Y)) == [a or b for a, b in zip(mx, my)]
    assert members(intersection(X, Y)) == [a and b for a, b in zip(mx, my)]
    assert members(complement(X)) == [not a for a in mx]
    assert members(difference(X, Y)) == [a and not b for a, b in zip(mx, my)]


@settings(max_examples=25, deadline=None)
@given(atoms(), atoms())
def test_boolean_identities(X, Y):
    assert complement(complement(X)).same_set(X)
    assert intersection(X, complement(X)).is_empty()
    assert union(X, complement(X)).same_set(ConstructibleSet.whole(PLANE))
    assert complement(union(X, Y)).same_set(intersection(complement(X), complement(Y)))
    assert X.subset_of(union(X, Y))
    assert intersection(X, Y).subset_of(Y)
