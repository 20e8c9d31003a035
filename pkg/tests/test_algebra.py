import itertools
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vbquiver.algebra import (
    AbelianGroup,
    ParameterError,
    StructureError,
    VirtualBiquandle,
    compose,
    cyclic_group_table,
    endomorphism_witness,
    enumerate_endomorphisms,
    make_alexander_vbq,
    make_group_vbq,
    symmetric_group_table,
    validate_endomorphism,
    validate_virtual_biquandle,
)

moduli = st.lists(st.integers(1, 5), min_size=1, max_size=3).map(tuple)


@given(moduli, st.data())
def test_rank_round_trip(ms, data):
    A = AbelianGroup(ms)
    r = data.draw(st.integers(0, A.order - 1))
    assert A.rank(A.element(r)) == r
    assert [A.rank(e) for e in A.elements()] == list(range(A.order))


@given(moduli, st.data())
def test_group_laws(ms, data):
    A = AbelianGroup(ms)
    a, b = (A.element(data.draw(st.integers(0, A.order - 1))) for _ in range(2))
    assert A.add(a, b) == A.add(b, a)
    assert A.add(a, A.neg(a)) == A.zero
    assert A.scale(3, a) == A.sum([a, a, a])


def test_integer_elements_only_for_cyclic_groups():
    assert AbelianGroup.cyclic(5).normalize(7) == (2,)
    with pytest.raises(StructureError):
        AbelianGroup((2, 2)).normalize(1)
    with pytest.raises(StructureError):
        AbelianGroup((0,))
    assert AbelianGroup((2, 3)).format((1, 5)) == "(1,2)"


def units(n):
    return [a for a in range(1, n) if gcd(a, n) == 1] or [0]


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 9).flatmap(lambda n: st.tuples(st.just(n), *(st.sampled_from(units(n)),) * 3)))
def test_alexander_tables_are_virtual_biquandles(params):
    n, t, s, a = params
    X = make_alexander_vbq(n, t, s, a)
    assert X.validate().ok
    # multiplication by any unit is an endomorphism
    for u in units(n):
        assert validate_endomorphism(X, [(u * x) % n + 1 for x in range(n)])


def test_alexander_rejects_non_units():
    with pytest.raises(ParameterError, match="t=2"):
        make_alexander_vbq(6, 2, 1, 1)
    with pytest.raises(ParameterError, match="a=3"):
        make_alexander_vbq(6, 1, 1, 3)


@pytest.mark.parametrize(
    "table",
    [cyclic_group_table(1), cyclic_group_table(2), cyclic_group_table(4), cyclic_group_table(5), symmetric_group_table(3)],
    ids=["trivial", "Z2", "Z4", "Z5", "S3"],
)
def test_group_construction_validates(table):
    assert make_group_vbq(table).validate().ok


def test_group_construction_rejects_non_groups():
    with pytest.raises(ParameterError, match="identity"):
        make_group_vbq([[1, 2], [1, 2]])
    with pytest.raises(ParameterError, match="inverse"):
        make_group_vbq([[1, 2], [2, 2]])


def test_malformed_tables():
    with pytest.raises(StructureError, match="bijection"):
        VirtualBiquandle.from_tables([[1, 1], [2, 2]], [[1, 1], [2, 2]], [1, 1])
    with pytest.raises(StructureError):
        VirtualBiquandle.from_tables([[1, 3], [2, 2]], [[1, 1], [2, 2]], [1, 2])
    with pytest.raises(StructureError):
        validate_virtual_biquandle([[1, 1]], [[1, 1], [2, 2]], [1, 2])


def test_tables_round_trip():
    X = make_alexander_vbq(5, 2, 3, 4)
    t = X.tables()
    assert VirtualBiquandle.from_tables(t["under"], t["over"], t["v"]) == X


def test_broken_axiom_has_witness():
    t = make_alexander_vbq(5, 2, 3, 1).tables()
    v = [2, 1, 3, 4, 5]  # a transposition does not commute with x -> 2x + y
    report = validate_virtual_biquandle(t["under"], t["over"], v)
    assert report.axioms() == {"iv-under", "iv-over"}
    x, y = report.first("iv-under").witness
    U = t["under"]
    assert v[U[x - 1][y - 1] - 1] != U[v[x - 1] - 1][v[y - 1] - 1]


@pytest.mark.parametrize("n,t,s,a", [(4, 1, 3, 3), (5, 2, 3, 1), (6, 5, 1, 5)])
def test_endomorphisms_form_a_monoid(n, t, s, a):
    X = make_alexander_vbq(n, t, s, a)
    ends = set(enumerate_endomorphisms(X))
    assert tuple(range(1, n + 1)) in ends
    for f, g in itertools.product(ends, repeat=2):
        assert compose(f, g) in ends
    for sigma in itertools.product(range(1, n + 1), repeat=n):
        assert (sigma in ends) == (endomorphism_witness(X, sigma) is None)


def test_endomorphism_cap():
    with pytest.raises(ParameterError, match="cap"):
        enumerate_endomorphisms(make_alexander_vbq(7, 3, 2, 4))
    assert len(enumerate_endomorphisms(make_alexander_vbq(7, 3, 2, 4), cap=7)) == 7
