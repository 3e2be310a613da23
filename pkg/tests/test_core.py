import pytest
from hypothesis import given, settings, strategies as st

from finitopo.core import (
    DimensionMismatch,
    MissingEmpty,
    MissingFull,
    NotClosedUnderIntersection,
    NotClosedUnderUnion,
    PointOutOfRange,
    CapExceeded,
    closure,
    delta_closure,
    delta_interior,
    discrete,
    indiscrete,
    interior,
    regular_closed_family,
    regular_open_family,
    space_from_json,
    subset,
    validate_space,
)
from finitopo.zoo import random_space

from oracle import Topo, is_topology, powerset


def S(*pts):
    return subset(pts)


@st.composite
def space_and_sets(draw, k=2):
    n = draw(st.integers(1, 6))
    sp = random_space(n, draw(st.integers(0, 10_000)), draw(st.floats(0.0, 1.0)))
    sets = [draw(st.integers(0, sp.full)) for _ in range(k)]
    return sp, sets


class TestValidate:
    def test_example_one(self, s1):
        assert s1.n == 4
        assert s1.opens == (0, S(0), S(1), S(0, 1), S(0, 2, 3), 0b1111)

    def test_sierpinski(self):
        sp = validate_space(2, [0, S(0), 0b11])
        assert len(sp.opens) == 3

    def test_missing_full(self):
        with pytest.raises(MissingFull):
            validate_space(2, [0, S(0), S(1)])

    def test_missing_empty(self):
        with pytest.raises(MissingEmpty):
            validate_space(2, [S(0), 0b11])

    def test_union_violation_names_pair(self):
        with pytest.raises(NotClosedUnderUnion) as err:
            validate_space(3, [0, S(0), S(1), 0b111])
        assert err.value.pair == (S(0), S(1))

    def test_intersection_violation(self):
        with pytest.raises(NotClosedUnderIntersection):
            validate_space(3, [0, S(0, 1), S(1, 2), 0b111])

    def test_point_out_of_range(self):
        with pytest.raises(PointOutOfRange):
            validate_space(2, [0, 0b100, 0b11])

    def test_cap(self):
        with pytest.raises(CapExceeded):
            validate_space(17, [0, (1 << 17) - 1])

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_accepts_exactly_topologies(self, n):
        X = frozenset(range(n))
        proper = [s for s in powerset(X) if s and s != X]
        for mask in range(1 << len(proper)):
            fam = [frozenset(), X] + [proper[i] for i in range(len(proper)) if mask >> i & 1]
            bits = [subset(u) for u in fam]
            try:
                validate_space(n, bits)
                ok = True
            except (NotClosedUnderUnion, NotClosedUnderIntersection):
                ok = False
            assert ok == is_topology(n, fam)

    def test_json_letters(self):
        sp = space_from_json({"opens": [[], ["a"], ["a", "b"]]})
        assert sp.labels == ("a", "b") and sp.opens == (0, 1, 3)

    def test_json_round_trip(self, s3):
        assert space_from_json(s3.to_json()) == s3
        plain = validate_space(3, [0, 1, 7])
        assert space_from_json(plain.to_json()) == plain


class TestOperators:
    def test_closure_examples(self, sier, s1):
        assert closure(sier, S(0)) == 0b11
        assert closure(s1, S(0)) == S(0, 2, 3)
        d = discrete(3)
        assert all(closure(d, a) == a for a in range(8))

    def test_interior_examples(self, s1):
        assert interior(indiscrete(3), S(0, 1)) == 0
        assert interior(s1, S(0, 2, 3)) == S(0, 2, 3)
        assert interior(s1, s1.full) == s1.full

    def test_delta_examples(self, sier, s1):
        assert delta_closure(indiscrete(3), S(1)) == 0b111
        assert all(delta_closure(discrete(3), a) == a for a in range(8))
        assert delta_closure(sier, S(1)) == 0b11
        assert delta_interior(s1, S(1)) == S(1)
        assert delta_interior(indiscrete(3), S(0, 1)) == 0

    def test_dimension_mismatch(self, s1):
        with pytest.raises(DimensionMismatch):
            closure(s1, 1 << 4)

    def test_regular_open(self, s1, sier):
        assert regular_open_family(s1) == [0, S(1), S(0, 2, 3), 0b1111]
        assert regular_open_family(discrete(3)) == list(range(8))
        assert regular_open_family(sier) == [0, 0b11]

    def test_against_oracle(self, small_spaces, random_spaces):
        for sp in small_spaces + random_spaces:
            t = Topo(sp.n, [[p for p in range(sp.n) if u >> p & 1] for u in sp.opens])
            for a in range(sp.size):
                A = frozenset(p for p in range(sp.n) if a >> p & 1)
                assert closure(sp, a) == subset(t.cl(A))
                assert interior(sp, a) == subset(t.int(A))
                assert delta_closure(sp, a) == subset(t.cl_delta(A))
                assert delta_interior(sp, a) == subset(t.int_delta(A))


@settings(max_examples=150, deadline=None)
@given(space_and_sets())
def test_kuratowski(data):
    sp, (a, b) = data
    c = closure(sp, a)
    assert a & ~c == 0
    assert closure(sp, c) == c
    assert closure(sp, 0) == 0
    assert closure(sp, a | b) == c | closure(sp, b)
    if a & ~b == 0:
        assert c & ~closure(sp, b) == 0


@settings(max_examples=150, deadline=None)
@given(space_and_sets(k=1))
def test_dualities(data):
    sp, (a,) = data
    full = sp.full
    assert interior(sp, a) == full ^ closure(sp, full ^ a)
    assert delta_interior(sp, a) == full ^ delta_closure(sp, full ^ a)
    assert closure(sp, a) & ~delta_closure(sp, a) == 0


@settings(max_examples=60, deadline=None)
@given(space_and_sets(k=0))
def test_regular_families(data):
    sp, _ = data
    ro = regular_open_family(sp)
    rc = set(regular_closed_family(sp))
    assert set(ro) <= set(sp.opens)
    assert all((sp.full ^ a in rc) for a in ro)
    assert len(ro) == len(rc)
