import pytest
from hypothesis import given, strategies as st

from heckemod.combinat import compositions_of
from heckemod.segments import Multisegment, Segment, enumerate_multisegments, is_aperiodic, preceq
from oracles import brute_aperiodic, brute_multisegments, brute_preceq


def M(pairs, e):
    return Multisegment(pairs, e)


def test_aperiodic_examples():
    assert is_aperiodic(M([(0, 1), (0, 1), (5, 2)], 0))
    assert not is_aperiodic(M([(0, 1), (1, 1), (2, 1)], 3))
    assert is_aperiodic(M([(0, 3)], 3))


def test_preceq_examples():
    a = M([(0, 1), (1, 1)], 0)
    b = M([(0, 2)], 0)
    assert preceq(a, a)
    assert preceq(a, b)
    assert not preceq(b, a)
    with pytest.raises(ValueError):
        preceq(a, M([(0, 3)], 0))


def test_enumerate_examples():
    assert enumerate_multisegments(0, 0, support=[]) == [Multisegment((), 0)]
    two = enumerate_multisegments(2, 0, support=[0, 1])
    assert set(two) == {M([(0, 2)], 0), M([(0, 1), (1, 1)], 0)}
    three = enumerate_multisegments(3, 3, support=[0, 1, 2], aperiodic_only=True)
    expected = {M([(a, 3)], 3) for a in range(3)} | {M([(a, 2), (a + 2, 1)], 3) for a in range(3)}
    assert set(three) == expected and len(three) == 6


def test_e_zero_needs_a_window():
    with pytest.raises(ValueError):
        enumerate_multisegments(2, 0)
    assert len(enumerate_multisegments(2, 0, starts=[0, 1])) == len(brute_multisegments(2, 0, [0, 1]))


@pytest.mark.parametrize("e", [2, 3, 4])
@pytest.mark.parametrize("n", range(0, 6))
def test_enumeration_matches_brute_force(e, n):
    got = {tuple(sorted(m.segments)) for m in enumerate_multisegments(n, e)}
    assert got == brute_multisegments(n, e, range(e))


@pytest.mark.parametrize("e", [2, 3])
@pytest.mark.parametrize("n", range(1, 6))
def test_support_filter(e, n):
    support = list(range(n))
    everything = enumerate_multisegments(n, e)
    want = [m for m in everything if m.support() == Multisegment([(a, 1) for a in support], e).support()]
    assert set(enumerate_multisegments(n, e, support=support)) == set(want)
    ap = enumerate_multisegments(n, e, support=support, aperiodic_only=True)
    assert set(ap) <= set(want) and all(is_aperiodic(m) for m in ap)


def test_enumeration_is_deterministic_and_coarsest_first():
    ms = enumerate_multisegments(4, 3, support=range(4))
    assert ms == enumerate_multisegments(4, 3, support=range(4))
    assert ms[0].lengths() == (4,)
    assert ms[-1].lengths() == (1, 1, 1, 1)


multiseg = st.integers(0, 3).flatmap(
    lambda e: st.lists(st.tuples(st.integers(0, 5), st.integers(1, 3)), max_size=5).map(lambda s: M(s, e))
)


@given(multiseg)
def test_aperiodic_against_definition(mu):
    assert is_aperiodic(mu) == brute_aperiodic(list(mu.segments), mu.e)


@given(multiseg)
def test_aperiodicity_shift_invariant(mu):
    assert is_aperiodic(mu) == is_aperiodic(mu.shift(1))


@given(st.integers(1, 6), st.data())
def test_preceq_is_a_preorder(w, data):
    comps = st.sampled_from(compositions_of(w))
    a, b, c = (M([(0, x) for x in data.draw(comps)], 0) for _ in range(3))
    assert preceq(a, a)
    if preceq(a, b) and preceq(b, c):
        assert preceq(a, c)
    if preceq(a, b) and preceq(b, a):
        assert a.lengths() == b.lengths()
    assert preceq(a, b) == brute_preceq(list(a.lengths()), list(b.lengths()))


def test_text_and_json_forms():
    mu = Multisegment.parse("(0,2)+(1,1)", 3)
    assert str(mu) == "(0,2)+(1,1)"
    assert Multisegment.parse(str(mu), 3) == mu
    assert Multisegment.from_json(mu.to_json()) == mu
    assert str(Multisegment((), 2)) == "0" and Multisegment.parse("0", 2) == Multisegment((), 2)
    with pytest.raises(ValueError):
        Multisegment.parse("(0,2)*(1,1)")
    assert Segment(5, 2, 3) == (2, 2)
