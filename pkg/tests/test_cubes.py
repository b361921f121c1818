from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubechains.cubes import (
    ChainClass,
    ChainTag,
    CubeTriple,
    TripleChain,
    classify_chain,
    congruence_class,
    is_trivial_difference,
    sum_of_cubes,
    verify_chain,
)
from cubechains.errors import CubeChainError, UnverifiedChainError

CHAIN_125 = TripleChain(125, CubeTriple(5, 1, -1), CubeTriple(0, 1, 5), CubeTriple(4, 4, -1))
CHAIN_199583 = TripleChain(
    199583, CubeTriple(131, -5, -127), CubeTriple(66, -24, -42), CubeTriple(64, -31, -32)
)

ints = st.integers(-30, 30)
triples = st.builds(CubeTriple, ints, ints, ints)


def trivial_by_enumeration(minuend, subtrahend) -> bool:
    """Independent oracle: try every ordering of the six entries as (0, 1, p, -p, q, -q)."""
    six = [*minuend, *(-s for s in subtrahend)]
    for perm in permutations(six):
        zero, one, a, b, c, d = perm
        if zero == 0 and one == 1 and a + b == 0 and c + d == 0:
            return True
    return False


def test_sum_of_cubes():
    assert sum_of_cubes(CubeTriple(5, 1, -1)) == 125
    assert sum_of_cubes(CubeTriple(0, 0, 0)) == 0
    bs = CubeTriple(569936821221962380720, -569936821113563493509, -472715493453327032)
    assert sum_of_cubes(bs) == 3


@given(triples)
def test_sum_of_cubes_odd(t):
    assert sum_of_cubes(-t) == -sum_of_cubes(t)


def test_verify_chain():
    assert verify_chain(CHAIN_125)
    assert verify_chain(TripleChain(0, CubeTriple(0, 0, 0), CubeTriple(1, 0, 0), CubeTriple(1, 1, 0)))
    bad = TripleChain(125, CubeTriple(5, 1, -1), CubeTriple(0, 1, 5), CubeTriple(4, 4, 1))
    assert not verify_chain(bad)


def test_trivial_difference_examples():
    assert is_trivial_difference(CubeTriple(0, 1, 5), CubeTriple(5, 1, -1))
    assert not is_trivial_difference(CubeTriple(4, 4, -1), CubeTriple(0, 1, 5))
    assert not trivial_by_enumeration(CubeTriple(4, 4, -1), CubeTriple(0, 1, 5))
    assert is_trivial_difference(CubeTriple(1, 7, -7), CubeTriple(0, 4, -4))


def test_zero_and_one_must_be_distinct_entries():
    # a lone 0 cannot serve as both the 0 and the pair partner
    assert not is_trivial_difference(CubeTriple(1, 0, 2), CubeTriple(0, 3, 2))
    assert is_trivial_difference(CubeTriple(1, 0, 0), CubeTriple(0, 0, 0))


@given(triples, triples)
def test_trivial_difference_matches_enumeration(a, b):
    assert is_trivial_difference(a, b) == trivial_by_enumeration(a, b)


@given(
    st.integers(-20, 20), st.integers(-20, 20),
    st.permutations(range(3)), st.permutations(range(3)),
)
def test_trivial_difference_permutation_invariant(u, v, pa, pb):
    # six trivial shapes of the first difference, all must be trivial in any order
    shapes = [
        ((0, u, v), (1, u, v)),
        ((0, u, -u), (1, v, -v)),
        ((0, -1, u), (u, v, -v)),
        ((-1, u, v), (0, u, v)),
        ((-1, u, -u), (0, v, -v)),
        ((u, v, -v), (0, 1, u)),
    ]
    for x, y in shapes:
        xs = CubeTriple(*(x[i] for i in pa))
        ys = CubeTriple(*(y[i] for i in pb))
        assert sum_of_cubes(ys) - sum_of_cubes(xs) == 1
        assert is_trivial_difference(ys, xs)


@given(triples, triples, st.permutations(range(3)), st.permutations(range(3)))
def test_trivial_difference_invariant_under_reordering(a, b, pa, pb):
    a2 = CubeTriple(*(a[i] for i in pa))
    b2 = CubeTriple(*(b[i] for i in pb))
    assert is_trivial_difference(a, b) == is_trivial_difference(a2, b2)


def test_chain_class_invariant():
    for first in (False, True):
        for second in (False, True):
            cls = ChainClass.from_flags(first, second)
            expected = {2: ChainTag.TRIVIAL, 1: ChainTag.SEMI_TRIVIAL, 0: ChainTag.NONTRIVIAL}
            assert cls.tag is expected[first + second]


def test_classify_examples():
    assert classify_chain(CHAIN_125).tag is ChainTag.SEMI_TRIVIAL
    triv = TripleChain(34, CubeTriple(2, 3, -1), CubeTriple(2, 3, 0), CubeTriple(2, 3, 1))
    assert classify_chain(triv).tag is ChainTag.TRIVIAL
    cls = classify_chain(CHAIN_199583)
    assert cls.tag is ChainTag.NONTRIVIAL
    assert not cls.first_diff_trivial and not cls.second_diff_trivial


def test_classify_uses_both_orientations():
    cls = classify_chain(CHAIN_125)
    assert cls.first_diff_trivial and not cls.second_diff_trivial


def test_classify_rejects_unverified_chain():
    bad = TripleChain(125, CubeTriple(5, 1, -1), CubeTriple(0, 1, 5), CubeTriple(4, 4, 1))
    with pytest.raises(UnverifiedChainError):
        classify_chain(bad)


@given(st.integers(-20, 20), st.integers(-20, 20))
def test_trivial_families_classify_trivial(a, b):
    c1 = TripleChain(a**3, CubeTriple(a, 0, 0), CubeTriple(a, 1, 0), CubeTriple(a, 1, 1))
    c2 = TripleChain(
        a**3 + b**3 - 1, CubeTriple(a, b, -1), CubeTriple(a, b, 0), CubeTriple(a, b, 1)
    )
    for c in (c1, c2):
        assert verify_chain(c)
        assert classify_chain(c).tag is ChainTag.TRIVIAL
        assert not congruence_class(c.n)[1]


def test_congruence_class():
    assert congruence_class(4) == (4, True)
    assert congruence_class(3) == (3, False)
    assert congruence_class(-5) == (4, True)
    assert congruence_class(5) == (5, True)


def test_cubes_mod_9_are_0_or_pm1():
    # basis of the obstruction: no triple of residues in {0, 1, 8} sums to 4 or 5 mod 9
    residues = {x**3 % 9 for x in range(9)}
    assert residues == {0, 1, 8}
    sums = {(a + b + c) % 9 for a in residues for b in residues for c in residues}
    assert sums.isdisjoint({4, 5})


def test_chain_json_round_trip():
    big = TripleChain(
        4030102758035382018255,
        CubeTriple(-2304, 2351, 15913732),
        CubeTriple(15913734, -15913730, 15913728),
        CubeTriple(2304, -2255, 15913732),
    )
    rec = big.to_record()
    assert rec["n"] == "4030102758035382018255" and rec["z2"] == "-2255"
    assert set(rec) == {"n", "x1", "x2", "x3", "y1", "y2", "y3", "z1", "z2", "z3"}
    assert TripleChain.from_json(big.to_json()) == big


def test_chain_json_malformed():
    with pytest.raises(CubeChainError):
        TripleChain.from_json('{"n": "1"}')
    with pytest.raises(CubeChainError):
        TripleChain.from_json("not json")


def test_chain_text_form():
    assert CHAIN_125.text().splitlines() == [
        "125 = 5^3 + 1^3 + (-1)^3",
        "126 = 0^3 + 1^3 + 5^3",
        "127 = 4^3 + 4^3 + (-1)^3",
    ]


def test_enumeration_oracle_sanity():
    assert trivial_by_enumeration((9, 0, 1), (9, 3, -3))
    assert not trivial_by_enumeration((9, 0, 2), (9, 3, -3))
