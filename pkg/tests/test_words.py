"""Words, the shuffle product, and deconcatenation."""

import itertools
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from shufflebv.graded import BasisLetter, GradedSpace, InvalidInputError
from shufflebv.words import (
    Shuffle,
    TElement,
    deconcatenations,
    enumerate_shuffles,
    render_telement,
    shuffle,
    shuffle_elements,
    shuffle_many,
    sorted_terms,
    word_degree,
    word_tuples_with_total,
    words_up_to,
)

from test_graded import bubble_sign


@pytest.fixture(scope="module")
def mixed():
    # three letters with degrees 0, 1, 2
    return GradedSpace(
        "mixed", [BasisLetter("x", 0), BasisLetter("y", 1), BasisLetter("z", 2)]
    )


def shuffle_oracle(space, u, v):
    """Brute force: all permutations, filtered to block-monotone ones, with
    the sign from the transposition-counting oracle on shifted degrees."""
    n, m = len(u), len(v)
    uv = u + v
    sdegs = [space.degree(a) + 1 for a in uv]
    terms = {}
    for perm in itertools.permutations(range(n + m)):
        if list(perm[:n]) != sorted(perm[:n]):
            continue
        if list(perm[n:]) != sorted(perm[n:]):
            continue
        sign = bubble_sign([p + 1 for p in perm], sdegs)
        inv = [0] * (n + m)
        for src, tgt in enumerate(perm):
            inv[tgt] = src
        word = tuple(uv[inv[p]] for p in range(n + m))
        terms[word] = terms.get(word, 0) + sign
    return {w: c for w, c in terms.items() if c}


# -- grading ----------------------------------------------------------------


def test_word_degree(mixed):
    assert word_degree(mixed, ()) == 0
    assert word_degree(mixed, ("x",)) == 1
    assert word_degree(mixed, ("y", "x")) == 3
    assert word_degree(mixed, ("z", "z")) == 6
    with pytest.raises(InvalidInputError):
        word_degree(mixed, ("nope",))


# -- shuffle enumeration ------------------------------------------------------


@pytest.mark.parametrize("n,m", [(1, 1), (2, 1), (0, 3), (3, 0), (2, 2), (3, 2)])
def test_enumerate_shuffles_count(n, m):
    shuffles = enumerate_shuffles(n, m)
    assert len(shuffles) == comb(n + m, n)
    assert len({s.sigma for s in shuffles}) == len(shuffles)
    for s in shuffles:
        first, second = s.sigma[:n], s.sigma[n:]
        assert list(first) == sorted(first)
        assert list(second) == sorted(second)


def test_enumerate_shuffles_deterministic_order():
    sigmas = [s.sigma for s in enumerate_shuffles(2, 1)]
    assert sigmas == [(0, 1, 2), (0, 2, 1), (1, 2, 0)]


def test_enumerate_shuffles_rejects_negative():
    with pytest.raises(InvalidInputError):
        enumerate_shuffles(-1, 2)


def test_shuffle_invariants_rejected():
    with pytest.raises(InvalidInputError):
        Shuffle((1, 0, 2), 2, 1)  # first block out of order
    with pytest.raises(InvalidInputError):
        Shuffle((0, 0, 1), 2, 1)


# -- deconcatenation ----------------------------------------------------------


def test_deconcatenations():
    assert deconcatenations(("a", "b")) == [
        ((), ("a", "b")),
        (("a",), ("b",)),
        (("a", "b"), ()),
    ]
    assert deconcatenations(()) == [((), ())]
    assert len(deconcatenations(("a", "b", "c"))) == 4


# -- shuffle product ----------------------------------------------------------


def test_shuffle_degree_zero_letters(mixed):
    # (x)*(x) with |x| = 0: the crossing carries -1, so the two terms cancel
    assert shuffle(mixed, ("x",), ("x",)).is_zero()
    sp = GradedSpace("two", [BasisLetter("a", 0), BasisLetter("b", 0)])
    assert shuffle(sp, ("a",), ("b",)).terms == {("a", "b"): 1, ("b", "a"): -1}


def test_shuffle_odd_letter(mixed):
    # one crossing, sign (-1)^((|y|+1)(|x|+1)) = +1
    got = shuffle(mixed, ("y",), ("x",))
    assert got.terms == {("y", "x"): 1, ("x", "y"): 1}


def test_shuffle_unit(mixed):
    for w in words_up_to(mixed, 3):
        assert shuffle(mixed, (), w).terms == {w: 1}
        assert shuffle(mixed, w, ()).terms == {w: 1}


def test_shuffle_matches_bruteforce_oracle(mixed):
    words = words_up_to(mixed, 2)
    for u, v in itertools.product(words, repeat=2):
        assert shuffle(mixed, u, v).terms == shuffle_oracle(mixed, u, v), (u, v)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_shuffle_matches_oracle_random(data):
    degrees = data.draw(st.lists(st.integers(-2, 3), min_size=2, max_size=4))
    sp = GradedSpace("h", [BasisLetter(f"l{i}", d) for i, d in enumerate(degrees)])
    ids = sp.ids
    u = tuple(data.draw(st.sampled_from(ids)) for _ in range(data.draw(st.integers(0, 3))))
    v = tuple(data.draw(st.sampled_from(ids)) for _ in range(data.draw(st.integers(0, 3))))
    assert shuffle(sp, u, v).terms == shuffle_oracle(sp, u, v)


def test_shuffle_term_count_before_cancellation(mixed):
    from shufflebv.kernel import shuffle_signed

    for u, v in itertools.product(words_up_to(mixed, 3), repeat=2):
        pu = tuple(mixed.shifted_parity(a) for a in u)
        pv = tuple(mixed.shifted_parity(a) for a in v)
        assert len(shuffle_signed(u, v, pu, pv)) == comb(len(u) + len(v), len(u))


def test_shuffle_graded_commutativity(mixed):
    for u, v in itertools.product(words_up_to(mixed, 3), repeat=2):
        sign = (-1) ** (word_degree(mixed, u) * word_degree(mixed, v) % 2)
        lhs = shuffle(mixed, u, v)
        rhs = sign * shuffle(mixed, v, u)
        assert lhs == rhs, (u, v)


def test_shuffle_associativity(mixed):
    words = words_up_to(mixed, 2)
    for u, v, w in itertools.product(words, repeat=3):
        eu, ev, ew = (TElement.word(mixed, x) for x in (u, v, w))
        assert shuffle_elements(shuffle_elements(eu, ev), ew) == shuffle_elements(
            eu, shuffle_elements(ev, ew)
        ), (u, v, w)


def test_shuffle_degree_additivity(mixed):
    for u, v in itertools.product(words_up_to(mixed, 3), repeat=2):
        expected = word_degree(mixed, u) + word_degree(mixed, v)
        for w in shuffle(mixed, u, v).terms:
            assert word_degree(mixed, w) == expected


def test_shuffle_rejects_mismatched_spaces(mixed):
    other = GradedSpace("other", [BasisLetter("a", 0)])
    with pytest.raises(InvalidInputError):
        shuffle_elements(TElement.unit(mixed), TElement.unit(other))


# -- TElement ----------------------------------------------------------------


def test_telement_basics(mixed):
    x = TElement(mixed, {("x",): 1, ("y", "x"): -2})
    y = TElement(mixed, {("x",): -1})
    assert (x + y).terms == {("y", "x"): -2}
    assert (x - x).is_zero()
    assert (2 * x).terms == {("x",): 2, ("y", "x"): -4}
    assert x.homogeneous_parts() == {
        1: TElement(mixed, {("x",): 1}),
        3: TElement(mixed, {("y", "x"): -2}),
    }
    parts = x.homogeneous_parts()
    assert parts[1].degree() == 1 and parts[3].degree() == 3


def test_telement_drops_zero_terms(mixed):
    assert TElement(mixed, {("x",): 0}).is_zero()
    assert (0 * TElement.unit(mixed)).is_zero()


def test_render_canonical_order(mixed):
    x = TElement(mixed, {("y", "x"): 1, ("x",): -3, (): 1, ("x", "y"): 1})
    assert render_telement(x) == "1 - 3 x + x(x)y + y(x)x"
    assert render_telement(TElement.zero(mixed)) == "0"


def test_sorted_terms_orders_by_length_then_lex(mixed):
    terms = {("z",): 1, (): 2, ("x", "x"): 3, ("y",): 4}
    assert [w for w, _ in sorted_terms(terms)] == [(), ("y",), ("z",), ("x", "x")]


def test_words_up_to_and_tuples(mixed):
    ws = words_up_to(mixed, 2)
    assert len(ws) == 1 + 3 + 9
    assert ws[0] == () and ws[1] == ("x",)
    tuples = word_tuples_with_total(mixed, 2, 3)
    assert all(len(t) == 2 and all(t2 for t2 in t) for t in tuples)
    assert all(sum(len(w) for w in t) <= 3 for t in tuples)
    # 2 slots of nonempty words over 3 letters with total length 2 or 3
    assert len(tuples) == 9 + 2 * 27


def test_shuffle_many(mixed):
    assert shuffle_many(mixed, []) == TElement.unit(mixed)
    # an odd-degree letter has even shifted degree, so its powers survive
    ey = TElement.word(mixed, ("y",))
    assert shuffle_many(mixed, [ey, ey, ey]).terms == {("y", "y", "y"): 6}
    # while a degree-0 letter squares to zero
    ex = TElement.word(mixed, ("x",))
    assert shuffle_many(mixed, [ex, ex]).is_zero()
