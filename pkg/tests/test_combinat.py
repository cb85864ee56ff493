import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hopflambda.combinat import (BraidWord, PlumbingTree, closed_braid_components, exponent_sum,
                                 hirasawa_lambda, parse_braid, plumb_together, plumbing_invariants,
                                 plumbing_mirror, random_plumbing_tree)
from hopflambda.errors import IndexOutOfRange, NotATree, ParseError


def test_parse_braid():
    assert parse_braid("B2: s1 s1 s1") == BraidWord(2, (1, 1, 1))
    assert parse_braid("B3: s1 s2^-1") == BraidWord(3, (1, -2))
    assert parse_braid("B3:") == BraidWord(3, ())
    with pytest.raises(IndexOutOfRange):
        parse_braid("B2: s5")
    with pytest.raises(ParseError):
        parse_braid("B2 s1")
    with pytest.raises(ParseError):
        parse_braid("B2: t1")


def test_str_round_trip():
    b = BraidWord(4, (1, -3, 2, 2))
    assert parse_braid(str(b)) == b


@pytest.mark.parametrize("word, e, lam, comps", [
    ("B2: s1 s1 s1", 3, 0, 1),
    ("B2: s1", 1, 2, 1),
    ("B3: s1 s2^-1", 0, 4, 1),
    ("B3:", 0, 4, 3),
    ("B3: s1 s2", 2, 2, 1),
])
def test_braid_table(word, e, lam, comps):
    b = parse_braid(word)
    assert exponent_sum(b) == e
    assert hirasawa_lambda(b) == lam
    assert closed_braid_components(b) == comps


def _component_oracle(b):
    # follow each strand through the word by explicit position tracking
    n = b.n
    pos_to_strand = list(range(n))
    for a in b.letters:
        i = abs(a) - 1
        pos_to_strand[i], pos_to_strand[i + 1] = pos_to_strand[i + 1], pos_to_strand[i]
    succ = {pos_to_strand[p]: p for p in range(n)}
    seen, count = set(), 0
    for s in range(n):
        if s in seen:
            continue
        count += 1
        while s not in seen:
            seen.add(s)
            s = succ[s]
    return count


braids = st.integers(2, 6).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.integers(1, n - 1).flatmap(lambda i: st.sampled_from([i, -i])),
                         max_size=12)))


@given(braids, st.data())
def test_cancelling_pairs_preserve_lambda(nb, data):
    n, letters = nb
    b = BraidWord(n, tuple(letters))
    i = data.draw(st.integers(1, n - 1))
    k = data.draw(st.integers(0, len(letters)))
    pair = data.draw(st.sampled_from([(i, -i), (-i, i)]))
    b2 = BraidWord(n, tuple(letters[:k]) + pair + tuple(letters[k:]))
    assert hirasawa_lambda(b2) == hirasawa_lambda(b)
    assert closed_braid_components(b2) == closed_braid_components(b)


@given(braids)
def test_components_match_oracle(nb):
    b = BraidWord(nb[0], tuple(nb[1]))
    assert closed_braid_components(b) == _component_oracle(b)


def test_plumbing_examples():
    assert plumbing_invariants(PlumbingTree(("+",))) == (0, 1)
    assert plumbing_invariants(PlumbingTree(("-",))) == (1, 1)
    path = PlumbingTree(("+", "-", "-"), ((0, 1), (1, 2)))
    assert plumbing_invariants(path) == (2, 3)
    assert plumbing_mirror(path) == PlumbingTree(("-", "+", "+"), ((0, 1), (1, 2)))
    assert plumbing_mirror(plumbing_mirror(path)) == path
    assert plumbing_mirror(PlumbingTree(("+",))) == PlumbingTree(("-",))


@pytest.mark.parametrize("signs, edges", [
    (("+", "-"), ()),
    (("+", "-", "+"), ((0, 1), (0, 1))),
    (("+", "-", "+"), ((0, 1), (1, 1))),
    (("+", "-"), ((0, 5),)),
    ((), ()),
])
def test_not_a_tree(signs, edges):
    with pytest.raises(NotATree):
        PlumbingTree(signs, edges)


def test_json_round_trip():
    t = PlumbingTree.from_json('{"signs":["+","-"],"edges":[[0,1]]}')
    assert t.signs == (1, -1)
    assert PlumbingTree.from_json(t.to_json()) == t
    assert json.loads(t.to_json()) == {"signs": ["+", "-"], "edges": [[0, 1]]}


@given(st.integers(0, 10 ** 6))
def test_plumbing_properties(seed):
    rng = np.random.default_rng(seed)
    t = random_plumbing_tree(rng)
    lam, mu = plumbing_invariants(t)
    lam_m, mu_m = plumbing_invariants(plumbing_mirror(t))
    assert lam + lam_m == mu == mu_m
    assert 0 <= lam <= mu


@given(st.integers(0, 10 ** 6))
def test_murasugi_additivity(seed):
    rng = np.random.default_rng(seed)
    a, b = random_plumbing_tree(rng), random_plumbing_tree(rng)
    joined = plumb_together(a, b, int(rng.integers(len(a.signs))), int(rng.integers(len(b.signs))))
    la, ma = plumbing_invariants(a)
    lb, mb = plumbing_invariants(b)
    assert plumbing_invariants(joined) == (la + lb, ma + mb)
