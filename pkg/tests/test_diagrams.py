import itertools

import pytest

from seamrep import diagrams as dg
from seamrep.diagrams import Diagram, ParityMismatch, ShapeMismatch


def test_identity_empty():
    d = dg.identity(0)
    assert d.pairs == ()
    assert d.left == d.right == 0


def test_identity_through_lines():
    d = dg.identity(4)
    assert d.through_pairs() == [(1, 1), (2, 2), (3, 3), (4, 4)]
    assert dg.reflect(d) == d


def test_generator_shape():
    e = dg.generator(2, 1)
    assert e.left_arcs() == [(1, 2)]
    assert e.right_arcs() == [(1, 2)]
    with pytest.raises(Exception):
        dg.generator(3, 3)


def test_generator_reflection_invariant():
    for n in range(2, 7):
        for i in range(1, n):
            e = dg.generator(n, i)
            assert dg.reflect(e) == e


def test_compose_ei_ei():
    e = dg.generator(4, 2)
    d, loops = dg.compose(e, e)
    assert d == e and loops == 1


def test_compose_braidlike():
    for n in range(3, 6):
        for i in range(1, n - 1):
            ei, ej = dg.generator(n, i), dg.generator(n, i + 1)
            d, l1 = dg.compose(ei, ej)
            d, l2 = dg.compose(d, ei)
            assert d == ei and l1 + l2 == 0


def test_compose_disjoint_generators():
    # E_1 E_3 in TL_4: picture glued directly, no loops
    d, loops = dg.compose(dg.generator(4, 1), dg.generator(4, 3))
    expected = dg.from_links(
        4,
        4,
        [
            (("L", 1), ("L", 2)),
            (("R", 1), ("R", 2)),
            (("L", 3), ("L", 4)),
            (("R", 3), ("R", 4)),
        ],
    )
    assert d == expected and loops == 0


def test_compose_identity_law():
    for d in dg.enumerate_all(3):
        res, loops = dg.compose(dg.identity(3), d)
        assert res == d and loops == 0
        res, loops = dg.compose(d, dg.identity(3))
        assert res == d and loops == 0


def test_compose_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        dg.compose(dg.identity(3), dg.identity(4))


def test_reflect_involution_and_antihom():
    basis = dg.enumerate_all(3)
    for d in basis:
        assert dg.reflect(dg.reflect(d)) == d
    for d, e in itertools.product(basis, repeat=2):
        de, l1 = dg.compose(d, e)
        rev, l2 = dg.compose(dg.reflect(e), dg.reflect(d))
        assert rev == dg.reflect(de) and l1 == l2


def test_reflect_monic_becomes_epic():
    for w in dg.enumerate_monic(5, 3):
        assert w.is_monic()
        assert dg.reflect(w).is_epic()


def test_through_counts_tl4():
    diagrams = dg.enumerate_all(4)
    assert len(diagrams) == 14
    split = {}
    for w in diagrams:
        split[w.through_count()] = split.get(w.through_count(), 0) + 1
    assert split == {4: 1, 2: 9, 0: 4}


def test_monic_epic_concatenation_through_count():
    for w in dg.enumerate_monic(4, 2):
        d, loops = dg.compose(w, dg.reflect(w))
        assert d.through_count() == 2 and loops == 0


def _brute_monic(n, d):
    """Independent oracle: noncrossing perfect matchings by direct search."""
    points = list(range(n + d))  # disk order

    def noncross(pairs):
        for (a, b), (c, e) in itertools.combinations(pairs, 2):
            if a < c < b < e or c < a < e < b:
                return False
        return True

    out = []

    def rec(free, pairs):
        if not free:
            if noncross(pairs):
                out.append(tuple(sorted(pairs)))
            return
        a = free[0]
        for b in free[1:]:
            rec([x for x in free[1:] if x != b], pairs + [(a, b)])

    rec(points, [])
    monic = []
    for pairs in out:
        diag = Diagram(n, d, pairs)
        if diag.is_monic():
            monic.append(diag)
    return sorted(monic)


@pytest.mark.parametrize("n,d", [(2, 0), (3, 1), (4, 0), (4, 2), (5, 1), (5, 3)])
def test_enumerate_monic_against_brute_force(n, d):
    assert dg.enumerate_monic(n, d) == _brute_monic(n, d)


def test_enumerate_monic_counts():
    assert len(dg.enumerate_monic(4, 2)) == 3
    for n in range(0, 8):
        if n % 2 == 0:
            assert len(dg.enumerate_monic(n, 0)) == dg.monic_count(n, 0)
        assert len(dg.enumerate_monic(n, n)) == 1
    for n in range(1, 7):
        for d in range(n % 2, n + 1, 2):
            assert len(dg.enumerate_monic(n, d)) == dg.monic_count(n, d)


def test_enumerate_monic_parity_error():
    with pytest.raises(ParityMismatch):
        dg.enumerate_monic(4, 1)


def test_enumerate_all_counts():
    for n in range(0, 7):
        assert len(dg.enumerate_all(n)) == dg.catalan(n)


def test_composition_associative_with_loops():
    basis = dg.enumerate_all(3)
    for a, b, c in itertools.product(basis, repeat=3):
        ab, l1 = dg.compose(a, b)
        ab_c, l2 = dg.compose(ab, c)
        bc, l3 = dg.compose(b, c)
        a_bc, l4 = dg.compose(a, bc)
        assert ab_c == a_bc
        assert l1 + l2 == l3 + l4


def test_through_count_monotone():
    basis = dg.enumerate_all(4)
    for a, b in itertools.product(basis[:7], basis[:7]):
        d, _ = dg.compose(a, b)
        assert d.through_count() <= min(a.through_count(), b.through_count())


def test_text_round_trip():
    for w in dg.enumerate_monic(5, 1) + dg.enumerate_all(3):
        assert Diagram.from_text(w.to_text()) == w


def test_crossing_rejected():
    with pytest.raises(ValueError):
        Diagram(4, 0, [(0, 2), (1, 3)])


def test_canonical_order_is_deterministic():
    ws = dg.enumerate_monic(6, 2)
    assert ws == sorted(ws)
    assert ws == dg.enumerate_monic(6, 2)
