from fractions import Fraction

import pytest

from goldman_turaev.errors import NonHyperbolic, ParseError, UnknownGenerator
from goldman_turaev.surface import build_surface, surface_from_json
from goldman_turaev.words import canonical_cyclic


def test_punctured_torus():
    S = build_surface(1, 0)
    assert S.generators == ["x1", "y1"]
    assert len(S.boundary_words) == 1
    assert canonical_cyclic(S.boundary_words[0]) == canonical_cyclic(S.parse_word("x1 y1 X1 Y1"))


def test_pair_of_pants():
    S = build_surface(0, 2)
    assert S.generators == ["z1", "z2"]
    got = [canonical_cyclic(w) for w in S.boundary_words]
    assert got == [canonical_cyclic(S.parse_word(t)) for t in ("z1 z2", "Z1", "Z2")]


def test_genus_two_closed():
    S = build_surface(2, 0)
    (w,) = S.boundary_words
    assert len(w) == 8
    assert canonical_cyclic(w) == canonical_cyclic(S.relator())


@pytest.mark.parametrize("g,n", [(0, 0), (0, 1), (-1, 3)])
def test_non_hyperbolic(g, n):
    with pytest.raises(NonHyperbolic):
        build_surface(g, n)


@pytest.mark.parametrize("g,n", [(g, n) for g in range(5) for n in range(5) if 2 * g - 1 + n > 0])
def test_face_count_and_euler(g, n):
    S = build_surface(g, n)
    assert len(S.faces) == n + 1
    assert 1 - S.rank + len(S.faces) == 2 - 2 * g
    total = [sum(col) for col in zip(*(S.homology(w) for w in S.boundary_words))]
    assert total == [0] * S.rank
    assert canonical_cyclic(S.boundary_words[0]) == canonical_cyclic(S.relator())
    for j in range(1, n + 1):
        assert canonical_cyclic(S.boundary_words[j]) == (-S.z(j),)


def test_half_edges_and_angles():
    S = build_surface(1, 2)
    order = S.half_edge_order
    assert len(order) == S.num_half_edges == 2 * S.rank
    assert sorted(order) == sorted([g for g in range(1, S.rank + 1)] + [-g for g in range(1, S.rank + 1)])
    angles = sorted(S.drawing_angles.values())
    assert angles == [Fraction(k, len(order)) for k in range(len(order))]


def test_parse_and_format():
    S = build_surface(1, 1)
    w = S.parse_word("x1 Y1 z1")
    assert w == (1, -2, 3)
    assert S.format_word(w) == "x1 Y1 z1"
    assert S.parse_word("1") == ()
    with pytest.raises(UnknownGenerator):
        S.parse_word("x2")
    with pytest.raises(ParseError):
        S.parse_word("w1")


def test_json_round_trip():
    S = build_surface(2, 1)
    doc = S.to_json()
    assert doc["boundary_words"][0].count(" ") == 8
    assert surface_from_json({"g": 2, "n": 1}) == S
